//! Simplicial complexes, integer chain complexes and induced chain maps.
//!
//! Simplices are stored as sorted vertex lists and chain groups are freely
//! based on the sorted simplices of each dimension, so orientations are
//! fixed once and for all. Induced maps carry the sign of the permutation
//! that re-sorts the image vertices; degenerate images collapse to zero.
//! All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bundle::{Chain, ChainBundle, LevelSet};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::instances::zmod::{FreeAbelian, FreeAbelianObject};
use crate::matrix::IntMatrix;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialComplex {
    /// Sorted union of all vertices that appear in simplices.
    pub vertices: Vec<String>,
    /// Sorted vertex lists, one per simplex.
    pub simplices: BTreeSet<Vec<String>>,
}

impl SimplicialComplex {
    /// Builds a complex from raw simplices (each list is sorted; vertices
    /// are collected automatically).
    pub fn new(simplices: impl IntoIterator<Item = Vec<String>>) -> Self {
        let simplices: BTreeSet<Vec<String>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        let vertices: BTreeSet<String> = simplices.iter().flatten().cloned().collect();
        SimplicialComplex {
            vertices: vertices.into_iter().collect(),
            simplices,
        }
    }

    /// The sorted `n`-simplices (vertex lists of length `n + 1`).
    pub fn simplices_of_dim(&self, n: usize) -> Vec<Vec<String>> {
        self.simplices
            .iter()
            .filter(|s| s.len() == n + 1)
            .cloned()
            .collect()
    }

    /// Highest dimension present, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simplices.iter().map(|s| format!("({})", s.join(""))).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Face-closure and singleton checks.
pub fn validate_complex(k: &SimplicialComplex) -> Report {
    let mut report = Report::new();
    for v in &k.vertices {
        if k.simplices.contains(&vec![v.clone()]) {
            report.pass(format!("vertex {v}"), "singleton present");
        } else {
            report.fail(
                format!("vertex {v}"),
                "singleton present",
                format!("({v}) is missing"),
            );
        }
    }
    for s in &k.simplices {
        if s.len() < 2 {
            continue;
        }
        for drop in 0..s.len() {
            let mut face = s.clone();
            face.remove(drop);
            let loc = format!("simplex ({})", s.join(""));
            if k.simplices.contains(&face) {
                report.pass(loc, format!("face ({}) present", face.join("")));
            } else {
                report.fail(
                    loc,
                    "face-closed",
                    format!("face ({}) missing", face.join("")),
                );
            }
        }
    }
    report
}

/// A vertex map between complexes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialMap {
    pub vertex_map: BTreeMap<String, String>,
}

impl SimplicialMap {
    pub fn new(vertex_map: BTreeMap<String, String>) -> Self {
        SimplicialMap { vertex_map }
    }

    pub fn apply(&self, v: &str) -> Option<&str> {
        self.vertex_map.get(v).map(String::as_str)
    }
}

/// Checks totality and that simplices land on simplices.
pub fn validate_simplicial_map(
    f: &SimplicialMap,
    dom: &SimplicialComplex,
    cod: &SimplicialComplex,
) -> Report {
    let mut report = Report::new();
    for v in &dom.vertices {
        match f.apply(v) {
            Some(w) if cod.vertices.contains(&w.to_string()) => {
                report.pass(format!("vertex {v}"), format!("maps to {w}"))
            }
            Some(w) => report.fail(
                format!("vertex {v}"),
                "image vertex declared",
                format!("{w} is not a vertex of the codomain"),
            ),
            None => report.fail(format!("vertex {v}"), "image vertex declared", "no image"),
        }
    }
    for s in &dom.simplices {
        let image: Option<BTreeSet<&str>> = s.iter().map(|v| f.apply(v)).collect();
        let loc = format!("simplex ({})", s.join(""));
        match image {
            Some(set) => {
                let image: Vec<String> = set.into_iter().map(String::from).collect();
                if cod.simplices.contains(&image) {
                    report.pass(loc, format!("image ({}) is a simplex", image.join("")));
                } else {
                    report.fail(
                        loc,
                        "image is a simplex",
                        format!("({}) is not in the codomain", image.join("")),
                    );
                }
            }
            None => report.fail(loc, "image is a simplex", "a vertex has no image"),
        }
    }
    report
}

/// Graded free integer chain complex with boundary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexZ {
    /// `grades[n]` is the ordered basis of `C_n` (sorted simplices).
    pub grades: Vec<Vec<Vec<String>>>,
    /// `boundaries[n]` is `∂_{n+1} : C_{n+1} -> C_n` — i.e. the boundary out
    /// of grade `n + 1`. `∂_0` into the zero group is implicit.
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn top_grade(&self) -> usize {
        self.grades.len().saturating_sub(1)
    }

    pub fn grade(&self, n: usize) -> &[Vec<String>] {
        static EMPTY: Vec<Vec<String>> = Vec::new();
        self.grades.get(n).unwrap_or(&EMPTY)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.grade(n).len()
    }

    /// `∂_n : C_n -> C_{n-1}` for `n ≥ 1`.
    pub fn boundary(&self, n: usize) -> Option<&IntMatrix> {
        if n == 0 {
            None
        } else {
            self.boundaries.get(n - 1)
        }
    }

    /// `∂² = 0` at every grade.
    pub fn boundary_squares_to_zero(&self) -> Result<bool> {
        for n in 2..=self.top_grade() {
            let outer = self.boundary(n - 1).expect("grade in range");
            let inner = self.boundary(n).expect("grade in range");
            if !outer.mul(inner)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn position(basis: &[Vec<String>], simplex: &[String]) -> Option<usize> {
    basis.iter().position(|s| s == simplex)
}

/// The chain complex of a complex: `C_n` freely based on the sorted
/// `n`-simplices, `∂σ = Σ_i (-1)^i (σ minus vertex i)`.
pub fn chain_complex_of(k: &SimplicialComplex) -> Result<ChainComplexZ> {
    let report = validate_complex(k);
    if !report.passed() {
        let first = report.failures().next().expect("failed report");
        return Err(Error::InvalidObject(format!(
            "complex is not face-closed: {} ({})",
            first.location,
            first.witness.as_deref().unwrap_or("")
        )));
    }
    let top = match k.dimension() {
        Some(d) => d,
        None => {
            return Ok(ChainComplexZ {
                grades: Vec::new(),
                boundaries: Vec::new(),
            })
        }
    };
    let grades: Vec<Vec<Vec<String>>> = (0..=top).map(|n| k.simplices_of_dim(n)).collect();
    let mut boundaries = Vec::new();
    for n in 1..=top {
        let mut m = IntMatrix::zero(grades[n - 1].len(), grades[n].len());
        for (col, simplex) in grades[n].iter().enumerate() {
            for drop in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(drop);
                let row = position(&grades[n - 1], &face)
                    .expect("faces of a closed complex are present");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                m.set(row, col, m.get(row, col) + sign);
            }
        }
        boundaries.push(m);
    }
    let complex = ChainComplexZ { grades, boundaries };
    debug_assert!(complex.boundary_squares_to_zero()?);
    Ok(complex)
}

/// An integer chain map, one matrix per grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMapZ {
    pub dom: ChainComplexZ,
    pub cod: ChainComplexZ,
    /// `components[n] : C_n(dom) -> C_n(cod)`; missing grades are zero.
    pub components: Vec<IntMatrix>,
}

impl ChainMapZ {
    pub fn component(&self, n: usize) -> IntMatrix {
        self.components
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.cod.rank(n), self.dom.rank(n)))
    }

    /// `∂ ; C_{n-1}(f) = C_n(f) ; ∂` at every grade.
    pub fn commutes_with_boundary(&self) -> Result<bool> {
        let top = self.dom.top_grade();
        for n in 1..=top {
            let lhs = self
                .cod
                .boundary(n)
                .map(|b| b.mul(&self.component(n)))
                .transpose()?
                .unwrap_or_else(|| IntMatrix::zero(self.cod.rank(n - 1), self.dom.rank(n)));
            let rhs = self.component(n - 1).mul(
                self.dom
                    .boundary(n)
                    .expect("domain grades are contiguous"),
            )?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sign of the permutation sorting `values`; `None` if two entries collide.
fn sort_sign<T: Ord>(values: &[T]) -> Option<i64> {
    let mut sign = 1i64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            match values[i].cmp(&values[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}

/// The chain map induced by a simplicial map: a simplex goes to its signed
/// sorted image when the image vertices are distinct, to zero otherwise.
pub fn induced_chain_map(
    f: &SimplicialMap,
    dom: &SimplicialComplex,
    cod: &SimplicialComplex,
) -> Result<ChainMapZ> {
    let report = validate_simplicial_map(f, dom, cod);
    if !report.passed() {
        let first = report.failures().next().expect("failed report");
        return Err(Error::InvalidMorphism(format!(
            "not a simplicial map: {} ({})",
            first.location,
            first.witness.as_deref().unwrap_or("")
        )));
    }
    let dom_c = chain_complex_of(dom)?;
    let cod_c = chain_complex_of(cod)?;
    let top = dom_c.top_grade();
    let mut components = Vec::new();
    for n in 0..=top {
        let dom_basis = dom_c.grade(n);
        let cod_basis = cod_c.grade(n);
        let mut m = IntMatrix::zero(cod_basis.len(), dom_basis.len());
        for (col, simplex) in dom_basis.iter().enumerate() {
            let images: Vec<&str> = simplex
                .iter()
                .map(|v| f.apply(v).expect("validated map is total"))
                .collect();
            let Some(sign) = sort_sign(&images) else {
                continue;
            };
            let mut sorted: Vec<String> = images.into_iter().map(String::from).collect();
            sorted.sort();
            let row = position(cod_basis, &sorted)
                .expect("images of simplices are simplices of the codomain");
            m.set(row, col, sign);
        }
        components.push(m);
    }
    let map = ChainMapZ {
        dom: dom_c,
        cod: cod_c,
        components,
    };
    debug_assert!(map.commutes_with_boundary()?);
    Ok(map)
}

/// Grade-wise matrix composition `C(g) · C(f)`.
pub fn compose_chain_maps(f: &ChainMapZ, g: &ChainMapZ) -> Result<ChainMapZ> {
    if f.cod != g.dom {
        return Err(Error::NonComposable(
            "chain maps do not share the middle complex".into(),
        ));
    }
    let top = f.dom.top_grade();
    let mut components = Vec::new();
    for n in 0..=top {
        components.push(g.component(n).mul(&f.component(n))?);
    }
    Ok(ChainMapZ {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        components,
    })
}

pub struct ChainMapFactorization {
    pub epi_part: ChainMapZ,
    pub inclusion_part: ChainMapZ,
    pub intermediate: ChainComplexZ,
}

/// Factors a chain map through the subcomplex spanned by the basis elements
/// it hits. Every component column must be an integer multiple of a single
/// basis vector, which holds for maps induced by simplicial maps.
pub fn factorize_chain_map(f: &ChainMapZ) -> Result<ChainMapFactorization> {
    let top = f.dom.top_grade();
    let mut kept_rows: Vec<Vec<usize>> = Vec::new();
    for n in 0..=top {
        let m = f.component(n);
        let mut hit = vec![false; m.rows()];
        for c in 0..m.cols() {
            let col = m.col(c);
            let nonzero: Vec<usize> = (0..col.len()).filter(|&r| col[r] != 0).collect();
            match nonzero.len() {
                0 => {}
                1 => hit[nonzero[0]] = true,
                _ => return Err(Error::ImageNotBasisAligned { grade: n }),
            }
        }
        kept_rows.push((0..m.rows()).filter(|&r| hit[r]).collect());
    }
    // Trim empty top grades from the intermediate.
    let mut grades: Vec<Vec<Vec<String>>> = kept_rows
        .iter()
        .enumerate()
        .map(|(n, keep)| {
            keep.iter()
                .map(|&r| f.cod.grade(n)[r].clone())
                .collect::<Vec<_>>()
        })
        .collect();
    while grades.last().is_some_and(|g| g.is_empty()) {
        grades.pop();
    }
    let mid_top = grades.len().saturating_sub(1);
    let mut boundaries = Vec::new();
    for n in 1..=mid_top {
        let full = f
            .cod
            .boundary(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(f.cod.rank(n - 1), f.cod.rank(n)));
        let sub = full.select_cols(&kept_rows[n]);
        // Boundaries of hit elements stay inside the hit span.
        for r in 0..sub.rows() {
            if kept_rows[n - 1].contains(&r) {
                continue;
            }
            for c in 0..sub.cols() {
                if sub.get(r, c) != 0 {
                    return Err(Error::ImageNotBasisAligned { grade: n });
                }
            }
        }
        boundaries.push(sub.select_rows(&kept_rows[n - 1]));
    }
    let intermediate = ChainComplexZ { grades, boundaries };
    if !intermediate.boundary_squares_to_zero()? {
        return Err(Error::InvalidMorphism(
            "intermediate complex violates boundary-squared-zero".into(),
        ));
    }

    let mut epi_components = Vec::new();
    let mut incl_components = Vec::new();
    for n in 0..=top {
        let m = f.component(n);
        let keep = if n < intermediate.grades.len() {
            kept_rows[n].clone()
        } else {
            Vec::new()
        };
        epi_components.push(m.select_rows(&keep));
        let mut incl = IntMatrix::zero(f.cod.rank(n), keep.len());
        for (c, &r) in keep.iter().enumerate() {
            incl.set(r, c, 1);
        }
        incl_components.push(incl);
    }
    let epi_part = ChainMapZ {
        dom: f.dom.clone(),
        cod: intermediate.clone(),
        components: epi_components,
    };
    let inclusion_part = ChainMapZ {
        dom: intermediate.clone(),
        cod: f.cod.clone(),
        components: incl_components,
    };
    let recomposed = compose_chain_maps(&epi_part, &inclusion_part)?;
    for n in 0..=top {
        if recomposed.component(n) != f.component(n) {
            return Err(Error::InvalidMorphism(format!(
                "factorization does not recompose at grade {n}"
            )));
        }
    }
    Ok(ChainMapFactorization {
        epi_part,
        inclusion_part,
        intermediate,
    })
}

/// Basis label used when a complex is viewed as a free-abelian bundle.
pub fn simplex_label(simplex: &[String]) -> String {
    simplex.join(",")
}

/// Views a chain complex as a chain in the free-abelian bundle category:
/// objects `C_n` ascending over the zero base, one boundary morphism per
/// level.
pub fn as_chain_bundle(c: &ChainComplexZ) -> Result<Chain<FreeAbelian>> {
    let cat = FreeAbelian;
    let objects: Vec<FreeAbelianObject> = c
        .grades
        .iter()
        .map(|g| FreeAbelianObject::new(g.iter().map(|s| simplex_label(s)).collect()))
        .collect();
    if objects.is_empty() {
        let zero = FreeAbelianObject::zero();
        let bundle = ChainBundle::from_display(
            &cat,
            vec![zero.clone()],
            vec![LevelSet::Listed(vec![
                crate::category::Morphism::new(
                    zero.clone(),
                    zero.clone(),
                    crate::instances::zmod::FreeAbelianMap {
                        matrix: IntMatrix::zero(0, 0),
                    },
                ),
            ])],
            Some(zero),
        )?;
        return Chain::from_bundle(bundle);
    }
    // Display order: C_top, ..., C_0, base 0.
    let mut upper: Vec<FreeAbelianObject> = objects.clone();
    upper.reverse();
    let mut sets_desc: Vec<LevelSet<FreeAbelian>> = Vec::new();
    for n in (1..=c.top_grade()).rev() {
        let boundary = c.boundary(n).expect("grades are contiguous").clone();
        let m = cat.linear(
            objects[n].clone(),
            objects[n - 1].clone(),
            boundary,
        )?;
        sets_desc.push(LevelSet::Listed(vec![m]));
    }
    // S_1: C_0 -> 0 is the zero morphism.
    let zero_obj = FreeAbelianObject::zero();
    sets_desc.push(LevelSet::Listed(vec![cat
        .zero_morphism(&objects[0], &zero_obj)?]));
    let bundle = ChainBundle::from_display(&cat, upper, sets_desc, Some(zero_obj))?;
    Chain::from_bundle(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn simplex(verts: &[&str]) -> Vec<String> {
        verts.iter().map(|s| s.to_string()).collect()
    }

    /// K_2 from the worked example.
    fn k2() -> SimplicialComplex {
        SimplicialComplex::new([
            simplex(&["y", "z"]),
            simplex(&["z", "x"]),
            simplex(&["z", "w"]),
            simplex(&["x"]),
            simplex(&["y"]),
            simplex(&["z"]),
            simplex(&["w"]),
        ])
    }

    /// K_1 without the stray 3-simplex (it is not face-closed with it and
    /// the example's own chain complex has no grade-3 part).
    fn k1() -> SimplicialComplex {
        SimplicialComplex::new([
            simplex(&["x", "y", "z"]),
            simplex(&["x", "y"]),
            simplex(&["y", "z"]),
            simplex(&["z", "x"]),
            simplex(&["z", "w"]),
            simplex(&["x"]),
            simplex(&["y"]),
            simplex(&["z"]),
            simplex(&["w"]),
        ])
    }

    fn the_map() -> SimplicialMap {
        SimplicialMap::new(
            [("x", "y"), ("y", "z"), ("z", "z"), ("w", "z")]
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    #[test]
    fn k2_is_valid() {
        assert!(validate_complex(&k2()).passed());
    }

    #[test]
    fn missing_face_is_reported() {
        let broken = SimplicialComplex {
            vertices: vec!["x".into(), "y".into(), "z".into()],
            simplices: [
                simplex(&["x", "y", "z"]),
                simplex(&["x", "y"]),
                simplex(&["y", "z"]),
                simplex(&["x"]),
                simplex(&["y"]),
                simplex(&["z"]),
            ]
            .into_iter()
            .collect(),
        };
        let report = validate_complex(&broken);
        assert!(!report.passed());
        let witness = report
            .failures()
            .next()
            .and_then(|f| f.witness.clone())
            .unwrap();
        assert!(witness.contains("xz"), "{witness}");
    }

    #[test]
    fn single_vertex_is_valid() {
        let v = SimplicialComplex::new([simplex(&["v"])]);
        assert!(validate_complex(&v).passed());
    }

    #[test]
    fn chain_complex_grades_of_k1() {
        let c = chain_complex_of(&k1()).unwrap();
        assert_eq!(c.grade(2), vec![simplex(&["x", "y", "z"])]);
        assert_eq!(
            c.grade(1),
            vec![
                simplex(&["w", "z"]),
                simplex(&["x", "y"]),
                simplex(&["x", "z"]),
                simplex(&["y", "z"]),
            ]
        );
        assert_eq!(
            c.grade(0),
            vec![
                simplex(&["w"]),
                simplex(&["x"]),
                simplex(&["y"]),
                simplex(&["z"]),
            ]
        );
        assert!(c.boundary_squares_to_zero().unwrap());
    }

    #[test]
    fn boundary_of_edge_and_triangle() {
        let c = chain_complex_of(&k1()).unwrap();
        // ∂(yz) = z − y: rows are (w, x, y, z).
        let d1 = c.boundary(1).unwrap();
        let col = c
            .grade(1)
            .iter()
            .position(|s| s == &simplex(&["y", "z"]))
            .unwrap();
        assert_eq!(d1.col(col), vec![0, 0, -1, 1]);
        // ∂(xyz) = (yz) − (xz) + (xy): rows are (wz, xy, xz, yz).
        let d2 = c.boundary(2).unwrap();
        assert_eq!(d2.col(0), vec![0, 1, -1, 1]);
        // ∂∂(xyz) = 0.
        assert!(d1.mul(d2).unwrap().is_zero());
    }

    #[test]
    fn induced_map_matches_example() {
        let f = induced_chain_map(&the_map(), &k1(), &k2()).unwrap();
        // C_2(f) = 0: images y, z, z are not distinct.
        assert!(f.component(2).is_zero());
        // C_1(f): domain rows (wz, xy, xz, yz) to codomain rows (wz, xz, yz).
        let c1 = f.component(1);
        let dom_basis = f.dom.grade(1).to_vec();
        let cod_basis = f.cod.grade(1).to_vec();
        let lookup = |s: &[String]| dom_basis.iter().position(|x| x == s).unwrap();
        let yz_row = cod_basis
            .iter()
            .position(|x| x == &simplex(&["y", "z"]))
            .unwrap();
        // xy ↦ (yz), xz ↦ (yz), yz ↦ 0, wz ↦ 0.
        let col_xy = lookup(&simplex(&["x", "y"]));
        assert_eq!(c1.get(yz_row, col_xy), 1);
        let col_xz = lookup(&simplex(&["x", "z"]));
        assert_eq!(c1.get(yz_row, col_xz), 1);
        let col_yz = lookup(&simplex(&["y", "z"]));
        assert!(c1.col(col_yz).iter().all(|&v| v == 0));
        let col_wz = lookup(&simplex(&["w", "z"]));
        assert!(c1.col(col_wz).iter().all(|&v| v == 0));
        // C_0(f): x ↦ y, y ↦ z, z ↦ z, w ↦ z.
        let c0 = f.component(0);
        let dom0 = f.dom.grade(0).to_vec();
        let cod0 = f.cod.grade(0).to_vec();
        let at = |v: &str, w: &str| {
            c0.get(
                cod0.iter().position(|x| x[0] == w).unwrap(),
                dom0.iter().position(|x| x[0] == v).unwrap(),
            )
        };
        assert_eq!(at("x", "y"), 1);
        assert_eq!(at("y", "z"), 1);
        assert_eq!(at("z", "z"), 1);
        assert_eq!(at("w", "z"), 1);
        assert!(f.commutes_with_boundary().unwrap());
    }

    #[test]
    fn factorization_through_k3() {
        let f = induced_chain_map(&the_map(), &k1(), &k2()).unwrap();
        let fact = factorize_chain_map(&f).unwrap();
        assert_eq!(fact.intermediate.grade(1), vec![simplex(&["y", "z"])]);
        assert_eq!(
            fact.intermediate.grade(0),
            vec![simplex(&["y"]), simplex(&["z"])]
        );
        // The intermediate is the chain complex of K_3 = {yz, y, z}.
        let k3 = SimplicialComplex::new([
            simplex(&["y", "z"]),
            simplex(&["y"]),
            simplex(&["z"]),
        ]);
        assert_eq!(fact.intermediate, chain_complex_of(&k3).unwrap());
    }

    #[test]
    fn factorize_identity_and_zero() {
        let k = k2();
        let id_map = SimplicialMap::new(
            k.vertices
                .iter()
                .map(|v| (v.clone(), v.clone()))
                .collect(),
        );
        let id = induced_chain_map(&id_map, &k, &k).unwrap();
        let fact = factorize_chain_map(&id).unwrap();
        assert_eq!(fact.intermediate, id.dom);
        // The zero chain map has an empty intermediate.
        let zero = ChainMapZ {
            dom: id.dom.clone(),
            cod: id.cod.clone(),
            components: (0..=id.dom.top_grade())
                .map(|n| IntMatrix::zero(id.cod.rank(n), id.dom.rank(n)))
                .collect(),
        };
        let fact = factorize_chain_map(&zero).unwrap();
        assert!(fact.intermediate.grades.is_empty());
    }

    #[test]
    fn bundle_view_roundtrip() {
        use crate::bundle::is_subbundle;
        use crate::limits::Limits;
        let k3 = SimplicialComplex::new([
            simplex(&["y", "z"]),
            simplex(&["y"]),
            simplex(&["z"]),
        ]);
        let c = chain_complex_of(&k3).unwrap();
        let chain = as_chain_bundle(&c).unwrap();
        assert_eq!(chain.bundle().len(), 2);
        assert!(chain.bundle().is_chain());
        // Reflexivity through the bundle machinery.
        let cat = FreeAbelian;
        assert!(is_subbundle(
            &cat,
            chain.bundle(),
            chain.bundle(),
            &Limits::default()
        )
        .unwrap());
    }
}

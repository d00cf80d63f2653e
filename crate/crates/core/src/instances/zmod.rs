//! Free abelian groups with labeled ordered bases and integer matrices.
//!
//! This is the instance behind chain complexes: an object is `Z^k` with a
//! sorted list of basis labels, a morphism an exact integer matrix. Hom-sets
//! are infinite, so enumeration is refused (except to and from the zero
//! object) and classification is structural: in the category of free abelian
//! groups a matrix is mono iff it has full column rank and epi iff it has
//! full row rank (targets are torsion-free, so `2(g - h) = 0` forces
//! `g = h`); split arrows need unit elementary divisors on top of full rank.
//!
//! Subobjects are spans of basis subsets, so a morphism has a representable
//! image exactly when every column is an integer multiple of a single basis
//! vector; maps induced by simplicial maps always have this shape.

use std::fmt;

use crate::category::{Category, Factorization, Morphism, MorphismClass};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::IntMatrix;

/// `Z^k` with sorted basis labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeAbelianObject {
    pub basis: Vec<String>,
}

impl FreeAbelianObject {
    pub fn new(mut basis: Vec<String>) -> Self {
        basis.sort();
        basis.dedup();
        FreeAbelianObject { basis }
    }

    pub fn zero() -> Self {
        FreeAbelianObject { basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }
}

impl fmt::Display for FreeAbelianObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "<{}>", self.basis.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeAbelianMap {
    pub matrix: IntMatrix,
}

impl fmt::Display for FreeAbelianMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FreeAbelian;

impl FreeAbelian {
    pub fn linear(
        &self,
        dom: FreeAbelianObject,
        cod: FreeAbelianObject,
        matrix: IntMatrix,
    ) -> Result<Morphism<Self>> {
        let m = Morphism::new(dom, cod, FreeAbelianMap { matrix });
        self.check_morphism(&m)?;
        Ok(m)
    }
}

impl Category for FreeAbelian {
    type Object = FreeAbelianObject;
    type Payload = FreeAbelianMap;

    fn instance_name(&self) -> &'static str {
        "free_abelian"
    }

    fn check_object(&self, o: &FreeAbelianObject) -> Result<()> {
        let mut sorted = o.basis.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != o.basis {
            return Err(Error::InvalidObject(
                "basis labels must be sorted and distinct".into(),
            ));
        }
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        self.check_object(&f.dom)?;
        self.check_object(&f.cod)?;
        if f.payload.matrix.rows() != f.cod.rank() || f.payload.matrix.cols() != f.dom.rank() {
            return Err(Error::InvalidMorphism(format!(
                "matrix shape {}x{} does not match {} -> {}",
                f.payload.matrix.rows(),
                f.payload.matrix.cols(),
                f.dom,
                f.cod
            )));
        }
        Ok(())
    }

    fn identity(&self, o: &FreeAbelianObject) -> Morphism<Self> {
        Morphism::new(
            o.clone(),
            o.clone(),
            FreeAbelianMap {
                matrix: IntMatrix::identity(o.rank()),
            },
        )
    }

    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>> {
        if f.cod != g.dom {
            return Err(Error::NonComposable(format!(
                "cod {} of a map differs from dom {}",
                f.cod, g.dom
            )));
        }
        Ok(Morphism::new(
            f.dom.clone(),
            g.cod.clone(),
            FreeAbelianMap {
                matrix: g.payload.matrix.mul(&f.payload.matrix)?,
            },
        ))
    }

    fn hom(
        &self,
        a: &FreeAbelianObject,
        b: &FreeAbelianObject,
        _limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        if a.rank() == 0 || b.rank() == 0 {
            return Ok(vec![self.zero_morphism(a, b)?]);
        }
        Err(Error::HomNotEnumerable(format!(
            "Hom({a}, {b}) is infinite in {}",
            self.instance_name()
        )))
    }

    fn zero_object(&self) -> Option<FreeAbelianObject> {
        Some(FreeAbelianObject::zero())
    }

    fn is_zero(&self, o: &FreeAbelianObject) -> bool {
        o.basis.is_empty()
    }

    fn zero_morphism(
        &self,
        a: &FreeAbelianObject,
        b: &FreeAbelianObject,
    ) -> Result<Morphism<Self>> {
        Ok(Morphism::new(
            a.clone(),
            b.clone(),
            FreeAbelianMap {
                matrix: IntMatrix::zero(b.rank(), a.rank()),
            },
        ))
    }

    fn subobject_leq(
        &self,
        a: &FreeAbelianObject,
        b: &FreeAbelianObject,
    ) -> Result<Option<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let positions: Option<Vec<usize>> =
            a.basis.iter().map(|l| b.position(l)).collect();
        match positions {
            Some(pos) => {
                let mut matrix = IntMatrix::zero(b.rank(), a.rank());
                for (col, row) in pos.into_iter().enumerate() {
                    matrix.set(row, col, 1);
                }
                Ok(Some(Morphism::new(
                    a.clone(),
                    b.clone(),
                    FreeAbelianMap { matrix },
                )))
            }
            None => Ok(None),
        }
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        let m = &f.payload.matrix;
        // Every column must be a multiple of a single basis vector.
        let mut hit = vec![false; f.cod.rank()];
        for c in 0..m.cols() {
            let col = m.col(c);
            let nonzero: Vec<usize> = (0..col.len()).filter(|&r| col[r] != 0).collect();
            match nonzero.len() {
                0 => {}
                1 => hit[nonzero[0]] = true,
                _ => {
                    return Err(Error::NoImage(format!(
                        "column {c} of {m} mixes basis directions"
                    )))
                }
            }
        }
        let keep: Vec<usize> = (0..f.cod.rank()).filter(|&r| hit[r]).collect();
        let image = FreeAbelianObject {
            basis: keep.iter().map(|&r| f.cod.basis[r].clone()).collect(),
        };
        let epi_part = Morphism::new(
            f.dom.clone(),
            image.clone(),
            FreeAbelianMap {
                matrix: m.select_rows(&keep),
            },
        );
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("selected sub-basis includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }

    fn restrict(
        &self,
        x: &Morphism<Self>,
        sub_dom: &FreeAbelianObject,
        sub_cod: &FreeAbelianObject,
        _limits: &Limits,
    ) -> Result<Option<Morphism<Self>>> {
        let dom_pos: Option<Vec<usize>> =
            sub_dom.basis.iter().map(|l| x.dom.position(l)).collect();
        let cod_pos: Option<Vec<usize>> =
            sub_cod.basis.iter().map(|l| x.cod.position(l)).collect();
        let (Some(dom_pos), Some(cod_pos)) = (dom_pos, cod_pos) else {
            return Err(Error::InvalidObject(
                "restriction endpoints are not sub-bases".into(),
            ));
        };
        // Columns over the sub-domain must live inside the sub-codomain rows.
        let cols = x.payload.matrix.select_cols(&dom_pos);
        for r in 0..cols.rows() {
            if cod_pos.contains(&r) {
                continue;
            }
            for c in 0..cols.cols() {
                if cols.get(r, c) != 0 {
                    return Ok(None);
                }
            }
        }
        Ok(Some(Morphism::new(
            sub_dom.clone(),
            sub_cod.clone(),
            FreeAbelianMap {
                matrix: cols.select_rows(&cod_pos),
            },
        )))
    }

    /// Structural classification; the universe argument is unused because
    /// hom-sets are infinite.
    fn classify(
        &self,
        f: &Morphism<Self>,
        _universe: &[FreeAbelianObject],
        _limits: &Limits,
    ) -> Result<MorphismClass> {
        self.check_morphism(f)?;
        let m = &f.payload.matrix;
        let rank = m.rank();
        let mono = rank == m.cols();
        let epi = rank == m.rows();
        let divisors = m.elementary_divisors();
        let units = divisors.iter().all(|&d| d == 1);
        let split_mono = mono && units;
        let split_epi = epi && units;
        let is_inclusion = self.is_inclusion(f);
        // An embedding factors as an isomorphism onto a sub-basis span.
        let embedding = is_inclusion
            || (mono && units && self.image(f).map_or(false, |fact| {
                fact.epi_part.payload.matrix.rows() == m.cols()
            }));
        Ok(MorphismClass {
            mono,
            epi,
            split_mono,
            split_epi,
            embedding,
            is_inclusion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(labels: &[&str]) -> FreeAbelianObject {
        FreeAbelianObject::new(labels.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn compose_is_matrix_product() {
        let c = FreeAbelian;
        let a = obj(&["a", "b"]);
        let b = obj(&["u"]);
        let f = c
            .linear(
                a.clone(),
                b.clone(),
                IntMatrix::from_rows(vec![vec![1, -1]]).unwrap(),
            )
            .unwrap();
        let g = c
            .linear(
                b.clone(),
                a.clone(),
                IntMatrix::from_rows(vec![vec![2], vec![3]]).unwrap(),
            )
            .unwrap();
        let fg = c.compose(&f, &g).unwrap();
        assert_eq!(fg.payload.matrix.to_rows(), vec![vec![2, -2], vec![3, -3]]);
    }

    #[test]
    fn inclusion_and_restriction() {
        let c = FreeAbelian;
        let sub = obj(&["x", "z"]);
        let whole = obj(&["x", "y", "z"]);
        let j = c.subobject_leq(&sub, &whole).unwrap().unwrap();
        assert_eq!(j.payload.matrix.col(0), vec![1, 0, 0]);
        assert_eq!(j.payload.matrix.col(1), vec![0, 0, 1]);
        assert!(c.is_inclusion(&j));
        // x ↦ 2x, y ↦ 0, z ↦ -z restricted to <x,z> -> <x,z>.
        let f = c
            .linear(
                whole.clone(),
                whole.clone(),
                IntMatrix::from_rows(vec![
                    vec![2, 0, 0],
                    vec![0, 0, 0],
                    vec![0, 0, -1],
                ])
                .unwrap(),
            )
            .unwrap();
        let r = c
            .restrict(&f, &sub, &sub, &Limits::default())
            .unwrap()
            .unwrap();
        assert_eq!(r.payload.matrix.to_rows(), vec![vec![2, 0], vec![0, -1]]);
    }

    #[test]
    fn image_of_basis_aligned_map() {
        let c = FreeAbelian;
        let dom = obj(&["a", "b"]);
        let cod = obj(&["u", "v", "w"]);
        // a ↦ v, b ↦ -v: image is <v>.
        let f = c
            .linear(
                dom,
                cod,
                IntMatrix::from_rows(vec![vec![0, 0], vec![1, -1], vec![0, 0]]).unwrap(),
            )
            .unwrap();
        let fact = c.image(&f).unwrap();
        assert_eq!(fact.image, obj(&["v"]));
        assert_eq!(c.compose(&fact.epi_part, &fact.inclusion_part).unwrap(), f);
    }

    #[test]
    fn mixed_column_has_no_aligned_image() {
        let c = FreeAbelian;
        let f = c
            .linear(
                obj(&["a"]),
                obj(&["u", "v"]),
                IntMatrix::from_rows(vec![vec![1], vec![1]]).unwrap(),
            )
            .unwrap();
        assert!(matches!(c.image(&f), Err(Error::NoImage(_))));
    }

    #[test]
    fn classify_times_two() {
        let c = FreeAbelian;
        let z = obj(&["e"]);
        let f = c
            .linear(
                z.clone(),
                z.clone(),
                IntMatrix::from_rows(vec![vec![2]]).unwrap(),
            )
            .unwrap();
        let class = c.classify(&f, &[], &Limits::default()).unwrap();
        // ×2 is mono and epi in free abelian groups but splits on neither side.
        assert!(class.mono && class.epi);
        assert!(!class.split_mono && !class.split_epi);
    }
}

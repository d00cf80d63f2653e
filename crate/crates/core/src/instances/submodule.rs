//! Submodules of the integers, completed under finite products.
//!
//! Objects are tuples `(n_1, ..., n_r)` standing for `n_1 Z x ... x n_r Z`;
//! a single component is a plain submodule and the component `0` is the zero
//! submodule. The completion is what makes `3Z x 6Z` an object at all, since
//! it is not a submodule of `Z`.
//!
//! A morphism assigns to each *target* component a source component index
//! and a rational multiplier. Componentwise morphisms between equal-arity
//! tuples are the special case where the index map is the identity;
//! projections and pairings change arity, which is why the index is part of
//! the payload. Components are normalized (`q = 0` or a zero source
//! component both become the canonical zero component), so structural
//! equality is extensional equality.
//!
//! Hom-sets here are infinite (`q` ranges over `(k/n)·Z`), so enumeration is
//! refused and classification uses structural rules, each justified below.

use std::fmt;

use num_rational::Ratio;

use crate::category::{
    Category, Factorization, Morphism, MorphismClass, ProductData, SubobjectWitness,
};
use crate::error::{Error, Result};
use crate::limits::Limits;

pub type Rational = Ratio<i64>;

/// `n_1 Z x ... x n_r Z`, componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmoduleObject {
    pub components: Vec<u64>,
}

impl SubmoduleObject {
    pub fn single(n: u64) -> Self {
        SubmoduleObject {
            components: vec![n],
        }
    }

    pub fn tuple(components: Vec<u64>) -> Self {
        SubmoduleObject { components }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&n| n == 0)
    }
}

impl fmt::Display for SubmoduleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |n: u64| {
            if n == 0 {
                "0".to_string()
            } else {
                format!("{n}Z")
            }
        };
        if self.components.len() == 1 {
            write!(f, "{}", part(self.components[0]))
        } else {
            let joined: Vec<String> = self.components.iter().map(|&n| part(n)).collect();
            write!(f, "{}", joined.join(" x "))
        }
    }
}

/// One target component of a submodule morphism: multiply source component
/// `from` by `times`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MapComponent {
    pub from: usize,
    pub times: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmoduleMap {
    pub components: Vec<MapComponent>,
}

impl fmt::Display for SubmoduleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}@{}", c.times, c.from))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Submodules;

impl Submodules {
    fn zero_component() -> MapComponent {
        MapComponent {
            from: 0,
            times: Rational::from_integer(0),
        }
    }

    fn normalize(dom: &SubmoduleObject, components: &mut [MapComponent]) {
        for c in components.iter_mut() {
            if c.times == Rational::from_integer(0)
                || dom.components.get(c.from).copied() == Some(0)
            {
                *c = Self::zero_component();
            }
        }
    }

    /// Builds a morphism from raw components, normalizing zeros.
    pub fn map(
        &self,
        dom: SubmoduleObject,
        cod: SubmoduleObject,
        mut components: Vec<MapComponent>,
    ) -> Result<Morphism<Self>> {
        Self::normalize(&dom, &mut components);
        let m = Morphism::new(dom, cod, SubmoduleMap { components });
        self.check_morphism(&m)?;
        Ok(m)
    }

    /// Equal-arity componentwise morphism with multipliers `q_i`.
    pub fn componentwise(
        &self,
        dom: SubmoduleObject,
        cod: SubmoduleObject,
        multipliers: Vec<Rational>,
    ) -> Result<Morphism<Self>> {
        if multipliers.len() != dom.arity() || dom.arity() != cod.arity() {
            return Err(Error::InvalidMorphism(
                "componentwise maps need equal arity on both sides".into(),
            ));
        }
        let components = multipliers
            .into_iter()
            .enumerate()
            .map(|(i, q)| MapComponent { from: i, times: q })
            .collect();
        self.map(dom, cod, components)
    }

    /// Checks `q · n ∈ k·Z`.
    fn component_valid(n: u64, k: u64, q: Rational) -> bool {
        let image = q * Rational::from_integer(n as i64);
        if !image.is_integer() {
            return false;
        }
        let image = image.to_integer();
        if k == 0 {
            image == 0
        } else {
            image % (k as i64) == 0
        }
    }
}

impl Category for Submodules {
    type Object = SubmoduleObject;
    type Payload = SubmoduleMap;

    fn instance_name(&self) -> &'static str {
        "submoduleZ"
    }

    fn check_object(&self, o: &SubmoduleObject) -> Result<()> {
        if o.components.is_empty() {
            return Err(Error::InvalidObject(
                "a submodule tuple needs at least one component".into(),
            ));
        }
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        self.check_object(&f.dom)?;
        self.check_object(&f.cod)?;
        if f.payload.components.len() != f.cod.arity() {
            return Err(Error::InvalidMorphism(format!(
                "expected {} components, got {}",
                f.cod.arity(),
                f.payload.components.len()
            )));
        }
        for (j, c) in f.payload.components.iter().enumerate() {
            if c.from >= f.dom.arity() {
                return Err(Error::InvalidMorphism(format!(
                    "component {j} reads source index {} out of range",
                    c.from
                )));
            }
            let n = f.dom.components[c.from];
            let k = f.cod.components[j];
            if !Self::component_valid(n, k, c.times) {
                return Err(Error::InvalidMorphism(format!(
                    "{}·({n}Z) does not land in {k}Z at component {j}",
                    c.times
                )));
            }
            // Normalized form: zero components are written canonically.
            if (c.times == Rational::from_integer(0) && c.from != 0) || (n == 0 && c.times != Rational::from_integer(0)) {
                return Err(Error::InvalidMorphism(format!(
                    "component {j} is not in normalized form"
                )));
            }
        }
        Ok(())
    }

    fn identity(&self, o: &SubmoduleObject) -> Morphism<Self> {
        let mut components: Vec<MapComponent> = (0..o.arity())
            .map(|i| MapComponent {
                from: i,
                times: Rational::from_integer(1),
            })
            .collect();
        Self::normalize(o, &mut components);
        Morphism::new(o.clone(), o.clone(), SubmoduleMap { components })
    }

    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>> {
        if f.cod != g.dom {
            return Err(Error::NonComposable(format!(
                "cod {} of {f} differs from dom {} of {g}",
                f.cod, g.dom
            )));
        }
        let mut components: Vec<MapComponent> = g
            .payload
            .components
            .iter()
            .map(|gc| {
                let fc = &f.payload.components[gc.from];
                MapComponent {
                    from: fc.from,
                    times: gc.times * fc.times,
                }
            })
            .collect();
        Self::normalize(&f.dom, &mut components);
        Ok(Morphism::new(
            f.dom.clone(),
            g.cod.clone(),
            SubmoduleMap { components },
        ))
    }

    fn hom(
        &self,
        a: &SubmoduleObject,
        b: &SubmoduleObject,
        _limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        // Only zero-source or zero-target hom-sets are finite (they are
        // singletons); everything else is a Z-indexed family.
        if a.is_zero() || b.is_zero() {
            return Ok(vec![self.zero_morphism(a, b)?]);
        }
        Err(Error::HomNotEnumerable(format!(
            "Hom({a}, {b}) is infinite in {}",
            self.instance_name()
        )))
    }

    fn zero_object(&self) -> Option<SubmoduleObject> {
        Some(SubmoduleObject::single(0))
    }

    fn is_zero(&self, o: &SubmoduleObject) -> bool {
        o.is_zero()
    }

    fn zero_morphism(&self, a: &SubmoduleObject, b: &SubmoduleObject) -> Result<Morphism<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        Ok(Morphism::new(
            a.clone(),
            b.clone(),
            SubmoduleMap {
                components: vec![Self::zero_component(); b.arity()],
            },
        ))
    }

    fn subobject_leq(
        &self,
        a: &SubmoduleObject,
        b: &SubmoduleObject,
    ) -> Result<Option<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        if a.arity() != b.arity() {
            return Ok(None);
        }
        // a_i Z ⊆ n_i Z iff n_i divides a_i (with 0Z below everything and
        // only 0Z below 0Z).
        for (ai, ni) in a.components.iter().zip(&b.components) {
            let ok = if *ai == 0 {
                true
            } else {
                *ni != 0 && *ai % *ni == 0
            };
            if !ok {
                return Ok(None);
            }
        }
        let mut components: Vec<MapComponent> = (0..a.arity())
            .map(|i| MapComponent {
                from: i,
                times: Rational::from_integer(1),
            })
            .collect();
        Self::normalize(a, &mut components);
        Ok(Some(Morphism::new(
            a.clone(),
            b.clone(),
            SubmoduleMap { components },
        )))
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        // The image lattice is a product of its coordinate projections only
        // when no two nonzero components read the same source coordinate
        // (otherwise coordinates are correlated, e.g. a diagonal).
        let mut seen = std::collections::BTreeSet::new();
        for c in &f.payload.components {
            if c.times != Rational::from_integer(0) && !seen.insert(c.from) {
                return Err(Error::NoImage(format!(
                    "image of {f} is a correlated sublattice, not a component tuple"
                )));
            }
        }
        let image_components: Vec<u64> = f
            .payload
            .components
            .iter()
            .map(|c| {
                let n = f.dom.components[c.from];
                let img = c.times * Rational::from_integer(n as i64);
                img.to_integer().unsigned_abs()
            })
            .collect();
        let image = SubmoduleObject::tuple(image_components);
        let epi_part = Morphism::new(
            f.dom.clone(),
            image.clone(),
            SubmoduleMap {
                components: f.payload.components.clone(),
            },
        );
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("image tuple includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }

    fn kernel(&self, f: &Morphism<Self>) -> Result<SubobjectWitness<Self>> {
        self.check_morphism(f)?;
        // Coordinate i dies iff some component multiplies it by a nonzero
        // rational.
        let mut killed = vec![false; f.dom.arity()];
        for c in &f.payload.components {
            if c.times != Rational::from_integer(0) {
                killed[c.from] = true;
            }
        }
        let components: Vec<u64> = f
            .dom
            .components
            .iter()
            .zip(&killed)
            .map(|(&n, &dead)| if dead { 0 } else { n })
            .collect();
        let object = SubmoduleObject::tuple(components);
        let inclusion = self
            .subobject_leq(&object, &f.dom)?
            .expect("kernel tuple includes into the domain");
        Ok(SubobjectWitness { object, inclusion })
    }

    fn product(&self, a: &SubmoduleObject, b: &SubmoduleObject) -> Result<ProductData<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let mut components = a.components.clone();
        components.extend(&b.components);
        let object = SubmoduleObject::tuple(components);
        let mut left: Vec<MapComponent> = (0..a.arity())
            .map(|i| MapComponent {
                from: i,
                times: Rational::from_integer(1),
            })
            .collect();
        Self::normalize(&object, &mut left);
        let mut right: Vec<MapComponent> = (0..b.arity())
            .map(|i| MapComponent {
                from: a.arity() + i,
                times: Rational::from_integer(1),
            })
            .collect();
        Self::normalize(&object, &mut right);
        let proj_left = Morphism::new(object.clone(), a.clone(), SubmoduleMap { components: left });
        let proj_right = Morphism::new(
            object.clone(),
            b.clone(),
            SubmoduleMap { components: right },
        );
        Ok(ProductData {
            object,
            proj_left,
            proj_right,
        })
    }

    fn pair(
        &self,
        f: &Morphism<Self>,
        g: &Morphism<Self>,
        prod: &ProductData<Self>,
    ) -> Result<Morphism<Self>> {
        if f.dom != g.dom {
            return Err(Error::SourceMismatch(format!(
                "pairing needs a common source, got {} and {}",
                f.dom, g.dom
            )));
        }
        let mut components = f.payload.components.clone();
        components.extend(g.payload.components.iter().copied());
        let paired = Morphism::new(
            f.dom.clone(),
            prod.object.clone(),
            SubmoduleMap { components },
        );
        self.check_morphism(&paired)?;
        debug_assert_eq!(self.compose(&paired, &prod.proj_left)?, *f);
        debug_assert_eq!(self.compose(&paired, &prod.proj_right)?, *g);
        Ok(paired)
    }

    /// Composition with a projection literally extracts the corresponding
    /// block of components, so `h;π₁ = f` and `h;π₂ = g` pin every component
    /// of `h`: the solution set is exactly the canonical pairing.
    fn pairing_solutions(
        &self,
        f: &Morphism<Self>,
        g: &Morphism<Self>,
        prod: &ProductData<Self>,
        _limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        let l = self.pair(f, g, prod)?;
        debug_assert_eq!(self.compose(&l, &prod.proj_left)?, *f);
        debug_assert_eq!(self.compose(&l, &prod.proj_right)?, *g);
        Ok(vec![l])
    }

    fn restrict(
        &self,
        x: &Morphism<Self>,
        sub_dom: &SubmoduleObject,
        sub_cod: &SubmoduleObject,
        _limits: &Limits,
    ) -> Result<Option<Morphism<Self>>> {
        if self.subobject_leq(sub_dom, &x.dom)?.is_none() {
            return Err(Error::InvalidObject(format!(
                "{sub_dom} is not a subobject of {}",
                x.dom
            )));
        }
        if self.subobject_leq(sub_cod, &x.cod)?.is_none() {
            return Err(Error::InvalidObject(format!(
                "{sub_cod} is not a subobject of {}",
                x.cod
            )));
        }
        let mut components = x.payload.components.clone();
        Self::normalize(sub_dom, &mut components);
        for (j, c) in components.iter().enumerate() {
            let n = sub_dom.components[c.from];
            let k = sub_cod.components[j];
            if !Self::component_valid(n, k, c.times) {
                return Ok(None);
            }
        }
        Ok(Some(Morphism::new(
            sub_dom.clone(),
            sub_cod.clone(),
            SubmoduleMap { components },
        )))
    }

    /// Structural classification; the universe argument is unused because
    /// hom-sets are not enumerable.
    ///
    /// * mono ⟺ injective ⟺ every nonzero source coordinate is read by some
    ///   nonzero component (an unread coordinate gives two arrows that agree
    ///   after `f`, and injective concrete maps always cancel on the left);
    /// * epi ⟺ every nonzero target coordinate is hit nontrivially and
    ///   nonzero components read pairwise distinct sources. Surjectivity is
    ///   not required: distinct multiplications that agree on `q·nZ` already
    ///   agree everywhere, but correlated coordinates (a diagonal) admit the
    ///   two projections as a counterexample pair;
    /// * split mono/epi ⟺ the required one-sided inverse multipliers `1/q`
    ///   are themselves valid multipliers;
    /// * embedding ⟺ mono with uncorrelated coordinates: the epi part of the
    ///   factorization is then an isomorphism onto the image tuple.
    fn classify(
        &self,
        f: &Morphism<Self>,
        _universe: &[SubmoduleObject],
        _limits: &Limits,
    ) -> Result<MorphismClass> {
        self.check_morphism(f)?;
        let zero = Rational::from_integer(0);
        let nonzero: Vec<&MapComponent> = f
            .payload
            .components
            .iter()
            .filter(|c| c.times != zero)
            .collect();

        let covered = |i: usize| nonzero.iter().any(|c| c.from == i);
        let mono = f
            .dom
            .components
            .iter()
            .enumerate()
            .all(|(i, &n)| n == 0 || covered(i));

        let mut sources: Vec<usize> = nonzero.iter().map(|c| c.from).collect();
        sources.sort_unstable();
        let distinct = sources.windows(2).all(|w| w[0] != w[1]);
        let hits_all_targets = f
            .cod
            .components
            .iter()
            .enumerate()
            .all(|(j, &k)| k == 0 || f.payload.components[j].times != zero);
        let epi = hits_all_targets && distinct;

        let inverse_ok = |j: usize| {
            let c = &f.payload.components[j];
            let k = f.cod.components[j];
            c.times != zero
                && Self::component_valid(k, f.dom.components[c.from], c.times.recip())
        };
        let split_mono = f.dom.components.iter().enumerate().all(|(i, &n)| {
            n == 0
                || f.payload
                    .components
                    .iter()
                    .enumerate()
                    .any(|(j, c)| c.from == i && c.times != zero && inverse_ok(j))
        });
        let split_epi = epi
            && f.cod
                .components
                .iter()
                .enumerate()
                .all(|(j, &k)| k == 0 || inverse_ok(j));

        let embedding = mono && distinct;
        let is_inclusion = self.is_inclusion(f);

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

    fn cat() -> Submodules {
        Submodules
    }

    fn nz(n: u64) -> SubmoduleObject {
        SubmoduleObject::single(n)
    }

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p, r)
    }

    #[test]
    fn inclusion_iff_divides() {
        let c = cat();
        for m in 1..=20u64 {
            for n in 1..=20u64 {
                let leq = c.subobject_leq(&nz(n), &nz(m)).unwrap();
                assert_eq!(leq.is_some(), n % m == 0, "nZ ⊆ mZ iff m | n ({n}, {m})");
                if let Some(j) = leq {
                    // x ↦ x; the generator n lands at (n/m) times the target
                    // generator m.
                    assert_eq!(j.payload.components[0].times, q(1, 1));
                    assert_eq!((n / m) * m, n);
                }
            }
        }
        // 5Z is not below 2Z: 2 does not divide 5.
        assert!(cat().subobject_leq(&nz(5), &nz(2)).unwrap().is_none());
    }

    #[test]
    fn paper_style_maps_validate() {
        let c = cat();
        // (2/3): 3Z -> 2Z sends 3 to 2.
        let f = c.componentwise(nz(3), nz(2), vec![q(2, 3)]).unwrap();
        assert!(c.check_morphism(&f).is_ok());
        // (5/2): 2Z -> 5Z sends 2 to 5.
        assert!(c.componentwise(nz(2), nz(5), vec![q(5, 2)]).is_ok());
        // 1/2: 3Z -> 2Z is not well defined (3/2 is not in 2Z).
        assert!(c.componentwise(nz(3), nz(2), vec![q(1, 2)]).is_err());
    }

    #[test]
    fn product_and_pairing() {
        let c = cat();
        let prod = c.product(&nz(3), &nz(6)).unwrap();
        assert_eq!(prod.object, SubmoduleObject::tuple(vec![3, 6]));
        let f = c.componentwise(nz(6), nz(3), vec![q(1, 2)]).unwrap();
        let g = c.componentwise(nz(6), nz(6), vec![q(1, 1)]).unwrap();
        let l = c.pair(&f, &g, &prod).unwrap();
        assert_eq!(c.compose(&l, &prod.proj_left).unwrap(), f);
        assert_eq!(c.compose(&l, &prod.proj_right).unwrap(), g);
        let sols = c
            .pairing_solutions(&f, &g, &prod, &Limits::default())
            .unwrap();
        assert_eq!(sols, vec![l]);
    }

    #[test]
    fn kernel_and_image() {
        let c = cat();
        let f = c.componentwise(nz(4), nz(3), vec![q(3, 4)]).unwrap();
        // Nonzero multiplication has trivial kernel and image (3/4)·4Z = 3Z.
        let k = c.kernel(&f).unwrap();
        assert!(k.object.is_zero());
        let fact = c.image(&f).unwrap();
        assert_eq!(fact.image, nz(3));
        assert_eq!(c.compose(&fact.epi_part, &fact.inclusion_part).unwrap(), f);
        // The zero map keeps everything.
        let z = c.zero_morphism(&nz(4), &nz(3)).unwrap();
        assert_eq!(c.kernel(&z).unwrap().object, nz(4));
    }

    #[test]
    fn diagonal_has_no_tuple_image() {
        let c = cat();
        let diag = c
            .map(
                nz(2),
                SubmoduleObject::tuple(vec![1, 1]),
                vec![
                    MapComponent {
                        from: 0,
                        times: q(1, 1),
                    },
                    MapComponent {
                        from: 0,
                        times: q(1, 1),
                    },
                ],
            )
            .unwrap();
        assert!(matches!(c.image(&diag), Err(Error::NoImage(_))));
        // And it is not epi: the two projections disagree but compose equally.
        let class = c.classify(&diag, &[], &Limits::default()).unwrap();
        assert!(class.mono);
        assert!(!class.epi);
    }

    #[test]
    fn classification_structural() {
        let c = cat();
        // ×q with q ≠ 0 between nonzero submodules is mono and epi but not
        // split unless 1/q is valid.
        let f = c.componentwise(nz(3), nz(2), vec![q(2, 3)]).unwrap();
        let class = c.classify(&f, &[], &Limits::default()).unwrap();
        assert!(class.mono && class.epi);
        assert!(class.embedding);
        // Inverse 3/2 maps 2Z to 3Z: 3 ∈ 3Z, valid, so f is split both ways.
        assert!(class.split_mono && class.split_epi);
        // The zero map out of a nonzero module is neither mono nor epi.
        let z = c.zero_morphism(&nz(2), &nz(3)).unwrap();
        let class = c.classify(&z, &[], &Limits::default()).unwrap();
        assert!(!class.mono && !class.epi);
        // Identity is an inclusion.
        let class = c
            .classify(&c.identity(&nz(5)), &[], &Limits::default())
            .unwrap();
        assert!(class.is_inclusion && class.embedding);
    }
}

//! The augmented simplex category: finite ordinals `[n]` for `n ≥ -1`
//! (where `[-1]` is empty) with weakly monotone maps.
//!
//! `[-1]` is initial and `[0]` is terminal; there is no zero object.
//! Subobjects are the initial-segment inclusions `i ↦ i`, so only morphisms
//! whose value set is an initial segment have representable images.

use std::fmt;

use crate::category::{Category, Factorization, Morphism};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The ordinal `[n]` with carrier `{0, ..., n}`; `n = -1` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal(pub i64);

impl Ordinal {
    pub fn len(&self) -> usize {
        (self.0 + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == -1
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// Weakly monotone value list; entry `i` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    pub values: Vec<i64>,
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AugmentedSimplex;

impl AugmentedSimplex {
    pub fn monotone(&self, dom: Ordinal, cod: Ordinal, values: Vec<i64>) -> Result<Morphism<Self>> {
        let m = Morphism::new(dom, cod, MonotoneMap { values });
        self.check_morphism(&m)?;
        Ok(m)
    }

    /// Number of weakly monotone maps `[m] -> [n]`, by stars and bars.
    pub fn hom_count(m: i64, n: i64) -> u64 {
        if m == -1 {
            return 1;
        }
        if n == -1 {
            return 0;
        }
        binomial((m + n + 1) as u64, (m + 1) as u64)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

impl Category for AugmentedSimplex {
    type Object = Ordinal;
    type Payload = MonotoneMap;

    fn instance_name(&self) -> &'static str {
        "delta_plus"
    }

    fn check_object(&self, o: &Ordinal) -> Result<()> {
        if o.0 < -1 {
            return Err(Error::InvalidObject(format!(
                "ordinal index {} below -1",
                o.0
            )));
        }
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        self.check_object(&f.dom)?;
        self.check_object(&f.cod)?;
        if f.payload.values.len() != f.dom.len() {
            return Err(Error::InvalidMorphism(format!(
                "value list of length {} for domain {}",
                f.payload.values.len(),
                f.dom
            )));
        }
        if f.dom.len() > 0 && f.cod.is_empty() {
            return Err(Error::InvalidMorphism(format!(
                "no maps from {} into the empty ordinal",
                f.dom
            )));
        }
        for w in f.payload.values.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidMorphism(format!(
                    "values {:?} are not weakly monotone",
                    f.payload.values
                )));
            }
        }
        if let (Some(&lo), Some(&hi)) = (f.payload.values.first(), f.payload.values.last()) {
            if lo < 0 || hi > f.cod.0 {
                return Err(Error::InvalidMorphism(format!(
                    "values {:?} leave the codomain {}",
                    f.payload.values, f.cod
                )));
            }
        }
        Ok(())
    }

    fn identity(&self, o: &Ordinal) -> Morphism<Self> {
        Morphism::new(
            *o,
            *o,
            MonotoneMap {
                values: (0..=o.0).collect(),
            },
        )
    }

    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>> {
        if f.cod != g.dom {
            return Err(Error::NonComposable(format!(
                "cod {} of {f} differs from dom {} of {g}",
                f.cod, g.dom
            )));
        }
        let values = f
            .payload
            .values
            .iter()
            .map(|&v| g.payload.values[v as usize])
            .collect();
        Ok(Morphism::new(f.dom, g.cod, MonotoneMap { values }))
    }

    fn hom(&self, a: &Ordinal, b: &Ordinal, limits: &Limits) -> Result<Vec<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        limits.check_explosion(Self::hom_count(a.0, b.0))?;
        if a.is_empty() {
            return Ok(vec![Morphism::new(
                *a,
                *b,
                MonotoneMap { values: Vec::new() },
            )]);
        }
        if b.is_empty() {
            return Ok(Vec::new());
        }
        // Enumerate nondecreasing sequences in lexicographic order.
        let len = a.len();
        let mut out = Vec::new();
        let mut values = vec![0i64; len];
        loop {
            out.push(Morphism::new(
                *a,
                *b,
                MonotoneMap {
                    values: values.clone(),
                },
            ));
            let mut i = len;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if values[i] < b.0 {
                    let v = values[i] + 1;
                    for slot in values.iter_mut().skip(i) {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    fn subobject_leq(&self, a: &Ordinal, b: &Ordinal) -> Result<Option<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        if a.0 <= b.0 {
            Ok(Some(Morphism::new(
                *a,
                *b,
                MonotoneMap {
                    values: (0..=a.0).collect(),
                },
            )))
        } else {
            Ok(None)
        }
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        let mut values = f.payload.values.clone();
        values.dedup();
        // Representable only when the value set is an initial segment
        // {0, ..., k}, because inclusions here are i ↦ i.
        let initial_segment = values.iter().copied().eq(0..values.len() as i64);
        if !initial_segment {
            return Err(Error::NoImage(format!(
                "value set of {f} is not an initial segment"
            )));
        }
        let image = Ordinal(values.len() as i64 - 1);
        let epi_part = Morphism::new(f.dom, image, f.payload.clone());
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("initial segment includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts_match_binomials() {
        let c = AugmentedSimplex;
        let limits = Limits::default();
        for m in -1..=5i64 {
            for n in -1..=5i64 {
                let hom = c.hom(&Ordinal(m), &Ordinal(n), &limits).unwrap();
                // Independent oracle: Pascal-triangle binomial.
                assert_eq!(
                    hom.len() as u64,
                    AugmentedSimplex::hom_count(m, n),
                    "Hom([{m}],[{n}])"
                );
                for f in &hom {
                    assert!(c.check_morphism(f).is_ok());
                }
            }
        }
        // Spot values: Hom([0],[1]) = 2, Hom([-1],[n]) = 1.
        assert_eq!(AugmentedSimplex::hom_count(0, 1), 2);
        assert_eq!(AugmentedSimplex::hom_count(-1, 4), 1);
    }

    #[test]
    fn initial_and_terminal() {
        let c = AugmentedSimplex;
        let limits = Limits::default();
        for n in -1..=4i64 {
            assert_eq!(c.hom(&Ordinal(-1), &Ordinal(n), &limits).unwrap().len(), 1);
            if n >= 0 {
                assert_eq!(c.hom(&Ordinal(n), &Ordinal(0), &limits).unwrap().len(), 1);
            }
        }
        // [0] is terminal, not initial: two maps [0] -> [1].
        assert_eq!(c.hom(&Ordinal(0), &Ordinal(1), &limits).unwrap().len(), 2);
    }

    #[test]
    fn image_initial_segment_only() {
        let c = AugmentedSimplex;
        // Constant 0 has image [0].
        let f = c.monotone(Ordinal(2), Ordinal(3), vec![0, 0, 0]).unwrap();
        let fact = c.image(&f).unwrap();
        assert_eq!(fact.image, Ordinal(0));
        assert_eq!(c.compose(&fact.epi_part, &fact.inclusion_part).unwrap(), f);
        // Constant 1 has value set {1}, not an initial segment.
        let g = c.monotone(Ordinal(0), Ordinal(1), vec![1]).unwrap();
        assert!(matches!(c.image(&g), Err(Error::NoImage(_))));
    }
}

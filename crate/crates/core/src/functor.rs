//! Functors between category instances and universal-arrow verification.

use std::marker::PhantomData;

use crate::category::{Category, Morphism};
use crate::error::{Error, Result};
use crate::instances::cyclic::CyclicGroups;
use crate::instances::pointed::{PointedMap, PointedSet, PointedSets};
use crate::instances::set::{FinSets, SetMap};
use crate::limits::Limits;
use crate::report::Report;

/// A covariant functor from instance `S` to instance `T`.
pub trait Functor<S: Category, T: Category> {
    fn name(&self) -> &'static str;
    fn map_object(&self, src: &S, tgt: &T, o: &S::Object) -> Result<T::Object>;
    fn map_morphism(&self, src: &S, tgt: &T, f: &Morphism<S>) -> Result<Morphism<T>>;
}

/// The identity functor on any instance.
pub struct IdFunctor<C: Category>(PhantomData<C>);

impl<C: Category> Default for IdFunctor<C> {
    fn default() -> Self {
        IdFunctor(PhantomData)
    }
}

impl<C: Category> IdFunctor<C> {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<C: Category> Functor<C, C> for IdFunctor<C> {
    fn name(&self) -> &'static str {
        "identity"
    }

    fn map_object(&self, _src: &C, _tgt: &C, o: &C::Object) -> Result<C::Object> {
        Ok(o.clone())
    }

    fn map_morphism(&self, _src: &C, _tgt: &C, f: &Morphism<C>) -> Result<Morphism<C>> {
        Ok(f.clone())
    }
}

/// Forgetful functor from cyclic groups to pointed sets: `G ↦ (G, 0)` with
/// the underlying function of each homomorphism.
#[derive(Debug, Clone, Copy, Default)]
pub struct ForgetCyclicToPointed;

fn cyclic_carrier(o: &<CyclicGroups as Category>::Object) -> PointedSet {
    PointedSet::new(o.elements().map(|x| x.to_string()), "0")
}

impl Functor<CyclicGroups, PointedSets> for ForgetCyclicToPointed {
    fn name(&self) -> &'static str {
        "underlying-pointed"
    }

    fn map_object(
        &self,
        src: &CyclicGroups,
        _tgt: &PointedSets,
        o: &<CyclicGroups as Category>::Object,
    ) -> Result<PointedSet> {
        src.check_object(o)?;
        Ok(cyclic_carrier(o))
    }

    fn map_morphism(
        &self,
        src: &CyclicGroups,
        _tgt: &PointedSets,
        f: &Morphism<CyclicGroups>,
    ) -> Result<Morphism<PointedSets>> {
        src.check_morphism(f)?;
        let map = f
            .dom
            .elements()
            .map(|x| (x.to_string(), src.eval(f, x).to_string()))
            .collect();
        Ok(Morphism::new(
            cyclic_carrier(&f.dom),
            cyclic_carrier(&f.cod),
            PointedMap { map },
        ))
    }
}

/// Forgetful functor from pointed sets to sets: drop the basepoint.
#[derive(Debug, Clone, Copy, Default)]
pub struct ForgetPointedToSet;

impl Functor<PointedSets, FinSets> for ForgetPointedToSet {
    fn name(&self) -> &'static str {
        "underlying-set"
    }

    fn map_object(
        &self,
        _src: &PointedSets,
        _tgt: &FinSets,
        o: &PointedSet,
    ) -> Result<<FinSets as Category>::Object> {
        Ok(crate::instances::set::FinSet {
            elements: o.elements.clone(),
        })
    }

    fn map_morphism(
        &self,
        src: &PointedSets,
        _tgt: &FinSets,
        f: &Morphism<PointedSets>,
    ) -> Result<Morphism<FinSets>> {
        src.check_morphism(f)?;
        Ok(Morphism::new(
            crate::instances::set::FinSet {
                elements: f.dom.elements.clone(),
            },
            crate::instances::set::FinSet {
                elements: f.cod.elements.clone(),
            },
            SetMap {
                map: f.payload.map.clone(),
            },
        ))
    }
}

/// Exhaustively verifies that `(candidate_obj, candidate_arrow)` is a
/// universal arrow from `d` to the functor.
///
/// For every object `c'` of the source universe and every arrow
/// `g' : d -> F(c')`, there must be exactly one `f : candidate_obj -> c'`
/// with `candidate_arrow ; F(f) = g'`. The report lists every `(c', g')`
/// with zero or multiple witnesses.
pub fn verify_universal_arrow<S, T, F>(
    src: &S,
    tgt: &T,
    functor: &F,
    d: &T::Object,
    candidate_obj: &S::Object,
    candidate_arrow: &Morphism<T>,
    universe: &[S::Object],
    limits: &Limits,
) -> Result<Report>
where
    S: Category,
    T: Category,
    F: Functor<S, T>,
{
    let mut report = Report::new();
    let f_c = functor.map_object(src, tgt, candidate_obj)?;
    if candidate_arrow.dom != *d || candidate_arrow.cod != f_c {
        return Err(Error::FunctorDomainMismatch(format!(
            "candidate arrow must run {d} -> {f_c}, got {candidate_arrow}"
        )));
    }
    tgt.check_morphism(candidate_arrow)?;
    report.pass(
        "candidate",
        format!("arrow {candidate_arrow} runs from {d} into the functor image"),
    );

    for c_prime in universe {
        let f_c_prime = functor.map_object(src, tgt, c_prime)?;
        let arrows = tgt.hom(d, &f_c_prime, limits)?;
        let candidates = src.hom(candidate_obj, c_prime, limits)?;
        limits.check_universe((arrows.len() as u64).saturating_mul(candidates.len() as u64))?;
        for g_prime in &arrows {
            let mut witnesses = Vec::new();
            for f in &candidates {
                let mapped = functor.map_morphism(src, tgt, f)?;
                if tgt.compose(candidate_arrow, &mapped)? == *g_prime {
                    witnesses.push(f.clone());
                }
            }
            let loc = format!("object {c_prime}, arrow {g_prime}");
            match witnesses.len() {
                1 => report.pass(loc, "exactly one factorization"),
                0 => report.fail(loc, "exactly one factorization", "no witness"),
                n => report.fail(
                    loc,
                    "exactly one factorization",
                    format!("{n} distinct witnesses, e.g. {} and {}", witnesses[0], witnesses[1]),
                ),
            }
        }
    }
    Ok(report)
}

/// Property check used by tests: functor laws on a sample of morphisms.
pub fn check_functor_laws<S, T, F>(
    src: &S,
    tgt: &T,
    functor: &F,
    sample: &[Morphism<S>],
) -> Result<Report>
where
    S: Category,
    T: Category,
    F: Functor<S, T>,
{
    let mut report = Report::new();
    for f in sample {
        let id_image = functor.map_morphism(src, tgt, &src.identity(&f.dom))?;
        let image_id = tgt.identity(&functor.map_object(src, tgt, &f.dom)?);
        if id_image == image_id {
            report.pass(format!("{f}"), "preserves identity");
        } else {
            report.fail(format!("{f}"), "preserves identity", format!("{id_image}"));
        }
    }
    for f in sample {
        for g in sample {
            if f.cod != g.dom {
                continue;
            }
            let lhs = functor.map_morphism(src, tgt, &src.compose(f, g)?)?;
            let rhs = tgt.compose(
                &functor.map_morphism(src, tgt, f)?,
                &functor.map_morphism(src, tgt, g)?,
            )?;
            if lhs == rhs {
                report.pass(format!("{f} ; {g}"), "preserves composition");
            } else {
                report.fail(
                    format!("{f} ; {g}"),
                    "preserves composition",
                    format!("{lhs} vs {rhs}"),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::cyclic::CyclicObject;
    use crate::instances::set::FinSet;

    #[test]
    fn forgetful_cyclic_to_pointed_laws() {
        let grp = CyclicGroups;
        let pnt = PointedSets;
        let fun = ForgetCyclicToPointed;
        let limits = Limits::default();
        let objs = [
            CyclicObject::full(3),
            CyclicObject::full(6),
            CyclicObject::full(2),
        ];
        let mut sample = Vec::new();
        for a in &objs {
            for b in &objs {
                sample.extend(grp.hom(a, b, &limits).unwrap());
            }
        }
        let report = check_functor_laws(&grp, &pnt, &fun, &sample).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn identity_functor_universal_arrow() {
        let c = CyclicGroups;
        let fun = IdFunctor::<CyclicGroups>::new();
        let d = CyclicObject::full(4);
        let universe = vec![
            CyclicObject::full(4),
            CyclicObject::full(2),
            CyclicObject::subgroup(4, 2),
        ];
        let report = verify_universal_arrow(
            &c,
            &c,
            &fun,
            &d,
            &d,
            &c.identity(&d),
            &universe,
            &Limits::default(),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn free_pointed_set_is_universal() {
        let pnt = PointedSets;
        let set = FinSets;
        let fun = ForgetPointedToSet;
        let limits = Limits::default();
        // d = {a}; candidate: the free pointed set on one generator with the
        // insertion map.
        let d = FinSet::new(["a".to_string()]);
        let free = PointedSet::new(["a".to_string()], "*");
        let insertion = set
            .from_table(
                d.clone(),
                FinSet {
                    elements: free.elements.clone(),
                },
                [("a".to_string(), "a".to_string())].into_iter().collect(),
            )
            .unwrap();
        let universe = vec![
            free.clone(),
            PointedSet::new(["x".to_string(), "y".to_string()], "*"),
        ];
        let report = verify_universal_arrow(
            &pnt,
            &set,
            &fun,
            &d,
            &free,
            &insertion,
            &universe,
            &limits,
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn zero_candidate_fails_when_nonzero_arrow_exists() {
        let c = CyclicGroups;
        let fun = IdFunctor::<CyclicGroups>::new();
        let d = CyclicObject::full(2);
        let zero = CyclicObject::full(1);
        let universe = vec![CyclicObject::full(2)];
        // Candidate (0, zero arrow): the identity on Z_2 has no factorization
        // through the trivial group.
        let report = verify_universal_arrow(
            &c,
            &c,
            &fun,
            &d,
            &zero,
            &c.zero_morphism(&d, &zero).unwrap(),
            &universe,
            &Limits::default(),
        )
        .unwrap();
        assert!(!report.passed());
        let failing: Vec<_> = report.failures().collect();
        assert!(failing.iter().any(|f| f.witness.as_deref() == Some("no witness")));
    }
}

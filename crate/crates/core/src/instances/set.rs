//! Plain finite sets with arbitrary functions.
//!
//! Mostly here as the codomain of the forgetful functor from pointed sets;
//! it has subobjects, images and cartesian products but no zero object.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::category::{Category, Factorization, Morphism, ProductData};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    pub elements: BTreeSet<String>,
}

impl FinSet {
    pub fn new(elements: impl IntoIterator<Item = String>) -> Self {
        FinSet {
            elements: elements.into_iter().collect(),
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMap {
    pub map: BTreeMap<String, String>,
}

impl fmt::Display for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}|->{b}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FinSets;

impl FinSets {
    pub fn from_table(
        &self,
        dom: FinSet,
        cod: FinSet,
        map: BTreeMap<String, String>,
    ) -> Result<Morphism<Self>> {
        let m = Morphism::new(dom, cod, SetMap { map });
        self.check_morphism(&m)?;
        Ok(m)
    }
}

impl Category for FinSets {
    type Object = FinSet;
    type Payload = SetMap;

    fn instance_name(&self) -> &'static str {
        "set"
    }

    fn check_object(&self, _o: &FinSet) -> Result<()> {
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        for x in &f.dom.elements {
            match f.payload.map.get(x) {
                Some(y) if f.cod.elements.contains(y) => {}
                Some(y) => {
                    return Err(Error::InvalidMorphism(format!(
                        "{x} maps to {y}, which is not in the codomain"
                    )))
                }
                None => return Err(Error::InvalidMorphism(format!("{x} has no image"))),
            }
        }
        if f.payload.map.len() != f.dom.elements.len() {
            return Err(Error::InvalidMorphism(
                "table mentions elements outside the domain".into(),
            ));
        }
        Ok(())
    }

    fn identity(&self, o: &FinSet) -> Morphism<Self> {
        let map = o.elements.iter().map(|x| (x.clone(), x.clone())).collect();
        Morphism::new(o.clone(), o.clone(), SetMap { map })
    }

    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>> {
        if f.cod != g.dom {
            return Err(Error::NonComposable(format!(
                "cod {} of {f} differs from dom {} of {g}",
                f.cod, g.dom
            )));
        }
        let map = f
            .payload
            .map
            .iter()
            .map(|(x, y)| (x.clone(), g.payload.map[y].clone()))
            .collect();
        Ok(Morphism::new(f.dom.clone(), g.cod.clone(), SetMap { map }))
    }

    fn hom(&self, a: &FinSet, b: &FinSet, limits: &Limits) -> Result<Vec<Morphism<Self>>> {
        let dom: Vec<&String> = a.elements.iter().collect();
        let targets: Vec<&String> = b.elements.iter().collect();
        if dom.is_empty() {
            return Ok(vec![Morphism::new(
                a.clone(),
                b.clone(),
                SetMap {
                    map: BTreeMap::new(),
                },
            )]);
        }
        if targets.is_empty() {
            return Ok(Vec::new());
        }
        let count = (targets.len() as u64).checked_pow(dom.len() as u32);
        match count {
            Some(c) => limits.check_explosion(c)?,
            None => {
                return Err(Error::ExplosionGuard {
                    candidates: u64::MAX,
                    cap: limits.max_enum,
                })
            }
        }
        let mut out = Vec::new();
        let mut odometer = vec![0usize; dom.len()];
        loop {
            let map: BTreeMap<String, String> = dom
                .iter()
                .zip(&odometer)
                .map(|(x, &t)| ((*x).clone(), targets[t].clone()))
                .collect();
            out.push(Morphism::new(a.clone(), b.clone(), SetMap { map }));
            let mut i = dom.len();
            loop {
                if i == 0 {
                    out.sort();
                    return Ok(out);
                }
                i -= 1;
                odometer[i] += 1;
                if odometer[i] < targets.len() {
                    break;
                }
                odometer[i] = 0;
            }
        }
    }

    fn subobject_leq(&self, a: &FinSet, b: &FinSet) -> Result<Option<Morphism<Self>>> {
        if a.elements.is_subset(&b.elements) {
            let map = a.elements.iter().map(|x| (x.clone(), x.clone())).collect();
            Ok(Some(Morphism::new(a.clone(), b.clone(), SetMap { map })))
        } else {
            Ok(None)
        }
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        let image = FinSet {
            elements: f.payload.map.values().cloned().collect(),
        };
        let epi_part = Morphism::new(f.dom.clone(), image.clone(), f.payload.clone());
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("image includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }

    fn product(&self, a: &FinSet, b: &FinSet) -> Result<ProductData<Self>> {
        let label = |x: &str, y: &str| format!("({x},{y})");
        let elements: BTreeSet<String> = a
            .elements
            .iter()
            .flat_map(|x| b.elements.iter().map(move |y| label(x, y)))
            .collect();
        let object = FinSet { elements };
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for x in &a.elements {
            for y in &b.elements {
                left.insert(label(x, y), x.clone());
                right.insert(label(x, y), y.clone());
            }
        }
        Ok(ProductData {
            proj_left: Morphism::new(object.clone(), a.clone(), SetMap { map: left }),
            proj_right: Morphism::new(object.clone(), b.clone(), SetMap { map: right }),
            object,
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
        let map = f
            .dom
            .elements
            .iter()
            .map(|x| {
                (
                    x.clone(),
                    format!("({},{})", f.payload.map[x], g.payload.map[x]),
                )
            })
            .collect();
        let paired = Morphism::new(f.dom.clone(), prod.object.clone(), SetMap { map });
        self.check_morphism(&paired)?;
        Ok(paired)
    }
}

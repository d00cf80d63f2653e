//! Pointed finite sets with base-point-preserving maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::category::{
    Category, Factorization, Morphism, ProductData, QuotientWitness, SubobjectWitness,
};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedSet {
    pub elements: BTreeSet<String>,
    pub basepoint: String,
}

impl PointedSet {
    pub fn new(elements: impl IntoIterator<Item = String>, basepoint: impl Into<String>) -> Self {
        let basepoint = basepoint.into();
        let mut elements: BTreeSet<String> = elements.into_iter().collect();
        elements.insert(basepoint.clone());
        PointedSet {
            elements,
            basepoint,
        }
    }

    pub fn singleton(label: impl Into<String>) -> Self {
        let label = label.into();
        PointedSet::new([label.clone()], label)
    }
}

impl fmt::Display for PointedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        write!(f, "({{{}}}, {})", labels.join(","), self.basepoint)
    }
}

/// Total base-point-preserving function table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    pub map: BTreeMap<String, String>,
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}|->{b}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PointedSets;

impl PointedSets {
    pub fn from_table(
        &self,
        dom: PointedSet,
        cod: PointedSet,
        map: BTreeMap<String, String>,
    ) -> Result<Morphism<Self>> {
        let m = Morphism::new(dom, cod, PointedMap { map });
        self.check_morphism(&m)?;
        Ok(m)
    }

    pub fn eval<'a>(&self, f: &'a Morphism<Self>, x: &str) -> Option<&'a str> {
        f.payload.map.get(x).map(String::as_str)
    }
}

impl Category for PointedSets {
    type Object = PointedSet;
    type Payload = PointedMap;

    fn instance_name(&self) -> &'static str {
        "pointed_set"
    }

    fn check_object(&self, o: &PointedSet) -> Result<()> {
        if !o.elements.contains(&o.basepoint) {
            return Err(Error::InvalidObject(format!(
                "basepoint {} missing from carrier",
                o.basepoint
            )));
        }
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        self.check_object(&f.dom)?;
        self.check_object(&f.cod)?;
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
        if f.payload.map.get(&f.dom.basepoint) != Some(&f.cod.basepoint) {
            return Err(Error::InvalidMorphism(format!(
                "basepoint {} is not sent to basepoint {}",
                f.dom.basepoint, f.cod.basepoint
            )));
        }
        Ok(())
    }

    fn identity(&self, o: &PointedSet) -> Morphism<Self> {
        let map = o.elements.iter().map(|x| (x.clone(), x.clone())).collect();
        Morphism::new(o.clone(), o.clone(), PointedMap { map })
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
        Ok(Morphism::new(
            f.dom.clone(),
            g.cod.clone(),
            PointedMap { map },
        ))
    }

    fn hom(
        &self,
        a: &PointedSet,
        b: &PointedSet,
        limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let free: Vec<&String> = a.elements.iter().filter(|x| **x != a.basepoint).collect();
        let targets: Vec<&String> = b.elements.iter().collect();
        let count = (targets.len() as u64).checked_pow(free.len() as u32);
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
        let mut odometer = vec![0usize; free.len()];
        loop {
            let mut map = BTreeMap::new();
            map.insert(a.basepoint.clone(), b.basepoint.clone());
            for (x, &t) in free.iter().zip(&odometer) {
                map.insert((*x).clone(), targets[t].clone());
            }
            out.push(Morphism::new(a.clone(), b.clone(), PointedMap { map }));
            // Advance; most significant digit first keeps the order stable.
            let mut i = free.len();
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

    fn zero_object(&self) -> Option<PointedSet> {
        Some(PointedSet::singleton("*"))
    }

    fn is_zero(&self, o: &PointedSet) -> bool {
        o.elements.len() == 1
    }

    fn zero_morphism(&self, a: &PointedSet, b: &PointedSet) -> Result<Morphism<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let map = a
            .elements
            .iter()
            .map(|x| (x.clone(), b.basepoint.clone()))
            .collect();
        Ok(Morphism::new(a.clone(), b.clone(), PointedMap { map }))
    }

    fn subobject_leq(&self, a: &PointedSet, b: &PointedSet) -> Result<Option<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        if a.basepoint == b.basepoint && a.elements.is_subset(&b.elements) {
            let map = a.elements.iter().map(|x| (x.clone(), x.clone())).collect();
            Ok(Some(Morphism::new(
                a.clone(),
                b.clone(),
                PointedMap { map },
            )))
        } else {
            Ok(None)
        }
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        let elements: BTreeSet<String> = f.payload.map.values().cloned().collect();
        let image = PointedSet {
            elements,
            basepoint: f.cod.basepoint.clone(),
        };
        let epi_part = Morphism::new(f.dom.clone(), image.clone(), f.payload.clone());
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("image carrier includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }

    fn kernel(&self, f: &Morphism<Self>) -> Result<SubobjectWitness<Self>> {
        self.check_morphism(f)?;
        // Basepoint fiber.
        let elements: BTreeSet<String> = f
            .payload
            .map
            .iter()
            .filter(|(_, y)| **y == f.cod.basepoint)
            .map(|(x, _)| x.clone())
            .collect();
        let object = PointedSet {
            elements,
            basepoint: f.dom.basepoint.clone(),
        };
        let inclusion = self
            .subobject_leq(&object, &f.dom)?
            .expect("kernel fiber includes into the domain");
        Ok(SubobjectWitness { object, inclusion })
    }

    fn cokernel(&self, f: &Morphism<Self>) -> Result<QuotientWitness<Self>> {
        self.check_morphism(f)?;
        let hit: BTreeSet<&String> = f.payload.map.values().collect();
        let mut elements: BTreeSet<String> = f
            .cod
            .elements
            .iter()
            .filter(|y| !hit.contains(y))
            .cloned()
            .collect();
        elements.insert(f.cod.basepoint.clone());
        let object = PointedSet {
            elements: elements.clone(),
            basepoint: f.cod.basepoint.clone(),
        };
        let map = f
            .cod
            .elements
            .iter()
            .map(|y| {
                let target = if elements.contains(y) && !hit.contains(y) {
                    y.clone()
                } else {
                    f.cod.basepoint.clone()
                };
                (y.clone(), target)
            })
            .collect();
        let projection = Morphism::new(f.cod.clone(), object.clone(), PointedMap { map });
        Ok(QuotientWitness { object, projection })
    }

    fn product(&self, a: &PointedSet, b: &PointedSet) -> Result<ProductData<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let label = |x: &str, y: &str| format!("({x},{y})");
        let elements: BTreeSet<String> = a
            .elements
            .iter()
            .flat_map(|x| b.elements.iter().map(move |y| label(x, y)))
            .collect();
        let object = PointedSet {
            elements,
            basepoint: label(&a.basepoint, &b.basepoint),
        };
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for x in &a.elements {
            for y in &b.elements {
                left.insert(label(x, y), x.clone());
                right.insert(label(x, y), y.clone());
            }
        }
        Ok(ProductData {
            proj_left: Morphism::new(object.clone(), a.clone(), PointedMap { map: left }),
            proj_right: Morphism::new(object.clone(), b.clone(), PointedMap { map: right }),
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
        let paired = Morphism::new(f.dom.clone(), prod.object.clone(), PointedMap { map });
        self.check_morphism(&paired)?;
        Ok(paired)
    }

    fn restrict(
        &self,
        x: &Morphism<Self>,
        sub_dom: &PointedSet,
        sub_cod: &PointedSet,
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
        let mut map = BTreeMap::new();
        for e in &sub_dom.elements {
            let y = &x.payload.map[e];
            if !sub_cod.elements.contains(y) {
                return Ok(None);
            }
            map.insert(e.clone(), y.clone());
        }
        Ok(Some(Morphism::new(
            sub_dom.clone(),
            sub_cod.clone(),
            PointedMap { map },
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(labels: &[&str], base: &str) -> PointedSet {
        PointedSet::new(labels.iter().map(|s| s.to_string()), base)
    }

    #[test]
    fn hom_count_is_power() {
        let c = PointedSets;
        let a = ps(&["*", "x", "y"], "*");
        let b = ps(&["*", "u"], "*");
        // Two free elements, two targets each.
        let hom = c.hom(&a, &b, &Limits::default()).unwrap();
        assert_eq!(hom.len(), 4);
        for f in &hom {
            assert!(c.check_morphism(f).is_ok());
        }
    }

    #[test]
    fn kernel_is_basepoint_fiber() {
        let c = PointedSets;
        let a = ps(&["*", "x", "y"], "*");
        let b = ps(&["*", "u"], "*");
        let mut table = BTreeMap::new();
        table.insert("*".to_string(), "*".to_string());
        table.insert("x".to_string(), "*".to_string());
        table.insert("y".to_string(), "u".to_string());
        let f = c.from_table(a, b, table).unwrap();
        let k = c.kernel(&f).unwrap();
        let labels: Vec<&str> = k.object.elements.iter().map(String::as_str).collect();
        assert_eq!(labels, vec!["*", "x"]);
    }

    #[test]
    fn cokernel_collapses_image() {
        let c = PointedSets;
        let a = ps(&["*", "x"], "*");
        let b = ps(&["*", "u", "v"], "*");
        let mut table = BTreeMap::new();
        table.insert("*".to_string(), "*".to_string());
        table.insert("x".to_string(), "u".to_string());
        let f = c.from_table(a, b.clone(), table).unwrap();
        let q = c.cokernel(&f).unwrap();
        let labels: Vec<&str> = q.object.elements.iter().map(String::as_str).collect();
        assert_eq!(labels, vec!["*", "v"]);
        assert_eq!(c.eval(&q.projection, "u"), Some("*"));
        assert_eq!(c.eval(&q.projection, "v"), Some("v"));
    }

    #[test]
    fn product_is_cartesian() {
        let c = PointedSets;
        let a = ps(&["*", "x"], "*");
        let b = ps(&["*", "u"], "*");
        let prod = c.product(&a, &b).unwrap();
        assert_eq!(prod.object.elements.len(), 4);
        let f = c.identity(&a);
        let g = c.zero_morphism(&a, &b).unwrap();
        let l = c.pair(&f, &g, &prod).unwrap();
        assert_eq!(c.compose(&l, &prod.proj_left).unwrap(), f);
        assert_eq!(c.compose(&l, &prod.proj_right).unwrap(), g);
        let sols = c
            .pairing_solutions(&f, &g, &prod, &Limits::default())
            .unwrap();
        assert_eq!(sols.len(), 1);
    }
}

//! Finite cyclic groups and their subgroups.
//!
//! Objects are the subgroups `dZ_n = {0, d, 2d, ...}` of `Z_n`, written
//! `Z(n)[d]` with `d | n`; `d = 1` is the full group and `d = n` the trivial
//! subgroup. Keeping subgroups first-class means every image object (such as
//! `{0,4}` inside `Z_8`) exists as a vertex, which canonical factorization
//! requires.
//!
//! A homomorphism out of a cyclic group is determined by where the generator
//! goes, so the morphism payload is a single generator image and structural
//! equality is extensional equality.

use std::fmt;

use num_integer::Integer;

use crate::category::{
    Category, Factorization, Morphism, ProductData, QuotientWitness, SubobjectWitness,
};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The subgroup `dZ_n` of `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicObject {
    pub modulus: u64,
    pub divisor: u64,
}

impl CyclicObject {
    pub fn full(n: u64) -> Self {
        CyclicObject {
            modulus: n,
            divisor: 1,
        }
    }

    pub fn subgroup(n: u64, d: u64) -> Self {
        CyclicObject {
            modulus: n,
            divisor: d,
        }
    }

    /// Number of elements, `n / d`.
    pub fn order(&self) -> u64 {
        self.modulus / self.divisor
    }

    /// Carrier elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.order()).map(|t| t * self.divisor)
    }
}

impl fmt::Display for CyclicObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisor == 1 {
            write!(f, "Z({})", self.modulus)
        } else {
            write!(f, "Z({})[{}]", self.modulus, self.divisor)
        }
    }
}

/// Payload of a cyclic morphism: the image of the domain's generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicMap {
    pub gen_image: u64,
}

impl fmt::Display for CyclicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen|->{}", self.gen_image)
    }
}

/// The category of finite cyclic groups and their subgroups.
#[derive(Debug, Clone, Copy, Default)]
pub struct CyclicGroups;

impl CyclicGroups {
    /// The morphism sending the domain generator to `gen_image`.
    pub fn by_gen_image(
        &self,
        dom: CyclicObject,
        cod: CyclicObject,
        gen_image: u64,
    ) -> Result<Morphism<Self>> {
        let m = Morphism::new(
            dom,
            cod,
            CyclicMap {
                gen_image: gen_image % cod.modulus.max(1),
            },
        );
        self.check_morphism(&m)?;
        Ok(m)
    }

    /// Multiplication by `k`, i.e. generator `d ↦ k·d mod m`.
    pub fn mul(&self, dom: CyclicObject, cod: CyclicObject, k: u64) -> Result<Morphism<Self>> {
        self.by_gen_image(dom, cod, (k % cod.modulus) * dom.divisor % cod.modulus)
    }

    /// Smallest `k ≥ 0` with `k·d ≡ gen_image (mod m)`, when the morphism is
    /// a multiplication map.
    pub fn multiplier_of(&self, f: &Morphism<Self>) -> Option<u64> {
        let m = f.cod.modulus;
        let d = f.dom.divisor;
        let g = f.payload.gen_image;
        // k·d ≡ g (mod m) is solvable iff gcd(d, m) | g.
        let gc = d.gcd(&m);
        if g % gc != 0 {
            return None;
        }
        (0..m / gc.max(1) + 1).find(|k| (k * d) % m == g)
    }

    /// Evaluates `f` on a carrier element of its domain.
    pub fn eval(&self, f: &Morphism<Self>, x: u64) -> u64 {
        let t = x / f.dom.divisor.max(1);
        (t * f.payload.gen_image) % f.cod.modulus.max(1)
    }

    fn order_in_codomain(cod: CyclicObject, g: u64) -> u64 {
        // Order of g in Z_m; g = 0 has order 1.
        cod.modulus / cod.modulus.gcd(&g).max(1)
    }
}

impl Category for CyclicGroups {
    type Object = CyclicObject;
    type Payload = CyclicMap;

    fn instance_name(&self) -> &'static str {
        "cyclic"
    }

    fn check_object(&self, o: &CyclicObject) -> Result<()> {
        if o.modulus == 0 {
            return Err(Error::InvalidObject("modulus must be positive".into()));
        }
        if o.divisor == 0 || o.modulus % o.divisor != 0 {
            return Err(Error::InvalidObject(format!(
                "divisor {} does not divide modulus {}",
                o.divisor, o.modulus
            )));
        }
        Ok(())
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        self.check_object(&f.dom)?;
        self.check_object(&f.cod)?;
        let g = f.payload.gen_image;
        if g >= f.cod.modulus {
            return Err(Error::InvalidMorphism(format!(
                "generator image {g} not reduced mod {}",
                f.cod.modulus
            )));
        }
        if g % f.cod.divisor != 0 {
            return Err(Error::InvalidMorphism(format!(
                "generator image {g} lies outside the subgroup {}",
                f.cod
            )));
        }
        // Well-definedness: the image order must divide the generator order.
        let image_order = Self::order_in_codomain(f.cod, g);
        if f.dom.order() % image_order != 0 {
            return Err(Error::InvalidMorphism(format!(
                "generator of order {} cannot map to element of order {image_order} ({f})",
                f.dom.order()
            )));
        }
        Ok(())
    }

    fn identity(&self, o: &CyclicObject) -> Morphism<Self> {
        Morphism::new(
            *o,
            *o,
            CyclicMap {
                gen_image: o.divisor % o.modulus,
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
        // f sends its generator to t·d_B; the composite sends it to t·(g's
        // generator image).
        let t = f.payload.gen_image / g.dom.divisor.max(1);
        let gen_image = (t * g.payload.gen_image) % g.cod.modulus;
        Ok(Morphism::new(f.dom, g.cod, CyclicMap { gen_image }))
    }

    fn hom(
        &self,
        a: &CyclicObject,
        b: &CyclicObject,
        limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        limits.check_explosion(b.order())?;
        let mut out = Vec::new();
        for g in b.elements() {
            let image_order = Self::order_in_codomain(*b, g);
            if a.order() % image_order == 0 {
                out.push(Morphism::new(*a, *b, CyclicMap { gen_image: g }));
            }
        }
        Ok(out)
    }

    fn zero_object(&self) -> Option<CyclicObject> {
        Some(CyclicObject::full(1))
    }

    fn is_zero(&self, o: &CyclicObject) -> bool {
        o.order() == 1
    }

    fn zero_morphism(&self, a: &CyclicObject, b: &CyclicObject) -> Result<Morphism<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        Ok(Morphism::new(*a, *b, CyclicMap { gen_image: 0 }))
    }

    /// Multiplier-preserving rule: `×k` in the source set is assigned `×k`
    /// in the target set when that map exists there.
    fn canonical_assignment(
        &self,
        x: &Morphism<Self>,
        targets: &[Morphism<Self>],
    ) -> Option<Morphism<Self>> {
        let k = self.multiplier_of(x)?;
        let (dom, cod) = (targets.first()?.dom, targets.first()?.cod);
        let candidate = self.mul(dom, cod, k).ok()?;
        targets.contains(&candidate).then_some(candidate)
    }

    fn subobject_leq(
        &self,
        a: &CyclicObject,
        b: &CyclicObject,
    ) -> Result<Option<Morphism<Self>>> {
        self.check_object(a)?;
        self.check_object(b)?;
        if a.modulus == b.modulus && a.divisor % b.divisor == 0 {
            // x ↦ x; the generator of a is a.divisor.
            Ok(Some(Morphism::new(
                *a,
                *b,
                CyclicMap {
                    gen_image: a.divisor % a.modulus,
                },
            )))
        } else {
            Ok(None)
        }
    }

    fn image(&self, f: &Morphism<Self>) -> Result<Factorization<Self>> {
        self.check_morphism(f)?;
        let g = f.payload.gen_image;
        let image = CyclicObject {
            modulus: f.cod.modulus,
            divisor: f.cod.modulus.gcd(&g).max(1),
        };
        let epi_part = Morphism::new(f.dom, image, CyclicMap { gen_image: g });
        let inclusion_part = self
            .subobject_leq(&image, &f.cod)?
            .expect("image subgroup includes into the codomain");
        Ok(Factorization {
            epi_part,
            inclusion_part,
            image,
        })
    }

    fn kernel(&self, f: &Morphism<Self>) -> Result<SubobjectWitness<Self>> {
        self.check_morphism(f)?;
        let image_order = Self::order_in_codomain(f.cod, f.payload.gen_image);
        // Kernel is generated by image_order · d inside Z_n; well-definedness
        // guarantees image_order divides n/d.
        let object = CyclicObject {
            modulus: f.dom.modulus,
            divisor: f.dom.divisor * image_order,
        };
        let inclusion = self
            .subobject_leq(&object, &f.dom)?
            .expect("kernel subgroup includes into the domain");
        Ok(SubobjectWitness { object, inclusion })
    }

    fn cokernel(&self, f: &Morphism<Self>) -> Result<QuotientWitness<Self>> {
        self.check_morphism(f)?;
        let big = f.cod.modulus.gcd(&f.payload.gen_image).max(1);
        let e = f.cod.divisor;
        // cod / image has order big / e.
        let object = CyclicObject::full(big / e);
        let projection = Morphism::new(
            f.cod,
            object,
            CyclicMap {
                gen_image: 1 % object.modulus,
            },
        );
        Ok(QuotientWitness { object, projection })
    }

    fn product(&self, a: &CyclicObject, b: &CyclicObject) -> Result<ProductData<Self>> {
        self.check_object(a)?;
        self.check_object(b)?;
        let p = a.order();
        let q = b.order();
        if p.gcd(&q) != 1 {
            return Err(Error::ProductsUnsupported(format!(
                "cyclic product of orders {p} and {q} needs coprime orders"
            )));
        }
        let object = CyclicObject::full(p * q);
        let proj_left = Morphism::new(
            object,
            *a,
            CyclicMap {
                gen_image: (a.divisor * (1 % p)) % a.modulus,
            },
        );
        let proj_right = Morphism::new(
            object,
            *b,
            CyclicMap {
                gen_image: (b.divisor * (1 % q)) % b.modulus,
            },
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
        let a = f.cod;
        let b = g.cod;
        let p = a.order();
        let q = b.order();
        let s = (f.payload.gen_image / a.divisor.max(1)) % p.max(1);
        let t = (g.payload.gen_image / b.divisor.max(1)) % q.max(1);
        let z = crt(s, p, t, q)?;
        let paired = Morphism::new(f.dom, prod.object, CyclicMap { gen_image: z });
        self.check_morphism(&paired)?;
        debug_assert_eq!(self.compose(&paired, &prod.proj_left)?, *f);
        debug_assert_eq!(self.compose(&paired, &prod.proj_right)?, *g);
        Ok(paired)
    }
}

/// Chinese remainder solution `z ≡ s (mod p)`, `z ≡ t (mod q)` for coprime
/// `p`, `q`, reduced mod `p·q`.
fn crt(s: u64, p: u64, t: u64, q: u64) -> Result<u64> {
    let (pq, p, q, s, t) = (
        (p * q) as i128,
        p as i128,
        q as i128,
        s as i128,
        t as i128,
    );
    let (g, mp, mq) = ext_gcd(p, q);
    if g != 1 {
        return Err(Error::ProductsUnsupported(
            "chinese remainder needs coprime orders".into(),
        ));
    }
    // 1 = mp·p + mq·q, so z = s·mq·q + t·mp·p.
    let z = (s * mq % pq * q + t * mp % pq * p).rem_euclid(pq);
    Ok(z as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Universe;

    fn cat() -> CyclicGroups {
        CyclicGroups
    }

    fn z(n: u64) -> CyclicObject {
        CyclicObject::full(n)
    }

    /// Independent oracle: the full function table of a morphism.
    fn table(f: &Morphism<CyclicGroups>) -> Vec<u64> {
        f.dom.elements().map(|x| cat().eval(f, x)).collect()
    }

    #[test]
    fn identity_law() {
        let c = cat();
        let f = c.mul(z(3), z(6), 2).unwrap();
        let id3 = c.identity(&z(3));
        let id6 = c.identity(&z(6));
        assert_eq!(c.compose(&id3, &f).unwrap(), f);
        assert_eq!(c.compose(&f, &id6).unwrap(), f);
    }

    #[test]
    fn compose_z3_z6_z8_is_zero() {
        // x ↦ 2x then x ↦ 4x lands on 8x ≡ 0 mod 8 for every x in Z_3.
        let c = cat();
        let f = c.mul(z(3), z(6), 2).unwrap();
        let g = c.mul(z(6), z(8), 4).unwrap();
        let fg = c.compose(&f, &g).unwrap();
        assert_eq!(fg, c.zero_morphism(&z(3), &z(8)).unwrap());
        // Table oracle agrees.
        let oracle: Vec<u64> = f
            .dom
            .elements()
            .map(|x| c.eval(&g, c.eval(&f, x)))
            .collect();
        assert_eq!(table(&fg), oracle);
        assert_eq!(oracle, vec![0, 0, 0]);
    }

    #[test]
    fn hom_counts_match_gcd() {
        let c = cat();
        let limits = Limits::default();
        for m in 1..=12 {
            for n in 1..=12 {
                // Oracle: count multipliers k in 0..n with k·m ≡ 0 (mod n).
                let oracle = (0..n).filter(|k| (k * m) % n == 0).count();
                let hom = c.hom(&z(m), &z(n), &limits).unwrap();
                assert_eq!(hom.len(), oracle, "Hom(Z_{m}, Z_{n})");
                assert_eq!(hom.len() as u64, m.gcd(&n));
            }
        }
    }

    #[test]
    fn hom_z3_z6_is_multiplication_by_2a() {
        let c = cat();
        let hom = c.hom(&z(3), &z(6), &Limits::default()).unwrap();
        let images: Vec<u64> = hom.iter().map(|f| f.payload.gen_image).collect();
        assert_eq!(images, vec![0, 2, 4]);
    }

    #[test]
    fn classify_mul2_z3_z6_mono_not_epi() {
        let c = cat();
        let universe = vec![
            z(3),
            z(6),
            z(2),
            CyclicObject::subgroup(6, 2),
            CyclicObject::subgroup(6, 3),
            CyclicObject::subgroup(6, 6),
        ];
        let f = c.mul(z(3), z(6), 2).unwrap();
        // Oracle: x ↦ 2x mod 6 is injective on {0,1,2}, not surjective.
        let tbl = table(&f);
        let mut dedup = tbl.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), tbl.len());
        let class = c.classify(&f, &universe, &Limits::default()).unwrap();
        assert!(class.mono);
        assert!(!class.epi);
    }

    #[test]
    fn classify_mul4_z6_z8_not_mono() {
        let c = cat();
        let universe = vec![z(6), z(8), CyclicObject::subgroup(8, 4), z(2)];
        let f = c.mul(z(6), z(8), 4).unwrap();
        let class = c.classify(&f, &universe, &Limits::default()).unwrap();
        assert!(!class.mono);
    }

    #[test]
    fn classify_identity_has_everything() {
        let c = cat();
        let universe = vec![z(4), z(2), CyclicObject::subgroup(4, 2)];
        let class = c
            .classify(&c.identity(&z(4)), &universe, &Limits::default())
            .unwrap();
        assert!(class.mono && class.epi && class.split_mono && class.split_epi);
        assert!(class.embedding && class.is_inclusion);
    }

    #[test]
    fn subobject_examples() {
        let c = cat();
        // Reflexivity gives the identity.
        let j = c.subobject_leq(&z(8), &z(8)).unwrap().unwrap();
        assert_eq!(j, c.identity(&z(8)));
        // {0,4} ⊆ Z_8.
        let sub = CyclicObject::subgroup(8, 4);
        let j = c.subobject_leq(&sub, &z(8)).unwrap().unwrap();
        assert_eq!(j.payload.gen_image, 4);
        assert!(c.is_inclusion(&j));
        // No inclusion between unrelated subgroups.
        assert!(c
            .subobject_leq(&CyclicObject::subgroup(8, 2), &sub)
            .unwrap()
            .is_none());
    }

    #[test]
    fn factorize_mul4_z6_z8() {
        let c = cat();
        let f = c.mul(z(6), z(8), 4).unwrap();
        let fact = c.image(&f).unwrap();
        assert_eq!(fact.image, CyclicObject::subgroup(8, 4));
        let back = c.compose(&fact.epi_part, &fact.inclusion_part).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn factorize_mul4_z3_z4_through_trivial() {
        let c = cat();
        let f = c.mul(z(3), z(4), 4).unwrap();
        let fact = c.image(&f).unwrap();
        assert_eq!(fact.image, CyclicObject::subgroup(4, 4));
        assert_eq!(fact.image.order(), 1);
    }

    #[test]
    fn image_property_examples() {
        let c = cat();
        let mut universe = Vec::new();
        for n in [2u64, 3, 4, 6, 8] {
            for d in 1..=n {
                if n % d == 0 {
                    universe.push(CyclicObject::subgroup(n, d));
                }
            }
        }
        let uni = Universe::new(&c, universe);
        let f = c.mul(z(6), z(8), 4).unwrap();
        let check = uni.has_image(&f).unwrap();
        assert!(check.holds);
        assert!(check.unique);
        let surj = c.mul(z(2), z(2), 1).unwrap();
        let check = uni.has_image(&surj).unwrap();
        assert!(check.holds && check.unique);
        assert_eq!(check.factorization.image, z(2));
    }

    #[test]
    fn kernel_values() {
        let c = cat();
        // ker(×4: Z_3 → Z_4) is all of Z_3 (4x ≡ 0 mod 4 always).
        let k = c.kernel(&c.mul(z(3), z(4), 4).unwrap()).unwrap();
        assert_eq!(k.object, z(3));
        // ker(×4: Z_6 → Z_8) = {0,2,4}: oracle solves 4x ≡ 0 mod 8 over Z_6.
        let f = c.mul(z(6), z(8), 4).unwrap();
        let oracle: Vec<u64> = (0..6).filter(|x| (4 * x) % 8 == 0).collect();
        assert_eq!(oracle, vec![0, 2, 4]);
        let k = c.kernel(&f).unwrap();
        assert_eq!(k.object, CyclicObject::subgroup(6, 2));
        assert_eq!(k.object.elements().collect::<Vec<_>>(), oracle);
        // ker of the identity is the trivial subgroup.
        let k = c.kernel(&c.identity(&z(5))).unwrap();
        assert_eq!(k.object.order(), 1);
    }

    #[test]
    fn cokernel_values() {
        let c = cat();
        // coker(×4: Z_6 → Z_8) = Z_8 / {0,4}: coset oracle.
        let f = c.mul(z(6), z(8), 4).unwrap();
        let image: Vec<u64> = vec![0, 4];
        let mut cosets: Vec<Vec<u64>> = Vec::new();
        for x in 0..8u64 {
            let coset: Vec<u64> = image.iter().map(|i| (x + i) % 8).collect();
            let mut sorted = coset.clone();
            sorted.sort_unstable();
            if !cosets.contains(&sorted) {
                cosets.push(sorted);
            }
        }
        assert_eq!(cosets.len(), 4);
        let q = c.cokernel(&f).unwrap();
        assert_eq!(q.object.order(), 4);
        // coker of an identity is the zero object.
        let q = c.cokernel(&c.identity(&z(6))).unwrap();
        assert!(c.is_zero(&q.object));
        // coker of a zero morphism Z_6 → Z_8 is Z_8 itself.
        let zmor = c.zero_morphism(&z(6), &z(8)).unwrap();
        let q = c.cokernel(&zmor).unwrap();
        assert_eq!(q.object, z(8));
        assert_eq!(q.projection, c.identity(&z(8)));
    }

    #[test]
    fn product_z2_z3() {
        let c = cat();
        let prod = c.product(&z(2), &z(3)).unwrap();
        assert_eq!(prod.object.order(), 6);
        // Oracle: the cartesian carrier with componentwise addition has the
        // same element count and the projections implement (x mod 2, x mod 3).
        for x in 0..6u64 {
            assert_eq!(c.eval(&prod.proj_left, x), x % 2);
            assert_eq!(c.eval(&prod.proj_right, x), x % 3);
        }
        // Pairing satisfies both triangles and is unique in the hom-set.
        let f = c.mul(z(6), z(2), 1).unwrap();
        let g = c.mul(z(6), z(3), 1).unwrap();
        let l = c.pair(&f, &g, &prod).unwrap();
        assert_eq!(c.compose(&l, &prod.proj_left).unwrap(), f);
        assert_eq!(c.compose(&l, &prod.proj_right).unwrap(), g);
        let sols = c.pairing_solutions(&f, &g, &prod, &Limits::default()).unwrap();
        assert_eq!(sols, vec![l]);
    }

    #[test]
    fn products_need_coprime_orders() {
        let c = cat();
        assert!(matches!(
            c.product(&z(2), &z(4)),
            Err(Error::ProductsUnsupported(_))
        ));
    }

    #[test]
    fn restriction_of_mul_map() {
        let c = cat();
        let limits = Limits::default();
        // ×1 : Z_8 → Z_2 restricted to {0,4} sends 4 ↦ 0.
        let f = c.mul(z(8), z(2), 1).unwrap();
        let sub = CyclicObject::subgroup(8, 4);
        let r = c
            .restrict(&f, &sub, &z(2), &limits)
            .unwrap()
            .expect("restriction exists");
        assert_eq!(c.eval(&r, 4), 0);
    }
}

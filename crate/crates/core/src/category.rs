//! The finite-category kernel.
//!
//! A [`Category`] value describes one concrete category instance: how its
//! objects and morphisms look, how morphisms compose, and which optional
//! constructions (zero object, subobject preorder, images, kernels,
//! cokernels, binary products) it supports. All higher machinery — morphism
//! classification, canonical factorization, the chain-bundle layer — is
//! written against this trait.
//!
//! Composition order is diagrammatic throughout: `compose(f, g)` means
//! "first f, then g" and requires `cod f = dom g`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// An arrow of a concrete category instance.
///
/// The payload carries the instance-specific data (a generator image, a
/// rational multiplier tuple, a function table, a monotone value list, a
/// path). Payloads are normalized on construction so that structural
/// equality coincides with extensional equality of the underlying maps.
pub struct Morphism<C: Category> {
    pub dom: C::Object,
    pub cod: C::Object,
    pub payload: C::Payload,
}

impl<C: Category> Morphism<C> {
    pub fn new(dom: C::Object, cod: C::Object, payload: C::Payload) -> Self {
        Morphism { dom, cod, payload }
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }
}

impl<C: Category> Clone for Morphism<C> {
    fn clone(&self) -> Self {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            payload: self.payload.clone(),
        }
    }
}

impl<C: Category> PartialEq for Morphism<C> {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.payload == other.payload
    }
}

impl<C: Category> Eq for Morphism<C> {}

impl<C: Category> PartialOrd for Morphism<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for Morphism<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.dom, &self.cod, &self.payload).cmp(&(&other.dom, &other.cod, &other.payload))
    }
}

impl<C: Category> Hash for Morphism<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dom.hash(state);
        self.cod.hash(state);
        self.payload.hash(state);
    }
}

impl<C: Category> fmt::Debug for Morphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} --{:?}--> {:?}", self.dom, self.payload, self.cod)
    }
}

impl<C: Category> fmt::Display for Morphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.payload, self.dom, self.cod)
    }
}

/// Outcome of classifying a morphism against a finite universe.
///
/// `mono`/`epi` are relative to the supplied universe: cancellation is
/// quantified over the hom-sets of the universe's objects only, since the
/// ambient categories are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub split_mono: bool,
    pub split_epi: bool,
    pub embedding: bool,
    pub is_inclusion: bool,
}

/// Canonical factorization `f = epi_part ; inclusion_part` through `image`.
pub struct Factorization<C: Category> {
    pub epi_part: Morphism<C>,
    pub inclusion_part: Morphism<C>,
    pub image: C::Object,
}

impl<C: Category> Clone for Factorization<C> {
    fn clone(&self) -> Self {
        Factorization {
            epi_part: self.epi_part.clone(),
            inclusion_part: self.inclusion_part.clone(),
            image: self.image.clone(),
        }
    }
}

impl<C: Category> fmt::Debug for Factorization<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Factorization {{ epi: {:?}, incl: {:?}, image: {:?} }}",
            self.epi_part, self.inclusion_part, self.image
        )
    }
}

/// A kernel or image style subobject with its inclusion witness.
pub struct SubobjectWitness<C: Category> {
    pub object: C::Object,
    pub inclusion: Morphism<C>,
}

impl<C: Category> Clone for SubobjectWitness<C> {
    fn clone(&self) -> Self {
        SubobjectWitness {
            object: self.object.clone(),
            inclusion: self.inclusion.clone(),
        }
    }
}

/// A cokernel style quotient with its projection witness.
pub struct QuotientWitness<C: Category> {
    pub object: C::Object,
    pub projection: Morphism<C>,
}

impl<C: Category> Clone for QuotientWitness<C> {
    fn clone(&self) -> Self {
        QuotientWitness {
            object: self.object.clone(),
            projection: self.projection.clone(),
        }
    }
}

/// A binary product object with its canonical projections.
pub struct ProductData<C: Category> {
    pub object: C::Object,
    pub proj_left: Morphism<C>,
    pub proj_right: Morphism<C>,
}

impl<C: Category> Clone for ProductData<C> {
    fn clone(&self) -> Self {
        ProductData {
            object: self.object.clone(),
            proj_left: self.proj_left.clone(),
            proj_right: self.proj_right.clone(),
        }
    }
}

/// One concrete category instance.
///
/// Optional constructions default to an informative error; each instance
/// overrides exactly the ones it supports. `classify` and `restrict` come
/// with exhaustive default implementations that instances with
/// non-enumerable hom-sets replace by structural rules.
pub trait Category: Sized {
    type Object: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display;
    type Payload: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display;

    fn instance_name(&self) -> &'static str;

    fn check_object(&self, o: &Self::Object) -> Result<()>;

    /// Validates dom/cod membership and the instance's hom-validity rule.
    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()>;

    fn identity(&self, o: &Self::Object) -> Morphism<Self>;

    /// Diagrammatic composition: `f` then `g`.
    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>>;

    /// Complete, duplicate-free, deterministically ordered hom-set.
    ///
    /// Instances with infinite hom-sets return [`Error::HomNotEnumerable`].
    fn hom(
        &self,
        a: &Self::Object,
        b: &Self::Object,
        limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>>;

    /// Canonical zero object, when the instance has one.
    fn zero_object(&self) -> Option<Self::Object> {
        None
    }

    /// Structural test for zero objects (used for base conventions and
    /// trailing-level trimming; the universe-relative hom-counting check
    /// lives in [`is_zero_object`]).
    fn is_zero(&self, o: &Self::Object) -> bool {
        self.zero_object().map_or(false, |z| z == *o)
    }

    fn zero_morphism(&self, _a: &Self::Object, _b: &Self::Object) -> Result<Morphism<Self>> {
        Err(Error::ZeroUnsupported(self.instance_name().into()))
    }

    fn is_zero_morphism(&self, f: &Morphism<Self>) -> bool {
        self.zero_morphism(&f.dom, &f.cod)
            .map_or(false, |z| z == *f)
    }

    /// The unique inclusion `a -> b` when `a` is a designated subobject of
    /// `b`, `None` when the two objects are unrelated.
    fn subobject_leq(
        &self,
        _a: &Self::Object,
        _b: &Self::Object,
    ) -> Result<Option<Morphism<Self>>> {
        Err(Error::SubobjectsUnsupported(self.instance_name().into()))
    }

    fn is_inclusion(&self, f: &Morphism<Self>) -> bool {
        matches!(self.subobject_leq(&f.dom, &f.cod), Ok(Some(j)) if j == *f)
    }

    /// Canonical factorization through the image, when representable.
    fn image(&self, _f: &Morphism<Self>) -> Result<Factorization<Self>> {
        Err(Error::NoImage(self.instance_name().into()))
    }

    fn kernel(&self, _f: &Morphism<Self>) -> Result<SubobjectWitness<Self>> {
        Err(Error::KernelsUnsupported(self.instance_name().into()))
    }

    fn cokernel(&self, _f: &Morphism<Self>) -> Result<QuotientWitness<Self>> {
        Err(Error::CokernelsUnsupported(self.instance_name().into()))
    }

    fn product(&self, _a: &Self::Object, _b: &Self::Object) -> Result<ProductData<Self>> {
        Err(Error::ProductsUnsupported(self.instance_name().into()))
    }

    /// The canonical pairing `<f, g>` into a product previously built by
    /// [`Category::product`].
    fn pair(
        &self,
        _f: &Morphism<Self>,
        _g: &Morphism<Self>,
        _prod: &ProductData<Self>,
    ) -> Result<Morphism<Self>> {
        Err(Error::ProductsUnsupported(self.instance_name().into()))
    }

    /// Every morphism `h` with `h;proj_left = f` and `h;proj_right = g`.
    ///
    /// The default enumerates the hom-set into the product object and
    /// filters. Instances whose hom-sets are infinite override this with an
    /// argument that pins the solution set exactly (see the submodule
    /// instance).
    fn pairing_solutions(
        &self,
        f: &Morphism<Self>,
        g: &Morphism<Self>,
        prod: &ProductData<Self>,
        limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        if f.dom != g.dom {
            return Err(Error::SourceMismatch(format!(
                "pairing needs a common source, got {} and {}",
                f.dom, g.dom
            )));
        }
        let candidates = self.hom(&f.dom, &prod.object, limits)?;
        let mut out = Vec::new();
        for h in candidates {
            if self.compose(&h, &prod.proj_left)? == *f && self.compose(&h, &prod.proj_right)? == *g
            {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// Restriction of `x : M -> N` to subobjects `M' ⊆ M`, `N' ⊆ N`: the
    /// unique `x' : M' -> N'` with `j_{M'} ; x = x' ; j_{N'}`, or `None`
    /// when `x` does not map `M'` into `N'`.
    fn restrict(
        &self,
        x: &Morphism<Self>,
        sub_dom: &Self::Object,
        sub_cod: &Self::Object,
        limits: &Limits,
    ) -> Result<Option<Morphism<Self>>> {
        let j_dom = match self.subobject_leq(sub_dom, &x.dom)? {
            Some(j) => j,
            None => {
                return Err(Error::InvalidObject(format!(
                    "{sub_dom} is not a subobject of {}",
                    x.dom
                )))
            }
        };
        let j_cod = match self.subobject_leq(sub_cod, &x.cod)? {
            Some(j) => j,
            None => {
                return Err(Error::InvalidObject(format!(
                    "{sub_cod} is not a subobject of {}",
                    x.cod
                )))
            }
        };
        let around = self.compose(&j_dom, x)?;
        let mut found = None;
        for cand in self.hom(sub_dom, sub_cod, limits)? {
            if self.compose(&cand, &j_cod)? == around {
                if found.is_some() {
                    return Err(Error::InvalidMorphism(format!(
                        "restriction of {x} to {sub_dom} -> {sub_cod} is not unique"
                    )));
                }
                found = Some(cand);
            }
        }
        Ok(found)
    }

    /// Instance-declared canonical assignment rule, used when a bundle
    /// morphism's `σ` is left implicit and the level is not a forced
    /// singleton. The cyclic instance picks the multiplier-preserving
    /// target; everything else requires explicit assignments.
    fn canonical_assignment(
        &self,
        _x: &Morphism<Self>,
        _targets: &[Morphism<Self>],
    ) -> Option<Morphism<Self>> {
        None
    }

    /// Classifies `f` by exhaustive cancellation over the universe objects.
    ///
    /// Instances with non-enumerable hom-sets override this with proven
    /// structural rules.
    fn classify(
        &self,
        f: &Morphism<Self>,
        universe: &[Self::Object],
        limits: &Limits,
    ) -> Result<MorphismClass> {
        classify_by_enumeration(self, f, universe, limits)
    }
}

/// Exhaustive mono/epi/split/embedding classification.
///
/// Monomorphy checks `g;f = h;f ⇒ g = h` over every hom-set `Hom(x, dom f)`
/// with `x` drawn from the universe; epimorphy is dual. Split variants
/// search `Hom(cod f, dom f)` for one-sided inverses. Embeddings search the
/// universe for an inclusion mutually divisible with `f`.
pub fn classify_by_enumeration<C: Category>(
    cat: &C,
    f: &Morphism<C>,
    universe: &[C::Object],
    limits: &Limits,
) -> Result<MorphismClass> {
    cat.check_morphism(f)?;
    let mut visited: u64 = 0;

    let mut mono = true;
    'mono: for x in universe {
        let incoming = cat.hom(x, &f.dom, limits)?;
        visited = visited.saturating_add((incoming.len() as u64).pow(2));
        limits.check_universe(visited)?;
        for g in &incoming {
            for h in &incoming {
                if g != h && cat.compose(g, f)? == cat.compose(h, f)? {
                    mono = false;
                    break 'mono;
                }
            }
        }
    }

    let mut epi = true;
    'epi: for x in universe {
        let outgoing = cat.hom(&f.cod, x, limits)?;
        visited = visited.saturating_add((outgoing.len() as u64).pow(2));
        limits.check_universe(visited)?;
        for g in &outgoing {
            for h in &outgoing {
                if g != h && cat.compose(f, g)? == cat.compose(f, h)? {
                    epi = false;
                    break 'epi;
                }
            }
        }
    }

    let backwards = cat.hom(&f.cod, &f.dom, limits)?;
    visited = visited.saturating_add(backwards.len() as u64);
    limits.check_universe(visited)?;
    let id_dom = cat.identity(&f.dom);
    let id_cod = cat.identity(&f.cod);
    let mut split_mono = false;
    let mut split_epi = false;
    for g in &backwards {
        if cat.compose(f, g)? == id_dom {
            split_mono = true;
        }
        if cat.compose(g, f)? == id_cod {
            split_epi = true;
        }
    }

    let is_inclusion = cat.is_inclusion(f);
    let mut embedding = is_inclusion;
    if mono && !embedding {
        'emb: for x in universe {
            let j = match cat.subobject_leq(x, &f.cod) {
                Ok(Some(j)) => j,
                Ok(None) => continue,
                Err(Error::SubobjectsUnsupported(_)) => break 'emb,
                Err(e) => return Err(e),
            };
            // f ≼ j: f factors through the inclusion.
            let into = cat.hom(&f.dom, x, limits)?;
            visited = visited.saturating_add(into.len() as u64);
            limits.check_universe(visited)?;
            let f_through_j = into.iter().any(|h| {
                cat.compose(h, &j).map_or(false, |c| c == *f)
            });
            if !f_through_j {
                continue;
            }
            // j ≼ f: the inclusion factors back through f.
            let back = cat.hom(x, &f.dom, limits)?;
            visited = visited.saturating_add(back.len() as u64);
            limits.check_universe(visited)?;
            let j_through_f = back.iter().any(|h| {
                cat.compose(h, f).map_or(false, |c| c == j)
            });
            if j_through_f {
                embedding = true;
                break 'emb;
            }
        }
    }

    Ok(MorphismClass {
        mono,
        epi,
        split_mono,
        split_epi,
        embedding,
        is_inclusion,
    })
}

/// A finite fragment of an instance over which exhaustive checks quantify.
pub struct Universe<'a, C: Category> {
    pub cat: &'a C,
    pub objects: Vec<C::Object>,
    pub limits: Limits,
}

impl<'a, C: Category> Universe<'a, C> {
    pub fn new(cat: &'a C, objects: Vec<C::Object>) -> Self {
        Universe {
            cat,
            objects,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn classify(&self, f: &Morphism<C>) -> Result<MorphismClass> {
        self.cat.classify(f, &self.objects, &self.limits)
    }

    /// True iff `a` has exactly one morphism to and from every universe
    /// object.
    pub fn is_zero_object(&self, a: &C::Object) -> Result<bool> {
        for x in &self.objects {
            if self.cat.hom(a, x, &self.limits)?.len() != 1 {
                return Ok(false);
            }
            if self.cat.hom(x, a, &self.limits)?.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All morphisms between universe objects, in canonical order.
    pub fn all_morphisms(&self) -> Result<Vec<Morphism<C>>> {
        let mut out = Vec::new();
        for a in &self.objects {
            for b in &self.objects {
                out.extend(self.cat.hom(a, b, &self.limits)?);
            }
        }
        Ok(out)
    }

    pub fn has_image(&self, f: &Morphism<C>) -> Result<ImageCheck<C>> {
        has_image(self.cat, f, &self.objects, &self.limits)
    }
}

/// Result of verifying the image property of a canonical factorization.
pub struct ImageCheck<C: Category> {
    /// The factorization under test, as produced by [`Category::image`].
    pub factorization: Factorization<C>,
    /// Every canonical (epi-then-inclusion) factorization found in the
    /// universe, as (epi part, inclusion part) pairs.
    pub canonical_factorizations: Vec<(Morphism<C>, Morphism<C>)>,
    /// True iff every canonical factorization factors through the image via
    /// an inclusion.
    pub holds: bool,
    /// True iff the factorization under test is the only canonical
    /// factorization satisfying the image property.
    pub unique: bool,
}

/// Verifies the image property of `f`'s canonical factorization against
/// every canonical factorization of `f` enumerable in the universe, and
/// checks that the property singles out exactly one factorization.
pub fn has_image<C: Category>(
    cat: &C,
    f: &Morphism<C>,
    universe: &[C::Object],
    limits: &Limits,
) -> Result<ImageCheck<C>> {
    let fact = cat.image(f)?;
    let mut canonical: Vec<(Morphism<C>, Morphism<C>)> = Vec::new();
    let mut visited: u64 = 0;
    for m in universe {
        let j = match cat.subobject_leq(m, &f.cod)? {
            Some(j) => j,
            None => continue,
        };
        let epis_onto_m = cat.hom(&f.dom, m, limits)?;
        visited = visited.saturating_add(epis_onto_m.len() as u64);
        limits.check_universe(visited)?;
        for q in epis_onto_m {
            if cat.compose(&q, &j)? != *f {
                continue;
            }
            if cat.classify(&q, universe, limits)?.epi {
                canonical.push((q, j.clone()));
            }
        }
    }

    let factors_through = |x: &Morphism<C>, y: &Morphism<C>| -> Result<bool> {
        // Is there an inclusion j'' with y = x ; j''?
        match cat.subobject_leq(&x.cod, &y.cod)? {
            Some(j2) => Ok(cat.compose(x, &j2)? == *y),
            None => Ok(false),
        }
    };

    let mut holds = true;
    for (y, _) in &canonical {
        if !factors_through(&fact.epi_part, y)? {
            holds = false;
            break;
        }
    }

    let mut unique = holds;
    if holds {
        for (y, jy) in &canonical {
            let mut satisfies = true;
            for (z, _) in &canonical {
                if !factors_through(y, z)? {
                    satisfies = false;
                    break;
                }
            }
            if satisfies && !(y == &fact.epi_part && jy == &fact.inclusion_part) {
                unique = false;
                break;
            }
        }
    }

    Ok(ImageCheck {
        factorization: fact,
        canonical_factorizations: canonical,
        holds,
        unique,
    })
}

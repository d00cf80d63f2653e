//! Chain bundles and their category.
//!
//! A chain bundle is a finite descending sequence
//! `M_L -S_L-> ... -> M_1 -S_1-> M_0` where each `S_i` is a *set* of
//! morphisms `M_i -> M_{i-1}`. Bundles over an instance with a zero object
//! end at the zero object with `S_1 = {zero}`; instances without one (the
//! augmented simplex category) designate a base object instead. Bundles are
//! finite-support truncations: padding with zero levels does not change a
//! bundle, and binary operations zero-pad the shorter argument.
//!
//! A bundle morphism carries levelwise vertex maps `f_i` together with a
//! total assignment `σ_i : S_i -> T_i` per level; validity is the commuting
//! of every square `x ; f_{i-1} = f_i ; σ_i(x)`. The assignment is a
//! *witness*, not identity: two bundle morphisms are equal when their
//! endpoints and vertex maps agree. (Image restrictions can collide — in
//! the cyclic factorization example all of `S_3` restricts to the zero
//! morphism — so no assignment-sensitive equality could make
//! `m = m⁰ ; J` hold exactly.)
//!
//! Internally levels are stored ascending (`objects[0]` is the base); the
//! `*_display` constructors accept the descending order used in diagrams.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::category::{Category, Morphism, ProductData};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::limits::{Limits, Tally};
use crate::report::Report;

/// One level's morphism set: either the full hom-set or an explicit list.
pub enum LevelSet<C: Category> {
    All,
    Listed(Vec<Morphism<C>>),
}

impl<C: Category> LevelSet<C> {
    fn normalized(self) -> Self {
        match self {
            LevelSet::All => LevelSet::All,
            LevelSet::Listed(mut v) => {
                v.sort();
                v.dedup();
                LevelSet::Listed(v)
            }
        }
    }
}

impl<C: Category> Clone for LevelSet<C> {
    fn clone(&self) -> Self {
        match self {
            LevelSet::All => LevelSet::All,
            LevelSet::Listed(v) => LevelSet::Listed(v.clone()),
        }
    }
}

impl<C: Category> PartialEq for LevelSet<C> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (LevelSet::All, LevelSet::All) => true,
            (LevelSet::Listed(a), LevelSet::Listed(b)) => a == b,
            _ => false,
        }
    }
}

impl<C: Category> Eq for LevelSet<C> {}

impl<C: Category> PartialOrd for LevelSet<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for LevelSet<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (LevelSet::All, LevelSet::All) => std::cmp::Ordering::Equal,
            (LevelSet::All, LevelSet::Listed(_)) => std::cmp::Ordering::Less,
            (LevelSet::Listed(_), LevelSet::All) => std::cmp::Ordering::Greater,
            (LevelSet::Listed(a), LevelSet::Listed(b)) => a.cmp(b),
        }
    }
}

impl<C: Category> Hash for LevelSet<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            LevelSet::All => 0u8.hash(state),
            LevelSet::Listed(v) => {
                1u8.hash(state);
                v.hash(state);
            }
        }
    }
}

impl<C: Category> fmt::Debug for LevelSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSet::All => write!(f, "ALL"),
            LevelSet::Listed(v) => f.debug_list().entries(v.iter()).finish(),
        }
    }
}

pub struct ChainBundle<C: Category> {
    /// `objects[i]` is `M_i`; `objects[0]` is the base.
    objects: Vec<C::Object>,
    /// `sets[k]` is `S_{k+1}`, morphisms `M_{k+1} -> M_k`.
    sets: Vec<LevelSet<C>>,
}

impl<C: Category> Clone for ChainBundle<C> {
    fn clone(&self) -> Self {
        ChainBundle {
            objects: self.objects.clone(),
            sets: self.sets.clone(),
        }
    }
}

impl<C: Category> PartialEq for ChainBundle<C> {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.sets == other.sets
    }
}

impl<C: Category> Eq for ChainBundle<C> {}

impl<C: Category> PartialOrd for ChainBundle<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for ChainBundle<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.objects, &self.sets).cmp(&(&other.objects, &other.sets))
    }
}

impl<C: Category> Hash for ChainBundle<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.objects.hash(state);
        self.sets.hash(state);
    }
}

fn fmt_bundle<C: Category>(b: &ChainBundle<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in (1..=b.len()).rev() {
        write!(f, "{} -", b.object(i))?;
        match b.level_set(i) {
            LevelSet::All => write!(f, "ALL")?,
            LevelSet::Listed(v) => write!(f, "{}", v.len())?,
        }
        write!(f, "-> ")?;
    }
    write!(f, "{}", b.base())
}

impl<C: Category> fmt::Debug for ChainBundle<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bundle(self, f)
    }
}

impl<C: Category> fmt::Display for ChainBundle<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_bundle(self, f)
    }
}

impl<C: Category> ChainBundle<C> {
    /// Builds a bundle from the display order `M_L, ..., M_1` with sets
    /// `S_L, ..., S_1` (or one fewer, in which case `S_1` is auto-populated
    /// with the full hom-set into the base, the zero morphism for zero-based
    /// bundles). The base defaults to the instance's zero object.
    pub fn from_display(
        cat: &C,
        upper_desc: Vec<C::Object>,
        sets_desc: Vec<LevelSet<C>>,
        base: Option<C::Object>,
    ) -> Result<Self> {
        if upper_desc.is_empty() {
            return Err(Error::BundleStructure(
                "a bundle needs at least one level above the base".into(),
            ));
        }
        let base = match base.or_else(|| cat.zero_object()) {
            Some(b) => b,
            None => {
                return Err(Error::BundleStructure(format!(
                    "instance {} has no zero object; a base must be designated",
                    cat.instance_name()
                )))
            }
        };
        let mut sets_desc = sets_desc;
        if sets_desc.len() + 1 == upper_desc.len() + 1 {
            // S_L..S_1 given explicitly.
        } else if sets_desc.len() + 1 == upper_desc.len() {
            sets_desc.push(LevelSet::All);
        } else {
            return Err(Error::BundleStructure(format!(
                "{} levels need {} or {} morphism sets, got {}",
                upper_desc.len(),
                upper_desc.len(),
                upper_desc.len() - 1,
                sets_desc.len()
            )));
        }
        let mut objects = vec![base];
        objects.extend(upper_desc.into_iter().rev());
        let sets = sets_desc
            .into_iter()
            .rev()
            .map(LevelSet::normalized)
            .collect();
        Ok(ChainBundle { objects, sets })
    }

    /// Number of levels above the base.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `M_i` for `0 <= i <= len()`.
    pub fn object(&self, i: usize) -> &C::Object {
        &self.objects[i]
    }

    pub fn base(&self) -> &C::Object {
        &self.objects[0]
    }

    pub fn top(&self) -> &C::Object {
        self.objects.last().expect("bundles are nonempty")
    }

    /// `S_i` for `1 <= i <= len()`.
    pub fn level_set(&self, i: usize) -> &LevelSet<C> {
        &self.sets[i - 1]
    }

    pub fn objects(&self) -> &[C::Object] {
        &self.objects
    }

    /// `S_i` as an explicit, ordered, duplicate-free list.
    pub fn expanded_set(&self, cat: &C, i: usize, limits: &Limits) -> Result<Vec<Morphism<C>>> {
        match self.level_set(i) {
            LevelSet::Listed(v) => Ok(v.clone()),
            LevelSet::All => cat.hom(self.object(i), self.object(i - 1), limits),
        }
    }

    /// The same bundle with every `ALL` token expanded.
    pub fn expanded(&self, cat: &C, limits: &Limits) -> Result<Self> {
        let mut sets = Vec::with_capacity(self.sets.len());
        for i in 1..=self.len() {
            sets.push(LevelSet::Listed(self.expanded_set(cat, i, limits)?));
        }
        Ok(ChainBundle {
            objects: self.objects.clone(),
            sets,
        })
    }

    /// Appends zero levels on top until the bundle has `to_len` levels.
    pub fn zero_padded(&self, cat: &C, to_len: usize, limits: &Limits) -> Result<Self> {
        let _ = limits;
        let mut out = self.clone();
        while out.len() < to_len {
            let zero = cat.zero_object().ok_or_else(|| {
                Error::ZeroUnsupported(format!(
                    "cannot zero-pad bundles over {}",
                    cat.instance_name()
                ))
            })?;
            let top = out.top().clone();
            let z = cat.zero_morphism(&zero, &top)?;
            out.objects.push(zero);
            out.sets.push(LevelSet::Listed(vec![z]));
        }
        Ok(out)
    }

    /// Drops trailing zero levels (keeping at least one level).
    pub fn trimmed(&self, cat: &C) -> Self {
        let mut out = self.clone();
        while out.len() > 1 && cat.is_zero(out.top()) {
            out.objects.pop();
            out.sets.pop();
        }
        out
    }

    /// Equality up to trailing zero levels and `ALL` expansion.
    pub fn equivalent(&self, other: &Self, cat: &C, limits: &Limits) -> Result<bool> {
        let a = self.trimmed(cat).expanded(cat, limits)?;
        let b = other.trimmed(cat).expanded(cat, limits)?;
        Ok(a == b)
    }

    /// True when every level set is an explicit singleton.
    pub fn is_chain(&self) -> bool {
        self.sets
            .iter()
            .all(|s| matches!(s, LevelSet::Listed(v) if v.len() == 1))
    }
}

/// A chain: a bundle with exactly one morphism per level.
pub struct Chain<C: Category>(ChainBundle<C>);

impl<C: Category> Clone for Chain<C> {
    fn clone(&self) -> Self {
        Chain(self.0.clone())
    }
}

impl<C: Category> PartialEq for Chain<C> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<C: Category> Eq for Chain<C> {}

impl<C: Category> fmt::Debug for Chain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain({:?})", self.0)
    }
}

impl<C: Category> Chain<C> {
    pub fn from_bundle(bundle: ChainBundle<C>) -> Result<Self> {
        if !bundle.is_chain() {
            return Err(Error::BundleStructure(
                "a chain needs exactly one morphism per level".into(),
            ));
        }
        Ok(Chain(bundle))
    }

    pub fn bundle(&self) -> &ChainBundle<C> {
        &self.0
    }

    pub fn into_bundle(self) -> ChainBundle<C> {
        self.0
    }

    /// The unique morphism at level `i`.
    pub fn step(&self, i: usize) -> &Morphism<C> {
        match self.0.level_set(i) {
            LevelSet::Listed(v) => &v[0],
            LevelSet::All => unreachable!("chains store explicit singletons"),
        }
    }
}

/// Total assignment for one level, stored as ordered `(x, σ(x))` pairs.
pub type Assignment<C> = Vec<(Morphism<C>, Morphism<C>)>;

fn assignment_lookup<'a, C: Category>(
    assignment: &'a Assignment<C>,
    x: &Morphism<C>,
) -> Option<&'a Morphism<C>> {
    assignment
        .binary_search_by(|(k, _)| k.cmp(x))
        .ok()
        .map(|idx| &assignment[idx].1)
}

/// How to fill one level's assignment when constructing a bundle morphism.
pub enum AssignmentSpec<C: Category> {
    /// Forced singleton, or the instance's canonical rule.
    Auto,
    /// Explicit `(x, σ(x))` pairs covering all of `S_i`.
    Pairs(Vec<(Morphism<C>, Morphism<C>)>),
}

pub struct BundleMorphism<C: Category> {
    source: ChainBundle<C>,
    target: ChainBundle<C>,
    /// `vertex_maps[i]` is `f_i : M_i -> N_i`, ascending from the base map.
    vertex_maps: Vec<Morphism<C>>,
    /// `assignments[k]` is `σ_{k+1}`, aligned with the source's sets.
    assignments: Vec<Assignment<C>>,
}

impl<C: Category> Clone for BundleMorphism<C> {
    fn clone(&self) -> Self {
        BundleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            vertex_maps: self.vertex_maps.clone(),
            assignments: self.assignments.clone(),
        }
    }
}

impl<C: Category> PartialEq for BundleMorphism<C> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.vertex_maps == other.vertex_maps
    }
}

impl<C: Category> Eq for BundleMorphism<C> {}

impl<C: Category> PartialOrd for BundleMorphism<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for BundleMorphism<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.source, &self.target, &self.vertex_maps).cmp(&(
            &other.source,
            &other.target,
            &other.vertex_maps,
        ))
    }
}

impl<C: Category> fmt::Debug for BundleMorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BundleMorphism {{ {:?} => {:?}, vertex: {:?} }}",
            self.source, self.target, self.vertex_maps
        )
    }
}

impl<C: Category> fmt::Display for BundleMorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = self
            .vertex_maps
            .iter()
            .rev()
            .map(|m| m.payload.to_string())
            .collect();
        write!(f, "({}) : {} => {}", maps.join(", "), self.source, self.target)
    }
}

impl<C: Category> BundleMorphism<C> {
    /// Builds a bundle morphism from display-order vertex maps
    /// `f_L, ..., f_1` (optionally followed by `f_0`; when omitted, the base
    /// map is the unique morphism between the bases) and per-level
    /// assignment specs `σ_L, ..., σ_1` (an empty vector means all `Auto`).
    ///
    /// Source and target are expanded and zero-padded to a common length
    /// first; assignments are filled by the forced-singleton rule or the
    /// instance's canonical rule, and anything else must be explicit.
    pub fn from_display(
        cat: &C,
        source: &ChainBundle<C>,
        target: &ChainBundle<C>,
        mut vertex_desc: Vec<Morphism<C>>,
        mut assign_desc: Vec<AssignmentSpec<C>>,
        limits: &Limits,
    ) -> Result<Self> {
        let len = source.len().max(target.len());
        let source = source.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
        let target = target.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
        if vertex_desc.len() == len {
            // Base map omitted: it is forced when Hom(base, base) is a
            // singleton.
            let between = cat.hom(source.base(), target.base(), limits)?;
            match between.len() {
                1 => vertex_desc.push(between.into_iter().next().expect("len checked")),
                n => {
                    return Err(Error::BundleStructure(format!(
                        "base map is ambiguous ({n} candidates); give f_0 explicitly"
                    )))
                }
            }
        } else if vertex_desc.len() != len + 1 {
            return Err(Error::BundleStructure(format!(
                "expected {} or {} vertex maps, got {}",
                len,
                len + 1,
                vertex_desc.len()
            )));
        }
        vertex_desc.reverse();
        let vertex_maps = vertex_desc;

        if assign_desc.is_empty() {
            assign_desc = (0..len).map(|_| AssignmentSpec::Auto).collect();
        }
        if assign_desc.len() != len {
            return Err(Error::BundleStructure(format!(
                "expected {len} assignment levels, got {}",
                assign_desc.len()
            )));
        }
        assign_desc.reverse();

        let mut assignments = Vec::with_capacity(len);
        for (k, spec) in assign_desc.into_iter().enumerate() {
            let i = k + 1;
            let s_i = source.expanded_set(cat, i, limits)?;
            let t_i = target.expanded_set(cat, i, limits)?;
            let mut pairs: Assignment<C> = match spec {
                AssignmentSpec::Pairs(pairs) => pairs,
                AssignmentSpec::Auto => {
                    let mut pairs = Vec::with_capacity(s_i.len());
                    for x in &s_i {
                        let y = if t_i.len() == 1 {
                            t_i[0].clone()
                        } else if let Some(y) = cat.canonical_assignment(x, &t_i) {
                            y
                        } else {
                            return Err(Error::BundleStructure(format!(
                                "no canonical assignment for {x} at level {i}; give σ_{i} explicitly"
                            )));
                        };
                        pairs.push((x.clone(), y));
                    }
                    pairs
                }
            };
            pairs.sort();
            pairs.dedup();
            // Totality on S_i.
            let keys: Vec<&Morphism<C>> = pairs.iter().map(|(x, _)| x).collect();
            if keys.len() != s_i.len() || !s_i.iter().zip(&keys).all(|(a, b)| &a == b) {
                return Err(Error::BundleStructure(format!(
                    "assignment at level {i} is not a total function on S_{i}"
                )));
            }
            assignments.push(pairs);
        }

        Ok(BundleMorphism {
            source,
            target,
            vertex_maps,
            assignments,
        })
    }

    pub fn source(&self) -> &ChainBundle<C> {
        &self.source
    }

    pub fn target(&self) -> &ChainBundle<C> {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `f_i` for `0 <= i <= len()`.
    pub fn vertex_map(&self, i: usize) -> &Morphism<C> {
        &self.vertex_maps[i]
    }

    pub fn vertex_maps(&self) -> &[Morphism<C>] {
        &self.vertex_maps
    }

    /// `σ_i` for `1 <= i <= len()`.
    pub fn assignment(&self, i: usize) -> &Assignment<C> {
        &self.assignments[i - 1]
    }

    pub fn assign(&self, i: usize, x: &Morphism<C>) -> Option<&Morphism<C>> {
        assignment_lookup(self.assignment(i), x)
    }

    /// True when every vertex map is a zero morphism.
    pub fn is_zero(&self, cat: &C) -> bool {
        self.vertex_maps.iter().all(|f| cat.is_zero_morphism(f))
    }
}

/// The identity bundle morphism.
pub fn identity_bundle_morphism<C: Category>(
    cat: &C,
    b: &ChainBundle<C>,
    limits: &Limits,
) -> Result<BundleMorphism<C>> {
    let b = b.expanded(cat, limits)?;
    let vertex_maps = b.objects().iter().map(|o| cat.identity(o)).collect();
    let mut assignments = Vec::with_capacity(b.len());
    for i in 1..=b.len() {
        let s = b.expanded_set(cat, i, limits)?;
        assignments.push(s.iter().map(|x| (x.clone(), x.clone())).collect());
    }
    Ok(BundleMorphism {
        source: b.clone(),
        target: b,
        vertex_maps,
        assignments,
    })
}

/// The zero bundle morphism `c -> d` (zero vertex maps; assignments pick the
/// zero morphism of `T_i` when present, the first member otherwise — any
/// choice makes the squares commute).
pub fn zero_bundle_morphism<C: Category>(
    cat: &C,
    c: &ChainBundle<C>,
    d: &ChainBundle<C>,
    limits: &Limits,
) -> Result<BundleMorphism<C>> {
    let len = c.len().max(d.len());
    let c = c.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let d = d.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let vertex_maps: Result<Vec<_>> = (0..=len)
        .map(|i| cat.zero_morphism(c.object(i), d.object(i)))
        .collect();
    let mut assignments = Vec::with_capacity(len);
    for i in 1..=len {
        let s = c.expanded_set(cat, i, limits)?;
        let t = d.expanded_set(cat, i, limits)?;
        if t.is_empty() && !s.is_empty() {
            return Err(Error::BundleStructure(format!(
                "no assignment target at level {i}: T_{i} is empty"
            )));
        }
        let pick = t
            .iter()
            .find(|y| cat.is_zero_morphism(y))
            .or_else(|| t.first());
        assignments.push(
            s.iter()
                .map(|x| (x.clone(), pick.expect("nonempty checked").clone()))
                .collect(),
        );
    }
    Ok(BundleMorphism {
        source: c,
        target: d,
        vertex_maps: vertex_maps?,
        assignments,
    })
}

/// Validates hom-membership, base conventions and level alignment.
pub fn validate_bundle<C: Category>(
    cat: &C,
    b: &ChainBundle<C>,
    limits: &Limits,
) -> Result<Report> {
    let mut report = Report::new();
    for (i, o) in b.objects().iter().enumerate() {
        match cat.check_object(o) {
            Ok(()) => report.pass(format!("M_{i}"), format!("object {o} is valid")),
            Err(e) => report.fail(format!("M_{i}"), "object validity", e.to_string()),
        }
    }
    if cat.zero_object().is_some() {
        if cat.is_zero(b.base()) {
            report.pass("M_0", "base is the zero object");
        } else {
            report.fail(
                "M_0",
                "base is the zero object",
                format!("{} is not zero", b.base()),
            );
        }
    } else {
        report.pass(
            "M_0",
            format!("designated base {} (instance has no zero object)", b.base()),
        );
    }
    for i in 1..=b.len() {
        let (dom, cod) = (b.object(i), b.object(i - 1));
        match b.level_set(i) {
            LevelSet::All => {
                let expanded = b.expanded_set(cat, i, limits)?;
                report.pass(
                    format!("S_{i}"),
                    format!("ALL expands to {} morphisms {dom} -> {cod}", expanded.len()),
                );
            }
            LevelSet::Listed(v) => {
                for x in v {
                    let loc = format!("S_{i}: {x}");
                    if x.dom != *dom || x.cod != *cod {
                        report.fail(
                            loc,
                            format!("morphism runs {dom} -> {cod}"),
                            format!("runs {} -> {}", x.dom, x.cod),
                        );
                        continue;
                    }
                    match cat.check_morphism(x) {
                        Ok(()) => report.pass(loc, format!("member of Hom({dom}, {cod})")),
                        Err(e) => {
                            report.fail(loc, format!("member of Hom({dom}, {cod})"), e.to_string())
                        }
                    }
                }
            }
        }
    }
    // Zero-based bundles force S_1 = {zero}.
    if cat.zero_object().is_some() && cat.is_zero(b.base()) {
        let s1 = b.expanded_set(cat, 1, limits)?;
        let zero = cat.zero_morphism(b.object(1), b.base())?;
        if s1 == vec![zero] {
            report.pass("S_1", "forced to the zero morphism");
        } else {
            report.fail(
                "S_1",
                "forced to the zero morphism",
                format!("{} morphisms listed", s1.len()),
            );
        }
    }
    Ok(report)
}

/// Validates a bundle morphism: endpoint bundles, vertex map typing,
/// assignment totality and every commuting square.
pub fn validate_bundle_morphism<C: Category>(
    cat: &C,
    m: &BundleMorphism<C>,
    limits: &Limits,
) -> Result<Report> {
    let mut report = Report::new();
    report.merge(validate_bundle(cat, &m.source, limits)?);
    report.merge(validate_bundle(cat, &m.target, limits)?);
    for i in 0..=m.len() {
        let f = m.vertex_map(i);
        let loc = format!("f_{i}");
        if f.dom != *m.source.object(i) || f.cod != *m.target.object(i) {
            report.fail(
                loc,
                format!("runs {} -> {}", m.source.object(i), m.target.object(i)),
                format!("runs {} -> {}", f.dom, f.cod),
            );
            continue;
        }
        match cat.check_morphism(f) {
            Ok(()) => report.pass(loc, "vertex map is valid"),
            Err(e) => report.fail(loc, "vertex map is valid", e.to_string()),
        }
    }
    for i in 1..=m.len() {
        let s_i = m.source.expanded_set(cat, i, limits)?;
        let t_i = m.target.expanded_set(cat, i, limits)?;
        for x in &s_i {
            let loc = format!("level {i}, {x}");
            let Some(y) = m.assign(i, x) else {
                report.fail(loc, "assignment is total", "no value");
                continue;
            };
            if !t_i.contains(y) {
                report.fail(loc, "assignment lands in T", format!("{y} is not in T_{i}"));
                continue;
            }
            let around = cat.compose(x, m.vertex_map(i - 1))?;
            let through = cat.compose(m.vertex_map(i), y)?;
            if around == through {
                report.pass(loc, "square commutes");
            } else {
                report.fail(
                    loc,
                    "square commutes",
                    format!("x;f_{} = {} but f_{};σ(x) = {}", i - 1, around.payload, i, through.payload),
                );
            }
        }
    }
    Ok(report)
}

/// Diagrammatic composition of bundle morphisms.
pub fn compose_bundle_morphisms<C: Category>(
    cat: &C,
    m1: &BundleMorphism<C>,
    m2: &BundleMorphism<C>,
) -> Result<BundleMorphism<C>> {
    if m1.target != m2.source {
        return Err(Error::NonComposable(
            "bundle morphisms do not share the middle bundle".into(),
        ));
    }
    let vertex_maps: Result<Vec<_>> = m1
        .vertex_maps
        .iter()
        .zip(&m2.vertex_maps)
        .map(|(f, g)| cat.compose(f, g))
        .collect();
    let mut assignments = Vec::with_capacity(m1.len());
    for i in 1..=m1.len() {
        let mut pairs = Vec::new();
        for (x, y) in m1.assignment(i) {
            let z = m2.assign(i, y).ok_or_else(|| {
                Error::NonComposable(format!("assignment of {y} missing at level {i}"))
            })?;
            pairs.push((x.clone(), z.clone()));
        }
        assignments.push(pairs);
    }
    Ok(BundleMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        vertex_maps: vertex_maps?,
        assignments,
    })
}

/// Is `sub` a subbundle of `sup`: levelwise subobjects whose morphism sets
/// are image-restrictions of the supbundle's sets.
pub fn is_subbundle<C: Category>(
    cat: &C,
    sub: &ChainBundle<C>,
    sup: &ChainBundle<C>,
    limits: &Limits,
) -> Result<bool> {
    let len = sub.len().max(sup.len());
    let sub = sub.zero_padded(cat, len, limits)?;
    let sup = sup.zero_padded(cat, len, limits)?;
    for i in 0..=len {
        if cat.subobject_leq(sub.object(i), sup.object(i))?.is_none() {
            return Ok(false);
        }
    }
    for i in 1..=len {
        let sub_set = sub.expanded_set(cat, i, limits)?;
        let sup_set = sup.expanded_set(cat, i, limits)?;
        for x_sub in &sub_set {
            let mut witnessed = false;
            for x in &sup_set {
                if let Some(r) = cat.restrict(x, sub.object(i), sub.object(i - 1), limits)? {
                    if r == *x_sub {
                        witnessed = true;
                        break;
                    }
                }
            }
            if !witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub struct BundleFactorization<C: Category> {
    pub epi_part: BundleMorphism<C>,
    pub inclusion_part: BundleMorphism<C>,
    pub intermediate: ChainBundle<C>,
}

/// Factors `m = m0 ; J` through the levelwise images of its vertex maps.
///
/// The intermediate bundle has objects `Im f_i` and morphism sets the
/// image-restrictions of the assigned target morphisms (the commuting
/// squares force `σ_i(x)` to map `Im f_i` into `Im f_{i-1}`).
pub fn factorize_bundle_morphism<C: Category>(
    cat: &C,
    m: &BundleMorphism<C>,
    limits: &Limits,
) -> Result<BundleFactorization<C>> {
    let len = m.len();
    let facts: Result<Vec<_>> = m.vertex_maps.iter().map(|f| cat.image(f)).collect();
    let facts = facts?;
    let images: Vec<C::Object> = facts.iter().map(|f| f.image.clone()).collect();

    let mut mid_sets = Vec::with_capacity(len);
    let mut epi_assignments = Vec::with_capacity(len);
    let mut incl_assignments = Vec::with_capacity(len);
    for i in 1..=len {
        let mut restricted = Vec::new();
        let mut epi_pairs: Assignment<C> = Vec::new();
        let mut incl_pairs: Assignment<C> = Vec::new();
        for (x, y) in m.assignment(i) {
            let r = cat
                .restrict(y, &images[i], &images[i - 1], limits)?
                .ok_or_else(|| {
                    Error::InvalidMorphism(format!(
                        "{y} does not restrict to the images at level {i}; the squares of {m} do not commute"
                    ))
                })?;
            epi_pairs.push((x.clone(), r.clone()));
            if assignment_lookup(&incl_pairs, &r).is_none() {
                incl_pairs.push((r.clone(), y.clone()));
                incl_pairs.sort();
            }
            restricted.push(r);
        }
        restricted.sort();
        restricted.dedup();
        epi_pairs.sort();
        mid_sets.push(LevelSet::Listed(restricted));
        epi_assignments.push(epi_pairs);
        incl_assignments.push(incl_pairs);
    }

    let intermediate = ChainBundle {
        objects: images.clone(),
        sets: mid_sets,
    };
    let epi_part = BundleMorphism {
        source: m.source.clone(),
        target: intermediate.clone(),
        vertex_maps: facts.iter().map(|f| f.epi_part.clone()).collect(),
        assignments: epi_assignments,
    };
    let inclusion_part = BundleMorphism {
        source: intermediate.clone(),
        target: m.target.clone(),
        vertex_maps: facts.iter().map(|f| f.inclusion_part.clone()).collect(),
        assignments: incl_assignments,
    };
    Ok(BundleFactorization {
        epi_part,
        inclusion_part,
        intermediate,
    })
}

pub struct BundleProduct<C: Category> {
    pub bundle: ChainBundle<C>,
    pub proj_left: BundleMorphism<C>,
    pub proj_right: BundleMorphism<C>,
    /// Object-level product data per level.
    pub level_products: Vec<ProductData<C>>,
    /// `(x_left, x_right, paired)` per set level, in canonical order.
    pub pair_tables: Vec<Vec<(Morphism<C>, Morphism<C>, Morphism<C>)>>,
}

/// Levelwise product bundle with canonical projections.
///
/// Sets are the componentwise pairs `S'_i × S_i`, realized as the pairings
/// `<π₁;x', π₂;x>` into the next product level.
pub fn product_bundles<C: Category>(
    cat: &C,
    c: &ChainBundle<C>,
    d: &ChainBundle<C>,
    limits: &Limits,
) -> Result<BundleProduct<C>> {
    let len = c.len().max(d.len());
    let c = c.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let d = d.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let level_products: Result<Vec<_>> = (0..=len)
        .map(|i| cat.product(c.object(i), d.object(i)))
        .collect();
    let level_products = level_products?;

    let mut sets = Vec::with_capacity(len);
    let mut pair_tables = Vec::with_capacity(len);
    let mut left_assign = Vec::with_capacity(len);
    let mut right_assign = Vec::with_capacity(len);
    for i in 1..=len {
        let s_left = c.expanded_set(cat, i, limits)?;
        let s_right = d.expanded_set(cat, i, limits)?;
        limits.check_explosion((s_left.len() as u64).saturating_mul(s_right.len() as u64))?;
        let here = &level_products[i];
        let below = &level_products[i - 1];
        let mut table = Vec::new();
        let mut members = Vec::new();
        let mut la: Assignment<C> = Vec::new();
        let mut ra: Assignment<C> = Vec::new();
        for xl in &s_left {
            for xr in &s_right {
                let left_leg = cat.compose(&here.proj_left, xl)?;
                let right_leg = cat.compose(&here.proj_right, xr)?;
                let paired = cat.pair(&left_leg, &right_leg, below)?;
                table.push((xl.clone(), xr.clone(), paired.clone()));
                members.push(paired.clone());
                la.push((paired.clone(), xl.clone()));
                ra.push((paired, xr.clone()));
            }
        }
        members.sort();
        members.dedup();
        la.sort();
        ra.sort();
        sets.push(LevelSet::Listed(members));
        pair_tables.push(table);
        left_assign.push(la);
        right_assign.push(ra);
    }

    let bundle = ChainBundle {
        objects: level_products.iter().map(|p| p.object.clone()).collect(),
        sets,
    };
    let proj_left = BundleMorphism {
        source: bundle.clone(),
        target: c.clone(),
        vertex_maps: level_products.iter().map(|p| p.proj_left.clone()).collect(),
        assignments: left_assign,
    };
    let proj_right = BundleMorphism {
        source: bundle.clone(),
        target: d.clone(),
        vertex_maps: level_products.iter().map(|p| p.proj_right.clone()).collect(),
        assignments: right_assign,
    };
    Ok(BundleProduct {
        bundle,
        proj_left,
        proj_right,
        level_products,
        pair_tables,
    })
}

/// The canonical pairing `<F, G> : l -> c × d`.
pub fn pair_bundle_morphisms<C: Category>(
    cat: &C,
    f: &BundleMorphism<C>,
    g: &BundleMorphism<C>,
    prod: &BundleProduct<C>,
) -> Result<BundleMorphism<C>> {
    if f.source != g.source {
        return Err(Error::SourceMismatch(
            "pairing needs bundle morphisms out of the same bundle".into(),
        ));
    }
    let vertex_maps: Result<Vec<_>> = f
        .vertex_maps
        .iter()
        .zip(&g.vertex_maps)
        .zip(&prod.level_products)
        .map(|((fi, gi), p)| cat.pair(fi, gi, p))
        .collect();
    let mut assignments = Vec::with_capacity(f.len());
    for i in 1..=f.len() {
        let mut pairs: Assignment<C> = Vec::new();
        for (k, yl) in f.assignment(i) {
            let yr = g.assign(i, k).ok_or_else(|| {
                Error::SourceMismatch(format!("assignment of {k} missing at level {i}"))
            })?;
            let paired = prod.pair_tables[i - 1]
                .iter()
                .find(|(l, r, _)| l == yl && r == yr)
                .map(|(_, _, p)| p.clone())
                .ok_or_else(|| {
                    Error::SourceMismatch(format!(
                        "({yl}, {yr}) is not a member of the product set at level {i}"
                    ))
                })?;
            pairs.push((k.clone(), paired));
        }
        pairs.sort();
        assignments.push(pairs);
    }
    Ok(BundleMorphism {
        source: f.source.clone(),
        target: prod.bundle.clone(),
        vertex_maps: vertex_maps?,
        assignments,
    })
}

pub struct PairingUniqueness<C: Category> {
    pub canonical: BundleMorphism<C>,
    pub solutions: u64,
    pub candidates: u64,
}

/// Counts every bundle morphism `L : l -> c×d` with `L;π₁ = F` and
/// `L;π₂ = G`; the product law holds exactly when the count is one.
///
/// Vertex candidates per level come from [`Category::pairing_solutions`]
/// (full hom-set enumeration for finite instances, the exact pinned solution
/// set otherwise). A vertex tuple counts as a solution when every source
/// morphism admits a commuting assignment compatible with both triangles.
pub fn verify_pairing_unique<C: Category>(
    cat: &C,
    f: &BundleMorphism<C>,
    g: &BundleMorphism<C>,
    prod: &BundleProduct<C>,
    limits: &Limits,
) -> Result<PairingUniqueness<C>> {
    let canonical = pair_bundle_morphisms(cat, f, g, prod)?;
    let len = f.len();
    let mut tally = Tally::new();

    // Vertex-map candidates per level.
    let mut vertex_candidates: Vec<Vec<Morphism<C>>> = Vec::with_capacity(len + 1);
    for i in 0..=len {
        let sols = cat.pairing_solutions(
            f.vertex_map(i),
            g.vertex_map(i),
            &prod.level_products[i],
            limits,
        )?;
        tally.bump(sols.len() as u64, limits)?;
        vertex_candidates.push(sols);
    }

    let prod_sets: Result<Vec<Vec<Morphism<C>>>> = (1..=len)
        .map(|i| prod.bundle.expanded_set(cat, i, limits))
        .collect();
    let prod_sets = prod_sets?;

    // Walk every vertex tuple; a tuple is a solution when assignments exist.
    let mut solutions: u64 = 0;
    let mut odometer = vec![0usize; len + 1];
    'tuples: loop {
        if vertex_candidates.iter().any(|v| v.is_empty()) {
            break 'tuples;
        }
        let tuple: Vec<&Morphism<C>> = vertex_candidates
            .iter()
            .zip(&odometer)
            .map(|(v, &ix)| &v[ix])
            .collect();
        let mut feasible = true;
        'levels: for i in 1..=len {
            for (k, yl) in f.assignment(i) {
                let yr = g.assign(i, k).expect("validated assignment");
                let mut found = false;
                for y in &prod_sets[i - 1] {
                    tally.bump(1, limits)?;
                    // Triangles at assignment level.
                    let Some(l_of_y) = prod.proj_left.assign(i, y) else {
                        continue;
                    };
                    let Some(r_of_y) = prod.proj_right.assign(i, y) else {
                        continue;
                    };
                    if l_of_y != yl || r_of_y != yr {
                        continue;
                    }
                    // Commuting square for this vertex tuple.
                    let around = cat.compose(k, tuple[i - 1])?;
                    let through = cat.compose(tuple[i], y)?;
                    if around == through {
                        found = true;
                        break;
                    }
                }
                if !found {
                    feasible = false;
                    break 'levels;
                }
            }
        }
        if feasible {
            solutions = solutions.saturating_add(1);
        }

        let mut pos = 0;
        loop {
            if pos > len {
                break 'tuples;
            }
            odometer[pos] += 1;
            if odometer[pos] < vertex_candidates[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }

    Ok(PairingUniqueness {
        canonical,
        solutions,
        candidates: tally.count(),
    })
}

/// Kernel of a bundle morphism: the bundle of levelwise kernels with
/// kernel-restricted morphism sets, and its inclusion into the source.
pub fn kernel_of_bundle_morphism<C: Category>(
    cat: &C,
    f: &BundleMorphism<C>,
    limits: &Limits,
) -> Result<(ChainBundle<C>, BundleMorphism<C>)> {
    let len = f.len();
    let kernels: Result<Vec<_>> = f.vertex_maps.iter().map(|v| cat.kernel(v)).collect();
    let kernels = kernels?;
    let mut sets = Vec::with_capacity(len);
    let mut assignments = Vec::with_capacity(len);
    for i in 1..=len {
        let s = f.source.expanded_set(cat, i, limits)?;
        let mut restricted = Vec::new();
        let mut pairs: Assignment<C> = Vec::new();
        for x in &s {
            let r = cat
                .restrict(x, &kernels[i].object, &kernels[i - 1].object, limits)?
                .ok_or_else(|| {
                    Error::InvalidMorphism(format!(
                        "{x} does not restrict to the kernels at level {i}; check the commuting squares"
                    ))
                })?;
            if assignment_lookup(&pairs, &r).is_none() {
                pairs.push((r.clone(), x.clone()));
                pairs.sort();
            }
            restricted.push(r);
        }
        restricted.sort();
        restricted.dedup();
        sets.push(LevelSet::Listed(restricted));
        assignments.push(pairs);
    }
    let bundle = ChainBundle {
        objects: kernels.iter().map(|k| k.object.clone()).collect(),
        sets,
    };
    let witness = BundleMorphism {
        source: bundle.clone(),
        target: f.source.clone(),
        vertex_maps: kernels.into_iter().map(|k| k.inclusion).collect(),
        assignments,
    };
    Ok((bundle, witness))
}

/// Cokernel of a bundle morphism: levelwise quotients `coker(f_i)` with the
/// induced quotient morphisms, and the projection from the target.
///
/// Every member of the target's sets must descend to the quotients (members
/// assigned by `σ` always do; anything else is checked and reported).
pub fn cokernel_of_bundle_morphism<C: Category>(
    cat: &C,
    f: &BundleMorphism<C>,
    limits: &Limits,
) -> Result<(ChainBundle<C>, BundleMorphism<C>)> {
    let len = f.len();
    let quotients: Result<Vec<_>> = f.vertex_maps.iter().map(|v| cat.cokernel(v)).collect();
    let quotients = quotients?;
    let mut sets = Vec::with_capacity(len);
    let mut assignments = Vec::with_capacity(len);
    for i in 1..=len {
        let t = f.target.expanded_set(cat, i, limits)?;
        let mut induced_set = Vec::new();
        let mut pairs: Assignment<C> = Vec::new();
        for y in &t {
            let wanted = cat.compose(y, &quotients[i - 1].projection)?;
            let candidates = cat.hom(&quotients[i].object, &quotients[i - 1].object, limits)?;
            let mut induced = None;
            for cand in candidates {
                if cat.compose(&quotients[i].projection, &cand)? == wanted {
                    induced = Some(cand);
                    break;
                }
            }
            let induced = induced.ok_or_else(|| {
                Error::CokernelsUnsupported(format!(
                    "{y} does not descend to the quotient at level {i}"
                ))
            })?;
            pairs.push((y.clone(), induced.clone()));
            induced_set.push(induced);
        }
        induced_set.sort();
        induced_set.dedup();
        pairs.sort();
        sets.push(LevelSet::Listed(induced_set));
        assignments.push(pairs);
    }
    let bundle = ChainBundle {
        objects: quotients.iter().map(|q| q.object.clone()).collect(),
        sets,
    };
    let witness = BundleMorphism {
        source: f.target.clone(),
        target: bundle.clone(),
        vertex_maps: quotients.into_iter().map(|q| q.projection).collect(),
        assignments,
    };
    Ok((bundle, witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Every selection of one morphism per level.
    Plain,
    /// Only selections whose consecutive composites are zero.
    Complex,
}

/// Extracts the chains of a bundle: all cartesian selections of one
/// morphism per level, optionally filtered by the `∂∘∂ = 0` condition.
///
/// Selections are produced in lexicographic order with the top level most
/// significant, morphisms ordered as enumerated.
pub fn extract_chains<C: Category>(
    cat: &C,
    b: &ChainBundle<C>,
    mode: ChainMode,
    limits: &Limits,
) -> Result<Vec<Chain<C>>> {
    let b = b.expanded(cat, limits)?;
    let len = b.len();
    let sets: Result<Vec<Vec<Morphism<C>>>> =
        (1..=len).map(|i| b.expanded_set(cat, i, limits)).collect();
    let sets = sets?;
    let mut count: u64 = 1;
    for s in &sets {
        count = count.saturating_mul(s.len() as u64);
        limits.check_explosion(count)?;
    }
    if sets.iter().any(|s| s.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut odometer = vec![0usize; len];
    loop {
        let selection: Vec<&Morphism<C>> = sets
            .iter()
            .zip(&odometer)
            .map(|(s, &ix)| &s[ix])
            .collect();
        let keep = match mode {
            ChainMode::Plain => true,
            ChainMode::Complex => {
                let mut ok = true;
                for i in 1..len {
                    // s_{i+1} : M_{i+1} -> M_i then s_i : M_i -> M_{i-1}.
                    let composite = cat.compose(selection[i], selection[i - 1])?;
                    if !cat.is_zero_morphism(&composite) {
                        ok = false;
                        break;
                    }
                }
                ok
            }
        };
        if keep {
            let chain_sets = selection
                .iter()
                .map(|m| LevelSet::Listed(vec![(*m).clone()]))
                .collect();
            out.push(Chain(ChainBundle {
                objects: b.objects.clone(),
                sets: chain_sets,
            }));
        }
        // Lexicographic with the top level most significant: the lowest
        // level's index advances fastest.
        let mut pos = 0;
        loop {
            if pos == len {
                return Ok(out);
            }
            odometer[pos] += 1;
            if odometer[pos] < sets[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// Applies a functor levelwise to a bundle.
pub fn apply_functor_to_bundle<S, T, F>(
    src: &S,
    tgt: &T,
    functor: &F,
    b: &ChainBundle<S>,
    limits: &Limits,
) -> Result<ChainBundle<T>>
where
    S: Category,
    T: Category,
    F: Functor<S, T>,
{
    let b = b.expanded(src, limits)?;
    let objects: Result<Vec<_>> = b
        .objects()
        .iter()
        .map(|o| functor.map_object(src, tgt, o))
        .collect();
    let mut sets = Vec::with_capacity(b.len());
    for i in 1..=b.len() {
        let s = b.expanded_set(src, i, limits)?;
        let mapped: Result<Vec<_>> = s
            .iter()
            .map(|m| functor.map_morphism(src, tgt, m))
            .collect();
        let mut mapped = mapped?;
        mapped.sort();
        mapped.dedup();
        sets.push(LevelSet::Listed(mapped));
    }
    Ok(ChainBundle {
        objects: objects?,
        sets,
    })
}

/// Applies a functor levelwise to a bundle morphism.
pub fn apply_functor_to_bundle_morphism<S, T, F>(
    src: &S,
    tgt: &T,
    functor: &F,
    m: &BundleMorphism<S>,
    limits: &Limits,
) -> Result<BundleMorphism<T>>
where
    S: Category,
    T: Category,
    F: Functor<S, T>,
{
    let source = apply_functor_to_bundle(src, tgt, functor, &m.source, limits)?;
    let target = apply_functor_to_bundle(src, tgt, functor, &m.target, limits)?;
    let vertex_maps: Result<Vec<_>> = m
        .vertex_maps
        .iter()
        .map(|f| functor.map_morphism(src, tgt, f))
        .collect();
    let mut assignments = Vec::with_capacity(m.len());
    for i in 1..=m.len() {
        let mut pairs: Assignment<T> = Vec::new();
        for (x, y) in m.assignment(i) {
            pairs.push((
                functor.map_morphism(src, tgt, x)?,
                functor.map_morphism(src, tgt, y)?,
            ));
        }
        pairs.sort();
        pairs.dedup();
        assignments.push(pairs);
    }
    Ok(BundleMorphism {
        source,
        target,
        vertex_maps: vertex_maps?,
        assignments,
    })
}

/// Every bundle morphism `from -> to`, by exhaustive search over vertex
/// tuples; each morphism carries the canonical (first-found) commuting
/// assignment as its witness.
pub fn enumerate_bundle_morphisms<C: Category>(
    cat: &C,
    from: &ChainBundle<C>,
    to: &ChainBundle<C>,
    limits: &Limits,
) -> Result<Vec<BundleMorphism<C>>> {
    let len = from.len().max(to.len());
    let from = from.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let to = to.zero_padded(cat, len, limits)?.expanded(cat, limits)?;
    let mut tally = Tally::new();

    let mut vertex_options: Vec<Vec<Morphism<C>>> = Vec::with_capacity(len + 1);
    for i in 0..=len {
        let opts = cat.hom(from.object(i), to.object(i), limits)?;
        tally.bump(opts.len() as u64, limits)?;
        if opts.is_empty() {
            return Ok(Vec::new());
        }
        vertex_options.push(opts);
    }
    let mut combos: u64 = 1;
    for opts in &vertex_options {
        combos = combos.saturating_mul(opts.len() as u64);
        limits.check_universe(combos)?;
    }
    let source_sets: Result<Vec<Vec<Morphism<C>>>> = (1..=len)
        .map(|i| from.expanded_set(cat, i, limits))
        .collect();
    let source_sets = source_sets?;
    let target_sets: Result<Vec<Vec<Morphism<C>>>> =
        (1..=len).map(|i| to.expanded_set(cat, i, limits)).collect();
    let target_sets = target_sets?;

    let mut out = Vec::new();
    let mut odometer = vec![0usize; len + 1];
    'tuples: loop {
        let tuple: Vec<&Morphism<C>> = vertex_options
            .iter()
            .zip(&odometer)
            .map(|(v, &ix)| &v[ix])
            .collect();
        // A vertex tuple is a morphism iff every source morphism has a
        // commuting assignment target; keep the first such witness.
        let mut assignments: Vec<Assignment<C>> = Vec::with_capacity(len);
        let mut feasible = true;
        'levels: for i in 1..=len {
            let mut pairs: Assignment<C> = Vec::new();
            for x in &source_sets[i - 1] {
                let around = cat.compose(x, tuple[i - 1])?;
                let mut witness = None;
                for y in &target_sets[i - 1] {
                    tally.bump(1, limits)?;
                    if cat.compose(tuple[i], y)? == around {
                        witness = Some(y.clone());
                        break;
                    }
                }
                match witness {
                    Some(y) => pairs.push((x.clone(), y)),
                    None => {
                        feasible = false;
                        break 'levels;
                    }
                }
            }
            pairs.sort();
            assignments.push(pairs);
        }
        if feasible {
            out.push(BundleMorphism {
                source: from.clone(),
                target: to.clone(),
                vertex_maps: tuple.iter().map(|m| (*m).clone()).collect(),
                assignments,
            });
        }
        let mut pos = 0;
        loop {
            if pos > len {
                break 'tuples;
            }
            odometer[pos] += 1;
            if odometer[pos] < vertex_options[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Verifies the kernel universal property at desk scale: for every
/// `K' : a' -> c` (over the supplied test sources) with `K' ; F` zero,
/// exactly one `u : a' -> kernel` satisfies `u ; K = K'`.
pub fn verify_kernel_universal_property<C: Category>(
    cat: &C,
    f: &BundleMorphism<C>,
    kernel: &ChainBundle<C>,
    witness: &BundleMorphism<C>,
    test_sources: &[ChainBundle<C>],
    limits: &Limits,
) -> Result<Report> {
    let mut report = Report::new();
    for a_prime in test_sources {
        let candidates = enumerate_bundle_morphisms(cat, a_prime, &f.source, limits)?;
        let into_kernel = enumerate_bundle_morphisms(cat, a_prime, kernel, limits)?;
        for k_prime in &candidates {
            if !compose_bundle_morphisms(cat, k_prime, f)?.is_zero(cat) {
                continue;
            }
            let mut mediating = 0usize;
            for u in &into_kernel {
                if compose_bundle_morphisms(cat, u, witness)? == *k_prime {
                    mediating += 1;
                }
            }
            let loc = format!("{a_prime} via {k_prime}");
            if mediating == 1 {
                report.pass(loc, "unique mediating morphism");
            } else {
                report.fail(
                    loc,
                    "unique mediating morphism",
                    format!("{mediating} candidates"),
                );
            }
        }
    }
    Ok(report)
}

/// The category whose objects are chain bundles over `C` and whose
/// morphisms are bundle morphisms (assignments included as data).
///
/// Used to run the generic verifiers — notably universal arrows — over
/// bundle data. There is deliberately no zero object: because assignments
/// are data, the hom-set out of a zero bundle can have several members.
pub struct BundleCategory<C: Category + Clone> {
    pub base: C,
    pub limits: Limits,
}

/// Payload of a bundle-category morphism.
pub struct BundleData<C: Category> {
    pub vertex_maps: Vec<Morphism<C>>,
    pub assignments: Vec<Assignment<C>>,
}

impl<C: Category> Clone for BundleData<C> {
    fn clone(&self) -> Self {
        BundleData {
            vertex_maps: self.vertex_maps.clone(),
            assignments: self.assignments.clone(),
        }
    }
}

impl<C: Category> PartialEq for BundleData<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_maps == other.vertex_maps
    }
}

impl<C: Category> Eq for BundleData<C> {}

impl<C: Category> PartialOrd for BundleData<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for BundleData<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertex_maps.cmp(&other.vertex_maps)
    }
}

impl<C: Category> Hash for BundleData<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertex_maps.hash(state);
    }
}

impl<C: Category> fmt::Debug for BundleData<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertex_maps)
    }
}

impl<C: Category> fmt::Display for BundleData<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = self
            .vertex_maps
            .iter()
            .rev()
            .map(|m| m.payload.to_string())
            .collect();
        write!(f, "({})", maps.join(", "))
    }
}

impl<C: Category + Clone> BundleCategory<C> {
    pub fn new(base: C, limits: Limits) -> Self {
        BundleCategory { base, limits }
    }

    pub fn to_bundle_morphism(&self, m: &Morphism<Self>) -> BundleMorphism<C> {
        BundleMorphism {
            source: m.dom.clone(),
            target: m.cod.clone(),
            vertex_maps: m.payload.vertex_maps.clone(),
            assignments: m.payload.assignments.clone(),
        }
    }

    pub fn from_bundle_morphism(&self, m: &BundleMorphism<C>) -> Morphism<Self> {
        Morphism::new(
            m.source.clone(),
            m.target.clone(),
            BundleData {
                vertex_maps: m.vertex_maps.clone(),
                assignments: m.assignments.clone(),
            },
        )
    }
}

impl<C: Category + Clone> Category for BundleCategory<C> {
    type Object = ChainBundle<C>;
    type Payload = BundleData<C>;

    fn instance_name(&self) -> &'static str {
        "chain_bundles"
    }

    fn check_object(&self, o: &ChainBundle<C>) -> Result<()> {
        let report = validate_bundle(&self.base, o, &self.limits)?;
        if report.passed() {
            Ok(())
        } else {
            let first = report.failures().next().expect("failed report");
            Err(Error::InvalidObject(format!(
                "{}: {}",
                first.location, first.check
            )))
        }
    }

    fn check_morphism(&self, f: &Morphism<Self>) -> Result<()> {
        let m = self.to_bundle_morphism(f);
        let report = validate_bundle_morphism(&self.base, &m, &self.limits)?;
        if report.passed() {
            Ok(())
        } else {
            let first = report.failures().next().expect("failed report");
            Err(Error::InvalidMorphism(format!(
                "{}: {}",
                first.location, first.check
            )))
        }
    }

    fn identity(&self, o: &ChainBundle<C>) -> Morphism<Self> {
        let id = identity_bundle_morphism(&self.base, o, &self.limits)
            .expect("identity bundle morphism exists for valid bundles");
        self.from_bundle_morphism(&id)
    }

    fn compose(&self, f: &Morphism<Self>, g: &Morphism<Self>) -> Result<Morphism<Self>> {
        let composed = compose_bundle_morphisms(
            &self.base,
            &self.to_bundle_morphism(f),
            &self.to_bundle_morphism(g),
        )?;
        Ok(self.from_bundle_morphism(&composed))
    }

    fn hom(
        &self,
        a: &ChainBundle<C>,
        b: &ChainBundle<C>,
        limits: &Limits,
    ) -> Result<Vec<Morphism<Self>>> {
        let all = enumerate_bundle_morphisms(&self.base, a, b, limits)?;
        Ok(all.iter().map(|m| self.from_bundle_morphism(m)).collect())
    }
}

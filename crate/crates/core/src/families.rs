//! Relation families over a carrier split, their membership predicates and
//! exhaustive enumerators, monotone maps into lower-end lattices, and the
//! hull-spanning partition check.
//!
//! All families live on a [`SplitContext`] `(X, Y[, apex])` and, except for
//! [`FamilyKind::UpperEnd`], are anchored by a relation `Q` on the upper
//! part. When the context carries an apex `y`, the effective anchor is
//! `Q + A_y` (the direct sum with the one-point relation on `y`) on the
//! effective upper part `Y ∪ {y}`; this is how the apex-extended families
//! are spelled throughout.
//!
//! The seven relation families, for `R` on `X ∪ Y`:
//!
//! | kind            | defining predicate                                     |
//! |-----------------|--------------------------------------------------------|
//! | `UpperEnd`      | `Y` is an upper end of `R`                             |
//! | `Convex`        | `R` induces `Q` on `Y` and `Y` is convex in `R`        |
//! | `ConvexUpper`   | `Convex` and `UpperEnd`                                |
//! | `ConvexMax`     | `Convex` and `max Q = max R`                           |
//! | `Induced`       | `R` induces `Q` on `Y` (no convexity)                  |
//! | `InducedMax`    | `Induced` and `max Q = max R`                          |
//! | `HullSpanning`  | `R` induces `Q` on `Y` and the convex hull of `Y` is the whole carrier (which may be any `M ∪ Y`, `M ⊆ X`) |
//!
//! Enumeration is generate-then-filter over the full generator stream — no
//! family-specific shortcuts — so these enumerators stay independent of
//! the bijections they are used to validate.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{all_posets_with, GeneratorConfig, LimitExceeded};
use crate::relation::{ElemSet, Relation, RelationError, SplitContext};

/// Errors from family specs, membership tests and enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("family kind {0:?} requires an anchor relation")]
    MissingAnchor(FamilyKind),
    #[error("not monotone: the image of {a} is not contained in the image of {b}")]
    NotMonotone { a: usize, b: usize },
    #[error("the set {set} assigned to {element} is not a lower end of the base relation")]
    NotALowerEnd { element: usize, set: ElemSet },
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("partition violated: {witness} lies in {count} blocks {blocks:?}")]
    PartitionViolation {
        witness: String,
        count: usize,
        blocks: Vec<String>,
    },
}

/// The relation families, keyed by their defining predicate. See the module
/// docs for the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    UpperEnd,
    Convex,
    ConvexUpper,
    ConvexMax,
    Induced,
    InducedMax,
    HullSpanning,
}

impl FamilyKind {
    pub fn needs_anchor(self) -> bool {
        !matches!(self, FamilyKind::UpperEnd)
    }

    /// The short token used on the command line.
    pub fn token(self) -> &'static str {
        match self {
            FamilyKind::UpperEnd => "u",
            FamilyKind::Convex => "c",
            FamilyKind::ConvexUpper => "m",
            FamilyKind::ConvexMax => "mstar",
            FamilyKind::Induced => "i",
            FamilyKind::InducedMax => "nstar",
            FamilyKind::HullSpanning => "g",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<FamilyKind, String> {
        match s {
            "u" => Ok(FamilyKind::UpperEnd),
            "c" => Ok(FamilyKind::Convex),
            "m" => Ok(FamilyKind::ConvexUpper),
            "mstar" => Ok(FamilyKind::ConvexMax),
            "i" => Ok(FamilyKind::Induced),
            "nstar" => Ok(FamilyKind::InducedMax),
            "g" => Ok(FamilyKind::HullSpanning),
            other => Err(format!(
                "unknown family {other:?} (expected one of u, c, m, mstar, i, nstar, g)"
            )),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A symbolic family descriptor: a kind, a carrier split, and the anchor
/// relation on the split's upper part (absent only for `UpperEnd`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    context: SplitContext,
    anchor: Option<Relation>,
}

impl FamilySpec {
    pub fn new(
        kind: FamilyKind,
        context: SplitContext,
        anchor: Option<Relation>,
    ) -> Result<FamilySpec, FamilyError> {
        match &anchor {
            None if kind.needs_anchor() => return Err(FamilyError::MissingAnchor(kind)),
            Some(q) if q.carrier() != context.upper() => {
                return Err(FamilyError::CarrierMismatch(format!(
                    "anchor carrier {} differs from the context's upper part {}",
                    q.carrier(),
                    context.upper()
                )));
            }
            _ => {}
        }
        Ok(FamilySpec {
            kind,
            context,
            anchor,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn context(&self) -> &SplitContext {
        &self.context
    }

    pub fn anchor(&self) -> Option<&Relation> {
        self.anchor.as_ref()
    }

    /// The anchor extended by the apex point, when the context has one.
    pub fn effective_anchor(&self) -> Option<Relation> {
        let q = self.anchor.as_ref()?;
        match self.context.apex() {
            Some(y) => Some(
                q.direct_sum(&Relation::point(y))
                    .expect("apex is outside the split"),
            ),
            None => Some(*q),
        }
    }

    /// Upper part extended by the apex, when present.
    pub fn effective_upper(&self) -> ElemSet {
        self.context.upper_extended()
    }
}

/// Evaluates the family's defining predicate on `R`.
///
/// For every kind except `HullSpanning` the relation's carrier must be the
/// split's full carrier; hull-spanning members live on any `M ∪ Y` with
/// `M` inside the lower part.
pub fn is_member(r: &Relation, spec: &FamilySpec) -> Result<bool, FamilyError> {
    let upper = spec.effective_upper();
    let full = spec.context().full();
    if spec.kind() == FamilyKind::HullSpanning {
        if !(upper.is_subset(r.carrier()) && r.carrier().is_subset(full)) {
            return Err(FamilyError::CarrierMismatch(format!(
                "carrier {} is not between the upper part {} and the full split {}",
                r.carrier(),
                upper,
                full
            )));
        }
    } else if r.carrier() != full {
        return Err(FamilyError::CarrierMismatch(format!(
            "carrier {} differs from the split's full carrier {}",
            r.carrier(),
            full
        )));
    }

    let anchored =
        |q: &Option<Relation>| *q.as_ref().expect("anchored kinds checked at construction");
    let q = spec.effective_anchor();
    Ok(match spec.kind() {
        FamilyKind::UpperEnd => r.is_upper_end(upper),
        FamilyKind::Convex => r.induced(upper)? == anchored(&q) && r.is_convex(upper)?,
        FamilyKind::ConvexUpper => {
            r.induced(upper)? == anchored(&q) && r.is_convex(upper)? && r.is_upper_end(upper)
        }
        FamilyKind::ConvexMax => {
            r.induced(upper)? == anchored(&q)
                && r.is_convex(upper)?
                && anchored(&q).maximal_points() == r.maximal_points()
        }
        FamilyKind::Induced => r.induced(upper)? == anchored(&q),
        FamilyKind::InducedMax => {
            r.induced(upper)? == anchored(&q) && anchored(&q).maximal_points() == r.maximal_points()
        }
        FamilyKind::HullSpanning => {
            r.induced(upper)? == anchored(&q) && r.convex_hull(upper)? == r.carrier()
        }
    })
}

/// Every member of the family, in the generator's canonical order
/// (duplicate-free by construction).
pub fn enumerate_family(spec: &FamilySpec) -> Result<Vec<Relation>, FamilyError> {
    enumerate_family_with(GeneratorConfig::default(), spec)
}

pub fn enumerate_family_with(
    config: GeneratorConfig,
    spec: &FamilySpec,
) -> Result<Vec<Relation>, FamilyError> {
    config.check(spec.context().full())?;
    let mut out = Vec::new();
    if spec.kind() == FamilyKind::HullSpanning {
        // members live on M ∪ Y for every M inside the lower part
        for m in spec.context().lower().subsets() {
            for r in all_posets_with(config, m | spec.effective_upper())? {
                if is_member(&r, spec)? {
                    out.push(r);
                }
            }
        }
    } else {
        for r in all_posets_with(config, spec.context().full())? {
            if is_member(&r, spec)? {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// A monotone map from an anchor's carrier into the lower-end lattice of a
/// base relation, together with that base. The image sets are lower ends of
/// the base, and anchor pairs `(a,b)` force `image(a) ⊆ image(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonotoneLowerEndMap {
    base: Relation,
    domain: ElemSet,
    images: [ElemSet; crate::relation::MAX_ELEMENTS],
}

impl MonotoneLowerEndMap {
    /// Validates the images against the base (lower ends) and the anchor
    /// (monotonicity).
    pub fn new(
        base: Relation,
        anchor: &Relation,
        images: &[(usize, ElemSet)],
    ) -> Result<MonotoneLowerEndMap, FamilyError> {
        let domain: ElemSet = images.iter().map(|&(y, _)| y).collect();
        if domain != anchor.carrier() || images.len() != anchor.carrier().len() {
            return Err(FamilyError::CarrierMismatch(format!(
                "map domain {domain} differs from the anchor carrier {}",
                anchor.carrier()
            )));
        }
        if !base.carrier().is_disjoint(domain) {
            return Err(FamilyError::CarrierMismatch(format!(
                "base carrier {} overlaps the anchor carrier {domain}",
                base.carrier()
            )));
        }
        let mut table = [ElemSet::EMPTY; crate::relation::MAX_ELEMENTS];
        for &(y, img) in images {
            if !img.is_subset(base.carrier()) || !base.is_lower_end(img) {
                return Err(FamilyError::NotALowerEnd {
                    element: y,
                    set: img,
                });
            }
            table[y] = img;
        }
        for (a, b) in anchor.strict_pairs() {
            if !table[a].is_subset(table[b]) {
                return Err(FamilyError::NotMonotone { a, b });
            }
        }
        Ok(MonotoneLowerEndMap {
            base,
            domain,
            images: table,
        })
    }

    /// The base relation the images are lower ends of.
    pub fn base(&self) -> &Relation {
        &self.base
    }

    pub fn domain(&self) -> ElemSet {
        self.domain
    }

    /// The lower end assigned to `y`.
    pub fn image(&self, y: usize) -> ElemSet {
        debug_assert!(
            self.domain.contains(y),
            "element {y} not in the map's domain"
        );
        self.images[y]
    }

    /// Union of all image sets.
    pub fn image_union(&self) -> ElemSet {
        self.domain
            .iter()
            .fold(ElemSet::EMPTY, |acc, y| acc | self.images[y])
    }

    /// Whether the images cover the whole base carrier, evaluated over the
    /// full domain (apex included when the domain has one).
    pub fn is_starred(&self) -> bool {
        self.image_union() == self.base.carrier()
    }

    /// Checks monotonicity against a (possibly different) anchor.
    pub fn is_monotone_for(&self, anchor: &Relation) -> Result<(), FamilyError> {
        if anchor.carrier() != self.domain {
            return Err(FamilyError::CarrierMismatch(format!(
                "map domain {} differs from the anchor carrier {}",
                self.domain,
                anchor.carrier()
            )));
        }
        for (a, b) in anchor.strict_pairs() {
            if !self.images[a].is_subset(self.images[b]) {
                return Err(FamilyError::NotMonotone { a, b });
            }
        }
        Ok(())
    }
}

/// Enumerates every monotone lower-end map for the anchor over every base
/// relation on `lower`; with `starred`, keeps only maps whose images cover
/// the whole base carrier.
pub fn enumerate_monotone_maps(
    anchor: &Relation,
    lower: ElemSet,
    starred: bool,
) -> Result<Vec<MonotoneLowerEndMap>, FamilyError> {
    enumerate_monotone_maps_with(GeneratorConfig::default(), anchor, lower, starred)
}

pub fn enumerate_monotone_maps_with(
    config: GeneratorConfig,
    anchor: &Relation,
    lower: ElemSet,
    starred: bool,
) -> Result<Vec<MonotoneLowerEndMap>, FamilyError> {
    if !lower.is_disjoint(anchor.carrier()) {
        return Err(FamilyError::CarrierMismatch(format!(
            "base carrier {lower} overlaps the anchor carrier {}",
            anchor.carrier()
        )));
    }
    config.check(lower | anchor.carrier())?;
    let ys: Vec<usize> = anchor.carrier().iter().collect();
    let strict = anchor.strict_pairs();
    let mut out = Vec::new();
    for base in all_posets_with(config, lower)? {
        let ends = base.lower_ends();
        // odometer over end indices, first domain element most significant
        let mut idx = vec![0usize; ys.len()];
        loop {
            let mut table = [ElemSet::EMPTY; crate::relation::MAX_ELEMENTS];
            for (pos, &y) in ys.iter().enumerate() {
                table[y] = ends[idx[pos]];
            }
            let monotone = strict.iter().all(|&(a, b)| table[a].is_subset(table[b]));
            if monotone {
                let union = ys.iter().fold(ElemSet::EMPTY, |acc, &y| acc | table[y]);
                if !starred || union == base.carrier() {
                    out.push(MonotoneLowerEndMap {
                        base,
                        domain: anchor.carrier(),
                        images: table,
                    });
                }
            }
            // advance
            let mut pos = ys.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < ends.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if ys.is_empty() || (pos == 0 && idx[0] == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Enumerates the hull-spanning extensions of the anchor: relations `G` on
/// `M ∪ c(Q)` for `M ⊆ lower` that induce the anchor on its carrier and
/// whose whole carrier is the convex hull of the anchor's carrier. These
/// index the blocks of [`verify_partition`].
pub fn enumerate_hull_spanning(
    anchor: &Relation,
    lower: ElemSet,
) -> Result<Vec<Relation>, FamilyError> {
    enumerate_hull_spanning_with(GeneratorConfig::default(), anchor, lower)
}

pub fn enumerate_hull_spanning_with(
    config: GeneratorConfig,
    anchor: &Relation,
    lower: ElemSet,
) -> Result<Vec<Relation>, FamilyError> {
    let ctx = SplitContext::new(lower, anchor.carrier())?;
    let spec = FamilySpec::new(FamilyKind::HullSpanning, ctx, Some(*anchor))?;
    enumerate_family_with(config, &spec)
}

/// Which partition system to verify: the convex blocks of the induced
/// family, or the max-pinned convex blocks of the max-pinned induced
/// family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PartitionSystem {
    Convex,
    ConvexMax,
}

impl PartitionSystem {
    fn whole_kind(self) -> FamilyKind {
        match self {
            PartitionSystem::Convex => FamilyKind::Induced,
            PartitionSystem::ConvexMax => FamilyKind::InducedMax,
        }
    }

    fn block_kind(self) -> FamilyKind {
        match self {
            PartitionSystem::Convex => FamilyKind::Convex,
            PartitionSystem::ConvexMax => FamilyKind::ConvexMax,
        }
    }
}

/// One block of a verified partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionBlock {
    /// The hull-spanning anchor of the block, in id text form so failures
    /// are reproducible from logs.
    pub anchor: String,
    pub size: usize,
}

/// A verified partition: every member of the whole family fell into
/// exactly one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub system: PartitionSystem,
    pub blocks: Vec<PartitionBlock>,
    pub total: usize,
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "partition ({:?}): {} members in {} blocks",
            self.system,
            self.total,
            self.blocks.len()
        )?;
        for b in &self.blocks {
            writeln!(f, "  {}  size {}", b.anchor, b.size)?;
        }
        Ok(())
    }
}

/// Checks that the block families indexed by the hull-spanning extensions
/// of the anchor are pairwise disjoint and cover the whole family on
/// `(lower, c(anchor))`, returning the per-block sizes.
pub fn verify_partition(
    anchor: &Relation,
    lower: ElemSet,
    system: PartitionSystem,
) -> Result<PartitionReport, FamilyError> {
    verify_partition_with(GeneratorConfig::default(), anchor, lower, system)
}

pub fn verify_partition_with(
    config: GeneratorConfig,
    anchor: &Relation,
    lower: ElemSet,
    system: PartitionSystem,
) -> Result<PartitionReport, FamilyError> {
    let upper = anchor.carrier();
    let full = lower | upper;
    let whole_spec = FamilySpec::new(
        system.whole_kind(),
        SplitContext::new(lower, upper)?,
        Some(*anchor),
    )?;
    let whole = enumerate_family_with(config, &whole_spec)?;

    let gs = enumerate_hull_spanning_with(config, anchor, lower)?;
    let block_specs: Vec<FamilySpec> = gs
        .iter()
        .map(|g| {
            FamilySpec::new(
                system.block_kind(),
                SplitContext::new(full - g.carrier(), g.carrier())?,
                Some(*g),
            )
        })
        .collect::<Result<_, _>>()?;

    let mut sizes = vec![0usize; gs.len()];
    for r in &whole {
        let mut hits = Vec::new();
        for (i, spec) in block_specs.iter().enumerate() {
            if is_member(r, spec)? {
                hits.push(i);
            }
        }
        if hits.len() != 1 {
            return Err(FamilyError::PartitionViolation {
                witness: r.to_string(),
                count: hits.len(),
                blocks: hits.iter().map(|&i| gs[i].to_string()).collect(),
            });
        }
        sizes[hits[0]] += 1;
    }
    Ok(PartitionReport {
        system,
        blocks: gs
            .iter()
            .zip(sizes)
            .map(|(g, size)| PartitionBlock {
                anchor: g.to_string(),
                size,
            })
            .collect(),
        total: whole.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::naive_all_posets;

    fn ctx(lower: ElemSet, upper: ElemSet) -> SplitContext {
        SplitContext::new(lower, upper).unwrap()
    }

    fn spec(kind: FamilyKind, context: SplitContext, anchor: Relation) -> FamilySpec {
        FamilySpec::new(kind, context, Some(anchor)).unwrap()
    }

    #[test]
    fn antichain_stacked_below_is_convex_and_max_pinned() {
        // an antichain below G is a member of both the convex and the
        // max-pinned convex family of G
        let g = Relation::chain_on(ElemSet::from_bits(0b110));
        let a = Relation::antichain_on(ElemSet::singleton(0));
        let r = a.ordinal_sum(&g).unwrap();
        let context = ctx(ElemSet::singleton(0), g.carrier());
        assert!(is_member(&r, &spec(FamilyKind::Convex, context, g)).unwrap());
        assert!(is_member(&r, &spec(FamilyKind::ConvexMax, context, g)).unwrap());
    }

    #[test]
    fn induced_vs_convex_vs_max_pinned() {
        // anchor A_2 on {z1,z2}, one extra point x with z1 < x: the anchor
        // is induced and convex, but x is a maximal point outside it
        let z = ElemSet::first(2);
        let x = ElemSet::singleton(2);
        let r = Relation::validate(z | x, &[(0, 2)]).unwrap();
        let a2 = Relation::antichain(2);
        let context = ctx(x, z);
        assert!(is_member(&r, &spec(FamilyKind::Induced, context, a2)).unwrap());
        assert!(is_member(&r, &spec(FamilyKind::Convex, context, a2)).unwrap());
        assert!(!is_member(&r, &spec(FamilyKind::InducedMax, context, a2)).unwrap());
        assert!(!is_member(&r, &spec(FamilyKind::UpperEnd, context, a2)).unwrap());
    }

    #[test]
    fn max_pinned_members_are_upper_end_members() {
        // convexity plus pinned maxima forces the upper end property
        let z = ElemSet::first(2);
        let x = ElemSet::from_bits(0b1100);
        for q in crate::enumeration::all_posets(z).unwrap() {
            let context = ctx(x, z);
            let mstar = spec(FamilyKind::ConvexMax, context, q);
            let m = spec(FamilyKind::ConvexUpper, context, q);
            let c = spec(FamilyKind::Convex, context, q);
            let u = FamilySpec::new(FamilyKind::UpperEnd, context, None).unwrap();
            for r in crate::enumeration::all_posets(z | x).unwrap() {
                if is_member(&r, &mstar).unwrap() {
                    assert!(is_member(&r, &m).unwrap());
                }
                if is_member(&r, &m).unwrap() {
                    assert!(is_member(&r, &c).unwrap());
                    assert!(is_member(&r, &u).unwrap());
                }
            }
        }
    }

    #[test]
    fn induced_antichain_family_matches_the_naive_oracle() {
        // induced-A_2 family on one extra point: 7 members
        let z = ElemSet::first(2);
        let x = ElemSet::singleton(2);
        let family = enumerate_family(&spec(
            FamilyKind::Induced,
            ctx(x, z),
            Relation::antichain(2),
        ))
        .unwrap();
        assert_eq!(family.len(), 7);
        // cross-check against the naive oracle with a raw pair test
        let oracle: Vec<Relation> = naive_all_posets(z | x)
            .unwrap()
            .into_iter()
            .filter(|r| !r.contains(0, 1) && !r.contains(1, 0))
            .collect();
        assert_eq!(oracle.len(), 7);
        let a: std::collections::HashSet<Relation> = family.into_iter().collect();
        let b: std::collections::HashSet<Relation> = oracle.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn induced_dual_chain_family_has_six_members() {
        let z = ElemSet::first(2);
        let x = ElemSet::singleton(2);
        let q = Relation::chain_on(z).dual();
        let family = enumerate_family(&spec(FamilyKind::Induced, ctx(x, z), q)).unwrap();
        assert_eq!(family.len(), 6);
        // same naive cross-check as for the antichain anchor: the induced
        // part must be exactly the downward pair
        let oracle = naive_all_posets(z | x)
            .unwrap()
            .into_iter()
            .filter(|r| r.contains(1, 0) && !r.contains(0, 1))
            .count();
        assert_eq!(oracle, 6);
    }

    #[test]
    fn hull_spanning_for_an_antichain_is_the_anchor_alone() {
        let a2 = Relation::antichain(2);
        for xsize in 0..=2 {
            let lower: ElemSet = (2..2 + xsize).collect();
            let gs = enumerate_hull_spanning(&a2, lower).unwrap();
            assert_eq!(gs, vec![a2]);
        }
    }

    #[test]
    fn hull_spanning_on_empty_lower_is_the_anchor() {
        for q in crate::enumeration::all_posets(ElemSet::first(2)).unwrap() {
            assert_eq!(
                enumerate_hull_spanning(&q, ElemSet::EMPTY).unwrap(),
                vec![q]
            );
        }
    }

    #[test]
    fn non_antichain_anchors_span_hulls_through_every_lower_subset() {
        // squeezing M between a strict pair of the anchor is always a
        // hull-spanning extension
        let q = Relation::chain_on(ElemSet::first(2));
        let lower = ElemSet::from_bits(0b1100);
        let gs = enumerate_hull_spanning(&q, lower).unwrap();
        for m in lower.subsets() {
            let squeezed: Vec<(usize, usize)> =
                m.iter().flat_map(|mid| [(0, mid), (mid, 1)]).collect();
            let g = q.with_pairs_closed(m, &squeezed).unwrap();
            assert!(gs.contains(&g), "missing {g}");
            let gspec = FamilySpec::new(FamilyKind::HullSpanning, ctx(lower, q.carrier()), Some(q))
                .unwrap();
            assert!(is_member(&g, &gspec).unwrap());
        }
    }

    #[test]
    fn monotone_maps_over_a_point_anchor() {
        // anchor A_1 on {1}, base carrier {0}: one base, lower ends {} and
        // {0}, so two maps of which one is starred
        let anchor = Relation::point(1);
        let lower = ElemSet::singleton(0);
        let all = enumerate_monotone_maps(&anchor, lower, false).unwrap();
        assert_eq!(all.len(), 2);
        let starred = enumerate_monotone_maps(&anchor, lower, true).unwrap();
        assert_eq!(starred.len(), 1);
        assert_eq!(starred[0].image(1), lower);
    }

    #[test]
    fn empty_base_gives_exactly_one_map() {
        for q in crate::enumeration::all_posets(ElemSet::first(2)).unwrap() {
            let maps = enumerate_monotone_maps(&q, ElemSet::EMPTY, false).unwrap();
            assert_eq!(maps.len(), 1);
            assert!(maps[0].is_starred());
        }
    }

    #[test]
    fn starred_map_count_matches_the_max_pinned_family() {
        let z = ElemSet::first(2);
        let x = ElemSet::singleton(2);
        for q in crate::enumeration::all_posets(z).unwrap() {
            let starred = enumerate_monotone_maps(&q, x, true).unwrap();
            let mstar = enumerate_family(&spec(FamilyKind::ConvexMax, ctx(x, z), q)).unwrap();
            assert_eq!(starred.len(), mstar.len(), "anchor {q}");
        }
    }

    #[test]
    fn map_validation_errors() {
        let base = Relation::chain(2);
        let anchor = Relation::chain_on(ElemSet::from_bits(0b1100));
        // {1} is not a lower end of the two-chain 0<1
        let err = MonotoneLowerEndMap::new(
            base,
            &anchor,
            &[(2, ElemSet::singleton(1)), (3, ElemSet::EMPTY)],
        )
        .unwrap_err();
        assert!(matches!(err, FamilyError::NotALowerEnd { element: 2, .. }));
        // images must grow along anchor pairs
        let err = MonotoneLowerEndMap::new(
            base,
            &anchor,
            &[(2, ElemSet::singleton(0)), (3, ElemSet::EMPTY)],
        )
        .unwrap_err();
        assert_eq!(err, FamilyError::NotMonotone { a: 2, b: 3 });
    }

    #[test]
    fn member_carrier_is_checked() {
        let z = ElemSet::first(2);
        let s = spec(
            FamilyKind::Induced,
            ctx(ElemSet::singleton(2), z),
            Relation::antichain(2),
        );
        let err = is_member(&Relation::antichain(2), &s).unwrap_err();
        assert!(matches!(err, FamilyError::CarrierMismatch(_)));
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let z = ElemSet::first(4);
        let lower: ElemSet = (4..8).collect();
        let s = spec(
            FamilyKind::Induced,
            ctx(lower, z),
            Relation::antichain_on(z),
        );
        assert!(matches!(enumerate_family(&s), Err(FamilyError::Limit(_))));
    }

    #[test]
    fn partition_of_an_antichain_anchor_is_one_block() {
        let a2 = Relation::antichain(2);
        let lower = ElemSet::singleton(2);
        let report = verify_partition(&a2, lower, PartitionSystem::Convex).unwrap();
        assert_eq!(report.blocks.len(), 1);
        assert_eq!(report.blocks[0].size, report.total);
        assert_eq!(report.total, 7);
    }

    #[test]
    fn partition_of_the_chain_anchor_splits_five_plus_one() {
        let q = Relation::chain_on(ElemSet::first(2));
        let lower = ElemSet::singleton(2);
        let report = verify_partition(&q, lower, PartitionSystem::Convex).unwrap();
        let sizes: Vec<usize> = report.blocks.iter().map(|b| b.size).collect();
        assert_eq!(sizes, vec![5, 1]);
        assert_eq!(report.total, 6);
    }

    #[test]
    fn members_sit_in_the_block_of_their_hull() {
        // every induced-family member belongs to the block anchored at the
        // relation it induces on the hull of the anchor carrier
        let q = Relation::chain_on(ElemSet::first(2));
        let lower = ElemSet::from_bits(0b1100);
        let whole =
            enumerate_family(&spec(FamilyKind::Induced, ctx(lower, q.carrier()), q)).unwrap();
        for r in whole {
            let hull = r.convex_hull(q.carrier()).unwrap();
            let g = r.induced(hull).unwrap();
            let block = spec(FamilyKind::Convex, ctx(r.carrier() - hull, hull), g);
            assert!(is_member(&r, &block).unwrap());
        }
    }
}

//! The constructive maps between the relation families, and an independent
//! count comparison for the equinumerosity they prove.
//!
//! * [`phi`] turns a monotone lower-end map `f` into the relation
//!   `S(f) ∪ Q ∪ ⋃_y (f(y) × {y})`; its inverse reads the images back off
//!   the down-sets, `y ↦ (↓y) \ Y`. Starred maps (images covering the
//!   whole base) correspond exactly to the max-pinned members.
//! * [`tau`] dualizes both halves of a split and complements the cross
//!   pairs: `(R|_X)^d ∪ ((X×Y) \ R) ∪ (R|_Y)^d`. It is a self-inverse
//!   bijection on the upper-end family and carries a convex anchored part
//!   `Q` to `Q^d`.
//! * [`sigma`] drops the apex from a max-pinned convex member, splits the
//!   rest at the apex's down-set and applies `tau`; [`sigma_inverse`]
//!   rebuilds the apex from the up-set of the anchored part. Together they
//!   biject the apex-extended max-pinned family with the convex family of
//!   the dual anchor.
//! * [`theorem_count_check`] enumerates both sides of the count equality
//!   with no bijection involved and reports labeled counts, role-preserving
//!   isomorphism classes and the per-block decomposition.
//!
//! Every map validates its precondition in full before computing; in debug
//! builds the postcondition (family membership of the image) is re-checked
//! as well.

use thiserror::Error;

use crate::enumeration::{class_counts, BlockCount, CountReport, GeneratorConfig, LimitExceeded};
use crate::families::{
    enumerate_family_with, enumerate_hull_spanning_with, is_member, FamilyError, FamilyKind,
    FamilySpec, MonotoneLowerEndMap,
};
use crate::relation::{ElemSet, Relation, RelationError, SplitContext, MAX_ELEMENTS};

/// Errors from the bijections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    /// The input relation fails the map's family precondition; the message
    /// names a witness.
    #[error("not in the required family: {0}")]
    NotInFamily(String),
    /// The input map is not monotone for the given anchor.
    #[error("not monotone: the image of {a} is not contained in the image of {b}")]
    NotMonotone { a: usize, b: usize },
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Builds the relation `S(f) ∪ Q ∪ ⋃_{y} (f(y) × {y})` from a monotone
/// lower-end map. The image is always a member of the anchored
/// convex-upper family; it lands in the max-pinned family iff `f` is
/// starred.
pub fn phi(f: &MonotoneLowerEndMap, anchor: &Relation) -> Result<Relation, BijectionError> {
    match f.is_monotone_for(anchor) {
        Ok(()) => {}
        Err(FamilyError::NotMonotone { a, b }) => return Err(BijectionError::NotMonotone { a, b }),
        Err(e) => return Err(e.into()),
    }
    let base = f.base();
    let mut r = base.direct_sum(anchor)?;
    let mut up = [0u16; MAX_ELEMENTS];
    for i in r.carrier().iter() {
        up[i] = r.up_of(i).bits();
    }
    for y in anchor.carrier().iter() {
        for x in f.image(y).iter() {
            up[x] |= ElemSet::singleton(y).bits();
        }
    }
    r = Relation::from_up(r.carrier(), up);
    debug_assert!(
        {
            let ctx = SplitContext::new(base.carrier(), anchor.carrier())?;
            let spec = FamilySpec::new(FamilyKind::ConvexUpper, ctx, Some(*anchor))?;
            is_member(&r, &spec)?
        },
        "phi image left the convex-upper family"
    );
    Ok(r)
}

/// Reads the monotone lower-end map back out of a convex-upper member:
/// base `R|_X` and images `y ↦ (↓y) \ Y`. Inverse to [`phi`] on both
/// sides.
pub fn phi_inverse(
    r: &Relation,
    ctx: &SplitContext,
) -> Result<MonotoneLowerEndMap, BijectionError> {
    let (x, y) = (ctx.lower(), ctx.upper());
    require_carrier(r, x | y)?;
    require_upper_end(r, y)?;
    let base = r.induced(x)?;
    let anchor = r.induced(y)?;
    let images: Vec<(usize, ElemSet)> = y.iter().map(|yy| (yy, r.down_of(yy) - y)).collect();
    Ok(MonotoneLowerEndMap::new(base, &anchor, &images)?)
}

/// Dualizes both halves of the split and complements the cross pairs:
/// `(R|_X)^d ∪ ((X×Y) \ R) ∪ (R|_Y)^d`. A self-inverse bijection on the
/// family of relations with upper end `Y`; if some `Z ⊆ Y` is convex with
/// induced part `Q`, the image has `Z` convex with induced part `Q^d`.
pub fn tau(r: &Relation, ctx: &SplitContext) -> Result<Relation, BijectionError> {
    let (x, y) = (ctx.lower(), ctx.upper());
    require_carrier(r, x | y)?;
    require_upper_end(r, y)?;
    let mut up = [0u16; MAX_ELEMENTS];
    for a in x.iter() {
        // transposed inside X, complemented across
        up[a] = ((r.down_of(a) & x) | (y - r.up_of(a))).bits();
    }
    for b in y.iter() {
        up[b] = (r.down_of(b) & y).bits();
    }
    let t = Relation::from_up(r.carrier(), up);
    debug_assert!(t.is_upper_end(y));
    Ok(t)
}

/// Drops the apex from a member of the apex-extended max-pinned convex
/// family and applies [`tau`] at the split `(W ∩ ↓apex, W \ ↓apex)` of the
/// remaining carrier `W`. The image is a member of the convex family of
/// the dual anchor on `(X, Z)`, and the apex's carrier is gone entirely.
pub fn sigma(r: &Relation, ctx: &SplitContext) -> Result<Relation, BijectionError> {
    let apex = require_apex(ctx)?;
    let (x, z) = (ctx.lower(), ctx.upper());
    let zy = ctx.upper_extended();
    require_carrier(r, ctx.full())?;
    // the apex must sit isolated inside the induced upper part
    if !(r.up_of(apex) & zy).without(apex).is_empty() {
        return Err(BijectionError::NotInFamily(format!(
            "apex {apex} lies below part of the anchor carrier {z}"
        )));
    }
    if z.iter().any(|zz| r.up_of(zz).contains(apex)) {
        return Err(BijectionError::NotInFamily(format!(
            "apex {apex} lies above part of the anchor carrier {z}"
        )));
    }
    require_convex(r, zy)?;
    let anchor_max = r.induced(z)?.maximal_points().with(apex);
    if r.maximal_points() != anchor_max {
        return Err(BijectionError::NotInFamily(format!(
            "maximal points {} differ from the anchor-plus-apex maxima {}",
            r.maximal_points(),
            anchor_max
        )));
    }

    let w = x | z;
    let below_apex = r.down_set(ElemSet::singleton(apex))?;
    let inner = SplitContext::new(w & below_apex, w - below_apex)?;
    let image = tau(&r.induced(w)?, &inner)?;
    debug_assert!(
        {
            let spec = FamilySpec::new(
                FamilyKind::Convex,
                SplitContext::new(x, z)?,
                Some(r.induced(z)?.dual()),
            )?;
            is_member(&image, &spec)?
        },
        "sigma image left the dual convex family"
    );
    Ok(image)
}

/// The explicit inverse of [`sigma`]: split the convex member at the
/// up-set `Y = ↑Z`, apply [`tau`], and put the apex back above
/// `X' = X \ Y`.
pub fn sigma_inverse(r: &Relation, ctx: &SplitContext) -> Result<Relation, BijectionError> {
    let apex = require_apex(ctx)?;
    let (x, z) = (ctx.lower(), ctx.upper());
    require_carrier(r, x | z)?;
    require_convex(r, z)?;

    let above = r.up_set(z)?;
    let spine = SplitContext::new((x | z) - above, above)?;
    let t = tau(r, &spine)?;
    let mut up = [0u16; MAX_ELEMENTS];
    for i in t.carrier().iter() {
        up[i] = t.up_of(i).bits();
    }
    up[apex] = ElemSet::singleton(apex).bits();
    for xx in (x - above).iter() {
        up[xx] |= ElemSet::singleton(apex).bits();
    }
    let image = Relation::from_up(t.carrier().with(apex), up);
    debug_assert!(
        {
            let spec = FamilySpec::new(FamilyKind::ConvexMax, *ctx, Some(r.induced(z)?.dual()))?;
            is_member(&image, &spec)?
        },
        "sigma_inverse image left the apex-extended max-pinned family"
    );
    Ok(image)
}

/// Enumerates both sides of the count equality independently — the
/// apex-extended max-pinned induced family of the anchor against the
/// induced family of the dual anchor — and reports labeled counts,
/// role-preserving isomorphism classes, and the per-block decomposition
/// along the hull-spanning extensions. No bijection is involved anywhere.
pub fn theorem_count_check(
    anchor: &Relation,
    lower: ElemSet,
    apex: usize,
) -> Result<CountReport, BijectionError> {
    theorem_count_check_with(GeneratorConfig::default(), anchor, lower, apex)
}

pub fn theorem_count_check_with(
    config: GeneratorConfig,
    anchor: &Relation,
    lower: ElemSet,
    apex: usize,
) -> Result<CountReport, BijectionError> {
    let z = anchor.carrier();
    let lhs_ctx = SplitContext::with_apex(lower, z, apex)?;
    let rhs_ctx = SplitContext::new(lower, z)?;
    config.check(lhs_ctx.full())?;
    debug_assert!(
        (lower | z).max_id().is_none_or(|m| m < apex),
        "the apex id is largest by convention"
    );

    let lhs_spec = FamilySpec::new(FamilyKind::InducedMax, lhs_ctx, Some(*anchor))?;
    let lhs_members = enumerate_family_with(config, &lhs_spec)?;
    let rhs_spec = FamilySpec::new(FamilyKind::Induced, rhs_ctx, Some(anchor.dual()))?;
    let rhs_members = enumerate_family_with(config, &rhs_spec)?;

    let lhs_classes = class_counts(&lhs_members, &[z, lower, ElemSet::singleton(apex)]);
    let rhs_classes = class_counts(&rhs_members, &[z, lower]);

    let gs = enumerate_hull_spanning_with(config, anchor, lower)?;
    let mut blocks = Vec::with_capacity(gs.len());
    for g in &gs {
        let block_lower = lower - g.carrier();
        let lhs_block = FamilySpec::new(
            FamilyKind::ConvexMax,
            SplitContext::with_apex(block_lower, g.carrier(), apex)?,
            Some(*g),
        )?;
        let rhs_block = FamilySpec::new(
            FamilyKind::Convex,
            SplitContext::new(block_lower, g.carrier())?,
            Some(g.dual()),
        )?;
        let mut lhs = 0;
        for r in &lhs_members {
            if is_member(r, &lhs_block)? {
                lhs += 1;
            }
        }
        let mut rhs = 0;
        for r in &rhs_members {
            if is_member(r, &rhs_block)? {
                rhs += 1;
            }
        }
        blocks.push(BlockCount {
            anchor: g.to_string(),
            lhs,
            rhs,
        });
    }

    Ok(CountReport::new(
        lhs_members.len(),
        rhs_members.len(),
        lhs_classes,
        rhs_classes,
        blocks,
    ))
}

fn require_apex(ctx: &SplitContext) -> Result<usize, BijectionError> {
    ctx.apex()
        .ok_or_else(|| BijectionError::NotInFamily("the split context has no apex".into()))
}

fn require_carrier(r: &Relation, expected: ElemSet) -> Result<(), BijectionError> {
    if r.carrier() != expected {
        return Err(BijectionError::NotInFamily(format!(
            "carrier {} differs from the split carrier {expected}",
            r.carrier()
        )));
    }
    Ok(())
}

fn require_upper_end(r: &Relation, y: ElemSet) -> Result<(), BijectionError> {
    for a in y.iter() {
        if let Some(b) = (r.up_of(a) - y).min_id() {
            return Err(BijectionError::NotInFamily(format!(
                "upper part {y} is not an upper end: ({a},{b}) leaves it"
            )));
        }
    }
    Ok(())
}

fn require_convex(r: &Relation, m: ElemSet) -> Result<(), BijectionError> {
    let hull = r.convex_hull(m)?;
    if let Some(between) = (hull - m).min_id() {
        return Err(BijectionError::NotInFamily(format!(
            "{m} is not convex: {between} lies between two of its members"
        )));
    }
    Ok(())
}

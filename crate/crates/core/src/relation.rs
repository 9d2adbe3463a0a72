//! Finite partial order relations on small carriers.
//!
//! A [`Relation`] is a reflexive, antisymmetric, transitive set of ordered
//! pairs over a carrier of at most [`MAX_ELEMENTS`] elements. Elements are
//! plain ids; element sets are bitmask [`ElemSet`]s; the relation itself is
//! one up-set mask per element. Everything here is a pure function over
//! immutable `Copy` values, so the primitives below cost a handful of word
//! operations each and the enumeration layer can churn through millions of
//! relations without allocating.
//!
//! The diagonal is stored explicitly and equality is carrier plus pair-set
//! equality. Labels are not part of this module: element identity is the id,
//! display names live in [`crate::text::Labels`].

use std::fmt;

use thiserror::Error;

/// Hard cap on element ids: every id lives in `0..MAX_ELEMENTS`.
pub const MAX_ELEMENTS: usize = 16;

/// Errors raised by relation construction and the primitive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RelationError {
    /// Two distinct elements lie on a cycle.
    #[error("antisymmetry violated: {a} and {b} lie on a cycle")]
    AntisymmetryViolation { a: usize, b: usize },
    /// A composite pair is missing from input that must already be closed.
    #[error(
        "not transitively closed: ({a},{b}) and ({b},{c}) are present but ({a},{c}) is missing"
    )]
    NotTransitivelyClosed { a: usize, b: usize, c: usize },
    /// An element outside the carrier was referenced.
    #[error("element {id} is not in the carrier")]
    ForeignElement { id: usize },
    /// Two carriers that must be disjoint overlap.
    #[error("carriers overlap on {overlap}")]
    OverlappingCarriers { overlap: ElemSet },
}

/// A set of element ids packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet(u16);

impl ElemSet {
    /// The empty set.
    pub const EMPTY: ElemSet = ElemSet(0);

    /// `{id}`.
    pub fn singleton(id: usize) -> ElemSet {
        assert!(id < MAX_ELEMENTS, "element id {id} out of range");
        ElemSet(1 << id)
    }

    /// `{0, 1, .., n-1}`.
    pub fn first(n: usize) -> ElemSet {
        assert!(n <= MAX_ELEMENTS, "carrier size {n} out of range");
        if n == MAX_ELEMENTS {
            ElemSet(u16::MAX)
        } else {
            ElemSet((1u16 << n) - 1)
        }
    }

    pub fn from_bits(bits: u16) -> ElemSet {
        ElemSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, id: usize) -> bool {
        id < MAX_ELEMENTS && self.0 & (1 << id) != 0
    }

    pub fn with(self, id: usize) -> ElemSet {
        self | ElemSet::singleton(id)
    }

    pub fn without(self, id: usize) -> ElemSet {
        self - ElemSet::singleton(id)
    }

    pub fn insert(&mut self, id: usize) {
        *self = self.with(id);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_id(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_id(self) -> Option<usize> {
        (self.0 != 0).then(|| 15 - self.0.leading_zeros() as usize)
    }

    /// Ids in ascending order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    /// Every subset in ascending mask order, from the empty set up to the
    /// set itself.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl std::ops::BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> ElemSet {
        let mut s = ElemSet::EMPTY;
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for id in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over the ids of an [`ElemSet`], ascending.
#[derive(Clone)]
pub struct Elems(u16);

impl Iterator for Elems {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(id)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elems {}

/// Iterator over all subsets of an [`ElemSet`], ascending by mask value.
#[derive(Clone)]
pub struct Subsets {
    mask: u16,
    next: Option<u16>,
}

impl Iterator for Subsets {
    type Item = ElemSet;
    fn next(&mut self) -> Option<ElemSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in ascending order
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(ElemSet(cur))
    }
}

/// A partial order relation on a finite carrier.
///
/// `up[i]` holds the full up-set of element `i` (including `i` itself) and is
/// zero for ids outside the carrier, so derived equality, ordering and
/// hashing all agree with pair-set equality.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    carrier: ElemSet,
    up: [u16; MAX_ELEMENTS],
}

impl Relation {
    /// Builds a relation from its carrier and its strict (non-reflexive)
    /// pairs, adding the diagonal.
    ///
    /// The input must already be transitively closed and free of cycles;
    /// nothing is closed silently. Closure is [`Relation::transitive_hull`]'s
    /// job, and keeping the two apart means a construction bug upstream
    /// surfaces as an error here instead of a wrong relation.
    pub fn validate(
        carrier: ElemSet,
        strict_pairs: &[(usize, usize)],
    ) -> Result<Relation, RelationError> {
        let mut up = [0u16; MAX_ELEMENTS];
        for i in carrier.iter() {
            up[i] = ElemSet::singleton(i).bits();
        }
        for &(a, b) in strict_pairs {
            if !carrier.contains(a) {
                return Err(RelationError::ForeignElement { id: a });
            }
            if !carrier.contains(b) {
                return Err(RelationError::ForeignElement { id: b });
            }
            if a != b {
                up[a] |= ElemSet::singleton(b).bits();
            }
        }
        let r = Relation { carrier, up };
        r.check_antisymmetric()?;
        r.check_closed()?;
        Ok(r)
    }

    /// The relation with empty carrier.
    pub fn empty() -> Relation {
        Relation {
            carrier: ElemSet::EMPTY,
            up: [0; MAX_ELEMENTS],
        }
    }

    /// The antichain on the given carrier (the diagonal only).
    pub fn antichain_on(carrier: ElemSet) -> Relation {
        let mut up = [0u16; MAX_ELEMENTS];
        for i in carrier.iter() {
            up[i] = ElemSet::singleton(i).bits();
        }
        Relation { carrier, up }
    }

    /// The antichain on `{0, .., n-1}`.
    pub fn antichain(n: usize) -> Relation {
        Relation::antichain_on(ElemSet::first(n))
    }

    /// The single-element relation on `{id}`.
    pub fn point(id: usize) -> Relation {
        Relation::antichain_on(ElemSet::singleton(id))
    }

    /// The chain on the given carrier, ordered by ascending id.
    pub fn chain_on(carrier: ElemSet) -> Relation {
        let mut up = [0u16; MAX_ELEMENTS];
        let mut above = carrier;
        for i in carrier.iter() {
            up[i] = above.bits();
            above = above.without(i);
        }
        Relation { carrier, up }
    }

    /// The chain on `{0 < 1 < .. < n-1}`.
    pub fn chain(n: usize) -> Relation {
        Relation::chain_on(ElemSet::first(n))
    }

    /// Two minimal points 0, 1 below one maximal point 2.
    pub fn lambda() -> Relation {
        Relation::validate(ElemSet::first(3), &[(0, 2), (1, 2)]).expect("fixed shape")
    }

    /// One minimal point 0 below two maximal points 1, 2.
    pub fn vee() -> Relation {
        Relation::validate(ElemSet::first(3), &[(0, 1), (0, 2)]).expect("fixed shape")
    }

    /// Internal constructor for rows known to satisfy the invariants.
    pub(crate) fn from_up(carrier: ElemSet, up: [u16; MAX_ELEMENTS]) -> Relation {
        let r = Relation { carrier, up };
        debug_assert!(r.is_well_formed(), "malformed relation: {r}");
        r
    }

    /// Extends the relation by a fresh element `k` with the given strict
    /// down-set and up-set. Caller guarantees `below` is a lower end,
    /// `above` an upper end, the two are disjoint and `below × above ⊆ R`,
    /// which is exactly what keeps the result closed.
    pub(crate) fn with_inserted(&self, k: usize, below: ElemSet, above: ElemSet) -> Relation {
        debug_assert!(!self.carrier.contains(k));
        let mut up = self.up;
        for x in below.iter() {
            up[x] |= ElemSet::singleton(k).bits();
        }
        up[k] = (above | ElemSet::singleton(k)).bits();
        Relation::from_up(self.carrier.with(k), up)
    }

    fn is_well_formed(&self) -> bool {
        for i in 0..MAX_ELEMENTS {
            if !self.carrier.contains(i) {
                if self.up[i] != 0 {
                    return false;
                }
                continue;
            }
            let row = ElemSet::from_bits(self.up[i]);
            if !row.contains(i) || !row.is_subset(self.carrier) {
                return false;
            }
        }
        self.check_antisymmetric().is_ok() && self.check_closed().is_ok()
    }

    fn check_antisymmetric(&self) -> Result<(), RelationError> {
        for a in self.carrier.iter() {
            for b in self.up_of(a).without(a).iter() {
                if self.up_of(b).contains(a) {
                    return Err(RelationError::AntisymmetryViolation {
                        a: a.min(b),
                        b: a.max(b),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_closed(&self) -> Result<(), RelationError> {
        for a in self.carrier.iter() {
            for b in self.up_of(a).without(a).iter() {
                if let Some(c) = (self.up_of(b) - self.up_of(a)).min_id() {
                    return Err(RelationError::NotTransitivelyClosed { a, b, c });
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> ElemSet {
        self.carrier
    }

    /// Number of carrier elements.
    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// Whether `(a,b)` is a pair of the relation, i.e. `a ≤ b`.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.carrier.contains(a)
            && self.carrier.contains(b)
            && ElemSet::from_bits(self.up[a]).contains(b)
    }

    /// The up-set `↑x` of a single carrier element (includes `x`).
    pub fn up_of(&self, id: usize) -> ElemSet {
        debug_assert!(self.carrier.contains(id), "element {id} not in carrier");
        ElemSet::from_bits(self.up[id])
    }

    /// The down-set `↓x` (includes `x`).
    pub fn down_of(&self, id: usize) -> ElemSet {
        debug_assert!(self.carrier.contains(id), "element {id} not in carrier");
        let mut d = ElemSet::EMPTY;
        for b in self.carrier.iter() {
            if ElemSet::from_bits(self.up[b]).contains(id) {
                d.insert(b);
            }
        }
        d
    }

    /// All strict pairs `(a,b)` with `a < b` in the relation, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in self.carrier.iter() {
            for b in self.up_of(a).without(a).iter() {
                v.push((a, b));
            }
        }
        v
    }

    fn require_subset(&self, m: ElemSet) -> Result<(), RelationError> {
        match (m - self.carrier).min_id() {
            Some(id) => Err(RelationError::ForeignElement { id }),
            None => Ok(()),
        }
    }

    /// The induced relation `R ∩ (M × M)` with carrier `M`.
    pub fn induced(&self, m: ElemSet) -> Result<Relation, RelationError> {
        self.require_subset(m)?;
        let mut up = [0u16; MAX_ELEMENTS];
        for i in m.iter() {
            up[i] = (self.up_of(i) & m).bits();
        }
        Ok(Relation { carrier: m, up })
    }

    /// The dual relation: all pairs reversed.
    pub fn dual(&self) -> Relation {
        let mut up = [0u16; MAX_ELEMENTS];
        for i in self.carrier.iter() {
            up[i] = self.down_of(i).bits();
        }
        Relation {
            carrier: self.carrier,
            up,
        }
    }

    /// Disjoint union of two relations, no cross pairs.
    pub fn direct_sum(&self, other: &Relation) -> Result<Relation, RelationError> {
        let overlap = self.carrier & other.carrier;
        if !overlap.is_empty() {
            return Err(RelationError::OverlappingCarriers { overlap });
        }
        let mut up = self.up;
        for i in other.carrier.iter() {
            up[i] = other.up[i];
        }
        Ok(Relation {
            carrier: self.carrier | other.carrier,
            up,
        })
    }

    /// Direct sum plus every pair from `self`'s carrier into `other`'s:
    /// `other` stacked on top of `self`.
    pub fn ordinal_sum(&self, other: &Relation) -> Result<Relation, RelationError> {
        let mut r = self.direct_sum(other)?;
        for i in self.carrier.iter() {
            r.up[i] |= other.carrier.bits();
        }
        Ok(r)
    }

    /// `↓M`: everything below some element of `M` (including `M`).
    pub fn down_set(&self, m: ElemSet) -> Result<ElemSet, RelationError> {
        self.require_subset(m)?;
        Ok(self.down_mask(m))
    }

    /// `↑M`: everything above some element of `M` (including `M`).
    pub fn up_set(&self, m: ElemSet) -> Result<ElemSet, RelationError> {
        self.require_subset(m)?;
        Ok(self.up_mask(m))
    }

    fn down_mask(&self, m: ElemSet) -> ElemSet {
        let mut d = ElemSet::EMPTY;
        for x in self.carrier.iter() {
            if !(self.up_of(x) & m).is_empty() {
                d.insert(x);
            }
        }
        d
    }

    fn up_mask(&self, m: ElemSet) -> ElemSet {
        let mut u = ElemSet::EMPTY;
        for x in m.iter() {
            u = u | self.up_of(x);
        }
        u
    }

    /// Whether `M` is a lower end: no pair enters `M` from outside,
    /// `R ∩ ((X\M) × M) = ∅`.
    pub fn is_lower_end(&self, m: ElemSet) -> bool {
        debug_assert!(m.is_subset(self.carrier));
        (self.carrier - m)
            .iter()
            .all(|u| (self.up_of(u) & m).is_empty())
    }

    /// Whether `M` is an upper end: no pair leaves `M`,
    /// `R ∩ (M × (X\M)) = ∅`.
    pub fn is_upper_end(&self, m: ElemSet) -> bool {
        debug_assert!(m.is_subset(self.carrier));
        m.iter().all(|u| self.up_of(u).is_subset(m))
    }

    /// Every lower end, in ascending mask order (always contains the empty
    /// set and the full carrier). This family is a lattice under inclusion
    /// and determines the relation uniquely.
    pub fn lower_ends(&self) -> Vec<ElemSet> {
        self.carrier
            .subsets()
            .filter(|&l| self.is_lower_end(l))
            .collect()
    }

    /// Every upper end, in ascending mask order.
    pub fn upper_ends(&self) -> Vec<ElemSet> {
        self.carrier
            .subsets()
            .filter(|&u| self.is_upper_end(u))
            .collect()
    }

    /// Elements whose up-set is just themselves.
    pub fn maximal_points(&self) -> ElemSet {
        self.carrier
            .iter()
            .filter(|&x| self.up_of(x) == ElemSet::singleton(x))
            .collect()
    }

    /// Elements whose down-set is just themselves.
    pub fn minimal_points(&self) -> ElemSet {
        self.carrier
            .iter()
            .filter(|&x| self.down_of(x) == ElemSet::singleton(x))
            .collect()
    }

    /// Maximal points of the relation induced on `M`.
    pub fn maximal_points_of(&self, m: ElemSet) -> Result<ElemSet, RelationError> {
        Ok(self.induced(m)?.maximal_points())
    }

    /// The convex hull `γ(M) = ↑M ∩ ↓M`, the smallest convex superset of
    /// `M`. Satisfies `max M = max γ(M)`, and is an upper end whenever
    /// `max M = max R`.
    pub fn convex_hull(&self, m: ElemSet) -> Result<ElemSet, RelationError> {
        self.require_subset(m)?;
        Ok(self.up_mask(m) & self.down_mask(m))
    }

    /// Whether `M` contains every element lying between two of its members.
    pub fn is_convex(&self, m: ElemSet) -> Result<bool, RelationError> {
        Ok(self.convex_hull(m)? == m)
    }

    /// The smallest transitive relation containing both operands, on the
    /// union carrier (carriers may overlap). Fails if the closure breaks
    /// antisymmetry, which union plus closure does not preserve in general.
    pub fn transitive_hull(&self, other: &Relation) -> Result<Relation, RelationError> {
        let carrier = self.carrier | other.carrier;
        let mut up = self.up;
        for i in other.carrier.iter() {
            up[i] |= other.up[i];
        }
        close_in_place(carrier, &mut up);
        let r = Relation { carrier, up };
        r.check_antisymmetric()?;
        Ok(r)
    }

    /// Transitive closure of the relation together with extra elements and
    /// raw strict pairs; the pair set need not be closed or even acyclic on
    /// its own, but the closure must stay antisymmetric.
    pub fn with_pairs_closed(
        &self,
        extra: ElemSet,
        pairs: &[(usize, usize)],
    ) -> Result<Relation, RelationError> {
        let carrier = self.carrier | extra;
        let mut up = self.up;
        for i in extra.iter() {
            up[i] |= ElemSet::singleton(i).bits();
        }
        for &(a, b) in pairs {
            if !carrier.contains(a) {
                return Err(RelationError::ForeignElement { id: a });
            }
            if !carrier.contains(b) {
                return Err(RelationError::ForeignElement { id: b });
            }
            up[a] |= ElemSet::singleton(b).bits();
        }
        close_in_place(carrier, &mut up);
        let r = Relation { carrier, up };
        r.check_antisymmetric()?;
        Ok(r)
    }
}

fn close_in_place(carrier: ElemSet, up: &mut [u16; MAX_ELEMENTS]) {
    for k in carrier.iter() {
        for i in carrier.iter() {
            if ElemSet::from_bits(up[i]).contains(k) {
                up[i] |= up[k];
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)?;
        let pairs = self.strict_pairs();
        if !pairs.is_empty() {
            write!(f, "; ")?;
            for (i, (a, b)) in pairs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}<{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A carrier split: a lower part, an upper part, and optionally a
/// distinguished apex element lying in neither. Parameterizes the family
/// predicates and the bijections.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SplitContext {
    lower: ElemSet,
    upper: ElemSet,
    apex: Option<usize>,
}

impl SplitContext {
    pub fn new(lower: ElemSet, upper: ElemSet) -> Result<SplitContext, RelationError> {
        let overlap = lower & upper;
        if !overlap.is_empty() {
            return Err(RelationError::OverlappingCarriers { overlap });
        }
        Ok(SplitContext {
            lower,
            upper,
            apex: None,
        })
    }

    pub fn with_apex(
        lower: ElemSet,
        upper: ElemSet,
        apex: usize,
    ) -> Result<SplitContext, RelationError> {
        let mut ctx = SplitContext::new(lower, upper)?;
        if lower.contains(apex) || upper.contains(apex) {
            return Err(RelationError::OverlappingCarriers {
                overlap: ElemSet::singleton(apex),
            });
        }
        ctx.apex = Some(apex);
        Ok(ctx)
    }

    pub fn lower(&self) -> ElemSet {
        self.lower
    }

    pub fn upper(&self) -> ElemSet {
        self.upper
    }

    pub fn apex(&self) -> Option<usize> {
        self.apex
    }

    /// The upper part together with the apex, when present.
    pub fn upper_extended(&self) -> ElemSet {
        match self.apex {
            Some(y) => self.upper.with(y),
            None => self.upper,
        }
    }

    /// Lower part, upper part and apex together.
    pub fn full(&self) -> ElemSet {
        self.lower | self.upper_extended()
    }
}

//! Exhaustive generation of labeled posets on a small carrier, plus the
//! canonical forms and Hasse covers used for isomorphism-class counting and
//! diagram export.
//!
//! The generator works by incremental element insertion: a poset on
//! `k+1` elements is a poset on `k` elements together with a choice of
//! strict down-set `D` (a lower end), strict up-set `U` (an upper end),
//! `D ∩ U = ∅` and `D × U ⊆ R` for the new element. Each labeled poset
//! arises from exactly one such choice, so the stream is duplicate-free by
//! construction. Elements are inserted in id order and the `(D, U)` masks
//! are enumerated in ascending numeric order, which makes the stream
//! reproducible; [`all_posets_inserting`] exposes the insertion order so the
//! count can be cross-checked from an independent direction.
//!
//! [`naive_all_posets`] is the deliberately dumb oracle: filter all
//! `2^(n²-n)` candidate pair sets for validity. It shares no logic with the
//! incremental generator and is capped at 4 elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::relation::{ElemSet, Relation, MAX_ELEMENTS};

/// Default cap on carrier sizes for the exhaustive enumerators: full family
/// enumeration stays under a minute up to here.
pub const DEFAULT_MAX_SIZE: usize = 7;

/// A carrier was larger than the configured enumeration cap. The cap is a
/// hard error, not a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("carrier of {requested} elements exceeds the enumeration cap of {max}")]
pub struct LimitExceeded {
    pub requested: usize,
    pub max: usize,
}

/// Knobs for the exhaustive generator.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorConfig {
    pub max_size: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_size: DEFAULT_MAX_SIZE,
        }
    }
}

impl GeneratorConfig {
    pub(crate) fn check(&self, carrier: ElemSet) -> Result<(), LimitExceeded> {
        if carrier.len() > self.max_size {
            Err(LimitExceeded {
                requested: carrier.len(),
                max: self.max_size,
            })
        } else {
            Ok(())
        }
    }
}

/// Streaming iterator over every labeled poset on a fixed carrier, each
/// exactly once. Posets on all-but-the-last inserted element are
/// materialized eagerly (they are few); the final expansion is lazy.
pub struct AllPosets {
    last: Option<usize>,
    base: std::vec::IntoIter<Relation>,
    buf: std::vec::IntoIter<Relation>,
}

impl Iterator for AllPosets {
    type Item = Relation;

    fn next(&mut self) -> Option<Relation> {
        loop {
            if let Some(r) = self.buf.next() {
                return Some(r);
            }
            let b = self.base.next()?;
            let mut out = Vec::new();
            expand(
                &b,
                self.last.expect("base is empty when carrier is empty"),
                &mut out,
            );
            self.buf = out.into_iter();
        }
    }
}

/// Appends every extension of `r` by the fresh element `k`.
fn expand(r: &Relation, k: usize, out: &mut Vec<Relation>) {
    let lowers = r.lower_ends();
    let uppers = r.upper_ends();
    // column masks: down[j] = everything below j
    let mut down = [ElemSet::EMPTY; MAX_ELEMENTS];
    for j in r.carrier().iter() {
        down[j] = r.down_of(j);
    }
    for &d in &lowers {
        for &u in &uppers {
            if !d.is_disjoint(u) {
                continue;
            }
            if u.iter().all(|ui| d.is_subset(down[ui])) {
                out.push(r.with_inserted(k, d, u));
            }
        }
    }
}

/// All labeled posets on `carrier`, inserted in ascending id order.
pub fn all_posets(carrier: ElemSet) -> Result<AllPosets, LimitExceeded> {
    all_posets_with(GeneratorConfig::default(), carrier)
}

/// Like [`all_posets`] with an explicit size cap.
pub fn all_posets_with(
    config: GeneratorConfig,
    carrier: ElemSet,
) -> Result<AllPosets, LimitExceeded> {
    let order: Vec<usize> = carrier.iter().collect();
    all_posets_inserting_with(config, carrier, &order)
}

/// All labeled posets on `carrier`, inserting elements in the given order.
/// The emitted set is independent of the order; the stream order is not,
/// which is exactly what makes two runs with different orders an
/// independent cross-check of the generator.
pub fn all_posets_inserting(carrier: ElemSet, order: &[usize]) -> Result<AllPosets, LimitExceeded> {
    all_posets_inserting_with(GeneratorConfig::default(), carrier, order)
}

pub fn all_posets_inserting_with(
    config: GeneratorConfig,
    carrier: ElemSet,
    order: &[usize],
) -> Result<AllPosets, LimitExceeded> {
    config.check(carrier)?;
    let as_set: ElemSet = order.iter().copied().collect();
    assert!(
        as_set == carrier && order.len() == carrier.len(),
        "insertion order must be a permutation of the carrier"
    );
    if order.is_empty() {
        return Ok(AllPosets {
            last: None,
            base: Vec::new().into_iter(),
            buf: vec![Relation::empty()].into_iter(),
        });
    }
    let mut level = vec![Relation::empty()];
    for &id in &order[..order.len() - 1] {
        let mut next = Vec::new();
        for r in &level {
            expand(r, id, &mut next);
        }
        level = next;
    }
    Ok(AllPosets {
        last: Some(*order.last().unwrap()),
        base: level.into_iter(),
        buf: Vec::new().into_iter(),
    })
}

/// Carrier cap for the naive oracle.
pub const NAIVE_MAX_SIZE: usize = 4;

/// The filter-everything oracle: every subset of the off-diagonal pairs,
/// kept iff reflexive closure is antisymmetric and transitive. Exponential
/// in `n²`, capped at [`NAIVE_MAX_SIZE`] elements, and intentionally
/// independent of the incremental generator.
pub fn naive_all_posets(carrier: ElemSet) -> Result<Vec<Relation>, LimitExceeded> {
    let n = carrier.len();
    if n > NAIVE_MAX_SIZE {
        return Err(LimitExceeded {
            requested: n,
            max: NAIVE_MAX_SIZE,
        });
    }
    let ids: Vec<usize> = carrier.iter().collect();
    let mut pairs = Vec::new();
    for &a in &ids {
        for &b in &ids {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1u32 << pairs.len()) {
        let mut up = [0u16; MAX_ELEMENTS];
        for &i in &ids {
            up[i] = ElemSet::singleton(i).bits();
        }
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                up[a] |= ElemSet::singleton(b).bits();
            }
        }
        for &a in &ids {
            for b in ElemSet::from_bits(up[a]).without(a).iter() {
                // antisymmetry
                if ElemSet::from_bits(up[b]).contains(a) {
                    continue 'mask;
                }
                // transitivity: everything above b is above a
                if !ElemSet::from_bits(up[b]).is_subset(ElemSet::from_bits(up[a])) {
                    continue 'mask;
                }
            }
        }
        out.push(Relation::from_up(carrier, up));
    }
    Ok(out)
}

/// Minimal byte encoding of the relation over all relabelings that map each
/// role class onto itself. Two relations on the same carrier get equal
/// forms iff a role-preserving isomorphism between them exists.
///
/// `classes` must partition the carrier; empty classes are allowed.
pub fn canonical_form(r: &Relation, classes: &[ElemSet]) -> Vec<u8> {
    let carrier = r.carrier();
    let mut seen = ElemSet::EMPTY;
    for (i, &c) in classes.iter().enumerate() {
        assert!(
            seen.is_disjoint(c),
            "role classes must be pairwise disjoint"
        );
        assert!(c.is_subset(carrier), "role class {i} leaves the carrier");
        seen = seen | c;
    }
    assert!(seen == carrier, "role classes must cover the carrier");

    let class_ids: Vec<Vec<usize>> = classes
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.iter().collect())
        .collect();

    let mut map = [0usize; MAX_ELEMENTS];
    for i in carrier.iter() {
        map[i] = i;
    }
    let mut best: Option<Vec<u8>> = None;
    visit_class_maps(&class_ids, 0, &mut map, &mut |map| {
        let enc = encode_relabeled(r, map);
        match &best {
            Some(b) if *b <= enc => {}
            _ => best = Some(enc),
        }
    });
    best.unwrap_or_else(|| encode_relabeled(r, &map))
}

/// Canonical form under unrestricted relabeling of the carrier.
pub fn canonical_form_free(r: &Relation) -> Vec<u8> {
    canonical_form(r, &[r.carrier()])
}

/// Hex rendering of a canonical form, for reports.
pub fn canonical_form_hex(r: &Relation, classes: &[ElemSet]) -> String {
    let bytes = canonical_form(r, classes);
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn visit_class_maps(
    class_ids: &[Vec<usize>],
    idx: usize,
    map: &mut [usize; MAX_ELEMENTS],
    f: &mut impl FnMut(&[usize; MAX_ELEMENTS]),
) {
    if idx == class_ids.len() {
        f(map);
        return;
    }
    let ids = &class_ids[idx];
    let mut assignment: Vec<usize> = ids.clone();
    permute(&mut assignment, 0, &mut |perm| {
        for (src, dst) in ids.iter().zip(perm.iter()) {
            map[*src] = *dst;
        }
        visit_class_maps(class_ids, idx + 1, map, f);
    });
    for &i in ids {
        map[i] = i;
    }
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn encode_relabeled(r: &Relation, map: &[usize; MAX_ELEMENTS]) -> Vec<u8> {
    let carrier = r.carrier();
    let mut rows = [0u16; MAX_ELEMENTS];
    for i in carrier.iter() {
        let mut row = ElemSet::EMPTY;
        for j in r.up_of(i).iter() {
            row.insert(map[j]);
        }
        rows[map[i]] = row.bits();
    }
    let mut bytes = Vec::with_capacity(2 + 2 * carrier.len());
    bytes.extend_from_slice(&carrier.bits().to_le_bytes());
    for j in carrier.iter() {
        bytes.extend_from_slice(&rows[j].to_le_bytes());
    }
    bytes
}

/// The cover pairs of the relation: strict pairs `(a,b)` with nothing
/// strictly between, i.e. the transitive reduction. Closing the cover and
/// adding the diagonal reconstitutes the relation.
pub fn hasse_cover(r: &Relation) -> Vec<(usize, usize)> {
    let mut down = [ElemSet::EMPTY; MAX_ELEMENTS];
    for j in r.carrier().iter() {
        down[j] = r.down_of(j);
    }
    let mut covers = Vec::new();
    for (a, b) in r.strict_pairs() {
        let between = (r.up_of(a) & down[b]).without(a).without(b);
        if between.is_empty() {
            covers.push((a, b));
        }
    }
    covers
}

/// Multiplicity of one role-preserving isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    /// Hex canonical form of the class representative.
    pub form: String,
    pub count: usize,
}

/// Groups relations by canonical form under the given role classes.
/// Deterministic: entries sorted by form.
pub fn class_counts(rels: &[Relation], classes: &[ElemSet]) -> Vec<ClassCount> {
    let mut groups: BTreeMap<String, usize> = BTreeMap::new();
    for r in rels {
        *groups.entry(canonical_form_hex(r, classes)).or_insert(0) += 1;
    }
    groups
        .into_iter()
        .map(|(form, count)| ClassCount { form, count })
        .collect()
}

/// Per-block labeled counts in the hull-spanning decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    /// The block's hull-spanning anchor relation, in id text form.
    pub anchor: String,
    pub lhs: usize,
    pub rhs: usize,
}

/// Labeled and unlabeled counts for both sides of one count-equality
/// instance, with the per-block decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub lhs_count: usize,
    pub rhs_count: usize,
    pub lhs_classes: Vec<ClassCount>,
    pub rhs_classes: Vec<ClassCount>,
    pub block_table: Vec<BlockCount>,
}

impl CountReport {
    pub fn new(
        lhs_count: usize,
        rhs_count: usize,
        lhs_classes: Vec<ClassCount>,
        rhs_classes: Vec<ClassCount>,
        block_table: Vec<BlockCount>,
    ) -> CountReport {
        let lhs_sum: usize = lhs_classes.iter().map(|c| c.count).sum();
        let rhs_sum: usize = rhs_classes.iter().map(|c| c.count).sum();
        assert_eq!(
            lhs_sum, lhs_count,
            "class multiplicities must sum to the labeled count"
        );
        assert_eq!(
            rhs_sum, rhs_count,
            "class multiplicities must sum to the labeled count"
        );
        let lhs_blocks: usize = block_table.iter().map(|b| b.lhs).sum();
        let rhs_blocks: usize = block_table.iter().map(|b| b.rhs).sum();
        assert_eq!(lhs_blocks, lhs_count, "block counts must sum to the total");
        assert_eq!(rhs_blocks, rhs_count, "block counts must sum to the total");
        CountReport {
            lhs_count,
            rhs_count,
            lhs_classes,
            rhs_classes,
            block_table,
        }
    }

    pub fn equal(&self) -> bool {
        self.lhs_count == self.rhs_count
    }

    /// Class sizes sorted descending, for multiplicity-structure checks.
    pub fn class_multiplicities(classes: &[ClassCount]) -> Vec<usize> {
        let mut m: Vec<usize> = classes.iter().map(|c| c.count).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "left  (apex side): {}", self.lhs_count)?;
        writeln!(f, "right (dual side): {}", self.rhs_count)?;
        writeln!(f, "equal: {}", if self.equal() { "yes" } else { "NO" })?;
        let fmt_mults = |classes: &[ClassCount]| {
            let m = CountReport::class_multiplicities(classes);
            let strs: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            format!("{} classes ({})", classes.len(), strs.join("+"))
        };
        writeln!(f, "left  classes: {}", fmt_mults(&self.lhs_classes))?;
        writeln!(f, "right classes: {}", fmt_mults(&self.rhs_classes))?;
        writeln!(f, "blocks:")?;
        for b in &self.block_table {
            writeln!(f, "  {}  left {}  right {}", b.anchor, b.lhs, b.rhs)?;
        }
        Ok(())
    }
}

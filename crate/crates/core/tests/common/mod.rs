//! Shared helpers and independent oracles for the integration suites.
//!
//! The oracles here recompute properties from first definitions (triple
//! loops over pairs, subset scans) so the library paths they check against
//! are not self-certifying.

#![allow(dead_code)]

use porder::relation::{ElemSet, Relation};
use proptest::prelude::*;

/// Applies an id relabeling, rebuilding through `validate` so the result
/// does not depend on any internal representation shortcut.
pub fn relabel(r: &Relation, map: impl Fn(usize) -> usize) -> Relation {
    let carrier: ElemSet = r.carrier().iter().map(&map).collect();
    let pairs: Vec<(usize, usize)> = r
        .strict_pairs()
        .iter()
        .map(|&(a, b)| (map(a), map(b)))
        .collect();
    Relation::validate(carrier, &pairs).expect("relabeling a valid relation")
}

/// Definitional convexity: no outside point sits between two members.
pub fn oracle_is_convex(r: &Relation, m: ElemSet) -> bool {
    for a in m.iter() {
        for b in m.iter() {
            for x in r.carrier().iter() {
                if !m.contains(x) && r.contains(a, x) && r.contains(x, b) {
                    return false;
                }
            }
        }
    }
    true
}

/// Definitional convex hull: the intersection of every convex superset.
pub fn oracle_convex_hull(r: &Relation, m: ElemSet) -> ElemSet {
    let mut hull = r.carrier();
    for s in r.carrier().subsets() {
        if m.is_subset(s) && oracle_is_convex(r, s) {
            hull = hull & s;
        }
    }
    hull
}

/// Random relation on exactly `{0..n}`: an arbitrary set of upward pairs
/// is acyclic by construction, and closing it transitively yields a valid
/// relation.
pub fn arb_relation_on(n: usize) -> impl Strategy<Value = Relation> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let len = pairs.len();
    proptest::collection::vec(any::<bool>(), len).prop_map(move |sel| {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&sel)
            .filter_map(|(&p, &keep)| keep.then_some(p))
            .collect();
        Relation::antichain(n)
            .with_pairs_closed(ElemSet::EMPTY, &chosen)
            .expect("upward pairs close to a valid relation")
    })
}

/// Random relation on `{0..n}` for some `n ≤ max_n`.
pub fn arb_relation(max_n: usize) -> impl Strategy<Value = Relation> {
    (0..=max_n).prop_flat_map(arb_relation_on)
}

/// A relation together with one of its upper ends.
pub fn arb_relation_with_upper_end(max_n: usize) -> impl Strategy<Value = (Relation, ElemSet)> {
    (arb_relation(max_n), any::<prop::sample::Index>()).prop_map(|(r, idx)| {
        let uppers = r.upper_ends();
        let y = uppers[idx.index(uppers.len())];
        (r, y)
    })
}

/// A permutation of `0..n` as an id map.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

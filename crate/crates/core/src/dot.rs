//! Graphviz export of Hasse diagrams.
//!
//! Edges are the cover pairs only, drawn bottom-to-top. With a
//! [`SplitContext`], nodes are styled by role: anchored (upper) elements as
//! filled black circles, lower elements as plain circles, the apex as a
//! hollow diamond.

use crate::enumeration::hasse_cover;
use crate::relation::{Relation, SplitContext};
use crate::text::Labels;

/// Renders the relation's Hasse diagram as a DOT digraph. Node and edge
/// order is stable (ascending ids).
pub fn to_dot(r: &Relation, labels: &Labels, roles: Option<&SplitContext>) -> String {
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
    for id in r.carrier().iter() {
        let name = escape(labels.label(id));
        let attrs = match roles {
            Some(ctx) if ctx.apex() == Some(id) => "shape=diamond",
            Some(ctx) if ctx.upper().contains(id) => {
                "shape=circle, style=filled, fillcolor=black, fontcolor=white"
            }
            _ => "shape=circle",
        };
        s.push_str(&format!("  \"{name}\" [{attrs}];\n"));
    }
    for (a, b) in hasse_cover(r) {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            escape(labels.label(a)),
            escape(labels.label(b))
        ));
    }
    s.push_str("}\n");
    s
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::ElemSet;

    #[test]
    fn chain_has_two_cover_edges() {
        let labels = Labels::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let dot = to_dot(&Relation::chain(3), &labels, None);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("\"a\" -> \"b\""));
        assert!(dot.contains("\"b\" -> \"c\""));
        assert!(!dot.contains("\"a\" -> \"c\""));
    }

    #[test]
    fn antichain_has_nodes_but_no_edges() {
        let labels = Labels::new(vec!["a".into(), "b".into()]).unwrap();
        let dot = to_dot(&Relation::antichain(2), &labels, None);
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches("shape=circle").count(), 2);
    }

    #[test]
    fn roles_style_the_nodes() {
        let labels = Labels::new(vec!["z1".into(), "z2".into(), "x".into(), "y".into()]).unwrap();
        let r = Relation::validate(ElemSet::first(4), &[(2, 0), (2, 1)]).unwrap();
        let ctx = SplitContext::with_apex(ElemSet::singleton(2), ElemSet::first(2), 3).unwrap();
        let dot = to_dot(&r, &labels, Some(&ctx));
        assert_eq!(dot.matches("fillcolor=black").count(), 2);
        assert_eq!(dot.matches("shape=diamond").count(), 1);
        assert_eq!(dot.matches("->").count(), 2);
    }
}

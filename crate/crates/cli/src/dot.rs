//! DOT export of the condensation digraph.

use relkit::quotient::QuotientRelation;
use relkit::relation::Relation;

/// One node per class, labeled with its member labels; one edge per
/// covering pair of the quotient order. Output is deterministic: nodes by
/// class id, edges in ascending pair order.
pub fn emit_dot(r: &Relation, q: &QuotientRelation) -> String {
    let labels = r.universe().labels();
    let mut out = String::from("digraph condensation {\n");
    for (id, class) in q.partition().classes().iter().enumerate() {
        let members: Vec<&str> = class.iter().map(|&x| labels[x].as_str()).collect();
        out.push_str(&format!("  c{id} [label=\"{}\"];\n", members.join(",")));
    }
    for (u, v) in q.covering_pairs() {
        out.push_str(&format!("  c{u} -> c{v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use relkit::quotient::quotient_relation;
    use relkit::relation::fixtures;

    #[test]
    fn cycle_condenses_to_one_node() {
        let r = fixtures::cyc3();
        let q = quotient_relation(&r).unwrap();
        assert_eq!(
            emit_dot(&r, &q),
            "digraph condensation {\n  c0 [label=\"a,b,c\"];\n}\n"
        );
    }

    #[test]
    fn mix_has_one_covering_edge() {
        let r = fixtures::mix();
        let q = quotient_relation(&r).unwrap();
        assert_eq!(
            emit_dot(&r, &q),
            "digraph condensation {\n  c0 [label=\"a,b\"];\n  c1 [label=\"c\"];\n  c1 -> c0;\n}\n"
        );
    }

    #[test]
    fn empty_relation_gives_isolated_nodes() {
        let r = fixtures::empty2();
        let q = quotient_relation(&r).unwrap();
        assert_eq!(
            emit_dot(&r, &q),
            "digraph condensation {\n  c0 [label=\"a\"];\n  c1 [label=\"b\"];\n}\n"
        );
    }
}

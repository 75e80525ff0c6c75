//! Deterministic DOT renderings of the three graph-shaped artifacts:
//! the 1-skeleton of a dependency complex, the nerve of a cover, and a
//! join tree with separator edge labels.

use std::fmt::Write;

use crate::attr::AttributeUniverse;
use crate::complex::SimplicialComplex;
use crate::cover::{Cover, Nerve};
use crate::fd::CanonicalCover;
use crate::jointree::JoinTree;

/// The 1-skeleton of a complex over attribute vertices; each edge is labeled
/// with the cover FDs whose faces generate it.
pub fn complex_skeleton_dot(
    k: &SimplicialComplex,
    cover: &CanonicalCover,
    universe: &AttributeUniverse,
) -> String {
    let mut out = String::from("graph complex_skeleton {\n");
    for vertex in k.faces(0) {
        let v = vertex.vertices()[0];
        writeln!(out, "  \"{}\";", universe.name(v)).unwrap();
    }
    for edge in k.faces(1) {
        let (u, v) = (edge.vertices()[0], edge.vertices()[1]);
        let provenance: Vec<String> = cover
            .fds()
            .iter()
            .filter(|fd| {
                let support = fd.support();
                support.contains(u) && support.contains(v)
            })
            .map(|fd| fd.render(universe))
            .collect();
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [label=\"{}\"];",
            universe.name(u),
            universe.name(v),
            provenance.join("; ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// The nerve over 1-based component indices.
pub fn nerve_dot(nerve: &Nerve) -> String {
    let k = nerve.complex();
    let mut out = String::from("graph nerve {\n");
    for vertex in k.faces(0) {
        writeln!(out, "  \"{}\";", vertex.vertices()[0] + 1).unwrap();
    }
    for edge in k.faces(1) {
        writeln!(
            out,
            "  \"{}\" -- \"{}\";",
            edge.vertices()[0] + 1,
            edge.vertices()[1] + 1
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// A join tree with `R<i>(attrs)` node labels and separator edge labels.
pub fn join_tree_dot(tree: &JoinTree, cover: &Cover, universe: &AttributeUniverse) -> String {
    let mut out = String::from("graph join_tree {\n");
    for (i, component) in cover.components().iter().enumerate() {
        writeln!(
            out,
            "  \"R{}\" [label=\"R{}({})\"];",
            i + 1,
            i + 1,
            universe.render(component).join(",")
        )
        .unwrap();
    }
    let mut edges: Vec<_> = tree.edges().to_vec();
    edges.sort_by_key(|e| (e.a, e.b));
    for edge in edges {
        writeln!(
            out,
            "  \"R{}\" -- \"R{}\" [label=\"{}\"];",
            edge.a + 1,
            edge.b + 1,
            universe.render_braced(&edge.separator)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{nerve, NerveMode};
    use crate::fd::{declared_cover, FdDeclaration, Schema};
    use crate::jointree::build_join_tree;

    #[test]
    fn skeleton_dot_lists_vertices_edges_and_provenance() {
        let u = AttributeUniverse::new(["A", "B"]).unwrap();
        let schema = Schema::new(
            u.clone(),
            vec![FdDeclaration { lhs: vec!["A".into()], rhs: vec!["B".into()] }],
        )
        .unwrap();
        let cover = declared_cover(&schema);
        let k = crate::complex::dependency_complex(&cover, &u);
        let dot = complex_skeleton_dot(&k, &cover, &u);
        assert!(dot.contains("\"A\" -- \"B\" [label=\"A→B\"]"));
    }

    #[test]
    fn single_vertex_complex_renders_one_node() {
        let u = AttributeUniverse::new(["A"]).unwrap();
        let schema = Schema::new(u.clone(), vec![]).unwrap();
        let cover = declared_cover(&schema);
        let k = crate::complex::dependency_complex(&cover, &u);
        let dot = complex_skeleton_dot(&k, &cover, &u);
        assert_eq!(dot, "graph complex_skeleton {\n  \"A\";\n}\n");
    }

    #[test]
    fn nerve_dot_renders_a_triangle_for_the_cyclic_cover() {
        let u = AttributeUniverse::new(["A", "B", "C"]).unwrap();
        let cover = Cover::new(
            &u,
            vec![
                u.set_of(["A", "B"]).unwrap(),
                u.set_of(["B", "C"]).unwrap(),
                u.set_of(["C", "A"]).unwrap(),
            ],
        )
        .unwrap();
        let n = nerve(&cover, NerveMode::Attribute, None).unwrap();
        let dot = nerve_dot(&n);
        assert!(dot.contains("\"1\" -- \"2\""));
        assert!(dot.contains("\"2\" -- \"3\""));
        assert!(dot.contains("\"1\" -- \"3\""));
    }

    #[test]
    fn join_tree_dot_labels_separators() {
        let u = AttributeUniverse::new(["A", "B", "C"]).unwrap();
        let cover = Cover::new(
            &u,
            vec![u.set_of(["A", "B"]).unwrap(), u.set_of(["B", "C"]).unwrap()],
        )
        .unwrap();
        let tree = build_join_tree(&cover).unwrap();
        let dot = join_tree_dot(&tree, &cover, &u);
        assert!(dot.contains("label=\"{B}\""));
        assert!(dot.contains("\"R1\" [label=\"R1(A,B)\"]"));
    }
}

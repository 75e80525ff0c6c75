//! Join trees: construction by maximum-weight spanning tree over the
//! component intersection graph, and running-intersection verification.

use crate::attr::AttributeSet;
use crate::cover::Cover;
use crate::error::{Error, Result};

/// An edge of a join tree with its recorded separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTreeEdge {
    pub a: usize,
    pub b: usize,
    pub separator: AttributeSet,
}

/// A spanning tree over a cover's components, edges labeled by separators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTree {
    node_count: usize,
    edges: Vec<JoinTreeEdge>,
}

impl JoinTree {
    /// Builds a tree from raw edges, checking only shape (node range, edge
    /// count, connectivity). Separator correctness against a cover is the
    /// business of [`verify_running_intersection`].
    pub fn new(node_count: usize, edges: Vec<JoinTreeEdge>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::invalid("a join tree needs at least one node"));
        }
        if edges.len() + 1 != node_count {
            return Err(Error::invalid(format!(
                "a tree on {node_count} nodes needs {} edges, got {}",
                node_count - 1,
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..node_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for edge in &edges {
            if edge.a >= node_count || edge.b >= node_count || edge.a == edge.b {
                return Err(Error::invalid("join tree edge references invalid nodes"));
            }
            let (ra, rb) = (find(&mut parent, edge.a), find(&mut parent, edge.b));
            if ra == rb {
                return Err(Error::invalid("join tree edges contain a cycle"));
            }
            parent[ra] = rb;
        }
        Ok(Self { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[JoinTreeEdge] {
        &self.edges
    }

    /// Neighbor lists with the index of the connecting edge.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.node_count];
        for (idx, edge) in self.edges.iter().enumerate() {
            adj[edge.a].push((edge.b, idx));
            adj[edge.b].push((edge.a, idx));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Separator on the edge between `a` and `b`, if adjacent.
    pub fn separator(&self, a: usize, b: usize) -> Option<AttributeSet> {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|e| e.separator)
    }
}

/// True iff for every attribute, the components containing it induce a
/// connected subtree, and every recorded separator equals the intersection
/// of its endpoints.
///
/// A tree whose shape does not match the cover (wrong node count, separator
/// drift) is an input error, distinct from a clean "no" verdict.
pub fn verify_running_intersection(tree: &JoinTree, cover: &Cover) -> Result<bool> {
    if tree.node_count() != cover.len() {
        return Err(Error::invalid(format!(
            "tree has {} nodes but the cover has {} components",
            tree.node_count(),
            cover.len()
        )));
    }
    for edge in tree.edges() {
        let expected = cover.components()[edge.a].intersection(&cover.components()[edge.b]);
        if edge.separator != expected {
            return Err(Error::invalid(format!(
                "separator on edge ({}, {}) does not equal the component intersection",
                edge.a + 1,
                edge.b + 1
            )));
        }
    }
    for attr in 0..cover.universe_len() {
        let holders: Vec<usize> = (0..cover.len())
            .filter(|&i| cover.components()[i].contains(attr))
            .collect();
        if holders.len() <= 1 {
            continue;
        }
        // The induced subgraph on `holders` must be a connected subtree.
        let mut parent: Vec<usize> = (0..cover.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for edge in tree.edges() {
            if holders.contains(&edge.a) && holders.contains(&edge.b) {
                let (ra, rb) = (find(&mut parent, edge.a), find(&mut parent, edge.b));
                parent[ra] = rb;
            }
        }
        let root = find(&mut parent, holders[0]);
        if holders.iter().any(|&h| find(&mut parent, h) != root) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Attempts to build a join tree for `cover`: a maximum-weight spanning tree
/// of the intersection graph (weight = separator size, ties broken by index
/// pair), returned only when it satisfies the running-intersection property.
///
/// For acyclic covers the maximum-weight tree always qualifies, so `None`
/// means no join tree exists at all.
pub fn build_join_tree(cover: &Cover) -> Option<JoinTree> {
    let k = cover.len();
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let weight = cover.components()[i]
                .intersection(&cover.components()[j])
                .len();
            candidates.push((weight, i, j));
        }
    }
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    for (_, i, j) in candidates {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            edges.push(JoinTreeEdge {
                a: i,
                b: j,
                separator: cover.components()[i].intersection(&cover.components()[j]),
            });
            if edges.len() == k - 1 {
                break;
            }
        }
    }
    let tree = JoinTree::new(k, edges).expect("spanning construction yields a tree");
    match verify_running_intersection(&tree, cover) {
        Ok(true) => Some(tree),
        _ => None,
    }
}

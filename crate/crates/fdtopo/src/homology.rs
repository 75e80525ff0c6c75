//! Simplicial homology over GF(2): boundary matrices, reduced Betti
//! profiles, homological-acyclicity verdicts, 1-cycle localization, and
//! exactness audits for two-subcomplex covers.
//!
//! GF(2) coefficients keep boundary maps sign-free; for the desk-scale
//! complexes produced by dependency analysis that is all the rank
//! information needed. Betti numbers over GF(2) may exceed rational ones
//! when integral homology has 2-torsion; that limitation is accepted here.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Span, Gf2Vec};

/// The boundary map from `n`-faces to `(n−1)`-faces of a complex.
///
/// Rows are indexed by the lexicographically ordered `(n−1)`-faces, columns
/// by the `n`-faces; entry `(τ, σ)` is 1 iff `τ` is a facet of `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    n: usize,
    matrix: Gf2Matrix,
}

impl BoundaryMatrix {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }
}

/// Builds `∂_n` for `n ≥ 1`.
pub fn boundary_matrix(k: &SimplicialComplex, n: usize) -> Result<BoundaryMatrix> {
    if n == 0 {
        return Err(Error::invalid("boundary matrices are defined for degree ≥ 1"));
    }
    let rows = k.faces(n - 1);
    let cols = k.faces(n);
    let mut matrix = Gf2Matrix::zeros(rows.len(), cols.len());
    for (c, face) in cols.iter().enumerate() {
        for facet in face.facets() {
            let r = rows
                .binary_search(&facet)
                .expect("every facet of a face is a face");
            matrix.set(r, c, true);
        }
    }
    Ok(BoundaryMatrix { n, matrix })
}

/// Reduced Betti numbers of a complex: index 0 holds `b̃₀`, index `n ≥ 1`
/// holds `b_n`, up to the dimension of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub reduced_betti: Vec<usize>,
}

impl HomologyProfile {
    /// `b̃_n`, zero beyond the complex's dimension.
    pub fn betti(&self, n: usize) -> usize {
        self.reduced_betti.get(n).copied().unwrap_or(0)
    }

    /// True when every positive-degree Betti number vanishes.
    pub fn positive_degrees_vanish(&self) -> bool {
        self.reduced_betti.iter().skip(1).all(|&b| b == 0)
    }
}

/// Computes the reduced Betti profile of a nonempty complex by GF(2) rank
/// computations on its boundary matrices.
pub fn reduced_betti_profile(k: &SimplicialComplex) -> Result<HomologyProfile> {
    let dim = k.dim().ok_or(Error::EmptyComplex)?;
    // ranks[n] = rank ∂_n; ∂ beyond the dimension is the zero map.
    let mut ranks = vec![0usize; dim + 2];
    for (n, rank) in ranks.iter_mut().enumerate().take(dim + 1).skip(1) {
        *rank = boundary_matrix(k, n)?.matrix().rank();
    }
    let mut reduced_betti = Vec::with_capacity(dim + 1);
    reduced_betti.push(k.face_count(0) - ranks[1] - 1);
    for n in 1..=dim {
        reduced_betti.push(k.face_count(n) - ranks[n] - ranks[n + 1]);
    }
    Ok(HomologyProfile { reduced_betti })
}

/// Homological-acyclicity verdict: all positive-degree Betti numbers vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfVerdict {
    pub snf: bool,
    pub profile: HomologyProfile,
}

pub fn is_snf(k: &SimplicialComplex) -> Result<SnfVerdict> {
    let profile = reduced_betti_profile(k)?;
    Ok(SnfVerdict {
        snf: profile.positive_degrees_vanish(),
        profile,
    })
}

/// An edge of the 1-skeleton, vertex ids ascending.
pub type Edge = (usize, usize);

fn edge_of(face: &crate::complex::Simplex) -> Edge {
    let v = face.vertices();
    debug_assert_eq!(v.len(), 2);
    (v[0], v[1])
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra.max(rb)] = ra.min(rb);
            true
        }
    }
}

/// Representatives for a basis of `H₁` over GF(2).
///
/// Cycles are fundamental cycles of a lexicographic spanning forest, kept
/// only when independent modulo the image of `∂₂`; each is returned as a
/// sorted list of edges. The empty list means `b₁ = 0`.
pub fn h1_cycle_basis(k: &SimplicialComplex) -> Result<Vec<Vec<Edge>>> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let edges = k.faces(1);
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let edge_list: Vec<Edge> = edges.iter().map(edge_of).collect();

    // Lexicographic spanning forest via union-find; remaining edges are the
    // fundamental-cycle generators.
    let mut uf = UnionFind::new(k.vertex_count());
    let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k.vertex_count()];
    let mut non_tree = Vec::new();
    for (idx, &(u, v)) in edge_list.iter().enumerate() {
        if uf.union(u, v) {
            tree_adj[u].push((v, idx));
            tree_adj[v].push((u, idx));
        } else {
            non_tree.push(idx);
        }
    }

    // Seed the span with the boundaries of all 2-faces, then admit only
    // fundamental cycles independent of them.
    let mut span = Gf2Span::new(edge_list.len());
    let d2 = boundary_matrix(k, 2)?;
    for c in 0..d2.matrix().cols() {
        span.insert(d2.matrix().column(c));
    }

    let mut basis = Vec::new();
    for idx in non_tree {
        let (u, v) = edge_list[idx];
        let mut cycle = Gf2Vec::zeros(edge_list.len());
        cycle.set(idx, true);
        for step in forest_path(&tree_adj, u, v) {
            cycle.set(step, true);
        }
        let edges_of_cycle: Vec<Edge> = cycle.ones().iter().map(|&i| edge_list[i]).collect();
        if span.insert(cycle) {
            basis.push(edges_of_cycle);
        }
    }
    Ok(basis)
}

/// Edge indices along the unique forest path between `u` and `v`.
fn forest_path(tree_adj: &[Vec<(usize, usize)>], u: usize, v: usize) -> Vec<usize> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; tree_adj.len()];
    let mut visited = vec![false; tree_adj.len()];
    let mut queue = std::collections::VecDeque::new();
    visited[u] = true;
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &(y, edge_idx) in &tree_adj[x] {
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some((x, edge_idx));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = v;
    while cur != u {
        let (prev, edge_idx) = parent[cur].expect("u and v lie in the same forest tree");
        path.push(edge_idx);
        cur = prev;
    }
    path
}

/// One verified identity of the exactness audit: `lower ≤ value ≤ upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvCheck {
    pub degree: usize,
    pub label: String,
    pub value: i64,
    pub lower: i64,
    pub upper: i64,
    pub pass: bool,
}

impl MvCheck {
    fn bounded(degree: usize, label: String, value: i64, lower: i64, upper: i64) -> Self {
        let pass = lower <= value && value <= upper;
        Self {
            degree,
            label,
            value,
            lower,
            upper,
            pass,
        }
    }
}

/// Result of auditing the exactness identities of the two-subcomplex long
/// exact sequence on a concrete pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvReport {
    /// True when the two complexes share no face; the audit then degenerates
    /// to a disjoint-union additivity check.
    pub disjoint: bool,
    pub first: HomologyProfile,
    pub second: HomologyProfile,
    pub intersection: Option<HomologyProfile>,
    pub union: HomologyProfile,
    pub checks: Vec<MvCheck>,
    pub all_hold: bool,
}

/// Audits the rank identities forced by the long exact sequence of the cover
/// `k1 ∪ k2` by the pair `(k1, k2)`.
///
/// The connecting-map ranks are solved degree by degree from the Betti
/// profiles of `k1`, `k2`, `k1 ∩ k2`, and `k1 ∪ k2`; exactness holds iff every
/// inferred rank is a valid dimension (within its caps) and the sequence
/// closes with a zero boundary out of degree 0. With an empty intersection
/// the union is a disjoint union and the audit checks Betti additivity
/// instead.
pub fn mv_exactness_audit(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<MvReport> {
    if k1.vertex_count() != k2.vertex_count() {
        return Err(Error::invalid("complexes must share a vertex universe"));
    }
    let first = reduced_betti_profile(k1)?;
    let second = reduced_betti_profile(k2)?;
    let union_complex = k1.union(k2)?;
    let union = reduced_betti_profile(&union_complex)?;
    let intersection_complex = k1.intersection(k2)?;

    if intersection_complex.is_empty() {
        let top = union.reduced_betti.len().max(3) - 1;
        let mut checks = Vec::new();
        for n in 0..=top {
            let expected = if n == 0 {
                first.betti(0) as i64 + second.betti(0) as i64 + 1
            } else {
                first.betti(n) as i64 + second.betti(n) as i64
            };
            checks.push(MvCheck::bounded(
                n,
                format!("disjoint-union Betti additivity in degree {n}"),
                union.betti(n) as i64,
                expected,
                expected,
            ));
        }
        let all_hold = checks.iter().all(|c| c.pass);
        return Ok(MvReport {
            disjoint: true,
            first,
            second,
            intersection: None,
            union,
            checks,
            all_hold,
        });
    }

    let intersection = reduced_betti_profile(&intersection_complex)?;
    let top = [
        first.reduced_betti.len(),
        second.reduced_betti.len(),
        intersection.reduced_betti.len(),
        union.reduced_betti.len(),
        3,
    ]
    .into_iter()
    .max()
    .unwrap()
        - 1;

    let a = |n: usize| intersection.betti(n) as i64;
    let b = |n: usize| first.betti(n) as i64 + second.betti(n) as i64;
    let c = |n: usize| union.betti(n) as i64;

    // Solve for the connecting-map ranks t_n = rank(∂_n) downward from the
    // top degree, where everything vanishes.
    let mut t = vec![0i64; top + 2];
    for n in (0..=top).rev() {
        t[n] = a(n) - b(n) + c(n) - t[n + 1];
    }

    let mut checks = Vec::new();
    for n in 0..=top {
        checks.push(MvCheck::bounded(
            n,
            format!("rank of connecting map out of degree {}", n + 1),
            t[n + 1],
            0,
            c(n + 1).min(a(n)),
        ));
        checks.push(MvCheck::bounded(
            n,
            format!("rank of intersection-to-pair map in degree {n}"),
            b(n) - c(n) + t[n],
            0,
            a(n).min(b(n)),
        ));
        checks.push(MvCheck::bounded(
            n,
            format!("rank of pair-to-union map in degree {n}"),
            c(n) - t[n],
            0,
            b(n).min(c(n)),
        ));
    }
    checks.push(MvCheck::bounded(
        0,
        "connecting map out of degree 0 vanishes".to_string(),
        t[0],
        0,
        0,
    ));
    let all_hold = checks.iter().all(|ch| ch.pass);
    Ok(MvReport {
        disjoint: false,
        first,
        second,
        intersection: Some(intersection),
        union,
        checks,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    fn complex(vertex_count: usize, faces: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(
            vertex_count,
            faces.iter().map(|f| Simplex::new(f.to_vec())).collect(),
        )
        .unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        complex(3, &[&[0, 1], &[1, 2], &[0, 2]])
    }

    fn filled_triangle() -> SimplicialComplex {
        complex(3, &[&[0, 1, 2]])
    }

    #[test]
    fn boundary_matrix_shapes_and_entries() {
        let k = hollow_triangle();
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!((d1.matrix().rows(), d1.matrix().cols()), (3, 3));
        for c in 0..3 {
            let ones = d1.matrix().column(c).ones().len();
            assert_eq!(ones, 2, "every edge has two endpoints");
        }

        let filled = filled_triangle();
        let d2 = boundary_matrix(&filled, 2).unwrap();
        assert_eq!((d2.matrix().rows(), d2.matrix().cols()), (3, 1));
        assert_eq!(d2.matrix().column(0).ones().len(), 3);

        assert!(boundary_matrix(&k, 0).is_err());
    }

    #[test]
    fn boundary_composes_to_zero() {
        let k = complex(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 3]]);
        let dim = k.dim().unwrap();
        for n in 2..=dim {
            let outer = boundary_matrix(&k, n - 1).unwrap();
            let inner = boundary_matrix(&k, n).unwrap();
            assert!(outer.matrix().multiply(inner.matrix()).is_zero());
        }
    }

    #[test]
    fn betti_of_hollow_and_filled_triangle() {
        let hollow = reduced_betti_profile(&hollow_triangle()).unwrap();
        assert_eq!(hollow.reduced_betti, vec![0, 1]);
        let filled = reduced_betti_profile(&filled_triangle()).unwrap();
        assert_eq!(filled.reduced_betti, vec![0, 0, 0]);
    }

    #[test]
    fn betti_of_tetrahedron_boundary() {
        let k = complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let profile = reduced_betti_profile(&k).unwrap();
        assert_eq!(profile.reduced_betti, vec![0, 0, 1]);
    }

    #[test]
    fn empty_complex_is_rejected() {
        let k = SimplicialComplex::from_faces(3, vec![]).unwrap();
        assert!(matches!(reduced_betti_profile(&k), Err(Error::EmptyComplex)));
    }

    #[test]
    fn snf_verdicts() {
        assert!(is_snf(&filled_triangle()).unwrap().snf);
        assert!(!is_snf(&hollow_triangle()).unwrap().snf);
        assert!(is_snf(&complex(1, &[&[0]])).unwrap().snf);
    }

    #[test]
    fn cycle_basis_of_hollow_triangle() {
        let cycles = h1_cycle_basis(&hollow_triangle()).unwrap();
        assert_eq!(cycles, vec![vec![(0, 1), (0, 2), (1, 2)]]);
        assert!(h1_cycle_basis(&filled_triangle()).unwrap().is_empty());
    }

    #[test]
    fn cycle_basis_of_two_disjoint_triangles() {
        let k = complex(6, &[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5]]);
        let cycles = h1_cycle_basis(&k).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0], vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(cycles[1], vec![(3, 4), (3, 5), (4, 5)]);
    }

    #[test]
    fn mv_audit_on_identical_complexes() {
        let k = filled_triangle();
        let report = mv_exactness_audit(&k, &k).unwrap();
        assert!(!report.disjoint);
        assert!(report.all_hold);
    }

    #[test]
    fn mv_audit_on_two_edges_sharing_endpoints() {
        // Path 0-1-2 and edge 0-2 cover the hollow triangle; the two-point
        // intersection feeds the 1-cycle of the union through the boundary.
        let path = complex(3, &[&[0, 1], &[1, 2]]);
        let edge = complex(3, &[&[0, 2]]);
        let report = mv_exactness_audit(&path, &edge).unwrap();
        assert!(report.all_hold);
        let boundary_rank = report
            .checks
            .iter()
            .find(|c| c.degree == 0 && c.label.contains("connecting map out of degree 1"))
            .unwrap();
        assert_eq!(boundary_rank.value, 1);
    }

    #[test]
    fn mv_audit_degenerates_on_disjoint_pair() {
        let left = complex(4, &[&[0, 1]]);
        let right = complex(4, &[&[2, 3]]);
        let report = mv_exactness_audit(&left, &right).unwrap();
        assert!(report.disjoint);
        assert!(report.all_hold);
    }
}

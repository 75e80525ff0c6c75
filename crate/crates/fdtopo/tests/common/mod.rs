//! Shared test helpers: an enumeration-based GF(2) homology oracle that is
//! independent of the library's row-reduction path, and fixture utilities.
//!
//! Each integration-test binary compiles its own copy, so helpers unused by
//! one binary are expected.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use fdtopo::complex::SimplicialComplex;

/// Root of the shipped fixture documents.
pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// All faces of dimension `n`, re-derived here from the maximal faces by
/// plain subset enumeration so the oracle does not depend on the library's
/// face tables.
fn oracle_faces(k: &SimplicialComplex, n: usize) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for max_face in k.maximal_faces() {
        let verts = max_face.vertices();
        if verts.len() < n + 1 {
            continue;
        }
        let total = 1u32 << verts.len();
        for mask in 1..total {
            if mask.count_ones() as usize != n + 1 {
                continue;
            }
            let subset: Vec<usize> = (0..verts.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| verts[i])
                .collect();
            seen.insert(subset);
        }
    }
    seen.into_iter().collect()
}

/// Columns of `∂_n` as row bitmasks (rows = (n−1)-faces in sorted order).
fn oracle_boundary_columns(k: &SimplicialComplex, n: usize) -> (usize, Vec<u32>) {
    let rows = oracle_faces(k, n - 1);
    let cols = oracle_faces(k, n);
    assert!(rows.len() <= 32, "oracle only handles tiny complexes");
    let columns = cols
        .iter()
        .map(|face| {
            let mut mask = 0u32;
            for skip in 0..face.len() {
                let facet: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let row = rows.binary_search(&facet).expect("facet is a face");
                mask |= 1 << row;
            }
            mask
        })
        .collect();
    (rows.len(), columns)
}

/// Rank and nullity of a column-mask matrix by full enumeration of the
/// domain: the image size is `2^rank`, the kernel size `2^nullity`. No row
/// reduction involved.
fn rank_nullity_by_enumeration(columns: &[u32]) -> (usize, usize) {
    assert!(columns.len() <= 20, "oracle only handles tiny matrices");
    let domain = 1usize << columns.len();
    let mut image: BTreeSet<u32> = BTreeSet::new();
    let mut kernel_size = 0usize;
    for x in 0..domain {
        let mut value = 0u32;
        for (i, &col) in columns.iter().enumerate() {
            if x & (1 << i) != 0 {
                value ^= col;
            }
        }
        image.insert(value);
        if value == 0 {
            kernel_size += 1;
        }
    }
    let rank = image.len().trailing_zeros() as usize;
    assert_eq!(1usize << rank, image.len(), "image size is a power of two");
    let nullity = kernel_size.trailing_zeros() as usize;
    assert_eq!(1usize << nullity, kernel_size, "kernel size is a power of two");
    (rank, nullity)
}

/// Reduced Betti numbers by enumeration: `b̃₀ = #vertices − rank ∂₁ − 1`,
/// `b_n = nullity ∂_n − rank ∂_{n+1}`.
pub fn oracle_reduced_betti(k: &SimplicialComplex) -> Vec<usize> {
    let dim = k.dim().expect("oracle needs a nonempty complex");
    let mut ranks = vec![0usize; dim + 2];
    let mut nullities = vec![0usize; dim + 2];
    for n in 1..=dim {
        let (_, columns) = oracle_boundary_columns(k, n);
        let (rank, nullity) = rank_nullity_by_enumeration(&columns);
        ranks[n] = rank;
        nullities[n] = nullity;
    }
    let mut betti = Vec::with_capacity(dim + 1);
    betti.push(oracle_faces(k, 0).len() - ranks[1] - 1);
    for n in 1..=dim {
        betti.push(nullities[n] - ranks[n + 1]);
    }
    betti
}

/// `∂_{n-1} ∘ ∂_n = 0` checked directly on oracle matrices: the boundary of
/// every column must cancel over GF(2).
pub fn oracle_boundary_squares_to_zero(k: &SimplicialComplex) -> bool {
    let dim = match k.dim() {
        Some(d) => d,
        None => return true,
    };
    for n in 2..=dim {
        let (_, outer_cols) = oracle_boundary_columns(k, n - 1);
        let (_, inner_cols) = oracle_boundary_columns(k, n);
        for &col in &inner_cols {
            let mut acc = 0u32;
            for (row, &outer) in outer_cols.iter().enumerate() {
                if col & (1 << row) != 0 {
                    acc ^= outer;
                }
            }
            if acc != 0 {
                return false;
            }
        }
    }
    true
}

/// Alternating face-count sum for the Euler–Poincaré identity.
pub fn euler_characteristic_faces(k: &SimplicialComplex) -> i64 {
    let dim = k.dim().expect("nonempty complex");
    (0..=dim)
        .map(|n| {
            let count = oracle_faces(k, n).len() as i64;
            if n % 2 == 0 {
                count
            } else {
                -count
            }
        })
        .sum()
}

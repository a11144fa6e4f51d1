//! Exact counting of simple paths through a vertex or a vertex pair.
//!
//! A path of length `l` is an unordered sequence of `l + 1` distinct
//! vertices with consecutive adjacency; a path and its reversal are the same
//! path and are counted once. The focus vertices may occur anywhere on the
//! path, not only as endpoints.
//!
//! Two independent counters are provided: a depth-first enumerator that
//! canonically orients each path by its endpoints, and a subset oracle that
//! sums Hamiltonian-path counts of induced subgraphs (a simple path with
//! vertex set `S` is exactly a Hamiltonian path of `G[S]`).

use crate::error::Error;
use crate::graph::{Bits, Graph};

/// Largest number of path vertices (`l + 1`) the subset oracle accepts.
pub const ORACLE_PATH_VERTEX_CAP: usize = 12;

/// Number of `len`-paths whose vertex set contains `focus`.
pub fn count_paths_at(g: &Graph, focus: usize, len: usize) -> Result<u128, Error> {
    check_vertex(g, focus)?;
    check_len(g, len, g.vertex_count().saturating_sub(1))?;
    Ok(count_with_required(g, 1 << focus, len))
}

/// Number of `len`-paths whose vertex set contains both `a` and `b`.
/// Symmetric in the two foci; at `len = 1` this is the adjacency indicator.
pub fn count_paths_pair(g: &Graph, a: usize, b: usize, len: usize) -> Result<u128, Error> {
    check_vertex(g, a)?;
    check_vertex(g, b)?;
    if a == b {
        return Err(Error::SameFocusVertices { v: a });
    }
    check_len(g, len, g.vertex_count().saturating_sub(1))?;
    Ok(count_with_required(g, (1 << a) | (1 << b), len))
}

/// Independent recount of [`count_paths_at`]: for every `(len + 1)`-subset
/// containing `focus`, count Hamiltonian paths of the induced subgraph by
/// dynamic programming over subsets, and sum.
pub fn count_paths_at_oracle(g: &Graph, focus: usize, len: usize) -> Result<u128, Error> {
    check_vertex(g, focus)?;
    check_len(g, len, g.vertex_count().saturating_sub(1))?;
    check_oracle_cap(len)?;
    Ok(oracle_count(g, 1 << focus, len))
}

/// Subset-oracle recount of [`count_paths_pair`].
pub fn count_paths_pair_oracle(g: &Graph, a: usize, b: usize, len: usize) -> Result<u128, Error> {
    check_vertex(g, a)?;
    check_vertex(g, b)?;
    if a == b {
        return Err(Error::SameFocusVertices { v: a });
    }
    check_len(g, len, g.vertex_count().saturating_sub(1))?;
    check_oracle_cap(len)?;
    Ok(oracle_count(g, (1 << a) | (1 << b), len))
}

/// Residual of the path-sum identity at `focus`:
/// `sum over i != focus of count_paths_pair(g, focus, i, len)` minus
/// `len * count_paths_at(g, focus, len)`. Zero for every graph.
pub fn check_path_sum_identity(g: &Graph, focus: usize, len: usize) -> Result<i128, Error> {
    check_vertex(g, focus)?;
    check_len(g, len, g.vertex_count().saturating_sub(2))?;
    let mut sum: i128 = 0;
    for other in 0..g.vertex_count() {
        if other != focus {
            let c = count_paths_pair(g, focus, other, len)?;
            sum += i128::try_from(c).expect("pair count fits i128");
        }
    }
    let at = count_paths_at(g, focus, len)?;
    let scaled = (len as i128) * i128::try_from(at).expect("path count fits i128");
    Ok(sum - scaled)
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), Error> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { v, n: g.vertex_count() });
    }
    Ok(())
}

fn check_len(g: &Graph, len: usize, max: usize) -> Result<(), Error> {
    let _ = g;
    if len < 1 || len > max {
        return Err(Error::PathLengthOutOfRange { l: len, max });
    }
    Ok(())
}

fn check_oracle_cap(len: usize) -> Result<(), Error> {
    if len + 1 > ORACLE_PATH_VERTEX_CAP {
        return Err(Error::OracleCapExceeded {
            vertices: len + 1,
            cap: ORACLE_PATH_VERTEX_CAP,
        });
    }
    Ok(())
}

/// Counts `len`-paths whose vertex set covers `required`. Each undirected
/// path is enumerated twice (once per direction) and kept only when the
/// first endpoint index is smaller than the last.
fn count_with_required(g: &Graph, required: u64, len: usize) -> u128 {
    let mut total = 0u128;
    for start in 0..g.vertex_count() {
        extend(g, start, start, 1 << start, len, required, &mut total);
    }
    total
}

fn extend(
    g: &Graph,
    first: usize,
    last: usize,
    visited: u64,
    remaining: usize,
    required: u64,
    total: &mut u128,
) {
    if remaining == 0 {
        if first < last && required & !visited == 0 {
            *total += 1;
        }
        return;
    }
    // Each further edge adds one vertex; missing focus vertices must fit.
    if (required & !visited).count_ones() as usize > remaining {
        return;
    }
    for next in Bits(g.neighbor_mask(last) & !visited) {
        extend(g, first, next, visited | (1 << next), remaining - 1, required, total);
    }
}

fn oracle_count(g: &Graph, required: u64, len: usize) -> u128 {
    let want = len + 1;
    let have = required.count_ones() as usize;
    debug_assert!(want >= have);
    let free: Vec<usize> =
        (0..g.vertex_count()).filter(|&v| required & (1 << v) == 0).collect();
    let mut total = 0u128;
    let mut dp = vec![0u64; (1 << want) * want];
    choose(&free, want - have, required, &mut |subset| {
        total += hamiltonian_paths(g, subset, want, &mut dp);
    });
    total
}

fn choose(free: &[usize], need: usize, acc: u64, emit: &mut impl FnMut(u64)) {
    if need == 0 {
        emit(acc);
        return;
    }
    if free.len() < need {
        return;
    }
    choose(&free[1..], need - 1, acc | (1 << free[0]), emit);
    choose(&free[1..], need, acc, emit);
}

/// Undirected Hamiltonian path count of the subgraph induced by `subset`
/// (`k` vertices). `dp` is scratch space of size `2^k * k`, indexed by
/// `(visited_mask, last)` over local vertex numbers.
fn hamiltonian_paths(g: &Graph, subset: u64, k: usize, dp: &mut [u64]) -> u128 {
    let verts: Vec<usize> = Bits(subset).collect();
    debug_assert_eq!(verts.len(), k);
    let mut local_adj = vec![0u32; k];
    for (a, &va) in verts.iter().enumerate() {
        for (b, &vb) in verts.iter().enumerate().skip(a + 1) {
            if g.has_edge(va, vb) {
                local_adj[a] |= 1 << b;
                local_adj[b] |= 1 << a;
            }
        }
    }
    let full = (1usize << k) - 1;
    dp[..(full + 1) * k].fill(0);
    for v in 0..k {
        dp[(1 << v) * k + v] = 1;
    }
    for mask in 1..=full {
        for last in Bits(mask as u64) {
            let count = dp[mask * k + last];
            if count == 0 {
                continue;
            }
            for next in Bits(local_adj[last] as u64 & !(mask as u64)) {
                dp[(mask | (1 << next)) * k + next] += count;
            }
        }
    }
    let directed: u64 = (0..k).map(|v| dp[full * k + v]).sum();
    debug_assert!(directed.is_multiple_of(2), "paths with distinct endpoints pair up");
    u128::from(directed / 2)
}

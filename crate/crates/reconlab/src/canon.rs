//! Canonical forms, isomorphism testing, and deck computation.
//!
//! A [`CanonicalForm`] is the lexicographically minimal upper-triangle
//! adjacency bit sequence of a graph over all vertex relabelings, so two
//! graphs have equal forms exactly when they are isomorphic. The search is
//! exhaustive over permutations, pruned by comparing partially determined
//! bit sequences against the best complete one found so far and by ordering
//! candidate vertices by degree-refinement class. That keeps every step
//! auditable at desk scale instead of relying on automorphism-group
//! machinery.

use std::fmt;

use crate::error::Error;
use crate::graph::Graph;

/// Largest vertex count `canonical_form` accepts.
pub const CANON_VERTEX_CAP: usize = 10;

/// Order-independent fingerprint of a graph's isomorphism class: the
/// minimal row-major upper-triangle bit sequence over all relabelings,
/// packed with the first pair at the most significant used bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: u64,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The packed triangle bits; only meaningful together with `n`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Reconstructs the canonically labeled representative graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_triangle_code(self.n, self.bits)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.n * (self.n - 1) / 2;
        write!(f, "CanonicalForm(n={}, bits={:0width$b})", self.n, self.bits, width = m)
    }
}

/// Multiset of the canonical forms of all vertex-deleted cards, stored as a
/// sorted run-length list so equality and hashing are deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Deck {
    cards: Vec<(CanonicalForm, usize)>,
}

impl Deck {
    /// Distinct cards with multiplicities, in ascending form order.
    pub fn cards(&self) -> &[(CanonicalForm, usize)] {
        &self.cards
    }

    /// Total number of cards counted with multiplicity (the vertex count of
    /// the source graph).
    pub fn card_count(&self) -> usize {
        self.cards.iter().map(|&(_, k)| k).sum()
    }
}

/// Computes the canonical form of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, Error> {
    let n = g.vertex_count();
    if n > CANON_VERTEX_CAP {
        return Err(Error::CanonCapExceeded { n, cap: CANON_VERTEX_CAP });
    }
    if n == 1 {
        return Ok(CanonicalForm { n, bits: 0 });
    }

    let classes = refinement_classes(g);
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by_key(|&v| (classes[v], v));

    let mut search = Search::new(g, &candidates);
    search.run();
    Ok(CanonicalForm { n, bits: search.best })
}

/// True iff the two graphs are related by an edge-preserving bijection.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, Error> {
    if g.vertex_count() != h.vertex_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// The multiset of canonical forms of all `n` vertex-deleted cards.
pub fn deck(g: &Graph) -> Result<Deck, Error> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::DeckUndefined);
    }
    let mut forms = Vec::with_capacity(n);
    for v in 0..n {
        let card = g.delete_vertex(v).expect("vertex in range");
        forms.push(canonical_form(&card)?);
    }
    forms.sort();
    let mut cards: Vec<(CanonicalForm, usize)> = Vec::new();
    for form in forms {
        match cards.last_mut() {
            Some((prev, count)) if *prev == form => *count += 1,
            _ => cards.push((form, 1)),
        }
    }
    Ok(Deck { cards })
}

/// Degree-refinement classes: start from degrees and repeatedly split by the
/// multiset of neighbor classes until the partition stabilizes. Class ids
/// are assigned in sorted signature order, so they are deterministic.
fn refinement_classes(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut color = rank_by_key(&(0..n).map(|v| vec![g.degree(v) as u32]).collect::<Vec<_>>());
    let mut distinct = count_distinct(&color);
    loop {
        let signatures: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut sig = vec![color[v]];
                let mut around: Vec<u32> = g.neighbors(v).map(|u| color[u]).collect();
                around.sort_unstable();
                sig.extend(around);
                sig
            })
            .collect();
        let next = rank_by_key(&signatures);
        let next_distinct = count_distinct(&next);
        if next_distinct == distinct {
            return color;
        }
        color = next;
        distinct = next_distinct;
    }
}

fn rank_by_key(keys: &[Vec<u32>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u32>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("key present") as u32)
        .collect()
}

fn count_distinct(color: &[u32]) -> usize {
    let mut seen: Vec<u32> = color.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Branch-and-bound over position assignments. `placement[k]` is the
/// original vertex put at canonical position `k`; after placing a prefix,
/// exactly the bit positions for pairs inside the prefix are determined.
struct Search<'a> {
    g: &'a Graph,
    n: usize,
    m: usize,
    candidates: &'a [usize],
    /// pair_bit[i][j] (i < j): single-bit mask of the row-major pair (i, j).
    pair_bit: Vec<Vec<u64>>,
    /// known_after[k]: all bit positions determined once positions 0..=k are
    /// assigned.
    known_after: Vec<u64>,
    placement: Vec<usize>,
    used: u64,
    best: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, candidates: &'a [usize]) -> Self {
        let n = g.vertex_count();
        let m = n * (n - 1) / 2;
        let mut pair_bit = vec![vec![0u64; n]; n];
        let mut k = 0;
        for (i, row) in pair_bit.iter_mut().enumerate() {
            for slot in row.iter_mut().skip(i + 1) {
                *slot = 1 << (m - 1 - k);
                k += 1;
            }
        }
        let mut known_after = vec![0u64; n];
        let mut acc = 0u64;
        for (pos, known) in known_after.iter_mut().enumerate() {
            for row in &pair_bit[..pos] {
                acc |= row[pos];
            }
            *known = acc;
        }
        // Seed the incumbent with the candidate ordering itself, so `best`
        // is always an achieved code.
        let best = code_of(g, candidates);
        Search {
            g,
            n,
            m,
            candidates,
            pair_bit,
            known_after,
            placement: vec![0; n],
            used: 0,
            best,
        }
    }

    fn run(&mut self) {
        self.descend(0, 0);
    }

    fn descend(&mut self, pos: usize, code: u64) {
        for idx in 0..self.n {
            let v = self.candidates[idx];
            if self.used & (1 << v) != 0 {
                continue;
            }
            let mut next_code = code;
            for (&placed, bit_row) in self.placement[..pos].iter().zip(&self.pair_bit) {
                if self.g.has_edge(placed, v) {
                    next_code |= bit_row[pos];
                }
            }
            if !self.can_still_win(next_code, self.known_after[pos]) {
                continue;
            }
            if pos + 1 == self.n {
                self.best = next_code;
                continue;
            }
            self.placement[pos] = v;
            self.used |= 1 << v;
            self.descend(pos + 1, next_code);
            self.used &= !(1 << v);
        }
    }

    /// Whether some completion of the partial code can be strictly smaller
    /// than the incumbent. Scans bit positions most-significant first: an
    /// undetermined position where the incumbent has a 1 can always be
    /// beaten; an undetermined position where it has a 0 can only be tied,
    /// so the scan continues past it. Branches that can at most tie are
    /// pruned.
    fn can_still_win(&self, code: u64, known: u64) -> bool {
        for k in 0..self.m {
            let bit = 1u64 << (self.m - 1 - k);
            if known & bit == 0 {
                if self.best & bit != 0 {
                    return true;
                }
                continue;
            }
            let c = code & bit != 0;
            let b = self.best & bit != 0;
            if c != b {
                return !c;
            }
        }
        false
    }
}

fn code_of(g: &Graph, placement: &[usize]) -> u64 {
    let n = g.vertex_count();
    let m = n * (n - 1) / 2;
    let mut code = 0u64;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(placement[i], placement[j]) {
                code |= 1 << (m - 1 - k);
            }
            k += 1;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn all_codes(n: usize) -> impl Iterator<Item = Graph> {
        let m = n * (n - 1) / 2;
        (0..(1u64 << m)).map(move |code| Graph::from_triangle_code(n, code))
    }

    /// Reference canonical form: plain minimum over all n! placements.
    fn brute_force_min(g: &Graph) -> u64 {
        let n = g.vertex_count();
        (0..n)
            .permutations(n)
            .map(|placement| code_of(g, &placement))
            .min()
            .expect("at least one permutation")
    }

    #[test]
    fn triangle_is_all_ones() {
        let g = Graph::complete(3).unwrap();
        assert_eq!(canonical_form(&g).unwrap().bits(), 0b111);
    }

    #[test]
    fn relabeled_paths_share_a_form() {
        let p = Graph::path(3).unwrap();
        let q = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap(); // 1-0-2
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
    }

    #[test]
    fn different_edge_counts_differ() {
        let p3 = Graph::path(3).unwrap();
        let k2_k1 = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_ne!(canonical_form(&p3).unwrap(), canonical_form(&k2_k1).unwrap());
    }

    #[test]
    fn matches_brute_force_exhaustively_to_n5() {
        for n in 1..=5usize {
            for g in all_codes(n) {
                let fast = canonical_form(&g).unwrap().bits();
                assert_eq!(fast, brute_force_min(&g), "mismatch on {g:?}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::edgeless(11).unwrap();
        assert_eq!(
            canonical_form(&g),
            Err(Error::CanonCapExceeded { n: 11, cap: CANON_VERTEX_CAP })
        );
    }

    #[test]
    fn four_cycle_vs_two_edges() {
        let c4 = Graph::cycle(4).unwrap();
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!are_isomorphic(&c4, &two_edges).unwrap());
    }

    #[test]
    fn six_cycle_vs_two_triangles() {
        // Same degree sequence, different component counts.
        let c6 = Graph::cycle(6).unwrap();
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(c6.component_count(), 1);
        assert_eq!(tt.component_count(), 2);
        assert!(!are_isomorphic(&c6, &tt).unwrap());
    }

    #[test]
    fn relabelings_are_isomorphic() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        for perm in (0..5).permutations(5) {
            let h = g.relabel(&perm).unwrap();
            assert!(are_isomorphic(&g, &h).unwrap());
        }
    }

    #[test]
    fn deck_of_triangle() {
        let d = deck(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(d.card_count(), 3);
        assert_eq!(d.cards().len(), 1);
        let (card, mult) = d.cards()[0];
        assert_eq!(mult, 3);
        assert_eq!(card, canonical_form(&Graph::complete(2).unwrap()).unwrap());
    }

    #[test]
    fn deck_of_path3() {
        let d = deck(&Graph::path(3).unwrap()).unwrap();
        let k2 = canonical_form(&Graph::complete(2).unwrap()).unwrap();
        let e2 = canonical_form(&Graph::edgeless(2).unwrap()).unwrap();
        assert_eq!(d.cards(), &[(e2, 1), (k2, 2)]);
    }

    #[test]
    fn classical_two_vertex_collision() {
        // deck(K2) = deck(2K1) = {K1, K1}: reconstruction fails at n = 2.
        let k2 = Graph::complete(2).unwrap();
        let e2 = Graph::edgeless(2).unwrap();
        assert_eq!(deck(&k2).unwrap(), deck(&e2).unwrap());
        assert!(!are_isomorphic(&k2, &e2).unwrap());
    }

    #[test]
    fn deck_needs_two_vertices() {
        assert_eq!(deck(&Graph::edgeless(1).unwrap()), Err(Error::DeckUndefined));
    }

    #[test]
    fn deck_is_relabeling_invariant() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        for perm in [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3]] {
            let h = g.relabel(&perm).unwrap();
            assert_eq!(deck(&g).unwrap(), deck(&h).unwrap());
        }
    }
}

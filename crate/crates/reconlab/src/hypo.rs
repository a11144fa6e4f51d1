//! Hypomorphism detection, enumeration of card-valid vertex matchings,
//! exhaustive small-graph enumeration, and the deck-collision search for
//! hypomorphic non-isomorphic pairs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, deck, CanonicalForm, Deck};
use crate::error::Error;
use crate::graph::{Bits, Graph};

/// Largest `n` for which the built-in exhaustive enumeration over all
/// `2^(n choose 2)` adjacency masks runs; larger corpora are ingested
/// externally.
pub const ENUMERATION_VERTEX_CAP: usize = 7;

/// Default cap on enumerated card-valid matchings; automorphism-rich graphs
/// have factorially many.
pub const DEFAULT_MATCHING_CAP: usize = 10_000;

/// A bijection on vertex indices: vertex `i` of the first graph corresponds
/// to vertex `sigma(i)` of the second.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(Vec<usize>);

impl Matching {
    pub fn new(sigma: Vec<usize>) -> Result<Self, Error> {
        let n = sigma.len();
        let mut seen = 0u64;
        for &v in &sigma {
            if v >= n || seen & (1 << v) != 0 {
                return Err(Error::NotAPermutation { value: v });
            }
            seen |= 1 << v;
        }
        Ok(Matching(sigma))
    }

    pub fn identity(n: usize) -> Self {
        Matching((0..n).collect())
    }

    pub fn map(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Card-valid matchings in lexicographic order, with a flag set when the
/// enumeration was cut off at the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingEnumeration {
    pub matchings: Vec<Matching>,
    pub truncated: bool,
}

/// True iff the graphs have equal decks as multisets. Unequal vertex counts
/// give `false`, not an error.
pub fn are_hypomorphic(g: &Graph, h: &Graph) -> Result<bool, Error> {
    if g.vertex_count() != h.vertex_count() {
        return Ok(false);
    }
    Ok(deck(g)? == deck(h)?)
}

/// Checks the card-validity invariant: the i-th card of `g` is isomorphic to
/// the `sigma(i)`-th card of `h` for every `i`.
pub fn is_card_valid(g: &Graph, h: &Graph, sigma: &Matching) -> Result<bool, Error> {
    if g.vertex_count() != h.vertex_count() {
        return Err(Error::VertexCountMismatch {
            left: g.vertex_count(),
            right: h.vertex_count(),
        });
    }
    if sigma.len() != g.vertex_count() {
        return Err(Error::PermutationLengthMismatch { len: sigma.len(), n: g.vertex_count() });
    }
    let g_cards = card_forms(g)?;
    let h_cards = card_forms(h)?;
    Ok((0..g.vertex_count()).all(|i| g_cards[i] == h_cards[sigma.map(i)]))
}

pub(crate) fn card_forms(g: &Graph) -> Result<Vec<CanonicalForm>, Error> {
    if g.vertex_count() < 2 {
        return Err(Error::DeckUndefined);
    }
    (0..g.vertex_count())
        .map(|v| canonical_form(&g.delete_vertex(v).expect("vertex in range")))
        .collect()
}

/// Enumerates perfect matchings of the card-compatibility relation
/// `{(i, j) : G_i isomorphic to H_j}` in lexicographic order, up to `cap`.
/// Hypomorphic inputs always admit at least one matching; non-hypomorphic
/// inputs are rejected.
pub fn card_valid_matchings(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<MatchingEnumeration, Error> {
    if !are_hypomorphic(g, h)? {
        return Err(Error::NotHypomorphic);
    }
    let n = g.vertex_count();
    let g_cards = card_forms(g)?;
    let h_cards = card_forms(h)?;
    let compat: Vec<u64> = (0..n)
        .map(|i| {
            let mut row = 0u64;
            for (j, h_card) in h_cards.iter().enumerate() {
                if g_cards[i] == *h_card {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();

    let mut found: Vec<Matching> = Vec::new();
    let mut sigma = vec![0usize; n];
    // Collect one past the cap so truncation is reported exactly.
    extend_matching(&compat, 0, 0, &mut sigma, cap + 1, &mut found);
    let truncated = found.len() > cap;
    found.truncate(cap);
    Ok(MatchingEnumeration { matchings: found, truncated })
}

fn extend_matching(
    compat: &[u64],
    pos: usize,
    used: u64,
    sigma: &mut Vec<usize>,
    limit: usize,
    found: &mut Vec<Matching>,
) {
    if found.len() >= limit {
        return;
    }
    if pos == compat.len() {
        found.push(Matching(sigma.clone()));
        return;
    }
    for j in Bits(compat[pos] & !used) {
        sigma[pos] = j;
        extend_matching(compat, pos + 1, used | (1 << j), sigma, limit, found);
        if found.len() >= limit {
            return;
        }
    }
}

/// Iterates one representative per isomorphism class over all
/// `2^(n choose 2)` labeled adjacency masks, in ascending order of the
/// minimal mask of each class.
///
/// Rather than canonicalizing every mask, the iterator sweeps the mask space
/// and marks the whole relabeling orbit of each unseen mask (breadth-first
/// under a transposition and a rotation, which generate all permutations).
/// Every mask is visited exactly once, so the representatives are exactly
/// one per class.
pub struct GraphClasses {
    n: usize,
    mask_count: u64,
    next_code: u64,
    seen: Vec<u64>,
    generators: Vec<Vec<usize>>,
    scratch: Vec<u64>,
}

impl GraphClasses {
    fn new(n: usize) -> Self {
        let m = n * (n - 1) / 2;
        let mask_count = 1u64 << m;
        let mut generators = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            generators.push(perm_bit_map(n, &swap));
            let rotate: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
            generators.push(perm_bit_map(n, &rotate));
        }
        GraphClasses {
            n,
            mask_count,
            next_code: 0,
            seen: vec![0u64; (mask_count as usize).div_ceil(64)],
            generators,
            scratch: Vec::new(),
        }
    }

    fn is_seen(&self, code: u64) -> bool {
        self.seen[(code / 64) as usize] & (1 << (code % 64)) != 0
    }

    fn mark(&mut self, code: u64) {
        self.seen[(code / 64) as usize] |= 1 << (code % 64);
    }

    fn mark_orbit(&mut self, code: u64) {
        self.scratch.clear();
        self.scratch.push(code);
        self.mark(code);
        while let Some(c) = self.scratch.pop() {
            for gi in 0..self.generators.len() {
                let mut image = 0u64;
                for b in Bits(c) {
                    image |= 1 << self.generators[gi][b];
                }
                if !self.is_seen(image) {
                    self.mark(image);
                    self.scratch.push(image);
                }
            }
        }
    }
}

impl Iterator for GraphClasses {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_code < self.mask_count {
            let code = self.next_code;
            self.next_code += 1;
            if self.is_seen(code) {
                continue;
            }
            self.mark_orbit(code);
            return Some(Graph::from_triangle_code(self.n, code));
        }
        None
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Bit-position map of a vertex permutation acting on packed triangle codes.
fn perm_bit_map(n: usize, perm: &[usize]) -> Vec<usize> {
    let m = n * (n - 1) / 2;
    let mut map = vec![0usize; m];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            map[m - 1 - pair_index(n, i, j)] = m - 1 - pair_index(n, a, b);
        }
    }
    map
}

/// One representative per isomorphism class on `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<GraphClasses, Error> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > ENUMERATION_VERTEX_CAP {
        return Err(Error::EnumerationCapExceeded { n, cap: ENUMERATION_VERTEX_CAP });
    }
    Ok(GraphClasses::new(n))
}

/// Outcome of a hypomorphic-pair search over one vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSearchResult {
    pub n: usize,
    /// Distinct isomorphism classes examined.
    pub class_count: usize,
    /// Deck-equality groups holding at least two distinct classes.
    pub deck_collision_buckets: usize,
    /// Non-isomorphic hypomorphic pairs, ascending by canonical form.
    pub pairs: Vec<(CanonicalForm, CanonicalForm)>,
}

/// Exhaustive search for non-isomorphic hypomorphic pairs on `n` vertices.
pub fn find_hypomorphic_pairs(n: usize) -> Result<PairSearchResult, Error> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > ENUMERATION_VERTEX_CAP {
        return Err(Error::EnumerationCapExceeded { n, cap: ENUMERATION_VERTEX_CAP });
    }
    let classes: Vec<Graph> = enumerate_graphs(n)?.collect();
    find_hypomorphic_pairs_among(&classes)
}

/// Deck-collision search over an externally supplied graph list (for
/// corpora beyond the built-in enumeration cap). Inputs are deduplicated to
/// isomorphism classes first; all graphs must share one vertex count.
///
/// Buckets are keyed by the deck itself in a hash map, so hashing is the
/// fingerprint and full multiset equality is re-verified on every collision
/// before a pair is reported.
pub fn find_hypomorphic_pairs_among(graphs: &[Graph]) -> Result<PairSearchResult, Error> {
    let Some(first) = graphs.first() else {
        return Err(Error::EmptyGraphList);
    };
    let n = first.vertex_count();
    for g in graphs {
        if g.vertex_count() != n {
            return Err(Error::MixedVertexCounts { expected: n, found: g.vertex_count() });
        }
    }

    let forms: Vec<CanonicalForm> =
        graphs.par_iter().map(canonical_form).collect::<Result<_, _>>()?;
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut reps: Vec<(CanonicalForm, &Graph)> = Vec::new();
    for (form, g) in forms.into_iter().zip(graphs) {
        if seen.insert(form) {
            reps.push((form, g));
        }
    }

    let decks: Vec<Deck> = reps.par_iter().map(|(_, g)| deck(g)).collect::<Result<_, _>>()?;

    let mut buckets: HashMap<&Deck, Vec<CanonicalForm>> = HashMap::new();
    for (deck, &(form, _)) in decks.iter().zip(reps.iter()) {
        buckets.entry(deck).or_default().push(form);
    }

    let mut deck_collision_buckets = 0;
    let mut pairs = Vec::new();
    for group in buckets.values() {
        if group.len() < 2 {
            continue;
        }
        deck_collision_buckets += 1;
        let mut members = group.clone();
        members.sort();
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                pairs.push((members[a], members[b]));
            }
        }
    }
    pairs.sort();

    Ok(PairSearchResult { n, class_count: reps.len(), deck_collision_buckets, pairs })
}

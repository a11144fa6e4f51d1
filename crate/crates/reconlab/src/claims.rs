//! The claim registry: structural propositions about a pair of graphs under
//! a card-valid matching (or about a single graph), each evaluated exactly
//! and reported with a re-checkable counterexample witness on failure.
//!
//! Pair claims compare the two graphs through a matching `sigma`:
//! C1 edge counts, C2 per-vertex degrees, C3 sorted degree sequences,
//! C4 Eulerian equivalence, C6 cutnode/block agreement (connected inputs
//! only), C7 component counts, C8 per-vertex path counts, C9 per-pair path
//! counts, and C10 adjacency recovery. Single-graph claims need no
//! matching: C5 is the path-sum identity and C7b the vertex-deleted
//! component-count formula, the latter evaluated both restricted to
//! connected graphs and unrestricted — the unrestricted run surfaces the
//! isolated-vertex gap instead of patching it.
//!
//! All comparisons are exact integer or boolean equalities; there are no
//! tolerances anywhere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;
use crate::hypo::{card_forms, card_valid_matchings, Matching};
use crate::paths::{check_path_sum_identity, count_paths_at, count_paths_pair};

/// Identifiers of the verifiable claims.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum ClaimId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C7b,
    C8,
    C9,
    C10,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C7b,
        ClaimId::C8,
        ClaimId::C9,
        ClaimId::C10,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClaimId::C1 => "C1",
            ClaimId::C2 => "C2",
            ClaimId::C3 => "C3",
            ClaimId::C4 => "C4",
            ClaimId::C5 => "C5",
            ClaimId::C6 => "C6",
            ClaimId::C7 => "C7",
            ClaimId::C7b => "C7b",
            ClaimId::C8 => "C8",
            ClaimId::C9 => "C9",
            ClaimId::C10 => "C10",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ClaimId::C1 => "edge count equality",
            ClaimId::C2 => "matched vertex degrees",
            ClaimId::C3 => "degree sequence equality",
            ClaimId::C4 => "Eulerian equivalence",
            ClaimId::C5 => "path-sum identity",
            ClaimId::C6 => "cutnode and block agreement",
            ClaimId::C7 => "component count equality",
            ClaimId::C7b => "vertex-deleted component formula",
            ClaimId::C8 => "per-vertex path counts",
            ClaimId::C9 => "per-pair path counts",
            ClaimId::C10 => "adjacency recovery",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Evaluation mode of a claim row. Only C7b uses the non-standard modes:
/// `ConnectedOnly` passes vacuously on disconnected graphs, `AllGraphs`
/// evaluates unconditionally.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    Standard,
    ConnectedOnly,
    AllGraphs,
}

/// A compared value inside a witness. Serialized untagged (a JSON bool,
/// number, or array); the deserializer is hand-written because untagged
/// derive cannot see through `u128`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Bool(bool),
    Count(u128),
    Sequence(Vec<u64>),
}

impl<'de> Deserialize<'de> for WitnessValue {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        struct ValueVisitor;

        impl<'de> serde::de::Visitor<'de> for ValueVisitor {
            type Value = WitnessValue;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a bool, a nonnegative integer, or an integer array")
            }

            fn visit_bool<E: serde::de::Error>(self, b: bool) -> Result<Self::Value, E> {
                Ok(WitnessValue::Bool(b))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(WitnessValue::Count(v.into()))
            }

            fn visit_u128<E: serde::de::Error>(self, v: u128) -> Result<Self::Value, E> {
                Ok(WitnessValue::Count(v))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Self::Value, E> {
                u128::try_from(v)
                    .map(WitnessValue::Count)
                    .map_err(|_| E::custom("witness counts are nonnegative"))
            }

            fn visit_seq<A>(self, mut seq: A) -> Result<Self::Value, A::Error>
            where
                A: serde::de::SeqAccess<'de>,
            {
                let mut items = Vec::new();
                while let Some(item) = seq.next_element::<u64>()? {
                    items.push(item);
                }
                Ok(WitnessValue::Sequence(items))
            }
        }

        deserializer.deserialize_any(ValueVisitor)
    }
}

/// The violating tuple of a failed claim: the vertex indices involved (in
/// the first graph's labeling), the path length when applicable, and the
/// two unequal values. Re-evaluating the quoted quantities reproduces
/// `left != right`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub length: Option<usize>,
    pub left: WitnessValue,
    pub right: WitnessValue,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub mode: EvalMode,
    pub matching: Option<Matching>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Stop at the first failing claim instead of reporting all of them.
    pub fail_fast: bool,
    /// Extend the path-count claims C8/C9 to `l = n - 1` as a diagnostic;
    /// the standard range is `1..=n-2`.
    pub extended_length: bool,
}

/// Per-claim verdicts quantified over all examined card-valid matchings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuantifiedClaim {
    pub claim: ClaimId,
    pub mode: EvalMode,
    pub holds_for_all: bool,
    pub holds_for_some: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuantifiedReport {
    pub rows: Vec<QuantifiedClaim>,
    pub matchings_examined: usize,
    pub truncated: bool,
}

impl QuantifiedReport {
    pub fn row(&self, claim: ClaimId, mode: EvalMode) -> Option<&QuantifiedClaim> {
        self.rows.iter().find(|r| r.claim == claim && r.mode == mode)
    }
}

/// Evaluates the pair claims C1-C4, C6-C10 for `(g, h)` under `sigma`, in
/// that fixed order, reporting every claim (no short-circuit) unless
/// `fail_fast` is set. The matching is validated before any claim runs.
pub fn verify_claims(g: &Graph, h: &Graph, sigma: &Matching) -> Result<Vec<ClaimReport>, Error> {
    verify_claims_with(g, h, sigma, VerifyOptions::default())
}

pub fn verify_claims_with(
    g: &Graph,
    h: &Graph,
    sigma: &Matching,
    opts: VerifyOptions,
) -> Result<Vec<ClaimReport>, Error> {
    let n = g.vertex_count();
    if h.vertex_count() != n {
        return Err(Error::VertexCountMismatch { left: n, right: h.vertex_count() });
    }
    if n < 3 {
        return Err(Error::TooFewVerticesForClaims { n });
    }
    if sigma.len() != n {
        return Err(Error::PermutationLengthMismatch { len: sigma.len(), n });
    }
    let g_cards = card_forms(g)?;
    let h_cards = card_forms(h)?;
    for i in 0..n {
        if g_cards[i] != h_cards[sigma.map(i)] {
            return Err(Error::MatchingNotCardValid { index: i });
        }
    }

    let len_max = if opts.extended_length { n - 1 } else { n - 2 };
    type Check<'a> = (ClaimId, Box<dyn Fn() -> Option<Witness> + 'a>);
    let checks: [Check; 9] = [
        (ClaimId::C1, Box::new(|| edge_count_witness(g, h))),
        (ClaimId::C2, Box::new(|| degree_witness(g, h, sigma))),
        (ClaimId::C3, Box::new(|| degree_sequence_witness(g, h))),
        (ClaimId::C4, Box::new(|| eulerian_witness(g, h))),
        (ClaimId::C6, Box::new(|| cutnode_block_witness(g, h, sigma))),
        (ClaimId::C7, Box::new(|| component_witness(g, h))),
        (ClaimId::C8, Box::new(|| vertex_path_witness(g, h, sigma, len_max))),
        (ClaimId::C9, Box::new(|| pair_path_witness(g, h, sigma, len_max))),
        (ClaimId::C10, Box::new(|| adjacency_witness(g, h, sigma))),
    ];

    let mut reports = Vec::with_capacity(checks.len());
    for (claim, check) in checks {
        let witness = check();
        let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
        reports.push(ClaimReport {
            claim,
            mode: EvalMode::Standard,
            matching: Some(sigma.clone()),
            verdict,
            witness,
        });
        if opts.fail_fast && verdict == Verdict::Fail {
            break;
        }
    }
    Ok(reports)
}

/// Evaluates the matching-free claims on one graph: C5 for every vertex and
/// `1 <= l <= n-2`, then C7b in connected-only and all-graphs modes.
pub fn verify_single_graph_claims(g: &Graph) -> Result<Vec<ClaimReport>, Error> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVerticesForClaims { n });
    }

    let mut reports = Vec::with_capacity(3);

    let mut witness = None;
    'outer: for focus in 0..n {
        for len in 1..=n - 2 {
            let residual = check_path_sum_identity(g, focus, len)?;
            if residual != 0 {
                let mut sum = 0u128;
                for other in 0..n {
                    if other != focus {
                        sum += count_paths_pair(g, focus, other, len)?;
                    }
                }
                let scaled = len as u128 * count_paths_at(g, focus, len)?;
                witness = Some(Witness {
                    vertices: vec![focus],
                    length: Some(len),
                    left: WitnessValue::Count(sum),
                    right: WitnessValue::Count(scaled),
                });
                break 'outer;
            }
        }
    }
    reports.push(single_report(ClaimId::C5, EvalMode::Standard, witness));

    let connected_witness =
        if g.is_connected() { component_formula_witness(g) } else { None };
    reports.push(single_report(ClaimId::C7b, EvalMode::ConnectedOnly, connected_witness));
    reports.push(single_report(ClaimId::C7b, EvalMode::AllGraphs, component_formula_witness(g)));

    Ok(reports)
}

fn single_report(claim: ClaimId, mode: EvalMode, witness: Option<Witness>) -> ClaimReport {
    ClaimReport {
        claim,
        mode,
        matching: None,
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
    }
}

/// Runs `verify_claims` for every card-valid matching (up to `cap`) and the
/// single-graph claims on both inputs, recording for-all/for-some verdicts
/// per claim. Matchings are evaluated independently and in parallel; the
/// aggregation is order-independent, so reports are deterministic.
pub fn aggregate_over_matchings(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<QuantifiedReport, Error> {
    let n = g.vertex_count();
    if h.vertex_count() != n {
        return Err(Error::VertexCountMismatch { left: n, right: h.vertex_count() });
    }
    if n < 3 {
        return Err(Error::TooFewVerticesForClaims { n });
    }
    let enumeration = card_valid_matchings(g, h, cap)?;

    const PAIR_CLAIMS: [ClaimId; 9] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C8,
        ClaimId::C9,
        ClaimId::C10,
    ];

    let per_matching: Vec<[bool; 9]> = enumeration
        .matchings
        .par_iter()
        .map(|sigma| {
            let reports = verify_claims(g, h, sigma)?;
            let mut passes = [false; 9];
            for (slot, report) in passes.iter_mut().zip(&reports) {
                *slot = report.passed();
            }
            Ok(passes)
        })
        .collect::<Result<_, Error>>()?;

    let mut for_all = [true; 9];
    let mut for_some = [false; 9];
    for passes in &per_matching {
        for k in 0..9 {
            for_all[k] &= passes[k];
            for_some[k] |= passes[k];
        }
    }

    let singles_g = verify_single_graph_claims(g)?;
    let singles_h = verify_single_graph_claims(h)?;
    let single_row = |claim: ClaimId, mode: EvalMode| -> QuantifiedClaim {
        let pass = singles_g
            .iter()
            .chain(&singles_h)
            .filter(|r| r.claim == claim && r.mode == mode)
            .all(|r| r.passed());
        QuantifiedClaim { claim, mode, holds_for_all: pass, holds_for_some: pass }
    };
    let pair_row = |claim: ClaimId| -> QuantifiedClaim {
        let k = PAIR_CLAIMS.iter().position(|&c| c == claim).expect("pair claim");
        QuantifiedClaim {
            claim,
            mode: EvalMode::Standard,
            holds_for_all: for_all[k],
            holds_for_some: for_some[k],
        }
    };

    let rows = vec![
        pair_row(ClaimId::C1),
        pair_row(ClaimId::C2),
        pair_row(ClaimId::C3),
        pair_row(ClaimId::C4),
        single_row(ClaimId::C5, EvalMode::Standard),
        pair_row(ClaimId::C6),
        pair_row(ClaimId::C7),
        single_row(ClaimId::C7b, EvalMode::ConnectedOnly),
        single_row(ClaimId::C7b, EvalMode::AllGraphs),
        pair_row(ClaimId::C8),
        pair_row(ClaimId::C9),
        pair_row(ClaimId::C10),
    ];

    Ok(QuantifiedReport {
        rows,
        matchings_examined: enumeration.matchings.len(),
        truncated: enumeration.truncated,
    })
}

fn edge_count_witness(g: &Graph, h: &Graph) -> Option<Witness> {
    let (a, b) = (g.edge_count(), h.edge_count());
    (a != b).then(|| Witness {
        vertices: vec![],
        length: None,
        left: WitnessValue::Count(a as u128),
        right: WitnessValue::Count(b as u128),
    })
}

fn degree_witness(g: &Graph, h: &Graph, sigma: &Matching) -> Option<Witness> {
    for v in 0..g.vertex_count() {
        let (a, b) = (g.degree(v), h.degree(sigma.map(v)));
        if a != b {
            return Some(Witness {
                vertices: vec![v],
                length: None,
                left: WitnessValue::Count(a as u128),
                right: WitnessValue::Count(b as u128),
            });
        }
    }
    None
}

fn sorted_degrees(g: &Graph) -> Vec<u64> {
    let mut degrees: Vec<u64> = (0..g.vertex_count()).map(|v| g.degree(v) as u64).collect();
    degrees.sort_unstable();
    degrees
}

fn degree_sequence_witness(g: &Graph, h: &Graph) -> Option<Witness> {
    let (a, b) = (sorted_degrees(g), sorted_degrees(h));
    (a != b).then(|| Witness {
        vertices: vec![],
        length: None,
        left: WitnessValue::Sequence(a),
        right: WitnessValue::Sequence(b),
    })
}

fn eulerian_witness(g: &Graph, h: &Graph) -> Option<Witness> {
    let (a, b) = (g.is_eulerian(), h.is_eulerian());
    (a != b).then(|| Witness {
        vertices: vec![],
        length: None,
        left: WitnessValue::Bool(a),
        right: WitnessValue::Bool(b),
    })
}

/// C6 applies to connected pairs only; on any disconnected input the claim
/// passes vacuously.
fn cutnode_block_witness(g: &Graph, h: &Graph, sigma: &Matching) -> Option<Witness> {
    if !g.is_connected() || !h.is_connected() {
        return None;
    }
    for v in 0..g.vertex_count() {
        let (a, b) = (g.is_cutnode(v), h.is_cutnode(sigma.map(v)));
        if a != b {
            return Some(Witness {
                vertices: vec![v],
                length: None,
                left: WitnessValue::Bool(a),
                right: WitnessValue::Bool(b),
            });
        }
        let (ba, bb) = (g.block_count_at(v), h.block_count_at(sigma.map(v)));
        if ba != bb {
            return Some(Witness {
                vertices: vec![v],
                length: None,
                left: WitnessValue::Count(ba as u128),
                right: WitnessValue::Count(bb as u128),
            });
        }
    }
    None
}

fn component_witness(g: &Graph, h: &Graph) -> Option<Witness> {
    let (a, b) = (g.component_count(), h.component_count());
    (a != b).then(|| Witness {
        vertices: vec![],
        length: None,
        left: WitnessValue::Count(a as u128),
        right: WitnessValue::Count(b as u128),
    })
}

fn vertex_path_witness(g: &Graph, h: &Graph, sigma: &Matching, len_max: usize) -> Option<Witness> {
    for len in 1..=len_max {
        for v in 0..g.vertex_count() {
            let a = count_paths_at(g, v, len).expect("validated range");
            let b = count_paths_at(h, sigma.map(v), len).expect("validated range");
            if a != b {
                return Some(Witness {
                    vertices: vec![v],
                    length: Some(len),
                    left: WitnessValue::Count(a),
                    right: WitnessValue::Count(b),
                });
            }
        }
    }
    None
}

fn pair_path_witness(g: &Graph, h: &Graph, sigma: &Matching, len_max: usize) -> Option<Witness> {
    let n = g.vertex_count();
    for len in 1..=len_max {
        for a in 0..n {
            for b in a + 1..n {
                let x = count_paths_pair(g, a, b, len).expect("validated range");
                let y = count_paths_pair(h, sigma.map(a), sigma.map(b), len).expect("validated range");
                if x != y {
                    return Some(Witness {
                        vertices: vec![a, b],
                        length: Some(len),
                        left: WitnessValue::Count(x),
                        right: WitnessValue::Count(y),
                    });
                }
            }
        }
    }
    None
}

fn adjacency_witness(g: &Graph, h: &Graph, sigma: &Matching) -> Option<Witness> {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (g.has_edge(a, b), h.has_edge(sigma.map(a), sigma.map(b)));
            if x != y {
                return Some(Witness {
                    vertices: vec![a, b],
                    length: None,
                    left: WitnessValue::Bool(x),
                    right: WitnessValue::Bool(y),
                });
            }
        }
    }
    None
}

/// First violation of `c(G - v) = c(G) + bl(v) - 1` over all vertices.
fn component_formula_witness(g: &Graph) -> Option<Witness> {
    let base = g.component_count();
    for v in 0..g.vertex_count() {
        let lhs = g.delete_vertex(v).expect("vertex in range").component_count();
        let rhs = base + g.block_count_at(v) - 1;
        if lhs != rhs {
            return Some(Witness {
                vertices: vec![v],
                length: None,
                left: WitnessValue::Count(lhs as u128),
                right: WitnessValue::Count(rhs as u128),
            });
        }
    }
    None
}

//! A verification laboratory for deck-based graph reconstruction at desk
//! scale: decks of vertex-deleted cards, hypomorphism detection, card-valid
//! matching enumeration, exact simple-path counting with an independent
//! oracle, exhaustive small-graph enumeration, and a registry of
//! machine-checked structural claims with counterexample witnesses.
//!
//! Everything operates on exact integers and booleans over immutable
//! [`Graph`] values; all operations are pure and safe to call from any
//! number of threads.

pub mod canon;
pub mod claims;
pub mod error;
pub mod graph;
pub mod hypo;
pub mod paths;

pub use canon::{are_isomorphic, canonical_form, deck, CanonicalForm, Deck, CANON_VERTEX_CAP};
pub use claims::{
    aggregate_over_matchings, verify_claims, verify_claims_with, verify_single_graph_claims,
    ClaimId, ClaimReport, EvalMode, QuantifiedClaim, QuantifiedReport, Verdict, VerifyOptions,
    Witness, WitnessValue,
};
pub use error::Error;
pub use graph::{Graph, MAX_VERTICES};
pub use hypo::{
    are_hypomorphic, card_valid_matchings, enumerate_graphs, find_hypomorphic_pairs,
    find_hypomorphic_pairs_among, is_card_valid, GraphClasses, Matching, MatchingEnumeration,
    PairSearchResult, DEFAULT_MATCHING_CAP, ENUMERATION_VERTEX_CAP,
};
pub use paths::{
    check_path_sum_identity, count_paths_at, count_paths_at_oracle, count_paths_pair,
    count_paths_pair_oracle, ORACLE_PATH_VERTEX_CAP,
};

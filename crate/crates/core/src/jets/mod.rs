//! Hasse–Schmidt and Lazardian jets.

pub mod expr;
pub mod hs;
pub mod lazardian;

pub use expr::Expr;
pub use hs::{jet_of, lemma63_check, lemma63_sides, JetRing, TruncatedSeries};
pub use lazardian::{eps_prime, evaluate_in_witt, lazardian_jets, LazardianJetRing};

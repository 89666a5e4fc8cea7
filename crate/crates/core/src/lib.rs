//! Regular languages four ways.
//!
//! This crate computes and cross-checks the four classical presentations of a
//! regular language:
//!
//! * **derivatives** — left quotients of an extended regular expression,
//!   explored up to semantic equality ([`language`]),
//! * **finite automata** — minimal pointed automata, obtained both by
//!   derivative closure and by partition refinement ([`automata`]),
//! * **finite monoids** — transition and syntactic monoids with recognizing
//!   subsets ([`monoid`]),
//! * **profinite approximations** — finite quotient systems with clopen
//!   recognizers and omega-term evaluation ([`profinite`]).
//!
//! The [`bridge`] module builds all four witnesses for an input language and
//! verifies that they agree.

pub mod alphabet;
pub mod automata;
pub mod bridge;
pub mod corpus;
pub mod language;
pub mod monoid;
pub mod profinite;
pub mod sigma;

mod dsu;

pub use alphabet::{Alphabet, Word};
pub use automata::{Automaton, Equivalence, PointedAutomaton, RegularityResult};
pub use bridge::{
    four_witnesses, verify_bridge, verify_bridge_seeded, BridgeReport, FourWitnesses,
};
pub use language::{Ast, Language};
pub use monoid::{
    syntactic_monoid, transition_monoid, Divisibility, FiniteMonoid, MonoidRecognizer, SigmaMonoid,
};
pub use profinite::{
    separate, ClopenRecognizer, OmegaTerm, ProfiniteSystem, ProfiniteWordApprox, Separation,
};
pub use sigma::{LazySigmaSet, OrbitResult, Partition, SigmaSet, SigmaSetMorphism};

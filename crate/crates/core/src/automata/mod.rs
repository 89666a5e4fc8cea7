//! Automata as coalgebras over Σ-sets.
//!
//! An [`Automaton`] is a finite Σ-set with an accept subset — equivalently a
//! coalgebra `Q → 2 × Q^Σ`. A [`PointedAutomaton`] adds a start state.
//! Every state recognizes a language, and the assignment `q ↦ L_q` is the
//! unique equivariant map into the space of all languages; this module makes
//! that map executable ([`Automaton::language_of`]) and checkable
//! ([`recognition_family_check`]).
//!
//! Minimal automata are produced by two independent routes that must agree:
//! [`minimal_automaton`] closes a language under derivatives merging
//! semantically equal states, while [`PointedAutomaton::minimize`] refines
//! partitions of an arbitrary recognizer. Keeping the routes independent is
//! deliberate: each is the oracle for the other.

mod minimize;
mod symbolic;

pub use symbolic::{recognition_family_check, recognition_morphism_check};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::Word;
use crate::language::Language;
use crate::sigma::{
    derivative_sigma_set, dot_quote, LazySigmaSet, OrbitResult, SigmaError, SigmaSet, StateId,
};

/// Errors from constructing or comparing automata.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error("accept set contains invalid state index {index}")]
    BadAcceptState { index: usize },
    #[error("start state index {index} out of range")]
    BadStartState { index: usize },
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("language family has {found} entries, expected one per state ({expected})")]
    FamilyShape { expected: usize, found: usize },
}

/// A finite Σ-set with an accept subset `F ⊆ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonWire", into = "AutomatonWire")]
pub struct Automaton {
    carrier: SigmaSet,
    accept: BTreeSet<StateId>,
}

impl Automaton {
    pub fn new(
        carrier: SigmaSet,
        accept: impl IntoIterator<Item = StateId>,
    ) -> Result<Automaton, AutomataError> {
        let accept: BTreeSet<StateId> = accept.into_iter().collect();
        if let Some(&index) = accept.iter().find(|&&q| q >= carrier.len()) {
            return Err(AutomataError::BadAcceptState { index });
        }
        Ok(Automaton { carrier, accept })
    }

    pub fn carrier(&self) -> &SigmaSet {
        &self.carrier
    }

    pub fn accept(&self) -> &BTreeSet<StateId> {
        &self.accept
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accept.contains(&state)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Boolean form of recognition: does the run from `state` on `probe`
    /// end in the accept set?
    pub fn accepts_from(&self, state: StateId, probe: &Word) -> Result<bool, AutomataError> {
        Ok(self.is_accepting(self.carrier.run(state, probe)?))
    }

    /// DOT rendering: accepting states are double circles.
    pub fn to_dot(&self) -> String {
        self.to_dot_pointed(None)
    }

    fn to_dot_pointed(&self, start: Option<StateId>) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        if let Some(start) = start {
            let _ = writeln!(
                out,
                "  __start [shape=point];\n  __start -> {};",
                dot_quote(self.carrier.name(start))
            );
        }
        for (q, name) in self.carrier.names().iter().enumerate() {
            let shape = if self.is_accepting(q) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {} [shape={shape}];", dot_quote(name));
        }
        self.carrier.write_dot_edges(&mut out);
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct AutomatonWire {
    #[serde(flatten)]
    carrier: SigmaSet,
    accept: Vec<String>,
}

impl TryFrom<AutomatonWire> for Automaton {
    type Error = AutomataError;

    fn try_from(wire: AutomatonWire) -> Result<Automaton, AutomataError> {
        let mut accept = BTreeSet::new();
        for name in wire.accept {
            let index = wire
                .carrier
                .index_of(&name)
                .ok_or(SigmaError::UnknownState { name })?;
            accept.insert(index);
        }
        Ok(Automaton {
            carrier: wire.carrier,
            accept,
        })
    }
}

impl From<Automaton> for AutomatonWire {
    fn from(a: Automaton) -> AutomatonWire {
        AutomatonWire {
            accept: a
                .accept
                .iter()
                .map(|&q| a.carrier.name(q).to_string())
                .collect(),
            carrier: a.carrier,
        }
    }
}

/// An automaton with a start state (always at least one state).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointedAutomatonWire", into = "PointedAutomatonWire")]
pub struct PointedAutomaton {
    automaton: Automaton,
    start: StateId,
}

#[derive(Serialize, Deserialize)]
struct PointedAutomatonWire {
    #[serde(flatten)]
    automaton: Automaton,
    start: String,
}

impl TryFrom<PointedAutomatonWire> for PointedAutomaton {
    type Error = AutomataError;

    fn try_from(wire: PointedAutomatonWire) -> Result<PointedAutomaton, AutomataError> {
        let start = wire
            .automaton
            .carrier
            .index_of(&wire.start)
            .ok_or(SigmaError::UnknownState { name: wire.start })?;
        PointedAutomaton::new(wire.automaton, start)
    }
}

impl From<PointedAutomaton> for PointedAutomatonWire {
    fn from(a: PointedAutomaton) -> PointedAutomatonWire {
        PointedAutomatonWire {
            start: a.automaton.carrier.name(a.start).to_string(),
            automaton: a.automaton,
        }
    }
}

/// Outcome of comparing two pointed automata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// The shortlex-least word accepted by exactly one of the two.
    Inequivalent(Word),
}

/// Outcome of deciding regularity of a lazily-presented language within a
/// state budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityResult {
    Regular {
        minimal: PointedAutomaton,
        /// Number of left-quotient classes; equals the minimal state count.
        nerode_class_count: usize,
    },
    Unknown {
        bound_hit: usize,
    },
}

impl PointedAutomaton {
    pub fn new(automaton: Automaton, start: StateId) -> Result<PointedAutomaton, AutomataError> {
        if start >= automaton.len() {
            return Err(AutomataError::BadStartState { index: start });
        }
        Ok(PointedAutomaton { automaton, start })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn carrier(&self) -> &SigmaSet {
        &self.automaton.carrier
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn len(&self) -> usize {
        self.automaton.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, AutomataError> {
        self.automaton.accepts_from(self.start, word)
    }

    /// The language recognized from the start state, as an expression.
    pub fn language(&self) -> Language {
        self.automaton.language_of(self.start)
    }

    /// Product construction accepting when either factor accepts.
    pub fn union(&self, other: &PointedAutomaton) -> Result<PointedAutomaton, AutomataError> {
        self.combine(other, |in1, in2| in1 || in2)
    }

    /// Product construction accepting when both factors accept.
    pub fn intersect(&self, other: &PointedAutomaton) -> Result<PointedAutomaton, AutomataError> {
        self.combine(other, |in1, in2| in1 && in2)
    }

    fn combine(
        &self,
        other: &PointedAutomaton,
        keep: impl Fn(bool, bool) -> bool,
    ) -> Result<PointedAutomaton, AutomataError> {
        let (carrier, _, _) = crate::sigma::product(self.carrier(), other.carrier())
            .map_err(|_| AutomataError::AlphabetMismatch)?;
        let n2 = other.len();
        let accept = (0..self.len())
            .flat_map(|p| (0..n2).map(move |q| (p, q)))
            .filter(|&(p, q)| keep(self.automaton.is_accepting(p), other.automaton.is_accepting(q)))
            .map(|(p, q)| p * n2 + q);
        let automaton = Automaton::new(carrier, accept)?;
        PointedAutomaton::new(automaton, self.start * n2 + other.start)
    }

    /// Same carrier, complemented accept set. Sound because transition
    /// tables are total.
    pub fn complement(&self) -> PointedAutomaton {
        let accept = (0..self.len()).filter(|&q| !self.automaton.is_accepting(q));
        PointedAutomaton {
            automaton: Automaton::new(self.automaton.carrier.clone(), accept)
                .expect("indices in range"),
            start: self.start,
        }
    }

    /// Language equality, with the shortlex-least separating word on
    /// failure. Breadth-first search over the product of the state spaces;
    /// pairs are discovered in shortlex order of their access words, so the
    /// first acceptance mismatch yields the least separating word.
    pub fn equivalent(&self, other: &PointedAutomaton) -> Result<Equivalence, AutomataError> {
        if self.carrier().alphabet() != other.carrier().alphabet() {
            return Err(AutomataError::AlphabetMismatch);
        }
        let alphabet = self.carrier().alphabet();
        let start = (self.start, other.start);
        let mut parents: HashMap<(StateId, StateId), ((StateId, StateId), char)> = HashMap::new();
        let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::new();
        let mut queue = VecDeque::new();

        let reconstruct = |pair: (StateId, StateId),
                           parents: &HashMap<(StateId, StateId), ((StateId, StateId), char)>|
         -> Word {
            let mut symbols = Vec::new();
            let mut current = pair;
            while current != start {
                let &(previous, symbol) = parents.get(&current).expect("path to start");
                symbols.push(symbol);
                current = previous;
            }
            symbols.reverse();
            Word::parse(&symbols.iter().collect::<String>(), alphabet)
                .expect("symbols from the alphabet")
        };

        seen.insert(start);
        queue.push_back(start);
        if self.automaton.is_accepting(self.start) != other.automaton.is_accepting(other.start) {
            return Ok(Equivalence::Inequivalent(Word::epsilon()));
        }
        while let Some((p, q)) = queue.pop_front() {
            for (i, &symbol) in alphabet.symbols().iter().enumerate() {
                let next = (
                    self.carrier().step_unchecked(p, i),
                    other.carrier().step_unchecked(q, i),
                );
                if seen.insert(next) {
                    parents.insert(next, ((p, q), symbol));
                    if self.automaton.is_accepting(next.0) != other.automaton.is_accepting(next.1)
                    {
                        return Ok(Equivalence::Inequivalent(reconstruct(next, &parents)));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(Equivalence::Equivalent)
    }

    /// Start-, accept-, and action-preserving bijection test on the
    /// reachable parts. For deterministic pointed automata such a bijection
    /// is unique if it exists, so one synchronized breadth-first pass
    /// decides it.
    pub fn isomorphic(&self, other: &PointedAutomaton) -> Result<bool, AutomataError> {
        if self.carrier().alphabet() != other.carrier().alphabet() {
            return Err(AutomataError::AlphabetMismatch);
        }
        let a = self.trim();
        let b = other.trim();
        if a.len() != b.len() {
            return Ok(false);
        }
        let mut a_to_b: Vec<Option<StateId>> = vec![None; a.len()];
        let mut b_to_a: Vec<Option<StateId>> = vec![None; b.len()];
        let mut queue = VecDeque::new();
        a_to_b[a.start] = Some(b.start);
        b_to_a[b.start] = Some(a.start);
        queue.push_back((a.start, b.start));
        while let Some((p, q)) = queue.pop_front() {
            if a.automaton.is_accepting(p) != b.automaton.is_accepting(q) {
                return Ok(false);
            }
            for i in 0..a.carrier().alphabet().len() {
                let (p2, q2) = (
                    a.carrier().step_unchecked(p, i),
                    b.carrier().step_unchecked(q, i),
                );
                match (a_to_b[p2], b_to_a[q2]) {
                    (None, None) => {
                        a_to_b[p2] = Some(q2);
                        b_to_a[q2] = Some(p2);
                        queue.push_back((p2, q2));
                    }
                    (Some(mapped), Some(back)) if mapped == q2 && back == p2 => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// Restriction to the part reachable from the start state; the start
    /// becomes state 0 and names are preserved.
    pub(crate) fn trim(&self) -> PointedAutomaton {
        let OrbitResult::Finite(order) = self
            .carrier()
            .orbit(self.start, self.len())
            .expect("start state is valid")
        else {
            unreachable!("orbit of a finite Σ-set fits in its state count")
        };
        let mut reindex = vec![usize::MAX; self.len()];
        for (new, &old) in order.iter().enumerate() {
            reindex[old] = new;
        }
        let names = order
            .iter()
            .map(|&q| self.carrier().name(q).to_string())
            .collect();
        let alphabet = self.carrier().alphabet();
        let delta = order
            .iter()
            .map(|&q| {
                (0..alphabet.len())
                    .map(|i| reindex[self.carrier().step_unchecked(q, i)])
                    .collect()
            })
            .collect();
        let carrier =
            SigmaSet::new(alphabet.clone(), names, delta).expect("trimmed table stays valid");
        let accept = order
            .iter()
            .enumerate()
            .filter(|&(_, &old)| self.automaton.is_accepting(old))
            .map(|(new, _)| new);
        PointedAutomaton {
            automaton: Automaton::new(carrier, accept).expect("indices in range"),
            start: 0,
        }
    }

    /// DOT rendering with a start arrow and double-circled accept states.
    pub fn to_dot(&self) -> String {
        self.automaton.to_dot_pointed(Some(self.start))
    }
}

/// Runs the Moore machine `(S, output)` from `q` over `w` and observes the
/// final state: `g♭(q)(w) = output(q · w)`.
pub fn moore_run<O>(
    sigma: &SigmaSet,
    output: impl Fn(StateId) -> O,
    from: StateId,
    word: &Word,
) -> Result<O, SigmaError> {
    sigma.run(from, word).map(output)
}

/// The minimal automaton of a language, built by closing it under
/// derivatives with semantically equal states merged. States are named by
/// their expressions; the start state is the class of the language itself;
/// a class accepts iff it is nullable. The result is reachable and
/// pairwise distinguishable by construction.
pub fn minimal_automaton(language: &Language) -> PointedAutomaton {
    let lazy = derivative_sigma_set(language);
    automaton_from_orbit(&lazy, language)
}

/// Derivative-closure automaton that merges states only when their normal
/// forms are structurally identical — no semantic reasoning. Still finite
/// thanks to ACI normalization, but generally larger than minimal; serves
/// as an independently-built recognizer for cross-checking minimization.
pub fn naive_derivative_automaton(language: &Language) -> PointedAutomaton {
    let lazy = LazySigmaSet::new(
        language.alphabet().clone(),
        vec![language.clone()],
        |l: &Language, symbol| l.derivative(symbol).expect("symbol from the alphabet"),
    )
    .with_labels(|l: &Language| l.to_string());
    automaton_from_orbit(&lazy, language)
}

fn automaton_from_orbit(lazy: &LazySigmaSet<Language>, seed: &Language) -> PointedAutomaton {
    let OrbitResult::Finite(states) = lazy.orbit(seed, usize::MAX) else {
        unreachable!("derivative orbits are finite under ACI normalization")
    };
    let carrier = lazy.materialize(&states);
    let accept = states
        .iter()
        .enumerate()
        .filter(|(_, l)| l.nullable())
        .map(|(i, _)| i);
    let automaton = Automaton::new(carrier, accept).expect("indices in range");
    PointedAutomaton::new(automaton, 0).expect("seed state exists")
}

/// Decides regularity of a lazily-presented language within a state budget:
/// if the orbit of `state` closes with at most `bound` states the language
/// is regular and the minimal automaton is returned; otherwise the
/// exploration is inconclusive.
///
/// The materialized orbit is minimized before returning, so the class count
/// is exact even when the presentation's state equality is finer than
/// language equality.
pub fn is_regular<S: Clone>(
    presentation: &LazySigmaSet<S>,
    state: &S,
    accepting: impl Fn(&S) -> bool,
    bound: usize,
) -> RegularityResult {
    match presentation.orbit(state, bound) {
        OrbitResult::ExceededBound(_) => RegularityResult::Unknown { bound_hit: bound },
        OrbitResult::Finite(states) => {
            let carrier = presentation.materialize(&states);
            let accept = states
                .iter()
                .enumerate()
                .filter(|(_, s)| accepting(s))
                .map(|(i, _)| i);
            let automaton = Automaton::new(carrier, accept).expect("indices in range");
            let pointed = PointedAutomaton::new(automaton, 0).expect("state 0 is the seed");
            let minimal = pointed.minimize();
            let nerode_class_count = minimal.len();
            RegularityResult::Regular {
                minimal,
                nerode_class_count,
            }
        }
    }
}

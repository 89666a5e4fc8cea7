//! Lazily-presented Σ-sets: a possibly infinite state space given by seed
//! states and a pure step function, explored on demand.
//!
//! The motivating instance is the space of all languages with the left
//! quotient action `δ(L, a) = a⁻¹L` (see [`derivative_sigma_set`]); its
//! orbits are exactly the sets of word derivatives, so a state has a finite
//! orbit precisely when it denotes a regular language.

use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::language::Language;

use super::{OrbitResult, SigmaError, SigmaSet};

type StepFn<S> = Arc<dyn Fn(&S, char) -> S + Send + Sync>;
type EqualFn<S> = Arc<dyn Fn(&S, &S) -> bool + Send + Sync>;
type LabelFn<S> = Arc<dyn Fn(&S) -> String + Send + Sync>;

/// A Σ-set presented by seeds and a step function instead of a table.
///
/// `step` must be pure (deterministic, total for alphabet symbols); the
/// engine may call it from multiple threads. State identity is decided by
/// the configured equality, which defaults to `==` and may be refined (for
/// language states, to semantic equality) so that orbit sizes match the
/// underlying quotient rather than surface syntax.
#[derive(Clone)]
pub struct LazySigmaSet<S> {
    alphabet: Alphabet,
    seeds: Vec<S>,
    step: StepFn<S>,
    equal: EqualFn<S>,
    label: Option<LabelFn<S>>,
}

impl<S> fmt::Debug for LazySigmaSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazySigmaSet")
            .field("alphabet", &self.alphabet)
            .field("seeds", &self.seeds.len())
            .finish_non_exhaustive()
    }
}

impl<S: Clone + PartialEq + 'static> LazySigmaSet<S> {
    /// Presents a Σ-set by seeds and a step function, with `==` as state
    /// identity.
    pub fn new(
        alphabet: Alphabet,
        seeds: Vec<S>,
        step: impl Fn(&S, char) -> S + Send + Sync + 'static,
    ) -> LazySigmaSet<S> {
        LazySigmaSet {
            alphabet,
            seeds,
            step: Arc::new(step),
            equal: Arc::new(|a: &S, b: &S| a == b),
            label: None,
        }
    }
}

impl<S: Clone> LazySigmaSet<S> {
    /// Replaces state identity with a coarser (or finer) decidable equality.
    pub fn with_equality(
        mut self,
        equal: impl Fn(&S, &S) -> bool + Send + Sync + 'static,
    ) -> LazySigmaSet<S> {
        self.equal = Arc::new(equal);
        self
    }

    /// Names states when the orbit is materialized into a [`SigmaSet`].
    pub fn with_labels(
        mut self,
        label: impl Fn(&S) -> String + Send + Sync + 'static,
    ) -> LazySigmaSet<S> {
        self.label = Some(Arc::new(label));
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn seeds(&self) -> &[S] {
        &self.seeds
    }

    /// One step of the action.
    pub fn step(&self, state: &S, symbol: char) -> Result<S, SigmaError> {
        if !self.alphabet.contains(symbol) {
            return Err(SigmaError::ForeignSymbol { symbol });
        }
        Ok((self.step)(state, symbol))
    }

    /// Breadth-first closure of `{from}` under all symbol actions, giving up
    /// once more than `bound` distinct states have been seen.
    pub fn orbit(&self, from: &S, bound: usize) -> OrbitResult<S> {
        self.close(std::iter::once(from), bound)
    }

    /// Breadth-first closure of all seed states at once.
    pub fn orbit_of_seeds(&self, bound: usize) -> OrbitResult<S> {
        self.close(self.seeds.iter(), bound)
    }

    fn close<'a>(&self, from: impl Iterator<Item = &'a S>, bound: usize) -> OrbitResult<S>
    where
        S: 'a,
    {
        let mut visited: Vec<S> = Vec::new();
        let mut frontier = 0usize;
        for seed in from {
            if !visited.iter().any(|s| (self.equal)(s, seed)) {
                visited.push(seed.clone());
                if visited.len() > bound {
                    return OrbitResult::ExceededBound(visited.len());
                }
            }
        }
        while frontier < visited.len() {
            let state = visited[frontier].clone();
            frontier += 1;
            for &symbol in self.alphabet.symbols() {
                let next = (self.step)(&state, symbol);
                if !visited.iter().any(|s| (self.equal)(s, &next)) {
                    visited.push(next);
                    if visited.len() > bound {
                        return OrbitResult::ExceededBound(visited.len());
                    }
                }
            }
        }
        OrbitResult::Finite(visited)
    }

    /// Materializes an action-closed list of pairwise-distinct states (as
    /// produced by a `Finite` orbit) into a finite Σ-set whose state `i`
    /// corresponds to `states[i]`.
    ///
    /// Panics if some step leaves `states`, which violates closure.
    pub fn materialize(&self, states: &[S]) -> SigmaSet {
        let names = self.state_names(states);
        let delta = states
            .iter()
            .map(|state| {
                self.alphabet
                    .symbols()
                    .iter()
                    .map(|&symbol| {
                        let next = (self.step)(state, symbol);
                        states
                            .iter()
                            .position(|s| (self.equal)(s, &next))
                            .expect("state list is closed under the action")
                    })
                    .collect()
            })
            .collect();
        SigmaSet::new(self.alphabet.clone(), names, delta)
            .expect("materialized table is total by construction")
    }

    /// The union of all finite seed orbits, materialized. Seeds whose orbit
    /// exceeds `bound` contribute nothing. With no seeds (or none finite)
    /// the result is the empty Σ-set.
    pub fn maximal_orbit_finite_part(&self, bound: usize) -> SigmaSet {
        let mut kept: Vec<S> = Vec::new();
        for seed in &self.seeds {
            if let OrbitResult::Finite(orbit) = self.orbit(seed, bound) {
                for state in orbit {
                    if !kept.iter().any(|s| (self.equal)(s, &state)) {
                        kept.push(state);
                    }
                }
            }
        }
        self.materialize(&kept)
    }

    fn state_names(&self, states: &[S]) -> Vec<String> {
        let mut names: Vec<String> = match &self.label {
            Some(label) => states.iter().map(|s| label(s)).collect(),
            None => (0..states.len()).map(|i| format!("q{i}")).collect(),
        };
        // Distinct states normally carry distinct labels; disambiguate
        // defensively so materialization never fails on a name clash.
        for i in 0..names.len() {
            if names[..i].contains(&names[i]) {
                names[i] = format!("{}#{}", names[i], i);
            }
        }
        names
    }
}

/// The derivative Σ-set of a language: seed `language`, action
/// `δ(L, a) = a⁻¹L`, state identity = semantic equality (with structural
/// equality of normal forms as a fast path), labels = expression syntax.
///
/// The orbit of the seed is its set of word derivatives, i.e. the states of
/// the canonical quotient automaton.
pub fn derivative_sigma_set(language: &Language) -> LazySigmaSet<Language> {
    LazySigmaSet::new(language.alphabet().clone(), vec![language.clone()], step_language)
        .with_equality(|a: &Language, b: &Language| {
            a.ast() == b.ast()
                || a.semantically_equal(b)
                    .expect("derivative states share one alphabet")
        })
        .with_labels(|l: &Language| l.to_string())
}

fn step_language(language: &Language, symbol: char) -> Language {
    language
        .derivative(symbol)
        .expect("orbit exploration only uses alphabet symbols")
}

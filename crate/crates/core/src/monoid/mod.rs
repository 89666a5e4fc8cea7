//! Finite monoids, Σ-monoids, and recognition by homomorphism.
//!
//! A Σ-monoid is a finite monoid with a chosen element `m_a` per alphabet
//! symbol; it induces the homomorphism `hom: Σ* → M`, `hom(a₁…aₖ) =
//! m_{a₁}·…·m_{aₖ}`. A subset `S ⊆ M` then recognizes the language
//! `hom⁻¹(S)`.
//!
//! Multiplication is stored in *diagrammatic* order: for transition monoids
//! (endomorphisms of a Σ-set under composition), `(φ·ψ)(q) = ψ(φ(q))` —
//! first `φ`, then `ψ`. This is the opposite of function composition and is
//! chosen so that `hom(uv) = hom(u)·hom(v)` holds without reversal.
//!
//! The syntactic monoid of a language is realized as the transition monoid
//! of its minimal automaton, the canonical smallest recognizer.

mod division;

pub use division::{divides, generator_isomorphic, Divisibility, DEFAULT_DIVIDES_BUDGET};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{minimal_automaton, Automaton, AutomataError, Equivalence, PointedAutomaton};
use crate::language::Language;
use crate::sigma::{SigmaError, SigmaSet, SigmaSetMorphism, StateId};

/// Maximum size for which associativity is verified on all n³ triples at
/// construction. Larger tables get `SPOT_CHECK_TRIPLES` deterministic
/// pseudo-random triples instead.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

/// Number of associativity triples sampled for monoids above
/// [`FULL_ASSOCIATIVITY_LIMIT`].
pub const SPOT_CHECK_TRIPLES: usize = 100_000;

/// Errors from constructing or using monoids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("multiplication table is not square: row {row} has {found} entries, expected {expected}")]
    TableShape {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("table entry at ({row}, {col}) is {value}, out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("identity index {index} out of range")]
    BadIdentityIndex { index: usize },
    #[error("element {index} violates the identity law")]
    IdentityViolation { index: usize },
    #[error("associativity fails on ({x}·{y})·{z} ≠ {x}·({y}·{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("generator for symbol {symbol:?} has invalid index {index}")]
    BadGenerator { symbol: char, index: usize },
    #[error("generator count {found} does not match alphabet size {expected}")]
    GeneratorShape { expected: usize, found: usize },
    #[error("element index {index} out of range")]
    BadElement { index: usize },
    #[error("symbol {symbol:?} is not in the alphabet")]
    ForeignSymbol { symbol: char },
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
}

/// A finite monoid: a multiplication table with a two-sided identity.
/// Associativity is verified at construction (exhaustively up to
/// [`FULL_ASSOCIATIVITY_LIMIT`] elements, spot-checked above).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteMonoid, MonoidError> {
        let n = table.len();
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(MonoidError::TableShape {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(MonoidError::EntryOutOfRange { row, col, value });
                }
            }
        }
        if identity >= n {
            return Err(MonoidError::BadIdentityIndex { index: identity });
        }
        for x in 0..n {
            if table[identity][x] != x || table[x][identity] != x {
                return Err(MonoidError::IdentityViolation { index: x });
            }
        }
        let monoid = FiniteMonoid { table, identity };
        monoid.check_associativity()?;
        Ok(monoid)
    }

    fn check_associativity(&self) -> Result<(), MonoidError> {
        let n = self.size();
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                            return Err(MonoidError::NotAssociative { x, y, z });
                        }
                    }
                }
            }
        } else {
            // Deterministic linear-congruential sampling; same triples on
            // every run for a given size.
            let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ (n as u64);
            let mut next = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 33) as usize % n
            };
            for _ in 0..SPOT_CHECK_TRIPLES {
                let (x, y, z) = (next(), next(), next());
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(MonoidError::NotAssociative { x, y, z });
                }
            }
        }
        Ok(())
    }

    /// The one-element monoid.
    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid {
            table: vec![vec![0]],
            identity: 0,
        }
    }

    /// The cyclic group Z_n under addition (n ≥ 1).
    pub fn cyclic(n: usize) -> FiniteMonoid {
        assert!(n >= 1, "cyclic monoid needs at least one element");
        let table = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        FiniteMonoid { table, identity: 0 }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Product in diagrammatic order: `x` then `y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// The unique idempotent among the powers `x, x², x³, …` — written
    /// `x^ω`. Exists in every finite monoid; found among the first
    /// `2·size` powers (the power sequence enters its cycle within `size`
    /// steps and the cycle is at most `size` long).
    pub fn idempotent_power(&self, x: usize) -> Result<usize, MonoidError> {
        if x >= self.size() {
            return Err(MonoidError::BadElement { index: x });
        }
        let mut power = x;
        for _ in 0..2 * self.size() {
            if self.is_idempotent(power) {
                return Ok(power);
            }
            power = self.mul(power, x);
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }
}

/// A finite monoid with a designated generator per alphabet symbol, hence a
/// homomorphism `Σ* → M`. Elements carry canonical names: the shortlex-least
/// word mapping to each element, or `[i]` for elements no word reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SigmaMonoidWire", into = "SigmaMonoidWire")]
pub struct SigmaMonoid {
    monoid: FiniteMonoid,
    alphabet: Alphabet,
    generators: Vec<usize>,
    element_names: Vec<String>,
}

impl SigmaMonoid {
    /// `generators[i]` is the element for the i-th alphabet symbol.
    pub fn new(
        monoid: FiniteMonoid,
        alphabet: Alphabet,
        generators: Vec<usize>,
    ) -> Result<SigmaMonoid, MonoidError> {
        if generators.len() != alphabet.len() {
            return Err(MonoidError::GeneratorShape {
                expected: alphabet.len(),
                found: generators.len(),
            });
        }
        for (i, &g) in generators.iter().enumerate() {
            if g >= monoid.size() {
                return Err(MonoidError::BadGenerator {
                    symbol: alphabet.symbol(i),
                    index: g,
                });
            }
        }
        let element_names = shortlex_names(&monoid, &alphabet, &generators);
        Ok(SigmaMonoid {
            monoid,
            alphabet,
            generators,
            element_names,
        })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator(&self, symbol: char) -> Result<usize, MonoidError> {
        self.alphabet
            .index_of(symbol)
            .map(|i| self.generators[i])
            .ok_or(MonoidError::ForeignSymbol { symbol })
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_name(&self, element: usize) -> &str {
        &self.element_names[element]
    }

    /// The induced homomorphism: image of a word under `a ↦ m_a`.
    pub fn hom(&self, word: &Word) -> Result<usize, MonoidError> {
        let mut value = self.monoid.identity();
        for &symbol in word.symbols() {
            value = self.monoid.mul(value, self.generator(symbol)?);
        }
        Ok(value)
    }

    /// The Σ-set of elements under right multiplication by generators:
    /// `δ(m, a) = m·m_a`. The identity reaches `hom(w)` under each word `w`.
    pub fn as_sigma_set(&self) -> SigmaSet {
        let delta = (0..self.monoid.size())
            .map(|m| {
                self.generators
                    .iter()
                    .map(|&g| self.monoid.mul(m, g))
                    .collect()
            })
            .collect();
        SigmaSet::new(
            self.alphabet.clone(),
            self.element_names.clone(),
            delta,
        )
        .expect("element names are unique and the table is total")
    }

    /// Cayley table rendered as aligned text, rows and columns in element
    /// order, entry at (x, y) being the name of `x·y`.
    pub fn render_cayley(&self) -> String {
        let names = &self.element_names;
        let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
        let pad = |name: &str| {
            let padding = width - name.chars().count();
            format!("{name}{}", " ".repeat(padding))
        };
        let mut out = String::new();
        let _ = write!(out, "{} |", pad("·"));
        for name in names {
            let _ = write!(out, " {}", pad(name));
        }
        out.push('\n');
        let _ = writeln!(out, "{}-+{}", "-".repeat(width), "-".repeat((width + 1) * names.len()));
        for (x, row_name) in names.iter().enumerate() {
            let _ = write!(out, "{} |", pad(row_name));
            for y in 0..names.len() {
                let _ = write!(out, " {}", pad(&names[self.monoid.mul(x, y)]));
            }
            out.push('\n');
        }
        out
    }
}

/// Shortlex-least generating word per element: breadth-first over words in
/// shortlex order starting from the identity (named `ε`). Unreached
/// elements are named `[i]`.
fn shortlex_names(monoid: &FiniteMonoid, alphabet: &Alphabet, generators: &[usize]) -> Vec<String> {
    let mut names: Vec<Option<String>> = vec![None; monoid.size()];
    let mut queue = std::collections::VecDeque::new();
    names[monoid.identity()] = Some("ε".to_string());
    queue.push_back(monoid.identity());
    while let Some(m) = queue.pop_front() {
        let prefix = names[m].clone().expect("queued elements are named");
        for (i, &g) in generators.iter().enumerate() {
            let next = monoid.mul(m, g);
            if names[next].is_none() {
                let word = if m == monoid.identity() {
                    alphabet.symbol(i).to_string()
                } else {
                    format!("{prefix}{}", alphabet.symbol(i))
                };
                names[next] = Some(word);
                queue.push_back(next);
            }
        }
    }
    names
        .into_iter()
        .enumerate()
        .map(|(i, name)| name.unwrap_or_else(|| format!("[{i}]")))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct SigmaMonoidWire {
    alphabet: Alphabet,
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    generators: BTreeMap<char, usize>,
    element_names: Vec<String>,
}

impl TryFrom<SigmaMonoidWire> for SigmaMonoid {
    type Error = MonoidError;

    fn try_from(wire: SigmaMonoidWire) -> Result<SigmaMonoid, MonoidError> {
        if wire.table.len() != wire.size {
            return Err(MonoidError::TableShape {
                row: 0,
                expected: wire.size,
                found: wire.table.len(),
            });
        }
        let monoid = FiniteMonoid::new(wire.table, wire.identity)?;
        let mut generators = Vec::with_capacity(wire.alphabet.len());
        for &symbol in wire.alphabet.symbols() {
            let &g = wire
                .generators
                .get(&symbol)
                .ok_or(MonoidError::ForeignSymbol { symbol })?;
            generators.push(g);
        }
        if wire.generators.len() != wire.alphabet.len() {
            return Err(MonoidError::GeneratorShape {
                expected: wire.alphabet.len(),
                found: wire.generators.len(),
            });
        }
        // element_names are recomputed canonically; the wire field is
        // accepted for round-tripping but not trusted.
        SigmaMonoid::new(monoid, wire.alphabet, generators)
    }
}

impl From<SigmaMonoid> for SigmaMonoidWire {
    fn from(m: SigmaMonoid) -> SigmaMonoidWire {
        SigmaMonoidWire {
            size: m.monoid.size(),
            identity: m.monoid.identity(),
            generators: m
                .alphabet
                .symbols()
                .iter()
                .zip(&m.generators)
                .map(|(&symbol, &g)| (symbol, g))
                .collect(),
            table: m.monoid.table.clone(),
            element_names: m.element_names,
            alphabet: m.alphabet,
        }
    }
}

/// A Σ-monoid with an accepting subset: recognizes `hom⁻¹(accepting)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidRecognizer {
    #[serde(flatten)]
    sigma_monoid: SigmaMonoid,
    accepting: std::collections::BTreeSet<usize>,
}

impl MonoidRecognizer {
    pub fn new(
        sigma_monoid: SigmaMonoid,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<MonoidRecognizer, MonoidError> {
        let accepting: std::collections::BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&index) = accepting.iter().find(|&&m| m >= sigma_monoid.monoid.size()) {
            return Err(MonoidError::BadElement { index });
        }
        Ok(MonoidRecognizer {
            sigma_monoid,
            accepting,
        })
    }

    pub fn sigma_monoid(&self) -> &SigmaMonoid {
        &self.sigma_monoid
    }

    pub fn accepting(&self) -> &std::collections::BTreeSet<usize> {
        &self.accepting
    }

    /// Membership of one word: `hom(w) ∈ S`.
    pub fn accepts(&self, word: &Word) -> Result<bool, MonoidError> {
        Ok(self.accepting.contains(&self.sigma_monoid.hom(word)?))
    }

    /// The recognizer as an automaton: right-multiplication Σ-set, start at
    /// the identity, accept on `S`.
    pub fn automaton(&self) -> PointedAutomaton {
        let carrier = self.sigma_monoid.as_sigma_set();
        let automaton = Automaton::new(carrier, self.accepting.iter().copied())
            .expect("accepting indices validated at construction");
        PointedAutomaton::new(automaton, self.sigma_monoid.monoid.identity())
            .expect("identity element exists")
    }

    /// The recognized language `hom⁻¹(S)`, as an expression. The automaton
    /// is minimized before state elimination to keep the expression small.
    pub fn language(&self) -> Language {
        self.automaton().minimize().language()
    }

    /// Does this recognizer accept exactly `language`? Decided exactly via
    /// automata equivalence; inequivalence carries the shortlex-least
    /// counterexample word.
    pub fn recognizes(&self, language: &Language) -> Result<Equivalence, AutomataError> {
        if language.alphabet() != &self.sigma_monoid.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        self.automaton().equivalent(&minimal_automaton(language))
    }
}

/// The transition monoid of a finite Σ-set: the submonoid of `End(Q)^op`
/// generated by the symbol actions, with `m_a = δ(−, a)` and product in
/// diagrammatic order, so `hom(w)` is the transition function of `w`.
/// Elements are discovered in shortlex order of generating words, which
/// fixes their indices and names.
pub fn transition_monoid(sigma_set: &SigmaSet) -> SigmaMonoid {
    transition_monoid_capped(sigma_set, usize::MAX)
        .expect("a finite Σ-set has finitely many transition functions")
}

/// [`transition_monoid`] with a size cap: returns `None` as soon as the
/// closure grows past `max_elements`, before any quadratic table is built.
/// Useful when only small monoids are worth materializing.
pub fn transition_monoid_capped(sigma_set: &SigmaSet, max_elements: usize) -> Option<SigmaMonoid> {
    if max_elements == 0 {
        return None;
    }
    let n = sigma_set.len();
    let alphabet = sigma_set.alphabet().clone();
    let identity: Vec<StateId> = (0..n).collect();
    let symbol_maps: Vec<Vec<StateId>> = (0..alphabet.len())
        .map(|i| (0..n).map(|q| sigma_set.step_unchecked(q, i)).collect())
        .collect();

    let mut index: BTreeMap<Vec<StateId>, usize> = BTreeMap::new();
    let mut elements: Vec<Vec<StateId>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    index.insert(identity.clone(), 0);
    elements.push(identity);
    queue.push_back(0usize);
    let mut generators = vec![0usize; alphabet.len()];
    let mut generators_found = false;
    while let Some(current) = queue.pop_front() {
        for (i, symbol_map) in symbol_maps.iter().enumerate() {
            let composed: Vec<StateId> = elements[current]
                .iter()
                .map(|&q| symbol_map[q])
                .collect();
            let next_id = match index.get(&composed) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= max_elements {
                        return None;
                    }
                    index.insert(composed.clone(), id);
                    elements.push(composed);
                    queue.push_back(id);
                    id
                }
            };
            if !generators_found {
                generators[i] = next_id;
            }
        }
        generators_found = true;
    }

    let size = elements.len();
    let table = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    // diagrammatic: x then y
                    let composed: Vec<StateId> =
                        elements[x].iter().map(|&q| elements[y][q]).collect();
                    index[&composed]
                })
                .collect()
        })
        .collect();
    let monoid = FiniteMonoid { table, identity: 0 };
    debug_assert!(monoid.check_associativity().is_ok());
    Some(SigmaMonoid::new(monoid, alphabet, generators).expect("generators discovered in range"))
}

/// The covering morphism of a Σ-set from its transition monoid: the
/// equivariant map `φ ↦ φ(q₀)` from the right-multiplication Σ-set of
/// `transition_monoid(S)` onto the orbit of `q₀`; in particular
/// `f(id) = q₀`.
pub fn covering_morphism(
    sigma_set: &SigmaSet,
    q0: StateId,
) -> Result<SigmaSetMorphism, SigmaError> {
    if q0 >= sigma_set.len() {
        return Err(SigmaError::BadStateIndex { index: q0 });
    }
    let sigma_monoid = transition_monoid(sigma_set);
    let source = sigma_monoid.as_sigma_set();
    // Recover each element's underlying function by replaying its canonical
    // word; cheaper bookkeeping than threading the function table out of
    // the closure.
    let map = (0..source.len())
        .map(|element| {
            let name = sigma_monoid.element_name(element);
            let mut state = q0;
            if name != "ε" {
                for symbol in name.chars() {
                    state = sigma_set
                        .step(state, symbol)
                        .expect("canonical words use alphabet symbols");
                }
            }
            state
        })
        .collect();
    SigmaSetMorphism::new(source, sigma_set.clone(), map)
}

/// The syntactic monoid of a language with its accepting subset: the
/// transition monoid of the minimal automaton, accepting those elements
/// that send the start state into the accept set. The canonical (smallest)
/// monoid recognizer of the language.
pub fn syntactic_monoid(language: &Language) -> MonoidRecognizer {
    let minimal = minimal_automaton(language);
    syntactic_monoid_of_minimal(&minimal)
}

/// Same as [`syntactic_monoid`], for callers that already hold the minimal
/// automaton.
pub(crate) fn syntactic_monoid_of_minimal(minimal: &PointedAutomaton) -> MonoidRecognizer {
    let sigma_monoid = transition_monoid(minimal.carrier());
    let accepting: Vec<usize> = (0..sigma_monoid.monoid().size())
        .filter(|&element| {
            let word = Word::parse(
                match sigma_monoid.element_name(element) {
                    "ε" => "",
                    name => name,
                },
                minimal.carrier().alphabet(),
            )
            .expect("canonical words use alphabet symbols");
            minimal
                .automaton()
                .accepts_from(minimal.start(), &word)
                .expect("word over the same alphabet")
        })
        .collect();
    MonoidRecognizer::new(sigma_monoid, accepting).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    fn word(text: &str) -> Word {
        Word::parse(text, &ab()).unwrap()
    }

    fn lang(text: &str) -> Language {
        Language::parse(text, &ab()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert_eq!(FiniteMonoid::trivial().size(), 1);
        assert_eq!(FiniteMonoid::cyclic(2).size(), 2);
        assert!(FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
        let err = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 1);
        assert!(matches!(err, Err(MonoidError::IdentityViolation { .. })));
        // left-zero band {x, y} has no identity at all; adjoin none
        let err = FiniteMonoid::new(vec![vec![0, 0], vec![1, 1]], 0);
        assert!(matches!(err, Err(MonoidError::IdentityViolation { .. })));
        // a genuinely non-associative table with a valid identity:
        // 1·x = x·1 = x, but 2·2 = 1 while (2·2)·2 = 2 ≠ 2·(2·2) = ...
        let table = vec![
            vec![0, 1, 2], // identity row
            vec![1, 2, 0],
            vec![2, 0, 0],
        ];
        let err = FiniteMonoid::new(table, 0);
        assert!(matches!(err, Err(MonoidError::NotAssociative { .. })));
    }

    #[test]
    fn idempotent_powers() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(z3.idempotent_power(0).unwrap(), 0);
        // generators of a group have the identity as ω-power
        assert_eq!(z3.idempotent_power(1).unwrap(), 0);
        assert_eq!(z3.idempotent_power(2).unwrap(), 0);
        assert!(matches!(
            z3.idempotent_power(5),
            Err(MonoidError::BadElement { index: 5 })
        ));
    }

    #[test]
    fn transition_monoid_of_swap_is_z2() {
        // a swaps, b fixes
        let s = SigmaSet::new(
            ab(),
            vec!["p".into(), "q".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let m = transition_monoid(&s);
        assert_eq!(m.monoid().size(), 2);
        assert_eq!(m.element_names(), &["ε", "a"]);
        // a·a = ε
        let a = m.generator('a').unwrap();
        assert_eq!(m.monoid().mul(a, a), m.monoid().identity());
        assert_eq!(m.generator('b').unwrap(), m.monoid().identity());
    }

    #[test]
    fn transition_monoid_of_resets() {
        // both symbols reset: a → q0 constantly, b → q1 constantly
        let s = SigmaSet::new(
            ab(),
            vec!["q0".into(), "q1".into()],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let m = transition_monoid(&s);
        assert_eq!(m.monoid().size(), 3);
        assert_eq!(m.element_names(), &["ε", "a", "b"]);
        // composing constants keeps the last one: a·b = b
        let a = m.generator('a').unwrap();
        let b = m.generator('b').unwrap();
        assert_eq!(m.monoid().mul(a, b), b);
        assert_eq!(m.monoid().mul(b, a), a);
        // constants are idempotent
        assert_eq!(m.monoid().idempotent_power(a).unwrap(), a);
    }

    #[test]
    fn trivial_sigma_set_gives_trivial_monoid() {
        let s = SigmaSet::new(ab(), vec!["z".into()], vec![vec![0, 0]]).unwrap();
        let m = transition_monoid(&s);
        assert_eq!(m.monoid().size(), 1);
    }

    #[test]
    fn capped_transition_monoid_bails_early() {
        // reset Σ-set: 3 elements {id, const₀, const₁}
        let s = SigmaSet::new(
            ab(),
            vec!["q0".into(), "q1".into()],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(transition_monoid_capped(&s, 2).is_none());
        assert_eq!(transition_monoid_capped(&s, 3).unwrap().monoid().size(), 3);
        assert!(transition_monoid_capped(&s, 0).is_none());
    }

    #[test]
    fn hom_is_multiplicative_on_samples() {
        let m = syntactic_monoid(&lang("(ab)*")).sigma_monoid().clone();
        assert_eq!(m.hom(&Word::epsilon()).unwrap(), m.monoid().identity());
        for u in ["", "a", "b", "ab", "ba", "aab"] {
            for v in ["", "a", "ab", "bb"] {
                let uv = word(&format!("{u}{v}"));
                let lhs = m.hom(&uv).unwrap();
                let rhs = m
                    .monoid()
                    .mul(m.hom(&word(u)).unwrap(), m.hom(&word(v)).unwrap());
                assert_eq!(lhs, rhs, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn as_sigma_set_runs_words_to_hom() {
        let m = syntactic_monoid(&lang("(a|b)*a")).sigma_monoid().clone();
        let s = m.as_sigma_set();
        for text in ["", "a", "ab", "ba", "abab"] {
            let w = word(text);
            assert_eq!(
                s.run(m.monoid().identity(), &w).unwrap(),
                m.hom(&w).unwrap(),
                "word {text}"
            );
        }
    }

    #[test]
    fn covering_morphism_is_equivariant_and_hits_base_point() {
        let s = SigmaSet::new(
            ab(),
            vec!["p".into(), "q".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        for q0 in 0..2 {
            let f = covering_morphism(&s, q0).unwrap();
            assert!(f.check());
            assert_eq!(f.apply(0), q0, "identity maps to the base point");
        }
        // swap action is transitive, so the covering is surjective
        let f = covering_morphism(&s, 0).unwrap();
        let mut image: Vec<StateId> = f.map().to_vec();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image, vec![0, 1]);
    }

    #[test]
    fn monoid_recognition_examples() {
        // trivial monoid recognizes Σ* with S = {e} and ∅ with S = ∅
        let trivial = SigmaMonoid::new(FiniteMonoid::trivial(), ab(), vec![0, 0]).unwrap();
        let full = MonoidRecognizer::new(trivial.clone(), [0]).unwrap();
        assert_eq!(
            full.recognizes(&lang("!∅")).unwrap(),
            Equivalence::Equivalent
        );
        let empty = MonoidRecognizer::new(trivial, []).unwrap();
        assert_eq!(
            empty.recognizes(&lang("∅")).unwrap(),
            Equivalence::Equivalent
        );

        // Z2 with m_a = 1, m_b = 0, S = {0}: even number of a's
        let z2 = SigmaMonoid::new(FiniteMonoid::cyclic(2), ab(), vec![1, 0]).unwrap();
        let even_as = MonoidRecognizer::new(z2, [0]).unwrap();
        for text in ["", "b", "aa", "aba", "bab", "abab"] {
            let w = word(text);
            let a_count = text.matches('a').count();
            assert_eq!(even_as.accepts(&w).unwrap(), a_count % 2 == 0, "{text}");
        }
        assert_eq!(
            even_as.recognizes(&lang("(b|ab*a)*")).unwrap(),
            Equivalence::Equivalent
        );
        // and a counterexample when the language is wrong
        match even_as.recognizes(&lang("(b|ab*a)*a")).unwrap() {
            Equivalence::Inequivalent(w) => assert_eq!(w, Word::epsilon()),
            Equivalence::Equivalent => panic!("should differ"),
        }
    }

    #[test]
    fn syntactic_monoid_examples() {
        // Σ*: trivial monoid with S = {e}
        let full = syntactic_monoid(&lang("!∅"));
        assert_eq!(full.sigma_monoid().monoid().size(), 1);
        assert_eq!(full.accepting().len(), 1);

        // Σ*aΣ*: two elements {id, const-accept}, S = {the absorber}
        let contains_a = syntactic_monoid(&lang("(a|b)*a(a|b)*"));
        assert_eq!(contains_a.sigma_monoid().monoid().size(), 2);
        let a = contains_a.sigma_monoid().generator('a').unwrap();
        assert_eq!(contains_a.accepting().iter().copied().collect::<Vec<_>>(), vec![a]);
        // absorbing: a·x = a for all x
        for x in 0..2 {
            assert_eq!(contains_a.sigma_monoid().monoid().mul(a, x), a);
        }

        // (aa)* over {a}: Z2 with S = {e}
        let alphabet: Alphabet = "a".parse().unwrap();
        let even = Language::parse("(aa)*", &alphabet).unwrap();
        let m = syntactic_monoid(&even);
        assert_eq!(m.sigma_monoid().monoid().size(), 2);
        assert_eq!(
            m.accepting().iter().copied().collect::<Vec<_>>(),
            vec![m.sigma_monoid().monoid().identity()]
        );
        let g = m.sigma_monoid().generator('a').unwrap();
        assert_eq!(m.sigma_monoid().monoid().mul(g, g), m.sigma_monoid().monoid().identity());
    }

    #[test]
    fn syntactic_recognition_roundtrip() {
        for text in ["(ab)*", "(a|b)*a", "a*b*", "!(a(a|b)*)&(a|b)(a|b)*"] {
            let l = lang(text);
            let recognizer = syntactic_monoid(&l);
            assert_eq!(
                recognizer.recognizes(&l).unwrap(),
                Equivalence::Equivalent,
                "failed on {text}"
            );
        }
    }

    #[test]
    fn cayley_rendering_is_stable() {
        let z2 = SigmaMonoid::new(FiniteMonoid::cyclic(2), "a".parse().unwrap(), vec![1]).unwrap();
        let rendered = z2.render_cayley();
        assert!(rendered.contains("ε | ε a"));
        assert!(rendered.contains("a | a ε"));
    }

    #[test]
    fn json_roundtrip_preserves_structure() {
        let recognizer = syntactic_monoid(&lang("(ab)*"));
        let json = serde_json::to_string(&recognizer).unwrap();
        assert!(json.contains("\"element_names\""));
        assert!(json.contains("\"generators\""));
        let back: MonoidRecognizer = serde_json::from_str(&json).unwrap();
        assert_eq!(recognizer, back);
    }

    #[test]
    fn unreachable_elements_get_bracket_names() {
        // Z3 with the only generator = 0 (identity): 1 and 2 unreachable
        let m = SigmaMonoid::new(FiniteMonoid::cyclic(3), "a".parse().unwrap(), vec![0]).unwrap();
        assert_eq!(m.element_names(), &["ε", "[1]", "[2]"]);
    }
}

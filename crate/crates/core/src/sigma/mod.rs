//! Sets with a Σ-action: states together with a total transition function
//! `δ: Q × Σ → Q`, and the equivariant maps between them.
//!
//! Finite Σ-sets ([`SigmaSet`]) support the categorical constructions used
//! throughout the crate — products, coproducts, quotients by congruences —
//! plus orbit computation and the maximal sub-Σ-set with finite orbits.
//! Infinite state spaces (such as the space of all languages acted on by
//! derivatives) are handled by [`LazySigmaSet`], which presents the action
//! as a step function over seeds.

mod lazy;

pub use lazy::{derivative_sigma_set, LazySigmaSet};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{Alphabet, Word};
use crate::dsu::Dsu;

/// Index of a state inside a [`SigmaSet`].
pub type StateId = usize;

/// Errors from constructing or combining Σ-sets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("duplicate state name {name:?}")]
    DuplicateStateName { name: String },
    #[error("transition row for state {state:?} has {found} entries, expected {expected}")]
    TableShape {
        state: String,
        expected: usize,
        found: usize,
    },
    #[error("transition for ({state:?}, {symbol:?}) targets invalid state index {target}")]
    DanglingTarget {
        state: String,
        symbol: char,
        target: usize,
    },
    #[error("missing transition entry for ({state:?}, {symbol:?})")]
    MissingTableEntry { state: String, symbol: char },
    #[error("unknown state name {name:?}")]
    UnknownState { name: String },
    #[error("state index {index} out of range")]
    BadStateIndex { index: usize },
    #[error("symbol {symbol:?} is not in the alphabet")]
    ForeignSymbol { symbol: char },
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
    #[error("morphism map has {found} entries, expected {expected}")]
    MorphismShape { expected: usize, found: usize },
    #[error("partition does not cover state {index} exactly once")]
    NotAPartition { index: usize },
    #[error(
        "partition is not a congruence: states {left:?} and {right:?} are \
         related but their {symbol:?}-successors are not"
    )]
    NotACongruence {
        left: String,
        right: String,
        symbol: char,
    },
    #[error("morphisms are not composable/compatible: {0}")]
    IncompatibleMorphisms(&'static str),
}

/// A finite Σ-set: named states with a total action of every alphabet
/// symbol. The empty Σ-set (no states) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SigmaSetWire", into = "SigmaSetWire")]
pub struct SigmaSet {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<Vec<StateId>>,
}

impl SigmaSet {
    /// Validates shape (one row per state, one entry per symbol), target
    /// indices, and state-name uniqueness.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        delta: Vec<Vec<StateId>>,
    ) -> Result<SigmaSet, SigmaError> {
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(SigmaError::DuplicateStateName { name: name.clone() });
            }
        }
        if delta.len() != names.len() {
            return Err(SigmaError::TableShape {
                state: String::from("<table>"),
                expected: names.len(),
                found: delta.len(),
            });
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(SigmaError::TableShape {
                    state: names[q].clone(),
                    expected: alphabet.len(),
                    found: row.len(),
                });
            }
            for (i, &target) in row.iter().enumerate() {
                if target >= names.len() {
                    return Err(SigmaError::DanglingTarget {
                        state: names[q].clone(),
                        symbol: alphabet.symbol(i),
                        target,
                    });
                }
            }
        }
        Ok(SigmaSet {
            alphabet,
            names,
            delta,
        })
    }

    /// Like [`SigmaSet::new`] with auto-generated names `q0, q1, …`.
    pub fn indexed(alphabet: Alphabet, delta: Vec<Vec<StateId>>) -> Result<SigmaSet, SigmaError> {
        let names = (0..delta.len()).map(|i| format!("q{i}")).collect();
        SigmaSet::new(alphabet, names, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn index_of(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    /// One step of the action.
    pub fn step(&self, state: StateId, symbol: char) -> Result<StateId, SigmaError> {
        let row = self
            .delta
            .get(state)
            .ok_or(SigmaError::BadStateIndex { index: state })?;
        let i = self
            .alphabet
            .index_of(symbol)
            .ok_or(SigmaError::ForeignSymbol { symbol })?;
        Ok(row[i])
    }

    /// Iterated action along a word.
    pub fn run(&self, state: StateId, word: &Word) -> Result<StateId, SigmaError> {
        let mut current = state;
        for &symbol in word.symbols() {
            current = self.step(current, symbol)?;
        }
        Ok(current)
    }

    pub(crate) fn step_unchecked(&self, state: StateId, symbol_index: usize) -> StateId {
        self.delta[state][symbol_index]
    }

    /// Breadth-first closure of `{state}` under all symbol actions. For a
    /// finite Σ-set this always completes when `bound ≥ len()`.
    pub fn orbit(&self, state: StateId, bound: usize) -> Result<OrbitResult<StateId>, SigmaError> {
        if state >= self.len() {
            return Err(SigmaError::BadStateIndex { index: state });
        }
        let mut visited = vec![false; self.len()];
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        visited[state] = true;
        order.push(state);
        queue.push_back(state);
        if order.len() > bound {
            return Ok(OrbitResult::ExceededBound(order.len()));
        }
        while let Some(q) = queue.pop_front() {
            for i in 0..self.alphabet.len() {
                let target = self.delta[q][i];
                if !visited[target] {
                    visited[target] = true;
                    order.push(target);
                    if order.len() > bound {
                        return Ok(OrbitResult::ExceededBound(order.len()));
                    }
                    queue.push_back(target);
                }
            }
        }
        Ok(OrbitResult::Finite(order))
    }

    /// The largest sub-Σ-set all of whose states have orbits within `bound`,
    /// together with its inclusion morphism. With `bound ≥ len()` this is
    /// the whole Σ-set.
    pub fn maximal_orbit_finite_part(&self, bound: usize) -> (SigmaSet, SigmaSetMorphism) {
        let mut kept = Vec::new();
        for q in 0..self.len() {
            match self.orbit(q, bound).expect("state index in range") {
                OrbitResult::Finite(_) => kept.push(q),
                OrbitResult::ExceededBound(_) => {}
            }
        }
        // Orbits of kept states consist of kept states (their orbits are
        // subsets), so the restriction is action-closed.
        let mut reindex = vec![usize::MAX; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            reindex[old] = new;
        }
        let names = kept.iter().map(|&q| self.names[q].clone()).collect();
        let delta = kept
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| reindex[t]).collect())
            .collect();
        let part = SigmaSet {
            alphabet: self.alphabet.clone(),
            names,
            delta,
        };
        let inclusion = SigmaSetMorphism {
            source: part.clone(),
            target: self.clone(),
            map: kept,
        };
        (part, inclusion)
    }

    /// Deterministic DOT rendering of the transition graph. Parallel edges
    /// between the same pair of states are merged into one labeled edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sigma_set {\n  rankdir=LR;\n");
        for name in &self.names {
            let _ = writeln!(out, "  {} [shape=circle];", dot_quote(name));
        }
        self.write_dot_edges(&mut out);
        out.push_str("}\n");
        out
    }

    pub(crate) fn write_dot_edges(&self, out: &mut String) {
        for (q, row) in self.delta.iter().enumerate() {
            let mut grouped: BTreeMap<StateId, Vec<char>> = BTreeMap::new();
            for (i, &target) in row.iter().enumerate() {
                grouped.entry(target).or_default().push(self.alphabet.symbol(i));
            }
            for (target, symbols) in grouped {
                let label: String = symbols
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}\"];",
                    dot_quote(&self.names[q]),
                    dot_quote(&self.names[target]),
                    label
                );
            }
        }
    }
}

pub(crate) fn dot_quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Serialize, Deserialize)]
struct SigmaSetWire {
    alphabet: Alphabet,
    states: Vec<String>,
    delta: BTreeMap<String, BTreeMap<char, String>>,
}

impl TryFrom<SigmaSetWire> for SigmaSet {
    type Error = SigmaError;

    fn try_from(wire: SigmaSetWire) -> Result<SigmaSet, SigmaError> {
        let mut index = BTreeMap::new();
        for (i, name) in wire.states.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(SigmaError::DuplicateStateName { name: name.clone() });
            }
        }
        for name in wire.delta.keys() {
            if !index.contains_key(name) {
                return Err(SigmaError::UnknownState { name: name.clone() });
            }
        }
        let mut delta = Vec::with_capacity(wire.states.len());
        for name in &wire.states {
            let row_map = wire
                .delta
                .get(name)
                .ok_or_else(|| SigmaError::MissingTableEntry {
                    state: name.clone(),
                    symbol: wire
                        .alphabet
                        .symbols()
                        .first()
                        .copied()
                        .unwrap_or('?'),
                })?;
            let mut row = Vec::with_capacity(wire.alphabet.len());
            for &symbol in wire.alphabet.symbols() {
                let target_name =
                    row_map
                        .get(&symbol)
                        .ok_or_else(|| SigmaError::MissingTableEntry {
                            state: name.clone(),
                            symbol,
                        })?;
                let &target = index
                    .get(target_name)
                    .ok_or_else(|| SigmaError::UnknownState {
                        name: target_name.clone(),
                    })?;
                row.push(target);
            }
            for symbol in row_map.keys() {
                if wire.alphabet.index_of(*symbol).is_none() {
                    return Err(SigmaError::ForeignSymbol { symbol: *symbol });
                }
            }
            delta.push(row);
        }
        SigmaSet::new(wire.alphabet, wire.states, delta)
    }
}

impl From<SigmaSet> for SigmaSetWire {
    fn from(s: SigmaSet) -> SigmaSetWire {
        let delta = s
            .names
            .iter()
            .enumerate()
            .map(|(q, name)| {
                let row = s
                    .alphabet
                    .symbols()
                    .iter()
                    .enumerate()
                    .map(|(i, &symbol)| (symbol, s.names[s.delta[q][i]].clone()))
                    .collect();
                (name.clone(), row)
            })
            .collect();
        SigmaSetWire {
            alphabet: s.alphabet,
            states: s.names,
            delta,
        }
    }
}

/// Result of an orbit exploration under an explicit state budget.
/// Orbit-finiteness of a lazily-presented state is only semi-decidable, so
/// exploration gives up once it has seen more than `bound` distinct states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitResult<S> {
    /// The full orbit in breadth-first discovery order; closed under the
    /// action of every symbol.
    Finite(Vec<S>),
    /// More distinct states than the bound were found; carries the count of
    /// states seen when exploration stopped (bound + 1).
    ExceededBound(usize),
}

impl<S> OrbitResult<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrbitResult::Finite(_))
    }
}

/// An equivariant map between two Σ-sets over the same alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSetMorphism {
    source: SigmaSet,
    target: SigmaSet,
    map: Vec<StateId>,
}

impl SigmaSetMorphism {
    /// Validates shape and target indices. Does *not* require equivariance;
    /// use [`SigmaSetMorphism::check`] to test it.
    pub fn new(
        source: SigmaSet,
        target: SigmaSet,
        map: Vec<StateId>,
    ) -> Result<SigmaSetMorphism, SigmaError> {
        if source.alphabet != target.alphabet {
            return Err(SigmaError::AlphabetMismatch);
        }
        if map.len() != source.len() {
            return Err(SigmaError::MorphismShape {
                expected: source.len(),
                found: map.len(),
            });
        }
        for &image in &map {
            if image >= target.len() {
                return Err(SigmaError::BadStateIndex { index: image });
            }
        }
        Ok(SigmaSetMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: &SigmaSet) -> SigmaSetMorphism {
        SigmaSetMorphism {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.len()).collect(),
        }
    }

    pub fn source(&self) -> &SigmaSet {
        &self.source
    }

    pub fn target(&self) -> &SigmaSet {
        &self.target
    }

    pub fn map(&self) -> &[StateId] {
        &self.map
    }

    pub fn apply(&self, state: StateId) -> StateId {
        self.map[state]
    }

    /// First (state, symbol) square that fails to commute, if any.
    pub fn violation(&self) -> Option<(StateId, char)> {
        for q in 0..self.source.len() {
            for (i, &symbol) in self.target.alphabet.symbols().iter().enumerate() {
                let via_source = self.map[self.source.step_unchecked(q, i)];
                let via_target = self.target.step_unchecked(self.map[q], i);
                if via_source != via_target {
                    return Some((q, symbol));
                }
            }
        }
        None
    }

    /// True iff the map commutes with both actions on every (state, symbol).
    pub fn check(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&image| {
            let fresh = !seen[image];
            seen[image] = true;
            fresh
        })
    }

    /// Composition `then ∘ self` (apply `self` first).
    pub fn compose(&self, then: &SigmaSetMorphism) -> Result<SigmaSetMorphism, SigmaError> {
        if self.target != then.source {
            return Err(SigmaError::IncompatibleMorphisms(
                "target of the first differs from source of the second",
            ));
        }
        Ok(SigmaSetMorphism {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&q| then.map[q]).collect(),
        })
    }
}

/// Binary product: states are pairs acted on componentwise. Returns the
/// product object and its two projections. Pair `(p, q)` sits at index
/// `p · |Q₂| + q` and is named `"(p,q)"` from the component names.
pub fn product(
    s1: &SigmaSet,
    s2: &SigmaSet,
) -> Result<(SigmaSet, SigmaSetMorphism, SigmaSetMorphism), SigmaError> {
    if s1.alphabet != s2.alphabet {
        return Err(SigmaError::AlphabetMismatch);
    }
    let n2 = s2.len();
    let mut names = Vec::with_capacity(s1.len() * n2);
    let mut delta = Vec::with_capacity(s1.len() * n2);
    let mut proj1 = Vec::with_capacity(s1.len() * n2);
    let mut proj2 = Vec::with_capacity(s1.len() * n2);
    for p in 0..s1.len() {
        for q in 0..n2 {
            names.push(format!("({},{})", s1.names[p], s2.names[q]));
            delta.push(
                (0..s1.alphabet.len())
                    .map(|i| s1.delta[p][i] * n2 + s2.delta[q][i])
                    .collect(),
            );
            proj1.push(p);
            proj2.push(q);
        }
    }
    let object = SigmaSet {
        alphabet: s1.alphabet.clone(),
        names,
        delta,
    };
    let pi1 = SigmaSetMorphism {
        source: object.clone(),
        target: s1.clone(),
        map: proj1,
    };
    let pi2 = SigmaSetMorphism {
        source: object.clone(),
        target: s2.clone(),
        map: proj2,
    };
    Ok((object, pi1, pi2))
}

/// The unique mediating morphism `⟨f, g⟩ : X → S₁ × S₂` for `f : X → S₁`,
/// `g : X → S₂` with a common source. Its target is the object built by
/// [`product`]. Equivariant whenever `f` and `g` are.
pub fn pairing(
    f: &SigmaSetMorphism,
    g: &SigmaSetMorphism,
) -> Result<SigmaSetMorphism, SigmaError> {
    if f.source != g.source {
        return Err(SigmaError::IncompatibleMorphisms(
            "pairing requires a common source",
        ));
    }
    let (object, _, _) = product(&f.target, &g.target)?;
    let n2 = g.target.len();
    let map = (0..f.source.len()).map(|x| f.map[x] * n2 + g.map[x]).collect();
    Ok(SigmaSetMorphism {
        source: f.source.clone(),
        target: object,
        map,
    })
}

/// Binary coproduct: the disjoint union with no cross transitions. Returns
/// the object and the two injections. States of `s1` keep their indices and
/// are named `"0:name"`; states of `s2` are shifted by `|Q₁|` and named
/// `"1:name"`.
pub fn coproduct(
    s1: &SigmaSet,
    s2: &SigmaSet,
) -> Result<(SigmaSet, SigmaSetMorphism, SigmaSetMorphism), SigmaError> {
    if s1.alphabet != s2.alphabet {
        return Err(SigmaError::AlphabetMismatch);
    }
    let offset = s1.len();
    let mut names: Vec<String> = s1.names.iter().map(|n| format!("0:{n}")).collect();
    names.extend(s2.names.iter().map(|n| format!("1:{n}")));
    let mut delta: Vec<Vec<StateId>> = s1.delta.clone();
    delta.extend(
        s2.delta
            .iter()
            .map(|row| row.iter().map(|&t| t + offset).collect()),
    );
    let object = SigmaSet {
        alphabet: s1.alphabet.clone(),
        names,
        delta,
    };
    let inl = SigmaSetMorphism {
        source: s1.clone(),
        target: object.clone(),
        map: (0..s1.len()).collect(),
    };
    let inr = SigmaSetMorphism {
        source: s2.clone(),
        target: object.clone(),
        map: (offset..offset + s2.len()).collect(),
    };
    Ok((object, inl, inr))
}

/// The unique mediating morphism `[f, g] : S₁ + S₂ → X` for `f : S₁ → X`,
/// `g : S₂ → X` with a common target. Its source is the object built by
/// [`coproduct`].
pub fn copairing(
    f: &SigmaSetMorphism,
    g: &SigmaSetMorphism,
) -> Result<SigmaSetMorphism, SigmaError> {
    if f.target != g.target {
        return Err(SigmaError::IncompatibleMorphisms(
            "copairing requires a common target",
        ));
    }
    let (object, _, _) = coproduct(&f.source, &g.source)?;
    let mut map = f.map.clone();
    map.extend_from_slice(&g.map);
    Ok(SigmaSetMorphism {
        source: object,
        target: f.target.clone(),
        map,
    })
}

/// A partition of `{0, …, n-1}` in canonical form: blocks sorted internally
/// and ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    size: usize,
    blocks: Vec<Vec<StateId>>,
    assignment: Vec<usize>,
}

impl Partition {
    /// Validates that `blocks` covers `0..n` exactly once, then
    /// canonicalizes.
    pub fn new(n: usize, blocks: Vec<Vec<StateId>>) -> Result<Partition, SigmaError> {
        let mut assignment = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &q in block {
                if q >= n {
                    return Err(SigmaError::BadStateIndex { index: q });
                }
                if assignment[q] != usize::MAX {
                    return Err(SigmaError::NotAPartition { index: q });
                }
                assignment[q] = b;
            }
        }
        if let Some(q) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(SigmaError::NotAPartition { index: q });
        }
        Ok(Partition::from_assignment(assignment))
    }

    /// Builds the canonical partition whose blocks are the fibers of
    /// `assignment` (values need not be contiguous).
    pub fn from_assignment(assignment: Vec<usize>) -> Partition {
        let n = assignment.len();
        let mut by_value: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
        for (q, &v) in assignment.iter().enumerate() {
            by_value.entry(v).or_default().push(q);
        }
        let mut blocks: Vec<Vec<StateId>> = by_value.into_values().collect();
        blocks.sort_by_key(|block| block[0]);
        let mut canonical = vec![0; n];
        for (b, block) in blocks.iter().enumerate() {
            for &q in block {
                canonical[q] = b;
            }
        }
        Partition {
            size: n,
            blocks,
            assignment: canonical,
        }
    }

    /// Each state in its own block.
    pub fn discrete(n: usize) -> Partition {
        Partition::from_assignment((0..n).collect())
    }

    /// All states in one block (for n = 0, the empty partition).
    pub fn total(n: usize) -> Partition {
        Partition::from_assignment(vec![0; n])
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of underlying states.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn block_of(&self, state: StateId) -> usize {
        self.assignment[state]
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.size == coarser.size
            && self
                .blocks
                .iter()
                .all(|block| block.iter().all(|&q| coarser.block_of(q) == coarser.block_of(block[0])))
    }
}

/// Smallest congruence on `s` relating all the seed pairs: the fixpoint of
/// propagating `p ≈ q ⟹ δ(p,a) ≈ δ(q,a)`.
pub fn congruence_closure(s: &SigmaSet, seeds: &[(StateId, StateId)]) -> Result<Partition, SigmaError> {
    for &(p, q) in seeds {
        if p >= s.len() {
            return Err(SigmaError::BadStateIndex { index: p });
        }
        if q >= s.len() {
            return Err(SigmaError::BadStateIndex { index: q });
        }
    }
    let mut dsu = Dsu::new(s.len());
    let mut pending: Vec<(StateId, StateId)> = seeds.to_vec();
    while let Some((p, q)) = pending.pop() {
        if dsu.union(p, q) {
            for i in 0..s.alphabet.len() {
                pending.push((s.delta[p][i], s.delta[q][i]));
            }
        }
    }
    let assignment = (0..s.len()).map(|q| dsu.find(q)).collect();
    Ok(Partition::from_assignment(assignment))
}

/// Quotient of a Σ-set by a congruence. Verifies the congruence property
/// and reports a witness pair and symbol when it fails. Block `B` is named
/// `"{m₁,m₂,…}"` from its member names; the returned morphism is the
/// projection.
pub fn quotient(
    s: &SigmaSet,
    partition: &Partition,
) -> Result<(SigmaSet, SigmaSetMorphism), SigmaError> {
    if partition.size() != s.len() {
        return Err(SigmaError::NotAPartition {
            index: partition.size(),
        });
    }
    for block in partition.blocks() {
        let leader = block[0];
        for &other in &block[1..] {
            for (i, &symbol) in s.alphabet.symbols().iter().enumerate() {
                if partition.block_of(s.delta[leader][i]) != partition.block_of(s.delta[other][i])
                {
                    return Err(SigmaError::NotACongruence {
                        left: s.names[leader].clone(),
                        right: s.names[other].clone(),
                        symbol,
                    });
                }
            }
        }
    }
    let names = partition
        .blocks()
        .iter()
        .map(|block| {
            let members: Vec<&str> = block.iter().map(|&q| s.names[q].as_str()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let delta = partition
        .blocks()
        .iter()
        .map(|block| {
            (0..s.alphabet.len())
                .map(|i| partition.block_of(s.delta[block[0]][i]))
                .collect()
        })
        .collect();
    let object = SigmaSet {
        alphabet: s.alphabet.clone(),
        names,
        delta,
    };
    let projection = SigmaSetMorphism {
        source: s.clone(),
        target: object.clone(),
        map: partition.assignment.clone(),
    };
    Ok((object, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    /// 2 states; `a` swaps them, `b` fixes them.
    fn swap() -> SigmaSet {
        SigmaSet::new(
            ab(),
            vec!["p".into(), "q".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    fn loop1() -> SigmaSet {
        SigmaSet::new(ab(), vec!["z".into()], vec![vec![0, 0]]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(loop1().len() == 1);
        assert!(swap().len() == 2);
        // missing entry in one row
        let err = SigmaSet::new(ab(), vec!["p".into(), "q".into()], vec![vec![1, 0], vec![0]])
            .unwrap_err();
        assert_eq!(
            err,
            SigmaError::TableShape {
                state: "q".into(),
                expected: 2,
                found: 1
            }
        );
        // dangling target
        let err = SigmaSet::new(ab(), vec!["p".into()], vec![vec![0, 3]]).unwrap_err();
        assert!(matches!(err, SigmaError::DanglingTarget { target: 3, .. }));
        // duplicate names
        let err =
            SigmaSet::new(ab(), vec!["p".into(), "p".into()], vec![vec![0, 0], vec![1, 1]])
                .unwrap_err();
        assert!(matches!(err, SigmaError::DuplicateStateName { .. }));
    }

    #[test]
    fn empty_sigma_set_is_fine() {
        let empty = SigmaSet::new(ab(), vec![], vec![]).unwrap();
        assert!(empty.is_empty());
        let (part, inclusion) = empty.maximal_orbit_finite_part(10);
        assert!(part.is_empty());
        assert!(inclusion.check());
    }

    #[test]
    fn identity_morphism_checks() {
        let s = swap();
        assert!(SigmaSetMorphism::identity(&s).check());
    }

    #[test]
    fn constant_map_to_non_fixed_point_fails() {
        let s = swap();
        // map everything to p; p is moved by a, so the square at (q, a):
        // map(δ(q,a)) = map(p) = p, but δ(map(q),a) = δ(p,a) = q.
        let constant = SigmaSetMorphism::new(s.clone(), s, vec![0, 0]).unwrap();
        assert!(!constant.check());
        assert_eq!(constant.violation(), Some((0, 'a')));
    }

    #[test]
    fn quotient_projection_is_a_morphism() {
        let s = swap();
        let (object, projection) = quotient(&s, &Partition::total(2)).unwrap();
        assert_eq!(object.len(), 1);
        assert_eq!(object.name(0), "{p,q}");
        assert!(projection.check());
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        // a sends p↦q, q↦r, r↦r; relating p,q but not r is not a congruence.
        let alphabet: Alphabet = "a".parse().unwrap();
        let s = SigmaSet::new(
            alphabet,
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![1], vec![2], vec![2]],
        )
        .unwrap();
        let partition = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let err = quotient(&s, &partition).unwrap_err();
        assert_eq!(
            err,
            SigmaError::NotACongruence {
                left: "p".into(),
                right: "q".into(),
                symbol: 'a'
            }
        );
        // the congruence closure of {p≈q} merges everything reachable
        let closure = congruence_closure(&s, &[(0, 1)]).unwrap();
        assert_eq!(closure.len(), 1);
        assert!(quotient(&s, &closure).is_ok());
    }

    #[test]
    fn orbit_of_finite_sigma_set() {
        let s = swap();
        assert_eq!(
            s.orbit(0, 10).unwrap(),
            OrbitResult::Finite(vec![0, 1])
        );
        assert_eq!(s.orbit(0, 1).unwrap(), OrbitResult::ExceededBound(2));
        assert!(matches!(
            s.orbit(7, 10),
            Err(SigmaError::BadStateIndex { index: 7 })
        ));
    }

    #[test]
    fn orbit_closure_property() {
        let s = swap();
        if let OrbitResult::Finite(orbit) = s.orbit(1, 10).unwrap() {
            for &q in &orbit {
                for &symbol in ab().symbols() {
                    assert!(orbit.contains(&s.step(q, symbol).unwrap()));
                }
            }
        } else {
            panic!("orbit should be finite");
        }
    }

    #[test]
    fn product_with_unit_is_isomorphic() {
        let s = swap();
        let unit = loop1();
        let (object, pi1, pi2) = product(&s, &unit).unwrap();
        assert_eq!(object.len(), 2);
        assert!(pi1.check() && pi2.check());
        assert!(pi1.is_injective());
        // transitions mirror s exactly under pi1
        for q in 0..object.len() {
            for &symbol in ab().symbols() {
                assert_eq!(
                    pi1.apply(object.step(q, symbol).unwrap()),
                    s.step(pi1.apply(q), symbol).unwrap()
                );
            }
        }
    }

    #[test]
    fn coproduct_has_no_cross_transitions() {
        let s = swap();
        let t = loop1();
        let (object, inl, inr) = coproduct(&s, &t).unwrap();
        assert_eq!(object.len(), 3);
        assert!(inl.check() && inr.check());
        assert_eq!(object.name(2), "1:z");
        for q in 0..s.len() {
            for &symbol in ab().symbols() {
                assert!(object.step(q, symbol).unwrap() < s.len());
            }
        }
    }

    #[test]
    fn pairing_commutes_with_projections() {
        let s = swap();
        let x = swap();
        let f = SigmaSetMorphism::identity(&x);
        let g = SigmaSetMorphism::new(x.clone(), s.clone(), vec![1, 0]).unwrap();
        assert!(g.check());
        let h = pairing(&f, &g).unwrap();
        assert!(h.check());
        let (_, pi1, pi2) = product(f.target(), g.target()).unwrap();
        assert_eq!(h.compose(&pi1).unwrap().map(), f.map());
        assert_eq!(h.compose(&pi2).unwrap().map(), g.map());
    }

    #[test]
    fn copairing_restricts_to_injections() {
        let s = swap();
        let t = loop1();
        // constant maps into the 1-state Σ-set are equivariant
        let f = SigmaSetMorphism::new(s, loop1(), vec![0, 0]).unwrap();
        let g = SigmaSetMorphism::identity(&t);
        assert!(f.check() && g.check());
        let h = copairing(&f, &g).unwrap();
        assert!(h.check());
        let (_, inl, inr) = coproduct(f.source(), g.source()).unwrap();
        assert_eq!(inl.compose(&h).unwrap().map(), f.map());
        assert_eq!(inr.compose(&h).unwrap().map(), g.map());
    }

    #[test]
    fn maximal_orbit_finite_part_of_finite_set_is_everything() {
        let s = swap();
        let (part, inclusion) = s.maximal_orbit_finite_part(10);
        assert_eq!(part, s);
        assert!(inclusion.check() && inclusion.is_injective());
    }

    #[test]
    fn json_roundtrip() {
        let s = swap();
        let json = serde_json::to_string(&s).unwrap();
        let back: SigmaSet = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
        // missing delta entry is rejected
        let bad = r#"{"alphabet":["a","b"],"states":["p"],"delta":{"p":{"a":"p"}}}"#;
        let err = serde_json::from_str::<SigmaSet>(bad).unwrap_err();
        assert!(err.to_string().contains("missing transition entry"));
    }

    #[test]
    fn dot_output_is_deterministic_and_grouped() {
        let dot = loop1().to_dot();
        assert!(dot.contains("\"z\" -> \"z\" [label=\"a,b\"];"));
        assert_eq!(dot, loop1().to_dot());
    }

    #[test]
    fn partition_validation_and_canonical_form() {
        assert!(Partition::new(3, vec![vec![0, 2], vec![1]]).is_ok());
        assert!(matches!(
            Partition::new(3, vec![vec![0], vec![1]]),
            Err(SigmaError::NotAPartition { index: 2 })
        ));
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(SigmaError::NotAPartition { index: 1 })
        ));
        let p = Partition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(Partition::discrete(4).refines(&p));
        assert!(p.refines(&Partition::total(4)));
        assert!(!Partition::total(4).refines(&p));
    }
}

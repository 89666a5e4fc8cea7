//! Finite approximations of the profinite completion of Σ*.
//!
//! The completion itself is uncountable; what is representable is a finite
//! *system* of Σ-monoid quotients with connecting homomorphisms, together
//! with two finite syntaxes for its elements: ordinary words (dense in the
//! completion) and ω-terms. A clopen subset of the approximation is a
//! subset of one node; pulling it back along the evaluation of words gives
//! back exactly a regular language, and two inequivalent languages are
//! always separated by some clopen — here constructed from the syntactic
//! monoid of their symmetric difference.

mod omega;

pub use omega::{OmegaParseError, OmegaTerm};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::Word;
use crate::language::Language;
use crate::monoid::{
    syntactic_monoid, FiniteMonoid, MonoidError, MonoidRecognizer, SigmaMonoid,
};
use crate::sigma::Partition;

/// Errors from assembling or evaluating profinite systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfiniteError {
    #[error("node {node} is over a different alphabet than node 0")]
    NodeAlphabetMismatch { node: usize },
    #[error("connector {connector} refers to missing node {node}")]
    BadConnectorNode { connector: usize, node: usize },
    #[error("connector {from}→{to} has {found} entries, expected {expected}")]
    ConnectorShape {
        from: usize,
        to: usize,
        expected: usize,
        found: usize,
    },
    #[error("connector {from}→{to} sends element {element} to {value}, out of range")]
    ConnectorEntryOutOfRange {
        from: usize,
        to: usize,
        element: usize,
        value: usize,
    },
    #[error("connector {from}→{to} does not preserve the identity")]
    ConnectorIdentity { from: usize, to: usize },
    #[error("connector {from}→{to} is not a homomorphism: fails on the pair ({x}, {y})")]
    ConnectorNotHom {
        from: usize,
        to: usize,
        x: usize,
        y: usize,
    },
    #[error("connector {from}→{to} does not commute with the word homomorphisms on symbol {symbol:?}")]
    GeneratorIncompatibility {
        from: usize,
        to: usize,
        symbol: char,
    },
    #[error("approximation is incompatible with connector {from}→{to}")]
    IncompatibleApprox { from: usize, to: usize },
    #[error("approximation has {found} components, expected {expected}")]
    ApproxShape { expected: usize, found: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A monoid homomorphism between two nodes of a system, as a map on
/// element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub from: usize,
    pub to: usize,
    pub map: Vec<usize>,
}

/// A finite diagram of Σ-monoid quotients of Σ*: nodes and connecting
/// homomorphisms, each commuting with the word homomorphisms. Connectors
/// are closed under composition at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfiniteSystemWire", into = "ProfiniteSystemWire")]
pub struct ProfiniteSystem {
    nodes: Vec<SigmaMonoid>,
    connectors: Vec<Connector>,
}

#[derive(Serialize, Deserialize)]
struct ProfiniteSystemWire {
    nodes: Vec<SigmaMonoid>,
    connectors: Vec<Connector>,
}

impl TryFrom<ProfiniteSystemWire> for ProfiniteSystem {
    type Error = ProfiniteError;

    fn try_from(wire: ProfiniteSystemWire) -> Result<ProfiniteSystem, ProfiniteError> {
        build_system(wire.nodes, wire.connectors)
    }
}

impl From<ProfiniteSystem> for ProfiniteSystemWire {
    fn from(system: ProfiniteSystem) -> ProfiniteSystemWire {
        ProfiniteSystemWire {
            nodes: system.nodes,
            connectors: system.connectors,
        }
    }
}

/// Validates and assembles a system. Every connector must be a monoid
/// homomorphism (checked on all pairs) sending each symbol generator of
/// its source to the matching generator of its target — that is exactly
/// commuting with the homomorphisms from Σ*, checked on `{m_a}`. The
/// connector set is then completed under composition.
pub fn build_system(
    nodes: Vec<SigmaMonoid>,
    connectors: Vec<Connector>,
) -> Result<ProfiniteSystem, ProfiniteError> {
    if let Some(first) = nodes.first() {
        for (i, node) in nodes.iter().enumerate() {
            if node.alphabet() != first.alphabet() {
                return Err(ProfiniteError::NodeAlphabetMismatch { node: i });
            }
        }
    }
    for (i, connector) in connectors.iter().enumerate() {
        for node in [connector.from, connector.to] {
            if node >= nodes.len() {
                return Err(ProfiniteError::BadConnectorNode { connector: i, node });
            }
        }
        check_connector(&nodes, connector)?;
    }

    // Close under composition: g∘f for f: p→q, g: q→r is itself a valid
    // connector (composites of homomorphisms commuting with the word
    // homomorphisms again commute), so only genuinely new maps are added.
    let mut closed: Vec<Connector> = Vec::new();
    for connector in connectors {
        if !closed.contains(&connector) {
            closed.push(connector);
        }
    }
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot = closed.clone();
        for f in &snapshot {
            for g in &snapshot {
                if f.to != g.from {
                    continue;
                }
                let composite = Connector {
                    from: f.from,
                    to: g.to,
                    map: f.map.iter().map(|&x| g.map[x]).collect(),
                };
                if !closed.contains(&composite) {
                    closed.push(composite);
                    grew = true;
                }
            }
        }
    }

    Ok(ProfiniteSystem {
        nodes,
        connectors: closed,
    })
}

fn check_connector(nodes: &[SigmaMonoid], connector: &Connector) -> Result<(), ProfiniteError> {
    let (from, to) = (connector.from, connector.to);
    let source = nodes[from].monoid();
    let target = nodes[to].monoid();
    if connector.map.len() != source.size() {
        return Err(ProfiniteError::ConnectorShape {
            from,
            to,
            expected: source.size(),
            found: connector.map.len(),
        });
    }
    for (element, &value) in connector.map.iter().enumerate() {
        if value >= target.size() {
            return Err(ProfiniteError::ConnectorEntryOutOfRange {
                from,
                to,
                element,
                value,
            });
        }
    }
    if connector.map[source.identity()] != target.identity() {
        return Err(ProfiniteError::ConnectorIdentity { from, to });
    }
    for x in 0..source.size() {
        for y in 0..source.size() {
            if connector.map[source.mul(x, y)]
                != target.mul(connector.map[x], connector.map[y])
            {
                return Err(ProfiniteError::ConnectorNotHom { from, to, x, y });
            }
        }
    }
    for (i, &symbol) in nodes[from].alphabet().symbols().iter().enumerate() {
        if connector.map[nodes[from].generators()[i]] != nodes[to].generators()[i] {
            return Err(ProfiniteError::GeneratorIncompatibility { from, to, symbol });
        }
    }
    Ok(())
}

impl ProfiniteSystem {
    pub fn nodes(&self) -> &[SigmaMonoid] {
        &self.nodes
    }

    pub fn connectors(&self) -> &[Connector] {
        &self.connectors
    }

    /// The canonical image of a finite word: its homomorphic image at
    /// every node. Compatible with all connectors by construction.
    pub fn embed_word(&self, word: &Word) -> Result<ProfiniteWordApprox, ProfiniteError> {
        let components = self
            .nodes
            .iter()
            .map(|node| node.hom(word))
            .collect::<Result<Vec<_>, _>>()?;
        let approx = ProfiniteWordApprox { components };
        debug_assert!(self.compatible(&approx).is_ok());
        Ok(approx)
    }

    /// Evaluates an ω-term at every node. Homomorphisms preserve
    /// idempotent powers, so the result is connector-compatible; this is
    /// asserted rather than assumed.
    pub fn eval(&self, term: &OmegaTerm) -> Result<ProfiniteWordApprox, ProfiniteError> {
        let components = self
            .nodes
            .iter()
            .map(|node| term.eval(node))
            .collect::<Result<Vec<_>, _>>()?;
        let approx = ProfiniteWordApprox { components };
        self.compatible(&approx)?;
        Ok(approx)
    }

    /// Checks one approximation against every connector.
    pub fn compatible(&self, approx: &ProfiniteWordApprox) -> Result<(), ProfiniteError> {
        if approx.components.len() != self.nodes.len() {
            return Err(ProfiniteError::ApproxShape {
                expected: self.nodes.len(),
                found: approx.components.len(),
            });
        }
        for connector in &self.connectors {
            if connector.map[approx.components[connector.from]]
                != approx.components[connector.to]
            {
                return Err(ProfiniteError::IncompatibleApprox {
                    from: connector.from,
                    to: connector.to,
                });
            }
        }
        Ok(())
    }
}

/// One element of the finite approximation: a choice of element per node,
/// compatible with all connectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfiniteWordApprox {
    components: Vec<usize>,
}

impl ProfiniteWordApprox {
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, node: usize) -> usize {
        self.components[node]
    }
}

/// A clopen subset of the approximation: a subset of one Σ-monoid node.
/// Its pullback along evaluation of words is a regular language, and every
/// regular language arises this way from its syntactic node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClopenRecognizer {
    #[serde(flatten)]
    node: SigmaMonoid,
    subset: BTreeSet<usize>,
}

impl ClopenRecognizer {
    pub fn new(
        node: SigmaMonoid,
        subset: impl IntoIterator<Item = usize>,
    ) -> Result<ClopenRecognizer, MonoidError> {
        let subset: BTreeSet<usize> = subset.into_iter().collect();
        if let Some(&index) = subset.iter().find(|&&m| m >= node.monoid().size()) {
            return Err(MonoidError::BadElement { index });
        }
        Ok(ClopenRecognizer { node, subset })
    }

    pub fn node(&self) -> &SigmaMonoid {
        &self.node
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    /// Membership of a word in the pullback, without building the
    /// expression: `hom(w) ∈ S`.
    pub fn contains(&self, word: &Word) -> Result<bool, MonoidError> {
        Ok(self.subset.contains(&self.node.hom(word)?))
    }

    /// As a monoid recognizer (same node, accepting on the subset).
    pub fn recognizer(&self) -> MonoidRecognizer {
        MonoidRecognizer::new(self.node.clone(), self.subset.iter().copied())
            .expect("subset validated at construction")
    }
}

/// The regular language `{w | hom(w) ∈ S}` of a clopen, as an expression.
pub fn clopen_pullback(clopen: &ClopenRecognizer) -> Language {
    clopen.recognizer().language()
}

/// The partition of a finite monoid by equality of left quotients of `S`:
/// `a ∼ b` iff `a⁻¹S = b⁻¹S` where `a⁻¹S = {m | a·m ∈ S}`. The classes
/// are the finite shadow of the clopen decomposition of the completion
/// induced by `S`.
pub fn sim_classes(monoid: &FiniteMonoid, subset: &BTreeSet<usize>) -> Partition {
    let mut quotient_to_class: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for a in 0..monoid.size() {
        let left_quotient: Vec<bool> = (0..monoid.size())
            .map(|m| subset.contains(&monoid.mul(a, m)))
            .collect();
        match quotient_to_class
            .iter_mut()
            .find(|(key, _)| *key == left_quotient)
        {
            Some((_, class)) => class.push(a),
            None => quotient_to_class.push((left_quotient, vec![a])),
        }
    }
    let blocks = quotient_to_class.into_iter().map(|(_, class)| class).collect();
    Partition::new(monoid.size(), blocks).expect("classes cover every element exactly once")
}

/// Outcome of [`separate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    /// The two languages are semantically equal.
    Equal,
    /// A clopen whose pullback is the symmetric difference: it contains a
    /// word of exactly one of the two languages — every word it contains.
    Separated(ClopenRecognizer),
}

/// Separates two languages by a clopen, or reports them equal. The clopen
/// comes from the syntactic monoid of the symmetric difference, so its
/// pullback is nonempty exactly when the languages differ.
pub fn separate(left: &Language, right: &Language) -> Result<Separation, MonoidError> {
    if left.alphabet() != right.alphabet() {
        return Err(MonoidError::AlphabetMismatch);
    }
    if left
        .semantically_equal(right)
        .expect("alphabets checked above")
    {
        return Ok(Separation::Equal);
    }
    let difference = left
        .symmetric_difference(right)
        .expect("alphabets checked above");
    let recognizer = syntactic_monoid(&difference);
    let clopen = ClopenRecognizer::new(
        recognizer.sigma_monoid().clone(),
        recognizer.accepting().iter().copied(),
    )
    .expect("accepting subset is valid for its own monoid");
    Ok(Separation::Separated(clopen))
}

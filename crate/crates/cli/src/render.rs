//! Text and DOT renderers for automata and monoids. All output is
//! stable-ordered: states and elements ascending, edge labels sorted, so
//! identical inputs render byte-identically.

use std::collections::BTreeMap;

use regulus::monoid::SigmaMonoid;
use regulus::PointedAutomaton;

/// One line per state with its outgoing transitions, headed by the state
/// count, start state, and accepting set.
pub fn automaton_text(automaton: &PointedAutomaton) -> String {
    let carrier = automaton.carrier();
    let accepting: Vec<String> = (0..carrier.len())
        .filter(|&q| automaton.automaton().is_accepting(q))
        .map(|q| q.to_string())
        .collect();
    let mut out = format!(
        "states: {}  start: {}  accepting: {{{}}}\n",
        carrier.len(),
        automaton.start(),
        accepting.join(", ")
    );
    for q in 0..carrier.len() {
        out.push_str(&format!("{q}: {}\n", carrier.name(q)));
        for &symbol in carrier.alphabet().symbols() {
            let target = carrier
                .step(q, symbol)
                .expect("alphabet symbols act totally");
            out.push_str(&format!("  {symbol} → {target}\n"));
        }
    }
    out
}

/// DOT digraph of the automaton: accepting states are double circles, the
/// start state is drawn bold, and parallel edges are merged into one edge
/// with a comma-separated label.
pub fn automaton_dot(automaton: &PointedAutomaton) -> String {
    let carrier = automaton.carrier();
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in 0..carrier.len() {
        let mut attributes = vec![format!("label={}", quote(carrier.name(q)))];
        if automaton.automaton().is_accepting(q) {
            attributes.push("shape=doublecircle".into());
        }
        if q == automaton.start() {
            attributes.push("style=bold".into());
        }
        out.push_str(&format!("  q{q} [{}];\n", attributes.join(", ")));
    }
    for (source, target, label) in grouped_edges(carrier) {
        out.push_str(&format!(
            "  q{source} -> q{target} [label={}];\n",
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

/// One line per element with its generator transitions, headed by the
/// element count and the symbol-to-generator assignment.
pub fn monoid_text(monoid: &SigmaMonoid) -> String {
    let generators: Vec<String> = monoid
        .alphabet()
        .symbols()
        .iter()
        .zip(monoid.generators())
        .map(|(&symbol, &element)| format!("{symbol} ↦ {}", monoid.element_name(element)))
        .collect();
    format!(
        "elements: {}\ngenerators: {}\n\n{}",
        monoid.monoid().size(),
        generators.join(", "),
        monoid.render_cayley()
    )
}

/// DOT digraph of the right Cayley graph on the symbol generators: an edge
/// `x → x·mₐ` labeled `a`, with parallel edges merged.
pub fn cayley_dot(monoid: &SigmaMonoid) -> String {
    let mut out = String::from("digraph cayley {\n  rankdir=LR;\n  node [shape=circle];\n");
    for element in 0..monoid.monoid().size() {
        out.push_str(&format!(
            "  m{element} [label={}];\n",
            quote(monoid.element_name(element))
        ));
    }
    for (source, target, label) in grouped_edges(&monoid.as_sigma_set()) {
        out.push_str(&format!(
            "  m{source} -> m{target} [label={}];\n",
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

/// Edges of a Σ-set grouped by (source, target), labels in alphabet order.
fn grouped_edges(carrier: &regulus::SigmaSet) -> Vec<(usize, usize, String)> {
    let mut edges = Vec::new();
    for q in 0..carrier.len() {
        let mut by_target: BTreeMap<usize, Vec<char>> = BTreeMap::new();
        for &symbol in carrier.alphabet().symbols() {
            let target = carrier
                .step(q, symbol)
                .expect("alphabet symbols act totally");
            by_target.entry(target).or_default().push(symbol);
        }
        for (target, symbols) in by_target {
            let label: Vec<String> = symbols.iter().map(char::to_string).collect();
            edges.push((q, target, label.join(",")));
        }
    }
    edges
}

/// Quotes a DOT string literal (labels may contain `"`, `\`, `∅`, …).
fn quote(label: &str) -> String {
    let mut quoted = String::from("\"");
    for c in label.chars() {
        if c == '"' || c == '\\' {
            quoted.push('\\');
        }
        quoted.push(c);
    }
    quoted.push('"');
    quoted
}

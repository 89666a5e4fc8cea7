//! Symbolic recognition: from states to expressions, and the coalgebra laws
//! of the recognition map.
//!
//! Every state `q` of an automaton recognizes a language `L_q`, and
//! `q ↦ L_q` is the unique equivariant map from the automaton to the space
//! of all languages. [`Automaton::language_of`] computes `L_q` as an
//! expression by state elimination; [`recognition_family_check`] verifies
//! the two laws that characterize the map — the ε-law `ε ∈ L_q ⇔ q ∈ F`
//! and the derivative law `a⁻¹L_q = L_{δ(q,a)}` — making corrupted engines
//! (or hand-supplied families) detectable.

use crate::alphabet::Word;
use crate::language::{concat_of, star_of, union_of, Ast, Language};
use crate::sigma::StateId;

use super::{Automaton, AutomataError};

impl Automaton {
    /// The language recognized from `state`, as an expression: paths from
    /// `state` to the accept set, computed by eliminating states from a
    /// generalized (expression-labeled) transition graph.
    ///
    /// The output is normalized but not guaranteed shortest; only its
    /// semantics is contractual. States are eliminated cheapest-first
    /// (fewest in×out edges, ties by index), so the result is
    /// deterministic.
    ///
    /// # Panics
    /// Panics if `state` is out of range.
    pub fn language_of(&self, state: StateId) -> Language {
        let alphabet = self.carrier.alphabet();
        let n = self.carrier.len();
        assert!(state < n, "state index {state} out of range");
        // Nodes 0..n are automaton states; n is a virtual source, n+1 a
        // virtual sink. edges[p][q] = expression labeling p → q (∅ = none).
        let source = n;
        let sink = n + 1;
        let mut edges = vec![vec![Ast::Empty; n + 2]; n + 2];
        for p in 0..n {
            for (i, &symbol) in alphabet.symbols().iter().enumerate() {
                let q = self.carrier.step_unchecked(p, i);
                edges[p][q] = union_of(vec![edges[p][q].clone(), Ast::Literal(symbol)]);
            }
        }
        edges[source][state] = Ast::Epsilon;
        for &f in &self.accept {
            edges[f][sink] = Ast::Epsilon;
        }

        let mut alive: Vec<bool> = vec![true; n];
        for _ in 0..n {
            let victim = Self::cheapest_victim(&edges, &alive, source, sink);
            alive[victim] = false;
            let through_loop = star_of(std::mem::replace(&mut edges[victim][victim], Ast::Empty));
            let incoming: Vec<usize> = (0..n)
                .filter(|&p| alive[p])
                .chain([source])
                .filter(|&p| edges[p][victim] != Ast::Empty)
                .collect();
            let outgoing: Vec<usize> = (0..n)
                .filter(|&q| alive[q])
                .chain([sink])
                .filter(|&q| edges[victim][q] != Ast::Empty)
                .collect();
            for &p in &incoming {
                for &q in &outgoing {
                    let via = concat_of(vec![
                        edges[p][victim].clone(),
                        through_loop.clone(),
                        edges[victim][q].clone(),
                    ]);
                    edges[p][q] = union_of(vec![edges[p][q].clone(), via]);
                }
            }
            for node in 0..n + 2 {
                edges[node][victim] = Ast::Empty;
                edges[victim][node] = Ast::Empty;
            }
        }
        Language::new(edges[source][sink].clone(), alphabet.clone())
            .expect("literals come from the alphabet")
    }

    /// Picks the live state with the fewest incoming×outgoing edges
    /// (self-loops excluded), breaking ties toward the smallest index.
    fn cheapest_victim(edges: &[Vec<Ast>], alive: &[bool], source: usize, sink: usize) -> usize {
        let n = alive.len();
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let incoming = (0..n)
                .filter(|&p| alive[p] && p != v)
                .chain([source])
                .filter(|&p| edges[p][v] != Ast::Empty)
                .count();
            let outgoing = (0..n)
                .filter(|&q| alive[q] && q != v)
                .chain([sink])
                .filter(|&q| edges[v][q] != Ast::Empty)
                .count();
            let cost = incoming * outgoing;
            if best.map_or(true, |(c, _)| cost < c) {
                best = Some((cost, v));
            }
        }
        best.expect("a live state remains").1
    }

    /// The recognition map on all states: `vec[q]` is `L_q`.
    pub fn languages(&self) -> Vec<Language> {
        (0..self.carrier.len())
            .map(|q| self.language_of(q))
            .collect()
    }
}

/// Checks that `family[q]` behaves like the recognition map `q ↦ L_q`:
///
/// * ε-law: `family[q]` is nullable iff `q` is accepting;
/// * derivative law: `a⁻¹family[q]` equals `family[δ(q,a)]` semantically;
/// * sample law: `family[q]` and the run from `q` agree on every sample
///   word.
///
/// Returns `Ok(false)` with no further detail on the first violated law.
pub fn recognition_family_check(
    automaton: &Automaton,
    family: &[Language],
    samples: &[Word],
) -> Result<bool, AutomataError> {
    let carrier = automaton.carrier();
    if family.len() != carrier.len() {
        return Err(AutomataError::FamilyShape {
            expected: carrier.len(),
            found: family.len(),
        });
    }
    if family
        .iter()
        .any(|language| language.alphabet() != carrier.alphabet())
    {
        return Err(AutomataError::AlphabetMismatch);
    }
    for q in 0..carrier.len() {
        if family[q].nullable() != automaton.is_accepting(q) {
            return Ok(false);
        }
        for (i, &symbol) in carrier.alphabet().symbols().iter().enumerate() {
            let stepped = &family[carrier.step_unchecked(q, i)];
            let quotient = family[q]
                .derivative(symbol)
                .expect("symbol from the alphabet");
            if !quotient
                .semantically_equal(stepped)
                .expect("family shares one alphabet")
            {
                return Ok(false);
            }
        }
        for word in samples {
            if family[q].contains(word).map_err(|_| AutomataError::AlphabetMismatch)?
                != automaton.accepts_from(q, word)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Self-check of the recognition map the engine computes: builds `q ↦ L_q`
/// by state elimination and validates both coalgebra laws plus sample
/// agreement. True for every well-formed automaton; exists so corruption
/// (and the machinery itself) is testable.
pub fn recognition_morphism_check(
    automaton: &Automaton,
    samples: &[Word],
) -> Result<bool, AutomataError> {
    let family = automaton.languages();
    recognition_family_check(automaton, &family, samples)
}

#[cfg(test)]
mod tests {
    use super::super::PointedAutomaton;
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::sigma::SigmaSet;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    fn word(text: &str) -> Word {
        Word::parse(text, &ab()).unwrap()
    }

    fn ab_cycle() -> Automaton {
        let carrier = SigmaSet::new(
            ab(),
            vec!["q0".into(), "q1".into(), "dead".into()],
            vec![vec![1, 2], vec![2, 0], vec![2, 2]],
        )
        .unwrap();
        Automaton::new(carrier, [0]).unwrap()
    }

    #[test]
    fn no_accept_states_means_empty_everywhere() {
        let carrier = SigmaSet::new(
            ab(),
            vec!["p".into(), "q".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let automaton = Automaton::new(carrier, []).unwrap();
        for q in 0..2 {
            let empty = Language::empty(ab());
            assert!(automaton.language_of(q).semantically_equal(&empty).unwrap());
        }
    }

    #[test]
    fn all_accepting_self_loop_is_sigma_star() {
        let carrier = SigmaSet::new(ab(), vec!["only".into()], vec![vec![0, 0]]).unwrap();
        let automaton = Automaton::new(carrier, [0]).unwrap();
        let full = Language::full(ab());
        assert!(automaton.language_of(0).semantically_equal(&full).unwrap());
    }

    #[test]
    fn cycle_language_matches_runs() {
        let automaton = ab_cycle();
        let language = automaton.language_of(0);
        let reference = Language::parse("(ab)*", &ab()).unwrap();
        assert!(language.semantically_equal(&reference).unwrap());
        for text in ["", "ab", "abab", "aba", "ba", "aab"] {
            let w = word(text);
            assert_eq!(
                language.contains(&w).unwrap(),
                automaton.accepts_from(0, &w).unwrap(),
                "mismatch on {text}"
            );
        }
    }

    #[test]
    fn symbolic_language_survives_minimization_roundtrip() {
        // language() of a pointed automaton re-recognizes the same set
        let pointed = PointedAutomaton::new(ab_cycle(), 0).unwrap();
        let expression = pointed.language();
        let rebuilt = super::super::minimal_automaton(&expression);
        assert!(pointed.isomorphic(&rebuilt).unwrap());
    }

    #[test]
    fn recognition_laws_hold_and_detect_corruption() {
        let samples: Vec<Word> = ["", "a", "b", "ab", "ba", "abab", "bb"]
            .iter()
            .map(|t| word(t))
            .collect();
        let automaton = ab_cycle();
        assert!(recognition_morphism_check(&automaton, &samples).unwrap());

        // empty automaton: vacuously true
        let empty_carrier = SigmaSet::new(ab(), vec![], vec![]).unwrap();
        let empty = Automaton::new(empty_carrier, []).unwrap();
        assert!(recognition_morphism_check(&empty, &samples).unwrap());

        // corrupt the accept set: the ε-law must catch the flip
        let corrupted = Automaton::new(automaton.carrier().clone(), [0, 2]).unwrap();
        let family = automaton.languages();
        assert!(!recognition_family_check(&corrupted, &family, &samples).unwrap());

        // corrupt the family: swap two state languages
        let mut swapped = family.clone();
        swapped.swap(0, 1);
        assert!(!recognition_family_check(&automaton, &swapped, &samples).unwrap());

        // wrong family size is a contract error, not a false
        assert!(matches!(
            recognition_family_check(&automaton, &family[..2], &samples),
            Err(AutomataError::FamilyShape {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn distinct_accept_sets_give_distinct_families() {
        // injectivity of F ↦ (q ↦ L_q) on a fixed carrier: a state in the
        // symmetric difference of two accept sets differs on ε.
        let carrier = ab_cycle().carrier().clone();
        let f1 = Automaton::new(carrier.clone(), [0]).unwrap();
        let f2 = Automaton::new(carrier, [0, 1]).unwrap();
        let l1 = f1.languages();
        let l2 = f2.languages();
        assert!((0..l1.len()).any(|q| !l1[q].semantically_equal(&l2[q]).unwrap()));
    }
}

//! Minimization by partition refinement.
//!
//! This is the second, independent route to the minimal automaton (the
//! first being derivative closure in [`minimal_automaton`]): restrict to
//! the reachable part, then refine the accept/non-accept partition until
//! states in one block agree on which block every symbol sends them to,
//! and quotient. Moore's algorithm rather than Hopcroft's — clarity over
//! asymptotics at this scale.
//!
//! [`minimal_automaton`]: super::minimal_automaton

use std::collections::HashMap;

use crate::sigma::{quotient, Partition};

use super::{Automaton, PointedAutomaton};

impl PointedAutomaton {
    /// The minimal automaton recognizing the same language: reachable,
    /// with pairwise-distinguishable states. Block states are named
    /// `"{member,…}"` after the states they merge.
    pub fn minimize(&self) -> PointedAutomaton {
        let trimmed = self.trim();
        let n = trimmed.len();
        let symbols = trimmed.carrier().alphabet().len();
        let mut partition = Partition::from_assignment(
            (0..n)
                .map(|q| usize::from(trimmed.automaton.is_accepting(q)))
                .collect(),
        );
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for q in 0..n {
                let signature = (
                    partition.block_of(q),
                    (0..symbols)
                        .map(|i| partition.block_of(trimmed.carrier().step_unchecked(q, i)))
                        .collect::<Vec<_>>(),
                );
                let fresh = ids.len();
                next.push(*ids.entry(signature).or_insert(fresh));
            }
            let refined = Partition::from_assignment(next);
            if refined.len() == partition.len() {
                break;
            }
            partition = refined;
        }
        let (carrier, projection) =
            quotient(trimmed.carrier(), &partition).expect("stable refinement is a congruence");
        let accept = trimmed
            .automaton
            .accept()
            .iter()
            .map(|&q| projection.apply(q));
        let automaton = Automaton::new(carrier, accept).expect("indices in range");
        let start = projection.apply(trimmed.start);
        PointedAutomaton::new(automaton, start).expect("start block exists")
    }
}

//! Cross-verification of the four regularity witnesses.
//!
//! For one input language this builds all four canonical recognizers —
//! the derivative (Nerode) class data, the minimal automaton, the
//! syntactic monoid, and the clopen over the syntactic node — and checks
//! five decidable consistency clauses tying them together:
//!
//! 1. `class-count` — the number of derivative classes equals the minimal
//!    state count;
//! 2. `monoid-recognizes` — the syntactic recognizer accepts exactly the
//!    input language;
//! 3. `clopen-pullback` — pulling the clopen back to an expression gives
//!    the input language again;
//! 4. `monoid-structure` — the transition monoid of the minimal automaton
//!    is generator-isomorphic to the recognizer's monoid;
//! 5. `sample-agreement` — all four answer membership identically on a
//!    word sample.
//!
//! Each failing clause carries a concrete witness (a word, a state count,
//! or a size) rather than a bare `false`.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::automata::{
    is_regular, minimal_automaton, Equivalence, PointedAutomaton, RegularityResult,
};
use crate::language::Language;
use crate::monoid::{
    generator_isomorphic, syntactic_monoid_of_minimal, transition_monoid, MonoidRecognizer,
};
use crate::profinite::{clopen_pullback, ClopenRecognizer};
use crate::sigma::derivative_sigma_set;

/// The four recognizers of one regular language, one per presentation.
#[derive(Debug, Clone)]
pub struct FourWitnesses {
    /// Derivative-closure data: the orbit-finite presentation minimized,
    /// with its class count.
    pub nerode: RegularityResult,
    /// The minimal automaton.
    pub dfa: PointedAutomaton,
    /// The syntactic monoid with its accepting subset.
    pub monoid: MonoidRecognizer,
    /// The same subset read as a clopen of the profinite approximation.
    pub clopen: ClopenRecognizer,
}

/// One verified consistency clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeClause {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of [`verify_bridge`]: five clauses, each with a witness when it
/// fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub clauses: Vec<BridgeClause>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|clause| clause.pass)
    }
}

impl std::fmt::Display for BridgeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for clause in &self.clauses {
            let mark = if clause.pass { "ok" } else { "FAIL" };
            write!(f, "{:18} {mark}", clause.name)?;
            if let Some(witness) = &clause.witness {
                write!(f, "  ({witness})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Builds all four witnesses. The derivative presentation is explored
/// without a bound — finiteness is guaranteed for expression inputs — and
/// the monoid and clopen share the syntactic construction over the minimal
/// automaton.
pub fn four_witnesses(language: &Language) -> FourWitnesses {
    let nerode = is_regular(
        &derivative_sigma_set(language),
        language,
        |state| state.nullable(),
        usize::MAX,
    );
    let dfa = minimal_automaton(language);
    let monoid = syntactic_monoid_of_minimal(&dfa);
    let clopen = ClopenRecognizer::new(
        monoid.sigma_monoid().clone(),
        monoid.accepting().iter().copied(),
    )
    .expect("accepting subset is valid for its own monoid");
    FourWitnesses {
        nerode,
        dfa,
        monoid,
        clopen,
    }
}

/// Seed used by [`verify_bridge`] for its membership sample.
pub const DEFAULT_SAMPLE_SEED: u64 = 0xb1d6e;

/// Checks the five clauses of one witness bundle against the language.
pub fn verify_bridge(witnesses: &FourWitnesses, language: &Language) -> BridgeReport {
    verify_bridge_seeded(witnesses, language, DEFAULT_SAMPLE_SEED)
}

/// [`verify_bridge`] with a caller-chosen seed for the membership sample.
pub fn verify_bridge_seeded(
    witnesses: &FourWitnesses,
    language: &Language,
    seed: u64,
) -> BridgeReport {
    let mut clauses = Vec::with_capacity(5);

    // (1) derivative class count = minimal state count
    clauses.push(match &witnesses.nerode {
        RegularityResult::Regular {
            nerode_class_count, ..
        } => clause(
            "class-count",
            *nerode_class_count == witnesses.dfa.len(),
            format!(
                "derivative classes {nerode_class_count}, minimal states {}",
                witnesses.dfa.len()
            ),
        ),
        RegularityResult::Unknown { bound_hit } => BridgeClause {
            name: "class-count".into(),
            pass: false,
            witness: Some(format!("derivative orbit exceeded bound {bound_hit}")),
        },
    });

    // (2) the monoid recognizer accepts exactly the language
    clauses.push(match witnesses.monoid.recognizes(language) {
        Ok(Equivalence::Equivalent) => clause("monoid-recognizes", true, String::new()),
        Ok(Equivalence::Inequivalent(word)) => {
            clause("monoid-recognizes", false, format!("differs on {word}"))
        }
        Err(error) => clause("monoid-recognizes", false, error.to_string()),
    });

    // (3) the clopen pulls back to the language; decided on the minimal
    // automata so a failure carries the shortlex-least differing word
    let pulled = clopen_pullback(&witnesses.clopen);
    clauses.push(
        match minimal_automaton(&pulled).equivalent(&witnesses.dfa) {
            Ok(Equivalence::Equivalent) => clause("clopen-pullback", true, String::new()),
            Ok(Equivalence::Inequivalent(word)) => {
                clause("clopen-pullback", false, format!("differs on {word}"))
            }
            Err(error) => clause("clopen-pullback", false, error.to_string()),
        },
    );

    // (4) transition monoid of the minimal automaton ≅ recognizer monoid,
    // matching generators symbol by symbol
    let of_dfa = transition_monoid(witnesses.dfa.carrier());
    let same = generator_isomorphic(&of_dfa, witnesses.monoid.sigma_monoid());
    clauses.push(clause(
        "monoid-structure",
        same,
        format!(
            "transition monoid size {}, recognizer size {}",
            of_dfa.monoid().size(),
            witnesses.monoid.sigma_monoid().monoid().size()
        ),
    ));

    // (5) membership agreement on a deterministic sample
    let sample = sample_words(language.alphabet(), seed);
    let mut disagreement = None;
    for word in &sample {
        let answers: [Result<bool, String>; 4] = [
            language.contains(word).map_err(|e| e.to_string()),
            witnesses.dfa.accepts(word).map_err(|e| e.to_string()),
            witnesses.monoid.accepts(word).map_err(|e| e.to_string()),
            witnesses.clopen.contains(word).map_err(|e| e.to_string()),
        ];
        let answers: Vec<bool> = match answers.into_iter().collect::<Result<_, String>>() {
            Ok(bits) => bits,
            Err(error) => {
                disagreement = Some(format!("error on {word}: {error}"));
                break;
            }
        };
        if answers.iter().any(|&b| b != answers[0]) {
            disagreement = Some(format!(
                "word {word}: derivative {}, dfa {}, monoid {}, clopen {}",
                answers[0], answers[1], answers[2], answers[3]
            ));
            break;
        }
    }
    clauses.push(BridgeClause {
        name: "sample-agreement".into(),
        pass: disagreement.is_none(),
        witness: disagreement,
    });

    BridgeReport { clauses }
}

fn clause(name: &str, pass: bool, witness: String) -> BridgeClause {
    BridgeClause {
        name: name.into(),
        pass,
        witness: (!pass).then_some(witness),
    }
}

/// A deterministic membership sample: every word up to length 4, plus 24
/// seeded random words of lengths 5 through 12.
pub fn sample_words(alphabet: &Alphabet, seed: u64) -> Vec<Word> {
    use rand::Rng;
    use rand::SeedableRng;

    let mut words = alphabet.words_up_to(4);
    if alphabet.len() == 0 {
        return words;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let len = rng.gen_range(5..=12);
        let mut word = Word::epsilon();
        for _ in 0..len {
            word = word.extended(alphabet.symbol(rng.gen_range(0..alphabet.len())));
        }
        words.push(word);
    }
    words
}

//! Seeded random corpora: expressions, Σ-sets, and words.
//!
//! Everything here is deterministic in its seed, so test failures
//! reproduce exactly and benchmark inputs are stable across runs. The
//! expression generator leans toward union/concatenation/star — the
//! operators that grow interesting structure — and uses intersection and
//! complement sparingly, which keeps the derived automata and monoids at
//! desk scale without making them trivial.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::alphabet::{Alphabet, Word};
use crate::language::Language;
use crate::sigma::SigmaSet;

/// `count` random expressions over `alphabet`, each of syntactic depth at
/// most `max_depth`.
pub fn random_languages(
    alphabet: &Alphabet,
    count: usize,
    max_depth: usize,
    seed: u64,
) -> Vec<Language> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_language(alphabet, max_depth, &mut rng))
        .collect()
}

/// One random expression of depth at most `max_depth`.
pub fn random_language(alphabet: &Alphabet, max_depth: usize, rng: &mut impl Rng) -> Language {
    let text = render(&generate(alphabet, max_depth, rng));
    Language::parse(&text, alphabet).expect("generated text is well-formed")
}

/// `count` random Σ-sets over `alphabet` with 1 to `max_states` states
/// and uniformly random transitions.
pub fn random_sigma_sets(
    alphabet: &Alphabet,
    count: usize,
    max_states: usize,
    seed: u64,
) -> Vec<SigmaSet> {
    assert!(max_states >= 1, "Σ-sets here always have a state to start from");
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_states);
            let names = (0..n).map(|i| format!("q{i}")).collect();
            let delta = (0..n)
                .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            SigmaSet::new(alphabet.clone(), names, delta)
                .expect("generated names and tables are valid")
        })
        .collect()
}

/// `count` random words of length at most `max_len` (length uniform,
/// symbols uniform).
pub fn random_words(alphabet: &Alphabet, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_word(alphabet, max_len, &mut rng))
        .collect()
}

/// One random word of length at most `max_len`.
pub fn random_word(alphabet: &Alphabet, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut word = Word::epsilon();
    for _ in 0..len {
        word = word.extended(alphabet.symbol(rng.gen_range(0..alphabet.len())));
    }
    word
}

enum Node {
    Literal(char),
    Epsilon,
    Empty,
    Union(Box<Node>, Box<Node>),
    Intersect(Box<Node>, Box<Node>),
    Concat(Box<Node>, Box<Node>),
    Complement(Box<Node>),
    Star(Box<Node>),
}

fn generate(alphabet: &Alphabet, depth: usize, rng: &mut impl Rng) -> Node {
    if depth == 0 {
        // leaves: mostly literals, occasionally ε or ∅
        return match rng.gen_range(0..10) {
            0 => Node::Epsilon,
            1 => Node::Empty,
            _ => Node::Literal(alphabet.symbol(rng.gen_range(0..alphabet.len()))),
        };
    }
    match rng.gen_range(0..100) {
        0..=24 => Node::Union(
            Box::new(generate(alphabet, depth - 1, rng)),
            Box::new(generate(alphabet, depth - 1, rng)),
        ),
        25..=54 => Node::Concat(
            Box::new(generate(alphabet, depth - 1, rng)),
            Box::new(generate(alphabet, depth - 1, rng)),
        ),
        55..=74 => Node::Star(Box::new(generate(alphabet, depth - 1, rng))),
        75..=84 => Node::Intersect(
            Box::new(generate(alphabet, depth - 1, rng)),
            Box::new(generate(alphabet, depth - 1, rng)),
        ),
        85..=94 => Node::Complement(Box::new(generate(alphabet, depth - 1, rng))),
        _ => generate(alphabet, 0, rng),
    }
}

/// Renders with full parenthesization; re-parsing normalizes.
fn render(node: &Node) -> String {
    match node {
        Node::Literal(symbol) => symbol.to_string(),
        Node::Epsilon => "#".to_string(),
        Node::Empty => "∅".to_string(),
        Node::Union(l, r) => format!("({}|{})", render(l), render(r)),
        Node::Intersect(l, r) => format!("({}&{})", render(l), render(r)),
        Node::Concat(l, r) => format!("({}{})", render(l), render(r)),
        Node::Complement(inner) => format!("(!{})", render(inner)),
        Node::Star(inner) => format!("({})*", render(inner)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    #[test]
    fn corpora_are_deterministic_in_the_seed() {
        let first = random_languages(&ab(), 50, 6, 42);
        let second = random_languages(&ab(), 50, 6, 42);
        assert_eq!(first, second);
        let other = random_languages(&ab(), 50, 6, 43);
        assert_ne!(first, other);

        let s1 = random_sigma_sets(&ab(), 20, 4, 7);
        let s2 = random_sigma_sets(&ab(), 20, 4, 7);
        assert_eq!(s1, s2);

        let w1 = random_words(&ab(), 20, 8, 3);
        let w2 = random_words(&ab(), 20, 8, 3);
        assert_eq!(w1, w2);
    }

    #[test]
    fn generated_languages_are_diverse() {
        let corpus = random_languages(&ab(), 100, 6, 0);
        assert_eq!(corpus.len(), 100);
        let distinct: std::collections::BTreeSet<String> =
            corpus.iter().map(|l| l.to_string()).collect();
        assert!(distinct.len() > 60, "only {} distinct expressions", distinct.len());
        // the operator mix should exercise the extended connectives
        let all = corpus.iter().map(|l| l.to_string()).collect::<String>();
        for op in ['|', '&', '!', '*'] {
            assert!(all.contains(op), "operator {op} never generated");
        }
    }

    #[test]
    fn generated_sigma_sets_respect_bounds() {
        for s in random_sigma_sets(&ab(), 50, 4, 1) {
            assert!(1 <= s.len() && s.len() <= 4);
        }
    }

    #[test]
    fn generated_words_respect_length() {
        for w in random_words(&ab(), 100, 5, 9) {
            assert!(w.len() <= 5);
        }
    }
}

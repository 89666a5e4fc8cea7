//! Division (quotient-of-submonoid) and generator-preserving isomorphism.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FiniteMonoid, SigmaMonoid};

/// Default cap on the size of the divisor candidate in [`divides`]:
/// searches stay exhaustive up to this many elements.
pub const DEFAULT_DIVIDES_BUDGET: usize = 8;

/// Outcome of a bounded division check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Divisibility {
    Divides,
    DoesNotDivide,
    /// The candidate exceeded the search budget; no exhaustive answer.
    Unknown,
}

impl std::fmt::Display for Divisibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Divisibility::Divides => "divides",
            Divisibility::DoesNotDivide => "does not divide",
            Divisibility::Unknown => "unknown (budget exceeded)",
        })
    }
}

/// Does `m` divide `n` — is `m` a homomorphic image of a submonoid of `n`?
///
/// Exhaustive when `n` has at most `budget` elements: every submonoid of
/// `n` (closure of a subset together with the identity) is paired with
/// every homomorphism determined by images of its generators, looking for
/// a surjection onto `m`. Beyond the budget the answer is
/// [`Divisibility::Unknown`], except for cases decided by size alone.
pub fn divides(m: &FiniteMonoid, n: &FiniteMonoid, budget: usize) -> Divisibility {
    if m.size() == 1 {
        // the trivial monoid is a quotient of the identity submonoid
        return Divisibility::Divides;
    }
    if m.size() > n.size() {
        // quotients of submonoids never gain elements
        return Divisibility::DoesNotDivide;
    }
    // 2^|n| subsets are enumerated below; past ~20 elements that is no
    // longer a practical budget whatever the caller asked for.
    if n.size() > budget || n.size() > 20 {
        return Divisibility::Unknown;
    }

    let submonoids = all_submonoids(n);
    for submonoid in &submonoids {
        if submonoid.len() < m.size() {
            continue;
        }
        if surjects_onto(n, submonoid, m) {
            return Divisibility::Divides;
        }
    }
    Divisibility::DoesNotDivide
}

/// All submonoids of `n` (subsets containing the identity, closed under
/// product), each as a sorted element list. Computed as closures of all
/// subsets, deduplicated.
fn all_submonoids(n: &FiniteMonoid) -> BTreeSet<Vec<usize>> {
    let size = n.size();
    let mut submonoids = BTreeSet::new();
    for mask in 0u32..(1 << size) {
        let seed: Vec<usize> = (0..size).filter(|&x| mask & (1 << x) != 0).collect();
        submonoids.insert(close_submonoid(n, &seed));
    }
    submonoids
}

/// Smallest submonoid containing `seed`: adds the identity and saturates
/// under product.
fn close_submonoid(n: &FiniteMonoid, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; n.size()];
    let mut elements = vec![n.identity()];
    member[n.identity()] = true;
    for &x in seed {
        if !member[x] {
            member[x] = true;
            elements.push(x);
        }
    }
    let mut frontier = 0;
    while frontier < elements.len() {
        let x = elements[frontier];
        frontier += 1;
        // products with everything already present, both ways around
        for i in 0..elements.len() {
            let y = elements[i];
            for product in [n.mul(x, y), n.mul(y, x)] {
                if !member[product] {
                    member[product] = true;
                    elements.push(product);
                }
            }
        }
    }
    elements.sort_unstable();
    elements
}

/// Is there a surjective homomorphism from the given submonoid of `n` onto
/// `m`? Enumerates images of a greedy generating set of the submonoid and
/// extends each assignment by closure; extensions are verified
/// multiplicatively on all pairs before counting.
fn surjects_onto(n: &FiniteMonoid, submonoid: &[usize], m: &FiniteMonoid) -> bool {
    // Greedy generating set: scan elements, keep those not yet generated.
    let mut generators: Vec<usize> = Vec::new();
    let mut generated = close_submonoid(n, &[]);
    for &x in submonoid {
        if !generated.contains(&x) {
            generators.push(x);
            let mut seed = generators.clone();
            seed.extend_from_slice(&generated);
            generated = close_submonoid(n, &seed);
        }
    }
    debug_assert_eq!(generated, submonoid);

    // Odometer over assignments generator → element of m.
    let mut assignment = vec![0usize; generators.len()];
    loop {
        if let Some(hom) = extend_hom(n, submonoid, &generators, &assignment, m) {
            let mut image: Vec<usize> = hom.iter().filter_map(|&v| v).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() == m.size() {
                return true;
            }
        }
        // advance the odometer
        let mut digit = 0;
        loop {
            if digit == assignment.len() {
                return false;
            }
            assignment[digit] += 1;
            if assignment[digit] < m.size() {
                break;
            }
            assignment[digit] = 0;
            digit += 1;
        }
    }
}

/// Extends `generator ↦ assignment` to a homomorphism on the whole
/// submonoid, or fails. Returns the map indexed by elements of `n`
/// (`None` off the submonoid).
fn extend_hom(
    n: &FiniteMonoid,
    submonoid: &[usize],
    generators: &[usize],
    assignment: &[usize],
    m: &FiniteMonoid,
) -> Option<Vec<Option<usize>>> {
    let mut hom: Vec<Option<usize>> = vec![None; n.size()];
    hom[n.identity()] = Some(m.identity());
    for (&g, &image) in generators.iter().zip(assignment) {
        match hom[g] {
            Some(existing) if existing != image => return None,
            _ => hom[g] = Some(image),
        }
    }
    // Propagate: known × generator until stable.
    let mut changed = true;
    while changed {
        changed = false;
        for &x in submonoid {
            let Some(fx) = hom[x] else { continue };
            for (&g, &fg) in generators.iter().zip(assignment) {
                let product = n.mul(x, g);
                let expected = m.mul(fx, fg);
                match hom[product] {
                    Some(existing) if existing != expected => return None,
                    Some(_) => {}
                    None => {
                        hom[product] = Some(expected);
                        changed = true;
                    }
                }
            }
        }
    }
    // Generated submonoid ⇒ everything reached; verify multiplicativity on
    // all pairs rather than trusting the propagation order.
    for &x in submonoid {
        let fx = hom[x]?;
        for &y in submonoid {
            let fy = hom[y]?;
            if m.mul(fx, fy) != hom[n.mul(x, y)]? {
                return None;
            }
        }
    }
    Some(hom)
}

/// Are two Σ-monoids isomorphic *as Σ-monoids* — via a monoid isomorphism
/// matching up the designated generators symbol by symbol?
///
/// The map is forced: the identity goes to the identity and `x·m_a` to
/// `f(x)·m'_a`, so it is built by closure from the generators. Decides the
/// question exactly when both monoids are generated by their symbol
/// elements (as every transition monoid is); if the source is not
/// generated, no forced map exists and this returns `false`.
pub fn generator_isomorphic(a: &SigmaMonoid, b: &SigmaMonoid) -> bool {
    if a.alphabet() != b.alphabet() || a.monoid().size() != b.monoid().size() {
        return false;
    }
    let size = a.monoid().size();
    let mut forced: Vec<Option<usize>> = vec![None; size];
    forced[a.monoid().identity()] = Some(b.monoid().identity());
    let mut queue = std::collections::VecDeque::from([a.monoid().identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = forced[x].expect("queued elements are mapped");
        for (&ga, &gb) in a.generators().iter().zip(b.generators()) {
            let y = a.monoid().mul(x, ga);
            let fy = b.monoid().mul(fx, gb);
            match forced[y] {
                Some(existing) if existing != fy => return false,
                Some(_) => {}
                None => {
                    forced[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    // Totality (source generated), injectivity, and the homomorphism law
    // on every pair.
    let mut map = Vec::with_capacity(size);
    let mut hit = vec![false; size];
    for image in &forced {
        let Some(image) = *image else { return false };
        if hit[image] {
            return false;
        }
        hit[image] = true;
        map.push(image);
    }
    for x in 0..size {
        for y in 0..size {
            if map[a.monoid().mul(x, y)] != b.monoid().mul(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::language::Language;
    use crate::monoid::{syntactic_monoid, transition_monoid};

    fn lang(text: &str) -> Language {
        Language::parse(text, &"ab".parse::<Alphabet>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_divides_everything() {
        let trivial = FiniteMonoid::trivial();
        for n in [FiniteMonoid::cyclic(1), FiniteMonoid::cyclic(5)] {
            assert_eq!(
                divides(&trivial, &n, DEFAULT_DIVIDES_BUDGET),
                Divisibility::Divides
            );
        }
    }

    #[test]
    fn cyclic_group_division() {
        let z2 = FiniteMonoid::cyclic(2);
        let z3 = FiniteMonoid::cyclic(3);
        let z4 = FiniteMonoid::cyclic(4);
        assert_eq!(divides(&z2, &z4, 8), Divisibility::Divides);
        assert_eq!(divides(&z4, &z4, 8), Divisibility::Divides);
        assert_eq!(divides(&z3, &z4, 8), Divisibility::DoesNotDivide);
        assert_eq!(divides(&z2, &z3, 8), Divisibility::DoesNotDivide);
        assert_eq!(divides(&z4, &z2, 8), Divisibility::DoesNotDivide);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let z2 = FiniteMonoid::cyclic(2);
        let z9 = FiniteMonoid::cyclic(9);
        assert_eq!(divides(&z2, &z9, 8), Divisibility::Unknown);
        // a larger budget settles it
        assert_eq!(divides(&z2, &z9, 9), Divisibility::DoesNotDivide);
        let z10 = FiniteMonoid::cyclic(10);
        assert_eq!(divides(&z2, &z10, 10), Divisibility::Divides);
        // size-only verdicts don't need the budget
        assert_eq!(divides(&z10, &z2, 2), Divisibility::DoesNotDivide);
        assert_eq!(divides(&FiniteMonoid::trivial(), &z10, 2), Divisibility::Divides);
    }

    #[test]
    fn syntactic_divides_other_recognizers() {
        // even number of a's: syntactic monoid is Z2; a Z4 recognizer
        // (counting a's mod 4, accepting 0 and 2) also recognizes it,
        // and Z2 divides its transition monoid.
        let syntactic = syntactic_monoid(&lang("(b|ab*a)*"));
        assert_eq!(syntactic.sigma_monoid().monoid().size(), 2);
        let z4 = SigmaMonoid::new(FiniteMonoid::cyclic(4), "ab".parse().unwrap(), vec![1, 0])
            .unwrap();
        let of_recognizer = transition_monoid(&z4.as_sigma_set());
        assert_eq!(of_recognizer.monoid().size(), 4);
        assert_eq!(
            divides(
                syntactic.sigma_monoid().monoid(),
                of_recognizer.monoid(),
                DEFAULT_DIVIDES_BUDGET
            ),
            Divisibility::Divides
        );
    }

    #[test]
    fn generator_isomorphism_distinguishes_marked_generators() {
        let even_as = syntactic_monoid(&lang("(b|ab*a)*"));
        let even_bs = syntactic_monoid(&lang("(a|ba*b)*"));
        // abstractly both are Z2, but the symbol markings differ
        assert_eq!(even_as.sigma_monoid().monoid().size(), 2);
        assert_eq!(even_bs.sigma_monoid().monoid().size(), 2);
        assert!(generator_isomorphic(
            even_as.sigma_monoid(),
            even_as.sigma_monoid()
        ));
        assert!(!generator_isomorphic(
            even_as.sigma_monoid(),
            even_bs.sigma_monoid()
        ));
    }

    #[test]
    fn generator_isomorphism_across_presentations() {
        // the same language via the syntactic construction and via the
        // transition monoid of an equivalent (differently written) regex
        let m1 = syntactic_monoid(&lang("(ab)*"));
        let m2 = syntactic_monoid(&lang("(ab)*(#|ab(ab)*)"));
        assert!(generator_isomorphic(m1.sigma_monoid(), m2.sigma_monoid()));
        // size mismatch is an immediate no
        let m3 = syntactic_monoid(&lang("(a|b)*a"));
        assert!(!generator_isomorphic(m1.sigma_monoid(), m3.sigma_monoid()));
    }
}

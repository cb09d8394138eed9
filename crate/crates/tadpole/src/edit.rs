//! Edit distance over discrete sequences, with cheap admissible bounds.
//!
//! The bounds substitute for envelope/Euclidean in the string setting:
//!
//! * lower bound: the larger of the length gap and the bag distance (multiset
//!   surplus in either direction) — every unmatched symbol forces at least one
//!   edit,
//! * upper bound: substitutions over the common-length prefix plus the length
//!   gap — an explicit edit script, so always achievable.

use crate::error::{Error, Result};

/// A finite symbol alphabet. Symbols are single ASCII bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    /// Builds an alphabet from the given symbols, deduplicated and sorted.
    pub fn new(mut symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
        }
        symbols.sort_unstable();
        symbols.dedup();
        Ok(Self { symbols })
    }

    pub fn from_str(s: &str) -> Result<Self> {
        Self::new(s.as_bytes().to_vec())
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// A sequence over a finite alphabet. May be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSequence {
    symbols: Vec<u8>,
}

impl DiscreteSequence {
    /// Validates every symbol against the alphabet.
    pub fn new(symbols: Vec<u8>, alphabet: &Alphabet) -> Result<Self> {
        for &s in &symbols {
            if !alphabet.contains(s) {
                return Err(Error::SymbolOutsideAlphabet {
                    row: 0,
                    symbol: s as char,
                });
            }
        }
        Ok(Self { symbols })
    }

    pub fn from_str(s: &str, alphabet: &Alphabet) -> Result<Self> {
        Self::new(s.as_bytes().to_vec(), alphabet)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Unit-cost edit distance (insert, delete, substitute) via the standard
/// dynamic program, using a single rolling row.
pub fn edit_distance(s: &DiscreteSequence, t: &DiscreteSequence) -> usize {
    let (a, b) = (s.symbols(), t.symbols());
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut row: Vec<usize> = (0..=a.len()).collect();
    for (j, &bj) in b.iter().enumerate() {
        let mut prev_diag = row[0];
        row[0] = j + 1;
        for (i, &ai) in a.iter().enumerate() {
            let cost = if ai == bj { prev_diag } else { prev_diag + 1 };
            prev_diag = row[i + 1];
            row[i + 1] = cost.min(row[i] + 1).min(row[i + 1] + 1);
        }
    }
    row[a.len()]
}

/// Bag distance: the larger multiset surplus between the two symbol bags.
fn bag_distance(a: &[u8], b: &[u8]) -> usize {
    let mut counts = [0i64; 256];
    for &s in a {
        counts[s as usize] += 1;
    }
    for &s in b {
        counts[s as usize] -= 1;
    }
    let surplus_a: i64 = counts.iter().filter(|&&c| c > 0).sum();
    let surplus_b: i64 = -counts.iter().filter(|&&c| c < 0).sum::<i64>();
    surplus_a.max(surplus_b) as usize
}

/// Admissible `(lower, upper)` bounds on the edit distance:
/// `lower = max(length gap, bag distance)` and `upper = prefix Hamming
/// mismatches + length gap`. Always `lower <= edit_distance <= upper`.
pub fn edit_bounds(s: &DiscreteSequence, t: &DiscreteSequence) -> (usize, usize) {
    let (a, b) = (s.symbols(), t.symbols());
    let gap = a.len().abs_diff(b.len());
    let lower = gap.max(bag_distance(a, b));
    let mismatches = a.iter().zip(b.iter()).filter(|(x, y)| x != y).count();
    (lower, mismatches + gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alpha() -> Alphabet {
        Alphabet::from_str("ABCDEFGHIJKLMNOPQRSTUVWXYZ").unwrap()
    }

    fn seq(s: &str) -> DiscreteSequence {
        DiscreteSequence::from_str(s, &alpha()).unwrap()
    }

    fn random_seq(rng: &mut ChaCha8Rng, max_len: usize) -> DiscreteSequence {
        let letters = b"ABCD";
        let len = rng.random_range(0..=max_len);
        let symbols = (0..len)
            .map(|_| letters[rng.random_range(0..letters.len())])
            .collect();
        DiscreteSequence::new(symbols, &Alphabet::from_str("ABCD").unwrap()).unwrap()
    }

    #[test]
    fn worked_example() {
        assert_eq!(edit_distance(&seq("INDUSTRY"), &seq("INTEREST")), 6);
    }

    #[test]
    fn identity_and_insertions() {
        let x = seq("KITTEN");
        assert_eq!(edit_distance(&x, &x), 0);
        assert_eq!(edit_distance(&seq(""), &seq("ABC")), 3);
        assert_eq!(edit_distance(&seq("ABC"), &seq("")), 3);
    }

    #[test]
    fn alphabet_membership_is_enforced() {
        let a = Alphabet::from_str("ABC").unwrap();
        assert!(DiscreteSequence::from_str("ABBA", &a).is_err());
        assert!(DiscreteSequence::from_str("", &a).is_ok());
        assert!(Alphabet::new(vec![]).is_err());
    }

    #[test]
    fn bounds_on_the_worked_example() {
        // Bag surplus: INDUSTRY keeps {D, U, Y}, INTEREST keeps {T, E, E},
        // so the bag distance is 3 and the length gap 0. The prefix has 6
        // mismatches.
        assert_eq!(edit_bounds(&seq("INDUSTRY"), &seq("INTEREST")), (3, 6));
        assert_eq!(edit_bounds(&seq("SAME"), &seq("SAME")), (0, 0));
    }

    #[test]
    fn bounds_sandwich_the_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let s = random_seq(&mut rng, 24);
            let t = random_seq(&mut rng, 24);
            let (lo, hi) = edit_bounds(&s, &t);
            let d = edit_distance(&s, &t);
            assert!(lo <= d, "lower {lo} > distance {d}");
            assert!(d <= hi, "distance {d} > upper {hi}");
        }
    }

    #[test]
    fn metric_properties_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..300 {
            let a = random_seq(&mut rng, 12);
            let b = random_seq(&mut rng, 12);
            let c = random_seq(&mut rng, 12);
            let ab = edit_distance(&a, &b);
            assert_eq!(ab, edit_distance(&b, &a));
            assert_eq!(edit_distance(&a, &a), 0);
            if ab == 0 {
                assert_eq!(a, b);
            }
            assert!(ab <= edit_distance(&a, &c) + edit_distance(&c, &b));
        }
    }
}

use std::fmt;

use schottky::Base;

use crate::error::SymbolicError;
use crate::word::{Block, WordA2};

/// omega followed by a large parabolic power p^r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct A3Pair {
    pub omega: WordA2,
    pub r: i64,
}

/// A word cut at every parabolic block with |exponent| >= n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordA3 {
    n: u64,
    pairs: Vec<A3Pair>,
}

impl WordA3 {
    pub fn new(n: u64, pairs: Vec<A3Pair>) -> Result<Self, SymbolicError> {
        if n == 0 {
            return Err(SymbolicError::InvalidA3("cut-off must be positive".into()));
        }
        for (i, pair) in pairs.iter().enumerate() {
            let bad = |why: &str| Err(SymbolicError::InvalidA3(format!("pair {}: {why}", i + 1)));
            if pair.r.unsigned_abs() < n {
                return bad("|r| below the cut-off");
            }
            let (Some(first), Some(last)) = (pair.omega.first(), pair.omega.last()) else {
                return bad("empty omega");
            };
            if first.base != Base::H || last.base != Base::H {
                return bad("omega must begin and end with an h-block");
            }
            if pair.omega.blocks().iter().any(|b| b.base == Base::P && b.exp.unsigned_abs() >= n) {
                return bad("parabolic exponent inside omega reaches the cut-off");
            }
        }
        Ok(Self { n, pairs })
    }

    pub fn cutoff(&self) -> u64 {
        self.n
    }

    pub fn pairs(&self) -> &[A3Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn to_blocks(&self) -> WordA2 {
        let mut out = Vec::new();
        for pair in &self.pairs {
            out.extend_from_slice(pair.omega.blocks());
            out.push(Block::p(pair.r));
        }
        WordA2::new(out).expect("A3 pairs concatenate to an alternating word")
    }
}

impl fmt::Display for WordA3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pair) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "({}) p^{}", pair.omega, pair.r)?;
        }
        Ok(())
    }
}

/// Splits `w` after each parabolic block with |exponent| >= n. Material after
/// the last such block is returned as the remainder; without any such block
/// the A3 word is empty and the remainder is all of `w`.
pub fn reblock(w: &WordA2, n: u64) -> Result<(WordA3, WordA2), SymbolicError> {
    let mut pairs = Vec::new();
    let mut current: Vec<Block> = Vec::new();
    for &b in w.blocks() {
        if b.base == Base::P && b.exp.unsigned_abs() >= n {
            if current.first().is_some_and(|f| f.base == Base::P) || current.is_empty() {
                return Err(SymbolicError::LeadingParabolic);
            }
            pairs.push(A3Pair { omega: WordA2::new(std::mem::take(&mut current))?, r: b.exp });
        } else {
            current.push(b);
        }
    }
    Ok((WordA3::new(n, pairs)?, WordA2::new(current)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WordA2 {
        s.parse().unwrap()
    }

    #[test]
    fn reblock_examples() {
        let (a3, rest) = reblock(&w("h p^2 h p^5 h^2 p^3"), 3).unwrap();
        assert_eq!(a3.pairs(), &[A3Pair { omega: w("h p^2 h"), r: 5 }, A3Pair { omega: w("h^2"), r: 3 }]);
        assert!(rest.is_empty());

        let (a3, rest) = reblock(&w("h p h p"), 2).unwrap();
        assert!(a3.is_empty());
        assert_eq!(rest, w("h p h p"));

        let (a3, rest) = reblock(&w("h p h p^2 h p^3 h p^4"), 3).unwrap();
        assert_eq!(a3.pairs(), &[A3Pair { omega: w("h p h p^2 h"), r: 3 }, A3Pair { omega: w("h"), r: 4 }]);
        assert!(rest.is_empty());
    }

    #[test]
    fn remainder_is_held_back() {
        let src = w("h p^4 h^-1 p h");
        let (a3, rest) = reblock(&src, 3).unwrap();
        assert_eq!(a3.len(), 1);
        assert_eq!(rest, w("h^-1 p h"));
        assert_eq!(a3.to_blocks().concat(&rest), src);
    }

    #[test]
    fn leading_parabolic_is_rejected() {
        assert_eq!(reblock(&w("p^5 h p^4"), 3), Err(SymbolicError::LeadingParabolic));
        assert_eq!(reblock(&w("p h p^4"), 3), Err(SymbolicError::LeadingParabolic));
        // no complete pair: nothing to reject
        assert!(reblock(&w("p h p"), 3).unwrap().0.is_empty());
    }

    #[test]
    fn a3_invariants() {
        let ok = A3Pair { omega: w("h p h"), r: 3 };
        assert!(WordA3::new(3, vec![ok.clone()]).is_ok());
        assert!(WordA3::new(2, vec![A3Pair { omega: w("h p^2 h"), r: 3 }]).is_err());
        assert!(WordA3::new(3, vec![A3Pair { omega: w("h p"), r: 3 }]).is_err());
        assert!(WordA3::new(4, vec![ok]).is_err());
    }
}

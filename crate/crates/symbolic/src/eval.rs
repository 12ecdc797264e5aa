use hyperbolic::{LogMatrix, Model, MoebiusMap};
use schottky::SchottkyGroup;

use crate::a3::WordA3;
use crate::error::SymbolicError;
use crate::word::{Block, WordA1, WordA2};

/// Ordered product of generator matrices.
pub trait Evaluate {
    fn evaluate_log(&self, group: &SchottkyGroup) -> LogMatrix;

    fn evaluate(&self, group: &SchottkyGroup) -> Result<MoebiusMap, SymbolicError> {
        self.evaluate_log(group).to_map(Model::Disc).ok_or(SymbolicError::Overflow)
    }
}

pub fn evaluate_blocks(group: &SchottkyGroup, blocks: &[Block]) -> LogMatrix {
    blocks.iter().fold(LogMatrix::identity(), |m, b| m.mul(&group.power_log(b.base, b.exp)))
}

impl Evaluate for WordA1 {
    // letter by letter, independently of the block path
    fn evaluate_log(&self, group: &SchottkyGroup) -> LogMatrix {
        self.letters().iter().fold(LogMatrix::identity(), |m, &l| m.mul_map(&group.generator(l)))
    }
}

impl Evaluate for WordA2 {
    fn evaluate_log(&self, group: &SchottkyGroup) -> LogMatrix {
        evaluate_blocks(group, self.blocks())
    }
}

impl Evaluate for WordA3 {
    fn evaluate_log(&self, group: &SchottkyGroup) -> LogMatrix {
        self.pairs().iter().fold(LogMatrix::identity(), |m, pair| {
            m.mul(&pair.omega.evaluate_log(group)).mul(&group.power_log(schottky::Base::P, pair.r))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a3::reblock;
    use schottky::{build_group, GroupParams, Letter};

    #[test]
    fn basic_evaluations() {
        let g = build_group(GroupParams::default()).unwrap();
        assert!(WordA1::default().evaluate(&g).unwrap().is_identity(1e-15));
        let h = WordA2::new(vec![Block::h(1)]).unwrap().evaluate(&g).unwrap();
        let e = g.generator(Letter::H).entries();
        assert!(h.entries().iter().zip(e).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn a1_and_a3_forms_agree() {
        let g = build_group(GroupParams::default()).unwrap();
        let w: WordA2 = "h p^5 h".parse().unwrap();
        let with_tail: WordA2 = "h p^5".parse().unwrap();
        let (a3, rest) = reblock(&w, 3).unwrap();
        let (a3_exact, _) = reblock(&with_tail, 3).unwrap();
        assert_eq!(a3_exact.to_blocks(), with_tail);
        let lhs = w.to_letters().evaluate(&g).unwrap();
        let rhs = (a3.evaluate(&g).unwrap()) * rest.evaluate(&g).unwrap();
        let scale = lhs.entries().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
            assert!((a - b).abs() < 1e-12 * scale, "{a} {b}");
        }
    }
}

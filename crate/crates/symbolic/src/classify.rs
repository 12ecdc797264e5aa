use schottky::Base;

use crate::spec::{Declared, SequenceSpec};
use crate::word::Block;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Parabolic,
    BoundedRadial,
    UnboundedRadial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeClass {
    pub kind: ClassKind,
    /// True when the verdict follows from the rule's declared tail; false
    /// means "as inspected" on the window only.
    pub declared: bool,
    pub inspected_blocks: usize,
    /// Largest |parabolic exponent| in the window.
    pub max_parabolic: u64,
    /// (block index, |exponent|) each time the running maximum grew.
    pub records: Vec<(usize, u64)>,
}

pub fn classify_code(spec: &SequenceSpec, m: usize) -> CodeClass {
    let window: Vec<Block> = spec.blocks().take(m.max(1)).collect();
    let mut class = classify_window(&window);
    if let Some(d) = spec.declared() {
        class.declared = true;
        class.kind = match d {
            Declared::Constant(l) if l.base() == Base::P => ClassKind::Parabolic,
            // fixed points of hyperbolic elements are bounded radial
            Declared::Constant(_) | Declared::Bounded { .. } => ClassKind::BoundedRadial,
            Declared::Unbounded => ClassKind::UnboundedRadial,
        };
    }
    class
}

/// Verdict from a finite window alone. Records of the parabolic exponent that
/// keep appearing in the second half of the window suggest an unbounded
/// code; a window whose second half contains no h-block looks parabolic.
pub fn classify_window(window: &[Block]) -> CodeClass {
    let mut records = Vec::new();
    let mut max = 0;
    for (i, b) in window.iter().enumerate() {
        if b.base == Base::P && b.exp.unsigned_abs() > max {
            max = b.exp.unsigned_abs();
            records.push((i, max));
        }
    }
    let half = window.len() / 2;
    let late_h = window.iter().enumerate().any(|(i, b)| i >= half && b.base == Base::H);
    let late_record = records.last().is_some_and(|(i, _)| *i >= half);
    let kind = if !late_h {
        ClassKind::Parabolic
    } else if records.len() >= 3 && late_record {
        ClassKind::UnboundedRadial
    } else {
        ClassKind::BoundedRadial
    };
    CodeClass { kind, declared: false, inspected_blocks: window.len(), max_parabolic: max, records }
}

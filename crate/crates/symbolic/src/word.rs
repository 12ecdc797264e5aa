use std::fmt;
use std::str::FromStr;

use schottky::{Base, Letter};

use crate::error::SymbolicError;

/// A freely reduced word over h, h^-1, p, p^-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WordA1(Vec<Letter>);

/// Free reduction with a stack; the result never contains s s^-1.
pub fn reduce(letters: &[Letter]) -> WordA1 {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    WordA1(out)
}

impl WordA1 {
    pub fn new(letters: Vec<Letter>) -> Result<Self, SymbolicError> {
        if letters.windows(2).any(|w| w[1] == w[0].inverse()) {
            return Err(SymbolicError::NotReduced(letters.iter().map(|l| l.as_char()).collect()));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_blocks(&self) -> WordA2 {
        let mut blocks: Vec<Block> = Vec::new();
        for &l in &self.0 {
            match blocks.last_mut() {
                Some(b) if b.base == l.base() => b.exp += l.sign(),
                _ => blocks.push(Block::new(l.base(), l.sign())),
            }
        }
        WordA2(blocks)
    }

    pub fn inverse(&self) -> WordA1 {
        WordA1(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl fmt::Display for WordA1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A power of one generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub base: Base,
    pub exp: i64,
}

impl Block {
    pub const fn new(base: Base, exp: i64) -> Self {
        Self { base, exp }
    }

    pub fn h(exp: i64) -> Self {
        Self::new(Base::H, exp)
    }

    pub fn p(exp: i64) -> Self {
        Self::new(Base::P, exp)
    }

    /// The letter repeated |exp| times.
    pub fn letter(&self) -> Letter {
        Letter::from_base(self.base, self.exp > 0)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.exp)
        }
    }
}

/// Power blocks with strictly alternating bases and nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WordA2(Vec<Block>);

impl WordA2 {
    pub fn new(blocks: Vec<Block>) -> Result<Self, SymbolicError> {
        if blocks.iter().any(|b| b.exp == 0) {
            return Err(SymbolicError::ZeroExponent);
        }
        if blocks.windows(2).any(|w| w[0].base == w[1].base) {
            return Err(SymbolicError::NotAlternating);
        }
        Ok(Self(blocks))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter_len(&self) -> u64 {
        self.0.iter().map(|b| b.exp.unsigned_abs()).sum()
    }

    pub fn first(&self) -> Option<&Block> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Block> {
        self.0.last()
    }

    pub fn to_letters(&self) -> WordA1 {
        let mut out = Vec::with_capacity(self.letter_len() as usize);
        for b in &self.0 {
            out.extend(std::iter::repeat_n(b.letter(), b.exp.unsigned_abs() as usize));
        }
        WordA1(out)
    }

    /// Append a block, merging with the last one when the bases agree and
    /// dropping blocks that cancel.
    pub fn push_merge(&mut self, b: Block) {
        if b.exp == 0 {
            return;
        }
        match self.0.last_mut() {
            Some(last) if last.base == b.base => {
                last.exp += b.exp;
                if last.exp == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push(b),
        }
    }

    /// Reduced product of two words.
    pub fn concat(&self, other: &WordA2) -> WordA2 {
        let mut out = self.clone();
        for &b in &other.0 {
            out.push_merge(b);
        }
        out
    }
}

impl fmt::Display for WordA2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// One token of the word syntax: a letter with an optional exponent, or a
/// letter raised to `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Token {
    Block(Block),
    Forever(Letter),
}

/// Tokens like `h`, `P`, `p^3`, `h^-2`, `p^inf`, with optional whitespace.
pub(crate) fn tokenize(s: &str) -> Result<Vec<Token>, SymbolicError> {
    let err = |reason: &str| SymbolicError::Parse { input: s.to_string(), reason: reason.to_string() };
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let letter = Letter::from_char(c).ok_or_else(|| err(&format!("unexpected character '{c}'")))?;
        i += 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            if chars[i..].starts_with(&['i', 'n', 'f']) {
                i += 3;
                out.push(Token::Forever(letter));
                continue;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || (i == start && chars[i] == '-')) {
                i += 1;
            }
            let exp: String = chars[start..i].iter().collect();
            let e: i64 = exp.parse().map_err(|_| err(&format!("bad exponent '{exp}'")))?;
            if e == 0 {
                return Err(err("zero exponent"));
            }
            out.push(Token::Block(Block::new(letter.base(), e * letter.sign())));
        } else {
            out.push(Token::Block(Block::new(letter.base(), letter.sign())));
        }
    }
    Ok(out)
}

/// Parses a finite word and reduces it.
impl FromStr for WordA2 {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = WordA2::empty();
        for t in tokenize(s)? {
            match t {
                Token::Block(b) => w.push_merge(b),
                Token::Forever(_) => {
                    return Err(SymbolicError::Parse {
                        input: s.into(),
                        reason: "infinite power in a finite word".into(),
                    })
                }
            }
        }
        Ok(w)
    }
}

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use schottky::{Base, Letter};

use crate::error::SymbolicError;
use crate::word::{tokenize, Block, Token, WordA2};

/// An exponent rule c * i^k for the i-th block, i = 1, 2, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub coef: i64,
    pub power: u32,
}

impl Monomial {
    pub fn eval(&self, i: u64) -> i64 {
        let v = (i as i64).saturating_pow(self.power);
        self.coef.saturating_mul(v)
    }

    pub fn is_constant(&self) -> bool {
        self.power == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.power) {
            (c, 0) => write!(f, "{c}"),
            (1, 1) => f.write_str("i"),
            (-1, 1) => f.write_str("-i"),
            (c, 1) => write!(f, "{c}*i"),
            (1, k) => write!(f, "i^{k}"),
            (c, k) => write!(f, "{c}*i^{k}"),
        }
    }
}

impl FromStr for Monomial {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |r: &str| SymbolicError::Parse { input: s.to_string(), reason: r.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, rest) = match t.find('i') {
            None => (t.parse::<i64>().map_err(|_| err("expected an integer or c*i^k"))?, None),
            Some(pos) => {
                let head = t[..pos].trim_end_matches('*');
                let coef = match head {
                    "" => 1,
                    "-" => -1,
                    h => h.parse::<i64>().map_err(|_| err("bad coefficient"))?,
                };
                (coef, Some(&t[pos + 1..]))
            }
        };
        let power = match rest {
            None => 0,
            Some("") => 1,
            Some(r) => r
                .strip_prefix('^')
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| *k >= 1)
                .ok_or_else(|| err("bad power of i"))?,
        };
        if coef == 0 {
            return Err(err("exponent rule is identically zero"));
        }
        Ok(Self { coef, power })
    }
}

/// An infinite (or finite) code given by a rule.
///
/// Text syntax:
/// - `case1`: h p h p^2 h p^3 ...
/// - `case2`: h p h^2 p^2 h^3 p^3 ...
/// - `periodic:<word>`: the word repeated forever, e.g. `periodic:hp^5`
/// - `formula:<m>:<n>`: h^{m(i)} p^{n(i)} for i = 1, 2, ..., each rule `c*i^k`
/// - `prefix:<word>;<spec>`: a finite word followed by another spec
/// - `explicit:<word>` or a bare word, optionally ending in `x^inf`
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    Case1,
    Case2,
    Periodic(WordA2),
    Formula { m: Monomial, n: Monomial },
    Explicit { word: WordA2, tail: Option<Letter> },
    Prefixed { prefix: WordA2, rest: Box<SequenceSpec> },
}

/// What follows the blocks produced by `SequenceSpec::blocks`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// The block stream never ends.
    Blocks,
    /// The block stream ends and is followed by this letter forever.
    Constant(Letter),
    /// The code is finite.
    End,
}

/// Tail behaviour known from the rule itself rather than from inspection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Declared {
    /// Eventually constant: a parabolic point if the letter is p or p^-1,
    /// a hyperbolic fixed point otherwise.
    Constant(Letter),
    /// Parabolic exponents never exceed the bound and h-blocks recur.
    Bounded { max_parabolic: u64 },
    /// Parabolic exponents exceed every bound.
    Unbounded,
}

impl SequenceSpec {
    pub fn periodic(word: WordA2) -> Result<Self, SymbolicError> {
        let letters = word.to_letters();
        let (Some(first), Some(last)) = (letters.letters().first(), letters.letters().last()) else {
            return Err(SymbolicError::NotCyclicallyReduced(word.to_string()));
        };
        if *first == last.inverse() {
            return Err(SymbolicError::NotCyclicallyReduced(word.to_string()));
        }
        Ok(Self::Periodic(word))
    }

    pub fn tail(&self) -> Tail {
        match self {
            Self::Case1 | Self::Case2 | Self::Formula { .. } => Tail::Blocks,
            Self::Periodic(w) if w.len() == 1 => Tail::Constant(w.blocks()[0].letter()),
            Self::Periodic(_) => Tail::Blocks,
            Self::Explicit { tail: Some(l), .. } => Tail::Constant(*l),
            Self::Explicit { tail: None, .. } => Tail::End,
            Self::Prefixed { rest, .. } => rest.tail(),
        }
    }

    pub fn declared(&self) -> Option<Declared> {
        match self {
            Self::Case1 | Self::Case2 => Some(Declared::Unbounded),
            Self::Formula { n, .. } if n.is_constant() => {
                Some(Declared::Bounded { max_parabolic: n.coef.unsigned_abs() })
            }
            Self::Formula { .. } => Some(Declared::Unbounded),
            Self::Periodic(w) if w.len() == 1 => Some(Declared::Constant(w.blocks()[0].letter())),
            Self::Periodic(w) => Some(Declared::Bounded {
                max_parabolic: w
                    .blocks()
                    .iter()
                    .filter(|b| b.base == Base::P)
                    .map(|b| b.exp.unsigned_abs())
                    .max()
                    .unwrap_or(0),
            }),
            Self::Explicit { tail: Some(l), .. } => Some(Declared::Constant(*l)),
            Self::Explicit { tail: None, .. } => None,
            Self::Prefixed { rest, .. } => rest.declared(),
        }
    }

    /// Fresh iterator over the reduced power blocks of the code.
    pub fn blocks(&self) -> BlockIter {
        match self {
            Self::Case1 => BlockIter::rule(Monomial { coef: 1, power: 0 }, Monomial { coef: 1, power: 1 }),
            Self::Case2 => BlockIter::rule(Monomial { coef: 1, power: 1 }, Monomial { coef: 1, power: 1 }),
            Self::Formula { m, n } => BlockIter::rule(*m, *n),
            Self::Periodic(w) if w.len() == 1 => BlockIter::finite(Vec::new()),
            Self::Periodic(w) => BlockIter::cycle(w.blocks()),
            Self::Explicit { word, .. } => BlockIter::finite(word.blocks().to_vec()),
            Self::Prefixed { prefix, rest } => {
                let mut inner = rest.blocks();
                let mut head: Vec<Block> = prefix.blocks().to_vec();
                // merge across the seam; the inner code is reduced, so only
                // its first few blocks can cancel against the prefix
                loop {
                    let Some(last) = head.last().copied() else { break };
                    match inner.peek_base() {
                        Some(base) if base == last.base => {
                            let b = inner.next().unwrap();
                            let sum = last.exp + b.exp;
                            head.pop();
                            if sum != 0 {
                                head.push(Block::new(last.base, sum));
                                break;
                            }
                        }
                        Some(_) => break,
                        None => {
                            if let Tail::Constant(l) = rest.tail() {
                                if last.base == l.base() {
                                    head.pop();
                                }
                            }
                            break;
                        }
                    }
                }
                for b in head.into_iter().rev() {
                    inner.pending.push_front(b);
                }
                inner
            }
        }
    }

    /// First `count` blocks (fewer when the code is finite).
    pub fn prefix(&self, count: usize) -> WordA2 {
        WordA2::new(self.blocks().take(count).collect()).expect("codes are reduced")
    }

    /// Letter stream including a constant tail.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        let tail = self.tail();
        let body = self.blocks().flat_map(|b| std::iter::repeat_n(b.letter(), b.exp.unsigned_abs() as usize));
        let forever = match tail {
            Tail::Constant(l) => Some(std::iter::repeat(l)),
            _ => None,
        };
        body.chain(forever.into_iter().flatten())
    }
}

/// Stateless-to-clone block generator behind a `SequenceSpec`.
#[derive(Debug, Clone)]
pub struct BlockIter {
    pending: VecDeque<Block>,
    rule: Rule,
}

#[derive(Debug, Clone)]
enum Rule {
    None,
    Pairs { m: Monomial, n: Monomial, i: u64, next_h: bool },
    Cycle { period: Vec<Block>, pos: usize },
}

impl BlockIter {
    fn finite(blocks: Vec<Block>) -> Self {
        Self { pending: blocks.into(), rule: Rule::None }
    }

    fn rule(m: Monomial, n: Monomial) -> Self {
        Self { pending: VecDeque::new(), rule: Rule::Pairs { m, n, i: 1, next_h: true } }
    }

    fn cycle(word: &[Block]) -> Self {
        let first = word[0];
        let last = word[word.len() - 1];
        if first.base == last.base {
            // the seam merges last and first into one block
            let mut period = word[1..word.len() - 1].to_vec();
            period.push(Block::new(first.base, first.exp + last.exp));
            Self { pending: VecDeque::from([first]), rule: Rule::Cycle { period, pos: 0 } }
        } else {
            Self { pending: VecDeque::new(), rule: Rule::Cycle { period: word.to_vec(), pos: 0 } }
        }
    }

    fn generate(&mut self) -> Option<Block> {
        match &mut self.rule {
            Rule::None => None,
            Rule::Pairs { m, n, i, next_h } => {
                let b = if *next_h { Block::h(m.eval(*i)) } else { Block::p(n.eval(*i)) };
                if !*next_h {
                    *i += 1;
                }
                *next_h = !*next_h;
                Some(b)
            }
            Rule::Cycle { period, pos } => {
                let b = period[*pos];
                *pos = (*pos + 1) % period.len();
                Some(b)
            }
        }
    }

    fn peek_base(&mut self) -> Option<Base> {
        if self.pending.is_empty() {
            let b = self.generate()?;
            self.pending.push_back(b);
        }
        self.pending.front().map(|b| b.base)
    }
}

impl Iterator for BlockIter {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        self.pending.pop_front().or_else(|| self.generate())
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Case1 => f.write_str("case1"),
            Self::Case2 => f.write_str("case2"),
            Self::Periodic(w) => write!(f, "periodic:{w}"),
            Self::Formula { m, n } => write!(f, "formula:{m}:{n}"),
            Self::Explicit { word, tail } => {
                f.write_str("explicit:")?;
                write!(f, "{word}")?;
                if let Some(l) = tail {
                    if !word.is_empty() {
                        f.write_str(" ")?;
                    }
                    write!(f, "{l}^inf")?;
                }
                Ok(())
            }
            Self::Prefixed { prefix, rest } => write!(f, "prefix:{prefix};{rest}"),
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |r: &str| SymbolicError::Parse { input: s.to_string(), reason: r.to_string() };
        if s == "case1" {
            return Ok(Self::Case1);
        }
        if s == "case2" {
            return Ok(Self::Case2);
        }
        if let Some(w) = s.strip_prefix("periodic:") {
            let word: WordA2 = w.parse()?;
            if word.is_empty() {
                return Err(err("empty period"));
            }
            return Self::periodic(word);
        }
        if let Some(rest) = s.strip_prefix("formula:") {
            let (m, n) = rest.split_once(':').ok_or_else(|| err("expected formula:<m>:<n>"))?;
            return Ok(Self::Formula { m: m.parse()?, n: n.parse()? });
        }
        if let Some(rest) = s.strip_prefix("prefix:") {
            let (w, inner) = rest.split_once(';').ok_or_else(|| err("expected prefix:<word>;<spec>"))?;
            return Ok(Self::Prefixed { prefix: w.parse()?, rest: Box::new(inner.parse()?) });
        }
        let body = s.strip_prefix("explicit:").unwrap_or(s);
        let mut word = WordA2::empty();
        let mut tail = None;
        for t in tokenize(body)? {
            if tail.is_some() {
                return Err(err("nothing may follow an infinite power"));
            }
            match t {
                Token::Block(b) => word.push_merge(b),
                Token::Forever(l) => tail = Some(l),
            }
        }
        if let Some(l) = tail {
            // absorb a trailing power of the repeated generator
            if word.last().is_some_and(|b| b.base == l.base()) {
                let mut blocks = word.into_blocks();
                blocks.pop();
                word = WordA2::new(blocks)?;
            }
        }
        if word.is_empty() && tail.is_none() {
            return Err(err("empty code"));
        }
        Ok(Self::Explicit { word, tail })
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    H,
    P,
}

/// A generator or the inverse of one. Written h, H, p, P with capitals for inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    H,
    HInv,
    P,
    PInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::H, Letter::HInv, Letter::P, Letter::PInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::H => Letter::HInv,
            Letter::HInv => Letter::H,
            Letter::P => Letter::PInv,
            Letter::PInv => Letter::P,
        }
    }

    pub fn base(self) -> Base {
        match self {
            Letter::H | Letter::HInv => Base::H,
            Letter::P | Letter::PInv => Base::P,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Letter::H | Letter::P => 1,
            Letter::HInv | Letter::PInv => -1,
        }
    }

    pub fn from_base(base: Base, positive: bool) -> Letter {
        match (base, positive) {
            (Base::H, true) => Letter::H,
            (Base::H, false) => Letter::HInv,
            (Base::P, true) => Letter::P,
            (Base::P, false) => Letter::PInv,
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'h' => Some(Letter::H),
            'H' => Some(Letter::HInv),
            'p' => Some(Letter::P),
            'P' => Some(Letter::PInv),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::H => 'h',
            Letter::HInv => 'H',
            Letter::P => 'p',
            Letter::PInv => 'P',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::H => "h",
            Base::P => "p",
        })
    }
}

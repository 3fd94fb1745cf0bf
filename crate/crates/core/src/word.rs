//! Group words over `d` generators and their lattice paths.
//!
//! Grammar (whitespace between tokens is optional at letter boundaries):
//!
//! ```text
//! word  := token*
//! token := ('x' | 'X') index ('^' exponent)?
//!        | ('a' | 'A') ('^' exponent)?
//! ```
//!
//! `X` is the inverse letter, `a`/`A` is an alias for the last generator
//! `x_d` (the lamp generator of a lamplighter alphabet), and a negative
//! exponent inverts the repeated letter. Canonical output uses run-length
//! tokens `x3`, `x3^4`, `x3^-2` separated by single spaces.

use std::fmt;

use crate::error::{check_dim, ParseError, Result};
use crate::lattice::{LatticePath, LatticePoint};

/// Words longer than this are rejected by the parser.
pub const MAX_PARSED_LENGTH: usize = 1 << 26;

/// A word over `x_1..x_d` and their inverses; letter `+i` is `x_i`, `-i` is
/// `x_i^-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    d: usize,
    letters: Vec<i32>,
}

impl Word {
    pub fn new(d: usize, letters: Vec<i32>) -> Result<Self> {
        assert!(d >= 1, "word alphabet needs at least one generator");
        if let Some(&bad) = letters
            .iter()
            .find(|l| **l == 0 || l.unsigned_abs() as usize > d)
        {
            return Err(crate::Error::AxisOutOfRange { axis: bad.unsigned_abs() as usize, d });
        }
        Ok(Word { d, letters })
    }

    pub fn identity(d: usize) -> Self {
        Word { d, letters: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { d: self.d, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_dim(self.d, other.d)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { d: self.d, letters })
    }

    /// Concatenation of several words over the same alphabet.
    pub fn product<'a>(d: usize, parts: impl IntoIterator<Item = &'a Word>) -> Result<Word> {
        let mut out = Word::identity(d);
        for w in parts {
            check_dim(d, w.d)?;
            out.letters.extend_from_slice(&w.letters);
        }
        Ok(out)
    }

    /// The commutator `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Result<Word> {
        Word::product(u.d, [u, v, &u.inverse(), &v.inverse()])
    }

    /// Image in `Z^d`: the exponent sum of each generator.
    pub fn abelianization(&self) -> LatticePoint {
        let mut c = vec![0i64; self.d];
        for &l in &self.letters {
            c[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        LatticePoint::new(c)
    }
}

/// Position of a letter in the tie-break order `+1 < -1 < +2 < -2 < ...`.
pub fn letter_rank(letter: i32) -> u32 {
    2 * (letter.unsigned_abs() - 1) + u32::from(letter < 0)
}

/// Letters of a `d`-generator alphabet in tie-break order.
pub fn alphabet(d: usize) -> Vec<i32> {
    (1..=d as i32).flat_map(|g| [g, -g]).collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.signum() as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "x{}", l.unsigned_abs())?;
            } else {
                write!(f, "x{}^{}", l.unsigned_abs(), exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

/// Reads a run of ASCII digits starting at `i`. Returns the value (saturated
/// on overflow) and the index after the run, or `None` if there is no digit.
fn read_digits(chars: &[char], mut i: usize) -> Option<(u64, bool, usize)> {
    let start = i;
    let mut value: u64 = 0;
    let mut overflow = false;
    while i < chars.len() && chars[i].is_ascii_digit() {
        let digit = chars[i] as u64 - '0' as u64;
        match value.checked_mul(10).and_then(|v| v.checked_add(digit)) {
            Some(v) => value = v,
            None => overflow = true,
        }
        i += 1;
    }
    (i > start).then_some((value, overflow, i))
}

/// Parses a word over `d` generators. Offsets in errors count characters.
pub fn parse_word(text: &str, d: usize) -> Result<Word, ParseError> {
    assert!(d >= 1, "word alphabet needs at least one generator");
    let chars: Vec<char> = text.chars().collect();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let token_start = i;
        let (generator, inverse) = match c {
            'x' | 'X' => {
                let Some((index, overflow, next)) = read_digits(&chars, i + 1) else {
                    return Err(syntax(i + 1, "expected a generator index after 'x'"));
                };
                if overflow || index == 0 || index > d as u64 {
                    return Err(ParseError::OutOfRange {
                        index: if overflow { u64::MAX } else { index },
                        d,
                        offset: token_start,
                    });
                }
                i = next;
                (index as i32, c == 'X')
            }
            'a' | 'A' => {
                i += 1;
                (d as i32, c == 'A')
            }
            other => return Err(syntax(i, format!("unexpected character {other:?}"))),
        };
        let mut exponent: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            let exp_start = i + 1;
            let mut j = exp_start;
            let mut sign = 1;
            if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                if chars[j] == '-' {
                    sign = -1;
                }
                j += 1;
            }
            let Some((mag, overflow, next)) = read_digits(&chars, j) else {
                return Err(syntax(j, "expected an integer exponent after '^'"));
            };
            if mag == 0 {
                return Err(syntax(exp_start, "exponent must be nonzero"));
            }
            if overflow || mag as usize > MAX_PARSED_LENGTH {
                return Err(syntax(exp_start, "exponent too large"));
            }
            exponent = sign * mag as i64;
            i = next;
        }
        let letter = if (exponent < 0) != inverse { -generator } else { generator };
        let reps = exponent.unsigned_abs() as usize;
        if letters.len() + reps > MAX_PARSED_LENGTH {
            return Err(syntax(token_start, "word too long"));
        }
        letters.extend(std::iter::repeat_n(letter, reps));
    }
    Ok(Word { d, letters })
}

/// The lattice path of a word: generator `i` is the unit vector `e_i`.
pub fn word_to_path(w: &Word) -> LatticePath {
    LatticePath::from_origin(w.d, w.letters.clone()).expect("word letters are valid axes")
}

/// Cancels adjacent mutually inverse letters until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { d: w.d, letters: out }
}

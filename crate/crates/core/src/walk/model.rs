//! Group models driven letter by letter.

use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{length_lower_bound, min_word_exact, min_word_upper};
use crate::lattice::LatticePoint;
use crate::metabelian::MetabelianElement;
use crate::quotient::{LampGroupSpec, LamplighterElement, NilpotentElement};

/// A finitely generated group with a normal form and word-length bounds.
pub trait GroupModel: Sync {
    type Element: Clone + Eq + Hash + Send + Sync;

    /// Number of generators; the walk alphabet has twice as many letters.
    fn generators(&self) -> usize;

    fn identity(&self) -> Self::Element;

    /// Right multiplication by a letter `±1..=±generators()`.
    fn push(&self, g: &mut Self::Element, letter: i32);

    /// `(lower, upper)` bounds on the word length.
    fn length_bounds(&self, g: &Self::Element) -> (u64, u64);

    /// Exact word length when affordable for elements reached in `steps`
    /// letters.
    fn exact_length(&self, g: &Self::Element, steps: u64) -> Option<u64> {
        let _ = steps;
        let (lo, hi) = self.length_bounds(g);
        (lo == hi).then_some(lo)
    }
}

/// `Z^d`.
#[derive(Clone, Copy, Debug)]
pub struct Abelian {
    pub d: usize,
}

impl GroupModel for Abelian {
    type Element = LatticePoint;

    fn generators(&self) -> usize {
        self.d
    }

    fn identity(&self) -> LatticePoint {
        LatticePoint::origin(self.d)
    }

    fn push(&self, g: &mut LatticePoint, letter: i32) {
        g.step_mut(letter);
    }

    fn length_bounds(&self, g: &LatticePoint) -> (u64, u64) {
        (g.l1_norm(), g.l1_norm())
    }
}

/// The free group, elements as freely reduced letter sequences.
#[derive(Clone, Copy, Debug)]
pub struct Free {
    pub d: usize,
}

impl GroupModel for Free {
    type Element = Vec<i32>;

    fn generators(&self) -> usize {
        self.d
    }

    fn identity(&self) -> Vec<i32> {
        Vec::new()
    }

    fn push(&self, g: &mut Vec<i32>, letter: i32) {
        if g.last() == Some(&-letter) {
            g.pop();
        } else {
            g.push(letter);
        }
    }

    fn length_bounds(&self, g: &Vec<i32>) -> (u64, u64) {
        (g.len() as u64, g.len() as u64)
    }
}

/// Free nilpotent of class 2.
#[derive(Clone, Copy, Debug)]
pub struct Nilpotent2 {
    pub d: usize,
}

/// Word length of `[x_i^a, x_j^b]`-style words realizing area `area` in one
/// coordinate plane: `a = floor(sqrt|A|)`, `b = floor(|A| / a)`, remainder
/// via `[x_i, x_j^r]`.
fn area_cost(area: i64) -> u64 {
    let n = area.unsigned_abs();
    if n == 0 {
        return 0;
    }
    let a = n.isqrt();
    let b = n / a;
    let r = n - a * b;
    2 * (a + b) + if r > 0 { 2 * (1 + r) } else { 0 }
}

impl GroupModel for Nilpotent2 {
    type Element = NilpotentElement;

    fn generators(&self) -> usize {
        self.d
    }

    fn identity(&self) -> NilpotentElement {
        NilpotentElement::identity(self.d)
    }

    fn push(&self, g: &mut NilpotentElement, letter: i32) {
        g.push_letter(letter);
    }

    fn length_bounds(&self, g: &NilpotentElement) -> (u64, u64) {
        let base = g.endpoint().l1_norm();
        (base, base + g.upper().into_iter().map(area_cost).sum::<u64>())
    }
}

/// The free metabelian group in the edge-flow model.
#[derive(Clone, Copy, Debug)]
pub struct Metabelian {
    pub d: usize,
}

/// Exact search is used for elements reached in at most this many steps.
pub const EXACT_LENGTH_MAX_STEPS: u64 = 8;

impl GroupModel for Metabelian {
    type Element = MetabelianElement;

    fn generators(&self) -> usize {
        self.d
    }

    fn identity(&self) -> MetabelianElement {
        MetabelianElement::identity(self.d)
    }

    fn push(&self, g: &mut MetabelianElement, letter: i32) {
        g.push_letter(letter);
    }

    fn length_bounds(&self, g: &MetabelianElement) -> (u64, u64) {
        (length_lower_bound(g), min_word_upper(g).len() as u64)
    }

    fn exact_length(&self, g: &MetabelianElement, steps: u64) -> Option<u64> {
        if steps > EXACT_LENGTH_MAX_STEPS {
            return None;
        }
        min_word_exact(g, steps as usize).ok().map(|w| w.len() as u64)
    }
}

/// `Z^d wr H`; generator `d + 1` switches the lamp under the walker.
#[derive(Clone, Copy, Debug)]
pub struct Lamplighter {
    pub d: usize,
    pub spec: LampGroupSpec,
}

impl GroupModel for Lamplighter {
    type Element = LamplighterElement;

    fn generators(&self) -> usize {
        self.d + 1
    }

    fn identity(&self) -> LamplighterElement {
        LamplighterElement::identity(self.d, self.spec)
    }

    fn push(&self, g: &mut LamplighterElement, letter: i32) {
        g.push_letter(letter);
    }

    /// Lower: lamp switches plus the longest detour `0 -> u -> position` over
    /// lit nodes `u`. Upper: lamp switches plus a nearest-neighbour tour of
    /// the lit nodes that ends at the position.
    fn length_bounds(&self, g: &LamplighterElement) -> (u64, u64) {
        let origin = LatticePoint::origin(self.d);
        let pos = g.position();
        let lamps = g.lamp_cost();
        let detour = g
            .lamps()
            .keys()
            .map(|u| u.l1_norm() + u.l1_distance(pos))
            .max()
            .unwrap_or(0)
            .max(pos.l1_norm());
        let mut left: Vec<&LatticePoint> = g.lamps().keys().collect();
        let mut at = &origin;
        let mut tour = 0;
        while !left.is_empty() {
            let (i, dist) = left
                .iter()
                .enumerate()
                .map(|(i, u)| (i, at.l1_distance(u)))
                .min_by_key(|&(i, dist)| (dist, i))
                .expect("nonempty");
            tour += dist;
            at = left.remove(i);
        }
        tour += at.l1_distance(pos);
        (lamps + detour, lamps + tour)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    Abelian,
    Free,
    Nilpotent2,
    Metabelian,
    Lamplighter,
}

impl Variety {
    pub const ALL: [Variety; 5] =
        [Variety::Abelian, Variety::Free, Variety::Nilpotent2, Variety::Metabelian, Variety::Lamplighter];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Abelian => "abelian",
            Variety::Free => "free",
            Variety::Nilpotent2 => "nilpotent2",
            Variety::Metabelian => "metabelian",
            Variety::Lamplighter => "lamplighter",
        }
    }
}

impl std::str::FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variety::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown variety {s:?}")))
    }
}

impl std::fmt::Display for Variety {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which group a walk runs on. The step distribution is always uniform over
/// the generators and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub variety: Variety,
    pub d: usize,
    /// Lamp modulus, present exactly for lamplighter walks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

/// Runs generic code on the model selected by a [`WalkConfig`].
pub trait ModelVisitor {
    type Output;
    fn visit<M: GroupModel>(self, model: &M) -> Self::Output;
}

impl WalkConfig {
    pub fn new(variety: Variety, d: usize, m: Option<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        match (variety, m) {
            (Variety::Lamplighter, None) => {
                return Err(Error::Invalid("lamplighter walks need a lamp modulus".into()))
            }
            (Variety::Lamplighter, Some(m)) => {
                LampGroupSpec::new(m)?;
            }
            (_, Some(_)) => {
                return Err(Error::Invalid("a lamp modulus only applies to lamplighter walks".into()))
            }
            (_, None) => {}
        }
        Ok(WalkConfig { variety, d, m })
    }

    pub fn generators(&self) -> usize {
        match self.variety {
            Variety::Lamplighter => self.d + 1,
            _ => self.d,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.generators()
    }

    pub fn with_model<V: ModelVisitor>(&self, visitor: V) -> V::Output {
        match self.variety {
            Variety::Abelian => visitor.visit(&Abelian { d: self.d }),
            Variety::Free => visitor.visit(&Free { d: self.d }),
            Variety::Nilpotent2 => visitor.visit(&Nilpotent2 { d: self.d }),
            Variety::Metabelian => visitor.visit(&Metabelian { d: self.d }),
            Variety::Lamplighter => {
                let spec = LampGroupSpec::new(self.m.expect("validated lamplighter config"))
                    .expect("validated modulus");
                visitor.visit(&Lamplighter { d: self.d, spec })
            }
        }
    }
}

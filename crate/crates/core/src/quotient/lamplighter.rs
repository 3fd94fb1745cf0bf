use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::lattice::LatticePoint;
use crate::metabelian::MetabelianElement;
use crate::word::Word;

/// The lamp group `H`: `Z` when `m == 0`, `Z_m` when `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct LampGroupSpec {
    m: u64,
}

impl LampGroupSpec {
    pub fn new(m: u64) -> Result<Self> {
        if m == 1 {
            return Err(Error::InvalidModulus);
        }
        Ok(LampGroupSpec { m })
    }

    pub fn integers() -> Self {
        LampGroupSpec { m: 0 }
    }

    pub fn modulus(self) -> u64 {
        self.m
    }

    pub fn reduce(self, v: i64) -> i64 {
        if self.m == 0 {
            v
        } else {
            v.rem_euclid(self.m as i64)
        }
    }

    /// Word length of a lamp value in `H` with generator 1.
    pub fn lamp_cost(self, v: i64) -> u64 {
        if self.m == 0 {
            v.unsigned_abs()
        } else {
            let r = v.rem_euclid(self.m as i64) as u64;
            r.min(self.m - r)
        }
    }
}

impl TryFrom<u64> for LampGroupSpec {
    type Error = Error;

    fn try_from(m: u64) -> Result<Self> {
        LampGroupSpec::new(m)
    }
}

impl From<LampGroupSpec> for u64 {
    fn from(s: LampGroupSpec) -> u64 {
        s.m
    }
}

/// An element of `Z^d wr H`: walker position and a finitely supported lamp
/// configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LamplighterElement {
    spec: LampGroupSpec,
    position: LatticePoint,
    lamps: BTreeMap<LatticePoint, i64>,
}

impl LamplighterElement {
    pub fn identity(d: usize, spec: LampGroupSpec) -> Self {
        LamplighterElement { spec, position: LatticePoint::origin(d), lamps: BTreeMap::new() }
    }

    pub fn from_parts(
        position: LatticePoint,
        lamps: impl IntoIterator<Item = (LatticePoint, i64)>,
        spec: LampGroupSpec,
    ) -> Result<Self> {
        let mut g = LamplighterElement::identity(position.dim(), spec);
        g.position = position;
        for (node, v) in lamps {
            check_dim(g.d(), node.dim())?;
            g.add_lamp(node, v);
        }
        Ok(g)
    }

    pub fn d(&self) -> usize {
        self.position.dim()
    }

    pub fn spec(&self) -> LampGroupSpec {
        self.spec
    }

    pub fn position(&self) -> &LatticePoint {
        &self.position
    }

    pub fn lamps(&self) -> &BTreeMap<LatticePoint, i64> {
        &self.lamps
    }

    pub fn lamp(&self, node: &LatticePoint) -> i64 {
        self.lamps.get(node).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.position.is_origin() && self.lamps.is_empty()
    }

    fn add_lamp(&mut self, node: LatticePoint, v: i64) {
        use std::collections::btree_map::Entry;
        match self.lamps.entry(node) {
            Entry::Vacant(slot) => {
                let v = self.spec.reduce(v);
                if v != 0 {
                    slot.insert(v);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = self.spec.reduce(slot.get().checked_add(v).expect("lamp value overflow"));
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Right multiplication by a letter of the `(d+1)`-letter alphabet;
    /// `±(d+1)` switches the lamp under the walker.
    pub fn push_letter(&mut self, letter: i32) {
        let d = self.d();
        let g = letter.unsigned_abs() as usize;
        assert!(g >= 1 && g <= d + 1, "letter {letter} outside a {}-generator alphabet", d + 1);
        if g == d + 1 {
            let here = self.position.clone();
            self.add_lamp(here, i64::from(letter.signum()));
        } else {
            self.position.step_mut(letter);
        }
    }

    /// `(p, f)(q, g) = (p + q, f + g(. - p))`.
    pub fn mul(&self, other: &LamplighterElement) -> Result<LamplighterElement> {
        check_dim(self.d(), other.d())?;
        if self.spec != other.spec {
            return Err(Error::InvalidModulus);
        }
        let mut out = self.clone();
        for (node, &v) in &other.lamps {
            out.add_lamp(node + &self.position, v);
        }
        out.position = &self.position + &other.position;
        Ok(out)
    }

    pub fn inv(&self) -> LamplighterElement {
        let position = -&self.position;
        let mut out = LamplighterElement::identity(self.d(), self.spec);
        for (node, &v) in &self.lamps {
            out.add_lamp(node + &position, -v);
        }
        out.position = position;
        out
    }

    /// Total lamp cost `sum_u |lamp(u)|_H`.
    pub fn lamp_cost(&self) -> u64 {
        self.lamps.values().map(|&v| self.spec.lamp_cost(v)).sum()
    }
}

/// Evaluates a word over `d + 1` letters; letter `d + 1` is the lamp.
pub fn ll_eval(w: &Word, spec: LampGroupSpec) -> Result<LamplighterElement> {
    if w.d() < 2 {
        return Err(Error::Invalid("a lamplighter alphabet needs at least two letters".into()));
    }
    let mut g = LamplighterElement::identity(w.d() - 1, spec);
    for &l in w.letters() {
        g.push_letter(l);
    }
    Ok(g)
}

/// The factor map `Sol_{d+1} -> Z^d wr H`: lamp at `u` is the total flow on
/// the last-axis edges above `u`.
pub fn ll_project(g: &MetabelianElement, spec: LampGroupSpec) -> Result<LamplighterElement> {
    let n = g.d();
    if n < 2 {
        return Err(Error::Invalid("a lamplighter projection needs dimension at least two".into()));
    }
    let d = n - 1;
    let position = LatticePoint::new(g.endpoint().coords()[..d].to_vec());
    let mut out = LamplighterElement::identity(d, spec);
    for (e, m) in g.flow().iter() {
        if e.axis == n {
            out.add_lamp(LatticePoint::new(e.base.coords()[..d].to_vec()), m);
        }
    }
    out.position = position;
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LampJson {
    node: LatticePoint,
    value: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LamplighterJson {
    variety: String,
    d: usize,
    m: u64,
    position: LatticePoint,
    lamps: Vec<LampJson>,
}

impl Serialize for LamplighterElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LamplighterJson {
            variety: "lamplighter".into(),
            d: self.d(),
            m: self.spec.m,
            position: self.position.clone(),
            lamps: self
                .lamps
                .iter()
                .map(|(node, &value)| LampJson { node: node.clone(), value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LamplighterElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = LamplighterJson::deserialize(de)?;
        if raw.variety != "lamplighter" {
            return Err(D::Error::custom(format!("expected variety lamplighter, got {}", raw.variety)));
        }
        if raw.position.dim() != raw.d {
            return Err(D::Error::custom("position dimension differs from d"));
        }
        let spec = LampGroupSpec::new(raw.m).map_err(D::Error::custom)?;
        let mut seen = std::collections::BTreeSet::new();
        for l in &raw.lamps {
            if l.value == 0 || spec.reduce(l.value) != l.value {
                return Err(D::Error::custom("lamp values must be nonzero and reduced"));
            }
            if !seen.insert(l.node.clone()) {
                return Err(D::Error::custom("duplicate lamp node"));
            }
        }
        LamplighterElement::from_parts(raw.position, raw.lamps.into_iter().map(|l| (l.node, l.value)), spec)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metabelian::mb_eval;
    use crate::word::parse_word;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn ll(s: &str, d: usize, m: u64) -> LamplighterElement {
        ll_eval(&parse_word(s, d + 1).unwrap(), LampGroupSpec::new(m).unwrap()).unwrap()
    }

    #[test]
    fn single_lamp() {
        let g = ll("a", 2, 0);
        assert!(g.position().is_origin());
        assert_eq!(g.lamps().iter().collect::<Vec<_>>(), vec![(&pt(&[0, 0]), &1)]);
        let g = ll("x1 a X1", 2, 0);
        assert!(g.position().is_origin());
        assert_eq!(g.lamp(&pt(&[1, 0])), 1);
        assert_eq!(g.lamps().len(), 1);
    }

    #[test]
    fn modular_lamps() {
        assert!(ll("a a", 1, 2).is_identity());
        assert_eq!(ll("A", 1, 3).lamp(&pt(&[0])), 2);
        assert_eq!(ll("A", 1, 0).lamp(&pt(&[0])), -1);
        assert_eq!(LampGroupSpec::new(1), Err(Error::InvalidModulus));
        assert_eq!(LampGroupSpec::new(5).unwrap().lamp_cost(4), 1);
    }

    #[test]
    fn projection_column_sums() {
        let g = mb_eval(&parse_word("x1 a X1 A", 2).unwrap());
        let p = ll_project(&g, LampGroupSpec::integers()).unwrap();
        assert!(p.position().is_origin());
        assert_eq!(p.lamp(&pt(&[1])), 1);
        assert_eq!(p.lamp(&pt(&[0])), -1);
        let id = MetabelianElement::identity(3);
        assert!(ll_project(&id, LampGroupSpec::integers()).unwrap().is_identity());
    }

    #[test]
    fn group_law() {
        let u = ll("x1 a x2 a X1", 2, 3);
        let v = ll("a x2 A A X2 x1", 2, 3);
        assert_eq!(u.mul(&v).unwrap(), ll("x1 a x2 a X1 a x2 A A X2 x1", 2, 3));
        assert!(u.mul(&u.inv()).unwrap().is_identity());
        assert!(u.mul(&ll("a", 2, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = ll("x1 a X1 X2 A", 2, 0);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"variety":"lamplighter","d":2,"m":0,"position":[0,-1],"lamps":[{"node":[0,-1],"value":-1},{"node":[1,0],"value":1}]}"#
        );
        assert_eq!(serde_json::from_str::<LamplighterElement>(&s).unwrap(), g);
        assert!(serde_json::from_str::<LamplighterElement>(&s.replace(r#""m":0"#, r#""m":1"#)).is_err());
    }
}

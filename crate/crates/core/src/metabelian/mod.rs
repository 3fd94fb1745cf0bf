//! The free metabelian group on `d` generators as pairs (endpoint, edge flow).
//!
//! A word maps to the endpoint of its lattice path together with the signed
//! traversal count of every edge. Two words are equal in the group exactly
//! when both invariants agree, so equality of [`MetabelianElement`]s is
//! structural equality. The commutant consists of the elements with endpoint
//! 0, whose flows are cycles; `Z^d` acts on it by translation.

mod fox;

pub use fox::{fox_flow_oracle, fox_words_equal, LaurentTable};

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{canonical_path, flow_of_path, Edge, EdgeFlow, LatticePoint, PathSystem};
use crate::word::{word_to_path, Word};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetabelianElement {
    d: usize,
    endpoint: LatticePoint,
    flow: EdgeFlow,
}

impl MetabelianElement {
    pub fn identity(d: usize) -> Self {
        MetabelianElement { d, endpoint: LatticePoint::origin(d), flow: EdgeFlow::new() }
    }

    /// Checks that the flow is a path from 0 to `endpoint` in the chain sense.
    pub fn from_parts(endpoint: LatticePoint, flow: EdgeFlow) -> Result<Self> {
        let d = endpoint.dim();
        if let Some((e, _)) = flow.iter().next() {
            check_dim(d, e.base.dim())?;
        }
        let div = flow.divergence();
        let ok = if endpoint.is_origin() {
            div.is_empty()
        } else {
            div.len() == 2
                && div.get(&endpoint) == Some(&1)
                && div.get(&LatticePoint::origin(d)) == Some(&-1)
        };
        if !ok {
            return Err(Error::BoundaryMismatch);
        }
        Ok(MetabelianElement { d, endpoint, flow })
    }

    /// The image of a single letter.
    pub fn generator(d: usize, letter: i32) -> Result<Self> {
        Ok(mb_eval(&Word::new(d, vec![letter])?))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn endpoint(&self) -> &LatticePoint {
        &self.endpoint
    }

    pub fn flow(&self) -> &EdgeFlow {
        &self.flow
    }

    pub fn is_identity(&self) -> bool {
        self.endpoint.is_origin() && self.flow.is_empty()
    }

    /// In the commutant iff the endpoint is 0.
    pub fn is_commutant(&self) -> bool {
        self.endpoint.is_origin()
    }

    /// Right multiplication by one letter.
    pub fn push_letter(&mut self, letter: i32) {
        assert!(
            letter != 0 && letter.unsigned_abs() as usize <= self.d,
            "letter {letter} outside a {}-generator alphabet",
            self.d
        );
        self.flow.add_step(&self.endpoint, letter);
        self.endpoint.step_mut(letter);
    }

    pub fn mul(&self, other: &MetabelianElement) -> Result<MetabelianElement> {
        mb_mul(self, other)
    }

    pub fn inv(&self) -> MetabelianElement {
        mb_inv(self)
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(&self, other: &MetabelianElement) -> Result<MetabelianElement> {
        self.mul(other)?.mul(&self.inv())?.mul(&other.inv())
    }
}

impl fmt::Display for MetabelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    variety: String,
    d: usize,
    endpoint: LatticePoint,
    flow: EdgeFlow,
}

impl Serialize for MetabelianElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            variety: "metabelian".into(),
            d: self.d,
            endpoint: self.endpoint.clone(),
            flow: self.flow.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MetabelianElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(de)?;
        if raw.variety != "metabelian" {
            return Err(D::Error::custom(format!("expected variety metabelian, got {}", raw.variety)));
        }
        if raw.endpoint.dim() != raw.d {
            return Err(D::Error::custom("endpoint dimension differs from d"));
        }
        MetabelianElement::from_parts(raw.endpoint, raw.flow).map_err(D::Error::custom)
    }
}

/// Evaluates a word: endpoint and edge flow of its lattice path.
pub fn mb_eval(w: &Word) -> MetabelianElement {
    let path = word_to_path(w);
    MetabelianElement { d: w.d(), endpoint: path.end(), flow: flow_of_path(&path) }
}

/// Group law: endpoints add, the second flow is translated to the first
/// endpoint.
pub fn mb_mul(a: &MetabelianElement, b: &MetabelianElement) -> Result<MetabelianElement> {
    check_dim(a.d, b.d)?;
    let mut flow = b.flow.translated(&a.endpoint);
    flow += &a.flow;
    Ok(MetabelianElement { d: a.d, endpoint: &a.endpoint + &b.endpoint, flow })
}

pub fn mb_inv(a: &MetabelianElement) -> MetabelianElement {
    let endpoint = -&a.endpoint;
    let flow = -&a.flow.translated(&endpoint);
    MetabelianElement { d: a.d, endpoint, flow }
}

/// The elementary `(i, j)` cycle around the unit square with corners
/// `base, base+e_i, base+e_i+e_j, base+e_j`, in that order.
pub fn placket(i: usize, j: usize, base: &LatticePoint) -> Result<EdgeFlow> {
    let d = base.dim();
    for axis in [i, j] {
        if !(1..=d).contains(&axis) {
            return Err(Error::AxisOutOfRange { axis, d });
        }
    }
    if i == j {
        return Err(Error::DegeneratePlacket(i));
    }
    let bi = base.stepped(i as i32);
    let bj = base.stepped(j as i32);
    Ok(EdgeFlow::from_entries([
        (Edge { base: base.clone(), axis: i }, 1),
        (Edge { base: bi, axis: j }, 1),
        (Edge { base: bj, axis: i }, -1),
        (Edge { base: base.clone(), axis: j }, -1),
    ]))
}

/// The cycle formed by `tau_v`, `v + tau_w` and the reverse of `tau_{v+w}`.
pub fn cocycle_beta(v: &LatticePoint, w: &LatticePoint, ps: PathSystem) -> EdgeFlow {
    let tv = flow_of_path(&canonical_path(v, ps));
    let tw = flow_of_path(&canonical_path(w, ps)).translated(v);
    let tvw = flow_of_path(&canonical_path(&(v + w), ps));
    &(&tv + &tw) - &tvw
}

/// An element of the extension of the cycle group by `Z^d` with the cocycle
/// of a path system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionElement {
    pub cycle: EdgeFlow,
    pub shift: LatticePoint,
}

impl ExtensionElement {
    pub fn identity(d: usize) -> Self {
        ExtensionElement { cycle: EdgeFlow::new(), shift: LatticePoint::origin(d) }
    }
}

/// `(c1, v1)(c2, v2) = (c1 + v1.c2 + beta(v1, v2), v1 + v2)`.
pub fn extension_mul(
    p: &ExtensionElement,
    q: &ExtensionElement,
    ps: PathSystem,
) -> Result<ExtensionElement> {
    check_dim(p.shift.dim(), q.shift.dim())?;
    if !p.cycle.is_cycle() || !q.cycle.is_cycle() {
        return Err(Error::NotACycle);
    }
    let mut cycle = q.cycle.translated(&p.shift);
    cycle += &p.cycle;
    cycle += &cocycle_beta(&p.shift, &q.shift, ps);
    Ok(ExtensionElement { cycle, shift: &p.shift + &q.shift })
}

/// `g -> (flow(g) - flow(tau_endpoint), endpoint)`.
pub fn to_extension(g: &MetabelianElement, ps: PathSystem) -> ExtensionElement {
    let tau = flow_of_path(&canonical_path(&g.endpoint, ps));
    ExtensionElement { cycle: &g.flow - &tau, shift: g.endpoint.clone() }
}

pub fn from_extension(e: &ExtensionElement, ps: PathSystem) -> Result<MetabelianElement> {
    if !e.cycle.is_cycle() {
        return Err(Error::NotACycle);
    }
    let tau = flow_of_path(&canonical_path(&e.shift, ps));
    MetabelianElement::from_parts(e.shift.clone(), &e.cycle + &tau)
}

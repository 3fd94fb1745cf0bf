//! Lattice geometry: points of `Z^d`, oriented unit edges, lattice paths and
//! integer edge flows (1-chains on the one-skeleton of the cubical lattice).
//!
//! Axes are numbered from 1. A signed axis `+i` is a unit move along `e_i`,
//! `-i` a move along `-e_i`. Every geometric edge has one canonical
//! orientation, from `base` to `base + e_axis`; traversing it backwards
//! contributes `-1` to its multiplicity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `Z^d`. Ordered lexicographically by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    /// Panics if `coords` is empty: the ambient dimension is at least 1.
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice dimension must be at least 1");
        LatticePoint(coords)
    }

    pub fn origin(d: usize) -> Self {
        LatticePoint::new(vec![0; d])
    }

    /// The unit vector `e_axis`.
    pub fn unit(d: usize, axis: usize) -> Self {
        assert!((1..=d).contains(&axis), "axis {axis} out of range 1..={d}");
        let mut c = vec![0; d];
        c[axis - 1] = 1;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn l1_distance(&self, other: &LatticePoint) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    /// The neighbour reached by one signed-axis step.
    pub fn stepped(&self, step: i32) -> LatticePoint {
        let mut p = self.clone();
        p.step_mut(step);
        p
    }

    pub(crate) fn step_mut(&mut self, step: i32) {
        let axis = step.unsigned_abs() as usize;
        let c = &mut self.0[axis - 1];
        *c = c
            .checked_add(if step > 0 { 1 } else { -1 })
            .expect("lattice coordinate overflow");
    }

    fn zip_with(&self, other: &LatticePoint, f: impl Fn(i64, i64) -> Option<i64>) -> LatticePoint {
        assert_eq!(self.dim(), other.dim(), "lattice dimension mismatch");
        LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b).expect("lattice coordinate overflow"))
                .collect(),
        )
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        self.zip_with(rhs, i64::checked_add)
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        self.zip_with(rhs, i64::checked_sub)
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(
            self.0
                .iter()
                .map(|c| c.checked_neg().expect("lattice coordinate overflow"))
                .collect(),
        )
    }
}

/// An unoriented unit edge stored with its canonical orientation
/// `base -> base + e_axis`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub base: LatticePoint,
    pub axis: usize,
}

impl Edge {
    pub fn new(base: LatticePoint, axis: usize) -> Result<Self> {
        if !(1..=base.dim()).contains(&axis) {
            return Err(Error::AxisOutOfRange { axis, d: base.dim() });
        }
        Ok(Edge { base, axis })
    }

    pub fn head(&self) -> LatticePoint {
        self.base.stepped(self.axis as i32)
    }

    /// The edge crossed by a signed-axis step taken from `from`, with the sign
    /// of the crossing relative to the canonical orientation.
    pub fn crossed(from: &LatticePoint, step: i32) -> (Edge, i64) {
        let axis = step.unsigned_abs() as usize;
        if step > 0 {
            (Edge { base: from.clone(), axis }, 1)
        } else {
            (Edge { base: from.stepped(step), axis }, -1)
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.base, self.axis)
    }
}

/// A finite lattice path given by a start point and signed-axis steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    start: LatticePoint,
    steps: Vec<i32>,
}

impl LatticePath {
    pub fn new(start: LatticePoint, steps: Vec<i32>) -> Result<Self> {
        let d = start.dim();
        if let Some(&bad) = steps
            .iter()
            .find(|s| s.unsigned_abs() as usize > d || **s == 0)
        {
            return Err(Error::AxisOutOfRange { axis: bad.unsigned_abs() as usize, d });
        }
        Ok(LatticePath { start, steps })
    }

    pub fn from_origin(d: usize, steps: Vec<i32>) -> Result<Self> {
        LatticePath::new(LatticePoint::origin(d), steps)
    }

    /// The path consisting of the single point `start`.
    pub fn trivial(start: LatticePoint) -> Self {
        LatticePath { start, steps: Vec::new() }
    }

    pub fn start(&self) -> &LatticePoint {
        &self.start
    }

    pub fn steps(&self) -> &[i32] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> LatticePoint {
        let mut p = self.start.clone();
        for &s in &self.steps {
            p.step_mut(s);
        }
        p
    }

    /// Visited points, `start` first; one more than the number of steps.
    pub fn vertices(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let mut cur = self.start.clone();
        std::iter::once(cur.clone()).chain(self.steps.iter().map(move |&s| {
            cur.step_mut(s);
            cur.clone()
        }))
    }

    /// `self` followed by the steps of `other`, which is translated to start
    /// where `self` ends.
    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        LatticePath { start: self.start.clone(), steps }
    }
}

/// Finite integer-valued function on oriented edges: the signed traversal
/// count of every edge. Zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeFlow {
    entries: BTreeMap<Edge, i64>,
}

impl EdgeFlow {
    pub fn new() -> Self {
        EdgeFlow::default()
    }

    /// Sums repeated edges and drops zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (Edge, i64)>) -> Self {
        let mut f = EdgeFlow::new();
        for (e, m) in entries {
            f.add_edge(e, m);
        }
        f
    }

    pub fn get(&self, edge: &Edge) -> i64 {
        self.entries.get(edge).copied().unwrap_or(0)
    }

    /// Adds `mult` to the multiplicity of `edge`. Panics on `i64` overflow.
    pub fn add_edge(&mut self, edge: Edge, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.entries.entry(edge) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(mult);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let m = o
                    .get()
                    .checked_add(mult)
                    .expect("edge multiplicity overflow");
                if m == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = m;
                }
            }
        }
    }

    /// Records one step taken from `from`.
    pub fn add_step(&mut self, from: &LatticePoint, step: i32) {
        let (e, s) = Edge::crossed(from, step);
        self.add_edge(e, s);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, i64)> + '_ {
        self.entries.iter().map(|(e, &m)| (e, m))
    }

    /// Number of edges in the support.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum |f(edge)|`.
    pub fn l1_norm(&self) -> u64 {
        self.entries.values().map(|m| m.unsigned_abs()).sum()
    }

    pub fn scaled(&self, k: i64) -> EdgeFlow {
        EdgeFlow::from_entries(self.entries.iter().map(|(e, &m)| {
            (e.clone(), m.checked_mul(k).expect("edge multiplicity overflow"))
        }))
    }

    /// Net inflow at each vertex: `sum_i f(u - e_i, i) - sum_i f(u, i)`.
    pub fn divergence(&self) -> BTreeMap<LatticePoint, i64> {
        let mut div: BTreeMap<LatticePoint, i64> = BTreeMap::new();
        for (e, &m) in &self.entries {
            *div.entry(e.head()).or_default() += m;
            *div.entry(e.base.clone()).or_default() -= m;
        }
        div.retain(|_, v| *v != 0);
        div
    }

    pub fn is_cycle(&self) -> bool {
        self.divergence().is_empty()
    }

    /// Every edge base shifted by `v`.
    pub fn translated(&self, v: &LatticePoint) -> EdgeFlow {
        if v.is_origin() {
            return self.clone();
        }
        EdgeFlow {
            entries: self
                .entries
                .iter()
                .map(|(e, &m)| (Edge { base: &e.base + v, axis: e.axis }, m))
                .collect(),
        }
    }

    /// The entries satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(&Edge) -> bool) -> EdgeFlow {
        EdgeFlow {
            entries: self
                .entries
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, &m)| (e.clone(), m))
                .collect(),
        }
    }

    /// Vertices incident to a support edge.
    pub fn support_vertices(&self) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = self
            .entries
            .keys()
            .flat_map(|e| [e.base.clone(), e.head()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl Add for &EdgeFlow {
    type Output = EdgeFlow;
    fn add(self, rhs: &EdgeFlow) -> EdgeFlow {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&EdgeFlow> for EdgeFlow {
    fn add_assign(&mut self, rhs: &EdgeFlow) {
        for (e, &m) in &rhs.entries {
            self.add_edge(e.clone(), m);
        }
    }
}

impl Sub for &EdgeFlow {
    type Output = EdgeFlow;
    fn sub(self, rhs: &EdgeFlow) -> EdgeFlow {
        let mut out = self.clone();
        for (e, &m) in &rhs.entries {
            out.add_edge(e.clone(), m.checked_neg().expect("edge multiplicity overflow"));
        }
        out
    }
}

impl Neg for &EdgeFlow {
    type Output = EdgeFlow;
    fn neg(self) -> EdgeFlow {
        self.scaled(-1)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowEntry {
    base: Vec<i64>,
    axis: usize,
    mult: i64,
}

// Canonical form: array of {"base","axis","mult"} sorted by (base, axis).
impl Serialize for EdgeFlow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|(e, &m)| FlowEntry {
            base: e.base.coords().to_vec(),
            axis: e.axis,
            mult: m,
        }))
    }
}

impl<'de> Deserialize<'de> for EdgeFlow {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<FlowEntry>::deserialize(de)?;
        let mut entries = BTreeMap::new();
        for FlowEntry { base, axis, mult } in raw {
            if base.is_empty() {
                return Err(D::Error::custom("edge base must have at least one coordinate"));
            }
            if mult == 0 {
                return Err(D::Error::custom("zero multiplicities are not stored"));
            }
            let edge = Edge::new(LatticePoint(base), axis).map_err(D::Error::custom)?;
            if entries.insert(edge, mult).is_some() {
                return Err(D::Error::custom("duplicate edge"));
            }
        }
        let dims: std::collections::BTreeSet<usize> = entries.keys().map(|e| e.base.dim()).collect();
        if dims.len() > 1 {
            return Err(D::Error::custom("edges of mixed dimension"));
        }
        Ok(EdgeFlow { entries })
    }
}

/// Deterministic choice of a path from the origin to every lattice point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathSystem {
    /// Monotone staircase: all axis-1 moves, then axis 2, and so on.
    #[default]
    AxisOrder,
    /// Monotone staircase with axes taken from `d` down to 1.
    ReverseAxisOrder,
}

impl PathSystem {
    pub const ALL: [PathSystem; 2] = [PathSystem::AxisOrder, PathSystem::ReverseAxisOrder];
}

/// The path `tau_v` of the path system: a monotone staircase from 0 to `v`.
pub fn canonical_path(v: &LatticePoint, ps: PathSystem) -> LatticePath {
    let d = v.dim();
    let axes: Vec<usize> = match ps {
        PathSystem::AxisOrder => (1..=d).collect(),
        PathSystem::ReverseAxisOrder => (1..=d).rev().collect(),
    };
    let mut steps = Vec::with_capacity(v.l1_norm() as usize);
    for axis in axes {
        let c = v.coords()[axis - 1];
        let step = if c >= 0 { axis as i32 } else { -(axis as i32) };
        steps.extend(std::iter::repeat_n(step, c.unsigned_abs() as usize));
    }
    LatticePath { start: LatticePoint::origin(d), steps }
}

/// Signed traversal count of every edge along `p`.
pub fn flow_of_path(p: &LatticePath) -> EdgeFlow {
    let mut f = EdgeFlow::new();
    let mut cur = p.start().clone();
    for &s in p.steps() {
        f.add_step(&cur, s);
        cur.step_mut(s);
    }
    f
}

pub fn divergence(f: &EdgeFlow) -> BTreeMap<LatticePoint, i64> {
    f.divergence()
}

pub fn translate_flow(f: &EdgeFlow, v: &LatticePoint) -> EdgeFlow {
    f.translated(v)
}

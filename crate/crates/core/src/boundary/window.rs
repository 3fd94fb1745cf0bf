//! Finite observation boxes and the two-checkpoint stable-flow report.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::{Edge, LatticePoint};
use crate::walk::Trajectory;

/// The box `[-radius, radius]^d`, with dense numbering of its vertices and of
/// the edges whose endpoints both lie in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    d: usize,
    radius: i64,
    side: usize,
    strides: Vec<usize>,
}

impl Window {
    pub fn new(d: usize, radius: u32) -> Self {
        assert!(d >= 1, "window needs a positive dimension");
        let side = 2 * radius as usize + 1;
        let strides = (0..d).map(|i| side.pow(i as u32)).collect();
        Window { d, radius: i64::from(radius), side, strides }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn radius(&self) -> u32 {
        self.radius as u32
    }

    pub fn vertex_count(&self) -> usize {
        self.side.pow(self.d as u32)
    }

    /// Number of edge slots; slots whose head would leave the box are unused.
    pub fn slot_count(&self) -> usize {
        self.d * self.vertex_count()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.d && p.coords().iter().all(|x| x.abs() <= self.radius)
    }

    pub fn vertex_slot(&self, p: &LatticePoint) -> Option<usize> {
        self.contains(p).then(|| {
            p.coords()
                .iter()
                .zip(&self.strides)
                .map(|(x, s)| (x + self.radius) as usize * s)
                .sum()
        })
    }

    pub fn edge_slot(&self, e: &Edge) -> Option<usize> {
        if !self.contains(&e.head()) {
            return None;
        }
        self.vertex_slot(&e.base).map(|v| (e.axis - 1) * self.vertex_count() + v)
    }

    pub fn vertex_at(&self, slot: usize) -> LatticePoint {
        LatticePoint::new(
            self.strides
                .iter()
                .map(|s| ((slot / s) % self.side) as i64 - self.radius)
                .collect(),
        )
    }

    /// Vertices in slot order.
    pub fn vertices(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..self.vertex_count()).map(|s| self.vertex_at(s))
    }

    /// Window edges with their slots, in slot order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Edge)> + '_ {
        (0..self.slot_count()).filter_map(|slot| {
            let axis = slot / self.vertex_count() + 1;
            let base = self.vertex_at(slot % self.vertex_count());
            (base.coords()[axis - 1] < self.radius).then_some((slot, Edge { base, axis }))
        })
    }

    pub(crate) fn tracker(&self) -> Tracker<'_> {
        Tracker {
            window: self,
            pos: vec![0; self.d],
            outside: 0,
            offset: self.strides.iter().map(|&s| self.radius * s as i64).sum(),
        }
    }
}

/// A walker position with O(1) window membership per step.
pub(crate) struct Tracker<'a> {
    window: &'a Window,
    pos: Vec<i64>,
    /// Coordinates currently outside `[-r, r]`.
    outside: usize,
    /// Dense vertex number of `pos`, meaningful only while `outside == 0`.
    offset: i64,
}

impl Tracker<'_> {
    /// Steps along a base-walk letter; returns the slot and sign of the
    /// crossed edge when it lies in the window.
    pub(crate) fn step(&mut self, letter: i32) -> Option<(usize, i64)> {
        let w = self.window;
        let a = letter.unsigned_abs() as usize - 1;
        let s = i64::from(letter.signum());
        let x = self.pos[a];
        let nx = x + s;
        let was_out = x.abs() > w.radius;
        let others_in = self.outside == usize::from(was_out);
        let b = x.min(nx);
        let stride = w.strides[a] as i64;
        let crossed = (others_in && -w.radius <= b && b < w.radius).then(|| {
            let base = if s > 0 { self.offset } else { self.offset - stride };
            (a * w.vertex_count() + base as usize, s)
        });
        self.pos[a] = nx;
        let now_out = nx.abs() > w.radius;
        if was_out != now_out {
            if now_out {
                self.outside += 1;
            } else {
                self.outside -= 1;
            }
        }
        self.offset += s * stride;
        crossed
    }

    pub(crate) fn vertex_slot(&self) -> Option<usize> {
        (self.outside == 0).then_some(self.offset as usize)
    }
}

/// Net traversal counts of the window edges at steps `N/2` and `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct StableFlowReport {
    pub horizon: u64,
    pub checkpoints: [u64; 2],
    pub window: Window,
    half: Vec<i64>,
    full: Vec<i64>,
}

/// One window edge of a [`StableFlowReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowRow {
    pub edge: Edge,
    pub half: i64,
    pub full: i64,
    pub stabilized: bool,
}

impl StableFlowReport {
    pub fn value_at_half(&self, e: &Edge) -> i64 {
        self.window.edge_slot(e).map_or(0, |s| self.half[s])
    }

    pub fn value(&self, e: &Edge) -> i64 {
        self.window.edge_slot(e).map_or(0, |s| self.full[s])
    }

    pub fn stabilized(&self, e: &Edge) -> bool {
        self.value_at_half(e) == self.value(e)
    }

    pub fn rows(&self) -> Vec<FlowRow> {
        self.window
            .edges()
            .map(|(s, edge)| FlowRow {
                edge,
                half: self.half[s],
                full: self.full[s],
                stabilized: self.half[s] == self.full[s],
            })
            .collect()
    }

    /// Share of window edges whose value changed between the checkpoints.
    pub fn unstable_fraction(&self) -> f64 {
        let (mut total, mut moved) = (0usize, 0usize);
        for (s, _) in self.window.edges() {
            total += 1;
            moved += usize::from(self.half[s] != self.full[s]);
        }
        moved as f64 / total as f64
    }
}

impl Serialize for StableFlowReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StableFlowReport", 4)?;
        st.serialize_field("horizon", &self.horizon)?;
        st.serialize_field("checkpoints", &self.checkpoints)?;
        st.serialize_field("radius", &self.window.radius())?;
        st.serialize_field("edges", &self.rows())?;
        st.end()
    }
}

/// Window flow of the base walk of `traj` at steps `N/2` and `N`; a
/// finite-horizon stand-in for the limit flow.
pub fn limit_flow(traj: &Trajectory, n: u64, window: &Window) -> StableFlowReport {
    assert!(n >= 2, "horizon must be at least 2");
    assert!(n <= traj.len(), "horizon beyond the trajectory");
    assert_eq!(traj.generators(), window.d(), "trajectory and window dimensions differ");
    let mut t = window.tracker();
    let mut flow = vec![0i64; window.slot_count()];
    let mut letters = traj.letters();
    let mut run = |count: u64, flow: &mut Vec<i64>| {
        letters.feed(count, |l| {
            if let Some((slot, s)) = t.step(l) {
                flow[slot] += s;
            }
        })
    };
    run(n / 2, &mut flow);
    let half = flow.clone();
    run(n - n / 2, &mut flow);
    StableFlowReport { horizon: n, checkpoints: [n / 2, n], window: window.clone(), half, full: flow }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::flow_of_path;
    use crate::lattice::LatticePath;

    #[test]
    fn numbering_round_trip() {
        let w = Window::new(3, 2);
        for (i, v) in w.vertices().enumerate() {
            assert_eq!(w.vertex_slot(&v), Some(i));
        }
        for (slot, e) in w.edges() {
            assert_eq!(w.edge_slot(&e), Some(slot));
        }
        assert_eq!(w.edges().count(), 3 * 4 * 25);
        assert_eq!(w.edge_slot(&Edge::new(LatticePoint::new(vec![2, 0, 0]), 1).unwrap()), None);
    }

    #[test]
    fn tracker_matches_direct_flow() {
        let w = Window::new(2, 1);
        let steps = vec![1, 1, 2, -1, -1, -1, -2, -2, -2, 1, 2, 2, 1, 1, -2, -1];
        let mut t = w.tracker();
        let mut flow = vec![0i64; w.slot_count()];
        for &l in &steps {
            if let Some((s, sign)) = t.step(l) {
                flow[s] += sign;
            }
        }
        let direct = flow_of_path(&LatticePath::from_origin(2, steps).unwrap());
        for (slot, e) in w.edges() {
            assert_eq!(flow[slot], direct.get(&e), "edge {e}");
        }
    }

    #[test]
    fn limit_flow_checkpoints() {
        let traj = Trajectory::new(5, 0, 2, 1000);
        let r = limit_flow(&traj, 1000, &Window::new(2, 3));
        assert_eq!(r.checkpoints, [500, 1000]);
        for row in r.rows() {
            assert_eq!(row.stabilized, row.half == row.full);
        }
        assert!((0.0..=1.0).contains(&r.unstable_fraction()));
    }
}

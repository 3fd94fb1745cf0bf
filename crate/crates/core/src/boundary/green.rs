//! Green function of the simple random walk on `Z^d`, `d >= 3`.
//!
//! `G(0, x) = (2 pi)^-d  int_{[-pi, pi]^d} cos(k.x) / (1 - phi(k)) dk`,
//! `phi(k) = (1/d) sum cos k_i`. The integral is evaluated by the midpoint
//! rule on a periodic grid with cells centred at `j h`, `h = 2 pi / M`. The
//! cell at the origin, where the integrand blows up like `2d / |k|^2`, is
//! replaced by the integral of that leading term. The remaining error is
//! first order in `h`, so `2 G_M - G_{M/2}` is used and `M` doubled until
//! successive extrapolations agree within the tolerance.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Edge, LatticePoint};
use crate::walk::{Estimate, Trajectory};

/// Tolerance used by the boundary reports.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Finest grid tried before giving up on the tolerance.
const MAX_GRID: usize = 1024;

fn check_transient(d: usize) -> Result<()> {
    if d <= 2 {
        return Err(Error::Recurrent(d));
    }
    Ok(())
}

/// `int_{[-1,1]^d} |u|^-2 du`, written as `2d/(d-2)` times the integral of
/// `1 / (1 + |s|^2)` over one face `[-1,1]^{d-1}`; the face integral is a
/// Richardson-extrapolated tensor midpoint rule.
fn unit_cube_inverse_square(d: usize) -> f64 {
    let face = |m: usize| -> f64 {
        let h = 1.0 / m as f64;
        let sq: Vec<f64> = (0..m).map(|i| ((i as f64 + 0.5) * h).powi(2)).collect();
        let dims = d - 1;
        let mut idx = vec![0usize; dims];
        let mut sum = 0.0;
        loop {
            let r2: f64 = idx.iter().map(|&i| sq[i]).sum();
            sum += 1.0 / (1.0 + r2);
            let mut k = 0;
            while k < dims {
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == dims {
                break;
            }
        }
        // Integrand is even in every coordinate: [0,1]^{d-1} times 2^{d-1}.
        sum * h.powi(dims as i32) * 2f64.powi(dims as i32)
    };
    let m = if d <= 4 { 64 } else { 24 };
    let f = (4.0 * face(m) - face(m / 2)) / 3.0;
    2.0 * d as f64 / (d as f64 - 2.0) * f
}

/// Plain midpoint value on an `M`-point grid per axis, origin cell analytic.
fn green_on_grid(x: &[i64], m: usize) -> f64 {
    let d = x.len();
    let h = 2.0 * PI / m as f64;
    let half = m / 2;
    // Grid index j in 0..=M/2 stands for +-j; weights count both signs.
    let cosk: Vec<f64> = (0..=half).map(|j| (j as f64 * h).cos()).collect();
    let weight: Vec<f64> = (0..=half).map(|j| if j == 0 || j == half { 1.0 } else { 2.0 }).collect();
    let phase: Vec<Vec<f64>> =
        x.iter().map(|&xi| (0..=half).map(|j| (j as f64 * h * xi as f64).cos()).collect()).collect();
    let dn = d as f64;
    // Outer axis in parallel, fixed chunking so the sum order is stable.
    let partial: Vec<f64> = (0..=half)
        .into_par_iter()
        .map(|j0| {
            let mut idx = vec![0usize; d];
            idx[0] = j0;
            let mut sum = 0.0;
            loop {
                if idx.iter().any(|&j| j != 0) {
                    let mut c = 0.0;
                    let mut w = 1.0;
                    let mut num = 1.0;
                    for (axis, &j) in idx.iter().enumerate() {
                        c += cosk[j];
                        w *= weight[j];
                        num *= phase[axis][j];
                    }
                    sum += w * num / (1.0 - c / dn);
                }
                let mut k = 1;
                while k < d {
                    idx[k] += 1;
                    if idx[k] <= half {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
            sum
        })
        .collect();
    let grid: f64 = partial.iter().sum::<f64>() * h.powi(d as i32);
    let a = h / 2.0;
    let origin_cell = 2.0 * dn * a.powi(d as i32 - 2) * unit_cube_inverse_square(d);
    (grid + origin_cell) / (2.0 * PI).powi(d as i32)
}

/// Coordinates as sorted absolute values: the symmetry class of `x`.
fn canonical(x: &LatticePoint) -> Vec<i64> {
    let mut c: Vec<i64> = x.coords().iter().map(|v| v.abs()).collect();
    c.sort_unstable();
    c
}

/// `G(0, x)` refined until successive extrapolated values differ by less
/// than `tol`.
pub fn green_numeric(x: &LatticePoint, d: usize, tol: f64) -> Result<f64> {
    check_transient(d)?;
    crate::error::check_dim(d, x.dim())?;
    let c = canonical(x);
    let mut m = 8;
    let mut coarse = green_on_grid(&c, m);
    let mut prev: Option<f64> = None;
    while m < MAX_GRID {
        m *= 2;
        let fine = green_on_grid(&c, m);
        let extrapolated = 2.0 * fine - coarse;
        if let Some(p) = prev {
            if (extrapolated - p).abs() < tol {
                return Ok(extrapolated);
            }
        }
        prev = Some(extrapolated);
        coarse = fine;
    }
    Err(Error::BudgetExceeded(format!("Green quadrature did not reach tolerance {tol} on a {MAX_GRID}-point grid")))
}

/// `(G(0, base) - G(0, head)) / (2d)`: the mean limit flow on `edge`.
pub fn expected_flow(edge: &Edge, d: usize, tol: f64) -> Result<f64> {
    check_transient(d)?;
    let g0 = green_numeric(&edge.base, d, tol)?;
    let g1 = green_numeric(&edge.head(), d, tol)?;
    Ok((g0 - g1) / (2.0 * d as f64))
}

/// Quadrature values of `G(0, x)` on a set of points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenTable {
    pub d: usize,
    pub tolerance: f64,
    pub values: BTreeMap<LatticePoint, f64>,
}

/// `G(0, x)` for all `x` with `|x|_1 <= radius`, one quadrature per
/// symmetry class.
pub fn green_table(d: usize, radius: u64, tol: f64) -> Result<GreenTable> {
    check_transient(d)?;
    let mut points = vec![LatticePoint::origin(d)];
    for _ in 0..radius {
        let mut next = points.clone();
        for p in &points {
            for axis in 1..=d as i32 {
                next.push(p.stepped(axis));
                next.push(p.stepped(-axis));
            }
        }
        next.sort();
        next.dedup();
        points = next;
    }
    let mut by_class: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    let mut values = BTreeMap::new();
    for p in points {
        let c = canonical(&p);
        let v = match by_class.get(&c) {
            Some(&v) => v,
            None => {
                let v = green_numeric(&p, d, tol)?;
                by_class.insert(c, v);
                v
            }
        };
        values.insert(p, v);
    }
    Ok(GreenTable { d, tolerance: tol, values })
}

/// Expected visits to `x` after step `horizon`, from the local limit
/// theorem `p_n(x) ~ 2 (d / (2 pi n))^{d/2} exp(-d |x|^2 / (2n))` on the
/// steps `n` of the right parity. Summed term by term up to `100 * horizon`
/// and by the integral of the leading term beyond.
pub fn visit_tail(x: &LatticePoint, horizon: u64) -> f64 {
    let d = x.dim() as f64;
    let r2: f64 = x.coords().iter().map(|&c| (c * c) as f64).sum();
    let parity = x.l1_norm() % 2;
    let stop = 100 * horizon.max(1);
    let mut n = horizon + 1;
    if n % 2 != parity {
        n += 1;
    }
    let mut sum = 0.0;
    while n <= stop {
        let nf = n as f64;
        sum += 2.0 * (d / (2.0 * PI * nf)).powf(d / 2.0) * (-d * r2 / (2.0 * nf)).exp();
        n += 2;
    }
    let m = stop as f64;
    sum + (d / (2.0 * PI)).powf(d / 2.0) * m.powf(1.0 - d / 2.0) / (d / 2.0 - 1.0)
}

/// Visit-count estimates of `G(0, x)` for each target: visits at steps
/// `0..=horizon` of `walks` independent walks, plus [`visit_tail`].
pub fn green_monte_carlo(
    targets: &[LatticePoint],
    d: usize,
    walks: u64,
    horizon: u64,
    seed: u64,
) -> Result<Vec<Estimate>> {
    check_transient(d)?;
    for t in targets {
        crate::error::check_dim(d, t.dim())?;
    }
    let reach = targets.iter().map(LatticePoint::l1_norm).max().unwrap_or(0) as i64;
    let counts: Vec<Vec<u32>> = (0..walks)
        .into_par_iter()
        .map(|i| {
            let traj = Trajectory::new(seed, i, d, horizon);
            let mut pos = vec![0i64; d];
            let mut norm: i64 = 0;
            let mut visits = vec![0u32; targets.len()];
            let tally = |pos: &[i64], visits: &mut [u32]| {
                for (v, t) in visits.iter_mut().zip(targets) {
                    if t.coords() == pos {
                        *v += 1;
                    }
                }
            };
            tally(&pos, &mut visits);
            traj.letters().for_each(|l| {
                let a = l.unsigned_abs() as usize - 1;
                let before = pos[a].abs();
                pos[a] += i64::from(l.signum());
                norm += pos[a].abs() - before;
                if norm <= reach {
                    tally(&pos, &mut visits);
                }
            });
            visits
        })
        .collect();
    Ok(targets
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let xs: Vec<f64> = counts.iter().map(|c| f64::from(c[k])).collect();
            let e = Estimate::from_samples(&xs);
            Estimate { mean: e.mean + visit_tail(t, horizon), half_width: e.half_width }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    #[test]
    fn cube_constant() {
        // Reference value of int_{[-1,1]^3} |u|^-2 du.
        assert!((unit_cube_inverse_square(3) - 15.348_248_6).abs() < 1e-5);
    }

    #[test]
    fn watson_value() {
        let g = green_numeric(&pt(&[0, 0, 0]), 3, 1e-6).unwrap();
        assert!((g - 1.516_386_06).abs() < 1e-5, "{g}");
    }

    #[test]
    fn harmonic_off_origin() {
        let g0 = green_numeric(&pt(&[0, 0, 0]), 3, 1e-7).unwrap();
        let g1 = green_numeric(&pt(&[1, 0, 0]), 3, 1e-7).unwrap();
        assert!((g0 - g1 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn symmetric_exactly() {
        let a = green_numeric(&pt(&[1, -2, 0]), 3, 1e-5).unwrap();
        let b = green_numeric(&pt(&[0, 2, 1]), 3, 1e-5).unwrap();
        let c = green_numeric(&pt(&[-1, 2, 0]), 3, 1e-5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn recurrent_dimensions_rejected() {
        assert_eq!(green_numeric(&pt(&[0, 0]), 2, 1e-3), Err(Error::Recurrent(2)));
        let e = Edge::new(pt(&[0]), 1).unwrap();
        assert_eq!(expected_flow(&e, 1, 1e-3), Err(Error::Recurrent(1)));
    }

    #[test]
    fn tail_is_small_and_positive() {
        let t = visit_tail(&pt(&[0, 0, 0]), 1000);
        assert!(t > 0.0 && t < 0.03, "{t}");
        assert!(visit_tail(&pt(&[1, 0, 0]), 1000) > 0.0);
    }
}

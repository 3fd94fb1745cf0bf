use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Result};
use crate::lattice::{canonical_path, flow_of_path, EdgeFlow, LatticePoint, PathSystem};
use crate::metabelian::{mb_eval, mb_mul, placket, MetabelianElement};
use crate::word::Word;

/// An element of the free nilpotent group of class 2: endpoint plus the
/// signed areas of the path closed by the staircase return, projected to
/// every coordinate plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NilpotentElement {
    endpoint: LatticePoint,
    // Row-major d x d, antisymmetric.
    areas: Vec<i64>,
}

impl NilpotentElement {
    pub fn identity(d: usize) -> Self {
        NilpotentElement { endpoint: LatticePoint::origin(d), areas: vec![0; d * d] }
    }

    /// Builds an element from its endpoint and the strictly upper triangle of
    /// the area matrix, listed row by row.
    pub fn from_upper(endpoint: LatticePoint, upper: &[i64]) -> Result<Self> {
        let d = endpoint.dim();
        check_dim(d * (d - 1) / 2, upper.len())?;
        let mut areas = vec![0; d * d];
        let mut k = 0;
        for i in 0..d {
            for j in i + 1..d {
                areas[i * d + j] = upper[k];
                areas[j * d + i] = -upper[k];
                k += 1;
            }
        }
        Ok(NilpotentElement { endpoint, areas })
    }

    pub fn d(&self) -> usize {
        self.endpoint.dim()
    }

    pub fn endpoint(&self) -> &LatticePoint {
        &self.endpoint
    }

    /// `A_ij` with 1-based axes.
    pub fn area(&self, i: usize, j: usize) -> i64 {
        self.areas[(i - 1) * self.d() + (j - 1)]
    }

    pub fn area_matrix(&self) -> Vec<Vec<i64>> {
        self.areas.chunks(self.d()).map(<[i64]>::to_vec).collect()
    }

    /// Strictly upper triangle of the area matrix, row by row.
    pub fn upper(&self) -> Vec<i64> {
        let d = self.d();
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .map(|(i, j)| self.areas[i * d + j])
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.endpoint.is_origin() && self.areas.iter().all(|&a| a == 0)
    }

    /// Right multiplication by one letter, in O(d).
    ///
    /// With `S_ij = sum base_i * f(base, j)` over the raw path flow,
    /// `A_ij = S_ij - v_i v_j` for `i < j`. A step `s` along `k` adds `s v_i`
    /// to `S_ik`, which cancels against the correction for `i < k`; only the
    /// entries `A_kj` with `j > k` move, by `-s v_j`.
    pub fn push_letter(&mut self, letter: i32) {
        let d = self.d();
        let k = letter.unsigned_abs() as usize - 1;
        assert!(k < d, "letter {letter} outside a {d}-generator alphabet");
        let s = i64::from(letter.signum());
        for j in k + 1..d {
            let vj = self.endpoint.coords()[j];
            let a = self.areas[k * d + j].checked_sub(s * vj).expect("area overflow");
            self.areas[k * d + j] = a;
            self.areas[j * d + k] = -a;
        }
        self.endpoint.step_mut(letter);
    }

    pub fn mul(&self, other: &NilpotentElement) -> Result<NilpotentElement> {
        nil_mul(self, other)
    }

    pub fn inv(&self) -> NilpotentElement {
        nil_inv(self)
    }

    /// A metabelian element mapping to `self`: the staircase to the endpoint
    /// followed by `A_ij` plackets at the origin for `i < j`.
    pub fn representative(&self) -> MetabelianElement {
        let d = self.d();
        let mut flow = flow_of_path(&canonical_path(&self.endpoint, PathSystem::AxisOrder));
        let origin = LatticePoint::origin(d);
        for i in 1..=d {
            for j in i + 1..=d {
                let a = self.area(i, j);
                if a != 0 {
                    flow += &placket(i, j, &origin).expect("distinct axes").scaled(a);
                }
            }
        }
        MetabelianElement::from_parts(self.endpoint.clone(), flow).expect("valid representative")
    }
}

/// Areas of the closed flow `flow - flow(tau_endpoint)`.
pub fn nil_project(g: &MetabelianElement) -> NilpotentElement {
    let d = g.d();
    let tau = flow_of_path(&canonical_path(g.endpoint(), PathSystem::AxisOrder));
    let closed: EdgeFlow = g.flow() - &tau;
    let mut areas = vec![0i64; d * d];
    for (e, m) in closed.iter() {
        let j = e.axis - 1;
        for (i, &b) in e.base.coords().iter().enumerate() {
            if i != j {
                let term = b.checked_mul(m).expect("area overflow");
                areas[i * d + j] = areas[i * d + j].checked_add(term).expect("area overflow");
            }
        }
    }
    NilpotentElement { endpoint: g.endpoint().clone(), areas }
}

pub fn nil_eval(w: &Word) -> NilpotentElement {
    nil_project(&mb_eval(w))
}

pub fn nil_mul(a: &NilpotentElement, b: &NilpotentElement) -> Result<NilpotentElement> {
    check_dim(a.d(), b.d())?;
    Ok(nil_project(&mb_mul(&a.representative(), &b.representative())?))
}

pub fn nil_inv(a: &NilpotentElement) -> NilpotentElement {
    nil_project(&a.representative().inv())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NilpotentJson {
    variety: String,
    d: usize,
    endpoint: LatticePoint,
    areas: Vec<Vec<i64>>,
}

impl Serialize for NilpotentElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NilpotentJson {
            variety: "nilpotent2".into(),
            d: self.d(),
            endpoint: self.endpoint.clone(),
            areas: self.area_matrix(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NilpotentElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = NilpotentJson::deserialize(de)?;
        let d = raw.d;
        if raw.variety != "nilpotent2" {
            return Err(D::Error::custom(format!("expected variety nilpotent2, got {}", raw.variety)));
        }
        if raw.endpoint.dim() != d || raw.areas.len() != d || raw.areas.iter().any(|r| r.len() != d) {
            return Err(D::Error::custom("area matrix must be d x d"));
        }
        for i in 0..d {
            for j in 0..d {
                if raw.areas[i][j] != -raw.areas[j][i] {
                    return Err(D::Error::custom("area matrix must be antisymmetric"));
                }
            }
        }
        Ok(NilpotentElement { endpoint: raw.endpoint, areas: raw.areas.concat() })
    }
}

//! Words evaluated in one of the five varieties.

use serde_json::{json, Value};

use edgeflow::quotient::nil_eval;
use edgeflow::walk::{Variety, WalkConfig};
use edgeflow::{
    free_reduce, ll_eval, mb_eval, parse_word, LampGroupSpec, LamplighterElement, LatticePoint,
    MetabelianElement, NilpotentElement, Word,
};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Abelian(LatticePoint),
    Free(Word),
    Nilpotent(NilpotentElement),
    Metabelian(MetabelianElement),
    Lamplighter(LamplighterElement),
}

pub fn parse(cfg: &WalkConfig, text: &str) -> Result<Word, CliError> {
    parse_word(text, cfg.generators()).map_err(|e| CliError::Usage(format!("malformed word {text:?}: {e}")))
}

pub fn eval(cfg: &WalkConfig, w: &Word) -> Result<Element, CliError> {
    Ok(match cfg.variety {
        Variety::Abelian => Element::Abelian(w.abelianization()),
        Variety::Free => Element::Free(free_reduce(w)),
        Variety::Nilpotent2 => Element::Nilpotent(nil_eval(w)),
        Variety::Metabelian => Element::Metabelian(mb_eval(w)),
        Variety::Lamplighter => {
            let spec = LampGroupSpec::new(cfg.m.expect("validated lamplighter config"))?;
            Element::Lamplighter(ll_eval(w, spec)?)
        }
    })
}

impl Element {
    pub fn mul(&self, other: &Element) -> Result<Element, CliError> {
        Ok(match (self, other) {
            (Element::Abelian(a), Element::Abelian(b)) => Element::Abelian(a + b),
            (Element::Free(a), Element::Free(b)) => Element::Free(free_reduce(&a.concat(b)?)),
            (Element::Nilpotent(a), Element::Nilpotent(b)) => Element::Nilpotent(a.mul(b)?),
            (Element::Metabelian(a), Element::Metabelian(b)) => Element::Metabelian(a.mul(b)?),
            (Element::Lamplighter(a), Element::Lamplighter(b)) => Element::Lamplighter(a.mul(b)?),
            _ => unreachable!("operands come from one variety"),
        })
    }

    pub fn inv(&self) -> Element {
        match self {
            Element::Abelian(a) => Element::Abelian(-a),
            Element::Free(a) => Element::Free(a.inverse()),
            Element::Nilpotent(a) => Element::Nilpotent(a.inv()),
            Element::Metabelian(a) => Element::Metabelian(a.inv()),
            Element::Lamplighter(a) => Element::Lamplighter(a.inv()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Element::Abelian(a) => json!({"variety": "abelian", "d": a.dim(), "endpoint": a}),
            Element::Free(w) => {
                json!({"variety": "free", "d": w.d(), "word": w.to_string(), "length": w.len()})
            }
            Element::Nilpotent(g) => serde_json::to_value(g).expect("serializable"),
            Element::Metabelian(g) => serde_json::to_value(g).expect("serializable"),
            Element::Lamplighter(g) => serde_json::to_value(g).expect("serializable"),
        }
    }

    /// Coordinate-wise difference of the complete invariants; empty exactly
    /// when the elements are equal.
    pub fn difference(&self, other: &Element) -> Value {
        match (self, other) {
            (Element::Abelian(a), Element::Abelian(b)) => json!({"endpoint": a - b}),
            (Element::Free(a), Element::Free(b)) => {
                let q = free_reduce(&a.concat(&b.inverse()).expect("same alphabet"));
                json!({"word": q.to_string()})
            }
            (Element::Nilpotent(a), Element::Nilpotent(b)) => {
                let areas: Vec<Vec<i64>> = a
                    .area_matrix()
                    .iter()
                    .zip(b.area_matrix())
                    .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
                    .collect();
                json!({"endpoint": a.endpoint() - b.endpoint(), "areas": areas})
            }
            (Element::Metabelian(a), Element::Metabelian(b)) => {
                json!({"endpoint": a.endpoint() - b.endpoint(), "flow": a.flow() - b.flow()})
            }
            (Element::Lamplighter(a), Element::Lamplighter(b)) => {
                let spec = a.spec();
                let mut nodes: Vec<&LatticePoint> = a.lamps().keys().chain(b.lamps().keys()).collect();
                nodes.sort();
                nodes.dedup();
                let lamps: Vec<Value> = nodes
                    .into_iter()
                    .filter_map(|n| {
                        let v = spec.reduce(a.lamp(n) - b.lamp(n));
                        (v != 0).then(|| json!({"node": n, "value": v}))
                    })
                    .collect();
                json!({"position": a.position() - b.position(), "lamps": lamps})
            }
            _ => unreachable!("operands come from one variety"),
        }
    }
}

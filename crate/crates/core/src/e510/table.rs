//! Structure constants in the generator basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactalg::linalg::{solve, SparseMatrix};
use crate::exactalg::scalar::{format_scalar, parse_scalar, Scalar};

use super::bracket::E510;
use super::element::Element510;
use super::generators::GeneratorId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum E510Error {
    #[error("element `{0}` is not in the span of the generator basis")]
    NotInSpan(String),
    #[error("malformed structure table: {0}")]
    Format(String),
}

/// Linear combination of basis generators.
pub type Combination = Vec<(GeneratorId, Scalar)>;

static BASIS: Lazy<Vec<(GeneratorId, Element510)>> =
    Lazy::new(|| GeneratorId::basis().into_iter().map(|g| (g, g.realize())).collect());

/// Coordinates of a realized element in the basis of L₋ ⊕ g₀.
pub fn express(e: &Element510) -> Result<Combination, E510Error> {
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let target = e.coordinates();
    let mut keys: Vec<_> = target.keys().cloned().collect();
    let coords: Vec<_> = BASIS.iter().map(|(_, b)| b.coordinates()).collect();
    for c in &coords {
        keys.extend(c.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let index: BTreeMap<_, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut m = SparseMatrix::new(keys.len(), coords.len());
    for (j, c) in coords.iter().enumerate() {
        for (k, v) in c {
            m.set(index[k], j, v.clone());
        }
    }
    let mut rhs = vec![Scalar::zero(); keys.len()];
    for (k, v) in &target {
        rhs[index[k]] = v.clone();
    }
    let x = solve(&m, &rhs).ok_or_else(|| E510Error::NotInSpan(e.to_string()))?;
    Ok(BASIS.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|((g, _), c)| (*g, c)).collect())
}

pub fn combination_element(c: &Combination) -> Element510 {
    c.iter().fold(Element510::zero(), |acc, (g, s)| acc.add(&g.realize().scale(s)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub left: GeneratorId,
    pub right: GeneratorId,
    pub result: Combination,
}

/// Left operands of the table: g₀ basis, h₀ and the three named elements of g₁.
pub fn table_lefts() -> Vec<GeneratorId> {
    use GeneratorId::*;
    let mut v = GeneratorId::g0_basis();
    v.extend([H0, E0, E0Plus, E0Minus]);
    v
}

/// Brackets of every zero- or positive-degree named generator with every L₋ generator,
/// all brackets inside g₀ and all brackets inside L₋.
pub fn structure_table(alg: &E510) -> Result<Vec<StructureEntry>, E510Error> {
    let mut pairs = Vec::new();
    for l in table_lefts() {
        for r in GeneratorId::lminus_basis() {
            pairs.push((l, r));
        }
    }
    for l in GeneratorId::g0_basis() {
        for r in GeneratorId::g0_basis() {
            pairs.push((l, r));
        }
    }
    for l in GeneratorId::lminus_basis() {
        for r in GeneratorId::lminus_basis() {
            pairs.push((l, r));
        }
    }
    pairs
        .into_iter()
        .map(|(left, right)| {
            let b = alg.bracket(&left.realize(), &right.realize());
            Ok(StructureEntry { left, right, result: express(&b)? })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    gen: String,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    left: String,
    right: String,
    result: Vec<TermJson>,
}

pub fn table_to_json(t: &[StructureEntry]) -> Value {
    let entries: Vec<EntryJson> = t
        .iter()
        .map(|e| EntryJson {
            left: e.left.name(),
            right: e.right.name(),
            result: e
                .result
                .iter()
                .map(|(g, c)| TermJson { coeff: format_scalar(c), gen: g.name() })
                .collect(),
        })
        .collect();
    serde_json::json!({ "entries": entries })
}

pub fn table_from_json(v: &Value) -> Result<Vec<StructureEntry>, E510Error> {
    let bad = |m: String| E510Error::Format(m);
    let entries: Vec<EntryJson> = serde_json::from_value(v.get("entries").cloned().unwrap_or(Value::Null))
        .map_err(|e| bad(e.to_string()))?;
    entries
        .into_iter()
        .map(|e| {
            let g = |s: &str| s.parse::<GeneratorId>().map_err(|e| bad(e.to_string()));
            Ok(StructureEntry {
                left: g(&e.left)?,
                right: g(&e.right)?,
                result: e
                    .result
                    .iter()
                    .map(|t| Ok((g(&t.gen)?, parse_scalar(&t.coeff).map_err(|e| bad(e.to_string()))?)))
                    .collect::<Result<_, E510Error>>()?,
            })
        })
        .collect()
}

pub fn render_combination(c: &Combination) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (g, x)) in c.iter().enumerate() {
        let neg = x < &Scalar::zero();
        let mag = if neg { -x.clone() } else { x.clone() };
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != Scalar::from_integer(1.into()) {
            s.push_str(&crate::exactalg::scalar::display_scalar(&mag));
            s.push(' ');
        }
        s.push_str(&g.name());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;
    use GeneratorId::*;

    fn lookup(t: &[StructureEntry], l: GeneratorId, r: GeneratorId) -> Combination {
        t.iter().find(|e| e.left == l && e.right == r).unwrap().result.clone()
    }

    #[test]
    fn sample_entries() {
        let t = structure_table(&E510::standard()).unwrap();
        assert_eq!(lookup(&t, E0, DMinus(1)), vec![(F3, int(-2))]);
        assert_eq!(lookup(&t, E0Minus, DPlus(1)), vec![(F2, int(1))]);
        assert_eq!(lookup(&t, DPlus(1), DMinus(2)), vec![(DHat(3), int(-1))]);
    }

    #[test]
    fn json_round_trip() {
        let t = structure_table(&E510::standard()).unwrap();
        let j = table_to_json(&t);
        assert_eq!(table_from_json(&j).unwrap(), t);
    }

    #[test]
    fn express_rejects_outside_span() {
        let e = Element510::field_term(int(1), &[0, 0], 1);
        assert!(matches!(express(&e), Err(E510Error::NotInSpan(_))));
    }
}

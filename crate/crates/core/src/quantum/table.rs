//! Structure constants of the small quantum ring and the product they define.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element::QuantumElement;
use super::engine::{exact_engine, to_natural};
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::partitions::{dual, StrictPartition};
use crate::scalar::Scalar;

pub const TABLE_SCHEMA: &str = "ogq-table/1";

/// One nonzero coefficient: `τ_λ ∗ τ_μ ∋ c q^d τ_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
    pub nu: StrictPartition,
    pub d: u32,
    pub c: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    n: u32,
    max_d: Option<u32>,
    entries: Vec<TableEntry>,
    rows: HashMap<(StrictPartition, StrictPartition), Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    lambda: StrictPartition,
    mu: StrictPartition,
    nu: StrictPartition,
    d: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    schema: String,
    n: u32,
    entries: Vec<EntryDoc>,
}

impl StructureTable {
    /// All nonzero `⟨τ_λ, τ_μ, τ_{dual(ν)}⟩_{0,d}`, optionally capped at `d ≤ max_d`.
    pub fn build(n: u32, max_d: Option<u32>) -> Result<Self> {
        let engine = exact_engine(n)?;
        let m = engine.m();
        let basis = engine.basis();
        let duals: Vec<usize> = basis
            .iter()
            .map(|nu| engine.position(&dual(nu, m).expect("basis element")))
            .collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
            .collect();
        let found: Vec<Vec<TableEntry>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (lam, mu) = (&basis[i], &basis[j]);
                let top = (lam.weight() + mu.weight()) as i64;
                let targets: Vec<(usize, u32)> = (0..basis.len())
                    .filter_map(|k| {
                        let w = top - basis[k].weight() as i64;
                        let d = w / (2 * m as i64);
                        (w >= 0
                            && w % (2 * m as i64) == 0
                            && max_d.is_none_or(|cap| d <= cap as i64))
                        .then_some((k, d as u32))
                    })
                    .collect();
                if targets.is_empty() {
                    return Ok(Vec::new());
                }
                let partial: Vec<CycloNum> = engine
                    .points()
                    .iter()
                    .map(|p| p.s_rho_inv.times(&p.ptilde[i]).times(&p.ptilde[j]))
                    .collect();
                let mut row = Vec::new();
                for (k, d) in targets {
                    let mut sum = CycloNum::zero(4 * m);
                    for (p, w) in engine.points().iter().zip(&partial) {
                        sum = &sum + &w.times(&p.ptilde[duals[k]]);
                    }
                    let sum = sum.scale(&BigRational::from_integer(
                        BigUint::from(4u32).pow(d).into(),
                    ));
                    let c = to_natural(&sum, &|| {
                        format!("structure constant ({lam:?}, {mu:?}, {:?}, {d})", basis[k])
                    })?;
                    if c != BigUint::default() {
                        row.push(TableEntry {
                            lambda: lam.clone(),
                            mu: mu.clone(),
                            nu: basis[k].clone(),
                            d,
                            c,
                        });
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let mut entries = Vec::new();
        for e in found.into_iter().flatten() {
            if e.lambda != e.mu {
                entries.push(TableEntry {
                    lambda: e.mu.clone(),
                    mu: e.lambda.clone(),
                    ..e.clone()
                });
            }
            entries.push(e);
        }
        Ok(Self::from_entries(n, max_d, entries))
    }

    fn from_entries(n: u32, max_d: Option<u32>, mut entries: Vec<TableEntry>) -> Self {
        entries.sort_by(|a, b| (&a.lambda, &a.mu, &a.nu, a.d).cmp(&(&b.lambda, &b.mu, &b.nu, b.d)));
        let mut rows: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            rows.entry((e.lambda.clone(), e.mu.clone()))
                .or_default()
                .push(i);
        }
        StructureTable {
            n,
            max_d,
            entries,
            rows,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_d(&self) -> Option<u32> {
        self.max_d
    }

    /// Sorted by `(λ, μ, ν, d)`.
    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// `τ_λ ∗ τ_μ` as read off the table.
    pub fn product(&self, lambda: &StrictPartition, mu: &StrictPartition) -> QuantumElement {
        let mut out = QuantumElement::zero();
        for &i in self
            .rows
            .get(&(lambda.clone(), mu.clone()))
            .into_iter()
            .flatten()
        {
            let e = &self.entries[i];
            out.add_term(
                e.nu.clone(),
                e.d,
                BigRational::from_integer(e.c.clone().into()),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            schema: TABLE_SCHEMA.to_string(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    lambda: e.lambda.clone(),
                    mu: e.mu.clone(),
                    nu: e.nu.clone(),
                    d: e.d,
                    c: e.c.to_string(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }

    /// Reads a document written by [`to_json`](Self::to_json). A different
    /// schema tag is a parse error rather than a best-effort read.
    pub fn from_json(text: &str, max_d: Option<u32>) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != TABLE_SCHEMA {
            return Err(Error::Parse(format!(
                "unsupported table schema {:?}",
                doc.schema
            )));
        }
        let entries = doc
            .entries
            .into_iter()
            .map(|e| {
                let c =
                    e.c.parse::<BigUint>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {:?}", e.c)))?;
                Ok(TableEntry {
                    lambda: e.lambda,
                    mu: e.mu,
                    nu: e.nu,
                    d: e.d,
                    c,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_entries(doc.n, max_d, entries))
    }
}

/// The complete table for `n`, built once and shared.
pub fn structure_table(n: u32) -> Result<Arc<StructureTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<StructureTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let built = Arc::new(StructureTable::build(n, None)?);
    Ok(cache.lock().unwrap().entry(n).or_insert(built).clone())
}

/// Bilinear extension of the basis product.
pub fn quantum_product(n: u32, a: &QuantumElement, b: &QuantumElement) -> Result<QuantumElement> {
    let table = structure_table(n)?;
    for (nu, _, _) in a.terms().chain(b.terms()) {
        nu.check(n - 1)?;
    }
    let mut out = QuantumElement::zero();
    for (lam, da, ca) in a.terms() {
        for (mu, db, cb) in b.terms() {
            out = out.add(&table.product(lam, mu).shift(da + db).scale(&(ca * cb)));
        }
    }
    Ok(out)
}

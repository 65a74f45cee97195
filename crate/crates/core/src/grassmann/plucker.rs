use serde_json::{Map, Value};

use super::EchelonMatrix;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::qcombin::{GrassmannParams, IndexTuple};

/// Plücker coordinates `(p_a)`, one per `a` in `I(l, m)`, lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerVector {
    ell: usize,
    m: usize,
    coords: Vec<Elem>,
}

impl PluckerVector {
    pub fn new(ell: usize, m: usize, coords: Vec<Elem>) -> Result<Self> {
        if coords.len() != crate::qcombin::binomial(m, ell) {
            return Err(Error::usage("coordinate count must be C(m, l)"));
        }
        Ok(PluckerVector { ell, m, coords })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn get(&self, alpha: &IndexTuple) -> Elem {
        self.coords[alpha.lex_rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Scaled so the first nonzero coordinate is 1.
    pub fn normalized(&self, field: &Field) -> PluckerVector {
        let Some(lead) = self.coords.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let inv = field.inv(*lead).expect("lead is nonzero");
        PluckerVector {
            ell: self.ell,
            m: self.m,
            coords: self.coords.iter().map(|&c| field.mul(c, inv)).collect(),
        }
    }

    /// JSON object `{"1,2": "1", ..}` in lexicographic key order.
    pub fn to_json(&self, field: &Field) -> Value {
        let tuples = crate::qcombin::enumerate_index_tuples(self.ell, self.m).expect("valid shape");
        let map: Map<String, Value> = tuples
            .iter()
            .zip(&self.coords)
            .map(|(a, &c)| (a.to_string(), Value::String(field.format(c))))
            .collect();
        Value::Object(map)
    }
}

/// Precomputed column sets for evaluating all `l x l` minors.
#[derive(Clone, Debug)]
pub struct PluckerEmbedding {
    field: Field,
    ell: usize,
    m: usize,
    tuples: Vec<IndexTuple>,
}

impl PluckerEmbedding {
    pub fn new(params: &GrassmannParams) -> Self {
        PluckerEmbedding {
            field: params.field.clone(),
            ell: params.ell,
            m: params.m,
            tuples: params.index_tuples(),
        }
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    pub fn embed(&self, mtx: &EchelonMatrix) -> PluckerVector {
        self.coords_of_rows(&mtx.rows())
    }

    /// Minors of an arbitrary `l x m` matrix, not necessarily in echelon form.
    pub fn coords_of_rows(&self, rows: &[Vec<Elem>]) -> PluckerVector {
        assert_eq!(rows.len(), self.ell);
        let coords = if self.field.order() == 2 {
            let masks: Vec<u64> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, x)| acc | ((x.index() as u64) << j))
                })
                .collect();
            self.tuples
                .iter()
                .map(|a| {
                    let mut sub: Vec<u64> = masks
                        .iter()
                        .map(|&row| {
                            a.entries()
                                .iter()
                                .enumerate()
                                .fold(0u64, |acc, (k, &c)| acc | (((row >> (c - 1)) & 1) << k))
                        })
                        .collect();
                    if linalg::det_gf2(&mut sub) {
                        Elem::ONE
                    } else {
                        Elem::ZERO
                    }
                })
                .collect()
        } else {
            self.tuples
                .iter()
                .map(|a| {
                    let sub: Vec<Vec<Elem>> = rows
                        .iter()
                        .map(|r| a.entries().iter().map(|&c| r[c - 1]).collect())
                        .collect();
                    linalg::det(&self.field, &sub)
                })
                .collect()
        };
        PluckerVector { ell: self.ell, m: self.m, coords }
    }
}

/// Plücker coordinates of one point.
pub fn plucker(params: &GrassmannParams, mtx: &EchelonMatrix) -> PluckerVector {
    PluckerEmbedding::new(params).embed(mtx)
}

//! Grassmann codes `C(l, m)` and Schubert codes `C_a(l, m)` as projective
//! systems: the generator columns are the normalized Plücker vectors of the
//! enumerated points, and the codeword of a functional `F` has weight
//! `n - |Π ∩ points|`.

mod engine;
mod verify;

pub use engine::{
    class_count, class_representative, class_weights, weight_distribution, Kernel, SweepOptions,
    WeightDistribution, DEFAULT_BUDGET,
};
pub use verify::*;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::DualFunctional;
use crate::gf::{Elem, Field};
use crate::grassmann::{EchelonMatrix, Grassmannian, PluckerEmbedding, DEFAULT_MAX_POINTS};
use crate::linalg;
use crate::qcombin::{GrassmannParams, IndexTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    Grassmann,
    /// The Schubert code of `Ω_a`, coordinates restricted to `∇(a)`.
    Schubert(IndexTuple),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: GrassmannParams,
    pub family: CodeFamily,
}

impl CodeSpec {
    pub fn grassmann(params: &GrassmannParams) -> Result<Self> {
        if params.ell == 0 {
            return Err(Error::usage("need l >= 1"));
        }
        Ok(CodeSpec {
            params: params.clone(),
            family: CodeFamily::Grassmann,
        })
    }

    pub fn schubert(params: &GrassmannParams, alpha: &IndexTuple) -> Result<Self> {
        if alpha.ell() != params.ell || alpha.m() != params.m {
            return Err(Error::usage(format!("{alpha} is not in I({}, {})", params.ell, params.m)));
        }
        let mut spec = CodeSpec::grassmann(params)?;
        spec.family = CodeFamily::Schubert(alpha.clone());
        Ok(spec)
    }

    pub fn alpha(&self) -> Option<&IndexTuple> {
        match &self.family {
            CodeFamily::Grassmann => None,
            CodeFamily::Schubert(a) => Some(a),
        }
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn q(&self) -> u64 {
        self.params.q()
    }

    /// Coordinate positions kept by the code, lex order.
    pub fn coordinates(&self) -> Vec<IndexTuple> {
        match &self.family {
            CodeFamily::Grassmann => self.params.index_tuples(),
            CodeFamily::Schubert(a) => a.nabla_set(),
        }
    }

    pub fn k(&self) -> usize {
        self.coordinates().len()
    }

    /// `[m, l]_q`, or `n_a = Σ_{b ∈ ∇(a)} q^{δ(b)}`.
    pub fn n(&self) -> BigUint {
        match &self.family {
            CodeFamily::Grassmann => self.params.num_points(),
            CodeFamily::Schubert(a) => a
                .nabla_set()
                .iter()
                .map(|b| num_traits::pow(BigUint::from(self.q()), b.delta()))
                .sum(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": match self.family { CodeFamily::Grassmann => "grassmann", CodeFamily::Schubert(_) => "schubert" },
            "q": self.params.field.spec().to_string(),
            "ell": self.params.ell.to_string(),
            "m": self.params.m.to_string(),
            "n": self.n().to_string(),
            "k": self.k().to_string(),
        });
        if let Some(a) = self.alpha() {
            v["alpha"] = Value::String(a.to_string());
        }
        v
    }
}

impl std::fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = &self.params;
        match &self.family {
            CodeFamily::Grassmann => write!(f, "C({}, {}) over F_{}", p.ell, p.m, p.q()),
            CodeFamily::Schubert(a) => write!(f, "C_({a})({}, {}) over F_{}", p.ell, p.m, p.q()),
        }
    }
}

/// The `k x n` generator matrix, stored column by column.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    spec: CodeSpec,
    points: Vec<EchelonMatrix>,
    columns: Vec<Vec<Elem>>,
}

/// Builds the generator with the default size limit on the point set.
pub fn build_generator(spec: &CodeSpec) -> Result<GeneratorMatrix> {
    GeneratorMatrix::with_limit(spec, DEFAULT_MAX_POINTS)
}

impl GeneratorMatrix {
    pub fn with_limit(spec: &CodeSpec, max_points: u64) -> Result<Self> {
        let g = Grassmannian::with_limit(spec.params.clone(), max_points)?;
        let emb = PluckerEmbedding::new(&spec.params);
        let keep: Vec<usize> = spec.coordinates().iter().map(|a| a.lex_rank()).collect();
        let field = spec.field();
        let points: Vec<EchelonMatrix> = match spec.alpha() {
            None => g.iter().collect(),
            Some(a) => g.schubert_variety(a)?.collect(),
        };
        let columns = points
            .iter()
            .map(|p| {
                let full = emb.embed(p);
                let col: Vec<Elem> = keep.iter().map(|&r| full.coords()[r]).collect();
                normalize(field, col)
            })
            .collect();
        Ok(GeneratorMatrix {
            spec: spec.clone(),
            points,
            columns,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        self.spec.field()
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn k(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn points(&self) -> &[EchelonMatrix] {
        &self.points
    }

    pub fn columns(&self) -> &[Vec<Elem>] {
        &self.columns
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.k())
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field(), &self.rows())
    }

    pub fn has_zero_column(&self) -> bool {
        self.columns.iter().any(|c| c.iter().all(|x| x.is_zero()))
    }

    /// Coefficients of `F` on the code's coordinates. In the Schubert case
    /// `F` must vanish off `∇(a)`.
    pub fn message(&self, functional: &DualFunctional) -> Result<Vec<Elem>> {
        if functional.params() != &self.spec.params {
            return Err(Error::usage("functional and code have different parameters"));
        }
        let coords = self.spec.coordinates();
        if let Some(a) = self.spec.alpha() {
            if let Some(b) = functional.support().iter().find(|b| !b.leq_unchecked(a)) {
                return Err(Error::domain(format!("X:{b} is not a coordinate of the Schubert code at {a}")));
            }
        }
        Ok(coords.iter().map(|a| functional.coeff(a)).collect())
    }

    /// Number of columns where `Σ c_i col_i != 0`.
    pub fn weight_of_message(&self, c: &[Elem]) -> usize {
        let f = self.field();
        self.columns
            .iter()
            .filter(|col| {
                !col.iter()
                    .zip(c)
                    .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
                    .is_zero()
            })
            .count()
    }
}

fn normalize(field: &Field, mut col: Vec<Elem>) -> Vec<Elem> {
    if let Some(&lead) = col.iter().find(|x| !x.is_zero()) {
        let inv = field.inv(lead).expect("nonzero");
        for x in col.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
    col
}

/// Weight of the codeword attached to `F`.
pub fn codeword_weight(functional: &DualFunctional, generator: &GeneratorMatrix) -> Result<usize> {
    let c = generator.message(functional)?;
    Ok(generator.weight_of_message(&c))
}

fn pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

/// `q^{l(m-l)}` for the Grassmann code, `q^{δ(a)}` for a Schubert code.
pub fn min_distance(spec: &CodeSpec) -> BigUint {
    match spec.alpha() {
        None => pow(spec.q(), spec.params.ell * (spec.params.m - spec.params.ell)),
        Some(a) => schubert_min_distance(a, &spec.params),
    }
}

pub fn schubert_min_distance(alpha: &IndexTuple, params: &GrassmannParams) -> BigUint {
    pow(params.q(), alpha.delta())
}

/// `q^{l(m-l)} + q^{l(m-l)-2}`, defined for `2 <= l <= m-2`.
pub fn second_min_weight(spec: &CodeSpec) -> Result<BigUint> {
    let (ell, m) = (spec.params.ell, spec.params.m);
    if spec.alpha().is_some() {
        return Err(Error::domain("the second weight formula is for Grassmann codes"));
    }
    if ell < 2 || ell + 2 > m {
        return Err(Error::domain(format!(
            "C({ell}, {m}) has a single nonzero weight; need 2 <= l <= m-2"
        )));
    }
    let e = ell * (m - ell);
    Ok(pow(spec.q(), e) + pow(spec.q(), e - 2))
}

/// A closed-form parameter, flagged once a sweep has confirmed it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosedForm {
    pub name: &'static str,
    #[serde(serialize_with = "crate::report::as_string")]
    pub value: BigUint,
    pub verified: bool,
}

/// `d`, and `d_2` when defined, checked against `dist` if given.
pub fn closed_forms(spec: &CodeSpec, dist: Option<&WeightDistribution>) -> Vec<ClosedForm> {
    let d = min_distance(spec);
    let mut out = vec![ClosedForm {
        name: "min_distance",
        verified: dist.is_some_and(|w| w.complete && w.min_weight().map(BigUint::from) == Some(d.clone())),
        value: d,
    }];
    if let Ok(d2) = second_min_weight(spec) {
        out.push(ClosedForm {
            name: "second_min_weight",
            verified: dist.is_some_and(|w| w.complete && w.second_weight().map(BigUint::from) == Some(d2.clone())),
            value: d2,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ell: usize, m: usize, q: u32) -> GrassmannParams {
        GrassmannParams::new(ell, m, Field::of_order(q).unwrap()).unwrap()
    }

    #[test]
    fn simplex_code() {
        let p = params(1, 3, 2);
        let g = build_generator(&CodeSpec::grassmann(&p).unwrap()).unwrap();
        assert_eq!((g.k(), g.n()), (3, 7));
        assert_eq!(g.rank(), 3);
        for f in [
            "X:1",
            "X:2 + X:3",
            "X:1 + X:2 + X:3",
        ] {
            let f = DualFunctional::parse(&p, f).unwrap();
            assert_eq!(codeword_weight(&f, &g).unwrap(), 4);
        }
    }

    #[test]
    fn grassmann_generator() {
        let p = params(2, 4, 2);
        let spec = CodeSpec::grassmann(&p).unwrap();
        let g = build_generator(&spec).unwrap();
        assert_eq!((g.k(), g.n(), g.rank()), (6, 35, 6));
        assert!(!g.has_zero_column());
        let w = |s: &str| codeword_weight(&DualFunctional::parse(&p, s).unwrap(), &g).unwrap();
        assert_eq!(w("X:3,4"), 16);
        assert_eq!(w("X:1,2 + X:3,4"), 20);
        assert_eq!(min_distance(&spec), BigUint::from(16u32));
        assert_eq!(second_min_weight(&spec).unwrap(), BigUint::from(20u32));
        let s = CodeSpec::grassmann(&params(1, 4, 2)).unwrap();
        assert!(matches!(second_min_weight(&s), Err(Error::Domain(_))));
        let s = CodeSpec::grassmann(&params(3, 6, 2)).unwrap();
        assert_eq!(min_distance(&s), BigUint::from(512u32));
        assert_eq!(second_min_weight(&s).unwrap(), BigUint::from(640u32));
        let s = CodeSpec::grassmann(&params(2, 5, 2)).unwrap();
        assert_eq!(second_min_weight(&s).unwrap(), BigUint::from(80u32));
    }

    #[test]
    fn schubert_generator() {
        let p = params(2, 4, 2);
        let theta = IndexTuple::theta(2, 4).unwrap();
        let spec = CodeSpec::schubert(&p, &theta).unwrap();
        assert_eq!((spec.k(), spec.n()), (3, BigUint::from(7u32)));
        let g = build_generator(&spec).unwrap();
        assert_eq!((g.k(), g.n(), g.rank()), (3, 7, 3));
        assert_eq!(min_distance(&spec), BigUint::from(4u32));
        let off = DualFunctional::parse(&p, "X:3,4").unwrap();
        assert!(matches!(codeword_weight(&off, &g), Err(Error::Domain(_))));
        let top = IndexTuple::maximal(2, 4).unwrap();
        let s = CodeSpec::schubert(&p, &top).unwrap();
        assert_eq!(min_distance(&s), BigUint::from(16u32));
        let gamma = IndexTuple::sub_grassmannian(2, 5).unwrap();
        let s = CodeSpec::schubert(&params(2, 5, 3), &gamma).unwrap();
        assert_eq!(min_distance(&s), BigUint::from(3u32.pow(4)));
    }
}

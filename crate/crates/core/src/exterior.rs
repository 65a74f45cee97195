//! Linear functionals on `Λ^l V_m`, their wedge duals in `Λ^{m-l} V_m`, and
//! the decomposability test `dim {x : z ∧ x = 0} = deg z`.
//!
//! A functional `F = Σ c_a X_a` corresponds to `z = Σ c_a ε(a) v_{a^C}`,
//! where `ε(a)` is the sign of the permutation `(a^C, a)`. With that sign,
//! `z ∧ w = F(w) · v_1 ∧ .. ∧ v_m` for every `w` in `Λ^l V_m`.

use std::fmt;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::grassmann::{EchelonMatrix, PluckerVector};
use crate::linalg;
use crate::qcombin::{binomial, enumerate_index_tuples, GrassmannParams, IndexTuple};

/// `F = Σ c_a X_a` over `a` in `I(l, m)`, coefficients stored in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    params: GrassmannParams,
    coeffs: Vec<Elem>,
}

/// Result of restricting a functional to a Schubert variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// Every coefficient on `∇(a)` is zero, so the hyperplane contains `Ω_a`.
    Vanishes,
    Functional(DualFunctional),
}

impl DualFunctional {
    pub fn new(params: &GrassmannParams, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() != params.num_coordinates() {
            return Err(Error::usage(format!(
                "expected {} coefficients, got {}",
                params.num_coordinates(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.index() >= params.field.order()) {
            return Err(Error::usage("coefficient outside the field"));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("the zero functional defines no hyperplane"));
        }
        Ok(DualFunctional {
            params: params.clone(),
            coeffs,
        })
    }

    /// Sums the given terms; repeated tuples accumulate.
    pub fn from_terms(params: &GrassmannParams, terms: &[(IndexTuple, Elem)]) -> Result<Self> {
        let mut coeffs = vec![Elem::ZERO; params.num_coordinates()];
        for (a, c) in terms {
            if a.ell() != params.ell || a.m() != params.m {
                return Err(Error::usage(format!(
                    "X:{a} is not a coordinate of G({}, {})",
                    params.ell, params.m
                )));
            }
            let r = a.lex_rank();
            coeffs[r] = params.field.add(coeffs[r], *c);
        }
        DualFunctional::new(params, coeffs)
    }

    /// The single coordinate `X_a`.
    pub fn coordinate(params: &GrassmannParams, a: &IndexTuple) -> Result<Self> {
        DualFunctional::from_terms(params, &[(a.clone(), Elem::ONE)])
    }

    /// Accepts `"X:1,4 + 2*X:2,3"` (a leading `-` negates a term) or a JSON
    /// object `{"1,4": "1", "2,3": "2"}`.
    pub fn parse(params: &GrassmannParams, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let v: Value =
                serde_json::from_str(s).map_err(|e| Error::usage(format!("bad functional JSON: {e}")))?;
            return DualFunctional::from_json(params, &v);
        }
        let field = &params.field;
        let mut terms = Vec::new();
        for (negate, raw) in split_terms(s)? {
            let (coef, var) = match raw.split_once('*') {
                Some((c, v)) => (field.parse_elem(c)?, v.trim()),
                None => (Elem::ONE, raw),
            };
            let Some(tuple) = var.strip_prefix("X:") else {
                return Err(Error::usage(format!("term '{raw}' is not of the form c*X:i,j,..")));
            };
            let a = IndexTuple::parse(tuple, params.m)?;
            let coef = if negate { field.neg(coef) } else { coef };
            terms.push((a, coef));
        }
        DualFunctional::from_terms(params, &terms)
    }

    pub fn from_json(params: &GrassmannParams, v: &Value) -> Result<Self> {
        let Value::Object(map) = v else {
            return Err(Error::usage("functional JSON must be an object"));
        };
        let mut terms = Vec::new();
        for (k, c) in map {
            let a = IndexTuple::parse(k, params.m)?;
            let c = match c {
                Value::String(s) => params.field.parse_elem(s)?,
                Value::Number(n) => params.field.parse_elem(&n.to_string())?,
                _ => return Err(Error::usage(format!("bad coefficient for {k}"))),
            };
            terms.push((a, c));
        }
        DualFunctional::from_terms(params, &terms)
    }

    pub fn params(&self) -> &GrassmannParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, a: &IndexTuple) -> Elem {
        self.coeffs[a.lex_rank()]
    }

    /// Tuples with nonzero coefficient, lex order.
    pub fn support(&self) -> Vec<IndexTuple> {
        self.params
            .index_tuples()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, _)| a)
            .collect()
    }

    pub fn evaluate(&self, p: &PluckerVector) -> Elem {
        let f = self.field();
        self.coeffs
            .iter()
            .zip(p.coords())
            .fold(Elem::ZERO, |acc, (&c, &x)| f.add(acc, f.mul(c, x)))
    }

    pub fn scaled(&self, c: Elem) -> Result<Self> {
        let f = self.field();
        DualFunctional::new(&self.params, self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    /// The scalar multiple whose first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        let f = self.field();
        let lead = *self.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero functional");
        let inv = f.inv(lead).expect("lead is nonzero");
        self.scaled(inv).expect("scaling by a unit keeps it nonzero")
    }

    /// Same hyperplane, i.e. equal up to a nonzero scalar.
    pub fn projectively_eq(&self, other: &DualFunctional) -> bool {
        self.params == other.params && self.normalized() == other.normalized()
    }

    /// `F_a = Σ_{b ∈ ∇(a)} c_b X_b`.
    pub fn restrict(&self, alpha: &IndexTuple) -> Result<Restriction> {
        if alpha.ell() != self.params.ell || alpha.m() != self.params.m {
            return Err(Error::usage(format!("{alpha} is not in I({}, {})", self.params.ell, self.params.m)));
        }
        let coeffs: Vec<Elem> = self
            .params
            .index_tuples()
            .iter()
            .zip(&self.coeffs)
            .map(|(b, &c)| if b.leq_unchecked(alpha) { c } else { Elem::ZERO })
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            return Ok(Restriction::Vanishes);
        }
        Ok(Restriction::Functional(DualFunctional {
            params: self.params.clone(),
            coeffs,
        }))
    }

    /// Nonzero coefficients as `{"1,4": "1", ..}` in lex key order.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .support()
            .into_iter()
            .map(|a| {
                let c = self.coeff(&a);
                (a.to_string(), Value::String(self.field().format(c)))
            })
            .collect();
        Value::Object(map)
    }
}

impl fmt::Display for DualFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|a| {
                let c = self.coeff(&a);
                if c == Elem::ONE {
                    format!("X:{a}")
                } else {
                    format!("{}*X:{a}", field.format(c))
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Splits `"a + b - c"` into signed terms.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negate = false;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == '+' || ch == '-' {
            let term = s[start..i].trim();
            if term.is_empty() {
                if ch == '+' {
                    return Err(Error::usage(format!("empty term in '{s}'")));
                }
                negate = !negate;
            } else {
                out.push((negate, term));
                negate = ch == '-';
            }
            start = i + 1;
        }
    }
    let term = s[start..].trim();
    if term.is_empty() {
        return Err(Error::usage(format!("empty term in '{s}'")));
    }
    out.push((negate, term));
    Ok(out)
}

/// Whether the permutation listing `a` then `b` is odd; `a`, `b` disjoint.
fn concat_sign_negative(a: &[usize], b: &[usize]) -> bool {
    let inversions: usize = a.iter().map(|&x| b.iter().filter(|&&y| y < x).count()).sum();
    inversions % 2 == 1
}

/// An element of `Λ^d V_m`, coefficients on `v_S` for `S` in `I(d, m)` in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    field: Field,
    m: usize,
    degree: usize,
    coeffs: Vec<Elem>,
}

impl WedgeElement {
    pub fn zero(field: &Field, degree: usize, m: usize) -> Result<Self> {
        if degree > m {
            return Err(Error::domain(format!("Λ^{degree} V_{m} is zero")));
        }
        Ok(WedgeElement {
            field: field.clone(),
            m,
            degree,
            coeffs: vec![Elem::ZERO; binomial(m, degree)],
        })
    }

    pub fn from_terms(field: &Field, degree: usize, m: usize, terms: &[(IndexTuple, Elem)]) -> Result<Self> {
        let mut z = WedgeElement::zero(field, degree, m)?;
        for (s, c) in terms {
            if s.ell() != degree || s.m() != m {
                return Err(Error::usage(format!("v_{s} does not have degree {degree} in V_{m}")));
            }
            let r = s.lex_rank();
            z.coeffs[r] = field.add(z.coeffs[r], *c);
        }
        Ok(z)
    }

    pub fn basis(field: &Field, s: &IndexTuple) -> Self {
        WedgeElement::from_terms(field, s.ell(), s.m(), &[(s.clone(), Elem::ONE)]).expect("valid shape")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, s: &IndexTuple) -> Elem {
        self.coeffs[s.lex_rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn tuples(&self) -> Vec<IndexTuple> {
        enumerate_index_tuples(self.degree, self.m).expect("valid shape")
    }

    /// `z ∧ x` in `Λ^{d+1} V_m`, with `v_S ∧ v_j = ± v_{S ∪ j}`.
    pub fn wedge_with_vector(&self, x: &[Elem]) -> Result<WedgeElement> {
        if x.len() != self.m {
            return Err(Error::usage(format!("vector must have {} entries", self.m)));
        }
        let f = &self.field;
        let mut out = WedgeElement::zero(f, self.degree + 1, self.m)?;
        for (s, &c) in self.tuples().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (j, &xj) in (1..=self.m).zip(x) {
                if xj.is_zero() || s.contains(j) {
                    continue;
                }
                let after = s.entries().iter().filter(|&&a| a > j).count();
                let mut e = s.entries().to_vec();
                e.insert(s.ell() - after, j);
                let r = IndexTuple::new(e, self.m).expect("sorted insert").lex_rank();
                let term = f.mul(f.sign(after % 2 == 1), f.mul(c, xj));
                out.coeffs[r] = f.add(out.coeffs[r], term);
            }
        }
        Ok(out)
    }

    /// `x_1 ∧ .. ∧ x_d`, built one factor at a time.
    pub fn wedge_of_vectors(field: &Field, m: usize, vectors: &[Vec<Elem>]) -> Result<WedgeElement> {
        let mut z = WedgeElement::zero(field, 0, m)?;
        z.coeffs[0] = Elem::ONE;
        for x in vectors {
            z = z.wedge_with_vector(x)?;
        }
        Ok(z)
    }

    /// The coefficient of `v_1 ∧ .. ∧ v_m` in `self ∧ other`.
    pub fn pairing(&self, other: &WedgeElement) -> Result<Elem> {
        if self.m != other.m || self.degree + other.degree != self.m {
            return Err(Error::usage("pairing needs complementary degrees in the same V_m"));
        }
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (s, &c) in self.tuples().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let t = s.complement();
            let d = other.coeff(&t);
            if d.is_zero() {
                continue;
            }
            let sign = f.sign(concat_sign_negative(s.entries(), t.entries()));
            acc = f.add(acc, f.mul(sign, f.mul(c, d)));
        }
        Ok(acc)
    }

    /// Rows of the map `x ↦ z ∧ x`: row `j` is `z ∧ v_j`.
    fn wedge_map(&self) -> Result<Vec<Vec<Elem>>> {
        if self.degree >= self.m {
            return Err(Error::domain(format!(
                "z ∧ x has degree {} > m = {}",
                self.degree + 1,
                self.m
            )));
        }
        (0..self.m)
            .map(|j| {
                let mut e = vec![Elem::ZERO; self.m];
                e[j] = Elem::ONE;
                Ok(self.wedge_with_vector(&e)?.coeffs)
            })
            .collect()
    }

    /// A basis of `V_m(z) = {x : z ∧ x = 0}`.
    pub fn annihilator(&self) -> Result<Vec<Vec<Elem>>> {
        if self.is_zero() {
            return Err(Error::domain("z = 0 has no meaningful annihilator"));
        }
        if self.degree == self.m {
            // top degree: every x kills z
            return Ok((0..self.m)
                .map(|j| {
                    let mut e = vec![Elem::ZERO; self.m];
                    e[j] = Elem::ONE;
                    e
                })
                .collect());
        }
        Ok(linalg::left_kernel(&self.field, &self.wedge_map()?))
    }

    pub fn annihilator_dimension(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::domain("z = 0 has no meaningful annihilator"));
        }
        if self.degree == self.m {
            return Ok(self.m);
        }
        Ok(self.m - linalg::rank(&self.field, &self.wedge_map()?))
    }

    /// `z` is a product of `deg z` vectors iff `dim V_m(z) = deg z`.
    pub fn is_decomposable(&self) -> Result<bool> {
        Ok(self.annihilator_dimension()? == self.degree)
    }

    /// The image under the linear map sending `v_j` to `images[j-1]`.
    pub fn transform(&self, images: &[Vec<Elem>]) -> Result<WedgeElement> {
        if images.len() != self.m {
            return Err(Error::usage(format!("need {} image vectors", self.m)));
        }
        let f = &self.field;
        let mut out = WedgeElement::zero(f, self.degree, self.m)?;
        for (s, &c) in self.tuples().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let factors: Vec<Vec<Elem>> = s.entries().iter().map(|&j| images[j - 1].clone()).collect();
            let w = WedgeElement::wedge_of_vectors(f, self.m, &factors)?;
            for (o, &x) in out.coeffs.iter_mut().zip(&w.coeffs) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .tuples()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, &c)| {
                let v: Vec<String> = s.entries().iter().map(|j| format!("v{j}")).collect();
                let v = if v.is_empty() { "1".to_string() } else { v.join("^") };
                if c == Elem::ONE {
                    v
                } else {
                    format!("{}*{v}", self.field.format(c))
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `z = Σ c_a ε(a) v_{a^C}` in `Λ^{m-l} V_m`.
pub fn functional_to_wedge(functional: &DualFunctional) -> WedgeElement {
    to_wedge(functional, true)
}

/// The sign-free variant `Σ c_a v_{a^C}`, kept for comparison.
pub fn functional_to_wedge_unsigned(functional: &DualFunctional) -> WedgeElement {
    to_wedge(functional, false)
}

fn to_wedge(functional: &DualFunctional, signed: bool) -> WedgeElement {
    let p = functional.params();
    let f = &p.field;
    let terms: Vec<(IndexTuple, Elem)> = p
        .index_tuples()
        .into_iter()
        .zip(functional.coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, &c)| {
            let c = if signed { f.mul(f.sign(a.shuffle_sign_negative()), c) } else { c };
            (a.complement(), c)
        })
        .collect();
    WedgeElement::from_terms(f, p.m - p.ell, p.m, &terms).expect("complements have degree m - l")
}

/// `w = r_1 ∧ .. ∧ r_l` for the rows of an echelon matrix.
pub fn point_wedge(field: &Field, mtx: &EchelonMatrix) -> WedgeElement {
    WedgeElement::wedge_of_vectors(field, mtx.m(), &mtx.rows()).expect("l <= m")
}

/// Whether the hyperplane `F = 0` is decomposable.
pub fn check_functional(functional: &DualFunctional) -> Result<bool> {
    functional_to_wedge(functional).is_decomposable()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{enumerate_grassmannian, PluckerEmbedding};

    fn params(ell: usize, m: usize, q: u32) -> GrassmannParams {
        GrassmannParams::new(ell, m, Field::of_order(q).unwrap()).unwrap()
    }

    fn t(e: &[usize], m: usize) -> IndexTuple {
        IndexTuple::new(e.to_vec(), m).unwrap()
    }

    fn wedge(f: &Field, degree: usize, m: usize, terms: &[(&[usize], i64)]) -> WedgeElement {
        let terms: Vec<_> = terms.iter().map(|(s, c)| (t(s, m), f.from_int(*c))).collect();
        WedgeElement::from_terms(f, degree, m, &terms).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = params(2, 4, 3);
        let f = DualFunctional::parse(&p, "X:1,4 + 2*X:2,3").unwrap();
        assert_eq!(f.to_string(), "X:1,4 + 2*X:2,3");
        assert_eq!(f.to_json().to_string(), r#"{"1,4":"1","2,3":"2"}"#);
        let g = DualFunctional::parse(&p, r#"{"2,3": "2", "1,4": 1}"#).unwrap();
        assert_eq!(f, g);
        let h = DualFunctional::parse(&p, "X:1,4 - X:2,3").unwrap();
        assert_eq!(h, f);
        assert!(matches!(DualFunctional::parse(&p, "X:1,4 + 2*X:1,4"), Err(Error::Domain(_))));
        assert!(matches!(DualFunctional::parse(&p, "Y:1,4"), Err(Error::Usage(_))));
        assert!(matches!(DualFunctional::parse(&p, "X:1,2,3"), Err(Error::Usage(_))));
        assert!(f.projectively_eq(&f.scaled(p.field.from_int(2)).unwrap()));
        let p4 = params(2, 4, 4);
        let e = DualFunctional::parse(&p4, "(0,1)*X:1,2").unwrap();
        assert_eq!(e.to_string(), "(0,1)*X:1,2");
    }

    #[test]
    fn functional_to_wedge_examples() {
        let p = params(2, 4, 3);
        let z = functional_to_wedge(&DualFunctional::coordinate(&p, &t(&[3, 4], 4)).unwrap());
        assert_eq!(z.to_string(), "v1^v2");
        let z = functional_to_wedge(&DualFunctional::coordinate(&p, &t(&[1, 2], 4)).unwrap());
        assert_eq!(z.to_string(), "v3^v4");
        // (2,4,1,3) has 3 inversions
        let z = functional_to_wedge(&DualFunctional::coordinate(&p, &t(&[1, 3], 4)).unwrap());
        assert_eq!(z.to_string(), "2*v2^v4");
        let u = functional_to_wedge_unsigned(&DualFunctional::coordinate(&p, &t(&[1, 3], 4)).unwrap());
        assert_eq!(u.to_string(), "v2^v4");
    }

    #[test]
    fn wedge_with_vector_examples() {
        let f3 = Field::of_order(3).unwrap();
        let v12 = wedge(&f3, 2, 3, &[(&[1, 2], 1)]);
        let e = |j: usize| (1..=3).map(|i| if i == j { Elem::ONE } else { Elem::ZERO }).collect::<Vec<_>>();
        assert!(v12.wedge_with_vector(&e(1)).unwrap().is_zero());
        assert_eq!(v12.wedge_with_vector(&e(3)).unwrap().to_string(), "v1^v2^v3");
        let v13 = wedge(&f3, 2, 3, &[(&[1, 3], 1)]);
        assert_eq!(v13.wedge_with_vector(&e(2)).unwrap().to_string(), "2*v1^v2^v3");
        let f2 = Field::of_order(2).unwrap();
        let v13 = wedge(&f2, 2, 3, &[(&[1, 3], 1)]);
        let e2: Vec<Elem> = vec![Elem::ZERO, Elem::ONE, Elem::ZERO];
        assert_eq!(v13.wedge_with_vector(&e2).unwrap().to_string(), "v1^v2^v3");
        let top = wedge(&f2, 3, 3, &[(&[1, 2, 3], 1)]);
        assert!(matches!(top.wedge_with_vector(&e2), Err(Error::Domain(_))));
    }

    #[test]
    fn annihilators() {
        let f2 = Field::of_order(2).unwrap();
        let z = wedge(&f2, 2, 4, &[(&[1, 2], 1)]);
        assert_eq!(z.annihilator_dimension().unwrap(), 2);
        assert!(z.is_decomposable().unwrap());
        let z = wedge(&f2, 2, 4, &[(&[1, 2], 1), (&[3, 4], 1)]);
        assert_eq!(z.annihilator_dimension().unwrap(), 0);
        assert!(!z.is_decomposable().unwrap());
        let z = wedge(&f2, 2, 4, &[(&[1, 2], 1), (&[1, 3], 1)]);
        assert_eq!(z.annihilator_dimension().unwrap(), 2);
        assert_eq!(z.annihilator().unwrap().len(), 2);
        let zero = WedgeElement::zero(&f2, 2, 4).unwrap();
        assert!(matches!(zero.is_decomposable(), Err(Error::Domain(_))));
        // every degree-1 element is decomposable
        let f3 = Field::of_order(3).unwrap();
        let z = wedge(&f3, 1, 4, &[(&[1], 1), (&[2], 2), (&[4], 1)]);
        assert!(z.is_decomposable().unwrap());
    }

    #[test]
    fn check_functional_examples() {
        let p = params(2, 4, 2);
        let f = DualFunctional::parse(&p, "X:1,2 + X:3,4").unwrap();
        assert!(!check_functional(&f).unwrap());
        for a in p.index_tuples() {
            assert!(check_functional(&DualFunctional::coordinate(&p, &a).unwrap()).unwrap());
        }
        for m in 3..=6 {
            let p = params(2, m, 3);
            let terms: Vec<_> = (1..m).map(|i| (t(&[i, m], m), p.field.from_int(1 + (i as i64 % 2)))).collect();
            let f = DualFunctional::from_terms(&p, &terms).unwrap();
            assert!(check_functional(&f).unwrap());
        }
    }

    #[test]
    fn restriction() {
        let p = params(2, 4, 2);
        let gamma = IndexTuple::sub_grassmannian(2, 4).unwrap();
        let f = DualFunctional::parse(&p, "X:1,4 + X:3,4").unwrap();
        assert_eq!(f.restrict(&gamma).unwrap(), Restriction::Vanishes);
        let g = DualFunctional::coordinate(&p, &gamma).unwrap();
        assert_eq!(g.restrict(&gamma).unwrap(), Restriction::Functional(g.clone()));
        let top = IndexTuple::maximal(2, 4).unwrap();
        assert_eq!(f.restrict(&top).unwrap(), Restriction::Functional(f.clone()));
    }

    fn all_functionals(p: &GrassmannParams) -> Vec<DualFunctional> {
        let q = p.field.order();
        let k = p.num_coordinates();
        (1..q.pow(k as u32))
            .map(|mut n| {
                let coeffs = (0..k)
                    .map(|_| {
                        let c = p.field.from_index(n % q).unwrap();
                        n /= q;
                        c
                    })
                    .collect();
                DualFunctional::new(p, coeffs).unwrap()
            })
            .collect()
    }

    #[test]
    fn pairing_matches_direct_evaluation() {
        let p = params(2, 4, 2);
        let emb = PluckerEmbedding::new(&p);
        let pts = enumerate_grassmannian(&p).unwrap();
        let funcs = all_functionals(&p);
        assert_eq!(funcs.len(), 63);
        for f in &funcs {
            let z = functional_to_wedge(f);
            for w in &pts {
                let direct = f.evaluate(&emb.embed(w));
                assert_eq!(z.pairing(&point_wedge(&p.field, w)).unwrap(), direct);
            }
        }
    }

    #[test]
    fn signs_matter_over_f3() {
        let p = params(2, 4, 3);
        let emb = PluckerEmbedding::new(&p);
        let pts = enumerate_grassmannian(&p).unwrap();
        let f = DualFunctional::parse(&p, "X:1,3 + X:2,4").unwrap();
        let z = functional_to_wedge(&f);
        let u = functional_to_wedge_unsigned(&f);
        let mut differs = false;
        for w in &pts {
            let pw = point_wedge(&p.field, w);
            assert_eq!(z.pairing(&pw).unwrap(), f.evaluate(&emb.embed(w)));
            differs |= u.pairing(&pw).unwrap() != f.evaluate(&emb.embed(w));
        }
        assert!(differs);
    }
}

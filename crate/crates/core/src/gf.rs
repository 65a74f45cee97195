//! Arithmetic in small finite fields `F_q`, `q = p^e`.
//!
//! A [`FieldSpec`] names the field (characteristic, degree, modulus). A
//! [`Field`] is the built form with full addition and multiplication tables,
//! cheap to clone and share across threads. Elements are [`Elem`] handles,
//! interpreted through the `Field` they came from; [`FieldElement`] pairs a
//! handle with its field for checked, self-describing arithmetic.
//!
//! The element with coefficient vector `(c0, c1, .., c_{e-1})` (meaning
//! `c0 + c1 x + .. + c_{e-1} x^{e-1}`) has index `c0 + c1 p + .. + c_{e-1} p^{e-1}`.
//! Zero is index 0, one is index 1, and enumeration is by ascending index.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const DEFAULT_MAX_ORDER: u32 = 16;

/// Elements are stored in a `u8`, which caps any field at 256 elements.
const HARD_MAX_ORDER: u32 = 256;

/// Irreducible moduli for the non-prime orders up to 16, low degree first.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),    // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (3, 2, &[1, 0, 1]),    // x^2 + 1
];

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Polynomials over `F_p`, coefficients low degree first, no trailing zeros.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead = *b.last().expect("division by zero polynomial");
        let lead_inv = (1..p).find(|x| (x * lead) % p == 1).unwrap();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = (r[r.len() - 1] * lead_inv) % p;
            for (i, &c) in b.iter().enumerate() {
                r[i + shift] = (r[i + shift] + p * p - factor * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let deg = f.len().saturating_sub(1);
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as usize).pow(d as u32);
            for low in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = low;
                for _ in 0..d {
                    g.push((x % p as usize) as u32);
                    x /= p as usize;
                }
                g.push(1);
                if rem(&f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Description of a finite field `F_q`, `q = p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// The field of order `p^e` using the built-in modulus table, limited to
    /// [`DEFAULT_MAX_ORDER`] elements.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_max_order(p, e, DEFAULT_MAX_ORDER)
    }

    /// Like [`FieldSpec::new`] with a caller-chosen order limit (at most 256).
    /// Degrees missing from the table use the first irreducible monic
    /// polynomial in ascending index order.
    pub fn with_max_order(p: u32, e: u32, max_order: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::usage("extension degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        let max = max_order.min(HARD_MAX_ORDER) as u64;
        if q > max {
            return Err(Error::usage(format!(
                "field order {p}^{e} = {q} exceeds the maximum of {max}"
            )));
        }
        if e == 1 {
            return Ok(FieldSpec { p, e, modulus: vec![0, 1] });
        }
        let modulus = match MODULI.iter().find(|(mp, me, _)| *mp == p && *me == e) {
            Some((_, _, m)) => m.to_vec(),
            None => first_irreducible(p, e),
        };
        Ok(FieldSpec { p, e, modulus })
    }

    /// A field `F_p[x]/(modulus)`; the modulus must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("characteristic {p} is not prime")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::usage("modulus coefficients must lie in [0, p)"));
        }
        let modulus = poly::trim(modulus);
        let e = modulus.len().saturating_sub(1) as u32;
        if e == 0 || modulus.last() != Some(&1) {
            return Err(Error::usage("modulus must be monic of degree at least 1"));
        }
        if (p as u64).checked_pow(e).is_none_or(|q| q > HARD_MAX_ORDER as u64) {
            return Err(Error::usage("field order exceeds 256"));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::usage(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        if e == 1 {
            return Ok(FieldSpec { p, e, modulus: vec![0, 1] });
        }
        Ok(FieldSpec { p, e, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }

    /// Modulus coefficients, low degree first, length `e + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as usize).pow(e);
    (0..count)
        .map(|low| {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut x = low;
            for _ in 0..e {
                f.push((x % p as usize) as u32);
                x /= p as usize;
            }
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `"p"`, `"p^e"`, or a bare prime power such as `"4"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::usage(format!("cannot parse field '{s}' (expected p or p^e)"));
        if let Some((p, e)) = s.split_once('^') {
            let p = p.trim().parse::<u32>().map_err(|_| bad())?;
            let e = e.trim().parse::<u32>().map_err(|_| bad())?;
            return FieldSpec::new(p, e);
        }
        let q = s.parse::<u32>().map_err(|_| bad())?;
        if q < 2 {
            return Err(bad());
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut e = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::usage(format!("{q} is not a prime power")));
        }
        FieldSpec::new(p, e)
    }
}

/// A field element handle: its index in the owning [`Field`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Callers guarantee `i` is below the field order.
    #[inline]
    pub(crate) fn from_raw(i: usize) -> Elem {
        debug_assert!(i < HARD_MAX_ORDER as usize);
        Elem(i as u8)
    }
}

struct Tables {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field with precomputed operation tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order() as usize;
        let p = spec.p;
        let coeffs = |x: usize| -> Vec<u32> {
            let mut c = Vec::with_capacity(spec.e as usize);
            let mut x = x;
            for _ in 0..spec.e {
                c.push((x % p as usize) as u32);
                x /= p as usize;
            }
            c
        };
        let index = |c: &[u32]| -> u8 {
            c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) as u8
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let ca = coeffs(a);
            for b in 0..q {
                let cb = coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum);
                let prod = if spec.e == 1 {
                    vec![ca[0] * cb[0] % p]
                } else {
                    poly::rem(&poly::mul(&ca, &cb, p), &spec.modulus, p)
                };
                let mut prod = prod;
                prod.resize(spec.e as usize, 0);
                mul[a * q + b] = index(&prod);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
                }
            })
            .collect();
        Field {
            t: Arc::new(Tables { spec, q, add, mul, neg, inv }),
        }
    }

    /// Shorthand for the prime field `F_p` or a table field `F_{p^e}`.
    pub fn of_order(q: u32) -> Result<Self> {
        Ok(Field::new(q.to_string().parse()?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.t.q
    }

    pub fn characteristic(&self) -> u32 {
        self.t.spec.p
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.add[a.index() * self.t.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.t.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.mul[a.index() * self.t.q + b.index()])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::domain("zero has no multiplicative inverse"));
        }
        Ok(Elem(self.t.inv[a.index()]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `+1` or `-1` as a field element.
    #[inline]
    pub fn sign(&self, negative: bool) -> Elem {
        if negative {
            self.neg(Elem::ONE)
        } else {
            Elem::ONE
        }
    }

    /// All `q` elements in canonical order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.t.q).map(|i| Elem(i as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.t.q).map(|i| Elem(i as u8))
    }

    pub fn from_index(&self, i: usize) -> Result<Elem> {
        if i < self.t.q {
            Ok(Elem(i as u8))
        } else {
            Err(Error::usage(format!("{i} is not an element index of F_{}", self.t.q)))
        }
    }

    /// The image of the integer `n` under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.t.spec.p as i64) as u8)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.t.spec.p;
        if coeffs.len() != self.t.spec.e as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::usage(format!(
                "expected {} coefficients in [0, {p})",
                self.t.spec.e
            )));
        }
        let i = coeffs.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
        Ok(Elem(i as u8))
    }

    /// Coefficient vector `(c0, .., c_{e-1})`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.t.spec.p as usize;
        let mut x = a.index();
        (0..self.t.spec.e)
            .map(|_| {
                let c = (x % p) as u32;
                x /= p;
                c
            })
            .collect()
    }

    /// Integer for prime fields, coefficient tuple `(c0,c1,..)` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.t.spec.e == 1 {
            a.index().to_string()
        } else {
            let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Inverse of [`Field::format`]. Plain integers are also accepted in
    /// extension fields, read as element indices.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::usage(format!("bad field element '{s}'")))?;
            return self.from_coeffs(&coeffs);
        }
        let n: i64 = s
            .parse()
            .map_err(|_| Error::usage(format!("bad field element '{s}'")))?;
        if self.t.spec.e == 1 {
            Ok(self.from_int(n))
        } else if n >= 0 {
            self.from_index(n as usize)
        } else {
            Err(Error::usage(format!("bad field element '{s}'")))
        }
    }

    pub fn element(&self, a: Elem) -> FieldElement<'_> {
        FieldElement { field: self, value: a }
    }

    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.spec == other.t.spec
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.spec)
    }
}

/// An element bundled with its field. Binary operations check that both
/// operands live in the same field.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    value: Elem,
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    fn check(&self, other: &FieldElement<'_>) -> Result<()> {
        if self.field.same_field(other.field) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "field mismatch: F_{} vs F_{}",
                self.field.spec(),
                other.field.spec()
            )))
        }
    }

    pub fn add(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement<'f>> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.value == other.value
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format(self.value), self.field)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    fn f(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn small_examples() {
        let f2 = f(2);
        assert_eq!(f2.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        assert_eq!(f2.inv(Elem::ONE).unwrap(), Elem::ONE);

        let f3 = f(3);
        let two = f3.from_int(2);
        assert_eq!(f3.add(two, two), Elem::ONE);
        assert_eq!(f3.mul(two, two), Elem::ONE);

        let f5 = f(5);
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
    }

    #[test]
    fn f4_uses_x2_x_1() {
        let f4 = f(4);
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        let x1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.add(x, x1), Elem::ONE);
        assert_eq!(f4.mul(x, x), x1);
        assert_eq!(f4.format(x1), "(1,1)");
        assert_eq!(f4.parse_elem("(1,1)").unwrap(), x1);
    }

    #[test]
    fn inverse_is_domain_error_at_zero() {
        assert!(matches!(f(7).inv(Elem::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn f9_inverses_by_table() {
        let f9 = f(9);
        for a in f9.nonzero_elements() {
            assert_eq!(f9.mul(f9.inv(a).unwrap(), a), Elem::ONE);
        }
    }

    #[test]
    fn enumeration_is_canonical() {
        let idx = |q| f(q).elements().map(Elem::index).collect::<Vec<_>>();
        assert_eq!(idx(2), vec![0, 1]);
        assert_eq!(idx(3), vec![0, 1, 2]);
        assert_eq!(idx(9).len(), 9);
        assert_eq!(idx(16), idx(16));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED {
            let fq = f(q);
            let els: Vec<Elem> = fq.elements().collect();
            for &a in &els {
                assert_eq!(fq.add(a, Elem::ZERO), a);
                assert_eq!(fq.mul(a, Elem::ONE), a);
                assert_eq!(fq.add(a, fq.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(fq.mul(a, fq.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(fq.add(a, b), fq.add(b, a));
                    assert_eq!(fq.mul(a, b), fq.mul(b, a));
                    for &c in &els {
                        assert_eq!(fq.add(fq.add(a, b), c), fq.add(a, fq.add(b, c)));
                        assert_eq!(fq.mul(fq.mul(a, b), c), fq.mul(a, fq.mul(b, c)));
                        assert_eq!(
                            fq.mul(a, fq.add(b, c)),
                            fq.add(fq.mul(a, b), fq.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_matches_coefficient_lift() {
        for q in [4, 8, 9, 16] {
            let fq = f(q);
            let spec = fq.spec().clone();
            let p = spec.characteristic();
            for a in fq.elements() {
                // sum c_i x^(i p), reduced by the modulus
                let mut lifted = vec![0u32; (spec.degree() * p) as usize];
                for (i, c) in fq.coeffs(a).into_iter().enumerate() {
                    lifted[i * p as usize] = c;
                }
                let mut r = poly::rem(&lifted, spec.modulus(), p);
                r.resize(spec.degree() as usize, 0);
                assert_eq!(fq.pow(a, p as u64), fq.from_coeffs(&r).unwrap());
            }
        }
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!("2".parse::<FieldSpec>().unwrap().order(), 2);
        assert_eq!("2^2".parse::<FieldSpec>().unwrap().order(), 4);
        assert_eq!("9".parse::<FieldSpec>().unwrap().to_string(), "3^2");
        assert!("6".parse::<FieldSpec>().is_err());
        assert!("32".parse::<FieldSpec>().is_err());
        assert!("2^x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn moduli_are_checked() {
        assert!(FieldSpec::with_modulus(2, vec![1, 0, 1]).is_err()); // (x+1)^2
        assert!(FieldSpec::with_modulus(2, vec![1, 1, 1]).is_ok());
        assert!(FieldSpec::with_max_order(5, 2, 25).is_ok());
        for (p, e, m) in MODULI {
            assert!(poly::is_irreducible(m, *p), "{p}^{e}");
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let (f2, f3) = (f(2), f(3));
        let a = f2.element(Elem::ONE);
        let b = f3.element(Elem::ONE);
        assert!(matches!(a.add(&b), Err(Error::Usage(_))));
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
        assert_eq!(a.add(&f2.element(Elem::ONE)).unwrap().value(), Elem::ZERO);
    }
}

//! Index tuples `I(l, m)`, the Bruhat order, Gaussian binomials and the
//! hyperplane-section bounds `e(l, m)`, `e'(l, m)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;

/// Largest ambient dimension accepted anywhere in the crate.
pub const MAX_M: usize = 16;

/// A strictly increasing tuple `1 <= a_1 < .. < a_l <= m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    entries: Vec<usize>,
    m: usize,
}

impl IndexTuple {
    pub fn new(entries: Vec<usize>, m: usize) -> Result<Self> {
        if m > MAX_M {
            return Err(Error::usage(format!("m = {m} exceeds the limit {MAX_M}")));
        }
        if entries.first().is_some_and(|&a| a < 1)
            || entries.last().is_some_and(|&a| a > m)
            || entries.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::usage(format!(
                "{entries:?} is not a strictly increasing tuple in 1..={m}"
            )));
        }
        Ok(IndexTuple { entries, m })
    }

    /// Parses the comma-joined form `"1,3,4"`.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let s = s.trim();
        let entries = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::usage(format!("cannot parse index tuple '{s}'")))?
        };
        IndexTuple::new(entries, m)
    }

    /// `(1, .., l)`, the bottom of the Bruhat order.
    pub fn minimal(ell: usize, m: usize) -> Result<Self> {
        IndexTuple::new((1..=ell).collect(), m)
    }

    /// `(m-l+1, .., m)`, the top of the Bruhat order.
    pub fn maximal(ell: usize, m: usize) -> Result<Self> {
        check_shape(ell, m)?;
        IndexTuple::new((m - ell + 1..=m).collect(), m)
    }

    /// `(m-l, .., m-1)`; its Schubert variety is the sub-Grassmannian of
    /// subspaces inside `span(v_1, .., v_{m-1})`.
    pub fn sub_grassmannian(ell: usize, m: usize) -> Result<Self> {
        if ell >= m {
            return Err(Error::domain("the sub-Grassmannian tuple needs l < m"));
        }
        IndexTuple::new((m - ell..m).collect(), m)
    }

    /// `(m-l-1, m-l+2, .., m)`, the tuple whose Schubert variety controls the
    /// second-largest hyperplane sections. Needs `2 <= l <= m-2`.
    pub fn theta(ell: usize, m: usize) -> Result<Self> {
        if ell < 2 || ell + 2 > m {
            return Err(Error::domain(format!("theta needs 2 <= l <= m-2, got l={ell}, m={m}")));
        }
        let mut entries = vec![m - ell - 1];
        entries.extend(m - ell + 2..=m);
        IndexTuple::new(entries, m)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn contains(&self, j: usize) -> bool {
        self.entries.binary_search(&j).is_ok()
    }

    /// `sum a_i - l(l+1)/2`, the dimension of the Schubert cell.
    pub fn delta(&self) -> usize {
        let l = self.ell();
        self.entries.iter().sum::<usize>() - l * (l + 1) / 2
    }

    /// Componentwise comparison.
    pub fn bruhat_leq(&self, other: &IndexTuple) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    fn same_shape(&self, other: &IndexTuple) -> Result<()> {
        if self.ell() != other.ell() || self.m != other.m {
            return Err(Error::usage(format!(
                "tuples from I({}, {}) and I({}, {}) are not comparable",
                self.ell(),
                self.m,
                other.ell(),
                other.m
            )));
        }
        Ok(())
    }

    /// `{b : b <= self}`, in lexicographic order.
    pub fn nabla_set(&self) -> Vec<IndexTuple> {
        all_tuples_unchecked(self.ell(), self.m)
            .into_iter()
            .filter(|b| b.leq_unchecked(self))
            .collect()
    }

    /// `{b : not b <= self}`, in lexicographic order.
    pub fn delta_set(&self) -> Vec<IndexTuple> {
        all_tuples_unchecked(self.ell(), self.m)
            .into_iter()
            .filter(|b| !b.leq_unchecked(self))
            .collect()
    }

    pub(crate) fn leq_unchecked(&self, other: &IndexTuple) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// The tuple in `I(m-l, m)` holding the remaining indices.
    pub fn complement(&self) -> IndexTuple {
        IndexTuple {
            entries: (1..=self.m).filter(|j| !self.contains(*j)).collect(),
            m: self.m,
        }
    }

    /// Drops the last entry; maps `{a : a_l = m}` in `I(l, m)` onto `I(l-1, m-1)`.
    pub fn truncate(&self) -> Result<IndexTuple> {
        if self.entries.last() != Some(&self.m) {
            return Err(Error::domain(format!("{self} does not end in m = {}", self.m)));
        }
        Ok(IndexTuple {
            entries: self.entries[..self.ell() - 1].to_vec(),
            m: self.m - 1,
        })
    }

    /// Appends `m + 1`; inverse of [`IndexTuple::truncate`].
    pub fn extend_last(&self) -> IndexTuple {
        let mut entries = self.entries.clone();
        entries.push(self.m + 1);
        IndexTuple { entries, m: self.m + 1 }
    }

    /// Position in the lexicographic listing of `I(l, m)`.
    pub fn lex_rank(&self) -> usize {
        let l = self.ell();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &a) in self.entries.iter().enumerate() {
            for v in prev + 1..a {
                rank += binomial(self.m - v, l - i - 1);
            }
            prev = a;
        }
        rank
    }

    /// Sign of the permutation `(self^C, self)` of `(1, .., m)`.
    pub fn shuffle_sign_negative(&self) -> bool {
        let mut inversions = 0usize;
        for c in (1..=self.m).filter(|j| !self.contains(*j)) {
            inversions += self.entries.iter().filter(|&&a| a < c).count();
        }
        inversions % 2 == 1
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_shape(ell: usize, m: usize) -> Result<()> {
    if ell > m {
        return Err(Error::usage(format!("need l <= m, got l={ell}, m={m}")));
    }
    if m > MAX_M {
        return Err(Error::usage(format!("m = {m} exceeds the limit {MAX_M}")));
    }
    Ok(())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn all_tuples_unchecked(ell: usize, m: usize) -> Vec<IndexTuple> {
    let mut out = Vec::with_capacity(binomial(m, ell));
    let mut cur: Vec<usize> = (1..=ell).collect();
    loop {
        out.push(IndexTuple { entries: cur.clone(), m });
        // advance to the lexicographic successor
        let mut i = ell;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m - (ell - 1 - i) {
                cur[i] += 1;
                for j in i + 1..ell {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All of `I(l, m)` in ascending lexicographic order.
pub fn enumerate_index_tuples(ell: usize, m: usize) -> Result<Vec<IndexTuple>> {
    check_shape(ell, m)?;
    Ok(all_tuples_unchecked(ell, m))
}

/// Shape of a Grassmannian `G(l, V_m)` over a field.
///
/// `l = 0` is accepted: it is the one-point Grassmannian met when
/// peeling a row off `G(1, V_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannParams {
    pub ell: usize,
    pub m: usize,
    pub field: Field,
}

impl GrassmannParams {
    pub fn new(ell: usize, m: usize, field: Field) -> Result<Self> {
        check_shape(ell, m)?;
        if m == 0 {
            return Err(Error::usage("m must be positive"));
        }
        Ok(GrassmannParams { ell, m, field })
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    /// `C(m, l)`, the number of Plücker coordinates.
    pub fn num_coordinates(&self) -> usize {
        binomial(self.m, self.ell)
    }

    pub fn index_tuples(&self) -> Vec<IndexTuple> {
        all_tuples_unchecked(self.ell, self.m)
    }

    /// `[m, l]_q`, the number of points.
    pub fn num_points(&self) -> BigUint {
        gaussian_binomial(self.m, self.ell, self.q())
    }

    /// The same field, one dimension down in both `l` and `m`.
    pub fn peeled(&self) -> Result<Self> {
        if self.ell == 0 {
            return Err(Error::domain("cannot peel a row off l = 0"));
        }
        GrassmannParams::new(self.ell - 1, self.m - 1, self.field.clone())
    }

    /// `G(l, V_{m-1})`.
    pub fn shrunk(&self) -> Result<Self> {
        GrassmannParams::new(self.ell, self.m - 1, self.field.clone())
    }
}

fn pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

fn pow_i(q: u64, e: usize) -> BigInt {
    BigInt::from(pow(q, e))
}

/// `[m, l]_q = prod_{i<l} (q^m - q^i) / (q^l - q^i)`; zero when `l > m`.
pub fn gaussian_binomial(m: usize, ell: usize, q: u64) -> BigUint {
    if ell > m {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..ell {
        num *= pow(q, m) - pow(q, i);
        den *= pow(q, ell) - pow(q, i);
    }
    num / den
}

/// `e(l, m) = [m, l]_q - q^{l(m-l)}`, the largest hyperplane section of `G(l, V_m)`.
pub fn e_bound(ell: usize, m: usize, q: u64) -> Result<BigInt> {
    check_shape(ell, m)?;
    Ok(BigInt::from(gaussian_binomial(m, ell, q)) - pow_i(q, ell * (m - ell)))
}

/// `e'(l, m) = e(l, m) - q^{l(m-l)-2}`; needs `l(m-l) >= 2`.
pub fn e_prime_bound(ell: usize, m: usize, q: u64) -> Result<BigInt> {
    check_shape(ell, m)?;
    let d = ell * (m - ell);
    if d < 2 {
        return Err(Error::domain(format!("e'({ell}, {m}) needs l(m-l) >= 2")));
    }
    Ok(e_bound(ell, m, q)? - pow_i(q, d - 2))
}

/// One checked identity or inequality.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    #[serde(serialize_with = "crate::report::as_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::report::as_string")]
    pub rhs: BigInt,
    pub pass: bool,
}

impl IdentityCheck {
    fn eq(identity: String, lhs: BigInt, rhs: BigInt) -> Self {
        let pass = lhs == rhs;
        IdentityCheck { identity, lhs, rhs, pass }
    }

    fn lt(identity: String, lhs: BigInt, rhs: BigInt) -> Self {
        let pass = lhs < rhs;
        IdentityCheck { identity, lhs, rhs, pass }
    }
}

/// Symmetry, q-Pascal and the one-step ratio identity for `[m, l]_q`.
///
/// The ratio identity is checked cross-multiplied:
/// `[m,l] (q^{m-l} - 1) = (q^m - 1) [m-1,l]`, and is skipped when `l = m`.
pub fn verify_gaussian_identities(m: usize, ell: usize, q: u64) -> Result<Vec<IdentityCheck>> {
    if ell < 1 || ell > m {
        return Err(Error::usage(format!("need 1 <= l <= m, got l={ell}, m={m}")));
    }
    let g = |m, l| BigInt::from(gaussian_binomial(m, l, q));
    let tag = |name: &str| format!("{name} (m={m}, l={ell}, q={q})");
    let mut out = vec![
        IdentityCheck::eq(tag("symmetry"), g(m, ell), g(m, m - ell)),
        IdentityCheck::eq(
            tag("q-pascal"),
            g(m, ell),
            g(m - 1, ell) + pow_i(q, m - ell) * g(m - 1, ell - 1),
        ),
    ];
    if ell < m {
        out.push(IdentityCheck::eq(
            tag("ratio"),
            g(m, ell) * (pow_i(q, m - ell) - 1),
            (pow_i(q, m) - 1) * g(m - 1, ell),
        ));
    }
    Ok(out)
}

/// The four relations between `e`, `e'` at consecutive `m` used by the
/// induction on hyperplane sections. (a),(b) need `1 <= l <= m-1`; (c),(d)
/// need `2 <= l <= m-2`. Out-of-range clauses are omitted.
pub fn verify_e_inequalities(ell: usize, m: usize, q: u64) -> Result<Vec<IdentityCheck>> {
    check_shape(ell, m)?;
    let tag = |name: &str| format!("{name} (l={ell}, m={m}, q={q})");
    let g = |m, l| BigInt::from(gaussian_binomial(m, l, q));
    let mut out = Vec::new();
    if ell >= 1 && ell < m {
        // e(l, m-1) (q^m - 1)/(q^{m-l} - 1) < e(l, m), cross-multiplied
        out.push(IdentityCheck::lt(
            tag("ineq-a"),
            e_bound(ell, m - 1, q)? * (pow_i(q, m) - 1),
            e_bound(ell, m, q)? * (pow_i(q, m - ell) - 1),
        ));
        out.push(IdentityCheck::eq(
            tag("ineq-b"),
            g(m - 1, ell) + pow_i(q, m - ell) * e_bound(ell - 1, m - 1, q)?,
            e_bound(ell, m, q)?,
        ));
    }
    if ell >= 2 && ell + 2 <= m {
        out.push(IdentityCheck::lt(
            tag("ineq-c"),
            e_prime_bound(ell, m - 1, q)? * (pow_i(q, m) - 1),
            e_prime_bound(ell, m, q)? * (pow_i(q, m - ell) - 1),
        ));
        out.push(IdentityCheck::eq(
            tag("ineq-d"),
            g(m - 1, ell) + pow_i(q, m - ell) * e_prime_bound(ell - 1, m - 1, q)?,
            e_prime_bound(ell, m, q)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[usize], m: usize) -> IndexTuple {
        IndexTuple::new(e.to_vec(), m).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let got: Vec<String> = enumerate_index_tuples(2, 3)
            .unwrap()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(got, ["1,2", "1,3", "2,3"]);
        assert_eq!(enumerate_index_tuples(2, 4).unwrap().len(), 6);
        assert_eq!(enumerate_index_tuples(3, 6).unwrap().len(), 20);
        assert!(enumerate_index_tuples(3, 2).is_err());
        assert_eq!(enumerate_index_tuples(0, 3).unwrap().len(), 1);
    }

    #[test]
    fn counts_and_ranks() {
        for m in 1..=8 {
            for ell in 1..=m {
                let all = enumerate_index_tuples(ell, m).unwrap();
                assert_eq!(all.len(), binomial(m, ell));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                for (i, a) in all.iter().enumerate() {
                    assert_eq!(a.lex_rank(), i);
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(IndexTuple::minimal(3, 6).unwrap().delta(), 0);
        assert_eq!(IndexTuple::maximal(3, 6).unwrap().delta(), 9);
        let theta = IndexTuple::theta(2, 4).unwrap();
        assert_eq!(theta, t(&[1, 4], 4));
        assert_eq!(theta.delta(), 2);
        assert_eq!(IndexTuple::theta(2, 5).unwrap(), t(&[2, 5], 5));
        assert_eq!(IndexTuple::theta(3, 6).unwrap(), t(&[2, 5, 6], 6));
    }

    #[test]
    fn bruhat_examples() {
        let a = t(&[1, 3], 4);
        assert!(a.bruhat_leq(&a).unwrap());
        assert!(a.bruhat_leq(&t(&[2, 3], 4)).unwrap());
        assert!(!t(&[2, 3], 4).bruhat_leq(&t(&[1, 4], 4)).unwrap());
        assert!(a.bruhat_leq(&t(&[1, 3], 5)).is_err());
        assert!(a.bruhat_leq(&t(&[1, 2, 3], 4)).is_err());
    }

    #[test]
    fn bruhat_is_a_partial_order() {
        for (ell, m) in [(2, 5), (3, 6)] {
            let all = enumerate_index_tuples(ell, m).unwrap();
            for a in &all {
                assert!(a.bruhat_leq(a).unwrap());
                for b in &all {
                    let ab = a.bruhat_leq(b).unwrap();
                    if ab && b.bruhat_leq(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if ab && b.bruhat_leq(c).unwrap() {
                            assert!(a.bruhat_leq(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_and_delta_sets() {
        let top = IndexTuple::maximal(2, 4).unwrap();
        assert!(top.delta_set().is_empty());
        assert_eq!(top.nabla_set().len(), 6);

        for m in 3..=6 {
            let gamma = IndexTuple::sub_grassmannian(2, m).unwrap();
            assert!(gamma.delta_set().iter().all(|b| b.entries()[1] == m));
            assert_eq!(gamma.delta_set().len(), m - 1);
        }

        let theta = IndexTuple::theta(2, 4).unwrap();
        assert_eq!(theta.delta_set(), vec![t(&[2, 3], 4), t(&[2, 4], 4), t(&[3, 4], 4)]);

        for a in enumerate_index_tuples(3, 6).unwrap() {
            let (n, d) = (a.nabla_set(), a.delta_set());
            assert_eq!(n.len() + d.len(), 20);
            assert!(n.iter().all(|b| !d.contains(b)));
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(t(&[1, 2], 4).complement(), t(&[3, 4], 4));
        assert_eq!(t(&[1, 3], 4).complement(), t(&[2, 4], 4));
        for a in enumerate_index_tuples(2, 5).unwrap() {
            assert_eq!(a.complement().complement(), a);
        }
    }

    #[test]
    fn shuffle_signs() {
        // (1,2)^C = (3,4); (3,4,1,2) has four inversions
        assert!(!t(&[1, 2], 4).shuffle_sign_negative());
        assert!(!t(&[3, 4], 4).shuffle_sign_negative());
        // (2,4,1,3): inversions 2>1, 4>1, 4>3
        assert!(t(&[1, 3], 4).shuffle_sign_negative());
    }

    /// The product formula evaluated directly in machine integers.
    fn gb_oracle(m: u32, l: u32, q: u128) -> u128 {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..l {
            num *= q.pow(m) - q.pow(i);
            den *= q.pow(l) - q.pow(i);
        }
        num / den
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(5, 2, 2), BigUint::from(155u32));
        assert_eq!(gaussian_binomial(5, 2, 3), BigUint::from(1210u32));
        assert_eq!(gaussian_binomial(6, 6, 7), BigUint::one());
        assert_eq!(gaussian_binomial(3, 4, 2), BigUint::zero());
        for q in 2..=5u64 {
            for m in 0..=7 {
                for l in 0..=m {
                    assert_eq!(
                        gaussian_binomial(m as usize, l as usize, q),
                        BigUint::from(gb_oracle(m, l, q as u128))
                    );
                }
            }
        }
        // past u64
        assert!(gaussian_binomial(16, 8, 16) > BigUint::from(u64::MAX));
    }

    #[test]
    fn cell_mass_sums_to_gaussian_binomial() {
        for q in [2u64, 3, 4] {
            for m in 1..=7 {
                for ell in 1..=m {
                    let total: BigUint = enumerate_index_tuples(ell, m)
                        .unwrap()
                        .iter()
                        .map(|a| pow(q, a.delta()))
                        .sum();
                    assert_eq!(total, gaussian_binomial(m, ell, q));
                }
            }
        }
    }

    #[test]
    fn e_bound_examples() {
        assert_eq!(e_bound(2, 4, 2).unwrap(), BigInt::from(19));
        assert_eq!(e_prime_bound(2, 4, 2).unwrap(), BigInt::from(15));
        for q in [2u64, 3, 5] {
            for m in 1..=7 {
                let expect = (q.pow(m as u32 - 1) - 1) / (q - 1);
                assert_eq!(e_bound(1, m, q).unwrap(), BigInt::from(expect));
            }
        }
        assert!(matches!(e_prime_bound(1, 2, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_examples() {
        let r = verify_gaussian_identities(4, 2, 2).unwrap();
        assert!(r.iter().all(|c| c.pass));
        let pascal = r.iter().find(|c| c.identity.starts_with("q-pascal")).unwrap();
        assert_eq!(pascal.rhs, BigInt::from(35));

        let r = verify_e_inequalities(2, 4, 2).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|c| c.pass));
        let a = &r[0];
        // 3 * 15 < 19 * 3
        assert_eq!((a.lhs.clone(), a.rhs.clone()), (BigInt::from(45), BigInt::from(57)));
    }

    #[test]
    fn all_identities_hold_in_range() {
        for q in [2u64, 3, 4, 5] {
            for m in 1..=8 {
                for ell in 1..=m {
                    for c in verify_gaussian_identities(m, ell, q).unwrap() {
                        assert!(c.pass, "{}", c.identity);
                    }
                    for c in verify_e_inequalities(ell, m, q).unwrap() {
                        assert!(c.pass, "{}", c.identity);
                    }
                }
            }
        }
    }
}

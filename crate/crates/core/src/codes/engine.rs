//! The weight sweep over all hyperplanes of a code.
//!
//! Scalar classes of messages are indexed `0..(q^k - 1)/(q - 1)`. Class
//! representatives have first nonzero entry 1 and are listed by leading
//! position from `k-1` down to `0`, then by the entries after the leading
//! one read as a base-`q` number (last entry fastest). Over `F_2` class `t`
//! is the binary expansion of `t + 1` with the last coordinate as low bit.
//!
//! A sweep over a range of classes keeps the vector of codeword entries
//! `S = Σ c_i row_i` and updates it as the odometer ticks, so each step costs
//! a few row additions instead of a full product.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{CodeSpec, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gf::Elem;

/// Default cap on `classes x n`.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// Classes handled per parallel task.
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Bit-packed rows over `F_2`, field tables otherwise.
    #[default]
    Auto,
    /// Per-point parity of `c AND w` over `F_2`; needs `k <= 64`.
    PointParity,
    /// Field-table arithmetic for every `q`.
    Generic,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub budget: u128,
    pub kernel: Kernel,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            threads: None,
            budget: DEFAULT_BUDGET,
            kernel: Kernel::Auto,
        }
    }
}

impl SweepOptions {
    pub(crate) fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(job()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::usage(format!("cannot start {t} workers: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// `(q^k - 1) / (q - 1)`.
pub fn class_count(q: u64, k: usize) -> BigUint {
    (num_traits::pow(BigUint::from(q), k) - 1u32) / (q - 1)
}

/// The representative of class `t`.
pub fn class_representative(q: u64, k: usize, t: u64) -> Result<Vec<Elem>> {
    let (lead, offset) = locate(q, k, t)?;
    let mut c = vec![Elem::ZERO; k];
    c[lead] = Elem::ONE;
    let mut rest = offset;
    for slot in c[lead + 1..].iter_mut().rev() {
        *slot = Elem::from_raw((rest % q) as usize);
        rest /= q;
    }
    Ok(c)
}

/// Leading position of class `t` and its offset inside that block.
fn locate(q: u64, k: usize, t: u64) -> Result<(usize, u64)> {
    let mut start = 0u64;
    let mut size = 1u64;
    for lead in (0..k).rev() {
        if t < start + size {
            return Ok((lead, t - start));
        }
        start += size;
        size = size.saturating_mul(q);
    }
    Err(Error::usage(format!("class {t} out of range")))
}

fn checked_classes(gen: &GeneratorMatrix, opts: &SweepOptions) -> Result<u64> {
    let classes = class_count(gen.spec().q(), gen.k());
    let required = &classes * BigUint::from(gen.n());
    if required > BigUint::from(opts.budget) {
        return Err(Error::Budget {
            what: format!("sweeping all hyperplanes of {}", gen.spec()),
            required: required.to_u128().unwrap_or(u128::MAX),
            budget: opts.budget,
        });
    }
    classes
        .to_u64()
        .ok_or_else(|| Error::usage("too many classes"))
}

/// Sweeps classes `lo..hi`, reporting each weight in order.
trait RangeSweep: Sync {
    fn sweep(&self, lo: u64, hi: u64, out: &mut dyn FnMut(u32));
}

struct Gf2Rows {
    k: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2Rows {
    fn new(gen: &GeneratorMatrix) -> Self {
        let (k, n) = (gen.k(), gen.n());
        let words = n.div_ceil(64);
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0u64; words];
                for (j, col) in gen.columns().iter().enumerate() {
                    if !col[i].is_zero() {
                        r[j / 64] |= 1 << (j % 64);
                    }
                }
                r
            })
            .collect();
        Gf2Rows { k, words, rows }
    }
}

impl RangeSweep for Gf2Rows {
    fn sweep(&self, lo: u64, hi: u64, out: &mut dyn FnMut(u32)) {
        let mut s = vec![0u64; self.words];
        let mut t = lo;
        while t < hi {
            let (lead, offset) = locate(2, self.k, t).expect("in range");
            // the block with this leading position ends after 2^(k-1-lead) classes
            let block_end = t - offset + (1u64 << (self.k - 1 - lead));
            s.copy_from_slice(&self.rows[lead]);
            let tail = self.k - 1 - lead;
            for b in 0..tail {
                if offset >> b & 1 == 1 {
                    xor(&mut s, &self.rows[self.k - 1 - b]);
                }
            }
            let mut x = offset;
            loop {
                out(s.iter().map(|w| w.count_ones()).sum());
                t += 1;
                if t >= hi || t >= block_end {
                    break;
                }
                // x -> x + 1 flips the trailing ones and the next zero
                let flips = (x ^ (x + 1)).count_ones() as usize;
                for b in 0..flips {
                    xor(&mut s, &self.rows[self.k - 1 - b]);
                }
                x += 1;
            }
        }
    }
}

#[inline]
fn xor(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

struct Gf2Parity {
    k: usize,
    columns: Vec<u64>,
}

impl RangeSweep for Gf2Parity {
    fn sweep(&self, lo: u64, hi: u64, out: &mut dyn FnMut(u32)) {
        for t in lo..hi {
            // class t is t + 1 with the last coordinate in bit 0; columns
            // use bit i for coordinate i, so reverse
            let c = (t + 1).reverse_bits() >> (64 - self.k);
            out(self.columns.iter().filter(|&&w| (c & w).count_ones() & 1 == 1).count() as u32);
        }
    }
}

struct Generic {
    q: usize,
    k: usize,
    n: usize,
    add: Vec<u8>,
    sub: Vec<u8>,
    /// `scaled[i * q + a]` is `a * row_i`.
    scaled: Vec<Vec<u8>>,
}

impl Generic {
    fn new(gen: &GeneratorMatrix) -> Self {
        let f = gen.field();
        let q = f.order();
        let (k, n) = (gen.k(), gen.n());
        let mut add = vec![0u8; q * q];
        let mut sub = vec![0u8; q * q];
        for a in f.elements() {
            for b in f.elements() {
                add[a.index() * q + b.index()] = f.add(a, b).index() as u8;
                sub[a.index() * q + b.index()] = f.sub(a, b).index() as u8;
            }
        }
        let mut scaled = Vec::with_capacity(k * q);
        for i in 0..k {
            for a in f.elements() {
                scaled.push(gen.columns().iter().map(|c| f.mul(a, c[i]).index() as u8).collect());
            }
        }
        Generic { q, k, n, add, sub, scaled }
    }

    fn accumulate(&self, s: &mut [u8], i: usize, a: usize) {
        let row = &self.scaled[i * self.q + a];
        for (x, &y) in s.iter_mut().zip(row) {
            *x = self.add[*x as usize * self.q + y as usize];
        }
    }
}

impl RangeSweep for Generic {
    fn sweep(&self, lo: u64, hi: u64, out: &mut dyn FnMut(u32)) {
        let q = self.q as u64;
        let mut s = vec![0u8; self.n];
        let mut t = lo;
        while t < hi {
            let (lead, offset) = locate(q, self.k, t).expect("in range");
            let block_end = t - offset + q.pow((self.k - 1 - lead) as u32);
            s.fill(0);
            self.accumulate(&mut s, lead, 1);
            let mut digits = vec![0usize; self.k];
            let mut rest = offset;
            for i in (lead + 1..self.k).rev() {
                digits[i] = (rest % q) as usize;
                rest /= q;
                if digits[i] != 0 {
                    self.accumulate(&mut s, i, digits[i]);
                }
            }
            loop {
                out(s.iter().filter(|&&x| x != 0).count() as u32);
                t += 1;
                if t >= hi || t >= block_end {
                    break;
                }
                for i in (lead + 1..self.k).rev() {
                    let old = digits[i];
                    let new = (old + 1) % self.q;
                    digits[i] = new;
                    let delta = self.sub[new * self.q + old] as usize;
                    self.accumulate(&mut s, i, delta);
                    if new != 0 {
                        break;
                    }
                }
            }
        }
    }
}

fn sweeper(gen: &GeneratorMatrix, kernel: Kernel) -> Result<Box<dyn RangeSweep>> {
    let q = gen.field().order();
    Ok(match kernel {
        Kernel::Auto if q == 2 => Box::new(Gf2Rows::new(gen)),
        Kernel::Auto | Kernel::Generic => Box::new(Generic::new(gen)),
        Kernel::PointParity => {
            if q != 2 || gen.k() > 64 {
                return Err(Error::usage("the point-parity kernel needs q = 2 and k <= 64"));
            }
            let columns = gen
                .columns()
                .iter()
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, x)| acc | ((x.index() as u64) << i))
                })
                .collect();
            Box::new(Gf2Parity { k: gen.k(), columns })
        }
    })
}

fn chunks(classes: u64) -> Vec<(u64, u64)> {
    (0..classes.div_ceil(CHUNK))
        .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(classes)))
        .collect()
}

/// The weight of every class, in class order.
pub fn class_weights(gen: &GeneratorMatrix, opts: &SweepOptions) -> Result<Vec<u32>> {
    let classes = checked_classes(gen, opts)?;
    let sw = sweeper(gen, opts.kernel)?;
    let len = usize::try_from(classes).map_err(|_| Error::usage("too many classes"))?;
    let mut weights = vec![0u32; len];
    opts.run(|| {
        weights
            .par_chunks_mut(CHUNK as usize)
            .enumerate()
            .for_each(|(i, slot)| {
                let lo = i as u64 * CHUNK;
                let hi = lo + slot.len() as u64;
                let mut it = slot.iter_mut();
                sw.sweep(lo, hi, &mut |w| *it.next().unwrap() = w);
            })
    })?;
    Ok(weights)
}

/// The complete weight distribution of the code.
pub fn weight_distribution(gen: &GeneratorMatrix, opts: &SweepOptions) -> Result<WeightDistribution> {
    let classes = checked_classes(gen, opts)?;
    let sw = sweeper(gen, opts.kernel)?;
    let n = gen.n();
    let hist = opts.run(|| {
        chunks(classes)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut h = vec![0u64; n + 1];
                sw.sweep(lo, hi, &mut |w| h[w as usize] += 1);
                h
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    })?;
    let q1 = BigUint::from(gen.spec().q() - 1);
    let mut counts = BTreeMap::new();
    counts.insert(0, BigUint::one());
    for (w, &c) in hist.iter().enumerate() {
        if c > 0 {
            *counts.entry(w as u64).or_insert_with(BigUint::zero) += BigUint::from(c) * &q1;
        }
    }
    Ok(WeightDistribution {
        spec: gen.spec().clone(),
        n: n as u64,
        counts,
        complete: true,
    })
}

/// Codeword counts by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub spec: CodeSpec,
    pub n: u64,
    pub counts: BTreeMap<u64, BigUint>,
    /// Whether every codeword was counted.
    pub complete: bool,
}

impl WeightDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest nonzero weight.
    pub fn min_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn second_weight(&self) -> Option<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).nth(1)
    }

    pub fn weights(&self) -> Vec<u64> {
        self.counts.keys().copied().collect()
    }

    pub fn count(&self, w: u64) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_default()
    }

    /// Named sanity checks: total `q^k`, one zero word, counts divisible by
    /// `q - 1`, weights within `[d, n]`.
    pub fn sanity(&self) -> Vec<(&'static str, bool)> {
        let q = self.spec.q();
        let k = self.spec.k();
        let d = super::min_distance(&self.spec);
        vec![
            (
                "total_is_q_pow_k",
                !self.complete || self.total() == num_traits::pow(BigUint::from(q), k),
            ),
            ("one_zero_word", self.count(0) == BigUint::one()),
            (
                "counts_divisible_by_q_minus_1",
                self.counts
                    .iter()
                    .all(|(&w, c)| w == 0 || (c % BigUint::from(q - 1)).is_zero()),
            ),
            (
                "weights_between_d_and_n",
                self.counts
                    .keys()
                    .all(|&w| w == 0 || (BigUint::from(w) >= d && w <= self.n)),
            ),
        ]
    }

    /// Dual distribution `B_0..B_n` by the MacWilliams transform, as exact
    /// rationals scaled by `q^k`: returns the numerators `q^k B_j`.
    pub fn macwilliams_numerators(&self) -> Vec<BigInt> {
        let n = self.n as usize;
        let q = BigInt::from(self.spec.q());
        let q1 = &q - 1;
        let mut out = vec![BigInt::zero(); n + 1];
        for (&x, a) in &self.counts {
            let a = BigInt::from(a.clone());
            let x = BigInt::from(x);
            // Krawtchouk K_j(x) by the three-term recurrence in j
            let mut prev = BigInt::zero();
            let mut cur = BigInt::one();
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += &a * &cur;
                let jb = BigInt::from(j);
                let nj = BigInt::from(n - j);
                let next = ((&nj * &q1 + &jb - &q * &x) * &cur - &q1 * (&nj + 1) * &prev) / (&jb + 1);
                prev = std::mem::replace(&mut cur, next);
            }
        }
        out
    }

    /// `B_j` when every transform coefficient is a nonnegative integer.
    pub fn macwilliams_dual(&self) -> Result<Vec<BigUint>> {
        let size = BigInt::from(num_traits::pow(BigUint::from(self.spec.q()), self.spec.k()));
        self.macwilliams_numerators()
            .into_iter()
            .enumerate()
            .map(|(j, num)| {
                if !(&num % &size).is_zero() {
                    return Err(Error::domain(format!("dual coefficient B_{j} is not an integer")));
                }
                let b = num / &size;
                if b.is_negative() {
                    return Err(Error::domain(format!("dual coefficient B_{j} is negative")));
                }
                Ok(b.to_biguint().expect("nonnegative"))
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let counts: Map<String, Value> = self
            .counts
            .iter()
            .map(|(w, c)| (w.to_string(), Value::String(c.to_string())))
            .collect();
        json!({
            "spec": self.spec.to_json(),
            "counts": counts,
            "complete": self.complete,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["weight", "count"]).expect("in-memory write");
        for (k, c) in &self.counts {
            w.write_record([k.to_string(), c.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_generator;
    use crate::gf::Field;
    use crate::qcombin::GrassmannParams;

    fn gen(ell: usize, m: usize, q: u32) -> GeneratorMatrix {
        let p = GrassmannParams::new(ell, m, Field::of_order(q).unwrap()).unwrap();
        build_generator(&CodeSpec::grassmann(&p).unwrap()).unwrap()
    }

    fn counts(d: &WeightDistribution) -> Vec<(u64, u64)> {
        d.counts.iter().map(|(&w, c)| (w, c.to_u64().unwrap())).collect()
    }

    #[test]
    fn class_order() {
        let reps: Vec<Vec<usize>> = (0..4)
            .map(|t| class_representative(3, 2, t).unwrap().iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(reps, [vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert!(class_representative(3, 2, 4).is_err());
        assert_eq!(class_count(2, 20), BigUint::from((1u32 << 20) - 1));
        for t in 0..7 {
            let c = class_representative(2, 3, t).unwrap();
            let v = c.iter().fold(0, |acc, e| acc * 2 + e.index() as u64);
            assert_eq!(v, t + 1);
        }
    }

    #[test]
    fn small_distributions() {
        let opts = SweepOptions::default();
        assert_eq!(counts(&weight_distribution(&gen(2, 4, 2), &opts).unwrap()), [(0, 1), (16, 35), (20, 28)]);
        assert_eq!(counts(&weight_distribution(&gen(1, 3, 2), &opts).unwrap()), [(0, 1), (4, 7)]);
        assert_eq!(counts(&weight_distribution(&gen(1, 4, 2), &opts).unwrap()), [(0, 1), (8, 15)]);
        let d = weight_distribution(&gen(2, 4, 3), &opts).unwrap();
        assert_eq!(d.min_weight(), Some(81));
        assert_eq!(d.count(81).to_u64(), Some(260));
        assert_eq!(d.second_weight(), Some(90));
        assert_eq!(d.total().to_u64(), Some(729));
        assert!(d.sanity().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn kernels_agree_with_direct_evaluation() {
        for (ell, m, q) in [(2, 4, 2), (2, 5, 2), (2, 4, 3), (2, 4, 4), (1, 3, 5)] {
            let g = gen(ell, m, q);
            let base = class_weights(&g, &SweepOptions::default()).unwrap();
            for (t, &w) in base.iter().enumerate() {
                let c = class_representative(q as u64, g.k(), t as u64).unwrap();
                assert_eq!(g.weight_of_message(&c), w as usize);
            }
            let generic = SweepOptions { kernel: Kernel::Generic, ..Default::default() };
            assert_eq!(class_weights(&g, &generic).unwrap(), base);
            if q == 2 {
                let parity = SweepOptions { kernel: Kernel::PointParity, ..Default::default() };
                assert_eq!(class_weights(&g, &parity).unwrap(), base);
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = gen(3, 5, 2);
        let one = SweepOptions { threads: Some(1), ..Default::default() };
        let three = SweepOptions { threads: Some(3), ..Default::default() };
        let a = weight_distribution(&g, &one).unwrap();
        assert_eq!(a.to_json().to_string(), weight_distribution(&g, &three).unwrap().to_json().to_string());
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen(2, 4, 2);
        let tight = SweepOptions { budget: 100, ..Default::default() };
        match weight_distribution(&g, &tight) {
            Err(Error::Budget { required, .. }) => assert_eq!(required, 63 * 35),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn macwilliams_on_the_simplex_code() {
        // the dual of the [7,3] simplex code is the [7,4] Hamming code
        let d = weight_distribution(&gen(1, 3, 2), &SweepOptions::default()).unwrap();
        let b: Vec<u64> = d.macwilliams_dual().unwrap().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(b, [1, 0, 0, 7, 7, 0, 0, 1]);
        // a distribution that is not a linear code's fails
        let mut bad = d.clone();
        bad.counts.insert(4, BigUint::from(6u32));
        bad.counts.insert(3, BigUint::from(1u32));
        assert!(bad.macwilliams_dual().is_err());
    }

    #[test]
    fn macwilliams_low_coefficients_match_direct_counts() {
        let g = gen(2, 4, 2);
        let d = weight_distribution(&g, &SweepOptions::default()).unwrap();
        let b = d.macwilliams_dual().unwrap();
        // dual code: x in F_2^35 with G x = 0; count by weight over the kernel basis
        let f = g.field().clone();
        let basis = crate::linalg::nullspace(&f, &g.rows(), g.n());
        assert_eq!(basis.len(), 29);
        // too many words to list, so check B_1, B_2 by hand: no zero or repeated columns
        assert!(b[1].is_zero() && b[2].is_zero());
        assert_eq!(b[0], BigUint::one());
        let total: BigUint = b.iter().sum();
        assert_eq!(total, BigUint::one() << 29);
        // B_3 counts the collinear triples of points on G(2, 4)
        let cols: Vec<u64> = g
            .columns()
            .iter()
            .map(|c| c.iter().enumerate().fold(0, |a, (i, x)| a | ((x.index() as u64) << i)))
            .collect();
        let mut triples = 0u64;
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                for l in j + 1..cols.len() {
                    triples += (cols[i] ^ cols[j] ^ cols[l] == 0) as u64;
                }
            }
        }
        assert_eq!(b[3].to_u64(), Some(triples));
    }

    #[test]
    fn json_and_csv() {
        let d = weight_distribution(&gen(2, 4, 2), &SweepOptions::default()).unwrap();
        let j = d.to_json();
        assert_eq!(j["counts"].to_string(), r#"{"0":"1","16":"35","20":"28"}"#);
        assert_eq!(j["complete"], Value::Bool(true));
        assert_eq!(d.to_csv(), "weight,count\n0,1\n16,35\n20,28\n");
    }
}

//! Machine checks of the minimum-weight classification, the second-weight
//! gap, the string decomposition and the counting lemmas they rest on.
//! Every suite returns a [`Report`]; failures carry witness functionals.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::engine::{class_count, class_representative, class_weights, weight_distribution, SweepOptions};
use super::{build_generator, codeword_weight, min_distance, second_min_weight, CodeSpec};
use crate::error::{Error, Result};
use crate::exterior::{check_functional, functional_to_wedge, point_wedge, DualFunctional, WedgeElement};
use crate::gf::{Elem, Field};
use crate::grassmann::strings::{self, string_fiber, string_label};
use crate::grassmann::{enumerate_grassmannian, EchelonMatrix, PluckerEmbedding, PluckerVector};
use crate::linalg;
use crate::qcombin::{
    e_bound, e_prime_bound, gaussian_binomial, verify_e_inequalities, verify_gaussian_identities, GrassmannParams, IndexTuple,
};
use crate::report::{push_witness, Report};

fn params_json(p: &GrassmannParams) -> Value {
    json!({ "q": p.field.spec().to_string(), "ell": p.ell.to_string(), "m": p.m.to_string() })
}

fn pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

fn small(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64 at enumerable sizes")
}

/// One representative per scalar class of functionals supported on `coords`.
fn class_functionals(
    params: &GrassmannParams,
    coords: &[IndexTuple],
    cost_per_class: usize,
    opts: &SweepOptions,
    what: &str,
) -> Result<Vec<DualFunctional>> {
    let q = params.q();
    let classes = class_count(q, coords.len());
    let required = &classes * BigUint::from(cost_per_class.max(1));
    if required > BigUint::from(opts.budget) {
        return Err(Error::Budget {
            what: what.to_string(),
            required: required.to_u128().unwrap_or(u128::MAX),
            budget: opts.budget,
        });
    }
    (0..small(&classes))
        .map(|t| {
            let rep = class_representative(q, coords.len(), t)?;
            let terms: Vec<(IndexTuple, Elem)> = coords.iter().cloned().zip(rep).collect();
            DualFunctional::from_terms(params, &terms)
        })
        .collect()
}

/// Points with their Plücker vectors.
struct Points {
    points: Vec<EchelonMatrix>,
    coords: Vec<PluckerVector>,
}

impl Points {
    fn of(params: &GrassmannParams) -> Result<Self> {
        let emb = PluckerEmbedding::new(params);
        let points = enumerate_grassmannian(params)?;
        let coords = points.iter().map(|p| emb.embed(p)).collect();
        Ok(Points { points, coords })
    }

    /// Indices of the points on `F = 0`.
    fn zeros(&self, f: &DualFunctional) -> Vec<bool> {
        self.coords.iter().map(|p| f.evaluate(p).is_zero()).collect()
    }
}

/// Minimum-weight codewords are exactly the decomposable hyperplanes.
pub fn verify_nogin(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let spec = CodeSpec::grassmann(params)?;
    let gen = build_generator(&spec)?;
    let weights = class_weights(&gen, opts)?;
    let q = params.q();
    let k = gen.k();
    let dec: Vec<bool> = opts.run(|| {
        (0..weights.len() as u64)
            .into_par_iter()
            .map(|t| {
                let f = DualFunctional::new(params, class_representative(q, k, t).expect("in range"))
                    .expect("representatives are nonzero");
                check_functional(&f).expect("nonzero functional")
            })
            .collect()
    })?;
    let d = small(&min_distance(&spec));
    let witness = |t: usize| {
        let f = DualFunctional::new(params, class_representative(q, k, t as u64).unwrap()).unwrap();
        format!("{f} (weight {})", weights[t])
    };
    let mut below = Vec::new();
    let mut mismatch = Vec::new();
    let (mut n_min, mut n_dec) = (0u64, 0u64);
    for (t, (&w, &is_dec)) in weights.iter().zip(&dec).enumerate() {
        let w = w as u64;
        if w < d {
            push_witness(&mut below, || witness(t));
        }
        if (w == d) != is_dec {
            push_witness(&mut mismatch, || witness(t));
        }
        n_min += (w == d) as u64;
        n_dec += is_dec as u64;
    }
    let expected = params.num_points();
    let mut r = Report::new("nogin", params_json(params));
    r.check_with_witnesses("weight_at_least_q_pow_l(m-l)", below, json!({ "d": d.to_string() }));
    r.check_with_witnesses(
        "min_weight_iff_decomposable",
        mismatch,
        json!({
            "classes": weights.len().to_string(),
            "min_weight_classes": n_min.to_string(),
            "decomposable_classes": n_dec.to_string(),
        }),
    );
    r.check(
        "decomposable_class_count",
        BigUint::from(n_dec) == expected,
        json!({ "found": n_dec.to_string(), "expected": expected.to_string() }),
    );
    Ok(r)
}

/// No weight strictly between `d` and `d_2`, and `d_2` occurs.
pub fn verify_second_weight(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let spec = CodeSpec::grassmann(params)?;
    let d2 = small(&second_min_weight(&spec)?);
    let d = small(&min_distance(&spec));
    let dist = weight_distribution(&build_generator(&spec)?, opts)?;
    let mut r = Report::new("second", params_json(params));
    let inside: Vec<String> = dist
        .weights()
        .into_iter()
        .filter(|&w| w > d && w < d2)
        .map(|w| w.to_string())
        .collect();
    r.check("min_weight", dist.min_weight() == Some(d), json!({ "expected": d.to_string() }));
    r.check_with_witnesses("gap_is_empty", inside, json!({ "open_interval": [d.to_string(), d2.to_string()] }));
    r.check(
        "second_weight_attained",
        dist.second_weight() == Some(d2),
        json!({
            "expected": d2.to_string(),
            "found": dist.second_weight().map(|w| w.to_string()),
            "count": dist.count(d2).to_string(),
        }),
    );
    add_distribution_checks(&mut r, &dist);
    Ok(r)
}

fn add_distribution_checks(r: &mut Report, dist: &super::WeightDistribution) {
    for (name, ok) in dist.sanity() {
        r.check(name, ok, Value::Null);
    }
    let mw = dist.macwilliams_dual();
    r.check(
        "macwilliams_integral_nonnegative",
        mw.is_ok(),
        match &mw {
            Ok(_) => Value::Null,
            Err(e) => Value::String(e.to_string()),
        },
    );
}

/// The section count of one functional supported on `{a : a_l = m}`:
/// each string meets `Π` as often as `G(l-1, V_{m-1})` meets `Π̌`.
pub fn verify_string_section(functional: &DualFunctional) -> Result<Report> {
    let params = functional.params();
    let (ell, m) = (params.ell, params.m);
    if ell == 0 || ell == m {
        return Err(Error::domain("the string decomposition needs 1 <= l < m"));
    }
    if let Some(b) = functional.support().iter().find(|b| b.entries()[ell - 1] != m) {
        return Err(Error::domain(format!(
            "X:{b} does not end in m = {m}; the hyperplane does not contain G(l, V_(m-1))"
        )));
    }
    let peeled = params.peeled()?;
    let terms: Vec<(IndexTuple, Elem)> = functional
        .support()
        .iter()
        .map(|a| Ok((a.truncate()?, functional.coeff(a))))
        .collect::<Result<_>>()?;
    let check = DualFunctional::from_terms(&peeled, &terms)?;
    let small_pts = Points::of(&peeled)?;
    let target = small_pts.zeros(&check).iter().filter(|z| **z).count();
    let emb = PluckerEmbedding::new(params);
    let small_emb = PluckerEmbedding::new(&peeled);

    let mut r = Report::new("string_section", json!({ "params": params_json(params), "functional": functional.to_json() }));
    let mut unequal = Vec::new();
    let mut pointwise = Vec::new();
    let mut sizes = Vec::new();
    for nu in strings::all_labels(&params.field, m - ell) {
        let fiber = string_fiber(params, &nu)?;
        let mut hits = 0usize;
        for x in &fiber {
            let big = functional.evaluate(&emb.embed(x));
            let tau = strings::project_tau(x)?;
            if big != check.evaluate(&small_emb.embed(&tau)) {
                push_witness(&mut pointwise, || format!("{} in string {}", x.format(&params.field), nu.format(&params.field)));
            }
            hits += big.is_zero() as usize;
        }
        if hits != target {
            push_witness(&mut unequal, || format!("string {}: {hits}", nu.format(&params.field)));
        }
        sizes.push(hits.to_string());
    }
    r.check_with_witnesses("evaluation_law", pointwise, Value::Null);
    r.check_with_witnesses(
        "every_string_matches_check_section",
        unequal,
        json!({ "check_section": target.to_string(), "per_string": sizes }),
    );
    Ok(r)
}

/// The partition of `G(l, V_m)` into `G(l, V_{m-1})` and strings, the
/// coordinate law, the section correspondence for every functional
/// supported on `{a : a_l = m}`, and the probe that none of those
/// functionals vanishes on a whole string.
pub fn verify_strings(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let (ell, m) = (params.ell, params.m);
    if ell == 0 || ell == m {
        return Err(Error::domain("the string decomposition needs 1 <= l < m"));
    }
    let q = params.q();
    let mut r = Report::new("strings", params_json(params));
    let part = strings::partition(params)?;
    let fiber_size = gaussian_binomial(m - 1, ell - 1, q);

    let mut bad_size = Vec::new();
    let mut bad_fiber = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut overlaps = 0usize;
    for (nu, pts) in &part.strings {
        if BigUint::from(pts.len()) != fiber_size {
            push_witness(&mut bad_size, || format!("{}: {}", nu.format(&params.field), pts.len()));
        }
        let mut built = string_fiber(params, nu)?;
        let mut got = pts.clone();
        built.sort();
        got.sort();
        if built != got {
            push_witness(&mut bad_fiber, || nu.format(&params.field));
        }
        for x in pts {
            overlaps += !seen.insert(x.clone()) as usize;
        }
    }
    r.check_with_witnesses("string_sizes", bad_size, json!({ "expected": fiber_size.to_string() }));
    r.check_with_witnesses("strings_equal_phi_images", bad_fiber, Value::Null);
    let sub: Vec<EchelonMatrix> = enumerate_grassmannian(&params.shrunk()?)?
        .iter()
        .map(strings::embed_in_hyperplane)
        .collect();
    let mut sub_sorted = sub.clone();
    sub_sorted.sort();
    let mut hyper = part.hyperplane.clone();
    hyper.sort();
    for x in &sub {
        overlaps += !seen.insert(x.clone()) as usize;
    }
    r.check("hyperplane_part_is_sub_grassmannian", sub_sorted == hyper, Value::Null);
    r.check("parts_are_disjoint", overlaps == 0, json!({ "overlaps": overlaps.to_string() }));
    r.check(
        "parts_cover_everything",
        BigUint::from(seen.len()) == params.num_points(),
        json!({ "covered": seen.len().to_string(), "points": params.num_points().to_string() }),
    );

    // coordinate law X_a(M) = X_{a check}(tau(M))
    let peeled = params.peeled()?;
    let emb = PluckerEmbedding::new(params);
    let small_emb = PluckerEmbedding::new(&peeled);
    let last: Vec<IndexTuple> = params
        .index_tuples()
        .into_iter()
        .filter(|a| a.entries()[ell - 1] == m)
        .collect();
    let mut law = Vec::new();
    for (_, pts) in &part.strings {
        for x in pts {
            let big = emb.embed(x);
            let small = small_emb.embed(&strings::project_tau(x)?);
            if last.iter().any(|a| big.get(a) != small.get(&a.truncate().unwrap())) {
                push_witness(&mut law, || x.format(&params.field));
            }
        }
    }
    r.check_with_witnesses("coordinate_law", law, Value::Null);

    // section correspondence for every functional on {a : a_l = m}
    let per_class = params.num_points().to_usize().unwrap_or(usize::MAX);
    let funcs = class_functionals(params, &last, per_class, opts, "string sections")?;
    let mut failed = Vec::new();
    for f in &funcs {
        let rep = verify_string_section(f)?;
        if !rep.pass {
            push_witness(&mut failed, || f.to_string());
        }
    }
    r.check_with_witnesses(
        "section_correspondence",
        failed,
        json!({ "functionals": funcs.len().to_string() }),
    );

    // no nonzero functional on {a : a_l = m} vanishes on a whole string
    let mut full = Vec::new();
    for f in &funcs {
        for (nu, pts) in &part.strings {
            if pts.iter().all(|x| f.evaluate(&emb.embed(x)).is_zero()) {
                push_witness(&mut full, || format!("{f} on string {}", nu.format(&params.field)));
            }
        }
    }
    r.check_with_witnesses(
        "no_functional_contains_a_string",
        full,
        json!({ "functionals": funcs.len().to_string() }),
    );
    if let Ok(a) = string_label(&EchelonMatrix::pivot_only(&IndexTuple::maximal(ell, m)?)) {
        r.check("top_cell_label_is_zero", a.values().iter().all(|x| x.is_zero()), Value::Null);
    }
    Ok(r)
}

/// The `(q^m - 1)/(q - 1)` hyperplanes `V_{m-1}` as covectors `u`, one per class.
fn hyperplane_covectors(field: &Field, m: usize) -> Vec<Vec<Elem>> {
    let q = field.order() as u64;
    (0..small(&class_count(q, m)))
        .map(|t| class_representative(q, m, t).expect("in range"))
        .collect()
}

/// Whether every row of `x` lies in `ker u`.
fn inside(field: &Field, x: &EchelonMatrix, u: &[Elem]) -> bool {
    (0..x.ell()).all(|i| {
        x.row(i)
            .iter()
            .zip(u)
            .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            .is_zero()
    })
}

struct Incidence {
    /// `|Π ∩ G(l, V_{m-1})|` for each `V_{m-1}`.
    counts: Vec<usize>,
    total: usize,
}

fn incidence(pts: &Points, membership: &[Vec<bool>], f: &DualFunctional) -> Incidence {
    let zeros = pts.zeros(f);
    let counts = membership
        .iter()
        .map(|mem| mem.iter().zip(&zeros).filter(|(a, b)| **a && **b).count())
        .collect();
    Incidence {
        counts,
        total: zeros.iter().filter(|z| **z).count(),
    }
}

/// The incidence bound `|G ∩ Π| <= a (q^m - 1)/(q^{m-l} - 1)` for every
/// hyperplane class; for `l = m - 2`, also that nondecomposable hyperplanes
/// meet every `G(m-2, V_{m-1})` in `e(m-2, m-1)` points.
pub fn verify_zanella(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let (ell, m) = (params.ell, params.m);
    if ell == 0 || ell >= m {
        return Err(Error::domain("the incidence bound needs 1 <= l < m"));
    }
    let pts = Points::of(params)?;
    let covectors = hyperplane_covectors(&params.field, m);
    let membership: Vec<Vec<bool>> = covectors
        .iter()
        .map(|u| pts.points.iter().map(|x| inside(&params.field, x, u)).collect())
        .collect();
    let cost = pts.points.len() * (covectors.len() + 1);
    let funcs = class_functionals(params, &params.index_tuples(), cost, opts, "incidence sweep")?;
    let q = params.q();
    let qm = BigUint::from(q).pow(m as u32) - 1u32;
    let qml = BigUint::from(q).pow((m - ell) as u32) - 1u32;
    let cor_target = if ell + 2 == m {
        Some(e_bound(ell, m - 1, q)?)
    } else {
        None
    };

    let mut bound = Vec::new();
    let mut equality = Vec::new();
    let mut double = Vec::new();
    let mut cor = Vec::new();
    let mut cor_bound = Vec::new();
    let mut cor_violations = 0usize;
    let mut cor_full = true;
    let section_size = gaussian_binomial(m - 1, ell, q);
    let e_prime = if ell + 2 == m { e_prime_bound(ell, m, q)? } else { BigInt::from(0) };
    let mut equality_cases = 0usize;
    for f in &funcs {
        let inc = incidence(&pts, &membership, f);
        let a = *inc.counts.iter().max().unwrap();
        let lhs = BigUint::from(inc.total) * &qml;
        let rhs = BigUint::from(a) * &qm;
        if lhs > rhs {
            push_witness(&mut bound, || format!("{f}: {} > {a} (q^m-1)/(q^(m-l)-1)", inc.total));
        }
        if inc.counts.iter().all(|&c| c == a) {
            equality_cases += 1;
            if lhs != rhs {
                push_witness(&mut equality, || f.to_string());
            }
        }
        let sum: usize = inc.counts.iter().sum();
        if BigUint::from(sum) * (q - 1) != lhs {
            push_witness(&mut double, || f.to_string());
        }
        if let Some(target) = &cor_target {
            if !check_functional(f)? {
                let off: Vec<usize> = inc.counts.iter().copied().filter(|&c| BigInt::from(c) != *target).collect();
                if !off.is_empty() {
                    push_witness(&mut cor, || f.to_string());
                    cor_violations += 1;
                    cor_full &= off.iter().all(|&c| BigUint::from(c) == section_size);
                }
                if BigInt::from(inc.total) > e_prime {
                    push_witness(&mut cor_bound, || format!("{f}: meets G in {}", inc.total));
                }
            }
        }
    }
    let mut r = Report::new("zanella", params_json(params));
    r.check_with_witnesses(
        "incidence_bound",
        bound,
        json!({ "functionals": funcs.len().to_string(), "hyperplanes": covectors.len().to_string() }),
    );
    r.check_with_witnesses(
        "equality_when_all_sections_equal",
        equality,
        json!({ "cases": equality_cases.to_string() }),
    );
    r.check_with_witnesses("double_count", double, Value::Null);
    if let Some(target) = cor_target {
        // Fails for m >= 5: a nondecomposable z in Λ^2 V_{m-1} gives a
        // hyperplane containing all of G(m-2, V_{m-1}).
        r.check_with_witnesses(
            "codim_two_nondecomposable_sections",
            cor,
            json!({
                "expected": target.to_string(),
                "violating_classes": cor_violations.to_string(),
                "violations_are_full_sections": cor_full,
            }),
        );
        r.check_with_witnesses(
            "codim_two_nondecomposable_bound",
            cor_bound,
            json!({ "e_prime": e_prime.to_string() }),
        );
    }
    Ok(r)
}

/// Gaussian-binomial identities and the `e`, `e'` relations at one `(l, m, q)`.
pub fn verify_identities(params: &GrassmannParams) -> Result<Report> {
    let mut r = Report::new("identities", params_json(params));
    add_identities(&mut r, params.ell, params.m, params.q())?;
    Ok(r)
}

fn add_identities(r: &mut Report, ell: usize, m: usize, q: u64) -> Result<()> {
    let mut checks = verify_gaussian_identities(m, ell, q)?;
    checks.extend(verify_e_inequalities(ell, m, q)?);
    for c in checks {
        let detail = json!({ "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string() });
        r.check(c.identity, c.pass, detail);
    }
    Ok(())
}

/// The identities for every `1 <= l <= m <= max_m` and each `q`.
pub fn verify_identity_table(max_m: usize, qs: &[u64]) -> Result<Report> {
    let mut r = Report::new(
        "identities",
        json!({ "max_m": max_m.to_string(), "q": qs.iter().map(|q| q.to_string()).collect::<Vec<_>>() }),
    );
    for &q in qs {
        for m in 1..=max_m {
            for ell in 1..=m {
                add_identities(&mut r, ell, m, q)?;
            }
        }
    }
    Ok(r)
}

/// Every nondecomposable hyperplane meets `G(2, V_4)` in `q^3 + q^2 + q + 1` points.
pub fn verify_l2(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    if (params.ell, params.m) != (2, 4) {
        return Err(Error::domain("the two-weight check is for G(2, V_4)"));
    }
    let spec = CodeSpec::grassmann(params)?;
    let gen = build_generator(&spec)?;
    let weights = class_weights(&gen, opts)?;
    let q = params.q();
    let target = q * q * q + q * q + q + 1;
    let n = gen.n() as u64;
    let mut bad = Vec::new();
    let mut nondec = 0usize;
    for (t, &w) in weights.iter().enumerate() {
        let f = DualFunctional::new(params, class_representative(q, gen.k(), t as u64)?)?;
        if !check_functional(&f)? {
            nondec += 1;
            if n - w as u64 != target {
                push_witness(&mut bad, || format!("{f}: meets G in {}", n - w as u64));
            }
        }
    }
    let mut r = Report::new("l2", params_json(params));
    r.check_with_witnesses(
        "nondecomposable_sections",
        bad,
        json!({
            "expected": target.to_string(),
            "weight": (n - target).to_string(),
            "nondecomposable_classes": nondec.to_string(),
        }),
    );
    r.check("nondecomposable_classes_exist", nondec > 0, Value::Null);
    Ok(r)
}

/// Members of the family `c_θ X_θ + Σ c_a X_a + X_γ` (sum over
/// `Δ(θ) \ {γ}`, `c_θ != 0`), all of them when there are at most `samples`,
/// otherwise a seeded random sample.
pub fn attained_family(params: &GrassmannParams, samples: usize, seed: u64) -> Result<Vec<DualFunctional>> {
    let theta = IndexTuple::theta(params.ell, params.m)?;
    let gamma = IndexTuple::sub_grassmannian(params.ell, params.m)?;
    let others: Vec<IndexTuple> = theta.delta_set().into_iter().filter(|a| *a != gamma).collect();
    let field = &params.field;
    let q = params.q() as usize;
    let build = |c_theta: Elem, cs: &[Elem]| {
        let mut terms = vec![(theta.clone(), c_theta), (gamma.clone(), Elem::ONE)];
        terms.extend(others.iter().cloned().zip(cs.iter().copied()));
        DualFunctional::from_terms(params, &terms)
    };
    let total = (q - 1).checked_mul(q.checked_pow(others.len() as u32).unwrap_or(usize::MAX));
    if total.is_some_and(|t| t <= samples) {
        let mut out = Vec::new();
        for c_theta in field.nonzero_elements() {
            for mut idx in 0..q.pow(others.len() as u32) {
                let cs: Vec<Elem> = (0..others.len())
                    .map(|_| {
                        let e = field.from_index(idx % q).unwrap();
                        idx /= q;
                        e
                    })
                    .collect();
                out.push(build(c_theta, &cs)?);
            }
        }
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let c_theta = field.from_index(rng.gen_range(1..q)).unwrap();
            let cs: Vec<Elem> = others.iter().map(|_| field.from_index(rng.gen_range(0..q)).unwrap()).collect();
            build(c_theta, &cs)
        })
        .collect()
}

/// The attained family has weight `d_2` and meets `Ω_θ` in
/// `n_θ - q^{l(m-l)-2}` points. For `l >= 3` the lift of the family one
/// step down (coefficients re-indexed by appending `m`) is checked too.
pub fn verify_attained(params: &GrassmannParams, samples: usize, seed: u64) -> Result<Report> {
    let spec = CodeSpec::grassmann(params)?;
    let d2 = small(&second_min_weight(&spec)?);
    let gen = build_generator(&spec)?;
    let theta = IndexTuple::theta(params.ell, params.m)?;
    let omega: Vec<usize> = gen
        .points()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.pivots().leq_unchecked(&theta))
        .map(|(i, _)| i)
        .collect();
    let q = params.q();
    let target_omega = omega.len() as u64 - small(&pow(q, theta.delta()));
    let emb = PluckerEmbedding::new(params);
    let omega_coords: Vec<PluckerVector> = omega.iter().map(|&i| emb.embed(&gen.points()[i])).collect();

    let family = attained_family(params, samples, seed)?;
    let mut bad_weight = Vec::new();
    let mut bad_omega = Vec::new();
    for f in &family {
        let w = codeword_weight(f, &gen)? as u64;
        if w != d2 {
            push_witness(&mut bad_weight, || format!("{f}: weight {w}"));
        }
        let meet = omega_coords.iter().filter(|p| f.evaluate(p).is_zero()).count() as u64;
        if meet != target_omega {
            push_witness(&mut bad_omega, || format!("{f}: meets Omega_theta in {meet}"));
        }
    }
    let mut r = Report::new("attained", params_json(params));
    r.check_with_witnesses(
        "family_weight",
        bad_weight,
        json!({ "expected": d2.to_string(), "members": family.len().to_string(), "theta": theta.to_string() }),
    );
    r.check_with_witnesses(
        "family_meets_omega_theta",
        bad_omega,
        json!({ "n_theta": omega.len().to_string(), "expected": target_omega.to_string() }),
    );

    if params.ell >= 3 {
        let lower = params.peeled()?;
        let lifted: Vec<DualFunctional> = attained_family(&lower, samples, seed)?
            .iter()
            .map(|g| {
                let terms: Vec<(IndexTuple, Elem)> =
                    g.support().iter().map(|a| (a.extend_last(), g.coeff(a))).collect();
                DualFunctional::from_terms(params, &terms)
            })
            .collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for f in &lifted {
            let w = codeword_weight(f, &gen)? as u64;
            if w != d2 {
                push_witness(&mut bad, || format!("{f}: weight {w}"));
            }
        }
        r.check_with_witnesses("lifted_family_weight", bad, json!({ "members": lifted.len().to_string() }));
    }
    Ok(r)
}

/// Every Schubert code `C_a(l, m)`: length, dimension, full rank, and
/// minimum distance `q^{δ(a)}` by a full sweep.
pub fn verify_schubert(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let mut r = Report::new("schubert", params_json(params));
    for alpha in params.index_tuples() {
        let spec = CodeSpec::schubert(params, &alpha)?;
        let gen = build_generator(&spec)?;
        let dist = weight_distribution(&gen, opts)?;
        let d = min_distance(&spec);
        r.check(
            format!("shape/{alpha}"),
            BigUint::from(gen.n()) == spec.n() && gen.rank() == spec.k() && !gen.has_zero_column(),
            json!({ "n": gen.n().to_string(), "k": gen.k().to_string() }),
        );
        r.check(
            format!("min_distance/{alpha}"),
            dist.min_weight().map(BigUint::from) == Some(d.clone()),
            json!({ "expected": d.to_string(), "found": dist.min_weight().map(|w| w.to_string()) }),
        );
    }
    Ok(r)
}

/// Direct minor evaluation against the wedge pairing, for every functional
/// class and every point.
pub fn verify_pairing(params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let pts = Points::of(params)?;
    let wedges: Vec<WedgeElement> = pts.points.iter().map(|x| point_wedge(&params.field, x)).collect();
    let funcs = class_functionals(
        params,
        &params.index_tuples(),
        pts.points.len() * params.num_coordinates(),
        opts,
        "pairing cross-check",
    )?;
    let spec = CodeSpec::grassmann(params)?;
    let gen = build_generator(&spec)?;
    let mut bad = Vec::new();
    let mut bad_weight = Vec::new();
    let mut pairs = 0usize;
    for f in &funcs {
        let z = functional_to_wedge(f);
        let mut on = 0usize;
        for (p, w) in pts.coords.iter().zip(&wedges) {
            let paired = z.pairing(w)?;
            if paired != f.evaluate(p) {
                push_witness(&mut bad, || f.to_string());
            }
            on += paired.is_zero() as usize;
            pairs += 1;
        }
        if codeword_weight(f, &gen)? != pts.points.len() - on {
            push_witness(&mut bad_weight, || f.to_string());
        }
    }
    let mut r = Report::new("pairing", params_json(params));
    r.check_with_witnesses("pairing_equals_evaluation", bad, json!({ "pairs": pairs.to_string() }));
    r.check_with_witnesses("weight_equals_n_minus_section", bad_weight, Value::Null);
    Ok(r)
}

fn random_invertible(field: &Field, m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Elem>> {
    let q = field.order();
    loop {
        let g: Vec<Vec<Elem>> = (0..m)
            .map(|_| (0..m).map(|_| field.from_index(rng.gen_range(0..q)).unwrap()).collect())
            .collect();
        if linalg::rank(field, &g) == m {
            return g;
        }
    }
}

/// Decomposability is unchanged by a random change of basis: `samples`
/// random functionals and `samples` random products of vectors.
pub fn verify_gl_stability(params: &GrassmannParams, samples: usize, seed: u64) -> Result<Report> {
    let (ell, m) = (params.ell, params.m);
    let field = &params.field;
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut changed = Vec::new();
    let mut not_products = Vec::new();
    let (mut dec, mut nondec) = (0usize, 0usize);
    for i in 0..2 * samples {
        let z = if i % 2 == 0 {
            let coeffs: Vec<Elem> = loop {
                let c: Vec<Elem> = (0..params.num_coordinates())
                    .map(|_| field.from_index(rng.gen_range(0..q)).unwrap())
                    .collect();
                if c.iter().any(|x| !x.is_zero()) {
                    break c;
                }
            };
            functional_to_wedge(&DualFunctional::new(params, coeffs)?)
        } else {
            let vs = random_invertible(field, m, &mut rng);
            WedgeElement::wedge_of_vectors(field, m, &vs[..m - ell])?
        };
        let before = z.is_decomposable()?;
        if i % 2 == 1 && !before {
            push_witness(&mut not_products, || z.to_string());
        }
        let g = random_invertible(field, m, &mut rng);
        let after = z.transform(&g)?.is_decomposable()?;
        if before != after {
            push_witness(&mut changed, || z.to_string());
        }
        if before {
            dec += 1;
        } else {
            nondec += 1;
        }
    }
    let mut r = Report::new("gl_stability", params_json(params));
    r.check_with_witnesses(
        "verdict_is_basis_independent",
        changed,
        json!({ "decomposable": dec.to_string(), "nondecomposable": nondec.to_string(), "seed": seed.to_string() }),
    );
    r.check_with_witnesses("products_are_decomposable", not_products, Value::Null);
    Ok(r)
}

/// Suites accepted by [`verify_suite`].
pub const SUITES: &[&str] = &[
    "nogin", "second", "strings", "zanella", "identities", "l2", "attained", "schubert", "pairing", "stability", "all",
];

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Runs one named suite; `all` runs every suite that applies to `(l, m)`.
pub fn verify_suite(name: &str, params: &GrassmannParams, opts: &SweepOptions) -> Result<Report> {
    let (ell, m) = (params.ell, params.m);
    match name {
        "nogin" => verify_nogin(params, opts),
        "second" => verify_second_weight(params, opts),
        "strings" => verify_strings(params, opts),
        "zanella" => verify_zanella(params, opts),
        "identities" => verify_identities(params),
        "l2" => verify_l2(params, opts),
        "attained" => verify_attained(params, DEFAULT_SAMPLES, DEFAULT_SEED),
        "schubert" => verify_schubert(params, opts),
        "pairing" => verify_pairing(params, opts),
        "stability" => verify_gl_stability(params, DEFAULT_SAMPLES, DEFAULT_SEED),
        "all" => {
            let mut r = Report::new("all", params_json(params));
            let middle = ell >= 2 && ell + 2 <= m;
            let proper = ell >= 1 && ell < m;
            let mut skipped = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                let applies = match *s {
                    "second" | "attained" => middle,
                    "strings" | "zanella" => proper,
                    "l2" => (ell, m) == (2, 4),
                    _ => true,
                };
                if applies {
                    r.merge(verify_suite(s, params, opts)?);
                } else {
                    skipped.push(s.to_string());
                }
            }
            r.params["skipped"] = json!(skipped);
            Ok(r)
        }
        other => Err(Error::usage(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ell: usize, m: usize, q: u32) -> GrassmannParams {
        GrassmannParams::new(ell, m, Field::of_order(q).unwrap()).unwrap()
    }

    fn assert_pass(r: &Report) {
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn nogin_small() {
        let opts = SweepOptions::default();
        let r = verify_nogin(&params(2, 4, 2), &opts).unwrap();
        assert_pass(&r);
        let detail = &r.assertions[1].detail;
        assert_eq!(detail["min_weight_classes"], "35");
        assert_eq!(detail["classes"], "63");
        assert_pass(&verify_nogin(&params(1, 3, 3), &opts).unwrap());
    }

    #[test]
    fn second_weight_small() {
        let opts = SweepOptions::default();
        assert_pass(&verify_second_weight(&params(2, 4, 2), &opts).unwrap());
        assert!(matches!(verify_second_weight(&params(1, 4, 2), &opts), Err(Error::Domain(_))));
    }

    #[test]
    fn string_sections() {
        let p = params(2, 4, 2);
        let f = DualFunctional::parse(&p, "X:3,4").unwrap();
        let r = verify_string_section(&f).unwrap();
        assert_pass(&r);
        assert_eq!(r.assertions[1].detail["check_section"], "3");
        assert_pass(&verify_string_section(&DualFunctional::parse(&p, "X:1,4 + X:2,4").unwrap()).unwrap());
        let off = DualFunctional::parse(&p, "X:1,2").unwrap();
        assert!(matches!(verify_string_section(&off), Err(Error::Domain(_))));
        assert_pass(&verify_strings(&p, &SweepOptions::default()).unwrap());
        assert_pass(&verify_strings(&params(1, 3, 3), &SweepOptions::default()).unwrap());
    }

    #[test]
    fn zanella_examples() {
        let p = params(2, 4, 2);
        let pts = Points::of(&p).unwrap();
        let covs = hyperplane_covectors(&p.field, 4);
        assert_eq!(covs.len(), 15);
        let mem: Vec<Vec<bool>> = covs
            .iter()
            .map(|u| pts.points.iter().map(|x| inside(&p.field, x, u)).collect())
            .collect();
        let f = DualFunctional::parse(&p, "X:1,2 + X:3,4").unwrap();
        let inc = incidence(&pts, &mem, &f);
        assert!(inc.counts.iter().all(|&c| c == 3));
        assert_eq!(inc.total, 15);
        let f = DualFunctional::parse(&p, "X:3,4").unwrap();
        let inc = incidence(&pts, &mem, &f);
        assert_eq!(*inc.counts.iter().max().unwrap(), 7);
        assert_eq!(inc.total, 19);
        let opts = SweepOptions::default();
        assert_pass(&verify_zanella(&p, &opts).unwrap());
        assert_pass(&verify_zanella(&params(1, 3, 2), &opts).unwrap());
    }

    #[test]
    fn l2_and_attained() {
        let opts = SweepOptions::default();
        assert_pass(&verify_l2(&params(2, 4, 2), &opts).unwrap());
        let p = params(2, 4, 2);
        let fam = attained_family(&p, 100, 1).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.contains(&DualFunctional::parse(&p, "X:1,4 + X:2,3").unwrap()));
        assert_pass(&verify_attained(&p, 100, 1).unwrap());
        // sampling path
        assert_eq!(attained_family(&params(2, 5, 3), 10, 7).unwrap().len(), 10);
    }

    #[test]
    fn the_spec_attained_example_is_decomposable() {
        let p = params(2, 4, 2);
        let f = DualFunctional::parse(&p, "X:1,4 + X:3,4").unwrap();
        assert!(check_functional(&f).unwrap());
        let gen = build_generator(&CodeSpec::grassmann(&p).unwrap()).unwrap();
        assert_eq!(codeword_weight(&f, &gen).unwrap(), 16);
    }

    #[test]
    fn remaining_suites() {
        let opts = SweepOptions::default();
        let p = params(2, 4, 2);
        assert_pass(&verify_schubert(&p, &opts).unwrap());
        assert_pass(&verify_pairing(&p, &opts).unwrap());
        assert_pass(&verify_gl_stability(&p, 20, 3).unwrap());
        assert_pass(&verify_identities(&p).unwrap());
        assert!(matches!(verify_suite("bogus", &p, &opts), Err(Error::Usage(_))));
    }

    #[test]
    fn all_suite_on_a_line() {
        let r = verify_suite("all", &params(1, 3, 2), &SweepOptions::default()).unwrap();
        assert_pass(&r);
        assert_eq!(r.params["skipped"], json!(["second", "l2", "attained"]));
    }
}

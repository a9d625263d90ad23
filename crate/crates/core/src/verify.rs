//! Property and oracle suites behind `vocic verify`.
//!
//! Every suite returns a [`CriterionResult`]; failures are collected, never
//! raised, so that one report lists everything that went wrong.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{e_omega, verify_canonical, zeta_closed_form};
use crate::error::Result;
use crate::hall::{HallAlgebra, HallCache, HallElement};
use crate::ic::{ic_from_zeta, stalk_poincare, support_condition_check};
use crate::laurent::{gauss_binomial, LaurentPolynomial, QPolynomial};
use crate::repquiver::{
    codim_shift, enumerate_components, hom_dim, is_sparse, mm_closed_form, ComplexType,
    DeformationIndex, DimVector, Multisegment,
};

const MAX_LISTED: usize = 25;

/// Ranges covered by [`run_all`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest `Σ d_i` for the Hall-algebra suites.
    pub max_total_dim: u32,
    /// Largest rank for the Hall-algebra suites.
    pub hall_rank: usize,
    /// Rank and entry bound of the `(r, h, k)` formula grid.
    pub grid_rank: usize,
    pub grid_entry: u32,
    /// Rank and entry bound of the `(r, h, k)` dimension grid.
    pub hom_rank: usize,
    pub hom_entry: u32,
    /// Rank and largest `dim X` of the held-out prime sweep.
    pub sweep_rank: usize,
    pub sweep_total_dim: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_total_dim: 6,
            hall_rank: 4,
            grid_rank: 5,
            grid_entry: 3,
            hom_rank: 4,
            hom_entry: 2,
            sweep_rank: 5,
            sweep_total_dim: 5,
        }
    }
}

impl Bounds {
    /// Every range scaled down to `max_total_dim`, for quick runs.
    pub fn small(max_total_dim: u32) -> Self {
        Bounds {
            max_total_dim,
            hall_rank: 3,
            grid_rank: 3,
            grid_entry: 2,
            hom_rank: 3,
            hom_entry: 1,
            sweep_rank: 3,
            sweep_total_dim: max_total_dim.min(3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl CriterionResult {
    fn new(criterion: u32, name: &str, checked: u64, mut failures: Vec<String>) -> Self {
        let total = failures.len();
        if total > MAX_LISTED {
            failures.truncate(MAX_LISTED);
            failures.push(format!("... {} more", total - MAX_LISTED));
        }
        CriterionResult {
            criterion,
            name: name.to_string(),
            passed: total == 0,
            checked,
            failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub bounds: Bounds,
    pub criteria: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<(u32, &str)> {
        self.criteria
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.criterion, f.as_str())))
            .collect()
    }
}

/// One Hall algebra per rank, all sharing a cache.
pub struct Algebras {
    by_rank: Vec<HallAlgebra>,
}

impl Algebras {
    pub fn new(max_rank: usize, cache: Arc<HallCache>, extra_primes: usize) -> Self {
        Algebras {
            by_rank: (1..=max_rank)
                .map(|n| HallAlgebra::with_cache(n, cache.clone(), extra_primes))
                .collect(),
        }
    }

    pub fn rank(&self, n: usize) -> &HallAlgebra {
        &self.by_rank[n - 1]
    }

    pub fn max_rank(&self) -> usize {
        self.by_rank.len()
    }
}

/// Runs criteria 1 to 8 in order.
pub fn run_all(bounds: &Bounds, cache: Arc<HallCache>, extra_primes: usize) -> VerifyReport {
    let algebras = Algebras::new(bounds.hall_rank.max(3), cache, extra_primes);
    let (c1, c8) = formula_grid(bounds.grid_rank, bounds.grid_entry);
    let criteria = vec![
        c1,
        closed_form_suite(&algebras, bounds.hall_rank, bounds.max_total_dim),
        oracle_suite(&algebras, bounds.hall_rank, bounds.max_total_dim),
        dimension_suite(bounds.hom_rank, bounds.hom_entry),
        identity_suite(&algebras, bounds.hall_rank),
        hall_suite(bounds.sweep_rank, bounds.sweep_total_dim),
        golden_suite(&algebras, bounds.max_total_dim),
        c8,
    ];
    VerifyReport {
        passed: criteria.iter().all(|c| c.passed),
        bounds: bounds.clone(),
        criteria,
    }
}

fn product(len: usize, entry: u32) -> Vec<Vec<u32>> {
    DeformationIndex::all_below(&vec![entry; len])
        .into_iter()
        .map(|k| k.as_slice().to_vec())
        .collect()
}

/// Every `(r, h)` with `n <= max_rank` and entries `<= entry`, optionally only sparse ones.
pub fn complex_grid(max_rank: usize, entry: u32, sparse_only: bool) -> Vec<ComplexType> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        let hs: Vec<Vec<u32>> = product(n, entry)
            .into_iter()
            .filter(|h| {
                let omega: Vec<usize> = (1..=n).filter(|&i| h[i - 1] != 0).collect();
                !sparse_only || is_sparse(&omega)
            })
            .collect();
        for r in product(n - 1, entry) {
            for h in &hs {
                out.push(ComplexType::from_parts(&r, h).expect("lengths match"));
            }
        }
    }
    out
}

fn components_up_to(
    max_rank: usize,
    max_total_dim: u32,
) -> Vec<(usize, DimVector, Vec<ComplexType>)> {
    (1..=max_rank)
        .flat_map(|n| DimVector::all_up_to(n, max_total_dim))
        .map(|d| (d.rank(), d.clone(), enumerate_components(&d)))
        .filter(|(_, _, cs)| !cs.is_empty())
        .collect()
}

fn label(c: &ComplexType) -> String {
    format!("d = {:?}, r = {:?}", c.dim().as_slice(), c.r())
}

fn at(c: &ComplexType, k: &DeformationIndex) -> String {
    format!("{}, k = {:?}", label(c), k.as_slice())
}

fn err_line(ctx: String, e: crate::Error) -> String {
    format!("{ctx}: error: {e}")
}

/// Criteria 1 and 8: the stalk formula against the shifted closed form, and
/// the structural properties of both, over the sparse `(r, h, k)` grid.
pub fn formula_grid(max_rank: usize, entry: u32) -> (CriterionResult, CriterionResult) {
    let grid = complex_grid(max_rank, entry, true);
    let per_component: Vec<(u64, Vec<String>, Vec<String>)> = grid
        .par_iter()
        .map(|c| {
            let mut checked = 0;
            let (mut eq, mut props) = (Vec::new(), Vec::new());
            for k in c.deformations() {
                checked += 1;
                let stalk = match stalk_poincare(c, &k) {
                    Ok(p) => p,
                    Err(e) => {
                        eq.push(err_line(at(c, &k), e));
                        continue;
                    }
                };
                match ic_from_zeta(c, &k) {
                    Ok(p) if p == stalk => {}
                    Ok(p) => eq.push(format!("{}: stalk {stalk}, from zeta {p}", at(c, &k))),
                    Err(e) => eq.push(err_line(at(c, &k), e)),
                }
                if stalk.coeff(0) != BigInt::from(1) {
                    props.push(format!("{}: constant term of {stalk}", at(c, &k)));
                }
                if stalk.coeffs().iter().any(|x| x < &BigInt::from(0)) {
                    props.push(format!("{}: negative coefficient in {stalk}", at(c, &k)));
                }
                let zeta = zeta_closed_form(c, &k);
                if k.is_zero() {
                    if !matches!(&zeta, Ok(z) if z.is_one()) {
                        props.push(format!("{}: zeta_0 = {zeta:?}", label(c)));
                    }
                    continue;
                }
                match support_condition_check(c, &k) {
                    Ok(true) => {}
                    Ok(false) => props.push(format!(
                        "{}: support condition fails for {stalk}",
                        at(c, &k)
                    )),
                    Err(e) => props.push(err_line(at(c, &k), e)),
                }
                match zeta {
                    Ok(z) if z.in_negative_lattice() => {}
                    Ok(z) => props.push(format!("{}: zeta = {z} not in v^-1 Z[v^-1]", at(c, &k))),
                    Err(e) => props.push(err_line(at(c, &k), e)),
                }
            }
            (checked, eq, props)
        })
        .collect();
    let checked = per_component.iter().map(|x| x.0).sum();
    let eq = per_component.iter().flat_map(|x| x.1.clone()).collect();
    let props = per_component.iter().flat_map(|x| x.2.clone()).collect();
    (
        CriterionResult::new(1, "stalk formula equals shifted closed form", checked, eq),
        CriterionResult::new(8, "structural stalk properties", checked, props),
    )
}

/// Criterion 2: `E_Ω` evaluated in the Hall algebra against the closed form,
/// plus bar invariance and the lattice condition.
pub fn closed_form_suite(
    algebras: &Algebras,
    max_rank: usize,
    max_total_dim: u32,
) -> CriterionResult {
    let jobs: Vec<(usize, ComplexType)> = components_up_to(max_rank, max_total_dim)
        .into_iter()
        .flat_map(|(n, _, cs)| cs.into_iter().map(move |c| (n, c)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|(n, c)| match verify_canonical(algebras.rank(*n), c) {
            Ok(report) => report
                .checks
                .iter()
                .filter(|ch| !ch.passed)
                .map(|ch| format!("{}: {}: {}", label(c), ch.name, ch.detail))
                .collect::<Vec<_>>(),
            Err(e) => vec![err_line(label(c), e)],
        })
        .collect();
    CriterionResult::new(
        2,
        "Hall expansion equals closed form",
        jobs.len() as u64,
        failures,
    )
}

/// The stalk at `k` read off a canonical-basis element led by `M(c)`.
pub fn oracle_stalk(
    element: &HallElement,
    c: &ComplexType,
    k: &DeformationIndex,
) -> Result<QPolynomial> {
    let coeff = element.coeff(&c.deform(k)?.to_multisegment());
    coeff.shift(codim_shift(c, k)?).to_q().map_err(|_| {
        crate::Error::NegativePowerPresent(format!("oracle coefficient {coeff} at {}", at(c, k)))
    })
}

/// Criterion 3: the triangular canonical basis contains `E_Ω`, and its
/// coefficients reproduce the stalk formula.
pub fn oracle_suite(algebras: &Algebras, max_rank: usize, max_total_dim: u32) -> CriterionResult {
    let jobs = components_up_to(max_rank, max_total_dim);
    let per_d: Vec<(u64, Vec<String>)> = jobs
        .par_iter()
        .map(|(n, d, cs)| {
            let alg = algebras.rank(*n);
            let basis = match alg.triangular_canonical_basis(d) {
                Ok(b) => b,
                Err(e) => {
                    return (
                        cs.len() as u64,
                        vec![err_line(format!("d = {:?}", d.as_slice()), e)],
                    )
                }
            };
            let mut failures = Vec::new();
            for c in cs {
                let lead = c.to_multisegment();
                let elem = match e_omega(alg, c) {
                    Ok(x) => x,
                    Err(e) => {
                        failures.push(err_line(label(c), e));
                        continue;
                    }
                };
                match basis.get(&lead) {
                    Some(b) if *b == elem => {}
                    Some(b) => {
                        failures.push(format!("{}: basis element {b}, E_Omega {elem}", label(c)))
                    }
                    None => failures.push(format!("{}: no basis element led by {lead}", label(c))),
                }
                let Some(b) = basis.get(&lead) else { continue };
                for k in c.deformations() {
                    match (oracle_stalk(b, c, &k), stalk_poincare(c, &k)) {
                        (Ok(x), Ok(y)) if x == y => {}
                        (Ok(x), Ok(y)) => {
                            failures.push(format!("{}: oracle {x}, formula {y}", at(c, &k)))
                        }
                        (Err(e), _) | (_, Err(e)) => failures.push(err_line(at(c, &k), e)),
                    }
                }
            }
            (cs.len() as u64, failures)
        })
        .collect();
    CriterionResult::new(
        3,
        "triangular canonical basis contains E_Omega",
        per_d.iter().map(|x| x.0).sum(),
        per_d.into_iter().flat_map(|x| x.1).collect(),
    )
}

/// Criterion 4: `[M, M]` and the codimension shift against the linear-system `hom_dim`.
pub fn dimension_suite(max_rank: usize, entry: u32) -> CriterionResult {
    let memo: Mutex<HashMap<Multisegment, i64>> = Mutex::default();
    let end = |m: &Multisegment| -> i64 {
        if let Some(&x) = memo.lock().expect("memo").get(m) {
            return x;
        }
        let x = hom_dim(m, m) as i64;
        memo.lock().expect("memo").insert(m.clone(), x);
        x
    };
    let grid = complex_grid(max_rank, entry, false);
    let per: Vec<(u64, Vec<String>)> = grid
        .par_iter()
        .map(|c| {
            let mut failures = Vec::new();
            let base = end(&c.to_multisegment());
            if mm_closed_form(c) != base {
                failures.push(format!(
                    "{}: closed form {}, hom_dim {base}",
                    label(c),
                    mm_closed_form(c)
                ));
            }
            let ks = c.deformations();
            for k in &ks {
                let deformed = match c.deform(k) {
                    Ok(x) => x,
                    Err(e) => {
                        failures.push(err_line(at(c, k), e));
                        continue;
                    }
                };
                let diff = end(&deformed.to_multisegment()) - base;
                match codim_shift(c, k) {
                    Ok(s) if s == diff => {}
                    Ok(s) => failures.push(format!(
                        "{}: codim_shift {s}, hom_dim difference {diff}",
                        at(c, k)
                    )),
                    Err(e) => failures.push(err_line(at(c, k), e)),
                }
            }
            (1 + ks.len() as u64, failures)
        })
        .collect();
    CriterionResult::new(
        4,
        "dimension formulas equal hom_dim",
        per.iter().map(|x| x.0).sum(),
        per.into_iter().flat_map(|x| x.1).collect(),
    )
}

fn serre_failures(alg: &HallAlgebra) -> Result<(u64, Vec<String>)> {
    let n = alg.rank();
    let mut checked = 0;
    let mut failures = Vec::new();
    let e: Vec<HallElement> = (1..=n).map(|i| alg.chevalley(i)).collect::<Result<_>>()?;
    let mul = |a: &HallElement, b: &HallElement| alg.multiply(a, b);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            checked += 1;
            let (ei, ej) = (&e[i - 1], &e[j - 1]);
            let lhs = if i.abs_diff(j) >= 2 {
                mul(ei, ej)?.sub(&mul(ej, ei)?)?
            } else {
                let eii = mul(ei, ei)?;
                let two = LaurentPolynomial::from_terms([(1, 1), (-1, 1)]);
                mul(&eii, ej)?
                    .sub(&mul(&mul(ei, ej)?, ei)?.scale(&two))?
                    .add(&mul(ej, &eii)?)?
            };
            if !lhs.is_zero() {
                failures.push(format!(
                    "n = {n}: Serre relation for (E{i}, E{j}) leaves {lhs}"
                ));
            }
        }
    }
    Ok((checked, failures))
}

fn straightening_failures(alg: &HallAlgebra) -> Result<(u64, Vec<String>)> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 1..alg.rank() {
        let (ei, ej, root) = (
            alg.chevalley(i)?,
            alg.chevalley(i + 1)?,
            alg.root(i, i + 1)?,
        );
        for b in 0..=3u32 {
            for a in 0..=b {
                checked += 1;
                let lhs = alg.multiply(&alg.divided_power(&ei, a)?, &alg.divided_power(&ej, b)?)?;
                let mut rhs = HallElement::zero(alg.rank());
                for k in 0..=a {
                    let top = b - a + k;
                    let term = alg.multiply(
                        &alg.multiply(
                            &alg.divided_power(&ej, top)?,
                            &alg.divided_power(&root, a - k)?,
                        )?,
                        &alg.divided_power(&ei, k)?,
                    )?;
                    rhs = rhs.add(&term.scale(&LaurentPolynomial::v_pow(-((top * k) as i64))))?;
                }
                if lhs != rhs {
                    failures.push(format!(
                        "n = {}, i = {i}, (m, n) = ({a}, {b}): {lhs} vs {rhs}",
                        alg.rank()
                    ));
                }
            }
        }
    }
    Ok((checked, failures))
}

/// `Σ_{t1 + t23 = t} v^{(c2 - c3) t1 - c1 t23} [c1, t1][c2 + c3, t23]`, and the mirrored right-hand side.
pub fn exchange_sides(c: [i64; 3], t: u32) -> (LaurentPolynomial, LaurentPolynomial) {
    let [c1, c2, c3] = c;
    let mut lhs = LaurentPolynomial::zero();
    let mut rhs = LaurentPolynomial::zero();
    for a in 0..=t {
        let b = t - a;
        let (ai, bi) = (a as i64, b as i64);
        lhs +=
            &(&gauss_binomial(c1, a) * &gauss_binomial(c2 + c3, b)).shift((c2 - c3) * ai - c1 * bi);
        rhs +=
            &(&gauss_binomial(c1 + c2, a) * &gauss_binomial(c3, b)).shift((c2 - c1) * bi - c3 * ai);
    }
    (lhs, rhs)
}

fn arithmetic_failures() -> (u64, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for c1 in -4..=4 {
        for c2 in -4..=4 {
            for c3 in -4..=4 {
                for t in 0..=6 {
                    checked += 1;
                    let (l, r) = exchange_sides([c1, c2, c3], t);
                    if l != r {
                        failures.push(format!("binomial exchange identity at c = ({c1}, {c2}, {c3}), t = {t}: {l} vs {r}"));
                    }
                }
            }
        }
    }
    for a in 1..=6i64 {
        for n in 0..=6u32 {
            checked += 1;
            let lhs = gauss_binomial(-a, n);
            let rhs = gauss_binomial(a + n as i64 - 1, n).scale(&BigInt::from(if n % 2 == 0 {
                1
            } else {
                -1
            }));
            if lhs != rhs {
                failures.push(format!("negative binomial at (-{a}, {n}): {lhs} vs {rhs}"));
            }
        }
    }
    for a in -5..=8i64 {
        for n in 1..=6u32 {
            checked += 1;
            let lhs = gauss_binomial(a, n);
            let rhs = &gauss_binomial(a - 1, n).shift(n as i64)
                + &gauss_binomial(a - 1, n - 1).shift(n as i64 - a);
            if lhs != rhs {
                failures.push(format!("q-Pascal at ({a}, {n}): {lhs} vs {rhs}"));
            }
        }
    }
    (checked, failures)
}

/// Criterion 5: Serre relations, the divided-power straightening identity in
/// ranks 2 and 3, and the binomial identities.
pub fn identity_suite(algebras: &Algebras, max_rank: usize) -> CriterionResult {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut absorb = |label: &str, r: Result<(u64, Vec<String>)>| match r {
        Ok((c, f)) => {
            checked += c;
            failures.extend(f);
        }
        Err(e) => failures.push(format!("{label}: error: {e}")),
    };
    for n in 2..=max_rank.min(algebras.max_rank()) {
        absorb("Serre", serre_failures(algebras.rank(n)));
    }
    for n in 2..=3.min(algebras.max_rank()) {
        absorb("straightening", straightening_failures(algebras.rank(n)));
    }
    absorb("binomials", Ok(arithmetic_failures()));
    CriterionResult::new(5, "identity suites", checked, failures)
}

/// Criterion 6: the Hall-polynomial examples, and a fresh interpolation of
/// every table with `dim X <= max_total_dim`, each checked at a held-out prime.
pub fn hall_suite(rank: usize, max_total_dim: u32) -> CriterionResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    let fresh = HallAlgebra::with_cache(rank.max(2), Arc::new(HallCache::in_memory()), 1);
    let n = fresh.rank();
    let ms = |s: &str| Multisegment::parse(s, n).expect("literal");
    let examples = [
        (
            "F^{S1+S1}_{S1,S1}",
            fresh.hall_polynomial(&ms("[1..1]"), &ms("[1..1]"), &ms("[1..1]^2")),
            QPolynomial::from_i64s(&[1, 1]),
        ),
        (
            "F^{U12}_{S1,S2}",
            fresh.hall_polynomial(&ms("[1..1]"), &ms("[2..2]"), &ms("[1..2]")),
            QPolynomial::one(),
        ),
        (
            "a_{S1+S1}",
            fresh.count_automorphisms(&ms("[1..1]^2")),
            QPolynomial::from_i64s(&[0, 1, -1, -1, 1]),
        ),
    ];
    for (name, got, want) in examples {
        checked += 1;
        match got {
            Ok(p) if p == want => {}
            Ok(p) => failures.push(format!("{name} = {p}, expected {want}")),
            Err(e) => failures.push(format!("{name}: error: {e}")),
        }
    }

    let mut jobs = Vec::new();
    for dx in DimVector::all_up_to(n, max_total_dim) {
        for x in Multisegment::enumerate(&dx) {
            // Translates of one shape share a table, so only shapes starting at vertex 1 are new.
            if x.span().is_some_and(|(lo, _)| lo > 1) {
                continue;
            }
            for de in DimVector::all_up_to(n, dx.total()) {
                if dx.checked_sub(&de).is_none() {
                    continue;
                }
                for sub in Multisegment::enumerate(&de) {
                    jobs.push((sub, x.clone()));
                }
            }
        }
    }
    let results: Vec<Option<String>> = jobs
        .par_iter()
        .map(|(sub, x)| {
            fresh
                .hall_table(sub, x)
                .err()
                .map(|e| format!("table for N = {sub} in X = {x}: error: {e}"))
        })
        .collect();
    checked += jobs.len() as u64;
    failures.extend(results.into_iter().flatten());
    CriterionResult::new(6, "Hall polynomials and held-out primes", checked, failures)
}

fn golden_paths(
    alg: &HallAlgebra,
    c: &ComplexType,
    with_oracle: bool,
) -> Result<Vec<(DeformationIndex, [QPolynomial; 3])>> {
    let basis = if with_oracle {
        Some(alg.triangular_canonical_basis(c.dim())?)
    } else {
        None
    };
    let lead = c.to_multisegment();
    c.deformations()
        .into_iter()
        .map(|k| {
            let a = stalk_poincare(c, &k)?;
            let b = ic_from_zeta(c, &k)?;
            let o = match basis.as_ref().and_then(|bs| bs.get(&lead)) {
                Some(elem) => oracle_stalk(elem, c, &k)?,
                None => b.clone(),
            };
            Ok((k, [a, b, o]))
        })
        .collect()
}

/// Criterion 7: golden stalks, each through the formula, the shifted closed
/// form and the triangular canonical basis.
pub fn golden_suite(algebras: &Algebras, max_total_dim: u32) -> CriterionResult {
    let mut cases: Vec<(ComplexType, Option<DeformationIndex>, QPolynomial)> = Vec::new();
    let c121 = ComplexType::from_ranks(&DimVector::new(vec![1, 2, 1]).expect("dim"), &[1, 1])
        .expect("component");
    let c131 = ComplexType::from_ranks(&DimVector::new(vec![1, 3, 1]).expect("dim"), &[1, 1])
        .expect("component");
    let k11 = DeformationIndex::new(vec![1, 1]);
    cases.push((c121, Some(k11.clone()), QPolynomial::from_i64s(&[1, 1])));
    cases.push((c131, Some(k11), QPolynomial::from_i64s(&[1, 0, 1])));
    let mut all_ones = DimVector::all_up_to(2, max_total_dim.max(2));
    all_ones.push(DimVector::new(vec![1, 1, 1]).expect("dim"));
    for d in all_ones {
        for c in enumerate_components(&d) {
            cases.push((c, None, QPolynomial::one()));
        }
    }

    let per: Vec<(u64, Vec<String>)> = cases
        .par_iter()
        .map(|(c, only, want)| {
            let with_oracle = c.n() <= algebras.max_rank() && c.dim().total() <= max_total_dim;
            let rows = match golden_paths(
                algebras.rank(c.n().min(algebras.max_rank())),
                c,
                with_oracle,
            ) {
                Ok(rows) => rows,
                Err(e) => return (1, vec![err_line(label(c), e)]),
            };
            let mut failures = Vec::new();
            let mut checked = 0;
            for (k, paths) in rows
                .iter()
                .filter(|(k, _)| only.as_ref().is_none_or(|o| o == k))
            {
                checked += 1;
                for (path, got) in ["formula", "closed form", "canonical basis"]
                    .iter()
                    .zip(paths)
                {
                    if got != want {
                        failures.push(format!("{}: {path} gives {got}, expected {want}", at(c, k)));
                    }
                }
            }
            if checked == 0 {
                failures.push(format!("{}: no rows", label(c)));
            }
            (checked, failures)
        })
        .collect();
    CriterionResult::new(
        7,
        "golden stalk values",
        per.iter().map(|x| x.0).sum(),
        per.into_iter().flat_map(|x| x.1).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_identity_sample() {
        for c in [[1, 2, 3], [-2, 0, 4], [3, -4, -1]] {
            for t in 0..=4 {
                let (l, r) = exchange_sides(c, t);
                assert_eq!(l, r, "c = {c:?}, t = {t}");
            }
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(complex_grid(1, 3, true).len(), 4);
        // n = 2 sparse h over {0..1}^2: (0,0), (1,0), (0,1); r in {0, 1}.
        assert_eq!(complex_grid(2, 1, true).len(), 2 + 6);
        assert_eq!(complex_grid(2, 1, false).len(), 2 + 8);
    }

    #[test]
    fn small_run_passes() {
        let report = run_all(&Bounds::small(3), Arc::new(HallCache::in_memory()), 1);
        assert!(report.passed, "{:#?}", report.failures());
        assert_eq!(report.criteria.len(), 8);
    }
}

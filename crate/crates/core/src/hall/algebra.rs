use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp::first_primes;
use crate::laurent::{quantum_factorial, LaurentPolynomial, QPolynomial};
use crate::repquiver::{
    euler_form, hom_dim_by_intervals, intervals, DimVector, MatrixRep, Multisegment,
};

use super::cache::HallCache;
use super::count::{census_degree_bound, count_automorphisms_at, quotient_census};
use super::element::HallElement;
use super::interp::interpolate;
use super::pbw::pbw_monomial_general;
use super::word::{Factor, GeneratorWord};

/// Which recursive bracketing defines the root elements of intervals of length at least three.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootBracketing {
    /// `E_{i,j} = E_i E_{i+1,j} - v^-1 E_{i+1,j} E_i`.
    PeelLeft,
    /// `E_{i,j} = E_{i,j-1} E_j - v^-1 E_j E_{i,j-1}`.
    PeelRight,
}

type Table = Arc<Vec<(Multisegment, QPolynomial)>>;

/// The generic twisted Hall algebra of the equioriented quiver of rank `n`,
/// with structure constants obtained by counting over prime fields.
#[derive(Debug)]
pub struct HallAlgebra {
    n: usize,
    cache: Arc<HallCache>,
    extra_primes: usize,
    tables: RwLock<HashMap<(Multisegment, Multisegment), Table>>,
    bracketing: OnceLock<RootBracketing>,
    roots: RwLock<HashMap<(usize, usize), HallElement>>,
    bar_roots: RwLock<HashMap<(usize, usize), HallElement>>,
    bar_basis: RwLock<HashMap<Multisegment, HallElement>>,
}

impl HallAlgebra {
    pub fn new(n: usize) -> Self {
        Self::with_cache(n, Arc::new(HallCache::in_memory()), 1)
    }

    /// `extra_primes` additional primes are counted for every interpolation and must agree.
    pub fn with_cache(n: usize, cache: Arc<HallCache>, extra_primes: usize) -> Self {
        Self {
            n,
            cache,
            extra_primes,
            tables: RwLock::default(),
            bracketing: OnceLock::new(),
            roots: RwLock::default(),
            bar_roots: RwLock::default(),
            bar_basis: RwLock::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cache(&self) -> &Arc<HallCache> {
        &self.cache
    }

    pub fn one(&self) -> HallElement {
        HallElement::one(self.n)
    }

    fn check_rank(&self, m: &Multisegment) -> Result<()> {
        if m.rank() == self.n {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.n, m.rank()))
        }
    }

    /// `E_i = E_[S_i]`.
    pub fn chevalley(&self, i: usize) -> Result<HallElement> {
        if !(1..=self.n).contains(&i) {
            return Err(Error::IndexOutOfRange(format!("E_{i} for n = {}", self.n)));
        }
        Ok(HallElement::basis(Multisegment::simple(self.n, i)?))
    }

    /// All nonzero `F^X_{M,N}` for fixed `N` and `X`, keyed by `M`.
    fn table(&self, sub: &Multisegment, total: &Multisegment) -> Result<Table> {
        let key = (sub.clone(), total.clone());
        if let Some(t) = self.tables.read().expect("table lock").get(&key) {
            return Ok(t.clone());
        }
        let table = Arc::new(self.compute_table(sub, total)?);
        self.tables
            .write()
            .expect("table lock")
            .entry(key)
            .or_insert(table.clone());
        Ok(table)
    }

    fn compute_table(
        &self,
        sub: &Multisegment,
        total: &Multisegment,
    ) -> Result<Vec<(Multisegment, QPolynomial)>> {
        let Some(dq) = total.dim_vector().checked_sub(&sub.dim_vector()) else {
            return Ok(Vec::new());
        };
        let Some((lo, hi)) = total.span() else {
            return Ok(vec![(Multisegment::zero(self.n), QPolynomial::one())]);
        };
        // Hall polynomials only see the vertices X lives on, so the work
        // happens on the translate starting at vertex 1.
        let rank = hi - lo + 1;
        let delta = lo as i64 - 1;
        let sub0 = sub.translated(-delta, rank)?;
        let total0 = total.translated(-delta, rank)?;
        let dq0 = DimVector::new(dq.as_slice()[lo - 1..hi].to_vec())?;
        let candidates = Multisegment::enumerate(&dq0);
        let cached: Option<Vec<QPolynomial>> = candidates
            .iter()
            .map(|m| self.cache.get(m, &sub0, &total0))
            .collect();
        let polys = match cached {
            Some(polys) => polys,
            None => {
                let polys = self.interpolate_table(&sub0, &total0, &candidates)?;
                for (m, f) in candidates.iter().zip(&polys) {
                    self.cache.insert(m, &sub0, &total0, f.clone())?;
                }
                polys
            }
        };
        candidates
            .into_iter()
            .zip(polys)
            .filter(|(_, f)| !f.is_zero())
            .map(|(m, f)| Ok((m.translated(delta, self.n)?, f)))
            .collect()
    }

    fn interpolate_table(
        &self,
        sub: &Multisegment,
        total: &Multisegment,
        candidates: &[Multisegment],
    ) -> Result<Vec<QPolynomial>> {
        let Some(bound) = census_degree_bound(total, sub) else {
            return Ok(vec![QPolynomial::zero(); candidates.len()]);
        };
        let points = bound as usize + 1;
        let primes = first_primes(points + self.extra_primes);
        let censuses = primes
            .par_iter()
            .map(|&p| quotient_census(&MatrixRep::from_multisegment(total, p), sub))
            .collect::<Result<Vec<_>>>()?;
        for census in &censuses {
            if let Some(m) = census.keys().find(|m| candidates.binary_search(m).is_err()) {
                return Err(Error::DimensionMismatch(format!(
                    "census produced {m} outside the candidates"
                )));
            }
        }
        let xs: Vec<BigInt> = primes[..points].iter().map(|&p| BigInt::from(p)).collect();
        candidates
            .iter()
            .map(|m| {
                let count = |k: usize| BigInt::from(censuses[k].get(m).copied().unwrap_or(0));
                let ys: Vec<BigInt> = (0..points).map(count).collect();
                let f = interpolate(&xs, &ys)?;
                for (k, &p) in primes.iter().enumerate().skip(points) {
                    let predicted = f.evaluate_int(&BigInt::from(p));
                    if predicted != count(k) {
                        return Err(Error::ExtraPrimeMismatch {
                            prime: p,
                            detail: format!(
                                "F^{total}_{{{m},{sub}}} = {f} predicts {predicted}, counted {}",
                                count(k)
                            ),
                        });
                    }
                }
                Ok(f)
            })
            .collect()
    }

    /// Every nonzero `F^X_{M,N}` for fixed `N` and `X`, ordered by `M`.
    pub fn hall_table(
        &self,
        sub: &Multisegment,
        total: &Multisegment,
    ) -> Result<Vec<(Multisegment, QPolynomial)>> {
        self.check_rank(sub)?;
        self.check_rank(total)?;
        let mut rows = self.table(sub, total)?.as_ref().clone();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(rows)
    }

    /// The Hall polynomial `F^X_{M,N}`: the number of subrepresentations of `X`
    /// isomorphic to `N` with quotient isomorphic to `M`, as a polynomial in `q`.
    pub fn hall_polynomial(
        &self,
        quot: &Multisegment,
        sub: &Multisegment,
        total: &Multisegment,
    ) -> Result<QPolynomial> {
        for m in [quot, sub, total] {
            self.check_rank(m)?;
        }
        if quot.dim_vector().add(&sub.dim_vector())? != total.dim_vector() {
            return Err(Error::DimensionMismatch(format!(
                "dim {quot} + dim {sub} != dim {total}"
            )));
        }
        let table = self.table(sub, total)?;
        Ok(table
            .iter()
            .find(|(m, _)| m == quot)
            .map(|(_, f)| f.clone())
            .unwrap_or_default())
    }

    /// `a_M(q) = |Aut(M)|`, interpolated from counts over prime fields.
    pub fn count_automorphisms(&self, m: &Multisegment) -> Result<QPolynomial> {
        let bound = hom_dim_by_intervals(m, m) as usize;
        let primes = first_primes(bound + 1 + self.extra_primes);
        let counts: Vec<BigInt> = primes
            .par_iter()
            .map(|&p| BigInt::from(count_automorphisms_at(&MatrixRep::from_multisegment(m, p))))
            .collect();
        let xs: Vec<BigInt> = primes[..=bound].iter().map(|&p| BigInt::from(p)).collect();
        let f = interpolate(&xs, &counts[..=bound])?;
        for (k, &p) in primes.iter().enumerate().skip(bound + 1) {
            if f.evaluate_int(&BigInt::from(p)) != counts[k] {
                return Err(Error::ExtraPrimeMismatch {
                    prime: p,
                    detail: format!("a_{m} = {f}, counted {}", counts[k]),
                });
            }
        }
        Ok(f)
    }

    /// `[M, M] + [N, N] + <dim M, dim N> - [X, X]`.
    fn twist(&self, quot: &Multisegment, sub: &Multisegment, total: &Multisegment) -> Result<i64> {
        let h = |a: &Multisegment| hom_dim_by_intervals(a, a) as i64;
        Ok(h(quot) + h(sub) + euler_form(&quot.dim_vector(), &sub.dim_vector())? - h(total))
    }

    /// The twisted Hall product `A * B`.
    pub fn multiply(&self, a: &HallElement, b: &HallElement) -> Result<HallElement> {
        if a.rank() != self.n || b.rank() != self.n {
            return Err(Error::RankMismatch(a.rank(), b.rank()));
        }
        let (Some(da), Some(_)) = (a.dim_vector(), b.dim_vector()) else {
            return Ok(HallElement::zero(self.n));
        };
        let mut jobs = Vec::new();
        for (sub, _) in b.terms() {
            let dx = da.add(&sub.dim_vector())?;
            for total in Multisegment::enumerate(&dx) {
                jobs.push((sub.clone(), total));
            }
        }
        let tables = jobs
            .par_iter()
            .map(|(sub, total)| self.table(sub, total))
            .collect::<Result<Vec<_>>>()?;
        let mut out: BTreeMap<Multisegment, LaurentPolynomial> = BTreeMap::new();
        for ((sub, total), table) in jobs.iter().zip(&tables) {
            let cb = b.coeff(sub);
            for (quot, f) in table.iter() {
                let ca = a.coeff(quot);
                if ca.is_zero() {
                    continue;
                }
                let structure = f.to_laurent().shift(self.twist(quot, sub, total)?);
                *out.entry(total.clone()).or_default() += &(&(&ca * &cb) * &structure);
            }
        }
        HallElement::from_terms(self.n, out)
    }

    /// `A^{(k)} = A^k / [k]!`.
    pub fn divided_power(&self, a: &HallElement, k: u32) -> Result<HallElement> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, a)?;
        }
        acc.exact_div(&quantum_factorial(k))
    }

    /// `acc * g^{(k)}`, multiplying by `g` one factor at a time.
    fn times_divided_power(
        &self,
        acc: &HallElement,
        g: &HallElement,
        k: u32,
    ) -> Result<HallElement> {
        let mut acc = acc.clone();
        for _ in 0..k {
            acc = self.multiply(&acc, g)?;
        }
        if k > 1 {
            acc = acc.exact_div(&quantum_factorial(k))?;
        }
        Ok(acc)
    }

    /// `x * y - v^-1 y * x`, or with `v` in place of `v^-1` when `bar` is set.
    fn bracket(&self, x: &HallElement, y: &HallElement, bar: bool) -> Result<HallElement> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        let s = if bar { 1 } else { -1 };
        xy.sub(&yx.scale(&LaurentPolynomial::v_pow(s)))
    }

    fn raw_root(
        &self,
        style: RootBracketing,
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), HallElement>,
    ) -> Result<HallElement> {
        if i == j {
            return self.chevalley(i);
        }
        if let Some(e) = memo.get(&(i, j)) {
            return Ok(e.clone());
        }
        let e = match style {
            RootBracketing::PeelLeft => {
                let inner = self.raw_root(style, i + 1, j, memo)?;
                self.bracket(&self.chevalley(i)?, &inner, false)?
            }
            RootBracketing::PeelRight => {
                let inner = self.raw_root(style, i, j - 1, memo)?;
                self.bracket(&inner, &self.chevalley(j)?, false)?
            }
        };
        memo.insert((i, j), e.clone());
        Ok(e)
    }

    /// Determines the bracketing for which every recursive root element equals
    /// the basis element of its interval module, trying both conventions.
    pub fn root_bracketing(&self) -> Result<RootBracketing> {
        if let Some(b) = self.bracketing.get() {
            return Ok(*b);
        }
        let mut failures = Vec::new();
        for style in [RootBracketing::PeelLeft, RootBracketing::PeelRight] {
            let mut memo = HashMap::new();
            let mut ok = true;
            for (i, j) in intervals(self.n).filter(|(i, j)| i < j) {
                let e = self.raw_root(style, i, j, &mut memo)?;
                if e != HallElement::basis(Multisegment::interval(self.n, i, j)?) {
                    failures.push(format!("{style:?}: E_{i},{j} = {e}"));
                    ok = false;
                    break;
                }
            }
            if ok {
                let mut roots = self.roots.write().expect("root lock");
                roots.extend(memo);
                drop(roots);
                let _ = self.bracketing.set(style);
                return Ok(style);
            }
        }
        Err(Error::OrderConventionViolation(failures.join("; ")))
    }

    /// The root element `E_{i,i+1} = E_i E_{i+1} - v^-1 E_{i+1} E_i`.
    pub fn root_element(&self, i: usize) -> Result<HallElement> {
        if !(1..self.n).contains(&i) {
            return Err(Error::IndexOutOfRange(format!(
                "E_{i},{} for n = {}",
                i + 1,
                self.n
            )));
        }
        self.bracket(&self.chevalley(i)?, &self.chevalley(i + 1)?, false)
    }

    /// The root element `E_{i,j}` of the interval `[i..j]` under the validated bracketing.
    pub fn root(&self, i: usize, j: usize) -> Result<HallElement> {
        if !(1 <= i && i <= j && j <= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "E_{i},{j} for n = {}",
                self.n
            )));
        }
        if i == j {
            return self.chevalley(i);
        }
        self.root_bracketing()?;
        Ok(self.roots.read().expect("root lock")[&(i, j)].clone())
    }

    /// `bar(E_{i,j})`, expanded through the same bracketing with `v^-1` replaced by `v`.
    pub fn bar_root(&self, i: usize, j: usize) -> Result<HallElement> {
        if !(1 <= i && i <= j && j <= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "bar E_{i},{j} for n = {}",
                self.n
            )));
        }
        if i == j {
            return self.chevalley(i);
        }
        if let Some(e) = self.bar_roots.read().expect("root lock").get(&(i, j)) {
            return Ok(e.clone());
        }
        let e = match self.root_bracketing()? {
            RootBracketing::PeelLeft => {
                self.bracket(&self.chevalley(i)?, &self.bar_root(i + 1, j)?, true)?
            }
            RootBracketing::PeelRight => {
                self.bracket(&self.bar_root(i, j - 1)?, &self.chevalley(j)?, true)?
            }
        };
        self.bar_roots
            .write()
            .expect("root lock")
            .insert((i, j), e.clone());
        Ok(e)
    }

    fn factor_element(&self, f: &Factor) -> Result<HallElement> {
        match *f {
            Factor::Chevalley { i, .. } => self.chevalley(i),
            Factor::Root { i, j, .. } => self.root(i, j),
            Factor::BarRoot { i, j, .. } => self.bar_root(i, j),
        }
    }

    /// Multiplies the factors of `w` left to right.
    pub fn evaluate_word(&self, w: &GeneratorWord) -> Result<HallElement> {
        let mut acc = self.one();
        for f in w.factors() {
            let g = self.factor_element(f)?;
            acc = self.times_divided_power(&acc, &g, f.exponent())?;
        }
        Ok(acc.scale(&w.scalar))
    }

    /// The sum of the evaluations of `words`.
    pub fn evaluate_words(&self, words: &[GeneratorWord]) -> Result<HallElement> {
        let parts = words
            .par_iter()
            .map(|w| self.evaluate_word(w))
            .collect::<Result<Vec<_>>>()?;
        parts
            .iter()
            .try_fold(HallElement::zero(self.n), |acc, x| acc.add(x))
    }

    /// The PBW word of `M`, checked to evaluate to `E_[M]` exactly.
    pub fn pbw_word(&self, m: &Multisegment) -> Result<GeneratorWord> {
        self.check_rank(m)?;
        let w = pbw_monomial_general(m);
        let e = self.evaluate_word(&w)?;
        if e != HallElement::basis(m.clone()) {
            return Err(Error::OrderConventionViolation(format!(
                "{w} evaluates to {e}, not {m}"
            )));
        }
        Ok(w)
    }

    /// `bar(E_[M])`, by evaluating the bar image of the PBW word of `M`.
    pub fn bar_basis(&self, m: &Multisegment) -> Result<HallElement> {
        if let Some(e) = self.bar_basis.read().expect("bar lock").get(m) {
            return Ok(e.clone());
        }
        let w = self.pbw_word(m)?;
        let e = self.evaluate_word(&w.bar_word())?;
        self.bar_basis
            .write()
            .expect("bar lock")
            .insert(m.clone(), e.clone());
        Ok(e)
    }

    /// The bar involution of the algebra, applied termwise through [`HallAlgebra::bar_basis`].
    pub fn bar_element(&self, a: &HallElement) -> Result<HallElement> {
        let terms: Vec<_> = a.terms().collect();
        let parts = terms
            .par_iter()
            .map(|(m, c)| Ok(self.bar_basis(m)?.scale(&c.bar())))
            .collect::<Result<Vec<_>>>()?;
        parts
            .iter()
            .try_fold(HallElement::zero(self.n), |acc, x| acc.add(x))
    }

    /// The canonical basis of weight `d` by the unitriangular fixed-point recursion
    /// on the bar matrix of the PBW basis, keyed by leading multisegment.
    pub fn triangular_canonical_basis(
        &self,
        d: &DimVector,
    ) -> Result<BTreeMap<Multisegment, HallElement>> {
        if d.rank() != self.n {
            return Err(Error::RankMismatch(self.n, d.rank()));
        }
        let all = Multisegment::enumerate(d);
        let ivs: Vec<Multisegment> = intervals(self.n)
            .map(|(i, j)| Multisegment::interval(self.n, i, j))
            .collect::<Result<_>>()?;
        let profile: HashMap<&Multisegment, Vec<u64>> = all
            .iter()
            .map(|m| (m, ivs.iter().map(|u| hom_dim_by_intervals(u, m)).collect()))
            .collect();
        let below = |a: &Multisegment, b: &Multisegment| {
            a != b && profile[a].iter().zip(&profile[b]).all(|(x, y)| x >= y)
        };
        let weight = |m: &Multisegment| profile[m].iter().sum::<u64>();

        let rho: Vec<HallElement> = all
            .par_iter()
            .map(|m| self.bar_basis(m))
            .collect::<Result<_>>()?;
        let rho: HashMap<&Multisegment, &HallElement> = all.iter().zip(&rho).collect();
        for (l, col) in &rho {
            if !col.coeff(l).is_one() {
                return Err(Error::NotUnitriangular(format!(
                    "diagonal entry at {l} is {}",
                    col.coeff(l)
                )));
            }
            if let Some(n) = col.support().find(|n| n != l && !below(n, l)) {
                return Err(Error::NotUnitriangular(format!(
                    "bar({l}) involves {n}, which is not below it"
                )));
            }
        }

        let mut out = BTreeMap::new();
        for m in &all {
            let mut lower: Vec<&Multisegment> = all.iter().filter(|n| below(n, m)).collect();
            lower.sort_by_key(|n| (weight(n), (*n).clone()));
            let mut zeta: Vec<(&Multisegment, LaurentPolynomial)> =
                vec![(m, LaurentPolynomial::one())];
            for l in lower {
                let mut rhs = LaurentPolynomial::zero();
                for (n, z) in &zeta {
                    let r = rho[n].coeff(l);
                    if !r.is_zero() {
                        rhs += &(&z.bar() * &r);
                    }
                }
                let anti = &rhs + &rhs.bar();
                if !anti.is_zero() {
                    return Err(Error::NoSolutionInLattice(format!(
                        "right-hand side {rhs} at ({m}, {l}) is not anti-invariant"
                    )));
                }
                let negative = LaurentPolynomial::from_terms(
                    rhs.terms()
                        .filter(|(e, _)| *e < 0)
                        .map(|(e, c)| (e, c.clone())),
                );
                if !negative.is_zero() {
                    zeta.push((l, negative));
                }
            }
            let elem =
                HallElement::from_terms(self.n, zeta.into_iter().map(|(n, z)| (n.clone(), z)))?;
            out.insert(m.clone(), elem);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str, n: usize) -> Multisegment {
        Multisegment::parse(s, n).unwrap()
    }

    fn elem(n: usize, terms: &[(&str, LaurentPolynomial)]) -> HallElement {
        HallElement::from_terms(n, terms.iter().map(|(s, c)| (ms(s, n), c.clone()))).unwrap()
    }

    fn v(e: i64) -> LaurentPolynomial {
        LaurentPolynomial::v_pow(e)
    }

    #[test]
    fn hall_polynomial_examples() {
        let h = HallAlgebra::new(1);
        let s1 = ms("[1..1]", 1);
        assert_eq!(
            h.hall_polynomial(&s1, &s1, &ms("[1..1]^2", 1)).unwrap(),
            QPolynomial::from_i64s(&[1, 1])
        );
        let h2 = HallAlgebra::new(2);
        assert_eq!(
            h2.hall_polynomial(&ms("[1..1]", 2), &ms("[2..2]", 2), &ms("[1..2]", 2))
                .unwrap(),
            QPolynomial::one()
        );
        assert!(h2
            .hall_polynomial(&ms("[1..1]", 2), &ms("[1..1]", 2), &ms("[1..2]", 2))
            .is_err());
    }

    #[test]
    fn automorphism_polynomials() {
        let h = HallAlgebra::new(2);
        assert_eq!(
            h.count_automorphisms(&ms("[1..1]", 2)).unwrap(),
            QPolynomial::from_i64s(&[-1, 1])
        );
        assert_eq!(
            h.count_automorphisms(&ms("[1..1]^2", 2)).unwrap(),
            QPolynomial::from_i64s(&[0, 1, -1, -1, 1])
        );
        assert_eq!(
            h.count_automorphisms(&ms("[1..2]", 2)).unwrap(),
            QPolynomial::from_i64s(&[-1, 1])
        );
    }

    #[test]
    fn products_in_rank_two() {
        let h = HallAlgebra::new(2);
        let (e1, e2) = (h.chevalley(1).unwrap(), h.chevalley(2).unwrap());
        assert_eq!(
            h.multiply(&e1, &e2).unwrap(),
            elem(2, &[("[1..2]", v(0)), ("[1..1]+[2..2]", v(-1))])
        );
        assert_eq!(
            h.multiply(&e2, &e1).unwrap(),
            elem(2, &[("[1..1]+[2..2]", v(0))])
        );
        assert_eq!(h.multiply(&h.one(), &e1).unwrap(), e1);
        assert_eq!(h.multiply(&e1, &h.one()).unwrap(), e1);
        assert_eq!(
            h.multiply(&e1, &e2).unwrap().to_string(),
            "[1..2] + v^-1*([1..1]+[2..2])"
        );
        assert_eq!(
            h.divided_power(&e1, 2).unwrap(),
            HallElement::basis(ms("[1..1]^2", 2))
        );
        assert_eq!(h.divided_power(&e1, 0).unwrap(), h.one());
        let root = h.root_element(1).unwrap();
        assert_eq!(root, HallElement::basis(ms("[1..2]", 2)));
        for m in 1..=3 {
            let seg = Multisegment::from_segments(2, &[(1, 2, m)]).unwrap();
            assert_eq!(h.divided_power(&root, m).unwrap(), HallElement::basis(seg));
        }
        assert!(h.root_element(2).is_err());
        assert!(h.chevalley(3).is_err());
    }

    #[test]
    fn divided_power_rejects_non_divisible() {
        let h = HallAlgebra::new(2);
        let x = h
            .chevalley(1)
            .unwrap()
            .add(&h.chevalley(1).unwrap())
            .unwrap();
        let sq = h.multiply(&x, &x).unwrap();
        // 2E_1 squared is 4[2]E_{S1^2}; dividing by [2] is fine, by [3]! it is not.
        assert!(sq.exact_div(&quantum_factorial(3)).is_err());
    }

    #[test]
    fn root_elements_match_interval_modules() {
        let h = HallAlgebra::new(4);
        assert_eq!(h.root_bracketing().unwrap(), RootBracketing::PeelLeft);
        for (i, j) in intervals(4) {
            assert_eq!(
                h.root(i, j).unwrap(),
                HallElement::basis(Multisegment::interval(4, i, j).unwrap())
            );
        }
        assert_eq!(
            h.root_element(2).unwrap(),
            HallElement::basis(ms("[2..3]", 4))
        );
        assert_eq!(h.chevalley(2).unwrap(), HallElement::basis(ms("[2..2]", 4)));
    }

    #[test]
    fn bar_of_root_two_ways() {
        let h = HallAlgebra::new(2);
        let bar = h.bar_root(1, 2).unwrap();
        // E_1 E_2 - v E_2 E_1 = E_{U12} + (v^-1 - v) E_{S1+S2}
        assert_eq!(
            bar,
            elem(2, &[("[1..2]", v(0)), ("[1..1]+[2..2]", &v(-1) - &v(1))])
        );
        let w = pbw_monomial_general(&ms("[1..2]", 2));
        assert_eq!(h.evaluate_word(&w.bar_word()).unwrap(), bar);
        // bar is an involution
        assert_eq!(h.bar_element(&h.bar_element(&bar).unwrap()).unwrap(), bar);
    }

    #[test]
    fn triangular_basis_rank_two() {
        let h = HallAlgebra::new(2);
        let basis = h
            .triangular_canonical_basis(&DimVector::new(vec![1, 1]).unwrap())
            .unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(
            basis[&ms("[1..2]", 2)],
            elem(2, &[("[1..2]", v(0)), ("[1..1]+[2..2]", v(-1))])
        );
        assert_eq!(
            basis[&ms("[1..1]+[2..2]", 2)],
            elem(2, &[("[1..1]+[2..2]", v(0))])
        );

        let d21 = DimVector::new(vec![2, 1]).unwrap();
        let basis = h.triangular_canonical_basis(&d21).unwrap();
        assert_eq!(basis.len(), 2);
        let mut w = GeneratorWord::one();
        w.chevalley(1, 2).chevalley(2, 1);
        let e = h.evaluate_word(&w).unwrap();
        assert!(basis.values().any(|b| *b == e));
        for b in basis.values() {
            assert_eq!(&h.bar_element(b).unwrap(), b);
        }
    }
}

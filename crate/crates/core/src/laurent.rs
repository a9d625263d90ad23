//! Exact arithmetic in `Z[v, v^-1]` and the quantum-number kernel.
//!
//! [`LaurentPolynomial`] is a sparse map from exponents of `v` to nonzero
//! big-integer coefficients. [`QPolynomial`] is a dense polynomial in
//! `q = v^2` used for normalized binomials and stalk Poincaré polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Z[v, v^-1]` in canonical form: every stored coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True iff every exponent is at most `-1`, i.e. the element lies in `v^-1 Z[v^-1]`.
    pub fn in_negative_lattice(&self) -> bool {
        self.max_exponent().is_none_or(|e| e <= -1)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[v, v^-1]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let non_divisible = || Error::NonDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (Some(lb), Some(hb)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(non_divisible());
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lead_b = &divisor.terms[&hb];
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        // Long division from the top. If self = q * divisor then every term of
        // q has exponent >= min(self) - lb.
        let floor = self.min_exponent().unwrap();
        while let Some(hr) = rem.max_exponent() {
            if hr - hb + lb < floor {
                return Err(non_divisible());
            }
            let lead_r = &rem.terms[&hr];
            let (q, r) = lead_r.div_rem(lead_b);
            if !r.is_zero() {
                return Err(non_divisible());
            }
            let e = hr - hb;
            let step = Self::monomial(q, e);
            rem -= &(&step * divisor);
            quotient += &step;
        }
        Ok(quotient)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return match self.min_exponent() {
                Some(e) if e < 0 => Err(Error::ZeroBase),
                _ => Ok(BigRational::from_integer(self.coeff(0))),
            };
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Reinterprets a polynomial with only even nonnegative powers of `v` as a polynomial in `q = v^2`.
    pub fn to_q(&self) -> std::result::Result<QPolynomial, QFormError> {
        if let Some(e) = self.min_exponent() {
            if e < 0 {
                return Err(QFormError::NegativePower);
            }
        }
        if self.terms.keys().any(|e| e % 2 != 0) {
            return Err(QFormError::OddPower);
        }
        let deg = self.max_exponent().map_or(0, |e| e / 2 + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); deg];
        for (e, c) in self.terms() {
            coeffs[(e / 2) as usize] = c.clone();
        }
        Ok(QPolynomial::from_coeffs(coeffs))
    }
}

/// Why a Laurent polynomial is not a polynomial in `q = v^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QFormError {
    OddPower,
    NegativePower,
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Descending exponents, `c*v^e`, `v^0` omitted, e.g. `v^4 + 2 + v^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if e == 1 {
                f.write_str("v")?;
            } else {
                write!(f, "v^{e}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// A polynomial in `q` with big-integer coefficients, ascending powers, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^e`.
    pub fn q_pow(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes `q = v^2`.
    pub fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (2 * i as i64, c.clone())),
        )
    }

    /// Compact rendering without spaces, e.g. `1+q^2` or `2+3*q-q^4`.
    pub fn render_compact(&self) -> String {
        self.render("", "")
    }

    fn render(&self, plus: &str, minus: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(&format!("{minus}-{minus}"));
            } else {
                out.push_str(&format!("{plus}+{plus}"));
            }
            first = false;
            match i {
                0 => out.push_str(&abs.to_string()),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&format!("{abs}*"));
                    }
                    if i == 1 {
                        out.push('q');
                    } else {
                        out.push_str(&format!("q^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" ", " "))
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

/// The quantum integer `[n] = (v^n - v^-n) / (v - v^-1)`.
pub fn quantum_integer(n: u32) -> LaurentPolynomial {
    let n = n as i64;
    LaurentPolynomial::from_terms((0..n).map(|j| (n - 1 - 2 * j, 1)))
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn quantum_factorial(n: u32) -> LaurentPolynomial {
    (1..=n).fold(LaurentPolynomial::one(), |acc, k| {
        &acc * &quantum_integer(k)
    })
}

/// The quantum binomial `[a over n]` by its defining product, valid for every integer `a`.
pub fn gauss_binomial(a: i64, n: u32) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::one();
    for i in 1..=n as i64 {
        let num = &LaurentPolynomial::v_pow(a + 1 - i) - &LaurentPolynomial::v_pow(-a - 1 + i);
        if num.is_zero() {
            return LaurentPolynomial::zero();
        }
        let den = &LaurentPolynomial::v_pow(i) - &LaurentPolynomial::v_pow(-i);
        // Each partial product is itself [a over i], hence integral.
        acc = (&acc * &num)
            .exact_div(&den)
            .expect("partial quantum binomial products are Laurent polynomials");
    }
    acc
}

/// The normalized binomial `(a over n)_q = v^{n(a-n)} [a over n]`, as a polynomial in `q`.
pub fn normalized_binomial(a: u32, n: u32) -> Result<QPolynomial> {
    if n > a {
        return Ok(QPolynomial::zero());
    }
    let (a, n) = (a as i64, n as i64);
    gauss_binomial(a, n as u32)
        .shift(n * (a - n))
        .to_q()
        .map_err(|_| Error::ShiftNotEven { a, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // q-Pascal: [a, n] = v^n [a-1, n] + v^{n-a} [a-1, n-1], from [a, 0] = 1.
    fn pascal_oracle(a: i64, n: u32) -> LaurentPolynomial {
        if n == 0 {
            return LaurentPolynomial::one();
        }
        if a == 0 {
            return LaurentPolynomial::zero();
        }
        let n_i = n as i64;
        &pascal_oracle(a - 1, n).shift(n_i) + &pascal_oracle(a - 1, n - 1).shift(n_i - a)
    }

    #[test]
    fn ring_examples() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));

        let sq = lp(&[(2, 1), (0, 2), (-2, 1)]);
        assert_eq!(sq.exact_div(&a).unwrap(), a);

        let err = lp(&[(1, 1), (0, 1)]).exact_div(&lp(&[(1, 1), (0, -1)]));
        assert!(matches!(err, Err(Error::NonDivisible { .. })));
    }

    #[test]
    fn exact_div_by_monomials_and_zero() {
        let p = lp(&[(3, 2), (-1, 4)]);
        assert_eq!(p.exact_div(&lp(&[(-2, 2)])).unwrap(), lp(&[(5, 1), (1, 2)]));
        assert!(p.exact_div(&LaurentPolynomial::zero()).is_err());
        assert!(p.exact_div(&lp(&[(0, 3)])).is_err());
        assert!(LaurentPolynomial::zero().exact_div(&p).unwrap().is_zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (-1, 1)]).bar(), lp(&[(-2, 1), (1, 1)]));
        assert_eq!(
            LaurentPolynomial::constant(5).bar(),
            LaurentPolynomial::constant(5)
        );
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(quantum_integer(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert!(quantum_integer(0).is_zero());
        assert!(quantum_factorial(0).is_one());
        assert_eq!(quantum_factorial(2), lp(&[(1, 1), (-1, 1)]));
        for n in 0..8 {
            assert!(quantum_integer(n).is_bar_invariant());
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gauss_binomial(2, 1), lp(&[(1, 1), (-1, 1)]));
        // Frozen from the q-Pascal oracle.
        let expected = lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(pascal_oracle(4, 2), expected);
        assert_eq!(gauss_binomial(4, 2), expected);
        assert!(gauss_binomial(-1, 2).is_one());
        assert!(gauss_binomial(2, 3).is_zero());
    }

    #[test]
    fn binomial_symmetry_and_classical_limit() {
        for a in 0..=8i64 {
            for n in 0..=a {
                let g = gauss_binomial(a, n as u32);
                assert_eq!(g, gauss_binomial(a, (a - n) as u32));
                assert!(g.is_bar_invariant());
                let at_one = g.evaluate(&rat(1, 1)).unwrap();
                assert_eq!(
                    at_one,
                    BigRational::from_integer(num_integer::binomial(a, n).into())
                );
            }
        }
    }

    #[test]
    fn negative_argument_law() {
        for a in 1..=6i64 {
            for n in 0..=6u32 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let rhs = gauss_binomial(a + n as i64 - 1, n).scale(&BigInt::from(sign));
                assert_eq!(gauss_binomial(-a, n), rhs, "a = -{a}, n = {n}");
            }
        }
    }

    #[test]
    fn q_pascal_recurrence() {
        for a in -5..=8i64 {
            for n in 1..=6u32 {
                let lhs = gauss_binomial(a, n);
                let rhs = &gauss_binomial(a - 1, n).shift(n as i64)
                    + &gauss_binomial(a - 1, n - 1).shift(n as i64 - a);
                assert_eq!(lhs, rhs, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn normalized_binomials() {
        assert_eq!(
            normalized_binomial(2, 1).unwrap(),
            QPolynomial::from_i64s(&[1, 1])
        );
        for a in 0..=6 {
            assert_eq!(normalized_binomial(a, 0).unwrap(), QPolynomial::one());
        }
        assert_eq!(
            normalized_binomial(4, 2).unwrap(),
            QPolynomial::from_i64s(&[1, 1, 2, 1, 1])
        );
        assert!(normalized_binomial(2, 3).unwrap().is_zero());
        for a in 0..=8u32 {
            for n in 0..=a {
                let p = normalized_binomial(a, n).unwrap();
                assert_eq!(p.degree(), Some((n * (a - n)) as usize));
                let c = p.coeffs();
                assert!(c.iter().all(|x| x.is_positive()));
                assert!(c.iter().eq(c.iter().rev()));
            }
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(quantum_integer(3).evaluate(&rat(1, 1)).unwrap(), rat(3, 1));
        assert_eq!(
            QPolynomial::from_i64s(&[1, 1]).evaluate(&rat(2, 1)),
            rat(3, 1)
        );
        assert_eq!(
            lp(&[(1, 1), (-1, 1)]).evaluate(&rat(2, 1)).unwrap(),
            rat(5, 2)
        );
        assert_eq!(lp(&[(-1, 1)]).evaluate(&rat(0, 1)), Err(Error::ZeroBase));
        assert_eq!(
            lp(&[(2, 1), (0, 7)]).evaluate(&rat(0, 1)).unwrap(),
            rat(7, 1)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(lp(&[(4, 1), (0, 2), (-4, 1)]).to_string(), "v^4 + 2 + v^-4");
        assert_eq!(lp(&[(1, -3), (-1, 1)]).to_string(), "-3*v + v^-1");
        assert_eq!(lp(&[(-1, 1), (-5, -1)]).to_string(), "v^-1 - v^-5");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(QPolynomial::from_i64s(&[1, 0, 1]).render_compact(), "1+q^2");
        assert_eq!(QPolynomial::from_i64s(&[0, 2, -1]).to_string(), "2*q - q^2");
    }

    #[test]
    fn q_form_conversion() {
        assert_eq!(lp(&[(1, 1)]).to_q(), Err(QFormError::OddPower));
        assert_eq!(lp(&[(-2, 1)]).to_q(), Err(QFormError::NegativePower));
        let q = QPolynomial::from_i64s(&[1, 0, 3]);
        assert_eq!(q.to_laurent().to_q().unwrap(), q);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_laurent() -> impl Strategy<Value = LaurentPolynomial> {
            proptest::collection::vec((-6i64..=6, -5i64..=5), 0..6)
                .prop_map(LaurentPolynomial::from_terms)
        }

        proptest! {
            #[test]
            fn bar_is_involutive_ring_map(a in arb_laurent(), b in arb_laurent()) {
                prop_assert_eq!(a.bar().bar(), a.clone());
                prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
                prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            }

            #[test]
            fn multiply_then_divide(a in arb_laurent(), b in arb_laurent()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
            }

            #[test]
            fn canonical_form_has_no_zeros(a in arb_laurent(), b in arb_laurent()) {
                let s = &a - &b;
                prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
                prop_assert!((&a - &a).is_zero());
            }
        }
    }
}

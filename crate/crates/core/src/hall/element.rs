use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::repquiver::{DimVector, Multisegment};

/// A homogeneous element `Σ c_M E_[M]` of the twisted Hall algebra of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HallElement {
    n: usize,
    terms: BTreeMap<Multisegment, LaurentPolynomial>,
}

impl HallElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Multisegment::zero(n))
    }

    /// The basis element `E_[M]`.
    pub fn basis(m: Multisegment) -> Self {
        Self::monomial(m, LaurentPolynomial::one())
    }

    pub fn monomial(m: Multisegment, c: LaurentPolynomial) -> Self {
        let mut out = Self::zero(m.rank());
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Multisegment, LaurentPolynomial)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.add_term(m, &c)?;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, &LaurentPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Multisegment) -> LaurentPolynomial {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Multisegment> {
        self.terms.keys()
    }

    /// The common dimension vector, or `None` for zero.
    pub fn dim_vector(&self) -> Option<DimVector> {
        self.terms.keys().next().map(Multisegment::dim_vector)
    }

    /// Adds `c * E_[m]`, enforcing rank and homogeneity.
    pub fn add_term(&mut self, m: Multisegment, c: &LaurentPolynomial) -> Result<()> {
        if m.rank() != self.n {
            return Err(Error::RankMismatch(self.n, m.rank()));
        }
        if c.is_zero() {
            return Ok(());
        }
        if let Some(d) = self.dim_vector() {
            if d != m.dim_vector() {
                return Err(Error::DimensionMismatch(format!(
                    "adding a term of dimension {} to an element of dimension {d}",
                    m.dim_vector()
                )));
            }
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HallElement) -> Result<HallElement> {
        self.add(&other.scale(&LaurentPolynomial::constant(-1)))
    }

    pub fn scale(&self, s: &LaurentPolynomial) -> HallElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        HallElement { n: self.n, terms }
    }

    /// Divides every coefficient exactly by `d`.
    pub fn exact_div(&self, d: &LaurentPolynomial) -> Result<HallElement> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.exact_div(d)?)))
            .collect::<Result<_>>()?;
        Ok(HallElement { n: self.n, terms })
    }

    /// Applies `v -> v^-1` to the coefficients only. This is not the bar
    /// involution of the algebra; see `HallAlgebra::bar_element`.
    pub fn bar_coefficients(&self) -> HallElement {
        HallElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.bar()))
                .collect(),
        }
    }
}

impl fmt::Display for HallElement {
    /// Terms in ascending multisegment order, e.g. `[1..2] + v^-1*([1..1]+[2..2])`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let basis = if m.segment_count() > 1 {
                format!("({m})")
            } else {
                m.to_string()
            };
            if c.is_one() {
                write!(f, "{m}")?;
            } else if c.num_terms() == 1 {
                write!(f, "{c}*{basis}")?;
            } else {
                write!(f, "({c})*{basis}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multisegment {
        Multisegment::parse(s, 2).unwrap()
    }

    #[test]
    fn rendering() {
        let e = HallElement::from_terms(
            2,
            [
                (ms("[1..2]"), LaurentPolynomial::one()),
                (ms("[1..1]+[2..2]"), LaurentPolynomial::v_pow(-1)),
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "[1..2] + v^-1*([1..1]+[2..2])");
        assert_eq!(HallElement::zero(2).to_string(), "0");
        let two = HallElement::monomial(
            ms("[1..1]"),
            LaurentPolynomial::from_terms([(1, 1), (-1, 1)]),
        );
        assert_eq!(two.to_string(), "(v + v^-1)*[1..1]");
    }

    #[test]
    fn homogeneity_and_cancellation() {
        let mut e = HallElement::basis(ms("[1..2]"));
        assert!(e.add_term(ms("[1..1]"), &LaurentPolynomial::one()).is_err());
        e.add_term(ms("[1..2]"), &LaurentPolynomial::constant(-1))
            .unwrap();
        assert!(e.is_zero());
        assert!(e
            .add_term(Multisegment::zero(3), &LaurentPolynomial::one())
            .is_err());
    }
}

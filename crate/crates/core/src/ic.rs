//! Stalks of intersection cohomology of irreducible components of varieties
//! of complexes, as Poincaré polynomials in `q` (only even degrees occur).

use crate::canonical::{zeta_closed_form, OmegaDecomposition};
use crate::error::{Error, Result};
use crate::laurent::{normalized_binomial, LaurentPolynomial, QFormError, QPolynomial};
use crate::repquiver::{
    codim_shift, enumerate_components, ComplexType, DeformationIndex, DimVector,
};

/// The stalk Poincaré polynomial of the component closure `c` at the orbit `(r - k, h ∔ k)`.
pub fn stalk_poincare(c: &ComplexType, k: &DeformationIndex) -> Result<QPolynomial> {
    let dec = OmegaDecomposition::new(c)?;
    c.check_deformation(k)?;
    let n = c.n();
    let omega = dec.omega();
    let bounds: Vec<u32> = omega.iter().map(|&i| k.at(i - 1).min(k.at(i))).collect();
    let mut outside = QPolynomial::one();
    for i in (1..=n).filter(|i| !omega.contains(i)) {
        outside = &outside * &normalized_binomial(k.at(i - 1) + k.at(i), k.at(i))?;
    }
    let mut total = QPolynomial::zero();
    for t in DeformationIndex::all_below(&bounds) {
        let mut term = outside.clone();
        let mut shift = 0usize;
        for (&i, &ti) in omega.iter().zip(t.as_slice()) {
            shift += ((c.h_at(i) + ti) * ti) as usize;
            term = &term * &normalized_binomial(k.at(i), k.at(i) - ti)?;
            term = &term * &normalized_binomial(k.at(i - 1), ti)?;
        }
        total = &total + &(&term * &QPolynomial::q_pow(shift));
    }
    Ok(total)
}

/// `v^{codim} ζ_k` read as a polynomial in `q = v^2`.
pub fn ic_from_zeta(c: &ComplexType, k: &DeformationIndex) -> Result<QPolynomial> {
    let zeta = zeta_closed_form(c, k)?;
    let shifted: LaurentPolynomial = zeta.shift(codim_shift(c, k)?);
    shifted.to_q().map_err(|e| {
        let what = format!(
            "v^{} * ({zeta}) at k = {:?}",
            codim_shift(c, k).unwrap_or(0),
            k.as_slice()
        );
        match e {
            QFormError::OddPower => Error::OddPowerPresent(what),
            QFormError::NegativePower => Error::NegativePowerPresent(what),
        }
    })
}

/// `2 deg P < codim`: the stalk at a proper degeneration stays below the perversity bound.
pub fn support_condition_check(c: &ComplexType, k: &DeformationIndex) -> Result<bool> {
    let p = stalk_poincare(c, k)?;
    let deg = p.degree().unwrap_or(0) as i64;
    Ok(2 * deg < codim_shift(c, k)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkRow {
    pub k: DeformationIndex,
    pub orbit: ComplexType,
    pub poincare: QPolynomial,
    pub codim: i64,
}

/// All stalks of one component, one row per `0 <= k <= r` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkTable {
    pub component: ComplexType,
    pub rows: Vec<StalkRow>,
}

impl StalkTable {
    pub fn new(c: &ComplexType) -> Result<Self> {
        OmegaDecomposition::new(c)?;
        let rows = c
            .deformations()
            .into_iter()
            .map(|k| {
                Ok(StalkRow {
                    orbit: c.deform(&k)?,
                    poincare: stalk_poincare(c, &k)?,
                    codim: codim_shift(c, &k)?,
                    k,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            component: c.clone(),
            rows,
        })
    }
}

/// One table per irreducible component of `Com(d)`.
pub fn component_report(d: &DimVector) -> Result<Vec<StalkTable>> {
    enumerate_components(d)
        .iter()
        .map(StalkTable::new)
        .collect()
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::QPolynomial;

/// The unique polynomial of degree `< xs.len()` through the given points,
/// required to have integer coefficients.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<QPolynomial> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    // Newton divided differences.
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    // Horner expansion into the monomial basis.
    let mut poly: Vec<BigRational> = Vec::new();
    for i in (0..k).rev() {
        let xi = BigRational::from_integer(xs[i].clone());
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xi;
        }
        next[0] += &dd[i];
        poly = next;
    }
    let coeffs = poly
        .into_iter()
        .map(|c| {
            if c.denom().is_one() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegerInterpolation(format!(
                    "coefficient {c} from values {ys:?} at {xs:?}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn recovers_polynomials() {
        let xs = ints(&[2, 3, 5, 7, 11]);
        let f = |q: i64| q * q * q * q - q * q * q - q * q + q;
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|x| BigInt::from(f(x.try_into().unwrap())))
            .collect();
        assert_eq!(
            interpolate(&xs, &ys).unwrap(),
            QPolynomial::from_i64s(&[0, 1, -1, -1, 1])
        );
        assert_eq!(
            interpolate(&ints(&[2, 3]), &ints(&[3, 4])).unwrap(),
            QPolynomial::from_i64s(&[1, 1])
        );
        assert!(interpolate(&ints(&[2]), &ints(&[0])).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_integral_data() {
        // Through (2,0) and (3,1) and (5,0): coefficients are not integers.
        assert!(matches!(
            interpolate(&ints(&[2, 3, 5]), &ints(&[0, 1, 0])),
            Err(Error::NonIntegerInterpolation(_))
        ));
    }
}

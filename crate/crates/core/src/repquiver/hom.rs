use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Multisegment;

/// A sparse integer row: column index -> nonzero coefficient.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Exact rank over `Q` of an integer matrix given by sparse rows.
///
/// Fraction-free elimination: each incoming row is reduced against the
/// stored pivots (keyed by leading column) and divided by its content.
pub fn integer_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        row.retain(|_, c| !c.is_zero());
        while let Some((&lead, _)) = row.iter().next() {
            let Some(pivot) = pivots.get(&lead) else {
                make_primitive(&mut row);
                pivots.insert(lead, row);
                break;
            };
            let a = pivot[&lead].clone();
            let b = row[&lead].clone();
            // row <- a*row - b*pivot cancels the leading column.
            let mut next = SparseRow::new();
            for (&c, x) in &row {
                next.insert(c, x * &a);
            }
            for (&c, y) in pivot {
                let e = next.entry(c).or_insert_with(BigInt::zero);
                *e -= y * &b;
            }
            next.retain(|_, c| !c.is_zero());
            make_primitive(&mut next);
            row = next;
        }
    }
    pivots.len()
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    if g != BigInt::from(1) {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
    if row.values().next().is_some_and(|x| x.is_negative()) {
        for x in row.values_mut() {
            *x = -x.clone();
        }
    }
}

/// `dim Hom(M, N)`: the nullity of the intertwiner equations
/// `φ_{k+1} f^M_k = f^N_k φ_k` over the normal-form representatives.
pub fn hom_dim(m: &Multisegment, n: &Multisegment) -> usize {
    let rank = m.rank().max(n.rank());
    let (m, n) = (
        m.with_rank(rank).expect("rank can only grow"),
        n.with_rank(rank).expect("rank can only grow"),
    );
    let dm = m.dim_vector();
    let dn = n.dim_vector();

    // Variable φ_k[a][b] (a: basis of N at k, b: basis of M at k).
    let mut offset = vec![0usize; rank + 1];
    for k in 1..=rank {
        offset[k] = offset[k - 1] + (dn.at(k) * dm.at(k)) as usize;
    }
    let var = |k: usize, a: usize, b: usize| offset[k - 1] + a * dm.at(k) as usize + b;
    let unknowns = offset[rank];

    let mut rows = Vec::new();
    for k in 1..rank {
        let fm = dense_arrow(&m, k);
        let fn_ = dense_arrow(&n, k);
        for a in 0..dn.at(k + 1) as usize {
            for b in 0..dm.at(k) as usize {
                let mut row = SparseRow::new();
                // (φ_{k+1} f^M)[a][b] = Σ_c φ_{k+1}[a][c] f^M[c][b]
                for (c, fm_row) in fm.iter().enumerate() {
                    if fm_row[b] != 0 {
                        *row.entry(var(k + 1, a, c)).or_insert_with(BigInt::zero) +=
                            BigInt::from(fm_row[b]);
                    }
                }
                // (f^N φ_k)[a][b] = Σ_c f^N[a][c] φ_k[c][b]
                for (c, &x) in fn_[a].iter().enumerate() {
                    if x != 0 {
                        *row.entry(var(k, c, b)).or_insert_with(BigInt::zero) -= BigInt::from(x);
                    }
                }
                rows.push(row);
            }
        }
    }
    unknowns - integer_rank(rows)
}

/// `dim Hom(M, N)` from `dim Hom(U_{a,b}, U_{c,d}) = [c <= a <= d <= b]` and additivity.
pub fn hom_dim_by_intervals(m: &Multisegment, n: &Multisegment) -> u64 {
    let mut total = 0u64;
    for (a, b, x) in m.segments() {
        for (c, d, y) in n.segments() {
            if c <= a && a <= d && d <= b {
                total += x as u64 * y as u64;
            }
        }
    }
    total
}

/// The normal-form arrow `f_k` as a dense `d_{k+1} x d_k` 0/1 matrix.
fn dense_arrow(m: &Multisegment, k: usize) -> Vec<Vec<i64>> {
    let d = m.dim_vector();
    let mut out = vec![vec![0i64; d.at(k) as usize]; d.at(k + 1) as usize];
    for (src, dst) in m.arrow_map(k).into_iter().enumerate() {
        if let Some(t) = dst {
            out[t][src] = 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repquiver::{intervals, mm_closed_form, ComplexType, DimVector};

    fn seg(n: usize, i: usize, j: usize) -> Multisegment {
        Multisegment::interval(n, i, j).unwrap()
    }

    #[test]
    fn integer_rank_basics() {
        let row = |v: &[(usize, i64)]| -> SparseRow {
            v.iter().map(|&(c, x)| (c, BigInt::from(x))).collect()
        };
        assert_eq!(
            integer_rank(vec![row(&[(0, 2), (1, 4)]), row(&[(0, 1), (1, 2)])]),
            1
        );
        assert_eq!(
            integer_rank(vec![row(&[(0, 2), (1, 3)]), row(&[(0, 1), (1, 2)])]),
            2
        );
        assert_eq!(integer_rank(vec![row(&[]), row(&[(3, 0)])]), 0);
        // Rank over Q, not mod 2.
        assert_eq!(
            integer_rank(vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1)])]),
            2
        );
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_dim(&seg(2, 1, 2), &seg(2, 1, 1)), 1);
        assert_eq!(hom_dim(&seg(2, 1, 1), &seg(2, 1, 2)), 0);
        for n in 1..=5 {
            for (i, j) in intervals(n) {
                assert_eq!(hom_dim(&seg(n, i, j), &seg(n, i, j)), 1);
            }
        }
    }

    // For the equioriented quiver, Hom(U_{a,b}, U_{c,d}) != 0 iff c <= a <= d <= b.
    #[test]
    fn hom_between_intervals() {
        for n in 1..=4 {
            for (a, b) in intervals(n) {
                for (c, d) in intervals(n) {
                    let expected = usize::from(c <= a && a <= d && d <= b);
                    assert_eq!(hom_dim(&seg(n, a, b), &seg(n, c, d)), expected);
                }
            }
        }
    }

    #[test]
    fn hom_is_additive() {
        for n in 1..=4 {
            for total in 0..=5 {
                let all: Vec<Multisegment> = DimVector::all_up_to(n, total)
                    .iter()
                    .filter(|d| d.total() == total)
                    .flat_map(Multisegment::enumerate)
                    .collect();
                for m in all.iter().step_by(3) {
                    for x in all.iter().step_by(4) {
                        let additive: usize = m
                            .segments()
                            .flat_map(|(i, j, a)| {
                                x.segments().map(move |(k, l, b)| {
                                    (a * b) as usize * hom_dim(&seg(n, i, j), &seg(n, k, l))
                                })
                            })
                            .sum();
                        assert_eq!(hom_dim(m, x), additive, "{m} -> {x}");
                        assert_eq!(hom_dim_by_intervals(m, x) as usize, additive);
                    }
                }
            }
        }
    }

    #[test]
    fn mm_closed_form_matches_linear_system() {
        let c = ComplexType::from_parts(&[1, 1], &[0, 1, 0]).unwrap();
        let m = c.to_multisegment();
        assert_eq!(hom_dim(&m, &m) as i64, mm_closed_form(&c));
    }
}

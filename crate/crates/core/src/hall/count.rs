//! Exact counts over prime fields: subrepresentations by isomorphism type of
//! sub and quotient, and automorphisms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{for_each_subspace, Fp, FpMatrix};
use crate::repquiver::{interval_index, intervals, MatrixRep, Multisegment};

/// `rank(A)` for the product `A = F * B` without keeping `A`.
fn rank_of_product(f: &FpMatrix, b: &FpMatrix, fp: &Fp) -> usize {
    f.mul(b, fp).rank(fp)
}

/// `W * R^T`: the subspace with RREF coordinates `R` (`k x w`) inside the
/// span of the columns of `W` (`d x w`), as a `d x k` column basis.
fn embed(w: &FpMatrix, r: &FpMatrix, fp: &Fp) -> FpMatrix {
    let (d, k) = (w.rows(), r.rows());
    let mut out = FpMatrix::zeros(d, k);
    for row in 0..d {
        for col in 0..k {
            let mut acc = 0u32;
            for t in 0..w.cols() {
                let a = w.get(row, t);
                if a != 0 {
                    acc = fp.add(acc, fp.mul(a, r.get(col, t)));
                }
            }
            out.set(row, col, acc);
        }
    }
    out
}

fn transpose(m: &FpMatrix) -> FpMatrix {
    let mut t = FpMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j));
        }
    }
    t
}

struct Census<'a> {
    fp: Fp,
    n: usize,
    d: Vec<usize>,
    e: Vec<usize>,
    x: &'a MatrixRep,
    /// `composite[a][b]` for `1 <= a <= b <= n` (index 0 unused).
    composite: Vec<Vec<Option<FpMatrix>>>,
    sub_ranks: Vec<u32>,
    bases: Vec<FpMatrix>,
    tally: BTreeMap<Multisegment, u64>,
}

impl Census<'_> {
    fn comp(&self, a: usize, b: usize) -> &FpMatrix {
        self.composite[a][b].as_ref().expect("composite for a <= b")
    }

    /// The admissible ambient space `f_i^{-1}(U_{i+1})` at vertex `i`, as column basis.
    fn preimage(&self, i: usize) -> FpMatrix {
        if i == self.n {
            return FpMatrix::identity(self.d[i]);
        }
        let next = &self.bases[i + 1];
        // Rows annihilating U_{i+1}.
        let ann = transpose(next).nullspace(&self.fp);
        let ann = FpMatrix::from_columns(self.d[i + 1], &ann);
        let cond = transpose(&ann).mul(self.x.arrow(i), &self.fp);
        FpMatrix::from_columns(self.d[i], &cond.nullspace(&self.fp))
    }

    fn descend(&mut self, i: usize) {
        if i == 0 {
            self.leaf();
            return;
        }
        let w = self.preimage(i);
        if w.cols() < self.e[i] {
            return;
        }
        let fp = self.fp.clone();
        let (k, dim_w, p) = (self.e[i], w.cols(), fp.p());
        for_each_subspace(dim_w, k, p, |r| {
            let b = embed(&w, r, &fp);
            let consistent = (i + 1..=self.n).all(|j| {
                rank_of_product(self.comp(i, j), &b, &fp) as u32
                    == self.sub_ranks[interval_index(self.n, i, j)]
            });
            if consistent {
                self.bases[i] = b;
                self.descend(i - 1);
            }
        });
    }

    fn leaf(&mut self) {
        let n = self.n;
        let rk: Vec<u32> = intervals(n)
            .map(|(a, b)| {
                if a == b {
                    (self.d[a] - self.e[a]) as u32
                } else {
                    let joint = self.comp(a, b).hstack(&self.bases[b]).rank(&self.fp);
                    (joint - self.e[b]) as u32
                }
            })
            .collect();
        let m = Multisegment::from_rank_invariants(n, &rk)
            .expect("rank invariants of an actual quotient are consistent");
        *self.tally.entry(m).or_insert(0) += 1;
    }
}

/// For every quotient type `M`, the number of subrepresentations `U ⊆ X`
/// with `U ≅ N` and `X/U ≅ M` over `F_p`. Quotient types with count zero are omitted.
pub fn quotient_census(x: &MatrixRep, sub: &Multisegment) -> Result<BTreeMap<Multisegment, u64>> {
    let n = x.dims().rank();
    if sub.rank() != n {
        return Err(Error::RankMismatch(n, sub.rank()));
    }
    let d: Vec<usize> = (0..=n).map(|i| x.dims().at(i) as usize).collect();
    let dn = sub.dim_vector();
    let e: Vec<usize> = (0..=n).map(|i| dn.at(i) as usize).collect();
    if (1..=n).any(|i| e[i] > d[i]) {
        return Ok(BTreeMap::new());
    }
    let fp = Fp::new(x.p());
    let mut composite = vec![vec![None; n + 1]; n + 1];
    for a in 1..=n {
        for b in a..=n {
            composite[a][b] = Some(x.composite(a, b, &fp));
        }
    }
    let bases = (0..=n).map(|i| FpMatrix::zeros(d[i], 0)).collect();
    let mut census = Census {
        fp,
        n,
        d,
        e,
        x,
        composite,
        sub_ranks: sub.rank_invariants(),
        bases,
        tally: BTreeMap::new(),
    };
    census.descend(n);
    Ok(census.tally)
}

/// The number of subrepresentations of `x` isomorphic to `sub` with quotient isomorphic to `quot`.
pub fn count_subreps(x: &MatrixRep, sub: &Multisegment, quot: &Multisegment) -> Result<u64> {
    let total = sub.dim_vector().add(&quot.dim_vector())?;
    if &total != x.dims() {
        return Err(Error::DimensionMismatch(format!(
            "dim N + dim M = {total} but dim X = {}",
            x.dims()
        )));
    }
    Ok(quotient_census(x, sub)?.get(quot).copied().unwrap_or(0))
}

/// An upper bound for the degree in `q` of every Hall polynomial `F^X_{M,N}`:
/// the dimension of the product of Grassmannians the enumeration runs over.
pub fn census_degree_bound(x: &Multisegment, sub: &Multisegment) -> Option<u32> {
    let n = x.rank();
    let d = x.dim_vector();
    let e = sub.dim_vector();
    let rk = x.rank_invariants();
    let mut total = 0u32;
    for i in 1..=n {
        let w = if i == n {
            d.at(n)
        } else {
            let kernel = d.at(i) - rk[interval_index(n, i, i + 1)];
            d.at(i).min(kernel + e.at(i + 1))
        };
        if e.at(i) > w {
            return None;
        }
        total += e.at(i) * (w - e.at(i));
    }
    Some(total)
}

/// A basis of the intertwiners `X -> X` over `F_p`, each as its list of vertex blocks.
fn endomorphism_basis(x: &MatrixRep) -> Vec<Vec<FpMatrix>> {
    let fp = Fp::new(x.p());
    let n = x.dims().rank();
    let d: Vec<usize> = (0..=n).map(|i| x.dims().at(i) as usize).collect();
    let mut offset = vec![0usize; n + 1];
    for k in 1..=n {
        offset[k] = offset[k - 1] + d[k] * d[k];
    }
    let unknowns = offset[n];
    let var = |k: usize, a: usize, b: usize| offset[k - 1] + a * d[k] + b;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for k in 1..n {
        let f = x.arrow(k);
        for a in 0..d[k + 1] {
            for b in 0..d[k] {
                // (φ_{k+1} f)[a][b] - (f φ_k)[a][b] = 0
                let mut row = vec![0u32; unknowns];
                for c in 0..d[k + 1] {
                    let v = f.get(c, b);
                    if v != 0 {
                        let idx = var(k + 1, a, c);
                        row[idx] = fp.add(row[idx], v);
                    }
                }
                for c in 0..d[k] {
                    let v = f.get(a, c);
                    if v != 0 {
                        let idx = var(k, c, b);
                        row[idx] = fp.sub(row[idx], v);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = FpMatrix::from_rows(rows.len(), unknowns, rows.concat());
    system
        .nullspace(&fp)
        .into_iter()
        .map(|sol| {
            (1..=n)
                .map(|k| {
                    let start = offset[k - 1];
                    FpMatrix::from_rows(d[k], d[k], sol[start..start + d[k] * d[k]].to_vec())
                })
                .collect()
        })
        .collect()
}

/// `|Aut(X)|` over `F_p`, by enumerating the endomorphism space.
pub fn count_automorphisms_at(x: &MatrixRep) -> u64 {
    let fp = Fp::new(x.p());
    let basis = endomorphism_basis(x);
    let n = x.dims().rank();
    let p = x.p();
    let mut coeffs = vec![0u32; basis.len()];
    let mut count = 0u64;
    loop {
        let invertible = (1..=n).all(|k| {
            let dk = x.dims().at(k) as usize;
            let mut block = FpMatrix::zeros(dk, dk);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c == 0 {
                    continue;
                }
                for r in 0..dk {
                    for s in 0..dk {
                        let v = fp.add(block.get(r, s), fp.mul(*c, b[k - 1].get(r, s)));
                        block.set(r, s, v);
                    }
                }
            }
            dk == 0 || block.det(&fp) != 0
        });
        if invertible {
            count += 1;
        }
        let mut pos = 0;
        while pos < coeffs.len() {
            coeffs[pos] += 1;
            if coeffs[pos] == p {
                coeffs[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
        if pos == coeffs.len() {
            return count;
        }
    }
}

//! Dense linear algebra over the prime field `F_p`, sized for quiver
//! representations of total dimension well below 100.

use std::fmt;

/// Arithmetic context for a prime field.
#[derive(Clone, Debug)]
pub struct Fp {
    p: u32,
    inv: Vec<u32>,
}

impl Fp {
    /// `p` must be prime; this is not checked.
    pub fn new(p: u32) -> Self {
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a, p - 2, p);
        }
        Self { p, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Row-major matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    /// Builds the matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, rhs: &FpMatrix, fp: &Fp) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows);
        let p = fp.p() as u64;
        let mut out = FpMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] =
                        ((out.data[idx] as u64 + a * rhs.data[k * rhs.cols + j] as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&rhs.data[i * rhs.cols..(i + 1) * rhs.cols]);
        }
        FpMatrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn rank(&self, fp: &Fp) -> usize {
        let mut m = self.clone();
        m.row_reduce(fp).len()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn row_reduce(&mut self, fp: &Fp) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = fp.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = fp.mul(self.data[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = fp.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = fp.sub(self.data[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn nullspace(&self, fp: &Fp) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u32; self.cols];
                x[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = fp.sub(0, m.get(r, f));
                }
                x
            })
            .collect()
    }

    /// Determinant of a square matrix.
    pub fn det(&self, fp: &Fp) -> u32 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = fp.sub(0, det);
            }
            let pivot = m.get(c, c);
            det = fp.mul(det, pivot);
            let inv = fp.inv(pivot);
            for i in c + 1..n {
                let factor = fp.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let t = fp.mul(factor, m.get(c, j));
                    m.data[i * n + j] = fp.sub(m.data[i * n + j], t);
                }
            }
        }
        det
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

/// Calls `visit` once for every `k`-dimensional subspace of `F_p^w`, passing
/// its reduced row echelon basis as a `k x w` matrix.
pub fn for_each_subspace<F: FnMut(&FpMatrix)>(w: usize, k: usize, p: u32, mut visit: F) {
    if k > w {
        return;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: row r may be nonzero in non-pivot columns to the right of its pivot.
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..w {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut m = FpMatrix::zeros(k, w);
        for (r, &pc) in pivots.iter().enumerate() {
            m.set(r, pc, 1);
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            visit(&m);
            // Odometer over the free entries.
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                let (r, c) = free[pos];
                if digits[pos] == p {
                    digits[pos] = 0;
                    m.set(r, c, 0);
                    pos += 1;
                } else {
                    m.set(r, c, digits[pos]);
                    break;
                }
            }
            if pos == digits.len() {
                break;
            }
        }
        if !next_combination(&mut pivots, w) {
            return;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u32> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u32;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|&&q| q * q <= candidate)
            .all(|&q| !candidate.is_multiple_of(q))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_count(w: u64, k: u64, p: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= p.pow((w - i) as u32) - 1;
            den *= p.pow((i + 1) as u32) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for p in [2u32, 3, 5] {
            for w in 0..=4usize {
                for k in 0..=w {
                    let mut count = 0u64;
                    let mut seen = std::collections::HashSet::new();
                    for_each_subspace(w, k, p, |m| {
                        count += 1;
                        assert_eq!(m.rank(&Fp::new(p)), k);
                        seen.insert(m.clone());
                    });
                    assert_eq!(count, gaussian_count(w as u64, k as u64, p as u64));
                    assert_eq!(seen.len() as u64, count);
                }
            }
        }
    }

    #[test]
    fn rank_nullspace_det() {
        let fp = Fp::new(5);
        let m = FpMatrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 0]);
        assert_eq!(m.rank(&fp), 2);
        let ns = m.nullspace(&fp);
        assert_eq!(ns.len(), 1);
        let x = FpMatrix::from_columns(3, &ns);
        assert!(m.mul(&x, &fp).data.iter().all(|&e| e == 0));
        let sq = FpMatrix::from_rows(2, 2, vec![1, 2, 3, 4]);
        assert_eq!(sq.det(&fp), fp.reduce(-2));
    }

    #[test]
    fn primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }
}

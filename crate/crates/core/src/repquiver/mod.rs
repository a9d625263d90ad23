//! Discrete invariants of representations of the equioriented quiver
//! `1 -> 2 -> ... -> n`: dimension vectors, multisegments, orbit labels
//! `(r, h)` of the variety of complexes and the closed dimension formulas.
//!
//! Vertices are 1-based in every public API, matching the usual notation.

mod hom;
mod matrix;
mod parse;

use std::fmt;

use crate::error::{Error, Result};

pub use hom::{hom_dim, hom_dim_by_intervals, integer_rank, SparseRow};
pub use matrix::MatrixRep;
pub use parse::parse_int_list;

/// A dimension vector `(d_1, ..., d_n)`, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(d: Vec<u32>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::DimensionMismatch(
                "dimension vector of rank 0".into(),
            ));
        }
        Ok(Self(d))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n.max(1)])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `d_i` for a 1-based vertex, zero outside `1..=n`.
    pub fn at(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if self.rank() != other.rank() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn add(&self, other: &DimVector) -> Result<DimVector> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// All dimension vectors of rank `n` with total at most `max_total`, in lexicographic order.
    pub fn all_up_to(n: usize, max_total: u32) -> Vec<DimVector> {
        fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
            if cur.len() == n {
                out.push(DimVector(cur.clone()));
                return;
            }
            for x in 0..=budget {
                cur.push(x);
                rec(n, budget - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max_total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

pub(crate) fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// `<d, e> = sum_i d_i e_i - sum_{i<n} d_i e_{i+1}`.
pub fn euler_form(d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.rank() != e.rank() {
        return Err(Error::RankMismatch(d.rank(), e.rank()));
    }
    let (d, e) = (d.as_slice(), e.as_slice());
    let diag: i64 = d.iter().zip(e).map(|(a, b)| *a as i64 * *b as i64).sum();
    let arrows: i64 = d
        .iter()
        .zip(e.iter().skip(1))
        .map(|(a, b)| *a as i64 * *b as i64)
        .sum();
    Ok(diag - arrows)
}

/// Number of intervals `[i..j]` with `1 <= i <= j <= n`.
pub fn interval_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of `[i..j]` in the order `[1..1], [1..2], ..., [1..n], [2..2], ...`.
pub fn interval_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    (i - 1) * (2 * n + 2 - i) / 2 + (j - i)
}

/// Iterates over all intervals of rank `n` in index order.
pub fn intervals(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i..=n).map(move |j| (i, j)))
}

/// An isomorphism class of representations: multiplicities `m_{i,j}` of the
/// interval modules `U_{i,j}` (with `S_i = U_{i,i}`).
///
/// The derived order compares the multiplicity vector in interval order and is
/// used only to make every map keyed by multisegments deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    n: usize,
    m: Vec<u32>,
}

impl Multisegment {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            m: vec![0; interval_count(n)],
        }
    }

    /// The interval module `U_{i,j}`.
    pub fn interval(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_segments(n, &[(i, j, 1)])
    }

    /// The simple module `S_i`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        Self::interval(n, i, i)
    }

    pub fn from_segments(n: usize, segments: &[(usize, usize, u32)]) -> Result<Self> {
        let mut out = Self::zero(n);
        for &(i, j, mult) in segments {
            if !(1 <= i && i <= j && j <= n) {
                return Err(Error::IndexOutOfRange(format!(
                    "segment [{i}..{j}] for n = {n}"
                )));
            }
            out.m[interval_index(n, i, j)] += mult;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        if 1 <= i && i <= j && j <= self.n {
            self.m[interval_index(self.n, i, j)]
        } else {
            0
        }
    }

    /// Nonzero segments `(i, j, m_{i,j})` in interval order.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        intervals(self.n)
            .zip(&self.m)
            .filter(|(_, &m)| m > 0)
            .map(|((i, j), &m)| (i, j, m))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }

    pub fn segment_count(&self) -> u32 {
        self.m.iter().sum()
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = vec![0u32; self.n.max(1)];
        for (i, j, m) in self.segments() {
            for x in &mut d[i - 1..j] {
                *x += m;
            }
        }
        DimVector(d)
    }

    pub fn total_dim(&self) -> u32 {
        self.dim_vector().total()
    }

    pub fn direct_sum(&self, other: &Multisegment) -> Result<Multisegment> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(Multisegment {
            n: self.n,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        })
    }

    /// Same segments viewed in rank `n`; fails if a segment does not fit.
    pub fn with_rank(&self, n: usize) -> Result<Multisegment> {
        let segs: Vec<_> = self.segments().collect();
        Multisegment::from_segments(n, &segs)
    }

    /// Moves every segment `[i..j]` to `[i+delta..j+delta]`, in rank `n`.
    pub fn translated(&self, delta: i64, n: usize) -> Result<Multisegment> {
        let segs = self
            .segments()
            .map(|(i, j, m)| {
                let (a, b) = (i as i64 + delta, j as i64 + delta);
                if a < 1 {
                    Err(Error::IndexOutOfRange(format!("[{a}..{b}]")))
                } else {
                    Ok((a as usize, b as usize, m))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Multisegment::from_segments(n, &segs)
    }

    /// Smallest start and largest end over all segments, if any.
    pub fn span(&self) -> Option<(usize, usize)> {
        let lo = self.segments().map(|(i, _, _)| i).min()?;
        let hi = self.segments().map(|(_, j, _)| j).max()?;
        Some((lo, hi))
    }

    /// Rank invariants `rk_{i,j}` (rank of the composite map from vertex `i`
    /// to vertex `j`), indexed like intervals.
    pub fn rank_invariants(&self) -> Vec<u32> {
        intervals(self.n)
            .map(|(i, j)| {
                self.segments()
                    .filter(|&(a, b, _)| a <= i && j <= b)
                    .map(|(_, _, m)| m)
                    .sum()
            })
            .collect()
    }

    /// Inverse of [`Multisegment::rank_invariants`]:
    /// `m_{i,j} = rk_{i,j} - rk_{i-1,j} - rk_{i,j+1} + rk_{i-1,j+1}`.
    pub fn from_rank_invariants(n: usize, rk: &[u32]) -> Result<Multisegment> {
        let get = |i: usize, j: usize| -> i64 {
            if i == 0 || j > n || i > j {
                0
            } else {
                rk[interval_index(n, i, j)] as i64
            }
        };
        let mut out = Multisegment::zero(n);
        for (i, j) in intervals(n) {
            let m = get(i, j) - get(i - 1, j) - get(i, j + 1) + get(i - 1, j + 1);
            if m < 0 {
                return Err(Error::NegativeMultiplicity(i, j));
            }
            out.m[interval_index(n, i, j)] = m as u32;
        }
        Ok(out)
    }

    /// All multisegments of the given dimension vector, in ascending order.
    pub fn enumerate(d: &DimVector) -> Vec<Multisegment> {
        let n = d.rank();
        let ivs: Vec<(usize, usize)> = intervals(n).collect();
        let mut out = Vec::new();
        let mut remaining = d.as_slice().to_vec();
        let mut cur = vec![0u32; ivs.len()];
        // Intervals are visited in index order; intervals starting at i are the
        // only remaining ones that can cover vertex i, so the last of them is forced.
        fn rec(
            idx: usize,
            ivs: &[(usize, usize)],
            remaining: &mut [u32],
            cur: &mut [u32],
            out: &mut Vec<Multisegment>,
            n: usize,
        ) {
            if idx == ivs.len() {
                if remaining.iter().all(|&x| x == 0) {
                    out.push(Multisegment { n, m: cur.to_vec() });
                }
                return;
            }
            let (i, j) = ivs[idx];
            let cap = remaining[i - 1..j].iter().copied().min().unwrap_or(0);
            let is_last_for_i = j == n;
            let range: Vec<u32> = if is_last_for_i {
                // Vertex i is covered by no later interval.
                if remaining[i - 1] <= cap {
                    vec![remaining[i - 1]]
                } else {
                    vec![]
                }
            } else {
                (0..=cap).collect()
            };
            for mult in range {
                for x in &mut remaining[i - 1..j] {
                    *x -= mult;
                }
                cur[idx] = mult;
                rec(idx + 1, ivs, remaining, cur, out, n);
                cur[idx] = 0;
                for x in &mut remaining[i - 1..j] {
                    *x += mult;
                }
            }
        }
        rec(0, &ivs, &mut remaining, &mut cur, &mut out, n);
        out.sort();
        out
    }

    /// Normal-form arrow map at vertex `k` (1-based, `k < n`): for every basis
    /// vector at `k`, the index of its image basis vector at `k + 1`, if any.
    ///
    /// The basis at vertex `k` lists one vector per copy of each segment
    /// containing `k`, in interval order.
    pub fn arrow_map(&self, k: usize) -> Vec<Option<usize>> {
        let mut src = Vec::new();
        let mut dst_index = 0usize;
        for (i, j, m) in self.segments() {
            for _ in 0..m {
                let at_k = i <= k && k <= j;
                let at_next = i <= k + 1 && k < j;
                if at_k {
                    src.push(if at_next { Some(dst_index) } else { None });
                }
                if i <= k + 1 && k < j {
                    dst_index += 1;
                }
            }
        }
        src
    }
}

impl fmt::Display for Multisegment {
    /// `[i..j]^m` terms joined by `+`; multiplicity one is omitted; the zero multisegment prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, j, m) in self.segments() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            write!(f, "[{i}..{j}]")?;
            if m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Multisegment {
    /// Parses the multisegment grammar in rank `n`.
    pub fn parse(s: &str, n: usize) -> Result<Multisegment> {
        parse::parse_multisegment(s, Some(n))
    }

    /// Parses the multisegment grammar with the smallest rank that fits.
    pub fn parse_any_rank(s: &str) -> Result<Multisegment> {
        parse::parse_multisegment(s, None)
    }
}

/// True iff no two consecutive vertices lie in the set.
pub fn is_sparse(set: &[usize]) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[1] > w[0] + 1)
}

/// `a ∔ b = (a_1 + b_1, a_2 + b_1 + b_2, ..., a_n + b_{n-1})` for `|b| = |a| - 1`.
pub fn dotplus(a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
    if a.len() != b.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "dotplus needs lengths n and n-1, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let bb = |i: usize| if i == 0 || i > b.len() { 0 } else { b[i - 1] };
    Ok((1..=a.len())
        .map(|i| a[i - 1] + bb(i - 1) + bb(i))
        .collect())
}

/// A deformation index `k` with `0 <= k <= r`; `k_0 = k_n = 0` by convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeformationIndex(Vec<u32>);

impl DeformationIndex {
    pub fn new(k: Vec<u32>) -> Self {
        Self(k)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `k_i` for `0 <= i <= n`, zero at both ends.
    pub fn at(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    /// All `k` with `0 <= k <= r` componentwise, lexicographic with `k_1` outermost.
    pub fn all_below(r: &[u32]) -> Vec<DeformationIndex> {
        let mut out = vec![Vec::new()];
        for &ri in r {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=ri).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DeformationIndex).collect()
    }
}

/// An orbit `O(r, h)` in the variety of complexes of dimension vector `d`,
/// with `d_i = r_{i-1} + r_i + h_i` and `r_0 = r_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexType {
    d: DimVector,
    r: Vec<u32>,
    h: Vec<u32>,
}

impl ComplexType {
    /// Derives `h` from `d` and the ranks `r`.
    pub fn from_ranks(d: &DimVector, r: &[u32]) -> Result<Self> {
        let n = d.rank();
        if r.len() != n - 1 {
            return Err(Error::InvalidComplexType(format!(
                "r has length {}, expected {}",
                r.len(),
                n - 1
            )));
        }
        let rr = |i: usize| if i == 0 || i >= n { 0 } else { r[i - 1] };
        let mut h = Vec::with_capacity(n);
        for i in 1..=n {
            let used = rr(i - 1) + rr(i);
            match d.at(i).checked_sub(used) {
                Some(x) => h.push(x),
                None => {
                    return Err(Error::InvalidComplexType(format!(
                        "r = ({}) exceeds d = {d} at vertex {i}",
                        join(r)
                    )))
                }
            }
        }
        Ok(Self {
            d: d.clone(),
            r: r.to_vec(),
            h,
        })
    }

    /// Builds the type from `(r, h)` directly, deriving `d`.
    pub fn from_parts(r: &[u32], h: &[u32]) -> Result<Self> {
        let n = h.len();
        if n == 0 || r.len() + 1 != n {
            return Err(Error::InvalidComplexType(format!(
                "r has length {}, h has length {}",
                r.len(),
                n
            )));
        }
        let d = dotplus(h, r)?;
        Ok(Self {
            d: DimVector(d),
            r: r.to_vec(),
            h: h.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.d.rank()
    }

    pub fn dim(&self) -> &DimVector {
        &self.d
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn h(&self) -> &[u32] {
        &self.h
    }

    /// `r_i` with `r_0 = r_n = 0`.
    pub fn r_at(&self, i: usize) -> u32 {
        if i == 0 || i >= self.n() {
            0
        } else {
            self.r[i - 1]
        }
    }

    /// `h_i` for a 1-based vertex.
    pub fn h_at(&self, i: usize) -> u32 {
        self.h[i - 1]
    }

    /// `Ω = {i : h_i != 0}`, ascending.
    pub fn omega(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.h_at(i) != 0).collect()
    }

    pub fn is_component(&self) -> bool {
        is_sparse(&self.omega())
    }

    /// `M(r, h) = ⊕ S_i^{h_i} ⊕ U_{i,i+1}^{r_i}`.
    pub fn to_multisegment(&self) -> Multisegment {
        let n = self.n();
        let mut segs: Vec<(usize, usize, u32)> = (1..=n).map(|i| (i, i, self.h_at(i))).collect();
        segs.extend((1..n).map(|i| (i, i + 1, self.r_at(i))));
        Multisegment::from_segments(n, &segs).expect("segments of length at most two fit")
    }

    pub fn check_deformation(&self, k: &DeformationIndex) -> Result<()> {
        let ok = k.0.len() == self.r.len() && k.0.iter().zip(&self.r).all(|(a, b)| a <= b);
        if ok {
            Ok(())
        } else {
            Err(Error::DeformationOutOfRange {
                k: k.0.clone(),
                r: self.r.clone(),
            })
        }
    }

    /// The orbit `O(r - k, h ∔ k)`.
    pub fn deform(&self, k: &DeformationIndex) -> Result<ComplexType> {
        self.check_deformation(k)?;
        let r: Vec<u32> = self.r.iter().zip(&k.0).map(|(a, b)| a - b).collect();
        let h = dotplus(&self.h, &k.0)?;
        Ok(ComplexType {
            d: self.d.clone(),
            r,
            h,
        })
    }

    pub fn deformations(&self) -> Vec<DeformationIndex> {
        DeformationIndex::all_below(&self.r)
    }
}

/// Closed form `[M, M] = Σ (h_i² + h_i r_i + r_i² + h_i r_{i-1} + r_{i-1} r_i)`.
pub fn mm_closed_form(c: &ComplexType) -> i64 {
    (1..=c.n())
        .map(|i| {
            let (h, r, rp) = (c.h_at(i) as i64, c.r_at(i) as i64, c.r_at(i - 1) as i64);
            h * h + h * r + r * r + h * rp + rp * r
        })
        .sum()
}

/// `[N, N] - [M, M] = Σ (h_i k_i + h_i k_{i-1} + k_i² + k_{i-1} k_i)` for `N = M(r - k, h ∔ k)`.
pub fn codim_shift(c: &ComplexType, k: &DeformationIndex) -> Result<i64> {
    c.check_deformation(k)?;
    Ok((1..=c.n())
        .map(|i| {
            let (h, ki, kp) = (c.h_at(i) as i64, k.at(i) as i64, k.at(i - 1) as i64);
            h * ki + h * kp + ki * ki + kp * ki
        })
        .sum())
}

/// All orbits `(r, h)` of `Com(d)`, lexicographically descending in `r`.
pub fn enumerate_orbits(d: &DimVector) -> Vec<ComplexType> {
    let n = d.rank();
    let mut out = Vec::new();
    let bounds: Vec<u32> = (1..n).map(|i| d.at(i).min(d.at(i + 1))).collect();
    for k in DeformationIndex::all_below(&bounds).into_iter().rev() {
        if let Ok(c) = ComplexType::from_ranks(d, k.as_slice()) {
            out.push(c);
        }
    }
    out
}

/// The orbits whose closures are the irreducible components of `Com(d)`.
pub fn enumerate_components(d: &DimVector) -> Vec<ComplexType> {
    enumerate_orbits(d)
        .into_iter()
        .filter(ComplexType::is_component)
        .collect()
}

/// `O(a) ⊆ closure(O(b))` iff `r(a) <= r(b)` componentwise.
pub fn closure_leq(a: &ComplexType, b: &ComplexType) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.r.iter().zip(&b.r).all(|(x, y)| x <= y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(d: &[u32]) -> DimVector {
        DimVector::new(d.to_vec()).unwrap()
    }

    fn ct(r: &[u32], h: &[u32]) -> ComplexType {
        ComplexType::from_parts(r, h).unwrap()
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(euler_form(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -1);
        assert_eq!(euler_form(&dv(&[0, 1]), &dv(&[1, 0])).unwrap(), 0);
        assert!(euler_form(&dv(&[1]), &dv(&[1, 0])).is_err());
        for n in 1..=5 {
            for (i, j) in intervals(n) {
                let a = Multisegment::interval(n, i, j).unwrap().dim_vector();
                assert_eq!(euler_form(&a, &a).unwrap(), 1, "root [{i}..{j}]");
            }
        }
    }

    #[test]
    fn interval_indexing_is_dense() {
        for n in 1..=6 {
            let idx: Vec<usize> = intervals(n).map(|(i, j)| interval_index(n, i, j)).collect();
            assert_eq!(idx, (0..interval_count(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dotplus_and_deform() {
        assert_eq!(dotplus(&[0, 1, 0], &[1, 1]).unwrap(), vec![1, 3, 1]);
        let c = ComplexType::from_ranks(&dv(&[1, 2, 1]), &[1, 1]).unwrap();
        assert_eq!(c.h(), &[0, 0, 0]);
        let k = DeformationIndex::new(vec![1, 1]);
        let deformed = c.deform(&k).unwrap();
        assert_eq!(deformed.r(), &[0, 0]);
        assert_eq!(deformed.h(), &[1, 2, 1]);
        assert_eq!(deformed.dim(), c.dim());
        assert_eq!(c.deform(&DeformationIndex::zero(2)).unwrap(), c);
        assert!(c.deform(&DeformationIndex::new(vec![2, 0])).is_err());
    }

    #[test]
    fn complex_to_multisegment() {
        let m = ct(&[1], &[0, 0]).to_multisegment();
        assert_eq!(m, Multisegment::interval(2, 1, 2).unwrap());
        assert_eq!(m.to_string(), "[1..2]");
    }

    #[test]
    fn omega_and_sparsity() {
        let c = ct(&[0, 0], &[0, 1, 0]);
        assert_eq!(c.omega(), vec![2]);
        assert!(c.is_component());
        assert!(!ct(&[0, 0], &[1, 1, 0]).is_component());
        assert!(ct(&[0, 0], &[0, 0, 0]).omega().is_empty());
        assert!(is_sparse(&[]));
        assert!(is_sparse(&[3, 1]));
        assert!(!is_sparse(&[2, 3]));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(mm_closed_form(&ct(&[1], &[0, 0])), 1);
        assert_eq!(mm_closed_form(&ct(&[1, 1], &[0, 1, 0])), 6);
        assert_eq!(mm_closed_form(&ct(&[], &[4])), 16);
        let c = ct(&[1, 1], &[0, 0, 0]);
        let k = DeformationIndex::new(vec![1, 1]);
        assert_eq!(codim_shift(&c, &DeformationIndex::zero(2)).unwrap(), 0);
        assert_eq!(codim_shift(&c, &k).unwrap(), 3);
        assert_eq!(codim_shift(&ct(&[1, 1], &[0, 1, 0]), &k).unwrap(), 5);
        assert_eq!(
            codim_shift(&c, &k).unwrap(),
            mm_closed_form(&c.deform(&k).unwrap()) - mm_closed_form(&c)
        );
    }

    // Brute force: every r with 0 <= r_i <= max(d), keep the feasible sparse ones.
    fn brute_components(d: &DimVector, sparse_only: bool) -> Vec<Vec<u32>> {
        let n = d.rank();
        let top = *d.as_slice().iter().max().unwrap();
        let mut out = Vec::new();
        for k in DeformationIndex::all_below(&vec![top; n - 1]) {
            if let Ok(c) = ComplexType::from_ranks(d, k.as_slice()) {
                if !sparse_only || c.is_component() {
                    out.push(c.r().to_vec());
                }
            }
        }
        out.sort();
        out.reverse();
        out
    }

    #[test]
    fn component_enumeration() {
        let rs = |d: &[u32]| -> Vec<Vec<u32>> {
            enumerate_components(&dv(d))
                .iter()
                .map(|c| c.r().to_vec())
                .collect()
        };
        assert_eq!(rs(&[1, 1, 1]), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(rs(&[1, 2, 1]), vec![vec![1, 1]]);
        assert_eq!(rs(&[2, 2]), vec![vec![2]]);
        for n in 1..=4 {
            for d in DimVector::all_up_to(n, 5) {
                assert_eq!(rs(d.as_slice()), brute_components(&d, true), "d = {d}");
                let orbits: Vec<Vec<u32>> = enumerate_orbits(&d)
                    .iter()
                    .map(|c| c.r().to_vec())
                    .collect();
                assert_eq!(orbits, brute_components(&d, false));
            }
        }
        assert_eq!(enumerate_orbits(&dv(&[1, 1, 1])).len(), 3);
    }

    #[test]
    fn closure_order_is_partial_order() {
        let a = ComplexType::from_ranks(&dv(&[1, 2, 1]), &[0, 0]).unwrap();
        let b = ComplexType::from_ranks(&dv(&[1, 2, 1]), &[1, 1]).unwrap();
        assert!(closure_leq(&a, &b).unwrap());
        let x = ComplexType::from_ranks(&dv(&[1, 1, 1]), &[1, 0]).unwrap();
        let y = ComplexType::from_ranks(&dv(&[1, 1, 1]), &[0, 1]).unwrap();
        assert!(!closure_leq(&x, &y).unwrap() && !closure_leq(&y, &x).unwrap());

        for d in [dv(&[1, 2, 2, 1]), dv(&[2, 3, 2])] {
            let orbits = enumerate_orbits(&d);
            for a in &orbits {
                assert!(closure_leq(a, a).unwrap());
                for b in &orbits {
                    let ab = closure_leq(a, b).unwrap();
                    if ab && closure_leq(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &orbits {
                        if ab && closure_leq(b, c).unwrap() {
                            assert!(closure_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multisegment_enumeration() {
        assert_eq!(Multisegment::enumerate(&dv(&[1, 1])).len(), 2);
        assert_eq!(Multisegment::enumerate(&dv(&[2, 1])).len(), 2);
        let zero = Multisegment::enumerate(&dv(&[0, 0, 0]));
        assert_eq!(zero, vec![Multisegment::zero(3)]);
        // Exhaustive check against a filter over bounded multiplicity vectors.
        for n in 1..=3 {
            for d in DimVector::all_up_to(n, 4) {
                let got = Multisegment::enumerate(&d);
                let mut brute = Vec::new();
                let bounds = vec![4u32; interval_count(n)];
                for m in DeformationIndex::all_below(&bounds) {
                    let ms = Multisegment {
                        n,
                        m: m.as_slice().to_vec(),
                    };
                    if ms.dim_vector() == d {
                        brute.push(ms);
                    }
                }
                brute.sort();
                assert_eq!(got, brute, "d = {d}");
            }
        }
    }

    #[test]
    fn rank_invariants_roundtrip() {
        for n in 1..=4 {
            for d in DimVector::all_up_to(n, 4) {
                for m in Multisegment::enumerate(&d) {
                    let rk = m.rank_invariants();
                    assert_eq!(Multisegment::from_rank_invariants(n, &rk).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn arrow_map_shape() {
        let m = Multisegment::from_segments(3, &[(1, 2, 1), (2, 3, 2), (2, 2, 1)]).unwrap();
        // basis at 2: [1..2], [2..2], [2..3] x2  -> at 3: [2..3] x2
        assert_eq!(m.arrow_map(2), vec![None, None, Some(0), Some(1)]);
        assert_eq!(m.arrow_map(1), vec![Some(0)]);
    }
}

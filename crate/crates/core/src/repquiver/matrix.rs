use crate::error::{Error, Result};
use crate::fp::{Fp, FpMatrix};

use super::{intervals, DimVector, Multisegment};

/// A concrete representation over `F_p`: spaces `F_p^{d_i}` and arrow
/// matrices `f_i` of shape `d_{i+1} x d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    p: u32,
    dims: DimVector,
    maps: Vec<FpMatrix>,
}

impl MatrixRep {
    /// Validates the shapes, that `p` is prime and that every entry is reduced mod `p`.
    pub fn new(p: u32, dims: DimVector, maps: Vec<FpMatrix>) -> Result<Self> {
        if p < 2
            || (2..p)
                .take_while(|q| q * q <= p)
                .any(|q| p.is_multiple_of(q))
        {
            return Err(Error::IndexOutOfRange(format!("p = {p} is not prime")));
        }
        let n = dims.rank();
        if maps.len() + 1 != n {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow matrices for rank {n}",
                maps.len()
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            let (rows, cols) = (dims.at(k + 2) as usize, dims.at(k + 1) as usize);
            if f.rows() != rows || f.cols() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} is {}x{}, expected {rows}x{cols}",
                    k + 1,
                    f.rows(),
                    f.cols()
                )));
            }
            for r in 0..rows {
                for c in 0..cols {
                    if f.get(r, c) >= p {
                        return Err(Error::IndexOutOfRange(format!(
                            "arrow {} entry ({r}, {c}) = {} is not reduced mod {p}",
                            k + 1,
                            f.get(r, c)
                        )));
                    }
                }
            }
        }
        Ok(Self { p, dims, maps })
    }

    /// Compact byte encoding: `p` (one byte), `n`, the `n` dimensions, then
    /// every arrow matrix row by row, one byte per entry. Needs `p < 256`
    /// and dimensions below 256.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.p as u8, self.dims.rank() as u8];
        out.extend(self.dims.as_slice().iter().map(|&d| d as u8));
        for f in &self.maps {
            for r in 0..f.rows() {
                out.extend((0..f.cols()).map(|c| f.get(r, c) as u8));
            }
        }
        out
    }

    /// Inverse of [`MatrixRep::to_bytes`]; positions in errors are byte offsets.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (&p, rest) = bytes
            .split_first()
            .ok_or_else(|| Error::parse(0, "missing p"))?;
        let (&n, rest) = rest
            .split_first()
            .ok_or_else(|| Error::parse(1, "missing rank"))?;
        let n = n as usize;
        if n == 0 || rest.len() < n {
            return Err(Error::parse(
                2,
                format!("need {n} dimensions, rank at least 1"),
            ));
        }
        let (dims, mut entries) = rest.split_at(n);
        let dims = DimVector::new(dims.iter().map(|&d| d as u32).collect())?;
        let mut pos = 2 + n;
        let mut maps = Vec::with_capacity(n - 1);
        for k in 1..n {
            let (rows, cols) = (dims.at(k + 1) as usize, dims.at(k) as usize);
            if entries.len() < rows * cols {
                return Err(Error::parse(
                    pos + entries.len(),
                    format!("arrow {k} needs {} entries", rows * cols),
                ));
            }
            let (head, tail) = entries.split_at(rows * cols);
            maps.push(FpMatrix::from_rows(
                rows,
                cols,
                head.iter().map(|&x| x as u32).collect(),
            ));
            entries = tail;
            pos += rows * cols;
        }
        if !entries.is_empty() {
            return Err(Error::parse(pos, "trailing bytes"));
        }
        MatrixRep::new(p as u32, dims, maps)
    }

    /// The normal-form representative of `m`, reduced mod `p`.
    pub fn from_multisegment(m: &Multisegment, p: u32) -> Self {
        let dims = m.dim_vector();
        let n = m.rank();
        let maps = (1..n)
            .map(|k| {
                let mut f = FpMatrix::zeros(dims.at(k + 1) as usize, dims.at(k) as usize);
                for (src, dst) in m.arrow_map(k).into_iter().enumerate() {
                    if let Some(t) = dst {
                        f.set(t, src, 1 % p);
                    }
                }
                f
            })
            .collect();
        Self { p, dims, maps }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// The arrow `f_k : V_k -> V_{k+1}` (1-based `k < n`).
    pub fn arrow(&self, k: usize) -> &FpMatrix {
        &self.maps[k - 1]
    }

    /// The composite `f_{j-1} ... f_i : V_i -> V_j` for `i <= j`.
    pub fn composite(&self, i: usize, j: usize, fp: &Fp) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.dims.at(i) as usize);
        for k in i..j {
            acc = self.arrow(k).mul(&acc, fp);
        }
        acc
    }

    /// The isomorphism class, read off from the ranks of all composites.
    pub fn multisegment(&self) -> Result<Multisegment> {
        let fp = Fp::new(self.p);
        let n = self.dims.rank();
        let rk: Vec<u32> = intervals(n)
            .map(|(i, j)| self.composite(i, j, &fp).rank(&fp) as u32)
            .collect();
        Multisegment::from_rank_invariants(n, &rk)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_roundtrip() {
        for n in 1..=4 {
            for d in DimVector::all_up_to(n, 5) {
                for m in Multisegment::enumerate(&d) {
                    for p in [2, 3] {
                        let rep = MatrixRep::from_multisegment(&m, p);
                        assert_eq!(rep.multisegment().unwrap(), m);
                    }
                }
            }
        }
    }

    #[test]
    fn generic_maps() {
        // Two invertible 2x2 arrows: the representation is [1..3]^2.
        let dims = DimVector::new(vec![2, 2, 2]).unwrap();
        let f1 = FpMatrix::from_rows(2, 2, vec![1, 1, 0, 1]);
        let f2 = FpMatrix::from_rows(2, 2, vec![0, 1, 1, 0]);
        let rep = MatrixRep::new(3, dims.clone(), vec![f1, f2]).unwrap();
        assert_eq!(rep.multisegment().unwrap().to_string(), "[1..3]^2");
        // A rank-one first arrow whose image lies in the kernel of the second.
        let f1 = FpMatrix::from_rows(2, 2, vec![1, 0, 0, 0]);
        let f2 = FpMatrix::from_rows(2, 2, vec![0, 0, 0, 1]);
        let rep = MatrixRep::new(3, dims, vec![f1, f2]).unwrap();
        assert_eq!(
            rep.multisegment().unwrap().to_string(),
            "[1..1]+[1..2]+[2..3]+[3..3]"
        );
    }

    #[test]
    fn byte_encoding() {
        let m = Multisegment::parse("[1..3]+[2..2]^2+[2..3]", 3).unwrap();
        let rep = MatrixRep::from_multisegment(&m, 5);
        let bytes = rep.to_bytes();
        assert_eq!(MatrixRep::from_bytes(&bytes).unwrap(), rep);
        assert!(matches!(
            MatrixRep::from_bytes(&bytes[..bytes.len() - 1]),
            Err(Error::Parse { .. })
        ));
        let mut longer = bytes.clone();
        longer.push(0);
        assert!(
            matches!(MatrixRep::from_bytes(&longer), Err(Error::Parse { pos, .. }) if pos == bytes.len())
        );
        assert!(MatrixRep::from_bytes(&[]).is_err());
        assert!(MatrixRep::from_bytes(&[2, 0]).is_err());
    }

    #[test]
    fn shape_checks() {
        let dims = DimVector::new(vec![1, 2]).unwrap();
        assert!(MatrixRep::new(2, dims.clone(), vec![]).is_err());
        assert!(MatrixRep::new(2, dims.clone(), vec![FpMatrix::zeros(1, 2)]).is_err());
        assert!(MatrixRep::new(4, dims.clone(), vec![FpMatrix::zeros(2, 1)]).is_err());
        assert!(
            MatrixRep::new(3, dims.clone(), vec![FpMatrix::from_rows(2, 1, vec![1, 3])]).is_err()
        );
        assert!(MatrixRep::new(3, dims, vec![FpMatrix::from_rows(2, 1, vec![1, 2])]).is_ok());
    }
}

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lattice::{IndexRange, NodeSequence};
use crate::{Error, GaussianParam, Result};

const MAGIC: &[u8; 4] = b"GCIS";
const FORMAT_VERSION: u32 = 1;

/// Finite section `A[m, n] = e^{-c(λ_m - n)²}` of the map `(c_n) ↦ (f(λ_m))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationMatrix {
    pub param: GaussianParam,
    pub node_first: i64,
    pub nodes: Vec<f64>,
    pub coeff_first: i64,
    pub matrix: DMatrix<Complex64>,
    /// Columns added on each side beyond the nodes' integer hull.
    pub buffer: i64,
    /// Bound on `‖A_∞ c - A c‖₂ / ‖c‖₂` from the columns left out.
    pub tail_bound: f64,
}

/// Smallest `B ≥ 1` with `e^{-aB²/2} < tol`.
pub fn buffer_width(a: f64, tol: f64) -> i64 {
    let mut b = 1i64;
    while (-a * (b * b) as f64 / 2.0).exp() >= tol {
        b += 1;
    }
    b
}

/// `sqrt(rows · 2e^{-2aR²} / (1 - e^{-4aR}))` with `R = B + 1`, the smallest
/// distance from a node to an omitted column.
fn column_tail(a: f64, rows: usize, buffer: i64) -> f64 {
    let r = (buffer + 1) as f64;
    (rows as f64 * 2.0 * (-2.0 * a * r * r).exp() / -(-4.0 * a * r).exp_m1()).sqrt()
}

/// Builds the collocation matrix on the nodes of `node_range`.
///
/// Columns run over `[⌊λ_min⌋ - B, ⌈λ_max⌉ + B]`, so every omitted column sits
/// at distance `> B` from every node.
pub fn collocation_matrix(
    param: GaussianParam,
    seq: &NodeSequence,
    node_range: IndexRange,
    tol: f64,
) -> Result<CollocationMatrix> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::BadParameter(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let w = seq.window(node_range)?;
    let nodes = w.positions;
    let buffer = buffer_width(param.a(), tol);
    let lo = nodes[0].floor() as i64 - buffer;
    let hi = nodes.last().unwrap().ceil() as i64 + buffer;
    let cols = (hi - lo + 1) as usize;
    let matrix =
        DMatrix::from_fn(nodes.len(), cols, |i, j| param.atom(nodes[i] - (lo + j as i64) as f64));
    Ok(CollocationMatrix {
        param,
        node_first: w.first_index,
        tail_bound: column_tail(param.a(), nodes.len(), buffer),
        nodes,
        coeff_first: lo,
        matrix,
        buffer,
    })
}

impl CollocationMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn node_range(&self) -> IndexRange {
        IndexRange::new(self.node_first, self.node_first + self.rows() as i64 - 1)
    }

    pub fn coeff_range(&self) -> IndexRange {
        IndexRange::new(self.coeff_first, self.coeff_first + self.cols() as i64 - 1)
    }

    /// `A[m, n]` by absolute indices.
    pub fn entry(&self, m: i64, n: i64) -> Complex64 {
        self.matrix[((m - self.node_first) as usize, (n - self.coeff_first) as usize)]
    }

    /// Samples `(f(λ_m))` of `coeffs` restricted to the column range.
    pub fn apply(&self, coeffs: &super::CoefficientVector) -> Vec<Complex64> {
        let x = nalgebra::DVector::from_iterator(
            self.cols(),
            self.coeff_range().iter().map(|n| coeffs.get(n)),
        );
        (&self.matrix * x).iter().copied().collect()
    }

    /// Dense little-endian export: header (magic, version, node_first, rows,
    /// coeff_first, cols, buffer, tail_bound) then row-major `re, im` pairs.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&self.node_first.to_le_bytes())?;
        out.write_all(&(self.rows() as u64).to_le_bytes())?;
        out.write_all(&self.coeff_first.to_le_bytes())?;
        out.write_all(&(self.cols() as u64).to_le_bytes())?;
        out.write_all(&(self.buffer as u64).to_le_bytes())?;
        out.write_all(&self.tail_bound.to_le_bytes())?;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let z = self.matrix[(i, j)];
                out.write_all(&z.re.to_le_bytes())?;
                out.write_all(&z.im.to_le_bytes())?;
            }
        }
        Ok(())
    }
}

/// Contents of a file written by [`CollocationMatrix::write_binary`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseExport {
    pub node_first: i64,
    pub coeff_first: i64,
    pub buffer: u64,
    pub tail_bound: f64,
    pub matrix: DMatrix<Complex64>,
}

fn read_array<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_binary<R: Read>(mut r: R) -> Result<DenseExport> {
    if &read_array::<_, 4>(&mut r)? != MAGIC {
        return Err(Error::BadParameter("not a collocation matrix file".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != FORMAT_VERSION {
        return Err(Error::BadParameter(format!("unsupported format version {version}")));
    }
    let node_first = i64::from_le_bytes(read_array(&mut r)?);
    let rows = u64::from_le_bytes(read_array(&mut r)?) as usize;
    let coeff_first = i64::from_le_bytes(read_array(&mut r)?);
    let cols = u64::from_le_bytes(read_array(&mut r)?) as usize;
    let buffer = u64::from_le_bytes(read_array(&mut r)?);
    let tail_bound = f64::from_le_bytes(read_array(&mut r)?);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re = f64::from_le_bytes(read_array(&mut r)?);
        let im = f64::from_le_bytes(read_array(&mut r)?);
        data.push(Complex64::new(re, im));
    }
    Ok(DenseExport {
        node_first,
        coeff_first,
        buffer,
        tail_bound,
        matrix: DMatrix::from_row_slice(rows, cols, &data),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> GaussianParam {
        GaussianParam::real(1.0).unwrap()
    }

    #[test]
    fn integer_nodes() {
        let c = collocation_matrix(a1(), &NodeSequence::integers(), IndexRange::symmetric(5), 1e-16)
            .unwrap();
        assert_eq!(c.buffer, 9);
        for m in -5..=5 {
            assert_eq!(c.entry(m, m), Complex64::new(1.0, 0.0));
            assert!((c.entry(m, m + 1).re - (-1.0f64).exp()).abs() < 1e-16);
        }
        assert!(c.tail_bound < 1e-16);
    }

    #[test]
    fn half_shift_is_symmetric_about_midpoint() {
        let s = NodeSequence::affine(1.0, 0.5).unwrap();
        let c = collocation_matrix(a1(), &s, IndexRange::symmetric(4), 1e-16).unwrap();
        let q = (-0.25f64).exp();
        for m in -4..=4 {
            assert!((c.entry(m, m).re - q).abs() < 1e-16);
            assert_eq!(c.entry(m, m), c.entry(m, m + 1));
        }
    }

    #[test]
    fn entry_modulus_ignores_b() {
        let s = NodeSequence::periodic(vec![0.3, -0.2, 0.1]).unwrap();
        let r = IndexRange::symmetric(8);
        let c0 = collocation_matrix(a1(), &s, r, 1e-16).unwrap();
        let c3 = collocation_matrix(GaussianParam::new(1.0, 3.0).unwrap(), &s, r, 1e-16).unwrap();
        assert_eq!(c0.coeff_range(), c3.coeff_range());
        for (i, &lam) in c3.nodes.iter().enumerate() {
            for (j, n) in c3.coeff_range().iter().enumerate() {
                let want = (-(lam - n as f64).powi(2)).exp();
                assert!((c3.matrix[(i, j)].norm() - want).abs() <= 1e-15 * want.max(1e-300));
                assert!((c3.matrix[(i, j)].norm() - c0.matrix[(i, j)].norm()).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn binary_round_trip() {
        let s = NodeSequence::periodic(vec![0.25]).unwrap();
        let c = collocation_matrix(GaussianParam::new(0.8, 1.5).unwrap(), &s, IndexRange::new(-3, 6), 1e-12)
            .unwrap();
        let mut buf = Vec::new();
        c.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 * 6 + 16 * c.rows() * c.cols());
        let back = read_binary(buf.as_slice()).unwrap();
        assert_eq!(back.matrix, c.matrix);
        assert_eq!(back.node_first, -3);
        assert_eq!(back.coeff_first, c.coeff_first);
        assert_eq!(back.tail_bound, c.tail_bound);
        assert!(read_binary(&b"NOPE"[..]).is_err());
    }

    #[test]
    fn tail_bound_dominates_omitted_columns() {
        let p = GaussianParam::real(0.5).unwrap();
        let s = NodeSequence::periodic(vec![0.4, -0.1]).unwrap();
        let c = collocation_matrix(p, &s, IndexRange::symmetric(3), 1e-3).unwrap();
        // unit coefficients on a much wider range; the omitted part per row
        let omitted: f64 = c
            .nodes
            .iter()
            .map(|&lam| {
                (-200i64..=200)
                    .filter(|n| !(c.coeff_range().lo..=c.coeff_range().hi).contains(n))
                    .map(|n| (-0.5 * (lam - n as f64).powi(2)).exp())
                    .sum::<f64>()
                    .powi(2)
            })
            .sum::<f64>()
            .sqrt();
        let outside = 401 - c.cols();
        assert!(omitted <= c.tail_bound * (outside as f64).sqrt());
    }
}

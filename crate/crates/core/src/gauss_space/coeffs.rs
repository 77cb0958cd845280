use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::IndexRange;
use crate::{Error, Result};

/// Finitely supported `(c_n)` identifying `f = Σ c_n e^{-c(x-n)²}`; the norm of
/// `f` in `V²_c` is the ℓ² norm of the coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoefficients", into = "RawCoefficients")]
pub struct CoefficientVector {
    first: i64,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawCoefficients {
    first_index: i64,
    /// `[re, im]` pairs
    values: Vec<[f64; 2]>,
}

impl TryFrom<RawCoefficients> for CoefficientVector {
    type Error = Error;
    fn try_from(raw: RawCoefficients) -> Result<Self> {
        CoefficientVector::new(
            raw.first_index,
            raw.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        )
    }
}

impl From<CoefficientVector> for RawCoefficients {
    fn from(c: CoefficientVector) -> Self {
        RawCoefficients {
            first_index: c.first,
            values: c.values.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl CoefficientVector {
    pub fn new(first: i64, values: Vec<Complex64>) -> Result<Self> {
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::BadParameter("coefficients must be finite".into()));
        }
        Ok(CoefficientVector { first, values })
    }

    pub fn from_real(first: i64, values: &[f64]) -> Result<Self> {
        Self::new(first, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn empty() -> Self {
        CoefficientVector { first: 0, values: Vec::new() }
    }

    /// The unit vector `e_n`.
    pub fn unit(n: i64) -> Self {
        CoefficientVector { first: n, values: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn range(&self) -> IndexRange {
        IndexRange::new(self.first, self.first + self.values.len() as i64 - 1)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `c_n`, zero outside the stored range.
    pub fn get(&self, n: i64) -> Complex64 {
        usize::try_from(n - self.first)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(i, &z)| (self.first + i as i64, z))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        CoefficientVector { first: self.first, values: self.values.iter().map(|z| z * s).collect() }
    }

    /// Restriction to `range` (possibly empty).
    pub fn restrict(&self, range: IndexRange) -> Self {
        let r = self.range().intersect(range);
        if r.is_empty() {
            return CoefficientVector { first: range.lo.max(self.first), values: Vec::new() };
        }
        CoefficientVector { first: r.lo, values: r.iter().map(|n| self.get(n)).collect() }
    }

    /// Splits `f = f₋ + c₀ e^{-c z²} + f₊` by the sign of the index.
    pub fn split_parts(&self) -> SplitParts {
        SplitParts {
            minus: self.restrict(IndexRange::new(i64::MIN, -1)),
            c0: self.get(0),
            plus: self.restrict(IndexRange::new(1, i64::MAX)),
        }
    }
}

/// Coefficients on `n ≤ -1`, the coefficient at `0`, and coefficients on `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitParts {
    pub minus: CoefficientVector,
    pub c0: Complex64,
    pub plus: CoefficientVector,
}

impl SplitParts {
    /// Concatenates the three parts over the union of their ranges.
    pub fn reassemble(&self) -> CoefficientVector {
        let lo = if self.minus.is_empty() { 0 } else { self.minus.first_index() };
        let hi = if self.plus.is_empty() { 0 } else { self.plus.range().hi };
        let values = (lo..=hi)
            .map(|n| match n.cmp(&0) {
                std::cmp::Ordering::Less => self.minus.get(n),
                std::cmp::Ordering::Equal => self.c0,
                std::cmp::Ordering::Greater => self.plus.get(n),
            })
            .collect();
        CoefficientVector { first: lo, values }
    }
}

/// Free-function form of [`CoefficientVector::split_parts`].
pub fn split_parts(coeffs: &CoefficientVector) -> SplitParts {
    coeffs.split_parts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn unit_at_origin() {
        let s = CoefficientVector::unit(0).split_parts();
        assert!(s.minus.is_empty() && s.plus.is_empty());
        assert_eq!(s.c0, c(1.0));
    }

    #[test]
    fn positive_support() {
        let v = CoefficientVector::from_real(1, &[2.0, 3.0]).unwrap();
        let s = v.split_parts();
        assert!(s.minus.is_empty());
        assert_eq!(s.c0, c(0.0));
        assert_eq!(s.plus, v);
    }

    #[test]
    fn symmetric_coefficients_mirror() {
        let v = CoefficientVector::from_real(-3, &[1.0, 2.0, 3.0, 9.0, 3.0, 2.0, 1.0]).unwrap();
        let s = v.split_parts();
        assert_eq!(s.c0, c(9.0));
        for n in 1..=3 {
            assert_eq!(s.minus.get(-n), s.plus.get(n));
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(CoefficientVector::from_real(0, &[1.0, f64::INFINITY]).is_err());
    }

    proptest! {
        #[test]
        fn split_is_a_partition(
            first in -8i64..8,
            vals in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 0..16),
        ) {
            let v = CoefficientVector::new(
                first,
                vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect(),
            ).unwrap();
            let back = v.split_parts().reassemble();
            let lo = v.first_index().min(back.first_index()).min(0);
            let hi = v.range().hi.max(back.range().hi).max(0);
            for n in lo..=hi {
                // bitwise equality of stored values
                prop_assert_eq!(v.get(n), back.get(n));
            }
            let s = v.split_parts();
            let total = s.minus.norm_sqr() + s.c0.norm_sqr() + s.plus.norm_sqr();
            prop_assert!((total - v.norm_sqr()).abs() <= 1e-12 * v.norm_sqr().max(1.0));
        }
    }
}

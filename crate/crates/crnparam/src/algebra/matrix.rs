//! Dense exact-rational matrices: rank, reduced row echelon form with its
//! transformation matrix, kernel bases, and the row-reduction based
//! generalized inverse.

use num::{BigInt, Integer, One, Signed, Zero};

use super::poly::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Result of [`RationalMatrix::rref_with_transform`]: `p * a == r` with `r`
/// in reduced row echelon form and `p` invertible.
pub struct RrefResult {
    pub r: RationalMatrix,
    pub p: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Stacks `other` below `self`; column counts must agree.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Gauss-Jordan elimination tracking the row operations: returns
    /// `(r, p, pivots)` with `p * self == r`, `r` in reduced row echelon form,
    /// and `pivots` the pivot column indices in increasing order.
    ///
    /// Pivot selection takes the first nonzero entry at or below the current
    /// row, which keeps the transform reproducible.
    pub fn rref_with_transform(&self) -> RrefResult {
        let mut r = self.clone();
        let mut p = Self::identity(self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&i| !r.at(i, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                r.swap_rows(pivot_row, row);
                p.swap_rows(pivot_row, row);
            }
            let inv = r.at(row, col).clone().recip();
            r.scale_row(row, &inv);
            p.scale_row(row, &inv);
            for other in 0..self.rows {
                if other == row {
                    continue;
                }
                let factor = r.at(other, col).clone();
                if factor.is_zero() {
                    continue;
                }
                r.add_scaled_row(other, row, &-factor.clone());
                p.add_scaled_row(other, row, &-factor);
            }
            pivots.push(col);
            row += 1;
        }
        RrefResult { r, p, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref_with_transform().pivots.len()
    }

    /// Checks the reduced row echelon predicate: unit pivots with strictly
    /// increasing columns, zeros elsewhere in pivot columns, zero rows last.
    pub fn is_rref(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for r in 0..self.rows {
            let pivot = (0..self.cols).find(|&c| !self.at(r, c).is_zero());
            match pivot {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row || !self.at(r, c).is_one() {
                        return false;
                    }
                    if let Some(lp) = last_pivot {
                        if c <= lp {
                            return false;
                        }
                    }
                    if (0..self.rows).any(|i| i != r && !self.at(i, c).is_zero()) {
                        return false;
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    /// A basis of `ker(self)` as matrix columns, from the reduced row echelon
    /// form: each free column contributes the vector with `1` at the free
    /// coordinate and `-r[t][free]` at pivot coordinate `t`. Columns are
    /// scaled to coprime integers, which keeps the free coordinate positive.
    pub fn kernel_basis(&self) -> Self {
        let RrefResult { r, pivots, .. } = self.rref_with_transform();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (t, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(t, f).clone();
            }
            scale_to_integer(&mut v);
            for (i, val) in v.into_iter().enumerate() {
                out.set(i, j, val);
            }
        }
        out
    }

    /// A generalized inverse `h` with `self * h * self == self`, built from
    /// the row reduction: `h = q * p` where `p * self` is the reduced row
    /// echelon form and `q` places the pivot rows, zeroing free coordinates.
    pub fn generalized_inverse(&self) -> Self {
        let RrefResult { p, pivots, .. } = self.rref_with_transform();
        let mut h = Self::zero(self.cols, self.rows);
        for (t, &pc) in pivots.iter().enumerate() {
            for j in 0..self.rows {
                h.set(pc, j, p.at(t, j).clone());
            }
        }
        h
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * factor;
            }
        }
    }

    fn add_scaled_row(&mut self, target: usize, source: usize, factor: &Rat) {
        for c in 0..self.cols {
            let v = self.at(source, c) * factor;
            if v.is_zero() {
                continue;
            }
            let idx = target * self.cols + c;
            self.data[idx] = &self.data[idx] + &v;
        }
    }
}

/// Scales a rational vector to coprime integers, preserving signs.
fn scale_to_integer(v: &mut [Rat]) {
    let mut den_lcm = BigInt::one();
    for x in v.iter() {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let mut num_gcd = BigInt::zero();
    for x in v.iter() {
        let scaled = x * &Rat::from_integer(den_lcm.clone());
        num_gcd = num_gcd.gcd(&scaled.numer().abs());
    }
    if num_gcd.is_zero() {
        return;
    }
    let factor = Rat::new(den_lcm, num_gcd);
    for x in v.iter_mut() {
        *x = &*x * &factor;
    }
}

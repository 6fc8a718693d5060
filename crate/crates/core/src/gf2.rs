//! Dense GF(2) matrices with bit-packed rows.
//!
//! Elimination always pivots on the lowest available column, so solutions
//! and nullspace bases are deterministic for a given matrix.

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Largest nullspace dimension `min_weight_solution` will enumerate.
pub const MAX_COSET_DIMENSION: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Reduced row echelon form of `[M | y]`.
struct Echelon {
    rows: Vec<BitVec>,
    rhs: Vec<bool>,
    pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn new(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { rows, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(
            self.rows.len(),
            (0..self.rows.len()).filter(|&i| self.rows[i].get(j)),
        )
    }

    /// `M * x`.
    pub fn mul(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut y = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            y.set(i, r.dot(x));
        }
        Ok(y)
    }

    fn echelon(&self, target: Option<&BitVec>) -> Echelon {
        let mut rows = self.rows.clone();
        let mut rhs: Vec<bool> = match target {
            Some(t) => (0..rows.len()).map(|i| t.get(i)).collect(),
            None => vec![false; rows.len()],
        };
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            rhs.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let pivot_rhs = rhs[rank];
            for r in 0..rows.len() {
                if r != rank && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Echelon { rows, rhs, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).pivots.len()
    }

    /// Some `x` with `M * x = target`, or `None` when the target lies outside
    /// the column space. Free variables are set to zero.
    pub fn solve(&self, target: &BitVec) -> Result<Option<BitVec>> {
        if target.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: target.len(),
            });
        }
        let ech = self.echelon(Some(target));
        let rank = ech.pivots.len();
        if ech.rhs[rank..].iter().any(|&b| b) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &col) in ech.pivots.iter().enumerate() {
            x.set(col, ech.rhs[r]);
        }
        Ok(Some(x))
    }

    /// A basis of `{ x : M * x = 0 }`, one vector per free column, in column
    /// order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let ech = self.echelon(None);
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (r, &col) in ech.pivots.iter().enumerate() {
                    if ech.rows[r].get(f) {
                        v.set(col, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A minimum-weight solution of `M * x = target`, found by walking the
    /// whole coset `x0 + nullspace` in Gray-code order. Ties go to the
    /// smallest vector in bit-string order (see [`bit_string_less`]).
    pub fn min_weight_solution(&self, target: &BitVec) -> Result<Option<(BitVec, usize)>> {
        let Some(x0) = self.solve(target)? else {
            return Ok(None);
        };
        let basis = self.nullspace();
        Ok(Some(min_weight_in_coset(&x0, &basis)?))
    }
}

/// Minimum-weight element of `x0 + span(basis)`.
pub fn min_weight_in_coset(x0: &BitVec, basis: &[BitVec]) -> Result<(BitVec, usize)> {
    if basis.len() > MAX_COSET_DIMENSION {
        return Err(Error::Cap {
            what: "coset enumeration",
            crossings: basis.len(),
            cap: MAX_COSET_DIMENSION,
        });
    }
    let mut best = x0.clone();
    let mut best_weight = best.count_ones();
    let mut cur = x0.clone();
    for step in 1u64..(1u64 << basis.len()) {
        cur.xor_assign(&basis[step.trailing_zeros() as usize]);
        let w = cur.count_ones();
        if w < best_weight || (w == best_weight && bit_string_less(&cur, &best)) {
            best = cur.clone();
            best_weight = w;
        }
    }
    Ok((best, best_weight))
}

/// Order on vectors read as bit strings `x_0 x_1 x_2 ...`: at the first
/// position where they differ, the vector holding 0 is smaller.
pub fn bit_string_less(a: &BitVec, b: &BitVec) -> bool {
    match a.xor(b).first_one() {
        Some(i) => !a.get(i),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&str]) -> Gf2Matrix {
        let cols = rows[0].len();
        let rows = rows
            .iter()
            .map(|r| BitVec::from_indices(cols, r.chars().enumerate().filter(|c| c.1 == '1').map(|c| c.0)))
            .collect();
        Gf2Matrix::new(rows, cols).unwrap()
    }

    #[test]
    fn all_ones_two_by_four() {
        let m = from_rows(&["1111", "1111"]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace().len(), 3);
        assert_eq!(m.solve(&BitVec::from_indices(2, [0])).unwrap(), None);
        let x = m.solve(&BitVec::from_indices(2, [0, 1])).unwrap().unwrap();
        assert_eq!(m.mul(&x).unwrap(), BitVec::from_indices(2, [0, 1]));
    }

    #[test]
    fn nullspace_vectors_are_null_and_independent() {
        let m = from_rows(&["11010", "01101", "10011"]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 5 - m.rank());
        for v in &basis {
            assert!(m.mul(v).unwrap().is_zero());
        }
        // independence: no nonempty combination vanishes
        for mask in 1u64..(1 << basis.len()) {
            let mut acc = BitVec::zeros(5);
            for (k, v) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc.xor_assign(v);
                }
            }
            assert!(!acc.is_zero());
        }
    }

    #[test]
    fn zero_target_solved_by_zero() {
        let m = from_rows(&["110", "011"]);
        let (x, w) = m.min_weight_solution(&BitVec::zeros(2)).unwrap().unwrap();
        assert!(x.is_zero());
        assert_eq!(w, 0);
    }

    #[test]
    fn min_weight_matches_exhaustive_search() {
        let m = from_rows(&["110100", "011010", "001101"]);
        for t in 0u64..8 {
            let target = BitVec::from_mask(3, t);
            let mut best: Option<(usize, BitVec)> = None;
            for x in 0u64..64 {
                let xv = BitVec::from_mask(6, x);
                if m.mul(&xv).unwrap() != target {
                    continue;
                }
                let w = xv.count_ones();
                let better = match &best {
                    None => true,
                    Some((bw, bx)) => w < *bw || (w == *bw && bit_string_less(&xv, bx)),
                };
                if better {
                    best = Some((w, xv));
                }
            }
            let got = m.min_weight_solution(&target).unwrap();
            assert_eq!(got.map(|(x, w)| (w, x)), best, "target {t:03b}");
        }
    }

    #[test]
    fn dimension_mismatch() {
        let m = from_rows(&["110", "011"]);
        assert!(matches!(
            m.solve(&BitVec::zeros(3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(m.mul(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn bit_string_order() {
        let a = BitVec::from_indices(4, [1]);
        let b = BitVec::from_indices(4, [0]);
        assert!(bit_string_less(&a, &b));
        assert!(!bit_string_less(&b, &a));
        assert!(!bit_string_less(&a, &a));
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use super::{CycloElem, ExactDivision, LocalizedInt, ModElem, RingElement};
use crate::error::{Error, Result};

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Clone> RingMatrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> RingMatrix<S> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The same matrix with rows and columns permuted simultaneously:
    /// entry `(i, j)` of the result is entry `(perm[i], perm[j])`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]).clone())
    }
}

impl<R: RingElement> RingMatrix<R> {
    pub fn identity(n: usize, one: &R) -> Self {
        let zero = one.zero_like();
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self
            .entries
            .first()
            .or(other.entries.first())
            .map(|e| e.zero_like())
            .ok_or(Error::EmptyMatrix)?;
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| {
                acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)))
            })
        }))
    }

    fn check_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination. Every division is exact in an
/// integral domain; a row swap flips the sign.
pub fn bareiss_determinant<R: ExactDivision>(m: &RingMatrix<R>) -> Result<R> {
    m.check_square()?;
    let n = m.rows;
    let mut rows: Vec<Vec<R>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev: Option<R::Divisor> = None;
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&i| !rows[i][k].is_zero_elem()) else {
            return Ok(m.entries[0].zero_like());
        };
        if pivot_row != k {
            rows.swap(k, pivot_row);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot = &head[k];
        let update = |row: &mut Vec<R>| -> Result<()> {
            let lead = row[k].clone();
            for j in (k + 1)..n {
                let t = row[j].mul_ref(&pivot[k]).sub_ref(&lead.mul_ref(&pivot[j]));
                row[j] = match &prev {
                    Some(d) => t.div_exact(d)?,
                    None => t,
                };
            }
            row[k] = lead.zero_like();
            Ok(())
        };
        if (n - k) * (n - k) >= 256 {
            tail.par_iter_mut().try_for_each(update)?;
        } else {
            tail.iter_mut().try_for_each(update)?;
        }
        prev = Some(rows[k][k].prepare_divisor()?);
    }
    let det = rows[n - 1][n - 1].clone();
    Ok(if negate { det.neg_ref() } else { det })
}

/// Laplace expansion along the first row. No division, so it works over
/// any commutative ring; factorial cost, meant for small matrices.
pub fn expansion_determinant<R: RingElement>(m: &RingMatrix<R>) -> Result<R> {
    m.check_square()?;
    let n = m.rows;
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(m, 0, &cols))
}

fn expand<R: RingElement>(m: &RingMatrix<R>, row: usize, cols: &[usize]) -> R {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = m.get(row, cols[0]).zero_like();
    for (pos, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.mul_ref(&expand(m, row + 1, &rest));
        acc = if pos % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

/// Largest size for which `Z/m` determinants use cofactor expansion.
const EXPANSION_LIMIT: usize = 8;

impl RingMatrix<ModElem> {
    /// Determinant over `Z/m`: cofactor expansion for small sizes,
    /// otherwise the integer determinant of the lifted matrix reduced mod `m`.
    pub fn determinant(&self) -> Result<ModElem> {
        self.check_square()?;
        if self.rows <= EXPANSION_LIMIT {
            return expansion_determinant(self);
        }
        let ring = self.entries[0].ring();
        let lifted = self.map(|e| BigInt::from(e.value()));
        let det = bareiss_determinant(&lifted)?;
        let r = det.mod_floor(&BigInt::from(ring.modulus()));
        Ok(ring.elem(i64::try_from(r).expect("residue fits in i64")))
    }
}

impl RingMatrix<CycloElem> {
    /// Exact determinant over `Z[1/p][ζ_M]`. When every entry lies in
    /// `Z[1/p]` the elimination runs there and the result is embedded.
    pub fn determinant(&self) -> Result<CycloElem> {
        self.check_square()?;
        let ring = self.entries[0].ring().clone();
        if self.entries.iter().all(|e| e.is_constant()) {
            let base = self.map(|e| e.constant_part());
            return Ok(ring.from_localized(&bareiss_determinant(&base)?));
        }
        bareiss_determinant(self)
    }
}

impl RingMatrix<LocalizedInt> {
    pub fn determinant(&self) -> Result<LocalizedInt> {
        bareiss_determinant(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{CycloRing, ModRing};

    #[test]
    fn two_by_two_formula() {
        let r = CycloRing::new(5, 2).unwrap();
        let m = RingMatrix::from_fn(2, 2, |i, j| r.from_integer(if i == 1 && j == 1 { 2 } else { 1 }));
        assert_eq!(m.determinant().unwrap(), r.one());
        let z = ModRing::new(7).unwrap();
        let m = RingMatrix::from_fn(2, 2, |i, j| z.elem(if i == 1 && j == 1 { 2 } else { 1 }));
        assert_eq!(m.determinant().unwrap(), z.one());
    }

    #[test]
    fn identity_and_singular() {
        let r = CycloRing::new(3, 3).unwrap();
        let id = RingMatrix::identity(4, &r.one());
        assert_eq!(id.determinant().unwrap(), r.one());
        let z = r.zeta_power(1);
        let m = RingMatrix::from_fn(3, 3, |i, _| z.pow(i as u32));
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn rejects_non_square() {
        let r = ModRing::new(5).unwrap();
        let m = RingMatrix::from_fn(2, 3, |_, _| r.one());
        assert_eq!(
            m.determinant(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn needs_row_swap() {
        let m = RingMatrix::from_fn(3, 3, |i, j| BigInt::from([[0, 1, 2], [3, 4, 5], [6, 7, 9]][i][j]));
        assert_eq!(bareiss_determinant(&m).unwrap(), BigInt::from(-3));
        assert_eq!(expansion_determinant(&m).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn large_mod_matrix_uses_lifting() {
        let r = ModRing::new(10).unwrap();
        let m = RingMatrix::from_fn(9, 9, |i, j| r.elem(((i * 7 + j * j * 3 + i * j) % 10) as i64));
        let small = expansion_determinant(&m).unwrap();
        assert_eq!(m.determinant().unwrap(), small);
    }
}

use super::{Poly, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Scalar::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Scale a rational row to integers; returns the row and the multiplier used.
fn integer_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

/// Fraction-free forward elimination over the integers. Works on the first
/// `pivot_cols` columns and returns the row-swap sign, or `None` when a pivot
/// column is entirely zero.
fn bareiss_forward(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Option<i32> {
    let n = pivot_cols;
    let width = a.first().map_or(0, Vec::len);
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let p = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Exact determinant by Bareiss elimination; the 0×0 determinant is 1.
pub fn det_exact(m: &Matrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut scale = BigInt::one();
    let mut a = Vec::with_capacity(n);
    for i in 0..n {
        let (r, l) = integer_row(m.row(i));
        scale *= l;
        a.push(r);
    }
    match bareiss_forward(&mut a, n) {
        None => Ok(Scalar::zero()),
        Some(sign) => Ok(Scalar::new(&a[n - 1][n - 1] * BigInt::from(sign), scale)),
    }
}

/// Unique solution of `m·x = rhs`; fraction-free elimination, rational back-substitution.
pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if rhs.len() != m.rows {
        return Err(Error::Dimension("rhs length".into()));
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            integer_row(&row).0
        })
        .collect();
    bareiss_forward(&mut a, n).ok_or(Error::Singular)?;
    if n > 0 && a[n - 1][n - 1].is_zero() {
        return Err(Error::Singular);
    }
    let mut x = vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Scalar::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Scalar::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Scalar::from_integer(a[i][i].clone());
    }
    Ok(x)
}

/// Reduced row echelon form; returns the matrix rows and pivot columns.
fn rref(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut a: Vec<Vec<Scalar>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right nullspace (empty when trivial).
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Some solution of a possibly rank-deficient system: free variables set to
/// zero. `Singular` when the system is inconsistent.
pub fn solve_particular(m: &Matrix, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    if rhs.len() != m.rows {
        return Err(Error::Dimension("rhs length".into()));
    }
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let (a, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Err(Error::Singular);
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][m.cols].clone();
    }
    Ok(x)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Determinant of a square matrix of polynomials (Bareiss over Q[x]).
pub fn det_poly(entries: &[Vec<Poly>]) -> Result<Poly> {
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: entries.first().map_or(0, Vec::len),
        });
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a = entries.to_vec();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)?
                    .ok_or_else(|| Error::DivisibilityFailure("Bareiss step over Q[x]".into()))?;
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&m(&[&[5]])).unwrap(), int(5));
        assert_eq!(det_exact(&Matrix::identity(3)).unwrap(), int(1));
        assert_eq!(det_exact(&m(&[&[1, 2], &[3, 4]])).unwrap(), int(-2));
        assert_eq!(det_exact(&Matrix::zeros(0, 0)).unwrap(), int(1));
        assert!(matches!(
            det_exact(&Matrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_needs_pivoting() {
        assert_eq!(det_exact(&m(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        assert_eq!(det_exact(&m(&[&[0, 0], &[1, 0]])).unwrap(), int(0));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::zeros(2, 2)).len(), 2);
        assert!(nullspace(&Matrix::identity(2)).is_empty());
        let ns = nullspace(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(ns.len(), 1);
        assert_eq!(&ns[0][0] + &ns[0][1], int(0));
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&Matrix::identity(2), &[int(3), ratio(7, 2)]).unwrap();
        assert_eq!(x, vec![int(3), ratio(7, 2)]);
        let x = solve_linear(&m(&[&[2, 0], &[0, 3]]), &[int(4), int(9)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert_eq!(
            solve_linear(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn poly_det_matches_pointwise() {
        let x = Poly::x();
        let one = Poly::one();
        let e = vec![vec![&x + &one, x.clone()], vec![one.clone(), &x * &x]];
        let d = det_poly(&e).unwrap();
        // (x+1)x^2 - x
        assert_eq!(d, Poly::new(vec![int(0), int(-1), int(1), int(1)]));
    }
}

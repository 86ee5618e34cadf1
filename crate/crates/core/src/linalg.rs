//! Dense exact linear algebra over a field given as a ring object.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldkit::upoly::{Poly, PolyRing};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<E> = rows.into_iter().flatten().collect();
        Matrix::new(r, c, data)
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

/// Builds a matrix whose columns are the given vectors.
pub fn from_columns<E: Clone>(cols: &[Vec<E>]) -> Matrix<E> {
    let c = cols.len();
    let r = cols.first().map_or(0, |x| x.len());
    let mut data = Vec::with_capacity(r * c);
    for i in 0..r {
        for col in cols {
            data.push(col[i].clone());
        }
    }
    Matrix::new(r, c, data)
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product dimensions");
    let mut out = Matrix::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let t = f.mul(x, b.get(k, j));
                let s = f.add(out.get(i, j), &t);
                out.set(i, j, s);
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| a.row(i).iter().zip(v).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
        .collect()
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let pick = (r..m.rows).filter(|&i| !f.is_zero(m.get(i, c))).min_by_key(|&i| f.weight(m.get(i, c)));
        let Some(i) = pick else { continue };
        m.swap_rows(r, i);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                if f.is_zero(m.get(r, j)) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, &mut a.clone()).len()
}

/// Basis of the right kernel `{v : A v = 0}`, one vector per free column,
/// with a 1 in that column and zeros in the other free columns.
pub fn kernel_basis<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(m.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::filled(a.rows, a.cols + 1, f.zero());
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols).clone();
    }
    Some(x)
}

/// `det(Y I - A)` by Berkowitz's division-free algorithm.
pub fn char_poly<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Poly<F::Elem>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    // Coefficients from the leading term down.
    let mut v = vec![f.one()];
    for r in 1..=n {
        let k = r - 1;
        let diag = a.get(k, k).clone();
        let row: Vec<F::Elem> = (0..k).map(|j| a.get(k, j).clone()).collect();
        let mut col: Vec<F::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        let mut t = vec![f.one(), f.neg(&diag)];
        for _ in 2..=r {
            let rc = row.iter().zip(&col).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
            t.push(f.neg(&rc));
            col = (0..k)
                .map(|i| (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(a.get(i, j), &col[j]))))
                .collect();
        }
        let mut next = vec![f.zero(); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *slot = f.add(slot, &f.mul(&t[i - j], vj));
                }
            }
        }
        v = next;
    }
    v.reverse();
    Ok(v)
}

fn poly_key<E: Ord + Clone>(p: &[E]) -> (usize, Vec<E>) {
    (p.len(), p.to_vec())
}

/// Nontrivial invariant factors of `A`, in increasing divisibility order,
/// from a Smith normal form of `Y I - A` over `F[Y]`.
pub fn invariant_factors<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Vec<Poly<F::Elem>>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let ring = PolyRing::new(f.clone());
    let n = a.rows;
    let mut m: Matrix<Poly<F::Elem>> = Matrix::filled(n, n, vec![]);
    for i in 0..n {
        for j in 0..n {
            let mut e = ring.constant(f.neg(a.get(i, j)));
            if i == j {
                e = ring.add(&e, &ring.x());
            }
            m.set(i, j, e);
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let e = m.get(i, j);
                    if e.is_empty() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => poly_key(e) < poly_key(m.get(bi, bj)),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            m.swap_rows(k, bi);
            m.swap_cols(k, bj);
            let pivot = m.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..n {
                if m.get(i, k).is_empty() {
                    continue;
                }
                let (q, r) = ring.divrem(m.get(i, k), &pivot);
                for j in k..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&q, m.get(k, j)));
                    m.set(i, j, v);
                }
                clean &= r.is_empty();
            }
            for j in k + 1..n {
                if m.get(k, j).is_empty() {
                    continue;
                }
                let (q, r) = ring.divrem(m.get(k, j), &pivot);
                for i in k..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&q, m.get(i, k)));
                    m.set(i, j, v);
                }
                clean &= r.is_empty();
            }
            if clean {
                break;
            }
        }
        diag.push(ring.monic(m.get(k, k)));
    }
    // Enforce d_i | d_j for i < j.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if ring.rem(&diag[j], &diag[i]).is_empty() {
                    continue;
                }
                let g = ring.gcd(&diag[i], &diag[j]);
                let l = ring.lcm(&diag[i], &diag[j]);
                diag[i] = g;
                diag[j] = l;
                changed = true;
            }
        }
    }
    Ok(diag.into_iter().filter(|d| d.len() > 1).collect())
}

/// `P(A)` for a polynomial `P` and square `A`.
pub fn poly_eval_matrix<F: Field>(f: &F, p: &[F::Elem], a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.rows;
    let mut acc = Matrix::filled(n, n, f.zero());
    for c in p.iter().rev() {
        acc = mat_mul(f, &acc, a);
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

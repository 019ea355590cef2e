//! Dense matrices over commutative rings, with Gaussian elimination over fields.

use std::fmt;

use crate::field::Elem;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl Ring for Elem {
    fn zero_like(&self) -> Self {
        self.tower().zero()
    }
    fn one_like(&self) -> Self {
        self.tower().one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let data: Vec<T> = rows.into_iter().flatten().collect();
        Matrix::new(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        Matrix { rows, cols, data: vec![like.zero_like(); rows * cols] }
    }

    pub fn identity(n: usize, like: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { like.one_like() } else { like.zero_like() })
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        let z = entries[0].zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { z.clone() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let n = cols[0].len();
        Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "matrix product dimensions");
        let z = self.data.first().or(o.data.first()).expect("empty matrix").zero_like();
        let mut data = vec![z; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    data[idx] = data[idx].radd(&a.rmul(o.get(k, j)));
                }
            }
        }
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn add(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.radd(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.rsub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(|a| a.rneg())
    }

    pub fn scale(&self, x: &T) -> Matrix<T> {
        self.map(|a| a.rmul(x))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (j, x) in v.iter().enumerate() {
                    acc = acc.radd(&self.get(i, j).rmul(x));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Matrix<T>) -> Matrix<T> {
        let z = self.data.first().or(o.data.first()).unwrap().zero_like();
        let n = self.rows + o.rows;
        let m = self.cols + o.cols;
        Matrix::from_fn(n, m, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                o.get(i - self.rows, j - self.cols).clone()
            } else {
                z.clone()
            }
        })
    }

    /// Determinant by cofactor expansion (any commutative ring; small sizes).
    pub fn det_expand(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return self.data[0].clone();
        }
        if n == 2 {
            return self.get(0, 0).rmul(self.get(1, 1)).rsub(&self.get(0, 1).rmul(self.get(1, 0)));
        }
        let mut acc = self.data[0].zero_like();
        let rest: Vec<usize> = (1..n).collect();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero_elem() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rest, &cols).det_expand();
            let term = a.rmul(&minor);
            acc = if j % 2 == 0 { acc.radd(&term) } else { acc.rsub(&term) };
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Matrix<T> {
        let mut acc = Matrix::identity(self.rows, &self.data[0]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Gaussian elimination over a field.
impl Matrix<Elem> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<Elem>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(p, j).clone();
                    let b = m.get(r, j).clone();
                    m.set(p, j, b);
                    m.set(r, j, a);
                }
            }
            let inv = m.get(r, c).try_inv().expect("pivot must be invertible over a field");
            for j in 0..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref();
        let zero = self.data.first().map(|x| x.tower().zero()).expect("empty matrix");
        let one = zero.tower().one();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Elem {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut acc = self.data[0].tower().one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return acc.tower().zero();
            };
            if p != c {
                for j in 0..n {
                    let a = m.get(p, j).clone();
                    let b = m.get(c, j).clone();
                    m.set(p, j, b);
                    m.set(c, j, a);
                }
                acc = -acc;
            }
            let piv = m.get(c, c).clone();
            acc = &acc * &piv;
            let inv = piv.try_inv().expect("pivot must be invertible over a field");
            for i in (c + 1)..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let x = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        acc
    }

    pub fn inverse(&self) -> Option<Matrix<Elem>> {
        assert!(self.is_square());
        let n = self.rows;
        let id = Matrix::identity(n, &self.data[0]);
        let aug =
            Matrix::from_fn(n, 2 * n, |i, j| if j < n { self.get(i, j).clone() } else { id.get(i, j - n).clone() });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// One solution of `Mx = b`, if any.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let n = self.cols;
        let aug = Matrix::from_fn(self.rows, n + 1, |i, j| if j < n { self.get(i, j).clone() } else { b[i].clone() });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let zero = b[0].tower().zero();
        let mut x = vec![zero; n];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, n).clone();
        }
        Some(x)
    }
}

pub fn dot(a: &[Elem], b: &[Elem]) -> Elem {
    let mut acc = a[0].tower().zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

pub fn vec_add(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Elem], s: &Elem) -> Vec<Elem> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Elem]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn fmt_vec(a: &[Elem]) -> String {
    format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

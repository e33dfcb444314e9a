//! Dense matrices of polynomials, and complex matrices as real pairs.

use std::fmt;

use crate::poly::{rat, Coords, Polynomial, Rational};

#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    coords: Coords,
    data: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zeros(coords: &Coords, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            coords: coords.clone(),
            data: vec![Polynomial::zero(coords); rows * cols],
        }
    }

    pub fn identity(coords: &Coords, n: usize) -> Self {
        let mut m = Self::zeros(coords, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(coords));
        }
        m
    }

    /// Builds from row vectors; every entry is re-expressed over `coords`.
    pub fn from_rows(coords: &Coords, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            for p in row {
                data.push(p.with_coords(coords).expect("matrix entry coordinates"));
            }
        }
        PolyMatrix {
            rows: r,
            cols: c,
            coords: coords.clone(),
            data,
        }
    }

    pub fn from_ints(coords: &Coords, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            coords,
            rows.iter()
                .map(|r| r.iter().map(|&v| Polynomial::int(coords, v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p.with_coords(&self.coords).expect("entry coordinates");
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            coords: self.coords.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn with_coords(&self, coords: &Coords) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            coords: coords.clone(),
            data: self
                .data
                .iter()
                .map(|p| p.with_coords(coords).expect("matrix coordinates"))
                .collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(&self.coords, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, f: &Polynomial) -> PolyMatrix {
        self.map(|p| p * f)
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix add shape");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            coords: self.coords.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sub shape");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            coords: self.coords.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(&self.coords, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * o.cols + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut s = Polynomial::zero(&self.coords);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        s += &(a * vj);
                    }
                }
                s
            })
            .collect()
    }

    pub fn commutator(&self, o: &PolyMatrix) -> PolyMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Polynomial {
        let mut s = Polynomial::zero(&self.coords);
        for i in 0..self.rows.min(self.cols) {
            s += self.get(i, i);
        }
        s
    }

    /// Entrywise derivation by the vector field with coefficients `v`.
    pub fn derive_along(&self, v: &[Polynomial]) -> PolyMatrix {
        self.map(|p| p.derive_along(v))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut rows = Vec::with_capacity(self.rows - 1);
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            rows.push(
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.get(i, j).clone())
                    .collect(),
            );
        }
        if rows.is_empty() {
            return Self::zeros(&self.coords, 0, 0);
        }
        Self::from_rows(&self.coords, rows)
    }

    /// Determinant by cofactor expansion (intended for small matrices).
    pub fn det(&self) -> Polynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => Polynomial::one(&self.coords),
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut s = Polynomial::zero(&self.coords);
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det();
                    if j % 2 == 0 {
                        s += &term;
                    } else {
                        s -= &term;
                    }
                }
                s
            }
        }
    }

    /// Adjugate: `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> PolyMatrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        let mut out = Self::zeros(&self.coords, n, n);
        if n == 1 {
            out.set(0, 0, Polynomial::one(&self.coords));
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                let c = if (i + j) % 2 == 0 { c } else { -c };
                out.data[j * n + i] = c;
            }
        }
        out
    }

    pub fn block_diag(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let mut out = Self::zeros(&a.coords, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; row index of `a (x) b` is `i * b.rows + k`.
    pub fn kron(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let mut out = Self::zeros(&a.coords, a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let y = b.get(k, l);
                        if y.is_zero() {
                            continue;
                        }
                        out.set(i * b.rows + k, j * b.cols + l, x * y);
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }
}

/// Complex matrix `re + i * im` with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub re: PolyMatrix,
    pub im: PolyMatrix,
}

impl CMatrix {
    pub fn real(re: PolyMatrix) -> Self {
        let im = PolyMatrix::zeros(re.coords(), re.rows(), re.cols());
        CMatrix { re, im }
    }

    pub fn zeros(coords: &Coords, rows: usize, cols: usize) -> Self {
        Self::real(PolyMatrix::zeros(coords, rows, cols))
    }

    pub fn identity(coords: &Coords, n: usize) -> Self {
        Self::real(PolyMatrix::identity(coords, n))
    }

    pub fn rows(&self) -> usize {
        self.re.rows()
    }

    pub fn cols(&self) -> usize {
        self.re.cols()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> CMatrix {
        CMatrix {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &Rational) -> CMatrix {
        CMatrix {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn scale_poly(&self, f: &Polynomial) -> CMatrix {
        CMatrix {
            re: self.re.scale_poly(f),
            im: self.im.scale_poly(f),
        }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let mut re = self.re.mul(&o.re);
        let mut im = self.re.mul(&o.im);
        if !self.im.is_zero() {
            re = re.sub(&self.im.mul(&o.im));
            im = im.add(&self.im.mul(&o.re));
        }
        CMatrix { re, im }
    }

    pub fn commutator(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix {
            re: self.re.transpose(),
            im: self.im.transpose(),
        }
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix {
            re: self.re.transpose(),
            im: self.im.transpose().neg(),
        }
    }

    /// Trace as (real part, imaginary part).
    pub fn trace(&self) -> (Polynomial, Polynomial) {
        (self.re.trace(), self.im.trace())
    }

    pub fn derive_along(&self, v: &[Polynomial]) -> CMatrix {
        CMatrix {
            re: self.re.derive_along(v),
            im: self.im.derive_along(v),
        }
    }

    pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
        CMatrix {
            re: PolyMatrix::block_diag(&a.re, &b.re),
            im: PolyMatrix::block_diag(&a.im, &b.im),
        }
    }

    pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
        let re = PolyMatrix::kron(&a.re, &b.re).sub(&PolyMatrix::kron(&a.im, &b.im));
        let im = PolyMatrix::kron(&a.re, &b.im).add(&PolyMatrix::kron(&a.im, &b.re));
        CMatrix { re, im }
    }

    /// Real form of size `2n`: `[[re, -im], [im, re]]`.
    pub fn realify(&self) -> PolyMatrix {
        let (r, c) = (self.rows(), self.cols());
        let mut out = PolyMatrix::zeros(self.re.coords(), 2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, self.re.get(i, j).clone());
                out.set(r + i, c + j, self.re.get(i, j).clone());
                out.set(r + i, j, self.im.get(i, j).clone());
                out.set(i, c + j, -self.im.get(i, j));
            }
        }
        out
    }

    pub fn with_coords(&self, coords: &Coords) -> CMatrix {
        CMatrix {
            re: self.re.with_coords(coords),
            im: self.im.with_coords(coords),
        }
    }
}

pub fn half() -> Rational {
    crate::poly::ratio(1, 2)
}

pub fn minus_one() -> Rational {
    rat(-1)
}

//! Standard examples. Every constructor returns an unvalidated object.

use std::collections::BTreeMap;

use crate::algebroid::{Field, LieAlgebroid, Representation};
use crate::matrix::{CMatrix, PolyMatrix};
use crate::poly::{coords, rat, Coords, Polynomial, Rational};
use crate::sparse::SparseRationalMatrix;

fn names(stem: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{stem}{i}")).collect()
}

fn point() -> Coords {
    coords::<&str>(&[]).unwrap()
}

/// Lie algebra over a point from constant structure constants `[e_i, e_j]`.
pub fn lie_algebra(rank: usize, brackets: &[((usize, usize), Vec<i64>)]) -> LieAlgebroid {
    let c = point();
    let br = brackets
        .iter()
        .map(|((i, j), v)| ((*i, *j), v.iter().map(|&x| Polynomial::int(&c, x)).collect()))
        .collect();
    LieAlgebroid::new(&c, names("e", rank), vec![Vec::new(); rank], br).unwrap()
}

pub fn lie_algebra_rational(rank: usize, brackets: BTreeMap<(usize, usize), Vec<Rational>>) -> LieAlgebroid {
    let c = point();
    let br = brackets
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(|x| Polynomial::constant(&c, x)).collect()))
        .collect();
    LieAlgebroid::new(&c, names("e", rank), vec![Vec::new(); rank], br).unwrap()
}

/// `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3() -> LieAlgebroid {
    lie_algebra(
        3,
        &[((0, 1), vec![0, 0, 1]), ((1, 2), vec![1, 0, 0]), ((0, 2), vec![0, -1, 0])],
    )
}

/// `[e1, e2] = e2`.
pub fn aff1() -> LieAlgebroid {
    lie_algebra(2, &[((0, 1), vec![0, 1])])
}

/// `aff(1) + R`: `[e1, e2] = e2`, `e3` central.
pub fn aff1_plus_line() -> LieAlgebroid {
    lie_algebra(3, &[((0, 1), vec![0, 1, 0])])
}

/// Heisenberg algebra `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebroid {
    lie_algebra(3, &[((0, 1), vec![0, 0, 1])])
}

pub fn abelian(rank: usize) -> LieAlgebroid {
    lie_algebra(rank, &[])
}

/// Elementary matrices `E_ab` in row-major order.
fn elementary(c: &Coords, n: usize, a: usize, b: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(c, n, n);
    m.set(a, b, Polynomial::one(c));
    m
}

/// `gl_n(R)` on the basis `E_ab` (index `a * n + b`).
pub fn gl_real(n: usize) -> LieAlgebroid {
    let c = point();
    let basis: Vec<PolyMatrix> = (0..n * n).map(|k| elementary(&c, n, k / n, k % n)).collect();
    matrix_lie_algebra(&c, &basis)
}

/// The defining representation of [`gl_real`].
pub fn gl_real_standard(g: &LieAlgebroid, n: usize) -> Representation {
    let c = g.coords().clone();
    Representation::real(g, (0..n * n).map(|k| elementary(&c, n, k / n, k % n)).collect()).unwrap()
}

/// Lie algebra spanned by the given real matrices (closed under commutators).
fn matrix_lie_algebra(_c: &Coords, basis: &[PolyMatrix]) -> LieAlgebroid {
    let r = basis.len();
    let flat = |m: &PolyMatrix| -> Vec<Rational> { m.entries().iter().map(|p| p.constant_term()).collect() };
    let cols: Vec<Vec<Rational>> = basis.iter().map(flat).collect();
    let size = cols[0].len();
    let mut a = SparseRationalMatrix::new(size, r);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            a.set(i, j, v.clone());
        }
    }
    let mut br = BTreeMap::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let comm = flat(&basis[i].commutator(&basis[j]));
            let x = a.solve(&comm).expect("basis closed under commutators");
            br.insert((i, j), x);
        }
    }
    lie_algebra_rational(r, br).with_frame_names(names("e", r))
}

/// Complex matrices forming the real basis of `gl_n(C)` used here: first the
/// anti-Hermitian basis of `u(n)`, then `i` times it (Hermitian matrices).
pub fn gl_complex_basis(n: usize) -> Vec<CMatrix> {
    let c = point();
    let zero = PolyMatrix::zeros(&c, n, n);
    let mut u = Vec::new();
    for a in 0..n {
        u.push(CMatrix {
            re: zero.clone(),
            im: elementary(&c, n, a, a),
        });
    }
    for a in 0..n {
        for b in (a + 1)..n {
            u.push(CMatrix::real(elementary(&c, n, a, b).sub(&elementary(&c, n, b, a))));
            u.push(CMatrix {
                re: zero.clone(),
                im: elementary(&c, n, a, b).add(&elementary(&c, n, b, a)),
            });
        }
    }
    // i * (anti-Hermitian) = Hermitian
    let herm: Vec<CMatrix> = u
        .iter()
        .map(|m| CMatrix {
            re: m.im.neg(),
            im: m.re.clone(),
        })
        .collect();
    u.into_iter().chain(herm).collect()
}

/// `gl_n(C)` as a real Lie algebra of dimension `2n^2`; the first `n^2`
/// frame elements span `u(n)`.
pub fn gl_complex(n: usize) -> LieAlgebroid {
    let c = point();
    let basis: Vec<PolyMatrix> = gl_complex_basis(n).iter().map(CMatrix::realify).collect();
    matrix_lie_algebra(&c, &basis)
}

/// The defining complex representation of [`gl_complex`].
pub fn gl_complex_standard(g: &LieAlgebroid, n: usize) -> Representation {
    Representation::new(g, Field::Complex, gl_complex_basis(n)).unwrap()
}

/// Adjoint representation of an algebroid over a point: `(omega_i)_{kj} = c_ij^k`.
pub fn adjoint(g: &LieAlgebroid) -> Representation {
    let r = g.rank();
    let c = g.coords().clone();
    let conn = (0..r)
        .map(|i| {
            let mut m = PolyMatrix::zeros(&c, r, r);
            for j in 0..r {
                for k in 0..r {
                    m.set(k, j, g.c(i, j)[k].clone());
                }
            }
            m
        })
        .collect();
    Representation::real(g, conn).unwrap()
}

/// Tangent bundle of `R^n` with the coordinate frame.
pub fn tangent(coord_names: &[&str]) -> LieAlgebroid {
    let c = coords(coord_names).unwrap();
    let n = c.len();
    let anchor = (0..n)
        .map(|i| (0..n).map(|a| Polynomial::int(&c, i64::from(i == a))).collect())
        .collect();
    let frame = coord_names.iter().map(|x| format!("d{x}")).collect();
    LieAlgebroid::new(&c, frame, anchor, BTreeMap::new()).unwrap()
}

/// The foliation spanned by the first `k` coordinate fields of `R^n`.
pub fn coordinate_foliation(coord_names: &[&str], k: usize) -> LieAlgebroid {
    let c = coords(coord_names).unwrap();
    let n = c.len();
    let anchor = (0..k)
        .map(|i| (0..n).map(|a| Polynomial::int(&c, i64::from(i == a))).collect())
        .collect();
    let frame = coord_names[..k].iter().map(|x| format!("d{x}")).collect();
    LieAlgebroid::new(&c, frame, anchor, BTreeMap::new()).unwrap()
}

/// Rank-one algebroid of the vector field `x_field * d/dx` on the line.
pub fn vector_field_algebroid(x_field: &str) -> LieAlgebroid {
    let c = coords(&["x"]).unwrap();
    let v = Polynomial::parse(x_field, &c).unwrap();
    LieAlgebroid::new(&c, vec!["e".into()], vec![vec![v]], BTreeMap::new()).unwrap()
}

/// `T*R` as a representation of [`vector_field_algebroid`]: `omega(e) = dX/dx`.
pub fn vector_field_cotangent(a: &LieAlgebroid) -> Representation {
    let dv = a.anchor(0)[0].partial_index(0);
    Representation::real(a, vec![PolyMatrix::from_rows(a.coords(), vec![vec![dv]])]).unwrap()
}

/// Rank-one connection with the given scalar per frame element.
pub fn line_connection(a: &LieAlgebroid, scalars: &[Polynomial]) -> Representation {
    Representation::real(
        a,
        scalars
            .iter()
            .map(|s| PolyMatrix::from_rows(a.coords(), vec![vec![s.clone()]]))
            .collect(),
    )
    .unwrap()
}

pub fn int_poly(c: &Coords, v: i64) -> Polynomial {
    Polynomial::constant(c, rat(v))
}

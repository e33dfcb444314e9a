//! Characteristic classes of representations: `u_1`, the metric-corrected
//! odd classes `u_{2k-1}`, algebroid Chern classes, the modular class and the
//! intrinsic class of a regular algebroid.
//!
//! No normalisation constants are applied; every class is the bare trace
//! formula.

use crate::algebroid::{
    canonical_line_bundle, curvature, metric_theta, LieAlgebroid, Metric, Representation,
};
use crate::cochain::{differential, wedge, Cochain, MatrixCochain};
use crate::cohomology::{find_primitive, Exactness, Grading};
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PolyMatrix};
use crate::poly::{rat, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct CharClassResult {
    pub degree: usize,
    /// Real part of the cocycle numerator.
    pub cocycle: Cochain,
    /// Imaginary part, for complex representations.
    pub imaginary: Option<Cochain>,
    /// The class is `cocycle / denominator`; 1 unless the metric determinant varies.
    pub denominator: Polynomial,
    pub closed: bool,
    pub exactness: Option<Exactness>,
}

impl CharClassResult {
    pub fn is_zero(&self) -> bool {
        self.cocycle.is_zero() && self.imaginary.as_ref().is_none_or(Cochain::is_zero)
    }

    /// Decides exactness of the real part inside the truncation.
    pub fn with_exactness(mut self, a: &LieAlgebroid, g: &Grading) -> Result<Self> {
        if !self.denominator.is_constant() {
            return Err(Error::Unsupported("exactness of a rational cocycle".into()));
        }
        self.exactness = Some(find_primitive(a, None, &self.cocycle, g)?);
        Ok(self)
    }
}

/// Closedness of `n / g^m` for a scalar cochain `n`:
/// `g dn - m dg ^ n = 0`.
fn quotient_closed(a: &LieAlgebroid, n: &Cochain, g: &Polynomial, m: usize) -> Result<bool> {
    let dn = differential(a, None, n)?;
    if g.is_constant() {
        return Ok(dn.is_zero());
    }
    let dg = differential(a, None, &Cochain::function(a, g.clone()))?;
    let lhs = dn
        .scale_poly(g)
        .sub(&wedge(&dg, n)?.scale(&rat(m as i64)));
    Ok(lhs.is_zero())
}

fn finish(
    a: &LieAlgebroid,
    degree: usize,
    re: Cochain,
    im: Option<Cochain>,
    denominator: Polynomial,
    power: usize,
) -> Result<CharClassResult> {
    let (re, im, denominator) = match denominator.as_constant() {
        Some(c) => {
            let s = rat(1) / num_traits::pow::pow(c, power);
            (re.scale(&s), im.map(|x| x.scale(&s)), Polynomial::one(a.coords()))
        }
        None => (re, im, denominator),
    };
    let mut closed = quotient_closed(a, &re, &denominator, power)?;
    if let Some(im) = &im {
        closed &= quotient_closed(a, im, &denominator, power)?;
    }
    Ok(CharClassResult {
        degree,
        cocycle: re,
        imaginary: im,
        denominator,
        closed,
        exactness: None,
    })
}

/// `X -> Tr(omega_X)`, real part in the complex case.
pub fn u1(a: &LieAlgebroid, e: &Representation) -> Result<CharClassResult> {
    a.require_validated()?;
    e.require_validated()?;
    let mut c = Cochain::zero_on(a, 1, 1);
    for i in 0..a.rank() {
        c.set(vec![i], vec![e.omega(i).re.trace()]);
    }
    finish(a, 1, c, None, Polynomial::one(a.coords()), 1)
}

/// Checks `det(A) Tr(omega_f - omega_e)(X) = rho(X)(det A)` for the frame
/// `f_a = sum_b A_ba e_b`, where `omega_f = A^-1 (omega_e A + rho(A))`; the
/// left side is computed as `Tr(adj(A) (omega_e A + rho(A))) - det(A) Tr(omega_e)`.
pub fn frame_change_check(a: &LieAlgebroid, e: &Representation, amat: &PolyMatrix) -> Result<bool> {
    e.require_validated()?;
    let m = e.rank();
    if amat.rows() != m || amat.cols() != m {
        return Err(Error::Shape(format!("frame change must be {m}x{m}")));
    }
    let amat = CMatrix::real(amat.with_coords(a.coords()));
    let det = amat.re.det();
    if det.is_zero() {
        return Err(Error::Invalid("frame change is identically singular".into()));
    }
    let adj = CMatrix::real(amat.re.adjugate());
    for i in 0..a.rank() {
        let w = e.omega(i);
        let wf = adj.mul(&w.mul(&amat).add(&amat.derive_along(a.anchor(i))));
        let lhs = &wf.re.trace() - &(&det * &w.re.trace());
        if lhs != a.anchor_apply(i, &det) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Connection in the frame `f_a = sum_b A_ba e_b` when `det A` is a nonzero constant.
pub fn change_representation_frame(a: &LieAlgebroid, e: &Representation, amat: &PolyMatrix) -> Result<Representation> {
    e.require_validated()?;
    let amat = CMatrix::real(amat.with_coords(a.coords()));
    let det = amat
        .re
        .det()
        .as_constant()
        .filter(|d| !num_traits::Zero::is_zero(d))
        .ok_or_else(|| Error::Invalid("frame change determinant is not a nonzero constant".into()))?;
    let inv = CMatrix::real(amat.re.adjugate()).scale(&(rat(1) / det));
    let conn = (0..a.rank())
        .map(|i| inv.mul(&e.omega(i).mul(&amat).add(&amat.derive_along(a.anchor(i)))))
        .collect();
    Representation::new(a, e.field(), conn)?
        .validated(a)
        .map_err(|r| Error::Invalid(format!("transformed connection is not flat: {r}")))
}

fn u_odd_unchecked(a: &LieAlgebroid, e: &Representation, h: &Metric, k: usize) -> Result<CharClassResult> {
    let (theta, det) = metric_theta(a, e, h);
    let power = 2 * k - 1;
    let (re, im) = if e.rank() == 0 {
        (Cochain::zero_on(a, power, 1), Cochain::zero_on(a, power, 1))
    } else {
        MatrixCochain::from_one_forms(a.coords(), &theta).power(power).trace()
    };
    let im = (e.field() == crate::algebroid::Field::Complex).then_some(im);
    finish(a, power, re, im, det.pow(power as u32), power)
}

/// `Tr(theta^{2k-1})` with `theta_i = (omega_i - omega_i^h) / 2`.
pub fn u_odd(a: &LieAlgebroid, e: &Representation, h: &Metric, k: usize) -> Result<CharClassResult> {
    a.require_validated()?;
    e.require_validated()?;
    if k == 0 || k > e.rank() {
        return Err(Error::Invalid(format!("k = {k} outside 1..={}", e.rank())));
    }
    u_odd_unchecked(a, e, h, k)
}

/// `Tr(R^k)` for the curvature of arbitrary connection matrices.
pub fn g_chern(a: &LieAlgebroid, gamma: &[CMatrix], k: usize) -> Result<CharClassResult> {
    a.require_validated()?;
    if gamma.len() != a.rank() {
        return Err(Error::Shape("one connection matrix per frame element".into()));
    }
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let gamma: Vec<CMatrix> = gamma.iter().map(|g| g.with_coords(a.coords())).collect();
    let m = gamma.first().map_or(0, CMatrix::rows);
    let r = MatrixCochain::from_two_forms(a.coords(), a.rank(), m, |i, j| curvature(a, &gamma, i, j));
    let (re, im) = if r.is_zero() {
        (Cochain::zero_on(a, 2 * k, 1), Cochain::zero_on(a, 2 * k, 1))
    } else {
        r.power(k).trace()
    };
    let complex = gamma.iter().any(|g| !g.is_real());
    finish(a, 2 * k, re, complex.then_some(im), Polynomial::one(a.coords()), 1)
}

/// `u_1` of the canonical line bundle.
pub fn modular_class(a: &LieAlgebroid) -> Result<CharClassResult> {
    u1(a, &canonical_line_bundle(a)?)
}

/// `u_{2k-1}(K) - u_{2k-1}(nu)` for a regular algebroid given in adapted form:
/// `kernel` indexes frame elements spanning the anchor kernel, and
/// `normal_coords` indexes the coordinates transverse to the orbits. The
/// anchor must have no normal components and its block on the remaining
/// frame and coordinates must have constant nonzero determinant.
pub fn intrinsic_class(a: &LieAlgebroid, kernel: &[usize], normal_coords: &[usize], k: usize) -> Result<CharClassResult> {
    a.require_validated()?;
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let r = a.rank();
    let n = a.dim();
    if kernel.iter().any(|&i| i >= r) || normal_coords.iter().any(|&b| b >= n) {
        return Err(Error::Invalid("index out of range".into()));
    }
    let comp: Vec<usize> = (0..r).filter(|i| !kernel.contains(i)).collect();
    let tangential: Vec<usize> = (0..n).filter(|b| !normal_coords.contains(b)).collect();
    for &i in kernel {
        if a.anchor(i).iter().any(|p| !p.is_zero()) {
            return Err(Error::Invalid(format!("{} is not in the anchor kernel", a.frame()[i])));
        }
        for j in 0..r {
            if comp.iter().any(|&c| !a.c(j, i)[c].is_zero()) {
                return Err(Error::Invalid("kernel frame is not an ideal".into()));
            }
        }
    }
    for i in 0..r {
        if normal_coords.iter().any(|&b| !a.anchor(i)[b].is_zero()) {
            return Err(Error::Invalid(format!("anchor of {} has normal components", a.frame()[i])));
        }
    }
    if comp.len() != tangential.len() {
        return Err(Error::Invalid("anchor image and tangential coordinates differ in rank".into()));
    }
    let block = PolyMatrix::from_rows(
        a.coords(),
        comp.iter().map(|&i| tangential.iter().map(|&b| a.anchor(i)[b].clone()).collect()).collect(),
    );
    if !comp.is_empty() && block.det().as_constant().is_none_or(|d| num_traits::Zero::is_zero(&d)) {
        return Err(Error::Invalid("anchor is not regular in the given coordinates".into()));
    }
    let km = kernel.len();
    let kconn = (0..r)
        .map(|i| {
            let mut w = PolyMatrix::zeros(a.coords(), km, km);
            for (col, &x) in kernel.iter().enumerate() {
                for (row, &y) in kernel.iter().enumerate() {
                    w.set(row, col, a.c(i, x)[y].clone());
                }
            }
            w
        })
        .collect();
    let krep = Representation::real(a, kconn)?
        .validated(a)
        .map_err(|rep| Error::Invalid(format!("kernel connection is not flat: {rep}")))?;
    let nm = normal_coords.len();
    let nconn = (0..r)
        .map(|i| {
            let mut w = PolyMatrix::zeros(a.coords(), nm, nm);
            for (col, &y) in normal_coords.iter().enumerate() {
                for (row, &yp) in normal_coords.iter().enumerate() {
                    w.set(row, col, -&a.anchor(i)[yp].partial_index(y));
                }
            }
            w
        })
        .collect();
    let nrep = Representation::real(a, nconn)?
        .validated(a)
        .map_err(|rep| Error::Invalid(format!("Bott connection is not flat: {rep}")))?;
    let uk = u_odd_unchecked(a, &krep, &Metric::identity(&krep), k)?;
    let un = u_odd_unchecked(a, &nrep, &Metric::identity(&nrep), k)?;
    finish(
        a,
        2 * k - 1,
        uk.cocycle.sub(&un.cocycle),
        None,
        Polynomial::one(a.coords()),
        1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn aff1_modular_class() {
        let a = library::aff1().validated().unwrap();
        let m = modular_class(&a).unwrap();
        assert!(m.closed);
        assert_eq!(m.cocycle, Cochain::basis(&a, &[0], Polynomial::one(a.coords())));
    }

    #[test]
    fn skew_connections_have_no_u1() {
        let a = library::so3().validated().unwrap();
        let e = library::adjoint(&a).validated(&a).unwrap();
        assert!(u1(&a, &e).unwrap().cocycle.is_zero());
    }
}

//! Algebroid cochains with values in a representation, the differential,
//! wedge products and the Cartan operators.
//!
//! Sign conventions. The differential is
//!
//! ```text
//! dw(X_1..X_{p+1}) = sum_{i<j} (-1)^{i+j-1} w([X_i,X_j], ..^i..^j..)
//!                  + sum_i (-1)^i L_{X_i}(w(..^i..))
//! ```
//!
//! which is the negative of the usual Chevalley-Eilenberg differential, so
//! `df(X) = -rho(X)(f)`. To keep all four Cartan relations valid with this
//! `d`, [`lie_derivative`] is the usual Lie derivative and [`interior_product`]
//! is the negative of insertion in the first slot. Equivalently, the whole
//! calculus is the usual one conjugated by `w -> (-1)^p w`.

use std::collections::BTreeMap;

use crate::algebroid::{bracket_sections, LieAlgebroid, Representation, Section};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::poly::{Coords, Polynomial, Rational};

/// Sign of the permutation sorting `idx`, and the sorted indices; `None` on a repeat.
pub fn sort_sign(idx: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Increasing `p`-subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            if r - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    rec(0, r, p, &mut cur, &mut out);
    out
}

/// Merges two increasing index lists; `None` if they intersect.
fn shuffle(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0usize;
    for &x in a {
        if b.contains(&x) {
            return None;
        }
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, v))
}

/// A `p`-cochain with values in `R^dim`, stored on increasing frame multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    coords: Coords,
    rank: usize,
    degree: usize,
    dim: usize,
    comps: BTreeMap<Vec<usize>, Vec<Polynomial>>,
}

impl Cochain {
    pub fn zero(coords: &Coords, rank: usize, degree: usize, dim: usize) -> Self {
        Cochain {
            coords: coords.clone(),
            rank,
            degree,
            dim,
            comps: BTreeMap::new(),
        }
    }

    pub fn zero_on(a: &LieAlgebroid, degree: usize, dim: usize) -> Self {
        Self::zero(a.coords(), a.rank(), degree, dim)
    }

    /// Scalar 0-cochain.
    pub fn function(a: &LieAlgebroid, f: Polynomial) -> Self {
        let mut c = Self::zero_on(a, 0, 1);
        c.set(Vec::new(), vec![f]);
        c
    }

    /// Scalar frame monomial `f * e^{i_1} ^ ... ^ e^{i_p}` (indices in any order).
    pub fn basis(a: &LieAlgebroid, idx: &[usize], f: Polynomial) -> Self {
        let mut c = Self::zero_on(a, idx.len(), 1);
        if let Some((s, sorted)) = sort_sign(idx) {
            let f = if s < 0 { -f } else { f };
            c.set(sorted, vec![f]);
        }
        c
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Vec<Polynomial>> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Sets the component on an increasing multi-index.
    pub fn set(&mut self, idx: Vec<usize>, v: Vec<Polynomial>) {
        assert_eq!(idx.len(), self.degree, "multi-index length");
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "multi-index must increase");
        assert!(idx.iter().all(|&i| i < self.rank), "multi-index range");
        assert_eq!(v.len(), self.dim, "value dimension");
        let v: Vec<Polynomial> = v
            .into_iter()
            .map(|p| p.with_coords(&self.coords).expect("cochain coordinates"))
            .collect();
        if v.iter().all(Polynomial::is_zero) {
            self.comps.remove(&idx);
        } else {
            self.comps.insert(idx, v);
        }
    }

    fn add_at(&mut self, idx: Vec<usize>, v: &[Polynomial], sign: i32) {
        let zero = Polynomial::zero(&self.coords);
        let entry = self
            .comps
            .entry(idx.clone())
            .or_insert_with(|| vec![zero; v.len()]);
        for (e, x) in entry.iter_mut().zip(v) {
            if sign > 0 {
                *e += x;
            } else {
                *e -= x;
            }
        }
        if entry.iter().all(Polynomial::is_zero) {
            self.comps.remove(&idx);
        }
    }

    /// Value on frame elements in any order.
    pub fn eval_frame(&self, idx: &[usize]) -> Vec<Polynomial> {
        let zero = || vec![Polynomial::zero(&self.coords); self.dim];
        match sort_sign(idx) {
            None => zero(),
            Some((s, sorted)) => match self.comps.get(&sorted) {
                None => zero(),
                Some(v) if s > 0 => v.clone(),
                Some(v) => v.iter().map(|p| -p).collect(),
            },
        }
    }

    /// Value on arbitrary sections, by multilinear expansion.
    pub fn eval_sections(&self, xs: &[Section]) -> Vec<Polynomial> {
        assert_eq!(xs.len(), self.degree, "argument count");
        let mut out = vec![Polynomial::zero(&self.coords); self.dim];
        let mut idx = Vec::with_capacity(self.degree);
        self.expand(xs, &mut idx, &Polynomial::one(&self.coords), &mut out);
        out
    }

    fn expand(&self, xs: &[Section], idx: &mut Vec<usize>, coef: &Polynomial, out: &mut [Polynomial]) {
        let k = idx.len();
        if k == xs.len() {
            let v = self.eval_frame(idx);
            for (o, p) in out.iter_mut().zip(&v) {
                if !p.is_zero() {
                    *o += &(coef * p);
                }
            }
            return;
        }
        for (a, f) in xs[k].0.iter().enumerate() {
            if f.is_zero() || idx.contains(&a) {
                continue;
            }
            idx.push(a);
            self.expand(xs, idx, &(coef * f), out);
            idx.pop();
        }
    }

    fn same_space(&self, o: &Cochain) -> Result<()> {
        if self.rank != o.rank || self.degree != o.degree || self.dim != o.dim || self.coords[..] != o.coords[..] {
            return Err(Error::Shape("cochains live in different spaces".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Cochain) -> Result<Cochain> {
        self.same_space(o)?;
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_at(k.clone(), v, 1);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Cochain) -> Result<Cochain> {
        self.same_space(o)?;
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_at(k.clone(), v, -1);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        self.try_add(o).expect("cochain add")
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        self.try_sub(o).expect("cochain sub")
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&crate::poly::rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, f: &Polynomial) -> Cochain {
        self.map(|p| p * f)
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Cochain {
        let mut out = Cochain::zero(&self.coords, self.rank, self.degree, self.dim);
        for (k, v) in &self.comps {
            out.set(k.clone(), v.iter().map(&f).collect());
        }
        out
    }

    /// The `a`-th coefficient as a scalar cochain.
    pub fn component(&self, a: usize) -> Cochain {
        let mut out = Cochain::zero(&self.coords, self.rank, self.degree, 1);
        for (k, v) in &self.comps {
            out.set(k.clone(), vec![v[a].clone()]);
        }
        out
    }

    /// Highest total polynomial degree among the components.
    pub fn max_poly_degree(&self) -> Option<u32> {
        self.comps
            .values()
            .flat_map(|v| v.iter().filter_map(Polynomial::degree))
            .max()
    }
}

fn check_rep(a: &LieAlgebroid, e: Option<&Representation>, w: &Cochain) -> Result<()> {
    if w.rank != a.rank() || w.coords[..] != a.coords()[..] {
        return Err(Error::Shape("cochain belongs to another algebroid".into()));
    }
    let m = e.map_or(1, Representation::rank);
    if e.is_none() && w.dim != 1 {
        return Err(Error::Shape("vector-valued cochain needs a representation".into()));
    }
    if w.dim != m {
        return Err(Error::Shape(format!("cochain has {} values, representation rank {m}", w.dim)));
    }
    Ok(())
}

/// `L_{e_i}` on a coefficient column, trivial action when `e` is `None`.
fn act(a: &LieAlgebroid, e: Option<&Representation>, i: usize, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
    match e {
        Some(e) => e.act(a, i, v),
        None => Ok(v.iter().map(|p| a.anchor_apply(i, p)).collect()),
    }
}

/// `L_X` on a coefficient column for a general section.
fn act_section(a: &LieAlgebroid, e: Option<&Representation>, x: &Section, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let rx = a.anchor_of(x);
    let mut out: Vec<Polynomial> = v.iter().map(|p| p.derive_along(&rx)).collect();
    if let Some(e) = e {
        for (i, f) in x.0.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let wv = e.real_omega(i)?.mul_vec(v);
            for (o, p) in out.iter_mut().zip(&wv) {
                if !p.is_zero() {
                    *o += &(f * p);
                }
            }
        }
    }
    Ok(out)
}

/// The differential; requires a validated algebroid and representation.
pub fn differential(a: &LieAlgebroid, e: Option<&Representation>, w: &Cochain) -> Result<Cochain> {
    a.require_validated()?;
    if let Some(e) = e {
        e.require_validated()?;
    }
    differential_unchecked(a, e, w)
}

/// The differential without the validation requirement; used to detect
/// non-closed data on candidate structures.
pub fn differential_unchecked(a: &LieAlgebroid, e: Option<&Representation>, w: &Cochain) -> Result<Cochain> {
    check_rep(a, e, w)?;
    let p = w.degree;
    let r = a.rank();
    let mut out = Cochain::zero(&w.coords, r, p + 1, w.dim);
    if p + 1 > r || w.is_zero() {
        return Ok(out);
    }
    for idx in subsets(r, p + 1) {
        let mut acc = vec![Polynomial::zero(&w.coords); w.dim];
        for s in 0..=p {
            for t in (s + 1)..=p {
                let c = a.c(idx[s], idx[t]);
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != s && q != t)
                    .map(|(_, &i)| i)
                    .collect();
                // 1-based positions s+1, t+1: sign (-1)^{s+t+1}
                let neg = (s + t) % 2 == 0;
                for (k, ck) in c.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend_from_slice(&rest);
                    let v = w.eval_frame(&args);
                    for (o, x) in acc.iter_mut().zip(&v) {
                        if x.is_zero() {
                            continue;
                        }
                        let term = ck * x;
                        if neg {
                            *o -= &term;
                        } else {
                            *o += &term;
                        }
                    }
                }
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != s)
                .map(|(_, &i)| i)
                .collect();
            let v = w.eval_frame(&rest);
            if v.iter().all(Polynomial::is_zero) && e.is_none() {
                continue;
            }
            let lv = act(a, e, idx[s], &v)?;
            // (-1)^{s+1}
            for (o, x) in acc.iter_mut().zip(&lv) {
                if s % 2 == 0 {
                    *o -= x;
                } else {
                    *o += x;
                }
            }
        }
        out.set(idx, acc);
    }
    Ok(out)
}

/// Shuffle product without factorial normalisation. A scalar factor
/// multiplies the other side's values; two vector-valued factors pair to the
/// tensor product (index `a * dim(eta) + b`).
pub fn wedge(w: &Cochain, eta: &Cochain) -> Result<Cochain> {
    if w.rank != eta.rank || w.coords[..] != eta.coords[..] {
        return Err(Error::Shape("cochains live on different algebroids".into()));
    }
    let dim = w.dim * eta.dim;
    let mut out = Cochain::zero(&w.coords, w.rank, w.degree + eta.degree, dim);
    if w.degree + eta.degree > w.rank {
        return Ok(out);
    }
    for (i, a) in &w.comps {
        for (j, b) in &eta.comps {
            let Some((sign, k)) = shuffle(i, j) else { continue };
            let mut v = Vec::with_capacity(dim);
            for x in a {
                for y in b {
                    v.push(x * y);
                }
            }
            out.add_at(k, &v, sign);
        }
    }
    Ok(out)
}

/// Lie derivative `(L_X w)(X_1..X_p) = L_X(w(X_1..X_p)) - sum_i w(..,[X,X_i],..)`.
pub fn lie_derivative(a: &LieAlgebroid, e: Option<&Representation>, x: &Section, w: &Cochain) -> Result<Cochain> {
    a.require_validated()?;
    check_rep(a, e, w)?;
    let r = a.rank();
    let p = w.degree;
    let frames: Vec<Section> = (0..r).map(|i| a.frame_section(i)).collect();
    let brackets: Vec<Section> = frames
        .iter()
        .map(|f| bracket_sections(a, x, f))
        .collect::<Result<_>>()?;
    let mut out = Cochain::zero(&w.coords, r, p, w.dim);
    for idx in subsets(r, p) {
        let mut acc = act_section(a, e, x, &w.eval_frame(&idx))?;
        for s in 0..p {
            let mut args: Vec<Section> = idx.iter().map(|&i| frames[i].clone()).collect();
            args[s] = brackets[idx[s]].clone();
            let v = w.eval_sections(&args);
            for (o, t) in acc.iter_mut().zip(&v) {
                *o -= t;
            }
        }
        out.set(idx, acc);
    }
    Ok(out)
}

/// Interior product `(i_X w)(X_1..X_{p-1}) = -w(X, X_1, .., X_{p-1})`.
pub fn interior_product(x: &Section, w: &Cochain) -> Result<Cochain> {
    if x.0.len() != w.rank {
        return Err(Error::Shape("section and cochain ranks differ".into()));
    }
    if w.degree == 0 {
        return Ok(Cochain::zero(&w.coords, w.rank, 0, w.dim));
    }
    let mut out = Cochain::zero(&w.coords, w.rank, w.degree - 1, w.dim);
    for (idx, v) in &w.comps {
        for (pos, &i) in idx.iter().enumerate() {
            let f = &x.0[i];
            if f.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &j)| j).collect();
            // w(e_i, rest) = (-1)^pos w(idx); i_X carries an extra minus.
            let sign = if pos % 2 == 0 { -1 } else { 1 };
            let fv: Vec<Polynomial> = v.iter().map(|p| f * p).collect();
            out.add_at(rest, &fv, sign);
        }
    }
    Ok(out)
}

/// Lifts a cochain on `a` to `pullback_algebroid(a, k)`: components copied on
/// the lifted frame, zero on any vertical index.
pub fn pullback_cochain(pulled: &LieAlgebroid, w: &Cochain) -> Result<Cochain> {
    if pulled.rank() < w.rank || !w.coords.iter().all(|c| pulled.coords().contains(c)) {
        return Err(Error::Shape("target is not a pull-back of the cochain's algebroid".into()));
    }
    let mut out = Cochain::zero(pulled.coords(), pulled.rank(), w.degree, w.dim);
    for (idx, v) in &w.comps {
        out.set(idx.clone(), v.clone());
    }
    Ok(out)
}

/// Degree-`p` cochain with complex matrix values, multiplied by matrix product.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCochain {
    coords: Coords,
    rank: usize,
    degree: usize,
    size: usize,
    comps: BTreeMap<Vec<usize>, CMatrix>,
}

impl MatrixCochain {
    /// The 1-cochain `e_i -> m[i]`.
    pub fn from_one_forms(coords: &Coords, m: &[CMatrix]) -> Self {
        let size = m.first().map_or(0, CMatrix::rows);
        let mut comps = BTreeMap::new();
        for (i, x) in m.iter().enumerate() {
            if !x.is_zero() {
                comps.insert(vec![i], x.with_coords(coords));
            }
        }
        MatrixCochain {
            coords: coords.clone(),
            rank: m.len(),
            degree: 1,
            size,
            comps,
        }
    }

    /// The 2-cochain `(e_i, e_j) -> f(i, j)` for `i < j`.
    pub fn from_two_forms(coords: &Coords, rank: usize, size: usize, f: impl Fn(usize, usize) -> CMatrix) -> Self {
        let mut comps = BTreeMap::new();
        for i in 0..rank {
            for j in (i + 1)..rank {
                let x = f(i, j);
                if !x.is_zero() {
                    comps.insert(vec![i, j], x.with_coords(coords));
                }
            }
        }
        MatrixCochain {
            coords: coords.clone(),
            rank,
            degree: 2,
            size,
            comps,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn wedge(&self, o: &MatrixCochain) -> MatrixCochain {
        let mut comps: BTreeMap<Vec<usize>, CMatrix> = BTreeMap::new();
        for (i, a) in &self.comps {
            for (j, b) in &o.comps {
                let Some((sign, k)) = shuffle(i, j) else { continue };
                let mut prod = a.mul(b);
                if sign < 0 {
                    prod = prod.neg();
                }
                let sum = match comps.remove(&k) {
                    Some(x) => x.add(&prod),
                    None => prod,
                };
                if !sum.is_zero() {
                    comps.insert(k, sum);
                }
            }
        }
        MatrixCochain {
            coords: self.coords.clone(),
            rank: self.rank,
            degree: self.degree + o.degree,
            size: self.size,
            comps,
        }
    }

    pub fn power(&self, k: usize) -> MatrixCochain {
        assert!(k >= 1, "wedge power");
        let mut out = self.clone();
        for _ in 1..k {
            out = out.wedge(self);
        }
        out
    }

    /// Trace as (real part, imaginary part) scalar cochains.
    pub fn trace(&self) -> (Cochain, Cochain) {
        let mut re = Cochain::zero(&self.coords, self.rank, self.degree, 1);
        let mut im = re.clone();
        for (k, m) in &self.comps {
            let (tr, ti) = m.trace();
            re.set(k.clone(), vec![tr]);
            im.set(k.clone(), vec![ti]);
        }
        (re, im)
    }
}

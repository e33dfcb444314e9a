//! Finite models of algebroid cohomology.
//!
//! A `p`-cochain basis element is a triple (increasing frame multi-index,
//! monomial, coefficient index). Its weight is the monomial degree plus the
//! frame weights of the multi-index. By default a frame element has weight 1
//! when its anchor is a nonzero constant vector field and 0 otherwise, which
//! makes the differential weight-preserving for constant anchors (de Rham)
//! and for linear anchors with constant structure (Lie-Poisson). Any image
//! term whose weight leaves the truncation is reported as an overflow.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebroid::{restrict, LieAlgebroid, Representation};
use crate::cochain::{differential, interior_product, lie_derivative, subsets, Cochain};
use crate::error::{Error, Result};
use crate::poly::{monomial_basis, Exponent, Polynomial, Rational};
use crate::sparse::SparseRationalMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truncation {
    /// Total weight at most the bound.
    Cap(u32),
    /// Total weight exactly the bound.
    Weight(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub frame_weights: Vec<u32>,
    pub truncation: Truncation,
}

pub fn default_frame_weights(a: &LieAlgebroid) -> Vec<u32> {
    (0..a.rank())
        .map(|i| {
            let row = a.anchor(i);
            let constant = row.iter().all(Polynomial::is_constant);
            let nonzero = row.iter().any(|p| !p.is_zero());
            u32::from(constant && nonzero)
        })
        .collect()
}

impl Grading {
    pub fn cap(a: &LieAlgebroid, bound: u32) -> Self {
        Grading {
            frame_weights: default_frame_weights(a),
            truncation: Truncation::Cap(bound),
        }
    }

    pub fn weight(a: &LieAlgebroid, w: u32) -> Self {
        Grading {
            frame_weights: default_frame_weights(a),
            truncation: Truncation::Weight(w),
        }
    }

    pub fn bound(&self) -> u32 {
        match self.truncation {
            Truncation::Cap(b) | Truncation::Weight(b) => b,
        }
    }

    fn admits(&self, w: u32) -> bool {
        match self.truncation {
            Truncation::Cap(b) => w <= b,
            Truncation::Weight(b) => w == b,
        }
    }

    fn index_weight(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.frame_weights[i]).sum()
    }
}

/// Ordered basis of the truncated `p`-cochains.
#[derive(Debug, Clone)]
pub struct TruncatedBasis {
    pub degree: usize,
    pub dim: usize,
    pub elements: Vec<(Vec<usize>, Exponent, usize)>,
    index: HashMap<(Vec<usize>, Exponent, usize), usize>,
}

impl TruncatedBasis {
    pub fn new(a: &LieAlgebroid, dim: usize, p: usize, g: &Grading) -> Self {
        let n = a.dim();
        let mut elements = Vec::new();
        for idx in subsets(a.rank(), p) {
            let base = g.index_weight(&idx);
            let monos: Vec<Exponent> = match g.truncation {
                Truncation::Cap(b) if base <= b => (0..=b - base).flat_map(|w| monomial_basis(n, w)).collect(),
                Truncation::Weight(b) if base <= b => monomial_basis(n, b - base),
                _ => Vec::new(),
            };
            for e in monos {
                for c in 0..dim {
                    elements.push((idx.clone(), e.clone(), c));
                }
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        TruncatedBasis {
            degree: p,
            dim,
            elements,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, idx: &[usize], e: &Exponent, c: usize) -> Option<usize> {
        self.index.get(&(idx.to_vec(), e.clone(), c)).copied()
    }

    pub fn element(&self, a: &LieAlgebroid, k: usize) -> Cochain {
        let (idx, e, c) = &self.elements[k];
        let mut v = vec![a.zero_poly(); self.dim];
        v[*c] = Polynomial::monomial(a.coords(), e.clone(), num_traits::One::one());
        let mut w = Cochain::zero_on(a, self.degree, self.dim);
        w.set(idx.clone(), v);
        w
    }

    /// Coordinates of `w`; `Err(weight)` when a term lies outside the truncation.
    pub fn coordinates(&self, w: &Cochain) -> std::result::Result<Vec<Rational>, u32> {
        let mut x = vec![num_traits::Zero::zero(); self.len()];
        for (idx, vals) in w.components() {
            for (c, p) in vals.iter().enumerate() {
                for (e, coef) in p.terms() {
                    match self.position(idx, e, c) {
                        Some(k) => x[k] = coef.clone(),
                        None => return Err(e.degree()),
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn cochain(&self, a: &LieAlgebroid, x: &[Rational]) -> Cochain {
        let mut w = Cochain::zero_on(a, self.degree, self.dim);
        let mut acc: std::collections::BTreeMap<Vec<usize>, Vec<Polynomial>> = Default::default();
        for (k, v) in x.iter().enumerate() {
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            let (idx, e, c) = &self.elements[k];
            let entry = acc
                .entry(idx.clone())
                .or_insert_with(|| vec![a.zero_poly(); self.dim]);
            entry[*c] += &Polynomial::monomial(a.coords(), e.clone(), v.clone());
        }
        for (idx, v) in acc {
            w.set(idx, v);
        }
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Overflow {
    pub degree: usize,
    pub weight: u32,
}

#[derive(Debug, Clone)]
pub struct Boundary {
    pub matrix: SparseRationalMatrix,
    pub source: TruncatedBasis,
    pub target: TruncatedBasis,
    /// Smallest out-of-range image weight, if any.
    pub overflow: Option<Overflow>,
    /// Every image term has the weight of its source.
    pub graded: bool,
}

fn rep_dim(e: Option<&Representation>) -> usize {
    e.map_or(1, Representation::rank)
}

/// Matrix of `d: C^p -> C^{p+1}` on the truncated bases.
pub fn assemble_boundary(a: &LieAlgebroid, e: Option<&Representation>, p: usize, g: &Grading) -> Result<Boundary> {
    let dim = rep_dim(e);
    let source = TruncatedBasis::new(a, dim, p, g);
    let target = TruncatedBasis::new(a, dim, p + 1, g);
    let mut matrix = SparseRationalMatrix::new(target.len(), source.len());
    let mut overflow: Option<Overflow> = None;
    let mut graded = true;
    for col in 0..source.len() {
        let (sidx, se, _) = &source.elements[col];
        let sw = se.degree() + g.index_weight(sidx);
        let img = differential(a, e, &source.element(a, col))?;
        for (idx, vals) in img.components() {
            let base = g.index_weight(idx);
            for (c, poly) in vals.iter().enumerate() {
                for (ex, coef) in poly.terms() {
                    let w = ex.degree() + base;
                    if w != sw {
                        graded = false;
                    }
                    if !g.admits(w) {
                        if overflow.is_none_or(|o| w < o.weight) {
                            overflow = Some(Overflow { degree: p, weight: w });
                        }
                        continue;
                    }
                    let row = target.position(idx, ex, c).expect("target basis covers admitted weights");
                    matrix.set(row, col, coef.clone());
                }
            }
        }
    }
    Ok(Boundary {
        matrix,
        source,
        target,
        overflow,
        graded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub cochains: usize,
    pub kernel: usize,
    pub image: usize,
    pub betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub grading: Option<Grading>,
    pub degrees: Vec<DegreeRow>,
    pub graded: bool,
    pub overflow: bool,
}

impl BettiReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    fn from_ranks(grading: Option<Grading>, dims: &[usize], ranks: &[usize], graded: bool) -> Self {
        let degrees = dims
            .iter()
            .enumerate()
            .map(|(p, &n)| {
                let image = if p == 0 { 0 } else { ranks[p - 1] };
                let kernel = n - ranks[p];
                DegreeRow {
                    degree: p,
                    cochains: n,
                    kernel,
                    image,
                    betti: kernel - image,
                }
            })
            .collect();
        BettiReport {
            grading,
            degrees,
            graded,
            overflow: false,
        }
    }
}

fn overflow_error(g: &Grading, o: Overflow) -> Error {
    Error::DegreeOverflow {
        degree: o.degree,
        weight: o.weight,
        cap: g.bound(),
    }
}

/// Betti numbers of the truncated complex in degrees `0..=p_max`.
pub fn betti(a: &LieAlgebroid, e: Option<&Representation>, p_max: usize, g: &Grading) -> Result<BettiReport> {
    a.require_validated()?;
    let p_max = p_max.min(a.rank());
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    let mut graded = true;
    for p in 0..=p_max {
        let b = assemble_boundary(a, e, p, g)?;
        if let Some(o) = b.overflow {
            return Err(overflow_error(g, o));
        }
        graded &= b.graded;
        dims.push(b.source.len());
        ranks.push(b.matrix.rank());
    }
    Ok(BettiReport::from_ranks(Some(g.clone()), &dims, &ranks, graded))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exactness {
    Exact(Cochain),
    /// No primitive exists inside the truncation.
    NotExact { bound: u32 },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact(_))
    }
}

/// Solves `d eta = z` inside the truncation.
pub fn find_primitive(a: &LieAlgebroid, e: Option<&Representation>, z: &Cochain, g: &Grading) -> Result<Exactness> {
    let dz = differential(a, e, z)?;
    if !dz.is_zero() {
        return Err(Error::Invalid("cochain is not closed".into()));
    }
    let p = z.degree();
    if p == 0 {
        return Ok(if z.is_zero() {
            Exactness::Exact(Cochain::zero_on(a, 0, z.dim()))
        } else {
            Exactness::NotExact { bound: g.bound() }
        });
    }
    let b = assemble_boundary(a, e, p - 1, g)?;
    if let Some(o) = b.overflow {
        return Err(overflow_error(g, o));
    }
    let rhs = b
        .target
        .coordinates(z)
        .map_err(|w| Error::DegreeOverflow { degree: p, weight: w, cap: g.bound() })?;
    Ok(match b.matrix.solve(&rhs) {
        Some(x) => Exactness::Exact(b.source.cochain(a, &x)),
        None => Exactness::NotExact { bound: g.bound() },
    })
}

fn scalar_matrix(a: &LieAlgebroid, p: usize, q: usize, f: impl Fn(&Cochain) -> Result<Cochain>) -> Result<SparseRationalMatrix> {
    let src = subsets(a.rank(), p);
    let dst = subsets(a.rank(), q);
    let pos: HashMap<Vec<usize>, usize> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseRationalMatrix::new(dst.len(), src.len());
    for (col, idx) in src.iter().enumerate() {
        let img = f(&Cochain::basis(a, idx, Polynomial::one(a.coords())))?;
        for (k, v) in img.components() {
            let c = v[0]
                .as_constant()
                .ok_or_else(|| Error::Invalid("relative cohomology needs constant structure".into()))?;
            m.set(pos[k], col, c);
        }
    }
    Ok(m)
}

fn columns_to_matrix(rows: usize, cols: &[Vec<Rational>]) -> SparseRationalMatrix {
    let mut m = SparseRationalMatrix::new(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Cohomology of the `k`-basic subcomplex of a Lie algebra (algebroid over a point).
pub fn relative_basic_cohomology(g: &LieAlgebroid, k: &[usize]) -> Result<BettiReport> {
    g.require_validated()?;
    if g.dim() != 0 {
        return Err(Error::Invalid("relative cohomology needs a Lie algebra (base = point)".into()));
    }
    restrict(g, k)?;
    let r = g.rank();
    // Basic forms live on g/k.
    let top = r - k.len();
    let mut bases: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut ds: Vec<SparseRationalMatrix> = Vec::new();
    for p in 0..=top {
        let n = subsets(r, p).len();
        let mut constraint_rows: Vec<SparseRationalMatrix> = Vec::new();
        for &v in k {
            let x = g.frame_section(v);
            if p > 0 {
                constraint_rows.push(scalar_matrix(g, p, p - 1, |w| interior_product(&x, w))?);
            }
            constraint_rows.push(scalar_matrix(g, p, p, |w| lie_derivative(g, None, &x, w))?);
        }
        let total: usize = constraint_rows.iter().map(SparseRationalMatrix::rows).sum();
        let mut c = SparseRationalMatrix::new(total, n);
        let mut off = 0;
        for m in &constraint_rows {
            for (&(i, j), v) in m.entries() {
                c.set(off + i, j, v.clone());
            }
            off += m.rows();
        }
        bases.push(c.nullspace());
        ds.push(scalar_matrix(g, p, p + 1, |w| differential(g, None, w))?);
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let ranks: Vec<usize> = (0..=top)
        .map(|p| {
            let b = columns_to_matrix(subsets(r, p).len(), &bases[p]);
            ds[p].mul(&b).rank()
        })
        .collect();
    Ok(BettiReport::from_ranks(None, &dims, &ranks, true))
}

//! Lie algebroids over an affine chart with a global frame, their
//! representations and metrics, and the standard constructions on them.
//!
//! A frame element `e_i` acts on functions through its anchor row
//! `rho(e_i) = sum_a anchor[i][a] d/dx_a`. Brackets of frame elements are
//! `[e_i, e_j] = sum_k c_ij^k e_k`; only `i < j` is supplied by callers and
//! the full antisymmetric table is kept internally.
//!
//! Representations use the column convention
//! `L_{e_i}(s) = rho(e_i)(s) + omega_i * s` on coefficient columns.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{half, CMatrix, PolyMatrix};
use crate::poly::{coords as make_coords, Coords, Polynomial};

/// List of failed identities; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn push(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for (k, m) in self.failures.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// A section `X = sum_i coeffs[i] e_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Section(pub Vec<Polynomial>);

impl Section {
    pub fn frame(coords: &Coords, rank: usize, i: usize) -> Self {
        let mut v = vec![Polynomial::zero(coords); rank];
        v[i] = Polynomial::one(coords);
        Section(v)
    }

    pub fn zero(coords: &Coords, rank: usize) -> Self {
        Section(vec![Polynomial::zero(coords); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn scale_poly(&self, f: &Polynomial) -> Section {
        Section(self.0.iter().map(|p| p * f).collect())
    }

    pub fn add(&self, o: &Section) -> Section {
        Section(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Section) -> Section {
        Section(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebroid {
    coords: Coords,
    frame: Vec<String>,
    anchor: Vec<Vec<Polynomial>>,
    structure: Vec<Vec<Vec<Polynomial>>>,
    validated: bool,
}

impl LieAlgebroid {
    /// `brackets` maps `(i, j)` with `i != j` to the coefficients of `[e_i, e_j]`.
    pub fn new(
        coords: &Coords,
        frame: Vec<String>,
        anchor: Vec<Vec<Polynomial>>,
        brackets: BTreeMap<(usize, usize), Vec<Polynomial>>,
    ) -> Result<Self> {
        let r = frame.len();
        let n = coords.len();
        make_coords(&frame).map_err(|e| Error::Invalid(format!("frame names: {e}")))?;
        if let Some(c) = frame.iter().find(|f| coords.contains(f)) {
            return Err(Error::Invalid(format!("frame name `{c}` is also a coordinate")));
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("anchor must be {r}x{n}")));
        }
        let anchor = anchor
            .into_iter()
            .map(|row| row.iter().map(|p| p.with_coords(coords)).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        let zero = Polynomial::zero(coords);
        let mut structure = vec![vec![vec![zero; r]; r]; r];
        for ((i, j), v) in brackets {
            if i >= r || j >= r || i == j {
                return Err(Error::Invalid(format!("bracket index pair ({i}, {j})")));
            }
            if v.len() != r {
                return Err(Error::Shape(format!("bracket ({i}, {j}) needs {r} coefficients")));
            }
            for (k, p) in v.iter().enumerate() {
                let p = p.with_coords(coords)?;
                structure[j][i][k] = -&p;
                structure[i][j][k] = p;
            }
        }
        Ok(LieAlgebroid {
            coords: coords.clone(),
            frame,
            anchor,
            structure,
            validated: false,
        })
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn frame(&self) -> &[String] {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn anchor(&self, i: usize) -> &[Polynomial] {
        &self.anchor[i]
    }

    /// Coefficients of `[e_i, e_j]`.
    pub fn c(&self, i: usize, j: usize) -> &[Polynomial] {
        &self.structure[i][j]
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated("algebroid".into()))
        }
    }

    /// Runs [`validate_algebroid`] and marks the algebroid on success.
    pub fn validated(mut self) -> std::result::Result<Self, ValidationReport> {
        let rep = validate_algebroid(&self);
        if rep.is_valid() {
            self.validated = true;
            Ok(self)
        } else {
            Err(rep)
        }
    }

    pub fn zero_poly(&self) -> Polynomial {
        Polynomial::zero(&self.coords)
    }

    pub fn frame_section(&self, i: usize) -> Section {
        Section::frame(&self.coords, self.rank(), i)
    }

    /// `rho(e_i)(f)`.
    pub fn anchor_apply(&self, i: usize, f: &Polynomial) -> Polynomial {
        f.derive_along(&self.anchor[i])
    }

    /// Vector field `rho(X)`.
    pub fn anchor_of(&self, x: &Section) -> Vec<Polynomial> {
        let mut v = vec![self.zero_poly(); self.dim()];
        for (i, f) in x.0.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (a, r) in self.anchor[i].iter().enumerate() {
                if !r.is_zero() {
                    v[a] += &(f * r);
                }
            }
        }
        v
    }

    pub fn section_apply(&self, x: &Section, f: &Polynomial) -> Polynomial {
        f.derive_along(&self.anchor_of(x))
    }

    pub fn frame_index(&self, name: &str) -> Option<usize> {
        self.frame.iter().position(|f| f == name)
    }

    /// Marks as validated without checking. Reserved for constructions whose
    /// output is valid by a proof checked elsewhere in the crate.
    pub(crate) fn trusted(mut self) -> Self {
        self.validated = true;
        self
    }

    pub(crate) fn with_frame_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.rank());
        self.frame = names;
        self
    }

    /// True when the two algebroids have the same anchor and structure
    /// functions, ignoring frame names.
    pub fn same_structure(&self, o: &LieAlgebroid) -> bool {
        self.coords[..] == o.coords[..] && self.anchor == o.anchor && self.structure == o.structure
    }
}

/// `[X, Y] = sum f^i g^j c_ij^k e_k + sum f^i rho(e_i)(g^k) e_k - sum g^j rho(e_j)(f^k) e_k`.
pub fn bracket_sections(a: &LieAlgebroid, x: &Section, y: &Section) -> Result<Section> {
    let r = a.rank();
    if x.0.len() != r || y.0.len() != r {
        return Err(Error::Shape(format!("sections must have {r} coefficients")));
    }
    let mut out = vec![a.zero_poly(); r];
    for i in 0..r {
        if x.0[i].is_zero() {
            continue;
        }
        for j in 0..r {
            if y.0[j].is_zero() || i == j {
                continue;
            }
            let c = a.c(i, j);
            if c.iter().all(Polynomial::is_zero) {
                continue;
            }
            let fg = &x.0[i] * &y.0[j];
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    out[k] += &(&fg * ck);
                }
            }
        }
    }
    let rx = a.anchor_of(x);
    let ry = a.anchor_of(y);
    for k in 0..r {
        out[k] += &y.0[k].derive_along(&rx);
        out[k] -= &x.0[k].derive_along(&ry);
    }
    Ok(Section(out))
}

fn fmt_vec(a: &LieAlgebroid, v: &[Polynomial]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("({})*{}", p, a.frame[k]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Checks the Jacobi identity on frame triples and that the anchor is a
/// bracket morphism.
pub fn validate_algebroid(a: &LieAlgebroid) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let r = a.rank();
    let n = a.dim();
    let e: Vec<Section> = (0..r).map(|i| a.frame_section(i)).collect();
    let br = |x: &Section, y: &Section| bracket_sections(a, x, y).expect("frame sections");
    for i in 0..r {
        for j in (i + 1)..r {
            for k in (j + 1)..r {
                let t1 = br(&e[i], &br(&e[j], &e[k]));
                let t2 = br(&e[j], &br(&e[k], &e[i]));
                let t3 = br(&e[k], &br(&e[i], &e[j]));
                let s = t1.add(&t2).add(&t3);
                if !s.is_zero() {
                    rep.push(format!(
                        "jacobi({},{},{}) = {}",
                        a.frame[i],
                        a.frame[j],
                        a.frame[k],
                        fmt_vec(a, &s.0)
                    ));
                }
            }
        }
    }
    for i in 0..r {
        for j in (i + 1)..r {
            let lhs = a.anchor_of(&Section(a.c(i, j).to_vec()));
            for b in 0..n {
                let comm = &a.anchor_apply(i, &a.anchor[j][b]) - &a.anchor_apply(j, &a.anchor[i][b]);
                if lhs[b] != comm {
                    rep.push(format!(
                        "anchor({i},{j}) component {x}: rho([{i},{j}]) = {} but [rho({i}),rho({j})] = {}",
                        lhs[b],
                        comm,
                        i = a.frame[i],
                        j = a.frame[j],
                        x = a.coords[b],
                    ));
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    coords: Coords,
    rank: usize,
    field: Field,
    connection: Vec<CMatrix>,
    validated: bool,
}

impl Representation {
    /// One `m x m` connection matrix per frame element of `a`.
    pub fn new(a: &LieAlgebroid, field: Field, connection: Vec<CMatrix>) -> Result<Self> {
        if connection.len() != a.rank() {
            return Err(Error::Shape(format!(
                "{} connection matrices for rank {}",
                connection.len(),
                a.rank()
            )));
        }
        let m = connection.first().map_or(0, CMatrix::rows);
        if connection.iter().any(|w| w.rows() != m || w.cols() != m) {
            return Err(Error::Shape("connection matrices must be square of equal size".into()));
        }
        if field == Field::Real && connection.iter().any(|w| !w.is_real()) {
            return Err(Error::Invalid("real representation with imaginary entries".into()));
        }
        let connection = connection.iter().map(|w| w.with_coords(a.coords())).collect();
        Ok(Representation {
            coords: a.coords().clone(),
            rank: m,
            field,
            connection,
            validated: false,
        })
    }

    pub fn real(a: &LieAlgebroid, connection: Vec<PolyMatrix>) -> Result<Self> {
        Self::new(a, Field::Real, connection.into_iter().map(CMatrix::real).collect())
    }

    /// The trivial rank-`m` bundle with zero connection.
    pub fn trivial(a: &LieAlgebroid, m: usize) -> Self {
        Representation {
            coords: a.coords().clone(),
            rank: m,
            field: Field::Real,
            connection: vec![CMatrix::zeros(a.coords(), m, m); a.rank()],
            validated: a.is_validated(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn omega(&self, i: usize) -> &CMatrix {
        &self.connection[i]
    }

    pub fn connection(&self) -> &[CMatrix] {
        &self.connection
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated("representation".into()))
        }
    }

    pub fn validated(mut self, a: &LieAlgebroid) -> std::result::Result<Self, ValidationReport> {
        let rep = validate_representation(a, &self);
        if rep.is_valid() {
            self.validated = true;
            Ok(self)
        } else {
            Err(rep)
        }
    }

    pub(crate) fn trusted(mut self) -> Self {
        self.validated = true;
        self
    }

    fn check_algebroid(&self, a: &LieAlgebroid) -> Result<()> {
        if self.connection.len() != a.rank() || self.coords[..] != a.coords()[..] {
            return Err(Error::Shape("representation belongs to another algebroid".into()));
        }
        Ok(())
    }

    /// Real connection matrices; complex representations must be realified first.
    pub fn real_omega(&self, i: usize) -> Result<&PolyMatrix> {
        if self.field == Field::Complex {
            return Err(Error::Unsupported(
                "complex coefficients here; use Representation::realify".into(),
            ));
        }
        Ok(&self.connection[i].re)
    }

    /// `L_{e_i}(s) = rho(e_i)(s) + omega_i s` on a real coefficient column.
    pub fn act(&self, a: &LieAlgebroid, i: usize, s: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let w = self.real_omega(i)?;
        let mut out = w.mul_vec(s);
        for (o, si) in out.iter_mut().zip(s) {
            *o += &a.anchor_apply(i, si);
        }
        Ok(out)
    }

    /// Curvature `R_ij`.
    pub fn curvature(&self, a: &LieAlgebroid, i: usize, j: usize) -> CMatrix {
        curvature(a, &self.connection, i, j)
    }

    /// Complex rank-`m` representation as a real rank-`2m` one.
    pub fn realify(&self) -> Representation {
        if self.field == Field::Real {
            return self.clone();
        }
        Representation {
            coords: self.coords.clone(),
            rank: 2 * self.rank,
            field: Field::Real,
            connection: self
                .connection
                .iter()
                .map(|w| CMatrix::real(w.realify()))
                .collect(),
            validated: self.validated,
        }
    }
}

/// `R_ij = rho_i(G_j) - rho_j(G_i) + [G_i, G_j] - sum_k c_ij^k G_k` for any
/// family of connection matrices.
pub fn curvature(a: &LieAlgebroid, g: &[CMatrix], i: usize, j: usize) -> CMatrix {
    let mut r = g[j]
        .derive_along(a.anchor(i))
        .sub(&g[i].derive_along(a.anchor(j)))
        .add(&g[i].commutator(&g[j]));
    for (k, ck) in a.c(i, j).iter().enumerate() {
        if !ck.is_zero() {
            r = r.sub(&g[k].scale_poly(ck));
        }
    }
    r
}

pub fn validate_representation(a: &LieAlgebroid, e: &Representation) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if let Err(err) = e.check_algebroid(a) {
        rep.push(err.to_string());
        return rep;
    }
    for i in 0..a.rank() {
        for j in (i + 1)..a.rank() {
            let r = e.curvature(a, i, j);
            if !r.is_zero() {
                rep.push(format!(
                    "curvature({},{}) = {:?}{}",
                    a.frame()[i],
                    a.frame()[j],
                    r.re,
                    if r.im.is_zero() { String::new() } else { format!(" + i*{:?}", r.im) }
                ));
            }
        }
    }
    rep
}

fn require_both(e: &Representation, f: &Representation) -> Result<()> {
    e.require_validated()?;
    f.require_validated()?;
    if e.connection.len() != f.connection.len() || e.coords[..] != f.coords[..] {
        return Err(Error::Shape("representations of different algebroids".into()));
    }
    Ok(())
}

/// `omega*_i = -omega_i^T`, or the negated conjugate transpose in the complex case.
pub fn dual_representation(e: &Representation) -> Result<Representation> {
    e.require_validated()?;
    let connection = e
        .connection
        .iter()
        .map(|w| match e.field {
            Field::Real => w.transpose().neg(),
            Field::Complex => w.conj_transpose().neg(),
        })
        .collect();
    Ok(Representation {
        connection,
        ..e.clone()
    })
}

fn joint_field(e: &Representation, f: &Representation) -> Field {
    if e.field == Field::Complex || f.field == Field::Complex {
        Field::Complex
    } else {
        Field::Real
    }
}

pub fn direct_sum(e: &Representation, f: &Representation) -> Result<Representation> {
    require_both(e, f)?;
    Ok(Representation {
        coords: e.coords.clone(),
        rank: e.rank + f.rank,
        field: joint_field(e, f),
        connection: e
            .connection
            .iter()
            .zip(&f.connection)
            .map(|(a, b)| CMatrix::block_diag(a, b))
            .collect(),
        validated: true,
    })
}

/// Connection `omega_E (x) I + I (x) omega_F`; basis index `a * rank(F) + b`.
pub fn tensor_product(e: &Representation, f: &Representation) -> Result<Representation> {
    require_both(e, f)?;
    let ie = CMatrix::identity(&e.coords, e.rank);
    let iff = CMatrix::identity(&e.coords, f.rank);
    Ok(Representation {
        coords: e.coords.clone(),
        rank: e.rank * f.rank,
        field: joint_field(e, f),
        connection: e
            .connection
            .iter()
            .zip(&f.connection)
            .map(|(a, b)| CMatrix::kron(a, &iff).add(&CMatrix::kron(&ie, b)))
            .collect(),
        validated: true,
    })
}

fn fresh_names(taken: &[String], stem: &str, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1usize;
    while out.len() < count {
        let name = format!("{stem}{k}");
        if !taken.contains(&name) {
            out.push(name);
        }
        k += 1;
    }
    out
}

/// Twisted semidirect product `A x_tau E` on the frame `(e_1..e_r, f_1..f_m)`.
/// The result is not validated; it validates exactly when `tau` is closed.
pub fn semidirect_product(
    a: &LieAlgebroid,
    e: &Representation,
    tau: &crate::cochain::Cochain,
) -> Result<LieAlgebroid> {
    a.require_validated()?;
    e.require_validated()?;
    let r = a.rank();
    let m = e.rank();
    if tau.degree() != 2 || tau.dim() != m || tau.rank() != r {
        return Err(Error::Shape("tau must be a 2-cochain with values in E".into()));
    }
    let zero = a.zero_poly();
    let mut taken: Vec<String> = a.frame().to_vec();
    taken.extend(a.coords().iter().cloned());
    let mut frame = a.frame().to_vec();
    frame.extend(fresh_names(&taken, "f", m));
    let mut anchor: Vec<Vec<Polynomial>> = (0..r).map(|i| a.anchor(i).to_vec()).collect();
    anchor.extend((0..m).map(|_| vec![zero.clone(); a.dim()]));
    let mut brackets = BTreeMap::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let mut v = a.c(i, j).to_vec();
            v.extend(tau.eval_frame(&[i, j]));
            brackets.insert((i, j), v);
        }
        let w = e.real_omega(i)?;
        for col in 0..m {
            let mut v = vec![zero.clone(); r + m];
            for row in 0..m {
                v[r + row] = w.get(row, col).clone();
            }
            brackets.insert((i, r + col), v);
        }
    }
    LieAlgebroid::new(a.coords(), frame, anchor, brackets)
}

/// Re-expresses `a` in the frame `new_i = sum_j p[i][j] e_j`. The determinant
/// of `p` must be a nonzero constant so the inverse stays polynomial.
pub fn change_frame(a: &LieAlgebroid, p: &PolyMatrix) -> Result<LieAlgebroid> {
    let r = a.rank();
    if p.rows() != r || p.cols() != r {
        return Err(Error::Shape(format!("frame change must be {r}x{r}")));
    }
    let p = p.with_coords(a.coords());
    let det = p
        .det()
        .as_constant()
        .filter(|d| !num_traits::Zero::is_zero(d))
        .ok_or_else(|| Error::Invalid("frame change determinant is not a nonzero constant".into()))?;
    let inv = p.adjugate().scale(&(crate::poly::rat(1) / det));
    let rows: Vec<Section> = (0..r)
        .map(|i| Section((0..r).map(|j| p.get(i, j).clone()).collect()))
        .collect();
    let to_new = |v: &Section| -> Vec<Polynomial> {
        (0..r)
            .map(|k| {
                let mut s = a.zero_poly();
                for (j, vj) in v.0.iter().enumerate() {
                    if !vj.is_zero() {
                        s += &(vj * inv.get(j, k));
                    }
                }
                s
            })
            .collect()
    };
    let anchor = rows.iter().map(|x| a.anchor_of(x)).collect();
    let mut brackets = BTreeMap::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let b = bracket_sections(a, &rows[i], &rows[j])?;
            brackets.insert((i, j), to_new(&b));
        }
    }
    let out = LieAlgebroid::new(a.coords(), a.frame().to_vec(), anchor, brackets)?;
    Ok(if a.is_validated() { out.trusted() } else { out })
}

/// Output of [`extension_class`].
#[derive(Debug, Clone)]
pub struct Extension {
    pub quotient: LieAlgebroid,
    pub action: Representation,
    pub tau: crate::cochain::Cochain,
    /// Frame of `H` adapted to the splitting: `sigma(quotient frame)`, then the ideal.
    pub adapted_frame: PolyMatrix,
}

/// Decomposes `h` along an abelian ideal with zero anchor. `splitting` has one
/// row per complement frame element: `sigma(e_c) = e_c + sum_a splitting[c][a] f_a`.
///
/// The cocycle is `tau(X, Y) = [sigma X, sigma Y] - sigma([X, Y])`, so that
/// the semidirect product rebuilds `h` in the adapted frame.
pub fn extension_class(h: &LieAlgebroid, ideal: &[usize], splitting: &PolyMatrix) -> Result<Extension> {
    h.require_validated()?;
    let r = h.rank();
    let mut ideal_sorted = ideal.to_vec();
    ideal_sorted.sort_unstable();
    ideal_sorted.dedup();
    if ideal_sorted.len() != ideal.len() || ideal_sorted.iter().any(|&a| a >= r) {
        return Err(Error::Invalid("ideal indices out of range or repeated".into()));
    }
    let ideal = ideal_sorted;
    let comp: Vec<usize> = (0..r).filter(|i| !ideal.contains(i)).collect();
    let (q, m) = (comp.len(), ideal.len());
    if splitting.rows() != q || splitting.cols() != m {
        return Err(Error::Shape(format!("splitting must be {q}x{m}")));
    }
    let splitting = splitting.with_coords(h.coords());
    for &a in &ideal {
        if h.anchor(a).iter().any(|p| !p.is_zero()) {
            return Err(Error::Invalid(format!("anchor of {} is nonzero", h.frame()[a])));
        }
        for &b in &ideal {
            if h.c(a, b).iter().any(|p| !p.is_zero()) {
                return Err(Error::Invalid(format!(
                    "ideal is not abelian: [{}, {}] != 0",
                    h.frame()[a],
                    h.frame()[b]
                )));
            }
        }
        for i in 0..r {
            if comp.iter().any(|&k| !h.c(i, a)[k].is_zero()) {
                return Err(Error::Invalid(format!(
                    "not an ideal: [{}, {}] leaves the subset",
                    h.frame()[i],
                    h.frame()[a]
                )));
            }
        }
    }
    let zero = h.zero_poly();
    let sigma: Vec<Section> = (0..q)
        .map(|ci| {
            let mut v = vec![zero.clone(); r];
            v[comp[ci]] = Polynomial::one(h.coords());
            for (ai, &a) in ideal.iter().enumerate() {
                v[a] = splitting.get(ci, ai).clone();
            }
            Section(v)
        })
        .collect();
    let mut brackets = BTreeMap::new();
    let mut tau = crate::cochain::Cochain::zero(h.coords(), q, 2, m);
    for i in 0..q {
        for j in (i + 1)..q {
            let b = bracket_sections(h, &sigma[i], &sigma[j])?;
            let qpart: Vec<Polynomial> = comp.iter().map(|&k| b.0[k].clone()).collect();
            let mut ipart: Vec<Polynomial> = ideal.iter().map(|&a| b.0[a].clone()).collect();
            for (k, qk) in qpart.iter().enumerate() {
                if qk.is_zero() {
                    continue;
                }
                for (ai, v) in ipart.iter_mut().enumerate() {
                    *v -= &(qk * splitting.get(k, ai));
                }
            }
            brackets.insert((i, j), qpart);
            tau.set(vec![i, j], ipart);
        }
    }
    let quotient = LieAlgebroid::new(
        h.coords(),
        comp.iter().map(|&k| h.frame()[k].clone()).collect(),
        comp.iter().map(|&k| h.anchor(k).to_vec()).collect(),
        brackets,
    )?
    .trusted();
    let connection = comp
        .iter()
        .map(|&c| {
            let mut w = PolyMatrix::zeros(h.coords(), m, m);
            for (col, &a) in ideal.iter().enumerate() {
                for (row, &b) in ideal.iter().enumerate() {
                    w.set(row, col, h.c(c, a)[b].clone());
                }
            }
            w
        })
        .collect();
    let action = Representation::real(&quotient, connection)?.trusted();
    let mut adapted = PolyMatrix::zeros(h.coords(), r, r);
    for (i, s) in sigma.iter().enumerate() {
        for (j, v) in s.0.iter().enumerate() {
            adapted.set(i, j, v.clone());
        }
    }
    for (ai, &a) in ideal.iter().enumerate() {
        adapted.set(q + ai, a, Polynomial::one(h.coords()));
    }
    Ok(Extension {
        quotient,
        action,
        tau,
        adapted_frame: adapted,
    })
}

/// Pull-back along the projection `chart x R^k -> chart`.
pub fn pullback_algebroid(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    a.require_validated()?;
    let mut taken: Vec<String> = a.coords().to_vec();
    taken.extend(a.frame().iter().cloned());
    let fiber = fresh_names(&taken, "u", k);
    let mut names = a.coords().to_vec();
    names.extend(fiber.iter().cloned());
    let coords = make_coords(&names)?;
    let r = a.rank();
    let n = a.dim();
    let zero = Polynomial::zero(&coords);
    let lift = |p: &Polynomial| p.with_coords(&coords).expect("product chart");
    let mut anchor = Vec::with_capacity(r + k);
    for i in 0..r {
        let mut row: Vec<Polynomial> = a.anchor(i).iter().map(lift).collect();
        row.extend((0..k).map(|_| zero.clone()));
        anchor.push(row);
    }
    for b in 0..k {
        let mut row = vec![zero.clone(); n + k];
        row[n + b] = Polynomial::one(&coords);
        anchor.push(row);
    }
    let mut brackets = BTreeMap::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let mut v: Vec<Polynomial> = a.c(i, j).iter().map(lift).collect();
            v.extend((0..k).map(|_| zero.clone()));
            brackets.insert((i, j), v);
        }
    }
    let mut taken2: Vec<String> = names.clone();
    taken2.extend(a.frame().iter().cloned());
    let mut frame = a.frame().to_vec();
    frame.extend(fresh_names(&taken2, "v", k));
    LieAlgebroid::new(&coords, frame, anchor, brackets)
}

/// Restriction to a bracket-closed frame subset.
pub fn restrict(a: &LieAlgebroid, sub: &[usize]) -> Result<LieAlgebroid> {
    for (x, &s) in sub.iter().enumerate() {
        if s >= a.rank() || sub[..x].contains(&s) {
            return Err(Error::Invalid("frame subset out of range or repeated".into()));
        }
        for &t in sub {
            if let Some(k) = (0..a.rank()).find(|k| !sub.contains(k) && !a.c(s, t)[*k].is_zero()) {
                return Err(Error::Invalid(format!(
                    "subset not closed: [{}, {}] has a {} component",
                    a.frame()[s],
                    a.frame()[t],
                    a.frame()[k]
                )));
            }
        }
    }
    let mut brackets = BTreeMap::new();
    for (x, &s) in sub.iter().enumerate() {
        for (y, &t) in sub.iter().enumerate().skip(x + 1) {
            brackets.insert((x, y), sub.iter().map(|&k| a.c(s, t)[k].clone()).collect());
        }
    }
    let out = LieAlgebroid::new(
        a.coords(),
        sub.iter().map(|&s| a.frame()[s].clone()).collect(),
        sub.iter().map(|&s| a.anchor(s).to_vec()).collect(),
        brackets,
    )?;
    Ok(if a.is_validated() { out.trusted() } else { out })
}

/// Bott representation of the sub-algebroid on `span(complement)`:
/// `(omega_s)_{k'k} = c_{s,k}^{k'}`.
pub fn bott_quotient(a: &LieAlgebroid, sub: &[usize]) -> Result<(LieAlgebroid, Representation)> {
    a.require_validated()?;
    let subalg = restrict(a, sub)?;
    let comp: Vec<usize> = (0..a.rank()).filter(|k| !sub.contains(k)).collect();
    let m = comp.len();
    let connection = sub
        .iter()
        .map(|&s| {
            let mut w = PolyMatrix::zeros(a.coords(), m, m);
            for (col, &k) in comp.iter().enumerate() {
                for (row, &kp) in comp.iter().enumerate() {
                    w.set(row, col, a.c(s, k)[kp].clone());
                }
            }
            w
        })
        .collect();
    let rep = Representation::real(&subalg, connection)?
        .validated(&subalg)
        .map_err(|r| Error::Invalid(format!("Bott connection is not flat: {r}")))?;
    Ok((subalg, rep))
}

/// `omega_Q(e_i) = sum_k c_ik^k + div rho(e_i)`.
pub fn canonical_line_bundle(a: &LieAlgebroid) -> Result<Representation> {
    a.require_validated()?;
    let connection = (0..a.rank())
        .map(|i| {
            let mut s = a.zero_poly();
            for k in 0..a.rank() {
                s += &a.c(i, k)[k];
            }
            for (b, v) in a.anchor(i).iter().enumerate() {
                s += &v.partial_index(b);
            }
            PolyMatrix::from_rows(a.coords(), vec![vec![s]])
        })
        .collect();
    Representation::real(a, connection)?
        .validated(a)
        .map_err(|r| Error::Invalid(format!("canonical line bundle is not flat (sign convention): {r}")))
}

/// Symmetric (real) or Hermitian (complex) metric on a representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    h: CMatrix,
}

impl Metric {
    pub fn identity(e: &Representation) -> Self {
        Metric {
            h: CMatrix::identity(&e.coords, e.rank),
        }
    }

    pub fn real(e: &Representation, h: PolyMatrix) -> Result<Self> {
        Self::new(e, CMatrix::real(h))
    }

    /// Checks symmetry, a determinant that is not identically zero, and
    /// positive definiteness at the chart origin.
    pub fn new(e: &Representation, h: CMatrix) -> Result<Self> {
        let m = e.rank;
        if h.rows() != m || h.cols() != m {
            return Err(Error::Shape(format!("metric must be {m}x{m}")));
        }
        let h = h.with_coords(&e.coords);
        if e.field == Field::Real && !h.is_real() {
            return Err(Error::Invalid("complex metric on a real representation".into()));
        }
        if h != h.conj_transpose() {
            return Err(Error::Invalid("metric is not symmetric".into()));
        }
        let real = h.realify();
        if real.det().is_zero() {
            return Err(Error::Invalid("metric determinant vanishes identically".into()));
        }
        let origin = vec![num_traits::Zero::zero(); e.coords.len()];
        let at0 = real.eval(&origin);
        for k in 1..=at0.len() {
            if leading_minor(&at0, k) <= num_traits::Zero::zero() {
                return Err(Error::Invalid("metric is not positive definite at the origin".into()));
            }
        }
        Ok(Metric { h })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.h
    }

    /// Metric on the dual bundle in the dual frame: the adjugate of `h`
    /// transposed, which is `det(h) * h^-1`; for constant `h` it is rescaled
    /// to the exact inverse.
    pub fn dual(&self, dual_rep: &Representation) -> Result<Metric> {
        let real = self.h.realify();
        let det = real.det();
        if let Some(d) = det.as_constant() {
            let m = self.h.rows();
            if self.h.is_real() {
                let inv = self.h.re.adjugate().scale(&(crate::poly::rat(1) / d));
                return Metric::real(dual_rep, inv.transpose());
            }
            let inv = real.adjugate().scale(&(crate::poly::rat(1) / d));
            let mut re = PolyMatrix::zeros(self.h.re.coords(), m, m);
            let mut im = PolyMatrix::zeros(self.h.re.coords(), m, m);
            for i in 0..m {
                for j in 0..m {
                    re.set(i, j, inv.get(i, j).clone());
                    im.set(i, j, inv.get(m + i, j).clone());
                }
            }
            return Metric::new(dual_rep, CMatrix { re, im }.transpose());
        }
        Err(Error::Unsupported("dual of a metric with non-constant determinant".into()))
    }
}

fn leading_minor(m: &[Vec<crate::poly::Rational>], k: usize) -> crate::poly::Rational {
    let mut a: Vec<Vec<crate::poly::Rational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut det: crate::poly::Rational = num_traits::One::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !num_traits::Zero::is_zero(&a[r][c])) else {
            return num_traits::Zero::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in (c + 1)..k {
            let f = &a[r][c] / &piv;
            for cc in c..k {
                let t = &a[c][cc] * &f;
                a[r][cc] -= t;
            }
        }
    }
    det
}

/// `theta_i = (omega_i - omega_i^h) / 2` with
/// `omega_i^h = h^-1 (-omega_i^* h + rho(e_i)(h))`, cleared of denominators:
/// returns `(det(h) * theta_i, det(h))`.
pub(crate) fn metric_theta(a: &LieAlgebroid, e: &Representation, metric: &Metric) -> (Vec<CMatrix>, Polynomial) {
    let h = metric.matrix();
    let (adj, det) = if h.is_real() {
        (CMatrix::real(h.re.adjugate()), h.re.det())
    } else {
        complex_adjugate(h)
    };
    let thetas = (0..a.rank())
        .map(|i| {
            let w = e.omega(i);
            let star = match e.field {
                Field::Real => w.transpose(),
                Field::Complex => w.conj_transpose(),
            };
            let inner = h.derive_along(a.anchor(i)).sub(&star.mul(h));
            let wh = adj.mul(&inner);
            w.scale_poly(&det).sub(&wh).scale(&half())
        })
        .collect();
    (thetas, det)
}

/// Adjugate and determinant of a Hermitian matrix whose determinant is real.
fn complex_adjugate(h: &CMatrix) -> (CMatrix, Polynomial) {
    let m = h.rows();
    let real = h.realify();
    let d2 = real.det();
    // det of a Hermitian matrix is real; recover it via cofactor expansion over C.
    let det = complex_det(h);
    debug_assert_eq!(&det.0 * &det.0, d2);
    let mut re = PolyMatrix::zeros(h.re.coords(), m, m);
    let mut im = PolyMatrix::zeros(h.re.coords(), m, m);
    for i in 0..m {
        for j in 0..m {
            let (cr, ci) = complex_det(&complex_minor(h, j, i));
            let sign = (i + j) % 2 == 0;
            re.set(i, j, if sign { cr } else { -cr });
            im.set(i, j, if sign { ci } else { -ci });
        }
    }
    (CMatrix { re, im }, det.0)
}

fn complex_minor(h: &CMatrix, skip_r: usize, skip_c: usize) -> CMatrix {
    let m = h.rows();
    let coords = h.re.coords();
    let mut re = PolyMatrix::zeros(coords, m - 1, m - 1);
    let mut im = PolyMatrix::zeros(coords, m - 1, m - 1);
    for (ri, i) in (0..m).filter(|&i| i != skip_r).enumerate() {
        for (ci, j) in (0..m).filter(|&j| j != skip_c).enumerate() {
            re.set(ri, ci, h.re.get(i, j).clone());
            im.set(ri, ci, h.im.get(i, j).clone());
        }
    }
    CMatrix { re, im }
}

fn complex_det(h: &CMatrix) -> (Polynomial, Polynomial) {
    let m = h.rows();
    let coords = h.re.coords();
    if m == 0 {
        return (Polynomial::one(coords), Polynomial::zero(coords));
    }
    if m == 1 {
        return (h.re.get(0, 0).clone(), h.im.get(0, 0).clone());
    }
    let mut re = Polynomial::zero(coords);
    let mut im = Polynomial::zero(coords);
    for j in 0..m {
        let (ar, ai) = (h.re.get(0, j), h.im.get(0, j));
        if ar.is_zero() && ai.is_zero() {
            continue;
        }
        let (mr, mi) = complex_det(&complex_minor(h, 0, j));
        let tr = &(ar * &mr) - &(ai * &mi);
        let ti = &(ar * &mi) + &(ai * &mr);
        if j % 2 == 0 {
            re += &tr;
            im += &ti;
        } else {
            re -= &tr;
            im -= &ti;
        }
    }
    (re, im)
}

//! Chart presentations of Lie groupoids, differentiable groupoid cochains
//! and the Van Est map.
//!
//! Pair groupoid: an arrow `(x, y)` goes from `y` to `x`; a string
//! `(g_1, ..., g_p)` is the point tuple `(x_0, ..., x_p)` with
//! `g_i = (x_{i-1}, x_i)`. Action groupoid of `R^k` on `M`: an arrow `(v, x)`
//! goes from `x` to `a(v, x)`; a string is `(v_1, ..., v_p, x)` with `x` the
//! source of `g_p`. In both cases the chart of degree 0 is the base itself.

use std::collections::BTreeMap;

use perm::permutations;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebroid::{LieAlgebroid, Section};
use crate::cochain::{differential, subsets, Cochain};
use crate::error::{Error, Result};
use crate::jet::{directional_jet, JetSubstitution};
use crate::poly::{coords, monomials_up_to, rat, Coords, Polynomial};

#[derive(Debug, Clone, PartialEq)]
enum Family {
    Pair,
    /// `action` lives on `group ++ base` coordinates.
    Action { group: Coords, action: Vec<Polynomial> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidChart {
    base: Coords,
    family: Family,
}

fn vars(c: &Coords) -> Vec<Polynomial> {
    (0..c.len()).map(|i| Polynomial::var_index(c, i)).collect()
}

fn compose_all(ps: &[Polynomial], subs: &[Polynomial]) -> Vec<Polynomial> {
    ps.iter().map(|p| p.compose(subs)).collect()
}

impl GroupoidChart {
    /// Pair groupoid `M x M` over `R^n` with the given coordinate names.
    pub fn pair(base: &[&str]) -> Result<Self> {
        let g = GroupoidChart {
            base: coords(base)?,
            family: Family::Pair,
        };
        g.check_axioms()?;
        Ok(g)
    }

    /// Action groupoid of the abelian group `R^k` acting by the polynomial
    /// map `a(v, x)`, given on the coordinates `group ++ base`.
    pub fn action(group: &[&str], base: &[&str], action: &[&str]) -> Result<Self> {
        let b = coords(base)?;
        let gc = coords(group)?;
        let all: Vec<&str> = group.iter().chain(base).copied().collect();
        let ac = coords(&all)?;
        if action.len() != b.len() {
            return Err(Error::Shape(format!("action needs {} components", b.len())));
        }
        let action = action
            .iter()
            .map(|s| Polynomial::parse(s, &ac))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::action_from(gc, b, action)
    }

    pub fn action_from(group: Coords, base: Coords, action: Vec<Polynomial>) -> Result<Self> {
        let all: Vec<String> = group.iter().chain(base.iter()).cloned().collect();
        let ac = coords(&all)?;
        let action = action
            .iter()
            .map(|p| p.with_coords(&ac))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let g = GroupoidChart {
            base,
            family: Family::Action { group, action },
        };
        g.check_axioms()?;
        Ok(g)
    }

    pub fn base(&self) -> &Coords {
        &self.base
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Pair => "pair",
            Family::Action { .. } => "action",
        }
    }

    /// Rank of the associated algebroid.
    pub fn rank(&self) -> usize {
        match &self.family {
            Family::Pair => self.base.len(),
            Family::Action { group, .. } => group.len(),
        }
    }

    /// Coordinates of the space of `p`-composable strings.
    pub fn nerve_coords(&self, p: usize) -> Coords {
        if p == 0 {
            return self.base.clone();
        }
        let names: Vec<String> = match &self.family {
            Family::Pair => (0..=p)
                .flat_map(|i| self.base.iter().map(move |b| format!("{b}_{i}")))
                .collect(),
            Family::Action { group, .. } => (1..=p)
                .flat_map(|i| group.iter().map(move |g| format!("{g}_{i}")))
                .chain(self.base.iter().cloned())
                .collect(),
        };
        coords(&names).expect("nerve coordinate names are distinct")
    }

    /// Block `i` of the chart variables: point `x_i` (pair) or `v_i` (action, 1-based).
    fn block(&self, vs: &[Polynomial], i: usize) -> Vec<Polynomial> {
        let w = self.rank();
        match self.family {
            Family::Pair => vs[i * w..(i + 1) * w].to_vec(),
            Family::Action { .. } => vs[(i - 1) * w..i * w].to_vec(),
        }
    }

    /// Base part of an action chart.
    fn tail(&self, vs: &[Polynomial]) -> Vec<Polynomial> {
        vs[vs.len() - self.base.len()..].to_vec()
    }

    fn act(&self, v: &[Polynomial], x: &[Polynomial]) -> Vec<Polynomial> {
        match &self.family {
            Family::Pair => unreachable!("pair groupoid has no action"),
            Family::Action { action, .. } => {
                let subs: Vec<Polynomial> = v.iter().chain(x).cloned().collect();
                compose_all(action, &subs)
            }
        }
    }

    fn group_sum(&self, vs: &[Polynomial], from: usize, to: usize, c: &Coords) -> Vec<Polynomial> {
        let mut s = vec![Polynomial::zero(c); self.rank()];
        for i in from..=to {
            for (acc, x) in s.iter_mut().zip(self.block(vs, i)) {
                *acc += &x;
            }
        }
        s
    }

    /// Face map `d_i: G^(q) -> G^(q-1)` as substitutions over the chart of degree `q`.
    pub fn face(&self, q: usize, i: usize) -> Vec<Polynomial> {
        assert!(q >= 1 && i <= q, "face index");
        let c = self.nerve_coords(q);
        let vs = vars(&c);
        match self.family {
            Family::Pair => (0..=q).filter(|&k| k != i).flat_map(|k| self.block(&vs, k)).collect(),
            Family::Action { .. } => {
                let x = self.tail(&vs);
                let mut out = Vec::new();
                if i == 0 {
                    for k in 2..=q {
                        out.extend(self.block(&vs, k));
                    }
                    out.extend(x);
                } else if i < q {
                    for k in 1..=q {
                        if k == i {
                            out.extend(self.group_sum(&vs, i, i + 1, &c));
                        } else if k != i + 1 {
                            out.extend(self.block(&vs, k));
                        }
                    }
                    out.extend(x);
                } else {
                    for k in 1..q {
                        out.extend(self.block(&vs, k));
                    }
                    out.extend(self.act(&self.block(&vs, q), &x));
                }
                out
            }
        }
    }

    /// The leading `p` arrows of a string of length `q`.
    fn front(&self, q: usize, p: usize) -> Vec<Polynomial> {
        let c = self.nerve_coords(q);
        let vs = vars(&c);
        match self.family {
            Family::Pair => (0..=p).flat_map(|k| self.block(&vs, k)).collect(),
            Family::Action { .. } => {
                let mut out: Vec<Polynomial> = (1..=p).flat_map(|k| self.block(&vs, k)).collect();
                let x = self.tail(&vs);
                out.extend(if p < q { self.act(&self.group_sum(&vs, p + 1, q, &c), &x) } else { x });
                out
            }
        }
    }

    /// The trailing `r` arrows of a string of length `q`.
    fn back(&self, q: usize, r: usize) -> Vec<Polynomial> {
        let c = self.nerve_coords(q);
        let vs = vars(&c);
        match self.family {
            Family::Pair => (q - r..=q).flat_map(|k| self.block(&vs, k)).collect(),
            Family::Action { .. } => {
                let mut out: Vec<Polynomial> = (q - r + 1..=q).flat_map(|k| self.block(&vs, k)).collect();
                out.extend(self.tail(&vs));
                out
            }
        }
    }

    /// Target `beta` of the first arrow of a string of length `p`, or the point itself for `p = 0`.
    fn head(&self, p: usize) -> Vec<Polynomial> {
        let c = self.nerve_coords(p);
        let vs = vars(&c);
        match self.family {
            Family::Pair => self.block(&vs, 0),
            Family::Action { .. } => {
                let x = self.tail(&vs);
                if p == 0 {
                    x
                } else {
                    self.act(&self.group_sum(&vs, 1, p, &c), &x)
                }
            }
        }
    }

    /// Simplicial identities `d_i d_j = d_{j-1} d_i` up to degree 3 and, for
    /// actions, `a(0, x) = x` and `a(v, a(w, x)) = a(v + w, x)`.
    fn check_axioms(&self) -> Result<()> {
        if let Family::Action { group, action } = &self.family {
            let bv = vars(&self.base);
            let mut subs: Vec<Polynomial> = vec![Polynomial::zero(&self.base); group.len()];
            subs.extend(bv.clone());
            if compose_all(action, &subs) != bv {
                return Err(Error::Invalid("action: a(0, x) != x".into()));
            }
            let c = self.nerve_coords(2);
            let vs = vars(&c);
            let x = self.tail(&vs);
            let lhs = self.act(&self.block(&vs, 1), &self.act(&self.block(&vs, 2), &x));
            let rhs = self.act(&self.group_sum(&vs, 1, 2, &c), &x);
            if lhs != rhs {
                return Err(Error::Invalid("action: a(v, a(w, x)) != a(v + w, x)".into()));
            }
        }
        for q in 2..=3 {
            for j in 1..=q {
                for i in 0..j {
                    let l = compose_all(&self.face(q - 1, i), &self.face(q, j));
                    let r = compose_all(&self.face(q - 1, j - 1), &self.face(q, i));
                    if l != r {
                        return Err(Error::Invalid(format!("simplicial identity d{i} d{j} fails in degree {q}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The algebroid of the groupoid: `TM` for the pair groupoid, the action
/// algebroid with anchor `d/dv a(v, x)|_{v=0}` otherwise.
pub fn groupoid_algebroid(g: &GroupoidChart) -> Result<LieAlgebroid> {
    let n = g.base.len();
    let (frame, anchor): (Vec<String>, Vec<Vec<Polynomial>>) = match &g.family {
        Family::Pair => (
            g.base.iter().map(|x| format!("d{x}")).collect(),
            (0..n)
                .map(|i| (0..n).map(|b| Polynomial::int(&g.base, i64::from(i == b))).collect())
                .collect(),
        ),
        Family::Action { group, action } => {
            let mut at_zero: Vec<Polynomial> = vec![Polynomial::zero(&g.base); group.len()];
            at_zero.extend(vars(&g.base));
            (
                (1..=group.len()).map(|i| format!("e{i}")).collect(),
                (0..group.len())
                    .map(|j| action.iter().map(|ab| ab.partial_index(j).compose(&at_zero)).collect())
                    .collect(),
            )
        }
    };
    LieAlgebroid::new(&g.base, frame, anchor, BTreeMap::new())?
        .validated()
        .map_err(|r| Error::Invalid(format!("groupoid algebroid: {r}")))
}

/// A polynomial function on the chart of `p`-composable strings.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidCochain {
    pub degree: usize,
    pub value: Polynomial,
}

impl GroupoidCochain {
    pub fn new(g: &GroupoidChart, degree: usize, value: &Polynomial) -> Result<Self> {
        Ok(GroupoidCochain {
            degree,
            value: value.with_coords(&g.nerve_coords(degree))?,
        })
    }

    pub fn parse(g: &GroupoidChart, degree: usize, src: &str) -> Result<Self> {
        Ok(GroupoidCochain {
            degree,
            value: Polynomial::parse(src, &g.nerve_coords(degree))?,
        })
    }

    fn check(&self, g: &GroupoidChart) -> Result<()> {
        if self.value.coords() != &g.nerve_coords(self.degree) {
            return Err(Error::Shape(format!("cochain does not live on the degree-{} chart", self.degree)));
        }
        Ok(())
    }
}

/// `(dc)(g_1..g_{p+1}) = sum_i (-1)^i c(d_i(g_1..g_{p+1}))`.
pub fn groupoid_differential(g: &GroupoidChart, c: &GroupoidCochain) -> Result<GroupoidCochain> {
    c.check(g)?;
    let q = c.degree + 1;
    let mut out = Polynomial::zero(&g.nerve_coords(q));
    for i in 0..=q {
        let term = c.value.compose(&g.face(q, i));
        if i % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    Ok(GroupoidCochain { degree: q, value: out })
}

/// `(c1 u c2)(g_1..g_{p+q}) = c1(g_1..g_p) c2(g_{p+1}..g_{p+q})`.
pub fn cup_product(g: &GroupoidChart, c1: &GroupoidCochain, c2: &GroupoidCochain) -> Result<GroupoidCochain> {
    c1.check(g)?;
    c2.check(g)?;
    let q = c1.degree + c2.degree;
    let value = &c1.value.compose(&g.front(q, c1.degree)) * &c2.value.compose(&g.back(q, c2.degree));
    Ok(GroupoidCochain { degree: q, value })
}

fn section_on_base(g: &GroupoidChart, x: &Section) -> Result<Vec<Polynomial>> {
    if x.0.len() != g.rank() {
        return Err(Error::Shape(format!("section needs {} components", g.rank())));
    }
    x.0.iter().map(|p| Ok(p.with_coords(&g.base)?)).collect()
}

/// `R_X(c)(g_2..g_p)`: derivative at `t = 0` of `c` with the first arrow
/// replaced by the right-invariant curve through the unit at `beta(g_2)`.
pub fn r_x(g: &GroupoidChart, c: &GroupoidCochain, x: &Section) -> Result<GroupoidCochain> {
    c.check(g)?;
    let p = c.degree;
    if p == 0 {
        return Err(Error::Invalid("R_X needs a cochain of positive degree".into()));
    }
    let xs = section_on_base(g, x)?;
    let target = g.nerve_coords(p - 1);
    let vs = vars(&target);
    let head = g.head(p - 1);
    let dir: Vec<Polynomial> = xs.iter().map(|f| f.compose(&head)).collect();
    let mut subs = Vec::new();
    match g.family {
        Family::Pair => {
            for (b, d) in head.iter().zip(&dir) {
                subs.push(JetSubstitution::along(b.clone(), 0, d.clone()));
            }
            subs.extend(vs.into_iter().map(JetSubstitution::fixed));
        }
        Family::Action { .. } => {
            for d in &dir {
                subs.push(JetSubstitution::along(Polynomial::zero(&target), 0, d.clone()));
            }
            subs.extend(vs.into_iter().map(JetSubstitution::fixed));
        }
    }
    Ok(GroupoidCochain {
        degree: p - 1,
        value: directional_jet(&c.value, &subs, 1)?,
    })
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Phi(c)(X_1..X_p) = sum_sigma sign(sigma) R_{X_sigma(p)} ... R_{X_sigma(1)} c`.
pub fn van_est_on(g: &GroupoidChart, c: &GroupoidCochain, xs: &[Section]) -> Result<Polynomial> {
    c.check(g)?;
    if xs.len() != c.degree {
        return Err(Error::Shape(format!("{} sections for a degree-{} cochain", xs.len(), c.degree)));
    }
    let mut total = Polynomial::zero(&g.base);
    for perm in permutations(xs.len()) {
        let mut cur = c.clone();
        for &k in &perm {
            cur = r_x(g, &cur, &xs[k])?;
        }
        total += &cur.value.scale(&rat(permutation_sign(&perm)));
    }
    Ok(total)
}

/// The Van Est map into cochains of [`groupoid_algebroid`].
pub fn van_est(g: &GroupoidChart, a: &LieAlgebroid, c: &GroupoidCochain) -> Result<Cochain> {
    let r = g.rank();
    let mut out = Cochain::zero_on(a, c.degree, 1);
    for idx in subsets(r, c.degree) {
        let xs: Vec<Section> = idx.iter().map(|&i| Section::frame(&g.base, r, i)).collect();
        out.set(idx, vec![van_est_on(g, c, &xs)?]);
    }
    Ok(out)
}

mod perm {
    /// All permutations of `0..n` in lexicographic order.
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(cur.clone());
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng, c: &Coords, max_deg: u32, terms: usize) -> Polynomial {
    let monos = monomials_up_to(c.len(), max_deg);
    let mut p = Polynomial::zero(c);
    for _ in 0..terms {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        let k: i64 = rng.gen_range(-3..=3);
        p += &Polynomial::monomial(c, e, rat(k));
    }
    p
}

/// Random cochain vanishing whenever one arrow is a unit.
fn random_normalized(g: &GroupoidChart, rng: &mut ChaCha8Rng, p: usize, max_deg: u32) -> GroupoidCochain {
    let c = g.nerve_coords(p);
    let vs = vars(&c);
    let mut f = random_polynomial(rng, &c, max_deg.saturating_sub(p as u32), 3);
    for i in 1..=p {
        let factor = match g.family {
            Family::Pair => &g.block(&vs, i - 1)[0] - &g.block(&vs, i)[0],
            Family::Action { .. } => g.block(&vs, i)[0].clone(),
        };
        f = &f * &factor;
    }
    GroupoidCochain { degree: p, value: f }
}

fn random_section(g: &GroupoidChart, rng: &mut ChaCha8Rng) -> Section {
    Section((0..g.rank()).map(|_| random_polynomial(rng, &g.base, 1, 2)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub trial: usize,
    pub degree: usize,
    pub cochain: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub family: String,
    pub seed: u64,
    pub trials: usize,
    pub max_degree: usize,
    pub max_poly_degree: u32,
    /// Measured `s` in `Phi(d_G c) = s d Phi(c)`.
    pub sign: Option<i64>,
    pub chain_map: bool,
    pub p2: bool,
    pub p3: bool,
    pub multilinear: bool,
    pub surjectivity: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.sign.is_some() && self.chain_map && self.p2 && self.p3 && self.multilinear && self.surjectivity
    }
}

/// Randomized checks of the chain-map identity, (p2), (p3), multilinearity
/// and degree-1 surjectivity witnesses. Cochain degrees range over `1..=max_p`
/// for the chain map (the source `c` has degree up to `max_p - 1`).
pub fn property_harness(g: &GroupoidChart, trials: usize, seed: u64, max_p: usize, max_deg: u32) -> Result<HarnessReport> {
    if max_p == 0 {
        return Err(Error::Invalid("max degree must be positive".into()));
    }
    let a = groupoid_algebroid(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = HarnessReport {
        family: g.family_name().into(),
        seed,
        trials,
        max_degree: max_p,
        max_poly_degree: max_deg,
        sign: None,
        chain_map: true,
        p2: true,
        p3: true,
        multilinear: true,
        surjectivity: true,
        counterexamples: Vec::new(),
    };
    let fail = |rep: &mut HarnessReport, property: &str, trial: usize, c: &GroupoidCochain, detail: String| {
        rep.counterexamples.push(Counterexample {
            property: property.into(),
            trial,
            degree: c.degree,
            cochain: c.value.to_string(),
            detail,
        });
    };
    for t in 0..trials {
        // chain map
        let p = t % max_p;
        let c = GroupoidCochain {
            degree: p,
            value: random_polynomial(&mut rng, &g.nerve_coords(p), max_deg, 4),
        };
        let lhs = van_est(g, &a, &groupoid_differential(g, &c)?)?;
        let rhs = differential(&a, None, &van_est(g, &a, &c)?)?;
        let s = if rhs.is_zero() {
            if lhs.is_zero() {
                rep.sign
            } else {
                None
            }
        } else if lhs == rhs {
            Some(1)
        } else if lhs == rhs.neg() {
            Some(-1)
        } else {
            None
        };
        match (s, rep.sign) {
            (None, _) if !(lhs.is_zero() && rhs.is_zero()) => {
                rep.chain_map = false;
                fail(&mut rep, "chain_map", t, &c, "Phi(d c) is not a multiple of d Phi(c)".into());
            }
            (Some(s), None) => rep.sign = Some(s),
            (Some(s), Some(old)) if s != old => {
                rep.chain_map = false;
                fail(&mut rep, "chain_map", t, &c, format!("sign {s} after {old}"));
            }
            _ => {}
        }

        // (p2): cochains independent of the first arrow
        let p = 1 + t % max_p;
        let inner = random_polynomial(&mut rng, &g.nerve_coords(p - 1), max_deg, 3);
        let c2 = GroupoidCochain {
            degree: p,
            value: inner.compose(&g.face(p, 0)),
        };
        if !van_est(g, &a, &c2)?.is_zero() {
            rep.p2 = false;
            fail(&mut rep, "p2", t, &c2, "Phi(c) != 0".into());
        }

        // (p3) on random sections
        let c3 = GroupoidCochain {
            degree: p,
            value: random_polynomial(&mut rng, &g.nerve_coords(p), max_deg, 4),
        };
        let xs: Vec<Section> = (0..p).map(|_| random_section(g, &mut rng)).collect();
        let full = van_est_on(g, &c3, &xs)?;
        let mut sum = Polynomial::zero(&g.base);
        for i in 0..p {
            let rest: Vec<Section> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| x.clone()).collect();
            let term = van_est_on(g, &r_x(g, &c3, &xs[i])?, &rest)?;
            if i % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
        }
        if sum != full {
            rep.p3 = false;
            fail(&mut rep, "p3", t, &c3, format!("{sum} != {full}"));
        }

        // multilinearity on normalized cochains
        let cn = random_normalized(g, &mut rng, p, max_deg.max(p as u32));
        let xs: Vec<Section> = (0..p).map(|_| random_section(g, &mut rng)).collect();
        let f = random_polynomial(&mut rng, &g.base, 1, 2);
        let slot = rng.gen_range(0..p);
        let mut scaled = xs.clone();
        scaled[slot] = Section(xs[slot].0.iter().map(|v| v * &f).collect());
        if van_est_on(g, &cn, &scaled)? != &f * &van_est_on(g, &cn, &xs)? {
            rep.multilinear = false;
            fail(&mut rep, "multilinear", t, &cn, format!("slot {slot}, f = {f}"));
        }
    }
    if let Family::Pair = g.family {
        for i in 0..g.base.len() {
            let c = surjectivity_witness(g, i);
            let phi = van_est(g, &a, &c)?;
            if phi != Cochain::basis(&a, &[i], Polynomial::one(&g.base)) {
                rep.surjectivity = false;
                fail(&mut rep, "surjectivity", 0, &c, format!("Phi(c) = {:?}", phi.components()));
            }
        }
    }
    Ok(rep)
}

/// `c(x, y) = x_i - y_i` on the pair groupoid.
pub fn surjectivity_witness(g: &GroupoidChart, i: usize) -> GroupoidCochain {
    let c = g.nerve_coords(1);
    let n = g.base.len();
    GroupoidCochain {
        degree: 1,
        value: &Polynomial::var_index(&c, i) - &Polynomial::var_index(&c, n + i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_line_basics() {
        let g = GroupoidChart::pair(&["x"]).unwrap();
        assert_eq!(g.nerve_coords(2).len(), 3);
        let a = groupoid_algebroid(&g).unwrap();
        let c = GroupoidCochain::parse(&g, 1, "x_0 - x_1").unwrap();
        assert!(groupoid_differential(&g, &c).unwrap().value.is_zero());
        let phi = van_est(&g, &a, &c).unwrap();
        assert_eq!(phi, Cochain::basis(&a, &[0], Polynomial::one(g.base())));
        let c2 = GroupoidCochain::parse(&g, 2, "x_1*x_2^2").unwrap();
        assert!(van_est(&g, &a, &c2).unwrap().is_zero());
    }

    #[test]
    fn translation_action() {
        let g = GroupoidChart::action(&["v"], &["x"], &["x + v"]).unwrap();
        let a = groupoid_algebroid(&g).unwrap();
        assert_eq!(a.anchor(0)[0], Polynomial::one(g.base()));
        assert!(GroupoidChart::action(&["v"], &["x"], &["x + v^2"]).is_err());
    }

    #[test]
    fn harness_on_small_instances() {
        let g = GroupoidChart::pair(&["x"]).unwrap();
        let r = property_harness(&g, 6, 7, 3, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.sign, Some(1));
        let h = GroupoidChart::action(&["v"], &["x"], &["x + v*x + v^2*x/2"]);
        assert!(h.is_err());
        let s = GroupoidChart::action(&["v"], &["x", "y"], &["x + v*y", "y"]).unwrap();
        let r = property_harness(&s, 6, 7, 3, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(perm::permutations(3).len(), 6);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
    }
}

//! Poisson bivectors, their cotangent algebroids and modular data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebroid::{canonical_line_bundle, LieAlgebroid};
use crate::charclass::u1;
use crate::cochain::{differential, Cochain};
use crate::cohomology::{assemble_boundary, betti, BettiReport, Grading};
use crate::error::{Error, Result};
use crate::poly::{Coords, Polynomial, Rational};
use crate::sparse::SparseRationalMatrix;

/// Bivector `pi = sum_{i<j} pi^{ij} d_i ^ d_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonBivector {
    coords: Coords,
    upper: BTreeMap<(usize, usize), Polynomial>,
    validated: bool,
}

impl PoissonBivector {
    /// Entries keyed by `(i, j)`; `(j, i)` with `i < j` stores `-pi^{ij}`.
    pub fn new(coords: &Coords, entries: BTreeMap<(usize, usize), Polynomial>) -> Result<Self> {
        let n = coords.len();
        let mut upper: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for ((i, j), p) in entries {
            if i >= n || j >= n {
                return Err(Error::Shape(format!("bivector index ({i}, {j}) out of range")));
            }
            if i == j {
                if !p.is_zero() {
                    return Err(Error::Invalid("diagonal bivector entry".into()));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), p) } else { ((j, i), -&p) };
            let v = v.with_coords(coords)?;
            if let Some(old) = upper.get(&key) {
                if *old != v {
                    return Err(Error::Invalid(format!("conflicting entries for ({}, {})", key.0, key.1)));
                }
            }
            if !v.is_zero() {
                upper.insert(key, v);
            }
        }
        Ok(PoissonBivector {
            coords: coords.clone(),
            upper,
            validated: false,
        })
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Polynomial> {
        &self.upper
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `pi^{ij}` with antisymmetry.
    pub fn pi(&self, i: usize, j: usize) -> Polynomial {
        if i < j {
            self.upper.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(&self.coords))
        } else if i > j {
            -&self.pi(j, i)
        } else {
            Polynomial::zero(&self.coords)
        }
    }

    /// Validates the Jacobi identity.
    pub fn validated(mut self) -> Result<Self> {
        if let Some(((i, j, k), v)) = jacobiator(&self).into_iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::Invalid(format!("not Poisson: J^{{{}{}{}}} = {v}", i + 1, j + 1, k + 1)));
        }
        self.validated = true;
        Ok(self)
    }

    fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated("bivector".into()))
        }
    }
}

/// `J^{ijk}` for `i < j < k`.
pub fn jacobiator(pi: &PoissonBivector) -> BTreeMap<(usize, usize, usize), Polynomial> {
    let n = pi.dim();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut s = Polynomial::zero(&pi.coords);
                for l in 0..n {
                    s += &(&pi.pi(l, i) * &pi.pi(j, k).partial_index(l));
                    s += &(&pi.pi(l, j) * &pi.pi(k, i).partial_index(l));
                    s += &(&pi.pi(l, k) * &pi.pi(i, j).partial_index(l));
                }
                out.insert((i, j, k), s);
            }
        }
    }
    out
}

pub fn is_poisson(pi: &PoissonBivector) -> bool {
    jacobiator(pi).values().all(Polynomial::is_zero)
}

/// `T*P` with frame `dx_i`, anchor `rho(dx_i) = sum_j pi^{ij} d_j` and
/// `[dx_i, dx_j] = sum_k d_k(pi^{ij}) dx_k`.
pub fn cotangent_algebroid(pi: &PoissonBivector) -> Result<LieAlgebroid> {
    pi.require_validated()?;
    let n = pi.dim();
    let frame = pi.coords.iter().map(|x| format!("d{x}")).collect();
    let anchor = (0..n).map(|i| (0..n).map(|j| pi.pi(i, j)).collect()).collect();
    let mut br = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = pi.pi(i, j);
            br.insert((i, j), (0..n).map(|k| p.partial_index(k)).collect());
        }
    }
    LieAlgebroid::new(&pi.coords, frame, anchor, br)?
        .validated()
        .map_err(|r| Error::Invalid(format!("cotangent algebroid failed validation: {r}")))
}

/// Coefficients of `X_f = sum_j (sum_i pi^{ij} d_i f) d_j`.
pub fn hamiltonian_vf(pi: &PoissonBivector, f: &Polynomial) -> Result<Vec<Polynomial>> {
    pi.require_validated()?;
    let f = f.with_coords(&pi.coords)?;
    let n = pi.dim();
    Ok((0..n)
        .map(|j| {
            let mut s = Polynomial::zero(&pi.coords);
            for i in 0..n {
                s += &(&pi.pi(i, j) * &f.partial_index(i));
            }
            s
        })
        .collect())
}

/// `{f, g} = sum pi^{ij} d_i f d_j g`.
pub fn poisson_bracket(pi: &PoissonBivector, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let g = g.with_coords(&pi.coords)?;
    let xf = hamiltonian_vf(pi, f)?;
    Ok(g.derive_along(&xf))
}

fn divergence(v: &[Polynomial]) -> Polynomial {
    v.iter()
        .enumerate()
        .fold(Polynomial::zero(v[0].coords()), |acc, (i, p)| &acc + &p.partial_index(i))
}

/// `X_mod^i = sum_j d_j pi^{ij}` for the coordinate volume form, checked
/// against `x_i -> div X_{x_i}`.
pub fn modular_vector_field(pi: &PoissonBivector) -> Result<Vec<Polynomial>> {
    pi.require_validated()?;
    let n = pi.dim();
    let formula: Vec<Polynomial> = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(&pi.coords), |acc, j| &acc + &pi.pi(i, j).partial_index(j))
        })
        .collect();
    for (i, fi) in formula.iter().enumerate() {
        let xi = Polynomial::var_index(&pi.coords, i);
        let div = divergence(&hamiltonian_vf(pi, &xi)?);
        if div != *fi {
            return Err(Error::Invalid(format!("modular vector field mismatch at {}", pi.coords[i])));
        }
    }
    Ok(formula)
}

/// Betti numbers of the cotangent algebroid truncated at weight `cap`.
pub fn poisson_cohomology(pi: &PoissonBivector, p_max: usize, cap: u32) -> Result<BettiReport> {
    let a = cotangent_algebroid(pi)?;
    betti(&a, None, p_max, &Grading::cap(&a, cap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ModularRelation {
    /// Both cocycles are exact inside the truncation.
    BothExact,
    /// `u1 = lambda * modular + d(primitive)`.
    Proportional { lambda: String, primitive: BTreeMap<String, String> },
    /// The modular cochain is exact but `u1` is not.
    ModularExactOnly,
    NoAffineRelation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularCrossCheck {
    pub u1: Cochain,
    pub modular: Cochain,
    pub lambda: Option<Rational>,
    pub primitive: Option<Cochain>,
    pub relation: ModularRelation,
}

/// Compares `u1` of the canonical line bundle of `T*P` with the cochain
/// `dx_i -> X_mod^i` inside the weight truncation `cap`.
pub fn modular_cross_check(pi: &PoissonBivector, cap: u32) -> Result<ModularCrossCheck> {
    let a = cotangent_algebroid(pi)?;
    let z = u1(&a, &canonical_line_bundle(&a)?)?.cocycle;
    let xm = modular_vector_field(pi)?;
    let mut m = Cochain::zero_on(&a, 1, 1);
    for (i, v) in xm.into_iter().enumerate() {
        m.set(vec![i], vec![v]);
    }
    if !differential(&a, None, &m)?.is_zero() {
        return Err(Error::Invalid("modular cochain is not closed".into()));
    }
    let g = Grading::cap(&a, cap);
    let b = assemble_boundary(&a, None, 0, &g)?;
    if let Some(o) = b.overflow {
        return Err(Error::DegreeOverflow {
            degree: o.degree,
            weight: o.weight,
            cap,
        });
    }
    let coords_of = |w: &Cochain| {
        b.target.coordinates(w).map_err(|w| Error::DegreeOverflow { degree: 1, weight: w, cap })
    };
    let zc = coords_of(&z)?;
    let mc = coords_of(&m)?;
    let zexact = b.matrix.solve(&zc);
    let mexact = b.matrix.solve(&mc).is_some();
    let mut lambda = None;
    let mut primitive = None;
    let relation = if mexact {
        if let Some(x) = zexact {
            primitive = Some(b.source.cochain(&a, &x));
            ModularRelation::BothExact
        } else {
            ModularRelation::ModularExactOnly
        }
    } else {
        // Columns: the boundary, then the modular cochain.
        let mut aug = SparseRationalMatrix::new(b.matrix.rows(), b.matrix.cols() + 1);
        for (&(i, j), v) in b.matrix.entries() {
            aug.set(i, j, v.clone());
        }
        for (i, v) in mc.iter().enumerate() {
            aug.set(i, b.matrix.cols(), v.clone());
        }
        match aug.solve(&zc) {
            Some(x) => {
                let l = x[b.matrix.cols()].clone();
                let prim = b.source.cochain(&a, &x[..b.matrix.cols()]);
                let rel = ModularRelation::Proportional {
                    lambda: l.to_string(),
                    primitive: render_components(&prim),
                };
                lambda = Some(l);
                primitive = Some(prim);
                rel
            }
            None => ModularRelation::NoAffineRelation,
        }
    };
    Ok(ModularCrossCheck {
        u1: z,
        modular: m,
        lambda,
        primitive,
        relation,
    })
}

fn render_components(w: &Cochain) -> BTreeMap<String, String> {
    w.components()
        .iter()
        .map(|(k, v)| {
            let key = if k.is_empty() {
                "1".to_string()
            } else {
                k.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
            };
            (key, v[0].to_string())
        })
        .collect()
}

pub mod examples {
    //! Standard bivectors.

    use super::*;
    use crate::poly::coords;

    fn build(names: &[&str], entries: &[((usize, usize), &str)]) -> PoissonBivector {
        let c = coords(names).unwrap();
        let m = entries
            .iter()
            .map(|&(k, s)| (k, Polynomial::parse(s, &c).unwrap()))
            .collect();
        PoissonBivector::new(&c, m).unwrap()
    }

    /// `pi^{12} = 1` on `R^2`.
    pub fn symplectic_plane() -> PoissonBivector {
        build(&["x", "y"], &[((0, 1), "1")])
    }

    /// `pi^{12} = y` on `R^2`.
    pub fn aff1_linear() -> PoissonBivector {
        build(&["x", "y"], &[((0, 1), "y")])
    }

    /// `pi^{ij} = eps_{ijk} x_k` on `R^3`.
    pub fn so3_linear() -> PoissonBivector {
        build(&["x1", "x2", "x3"], &[((0, 1), "x3"), ((1, 2), "x1"), ((0, 2), "-x2")])
    }

    /// `pi^{12} = x1`, `pi^{23} = x2`: fails the Jacobi identity.
    pub fn non_poisson() -> PoissonBivector {
        build(&["x1", "x2", "x3"], &[((0, 1), "x1"), ((1, 2), "x2")])
    }

    pub fn zero(names: &[&str]) -> PoissonBivector {
        build(names, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::poly::rat;

    #[test]
    fn jacobiator_verdicts() {
        assert!(is_poisson(&symplectic_plane()));
        assert!(is_poisson(&so3_linear()));
        let j = jacobiator(&non_poisson());
        let x1 = Polynomial::var_index(non_poisson().coords(), 0);
        assert_eq!(j[&(0, 1, 2)], -&x1);
        assert!(non_poisson().validated().is_err());
    }

    #[test]
    fn aff1_modular_data() {
        let pi = aff1_linear().validated().unwrap();
        let x = modular_vector_field(&pi).unwrap();
        assert_eq!(x[0], Polynomial::one(pi.coords()));
        assert!(x[1].is_zero());
        let cc = modular_cross_check(&pi, 2).unwrap();
        assert_eq!(cc.lambda, Some(rat(2)));
    }

    #[test]
    fn symplectic_cohomology() {
        let pi = symplectic_plane().validated().unwrap();
        assert_eq!(poisson_cohomology(&pi, 2, 4).unwrap().betti(), vec![1, 0, 0]);
    }
}

//! First-order jets: polynomials extended by nilpotent parameters `t_1..t_q`
//! with `t_i^2 = 0`.
//!
//! A jet is stored as a map from a bitmask of the `t`s present to the
//! polynomial coefficient of that squarefree `t`-monomial.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::poly::{eval_in, Coords, EvalRing, PolyError, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct JetPolynomial {
    coords: Coords,
    params: usize,
    parts: BTreeMap<u32, Polynomial>,
}

impl JetPolynomial {
    pub fn constant(p: Polynomial, params: usize) -> Self {
        assert!(params <= 31, "too many jet parameters");
        let coords = p.coords().clone();
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(0, p);
        }
        JetPolynomial { coords, params, parts }
    }

    /// `base + t_k * dir`.
    pub fn linear(base: Polynomial, k: usize, dir: Polynomial, params: usize) -> Self {
        assert!(k < params, "jet parameter index");
        let mut j = Self::constant(base, params);
        let dir = dir.with_coords(&j.coords).expect("direction coordinates");
        if !dir.is_zero() {
            j.parts.insert(1 << k, dir);
        }
        j
    }

    pub fn params(&self) -> usize {
        self.params
    }

    /// Coefficient of the product of the parameters whose indices are in `ts`.
    pub fn coefficient(&self, ts: &[usize]) -> Polynomial {
        let mask = ts.iter().fold(0u32, |m, &k| m | (1 << k));
        self.parts
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.coords))
    }

    fn insert_add(parts: &mut BTreeMap<u32, Polynomial>, mask: u32, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match parts.get_mut(&mask) {
            Some(q) => {
                *q += &p;
                if q.is_zero() {
                    parts.remove(&mask);
                }
            }
            None => {
                parts.insert(mask, p);
            }
        }
    }
}

impl EvalRing for JetPolynomial {
    fn ring_add(&mut self, other: &Self) {
        for (&m, p) in &other.parts {
            Self::insert_add(&mut self.parts, m, p.clone());
        }
    }

    fn ring_mul(&self, other: &Self) -> Self {
        let mut parts = BTreeMap::new();
        for (&ma, a) in &self.parts {
            for (&mb, b) in &other.parts {
                if ma & mb != 0 {
                    continue;
                }
                Self::insert_add(&mut parts, ma | mb, a * b);
            }
        }
        JetPolynomial {
            coords: self.coords.clone(),
            params: self.params,
            parts,
        }
    }

    fn ring_scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return JetPolynomial {
                coords: self.coords.clone(),
                params: self.params,
                parts: BTreeMap::new(),
            };
        }
        JetPolynomial {
            coords: self.coords.clone(),
            params: self.params,
            parts: self.parts.iter().map(|(&m, p)| (m, p.scale(c))).collect(),
        }
    }
}

/// One substitution `coord -> base + sum_k t_k * dirs[k]`.
#[derive(Debug, Clone)]
pub struct JetSubstitution {
    pub base: Polynomial,
    pub dirs: Vec<(usize, Polynomial)>,
}

impl JetSubstitution {
    pub fn fixed(base: Polynomial) -> Self {
        JetSubstitution { base, dirs: Vec::new() }
    }

    pub fn along(base: Polynomial, k: usize, dir: Polynomial) -> Self {
        JetSubstitution {
            base,
            dirs: vec![(k, dir)],
        }
    }
}

/// Substitutes jets for every coordinate of `p` and returns the coefficient of
/// `t_0 * ... * t_{params-1}`, i.e. the mixed first derivative of `p` along
/// the substituted curves at `t = 0`.
///
/// All substitutes must live on one coordinate list, which becomes the result's.
pub fn directional_jet(
    p: &Polynomial,
    subs: &[JetSubstitution],
    params: usize,
) -> Result<Polynomial, PolyError> {
    if subs.len() != p.coords().len() {
        return Err(PolyError::Parse {
            pos: 0,
            msg: format!(
                "{} substitutions for {} coordinates",
                subs.len(),
                p.coords().len()
            ),
        });
    }
    let target = match subs.first() {
        Some(s) => s.base.coords().clone(),
        None => p.coords().clone(),
    };
    let mut values = Vec::with_capacity(subs.len());
    for s in subs {
        let mut j = JetPolynomial::constant(s.base.with_coords(&target)?, params);
        for (k, d) in &s.dirs {
            if *k >= params {
                return Err(PolyError::Parse {
                    pos: 0,
                    msg: format!("jet parameter t{} out of range", k),
                });
            }
            let d = d.with_coords(&target)?;
            JetPolynomial::insert_add(&mut j.parts, 1 << k, d);
        }
        values.push(j);
    }
    let one = JetPolynomial::constant(Polynomial::one(&target), params);
    let all: Vec<usize> = (0..params).collect();
    Ok(eval_in(p, &values, &one).coefficient(&all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coords;

    #[test]
    fn square_along_unit_direction() {
        let c = coords(&["x"]).unwrap();
        let x = Polynomial::var(&c, "x").unwrap();
        let p = x.pow(2);
        let d = directional_jet(&p, &[JetSubstitution::along(x.clone(), 0, Polynomial::one(&c))], 1)
            .unwrap();
        assert_eq!(d, x.scale(&crate::poly::rat(2)));
    }

    #[test]
    fn mixed_partial_of_product() {
        let c = coords(&["x", "y"]).unwrap();
        let x = Polynomial::var(&c, "x").unwrap();
        let y = Polynomial::var(&c, "y").unwrap();
        let one = Polynomial::one(&c);
        let d = directional_jet(
            &(&x * &y),
            &[
                JetSubstitution::along(x.clone(), 0, one.clone()),
                JetSubstitution::along(y.clone(), 1, one.clone()),
            ],
            2,
        )
        .unwrap();
        assert_eq!(d, one);
    }

    #[test]
    fn squares_of_parameters_vanish() {
        let c = coords(&["x"]).unwrap();
        let x = Polynomial::var(&c, "x").unwrap();
        let j = JetPolynomial::linear(x.clone(), 0, Polynomial::one(&c), 1);
        let sq = j.ring_mul(&j);
        assert_eq!(sq.coefficient(&[0]), x.scale(&crate::poly::rat(2)));
        assert_eq!(sq.parts.len(), 2);
    }
}

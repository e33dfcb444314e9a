#![allow(dead_code)]

use algebroid::cochain::{subsets, Cochain};
use algebroid::poly::{monomials_up_to, rat, Coords};
use algebroid::{LieAlgebroid, Polynomial, Section};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_poly(rng: &mut ChaCha8Rng, c: &Coords, deg: u32, terms: usize) -> Polynomial {
    let monos = monomials_up_to(c.len(), deg);
    let mut p = Polynomial::zero(c);
    for _ in 0..terms {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        p += &Polynomial::monomial(c, e, rat(rng.gen_range(-4..=4)));
    }
    p
}

pub fn random_cochain(rng: &mut ChaCha8Rng, a: &LieAlgebroid, p: usize, deg: u32) -> Cochain {
    let mut w = Cochain::zero_on(a, p, 1);
    for idx in subsets(a.rank(), p) {
        w.set(idx, vec![random_poly(rng, a.coords(), deg, 3)]);
    }
    w
}

pub fn random_section(rng: &mut ChaCha8Rng, a: &LieAlgebroid, deg: u32) -> Section {
    Section((0..a.rank()).map(|_| random_poly(rng, a.coords(), deg, 2)).collect())
}

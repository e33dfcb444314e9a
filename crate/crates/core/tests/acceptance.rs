//! Acceptance criteria 1 to 11. Each criterion prints one PASS/FAIL line.
//! All comparisons are exact; the tolerance for every criterion is zero.

mod common;

use algebroid::algebroid::{
    change_frame, direct_sum, dual_representation, extension_class, pullback_algebroid, semidirect_product,
    tensor_product, Metric,
};
use algebroid::charclass::{g_chern, u1, u_odd};
use algebroid::cochain::{differential, interior_product, lie_derivative, Cochain, MatrixCochain};
use algebroid::cohomology::{betti, find_primitive, relative_basic_cohomology, Exactness, Grading};
use algebroid::library;
use algebroid::matrix::{CMatrix, PolyMatrix};
use algebroid::poisson::{self, examples as pe};
use algebroid::poly::rat;
use algebroid::vanest::{property_harness, GroupoidChart};
use algebroid::{algebroid::bracket_sections, LieAlgebroid, Polynomial, Representation, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_cochain, random_section};

/// Criteria that cannot be met as stated; they must be reported but may fail.
const UNATTAINABLE: &[usize] = &[7];

type Outcome = Result<(bool, String)>;

fn validated(a: LieAlgebroid) -> LieAlgebroid {
    a.validated().expect("library algebroid validates")
}

fn criterion_1() -> Outcome {
    let mut pool = vec![
        ("so(3)", library::so3()),
        ("aff(1)", library::aff1()),
        ("gl2(R)", library::gl_real(2)),
        ("TR^2", library::tangent(&["x", "y"])),
    ];
    for (name, pi) in [
        ("T*(symplectic R^2)", pe::symplectic_plane()),
        ("T*(aff(1)-linear)", pe::aff1_linear()),
        ("T*(so(3)-linear)", pe::so3_linear()),
    ] {
        pool.push((name, poisson::cotangent_algebroid(&pi.validated()?)?));
    }
    pool.push(("pullback(so(3),1)", pullback_algebroid(&validated(library::so3()), 1)?));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, a) in pool {
        let a = match a.validated() {
            Ok(a) => a,
            Err(r) => return Ok((false, format!("{name} fails validation: {r}"))),
        };
        for p in 0..a.rank() {
            for _ in 0..2 {
                let w = random_cochain(&mut rng, &a, p, 3);
                if !differential(&a, None, &differential(&a, None, &w)?)?.is_zero() {
                    return Ok((false, format!("d^2 != 0 on {name} in degree {p}")));
                }
            }
        }
    }
    Ok((true, "8 algebroids validate; d^2 = 0 on random cochains of every degree".into()))
}

fn criterion_2() -> Outcome {
    let pool: Vec<LieAlgebroid> = vec![
        validated(library::so3()),
        validated(library::aff1()),
        validated(library::heisenberg()),
        validated(library::tangent(&["x", "y"])),
        validated(library::coordinate_foliation(&["x", "y", "z"], 2)),
        validated(library::vector_field_algebroid("x^2 - x")),
        poisson::cotangent_algebroid(&pe::aff1_linear().validated()?)?,
        poisson::cotangent_algebroid(&pe::so3_linear().validated()?)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let trials = 24;
    for t in 0..trials {
        let a = &pool[t % pool.len()];
        let p = 1 + t % a.rank();
        let w = random_cochain(&mut rng, a, p, 3);
        let x = random_section(&mut rng, a, 2);
        let y = random_section(&mut rng, a, 2);
        let xy = bracket_sections(a, &x, &y)?;
        let lx = |w: &Cochain| lie_derivative(a, None, &x, w);
        let ly = |w: &Cochain| lie_derivative(a, None, &y, w);
        let d = |w: &Cochain| differential(a, None, w);
        let c1 = d(&interior_product(&x, &w)?)?.add(&interior_product(&x, &d(&w)?)?) == lx(&w)?;
        let c2 = lx(&ly(&w)?)?.sub(&ly(&lx(&w)?)?) == lie_derivative(a, None, &xy, &w)?;
        let c3 = lx(&interior_product(&y, &w)?)?.sub(&interior_product(&y, &lx(&w)?)?)
            == interior_product(&xy, &w)?;
        let c4 = if p >= 2 {
            interior_product(&x, &interior_product(&y, &w)?)?
                .add(&interior_product(&y, &interior_product(&x, &w)?)?)
                .is_zero()
        } else {
            true
        };
        if !(c1 && c2 && c3 && c4) {
            return Ok((false, format!("trial {t}: C1 {c1}, C2 {c2}, C3 {c3}, C4 {c4}")));
        }
    }
    Ok((true, format!("C1-C4 exact on {trials} random instances (rank <= 3, degree <= 3)")))
}

fn criterion_3() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, a: &LieAlgebroid, p_max: usize, cap: u32, want: &[usize]| -> Result<()> {
        let got = betti(a, None, p_max, &Grading::cap(a, cap))?.betti();
        ok &= got == want;
        detail.push(format!("{name} {got:?}"));
        Ok(())
    };
    check("so(3)", &validated(library::so3()), 3, 0, &[1, 0, 0, 1])?;
    check("gl2(R)", &validated(library::gl_real(2)), 4, 0, &[1, 1, 0, 1, 1])?;
    check("TR", &validated(library::tangent(&["x"])), 1, 4, &[1, 0])?;
    check("TR^2", &validated(library::tangent(&["x", "y"])), 2, 4, &[1, 0, 0])?;
    let pb = validated(pullback_algebroid(&validated(library::so3()), 1)?);
    check("pullback(so(3),1) D=3", &pb, 4, 3, &[1, 0, 0, 1, 0])?;
    Ok((ok, detail.join("; ")))
}

fn criterion_4() -> Outcome {
    let b1 = relative_basic_cohomology(&validated(library::gl_complex(1)), &[0])?.betti();
    let b2 = relative_basic_cohomology(&validated(library::gl_complex(2)), &[0, 1, 2, 3])?.betti();
    let ok = b1 == [1, 1] && b2 == [1, 1, 0, 1, 1];
    Ok((ok, format!("H(gl1(C),u(1)) {b1:?}; H(gl2(C),u(2)) {b2:?}")))
}

fn criterion_5() -> Outcome {
    let a = validated(library::coordinate_foliation(&["x", "y", "z"], 2));
    let c = a.coords().clone();
    let line = |s: &str| CMatrix::real(PolyMatrix::from_rows(&c, vec![vec![Polynomial::parse(s, &c).unwrap()]]));
    let ch = g_chern(&a, &[line("y"), line("0")], 1)?;
    let expected = Cochain::basis(&a, &[0, 1], Polynomial::int(&c, -1));
    let ch = ch.with_exactness(&a, &Grading::cap(&a, 2))?;
    let exact = matches!(ch.exactness, Some(Exactness::Exact(_)));
    let ok = ch.closed && ch.cocycle == expected && exact;
    let prim = match &ch.exactness {
        Some(Exactness::Exact(p)) => format!("{:?}", p.eval_frame(&[0])[0].to_string()),
        _ => "none".into(),
    };
    Ok((ok, format!("Ch1 = -e1^e2, closed {}, primitive on e1 {prim} at D=2", ch.closed)))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let aff = validated(library::aff1());
    let lq = algebroid::algebroid::canonical_line_bundle(&aff)?;
    let ad = library::adjoint(&aff).validated(&aff).expect("flat");
    let sum = direct_sum(&lq, &ad)?;
    let add = u1(&aff, &sum)?.cocycle == u1(&aff, &lq)?.cocycle.add(&u1(&aff, &ad)?.cocycle);
    let tens = tensor_product(&lq, &ad)?;
    let tensor = u1(&aff, &tens)?.cocycle
        == u1(&aff, &ad)?.cocycle.add(&u1(&aff, &lq)?.cocycle.scale(&rat(ad.rank() as i64)));

    let gl = validated(library::gl_complex(2));
    let std = library::gl_complex_standard(&gl, 2).validated(&gl).expect("flat");
    let h = Metric::identity(&std);
    let u3 = u_odd(&gl, &std, &h, 2)?;
    let u3_sum = u_odd(&gl, &direct_sum(&std, &std)?, &Metric::identity(&direct_sum(&std, &std)?), 2)?;
    let twice = |w: &Cochain| w.add(w);
    let add3 = u3_sum.cocycle == twice(&u3.cocycle)
        && u3_sum.imaginary.as_ref().zip(u3.imaginary.as_ref()).is_some_and(|(s, x)| *s == twice(x));
    ok &= add && tensor && add3;
    notes.push(format!("additivity u1 {add}, u3 {add3}; tensor rule {tensor}"));

    let dual_ad = dual_representation(&ad)?;
    let d1 = u_odd(&aff, &dual_ad, &Metric::identity(&ad).dual(&dual_ad)?, 1)?.cocycle
        == u_odd(&aff, &ad, &Metric::identity(&ad), 1)?.cocycle.neg();
    let dual_std = dual_representation(&std)?;
    let u3d = u_odd(&gl, &dual_std, &h.dual(&dual_std)?, 2)?;
    let d3 = u3d.cocycle == u3.cocycle.neg()
        && u3d.imaginary.as_ref().zip(u3.imaginary.as_ref()).is_some_and(|(s, x)| *s == x.neg());
    ok &= d1 && d3;
    notes.push(format!("dual negation u1 {d1}, u3 {d3}"));

    let so3 = validated(library::so3());
    let sad = library::adjoint(&so3).validated(&so3).expect("flat");
    let inv = u_odd(&so3, &sad, &Metric::identity(&sad), 1)?.is_zero()
        && u_odd(&so3, &sad, &Metric::identity(&sad), 2)?.is_zero();
    ok &= inv;
    notes.push(format!("invariant metric vanishing {inv}"));

    let glr = validated(library::gl_real(2));
    let rstd = library::gl_real_standard(&glr, 2).validated(&glr).expect("flat");
    let parity = u_odd(&glr, &rstd, &Metric::identity(&rstd), 2)?.cocycle.is_zero();
    ok &= parity;
    notes.push(format!("real parity Tr(theta^3) = 0 {parity}"));

    let nonzero = !u3.imaginary.as_ref().is_some_and(Cochain::is_zero);
    notes.push(format!("complex u3 on gl2(C) nonzero {nonzero}"));
    Ok((ok, notes.join("; ")))
}

fn criterion_7() -> Outcome {
    let g = validated(library::gl_real(2));
    let e = library::gl_real_standard(&g, 2).validated(&g).expect("flat");
    let grading = Grading::cap(&g, 0);
    let u3 = u_odd(&g, &e, &Metric::identity(&e), 2)?.with_exactness(&g, &grading)?;
    let not_exact = matches!(u3.exactness, Some(Exactness::NotExact { .. }));
    let b3 = betti(&g, None, 3, &grading)?.betti()[3];
    let raw = MatrixCochain::from_one_forms(g.coords(), e.connection()).power(3).trace().0;
    let raw_closed = differential(&g, None, &raw)?.is_zero();
    let raw_verdict = if raw_closed {
        match find_primitive(&g, None, &raw, &grading)? {
            Exactness::Exact(_) => "Exact",
            Exactness::NotExact { .. } => "NotExact",
        }
    } else {
        "not closed"
    };
    Ok((
        u3.closed && not_exact && b3 == 1,
        format!(
            "Tr(theta^3) closed {}, identically zero {}, NotExact {not_exact}, b3 = {b3}; uncorrected Tr(omega^3): {raw_verdict}",
            u3.closed,
            u3.cocycle.is_zero()
        ),
    ))
}

fn criterion_8() -> Outcome {
    let mut vals = Vec::new();
    for field in ["x", "x^2 + 3*x"] {
        let a = validated(library::vector_field_algebroid(field));
        let e: Representation = library::vector_field_cotangent(&a).validated(&a).expect("flat");
        let c = u1(&a, &e)?;
        vals.push(c.cocycle.eval_frame(&[0])[0].eval(&[rat(0)]));
    }
    Ok((vals == [rat(1), rat(3)], format!("u1 at x = 0: {} and {}", vals[0], vals[1])))
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let verdicts = [
        poisson::is_poisson(&pe::symplectic_plane()),
        poisson::is_poisson(&pe::so3_linear()),
        poisson::is_poisson(&pe::aff1_linear()),
        !poisson::is_poisson(&pe::non_poisson()),
    ];
    let jac = poisson::jacobiator(&pe::non_poisson());
    let x1 = Polynomial::var_index(pe::non_poisson().coords(), 0);
    ok &= verdicts.iter().all(|&v| v) && jac[&(0, 1, 2)] == -&x1;
    let so3 = pe::so3_linear().validated()?;
    let aff = pe::aff1_linear().validated()?;
    let m_so3 = poisson::modular_vector_field(&so3)?;
    let m_aff = poisson::modular_vector_field(&aff)?;
    let mod_ok = m_so3.iter().all(Polynomial::is_zero) && m_aff[0] == Polynomial::one(aff.coords()) && m_aff[1].is_zero();
    let sym = poisson::poisson_cohomology(&pe::symplectic_plane().validated()?, 2, 4)?.betti();
    let a = poisson::cotangent_algebroid(&so3)?;
    let cas = Polynomial::parse("x1^2 + x2^2 + x3^2", a.coords()).map_err(algebroid::Error::from)?;
    let casimir = differential(&a, None, &Cochain::function(&a, cas))?.is_zero();
    ok &= mod_ok && sym == [1, 0, 0] && casimir;
    Ok((
        ok,
        format!(
            "jacobiator verdicts {}, J123 = {}; X_mod so(3) zero, aff(1) = dx: {mod_ok}; symplectic D=4 {sym:?}; Casimir closed {casimir}",
            verdicts.iter().all(|&v| v),
            jac[&(0, 1, 2)]
        ),
    ))
}

fn criterion_10() -> Outcome {
    let g = GroupoidChart::pair(&["x", "y"])?;
    let r = property_harness(&g, 25, 20_261_016, 3, 3)?;
    Ok((
        r.passed(),
        format!(
            "25 trials: sign s = {:?}, chain map {}, p2 {}, p3 {}, multilinear {}, surjectivity {}",
            r.sign, r.chain_map, r.p2, r.p3, r.multilinear, r.surjectivity
        ),
    ))
}

fn criterion_11() -> Outcome {
    let h = validated(library::heisenberg());
    let c = h.coords().clone();
    let ext = extension_class(&h, &[2], &PolyMatrix::zeros(&c, 2, 1))?;
    let abelian = validated(library::abelian(2));
    let quotient_ok = ext.quotient.same_structure(&abelian);
    let tau_ok = ext.tau == Cochain::basis(&ext.quotient, &[0, 1], Polynomial::one(&c));
    let rebuilt = semidirect_product(&ext.quotient, &ext.action, &ext.tau)?;
    let rebuilt_valid = rebuilt.clone().validated().is_ok();
    let iso = change_frame(&h, &ext.adapted_frame)?.same_structure(&rebuilt);

    let a = validated(library::aff1_plus_line());
    let triv = library::line_connection(&a, &[a.zero_poly(), a.zero_poly(), a.zero_poly()])
        .validated(&a)
        .expect("flat");
    let tau = Cochain::basis(&a, &[1, 2], Polynomial::one(a.coords()));
    let rejected = semidirect_product(&a, &triv, &tau)?.validated().is_err();
    Ok((
        quotient_ok && tau_ok && rebuilt_valid && iso && rejected,
        format!(
            "quotient abelian {quotient_ok}, tau = e1^e2 {tau_ok}, recomposed valid {rebuilt_valid} and isomorphic {iso}; aff(1)+R twist rejected {rejected}"
        ),
    ))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!("criterion {n:>2}: {} | {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(n);
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|n| !UNATTAINABLE.contains(n)).collect();
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

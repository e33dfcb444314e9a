use std::fmt::Write as _;

use algebroid::algebroid::{validate_algebroid, validate_representation, Metric};
use algebroid::charclass::{self, CharClassResult};
use algebroid::cohomology::{self, BettiReport, Exactness, Grading};
use algebroid::io::{self, BivectorFile, Document};
use algebroid::poisson::{self, PoissonBivector};
use algebroid::vanest::{self, GroupoidChart};
use algebroid::{LieAlgebroid, Polynomial};
use serde_json::{json, Value};

use crate::report::{digest, Failure, Outcome, RunReport};
use crate::{Check, Command, Family, PoissonCommand};

type Run = Result<Outcome, Failure>;

pub fn run(cmd: &Command, report: &mut RunReport) -> Run {
    match cmd {
        Command::Validate { file } => validate(&load(file, report)?),
        Command::Cohomology {
            file,
            max_degree,
            max_weight,
            rep,
        } => cohomology(&load(file, report)?, *max_degree, *max_weight, rep.as_deref()),
        Command::Charclass {
            file,
            rep,
            k,
            metric,
            max_weight,
        } => charclass(&load(file, report)?, rep, *k, metric.as_deref(), *max_weight),
        Command::Modular { file, max_weight } => modular(&load(file, report)?, *max_weight),
        Command::Poisson { file, action } => poisson(&load_bivector(file, report)?, action),
        Command::Vanest {
            family,
            dim,
            base,
            group,
            action,
            check,
            degree,
            trials,
            seed,
            max_poly_degree,
        } => {
            let chart = chart(*family, *dim, base, group, action)?;
            vanest(&chart, check, *degree, *trials, *seed, *max_poly_degree)
        }
    }
}

fn read(path: &str, report: &mut RunReport) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    report.input_sha256 = Some(digest(&bytes));
    String::from_utf8(bytes).map_err(|_| Failure::Parse(format!("{path}: not valid UTF-8")))
}

fn load(path: &str, report: &mut RunReport) -> Result<Document, Failure> {
    Ok(Document::parse(&read(path, report)?)?)
}

fn load_bivector(path: &str, report: &mut RunReport) -> Result<PoissonBivector, Failure> {
    Ok(BivectorFile::from_json(&read(path, report)?)?.build()?)
}

fn validated(doc: &Document) -> Result<LieAlgebroid, Failure> {
    doc.algebroid
        .clone()
        .validated()
        .map_err(|r| Failure::Engine(algebroid::Error::Invalid(format!("algebroid axioms fail: {r}"))))
}

fn rep(doc: &Document, a: &LieAlgebroid, name: &str) -> Result<algebroid::Representation, Failure> {
    doc.representation(name)?
        .clone()
        .validated(a)
        .map_err(|r| Failure::Engine(algebroid::Error::Invalid(format!("representation {name}: {r}"))))
}

fn validate(doc: &Document) -> Run {
    let mut ok = true;
    let mut text = String::new();
    let a_rep = validate_algebroid(&doc.algebroid);
    ok &= a_rep.is_valid();
    writeln!(text, "algebroid: {a_rep}").unwrap();
    let mut reps = serde_json::Map::new();
    let mut metrics = serde_json::Map::new();
    if let Ok(a) = doc.algebroid.clone().validated() {
        for (name, e) in &doc.representations {
            let r = validate_representation(&a, e);
            ok &= r.is_valid();
            writeln!(text, "representation {name}: {r}").unwrap();
            reps.insert(name.clone(), json!(r.failures));
        }
        for (name, (rname, h)) in &doc.metrics {
            let failures: Vec<String> = match Metric::new(&doc.representations[rname], h.clone()) {
                Ok(_) => vec![],
                Err(e) => vec![e.to_string()],
            };
            ok &= failures.is_empty();
            let shown = if failures.is_empty() { "valid".to_string() } else { failures.join("\n") };
            writeln!(text, "metric {name}: {shown}").unwrap();
            metrics.insert(name.clone(), json!(failures));
        }
    }
    let result = json!({
        "valid": ok,
        "algebroid": a_rep.failures,
        "representations": reps,
        "metrics": metrics,
    });
    Ok(Outcome { ok, result, text })
}

fn betti_json(b: &BettiReport) -> Value {
    let mut v = serde_json::to_value(b).expect("serializable");
    v["betti"] = json!(b.betti());
    v
}

fn betti_text(b: &BettiReport) -> String {
    let mut text = String::new();
    for d in &b.degrees {
        writeln!(
            text,
            "H^{}: dim {} (cochains {}, kernel {}, image {})",
            d.degree, d.betti, d.cochains, d.kernel, d.image
        )
        .unwrap();
    }
    let betti: Vec<String> = b.betti().iter().map(usize::to_string).collect();
    writeln!(text, "betti: {}", betti.join(" ")).unwrap();
    text
}

fn cohomology(doc: &Document, p_max: usize, cap: u32, rep_name: Option<&str>) -> Run {
    let a = validated(doc)?;
    let e = rep_name.map(|n| rep(doc, &a, n)).transpose()?;
    let b = cohomology::betti(&a, e.as_ref(), p_max, &Grading::cap(&a, cap))?;
    Ok(Outcome {
        ok: true,
        result: betti_json(&b),
        text: betti_text(&b),
    })
}

fn exactness_json(a: &LieAlgebroid, x: &Exactness) -> Value {
    match x {
        Exactness::Exact(eta) => json!({"verdict": "exact", "primitive": io::render_cochain(a, eta)}),
        Exactness::NotExact { bound } => json!({"verdict": "not_exact", "bound": bound}),
    }
}

fn exactness_text(a: &LieAlgebroid, x: &Exactness) -> String {
    match x {
        Exactness::Exact(eta) => format!("exact, primitive {}", io::render_cochain(a, eta)),
        Exactness::NotExact { bound } => format!("not exact within weight {bound}"),
    }
}

fn class_outcome(a: &LieAlgebroid, c: &CharClassResult) -> Outcome {
    let mut result = json!({
        "degree": c.degree,
        "cocycle": io::render_cochain(a, &c.cocycle),
        "denominator": c.denominator.to_string(),
        "closed": c.closed,
        "zero": c.is_zero(),
    });
    let mut text = String::new();
    writeln!(text, "degree: {}", c.degree).unwrap();
    writeln!(text, "cocycle: {}", io::render_cochain(a, &c.cocycle)).unwrap();
    if let Some(im) = &c.imaginary {
        result["imaginary"] = io::render_cochain(a, im);
        writeln!(text, "imaginary: {}", io::render_cochain(a, im)).unwrap();
    }
    if !c.denominator.is_constant() {
        writeln!(text, "denominator: {}", c.denominator).unwrap();
    }
    writeln!(text, "closed: {}", c.closed).unwrap();
    if let Some(x) = &c.exactness {
        result["exactness"] = exactness_json(a, x);
        writeln!(text, "exactness: {}", exactness_text(a, x)).unwrap();
    }
    Outcome {
        ok: c.closed,
        result,
        text,
    }
}

fn charclass(doc: &Document, rep_name: &str, k: usize, metric: Option<&str>, cap: Option<u32>) -> Run {
    let a = validated(doc)?;
    let e = rep(doc, &a, rep_name)?;
    let h = match metric {
        None => Metric::identity(&e),
        Some(m) => {
            let (rname, h) = doc
                .metrics
                .get(m)
                .ok_or_else(|| Failure::Engine(algebroid::Error::Invalid(format!("no metric named {m:?}"))))?;
            if rname != rep_name {
                return Err(Failure::Engine(algebroid::Error::Invalid(format!(
                    "metric {m} belongs to representation {rname}"
                ))));
            }
            Metric::new(&e, h.clone())?
        }
    };
    let mut c = charclass::u_odd(&a, &e, &h, k)?;
    if let Some(cap) = cap {
        c = c.with_exactness(&a, &Grading::cap(&a, cap))?;
    }
    Ok(class_outcome(&a, &c))
}

fn modular(doc: &Document, cap: u32) -> Run {
    let a = validated(doc)?;
    let c = charclass::modular_class(&a)?.with_exactness(&a, &Grading::cap(&a, cap))?;
    Ok(class_outcome(&a, &c))
}

fn vector_field(pi: &PoissonBivector, v: &[Polynomial]) -> (Value, String) {
    let map: serde_json::Map<String, Value> = pi
        .coords()
        .iter()
        .zip(v)
        .filter(|(_, p)| !p.is_zero())
        .map(|(x, p)| (x.clone(), Value::String(p.to_string())))
        .collect();
    let terms: Vec<String> = map
        .iter()
        .map(|(x, p)| format!("({}) d/d{x}", p.as_str().unwrap_or_default()))
        .collect();
    let text = if terms.is_empty() { "0".into() } else { terms.join(" + ") };
    (Value::Object(map), text)
}

fn poisson(pi: &PoissonBivector, action: &PoissonCommand) -> Run {
    match action {
        PoissonCommand::Jacobiator => {
            let jac = poisson::jacobiator(pi);
            let c = pi.coords();
            let nonzero: serde_json::Map<String, Value> = jac
                .iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(&(i, j, k), p)| (format!("{},{},{}", c[i], c[j], c[k]), Value::String(p.to_string())))
                .collect();
            let ok = nonzero.is_empty();
            let mut text = format!("poisson: {ok}\n");
            for (key, p) in &nonzero {
                writeln!(text, "J({key}) = {}", p.as_str().unwrap_or_default()).unwrap();
            }
            Ok(Outcome {
                ok,
                result: json!({"poisson": ok, "jacobiator": nonzero}),
                text,
            })
        }
        PoissonCommand::Cotangent => {
            let pi = pi.clone().validated()?;
            let a = poisson::cotangent_algebroid(&pi)?;
            let doc = Document {
                algebroid: a,
                representations: Default::default(),
                metrics: Default::default(),
            };
            let file = doc.to_file();
            Ok(Outcome {
                ok: true,
                result: serde_json::to_value(&file).expect("serializable"),
                text: format!("{}\n", file.to_json()),
            })
        }
        PoissonCommand::Hamiltonian { f } => {
            let pi = pi.clone().validated()?;
            let f = Polynomial::parse(f, pi.coords()).map_err(algebroid::Error::from)?;
            let (v, text) = vector_field(&pi, &poisson::hamiltonian_vf(&pi, &f)?);
            Ok(Outcome {
                ok: true,
                result: json!({"f": f.to_string(), "vector_field": v}),
                text: format!("X_f = {text}\n"),
            })
        }
        PoissonCommand::Modular => {
            let pi = pi.clone().validated()?;
            let (v, text) = vector_field(&pi, &poisson::modular_vector_field(&pi)?);
            Ok(Outcome {
                ok: true,
                result: json!({"volume": "coordinate", "vector_field": v}),
                text: format!("X_mod = {text}\n"),
            })
        }
        PoissonCommand::Cohomology { max_degree, max_weight } => {
            let pi = pi.clone().validated()?;
            let b = poisson::poisson_cohomology(&pi, *max_degree, *max_weight)?;
            Ok(Outcome {
                ok: true,
                result: betti_json(&b),
                text: betti_text(&b),
            })
        }
        PoissonCommand::CrossCheck { max_weight } => {
            let pi = pi.clone().validated()?;
            let a = poisson::cotangent_algebroid(&pi)?;
            let cc = poisson::modular_cross_check(&pi, *max_weight)?;
            let relation = serde_json::to_value(&cc.relation).expect("serializable");
            let mut text = String::new();
            writeln!(text, "u1: {}", io::render_cochain(&a, &cc.u1)).unwrap();
            writeln!(text, "modular: {}", io::render_cochain(&a, &cc.modular)).unwrap();
            writeln!(text, "relation: {relation}").unwrap();
            Ok(Outcome {
                ok: true,
                result: json!({
                    "u1": io::render_cochain(&a, &cc.u1),
                    "modular": io::render_cochain(&a, &cc.modular),
                    "relation": relation,
                }),
                text,
            })
        }
    }
}

fn default_base(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn chart(family: Family, dim: Option<usize>, base: &[String], group: &[String], action: &[String]) -> Result<GroupoidChart, Failure> {
    match family {
        Family::Pair => {
            let names = if base.is_empty() { default_base(dim.unwrap_or(1)) } else { base.to_vec() };
            Ok(GroupoidChart::pair(&refs(&names))?)
        }
        Family::Action => {
            if group.is_empty() || base.is_empty() || action.len() != base.len() {
                return Err(Failure::Parse(
                    "action family needs --group, --base and one --action per base coordinate".into(),
                ));
            }
            Ok(GroupoidChart::action(&refs(group), &refs(base), &refs(action))?)
        }
    }
}

fn vanest(chart: &GroupoidChart, checks: &[Check], degree: usize, trials: usize, seed: u64, max_deg: u32) -> Run {
    let r = vanest::property_harness(chart, trials, seed, degree, max_deg)?;
    let all = checks.contains(&Check::All);
    let wanted = |c: Check| all || checks.contains(&c);
    let mut selected = Vec::new();
    if wanted(Check::Chainmap) {
        selected.push(("chain_map", r.chain_map && r.sign.is_some()));
    }
    if wanted(Check::P2) {
        selected.push(("p2", r.p2));
    }
    if wanted(Check::P3) {
        selected.push(("p3", r.p3));
    }
    if wanted(Check::Multilinear) {
        selected.push(("multilinear", r.multilinear));
    }
    if wanted(Check::Surjectivity) {
        selected.push(("surjectivity", r.surjectivity));
    }
    let ok = selected.iter().all(|(_, v)| *v);
    let mut text = String::new();
    writeln!(text, "family: {} seed {} trials {}", r.family, r.seed, r.trials).unwrap();
    match r.sign {
        Some(s) => writeln!(text, "sign: {s}").unwrap(),
        None => writeln!(text, "sign: undetermined").unwrap(),
    }
    for (name, v) in &selected {
        writeln!(text, "{name}: {}", if *v { "PASS" } else { "FAIL" }).unwrap();
    }
    for c in &r.counterexamples {
        writeln!(text, "counterexample: {} trial {} degree {}: {} ({})", c.property, c.trial, c.degree, c.cochain, c.detail).unwrap();
    }
    let mut result = serde_json::to_value(&r).expect("serializable");
    result["checked"] = json!(selected.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    result["passed"] = json!(ok);
    Ok(Outcome { ok, result, text })
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

use std::fmt::{Debug, Display};

use autlin::charlab::{newton_scaling_check, relation_gen, verdict, Class, LatticeSubgroup};
use autlin::field::{FieldSpec, PolyMatrix};
use autlin::nagao::{embed_aut1, embed_aut_u, is_congruent_to_identity};
use autlin::planeaut::{core_probe, factor_vdk, to_mixed_word, CoreWitness, Direction, Mat2, MixedWord, PlaneAut, Subgroup};
use autlin::superrep::SuperRep;
use autlin::torsionlab::{
    bs_action, build_em, build_g_r, lower_central_series, separate, sum_product_check, Algebra, BsWord,
};
use serde_json::{json, to_value, Value};
use sha2::{Digest, Sha256};

use crate::report::{domain, syntax, CliError, Report};
use crate::{inputs, AlgebraArg, GroupArg, Verb};

type Outcome = Result<Report, CliError>;

/// Parse failures are syntax errors; anything else a parser rejects is a
/// domain error.
fn literal<T, E: Debug + Display>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| match domain(e) {
        CliError::Domain { kind, message } if kind == "Parse" => syntax(message),
        other => other,
    })
}

fn sha256(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn matrix_json(m: &PolyMatrix) -> Value {
    Value::from(m.rows().iter().map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn aut_json(phi: &PlaneAut) -> Value {
    json!({ "aut": phi.to_string(), "p": phi.p().to_string(), "q": phi.q().to_string(), "degree": phi.degree() })
}

fn word_json(w: &MixedWord) -> Value {
    let letters: Vec<Value> = w
        .letters
        .iter()
        .map(|l| json!({ "direction": l.dir.to_string(), "f": l.f.to_string(), "degree": l.degree() }))
        .collect();
    json!({ "word": w.to_string(), "linear": w.s.to_string(), "letters": letters, "degree": w.degree() })
}

fn each(arg: &Option<String>, f: impl Fn(&str) -> Outcome) -> Vec<Outcome> {
    match inputs(arg) {
        Ok(lines) => lines.iter().map(|l| f(l)).collect(),
        Err(e) => vec![Err(e)],
    }
}

pub fn run(verb: &Verb, field: &FieldSpec, seed: u64) -> Vec<Outcome> {
    match verb {
        Verb::Compose { auts } => vec![compose(field, auts)],
        Verb::Invert { aut } => each(aut, |s| invert(field, s)),
        Verb::Factor { aut } => each(aut, |s| factor(field, s)),
        Verb::Word { aut, subgroup } => each(aut, |s| word(field, s, subgroup)),
        Verb::Rho { word, word_flag, big_n, n, pingpong } => each(&word.clone().or(word_flag.clone()), |s| rho(field, s, *big_n, *n, *pingpong, seed)),
        Verb::Nagao { word, word_flag } => each(&word.clone().or(word_flag.clone()), |s| nagao(field, s)),
        Verb::Classify { gens } => vec![classify(field, gens)],
        Verb::Relation { gens, n } => vec![relation(field, gens, *n)],
        Verb::Newton { gens, n } => vec![newton(field, gens, *n)],
        Verb::Verdict { subgroup } => each(subgroup, |s| verdict_cmd(field, s)),
        Verb::Probe { subgroup, matrices } => vec![probe(field, subgroup, matrices)],
        Verb::Bs { primes } => vec![bs(primes)],
        Verb::Separate { word, word_flag, primes } => each(&word.clone().or(word_flag.clone()), |s| separate_cmd(s, primes)),
        Verb::Sumprod { p, r, algebra } => vec![sumprod(*p, *r, *algebra)],
        Verb::Nilpotency { p, r, group, a } => vec![nilpotency(*p, *r, *group, *a)],
    }
}

fn compose(field: &FieldSpec, auts: &[String]) -> Outcome {
    let mut acc = PlaneAut::identity(field);
    for s in auts {
        acc = acc.compose(&literal(PlaneAut::parse(field, s))?);
    }
    Ok(Report::new("compose", acc.to_string(), aut_json(&acc)))
}

fn invert(field: &FieldSpec, s: &str) -> Outcome {
    let phi = literal(PlaneAut::parse(field, s))?;
    let inv = phi.invert().map_err(domain)?;
    let check = phi.compose(&inv).is_identity();
    Ok(Report::new("invert", inv.to_string(), json!({ "input": phi.to_string(), "inverse": aut_json(&inv), "verified": check }))
        .with_ok(check))
}

fn factor(field: &FieldSpec, s: &str) -> Outcome {
    let phi = literal(PlaneAut::parse(field, s))?;
    let fact = factor_vdk(&phi).map_err(domain)?;
    let back = fact.recompose(field);
    let (h_in, h_back) = (sha256(&phi.to_string()), sha256(&back.to_string()));
    let factors: Vec<String> = fact.factors.iter().map(|f| f.to_string()).collect();
    let degrees = fact.elementary_degrees();
    let text = format!("{fact}\ndegrees {degrees:?}, recomposition {}", if h_in == h_back { "matches" } else { "differs" });
    let body = json!({
        "input": phi.to_string(),
        "factors": factors,
        "elementary_degrees": degrees,
        "degree": phi.degree(),
        "input_sha256": h_in,
        "recomposed_sha256": h_back,
        "recomposition_equal": back == phi,
    });
    Ok(Report::new("factor", text, body).with_ok(back == phi))
}

fn word(field: &FieldSpec, s: &str, subgroup: &str) -> Outcome {
    let phi = literal(PlaneAut::parse(field, s))?;
    let sub = literal(Subgroup::parse(field, subgroup))?;
    let w = to_mixed_word(&phi, &sub).map_err(domain)?;
    Ok(Report::new("word", w.to_string(), word_json(&w)))
}

fn rho(field: &FieldSpec, s: &str, big_n: Option<usize>, n: u32, pingpong: usize, seed: u64) -> Outcome {
    let w = literal(MixedWord::parse(field, s))?;
    let rep = match big_n {
        Some(nn) => SuperRep::new(nn, n, field),
        None => SuperRep::for_degree(n, field),
    }
    .map_err(domain)?;
    let m = rep.word(&w).map_err(domain)?;
    let det = m.determinant();
    let mut text = format!("N = {}, dim {}\n{m}\ndet = {det}", rep.weight(), rep.dim());
    let mut body = json!({
        "word": w.to_string(),
        "N": rep.weight(),
        "n": rep.degree_bound(),
        "dim": rep.dim(),
        "matrix": matrix_json(&m),
        "det": det.to_string(),
        "z_degree": m.degree(),
    });
    let mut ok = true;
    if pingpong > 0 {
        let report = rep
            .pingpong(&Direction::delta0(field), &Direction::delta_inf(field), pingpong, seed)
            .map_err(domain)?;
        ok = report.failures.is_empty();
        text.push_str(&format!("\nping-pong: {} samples, {} failures", report.checked, report.failures.len()));
        body["pingpong"] = json!({ "seed": seed, "checked": report.checked, "failures": report.failures });
    }
    Ok(Report::new("rho", text, body).with_ok(ok))
}

fn nagao(field: &FieldSpec, s: &str) -> Outcome {
    let w = literal(MixedWord::parse(field, s))?;
    let m = if w.s.is_identity() { embed_aut1(&w) } else { embed_aut_u(&w) }.map_err(domain)?;
    let det = m.determinant();
    let congruent = is_congruent_to_identity(&m);
    let text = format!("{m}\ndet = {det}, congruent to id mod z: {congruent}");
    let body = json!({ "word": w.to_string(), "matrix": matrix_json(&m), "det": det.to_string(), "congruent": congruent });
    Ok(Report::new("nagao", text, body))
}

fn lattice(field: &FieldSpec, gens: &[String]) -> Result<LatticeSubgroup, CliError> {
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    literal(LatticeSubgroup::parse(field, &refs))
}

fn class_name(c: Class) -> &'static str {
    match c {
        Class::Good => "good",
        Class::Bad => "bad",
    }
}

fn classify(field: &FieldSpec, gens: &[String]) -> Outcome {
    let lam = lattice(field, gens)?;
    let c = lam.classify().map_err(domain)?;
    let mut body = json!({
        "subgroup": lam.to_string(),
        "class": c.class,
        "rank": c.rank,
        "trdeg": c.trdeg,
        "torsion": lam.torsion(),
        "d": lam.d(),
        "witness": c.witness.as_ref().map(|w| w.to_string()),
    });
    let mut text = format!("{lam}: {} (rank {}, trdeg {})", class_name(c.class), c.rank, c.trdeg);
    if c.class == Class::Bad {
        if let Ok(mb) = lam.minimally_bad() {
            text.push_str(&format!("\nminimally bad: {}", mb.subgroup));
            body["minimally_bad"] = json!({
                "subgroup": mb.subgroup.to_string(),
                "support": mb.support,
                "support_index": mb.support_index.map(|i| i.to_string()),
            });
        }
    }
    Ok(Report::new("classify", text, body))
}

fn relation(field: &FieldSpec, gens: &[String], n: u32) -> Outcome {
    let lam = lattice(field, gens)?;
    let rel = relation_gen(&lam, n).map_err(domain)?;
    let body = json!({ "subgroup": lam.to_string(), "n": n, "relation": rel.to_string(), "support": rel.support() });
    Ok(Report::new("relation", format!("P_{n} = {rel}"), body))
}

fn newton(field: &FieldSpec, gens: &[String], n: u32) -> Outcome {
    let lam = lattice(field, gens)?;
    let rep = newton_scaling_check(&lam, n).map_err(domain)?;
    let text = format!(
        "P_1 = {}\nP_{n} = {}\nNewton(P_1) = {:?}, Newton(P_{n}) = {:?}, f_n = {}",
        rep.p1,
        rep.pn,
        rep.newton1.hull,
        rep.newton_n.hull,
        rep.f_n.map_or("none".into(), |f| f.to_string())
    );
    let ok = rep.holds();
    let body = to_value(&rep).map_err(domain)?;
    Ok(Report::new("newton", text, body).with_ok(ok))
}

fn verdict_cmd(field: &FieldSpec, s: &str) -> Outcome {
    let sub = literal(Subgroup::parse(field, s))?;
    let v = verdict(field, &sub).map_err(domain)?;
    let mut text = format!("{sub}: {:?}\n  {}", v.result, v.rule);
    for w in &v.witnesses {
        text.push_str(&format!(
            "\n  {}: {} rank {} trdeg {} torsion {} {}",
            w.delta,
            w.subgroup,
            w.rank,
            w.trdeg,
            w.torsion,
            class_name(w.class)
        ));
    }
    let mut body = to_value(&v).map_err(domain)?;
    body["subgroup"] = json!(sub.to_string());
    Ok(Report::new("verdict", text, body))
}

fn probe(field: &FieldSpec, subgroup: &str, matrices: &[String]) -> Outcome {
    let sub = literal(Subgroup::parse(field, subgroup))?;
    let mats = matrices.iter().map(|m| literal(Mat2::parse(field, m))).collect::<Result<Vec<_>, _>>()?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for r in core_probe(&sub, &mats) {
        let witness = match &r.witness {
            CoreWitness::Identity => "identity".to_string(),
            CoreWitness::Conjugation { tau, conjugate } => format!("conjugates {tau} to {conjugate}"),
            CoreWitness::MovesDirection { direction, image } => format!("moves {direction} to {image}"),
        };
        lines.push(format!("{}: {witness}", r.g));
        rows.push(json!({ "g": r.g.to_string(), "in_subgroup": r.in_subgroup, "witness": witness }));
    }
    Ok(Report::new("probe", lines.join("\n"), json!({ "subgroup": sub.to_string(), "reports": rows })))
}

fn bs(primes: &[u32]) -> Outcome {
    let lhs = BsWord::parse("s^2 t S^2").map_err(domain)?;
    let rhs = BsWord::parse("t^2").map_err(domain)?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for &p in primes {
        bs_action(p).map_err(domain)?;
        let holds = lhs.eval(p).map_err(domain)? == rhs.eval(p).map_err(domain)?;
        ok &= holds;
        lines.push(format!("p = {p}: {}", if holds { "holds" } else { "fails" }));
        rows.push(json!({ "p": p, "holds": holds }));
    }
    let (l, r) = (lhs.eval_symbolic(), rhs.eval_symbolic());
    ok &= l == r;
    lines.push(format!("over Q: {l} vs {r}"));
    let body = json!({ "primes": rows, "symbolic": { "lhs": l.to_string(), "rhs": r.to_string(), "holds": l == r } });
    Ok(Report::new("bs", lines.join("\n"), body).with_ok(ok))
}

fn separate_cmd(s: &str, primes: &[u32]) -> Outcome {
    let w = literal(BsWord::parse(s))?;
    let (found, log) = separate(&w, primes).map_err(domain)?;
    let text = match found {
        Some(p) => format!("{w}: nontrivial mod {p}"),
        None => format!("{w}: trivial mod every listed prime"),
    };
    let log: Vec<Value> = log.iter().map(|(p, moved)| json!({ "p": p, "nontrivial": moved })).collect();
    Ok(Report::new("separate", text, json!({ "word": w.to_string(), "prime": found, "log": log })))
}

fn sumprod(p: u32, r: u32, algebra: AlgebraArg) -> Outcome {
    let alg = match algebra {
        AlgebraArg::Poly => Algebra::Polynomial,
        AlgebraArg::Gf => Algebra::GaloisField,
    };
    let rep = sum_product_check(p, r, alg).map_err(domain)?;
    let text = format!("sum = {}\nproduct = {}\n{}", rep.sum, rep.product, if rep.holds { "equal" } else { "differ" });
    let ok = rep.holds;
    Ok(Report::new("sumprod", text, to_value(&rep).map_err(domain)?).with_ok(ok))
}

fn nilpotency(p: u32, r: u32, group: GroupArg, a: u32) -> Outcome {
    let g = match group {
        GroupArg::G => build_g_r(p, r),
        GroupArg::Em => build_em(p, r, a),
    }
    .map_err(domain)?;
    let orders = lower_central_series(&g).map_err(domain)?;
    let class = match orders.last() {
        Some(1) => Some(orders.len() - 1),
        _ => None,
    };
    let target = 1 + (p as usize - 1) * r as usize;
    let text = format!(
        "orders {orders:?}, class {}, 1 + (p-1)r = {target}",
        class.map_or("none (not nilpotent)".into(), |c| c.to_string())
    );
    let body = json!({ "p": p, "r": r, "order": orders[0], "series": orders, "class": class, "expected": target });
    Ok(Report::new("nilpotency", text, body).with_ok(class.is_some()))
}

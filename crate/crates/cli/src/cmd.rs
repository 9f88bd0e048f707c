//! Subcommand implementations. Every command yields a text rendering and a
//! JSON value; numbers inside polynomials are exact rationals.

use std::collections::BTreeMap;
use std::fs;

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hallvertex::algebra::{parse_poly, render_poly, MPoly, VarNames, ZSeries};
use hallvertex::coha::{assoc_check, shuffle_poly, shuffle_product};
use hallvertex::lattice::{character, vertex_apply, FieldExpansion, FockBasis, FockState};
use hallvertex::localization::{
    grassmann_pushforward_oracle, localized_pushforward, parse_fixed_data, Pushforward,
};
use hallvertex::quiver::{CohClass, DimVector, Quiver};
use hallvertex::verify::{
    check_bialgebra, check_counit_unit, check_normal_identity, sample_classes,
};
use hallvertex::vertex::{
    covertex_lead, depth_window, s_lead, s_matrix, y_covertex, ybe_check, Orientation,
};

use crate::input::{self, usage};
use crate::{
    Cmd, CohaCmd, LatticeCmd, LocCmd, OracleCmd, SweepArgs, VerifyCmd, VertexCmd, WindowArgs,
};

pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when a check failed.
    pub ok: bool,
}

impl Report {
    fn value(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            ok: true,
        }
    }
}

pub fn run(cmd: &Cmd) -> Result<Report> {
    match cmd {
        Cmd::Coha(c) => coha(c),
        Cmd::Vertex(c) => vertex(c),
        Cmd::Lattice(c) => lattice(c),
        Cmd::Oracle(c) => oracle(c),
        Cmd::Loc(c) => loc(c),
        Cmd::Verify(c) => verify(c),
    }
}

fn class_json(q: &Quiver, c: &CohClass) -> Value {
    json!({
        "class": c.render(q),
        "gamma": c.gamma.0,
        "poly": render_poly(&c.poly, &q.var_names()),
    })
}

fn series_out(s: &ZSeries, names: &VarNames) -> (String, Value) {
    let (lo, hi) = s.window();
    let mut lines = Vec::new();
    let mut coeffs = serde_json::Map::new();
    for k in (lo..=hi).rev() {
        let c = s.coeff_or_zero(k).unwrap_or_else(|_| MPoly::zero());
        if c.is_zero() {
            continue;
        }
        let r = render_poly(&c, names);
        lines.push(format!("z^{k}: {r}"));
        coeffs.insert(k.to_string(), Value::String(r));
    }
    if lines.is_empty() {
        lines.push("0".into());
    }
    lines.insert(0, format!("window [{lo}, {hi}]"));
    (
        lines.join("\n"),
        json!({ "window": [lo, hi], "coeffs": coeffs }),
    )
}

fn window(w: &WindowArgs, lead: i64) -> (i64, i64) {
    w.window.unwrap_or_else(|| depth_window(lead, w.depth))
}

/// All items, or `n` drawn uniformly with replacement.
fn pick<T: Clone>(all: Vec<T>, sweep: &SweepArgs) -> Vec<T> {
    match sweep.samples {
        Some(n) if !all.is_empty() => {
            let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
            (0..n)
                .map(|_| all[rng.gen_range(0..all.len())].clone())
                .collect()
        }
        _ => all,
    }
}

fn check_summary(what: &str, checked: usize, failures: &[String], extra: Value) -> Report {
    let ok = failures.is_empty();
    let mut text = format!(
        "{what}: {} ({checked} checked, {} failures)",
        if ok { "PASS" } else { "FAIL" },
        failures.len()
    );
    for f in failures.iter().take(10) {
        text.push_str("\n  ");
        text.push_str(f);
    }
    let mut j = json!({ "check": what, "holds": ok, "checked": checked, "failures": failures });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    Report { text, json: j, ok }
}

fn coha(c: &CohaCmd) -> Result<Report> {
    match c {
        CohaCmd::Mul {
            quiver,
            left,
            right,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let a = CohClass::parse(&q, left).context("parsing --left")?;
            let b = CohClass::parse(&q, right).context("parsing --right")?;
            let p = shuffle_product(&q, &a, &b)?;
            Ok(Report::value(p.render(&q), class_json(&q, &p)))
        }
        CohaCmd::Assoc {
            quiver,
            classes,
            sweep,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let triples: Vec<(CohClass, CohClass, CohClass)> = match classes.len() {
                0 => {
                    let basis = sample_classes(&q, sweep.maxdim, sweep.degree);
                    let mut all = Vec::new();
                    for a in &basis {
                        for b in &basis {
                            for c in &basis {
                                all.push((a.clone(), b.clone(), c.clone()));
                            }
                        }
                    }
                    pick(all, sweep)
                }
                3 => {
                    let p = |s: &str| {
                        CohClass::parse(&q, s).with_context(|| format!("parsing class `{s}`"))
                    };
                    vec![(p(&classes[0])?, p(&classes[1])?, p(&classes[2])?)]
                }
                n => {
                    return Err(usage(format!(
                        "--class needs exactly three values, got {n}"
                    )))
                }
            };
            let mut failures = Vec::new();
            for (a, b, c) in &triples {
                let r = assoc_check(&q, a, b, c)?;
                if !r.holds {
                    failures.push(format!(
                        "({} * {}) * {}: {} != {}",
                        a.render(&q),
                        b.render(&q),
                        c.render(&q),
                        r.left.render(&q),
                        r.right.render(&q)
                    ));
                }
            }
            Ok(check_summary(
                "associativity",
                triples.len(),
                &failures,
                json!({}),
            ))
        }
    }
}

fn vertex(c: &VertexCmd) -> Result<Report> {
    match c {
        VertexCmd::Ycov {
            quiver,
            class,
            first,
            second,
            window: w,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let a = CohClass::parse(&q, class).context("parsing --class")?;
            let (g, h) = (input::dim(&q, first)?, input::dim(&q, second)?);
            let o = input::orientation(&orient.orientation)?;
            let win = window(w, covertex_lead(&q, &a, &g, &h));
            let s = y_covertex(&q, &a, &g, &h, win, &o)?;
            let (text, j) = series_out(&s, &q.var_names());
            Ok(Report::value(
                text,
                json!({ "class": a.render(&q), "split": [g.0, h.0], "series": j }),
            ))
        }
        VertexCmd::Smatrix {
            quiver,
            first,
            second,
            window: w,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let (g, h) = (input::dim(&q, first)?, input::dim(&q, second)?);
            let o = input::orientation(&orient.orientation)?;
            let win = window(w, s_lead(&q, &g, &h));
            let s = s_matrix(&q, &g, &h, win, &o)?;
            let (text, j) = series_out(&s, &q.var_names());
            Ok(Report::value(
                text,
                json!({ "pair": [g.0, h.0], "series": j }),
            ))
        }
        VertexCmd::Ybe {
            quiver,
            dims,
            depth,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let d: Vec<DimVector> = dims
                .iter()
                .map(|s| input::dim(&q, s))
                .collect::<Result<_>>()?;
            let o = input::orientation(&orient.orientation)?;
            let r = ybe_check(&q, &d[0], &d[1], &d[2], *depth, &o)?;
            let failures: Vec<String> = r
                .witness
                .iter()
                .map(|(a, b)| format!("sides differ at z^{a} w^{b}"))
                .collect();
            Ok(check_summary(
                "yang-baxter",
                r.terms,
                &failures,
                json!({ "z_window": [r.z_window.0, r.z_window.1], "total_window": [r.total_window.0, r.total_window.1] }),
            ))
        }
    }
}

fn render_character(c: &BTreeMap<i64, u64>) -> String {
    let mut parts = Vec::new();
    for (&k, &n) in c {
        if n == 0 {
            continue;
        }
        let coeff = if n == 1 && k != 0 {
            String::new()
        } else {
            n.to_string()
        };
        parts.push(match k {
            0 => coeff,
            1 => format!("{coeff}q"),
            _ => format!("{coeff}q^{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn field_out(f: &FieldExpansion, lo: i64, rank: usize) -> (String, Value) {
    let mut lines = Vec::new();
    let mut coeffs = serde_json::Map::new();
    for (&k, s) in f.coeffs.iter().rev() {
        if k < lo || s.is_zero() {
            continue;
        }
        let r = s.render(rank);
        lines.push(format!("z^{k}: {r}"));
        coeffs.insert(k.to_string(), Value::String(r));
    }
    if lines.is_empty() {
        lines.push("0".into());
    }
    lines.insert(0, format!("window [{lo}, {}]", f.hi));
    (
        lines.join("\n"),
        json!({ "window": [lo, f.hi], "coeffs": coeffs }),
    )
}

fn lattice(c: &LatticeCmd) -> Result<Report> {
    match c {
        LatticeCmd::Char {
            lattice,
            order,
            range,
        } => {
            let spec = input::load_lattice(lattice)?;
            let range = range.as_deref().map(input::parse_range).transpose()?;
            let ch = character(&spec, *order, range.as_deref())?;
            let coeffs: Vec<[i64; 2]> = ch.iter().map(|(&k, &n)| [k, n as i64]).collect();
            Ok(Report::value(
                render_character(&ch),
                json!({ "gram": spec.gram, "order": order, "coeffs": coeffs }),
            ))
        }
        LatticeCmd::Yop {
            lattice,
            state,
            target,
            window: w,
        } => {
            let spec = input::load_lattice(lattice)?;
            let u = FockBasis::parse(state, spec.rank)?;
            let v = match target {
                Some(t) => FockBasis::parse(t, spec.rank)?,
                None => FockBasis::lattice(vec![0; spec.rank]),
            };
            // every power of Y(u,z)v is at least (α,β) − energy(u) − energy(v)
            let floor = spec.pair(&u.point, &v.point) - u.energy() as i64 - v.energy() as i64;
            let (lo, hi) = w.window.unwrap_or((floor, floor + w.depth as i64));
            let f = vertex_apply(
                &spec,
                &FockState::basis(u.clone()),
                &FockState::basis(v.clone()),
                hi,
            );
            if let Some(lead) = f.leading_power().filter(|&l| l < lo) {
                return Err(hallvertex::Error::WindowInsufficient { lo, hi, lead }.into());
            }
            let (text, j) = field_out(&f, lo, spec.rank);
            Ok(Report::value(
                text,
                json!({ "state": u.to_string(), "target": v.to_string(), "series": j }),
            ))
        }
    }
}

fn oracle(c: &OracleCmd) -> Result<Report> {
    let OracleCmd::Grassmann { n, m, class, check } = c;
    if *n == 0 || *m == 0 {
        return Err(usage("--n and --m must be positive"));
    }
    let h = parse_poly(class, &VarNames::default()).context("parsing --class")?;
    let out = grassmann_pushforward_oracle(&h, *n, *m)?;
    let names = VarNames::default().with_letters(&["u"]);
    let r = render_poly(&out, &names);
    let mut j =
        json!({ "n": n, "m": m, "class": render_poly(&h, &VarNames::default()), "pushforward": r });
    let mut text = r.clone();
    let mut ok = true;
    if *check {
        let a1 = Quiver::a1();
        let s = shuffle_poly(
            &a1,
            &DimVector(vec![*n as u32]),
            1,
            &DimVector(vec![*m as u32]),
            2,
            &h,
            1,
        )?;
        ok = s == out;
        text.push_str(&format!(
            "\nshuffle: {} ({})",
            render_poly(&s, &names),
            if ok { "agrees" } else { "DIFFERS" }
        ));
        j["shuffle"] = json!(render_poly(&s, &names));
        j["agrees"] = json!(ok);
    }
    Ok(Report { text, json: j, ok })
}

fn loc(c: &LocCmd) -> Result<Report> {
    let LocCmd::Pushforward { fixed, t0 } = c;
    let s = fs::read_to_string(fixed).with_context(|| format!("reading `{}`", fixed.display()))?;
    let names = VarNames::default();
    let data = parse_fixed_data(&s, &names)?;
    match localized_pushforward(&data, *t0)? {
        Pushforward::Class(p) => {
            let r = render_poly(&p, &names);
            Ok(Report::value(
                r.clone(),
                json!({ "components": data.len(), "class": r }),
            ))
        }
        Pushforward::Localized(f) => {
            let (num, den) = (render_poly(f.num(), &names), render_poly(f.den(), &names));
            let text = if f.den().is_one() {
                num.clone()
            } else {
                format!("({num}) / ({den})")
            };
            Ok(Report::value(
                text,
                json!({ "components": data.len(), "numerator": num, "denominator": den }),
            ))
        }
    }
}

fn verify(c: &VerifyCmd) -> Result<Report> {
    match c {
        VerifyCmd::Bialgebra {
            quiver,
            sweep,
            depth,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let o = input::orientation(&orient.orientation)?;
            let classes = sample_classes(&q, sweep.maxdim, sweep.degree);
            let mut jobs = Vec::new();
            for a in &classes {
                for b in &classes {
                    let tot = a.gamma.add(&b.gamma);
                    for g in tot.sub_vectors() {
                        let h = tot.checked_sub(&g).expect("sub-vector");
                        jobs.push((a, b, g, h));
                    }
                }
            }
            let jobs = pick(jobs, sweep);
            let mut failures = Vec::new();
            for (a, b, g, h) in &jobs {
                let r = check_bialgebra(&q, a, b, (g, h), *depth, &o)?;
                if !r.holds {
                    failures.push(format!(
                        "{} * {} at {g}|{h}: {:?}",
                        a.render(&q),
                        b.render(&q),
                        r.witness
                    ));
                }
            }
            Ok(check_summary(
                "bialgebra",
                jobs.len(),
                &failures,
                json!({ "depth": depth }),
            ))
        }
        VerifyCmd::Ybe {
            quiver,
            maxdim,
            depth,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let o = input::orientation(&orient.orientation)?;
            let dims = q.dim_vectors_up_to(*maxdim);
            let mut n = 0;
            let mut failures = Vec::new();
            for a in &dims {
                for b in &dims {
                    for c in &dims {
                        n += 1;
                        let r = ybe_check(&q, a, b, c, *depth, &o)?;
                        if !r.holds {
                            failures.push(format!("{a} {b} {c}: {:?}", r.witness));
                        }
                    }
                }
            }
            Ok(check_summary(
                "yang-baxter",
                n,
                &failures,
                json!({ "depth": depth }),
            ))
        }
        VerifyCmd::Normal { quiver, maxdim } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let dims = q.dim_vectors_up_to(*maxdim);
            let mut n = 0;
            let mut failures = Vec::new();
            for a1 in &dims {
                for b1 in &dims {
                    for a2 in &dims {
                        for b2 in &dims {
                            n += 1;
                            let r = check_normal_identity(&q, a1, b1, a2, b2)?;
                            if !r.holds {
                                failures.push(format!(
                                    "{a1} {b1} {a2} {b2}: multiset {}, S identity {}",
                                    r.multiset, r.s_identity
                                ));
                            }
                        }
                    }
                }
            }
            Ok(check_summary("normal", n, &failures, json!({})))
        }
        VerifyCmd::Counit {
            quiver,
            maxdim,
            degree,
            orient,
        } => {
            let q = input::load_quiver(&quiver.quiver)?;
            let o: Orientation = input::orientation(&orient.orientation)?;
            let samples = sample_classes(&q, *maxdim, *degree);
            let r = check_counit_unit(&q, &samples, &o)?;
            Ok(check_summary(
                "counit",
                samples.len(),
                &r.failures,
                json!({}),
            ))
        }
    }
}

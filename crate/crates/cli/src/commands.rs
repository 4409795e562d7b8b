use serde_json::{json, Value};

use truncgr_core::bwb::{bwb, BundleWeight};
use truncgr_core::checks::{homogeneous_plucker_parametrization, run_check, schubert_points, CheckConfig, Outcome, CHECKS};
use truncgr_core::combinatorics::{binomial, check_standing, enumerate_index_sets, truncated_dim, GLWeight, Partition};
use truncgr_core::fibers::{exceptional_probe, fiber_classifier, smoothness_probe};
use truncgr_core::groebner::{implicitize, GroebnerConfig, DEFAULT_BUDGET, DEFAULT_VAR_CAP};
use truncgr_core::interp::{stabilize, PointKind};
use truncgr_core::plucker::{orbit_matrix, plucker};
use truncgr_core::poly::PolyRing;
use truncgr_core::rational::q;
use truncgr_core::resolution::{appendix_euler, build_complex, euler_char_sections, twisted_h0_terms, GrothElement};
use truncgr_core::sampling::{random_matrix, rng, sample_schubert, DEFAULT_RANGE, DEFAULT_SEEDS};
use truncgr_core::Error;

use crate::opts::{Command, Mode, Opts, Span};
use crate::report::{Status, Table};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Status, JSON result and TSV table of a subcommand.
pub type Output = (Status, Value, Table);
type Res = Result<Output, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn single(span: Option<Span>, flag: &str, cmd: &str) -> Result<usize, Failure> {
    match span {
        Some(Span::One(v)) => Ok(v),
        Some(other) => Err(usage(format!("{cmd}: --{flag} takes a single value, got {other}"))),
        None => Err(usage(format!("{cmd}: missing --{flag}"))),
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn seeds(opts: &mut Opts) -> Vec<u64> {
    opts.seeds.get_or_insert_with(|| DEFAULT_SEEDS.to_vec()).clone()
}

fn groebner_config(opts: &mut Opts) -> GroebnerConfig {
    GroebnerConfig { budget: *opts.budget.get_or_insert(DEFAULT_BUDGET), var_cap: *opts.var_cap.get_or_insert(DEFAULT_VAR_CAP) }
}

pub fn run(cmd: Command, opts: &mut Opts) -> Res {
    match cmd {
        Command::Dims => dims(opts),
        Command::Resolution => resolution(opts),
        Command::Bwb => bwb_cmd(opts),
        Command::Euler => euler(opts),
        Command::Ideal => ideal(opts),
        Command::Fiber => fiber(opts),
        Command::Smooth => smooth(opts),
        Command::Verify => verify(opts),
    }
}

/// Bases are enumerated as a cross-check only below this many subsets.
const ENUMERATION_LIMIT: u64 = 200_000;

fn dims(opts: &mut Opts) -> Res {
    let n_span = opts.n.ok_or_else(|| usage("dims: missing --n"))?;
    if n_span == Span::All {
        return Err(usage("dims: --n needs a value or a range"));
    }
    let d_span = *opts.d.get_or_insert(Span::All);
    let r_span = *opts.r.get_or_insert(Span::All);
    let hi = match n_span {
        Span::One(v) | Span::Range(_, v) => v,
        Span::All => unreachable!(),
    };
    let mut rows = Vec::new();
    let mut table = Table::new(&["n", "d", "r", "dim", "enumerated"]);
    let mut ok = true;
    for n in n_span.values(1, hi) {
        for d in d_span.values(1, n / 2) {
            // only a fully explicit (n, d) is an error; ranges skip
            if let Err(e) = check_standing(n, d) {
                if matches!((n_span, d_span), (Span::One(_), Span::One(_))) {
                    return Err(e.into());
                }
                continue;
            }
            for r in r_span.values(0, d) {
                if r > d {
                    if matches!((n_span, d_span), (Span::One(_), Span::One(_))) {
                        return Err(usage(format!("dims: need r <= d, got r={r}, d={d}")));
                    }
                    continue;
                }
                let dim = truncated_dim(n, d, r)?;
                let enumerated = if binomial(n, d) <= ENUMERATION_LIMIT.into() {
                    Some(enumerate_index_sets(n, d, r)?.len())
                } else {
                    None
                };
                if let Some(e) = enumerated {
                    ok &= dim == e.into();
                }
                table.push(vec![
                    n.to_string(),
                    d.to_string(),
                    r.to_string(),
                    dim.to_string(),
                    enumerated.map_or("-".into(), |e| e.to_string()),
                ]);
                rows.push(json!({"n": n, "d": d, "r": r, "dim": dim.to_string(), "enumerated": enumerated}));
            }
        }
    }
    Ok((status(ok), json!({ "rows": rows }), table))
}

fn triple(opts: &Opts, cmd: &str) -> Result<(usize, usize, usize), Failure> {
    Ok((single(opts.n, "n", cmd)?, single(opts.d, "d", cmd)?, single(opts.r, "r", cmd)?))
}

fn resolution(opts: &mut Opts) -> Res {
    let (n, d, r) = triple(opts, "resolution")?;
    let layers = build_complex(n, d, r)?;
    let big_n = n - d;
    let term_count: usize = layers.iter().map(|l| l.terms.len()).sum();
    let expected_terms = binomial(2 * r, r);
    let f0 = &layers[0].terms;
    let structure_sheaf = f0.len() == 1 && f0[0].source.is_empty();
    let top = &layers[r * r].terms;
    let top_is_o_minus_r = top.len() == 1
        && top[0].source == Partition::rectangle(r, big_n as u32)
        && top[0].bundle_partition == Partition::rectangle(big_n, r as u32);
    let sections = twisted_h0_terms(n, d, r)?;
    let euler = euler_char_sections(n, d, r)?;
    let truncated = truncated_dim(n, d, r - 1)?;
    let euler_matches = euler == truncated.clone().into();
    let counts_match = expected_terms == term_count.into();

    let mut table = Table::new(&["layer", "source", "length", "levi_weight", "levi_dim", "bundle_partition", "twist"]);
    for layer in &layers {
        for t in &layer.terms {
            table.push(vec![
                layer.index.to_string(),
                t.source.to_string(),
                t.length.to_string(),
                t.levi_weight.to_string(),
                t.levi_dim.to_string(),
                t.bundle_partition.to_string(),
                t.twist.to_string(),
            ]);
        }
    }
    let result = json!({
        "n": n, "d": d, "r": r,
        "layers": to_value(&layers),
        "term_count": term_count,
        "expected_term_count": expected_terms.to_string(),
        "term_count_matches": counts_match,
        "first_layer_is_structure_sheaf": structure_sheaf,
        "last_layer_is_o_minus_r": top_is_o_minus_r,
        "twisted_sections": to_value(&sections),
        "euler_characteristic": euler.to_string(),
        "truncated_dim_r_minus_1": truncated.to_string(),
        "euler_matches_truncated_dim": euler_matches,
    });
    Ok((status(counts_match && structure_sheaf && top_is_o_minus_r && euler_matches), result, table))
}

fn weight(v: &Option<Vec<i64>>, flag: &str) -> Result<GLWeight, Failure> {
    let v = v.clone().ok_or_else(|| usage(format!("bwb: missing --{flag}")))?;
    GLWeight::new(v).map_err(|e| usage(format!("bwb: --{flag}: {e}")))
}

fn bwb_cmd(opts: &mut Opts) -> Res {
    let (n, d) = (single(opts.n, "n", "bwb")?, single(opts.d, "d", "bwb")?);
    let bundle = BundleWeight::new(n, d, weight(&opts.a, "a")?, weight(&opts.b, "b")?)?;
    let coh = bwb(&bundle)?;
    let mut table = Table::new(&["degree", "weight", "dimension"]);
    if let Some(k) = coh.degree() {
        let w = match &coh {
            truncgr_core::bwb::Cohomology::Nonzero { weight, .. } => weight.to_string(),
            _ => unreachable!(),
        };
        table.push(vec![k.to_string(), w, coh.h(k).to_string()]);
    }
    let result = json!({"bundle": to_value(&bundle), "kappa": bundle.kappa(), "cohomology": to_value(&coh)});
    Ok((Status::Pass, result, table))
}

fn groth_rows(table: &mut Table, side: &str, g: &GrothElement) {
    for ((big, small), c) in g.terms() {
        table.push(vec![side.into(), big.to_string(), small.to_string(), c.to_string()]);
    }
}

fn euler(opts: &mut Opts) -> Res {
    let (n, d, r) = triple(opts, "euler")?;
    let id = appendix_euler(n, d, r)?;
    let truncated = truncated_dim(n, d, r - 1)?;
    let dim_ok = id.dimension == truncated.clone().into();
    let mut table = Table::new(&["side", "gl_n_minus_d_weight", "gl_d_weight", "coefficient"]);
    groth_rows(&mut table, "lhs", &id.lhs);
    groth_rows(&mut table, "rhs", &id.rhs);
    let result = json!({
        "n": n, "d": d, "r": r,
        "identity": to_value(&id),
        "truncated_dim_r_minus_1": truncated.to_string(),
        "dimension_matches": dim_ok,
    });
    Ok((status(id.equal && dim_ok), result, table))
}

fn ideal(opts: &mut Opts) -> Res {
    match *opts.mode.get_or_insert(Mode::Implicitize) {
        Mode::Implicitize => implicitize_cmd(opts),
        Mode::Vanishing => vanishing_cmd(opts),
    }
}

fn implicitize_cmd(opts: &mut Opts) -> Res {
    let (n, d) = (single(opts.n, "n", "ideal")?, single(opts.d, "d", "ideal")?);
    check_standing(n, d)?;
    let config = groebner_config(opts);
    let samples = *opts.samples.get_or_insert(100);
    let seed = seeds(opts)[0];
    let param = homogeneous_plucker_parametrization(n, d)?;
    let source_vars = 1 + d * (n - d);
    let imp = implicitize(source_vars, &param, config)?;
    let ring = PolyRing::new(imp.targets.clone());
    let relations: Vec<String> = imp.relations.iter().map(|p| p.display(&ring).to_string()).collect();
    let mut g = rng(seed);
    let mut violations = 0;
    for _ in 0..samples {
        let v = plucker(&orbit_matrix(&random_matrix(&mut g, n - d, d, DEFAULT_RANGE)), d)?.values();
        for rel in &imp.relations {
            if rel.eval(&v)? != q(0) {
                violations += 1;
            }
        }
    }
    let mut table = Table::new(&["relation"]);
    for r in &relations {
        table.push(vec![r.clone()]);
    }
    let result = json!({
        "n": n, "d": d,
        "source_variables": source_vars,
        "targets": imp.targets,
        "relations": relations,
        "steps": imp.steps,
        "checked_points": samples,
        "violations": violations,
    });
    Ok((status(violations == 0), result, table))
}

fn vanishing_cmd(opts: &mut Opts) -> Res {
    let (n, d, r) = triple(opts, "ideal")?;
    let degree = *opts.degree.get_or_insert(1);
    let samples = *opts.samples.get_or_insert(200);
    let seeds = seeds(opts);
    // degree-1 sections are compared against the Euler characteristic
    let euler = if degree == 1 { Some(euler_char_sections(n, d, r)?) } else { None };
    let mut table = Table::new(&["seed", "history", "stable"]);
    let mut runs = Vec::new();
    let mut ok = true;
    for &seed in &seeds {
        let points = schubert_points(n, d, r, samples, seed)?;
        let st = stabilize(&points, degree, PointKind::Projective, (samples / 4).max(1))?;
        ok &= match (st.stable, &euler) {
            (None, _) => false,
            (Some(v), Some(e)) => *e == v.into(),
            (Some(_), None) => true,
        };
        let history: Vec<String> = st.history.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        table.push(vec![seed.to_string(), history.join(" "), st.stable.map_or("-".into(), |v| v.to_string())]);
        runs.push(json!({"seed": seed, "stabilization": to_value(&st)}));
    }
    let result = json!({
        "n": n, "d": d, "r": r, "degree": degree,
        "runs": runs,
        "euler_characteristic": euler.map(|e| e.to_string()),
    });
    Ok((status(ok), result, table))
}

fn fiber(opts: &mut Opts) -> Res {
    let m = opts.m.ok_or_else(|| usage("fiber: missing --m"))?;
    let r_list = opts.r_list.clone().ok_or_else(|| usage("fiber: missing --r-list"))?;
    let seeds = seeds(opts);
    let class = fiber_classifier(m, &r_list)?;
    let dim = class.spec.certified_dimension(&seeds)?;
    let mut table = Table::new(&["seed", "fiber_dim", "probe_projective_dim", "within_bound", "matches"]);
    let mut ok = true;
    let mut probes = Vec::new();
    let probe_applies = opts.n.is_some() || opts.d.is_some();
    if probe_applies {
        let (n, d) = (single(opts.n, "n", "fiber")?, single(opts.d, "d", "fiber")?);
        let [r] = r_list[..] else {
            return Err(usage("fiber: the limit probe needs a single blow-up level in --r-list"));
        };
        let curves = *opts.curves.get_or_insert(20);
        // equality of the span with the fiber is only expected at s = 1 and s = m-1
        let equality_expected = matches!(class.spec.s_list[..], [s] if s == 1 || s + 1 == m);
        for &seed in &seeds {
            let u = sample_schubert(n, d, r, m, seed)?;
            let p = exceptional_probe(&u, r, curves, seed)?;
            ok &= p.within_bound && (p.matches || !equality_expected);
            table.push(vec![
                seed.to_string(),
                p.fiber_dim.to_string(),
                p.probe.projective_dim.to_string(),
                p.within_bound.to_string(),
                p.matches.to_string(),
            ]);
            probes.push(to_value(&p));
        }
    } else {
        table.push(vec!["-".into(), dim.to_string(), "-".into(), "-".into(), "-".into()]);
    }
    let result = json!({
        "m": m,
        "r_list": r_list,
        "classification": to_value(&class),
        "certified_dimension": dim,
        "probes": probes,
    });
    Ok((status(ok), result, table))
}

fn smooth(opts: &mut Opts) -> Res {
    let (n, d) = (single(opts.n, "n", "smooth")?, single(opts.d, "d", "smooth")?);
    let samples = *opts.samples.get_or_insert(50);
    let seeds = seeds(opts);
    let mut table = Table::new(&["seed", "samples", "expected_rank", "min_rank", "orbit_rank", "full_rank"]);
    let mut reports = Vec::new();
    let mut ok = true;
    for &seed in &seeds {
        let rep = smoothness_probe(n, d, samples, seed)?;
        ok &= rep.full_rank;
        table.push(vec![
            seed.to_string(),
            rep.samples.len().to_string(),
            rep.expected_rank.to_string(),
            rep.min_rank.to_string(),
            rep.orbit_rank.to_string(),
            rep.full_rank.to_string(),
        ]);
        reports.push(to_value(&rep));
    }
    Ok((status(ok), json!({"n": n, "d": d, "reports": reports}), table))
}

fn verify(opts: &mut Opts) -> Res {
    let defaults = CheckConfig::default();
    let gcfg = groebner_config(opts);
    let config = CheckConfig {
        seeds: seeds(opts),
        samples: *opts.samples.get_or_insert(defaults.samples),
        curves: *opts.curves.get_or_insert(defaults.curves),
        budget: gcfg.budget,
        var_cap: gcfg.var_cap,
        ..defaults
    };
    // checks are independent; results are collected in id order
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|&(id, _)| s.spawn({
            let config = &config;
            move || run_check(id, config).expect("listed check")
        })).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let mut table = Table::new(&["id", "name", "status", "message"]);
    let mut statuses = Vec::new();
    for res in &results {
        let (st, msg) = match &res.outcome {
            Outcome::Pass => (Status::Pass, String::new()),
            Outcome::Fail(m) => (Status::Fail, m.clone()),
            Outcome::Diverged(m) => (Status::Diverged, m.clone()),
        };
        statuses.push(st);
        table.push(vec![res.id.to_string(), res.name.to_string(), to_value(&st).as_str().unwrap_or("").to_string(), msg]);
    }
    let checks = json!({ "check_config": to_value(&config), "checks": to_value(&results) });
    Ok((Status::from_checks(statuses), checks, table))
}

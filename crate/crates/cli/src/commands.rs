use std::fs;
use std::io::{self, BufRead, Write};

use clap::ValueEnum;
use cutlab::flags::{
    average_operator_check, brute_force_cut_cost, catalog, density, expected_cut_cost,
    inequality_residual, labeled_density, Anchor, AnchorKind, Flag, FlagError, Params,
};
use cutlab::gen::{Enumerator, GenError, DEFAULT_MAX_N};
use cutlab::graph::{Graph, GraphError};
use cutlab::heuristics::{
    biased_unbalanced_trials, independent_bisection, neighborhood_bisection,
    random_balanced_kpartition, sparse_class_bisection, three_quarters_sparse,
    tripartition_via_independent, HeuristicError, Scored,
};
use cutlab::lab::{
    check, extremal, ks_ingredients, parse_records, sweep, CheckOptions, ClaimId, LabError,
    Summary, SweepOptions, XyzParams,
};
use cutlab::solver::{solve_subset_with, solve_with, SolveOptions, SolverError, SUBSET_MAX_N};
use cutlab::Rational;
use serde_json::{json, Value};

use crate::{
    CheckArgs, Cmd, ExtremalArgs, Failure, FlagsArgs, GenArgs, HeurArgs, KsArgs, Method, SolveArgs,
};

pub const BROKEN_PIPE: &str = "broken pipe";

pub fn io_failure(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Failure::Other(BROKEN_PIPE.into())
    } else {
        Failure::Other(e.to_string())
    }
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::GuardExceeded { .. } => Failure::Guard(e.to_string()),
        SolverError::InfeasibleSpec(_) => Failure::Data(e.to_string()),
        SolverError::BadArgument(_) => Failure::Usage(e.to_string()),
    }
}

fn gen_failure(e: GenError) -> Failure {
    match e {
        GenError::GuardExceeded { .. } => Failure::Guard(e.to_string()),
        GenError::BadArgument(_) => Failure::Usage(e.to_string()),
    }
}

fn graph_failure(e: GraphError) -> Failure {
    match e {
        GraphError::TooLarge { .. } => Failure::Guard(e.to_string()),
        _ => Failure::Data(e.to_string()),
    }
}

fn flag_failure(e: FlagError) -> Failure {
    match e {
        FlagError::PatternTooLarge { .. }
        | FlagError::AnchorMismatch
        | FlagError::InfeasibleAnchor(_) => Failure::Data(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn lab_failure(e: LabError) -> Failure {
    if e.is_guard() {
        return Failure::Guard(e.to_string());
    }
    match e {
        LabError::Solver(s) => solver_failure(s),
        LabError::Gen(g) => gen_failure(g),
        LabError::Graph(g) => graph_failure(g),
        LabError::Io(io) => io_failure(io),
        LabError::BadRecord(_) => Failure::Data(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn rat(r: Rational) -> Value {
    Value::String(r.to_string())
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}").map_err(io_failure)
}

/// graph6 lines from stdin, with the original text of each.
fn read_graphs() -> Result<Vec<(String, Graph)>, Failure> {
    let mut graphs = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line.map_err(io_failure)?;
        let text = line.trim().trim_start_matches(">>graph6<<");
        if text.is_empty() {
            continue;
        }
        let g = Graph::from_graph6(text)
            .map_err(|e| Failure::Data(format!("stdin line {}: {e}", i + 1)))?;
        graphs.push((text.to_string(), g));
    }
    Ok(graphs)
}

pub fn run(cmd: Cmd, out: &mut dyn Write) -> Result<u8, Failure> {
    match cmd {
        Cmd::Gen(a) => gen(a, out),
        Cmd::Solve(a) => solve(a, out),
        Cmd::Heur(a) => heur(a, out),
        Cmd::Flags(a) => flags_cmd(a, out),
        Cmd::Check(a) => check_cmd(a, out),
        Cmd::Extremal(a) => extremal_cmd(a, out),
        Cmd::Ks(a) => ks(a, out),
    }
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let level = Enumerator::new(a.forbid)
        .map_err(gen_failure)?
        .with_limit(a.max_n.unwrap_or(DEFAULT_MAX_N))
        .regular_only(a.regular)
        .level(a.n)
        .map_err(gen_failure)?;
    for g in level {
        writeln!(out, "{}", g.to_graph6()).map_err(io_failure)?;
    }
    Ok(0)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    for (g6, g) in read_graphs()? {
        let n = g.n();
        let v = if let Some(alpha) = a.alpha {
            if alpha < Rational::from_integer(0) || alpha > Rational::from_integer(1) {
                return Err(Failure::Usage(format!(
                    "alpha = {alpha} lies outside [0, 1]"
                )));
            }
            let m = (alpha * Rational::from_integer(n as i128))
                .floor()
                .to_integer() as usize;
            let (set, cost) =
                solve_subset_with(&g, m, a.objective, a.max_n.unwrap_or(SUBSET_MAX_N))
                    .map_err(solver_failure)?;
            json!({
                "g6": g6, "n": n, "alpha": rat(alpha), "objective": a.objective.to_string(),
                "size": m, "cost": cost, "set": set.to_vec(),
            })
        } else {
            let opts = SolveOptions {
                max_n: a.max_n,
                strict: a.strict,
            };
            let (p, cost) = solve_with(&g, &a.spec, a.norm, &opts).map_err(solver_failure)?;
            json!({
                "g6": g6, "n": n, "spec": a.spec.to_string(), "norm": a.norm.to_string(),
                "value": cost.value(a.norm) as u64, "cost": cost.per_class,
                "partition": p.assign(),
            })
        };
        emit(out, &v)?;
    }
    Ok(0)
}

fn heur_failure(e: HeuristicError) -> Result<String, Failure> {
    match e {
        HeuristicError::NotApplicable(_)
        | HeuristicError::DegreeTooLarge { .. }
        | HeuristicError::NotTriangleFree => Ok(e.to_string()),
        HeuristicError::BadAlpha(_) | HeuristicError::BadArgument(_) => {
            Err(Failure::Usage(e.to_string()))
        }
        HeuristicError::Graph(g) => Err(graph_failure(g)),
        HeuristicError::Solver(s) => Err(solver_failure(s)),
    }
}

fn scored(s: Scored) -> Value {
    json!({ "cost": s.cost.per_class, "total": s.cost.total(), "partition": s.partition.assign() })
}

fn heur(a: HeurArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let method = a
        .method
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    for (g6, g) in read_graphs()? {
        let result: Result<Value, HeuristicError> = match a.method {
            Method::IndBisect => independent_bisection(&g).map(scored),
            Method::Nbhd => neighborhood_bisection(&g, a.vertex, a.trials, a.seed).map(scored),
            Method::TriInd => tripartition_via_independent(&g).map(scored),
            Method::RandomK => {
                random_balanced_kpartition(&g, a.k, a.seed, a.trials, a.norm).map(scored)
            }
            Method::SparseClass => sparse_class_bisection(&g).map(scored),
            Method::Biased => {
                let alpha = a
                    .alpha
                    .ok_or_else(|| Failure::Usage("biased needs --alpha".into()))?;
                biased_unbalanced_trials(&g, alpha, a.seed, a.trials)
                    .map(|(set, cost)| json!({ "cost": cost, "set": set.to_vec() }))
            }
            Method::ThreeQuarters => three_quarters_sparse(&g).map(|s| {
                json!({
                    "edges": s.edges, "bound": rat(s.bound), "certified": s.certified,
                    "exact": s.exact, "set": s.set.to_vec(),
                })
            }),
        };
        let mut v = match result {
            Ok(v) => v,
            Err(e) => json!({ "status": "not_applicable", "reason": heur_failure(e)? }),
        };
        v["g6"] = json!(g6);
        v["n"] = json!(g.n());
        v["method"] = json!(method);
        emit(out, &v)?;
    }
    Ok(0)
}

fn parse_anchor(s: &str) -> Result<AnchorKind, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "anchor `{s}` is not vertex:V, edge:U,V or triple:U,V,W"
        ))
    };
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    let vs: Vec<usize> = rest
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    Ok(match (kind, vs.as_slice()) {
        ("vertex", &[v]) => AnchorKind::Vertex(v),
        ("edge", &[u, v]) => AnchorKind::Edge(u, v),
        ("triple", &[u, v, w]) => AnchorKind::EdgePlusNonneighbor(u, v, w),
        _ => return Err(bad()),
    })
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    raw.iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("parameter `{p}` is not NAME=VALUE")))?;
            let v: Rational = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("parameter `{p}` has no rational value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn flags_cmd(a: FlagsArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let m = &a.mode;
    if m.list {
        for (name, f) in catalog().atoms() {
            emit(
                out,
                &json!({ "atom": name, "n": f.h().n(), "labels": f.labels(),
                "edges": f.h().edges().collect::<Vec<_>>() }),
            )?;
        }
        for e in catalog().entries() {
            emit(
                out,
                &json!({ "ineq": e.id, "statement": e.statement,
                "description": e.description, "labels": e.labels(), "params": e.params() }),
            )?;
        }
        return Ok(0);
    }
    let pattern = m
        .density
        .as_deref()
        .map(|s| Graph::from_graph6(s).map_err(|e| Failure::Usage(format!("pattern: {e}"))))
        .transpose()?;
    let flag = m
        .labeled
        .as_deref()
        .or(m.average.as_deref())
        .map(|c| Flag::parse(c).map_err(flag_failure))
        .transpose()?;
    let anchor = m.expected_cut.as_deref().map(parse_anchor).transpose()?;
    let params = parse_params(&a.params)?;
    if let Some(id) = &m.ineq {
        catalog().get(id).map_err(flag_failure)?;
    }
    for (g6, g) in read_graphs()? {
        let mut v = if let Some(h) = &pattern {
            json!({ "density": rat(density(h, &g).map_err(flag_failure)?) })
        } else if m.labeled.is_some() {
            let flag = flag.as_ref().expect("parsed above");
            let d =
                labeled_density(flag, &g, &Anchor::new(a.anchor.clone())).map_err(flag_failure)?;
            json!({ "anchor": a.anchor, "density": rat(d) })
        } else if m.average.is_some() {
            let flag = flag.as_ref().expect("parsed above");
            let (lhs, rhs) = average_operator_check(flag, &g).map_err(flag_failure)?;
            json!({ "coefficient": rat(flag.averaging_coefficient()), "lhs": rat(lhs),
                "rhs": rat(rhs), "equal": lhs == rhs })
        } else if let Some(kind) = &anchor {
            let sizes = if a.sizes.is_empty() {
                return Err(Failure::Usage("--expected-cut needs --sizes".into()));
            } else {
                &a.sizes
            };
            let e = expected_cut_cost(&g, kind, sizes).map_err(flag_failure)?;
            let mut v = json!({ "sizes": sizes, "expected": e.iter().copied().map(rat).collect::<Vec<_>>() });
            if g.n() <= 12 {
                let b = brute_force_cut_cost(&g, kind, sizes).map_err(flag_failure)?;
                v["brute_force_agrees"] = json!(b == e);
            }
            v
        } else {
            let id = m.ineq.as_deref().expect("one mode is required");
            let r = inequality_residual(&g, id, &params).map_err(flag_failure)?;
            json!({ "ineq": r.id, "mean": r.mean.map(rat), "min": r.min.map(rat),
                "anchors": r.anchors, "skipped": r.skipped })
        };
        v["g6"] = json!(g6);
        emit(out, &v)?;
    }
    Ok(0)
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("range `{s}` is not A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.trim_start_matches('=');
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn check_cmd(a: CheckArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let claims: Vec<ClaimId> = a
        .claims
        .iter()
        .map(|c| c.parse().map_err(lab_failure))
        .collect::<Result<_, _>>()?;
    let opts = CheckOptions {
        alpha: a.alpha,
        r: a.r,
        t7_slack: a.t7_slack,
    };
    let summary = if let Some(range) = &a.n_range {
        let (lo, hi) = parse_range(range)?;
        let forbid = a.forbid.unwrap_or_else(|| {
            claims
                .iter()
                .map(|c| match c {
                    ClaimId::K4A | ClaimId::K4B | ClaimId::K4C => 4,
                    ClaimId::Ks => a.r.map_or(3, |r| r + 1),
                    _ => 3,
                })
                .max()
                .unwrap_or(3)
        });
        let sweep_opts = SweepOptions {
            regular_only: a.regular,
            check: opts,
            limit: a.max_n.unwrap_or(DEFAULT_MAX_N),
            ..SweepOptions::new(lo, hi, forbid, claims.clone())
        };
        if let Some(path) = &a.resume {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
                Err(e) => return Err(io_failure(e)),
            };
            let prior = parse_records(&text, claims.len()).map_err(lab_failure)?;
            let mut file = io::BufWriter::new(fs::File::create(path).map_err(io_failure)?);
            for r in &prior {
                writeln!(file, "{}", r.to_json()).map_err(io_failure)?;
            }
            let s = sweep(&sweep_opts, &prior, &mut file).map_err(lab_failure)?;
            writeln!(file, "{}", s.to_json()).map_err(io_failure)?;
            file.flush().map_err(io_failure)?;
            s
        } else {
            sweep(&sweep_opts, &[], out).map_err(lab_failure)?
        }
    } else {
        if a.resume.is_some() {
            return Err(Failure::Usage("--resume needs --n-range".into()));
        }
        let graphs = read_graphs()?;
        let mut records = Vec::new();
        for (_, g) in &graphs {
            for &c in &claims {
                let rec = check(g, c, &opts).map_err(lab_failure)?;
                writeln!(out, "{}", rec.to_json()).map_err(io_failure)?;
                records.push(rec);
            }
        }
        let mut s = Summary::tally(&records);
        s.graphs = graphs.len();
        s
    };
    writeln!(out, "{}", summary.to_json()).map_err(io_failure)?;
    Ok(if summary.proven_violations > 0 { 3 } else { 0 })
}

fn extremal_cmd(a: ExtremalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let e = extremal(a.n, &a.spec, a.norm, a.forbid).map_err(lab_failure)?;
    for (g, p, c) in &e.graphs {
        emit(
            out,
            &json!({ "g6": g.to_graph6(), "cost": c.per_class, "partition": p.assign() }),
        )?;
    }
    emit(
        out,
        &json!({ "summary": { "n": e.n, "spec": a.spec.to_string(), "norm": a.norm.to_string(),
        "value": e.value as u64, "considered": e.considered, "maximizers": e.graphs.len() } }),
    )?;
    Ok(0)
}

fn ks(a: KsArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let supplied = match a.xyz.as_slice() {
        [] => None,
        [x, y, z, ez] => {
            let q = |s: &String| {
                s.trim()
                    .parse::<Rational>()
                    .map_err(|_| Failure::Usage(format!("`{s}` is not a rational")))
            };
            Some(XyzParams {
                x: q(x)?,
                y: q(y)?,
                z: q(z)?,
                e_z: ez
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("`{ez}` is not an edge count")))?,
            })
        }
        _ => return Err(Failure::Usage("--xyz takes x,y,z,e_z".into())),
    };
    for (g6, g) in read_graphs()? {
        let rec = ks_ingredients(&g, a.r, supplied.as_ref()).map_err(lab_failure)?;
        let mut v = serde_json::to_value(&rec).map_err(|e| Failure::Other(e.to_string()))?;
        v["g6"] = json!(g6);
        emit(out, &v)?;
    }
    Ok(0)
}

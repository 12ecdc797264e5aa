use std::io::Write;

use dimension::{
    box_count, build_tree, cell_grid, cover_family, critical_exponent, frostman_check, orbit_sample, poincare_partial,
    BoxInput, CoverConfig, CoverFamily, ExponentConfig, FrostmanConfig, Source, TreeConfig,
};
use divergence::{doa_test, write_tables_csv, DoaConfig};
use excursions::{
    sandwich_check, time_average, time_average_grid, trace_ray, Horoball, RayTarget, RayTrace, Region, Termination,
};
use schottky::{build_group, geometry_constants, validate_ping_pong, SchottkyGroup};
use serde_json::{json, Value};
use symbolic::{classify_code, endpoint, reduce, ClassKind, SequenceSpec};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Output;

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

pub fn group(config: &RunConfig) -> Result<SchottkyGroup, CliError> {
    Ok(build_group(config.group_params())?)
}

fn parse_spec(text: &str) -> Result<SequenceSpec, CliError> {
    Ok(text.parse()?)
}

pub fn validate(config: &RunConfig, out: &mut Output) -> Result<Value, CliError> {
    let g = group(config)?;
    let report = validate_ping_pong(g.regions());
    let pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|p| json!({ "a": p.a.to_string(), "b": p.b.to_string(), "gap": p.gap, "required": p.required, "ok": p.ok() }))
        .collect();
    let result = json!({
        "ok": report.ok,
        "min_gap": report.min_gap,
        "base_clearance": report.base_clearance,
        "pairs": pairs,
        "constants": geometry_constants(&g),
    });
    out.json("validate.json", result.clone())?;
    if !report.ok {
        let worst = report.worst_pair().map(|p| format!("D({}) and D({}) gap {:.3e}", p.a, p.b, p.gap));
        return Err(CliError::Check(format!("ping-pong regions overlap: {}", worst.unwrap_or_default())));
    }
    Ok(result)
}

fn kind_name(k: ClassKind) -> &'static str {
    match k {
        ClassKind::Parabolic => "parabolic",
        ClassKind::BoundedRadial => "bounded-radial",
        ClassKind::UnboundedRadial => "unbounded-radial",
    }
}

pub fn code(config: &RunConfig, spec: &str, blocks: Option<usize>, out: &mut Output) -> Result<Value, CliError> {
    let g = group(config)?;
    let s = parse_spec(spec)?;
    let m = blocks.unwrap_or(config.code_blocks);
    let class = classify_code(&s, m);
    let end = endpoint(&s, &g, config.endpoint_tol, config.endpoint_max_blocks);
    let result = json!({
        "spec": s.to_string(),
        "class": kind_name(class.kind),
        "declared": class.declared,
        "inspected_blocks": class.inspected_blocks,
        "max_parabolic": class.max_parabolic,
        "records": class.records,
        "endpoint": { "angle": end.angle, "converged": end.converged, "blocks_used": end.blocks_used, "last_step": end.last_step },
        "prefix": s.prefix(m.min(20)).to_string(),
    });
    out.json("code.json", result.clone())?;
    Ok(result)
}

pub fn criterion(
    config: &RunConfig,
    spec: &str,
    cutoffs: Option<Vec<u64>>,
    q_max: Option<usize>,
    out: &mut Output,
) -> Result<Value, CliError> {
    let g = group(config)?;
    let s = parse_spec(spec)?;
    let ns = cutoffs.unwrap_or_else(|| config.cutoffs.clone());
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::Config { field: "--N".into(), reason: "cut-offs must be positive".into() });
    }
    let doa =
        DoaConfig { s_min: config.doa_s_min, r_min: config.doa_r_min, tail: config.doa_tail, grid: config.q_points };
    let report = doa_test(&s, &ns, q_max.unwrap_or(config.q_max), &g, &doa)?;
    let tables: Vec<_> = report.cutoffs.iter().map(|c| &c.table).collect();
    out.csv("criterion.csv", |buf| write_tables_csv(&tables, buf).map_err(csv_err))?;
    let result: Value = serde_json::from_str(&report.to_json()?).map_err(csv_err)?;
    out.json("criterion.json", result.clone())?;
    Ok(result)
}

fn termination_name(t: &Termination) -> String {
    match t {
        Termination::Horizon => "horizon".into(),
        Termination::EscapedToFunnel => "escaped-to-funnel".into(),
        Termination::PrecisionExhausted => "precision-exhausted".into(),
        Termination::CodeMismatch { expected, found } => {
            format!("code-mismatch: expected {expected}, found {}", found.map_or("none".into(), |l| l.to_string()))
        }
        Termination::CodeExhausted => "code-exhausted".into(),
    }
}

/// Number of leading power blocks of the code that the ray crossed in full.
pub fn matched_blocks(trace: &RayTrace, spec: &SequenceSpec) -> usize {
    let letters = trace.letters();
    let agree = letters.iter().zip(spec.letters()).take_while(|(a, b)| **a == *b).count();
    let traced = reduce(&letters[..agree]).to_blocks();
    let code = spec.prefix(traced.len() + 1);
    traced.blocks().iter().zip(code.blocks()).take_while(|(a, b)| a == b).count()
}

fn ray(config: &RunConfig, spec: &SequenceSpec, horizon: f64, level: f64) -> Result<RayTrace, CliError> {
    let g = group(config)?;
    Ok(trace_ray(&g, &RayTarget::Code(spec.clone()), horizon, level)?)
}

fn check_termination(t: &Termination) -> Result<(), CliError> {
    match t {
        Termination::PrecisionExhausted => Err(CliError::Budget {
            field: "horizon".into(),
            reason: "boundary target lost precision before the horizon".into(),
        }),
        Termination::CodeMismatch { .. } => Err(CliError::Check(termination_name(t))),
        _ => Ok(()),
    }
}

pub fn trace(
    config: &RunConfig,
    spec: &str,
    horizon: Option<f64>,
    level: Option<f64>,
    out: &mut Output,
) -> Result<Value, CliError> {
    let s = parse_spec(spec)?;
    let horizon = horizon.unwrap_or(config.horizon);
    let tr = ray(config, &s, horizon, level.unwrap_or(config.level))?;
    out.csv("ledger.csv", |buf| tr.write_ledger_csv(buf).map_err(csv_err))?;
    let grid: Vec<f64> = config.time_grid.iter().copied().filter(|t| *t <= horizon).collect();
    let averages: Vec<Value> =
        time_average_grid(&tr, &grid).into_iter().map(|(t, a)| json!({ "t": t, "average": a })).collect();
    let result = json!({
        "spec": s.to_string(),
        "level": tr.level,
        "horizon": tr.horizon,
        "termination": termination_name(&tr.termination),
        "total_time": tr.total_time(),
        "time_w": tr.time_in(Region::W),
        "time_cusp": tr.time_in(Region::Cusp),
        "time_average": time_average(&tr),
        "time_averages": averages,
        "letters": tr.letters().len(),
        "matched_blocks": matched_blocks(&tr, &s),
        "cusp_forever": tr.cusp_forever,
    });
    out.json("trace.json", result.clone())?;
    check_termination(&tr.termination)?;
    Ok(result)
}

pub fn excursion(
    config: &RunConfig,
    spec: &str,
    horizon: Option<f64>,
    level: Option<f64>,
    out: &mut Output,
) -> Result<Value, CliError> {
    let s = parse_spec(spec)?;
    let tr = ray(config, &s, horizon.unwrap_or(config.horizon), level.unwrap_or(config.level))?;
    let horocycle = Horoball::new(tr.level)?.boundary_length();
    let rows: Vec<_> = tr.excursions().into_iter().map(|ex| (ex, sandwich_check(&ex, horocycle))).collect();
    out.csv("excursions.csv", |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record([
            "index",
            "entry_time",
            "exit_time",
            "length",
            "winding",
            "displacement",
            "lower",
            "half_length",
            "upper",
            "ok",
        ])
        .map_err(csv_err)?;
        for (i, (ex, r)) in rows.iter().enumerate() {
            w.write_record([
                i.to_string(),
                format!("{:.12}", ex.entry_time),
                format!("{:.12}", ex.exit_time),
                format!("{:.12}", ex.length),
                ex.winding.to_string(),
                format!("{:.12}", ex.displacement),
                format!("{:.12}", r.lower),
                format!("{:.12}", r.half_length),
                format!("{:.12}", r.upper),
                r.ok.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(csv_err)
    })?;
    let violations = rows.iter().filter(|(_, r)| !r.ok).count();
    let result = json!({
        "spec": s.to_string(),
        "level": tr.level,
        "horocycle_length": horocycle,
        "termination": termination_name(&tr.termination),
        "excursions": rows.len(),
        "sandwich_violations": violations,
        "max_winding": rows.iter().map(|(e, _)| e.winding).max(),
        "longest": rows.iter().map(|(e, _)| e.length).fold(0.0, f64::max),
    });
    out.json("excursion.json", result.clone())?;
    check_termination(&tr.termination)?;
    if violations > 0 {
        return Err(CliError::Check(format!("{violations} excursions break the horocycle sandwich")));
    }
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DimensionMethod {
    Series,
    Cover,
    Frostman,
    Box,
}

pub fn dimension(
    config: &RunConfig,
    method: DimensionMethod,
    source: Source,
    out: &mut Output,
) -> Result<Value, CliError> {
    let g = group(config)?;
    match method {
        DimensionMethod::Series => series(config, &g, source, out),
        DimensionMethod::Cover => cover(config, &g, out),
        DimensionMethod::Frostman => frostman(config, &g, out),
        DimensionMethod::Box => boxes(config, &g, out),
    }
}

pub fn exponent_config(config: &RunConfig) -> ExponentConfig {
    ExponentConfig {
        s_lo: config.exponent_bracket[0],
        s_hi: config.exponent_bracket[1],
        threshold: config.exponent_threshold,
        tol: config.exponent_tol,
        ..ExponentConfig::default()
    }
}

fn series(config: &RunConfig, g: &SchottkyGroup, source: Source, out: &mut Output) -> Result<Value, CliError> {
    let sample = orbit_sample(g, source, config.series_budget);
    if source != Source::Trivial && sample.len() < 2 {
        return Err(CliError::Budget {
            field: "series_budget".into(),
            reason: format!("no orbit point of {source} below {}", config.series_budget),
        });
    }
    let estimate = critical_exponent(&sample, &exponent_config(config))?;
    out.csv("series.csv", |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["s", "n", "count", "sum", "cumulative"]).map_err(csv_err)?;
        for &s in &config.series_exponents {
            for a in poincare_partial(&sample, s).annuli {
                w.write_record([
                    s.to_string(),
                    a.n.to_string(),
                    a.count.to_string(),
                    format!("{:.12e}", a.sum),
                    format!("{:.12e}", a.cumulative),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush().map_err(csv_err)
    })?;
    let result = json!({
        "source": source.to_string(),
        "budget": config.series_budget,
        "points": sample.len(),
        "estimate": estimate,
    });
    out.json("series.json", result.clone())?;
    Ok(result)
}

pub fn cover_families(config: &RunConfig, g: &SchottkyGroup) -> Result<Vec<CoverFamily>, CliError> {
    let mut families = Vec::new();
    for &delta in &config.cover_deltas {
        let c = CoverConfig { n: config.cover_n, delta, budget: config.cover_budget, c2: config.cover_c2 };
        let f = cover_family(c, g)?;
        if f.empty {
            return Err(CliError::Budget {
                field: "cover_budget".into(),
                reason: format!("no word below {} satisfies the cover inequalities at delta = {delta}", c.budget),
            });
        }
        families.push(f);
    }
    Ok(families)
}

fn cover(config: &RunConfig, g: &SchottkyGroup, out: &mut Output) -> Result<Value, CliError> {
    let families = cover_families(config, g)?;
    out.csv("cover_annuli.csv", |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["delta", "t", "members", "omegas", "parabolics"]).map_err(csv_err)?;
        for f in &families {
            for a in &f.annuli {
                w.write_record([
                    f.config.delta.to_string(),
                    a.t.to_string(),
                    a.members.to_string(),
                    a.omegas.to_string(),
                    a.parabolics.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush().map_err(csv_err)
    })?;
    let summary: Vec<Value> = families
        .iter()
        .map(|f| {
            let sums: Vec<Value> =
                config.cover_exponents.iter().map(|&s| json!({ "s": s, "sum": f.power_sum(s) })).collect();
            json!({ "delta": f.config.delta, "members": f.members.len(), "visited": f.visited, "power_sums": sums })
        })
        .collect();
    // does each sum drop as delta shrinks from one entry to the next
    let trends: Vec<Value> = config
        .cover_exponents
        .iter()
        .map(|&s| {
            let sums: Vec<f64> = families.iter().map(|f| f.power_sum(s)).collect();
            json!({ "s": s, "decreasing": sums.windows(2).all(|w| w[1] < w[0]) })
        })
        .collect();
    let result = json!({
        "n": config.cover_n,
        "budget": config.cover_budget,
        "c2": config.cover_c2,
        "families": summary,
        "trends": trends,
    });
    out.json("cover.json", result.clone())?;
    Ok(result)
}

pub fn frostman_config(config: &RunConfig) -> FrostmanConfig {
    FrostmanConfig {
        s: config.frostman_s,
        shallow: config.tree_depths[0],
        deep: config.tree_depths[1],
        samples: config.ball_samples,
        seed: config.seed,
    }
}

fn frostman(config: &RunConfig, g: &SchottkyGroup, out: &mut Output) -> Result<Value, CliError> {
    let report = frostman_check(g, &frostman_config(config))?;
    let mut tree = build_tree(g, TreeConfig::new(config.tree_depths[1]))?;
    tree.assign_measure(config.frostman_s);
    let tree_json: Value = serde_json::from_str(&tree.to_json()?).map_err(csv_err)?;
    out.json("tree.json", tree_json)?;
    let result = json!({ "report": report, "estimate": report.estimate() });
    out.json("frostman.json", result.clone())?;
    Ok(result)
}

fn boxes(config: &RunConfig, g: &SchottkyGroup, out: &mut Output) -> Result<Value, CliError> {
    let delta = config.cover_deltas.iter().copied().fold(f64::INFINITY, f64::min);
    let c = CoverConfig { n: config.cover_n, delta, budget: config.cover_budget, c2: config.cover_c2 };
    let f = cover_family(c, g)?;
    if f.empty {
        return Err(CliError::Budget {
            field: "cover_budget".into(),
            reason: format!("empty cover at delta = {delta}"),
        });
    }
    let arcs: Vec<(f64, f64)> = f.arcs().map(|a| (a.direction, a.half_angle())).collect();
    let estimate =
        box_count(&BoxInput::Arcs(arcs), &cell_grid(config.box_cells[0], config.box_cells[1], config.box_scales))?;
    let result = json!({ "delta": delta, "arcs": f.members.len(), "estimate": estimate });
    out.json("box.json", result.clone())?;
    Ok(result)
}

/// Short human summary of a result for the terminal.
pub fn summarize(result: &Value, mut w: impl Write) -> std::io::Result<()> {
    let pick = ["ok", "class", "verdict", "termination", "time_average", "sandwich_violations", "estimate", "trends"];
    for k in pick {
        if let Some(v) = result.get(k) {
            match v {
                Value::Object(o) if o.contains_key("value") => {
                    writeln!(w, "{k}: {} ± {}", o["value"], o["uncertainty"])?;
                }
                _ => writeln!(w, "{k}: {v}")?,
            }
        }
    }
    if let Some(pass) = result.get("report").and_then(|r| r.get("pass")) {
        writeln!(w, "pass: {pass}")?;
    }
    Ok(())
}

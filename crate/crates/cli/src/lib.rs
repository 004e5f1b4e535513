//! Command-line front end: each subcommand runs one family of exact checks
//! and produces a [`Report`].
//!
//! Exit codes: 0 when every check passes, 1 when one fails (or a computation
//! errors), 2 for usage errors.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use qident::ffpoly::{fixed_t_target, telescoped_target, verify_fixed_t_product, verify_telescoped_product};
use qident::glnq::{
    census_report, census_shard, enumerate_classes, gl_order, limit_probability, merge_tallies,
    probability_by_classes, probability_by_cycle_index, semisimple_from_counts, semisimple_shard, shard_count,
    CLASS_ENUMERATION_GUARD,
};
use qident::hall_littlewood::{
    closed_form_specialization, hl_poly_cosets, hl_poly_full_sum, monomial_symmetric, principal_specialization,
    schur_via_alternants, theorem4_check,
};
use qident::partitions::enumerate_partitions;
use qident::qseries::{gordon_product_side, gordon_sum_side, partition_sum_side};
use qident::rational::{self, Rational};
use qident::{Interval, TruncatedSeries};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "QIDENT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "qident", version, about = "Exact checks of Gordon identities, GL(n,q) class statistics and Hall-Littlewood specializations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    /// Field size (prime for census and semisimple)
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Modulus parameter, partitions with largest part < k
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Gordon index 1..=k; all indices when omitted
    #[arg(long, global = true)]
    pub i: Option<u32>,
    /// Matrix size or number of variables
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Degree of the distinguished irreducible
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Truncation order of power series
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Interval tolerance, as "p/q", a decimal, or e.g. 1e-6
    #[arg(long, global = true, value_parser = parse_rational)]
    pub tol: Option<Rational>,
    /// Emit the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for exhaustive enumerations
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Both sides of Gordon's identity as truncated series
    Gordon,
    /// Product over monic irreducibles, fixed exponent and telescoped
    LemmaProduct,
    /// Exhaustive class census of GL(n,q) against class-size formulas
    Census,
    /// Enumerated classes of GL(n,q) with centralizer orders
    ClassSizes,
    /// Exact probability that the partition at a fixed irreducible has largest part < k
    GlnqProb,
    /// Interval for the n -> infinity probability and finite-n distances
    Limit,
    /// Semisimple proportion of Mat(n,q) by two criteria
    Semisimple,
    /// Structure checks for Hall-Littlewood polynomials
    HallLittlewood,
    /// Brackets for both sides of the Hall-Littlewood sum/product identity
    Theorem4,
    /// Every check at the acceptance parameters
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gordon => "gordon",
            Command::LemmaProduct => "lemma-product",
            Command::Census => "census",
            Command::ClassSizes => "class-sizes",
            Command::GlnqProb => "glnq-prob",
            Command::Limit => "limit",
            Command::Semisimple => "semisimple",
            Command::HallLittlewood => "hall-littlewood",
            Command::Theorem4 => "theorem4",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub details: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    /// Plain-text rendering: a status line followed by the summary lines.
    pub fn render_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let mut out = format!("{}: {status} ({} ms)\n", self.command, self.timing_ms);
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !params.is_empty() {
            out += &format!("  parameters: {}\n", params.join(" "));
        }
        if let Some(lines) = self.details.get("summary").and_then(Value::as_array) {
            for line in lines.iter().filter_map(Value::as_str) {
                out += &format!("  {line}\n");
            }
        }
        out
    }
}

/// Accepts `p/q`, plain decimals and scientific notation.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.contains('/') {
        return Rational::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().map_err(|e| format!("invalid exponent in {s:?}: {e}"))?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).map_err(|_| format!("invalid number {s:?}"))?;
    let scale = exponent - frac_part.len() as i64;
    Ok(Rational::from_integer(numer) * rational::pow(&rational::int(10), scale))
}

fn rat(x: &Rational) -> Value {
    json!({ "exact": x.to_string(), "decimal": rational::to_decimal(x) })
}

fn interval(iv: &Interval) -> Value {
    json!({ "lo": rat(&iv.lo), "hi": rat(&iv.hi), "width": rat(&iv.width()) })
}

fn series(s: &TruncatedSeries) -> Value {
    serde_json::to_value(s).expect("series serializes")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report data serializes")
}

type Outcome = Result<(bool, Value), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Resolved parameters with per-command defaults filled in.
#[derive(Debug, Clone)]
struct Resolved {
    q: u64,
    k: u32,
    i: Option<u32>,
    n: u32,
    m: usize,
    trunc: usize,
    tol: Rational,
}

fn resolve(command: Command, p: &Params) -> Resolved {
    let default_n = match command {
        Command::Limit => 8,
        Command::HallLittlewood => 3,
        _ => 2,
    };
    let default_trunc = match command {
        Command::LemmaProduct => 25,
        _ => 40,
    };
    let default_q = match command {
        Command::Limit => 3,
        _ => 2,
    };
    Resolved {
        q: p.q.unwrap_or(default_q),
        k: p.k.unwrap_or(2),
        i: p.i,
        n: p.n.unwrap_or(default_n),
        m: p.m.unwrap_or(1),
        trunc: p.trunc.unwrap_or(default_trunc),
        tol: p.tol.clone().unwrap_or_else(|| rational::ratio(1, 1_000_000)),
    }
}

fn parameters(command: Command, r: &Resolved) -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: Value| {
        out.insert(k.to_string(), v);
    };
    match command {
        Command::Gordon => {
            put("k", json!(r.k));
            put("i", r.i.map_or(Value::Null, |i| json!(i)));
            put("trunc", json!(r.trunc));
        }
        Command::LemmaProduct => {
            put("q", json!(r.q));
            put("trunc", json!(r.trunc));
        }
        Command::Census | Command::ClassSizes | Command::Semisimple => {
            put("n", json!(r.n));
            put("q", json!(r.q));
        }
        Command::GlnqProb => {
            put("n", json!(r.n));
            put("q", json!(r.q));
            put("k", json!(r.k));
            put("m", json!(r.m));
        }
        Command::Limit => {
            put("n", json!(r.n));
            put("q", json!(r.q));
            put("k", json!(r.k));
            put("m", json!(r.m));
            put("tol", json!(r.tol.to_string()));
        }
        Command::HallLittlewood => {
            put("n", json!(r.n));
            put("q", json!(r.q));
        }
        Command::Theorem4 => {
            put("q", json!(r.q));
            put("k", json!(r.k));
            put("tol", json!(r.tol.to_string()));
        }
        Command::All => {}
    }
    if matches!(command, Command::Semisimple) {
        put("tol", json!(r.tol.to_string()));
    }
    out
}

fn gordon(r: &Resolved) -> Outcome {
    if r.k < 2 {
        return Err(format!("k must be >= 2, got {}", r.k));
    }
    let indices: Vec<u32> = match r.i {
        Some(i) => vec![i],
        None => (1..=r.k).collect(),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for i in indices {
        let sum = gordon_sum_side(r.k, i, r.trunc).map_err(err)?;
        let product = gordon_product_side(r.k, i, r.trunc).map_err(err)?;
        let equal = sum == product;
        ok &= equal;
        summary.push(format!("k={} i={i}: sum side {} product side through x^{}", r.k, if equal { "=" } else { "!=" }, r.trunc));
        rows.push(json!({ "i": i, "sum_side": series(&sum), "product_side": series(&product), "equal": equal }));
    }
    let dual = partition_sum_side(r.k, r.trunc).map_err(err)?;
    let dual_equal = dual == gordon_sum_side(r.k, r.k, r.trunc).map_err(err)?;
    ok &= dual_equal;
    summary.push(format!("partition form of the i=k sum side {}", if dual_equal { "agrees" } else { "DISAGREES" }));
    Ok((ok, json!({ "summary": summary, "cases": rows, "partition_sum_side_equal": dual_equal })))
}

fn lemma_product(r: &Resolved) -> Outcome {
    if r.q < 2 {
        return Err(format!("q must be >= 2, got {}", r.q));
    }
    let mut ok = true;
    let mut fixed = Vec::new();
    let mut summary = Vec::new();
    for t in 1..=3 {
        let product = verify_fixed_t_product(r.q, t, r.trunc);
        let equal = product == fixed_t_target(r.q, t, r.trunc);
        ok &= equal;
        summary.push(format!("t={t}: product = 1 - u q^(1-t) {}", if equal { "exactly" } else { "FAILS" }));
        fixed.push(json!({ "t": t, "product": series(&product), "equal": equal }));
    }
    let mut telescoped = Vec::new();
    for t_max in 1..=6 {
        let product = verify_telescoped_product(r.q, t_max, r.trunc).map_err(err)?;
        let equal = product == telescoped_target(r.q, t_max, r.trunc);
        ok &= equal;
        summary.push(format!("t_max={t_max}: telescoped = (1-u)/(1-u/q^t_max) {}", if equal { "exactly" } else { "FAILS" }));
        telescoped.push(json!({ "t_max": t_max, "product": series(&product), "equal": equal }));
    }
    Ok((ok, json!({ "summary": summary, "fixed_t": fixed, "telescoped": telescoped })))
}

fn census(r: &Resolved) -> Outcome {
    let n = r.n as usize;
    let shards = shard_count(n, r.q).map_err(err)?;
    let tally = (0..shards)
        .into_par_iter()
        .map(|lead| census_shard(n, r.q, lead))
        .try_reduce(BTreeMap::new, |a, b| Ok(merge_tallies(a, b)))
        .map_err(err)?;
    let report = census_report(n, r.q, tally).map_err(err)?;
    let ok = report.consistent();
    let mut sizes: Vec<u64> = report.rows.iter().map(|row| row.count).collect();
    sizes.sort_unstable();
    let summary = vec![
        format!("{} classes, {} invertible matrices, |GL| = {}", report.rows.len(), report.total, report.group_order),
        format!("class sizes {}", sizes.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")),
        format!("census counts {} class-size formula", if ok { "match" } else { "DO NOT match" }),
    ];
    Ok((
        ok,
        json!({
            "summary": summary,
            "classes": report.rows.len(),
            "sizes_sorted": sizes,
            "report": to_value(&report),
        }),
    ))
}

fn class_sizes(r: &Resolved) -> Outcome {
    let classes = enumerate_classes(r.n as usize, r.q).map_err(err)?;
    let order = gl_order(r.n, r.q);
    let mut total = num_bigint::BigUint::zero();
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            let size = c.class_size(r.n, r.q);
            total += &size;
            json!({
                "class": to_value(c),
                "centralizer_order": c.centralizer_order(r.q).to_string(),
                "class_size": size.to_string(),
            })
        })
        .collect();
    let ok = total == order;
    let summary = vec![format!("{} classes; sizes sum to {total}, |GL| = {order}", classes.len())];
    Ok((ok, json!({ "summary": summary, "group_order": order.to_string(), "classes": rows })))
}

fn glnq_prob(r: &Resolved) -> Outcome {
    let by_cycle_index = probability_by_cycle_index(r.n, r.q, r.k, r.m).map_err(err)?;
    let by_classes = if (r.n as usize) <= CLASS_ENUMERATION_GUARD {
        Some(probability_by_classes(r.n, r.q, r.k, r.m).map_err(err)?)
    } else {
        None
    };
    let ok = by_classes.as_ref().is_none_or(|p| *p == by_cycle_index);
    let mut summary = vec![format!("value {} = {}", by_cycle_index, rational::to_decimal(&by_cycle_index))];
    summary.push(match &by_classes {
        Some(p) if *p == by_cycle_index => "class sum and cycle index agree".to_string(),
        Some(p) => format!("class sum {p} DISAGREES with cycle index"),
        None => format!("class sum skipped above n = {CLASS_ENUMERATION_GUARD}"),
    });
    Ok((
        ok,
        json!({
            "summary": summary,
            "value": by_cycle_index.to_string(),
            "by_cycle_index": rat(&by_cycle_index),
            "by_classes": by_classes.as_ref().map_or(Value::Null, rat),
        }),
    ))
}

fn limit(r: &Resolved) -> Outcome {
    let iv = limit_probability(r.q, r.k, r.m, &r.tol).map_err(err)?;
    let mut distances = Vec::new();
    for n in 1..=r.n {
        let p = probability_by_cycle_index(n, r.q, r.k, r.m).map_err(err)?;
        distances.push((n, iv.max_distance(&p), p));
    }
    let width_ok = iv.width() <= r.tol;
    let trend_ok = match (distances.first(), distances.last()) {
        (Some(first), Some(last)) if distances.len() > 1 => last.1 < first.1,
        _ => true,
    };
    let summary = vec![
        format!("limit in [{}, {}]", rational::to_decimal(&iv.lo), rational::to_decimal(&iv.hi)),
        format!(
            "|P_n - L| for n = 1..{}: {}",
            r.n,
            distances.iter().map(|d| rational::to_decimal(&d.1)).collect::<Vec<_>>().join(", ")
        ),
    ];
    let rows: Vec<Value> =
        distances.iter().map(|(n, d, p)| json!({ "n": n, "probability": rat(p), "max_distance": rat(d) })).collect();
    Ok((
        width_ok && trend_ok,
        json!({ "summary": summary, "interval": interval(&iv), "width_ok": width_ok, "approaching": trend_ok, "finite_n": rows }),
    ))
}

fn semisimple(r: &Resolved) -> Outcome {
    let n = r.n as usize;
    let shards = shard_count(n, r.q).map_err(err)?;
    let counts = (0..shards)
        .into_par_iter()
        .map(|lead| semisimple_shard(n, r.q, lead))
        .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))
        .map_err(err)?;
    let c = semisimple_from_counts(n, r.q, counts, &r.tol).map_err(err)?;
    let ok = c.criteria_agree();
    let summary = vec![
        format!(
            "semisimple: {} of {} by partitions, {} by radical; proportion {}",
            c.by_partitions,
            c.total,
            c.by_radical,
            rational::to_decimal(&c.proportion)
        ),
        format!(
            "product with exponent r-1: {}; with exponent r: {}",
            rational::to_decimal(&c.exponent_r_minus_1.midpoint()),
            rational::to_decimal(&c.exponent_r.midpoint())
        ),
    ];
    Ok((
        ok,
        json!({
            "summary": summary,
            "total": c.total,
            "by_partitions": c.by_partitions,
            "by_radical": c.by_radical,
            "proportion": rat(&c.proportion),
            "product_exponent_r_minus_1": interval(&c.exponent_r_minus_1),
            "product_exponent_r": interval(&c.exponent_r),
        }),
    ))
}

fn hall_littlewood(r: &Resolved) -> Outcome {
    let n_vars = r.n as usize;
    if n_vars == 0 {
        return Err("need at least one variable".into());
    }
    let points: Vec<Vec<Rational>> = (0..3)
        .map(|s| (0..n_vars).map(|j| rational::ratio((j * j + 3 * j + s + 1) as i64, (s + 2) as i64)).collect())
        .collect();
    let mut ok = true;
    let mut rows = Vec::new();
    for lambda in enumerate_partitions(r.n, None).into_iter().filter(|l| l.len() <= n_vars) {
        let cosets = hl_poly_cosets(&lambda, n_vars).map_err(err)?;
        let full = hl_poly_full_sum(&lambda, n_vars).map_err(err)?;
        let mut schur_ok = true;
        for pt in &points {
            schur_ok &= cosets.eval(pt, &Rational::zero()).map_err(err)? == schur_via_alternants(&lambda, pt).map_err(err)?;
        }
        let monomial: BTreeMap<Vec<u32>, Rational> =
            monomial_symmetric(&lambda, n_vars).map_err(err)?.into_iter().map(|e| (e, Rational::one())).collect();
        let checks = json!({
            "definitions_agree": cosets == full,
            "symmetric": cosets.is_symmetric(),
            "homogeneous": cosets.homogeneous_degree() == Some(lambda.size() as u32),
            "t0_schur": schur_ok,
            "t1_monomial": cosets.at_t(&Rational::one()) == monomial,
        });
        ok &= checks.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
        rows.push(json!({ "lambda": to_value(&lambda), "polynomial": to_value(&cosets), "checks": checks }));
    }
    let mut specializations = Vec::new();
    for lambda in enumerate_partitions(3, None).into_iter().filter(|l| !l.is_empty()) {
        let limit = closed_form_specialization(&lambda, r.q).map_err(err)?;
        let errors: Vec<Rational> = (lambda.len()..=lambda.len() + 5)
            .map(|n| principal_specialization(&lambda, r.q, n).map(|v| (v - &limit).abs()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
        ok &= decreasing;
        specializations.push(json!({
            "lambda": to_value(&lambda),
            "closed_form": rat(&limit),
            "errors": errors.iter().map(rat).collect::<Vec<_>>(),
            "decreasing": decreasing,
        }));
    }
    let summary = vec![
        format!("{} partitions checked in {n_vars} variables", rows.len()),
        format!("principal specializations at q = {} converge for {} partitions", r.q, specializations.len()),
    ];
    Ok((ok, json!({ "summary": summary, "polynomials": rows, "specializations": specializations })))
}

fn theorem4(r: &Resolved) -> Outcome {
    let check = theorem4_check(r.q, r.k, &r.tol).map_err(err)?;
    let summary = vec![
        format!(
            "sum side in [{}, {}] from {} partitions",
            rational::to_decimal(&check.lhs_interval.lo),
            rational::to_decimal(&check.lhs_interval.hi),
            check.lhs_terms
        ),
        format!(
            "product side in [{}, {}]",
            rational::to_decimal(&check.rhs_interval.lo),
            rational::to_decimal(&check.rhs_interval.hi)
        ),
    ];
    Ok((
        check.consistent,
        json!({
            "summary": summary,
            "lhs_interval": interval(&check.lhs_interval),
            "rhs_interval": interval(&check.rhs_interval),
            "lhs_cutoff": check.lhs_cutoff,
            "consistent": check.consistent,
        }),
    ))
}

fn params_for(q: Option<u64>, k: Option<u32>, n: Option<u32>, m: Option<usize>, trunc: Option<usize>, tol: Option<Rational>) -> Params {
    Params { q, k, i: None, n, m, trunc, tol, json: false, threads: None }
}

/// The acceptance parameter sets, as `(command, params)` pairs.
pub fn acceptance_plan() -> Vec<(Command, Params)> {
    let tol6 = Some(rational::ratio(1, 1_000_000));
    let mut plan = Vec::new();
    for k in 2..=4 {
        plan.push((Command::Gordon, params_for(None, Some(k), None, None, Some(40), None)));
    }
    for q in [2, 3, 5] {
        plan.push((Command::LemmaProduct, params_for(Some(q), None, None, None, Some(25), None)));
    }
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        plan.push((Command::Census, params_for(Some(q), None, Some(n), None, None, None)));
    }
    for n in 0..=4 {
        for q in [2, 3] {
            for k in [2, 3] {
                for m in [1, 2] {
                    plan.push((Command::GlnqProb, params_for(Some(q), Some(k), Some(n), Some(m), None, None)));
                }
            }
        }
    }
    plan.push((Command::Limit, params_for(Some(3), Some(2), Some(8), Some(1), None, Some(rational::ratio(1, 100_000_000)))));
    for q in [2, 3, 5] {
        for k in [2, 3] {
            plan.push((Command::Theorem4, params_for(Some(q), Some(k), None, None, None, tol6.clone())));
        }
    }
    for q in [2, 3] {
        plan.push((Command::HallLittlewood, params_for(Some(q), None, Some(4), None, None, None)));
    }
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        plan.push((Command::Semisimple, params_for(Some(q), None, Some(n), None, None, None)));
    }
    plan
}

fn all() -> Outcome {
    let mut ok = true;
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for (command, params) in acceptance_plan() {
        let report = execute(command, &params);
        ok &= report.status == Status::Pass;
        let p: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        summary.push(format!(
            "{:<16} {:<4} {}",
            report.command,
            if report.status == Status::Pass { "pass" } else { "FAIL" },
            p.join(" ")
        ));
        reports.push(report);
    }
    Ok((ok, json!({ "summary": summary, "reports": to_value(&reports) })))
}

/// Runs one subcommand without parallelism setup.
pub fn execute(command: Command, params: &Params) -> Report {
    let r = resolve(command, params);
    let start = Instant::now();
    let outcome = match command {
        Command::Gordon => gordon(&r),
        Command::LemmaProduct => lemma_product(&r),
        Command::Census => census(&r),
        Command::ClassSizes => class_sizes(&r),
        Command::GlnqProb => glnq_prob(&r),
        Command::Limit => limit(&r),
        Command::Semisimple => semisimple(&r),
        Command::HallLittlewood => hall_littlewood(&r),
        Command::Theorem4 => theorem4(&r),
        Command::All => all(),
    };
    let (status, details) = match outcome {
        Ok((ok, details)) => (Status::from_bool(ok), details),
        Err(message) => (Status::Fail, json!({ "summary": [format!("error: {message}")], "error": message })),
    };
    Report {
        command: command.name().to_string(),
        parameters: parameters(command, &r),
        status,
        details,
        timing_ms: start.elapsed().as_millis(),
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Result<(Report, bool), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let threads = cli.params.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    let report = pool.install(|| execute(cli.command, &cli.params));
    Ok((report, cli.params.json))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/8").unwrap(), rational::ratio(1, 8));
        assert_eq!(parse_rational("1e-6").unwrap(), rational::ratio(1, 1_000_000));
        assert_eq!(parse_rational("0.25").unwrap(), rational::ratio(1, 4));
        assert_eq!(parse_rational("2.5E1").unwrap(), rational::int(25));
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn per_command_defaults() {
        let p = params_for(None, None, None, None, None, None);
        assert_eq!(resolve(Command::LemmaProduct, &p).trunc, 25);
        assert_eq!(resolve(Command::Gordon, &p).trunc, 40);
        assert_eq!(resolve(Command::Limit, &p).q, 3);
    }

    #[test]
    fn plan_covers_every_checking_command() {
        let plan = acceptance_plan();
        for c in [
            Command::Gordon,
            Command::LemmaProduct,
            Command::Census,
            Command::GlnqProb,
            Command::Limit,
            Command::Semisimple,
            Command::HallLittlewood,
            Command::Theorem4,
        ] {
            assert!(plan.iter().any(|(p, _)| *p == c), "{}", c.name());
        }
    }

    #[test]
    fn census_rows_are_deterministic() {
        let p = params_for(Some(2), None, Some(2), None, None, None);
        let a = execute(Command::Census, &p);
        let b = execute(Command::Census, &p);
        assert_eq!(a.details, b.details);
    }
}

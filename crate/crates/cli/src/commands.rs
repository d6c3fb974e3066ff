use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use wahba_core::oracle::{davenport_solve, random_instance, substream, InstanceKind, GENERATOR_ID};
use wahba_core::precondition::precondition;
use wahba_core::{
    rotation_angle_between, solve_two_obs, wahba_cost, Error, ObservationPair, SimilarityReport,
    WahbaFamily,
};

use crate::format::{fmt17, parse_instances, parse_quaternion_arg, q4, q_obs, text_quat, InstanceRecord, F17};
use crate::{Emit, GlobalOpts, OutputFormat};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

pub const BENCH_AGREEMENT_TOL: f64 = 1e-7;

const WATERMARK: &str =
    "frame-B observations were adjusted by --precondition; the attitude is exact for the adjusted data only";

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INFEASIBLE
    }
}

fn read_input(path: &Path) -> Result<Vec<InstanceRecord>, u8> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    if let Err(e) = read {
        eprintln!("error: cannot read {}: {e}", path.display());
        return Err(EXIT_USAGE);
    }
    parse_instances(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn emit_json<T: Serialize>(out: &mut impl Write, value: &T) {
    let line = serde_json::to_string(value).expect("serializable output");
    let _ = writeln!(out, "{line}");
}

fn describe(r: &InstanceRecord) -> String {
    match &r.label {
        Some(l) => format!("line {} ({l})", r.line),
        None => format!("line {}", r.line),
    }
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    line: usize,
    label: Option<&'a str>,
    error: String,
    exit: u8,
}

fn report_error(out: &mut impl Write, g: &GlobalOpts, r: &InstanceRecord, e: &Error) -> u8 {
    let code = exit_code(e);
    eprintln!("{}: {e}", describe(r));
    if g.format == OutputFormat::Machine {
        emit_json(out, &ErrorLine { line: r.line, label: r.label.as_deref(), error: e.to_string(), exit: code });
    }
    code
}

#[derive(Serialize)]
struct ReportJson {
    verdict: bool,
    scalar_residual: F17,
    modulus_residual: F17,
    inner_residual: Option<F17>,
    tolerance: F17,
    scale: F17,
}

impl From<&SimilarityReport> for ReportJson {
    fn from(r: &SimilarityReport) -> Self {
        Self {
            verdict: r.verdict,
            scalar_residual: F17(r.scalar_residual),
            modulus_residual: F17(r.modulus_residual),
            inner_residual: r.inner_residual.map(F17),
            tolerance: F17(r.tolerance_used),
            scale: F17(r.scale),
        }
    }
}

fn text_report(out: &mut impl Write, r: &SimilarityReport) {
    let _ = writeln!(out, "  verdict           {}", if r.verdict { "similar" } else { "not similar" });
    let _ = writeln!(out, "  scalar residual   {}", fmt17(r.scalar_residual));
    let _ = writeln!(out, "  modulus residual  {}", fmt17(r.modulus_residual));
    if let Some(x) = r.inner_residual {
        let _ = writeln!(out, "  inner residual    {}", fmt17(x));
    }
    let _ = writeln!(out, "  threshold         {}", fmt17(r.tolerance_used * r.scale));
}

pub fn check(input: &Path, g: &GlobalOpts) -> u8 {
    let records = match read_input(input) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut out = io::stdout().lock();
    let mut worst = EXIT_OK;
    for r in &records {
        let pair = match ObservationPair::new(r.a1, r.a2, r.b1, r.b2, g.tol) {
            Ok(p) => p,
            Err(e) => {
                worst = worst.max(report_error(&mut out, g, r, &e));
                continue;
            }
        };
        if !pair.report.verdict {
            worst = worst.max(EXIT_INFEASIBLE);
        }
        match g.format {
            OutputFormat::Machine => {
                #[derive(Serialize)]
                struct Line<'a> {
                    line: usize,
                    label: Option<&'a str>,
                    #[serde(flatten)]
                    report: ReportJson,
                }
                emit_json(&mut out, &Line { line: r.line, label: r.label.as_deref(), report: (&pair.report).into() });
            }
            OutputFormat::Text => {
                let _ = writeln!(out, "{}", describe(r));
                text_report(&mut out, &pair.report);
            }
        }
    }
    worst
}

#[derive(Serialize)]
struct Flags {
    collinear: bool,
    q1_antipodal: bool,
    q2_antipodal: bool,
}

#[derive(Serialize)]
struct FamilyJson {
    /// Members are `(λ₁ s + μ₁ t) · q₂(λ₂)`.
    q1_sqrt_part: [F17; 4],
    q1_sqrt_magnitude: F17,
    q1_sum_part: [F17; 4],
    q1_constraint_normal: [F17; 4],
    q1: [F17; 4],
    q2_sqrt_arg: [F17; 4],
    q2_constraint_normal: [F17; 4],
    q2: [F17; 4],
    a3: [F17; 4],
    b3: [F17; 4],
}

impl From<&WahbaFamily> for FamilyJson {
    fn from(f: &WahbaFamily) -> Self {
        Self {
            q1_sqrt_part: q4(f.q1_family.sqrt_part),
            q1_sqrt_magnitude: F17(f.q1_family.sqrt_magnitude),
            q1_sum_part: q4(f.q1_family.sum_part),
            q1_constraint_normal: q4(f.q1_family.constraint_normal),
            q1: q4(f.q1),
            q2_sqrt_arg: q4(f.q2_sqrt_arg),
            q2_constraint_normal: q4(f.q2_constraint_normal),
            q2: q4(f.q2),
            a3: q4(f.a3),
            b3: q4(f.b3),
        }
    }
}

#[derive(Serialize)]
struct Adjusted {
    watermark: &'static str,
    b1: Vec<F17>,
    b2: Vec<F17>,
    original: ReportJson,
    original_cost: F17,
}

#[derive(Serialize)]
struct SolveLine<'a> {
    line: usize,
    label: Option<&'a str>,
    canonical: [F17; 4],
    cost: F17,
    flags: Flags,
    preconditioned: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    adjusted: Option<Adjusted>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyJson>,
}

fn text_family(out: &mut impl Write, f: &WahbaFamily) {
    let s = &f.q1_family;
    let _ = writeln!(out, "  family");
    if s.antipodal {
        let _ = writeln!(out, "    q1 = λ1·{}·d, d pure, d ⊥ {}", fmt17(s.sqrt_magnitude), text_quat(s.constraint_normal));
    } else {
        let _ = writeln!(out, "    q1 = λ1·{} + μ1·{}", text_quat(s.sqrt_part), text_quat(s.sum_part));
    }
    let _ = writeln!(out, "    q1 (λ1=1, μ1=0)  {}", text_quat(f.q1));
    if f.collinear {
        let _ = writeln!(out, "    q = λ2·q1 (second observation adds no constraint)");
        return;
    }
    let _ = writeln!(out, "    q2 = λ2·√{}", text_quat(f.q2_sqrt_arg));
    if f.q2_antipodal {
        let _ = writeln!(out, "    q2 pure, ⊥ {}", text_quat(f.q2_constraint_normal));
    }
    let _ = writeln!(out, "    q2 (λ2=1)        {}", text_quat(f.q2));
    let _ = writeln!(out, "    a3               {}", text_quat(f.a3));
    let _ = writeln!(out, "    b3               {}", text_quat(f.b3));
}

pub fn solve(input: &Path, g: &GlobalOpts, emit: Emit, use_precondition: bool) -> u8 {
    let records = match read_input(input) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut out = io::stdout().lock();
    let mut worst = EXIT_OK;
    for r in &records {
        let result = ObservationPair::new(r.a1, r.a2, r.b1, r.b2, g.tol).and_then(|pair| {
            let mut adjusted = None;
            let target = if use_precondition && !pair.report.verdict {
                let p = precondition(&pair, g.tol)?;
                adjusted = Some(pair);
                p
            } else {
                pair
            };
            let family = solve_two_obs(&target, g.tol)?;
            let cost = target.cost(family.canonical)?;
            Ok((target, adjusted, family, cost))
        });
        let (target, original, family, cost) = match result {
            Ok(v) => v,
            Err(e) => {
                worst = worst.max(report_error(&mut out, g, r, &e));
                continue;
            }
        };
        let flags = Flags {
            collinear: family.collinear,
            q1_antipodal: family.q1_family.antipodal,
            q2_antipodal: family.q2_antipodal,
        };
        let original_cost = match original.map(|o| o.cost(family.canonical)).transpose() {
            Ok(c) => c,
            Err(e) => {
                worst = worst.max(report_error(&mut out, g, r, &e));
                continue;
            }
        };
        match g.format {
            OutputFormat::Machine => {
                let adjusted = original.zip(original_cost).map(|(o, c)| Adjusted {
                    watermark: WATERMARK,
                    b1: q_obs(target.b1),
                    b2: q_obs(target.b2),
                    original: (&o.report).into(),
                    original_cost: F17(c),
                });
                emit_json(
                    &mut out,
                    &SolveLine {
                        line: r.line,
                        label: r.label.as_deref(),
                        canonical: q4(family.canonical),
                        cost: F17(cost),
                        flags,
                        preconditioned: adjusted.is_some(),
                        adjusted,
                        family: (emit == Emit::Family).then(|| (&family).into()),
                    },
                );
            }
            OutputFormat::Text => {
                let _ = writeln!(out, "{}", describe(r));
                if let (Some(o), Some(c)) = (original, original_cost) {
                    let _ = writeln!(out, "  PRECONDITIONED: {WATERMARK}");
                    let _ = writeln!(out, "  adjusted b1 {}", text_quat(target.b1));
                    let _ = writeln!(out, "  adjusted b2 {}", text_quat(target.b2));
                    let _ = writeln!(out, "  original input");
                    text_report(&mut out, &o.report);
                    let _ = writeln!(out, "  cost on original input {}", fmt17(c));
                }
                let _ = writeln!(out, "  canonical   {}", text_quat(family.canonical));
                let _ = writeln!(out, "  cost        {}", fmt17(cost));
                let _ = writeln!(
                    out,
                    "  flags       collinear={} q1_antipodal={} q2_antipodal={}",
                    flags.collinear, flags.q1_antipodal, flags.q2_antipodal
                );
                if emit == Emit::Family {
                    text_family(&mut out, &family);
                }
            }
        }
    }
    worst
}

pub fn cost(input: &Path, g: &GlobalOpts, q: &str) -> u8 {
    let q = match parse_quaternion_arg(q) {
        Ok(q) if q.norm() > 0.0 => q,
        Ok(_) => {
            eprintln!("error: --q must be nonzero");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: --q: {e}");
            return EXIT_USAGE;
        }
    };
    let records = match read_input(input) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut out = io::stdout().lock();
    let mut worst = EXIT_OK;
    for r in &records {
        let c = match wahba_cost(q, &[(r.a1, r.b1), (r.a2, r.b2)]) {
            Ok(c) => c,
            Err(e) => {
                worst = worst.max(report_error(&mut out, g, r, &e));
                continue;
            }
        };
        match g.format {
            OutputFormat::Machine => {
                #[derive(Serialize)]
                struct Line<'a> {
                    line: usize,
                    label: Option<&'a str>,
                    q: [F17; 4],
                    cost: F17,
                }
                emit_json(&mut out, &Line { line: r.line, label: r.label.as_deref(), q: q4(q), cost: F17(c) });
            }
            OutputFormat::Text => {
                let _ = writeln!(out, "{}  cost {}", describe(r), fmt17(c));
            }
        }
    }
    worst
}

#[derive(Serialize)]
struct GeneratedLine<'a> {
    a1: Vec<F17>,
    a2: Vec<F17>,
    b1: Vec<F17>,
    b2: Vec<F17>,
    label: String,
    seed: u64,
    kind: &'a str,
    rng: &'a str,
    truth: [F17; 4],
    index: u64,
}

/// Always writes the instance format, whatever `--format` says, so that the
/// output can be fed back to the other subcommands.
pub fn generate(n: u64, seed: u64, kind: InstanceKind, _g: &GlobalOpts) -> u8 {
    let mut out = io::BufWriter::new(io::stdout().lock());
    for i in 0..n {
        let s = substream(seed, i);
        let inst = random_instance(s, kind);
        let p = inst.pair;
        emit_json(
            &mut out,
            &GeneratedLine {
                a1: q_obs(p.a1),
                a2: q_obs(p.a2),
                b1: q_obs(p.b1),
                b2: q_obs(p.b2),
                label: format!("{}-{seed}-{i}", kind.as_str()),
                seed: s,
                kind: kind.as_str(),
                rng: GENERATOR_ID,
                truth: q4(inst.truth),
                index: i,
            },
        );
    }
    let _ = out.flush();
    EXIT_OK
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timing {
    pub median_ns: f64,
    pub p99_ns: Option<f64>,
    pub mean_ns: f64,
}

/// Nearest-rank percentiles; p99 needs at least two samples.
pub fn timing(samples: &mut [f64]) -> Timing {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    let rank = |p: f64| samples[((p * n as f64).ceil() as usize).clamp(1, n) - 1];
    let median = if n % 2 == 1 { samples[n / 2] } else { 0.5 * (samples[n / 2 - 1] + samples[n / 2]) };
    Timing {
        median_ns: median,
        p99_ns: (n >= 2).then(|| rank(0.99)),
        mean_ns: samples.iter().sum::<f64>() / n as f64,
    }
}

fn time_ns<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = std::hint::black_box(f());
    (v, start.elapsed().as_nanos() as f64)
}

pub fn bench(n: usize, seed: u64, g: &GlobalOpts) -> u8 {
    let instances: Vec<ObservationPair> =
        (0..n as u64).map(|i| random_instance(substream(seed, i), InstanceKind::Generic).pair).collect();
    let mut closed_ns = Vec::with_capacity(n);
    let mut eigen_ns = Vec::with_capacity(n);
    let mut max_angle = 0.0f64;
    let mut failures = 0usize;
    for p in &instances {
        let pairs = p.pairs();
        let (closed, t1) = time_ns(|| solve_two_obs(p, g.tol).map(|f| f.canonical));
        let (eigen, t2) = time_ns(|| davenport_solve(&pairs));
        closed_ns.push(t1);
        eigen_ns.push(t2);
        match (closed, eigen) {
            (Ok(a), Ok(b)) => match rotation_angle_between(a, b) {
                Ok(angle) => max_angle = max_angle.max(angle),
                Err(_) => failures += 1,
            },
            _ => failures += 1,
        }
    }
    let closed = timing(&mut closed_ns);
    let eigen = timing(&mut eigen_ns);
    let agree = failures == 0 && max_angle <= BENCH_AGREEMENT_TOL;

    let mut out = io::stdout().lock();
    match g.format {
        OutputFormat::Machine => {
            #[derive(Serialize)]
            struct T {
                median_ns: F17,
                p99_ns: Option<F17>,
                mean_ns: F17,
            }
            let t = |x: Timing| T { median_ns: F17(x.median_ns), p99_ns: x.p99_ns.map(F17), mean_ns: F17(x.mean_ns) };
            #[derive(Serialize)]
            struct Report {
                n: usize,
                seed: u64,
                closed_form: T,
                davenport: T,
                max_disagreement_rad: F17,
                agreement_tol_rad: F17,
                failures: usize,
                agree: bool,
            }
            emit_json(
                &mut out,
                &Report {
                    n,
                    seed,
                    closed_form: t(closed),
                    davenport: t(eigen),
                    max_disagreement_rad: F17(max_angle),
                    agreement_tol_rad: F17(BENCH_AGREEMENT_TOL),
                    failures,
                    agree,
                },
            );
        }
        OutputFormat::Text => {
            let p99 = |x: Timing| x.p99_ns.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.0}"));
            let _ = writeln!(out, "instances        {n} (seed {seed})");
            let _ = writeln!(out, "{:<16} {:>12} {:>12} {:>12}", "solver", "median ns", "p99 ns", "mean ns");
            for (name, x) in [("closed-form", closed), ("davenport", eigen)] {
                let _ = writeln!(out, "{name:<16} {:>12.0} {:>12} {:>12.0}", x.median_ns, p99(x), x.mean_ns);
            }
            let _ = writeln!(out, "max disagreement {} rad (limit {})", fmt17(max_angle), fmt17(BENCH_AGREEMENT_TOL));
            let _ = writeln!(out, "failures         {failures}");
            let _ = writeln!(out, "agreement        {}", if agree { "ok" } else { "FAILED" });
        }
    }
    if agree {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}

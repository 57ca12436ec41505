//! Command-line surface for the orbifold quantum cohomology toolkit:
//! classification, Chen–Ruan ring tables, tear-drop reconstruction, WDVV
//! audits, quantum-Euler determinant checks, small-quantum solving, and
//! Hurwitz queries, all wrapped in a reproducible JSON report envelope.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use orbiq_core::curve::{
    chen_ruan_mul, cr_basis_mul, pairing_value, CohClass, CurveClass, OrbiCurve,
};
use orbiq_core::error::Error;
use orbiq_core::frobenius::{leading_det_check, AlgebraData};
use orbiq_core::hurwitz::{
    hurwitz_connected, rh_feasible, transitive_fraction_enumeration, HurwitzQuery, Partition,
    MAX_ENUMERATION_DEGREE,
};
use orbiq_core::potential::{assemble_multipoint, Potential};
use orbiq_core::ratio::Ratio;
use orbiq_core::reconstruct::{solve_teardrop, verify_structure, MAX_TEARDROP_ORDER};
use orbiq_core::smallqh::{
    presentation, quotient_algebra, semisimplicity_verdict, solve_points_of_quotient, Verdict,
};

use report::{Check, ReportEnvelope};

#[derive(Parser)]
#[command(
    name = "orbiq",
    version,
    about = "exact computations in orbifold quantum cohomology of curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format on standard output.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the JSON report envelope (for `reconstruct`: the potential
    /// artifact) to a file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Orbifold Euler characteristic, classification, and basis table.
    Classify {
        /// Curve literal, e.g. "g=0;a=2,3,5".
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Chen-Ruan ring table with associativity and pairing audits.
    ChenRuan {
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Reconstruct the tear-drop potential of P^1_a from WDVV.
    Reconstruct {
        /// Orbifold order of the single marked point.
        #[arg(long)]
        a: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check every WDVV residual of a stored potential.
    WdvvCheck {
        /// Potential JSON file (as written by `reconstruct`).
        #[arg(long)]
        potential: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Quantum Euler class and its determinant series for a stored potential.
    EulerDet {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        potential: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Small quantum cohomology commands.
    #[command(subcommand)]
    Smallqh(SmallqhCommand),
    /// Connected Hurwitz numbers with prescribed ramification.
    Hurwitz {
        #[arg(long)]
        d: u32,
        /// Pipe-separated partitions, e.g. "3|2,1|2,1". Empty for none.
        #[arg(long, default_value = "")]
        profiles: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Full big/small semisimplicity pipeline for one curve or a batch file.
    Pipeline {
        #[arg(long, conflicts_with = "curves")]
        curve: Option<String>,
        /// File with one curve literal per line.
        #[arg(long)]
        curves: Option<PathBuf>,
        /// Largest tear-drop order the reconstruction step will attempt.
        #[arg(long, default_value_t = 4)]
        a_max: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum SmallqhCommand {
    /// Solve the Q-specialized presentation ideal of a Fano curve.
    Solve {
        #[arg(long)]
        curve: String,
        /// Rational specialization of Q.
        #[arg(long, default_value = "1")]
        q: String,
        #[command(flatten)]
        output: OutputOpts,
    },
}

// ---- logging ----

fn log_level() -> u8 {
    match std::env::var("ORBIQ_LOG").as_deref() {
        Ok("debug") => 2,
        Ok("info") => 1,
        _ => 0,
    }
}

macro_rules! log_info {
    ($($arg:tt)*) => {
        if log_level() >= 1 { eprintln!("[info] {}", format!($($arg)*)); }
    };
}

macro_rules! log_debug {
    ($($arg:tt)*) => {
        if log_level() >= 2 { eprintln!("[debug] {}", format!($($arg)*)); }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Classify { curve, output } => run(
            "classify",
            serde_json::json!({"curve": curve}),
            output,
            |env| cmd_classify(curve, env),
        ),
        Command::ChenRuan { curve, output } => run(
            "chen-ruan",
            serde_json::json!({"curve": curve}),
            output,
            |env| cmd_chen_ruan(curve, env),
        ),
        Command::Reconstruct { a, output } => {
            run("reconstruct", serde_json::json!({"a": a}), output, |env| {
                cmd_reconstruct(*a, output, env)
            })
        }
        Command::WdvvCheck { potential, output } => run(
            "wdvv-check",
            serde_json::json!({"potential": potential.display().to_string()}),
            output,
            |env| cmd_wdvv_check(potential, env),
        ),
        Command::EulerDet {
            curve,
            potential,
            output,
        } => run(
            "euler-det",
            serde_json::json!({
                "curve": curve,
                "potential": potential.display().to_string(),
            }),
            output,
            |env| cmd_euler_det(curve.as_deref(), potential, env),
        ),
        Command::Smallqh(SmallqhCommand::Solve { curve, q, output }) => run(
            "smallqh-solve",
            serde_json::json!({"curve": curve, "q": q}),
            output,
            |env| cmd_smallqh_solve(curve, q, env),
        ),
        Command::Hurwitz {
            d,
            profiles,
            output,
        } => run(
            "hurwitz",
            serde_json::json!({"d": d, "profiles": profiles}),
            output,
            |env| cmd_hurwitz(*d, profiles, env),
        ),
        Command::Pipeline {
            curve,
            curves,
            a_max,
            output,
        } => run(
            "pipeline",
            serde_json::json!({
                "curve": curve,
                "curves": curves.as_ref().map(|p| p.display().to_string()),
                "a_max": a_max,
            }),
            output,
            |env| cmd_pipeline(curve.as_deref(), curves.as_deref(), *a_max, env),
        ),
    };
    log_debug!("total wall time {:?}", started.elapsed());
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            // malformed inputs are usage errors; everything else is a
            // computation failure
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(
    name: &str,
    inputs: serde_json::Value,
    output: &OutputOpts,
    body: impl FnOnce(&mut ReportEnvelope) -> Result<(), Error>,
) -> Result<ExitCode, Error> {
    let t0 = Instant::now();
    let mut env = ReportEnvelope::new(name, inputs);
    body(&mut env)?;
    env.elapsed_ms = t0.elapsed().as_millis() as u64;
    match output.format {
        Format::Text => print!("{}", env.render_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&env)?),
    }
    if let Some(path) = &output.out {
        if env.command != "reconstruct" {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{}", serde_json::to_string_pretty(&env)?)?;
            log_info!("wrote envelope to {}", path.display());
        }
    }
    Ok(if env.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---- command bodies ----

fn cmd_classify(curve: &str, env: &mut ReportEnvelope) -> Result<(), Error> {
    let c = OrbiCurve::parse(curve)?;
    let basis: Vec<serde_json::Value> = c
        .basis()
        .iter()
        .map(|s| {
            serde_json::json!({
                "index": s.to_string(),
                "orbifold_degree": c.orb_degree(s).to_string(),
            })
        })
        .collect();
    env.results = Some(serde_json::json!({
        "curve": c.literal(),
        "chi_orb": c.euler_char().to_string(),
        "class": c.classify().to_string(),
        "dim": c.dim(),
        "basis": basis,
    }));
    Ok(())
}

fn cmd_chen_ruan(curve: &str, env: &mut ReportEnvelope) -> Result<(), Error> {
    let c = OrbiCurve::parse(curve)?;
    let basis = c.basis();

    let mut table = Vec::new();
    for s in &basis {
        for t in &basis {
            let entry = match cr_basis_mul(&c, s, t) {
                Some((w, k)) => {
                    if k.is_one() {
                        w.to_string()
                    } else {
                        format!("{k} {w}")
                    }
                }
                None => "0".into(),
            };
            table.push(serde_json::json!({
                "left": s.to_string(),
                "right": t.to_string(),
                "product": entry,
            }));
        }
    }

    let cls = |s| CohClass::basis_class(&c, s, Ratio::one());
    let mut assoc_ok = true;
    for &s in &basis {
        for &t in &basis {
            for &u in &basis {
                let left = chen_ruan_mul(&chen_ruan_mul(&cls(s), &cls(t))?, &cls(u))?;
                let right = chen_ruan_mul(&cls(s), &chen_ruan_mul(&cls(t), &cls(u))?)?;
                if left != right {
                    assoc_ok = false;
                }
            }
        }
    }
    env.checks.push(Check::new(
        "associativity",
        assoc_ok,
        format!("all {} basis triples", basis.len().pow(3)),
    ));

    let mut frob_ok = true;
    let mut graded_ok = true;
    for s in &basis {
        for t in &basis {
            if let Some((w, _)) = cr_basis_mul(&c, s, t) {
                if c.orb_degree(&w) != &c.orb_degree(s) + &c.orb_degree(t) {
                    graded_ok = false;
                }
            }
            for u in &basis {
                let lhs = cr_basis_mul(&c, s, t)
                    .map(|(w, k)| &k * &pairing_value(&c, &w, u))
                    .unwrap_or_else(Ratio::zero);
                let rhs = cr_basis_mul(&c, t, u)
                    .map(|(w, k)| &k * &pairing_value(&c, s, &w))
                    .unwrap_or_else(Ratio::zero);
                if lhs != rhs {
                    frob_ok = false;
                }
            }
        }
    }
    env.checks.push(Check::new(
        "grading",
        graded_ok,
        "deg(x cup y) = deg x + deg y",
    ));
    env.checks.push(Check::new(
        "pairing_invariance",
        frob_ok,
        "<x cup y, z> = <x, y cup z> on all triples",
    ));

    env.results = Some(serde_json::json!({
        "curve": c.literal(),
        "dim": c.dim(),
        "products": table,
    }));
    Ok(())
}

fn cmd_reconstruct(a: u32, output: &OutputOpts, env: &mut ReportEnvelope) -> Result<(), Error> {
    if !(2..=MAX_TEARDROP_ORDER).contains(&a) {
        return Err(Error::OrderOutOfRange(a, MAX_TEARDROP_ORDER));
    }
    log_info!("solving tear-drop order {a}");
    let td = solve_teardrop(a)?;
    let f = td.potential()?;

    env.checks.push(Check::new(
        "wdvv_identities",
        f.wdvv_holds(),
        "all residuals vanish at orders q^0 and q^1",
    ));
    let hom = f.homogeneity_report();
    env.checks.push(Check::new(
        "homogeneity",
        hom.pass,
        "deg A = 2 and deg B1 = 2 - chi",
    ));
    for check in verify_structure(&td).checks {
        env.checks
            .push(Check::new(&check.name, check.pass, check.details));
    }

    env.results = Some(serde_json::json!({
        "a": a,
        "A": td.a_part().to_string(),
        "B1": td.b1_part().to_string(),
        "teardrop": td.to_json(),
        "potential": f.to_json(),
    }));
    if let Some(path) = &output.out {
        let mut file = std::fs::File::create(path)?;
        writeln!(file, "{}", serde_json::to_string_pretty(&f.to_json())?)?;
        log_info!("wrote potential to {}", path.display());
    }
    Ok(())
}

fn read_potential(path: &std::path::Path) -> Result<Potential, Error> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    Potential::from_json(&value)
}

fn cmd_wdvv_check(path: &std::path::Path, env: &mut ReportEnvelope) -> Result<(), Error> {
    let f = read_potential(path)?;
    let residuals = f.wdvv_residuals_all();
    let nonzero: Vec<String> = residuals
        .iter()
        .filter(|(_, _, r)| !r.is_zero())
        .map(|(t, s4, _)| format!("({}, {}; {}, {s4})", t.0, t.1, t.2))
        .collect();
    env.checks.push(Check::new(
        "wdvv_residuals_zero",
        nonzero.is_empty(),
        format!("{} residual types checked", residuals.len()),
    ));
    let hom = f.homogeneity_report();
    env.checks.push(Check::new(
        "homogeneity",
        hom.pass,
        "weighted degrees match",
    ));
    env.results = Some(serde_json::json!({
        "curve": f.curve().literal(),
        "residual_types": residuals.len(),
        "nonzero_residuals": nonzero,
    }));
    Ok(())
}

fn cmd_euler_det(
    curve: Option<&str>,
    path: &std::path::Path,
    env: &mut ReportEnvelope,
) -> Result<(), Error> {
    let f = read_potential(path)?;
    if let Some(lit) = curve {
        let c = OrbiCurve::parse(lit)?;
        if &c != f.curve() {
            return Err(Error::CurveMismatch);
        }
    }
    let alg = AlgebraData::from_potential(&f)?;
    let result = alg.euler_det()?;
    let basis = f.curve().basis();
    let element: Vec<serde_json::Value> = basis
        .iter()
        .zip(&result.element)
        .map(|(s, coeff)| {
            serde_json::json!({
                "basis": s.to_string(),
                "q0": coeff.coeff(0).to_string(),
                "q1": coeff.coeff(1).to_string(),
            })
        })
        .collect();
    let rep = leading_det_check(f.curve(), &f)?;
    env.checks.push(Check::new(
        "det_order_zero_vanishes",
        rep.order_zero_vanishes,
        "q^0 coefficient of det(e_q *) is identically zero",
    ));
    env.checks.push(Check::new(
        "det_leading_formula",
        rep.pass,
        format!(
            "leading q-coefficient {} (expected {})",
            rep.leading, rep.expected
        ),
    ));
    env.results = Some(serde_json::json!({
        "curve": f.curve().literal(),
        "euler_class": element,
        "det_q0": rep.det.coeff(0).to_string(),
        "det_q1": rep.det.coeff(1).to_string(),
        "det_q1_leading": rep.leading.to_string(),
        "verdict": result.verdict.to_string(),
    }));
    Ok(())
}

fn cmd_smallqh_solve(curve: &str, q: &str, env: &mut ReportEnvelope) -> Result<(), Error> {
    let c = OrbiCurve::parse(curve)?;
    let qval: Ratio = q.parse()?;
    let alg = presentation(&c, qval)?;
    let quot = quotient_algebra(&alg)?;
    let n = quot.std_monomials.len();
    env.checks.push(Check::new(
        "quotient_dimension",
        n == c.dim(),
        format!("dim = {n}, expected N = {}", c.dim()),
    ));
    let (semisimple, gram) = quot.algebra.trace_form_semisimple();
    let trace_det = orbiq_core::matrix::det_exact(&gram)?;
    env.checks.push(Check::new(
        "trace_form_nondegenerate",
        semisimple,
        format!("det(trace form) = {trace_det}"),
    ));
    let sol = solve_points_of_quotient(&alg, &quot)?;
    env.checks.push(Check::new(
        "distinct_points",
        sol.len() == n && sol.multiplicities.iter().all(|&m| m == 1),
        format!("{} points", sol.len()),
    ));
    env.checks.push(Check::new(
        "residual_bound",
        sol.residual_bound <= 1e-9,
        format!("max |generator| over points = {:.3e}", sol.residual_bound),
    ));
    env.results = Some(serde_json::json!({
        "curve": c.literal(),
        "generators": alg
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>(),
        "dim": n,
        "trace_form_det": trace_det.to_string(),
        "solutions": sol.to_json(),
    }));
    Ok(())
}

fn cmd_hurwitz(d: u32, profiles: &str, env: &mut ReportEnvelope) -> Result<(), Error> {
    let parts: Vec<Partition> = if profiles.trim().is_empty() {
        Vec::new()
    } else {
        profiles
            .split('|')
            .map(Partition::parse)
            .collect::<Result<Vec<_>, _>>()?
    };
    let q = HurwitzQuery::new(d, parts)?;
    let feasible = rh_feasible(&q);
    let value = hurwitz_connected(&q)?;
    if d <= MAX_ENUMERATION_DEGREE && feasible {
        let enumerated = transitive_fraction_enumeration(&q)?;
        env.checks.push(Check::new(
            "paths_agree",
            enumerated == value,
            format!("enumeration {enumerated}, characters {value}"),
        ));
    }
    env.results = Some(serde_json::json!({
        "d": d,
        "profiles": q.profiles.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "rh_feasible": feasible,
        "value": value.to_string(),
    }));
    Ok(())
}

// ---- pipeline ----

fn cmd_pipeline(
    curve: Option<&str>,
    curves: Option<&std::path::Path>,
    a_max: u32,
    env: &mut ReportEnvelope,
) -> Result<(), Error> {
    let literals: Vec<String> = match (curve, curves) {
        (Some(lit), None) => vec![lit.to_string()],
        (None, Some(path)) => std::fs::read_to_string(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect(),
        _ => {
            return Err(Error::Invalid(
                "pass exactly one of --curve or --curves".into(),
            ))
        }
    };
    let mut results = Vec::new();
    for lit in &literals {
        log_info!("pipeline: {lit}");
        let sub = pipeline_one(lit, a_max, env)?;
        results.push(sub);
    }
    env.results = Some(if results.len() == 1 {
        results.pop().unwrap()
    } else {
        serde_json::json!(results)
    });
    Ok(())
}

fn pipeline_one(
    lit: &str,
    a_max: u32,
    env: &mut ReportEnvelope,
) -> Result<serde_json::Value, Error> {
    let c = OrbiCurve::parse(lit)?;
    let tag = |name: &str| format!("{}:{name}", c.literal());
    let class = c.classify();

    // big quantum side
    let big: serde_json::Value = if c.genus() > 0 {
        serde_json::json!({
            "status": "not semisimple",
            "reason": "positive genus: the quantum product equals the Chen-Ruan product, which has nilpotents",
        })
    } else {
        let core: Vec<u32> = c.orders().iter().copied().filter(|&a| a > 1).collect();
        if let Some(&too_big) = core.iter().find(|&&a| a > a_max) {
            serde_json::json!({
                "status": "skipped",
                "reason": format!("reconstruction budget: order {too_big} exceeds --a-max {a_max}"),
            })
        } else {
            let mut tds = Vec::new();
            for &a in &core {
                log_debug!("reconstructing tear drop a = {a}");
                tds.push(solve_teardrop(a)?);
            }
            let f = assemble_multipoint(&tds)?;
            env.checks.push(Check::new(
                &tag("big_wdvv"),
                f.wdvv_holds(),
                "assembled potential satisfies WDVV at q^0 and q^1",
            ));
            let assembly = orbiq_core::hurwitz::b1_assembly_check(f.curve(), &tds)?;
            env.checks.push(Check::new(
                &tag("big_b1_assembly"),
                assembly.pass,
                "degree-one part factors through the Hurwitz count",
            ));
            let rep = leading_det_check(f.curve(), &f)?;
            env.checks.push(Check::new(
                &tag("big_leading_det"),
                rep.pass,
                format!("det(e_q *) = ({}) q + o(q)", rep.leading),
            ));
            serde_json::json!({
                "status": "semisimple",
                "witness": format!("det(e_q *) = ({}) q + o(q) != 0", rep.leading),
            })
        }
    };

    // small quantum side
    let small = match semisimplicity_verdict(&c)? {
        Verdict::Semisimple {
            trace_det,
            solutions,
            algebra,
        } => {
            env.checks.push(Check::new(
                &tag("small_dim"),
                algebra.std_monomials.len() == c.dim(),
                format!("quotient dimension {}", algebra.std_monomials.len()),
            ));
            env.checks.push(Check::new(
                &tag("small_trace_form"),
                !trace_det.is_zero(),
                format!("det(trace form) = {trace_det}"),
            ));
            env.checks.push(Check::new(
                &tag("small_points"),
                solutions.len() == c.dim(),
                format!(
                    "{} distinct points, residual {:.2e}",
                    solutions.len(),
                    solutions.residual_bound
                ),
            ));
            serde_json::json!({
                "status": "semisimple",
                "points": solutions.to_json(),
            })
        }
        Verdict::NotSemisimple { certificate } => {
            env.checks.push(Check::new(
                &tag("small_certificate"),
                certificate.pass,
                format!(
                    "witness {} of degree {}, exponent bound {}, {} filtration rows",
                    certificate.witness,
                    certificate.witness_degree,
                    certificate.exponent_bound,
                    certificate.entries.len()
                ),
            ));
            serde_json::json!({
                "status": "not semisimple",
                "witness": certificate.witness.to_string(),
                "exponent_bound": certificate.exponent_bound,
            })
        }
    };

    // the two verdicts must mirror the classification
    let small_expected = class == CurveClass::Fano;
    let small_got = small["status"] == "semisimple";
    env.checks.push(Check::new(
        &tag("small_semisimple_iff_fano"),
        small_got == small_expected,
        format!("class {class}, small quantum {}", small["status"]),
    ));
    if c.genus() == 0 && big["status"] != "skipped" {
        env.checks.push(Check::new(
            &tag("big_semisimple"),
            big["status"] == "semisimple",
            "big quantum cohomology of a sphere orbifold is generically semisimple",
        ));
    }

    Ok(serde_json::json!({
        "curve": c.literal(),
        "chi_orb": c.euler_char().to_string(),
        "class": class.to_string(),
        "dim": c.dim(),
        "big_quantum": big,
        "small_quantum": small,
    }))
}

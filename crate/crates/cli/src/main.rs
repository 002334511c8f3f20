//! `mlv`: exact MacLane-Vaquie valuations on `K[x]` over characteristic-`p`
//! Puiseux series fields.
//!
//! Subcommands: `eval` (value of a valuation on a polynomial), `chain`
//! (emit the limit-augmentation chain), `verify` (run verification suites),
//! `phi` (print the limit key polynomials). Exit codes: 0 success, 2 usage
//! or parse error, 3 uncertified result.

use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use mlv_core::polyring::CertifiedVal;
use mlv_core::tower::{
    build_chain, run_all_suites, run_suite, suite_names, CheckRecord, Suite, TowerContext,
    VerifyConfig,
};
use mlv_core::valuations::{chain_validate, FiniteCenter, StepKind, Valuation};
use mlv_core::Caps;

use mlv_cli::output::{self, CheckOut, ChainLevelOut, ChainOut, EvalOut, PhiOut};
use mlv_cli::parse::{parse_poly, parse_rat, parse_valuation_spec, ValuationSpec};

#[derive(Parser)]
#[command(name = "mlv", version, about = "Exact MacLane-Vaquie valuations over Puiseux series fields")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Characteristic of the base field (a prime).
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Exponent cap for certified evaluations (a rational).
    #[arg(long = "max-precision", global = true, default_value = "64")]
    max_precision: String,
    /// Family indices tried during stability witness searches.
    #[arg(long = "index-budget", global = true, default_value_t = 16)]
    index_budget: usize,
    /// Samples per randomized verification check.
    #[arg(long, global = true, default_value_t = 30)]
    samples: usize,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Output format: json or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Report real per-check wall times (breaks byte-identical replay).
    #[arg(long, global = true, default_value_t = false)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a valuation on a polynomial.
    Eval {
        /// Valuation spec: rho:n,i | mu:n | vs | w:<series>,<rat>
        #[arg(long)]
        valuation: String,
        /// Polynomial in the input grammar, e.g. "x^2 + x + t^(-1)".
        #[arg(long)]
        poly: String,
    },
    /// Emit the chain of limit augmentations up to a level.
    Chain {
        #[arg(long, default_value_t = 1)]
        levels: u32,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        /// Suite name or "all".
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2)]
        levels: u32,
    },
    /// Print the limit key polynomial phi_n and the additive polynomial psi_n.
    Phi {
        #[arg(long)]
        n: u32,
        /// Also compute and print gamma_n = v_s(phi_n).
        #[arg(long, default_value_t = false)]
        with_gamma: bool,
    },
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn caps_of(cfg: &Config) -> Result<Caps, String> {
    let max_precision = parse_rat(&cfg.max_precision).map_err(|e| e.to_string())?;
    Ok(Caps {
        max_precision,
        index_budget: cfg.index_budget,
        ..Caps::default()
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let cfg = &cli.config;
    if !is_prime(cfg.p) {
        return Err(format!("--p {} is not prime", cfg.p));
    }
    if cfg.format != "json" && cfg.format != "text" {
        return Err(format!("unknown format '{}'", cfg.format));
    }
    let ctx = TowerContext::new(cfg.p);
    let caps = caps_of(cfg)?;
    match &cli.command {
        Command::Eval { valuation, poly } => cmd_eval(&ctx, cfg, &caps, valuation, poly),
        Command::Chain { levels } => cmd_chain(&ctx, cfg, &caps, *levels),
        Command::Verify { suite, levels } => cmd_verify(&ctx, cfg, &caps, suite, *levels),
        Command::Phi { n, with_gamma } => cmd_phi(&ctx, cfg, &caps, *n, *with_gamma),
    }
}

fn cmd_eval(
    ctx: &Rc<TowerContext>,
    cfg: &Config,
    caps: &Caps,
    valuation: &str,
    poly: &str,
) -> Result<ExitCode, String> {
    let tw = ctx.tower();
    let spec = {
        let tw = tw.borrow();
        parse_valuation_spec(valuation, &tw).map_err(|e| e.to_string())?
    };
    let f = {
        let tw = tw.borrow();
        parse_poly(poly, &tw).map_err(|e| e.to_string())?
    };
    let val = match spec {
        ValuationSpec::Rho { n, i } => mlv_core::tower::rho(ctx, n, i).map_err(|e| e.to_string())?,
        ValuationSpec::Mu { n } => mlv_core::tower::mu(ctx, n).map_err(|e| e.to_string())?,
        ValuationSpec::Vs => mlv_core::tower::vs(ctx),
        ValuationSpec::W { center, delta } => {
            Valuation::depth_zero(Rc::new(FiniteCenter::new(ctx.tower(), center)), delta)
        }
    };
    let v = val.value(&f, caps).map_err(|e| e.to_string())?;
    let (out, exact) = EvalOut::from_val(&v);
    if cfg.format == "json" {
        println!("{}", serde_json::to_string(&out).unwrap());
    } else {
        match &v {
            CertifiedVal::Exact(x) => println!("value = {x}"),
            CertifiedVal::LowerBound(b) => println!("value >= {b} (uncertified)"),
        }
    }
    Ok(if exact { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn records_to_out(records: &[CheckRecord], timings: bool) -> Vec<CheckOut> {
    records
        .iter()
        .map(|r| {
            let mut o = CheckOut::from_record(r);
            if !timings {
                o.millis = 0;
            }
            o
        })
        .collect()
}

fn clock(timings: bool) -> Box<dyn FnMut() -> u64> {
    if timings {
        let start = Instant::now();
        Box::new(move || start.elapsed().as_millis() as u64)
    } else {
        Box::new(|| 0)
    }
}

fn cmd_chain(
    ctx: &Rc<TowerContext>,
    cfg: &Config,
    caps: &Caps,
    levels: u32,
) -> Result<ExitCode, String> {
    // build level by level so an uncertified gamma still emits the prefix,
    // marked with its certified bound, and exits 3
    let mut built = levels;
    let mut uncertified: Option<(u32, String)> = None;
    for n in 1..=levels {
        match ctx.gamma_n(n, caps) {
            Ok(_) => {}
            Err(mlv_core::Error::Uncertified { bound, .. }) => {
                built = n - 1;
                uncertified = Some((n, format!(">={}", bound.wire())));
                break;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    let (chain, realizers) = build_chain(ctx, built, caps).map_err(|e| e.to_string())?;
    let checks = chain_validate(&chain, &realizers, caps).map_err(|e| e.to_string())?;
    let tw = ctx.tower();
    let levels_out: Vec<ChainLevelOut> = chain
        .steps
        .iter()
        .enumerate()
        .map(|(n, step)| {
            let tw = tw.borrow();
            let (display, ellipsis) = output::render_poly_display(&step.phi, &tw, 24);
            let prec = step
                .phi
                .coeffs()
                .iter()
                .map(|c| c.precision().clone())
                .min()
                .unwrap_or(mlv_core::exactmath::ValOrInf::Infinity);
            ChainLevelOut {
                n: n as u32,
                kind: if n == 0 {
                    "depth-zero".to_string()
                } else {
                    match step.kind {
                        StepKind::Ordinary => "ordinary".to_string(),
                        StepKind::Limit => "limit".to_string(),
                    }
                },
                degree: step.degree,
                phi: step.phi.render(&tw),
                phi_display: display,
                phi_ellipsis: ellipsis,
                phi_precision: prec.wire(),
                gamma: step.gamma.wire(),
            }
        })
        .collect();
    let all_ok = checks.iter().all(|c| c.ok);
    let mut levels_out = levels_out;
    if let Some((n, bound)) = &uncertified {
        let tw = tw.borrow();
        let phi = ctx.phi_n(*n).map_err(|e| e.to_string())?;
        let (display, ellipsis) = output::render_poly_display(&phi, &tw, 24);
        levels_out.push(ChainLevelOut {
            n: *n,
            kind: "limit".to_string(),
            degree: phi.degree().unwrap_or(0),
            phi: phi.render(&tw),
            phi_display: display,
            phi_ellipsis: ellipsis,
            phi_precision: "inf".to_string(),
            gamma: bound.clone(),
        });
    }
    let out = ChainOut {
        p: cfg.p,
        levels: levels_out,
        validation: checks
            .iter()
            .map(|c| CheckOut {
                suite: "chain".to_string(),
                check_id: c.id.clone(),
                inputs: String::new(),
                expected: String::new(),
                computed: c.detail.clone(),
                status: if c.ok { "pass".to_string() } else { "fail".to_string() },
                error: None,
                millis: 0,
            })
            .collect(),
    };
    if cfg.format == "json" {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for l in &out.levels {
            println!(
                "level {}: kind={} degree={} gamma={} phi={}",
                l.n, l.kind, l.degree, l.gamma, l.phi_display
            );
        }
        for c in &out.validation {
            println!("check {}: {} ({})", c.check_id, c.status, c.computed);
        }
    }
    Ok(if uncertified.is_some() {
        ExitCode::from(3)
    } else if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(
    ctx: &Rc<TowerContext>,
    cfg: &Config,
    caps: &Caps,
    suite: &str,
    levels: u32,
) -> Result<ExitCode, String> {
    let vcfg = VerifyConfig {
        levels,
        samples: cfg.samples,
        seed: cfg.seed,
        caps: caps.clone(),
        gamma_override: None,
    };
    let mut tick = clock(cfg.timings);
    let records = if suite == "all" {
        run_all_suites(ctx, &vcfg, &mut *tick)
    } else {
        let s = Suite::from_name(suite).ok_or_else(|| {
            format!("unknown suite '{suite}' (expected one of {} or all)", suite_names().join(", "))
        })?;
        run_suite(ctx, s, &vcfg, &mut *tick)
    };
    let out = records_to_out(&records, cfg.timings);
    let all_ok = records.iter().all(|r| r.status.passed());
    if cfg.format == "json" {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for r in &out {
            println!(
                "[{}] {} {}: expected {}, computed {}",
                r.status, r.suite, r.check_id, r.expected, r.computed
            );
        }
        println!("{}/{} checks passed", out.iter().filter(|r| r.status == "pass").count(), out.len());
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_phi(
    ctx: &Rc<TowerContext>,
    cfg: &Config,
    caps: &Caps,
    n: u32,
    with_gamma: bool,
) -> Result<ExitCode, String> {
    if n == 0 {
        return Err("phi is defined for n >= 1".to_string());
    }
    let psi = ctx.psi_polynomial(n).map_err(|e| e.to_string())?;
    let phi = ctx.phi_n(n).map_err(|e| e.to_string())?;
    let mut uncertified = false;
    let gamma = if with_gamma {
        match ctx.gamma_n(n, caps) {
            Ok(g) => Some(g.wire()),
            Err(mlv_core::Error::Uncertified { bound, .. }) => {
                uncertified = true;
                Some(format!(">={}", bound.wire()))
            }
            Err(e) => return Err(e.to_string()),
        }
    } else {
        None
    };
    let tw = ctx.tower();
    let out = {
        let tw = tw.borrow();
        PhiOut {
            n,
            degree: phi.degree().unwrap_or(0),
            psi: psi.render(&tw).replace('x', "y"),
            phi: phi.render(&tw),
            gamma,
        }
    };
    if cfg.format == "json" {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("psi_{n}(y) = {}", out.psi);
        println!("phi_{n}(x) = {}", out.phi);
        if let Some(g) = &out.gamma {
            println!("gamma_{n} = {g}");
        }
    }
    Ok(if uncertified { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

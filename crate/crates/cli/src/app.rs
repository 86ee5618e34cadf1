//! Subcommands, exit codes and JSON reports.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lclm_core::decomp::{lclm_decompose, nice_repr, verify_decomposition, InvariantRequest};
use lclm_core::display::{fmt_operator, fmt_ratfunc, fmt_spoly, fmt_ypoly};
use lclm_core::fieldkit::{Fq, RatField, RatFunc};
use lclm_core::ore::{operator_degree, OrePoly, OreRing};
use lclm_core::pcurv::{operators_equivalent, pcurvature, PCurvData};
use lclm_core::yfactor::YPoly;
use serde_json::{json, Value};
use thiserror::Error;

use crate::parse::{parse_operator, parse_ratfunc, parse_ypoly, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_RETRY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "lclm", version, about = "LCLM-decomposition of differential operators over F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Extension degree of F_q over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    /// Modulus coefficients c0,c1,...,1 of F_q over F_p.
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Operator expression; `-` reads stdin. Repeat for two-operator commands.
    #[arg(long, global = true)]
    expr: Vec<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Report `timings_ms` as null, making output reproducible byte for byte.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full decomposition.
    Decompose {
        /// Re-check the factors independently (the default).
        #[arg(long, overrides_with = "no_verify")]
        verify: bool,
        #[arg(long, overrides_with = "verify")]
        no_verify: bool,
    },
    /// p-curvature matrix, characteristic polynomial and invariants.
    Pcurvature,
    Gcrd,
    Lclm,
    /// Apply the operator to an element of F_q(t).
    Apply {
        #[arg(long)]
        to: String,
    },
    /// Model operator with prescribed invariants `Q1;Q2;...` (polynomials in Y).
    Repr {
        #[arg(long)]
        invariants: String,
    },
    /// Whether two operators define isomorphic modules.
    Equivalent,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] lclm_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use lclm_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => EXIT_PARSE,
            CliError::Core(e) => match e {
                E::InseparableFactor(_) | E::CentralIrreducibleFactor(_) => EXIT_HYPOTHESIS,
                E::VerificationFailed(_) => EXIT_VERIFICATION,
                E::RetryExhausted(_) => EXIT_RETRY,
                E::NotPrime(_)
                | E::ReducibleModulus(_)
                | E::DegreeMismatch { .. }
                | E::FieldTooLarge(_)
                | E::NotMonic
                | E::EmptyRequest
                | E::BadRequest(_) => EXIT_PARSE,
                _ => EXIT_OTHER,
            },
            CliError::Io(_) => EXIT_OTHER,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
            if let Some(path) = &cli.common.json_out {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_OTHER;
                }
            }
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx {
    k: RatField,
    ring: OreRing<RatField>,
    field_json: Value,
}

fn context(c: &Common) -> Result<Ctx, CliError> {
    let p = c.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
    let fq = Fq::new(p, c.n, c.modulus.as_deref())?;
    let field_json = json!({ "p": p, "n": c.n, "modulus": fq.modulus() });
    let k = RatField::new(fq);
    Ok(Ctx { ring: OreRing::new(k.clone()), k, field_json })
}

fn read_exprs(c: &Common, stdin: &mut dyn Read, want: usize) -> Result<Vec<String>, CliError> {
    if c.expr.len() != want {
        return Err(CliError::Usage(format!("expected {want} --expr argument(s), got {}", c.expr.len())));
    }
    let mut out = Vec::with_capacity(want);
    for e in &c.expr {
        if e == "-" {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            out.push(s);
        } else {
            out.push(e.clone());
        }
    }
    Ok(out)
}

fn ops(ctx: &Ctx, c: &Common, stdin: &mut dyn Read, want: usize) -> Result<Vec<OrePoly<RatFunc>>, CliError> {
    read_exprs(c, stdin, want)?
        .iter()
        .map(|s| parse_operator(s, &ctx.ring).map_err(CliError::from))
        .collect()
}

fn timings(c: &Common, start: Instant) -> Value {
    if c.no_timings {
        Value::Null
    } else {
        json!({ "total": start.elapsed().as_secs_f64() * 1e3 })
    }
}

/// `P` with `P(Y^p) = Q^p(Y)`, printed in `t^p` form.
fn p_level(k: &RatField, q: &YPoly) -> Result<String, lclm_core::Error> {
    let polys = lclm_core::fieldkit::PolyRing::new(k.clone());
    let qp = polys.pow(q, k.p() as u64);
    let p: YPoly = qp.iter().step_by(k.p() as usize).map(|c| k.contract(c)).collect::<Result<_, _>>()?;
    Ok(fmt_spoly(k, &p))
}

fn pcurv_json(k: &RatField, data: Option<&PCurvData>) -> (Value, Value, Value) {
    match data {
        Some(d) => (
            json!(fmt_spoly(k, &d.charpoly)),
            json!(d.invariants.iter().map(|f| fmt_spoly(k, f)).collect::<Vec<_>>()),
            json!(d.invariant_roots.iter().map(|f| fmt_ypoly(k, f)).collect::<Vec<_>>()),
        ),
        None => (json!("1"), json!([]), json!([])),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Value, CliError> {
    let c = &cli.common;
    let ctx = context(c)?;
    let (k, ring) = (&ctx.k, &ctx.ring);
    let start = Instant::now();
    let nonzero = |op: &OrePoly<RatFunc>| -> Result<(), CliError> {
        if op.is_zero() {
            Err(lclm_core::Error::ZeroOperator.into())
        } else {
            Ok(())
        }
    };
    match &cli.command {
        Command::Decompose { no_verify, .. } => {
            let l = ops(&ctx, c, stdin, 1)?.remove(0);
            nonzero(&l)?;
            let data = if l.ord() == Some(0) { None } else { Some(pcurvature(ring, &l)?) };
            let rep = lclm_decompose(ring, &l, c.seed)?;
            let mut verified = rep.verified();
            if !no_verify {
                verified &= verify_decomposition(ring, &l, &rep.factors).all_pass();
                if !verified {
                    return Err(lclm_core::Error::VerificationFailed("independent re-check failed".into()).into());
                }
            }
            let factors = rep
                .factors
                .iter()
                .zip(&rep.factor_invariants)
                .zip(&rep.indecomposable_checks)
                .map(|((f, q), ind)| {
                    Ok(json!({
                        "expr": fmt_operator(k, f),
                        "order": f.ord(),
                        "degree": operator_degree(k, f),
                        "invariant": p_level(k, q)?,
                        "indecomposable": ind,
                    }))
                })
                .collect::<Result<Vec<_>, lclm_core::Error>>()?;
            let (chi, inv, roots) = pcurv_json(k, data.as_ref());
            Ok(json!({
                "input": fmt_operator(k, &l),
                "field": ctx.field_json,
                "monic_input": fmt_operator(k, &ring.monic(&l)),
                "leading_coeff": fmt_ratfunc(k, &rep.leading_coeff),
                "char_poly": chi,
                "invariants": inv,
                "invariant_roots": roots,
                "factors": factors,
                "iso_witness": rep.iso_witness.as_ref().map(|m| fmt_operator(k, m)),
                "verified": verified,
                "seed": c.seed,
                "timings_ms": timings(c, start),
            }))
        }
        Command::Pcurvature => {
            let l = ops(&ctx, c, stdin, 1)?.remove(0);
            nonzero(&l)?;
            let data = pcurvature(ring, &l)?;
            let matrix: Vec<Vec<String>> =
                (0..data.matrix.rows).map(|i| data.matrix.row(i).iter().map(|x| fmt_ratfunc(k, x)).collect()).collect();
            let (chi, inv, roots) = pcurv_json(k, Some(&data));
            Ok(json!({
                "input": fmt_operator(k, &l),
                "field": ctx.field_json,
                "monic_input": fmt_operator(k, &ring.monic(&l)),
                "matrix": matrix,
                "char_poly": chi,
                "invariants": inv,
                "invariant_roots": roots,
                "timings_ms": timings(c, start),
            }))
        }
        Command::Gcrd | Command::Lclm => {
            let v = ops(&ctx, c, stdin, 2)?;
            let result = if matches!(cli.command, Command::Gcrd) {
                ring.gcrd(&v[0], &v[1])?
            } else {
                ring.lclm2(&v[0], &v[1])?
            };
            Ok(json!({
                "input": v.iter().map(|x| fmt_operator(k, x)).collect::<Vec<_>>(),
                "field": ctx.field_json,
                "result": fmt_operator(k, &result),
                "order": result.ord(),
                "timings_ms": timings(c, start),
            }))
        }
        Command::Apply { to } => {
            let l = ops(&ctx, c, stdin, 1)?.remove(0);
            let f = parse_ratfunc(to, ring)?;
            Ok(json!({
                "input": fmt_operator(k, &l),
                "field": ctx.field_json,
                "argument": fmt_ratfunc(k, &f),
                "result": fmt_ratfunc(k, &ring.apply(&l, &f)),
                "timings_ms": timings(c, start),
            }))
        }
        Command::Repr { invariants } => {
            let chain = invariants
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_ypoly(s, k))
                .collect::<Result<Vec<_>, _>>()?;
            let req = InvariantRequest::new(k, chain)?;
            let nr = nice_repr(ring, &req)?;
            let data = pcurvature(ring, &nr.l_star)?;
            let pieces: Vec<Value> = nr
                .pieces
                .iter()
                .map(|x| json!({ "expr": fmt_operator(k, &x.op), "invariant": fmt_ypoly(k, &x.label), "index": x.index }))
                .collect();
            let (chi, inv, roots) = pcurv_json(k, Some(&data));
            Ok(json!({
                "request": req.chain.iter().map(|q| fmt_ypoly(k, q)).collect::<Vec<_>>(),
                "field": ctx.field_json,
                "l_star": fmt_operator(k, &nr.l_star),
                "pieces": pieces,
                "char_poly": chi,
                "invariants": inv,
                "invariant_roots": roots,
                "timings_ms": timings(c, start),
            }))
        }
        Command::Equivalent => {
            let v = ops(&ctx, c, stdin, 2)?;
            let eq = operators_equivalent(ring, &v[0], &v[1])?;
            Ok(json!({
                "input": v.iter().map(|x| fmt_operator(k, x)).collect::<Vec<_>>(),
                "field": ctx.field_json,
                "equivalent": eq,
                "timings_ms": timings(c, start),
            }))
        }
    }
}

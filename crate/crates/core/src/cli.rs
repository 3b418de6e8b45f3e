//! Command-line front end.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chow::ChowClass;
use crate::constants::{ConstantAtom, ExactConstant};
use crate::forms::catalog;
use crate::radial::{QuadratureConfig, Scheme};
use crate::report::{fmt_f64, VerificationEntry, VerificationReport};
use crate::torsion::{
    height, main_theorem, named_integrals, table_row, tau_route_bb, tau_route_rr, verify_all, TorsionError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hirzebruch",
    version,
    about = "Analytic torsion and arithmetic height of Hirzebruch surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Exact and float τ(S_n) per route
    Torsion,
    /// Arithmetic height as a rational
    Height,
    /// Summary table over a range of n
    Table,
    /// Named integrals: closed form, exact value, quadrature
    Integrals,
    /// Full invariant suite; exits 1 on any failure
    Verify,
    /// Atom basis with reference values
    Constants,
    /// Coefficients of a cataloged (1,1)-form on a u-grid
    Forms,
    /// Rewrite trace of the Segre product α̂³ in JSON
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Rr,
    Bb,
    Closed,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Ruling index
    #[arg(long, global = true, conflicts_with = "n_list")]
    pub n: Option<u32>,
    /// Comma-separated indices; `a..b` denotes an inclusive range
    #[arg(long, global = true, value_parser = parse_n_list)]
    pub n_list: Option<NList>,
    #[arg(long, global = true, value_enum, default_value_t = Route::All)]
    pub route: Route,
    /// Absolute pass tolerance for float checks
    #[arg(long, global = true, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Scheme::GaussKronrod)]
    pub scheme: Scheme,
    /// Subinterval or level budget of the quadrature
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_refinement: usize,
    /// Print τ(ℙ¹) in terms of log 2π, ζ′(−1) and ζ(−1)
    #[arg(long, global = true)]
    pub expand_tau: bool,
    /// Form name for `forms`
    #[arg(long, global = true, default_value = "alpha")]
    pub form: String,
    /// Grid size for `forms`
    #[arg(long, global = true, default_value_t = 11)]
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<u32>);

fn parse_n_list(s: &str) -> Result<NList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let a: u32 = a.parse().map_err(|e| format!("{item}: {e}"))?;
            let b: u32 = b.parse().map_err(|e| format!("{item}: {e}"))?;
            if a > b {
                return Err(format!("empty range {item}"));
            }
            out.extend(a..=b);
        } else {
            out.push(item.parse().map_err(|e| format!("{item}: {e}"))?);
        }
    }
    if out.is_empty() {
        return Err("no indices given".into());
    }
    Ok(NList(out))
}

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

impl From<TorsionError> for Outcome {
    fn from(e: TorsionError) -> Self {
        let code = if e.is_quadrature() {
            EXIT_NO_CONVERGENCE
        } else {
            EXIT_VERIFY_FAILED
        };
        Outcome::fail(code, format!("error: {e}\n"))
    }
}

impl Options {
    fn ns(&self, default: &[u32]) -> Vec<u32> {
        match (&self.n, &self.n_list) {
            (Some(n), _) => vec![*n],
            (None, Some(l)) => l.0.clone(),
            (None, None) => default.to_vec(),
        }
    }

    /// Quadrature target a safety factor below the pass tolerance.
    fn quadrature(&self) -> Result<QuadratureConfig, String> {
        let cfg = QuadratureConfig {
            target_tol: self.tol / QuadratureConfig::SAFETY_FACTOR,
            max_refinement: self.max_refinement,
            scheme: self.scheme,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    fn show(&self, c: &ExactConstant) -> String {
        c.display_with(!self.expand_tau)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    let cfg = match o.quadrature() {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_CONFIG, format!("error: {e}\n")),
    };
    let result = match cli.command {
        Command::Torsion => torsion_cmd(o, &cfg),
        Command::Height => height_cmd(o),
        Command::Table => table_cmd(o, &cfg),
        Command::Integrals => integrals_cmd(o, &cfg),
        Command::Verify => return verify_cmd(o, &cfg),
        Command::Constants => Ok(constants_cmd(o)),
        Command::Forms => return forms_cmd(o),
        Command::Trace => trace_cmd(o),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => e.into(),
    }
}

/// Evaluates `f` over `ns` concurrently, keeping input order.
fn fan_out<T: Send>(ns: &[u32], f: impl Fn(u32) -> Result<T, TorsionError> + Sync) -> Result<Vec<T>, TorsionError> {
    ns.par_iter().map(|&n| f(n)).collect()
}

fn torsion_cmd(o: &Options, cfg: &QuadratureConfig) -> Result<String, TorsionError> {
    let ns = o.ns(&[1]);
    let rows = fan_out(&ns, |n| {
        let mut routes: Vec<(&str, ExactConstant)> = Vec::new();
        let mut main = None;
        match o.route {
            Route::Rr => routes.push(("rr", tau_route_rr(n)?[0].clone())),
            Route::Bb => routes.push(("bb", tau_route_bb(n, cfg)?)),
            Route::Closed | Route::All => {
                let r = main_theorem(n, cfg)?;
                routes.push(("closed", r.tau_closed.clone()));
                if o.route == Route::All {
                    routes.push(("rr", r.tau_rr.clone()));
                    routes.push(("bb", r.tau_bb.clone()));
                }
                main = Some(r.main_theorem_value);
            }
        }
        Ok((n, routes, main))
    })?;
    let mut out = String::new();
    match o.format {
        Format::Text => {
            for (n, routes, main) in &rows {
                let _ = writeln!(out, "n = {n}");
                for (name, t) in routes {
                    let _ = writeln!(out, "  tau_{name} = {}  ({})", o.show(t), fmt_f64(t.to_float()));
                }
                if let Some(m) = main {
                    let _ = writeln!(out, "  tau - log Vol = {}  ({})", o.show(m), fmt_f64(m.to_float()));
                }
            }
        }
        Format::Csv => {
            out.push_str("n,route,tau,tau_float\n");
            for (n, routes, _) in &rows {
                for (name, t) in routes {
                    let _ = writeln!(out, "{n},{name},\"{}\",{}", o.show(t), fmt_f64(t.to_float()));
                }
            }
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(n, routes, main)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), json!(n));
                    for (name, t) in routes {
                        obj.insert(format!("tau_{name}"), json!(o.show(t)));
                        obj.insert(format!("tau_{name}_float"), json!(fmt_f64(t.to_float())));
                    }
                    let agree = routes.windows(2).all(|w| w[0].1 == w[1].1);
                    obj.insert("routes_agree".into(), json!(agree));
                    if let Some(m) = main {
                        obj.insert("main_theorem_value".into(), json!(o.show(m)));
                    }
                    Value::Object(obj)
                })
                .collect();
            out = serde_json::to_string_pretty(&items).expect("json") + "\n";
        }
    }
    Ok(out)
}

fn height_cmd(o: &Options) -> Result<String, TorsionError> {
    let ns = o.ns(&[1]);
    let hs = fan_out(&ns, |n| Ok((n, height(n)?)))?;
    Ok(match o.format {
        Format::Text if hs.len() == 1 => format!("{}\n", hs[0].1),
        Format::Text => hs.iter().map(|(n, h)| format!("n = {n}: {h}\n")).collect(),
        Format::Csv => std::iter::once("n,height\n".to_string())
            .chain(hs.iter().map(|(n, h)| format!("{n},{h}\n")))
            .collect(),
        Format::Json => {
            let v: Vec<Value> = hs
                .iter()
                .map(|(n, h)| json!({"n": n, "height": h.to_string()}))
                .collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    })
}

fn table_cmd(o: &Options, cfg: &QuadratureConfig) -> Result<String, TorsionError> {
    let ns = o.ns(&(0..=10).collect::<Vec<_>>());
    let rows = fan_out(&ns, |n| table_row(n, cfg))?;
    Ok(match o.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    r.height.clone(),
                    fmt_f64(r.tau_float),
                    fmt_f64(r.tau_minus_logvol_float),
                    fmt_f64(r.route_discrepancy),
                    fmt_f64(r.max_integral_discrepancy),
                ])
                .expect("in-memory csv");
            }
            let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
            format!("n,height,tau_float,tau_minus_logvol_float,route_discrepancy,max_integral_discrepancy\n{body}")
        }
        Format::Text => {
            let mut out = format!(
                "{:>4} {:>10} {:>24} {:>24} {:>10} {:>10}\n",
                "n", "height", "tau", "tau-logVol", "route", "integrals"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>10} {:>24} {:>24} {:>10.2e} {:>10.2e}",
                    r.n,
                    r.height,
                    fmt_f64(r.tau_float),
                    fmt_f64(r.tau_minus_logvol_float),
                    r.route_discrepancy,
                    r.max_integral_discrepancy
                );
            }
            out
        }
    })
}

fn emit_report(o: &Options, rep: &VerificationReport) -> String {
    match o.format {
        Format::Text => rep.to_text(),
        Format::Csv => rep.to_csv(),
        Format::Json => rep.to_json() + "\n",
    }
}

fn integrals_cmd(o: &Options, cfg: &QuadratureConfig) -> Result<String, TorsionError> {
    let ns = o.ns(&[1]);
    let per_n = fan_out(&ns, |n| named_integrals(n, cfg))?;
    let entries: Vec<VerificationEntry> = per_n.iter().flatten().flat_map(|i| i.entries(o.tol)).collect();
    Ok(emit_report(o, &VerificationReport::new(entries)))
}

fn verify_cmd(o: &Options, cfg: &QuadratureConfig) -> Outcome {
    let ns = o.ns(&[0, 1, 2, 5, 10]);
    match verify_all(&ns, cfg) {
        Ok(rep) => {
            let code = if rep.all_pass() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Outcome {
                code,
                stdout: emit_report(o, &rep),
                stderr: String::new(),
            }
        }
        Err(e) => e.into(),
    }
}

fn constants_cmd(o: &Options) -> String {
    let atoms = [
        ConstantAtom::One,
        ConstantAtom::LogPi,
        ConstantAtom::LogPrime(2),
        ConstantAtom::ZetaPrimeMinus1,
        ConstantAtom::ZetaMinus1,
    ];
    match o.format {
        Format::Text => atoms
            .iter()
            .map(|a| format!("{:<10} {:<26} {}\n", a.symbol(), fmt_f64(a.value()), a.reference()))
            .collect(),
        Format::Csv => std::iter::once("symbol,value,reference\n".to_string())
            .chain(
                atoms
                    .iter()
                    .map(|a| format!("{},{},{}\n", a.symbol(), fmt_f64(a.value()), a.reference())),
            )
            .collect(),
        Format::Json => {
            let v: Vec<Value> = atoms
                .iter()
                .map(|a| json!({"symbol": a.symbol(), "value": fmt_f64(a.value()), "reference": a.reference()}))
                .collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    }
}

fn forms_cmd(o: &Options) -> Outcome {
    let n = o.ns(&[1])[0];
    let Some((_, form)) = catalog(n).into_iter().find(|(name, _)| *name == o.form) else {
        let names: Vec<_> = catalog(n).into_iter().map(|(name, _)| name).collect();
        return Outcome::fail(
            EXIT_CONFIG,
            format!("error: unknown form {}; known: {}\n", o.form, names.join(", ")),
        );
    };
    if o.points < 2 {
        return Outcome::fail(EXIT_CONFIG, "error: --points must be at least 2\n".into());
    }
    let mut out = String::from("u,fx,fphi\n");
    for u in crate::torsion::log_grid(o.points) {
        let (fx, fphi) = form.eval(u);
        let _ = writeln!(out, "{},{},{}", fmt_f64(u), fmt_f64(fx), fmt_f64(fphi));
    }
    Outcome::ok(out)
}

fn trace_cmd(o: &Options) -> Result<String, TorsionError> {
    let n = o.ns(&[1])[0];
    let a = ChowClass::alpha_hat(n);
    let (a2, mut steps) = a.mul_traced(&a)?;
    let (a3, more) = a2.mul_traced(&a)?;
    steps.extend(more);
    let v = json!({
        "n": n,
        "product": "alpha^3",
        "result": a3.to_string(),
        "steps": steps,
    });
    Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mockchar::genus::{decompose_genus, topological_invariants, GenusSpec};
use mockchar::mock::coefficient_tables;
use mockchar::numerics::{default_samples, SamplePoint};
use mockchar::registry::Object;
use mockchar::series::{parse_rational, rational_string};
use mockchar::{Error, Exec, Exp, QSeries};
use num_complex::Complex64;

mod cache;
mod verify;

use cache::Cache;

#[derive(Parser)]
#[command(name = "mockchar", version, about = "N=4 characters, mock modular decompositions and elliptic genera")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cache directory for expanded series.
    #[arg(long, global = true, env = "MOCKCHAR_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of a named object.
    Expand {
        #[arg(long)]
        object: String,
        /// Truncation order, `N` or `N/D`.
        #[arg(long, default_value = "4")]
        order: String,
    },
    /// Decompose an elliptic genus into N=4 characters.
    Decompose {
        /// `k3`, `sym`, `mixed` or `x2`, or a full selector such as `x2:15`.
        #[arg(long)]
        genus: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long)]
        k2: Option<i64>,
        #[arg(long)]
        k3: Option<i64>,
        #[arg(long)]
        k4: Option<i64>,
        #[arg(long, default_value = "4")]
        order: String,
    },
    /// Emit the γ, α and β coefficient tables.
    Tables {
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, value_enum, default_value_t = Section::All)]
        section: Section,
    },
    /// Run the symbolic and numeric self-checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Replace the standard samples by a single τ, e.g. `0.2+0.9i`.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Section {
    All,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Symbolic,
    Numeric,
    All,
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::UnknownObject(_) | Error::InvalidSpec(_) | Error::Parse(_)) => 2,
            Failure::Core(Error::InconsistentSystem(_) | Error::SingularLeadingBlock) => 3,
            _ => 1,
        }
    }
}

fn parse_order(s: &str) -> Result<Exp, Failure> {
    let r = parse_rational(s)?;
    let bad = || Failure::Core(Error::InvalidSpec(format!("order {s:?} out of range")));
    let n: i64 = r.numer().try_into().map_err(|_| bad())?;
    let d: i64 = r.denom().try_into().map_err(|_| bad())?;
    let e = Exp::new(n, d);
    if e <= Exp::from_integer(0) {
        return Err(bad());
    }
    Ok(e)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Core(Error::Parse(format!("complex number {s:?}")));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn series_csv(s: &QSeries) -> String {
    let mut out = String::from("exponent,upow,coefficient\n");
    for (e, p) in s.terms() {
        let es = if e.is_integer() {
            e.numer().to_string()
        } else {
            format!("{}/{}", e.numer(), e.denom())
        };
        for (m, c) in p.terms() {
            out.push_str(&format!("{es},{m},{}\n", rational_string(c)));
        }
    }
    out
}

fn cmd_expand(cli: &Cli, object: &str, order: &str) -> Result<String, Failure> {
    let order = parse_order(order)?;
    let obj = Object::parse(object)?;
    let name = obj.to_string();
    let cache = (!cli.no_cache).then(|| {
        Cache::new(cli.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("mockchar-cache")))
    });
    let series = match cache.as_ref().and_then(|c| c.load(&name, order)) {
        Some(s) => s,
        None => {
            let s = obj.expand(order)?;
            if let Some(c) = &cache {
                c.store(&name, order, &s)?;
            }
            s
        }
    };
    Ok(match cli.format.unwrap_or(Format::Text) {
        Format::Text => format!("{series}\n"),
        Format::Json => format!("{}\n", series.to_json()),
        Format::Csv => series_csv(&series),
    })
}

fn genus_spec(
    genus: &str,
    k: Option<i64>,
    n: Option<i64>,
    ks: [Option<i64>; 3],
) -> Result<GenusSpec, Failure> {
    let need = |v: Option<i64>, flag: &str| {
        v.ok_or_else(|| Failure::Core(Error::InvalidSpec(format!("--genus {genus} needs --{flag}"))))
    };
    let spec = match genus {
        "k3" => GenusSpec::k3(),
        "sym" => GenusSpec::symmetric_power_sum(need(k, "k")?),
        "x2" => GenusSpec::x2(need(n, "n")?),
        "mixed" => GenusSpec::mixed(need(ks[0], "k2")?, need(ks[1], "k3")?, need(ks[2], "k4")?),
        other => GenusSpec::parse(other)?,
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_decompose(cli: &Cli, spec: &GenusSpec, order: &str) -> Result<String, Failure> {
    let order = parse_order(order)?;
    let report = decompose_genus(spec, order)?;
    if !report.diagnostics.reconstruction_exact {
        return Err(Failure::Core(Error::InconsistentSystem("characters do not re-sum to the genus".into())));
    }
    let inv = topological_invariants(spec, Exp::from_integer(1))?;
    let (euler, sig, ahat) = (
        rational_string(&inv.euler),
        rational_string(&inv.signature()),
        rational_string(&inv.ahat()),
    );
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["invariants"] = serde_json::json!({ "euler": euler, "signature": sig, "ahat": ahat });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("value serializes"))
        }
        Format::Csv => {
            let mut out = report.to_csv();
            for (label, value) in [("euler", &euler), ("signature", &sig), ("ahat", &ahat)] {
                out.push_str(&format!("invariant,{label},0,{value}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "genus {} k={} order={order} chi={euler} signature={sig} ahat={ahat}\n",
                report.genus, report.k,
            );
            for m in &report.massless {
                out.push_str(&format!(
                    "massless 2l={} mult={} ns={}\n",
                    m.two_l,
                    rational_string(&m.raw_mult),
                    rational_string(&m.ns_weighted_mult)
                ));
            }
            for m in &report.massive {
                let cs: Vec<String> = m
                    .weights
                    .iter()
                    .zip(&m.coeffs)
                    .map(|(w, c)| format!("{}:{}", w, rational_string(c)))
                    .collect();
                out.push_str(&format!("massive a={} {}\n", m.a, cs.join(" ")));
            }
            out
        }
    })
}

fn cmd_tables(kmax: i64, section: Section) -> Result<String, Failure> {
    if !(1..=12).contains(&kmax) {
        return Err(Failure::Core(Error::InvalidSpec(format!("kmax {kmax} outside 1..=12"))));
    }
    let t = coefficient_tables(kmax);
    Ok(match section {
        Section::All => t.to_csv(),
        Section::Gamma => t.gamma_csv(),
    })
}

fn cmd_verify(cli: &Cli, suite: Suite, tau: Option<&str>, exec: Exec) -> Result<(String, bool), Failure> {
    let samples = match tau {
        Some(t) => vec![SamplePoint::at_tau(parse_complex(t)?)?],
        None => default_samples(),
    };
    let sym = matches!(suite, Suite::Symbolic | Suite::All)
        .then(|| verify::symbolic(exec))
        .transpose()?;
    let num = matches!(suite, Suite::Numeric | Suite::All)
        .then(|| verify::numeric(&samples, exec))
        .transpose()?;
    let ok = sym.iter().flatten().all(|c| c.pass) && num.iter().flatten().all(|c| c.pass);
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut v = serde_json::Map::new();
            if let Some(s) = &sym {
                v.insert("symbolic".into(), serde_json::to_value(s).expect("checks serialize"));
            }
            if let Some(n) = &num {
                v.insert("numeric".into(), serde_json::to_value(n).expect("results serialize"));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("value serializes"))
        }
        Format::Csv => {
            let mut out = String::from("suite,name,pass,detail\n");
            for c in sym.iter().flatten() {
                out.push_str(&format!("symbolic,{},{},\"{}\"\n", c.name, c.pass, c.detail.replace('"', "'")));
            }
            for r in num.iter().flatten() {
                out.push_str(&format!(
                    "numeric,\"{} @ tau={}{:+}i\",{},{:.3e}\n",
                    r.identity_name, r.sample.tau.re, r.sample.tau.im, r.pass, r.residual
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in sym.iter().flatten() {
                out.push_str(&format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            for r in num.iter().flatten() {
                out.push_str(&format!(
                    "{} {} tau={}{:+}i residual={:.3e} tol={:.0e}{}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity_name,
                    r.sample.tau.re,
                    r.sample.tau.im,
                    r.residual,
                    r.tolerance,
                    r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
                ));
            }
            out
        }
    };
    Ok((text, ok))
}

fn run(cli: &Cli) -> Result<String, (Option<String>, Failure)> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let plain = |r: Result<String, Failure>| r.map_err(|f| (None, f));
    match &cli.command {
        Command::Expand { object, order } => plain(cmd_expand(cli, object, order)),
        Command::Decompose { genus, k, n, k2, k3, k4, order } => {
            plain(genus_spec(genus, *k, *n, [*k2, *k3, *k4]).and_then(|s| cmd_decompose(cli, &s, order)))
        }
        Command::Tables { kmax, section } => plain(cmd_tables(*kmax, *section)),
        Command::Verify { suite, tau } => match cmd_verify(cli, *suite, tau.as_deref(), exec) {
            Ok((text, true)) => Ok(text),
            Ok((text, false)) => Err((Some(text), Failure::ChecksFailed)),
            Err(f) => Err((None, f)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err((partial, failure)) => {
            if let Some(text) = partial {
                print!("{text}");
            }
            match &failure {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::ChecksFailed => eprintln!("error: some checks failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let p = |s| parse_complex(s).ok().unwrap();
        assert_eq!(p("0.2+0.9i"), Complex64::new(0.2, 0.9));
        assert_eq!(p("-0.37+1.21i"), Complex64::new(-0.37, 1.21));
        assert_eq!(p("i"), Complex64::new(0.0, 1.0));
        assert_eq!(p("1.5i"), Complex64::new(0.0, 1.5));
        assert_eq!(p("0.1-2e-1i"), Complex64::new(0.1, -0.2));
        assert!(parse_complex("x+yi").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("7/2").ok(), Some(Exp::new(7, 2)));
        assert!(parse_order("0").is_err());
        assert!(parse_order("-1").is_err());
    }
}

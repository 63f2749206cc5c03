//! Command-line front end: loads action-spec files, runs the engine, and
//! emits tables. Exit codes: 0 success, 1 usage error, 2 domain error,
//! 3 internal assertion (non-integer zeta coefficient, oracle mismatch).

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use zdzeta::action::{self, ActionSpec};
use zdzeta::error::Error;
use zdzeta::factored::Factored;
use zdzeta::lattice::Subgroup;
use zdzeta::specfile;
use zdzeta::zeta::{self, Classification};
use zdzeta::{oracle, primescan};

#[derive(Parser)]
#[command(name = "zdzeta", version, about = "Exact periodic-point and zeta data for algebraic Z^d-actions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for batch scans (deterministic output regardless)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Render exact values as decimal integers instead of factored strings
    #[arg(long, global = true)]
    decimal: bool,
    /// Write tabular output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tabular output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact count of points fixed by one finite-index subgroup
    Count {
        #[arg(long)]
        spec: PathBuf,
        /// Row-major HNF entries, e.g. 3,1,0,1 (d >= 2)
        #[arg(long)]
        hnf: Option<String>,
        /// Index n for one-dimensional specs (subgroup nZ)
        #[arg(long)]
        n: Option<u64>,
    },
    /// Orbit sums a_n and exact zeta Taylor coefficients c_k
    Zeta {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 32)]
        terms: u64,
    },
    /// Scan max log F / index with a certified tail bound
    Growth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "max-index", default_value_t = 7)]
        max_index: u64,
    },
    /// Rational-or-boundary dichotomy for one-dimensional specs
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Entropy-normalized subsequence values along a boundary witness
    Overconv {
        #[arg(long)]
        spec: PathBuf,
        /// Witness place, e.g. "1,1" for (t+1); default: first witness
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Pole-cluster rings of a suspended spec
    Poles {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "max-index", default_value_t = 8)]
        max_index: u64,
    },
    /// Value sets of counts at prime indices with qualifying flags
    Primescan {
        #[arg(long)]
        spec: PathBuf,
        /// epsilon as an exact rational, e.g. 1/10
        #[arg(long, default_value = "1/10")]
        eps: String,
        #[arg(long, default_value_t = 600)]
        qmax: u64,
    },
    /// Cross-validate formula counts against the matrix oracle
    Validate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "max-index", default_value_t = 24)]
        max_index: u64,
        /// Cap on the group-algebra dimension
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Sum of divisors
    Sigma { n: u64 },
    /// Divisor-sum growth witness along a congruence class
    Gronwall {
        #[arg(long, default_value_t = 0)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 5)]
        k: u64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn load(path: &Path) -> Result<(ActionSpec, String), Error> {
    let spec = specfile::load_spec(path)?;
    let bytes =
        std::fs::read(path).map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((spec, format!("{name} sha256={digest}")))
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn new(out: &Option<PathBuf>) -> Result<Output, Error> {
        let sink: Box<dyn Write> = match out {
            None => Box::new(std::io::stdout()),
            Some(p) => Box::new(
                std::fs::File::create(p)
                    .map_err(|e| Error::SpecFile(format!("{}: {e}", p.display())))?,
            ),
        };
        Ok(Output { sink })
    }

    fn line(&mut self, s: &str) {
        writeln!(self.sink, "{s}").expect("write output");
    }
}

fn header(out: &mut Output, spec_id: &str, params: &str) {
    out.line(&format!("# zdzeta {}", env!("CARGO_PKG_VERSION")));
    out.line(&format!("# spec: {spec_id}"));
    out.line(&format!("# params: {params}"));
}

fn render(f: &Factored, decimal: bool) -> String {
    if decimal {
        f.to_decimal_string()
    } else {
        f.to_string()
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.cmd {
        Cmd::Count { spec, hnf, n } => {
            let (spec, _) = load(spec)?;
            let s = match (hnf, n) {
                (Some(h), None) => Subgroup::parse(spec.dim(), h)?,
                (None, Some(n)) => {
                    if spec.dim() != 1 {
                        return Err(Error::Parse(
                            "--n is for one-dimensional specs; use --hnf".into(),
                        ));
                    }
                    Subgroup::from_hnf_entries(1, vec![*n as i64])?
                }
                _ => return Err(Error::Parse("give exactly one of --hnf or --n".into())),
            };
            let f = action::count_fixed(&spec, &s)?;
            println!("{}", render(&f, cli.decimal));
        }
        Cmd::Zeta { spec, terms } => {
            let (spec, id) = load(spec)?;
            let os = zeta::orbit_sums(&spec, *terms)?;
            let z = zeta::zeta_coefficients(&os)?;
            let report = zeta::radius_report(&spec, &os);
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, &format!("zeta terms={terms}"));
            match cli.format {
                Format::Csv => {
                    let cs: Vec<String> = z.values().iter().map(|c| c.to_string()).collect();
                    out.line(&format!("c = {}", cs.join(",")));
                    out.line("n,a_n,c_n,root,normalized_root");
                    out.line(&format!("0,,{},,", z.get(0)));
                    for row in &report.rows {
                        out.line(&format!(
                            "{},{},{},{:.9},{:.9}",
                            row.n,
                            os.get(row.n as usize),
                            z.get(row.n as usize),
                            row.root,
                            row.normalized_root
                        ));
                    }
                    out.line(&format!(
                        "# limsup_estimate={:.9} growth_estimate={:.9} entropy={:.9}",
                        report.limsup_estimate, report.growth_estimate, report.entropy_nats
                    ));
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "a": os.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "c": z.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "radius": report,
                    });
                    out.line(&serde_json::to_string_pretty(&v).expect("serialize"));
                }
            }
        }
        Cmd::Growth { spec, max_index } => {
            let (spec, id) = load(spec)?;
            let report = action::growth_scan(&spec, *max_index)?;
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, &format!("growth max-index={max_index}"));
            match cli.format {
                Format::Csv => {
                    let cert = if report.certified { "tail certified" } else { "tail open" };
                    out.line(&format!(
                        "g = {}, attained at {}, {cert}",
                        report.growth_string(),
                        report.argmax
                    ));
                    out.line(&format!(
                        "# g_nats={:.9} tail_bound_nats={:.9} count={} index={} scanned={}",
                        report.g_nats,
                        report.tail_bound_nats,
                        render(&report.max_count, cli.decimal),
                        report.max_index,
                        report.scanned
                    ));
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "g": report.growth_string(),
                        "g_nats": report.g_nats,
                        "tail_bound_nats": report.tail_bound_nats,
                        "certified": report.certified,
                        "argmax": report.argmax.to_string(),
                        "max_count": render(&report.max_count, cli.decimal),
                        "max_index": report.max_index,
                        "scanned": report.scanned,
                    });
                    out.line(&serde_json::to_string_pretty(&v).expect("serialize"));
                }
            }
        }
        Cmd::Classify { spec } => {
            let (spec, id) = load(spec)?;
            let class = zeta::classify_1d(&spec)?;
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, "classify");
            match cli.format {
                Format::Csv => match &class {
                    Classification::Rational { entropy } => {
                        out.line(&format!(
                            "rational: zeta(z) = (1 - {}z)^(-1)",
                            entropy.to_decimal_string()
                        ));
                    }
                    Classification::Boundary { witnesses, .. } => {
                        out.line("boundary");
                        out.line("witness,degree,residue_order,p,bound");
                        for w in witnesses {
                            out.line(&format!(
                                "{},{},{},{},{:.9}",
                                w.place, w.degree, w.residue_order, w.p, w.bound
                            ));
                        }
                    }
                },
                Format::Json => {
                    out.line(&serde_json::to_string_pretty(&class).expect("serialize"));
                }
            }
        }
        Cmd::Overconv { spec, witness, depth } => {
            let (spec, id) = load(spec)?;
            let witness_name = match witness {
                Some(w) => {
                    // accept either the "(t+1)" display form or coefficients "1,1"
                    if w.starts_with('(') {
                        w.clone()
                    } else {
                        let p = spec
                            .characteristic_primes()
                            .first()
                            .copied()
                            .ok_or_else(|| Error::Parse("spec has no components".into()))?;
                        zdzeta::funcfield::Place::parse(p, w)?.to_string()
                    }
                }
                None => match zeta::classify_1d(&spec)? {
                    Classification::Boundary { witnesses, .. } => witnesses[0].place.clone(),
                    Classification::Rational { .. } => {
                        let mut out = Output::new(&cli.out)?;
                        header(&mut out, &id, &format!("overconv depth={depth}"));
                        out.line("rational spec: no overconvergent subsequence");
                        return Ok(());
                    }
                },
            };
            let rows = zeta::overconvergence_check(&spec, &witness_name, *depth)?;
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, &format!("overconv witness={witness_name} depth={depth}"));
            match cli.format {
                Format::Csv => {
                    out.line("k,n_k,value,exponents");
                    for r in &rows {
                        let exps: Vec<String> =
                            r.exponents.iter().map(|(p, e)| format!("{p}^{e}")).collect();
                        out.line(&format!("{},{},{:.9},{}", r.k, r.n_k, r.value, exps.join("*")));
                    }
                }
                Format::Json => out.line(&serde_json::to_string_pretty(&rows).expect("serialize")),
            }
        }
        Cmd::Poles { spec, max_index } => {
            let (spec, id) = load(spec)?;
            let rings = zeta::pole_cluster_scan(&spec, *max_index)?;
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, &format!("poles max-index={max_index}"));
            match cli.format {
                Format::Csv => {
                    out.line("radius,multiplicity,base_subgroup,count");
                    for r in &rings {
                        out.line(&format!(
                            "{:.9},{},\"{}\",{}",
                            r.radius, r.multiplicity, r.base_subgroup, r.count
                        ));
                    }
                }
                Format::Json => out.line(&serde_json::to_string_pretty(&rings).expect("serialize")),
            }
        }
        Cmd::Primescan { spec, eps, qmax } => {
            let (spec, id) = load(spec)?;
            let eps = parse_eps(eps)?;
            let report = primescan::prime_value_scan(&spec, eps, *qmax)?;
            let mut out = Output::new(&cli.out)?;
            header(&mut out, &id, &format!("primescan eps={}/{} qmax={qmax}", eps.0, eps.1));
            match cli.format {
                Format::Csv => {
                    out.line(&format!("# threshold_q0={:.3}", report.threshold_q0));
                    out.line("q,qualifying,orders,values");
                    for r in &report.rows {
                        let orders: Vec<String> =
                            r.orders.iter().map(|(p, m)| format!("m_{p}={m}")).collect();
                        out.line(&format!(
                            "{},{},{},\"{}\"",
                            r.q,
                            r.qualifying,
                            orders.join(";"),
                            r.values.join(";")
                        ));
                    }
                }
                Format::Json => {
                    out.line(&serde_json::to_string_pretty(&report).expect("serialize"))
                }
            }
        }
        Cmd::Validate { spec, max_index, budget } => {
            let (spec, id) = load(spec)?;
            let report = oracle::cross_validate(&spec, *max_index, *budget)?;
            if let Some(path) = &cli.out {
                let mut out = Output::new(&Some(path.clone()))?;
                header(&mut out, &id, &format!("validate max-index={max_index} budget={budget}"));
                match cli.format {
                    Format::Csv => {
                        out.line("index,hnf,formula_count,oracle_count,match");
                        for r in &report.rows {
                            out.line(&format!(
                                "{},\"{}\",{},{},{}",
                                r.index, r.subgroup, r.formula, r.oracle, r.matches
                            ));
                        }
                    }
                    Format::Json => {
                        out.line(&serde_json::to_string_pretty(&report).expect("serialize"))
                    }
                }
            }
            if report.all_match {
                println!("all {} comparisons match", report.compared);
            } else {
                let bad = report.rows.iter().filter(|r| !r.matches).count();
                eprintln!("error: {bad} of {} comparisons disagree", report.compared);
                // a formula/oracle mismatch is an internal assertion failure
                std::process::exit(3);
            }
        }
        Cmd::Sigma { n } => {
            println!("{}", zdzeta::lattice::sigma(*n)?);
        }
        Cmd::Gronwall { t, q, k } => {
            let (n, ratio) = zdzeta::lattice::gronwall_witness(*t, *q, *k)?;
            println!("N = {n}, sigma(N)/(N log log N) = {ratio:.6}");
        }
    }
    Ok(())
}

fn parse_eps(s: &str) -> Result<(u64, u64), Error> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("eps must be num/den, got {s:?}")))?;
    let num = a.trim().parse().map_err(|_| Error::Parse(format!("bad eps numerator {a:?}")))?;
    let den = b.trim().parse().map_err(|_| Error::Parse(format!("bad eps denominator {b:?}")))?;
    if num == 0 || den == 0 {
        return Err(Error::Parse("eps must be positive".into()));
    }
    Ok((num, den))
}

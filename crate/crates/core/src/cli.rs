//! Command-line front end. `run` parses an argument list, executes one
//! subcommand and returns the exit status with the rendered report.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::census::{
    load_census, save_census, write_census, Census, CensusConfig, CensusError, CensusStore,
    ExactRational, DEFAULT_MAX_RANK,
};
use crate::counting::{
    asymptotic_closed, asymptotic_orbit_count, asymptotic_total, count_orbits_total,
    orbit_statistics, CountMode, EmbeddingFilter,
};
use crate::geometry::{short_orbit_bound, GeometryError, HyperbolicParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

/// Directory of cached census files, used when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "CURVE_ORBITS_CACHE";

#[derive(Debug, Parser)]
#[command(name = "curve-orbits", version, about = "Count mapping class group orbits of curves with self-intersections")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for census building and counting.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest crossing number a census may be built for.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RANK)]
    max_k: usize,
    /// Census file to use instead of building one.
    #[arg(long, global = true)]
    census: Option<PathBuf>,
    /// Directory of cached census files.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Iso,
    NoDisk,
}

impl From<ModeArg> for CountMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Iso => CountMode::Iso,
            ModeArg::NoDisk => CountMode::NoDisk,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the ribbon graph census of curves with K crossings.
    Census {
        #[arg(long)]
        k: usize,
        /// Only list classes of this ribbon graph genus.
        #[arg(long)]
        genus: Option<u32>,
        /// Write the census file here and print a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum of 1/|BAut| over the classes of genus H (default 0).
    Constants {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        h: u32,
    },
    /// Exact orbit count summed over the genus-H classes.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Iso)]
        mode: ModeArg,
        /// Also reject once-punctured disks in the complement.
        #[arg(long)]
        exclude_punctured_disks: bool,
    },
    /// Leading-order orbit count.
    Asymptotic {
        #[arg(long)]
        k: usize,
        /// Restrict to ribbon graph genus H; all genera when absent.
        #[arg(long, conflicts_with = "closed")]
        h: Option<u32>,
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = 0)]
        punctures: u64,
        /// Closed-surface form C_k g^(k+1) / (k+1)!.
        #[arg(long)]
        closed: bool,
    },
    /// Disk and distinct-signature fractions over all orbits.
    Stats {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
    },
    /// Bound on orbits containing a geodesic of length at most L.
    Geometry {
        #[arg(long)]
        length: f64,
        #[arg(long = "c-x", default_value_t = 0.0)]
        c_x: f64,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
    },
}

/// Exit status plus what to print on each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Refused(String),
    Other(String),
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::RankExceedsCap { .. } | CensusError::ClassLimit { .. } => {
                Failure::Refused(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::BudgetExceedsCensus { .. } => Failure::Refused(e.to_string()),
            GeometryError::BadLength(_) | GeometryError::BadConstant(_) => {
                Failure::Usage(e.to_string())
            }
            GeometryError::Census(c) => c.into(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            builder = builder.num_threads(n);
        }
        match builder.build() {
            Ok(p) => p,
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(Failure::Usage(m)) => Outcome::error(EXIT_USAGE, m),
        Err(Failure::Refused(m)) => Outcome::error(EXIT_REFUSED, m),
        Err(Failure::Other(m)) => Outcome::error(EXIT_FAILURE, m),
    }
}

fn store(cli: &Cli) -> CensusStore {
    let store = CensusStore::new(CensusConfig {
        max_rank: cli.max_k,
        class_limit: None,
    });
    match &cli.cache_dir {
        Some(dir) => store.with_cache_dir(dir),
        None => store,
    }
}

fn census_for(cli: &Cli, k: usize) -> Result<Arc<Census>, Failure> {
    if let Some(path) = &cli.census {
        if !path.exists() {
            return Err(Failure::Usage(format!("census file {} not found", path.display())));
        }
        let census = load_census(path)?;
        if census.rank() != k {
            return Err(Failure::Usage(format!(
                "census file {} is for k = {}, not {k}",
                path.display(),
                census.rank()
            )));
        }
        return Ok(Arc::new(census));
    }
    Ok(store(cli).get(k)?)
}

fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse().expect("integer is valid JSON"))
}

fn rational(q: &ExactRational) -> Value {
    let mut m = Map::new();
    m.insert("num".into(), Value::Number(q.numer().to_string().parse().expect("valid")));
    m.insert("den".into(), Value::Number(q.denom().to_string().parse().expect("valid")));
    Value::Object(m)
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Census { k, genus, out } => {
            if cli.census.is_some() {
                return Err(Failure::Usage("`census` builds its own census; drop --census".into()));
            }
            let census = store(cli).get(*k)?;
            if let Some(path) = out {
                save_census(&census, path).map_err(|e| Failure::Other(e.to_string()))?;
            }
            if csv {
                let mut s = String::from("k,h,b,aut,baut,key,word\n");
                for c in census.classes() {
                    if genus.map_or(true, |h| h == c.genus) {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            c.k,
                            c.genus,
                            c.boundaries,
                            c.aut_order,
                            c.baut_order(),
                            c.key,
                            c.witness
                        );
                    }
                }
                Ok(s)
            } else if out.is_some() {
                let per_genus: Vec<Value> = census
                    .genera()
                    .filter(|h| genus.map_or(true, |g| g == *h))
                    .map(|h| {
                        json!({
                            "h": h,
                            "classes": census.of_genus(h).count(),
                            "constant": rational(&census.constant(h)),
                        })
                    })
                    .collect();
                Ok(line(&json!({
                    "k": census.rank(),
                    "classes": census.len(),
                    "per_genus": per_genus,
                })))
            } else {
                let mut buf = Vec::new();
                write_census(&census, *genus, &mut buf)?;
                Ok(String::from_utf8(buf).expect("census output is UTF-8"))
            }
        }
        Command::Constants { k, h } => {
            let census = census_for(cli, *k)?;
            let c = census.constant(*h);
            if csv {
                Ok(format!("k,h,num,den\n{k},{h},{},{}\n", c.numer(), c.denom()))
            } else {
                Ok(line(&rational(&c)))
            }
        }
        Command::Count {
            k,
            h,
            genus,
            punctures,
            mode,
            exclude_punctured_disks,
        } => {
            let census = census_for(cli, *k)?;
            let filter = EmbeddingFilter {
                mode: (*mode).into(),
                exclude_punctured_disks: *exclude_punctured_disks,
            };
            let count = count_orbits_total(&census, *h, *genus, *punctures, filter);
            if csv {
                Ok(format!(
                    "k,h,genus,punctures,mode,count\n{k},{h},{genus},{punctures},{},{count}\n",
                    filter.mode.as_str()
                ))
            } else {
                Ok(line(&big(&count)))
            }
        }
        Command::Asymptotic {
            k,
            h,
            genus,
            punctures,
            closed,
        } => {
            let census = census_for(cli, *k)?;
            let value = if *closed {
                asymptotic_closed(&census, *genus)
            } else {
                match h {
                    Some(h) => asymptotic_orbit_count(&census, *h, *genus, *punctures),
                    None => asymptotic_total(&census, *genus, *punctures),
                }
            };
            if csv {
                let h = h.map(|h| h.to_string()).unwrap_or_default();
                let punctures = if *closed { String::new() } else { punctures.to_string() };
                Ok(format!(
                    "k,h,genus,punctures,num,den\n{k},{h},{genus},{punctures},{},{}\n",
                    value.numer(),
                    value.denom()
                ))
            } else {
                Ok(line(&rational(&value)))
            }
        }
        Command::Stats { k, genus, punctures } => {
            let census = census_for(cli, *k)?;
            let s = orbit_statistics(&census, *genus, *punctures);
            if csv {
                Ok(format!(
                    "k,genus,punctures,orbits,disk_orbits,distinct_signature_orbits,disk_fraction_num,disk_fraction_den,distinct_signature_fraction_num,distinct_signature_fraction_den\n{k},{genus},{punctures},{},{},{},{},{},{},{}\n",
                    s.orbits,
                    s.disk_orbits,
                    s.distinct_signature_orbits,
                    s.disk_fraction.numer(),
                    s.disk_fraction.denom(),
                    s.distinct_signature_fraction.numer(),
                    s.distinct_signature_fraction.denom()
                ))
            } else {
                Ok(line(&json!({
                    "k": k,
                    "genus": genus,
                    "punctures": punctures,
                    "orbits": big(&s.orbits),
                    "disk_orbits": big(&s.disk_orbits),
                    "distinct_signature_orbits": big(&s.distinct_signature_orbits),
                    "disk_fraction": rational(&s.disk_fraction),
                    "distinct_signature_fraction": rational(&s.distinct_signature_fraction),
                })))
            }
        }
        Command::Geometry {
            length,
            c_x,
            genus,
            punctures,
        } => {
            if cli.census.is_some() {
                return Err(Failure::Usage("`geometry` needs several ranks; use --cache-dir".into()));
            }
            let params = HyperbolicParams::new(*length, *c_x, *genus, *punctures)?;
            let mut store = store(cli);
            let b = short_orbit_bound(&params, &mut store)?;
            if csv {
                let mut s = String::from("length,c_x,genus,punctures,budget,k,orbits\n");
                for (k, count) in b.per_k.iter().enumerate() {
                    let _ = writeln!(s, "{length},{c_x},{genus},{punctures},{},{k},{count}", b.budget);
                }
                Ok(s)
            } else {
                Ok(line(&json!({
                    "length": length,
                    "c_x": c_x,
                    "genus": genus,
                    "punctures": punctures,
                    "budget": b.budget,
                    "bound": big(&b.bound),
                    "per_k": b.per_k.iter().map(big).collect::<Vec<_>>(),
                })))
            }
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galcon::analyzer::{analyze, parse_program, AnalyzeError, Transfer};
use galcon::catalog::{gen, CatalogError, DEFAULT_BOUND};
use galcon::format::{self, Over};
use galcon::functions::{
    bca_gc, bca_pcgc, cgc_completeness, cgc_soundness, gc_pair_property, pcgc_sound, GcPair, GcProperty, OpTable, Universe,
};
use galcon::galois::{check_cgc, check_cgp, check_gc, check_pcgc, classify_partitioning, Outcome};
use galcon::{laws, transforms, Builtin, Connection, Constructive, FormatError, SetGc, Sizes, Variant};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "galcon", version, about = "Check, transform and use finite Galois connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a domain file between connection classes, e.g. `cgc-pgc`.
    Transform {
        /// One of cgc-pgc, pgc-cgc, cgc-cco, cco-cgc, cgp-gc, gc-cgp, pcgc-ppgc, ppgc-pcgc, ppgc-pgc.
        direction: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Best correct approximation of a concrete function.
    Bca { domain: PathBuf, function: PathBuf },
    /// Check soundness (or completeness) of an abstract function.
    Soundcheck {
        domain: PathBuf,
        concrete: PathBuf,
        #[arg(name = "abstract")]
        abs: PathBuf,
        #[arg(long, default_value = "all")]
        variant: Variant,
        /// Check completeness instead of soundness.
        #[arg(long)]
        complete: bool,
    },
    /// Generate random instances and check the round-trip laws on each.
    Fuzz {
        kind: FuzzKind,
        #[arg(long, default_value_t = 100)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        amax: usize,
        #[arg(long, default_value_t = 6)]
        bmax: usize,
    },
    /// Print or write a builtin domain.
    Builtin {
        name: Builtin,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Analyze a while program.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "signconst_pcgc")]
        domain: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Report which connection laws a domain file satisfies.
    Check { domain: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FuzzKind {
    Cgc,
    Pgc,
    Ppgc,
    Cgp,
    Pcgc,
    SoundPair,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Function(#[from] galcon::FunctionError),
    #[error(transparent)]
    Galois(#[from] galcon::GaloisError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_domain(path: &Path) -> Result<Connection, CliError> {
    format::read_domain(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

fn load_function(path: &Path, names: &[String], want: Over) -> Result<OpTable, CliError> {
    let (over, t) =
        format::read_function(&read(path)?, names).map_err(|source| CliError::Format { path: path.display().to_string(), source })?;
    if over != want {
        return Err(CliError::Usage(format!("{}: expected a function over the {want:?} side", path.display()).to_lowercase()));
    }
    Ok(t)
}

fn abstract_names(conn: &Connection) -> Result<Vec<String>, CliError> {
    match conn {
        Connection::Constructive(c) => Ok(c.abs_poset().names().to_vec()),
        Connection::Gc(g) => Ok(g.abs().names().to_vec()),
        Connection::Cco(_) => Err(CliError::Usage("closure operators have no abstract side".into())),
    }
}

fn verdict(label: &str, o: &Outcome) -> String {
    match o {
        Ok(()) => format!("{label}: yes"),
        Err(w) => format!("{label}: no, {w}"),
    }
}

fn constructive(conn: Connection, what: &str) -> Result<Constructive, CliError> {
    match conn {
        Connection::Constructive(c) => Ok(c),
        other => Err(CliError::Usage(format!("{what} expects a constructive domain, got kind {}", other.kind()))),
    }
}

fn gc(conn: Connection, what: &str) -> Result<SetGc, CliError> {
    match conn {
        Connection::Gc(g) => Ok(g),
        other => Err(CliError::Usage(format!("{what} expects kind gc, got kind {}", other.kind()))),
    }
}

fn transform(direction: &str, input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let conn = load_domain(input)?;
    let out = match direction {
        "cgc-pgc" => Connection::Gc(transforms::t_pgc(&constructive(conn, direction)?)?),
        "pgc-cgc" => Connection::Constructive(transforms::t_cgc_of_pgc(&gc(conn, direction)?)?),
        "cgc-cco" => Connection::Cco(transforms::t_cco(&constructive(conn, direction)?)?),
        "cco-cgc" => match conn {
            Connection::Cco(p) => Connection::Constructive(transforms::t_cgc_of_cco(&p)?),
            other => return Err(CliError::Usage(format!("cco-cgc expects kind cco, got kind {}", other.kind()))),
        },
        "cgp-gc" => Connection::Gc(transforms::t_gc(&constructive(conn, direction)?)?),
        "gc-cgp" => Connection::Constructive(transforms::t_cgp(&gc(conn, direction)?)?),
        "pcgc-ppgc" => Connection::Gc(transforms::t_ppgc(&constructive(conn, direction)?)?),
        "ppgc-pcgc" => Connection::Constructive(transforms::t_pcgc(&gc(conn, direction)?)?),
        "ppgc-pgc" => Connection::Gc(transforms::disjunctive_completion(&gc(conn, direction)?)?),
        other => return Err(CliError::Usage(format!("unknown transform {other}"))),
    };
    write_out(output, &format::write_domain(&out))
}

fn bca(domain: &Path, function: &Path) -> Result<(), CliError> {
    let conn = load_domain(domain)?;
    let f = load_function(function, conn.carrier().names(), Over::Concrete)?;
    let names = abstract_names(&conn)?;
    let fs = match &conn {
        Connection::Gc(g) => bca_gc(g, f.arity(), &|xs| f.apply_set(xs)),
        Connection::Constructive(c) => bca_pcgc(c, &f)?,
        Connection::Cco(_) => unreachable!("rejected by abstract_names"),
    };
    print!("{}", format::write_function(Over::Abstract, &fs, &names));
    Ok(())
}

fn soundcheck(domain: &Path, concrete: &Path, abs: &Path, variant: Variant, complete: bool) -> Result<bool, CliError> {
    let conn = load_domain(domain)?;
    let f = load_function(concrete, conn.carrier().names(), Over::Concrete)?;
    let names = abstract_names(&conn)?;
    let fs = load_function(abs, &names, Over::Abstract)?;
    let mode = if complete { "complete" } else { "sound" };
    let outcome = match &conn {
        Connection::Constructive(c) if check_cgc(c).is_ok() => {
            if complete {
                cgc_completeness(c, &f, &fs, variant)?
            } else {
                cgc_soundness(c, &f, &fs, variant)?
            }
        }
        Connection::Constructive(c) => {
            if complete {
                return Err(CliError::Usage("completeness variants are defined for CGCs and GCs only".into()));
            }
            pcgc_sound(c, &f, &fs)?
        }
        Connection::Gc(g) => {
            let prop = if complete {
                variant
                    .matching_property()
                    .ok_or_else(|| CliError::Usage("pick one completeness variant for a GC".into()))?
            } else {
                GcProperty::Sound
            };
            let u = Universe::over(g.carrier_order(), f.arity(), 0);
            gc_pair_property(g, &GcPair::lifted(&f, fs), prop, &u)?
        }
        Connection::Cco(_) => unreachable!("rejected by abstract_names"),
    };
    println!("{}", verdict(&format!("{mode} ({variant})"), &outcome));
    Ok(outcome.is_ok())
}

fn fuzz_case(kind: FuzzKind, seed: u64, sizes: Sizes) -> Result<Outcome, CliError> {
    Ok(match kind {
        FuzzKind::Cgc => {
            let c = gen::gen_cgc(seed, sizes);
            check_cgc(&c).and(laws::cgc_properties(&c)).and(laws::teo_pgc(&c)?).and(laws::teo_cco(&c)?)
        }
        FuzzKind::Pgc => laws::teo_pgc_gc(&gen::gen_pgc(seed, sizes))?,
        FuzzKind::Ppgc => {
            let g = gen::gen_ppgc(seed, sizes);
            let (f, fs) = gen::gen_pcgc_fn_pair(&transforms::t_pcgc(&g)?, seed);
            laws::teo_pcgc_gc(&g)?.and(laws::teo_pcgc_sound_gc(&g, &f, &fs)?)
        }
        FuzzKind::Cgp => {
            let c = gen::gen_cgp(seed, sizes);
            let g = gen::gen_downset_gc(seed, sizes);
            check_cgp(&c).and(laws::cgp_properties(&c)).and(laws::teo_cgp(&c)?).and(laws::teo_cgp_gc(&g)?)
        }
        FuzzKind::Pcgc => {
            let c = gen::gen_pcgc(seed, sizes);
            let (f, fs) = gen::gen_pcgc_fn_pair(&c, seed);
            check_pcgc(&c).outcome().and(laws::pcgc_properties(&c)).and(laws::teo_pcgc(&c)?).and(laws::teo_pcgc_sound(&c, &f, &fs)?)
        }
        FuzzKind::SoundPair => {
            let c = gen::gen_cgc(seed, sizes);
            let (f, fs) = gen::gen_sound_pair(&c, seed)?;
            cgc_soundness(&c, &f, &fs, Variant::All)?.and(laws::theosound(&c, &f, &fs)?).and(laws::lemsound(&c, &f, &fs)?)
        }
    })
}

fn fuzz(kind: FuzzKind, cases: u64, seed: u64, sizes: Sizes) -> Result<bool, CliError> {
    let mut failed = 0;
    for s in seed..seed + cases {
        if let Err(w) = fuzz_case(kind, s, sizes)? {
            failed += 1;
            if failed <= 5 {
                println!("seed {s}: {w}");
            }
        }
    }
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    println!("{name}: {} passed, {failed} failed", cases - failed);
    Ok(failed == 0)
}

fn run_analyze(file: &Path, domain: &str, bound: i64, fmt: OutputFormat) -> Result<(), CliError> {
    let program = parse_program(&read(file)?).map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
    let conn = galcon::builtin(domain, bound).map_err(|e| CliError::Domain(e.to_string()))?;
    let Connection::Constructive(c) = conn else {
        return Err(CliError::Domain(format!("{domain} is not a constructive domain")));
    };
    let domain_err = |e: AnalyzeError| match e {
        AnalyzeError::Parse(p) => CliError::Parse(p.to_string()),
        other => CliError::Domain(other.to_string()),
    };
    let t = Transfer::new(&c).map_err(domain_err)?;
    let result = analyze(&program, &t).map_err(domain_err)?;
    match fmt {
        OutputFormat::Text => print!("{result}"),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&result).expect("serializable")),
    }
    Ok(())
}

fn check(domain: &Path) -> Result<bool, CliError> {
    let conn = load_domain(domain)?;
    println!("kind: {}", conn.kind());
    match &conn {
        Connection::Constructive(c) => {
            println!("{}", verdict("CGC", &check_cgc(c)));
            println!("{}", verdict("CGP", &check_cgp(c)));
            let r = check_pcgc(c);
            println!("{}", verdict("PCGC", &r.outcome()));
        }
        Connection::Gc(g) => {
            let r = check_gc(g);
            println!("{}", verdict("GC", &r.adjunction));
            println!("{}", verdict("GI", &r.insertion));
            println!("{}", verdict("additive", &r.additive));
            if r.is_gc() && g.is_powerset() {
                println!("partitioning: {:?}", classify_partitioning(g)?.class);
            }
        }
        Connection::Cco(_) => {}
    }
    let v = conn.verify();
    println!("{}", verdict(&format!("valid {}", conn.kind()), &v));
    Ok(v.is_ok())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Transform { direction, input, output } => transform(&direction, &input, output.as_deref()).map(|()| true),
        Command::Bca { domain, function } => bca(&domain, &function).map(|()| true),
        Command::Soundcheck { domain, concrete, abs, variant, complete } => soundcheck(&domain, &concrete, &abs, variant, complete),
        Command::Fuzz { kind, cases, seed, amax, bmax } => fuzz(kind, cases, seed, Sizes::new(amax, bmax)?),
        Command::Builtin { name, bound, emit } => {
            let conn = name.build(bound)?;
            write_out(emit.as_deref(), &format::write_domain(&conn)).map(|()| true)
        }
        Command::Analyze { file, domain, bound, format } => run_analyze(&file, &domain, bound, format).map(|()| true),
        Command::Check { domain } => check(&domain),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

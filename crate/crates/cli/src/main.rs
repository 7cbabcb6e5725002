use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use effrel::laws::{LawRegistry, Structure};
use effrel::search::lemmas::{all_suites, LemmaOutcome};
use effrel::search::sweep::{sweep_verify, write_catalog, SizeSummary};
use effrel::search::{enumerate_effect_algebras, Attributes, SizeLimit};
use effrel::FinRel;

#[derive(Parser)]
#[command(
    name = "effrel",
    version,
    about = "Law checkers for relations and effect algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one law on a structure read from a JSON file ("-" for stdin).
    Check {
        /// Input file, or "-" for stdin.
        path: PathBuf,
        #[arg(long)]
        law: String,
        /// Raise the size bound from 6 to 7.
        #[arg(long)]
        allow_large: bool,
    },
    /// List the laws known to `check`.
    Laws,
    /// Enumerate effect algebras of one size as JSON lines.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Keep only algebras with every listed property.
        #[arg(long, value_enum)]
        filter: Vec<Filter>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        jobs: Option<usize>,
        /// Raise the size bound from 6 to 7.
        #[arg(long)]
        allow_large: bool,
    },
    /// Enumerate all sizes up to a bound and check both characterizations.
    Sweep {
        #[arg(long)]
        max_size: usize,
        /// Directory receiving summary.csv and catalog.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        jobs: Option<usize>,
        /// Raise the size bound from 6 to 7.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the exhaustive lemma suites, plus sampled relation laws.
    VerifyLemmas {
        #[arg(long)]
        max_size: usize,
        /// Seed for the sampled relation checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled relation triples; 0 skips them.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Raise the size bound from 6 to 7.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filter {
    Modular,
    Nonmodular,
    Frobenius,
    Superspecial,
    GeneralEffect,
    TorsionFree,
    Degenerate,
}

impl Filter {
    fn matches(self, a: &Attributes) -> bool {
        match self {
            Filter::Modular => a.modular,
            Filter::Nonmodular => !a.modular,
            Filter::Frobenius => a.frobenius,
            Filter::Superspecial => a.superspecial,
            Filter::GeneralEffect => a.general_effect,
            Filter::TorsionFree => a.torsion_free,
            Filter::Degenerate => a.degenerate,
        }
    }
}

/// Failure modes of a command, mapped to exit codes 1 and 2.
enum Failure {
    Violation,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn verdict(pass: bool) -> Outcome {
    if pass {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn install_pool(jobs: Option<usize>) -> Outcome {
    if let Some(k) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()?;
    }
    Ok(())
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn check(path: &Path, law: &str, allow_large: bool) -> Outcome {
    let registry = LawRegistry::standard();
    if registry.get(law).is_none() {
        let known: Vec<_> = registry.names().collect();
        return Err(Failure::Usage(format!(
            "unknown law {law}; known laws: {}",
            known.join(", ")
        )));
    }
    let structure = Structure::parse(&read_input(path)?)?;
    if !matches!(structure, Structure::Relation(_)) {
        SizeLimit::new(allow_large).check(structure.size())?;
    }
    let report = registry.check(law, &structure)?;
    let out = serde_json::json!({
        "law": law,
        "kind": structure.kind(),
        "pass": report.all_pass(),
        "rows": report,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    verdict(report.all_pass())
}

fn open_out(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn enumerate(size: usize, filters: &[Filter], out: Option<&Path>, allow_large: bool) -> Outcome {
    let algebras = enumerate_effect_algebras(size, SizeLimit::new(allow_large))?;
    let kept = algebras
        .iter()
        .filter(|a| filters.iter().all(|f| f.matches(&a.attributes)));
    let mut w = open_out(out)?;
    write_catalog(&mut w, kept)?;
    w.flush()?;
    Ok(())
}

fn write_summary<W: Write>(w: W, rows: &[SizeSummary]) -> Outcome {
    let mut csv = csv::Writer::from_writer(w);
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}

fn sweep(max_size: usize, out: Option<&Path>, allow_large: bool) -> Outcome {
    let started = Instant::now();
    let outcome = sweep_verify(max_size, SizeLimit::new(allow_large))?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_summary(
                fs::File::create(dir.join("summary.csv"))?,
                &outcome.summaries,
            )?;
            let mut catalog = io::BufWriter::new(fs::File::create(dir.join("catalog.jsonl"))?);
            write_catalog(&mut catalog, outcome.algebras())?;
            catalog.flush()?;
        }
        None => write_summary(io::stdout().lock(), &outcome.summaries)?,
    }
    // timing varies between runs, so it stays off the report streams
    eprintln!(
        "swept {} algebras in {:.2?}",
        outcome.records.len(),
        started.elapsed()
    );
    verdict(outcome.disagreements() == 0)
}

fn random_rel(rng: &mut ChaCha8Rng, src: usize, dst: usize) -> FinRel {
    let density: f64 = rng.gen_range(0.1..0.9);
    FinRel::from_fn(src, dst, |_, _| rng.gen_bool(density))
}

/// Associativity, dagger and tensor laws on random relations with carriers
/// up to 5.
fn sampled_relation_laws(seed: u64, samples: usize) -> Result<LemmaOutcome, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LemmaOutcome {
        lemma: "relation-laws-sampled".into(),
        max_size: 5,
        cases: 0,
        failures: 0,
        witness: None,
    };
    for _ in 0..samples {
        let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=5)).collect();
        let f = random_rel(&mut rng, dims[0], dims[1]);
        let g = random_rel(&mut rng, dims[1], dims[2]);
        let h = random_rel(&mut rng, dims[2], dims[3]);
        let assoc = f.compose(&g)?.compose(&h)? == f.compose(&g.compose(&h)?)?;
        let dagger = f.compose(&g)?.dagger() == g.dagger().compose(&f.dagger())?;
        let interchange = f.tensor(&h).compose(&g.tensor(&h.dagger()))?
            == f.compose(&g)?.tensor(&h.compose(&h.dagger())?);
        out.cases += 1;
        if !(assoc && dagger && interchange) {
            out.failures += 1;
            out.witness
                .get_or_insert_with(|| format!("{f:?} ; {g:?} ; {h:?}"));
        }
    }
    Ok(out)
}

fn verify_lemmas(max_size: usize, seed: u64, samples: usize, allow_large: bool) -> Outcome {
    let mut outcomes = all_suites(max_size, SizeLimit::new(allow_large))?;
    if samples > 0 {
        outcomes.push(sampled_relation_laws(seed, samples)?);
    }
    let mut stdout = io::stdout().lock();
    for o in &outcomes {
        writeln!(stdout, "{}", serde_json::to_string(o)?)?;
    }
    verdict(outcomes.iter().all(LemmaOutcome::pass))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check {
            path,
            law,
            allow_large,
        } => check(&path, &law, allow_large),
        Command::Laws => {
            for law in LawRegistry::standard().iter() {
                println!("{:<18} {}", law.name(), law.description());
            }
            Ok(())
        }
        Command::Enumerate {
            size,
            filter,
            out,
            jobs,
            allow_large,
        } => {
            install_pool(jobs)?;
            enumerate(size, &filter, out.as_deref(), allow_large)
        }
        Command::Sweep {
            max_size,
            out,
            jobs,
            allow_large,
        } => {
            install_pool(jobs)?;
            sweep(max_size, out.as_deref(), allow_large)
        }
        Command::VerifyLemmas {
            max_size,
            seed,
            samples,
            allow_large,
        } => verify_lemmas(max_size, seed, samples, allow_large),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

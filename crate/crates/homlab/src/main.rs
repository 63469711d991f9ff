//! Command-line surface for batch use: counting, expansion, classification,
//! capsule inspection, catalog generation and the verification sweeps.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use homlab::catalog::{self, Catalog, CatalogKind};
use homlab::digraph::Digraph;
use homlab::error::Result;
use homlab::homs;
use homlab::shells;
use homlab::taxonomy;
use homlab::verifier;
use homlab::weights::{self, ArcWeight};

#[derive(Parser)]
#[command(name = "homlab", version, about = "exact digraph homomorphism laboratory")]
struct Cli {
    /// worker threads for sweeps; defaults to the available parallelism
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count homomorphisms between two digraph files
    Count(CountArgs),
    /// List homomorphisms, one `map ...` line each
    Enumerate(CountArgs),
    /// Build the clamp expansion of a digraph under an arc weight
    Expand(ExpandArgs),
    /// Classify a digraph against every tracked class
    Classify(ClassifyArgs),
    /// Show the off-top components and their capsules
    Shells(GraphArg),
    /// Print the exact strict-to-class ratio of a digraph
    Phi(GraphArg),
    /// Catalog generation and management
    Catalog(CatalogArgs),
    /// Run verification sweeps
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CountArgs {
    /// source digraph file
    #[arg(long)]
    from: PathBuf,
    /// target digraph file
    #[arg(long)]
    to: PathBuf,
    /// strict homomorphisms only
    #[arg(long)]
    strict: bool,
    /// write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    graph: PathBuf,
    /// arc weight file (`weight` header, `u v k` lines)
    #[arg(long)]
    weight: PathBuf,
    #[arg(long)]
    nu: u64,
    /// take the transitive hull and add clamp loops (poset bases only)
    #[arg(long)]
    poset: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// parameter for the height-indexed classes; defaults to the height
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArg {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Generate a catalog file
    Gen {
        /// kind token: all, reflexive, ta, posets, flat-posets, chn<k>,
        /// taghn<k>, taghna<k>
        #[arg(long)]
        kind: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the member counts of a catalog file
    Info {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// check id, or `all`
    #[arg(long)]
    check: String,
    /// override the default vertex bound of the check
    #[arg(long)]
    max_n: Option<usize>,
    /// also write the report to this file
    #[arg(long)]
    report: Option<PathBuf>,
}

fn read_digraph(path: &PathBuf) -> Result<Digraph> {
    Digraph::from_text(&std::fs::read_to_string(path)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Size-cap override with a warning, so oversized sweeps stay a deliberate
/// choice.
fn env_max_n() -> Option<usize> {
    let raw = std::env::var("HOMLAB_MAX_N").ok()?;
    match raw.parse::<usize>() {
        Ok(n) => {
            eprintln!("warning: HOMLAB_MAX_N={n} overrides built-in size caps; sweeps may take very long");
            Some(n)
        }
        Err(_) => {
            eprintln!("warning: ignoring unparsable HOMLAB_MAX_N=`{raw}`");
            None
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Count(a) => {
            let g = read_digraph(&a.from)?;
            let h = read_digraph(&a.to)?;
            let n = homs::hom_count(&g, &h, a.strict)?;
            emit(&a.out, &format!("{n}\n"))?;
        }
        Command::Enumerate(a) => {
            let g = read_digraph(&a.from)?;
            let h = read_digraph(&a.to)?;
            let mut text = String::new();
            for m in homs::enumerate_homs(&g, &h, a.strict)? {
                text.push_str(&m.to_text());
                text.push('\n');
            }
            emit(&a.out, &text)?;
        }
        Command::Expand(a) => {
            let g = read_digraph(&a.graph)?;
            let w = ArcWeight::from_text(&g, &std::fs::read_to_string(&a.weight)?)?;
            let exp = weights::expand(&g, &w, a.nu, a.poset)?;
            emit(&a.out, &exp.result.to_text())?;
        }
        Command::Classify(a) => {
            let g = read_digraph(&a.graph)?;
            let report = taxonomy::class_report(&g, a.n);
            emit(&a.out, &format!("{}\n", report.to_json_line()))?;
        }
        Command::Shells(a) => {
            let g = read_digraph(&a.graph)?;
            let mut text = String::new();
            let comps = shells::z_components(&g)?;
            if comps.is_empty() {
                text.push_str("no off-top components\n");
            }
            for comp in &comps {
                text.push_str(&format!("component {:?}\n", comp));
                match shells::find_shells(&g, comp)? {
                    Some(cap) => {
                        for (i, &z) in cap.z.iter().enumerate() {
                            text.push_str(&format!(
                                "  vertex {z}: bottom {:?} upper {:?} bounds [{}, {}]\n",
                                cap.bottom[i], cap.upper[i], cap.m_lo[i], cap.m_hi[i]
                            ));
                        }
                        text.push_str(&format!(
                            "  capsule ({}, {}) chain length {}\n",
                            cap.b_z, cap.u_z, cap.k_z
                        ));
                    }
                    None => text.push_str("  no capsule\n"),
                }
            }
            emit(&a.out, &text)?;
        }
        Command::Phi(a) => {
            let g = read_digraph(&a.graph)?;
            let phi = shells::phi(&g)?;
            emit(&a.out, &format!("{phi}\n"))?;
        }
        Command::Catalog(a) => match a.action {
            CatalogAction::Gen { kind, max_n, out } => {
                let kind = CatalogKind::parse(&kind)?;
                let cat = match env_max_n() {
                    Some(cap) if max_n <= cap => catalog::generate_unchecked(kind, max_n)?,
                    _ => catalog::generate(kind, max_n)?,
                };
                cat.save(&out)?;
                eprintln!("wrote {} members", cat.count());
            }
            CatalogAction::Info { file } => {
                let cat = Catalog::load(&file)?;
                let mut text = format!(
                    "catalog {} max_n={} total={}\n",
                    cat.kind.token(),
                    cat.max_n,
                    cat.count()
                );
                for n in 1..=cat.max_n {
                    text.push_str(&format!("n={n}: {}\n", cat.members_with(n).count()));
                }
                emit(&None, &text)?;
            }
        },
        Command::Verify(a) => {
            let max_n = a.max_n.or(env_max_n());
            let ids: Vec<&str> = if a.check == "all" {
                verifier::check_ids().to_vec()
            } else {
                vec![a.check.as_str()]
            };
            let mut all_passed = true;
            let mut combined = String::new();
            for id in ids {
                let report = verifier::run_check(id, max_n)?;
                all_passed &= report.passed();
                combined.push_str(&report.render());
            }
            print!("{combined}");
            if let Some(path) = &a.report {
                std::fs::write(path, &combined)?;
            }
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

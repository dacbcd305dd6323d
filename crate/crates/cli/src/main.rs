//! Command-line front end: generate graphs, compute encodings, run
//! refinements, compare pairs, build dominance grids, verify named
//! properties, and print the skip-links table.
//!
//! Exit codes are a stable contract: 0 = indistinguishable / pass,
//! 1 = distinguishable / fail, 2 = usage or computation error.

use clap::{Args, Parser, Subcommand};
use pewl_core::graph::{generate, read_edge_list, write_edge_list, Family, FeaturedGraph};
use pewl_core::harness::{
    build_corpus, csl_experiment, dominance_matrix, verify, ApeId, CorpusSpec, Engine, RpeId,
};
use pewl_core::refine::{rpe_2_wl, rpe_aug_wl, wl_classical, PairTest};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pewl",
    about = "Graph positional encodings and refinement-based distinguishability tests",
    version
)]
struct Cli {
    /// Worker threads for pair-level parallelism (0 = all cores).
    #[arg(long, global = true, default_value_t = 0, env = "PEWL_JOBS")]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph (or graph pair) and write edge-list files.
    Gen(GenArgs),
    /// Compute an encoding of a graph and write it as JSON.
    Encode(EncodeArgs),
    /// Run a refinement engine on one graph and export the color history.
    Refine(RefineArgs),
    /// Compare two graphs under a test; exit code carries the verdict.
    Compare(CompareArgs),
    /// Pairwise distinguishing-power grid over a corpus.
    Dominance(DominanceArgs),
    /// Run a named property verifier over a corpus.
    Verify(VerifyArgs),
    /// Pairwise skip-links distinguishability table.
    Csl(CslArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family: cycle | path | complete | star | csl | gnp | shrikhande |
    /// rook4x4 | fig_a_pair | featured_c4_pair | cutvertex_pair
    #[arg(long, env = "PEWL_FAMILY")]
    family: String,
    #[arg(long, env = "PEWL_N")]
    n: Option<usize>,
    /// Skip parameter for csl.
    #[arg(long, env = "PEWL_SKIP")]
    skip: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long, env = "PEWL_P")]
    p: Option<f64>,
    #[arg(long, default_value_t = 0, env = "PEWL_SEED")]
    seed: u64,
    /// Output path; pair families write <stem>.a.el and <stem>.b.el.
    #[arg(short, long, env = "PEWL_OUT")]
    out: PathBuf,
}

#[derive(Args)]
struct EncodeArgs {
    /// Relative encoding name (see README for the registry).
    #[arg(long, env = "PEWL_RPE")]
    rpe: Option<String>,
    /// Absolute encoding name.
    #[arg(long, env = "PEWL_APE")]
    ape: Option<String>,
    /// Override the encoding's quantization step.
    #[arg(long, env = "PEWL_QUANT_STEP")]
    quant_step: Option<f64>,
    #[arg(short = 'i', long, env = "PEWL_IN")]
    input: PathBuf,
    #[arg(short, long, env = "PEWL_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RefineArgs {
    /// classical | psi_wl | psi_2wl
    #[arg(long, env = "PEWL_ENGINE")]
    engine: String,
    #[arg(long, env = "PEWL_RPE")]
    rpe: Option<String>,
    #[arg(short = 'i', long, env = "PEWL_IN")]
    input: PathBuf,
    #[arg(short, long, env = "PEWL_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// classical | raw_ape | raw_rpe | psi_wl | psi_2wl
    #[arg(long, env = "PEWL_TEST")]
    test: String,
    #[arg(long, env = "PEWL_RPE")]
    rpe: Option<String>,
    #[arg(long, env = "PEWL_APE")]
    ape: Option<String>,
    /// Override the quantization step on both sides.
    #[arg(long, env = "PEWL_QUANT_STEP")]
    quant_step: Option<f64>,
    #[arg(short, env = "PEWL_A")]
    a: PathBuf,
    #[arg(short, env = "PEWL_B")]
    b: PathBuf,
}

#[derive(Args)]
struct DominanceArgs {
    /// standard | csl | random(n,count,seed=s) | file(path)
    #[arg(long, default_value = "standard", env = "PEWL_CORPUS")]
    corpus: String,
    /// Comma-separated encoding names.
    #[arg(long, env = "PEWL_ENCODINGS")]
    encodings: String,
    /// psi_wl | psi_2wl
    #[arg(long, default_value = "psi_wl", env = "PEWL_ENGINE")]
    engine: String,
    /// JSON report path (stdout when omitted).
    #[arg(short, long, env = "PEWL_OUT")]
    out: Option<PathBuf>,
    /// Also write the grid as CSV.
    #[arg(long, env = "PEWL_CSV")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: T3.5, T4.2, T4.4, T5.3, C5.4, T5.7, T5.8, T5.9, P5.10,
    /// P5.11, T5.13, B-CUT, B-DIAG, EX4.5
    #[arg(long, env = "PEWL_THEOREM")]
    theorem: String,
    #[arg(long, default_value = "standard", env = "PEWL_CORPUS")]
    corpus: String,
    #[arg(short, long, env = "PEWL_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CslArgs {
    /// Emit JSON instead of CSV.
    #[arg(long, env = "PEWL_JSON")]
    json: bool,
    #[arg(short, long, env = "PEWL_OUT")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Gen(args) => {
            let family = parse_family(&args)?;
            match generate(&family)? {
                pewl_core::graph::Generated::Single(g) => {
                    let text = write_edge_list(&FeaturedGraph::unfeatured(g));
                    std::fs::write(&args.out, text)?;
                }
                pewl_core::graph::Generated::Pair(a, b) => {
                    let stem = args.out.to_string_lossy();
                    let stem = stem.strip_suffix(".el").unwrap_or(&stem);
                    std::fs::write(format!("{stem}.a.el"), write_edge_list(&a))?;
                    std::fs::write(format!("{stem}.b.el"), write_edge_list(&b))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode(args) => {
            let g = read_edge_list(&args.input)?;
            let json = match (&args.rpe, &args.ape) {
                (Some(rpe), None) => {
                    let id = RpeId::parse(rpe)?;
                    let mut t = id.compute(&g.graph, g.n())?;
                    if let Some(q) = args.quant_step {
                        t.quant_step = q;
                    }
                    t.to_json()
                }
                (None, Some(ape)) => {
                    let id = ApeId::parse(ape)?;
                    let mut m = id.compute(&g.graph)?;
                    if let Some(q) = args.quant_step {
                        m.quant_step = q;
                    }
                    m.to_json()
                }
                _ => anyhow::bail!("pass exactly one of --rpe or --ape"),
            };
            emit(&args.out, &serde_json::to_string_pretty(&json)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Refine(args) => {
            let g = read_edge_list(&args.input)?;
            let json = match args.engine.as_str() {
                "classical" => wl_classical(&g)?.to_json(),
                "psi_wl" | "psi_2wl" => {
                    let rpe = args
                        .rpe
                        .as_deref()
                        .ok_or_else(|| anyhow::anyhow!("--rpe required for {}", args.engine))?;
                    let id = RpeId::parse(rpe)?;
                    let psi = id.compute(&g.graph, g.n())?;
                    if args.engine == "psi_wl" {
                        rpe_aug_wl(&g, &psi)?.to_json()
                    } else {
                        rpe_2_wl(&g, &psi)?.to_json()
                    }
                }
                other => anyhow::bail!("unknown engine '{other}'"),
            };
            emit(&args.out, &serde_json::to_string_pretty(&json)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let a = read_edge_list(&args.a)?;
            let b = read_edge_list(&args.b)?;
            let verdict = match args.test.as_str() {
                "classical" => pewl_core::compare(&a, &b, PairTest::Classical)?,
                "raw_ape" => {
                    let id = ApeId::parse(need(&args.ape, "--ape")?)?;
                    let pa = id.compute(&a.graph)?;
                    let pb = id.compute(&b.graph)?;
                    pewl_core::compare(&a, &b, PairTest::RawApe(&pa, &pb))?
                }
                "raw_rpe" | "psi_wl" | "psi_2wl" => {
                    let id = RpeId::parse(need(&args.rpe, "--rpe")?)?;
                    let (mut pa, mut pb) = id.compute_pair(&a.graph, &b.graph)?;
                    if let Some(q) = args.quant_step {
                        pa.quant_step = q;
                        pb.quant_step = q;
                    }
                    let test = match args.test.as_str() {
                        "raw_rpe" => PairTest::RawRpe(&pa, &pb),
                        "psi_wl" => PairTest::PsiWl(&pa, &pb),
                        _ => PairTest::Psi2Wl(&pa, &pb),
                    };
                    pewl_core::compare(&a, &b, test)?
                }
                other => anyhow::bail!("unknown test '{other}'"),
            };
            println!("{}", serde_json::to_string_pretty(&verdict)?);
            Ok(if verdict.distinguishable { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Dominance(args) => {
            let corpus = build_corpus(&CorpusSpec::parse(&args.corpus)?)?;
            let encodings: Vec<RpeId> = args
                .encodings
                .split(',')
                .map(|s| RpeId::parse(s.trim()))
                .collect::<Result<_, _>>()?;
            let engine = Engine::parse(&args.engine)
                .ok_or_else(|| anyhow::anyhow!("unknown engine '{}'", args.engine))?;
            let report = dominance_matrix(&corpus, &encodings, engine)?;
            if let Some(csv) = &args.csv {
                std::fs::write(csv, report.to_csv())?;
            }
            emit(&args.out, &serde_json::to_string_pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let corpus = build_corpus(&CorpusSpec::parse(&args.corpus)?)?;
            let result = verify(&args.theorem, &corpus)?;
            emit(&args.out, &serde_json::to_string_pretty(&result)?)?;
            Ok(if result.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Csl(args) => {
            let report = csl_experiment()?;
            let text = if args.json {
                serde_json::to_string_pretty(&report)?
            } else {
                report.to_csv()
            };
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn need<'a>(opt: &'a Option<String>, flag: &str) -> anyhow::Result<&'a str> {
    opt.as_deref().ok_or_else(|| anyhow::anyhow!("{flag} is required for this test"))
}

fn parse_family(args: &GenArgs) -> anyhow::Result<Family> {
    let need_n = || {
        args.n.ok_or_else(|| anyhow::anyhow!("--n is required for family '{}'", args.family))
    };
    Ok(match args.family.as_str() {
        "cycle" => Family::Cycle(need_n()?),
        "path" => Family::Path(need_n()?),
        "complete" => Family::Complete(need_n()?),
        "star" => Family::Star(need_n()?),
        "csl" => Family::Csl {
            n: need_n()?,
            skip: args.skip.ok_or_else(|| anyhow::anyhow!("--skip is required for csl"))?,
        },
        "gnp" => Family::Gnp {
            n: need_n()?,
            p: args.p.ok_or_else(|| anyhow::anyhow!("--p is required for gnp"))?,
            seed: args.seed,
        },
        "shrikhande" => Family::Shrikhande,
        "rook4x4" => Family::Rook4x4,
        "fig_a_pair" => Family::FigAPair,
        "featured_c4_pair" => Family::FeaturedC4Pair,
        "cutvertex_pair" => Family::CutvertexPair,
        other => anyhow::bail!("unknown family '{other}'"),
    })
}

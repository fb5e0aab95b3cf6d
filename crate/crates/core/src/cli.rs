//! Command-line front end for the `bwo` binary.
//!
//! Every command writes one deterministic document (JSON, or CSV for
//! `trace-orbit`) to `--out` or standard output. Exit status is 0 on success,
//! 1 on input errors and 2 when a verification fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::amalgam::{BookAutomorphism, BookGroup, SearchBudget};
use crate::error::{Error, Result};
use crate::jsj::{self, JsjGraph, PieceGraph};
use crate::repvar;
use crate::rtree::{self, ArcSystem, MetricLabeledTree};
use crate::teich::{self, SurvivalInput};
use crate::verifier::{self, ReportConfig, Status, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bwo", version, about = "Books of I-bundles: windows, shuffles, twists and the rectification pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `--budget E` or `--budget E,L`: exponent bound and conjugator length bound.
#[derive(Debug, Clone, Copy)]
pub struct BudgetArg(pub SearchBudget);

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut b = SearchBudget::default();
        let mut parts = s.split(',');
        let e = parts.next().unwrap_or_default().trim();
        b.exponent = e.parse().map_err(|_| format!("bad exponent budget {e:?}"))?;
        if let Some(l) = parts.next() {
            b.length = l.trim().parse().map_err(|_| format!("bad length budget {l:?}"))?;
        }
        if parts.next().is_some() || b.exponent <= 0 || b.length == 0 {
            return Err(format!("budget {s:?} must be E or E,L with positive values"));
        }
        Ok(BudgetArg(b))
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Pipeline {
    #[arg(long, default_value_t = 4)]
    pub pages: usize,
    #[arg(long, default_value_t = 1)]
    pub genus: usize,
    #[arg(long, default_value_t = 16)]
    pub iters: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<BudgetArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Pipeline {
    fn config(&self) -> Result<ReportConfig> {
        if self.pages == 0 || self.genus == 0 || self.iters == 0 {
            return Err(Error::InvalidArgument("--pages, --genus and --iters must be positive".into()));
        }
        let mut cfg = ReportConfig::new(self.pages, self.genus, self.iters, self.seed);
        if let Some(b) = self.budget {
            cfg.budget = b.0;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
pub enum BookCommand {
    /// Writes a primitive book with uniform page genus.
    New {
        #[arg(long)]
        pages: usize,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Book(BookCommand),
    /// Window components of a book or a piece graph.
    Window {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Regluing with the attachment order relabelled by a permutation such as `2,1,3,4`.
    Shuffle {
        book: PathBuf,
        perm: String,
        #[command(flatten)]
        common: Common,
    },
    /// Toggles the flip mark of one page.
    Flip {
        book: PathBuf,
        page: usize,
        #[command(flatten)]
        common: Common,
    },
    ClassifyPair {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Restriction verdicts, biconditional, feasibility and rectification for
    /// the twisted primitive book; writes report.json.
    VerifyCounterexample(Pipeline),
    /// Rectifies verdicts from a file, or computes them for the twisted book.
    Rectify {
        verdicts: Option<PathBuf>,
        #[command(flatten)]
        pipeline: Pipeline,
    },
    DualTree {
        arcs: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    RealizeTree {
        tree: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    SurvivingSubsurface {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Growth scan of a word under the twist automorphism (or a script), as CSV.
    TraceOrbit {
        word: String,
        /// JSON list of `{"twist":{...}}` / `{"relabel":{...}}` steps.
        #[arg(long)]
        script: Option<PathBuf>,
        #[command(flatten)]
        pipeline: Pipeline,
    },
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit: i32,
    pub note: Option<String>,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn ok(output: String, out: &Option<PathBuf>) -> Self {
        Outcome { output, exit: EXIT_OK, note: None, out: out.clone() }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn parse_perm(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad permutation entry {x:?}"))))
        .collect()
}

fn undetermined(verdicts: &[Verdict]) -> Vec<String> {
    verdicts
        .iter()
        .filter(|v| matches!(v.status, Status::Undetermined { .. }))
        .map(|v| v.subgroup.to_string())
        .collect()
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Book(BookCommand::New { pages, genus, out }) => {
            let g = jsj::uniform_book(pages, genus, 1)?;
            Ok(Outcome::ok(g.to_json() + "\n", &out))
        }
        Command::Window { input, common } => {
            let text = read(&input)?;
            let window = match JsjGraph::from_json(&text) {
                Ok(g) => jsj::window(&g),
                Err(book_err) => {
                    let pg: PieceGraph = serde_json::from_str(&text)
                        .map_err(|_| Error::InvalidArgument(format!("neither a book nor a piece graph: {book_err}")))?;
                    jsj::window_of(&pg)?
                }
            };
            Ok(Outcome::ok(pretty(&json!({ "count": window.len(), "components": window.components })), &common.out))
        }
        Command::Shuffle { book, perm, common } => {
            let g = JsjGraph::from_json(&read(&book)?)?;
            let p = jsj::Permutation::from_images(parse_perm(&perm)?)?;
            Ok(Outcome::ok(jsj::shuffle(&g, &p)?.to_json() + "\n", &common.out))
        }
        Command::Flip { book, page, common } => {
            let g = JsjGraph::from_json(&read(&book)?)?;
            Ok(Outcome::ok(jsj::flip(&g, page)?.to_json() + "\n", &common.out))
        }
        Command::ClassifyPair { a, b, common } => {
            let ga = JsjGraph::from_json(&read(&a)?)?;
            let gb = JsjGraph::from_json(&read(&b)?)?;
            Ok(Outcome::ok(pretty(&json!({ "class": jsj::classify_pair(&ga, &gb) })), &common.out))
        }
        Command::VerifyCounterexample(p) => {
            let report = verifier::verify_counterexample(p.config()?)?;
            let open = undetermined(&report.verdicts);
            let note = if !open.is_empty() {
                Some(format!("search budget exhausted for {}", open.join(", ")))
            } else if !report.passed {
                Some("verification failed".into())
            } else {
                None
            };
            let exit = if report.passed { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome { output: pretty(&report), exit, note, out: p.out.clone() })
        }
        Command::Rectify { verdicts, pipeline } => {
            let cfg = pipeline.config()?;
            let g = jsj::uniform_book(cfg.pages, cfg.genus, 1)?;
            let verdicts: Vec<Verdict> = match verdicts {
                Some(path) => serde_json::from_str(&read(&path)?).map_err(|e| Error::InvalidArgument(format!("verdicts JSON: {e}")))?,
                None => {
                    let group = BookGroup::from_book(&g);
                    let phi = verifier::counterexample_automorphism(&group)?;
                    let rep = repvar::build_rep(&group, cfg.seed)?;
                    verifier::counterexample_verdicts(&group, &phi, cfg.iters, Some(&rep), cfg.budget, cfg.thresholds)?
                }
            };
            let rect = verifier::rectify(&g, &verdicts)?;
            let shuffled = jsj::shuffle_to_order(&g, &rect.sigma)?;
            let exit = if rect.verified { EXIT_OK } else { EXIT_VERIFY };
            let doc = json!({ "config": cfg, "verdicts": verdicts, "rectification": rect, "shuffled_book": shuffled });
            let note = (!rect.verified).then(|| "no window subsurface satisfies the biconditional".to_string());
            Ok(Outcome { output: pretty(&doc), exit, note, out: pipeline.out.clone() })
        }
        Command::DualTree { arcs, common } => {
            let s = ArcSystem::from_json(&read(&arcs)?)?;
            Ok(Outcome::ok(rtree::dual_tree(&s)?.to_json() + "\n", &common.out))
        }
        Command::RealizeTree { tree, common } => {
            let t = MetricLabeledTree::from_json(&read(&tree)?)?;
            let n = t.labels().len();
            Ok(Outcome::ok(pretty(&rtree::realize(&t, n)?), &common.out))
        }
        Command::SurvivingSubsurface { input, common } => {
            let inp: SurvivalInput =
                serde_json::from_str(&read(&input)?).map_err(|e| Error::InvalidArgument(format!("input JSON: {e}")))?;
            let cfg = inp.config.unwrap_or_default();
            let classes = teich::classify_all(&inp.decomposition, &inp.sequence, &cfg)?;
            let s = teich::surviving_subsurface(&inp.decomposition, &classes)?;
            Ok(Outcome::ok(pretty(&json!({ "config": cfg, "classes": classes, "subsurface": s })), &common.out))
        }
        Command::TraceOrbit { word, script, pipeline } => {
            let cfg = pipeline.config()?;
            let group = BookGroup::uniform(cfg.pages, cfg.genus)?;
            let f = match script {
                Some(path) => BookAutomorphism::parse_script(&group, &read(&path)?)?,
                None => verifier::counterexample_automorphism(&group)?,
            };
            f.check_relators(&group)?;
            let w = group.reduce(&group.parse(&word)?);
            let rep = repvar::build_rep(&group, cfg.seed)?;
            let scan = repvar::growth_scan(&rep, &group, &f, &w, cfg.iters)?;
            let summary = json!({
                "config": cfg,
                "automorphism": f.label,
                "word": w.to_string(),
                "slope": scan.slope,
                "core_trlength": rep.core.trlength(),
                "excluded": scan.excluded,
            });
            let mut out = Outcome::ok(scan.to_csv(), &pipeline.out);
            out.note = Some(serde_json::to_string(&summary).expect("serializable"));
            Ok(out)
        }
    }
}

/// Runs the CLI on `args`, writing outputs, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(outcome) => {
            match &outcome.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &outcome.output) {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{}", outcome.output),
            }
            if let Some(note) = &outcome.note {
                eprintln!("{note}");
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

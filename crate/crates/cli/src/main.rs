use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{ArgAction, Parser, Subcommand};

use crown_core::curves::pseudo::{build_pseudocoronation, parse_ordering, Monodromy, DEFAULT_ORDERING};
use crown_core::curves::{parse_curve_file, CurveError};
use crown_core::grading::build_grading_system;
use crown_core::moves::{apply_command, parse_script};
use crown_core::salient::SalientError;
use crown_core::{compare, parse_diagram, salient_set, StackedDiagram};

mod render;
mod report;

use report::RunReport;

#[derive(Parser)]
#[command(name = "crown", version, about = "Salient sets of stacked curve diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram and summarize genus and allowability.
    Check { path: String },
    /// Emit the grading system.
    Gradings {
        path: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve the grading system and print the salient set.
    Salient { path: String },
    /// Compare two salient sets up to cyclic rotation.
    Compare { a: String, b: String },
    /// Build the pseudocoronation diagram for a bundled monodromy.
    Pseudocoronation {
        #[arg(long)]
        knot: String,
        /// Designate the staircase crossings as salient.
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        designate_staircase: bool,
        #[arg(long)]
        ordering_table: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the curves.
        #[arg(long)]
        curves: Option<PathBuf>,
    },
    /// Apply a move script.
    Move {
        path: String,
        script: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a diagram or curve file as SVG.
    Render {
        path: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit status 1 for bad input, 2 for a broken internal invariant.
enum Failure {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::User(e.into())
    }
}

fn internal(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Internal(e.into())
}

fn salient_failure(e: SalientError) -> Failure {
    match e {
        SalientError::Diagram(_) => Failure::User(e.into()),
        _ => internal(e),
    }
}

fn curve_failure(e: CurveError) -> Failure {
    match e {
        CurveError::Syntax { .. } | CurveError::UnknownCurve(_) | CurveError::Word(_) => Failure::User(e.into()),
        _ => internal(e),
    }
}

fn read_input(path: &str) -> anyhow::Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {path}"))
    }
}

fn load_diagram(path: &str, report: &mut RunReport) -> Result<StackedDiagram, Failure> {
    let bytes = read_input(path)?;
    report.input(path, &bytes);
    let text = String::from_utf8(bytes).with_context(|| format!("{path} is not UTF-8"))?;
    parse_diagram(&text).with_context(|| format!("parsing {path}")).map_err(Failure::User)
}

/// Writes `data` to `-o` or stdout. Returns whether stdout was used.
fn emit(output: &Option<PathBuf>, data: &str, report: &mut RunReport) -> anyhow::Result<bool> {
    match output {
        Some(p) => {
            fs::write(p, data).with_context(|| format!("writing {}", p.display()))?;
            report.out("wrote", format!("{} sha256:{}", p.display(), report::digest(data.as_bytes())));
            Ok(false)
        }
        None => {
            io::stdout().write_all(data.as_bytes())?;
            Ok(true)
        }
    }
}

fn run(cmd: Command) -> Result<(RunReport, bool), Failure> {
    let t = Instant::now();
    let (mut report, to_stdout) = match cmd {
        Command::Check { path } => {
            let mut r = RunReport::new(format!("check {path}"));
            let d = load_diagram(&path, &mut r)?;
            let a = d.check_allowable();
            r.out("valid", "yes");
            r.out("curves", d.curve_count());
            r.out("crossings", d.crossing_count());
            r.out("faces", d.faces().len());
            r.out("genus", d.genus());
            r.out("allowable", if a.is_allowable() { "yes" } else { "no" });
            r.out("faces embedded", if a.faces_embedded() { "yes" } else { "no" });
            r.out("consecutive pairs meet once", if a.pairs_meet_once() { "yes" } else { "no" });
            (r, false)
        }
        Command::Gradings { path, output } => {
            let mut r = RunReport::new(format!("gradings {path}"));
            let d = load_diagram(&path, &mut r)?;
            let gs = build_grading_system(&d);
            r.out("variables", gs.n_vars());
            r.out("equations", gs.equations.len());
            let used = emit(&output, &gs.emit(), &mut r)?;
            (r, used)
        }
        Command::Salient { path } => {
            let mut r = RunReport::new(format!("salient {path}"));
            let d = load_diagram(&path, &mut r)?;
            let s = salient_set(&d).map_err(salient_failure)?;
            for line in s.report().lines() {
                let (k, v) = line.split_once(": ").unwrap_or((line, ""));
                r.out(k, v);
            }
            (r, false)
        }
        Command::Compare { a, b } => {
            let mut r = RunReport::new(format!("compare {a} {b}"));
            let da = load_diagram(&a, &mut r)?;
            let db = load_diagram(&b, &mut r)?;
            let sa = salient_set(&da).map_err(salient_failure)?;
            let sb = salient_set(&db).map_err(salient_failure)?;
            r.out("system ranks", format!("{} {}", sa.system_rank, sb.system_rank));
            r.out("salient ranks", format!("{} {}", sa.salient_rank(), sb.salient_rank()));
            match compare(&sa, &sb) {
                Some(rot) => {
                    r.out("verdict", "EQUAL");
                    r.out("rotation", rot);
                }
                None => r.out("verdict", "NOT EQUAL"),
            }
            (r, false)
        }
        Command::Pseudocoronation {
            knot,
            designate_staircase,
            ordering_table,
            output,
            curves,
        } => {
            let mut r = RunReport::new(format!("pseudocoronation --knot {knot}"));
            let mono = Monodromy::bundled();
            let word = mono.knot(&knot).ok_or_else(|| {
                anyhow!("unknown knot `{knot}`; presets: {}", mono.knot_names().join(", "))
            })?;
            let table = match &ordering_table {
                Some(p) => {
                    let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
                    r.input(&p.display().to_string(), &bytes);
                    String::from_utf8(bytes)?
                }
                None => DEFAULT_ORDERING.to_string(),
            };
            let ordering = parse_ordering(&table).map_err(|e| anyhow!("ordering table: {e}"))?;
            let p = build_pseudocoronation(word, &ordering, designate_staircase).map_err(curve_failure)?;
            r.out("curves", p.diagram.curve_count());
            r.out("crossings", p.diagram.crossing_count());
            r.out("genus", p.diagram.genus());
            if let Some(c) = &curves {
                let text = p.curve_file().to_text();
                fs::write(c, &text).with_context(|| format!("writing {}", c.display()))?;
                r.out("wrote", format!("{} sha256:{}", c.display(), report::digest(text.as_bytes())));
            }
            let used = emit(&output, &p.diagram.to_text(), &mut r)?;
            (r, used)
        }
        Command::Move { path, script, output } => {
            let mut r = RunReport::new(format!("move {path} {script}"));
            let mut d = load_diagram(&path, &mut r)?;
            let bytes = read_input(&script)?;
            r.input(&script, &bytes);
            let cmds = parse_script(&String::from_utf8(bytes)?).with_context(|| format!("parsing {script}"))?;
            for (i, c) in cmds.iter().enumerate() {
                d = apply_command(&d, c).with_context(|| format!("move {} `{c}`", i + 1))?;
            }
            r.out("moves", cmds.len());
            r.out("crossings", d.crossing_count());
            let used = emit(&output, &d.to_text(), &mut r)?;
            (r, used)
        }
        Command::Render { path, output } => {
            let mut r = RunReport::new(format!("render {path}"));
            let bytes = read_input(&path)?;
            r.input(&path, &bytes);
            let text = String::from_utf8(bytes)?;
            let svg = if text.trim_start().starts_with("plcurves") {
                let f = parse_curve_file(&text).map_err(curve_failure)?;
                render::curves_svg(&f).map_err(curve_failure)?
            } else {
                render::diagram_svg(&parse_diagram(&text).with_context(|| format!("parsing {path}"))?)
            };
            let used = emit(&output, &svg, &mut r)?;
            (r, used)
        }
    };
    report.elapsed = t.elapsed();
    Ok((report, to_stdout))
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok((report, data_on_stdout)) => {
            // Keep stdout clean when it carries a file for the next stage.
            if data_on_stdout {
                eprint!("{report}");
            } else {
                print!("{report}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}

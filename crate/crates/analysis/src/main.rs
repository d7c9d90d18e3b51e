use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;

use lg_analysis::batch::{input_error, ErrorKind, ResultsFile};
use lg_analysis::{emit_report, run_batch, symmetry_flags, Annotations, ReportMode};
use lg_core::engine::{evaluate_invariant, representation, EvaluationBudget};
use lg_core::knot::read_knot_table;
use lg_core::vogel::pd_to_braid_traced;
use lg_core::{BraidWord, Invariant, KnotRecord, PdCode, RepresentationData};

#[derive(Parser)]
#[command(name = "lg", version, about = "Links-Gould invariants of knots given as braids")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one braid word such as "1,-2,1,-2".
    Eval {
        braid: String,
        #[arg(long, default_value = "lg21")]
        invariant: Invariant,
        #[arg(long)]
        strands: Option<usize>,
        /// Representation data file instead of the bundled one.
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Print symmetry flags as JSON after the value.
        #[arg(long)]
        flags: bool,
    },
    /// Evaluate every row of a knot table and write a results file.
    Batch {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "lg21")]
        invariant: Invariant,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(short, long, env = "LG_JOBS")]
        jobs: Option<usize>,
    },
    /// Group knots of a results file by invariant value.
    Cluster {
        results: PathBuf,
        /// Clique annotations instead of the bundled ones.
        #[arg(long)]
        annotations: Option<PathBuf>,
    },
    /// Symmetry and chirality report for a results file.
    Symmetry {
        results: PathBuf,
        /// Include per-knot flags.
        #[arg(long)]
        full: bool,
    },
    /// Full JSON report for a results file.
    Report {
        results: PathBuf,
        #[arg(long, default_value = "full")]
        mode: ReportMode,
        #[arg(long)]
        annotations: Option<PathBuf>,
    },
    /// Convert PD codes to braids. Lines are "PD" or "name PD"; output is a
    /// knot table.
    Pd2braid {
        /// A file of PD codes, or a single PD code; reads stdin when absent.
        input: Option<String>,
        /// Print the incoherence sequence to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Check the bundled representation data.
    Selftest,
}

enum Failure {
    Input(String),
    Engine(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn load_rep(inv: Invariant, path: Option<PathBuf>) -> Result<RepresentationData, Failure> {
    let Some(p) = path else { return Ok(representation(inv).clone()) };
    let rep = RepresentationData::from_json(&std::fs::read_to_string(&p)?).map_err(input)?;
    if rep.label != inv {
        return Err(Failure::Input(format!("{} holds {:?} data, not {:?}", p.display(), rep.label, inv)));
    }
    Ok(rep)
}

fn load_annotations(path: Option<PathBuf>) -> Result<Annotations, Failure> {
    match path {
        None => Ok(Annotations::bundled()),
        Some(p) => Annotations::parse(&std::fs::read_to_string(p)?).map_err(input),
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(input)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Command::Eval { braid, invariant, strands, rep, flags } => {
            let b = BraidWord::parse(&braid, strands).map_err(input)?;
            let rep = load_rep(invariant, rep)?;
            let v = evaluate_invariant(&b, &rep, &EvaluationBudget::default())
                .map_err(|e| Failure::Engine(e.to_string()))?;
            println!("{v}");
            if flags {
                print_json(&symmetry_flags(&v))?;
            }
        }
        Command::Batch { input: path, output, invariant, rep, jobs } => {
            let rep = load_rep(invariant, rep)?;
            let rows = read_knot_table(BufReader::new(File::open(&path)?))?;
            let mut records = vec![];
            let mut bad = vec![];
            for (i, r) in rows.into_iter().enumerate() {
                match r {
                    Ok(r) => records.push(r),
                    Err(e) => bad.push((i, input_error(&format!("row-{}", i + 1), e.to_string()))),
                }
            }
            let jobs = jobs.unwrap_or_else(rayon::current_num_threads);
            info!("evaluating {} knots on {} threads", records.len(), jobs);
            let mut res = run_batch(&records, &rep, jobs);
            for (i, e) in bad {
                log::error!("{}", e.error.as_ref().unwrap().message);
                res.results.insert(i, e);
            }
            res.write(&output).map_err(input)?;
            match res.worst_error() {
                None => {}
                Some(ErrorKind::Input) => return Err(Failure::Input("some rows could not be read".into())),
                Some(_) => return Err(Failure::Engine("some evaluations failed".into())),
            }
        }
        Command::Cluster { results, annotations } => {
            let res = ResultsFile::read(&results).map_err(input)?;
            let ann = load_annotations(annotations)?;
            print_json(&emit_report(&res, &ann, ReportMode::Cliques))?;
        }
        Command::Symmetry { results, full } => {
            let res = ResultsFile::read(&results).map_err(input)?;
            let mut rep = emit_report(&res, &Annotations::default(), ReportMode::Full);
            rep.cliques = None;
            if !full {
                rep.knots = None;
            }
            print_json(&rep)?;
        }
        Command::Report { results, mode, annotations } => {
            let res = ResultsFile::read(&results).map_err(input)?;
            print_json(&emit_report(&res, &load_annotations(annotations)?, mode))?;
        }
        Command::Pd2braid { input: src, trace } => {
            let lines: Vec<String> = match src {
                Some(s) if s.trim_start().starts_with(['X', 'P']) || s.trim().is_empty() => vec![s],
                Some(p) => BufReader::new(File::open(p)?).lines().collect::<Result<_, _>>()?,
                None => io::stdin().lock().lines().collect::<Result<_, _>>()?,
            };
            let mut out = io::stdout().lock();
            let mut failed = false;
            for (i, line) in lines.iter().enumerate() {
                let t = line.trim();
                if t.starts_with('#') || (t.is_empty() && lines.len() > 1) {
                    continue;
                }
                let (name, code) = match t.find(['X', 'P']) {
                    Some(0) | None => (format!("pd-{}", i + 1), t),
                    Some(k) => (t[..k].trim().to_string(), &t[k..]),
                };
                let pd = PdCode::parse(code).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
                match pd_to_braid_traced(&pd) {
                    Ok((b, tr)) => {
                        if trace {
                            eprintln!("{name}\t{:?}", tr.incoherence);
                        }
                        writeln!(out, "{}", KnotRecord::new(&name, b).to_tsv_row())?;
                    }
                    Err(e) => {
                        log::error!("{name}: {e}");
                        failed = true;
                    }
                }
            }
            if failed {
                return Err(Failure::Engine("some diagrams could not be converted".into()));
            }
        }
        Command::Selftest => {
            let mut ok = true;
            for inv in [Invariant::LG21, Invariant::LG11] {
                let r = representation(inv).validate();
                println!("{inv:?}\n{r}");
                ok &= r.passed();
            }
            if !ok {
                return Err(Failure::Engine("representation data failed validation".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

//! `nestfold`: derive, emit, evaluate and check dependently typed folds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use nestfold::check::{self, Bounds, Profile};
use nestfold::corpus::{self, EntryKind};
use nestfold::derive::{artifacts_for, derive_fold_spec, DerivedArtifacts, FoldSpec};
use nestfold::emit::{self, Backend, EmitOptions, Part};
use nestfold::interp::parse_value;
use nestfold::{load_program, Program, Value};

#[derive(Parser)]
#[command(name = "nestfold", version, about = "Dependently typed folds for nested data types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the index type, fold and companions of a declaration.
    Derive {
        file: PathBuf,
        #[arg(long = "type", value_name = "ROOT")]
        root: String,
        /// Print the artifacts as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        choice: FoldChoice,
    },
    /// Write Agda or JSON for one root or for the whole corpus.
    Emit(EmitArgs),
    /// Run a corpus function on value literals.
    Eval {
        #[arg(long = "fn", value_name = "NAME")]
        name: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Value literals or corpus literal names.
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// Check properties over exhaustively enumerated values.
    Check(CheckArgs),
    /// Inspect the corpus registry.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Args)]
struct FoldChoice {
    /// Always use the mechanically derived fold, even for roots with a
    /// presented fold.
    #[arg(long)]
    direct: bool,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(required_unless_present = "corpus")]
    file: Option<PathBuf>,
    #[arg(long = "type", value_name = "ROOT", required_unless_present = "corpus", conflicts_with = "corpus")]
    root: Option<String>,
    /// Emit every presented fold of the corpus.
    #[arg(long)]
    corpus: bool,
    #[arg(long, default_value = "agda")]
    backend: String,
    /// Comma-separated parts (default: all).
    #[arg(long)]
    include: Option<String>,
    #[arg(short = 'o', long = "out", default_value = ".")]
    out: PathBuf,
    /// Leave out the type-in-type pragma.
    #[arg(long)]
    no_type_in_type: bool,
    #[command(flatten)]
    choice: FoldChoice,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "which")]
struct Which {
    #[arg(long)]
    property: Option<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    which: Which,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    max_index: Option<usize>,
    /// Recorded in the output; enumeration is exhaustive and does not use it.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Overrides NESTFOLD_PROFILE.
    #[arg(long)]
    profile: Option<String>,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List registry entries, optionally filtered.
    List {
        /// Substring of the entry name.
        filter: Option<String>,
        #[arg(long)]
        kind: Option<String>,
    },
}

/// Errors that map to exit code 2.
struct Usage(anyhow::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, Usage> {
    match cmd {
        Command::Derive { file, root, json, choice } => cmd_derive(&file, &root, json, choice.direct),
        Command::Emit(a) => cmd_emit(a),
        Command::Eval { name, index, values } => cmd_eval(&name, index, &values),
        Command::Check(a) => return cmd_check(a).map_err(Usage),
        Command::Corpus { action: CorpusAction::List { filter, kind } } => {
            cmd_corpus(filter.as_deref(), kind.as_deref())
        }
    }
    .map(|()| true)
    .map_err(Usage)
}

fn read_program(file: &Path) -> Result<Program> {
    let src = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    load_program(&src).map_err(|e| anyhow!("{}: {e}", file.display()))
}

fn artifacts(prog: &Program, root: &str, direct: bool) -> Result<DerivedArtifacts> {
    let spec: FoldSpec = match corpus::presented_fold(prog, root) {
        Some(s) if !direct => s,
        _ => derive_fold_spec(prog, root)?,
    };
    Ok(artifacts_for(prog, spec)?)
}

fn summary(a: &DerivedArtifacts) -> String {
    let f = &a.fold_spec;
    let ix = &a.index_type;
    let ctors: Vec<String> = ix.ctors.iter().map(|c| format!("{}/{}", c.name, c.arity)).collect();
    let mut s = format!("index type {}: {}\n", ix.name, ctors.join(", "));
    s.push_str(&format!("interpretation {} ({} rules)\n", a.interpretation.name, a.interpretation.rules.len()));
    s.push_str(&format!("fold {} ({} cases)\n", f.name, f.cases.len()));
    for c in &f.cases {
        let rec: Vec<String> = c.recursive_args().map(|(_, i)| i.to_string()).collect();
        s.push_str(&format!("  {} at {}: {}", c.name, c.index, c.pattern.render(false)));
        if !rec.is_empty() {
            s.push_str(&format!(" -> {}", rec.join("; ")));
        }
        s.push('\n');
    }
    s.push_str(&format!("induction {}\n", a.induction_spec.name));
    let args: Vec<&str> = a.hofold.args.iter().map(|x| x.name.as_str()).collect();
    s.push_str(&format!("hofold {} ({}) at {}\n", a.hofold.name, args.join(", "), a.hofold.start_index));
    s.push_str(&format!("indexed rep {} ({} constructors)\n", a.indexed_rep.decl.name, a.indexed_rep.decl.ctors.len()));
    s.push_str(&format!("church {}\n", a.church.name));
    s
}

fn cmd_derive(file: &Path, root: &str, json: bool, direct: bool) -> Result<()> {
    let prog = read_program(file)?;
    let a = artifacts(&prog, root, direct)?;
    if json {
        print!("{}", emit::emit_json(&a));
    } else {
        print!("{}", summary(&a));
    }
    Ok(())
}

fn cmd_emit(a: EmitArgs) -> Result<()> {
    let backend: Backend = a.backend.parse()?;
    let include = match &a.include {
        Some(list) => EmitOptions::parse_include(list)?,
        None => Part::ALL.into_iter().collect(),
    };
    let mut jobs: Vec<(Program, String)> = Vec::new();
    if a.corpus {
        for (name, root, _) in corpus::presented() {
            jobs.push((corpus::program(name).clone(), root.to_string()));
        }
    } else {
        let file = a.file.as_ref().expect("clap requires a file");
        jobs.push((read_program(file)?, a.root.clone().expect("clap requires a root")));
    }
    let mut outputs = Vec::new();
    for (prog, root) in &jobs {
        let art = artifacts(prog, root, a.choice.direct)?;
        let opts =
            EmitOptions { backend, include: include.clone(), module: root.clone(), type_in_type: !a.no_type_in_type };
        outputs.push(emit::emit(prog, &art, &opts)?);
    }
    fs::create_dir_all(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
    for (name, text) in outputs {
        let path = a.out.join(name);
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn value_arg(s: &str) -> Result<Value> {
    if let Some(v) = corpus::literal(s) {
        return Ok(v);
    }
    parse_value(s).map_err(|e| anyhow!("`{s}`: {e}"))
}

fn cmd_eval(name: &str, index: usize, values: &[String]) -> Result<()> {
    if !corpus::is_callable(name) {
        bail!("`{name}` is not a callable corpus function");
    }
    let args = values.iter().map(|s| value_arg(s)).collect::<Result<Vec<_>>>()?;
    let v = corpus::eval_named(name, index, &args)?;
    println!("{v}");
    Ok(())
}

fn bounds(a: &CheckArgs) -> Result<Bounds> {
    let profile = match &a.profile {
        Some(p) => p.parse::<Profile>()?,
        None => Profile::from_env()?,
    };
    let mut b = Bounds::for_profile(profile);
    if let Some(k) = a.max_size {
        b = b.with_max_size(k);
    }
    if let Some(n) = a.max_index {
        b = b.with_max_index(n);
    }
    b.validate()?;
    Ok(b)
}

fn cmd_check(a: CheckArgs) -> Result<bool> {
    let b = bounds(&a)?;
    let reports = match &a.which.property {
        Some(name) => vec![check::run_property(name, &b)?],
        None => check::run_suite(&b)?,
    };
    let ok = reports.iter().all(|r| r.passed());
    if a.json {
        let out = serde_json::json!({ "seed": a.seed, "bounds": b, "reports": reports });
        println!("{}", serde_json::to_string_pretty(&out).expect("reports serialize"));
    } else {
        if let Some(s) = a.seed {
            println!("seed {s}");
        }
        for r in &reports {
            println!("{}", r.summary());
            if let Some(c) = &r.counterexample {
                println!("  counterexample at {}: {}", c.index, c.inputs.join(", "));
                println!("  left  {}", c.left);
                println!("  right {}", c.right);
            }
        }
    }
    Ok(ok)
}

fn cmd_corpus(filter: Option<&str>, kind: Option<&str>) -> Result<()> {
    let kind = match kind {
        None => None,
        Some(k) => Some(
            [
                EntryKind::Declaration,
                EntryKind::Interpretation,
                EntryKind::FoldSpec,
                EntryKind::Function,
                EntryKind::Literal,
            ]
            .into_iter()
            .find(|e| e.as_str() == k)
            .ok_or_else(|| anyhow!("unknown kind `{k}`"))?,
        ),
    };
    for e in corpus::entries() {
        if kind.is_some_and(|k| k != e.kind) || filter.is_some_and(|f| !e.name.contains(f)) {
            continue;
        }
        println!("{:<14} {:<14} {:<7} {}", e.name, e.kind.as_str(), e.group, e.about);
    }
    Ok(())
}

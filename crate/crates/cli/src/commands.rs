//! Subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use descoord::coordination::{
    is_conditionally_closed, is_conditionally_controllable, is_conditionally_decomposable,
    run as run_pipeline, CoordinationError, CoordinationProblem, PipelineOptions,
};
use descoord::corpus::{self, DecompositionFixture, ProblemFixture};
use descoord::fsm::{compose_all, minimize, project, EventTable, Generator, ProjectionSpec};
use descoord::observer::{is_lcc, is_observer, is_observer_generated};
use descoord::oracle::harness::{run_cross_validation, BOUND, MIN_BOUND};
use descoord::supervisory::{is_controllable, is_lm_closed, supcon};
use descoord::{Verdict, Witness};

use crate::dot::to_dot;
use crate::format::{
    event_names, event_set, read_automaton, read_problem, read_shared, save_text, write_automaton,
    Model, Problem, ProblemFile,
};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "descoord",
    version,
    about = "Coordination control synthesis for modular discrete-event systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synchronous product of automata.
    Compose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Natural projection onto a set of events.
    Project {
        file: PathBuf,
        /// Kept events, comma separated.
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Supremal controllable sublanguage of the specification.
    Supcon {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reachable and coreachable part.
    Trim {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimal automaton with the same languages.
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide a property. Exit code 0 when it holds, 1 when it fails, 2 on
    /// errors.
    Check {
        #[command(subcommand)]
        property: Property,
    },
    /// Coordinator, supervisors and nonblocking coordinator for a problem.
    Coordinate {
        #[arg(long)]
        problem: PathBuf,
        /// Directory for the report and the automata.
        #[arg(long)]
        out: PathBuf,
        /// Extend the coordinator events until the projections are observers.
        #[arg(long)]
        step2b: bool,
        /// Use the synthesis for prefix-closed languages.
        #[arg(long)]
        prefix_closed: bool,
        /// Also compare with the monolithic supremal controllable language.
        #[arg(long)]
        monolithic: bool,
    },
    /// Cross-validate against the word-set reference implementation.
    Oracle {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Word length bound of the enumerations.
        #[arg(long, default_value_t = BOUND)]
        bound: usize,
    },
    /// Graphviz DOT text on standard output.
    Dot { file: PathBuf },
    /// Write the bundled example problems.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Property {
    /// Specification controllable with respect to the plant.
    Controllable {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
    },
    /// Specification closed with respect to the marked plant language.
    LmClosed {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        plant: PathBuf,
    },
    /// Conditional decomposability of the problem specification.
    CondDecomposable {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Conditional controllability of the problem specification.
    CondControllable {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Conditional closedness of the problem specification.
    CondClosed {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Projection is an observer for the marked language.
    Observer {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
        /// Check the generated language instead.
        #[arg(long)]
        generated: bool,
    },
    /// Projection is locally control consistent.
    Lcc {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
    },
    /// Synchronous product of the automata is nonblocking.
    Nonblocking {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Compose { files, output } => {
            let models = read_shared(files)?;
            let g = compose_all(models.iter().map(|m| &m.generator))?;
            emit(&g.into(), output.as_deref(), out)
        }
        Command::Project {
            file,
            events,
            output,
        } => {
            let m = read_automaton(file)?;
            let kept = events_of(m.generator.table(), events, file)?;
            emit(
                &project(&m.generator, &kept.kept).into(),
                output.as_deref(),
                out,
            )
        }
        Command::Supcon {
            spec,
            plant,
            output,
        } => {
            let [k, g] = pair(spec, plant)?;
            emit(&supcon(&k, &g)?.into(), output.as_deref(), out)
        }
        Command::Trim { file, output } => {
            let m = read_automaton(file)?;
            emit(&m.generator.trim().into(), output.as_deref(), out)
        }
        Command::Minimize { file, output } => {
            let m = read_automaton(file)?;
            emit(&minimize(&m.generator).into(), output.as_deref(), out)
        }
        Command::Check { property } => check(property, out),
        Command::Coordinate {
            problem,
            out: dir,
            step2b,
            prefix_closed,
            monolithic,
        } => coordinate(problem, dir, *step2b, *prefix_closed, *monolithic, out),
        Command::Oracle { seed, count, bound } => {
            if *bound < MIN_BOUND {
                bail!("--bound must be at least {MIN_BOUND}");
            }
            let reports = run_cross_validation(*seed, *count, *bound);
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            Ok(Status::of(reports.iter().all(|r| r.passed())))
        }
        Command::Dot { file } => {
            let m = read_automaton(file)?;
            let name = file
                .file_stem()
                .map_or("automaton".into(), |s| s.to_string_lossy());
            out.write_all(to_dot(&m, &name).as_bytes())?;
            Ok(Status::Holds)
        }
        Command::Corpus { out: dir } => {
            for f in write_corpus(dir)? {
                writeln!(out, "{}", f.display())?;
            }
            Ok(Status::Holds)
        }
    }
}

fn emit(model: &Model, output: Option<&Path>, out: &mut dyn Write) -> Result<Status> {
    let text = write_automaton(model);
    match output {
        Some(path) => save_text(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Status::Holds)
}

fn pair(first: &Path, second: &Path) -> Result<[Generator; 2]> {
    let models = read_shared(&[first.to_path_buf(), second.to_path_buf()])?;
    let [a, b]: [Model; 2] = models.try_into().expect("two models");
    Ok([a.generator, b.generator])
}

fn events_of(table: &EventTable, names: &[String], file: &Path) -> Result<ProjectionSpec> {
    let names: Vec<String> = names.iter().filter(|n| !n.is_empty()).cloned().collect();
    let set = event_set(table, &names, &file.display().to_string(), "--events")?;
    Ok(ProjectionSpec::new(set))
}

fn print_verdict(out: &mut dyn Write, label: &str, v: &Verdict, table: &EventTable) -> Result<()> {
    writeln!(out, "{label}: {}", v.display(table))?;
    Ok(())
}

fn check(property: &Property, out: &mut dyn Write) -> Result<Status> {
    let single = |out: &mut dyn Write, label: &str, v: Verdict, t: &EventTable| -> Result<Status> {
        print_verdict(out, label, &v, t)?;
        Ok(Status::of(v.holds()))
    };
    match property {
        Property::Controllable { spec, plant } => {
            let [k, g] = pair(spec, plant)?;
            single(out, "controllable", is_controllable(&k, &g)?, k.table())
        }
        Property::LmClosed { spec, plant } => {
            let [k, g] = pair(spec, plant)?;
            single(out, "Lm-closed", is_lm_closed(&k, &g)?, k.table())
        }
        Property::CondDecomposable { problem } => {
            let p = read_problem(problem)?;
            let ek = required_events(&p, problem)?;
            let d = is_conditionally_decomposable(&p.spec, &p.alphabets, &ek)?;
            single(out, "conditionally decomposable", d.marked, &p.table)
        }
        Property::CondControllable { problem } => {
            let (p, table) = coordination_problem(problem)?;
            let v = is_conditionally_controllable(&p)?;
            for (name, v) in v.named("conditionally controllable") {
                print_verdict(out, &name, &v, &table)?;
            }
            Ok(Status::of(v.holds()))
        }
        Property::CondClosed { problem } => {
            let (p, table) = coordination_problem(problem)?;
            let v = is_conditionally_closed(&p)?;
            for (name, v) in v.named("conditionally closed") {
                print_verdict(out, &name, &v, &table)?;
            }
            Ok(Status::of(v.holds()))
        }
        Property::Observer {
            file,
            events,
            generated,
        } => {
            let m = read_automaton(file)?;
            let p = events_of(m.generator.table(), events, file)?;
            let v = if *generated {
                is_observer_generated(&m.generator, &p)
            } else {
                is_observer(&m.generator, &p)
            };
            single(out, "observer", v, m.generator.table())
        }
        Property::Lcc { file, events } => {
            let m = read_automaton(file)?;
            let p = events_of(m.generator.table(), events, file)?;
            single(
                out,
                "locally control consistent",
                is_lcc(&m.generator, &p),
                m.generator.table(),
            )
        }
        Property::Nonblocking { files } => {
            let models = read_shared(files)?;
            let g = compose_all(models.iter().map(|m| &m.generator))?;
            let v = match g.blocking_word() {
                None => Verdict::Holds,
                Some(w) => Verdict::Fails(Witness::Word(w)),
            };
            single(out, "nonblocking", v, g.table())
        }
    }
}

fn required_events(p: &Problem, path: &Path) -> Result<descoord::fsm::EventSet> {
    p.coordinator_events
        .clone()
        .ok_or_else(|| anyhow!("{}: coordinator_events is required here", path.display()))
}

fn coordination_problem(path: &Path) -> Result<(CoordinationProblem, std::sync::Arc<EventTable>)> {
    let p = read_problem(path)?;
    let ek = required_events(&p, path)?;
    let problem = CoordinationProblem::new(p.plants, &p.spec, ek, p.coordinator)
        .map_err(|e| describe(e, &p.table))?;
    Ok((problem, p.table))
}

fn describe(e: CoordinationError, table: &EventTable) -> anyhow::Error {
    match e.witness() {
        Some(w) => anyhow!("{e} ({})", w.display(table)),
        None => anyhow!(e),
    }
}

fn coordinate(
    problem: &Path,
    dir: &Path,
    step2b: bool,
    prefix_closed: bool,
    monolithic: bool,
    out: &mut dyn Write,
) -> Result<Status> {
    let p = read_problem(problem)?;
    let options = PipelineOptions {
        coordinator_events: p.coordinator_events.clone(),
        coordinator: p.coordinator.clone(),
        observer_extension: step2b || p.observer_extension,
        prefix_closed: prefix_closed || p.prefix_closed,
        compare_monolithic: monolithic,
    };
    let r = run_pipeline(p.plants.clone(), &p.spec, &options).map_err(|e| describe(e, &p.table))?;
    let (rep, files) = report::build(&r, &p.table);
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, g) in &files {
        save_text(&dir.join(name), &write_automaton(&g.clone().into()))?;
    }
    save_text(&dir.join("report.json"), &rep.to_json())?;
    writeln!(
        out,
        "coordinator events: {}",
        rep.coordinator_events.join(" ")
    )?;
    for v in &rep.verdicts {
        match &v.witness {
            Some(w) => writeln!(out, "{}: {} ({w})", v.name, v.status)?,
            None => writeln!(out, "{}: {}", v.name, v.status)?,
        }
    }
    let states: Vec<String> = rep
        .supervisors
        .local
        .iter()
        .map(|f| f.states.to_string())
        .collect();
    writeln!(
        out,
        "supervisor states: coordinator {}, local [{}]",
        rep.supervisors.coordinator.states,
        states.join(", ")
    )?;
    writeln!(out, "report: {}", dir.join("report.json").display())?;
    Ok(Status::of(rep.all_hold))
}

/// Writes every bundled example below `dir`, one directory per example,
/// and returns the written files.
pub fn write_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut save = |path: PathBuf, text: String| -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
        save_text(&path, &text)?;
        written.push(path);
        Ok(())
    };
    for f in corpus::decomposition_fixtures() {
        let sub = dir.join(f.name);
        for (file, problem, g) in [
            ("k.json", "problem.json", f.k.clone()),
            (
                "k_closure.json",
                "problem_closure.json",
                f.k.prefix_closure(),
            ),
        ] {
            save(sub.join(file), write_automaton(&g.into()))?;
            save(sub.join(problem), decomposition_problem(&f, file).to_json())?;
        }
    }
    for f in corpus::problem_fixtures() {
        let sub = dir.join(f.name);
        let (problem, automata) = problem_files(&f);
        for (file, g) in automata {
            save(sub.join(file), write_automaton(&g.into()))?;
        }
        save(sub.join("problem.json"), problem.to_json())?;
    }
    Ok(written)
}

fn decomposition_problem(f: &DecompositionFixture, spec: &str) -> ProblemFile {
    ProblemFile {
        alphabets: Some(
            f.alphabets
                .iter()
                .map(|a| event_names(&f.table, a))
                .collect(),
        ),
        specification: spec.into(),
        coordinator_events: Some(event_names(&f.table, &f.ek)),
        ..Default::default()
    }
}

fn problem_files(f: &ProblemFixture) -> (ProblemFile, Vec<(String, Generator)>) {
    let mut automata = vec![("specification.json".to_string(), f.spec.clone())];
    let mut plants = Vec::new();
    for (i, g) in f.plants.iter().enumerate() {
        let name = format!("plant_{}.json", i + 1);
        plants.push(name.clone());
        automata.push((name, g.clone()));
    }
    let coordinator = f.coordinator.as_ref().map(|g| {
        automata.push(("coordinator.json".into(), g.clone()));
        "coordinator.json".to_string()
    });
    let problem = ProblemFile {
        plants,
        specification: "specification.json".into(),
        coordinator_events: Some(event_names(&f.table, &f.ek)),
        coordinator,
        ..Default::default()
    };
    (problem, automata)
}

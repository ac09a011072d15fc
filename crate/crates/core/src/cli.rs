//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input or caps exceeded,
//! 3 internal invariant or theorem breach.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::chromatic::{assemble_coloring, verify_coloring, AssembleError};
use crate::lp::{build_relaxation, chromatic_closed_form};
use crate::model::io::{
    parse_coloring, parse_instance, parse_solution, serialize_coloring, serialize_instance, serialize_solution,
};
use crate::model::{
    batch_instance, generate_random, validate_instance, validate_solution, BatchShape, Coloring, Group,
    HypergraphSolution, Instance, Part,
};
use crate::oracle::{check_conjecture, Caps, OracleError};
use crate::rounding::{closed_form_solution, solve_pipeline, PipelineError};
use crate::scalar::{format_scalar, int, ExactScalar};

#[derive(Debug, Parser)]
#[command(name = "hyperchrom", version, about = "Exact edge coloring of hypergraphs with two machine groups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long, default_value_t = 2)]
        bmax: i64,
        #[arg(long, default_value_t = 2)]
        amax: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute an integral optimum and print `chi=… chi_f=… r=… w=…`.
    Solve {
        input: PathBuf,
        /// Where to write the solution document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the relaxation in LP format.
        #[arg(long)]
        dump_lp: Option<PathBuf>,
    },
    /// Build and verify an optimal coloring.
    Color {
        input: PathBuf,
        /// Use this solution document instead of solving.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the brute-force optimum with the LP value and the pipeline.
    Check {
        input: Option<PathBuf>,
        /// Check this many seeded random instances instead of a file.
        #[arg(long, conflicts_with = "input")]
        batch: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `jobs,machines,mult[,search]`.
        #[arg(long, value_parser = parse_caps)]
        caps: Option<Caps>,
    },
    /// Draw a coloring as a Gantt chart, one row per machine.
    ExportGantt {
        coloring: PathBuf,
        /// Instance the coloring belongs to; supplies the machine groups.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = GanttFormat::Doc)]
        format: GanttFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GanttFormat {
    /// SVG.
    Doc,
    /// Plain text.
    Text,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || format!("expected `jobs,machines,mult[,search]`, got `{s}`");
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let mut caps = Caps {
        max_jobs: parts[0].parse().map_err(|_| bad())?,
        max_machines: parts[1].parse().map_err(|_| bad())?,
        max_mult: parts[2].parse().map_err(|_| bad())?,
        ..Caps::default()
    };
    if let Some(p) = parts.get(3) {
        caps.max_search = p.parse().map_err(|_| bad())?;
    }
    Ok(caps)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => writeln!(stdout, "{text}").map_err(|e| CliError::Io(e.to_string())),
    }
}

fn say(stdout: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(stdout, "{line}").map_err(|e| CliError::Io(e.to_string()))
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let inst = parse_instance(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let violations = validate_instance(&inst);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Invalid(format!("invalid instance:\n  {}", list.join("\n  "))));
    }
    Ok(inst)
}

fn pipeline_failure(inst: &Instance, e: PipelineError) -> CliError {
    match e {
        PipelineError::InvalidInstance(_) | PipelineError::EmptyGroup => CliError::Invalid(e.to_string()),
        PipelineError::Theorem(_) => {
            CliError::Internal(format!("{e}\nfalsifying instance follows:\n{}", serialize_instance(inst)))
        }
        _ => CliError::Internal(e.to_string()),
    }
}

/// An optimal solution and `(χ′, χ′_f)`, through the closed form when a group
/// is empty.
fn solve_any(inst: &Instance) -> Result<(HypergraphSolution, i64, ExactScalar, Option<Group>), CliError> {
    let empty = Group::BOTH.into_iter().find(|&g| inst.group_size(g) == 0);
    if let Some(g) = empty {
        let chi = chromatic_closed_form(inst).map_err(|e| CliError::Invalid(e.to_string()))?;
        let sol = closed_form_solution(inst).map_err(|e| CliError::Invalid(e.to_string()))?;
        return Ok((sol, chi, int(chi), Some(g)));
    }
    let out = solve_pipeline(inst).map_err(|e| pipeline_failure(inst, e))?;
    let chi = out.chromatic_number(inst);
    let chi_f = int(inst.delta(Group::One) + inst.delta(Group::Two)) + &out.lp_value;
    Ok((out.solution, chi, chi_f, None))
}

pub fn run(config: RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match config.command {
        Command::Gen { seed, n, m1, m2, bmax, amax, out } => {
            let inst = generate_random(seed, n, m1, m2, bmax, amax).map_err(|e| CliError::Invalid(e.to_string()))?;
            emit(out.as_deref(), &serialize_instance(&inst), stdout)
        }
        Command::Solve { input, out, dump_lp } => {
            let inst = load_instance(&input)?;
            if let Some(path) = dump_lp {
                let lp = build_relaxation(&inst).map_err(|e| CliError::Invalid(e.to_string()))?;
                std::fs::write(&path, lp.to_lp_format()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let (sol, chi, chi_f, empty) = solve_any(&inst)?;
            if let Some(p) = out {
                emit(Some(&p), &serialize_solution(&sol), stdout)?;
            }
            let mut line =
                format!("chi={chi} chi_f={} r={} w={}", format_scalar(&chi_f), format_scalar(&sol.r), format_scalar(&sol.w));
            if let Some(g) = empty {
                let _ = write!(line, " closed-form ({g} empty)");
            }
            say(stdout, &line)
        }
        Command::Color { input, solution, out } => {
            let inst = load_instance(&input)?;
            let sol = match solution {
                Some(path) => {
                    let sol = parse_solution(&read(&path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                    let violations = validate_solution(&inst, &sol).map_err(|e| CliError::Invalid(e.to_string()))?;
                    if !violations.is_empty() {
                        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                        return Err(CliError::Invalid(format!("infeasible solution:\n  {}", list.join("\n  "))));
                    }
                    sol
                }
                None => solve_any(&inst)?.0,
            };
            let col = assemble_coloring(&inst, &sol).map_err(|e| match e {
                AssembleError::NotIntegral => CliError::Invalid(e.to_string()),
                e => CliError::Internal(e.to_string()),
            })?;
            let violations = verify_coloring(&inst, &col);
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(CliError::Internal(format!("coloring failed verification:\n  {}", list.join("\n  "))));
            }
            emit(out.as_deref(), &serialize_coloring(&col), stdout)
        }
        Command::Check { input, batch, seed, caps } => {
            let caps = caps.unwrap_or_default();
            let oracle_failure = |e: OracleError| match e {
                OracleError::InvalidInstance(_) | OracleError::Caps(_) => CliError::Invalid(e.to_string()),
                OracleError::Pipeline(p) => CliError::Internal(p.to_string()),
                e => CliError::Internal(e.to_string()),
            };
            let instances: Vec<Instance> = match (input, batch) {
                (Some(path), None) => vec![load_instance(&path)?],
                (None, Some(count)) => {
                    let shape = BatchShape {
                        max_machines: caps.max_machines,
                        max_jobs: caps.max_jobs,
                        bmax: caps.max_mult,
                        amax: caps.max_mult,
                    };
                    (0..count).map(|i| batch_instance(seed, i, shape)).collect()
                }
                _ => return Err(CliError::Invalid("give an instance file or --batch".into())),
            };
            let mut disagreements = 0;
            for inst in &instances {
                let report = check_conjecture(inst, &caps).map_err(oracle_failure)?;
                say(stdout, &report.to_json())?;
                if report.strict_gap() {
                    eprintln!("note: integer optimum strictly above LP value on\n{}", serialize_instance(inst));
                }
                if !report.agree {
                    disagreements += 1;
                    eprintln!("disagreement on\n{}", serialize_instance(inst));
                }
            }
            if disagreements > 0 {
                return Err(CliError::Internal(format!("{disagreements} of {} instances disagree", instances.len())));
            }
            Ok(())
        }
        Command::ExportGantt { coloring, instance, format, out } => {
            let inst = load_instance(&instance)?;
            let col =
                parse_coloring(&read(&coloring)?).map_err(|e| CliError::Invalid(format!("{}: {e}", coloring.display())))?;
            let chart = match format {
                GanttFormat::Doc => gantt_svg(&inst, &col),
                GanttFormat::Text => gantt_text(&inst, &col),
            }
            .map_err(CliError::Invalid)?;
            emit(out.as_deref(), &chart, stdout)
        }
    }
}

/// One chart cell: the job occupying a machine during a class.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Cell {
    Idle,
    Edge(String),
    Hyper(String),
}

/// Classes ordered by part, each as its multiplicity and per-machine cells.
fn gantt_grid(inst: &Instance, col: &Coloring) -> Result<Vec<(ExactScalar, Vec<Cell>)>, String> {
    let mut classes: Vec<_> = col.classes.iter().collect();
    classes.sort_by_key(|c| c.part);
    let mut grid = Vec::with_capacity(classes.len());
    for class in classes {
        let mut cells = vec![Cell::Idle; inst.m()];
        for (job, machine) in &class.edges {
            inst.job_index(job).ok_or_else(|| format!("unknown job `{job}`"))?;
            let h = inst.machine_index(machine).ok_or_else(|| format!("unknown machine `{machine}`"))?;
            cells[h] = Cell::Edge(job.clone());
        }
        for (g, job) in &class.hyperedges {
            inst.job_index(job).ok_or_else(|| format!("unknown job `{job}`"))?;
            for h in inst.machines_in(*g) {
                cells[h] = Cell::Hyper(job.clone());
            }
        }
        grid.push((class.multiplicity.clone(), cells));
    }
    Ok(grid)
}

/// Text chart: one column per unit slot. Hyperedge slots are bracketed.
pub fn gantt_text(inst: &Instance, col: &Coloring) -> Result<String, String> {
    let grid = gantt_grid(inst, col)?;
    let label = |c: &Cell| match c {
        Cell::Idle => ".".to_string(),
        Cell::Edge(j) => j.clone(),
        Cell::Hyper(j) => format!("[{j}]"),
    };
    let width = grid.iter().flat_map(|(_, cells)| cells.iter().map(|c| label(c).len())).max().unwrap_or(1);
    let name_width = inst.machine_ids().map(String::len).max().unwrap_or(0);
    let mut slots: Vec<&Vec<Cell>> = Vec::new();
    for (k, cells) in &grid {
        if !k.is_integer() {
            return Err(format!("text charts need integral multiplicities, got {}", format_scalar(k)));
        }
        let k = k.to_integer().to_usize().ok_or("multiplicity out of range")?;
        slots.extend(std::iter::repeat(cells).take(k));
    }
    let mut out = String::new();
    for h in 0..inst.m() {
        let _ = write!(out, "{:<name_width$} |", inst.machine_id(h));
        for cells in &slots {
            let _ = write!(out, " {:<width$}", label(&cells[h]));
        }
        out.push('\n');
    }
    Ok(out.trim_end().to_string())
}

const SLOT: f64 = 48.0;
const ROW: f64 = 28.0;
const LEFT: f64 = 60.0;
const TOP: f64 = 10.0;

fn part_fill(part: Part) -> &'static str {
    match part {
        Part::A => "#8dd3c7",
        Part::B => "#fb8072",
        Part::C => "#80b1d3",
        Part::D => "#fdb462",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG chart. Each class is a block as wide as its multiplicity; a hyperedge
/// is one box spanning every row of its group.
pub fn gantt_svg(inst: &Instance, col: &Coloring) -> Result<String, String> {
    let grid = gantt_grid(inst, col)?;
    let mut parts: Vec<Part> = col.classes.iter().map(|c| c.part).collect();
    parts.sort();
    let total: f64 = grid.iter().map(|(k, _)| k.to_f64().unwrap_or(0.0)).sum();
    let width = LEFT + total * SLOT + 10.0;
    let height = TOP + inst.m() as f64 * ROW + 10.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
    );
    for h in 0..inst.m() {
        let y = TOP + h as f64 * ROW;
        let _ = writeln!(out, r#"<text x="4" y="{}">{}</text>"#, y + ROW * 0.65, escape(inst.machine_id(h)));
    }
    let mut x = LEFT;
    for ((k, cells), part) in grid.iter().zip(parts) {
        let w = k.to_f64().unwrap_or(0.0) * SLOT;
        let mut h = 0;
        while h < cells.len() {
            let mut end = h + 1;
            if let Cell::Hyper(_) = &cells[h] {
                while end < cells.len() && cells[end] == cells[h] && inst.group_of(end) == inst.group_of(h) {
                    end += 1;
                }
            }
            if let Cell::Edge(job) | Cell::Hyper(job) = &cells[h] {
                let y = TOP + h as f64 * ROW;
                let rh = (end - h) as f64 * ROW;
                let _ = writeln!(
                    out,
                    r#"<rect x="{x}" y="{y}" width="{w}" height="{rh}" fill="{}" stroke="black"/><text x="{}" y="{}">{}</text>"#,
                    part_fill(part),
                    x + 4.0,
                    y + rh / 2.0 + 4.0,
                    escape(job)
                );
            }
            h = end;
        }
        x += w;
    }
    out.push_str("</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::assemble_coloring;
    use crate::fixtures::*;
    use crate::rounding::solve_pipeline;

    fn coloring_of(inst: &Instance) -> Coloring {
        assemble_coloring(inst, &solve_pipeline(inst).unwrap().solution).unwrap()
    }

    #[test]
    fn caps_flag_parses() {
        assert_eq!(parse_caps("3,4,1").unwrap(), Caps { max_jobs: 3, max_machines: 4, max_mult: 1, ..Caps::default() });
        assert_eq!(parse_caps("3,4,1,99").unwrap().max_search, 99);
        assert!(parse_caps("3,4").is_err());
    }

    #[test]
    fn ib_text_chart_spans_both_rows() {
        let text = gantt_text(&i_b(), &coloring_of(&i_b())).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.matches('[').count() == 2), "{text}");
    }

    #[test]
    fn ic_text_chart_has_two_unit_columns() {
        let text = gantt_text(&i_c(), &coloring_of(&i_c())).unwrap();
        assert!(text.lines().all(|r| r.contains("J1") && r.contains("J2")), "{text}");
        assert!(!text.contains('['));
    }

    #[test]
    fn empty_coloring_gives_empty_chart() {
        let text = gantt_text(&i_c(), &Coloring::default()).unwrap();
        assert_eq!(text, "M1 |\nM2 |");
        let svg = gantt_svg(&i_c(), &Coloring::default()).unwrap();
        assert!(!svg.contains("<rect"));
    }

    #[test]
    fn svg_draws_one_box_per_hyperedge() {
        let svg = gantt_svg(&i_b(), &coloring_of(&i_b())).unwrap();
        assert_eq!(svg.matches("<rect").count(), 4);
    }

    #[test]
    fn unknown_machine_is_rejected() {
        let mut col = coloring_of(&i_c());
        col.classes[0].edges[0].1 = "M9".into();
        assert!(gantt_text(&i_c(), &col).is_err());
    }
}

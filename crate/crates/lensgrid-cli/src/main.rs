use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lensgrid::berge::berge_report;
use lensgrid::format::{emit_grid, parse_grid, parse_script, LoadError};
use lensgrid::homology::homology_hat;
use lensgrid::invariants::{d_invariant, grid_invariant_gradings, GradingReport};
use lensgrid::legendrian::braid::braid_word;
use lensgrid::legendrian::classical::classical_invariants;
use lensgrid::legendrian::moves::apply_move;
use lensgrid::rational::fmt_q;
use lensgrid::{Complex, CoverGrid, GridDiagram};

#[derive(Parser)]
#[command(name = "lensgrid", version, about = "Grid homology for links in lens spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a `.lgrid` file describes a valid diagram
    Validate { file: PathBuf },
    /// List generators with Spin^c label and gradings
    Generators { file: PathBuf },
    /// Hat homology grouped by (Spin^c, Alexander, Maslov)
    Homology { file: PathBuf },
    /// Gradings and nonvanishing of λ⁺ (= θ) and λ⁻
    Invariants { file: PathBuf },
    /// tb_Q, rot_Q, sl_Q and the braid word
    Classical { file: PathBuf },
    /// Emit the dual diagram in L(p, p−q)
    Dualize { file: PathBuf },
    /// Print the lifted grid in S³
    Lift { file: PathBuf },
    /// Apply a move script and emit the result
    Move { file: PathBuf, script: PathBuf },
    /// The four hat invariants and the index-one verdict
    Berge {
        file: PathBuf,
        #[arg(long)]
        assume_s3_surgery: bool,
    },
    /// The d-invariant d(p, q, i)
    D { p: i64, q: i64, i: i64 },
}

enum Failure {
    Domain(String),
    Parse(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(e) => Failure::Parse(e.to_string()),
            LoadError::Invalid(e) => Failure::Domain(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GridDiagram, Failure> {
    let text = read(path)?;
    parse_grid(&text).map_err(|e| match Failure::from(e) {
        Failure::Parse(m) => Failure::Parse(format!("{}:{m}", path.display())),
        other => other,
    })
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn grading_lines(out: &mut String, name: &str, g: &GradingReport) {
    writeln!(out, "M({name}) = {}", fmt_q(&g.maslov)).unwrap();
    writeln!(out, "A({name}) = {}", fmt_q(&g.alexander_total())).unwrap();
    if g.alexander.len() > 1 {
        let parts: Vec<_> = g.alexander.iter().map(fmt_q).collect();
        writeln!(out, "A_i({name}) = {}", parts.join(" ")).unwrap();
    }
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Validate { file } => {
            let d = load(&file)?;
            writeln!(
                out,
                "ok L({},{}) index {} components {}",
                d.p,
                d.q,
                d.n,
                d.component_count()
            )
            .unwrap();
        }
        Command::Generators { file } => {
            let d = load(&file)?;
            let c = Complex::new(&d);
            writeln!(out, "generators {}", c.gens.len()).unwrap();
            for (i, x) in c.gens.iter().enumerate() {
                let (m, anchored) = c.maslov(i);
                let a: Vec<_> = c.alexander[i].iter().map(fmt_q).collect();
                let mark = if anchored { "" } else { " (relative)" };
                writeln!(
                    out,
                    "[{}] spinc {} M {}{mark} A {}",
                    list(&x.pos),
                    c.spinc[i],
                    fmt_q(&m),
                    a.join(" ")
                )
                .unwrap();
            }
        }
        Command::Homology { file } => {
            let d = load(&file)?;
            let blocks = homology_hat(&Complex::new(&d));
            let total: usize = blocks.iter().map(|b| b.rank).sum();
            writeln!(out, "spinc alexander maslov rank").unwrap();
            for b in &blocks {
                let mark = if b.anchored { "" } else { " (relative)" };
                writeln!(
                    out,
                    "{} {} {}{mark} {}",
                    b.spinc,
                    fmt_q(&b.alexander),
                    fmt_q(&b.maslov),
                    b.rank
                )
                .unwrap();
            }
            writeln!(out, "total {total}").unwrap();
        }
        Command::Invariants { file } => {
            let d = load(&file)?;
            let b = grid_invariant_gradings(&d).map_err(|e| Failure::Domain(e.to_string()))?;
            writeln!(out, "x+ = [{}]", list(&b.x_plus.pos)).unwrap();
            writeln!(out, "x- = [{}]", list(&b.x_minus.pos)).unwrap();
            grading_lines(&mut out, "θ", &b.lambda_plus);
            grading_lines(&mut out, "λ-", &b.lambda_minus);
            writeln!(out, "hat λ+ nonzero: {}", b.hat_nonzero_plus).unwrap();
            writeln!(out, "hat λ- nonzero: {}", b.hat_nonzero_minus).unwrap();
            writeln!(out, "λ+ non-torsion: {}", b.u_tower_plus).unwrap();
            writeln!(out, "λ- non-torsion: {}", b.u_tower_minus).unwrap();
        }
        Command::Classical { file } => {
            let d = load(&file)?;
            let c = classical_invariants(&d);
            writeln!(out, "tb_Q = {}", fmt_q(&c.tb)).unwrap();
            writeln!(out, "rot_Q = {}", fmt_q(&c.rot)).unwrap();
            writeln!(out, "sl_Q = {}", fmt_q(&c.sl)).unwrap();
            if c.components.len() > 1 {
                for (i, k) in c.components.iter().enumerate() {
                    writeln!(
                        out,
                        "component {i}: tb_Q = {} rot_Q = {} sl_Q = {} lk_Q = {}",
                        fmt_q(&k.tb),
                        fmt_q(&k.rot),
                        fmt_q(&k.sl),
                        fmt_q(&k.lk)
                    )
                    .unwrap();
                }
            }
            let w = braid_word(&d);
            writeln!(out, "braid ({} strands) {}", w.strands, w.to_text()).unwrap();
        }
        Command::Dualize { file } => {
            out = emit_grid(&lensgrid::cover::dualize(&load(&file)?));
        }
        Command::Lift { file } => {
            let c = CoverGrid::of(&load(&file)?);
            writeln!(out, "size {}", c.size).unwrap();
            writeln!(out, "z {}", list(&c.z)).unwrap();
            writeln!(out, "w {}", list(&c.w)).unwrap();
        }
        Command::Move { file, script } => {
            let mut d = load(&file)?;
            let text = read(&script)?;
            let moves = parse_script(&text)
                .map_err(|e| Failure::Parse(format!("{}:{e}", script.display())))?;
            for (k, mv) in moves.iter().enumerate() {
                d = apply_move(&d, mv)
                    .map_err(|e| Failure::Domain(format!("move {}: {e}", k + 1)))?;
            }
            out = emit_grid(&d);
        }
        Command::Berge {
            file,
            assume_s3_surgery,
        } => {
            let r = berge_report(&load(&file)?, assume_s3_surgery);
            for (k, v) in [
                ("hat_plus_g", r.hat_plus_g),
                ("hat_minus_g", r.hat_minus_g),
                ("hat_plus_dual", r.hat_plus_dual),
                ("hat_minus_dual", r.hat_minus_dual),
                ("index_one", r.index_one),
                ("floer_simple", r.floer_simple),
            ] {
                writeln!(out, "{k} {v}").unwrap();
            }
            writeln!(out, "verdict {:?}", r.verdict).unwrap();
        }
        Command::D { p, q, i } => {
            let d = d_invariant(p, q, i).map_err(|e| Failure::Domain(e.to_string()))?;
            writeln!(out, "{}", fmt_q(&d)).unwrap();
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(2)
        }
    }
}

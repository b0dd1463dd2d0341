mod svg;

use clap::{Args, CommandFactory, Parser, Subcommand};
use flagflow::catalog::{
    gh_catalog, list_families, reference_equilibria, FamilyBounds, FamilyDescriptor, RefPosition,
};
use flagflow::dynamics::{
    basin_map, equilibrium_name, integrate_orbit, random_interior_point, region_counts, separatrices,
    Direction, OrbitOptions, Trajectory, SEPARATRIX_OFFSET,
};
use flagflow::equilibria::{verify_catalog, FoundEquilibrium};
use flagflow::flowgen::{projected_field, ProjectedFlow};
use flagflow::ghlimit::{classify_limit, GhError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "flagflow", version, about = "Projected Ricci flow on three-summand flag manifolds")]
struct Cli {
    /// Output file; stdout when absent (required for SVG output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for commands that sample random points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// su, so, e6so8 or a Type I id such as g2u2.
    #[arg(long)]
    family: String,
    /// m,n,p for su; l for so.
    #[arg(long, value_delimiter = ',')]
    params: Option<Vec<u32>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog of families with equilibria and collapse limits.
    Families {
        #[arg(long, default_value_t = 2)]
        su_max: u32,
        #[arg(long, default_value_t = 6)]
        so_max: u32,
    },
    /// The projected vector field (u, v).
    Field(FamilyArgs),
    /// All equilibria found in the closed triangle.
    Equilibria(FamilyArgs),
    /// Compare found equilibria with the reference tables.
    Verify(FamilyArgs),
    /// One orbit as CSV t,x,y,L.
    Orbit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long)]
        backward: bool,
    },
    /// Forward (and optionally backward) limits over a grid of cells.
    Basins {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 64)]
        res: usize,
        /// Also trace backward limits.
        #[arg(long)]
        backward: bool,
        /// Heat map destination.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Phase portrait SVG with equilibria, separatrices and sample orbits.
    Portrait {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 16)]
        orbits: usize,
    },
    /// Collapse limit of the degenerate metric at a boundary point.
    GhLimit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Families { .. } => "families",
            Command::Field(_) => "field",
            Command::Equilibria(_) => "equilibria",
            Command::Verify(_) => "verify",
            Command::Orbit { .. } => "orbit",
            Command::Basins { .. } => "basins",
            Command::Portrait { .. } => "portrait",
            Command::GhLimit { .. } => "gh-limit",
        }
    }
}

enum Failure {
    Usage(String),
    /// Ran to completion, but a check failed; the report is still written.
    Check,
    Runtime(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn family(a: &FamilyArgs) -> Result<FamilyDescriptor, Failure> {
    FamilyDescriptor::lookup(&a.family, a.params.as_deref()).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn emit_json(out: &Option<PathBuf>, mut v: Value) -> Outcome {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(1));
    }
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Failure::Runtime(e.to_string()))?;
    s.push('\n');
    emit(out, &s)
}

fn svg_target(out: &Option<PathBuf>) -> Result<PathBuf, Failure> {
    out.clone()
        .ok_or_else(|| Failure::Usage("SVG output needs --out <path>".into()))
}

fn reference_json(fam: &FamilyDescriptor) -> Value {
    let rows: Vec<Value> = reference_equilibria(fam)
        .iter()
        .map(|r| {
            let (x, y) = r.position.to_f64();
            let exact = match &r.position {
                RefPosition::Exact { x, y } => json!([x.to_string(), y.to_string()]),
                RefPosition::Approx { .. } => Value::Null,
            };
            json!({
                "label": r.label.to_string(),
                "position": [x, y],
                "exact": exact,
                "metric": r.metric_kind,
                "class": r.expected_class,
            })
        })
        .collect();
    Value::Array(rows)
}

fn describe_family(fam: &FamilyDescriptor) -> Value {
    let gh: Vec<Value> = gh_catalog(fam)
        .into_iter()
        .map(|(k, label)| json!({"kernel": k, "limit": label}))
        .collect();
    json!({
        "id": fam.id,
        "name": fam.display_name(),
        "kind": fam.kind,
        "flag_type": fam.flag_type(),
        "dims": fam.dims,
        "total_dim": fam.total_dim,
        "equilibria": reference_json(fam),
        "gh": gh,
    })
}

fn cmd_families(out: &Option<PathBuf>, su_max: u32, so_max: u32) -> Outcome {
    let fams = list_families(FamilyBounds { su_max, so_max }).map_err(|e| Failure::Usage(e.to_string()))?;
    let list: Vec<Value> = fams.iter().map(describe_family).collect();
    emit_json(out, json!({ "families": list }))
}

fn cmd_field(out: &Option<PathBuf>, fam: &FamilyDescriptor) -> Outcome {
    let f = projected_field(fam);
    let (u, v) = (f.u.to_string(), f.v.to_string());
    let block = json!({
        "schema": 1,
        "family": fam.id,
        "degree": f.degree(),
        "u": u,
        "v": v,
    });
    let mut s = format!("u = {u}\nv = {v}\n\n");
    s.push_str(&serde_json::to_string_pretty(&block).map_err(|e| Failure::Runtime(e.to_string()))?);
    s.push('\n');
    emit(out, &s)
}

/// Found equilibria with catalog letters attached where they match.
fn labelled_equilibria(fam: &FamilyDescriptor) -> Vec<FoundEquilibrium> {
    verify_catalog(fam).found
}

fn cmd_equilibria(out: &Option<PathBuf>, fam: &FamilyDescriptor) -> Outcome {
    let eqs = labelled_equilibria(fam);
    emit_json(out, json!({ "family": fam.id, "equilibria": eqs }))
}

fn cmd_verify(out: &Option<PathBuf>, fam: &FamilyDescriptor) -> Outcome {
    let rep = verify_catalog(fam);
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("serializable");
            v["status"] = json!(if r.pass { "PASS" } else { "FAIL" });
            v
        })
        .collect();
    emit_json(
        out,
        json!({
            "family": rep.family,
            "pass": rep.pass,
            "passed_rows": rep.passed_rows(),
            "rows": rows,
            "extras": rep.extras,
            "seeds_tried": rep.seeds_tried,
            "seeds_converged": rep.seeds_converged,
        }),
    )?;
    if rep.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn orbit_csv(traj: &Trajectory) -> String {
    let mut s = String::from("t,x,y,L\n");
    for p in &traj.samples {
        let l = p.lyapunov.map(|l| l.to_string()).unwrap_or_default();
        writeln!(s, "{},{},{},{}", p.t, p.x, p.y, l).expect("string write");
    }
    s
}

fn cmd_orbit(out: &Option<PathBuf>, fam: &FamilyDescriptor, p0: (f64, f64), backward: bool) -> Outcome {
    let flow = ProjectedFlow::<f64>::new(fam);
    let dir = if backward { Direction::Backward } else { Direction::Forward };
    let traj = integrate_orbit(&flow, p0, dir, &OrbitOptions::default())
        .map_err(|e| Failure::Usage(e.to_string()))?;
    emit(out, &orbit_csv(&traj))
}

fn cmd_basins(
    out: &Option<PathBuf>,
    fam: &FamilyDescriptor,
    res: usize,
    backward: bool,
    svg_path: &Option<PathBuf>,
) -> Outcome {
    let flow = ProjectedFlow::<f64>::new(fam);
    let eqs = labelled_equilibria(fam);
    let grid = basin_map(&flow, &eqs, res, backward, &OrbitOptions::default())
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut s = String::from(if backward { "i,j,x,y,forward,backward\n" } else { "i,j,x,y,forward\n" });
    for j in 0..res {
        for i in 0..res {
            let k = j * res + i;
            let (x, y) = flagflow::dynamics::BasinGrid::cell_center(res, i, j);
            if grid.forward[k] == flagflow::dynamics::CellLabel::Outside {
                continue;
            }
            write!(s, "{i},{j},{x},{y},{}", grid.name(grid.forward[k])).expect("string write");
            if let Some(b) = &grid.backward {
                write!(s, ",{}", grid.name(b[k])).expect("string write");
            }
            s.push('\n');
        }
    }
    emit(out, &s)?;
    if let Some(p) = svg_path {
        let regions = if backward { Some(region_counts(&grid)) } else { None };
        std::fs::write(p, svg::basin_map(fam, &grid, regions.as_ref()))?;
    }
    Ok(())
}

fn cmd_portrait(out: &Option<PathBuf>, fam: &FamilyDescriptor, n_orbits: usize, seed: u64) -> Outcome {
    let path = svg_target(out)?;
    let flow = ProjectedFlow::<f64>::new(fam);
    let eqs = labelled_equilibria(fam);
    let opts = OrbitOptions::default();
    let seps = separatrices(&flow, &eqs, SEPARATRIX_OFFSET, &opts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<(f64, f64)> = (0..n_orbits).map(|_| random_interior_point(&mut rng, 0.02)).collect();
    let orbits: Vec<Vec<(f64, f64)>> = starts
        .par_iter()
        .flat_map_iter(|&p| {
            [Direction::Backward, Direction::Forward].map(|d| {
                integrate_orbit(&flow, p, d, &opts)
                    .map(|t| t.samples.iter().map(|s| (s.x, s.y)).collect())
                    .unwrap_or_default()
            })
        })
        .collect();
    let markers: Vec<svg::Marker> = eqs
        .iter()
        .map(|e| svg::Marker {
            at: e.position,
            class: e.effective_class(),
            name: equilibrium_name(e),
        })
        .collect();
    std::fs::write(path, svg::portrait(fam, &markers, &seps.curves, &orbits))?;
    Ok(())
}

fn cmd_gh_limit(out: &Option<PathBuf>, fam: &FamilyDescriptor, p: (f64, f64)) -> Outcome {
    let g = classify_limit(fam, p).map_err(|e| match e {
        GhError::OutsideSimplex(..) => Failure::Usage(e.to_string()),
        _ => Failure::Runtime(e.to_string()),
    })?;
    emit_json(
        out,
        json!({
            "family": fam.id,
            "point": [p.0, p.1],
            "kernel": g.kernel,
            "h_summands": g.h_summands,
            "is_point": g.is_point,
            "symmetric": g.symmetric,
            "space": {
                "name": g.space.name,
                "dim": g.space.dim,
                "class": g.space.space_class,
                "metric": g.space.metric,
            },
        }),
    )
}

fn run(cli: &Cli) -> Outcome {
    let out = &cli.out;
    match &cli.command {
        Command::Families { su_max, so_max } => cmd_families(out, *su_max, *so_max),
        Command::Field(a) => cmd_field(out, &family(a)?),
        Command::Equilibria(a) => cmd_equilibria(out, &family(a)?),
        Command::Verify(a) => cmd_verify(out, &family(a)?),
        Command::Orbit { family: a, x0, y0, backward } => cmd_orbit(out, &family(a)?, (*x0, *y0), *backward),
        Command::Basins { family: a, res, backward, svg } => cmd_basins(out, &family(a)?, *res, *backward, svg),
        Command::Portrait { family: a, orbits } => cmd_portrait(out, &family(a)?, *orbits, cli.seed),
        Command::GhLimit { family: a, x, y } => cmd_gh_limit(out, &family(a)?, (*x, *y)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.workers {
        Some(0) => Err(Failure::Usage("--workers must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Runtime(e.to_string())),
        },
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            let name = cli.command.name();
            let mut cmd = Cli::command();
            let usage = match cmd.find_subcommand_mut(name) {
                Some(sub) => sub.clone().bin_name(format!("flagflow {name}")).render_usage(),
                None => cmd.render_usage(),
            };
            eprintln!("\n{usage}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end: graph symmetry analysis, quotients and voltage
//! graphs, lifts, construction programs with closure solving, audits,
//! celestial configurations, and SVG rendering.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use polyconf::analyze::analyze;
use polyconf::celestial::{celestial_realization, verify_z9_theorem, z9_weak_gray, CelestialSymbol};
use polyconf::covers::{quotient, reduced_levi_graph, DeckIso, VoltageGraph};
use polyconf::data;
use polyconf::formats;
use polyconf::geom::INCIDENCE_TOL;
use polyconf::perm::{PermGroup, DEFAULT_GROUP_BOUND};
use polyconf::realizer::{audit, execute, solve_closure, Realization};
use polyconf::render::{render_svg, RenderSpec};
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "polyconf",
    about = "incidence configurations, voltage graphs, and polycyclic realizations",
    version
)]
struct Cli {
    /// Write primary output to a file instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group order and semi-regular subgroup classes of a graph.
    Analyze { graph: PathBuf },
    /// Quotient of a graph by a semi-regular group (graph file + summary).
    Quotient { graph: PathBuf, group: PathBuf },
    /// Reduced Levi graph of a colored graph under a semi-regular action.
    Rlg {
        graph: PathBuf,
        group: PathBuf,
        /// Indices (into the group file's GEN lines) of two commuting
        /// generators for a product voltage group.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        product: Option<Vec<usize>>,
        /// Comma-separated orbit representatives (vertex indices).
        #[arg(long)]
        reps: Option<String>,
    },
    /// Zero the voltages on a spanning tree of a voltage graph.
    Normalize {
        rlg: PathBuf,
        /// `auto` for a BFS tree, or a tree file of ARC lines.
        #[arg(long, default_value = "auto")]
        tree: String,
    },
    /// Lift a voltage graph to its regular cover.
    Lift { rlg: PathBuf },
    /// Execute a construction program, optionally solving one closure
    /// parameter first.
    Realize {
        program: PathBuf,
        /// Parameter to solve by the continuity argument.
        #[arg(long)]
        solve: Option<String>,
        /// Override parameters, e.g. `a_x=2.0,t1=0.3`.
        #[arg(long)]
        params: Option<String>,
        /// Also render the realization to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Audit against this incidence structure after executing.
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    /// Audit a realization file against an incidence structure.
    Audit {
        realization: PathBuf,
        incidence: PathBuf,
        /// Incidence acceptance tolerance.
        #[arg(long, default_value_t = INCIDENCE_TOL)]
        tol: f64,
    },
    /// Build a celestial configuration, e.g. `celestial 9 1,3 4,3 2,3`.
    Celestial {
        m: usize,
        /// Span pairs `s,t`, one per class.
        #[arg(required = true)]
        spans: Vec<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Verify the nine-fold tangency obstruction numerically.
    VerifyZ9,
    /// Run the bundled nine-fold construction (a weak realization) and
    /// report its audit.
    WeakZ9 {
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Emit bundled data (default: the grid configuration's incidence
    /// structure). See `gray list`.
    Gray {
        /// Which bundled item; `list` enumerates the catalog.
        #[arg(default_value = "incidence")]
        item: String,
        /// Shortcut for `gray levi`.
        #[arg(long)]
        levi: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing stdout")
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_group(path: &PathBuf) -> Result<(usize, Vec<polyconf::Perm>, PermGroup)> {
    let (n, gens) = formats::parse_group_generators(&read(path)?)?;
    let group = PermGroup::from_generators(n, gens.clone(), DEFAULT_GROUP_BOUND)?;
    Ok((n, gens, group))
}

fn paint(pass: bool, text: &str) -> String {
    let colored = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    if !colored {
        return text.to_string();
    }
    let code = if pass { "32" } else { "31" };
    format!("\x1b[{code}m{text}\x1b[0m")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { graph } => {
            let g = formats::parse_graph(&read(&graph)?)?;
            let report = analyze(&g)?;
            emit(&cli.out, &report.to_string())
        }
        Command::Quotient { graph, group } => {
            let g = formats::parse_graph(&read(&graph)?)?;
            let (_, _, gamma) = load_group(&group)?;
            let q = quotient(&g, &gamma)?;
            let mut text = String::new();
            for (i, orb) in q.orbits.iter().enumerate() {
                let toks: Vec<String> = orb.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("# orbit {i}: {}\n", toks.join(" ")));
            }
            for l in &q.links {
                text.push_str(&format!(
                    "# link {} {} {:?} fiber {}\n",
                    l.a, l.b, l.kind, l.fiber
                ));
            }
            text.push_str(&formats::serialize_graph(&q.underlying_simple()));
            emit(&cli.out, &text)
        }
        Command::Rlg {
            graph,
            group,
            product,
            reps,
        } => {
            let g = formats::parse_graph(&read(&graph)?)?;
            let (_, gens, gamma) = load_group(&group)?;
            let iso = match product {
                Some(pair) => {
                    let a = gens
                        .get(pair[0])
                        .ok_or_else(|| anyhow!("generator index {} out of range", pair[0]))?;
                    let b = gens
                        .get(pair[1])
                        .ok_or_else(|| anyhow!("generator index {} out of range", pair[1]))?;
                    DeckIso::product(a, b)?
                }
                None => DeckIso::auto_cyclic(&gamma).ok_or_else(|| {
                    anyhow!("group is not cyclic; pick two commuting generators with --product")
                })?,
            };
            let reps: Option<Vec<usize>> = match reps {
                Some(s) => Some(
                    s.split(',')
                        .map(|t| t.trim().parse().map_err(|_| anyhow!("bad vertex {t}")))
                        .collect::<Result<_>>()?,
                ),
                None => None,
            };
            let rlg = reduced_levi_graph(&g, &iso, reps.as_deref())?;
            emit(&cli.out, &formats::serialize_voltage_graph(&rlg))
        }
        Command::Normalize { rlg, tree } => {
            let vg = formats::parse_voltage_graph(&read(&rlg)?)?;
            let arcs = if tree == "auto" {
                bfs_tree(&vg)?
            } else {
                formats::parse_tree_arcs(&read(&PathBuf::from(tree))?, &vg)?
            };
            let norm = vg.normalize_spanning_tree(&arcs)?;
            emit(&cli.out, &formats::serialize_voltage_graph(&norm))
        }
        Command::Lift { rlg } => {
            let vg = formats::parse_voltage_graph(&read(&rlg)?)?;
            emit(&cli.out, &formats::serialize_graph(&vg.lift()?))
        }
        Command::Realize {
            program,
            solve,
            params,
            svg,
            audit: audit_path,
        } => {
            let prog = formats::parse_program(&read(&program)?)?;
            let mut values = prog.default_params();
            if let Some(spec) = params {
                for kv in spec.split(',') {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| anyhow!("--params expects k=v pairs, got {kv}"))?;
                    values.insert(
                        k.trim().to_string(),
                        v.trim().parse().map_err(|_| anyhow!("bad value {v}"))?,
                    );
                }
            }
            if let Some(param) = solve {
                let target = prog
                    .targets
                    .first()
                    .cloned()
                    .ok_or_else(|| anyhow!("program has no closure target"))?;
                let spec = prog
                    .param(&param)
                    .ok_or_else(|| anyhow!("unknown parameter {param}"))?
                    .clone();
                let t = solve_closure(&prog, &param, (spec.lo, spec.hi), &target, &values)?;
                eprintln!("solved {param} = {t:.15}");
                values.insert(param, t);
            }
            let real = execute(&prog, &values)?;
            if let Some(path) = audit_path {
                let inc = formats::parse_incidence(&read(&path)?)?;
                let report = audit(&real, &inc, INCIDENCE_TOL)?;
                eprintln!("{report}");
            }
            write_realization(&cli.out, &real, svg.as_ref())
        }
        Command::Audit {
            realization,
            incidence,
            tol,
        } => {
            let real = formats::parse_realization(&read(&realization)?)?;
            let inc = formats::parse_incidence(&read(&incidence)?)?;
            let report = audit(&real, &inc, tol)?;
            let verdict = paint(
                report.classification != polyconf::realizer::Classification::Failed,
                &report.to_string(),
            );
            emit(&cli.out, &verdict)
        }
        Command::Celestial { m, spans, svg } => {
            let pairs: Vec<(usize, usize)> = spans
                .iter()
                .map(|s| {
                    let (a, b) = s
                        .split_once(',')
                        .ok_or_else(|| anyhow!("span must be s,t, got {s}"))?;
                    Ok((
                        a.trim().parse().map_err(|_| anyhow!("bad span {a}"))?,
                        b.trim().parse().map_err(|_| anyhow!("bad span {b}"))?,
                    ))
                })
                .collect::<Result<_>>()?;
            let sym = CelestialSymbol::new(m, pairs)?;
            let real = celestial_realization(&sym)?;
            let (per_line, per_point) =
                polyconf::celestial::incidence_census(&real, INCIDENCE_TOL);
            eprintln!(
                "celestial {sym}: {} points, {} lines, line degrees {:?}, point degrees {:?}",
                per_point.len(),
                per_line.len(),
                dedup(per_line),
                dedup(per_point)
            );
            write_realization(&cli.out, &real, svg.as_ref())
        }
        Command::VerifyZ9 => {
            let report = verify_z9_theorem();
            let mut text = String::new();
            for c in &report.checks {
                text.push_str(&format!(
                    "{} {:<36} {}\n",
                    paint(c.pass, if c.pass { "PASS" } else { "FAIL" }),
                    c.name,
                    c.value
                ));
            }
            text.push_str(&format!(
                "overall: {}\n",
                paint(report.all_pass(), if report.all_pass() { "PASS" } else { "FAIL" })
            ));
            emit(&cli.out, &text)?;
            if report.all_pass() {
                Ok(())
            } else {
                bail!("verification failed")
            }
        }
        Command::WeakZ9 { svg } => {
            let (real, report) = z9_weak_gray()?;
            eprintln!("{report}");
            if let Some(path) = svg.as_ref() {
                // mark the unwanted incidence locations
                let spec = RenderSpec {
                    marks: extra_marks(&real, &report),
                    ..RenderSpec::default()
                };
                fs::write(path, render_svg(&real, &spec))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&cli.out, &formats::serialize_realization(&real))
        }
        Command::Gray { item, levi } => {
            let key = if levi { "levi" } else { item.as_str() };
            if key == "list" {
                let mut text = String::new();
                for (name, _) in data::catalog() {
                    text.push_str(name);
                    text.push('\n');
                }
                return emit(&cli.out, &text);
            }
            let content = data::catalog()
                .into_iter()
                .find(|(name, _)| *name == key)
                .map(|(_, c)| c)
                .ok_or_else(|| anyhow!("unknown item {key}; try `gray list`"))?;
            emit(&cli.out, content)
        }
    }
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.dedup();
    v
}

fn bfs_tree(vg: &VoltageGraph) -> Result<Vec<usize>> {
    let n = vg.names.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut tree = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for (i, a) in vg.arcs.iter().enumerate() {
            if seen[a.from] != seen[a.to] {
                seen[a.from] = true;
                seen[a.to] = true;
                tree.push(i);
                changed = true;
            }
        }
    }
    if tree.len() + 1 != n {
        bail!("voltage graph is disconnected; no spanning tree");
    }
    Ok(tree)
}

fn extra_marks(
    real: &Realization,
    report: &polyconf::realizer::AuditReport,
) -> Vec<polyconf::Point2> {
    report
        .extra
        .iter()
        .filter_map(|(p, _)| real.point_by_label(p))
        .collect()
}

fn write_realization(
    out: &Option<PathBuf>,
    real: &Realization,
    svg: Option<&PathBuf>,
) -> Result<()> {
    if let Some(path) = svg {
        fs::write(path, render_svg(real, &RenderSpec::default()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    emit(out, &formats::serialize_realization(real))
}

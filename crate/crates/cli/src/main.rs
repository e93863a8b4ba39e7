use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pentatile::catalog::{self, FamilyTag, PeriodicFilters};
use pentatile::cn::{self, ReversibleRegion};
use pentatile::format::{parse, serialize, ParseError};
use pentatile::lattice::{enumerate_polyiamonds, TorusBasis};
use pentatile::pentagon::UnitKind;
use pentatile::render::{render_svg, ColorBy, RenderOptions};
use pentatile::solver::{build_instance, EnumStop, PieceSet, SolveOptions};
use pentatile::tiling::{Domain, Tiling, Violation};

/// Marks errors that should exit with the usage status.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "pentatile", version, about = "Exact tilings by the TH-pentagon and its heptiamond units")]
struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reproducible output. Accepted for scripts; every code path is already deterministic.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Output file, or directory for commands writing several files.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count free heptiamonds.
    EnumerateHeptiamonds {
        #[arg(long)]
        list: bool,
    },
    /// Exact-cover search on a torus or a finite region.
    Solve(SolveArgs),
    /// Presets, periodic sweeps, pair classes and flowers.
    Catalog {
        #[command(subcommand)]
        what: CatalogCommand,
    },
    /// List reversible regions of a tiling.
    FindCn(DetectArgs),
    /// Free-standing catalog of convex-nonagon patterns.
    CnPatterns {
        #[arg(long, default_value_t = cn::DEFAULT_PATTERN_UNITS)]
        max_units: usize,
        #[arg(long, default_value_t = cn::SURROUND_STEPS)]
        surround: usize,
    },
    /// Flip one reversible region.
    Flip {
        #[command(flatten)]
        detect: DetectArgs,
        /// Region index as listed by find-cn.
        #[arg(long)]
        region: usize,
    },
    /// Seeded walk of flips.
    FlipWalk {
        #[command(flatten)]
        detect: DetectArgs,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Check a tiling file.
    Verify { input: PathBuf },
    /// Unit and pentagon counts.
    Stats { input: PathBuf },
    /// Draw a tiling as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// `torus:a,b,c,d` or `region:@FILE`.
    #[arg(long)]
    domain: String,
    #[arg(long, default_value = "windmill:A,windmill:P,ship:A,ship:P")]
    pieces: String,
    #[arg(long, value_enum, default_value_t = Mode::First)]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    #[arg(long)]
    symmetry_break: bool,
    #[arg(long)]
    fast_fail: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    First,
    Count,
    Enumerate,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Write a stored witness.
    Preset { name: String },
    /// Sweep torus lattices.
    Periodic {
        #[arg(long, default_value = "windmill:A,windmill:P,ship:A,ship:P")]
        pieces: String,
        #[arg(long, default_value_t = 21)]
        max_det: i32,
        #[arg(long)]
        chirality_uniform: bool,
        #[arg(long)]
        rotational_pair: bool,
    },
    /// Two-ship patch classes.
    Pairs {
        #[arg(long, default_value_t = catalog::FLOWER_TILING_DET)]
        max_det: i32,
    },
    /// Rotationally symmetric six-unit assemblies.
    Flowers {
        #[arg(long, value_enum, default_value_t = Kind::Ship)]
        kind: Kind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Windmill,
    Ship,
}

#[derive(Args, Debug)]
struct DetectArgs {
    input: PathBuf,
    #[arg(long, default_value_t = cn::DEFAULT_MAX_UNITS)]
    max_units: usize,
    /// Block of cells used for torus inputs.
    #[arg(long, default_value_t = 3)]
    lift: i32,
}

#[derive(Args, Debug)]
struct RenderArgs {
    input: PathBuf,
    #[arg(long, default_value = "chirality")]
    color_by: ColorBy,
    #[arg(long, default_value_t = 40.0)]
    scale: f64,
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Cells drawn for a torus tiling, `m,n`.
    #[arg(long, default_value = "3,3")]
    block: String,
    /// Region indices (as listed by find-cn) to outline.
    #[arg(long, value_delimiter = ',')]
    highlight: Vec<usize>,
    #[arg(long, default_value_t = cn::DEFAULT_MAX_UNITS)]
    max_units: usize,
    #[arg(long)]
    mark_violations: bool,
}

fn read_tiling(path: &Path) -> Result<Tiling> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `text` to the output path, or stdout when none is given.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn out_dir(out: &Option<PathBuf>) -> Result<Option<&Path>> {
    match out {
        Some(d) => {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            Ok(Some(d.as_path()))
        }
        None => Ok(None),
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    let p = dir.join(name);
    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
}

fn pieces(s: &str) -> Result<PieceSet> {
    s.parse::<PieceSet>().map_err(|e| usage(format!("--pieces: {e}")))
}

fn parse_domain(s: &str) -> Result<Domain> {
    if let Some(rest) = s.strip_prefix("torus:") {
        let v: Vec<i32> = rest
            .split(',')
            .map(|x| x.trim().parse::<i32>())
            .collect::<Result<_, _>>()
            .map_err(|_| usage(format!("--domain: bad torus basis `{rest}`")))?;
        let [a, b, c, d] = v[..] else {
            return Err(usage("--domain: torus needs four integers a,b,c,d"));
        };
        let basis = TorusBasis::new((a, b), (c, d)).map_err(|e| usage(format!("--domain: {e}")))?;
        return Ok(Domain::Torus(basis));
    }
    if let Some(rest) = s.strip_prefix("region:@") {
        let t = read_tiling(Path::new(rest))?;
        return match t.domain {
            Domain::Finite(r) => Ok(Domain::Finite(r)),
            Domain::Torus(_) => Err(usage("--domain: region file holds a torus domain")),
        };
    }
    Err(usage(format!("--domain: expected torus:a,b,c,d or region:@FILE, got `{s}`")))
}

fn finite(t: Tiling, lift: i32) -> Result<Tiling> {
    if t.domain.is_torus() {
        Ok(t.lift(lift, lift)?)
    } else {
        Ok(t)
    }
}

/// The finite block a torus tiling is drawn as.
fn finite_block(t: Tiling, m: i32, n: i32) -> Result<Tiling> {
    if t.domain.is_torus() {
        Ok(t.lift(m, n)?)
    } else {
        Ok(t)
    }
}

fn detect(args: &DetectArgs) -> Result<(Tiling, Vec<ReversibleRegion>)> {
    let t = finite(read_tiling(&args.input)?, args.lift)?;
    let regions = cn::find_reversible(&t, args.max_units)?;
    Ok((t, regions))
}

fn run(cli: Cli) -> Result<()> {
    let out = &cli.output;
    match cli.command {
        Command::EnumerateHeptiamonds { list } => {
            let shapes = enumerate_polyiamonds(7)?;
            let mut s = format!("{}\n", shapes.len());
            if list {
                for k in &shapes {
                    let _ = writeln!(s, "{k}");
                }
            }
            emit(out, &s)
        }
        Command::Solve(a) => {
            let domain = parse_domain(&a.domain)?;
            let p = pieces(&a.pieces)?;
            let options =
                SolveOptions { symmetry_break: a.symmetry_break, fast_fail: a.fast_fail, threads: cli.threads };
            let inst = build_instance(&domain, &p, &[])?.with_options(options);
            match a.mode {
                Mode::Count => emit(out, &format!("{}\n", inst.count())),
                Mode::First => match inst.solve_first() {
                    Some(t) => emit(out, &serialize(&t)),
                    None => {
                        println!("UNSATISFIABLE");
                        Ok(())
                    }
                },
                Mode::Enumerate => {
                    let e = inst.enumerate(a.limit);
                    let stop = match e.stop {
                        EnumStop::Exhausted => "exhausted",
                        EnumStop::LimitReached => "limit reached",
                    };
                    match out_dir(out)? {
                        Some(dir) => {
                            for (i, t) in e.tilings.iter().enumerate() {
                                write_file(dir, &format!("tiling-{:04}.ptt", i + 1), &serialize(t))?;
                            }
                        }
                        None => {
                            for t in &e.tilings {
                                println!("{}", serialize(t));
                            }
                        }
                    }
                    println!("{} tilings ({stop})", e.tilings.len());
                    Ok(())
                }
            }
        }
        Command::Catalog { what } => catalog_command(what, out),
        Command::FindCn(a) => {
            let (_, regions) = detect(&a)?;
            let patterns = cn::enumerate_cn_patterns(cn::DEFAULT_PATTERN_UNITS, cn::SURROUND_STEPS);
            let mut s = format!("{} reversible regions\n", regions.len());
            for (i, r) in regions.iter().enumerate() {
                let label = cn::classify_nonagon(r, &patterns).map(|p| p.label.as_str()).unwrap_or("-");
                let _ = writeln!(s, "{i}: {r} pattern {label}");
            }
            emit(out, &s)
        }
        Command::CnPatterns { max_units, surround } => {
            let c = cn::enumerate_cn_patterns(max_units, surround);
            let mut index = String::new();
            for p in &c.patterns {
                let _ = writeln!(index, "{}", p.index_line());
            }
            if let Some(dir) = out_dir(out)? {
                for p in &c.patterns {
                    write_file(dir, &format!("{}-acn.ptt", p.label), &serialize(&p.tiling(true)))?;
                    write_file(dir, &format!("{}-pcn.ptt", p.label), &serialize(&p.tiling(false)))?;
                }
                write_file(dir, "index.txt", &index)?;
            } else {
                print!("{index}");
            }
            println!(
                "{} patterns ({} ship-only) from {} local fillings, max units {}",
                c.patterns.len(),
                c.ship_only(),
                c.local_classes,
                c.max_units
            );
            Ok(())
        }
        Command::Flip { detect: d, region } => {
            let (t, regions) = detect(&d)?;
            let r = regions
                .get(region)
                .ok_or_else(|| anyhow!("region {region} out of range ({} regions)", regions.len()))?;
            emit(out, &serialize(&cn::flip(&t, r)?))
        }
        Command::FlipWalk { detect: d, steps } => {
            let t = finite(read_tiling(&d.input)?, d.lift)?;
            let walk = cn::flip_walk(&t, steps, cli.seed, d.max_units)?;
            if let Some(dir) = out_dir(out)? {
                for (i, w) in walk.iter().enumerate() {
                    write_file(dir, &format!("step-{i:03}.ptt"), &serialize(w))?;
                }
            }
            println!("{} tilings ({} flips)", walk.len(), walk.len() - 1);
            Ok(())
        }
        Command::Verify { input } => {
            let t = read_tiling(&input)?;
            let v = t.verify();
            let mut s = String::new();
            if v.is_valid() {
                s.push_str("VALID\n");
            } else {
                let _ = writeln!(s, "INVALID {} violations", v.violations().len());
                for x in v.violations() {
                    let _ = match x {
                        Violation::Gap { wedge } => writeln!(s, "gap {} edge {}", wedge.tri, wedge.edge),
                        Violation::Overlap { wedge, first, second } => {
                            writeln!(s, "overlap {} edge {} units {first} {second}", wedge.tri, wedge.edge)
                        }
                        Violation::OutOfDomain { unit } => writeln!(s, "out-of-domain unit {unit}"),
                    };
                }
            }
            emit(out, &s)
        }
        Command::Stats { input } => {
            let t = read_tiling(&input)?;
            let st = t.stats();
            let mut s = String::new();
            for ((k, c), n) in &st.units {
                let _ = writeln!(s, "{} {} {n}", k.name(), c.letter());
            }
            let _ = writeln!(s, "units {}", st.unit_count());
            let _ = writeln!(s, "pentagons anterior {} posterior {}", st.anterior_pentagons, st.posterior_pentagons);
            let _ = writeln!(s, "wedges {}", st.domain_wedges);
            let _ = writeln!(s, "family {}", FamilyTag::from_stats(&st));
            emit(out, &s)
        }
        Command::Render(a) => {
            let t = read_tiling(&a.input)?;
            let (m, n) = a
                .block
                .split_once(',')
                .and_then(|(m, n)| Some((m.trim().parse().ok()?, n.trim().parse().ok()?)))
                .ok_or_else(|| usage(format!("--block: expected m,n, got `{}`", a.block)))?;
            let highlights = if a.highlight.is_empty() {
                Vec::new()
            } else {
                let regions = cn::find_reversible(&finite_block(t.clone(), m, n)?, a.max_units)?;
                a.highlight
                    .iter()
                    .map(|&i| regions.get(i).map(|r| r.outline.clone()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| anyhow!("highlight index out of range ({} regions)", regions.len()))?
            };
            let opts = RenderOptions {
                scale: a.scale,
                color_by: a.color_by,
                precision: a.precision,
                torus_block: (m, n),
                highlights,
                mark_violations: a.mark_violations,
                ..Default::default()
            };
            opts.validate().map_err(|e| usage(e.to_string()))?;
            emit(out, &render_svg(&t, &opts)?)
        }
    }
}

fn catalog_command(what: CatalogCommand, out: &Option<PathBuf>) -> Result<()> {
    match what {
        CatalogCommand::Preset { name } => {
            let text = catalog::preset_text(&name).map_err(|e| usage(e.to_string()))?;
            emit(out, text)
        }
        CatalogCommand::Periodic { pieces: p, max_det, chirality_uniform, rotational_pair } => {
            let filters = PeriodicFilters { chirality_uniform, rotational_pair };
            let found = catalog::enumerate_periodic(&pieces(&p)?, max_det, &filters)?;
            let dir = out_dir(out)?;
            for (i, f) in found.iter().enumerate() {
                println!("{} basis {} units {} family {}", i + 1, f.basis, f.tiling.units.len(), f.tag);
                if let Some(dir) = dir {
                    write_file(dir, &format!("periodic-{:04}.ptt", i + 1), &serialize(&f.tiling))?;
                }
            }
            println!("{} periodic tilings up to det {max_det}", found.len());
            Ok(())
        }
        CatalogCommand::Pairs { max_det } => {
            let classes = catalog::find_pair_classes(max_det)?;
            let dir = out_dir(out)?;
            for c in &classes {
                let key: Vec<String> = c.key.iter().map(|u| u.to_string()).collect();
                println!("{} {} tiles_alone={} key={}", c.label, c.symmetry.name(), c.tiles_alone(), key.join(";"));
                if let Some(dir) = dir {
                    write_file(dir, &format!("{}.ptt", c.label), &serialize(&c.witness))?;
                }
            }
            println!("{} pair classes", classes.len());
            Ok(())
        }
        CatalogCommand::Flowers { kind } => {
            let kind = match kind {
                Kind::Windmill => UnitKind::Windmill,
                Kind::Ship => UnitKind::Ship,
            };
            let flowers = catalog::find_flowers(kind);
            let dir = out_dir(out)?;
            for (i, f) in flowers.iter().enumerate() {
                let lattice = f.lattice.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                println!("F{} {} center {} lattice {lattice}", i + 1, f.symmetry.name(), f.center);
                if let Some(dir) = dir {
                    write_file(dir, &format!("F{}.ptt", i + 1), &serialize(&f.tiling()))?;
                    if let Some(t) = f.lattice_tiling() {
                        write_file(dir, &format!("F{}-lattice.ptt", i + 1), &serialize(&t))?;
                    }
                }
            }
            println!("{} {} flowers", flowers.len(), kind.name());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = e.chain().any(|c| c.is::<Usage>() || c.is::<ParseError>());
            ExitCode::from(if is_usage { 2 } else { 1 })
        }
    }
}

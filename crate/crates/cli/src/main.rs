use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use clospace::complexes::{complex_up_to, Construction};
use clospace::filtration::{filtered_from_metric, filtered_from_sublevel_labels, filtered_from_weighted_digraph, Decoration, FilteredClosureSpace};
use clospace::homology::{chain_complex, chain_complex_capped, Coefficients, Flavor, HomologyGroup};
use clospace::homotopy::{homotopic, HomotopyQuery, DEFAULT_MAX_STEPS, DEFAULT_SIZE_CAP};
use clospace::linalg::{Field, PrimeField, Rationals};
use clospace::persistence::{
    bottleneck, diagram_svg, gh_distance, persistence_complex, persistence_tower, tower_to_diagram, PersistenceDiagram, DEFAULT_GH_CAP,
};
use clospace::{io, ClosureSpace, Error, IntervalSpec, ProductKind};

#[derive(Parser, Debug)]
#[command(name = "clospace", version, about = "Homotopy, homology and persistence of finite closure spaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Coefficients: z, q, f2, f<p>
    #[arg(long, global = true)]
    coeffs: Option<String>,
    /// Homology theory, e.g. cubical:j1:x, j+box, simplicial:j1, complex:vr
    #[arg(long, global = true)]
    theory: Option<String>,
    /// Ball convention for metric filtrations: minus, closed, plus
    #[arg(long, global = true, default_value = "closed")]
    decoration: String,
    /// Largest degree or simplex dimension to compute
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Size or dimension cap; the meaning depends on the subcommand
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Write an SVG persistence diagram here
    #[arg(long, global = true)]
    plot: Option<PathBuf>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology groups of a closure space file
    Homology {
        space: PathBuf,
        /// Degree or inclusive range such as 0..2
        #[arg(long, default_value = "0..1")]
        degrees: String,
        #[arg(long)]
        reduced: bool,
    },
    /// Persistence diagrams of a filtered space
    Persist {
        #[command(flatten)]
        input: FiltrationInput,
        /// Also write one diagram file per degree into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files
    Bottleneck {
        first: PathBuf,
        second: PathBuf,
        /// Degree to pick when a file holds several diagrams
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Gromov-Hausdorff distance between two filtered spaces
    Gh {
        first: PathBuf,
        second: PathBuf,
        /// Read both inputs as weighted digraphs instead of distance matrices
        #[arg(long)]
        digraph: bool,
        #[arg(long)]
        pseudo: bool,
    },
    /// Search for a homotopy between two maps
    Homotopic {
        source: PathBuf,
        target: PathBuf,
        first: PathBuf,
        second: PathBuf,
        /// Interval: j1, j+, j-, or family:m[:k]
        #[arg(long, default_value = "j1")]
        interval: String,
        /// Product: x or box
        #[arg(long, default_value = "x")]
        product: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Vietoris-Rips complex of a closure space
    Vr { space: PathBuf },
    /// Čech complex of a closure space
    Cech { space: PathBuf },
}

#[derive(Args, Debug)]
struct FiltrationInput {
    /// Distance matrix CSV
    #[arg(long, group = "source")]
    metric: Option<PathBuf>,
    /// Weighted digraph, lines "src dst weight"
    #[arg(long, group = "source")]
    digraph: Option<PathBuf>,
    /// Sublevel function CSV "point,value"; needs --space
    #[arg(long, group = "source", requires = "space")]
    function: Option<PathBuf>,
    #[arg(long)]
    space: Option<PathBuf>,
    /// Allow distinct points at distance zero
    #[arg(long)]
    pseudo: bool,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Attaches the file name to parse errors.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> clospace::Result<T>) -> anyhow::Result<T> {
    let text = read(path)?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

fn fixed(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x:.9}")
    }
}

fn coefficients(global: &Global, default: Coefficients) -> anyhow::Result<Coefficients> {
    Ok(match &global.coeffs {
        Some(c) => c.parse()?,
        None => default,
    })
}

fn flavor(global: &Global, default: Flavor) -> anyhow::Result<Flavor> {
    Ok(match &global.theory {
        Some(t) => t.parse()?,
        None => default,
    })
}

fn degree_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad degree '{s}'"));
    match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                bail!("empty degree range {text}");
            }
            Ok((lo, hi))
        }
        None => {
            let d = parse(text)?;
            Ok((d, d))
        }
    }
}

fn group_json(degree: usize, group: &HomologyGroup) -> Value {
    let torsion: Vec<Value> = group
        .torsion
        .iter()
        .map(|t| t.to_string().parse::<u64>().map_or_else(|_| json!(t.to_string()), |v| json!(v)))
        .collect();
    json!({ "degree": degree, "betti": group.rank, "torsion": torsion })
}

fn cmd_homology(global: &Global, space: &Path, degrees: &str, reduced: bool) -> anyhow::Result<()> {
    let x = load(space, io::parse_space)?;
    let flavor = flavor(global, Flavor::cubical(clospace::homology::BaseInterval::J1, ProductKind::Product))?;
    let coeffs = coefficients(global, Coefficients::Integers)?;
    let (lo, hi) = degree_range(degrees)?;
    if let Some(max) = global.max_dim {
        if hi > max {
            return Err(Error::DimensionTooLarge { requested: hi, cap: max }.into());
        }
    }
    let cx = match global.cap {
        Some(cap) => chain_complex_capped(&x, flavor, hi + 1, cap)?,
        None => chain_complex(&x, flavor, hi + 1)?,
    };
    let groups = cx.homology_range(lo..=hi, coeffs, reduced)?;
    eprintln!("# theory={flavor} coeffs={coeffs} reduced={reduced}");
    if global.json {
        let out: Vec<Value> = groups.iter().zip(lo..).map(|(g, d)| group_json(d, g)).collect();
        println!("{}", Value::Array(out));
    } else {
        for (g, d) in groups.iter().zip(lo..) {
            println!("H_{d} = {g}");
        }
    }
    Ok(())
}

fn load_filtration(global: &Global, input: &FiltrationInput) -> anyhow::Result<FilteredClosureSpace> {
    let decoration: Decoration = global.decoration.parse()?;
    let filtration = if let Some(path) = &input.metric {
        let metric = load(path, |t| io::parse_distance_csv(t, input.pseudo))?;
        eprintln!("# decoration={decoration} numeric=f64");
        filtered_from_metric(&metric, decoration)
    } else if let Some(path) = &input.digraph {
        let graph = load(path, io::parse_digraph)?;
        eprintln!("# numeric=f64");
        filtered_from_weighted_digraph(&graph)
    } else if let Some(path) = &input.function {
        let space_path = input.space.as_ref().context("--function needs --space")?;
        let space = load(space_path, io::parse_space)?;
        let values = load(path, io::parse_sublevel_csv)?;
        eprintln!("# numeric=f64");
        filtered_from_sublevel_labels(&space, &values).with_context(|| format!("in {}", path.display()))?
    } else {
        bail!("one of --metric, --digraph or --function is required");
    };
    if let Some(cap) = global.cap {
        let n = filtration.points().len();
        if n > cap {
            return Err(Error::CapExceeded(format!("{n} points with a cap of {cap}")).into());
        }
    }
    Ok(filtration)
}

fn tower_diagrams<F: Field>(field: &F, filtration: &FilteredClosureSpace, flavor: Flavor, max_dim: usize) -> clospace::Result<Vec<PersistenceDiagram>> {
    (0..=max_dim)
        .map(|d| tower_to_diagram(&persistence_tower(field, filtration, flavor, d, false)?))
        .collect()
}

fn plot_path(base: &Path, degree: usize, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = base.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "svg".into());
    base.with_file_name(format!("{stem}_h{degree}.{ext}"))
}

fn cmd_persist(global: &Global, input: &FiltrationInput, out_dir: Option<&Path>) -> anyhow::Result<()> {
    let filtration = load_filtration(global, input)?;
    if filtration.is_empty() {
        return Err(Error::Parse { line: 1, message: "no points".into() }.into());
    }
    let flavor = flavor(global, Flavor::Complex(Construction::Vr))?;
    let coeffs = coefficients(global, Coefficients::Prime(2))?;
    let max_dim = global.max_dim.unwrap_or(1);
    let diagrams = match (flavor, coeffs) {
        (Flavor::Complex(c), _) => persistence_complex(&filtration, c, max_dim, coeffs)?,
        (_, Coefficients::Integers) => return Err(Error::NeedsField.into()),
        (_, Coefficients::Rationals) => tower_diagrams(&Rationals, &filtration, flavor, max_dim)?,
        (_, Coefficients::Prime(p)) => {
            let field = PrimeField::new(p).context("coefficients must be a prime field")?;
            tower_diagrams(&field, &filtration, flavor, max_dim)?
        }
    };
    eprintln!("# theory={flavor} coeffs={coeffs}");
    for d in &diagrams {
        if global.json {
            println!("{}", d.to_json());
        } else {
            let bars: Vec<String> = d.pairs().iter().map(|&(b, e)| format!("[{}, {})", fixed(b), fixed(e))).collect();
            println!("H_{}: {}", d.degree, bars.join(" "));
        }
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for d in &diagrams {
            let path = dir.join(format!("diagram_h{}.json", d.degree));
            fs::write(&path, format!("{}\n", d.to_json())).with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    if let Some(base) = &global.plot {
        for d in &diagrams {
            let path = plot_path(base, d.degree, diagrams.len() > 1);
            fs::write(&path, diagram_svg(d)).with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(())
}

fn pick_diagram(path: &Path, degree: usize) -> anyhow::Result<PersistenceDiagram> {
    let diagrams = load(path, io::parse_diagrams)?;
    if let [only] = diagrams.as_slice() {
        return Ok(only.clone());
    }
    diagrams
        .into_iter()
        .find(|d| d.degree == degree)
        .with_context(|| format!("{} has no diagram in degree {degree}", path.display()))
}

fn print_number(global: &Global, key: &str, value: f64) {
    if global.json {
        let v = if value.is_infinite() { json!("inf") } else { json!(value) };
        println!("{}", json!({ key: v }));
    } else {
        println!("{}", fixed(value));
    }
}

fn cmd_bottleneck(global: &Global, first: &Path, second: &Path, degree: usize) -> anyhow::Result<()> {
    let a = pick_diagram(first, degree)?;
    let b = pick_diagram(second, degree)?;
    print_number(global, "bottleneck", bottleneck(&a, &b)?);
    Ok(())
}

fn cmd_gh(global: &Global, first: &Path, second: &Path, digraph: bool, pseudo: bool) -> anyhow::Result<()> {
    let decoration: Decoration = global.decoration.parse()?;
    let read_one = |path: &Path| -> anyhow::Result<FilteredClosureSpace> {
        if digraph {
            Ok(filtered_from_weighted_digraph(&load(path, io::parse_digraph)?))
        } else {
            Ok(filtered_from_metric(&load(path, |t| io::parse_distance_csv(t, pseudo))?, decoration))
        }
    };
    let (x, y) = (read_one(first)?, read_one(second)?);
    eprintln!("# decoration={decoration} numeric=f64");
    print_number(global, "gh", gh_distance(&x, &y, global.cap.unwrap_or(DEFAULT_GH_CAP))?);
    Ok(())
}

fn cmd_homotopic(
    global: &Global,
    paths: [&Path; 4],
    interval: &str,
    product: &str,
    max_steps: usize,
) -> anyhow::Result<()> {
    let [source, target, first, second] = paths;
    let x = Arc::new(load(source, io::parse_space)?);
    let y = Arc::new(load(target, io::parse_space)?);
    let f = load(first, |t| io::parse_map(t, x.clone(), y.clone()))?;
    let g = load(second, |t| io::parse_map(t, x.clone(), y.clone()))?;
    let spec: IntervalSpec = interval.parse()?;
    let kind: ProductKind = product.parse()?;
    let query = HomotopyQuery::new(spec, kind)
        .with_max_steps(max_steps)
        .with_size_cap(global.cap.unwrap_or(DEFAULT_SIZE_CAP));
    let result = homotopic(&f, &g, &query)?;
    let label_map = |images: &[usize]| -> Value {
        let obj: serde_json::Map<String, Value> = images
            .iter()
            .enumerate()
            .map(|(i, &v)| (x.label(i).to_string(), serde_json::to_value(y.label(v)).expect("labels serialise")))
            .collect();
        Value::Object(obj)
    };
    let theory = format!("({spec},{kind})");
    match result {
        Some(w) => {
            if global.json {
                let maps: Vec<Value> = w.maps.iter().map(|m| label_map(m)).collect();
                println!("{}", json!({ "theory": theory, "homotopic": true, "steps": w.len(), "maps": maps }));
            } else {
                println!("homotopic under {theory} in {} step(s)", w.len());
                for (k, m) in w.maps.iter().enumerate() {
                    println!("  f{k} = {}", label_map(m));
                }
            }
        }
        None => {
            if global.json {
                println!("{}", json!({ "theory": theory, "homotopic": false, "exhaustive": true }));
            } else {
                println!("not homotopic under {theory} (search exhausted the homotopy class)");
            }
        }
    }
    Ok(())
}

fn cmd_complex(global: &Global, space: &Path, construction: Construction) -> anyhow::Result<()> {
    let x: ClosureSpace = load(space, io::parse_space)?;
    let max_dim = global.max_dim.unwrap_or(x.len().saturating_sub(1));
    let complex = complex_up_to(&x, construction, max_dim);
    if global.json {
        let mut simplices = complex.labelled_simplices();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        println!("{}", json!({ "points": complex.labels(), "simplices": simplices }));
    } else {
        print!("{}", io::complex_to_text(&complex));
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Homology { space, degrees, reduced } => cmd_homology(g, space, degrees, *reduced),
        Command::Persist { input, out_dir } => cmd_persist(g, input, out_dir.as_deref()),
        Command::Bottleneck { first, second, degree } => cmd_bottleneck(g, first, second, *degree),
        Command::Gh {
            first,
            second,
            digraph,
            pseudo,
        } => cmd_gh(g, first, second, *digraph, *pseudo),
        Command::Homotopic {
            source,
            target,
            first,
            second,
            interval,
            product,
            max_steps,
        } => cmd_homotopic(g, [source, target, first, second], interval, product, *max_steps),
        Command::Vr { space } => cmd_complex(g, space, Construction::Vr),
        Command::Cech { space } => cmd_complex(g, space, Construction::Cech),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => 2,
        Some(Error::DimensionTooLarge { .. } | Error::CapExceeded(_) | Error::BoundExceeded(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

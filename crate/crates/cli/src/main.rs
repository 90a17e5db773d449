use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mapforge::constellation::{Passport, Topology, DEFAULT_GROUP_LIMIT};
use mapforge::format::{parse_constellation, to_json_value, to_text};
use mapforge::galois::{classify_batch, compare, signature, InvariantSignature};
use mapforge::orders::{build_surface_order, export_gluing_diagram, DiagramFormat};
use mapforge::quiver::{arrow_partitions, build_medial_quiver, check_gentle, export_dot, MedialQuiver};
use mapforge::resolutions::{reconstruct_constellation, resolve_all, resolve_simple, ProjectiveResolution};
use mapforge::{Constellation, Error, Partition, ValidationReport};
use serde::{Deserialize, Serialize};

const GROUP_LIMIT_VAR: &str = "MAPFORGE_GROUP_LIMIT";

#[derive(Parser)]
#[command(
    name = "mapforge",
    version,
    about = "Maps, medial quivers, surface orders and periodic resolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the constellation invariants and report the genus.
    Validate { input: PathBuf },
    /// Validate, then report topology, faces, passport and invariant signature.
    Analyze(Invariants),
    /// Build the medial quiver and check its gentle relations.
    Quiver { input: PathBuf },
    /// Build the surface order descriptor and its gluing diagram.
    Order { input: PathBuf },
    /// Projective resolutions of simple modules.
    Resolve(Resolve),
    /// Invariant signature shared by every Galois conjugate.
    Invariants(Invariants),
    /// Decide whether two maps are separated by their invariants.
    Compare { first: PathBuf, second: PathBuf },
    /// Bucket maps by signature, then split buckets into isomorphism classes.
    Classify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Rebuild a map from a JSON resolution bundle (as written by `resolve --all --format json`).
    Reconstruct { input: PathBuf },
    /// Turn a hypermap into its bipartite map.
    Subdivide { input: PathBuf },
}

#[derive(Args)]
struct GroupArgs {
    /// Also compute the monodromy group order (limit from MAPFORGE_GROUP_LIMIT).
    #[arg(long)]
    monodromy: bool,
}

#[derive(Args)]
struct Invariants {
    input: PathBuf,
    #[command(flatten)]
    group: GroupArgs,
}

#[derive(Args)]
struct Resolve {
    input: PathBuf,
    /// Simple module by its darts, e.g. `1,5`.
    #[arg(long, value_parser = parse_edge, conflicts_with = "all", required_unless_present = "all")]
    edge: Option<(usize, usize)>,
    /// Resolve every simple module.
    #[arg(long)]
    all: bool,
    /// Steps to materialise; at least one full period is always produced.
    #[arg(long, default_value_t = 0)]
    horizon: usize,
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two darts separated by a comma")?;
    let dart = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((dart(a)?, dart(b)?))
}

enum Failure {
    /// Exit 1, with the serialised report as output.
    Invalid { output: String, message: String },
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidPermutation(_) | Error::UnknownEdge(..) | Error::UnsupportedFormat(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Invalid {
                output: String::new(),
                message: other.to_string(),
            },
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serialises") + "\n"
}

fn report_output(report: &ValidationReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        _ => format!("invalid: {report}\n"),
    }
}

/// Parses, validates, and turns a failed validation into exit status 1.
fn load(path: &Path, format: Format) -> Outcome<Constellation> {
    let text = read(path)?;
    let raw = parse_constellation(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
    let report = raw.validate();
    if !report.is_ok() {
        return Err(Failure::Invalid {
            output: report_output(&report, format),
            message: format!("{}: {report}", path.display()),
        });
    }
    Ok(raw.into_constellation()?)
}

fn group_limit(args: &GroupArgs) -> Outcome<Option<u64>> {
    if !args.monodromy {
        return Ok(None);
    }
    match std::env::var(GROUP_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("{GROUP_LIMIT_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(Some(DEFAULT_GROUP_LIMIT)),
    }
}

fn unsupported(format: Format, verb: &str) -> Failure {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    Failure::Usage(format!("`{verb}` cannot write {name} output"))
}

fn constellation_output(c: &Constellation, format: Format, verb: &str) -> Outcome<String> {
    match format {
        Format::Text => Ok(to_text(c)),
        Format::Json => Ok(json(&to_json_value(c))),
        Format::Dot => Err(unsupported(format, verb)),
    }
}

fn validate(input: &Path, format: Format) -> Outcome<String> {
    #[derive(Serialize)]
    struct Validated {
        ok: bool,
        genus: u64,
        violations: [(); 0],
    }
    let c = load(input, format)?;
    match format {
        Format::Text => Ok(format!("ok, genus {}\n", c.genus())),
        Format::Json => Ok(json(&Validated {
            ok: true,
            genus: c.genus(),
            violations: [],
        })),
        Format::Dot => Err(unsupported(format, "validate")),
    }
}

fn analyze(args: &Invariants, format: Format) -> Outcome<String> {
    #[derive(Serialize)]
    struct Analysis {
        constellation: serde_json::Value,
        #[serde(skip_serializing_if = "Option::is_none")]
        topology: Option<Topology>,
        genus: u64,
        faces: Vec<Vec<usize>>,
        passport: Passport,
        #[serde(skip_serializing_if = "Option::is_none")]
        signature: Option<InvariantSignature>,
    }
    let c = load(&args.input, format)?;
    let limit = group_limit(&args.group)?;
    let a = Analysis {
        constellation: to_json_value(&c),
        topology: c.euler_and_genus().ok(),
        genus: c.genus(),
        faces: c.face_words(),
        passport: c.passport(limit),
        signature: if c.is_map() { Some(signature(&c, limit)?) } else { None },
    };
    match format {
        Format::Json => Ok(json(&a)),
        Format::Text => {
            let mut out = String::from("ok\n");
            out.push_str(&format!("mode: {}\n", c.mode()));
            out.push_str(&format!("darts: {}\n", c.n_darts()));
            if let Some(t) = a.topology {
                out.push_str(&format!("euler characteristic: {}\n", t.chi));
            }
            out.push_str(&format!("genus: {}\n", a.genus));
            let faces: Vec<String> = a
                .faces
                .iter()
                .map(|f| format!("({})", f.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            out.push_str(&format!("faces: {}\n", faces.join(" ")));
            let p = &a.passport;
            out.push_str(&format!(
                "passport: sigma {} alpha {} phi {}\n",
                p.sigma_type, p.alpha_type, p.phi_type
            ));
            if let Some(order) = p.monodromy_order {
                out.push_str(&format!("monodromy order: {order}\n"));
            }
            if let Some(s) = &a.signature {
                out.push_str(&format!("center rank: {}\n", s.center_rank));
                out.push_str(&format!("normalization type: {}\n", s.normalization_type));
            }
            Ok(out)
        }
        Format::Dot => Err(unsupported(format, "analyze")),
    }
}

fn quiver_text(q: &MedialQuiver) -> String {
    let mut out = String::new();
    out.push_str(&format!("vertices: {}\n", q.vertices.len()));
    for v in &q.vertices {
        match v.darts {
            Some((a, b)) => out.push_str(&format!("  v{} ({a},{b})\n", v.id)),
            None => out.push_str(&format!("  v{}\n", v.id)),
        }
    }
    out.push_str(&format!("arrows: {}\n", q.arrows.len()));
    for a in &q.arrows {
        out.push_str(&format!("  {}: v{} -> v{}\n", a.dart, a.tail, a.head));
    }
    out.push_str(&format!("relations: {}\n", q.relations.len()));
    for (a, b) in &q.relations {
        out.push_str(&format!("  {a}·{b}\n"));
    }
    out
}

fn quiver(input: &Path, format: Format) -> Outcome<String> {
    #[derive(Serialize)]
    struct QuiverReport<'a> {
        quiver: &'a MedialQuiver,
        gentle: bool,
        violations: Vec<mapforge::quiver::GentleViolation>,
        sigma_cycles: Vec<Vec<usize>>,
        relation_cycles: Vec<Vec<usize>>,
    }
    let c = load(input, format)?;
    let q = build_medial_quiver(&c)?;
    let gentle = check_gentle(&q);
    match format {
        Format::Dot => Ok(export_dot(&q)),
        Format::Json => {
            let parts = arrow_partitions(&q)?;
            Ok(json(&QuiverReport {
                quiver: &q,
                gentle: gentle.is_ok(),
                violations: gentle.violations,
                sigma_cycles: parts.sigma_cycles,
                relation_cycles: parts.phi_cycles,
            }))
        }
        Format::Text => {
            let mut out = quiver_text(&q);
            out.push_str(&format!(
                "gentle: {}\n",
                if gentle.is_ok() {
                    "yes".to_string()
                } else {
                    gentle.to_string()
                }
            ));
            Ok(out)
        }
    }
}

fn order(input: &Path, format: Format) -> Outcome<String> {
    let c = load(input, format)?;
    let d = build_surface_order(&c)?;
    let f = match format {
        Format::Text => DiagramFormat::Text,
        Format::Json => DiagramFormat::Json,
        Format::Dot => DiagramFormat::Dot,
    };
    Ok(export_gluing_diagram(&d, f))
}

#[derive(Serialize, Deserialize)]
struct Bundle {
    normalization_type: Partition,
    resolutions: Vec<ProjectiveResolution>,
}

fn resolve(args: &Resolve, format: Format) -> Outcome<String> {
    let c = load(&args.input, format)?;
    let resolutions = match args.edge {
        Some((a, b)) => vec![resolve_simple(&c, &c.edge_by_darts(a, b)?, args.horizon)?],
        None => resolve_all(&c, args.horizon)?,
    };
    match format {
        Format::Json => Ok(json(&Bundle {
            normalization_type: c.sigma().cycle_type(),
            resolutions,
        })),
        Format::Text => {
            let edges = c.edges();
            Ok(resolutions
                .iter()
                .map(|r| r.to_text(&edges))
                .collect::<Vec<_>>()
                .join("\n"))
        }
        Format::Dot => Err(unsupported(format, "resolve")),
    }
}

fn invariants(args: &Invariants, format: Format) -> Outcome<String> {
    let c = load(&args.input, format)?;
    let s = signature(&c, group_limit(&args.group)?)?;
    match format {
        Format::Json => Ok(json(&s)),
        Format::Text => {
            let mut out = format!(
                "degree: {}\nsigma type: {}\nalpha type: {}\nphi type: {}\ngenus: {}\ncenter rank: {}\nnormalization type: {}\n",
                s.degree, s.sigma_type, s.alpha_type, s.phi_type, s.genus, s.center_rank, s.normalization_type
            );
            if let Some(order) = s.monodromy_order {
                out.push_str(&format!("monodromy order: {order}\n"));
            }
            Ok(out)
        }
        Format::Dot => Err(unsupported(format, "invariants")),
    }
}

fn compare_files(first: &Path, second: &Path, format: Format) -> Outcome<String> {
    let a = load(first, format)?;
    let b = load(second, format)?;
    let verdict = compare(&a, &b)?;
    match format {
        Format::Json => Ok(json(&verdict)),
        Format::Text => Ok(match verdict {
            mapforge::galois::Verdict::DifferentOrbits => "different orbits\n".to_string(),
            mapforge::galois::Verdict::InvariantEquivalent { isomorphic } => {
                format!(
                    "invariant-equivalent, {}\n",
                    if isomorphic { "isomorphic" } else { "not isomorphic" }
                )
            }
        }),
        Format::Dot => Err(unsupported(format, "compare")),
    }
}

fn classify(inputs: &[PathBuf], group: &GroupArgs, format: Format) -> Outcome<String> {
    #[derive(Serialize)]
    struct Classified<'a> {
        inputs: &'a [String],
        #[serde(flatten)]
        report: mapforge::galois::ClassificationReport,
    }
    let cs = inputs.iter().map(|p| load(p, format)).collect::<Outcome<Vec<_>>>()?;
    let names: Vec<String> = inputs.iter().map(|p| p.display().to_string()).collect();
    let report = classify_batch(&cs, group_limit(group)?)?;
    match format {
        Format::Json => Ok(json(&Classified { inputs: &names, report })),
        Format::Text => Ok(report.to_text(&names)),
        Format::Dot => Err(unsupported(format, "classify")),
    }
}

fn reconstruct(input: &Path, format: Format) -> Outcome<String> {
    let text = read(input)?;
    let bundle: Bundle = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}:{}:{}: {e}", input.display(), e.line(), e.column())))?;
    let c = reconstruct_constellation(&bundle.resolutions, &bundle.normalization_type)?;
    constellation_output(&c, format, "reconstruct")
}

fn subdivide(input: &Path, format: Format) -> Outcome<String> {
    let c = load(input, format)?;
    constellation_output(&c.subdivide_hypermap(), format, "subdivide")
}

fn run(cli: &Cli) -> Outcome<String> {
    let f = cli.format;
    match &cli.command {
        Command::Validate { input } => validate(input, f),
        Command::Analyze(args) => analyze(args, f),
        Command::Quiver { input } => quiver(input, f),
        Command::Order { input } => order(input, f),
        Command::Resolve(args) => resolve(args, f),
        Command::Invariants(args) => invariants(args, f),
        Command::Compare { first, second } => compare_files(first, second, f),
        Command::Classify { inputs, group } => classify(inputs, group, f),
        Command::Reconstruct { input } => reconstruct(input, f),
        Command::Subdivide { input } => subdivide(input, f),
    }
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(Failure::Invalid { output, message }) => {
            eprintln!("mapforge: {message}");
            (output, 1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("mapforge: {message}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.output.as_deref(), &text) {
        eprintln!("mapforge: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

//! Command-line front end: build and plot gallery sets, run geodesic and
//! regularity queries, drive the verification suites, and produce
//! completeness reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain error (bad points, unreachable queries, invalid parameters).

mod jsonfmt;

use clap::{Args, Parser, Subcommand};
use planar::geodesic::geodesic_distance;
use planar::geom::Point;
use planar::planeset::svg::{to_svg, SvgStyle};
use planar::planeset::{DentRule, Disc, GalleryKind, GallerySpec, PlaneSet, SeqRule};
use planar::qx::report::BoundKind;
use planar::qx::{completeness_report, ReportConfig};
use planar::suites;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "planar",
    about = "Compact plane sets: galleries, geodesics, verification suites, completeness reports",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize a gallery construction to JSON and/or SVG.
    Gallery(GalleryArgs),
    /// Geodesic distance between two points of a set.
    Geodesic(GeodesicArgs),
    /// Run a named verification suite (or `all`).
    Verify(VerifyArgs),
    /// Completeness report for a set at the given probes.
    Report(ReportArgs),
}

#[derive(Args)]
struct GalleryArgs {
    /// One of: bad-arc, cantor-squares, dented-square, rsa-disc,
    /// crossed-square, superman, disc-deletion, fattened-triangle-arc.
    name: String,
    #[arg(long, default_value_t = 6)]
    depth: u32,
    /// Chords per quarter circle for curved boundaries.
    #[arg(long, default_value_t = 64)]
    chords: usize,
    /// Dent-depth rule (dented-square): eq | 2x | n | sqrt | const:<v>.
    #[arg(long)]
    r: Option<String>,
    /// Height sequence rule: 2^-n | 4^-n | geom:<ratio> | pow:<exp>[:<scale>].
    #[arg(long)]
    s: Option<String>,
    /// Crossing-height rule (crossed-square), same syntax as --s.
    #[arg(long)]
    y: Option<String>,
    /// Block-height rule (superman, fattened-triangle-arc), same syntax.
    #[arg(long)]
    heights: Option<String>,
    #[arg(long, default_value_t = 0.2)]
    width_ratio: f64,
    /// Deleted discs (disc-deletion) as `cx,cy,r;cx,cy,r;...`.
    #[arg(long)]
    discs: Option<String>,
    /// Output path for the set description JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output path for an SVG rendering.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct GeodesicArgs {
    /// Set description JSON file.
    setfile: PathBuf,
    /// Start point as `re,im`.
    #[arg(long)]
    from: String,
    /// End point as `re,im`.
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ReportArgs {
    /// Set description JSON file.
    setfile: PathBuf,
    /// Probe points as `re,im;re,im;...`; gallery sets default to their
    /// construction probes.
    #[arg(long)]
    probes: Option<String>,
    /// Log-log slope threshold of the divergence rule.
    #[arg(long)]
    slope_threshold: Option<f64>,
    /// Smallest geometric feature used for witnesses.
    #[arg(long)]
    min_feature: Option<f64>,
    /// Optional SVG rendering with dent witnesses overlaid.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Config file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(String),
    VerificationFailed,
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gallery(args) => cmd_gallery(args),
        Command::Geodesic(args) => cmd_geodesic(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("domain error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("expected `re,im`, got `{s}`")));
    }
    let re = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|e| CliError::Usage(format!("bad coordinate `{}`: {e}", parts[0])))?;
    let im = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|e| CliError::Usage(format!("bad coordinate `{}`: {e}", parts[1])))?;
    Ok(Point::new(re, im))
}

fn parse_seq_rule(s: &str) -> Result<SeqRule, CliError> {
    match s {
        "2^-n" => return Ok(SeqRule::Geometric { ratio: 0.5 }),
        "4^-n" => return Ok(SeqRule::Geometric { ratio: 0.25 }),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("geom:") {
        let ratio = rest
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad ratio in `{s}`: {e}")))?;
        return Ok(SeqRule::Geometric { ratio });
    }
    if let Some(rest) = s.strip_prefix("pow:") {
        let mut it = rest.split(':');
        let exponent = it
            .next()
            .unwrap_or_default()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad exponent in `{s}`: {e}")))?;
        let scale = match it.next() {
            Some(v) => v
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad scale in `{s}`: {e}")))?,
            None => 1.0,
        };
        return Ok(SeqRule::Power { exponent, scale });
    }
    Err(CliError::Usage(format!(
        "unknown sequence rule `{s}` (use 2^-n, 4^-n, geom:<ratio>, pow:<exp>[:<scale>])"
    )))
}

fn parse_dent_rule(s: &str) -> Result<DentRule, CliError> {
    match s {
        "eq" => return Ok(DentRule::MatchDepth { factor: 1.0 }),
        "2x" => return Ok(DentRule::MatchDepth { factor: 2.0 }),
        "n" => return Ok(DentRule::LinearDepth { factor: 1.0 }),
        "sqrt" => return Ok(DentRule::SqrtDepth),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("const:") {
        let value = rest
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("bad value in `{s}`: {e}")))?;
        return Ok(DentRule::Const { value });
    }
    Err(CliError::Usage(format!(
        "unknown dent rule `{s}` (use eq, 2x, n, sqrt, const:<v>)"
    )))
}

fn cmd_gallery(args: GalleryArgs) -> Result<(), CliError> {
    let seq = |opt: &Option<String>, default: SeqRule| -> Result<SeqRule, CliError> {
        opt.as_deref().map(parse_seq_rule).unwrap_or(Ok(default))
    };
    let kind = match args.name.as_str() {
        "bad-arc" => GalleryKind::BadArc {},
        "cantor-squares" => GalleryKind::CantorSquares {},
        "dented-square" => GalleryKind::DentedSquare {
            r: args
                .r
                .as_deref()
                .map(parse_dent_rule)
                .unwrap_or(Ok(DentRule::MatchDepth { factor: 1.0 }))?,
            s: seq(&args.s, SeqRule::Geometric { ratio: 0.5 })?,
        },
        "rsa-disc" => GalleryKind::RsaDisc {},
        "crossed-square" => GalleryKind::CrossedSquare {
            y: seq(&args.y, SeqRule::Geometric { ratio: 0.5 })?,
        },
        "superman" => GalleryKind::Superman {
            heights: seq(&args.heights, SeqRule::Geometric { ratio: 0.5 })?,
            width_ratio: args.width_ratio,
        },
        "fattened-triangle-arc" => GalleryKind::FattenedTriangleArc {
            heights: seq(&args.heights, SeqRule::Geometric { ratio: 0.5 })?,
            width_ratio: args.width_ratio,
        },
        "disc-deletion" => {
            let spec = args
                .discs
                .as_deref()
                .ok_or_else(|| CliError::Usage("disc-deletion needs --discs".into()))?;
            let discs = spec
                .split(';')
                .map(|d| {
                    let parts: Vec<&str> = d.split(',').collect();
                    if parts.len() != 3 {
                        return Err(CliError::Usage(format!("bad disc `{d}`")));
                    }
                    let nums: Result<Vec<f64>, _> =
                        parts.iter().map(|p| p.trim().parse::<f64>()).collect();
                    let nums =
                        nums.map_err(|e| CliError::Usage(format!("bad disc `{d}`: {e}")))?;
                    Ok(Disc { center: Point::new(nums[0], nums[1]), radius: nums[2] })
                })
                .collect::<Result<Vec<_>, _>>()?;
            GalleryKind::DiscDeletion { discs }
        }
        other => return Err(CliError::Usage(format!("unknown gallery kind `{other}`"))),
    };
    let spec = GallerySpec::new(kind, args.depth)
        .map_err(|e| CliError::Domain(e.to_string()))?
        .with_chords(args.chords);
    let set = PlaneSet::Gallery(spec);
    set.materialized().map_err(|e| CliError::Domain(e.to_string()))?;
    if let Some(path) = &args.out {
        let value = serde_json::to_value(&set).expect("set serializes");
        std::fs::write(path, jsonfmt::to_string(&value))?;
    }
    if let Some(path) = &args.svg {
        let svg =
            to_svg(&set, &SvgStyle::default()).map_err(|e| CliError::Domain(e.to_string()))?;
        std::fs::write(path, svg)?;
    }
    if args.out.is_none() && args.svg.is_none() {
        let value = serde_json::to_value(&set).expect("set serializes");
        print!("{}", jsonfmt::to_string(&value));
    }
    Ok(())
}

fn load_set(path: &PathBuf) -> Result<PlaneSet, CliError> {
    let text = std::fs::read_to_string(path)?;
    let set: PlaneSet =
        serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("bad set file: {e}")))?;
    set.materialized().map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(set)
}

fn cmd_geodesic(args: GeodesicArgs) -> Result<(), CliError> {
    let set = load_set(&args.setfile)?;
    let z = parse_point(&args.from)?;
    let w = parse_point(&args.to)?;
    let result = geodesic_distance(&set, z, w).map_err(|e| CliError::Domain(e.to_string()))?;
    let value = json!({
        "from": [z.re, z.im],
        "to": [w.re, w.im],
        "length": result.length,
        "path": serde_json::to_value(&result.path).expect("path serializes"),
    });
    print!("{}", jsonfmt::to_string(&value));
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let reports = if args.suite == "all" {
        suites::run_all(args.seed)
    } else {
        match suites::run_suite(&args.suite, args.seed) {
            Some(r) => vec![r],
            None => {
                return Err(CliError::Usage(format!(
                    "unknown suite `{}` (available: {}, all)",
                    args.suite,
                    suites::SUITE_NAMES.join(", ")
                )))
            }
        }
    };
    let mut all_pass = true;
    for rep in &reports {
        all_pass &= rep.pass;
        println!(
            "suite {:<14} {} ({} ms)",
            rep.name,
            if rep.pass { "PASS" } else { "FAIL" },
            rep.elapsed_ms
        );
        for item in &rep.items {
            println!(
                "  [{}] {}: {}",
                if item.pass { "ok" } else { "FAIL" },
                item.label,
                item.detail
            );
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let set = load_set(&args.setfile)?;
    let mut cfg = ReportConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        let file_cfg: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Domain(format!("bad config file: {e}")))?;
        if let Some(v) = file_cfg.get("slope_threshold").and_then(|v| v.as_f64()) {
            cfg.rule.slope_threshold = v;
        }
        if let Some(v) = file_cfg.get("min_feature").and_then(|v| v.as_f64()) {
            cfg.min_feature = v;
        }
    }
    // flags win over the config file
    if let Some(v) = args.slope_threshold {
        cfg.rule.slope_threshold = v;
    }
    if let Some(v) = args.min_feature {
        cfg.min_feature = v;
    }
    let probes: Vec<Point> = match &args.probes {
        Some(spec) => spec
            .split(';')
            .map(parse_point)
            .collect::<Result<Vec<_>, _>>()?,
        None => match set.gallery() {
            Some(g) => g.default_probes(),
            None => {
                let vs = set
                    .all_vertices()
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                vs.into_iter().take(4).collect()
            }
        },
    };
    let report =
        completeness_report(&set, &probes, &cfg).map_err(|e| CliError::Domain(e.to_string()))?;
    if let Some(path) = &args.svg {
        let mut style = SvgStyle::default();
        for probe in &report.probes {
            for b in &probe.estimate.witnesses {
                style.overlay_points.push(b.w);
                if b.test == BoundKind::Halfline {
                    if let (Some(a), Some(dir)) = (b.a, b.dir) {
                        style.overlay_points.push(a);
                        style.overlay_lines.push(vec![a, a + dir.scale(0.3)]);
                    }
                }
            }
        }
        let svg = to_svg(&set, &style).map_err(|e| CliError::Domain(e.to_string()))?;
        std::fs::write(path, svg)?;
    }
    let value = serde_json::to_value(&report).expect("report serializes");
    print!("{}", jsonfmt::to_string(&value));
    Ok(())
}

//! Command-line front end.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tdt_core::temporal::{
    metric_near_times, persistence_diagram, segment_all, temporally_near, track, TrackedRegion,
    ValueBin,
};
use tdt_core::{connected_components, jordan_partition, near_discrete, AdjacencyScheme, Extent, OneCycle, Point, Video};

use crate::checks::{run_checks, Suite};
use crate::error::{Error, Result};
use crate::io::{input_digest, load_video, write_video};
use crate::report::{IntervalRecord, JordanRecord, MaskRecord, RelationRecord, Report, TrackRecord};
use crate::scene::{generate_scene, SceneSpec};
use crate::svg::emit_persistence_svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

/// Ground-truth file written next to generated frames.
pub const GROUND_TRUTH_FILE: &str = "ground_truth.json";

#[derive(Debug, Parser)]
#[command(name = "tdt", version, about = "Temporal digital topology over grayscale frame sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Directory of PGM/PNG frames (lexicographic order) or a single frame file.
    pub input: PathBuf,
    #[arg(long)]
    pub fps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TrackingArgs {
    /// Derivative-change tolerance in gray levels.
    #[arg(long, default_value_t = 0)]
    pub tol: u16,
    #[arg(long, default_value = "8", value_parser = parse_scheme)]
    pub scheme: AdjacencyScheme,
    /// Read tracks from a report instead of segmenting and tracking.
    #[arg(long)]
    pub tracks: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProximityKind {
    Tnear,
    Mnear,
    Dnear,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load frames and report dimensions and digest.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Foreground masks from derivative changes between consecutive frames.
    Segment {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        tol: u16,
        #[arg(long, default_value = "8", value_parser = parse_scheme)]
        scheme: AdjacencyScheme,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Segment and link foreground components into tracked regions.
    Track {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        tol: u16,
        #[arg(long, default_value = "8", value_parser = parse_scheme)]
        scheme: AdjacencyScheme,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Pairwise temporal proximity between tracked regions.
    Proximity {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        tracking: TrackingArgs,
        #[arg(long, value_enum)]
        kind: ProximityKind,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Value-bin persistence intervals per tracked region.
    Persistence {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        tracking: TrackingArgs,
        #[arg(long, default_value = "black,gray,white")]
        bins: String,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Interior and exterior of a 1-cycle.
    Jordan {
        /// Frame extent as WIDTHxHEIGHT.
        #[arg(long, value_parser = parse_extent)]
        extent: Extent,
        /// Rectangle ring corners x0,y0,x1,y1.
        #[arg(long, conflicts_with = "cycle")]
        rect: Option<String>,
        /// Cycle vertices as "x,y x,y ...".
        #[arg(long)]
        cycle: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Render a preset scene as PGM frames plus ground-truth tracks.
    Generate {
        #[arg(long, value_parser = ["fig4", "moving-square"])]
        scene: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        fps: Option<f64>,
    },
    /// Run the invariant suites; exit status 1 when any check fails.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 16)]
        size: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_scheme(s: &str) -> std::result::Result<AdjacencyScheme, String> {
    s.parse::<u8>()
        .ok()
        .and_then(AdjacencyScheme::from_degree)
        .ok_or_else(|| format!("scheme must be 4 or 8, got {s:?}"))
}

fn parse_extent(s: &str) -> std::result::Result<Extent, String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let dim = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}"));
    Ok(Extent::new(dim(w)?, dim(h)?))
}

fn parse_ints(s: &str) -> Result<Vec<i32>> {
    s.split([',', ' ', ';'])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| Error::Invalid(format!("{t:?}: {e}"))))
        .collect()
}

fn emit(report: &Report, out: &OutputArgs) -> Result<()> {
    match &out.json {
        Some(path) => report.write(path),
        None => {
            let s = report.to_canonical_json()?;
            std::io::stdout()
                .write_all(s.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn base_report(video: &Video) -> Report {
    let mut r = Report::new(video.len(), video.fps()).with_extent(video.extent());
    r.input_digest = Some(input_digest(video));
    r
}

fn track_records(tracks: &[TrackedRegion]) -> Vec<TrackRecord> {
    tracks.iter().filter_map(TrackRecord::from_track).collect()
}

fn segment_and_track(video: &Video, tol: u16, scheme: AdjacencyScheme) -> Result<Vec<TrackedRegion>> {
    if video.len() < 2 {
        return Ok(Vec::new());
    }
    let masks = segment_all(video, tol)?;
    Ok(track(video, &masks, scheme)?)
}

/// Loads the video and its tracks. A tracks report also supplies the frame
/// rate unless `--fps` is given.
fn load_with_tracks(input: &InputArgs, tracking: &TrackingArgs) -> Result<(Video, Vec<TrackedRegion>)> {
    match &tracking.tracks {
        Some(path) => {
            let report = Report::read(path)?;
            let video = load_video(&input.input, input.fps.unwrap_or(report.fps))?;
            if report.extent() != Some(video.extent()) || report.frames != video.len() {
                return Err(Error::Invalid(format!(
                    "{} does not describe a {}x{} video of {} frames",
                    path.display(),
                    video.extent().width,
                    video.extent().height,
                    video.len()
                )));
            }
            let tracks = report.tracked_regions()?;
            Ok((video, tracks))
        }
        None => {
            let video = load_video(&input.input, input.fps.unwrap_or(1.0))?;
            let tracks = segment_and_track(&video, tracking.tol, tracking.scheme)?;
            Ok((video, tracks))
        }
    }
}

fn relations(tracks: &[TrackedRegion], kind: ProximityKind, eps: f64) -> Vec<RelationRecord> {
    let mut out = Vec::new();
    for (i, a) in tracks.iter().enumerate() {
        for b in &tracks[i + 1..] {
            let times = match kind {
                ProximityKind::Tnear => temporally_near(a, b).times,
                ProximityKind::Mnear => metric_near_times(a, b, eps),
                ProximityKind::Dnear => (0..a.frames())
                    .filter(|&t| match (a.slice(t), b.slice(t)) {
                        (Some(sa), Some(sb)) => near_discrete(sa, sb).unwrap_or(false),
                        _ => false,
                    })
                    .collect(),
            };
            out.push(RelationRecord {
                kind: format!("{kind:?}").to_lowercase(),
                a: a.id(),
                b: b.id(),
                eps: (kind == ProximityKind::Mnear).then_some(eps),
                holds: !times.is_empty(),
                times,
            });
        }
    }
    out
}

fn cycle_from_args(rect: Option<&str>, cycle: Option<&str>) -> Result<OneCycle> {
    match (rect, cycle) {
        (Some(r), None) => match parse_ints(r)?[..] {
            [x0, y0, x1, y1] => Ok(OneCycle::rectangle(x0, y0, x1, y1)?),
            _ => Err(Error::Invalid("--rect takes x0,y0,x1,y1".into())),
        },
        (None, Some(c)) => {
            let v = parse_ints(c)?;
            if v.len() % 2 != 0 {
                return Err(Error::Invalid("--cycle needs an even number of coordinates".into()));
            }
            Ok(OneCycle::new(v.chunks(2).map(|p| Point::new(p[0], p[1])).collect())?)
        }
        _ => Err(Error::Invalid("give exactly one of --rect or --cycle".into())),
    }
}

fn generate(scene: &str, out: &Path, fps: Option<f64>) -> Result<Report> {
    let mut spec = SceneSpec::preset(scene).ok_or_else(|| Error::Invalid(format!("unknown scene {scene:?}")))?;
    if let Some(fps) = fps {
        spec.fps = fps;
    }
    let g = generate_scene(&spec)?;
    write_video(out, &g.video)?;
    let mut report = base_report(&g.video);
    report.tracks = track_records(&g.ground_truth);
    report.write(&out.join(GROUND_TRUTH_FILE))?;
    Ok(report)
}

/// Executes one command and returns the process exit status.
pub fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Ingest { input, out } => {
            let video = load_video(&input.input, input.fps.unwrap_or(1.0))?;
            emit(&base_report(&video), &out)?;
        }
        Command::Segment { input, tol, scheme, out } => {
            let video = load_video(&input.input, input.fps.unwrap_or(1.0))?;
            let mut report = base_report(&video);
            if video.len() >= 2 {
                for m in segment_all(&video, tol)? {
                    let components = if m.foreground.is_empty() {
                        0
                    } else {
                        connected_components(&m.foreground, scheme)?.len()
                    };
                    report.masks.push(MaskRecord::new(&m, components));
                }
            }
            emit(&report, &out)?;
        }
        Command::Track { input, tol, scheme, out } => {
            let video = load_video(&input.input, input.fps.unwrap_or(1.0))?;
            let mut report = base_report(&video);
            report.tracks = track_records(&segment_and_track(&video, tol, scheme)?);
            emit(&report, &out)?;
        }
        Command::Proximity { input, tracking, kind, eps, out } => {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(Error::Invalid(format!("eps must be a nonnegative number, got {eps}")));
            }
            let (video, tracks) = load_with_tracks(&input, &tracking)?;
            let mut report = base_report(&video);
            report.relations = relations(&tracks, kind, eps);
            report.tracks = track_records(&tracks);
            emit(&report, &out)?;
        }
        Command::Persistence { input, tracking, bins, out, svg } => {
            let bins = ValueBin::parse_list(&bins)?;
            let (video, tracks) = load_with_tracks(&input, &tracking)?;
            let intervals = persistence_diagram(&video, &tracks, &bins)?;
            if let Some(path) = &svg {
                emit_persistence_svg(&intervals, video.fps(), path)?;
            }
            let mut report = base_report(&video);
            report.tracks = track_records(&tracks);
            report.intervals = intervals.iter().map(IntervalRecord::from).collect();
            emit(&report, &out)?;
        }
        Command::Jordan { extent, rect, cycle, out } => {
            let c = cycle_from_args(rect.as_deref(), cycle.as_deref())?;
            let part = jordan_partition(&c, extent)?;
            let mut report = Report::new(0, 1.0).with_extent(extent);
            report.jordan = Some(JordanRecord {
                cycle: c.vertices().iter().map(|p| [p.x, p.y]).collect(),
                interior: part.interior.iter().map(|p| [p.x, p.y]).collect(),
                exterior_size: part.exterior.len(),
            });
            emit(&report, &out)?;
        }
        Command::Generate { scene, out, fps } => {
            let report = generate(&scene, &out, fps)?;
            println!(
                "wrote {} frames and {} to {}",
                report.frames,
                GROUND_TRUTH_FILE,
                out.display()
            );
        }
        Command::Check { suite, size, seed, out } => {
            let report = run_checks(suite, size, seed)?;
            for c in &report.checks {
                eprintln!("{} {}/{} ({} cases)", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.cases);
            }
            emit(&report, &out)?;
            if !report.all_checks_pass() {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs; usage and input errors map to exit status 2.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

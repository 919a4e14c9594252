//! Scene parsing, graph selection and JSON/SVG output for the `segskel` tool.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use segskel_core::gabriel::gg_graph;
use segskel_core::geom::{param_point, Disc};
use segskel_core::oracle::{oracle_skeleton, OracleConfig};
use segskel_core::{
    beta_skeleton, delaunay_graph, make_neighborhood, validate_general_position, BetaSpec, Closure,
    Point, Segment, SegmentSet, SkeletonGraph, Variant, Violation, DEFAULT_DT_RESOLUTION,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid scene: {0}")]
    Scene(segskel_core::Error),
    #[error("invalid input: {0}")]
    Violation(Violation),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Internal(#[from] segskel_core::Error),
}

impl CliError {
    /// 2 for problems with the input scene, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Scene(_) | CliError::Violation(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Beta,
    Gg,
    Dt,
}

impl GraphKind {
    fn name(self) -> &'static str {
        match self {
            GraphKind::Beta => "beta",
            GraphKind::Gg => "gg",
            GraphKind::Dt => "dt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub graph: GraphKind,
    pub beta: Option<f64>,
    pub variant: Variant,
    /// `None` keeps the default closure for the chosen beta.
    pub closure: Option<Closure>,
    pub epsilon: f64,
    pub grid: usize,
    pub svg: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub oracle: bool,
    pub normalize: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, graph: GraphKind) -> Self {
        Self {
            input: input.into(),
            graph,
            beta: None,
            variant: Variant::Lune,
            closure: None,
            epsilon: segskel_core::DEFAULT_EPSILON,
            grid: 256,
            svg: None,
            output: None,
            oracle: false,
            normalize: false,
        }
    }

    pub fn check(&self) -> Result<(), CliError> {
        match (self.graph, self.beta) {
            (GraphKind::Beta, None) => {
                return Err(CliError::Config("--beta is required with --graph beta".into()))
            }
            (GraphKind::Gg | GraphKind::Dt, Some(_)) => {
                return Err(CliError::Config("--beta only applies to --graph beta".into()))
            }
            _ => {}
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(CliError::Config(format!(
                "--epsilon must lie in (0, 0.5), got {}",
                self.epsilon
            )));
        }
        if self.grid < 2 {
            return Err(CliError::Config("--grid must be at least 2".into()));
        }
        if self.oracle && self.graph == GraphKind::Dt {
            return Err(CliError::Config("--oracle is available for beta and gg only".into()));
        }
        Ok(())
    }

    fn spec(&self) -> Result<BetaSpec, CliError> {
        let beta = match self.graph {
            GraphKind::Beta => self.beta.unwrap_or(1.0),
            _ => 1.0,
        };
        let spec = match self.closure {
            Some(c) => BetaSpec::with_closure(beta, self.variant, c),
            None => BetaSpec::new(beta, self.variant),
        };
        spec.map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Deserialize, Serialize)]
struct SceneFile {
    segments: Vec<[f64; 4]>,
}

fn build_set(rows: Vec<[f64; 4]>) -> Result<SegmentSet, CliError> {
    let sites = rows
        .into_iter()
        .map(|r| Segment::from_coords(r[0], r[1], r[2], r[3]))
        .collect();
    SegmentSet::new(sites).map_err(CliError::Scene)
}

/// Parses a JSON scene `{"segments": [[x1, y1, x2, y2], ...]}` or text with
/// one `x1 y1 x2 y2` per line. Blank lines and `#` comments are skipped.
pub fn parse_str(text: &str) -> Result<SegmentSet, CliError> {
    if text.trim_start().starts_with('{') {
        let scene: SceneFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        return build_set(scene.segments);
    }
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(CliError::Parse {
                line: k + 1,
                msg: format!("expected 4 numbers, found {}", fields.len()),
            });
        }
        let mut row = [0.0; 4];
        for (slot, f) in row.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| CliError::Parse {
                line: k + 1,
                msg: format!("not a number: {f:?}"),
            })?;
        }
        rows.push(row);
    }
    build_set(rows)
}

pub fn parse_segments(path: &Path) -> Result<SegmentSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_str(&text)
}

/// JSON scene text for `set`; parsing it back gives identical coordinates.
pub fn scene_to_json(set: &SegmentSet) -> String {
    let scene = SceneFile {
        segments: set.sites().iter().map(|s| [s.a.x, s.a.y, s.b.x, s.b.y]).collect(),
    };
    serde_json::to_string(&scene).expect("plain numbers serialize")
}

/// Translates and uniformly scales the scene into the unit square, keeping
/// the aspect ratio.
pub fn normalize(set: &SegmentSet) -> Result<SegmentSet, CliError> {
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for s in set.sites() {
        for p in [s.a, s.b] {
            min = Point::new(min.x.min(p.x), min.y.min(p.y));
            max = Point::new(max.x.max(p.x), max.y.max(p.y));
        }
    }
    if set.is_empty() {
        return Ok(set.clone());
    }
    let extent = (max.x - min.x).max(max.y - min.y);
    let k = if extent > 0.0 { 1.0 / extent } else { 1.0 };
    set.map(|p| (p - min) * k).map_err(CliError::Scene)
}

#[derive(Serialize)]
struct EdgeOut {
    i: usize,
    j: usize,
    t1: Option<f64>,
    t2: Option<f64>,
}

#[derive(Serialize)]
struct ReportOut {
    format: u32,
    n: usize,
    graph: &'static str,
    beta: Option<f64>,
    variant: Option<&'static str>,
    closure: Option<&'static str>,
    oracle: bool,
    edges: Vec<EdgeOut>,
}

/// Result of one run: the graph, its JSON rendering, an optional SVG and
/// any non-fatal diagnostics.
pub struct RunOutput {
    pub graph: SkeletonGraph,
    pub json: String,
    pub svg: Option<String>,
    pub warnings: Vec<String>,
}

/// Loads the scene, builds the requested graph and renders the outputs.
/// Nothing is written to disk.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    cfg.check()?;
    let mut set = parse_segments(&cfg.input)?;
    if cfg.normalize {
        set = normalize(&set)?;
    }
    execute_on(cfg, &set)
}

/// Same as [`execute`] for an already loaded scene.
pub fn execute_on(cfg: &RunConfig, set: &SegmentSet) -> Result<RunOutput, CliError> {
    cfg.check()?;
    let mut warnings = Vec::new();
    if let Err(v) = validate_general_position(set) {
        if v.is_fatal() {
            return Err(CliError::Violation(v));
        }
        warnings.push(format!("{v}"));
    }
    let spec = cfg.spec()?;
    let graph = match (cfg.graph, cfg.oracle) {
        (GraphKind::Dt, _) => {
            let report = delaunay_graph(set, DEFAULT_DT_RESOLUTION)?;
            warnings.extend(report.warnings());
            report.graph
        }
        (_, true) => oracle_skeleton(
            set,
            spec,
            &OracleConfig {
                grid: cfg.grid,
                ..OracleConfig::default()
            },
        ),
        (GraphKind::Gg, false) => gg_graph(set, cfg.epsilon)?,
        (GraphKind::Beta, false) => beta_skeleton(set, spec, cfg.epsilon)?,
    };

    let report = ReportOut {
        format: FORMAT_VERSION,
        n: set.len(),
        graph: cfg.graph.name(),
        beta: (cfg.graph == GraphKind::Beta).then_some(spec.beta()),
        variant: (cfg.graph == GraphKind::Beta).then_some(match spec.variant() {
            Variant::Lune => "lune",
            Variant::Circle => "circle",
        }),
        closure: (cfg.graph != GraphKind::Dt).then_some(match spec.closure() {
            Closure::Open => "open",
            Closure::Closed => "closed",
        }),
        oracle: cfg.oracle,
        edges: graph
            .edges()
            .map(|e| EdgeOut {
                i: e.i,
                j: e.j,
                t1: e.witness.map(|w| w.t1),
                t2: e.witness.map(|w| w.t2),
            })
            .collect(),
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    let svg = cfg
        .svg
        .as_ref()
        .map(|_| render_svg(set, &graph, (cfg.graph != GraphKind::Dt).then_some(spec)));
    Ok(RunOutput {
        graph,
        json,
        svg,
        warnings,
    })
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Circle intersection points, when the circles cross.
fn circle_crossings(a: &Disc, b: &Disc) -> Option<(Point, Point)> {
    let d = a.center.dist(b.center);
    if d == 0.0 || d > a.radius + b.radius || d < (a.radius - b.radius).abs() {
        return None;
    }
    let x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h = (a.radius * a.radius - x * x).max(0.0).sqrt();
    let u = (b.center - a.center) * (1.0 / d);
    let base = a.center + u * x;
    Some((base + u.perp() * h, base - u.perp() * h))
}

/// SVG arc command along `disc` from `from` to `to`, taking the side whose
/// middle satisfies `keep`.
fn arc(disc: &Disc, from: Point, to: Point, keep: impl Fn(Point) -> bool) -> String {
    let ang = |p: Point| (p.y - disc.center.y).atan2(p.x - disc.center.x);
    let tau = std::f64::consts::TAU;
    let span = (ang(to) - ang(from)).rem_euclid(tau);
    let mid = ang(from) + 0.5 * span;
    let probe = disc.center + Point::new(mid.cos(), mid.sin()) * disc.radius;
    let (sweep, span) = if keep(probe) { (1, span) } else { (0, tau - span) };
    let large = u8::from(span > std::f64::consts::PI);
    let r = fmt_num(disc.radius);
    format!("A {r} {r} 0 {large} {sweep} {} {}", fmt_num(to.x), fmt_num(to.y))
}

fn outline(discs: &[Disc], union: bool) -> String {
    let circle = |d: &Disc| {
        format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt_num(d.center.x),
            fmt_num(d.center.y),
            fmt_num(d.radius)
        )
    };
    if discs.len() == 1 {
        return circle(&discs[0]);
    }
    let (a, b) = (&discs[0], &discs[1]);
    let Some((p, q)) = circle_crossings(a, b) else {
        return discs.iter().map(circle).collect();
    };
    // Union keeps the arcs outside the other disc, intersection the ones inside.
    let keep = |d: Disc| move |x: Point| (x.dist(d.center) > d.radius) == union;
    let (first, second) = (arc(a, p, q, keep(*b)), arc(b, q, p, keep(*a)));
    format!(
        "<path d=\"M {} {} {first} {second} Z\"/>",
        fmt_num(p.x),
        fmt_num(p.y)
    )
}

/// Sites in black, witness chords in blue and, when a neighborhood family
/// is given, each witness neighborhood outlined in gray.
pub fn render_svg(set: &SegmentSet, graph: &SkeletonGraph, spec: Option<BetaSpec>) -> String {
    let sites = set.sites();
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: Point| {
        min = Point::new(min.x.min(p.x), min.y.min(p.y));
        max = Point::new(max.x.max(p.x), max.y.max(p.y));
    };
    for s in sites {
        grow(s.a);
        grow(s.b);
    }
    if sites.is_empty() {
        grow(Point::new(0.0, 0.0));
        grow(Point::new(1.0, 1.0));
    }
    let extent = (max.x - min.x).max(max.y - min.y).max(1e-9);
    let m = 0.1 * extent;
    let (w, h) = (max.x - min.x + 2.0 * m, max.y - min.y + 2.0 * m);

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        fmt_num((800.0 * h / w).round()),
        fmt_num(min.x - m),
        fmt_num(-(max.y + m)),
        fmt_num(w),
        fmt_num(h)
    );
    let _ = writeln!(out, "<g transform=\"scale(1,-1)\">");
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"gray\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">"
    );
    if let Some(spec) = spec {
        for e in graph.edges() {
            let Some(wt) = e.witness else { continue };
            let v1 = param_point(&sites[e.i], wt.t1);
            let v2 = param_point(&sites[e.j], wt.t2);
            if let Ok(n) = make_neighborhood(v1, v2, spec) {
                let union = n.combine() == segskel_core::neighborhoods::Combine::Union;
                let _ = writeln!(out, "{}", outline(n.discs(), union));
            }
        }
    }
    let _ = writeln!(out, "</g>");
    let line = |out: &mut String, a: Point, b: Point, color: &str, width: u32| {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{width}\" vector-effect=\"non-scaling-stroke\"/>",
            fmt_num(a.x),
            fmt_num(a.y),
            fmt_num(b.x),
            fmt_num(b.y)
        );
    };
    for e in graph.edges() {
        let Some(wt) = e.witness else { continue };
        line(
            &mut out,
            param_point(&sites[e.i], wt.t1),
            param_point(&sites[e.j], wt.t2),
            "blue",
            1,
        );
    }
    for s in sites {
        line(&mut out, s.a, s.b, "black", 3);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

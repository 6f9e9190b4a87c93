use std::io::Write;
use std::path::{Path, PathBuf};

use straightedge::brackets::{
    certificate_conclusion, certificate_relations, check_certificate, configuration_from_trace, parse_relations,
};
use straightedge::constructions::{check_ten_on_cubic_with, CheckOptions, ConstructionTrace, PartitionScheme, Verdict};
use straightedge::oracle::{cubic_det, fit_cubic};
use straightedge::trace::{from_json, to_json};
use straightedge::Point;
use thiserror::Error;

use crate::input::{parse_points, InputError};
use crate::svg::{emit_svg, SvgError};

pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Svg(#[from] SvgError),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{0}")]
    Core(#[from] straightedge::Error),
    #[error("{0}")]
    Usage(String),
}

/// Choices shared by `verify` and `certificate`.
#[derive(Clone, Debug, Default)]
pub struct PipelineFlags {
    pub partition: Option<PartitionScheme>,
    pub seed: u64,
    pub max_retries: Option<usize>,
}

impl PipelineFlags {
    fn options(&self) -> CheckOptions {
        let mut opts = CheckOptions {
            scheme: self.partition.clone(),
            seed: self.seed,
            ..CheckOptions::default()
        };
        if let Some(n) = self.max_retries {
            opts.max_retries = n;
        }
        opts
    }
}

/// Where `--trace` goes.
#[derive(Clone, Debug)]
pub enum TraceTarget {
    Stdout,
    File(PathBuf),
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn run_verify(
    points_path: &Path,
    flags: &PipelineFlags,
    trace: Option<TraceTarget>,
    svg: Option<&Path>,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let points = parse_points(points_path)?;
    let outcome = check_ten_on_cubic_with(&points, &flags.options())?;
    let v = &outcome.verdict;
    let _ = writeln!(out, "{}", v.token());
    match (&outcome.trace, &trace) {
        (Some(t), Some(TraceTarget::Stdout)) => {
            let _ = writeln!(out, "{}", to_json(t));
        }
        (Some(t), target) => {
            let _ = writeln!(out, "scheme: {}", t.scheme);
            let _ = writeln!(out, "P2 = {}, U = {}, V = {}", t.p2, t.u, t.v);
            let _ = writeln!(out, "[P2 U V] = {}", t.collinearity);
            if let Some(TraceTarget::File(path)) = target {
                write_file(path, &to_json(t))?;
            }
        }
        (None, _) => {}
    }
    if let Some(fb) = &outcome.fallback {
        let off: Vec<String> = fb.off.iter().map(Point::to_string).collect();
        let _ = writeln!(
            out,
            "fallback: {} points on the conic {}; off it: {}",
            10 - fb.off.len(),
            fb.conic,
            if off.is_empty() { "none".into() } else { off.join(", ") }
        );
    }
    if let Verdict::Degenerate(reason) = v {
        let _ = writeln!(out, "reason: {reason}");
    }
    if !matches!(trace, Some(TraceTarget::Stdout)) {
        for r in &outcome.retries {
            let _ = writeln!(out, "retry {}: {}", r.scheme, r.reason);
        }
    }
    if let Some(path) = svg {
        match &outcome.trace {
            Some(t) => emit_svg(t, &points, path)?,
            None => eprintln!("no construction to draw: {v}"),
        }
    }
    Ok(v.exit_code())
}

pub fn run_oracle(points_path: &Path, out: &mut impl Write) -> Result<i32, CliError> {
    let points = parse_points(points_path)?;
    let det = cubic_det(&points)?;
    let on = det == straightedge::Rational::from_integer(0.into());
    let _ = writeln!(out, "{}", if on { "ON_CUBIC" } else { "NOT_ON_CUBIC" });
    let _ = writeln!(out, "{det}");
    let nine: [Point; 9] = std::array::from_fn(|i| points[i].clone());
    match fit_cubic(&nine) {
        Ok(c) if on => {
            let _ = writeln!(out, "cubic: {c}");
        }
        Ok(_) => {}
        Err(e) => {
            let _ = writeln!(out, "cubic: {e}");
        }
    }
    Ok(if on { 0 } else { 1 })
}

/// Where the certificate takes its points from.
pub enum CertificateSource<'a> {
    Points(&'a Path, PipelineFlags),
    Trace(&'a Path),
}

pub fn run_certificate(
    source: CertificateSource<'_>,
    relations: Option<&Path>,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let trace: ConstructionTrace = match source {
        CertificateSource::Trace(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.display().to_string(),
                source,
            })?;
            from_json(&text)?
        }
        CertificateSource::Points(path, flags) => {
            let points = parse_points(path)?;
            let outcome = check_ten_on_cubic_with(&points, &flags.options())?;
            match outcome.trace {
                Some(t) => t,
                None => {
                    let _ = writeln!(out, "DEGENERATE");
                    let _ = writeln!(out, "reason: no construction trace ({})", outcome.verdict);
                    return Ok(2);
                }
            }
        }
    };
    let rels = match relations {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.display().to_string(),
                source,
            })?;
            parse_relations(&text)?
        }
        None => certificate_relations(),
    };
    let cfg = configuration_from_trace(&trace)?;
    let report = check_certificate(&rels, &cfg)?;
    let conclusion = certificate_conclusion();
    let _ = writeln!(out, "{}", trace.verdict().token());
    let _ = writeln!(out, "reduction: {}", report.reduction.relation);
    let _ = writeln!(
        out,
        "conclusion {}: {}",
        conclusion.generator(),
        if report.reduces_to_conclusion() { "reached" } else { "not reached" }
    );
    let _ = writeln!(out, "relations: {}/{} hold", report.passed(), rels.len());
    for (rel, ok) in &report.results {
        let _ = writeln!(out, "{} {}", if *ok { "PASS" } else { "FAIL" }, rel.generator());
    }
    for s in &report.vanishing_cancelled {
        let _ = writeln!(out, "cancelled bracket vanishes: {s}");
    }
    let all_hold = report.passed() == rels.len() && report.vanishing_cancelled.is_empty();
    Ok(if all_hold { 0 } else { 1 })
}

pub fn parse_partition(text: &str) -> Result<PartitionScheme, CliError> {
    text.parse()
        .map_err(|e: straightedge::Error| CliError::Usage(format!("--partition: {e}")))
}

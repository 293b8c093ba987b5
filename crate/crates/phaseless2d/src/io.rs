//! File formats: dataset CSV (phaseless and far-field), indicator CSV,
//! 16-bit PGM heatmaps, decay reports, and run manifests.
//!
//! Dataset files carry `#`-prefixed header lines with the keys `version`,
//! `kind`, `k`, `R`, `L`, `noise_delta`, `noise_seed`, `generator`, followed
//! by L comma-separated rows (L values for phaseless data, 2L interleaved
//! re,im values for far-field data) printed with 17 significant digits.

use crate::forward::{FarFieldMatrix, NoiseRecord, PhaselessDataset};
use crate::geometry::SamplingGrid;
use crate::inversion::IndicatorField;
use crate::operators::OperatorMatrix;
use crate::validation::DecayReport;
use crate::{Complex, Error, Result};
use nalgebra::DMatrix;
use std::fmt::Write as _;
use std::io::{BufWriter, Write};
use std::path::Path;

const GENERATOR_ID: &str = "splitmix64-v1";

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(kind: &str, k: f64, r: f64, l: usize, noise: NoiseRecord) -> String {
    let (delta, seed, generator) = match noise {
        NoiseRecord::Exact => (0.0, 0, "exact"),
        NoiseRecord::Noisy { delta, seed } => (delta, seed, GENERATOR_ID),
    };
    let mut s = String::new();
    let _ = writeln!(s, "# version 1");
    let _ = writeln!(s, "# kind {kind}");
    let _ = writeln!(s, "# k {}", fmt_f(k));
    let _ = writeln!(s, "# R {}", fmt_f(r));
    let _ = writeln!(s, "# L {l}");
    let _ = writeln!(s, "# noise_delta {}", fmt_f(delta));
    let _ = writeln!(s, "# noise_seed {seed}");
    let _ = writeln!(s, "# generator {generator}");
    s
}

pub fn write_phaseless_csv(path: &Path, data: &PhaselessDataset) -> Result<()> {
    data.validate()?;
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(header("phaseless", data.k, data.r, data.l, data.noise).as_bytes())?;
    for i in 0..data.l {
        let row: Vec<String> = (0..data.l).map(|j| fmt_f(data.values[(i, j)])).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_farfield_csv(path: &Path, f: &FarFieldMatrix) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(header("farfield", f.k, 0.0, f.l, NoiseRecord::Exact).as_bytes())?;
    for i in 0..f.l {
        let mut row = Vec::with_capacity(2 * f.l);
        for j in 0..f.l {
            row.push(fmt_f(f.values[(i, j)].re));
            row.push(fmt_f(f.values[(i, j)].im));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Debug dump of any operator matrix in the far-field layout.
pub fn write_operator_csv(path: &Path, a: &OperatorMatrix) -> Result<()> {
    let f = FarFieldMatrix { l: a.dim(), k: 0.0, values: a.data.clone() };
    write_farfield_csv(path, &f)
}

struct ParsedHeader {
    kind: String,
    k: f64,
    r: f64,
    l: usize,
    noise_delta: f64,
    noise_seed: u64,
    generator: String,
}

fn parse_header_and_rows(text: &str) -> Result<(ParsedHeader, Vec<Vec<f64>>)> {
    let mut kind = None;
    let mut k = None;
    let mut r = None;
    let mut l = None;
    let mut delta = None;
    let mut seed = None;
    let mut generator = None;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let mut parts = rest.trim().splitn(2, ' ');
            let key = parts.next().unwrap_or("");
            let val = parts.next().unwrap_or("").trim();
            let ctx = |e: String| Error::Parse(format!("line {}: {e}", lineno + 1));
            match key {
                "version" => {
                    if val != "1" {
                        return Err(ctx(format!("unsupported version `{val}`")));
                    }
                }
                "kind" => kind = Some(val.to_string()),
                "k" => k = Some(val.parse::<f64>().map_err(|e| ctx(e.to_string()))?),
                "R" => r = Some(val.parse::<f64>().map_err(|e| ctx(e.to_string()))?),
                "L" => l = Some(val.parse::<usize>().map_err(|e| ctx(e.to_string()))?),
                "noise_delta" => delta = Some(val.parse::<f64>().map_err(|e| ctx(e.to_string()))?),
                "noise_seed" => seed = Some(val.parse::<u64>().map_err(|e| ctx(e.to_string()))?),
                "generator" => generator = Some(val.to_string()),
                _ => {} // unknown header keys are ignored
            }
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: bad value `{tok}`: {e}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    let need = |name: &str| Error::Parse(format!("missing header field `{name}`"));
    Ok((
        ParsedHeader {
            kind: kind.ok_or_else(|| need("kind"))?,
            k: k.ok_or_else(|| need("k"))?,
            r: r.ok_or_else(|| need("R"))?,
            l: l.ok_or_else(|| need("L"))?,
            noise_delta: delta.ok_or_else(|| need("noise_delta"))?,
            noise_seed: seed.ok_or_else(|| need("noise_seed"))?,
            generator: generator.ok_or_else(|| need("generator"))?,
        },
        rows,
    ))
}

pub fn read_phaseless_csv(path: &Path) -> Result<PhaselessDataset> {
    let text = std::fs::read_to_string(path)?;
    let (h, rows) = parse_header_and_rows(&text)?;
    if h.kind != "phaseless" {
        return Err(Error::Parse(format!("expected kind phaseless, found `{}`", h.kind)));
    }
    if rows.len() != h.l || rows.iter().any(|r| r.len() != h.l) {
        return Err(Error::Parse(format!(
            "expected {0} rows of {0} values, found {1} rows",
            h.l,
            rows.len()
        )));
    }
    let values = DMatrix::from_fn(h.l, h.l, |i, j| rows[i][j]);
    let noise = if h.generator == "exact" || h.noise_delta == 0.0 {
        NoiseRecord::Exact
    } else {
        NoiseRecord::Noisy { delta: h.noise_delta, seed: h.noise_seed }
    };
    let data = PhaselessDataset { l: h.l, r: h.r, k: h.k, values, noise };
    data.validate()?;
    Ok(data)
}

pub fn read_farfield_csv(path: &Path) -> Result<FarFieldMatrix> {
    let text = std::fs::read_to_string(path)?;
    let (h, rows) = parse_header_and_rows(&text)?;
    if h.kind != "farfield" {
        return Err(Error::Parse(format!("expected kind farfield, found `{}`", h.kind)));
    }
    if rows.len() != h.l || rows.iter().any(|r| r.len() != 2 * h.l) {
        return Err(Error::Parse(format!(
            "expected {} rows of {} values, found {} rows",
            h.l,
            2 * h.l,
            rows.len()
        )));
    }
    let values = DMatrix::from_fn(h.l, h.l, |i, j| Complex::new(rows[i][2 * j], rows[i][2 * j + 1]));
    Ok(FarFieldMatrix { l: h.l, k: h.k, values })
}

pub fn write_indicator_csv(path: &Path, field: &IndicatorField) -> Result<()> {
    let g = &field.grid;
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "# indicator v1")?;
    writeln!(
        w,
        "# grid {} {} {} {} {} {}",
        fmt_f(g.xmin),
        fmt_f(g.xmax),
        fmt_f(g.ymin),
        fmt_f(g.ymax),
        g.nx,
        g.ny
    )?;
    writeln!(w, "# cutoff {}", fmt_f(field.cutoff_rel))?;
    if let Some(mx) = field.raw_max {
        writeln!(w, "# raw_max {}", fmt_f(mx))?;
    }
    for iy in 0..g.ny {
        let row: Vec<String> =
            (0..g.nx).map(|ix| fmt_f(field.values[iy * g.nx + ix])).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn read_indicator_csv(path: &Path) -> Result<IndicatorField> {
    let text = std::fs::read_to_string(path)?;
    let mut grid = None;
    let mut cutoff = 0.0;
    let mut raw_max = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(spec) = rest.strip_prefix("grid ") {
                let toks: Vec<&str> = spec.split_whitespace().collect();
                if toks.len() != 6 {
                    return Err(Error::Parse("grid header needs 6 fields".into()));
                }
                grid = Some(SamplingGrid::new(
                    toks[0].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                    toks[1].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                    toks[2].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                    toks[3].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                    toks[4].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                    toks[5].parse().map_err(|e| Error::Parse(format!("{e}")))?,
                )?);
            } else if let Some(v) = rest.strip_prefix("cutoff ") {
                cutoff = v.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
            } else if let Some(v) = rest.strip_prefix("raw_max ") {
                raw_max = Some(v.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?);
            }
            continue;
        }
        rows.push(
            line.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{e}"))))
                .collect::<Result<_>>()?,
        );
    }
    let grid = grid.ok_or_else(|| Error::Parse("missing grid header".into()))?;
    if rows.len() != grid.ny || rows.iter().any(|r| r.len() != grid.nx) {
        return Err(Error::Parse("indicator rows do not match the grid shape".into()));
    }
    Ok(IndicatorField { grid, values: rows.into_iter().flatten().collect(), raw_max, cutoff_rel: cutoff })
}

/// 16-bit ASCII PGM heatmap, rows top (ymax) to bottom, values scaled by the
/// field maximum.
pub fn write_pgm(path: &Path, field: &IndicatorField) -> Result<()> {
    let g = &field.grid;
    let mx = field.max();
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "P2")?;
    writeln!(w, "# indicator heatmap, grid [{}, {}] x [{}, {}]", g.xmin, g.xmax, g.ymin, g.ymax)?;
    writeln!(w, "{} {}", g.nx, g.ny)?;
    writeln!(w, "65535")?;
    for iy in (0..g.ny).rev() {
        let row: Vec<String> = (0..g.nx)
            .map(|ix| {
                let v = field.values[iy * g.nx + ix];
                let pix = if mx > 0.0 { (65535.0 * v / mx).floor().clamp(0.0, 65535.0) } else { 0.0 };
                format!("{}", pix as u32)
            })
            .collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Structured text (key: value) plus CSV body for a decay report.
pub fn write_decay_report(path_txt: &Path, path_csv: &Path, name: &str, rep: &DecayReport) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path_txt)?);
    writeln!(w, "check: {name}")?;
    writeln!(w, "pass: {}", rep.pass)?;
    writeln!(w, "degenerate: {}", rep.degenerate)?;
    writeln!(w, "slope: {}", if rep.slope.is_nan() { "nan".into() } else { fmt_f(rep.slope) })?;
    for (p, e) in &rep.points {
        writeln!(w, "point: {} {}", fmt_f(*p), fmt_f(*e))?;
    }
    let mut c = BufWriter::new(std::fs::File::create(path_csv)?);
    writeln!(c, "parameter,error")?;
    for (p, e) in &rep.points {
        writeln!(c, "{},{}", fmt_f(*p), fmt_f(*e))?;
    }
    Ok(())
}

/// Run manifest: every parameter needed to reproduce the outputs.
pub fn write_manifest(path: &Path, entries: &[(&str, String)]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for (key, val) in entries {
        writeln!(w, "{key}: {val}")?;
    }
    Ok(())
}

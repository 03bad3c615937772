//! Persistence diagrams as SVG 1.1 bar charts.

use std::fmt::Write as _;
use std::path::Path;

use tdt_core::temporal::PersistenceInterval;

use crate::error::{Error, Result};

const LEFT: f64 = 110.0;
const TOP: f64 = 20.0;
const ROW: f64 = 24.0;
const BAR: f64 = 16.0;
const PLOT_W: f64 = 480.0;
const AXIS_H: f64 = 40.0;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// Fill for a bin label: named bins get their own shade, others mid-gray.
fn shade(bin: &str) -> String {
    let level: u8 = match bin {
        "black" => 0,
        "white" => 255,
        _ => 128,
    };
    format!("#{level:02x}{level:02x}{level:02x}")
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Renders one row per (track, bin) in first-appearance order. Each bar spans
/// `[birth_s, death_s + frame duration]`.
pub fn render_persistence_svg(intervals: &[PersistenceInterval], fps: f64) -> Result<String> {
    if intervals.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let frame_s = if fps > 0.0 { 1.0 / fps } else { 1.0 };
    let mut rows: Vec<(u32, &str)> = Vec::new();
    for i in intervals {
        if !rows.contains(&(i.track, i.bin.as_str())) {
            rows.push((i.track, i.bin.as_str()));
        }
    }
    let t_max = intervals
        .iter()
        .map(|i| i.death_s + frame_s)
        .fold(frame_s, f64::max);
    let scale = PLOT_W / t_max;
    let height = TOP + ROW * rows.len() as f64 + AXIS_H;
    let width = LEFT + PLOT_W + 30.0;

    let mut s = String::new();
    let _ = writeln!(s, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"##,
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(s, "<title>Persistence diagram</title>");
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{}" height="{}" fill="#f4f4f8"/>"##, fmt(width), fmt(height));
    for (k, (track, bin)) in rows.iter().enumerate() {
        let y = TOP + ROW * k as f64 + ROW / 2.0 + 4.0;
        let _ = writeln!(
            s,
            r##"<text class="row-label" x="{}" y="{}" font-size="11" text-anchor="end">track {} / {}</text>"##,
            fmt(LEFT - 8.0),
            fmt(y),
            track,
            escape(bin)
        );
    }
    for i in intervals {
        let k = rows
            .iter()
            .position(|&(t, b)| t == i.track && b == i.bin)
            .expect("row exists");
        let x = LEFT + i.birth_s * scale;
        let w = (i.death_s + frame_s - i.birth_s) * scale;
        let y = TOP + ROW * k as f64 + (ROW - BAR) / 2.0;
        let _ = writeln!(
            s,
            r##"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="#333333" stroke-width="0.5"><title>track {} {} frames {}-{}</title></rect>"##,
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(BAR),
            shade(&i.bin),
            i.track,
            escape(&i.bin),
            i.birth,
            i.death
        );
    }
    let axis_y = TOP + ROW * rows.len() as f64 + 4.0;
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
        fmt(LEFT),
        fmt(axis_y),
        fmt(LEFT + PLOT_W),
        fmt(axis_y)
    );
    let ticks = ((t_max / frame_s).round() as usize).min(20);
    for n in 0..=ticks {
        let t = t_max * n as f64 / ticks.max(1) as f64;
        let x = LEFT + t * scale;
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
            fmt(x),
            fmt(axis_y),
            fmt(x),
            fmt(axis_y + 4.0)
        );
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"##,
            fmt(x),
            fmt(axis_y + 16.0),
            fmt(t)
        );
    }
    let _ = writeln!(
        s,
        r##"<text x="{}" y="{}" font-size="11" text-anchor="middle">elapsed time (s)</text>"##,
        fmt(LEFT + PLOT_W / 2.0),
        fmt(axis_y + 32.0)
    );
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_persistence_svg(intervals: &[PersistenceInterval], fps: f64, out: &Path) -> Result<()> {
    let svg = render_persistence_svg(intervals, fps)?;
    std::fs::write(out, svg).map_err(|e| Error::io(out, e))
}

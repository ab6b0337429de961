//! SVG persistence diagrams: an ordinary panel and an extended panel.
//!
//! Each pair is drawn at (value of its birth node, value of its death node)
//! as stored: min-saddle pairs (red, down-forks) land above the diagonal,
//! saddle-max pairs (blue, up-forks) below it, and cycle pairs (purple)
//! at (down-fork, up-fork). The global pair is drawn in red with a black
//! outline.

use std::fmt::Write;

use reebpair_core::diagram::{PairClass, PersistenceDiagram, PersistencePair};

const PANEL: f64 = 320.0;
const MARGIN: f64 = 40.0;

pub fn render_svg(diagram: &PersistenceDiagram) -> String {
    let (lo, hi) = bounds(diagram);
    let width = 2.0 * (PANEL + 2.0 * MARGIN);
    let height = PANEL + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let ordinary: Vec<&PersistencePair> = diagram.ordinary().collect();
    let extended: Vec<&PersistencePair> = diagram.extended().collect();
    panel(&mut s, 0.0, "Ordinary", &ordinary, lo, hi);
    panel(&mut s, PANEL + 2.0 * MARGIN, "Extended", &extended, lo, hi);
    s.push_str("</svg>\n");
    s
}

fn bounds(diagram: &PersistenceDiagram) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in &diagram.pairs {
        for v in [p.birth_value, p.death_value] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < f64::EPSILON {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn panel(s: &mut String, x0: f64, title: &str, pairs: &[&PersistencePair], lo: f64, hi: f64) {
    let sx = |v: f64| x0 + MARGIN + (v - lo) / (hi - lo) * PANEL;
    let sy = |v: f64| MARGIN + PANEL - (v - lo) / (hi - lo) * PANEL;
    let _ = writeln!(s, r#"<g class="panel">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{MARGIN}" width="{PANEL}" height="{PANEL}" fill="none" stroke="black"/>"#,
        x0 + MARGIN
    );
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
        sx(lo),
        sy(lo),
        sx(hi),
        sy(hi)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>"#,
        x0 + MARGIN + PANEL / 2.0,
        MARGIN / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">birth f</text>"#,
        x0 + MARGIN + PANEL / 2.0,
        MARGIN + PANEL + 28.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11" transform="rotate(-90 {} {})">death f</text>"#,
        x0 + 14.0,
        MARGIN + PANEL / 2.0,
        x0 + 14.0,
        MARGIN + PANEL / 2.0
    );
    for p in pairs {
        let color = match p.class {
            PairClass::MinSaddle => "#d62728",
            PairClass::SaddleMax => "#1f77b4",
            PairClass::Cycle => "#7b3fa0",
        };
        let stroke = if p.global { r#" stroke="black" stroke-width="1.5""# } else { "" };
        let _ = writeln!(
            s,
            r#"<circle class="pair {}" cx="{:.3}" cy="{:.3}" r="4" fill="{color}"{stroke}><title>{}</title></circle>"#,
            p.class,
            sx(p.birth_value),
            sy(p.death_value),
            escape(&format!("{} ({}, {})", p.class, p.birth, p.death))
        );
    }
    s.push_str("</g>\n");
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

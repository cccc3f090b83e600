//! CSV tables and SVG renderings. Output bytes depend only on the inputs.

use std::fmt::Write;

use num_traits::One;

use moran_core::analysis::Component;
use moran_core::rational::{integer, to_fixed};
use moran_core::transport::RatioRecord;
use moran_core::{format_rational, Interval, Rational};

/// `rank,span_left,span_right,member_count,left_neighbor_gap`, one row per
/// component, ranks in order; the first component of each rank has an
/// empty gap field.
pub fn component_csv(ranks: &[Vec<Component>]) -> String {
    let mut out = String::from("rank,span_left,span_right,member_count,left_neighbor_gap\n");
    for comps in ranks {
        let mut prev: Option<&Component> = None;
        for c in comps {
            let gap = prev.map_or(String::new(), |p| format_rational(&(&c.span.left - &p.span.right)));
            writeln!(
                out,
                "{},{},{},{},{}",
                c.rank,
                format_rational(&c.span.left),
                format_rational(&c.span.right),
                c.count(),
                gap
            )
            .expect("writing to a String");
            prev = Some(c);
        }
    }
    out
}

/// `address,mu_mass,nu_image_mass,phi`.
pub fn ratio_csv(records: &[RatioRecord]) -> String {
    let mut out = String::from("address,mu_mass,nu_image_mass,phi\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{}",
            r.id,
            format_rational(&r.mu),
            format_rational(&r.nu),
            format_rational(&r.phi)
        )
        .expect("writing to a String");
    }
    out
}

const WIDTH: u32 = 1000;
const MARGIN_LEFT: u32 = 60;
const PLOT_WIDTH: u32 = 900;
const ROW_HEIGHT: u32 = 14;
const ROW_GAP: u32 = 10;
const TOP: u32 = 20;
const BAR_FILL: &str = "#2f3e46";

/// Colors for `φ ∈ [2^e, 2^{e+1})`, `e = -4 ..= 3`; values outside clamp.
const PHI_PALETTE: [&str; 8] = [
    "#08306b", "#2171b5", "#6baed6", "#c6dbef", "#fcbba1", "#fb6a4a", "#cb181d", "#67000d",
];

/// `⌊log₂ φ⌋` for `φ > 0`, exact.
pub fn log2_floor(value: &Rational) -> i32 {
    let two = integer(2);
    let mut e = 0i32;
    let mut low = Rational::one();
    if *value >= low {
        while *value >= &low * &two {
            low *= &two;
            e += 1;
        }
    } else {
        while *value < low {
            low /= &two;
            e -= 1;
        }
    }
    e
}

fn bucket(phi: &Rational) -> usize {
    (log2_floor(phi).clamp(-4, 3) + 4) as usize
}

fn x_of(value: &Rational) -> String {
    let scaled = value * integer(PLOT_WIDTH as u64) + integer(MARGIN_LEFT as u64);
    to_fixed(&scaled, 4)
}

fn width_of(iv: &Interval) -> String {
    to_fixed(&(iv.length() * integer(PLOT_WIDTH as u64)), 4)
}

/// One row of bars per rank; `strip`, when given, is a φ-colored band under
/// the deepest row built from `(interval, φ)` cells in left-to-right order.
/// Consecutive cells with equal φ are merged into one segment.
pub struct SvgScene<'a> {
    pub rows: &'a [Vec<Interval>],
    pub strip: Option<Vec<(Interval, Rational)>>,
}

impl SvgScene<'_> {
    pub fn render(&self) -> String {
        let strip_rows = if self.strip.is_some() { 1 } else { 0 };
        let body_rows = self.rows.len() as u32 + strip_rows;
        let legend_height = if self.strip.is_some() {
            20 + 14 * PHI_PALETTE.len() as u32
        } else {
            0
        };
        let height = TOP + body_rows * (ROW_HEIGHT + ROW_GAP) + legend_height + 10;
        let mut out = String::new();
        writeln!(
            out,
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"##
        )
        .unwrap();
        writeln!(
            out,
            r##"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="#ffffff"/>"##
        )
        .unwrap();
        for (rank, bars) in self.rows.iter().enumerate() {
            let y = TOP + rank as u32 * (ROW_HEIGHT + ROW_GAP);
            writeln!(out, r##"<g id="rank-{rank}">"##).unwrap();
            writeln!(
                out,
                r##"<text x="8" y="{}" font-family="monospace" font-size="11">k={rank}</text>"##,
                y + ROW_HEIGHT - 3
            )
            .unwrap();
            for iv in bars {
                writeln!(
                    out,
                    r##"<rect class="bar" x="{}" y="{y}" width="{}" height="{ROW_HEIGHT}" fill="{BAR_FILL}"/>"##,
                    x_of(&iv.left),
                    width_of(iv)
                )
                .unwrap();
            }
            writeln!(out, "</g>").unwrap();
        }
        if let Some(cells) = &self.strip {
            let y = TOP + self.rows.len() as u32 * (ROW_HEIGHT + ROW_GAP);
            writeln!(out, r##"<g id="phi-strip">"##).unwrap();
            let mut used = [false; PHI_PALETTE.len()];
            for (span, phi) in merge_runs(cells) {
                let b = bucket(&phi);
                used[b] = true;
                writeln!(
                    out,
                    r##"<rect class="phi" x="{}" y="{y}" width="{}" height="{ROW_HEIGHT}" fill="{}" data-phi="{}"/>"##,
                    x_of(&span.left),
                    width_of(&span),
                    PHI_PALETTE[b],
                    format_rational(&phi)
                )
                .unwrap();
            }
            writeln!(out, "</g>").unwrap();
            let mut ly = y + ROW_HEIGHT + 20;
            writeln!(out, r##"<g id="legend" font-family="monospace" font-size="11">"##).unwrap();
            for (b, color) in PHI_PALETTE.iter().enumerate() {
                if !used[b] {
                    continue;
                }
                let e = b as i32 - 4;
                let label = match e {
                    -4 => "phi < 2^-3".to_string(),
                    3 => "phi >= 2^3".to_string(),
                    _ => format!("2^{e} <= phi < 2^{}", e + 1),
                };
                writeln!(
                    out,
                    r##"<rect x="{MARGIN_LEFT}" y="{}" width="10" height="10" fill="{color}"/>"##,
                    ly - 9
                )
                .unwrap();
                writeln!(out, r##"<text x="{}" y="{ly}">{label}</text>"##, MARGIN_LEFT + 16).unwrap();
                ly += 14;
            }
            writeln!(out, "</g>").unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

fn merge_runs(cells: &[(Interval, Rational)]) -> Vec<(Interval, Rational)> {
    let mut out: Vec<(Interval, Rational)> = Vec::new();
    for (iv, phi) in cells {
        match out.last_mut() {
            Some((span, last)) if last == phi => span.right = iv.right.clone(),
            _ => out.push((iv.clone(), phi.clone())),
        }
    }
    out
}

//! Adams charts: dots at `(s, n)` with `n = t - s`, the connective-cover
//! transform for ko, a line-oriented text format, and ASCII/SVG renderers.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::resolve::ExtTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("connectivity {0} is not allowed: c must be congruent to 0, 1, 2 or 4 mod 8")]
    BadCoverResidue(u32),
    #[error("column n={0} is empty; cannot place the bottom class")]
    EmptyBottomColumn(u32),
    #[error("chart is already the cover with c={have}; cannot take c={want}")]
    CoverMismatch { have: u32, want: u32 },
    #[error("dot ({s}, {n}) would move to negative filtration under shift {shift}")]
    NegativeFiltration { s: u32, n: u32, shift: u32 },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Killed,
    Survivor,
}

/// The outcome of the vanishing criterion at one chart position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HurewiczAnnotation {
    pub status: Status,
    /// For survivors, the extended-power index `p^s` receiving the image.
    pub target_k: Option<u64>,
    pub delta_factored: bool,
    /// For survivors, the stem `n`.
    pub target_degree: Option<u32>,
}

impl HurewiczAnnotation {
    pub fn killed() -> Self {
        HurewiczAnnotation {
            status: Status::Killed,
            target_k: None,
            delta_factored: false,
            target_degree: None,
        }
    }

    pub fn survivor(k: u64, n: u32) -> Self {
        HurewiczAnnotation {
            status: Status::Survivor,
            target_k: Some(k),
            delta_factored: false,
            target_degree: Some(n),
        }
    }

    pub fn is_survivor(&self) -> bool {
        self.status == Status::Survivor
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub mult: u32,
    pub annotation: Option<HurewiczAnnotation>,
}

/// A single F2 summand at `(s, n)`; `index` tells apart summands at the
/// same position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dot {
    pub s: u32,
    pub n: u32,
    pub index: u32,
    pub annotation: Option<HurewiczAnnotation>,
}

/// The rectangle `s <= s_max, t <= t_max` in which the chart is known to
/// be complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub s_max: u32,
    pub t_max: u32,
}

impl Window {
    pub fn contains(&self, s: u32, n: u32) -> bool {
        s <= self.s_max && s + n <= self.t_max
    }

    /// Largest stem whose whole column lies in the window.
    pub fn complete_stem(&self) -> Option<u32> {
        self.t_max.checked_sub(self.s_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chart {
    pub p: u32,
    /// The spectrum is `(c-1)`-connected; 0 for ko itself.
    pub c: u32,
    pub source: Option<String>,
    pub window: Option<Window>,
    /// Keyed by `(s, n)`; multiplicities are positive.
    pub cells: BTreeMap<(u32, u32), Cell>,
}

impl Chart {
    pub fn new(p: u32, c: u32) -> Self {
        Chart {
            p,
            c,
            ..Default::default()
        }
    }

    pub fn add_dots(&mut self, s: u32, n: u32, mult: u32) {
        if mult == 0 {
            return;
        }
        self.cells
            .entry((s, n))
            .or_insert(Cell {
                mult: 0,
                annotation: None,
            })
            .mult += mult;
    }

    pub fn mult(&self, s: u32, n: u32) -> u32 {
        self.cells.get(&(s, n)).map_or(0, |c| c.mult)
    }

    pub fn total(&self) -> u32 {
        self.cells.values().map(|c| c.mult).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dots(&self) -> impl Iterator<Item = Dot> + '_ {
        self.cells.iter().flat_map(|(&(s, n), cell)| {
            (0..cell.mult).map(move |index| Dot {
                s,
                n,
                index,
                annotation: cell.annotation,
            })
        })
    }

    /// Positions `(s, n)` with their multiplicity.
    pub fn positions(&self) -> BTreeMap<(u32, u32), u32> {
        self.cells.iter().map(|(&k, c)| (k, c.mult)).collect()
    }

    /// Keeps only dots with `s <= s_max` and `n <= n_max`.
    pub fn restricted(&self, s_max: u32, n_max: u32) -> Chart {
        let mut out = self.clone();
        out.cells.retain(|&(s, n), _| s <= s_max && n <= n_max);
        if let Some(w) = &mut out.window {
            w.s_max = w.s_max.min(s_max);
            w.t_max = w.t_max.min(s_max + n_max);
        }
        out
    }

    /// Keeps only dots with `s <= s_max` and `t = s + n <= t_max`.
    pub fn within_box(&self, s_max: u32, t_max: u32) -> Chart {
        let mut out = self.clone();
        out.cells.retain(|&(s, n), _| s <= s_max && s + n <= t_max);
        if let Some(w) = &mut out.window {
            w.s_max = w.s_max.min(s_max);
            w.t_max = w.t_max.min(t_max);
        }
        out
    }

    pub fn clear_annotations(&mut self) {
        for cell in self.cells.values_mut() {
            cell.annotation = None;
        }
    }

    /// Serializes to the line format:
    ///
    /// ```text
    /// chart v1 p=2 c=1 smax=7 tmax=20 src=ko-A1
    /// dot s=0 n=1 mult=1 ann=SURVIVOR k=1 delta=1
    /// dot s=1 n=4 mult=1 ann=KILLED
    /// ```
    ///
    /// `smax`/`tmax` (the completeness window), `src`, and `delta=1` are
    /// optional and only written when present.
    pub fn serialize(&self) -> String {
        let mut out = format!("chart v1 p={} c={}", self.p, self.c);
        if let Some(w) = &self.window {
            write!(out, " smax={} tmax={}", w.s_max, w.t_max).unwrap();
        }
        if let Some(src) = &self.source {
            write!(out, " src={src}").unwrap();
        }
        out.push('\n');
        for (&(s, n), cell) in &self.cells {
            write!(out, "dot s={s} n={n} mult={}", cell.mult).unwrap();
            match cell.annotation {
                Some(a) if a.is_survivor() => {
                    write!(out, " ann=SURVIVOR k={}", a.target_k.unwrap_or(0)).unwrap();
                    if a.delta_factored {
                        out.push_str(" delta=1");
                    }
                }
                Some(_) => out.push_str(" ann=KILLED"),
                None => {}
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Chart, ChartError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(ChartError::Parse {
            line: 1,
            reason: "missing `chart v1` header".into(),
        })?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("chart") || tokens.next() != Some("v1") {
            return Err(ChartError::Parse {
                line: 1,
                reason: "header must start with `chart v1`".into(),
            });
        }
        let fields = key_values(1, tokens)?;
        let mut chart = Chart::new(0, 0);
        let (mut p, mut c, mut smax, mut tmax) = (None, None, None, None);
        for (key, value) in fields {
            match key {
                "p" => p = Some(number(1, key, value)?),
                "c" => c = Some(number(1, key, value)?),
                "smax" => smax = Some(number(1, key, value)?),
                "tmax" => tmax = Some(number(1, key, value)?),
                "src" => chart.source = Some(value.to_string()),
                other => return Err(parse_err(1, format!("unknown key `{other}`"))),
            }
        }
        chart.p = p.ok_or_else(|| parse_err(1, "missing key `p`".into()))?;
        chart.c = c.ok_or_else(|| parse_err(1, "missing key `c`".into()))?;
        chart.window = match (smax, tmax) {
            (Some(s_max), Some(t_max)) => Some(Window { s_max, t_max }),
            (None, None) => None,
            _ => return Err(parse_err(1, "`smax` and `tmax` must appear together".into())),
        };

        for (k, line) in lines {
            let line_no = k + 1;
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("dot") => {}
                Some(other) => return Err(parse_err(line_no, format!("unknown record `{other}`"))),
                None => continue,
            }
            let (mut s, mut n, mut mult) = (None, None, None);
            let (mut ann, mut k_val, mut delta) = (None, None, false);
            for (key, value) in key_values(line_no, tokens)? {
                match key {
                    "s" => s = Some(number(line_no, key, value)?),
                    "n" => n = Some(number(line_no, key, value)?),
                    "mult" => mult = Some(number(line_no, key, value)?),
                    "ann" => {
                        ann = Some(match value {
                            "SURVIVOR" => Status::Survivor,
                            "KILLED" => Status::Killed,
                            other => return Err(parse_err(line_no, format!("unknown annotation `{other}`"))),
                        })
                    }
                    "k" => {
                        k_val = Some(
                            value
                                .parse::<u64>()
                                .map_err(|_| parse_err(line_no, format!("key `k` needs an integer, got `{value}`")))?,
                        )
                    }
                    "delta" => {
                        delta = match value {
                            "0" => false,
                            "1" => true,
                            _ => return Err(parse_err(line_no, "key `delta` must be 0 or 1".into())),
                        }
                    }
                    other => return Err(parse_err(line_no, format!("unknown key `{other}`"))),
                }
            }
            let missing = |key: &str| parse_err(line_no, format!("missing key `{key}`"));
            let (s, n, mult) = (
                s.ok_or_else(|| missing("s"))?,
                n.ok_or_else(|| missing("n"))?,
                mult.ok_or_else(|| missing("mult"))?,
            );
            if mult == 0 {
                return Err(parse_err(line_no, "multiplicity must be positive".into()));
            }
            if chart.cells.contains_key(&(s, n)) {
                return Err(parse_err(line_no, format!("duplicate dot at s={s} n={n}")));
            }
            let annotation = match ann {
                None => {
                    if k_val.is_some() || delta {
                        return Err(parse_err(line_no, "`k`/`delta` without `ann`".into()));
                    }
                    None
                }
                Some(Status::Killed) => {
                    if k_val.is_some() || delta {
                        return Err(parse_err(line_no, "KILLED dots carry no target".into()));
                    }
                    Some(HurewiczAnnotation::killed())
                }
                Some(Status::Survivor) => {
                    let k = k_val.ok_or_else(|| missing("k"))?;
                    let mut a = HurewiczAnnotation::survivor(k, n);
                    a.delta_factored = delta;
                    Some(a)
                }
            };
            chart.cells.insert((s, n), Cell { mult, annotation });
        }
        Ok(chart)
    }
}

fn parse_err(line: usize, reason: String) -> ChartError {
    ChartError::Parse { line, reason }
}

fn key_values<'a>(line: usize, tokens: impl Iterator<Item = &'a str>) -> Result<Vec<(&'a str, &'a str)>, ChartError> {
    tokens
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key=value, got `{tok}`")))
        })
        .collect()
}

fn number(line: usize, key: &str, value: &str) -> Result<u32, ChartError> {
    value
        .parse()
        .map_err(|_| parse_err(line, format!("key `{key}` needs a nonnegative integer, got `{value}`")))
}

/// Converts Ext dimensions to a chart of the (connective) spectrum whose
/// cohomology was resolved.
pub fn chart_from_ext(e: &ExtTable) -> Chart {
    let mut chart = Chart::new(2, 0);
    for (&(s, t), &d) in &e.dims {
        chart.add_dots(s, t - s, d);
    }
    chart.window = Some(Window {
        s_max: e.s_max,
        t_max: e.t_max,
    });
    chart
}

/// Whether the ko cover chart shape is known for this `c`.
pub fn cover_residue_allowed(c: u32) -> bool {
    matches!(c % 8, 0 | 1 | 2 | 4)
}

/// The chart of `ko<c>` from the chart of ko (or of a lower cover): drop
/// stems below `c`, then lower every filtration by the smallest filtration
/// in column `c` so that the bottom class sits at `s = 0`.
pub fn connective_cover_chart(chart: &Chart, c: u32) -> Result<Chart, ChartError> {
    if c == 0 || !cover_residue_allowed(c) {
        return Err(ChartError::BadCoverResidue(c));
    }
    if chart.c > c {
        return Err(ChartError::CoverMismatch { have: chart.c, want: c });
    }
    let shift = chart
        .cells
        .keys()
        .filter(|(_, n)| *n == c)
        .map(|(s, _)| *s)
        .min()
        .ok_or(ChartError::EmptyBottomColumn(c))?;
    let mut out = Chart {
        p: chart.p,
        c,
        source: chart.source.clone(),
        window: chart.window.map(|w| Window {
            s_max: w.s_max.saturating_sub(shift),
            t_max: w.t_max.saturating_sub(shift),
        }),
        cells: BTreeMap::new(),
    };
    for (&(s, n), cell) in chart.cells.iter().filter(|((_, n), _)| *n >= c) {
        let new_s = s
            .checked_sub(shift)
            .ok_or(ChartError::NegativeFiltration { s, n, shift })?;
        out.cells.insert((new_s, n), *cell);
    }
    Ok(out)
}

/// Monospace grid: rows `s` descending, columns `n` ascending. `.` is
/// empty, a digit is a multiplicity up to 9, `*` is more, and `o` marks a
/// survivor of the vanishing criterion.
pub fn render_ascii(chart: &Chart) -> String {
    let mut out = format!("chart p={} c={}\n", chart.p, chart.c);
    if chart.cells.is_empty() {
        return out;
    }
    let s_top = chart.cells.keys().map(|(s, _)| *s).max().unwrap_or(0);
    let n_top = chart.cells.keys().map(|(_, n)| *n).max().unwrap_or(0);
    for s in (0..=s_top).rev() {
        write!(out, "{s:>3} |").unwrap();
        for n in 0..=n_top {
            let symbol = match chart.cells.get(&(s, n)) {
                None => ".".to_string(),
                Some(cell) if cell.annotation.is_some_and(|a| a.is_survivor()) => "o".to_string(),
                Some(cell) if cell.mult <= 9 => cell.mult.to_string(),
                Some(_) => "*".to_string(),
            };
            write!(out, "{symbol:>3}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "    +{}", "-".repeat(3 * (n_top as usize + 1))).unwrap();
    out.push_str("     ");
    for n in 0..=n_top {
        write!(out, "{n:>3}").unwrap();
    }
    out.push_str("   t-s\n");
    out
}

const CELL: f64 = 30.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 4.0;
const SPREAD: f64 = 9.0;

/// SVG rendering: one circle per dot, hollow for survivors, side-by-side
/// circles for multiplicities above one. Coordinates carry one decimal.
pub fn render_svg(chart: &Chart) -> String {
    let s_top = chart.cells.keys().map(|(s, _)| *s).max().unwrap_or(0);
    let n_top = chart.cells.keys().map(|(_, n)| *n).max().unwrap_or(0);
    let width = 2.0 * MARGIN + CELL * (n_top as f64 + 1.0);
    let height = 2.0 * MARGIN + CELL * (s_top as f64 + 1.0);
    let x = |n: f64| MARGIN + CELL * (n + 0.5);
    let y = |s: f64| height - MARGIN - CELL * (s + 0.5);
    let origin_y = height - MARGIN;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0.0" y="0.0" width="{width:.1}" height="{height:.1}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{MARGIN:.1}" y1="{origin_y:.1}" x2="{:.1}" y2="{origin_y:.1}" stroke="black"/>"#,
        width - MARGIN / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{MARGIN:.1}" y1="{origin_y:.1}" x2="{MARGIN:.1}" y2="{:.1}" stroke="black"/>"#,
        MARGIN / 2.0
    )
    .unwrap();
    for n in 0..=n_top {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{n}</text>"#,
            x(n as f64),
            origin_y + 14.0
        )
        .unwrap();
    }
    for s in 0..=s_top {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{s}</text>"#,
            MARGIN - 6.0,
            y(s as f64) + 3.5
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">t−s</text>"#,
        width / 2.0,
        height - 8.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">s</text>"#,
        12.0,
        height / 2.0
    )
    .unwrap();
    for (&(s, n), cell) in &chart.cells {
        let survivor = cell.annotation.is_some_and(|a| a.is_survivor());
        let style = if survivor {
            r#"fill="none" stroke="black""#
        } else {
            r#"fill="black""#
        };
        for k in 0..cell.mult {
            let offset = (k as f64 - (cell.mult as f64 - 1.0) / 2.0) * SPREAD;
            writeln!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="{RADIUS:.1}" {style}/>"#,
                x(n as f64) + offset,
                y(s as f64)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

//! The Adams-filtration vanishing criterion for the space-level Hurewicz map
//! and the bookkeeping of where surviving classes can land.
//!
//! For a `(c-1)`-connected spectrum localized at `p`, a class of Adams
//! filtration `s` in stem `n < c p^s` has zero Hurewicz image. Classes on or
//! above the curve are *survivors*: the criterion permits them to be
//! nonzero, and their image can first appear at Goodwillie stage `p^s`,
//! through the extended power `D_{p^s}`. Whether a survivor is actually
//! nonzero is not decided here.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

use thiserror::Error;

use crate::chart::{chart_from_ext, connective_cover_chart, Chart, ChartError, Dot, HurewiczAnnotation};
use crate::fpmodule::Preset;
use crate::resolve::ext_dims;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurewiczError {
    #[error("chart has a dot at stem {n} below the connectivity c={c}")]
    Connectivity { n: u32, c: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("c must be at least 1")]
    ZeroConnectivity,
    #[error("stage index d must be at least 2, got {0}")]
    BadStageBase(u64),
    #[error("dot ({s}, {n}) is not a survivor")]
    NotSurvivor { s: u32, n: u32 },
    #[error(transparent)]
    Chart(#[from] ChartError),
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `c * p^s`, saturating.
fn threshold(c: u32, p: u32, s: u32) -> u64 {
    (p as u64)
        .checked_pow(s)
        .and_then(|ps| ps.checked_mul(c as u64))
        .unwrap_or(u64::MAX)
}

/// Marks every dot KILLED when `n < c p^s` and SURVIVOR (with target `p^s`)
/// otherwise. Dots are never added or removed.
pub fn apply_criterion(chart: &Chart, c: u32, p: u32) -> Result<Chart, HurewiczError> {
    if c == 0 {
        return Err(HurewiczError::ZeroConnectivity);
    }
    if !is_prime(p) {
        return Err(HurewiczError::NotPrime(p));
    }
    if let Some(&(_, n)) = chart.cells.keys().find(|(_, n)| *n < c) {
        return Err(HurewiczError::Connectivity { n, c });
    }
    let mut out = chart.clone();
    for (&(s, n), cell) in out.cells.iter_mut() {
        cell.annotation = Some(if (n as u64) < threshold(c, p, s) {
            HurewiczAnnotation::killed()
        } else {
            HurewiczAnnotation::survivor((p as u64).pow(s), n)
        });
    }
    Ok(out)
}

/// Records on every survivor whether its image factors through the
/// suspension map `Delta`, which for a 0-connected spectrum pins the image
/// to the single summand `D_{p^s}`. With `zero_connected = false` the flag
/// is cleared and only the weaker statement (some summand `D_k`,
/// `p^s <= k < p^{s+1}`) applies.
pub fn annotate_delta(chart: &Chart, zero_connected: bool) -> Chart {
    let mut out = chart.clone();
    for cell in out.cells.values_mut() {
        if let Some(a) = &mut cell.annotation {
            if a.is_survivor() {
                a.delta_factored = zero_connected;
            }
        }
    }
    out
}

/// The first Goodwillie stage `d^s` through which a survivor's image can
/// appear; the composite to every earlier stage vanishes.
pub fn stage_annotation(dot: &Dot, d: u64) -> Result<u64, HurewiczError> {
    if d < 2 {
        return Err(HurewiczError::BadStageBase(d));
    }
    match dot.annotation {
        Some(a) if a.is_survivor() => d.checked_pow(dot.s).ok_or(HurewiczError::BadStageBase(d)),
        _ => Err(HurewiczError::NotSurvivor { s: dot.s, n: dot.n }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurewiczReport {
    pub chart_id: String,
    pub c: u32,
    pub p: u32,
    pub survivors: Vec<Dot>,
    pub nonzero_degrees: BTreeSet<u32>,
}

impl HurewiczReport {
    /// Collects the survivors of an annotated chart.
    pub fn from_chart(chart: &Chart, chart_id: impl Into<String>, c: u32, p: u32) -> Self {
        let survivors: Vec<Dot> = chart
            .dots()
            .filter(|d| d.annotation.is_some_and(|a| a.is_survivor()))
            .collect();
        let nonzero_degrees = survivors.iter().map(|d| d.n).collect();
        HurewiczReport {
            chart_id: chart_id.into(),
            c,
            p,
            survivors,
            nonzero_degrees,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("report c={} p={}\n", self.c, self.p);
        for d in &self.survivors {
            let a = d.annotation.expect("survivors are annotated");
            writeln!(
                out,
                "survivor s={} n={} k={} delta={}",
                d.s,
                d.n,
                a.target_k.unwrap_or(0),
                u8::from(a.delta_factored)
            )
            .unwrap();
        }
        let degrees: Vec<String> = self.nonzero_degrees.iter().map(ToString::to_string).collect();
        writeln!(out, "nonzero-degrees: {}", degrees.join(",")).unwrap();
        out
    }
}

/// Result of the ko-cover pipeline with its intermediate charts.
#[derive(Clone, Debug)]
pub struct CoverRun {
    pub ko_chart: Chart,
    pub cover_chart: Chart,
    pub annotated: Chart,
    pub report: HurewiczReport,
}

/// The chart of ko, computed as Ext over A(1) of F2, on the box
/// `s <= s_max, t <= t_max`.
pub fn ko_chart(s_max: u32, t_max: u32) -> Chart {
    let module = Arc::new(Preset::KoA1.build(t_max));
    let mut chart = chart_from_ext(&ext_dims(module, s_max, t_max));
    chart.source = Some(Preset::KoA1.name().to_string());
    chart
}

/// ko -> ko<c> -> criterion at p = 2 -> Delta flags, reporting the chart of
/// `ko<c>` on the box `s <= s_max, t <= t_max`.
///
/// The filtration shift of the cover is at most `c`, so ko is resolved on
/// the box enlarged by `c` in both directions and trimmed afterwards.
pub fn bo_cover_run(c: u32, s_max: u32, t_max: u32) -> Result<CoverRun, HurewiczError> {
    if c == 0 {
        return Err(HurewiczError::ZeroConnectivity);
    }
    let ko = ko_chart(s_max + c, t_max + c);
    let cover = connective_cover_chart(&ko, c)?.within_box(s_max, t_max);
    let annotated = annotate_delta(&apply_criterion(&cover, c, 2)?, true);
    let report = HurewiczReport::from_chart(&annotated, format!("ko<{c}>"), c, 2);
    Ok(CoverRun {
        ko_chart: ko,
        cover_chart: cover,
        annotated,
        report,
    })
}

pub fn bo_cover_workflow(c: u32, s_max: u32, t_max: u32) -> Result<HurewiczReport, HurewiczError> {
    Ok(bo_cover_run(c, s_max, t_max)?.report)
}

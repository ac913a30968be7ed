//! CSV output. Every file has a header row and LF line endings; lengths
//! carry six significant digits and absent or non-finite values are empty
//! fields.

use std::io::{self, Write};

use crate::experiment::{StatsReport, SweepRow, SynthStudy};
use crate::metrics::{CdfPoint, ComponentReport, PathLengthStats};
use crate::synth::{RewireMode, SmallWorldPoint};

/// `x` to six significant digits; empty when not finite.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

fn sources_field(sources: usize, sampled: bool) -> String {
    if sampled {
        sources.to_string()
    } else {
        "all".to_string()
    }
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> io::Result<()> {
    w.flush()
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub const SWEEP_HEADER: [&str; 13] = [
    "w",
    "components",
    "giant_people",
    "giant_movies",
    "isolated_people",
    "shattered",
    "l_pp_measured",
    "l_r_measured",
    "l_pm_measured",
    "l_pp_predicted",
    "l_r_predicted",
    "l_pm_predicted",
    "sampled_sources",
];

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.w.to_string(),
            r.components.to_string(),
            r.giant_people.to_string(),
            r.giant_movies.to_string(),
            r.isolated_people.to_string(),
            r.shattered.to_string(),
            opt(r.l_pp_measured),
            opt(r.l_r_measured),
            opt(r.l_pm_measured),
            opt(r.l_pp_predicted),
            opt(r.l_r_predicted),
            opt(r.l_pm_predicted),
            sources_field(r.sources, r.sampled),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_components_csv<W: Write>(report: &ComponentReport, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(["component_index", "people", "movies"])
        .map_err(csv_err)?;
    for (i, c) in report.components.iter().enumerate() {
        w.write_record([i.to_string(), c.people.to_string(), c.movies.to_string()])
            .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_path_stats_csv<W: Write>(stats: &PathLengthStats, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(["l_pp", "l_r", "l_pm", "c_pp", "c_pm", "sampled_sources"])
        .map_err(csv_err)?;
    w.write_record([
        opt(stats.l_pp),
        opt(stats.l_r),
        opt(stats.l_pm),
        stats.c_pp.to_string(),
        stats.c_pm.to_string(),
        sources_field(stats.sources, stats.sampled),
    ])
    .map_err(csv_err)?;
    finish(w)
}

/// Complementary cumulative degree counts for several hammock widths.
pub fn write_cdf_csv<W: Write>(curves: &[(u32, Vec<CdfPoint>)], log_scale: bool, out: W) -> io::Result<()> {
    let mut w = writer(out);
    let value = if log_scale { "log10_count" } else { "count" };
    w.write_record(["w", "degree", value]).map_err(csv_err)?;
    for (width, points) in curves {
        for p in points {
            let v = if log_scale {
                sig6(p.value)
            } else {
                (p.value as u64).to_string()
            };
            w.write_record([width.to_string(), p.degree.to_string(), v])
                .map_err(csv_err)?;
        }
    }
    finish(w)
}

pub fn write_ws_csv<W: Write>(points: &[SmallWorldPoint], mode: RewireMode, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(["p", "L_ratio", "C_ratio", "mode"]).map_err(csv_err)?;
    for p in points {
        w.write_record([sig6(p.p), sig6(p.l_ratio), sig6(p.c_ratio), mode.to_string()])
            .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_synth_rows_csv<W: Write>(study: &SynthStudy, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record([
        "kappa",
        "epsilon",
        "w",
        "trials",
        "components",
        "giant_people",
        "giant_movies",
        "l_pp_measured",
        "l_pp_predicted",
        "l_r_measured",
        "l_r_predicted",
    ])
    .map_err(csv_err)?;
    for r in &study.rows {
        w.write_record([
            r.kappa.to_string(),
            sig6(r.epsilon),
            r.w.to_string(),
            r.trials.to_string(),
            sig6(r.components),
            sig6(r.giant_people),
            sig6(r.giant_movies),
            opt(r.l_pp_measured),
            opt(r.l_pp_predicted),
            opt(r.l_r_measured),
            opt(r.l_r_predicted),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_synth_summary_csv<W: Write>(study: &SynthStudy, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(["kappa", "epsilon", "linf", "warning"])
        .map_err(csv_err)?;
    for s in &study.summaries {
        w.write_record([
            s.kappa.to_string(),
            opt(s.epsilon),
            opt(s.linf),
            s.warning.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_stats_csv<W: Write>(s: &StatsReport, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record([
        "n_people",
        "n_movies",
        "edges",
        "sparsity",
        "connected",
        "min_person_degree",
        "duplicate_ratings",
        "alpha",
        "tau",
    ])
    .map_err(csv_err)?;
    w.write_record([
        s.n_people.to_string(),
        s.n_movies.to_string(),
        s.edges.to_string(),
        sig6(s.sparsity),
        s.connected.to_string(),
        s.min_person_degree.to_string(),
        s.duplicate_ratings.to_string(),
        opt(s.buff_fit.map(|f| f.alpha)),
        opt(s.buff_fit.map(|f| f.tau)),
    ])
    .map_err(csv_err)?;
    finish(w)
}

/// Top buff and hit degrees side by side, one row per rank.
pub fn write_top_degrees_csv<W: Write>(s: &StatsReport, out: W) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(["rank", "buff_degree", "hit_degree"]).map_err(csv_err)?;
    let n = s.top_buff_degrees.len().max(s.top_hit_degrees.len());
    for i in 0..n {
        let cell = |v: &[usize]| v.get(i).map(|d| d.to_string()).unwrap_or_default();
        w.write_record([(i + 1).to_string(), cell(&s.top_buff_degrees), cell(&s.top_hit_degrees)])
            .map_err(csv_err)?;
    }
    finish(w)
}

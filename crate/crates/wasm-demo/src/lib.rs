//! Browser bindings. Each exported function takes plain numbers or text
//! and returns a JSON string; the `*_json` functions behind them are plain
//! Rust so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use hammock_core::dataset::{parse_ratings, BipartiteRatings, Format};
use hammock_core::experiment::{dataset_stats, sweep, SweepRow, WidthRange};
use hammock_core::metrics::SourcePolicy;
use hammock_core::synth::{
    calibrate_epsilon, generate_power_law_bipartite, small_world_curve, RewireMode, SynthConfig, WreathConfig,
};

#[derive(Serialize)]
struct CurvePoint {
    p: f64,
    l_ratio: f64,
    c_ratio: f64,
}

#[derive(Serialize)]
struct Row {
    w: u32,
    components: usize,
    giant_people: usize,
    giant_movies: usize,
    isolated_people: usize,
    l_pp_measured: Option<f64>,
    l_pp_predicted: Option<f64>,
    l_r_measured: Option<f64>,
    l_r_predicted: Option<f64>,
}

impl From<&SweepRow> for Row {
    fn from(r: &SweepRow) -> Self {
        Row {
            w: r.w,
            components: r.components,
            giant_people: r.giant_people,
            giant_movies: r.giant_movies,
            isolated_people: r.isolated_people,
            l_pp_measured: r.l_pp_measured,
            l_pp_predicted: r.l_pp_predicted,
            l_r_measured: r.l_r_measured,
            l_r_predicted: r.l_r_predicted,
        }
    }
}

#[derive(Serialize)]
struct SweepResult {
    n_people: usize,
    n_movies: usize,
    edges: usize,
    sparsity: f64,
    connected: bool,
    min_person_degree: usize,
    epsilon: Option<f64>,
    rows: Vec<Row>,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn sweep_result(g: &BipartiteRatings, w_min: u32, w_max: u32, epsilon: Option<f64>) -> Result<SweepResult, String> {
    let widths = WidthRange::new(w_min, w_max).map_err(|e| e.to_string())?;
    let stats = dataset_stats(g).map_err(|e| e.to_string())?;
    let rows = sweep(g, widths, &SourcePolicy::default()).map_err(|e| e.to_string())?;
    Ok(SweepResult {
        n_people: stats.n_people,
        n_movies: stats.n_movies,
        edges: stats.edges,
        sparsity: stats.sparsity,
        connected: stats.connected,
        min_person_degree: stats.min_person_degree,
        epsilon,
        rows: rows.iter().map(Row::from).collect(),
    })
}

/// Scaled length and clustering of a rewired ring lattice.
pub fn small_world_json(
    n: usize,
    k: usize,
    p_values: &[f64],
    trials: usize,
    preferential: bool,
    seed: u64,
) -> Result<String, String> {
    let cfg = WreathConfig {
        n,
        k,
        p: 0.0,
        mode: if preferential {
            RewireMode::Preferential
        } else {
            RewireMode::Uniform
        },
        seed,
    };
    let pts = small_world_curve(&cfg, p_values, trials, &SourcePolicy::default()).map_err(|e| e.to_string())?;
    let out: Vec<CurvePoint> = pts
        .iter()
        .map(|p| CurvePoint {
            p: p.p,
            l_ratio: p.l_ratio,
            c_ratio: p.c_ratio,
        })
        .collect();
    to_json(&out)
}

/// Generates a power-law dataset whose least active person rates `kappa`
/// movies, then sweeps hammock widths over it.
pub fn synthetic_sweep_json(
    n_people: usize,
    n_movies: usize,
    kappa: usize,
    w_max: u32,
    seed: u64,
) -> Result<String, String> {
    let epsilon = calibrate_epsilon(kappa, n_people, n_movies).map_err(|e| e.to_string())?;
    let cfg = SynthConfig {
        n_people,
        n_movies,
        epsilon,
        seed,
        ..SynthConfig::default()
    };
    let data = generate_power_law_bipartite(&cfg).map_err(|e| e.to_string())?;
    to_json(&sweep_result(&data.ratings, 1, w_max, Some(epsilon))?)
}

/// Sweeps hammock widths over pasted or uploaded rating text.
pub fn dataset_sweep_json(text: &str, csv: bool, w_min: u32, w_max: u32) -> Result<String, String> {
    let format = if csv { Format::GenericCsv } else { Format::MovieLensTab };
    let g = parse_ratings(text.as_bytes(), format).map_err(|e| e.to_string())?;
    to_json(&sweep_result(&g, w_min, w_max, None)?)
}

#[wasm_bindgen(js_name = smallWorld)]
pub fn small_world(
    n: usize,
    k: usize,
    p_values: Vec<f64>,
    trials: usize,
    preferential: bool,
    seed: u32,
) -> Result<String, JsError> {
    small_world_json(n, k, &p_values, trials, preferential, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = syntheticSweep)]
pub fn synthetic_sweep(
    n_people: usize,
    n_movies: usize,
    kappa: usize,
    w_max: u32,
    seed: u32,
) -> Result<String, JsError> {
    synthetic_sweep_json(n_people, n_movies, kappa, w_max, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = datasetSweep)]
pub fn dataset_sweep(text: &str, csv: bool, w_min: u32, w_max: u32) -> Result<String, JsError> {
    dataset_sweep_json(text, csv, w_min, w_max).map_err(|e| JsError::new(&e))
}

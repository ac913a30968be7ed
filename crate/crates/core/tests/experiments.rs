//! End-to-end runs of the experiment drivers on small and generated inputs.

use hammock_core::dataset::{BipartiteRatings, RatingTriple};
use hammock_core::experiment::{sweep, synth_study, synth_trial, SynthStudyConfig, WidthRange};
use hammock_core::metrics::SourcePolicy;
use hammock_core::report::{write_sweep_csv, write_synth_rows_csv, write_synth_summary_csv, write_ws_csv};
use hammock_core::synth::{calibrate_epsilon, small_world_curve, RewireMode, WreathConfig};

fn ratings(pairs: &[(u64, u64)]) -> BipartiteRatings {
    BipartiteRatings::from_triples(pairs.iter().map(|&(p, m)| RatingTriple::new(p, m))).unwrap()
}

#[test]
fn toy_two_person_sweep() {
    let g = ratings(&[(1, 1), (2, 1), (2, 2)]);
    let rows = sweep(&g, WidthRange::new(1, 2).unwrap(), &SourcePolicy::default()).unwrap();
    let components: Vec<usize> = rows.iter().map(|r| r.components).collect();
    assert_eq!(components, [1, 2]);
    assert_eq!(rows[0].giant_people, 2);
    assert_eq!(rows[0].l_pp_measured, Some(1.0));
    assert_eq!(rows[1].giant_people, 1);
    assert_eq!(rows[1].l_pp_measured, None);
}

#[test]
fn sweep_rows_follow_width_range() {
    let g = ratings(&[(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]);
    let rows = sweep(&g, WidthRange::new(2, 6).unwrap(), &SourcePolicy::default()).unwrap();
    let ws: Vec<u32> = rows.iter().map(|r| r.w).collect();
    assert_eq!(ws, [2, 3, 4, 5, 6]);
}

#[test]
fn sweep_csv_has_no_nan() {
    let g = ratings(&[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]);
    let rows = sweep(&g, WidthRange::new(1, 4).unwrap(), &SourcePolicy::default()).unwrap();
    let mut out = Vec::new();
    write_sweep_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(!text.contains("NaN") && !text.contains("inf"));
}

#[test]
fn thin_giant_component_overshoots_prediction() {
    let cfg = SynthStudyConfig {
        widths: WidthRange::new(25, 25).unwrap(),
        ..SynthStudyConfig::default()
    };
    let epsilon = calibrate_epsilon(1, cfg.base.n_people, cfg.base.n_movies).unwrap();
    let mut thin = 0;
    for trial in 0..cfg.trials {
        let row = &synth_trial(&cfg, 1, epsilon, trial).unwrap()[0];
        if row.giant_people >= 10 {
            continue;
        }
        if let (Some(predicted), Some(measured)) = (row.l_r_predicted, row.l_r_measured) {
            thin += 1;
            assert!(
                predicted > measured + 1.5,
                "trial {trial}: {} people, predicted {predicted}, measured {measured}",
                row.giant_people
            );
        }
    }
    assert!(thin > 0, "no trial produced a giant component under 10 people");
}

#[test]
fn synth_study_is_byte_deterministic() {
    let cfg = SynthStudyConfig {
        kappa_min: 1,
        kappa_max: 2,
        widths: WidthRange::new(1, 4).unwrap(),
        trials: 1,
        seed: 7,
        ..SynthStudyConfig::default()
    };
    let render = || {
        let study = synth_study(&cfg).unwrap();
        let mut rows = Vec::new();
        let mut summary = Vec::new();
        write_synth_rows_csv(&study, &mut rows).unwrap();
        write_synth_summary_csv(&study, &mut summary).unwrap();
        (rows, summary)
    };
    assert_eq!(render(), render());
}

#[test]
fn unrewired_point_is_unity() {
    let cfg = WreathConfig {
        n: 60,
        k: 4,
        p: 0.0,
        mode: RewireMode::Uniform,
        seed: 0,
    };
    let pts = small_world_curve(&cfg, &[0.0], 3, &SourcePolicy::default()).unwrap();
    let mut out = Vec::new();
    write_ws_csv(&pts, cfg.mode, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().nth(1), Some("0,1.00000,1.00000,uniform"));
}

fn wreath(mode: RewireMode) -> WreathConfig {
    WreathConfig {
        n: 1000,
        k: 10,
        p: 0.0,
        mode,
        seed: 3,
    }
}

#[test]
fn length_collapses_before_clustering() {
    let ps: Vec<f64> = (0..=12).map(|i| 10f64.powf(-4.0 + i as f64 / 3.0)).collect();
    let pts = small_world_curve(&wreath(RewireMode::Uniform), &ps, 3, &SourcePolicy::default()).unwrap();
    let l_knee = pts.iter().position(|p| p.l_ratio < 0.5).unwrap();
    let c_knee = pts.iter().position(|p| p.c_ratio < 0.8).unwrap();
    assert!(
        l_knee < c_knee,
        "L knee at p = {}, C knee at p = {}",
        ps[l_knee],
        ps[c_knee]
    );
}

#[test]
fn preferential_rewiring_shortens_paths() {
    let policy = SourcePolicy::default();
    let uniform = small_world_curve(&wreath(RewireMode::Uniform), &[1.0], 20, &policy).unwrap();
    let preferential = small_world_curve(&wreath(RewireMode::Preferential), &[1.0], 20, &policy).unwrap();
    assert!(
        preferential[0].l_ratio < uniform[0].l_ratio,
        "preferential {} vs uniform {}",
        preferential[0].l_ratio,
        uniform[0].l_ratio
    );
}

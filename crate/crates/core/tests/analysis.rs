mod common;

use common::fixture_matrix;
use ndarray::Array2;
use racah::analysis::{
    bench, max_size_search, moments_2d, nmse, orthogonality_error, psnr, reconstruct_2d,
    restriction_from_matrix, restriction_study, ImageGrid, ParamRule, PsnrLog, SearchConfig,
    TrialStatus,
};
use racah::baselines::{generate, Algorithm, AlgorithmId};
use racah::imst::{generate as imst_generate, ImStConfig};
use racah::oracle::exact_matrix;
use racah::{PolyMatrix, RacahError, RacahParams};

/// Deterministic pixels in `0..=255`.
fn pseudo_image(rows: usize, cols: usize, seed: u64) -> ImageGrid {
    let mut state = seed;
    let data: Vec<u8> = (0..rows * cols)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 56) as u8
        })
        .collect();
    ImageGrid::from_u8(rows, cols, &data).unwrap()
}

#[test]
fn orthogonality_error_of_references() {
    let m = fixture_matrix("oracle_a4_b20_al2_be1.csv");
    assert!(orthogonality_error(&m) <= 1e-12);
    let p = RacahParams::with_size(0.0, 64, 0.0, 0.0).unwrap();
    assert!(orthogonality_error(&generate(AlgorithmId::ZhuN, &p, 63).unwrap()) > 1e-3);
}

#[test]
fn moments_of_a_basis_image() {
    let px = RacahParams::with_size(2.0, 12, 1.0, 0.0).unwrap();
    let py = RacahParams::with_size(1.0, 10, 3.0, 2.0).unwrap();
    let rx = exact_matrix(&px).unwrap();
    let ry = exact_matrix(&py).unwrap();
    let (n0, m0) = (4, 7);
    let f = Array2::from_shape_fn((12, 10), |(i, j)| rx.get(n0, i) * ry.get(m0, j));
    let mom = moments_2d(&ImageGrid::new(f).unwrap(), &rx, &ry).unwrap();
    for ((n, m), v) in mom.coeffs.indexed_iter() {
        let want = if (n, m) == (n0, m0) { 1.0 } else { 0.0 };
        assert!((v - want).abs() <= 1e-13);
    }
    let zero = moments_2d(&ImageGrid::new(Array2::zeros((12, 10))).unwrap(), &rx, &ry).unwrap();
    assert!(zero.coeffs.iter().all(|v| *v == 0.0));
}

#[test]
fn round_trip_with_oracle_matrices() {
    let p = RacahParams::with_size(3.0, 32, 2.0, 1.0).unwrap();
    let r = exact_matrix(&p).unwrap();
    let img = pseudo_image(32, 32, 7);
    let mom = moments_2d(&img, &r, &r).unwrap();
    let back = reconstruct_2d(&mom, &r, &r, 32).unwrap();
    assert!(nmse(&img, &back).unwrap() <= 1e-12);
    let mut last = f64::INFINITY;
    for cap in 0..=32 {
        let e = nmse(&img, &reconstruct_2d(&mom, &r, &r, cap).unwrap()).unwrap();
        assert!(e <= last + 1e-15, "cap {cap}");
        last = e;
    }
    let empty = reconstruct_2d(&mom, &r, &r, 0).unwrap();
    assert_eq!(nmse(&img, &empty).unwrap(), 1.0);
}

#[test]
fn round_trip_error_tracks_orthogonality() {
    let img = pseudo_image(48, 48, 11);
    for id in [AlgorithmId::Imst, AlgorithmId::Daoui, AlgorithmId::ZhuN] {
        let p = RacahParams::with_size(4.0, 48, 2.0, 1.0).unwrap();
        let r = generate(id, &p, 47).unwrap();
        let e = orthogonality_error(&r);
        if e > 1e-6 {
            continue;
        }
        let back = reconstruct_2d(&moments_2d(&img, &r, &r).unwrap(), &r, &r, 48).unwrap();
        assert!(nmse(&img, &back).unwrap() <= 100.0 * e * e + 1e-28, "{id}");
    }
}

#[test]
fn size_mismatches_are_reported() {
    let r = exact_matrix(&RacahParams::with_size(0.0, 8, 0.0, 0.0).unwrap()).unwrap();
    let img = pseudo_image(8, 9, 1);
    assert!(matches!(
        moments_2d(&img, &r, &r),
        Err(RacahError::DimensionMismatch(_))
    ));
    let img = pseudo_image(8, 8, 1);
    let mom = moments_2d(&img, &r, &r).unwrap();
    assert!(matches!(
        reconstruct_2d(&mom, &r, &r, 9),
        Err(RacahError::DimensionMismatch(_))
    ));
    assert!(nmse(&img, &pseudo_image(4, 4, 1)).is_err());
}

#[test]
fn psnr_natural_log_variant() {
    let i = pseudo_image(8, 8, 3);
    let mut shifted = i.pixels().clone();
    shifted[[0, 0]] += 3.0;
    let r = ImageGrid::new(shifted).unwrap();
    let d10 = psnr(&i, &r, PsnrLog::Base10).unwrap();
    let dln = psnr(&i, &r, PsnrLog::Natural).unwrap();
    assert!((dln - d10 * std::f64::consts::LN_10).abs() <= 1e-9);
}

#[test]
fn restriction_trace_and_tail() {
    let p = RacahParams::with_size(5.0, 24, 5.0, 0.0).unwrap();
    let (m, _) = imst_generate(&p, &ImStConfig::default()).unwrap();
    let e = orthogonality_error(&m);
    let st = restriction_from_matrix(&m, 0.9).unwrap();
    let total: f64 = st.sigma2.iter().sum();
    assert!((total - 24.0).abs() <= 24.0 * e.max(1e-14) * 10.0);
    assert_eq!(st.j[0], 1.0);
    assert!(st.sigma2.iter().all(|v| *v >= 0.0));
    assert!(st.j.windows(2).all(|w| w[1] <= w[0]));
    let csv = st.to_csv();
    assert!(csv.starts_with("l,sigma2,J\n"));
    assert_eq!(csv.lines().count(), 25);
    assert!(restriction_from_matrix(&m, 1.0).is_err());
}

#[test]
fn restriction_study_first_cell() {
    let p = RacahParams::with_size(0.0, 16, 0.0, 0.0).unwrap();
    let st = restriction_study(&p, 0.9).unwrap();
    assert!((st.sigma2[0] - 9.159).abs() <= 1e-3);
}

#[test]
fn identity_has_flat_spectrum() {
    let p = RacahParams::with_size(0.0, 5, 0.0, 0.0).unwrap();
    let st = restriction_from_matrix(&PolyMatrix::identity(p), 0.5).unwrap();
    assert!(st.sigma2.iter().all(|v| *v == 1.0));
    assert!((st.j[2] - 0.6).abs() <= 1e-15);
}

#[test]
fn search_finds_the_zhu_limit() {
    let out = max_size_search(
        &Algorithm::new(AlgorithmId::ZhuN),
        &ParamRule::Column1,
        &SearchConfig::default(),
    );
    assert!((21..=25).contains(&out.max_n), "{}", out.max_n);
    assert!(!out.at_ceiling && !out.budget_exceeded);
    // every size the search certified as passing was retested below it
    for t in &out.trials {
        if t.n <= out.max_n {
            assert!(t.passed(), "{}", t.n);
        }
    }
}

#[test]
fn search_stops_at_the_ceiling() {
    let cfg = SearchConfig {
        ceiling: 100,
        ..Default::default()
    };
    let out = max_size_search(
        &Algorithm::new(AlgorithmId::Imst),
        &ParamRule::Column3,
        &cfg,
    );
    assert_eq!(out.max_n, 100);
    assert!(out.at_ceiling);
}

#[test]
fn search_reports_generation_errors_as_failures() {
    let out = max_size_search(
        &Algorithm::new(AlgorithmId::Daoui),
        &ParamRule::Column2,
        &SearchConfig::default(),
    );
    assert_eq!(out.max_n, 0);
    assert!(matches!(out.trials[0].status, TrialStatus::Error(_)));
}

#[test]
fn search_budget_ends_the_search() {
    let cfg = SearchConfig {
        trial_budget_s: 0.0,
        ..Default::default()
    };
    let out = max_size_search(
        &Algorithm::new(AlgorithmId::Imst),
        &ParamRule::Column1,
        &cfg,
    );
    assert!(out.budget_exceeded);
    assert_eq!(out.trials.len(), 1);
}

#[test]
fn bench_records() {
    let recs = bench(
        &Algorithm::new(AlgorithmId::Imst),
        &[8, 16],
        &ParamRule::Timing,
        2,
        60.0,
    )
    .unwrap();
    assert_eq!(recs.len(), 2);
    for r in &recs {
        assert!(r.mean_seconds > 0.0);
        assert_eq!(r.repeats, 2);
        assert!(r.ortho_error.unwrap() <= 1e-10);
        assert!(r.note.is_none());
    }
    let json = serde_json::to_value(&recs[1]).unwrap();
    for key in [
        "algorithm",
        "n",
        "params",
        "repeats",
        "mean_seconds",
        "ortho_error",
    ] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["params"]["a"], 4.0);
    let failed = bench(
        &Algorithm::new(AlgorithmId::Daoui),
        &[24],
        &ParamRule::Timing,
        3,
        60.0,
    )
    .unwrap();
    assert!(failed[0].note.is_some() && failed[0].ortho_error.is_none());
}

#[test]
fn non_square_images_reconstruct_along_the_longer_side() {
    let rx = exact_matrix(&RacahParams::with_size(1.0, 12, 0.5, 0.0).unwrap()).unwrap();
    let ry = exact_matrix(&RacahParams::with_size(1.0, 7, 0.5, 0.0).unwrap()).unwrap();
    let img = pseudo_image(12, 7, 5);
    let mom = moments_2d(&img, &rx, &ry).unwrap();
    assert!(nmse(&img, &reconstruct_2d(&mom, &rx, &ry, 7).unwrap()).unwrap() > 1e-6);
    assert!(nmse(&img, &reconstruct_2d(&mom, &rx, &ry, 12).unwrap()).unwrap() <= 1e-24);
    assert!(reconstruct_2d(&mom, &rx, &ry, 13).is_err());
}

//! Acceptance suite: every release criterion as one test, each printing a
//! pass line with its observed extremes. Tolerances are pinned here and do
//! not track library defaults; a change in either side must surface.

use rayon::prelude::*;

use opmeans_core::funcalc::{real_power_contour, real_power_spectral, spectrum_bounds, ContourSpec};
use opmeans_core::fuzz::gen::random_unitary;
use opmeans_core::fuzz::{
    derive_seed, gen_random_invertible, gen_random_pd, generate_instance, report_to_json,
    run_suite, run_suite_sequential, CounterRng, FuzzConfig,
};
use opmeans_core::laws::operator::{
    check_bounded_estimates, check_dcd_identity, check_hga_chain, check_operator_refinement,
    check_representation, BoundForm, DcdVariant, HgaKind, RefinementForm,
};
use opmeans_core::laws::{evaluate_instance, LawId};
use opmeans_core::linalg::classes::{InvertibleMatrix, PositiveMatrix};
use opmeans_core::linalg::matrix::ComplexMatrix;
use opmeans_core::means::{arithmetic_mean, bound_functions, f_nu, quadratic_geometric_mean};

const DIMS: [usize; 6] = [1, 2, 3, 4, 6, 8];
const NU_FULL: [f64; 7] = [-0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5];
const NU_UNIT: [f64; 7] = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
const ORDER_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-8;
const EQUALITY_TOL: f64 = 1e-10;

fn invertible_pair(criterion: u64, index: u64, dim: usize, cond_max: f64) -> (InvertibleMatrix, InvertibleMatrix) {
    let x = gen_random_invertible(derive_seed(criterion, index, 0), dim, cond_max).unwrap();
    let y = gen_random_invertible(derive_seed(criterion, index, 1), dim, cond_max).unwrap();
    (x, y)
}

/// Criterion 1: the quadratic mean evaluated through its defining congruence
/// coincides with the geometric mean of squared moduli on every instance,
/// for weights inside and outside [0, 1].
#[test]
fn criterion_1_representation() {
    let started = std::time::Instant::now();
    let per_dim = 1000u64;
    let worst = DIMS
        .par_iter()
        .enumerate()
        .map(|(dim_idx, &dim)| {
            let mut worst = 0.0_f64;
            for i in 0..per_dim {
                let (x, y) = invertible_pair(0xACC1, (dim_idx as u64) * per_dim + i, dim, 100.0);
                for nu in NU_FULL {
                    let report = check_representation(&x, &y, nu).unwrap();
                    let residual = report.residuals["residual_representation"]
                        .max(report.residuals["residual_swapped"]);
                    assert!(
                        residual <= IDENTITY_TOL,
                        "n={dim} i={i} nu={nu}: residual {residual:.3e}"
                    );
                    worst = worst.max(residual);
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "criterion 1 PASS - representation identity, 6000 instances x 7 weights, worst residual {worst:.3e} (tol {IDENTITY_TOL:.0e}), {:.1}s",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 2: arithmetic-quadratic-harmonic chains hold in the Loewner
/// order, with exact collapse at the endpoint weights and at x = y.
#[test]
fn criterion_2_hga_chains() {
    let per_dim = 250u64;
    let worst = DIMS
        .par_iter()
        .enumerate()
        .map(|(dim_idx, &dim)| {
            let mut worst = f64::INFINITY;
            for i in 0..per_dim {
                let (x, y) = invertible_pair(0xACC2, (dim_idx as u64) * per_dim + i, dim, 100.0);
                let nu = NU_UNIT[(i % 7) as usize];
                for kind in [HgaKind::Squared, HgaKind::Half] {
                    let report = check_hga_chain(&x, &y, nu, kind, ORDER_TOL).unwrap();
                    assert!(report.pass, "n={dim} i={i} nu={nu} {kind:?}: {:?}", report.residuals);
                    let scale = report.residuals["scale"];
                    let upper = report.residuals["margin_upper"];
                    let lower = report.residuals["margin_lower"];
                    worst = worst.min(upper.min(lower) / scale);
                    if nu == 0.0 || nu == 1.0 {
                        assert!(
                            upper.abs() <= EQUALITY_TOL * scale && lower.abs() <= EQUALITY_TOL * scale,
                            "endpoint collapse n={dim} nu={nu}: {upper:.3e} {lower:.3e}"
                        );
                    }
                }
            }
            // x = y collapses the whole chain.
            let (x, _) = invertible_pair(0xACC2, 90_000 + dim_idx as u64, dim, 100.0);
            for kind in [HgaKind::Squared, HgaKind::Half] {
                let report = check_hga_chain(&x, &x, 0.6, kind, ORDER_TOL).unwrap();
                let scale = report.residuals["scale"];
                assert!(report.residuals["margin_upper"].abs() <= EQUALITY_TOL * scale);
                assert!(report.residuals["margin_lower"].abs() <= EQUALITY_TOL * scale);
            }
            worst
        })
        .reduce(|| f64::INFINITY, f64::min);
    println!(
        "criterion 2 PASS - mean chains in the Loewner order, worst normalized margin {worst:+.3e} (tol {:.0e})",
        -ORDER_TOL
    );
}

/// Criterion 3: congruence-power identities across the exponent set, both
/// the selfadjoint and the star variant.
#[test]
fn criterion_3_congruence_power_identities() {
    let lambdas = [-1.0, -0.5, 0.5, 2.0, 3.0];
    let worst = [DcdVariant::Selfadjoint, DcdVariant::Star]
        .par_iter()
        .map(|&variant| {
            let mut worst = 0.0_f64;
            for i in 0..500u64 {
                let dim = DIMS[(i % 6) as usize];
                let salt = if variant == DcdVariant::Selfadjoint { 0xACC3 } else { 0xACC4 };
                let c = gen_random_pd(derive_seed(salt, i, 0), dim, 100.0).unwrap();
                let d = if variant == DcdVariant::Selfadjoint {
                    InvertibleMatrix::new(
                        gen_random_pd(derive_seed(salt, i, 1), dim, 100.0).unwrap().matrix().clone(),
                    )
                    .unwrap()
                } else {
                    gen_random_invertible(derive_seed(salt, i, 1), dim, 100.0).unwrap()
                };
                let lambda = lambdas[(i % 5) as usize];
                let report = check_dcd_identity(&c, &d, lambda, variant).unwrap();
                let residual = report.residuals["residual"];
                assert!(
                    residual <= IDENTITY_TOL,
                    "{variant:?} i={i} lambda={lambda}: residual {residual:.3e}"
                );
                worst = worst.max(residual);
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "criterion 3 PASS - congruence-power identities, 500 instances x 2 variants, worst residual {worst:.3e} (tol {IDENTITY_TOL:.0e})"
    );
}

/// Criterion 4: refinement/reverse double inequality over the full (p, q)
/// grid, equality at p = q, and exact agreement between the symmetric-weight
/// form and the general form at q = 1/2.
#[test]
fn criterion_4_refinement_reverse() {
    let outcomes: Vec<(f64, f64)> = (0..24u64)
        .into_par_iter()
        .map(|t| {
            let dim = DIMS[(t % 6) as usize];
            let (x, y) = invertible_pair(0xACC5, t, dim, 100.0);
            let mut worst_margin = f64::INFINITY;
            let mut worst_half_gap = 0.0_f64;
            for i in 0..=10u32 {
                let p = f64::from(i) / 10.0;
                for j in 1..=9u32 {
                    let q = f64::from(j) / 10.0;
                    let report =
                        check_operator_refinement(&x, &y, p, q, RefinementForm::General, ORDER_TOL)
                            .unwrap();
                    assert!(report.pass, "t={t} p={p} q={q}: {:?}", report.residuals);
                    let scale = report.residuals["scale"];
                    let upper = report.residuals["margin_upper"];
                    let lower = report.residuals["margin_lower"];
                    worst_margin = worst_margin.min(upper.min(lower) / scale);
                    if i == j {
                        assert!(
                            upper.abs() <= EQUALITY_TOL * scale && lower.abs() <= EQUALITY_TOL * scale,
                            "equality at p=q={p}: {upper:.3e} {lower:.3e}"
                        );
                    }
                }
                let general =
                    check_operator_refinement(&x, &y, p, 0.5, RefinementForm::General, ORDER_TOL)
                        .unwrap();
                let half = check_operator_refinement(&x, &y, p, 0.5, RefinementForm::Half, ORDER_TOL)
                    .unwrap();
                let scale = general.residuals["scale"].max(1.0);
                for key in ["margin_upper", "margin_lower"] {
                    let gap = (general.residuals[key] - half.residuals[key]).abs();
                    assert!(gap <= 1e-12 * scale, "q=1/2 form mismatch at p={p}: {gap:.3e}");
                    worst_half_gap = worst_half_gap.max(gap / scale);
                }
            }
            (worst_margin, worst_half_gap)
        })
        .collect();
    let worst_margin = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let worst_gap = outcomes.iter().map(|o| o.1).fold(0.0, f64::max);
    println!(
        "criterion 4 PASS - refinement/reverse over 11x9 weight grid, worst normalized margin {worst_margin:+.3e}, symmetric-form gap {worst_gap:.3e}"
    );
}

/// Criterion 5: two-sided boundedness estimates with tight and widened
/// spectral bounds, plus the fully hand-computed touching instance.
#[test]
fn criterion_5_boundedness_estimates() {
    // Hand instance: gap = diag(2,2), upper coefficient 2, lower 0.5.
    let x = InvertibleMatrix::new(ComplexMatrix::diag(&[1.0, 2.0]).unwrap()).unwrap();
    let y = InvertibleMatrix::new(ComplexMatrix::diag(&[3.0, 4.0]).unwrap()).unwrap();
    let gx = x.modulus_squared().unwrap();
    let gy = y.modulus_squared().unwrap();
    let arith = arithmetic_mean(gx.hermitian(), gy.hermitian(), 0.5).unwrap();
    let quad = quadratic_geometric_mean(&x, &y, 0.5).unwrap();
    let gap = arith.matrix().sub(quad.matrix()).unwrap();
    for i in 0..2 {
        assert!((gap.get(i, i).re - 2.0).abs() <= 1e-12, "gap entry {i}");
    }
    let report = check_bounded_estimates(&x, &y, 0.5, BoundForm::Theorem, 1.0, ORDER_TOL).unwrap();
    assert!((report.residuals["coef_upper"] - 2.0).abs() <= 1e-12);
    assert!((report.residuals["coef_lower"] - 0.5).abs() <= 1e-12);
    assert!(report.residuals["margin_upper"].abs() <= 1e-12);
    assert!(report.residuals["margin_lower"].abs() <= 1e-12);

    let per_dim = 150u64;
    let worst = DIMS
        .par_iter()
        .enumerate()
        .map(|(dim_idx, &dim)| {
            let mut worst = f64::INFINITY;
            for i in 0..per_dim {
                let (x, y) = invertible_pair(0xACC6, (dim_idx as u64) * per_dim + i, dim, 100.0);
                let nu = NU_UNIT[(i % 7) as usize];
                for form in [BoundForm::Theorem, BoundForm::Corollary] {
                    for widen in [1.0, 2.0] {
                        let report =
                            check_bounded_estimates(&x, &y, nu, form, widen, ORDER_TOL).unwrap();
                        assert!(
                            report.pass,
                            "n={dim} i={i} nu={nu} {form:?} widen={widen}: {:?}",
                            report.residuals
                        );
                        let scale = report.residuals["scale"];
                        worst = worst.min(
                            report.residuals["margin_upper"].min(report.residuals["margin_lower"])
                                / scale,
                        );
                    }
                }
            }
            worst
        })
        .reduce(|| f64::INFINITY, f64::min);
    println!(
        "criterion 5 PASS - boundedness estimates (tight and widened), hand instance exact to 1e-12, worst normalized margin {worst:+.3e}"
    );
}

/// Criterion 6: closed-form interval extrema of the scalar gap against a
/// 100k-point grid search, across all three interval positions.
#[test]
fn criterion_6_bound_functions_brute_force() {
    let worst = (0..200u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = CounterRng::new(derive_seed(0xACC7, t, 0));
            let nu = rng.next_range(0.05, 0.95);
            let (k, kk) = match t % 3 {
                0 => {
                    let a = rng.next_range(0.01, 0.99);
                    let b = rng.next_range(0.01, 0.99);
                    (a.min(b), a.max(b))
                }
                1 => (rng.next_range(0.01, 1.0), rng.next_range(1.0, 50.0)),
                _ => {
                    let a = rng.next_range(1.001, 50.0);
                    let b = rng.next_range(1.001, 50.0);
                    (a.min(b), a.max(b))
                }
            };
            let (delta, small) = bound_functions(k, kk, nu).unwrap();
            let steps = 100_000u32;
            let mut grid_max = f64::NEG_INFINITY;
            let mut grid_min = f64::INFINITY;
            for s in 0..=steps {
                let t_val = k + (kk - k) * f64::from(s) / f64::from(steps);
                let v = f_nu(t_val, nu).unwrap();
                grid_max = grid_max.max(v);
                grid_min = grid_min.min(v);
            }
            let err = (delta - grid_max).abs().max((small - grid_min).abs());
            assert!(err <= 1e-6, "triple ({k}, {kk}, {nu}): error {err:.3e}");
            err
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "criterion 6 PASS - interval extrema vs 100k-point grid search on 200 triples, worst error {worst:.3e} (tol 1e-6)"
    );
}

/// Criterion 7: the contour quadrature agrees with the spectral route at 256
/// nodes, and halving the node count degrades the error geometrically.
#[test]
fn criterion_7_contour_oracle() {
    let contour_dims = [2usize, 3, 4, 6, 8];
    let exponents = [0.5, -0.5, 0.25, 1.5, -1.25];
    let outcomes: Vec<(f64, f64)> = (0..100u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = CounterRng::new(derive_seed(0xACC8, t, 0));
            let dim = contour_dims[(t % 5) as usize];
            let u = random_unitary(&mut rng, dim);
            // Spread pinned to [6, 10] inside [0.1, 10]: wide enough that the
            // 128-node error sits far above round-off, narrow enough for
            // 1e-8 at 256 nodes.
            let kappa = rng.next_range(6.0, 10.0);
            let lo = rng.next_log_uniform(0.1, 10.0 / kappa);
            let mut eigs = vec![lo, lo * kappa];
            for _ in 2..dim {
                eigs.push(lo * kappa.powf(rng.next_unit()));
            }
            let diag = ComplexMatrix::diag(&eigs).unwrap();
            let m = u.mul(&diag).unwrap().mul(&u.adjoint()).unwrap();
            let a = PositiveMatrix::from_product(&m).unwrap();
            let bounds = spectrum_bounds(&a);
            assert!(bounds.lo >= 0.1 * (1.0 - 1e-9) && bounds.hi <= 10.0 * (1.0 + 1e-9));

            let alpha = exponents[(t % 5) as usize];
            let exact = real_power_spectral(&a, alpha).unwrap();
            let scale = exact.matrix().frobenius_norm();
            let err = |nodes: usize| {
                let contour = ContourSpec::enclosing(bounds, nodes).unwrap();
                let got = real_power_contour(&a, alpha, &contour).unwrap();
                got.sub(exact.matrix()).unwrap().frobenius_norm() / scale
            };
            let fine = err(256);
            let coarse = err(128);
            assert!(fine <= 1e-8, "t={t} alpha={alpha}: 256-node error {fine:.3e}");
            let ratio = coarse / fine.max(1e-300);
            assert!(ratio >= 100.0, "t={t} alpha={alpha}: degradation ratio {ratio:.1}");
            (fine, ratio)
        })
        .collect();
    let worst_err = outcomes.iter().map(|o| o.0).fold(0.0, f64::max);
    let min_ratio = outcomes.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
    println!(
        "criterion 7 PASS - contour oracle on 100 instances, worst 256-node error {worst_err:.3e} (tol 1e-8), min 128/256 degradation {min_ratio:.1}x (floor 100x)"
    );
}

/// Criterion 8: Jensen ratio bounds and all six scalar refinement families
/// over 10^4 draws each, plus the hand equality case.
#[test]
fn criterion_8_scalar_suites() {
    let scalar_laws = [
        LawId::JensenBounds,
        LawId::ScalarExp,
        LawId::ScalarExpHalf,
        LawId::ScalarPower,
        LawId::ScalarPowerHalf,
        LawId::ScalarKm,
        LawId::ScalarAmGm,
    ];
    let nu_grid = NU_UNIT;
    let worst = scalar_laws
        .par_iter()
        .enumerate()
        .map(|(law_idx, &law)| {
            let mut worst = f64::INFINITY;
            for i in 0..10_000u64 {
                let seed = derive_seed(0xACC9, law_idx as u64, i);
                let instance = generate_instance(law, seed, 1, 100.0, &nu_grid).unwrap();
                let report = evaluate_instance(&instance).unwrap();
                assert!(report.pass, "{} i={i}: {:?}", law.as_str(), report.residuals);
                worst = worst.min(report.margin);
            }
            worst
        })
        .reduce(|| f64::INFINITY, f64::min);

    let km = opmeans_core::laws::scalar::check_scalar_refinement(
        1.0,
        4.0,
        0.5,
        0.5,
        1.0,
        opmeans_core::laws::scalar::ScalarFamily::KittanehManasrah,
    )
    .unwrap();
    assert!(km.residuals["slack_upper"].abs() <= 1e-14);
    assert!(km.residuals["slack_lower"].abs() <= 1e-14);
    println!(
        "criterion 8 PASS - scalar suites, 7 laws x 10^4 draws, worst margin {worst:+.3e}; equality case slack within 1e-14"
    );
}

/// Criterion 9: the default suite is byte-deterministic across runs and
/// thread counts, up to the wall-clock field.
#[test]
fn criterion_9_determinism() {
    let config = FuzzConfig {
        master_seed: 0xDE7E_2141,
        trials: 40,
        dims: vec![1, 2, 3],
        keep_worst: true,
        ..FuzzConfig::default()
    };
    let canonical = |report: &opmeans_core::fuzz::SuiteReport| {
        let mut clone = report.clone();
        clone.wall_time_ms = 0;
        report_to_json(&clone).unwrap()
    };

    let first = canonical(&run_suite(&config).unwrap());
    let second = canonical(&run_suite(&config).unwrap());
    assert_eq!(first, second, "same-process reruns must be byte-identical");

    let sequential = canonical(&run_suite_sequential(&config).unwrap());
    assert_eq!(first, sequential, "sequential run must match the parallel run");

    for threads in ["1", "2"] {
        std::env::set_var("OPMEANS_THREADS", threads);
        let capped = canonical(&run_suite(&config).unwrap());
        std::env::remove_var("OPMEANS_THREADS");
        assert_eq!(first, capped, "thread cap {threads} changed the report");
    }
    println!(
        "criterion 9 PASS - byte-identical reports across reruns, sequential path and thread caps ({} bytes)",
        first.len()
    );
}

/// The headline run: the full default configuration reports zero failures
/// across every law.
#[test]
fn headline_default_suite_zero_failures() {
    let started = std::time::Instant::now();
    let config = FuzzConfig::default();
    let report = run_suite(&config).unwrap();
    assert_eq!(report.per_law.len(), LawId::ALL.len(), "default selection must cover every law");
    for (law_id, summary) in &report.per_law {
        assert_eq!(summary.trials, 6000, "{law_id}");
        assert_eq!(summary.failures, 0, "{law_id}: worst margin {:.3e}", summary.worst_margin);
    }
    println!(
        "headline PASS - default suite: {} laws x 6000 trials, 0 failures, {:.1}s",
        report.per_law.len(),
        started.elapsed().as_secs_f64()
    );
}

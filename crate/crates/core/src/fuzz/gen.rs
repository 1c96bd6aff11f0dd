//! Seeded random matrices with condition-number control, and per-law
//! instance generation.
//!
//! Construction recipes are pinned so that streams replay bit-identically:
//! invertible matrices are `U · diag(s) · V*` with `U`, `V` drawn as complex
//! Gaussian matrices orthonormalized column by column and `s` log-uniform in
//! `[1, cond_max]`; positive matrices are `U · diag(λ) · U*` likewise. Draw
//! order is entry-major for `U`, then the diagonal, then `V`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fuzz::rng::CounterRng;
use crate::laws::{ConvexFunction, LawId, LawInstance};
use crate::linalg::classes::{InvertibleMatrix, PositiveMatrix};
use crate::linalg::matrix::{ComplexMatrix, MAX_DIM};

/// Exponents exercised by the congruence-power identities.
pub const LAMBDA_SET: [f64; 5] = [-1.0, -0.5, 0.5, 2.0, 3.0];
/// Out-of-range weights added for laws that hold for every real weight.
pub const EXTENDED_WEIGHTS: [f64; 2] = [-0.5, 1.5];

fn check_gen_args(n: usize, cond_max: f64) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::BadDimension { dim: n });
    }
    if !(cond_max >= 1.0 && cond_max.is_finite()) {
        return Err(Error::ParameterOutOfDomain { reason: "cond_max must be >= 1" });
    }
    Ok(())
}

/// Haar-like random unitary: complex Gaussian matrix, columns orthonormalized
/// by modified Gram-Schmidt. Columns that collapse under projection are
/// redrawn from the same stream.
pub fn random_unitary(rng: &mut CounterRng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let draw_col = |rng: &mut CounterRng| -> Vec<Complex64> {
        (0..n)
            .map(|_| {
                let (re, im) = rng.next_gaussian_pair();
                Complex64::new(re, im)
            })
            .collect()
    };
    for _ in 0..n {
        loop {
            let mut v = draw_col(rng);
            for q in &cols {
                let overlap: Complex64 =
                    q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= overlap * qi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                for vi in &mut v {
                    *vi /= norm;
                }
                cols.push(v);
                break;
            }
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i]).expect("dim validated by caller")
}

fn random_invertible_from(
    rng: &mut CounterRng,
    n: usize,
    cond_max: f64,
) -> Result<InvertibleMatrix> {
    let u = random_unitary(rng, n);
    let singulars: Vec<f64> = (0..n).map(|_| rng.next_log_uniform(1.0, cond_max)).collect();
    let v = random_unitary(rng, n);
    let m = u.mul(&ComplexMatrix::diag(&singulars)?)?.mul(&v.adjoint())?;
    InvertibleMatrix::new(m)
}

fn random_pd_from(rng: &mut CounterRng, n: usize, cond_max: f64) -> Result<PositiveMatrix> {
    let u = random_unitary(rng, n);
    let eigs: Vec<f64> = (0..n).map(|_| rng.next_log_uniform(1.0, cond_max)).collect();
    let m = u.mul(&ComplexMatrix::diag(&eigs)?)?.mul(&u.adjoint())?;
    PositiveMatrix::from_product(&m)
}

/// Deterministic invertible matrix with condition at most `cond_max`.
pub fn gen_random_invertible(seed: u64, n: usize, cond_max: f64) -> Result<InvertibleMatrix> {
    check_gen_args(n, cond_max)?;
    random_invertible_from(&mut CounterRng::new(seed), n, cond_max)
}

/// Deterministic positive-definite matrix with spectrum in `[1, cond_max]`.
pub fn gen_random_pd(seed: u64, n: usize, cond_max: f64) -> Result<PositiveMatrix> {
    check_gen_args(n, cond_max)?;
    random_pd_from(&mut CounterRng::new(seed), n, cond_max)
}

fn pick_weight(rng: &mut CounterRng, nu_grid: &[f64], any_real: bool) -> Result<f64> {
    if any_real {
        let total = nu_grid.len() + EXTENDED_WEIGHTS.len();
        let idx = rng.next_index(total);
        Ok(if idx < nu_grid.len() {
            nu_grid[idx]
        } else {
            EXTENDED_WEIGHTS[idx - nu_grid.len()]
        })
    } else {
        let in_range: Vec<f64> =
            nu_grid.iter().copied().filter(|nu| (0.0..=1.0).contains(nu)).collect();
        if in_range.is_empty() {
            return Err(Error::BadConfig {
                reason: "nu grid contains no weight in [0, 1]".into(),
            });
        }
        Ok(in_range[rng.next_index(in_range.len())])
    }
}

fn signed_range(rng: &mut CounterRng, lo: f64, hi: f64) -> f64 {
    let v = rng.next_range(lo, hi);
    if rng.next_bool() {
        v
    } else {
        -v
    }
}

/// Probability vector with entries bounded below by `floor / (n·(1+floor))`;
/// the last entry absorbs rounding so the sum is 1 to machine precision.
fn simplex(rng: &mut CounterRng, n: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| floor + rng.next_unit()).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|v| v / total).collect();
    let partial: f64 = weights[..n - 1].iter().sum();
    weights[n - 1] = (1.0 - partial).max(0.0);
    weights
}

fn random_convex_function(rng: &mut CounterRng) -> ConvexFunction {
    match rng.next_index(4) {
        0 => ConvexFunction::Exp { alpha: signed_range(rng, 0.25, 2.0) },
        1 => {
            if rng.next_bool() {
                ConvexFunction::Power { alpha: rng.next_range(1.0, 3.0) }
            } else {
                ConvexFunction::Power { alpha: -rng.next_range(0.25, 2.0) }
            }
        }
        2 => ConvexFunction::NegLn,
        _ => ConvexFunction::AffineMinusPower { nu: rng.next_range(0.1, 0.9) },
    }
}

fn random_point(rng: &mut CounterRng, function: ConvexFunction) -> f64 {
    match function {
        ConvexFunction::Exp { .. } => rng.next_range(-2.0, 2.0),
        ConvexFunction::Power { alpha } if alpha < 0.0 => rng.next_log_uniform(0.1, 10.0),
        ConvexFunction::NegLn => rng.next_log_uniform(0.1, 10.0),
        _ => rng.next_range(0.0, 10.0),
    }
}

/// Deterministic law instance for one (law, seed, dimension) cell.
pub fn generate_instance(
    law: LawId,
    seed: u64,
    dim: usize,
    cond_max: f64,
    nu_grid: &[f64],
) -> Result<LawInstance> {
    check_gen_args(dim, cond_max)?;
    let mut rng = CounterRng::new(seed);
    let mut instance = LawInstance { law_id: law.as_str().to_owned(), ..LawInstance::default() };

    match law {
        LawId::DcdSelfadjoint | LawId::DcdStar => {
            instance.c = Some(random_pd_from(&mut rng, dim, cond_max)?.matrix().clone());
            let d = if law == LawId::DcdSelfadjoint {
                random_pd_from(&mut rng, dim, cond_max)?.matrix().clone()
            } else {
                random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone()
            };
            instance.d = Some(d);
            instance.lambda = Some(LAMBDA_SET[rng.next_index(LAMBDA_SET.len())]);
        }
        LawId::GeoSymmetry => {
            instance.a = Some(random_pd_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.b = Some(random_pd_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.nu = Some(pick_weight(&mut rng, nu_grid, true)?);
        }
        LawId::InverseIdentities | LawId::Representation => {
            instance.x = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.y = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.nu = Some(pick_weight(&mut rng, nu_grid, true)?);
        }
        LawId::HgaSquared | LawId::HgaHalf | LawId::HgaPositivePair | LawId::NormChain => {
            instance.x = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.y = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.nu = Some(pick_weight(&mut rng, nu_grid, false)?);
        }
        LawId::RefineGeneral
        | LawId::RefineHalf
        | LawId::RefinePositivePair
        | LawId::RefinePositivePairHalf => {
            instance.x = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.y = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.p = Some(rng.next_range(0.0, 1.0));
            if matches!(law, LawId::RefineGeneral | LawId::RefinePositivePair) {
                instance.q = Some(rng.next_range(0.1, 0.9));
            }
        }
        LawId::BoundTheorem
        | LawId::BoundCorollary
        | LawId::BoundPositivePair
        | LawId::BoundPositivePairSquareRoot => {
            instance.x = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.y = Some(random_invertible_from(&mut rng, dim, cond_max)?.matrix().clone());
            instance.nu = Some(pick_weight(&mut rng, nu_grid, false)?);
            instance.widen = Some(if rng.next_bool() { 2.0 } else { 1.0 });
        }
        LawId::JensenBounds => {
            let n_points = 2 + rng.next_index(5);
            let function = random_convex_function(&mut rng);
            let points: Vec<f64> =
                (0..n_points).map(|_| random_point(&mut rng, function)).collect();
            instance.points = Some(points);
            instance.weights_p = Some(simplex(&mut rng, n_points, 0.0));
            instance.weights_q = Some(simplex(&mut rng, n_points, 0.05));
            instance.function = Some(function);
        }
        LawId::ScalarExp | LawId::ScalarExpHalf => {
            instance.a_scalar = Some(rng.next_range(-2.0, 2.0));
            instance.b_scalar = Some(rng.next_range(-2.0, 2.0));
            instance.p = Some(rng.next_range(0.0, 1.0));
            if law == LawId::ScalarExp {
                instance.q = Some(rng.next_range(0.1, 0.9));
            }
            instance.alpha = Some(signed_range(&mut rng, 0.25, 2.0));
        }
        LawId::ScalarPower | LawId::ScalarPowerHalf => {
            instance.a_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.b_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.p = Some(rng.next_range(0.0, 1.0));
            if law == LawId::ScalarPower {
                instance.q = Some(rng.next_range(0.1, 0.9));
            }
            instance.alpha = Some(signed_range(&mut rng, 0.25, 2.0));
        }
        LawId::ScalarKm => {
            instance.a_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.b_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.p = Some(rng.next_range(0.0, 1.0));
        }
        LawId::ScalarAmGm => {
            instance.a_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.b_scalar = Some(rng.next_log_uniform(0.1, 10.0));
            instance.p = Some(rng.next_range(0.0, 1.0));
            instance.q = Some(rng.next_range(0.1, 0.9));
        }
    }
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalc::spectrum_bounds;
    use crate::linalg::classes::singular_extremes;

    #[test]
    fn unit_scalar_for_trivial_parameters() {
        let m = gen_random_invertible(42, 1, 1.0).unwrap();
        assert!((m.matrix().get(0, 0).norm() - 1.0).abs() < 1e-14);

        let p = gen_random_pd(7, 1, 1.0).unwrap();
        assert!((p.matrix().get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(p.matrix().get(0, 0).im.abs() < 1e-16);
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let a = gen_random_invertible(99, 4, 100.0).unwrap();
        let b = gen_random_invertible(99, 4, 100.0).unwrap();
        for (x, y) in a.matrix().entries().iter().zip(b.matrix().entries()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn condition_stays_within_bound() {
        for seed in 0..20 {
            let m = gen_random_invertible(seed, 4, 100.0).unwrap();
            let (smin, smax) = singular_extremes(m.matrix()).unwrap();
            assert!(smin * 100.0 >= smax * (1.0 - 1e-9), "seed {seed}");
        }
    }

    #[test]
    fn pd_spectrum_stays_in_range() {
        for seed in 0..20 {
            let p = gen_random_pd(seed, 5, 50.0).unwrap();
            let bounds = spectrum_bounds(&p);
            assert!(bounds.lo >= 1.0 - 1e-9, "seed {seed}: lo {}", bounds.lo);
            assert!(bounds.hi <= 50.0 * (1.0 + 1e-9), "seed {seed}: hi {}", bounds.hi);
        }
    }

    #[test]
    fn unitary_factor_is_orthonormal() {
        let mut rng = CounterRng::new(3);
        let u = random_unitary(&mut rng, 6);
        let gram = u.adjoint().mul(&u).unwrap();
        let eye = ComplexMatrix::identity(6).unwrap();
        assert!(gram.sub(&eye).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn dimension_bounds_are_enforced() {
        assert!(matches!(gen_random_invertible(1, 0, 10.0), Err(Error::BadDimension { .. })));
        assert!(matches!(gen_random_invertible(1, 17, 10.0), Err(Error::BadDimension { .. })));
        assert!(gen_random_pd(1, 2, 0.5).is_err());
    }

    #[test]
    fn every_law_generates_an_evaluable_instance() {
        let nu_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        for (i, law) in LawId::ALL.iter().enumerate() {
            let instance = generate_instance(*law, 1000 + i as u64, 3, 30.0, &nu_grid).unwrap();
            let report = crate::laws::evaluate_instance(&instance).unwrap();
            assert_eq!(report.law_id, law.as_str());
            assert!(report.pass, "law {} failed: {:?}", law.as_str(), report.residuals);
        }
    }

    #[test]
    fn simplex_weights_are_valid() {
        let mut rng = CounterRng::new(11);
        for n in 2..=6 {
            let q = simplex(&mut rng, n, 0.05);
            assert!(q.iter().all(|&w| w > 0.0));
            let total: f64 = q.iter().sum();
            assert!((total - 1.0).abs() <= 1e-12);
        }
    }
}

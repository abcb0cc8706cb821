//! Acceptance suite: every headline numerical claim the toolkit makes, each
//! pinned to its tolerance and printed as one pass/fail line.
//!
//! Known red: the distributional-limit defect bound (criterion 5) is
//! exceeded by the narrowest built-in Gaussian. The defect at fixed ε is
//! analytically πε²·(2m²ψ(0) − 6ψ″(0)); for σ = 0.5 that is 26πε² ≈ 2.04e−3
//! at ε = 5e−3, above the pinned bound 1e−4·4π|ψ(0)| ≈ 1.26e−3. The bound
//! is kept as stated rather than widened; see the test output.

use kgdist::dimreg::{self, Dimension};
use kgdist::fields::{self, FieldParams, OriginBehavior, RadialFunction};
use kgdist::mollifier::Mollification;
use kgdist::quad::{self, QuadratureConfig};
use kgdist::verifier::{self, Identity, TestFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

fn params(m: f64) -> FieldParams {
    FieldParams::new(m).unwrap()
}

fn moll(eps: f64) -> Mollification {
    Mollification::new(eps).unwrap()
}

fn report(criterion: &str, passed: bool, detail: &str) -> bool {
    println!(
        "criterion {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

#[test]
fn criterion_01_delta_normalization_eps_independent() {
    let cfg = QuadratureConfig::default();
    let p = params(1.0);
    let mut values = Vec::new();
    let mut ok = true;
    for eps in [0.01, 0.1, 1.0, 10.0] {
        let chk = verifier::verify_identity(Identity::DeltaNormalization, p, moll(eps), &cfg)
            .unwrap();
        ok &= (chk.computed.value + FOUR_PI).abs() < 1e-7;
        values.push(chk.computed.value);
    }
    let spread = values.iter().cloned().fold(f64::MIN, f64::max)
        - values.iter().cloned().fold(f64::MAX, f64::min);
    ok &= spread < 1e-7;
    assert!(report(
        "1 (delta normalization)",
        ok,
        &format!("integral = -4pi within 1e-7 for eps in {{0.01..10}}, spread {spread:.2e}")
    ));
}

#[test]
fn criterion_02_vanishing_second_term() {
    let cfg = QuadratureConfig::default();
    let p = params(1.0);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for eps in [0.01, 0.1, 1.0] {
        let chk =
            verifier::verify_identity(Identity::YukawaRegSecondTerm, p, moll(eps), &cfg).unwrap();
        let rel = (chk.computed.value - chk.expected).abs() / chk.expected.abs();
        worst = worst.max(rel);
        ok &= rel < 1e-8;
        // the printed display (epsilon, without 4pi) stays flagged, never matched
        ok &= chk.paper_printed == Some(eps);
    }
    assert!(report(
        "2 (vanishing second term)",
        ok,
        &format!("integral = 4pi*eps within 1e-8 relative, worst {worst:.2e}")
    ));
}

#[test]
fn criterion_03_delta_term_identity() {
    let cfg = QuadratureConfig::default();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for m in [0.5, 1.0, 2.0] {
        for eps in [0.05, 0.1, 0.2] {
            let chk =
                verifier::verify_identity(Identity::PhiDeltaTerm, params(m), moll(eps), &cfg)
                    .unwrap();
            let rel = (chk.computed.value - chk.expected).abs() / chk.expected.abs();
            worst = worst.max(rel);
            ok &= rel < 1e-5;
        }
    }
    // eps -> 0 limit is -4pi
    let chk = verifier::verify_identity(Identity::PhiDeltaTerm, params(1.0), moll(1e-4), &cfg)
        .unwrap();
    ok &= (chk.computed.value + FOUR_PI).abs() < 1e-4;
    assert!(report(
        "3 (delta-carrier identity)",
        ok,
        &format!("matches -4pi(1+eps^2 m^2)e^(eps^2 m^2/2) within 1e-5 relative, worst {worst:.2e}")
    ));
}

#[test]
fn criterion_04_sinh_term_identity_and_order() {
    let cfg = QuadratureConfig::default();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for m in [0.5, 1.0, 2.0] {
        for eps in [0.05, 0.1, 0.2] {
            let chk =
                verifier::verify_identity(Identity::PhiSinhTerm, params(m), moll(eps), &cfg)
                    .unwrap();
            let rel = (chk.computed.value - chk.expected).abs() / chk.expected.abs();
            worst = worst.max(rel);
            ok &= rel < 1e-5;
            // the printed sqrt(eps) display must stay flagged as mismatched
            let printed = chk.paper_printed.unwrap();
            ok &= (chk.computed.value - printed).abs() > 1e-2 * printed.abs();
        }
    }
    // measured eps-order of the integral value is 2
    let grid = [0.2, 0.1, 0.05, 0.02, 0.01];
    let vals: Vec<f64> = grid
        .iter()
        .map(|&e| {
            verifier::verify_identity(Identity::PhiSinhTerm, params(1.0), moll(e), &cfg)
                .unwrap()
                .computed
                .value
        })
        .collect();
    let order = quad::fit_convergence_order(&grid, &vals).unwrap();
    ok &= (order - 2.0).abs() <= 0.05;
    assert!(report(
        "4 (sinh-term identity)",
        ok,
        &format!("matches 8pi m^2 eps^2 e^(m^2 eps^2/2) within 1e-5 relative (worst {worst:.2e}), eps-order {order:.3}")
    ));
}

#[test]
fn criterion_05_distributional_limit() {
    let cfg = QuadratureConfig::default();
    let p = params(1.0);
    let eps = 5e-3;
    let grid = [0.2, 0.1, 0.05, 0.02, 0.01, 0.005];
    let mut all_ok = true;
    for psi in verifier::builtin_test_functions() {
        let defect = verifier::delta_defect(p, moll(eps), &psi, &cfg).unwrap();
        let bound = 1e-4 * FOUR_PI * psi.value_at_origin().abs();
        let within = defect.abs() < bound;
        let sweep = verifier::sweep_delta_defect(p, &psi, &grid, &cfg).unwrap();
        let order = sweep.fitted_order.unwrap_or(f64::NAN);
        let order_ok = order >= 1.0;
        all_ok &= report(
            "5 (distributional limit)",
            within && order_ok,
            &format!(
                "{}: |defect| {:.3e} vs bound {:.3e}, fitted order {:.2}",
                psi.name(),
                defect.abs(),
                bound,
                order
            ),
        );
    }
    assert!(all_ok);
}

#[test]
fn criterion_06_integration_by_parts() {
    let cfg = QuadratureConfig::default();
    let mut ok = true;
    for m in [0.5, 1.0] {
        for eps in [0.1, 0.01] {
            for psi in verifier::builtin_test_functions() {
                let a = verifier::residual_pairing(params(m), moll(eps), &psi, &cfg).unwrap();
                let b = verifier::adjoint_pairing(params(m), moll(eps), &psi, &cfg).unwrap();
                let budget = a.error_estimate + b.error_estimate;
                let diff = (a.value - b.value).abs();
                if diff > budget {
                    println!(
                        "  mismatch {} m={m} eps={eps}: diff {diff:.3e} budget {budget:.3e}",
                        psi.name()
                    );
                    ok = false;
                }
            }
        }
    }
    assert!(report(
        "6 (integration by parts)",
        ok,
        "residual and adjoint pairings agree within summed quadrature error estimates"
    ));
}

#[test]
fn criterion_07_origin_values() {
    let d3 = Dimension::new(3.0).unwrap();
    let mut ok = true;
    for m in [0.5, 1.0, 2.0, 5.0] {
        let v = dimreg::dimreg_origin(params(m), d3).unwrap();
        ok &= (v + m).abs() <= 1e-12 * m;
    }
    // cutoff route: deviation from -m decays as 1/Lambda
    let m = 1.0;
    let lambdas = [1e6, 1e5, 1e4, 1e3, 1e2];
    let devs: Vec<f64> = lambdas
        .iter()
        .map(|&lam| (dimreg::cutoff_subtracted(params(m), lam).unwrap() + m).abs())
        .collect();
    // reuse the eps-order fitter with Lambda^-1 as the shrinking parameter
    let inv: Vec<f64> = lambdas.iter().map(|&l| 1.0 / l).collect();
    let mut inv_sorted = inv.clone();
    let mut devs_sorted = devs.clone();
    inv_sorted.reverse();
    devs_sorted.reverse();
    let order = quad::fit_convergence_order(&inv_sorted, &devs_sorted).unwrap();
    ok &= (order - 1.0).abs() <= 0.05;
    assert!(report(
        "7 (origin values)",
        ok,
        &format!("dimreg origin = -m to 1e-12 relative; cutoff deviation order in 1/Lambda = {order:.3}")
    ));
}

#[test]
fn criterion_08_pointwise_recovery() {
    let p = params(1.0);
    let mo = moll(1e-6);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for r in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let y = fields::yukawa(r, p).unwrap();
        let rel = (fields::phi_dist(r, p, mo).unwrap() - y).abs() / y;
        worst = worst.max(rel);
        ok &= rel < 1e-10;
    }
    // series/direct continuity at the switch radius
    for (m, eps) in [(1.0, 0.01), (1.0, 1e-4), (0.5, 0.2), (2.0, 0.05)] {
        let p = params(m);
        let mo = moll(eps);
        let rs = fields::phi_dist_switch_radius(p, mo);
        let below = fields::phi_dist(rs * (1.0 - 1e-9), p, mo).unwrap();
        let above = fields::phi_dist(rs * (1.0 + 1e-9), p, mo).unwrap();
        let rel = (below - above).abs() / above.abs();
        ok &= rel < 1e-9;
        worst = worst.max(rel);
    }
    assert!(report(
        "8 (pointwise recovery)",
        ok,
        &format!("phi matches yukawa within 1e-10 relative at eps = 1e-6; branch continuity 1e-9, worst {worst:.2e}")
    ));
}

#[test]
fn criterion_09_operator_cross_check() {
    // 50 seeded random points; sampled near the mollification scale, where
    // both residual terms are O(1/eps^3) and the operator does not cancel
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b47_6469_7374);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let eps: f64 = rng.gen_range(0.1..0.5);
        let u: f64 = rng.gen_range(0.3..2.0);
        let m: f64 = rng.gen_range(0.3..2.0);
        let r = (u * eps).max(0.011);
        let p = params(m);
        let mo = moll(eps);
        let h = 3e-4 * eps.min(1.0 / m);

        let reg = RadialFunction::from_fn(
            move |x| (-m * x).exp() / (x * x + eps * eps).sqrt(),
            OriginBehavior::Finite,
        );
        let fd = fields::kg_operator_numeric(&reg, r, p, h).unwrap();
        let cf = fields::kg_residual_yukawa_reg(r, p, mo).unwrap();
        let rel = (fd - cf).abs() / cf.abs();
        worst = worst.max(rel);
        ok &= rel < 1e-6;

        let phi = RadialFunction::from_fn(
            move |x| {
                fields::phi_dist(x, FieldParams::new(m).unwrap(), Mollification::new(eps).unwrap())
                    .unwrap()
            },
            OriginBehavior::Removable,
        );
        let fd = fields::kg_operator_numeric(&phi, r, p, h).unwrap();
        let cf = fields::kg_residual_phi_dist(r, p, mo).unwrap();
        let rel = (fd - cf).abs() / cf.abs();
        worst = worst.max(rel);
        ok &= rel < 1e-6;
    }
    assert!(report(
        "9 (operator cross-check)",
        ok,
        &format!("closed-form residuals match the finite-difference operator at 50 random points, worst {worst:.2e}")
    ));
}

#[test]
fn criterion_10_fourier_numeric() {
    let cfg = QuadratureConfig::default();
    let v = dimreg::fourier_radial_numeric(1.0, params(1.0), 500.0, &cfg).unwrap();
    let target = (-1.0f64).exp();
    let ok = v.converged && (v.value - target).abs() < 1e-4;
    assert!(report(
        "10 (Fourier numeric)",
        ok,
        &format!("value {:.8} vs e^-1 = {target:.8}", v.value)
    ));
}

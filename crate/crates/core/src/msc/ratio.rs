//! Approximation-ratio arithmetic for the geometric rounding scheme.
//!
//! With growth factor c, offset distribution h = c^Γ (Γ uniform on [0,1)),
//! capacity slack 1/ρ and width factor γ, the expected objective of the
//! rounding is at most ρ·γ·(c+1) / (2·(1−(1−ρ)·c)·ln c) times the LP cost.
//! At ρ = γ = 1 the minimizing c satisfies c·ln c = c + 1 (c ≈ 3.5911, ratio
//! ≈ 1.7956).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MscError;

const E_SQUARED: f64 = 7.389056098930650;

fn check_domain(rho: f64, gamma: f64) -> Result<(), MscError> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(MscError::Domain(format!("rho = {rho} outside (0, 1]")));
    }
    if !(gamma >= 1.0) {
        return Err(MscError::Domain(format!("gamma = {gamma} below 1")));
    }
    Ok(())
}

/// Largest admissible growth factor for this ρ: c must stay below e² and
/// keep 1 − (1−ρ)·c positive.
pub fn c_upper_limit(rho: f64) -> f64 {
    if rho >= 1.0 {
        E_SQUARED
    } else {
        E_SQUARED.min(1.0 / (1.0 - rho))
    }
}

/// Expected-objective ratio of geometric rounding with these parameters.
pub fn ratio_bound(rho: f64, gamma: f64, c: f64) -> Result<f64, MscError> {
    check_domain(rho, gamma)?;
    let upper = c_upper_limit(rho);
    if !(c > 1.0 && c < upper) {
        return Err(MscError::Domain(format!(
            "c = {c} outside (1, {upper:.6})"
        )));
    }
    Ok(rho * gamma * (c + 1.0) / (2.0 * (1.0 - (1.0 - rho) * c) * c.ln()))
}

/// Minimizes [`ratio_bound`] over c, returning (c*, ratio). A coarse grid
/// brackets the minimum, then golden-section sharpens it to |Δc| ≤ 1e−9.
pub fn optimal_c(rho: f64, gamma: f64) -> Result<(f64, f64), MscError> {
    check_domain(rho, gamma)?;
    let upper = c_upper_limit(rho);
    if upper <= 1.0 {
        return Err(MscError::Domain(format!(
            "no admissible c: interval (1, {upper:.6}) is empty"
        )));
    }
    let eval = |c: f64| ratio_bound(rho, gamma, c).unwrap_or(f64::INFINITY);

    let grid = 1000;
    let lo_edge = 1.0 + (upper - 1.0) * 1e-9;
    let hi_edge = upper - (upper - 1.0) * 1e-9;
    let at = |i: usize| lo_edge + (hi_edge - lo_edge) * i as f64 / grid as f64;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..=grid {
        let v = eval(at(i));
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(grid));

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (eval(x1), eval(x2));
    while b - a > 1e-10 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2);
        }
    }
    let c_star = 0.5 * (a + b);
    Ok((c_star, eval(c_star)))
}

/// Closed-form vs Monte-Carlo check of the mean first breakpoint at or above
/// k (diagnostic for the schedule analysis).
#[derive(Debug, Clone, Copy)]
pub struct SigmaCheck {
    pub empirical_mean: f64,
    pub closed_form: f64,
}

/// σ(k) is the first breakpoint h·c^j ≥ k; over a uniform offset exponent
/// its mean is ((c−1)/ln c)·k. Returns both the sampled mean and the closed
/// form.
pub fn sigma_expectation_check(c: f64, k: usize, samples: usize, seed: u64) -> SigmaCheck {
    assert!(c > 1.0 && c < E_SQUARED, "growth factor outside (1, e²)");
    assert!(k >= 1, "breakpoint target must be positive");
    assert!(samples >= 1, "need at least one sample");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kf = k as f64;
    let ln_c = c.ln();
    let mut total = 0.0;
    for _ in 0..samples {
        let h = c.powf(rng.gen::<f64>());
        let mut j = ((kf / h).ln() / ln_c).ceil().max(0.0);
        // Guard the roundoff edge where h·c^j lands a hair under k.
        while h * c.powf(j) < kf {
            j += 1.0;
        }
        total += h * c.powf(j);
    }
    SigmaCheck {
        empirical_mean: total / samples as f64,
        closed_form: (c - 1.0) / ln_c * kf,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_at_e_is_half_e_plus_one() {
        let v = ratio_bound(1.0, 1.0, std::f64::consts::E).unwrap();
        assert!((v - (std::f64::consts::E + 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_is_linear_in_gamma() {
        let one = ratio_bound(1.0, 1.0, 3.591).unwrap();
        let two = ratio_bound(1.0, 2.0, 3.591).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-12);
        assert!((one - 1.7957).abs() < 1e-3);
    }

    #[test]
    fn domain_violations_are_rejected() {
        assert!(ratio_bound(0.0, 1.0, 2.0).is_err());
        assert!(ratio_bound(1.0, 0.5, 2.0).is_err());
        assert!(ratio_bound(1.0, 1.0, 1.0).is_err());
        assert!(ratio_bound(1.0, 1.0, 7.5).is_err());
        // c must also stay below 1/(1−ρ).
        assert!(ratio_bound(0.5, 1.0, 2.5).is_err());
        assert!(ratio_bound(0.5, 1.0, 1.9).is_ok());
    }

    #[test]
    fn optimizer_finds_the_stationary_point() {
        let (c, ratio) = optimal_c(1.0, 1.0).unwrap();
        assert!((c * c.ln() - c - 1.0).abs() < 1e-6, "c = {c}");
        assert!((1.7955..=1.7960).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn optimizer_beats_a_grid() {
        let (c_star, best) = optimal_c(1.0, 1.0).unwrap();
        let _ = c_star;
        for i in 1..1000 {
            let c = 1.0 + (E_SQUARED - 1.0) * i as f64 / 1000.0;
            if c > 1.0 && c < E_SQUARED {
                let v = ratio_bound(1.0, 1.0, c).unwrap();
                assert!(best <= v + 1e-12);
            }
        }
    }

    #[test]
    fn optimizer_respects_small_rho() {
        // ρ = 0.7 caps c below 1/0.3 ≈ 3.33.
        let (c, ratio) = optimal_c(0.7, 1.0).unwrap();
        assert!(c > 1.0 && c < 1.0 / 0.3);
        assert!(ratio > 1.7956);
        assert!(optimal_c(0.0, 1.0).is_err());
    }

    #[test]
    fn sigma_closed_form_examples() {
        let chk = sigma_expectation_check(2.0, 1, 10, 0);
        assert!((chk.closed_form - 1.0 / (2f64).ln()).abs() < 1e-12);
        // c → 1⁺: the closed form approaches k.
        let near_one = sigma_expectation_check(1.0 + 1e-9, 5, 1, 0);
        assert!((near_one.closed_form - 5.0).abs() < 1e-6);
    }

    #[test]
    fn sigma_monte_carlo_matches_closed_form() {
        for (c, k) in [(2.0, 1usize), (3.591, 7)] {
            let chk = sigma_expectation_check(c, k, 200_000, 42);
            let rel = (chk.empirical_mean - chk.closed_form).abs() / chk.closed_form;
            assert!(rel < 0.01, "c={c} k={k}: relative error {rel}");
        }
    }
}

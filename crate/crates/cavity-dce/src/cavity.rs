//! Cavity geometry, wall trajectory, mode frequencies, and the coupling
//! coefficients `g` and `v` consumed by every other module.
//!
//! Everything here is a pure function of its arguments. Units: lengths carry
//! the scale of `L0`, times are absolute (seconds with `c = 1`); with the
//! default `L0 = pi` the fundamental frequency is `omega_1 = 1`, so absolute
//! times coincide with times measured in `1/omega_1`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use std::f64::consts::PI;

/// Physical and numerical parameters of one experiment.
///
/// `stop_time` is expressed in units of `1/omega_1`, so `epsilon *
/// stop_time` is the dimensionless secular parameter regardless of `L0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    /// Cavity rest length. Defaults to `pi` so that `omega_1 = 1`.
    pub l0: f64,
    /// Wall oscillation amplitude ratio, `0 <= epsilon < 1`.
    pub epsilon: f64,
    /// Drive ratio `gamma = Omega / omega_1`. Integer values activate the
    /// closed-form resonance results; any positive real is integrable.
    pub gamma: f64,
    /// Mode truncation count `K`.
    pub k_max: usize,
    /// Wall-motion stop time in units of `1/omega_1`.
    pub stop_time: f64,
    /// Fixed RK4 steps per drive period `2 pi / Omega`.
    pub steps_per_period: u32,
}

impl Default for CavityConfig {
    /// The canonical experiment: principal resonance `gamma = 2` at
    /// `epsilon = 1e-3`, driven for `omega_1 T = 100`.
    fn default() -> Self {
        Self {
            l0: PI,
            epsilon: 1e-3,
            gamma: 2.0,
            k_max: 16,
            stop_time: 100.0,
            steps_per_period: 64,
        }
    }
}

impl CavityConfig {
    /// Fundamental mode frequency `omega_1 = pi / L0`.
    pub fn omega1(&self) -> f64 {
        PI / self.l0
    }

    /// Drive frequency `Omega = gamma * omega_1`.
    pub fn drive_frequency(&self) -> f64 {
        self.gamma * self.omega1()
    }

    /// One drive period `tau = 2 pi / Omega`.
    pub fn drive_period(&self) -> f64 {
        2.0 * PI / self.drive_frequency()
    }

    /// Wall-motion stop time in absolute units.
    pub fn stop_time_abs(&self) -> f64 {
        self.stop_time / self.omega1()
    }

    /// The dimensionless secular parameter `epsilon * omega_1 * T`.
    pub fn secular_parameter(&self) -> f64 {
        self.epsilon * self.stop_time
    }

    /// `Some(gamma)` when the drive ratio is an integer (within 1e-9).
    pub fn gamma_integer(&self) -> Option<u32> {
        let rounded = self.gamma.round();
        if (self.gamma - rounded).abs() < 1e-9 && rounded >= 1.0 {
            Some(rounded as u32)
        } else {
            None
        }
    }

    /// Recommended truncation for a given drive ratio: resonance couples
    /// mode `k` to `k +- gamma`, so keep two coupling shells plus margin.
    pub fn recommended_k_max(gamma: f64) -> usize {
        ((4.0 * gamma).ceil() as usize).max(16)
    }

    /// Validate every invariant the rest of the crate relies on.
    pub fn validate(&self) -> Result<()> {
        if !(self.l0 > 0.0) || !self.l0.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "l0 must be positive and finite, got {}",
                self.l0
            )));
        }
        if !(self.epsilon >= 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must satisfy 0 <= epsilon < 1 so L(t) stays positive, got {}",
                self.epsilon
            )));
        }
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "gamma must be positive and finite, got {}",
                self.gamma
            )));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be at least 1".into()));
        }
        if let Some(g) = self.gamma_integer() {
            if self.k_max < g as usize + 1 {
                return Err(Error::InvalidConfig(format!(
                    "k_max = {} truncates away the resonance partner mode: integer gamma = {} needs k_max >= {}",
                    self.k_max,
                    g,
                    g + 1
                )));
            }
        }
        if !(self.stop_time >= 0.0) || !self.stop_time.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "stop_time must be non-negative and finite, got {}",
                self.stop_time
            )));
        }
        if self.steps_per_period == 0 {
            return Err(Error::InvalidConfig(
                "steps_per_period must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// A nonzero signed mode index.
///
/// `k > 0` labels the positive-frequency component of mode `|k|` and `k < 0`
/// the negative-frequency component, folding the `(mode, sign)` pair of the
/// two-component formulation into one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMode(i32);

impl SignedMode {
    pub fn new(value: i32) -> Option<Self> {
        (value != 0).then_some(Self(value))
    }

    pub fn get(self) -> i32 {
        self.0
    }

    pub fn magnitude(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn sign(self) -> Sign {
        if self.0 > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for SignedMode {
    type Output = SignedMode;
    fn neg(self) -> SignedMode {
        SignedMode(-self.0)
    }
}

impl std::fmt::Display for SignedMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Shorthand constructor. Panics on zero, which is not a mode index.
pub fn signed(value: i32) -> SignedMode {
    SignedMode::new(value).expect("mode index must be nonzero")
}

/// One of the two frequency components (or exponential drive directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Fold a positive mode number and this sign into a signed index.
    pub fn apply(self, mode: u32) -> SignedMode {
        let m = mode as i32;
        match self {
            Sign::Plus => SignedMode(m),
            Sign::Minus => SignedMode(-m),
        }
    }
}

/// Wall position `L(t)`.
///
/// Sinusoidal inside the drive window, at rest (`L0`) for `t <= 0` and
/// `t >= T`. The position is continuous at `t = 0`; its derivative is not,
/// and at generic `T` the position itself jumps by `O(epsilon L0)` when the
/// wall snaps home. Both kinks are part of the trajectory definition.
pub fn wall_position(t: f64, cfg: &CavityConfig) -> f64 {
    if t <= 0.0 || t >= cfg.stop_time_abs() {
        cfg.l0
    } else {
        cfg.l0 * (1.0 + cfg.epsilon * (cfg.drive_frequency() * t).sin())
    }
}

/// Logarithmic derivatives of the wall trajectory at time `t` inside the
/// drive window, together with their first-order-in-`epsilon` forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallRates {
    /// `lambda = Ldot / L`.
    pub lambda: f64,
    /// `Lddot / L`.
    pub accel_ratio: f64,
    /// `eps * Omega * cos(Omega t)`, the `O(eps)` form of `lambda`.
    pub lambda_linear: f64,
    /// `-eps * Omega^2 * sin(Omega t)`, the `O(eps)` form of `Lddot / L`.
    pub accel_ratio_linear: f64,
}

impl WallRates {
    /// `lambda_dot = Lddot/L - lambda^2`, needed by the exact equations of
    /// motion.
    pub fn lambda_dot(&self) -> f64 {
        self.accel_ratio - self.lambda * self.lambda
    }
}

/// Rates for `0 < t < T`; outside the window the wall is at rest and all
/// rates are zero.
pub fn wall_log_derivatives(t: f64, cfg: &CavityConfig) -> WallRates {
    if t <= 0.0 || t >= cfg.stop_time_abs() {
        return WallRates {
            lambda: 0.0,
            accel_ratio: 0.0,
            lambda_linear: 0.0,
            accel_ratio_linear: 0.0,
        };
    }
    wall_log_derivatives_unclamped(t, cfg)
}

/// Same rates with the wall treated as eternally periodic (no drive
/// window). This is what the monodromy computation integrates.
pub(crate) fn wall_log_derivatives_unclamped(t: f64, cfg: &CavityConfig) -> WallRates {
    let omega = cfg.drive_frequency();
    let (s, c) = (omega * t).sin_cos();
    let denom = 1.0 + cfg.epsilon * s;
    WallRates {
        lambda: cfg.epsilon * omega * c / denom,
        accel_ratio: -cfg.epsilon * omega * omega * s / denom,
        lambda_linear: cfg.epsilon * omega * c,
        accel_ratio_linear: -cfg.epsilon * omega * omega * s,
    }
}

/// Which form of the time-dependent mode frequency to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyVariant {
    /// `k pi / L(t)`.
    Exact,
    /// `(k pi / L0) [1 - eps sin(Omega t)]`.
    Linearized,
}

/// Time-dependent frequency of mode `k >= 1`.
pub fn mode_frequency(k: u32, t: f64, cfg: &CavityConfig, variant: FrequencyVariant) -> f64 {
    debug_assert!(k >= 1);
    match variant {
        FrequencyVariant::Exact => k as f64 * PI / wall_position(t, cfg),
        FrequencyVariant::Linearized => {
            let drive = if t <= 0.0 || t >= cfg.stop_time_abs() {
                0.0
            } else {
                cfg.epsilon * (cfg.drive_frequency() * t).sin()
            };
            k as f64 * cfg.omega1() * (1.0 - drive)
        }
    }
}

/// Intermode coupling coefficient `g_{kj}` on signed indices:
/// `(-1)^(k-j) * 2kj / (j^2 - k^2)`, and zero whenever `|j| = |k|` (both the
/// `j = k` and `j = -k` denominators vanish; this extension reproduces the
/// two-component coupling exactly, see [`coupling_v_components`]).
pub fn coupling_g(k: SignedMode, j: SignedMode) -> f64 {
    let (ki, ji) = (k.get(), j.get());
    if ki.abs() == ji.abs() {
        return 0.0;
    }
    let (kf, jf) = (ki as f64, ji as f64);
    let sign = if (ki - ji).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    sign * 2.0 * kf * jf / (jf * jf - kf * kf)
}

/// Drive-coupling coefficient `v^s_{k,j}` on signed indices:
///
/// ```text
/// v^s_{k,j} = gamma g_{kj} sqrt|j/k| (1/2 + s gamma / (4j)) - s (k/2) d_{|k|,|j|}
/// ```
///
/// The first term transfers amplitude between different mode magnitudes;
/// the Kronecker term is the frequency modulation of each mode by the
/// moving wall.
pub fn coupling_v(s: Sign, k: SignedMode, j: SignedMode, gamma: f64) -> f64 {
    let (kf, jf) = (k.get() as f64, j.get() as f64);
    let sv = s.value();
    let mut out = gamma * coupling_g(k, j) * (jf / kf).abs().sqrt() * (0.5 + sv * gamma / (4.0 * jf));
    if k.magnitude() == j.magnitude() {
        out -= sv * kf / 2.0;
    }
    out
}

/// The four-index form `v^s_{k sigma, j sigma'}` on positive mode numbers,
/// folded through the signed-index convention (`sigma` becomes the sign of
/// `k`, `sigma'` the sign of `j`).
pub fn coupling_v_components(
    s: Sign,
    k: u32,
    sigma: Sign,
    j: u32,
    sigma_prime: Sign,
    gamma: f64,
) -> f64 {
    coupling_v(s, sigma.apply(k), sigma_prime.apply(j), gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn wall_at_rest_outside_window() {
        let cfg = CavityConfig::default();
        assert_eq!(wall_position(0.0, &cfg), cfg.l0);
        assert_eq!(wall_position(-5.0, &cfg), cfg.l0);
        assert_eq!(wall_position(cfg.stop_time_abs() + 1.0, &cfg), cfg.l0);
    }

    #[test]
    fn wall_peaks_at_quarter_drive_period() {
        let cfg = CavityConfig {
            epsilon: 0.01,
            ..CavityConfig::default()
        };
        // gamma = 2 so Omega = 2 and sin(Omega t) = 1 at t = pi/4
        let l = wall_position(PI / 4.0, &cfg);
        assert!(close(l, PI * 1.01, 1e-14), "got {l}");
    }

    #[test]
    fn wall_position_is_continuous_at_start() {
        let cfg = CavityConfig {
            epsilon: 0.3,
            ..CavityConfig::default()
        };
        let before = wall_position(-1e-12, &cfg);
        let after = wall_position(1e-12, &cfg);
        assert!(close(before, after, 1e-10));
    }

    #[test]
    fn log_derivatives_match_hand_values() {
        let cfg = CavityConfig {
            epsilon: 0.01,
            ..CavityConfig::default()
        };
        // At t -> 0+ with Omega = 2: lambda = eps*Omega = 0.02 exactly.
        let r = wall_log_derivatives(1e-300, &cfg);
        assert!(close(r.lambda, 0.02, 1e-12), "lambda = {}", r.lambda);
        // cos peak of sin: lambda = 0 at Omega t = pi/2.
        let r = wall_log_derivatives(PI / 4.0, &cfg);
        assert!(r.lambda.abs() < 1e-12);
        // Static wall.
        let still = CavityConfig {
            epsilon: 0.0,
            ..CavityConfig::default()
        };
        let r = wall_log_derivatives(1.0, &still);
        assert_eq!((r.lambda, r.accel_ratio), (0.0, 0.0));
    }

    #[test]
    fn mode_frequency_examples() {
        let cfg = CavityConfig::default();
        assert!(close(
            mode_frequency(1, 0.3, &cfg, FrequencyVariant::Exact)
                * (1.0 + cfg.epsilon * (2.0 * 0.3f64).sin()),
            1.0,
            1e-12
        ));
        let still = CavityConfig {
            epsilon: 0.0,
            ..CavityConfig::default()
        };
        assert!(close(
            mode_frequency(3, 17.0, &still, FrequencyVariant::Exact),
            3.0,
            1e-12
        ));
        // k = 3, eps = 0.01, sin(Omega t) = 1 -> linearized 2.97.
        let cfg = CavityConfig {
            epsilon: 0.01,
            ..CavityConfig::default()
        };
        assert!(close(
            mode_frequency(3, PI / 4.0, &cfg, FrequencyVariant::Linearized),
            2.97,
            1e-12
        ));
    }

    #[test]
    fn frequency_variants_agree_to_second_order() {
        // |exact - linearized| = O(eps^2): halving eps divides the squared
        // difference by ~16.
        let t = 0.7;
        let diff = |eps: f64| {
            let cfg = CavityConfig {
                epsilon: eps,
                ..CavityConfig::default()
            };
            let d = mode_frequency(2, t, &cfg, FrequencyVariant::Exact)
                - mode_frequency(2, t, &cfg, FrequencyVariant::Linearized);
            d * d
        };
        let ratio = diff(1e-2) / diff(5e-3);
        assert!((14.0..=18.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn coupling_g_hand_values() {
        assert_eq!(coupling_g(signed(1), signed(1)), 0.0);
        assert_eq!(coupling_g(signed(2), signed(-2)), 0.0);
        assert!(close(coupling_g(signed(1), signed(2)), -4.0 / 3.0, 1e-15));
        assert!(close(coupling_g(signed(2), signed(1)), 4.0 / 3.0, 1e-15));
        assert!(close(coupling_g(signed(-3), signed(-1)), -3.0 / 4.0, 1e-15));
    }

    #[test]
    fn coupling_v_hand_values() {
        let s3 = 3.0f64.sqrt();
        // Feeds the corner entries of the 4x4 example matrix.
        assert!(close(
            coupling_v(Sign::Minus, signed(-3), signed(-1), 2.0),
            -s3 / 2.0,
            1e-15
        ));
        // Pure frequency-modulation entry: g vanishes at |k| = |j|.
        assert!(close(
            coupling_v(Sign::Plus, signed(1), signed(-1), 2.0),
            -0.5,
            1e-15
        ));
    }

    #[test]
    fn resonant_coupling_magnitude_is_sqrt_nk_over_2() {
        // |v^+_{k+, n-}| = sqrt(nk)/2 whenever n + k = gamma.
        for n in 1u32..=20 {
            for k in 1u32..=20 {
                let gamma = (n + k) as f64;
                let v = coupling_v_components(Sign::Plus, k, Sign::Plus, n, Sign::Minus, gamma);
                let expect = ((n * k) as f64).sqrt() / 2.0;
                assert!(
                    close(v.abs(), expect, 1e-12),
                    "n={n} k={k}: |v| = {} vs {expect}",
                    v.abs()
                );
            }
        }
        // Spot value from the resonance table: n = 1, k = 3, gamma = 4.
        let v = coupling_v_components(Sign::Plus, 3, Sign::Plus, 1, Sign::Minus, 4.0);
        assert!(close(v.abs(), 3.0f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn config_validation_rejects_bad_fields() {
        let mut cfg = CavityConfig::default();
        cfg.epsilon = 1.0;
        assert!(cfg.validate().is_err());
        let mut cfg = CavityConfig::default();
        cfg.k_max = 2; // gamma = 2 needs k_max >= 3
        assert!(cfg.validate().is_err());
        let mut cfg = CavityConfig::default();
        cfg.gamma = -1.0;
        assert!(cfg.validate().is_err());
        assert!(CavityConfig::default().validate().is_ok());
    }

    #[test]
    fn recommended_k_max_has_floor_sixteen() {
        assert_eq!(CavityConfig::recommended_k_max(2.0), 16);
        assert_eq!(CavityConfig::recommended_k_max(5.0), 20);
        assert_eq!(CavityConfig::recommended_k_max(6.0), 24);
    }

    proptest! {
        #[test]
        fn coupling_g_is_antisymmetric(k in -20i32..=20, j in -20i32..=20) {
            prop_assume!(k != 0 && j != 0 && k.abs() != j.abs());
            let forward = coupling_g(signed(k), signed(j));
            let backward = coupling_g(signed(j), signed(k));
            prop_assert!((forward + backward).abs() < 1e-12);
        }

        #[test]
        fn coupling_g_is_even_under_joint_negation(k in -20i32..=20, j in -20i32..=20) {
            prop_assume!(k != 0 && j != 0);
            let plain = coupling_g(signed(k), signed(j));
            let negated = coupling_g(signed(-k), signed(-j));
            prop_assert!((plain - negated).abs() < 1e-12);
        }

        #[test]
        fn wall_position_stays_positive(t in -10.0f64..400.0, eps in 0.0f64..0.99) {
            let cfg = CavityConfig { epsilon: eps, ..CavityConfig::default() };
            prop_assert!(wall_position(t, &cfg) > 0.0);
        }
    }

    #[test]
    fn four_index_wrapper_matches_signed_form() {
        for &s in &[Sign::Plus, Sign::Minus] {
            for &sigma in &[Sign::Plus, Sign::Minus] {
                for &sigma_p in &[Sign::Plus, Sign::Minus] {
                    for k in 1u32..=6 {
                        for j in 1u32..=6 {
                            let four = coupling_v_components(s, k, sigma, j, sigma_p, 3.0);
                            let folded =
                                coupling_v(s, sigma.apply(k), sigma_p.apply(j), 3.0);
                            assert_eq!(four, folded);
                        }
                    }
                }
            }
        }
    }
}

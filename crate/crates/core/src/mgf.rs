//! The implicit moment generating function of the central limit law, in
//! double precision.
//!
//! `T(t) = ∫_t^1 s/(s² - s + 1) ds`; `S` inverts `exp ∘ T` on `[0, ∞)`;
//! `f(z, x) = 1 / (√(2zx + 1 - 2z) S(√((2zx + 1 - 2z)/(1 - 2z))))` and
//! `M(z) = 1 / S(1/√(1 - 2z²))`.
//!
//! Internally `T` is evaluated through `G(s) = T(1 - s)`, which keeps full
//! relative precision near `t = 1`, where `M` is evaluated for small `z`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MgfConfig {
    /// Absolute tolerance on the root `t = S(u)`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Gauss-Legendre nodes for `∫_0^x f(z, t) dt`.
    pub quadrature_nodes: usize,
    /// Highest moment order recovered from the series of `M`.
    pub series_order: usize,
}

impl Default for MgfConfig {
    fn default() -> Self {
        MgfConfig {
            tolerance: 1e-15,
            max_iterations: 200,
            quadrature_nodes: 48,
            series_order: 12,
        }
    }
}

impl MgfConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::OutOfRange(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        if self.quadrature_nodes < 16 {
            return Err(Error::OutOfRange(format!(
                "{} quadrature nodes, need at least 16",
                self.quadrature_nodes
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::OutOfRange("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `T(0) = √3 π / 9`.
pub fn t_at_zero() -> f64 {
    SQRT3 * PI / 9.0
}

/// Upper end `exp(T(0))` of the domain of `S`.
pub fn s_domain_max() -> f64 {
    t_at_zero().exp()
}

// T(1 - s) = -½ log(1 - s + s²) + (√3/3) atan(√3 s / (2 - s)), for s <= 1.
fn g(s: f64) -> f64 {
    -0.5 * (s * s - s).ln_1p() + SQRT3 / 3.0 * (SQRT3 * s / (2.0 - s)).atan()
}

fn g_prime(s: f64) -> f64 {
    (1.0 - s) / (1.0 - s + s * s)
}

/// `T(t)` for `t >= 0`.
pub fn big_t(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange(format!("T({t}) needs a finite t >= 0")));
    }
    Ok(g(1.0 - t))
}

/// `T'(t) = -t / (t² - t + 1)`.
pub fn big_t_prime(t: f64) -> f64 {
    -t / (t * t - t + 1.0)
}

// Solves G(s) = y for s <= 1, i.e. returns 1 - S(e^y).
fn solve_g(y: f64, cfg: &MgfConfig) -> Result<f64> {
    cfg.validate()?;
    let top = t_at_zero();
    // exp(T(0)) itself may round to a log just above T(0)
    let y = if y > top && y <= top * (1.0 + 4.0 * f64::EPSILON) {
        top
    } else {
        y
    };
    if !(y <= top) || !y.is_finite() {
        return Err(Error::OutOfRange(format!(
            "log u = {y} exceeds T(0) = {top}"
        )));
    }
    // bracket in t = 1 - s: exp∘T decreases on [0, ∞)
    let (mut t_lo, mut t_hi) = (0.0_f64, 4.0_f64);
    let mut expansions = 0;
    while g(1.0 - t_hi) > y {
        t_hi *= 2.0;
        expansions += 1;
        if expansions > 1000 {
            return Err(Error::NoConvergence(expansions));
        }
    }
    let mut iterations = 0;
    while t_hi - t_lo > 1e-3 * (1.0 + t_lo) {
        let mid = 0.5 * (t_lo + t_hi);
        if g(1.0 - mid) > y {
            t_lo = mid;
        } else {
            t_hi = mid;
        }
        iterations += 1;
        if iterations > cfg.max_iterations {
            return Err(Error::NoConvergence(iterations));
        }
    }
    // Newton in s, kept inside the bracket; stops at the tolerance or when
    // rounding stalls the steps
    let (s_lo, s_hi) = (1.0 - t_hi, 1.0 - t_lo);
    let mut s = 0.5 * (s_lo + s_hi);
    let mut last_step = f64::INFINITY;
    for _ in 0..cfg.max_iterations {
        let r = g(s) - y;
        if r == 0.0 {
            return Ok(s);
        }
        let mut next = s - r / g_prime(s);
        if !(next >= s_lo && next <= s_hi) {
            next = 0.5 * (s + if next < s_lo { s_lo } else { s_hi });
        }
        let step = (next - s).abs();
        if step <= cfg.tolerance * (1.0 + s.abs()) || (step >= last_step && step < 1e-9) {
            return Ok(next);
        }
        s = next;
        last_step = step;
    }
    Err(Error::NoConvergence(cfg.max_iterations))
}

/// `S(u)`, the `t >= 0` with `exp(T(t)) = u`, for `0 < u <= exp(T(0))`.
pub fn big_s(u: f64, cfg: &MgfConfig) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::OutOfRange(format!("S({u}) needs u > 0")));
    }
    let s = solve_g(u.ln(), cfg)?;
    Ok((1.0 - s).max(0.0))
}

fn check_f_domain(z: f64, x: f64) -> Result<()> {
    if !(z > 0.0 && z < 0.25) {
        return Err(Error::OutOfRange(format!("z = {z} outside (0, 1/4)")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `f(z, x) = Σ P_n(x) zⁿ` through its implicit closed form.
pub fn f_of(z: f64, x: f64, cfg: &MgfConfig) -> Result<f64> {
    check_f_domain(z, x)?;
    let w = 2.0 * z * x + 1.0 - 2.0 * z;
    let s = big_s((w / (1.0 - 2.0 * z)).sqrt(), cfg)?;
    Ok(1.0 / (w.sqrt() * s))
}

/// `M(z)` for `|z| < 1/2`.
pub fn mgf(z: f64, cfg: &MgfConfig) -> Result<f64> {
    Ok(1.0 + mgf_minus_one(z, cfg)?)
}

/// `M(z) - 1`, without the cancellation of forming `M` first.
pub fn mgf_minus_one(z: f64, cfg: &MgfConfig) -> Result<f64> {
    if !(z.abs() < 0.5) {
        return Err(Error::OutOfRange(format!(
            "|z| = {} must be below 1/2",
            z.abs()
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    // log S^{-1}(M) = -½ log(1 - 2z²)
    let s = solve_g(-0.5 * (-2.0 * z * z).ln_1p(), cfg)?;
    Ok(s / (1.0 - s))
}

fn g_complex(s: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    -0.5 * (one + s * s - s).ln() + SQRT3 / 3.0 * (SQRT3 * s / (2.0 - s)).atan()
}

/// `M(z)` for complex `z` with `|z| <= 0.3`, continuing the real formula on a
/// disk where no branch cut is met.
pub fn mgf_complex(z: Complex64, cfg: &MgfConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !(z.norm() <= 0.3) {
        return Err(Error::OutOfRange(format!("|z| = {} above 0.3", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let y = -0.5 * (one - 2.0 * z * z).ln();
    let mut s = y;
    for _ in 0..cfg.max_iterations {
        let step = (g_complex(s) - y) / ((one - s) / (one - s + s * s));
        s -= step;
        if step.norm() <= cfg.tolerance * (1.0 + s.norm()) {
            return Ok(one / (one - s));
        }
    }
    Err(Error::NoConvergence(cfg.max_iterations))
}

/// Moments `m_0, ..., m_order` of the law as Taylor coefficients of `M`,
/// recovered from values on the circle `|z| = radius` (trapezoidal rule for
/// the Cauchy integral).
pub fn series_coefficients(radius: f64, cfg: &MgfConfig) -> Result<Vec<f64>> {
    if !(radius > 0.0 && radius <= 0.3) {
        return Err(Error::OutOfRange(format!(
            "radius {radius} outside (0, 0.3]"
        )));
    }
    let order = cfg.series_order;
    let k = (4 * (order + 1)).max(64);
    let values: Vec<Complex64> = (0..k)
        .map(|j| {
            mgf_complex(
                Complex64::from_polar(radius, 2.0 * PI * j as f64 / k as f64),
                cfg,
            )
        })
        .collect::<Result<_>>()?;
    Ok((0..=order)
        .map(|n| {
            let sum: Complex64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (n * j) as f64 / k as f64))
                .sum();
            sum.re / k as f64 / radius.powi(n as i32)
        })
        .collect())
}

/// Even moments `m_2, m_4, ..., m_{2·degree}` from a degree-`degree` polynomial
/// in `v = z²` fitted to `M - 1` at Chebyshev nodes of `0 <= z <= radius`.
/// Real-axis fitting loses digits quickly; see the tests for what it reaches.
pub fn series_coefficients_chebyshev(
    radius: f64,
    degree: usize,
    cfg: &MgfConfig,
) -> Result<Vec<f64>> {
    if !(radius > 0.0 && radius < 0.5) || degree == 0 {
        return Err(Error::OutOfRange(format!(
            "radius {radius}, degree {degree}"
        )));
    }
    let r2 = radius * radius;
    let k = 4 * (degree + 1);
    let nodes: Vec<f64> = (0..k)
        .map(|j| (PI * (j as f64 + 0.5) / k as f64).cos())
        .collect();
    let values: Vec<f64> = nodes
        .iter()
        .map(|&s| mgf_minus_one((r2 * (s + 1.0) / 2.0).sqrt(), cfg))
        .collect::<Result<_>>()?;
    // discrete Chebyshev projection
    let cheb: Vec<f64> = (0..=degree)
        .map(|m| {
            let c: f64 = nodes
                .iter()
                .zip(&values)
                .map(|(&s, &f)| f * (m as f64 * s.acos()).cos())
                .sum::<f64>();
            c * if m == 0 { 1.0 } else { 2.0 } / k as f64
        })
        .collect();
    // T_m(2w - 1) as coefficient vectors in w
    let mut power = vec![0.0; degree + 1];
    let (mut prev, mut cur) = (vec![1.0], vec![-1.0, 2.0]);
    for (m, &c) in cheb.iter().enumerate() {
        let tm: &[f64] = if m == 0 { &prev } else { &cur };
        for (p, &t) in power.iter_mut().zip(tm) {
            *p += c * t;
        }
        if m >= 1 {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, &t) in cur.iter().enumerate() {
                next[i] -= 2.0 * t;
                next[i + 1] += 4.0 * t;
            }
            for (i, &t) in prev.iter().enumerate() {
                next[i] -= t;
            }
            prev = std::mem::replace(&mut cur, next);
        }
    }
    Ok((1..=degree).map(|j| power[j] / r2.powi(j as i32)).collect())
}

/// `f(z, x) - 1 - z [∫_0^x f(z, t) dt + (1 - √(2zx + 1 - 2z))/z] f(z, x)`.
pub fn integral_residual(z: f64, x: f64, cfg: &MgfConfig) -> Result<f64> {
    check_f_domain(z, x)?;
    cfg.validate()?;
    let fx = f_of(z, x, cfg)?;
    let integral = if x == 0.0 {
        0.0
    } else {
        let rule = GaussLegendre::new(NonZeroUsize::new(cfg.quadrature_nodes).expect("validated"));
        let mut err = None;
        let v = rule.integrate(0.0, x, |t| match f_of(z, t, cfg) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        v
    };
    let w = (2.0 * z * x + 1.0 - 2.0 * z).sqrt();
    Ok(fx - 1.0 - z * (integral + (1.0 - w) / z) * fx)
}

/// Largest residual of `u u' - u + ξ` along the curve `ξ = C e^{T(t)}`,
/// `u = t ξ`, `C = √(1 - 2z)`, over `samples` points with `ξ` in
/// `[√(1 - 2z), 1]`. Derivatives are central differences in `t`.
pub fn abel_residual(z: f64, samples: usize, cfg: &MgfConfig) -> Result<f64> {
    check_f_domain(z, 1.0)?;
    let c = (1.0 - 2.0 * z).sqrt();
    let t_start = big_s(1.0 / c, cfg)?;
    let xi = |t: f64| -> Result<f64> { Ok(c * big_t(t)?.exp()) };
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for k in 0..samples.max(2) {
        let t = t_start + (1.0 - t_start) * k as f64 / (samples.max(2) - 1) as f64;
        let (xp, xm) = (xi(t + h)?, xi(t - h)?);
        let (up, um) = ((t + h) * xp, (t - h) * xm);
        let du = (up - um) / (2.0 * h);
        let dxi = (xp - xm) / (2.0 * h);
        let x0 = xi(t)?;
        let u = t * x0;
        worst = worst.max((u * du / dxi - u + x0).abs());
    }
    Ok(worst)
}

/// Largest `|exp(T(S(u))) - u|` over `samples` points of `(0, exp(T(0))]`.
pub fn round_trip_error(samples: usize, cfg: &MgfConfig) -> Result<f64> {
    let top = s_domain_max();
    let mut worst = 0.0_f64;
    for k in 1..=samples.max(1) {
        let u = top * k as f64 / samples.max(1) as f64;
        let t = big_s(u, cfg)?;
        worst = worst.max((big_t(t)?.exp() - u).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> MgfConfig {
        MgfConfig::default()
    }

    // the closed form exactly as written with log and arctan of t
    fn t_literal(t: f64) -> f64 {
        -0.5 * (t * t - t + 1.0).ln() - SQRT3 / 3.0 * (((2.0 * t - 1.0) / SQRT3).atan() - PI / 6.0)
    }

    fn t_quadrature(t: f64) -> f64 {
        // composite Gauss-Legendre
        let rule = GaussLegendre::new(NonZeroUsize::new(20).unwrap());
        let pieces = 50;
        (0..pieces)
            .map(|k| {
                let a = t + (1.0 - t) * k as f64 / pieces as f64;
                let b = t + (1.0 - t) * (k + 1) as f64 / pieces as f64;
                rule.integrate(a, b, |s| s / (s * s - s + 1.0))
            })
            .sum()
    }

    #[test]
    fn t_values() {
        assert_eq!(big_t(1.0).unwrap(), 0.0);
        for t in [0.0, 0.1, 0.3, 0.5, 0.9, 1.7, 3.0, 10.0] {
            let v = big_t(t).unwrap();
            assert!((v - t_literal(t)).abs() < 1e-14, "{t}");
            assert!((v - t_quadrature(t)).abs() < 1e-12, "{t}");
        }
        assert!(big_t(0.5).unwrap() > big_t(0.9).unwrap());
        assert!(big_t(0.9).unwrap() > 0.0);
        assert!((big_t(0.0).unwrap() - t_at_zero()).abs() < 1e-15);
        assert!(big_t(-0.1).is_err());
        let t = 0.7;
        let num = (big_t(t + 1e-6).unwrap() - big_t(t - 1e-6).unwrap()) / 2e-6;
        assert!((num - big_t_prime(t)).abs() < 1e-8);
    }

    #[test]
    fn s_values() {
        let c = cfg();
        assert!((big_s(1.0, &c).unwrap() - 1.0).abs() < 1e-15);
        let u = big_t(2.0).unwrap().exp();
        assert!((big_s(u, &c).unwrap() - 2.0).abs() < 1e-12);
        assert!(big_s(s_domain_max(), &c).unwrap() < 1e-7);
        assert!(big_s(s_domain_max() * (1.0 + 1e-9), &c).is_err());
        assert!(big_s(0.0, &c).is_err());
        assert!(round_trip_error(200, &c).unwrap() < 1e-10);
        // large t: exp(T(t)) ~ e^{T(∞ offset)}/t
        let u = big_t(1e6).unwrap().exp();
        assert!((big_s(u, &c).unwrap() / 1e6 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn f_at_zero_and_positivity() {
        let c = cfg();
        for z in [0.01, 0.1, 0.2, 0.249] {
            let f0 = f_of(z, 0.0, &c).unwrap();
            assert!((f0 - 1.0 / (1.0 - 2.0 * z).sqrt()).abs() < 1e-13, "{z}");
            // the integral equation at x = 0
            assert!((f0 - 1.0 - (1.0 - (1.0 - 2.0 * z).sqrt()) * f0).abs() < 1e-13);
            for k in 0..=10 {
                assert!(f_of(z, k as f64 / 10.0, &c).unwrap() > 0.0);
            }
        }
        assert!(f_of(0.0, 0.5, &c).is_err());
        assert!(f_of(0.25, 0.5, &c).is_err());
        assert!(f_of(0.1, 1.5, &c).is_err());
    }

    #[test]
    fn f_matches_mgf_at_one() {
        let c = cfg();
        for z in [0.1, 0.3, 0.45] {
            let m = mgf(z, &c).unwrap();
            assert!((f_of(z * z, 1.0, &c).unwrap() - m).abs() < 1e-13);
        }
    }

    #[test]
    fn integral_equation() {
        let c = cfg();
        assert!(integral_residual(0.1, 0.5, &c).unwrap().abs() < 1e-8);
        for z in [0.02, 0.12, 0.24] {
            for x in [0.0, 0.3, 1.0] {
                assert!(integral_residual(z, x, &c).unwrap().abs() < 1e-8, "{z} {x}");
            }
        }
    }

    #[test]
    fn abel_equation() {
        for z in [0.05, 0.15, 0.24] {
            assert!(abel_residual(z, 25, &cfg()).unwrap() < 1e-8);
        }
    }

    #[test]
    fn mgf_basics() {
        let c = cfg();
        assert_eq!(mgf(0.0, &c).unwrap(), 1.0);
        assert_eq!(mgf(0.2, &c).unwrap(), mgf(-0.2, &c).unwrap());
        assert!((mgf(1e-4, &c).unwrap() - 1.0).abs() <= 2e-8);
        let h = 1e-3;
        let second = (mgf(h, &c).unwrap() - 2.0 + mgf(-h, &c).unwrap()) / (h * h);
        assert!((second - 2.0).abs() < 1e-4);
        assert!(mgf(0.5, &c).is_err());
        assert!(mgf(0.499, &c).unwrap() > 1.0);
        let zc = Complex64::new(0.2, 0.0);
        assert!((mgf_complex(zc, &c).unwrap().re - mgf(0.2, &c).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn series_recovers_low_moments() {
        let c = cfg();
        let m = series_coefficients(0.15, &c).unwrap();
        assert!((m[0] - 1.0).abs() < 1e-12);
        assert!((m[2] - 1.0).abs() < 1e-10);
        assert!((m[4] - 2.0).abs() < 1e-9);
        for odd in [1, 3, 5] {
            assert!(m[odd].abs() < 1e-9);
        }
        let cheb = series_coefficients_chebyshev(0.15, 8, &c).unwrap();
        assert!((cheb[0] - 1.0).abs() < 1e-10);
        assert!((cheb[1] - 2.0).abs() < 1e-8);
        assert!((cheb[3] / (278.0 / 24.0) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn config_validation() {
        let bad = MgfConfig {
            quadrature_nodes: 8,
            ..MgfConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = MgfConfig {
            tolerance: 0.0,
            ..MgfConfig::default()
        };
        assert!(big_s(1.0, &bad).is_err());
    }
}

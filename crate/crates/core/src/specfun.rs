//! Bessel functions of half-integer order and the Fourier transform of the
//! normalized surface measure on the unit sphere.
//!
//! Conventions follow `f̂(ξ) = ∫ e^{-2πi x·ξ} f(x) dx` throughout the crate.
//! With that convention the transform of the normalized measure on the unit
//! sphere in `R^d` is
//!
//! ```text
//! Ω_d(u) = Γ(d/2) (πu)^{-(d-2)/2} J_{(d-2)/2}(2πu),      Ω_d(0) = 1.
//! ```

use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

/// Order `ν` of a Bessel function, restricted to `ν ∈ {0, 1/2, 1, 3/2, ...}`.
///
/// Stored as the integer `2ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BesselOrder(u32);

impl BesselOrder {
    pub const ZERO: BesselOrder = BesselOrder(0);

    pub fn integer(n: u32) -> Self {
        BesselOrder(2 * n)
    }

    /// `ν = (2ν)/2`.
    pub fn from_twice(twice_nu: u32) -> Self {
        BesselOrder(twice_nu)
    }

    pub fn new(nu: f64) -> Result<Self> {
        let twice = 2.0 * nu;
        if !(nu >= 0.0) || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(domain(format!(
                "Bessel order must be a non-negative half-integer, got {nu}"
            )));
        }
        Ok(BesselOrder(twice as u32))
    }

    /// The order `(d-2)/2` attached to the sphere `S^{d-1}`.
    pub fn for_sphere(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedDimension {
                d,
                reason: "d >= 2 required",
            });
        }
        Ok(BesselOrder(d as u32 - 2))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

// Above this argument integer orders switch from Miller's backward recurrence
// to the Hankel expansion; the smallest Hankel term there is ~e^{-2x}.
const HANKEL_MIN_INTEGER: f64 = 25.0;
// Half-odd orders have a terminating Hankel expansion; below this argument the
// power series is used to avoid cancellation between sin and cos terms.
const SERIES_MAX_HALF_ODD: f64 = 8.0;

/// `J_ν(x)` for `x ≥ 0`, absolute error ≲ 1e-13 for `x ≤ 1e3`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("bessel_j requires finite x >= 0, got {x}")));
    }
    Ok(bessel_j_unchecked(order, x))
}

pub(crate) fn bessel_j_unchecked(order: BesselOrder, x: f64) -> f64 {
    if x == 0.0 {
        return if order.0 == 0 { 1.0 } else { 0.0 };
    }
    if order.is_integer() {
        let n = order.0 / 2;
        if x < HANKEL_MIN_INTEGER {
            miller(n, x)
        } else {
            hankel(order.value(), x)
        }
    } else if x < SERIES_MAX_HALF_ODD {
        power_series(order, x)
    } else {
        hankel(order.value(), x)
    }
}

fn power_series(order: BesselOrder, x: f64) -> f64 {
    let nu = order.value();
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half.powf(nu) / gamma_half(order.0 + 2);
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn miller(n: u32, x: f64) -> f64 {
    // start order: J_m(x) is negligible once m exceeds x by ~40 for x < 25
    let mut m = n.max(x.ceil() as u32) + 40;
    m += m % 2;
    let two_over_x = 2.0 / x;
    let mut next = 0.0;
    let mut cur = 1.0e-30;
    let mut even_sum = 0.0;
    let mut target = 0.0;
    for k in (1..=m).rev() {
        if k == n {
            target = cur;
        }
        if k % 2 == 0 {
            even_sum += cur;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1.0e250 {
            cur *= 1.0e-250;
            next *= 1.0e-250;
            even_sum *= 1.0e-250;
            target *= 1.0e-250;
        }
    }
    if n == 0 {
        target = cur;
    }
    target / (cur + 2.0 * even_sum)
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev_abs = f64::INFINITY;
    for k in 1..400u32 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let t = a.abs();
        if t == 0.0 {
            break;
        }
        if t > prev_abs {
            // asymptotic series started to diverge; previous term was smallest
            break;
        }
        prev_abs = t;
        // even k feed P with sign (-1)^{k/2}; odd k feed Q with sign (-1)^{(k-1)/2}
        let signed = if (k / 2) % 2 == 0 { a } else { -a };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if t < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `Γ(k/2)` for positive integer `k`, exact up to rounding.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k > 0, "gamma_half(0) is a pole");
    if k.is_multiple_of(2) {
        (1..k / 2).fold(1.0, |acc, j| acc * j as f64)
    } else {
        let mut g = PI.sqrt();
        let mut x = 0.5;
        for _ in 0..(k - 1) / 2 {
            g *= x;
            x += 1.0;
        }
        g
    }
}

/// Surface area `|S^{d-1}| = 2π^{d/2}/Γ(d/2)`.
pub fn sphere_area(d: usize) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / gamma_half(d as u32)
}

/// Volume of the unit ball in `R^d`.
pub fn ball_volume(d: usize) -> f64 {
    PI.powf(d as f64 / 2.0) / gamma_half(d as u32 + 2)
}

/// `Λ_ν(z) = Γ(ν+1) (2/z)^ν J_ν(z)`, the entire function with `Λ_ν(0) = 1`.
pub fn normalized_bessel(order: BesselOrder, z: f64) -> f64 {
    let z = z.abs();
    let nu = order.value();
    if z < 4.0 {
        let q = -0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..100 {
            let k = k as f64;
            term *= q / (k * (k + nu));
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum
    } else {
        gamma_half(order.0 + 2) * (2.0 / z).powf(nu) * bessel_j_unchecked(order, z)
    }
}

/// `Ω_d(u)`: Fourier transform of the normalized surface measure on
/// `S^{d-1}` at any frequency of modulus `u`.
pub fn surface_ft(d: usize, u: f64) -> Result<f64> {
    let order = BesselOrder::for_sphere(d)?;
    if !(u >= 0.0) || !u.is_finite() {
        return Err(domain(format!(
            "surface_ft requires finite u >= 0, got {u}"
        )));
    }
    Ok(normalized_bessel(order, 2.0 * PI * u))
}

/// `∫_{|ξ|≤R} e^{-2πi y·ξ} dξ` for `|y| = dist`.
pub fn ball_indicator_ft(d: usize, radius: f64, dist: f64) -> f64 {
    let order = BesselOrder::from_twice(d as u32);
    ball_volume(d) * radius.powi(d as i32) * normalized_bessel(order, 2.0 * PI * radius * dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain power series, the slow reference for small arguments.
    fn series_oracle(nu: f64, x: f64) -> f64 {
        let half = 0.5 * x;
        let mut term = half.powf(nu) / statrs::function::gamma::gamma(nu + 1.0);
        let mut sum = term;
        for k in 1..400 {
            let k = k as f64;
            term *= -half * half / (k * (k + nu));
            sum += term;
        }
        sum
    }

    /// Bessel's integral `J_n(x) = (1/π)∫_0^π cos(nτ - x sin τ) dτ`, evaluated
    /// with the trapezoid rule on the periodic extension (exponentially
    /// convergent once the node count exceeds x by a margin).
    fn integral_oracle(n: u32, x: f64) -> f64 {
        let m = (2.0 * x) as usize + 200;
        let h = 2.0 * PI / m as f64;
        let mut s = 0.0;
        for j in 0..m {
            let tau = j as f64 * h;
            s += (n as f64 * tau - x * tau.sin()).cos();
        }
        s / m as f64
    }

    fn spherical_oracle(twice: u32, x: f64) -> f64 {
        // J_{1/2}, J_{3/2}, ... through upward recurrence from closed forms
        let c = (2.0 / (PI * x)).sqrt();
        let mut jm = c * x.cos(); // J_{-1/2}
        let mut j = c * x.sin(); // J_{1/2}
        let mut nu = 0.5;
        while ((2.0 * nu) as u32) < twice {
            let jn = 2.0 * nu / x * j - jm;
            jm = j;
            j = jn;
            nu += 1.0;
        }
        j
    }

    #[test]
    fn order_zero_at_origin() {
        assert_eq!(bessel_j(BesselOrder::ZERO, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(BesselOrder::integer(2), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn half_order_closed_form() {
        let v = bessel_j(BesselOrder::new(0.5).unwrap(), PI / 2.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-14, "{v}");
    }

    #[test]
    fn first_zero_of_j0() {
        // bisection on the series oracle
        let (mut a, mut b) = (2.0, 3.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if series_oracle(0.0, a) * series_oracle(0.0, m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        assert!((a - 2.404825557695773).abs() < 1e-12);
        let v = bessel_j(BesselOrder::ZERO, 2.404825557695773).unwrap();
        assert!(v.abs() < 1e-10, "{v}");
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(bessel_j(BesselOrder::ZERO, -1.0).is_err());
        assert!(BesselOrder::new(0.3).is_err());
        assert!(BesselOrder::new(-1.0).is_err());
    }

    #[test]
    fn dense_grid_against_series_small_x() {
        for twice in 0..8 {
            let order = BesselOrder::from_twice(twice);
            for i in 0..=1200 {
                let x = i as f64 * 0.01;
                let got = bessel_j(order, x).unwrap();
                let want = series_oracle(order.value(), x);
                assert!(
                    (got - want).abs() < 1e-12,
                    "nu={} x={x}: {got} vs {want}",
                    order.value()
                );
            }
        }
    }

    #[test]
    fn integer_orders_against_bessel_integral() {
        for n in 0..4 {
            let order = BesselOrder::integer(n);
            let mut x = 0.05;
            while x <= 1000.0 {
                let got = bessel_j(order, x).unwrap();
                let want = integral_oracle(n, x);
                assert!((got - want).abs() < 1e-12, "n={n} x={x}: {got} vs {want}");
                x *= 1.013;
            }
            // crossover neighbourhood, densely
            for i in 0..400 {
                let x = 23.0 + i as f64 * 0.01;
                let got = bessel_j(order, x).unwrap();
                assert!((got - integral_oracle(n, x)).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn half_odd_orders_against_closed_forms() {
        for twice in [1u32, 3, 5, 7] {
            let order = BesselOrder::from_twice(twice);
            let mut x = 4.0;
            while x <= 1000.0 {
                let got = bessel_j(order, x).unwrap();
                let want = spherical_oracle(twice, x);
                assert!(
                    (got - want).abs() < 1e-12,
                    "2nu={twice} x={x}: {got} vs {want}"
                );
                x *= 1.011;
            }
        }
    }

    #[test]
    fn gamma_half_values() {
        assert_eq!(gamma_half(2), 1.0);
        assert_eq!(gamma_half(10), 24.0);
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn surface_ft_closed_forms() {
        assert_eq!(surface_ft(2, 0.0).unwrap(), 1.0);
        assert_eq!(surface_ft(5, 0.0).unwrap(), 1.0);
        assert!(surface_ft(3, 0.5).unwrap().abs() < 1e-14);
        for i in 1..2000 {
            let u = i as f64 * 0.01;
            let z = 2.0 * PI * u;
            let s3 = surface_ft(3, u).unwrap();
            assert!((s3 - z.sin() / z).abs() < 1e-13, "u={u}");
            let s2 = surface_ft(2, u).unwrap();
            assert!((s2 - integral_oracle(0, z)).abs() < 1e-12, "u={u}");
        }
        assert!(surface_ft(1, 0.3).is_err());
        assert!(surface_ft(2, -0.3).is_err());
    }

    #[test]
    fn surface_ft_bounded_and_decaying() {
        for d in 2..=5 {
            let mut worst: f64 = 0.0;
            for i in 0..=10_000 {
                let u = i as f64 * 0.01;
                let v = surface_ft(d, u).unwrap();
                assert!(v.abs() <= 1.0 + 1e-14);
                worst = worst.max(v.abs() * (1.0 + u).powf((d as f64 - 1.0) / 2.0));
            }
            assert!(worst.is_finite() && worst < 10.0, "d={d}: {worst}");
        }
    }

    #[test]
    fn ball_ft_matches_closed_form_in_one_dimension() {
        // ∫_{-R}^{R} e^{-2πi y ξ} dξ = sin(2πRy)/(πy)
        for &(r, y) in &[(1.0, 0.3), (4.0, 1.7), (64.0, 0.01)] {
            let got = ball_indicator_ft(1, r, y);
            let want = (2.0 * PI * r * y).sin() / (PI * y);
            assert!((got - want).abs() < 1e-10 * r, "{got} vs {want}");
        }
        assert!((ball_indicator_ft(2, 2.0, 0.0) - 4.0 * PI).abs() < 1e-12);
    }
}

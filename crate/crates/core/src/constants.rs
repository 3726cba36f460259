//! The one table of normalization constants.
//!
//! Every constant is either analytic (with its derivation) or was calibrated
//! once on a reference input and frozen here. Nothing recalibrates at run time.

use crate::specfun::sphere_area;
use serde::Serialize;

pub const CONSTANTS_VERSION: &str = "1";

/// Sphere averages use the normalized measure `dω`; the Lebesgue measure in
/// polar coordinates is `dξ = |S^{d-1}| r^{d-1} dr dω`.
pub fn polar_jacobian(d: usize) -> f64 {
    if d == 1 {
        2.0
    } else {
        sphere_area(d)
    }
}

/// `c_d` relating the wave-side energy to the extension-side energy,
/// `c_d ∫|D^{-(d-1)/2} e^{-2πit√-Δ} f(x)|² dt = ∫|ω̂_r * f(x)|² r^{d-1} dr`.
///
/// Calibrated on `e^{-π|x|²}` at `x = 0`. Plancherel in `t` predicts
/// `1/|S^{d-1}|²`, i.e. `1/(4π²)` for `d = 2` and `1/(16π²)` for `d = 3`.
pub const WAVE_CONSTANT_D2: f64 = 2.533029597357015e-2;
pub const WAVE_CONSTANT_D3: f64 = 6.332573977741614e-3;

/// Ratio of the rotation-averaged correlation functional to the Mattila
/// integral in the plane, calibrated on the standard gaussian density.
/// Plancherel in `z` followed by polar coordinates predicts `2π`; the frozen
/// value carries the bilinear-rotation bias of the 256² grid on `[-4, 4]²`.
pub const GROUP_ACTION_CONSTANT_D2: f64 = 6.280174051593;

pub fn wave_constant(d: usize) -> Option<f64> {
    match d {
        2 => Some(WAVE_CONSTANT_D2),
        3 => Some(WAVE_CONSTANT_D3),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsTable {
    pub version: &'static str,
    pub wave_constant_d2: f64,
    pub wave_constant_d3: f64,
    pub group_action_constant_d2: f64,
}

pub fn table() -> ConstantsTable {
    ConstantsTable {
        version: CONSTANTS_VERSION,
        wave_constant_d2: WAVE_CONSTANT_D2,
        wave_constant_d3: WAVE_CONSTANT_D3,
        group_action_constant_d2: GROUP_ACTION_CONSTANT_D2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn frozen_values_sit_near_their_derivations() {
        assert!((WAVE_CONSTANT_D2 * 4.0 * PI * PI - 1.0).abs() < 1e-7);
        assert!((WAVE_CONSTANT_D3 * 16.0 * PI * PI - 1.0).abs() < 1e-7);
        assert!((GROUP_ACTION_CONSTANT_D2 / (2.0 * PI) - 1.0).abs() < 1e-3);
        assert_eq!(wave_constant(4), None);
    }
}

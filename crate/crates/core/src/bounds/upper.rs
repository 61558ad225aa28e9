use std::f64::consts::TAU;

use crate::{EvacError, Result};

fn check_min_speed(s: f64, min: f64, domain: &'static str) -> Result<()> {
    if s >= min && s.is_finite() {
        Ok(())
    } else {
        Err(EvacError::domain("s", s, domain))
    }
}

/// Half-Chord worst-case time: `(1 + 2π)/s` up to `s = 2`, then the time Fast
/// reaches `A` plus half the chord `AB`.
pub fn ub_half_chord(s: f64) -> Result<f64> {
    check_min_speed(s, 1.0, "[1, ∞)")?;
    if s <= 2.0 {
        return Ok((1.0 + TAU) / s);
    }
    Ok((1.0 + 2.0 * (-2.0 / s).acos()) / s + (1.0 - 4.0 / (s * s)).sqrt())
}

/// Evacuation time when the exit is found by Fast at boundary offset `a`
/// while Slow is still on its way to `C`.
pub fn half_chord_phase1_time(s: f64, a: f64) -> Result<f64> {
    check_min_speed(s, 2.0, "[2, ∞)")?;
    if !(0.0..=1.0).contains(&a) {
        return Err(EvacError::domain("a", a, "[0, 1]"));
    }
    let r = (1.0 + a) / s;
    Ok(r + (1.0 + r * r + 2.0 * r * (0.5 - a).cos()).sqrt())
}

fn check_bsp_speed(s: f64) -> Result<()> {
    if (1.0..=2.0).contains(&s) {
        Ok(())
    } else {
        Err(EvacError::domain("s", s, "[1, 2]"))
    }
}

pub fn ub_bsp(s: f64) -> Result<f64> {
    check_bsp_speed(s)?;
    let q = 1.0 / (s + 1.0);
    Ok(1.0 + 2.0 * (1.0 - q * q).sqrt() + (2.0 * (-q).acos() - s + 1.0) / (s + 1.0))
}

/// Exit found by Fast at arc length `a <= s - 1` before Slow lands.
pub fn bsp_phase1_time(s: f64, a: f64) -> Result<f64> {
    check_bsp_speed(s)?;
    if !(0.0..=s - 1.0).contains(&a) {
        return Err(EvacError::domain("a", a, "[0, s - 1]"));
    }
    let r = (a + 1.0) / s;
    Ok(r + (1.0 + r * r - 2.0 * r * a.cos()).max(0.0).sqrt())
}

/// Exit found by Slow after walking clockwise for `d / s` past time 1.
pub fn bsp_phase2_time(s: f64, d: f64) -> Result<f64> {
    check_bsp_speed(s)?;
    let d_max = (TAU - s + 1.0) / (1.0 + 1.0 / s);
    if !(0.0..d_max).contains(&d) {
        return Err(EvacError::domain("d", d, "[0, (2π - s + 1)/(1 + 1/s))"));
    }
    Ok(1.0 + d / s + 2.0 * ((d * (1.0 + 1.0 / s) + s - 1.0) / 2.0).sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_chord_values() {
        assert!((ub_half_chord(2.0).unwrap() - 3.641_59).abs() < 1e-5);
        assert!((ub_half_chord(4.0).unwrap() - 2.163_22).abs() < 1e-5);
        assert!((ub_half_chord(1.0).unwrap() - 7.283_19).abs() < 1e-5);
        let upper = (1.0 + 2.0 * (-1.0f64).acos()) / 2.0;
        assert!((upper - ub_half_chord(2.0).unwrap()).abs() < 1e-12);
        assert!(ub_half_chord(0.99).is_err());
    }

    #[test]
    fn phase1_values() {
        let v = half_chord_phase1_time(4.0, 1.0).unwrap();
        assert!((v - (0.5 + (1.25 + 0.5f64.cos()).sqrt())).abs() < 1e-15);
        assert!((v - 1.958_62).abs() < 1e-5);
        for s in [2.0f64, 3.0, 7.0] {
            let bound = 2.0 / s + (1.0 + 4.0 / (s * s) + 4.0 / s).sqrt();
            assert!(half_chord_phase1_time(s, 0.0).unwrap() <= bound);
        }
        let peak = (0..=10_000)
            .map(|i| half_chord_phase1_time(4.0, i as f64 * 1e-4).unwrap())
            .fold(f64::MIN, f64::max);
        assert!(peak <= 2.163_22);
        assert!(half_chord_phase1_time(4.0, 1.1).is_err());
        assert!(half_chord_phase1_time(1.5, 0.5).is_err());
    }

    #[test]
    fn bsp_values() {
        assert!((ub_bsp(1.0).unwrap() - (1.0 + 3f64.sqrt() + TAU / 3.0)).abs() < 1e-12);
        assert!((ub_bsp(2.0).unwrap() - 3.826_04).abs() < 1e-5);
        assert!(ub_bsp(2.0).unwrap() > ub_half_chord(2.0).unwrap());
        assert!(ub_bsp(2.1).is_err() && ub_bsp(0.9).is_err());
    }

    #[test]
    fn bsp_phase_values() {
        for s in [1.0, 1.4, 2.0] {
            let end = bsp_phase1_time(s, s - 1.0).unwrap();
            assert!((end - (1.0 + (2.0 - 2.0 * (s - 1.0).cos()).sqrt())).abs() < 1e-12);
            let d = (PI - s + 1.0) / (1.0 + 1.0 / s);
            let v = bsp_phase2_time(s, d).unwrap();
            assert!((v - (2.0 * s + PI + 4.0) / (s + 1.0)).abs() < 1e-12);
        }
        assert!(bsp_phase1_time(1.5, 0.6).is_err());
        assert!(bsp_phase2_time(1.5, -0.1).is_err());
    }

    #[test]
    fn phase2_peak_is_bsp_bound() {
        let s = 1.5;
        let d_max = (TAU - s + 1.0) / (1.0 + 1.0 / s);
        let peak = (0..)
            .map(|i| i as f64 * 1e-5)
            .take_while(|&d| d < d_max)
            .map(|d| bsp_phase2_time(s, d).unwrap())
            .fold(f64::MIN, f64::max);
        assert!((peak - ub_bsp(s).unwrap()).abs() < 1e-6);
    }
}

//! Energy-constraint cubic `c_kin/h² + g h + z_eff = E` and its root selection.

use crate::error::{Error, Result};
use crate::model::H_FLOOR;

/// Upper bound on admissible depths.
pub const H_MAX: f64 = 1e6;

/// Distances to the guess that agree within this many ulp of the larger root count as a tie.
pub const TIE_ULPS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyCubic {
    /// Half the difference of the squared normal momentum and normal magnetic flux.
    pub c_kin: f64,
    /// `g Z + P`.
    pub z_eff: f64,
    pub e_tgt: f64,
    pub g: f64,
    /// Anchor for root selection and fallback value.
    pub h_guess: f64,
}

impl EnergyCubic {
    /// `g h³ + (z_eff - E) h² + c_kin`.
    pub fn poly(&self, h: f64) -> f64 {
        (self.g * h + (self.z_eff - self.e_tgt)) * h * h + self.c_kin
    }

    /// `c_kin/h² + g h + z_eff - E`.
    pub fn residual(&self, h: f64) -> f64 {
        self.c_kin / (h * h) + self.g * h + self.z_eff - self.e_tgt
    }

    fn dpoly(&self, h: f64) -> f64 {
        (3.0 * self.g * h + 2.0 * (self.z_eff - self.e_tgt)) * h
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoot {
    pub h: f64,
    /// True when no admissible root exists and `h_guess` was returned.
    pub fallback: bool,
}

/// Returns the admissible root closest to `h_guess` (ties go to the larger
/// root) or `h_guess` itself when there is none.
pub fn solve_energy_cubic(c: &EnergyCubic) -> Result<f64> {
    solve_energy_cubic_detailed(c).map(|r| r.h)
}

pub fn solve_energy_cubic_detailed(c: &EnergyCubic) -> Result<CubicRoot> {
    let roots = admissible_roots(c)?;
    let pick = roots.iter().copied().fold(None, |best: Option<f64>, r| match best {
        None => Some(r),
        Some(b) => {
            let (db, dr) = ((b - c.h_guess).abs(), (r - c.h_guess).abs());
            let tie = (dr - db).abs() <= TIE_ULPS * f64::EPSILON * r.max(b);
            if (tie && r > b) || (!tie && dr < db) {
                Some(r)
            } else {
                Some(b)
            }
        }
    });
    Ok(match pick {
        Some(h) => CubicRoot { h, fallback: false },
        None => CubicRoot { h: c.h_guess, fallback: true },
    })
}

/// Real roots in `[H_FLOOR, H_MAX]`, ascending.
pub fn admissible_roots(c: &EnergyCubic) -> Result<Vec<f64>> {
    let finite = [c.c_kin, c.z_eff, c.e_tgt, c.g, c.h_guess].iter().all(|x| x.is_finite());
    if !finite || c.g <= 0.0 {
        return Err(Error::NonFinite);
    }
    let mut roots = if c.c_kin == 0.0 {
        // Lake-at-rest reduction; keep it exact.
        vec![(c.e_tgt - c.z_eff) / c.g]
    } else {
        real_roots(c)
    };
    roots.retain(|&h| (H_FLOOR..=H_MAX).contains(&h));
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    Ok(roots)
}

/// All real roots of `h³ + a h² + d = 0` with `a = (z - E)/g`, `d = c/g`.
fn real_roots(c: &EnergyCubic) -> Vec<f64> {
    let a = (c.z_eff - c.e_tgt) / c.g;
    let d = c.c_kin / c.g;
    // Depressed cubic t³ + p t + q = 0 with h = t - a/3.
    let p = -a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 + d;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let shift = a / 3.0;
    let r1 = if disc > 0.0 {
        let s = (0.5 * q.abs() + disc.sqrt()).cbrt();
        let big = if q > 0.0 { -s } else { s };
        let t = if big != 0.0 { big - p / (3.0 * big) } else { 0.0 };
        t - shift
    } else if p == 0.0 {
        -shift
    } else {
        // Three real roots; take the one of largest magnitude for deflation.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift)
            .max_by(|x, y| x.abs().total_cmp(&y.abs()))
            .unwrap()
    };
    let r1 = polish(c, r1);
    let mut out = vec![r1];
    if r1 != 0.0 {
        // (h - r1)(h² + b1 h + c1) with c1 = -d / r1.
        let b1 = a + r1;
        let c1 = -d / r1;
        let dq = b1 * b1 - 4.0 * c1;
        if dq >= 0.0 {
            let s = -0.5 * (b1 + b1.signum() * dq.sqrt());
            if s != 0.0 {
                out.push(polish(c, s));
                out.push(polish(c, c1 / s));
            } else {
                out.push(0.0);
            }
        }
    }
    out.retain(|r| r.is_finite());
    out
}

/// Newton iterations on the cubic, kept only while the residual decreases.
fn polish(c: &EnergyCubic, mut h: f64) -> f64 {
    let mut res = c.poly(h).abs();
    for _ in 0..8 {
        let dp = c.dpoly(h);
        if dp == 0.0 || res == 0.0 {
            break;
        }
        let next = h - c.poly(h) / dp;
        let next_res = c.poly(next).abs();
        if !(next_res < res) {
            break;
        }
        h = next;
        res = next_res;
    }
    h
}

//! Directional building blocks shared by the 1-D solver and the 2-D row and
//! column sweeps.
//!
//! Everything here is written in a frame attached to the sweep direction:
//! `qn`/`qt` are the normal/transverse momenta, `pn`/`pt` the normal/transverse
//! magnetic fluxes (`h` times the field component) and `dn`/`dt` the magnetic
//! derivative variables. For a `y` sweep `(qn, qt, pn, pt, dn, dt)` is
//! `(hv, hu, hb, ha, B, A)`; for an `x` sweep it is `(hu, hv, ha, hb, A, B)`.
//! The equilibrium vector is `(qn, vt, E, bt, pn)`.

use crate::cubic::{solve_energy_cubic, EnergyCubic};
use crate::error::Result;
use crate::model::{check_depth, Variant, H_FLOOR};
use crate::reconstruct::{limited_slope, weno_z_value, weno_z_value_left, WenoZConfig};

/// Local conserved components `[h, qn, qt, pn, pt]`.
pub const NU: usize = 5;
/// Local augmented components `[h, qn, qt, pn, pt, dn, dt]`.
pub const NW: usize = 7;
/// Index of `qt` in local vectors.
pub const QT: usize = 2;

/// Below this gap the central-upwind flux falls back to a central average.
pub const DEGENERATE_SPEED_GAP: f64 = 1e-14;

/// One-sided point value at a cell face.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FaceState {
    pub h: f64,
    pub qn: f64,
    pub qt: f64,
    pub pn: f64,
    pub pt: f64,
    pub dn: f64,
    pub dt: f64,
    pub vn: f64,
    pub vt: f64,
    pub bn: f64,
    pub bt: f64,
    /// Equilibrium energy at the face.
    pub e: f64,
    pub z: f64,
    /// Reconstructed water surface `h + Z`.
    pub w: f64,
    /// Transverse derivative of the normal velocity (`u_y` on x-faces, `v_x` on y-faces).
    pub tdv: f64,
    pub h_hat: f64,
    pub qt_hat: f64,
    pub pt_hat: f64,
}

impl FaceState {
    pub fn conserved(&self) -> [f64; NU] {
        [self.h, self.qn, self.qt, self.pn, self.pt]
    }

    pub fn equilibrium(&self) -> [f64; 5] {
        [self.qn, self.vt, self.e, self.bt, self.pn]
    }

    /// Modified state entering the numerical diffusion.
    pub fn hat(&self) -> [f64; NW] {
        [self.h_hat, self.qn, self.qt_hat, self.pn, self.pt_hat, self.dn, self.dt]
    }

    fn kinetic(&self) -> f64 {
        0.5 * (self.qn * self.qn - self.pn * self.pn)
    }
}

/// How the transverse equilibrium fields `vt` and `bt` are reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransverseScheme {
    Minmod,
    WenoZ,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams {
    pub g: f64,
    pub theta: f64,
    pub variant: Variant,
    pub transverse: TransverseScheme,
}

/// Cell data along one line, `n + 2 * ghosts` entries per array, plus
/// per-interface data (`n + 1` entries).
#[derive(Debug, Clone, Copy)]
pub struct LineData<'a> {
    pub ghosts: usize,
    pub delta: f64,
    pub h: &'a [f64],
    pub qn: &'a [f64],
    pub qt: &'a [f64],
    pub pn: &'a [f64],
    pub pt: &'a [f64],
    pub dn: &'a [f64],
    pub dt: &'a [f64],
    /// `h + Z` at cell centers.
    pub w: &'a [f64],
    pub e: &'a [f64],
    pub vt: &'a [f64],
    pub bt: &'a [f64],
    /// Slope used for `pn` (`B̄` in 1-D, `σ Ā` or `σ B̄` in 2-D).
    pub pn_slope: &'a [f64],
    pub tdv: &'a [f64],
    pub z_minus: &'a [f64],
    pub z_plus: &'a [f64],
    pub p_face: &'a [f64],
}

impl LineData<'_> {
    pub fn cells(&self) -> usize {
        self.h.len() - 2 * self.ghosts
    }
}

/// Face values at the `n + 1` interfaces of a line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InterfaceStates {
    /// Value from the cell left of the interface.
    pub minus: Vec<FaceState>,
    /// Value from the cell right of the interface.
    pub plus: Vec<FaceState>,
}

fn slopes(psi: &[f64], delta: f64, theta: f64) -> Vec<f64> {
    let mut s = vec![0.0; psi.len()];
    for c in 1..psi.len().saturating_sub(1) {
        s[c] = limited_slope(psi[c - 1], psi[c], psi[c + 1], delta, theta);
    }
    s
}

#[inline]
fn side(psi: &[f64], slope: &[f64], c: usize, half: f64, east: bool) -> f64 {
    if east {
        psi[c] + half * slope[c]
    } else {
        psi[c] - half * slope[c]
    }
}

fn transverse_value(psi: &[f64], slope: &[f64], c: usize, half: f64, east: bool, scheme: TransverseScheme) -> f64 {
    match scheme {
        TransverseScheme::Minmod => side(psi, slope, c, half, east),
        TransverseScheme::WenoZ => {
            let s = [psi[c - 2], psi[c - 1], psi[c], psi[c + 1], psi[c + 2]];
            let cfg = WenoZConfig::default();
            if east {
                weno_z_value(&s, &cfg)
            } else {
                weno_z_value_left(&s, &cfg)
            }
        }
    }
}

/// Interface values for the well-balanced or conservative reconstruction.
pub fn reconstruct_line(line: &LineData, params: &LineParams) -> Result<InterfaceStates> {
    let n = line.cells();
    let gh = line.ghosts;
    let (d, th, g) = (line.delta, params.theta, params.g);
    let half = 0.5 * d;
    let s_qn = slopes(line.qn, d, th);
    let s_dn = slopes(line.dn, d, th);
    let s_dt = slopes(line.dt, d, th);
    let s_w = slopes(line.w, d, th);
    let wb = params.variant == Variant::WellBalanced;
    // WB: equilibrium fields; NWB: the remaining conservative ones.
    let (s_a, s_b, s_c) = if wb {
        let t = |psi: &[f64]| match params.transverse {
            TransverseScheme::Minmod => slopes(psi, d, th),
            TransverseScheme::WenoZ => Vec::new(),
        };
        (slopes(line.e, d, th), t(line.vt), t(line.bt))
    } else {
        (Vec::new(), slopes(line.qt, d, th), slopes(line.pt, d, th))
    };

    let face = |c: usize, east: bool| -> Result<FaceState> {
        let i = if east { c + 1 - gh } else { c - gh };
        let z = if east { line.z_minus[i] } else { line.z_plus[i] };
        let p = line.p_face[i];
        let sgn_half = if east { half } else { -half };
        let mut f = FaceState {
            qn: side(line.qn, &s_qn, c, half, east),
            pn: line.pn[c] + sgn_half * line.pn_slope[c],
            dn: side(line.dn, &s_dn, c, half, east),
            dt: side(line.dt, &s_dt, c, half, east),
            w: side(line.w, &s_w, c, half, east),
            tdv: line.tdv[c],
            z,
            ..FaceState::default()
        };
        if wb {
            f.e = side(line.e, &s_a, c, half, east);
            f.vt = transverse_value(line.vt, &s_b, c, half, east, params.transverse);
            f.bt = transverse_value(line.bt, &s_c, c, half, east, params.transverse);
            let breve = f.w - z;
            let guess = if breve > H_FLOOR { breve } else { line.h[c] };
            f.h = solve_energy_cubic(&EnergyCubic { c_kin: f.kinetic(), z_eff: g * z + p, e_tgt: f.e, g, h_guess: guess })?;
            check_depth(f.h)?;
            f.qt = f.h * f.vt;
            f.pt = f.h * f.bt;
        } else {
            f.h = f.w - z;
            check_depth(f.h)?;
            f.qt = side(line.qt, &s_b, c, half, east);
            f.pt = side(line.pt, &s_c, c, half, east);
            f.vt = f.qt / f.h;
            f.bt = f.pt / f.h;
            f.e = f.kinetic() / (f.h * f.h) + g * (f.h + z) + p;
        }
        f.vn = f.qn / f.h;
        f.bn = f.pn / f.h;
        f.h_hat = f.h;
        f.qt_hat = f.qt;
        f.pt_hat = f.pt;
        Ok(f)
    };

    let mut out = InterfaceStates { minus: Vec::with_capacity(n + 1), plus: Vec::with_capacity(n + 1) };
    for i in 0..=n {
        out.minus.push(face(gh - 1 + i, true)?);
        out.plus.push(face(gh + i, false)?);
    }
    Ok(out)
}

/// Fills the diffusion ("hat") values. Where `Z` is continuous across an
/// interface they coincide with the face values.
pub fn apply_hat(states: &mut InterfaceStates, p_face: &[f64], g: f64) -> Result<()> {
    for (i, (m, p)) in states.minus.iter_mut().zip(states.plus.iter_mut()).enumerate() {
        if m.z == p.z {
            for f in [m, p] {
                f.h_hat = f.h;
                f.qt_hat = f.qt;
                f.pt_hat = f.pt;
            }
            continue;
        }
        let z_mid = 0.5 * (m.z + p.z);
        for f in [m, p] {
            let cubic = EnergyCubic { c_kin: f.kinetic(), z_eff: g * z_mid + p_face[i], e_tgt: f.e, g, h_guess: f.h };
            f.h_hat = solve_energy_cubic(&cubic)?;
            check_depth(f.h_hat)?;
            f.qt_hat = f.h_hat * f.vt;
            f.pt_hat = f.h_hat * f.bt;
        }
    }
    Ok(())
}

/// Physical flux in the sweep direction.
pub fn physical_flux(s: &FaceState, g: f64) -> [f64; NU] {
    [
        s.qn,
        s.qn * s.vn + 0.5 * g * s.h * s.h - s.pn * s.bn,
        s.qt * s.vn - s.pt * s.bn,
        0.0,
        s.pt * s.vn - s.pn * s.vt,
    ]
}

/// `F(r) - F(l) - ½[M(r) + M(l)](E(r) - E(l))`.
pub fn jump_term(r: &FaceState, l: &FaceState, g: f64) -> [f64; NU] {
    let fr = physical_flux(r, g);
    let fl = physical_flux(l, g);
    let dqn = r.qn - l.qn;
    let dvt = r.vt - l.vt;
    let de = r.e - l.e;
    let dbt = r.bt - l.bt;
    let dpn = r.pn - l.pn;
    let avg = |x: f64, y: f64| 0.5 * (x + y);
    let (vn, h, vt, qn, pn, bt) =
        (avg(r.vn, l.vn), avg(r.h, l.h), avg(r.vt, l.vt), avg(r.qn, l.qn), avg(r.pn, l.pn), avg(r.bt, l.bt));
    let m = [
        dqn,
        vn * dqn + h * de,
        vt * dqn + qn * dvt - pn * dbt,
        vn * dpn,
        bt * dqn - pn * dvt + qn * dbt,
    ];
    std::array::from_fn(|c| (fr[c] - fl[c]) - m[c])
}

/// Global nonconservative/source integrals on both sides of each interface.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ledger {
    pub minus: Vec<[f64; NU]>,
    pub plus: Vec<[f64; NU]>,
}

/// Left-to-right recursion for `R`. `cell_source[k]` is added to the `qt`
/// component of the in-cell term of interior cell `k` (1-D Coriolis term).
pub fn ledger(states: &InterfaceStates, cell_source: Option<&[f64]>, g: f64) -> Ledger {
    let n = states.minus.len() - 1;
    let mut out = Ledger { minus: Vec::with_capacity(n + 1), plus: Vec::with_capacity(n + 1) };
    let psi = |i: usize| jump_term(&states.plus[i], &states.minus[i], g);
    out.minus.push([0.0; NU]);
    out.plus.push(psi(0));
    for k in 0..n {
        let mut q = jump_term(&states.minus[k + 1], &states.plus[k], g);
        if let Some(src) = cell_source {
            q[QT] += src[k];
        }
        let rm: [f64; NU] = std::array::from_fn(|c| out.plus[k][c] + q[c]);
        let qp = psi(k + 1);
        out.plus.push(std::array::from_fn(|c| rm[c] + qp[c]));
        out.minus.push(rm);
    }
    out
}

/// One-sided local speeds `(s⁻, s⁺)` of an interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Speeds {
    pub minus: f64,
    pub plus: f64,
}

pub fn local_speeds(m: &FaceState, p: &FaceState, g: f64) -> Speeds {
    let cm = (m.bn * m.bn + g * m.h).sqrt();
    let cp = (p.bn * p.bn + g * p.h).sqrt();
    Speeds {
        plus: (m.vn + cm).max(p.vn + cp).max(0.0),
        minus: (m.vn - cm).min(p.vn - cp).min(0.0),
    }
}

pub fn speeds(states: &InterfaceStates, g: f64) -> Vec<Speeds> {
    states.minus.iter().zip(&states.plus).map(|(m, p)| local_speeds(m, p, g)).collect()
}

/// `(K, vn dn - pt tdv, vn dt + pt tdv)`.
pub fn flux_vector(s: &FaceState, r: &[f64; NU], g: f64) -> [f64; NW] {
    let f = physical_flux(s, g);
    let x = s.pt * s.tdv;
    [
        f[0] - r[0],
        f[1] - r[1],
        f[2] - r[2],
        f[3] - r[3],
        f[4] - r[4],
        s.vn * s.dn - x,
        s.vn * s.dt + x,
    ]
}

/// Central-upwind combination of two one-sided fluxes.
pub fn central_upwind(hm: &[f64; NW], hp: &[f64; NW], wm: &[f64; NW], wp: &[f64; NW], s: Speeds) -> [f64; NW] {
    let gap = s.plus - s.minus;
    if gap < DEGENERATE_SPEED_GAP {
        return std::array::from_fn(|c| 0.5 * (hm[c] + hp[c]));
    }
    let diff = s.plus * s.minus / gap;
    std::array::from_fn(|c| (s.plus * hm[c] - s.minus * hp[c]) / gap + diff * (wp[c] - wm[c]))
}

/// Numerical fluxes at every interface of the line, in local component order.
pub fn cu_fluxes(states: &InterfaceStates, ledger: &Ledger, speeds: &[Speeds], g: f64) -> Vec<[f64; NW]> {
    (0..states.minus.len())
        .map(|i| {
            let (m, p) = (&states.minus[i], &states.plus[i]);
            let hm = flux_vector(m, &ledger.minus[i], g);
            let hp = flux_vector(p, &ledger.plus[i], g);
            central_upwind(&hm, &hp, &m.hat(), &p.hat(), speeds[i])
        })
        .collect()
}

/// Result of a full sweep along one line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSweep {
    pub states: InterfaceStates,
    pub ledger: Ledger,
    pub speeds: Vec<Speeds>,
    pub fluxes: Vec<[f64; NW]>,
}

impl LineSweep {
    pub fn max_speed(&self) -> f64 {
        self.speeds.iter().fold(0.0, |acc, s| acc.max(s.plus).max(-s.minus))
    }
}

pub fn sweep(line: &LineData, params: &LineParams, cell_source: Option<&[f64]>) -> Result<LineSweep> {
    let mut states = reconstruct_line(line, params)?;
    apply_hat(&mut states, line.p_face, params.g)?;
    let ledger = ledger(&states, cell_source, params.g);
    let speeds = speeds(&states, params.g);
    let fluxes = cu_fluxes(&states, &ledger, &speeds, params.g);
    Ok(LineSweep { states, ledger, speeds, fluxes })
}

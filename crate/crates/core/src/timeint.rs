//! Three-stage SSP Runge-Kutta integration with a CFL-limited step.

use crate::error::{Error, Result};
use crate::field::{ConservedField1D, ConservedField2D};

/// Largest one-sided speed magnitude per direction (`x` is 0 in 1-D).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WaveSpeeds {
    pub x: f64,
    pub y: f64,
}

/// Vector-space operations needed by the integrator.
pub trait StateVector: Clone {
    /// `self = alpha * self + beta * other`.
    fn axpby(&mut self, alpha: f64, beta: f64, other: &Self);
    fn is_finite(&self) -> bool;
}

impl StateVector for Vec<f64> {
    fn axpby(&mut self, alpha: f64, beta: f64, other: &Self) {
        for (s, o) in self.iter_mut().zip(other) {
            *s = alpha * *s + beta * o;
        }
    }

    fn is_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }
}

impl StateVector for ConservedField1D {
    fn axpby(&mut self, alpha: f64, beta: f64, other: &Self) {
        for (s, o) in self.comps.iter_mut().zip(&other.comps) {
            s.axpby(alpha, beta, o);
        }
    }

    fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.is_finite())
    }
}

impl StateVector for ConservedField2D {
    fn axpby(&mut self, alpha: f64, beta: f64, other: &Self) {
        for (s, o) in self.comps.iter_mut().zip(&other.comps) {
            s.axpby(alpha, beta, o);
        }
    }

    fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.is_finite())
    }
}

/// A semi-discrete operator `L(w)` that also reports wave speeds.
pub trait SemiDiscrete<S: StateVector> {
    fn rate(&self, w: &S) -> Result<(S, WaveSpeeds)>;
}

impl<S, F> SemiDiscrete<S> for F
where
    S: StateVector,
    F: Fn(&S) -> Result<(S, WaveSpeeds)>,
{
    fn rate(&self, w: &S) -> Result<(S, WaveSpeeds)> {
        self(w)
    }
}

/// `cfl * min(Δx / s_x, Δy / s_y)` over directions with nonzero speed;
/// `cfl * min(Δx, Δy)` when the flow is quiescent.
pub fn max_dt(speeds: WaveSpeeds, dx: f64, dy: f64, cfl: f64) -> f64 {
    let mut dt = f64::INFINITY;
    if speeds.x > 0.0 {
        dt = dt.min(dx / speeds.x);
    }
    if speeds.y > 0.0 {
        dt = dt.min(dy / speeds.y);
    }
    if dt.is_finite() {
        cfl * dt
    } else {
        cfl * dx.min(dy)
    }
}

/// The three convex-combination weights `(old, stage)` of each stage.
pub const SSP_RK3_WEIGHTS: [(f64, f64); 3] = [(0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0)];

fn check<S: StateVector>(s: &S, stage: usize) -> Result<()> {
    if s.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteState { stage })
    }
}

/// One step reusing an already evaluated `L(w)`.
pub fn ssp_rk3_step_with_initial_rate<S: StateVector, L: SemiDiscrete<S>>(w: &S, rate0: S, op: &L, dt: f64) -> Result<S> {
    let mut stage = w.clone();
    stage.axpby(1.0, dt, &rate0);
    check(&stage, 1)?;
    for (n, &(old, new)) in SSP_RK3_WEIGHTS.iter().enumerate().skip(1) {
        let (r, _) = op.rate(&stage)?;
        stage.axpby(1.0, dt, &r);
        let mut next = w.clone();
        next.axpby(old, new, &stage);
        check(&next, n + 1)?;
        stage = next;
    }
    Ok(stage)
}

pub fn ssp_rk3_step<S: StateVector, L: SemiDiscrete<S>>(w: &S, op: &L, dt: f64) -> Result<S> {
    let (r, _) = op.rate(w)?;
    ssp_rk3_step_with_initial_rate(w, r, op, dt)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TimeState {
    pub t: f64,
    pub dt_last: f64,
    pub steps: usize,
}

/// Advances `w` to `t_end`, choosing the step from the first-stage speeds and
/// clamping the final step. `on_step` sees every accepted state.
pub fn integrate<S, L, C>(
    w: &mut S,
    clock: &mut TimeState,
    t_end: f64,
    op: &L,
    dx: f64,
    dy: f64,
    cfl: f64,
    mut on_step: C,
) -> Result<()>
where
    S: StateVector,
    L: SemiDiscrete<S>,
    C: FnMut(&S, &TimeState) -> Result<()>,
{
    while clock.t < t_end {
        let (r, speeds) = op.rate(w).map_err(|e| wrap(e, clock))?;
        let mut dt = max_dt(speeds, dx, dy, cfl);
        let last = clock.t + dt >= t_end;
        if last {
            dt = t_end - clock.t;
        }
        *w = ssp_rk3_step_with_initial_rate(w, r, op, dt).map_err(|e| wrap(e, clock))?;
        clock.t = if last { t_end } else { clock.t + dt };
        clock.dt_last = dt;
        clock.steps += 1;
        on_step(w, clock)?;
    }
    Ok(())
}

fn wrap(e: Error, clock: &TimeState) -> Error {
    Error::Run { t: clock.t, step: clock.steps, source: Box::new(e) }
}

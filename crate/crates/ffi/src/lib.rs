//! C ABI over `mrsw-core`.
//!
//! Every entry point returns an [`MrswStatus`]; on failure the message is
//! kept per thread and can be fetched with [`mrsw_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mrsw_core::cubic::{solve_energy_cubic, EnergyCubic};
use mrsw_core::experiment::{ExperimentConfig, Mesh, Simulation};
use mrsw_core::model::Variant;
use mrsw_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrswStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Numerical = 4,
    Io = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrswScheme {
    WellBalanced = 0,
    NonWellBalanced = 1,
}

/// Opaque simulation handle.
pub struct MrswSimulation {
    inner: Simulation,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: MrswStatus, msg: impl Into<String>) -> MrswStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn status_of(e: &Error) -> MrswStatus {
    match e {
        Error::ConfigInvalid(_) | Error::UnknownDescriptor(_) => MrswStatus::Config,
        Error::Io(_) => MrswStatus::Io,
        Error::Run { source, .. } => status_of(source),
        Error::ShapeMismatch { .. } | Error::TooShort { .. } | Error::EmptyInput => MrswStatus::InvalidArgument,
        _ => MrswStatus::Numerical,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MrswStatus>) -> MrswStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MrswStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(MrswStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: mrsw_core::Result<T>) -> Result<T, MrswStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn sim_ref<'a>(sim: *const MrswSimulation) -> Result<&'a Simulation, MrswStatus> {
    // SAFETY: callers of the public functions guarantee `sim` is null or live.
    unsafe { sim.as_ref() }.map(|s| &s.inner).ok_or_else(|| fail(MrswStatus::NullPointer, "null simulation handle"))
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), MrswStatus> {
    if out.is_null() {
        return Err(fail(MrswStatus::NullPointer, "null output pointer"));
    }
    // SAFETY: non-null and, per the caller contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn create(cfg: &ExperimentConfig, out: *mut *mut MrswSimulation) -> Result<(), MrswStatus> {
    if out.is_null() {
        return Err(fail(MrswStatus::NullPointer, "null output pointer"));
    }
    let inner = lift(Simulation::new(cfg))?;
    write_out(out, Box::into_raw(Box::new(MrswSimulation { inner })))
}

/// Creates a simulation of preset `example` (1..=8). `ny == 0` selects a
/// 1-D mesh of `nx` cells; `nx == 0` keeps the preset mesh.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_new(example: u32, nx: usize, ny: usize, scheme: MrswScheme, t_end: f64, out: *mut *mut MrswSimulation) -> MrswStatus {
    guard(|| {
        let id = u8::try_from(example).ok().filter(|n| (1..=8).contains(n)).ok_or_else(|| fail(MrswStatus::InvalidArgument, "example must be 1..8"))?;
        let mut cfg = ExperimentConfig::example(id);
        cfg.mesh = match (nx, ny) {
            (0, _) => None,
            (n, 0) => Some(Mesh::One(n)),
            (a, b) => Some(Mesh::Two(a, b)),
        };
        cfg.variant = match scheme {
            MrswScheme::WellBalanced => Variant::WellBalanced,
            MrswScheme::NonWellBalanced => Variant::NonWellBalanced,
        };
        if t_end > 0.0 {
            cfg.t_end = Some(t_end);
        }
        create(&cfg, out)
    })
}

/// Creates a simulation from a `key = value` configuration text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_from_config(text: *const c_char, out: *mut *mut MrswSimulation) -> MrswStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(MrswStatus::NullPointer, "null configuration text"));
        }
        // SAFETY: non-null and NUL-terminated per the contract.
        let s = unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| fail(MrswStatus::InvalidArgument, "configuration is not UTF-8"))?;
        let cfg = lift(ExperimentConfig::parse(s))?;
        create(&cfg, out)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `sim` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_free(sim: *mut MrswSimulation) {
    if !sim.is_null() {
        // SAFETY: created by `Box::into_raw` and not yet freed.
        drop(unsafe { Box::from_raw(sim) });
    }
}

/// Integrates up to `t_target`.
///
/// # Safety
/// `sim` must be null or a live handle not used concurrently.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_advance(sim: *mut MrswSimulation, t_target: f64) -> MrswStatus {
    guard(|| {
        // SAFETY: null or live and exclusive per the contract.
        let s = unsafe { sim.as_mut() }.ok_or_else(|| fail(MrswStatus::NullPointer, "null simulation handle"))?;
        lift(s.inner.advance(t_target))
    })
}

/// # Safety
/// `sim` must be null or live; `t` and `steps` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_time(sim: *const MrswSimulation, t: *mut f64, steps: *mut usize) -> MrswStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        write_out(t, s.clock.t)?;
        write_out(steps, s.clock.steps)
    })
}

/// Mesh size and number of conserved components (6 in 1-D, 7 in 2-D).
///
/// # Safety
/// `sim` must be null or live; the outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_dims(sim: *const MrswSimulation, nx: *mut usize, ny: *mut usize, components: *mut usize) -> MrswStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let (a, b) = s.dims();
        write_out(nx, a)?;
        write_out(ny, b)?;
        write_out(components, s.components())
    })
}

/// Copies conserved component `component` (row-major, `x` fastest) into `buf`.
///
/// # Safety
/// `sim` must be null or live; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_copy_field(sim: *const MrswSimulation, component: usize, buf: *mut f64, len: usize) -> MrswStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let data = s.component(component).ok_or_else(|| fail(MrswStatus::InvalidArgument, format!("no component {component}")))?;
        if buf.is_null() {
            return Err(fail(MrswStatus::NullPointer, "null buffer"));
        }
        if len < data.len() {
            return Err(fail(MrswStatus::BufferTooSmall, format!("buffer holds {len}, need {}", data.len())));
        }
        // SAFETY: `buf` is valid for `len >= data.len()` writes and does not alias `data`.
        unsafe { std::ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len()) };
        Ok(())
    })
}

/// # Safety
/// `sim` must be null or live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_energy(sim: *const MrswSimulation, out: *mut f64) -> MrswStatus {
    guard(|| write_out(out, sim_ref(sim)?.energy()))
}

/// # Safety
/// `sim` must be null or live; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_simulation_max_divergence(sim: *const MrswSimulation, out: *mut f64) -> MrswStatus {
    guard(|| write_out(out, sim_ref(sim)?.max_divergence()))
}

/// Root of `c_kin/h² + g h + z_eff = e_tgt` closest to `h_guess`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_solve_energy_cubic(c_kin: f64, z_eff: f64, e_tgt: f64, g: f64, h_guess: f64, out: *mut f64) -> MrswStatus {
    guard(|| {
        let h = lift(solve_energy_cubic(&EnergyCubic { c_kin, z_eff, e_tgt, g, h_guess }))?;
        write_out(out, h)
    })
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// NUL-terminated) and returns its full length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mrsw_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: `buf` is valid for `len > n` writes.
            unsafe {
                std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                buf.add(n).write(0);
            }
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mrsw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

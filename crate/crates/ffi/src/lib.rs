//! C interface to `evac-core`.
//!
//! Every function returns an [`EvacStatus`] and writes results through out
//! pointers. On failure a description is kept per thread and can be read with
//! [`evac_last_error`]. Strategies are opaque handles released with
//! [`evac_strategy_free`].

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use evac_core::analysis::{lb_overall, ub_overall, NumericSteps};
use evac_core::bounds::{lb_bes_improved, lb_bes_original, lb_fes, ub_bsp, ub_half_chord};
use evac_core::strategies::{
    build_bsp, build_fast_chord, build_half_chord, optimize_fast_chord, solve_fast_chord_system,
    Strategy, StrategyFamily,
};
use evac_core::worstcase::{evac_time_for_exit, worst_case, Finder};
use evac_core::EvacError;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvacStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Infeasible = 3,
    Numerical = 4,
    Panic = 5,
}

/// Which robot.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EvacRobot {
    #[default]
    Fast = 0,
    Slow = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvacFamily {
    Bsp = 0,
    HalfChord = 1,
    FastChord = 2,
}

/// Opaque strategy handle.
pub struct EvacStrategy(Strategy);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvacWorstCase {
    pub exit_angle: f64,
    pub discovery_time: f64,
    pub evac_time: f64,
    pub finder: EvacRobot,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvacExitOutcome {
    pub discovery_time: f64,
    pub evac_time: f64,
    pub finder: EvacRobot,
}

impl From<Finder> for EvacRobot {
    fn from(f: Finder) -> Self {
        match f {
            Finder::Fast => EvacRobot::Fast,
            Finder::Slow => EvacRobot::Slow,
        }
    }
}

impl From<StrategyFamily> for EvacFamily {
    fn from(f: StrategyFamily) -> Self {
        match f {
            StrategyFamily::Bsp => EvacFamily::Bsp,
            StrategyFamily::HalfChord => EvacFamily::HalfChord,
            StrategyFamily::FastChord => EvacFamily::FastChord,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &EvacError) -> EvacStatus {
    match e {
        EvacError::Domain { .. } => EvacStatus::Domain,
        EvacError::Infeasible { .. } | EvacError::NoFeasibleX3 { .. } => EvacStatus::Infeasible,
        _ => EvacStatus::Numerical,
    }
}

enum Failure {
    Null(&'static str),
    Core(EvacError),
}

impl From<EvacError> for Failure {
    fn from(e: EvacError) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, records any failure and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure> + UnwindSafe) -> EvacStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => EvacStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed as `{what}`"));
            EvacStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            EvacStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn handle<'a>(p: *const EvacStrategy) -> Result<&'a Strategy, Failure> {
    p.as_ref().map(|h| &h.0).ok_or(Failure::Null("strategy"))
}

unsafe fn emit(
    out: *mut *mut EvacStrategy,
    build: impl FnOnce() -> evac_core::Result<Strategy>,
) -> Result<(), Failure> {
    let slot = out_ref(out, "out")?;
    *slot = std::ptr::null_mut();
    *slot = Box::into_raw(Box::new(EvacStrategy(build()?)));
    Ok(())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn evac_status_string(status: EvacStatus) -> *const c_char {
    let s: &'static str = match status {
        EvacStatus::Ok => "ok\0",
        EvacStatus::NullPointer => "null pointer argument\0",
        EvacStatus::Domain => "argument outside the domain\0",
        EvacStatus::Infeasible => "no feasible strategy for these parameters\0",
        EvacStatus::Numerical => "numerical procedure failed\0",
        EvacStatus::Panic => "internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn evac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_new_bsp(s: f64, out: *mut *mut EvacStrategy) -> EvacStatus {
    guard(|| emit(out, || build_bsp(s)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_new_half_chord(
    s: f64,
    out: *mut *mut EvacStrategy,
) -> EvacStatus {
    guard(|| emit(out, || build_half_chord(s)))
}

/// Fast-Chord with a given `x3`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_new_fast_chord(
    s: f64,
    x3: f64,
    out: *mut *mut EvacStrategy,
) -> EvacStatus {
    guard(|| {
        emit(out, || {
            build_fast_chord(s, &solve_fast_chord_system(s, x3)?)
        })
    })
}

/// Fast-Chord with `x3` chosen by search at the default resolution.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_new_fast_chord_optimal(
    s: f64,
    out: *mut *mut EvacStrategy,
) -> EvacStatus {
    let steps = NumericSteps::default();
    guard(|| {
        emit(out, || {
            let best = optimize_fast_chord(s, steps.x3_step, steps.time_step)?;
            build_fast_chord(s, &best.solution)
        })
    })
}

/// # Safety
/// `strategy` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_free(strategy: *mut EvacStrategy) {
    if !strategy.is_null() {
        drop(Box::from_raw(strategy));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_family(
    strategy: *const EvacStrategy,
    out: *mut EvacFamily,
) -> EvacStatus {
    guard(|| {
        *out_ref(out, "out")? = handle(strategy)?.family.into();
        Ok(())
    })
}

/// Time at which both robots have finished their schedules.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_duration(
    strategy: *const EvacStrategy,
    out: *mut f64,
) -> EvacStatus {
    guard(|| {
        *out_ref(out, "out")? = handle(strategy)?.duration();
        Ok(())
    })
}

/// Position of a robot at time `t`; times past the schedule hold the last point.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn evac_strategy_position(
    strategy: *const EvacStrategy,
    robot: EvacRobot,
    t: f64,
    x: *mut f64,
    y: *mut f64,
) -> EvacStatus {
    guard(|| {
        let st = handle(strategy)?;
        let (x, y) = (out_ref(x, "x")?, out_ref(y, "y")?);
        if !(t >= 0.0) {
            return Err(EvacError::Domain {
                what: "t",
                value: t,
                domain: "[0, ∞)",
            }
            .into());
        }
        let traj = match robot {
            EvacRobot::Fast => &st.fast,
            EvacRobot::Slow => &st.slow,
        };
        let p = traj.position_at(t);
        (*x, *y) = (p.x, p.y);
        Ok(())
    })
}

/// Evacuation time when the exit is at `exit_angle`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn evac_time_for_exit_angle(
    strategy: *const EvacStrategy,
    exit_angle: f64,
    out: *mut EvacExitOutcome,
) -> EvacStatus {
    guard(|| {
        let o = evac_time_for_exit(handle(strategy)?, exit_angle)?;
        *out_ref(out, "out")? = EvacExitOutcome {
            discovery_time: o.discovery_time,
            evac_time: o.evac_time,
            finder: o.finder.into(),
        };
        Ok(())
    })
}

/// Worst exit placement found on a grid of `grid_step` refined to `refine_tol`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn evac_worst_case(
    strategy: *const EvacStrategy,
    grid_step: f64,
    refine_tol: f64,
    out: *mut EvacWorstCase,
) -> EvacStatus {
    guard(|| {
        let w = worst_case(handle(strategy)?, grid_step, refine_tol)?;
        *out_ref(out, "out")? = EvacWorstCase {
            exit_angle: w.exit_angle,
            discovery_time: w.discovery_time,
            evac_time: w.evac_time,
            finder: w.finder.into(),
        };
        Ok(())
    })
}

unsafe fn bound(
    s: f64,
    out: *mut f64,
    f: impl FnOnce(f64) -> evac_core::Result<f64> + UnwindSafe,
) -> EvacStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        *slot = f(s)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_ub_bsp(s: f64, out: *mut f64) -> EvacStatus {
    bound(s, out, ub_bsp)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_ub_half_chord(s: f64, out: *mut f64) -> EvacStatus {
    bound(s, out, ub_half_chord)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_lb_fes(s: f64, out: *mut f64) -> EvacStatus {
    bound(s, out, lb_fes)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_lb_bes_original(s: f64, out: *mut f64) -> EvacStatus {
    bound(s, out, lb_bes_original)
}

/// Improved lower bound at the default search resolution.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_lb_bes_improved(s: f64, out: *mut f64) -> EvacStatus {
    let st = NumericSteps::default();
    bound(s, out, move |s| {
        Ok(lb_bes_improved(s, st.y_step, st.k_step)?.value)
    })
}

/// Best lower bound at the default resolution.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn evac_lb_overall(s: f64, out: *mut f64) -> EvacStatus {
    bound(s, out, |s| lb_overall(s, &NumericSteps::default()))
}

/// Best upper bound at the default resolution, with the family achieving it.
/// `family` may be NULL.
///
/// # Safety
/// `out` must be valid for writes; `family` must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn evac_ub_overall(
    s: f64,
    out: *mut f64,
    family: *mut EvacFamily,
) -> EvacStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        let choice = ub_overall(s, &NumericSteps::default())?;
        *slot = choice.value;
        if let Some(f) = family.as_mut() {
            *f = choice.family.into();
        }
        Ok(())
    })
}

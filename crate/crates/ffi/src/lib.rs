//! C ABI over the recotree solvers.
//!
//! Instances and solutions are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns an
//! [`RtStatus`]; on failure [`rt_last_error`] describes what went wrong on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use recotree::cli::files::InstanceFile;
use recotree::mst::minimum_spanning_tree;
use recotree::oracle::OracleLimits;
use recotree::robust::{self, FValue, IntervalInstance, ScenarioModel};
use recotree::{inc, rational, rec, Error, Graph, Rational, Tree};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtStatus {
    Ok = 0,
    /// Null pointer or buffer length mismatch.
    InvalidArgument = 1,
    /// Malformed instance: bad endpoints, negative costs, k out of range.
    InvalidInstance = 2,
    Disconnected = 3,
    /// No finite approximation ratio can be certified.
    NoCertificate = 4,
    TooLarge = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtModel {
    Interval = 0,
    BudgetDiscrete = 1,
    BudgetContinuous = 2,
}

fn model_of(raw: u32) -> Result<ScenarioModel, RtStatus> {
    match raw {
        x if x == RtModel::Interval as u32 => Ok(ScenarioModel::Interval),
        x if x == RtModel::BudgetDiscrete as u32 => Ok(ScenarioModel::DiscreteBudget),
        x if x == RtModel::BudgetContinuous as u32 => Ok(ScenarioModel::ContinuousBudget),
        _ => Err(fail(RtStatus::InvalidArgument, format!("unknown model {raw}"))),
    }
}

/// A graph with first-stage, nominal and deviation costs.
pub struct RtInstance {
    inner: IntervalInstance,
}

/// Trees and objective returned by a solver.
pub struct RtSolution {
    first_stage: Vec<usize>,
    recovery: Vec<usize>,
    objective: Rational,
    objective_exact: bool,
    ratio: Option<Rational>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> RtStatus {
    match e {
        Error::Disconnected => RtStatus::Disconnected,
        Error::TooLarge(_) => RtStatus::TooLarge,
        Error::InvalidGraph(_)
        | Error::InvalidTree(_)
        | Error::LengthMismatch { .. }
        | Error::NegativeCost { .. }
        | Error::InvalidRecovery { .. }
        | Error::InvalidInstance(_) => RtStatus::InvalidInstance,
        _ => RtStatus::Internal,
    }
}

fn fail(status: RtStatus, message: impl Into<String>) -> RtStatus {
    set_error(message);
    status
}

// Runs `body`, turning library errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), RtStatus>) -> RtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RtStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(RtStatus::Internal, "panic inside recotree"),
    }
}

fn check(r: recotree::Result<()>) -> Result<(), RtStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn lift<T>(r: recotree::Result<T>) -> Result<T, RtStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], RtStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(RtStatus::InvalidArgument, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, RtStatus> {
    p.as_ref()
        .ok_or_else(|| fail(RtStatus::InvalidArgument, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), RtStatus> {
    if out.is_null() {
        return Err(fail(RtStatus::InvalidArgument, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds an instance from parallel edge arrays. `deviation` may be null
/// for all-zero deviations.
///
/// # Safety
/// Every non-null array must hold `edge_count` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_instance_new(
    node_count: usize,
    edge_count: usize,
    tails: *const usize,
    heads: *const usize,
    first_cost: *const i64,
    nominal: *const i64,
    deviation: *const i64,
    out: *mut *mut RtInstance,
) -> RtStatus {
    guard(|| {
        let tails = input(tails, edge_count, "tails")?;
        let heads = input(heads, edge_count, "heads")?;
        let first = input(first_cost, edge_count, "first_cost")?;
        let nominal = input(nominal, edge_count, "nominal")?;
        let deviation = if deviation.is_null() {
            vec![0; edge_count]
        } else {
            input(deviation, edge_count, "deviation")?.to_vec()
        };
        let graph = lift(Graph::new(node_count, tails.iter().copied().zip(heads.iter().copied())))?;
        let inner = lift(IntervalInstance::new(
            graph,
            first.to_vec(),
            nominal.to_vec(),
            deviation,
            0,
            ScenarioModel::Interval,
            0,
        ))?;
        store(out, RtInstance { inner })
    })
}

/// Parses an instance file in the command-line JSON format. Its `k`,
/// `model` and `gamma` fields are ignored; solvers take them as arguments.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_instance_from_json(json: *const c_char, out: *mut *mut RtInstance) -> RtStatus {
    guard(|| {
        if json.is_null() {
            return Err(fail(RtStatus::InvalidArgument, "json is null"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| fail(RtStatus::InvalidInstance, e.to_string()))?;
        let file = InstanceFile::parse(text).map_err(|e| fail(RtStatus::InvalidInstance, e.to_string()))?;
        let inner = lift(file.to_instance().with_model(ScenarioModel::Interval, 0))?;
        store(out, RtInstance { inner })
    })
}

/// # Safety
/// `inst` must come from an `rt_instance_*` constructor, or be null.
#[no_mangle]
pub unsafe extern "C" fn rt_instance_free(inst: *mut RtInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live instance handle or null.
#[no_mangle]
pub unsafe extern "C" fn rt_instance_edge_count(inst: *const RtInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.graph.edge_count())
}

fn with_k(inst: &RtInstance, k: usize, model: ScenarioModel, gamma: i64) -> Result<IntervalInstance, RtStatus> {
    let mut copy = lift(inst.inner.with_model(model, gamma))?;
    check(copy.graph.check_recovery(k))?;
    copy.k = k;
    Ok(copy)
}

/// Minimizes `C(X) + c(Y)` over tree pairs with `|Y \ X| <= k`.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_solve_rec(inst: *const RtInstance, k: usize, out: *mut *mut RtSolution) -> RtStatus {
    guard(|| {
        let inst = with_k(handle(inst, "instance")?, k, ScenarioModel::Interval, 0)?;
        let sol = lift(rec::solve_rec_st(&inst.graph, &inst.first_cost, &inst.nominal, k))?;
        store(
            out,
            RtSolution {
                first_stage: sol.first_stage.edges().to_vec(),
                recovery: sol.recovery.edges().to_vec(),
                objective: rational(sol.total_cost),
                objective_exact: true,
                ratio: None,
            },
        )
    })
}

/// Minimizes `c(Y)` over trees sharing at least `n - 1 - k` edges with the
/// given base tree. A null `base` with `base_len == 0` means the minimum
/// spanning tree under the first-stage costs.
///
/// # Safety
/// `base` must hold `base_len` edge ids when non-null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_solve_inc(
    inst: *const RtInstance,
    base: *const usize,
    base_len: usize,
    k: usize,
    out: *mut *mut RtSolution,
) -> RtStatus {
    guard(|| {
        let inst = with_k(handle(inst, "instance")?, k, ScenarioModel::Interval, 0)?;
        let base = if base.is_null() && base_len == 0 {
            lift(minimum_spanning_tree(&inst.graph, &inst.first_cost))?
        } else {
            let ids = input(base, base_len, "base")?;
            lift(Tree::new(&inst.graph, ids.iter().copied()))?
        };
        let sol = lift(inc::inc_st(&inst.graph, &inst.nominal, &base, k))?;
        store(
            out,
            RtSolution {
                first_stage: base.edges().to_vec(),
                recovery: sol.tree.edges().to_vec(),
                objective: rational(sol.cost),
                objective_exact: true,
                ratio: None,
            },
        )
    })
}

/// Recoverable robust tree under `model` (an [`RtModel`] value) with budget `gamma`. The interval
/// model is solved exactly; the budgeted models return an approximation
/// with a certified ratio. Returns `NoCertificate` (and still writes the
/// solution) when no finite ratio applies.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_solve_robust(
    inst: *const RtInstance,
    model: u32,
    gamma: i64,
    k: usize,
    out: *mut *mut RtSolution,
) -> RtStatus {
    guard(|| {
        let model = model_of(model)?;
        let inst = with_k(handle(inst, "instance")?, k, model, gamma)?;
        check(inst.graph.ensure_connected())?;
        if model == ScenarioModel::Interval {
            let sol = lift(robust::solve_interval(&inst))?;
            return store(
                out,
                RtSolution {
                    first_stage: sol.first_stage.edges().to_vec(),
                    recovery: sol.recovery.edges().to_vec(),
                    objective: rational(sol.worst_case_total),
                    objective_exact: true,
                    ratio: Some(rational(1)),
                },
            );
        }
        let cert = lift(match model {
            ScenarioModel::DiscreteBudget => robust::approx_discrete_budget(&inst),
            _ => robust::approx_continuous_budget(&inst),
        })?;
        let value = lift(robust::evaluate_F(&cert.first_stage, &inst, &OracleLimits::default()))?;
        let (objective, objective_exact) = match value {
            FValue::Exact(v) => (v, true),
            FValue::Bounds { upper, .. } => (upper, false),
        };
        let certified = cert.certified_ratio.is_some();
        store(
            out,
            RtSolution {
                first_stage: cert.first_stage.edges().to_vec(),
                recovery: cert.recovery.edges().to_vec(),
                objective,
                objective_exact,
                ratio: cert.certified_ratio,
            },
        )?;
        if !certified {
            return Err(fail(RtStatus::NoCertificate, "no finite approximation ratio can be certified"));
        }
        Ok(())
    })
}

/// # Safety
/// `sol` must come from a solver call, or be null.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_free(sol: *mut RtSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

unsafe fn copy_out(ids: &[usize], buf: *mut usize, cap: usize) -> usize {
    if !buf.is_null() {
        let n = ids.len().min(cap);
        ptr::copy_nonoverlapping(ids.as_ptr(), buf, n);
    }
    ids.len()
}

/// Copies up to `cap` first-stage edge ids (ascending) into `buf` and
/// returns the tree size. Pass a null `buf` to query the size.
///
/// # Safety
/// `sol` must be a live solution; `buf` must have room for `cap` ids.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_first_stage(sol: *const RtSolution, buf: *mut usize, cap: usize) -> usize {
    sol.as_ref().map_or(0, |s| copy_out(&s.first_stage, buf, cap))
}

/// Same as [`rt_solution_first_stage`] for the recovery tree.
///
/// # Safety
/// `sol` must be a live solution; `buf` must have room for `cap` ids.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_recovery(sol: *const RtSolution, buf: *mut usize, cap: usize) -> usize {
    sol.as_ref().map_or(0, |s| copy_out(&s.recovery, buf, cap))
}

/// Writes the objective to `value` when it is an integer that fits.
///
/// # Safety
/// `sol` must be a live solution; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_objective_i64(sol: *const RtSolution, value: *mut i64) -> RtStatus {
    guard(|| {
        let sol = handle(sol, "solution")?;
        if value.is_null() {
            return Err(fail(RtStatus::InvalidArgument, "value is null"));
        }
        let to_i64 = || -> Option<i64> {
            if !sol.objective.is_integer() {
                return None;
            }
            sol.objective.numer().to_string().parse().ok()
        };
        *value = to_i64().ok_or_else(|| fail(RtStatus::InvalidArgument, "objective is not a 64-bit integer"))?;
        Ok(())
    })
}

/// False when the objective is only an upper bound on the robust value.
///
/// # Safety
/// `sol` must be a live solution or null.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_objective_is_exact(sol: *const RtSolution) -> bool {
    sol.as_ref().is_some_and(|s| s.objective_exact)
}

fn owned_string(q: &Rational) -> *mut c_char {
    CString::new(q.to_string()).map_or(ptr::null_mut(), CString::into_raw)
}

/// Objective as `"p"` or `"p/q"`. Release with [`rt_string_free`].
///
/// # Safety
/// `sol` must be a live solution or null.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_objective_string(sol: *const RtSolution) -> *mut c_char {
    sol.as_ref().map_or(ptr::null_mut(), |s| owned_string(&s.objective))
}

/// Certified approximation ratio as `"p/q"`, or null when there is none.
/// Exact solvers report `"1"` (robust) or null (rec, inc). Release with
/// [`rt_string_free`].
///
/// # Safety
/// `sol` must be a live solution or null.
#[no_mangle]
pub unsafe extern "C" fn rt_solution_ratio_string(sol: *const RtSolution) -> *mut c_char {
    sol.as_ref()
        .and_then(|s| s.ratio.as_ref())
        .map_or(ptr::null_mut(), owned_string)
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn rt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

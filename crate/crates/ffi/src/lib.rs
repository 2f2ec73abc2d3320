//! C ABI for the gravstark library.
//!
//! Mass models are opaque handles created with `gs_mass_model_new` (or
//! `gs_mass_model_from_ratios`) and released with `gs_mass_model_free`.
//! Every other call returns a [`GsStatus`] and writes its result through an
//! out-pointer; on failure `gs_last_error_message` describes the problem.
//! Field magnitudes are in m/s², masses in kg, energies in J.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gravstark::{
    codata_defaults, derive_composites, frame_discrepancy, lifetime_eq7, splitting_table, Error, FieldSpec,
    Lifetime, MassModel,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    OutOfRange = 3,
    Domain = 4,
    UndefinedRatio = 5,
    Numerical = 6,
    Panic = 7,
}

/// Opaque mass model.
pub struct GsMassModel {
    inner: MassModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsComposites {
    /// M = mₑ + m_p
    pub total: f64,
    /// μ = mₑm_p/M
    pub reduced: f64,
    /// M̄ = m̄ₑ + m̄_p
    pub total_grav: f64,
    /// 𝓜 = (m̄_p·mₑ − m̄ₑ·m_p)/M
    pub script_m: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsLifetime {
    /// True when 𝓜g = 0; the numeric fields are then zero.
    pub stable: bool,
    pub force_atomic: f64,
    pub exponent: f64,
    pub log10_tau_seconds: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsFrameDiscrepancy {
    pub cm_mass_ratio: f64,
    pub internal_coupling_difference: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> GsStatus {
    match err {
        Error::InvalidInput(_) | Error::Resource(_) => GsStatus::InvalidInput,
        Error::OutOfRange { .. } => GsStatus::OutOfRange,
        Error::Domain(_) => GsStatus::Domain,
        Error::UndefinedRatio(_) => GsStatus::UndefinedRatio,
        _ => GsStatus::Numerical,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GsStatus::Ok,
        Ok(Err(e)) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GsStatus::Panic
        }
    }
}

fn null_error(what: &str) -> GsStatus {
    set_error(format!("{what} is null"));
    GsStatus::NullPointer
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn store_model(model: Result<MassModel, Error>, out: *mut *mut GsMassModel) -> GsStatus {
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        let boxed = Box::new(GsMassModel { inner: model? });
        // SAFETY: `out` checked non-null; caller guarantees it is writable.
        unsafe { *out = Box::into_raw(boxed) };
        Ok(())
    })
}

/// Creates a mass model from absolute masses (kg).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gs_mass_model_new(
    m_e: f64,
    m_p: f64,
    mbar_e: f64,
    mbar_p: f64,
    out: *mut *mut GsMassModel,
) -> GsStatus {
    store_model(MassModel::new(m_e, m_p, mbar_e, mbar_p), out)
}

/// Creates a mass model from multiples of the CODATA electron and proton
/// masses.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gs_mass_model_from_ratios(
    m_e: f64,
    m_p: f64,
    mbar_e: f64,
    mbar_p: f64,
    out: *mut *mut GsMassModel,
) -> GsStatus {
    store_model(MassModel::from_ratios(&codata_defaults(), m_e, m_p, mbar_e, mbar_p), out)
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `model` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_mass_model_free(model: *mut GsMassModel) {
    if !model.is_null() {
        // SAFETY: caller guarantees the handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Borrows the model behind a handle.
///
/// # Safety
/// `model` must be NULL or a live handle.
unsafe fn model_ref<'a>(model: *const GsMassModel) -> Option<&'a MassModel> {
    // SAFETY: forwarded to the caller.
    unsafe { model.as_ref() }.map(|m| &m.inner)
}

macro_rules! checked {
    ($model:expr, $out:expr) => {{
        // SAFETY: the public functions document the handle contract.
        let Some(model) = (unsafe { model_ref($model) }) else {
            return null_error("model");
        };
        if $out.is_null() {
            return null_error("out");
        }
        model
    }};
}

/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_composites(model: *const GsMassModel, out: *mut GsComposites) -> GsStatus {
    let model = checked!(model, out);
    guard(|| {
        let c = derive_composites(model)?;
        let value = GsComposites {
            total: c.total,
            reduced: c.reduced,
            total_grav: c.total_grav,
            script_m: c.script_m,
        };
        // SAFETY: checked non-null above.
        unsafe { *out = value };
        Ok(())
    })
}

/// First-order shift (J) of sublevel k of level n in a field of magnitude g.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_first_order_shift(
    model: *const GsMassModel,
    n: u32,
    k: i32,
    g: f64,
    out: *mut f64,
) -> GsStatus {
    let model = checked!(model, out);
    guard(|| {
        let k_consts = codata_defaults();
        let c = derive_composites(model)?;
        let table = splitting_table(n, &c, &FieldSpec::along_z(g)?, &k_consts)?;
        let sub = table
            .sublevels
            .iter()
            .find(|s| s.k == k)
            .ok_or_else(|| Error::InvalidInput(format!("k = {k} is not a sublevel of n = {n}")))?;
        // SAFETY: checked non-null above.
        unsafe { *out = sub.shift };
        Ok(())
    })
}

/// Spacing (J) between adjacent sublevels of level n; 0 for n = 1.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_splitting_spacing(model: *const GsMassModel, n: u32, g: f64, out: *mut f64) -> GsStatus {
    let model = checked!(model, out);
    guard(|| {
        let c = derive_composites(model)?;
        let table = splitting_table(n, &c, &FieldSpec::along_z(g)?, &codata_defaults())?;
        // SAFETY: checked non-null above.
        unsafe { *out = table.spacing };
        Ok(())
    })
}

/// Closed-form resonance lifetime in a field of magnitude g.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_lifetime(model: *const GsMassModel, g: f64, out: *mut GsLifetime) -> GsStatus {
    let model = checked!(model, out);
    guard(|| {
        let c = derive_composites(model)?;
        let value = match lifetime_eq7(&c, &FieldSpec::along_z(g)?, &codata_defaults())? {
            Lifetime::Stable => GsLifetime {
                stable: true,
                ..GsLifetime::default()
            },
            Lifetime::Decaying(e) => GsLifetime {
                stable: false,
                force_atomic: e.force_atomic,
                exponent: e.exponent_eq7,
                log10_tau_seconds: e.log10_tau_eq7,
            },
        };
        // SAFETY: checked non-null above.
        unsafe { *out = value };
        Ok(())
    })
}

/// Field-versus-acceleration discrepancy at magnitude g.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_frame_discrepancy(
    model: *const GsMassModel,
    g: f64,
    out: *mut GsFrameDiscrepancy,
) -> GsStatus {
    let model = checked!(model, out);
    guard(|| {
        let d = frame_discrepancy(model, g)?;
        // SAFETY: checked non-null above.
        unsafe {
            *out = GsFrameDiscrepancy {
                cm_mass_ratio: d.cm_mass_ratio,
                internal_coupling_difference: d.internal_coupling_difference,
            }
        };
        Ok(())
    })
}

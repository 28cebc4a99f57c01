//! C interface to `paecs`.
//!
//! Every function returns a [`PaecsStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be copied out
//! with [`paecs_last_error_message`]. Panics are caught at the boundary and
//! reported as [`PaecsStatus::Panic`].
//!
//! Oracle states are returned as opaque [`PaecsState`] handles that must be
//! released with [`paecs_state_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use paecs::{Error, Family, PaecsSpec, TruncationPolicy, TwoModeFockState, C64};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaecsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Overflow = 4,
    Degenerate = 5,
    Truncation = 6,
    Numerical = 7,
    Unsupported = 8,
    Panic = 9,
}

/// Values accepted in [`PaecsSpecC::family`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaecsFamily {
    Psi1Plus = 0,
    Psi1Minus = 1,
    Psi2Plus = 2,
    Psi2Minus = 3,
}

/// A state request: family, complex amplitude and photon numbers.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PaecsSpecC {
    /// One of the [`PaecsFamily`] values.
    pub family: u32,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub m: u32,
    pub n: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PaecsEntropyC {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub entropy_bits: f64,
}

/// Normalized truncated Fock vector built by the oracle.
pub struct PaecsState {
    state: TwoModeFockState,
    policy: TruncationPolicy,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(PaecsStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match err {
            Error::Domain(_) => PaecsStatus::Domain,
            Error::Overflow(_) => PaecsStatus::Overflow,
            Error::Degenerate(_) => PaecsStatus::Degenerate,
            Error::Truncation { .. } => PaecsStatus::Truncation,
            Error::NumericalConsistency(_) => PaecsStatus::Numerical,
            Error::Unsupported(_) => PaecsStatus::Unsupported,
            Error::InvalidConfig(_) => PaecsStatus::InvalidArgument,
        };
        Failure(status, err.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(PaecsStatus::NullPointer, format!("{name} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PaecsStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (PaecsStatus::Ok, String::new()),
        Ok(Err(Failure(status, msg))) => (status, msg),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (PaecsStatus::Panic, format!("panic: {msg}"))
        }
    };
    set_last_error(msg);
    status
}

/// # Safety
/// `p` must be null or valid for reads.
unsafe fn read<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(name))
}

/// # Safety
/// `p` must be null or valid for writes.
unsafe fn write<T>(p: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    unsafe { p.write(value) };
    Ok(())
}

fn to_spec(c: &PaecsSpecC) -> Result<PaecsSpec, Failure> {
    let family = match c.family {
        0 => Family::Psi1Plus,
        1 => Family::Psi1Minus,
        2 => Family::Psi2Plus,
        3 => Family::Psi2Minus,
        other => {
            return Err(Failure(
                PaecsStatus::InvalidArgument,
                format!("unknown family {other}"),
            ))
        }
    };
    Ok(PaecsSpec::new(
        family,
        C64::new(c.alpha_re, c.alpha_im),
        c.m,
        c.n,
    )?)
}

fn policy(max_dim: usize) -> TruncationPolicy {
    let policy = TruncationPolicy::default();
    if max_dim == 0 {
        policy
    } else {
        policy.with_max_dim(max_dim)
    }
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn paecs_status_string(status: PaecsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PaecsStatus::Ok => c"ok",
        PaecsStatus::NullPointer => c"null pointer",
        PaecsStatus::InvalidArgument => c"invalid argument",
        PaecsStatus::Domain => c"argument out of domain",
        PaecsStatus::Overflow => c"overflow",
        PaecsStatus::Degenerate => c"degenerate state",
        PaecsStatus::Truncation => c"Fock truncation insufficient",
        PaecsStatus::Numerical => c"numerical consistency failure",
        PaecsStatus::Unsupported => c"unsupported combination",
        PaecsStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated
/// and NUL-terminated) and returns its full length in bytes, excluding the
/// terminator. `buf` may be null when `len` is 0.
///
/// # Safety
/// `buf` must be valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Laguerre polynomial `L_m(x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_laguerre(m: u32, x: f64, out: *mut f64) -> PaecsStatus {
    guard(|| unsafe { write(out, paecs::laguerre(m, x)?, "out") })
}

/// Normalization constant of the state.
///
/// # Safety
/// `spec` must be valid for reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_normalization(
    spec: *const PaecsSpecC,
    out: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let spec = to_spec(read(spec, "spec")?)?;
        write(out, paecs::normalization(&spec)?, "out")
    })
}

/// Schmidt eigenvalues and entanglement entropy in bits.
///
/// # Safety
/// `spec` must be valid for reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_entropy(
    spec: *const PaecsSpecC,
    out: *mut PaecsEntropyC,
) -> PaecsStatus {
    guard(|| unsafe {
        let e = paecs::entropy(&to_spec(read(spec, "spec")?)?)?;
        let value = PaecsEntropyC {
            lambda_plus: e.lambda_plus,
            lambda_minus: e.lambda_minus,
            entropy_bits: e.entropy_bits,
        };
        write(out, value, "out")
    })
}

/// `⟨bra|ket⟩` in closed form.
///
/// # Safety
/// `bra` and `ket` must be valid for reads, `out_re` and `out_im` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_scalar_product(
    bra: *const PaecsSpecC,
    ket: *const PaecsSpecC,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let z = paecs::scalar_product(&to_spec(read(bra, "bra")?)?, &to_spec(read(ket, "ket")?)?)?;
        write(out_re, z.re, "out_re")?;
        write(out_im, z.im, "out_im")
    })
}

/// Husimi Q-function in closed form.
///
/// # Safety
/// `spec` must be valid for reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_q_analytic(
    spec: *const PaecsSpecC,
    z1_re: f64,
    z1_im: f64,
    z2_re: f64,
    z2_im: f64,
    out: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let spec = to_spec(read(spec, "spec")?)?;
        let q = paecs::q_analytic(&spec, C64::new(z1_re, z1_im), C64::new(z2_re, z2_im))?;
        write(out, q, "out")
    })
}

/// Integral of Q over phase space by Gauss–Legendre quadrature with
/// `nodes_per_axis` nodes (at least 16).
///
/// # Safety
/// `spec` must be valid for reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_q_normalization(
    spec: *const PaecsSpecC,
    nodes_per_axis: usize,
    out: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let spec = to_spec(read(spec, "spec")?)?;
        write(
            out,
            paecs::q_normalization(&spec, nodes_per_axis)?.estimate,
            "out",
        )
    })
}

/// Builds the normalized oracle state. `max_dim` caps the Fock dimension
/// per mode; 0 selects the default. On success `*out` owns a new handle.
///
/// # Safety
/// `spec` must be valid for reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_build(
    spec: *const PaecsSpecC,
    max_dim: usize,
    out: *mut *mut PaecsState,
) -> PaecsStatus {
    guard(|| unsafe {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = to_spec(read(spec, "spec")?)?;
        let policy = policy(max_dim);
        let built = paecs::build_paecs_numeric(&spec, &policy)?;
        let handle = Box::new(PaecsState {
            state: built.state,
            policy,
        });
        write(out, Box::into_raw(handle), "out")
    })
}

/// Releases a handle from [`paecs_state_build`]. Null is ignored.
///
/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_free(state: *mut PaecsState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// # Safety
/// `state` must be a live handle; `dim_a` and `dim_b` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_dims(
    state: *const PaecsState,
    dim_a: *mut usize,
    dim_b: *mut usize,
) -> PaecsStatus {
    guard(|| unsafe {
        let s = read(state, "state")?;
        if dim_a.is_null() || dim_b.is_null() {
            return Err(null("dims"));
        }
        write(dim_a, s.state.dim_a(), "dim_a")?;
        write(dim_b, s.state.dim_b(), "dim_b")
    })
}

/// Amplitude on `|p, q⟩`; zero outside the stored block.
///
/// # Safety
/// `state` must be a live handle; `out_re` and `out_im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_coeff(
    state: *const PaecsState,
    p: usize,
    q: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let s = read(state, "state")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("out"));
        }
        let z = s.state.get(p, q);
        write(out_re, z.re, "out_re")?;
        write(out_im, z.im, "out_im")
    })
}

/// Von Neumann entropy in bits of the reduced density matrix of mode b.
///
/// # Safety
/// `state` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_entropy(
    state: *const PaecsState,
    out: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let s = read(state, "state")?;
        write(
            out,
            paecs::vn_entropy(&paecs::partial_trace_b(&s.state))?,
            "out",
        )
    })
}

/// `|⟨z1, z2|ψ⟩|² / π²` from the stored amplitudes.
///
/// # Safety
/// `state` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn paecs_state_husimi(
    state: *const PaecsState,
    z1_re: f64,
    z1_im: f64,
    z2_re: f64,
    z2_im: f64,
    out: *mut f64,
) -> PaecsStatus {
    guard(|| unsafe {
        let s = read(state, "state")?;
        let q = paecs::husimi_q_numeric(
            &s.state,
            C64::new(z1_re, z1_im),
            C64::new(z2_re, z2_im),
            &s.policy,
        )?;
        write(out, q, "out")
    })
}

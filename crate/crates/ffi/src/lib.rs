//! C ABI for `enriques-lattice`.
//!
//! Objects are opaque handles created by `el_*_new` functions and released
//! with the matching `el_*_free`. Every fallible call returns an
//! [`ElStatus`]; on failure a message is kept per thread and can be read
//! with [`el_last_error_message`]. Matrices are passed row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use enriques_lattice::class_group::local_class_group;
use enriques_lattice::e10::{build_e10, HyperbolicPlane, E10, RANK};
use enriques_lattice::f2::F2QuadSpace;
use enriques_lattice::roots::{AdeType, Family};
use enriques_lattice::{IntMatrix, Isometry, Lattice, LatticeError};

/// Result codes. `EL_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotIsometry = 4,
    OutsidePositiveCone = 5,
    NotInG0 = 6,
    Overflow = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

pub struct ElLattice(Lattice);
pub struct ElIsometry(Isometry);
pub struct ElE10(E10);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &LatticeError) -> ElStatus {
    match err {
        LatticeError::DimensionMismatch { .. } => ElStatus::DimensionMismatch,
        LatticeError::NotIsometry => ElStatus::NotIsometry,
        LatticeError::OutsidePositiveCone => ElStatus::OutsidePositiveCone,
        LatticeError::NotInG0 => ElStatus::NotInG0,
        LatticeError::Overflow => ElStatus::Overflow,
        LatticeError::Internal(_) | LatticeError::IterationCap(_) => ElStatus::Internal,
        _ => ElStatus::InvalidArgument,
    }
}

fn fail(status: ElStatus, msg: impl Into<String>) -> ElStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), ElStatus>) -> ElStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ElStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(ElStatus::Internal, "panic inside enriques-lattice"),
    }
}

fn lift<T>(r: enriques_lattice::Result<T>) -> Result<T, ElStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), ElStatus> {
    if p.is_null() {
        Err(fail(ElStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], ElStatus> {
    non_null(p, what)?;
    // SAFETY: caller guarantees `len` readable elements at `p`.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

unsafe fn square_matrix(data: *const i64, n: usize) -> Result<IntMatrix, ElStatus> {
    if n == 0 {
        return Err(fail(ElStatus::InvalidArgument, "rank must be positive"));
    }
    let s = unsafe { slice(data, n * n, "matrix")? };
    lift(IntMatrix::from_rows(s.chunks(n).map(|r| r.to_vec()).collect()))
}

unsafe fn write_out<T: Copy>(src: &[T], out: *mut T, cap: usize, len: *mut usize) -> Result<(), ElStatus> {
    if !len.is_null() {
        // SAFETY: checked non-null; caller provides a writable usize.
        unsafe { *len = src.len() };
    }
    if src.len() > cap {
        return Err(fail(ElStatus::BufferTooSmall, format!("need {} entries, have {cap}", src.len())));
    }
    if !src.is_empty() {
        non_null(out, "output buffer")?;
        // SAFETY: `out` has room for `cap >= src.len()` elements.
        unsafe { ptr::copy_nonoverlapping(src.as_ptr(), out, src.len()) };
    }
    Ok(())
}

fn ade(family: c_char, rank: usize) -> Result<AdeType, ElStatus> {
    let fam = match family as u8 {
        b'A' | b'a' => Family::A,
        b'D' | b'd' => Family::D,
        b'E' | b'e' => Family::E,
        other => return Err(fail(ElStatus::InvalidArgument, format!("unknown family {:?}", other as char))),
    };
    lift(AdeType::new(fam, rank))
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `cap`) and returns its full length without the
/// terminator. Returns 0 when there is no error.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn el_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            // SAFETY: `buf` has `cap > n` writable bytes.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn el_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Lattice from an `n × n` symmetric nondegenerate Gram matrix.
///
/// # Safety
/// `gram` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_new(gram: *const i64, n: usize, out: *mut *mut ElLattice) -> ElStatus {
    guard(|| {
        non_null(out, "out")?;
        let m = unsafe { square_matrix(gram, n)? };
        let l = lift(Lattice::new(m))?;
        unsafe { *out = Box::into_raw(Box::new(ElLattice(l))) };
        Ok(())
    })
}

/// Root lattice of type `family` (`'A'`, `'D'` or `'E'`) and `rank`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_from_ade(family: c_char, rank: usize, out: *mut *mut ElLattice) -> ElStatus {
    guard(|| {
        non_null(out, "out")?;
        let t = ade(family, rank)?;
        unsafe { *out = Box::into_raw(Box::new(ElLattice(t.lattice()))) };
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_free(l: *mut ElLattice) {
    if !l.is_null() {
        drop(unsafe { Box::from_raw(l) });
    }
}

/// # Safety
/// `l` must be a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_rank(l: *const ElLattice) -> usize {
    if l.is_null() {
        return 0;
    }
    unsafe { (*l).0.rank() }
}

/// Determinant, parity and signature `(positive, negative)`.
///
/// # Safety
/// `l` must be a live handle; every output pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_invariants(
    l: *const ElLattice,
    determinant: *mut i64,
    is_even: *mut bool,
    positive: *mut usize,
    negative: *mut usize,
) -> ElStatus {
    guard(|| {
        non_null(l, "lattice")?;
        for (p, what) in [
            (determinant as *const u8, "determinant"),
            (is_even as *const u8, "is_even"),
            (positive as *const u8, "positive"),
            (negative as *const u8, "negative"),
        ] {
            non_null(p, what)?;
        }
        let inv = lift(unsafe { &(*l).0 }.invariants())?;
        unsafe {
            *determinant = inv.determinant;
            *is_even = inv.is_even;
            *positive = inv.signature.0;
            *negative = inv.signature.1;
        }
        Ok(())
    })
}

/// Invariant factors `d_1 | d_2 | …` of the discriminant group. `len`
/// receives the number of factors even when `cap` is too small.
///
/// # Safety
/// `l` must be a live handle, `out` must have `cap` writable slots and
/// `len` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn el_lattice_discriminant_factors(
    l: *const ElLattice,
    out: *mut i64,
    cap: usize,
    len: *mut usize,
) -> ElStatus {
    guard(|| {
        non_null(l, "lattice")?;
        let g = lift(unsafe { &(*l).0 }.discriminant_group())?;
        unsafe { write_out(&g.invariant_factors, out, cap, len) }
    })
}

/// Isometry of `l` from an `n × n` row-major matrix acting on columns.
/// Fails with `NotIsometry` when the form is not preserved.
///
/// # Safety
/// `l` must be a live handle, `matrix` must hold `n * n` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_isometry_new(
    l: *const ElLattice,
    matrix: *const i64,
    n: usize,
    out: *mut *mut ElIsometry,
) -> ElStatus {
    guard(|| {
        non_null(l, "lattice")?;
        non_null(out, "out")?;
        let m = unsafe { square_matrix(matrix, n)? };
        let g = lift(Isometry::new(unsafe { &(*l).0 }, m))?;
        unsafe { *out = Box::into_raw(Box::new(ElIsometry(g))) };
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn el_isometry_free(g: *mut ElIsometry) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live isometry handle.
#[no_mangle]
pub unsafe extern "C" fn el_isometry_rank(g: *const ElIsometry) -> usize {
    if g.is_null() {
        return 0;
    }
    unsafe { (*g).0.rank() }
}

/// Copies the matrix row-major into `out` (`rank²` entries).
///
/// # Safety
/// `g` must be a live handle and `out` must have `cap` writable slots.
#[no_mangle]
pub unsafe extern "C" fn el_isometry_matrix(g: *const ElIsometry, out: *mut i64, cap: usize) -> ElStatus {
    guard(|| {
        non_null(g, "isometry")?;
        let rows = unsafe { &(*g).0 }.matrix.to_rows().concat();
        unsafe { write_out(&rows, out, cap, ptr::null_mut()) }
    })
}

/// `a ∘ b` as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles of equal rank and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn el_isometry_compose(
    a: *const ElIsometry,
    b: *const ElIsometry,
    out: *mut *mut ElIsometry,
) -> ElStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        let (a, b) = unsafe { (&(*a).0, &(*b).0) };
        if a.rank() != b.rank() {
            return Err(fail(ElStatus::DimensionMismatch, "ranks differ"));
        }
        let c = lift(a.compose(b))?;
        unsafe { *out = Box::into_raw(Box::new(ElIsometry(c))) };
        Ok(())
    })
}

/// The lattice `E10` in the basis of its fundamental roots.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_e10_new(out: *mut *mut ElE10) -> ElStatus {
    guard(|| {
        non_null(out, "out")?;
        let e = lift(build_e10())?;
        unsafe { *out = Box::into_raw(Box::new(ElE10(e))) };
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn el_e10_free(e: *mut ElE10) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

/// Reduces `x` (10 entries) into the chamber. `reduced` receives 10
/// entries; the reflection word goes to `word` with its length in
/// `word_len`.
///
/// # Safety
/// `e` must be a live handle, `x` must hold 10 values, `reduced` must have
/// 10 writable slots, `word` must have `word_cap` writable slots and
/// `word_len` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn el_e10_chamber_reduce(
    e: *const ElE10,
    x: *const i64,
    reduced: *mut i64,
    word: *mut usize,
    word_cap: usize,
    word_len: *mut usize,
) -> ElStatus {
    guard(|| {
        non_null(e, "e10")?;
        let x = unsafe { slice(x, RANK, "x")? };
        non_null(reduced, "reduced")?;
        let r = lift(unsafe { &(*e).0 }.chamber_reduce(x))?;
        unsafe {
            ptr::copy_nonoverlapping(r.reduced.as_ptr(), reduced, RANK);
            write_out(&r.word, word, word_cap, word_len)
        }
    })
}

/// The involution `σ_U` of the hyperbolic plane spanned by `f1`, `f2`
/// (10 entries each).
///
/// # Safety
/// `e` must be a live handle, `f1`, `f2` must hold 10 values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_e10_sigma_u(
    e: *const ElE10,
    f1: *const i64,
    f2: *const i64,
    out: *mut *mut ElIsometry,
) -> ElStatus {
    guard(|| {
        non_null(e, "e10")?;
        non_null(out, "out")?;
        let u = unsafe { HyperbolicPlane { f1: slice(f1, RANK, "f1")?.to_vec(), f2: slice(f2, RANK, "f2")?.to_vec() } };
        let s = lift(unsafe { &(*e).0 }.sigma_u(&u))?;
        unsafe { *out = Box::into_raw(Box::new(ElIsometry(s))) };
        Ok(())
    })
}

/// Writes whether `g` lies in the 2-congruence subgroup `G0`.
///
/// # Safety
/// `e`, `g` must be live handles and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn el_e10_is_in_g0(e: *const ElE10, g: *const ElIsometry, result: *mut bool) -> ElStatus {
    guard(|| {
        non_null(e, "e10")?;
        non_null(g, "isometry")?;
        non_null(result, "result")?;
        let r = lift(unsafe { (*e).0.is_in_g0(&(*g).0) })?;
        unsafe { *result = r };
        Ok(())
    })
}

/// Number of nonzero isotropic vectors of `E10 ⊗ F2`.
///
/// # Safety
/// `e` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn el_e10_f2_isotropic_count(e: *const ElE10, count: *mut usize) -> ElStatus {
    guard(|| {
        non_null(e, "e10")?;
        non_null(count, "count")?;
        let c = F2QuadSpace::from_e10(unsafe { &(*e).0 }).count_isotropic();
        unsafe { *count = c.nonzero_isotropic };
        Ok(())
    })
}

/// Order of the local class group of the rational double point of the
/// given type.
///
/// # Safety
/// `order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn el_class_group_order(family: c_char, rank: usize, order: *mut i64) -> ElStatus {
    guard(|| {
        non_null(order, "order")?;
        let t = ade(family, rank)?;
        let g = lift(local_class_group(t))?;
        unsafe { *order = g.group.order };
        Ok(())
    })
}

use std::ffi::{c_char, CStr};
use std::ptr;

use enriques_lattice_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { el_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(el_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn lattice_roundtrip() {
    let gram = [-2i64, 1, 1, -2];
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { el_lattice_new(gram.as_ptr(), 2, &mut l) }, ElStatus::Ok);
    assert_eq!(unsafe { el_lattice_rank(l) }, 2);

    let (mut det, mut even, mut pos, mut neg) = (0i64, false, 0usize, 0usize);
    assert_eq!(unsafe { el_lattice_invariants(l, &mut det, &mut even, &mut pos, &mut neg) }, ElStatus::Ok);
    assert_eq!((det, even, pos, neg), (3, true, 0, 2));

    let mut factors = [0i64; 4];
    let mut len = 0;
    assert_eq!(
        unsafe { el_lattice_discriminant_factors(l, factors.as_mut_ptr(), factors.len(), &mut len) },
        ElStatus::Ok
    );
    assert_eq!(&factors[..len], &[3]);
    unsafe { el_lattice_free(l) };
}

#[test]
fn rejects_bad_input() {
    let gram = [0i64, 1, 2, 0];
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { el_lattice_new(gram.as_ptr(), 2, &mut l) }, ElStatus::InvalidArgument);
    assert!(l.is_null());
    assert!(last_error().contains("symmetric"));

    assert_eq!(unsafe { el_lattice_new(ptr::null(), 2, &mut l) }, ElStatus::NullPointer);
    assert_eq!(unsafe { el_lattice_from_ade(b'F' as c_char, 4, &mut l) }, ElStatus::InvalidArgument);
    assert_eq!(unsafe { el_lattice_from_ade(b'D' as c_char, 3, &mut l) }, ElStatus::InvalidArgument);
}

#[test]
fn buffer_too_small_reports_length() {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { el_lattice_from_ade(b'D' as c_char, 6, &mut l) }, ElStatus::Ok);
    let mut len = 0;
    assert_eq!(
        unsafe { el_lattice_discriminant_factors(l, ptr::null_mut(), 0, &mut len) },
        ElStatus::BufferTooSmall
    );
    assert_eq!(len, 2);
    unsafe { el_lattice_free(l) };
}

#[test]
fn isometries() {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { el_lattice_from_ade(b'A' as c_char, 2, &mut l) }, ElStatus::Ok);
    let swap = [0i64, 1, 1, 0];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { el_isometry_new(l, swap.as_ptr(), 2, &mut g) }, ElStatus::Ok);
    let mut gg = ptr::null_mut();
    assert_eq!(unsafe { el_isometry_compose(g, g, &mut gg) }, ElStatus::Ok);
    let mut m = [0i64; 4];
    assert_eq!(unsafe { el_isometry_matrix(gg, m.as_mut_ptr(), 4) }, ElStatus::Ok);
    assert_eq!(m, [1, 0, 0, 1]);

    let shear = [1i64, 1, 0, 1];
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { el_isometry_new(l, shear.as_ptr(), 2, &mut bad) }, ElStatus::NotIsometry);
    unsafe {
        el_isometry_free(g);
        el_isometry_free(gg);
        el_lattice_free(l);
    }
}

#[test]
fn e10_calls() {
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { el_e10_new(&mut e) }, ElStatus::Ok);

    let mut count = 0;
    assert_eq!(unsafe { el_e10_f2_isotropic_count(e, &mut count) }, ElStatus::Ok);
    assert_eq!(count, 527);

    let h = [76i64, 153, 231, 195, 160, 126, 93, 61, 30, 115];
    let mut x = h;
    x[0] += 5;
    let mut reduced = [0i64; 10];
    let mut word = [0usize; 64];
    let mut len = 0;
    assert_eq!(
        unsafe { el_e10_chamber_reduce(e, x.as_ptr(), reduced.as_mut_ptr(), word.as_mut_ptr(), word.len(), &mut len) },
        ElStatus::Ok
    );
    assert!(len > 0);

    let neg = [-1i64, 0, 0, 0, 0, 0, 0, 0, 0, 0];
    assert_eq!(
        unsafe { el_e10_chamber_reduce(e, neg.as_ptr(), reduced.as_mut_ptr(), word.as_mut_ptr(), word.len(), &mut len) },
        ElStatus::OutsidePositiveCone
    );

    let f1 = [2i64, 4, 6, 5, 4, 3, 2, 1, 0, 3];
    let plane = enriques_lattice::e10::build_e10().unwrap().find_hyperbolic_planes(7, 1).unwrap().planes[0].clone();
    assert_eq!(plane.f1, f1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { el_e10_sigma_u(e, plane.f1.as_ptr(), plane.f2.as_ptr(), &mut s) }, ElStatus::Ok);
    let mut in_g0 = false;
    assert_eq!(unsafe { el_e10_is_in_g0(e, s, &mut in_g0) }, ElStatus::Ok);
    assert!(in_g0);

    let not_plane = [0i64; 10];
    let mut s2 = ptr::null_mut();
    assert_eq!(unsafe { el_e10_sigma_u(e, not_plane.as_ptr(), not_plane.as_ptr(), &mut s2) }, ElStatus::InvalidArgument);
    unsafe {
        el_isometry_free(s);
        el_e10_free(e);
    }
}

#[test]
fn class_group_orders() {
    let mut order = 0;
    for (fam, rank, want) in [(b'A', 4, 5), (b'D', 7, 4), (b'E', 6, 3), (b'E', 7, 2), (b'E', 8, 1)] {
        assert_eq!(unsafe { el_class_group_order(fam as c_char, rank, &mut order) }, ElStatus::Ok);
        assert_eq!(order, want);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/enriques_lattice.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["el_lattice_new", "el_e10_chamber_reduce", "EL_STATUS_OK", "el_last_error_message"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = std::process::Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

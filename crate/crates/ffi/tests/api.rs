use std::ffi::{CStr, CString};
use std::ptr;

use pcinc_ffi::*;

const SMALL: &str = "3\n1 2 12\n1/2 1 3\n1/12 1/3 1\n";

fn parse(text: &str) -> *mut PcincMatrix {
    let text = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { pcinc_matrix_parse(text.as_ptr(), &mut m) }, PcincStatus::Ok);
    m
}

fn last_error() -> String {
    let p = pcinc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_lifecycle() {
    let m = parse(SMALL);
    unsafe {
        assert_eq!(pcinc_matrix_size(m), 3);
        let mut b = false;
        assert_eq!(pcinc_matrix_is_complete(m, &mut b), PcincStatus::Ok);
        assert!(b);
        assert_eq!(pcinc_matrix_is_irreducible(m, &mut b), PcincStatus::Ok);
        assert!(b);
        let mut v = 0.0;
        assert_eq!(pcinc_matrix_get(m, 2, 0, &mut v), PcincStatus::Ok);
        assert_eq!(v, 1.0 / 12.0);
        assert_eq!(pcinc_matrix_get(m, 3, 0, &mut v), PcincStatus::InvalidArgument);
        pcinc_matrix_free(m);
        pcinc_matrix_free(ptr::null_mut());
        assert_eq!(pcinc_matrix_size(ptr::null()), 0);
    }
}

#[test]
fn nan_marks_missing_cells() {
    let nan = f64::NAN;
    let cells = [
        1.0, 2.0, 4.0, 8.0, //
        0.5, 1.0, 2.0, 4.0, //
        0.25, 0.5, 1.0, nan, //
        0.125, 0.25, nan, 1.0,
    ];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(pcinc_matrix_from_array(4, cells.as_ptr(), &mut m), PcincStatus::Ok);
        let mut complete = true;
        pcinc_matrix_is_complete(m, &mut complete);
        assert!(!complete);
        let mut v = 0.0;
        pcinc_matrix_get(m, 3, 2, &mut v);
        assert!(v.is_nan());
        let mut all = [f64::NAN; PCINC_INDEX_COUNT];
        assert_eq!(pcinc_index_all(m, ptr::null(), all.as_mut_ptr(), all.len()), PcincStatus::Ok);
        assert!(all.iter().all(|x| x.abs() < 1e-9));
        let mut w = [0.0; 4];
        assert_eq!(pcinc_rank(m, PcincMethod::Evm as u32, w.as_mut_ptr(), 4), PcincStatus::NotComplete);
        assert_eq!(pcinc_rank(m, PcincMethod::Ills as u32, w.as_mut_ptr(), 4), PcincStatus::Ok);
        assert!((w[0] / w[3] - 8.0).abs() < 1e-9);
        pcinc_matrix_free(m);
    }
}

#[test]
fn invalid_inputs_report_errors() {
    let mut m = ptr::null_mut();
    let bad = [1.0, 2.0, 3.0, 0.4, 1.0, 1.0, 1.0 / 3.0, 1.0, 1.0];
    unsafe {
        assert_eq!(pcinc_matrix_from_array(3, bad.as_ptr(), &mut m), PcincStatus::InvalidArgument);
        assert!(m.is_null());
        assert!(last_error().contains("reciprocal"));
        assert_eq!(pcinc_matrix_from_array(3, ptr::null(), &mut m), PcincStatus::NullPointer);
        assert_eq!(pcinc_matrix_parse(ptr::null(), &mut m), PcincStatus::NullPointer);
    }
    let disconnected = parse("4\n1 2 ? ?\n1/2 1 ? ?\n? ? 1 3\n? ? 1/3 1\n");
    unsafe {
        let mut v = 0.0;
        assert_eq!(pcinc_index(disconnected, PcincIndex::Ktilde as u32, ptr::null(), &mut v), PcincStatus::NotIrreducible);
        assert_eq!(last_error(), "matrix is not irreducible");
        let mut w = [0.0; 4];
        assert_eq!(pcinc_rank(disconnected, PcincMethod::Ills as u32, w.as_mut_ptr(), 4), PcincStatus::NotIrreducible);
        pcinc_matrix_free(disconnected);
    }
}

#[test]
fn index_values_match_library() {
    let m = parse(SMALL);
    unsafe {
        let mut k = 0.0;
        assert_eq!(pcinc_index(m, PcincIndex::Ktilde as u32, ptr::null(), &mut k), PcincStatus::Ok);
        assert_eq!(k, 0.5);
        let mut lls = 0.0;
        pcinc_index(m, PcincIndex::Lls as u32, ptr::null(), &mut lls);
        assert!((lls - 6.0 * (std::f64::consts::LN_2 / 3.0).powi(2)).abs() < 1e-12);
        assert_eq!(pcinc_index(m, 99, ptr::null(), &mut k), PcincStatus::InvalidArgument);
        let bad = PcincBlend { alpha: 0.5, ab_alpha: 0.8, ab_beta: 0.8 };
        assert_eq!(pcinc_index(m, PcincIndex::Ialphabeta as u32, &bad, &mut k), PcincStatus::InvalidArgument);
        let mut short = [0.0; 3];
        assert_eq!(pcinc_index_all(m, ptr::null(), short.as_mut_ptr(), 3), PcincStatus::BufferTooSmall);
        let mut w = [0.0; 3];
        assert_eq!(pcinc_rank(m, PcincMethod::Gmm as u32, w.as_mut_ptr(), 3), PcincStatus::Ok);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(pcinc_rank(m, 7, w.as_mut_ptr(), 3), PcincStatus::InvalidArgument);
        pcinc_matrix_free(m);
    }
    let d = pcinc_blend_default();
    assert_eq!((d.alpha, d.ab_alpha, d.ab_beta), (0.5, 0.3, 0.3));
}

#[test]
fn experiment_table() {
    let mut cfg = pcinc_experiment_default();
    cfg.n = 5;
    cfg.base_matrices = 2;
    cfg.d_max = 3;
    cfg.removals_max = 6;
    cfg.threads = 1;
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(pcinc_experiment_run(&cfg, &mut t), PcincStatus::Ok);
        assert_eq!(pcinc_table_removals(t), 6);
        let mut v = 1.0;
        assert_eq!(pcinc_table_get(t, PcincIndex::Ci as u32, 0, &mut v), PcincStatus::Ok);
        assert_eq!(v, 0.0);
        assert_eq!(pcinc_table_get(t, PcincIndex::Ci as u32, 7, &mut v), PcincStatus::InvalidArgument);
        let mut total = 0.0;
        assert_eq!(pcinc_table_total(t, PcincIndex::I2 as u32, &mut total), PcincStatus::Ok);
        assert!(total >= 0.0);
        pcinc_table_free(t);

        cfg.removals_max = 7;
        assert_eq!(pcinc_experiment_run(&cfg, &mut t), PcincStatus::InvalidArgument);
        assert!(t.is_null());
        assert!(last_error().contains("removals"));
        cfg.removals_max = 6;
        cfg.gamma = 9;
        assert_eq!(pcinc_experiment_run(&cfg, &mut t), PcincStatus::InvalidArgument);
    }
}

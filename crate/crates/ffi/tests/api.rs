use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use recotree::mst::minimum_spanning_tree;
use recotree::oracle::brute_force_rec_st;
use recotree::robust::{approx_discrete_budget, IntervalInstance, ScenarioModel};
use recotree::Graph;
use recotree_ffi::*;

const TAILS: [usize; 6] = [0, 1, 2, 0, 0, 1];
const HEADS: [usize; 6] = [1, 2, 3, 3, 2, 3];
const FIRST: [i64; 6] = [4, 8, 1, 7, 3, 2];
const SECOND: [i64; 6] = [9, 1, 6, 2, 5, 8];
const DEV: [i64; 6] = [3, 0, 2, 5, 1, 4];

fn k4() -> *mut RtInstance {
    let mut inst = ptr::null_mut();
    let status = unsafe {
        rt_instance_new(
            4,
            6,
            TAILS.as_ptr(),
            HEADS.as_ptr(),
            FIRST.as_ptr(),
            SECOND.as_ptr(),
            DEV.as_ptr(),
            &mut inst,
        )
    };
    assert_eq!(status, RtStatus::Ok);
    inst
}

fn graph() -> Graph {
    Graph::new(4, TAILS.iter().copied().zip(HEADS.iter().copied())).unwrap()
}

fn tree_of(sol: *const RtSolution, first: bool) -> Vec<usize> {
    let f = if first { rt_solution_first_stage } else { rt_solution_recovery };
    unsafe {
        let len = f(sol, ptr::null_mut(), 0);
        let mut buf = vec![0; len];
        assert_eq!(f(sol, buf.as_mut_ptr(), len), len);
        buf
    }
}

fn objective(sol: *const RtSolution) -> i64 {
    let mut v = 0;
    assert_eq!(unsafe { rt_solution_objective_i64(sol, &mut v) }, RtStatus::Ok);
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rt_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn rec_matches_exhaustive_search() {
    let inst = k4();
    for k in 0..4 {
        let mut sol = ptr::null_mut();
        assert_eq!(unsafe { rt_solve_rec(inst, k, &mut sol) }, RtStatus::Ok);
        let best = brute_force_rec_st(&graph(), &FIRST, &SECOND, k).unwrap();
        assert_eq!(objective(sol), best.cost);
        let x = tree_of(sol, true);
        let y = tree_of(sol, false);
        assert_eq!(x.len(), 3);
        assert!(x.iter().filter(|e| y.contains(e)).count() + k >= 3);
        unsafe { rt_solution_free(sol) };
    }
    unsafe { rt_instance_free(inst) };
}

#[test]
fn inc_defaults_to_first_stage_mst() {
    let inst = k4();
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    let mst = minimum_spanning_tree(&graph(), &FIRST).unwrap();
    unsafe {
        assert_eq!(rt_solve_inc(inst, ptr::null(), 0, 1, &mut a), RtStatus::Ok);
        assert_eq!(rt_solve_inc(inst, mst.edges().as_ptr(), 3, 1, &mut b), RtStatus::Ok);
    }
    assert_eq!(tree_of(a, true), mst.edges());
    assert_eq!(objective(a), objective(b));
    unsafe {
        rt_solution_free(a);
        rt_solution_free(b);
        rt_instance_free(inst);
    }
}

#[test]
fn robust_reports_ratio() {
    let inst = k4();
    let mut sol = ptr::null_mut();
    let status = unsafe { rt_solve_robust(inst, RtModel::BudgetDiscrete as u32, 2, 1, &mut sol) };
    assert_eq!(status, RtStatus::Ok);
    let reference = IntervalInstance::new(
        graph(),
        FIRST.to_vec(),
        SECOND.to_vec(),
        DEV.to_vec(),
        1,
        ScenarioModel::DiscreteBudget,
        2,
    )
    .unwrap();
    let cert = approx_discrete_budget(&reference).unwrap();
    let ratio = unsafe { rt_solution_ratio_string(sol) };
    let text = unsafe { CStr::from_ptr(ratio) }.to_str().unwrap().to_string();
    assert_eq!(text, cert.certified_ratio.unwrap().to_string());
    assert_eq!(tree_of(sol, true), cert.first_stage.edges());
    assert!(unsafe { rt_solution_objective_is_exact(sol) });
    unsafe {
        rt_string_free(ratio);
        rt_solution_free(sol);
    }

    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { rt_solve_robust(inst, 42, 0, 1, &mut sol) }, RtStatus::InvalidArgument);
    assert!(last_error().contains("unknown model"));
    unsafe { rt_instance_free(inst) };
}

#[test]
fn errors_set_status_and_message() {
    let mut inst = ptr::null_mut();
    let tails = [0usize, 2];
    let heads = [1usize, 3];
    let costs = [1i64, 1];
    let status = unsafe {
        rt_instance_new(4, 2, tails.as_ptr(), heads.as_ptr(), costs.as_ptr(), costs.as_ptr(), ptr::null(), &mut inst)
    };
    assert_eq!(status, RtStatus::Ok);
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { rt_solve_rec(inst, 1, &mut sol) }, RtStatus::Disconnected);
    assert!(sol.is_null());
    assert!(last_error().contains("disconnected"));
    unsafe { rt_instance_free(inst) };

    let negative = [1i64, -1];
    let status = unsafe {
        rt_instance_new(4, 2, tails.as_ptr(), heads.as_ptr(), negative.as_ptr(), costs.as_ptr(), ptr::null(), &mut inst)
    };
    assert_eq!(status, RtStatus::InvalidInstance);
    let status = unsafe { rt_instance_new(4, 2, ptr::null(), heads.as_ptr(), costs.as_ptr(), costs.as_ptr(), ptr::null(), &mut inst) };
    assert_eq!(status, RtStatus::InvalidArgument);
    assert_eq!(unsafe { rt_solve_rec(ptr::null(), 0, &mut sol) }, RtStatus::InvalidArgument);
}

#[test]
fn zero_nominal_costs_have_no_certificate() {
    let tails = [0usize, 1, 0];
    let heads = [1usize, 2, 2];
    let first = [1i64, 1, 2];
    let zero = [0i64; 3];
    let dev = [4i64, 3, 5];
    let mut inst = ptr::null_mut();
    let mut sol = ptr::null_mut();
    unsafe {
        rt_instance_new(3, 3, tails.as_ptr(), heads.as_ptr(), first.as_ptr(), zero.as_ptr(), dev.as_ptr(), &mut inst);
        assert_eq!(
            rt_solve_robust(inst, RtModel::BudgetDiscrete as u32, 1, 1, &mut sol),
            RtStatus::NoCertificate
        );
        assert!(!sol.is_null());
        assert!(rt_solution_ratio_string(sol).is_null());
        rt_solution_free(sol);
        rt_instance_free(inst);
    }
}

#[test]
fn json_instances_load() {
    let text = CString::new(
        r#"{"n":3,"edges":[{"u":0,"v":1,"C":1,"c":2,"d":0},{"u":1,"v":2,"C":3,"c":1,"d":0},{"u":0,"v":2,"C":2,"c":2,"d":0}],"k":1,"model":"interval"}"#,
    )
    .unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { rt_instance_from_json(text.as_ptr(), &mut inst) }, RtStatus::Ok);
    assert_eq!(unsafe { rt_instance_edge_count(inst) }, 3);
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { rt_solve_rec(inst, 0, &mut sol) }, RtStatus::Ok);
    // k = 0 forces one tree under C + c = (3, 4, 4)
    assert_eq!(objective(sol), 7);
    unsafe {
        rt_solution_free(sol);
        rt_instance_free(inst);
    }

    let bad = CString::new(r#"{"n":3,"edges":[{"u":0,"v":5,"C":1,"c":2}],"k":0,"model":"interval"}"#).unwrap();
    assert_eq!(unsafe { rt_instance_from_json(bad.as_ptr(), &mut inst) }, RtStatus::InvalidInstance);
    assert!(last_error().contains("edges[0].v"));
}

#[test]
fn c_program_links_against_static_library() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/recotree.h");
    assert!(header.exists(), "cbindgen header missing");
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    assert!(lib_dir.join("librecotree_ffi.a").exists(), "static library missing in {}", lib_dir.display());

    let out_dir = tempfile::tempdir().unwrap();
    let program = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(lib_dir.join("librecotree_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&program)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&program).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    let best = brute_force_rec_st(&graph(), &FIRST, &SECOND, 1).unwrap();
    assert!(text.starts_with(&format!("rec objective {} first stage", best.cost)), "{text}");
    assert!(text.contains("robust objective "));
}

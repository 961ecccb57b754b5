use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fuselab::io::Document;
use fuselab::nimrep::{multiplicity_profile, su2_nimrep_from_graph};
use fuselab::{catalog, BoundaryGraph};
use fuselab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = fuselab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn catalog_md(id: &str) -> *mut FuselabModularData {
    let mut md = ptr::null_mut();
    assert_eq!(unsafe { fuselab_md_from_catalog(cstr(id).as_ptr(), &mut md) }, FuselabStatus::Ok);
    md
}

#[test]
fn profile_matches_the_library() {
    for (graph, level) in [("A:5", 4), ("D:6", 8), ("E:6", 10), ("E:8", 28)] {
        let md = catalog_md(&format!("su2:{level}"));
        assert_eq!(unsafe { fuselab_md_rank(md) }, level + 1);
        let mut nr = ptr::null_mut();
        assert_eq!(unsafe { fuselab_nimrep_from_graph(md, cstr(graph).as_ptr(), &mut nr) }, FuselabStatus::Ok);

        let g = BoundaryGraph::from_spec(graph).unwrap();
        let want = multiplicity_profile(
            &su2_nimrep_from_graph(&g, level).unwrap(),
            &catalog::lookup(&format!("su2:{level}")).unwrap(),
        )
        .unwrap();
        assert_eq!(unsafe { fuselab_nimrep_size(nr) }, g.adjacency().rows());

        let mut n = 0;
        let st = unsafe { fuselab_nimrep_profile(nr, ptr::null_mut(), 0, &mut n) };
        assert_eq!((st, n), (FuselabStatus::BufferTooSmall, want.len()));
        let mut buf = vec![-1i64; n];
        assert_eq!(unsafe { fuselab_nimrep_profile(nr, buf.as_mut_ptr(), n, &mut n) }, FuselabStatus::Ok);
        assert_eq!(buf, want, "{graph}");

        unsafe {
            fuselab_nimrep_free(nr);
            fuselab_md_free(md);
        }
    }
}

#[test]
fn json_documents_load() {
    let md = catalog::lookup("ising").unwrap();
    let text = Document::ModularData((*md).clone()).to_json_string();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fuselab_md_from_json(cstr(&text).as_ptr(), &mut h) }, FuselabStatus::Ok);
    assert_eq!(unsafe { fuselab_md_rank(h) }, 3);
    unsafe { fuselab_md_free(h) };

    let ring = Document::FusionRing(md.ring().clone()).to_json_string();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fuselab_md_from_json(cstr(&ring).as_ptr(), &mut h) }, FuselabStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(last_error().contains("fusion-ring"));

    assert_eq!(unsafe { fuselab_md_from_json(cstr("{").as_ptr(), &mut h) }, FuselabStatus::Parse);
}

#[test]
fn errors_map_to_status_codes() {
    let mut md = ptr::null_mut();
    assert_eq!(unsafe { fuselab_md_from_catalog(ptr::null(), &mut md) }, FuselabStatus::NullPointer);
    assert_eq!(unsafe { fuselab_md_from_catalog(cstr("su2").as_ptr(), ptr::null_mut()) }, FuselabStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { fuselab_md_from_catalog(bad.as_ptr().cast(), &mut md) }, FuselabStatus::InvalidUtf8);
    assert_ne!(unsafe { fuselab_md_from_catalog(cstr("no-such-thing").as_ptr(), &mut md) }, FuselabStatus::Ok);
    assert!(!last_error().is_empty());

    let ising = catalog_md("ising");
    let mut nr = ptr::null_mut();
    let st = unsafe { fuselab_nimrep_from_graph(ising, cstr("A:3").as_ptr(), &mut nr) };
    assert_eq!(st, FuselabStatus::InvalidArgument);
    let st = unsafe { fuselab_nimrep_from_graph(ising, cstr("regular").as_ptr(), &mut nr) };
    assert_eq!(st, FuselabStatus::Ok);
    assert!(fuselab_last_error().is_null());

    let mut buf = [0i64; 3];
    let mut n = 0;
    assert_eq!(unsafe { fuselab_nimrep_profile(nr, buf.as_mut_ptr(), 3, &mut n) }, FuselabStatus::Ok);
    assert_eq!(buf, [1, 1, 1]);
    assert_eq!(unsafe { fuselab_md_rank(ptr::null()) }, 0);
    assert_eq!(unsafe { fuselab_nimrep_size(ptr::null()) }, 0);
    unsafe {
        fuselab_nimrep_free(nr);
        fuselab_md_free(ising);
        fuselab_md_free(ptr::null_mut());
    }
}

#[test]
fn run_returns_the_cli_report() {
    let args: Vec<CString> = ["tm-dim", "--data", "su2:10", "--graph", "E:6", "--format", "json"]
        .iter()
        .map(|s| cstr(s))
        .collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut code = -1;
    let out = unsafe { fuselab_run(ptrs.as_ptr(), ptrs.len(), &mut code) };
    assert!(!out.is_null());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { fuselab_string_free(out) };
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "tm-dim");

    let arg = cstr("--no-such-flag");
    let out = unsafe { fuselab_run(&arg.as_ptr(), 1, &mut code) };
    assert_eq!(code, 2);
    unsafe { fuselab_string_free(out) };

    assert!(unsafe { fuselab_run(ptr::null(), 1, &mut code) }.is_null());
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libfuselab_ffi.a");
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    assert!(lib.exists(), "{} missing", lib.display());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().map(|_| cc).map_err(|_| ())
}

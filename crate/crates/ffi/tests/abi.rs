use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use levelpers_ffi::*;

const CIRCLE: &str = r#"{"vertices": [{"id": 0, "value": 0.0}, {"id": 1, "value": 1.0},
                                      {"id": 2, "value": 2.0}, {"id": 3, "value": 1.0}],
                         "simplices": [[0, 1], [1, 2], [2, 3], [3, 0]]}"#;

fn space(json: &str) -> (LpStatus, *mut LpSpace) {
    let text = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { lp_space_from_json(text.as_ptr(), &mut out) };
    (status, out)
}

fn last_error() -> String {
    let p = lp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn level_bars_of_circle() {
    let (status, s) = space(CIRCLE);
    assert_eq!(status, LpStatus::Ok);
    assert!(lp_last_error_message().is_null());
    unsafe {
        assert_eq!(lp_space_vertex_count(s), 4);
        let mut bars = ptr::null_mut();
        assert_eq!(lp_level_barcodes(s, 3, &mut bars), LpStatus::Ok);
        assert_eq!(lp_barcodes_len(bars), 2);
        let mut bar = std::mem::zeroed::<LpBar>();
        assert_eq!(lp_barcodes_get(bars, 0, &mut bar), LpStatus::Ok);
        assert_eq!(
            (
                bar.degree,
                bar.left,
                bar.right,
                bar.left_closed,
                bar.right_closed
            ),
            (0, 0.0, 2.0, true, true)
        );
        assert_eq!(lp_barcodes_get(bars, 1, &mut bar), LpStatus::Ok);
        assert!(!bar.left_closed && !bar.right_closed);
        assert_eq!(lp_barcodes_get(bars, 2, &mut bar), LpStatus::OutOfRange);
        assert!(last_error().contains("out of 2"));

        let mut json = ptr::null_mut();
        assert_eq!(lp_barcodes_to_json(bars, &mut json), LpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"left_closed\": true"));
        lp_string_free(json);
        lp_barcodes_free(bars);
        lp_space_free(s);
    }
}

#[test]
fn sublevel_bars_report_infinity() {
    let (_, s) = space(CIRCLE);
    unsafe {
        let mut bars = ptr::null_mut();
        assert_eq!(lp_sublevel_barcodes(s, 2, &mut bars), LpStatus::Ok);
        assert_eq!(lp_barcodes_len(bars), 2);
        let mut bar = std::mem::zeroed::<LpBar>();
        lp_barcodes_get(bars, 1, &mut bar);
        assert_eq!((bar.degree, bar.left), (1, 2.0));
        assert!(bar.right.is_infinite());
        lp_barcodes_free(bars);
        lp_space_free(s);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let (status, s) = space(r#"{"vertices": [{"id": 0, "value": 0.0}], "simplices": [[0, 7]]}"#);
    assert_eq!(status, LpStatus::InvalidInput);
    assert!(s.is_null());
    assert!(last_error().contains("unknown vertex 7"));

    let (status, _) = space("not json");
    assert_eq!(status, LpStatus::InvalidInput);

    let (_, s) = space(CIRCLE);
    unsafe {
        let mut bars = ptr::null_mut();
        assert_eq!(lp_level_barcodes(s, 4, &mut bars), LpStatus::NotPrime);
        assert!(bars.is_null());
        assert_eq!(
            lp_level_barcodes(ptr::null(), 2, &mut bars),
            LpStatus::NullPointer
        );
        assert_eq!(
            lp_space_from_json(ptr::null(), ptr::null_mut()),
            LpStatus::NullPointer
        );
        assert_eq!(lp_barcodes_len(ptr::null()), 0);
        lp_space_free(s);
        lp_space_free(ptr::null_mut());
        lp_barcodes_free(ptr::null_mut());
        lp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_abi() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/levelpers.h"))
            .unwrap();
    for name in [
        "lp_space_from_json",
        "lp_space_free",
        "lp_level_barcodes",
        "lp_sublevel_barcodes",
        "lp_barcodes_get",
        "lp_barcodes_to_json",
        "lp_last_error_message",
        "typedef struct LpSpace LpSpace",
        "LP_STATUS_NOT_PRIME = 4",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "levelpers.h"

int main(void) {
    const char *doc = "{\"vertices\": [{\"id\": 0, \"value\": -1.0}, {\"id\": 1, \"value\": -1.0},"
                      " {\"id\": 2, \"value\": 0.0}], \"simplices\": [[0, 2], [2, 1]]}";
    LpSpace *space = NULL;
    if (lp_space_from_json(doc, &space) != LP_STATUS_OK) return 1;
    LpBarcodes *bars = NULL;
    if (lp_level_barcodes(space, 2, &bars) != LP_STATUS_OK) return 2;
    for (size_t i = 0; i < lp_barcodes_len(bars); i++) {
        LpBar b;
        lp_barcodes_get(bars, i, &b);
        printf("%zu %c%g,%g%c\n", b.degree, b.left_closed ? '[' : '(', b.left, b.right, b.right_closed ? ']' : ')');
    }
    LpSpace *bad = NULL;
    if (lp_space_from_json("{}", &bad) != LP_STATUS_INVALID_INPUT || bad != NULL) return 3;
    lp_barcodes_free(bars);
    lp_space_free(space);
    return 0;
}
"#;

/// Compiles and links a C caller against the static library when a C
/// compiler is on PATH.
#[test]
fn c_caller_links_against_static_library() {
    let Ok(version) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(version.status.success());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // the test binary lives in target/<profile>/deps
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("liblevelpers_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "0 [-1,0]\n0 [-1,0)\n"
    );
}

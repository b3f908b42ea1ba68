use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "silt.h"

int main(void) {
    SiltContext *ctx = NULL;
    if (silt_context_from_fixture("a2_tilt", NULL, &ctx) != SILT_STATUS_OK) return 10;
    SiltVerdict v;
    if (silt_check(ctx, &v) != SILT_STATUS_OK) return 11;
    if (!v.silting || !v.tilting || v.classes != 2) return 12;
    char *json = NULL;
    bool passed = false;
    if (silt_theorem_report(ctx, 0, 0, 0, &json, &passed) != SILT_STATUS_OK) return 13;
    if (!passed || strstr(json, "\"checks\"") == NULL) return 14;
    silt_string_free(json);
    silt_context_free(ctx);
    if (silt_context_from_fixture("missing", NULL, &ctx) != SILT_STATUS_PRECONDITION) return 15;
    if (silt_last_error() == NULL) return 16;
    puts("ok");
    return 0;
}
"#;

// Compiles a small C program against the generated header and the static library.
#[test]
fn header_compiles_and_links() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libsilt_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("smoke.c");
    let bin = work.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

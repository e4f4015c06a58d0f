//! The committed C header must match what cbindgen generates from the
//! current source, and must be syntactically valid C when a C compiler is
//! available.

use std::process::Command;

fn generated_header() -> String {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file(format!("{crate_dir}/cbindgen.toml"))
        .expect("read cbindgen.toml");
    let mut out = Vec::new();
    cbindgen::Builder::new()
        .with_crate(crate_dir)
        .with_config(config)
        .generate()
        .expect("generate bindings")
        .write(&mut out);
    String::from_utf8(out).expect("header is UTF-8")
}

#[test]
fn committed_header_is_current() {
    let committed = std::fs::read_to_string(format!(
        "{}/include/endgraph.h",
        env!("CARGO_MANIFEST_DIR")
    ))
    .expect("include/endgraph.h is committed");
    let generated = generated_header();
    assert_eq!(
        committed, generated,
        "include/endgraph.h is stale; run `cargo run -p endgraph-capi --example generate_header`"
    );
}

#[test]
fn header_compiles_as_c() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let probe = format!("{crate_dir}/../../target/header_probe.c");
    std::fs::write(
        &probe,
        "#include \"endgraph.h\"\nint main(void) { return (int) EG_STATUS_OK; }\n",
    )
    .expect("write probe");
    let result = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg("-I")
        .arg(format!("{crate_dir}/include"))
        .arg(&probe)
        .output();
    match result {
        Ok(out) => {
            assert!(
                out.status.success(),
                "header failed C compilation:\n{}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
        Err(_) => eprintln!("no C compiler found; skipping header syntax check"),
    }
    std::fs::remove_file(&probe).ok();
}

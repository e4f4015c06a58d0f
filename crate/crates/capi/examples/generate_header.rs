//! Regenerates `include/endgraph.h` from the crate source. The committed
//! header must always match; `tests/header.rs` enforces that.

fn main() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file(format!("{crate_dir}/cbindgen.toml"))
        .expect("read cbindgen.toml");
    cbindgen::Builder::new()
        .with_crate(crate_dir)
        .with_config(config)
        .generate()
        .expect("generate bindings")
        .write_to_file(format!("{crate_dir}/include/endgraph.h"));
    println!("wrote include/endgraph.h");
}

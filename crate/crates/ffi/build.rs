use std::path::Path;

fn main() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let root = Path::new(crate_dir);
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config =
        cbindgen::Config::from_file(root.join("cbindgen.toml")).expect("readable cbindgen.toml");
    cbindgen::Builder::new()
        .with_crate(crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation")
        .write_to_file(root.join("include/fiberpair.h"));
}

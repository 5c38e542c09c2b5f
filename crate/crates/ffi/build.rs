fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    std::fs::create_dir_all(format!("{crate_dir}/include")).unwrap();
    cbindgen::generate(&crate_dir)
        .expect("cbindgen")
        .write_to_file(format!("{crate_dir}/include/markov.h"));
}

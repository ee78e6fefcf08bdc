fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let header = std::path::Path::new(&crate_dir).join("include").join("starid.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            std::fs::create_dir_all(header.parent().expect("header path has a directory"))
                .expect("create include dir");
            bindings.write_to_file(&header);
        }
        // Parse errors surface when compiling the crate itself; don't fail
        // the build twice with a less readable message.
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {}
        Err(err) => panic!("header generation failed: {err}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}

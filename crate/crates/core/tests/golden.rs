//! Emitted encodings of the hexagon fixture against committed files.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use patmine::dataio::load_dataset;
use patmine::encoder::{emit_asp, emit_idp};
use patmine::fixtures;

fn check(name: &str, text: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(want, text, "{name} is out of date");
}

#[test]
fn asp_matches_golden() {
    let ds = load_dataset(fixtures::GRAPH_FILE, None).unwrap();
    check("fig1.lp", &emit_asp(&ds).unwrap().to_string());
}

#[test]
fn idp_matches_golden() {
    let ds = load_dataset(fixtures::GRAPH_FILE, None).unwrap();
    check("fig1.idp", &emit_idp(&ds).unwrap().to_string());
}

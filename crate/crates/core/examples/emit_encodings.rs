//! Prints the ASP and IDP encodings of the hexagon instance.
//!
//! ```text
//! cargo run --example emit_encodings -- [asp|idp]
//! ```

use patmine::encoder::{emit_asp, emit_idp};
use patmine::fixtures;

fn main() {
    let ds = fixtures::dataset();
    let target = std::env::args().nth(1).unwrap_or_else(|| "asp".to_owned());
    let text = match target.as_str() {
        "asp" => emit_asp(&ds),
        "idp" => emit_idp(&ds),
        other => {
            eprintln!("unknown target `{other}`");
            std::process::exit(1);
        }
    }
    .expect("non-empty template");
    print!("{text}");
}

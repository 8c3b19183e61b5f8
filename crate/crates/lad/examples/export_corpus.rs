//! Write the bundled example diagrams to the `diagrams/` directory at the
//! repository root, as canonical JSON plus a DOT rendering of each.
//!
//!     cargo run --example export_corpus

use std::fs;
use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../diagrams");
    fs::create_dir_all(&dir)?;
    for entry in lad::corpus::all() {
        let json_path = dir.join(format!("{}.lad.json", entry.name));
        fs::write(&json_path, lad::json::diagram_to_json(&entry.diagram))?;
        let dot_path = dir.join(format!("{}.dot", entry.name));
        fs::write(&dot_path, lad::dot::diagram_to_dot(&entry.diagram))?;
        println!("wrote {}", json_path.display());
    }
    Ok(())
}

//! Writes the bundled algebras and preset varieties as JSON files.
//!
//! `cargo run -p actorkit-core --example export_catalog -- data`

use std::fs;
use std::path::PathBuf;

use actorkit::{catalog, Field, Preset, Variety};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    fs::create_dir_all(root.join("varieties"))?;
    for (stem, a) in catalog::bundled(Field::Rational) {
        fs::write(root.join(format!("{stem}.json")), a.to_json() + "\n")?;
    }
    for p in Preset::ALL {
        let file = Variety::preset(p).to_file();
        fs::write(
            root.join("varieties").join(format!("{}.json", p.name())),
            serde_json::to_string_pretty(&file)? + "\n",
        )?;
    }
    Ok(())
}

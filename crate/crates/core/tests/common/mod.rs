#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use skewalg::skewring::SkewRing;

pub fn descriptor_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("descriptors")
}

/// Every shipped ring descriptor, by file stem.
pub fn shipped_rings() -> Vec<(String, SkewRing)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(descriptor_dir())
        .expect("descriptor directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable");
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let ring = SkewRing::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, ring)
        })
        .collect()
}

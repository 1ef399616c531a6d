//! Optional on-disk memo of mesh Hom functors, enabled by
//! `ORBITCAT_CACHE_DIR`. Files are versioned JSON keyed by quiver hash and
//! source vertex; unreadable or stale files are ignored, so the directory
//! can be deleted at any time.

use std::fs;
use std::path::PathBuf;

use orbitcat_core::MeshCategory;

pub const ENV_VAR: &str = "ORBITCAT_CACHE_DIR";

fn dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).filter(|s| !s.is_empty()).map(PathBuf::from)
}

fn file_name(mesh: &MeshCategory, source: usize) -> String {
    format!("mesh-v1-{}-{}.json", mesh.quiver().content_hash(), source)
}

pub fn load(mesh: &MeshCategory) {
    let Some(dir) = dir() else { return };
    for v in 1..=mesh.quiver().n() {
        if let Ok(text) = fs::read_to_string(dir.join(file_name(mesh, v))) {
            mesh.import_functor(&text);
        }
    }
}

pub fn store(mesh: &MeshCategory) {
    let Some(dir) = dir() else { return };
    if fs::create_dir_all(&dir).is_err() {
        return;
    }
    for v in mesh.cached_sources() {
        let path = dir.join(file_name(mesh, v));
        if path.exists() {
            continue;
        }
        if let Ok(text) = mesh.export_functor(v) {
            // write-then-rename so a concurrent reader never sees a torn file
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
    }
}

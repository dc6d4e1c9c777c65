//! Optional on-disk persistence for the reduced-word and Schubert-polynomial
//! memo caches, keyed by the `SCHUBERT_CACHE_DIR` environment variable.
//!
//! Purely an accelerator: absence of the variable, missing files, or stale
//! contents change nothing semantically. Entries are stored in the canonical
//! text forms, so the files are stable across runs and versions of the
//! in-memory layout.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::perm::{Permutation, Word};
use crate::poly::MultiPoly;

pub const CACHE_ENV: &str = "SCHUBERT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct WordsFile {
    entries: HashMap<String, Vec<Word>>,
}

#[derive(Serialize, Deserialize)]
struct PolysFile {
    entries: HashMap<String, String>,
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

/// Loads any persisted caches into the in-process memos. Corrupt or missing
/// files are skipped with a note on stderr.
pub fn load() {
    let Some(dir) = cache_dir() else { return };
    if let Some(words) = read_json::<WordsFile>(&dir.join("reduced_words.json")) {
        let mut entries = Vec::new();
        for (key, value) in words.entries {
            match key.parse::<Permutation>() {
                Ok(p) => entries.push((p, value)),
                Err(_) => eprintln!("cache: skipping unparsable permutation {key:?}"),
            }
        }
        crate::perm::seed_reduced_word_cache(entries);
    }
    if let Some(polys) = read_json::<PolysFile>(&dir.join("schubert_polys.json")) {
        let mut entries = Vec::new();
        for (key, value) in polys.entries {
            match (key.parse::<Permutation>(), MultiPoly::from_text(&value)) {
                (Ok(p), Ok(f)) => entries.push((p, f)),
                _ => eprintln!("cache: skipping unparsable entry {key:?}"),
            }
        }
        crate::poly::seed_schubert_cache(entries);
    }
}

/// Writes the current memo contents back to the cache directory.
pub fn save() {
    let Some(dir) = cache_dir() else { return };
    if let Err(err) = std::fs::create_dir_all(&dir) {
        eprintln!("cache: cannot create {}: {err}", dir.display());
        return;
    }
    let words = WordsFile {
        entries: crate::perm::reduced_word_cache_entries()
            .into_iter()
            .map(|(p, w)| (p.to_string(), w))
            .collect(),
    };
    write_json(&dir.join("reduced_words.json"), &words);
    let polys = PolysFile {
        entries: crate::poly::schubert_cache_entries()
            .into_iter()
            .map(|(p, f)| (p.to_string(), f.to_text()))
            .collect(),
    };
    write_json(&dir.join("schubert_polys.json"), &polys);
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Option<T> {
    let text = std::fs::read_to_string(path).ok()?;
    match serde_json::from_str(&text) {
        Ok(value) => Some(value),
        Err(err) => {
            eprintln!("cache: ignoring {}: {err}", path.display());
            None
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) {
    match serde_json::to_string(value) {
        Ok(text) => {
            if let Err(err) = std::fs::write(path, text) {
                eprintln!("cache: cannot write {}: {err}", path.display());
            }
        }
        Err(err) => eprintln!("cache: cannot serialize {}: {err}", path.display()),
    }
}

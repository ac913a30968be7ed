//! Locating external datasets for integration tests.

#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

/// MovieLens-100k `u.data`, from `MOVIELENS_100K` or `data/ml-100k/u.data`
/// under the workspace root. Panics with fetch instructions when missing.
pub fn movielens_100k() -> PathBuf {
    let path = std::env::var_os("MOVIELENS_100K")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data"));
    if !path.is_file() {
        panic!(
            "MovieLens-100k ratings not found at {}.\n\
             Run scripts/fetch-movielens.sh from the repository root, or point \
             MOVIELENS_100K at an existing u.data file.",
            path.display()
        );
    }
    path
}

/// EachMovie ratings as a tab-separated file, only when `EACHMOVIE` names
/// one.
pub fn eachmovie() -> Option<PathBuf> {
    std::env::var_os("EACHMOVIE").map(PathBuf::from).filter(|p| p.is_file())
}

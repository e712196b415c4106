//! On-disk triangulation catalogs.
//!
//! A catalog file is a header line `PPLAB-CAT v1 n=<n> count=<c>` followed by
//! one canonically labelled member per line in graph6, sorted by canonical
//! form. Files live in a cache directory chosen from, in order:
//! `$PPLAB_CACHE_DIR`, `$XDG_CACHE_HOME/pplab`, `$HOME/.cache/pplab`, and
//! `./.pplab-cache`.

use std::env;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use pplab_core::enumerate::all_triangulations;
use pplab_core::Catalog;

use crate::formats::{parse_graph6, to_graph6};

pub const CACHE_ENV: &str = "PPLAB_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {msg}")]
    Corrupt { path: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Generate(#[from] pplab_core::Error),
}

/// Where a catalog came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Cache,
    Generated,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Cache => "cache",
            Source::Generated => "generated",
        }
    }
}

pub fn default_cache_dir() -> PathBuf {
    let var = |name: &str| env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from);
    var(CACHE_ENV)
        .or_else(|| var("XDG_CACHE_HOME").map(|p| p.join("pplab")))
        .or_else(|| var("HOME").map(|p| p.join(".cache").join("pplab")))
        .unwrap_or_else(|| PathBuf::from(".pplab-cache"))
}

pub fn catalog_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("triangulations-n{n:02}.cat"))
}

pub fn header(n: usize, count: usize) -> String {
    format!("PPLAB-CAT v1 n={n} count={count}")
}

pub fn render(catalog: &Catalog) -> String {
    let mut out = header(catalog.n(), catalog.len());
    out.push('\n');
    for g in catalog.members() {
        out.push_str(&to_graph6(g));
        out.push('\n');
    }
    out
}

/// Parses and fully validates a catalog file body: header fields, member
/// count, graph6 decoding, canonical labelling, `3n − 6` edges and strict
/// canonical order.
pub fn parse(text: &str, expected_n: usize) -> Result<Catalog, String> {
    let mut lines = text.lines();
    let first = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = first.split(' ').collect();
    let (n, count) = match fields[..] {
        ["PPLAB-CAT", "v1", n, count] => (
            n.strip_prefix("n=").and_then(|v| v.parse::<usize>().ok()),
            count.strip_prefix("count=").and_then(|v| v.parse::<usize>().ok()),
        ),
        _ => return Err(format!("bad header {first:?}")),
    };
    let (Some(n), Some(count)) = (n, count) else {
        return Err(format!("bad header {first:?}"));
    };
    if n != expected_n {
        return Err(format!("header says n = {n}, expected {expected_n}"));
    }
    let members = lines
        .enumerate()
        .map(|(i, l)| parse_graph6(l).map_err(|e| format!("member {i}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if members.len() != count {
        return Err(format!("header says count = {count}, found {} members", members.len()));
    }
    Catalog::from_members(n, members).map_err(|e| e.to_string())
}

pub fn load(dir: &Path, n: usize) -> Result<Option<Catalog>, CatalogError> {
    let path = catalog_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => {
            return Err(CatalogError::Io {
                path: path.display().to_string(),
                source,
            })
        }
    };
    parse(&text, n).map(Some).map_err(|msg| CatalogError::Corrupt {
        path: path.display().to_string(),
        msg,
    })
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial catalog.
pub fn store(dir: &Path, catalog: &Catalog) -> Result<PathBuf, CatalogError> {
    let path = catalog_path(dir, catalog.n());
    let io_err = |source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io_err)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, render(catalog)).map_err(io_err)?;
    fs::rename(&tmp, &path).map_err(io_err)?;
    Ok(path)
}

/// Loads the cached catalog for `n`, or generates and stores it when it is
/// missing or `regenerate` is set. A corrupt cache file is an error unless
/// `regenerate` is set.
pub fn load_or_generate(dir: &Path, n: usize, regenerate: bool) -> Result<(Catalog, Source), CatalogError> {
    if !regenerate {
        if let Some(catalog) = load(dir, n)? {
            return Ok((catalog, Source::Cache));
        }
    }
    let catalog = all_triangulations(n)?;
    store(dir, &catalog)?;
    Ok((catalog, Source::Generated))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        for n in 4..=8 {
            let catalog = all_triangulations(n).unwrap();
            let text = render(&catalog);
            assert!(text.starts_with(&header(n, catalog.len())));
            let back = parse(&text, n).unwrap();
            assert_eq!(back.members(), catalog.members());
            assert_eq!(back.forms(), catalog.forms());
        }
    }

    #[test]
    fn corruption_is_detected() {
        let text = render(&all_triangulations(7).unwrap());
        let mut lines: Vec<&str> = text.lines().collect();
        assert!(parse(&text, 8).is_err());
        assert!(parse(&text.replace("count=5", "count=4"), 7).is_err());
        assert!(parse(&text.replace("v1", "v2"), 7).is_err());
        lines.swap(1, 2);
        assert!(parse(&lines.join("\n"), 7).is_err());
        lines.swap(1, 2);
        lines[3] = "F????";
        assert!(parse(&lines.join("\n"), 7).is_err());
        assert!(parse("", 7).is_err());
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let (generated, source) = load_or_generate(dir.path(), 6, false).unwrap();
        assert_eq!(source, Source::Generated);
        let (loaded, source) = load_or_generate(dir.path(), 6, false).unwrap();
        assert_eq!(source, Source::Cache);
        assert_eq!(loaded.members(), generated.members());
        fs::write(catalog_path(dir.path(), 6), "garbage").unwrap();
        assert!(matches!(load_or_generate(dir.path(), 6, false), Err(CatalogError::Corrupt { .. })));
        assert_eq!(load_or_generate(dir.path(), 6, true).unwrap().1, Source::Generated);
    }
}

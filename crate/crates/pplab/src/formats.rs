//! Graph files: a plain edge-list text format and graph6.
//!
//! Text format: a first line `n e`, then `e` lines `u v` with `u < v`,
//! sorted. Blank lines and lines starting with `#` are ignored on input.
//!
//! graph6: the size prefix `N(n)` followed by the upper triangle in column
//! order (`(0,1), (0,2), (1,2), (0,3), …`), six bits per printable byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pplab_core::Graph;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] pplab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Text,
    Graph6,
}

impl GraphFormat {
    /// `.g6` and `.graph6` select graph6; anything else is the text format.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            _ => GraphFormat::Text,
        }
    }
}

pub fn to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_text(input: &str) -> Result<Graph, FormatError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, msg: String| FormatError::Text { line, msg };
    let pair = |line: usize, text: &str| -> Result<(usize, usize), FormatError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields[..] {
            [a, b] => Ok((
                a.parse().map_err(|_| err(line, format!("not an integer: {a:?}")))?,
                b.parse().map_err(|_| err(line, format!("not an integer: {b:?}")))?,
            )),
            _ => Err(err(line, format!("expected two integers, got {text:?}"))),
        }
    };
    let (line, header) = lines.next().ok_or_else(|| err(1, "missing \"n e\" header".into()))?;
    let (n, e) = pair(line, header)?;
    let mut edges = Vec::with_capacity(e);
    for (line, text) in lines {
        let (u, v) = pair(line, text)?;
        if u >= n || v >= n {
            return Err(err(line, format!("vertex out of range for n = {n}: {u} {v}")));
        }
        if u == v {
            return Err(err(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    let g = Graph::from_edges(n, edges.iter().copied())?;
    if edges.len() != e || g.edge_count() != e {
        return Err(err(
            line,
            format!("header declares {e} edges, found {} distinct of {}", g.edge_count(), edges.len()),
        ));
    }
    Ok(g)
}

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let (mut byte, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            byte = byte << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(byte + 63);
                (byte, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((byte << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |msg: String| FormatError::Graph6(msg);
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(format!("byte {b} outside 63..=126")));
    }
    let value = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(bad("empty input".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (value(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (value(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(bad("truncated size prefix".into())),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad(format!("expected {} data bytes for n = {n}, found {}", bits.div_ceil(6), body.len())));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    match GraphFormat::from_path(path) {
        GraphFormat::Text => parse_text(&text),
        GraphFormat::Graph6 => {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let first = lines.next().ok_or_else(|| FormatError::Graph6("empty file".into()))?;
            if lines.next().is_some() {
                return Err(FormatError::Graph6("expected a single graph".into()));
            }
            parse_graph6(first.trim())
        }
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), FormatError> {
    let body = match GraphFormat::from_path(path) {
        GraphFormat::Text => to_text(g),
        GraphFormat::Graph6 => to_graph6(g) + "\n",
    };
    fs::write(path, body).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 2)]).unwrap();
        let text = to_text(&g);
        assert_eq!(text, "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(parse_text(&text).unwrap(), g);
        assert_eq!(parse_text("# comment\n3 1\n\n2 0\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn text_rejects_malformed_input() {
        for bad in ["", "3", "3 1\n0 3\n", "3 1\n1 1\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 2\n0 1\n1 0\n", "3 1\n0 1 2\n"] {
            assert!(parse_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn graph6_known_strings() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(parse_graph6(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_with_long_prefix() {
        for n in [2, 7, 62, 63, 64, 100, 200] {
            let g = Graph::gnp(n, 0.2, n as u64);
            let s = to_graph6(&g);
            if n >= 63 {
                assert_eq!(s.as_bytes()[0], 126);
            }
            assert_eq!(parse_graph6(&s).unwrap(), g, "n={n}");
        }
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        for bad in ["", "D", "DQcc", "D\x20Qc", "~?", "C~~", "A`"] {
            assert!(parse_graph6(bad).is_err(), "{bad:?}");
        }
    }
}

use super::{Color, ColoredDigraph, ColoredEdge};
use crate::error::{Error, Result};

/// Read the line-based graph format:
///
/// ```text
/// # comment
/// n=6
/// 1 2 r
/// 4 3 g    # green arcs point from the first vertex to the second
/// ```
///
/// A `;` also ends a line, so `"n=2; 1 2 r"` is a complete file.
pub fn parse_graph(text: &str) -> Result<ColoredDigraph> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let Some(n) = order else {
                let value = stmt
                    .strip_prefix("n")
                    .map(str::trim_start)
                    .and_then(|s| s.strip_prefix('='))
                    .ok_or_else(|| err(format!("expected `n=<count>`, found {stmt:?}")))?;
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {:?}", value.trim())))?;
                order = Some(n);
                continue;
            };
            let fields: Vec<&str> = stmt.split_whitespace().collect();
            let [u, v, c] = fields[..] else {
                return Err(err(format!("expected `<u> <v> <color>`, found {stmt:?}")));
            };
            let vertex = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex {s:?}")));
            let (u, v) = (vertex(u)?, vertex(v)?);
            let color = Color::from_code(c)
                .ok_or_else(|| err(format!("bad color {c:?}, expected r, b or g")))?;
            // range is checked by the model; this keeps the message tied to the line
            if u == 0 || v == 0 || u > n || v > n {
                return Err(err(format!("edge {u} {v} leaves the vertex range 1..={n}")));
            }
            edges.push(ColoredEdge::new(u, v, color));
        }
    }
    let n = order.ok_or(Error::Parse { line: 0, message: "missing `n=<count>` line".into() })?;
    ColoredDigraph::new(n, edges)
}

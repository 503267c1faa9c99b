//! Text formats: static edge lists and operation streams.
//!
//! Both formats share one tokenization: whitespace-separated tokens, `#`
//! starts a comment running to end of line, blank lines are skipped.
//! Vertex tokens are arbitrary non-whitespace strings interned to integer
//! ids in order of first appearance, so numeric and symbolic names mix
//! freely.

use std::collections::{HashMap, HashSet};

/// First-appearance token interner.
#[derive(Debug, Default)]
pub struct Interner {
    ids: HashMap<String, u64>,
    names: Vec<String>,
}

impl Interner {
    pub fn intern(&mut self, token: &str) -> u64 {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.names.len() as u64;
        self.ids.insert(token.to_string(), id);
        self.names.push(token.to_string());
        id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: u64) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }
}

/// A line-level problem; the line number is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Parsed static edge list.
#[derive(Debug, Default)]
pub struct EdgeList {
    pub interner: Interner,
    /// Deduplicated, loop-free edges in file order.
    pub edges: Vec<(u64, u64, Option<f64>)>,
    /// Dropped-line notices (duplicates, self-loops), in file order.
    pub warnings: Vec<String>,
}

fn tokens_of(line: &str) -> Vec<&str> {
    let body = line.split('#').next().unwrap_or("");
    body.split_whitespace().collect()
}

/// Parse a whole edge-list file. Duplicate edges and self-loops are
/// dropped with a warning; anything else malformed is an error.
pub fn parse_edge_list(text: &str) -> Result<EdgeList, LineError> {
    let mut out = EdgeList::default();
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let tokens = tokens_of(raw);
        match tokens.as_slice() {
            [] => {}
            [u, v] | [u, v, _] => {
                let weight = if tokens.len() == 3 {
                    let w: f64 = tokens[2].parse().map_err(|_| LineError {
                        line,
                        message: format!("weight {:?} is not a number", tokens[2]),
                    })?;
                    if !w.is_finite() {
                        return Err(LineError {
                            line,
                            message: format!("weight {w} is not finite"),
                        });
                    }
                    Some(w)
                } else {
                    None
                };
                let a = out.interner.intern(u);
                let b = out.interner.intern(v);
                if a == b {
                    out.warnings.push(format!("line {line}: dropped self-loop on {u:?}"));
                    continue;
                }
                let key = (a.min(b), a.max(b));
                if !seen.insert(key) {
                    out.warnings
                        .push(format!("line {line}: ignored duplicate edge {u:?} {v:?}"));
                    continue;
                }
                out.edges.push((a, b, weight));
            }
            _ => {
                return Err(LineError {
                    line,
                    message: format!(
                        "expected two vertex tokens and an optional weight, found {} tokens",
                        tokens.len()
                    ),
                });
            }
        }
    }
    Ok(out)
}

/// One operation-stream line.
#[derive(Debug, Clone, PartialEq)]
pub enum StreamOp {
    AddVertex { id: u64, color: Option<u32> },
    RemoveVertex { id: u64 },
    AddEdge { u: u64, v: u64, weight: Option<f64> },
    RemoveEdge { u: u64, v: u64 },
    Query,
}

/// Parse one stream line; `Ok(None)` for blanks and comments. Interning
/// happens as a side effect, so callers process lines in order.
pub fn parse_op_line(
    raw: &str,
    line: usize,
    interner: &mut Interner,
) -> Result<Option<StreamOp>, LineError> {
    let tokens = tokens_of(raw);
    let fail = |message: String| Err(LineError { line, message });
    match tokens.as_slice() {
        [] => Ok(None),
        ["?"] => Ok(Some(StreamOp::Query)),
        ["+v", id] => Ok(Some(StreamOp::AddVertex { id: interner.intern(id), color: None })),
        ["+v", id, color] => match color.parse::<u32>() {
            Ok(c) => Ok(Some(StreamOp::AddVertex {
                id: interner.intern(id),
                color: Some(c),
            })),
            Err(_) => fail(format!("color {color:?} is not an unsigned integer")),
        },
        ["-v", id] => Ok(Some(StreamOp::RemoveVertex { id: interner.intern(id) })),
        ["+e", u, v] => Ok(Some(StreamOp::AddEdge {
            u: interner.intern(u),
            v: interner.intern(v),
            weight: None,
        })),
        ["+e", u, v, w] => match w.parse::<f64>() {
            Ok(weight) if weight.is_finite() => Ok(Some(StreamOp::AddEdge {
                u: interner.intern(u),
                v: interner.intern(v),
                weight: Some(weight),
            })),
            Ok(weight) => fail(format!("weight {weight} is not finite")),
            Err(_) => fail(format!("weight {w:?} is not a number")),
        },
        ["-e", u, v] => Ok(Some(StreamOp::RemoveEdge {
            u: interner.intern(u),
            v: interner.intern(v),
        })),
        [op, ..] if ["+v", "-v", "+e", "-e", "?"].contains(op) => {
            fail(format!("wrong number of tokens for {op:?}"))
        }
        [op, ..] => fail(format!("unknown operation {op:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interner_assigns_first_appearance_order() {
        let mut interner = Interner::default();
        assert_eq!(interner.intern("b"), 0);
        assert_eq!(interner.intern("a"), 1);
        assert_eq!(interner.intern("b"), 0);
        assert_eq!(interner.name(1), Some("a"));
        assert_eq!(interner.len(), 2);
    }

    #[test]
    fn edge_list_handles_comments_blanks_and_weights() {
        let text = "# header\n\na b\nb c 0.5   # trailing\n  c a\n";
        let parsed = parse_edge_list(text).unwrap();
        assert_eq!(
            parsed.edges,
            vec![(0, 1, None), (1, 2, Some(0.5)), (2, 0, None)]
        );
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn edge_list_warns_on_duplicates_and_loops() {
        let text = "a b\nb a\nc c\n";
        let parsed = parse_edge_list(text).unwrap();
        assert_eq!(parsed.edges, vec![(0, 1, None)]);
        assert_eq!(parsed.warnings.len(), 2);
        assert!(parsed.warnings[0].contains("duplicate"));
        assert!(parsed.warnings[1].contains("self-loop"));
    }

    #[test]
    fn edge_list_rejects_malformed_lines() {
        let err = parse_edge_list("a\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_edge_list("a b c d\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_edge_list("a b\nx y notanumber\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_edge_list("a b inf\n").unwrap_err();
        assert!(err.message.contains("finite"));
    }

    #[test]
    fn op_lines_parse_each_form() {
        let mut interner = Interner::default();
        let mut one = |raw: &str| parse_op_line(raw, 1, &mut interner).unwrap();
        assert_eq!(one("+v alice"), Some(StreamOp::AddVertex { id: 0, color: None }));
        assert_eq!(
            one("+v bob 2"),
            Some(StreamOp::AddVertex { id: 1, color: Some(2) })
        );
        assert_eq!(
            one("+e alice bob 0.25"),
            Some(StreamOp::AddEdge { u: 0, v: 1, weight: Some(0.25) })
        );
        assert_eq!(one("-e alice bob"), Some(StreamOp::RemoveEdge { u: 0, v: 1 }));
        assert_eq!(one("-v bob"), Some(StreamOp::RemoveVertex { id: 1 }));
        assert_eq!(one("?"), Some(StreamOp::Query));
        assert_eq!(one("# comment"), None);
        assert_eq!(one(""), None);
    }

    #[test]
    fn op_lines_reject_malformed_input() {
        let mut interner = Interner::default();
        assert!(parse_op_line("+v", 3, &mut interner).is_err());
        assert!(parse_op_line("+e a", 3, &mut interner).is_err());
        assert!(parse_op_line("+e a b c d", 3, &mut interner).is_err());
        assert!(parse_op_line("+v a notacolor", 3, &mut interner).is_err());
        assert!(parse_op_line("+e a b nan", 3, &mut interner).is_err());
        assert!(parse_op_line("swap a b", 3, &mut interner).is_err());
        let err = parse_op_line("? extra", 9, &mut interner).unwrap_err();
        assert_eq!(err.line, 9);
    }
}

//! Plain-text and JSON serialization for complexes and move logs.
//!
//! The facet-list text format has one facet per line as whitespace
//! separated integer labels; `#` starts a comment and blank lines are
//! skipped. Output is canonical (facets in lexicographic order), so a
//! parse/render round trip is bit-exact. The JSON variant wraps the same
//! facet list as `{dim, facets, name}`. Move logs are JSON lines, one
//! move per line `{i, sigma, tau, new_vertex?}`, where `new_vertex`
//! appears exactly for 0-moves (their tau is the fresh vertex).

use crate::complex::{ComplexError, SimplicialComplex};
use crate::moves::BistellarMove;
use crate::simplex::Simplex;
use crate::walk::MoveLog;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Renders the canonical facet-list text: one line per facet, ascending
/// labels within a line, lines in lexicographic order.
pub fn render_complex_text(c: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in c.facets() {
        let labels: Vec<String> = f.labels().iter().map(u32::to_string).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the facet-list text format.
pub fn parse_complex_text(s: &str) -> Result<SimplicialComplex, IoError> {
    let mut facets = Vec::new();
    for (idx, raw) in s.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut labels = Vec::new();
        for tok in content.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| IoError::Parse {
                line,
                msg: format!("'{tok}' is not a vertex label"),
            })?;
            labels.push(v);
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(IoError::Parse {
                line,
                msg: "facet repeats a vertex".into(),
            });
        }
        facets.push(labels);
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

/// JSON wrapper around a complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub dim: i32,
    pub facets: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

impl ComplexJson {
    pub fn from_complex(c: &SimplicialComplex, name: Option<String>) -> Self {
        ComplexJson {
            dim: c.dim(),
            facets: c.facets().map(Simplex::labels).collect(),
            name,
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, IoError> {
        for (pos, f) in self.facets.iter().enumerate() {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(IoError::Parse {
                    line: pos + 1,
                    msg: "facet repeats a vertex".into(),
                });
            }
        }
        let c = SimplicialComplex::from_facets(self.facets.iter())?;
        if c.dim() != self.dim {
            return Err(IoError::Parse {
                line: 0,
                msg: format!(
                    "declared dimension {} but facets have dimension {}",
                    self.dim,
                    c.dim()
                ),
            });
        }
        Ok(c)
    }
}

/// One line of a serialized move log.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MoveLine {
    pub i: usize,
    pub sigma: Vec<u32>,
    pub tau: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub new_vertex: Option<u32>,
}

impl MoveLine {
    pub fn from_move(mv: &BistellarMove) -> Self {
        if mv.i == 0 {
            MoveLine {
                i: 0,
                sigma: mv.sigma.labels(),
                tau: Vec::new(),
                new_vertex: Some(mv.tau.labels()[0]),
            }
        } else {
            MoveLine {
                i: mv.i,
                sigma: mv.sigma.labels(),
                tau: mv.tau.labels(),
                new_vertex: None,
            }
        }
    }

    pub fn to_move(&self, line: usize) -> Result<BistellarMove, IoError> {
        if self.sigma.is_empty() {
            return Err(IoError::Parse {
                line,
                msg: "sigma must be nonempty".into(),
            });
        }
        let tau = if self.i == 0 {
            match (self.new_vertex, self.tau.is_empty()) {
                (Some(v), true) => vec![v],
                _ => {
                    return Err(IoError::Parse {
                        line,
                        msg: "a 0-move carries its fresh vertex in new_vertex, with empty tau"
                            .into(),
                    })
                }
            }
        } else {
            if self.new_vertex.is_some() {
                return Err(IoError::Parse {
                    line,
                    msg: "new_vertex is only for 0-moves".into(),
                });
            }
            self.tau.clone()
        };
        if tau.len() != self.i + 1 {
            return Err(IoError::Parse {
                line,
                msg: format!("an {}-move needs {} tau vertices", self.i, self.i + 1),
            });
        }
        // sigma has n - i + 1 vertices, so n is determined by the line
        let n = self.sigma.len() + self.i - 1;
        Ok(BistellarMove {
            n,
            i: self.i,
            sigma: Simplex::from_labels(&self.sigma),
            tau: Simplex::from_labels(&tau),
        })
    }
}

/// Renders a log as JSON lines, one move per line.
pub fn render_move_log(log: &MoveLog) -> String {
    let mut out = String::new();
    for entry in &log.entries {
        let line = MoveLine::from_move(&entry.mv);
        out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

/// Parses JSON-lines move logs back into moves (snapshots are recomputed
/// on replay).
pub fn parse_move_log(s: &str) -> Result<Vec<BistellarMove>, IoError> {
    let mut moves = Vec::new();
    for (idx, raw) in s.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let parsed: MoveLine = serde_json::from_str(raw).map_err(|e| IoError::Parse {
            line,
            msg: e.to_string(),
        })?;
        moves.push(parsed.to_move(line)?);
    }
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{boundary_simplex, torus7};
    use crate::moves::apply_move;
    use crate::walk::{random_walk, WalkConfig};

    #[test]
    fn text_round_trip_is_bit_exact() {
        for c in [boundary_simplex(3), torus7(), boundary_simplex(5)] {
            let text = render_complex_text(&c);
            let back = parse_complex_text(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(render_complex_text(&back), text);
        }
    }

    #[test]
    fn comments_blanks_and_unordered_labels_parse() {
        let text = "# a tetrahedron boundary\n\n3 2 1\n1 2 4   # with a comment\n1 3 4\n2 3 4\n";
        let c = parse_complex_text(text).unwrap();
        assert_eq!(c, boundary_simplex(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "1 2 3\n1 x 4\n";
        match parse_complex_text(bad) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let dup = "1 2 2\n";
        assert!(matches!(
            parse_complex_text(dup),
            Err(IoError::Parse { line: 1, .. })
        ));
        let mixed = "1 2 3\n1 2\n";
        assert!(matches!(
            parse_complex_text(mixed),
            Err(IoError::Complex(_))
        ));
    }

    #[test]
    fn json_round_trip_preserves_the_complex() {
        let c = torus7();
        let wrapped = ComplexJson::from_complex(&c, Some("torus7".into()));
        let text = serde_json::to_string(&wrapped).unwrap();
        let reread: ComplexJson = serde_json::from_str(&text).unwrap();
        assert_eq!(reread.to_complex().unwrap(), c);
        assert_eq!(reread.name.as_deref(), Some("torus7"));
    }

    #[test]
    fn json_dimension_must_match_the_facets() {
        let wrapped = ComplexJson {
            dim: 3,
            facets: vec![vec![1, 2, 3]],
            name: None,
        };
        assert!(matches!(
            wrapped.to_complex(),
            Err(IoError::Parse { .. })
        ));
    }

    #[test]
    fn move_logs_round_trip_and_replay() {
        let m = boundary_simplex(3);
        let (end, log) = random_walk(&m, &WalkConfig::uniform(40, 8, 2)).unwrap();
        let text = render_move_log(&log);
        let moves = parse_move_log(&text).unwrap();
        assert_eq!(moves.len(), 40);
        for (parsed, entry) in moves.iter().zip(&log.entries) {
            assert_eq!(parsed, &entry.mv);
        }
        let mut cur = m.clone();
        for mv in &moves {
            cur = apply_move(&cur, mv).unwrap();
        }
        assert_eq!(cur, end);
        // rendering the reparsed moves reproduces the file bit for bit
        let again: Vec<String> = moves
            .iter()
            .map(|mv| serde_json::to_string(&MoveLine::from_move(mv)).unwrap())
            .collect();
        assert_eq!(again.join("\n") + "\n", text);
    }

    #[test]
    fn malformed_move_lines_are_rejected() {
        assert!(parse_move_log("{\"i\":1,\"sigma\":[1,2],\"tau\":[3,4],\"new_vertex\":9}").is_err());
        assert!(parse_move_log("{\"i\":0,\"sigma\":[1,2,3],\"tau\":[4]}").is_err());
        assert!(parse_move_log("{\"i\":2,\"sigma\":[1,2],\"tau\":[3,4]}").is_err());
        assert!(parse_move_log("not json").is_err());
    }
}

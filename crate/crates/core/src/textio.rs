//! Line-oriented text formats for hypergraphs, graphs and clique sets.
//!
//! Hypergraph:
//! ```text
//! # n=<n>
//! # class d=<d> delta=<δ> p=<p>
//! 0 3 7
//! ...
//! ```
//! The leading `# n=` line is optional on input; without it `n` is one more
//! than the largest vertex id. Graphs are `a b` per line with `a < b`; clique
//! sets are one clique per line. Vertex ids are ascending within a line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::estimator::CliqueSet;
use crate::model::{edge_probability, DegreeClassSpec, Hypergraph, ProjectedGraph, VertexSet};

fn join(vs: &[usize]) -> String {
    let mut s = String::new();
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("# n={}\n", h.n);
    for c in &h.classes {
        let _ = writeln!(
            out,
            "# class d={} delta={} p={}",
            c.spec.degree, c.spec.exponent, c.probability
        );
        for e in &c.edges {
            out.push_str(&join(e));
            out.push('\n');
        }
    }
    out
}

fn parse_ids(line: &str, lineno: usize) -> Result<VertexSet> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad vertex id {t:?}"),
            })
        })
        .collect()
}

fn header_field<'a>(line: &'a str, key: &str, lineno: usize) -> Result<&'a str> {
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("missing {key}= in header"),
        })
}

fn parse_num<T: std::str::FromStr>(s: &str, lineno: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("bad number {s:?}"),
    })
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut n: Option<usize> = None;
    let mut classes: Vec<(usize, f64, f64, Vec<VertexSet>)> = Vec::new();
    let mut max_vertex: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("n=") {
                n = Some(parse_num(v, lineno)?);
            } else if rest.starts_with("class") {
                let d = parse_num(header_field(rest, "d", lineno)?, lineno)?;
                let delta = parse_num(header_field(rest, "delta", lineno)?, lineno)?;
                let p = parse_num(header_field(rest, "p", lineno)?, lineno)?;
                classes.push((d, delta, p, Vec::new()));
            }
            continue;
        }
        let ids = parse_ids(line, lineno)?;
        let Some(class) = classes.last_mut() else {
            return Err(Error::Parse {
                line: lineno,
                msg: "hyperedge before any class header".into(),
            });
        };
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: lineno,
                msg: "vertex ids must be strictly ascending".into(),
            });
        }
        max_vertex = max_vertex.max(ids.last().copied());
        class.3.push(ids);
    }
    let n = n.unwrap_or_else(|| max_vertex.map_or(0, |v| v + 1));
    let mut built = Vec::with_capacity(classes.len());
    for (d, delta, p, edges) in classes {
        let mut spec = DegreeClassSpec::new(d, delta)?;
        if edge_probability(n, &spec) != p {
            spec = spec.with_override(p)?;
        }
        built.push((spec, p, edges));
    }
    Hypergraph::from_edges(n, built)
}

pub fn write_graph(g: &ProjectedGraph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Parse an edge list; `n` defaults to one more than the largest id.
pub fn parse_graph(text: &str, n: Option<usize>) -> Result<ProjectedGraph> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids = parse_ids(line, i + 1)?;
        let [a, b] = ids[..] else {
            return Err(Error::Parse {
                line: i + 1,
                msg: "expected two vertex ids".into(),
            });
        };
        edges.push((a, b));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    ProjectedGraph::from_edges(n, edges)
}

pub fn write_cliques(c: &CliqueSet) -> String {
    let mut out = String::new();
    for s in c.iter() {
        out.push_str(&join(s));
        out.push('\n');
    }
    out
}

pub fn parse_cliques(text: &str, size: usize) -> Result<CliqueSet> {
    let mut set = CliqueSet::new(size);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let ids = parse_ids(line, i + 1)?;
        if ids.len() != size || ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {size} ascending vertex ids"),
            });
        }
        set.cliques.insert(ids);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{project, sample_hypergraph, ModelParams};

    #[test]
    fn hypergraph_text_layout() {
        let spec = DegreeClassSpec::new(3, 0.5).unwrap().with_override(0.25).unwrap();
        let h = Hypergraph::from_edges(6, vec![(spec, 0.25, vec![vec![3, 1, 2], vec![0, 4, 5]])]).unwrap();
        assert_eq!(
            write_hypergraph(&h),
            "# n=6\n# class d=3 delta=0.5 p=0.25\n0 4 5\n1 2 3\n"
        );
    }

    #[test]
    fn sampled_hypergraph_survives_a_round_trip() {
        let params = ModelParams::from_pairs(30, &[(2, 0.3), (3, 0.7)]).unwrap();
        let h = sample_hypergraph(&params, 5).unwrap();
        let back = parse_hypergraph(&write_hypergraph(&h)).unwrap();
        assert_eq!(back, h);

        let g = project(&h);
        assert_eq!(parse_graph(&write_graph(&g), Some(30)).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_hypergraph("# class d=3 delta=0.5 p=0.1\n1 2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_hypergraph("1 2 3\n").is_err());
        assert!(parse_hypergraph("# class d=3 delta=0.5 p=0.1\n3 2 1\n").is_err());
        assert!(parse_graph("1 2 3\n", None).is_err());
        assert!(parse_cliques("1 2\n", 3).is_err());
    }

    #[test]
    fn graph_n_is_inferred() {
        let g = parse_graph("0 1\n\n1 4\n", None).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn cliques_text() {
        let c = parse_cliques("0 1 2\n1 3 4\n", 3).unwrap();
        assert_eq!(write_cliques(&c), "0 1 2\n1 3 4\n");
    }
}

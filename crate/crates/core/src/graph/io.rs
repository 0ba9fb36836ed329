use std::fmt::Write as _;

use super::{CostPolicy, Graph, GraphBuilder};
use crate::error::{Result, RspError};

/// Parses a whitespace-separated `src dst weight [cost]` edge list.
///
/// Lines starting with `#` and blank lines are skipped. Node labels are
/// arbitrary tokens mapped to contiguous ids in order of first appearance.
/// Line numbers in errors are 1-based.
pub fn load_edge_list(text: &str, undirected: bool, costs: CostPolicy) -> Result<Graph> {
    let mut b = GraphBuilder::new(undirected);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() || row.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(RspError::MalformedRow {
                line,
                reason: format!("expected 3 or 4 fields, found {}", fields.len()),
            });
        }
        let weight = parse_number(line, "weight", fields[2])?;
        let cost = match costs {
            CostPolicy::Column => match fields.get(3) {
                Some(tok) => parse_number(line, "cost", tok)?,
                None => return Err(RspError::MissingCost { line }),
            },
            CostPolicy::Reciprocal => 1.0 / weight,
            CostPolicy::Unit => 1.0,
        };
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(RspError::NonPositiveWeight { line, value: weight });
        }
        let src = b.intern(fields[0]);
        let dst = b.intern(fields[1]);
        b.add_edge_at(line, src, dst, weight, cost)?;
    }
    Ok(b.build())
}

fn parse_number(line: usize, what: &str, tok: &str) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| RspError::MalformedRow {
        line,
        reason: format!("{what} `{tok}` is not a number"),
    })
}

/// Serializes declared edges as `src dst weight cost` rows using node labels.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_undirected() { "undirected" } else { "directed" };
    let _ = writeln!(out, "# {kind} nodes={} edges={}", g.node_count(), g.edges().count());
    for a in g.edges() {
        let _ = writeln!(out, "{} {} {} {}", g.label(a.src), g.label(a.dst), a.weight, a.cost);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_unit_costs() {
        let g = load_edge_list("1 2 1.0\n2 3 1.0", true, CostPolicy::Unit).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.arc_count(), 4);
        assert!(g.arcs().iter().all(|a| a.cost == 1.0));
    }

    #[test]
    fn reciprocal_cost() {
        let g = load_edge_list("1 2 4.0", false, CostPolicy::Reciprocal).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.arcs()[0].weight, 4.0);
        assert_eq!(g.arcs()[0].cost, 0.25);
    }

    #[test]
    fn duplicate_arc_reports_line() {
        let err = load_edge_list("1 2 1.0\n1 2 2.0", false, CostPolicy::Unit).unwrap_err();
        assert!(matches!(err, RspError::DuplicateArc { line: 2, .. }));
    }

    #[test]
    fn arbitrary_labels_in_insertion_order() {
        let text = "# comment\n\nbob alice 1\n  alice carol 2 0.5\n";
        let g = load_edge_list(text, true, CostPolicy::Column);
        assert!(matches!(g, Err(RspError::MissingCost { line: 3 })));
        let g = load_edge_list(text, true, CostPolicy::Unit).unwrap();
        assert_eq!(g.labels(), &["bob", "alice", "carol"]);
    }

    #[test]
    fn row_errors() {
        let cases = [
            ("1 2", "malformed-row"),
            ("1 2 x", "malformed-row"),
            ("1 2 1 1 1", "malformed-row"),
            ("1 2 1", "missing-cost"),
            ("1 2 -1 1", "nonpositive-weight"),
            ("1 2 0 1", "nonpositive-weight"),
            ("1 2 1 -3", "negative-cost"),
            ("1 1 1 1", "self-loop"),
        ];
        for (text, reason) in cases {
            let err = load_edge_list(text, false, CostPolicy::Column).unwrap_err();
            assert_eq!(err.reason(), reason, "{text}");
        }
        let err = load_edge_list("1 2 1\n3 4", false, CostPolicy::Unit).unwrap_err();
        assert!(matches!(err, RspError::MalformedRow { line: 2, .. }));
    }

    #[test]
    fn write_then_load_preserves_graph() {
        let g = load_edge_list("a b 2 0.5\nb c 3 1.5\n", true, CostPolicy::Column).unwrap();
        let back = load_edge_list(&write_edge_list(&g), true, CostPolicy::Column).unwrap();
        assert_eq!(back, g);
    }
}

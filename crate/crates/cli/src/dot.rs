//! Graphviz export with nodes colored by score quantile.

use std::fmt::Write as _;

use clap::ValueEnum;
use rsp_core::Graph;

pub const BINS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Palette {
    /// Blue for low scores through yellow to red for high ones.
    Heat,
    /// Light to dark grey.
    Greys,
}

impl Palette {
    fn colors(self) -> [&'static str; BINS] {
        match self {
            Palette::Heat => [
                "#313695", "#4575b4", "#74add1", "#abd9e9", "#ffffbf", "#fee090", "#fdae61", "#f46d43", "#d73027",
            ],
            Palette::Greys => [
                "#ffffff", "#f0f0f0", "#d9d9d9", "#bdbdbd", "#969696", "#737373", "#525252", "#252525", "#000000",
            ],
        }
    }
}

/// Quantile bin of every score: `ceil(9 F(x)) - 1` with `F` the empirical
/// distribution function, so equal scores share a bin and the maximum is
/// always in the top bin.
pub fn quantile_bins(scores: &[f64]) -> Vec<usize> {
    let n = scores.len() as f64;
    scores
        .iter()
        .map(|x| {
            let at_most = scores.iter().filter(|y| *y <= x).count() as f64;
            ((BINS as f64 * at_most / n).ceil() as usize).clamp(1, BINS) - 1
        })
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(g: &Graph, scores: &[f64], palette: Palette, title: &str) -> String {
    let colors = palette.colors();
    let bins = quantile_bins(scores);
    let (kind, edge_op) = if g.is_undirected() {
        ("graph", "--")
    } else {
        ("digraph", "->")
    };
    let mut out = String::new();
    let _ = writeln!(out, "{kind} {} {{", quote(title));
    let _ = writeln!(out, "  node [style=filled, shape=circle, fontcolor=black];");
    for v in 0..g.node_count() {
        let _ = writeln!(
            out,
            "  {} [fillcolor={}, tooltip={}];",
            quote(g.label(v)),
            quote(colors[bins[v]]),
            quote(&crate::output::fmt_sig(scores[v]))
        );
    }
    let arcs: Vec<_> = if g.is_undirected() {
        g.edges().collect()
    } else {
        g.arcs().iter().collect()
    };
    for a in arcs {
        let _ = writeln!(out, "  {} {edge_op} {};", quote(g.label(a.src)), quote(g.label(a.dst)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins() {
        assert_eq!(quantile_bins(&[3.0; 5]), vec![8; 5]);
        assert_eq!(quantile_bins(&[4.0, 8.0, 4.0]), vec![5, 8, 5]);
        let ramp: Vec<f64> = (0..9).map(f64::from).collect();
        assert_eq!(quantile_bins(&ramp), (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn quoting() {
        assert_eq!(quote(r#"a"b\c"#), r#""a\"b\\c""#);
    }
}

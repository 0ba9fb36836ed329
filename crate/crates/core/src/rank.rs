//! Rank agreement between score vectors.

use crate::centrality::ranking_of;

/// Ranks in descending score order, tied values sharing their mean rank.
///
/// Two scores tie when they differ by at most `rel_tol` times the larger
/// magnitude. With `rel_tol = 0` only exact equality ties.
pub fn average_ranks(scores: &[f64], rel_tol: f64) -> Vec<f64> {
    let order = ranking_of(scores);
    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && tied(scores[order[end - 1]], scores[order[end]], rel_tol) {
            end += 1;
        }
        // positions start..end hold 1-based ranks start+1..=end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &node in &order[start..end] {
            ranks[node] = mean;
        }
        start = end;
    }
    ranks
}

fn tied(a: f64, b: f64, rel_tol: f64) -> bool {
    a == b || (a - b).abs() <= rel_tol * a.abs().max(b.abs())
}

/// Spearman rank correlation with tie correction (Pearson correlation of
/// average ranks). Returns 1 when both vectors are constant.
pub fn spearman(a: &[f64], b: &[f64], rel_tol: f64) -> f64 {
    assert_eq!(a.len(), b.len(), "spearman needs equal lengths");
    let ra = average_ranks(a, rel_tol);
    let rb = average_ranks(b, rel_tol);
    let n = ra.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 && sbb == 0.0 {
        return 1.0;
    }
    if saa == 0.0 || sbb == 0.0 {
        return 0.0;
    }
    (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)
}

/// Fraction of the top-`k` nodes shared by both rankings (`k` capped at n).
pub fn top_k_overlap(a: &[f64], b: &[f64], k: usize) -> f64 {
    assert_eq!(a.len(), b.len(), "top-k overlap needs equal lengths");
    let k = k.min(a.len());
    if k == 0 {
        return 1.0;
    }
    let ta = &ranking_of(a)[..k];
    let tb = &ranking_of(b)[..k];
    let shared = ta.iter().filter(|x| tb.contains(x)).count();
    shared as f64 / k as f64
}

/// `max_i |a_i - b_i| / max_i |b_i|`.
pub fn relative_linf(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Mean of the (tie-averaged) ranks of `group` members.
pub fn mean_group_rank(scores: &[f64], group: &[usize], rel_tol: f64) -> f64 {
    let ranks = average_ranks(scores, rel_tol);
    group.iter().map(|&g| ranks[g]).sum::<f64>() / group.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn average_ranks_with_ties() {
        assert_eq!(average_ranks(&[4.0, 8.0, 4.0], 0.0), vec![2.5, 1.0, 2.5]);
        assert_eq!(average_ranks(&[1.0, 1.0 + 1e-12, 0.0], 1e-9), vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn spearman_extremes() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(spearman(&a, &a, 0.0), 1.0);
        assert_eq!(spearman(&a, &[4.0, 3.0, 2.0, 1.0], 0.0), -1.0);
        // affine maps preserve rank order including ties
        let b = [2.0, 2.0, 5.0, 1.0];
        let c: Vec<f64> = b.iter().map(|x| 3.0 * x - 7.0).collect();
        assert!((spearman(&b, &c, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overlap() {
        let a = [5.0, 4.0, 3.0, 2.0, 1.0];
        let b = [1.0, 4.0, 3.0, 2.0, 5.0];
        assert_eq!(top_k_overlap(&a, &a, 10), 1.0);
        assert_eq!(top_k_overlap(&a, &b, 1), 0.0);
        assert_eq!(top_k_overlap(&a, &b, 3), 2.0 / 3.0);
    }

    #[test]
    fn group_rank() {
        assert_eq!(mean_group_rank(&[4.0, 8.0, 4.0], &[0, 2], 0.0), 2.5);
    }

    proptest! {
        #[test]
        fn spearman_in_range(v in prop::collection::vec((0u8..5, 0u8..5), 2..30)) {
            let a: Vec<f64> = v.iter().map(|p| p.0 as f64).collect();
            let b: Vec<f64> = v.iter().map(|p| p.1 as f64).collect();
            let r = spearman(&a, &b, 0.0);
            prop_assert!((-1.0..=1.0).contains(&r));
            prop_assert!((r - spearman(&b, &a, 0.0)).abs() < 1e-12);
        }
    }
}

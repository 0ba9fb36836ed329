use std::fmt;

/// Which measure produced a score vector, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTag {
    pub measure: String,
    pub beta: Option<f64>,
    pub policy: Option<String>,
}

impl MeasureTag {
    pub fn new(measure: &str) -> Self {
        MeasureTag {
            measure: measure.to_string(),
            beta: None,
            policy: None,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_policy(mut self, policy: &str) -> Self {
        self.policy = Some(policy.to_string());
        self
    }
}

impl fmt::Display for MeasureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.measure)?;
        if let Some(b) = self.beta {
            write!(f, " beta={b}")?;
        }
        if let Some(p) = &self.policy {
            write!(f, " policy={p}")?;
        }
        Ok(())
    }
}

/// Per-node scores with a deterministic ranking.
///
/// `ranking[0]` is the highest-scoring node; ties go to the smaller node id.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    scores: Vec<f64>,
    ranking: Vec<usize>,
    tag: MeasureTag,
    notes: Vec<String>,
}

impl CentralityVector {
    pub fn new(scores: Vec<f64>, tag: MeasureTag) -> Self {
        debug_assert!(scores.iter().all(|s| s.is_finite()));
        let ranking = ranking_of(&scores);
        CentralityVector {
            scores,
            ranking,
            tag,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// 1-based rank of every node.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.scores.len()];
        for (pos, &node) in self.ranking.iter().enumerate() {
            ranks[node] = pos + 1;
        }
        ranks
    }

    pub fn tag(&self) -> &MeasureTag {
        &self.tag
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Relative gap under which two scores count as tied when ranking.
pub const RANK_TIE_TOLERANCE: f64 = 1e-9;

/// Nodes ordered by descending score, ascending id on ties.
///
/// Runs of scores whose neighbours differ by at most
/// [`RANK_TIE_TOLERANCE`] (relative, or `1e-12` absolute) are tied, so
/// rounding noise does not reorder symmetric nodes.
pub fn ranking_of(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() {
            let (a, b) = (scores[order[end - 1]], scores[order[end]]);
            if (a - b).abs() > RANK_TIE_TOLERANCE * a.abs().max(b.abs()) + 1e-12 {
                break;
            }
            end += 1;
        }
        order[start..end].sort_unstable();
        start = end;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_by_node_id() {
        let v = CentralityVector::new(vec![4.0, 8.0, 4.0, 1.0], MeasureTag::new("x"));
        assert_eq!(v.ranking(), &[1, 0, 2, 3]);
        assert_eq!(v.ranks(), vec![2, 1, 3, 4]);
        let noisy = CentralityVector::new(vec![4.0 - 1e-15, 8.0, 4.0 + 1e-15, 1.0], MeasureTag::new("x"));
        assert_eq!(noisy.ranking(), &[1, 0, 2, 3]);
    }

    #[test]
    fn tag_display() {
        let t = MeasureTag::new("rsp").with_beta(0.5).with_policy("weight");
        assert_eq!(t.to_string(), "rsp beta=0.5 policy=weight");
    }
}

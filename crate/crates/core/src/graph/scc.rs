use super::Graph;

/// Strongly connected components. Components are numbered in order of their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub count: usize,
    pub membership: Vec<usize>,
}

impl ComponentReport {
    pub fn is_strongly_connected(&self) -> bool {
        self.count == 1
    }
}

// Iterative Tarjan.
pub(super) fn strongly_connected_components(g: &Graph) -> ComponentReport {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut raw_count = 0;
    let succ: Vec<Vec<usize>> = (0..n).map(|v| g.out_arcs(v).map(|a| a.dst).collect()).collect();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        raw[w] = raw_count;
                        if w == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
            }
        }
    }

    let mut relabel = vec![UNSEEN; raw_count];
    let mut count = 0;
    let membership = raw
        .iter()
        .map(|&c| {
            if relabel[c] == UNSEEN {
                relabel[c] = count;
                count += 1;
            }
            relabel[c]
        })
        .collect();
    ComponentReport { count, membership }
}

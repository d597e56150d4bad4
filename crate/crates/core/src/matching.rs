//! Maximum-weight matching between bins and items that cover them alone.
//!
//! An edge `(i, j)` exists when `s_j > d_i`, and every edge at bin `i` weighs
//! `p_i`. Because weights depend only on the bin, the matchable bin sets form
//! a transversal matroid and greedy insertion by non-increasing profit with
//! augmenting paths is exact.

use serde::Serialize;

use crate::instance::{Assignment, BinRef, Instance};
use crate::nfd::order_desc;
use crate::rat::Rat;

/// Bins on the left, items on the right, edges where one item covers a bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    profits: Vec<Rat>,
    n_items: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Graph from explicit adjacency lists; `adj[i]` lists the items of bin `i`.
    pub fn from_edges(profits: Vec<Rat>, n_items: usize, adj: Vec<Vec<usize>>) -> BipartiteGraph {
        assert_eq!(profits.len(), adj.len(), "one adjacency list per bin");
        assert!(
            adj.iter().flatten().all(|&j| j < n_items),
            "item index out of range"
        );
        BipartiteGraph {
            profits,
            n_items,
            adj,
        }
    }

    pub fn num_bins(&self) -> usize {
        self.profits.len()
    }

    pub fn num_items(&self) -> usize {
        self.n_items
    }

    pub fn profit(&self, bin: usize) -> &Rat {
        &self.profits[bin]
    }

    /// Items adjacent to `bin`, ascending.
    pub fn neighbours(&self, bin: usize) -> &[usize] {
        &self.adj[bin]
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, bin: usize, item: usize) -> bool {
        self.adj[bin].binary_search(&item).is_ok()
    }
}

/// A set of disjoint `(bin, item)` edges and its weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// Sorted by bin.
    pub pairs: Vec<(usize, usize)>,
    pub weight: Rat,
}

impl Matching {
    /// One item per matched bin.
    pub fn to_assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        for &(bin, item) in &self.pairs {
            a.push(BinRef::unit(bin), item);
        }
        a
    }
}

/// Edges `(i, j)` with `s_j > d_i`, weighted by `p_i`.
pub fn build_graph(inst: &Instance) -> BipartiteGraph {
    let adj = inst
        .bins()
        .iter()
        .map(|b| {
            (0..inst.n())
                .filter(|&j| *inst.size(j) > b.demand)
                .collect()
        })
        .collect();
    BipartiteGraph {
        profits: inst.bins().iter().map(|b| b.profit.clone()).collect(),
        n_items: inst.n(),
        adj,
    }
}

/// Bins by non-increasing profit, ties by index; zero-profit bins dropped.
fn greedy_order(profits: &[Rat]) -> Vec<usize> {
    order_desc(profits)
        .into_iter()
        .filter(|&i| profits[i].is_positive())
        .collect()
}

/// Exact maximum-weight matching for bin-uniform weights.
///
/// Bins are inserted by non-increasing profit (ties by lower index) and kept
/// when an augmenting path exists; paths try items in ascending index.
pub fn max_weight_matching(g: &BipartiteGraph) -> Matching {
    let mut item_owner: Vec<Option<usize>> = vec![None; g.n_items];
    let mut visited = vec![usize::MAX; g.n_items];
    for (stamp, bin) in greedy_order(&g.profits).into_iter().enumerate() {
        augment(g, bin, stamp, &mut visited, &mut item_owner);
    }
    let mut pairs: Vec<(usize, usize)> = item_owner
        .iter()
        .enumerate()
        .filter_map(|(j, o)| o.map(|i| (i, j)))
        .collect();
    pairs.sort_unstable();
    let weight = pairs.iter().map(|&(i, _)| &g.profits[i]).sum();
    Matching { pairs, weight }
}

/// Kuhn's augmenting path search from `bin`, iterative to keep deep graphs
/// off the call stack.
fn augment(
    g: &BipartiteGraph,
    bin: usize,
    stamp: usize,
    visited: &mut [usize],
    owner: &mut [Option<usize>],
) -> bool {
    // Each frame: (bin, next adjacency position, item through which we entered).
    let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(bin, 0, None)];
    while let Some(frame) = stack.last_mut() {
        let (b, pos, _) = *frame;
        if pos >= g.adj[b].len() {
            stack.pop();
            continue;
        }
        frame.1 += 1;
        let j = g.adj[b][pos];
        if visited[j] == stamp {
            continue;
        }
        visited[j] = stamp;
        match owner[j] {
            None => {
                // Flip the path: every frame's bin takes the item it entered the next frame by.
                let mut item = j;
                while let Some((fb, _, entered)) = stack.pop() {
                    owner[item] = Some(fb);
                    match entered {
                        Some(prev) => item = prev,
                        None => break,
                    }
                }
                return true;
            }
            Some(other) => stack.push((other, 0, Some(j))),
        }
    }
    false
}

/// The same optimum as `max_weight_matching(&build_graph(inst))`, computed
/// in `O((n + m) log(n + m))` from the nested structure of the neighbourhoods.
///
/// With items sorted by non-increasing size, bin `i` is adjacent to exactly
/// the first `c_i` of them. A set of bins is matchable iff for every `t`, at
/// most `t` of its bins have `c <= t`. Matched bins, sorted by `c`, take items
/// in size order.
pub fn singular_matching(inst: &Instance) -> Matching {
    let n = inst.n();
    let item_order = order_desc(inst.items());
    let sorted: Vec<&Rat> = item_order.iter().map(|&j| inst.size(j)).collect();
    // c_i = number of items strictly larger than d_i.
    let reach: Vec<usize> = inst
        .bins()
        .iter()
        .map(|b| sorted.partition_point(|s| **s > b.demand))
        .collect();
    let profits: Vec<Rat> = inst.bins().iter().map(|b| b.profit.clone()).collect();

    let mut slack = SlackTree::new(n);
    let mut chosen = Vec::new();
    for bin in greedy_order(&profits) {
        let c = reach[bin];
        if c == 0 {
            continue;
        }
        if slack.min(c, n) >= 1 {
            slack.add(c, n, -1);
            chosen.push(bin);
        }
    }
    chosen.sort_by_key(|&i| (reach[i], i));
    let mut pairs: Vec<(usize, usize)> = chosen
        .iter()
        .enumerate()
        .map(|(r, &i)| (i, item_order[r]))
        .collect();
    pairs.sort_unstable();
    let weight = pairs.iter().map(|&(i, _)| &profits[i]).sum();
    Matching { pairs, weight }
}

/// Range add / range min over `slack(t) = t` for `t` in `1..=n`.
struct SlackTree {
    size: usize,
    min: Vec<i64>,
    lazy: Vec<i64>,
}

impl SlackTree {
    fn new(n: usize) -> SlackTree {
        let size = n.max(1);
        let mut tree = SlackTree {
            size,
            min: vec![0; 4 * size],
            lazy: vec![0; 4 * size],
        };
        tree.build(1, 1, size);
        tree
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize) {
        if lo == hi {
            self.min[node] = lo as i64;
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid);
        self.build(2 * node + 1, mid + 1, hi);
        self.min[node] = self.min[2 * node].min(self.min[2 * node + 1]);
    }

    fn min(&self, l: usize, r: usize) -> i64 {
        self.query(1, 1, self.size, l, r)
    }

    fn add(&mut self, l: usize, r: usize, delta: i64) {
        self.update(1, 1, self.size, l, r, delta);
    }

    fn query(&self, node: usize, lo: usize, hi: usize, l: usize, r: usize) -> i64 {
        if r < lo || hi < l {
            return i64::MAX;
        }
        if l <= lo && hi <= r {
            return self.min[node];
        }
        let mid = (lo + hi) / 2;
        let best =
            self.query(2 * node, lo, mid, l, r)
                .min(self.query(2 * node + 1, mid + 1, hi, l, r));
        best + self.lazy[node]
    }

    fn update(&mut self, node: usize, lo: usize, hi: usize, l: usize, r: usize, delta: i64) {
        if r < lo || hi < l {
            return;
        }
        if l <= lo && hi <= r {
            self.min[node] += delta;
            self.lazy[node] += delta;
            return;
        }
        let mid = (lo + hi) / 2;
        self.update(2 * node, lo, mid, l, r, delta);
        self.update(2 * node + 1, mid + 1, hi, l, r, delta);
        self.min[node] = self.min[2 * node].min(self.min[2 * node + 1]) + self.lazy[node];
    }
}

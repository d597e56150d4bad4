//! Configuration-LP scheme for variable-sized bin covering with infinite
//! supply.
//!
//! Pipeline: normalize by the largest demand and commit oversize items, drop
//! small bin types, split items into large / medium / tiny, round the large
//! items down by linear grouping, enumerate configurations, solve the
//! configuration LP exactly, round down, and fill the partially covered bins
//! greedily with the remaining items.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{lp_solve, LpProblem, LpSolution, Sense};
use crate::instance::{Assignment, BinRef, Instance, ProblemClass, Supply};
use crate::nfd::order_desc;
use crate::rat::Rat;

/// Default cap on the number of enumerated configurations.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Accuracy and grouping parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AptasParams {
    /// Pruning threshold and item classification accuracy.
    pub eps: Rat,
    /// Number of large-size groups. `None` means `⌈1/eps⁴⌉`.
    pub k: Option<usize>,
    /// Maximum number of configurations to enumerate.
    pub budget: usize,
}

impl AptasParams {
    /// Grouping driven by `eps`; requires `0 < eps <= 1/10`.
    pub fn guarantee(eps: Rat) -> AptasParams {
        AptasParams {
            eps,
            k: None,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Explicit group count; `eps` only drives pruning and classification and
    /// may be anywhere in `(0, 1]`.
    pub fn with_k(eps: Rat, k: usize) -> AptasParams {
        AptasParams {
            eps,
            k: Some(k),
            budget: DEFAULT_BUDGET,
        }
    }

    /// Checks the domain and returns the group count.
    pub fn groups(&self) -> Result<usize> {
        if !self.eps.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        match self.k {
            Some(0) => Err(Error::InvalidParameter("k must be at least 1".into())),
            Some(k) => {
                if self.eps > Rat::one() {
                    return Err(Error::InvalidParameter(format!(
                        "eps must be at most 1, got {}",
                        self.eps
                    )));
                }
                Ok(k)
            }
            None => {
                if self.eps > Rat::new(1, 10) {
                    return Err(Error::InvalidParameter(format!(
                        "eps must be at most 1/10 without a k override, got {}",
                        self.eps
                    )));
                }
                let e2 = &self.eps * &self.eps;
                (&e2 * &e2).recip().ceil().to_usize().ok_or_else(|| {
                    Error::Refused(format!(
                        "1/eps^4 for eps = {} does not fit in memory",
                        self.eps
                    ))
                })
            }
        }
    }
}

/// A surviving bin type after normalization and merging of equal demands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeRef {
    /// Demand divided by the largest demand.
    pub demand: Rat,
    /// Original type index (the lowest among equal demands).
    pub bin: usize,
}

/// Normalized instance after oversize items are committed and small bin types
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prepared {
    /// The largest demand; all normalized values are relative to it.
    pub d1: Rat,
    /// Original index of the first type with demand `d1`.
    pub top: usize,
    /// Items of size at least `d1`, each placed alone on a copy of `top`.
    pub committed: Vec<usize>,
    /// Distinct surviving demands, strictly decreasing.
    pub types: Vec<TypeRef>,
    /// Original indices of every type with normalized demand above `eps`.
    pub surviving: Vec<usize>,
    /// Remaining items as `(original index, normalized size)`, by
    /// non-increasing size with ties by index.
    pub items: Vec<(usize, Rat)>,
}

impl Prepared {
    /// The original instance restricted to the surviving bin types, or `None`
    /// when no type survives.
    pub fn pruned_instance(&self, inst: &Instance) -> Option<Instance> {
        if self.surviving.is_empty() {
            return None;
        }
        let bins = self
            .surviving
            .iter()
            .map(|&i| inst.bin(i).clone())
            .collect();
        Instance::new(inst.supply(), inst.class(), bins, inst.items().to_vec()).ok()
    }
}

/// Normalizes by the largest demand, commits oversize items to the largest
/// type, and drops types with normalized demand at most `eps`.
pub fn prune_small_bins(inst: &Instance, eps: &Rat) -> Result<Prepared> {
    inst.require(
        Supply::Infinite,
        Some(ProblemClass::VariableSized),
        "the configuration LP scheme",
    )?;
    let demands: Vec<Rat> = inst.bins().iter().map(|b| b.demand.clone()).collect();
    let order = order_desc(&demands);
    let top = order[0];
    let d1 = demands[top].clone();

    let mut committed = Vec::new();
    let mut rest = Vec::new();
    for j in order_desc(inst.items()) {
        if *inst.size(j) >= d1 {
            committed.push(j);
        } else {
            rest.push((j, inst.size(j) / &d1));
        }
    }

    let mut types: Vec<TypeRef> = Vec::new();
    let mut surviving = Vec::new();
    for &i in &order {
        let demand = &demands[i] / &d1;
        if demand <= *eps {
            continue;
        }
        surviving.push(i);
        if types.last().map_or(true, |t| t.demand != demand) {
            types.push(TypeRef { demand, bin: i });
        }
    }
    surviving.sort_unstable();
    Ok(Prepared {
        d1,
        top,
        committed,
        types,
        surviving,
        items: rest,
    })
}

/// Large / medium / tiny split and the linear grouping of the large items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupedItems {
    pub large: Vec<usize>,
    pub medium: Vec<usize>,
    pub tiny: Vec<usize>,
    /// Non-empty groups of large items, each by non-increasing size.
    pub groups: Vec<Vec<usize>>,
    /// Rounded size per group: the smallest normalized size in it.
    pub rounded: Vec<Rat>,
    /// Total normalized size of the tiny items.
    pub tiny_volume: Rat,
}

impl GroupedItems {
    /// Number of items per group.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }
}

/// `L` takes the `⌈s/eps³⌉` largest items and `M` the next `⌊s/eps⌋`, unless
/// there are fewer than both together, in which case every item is large.
/// `L` is then cut into `k` groups whose sizes differ by at most one, larger
/// groups first.
pub fn classify_and_group(items: &[(usize, Rat)], eps: &Rat, k: usize) -> GroupedItems {
    let n = items.len();
    let s: Rat = items.iter().map(|(_, x)| x).sum();
    let e3 = eps * eps * eps;
    let large_count = (&s / &e3).ceil().to_usize().unwrap_or(usize::MAX);
    let medium_count = (&s / eps).floor().to_usize().unwrap_or(usize::MAX);
    let (l, m) = if n < large_count.saturating_add(medium_count) {
        (n, 0)
    } else {
        (large_count, medium_count)
    };
    let ids: Vec<usize> = items.iter().map(|(j, _)| *j).collect();
    let large = ids[..l].to_vec();
    let medium = ids[l..l + m].to_vec();
    let tiny = ids[l + m..].to_vec();
    let tiny_volume = items[l + m..].iter().map(|(_, x)| x).sum();

    let (p, q) = (l / k, l % k);
    let mut groups = Vec::new();
    let mut rounded = Vec::new();
    let mut start = 0;
    for g in 0..k {
        let len = if g < q { p + 1 } else { p };
        if len == 0 {
            break;
        }
        groups.push(large[start..start + len].to_vec());
        rounded.push(items[start + len - 1].1.clone());
        start += len;
    }
    GroupedItems {
        large,
        medium,
        tiny,
        groups,
        rounded,
        tiny_volume,
    }
}

/// Counts of rounded large items per group, with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub counts: Vec<usize>,
    /// Normalized total size `ℓ(i)`.
    pub total: Rat,
    /// Index into the surviving types of the largest demand it covers.
    pub covers: Option<usize>,
}

impl Configuration {
    /// Types it leaves uncovered, with remainder `d_j − ℓ(i) > 0`.
    pub fn remainders<'a>(
        &'a self,
        types: &'a [TypeRef],
    ) -> impl Iterator<Item = (usize, Rat)> + 'a {
        types
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.demand > self.total)
            .map(move |(j, t)| (j, &t.demand - &self.total))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

/// Every count vector with `u_g <= n(g)` and `ℓ(u) <= 2` (in units of the
/// largest demand), in lexicographic order.
pub fn enumerate_configurations(
    g: &GroupedItems,
    types: &[TypeRef],
    budget: usize,
) -> Result<Vec<Configuration>> {
    let limit = Rat::integer(2);
    let mult = g.multiplicities();
    let mut out = Vec::new();
    let mut counts = vec![0usize; mult.len()];
    fn walk(
        pos: usize,
        total: Rat,
        counts: &mut Vec<usize>,
        mult: &[usize],
        sizes: &[Rat],
        limit: &Rat,
        types: &[TypeRef],
        budget: usize,
        out: &mut Vec<Configuration>,
    ) -> Result<()> {
        if pos == mult.len() {
            if out.len() >= budget {
                return Err(Error::Refused(format!(
                    "more than {budget} configurations; raise the budget or lower k"
                )));
            }
            let covers = types.iter().position(|t| total >= t.demand);
            out.push(Configuration {
                counts: counts.clone(),
                total,
                covers,
            });
            return Ok(());
        }
        let mut t = total;
        for c in 0..=mult[pos] {
            if c > 0 {
                t = &t + &sizes[pos];
                if t > *limit {
                    break;
                }
            }
            counts[pos] = c;
            walk(
                pos + 1,
                t.clone(),
                counts,
                mult,
                sizes,
                limit,
                types,
                budget,
                out,
            )?;
        }
        counts[pos] = 0;
        Ok(())
    }
    walk(
        0,
        Rat::zero(),
        &mut counts,
        &mult,
        &g.rounded,
        &limit,
        types,
        budget,
        &mut out,
    )?;
    Ok(out)
}

/// The configuration LP with its variable layout.
#[derive(Debug, Clone)]
pub struct Lp2 {
    pub problem: LpProblem,
    /// `(configuration, variable)` for every covering configuration.
    pub y: Vec<(usize, usize)>,
    /// `(configuration, type, remainder, variable)` for every configuration
    /// and type it leaves uncovered.
    pub z: Vec<(usize, usize, Rat, usize)>,
}

/// Maximize covered demand subject to one multiplicity row per group and one
/// volume row for the tiny items. All variables are non-negative.
pub fn build_lp2(g: &GroupedItems, types: &[TypeRef], configs: &[Configuration]) -> Lp2 {
    let mut y = Vec::new();
    let mut z = Vec::new();
    let mut next = 0;
    for (i, c) in configs.iter().enumerate() {
        if c.covers.is_some() {
            y.push((i, next));
            next += 1;
        }
        for (j, r) in c.remainders(types) {
            z.push((i, j, r, next));
            next += 1;
        }
    }
    let mut problem = LpProblem::new(next);
    for &(i, v) in &y {
        let t = configs[i].covers.expect("covering configuration");
        problem.objective[v] = types[t].demand.clone();
    }
    for (_, j, _, v) in &z {
        problem.objective[*v] = types[*j].demand.clone();
    }
    for (grp, &n_g) in g.multiplicities().iter().enumerate() {
        let mut row = Vec::new();
        for &(i, v) in &y {
            push_count(&mut row, configs[i].counts[grp], v);
        }
        for (i, _, _, v) in &z {
            push_count(&mut row, configs[*i].counts[grp], *v);
        }
        problem.add_constraint(row, Sense::Le, Rat::from(n_g));
    }
    let volume = z.iter().map(|(_, _, r, v)| (*v, r.clone())).collect();
    problem.add_constraint(volume, Sense::Le, g.tiny_volume.clone());
    Lp2 { problem, y, z }
}

fn push_count(row: &mut Vec<(usize, Rat)>, count: usize, var: usize) {
    if count > 0 {
        row.push((var, Rat::from(count)));
    }
}

/// Floors the LP solution, places the original large items by group, and fills
/// the partially covered bins with the remaining items in size order.
pub fn round_and_fill(
    prep: &Prepared,
    g: &GroupedItems,
    configs: &[Configuration],
    lp: &Lp2,
    sol: &LpSolution,
    copies: &mut [usize],
) -> Result<Assignment> {
    let floor = |v: usize| sol.values[v].floor().to_usize().unwrap_or(0);
    let mut pools: Vec<std::collections::VecDeque<usize>> = g
        .groups
        .iter()
        .map(|grp| grp.iter().copied().collect())
        .collect();
    let mut take = |counts: &[usize], out: &mut Vec<usize>| -> Result<()> {
        for (grp, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                let j = pools[grp]
                    .pop_front()
                    .ok_or_else(|| Error::Internal(format!("group {grp} ran out of items")))?;
                out.push(j);
            }
        }
        Ok(())
    };
    let mut open = |bin: usize| {
        let copy = copies[bin];
        copies[bin] += 1;
        BinRef { bin, copy }
    };

    let mut a = Assignment::new();
    for &(i, v) in &lp.y {
        let t = configs[i].covers.expect("covering configuration");
        for _ in 0..floor(v) {
            let mut items = Vec::new();
            take(&configs[i].counts, &mut items)?;
            a.extend(open(prep.types[t].bin), items);
        }
    }
    // (remainder, type, items already placed)
    let mut partial: Vec<(Rat, usize, Vec<usize>)> = Vec::new();
    for (i, j, r, v) in &lp.z {
        for _ in 0..floor(*v) {
            let mut items = Vec::new();
            take(&configs[*i].counts, &mut items)?;
            partial.push((r.clone(), *j, items));
        }
    }
    partial.sort_by(|x, y| y.0.cmp(&x.0));

    let size: std::collections::HashMap<usize, &Rat> =
        prep.items.iter().map(|(j, s)| (*j, s)).collect();
    let mut pool: Vec<usize> = pools
        .into_iter()
        .flatten()
        .chain(g.medium.iter().copied())
        .collect();
    pool.extend(g.tiny.iter().copied());
    pool.sort_by(|x, y| size[y].cmp(size[x]).then(x.cmp(y)));
    let mut cursor = 0;
    for (rem, j, mut items) in partial {
        let mut fill = Rat::zero();
        while fill < rem {
            let Some(&item) = pool.get(cursor) else {
                return Err(Error::Internal(format!(
                    "ran out of items while filling a bin of type {} (remainder {rem})",
                    prep.types[j].bin
                )));
            };
            cursor += 1;
            fill += size[&item];
            items.push(item);
        }
        a.extend(open(prep.types[j].bin), items);
    }
    Ok(a)
}

/// Sizes and counts of every stage, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AptasStats {
    pub d1: Rat,
    pub committed: usize,
    pub surviving_types: usize,
    pub distinct_types: usize,
    pub large: usize,
    pub medium: usize,
    pub tiny: usize,
    pub k: usize,
    pub groups: usize,
    pub largest_group: usize,
    pub configurations: usize,
    pub lp_variables: usize,
    pub lp_rows: usize,
    pub fractional: usize,
    /// LP optimum in original units, excluding committed items.
    pub lp_objective: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AptasResult {
    pub assignment: Assignment,
    pub profit: Rat,
    /// Profit of the committed oversize items.
    pub committed_profit: Rat,
    pub stats: AptasStats,
    pub grouping: Option<GroupedItems>,
    pub lp: Option<LpSolution>,
}

/// Runs the whole scheme.
pub fn aptas_solve(inst: &Instance, params: &AptasParams) -> Result<AptasResult> {
    let k = params.groups()?;
    let prep = prune_small_bins(inst, &params.eps)?;
    let mut copies = vec![0usize; inst.m()];
    let mut a = Assignment::new();
    for &j in &prep.committed {
        let copy = copies[prep.top];
        copies[prep.top] += 1;
        a.push(
            BinRef {
                bin: prep.top,
                copy,
            },
            j,
        );
    }
    let committed_profit = &prep.d1 * &Rat::from(prep.committed.len());
    let mut stats = AptasStats {
        d1: prep.d1.clone(),
        committed: prep.committed.len(),
        surviving_types: prep.surviving.len(),
        distinct_types: prep.types.len(),
        large: 0,
        medium: 0,
        tiny: 0,
        k,
        groups: 0,
        largest_group: 0,
        configurations: 0,
        lp_variables: 0,
        lp_rows: 0,
        fractional: 0,
        lp_objective: Rat::zero(),
    };
    if prep.types.is_empty() {
        return Ok(AptasResult {
            profit: committed_profit.clone(),
            assignment: a,
            committed_profit,
            stats,
            grouping: None,
            lp: None,
        });
    }

    let g = classify_and_group(&prep.items, &params.eps, k);
    let configs = enumerate_configurations(&g, &prep.types, params.budget)?;
    let lp = build_lp2(&g, &prep.types, &configs);
    let sol = lp_solve(&lp.problem).map_err(|e| match e {
        Error::Infeasible | Error::Unbounded => Error::Internal(format!("configuration LP: {e}")),
        other => other,
    })?;
    let filled = round_and_fill(&prep, &g, &configs, &lp, &sol, &mut copies)?;
    for (b, items) in filled.iter() {
        a.extend(b, items.iter().copied());
    }
    a.retain_covered(inst);
    let profit = crate::instance::profit(inst, &a)?;

    stats.large = g.large.len();
    stats.medium = g.medium.len();
    stats.tiny = g.tiny.len();
    stats.groups = g.groups.len();
    stats.largest_group = g.groups.first().map_or(0, Vec::len);
    stats.configurations = configs.len();
    stats.lp_variables = lp.problem.num_vars();
    stats.lp_rows = lp.problem.constraints.len();
    stats.fractional = sol.fractional_count();
    stats.lp_objective = &sol.objective * &prep.d1;
    Ok(AptasResult {
        assignment: a,
        profit,
        committed_profit,
        stats,
        grouping: Some(g),
        lp: Some(sol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_opt_infinite, verify_certificate, OracleCaps};
    use crate::generate::{gen_random, RandomSpec};
    use crate::instance::{profit, validate};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn inf(demands: &[Rat], items: &[Rat]) -> Instance {
        Instance::variable(Supply::Infinite, demands.to_vec(), items.to_vec()).unwrap()
    }

    #[test]
    fn params_domain() {
        assert_eq!(AptasParams::guarantee(r(1, 10)).groups().unwrap(), 10_000);
        assert!(AptasParams::guarantee(r(1, 5)).groups().is_err());
        assert!(AptasParams::guarantee(Rat::zero()).groups().is_err());
        assert_eq!(AptasParams::with_k(r(1, 2), 3).groups().unwrap(), 3);
        assert!(AptasParams::with_k(r(1, 10), 0).groups().is_err());
        assert!(AptasParams::with_k(r(3, 2), 1).groups().is_err());
    }

    #[test]
    fn pruning_keeps_large_types() {
        let inst = inf(&[r(1, 1), r(1, 2), r(1, 20)], &[r(1, 3)]);
        let prep = prune_small_bins(&inst, &r(1, 10)).unwrap();
        assert_eq!(prep.surviving, vec![0, 1]);
        assert_eq!(
            prep.types,
            vec![
                TypeRef {
                    demand: r(1, 1),
                    bin: 0
                },
                TypeRef {
                    demand: r(1, 2),
                    bin: 1
                }
            ]
        );
    }

    #[test]
    fn pruning_commits_oversize_items() {
        let inst = inf(&[r(1, 1), r(1, 2)], &[r(3, 1), r(1, 2)]);
        let prep = prune_small_bins(&inst, &r(1, 10)).unwrap();
        assert_eq!(prep.committed, vec![0]);
        let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 10), 1)).unwrap();
        assert_eq!(res.committed_profit, r(1, 1));
        assert_eq!(res.profit, r(3, 2));
    }

    #[test]
    fn everything_pruned() {
        let inst = inf(&[r(1, 1)], &[r(2, 1), r(1, 2)]);
        let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 1), 1)).unwrap();
        assert!(prune_small_bins(&inst, &r(1, 1)).unwrap().types.is_empty());
        assert_eq!(res.profit, r(1, 1));
        assert_eq!(res.profit, res.committed_profit);
    }

    #[test]
    fn equal_demands_merge() {
        let inst = inf(&[r(1, 2), r(1, 1), r(1, 2)], &[]);
        let prep = prune_small_bins(&inst, &r(1, 10)).unwrap();
        assert_eq!(prep.types.len(), 2);
        assert_eq!(prep.types[1].bin, 0);
        assert_eq!(prep.surviving, vec![0, 1, 2]);
    }

    fn items(sizes: &[Rat]) -> Vec<(usize, Rat)> {
        sizes.iter().cloned().enumerate().collect()
    }

    #[test]
    fn grouping_sizes() {
        let sizes: Vec<Rat> = (0..7).map(|i| r(10 - i, 10)).collect();
        let g = classify_and_group(&items(&sizes), &r(1, 10), 3);
        assert_eq!(g.large.len(), 7);
        assert!(g.medium.is_empty() && g.tiny.is_empty());
        assert_eq!(g.multiplicities(), vec![3, 2, 2]);
        assert_eq!(g.rounded, vec![r(8, 10), r(6, 10), r(4, 10)]);
    }

    #[test]
    fn grouping_uniform_sizes_is_identity() {
        let g = classify_and_group(&items(&vec![r(1, 2); 5]), &r(1, 10), 2);
        assert_eq!(g.rounded, vec![r(1, 2), r(1, 2)]);
        assert_eq!(g.multiplicities(), vec![3, 2]);
    }

    #[test]
    fn grouping_splits_classes_when_many_items() {
        // s = 1, eps = 1/2: |L| = 8, |M| = 2, remaining tiny.
        let sizes = vec![r(1, 20); 20];
        let g = classify_and_group(&items(&sizes), &r(1, 2), 4);
        assert_eq!((g.large.len(), g.medium.len(), g.tiny.len()), (8, 2, 10));
        assert_eq!(g.tiny_volume, r(1, 2));
    }

    #[test]
    fn configurations_for_single_group() {
        let g = GroupedItems {
            large: vec![0, 1],
            medium: vec![],
            tiny: vec![],
            groups: vec![vec![0, 1]],
            rounded: vec![r(3, 5)],
            tiny_volume: r(2, 5),
        };
        let types = vec![TypeRef {
            demand: r(1, 1),
            bin: 0,
        }];
        let configs = enumerate_configurations(&g, &types, 100).unwrap();
        let totals: Vec<Rat> = configs.iter().map(|c| c.total.clone()).collect();
        assert_eq!(totals, vec![r(0, 1), r(3, 5), r(6, 5)]);
        assert_eq!(configs[0].covers, None);
        assert_eq!(configs[1].covers, None);
        assert_eq!(
            configs[1].remainders(&types).collect::<Vec<_>>(),
            vec![(0, r(2, 5))]
        );
        assert_eq!(configs[2].covers, Some(0));
        assert_eq!(configs[2].remainders(&types).count(), 0);

        let lp = build_lp2(&g, &types, &configs);
        assert_eq!(lp.problem.constraints.len(), 2);
        let sol = lp_solve(&lp.problem).unwrap();
        verify_certificate(&lp.problem, &sol).unwrap();
        // z on the one-item configuration plus half a two-item bin.
        assert_eq!(sol.objective, r(3, 2));
        assert!(enumerate_configurations(&g, &types, 2).is_err());
    }

    #[test]
    fn no_large_items_gives_zero_configuration() {
        let g = classify_and_group(&[], &r(1, 10), 3);
        let types = vec![TypeRef {
            demand: r(1, 1),
            bin: 0,
        }];
        let configs = enumerate_configurations(&g, &types, 10).unwrap();
        assert_eq!(configs.len(), 1);
        assert!(configs[0].is_empty());
        let lp = build_lp2(&g, &types, &configs);
        assert_eq!(lp_solve(&lp.problem).unwrap().objective, Rat::zero());
    }

    #[test]
    fn unit_items_cover_one_bin_each() {
        let inst = inf(&[r(1, 1)], &vec![r(1, 1); 3]);
        for k in 1..=3 {
            let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 10), k)).unwrap();
            assert_eq!(res.profit, r(3, 1));
        }
        let empty = inf(&[r(1, 1)], &[]);
        assert_eq!(
            aptas_solve(&empty, &AptasParams::with_k(r(1, 10), 2))
                .unwrap()
                .profit,
            Rat::zero()
        );
    }

    #[test]
    fn two_items_of_three_fifths() {
        let inst = inf(&[r(1, 1)], &[r(3, 5), r(3, 5)]);
        let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 10), 1)).unwrap();
        assert_eq!(res.profit, r(1, 1));
        assert_eq!(res.stats.fractional, 0);
    }

    #[test]
    fn rejects_wrong_model() {
        let unit = Instance::variable(Supply::Unit, vec![r(1, 1)], vec![]).unwrap();
        assert!(matches!(
            aptas_solve(&unit, &AptasParams::with_k(r(1, 10), 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn tiny_items_fill_partial_bins() {
        // Many small items so that M and T are non-empty.
        let mut sizes = vec![r(1, 2); 4];
        sizes.extend(vec![r(1, 100); 300]);
        let inst = inf(&[r(1, 1)], &sizes);
        let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 2), 2)).unwrap();
        assert!(res.stats.tiny > 0);
        assert!(validate(&inst, &res.assignment).is_empty());
        assert_eq!(profit(&inst, &res.assignment).unwrap(), res.profit);
        let bound = &res.stats.lp_objective - &Rat::from(res.stats.groups + 1);
        assert!(res.profit >= bound);
    }

    fn tiny(seed: u64, n: usize, m: usize) -> Instance {
        gen_random(&RandomSpec {
            n,
            m,
            supply: Supply::Infinite,
            class: ProblemClass::VariableSized,
            demand: (r(1, 8), r(2, 1)),
            size: (r(1, 8), r(3, 2)),
            profit: (r(0, 1), r(1, 1)),
            denominator: 8,
            seed,
        })
        .unwrap()
    }

    proptest! {
        #[test]
        fn structural_guarantees(seed in any::<u64>(), n in 0usize..=8, m in 1usize..=3, k in 1usize..=3) {
            let inst = tiny(seed, n, m);
            let res = aptas_solve(&inst, &AptasParams::with_k(r(1, 10), k)).unwrap();
            prop_assert!(validate(&inst, &res.assignment).is_empty());
            for (b, _) in res.assignment.iter() {
                prop_assert!(res.assignment.fill(&inst, b) >= inst.bin(b.bin).demand);
            }
            let d1 = &res.stats.d1;
            let floor = &res.committed_profit + &res.stats.lp_objective
                - d1 * &Rat::from(res.stats.groups + 1);
            prop_assert!(res.profit >= floor);
            prop_assert!(res.stats.fractional <= res.stats.groups + 1);
            let (opt, _) = exact_opt_infinite(&inst, &OracleCaps::default()).unwrap();
            prop_assert!(res.profit <= opt);
            if let Some(g) = &res.grouping {
                let prep = prune_small_bins(&inst, &r(1, 10)).unwrap();
                let size: std::collections::HashMap<usize, Rat> = prep.items.iter().cloned().collect();
                for (grp, ids) in g.groups.iter().enumerate() {
                    for j in ids {
                        prop_assert!(g.rounded[grp] <= size[j]);
                    }
                }
                for w in g.rounded.windows(2) {
                    prop_assert!(w[0] >= w[1]);
                }
                let sizes: Vec<usize> = g.multiplicities();
                prop_assert!(sizes.iter().max().unwrap_or(&0) - sizes.iter().min().unwrap_or(&0) <= 1);
            }
        }
    }
}

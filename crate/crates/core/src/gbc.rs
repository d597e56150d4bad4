//! The combinatorial 5-approximation for generalized bin covering with unit
//! supply.
//!
//! Two branches are compared. The first matches bins to single items that
//! cover them alone ([`crate::matching`]). The second solves the splittable
//! relaxation greedily ([`alg_star`]), reassembles split items
//! ([`merge_splits`]), moves items towards more efficient partially filled
//! bins ([`maximalize`]) and finally turns the result into a proper covering
//! ([`shift_round`]).

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Assignment, BinRef, BinType, Instance, ProblemClass, Supply};
use crate::matching::{singular_matching, Matching};
use crate::nfd::order_desc;
use crate::rat::Rat;

/// `amount` of item `item` placed on bin `bin`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    pub item: usize,
    pub bin: usize,
    pub amount: Rat,
}

/// A solution of the splittable problem, as the sequence of parts in the
/// order they were placed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FractionalAssignment {
    parts: Vec<Part>,
}

impl FractionalAssignment {
    pub fn from_parts(parts: Vec<Part>) -> FractionalAssignment {
        FractionalAssignment { parts }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// Total amount per bin.
    pub fn fills(&self, m: usize) -> Vec<Rat> {
        let mut fills = vec![Rat::zero(); m];
        for p in &self.parts {
            fills[p.bin] += &p.amount;
        }
        fills
    }

    /// Total amount per item.
    pub fn masses(&self, n: usize) -> Vec<Rat> {
        let mut masses = vec![Rat::zero(); n];
        for p in &self.parts {
            masses[p.item] += &p.amount;
        }
        masses
    }

    /// Checks indices, positivity, item capacities and admissibility.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFractional(msg));
        for (k, p) in self.parts.iter().enumerate() {
            if p.item >= inst.n() || p.bin >= inst.m() {
                return bad(format!(
                    "part {k} references item {} on bin {}",
                    p.item, p.bin
                ));
            }
            if !p.amount.is_positive() {
                return bad(format!("part {k} has non-positive amount {}", p.amount));
            }
            if inst.size(p.item) > &inst.bin(p.bin).demand {
                return bad(format!(
                    "item {} is not admissible to bin {}",
                    p.item, p.bin
                ));
            }
        }
        for (j, mass) in self.masses(inst.n()).iter().enumerate() {
            if mass > inst.size(j) {
                return bad(format!("item {j} is assigned {mass}, more than its size"));
            }
        }
        Ok(())
    }
}

/// Bins by non-increasing efficiency, ties by index.
fn efficiency_order(bins: &[BinType]) -> Vec<usize> {
    let eff: Vec<Rat> = bins.iter().map(BinType::efficiency).collect();
    order_desc(&eff)
}

/// Greedy optimum of the splittable relaxation.
///
/// Bins are served by non-increasing efficiency. Each takes the largest
/// admissible item with mass left, whole if it fits and otherwise exactly the
/// amount that completes the bin.
pub fn alg_star(inst: &Instance) -> Result<FractionalAssignment> {
    inst.require(Supply::Unit, None, "the splittable greedy")?;
    let n = inst.n();
    let item_order = order_desc(inst.items());
    let sizes: Vec<&Rat> = item_order.iter().map(|&j| inst.size(j)).collect();
    let mut used = vec![Rat::zero(); n];
    // next[p]: first position >= p whose item still has mass left.
    let mut next: Vec<usize> = (0..=n).collect();
    let mut parts = Vec::new();

    for bin in efficiency_order(inst.bins()) {
        let demand = &inst.bin(bin).demand;
        let start = sizes.partition_point(|s| *s > demand);
        let mut fill = Rat::zero();
        while fill < *demand {
            let pos = find(&mut next, start);
            if pos == n {
                break;
            }
            let item = item_order[pos];
            let rest = sizes[pos] - &used[pos];
            let room = demand - &fill;
            let amount = if rest <= room {
                next[pos] = pos + 1;
                rest
            } else {
                room
            };
            used[pos] += &amount;
            fill += &amount;
            parts.push(Part { item, bin, amount });
        }
    }
    Ok(FractionalAssignment { parts })
}

fn find(next: &mut [usize], p: usize) -> usize {
    let mut root = p;
    while next[root] != root {
        root = next[root];
    }
    let mut cur = p;
    while next[cur] != root {
        let up = next[cur];
        next[cur] = root;
        cur = up;
    }
    root
}

/// `Σ p_i · min(fill_i / d_i, 1)`.
pub fn modified_profit(inst: &Instance, f: &FractionalAssignment) -> Result<Rat> {
    f.validate(inst)?;
    Ok(capped_profit(inst, &f.fills(inst.m())))
}

fn capped_profit(inst: &Instance, fills: &[Rat]) -> Rat {
    fills
        .iter()
        .zip(inst.bins())
        .filter(|(f, _)| f.is_positive())
        .map(|(f, b)| {
            if *f >= b.demand {
                b.profit.clone()
            } else {
                &b.profit * f / &b.demand
            }
        })
        .sum()
}

/// Relaxed profit of an integral unit-supply assignment.
pub fn integral_modified_profit(inst: &Instance, a: &Assignment) -> Rat {
    let mut fills = vec![Rat::zero(); inst.m()];
    for (b, _) in a.iter() {
        fills[b.bin] = a.fill(inst, b);
    }
    capped_profit(inst, &fills)
}

/// An integral solution without split items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged(Assignment);

/// A merged solution in which no partially filled bin holds an item admissible
/// to a partially filled bin earlier in efficiency order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maximal(Assignment);

impl Merged {
    pub fn assignment(&self) -> &Assignment {
        &self.0
    }
}

impl Maximal {
    pub fn assignment(&self) -> &Assignment {
        &self.0
    }
}

/// Puts every split item back together on the bin of its first part.
///
/// Requires the shape produced by [`alg_star`]: the first part of a split item
/// is the last part placed on its bin and completes that bin exactly.
pub fn merge_splits(inst: &Instance, f: &FractionalAssignment) -> Result<Merged> {
    f.validate(inst)?;
    let parts = f.parts();
    let mut first: Vec<Option<usize>> = vec![None; inst.n()];
    let mut last_on_bin: Vec<Option<usize>> = vec![None; inst.m()];
    for (k, p) in parts.iter().enumerate() {
        first[p.item].get_or_insert(k);
        last_on_bin[p.bin] = Some(k);
    }
    let fills = f.fills(inst.m());

    let mut per_bin: Vec<Vec<usize>> = vec![Vec::new(); inst.m()];
    for (k, p) in parts.iter().enumerate() {
        if first[p.item] != Some(k) {
            continue;
        }
        if p.amount < *inst.size(p.item) {
            let fills_bin = last_on_bin[p.bin] == Some(k) && fills[p.bin] == inst.bin(p.bin).demand;
            if !fills_bin {
                return Err(Error::Contract(format!(
                    "item {} is split but its first part does not complete bin {}",
                    p.item, p.bin
                )));
            }
        }
        per_bin[p.bin].push(p.item);
    }
    Ok(Merged(Assignment::from_unit_bins(&per_bin)))
}

/// Fill of every bin of a unit-supply assignment.
fn unit_fills(inst: &Instance, a: &Assignment) -> Vec<Rat> {
    let mut fills = vec![Rat::zero(); inst.m()];
    for (b, _) in a.iter() {
        fills[b.bin] = a.fill(inst, b);
    }
    fills
}

/// Partially filled bins (`0 < fill < d`) in efficiency order.
fn partial_bins(inst: &Instance, fills: &[Rat]) -> Vec<usize> {
    efficiency_order(inst.bins())
        .into_iter()
        .filter(|&i| fills[i].is_positive() && fills[i] < inst.bin(i).demand)
        .collect()
}

/// Each partially filled bin, in efficiency order, pulls admissible items
/// (largest first) from the partially filled bins after it until covered.
pub fn maximalize(inst: &Instance, s: &Merged) -> Maximal {
    let fills = unit_fills(inst, &s.0);
    let order = partial_bins(inst, &fills);
    let mut items: Vec<Vec<usize>> = vec![Vec::new(); inst.m()];
    for (b, list) in s.0.iter() {
        items[b.bin] = list.to_vec();
    }
    let mut fill = fills;
    let mut owner = vec![usize::MAX; inst.n()];
    // Items on bins strictly after the current position, keyed for
    // "largest size, then lowest index".
    let mut later: BTreeSet<(Rat, Reverse<usize>)> = BTreeSet::new();
    for &b in order.iter().skip(1) {
        for &j in &items[b] {
            owner[j] = b;
            later.insert((inst.size(j).clone(), Reverse(j)));
        }
    }
    for (pos, &a) in order.iter().enumerate() {
        if pos > 0 {
            for &j in &items[a] {
                later.remove(&(inst.size(j).clone(), Reverse(j)));
            }
        }
        let demand = inst.bin(a).demand.clone();
        while fill[a] < demand {
            let Some(key) = later
                .range(..=(demand.clone(), Reverse(0)))
                .next_back()
                .cloned()
            else {
                break;
            };
            later.remove(&key);
            let j = key.1 .0;
            let from = owner[j];
            items[from].retain(|&x| x != j);
            fill[from] -= inst.size(j);
            items[a].push(j);
            fill[a] += inst.size(j);
        }
    }
    Maximal(Assignment::from_unit_bins(&items))
}

/// Whether no partially filled bin holds an item admissible to a partially
/// filled bin before it in efficiency order (ties by index).
pub fn is_maximal(inst: &Instance, a: &Assignment) -> bool {
    let order = partial_bins(inst, &unit_fills(inst, a));
    let mut smallest_after: Option<&Rat> = None;
    for &b in order.iter().rev() {
        if let Some(s) = smallest_after {
            if *s <= inst.bin(b).demand {
                return false;
            }
        }
        for &j in a.items_of(BinRef::unit(b)) {
            let s = inst.size(j);
            if smallest_after.map_or(true, |m| s < m) {
                smallest_after = Some(s);
            }
        }
    }
    true
}

/// Which candidate [`shift_round`] kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftChoice {
    /// No partially filled bin; the input was kept.
    Unchanged,
    /// Every item on the least efficient partially filled bin.
    AllOnLast,
    /// Each partially filled bin hands its items to the one before it.
    Shifted,
    /// Covered bins kept, partially filled bins pooled on the last one.
    Pooled,
}

/// Turns a maximal solution into a covering where every used bin is covered.
pub fn shift_round(inst: &Instance, s: &Maximal) -> (Assignment, ShiftChoice) {
    let a = &s.0;
    let fills = unit_fills(inst, a);
    let partial = partial_bins(inst, &fills);
    let Some(&last) = partial.last() else {
        let mut out = a.clone();
        out.retain_covered(inst);
        return (out, ShiftChoice::Unchanged);
    };

    let mut all_on_last = Assignment::new();
    all_on_last.extend(BinRef::unit(last), 0..inst.n());

    let mut shifted = Assignment::new();
    let mut pooled = Assignment::new();
    let mut pooled_items = Vec::new();
    let is_partial = |i: usize| fills[i].is_positive() && fills[i] < inst.bin(i).demand;
    for (b, items) in a.iter() {
        if !is_partial(b.bin) {
            shifted.extend(b, items.iter().copied());
            pooled.extend(b, items.iter().copied());
        }
    }
    for w in partial.windows(2) {
        shifted.extend(
            BinRef::unit(w[0]),
            a.items_of(BinRef::unit(w[1])).iter().copied(),
        );
    }
    for &b in &partial {
        pooled_items.extend_from_slice(a.items_of(BinRef::unit(b)));
    }
    pooled.extend(BinRef::unit(last), pooled_items);

    let candidates = [
        (all_on_last, ShiftChoice::AllOnLast),
        (shifted, ShiftChoice::Shifted),
        (pooled, ShiftChoice::Pooled),
    ];
    let mut best: Option<(Assignment, ShiftChoice, Rat)> = None;
    for (cand, choice) in candidates {
        let p = crate::instance::profit_unchecked(inst, &cand);
        if best.as_ref().map_or(true, |(_, _, q)| p > *q) {
            best = Some((cand, choice, p));
        }
    }
    let (mut out, choice, _) = best.expect("three candidates");
    out.retain_covered(inst);
    (out, choice)
}

/// Every stage of the relaxation branch, with bin indices of the full instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalBranch {
    /// Bins that the whole item set can cover; the branch only uses these.
    pub coverable_bins: Vec<usize>,
    pub raw: FractionalAssignment,
    pub raw_profit: Rat,
    #[serde(serialize_with = "crate::report::serialize_assignment")]
    pub merged: Assignment,
    pub merged_profit: Rat,
    #[serde(serialize_with = "crate::report::serialize_assignment")]
    pub maximal: Assignment,
    pub maximal_profit: Rat,
    pub shift: ShiftChoice,
    #[serde(serialize_with = "crate::report::serialize_assignment")]
    pub rounded: Assignment,
    pub rounded_profit: Rat,
}

impl FractionalBranch {
    /// `p*(raw) <= 2 p*(maximal)` and `p*(maximal) <= 2 p(rounded)`.
    pub fn chain_holds(&self) -> bool {
        let two = Rat::integer(2);
        self.raw_profit <= &two * &self.maximal_profit
            && self.maximal_profit <= &two * &self.rounded_profit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Matching,
    Fractional,
}

/// Result of [`gbc5`] with both branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gbc5Result {
    #[serde(serialize_with = "crate::report::serialize_assignment")]
    pub assignment: Assignment,
    pub profit: Rat,
    pub winner: Branch,
    pub matching: Matching,
    pub fractional: FractionalBranch,
}

/// Better of the singular matching and the rounded relaxation.
pub fn gbc5(inst: &Instance) -> Result<Gbc5Result> {
    inst.require(Supply::Unit, None, "the 5-approximation")?;
    let matching = singular_matching(inst);
    let fractional = fractional_branch(inst)?;
    let (assignment, profit, winner) = if fractional.rounded_profit > matching.weight {
        (
            fractional.rounded.clone(),
            fractional.rounded_profit.clone(),
            Branch::Fractional,
        )
    } else {
        (
            matching.to_assignment(),
            matching.weight.clone(),
            Branch::Matching,
        )
    };
    Ok(Gbc5Result {
        assignment,
        profit,
        winner,
        matching,
        fractional,
    })
}

fn fractional_branch(inst: &Instance) -> Result<FractionalBranch> {
    let total = inst.total_size();
    let coverable: Vec<usize> = (0..inst.m())
        .filter(|&i| inst.bin(i).demand <= total)
        .collect();
    if coverable.is_empty() {
        let empty = Assignment::new();
        return Ok(FractionalBranch {
            coverable_bins: coverable,
            raw: FractionalAssignment::default(),
            raw_profit: Rat::zero(),
            merged: empty.clone(),
            merged_profit: Rat::zero(),
            maximal: empty.clone(),
            maximal_profit: Rat::zero(),
            shift: ShiftChoice::Unchanged,
            rounded: empty,
            rounded_profit: Rat::zero(),
        });
    }
    let bins = coverable.iter().map(|&i| inst.bin(i).clone()).collect();
    let sub = Instance::new(
        Supply::Unit,
        ProblemClass::Generalized,
        bins,
        inst.items().to_vec(),
    )?;

    let raw = alg_star(&sub)?;
    let raw_profit = modified_profit(&sub, &raw)?;
    let merged = merge_splits(&sub, &raw)?;
    let merged_profit = integral_modified_profit(&sub, merged.assignment());
    let maximal = maximalize(&sub, &merged);
    if !is_maximal(&sub, maximal.assignment()) {
        return Err(Error::Internal(
            "maximalization left an admissible item behind".into(),
        ));
    }
    let maximal_profit = integral_modified_profit(&sub, maximal.assignment());
    let (rounded, shift) = shift_round(&sub, &maximal);
    let rounded_profit = crate::instance::profit_unchecked(&sub, &rounded);

    let lift = |a: &Assignment| {
        let mut out = Assignment::new();
        for (b, items) in a.iter() {
            out.extend(BinRef::unit(coverable[b.bin]), items.iter().copied());
        }
        out
    };
    let raw = FractionalAssignment::from_parts(
        raw.parts
            .into_iter()
            .map(|p| Part {
                bin: coverable[p.bin],
                ..p
            })
            .collect(),
    );
    Ok(FractionalBranch {
        raw,
        raw_profit,
        merged: lift(merged.assignment()),
        merged_profit,
        maximal: lift(maximal.assignment()),
        maximal_profit,
        shift,
        rounded: lift(&rounded),
        rounded_profit,
        coverable_bins: coverable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{build_lp1, exact_opt_unit, lp_solve, OracleCaps};
    use crate::generate::{gen_example1, gen_random, RandomSpec};
    use crate::instance::{profit, validate};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn gen(bins: &[(Rat, Rat)], items: &[Rat]) -> Instance {
        Instance::generalized(Supply::Unit, bins.to_vec(), items.to_vec()).unwrap()
    }

    fn two_bins() -> Instance {
        gen(
            &[(r(10, 1), r(5, 1)), (r(4, 1), r(4, 1))],
            &[r(3, 1), r(3, 1)],
        )
    }

    #[test]
    fn alg_star_two_bins() {
        let inst = two_bins();
        let f = alg_star(&inst).unwrap();
        assert_eq!(
            f.parts(),
            &[
                Part {
                    item: 0,
                    bin: 0,
                    amount: r(3, 1)
                },
                Part {
                    item: 1,
                    bin: 0,
                    amount: r(2, 1)
                },
                Part {
                    item: 1,
                    bin: 1,
                    amount: r(1, 1)
                },
            ]
        );
        assert_eq!(modified_profit(&inst, &f).unwrap(), r(11, 1));
    }

    #[test]
    fn alg_star_without_admissible_items() {
        let inst = gen(&[(r(1, 1), r(1, 1))], &[r(2, 1)]);
        let f = alg_star(&inst).unwrap();
        assert!(f.parts().is_empty());
        assert_eq!(modified_profit(&inst, &f).unwrap(), Rat::zero());
        let inst = gen(
            &[(r(1, 1), r(1, 1)), (r(3, 1), r(1, 2))],
            &[r(3, 1), r(5, 2)],
        );
        assert!(alg_star(&inst).unwrap().parts().is_empty());
    }

    #[test]
    fn modified_profit_caps_at_full() {
        let inst = gen(&[(r(1, 1), r(1, 1))], &[r(1, 1), r(1, 1)]);
        assert_eq!(
            modified_profit(&inst, &FractionalAssignment::default()).unwrap(),
            Rat::zero()
        );
        let f = FractionalAssignment::from_parts(vec![
            Part {
                item: 0,
                bin: 0,
                amount: r(1, 1),
            },
            Part {
                item: 1,
                bin: 0,
                amount: r(1, 1),
            },
        ]);
        assert_eq!(modified_profit(&inst, &f).unwrap(), r(1, 1));
    }

    #[test]
    fn modified_profit_rejects_invalid() {
        let inst = gen(&[(r(1, 1), r(1, 1))], &[r(1, 2), r(2, 1)]);
        let over = FractionalAssignment::from_parts(vec![Part {
            item: 0,
            bin: 0,
            amount: r(1, 1),
        }]);
        assert!(matches!(
            modified_profit(&inst, &over),
            Err(Error::InvalidFractional(_))
        ));
        let inadmissible = FractionalAssignment::from_parts(vec![Part {
            item: 1,
            bin: 0,
            amount: r(1, 2),
        }]);
        assert!(matches!(
            modified_profit(&inst, &inadmissible),
            Err(Error::InvalidFractional(_))
        ));
    }

    #[test]
    fn merge_reassembles_on_first_bin() {
        let inst = two_bins();
        let merged = merge_splits(&inst, &alg_star(&inst).unwrap()).unwrap();
        assert_eq!(merged.assignment().items_of(BinRef::unit(0)), &[0, 1]);
        assert!(merged.assignment().items_of(BinRef::unit(1)).is_empty());
        assert_eq!(merged.assignment().fill(&inst, BinRef::unit(0)), r(6, 1));
    }

    #[test]
    fn merge_without_splits_is_identity() {
        let inst = gen(&[(r(1, 1), r(2, 1))], &[r(1, 1), r(1, 2)]);
        let f = alg_star(&inst).unwrap();
        let merged = merge_splits(&inst, &f).unwrap();
        assert_eq!(
            merged.assignment(),
            &Assignment::from_unit_bins(&[vec![0, 1]])
        );
    }

    #[test]
    fn merge_rejects_foreign_shapes() {
        let inst = gen(&[(r(1, 1), r(2, 1)), (r(1, 1), r(2, 1))], &[r(2, 1)]);
        // First part does not complete its bin.
        let f = FractionalAssignment::from_parts(vec![
            Part {
                item: 0,
                bin: 0,
                amount: r(1, 1),
            },
            Part {
                item: 0,
                bin: 1,
                amount: r(1, 1),
            },
        ]);
        assert!(matches!(merge_splits(&inst, &f), Err(Error::Contract(_))));
    }

    #[test]
    fn maximalize_pulls_into_efficient_bin() {
        // Bin 0 (e = 1) holds 3; bin 1 (e = 1/2) holds 1 and 1.
        let inst = gen(
            &[(r(4, 1), r(4, 1)), (r(1, 1), r(2, 1))],
            &[r(3, 1), r(1, 1), r(3, 2)],
        );
        let merged = Merged(Assignment::from_unit_bins(&[vec![0], vec![1]]));
        let out = maximalize(&inst, &merged);
        assert_eq!(out.assignment().items_of(BinRef::unit(0)), &[0, 1]);
        assert!(is_maximal(&inst, out.assignment()));
        assert!(!is_maximal(&inst, merged.assignment()));
    }

    #[test]
    fn maximalize_identity_cases() {
        let inst = gen(
            &[(r(4, 1), r(4, 1)), (r(1, 1), r(2, 1))],
            &[r(4, 1), r(1, 1)],
        );
        let covered = Merged(Assignment::from_unit_bins(&[vec![0]]));
        assert_eq!(
            maximalize(&inst, &covered).assignment(),
            covered.assignment()
        );
        let single = Merged(Assignment::from_unit_bins(&[vec![], vec![1]]));
        assert_eq!(maximalize(&inst, &single).assignment(), single.assignment());
    }

    #[test]
    fn shift_round_cases() {
        let inst = gen(&[(r(2, 1), r(1, 1))], &[r(1, 1)]);
        let (out, choice) = shift_round(&inst, &Maximal(Assignment::from_unit_bins(&[vec![0]])));
        assert_eq!(choice, ShiftChoice::Unchanged);
        assert_eq!(profit(&inst, &out).unwrap(), r(2, 1));

        // One partial bin: everything lands on it.
        let inst = gen(&[(r(2, 1), r(2, 1))], &[r(1, 1), r(1, 1)]);
        let (out, choice) = shift_round(&inst, &Maximal(Assignment::from_unit_bins(&[vec![0]])));
        assert_eq!(choice, ShiftChoice::AllOnLast);
        assert_eq!(profit(&inst, &out).unwrap(), r(2, 1));

        // Three partial bins in efficiency order; each item covers the bin before.
        let inst = gen(
            &[(r(9, 1), r(1, 1)), (r(8, 1), r(2, 1)), (r(3, 1), r(3, 1))],
            &[r(1, 2), r(3, 2), r(5, 2)],
        );
        let maximal = Maximal(Assignment::from_unit_bins(&[vec![0], vec![1], vec![2]]));
        assert!(is_maximal(&inst, maximal.assignment()));
        let (out, choice) = shift_round(&inst, &maximal);
        assert_eq!(choice, ShiftChoice::Shifted);
        assert_eq!(profit(&inst, &out).unwrap(), r(17, 1));
        for (b, _) in out.iter() {
            assert!(out.fill(&inst, b) >= inst.bin(b.bin).demand);
        }
    }

    #[test]
    fn gbc5_examples() {
        let inst = gen(&[(r(10, 1), r(1, 1))], &[r(2, 1)]);
        let res = gbc5(&inst).unwrap();
        assert_eq!(res.profit, r(10, 1));
        assert_eq!(res.winner, Branch::Matching);

        let inst = gen(&[(r(10, 1), r(5, 1))], &[r(3, 1), r(3, 1)]);
        let res = gbc5(&inst).unwrap();
        assert_eq!(res.profit, r(10, 1));
        assert_eq!(res.winner, Branch::Fractional);
        assert_eq!(res.matching.weight, Rat::zero());

        let inst = gen_example1(&r(1, 10)).unwrap();
        let res = gbc5(&inst).unwrap();
        assert!(res.profit >= r(42, 25));
        assert_eq!(profit(&inst, &res.assignment).unwrap(), res.profit);
        assert!(res.fractional.chain_holds());
    }

    #[test]
    fn uncoverable_bin_is_left_out() {
        let inst = gen(&[(r(1, 1), r(1, 1))], &[r(3, 5)]);
        let res = gbc5(&inst).unwrap();
        assert!(res.fractional.coverable_bins.is_empty());
        assert_eq!(res.profit, Rat::zero());
        assert!(res.fractional.chain_holds());
    }

    fn spec(seed: u64, n: usize, m: usize) -> RandomSpec {
        RandomSpec {
            n,
            m,
            supply: Supply::Unit,
            class: ProblemClass::Generalized,
            demand: (r(1, 4), r(3, 1)),
            size: (r(1, 4), r(2, 1)),
            profit: (r(0, 1), r(4, 1)),
            denominator: 4,
            seed,
        }
    }

    proptest! {
        #[test]
        fn alg_star_matches_lp(seed in any::<u64>(), n in 0usize..=6, m in 1usize..=6) {
            let inst = gen_random(&spec(seed, n, m)).unwrap();
            let f = alg_star(&inst).unwrap();
            let lp = lp_solve(&build_lp1(&inst).problem).unwrap();
            prop_assert_eq!(modified_profit(&inst, &f).unwrap(), lp.objective);
        }

        #[test]
        fn alg_star_splits_only_when_filling(seed in any::<u64>(), n in 0usize..=8, m in 1usize..=6) {
            let inst = gen_random(&spec(seed, n, m)).unwrap();
            let f = alg_star(&inst).unwrap();
            let fills = f.fills(inst.m());
            for (i, fill) in fills.iter().enumerate() {
                prop_assert!(*fill <= inst.bin(i).demand);
            }
            prop_assert!(merge_splits(&inst, &f).is_ok());
        }

        #[test]
        fn gbc5_stages_hold(seed in any::<u64>(), n in 0usize..=7, m in 1usize..=5) {
            let inst = gen_random(&spec(seed, n, m)).unwrap();
            let res = gbc5(&inst).unwrap();
            prop_assert!(validate(&inst, &res.assignment).is_empty());
            prop_assert_eq!(profit(&inst, &res.assignment).unwrap(), res.profit.clone());
            prop_assert!(res.fractional.chain_holds());
            for (b, _) in res.assignment.iter() {
                prop_assert!(res.assignment.fill(&inst, b) >= inst.bin(b.bin).demand);
            }
            for (b, _) in res.fractional.merged.iter() {
                let fill = res.fractional.merged.fill(&inst, b);
                prop_assert!(fill < Rat::integer(2) * &inst.bin(b.bin).demand);
            }
            let (opt, _) = exact_opt_unit(&inst, &OracleCaps::default()).unwrap();
            prop_assert!(opt <= Rat::integer(5) * &res.profit);
        }
    }
}

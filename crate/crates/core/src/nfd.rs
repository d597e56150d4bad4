//! Next Fit Decreasing for variable-sized bin covering with unit supply.
//!
//! Bins are visited by non-increasing demand, items are consumed by
//! non-increasing size. A bin is skipped when everything that is left cannot
//! cover it; otherwise it receives the shortest prefix of the remaining items
//! that covers it. Ties are broken by original index, so the result is unique.

use serde::Serialize;

use crate::error::Result;
use crate::instance::{Assignment, BinRef, Instance, ProblemClass, Supply};
use crate::rat::Rat;

/// What happened to one bin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinOutcome {
    /// Received the items at positions `start..end` of [`NfdTrace::item_order`].
    Covered {
        start: usize,
        end: usize,
    },
    Skipped,
}

/// Full record of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NfdTrace {
    /// Original bin indices, by non-increasing demand.
    pub bin_order: Vec<usize>,
    /// Original item indices, by non-increasing size.
    pub item_order: Vec<usize>,
    /// One entry per position of `bin_order`.
    pub outcomes: Vec<BinOutcome>,
    /// Position in `item_order` of the first item left unassigned.
    pub next_item: usize,
}

impl NfdTrace {
    /// Fill of each bin, in processing order.
    pub fn fills(&self, inst: &Instance) -> Vec<Rat> {
        self.outcomes
            .iter()
            .map(|o| match *o {
                BinOutcome::Covered { start, end } => self.item_order[start..end]
                    .iter()
                    .map(|&j| inst.size(j))
                    .sum(),
                BinOutcome::Skipped => Rat::zero(),
            })
            .collect()
    }

    /// Demands in processing order.
    pub fn demands(&self, inst: &Instance) -> Vec<Rat> {
        self.bin_order
            .iter()
            .map(|&i| inst.bin(i).demand.clone())
            .collect()
    }
}

/// Indices `0..len` sorted by `key` descending, ties by index.
pub(crate) fn order_desc(values: &[Rat]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    idx
}

/// Runs Next Fit Decreasing. Needs a variable-sized unit-supply instance.
pub fn nfd(inst: &Instance) -> Result<(Assignment, NfdTrace)> {
    inst.require(
        Supply::Unit,
        Some(ProblemClass::VariableSized),
        "next fit decreasing",
    )?;
    let demands: Vec<Rat> = inst.bins().iter().map(|b| b.demand.clone()).collect();
    let bin_order = order_desc(&demands);
    let item_order = order_desc(inst.items());

    let mut remaining = inst.total_size();
    let mut outcomes = Vec::with_capacity(inst.m());
    let mut assignment = Assignment::new();
    let mut j = 0;
    for &bin in &bin_order {
        let demand = &demands[bin];
        if j >= item_order.len() || remaining < *demand {
            outcomes.push(BinOutcome::Skipped);
            continue;
        }
        let start = j;
        let mut fill = Rat::zero();
        while fill < *demand {
            fill += inst.size(item_order[j]);
            j += 1;
        }
        remaining -= &fill;
        assignment.extend(BinRef::unit(bin), item_order[start..j].iter().copied());
        outcomes.push(BinOutcome::Covered { start, end: j });
    }
    Ok((
        assignment,
        NfdTrace {
            bin_order,
            item_order,
            outcomes,
            next_item: j,
        },
    ))
}

/// Counts of the structural quantities used in the analysis of the 9/4 bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Number of well-covered bins.
    pub well_covered: usize,
    /// Original index of the head bin, when a filled bin is not well-covered
    /// and the head set is non-empty.
    pub head: Option<usize>,
}

/// A filled bin is well-covered when a later empty bin exists and no bin up to
/// that empty bin holds more than twice its demand.
///
/// The head is the last bin holding more than twice its demand, at or before
/// the end of the filled run that contains the first filled bin which is not
/// well-covered.
pub fn well_covered_census(inst: &Instance, trace: &NfdTrace) -> Census {
    let fills = trace.fills(inst);
    let demands = trace.demands(inst);
    let m = fills.len();
    let over: Vec<bool> = (0..m)
        .map(|q| fills[q] > &demands[q] + &demands[q])
        .collect();
    let empty = |q: usize| q >= m || fills[q].is_zero();

    // first_over[q]: whether some bin in 0..=q is over twice its demand.
    let mut first_over = vec![false; m];
    let mut seen = false;
    for q in 0..m {
        seen |= over[q];
        first_over[q] = seen;
    }
    // next_empty[q]: smallest r > q with an empty bin, if any.
    let mut next_empty = vec![None; m];
    let mut nxt = None;
    for q in (0..m).rev() {
        next_empty[q] = nxt;
        if fills[q].is_zero() {
            nxt = Some(q);
        }
    }

    let is_well = |p: usize| -> bool {
        !fills[p].is_zero() && matches!(next_empty[p], Some(e) if !first_over[e])
    };
    let well_covered = (0..m).filter(|&p| is_well(p)).count();

    let head = (0..m)
        .find(|&p| !fills[p].is_zero() && !is_well(p))
        .and_then(|i0| {
            let mut i1 = i0;
            while !empty(i1 + 1) {
                i1 += 1;
            }
            (0..=i1).rev().find(|&q| over[q])
        })
        .map(|pos| trace.bin_order[pos]);

    Census { well_covered, head }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_example1;
    use crate::instance::profit;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn vs(demands: &[Rat], items: &[Rat]) -> Instance {
        Instance::variable(Supply::Unit, demands.to_vec(), items.to_vec()).unwrap()
    }

    fn nfd_profit(inst: &Instance) -> Rat {
        let (a, _) = nfd(inst).unwrap();
        profit(inst, &a).unwrap()
    }

    #[test]
    fn example1_earns_four() {
        let inst = gen_example1(&r(1, 10)).unwrap();
        let (a, trace) = nfd(&inst).unwrap();
        assert_eq!(profit(&inst, &a).unwrap(), r(4, 1));
        assert_eq!(trace.outcomes[0], BinOutcome::Covered { start: 0, end: 3 });
        assert!(trace.outcomes[1..]
            .iter()
            .all(|o| *o == BinOutcome::Skipped));
        assert_eq!(trace.next_item, 3);
        assert_eq!(trace.fills(&inst)[0], r(57, 10));
    }

    #[test]
    fn single_exact_bin() {
        assert_eq!(nfd_profit(&vs(&[r(1, 1)], &[r(1, 1)])), r(1, 1));
    }

    #[test]
    fn large_bin_takes_both_items() {
        let inst = vs(&[r(5, 1), r(3, 1)], &[r(3, 1), r(3, 1)]);
        let (a, trace) = nfd(&inst).unwrap();
        assert_eq!(profit(&inst, &a).unwrap(), r(5, 1));
        assert_eq!(trace.outcomes[1], BinOutcome::Skipped);
    }

    #[test]
    fn ties_follow_input_order() {
        let inst = vs(&[r(1, 1), r(1, 1)], &[r(1, 1), r(1, 1)]);
        let (a, trace) = nfd(&inst).unwrap();
        assert_eq!(trace.bin_order, vec![0, 1]);
        assert_eq!(a.items_of(BinRef::unit(0)), &[0]);
        assert_eq!(a.items_of(BinRef::unit(1)), &[1]);
    }

    #[test]
    fn empty_items_skip_everything() {
        let inst = vs(&[r(1, 1), r(2, 1)], &[]);
        let (a, trace) = nfd(&inst).unwrap();
        assert!(a.is_empty());
        assert_eq!(
            trace.outcomes,
            vec![BinOutcome::Skipped, BinOutcome::Skipped]
        );
    }

    #[test]
    fn rejects_wrong_model() {
        let gen = Instance::generalized(Supply::Unit, vec![(r(1, 1), r(2, 1))], vec![]).unwrap();
        assert!(nfd(&gen).is_err());
        let inf = Instance::variable(Supply::Infinite, vec![r(1, 1)], vec![]).unwrap();
        assert!(nfd(&inf).is_err());
    }

    #[test]
    fn census_example1() {
        let inst = gen_example1(&r(1, 10)).unwrap();
        let (_, trace) = nfd(&inst).unwrap();
        assert_eq!(
            well_covered_census(&inst, &trace),
            Census {
                well_covered: 1,
                head: None
            }
        );
    }

    #[test]
    fn census_single_overfilled_bin() {
        let inst = vs(&[r(1, 1), r(1, 1)], &[r(3, 1)]);
        let (_, trace) = nfd(&inst).unwrap();
        assert_eq!(
            well_covered_census(&inst, &trace),
            Census {
                well_covered: 0,
                head: Some(0)
            }
        );
    }

    #[test]
    fn census_without_covered_bins() {
        let inst = vs(&[r(5, 1)], &[r(1, 1)]);
        let (_, trace) = nfd(&inst).unwrap();
        assert_eq!(
            well_covered_census(&inst, &trace),
            Census {
                well_covered: 0,
                head: None
            }
        );
    }

    #[test]
    fn census_head_after_well_covered_run() {
        // bin 4 <- {4}, bin 3 <- {1, 1, 1}, bin 2 skipped: two well-covered bins.
        let inst = vs(
            &[r(4, 1), r(3, 1), r(2, 1)],
            &[r(4, 1), r(1, 1), r(1, 1), r(1, 1)],
        );
        let (_, trace) = nfd(&inst).unwrap();
        assert_eq!(
            well_covered_census(&inst, &trace),
            Census {
                well_covered: 2,
                head: None
            }
        );
        // bin 3 <- {3}, bin 1 <- {5/2} (over twice its demand), the rest skipped.
        let inst = vs(
            &[r(3, 1), r(1, 1), r(1, 2), r(1, 4)],
            &[r(3, 1), r(5, 2), r(1, 8)],
        );
        let (_, trace) = nfd(&inst).unwrap();
        assert_eq!(
            well_covered_census(&inst, &trace),
            Census {
                well_covered: 0,
                head: Some(1)
            }
        );
    }
}

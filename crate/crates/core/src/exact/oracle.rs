//! Exhaustive optimum over all assignments, by dynamic programming on item
//! subsets.
//!
//! For bins taken in a fixed order, `f_i(mask)` is the best profit bins
//! `i..` can earn from the items in `mask`; bin `i` either stays empty or takes
//! a covering submask. Total work is `O(bins · 3^n)`.

use std::ops::Add;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::instance::{Assignment, BinRef, Instance, Supply};
use crate::rat::{common_denominator, Rat};

/// Hard limit on items regardless of configuration; masks are `u32` and the
/// tables have `2^n` entries per bin.
pub const MAX_ITEMS_HARD: usize = 24;

/// Size limits for the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_items: usize,
    pub max_bins: usize,
}

impl Default for OracleCaps {
    fn default() -> OracleCaps {
        OracleCaps {
            max_items: 10,
            max_bins: 6,
        }
    }
}

impl OracleCaps {
    /// Reads `"N"` (items only) or `"N,M"` (items and bins).
    pub fn parse(text: &str) -> Result<OracleCaps> {
        let bad = || Error::InvalidParameter(format!("oracle cap `{text}` is not `N` or `N,M`"));
        let mut caps = OracleCaps::default();
        let mut parts = text.split(',').map(str::trim);
        caps.max_items = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        if let Some(m) = parts.next() {
            caps.max_bins = m.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(caps)
    }

    fn check(&self, n: usize, m: usize) -> Result<()> {
        if n > self.max_items || n > MAX_ITEMS_HARD {
            return Err(Error::Refused(format!(
                "exact oracle needs n <= {}, got n = {n}; raise the item cap to at least {n}",
                self.max_items.min(MAX_ITEMS_HARD)
            )));
        }
        if m > self.max_bins {
            return Err(Error::Refused(format!(
                "exact oracle needs m <= {}, got m = {m}; raise the bin cap to at least {m}",
                self.max_bins
            )));
        }
        Ok(())
    }
}

/// A concrete bin the search may fill.
struct Slot {
    at: BinRef,
    type_index: usize,
}

/// Optimal profit and one optimal assignment of a unit-supply instance.
pub fn exact_opt_unit(inst: &Instance, caps: &OracleCaps) -> Result<(Rat, Assignment)> {
    inst.require(Supply::Unit, None, "the unit-supply oracle")?;
    caps.check(inst.n(), inst.m())?;
    let slots = (0..inst.m())
        .map(|i| Slot {
            at: BinRef::unit(i),
            type_index: i,
        })
        .collect();
    Ok(search(inst, slots))
}

/// Optimal profit and assignment of an infinite-supply instance, with each
/// type expanded to `n` copies.
pub fn exact_opt_infinite(inst: &Instance, caps: &OracleCaps) -> Result<(Rat, Assignment)> {
    exact_opt_infinite_with_copies(inst, caps, inst.n())
}

/// As [`exact_opt_infinite`] with an explicit number of copies per type.
pub fn exact_opt_infinite_with_copies(
    inst: &Instance,
    caps: &OracleCaps,
    copies: usize,
) -> Result<(Rat, Assignment)> {
    inst.require(Supply::Infinite, None, "the infinite-supply oracle")?;
    caps.check(inst.n(), inst.m())?;
    // No more than s(J) / d_i copies of type i can be covered at once.
    let total = inst.total_size();
    let useful = |i: usize| {
        let fit = (&total / &inst.bin(i).demand)
            .floor()
            .to_usize()
            .unwrap_or(usize::MAX);
        copies.min(fit)
    };
    let slots = (0..inst.m())
        .flat_map(|i| {
            (0..useful(i)).map(move |copy| Slot {
                at: BinRef { bin: i, copy },
                type_index: i,
            })
        })
        .collect();
    Ok(search(inst, slots))
}

fn search(inst: &Instance, slots: Vec<Slot>) -> (Rat, Assignment) {
    let n = inst.n();
    let full = (1usize << n) - 1;
    let sums = subset_sums(inst.items());
    let total = &sums[full];
    // Bins that cannot be covered or earn nothing never matter.
    let slots: Vec<Slot> = slots
        .into_iter()
        .filter(|s| {
            let b = inst.bin(s.type_index);
            b.profit.is_positive() && b.demand <= *total
        })
        .collect();

    let profits: Vec<&Rat> = slots
        .iter()
        .map(|s| &inst.bin(s.type_index).profit)
        .collect();
    let choices = match scaled_profits(&profits) {
        Some(scaled) => run(inst, &slots, &sums, &scaled, 0i128),
        None => {
            let owned: Vec<Rat> = profits.into_iter().cloned().collect();
            run(inst, &slots, &sums, &owned, Rat::zero())
        }
    };

    let mut assignment = Assignment::new();
    let mut value = Rat::zero();
    let mut mask = full;
    for (s, choice) in slots.iter().zip(&choices) {
        let t = choice[mask] as usize;
        if t != 0 {
            assignment.extend(s.at, (0..n).filter(|&j| t & (1 << j) != 0));
            value += &inst.bin(s.type_index).profit;
            mask &= !t;
        }
    }
    (value, assignment)
}

/// Sum of sizes for every item subset.
fn subset_sums(items: &[Rat]) -> Vec<Rat> {
    let mut sums = vec![Rat::zero(); 1 << items.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] + &items[low];
    }
    sums
}

/// Profits as integers over a common denominator, when they fit comfortably.
fn scaled_profits(profits: &[&Rat]) -> Option<Vec<i128>> {
    let den = common_denominator(profits.iter().copied());
    let mut out = Vec::with_capacity(profits.len());
    let mut total: i128 = 0;
    for p in profits {
        let v = (p.numer() * (&den / p.denom())).to_i64()? as i128;
        total = total.checked_add(v)?;
        out.push(v);
    }
    (total < i128::MAX / 4).then_some(out)
}

/// Backward DP over slots. Returns, per slot and remaining-item mask, the
/// submask placed on that slot in an optimal completion (0 = empty).
fn run<V>(inst: &Instance, slots: &[Slot], sums: &[Rat], profits: &[V], zero: V) -> Vec<Vec<u32>>
where
    V: Clone + Ord + Add<Output = V>,
{
    let size = sums.len();
    let mut best = vec![zero; size];
    let mut choices = vec![Vec::new(); slots.len()];
    for (k, slot) in slots.iter().enumerate().rev() {
        let demand = &inst.bin(slot.type_index).demand;
        let covers: Vec<bool> = sums.iter().map(|s| s >= demand).collect();
        let mut next = best.clone();
        let mut choice = vec![0u32; size];
        for mask in 1..size {
            if !covers[mask] {
                continue;
            }
            // Enumerate non-empty submasks t of mask that cover the slot.
            let mut t = mask;
            while t != 0 {
                if covers[t] {
                    let cand = profits[k].clone() + best[mask & !t].clone();
                    if cand > next[mask] {
                        next[mask] = cand;
                        choice[mask] = t as u32;
                    }
                }
                t = (t - 1) & mask;
            }
        }
        best = next;
        choices[k] = choice;
    }
    choices
}

//! Instances, assignments and the profit function.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// How many bins of each type are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Supply {
    /// Exactly one bin per type.
    Unit,
    /// Arbitrarily many copies per type.
    Infinite,
}

/// Whether profits are free or tied to demands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemClass {
    Generalized,
    /// Every bin earns exactly its demand.
    #[serde(rename = "variable")]
    VariableSized,
}

/// A bin (type) with its profit and demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinType {
    pub profit: Rat,
    pub demand: Rat,
}

impl BinType {
    pub fn new(profit: Rat, demand: Rat) -> BinType {
        BinType { profit, demand }
    }

    /// A variable-sized bin: profit equals demand.
    pub fn sized(demand: Rat) -> BinType {
        BinType {
            profit: demand.clone(),
            demand,
        }
    }

    /// Profit per unit of demand.
    pub fn efficiency(&self) -> Rat {
        &self.profit / &self.demand
    }
}

/// A bin covering instance. Immutable once built; [`Instance::new`] checks
/// every invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    supply: Supply,
    class: ProblemClass,
    bins: Vec<BinType>,
    items: Vec<Rat>,
}

impl Instance {
    pub fn new(
        supply: Supply,
        class: ProblemClass,
        bins: Vec<BinType>,
        items: Vec<Rat>,
    ) -> Result<Instance> {
        if bins.is_empty() {
            return Err(Error::InvalidInstance(
                "at least one bin is required".into(),
            ));
        }
        for (i, b) in bins.iter().enumerate() {
            if !b.demand.is_positive() {
                return Err(Error::InvalidInstance(format!(
                    "bin {i}: demand {} is not positive",
                    b.demand
                )));
            }
            if b.profit.is_negative() {
                return Err(Error::InvalidInstance(format!(
                    "bin {i}: profit {} is negative",
                    b.profit
                )));
            }
            if class == ProblemClass::VariableSized && b.profit != b.demand {
                return Err(Error::InvalidInstance(format!(
                    "bin {i}: profit {} differs from demand {} in a variable-sized instance",
                    b.profit, b.demand
                )));
            }
        }
        for (j, s) in items.iter().enumerate() {
            if !s.is_positive() {
                return Err(Error::InvalidInstance(format!(
                    "item {j}: size {s} is not positive"
                )));
            }
        }
        Ok(Instance {
            supply,
            class,
            bins,
            items,
        })
    }

    /// Variable-sized instance from demands and item sizes.
    pub fn variable(supply: Supply, demands: Vec<Rat>, items: Vec<Rat>) -> Result<Instance> {
        let bins = demands.into_iter().map(BinType::sized).collect();
        Instance::new(supply, ProblemClass::VariableSized, bins, items)
    }

    /// Generalized instance from `(profit, demand)` pairs.
    pub fn generalized(supply: Supply, bins: Vec<(Rat, Rat)>, items: Vec<Rat>) -> Result<Instance> {
        let bins = bins.into_iter().map(|(p, d)| BinType::new(p, d)).collect();
        Instance::new(supply, ProblemClass::Generalized, bins, items)
    }

    pub fn supply(&self) -> Supply {
        self.supply
    }

    pub fn class(&self) -> ProblemClass {
        self.class
    }

    pub fn bins(&self) -> &[BinType] {
        &self.bins
    }

    pub fn bin(&self, i: usize) -> &BinType {
        &self.bins[i]
    }

    pub fn items(&self) -> &[Rat] {
        &self.items
    }

    pub fn size(&self, j: usize) -> &Rat {
        &self.items[j]
    }

    /// Number of bins (types).
    pub fn m(&self) -> usize {
        self.bins.len()
    }

    /// Number of items.
    pub fn n(&self) -> usize {
        self.items.len()
    }

    /// Total item size.
    pub fn total_size(&self) -> Rat {
        self.items.iter().sum()
    }

    /// The same instance with one more item appended.
    pub fn with_item(&self, size: Rat) -> Result<Instance> {
        let mut items = self.items.clone();
        items.push(size);
        Instance::new(self.supply, self.class, self.bins.clone(), items)
    }

    /// The same instance with every profit reset to its demand.
    pub fn as_variable(&self) -> Instance {
        Instance {
            supply: self.supply,
            class: ProblemClass::VariableSized,
            bins: self
                .bins
                .iter()
                .map(|b| BinType::sized(b.demand.clone()))
                .collect(),
            items: self.items.clone(),
        }
    }

    pub(crate) fn require(
        &self,
        supply: Supply,
        class: Option<ProblemClass>,
        alg: &str,
    ) -> Result<()> {
        if self.supply != supply {
            return Err(Error::Unsupported(format!(
                "{alg} needs a {supply:?} supply instance, got {:?}",
                self.supply
            )));
        }
        if let Some(c) = class {
            if self.class != c {
                return Err(Error::Unsupported(format!(
                    "{alg} needs a {c:?} instance, got {:?}",
                    self.class
                )));
            }
        }
        Ok(())
    }
}

/// A concrete bin: type index plus copy number. Unit-supply bins always use
/// copy 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinRef {
    pub bin: usize,
    pub copy: usize,
}

impl BinRef {
    pub fn unit(bin: usize) -> BinRef {
        BinRef { bin, copy: 0 }
    }
}

/// A partial assignment of items onto bins. Bins without items are absent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    bins: BTreeMap<BinRef, Vec<usize>>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Unit-supply assignment from per-bin item lists (index = bin).
    pub fn from_unit_bins(per_bin: &[Vec<usize>]) -> Assignment {
        let mut a = Assignment::new();
        for (i, items) in per_bin.iter().enumerate() {
            if !items.is_empty() {
                a.bins.insert(BinRef::unit(i), items.clone());
            }
        }
        a
    }

    pub fn push(&mut self, bin: BinRef, item: usize) {
        self.bins.entry(bin).or_default().push(item);
    }

    pub fn extend(&mut self, bin: BinRef, items: impl IntoIterator<Item = usize>) {
        let entry = self.bins.entry(bin).or_default();
        entry.extend(items);
        if entry.is_empty() {
            self.bins.remove(&bin);
        }
    }

    pub fn items_of(&self, bin: BinRef) -> &[usize] {
        self.bins.get(&bin).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Non-empty bins in `(bin, copy)` order.
    pub fn iter(&self) -> impl Iterator<Item = (BinRef, &[usize])> {
        self.bins.iter().map(|(b, items)| (*b, items.as_slice()))
    }

    pub fn num_bins(&self) -> usize {
        self.bins.len()
    }

    pub fn num_items(&self) -> usize {
        self.bins.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Total size on `bin`.
    pub fn fill(&self, inst: &Instance, bin: BinRef) -> Rat {
        self.items_of(bin).iter().map(|&j| inst.size(j)).sum()
    }

    /// Drops every bin whose items do not reach its demand. Profit is unchanged.
    pub fn retain_covered(&mut self, inst: &Instance) {
        self.bins.retain(|b, items| {
            let fill: Rat = items.iter().map(|&j| inst.size(j)).sum();
            fill >= inst.bin(b.bin).demand
        });
    }
}

/// A structural defect in an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// The item appears in more than one place.
    DuplicateItem(usize),
    /// The item index is out of range.
    BadItem(usize),
    /// The bin index is out of range.
    BadBin(usize),
    /// A copy number that the supply model does not allow.
    BadCopy { bin: usize, copy: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateItem(j) => write!(f, "item {j} assigned more than once"),
            Violation::BadItem(j) => write!(f, "item index {j} out of range"),
            Violation::BadBin(i) => write!(f, "bin index {i} out of range"),
            Violation::BadCopy { bin, copy } => write!(f, "bin {bin} has no copy {copy}"),
        }
    }
}

/// Structural check of `a` against `inst`. Empty iff the assignment is valid.
///
/// Infinite-supply bins may use copies `0..n`; `n` copies per type always
/// suffice since every useful bin holds at least one item.
pub fn validate(inst: &Instance, a: &Assignment) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = vec![false; inst.n()];
    let mut reported = vec![false; inst.n()];
    for (b, items) in a.iter() {
        if b.bin >= inst.m() {
            out.push(Violation::BadBin(b.bin));
        } else {
            let copy_ok = match inst.supply() {
                Supply::Unit => b.copy == 0,
                Supply::Infinite => b.copy < inst.n(),
            };
            if !copy_ok {
                out.push(Violation::BadCopy {
                    bin: b.bin,
                    copy: b.copy,
                });
            }
        }
        for &j in items {
            if j >= inst.n() {
                out.push(Violation::BadItem(j));
            } else if seen[j] {
                if !reported[j] {
                    out.push(Violation::DuplicateItem(j));
                    reported[j] = true;
                }
            } else {
                seen[j] = true;
            }
        }
    }
    out
}

/// Sum of profits over the bins whose items reach their demand.
pub fn profit(inst: &Instance, a: &Assignment) -> Result<Rat> {
    let violations = validate(inst, a);
    if !violations.is_empty() {
        return Err(Error::InvalidAssignment(violations));
    }
    Ok(profit_unchecked(inst, a))
}

pub(crate) fn profit_unchecked(inst: &Instance, a: &Assignment) -> Rat {
    a.iter()
        .filter(|(b, _)| a.fill(inst, *b) >= inst.bin(b.bin).demand)
        .map(|(b, _)| inst.bin(b.bin).profit.clone())
        .sum()
}

//! Instance generators: seeded random families, the tight family for Next Fit
//! Decreasing, and the reduction from Partition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{BinType, Instance, ProblemClass, Supply};
use crate::rat::Rat;

/// Variable-sized unit-supply instance on which Next Fit Decreasing earns 4
/// while the optimum is `9 - 6 eps`.
///
/// Bins `{4, 3-2eps, 3-2eps, 3-2eps}`, items `{2-eps x3, 1-eps x3}`.
pub fn gen_example1(eps: &Rat) -> Result<Instance> {
    if !eps.is_positive() || *eps >= Rat::new(2, 3) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 2/3), got {eps}"
        )));
    }
    let two_eps = eps + eps;
    let small_bin = Rat::integer(3) - &two_eps;
    let demands = vec![
        Rat::integer(4),
        small_bin.clone(),
        small_bin.clone(),
        small_bin,
    ];
    let big = Rat::integer(2) - eps;
    let small = Rat::one() - eps;
    let items = vec![
        big.clone(),
        big.clone(),
        big,
        small.clone(),
        small.clone(),
        small,
    ];
    Instance::variable(Supply::Unit, demands, items)
}

/// Variable-sized unit-supply instance encoding a Partition instance.
///
/// Items are the partition sizes scaled by `2m` plus `m - 2` unit items. The
/// construction stays valid when `m` exceeds the number of sizes. The two
/// large bins have demand `s/2` where `s` is the total scaled partition size, the
/// remaining `m - 2` bins have demand 1. A yes-instance has optimum `s + m - 2`,
/// a no-instance at most `s/2 + m - 2`.
pub fn gen_partition_reduction(partition_sizes: &[u64], m: usize) -> Result<Instance> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 2, got m = {m}")));
    }
    if partition_sizes.is_empty() {
        return Err(Error::InvalidParameter(
            "partition sizes must be non-empty".into(),
        ));
    }
    if partition_sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "partition sizes must be positive".into(),
        ));
    }
    let scale = Rat::from(2 * m);
    let mut items: Vec<Rat> = partition_sizes
        .iter()
        .map(|&s| &Rat::from(s) * &scale)
        .collect();
    let s: Rat = items.iter().sum();
    items.extend(std::iter::repeat(Rat::one()).take(m - 2));
    let half = &s / &Rat::integer(2);
    let mut demands = vec![half.clone(), half];
    demands.extend(std::iter::repeat(Rat::one()).take(m - 2));
    Instance::variable(Supply::Unit, demands, items)
}

/// Whether `sizes` splits into two halves of equal sum.
pub fn has_equal_split(sizes: &[u64]) -> bool {
    let total: u64 = sizes.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let target = (total / 2) as usize;
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for &s in sizes {
        let s = s as usize;
        for t in (s..=target).rev() {
            if reachable[t - s] {
                reachable[t] = true;
            }
        }
    }
    reachable[target]
}

/// Parameters of a seeded random instance.
///
/// Every value is `k / denominator` for a uniformly drawn integer `k` inside the
/// corresponding closed range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub m: usize,
    pub supply: Supply,
    pub class: ProblemClass,
    pub demand: (Rat, Rat),
    pub size: (Rat, Rat),
    /// Ignored for variable-sized instances.
    pub profit: (Rat, Rat),
    pub denominator: u32,
    pub seed: u64,
}

struct Grid {
    lo: i64,
    hi: i64,
    den: i64,
}

impl Grid {
    fn new(range: &(Rat, Rat), den: u32, what: &str, allow_zero: bool) -> Result<Grid> {
        let d = Rat::from(den as u64);
        let lo = (&range.0 * &d).ceil();
        let hi = (&range.1 * &d).floor();
        let floor = if allow_zero { Rat::zero() } else { Rat::one() };
        let lo = lo.max(floor);
        match (lo.to_i64(), hi.to_i64()) {
            (Some(lo), Some(hi)) if lo <= hi => Ok(Grid {
                lo,
                hi,
                den: den as i64,
            }),
            _ => Err(Error::InvalidParameter(format!(
                "empty {what} range [{}, {}] at denominator {den}",
                range.0, range.1
            ))),
        }
    }

    fn draw(&self, rng: &mut impl Rng) -> Rat {
        Rat::new(rng.gen_range(self.lo..=self.hi), self.den)
    }
}

/// Deterministic random instance for a fixed seed.
pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    if spec.m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if spec.denominator == 0 {
        return Err(Error::InvalidParameter(
            "denominator must be positive".into(),
        ));
    }
    let demand = Grid::new(&spec.demand, spec.denominator, "demand", false)?;
    let size = Grid::new(&spec.size, spec.denominator, "size", false)?;
    let profit = match spec.class {
        ProblemClass::Generalized => {
            Some(Grid::new(&spec.profit, spec.denominator, "profit", true)?)
        }
        ProblemClass::VariableSized => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let bins = (0..spec.m)
        .map(|_| {
            let d = demand.draw(&mut rng);
            match &profit {
                Some(p) => BinType::new(p.draw(&mut rng), d),
                None => BinType::sized(d),
            }
        })
        .collect();
    let items = (0..spec.n).map(|_| size.draw(&mut rng)).collect();
    Instance::new(spec.supply, spec.class, bins, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BinType;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn spec(seed: u64) -> RandomSpec {
        RandomSpec {
            n: 8,
            m: 3,
            supply: Supply::Unit,
            class: ProblemClass::Generalized,
            demand: (r(1, 4), r(3, 2)),
            size: (r(1, 4), r(3, 2)),
            profit: (r(0, 1), r(2, 1)),
            denominator: 4,
            seed,
        }
    }

    #[test]
    fn example1_layout() {
        let inst = gen_example1(&r(1, 10)).unwrap();
        let demands: Vec<Rat> = inst.bins().iter().map(|b| b.demand.clone()).collect();
        assert_eq!(demands, vec![r(4, 1), r(14, 5), r(14, 5), r(14, 5)]);
        assert_eq!(
            inst.items(),
            &[
                r(19, 10),
                r(19, 10),
                r(19, 10),
                r(9, 10),
                r(9, 10),
                r(9, 10)
            ]
        );
        assert_eq!(inst.class(), ProblemClass::VariableSized);
    }

    #[test]
    fn example1_rejects_out_of_range() {
        assert!(gen_example1(&Rat::zero()).is_err());
        assert!(gen_example1(&r(2, 3)).is_err());
        assert!(gen_example1(&r(-1, 10)).is_err());
        assert!(gen_example1(&r(13, 20)).is_ok());
    }

    #[test]
    fn partition_reduction_layout() {
        let inst = gen_partition_reduction(&[1, 2, 3], 4).unwrap();
        assert_eq!(
            inst.items(),
            &[r(8, 1), r(16, 1), r(24, 1), r(1, 1), r(1, 1)]
        );
        let demands: Vec<Rat> = inst.bins().iter().map(|b| b.demand.clone()).collect();
        assert_eq!(demands, vec![r(24, 1), r(24, 1), r(1, 1), r(1, 1)]);
        assert!(gen_partition_reduction(&[1, 2, 3], 1).is_err());
        assert!(gen_partition_reduction(&[1, 2, 3], 4).is_ok());
        assert!(gen_partition_reduction(&[], 3).is_err());
        assert!(gen_partition_reduction(&[1, 0], 3).is_err());
    }

    #[test]
    fn equal_split_detection() {
        assert!(has_equal_split(&[1, 2, 3]));
        assert!(!has_equal_split(&[1, 1, 1]));
        assert!(!has_equal_split(&[2, 4, 8]));
        assert!(has_equal_split(&[]));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(gen_random(&spec(1)).unwrap(), gen_random(&spec(1)).unwrap());
        assert_ne!(gen_random(&spec(1)).unwrap(), gen_random(&spec(2)).unwrap());
    }

    #[test]
    fn random_respects_ranges_and_class() {
        let mut s = spec(9);
        s.class = ProblemClass::VariableSized;
        s.n = 40;
        let inst = gen_random(&s).unwrap();
        assert!(inst.bins().iter().all(|b| b.profit == b.demand));
        for x in inst.items() {
            assert!(*x >= r(1, 4) && *x <= r(3, 2));
            assert!((x * &r(4, 1)).is_integer());
        }
        s.n = 0;
        assert_eq!(gen_random(&s).unwrap().n(), 0);
    }

    #[test]
    fn random_rejects_empty_ranges() {
        let mut s = spec(3);
        s.size = (r(1, 3), r(2, 5)); // no multiple of 1/4 inside
        assert!(gen_random(&s).is_err());
        let mut s = spec(3);
        s.demand = (r(2, 1), r(1, 1));
        assert!(gen_random(&s).is_err());
        let mut s = spec(3);
        s.profit = (r(0, 1), r(0, 1));
        let inst = gen_random(&s).unwrap();
        assert!(inst.bins().iter().all(|b: &BinType| b.profit.is_zero()));
    }
}

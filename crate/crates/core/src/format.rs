//! Plain-text instance files.
//!
//! ```text
//! # comment
//! mode unit              # or: mode infinite
//! class variable         # or: class generalized
//! bins 2
//! 3 2                    # <profit> <demand>; `class variable` also accepts <demand>
//! 5/2
//! items 3
//! 0.75
//! 19/10
//! 1
//! ```
//!
//! Numbers may be integers, decimals or fractions and are read exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{BinType, Instance, ProblemClass, Supply};
use crate::rat::Rat;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank, non-comment line with its 1-based number. Trailing
    /// `#` comments are stripped.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.inner.by_ref() {
            self.last = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Some((idx + 1, body));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn keyword<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str> {
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok(v),
        _ => Err(perr(
            line,
            format!("expected `{key} <value>`, found `{text}`"),
        )),
    }
}

fn number(line: usize, lit: &str) -> Result<Rat> {
    lit.parse::<Rat>()
        .map_err(|_| perr(line, format!("invalid number `{lit}`")))
}

fn count(line: usize, lit: &str) -> Result<usize> {
    lit.parse::<usize>()
        .map_err(|_| perr(line, format!("invalid count `{lit}`")))
}

/// Reads an instance from text.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };

    let (ln, l) = lines.expect("`mode`")?;
    let supply = match keyword(ln, l, "mode")? {
        "unit" => Supply::Unit,
        "infinite" => Supply::Infinite,
        other => return Err(perr(ln, format!("unknown mode `{other}`"))),
    };
    let (ln, l) = lines.expect("`class`")?;
    let class = match keyword(ln, l, "class")? {
        "generalized" => ProblemClass::Generalized,
        "variable" => ProblemClass::VariableSized,
        other => return Err(perr(ln, format!("unknown class `{other}`"))),
    };
    let (ln, l) = lines.expect("`bins`")?;
    let m = count(ln, keyword(ln, l, "bins")?)?;
    if m == 0 {
        return Err(perr(ln, "at least one bin is required"));
    }

    let mut bins = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.expect("a bin line")?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        let bin = match (fields.as_slice(), class) {
            ([d], ProblemClass::VariableSized) => BinType::sized(number(ln, d)?),
            ([p, d], _) => BinType::new(number(ln, p)?, number(ln, d)?),
            _ => return Err(perr(ln, format!("malformed bin line `{l}`"))),
        };
        if !bin.demand.is_positive() {
            return Err(perr(ln, format!("demand {} is not positive", bin.demand)));
        }
        if bin.profit.is_negative() {
            return Err(perr(ln, format!("profit {} is negative", bin.profit)));
        }
        if class == ProblemClass::VariableSized && bin.profit != bin.demand {
            return Err(perr(
                ln,
                format!(
                    "profit {} differs from demand {} in a `class variable` file",
                    bin.profit, bin.demand
                ),
            ));
        }
        bins.push(bin);
    }

    let (ln, l) = lines.expect("`items`")?;
    let n = count(ln, keyword(ln, l, "items")?)?;
    let mut items = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.expect("an item line")?;
        if l.split_whitespace().count() != 1 {
            return Err(perr(ln, format!("malformed item line `{l}`")));
        }
        let s = number(ln, l)?;
        if !s.is_positive() {
            return Err(perr(ln, format!("size {s} is not positive")));
        }
        items.push(s);
    }
    if let Some((ln, l)) = lines.next() {
        return Err(perr(ln, format!("trailing content `{l}`")));
    }
    Instance::new(supply, class, bins, items)
}

/// Writes an instance in the format read by [`parse_instance`].
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let mode = match inst.supply() {
        Supply::Unit => "unit",
        Supply::Infinite => "infinite",
    };
    let class = match inst.class() {
        ProblemClass::Generalized => "generalized",
        ProblemClass::VariableSized => "variable",
    };
    let _ = writeln!(out, "mode {mode}");
    let _ = writeln!(out, "class {class}");
    let _ = writeln!(out, "bins {}", inst.m());
    for b in inst.bins() {
        match inst.class() {
            ProblemClass::VariableSized => {
                let _ = writeln!(out, "{}", b.demand.to_literal());
            }
            ProblemClass::Generalized => {
                let _ = writeln!(out, "{} {}", b.profit.to_literal(), b.demand.to_literal());
            }
        }
    }
    let _ = writeln!(out, "items {}", inst.n());
    for s in inst.items() {
        let _ = writeln!(out, "{}", s.to_literal());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_random, RandomSpec};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn parses_minimal_file() {
        let inst = parse_instance("mode unit\nclass variable\nbins 1\n1 1\nitems 1\n1").unwrap();
        assert_eq!(inst.supply(), Supply::Unit);
        assert_eq!(inst.class(), ProblemClass::VariableSized);
        assert_eq!(inst.bins(), &[BinType::sized(r(1, 1))]);
        assert_eq!(inst.items(), &[r(1, 1)]);
    }

    #[test]
    fn literals_are_exact() {
        let inst = parse_instance(
            "# header\nmode infinite\nclass generalized\nbins 1\n2.5 19/10 # trailing\n\nitems 2\n0.3\n19/10\n",
        )
        .unwrap();
        assert_eq!(inst.bin(0).profit, r(5, 2));
        assert_eq!(inst.bin(0).demand, r(19, 10));
        assert_eq!(inst.items(), &[r(3, 10), r(19, 10)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("mode unit\nclass variable\nbins 1\n0\nitems 0\n", 4),
            ("mode unit\nclass variable\nbins 1\n2 1\nitems 0\n", 4),
            ("mode unit\nclass variable\nbins 1\n1\nitems 1\n-1\n", 6),
            ("mode unit\nclass variable\nbins 1\n1\nitems 1\n0\n", 6),
            ("mode sideways\n", 1),
            ("mode unit\nkind variable\n", 2),
            ("mode unit\nclass variable\nbins x\n", 3),
            ("mode unit\nclass variable\nbins 2\n1\n", 5),
            ("mode unit\nclass generalized\nbins 1\n1\nitems 0\n", 4),
            ("mode unit\nclass variable\nbins 1\n1\nitems 0\nextra\n", 6),
            ("mode unit\nclass variable\nbins 0\nitems 0\n", 3),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(seed in any::<u64>(), n in 0usize..12, m in 1usize..6,
                                            infinite in any::<bool>(), variable in any::<bool>()) {
            let spec = RandomSpec {
                n,
                m,
                supply: if infinite { Supply::Infinite } else { Supply::Unit },
                class: if variable { ProblemClass::VariableSized } else { ProblemClass::Generalized },
                demand: (r(1, 7), r(9, 2)),
                size: (r(1, 13), r(7, 3)),
                profit: (r(0, 1), r(5, 1)),
                denominator: 60,
                seed,
            };
            let inst = gen_random(&spec).unwrap();
            let text = serialize_instance(&inst);
            prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        }
    }
}

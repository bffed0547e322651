//! Closed forms, linear recurrences and rational generating functions for
//! the enumeration tables. Everything is exact integer arithmetic.
//!
//! Fibonacci numbers use `f(1) = f(2) = 1` (so `f(0) = 0`); Tribonacci numbers
//! use `t(1) = t(2) = 1, t(3) = 2` (so `t(0) = 0`). Table formulas written
//! with other conventions carry an explicit index offset instead.

use std::fmt;

use serde::Serialize;

use crate::catalog::families;
use crate::error::{Error, Result};

pub type Value = i128;

/// `Σ coefficient·C(n + offset, k) + constant`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BinomialPoly {
    pub terms: Vec<BinomialTerm>,
    pub constant: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialTerm {
    pub coefficient: i64,
    pub offset: i64,
    pub k: u32,
}

impl BinomialPoly {
    pub fn new(terms: &[(i64, i64, u32)], constant: i64) -> Self {
        BinomialPoly {
            terms: terms
                .iter()
                .map(|&(coefficient, offset, k)| BinomialTerm {
                    coefficient,
                    offset,
                    k,
                })
                .collect(),
            constant,
        }
    }

    pub fn eval(&self, n: u32) -> Value {
        self.terms
            .iter()
            .map(|t| t.coefficient as Value * binomial(n as i64 + t.offset, t.k))
            .sum::<Value>()
            + self.constant as Value
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountFormula {
    /// `C(2n, n) / (n + 1)`.
    Catalan,
    BinomialPoly(BinomialPoly),
    /// `(slope·n + intercept)·2^(n + shift) + correction`.
    PowerLinear {
        slope: i64,
        intercept: i64,
        shift: i64,
        correction: BinomialPoly,
    },
    /// `f(scale·n + offset) + addend`.
    Fibonacci {
        scale: i64,
        offset: i64,
        addend: i64,
    },
    /// `t(n + offset)`.
    Tribonacci {
        offset: i64,
    },
    /// Coefficient `a(n + index_shift)` of `numerator / denominator`.
    RationalGf {
        numerator: Vec<i64>,
        denominator: Vec<i64>,
        index_shift: i64,
    },
    /// `slope·n + intercept`.
    Linear {
        slope: i64,
        intercept: i64,
    },
    Constant {
        value: i64,
    },
    /// Zero for every `n >= from`; undefined below.
    ZeroBeyond {
        from: u32,
    },
    /// Size of an explicitly listed avoider family.
    ExplicitFamily {
        id: String,
    },
}

impl CountFormula {
    /// Smallest `n` the formula itself makes a claim for.
    pub fn intrinsic_valid_from(&self) -> u32 {
        match self {
            CountFormula::ZeroBeyond { from } => *from,
            CountFormula::ExplicitFamily { id } => families::by_id(id).map_or(1, |f| f.valid_from),
            _ => 1,
        }
    }

    /// Exact value at `n`. Values below [`Self::intrinsic_valid_from`] are
    /// still computed where the expression makes sense (zero rows give 0).
    pub fn eval(&self, n: u32) -> Result<Value> {
        let ni = n as i64;
        Ok(match self {
            CountFormula::Catalan => catalan(n),
            CountFormula::BinomialPoly(poly) => poly.eval(n),
            CountFormula::PowerLinear {
                slope,
                intercept,
                shift,
                correction,
            } => {
                let factor = (*slope as Value) * ni as Value + *intercept as Value;
                let exponent = ni + shift;
                let power = if exponent >= 0 {
                    factor << exponent
                } else {
                    let divisor = 1 << (-exponent);
                    if factor % divisor != 0 {
                        return Err(Error::invalid(format!(
                            "non-integral power term at n = {n}"
                        )));
                    }
                    factor / divisor
                };
                power + correction.eval(n)
            }
            CountFormula::Fibonacci {
                scale,
                offset,
                addend,
            } => fibonacci(scale * ni + offset)? + *addend as Value,
            CountFormula::Tribonacci { offset } => tribonacci(ni + offset)?,
            CountFormula::RationalGf {
                numerator,
                denominator,
                index_shift,
            } => {
                let index = ni + index_shift;
                if index < 0 {
                    return Err(Error::invalid(format!(
                        "negative coefficient index {index}"
                    )));
                }
                let coefficients = gf_coefficients(numerator, denominator, index as usize)?;
                coefficients[index as usize]
            }
            CountFormula::Linear { slope, intercept } => (slope * ni + intercept) as Value,
            CountFormula::Constant { value } => *value as Value,
            CountFormula::ZeroBeyond { .. } => 0,
            CountFormula::ExplicitFamily { id } => {
                let family = families::by_id(id)
                    .ok_or_else(|| Error::invalid(format!("unknown explicit family `{id}`")))?;
                family.members(n as usize).len() as Value
            }
        })
    }

    /// The index offset of an offset-carrying formula.
    pub fn offset(&self) -> Option<i64> {
        match self {
            CountFormula::Fibonacci { offset, .. } | CountFormula::Tribonacci { offset } => {
                Some(*offset)
            }
            CountFormula::RationalGf { index_shift, .. } => Some(*index_shift),
            _ => None,
        }
    }

    /// The same formula with its index offset replaced.
    pub fn with_offset(&self, new: i64) -> Option<CountFormula> {
        let mut f = self.clone();
        match &mut f {
            CountFormula::Fibonacci { offset, .. } | CountFormula::Tribonacci { offset } => {
                *offset = new
            }
            CountFormula::RationalGf { index_shift, .. } => *index_shift = new,
            _ => return None,
        }
        Some(f)
    }

    /// Values for `n = from..=to`.
    pub fn eval_range(&self, from: u32, to: u32) -> Result<Vec<Value>> {
        (from..=to).map(|n| self.eval(n)).collect()
    }
}

fn signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coefficient: i64,
    body: &str,
) -> fmt::Result {
    let sign = if coefficient < 0 {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let magnitude = coefficient.unsigned_abs();
    if magnitude == 1 && !body.is_empty() {
        write!(f, "{sign}{body}")
    } else if body.starts_with(|c: char| c.is_ascii_digit()) {
        write!(f, "{sign}{magnitude}·{body}")
    } else {
        write!(f, "{sign}{magnitude}{body}")
    }
}

fn n_plus(offset: i64) -> String {
    match offset {
        0 => "n".to_string(),
        o if o > 0 => format!("n+{o}"),
        o => format!("n{o}"),
    }
}

fn scaled_index(scale: i64, offset: i64) -> String {
    let head = if scale == 1 {
        "n".to_string()
    } else {
        format!("{scale}n")
    };
    match offset {
        0 => head,
        o if o > 0 => format!("{head}+{o}"),
        o => format!("{head}{o}"),
    }
}

impl BinomialPoly {
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>, mut first: bool) -> fmt::Result {
        for t in &self.terms {
            let body = match (t.k, t.offset) {
                (1, 0) => "n".to_string(),
                (1, o) => format!("({})", n_plus(o)),
                (k, o) => format!("C({},{k})", n_plus(o)),
            };
            signed_term(f, first, t.coefficient, &body)?;
            first = false;
        }
        if self.constant != 0 || first {
            signed_term(f, first, self.constant, "")?;
        }
        Ok(())
    }
}

fn fmt_poly_in_x(f: &mut fmt::Formatter<'_>, coefficients: &[i64]) -> fmt::Result {
    let mut first = true;
    for (d, &c) in coefficients.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let body = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        signed_term(f, first, c, &body)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for CountFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountFormula::Catalan => f.write_str("C(2n,n)/(n+1)"),
            CountFormula::BinomialPoly(poly) => poly.fmt_terms(f, true),
            CountFormula::PowerLinear {
                slope,
                intercept,
                shift,
                correction,
            } => {
                let power = format!("2^({})", n_plus(*shift));
                match (slope, intercept) {
                    (0, c) => signed_term(f, true, *c, &power)?,
                    (s, 0) => write!(f, "{}{power}", scaled_index(*s, 0))?,
                    (s, c) => write!(f, "({}){power}", scaled_index(*s, *c))?,
                }
                if !correction.terms.is_empty() || correction.constant != 0 {
                    correction.fmt_terms(f, false)?;
                }
                Ok(())
            }
            CountFormula::Fibonacci {
                scale,
                offset,
                addend,
            } => {
                write!(f, "f({})", scaled_index(*scale, *offset))?;
                if *addend != 0 {
                    signed_term(f, false, *addend, "")?;
                }
                Ok(())
            }
            CountFormula::Tribonacci { offset } => write!(f, "t({})", n_plus(*offset)),
            CountFormula::RationalGf {
                numerator,
                denominator,
                index_shift,
            } => {
                f.write_str("[x^")?;
                f.write_str(&n_plus(*index_shift))?;
                f.write_str("] (")?;
                fmt_poly_in_x(f, numerator)?;
                f.write_str(")/(")?;
                fmt_poly_in_x(f, denominator)?;
                f.write_str(")")
            }
            CountFormula::Linear { slope, intercept } => {
                f.write_str(&scaled_index(*slope, *intercept))
            }
            CountFormula::Constant { value } => write!(f, "{value}"),
            CountFormula::ZeroBeyond { from } => write!(f, "0 (n>={from})"),
            CountFormula::ExplicitFamily { id } => write!(f, "|{id}|"),
        }
    }
}

/// `C(n, k)`, zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: u32) -> Value {
    if n < 0 || (k as i64) > n {
        return 0;
    }
    let k = k.min((n - k as i64) as u32);
    let mut acc: Value = 1;
    for i in 0..k as Value {
        acc = acc * (n as Value - i) / (i + 1);
    }
    acc
}

pub fn catalan(n: u32) -> Value {
    binomial(2 * n as i64, n) / (n as Value + 1)
}

/// `f(m)` with `f(0) = 0, f(1) = f(2) = 1`.
pub fn fibonacci(m: i64) -> Result<Value> {
    if m < 0 {
        return Err(Error::invalid(format!("Fibonacci index {m} is negative")));
    }
    let (mut a, mut b): (Value, Value) = (0, 1);
    for _ in 0..m {
        (a, b) = (b, a + b);
    }
    Ok(a)
}

/// `t(m)` with `t(0) = 0, t(1) = t(2) = 1`.
pub fn tribonacci(m: i64) -> Result<Value> {
    if m < 0 {
        return Err(Error::invalid(format!("Tribonacci index {m} is negative")));
    }
    let (mut a, mut b, mut c): (Value, Value, Value) = (0, 1, 1);
    for _ in 0..m {
        (a, b, c) = (b, c, a + b + c);
    }
    Ok(a)
}

/// Power-series coefficients `a(0..=n_max)` of `numerator / denominator`,
/// from `Σ_j den[j]·a(n-j) = num[n]`.
pub fn gf_coefficients(numerator: &[i64], denominator: &[i64], n_max: usize) -> Result<Vec<Value>> {
    let lead = *denominator.first().unwrap_or(&0) as Value;
    if lead == 0 {
        return Err(Error::invalid("denominator has zero constant term"));
    }
    let mut a: Vec<Value> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut rhs = numerator.get(n).copied().unwrap_or(0) as Value;
        for (j, &d) in denominator.iter().enumerate().skip(1).take(n) {
            rhs -= d as Value * a[n - j];
        }
        if rhs % lead != 0 {
            return Err(Error::invalid(format!("coefficient {n} is not an integer")));
        }
        a.push(rhs / lead);
    }
    Ok(a)
}

/// The offset making `with_offset(offset)` agree with every `(n, count)` in
/// `anchors`, searched over `candidates`. `None` unless exactly one fits.
pub fn calibrate_offset(
    anchors: &[(u32, u64)],
    candidates: impl IntoIterator<Item = i64>,
    with_offset: impl Fn(i64) -> CountFormula,
) -> Option<i64> {
    let fits: Vec<i64> = candidates
        .into_iter()
        .filter(|&o| {
            let formula = with_offset(o);
            anchors
                .iter()
                .all(|&(n, c)| formula.eval(n).ok() == Some(c as Value))
        })
        .collect();
    match fits.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

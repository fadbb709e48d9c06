//! Exact length vectors and their global predicates.
//!
//! Every entry is a reduced rational. Internally the vector is also kept as
//! integer weights (entries times the lcm of the denominators), so that the
//! short/long test `2 * sum(J) < total` runs on machine integers whenever the
//! total fits in an `i128`, and on big integers otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::subsets::SubsetMask;

/// Arbitrary precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Default cap on `n`; every structure here is found by enumerating up to `2^n` subsets.
pub const DEFAULT_MAX_N: usize = 24;

/// Absolute cap imposed by the 64-bit subset masks.
pub const HARD_MAX_N: usize = 62;

/// Parses `"3"`, `"-2"`, `"1/4"`, `"0.25"` or `"2.5e-1"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_int(p.trim()).ok_or_else(err)?;
        let q = parse_int(q.trim()).ok_or_else(err)?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some(i) = parse_int(t) {
        return Ok(Rational::from_integer(i));
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, shift.unsigned_abs() as usize);
    }
    Some(if negative { -value } else { value })
}

/// Outcome of comparing a subset's total length against its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetClass {
    Short,
    Long,
    Degenerate,
}

pub(crate) trait Weight:
    Clone + Ord + Send + Sync + Integer + for<'a> Add<&'a Self, Output = Self>
{
}

impl<T> Weight for T where T: Clone + Ord + Send + Sync + Integer + for<'a> Add<&'a T, Output = T> {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Weights {
    Small(Vec<i128>, i128),
    Big(Vec<BigInt>, BigInt),
}

/// Runs `$body` with `$w: &[W]` and `$t: &W` bound to the integer weights,
/// for whichever integer width the vector uses.
macro_rules! with_weights {
    ($lv:expr, |$w:ident, $t:ident| $body:expr) => {
        match $lv.weights() {
            $crate::lengths::Weights::Small(w, t) => {
                let $w = &w[..];
                let $t = t;
                $body
            }
            $crate::lengths::Weights::Big(w, t) => {
                let $w = &w[..];
                let $t = t;
                $body
            }
        }
    };
}
pub(crate) use with_weights;

pub(crate) fn subset_sum<W: Weight>(w: &[W], mask: u64) -> W {
    let mut sum = W::zero();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        sum = sum + &w[i];
        rest &= rest - 1;
    }
    sum
}

/// `2 * sum` compared with the total: `Less` means short.
pub(crate) fn balance<W: Weight>(sum: &W, total: &W) -> Ordering {
    (sum.clone() + sum).cmp(total)
}

const LOW_BITS: usize = 16;

/// All masks over `w.len()` bits whose subset sum satisfies `keep`, in ascending order.
pub(crate) fn select_masks<W, F>(w: &[W], keep: F) -> Vec<u64>
where
    W: Weight,
    F: Fn(u64, &W) -> bool + Sync,
{
    let bits = w.len();
    let low_bits = bits.min(LOW_BITS);
    let high_bits = bits - low_bits;
    let mut low_sums: Vec<W> = Vec::with_capacity(1 << low_bits);
    low_sums.push(W::zero());
    for mask in 1u64..(1u64 << low_bits) {
        let i = mask.trailing_zeros() as usize;
        let prev = low_sums[(mask & (mask - 1)) as usize].clone();
        low_sums.push(prev + &w[i]);
    }
    let low_sums = &low_sums;
    let keep = &keep;
    (0u64..(1u64 << high_bits))
        .into_par_iter()
        .flat_map_iter(move |high| {
            let base = subset_sum(&w[low_bits..], high);
            let offset = high << low_bits;
            low_sums.iter().enumerate().filter_map(move |(low, s)| {
                let mask = offset | low as u64;
                let sum = base.clone() + s;
                keep(mask, &sum).then_some(mask)
            })
        })
        .collect()
}

/// A length vector `(l_1, ..., l_n)` with exact positive rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LengthVector {
    entries: Vec<Rational>,
    total: Rational,
    weights: Weights,
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LengthVector({self})")
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LengthVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_list(s, DEFAULT_MAX_N)
    }
}

impl LengthVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        Self::with_max_n(entries, DEFAULT_MAX_N)
    }

    /// Like [`LengthVector::new`] with a different cap on `n` (at most [`HARD_MAX_N`]).
    pub fn with_max_n(entries: Vec<Rational>, max_n: usize) -> Result<Self> {
        let max = max_n.min(HARD_MAX_N);
        let n = entries.len();
        if n < 3 {
            return Err(Error::TooFewEntries(n));
        }
        if n > max {
            return Err(Error::TooManyEntries { n, max });
        }
        if let Some((i, e)) = entries.iter().enumerate().find(|(_, e)| !e.is_positive()) {
            return Err(Error::NonPositive { index: i + 1, value: e.to_string() });
        }
        let total = entries.iter().fold(Rational::zero(), |acc, e| acc + e);
        let weights = integer_weights(&entries);
        Ok(Self { entries, total, weights })
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| Rational::from_integer(e.into())).collect())
    }

    /// Comma-separated list of rationals, e.g. `"1/4,1,1,1,2,2"`.
    pub fn parse_list(s: &str, max_n: usize) -> Result<Self> {
        let entries = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Self::with_max_n(entries, max_n)
    }

    /// JSON array of strings, e.g. `["1/4", "1", "0.5"]`.
    pub fn from_json(s: &str, max_n: usize) -> Result<Self> {
        let items: Vec<String> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let entries = items.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?;
        Self::with_max_n(entries, max_n)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Entry `l_i`, 1-based.
    pub fn get(&self, i: usize) -> Option<&Rational> {
        i.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn last(&self) -> &Rational {
        &self.entries[self.entries.len() - 1]
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    pub(crate) fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Entries rendered as canonical `p/q` strings (integers without a denominator).
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_string()).collect()
    }

    pub fn classify_subset(&self, subset: SubsetMask) -> Result<SubsetClass> {
        let n = self.n();
        if let Some(bad) = subset.iter().find(|&i| i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(self.classify_bits(subset.bits()))
    }

    pub(crate) fn classify_bits(&self, bits: u64) -> SubsetClass {
        with_weights!(self, |w, t| class_of(balance(&subset_sum(w, bits), t)))
    }

    /// Subsets `J` of `{1..n-1}` (so `n` not in `J`) whose length equals that of
    /// the complement, ascending by mask.
    pub fn degenerate_subsets(&self) -> Vec<SubsetMask> {
        let bits = self.n() - 1;
        with_weights!(self, |w, t| {
            // 2 * sum is even, so an odd integer total is never balanced.
            if t.is_odd() {
                return Vec::new();
            }
            select_masks(&w[..bits], |_, s| balance(s, t) == Ordering::Equal)
                .into_iter()
                .map(SubsetMask::from_bits)
                .collect()
        })
    }

    /// True iff every subset is either short or long.
    pub fn is_generic(&self) -> bool {
        self.degenerate_subsets().is_empty()
    }

    pub fn require_generic(&self) -> Result<()> {
        let degenerate = self.degenerate_subsets();
        if degenerate.is_empty() {
            Ok(())
        } else {
            Err(Error::NotGeneric { degenerate })
        }
    }

    /// True iff `l_n >= l_i` for every `i < n`.
    pub fn is_dominated(&self) -> bool {
        let last = self.last();
        self.entries[..self.n() - 1].iter().all(|e| e <= last)
    }

    /// Sorts `l_1..l_{n-1}` ascending and keeps `l_n` in place.
    pub fn normalize(&self) -> LengthVector {
        self.normalize_with_permutation().0
    }

    /// Normalized vector plus the permutation used: `perm[k]` is the 1-based
    /// position in `self` of entry `k + 1` of the result.
    pub fn normalize_with_permutation(&self) -> (LengthVector, Vec<usize>) {
        let n = self.n();
        let mut order: Vec<usize> = (0..n - 1).collect();
        order.sort_by(|&a, &b| self.entries[a].cmp(&self.entries[b]));
        order.push(n - 1);
        let entries = order.iter().map(|&i| self.entries[i].clone()).collect();
        let lv = Self {
            entries,
            total: self.total.clone(),
            weights: integer_weights_permuted(&self.weights, &order),
        };
        (lv, order.into_iter().map(|i| i + 1).collect())
    }

    /// `perm[k]` is the 1-based source position of entry `k + 1`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LengthVector> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::IndexOutOfRange { index: p, n });
            }
        }
        if perm.len() != n {
            return Err(Error::IndexOutOfRange { index: perm.len(), n });
        }
        let order: Vec<usize> = perm.iter().map(|p| p - 1).collect();
        Ok(Self {
            entries: order.iter().map(|&i| self.entries[i].clone()).collect(),
            total: self.total.clone(),
            weights: integer_weights_permuted(&self.weights, &order),
        })
    }

    /// Multiplies every entry by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Result<LengthVector> {
        Self::with_max_n(self.entries.iter().map(|e| e * factor).collect(), HARD_MAX_N)
    }

    /// The smallest positive integer vector proportional to this one.
    pub fn integral(&self) -> Vec<BigInt> {
        let w: Vec<BigInt> = match &self.weights {
            Weights::Small(w, _) => w.iter().map(|&x| BigInt::from(x)).collect(),
            Weights::Big(w, _) => w.clone(),
        };
        let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        w.into_iter().map(|x| x / &g).collect()
    }
}

fn class_of(o: Ordering) -> SubsetClass {
    match o {
        Ordering::Less => SubsetClass::Short,
        Ordering::Greater => SubsetClass::Long,
        Ordering::Equal => SubsetClass::Degenerate,
    }
}

fn integer_weights(entries: &[Rational]) -> Weights {
    let lcm = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let big: Vec<BigInt> = entries.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    pack(big)
}

fn integer_weights_permuted(weights: &Weights, order: &[usize]) -> Weights {
    match weights {
        Weights::Small(w, t) => Weights::Small(order.iter().map(|&i| w[i]).collect(), *t),
        Weights::Big(w, t) => Weights::Big(order.iter().map(|&i| w[i].clone()).collect(), t.clone()),
    }
}

fn pack(big: Vec<BigInt>) -> Weights {
    let total: BigInt = big.iter().sum();
    // Sums get doubled, so leave headroom below i128::MAX.
    if total.bits() <= 125 {
        let small = big.iter().map(|x| x.to_i128().expect("fits")).collect();
        Weights::Small(small, total.to_i128().expect("fits"))
    } else {
        Weights::Big(big, total)
    }
}

/// Dimension `(n - 2)(d - 1) - 1` of the chain space for generic lengths.
pub fn dimension(n: usize, d: i64) -> Result<i64> {
    if n < 3 || d < 2 {
        return Err(Error::InvalidDimensionArgs { n, d });
    }
    Ok((n as i64 - 2) * (d - 1) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn lv(s: &str) -> LengthVector {
        s.parse().unwrap()
    }

    fn mask(ix: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(ix.iter().copied()).unwrap()
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(q("3"), Rational::from_integer(3.into()));
        assert_eq!(q(" 1/4 "), Rational::new(1.into(), 4.into()));
        assert_eq!(q("2/8"), q("1/4"));
        assert_eq!(q("0.25"), q("1/4"));
        assert_eq!(q(".5"), q("1/2"));
        assert_eq!(q("2.5e-1"), q("1/4"));
        assert_eq!(q("1e2"), q("100"));
        assert_eq!(q("-1/2"), -q("1/2"));
        for bad in ["", "a", "1/0", "1.2.3", "1/2/3", "--1", "1e", "e5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_bad_vectors() {
        assert_eq!(LengthVector::from_str("1,1"), Err(Error::TooFewEntries(2)));
        assert!(matches!(
            LengthVector::from_str("1,0,1"),
            Err(Error::NonPositive { index: 2, .. })
        ));
        let long = vec!["1"; 25].join(",");
        assert!(matches!(
            LengthVector::from_str(&long),
            Err(Error::TooManyEntries { n: 25, max: 24 })
        ));
        assert!(LengthVector::parse_list(&long, 30).is_ok());
    }

    #[test]
    fn json_input() {
        let v = LengthVector::from_json(r#"["1/4", "1", "0.5"]"#, DEFAULT_MAX_N).unwrap();
        assert_eq!(v.to_strings(), ["1/4", "1", "1/2"]);
        assert!(LengthVector::from_json("[1, 2, 3]", DEFAULT_MAX_N).is_err());
    }

    #[test]
    fn classify_examples() {
        let l = lv("1,1,1,2,3,3");
        assert_eq!(l.classify_subset(mask(&[2, 3, 6])).unwrap(), SubsetClass::Short);
        assert_eq!(l.classify_subset(SubsetMask::EMPTY).unwrap(), SubsetClass::Short);
        assert_eq!(
            lv("1,1,1,1").classify_subset(mask(&[1, 2])).unwrap(),
            SubsetClass::Degenerate
        );
        assert_eq!(
            l.classify_subset(mask(&[7])),
            Err(Error::IndexOutOfRange { index: 7, n: 6 })
        );
    }

    #[test]
    fn genericity_examples() {
        assert!(lv("1,1,1,2,3,3").is_generic());
        assert!(!lv("1,1,1,1").is_generic());
        assert!(lv("1,1,1,1/2").is_generic());
        let err = lv("1,1,1,1").require_generic().unwrap_err();
        match err {
            Error::NotGeneric { degenerate } => {
                assert_eq!(degenerate, vec![mask(&[1, 2]), mask(&[1, 3]), mask(&[2, 3])]);
            }
            other => panic!("{other:?}"),
        }
        assert!(err_text("1,1,1,1").contains("{1,2}"));
    }

    fn err_text(s: &str) -> String {
        lv(s).require_generic().unwrap_err().to_string()
    }

    #[test]
    fn dominance_examples() {
        assert!(lv("1,1,1,2,3,3").is_dominated());
        assert!(!lv("1,1,1,1/2").is_dominated());
        assert!(lv("1,1,2").is_dominated());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(lv("3,1,2,1,1,3").normalize(), lv("1,1,1,2,3,3"));
        assert_eq!(lv("1,1,1,2,3,3").normalize(), lv("1,1,1,2,3,3"));
        assert_eq!(lv("1/4,1,1,1,2,2").normalize(), lv("1/4,1,1,1,2,2"));
        let (n, perm) = lv("3,1,2,5").normalize_with_permutation();
        assert_eq!(n, lv("1,2,3,5"));
        assert_eq!(perm, [2, 3, 1, 4]);
        assert_eq!(lv("3,1,2,5").permuted(&perm).unwrap(), n);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(6, 3).unwrap(), 7);
        assert_eq!(dimension(4, 4).unwrap(), 5);
        assert_eq!(dimension(3, 2).unwrap(), 0);
        assert!(dimension(2, 3).is_err());
        assert!(dimension(5, 1).is_err());
    }

    #[test]
    fn big_weights_agree_with_small() {
        // Denominators force the big-integer path.
        let huge = "1/170141183460469231731687303715884105727";
        let a = lv(&format!("{huge},1,1,1,2,2"));
        assert!(matches!(a.weights(), Weights::Big(..)));
        assert!(a.is_generic());
        assert_eq!(a.classify_subset(mask(&[1, 2, 6])).unwrap(), SubsetClass::Short);
        assert_eq!(a.classify_subset(mask(&[2, 3, 6])).unwrap(), SubsetClass::Long);
        assert_eq!(a.integral().len(), 6);
    }

    #[test]
    fn integral_rescaling() {
        let ints: Vec<String> = lv("1/4,1,1,1,2,2").integral().iter().map(|x| x.to_string()).collect();
        assert_eq!(ints, ["1", "4", "4", "4", "8", "8"]);
    }
}

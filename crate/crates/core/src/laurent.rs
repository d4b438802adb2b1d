//! Exact Laurent polynomials in one indeterminate `v` over an integer ring.
//!
//! Values are kept in normal form at all times: terms sorted by strictly
//! ascending exponent, no zero coefficient stored. Equality is therefore
//! structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::scalar::Coefficient;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentPoly<C> {
    terms: Vec<(i32, C)>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: C, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut acc: BTreeMap<i32, C> = BTreeMap::new();
        for (k, c) in terms {
            let slot = acc.entry(k).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Small-integer convenience constructor.
    pub fn from_ints(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, C::from_int(c))))
    }

    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, exp: i32) -> C {
        match self.terms.binary_search_by_key(&exp, |(k, _)| *k) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|(k, _)| *k)
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> C {
        self.terms.iter().fold(C::zero(), |acc, (_, c)| acc + c.clone())
    }

    /// True iff the polynomial lies in `N[v, v^-1]`.
    pub fn is_nonneg(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_positive())
    }

    /// True iff the polynomial lies in `v^-1 Z[v^-1]`.
    pub fn in_vinv(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k <= -1)
    }

    /// Multiplies by `v^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x.clone() * c.clone())).collect(),
        }
    }

    /// Keeps only the terms with exponent `< bound`.
    pub fn truncate_below(&self, bound: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(k, _)| *k < bound).cloned().collect(),
        }
    }

    /// Compact descending rendering, e.g. `v^2-1`, used inside parentheses.
    pub fn to_compact_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if negative {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            out.push_str(&monomial_body(*k, &mag, ""));
        }
        out
    }
}

fn monomial_body<C: Coefficient>(k: i32, mag: &C, times: &str) -> String {
    let var = match k {
        0 => String::new(),
        1 => "v".to_string(),
        _ => format!("v^{k}"),
    };
    if var.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        var
    } else {
        format!("{mag}{times}{var}")
    }
}

/// Ascending text form: `-1 + v^2`, `2*v^-1`, `0`.
impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let body = monomial_body(*k, &c.abs(), "*");
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn merge<C: Coefficient>(a: &[(i32, C)], b: &[(i32, C)], negate_b: bool) -> Vec<(i32, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, take_b(&b[j].1)));
            j += 1;
        } else {
            let s = a[i].1.clone() + take_b(&b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_terms(self.terms.iter().flat_map(|(ka, ca)| {
            rhs.terms.iter().map(move |(kb, cb)| (ka + kb, ca.clone() * cb.clone()))
        }))
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coefficient> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl<C: Coefficient> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl<C: Coefficient> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        LaurentPoly::zero()
    }
}

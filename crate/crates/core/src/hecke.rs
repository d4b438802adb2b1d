//! The convolution algebra on the basis `[σ]`, `σ ∈ Σ_d`, with coefficients
//! in `Z[v, v^-1]`.
//!
//! Left multiplication by a generator follows the four-entry exchange rule:
//! with `(k, l)` the images of the generator's two designated rows,
//!
//! ```text
//! [T_g] * [σ] = v^ξ [σ'] + (v^ξ - 1) [σ],   ξ = 2 if k > l else 0,
//! [T_ρ] * [σ] = [σ'],
//! ```
//!
//! where `σ'` exchanges the two row images (and their mirrors). For `T_0`
//! the exchange is read as `+E_θ^{-1,l} + E_θ^{1,k}`, the only reading that
//! keeps `σ'` a monomial matrix. General products factor the left operand
//! into generators and fold them onto the right operand.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::machine::{int_array, laurent_from_value, laurent_to_json};
use crate::scalar::Coefficient;
use crate::weyl::{window_json, AffinePerm, GenLabel};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElt<C> {
    d: usize,
    terms: BTreeMap<AffinePerm, LaurentPoly<C>>,
}

impl<C: Coefficient> HeckeElt<C> {
    pub fn zero(d: usize) -> Self {
        HeckeElt { d, terms: BTreeMap::new() }
    }

    /// `[w]` with coefficient 1.
    pub fn basis(w: &AffinePerm) -> Self {
        Self::term(w.clone(), LaurentPoly::one())
    }

    pub fn term(w: AffinePerm, coeff: LaurentPoly<C>) -> Self {
        let mut out = Self::zero(w.d());
        out.add_term(w, &coeff);
        out
    }

    pub fn unit(d: usize) -> Result<Self> {
        Ok(Self::basis(&AffinePerm::identity(d)?))
    }

    /// `[T_g]`.
    pub fn generator(d: usize, g: GenLabel) -> Result<Self> {
        Ok(Self::basis(&AffinePerm::generator(d, g)?))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in window-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&AffinePerm, &LaurentPoly<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AffinePerm) -> LaurentPoly<C> {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub(crate) fn add_term(&mut self, w: AffinePerm, coeff: &LaurentPoly<C>) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(w.d(), self.d);
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += coeff;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, coeff.clone());
            }
        }
    }

    fn add_scaled_assign(&mut self, scale: &LaurentPoly<C>, other: &HeckeElt<C>) {
        for (w, p) in &other.terms {
            self.add_term(w.clone(), &(scale * p));
        }
    }

    fn check_rank(&self, other: &HeckeElt<C>) -> Result<()> {
        if self.d != other.d {
            Err(Error::RankMismatch { left: self.d, right: other.d })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &HeckeElt<C>) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(&LaurentPoly::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElt<C>) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(&-LaurentPoly::one(), other);
        Ok(out)
    }

    pub fn scale(&self, p: &LaurentPoly<C>) -> Self {
        let mut out = Self::zero(self.d);
        out.add_scaled_assign(p, self);
        out
    }

    /// `[T_g] * self`.
    pub fn mult_gen_left(&self, g: GenLabel) -> Self {
        let v2 = LaurentPoly::v_pow(2);
        let v2m1 = &v2 - &LaurentPoly::one();
        let mut out = Self::zero(self.d);
        for (w, p) in &self.terms {
            let swapped = w.moved(g);
            let lowers = match g {
                GenLabel::Rho => false,
                _ => w.descent(g).expect("generator checked by moved"),
            };
            if lowers {
                out.add_term(swapped, &(&v2 * p));
                out.add_term(w.clone(), &(&v2m1 * p));
            } else {
                out.add_term(swapped, p);
            }
        }
        out
    }

    /// `[T_g]^{-1} * self`, using `T_g^{-1} = v^-2 T_g + (v^-2 - 1)` and
    /// `T_ρ^{-1} = T_ρ`.
    pub fn mult_gen_left_inverse(&self, g: GenLabel) -> Self {
        if g == GenLabel::Rho {
            return self.mult_gen_left(g);
        }
        let vm2 = LaurentPoly::v_pow(-2);
        let mut out = self.mult_gen_left(g).scale(&vm2);
        out.add_scaled_assign(&(&vm2 - &LaurentPoly::one()), self);
        out
    }

    /// Convolution product `self * other`.
    pub fn mult(&self, other: &HeckeElt<C>) -> Result<Self> {
        self.check_rank(other)?;
        let mut acc = Self::zero(self.d);
        for (x, p) in &self.terms {
            let factored = x.reduced_word();
            let mut y = other.clone();
            if factored.rho {
                y = y.mult_gen_left(GenLabel::Rho);
            }
            for &g in factored.word.iter().rev() {
                y = y.mult_gen_left(g);
            }
            acc.add_scaled_assign(p, &y);
        }
        Ok(acc)
    }

    /// Bar involution: `v -> v^-1` on coefficients and `T_g -> T_g^{-1}` on
    /// generators, extended multiplicatively through reduced words.
    pub fn bar(&self) -> Self {
        let mut acc = Self::zero(self.d);
        for (x, p) in &self.terms {
            let factored = x.reduced_word();
            let mut y = Self::basis(&AffinePerm::identity(self.d).expect("rank validated"));
            if factored.rho {
                y = y.mult_gen_left(GenLabel::Rho);
            }
            for &g in factored.word.iter().rev() {
                y = y.mult_gen_left_inverse(g);
            }
            acc.add_scaled_assign(&p.bar(), &y);
        }
        acc
    }

    /// Coefficients at `v = 1`. Keys of the element are kept even when the
    /// specialized coefficient vanishes.
    pub fn specialize_one(&self) -> BTreeMap<AffinePerm, C> {
        self.terms.iter().map(|(w, p)| (w.clone(), p.eval_one())).collect()
    }

    /// Machine form; terms sorted by window.
    pub fn to_json(&self) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| format!("{{\"w\":{},\"coeff\":{}}}", window_json(w.window()), laurent_to_json(p)))
            .collect();
        format!("{{\"d\":{},\"terms\":[{}]}}", self.d, terms.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let malformed = |reason: String| Error::MalformedRecord { line: 1, reason };
        let value: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let d = value
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| malformed("missing d".into()))? as usize;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing terms".into()))?;
        let mut out = Self::zero(d);
        for term in terms {
            let window = term
                .get("w")
                .and_then(int_array)
                .ok_or_else(|| malformed("term without integer window".into()))?;
            let w = AffinePerm::from_window(d, window)?;
            let coeff = term
                .get("coeff")
                .ok_or_else(|| malformed("term without coeff".into()))
                .and_then(|c| laurent_from_value::<C>(c).map_err(malformed))?;
            if coeff.is_zero() {
                return Err(malformed("zero coefficient stored".into()));
            }
            if out.terms.contains_key(&w) {
                return Err(malformed("duplicate window".into()));
            }
            out.terms.insert(w, coeff);
        }
        Ok(out)
    }
}

/// Name of a basis symbol: `[e]`, `[T1]`, `[Trho]` or `[w=...]`.
pub fn basis_symbol(w: &AffinePerm) -> String {
    if w.is_identity() {
        return "[e]".to_string();
    }
    let d = w.d();
    for g in GenLabel::simple(d).chain([GenLabel::Rho]) {
        if AffinePerm::generator(d, g).map(|x| &x == w).unwrap_or(false) {
            return format!("[{g}]");
        }
    }
    let parts: Vec<String> = w.window().iter().map(|x| x.to_string()).collect();
    format!("[w={}]", parts.join(","))
}

/// Human form, e.g. `v^2·[e] + (v^2-1)·[T1]`.
impl<C: Coefficient> fmt::Display for HeckeElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| {
                let sym = basis_symbol(w);
                if p.is_one() {
                    sym
                } else if p.terms().len() == 1 {
                    format!("{}·{sym}", p.to_compact_string())
                } else {
                    format!("({})·{sym}", p.to_compact_string())
                }
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

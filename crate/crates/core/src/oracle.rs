//! Slow, independent reference implementations used for cross-validation.
//!
//! Nothing here calls the length formula, descent test, reduced words,
//! Bruhat criterion, Hecke multiplication or KL recursion of the main
//! modules. Only element types, composition, generator windows and Laurent
//! arithmetic are shared.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::scalar::Coefficient;
use crate::weyl::{AffinePerm, GenLabel};

/// Upper bound on `ℓ(w)` accepted by [`Oracle::canonical`].
pub const DEFAULT_MAX_INTERVAL_LENGTH: usize = 8;

/// Length by a literal count over the monomial matrix entries in a box
/// wide enough to contain every contributing pair.
pub fn oracle_length(w: &AffinePerm) -> usize {
    let big = w.period() as i64;
    let d = w.d() as i64;
    let spread = w
        .window()
        .iter()
        .zip(1i64..)
        .map(|(&x, i)| (x - i).abs())
        .max()
        .unwrap_or(0);
    let radius = 4 * big + 2 * spread + 2;
    // (row, column) of every nonzero entry with row in the box.
    let entries: Vec<(i64, i64)> = (1 - radius..=big + radius).map(|r| (r, w.apply(r))).collect();
    let mut first = 0i64;
    for &(i, j) in entries.iter().filter(|(i, _)| (1..=big).contains(i)) {
        for &(k, l) in &entries {
            if i >= k && j < l {
                first += 1;
            }
        }
    }
    let below_one = entries.iter().filter(|&&(i, j)| i >= 1 && j < 1).count() as i64;
    let below_d = entries.iter().filter(|&&(i, j)| i >= d + 1 && j < d + 1).count() as i64;
    let twice = first - below_one - below_d;
    assert!(twice >= 0 && twice % 2 == 0, "odd count {twice} for {w}");
    (twice / 2) as usize
}

/// Memoizing reference engine for one rank.
pub struct Oracle {
    d: usize,
    gens: Vec<(GenLabel, AffinePerm)>,
    rho: AffinePerm,
    lengths: HashMap<AffinePerm, usize>,
    max_interval_length: usize,
}

impl Oracle {
    pub fn new(d: usize) -> Result<Self> {
        let gens = GenLabel::simple(d)
            .map(|g| AffinePerm::generator(d, g).map(|w| (g, w)))
            .collect::<Result<_>>()?;
        Ok(Oracle {
            d,
            gens,
            rho: AffinePerm::generator(d, GenLabel::Rho)?,
            lengths: HashMap::new(),
            max_interval_length: DEFAULT_MAX_INTERVAL_LENGTH,
        })
    }

    pub fn with_max_interval_length(mut self, bound: usize) -> Self {
        self.max_interval_length = bound;
        self
    }

    pub fn max_interval_length(&self) -> usize {
        self.max_interval_length
    }

    fn check(&self, w: &AffinePerm) -> Result<()> {
        if w.d() != self.d {
            Err(Error::RankMismatch { left: self.d, right: w.d() })
        } else {
            Ok(())
        }
    }

    pub fn length(&mut self, w: &AffinePerm) -> usize {
        if let Some(&l) = self.lengths.get(w) {
            return l;
        }
        let l = oracle_length(w);
        self.lengths.insert(w.clone(), l);
        l
    }

    fn gen(&self, g: GenLabel) -> &AffinePerm {
        match g {
            GenLabel::Rho => &self.rho,
            GenLabel::S(i) => &self.gens[i].1,
        }
    }

    fn right(&self, w: &AffinePerm, g: GenLabel) -> AffinePerm {
        w.compose(self.gen(g)).expect("same rank")
    }

    /// `w = base ∘ g_m ∘ ... ∘ g_1` with `base ∈ {e, ρ}`, found by stripping
    /// length-lowering moves, highest index first.
    fn factor(&mut self, w: &AffinePerm) -> (AffinePerm, Vec<GenLabel>) {
        let mut x = w.clone();
        let mut word = Vec::new();
        loop {
            let lx = self.length(&x);
            if lx == 0 {
                return (x, word);
            }
            let labels: Vec<GenLabel> = self.gens.iter().rev().map(|(g, _)| *g).collect();
            let g = labels
                .into_iter()
                .find(|&g| {
                    let y = self.right(&x, g);
                    self.length(&y) < lx
                })
                .expect("positive length element has a lowering move");
            x = self.right(&x, g);
            word.push(g);
        }
    }

    /// Bruhat interval below `w` as the set of all subword products of a
    /// reduced factorization (same length-zero part).
    pub fn lower_interval(&mut self, w: &AffinePerm) -> Result<HashSet<AffinePerm>> {
        self.check(w)?;
        let (base, word) = self.factor(w);
        // Products are formed as base ∘ g_m ∘ ... ∘ g_1 restricted to a subset.
        let letters: Vec<AffinePerm> = word.iter().rev().map(|&g| self.gen(g).clone()).collect();
        let mut out = HashSet::new();
        for mask in 0u64..(1u64 << letters.len()) {
            let mut x = base.clone();
            for (bit, letter) in letters.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    x = x.compose(letter)?;
                }
            }
            out.insert(x);
        }
        Ok(out)
    }

    /// Subword-property Bruhat comparison.
    pub fn bruhat(&mut self, y: &AffinePerm, w: &AffinePerm) -> Result<bool> {
        self.check(y)?;
        Ok(self.lower_interval(w)?.contains(y))
    }

    /// Iwahori rule: `T_g T_w = T_{w·g}` if the length rises, otherwise
    /// `(v^2 - 1) T_w + v^2 T_{w·g}`; `T_ρ T_w = T_{w·ρ}`.
    fn gen_left<C: Coefficient>(&mut self, g: GenLabel, x: &HeckeElt<C>) -> Result<HeckeElt<C>> {
        let mut out = HeckeElt::zero(self.d);
        for (w, p) in x.terms() {
            let moved = self.right(w, g);
            if g != GenLabel::Rho && self.length(&moved) < self.length(w) {
                out = out.add(&HeckeElt::term(moved, p * &LaurentPoly::v_pow(2)))?;
                out = out.add(&HeckeElt::term(w.clone(), p * &LaurentPoly::from_ints(&[(2, 1), (0, -1)])))?;
            } else {
                out = out.add(&HeckeElt::term(moved, p.clone()))?;
            }
        }
        Ok(out)
    }

    fn gen_left_inverse<C: Coefficient>(&mut self, g: GenLabel, x: &HeckeElt<C>) -> Result<HeckeElt<C>> {
        if g == GenLabel::Rho {
            return self.gen_left(g, x);
        }
        let moved = self.gen_left(g, x)?.scale(&LaurentPoly::v_pow(-2));
        moved.add(&x.scale(&LaurentPoly::from_ints(&[(-2, 1), (0, -1)])))
    }

    pub fn mult<C: Coefficient>(&mut self, a: &HeckeElt<C>, b: &HeckeElt<C>) -> Result<HeckeElt<C>> {
        if a.d() != b.d() {
            return Err(Error::RankMismatch { left: a.d(), right: b.d() });
        }
        let mut acc = HeckeElt::zero(self.d);
        for (x, p) in a.terms() {
            let (base, word) = self.factor(x);
            let mut y = b.clone();
            if base != AffinePerm::identity(self.d)? {
                y = self.gen_left(GenLabel::Rho, &y)?;
            }
            // [x] = T_{g_1} * ... * T_{g_m} * [base]
            for &g in word.iter().rev() {
                y = self.gen_left(g, &y)?;
            }
            acc = acc.add(&y.scale(p))?;
        }
        Ok(acc)
    }

    /// `bar([x])` expanded in the standard basis.
    fn bar_basis<C: Coefficient>(&mut self, x: &AffinePerm) -> Result<HeckeElt<C>> {
        let (base, word) = self.factor(x);
        let mut y = HeckeElt::basis(&base);
        for &g in word.iter().rev() {
            y = self.gen_left_inverse(g, &y)?;
        }
        Ok(y)
    }

    /// Canonical element by solving the bar-invariance system on the
    /// interval below `w`, longest elements first.
    pub fn canonical<C: Coefficient>(&mut self, w: &AffinePerm) -> Result<HeckeElt<C>> {
        self.check(w)?;
        let lw = self.length(w);
        if lw > self.max_interval_length {
            return Err(Error::IntervalTooLarge { length: lw, bound: self.max_interval_length });
        }
        let mut interval: Vec<AffinePerm> = self.lower_interval(w)?.into_iter().collect();
        interval.sort_by_key(|y| (std::cmp::Reverse(self.length(y)), y.clone()));
        // bar(T̂_x) in the normalized basis: r[x][y] = coefficient of T̂_y.
        let mut r: HashMap<AffinePerm, HeckeElt<C>> = HashMap::new();
        for x in &interval {
            r.insert(x.clone(), self.bar_basis(x)?);
        }
        let mut p: HashMap<AffinePerm, LaurentPoly<C>> = HashMap::new();
        p.insert(w.clone(), LaurentPoly::one());
        for y in &interval {
            if y == w {
                continue;
            }
            let ly = self.length(y) as i32;
            let mut q = LaurentPoly::zero();
            for x in &interval {
                let lx = self.length(x) as i32;
                if lx <= ly {
                    continue;
                }
                let rxy = r[x].coeff(y).shift(lx + ly);
                if rxy.is_zero() {
                    continue;
                }
                q += &(&p[x].bar() * &rxy);
            }
            debug_assert_eq!(q.bar(), -&q);
            p.insert(y.clone(), q.truncate_below(0));
        }
        let mut out = HeckeElt::zero(self.d);
        for (y, py) in p {
            let ly = self.length(&y) as i32;
            out = out.add(&HeckeElt::term(y, py.shift(-ly)))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type H = HeckeElt<BigInt>;
    type P = LaurentPoly<BigInt>;

    #[test]
    fn length_examples() {
        assert_eq!(oracle_length(&AffinePerm::identity(3).unwrap()), 0);
        for g in GenLabel::simple(3) {
            assert_eq!(oracle_length(&AffinePerm::generator(3, g).unwrap()), 1);
        }
        assert_eq!(oracle_length(&AffinePerm::from_window(3, vec![7, 2, 3, 4, 5, 0]).unwrap()), 4);
    }

    #[test]
    fn bruhat_examples() {
        let mut o = Oracle::new(3).unwrap();
        let e = AffinePerm::identity(3).unwrap();
        let s1 = AffinePerm::generator(3, GenLabel::S(1)).unwrap();
        let s2 = AffinePerm::generator(3, GenLabel::S(2)).unwrap();
        assert!(o.bruhat(&e, &s2).unwrap());
        assert!(!o.bruhat(&s1, &s2).unwrap());
        let rho = AffinePerm::generator(3, GenLabel::Rho).unwrap();
        assert!(!o.bruhat(&e, &rho).unwrap());
        assert!(matches!(o.bruhat(&AffinePerm::identity(4).unwrap(), &e), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn mult_examples() {
        let mut o = Oracle::new(3).unwrap();
        let e = AffinePerm::identity(3).unwrap();
        let s1 = AffinePerm::generator(3, GenLabel::S(1)).unwrap();
        let rho = AffinePerm::generator(3, GenLabel::Rho).unwrap();
        let sq = o.mult(&H::basis(&s1), &H::basis(&s1)).unwrap();
        let expected = H::term(e.clone(), P::v_pow(2))
            .add(&H::term(s1, P::from_ints(&[(2, 1), (0, -1)])))
            .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(o.mult(&H::basis(&rho), &H::basis(&rho)).unwrap(), H::basis(&e));
    }

    #[test]
    fn canonical_examples() {
        let mut o = Oracle::new(3).unwrap();
        let e = AffinePerm::identity(3).unwrap();
        assert_eq!(o.canonical::<BigInt>(&e).unwrap(), H::basis(&e));
        let s0 = AffinePerm::generator(3, GenLabel::S(0)).unwrap();
        let expected = H::term(s0.clone(), P::v_pow(-1)).add(&H::term(e, P::v_pow(-1))).unwrap();
        assert_eq!(o.canonical::<BigInt>(&s0).unwrap(), expected);
    }

    #[test]
    fn interval_bound_enforced() {
        let mut o = Oracle::new(3).unwrap().with_max_interval_length(2);
        let x = AffinePerm::from_window(3, vec![7, 2, 3, 4, 5, 0]).unwrap();
        assert_eq!(o.canonical::<BigInt>(&x), Err(Error::IntervalTooLarge { length: 4, bound: 2 }));
    }
}

//! Periodic symmetric permutations of the integers: the index set of the
//! Hecke algebra basis.
//!
//! An element is a bijection `w: Z -> Z` with `w(i + D) = w(i) + D` and
//! `w(1 - i) = 1 - w(i)`, where `D = 2d`, subject to an even crossing
//! parity. It is stored as the window `w(1), ..., w(D)`. Row `i` of the
//! associated monomial matrix carries its single `1` in column `w(i)`.
//!
//! Generators act on the right: the `g`-move sends `w` to `w ∘ g`, which
//! exchanges the images of the two rows singled out by `g` (together with
//! their mirror rows). This is the action of left multiplication by `[T_g]`
//! in the Hecke algebra.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Label of an algebra generator: `s_0, ..., s_d` or the length-zero `rho`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GenLabel {
    S(usize),
    Rho,
}

impl GenLabel {
    /// `s_0, ..., s_d` in index order (rho excluded).
    pub fn simple(d: usize) -> impl Iterator<Item = GenLabel> {
        (0..=d).map(GenLabel::S)
    }

    /// The two rows whose images the move exchanges, plus nothing else
    /// (mirror rows follow from symmetry). Rho exchanges rows 0 and 1 and
    /// rows d and d + 1; its pair is reported as `(0, d)`.
    pub fn rows(self, d: usize) -> (i64, i64) {
        let d = d as i64;
        match self {
            GenLabel::S(0) => (-1, 1),
            GenLabel::S(h) if h as i64 == d => (d - 1, d + 1),
            GenLabel::S(h) => (h as i64, h as i64 + 1),
            GenLabel::Rho => (0, d),
        }
    }

    fn check(self, d: usize) -> Result<()> {
        match self {
            GenLabel::S(i) if i > d => Err(Error::GeneratorIndex { index: i, d }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::S(i) => write!(f, "T{i}"),
            GenLabel::Rho => f.write_str("Trho"),
        }
    }
}

fn check_rank(d: usize) -> Result<()> {
    if d < 3 {
        Err(Error::RankTooSmall { d })
    } else {
        Ok(())
    }
}

/// Evaluates the periodic extension of a raw window at `i`.
fn eval_window(window: &[i64], i: i64) -> i64 {
    let big = window.len() as i64;
    let q = (i - 1).div_euclid(big);
    let r = (i - 1).rem_euclid(big);
    window[r as usize] + q * big
}

fn max_shift_up(window: &[i64]) -> i64 {
    window
        .iter()
        .enumerate()
        .map(|(j, &w)| w - (j as i64 + 1))
        .max()
        .unwrap_or(0)
        .max(0)
}

fn max_shift_down(window: &[i64]) -> i64 {
    window
        .iter()
        .enumerate()
        .map(|(j, &w)| (j as i64 + 1) - w)
        .max()
        .unwrap_or(0)
        .max(0)
}

/// `(N_0, N_d)`: the number of rows `i <= 0` with `w(i) >= 1`, and of rows
/// `i <= d` with `w(i) >= d + 1`.
fn crossing_counts(d: usize, window: &[i64]) -> (i64, i64) {
    let up = max_shift_up(window);
    let d = d as i64;
    // w(i) <= i + up, so only rows within `up` of the cut can cross it.
    let n0 = (1 - up..=0).filter(|&i| eval_window(window, i) >= 1).count() as i64;
    let nd = (d + 1 - up..=d).filter(|&i| eval_window(window, i) >= d + 1).count() as i64;
    (n0, nd)
}

/// Crossing parity `(N_0 + N_d) mod 2` of a window that need not be valid.
pub fn window_parity(d: usize, window: &[i64]) -> u8 {
    let (n0, nd) = crossing_counts(d, window);
    ((n0 + nd).rem_euclid(2)) as u8
}

/// An element of `Σ_d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffinePerm {
    d: usize,
    window: Vec<i64>,
}

/// Output of [`AffinePerm::reduced_word`]: `[w] = [T_{a_1}] * ... * [T_{a_m}] * [T_rho]^rho`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedWord {
    pub rho: bool,
    pub word: Vec<GenLabel>,
}

impl ReducedWord {
    /// Rebuilds the element by folding the moves onto `e` or `rho`.
    pub fn replay(&self, d: usize) -> Result<AffinePerm> {
        let mut x = AffinePerm::identity(d)?;
        if self.rho {
            x = x.moved(GenLabel::Rho);
        }
        for &g in self.word.iter().rev() {
            g.check(d)?;
            x = x.moved(g);
        }
        Ok(x)
    }
}

impl fmt::Display for ReducedWord {
    /// Product form, e.g. `T1 * T2 * T3 * T1 * Trho`; the unit renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        if self.rho {
            parts.push(GenLabel::Rho.to_string());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

impl AffinePerm {
    pub fn from_window(d: usize, window: Vec<i64>) -> Result<Self> {
        check_rank(d)?;
        let big = 2 * d;
        if window.len() != big {
            return Err(Error::WindowLength { expected: big, found: window.len() });
        }
        let mut seen = vec![false; big];
        for (pos, &w) in window.iter().enumerate() {
            let r = w.rem_euclid(big as i64) as usize;
            if seen[r] {
                return Err(Error::ResidueCover { index: pos + 1 });
            }
            seen[r] = true;
        }
        let target = big as i64 + 1;
        for i in 1..=big {
            let partner = big + 1 - i;
            if window[i - 1] + window[partner - 1] != target {
                return Err(Error::Symmetry { index: i, partner, target });
            }
        }
        let (n0, nd) = crossing_counts(d, &window);
        if (n0 + nd) % 2 != 0 {
            return Err(Error::Parity { count: n0 + nd });
        }
        Ok(AffinePerm { d, window })
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_rank(d)?;
        Ok(AffinePerm { d, window: (1..=2 * d as i64).collect() })
    }

    pub fn generator(d: usize, g: GenLabel) -> Result<Self> {
        check_rank(d)?;
        g.check(d)?;
        let big = 2 * d;
        let mut w: Vec<i64> = (1..=big as i64).collect();
        let di = d as i64;
        match g {
            GenLabel::S(0) => {
                w[0] = -1;
                w[1] = 0;
                w[big - 2] = big as i64 + 1;
                w[big - 1] = big as i64 + 2;
            }
            GenLabel::S(h) if h == d => {
                w.swap(d - 2, d);
                w.swap(d - 1, d + 1);
            }
            GenLabel::S(h) => {
                w.swap(h - 1, h);
                w.swap(big - h - 1, big - h);
            }
            GenLabel::Rho => {
                w[0] = 0;
                w[d - 1] = di + 1;
                w[d] = di;
                w[big - 1] = big as i64 + 1;
            }
        }
        Ok(AffinePerm { d, window: w })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The period `D = 2d`.
    pub fn period(&self) -> usize {
        2 * self.d
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(j, &w)| w == j as i64 + 1)
    }

    pub fn apply(&self, i: i64) -> i64 {
        eval_window(&self.window, i)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &AffinePerm) -> Result<AffinePerm> {
        if self.d != other.d {
            return Err(Error::RankMismatch { left: self.d, right: other.d });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &AffinePerm) -> AffinePerm {
        AffinePerm {
            d: self.d,
            window: other.window.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> AffinePerm {
        let big = self.period() as i64;
        let mut inv = vec![0i64; self.period()];
        for (pos, &w) in self.window.iter().enumerate() {
            // w(pos + 1) = w lies in residue slot r with shift q.
            let r = (w - 1).rem_euclid(big);
            let q = (w - 1).div_euclid(big);
            inv[r as usize] = pos as i64 + 1 - q * big;
        }
        AffinePerm { d: self.d, window: inv }
    }

    /// The `g`-move `w ∘ g`. Panics if `g` is out of range for the rank.
    pub fn moved(&self, g: GenLabel) -> AffinePerm {
        let gen = AffinePerm::generator(self.d, g).expect("generator out of range");
        self.compose_unchecked(&gen)
    }

    /// `max_j (w(j) - j)` over the window, clamped at zero.
    pub fn shift_up(&self) -> i64 {
        max_shift_up(&self.window)
    }

    pub fn shift_down(&self) -> i64 {
        max_shift_down(&self.window)
    }

    /// Orbit dimension
    /// `½ (#{k <= i, i ∈ [1, D] : w(k) > w(i)} - #{i >= 1 : w(i) <= 0} - #{i >= d+1 : w(i) <= d})`.
    pub fn length(&self) -> usize {
        let big = self.period() as i64;
        let up = self.shift_up();
        let down = self.shift_down();
        let d = self.d as i64;
        let mut pairs = 0i64;
        for i in 1..=big {
            let wi = self.apply(i);
            // w(k) <= k + up, so w(k) > w(i) forces k > w(i) - up.
            for k in (wi - up + 1)..i {
                if self.apply(k) > wi {
                    pairs += 1;
                }
            }
        }
        // w(i) >= i - down bounds both correction scans.
        let below_one = (1..=down).filter(|&i| self.apply(i) <= 0).count() as i64;
        let below_d = (d + 1..=d + down).filter(|&i| self.apply(i) <= d).count() as i64;
        let twice = pairs - below_one - below_d;
        debug_assert!(twice >= 0 && twice % 2 == 0, "odd dimension count {twice}");
        (twice / 2) as usize
    }

    /// `(N_0 + N_d) mod 2`; always 0 for a validated element.
    pub fn parity(&self) -> u8 {
        window_parity(self.d, &self.window)
    }

    /// `N_0 mod 2`: 1 exactly on the coset `rho · W` of the Coxeter part.
    pub fn rho_component(&self) -> u8 {
        (crossing_counts(self.d, &self.window).0 % 2) as u8
    }

    /// Whether the `g`-move lowers the length, read off the two designated
    /// rows `(k, l) = (w(a), w(b))`: descent iff `k > l`.
    pub fn descent(&self, g: GenLabel) -> Result<bool> {
        if g == GenLabel::Rho {
            return Err(Error::RhoHasNoDescent);
        }
        g.check(self.d)?;
        let (a, b) = g.rows(self.d);
        Ok(self.apply(a) > self.apply(b))
    }

    /// Greedy descent stripping, lowest generator index first.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut word = Vec::with_capacity(self.length());
        let mut x = self.clone();
        loop {
            let next = GenLabel::simple(self.d).find(|&g| x.descent(g).unwrap_or(false));
            match next {
                Some(g) => {
                    word.push(g);
                    x = x.moved(g);
                }
                None => break,
            }
        }
        ReducedWord { rho: !x.is_identity(), word }
    }

    /// `#{k >= i : w(k) <= j}`, the lower-left block count of the matrix.
    fn block_count(&self, i: i64, j: i64) -> i64 {
        let down = self.shift_down();
        (i..=j + down).filter(|&k| self.apply(k) <= j).count() as i64
    }

    /// Column-sum dominance on matching rho-components.
    pub fn bruhat_leq(&self, other: &AffinePerm) -> Result<bool> {
        if self.d != other.d {
            return Err(Error::RankMismatch { left: self.d, right: other.d });
        }
        if self.rho_component() != other.rho_component() {
            return Ok(false);
        }
        let big = self.period() as i64;
        let spread = |w: &AffinePerm| w.shift_up().max(w.shift_down());
        let reach = 2 * (spread(self) + spread(other) + big);
        for i in 1..=big {
            for j in (i - 1 - reach)..i {
                if self.block_count(i, j) > other.block_count(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All elements of length at most `max_len`, sorted by (length, window).
    pub fn enumerate(d: usize, max_len: usize) -> Result<Vec<AffinePerm>> {
        Ok(Self::enumerate_with_depth(d, max_len)?.into_iter().map(|(w, _)| w).collect())
    }

    /// Breadth-first closure of `{e, rho}` under all generator moves, each
    /// element tagged with its distance from `{e, rho}`.
    pub fn enumerate_with_depth(d: usize, max_len: usize) -> Result<Vec<(AffinePerm, usize)>> {
        let e = AffinePerm::identity(d)?;
        let mut depth: HashMap<AffinePerm, usize> = HashMap::new();
        let mut shell: Vec<AffinePerm> = Vec::new();
        for x in [e.clone(), e.moved(GenLabel::Rho)] {
            if depth.insert(x.clone(), 0).is_none() {
                shell.push(x);
            }
        }
        for level in 1..=max_len {
            let mut next = Vec::new();
            for x in &shell {
                for g in GenLabel::simple(d) {
                    let y = x.moved(g);
                    for z in [y.moved(GenLabel::Rho), y] {
                        if !depth.contains_key(&z) {
                            depth.insert(z.clone(), level);
                            next.push(z);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            shell = next;
        }
        let mut out: Vec<_> = depth.into_iter().collect();
        out.sort_by(|(a, da), (b, db)| da.cmp(db).then_with(|| a.window.cmp(&b.window)));
        Ok(out)
    }

    /// Machine form `{"d":3,"w":[...]}`.
    pub fn to_json(&self) -> String {
        format!("{{\"d\":{},\"w\":{}}}", self.d, window_json(&self.window))
    }

    pub fn from_json(text: &str) -> Result<AffinePerm> {
        let malformed = |reason: &str| Error::MalformedRecord { line: 1, reason: reason.to_string() };
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| malformed(&e.to_string()))?;
        let d = value.get("d").and_then(|d| d.as_u64()).ok_or_else(|| malformed("missing d"))?;
        let w = value.get("w").ok_or_else(|| malformed("missing w"))?;
        let window = crate::machine::int_array(w).ok_or_else(|| malformed("w is not an integer array"))?;
        AffinePerm::from_window(d as usize, window)
    }

    /// Text form `d=3;w=[7,2,3,4,5,0]`.
    pub fn parse_text(text: &str) -> Result<AffinePerm> {
        let malformed = |reason: &str| Error::MalformedRecord { line: 1, reason: reason.to_string() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (dpart, wpart) = compact.split_once(';').ok_or_else(|| malformed("expected `d=..;w=[..]`"))?;
        let d = dpart
            .strip_prefix("d=")
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| malformed("bad rank"))?;
        let inner = wpart
            .strip_prefix("w=[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| malformed("bad window"))?;
        let window = parse_int_list(inner).ok_or_else(|| malformed("bad window entry"))?;
        AffinePerm::from_window(d, window)
    }
}

pub(crate) fn window_json(window: &[i64]) -> String {
    let parts: Vec<String> = window.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parses `a,b,c` into integers; an empty string is an empty list.
pub fn parse_int_list(text: &str) -> Option<Vec<i64>> {
    if text.trim().is_empty() {
        return Some(Vec::new());
    }
    text.split(',').map(|s| s.trim().parse::<i64>().ok()).collect()
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={};w={}", self.d, window_json(&self.window))
    }
}

//! Canonical basis `{w}` and its polynomials `P_{y,w}`.
//!
//! Normalization: with `T̂_y = v^{-ℓ(y)} [y]`, the canonical element is the
//! unique bar-invariant `C_w = T̂_w + Σ_{y < w} P_{y,w} T̂_y` with
//! `P_{y,w} ∈ v^{-1} Z[v^{-1}]`. It is built by the recursion
//!
//! ```text
//! C_s * C_v = C_{w} + Σ_{z < v, z·s < z} μ(z, v) C_z,   w = v·s > v,
//! ```
//!
//! with `C_s = v^{-1}([T_s] + [e])` and `μ` the `v^{-1}` coefficient. On the
//! rho coset, `C_{w·ρ} = [T_ρ] * C_w`.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::machine::{int_array, laurent_from_value, laurent_to_json};
use crate::scalar::Coefficient;
use crate::weyl::{window_json, AffinePerm, GenLabel};

type Column<C> = BTreeMap<AffinePerm, LaurentPoly<C>>;

/// Memo of canonical-basis columns `w -> (y -> P_{y,w})`.
///
/// A column is either absent or complete, so a loaded or merged table never
/// holds partial information about a `w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KlTable<C> {
    d: usize,
    columns: BTreeMap<AffinePerm, Column<C>>,
}

impl<C: Coefficient> KlTable<C> {
    pub fn new(d: usize) -> Self {
        KlTable { d, columns: BTreeMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, w: &AffinePerm) -> Option<&Column<C>> {
        self.columns.get(w)
    }

    fn check_rank(&self, w: &AffinePerm) -> Result<()> {
        if w.d() != self.d {
            Err(Error::RankMismatch { left: self.d, right: w.d() })
        } else {
            Ok(())
        }
    }

    /// `C_w` expanded in the standard basis `[y]`.
    pub fn canonical(&mut self, w: &AffinePerm) -> Result<HeckeElt<C>> {
        self.check_rank(w)?;
        if let Some(col) = self.columns.get(w) {
            return Ok(column_to_element(self.d, col));
        }
        let elt = if w.rho_component() == 1 {
            self.canonical(&w.moved(GenLabel::Rho))?.mult_gen_left(GenLabel::Rho)
        } else if w.is_identity() {
            HeckeElt::basis(w)
        } else {
            let s = GenLabel::simple(self.d)
                .find(|&g| w.descent(g).unwrap_or(false))
                .expect("non-identity element has a descent");
            let lower = w.moved(s);
            let c_lower = self.canonical(&lower)?;
            let mut c = c_lower
                .mult_gen_left(s)
                .add(&c_lower)?
                .scale(&LaurentPoly::v_pow(-1));
            let corrections: Vec<(AffinePerm, C)> = self.columns[&lower]
                .iter()
                .filter(|(z, _)| **z != lower && z.descent(s).unwrap_or(false))
                .map(|(z, p)| (z.clone(), p.coeff(-1)))
                .filter(|(_, mu)| !mu.is_zero())
                .collect();
            for (z, mu) in corrections {
                let cz = self.canonical(&z)?;
                c = c.sub(&cz.scale(&LaurentPoly::constant(mu)))?;
            }
            c
        };
        let col: Column<C> = elt
            .terms()
            .map(|(y, coeff)| (y.clone(), coeff.shift(y.length() as i32)))
            .collect();
        debug_assert!(col.get(w).map(|p| p.is_one()).unwrap_or(false));
        self.columns.insert(w.clone(), col);
        Ok(elt)
    }

    /// `P_{y,w}`; zero unless `y ⪯ w`.
    pub fn polynomial(&mut self, y: &AffinePerm, w: &AffinePerm) -> Result<LaurentPoly<C>> {
        self.check_rank(y)?;
        self.canonical(w)?;
        Ok(self.columns[w].get(y).cloned().unwrap_or_else(LaurentPoly::zero))
    }

    /// Coefficient of `v^-1` in `P_{y,w}`.
    pub fn mu(&mut self, y: &AffinePerm, w: &AffinePerm) -> Result<C> {
        Ok(self.polynomial(y, w)?.coeff(-1))
    }

    /// Computes every column with `ℓ(w) <= max_len`.
    pub fn fill_upto(&mut self, max_len: usize) -> Result<()> {
        for w in AffinePerm::enumerate(self.d, max_len)? {
            self.canonical(&w)?;
        }
        Ok(())
    }

    /// All stored `(y, w, P_{y,w})`, sorted by `(ℓ(w), w, y)`.
    pub fn entries(&self) -> Vec<(&AffinePerm, &AffinePerm, &LaurentPoly<C>)> {
        let mut ws: Vec<&AffinePerm> = self.columns.keys().collect();
        ws.sort_by_key(|w| (w.length(), *w));
        ws.into_iter()
            .flat_map(|w| self.columns[w].iter().map(move |(y, p)| (y, w, p)))
            .collect()
    }

    /// Checks the stored invariants: unit diagonal, off-diagonal entries in
    /// `v^-1 Z[v^-1]` and supported on `y ⪯ w`.
    pub fn validate(&self) -> Result<()> {
        for (w, col) in &self.columns {
            match col.get(w) {
                Some(p) if p.is_one() => {}
                _ => return Err(Error::InvalidTable(format!("P(w,w) != 1 for {w}"))),
            }
            for (y, p) in col {
                if y == w {
                    continue;
                }
                if p.is_zero() || !p.in_vinv() {
                    return Err(Error::InvalidTable(format!("P({y}, {w}) = {p} not in v^-1 Z[v^-1]")));
                }
                if !y.bruhat_leq(w)? {
                    return Err(Error::InvalidTable(format!("P({y}, {w}) stored but {y} is not below {w}")));
                }
            }
        }
        Ok(())
    }

    /// Adds the columns of `other`. Columns present in both must agree.
    pub fn merge(&mut self, other: &KlTable<C>) -> Result<()> {
        if other.d != self.d {
            return Err(Error::RankMismatch { left: self.d, right: other.d });
        }
        for (w, col) in &other.columns {
            match self.columns.get(w) {
                Some(mine) if mine != col => return Err(Error::MergeConflict),
                Some(_) => {}
                None => {
                    self.columns.insert(w.clone(), col.clone());
                }
            }
        }
        Ok(())
    }

    /// One record per line: `{"d":3,"y":[...],"w":[...],"p":[[-1,1]]}`.
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        for (y, w, p) in self.entries() {
            writeln!(
                out,
                "{{\"d\":{},\"y\":{},\"w\":{},\"p\":{}}}",
                self.d,
                window_json(y.window()),
                window_json(w.window()),
                laurent_to_json(p)
            )?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.save(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads records written by [`KlTable::save`] and re-validates them.
    pub fn load<R: BufRead>(input: R, d: usize) -> Result<Self> {
        let mut table = KlTable::new(d);
        for (idx, line) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (y, w, p) = parse_record::<C>(&line, d)
                .map_err(|reason| Error::MalformedRecord { line: line_no, reason })?;
            let col = table.columns.entry(w).or_default();
            if col.insert(y, p).is_some() {
                return Err(Error::MalformedRecord { line: line_no, reason: "duplicate pair".into() });
            }
        }
        table.validate()?;
        Ok(table)
    }

    pub fn from_jsonl(text: &str, d: usize) -> Result<Self> {
        Self::load(text.as_bytes(), d)
    }
}

fn parse_record<C: Coefficient>(line: &str, d: usize) -> std::result::Result<(AffinePerm, AffinePerm, LaurentPoly<C>), String> {
    let value: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let rd = value.get("d").and_then(Value::as_u64).ok_or("missing d")? as usize;
    if rd != d {
        return Err(format!("rank {rd} does not match table rank {d}"));
    }
    let window = |key: &str| -> std::result::Result<AffinePerm, String> {
        let win = value.get(key).and_then(int_array).ok_or(format!("missing integer window {key}"))?;
        AffinePerm::from_window(d, win).map_err(|e| e.to_string())
    };
    let y = window("y")?;
    let w = window("w")?;
    let p = laurent_from_value::<C>(value.get("p").ok_or("missing p")?)?;
    Ok((y, w, p))
}

fn column_to_element<C: Coefficient>(d: usize, col: &Column<C>) -> HeckeElt<C> {
    let mut out = HeckeElt::zero(d);
    for (y, p) in col {
        out.add_term(y.clone(), &p.shift(-(y.length() as i32)));
    }
    out
}

/// Structure constants of `x` in the canonical basis: `x = Σ c_z C_z`.
///
/// Peels off the longest remaining basis symbol; its normalized coefficient
/// is the next structure constant because `C_z - T̂_z` only involves
/// strictly shorter elements.
pub fn expand_in_canonical<C: Coefficient>(
    table: &mut KlTable<C>,
    x: &HeckeElt<C>,
) -> Result<BTreeMap<AffinePerm, LaurentPoly<C>>> {
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.terms().map(|(z, _)| z).max_by_key(|z| (z.length(), (*z).clone())).cloned() {
        let c = rest.coeff(&top).shift(top.length() as i32);
        let cz = table.canonical(&top)?;
        rest = rest.sub(&cz.scale(&c))?;
        out.insert(top, c);
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositivityViolation<C> {
    pub x: AffinePerm,
    pub y: AffinePerm,
    pub z: AffinePerm,
    pub coeff: LaurentPoly<C>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositivityReport<C> {
    pub d: usize,
    pub max_len: usize,
    pub pairs: usize,
    pub constants: usize,
    /// Coefficients outside `N[v, v^-1]`.
    pub negative: Vec<PositivityViolation<C>>,
    /// Coefficients that are not bar-invariant (impossible for a correct basis).
    pub asymmetric: Vec<PositivityViolation<C>>,
}

impl<C> PositivityReport<C> {
    pub fn passed(&self) -> bool {
        self.negative.is_empty() && self.asymmetric.is_empty()
    }
}

/// Expands `C_x * C_y` for all `x, y` with length at most `max_len` and
/// audits every coefficient for positivity.
pub fn structure_positivity<C: Coefficient>(
    table: &mut KlTable<C>,
    max_len: usize,
) -> Result<PositivityReport<C>> {
    let d = table.d();
    let elems = AffinePerm::enumerate(d, max_len)?;
    let mut report = PositivityReport {
        d,
        max_len,
        pairs: 0,
        constants: 0,
        negative: Vec::new(),
        asymmetric: Vec::new(),
    };
    let canon: Vec<HeckeElt<C>> = elems.iter().map(|w| table.canonical(w)).collect::<Result<_>>()?;
    for (x, cx) in elems.iter().zip(&canon) {
        for (y, cy) in elems.iter().zip(&canon) {
            let product = cx.mult(cy)?;
            report.pairs += 1;
            for (z, c) in expand_in_canonical(table, &product)? {
                report.constants += 1;
                let witness = || PositivityViolation { x: x.clone(), y: y.clone(), z: z.clone(), coeff: c.clone() };
                if !c.is_nonneg() {
                    report.negative.push(witness());
                }
                if !c.is_bar_invariant() {
                    report.asymmetric.push(witness());
                }
            }
        }
    }
    Ok(report)
}

//! Checks the extended affine Hecke presentation of type D on the
//! generators `[T_0], ..., [T_d], [T_ρ]` as exact algebra identities.

use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::scalar::Coefficient;
use crate::weyl::{AffinePerm, GenLabel};

/// A linear combination of generator words, `Σ c_i · T_{w_i}`.
type Side = Vec<(LaurentPoly<i64>, Vec<GenLabel>)>;

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    lhs: Side,
    rhs: Side,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationReport {
    pub d: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.holds { "PASS" } else { "FAIL" }, c.name)?;
        }
        Ok(())
    }
}

fn word(gs: &[GenLabel]) -> Side {
    vec![(LaurentPoly::one(), gs.to_vec())]
}

fn name_of(gs: &[GenLabel]) -> String {
    if gs.is_empty() {
        return "1".into();
    }
    gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("")
}

fn equal_words(lhs: &[GenLabel], rhs: &[GenLabel]) -> Relation {
    Relation {
        name: format!("{} = {}", name_of(lhs), name_of(rhs)),
        lhs: word(lhs),
        rhs: word(rhs),
    }
}

/// The relation list of the presentation, instantiated at rank `d`:
/// quadratic relations, braid and commutation relations of the type D
/// diagram as listed, and the rho-conjugation relations, plus `T_ρ² = 1`.
pub fn presentation(d: usize) -> Result<Vec<Relation>> {
    if d < 3 {
        return Err(Error::RankTooSmall { d });
    }
    let s = GenLabel::S;
    let rho = GenLabel::Rho;
    let mut rels = Vec::new();
    for i in 0..=d {
        rels.push(Relation {
            name: format!("T{i}T{i} = (v^2-1)T{i} + v^2"),
            lhs: word(&[s(i), s(i)]),
            rhs: vec![
                (LaurentPoly::from_ints(&[(2, 1), (0, -1)]), vec![s(i)]),
                (LaurentPoly::v_pow(2), vec![]),
            ],
        });
    }
    for j in 1..d - 1 {
        rels.push(equal_words(&[s(j), s(j + 1), s(j)], &[s(j + 1), s(j), s(j + 1)]));
    }
    for i in 1..d {
        for j in i + 2..d {
            rels.push(equal_words(&[s(i), s(j)], &[s(j), s(i)]));
        }
    }
    // T_0 commutes with T_k (k != 2), T_d with T_l (l != d-2); the pair
    // (0, d) is listed once.
    for k in 1..=d {
        if k != 2 {
            rels.push(equal_words(&[s(0), s(k)], &[s(k), s(0)]));
        }
    }
    for l in 1..d {
        if l != d - 2 {
            rels.push(equal_words(&[s(d), s(l)], &[s(l), s(d)]));
        }
    }
    rels.push(equal_words(&[s(0), s(2), s(0)], &[s(2), s(0), s(2)]));
    rels.push(equal_words(&[s(d - 2), s(d), s(d - 2)], &[s(d), s(d - 2), s(d)]));
    rels.push(equal_words(&[s(0)], &[rho, s(1), rho]));
    rels.push(equal_words(&[s(d)], &[rho, s(d - 1), rho]));
    for i in 2..d - 1 {
        rels.push(equal_words(&[s(i)], &[rho, s(i), rho]));
    }
    rels.push(equal_words(&[rho, rho], &[]));
    Ok(rels)
}

fn evaluate<C, F>(d: usize, side: &Side, act: &F) -> Result<HeckeElt<C>>
where
    C: Coefficient,
    F: Fn(GenLabel, &HeckeElt<C>) -> HeckeElt<C>,
{
    let unit = HeckeElt::<C>::basis(&AffinePerm::identity(d)?);
    let mut acc = HeckeElt::zero(d);
    for (coeff, gs) in side {
        let mut x = unit.clone();
        for &g in gs.iter().rev() {
            x = act(g, &x);
        }
        let coeff = LaurentPoly::<C>::from_terms(coeff.terms().iter().map(|(k, c)| (*k, C::from_int(*c))));
        acc = acc.add(&x.scale(&coeff))?;
    }
    Ok(acc)
}

/// Evaluates every relation of [`presentation`] with the engine's
/// generator action.
pub fn verify_relations<C: Coefficient>(d: usize) -> Result<RelationReport> {
    verify_relations_with::<C, _>(d, |g, x| x.mult_gen_left(g))
}

/// Same as [`verify_relations`] with a caller-supplied left action of the
/// generators, e.g. to confirm that a corrupted generator is detected.
pub fn verify_relations_with<C, F>(d: usize, act: F) -> Result<RelationReport>
where
    C: Coefficient,
    F: Fn(GenLabel, &HeckeElt<C>) -> HeckeElt<C>,
{
    let mut checks = Vec::new();
    for rel in presentation(d)? {
        let lhs = evaluate::<C, F>(d, &rel.lhs, &act)?;
        let rhs = evaluate::<C, F>(d, &rel.rhs, &act)?;
        checks.push(RelationCheck { name: rel.name, holds: lhs == rhs });
    }
    Ok(RelationReport { d, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rank_gate() {
        assert!(matches!(verify_relations::<BigInt>(2), Err(Error::RankTooSmall { d: 2 })));
    }

    #[test]
    fn larger_ranks_pass() {
        for d in [4, 5, 6] {
            let report = verify_relations::<BigInt>(d).unwrap();
            assert!(report.all_hold(), "d={d}:\n{report}");
        }
    }

    #[test]
    fn rank_four_includes_rho_fixing_t2() {
        let report = verify_relations::<BigInt>(4).unwrap();
        let c = report.checks.iter().find(|c| c.name == "T2 = TrhoT2Trho").unwrap();
        assert!(c.holds);
    }

    #[test]
    fn rank_three_commutation_of_t0_t3_fails() {
        // At d = 3 the listed commutation T0T3 = T3T0 contradicts
        // T0 = TrhoT1Trho, T3 = TrhoT2Trho and the T1/T2 braid relation.
        let report = verify_relations::<BigInt>(3).unwrap();
        let failing: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["T0T3 = T3T0"]);
    }

    #[test]
    fn corrupted_generator_is_detected() {
        // Replace the action of T1 with that of T2.
        let report = verify_relations_with::<BigInt, _>(4, |g, x| match g {
            GenLabel::S(1) => x.mult_gen_left(GenLabel::S(2)),
            other => x.mult_gen_left(other),
        })
        .unwrap();
        assert!(!report.all_hold());
    }

    #[test]
    fn corrupted_window_is_detected() {
        // Left action through a wrong window for T_rho (rows 0<->1 only on
        // one side is not in Σ_d, so use s_2's window instead).
        let fake = AffinePerm::generator(4, GenLabel::S(2)).unwrap();
        let report = verify_relations_with::<BigInt, _>(4, |g, x| match g {
            GenLabel::Rho => {
                let mut out = HeckeElt::zero(4);
                for (w, p) in x.terms() {
                    out = out.add(&HeckeElt::term(w.compose(&fake).unwrap(), p.clone())).unwrap();
                }
                out
            }
            other => x.mult_gen_left(other),
        })
        .unwrap();
        assert!(!report.all_hold());
    }
}

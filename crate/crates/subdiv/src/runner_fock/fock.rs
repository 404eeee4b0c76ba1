//! The charged level-`l` q-Fock space, the operators `f_i^{(r)}` and the
//! canonical basis `G_e(μ)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{check_rank, check_vertex, Error, Result};
use crate::partition_core::{dominance_key, dominates, Partition, residue_at, residue_content, Multipartition, Node};

/// Environment variable that pins the `f_i` exponent convention.
pub const CONVENTION_ENV: &str = "SUBDIV_CONVENTION";

/// Which nodes enter the exponent of `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Later components, or the same component and a later row.
    Below,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub side: Side,
    /// `+1` or `-1`: the sign applied to the node statistic.
    pub sign: i64,
}

impl Convention {
    /// The convention that reproduces the reference expansion in
    /// [`super::reference`].
    pub const CALIBRATED: Convention = Convention { side: Side::Above, sign: 1 };

    pub const ALL: [Convention; 4] = [
        Convention { side: Side::Below, sign: 1 },
        Convention { side: Side::Below, sign: -1 },
        Convention { side: Side::Above, sign: 1 },
        Convention { side: Side::Above, sign: -1 },
    ];

    /// Reads [`CONVENTION_ENV`], falling back to [`Convention::CALIBRATED`].
    pub fn from_env() -> Result<Convention> {
        match std::env::var(CONVENTION_ENV) {
            Ok(s) if !s.trim().is_empty() => s.parse(),
            _ => Ok(Convention::CALIBRATED),
        }
    }

    fn counts(&self, b: Node, a: Node) -> bool {
        match self.side {
            Side::Below => b > a,
            Side::Above => b < a,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Below => "below",
            Side::Above => "above",
        };
        write!(f, "{side}{}", if self.sign > 0 { '+' } else { '-' })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (side, sign) = s.split_at(s.len().saturating_sub(1));
        let side = match side {
            "below" => Side::Below,
            "above" => Side::Above,
            _ => return Err(Error::Convention(format!("unknown convention {s:?}; expected below+, below-, above+ or above-"))),
        };
        let sign = match sign {
            "+" => 1,
            "-" => -1,
            _ => return Err(Error::Convention(format!("convention {s:?} needs a trailing + or -"))),
        };
        Ok(Convention { side, sign })
    }
}

/// A finitely supported `Z[q, q^-1]`-combination of multipartitions,
/// serialized as `(shape, coefficient)` pairs in display order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(Multipartition, LaurentPoly)>", from = "Vec<(Multipartition, LaurentPoly)>")]
pub struct FockVector {
    terms: BTreeMap<Multipartition, LaurentPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(mu: Multipartition) -> Self {
        let mut v = FockVector::zero();
        v.add_term(mu, &LaurentPoly::one());
        v
    }

    pub fn add_term(&mut self, mu: Multipartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }

    /// `self -= c · other`.
    pub fn sub_scaled(&mut self, other: &FockVector, c: &LaurentPoly) {
        for (mu, p) in &other.terms {
            let slot = self.terms.entry(mu.clone()).or_default();
            *slot -= &(c * p);
        }
        self.terms.retain(|_, p| !p.is_zero());
    }

    pub fn coeff(&self, mu: &Multipartition) -> LaurentPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing multipartition order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Multipartition, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Terms in display order: decreasing lexicographic on the components.
    pub fn sorted_terms(&self) -> Vec<(&Multipartition, &LaurentPoly)> {
        self.terms.iter().rev().collect()
    }
}

impl From<FockVector> for Vec<(Multipartition, LaurentPoly)> {
    fn from(v: FockVector) -> Self {
        v.terms.into_iter().rev().collect()
    }
}

impl From<Vec<(Multipartition, LaurentPoly)>> for FockVector {
    fn from(terms: Vec<(Multipartition, LaurentPoly)>) -> Self {
        let mut v = FockVector::zero();
        for (mu, p) in terms {
            v.add_term(mu, &p);
        }
        v
    }
}

impl fmt::Display for FockVector {
    /// One term per line: `coefficient |[..], [..]⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mu, p) in self.sorted_terms() {
            writeln!(f, "{p} |{}⟩", mu.bracketed())?;
        }
        Ok(())
    }
}

fn check_setup(e: usize, charge: &[usize]) -> Result<()> {
    check_rank(e, 2)?;
    if charge.is_empty() {
        return Err(Error::ChargeLength { charge: 0, components: 1 });
    }
    charge.iter().try_for_each(|&x| check_vertex(x, e))
}

fn nodes_of_residue(nodes: Vec<Node>, charge: &[usize], e: usize, i: usize) -> Vec<Node> {
    nodes.into_iter().filter(|a| residue_at(charge[a.m - 1], a.r, a.c, e) == i).collect()
}

/// Exponent of `f_i^{(r)}` adding the set `subset` of addable `i`-nodes.
fn divided_exponent(subset: &[Node], addable: &[Node], removable: &[Node], conv: Convention) -> i64 {
    let mut stat = 0i64;
    for &a in subset {
        stat += addable.iter().filter(|&&b| !subset.contains(&b) && conv.counts(b, a)).count() as i64;
        stat -= removable.iter().filter(|&&b| conv.counts(b, a)).count() as i64;
    }
    conv.sign * stat
}

fn combinations<T: Copy>(items: &[T], r: usize, out: &mut Vec<Vec<T>>, cur: &mut Vec<T>, start: usize) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for j in start..items.len() {
        if items.len() - j < r - cur.len() {
            break;
        }
        cur.push(items[j]);
        combinations(items, r, out, cur, j + 1);
        cur.pop();
    }
}

fn subsets<T: Copy>(items: &[T], r: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    combinations(items, r, &mut out, &mut Vec::with_capacity(r), 0);
    out
}

/// `f_i` applied `power` times, then divided by `[power]!`, asserting exact
/// divisibility of every coefficient.
pub fn f_action(v: &FockVector, i: usize, power: u32, e: usize, charge: &[usize], conv: Convention) -> Result<FockVector> {
    check_setup(e, charge)?;
    check_vertex(i, e)?;
    let mut cur = v.clone();
    for _ in 0..power {
        let mut next = FockVector::zero();
        for (mu, p) in cur.terms() {
            let addable = nodes_of_residue(mu.addable(), charge, e, i);
            let removable = nodes_of_residue(mu.removable(), charge, e, i);
            for &a in &addable {
                let k = divided_exponent(&[a], &addable, &removable, conv);
                next.add_term(mu.with_node(a), &p.shift(k));
            }
        }
        cur = next;
    }
    let fact = LaurentPoly::quantum_factorial(power);
    let mut out = FockVector::zero();
    for (mu, p) in cur.terms() {
        out.add_term(mu.clone(), &p.div_exact(&fact)?);
    }
    Ok(out)
}

/// Memoizing canonical-basis engine for one `(e, κ, convention)`.
///
/// The level-`l` space is treated as the tensor product of the level-1
/// space of charge `κ_1` with the level-`(l-1)` space of charge
/// `(κ_2, …, κ_l)`, which has its own engine in `tail`.
#[derive(Debug, Clone)]
pub struct FockEngine {
    e: usize,
    charge: Vec<usize>,
    conv: Convention,
    canonical: HashMap<Multipartition, Result<FockVector>>,
    tail: Option<Box<FockEngine>>,
}

impl FockEngine {
    pub fn new(e: usize, charge: &[usize], conv: Convention) -> Result<Self> {
        check_setup(e, charge)?;
        let tail = match charge.len() {
            1 => None,
            _ => Some(Box::new(FockEngine::new(e, &charge[1..], conv)?)),
        };
        Ok(FockEngine { e, charge: charge.to_vec(), conv, canonical: HashMap::new(), tail })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn charge(&self) -> &[usize] {
        &self.charge
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    /// `f_i^{(r)}` by the closed subset formula.
    pub fn f_divided(&self, v: &FockVector, i: usize, r: usize) -> FockVector {
        let mut out = FockVector::zero();
        for (mu, p) in v.terms() {
            let addable = nodes_of_residue(mu.addable(), &self.charge, self.e, i);
            if addable.len() < r {
                continue;
            }
            let removable = nodes_of_residue(mu.removable(), &self.charge, self.e, i);
            for s in subsets(&addable, r) {
                let k = divided_exponent(&s, &addable, &removable, self.conv);
                let lam = s.iter().fold(mu.clone(), |acc, &a| acc.with_node(a));
                out.add_term(lam, &p.shift(k));
            }
        }
        out
    }

    fn check_level(&self, mu: &Multipartition) -> Result<()> {
        if mu.level() != self.charge.len() {
            return Err(Error::ChargeLength { charge: self.charge.len(), components: mu.level() });
        }
        Ok(())
    }

    /// `G(μ_2, …, μ_l)` of the tail space with an empty first component.
    fn lifted_tail(&mut self, mu: &Multipartition) -> Result<FockVector> {
        let Some(tail) = self.tail.as_mut() else {
            return Ok(FockVector::basis(Multipartition::empty(1)));
        };
        let rest = Multipartition::new(mu.components()[1..].to_vec());
        let g = tail.canonical_basis(&rest)?;
        let mut out = FockVector::zero();
        for (lam, p) in g.terms() {
            let mut comps = vec![Partition::empty()];
            comps.extend(lam.components().iter().cloned());
            out.add_term(Multipartition::new(comps), p);
        }
        Ok(out)
    }

    /// A bar-invariant vector with largest term `|μ⟩`: the divided powers
    /// along the ladders of `μ^(1)` applied to the lifted tail vector. Ladder
    /// `b` holds the nodes `(r, c)` with `(r-1) + (e-1)(c-1) = b`, all of
    /// residue `κ_1 - b`.
    pub fn leading_vector(&mut self, mu: &Multipartition) -> Result<FockVector> {
        self.check_level(mu)?;
        let mut v = self.lifted_tail(mu)?;
        let first = mu.component(1);
        let mut ladders: BTreeMap<usize, usize> = BTreeMap::new();
        for r in 1..=first.len() {
            for c in 1..=first.part(r) {
                *ladders.entry((r - 1) + (self.e - 1) * (c - 1)).or_default() += 1;
            }
        }
        for (b, power) in ladders {
            let i = (self.charge[0] as i64 - b as i64).rem_euclid(self.e as i64) as usize;
            v = self.f_divided(&v, i, power);
        }
        let width = mu.size();
        let top = v.terms().max_by_key(|(lam, _)| dominance_key(lam, width));
        if !top.is_some_and(|(lam, p)| lam == mu && *p == LaurentPoly::one()) {
            return Err(Error::UnsupportedBlock(format!(
                "the ladder vector of {mu} at e={} with charge {:?} is not unitriangular",
                self.e, self.charge
            )));
        }
        Ok(v)
    }

    /// `G_e(μ)`, asserting its defining properties before returning.
    pub fn canonical_basis(&mut self, mu: &Multipartition) -> Result<FockVector> {
        self.check_level(mu)?;
        if let Some(g) = self.canonical.get(mu) {
            return g.clone();
        }
        let result = self.compute_canonical(mu);
        self.canonical.insert(mu.clone(), result.clone());
        result
    }

    fn compute_canonical(&mut self, mu: &Multipartition) -> Result<FockVector> {
        if mu.size() == 0 {
            return Ok(FockVector::basis(mu.clone()));
        }
        if mu.level() > 1 && mu.component(1).is_empty() {
            let v = self.lifted_tail(mu)?;
            self.assert_contract(mu, &v)?;
            return Ok(v);
        }
        let mut v = self.leading_vector(mu)?;
        let width = mu.size();
        loop {
            let worst = v
                .terms()
                .filter(|(lam, p)| *lam != mu && !p.in_q_zq())
                .max_by_key(|(lam, _)| dominance_key(lam, width))
                .map(|(lam, p)| (lam.clone(), p.bar_symmetric_part()));
            let Some((lam, c)) = worst else { break };
            let g = self.canonical_basis(&lam)?;
            v.sub_scaled(&g, &c);
        }
        self.assert_contract(mu, &v)?;
        Ok(v)
    }

    fn assert_contract(&self, mu: &Multipartition, v: &FockVector) -> Result<()> {
        let fail = |what: String| Err(Error::Convention(format!("G({mu}) violates {what}")));
        if v.coeff(mu) != LaurentPoly::one() {
            return fail("d_μμ = 1".into());
        }
        let content = residue_content(mu, &self.charge, self.e)?;
        let rows = mu.rows();
        for (lam, p) in v.terms() {
            if lam == mu {
                continue;
            }
            if !p.in_q_zq() {
                return fail(format!("d ∈ qZ[q] at {lam}"));
            }
            if !dominates(&rows, &lam.rows()) {
                return fail(format!("triangularity at {lam}"));
            }
            if residue_content(lam, &self.charge, self.e)? != content {
                return fail(format!("block content at {lam}"));
            }
        }
        Ok(())
    }

    pub fn decomposition_number(&mut self, lam: &Multipartition, mu: &Multipartition) -> Result<LaurentPoly> {
        self.check_level(lam)?;
        if lam.size() != mu.size() || !dominates(&mu.rows(), &lam.rows()) {
            return Ok(LaurentPoly::zero());
        }
        Ok(self.canonical_basis(mu)?.coeff(lam))
    }
}

pub fn canonical_basis(mu: &Multipartition, e: usize, charge: &[usize], conv: Convention) -> Result<FockVector> {
    FockEngine::new(e, charge, conv)?.canonical_basis(mu)
}

/// `d_{λμ}(q)`, the coefficient of `|λ⟩` in `G_e(μ)`.
pub fn decomposition_number(lam: &Multipartition, mu: &Multipartition, e: usize, charge: &[usize], conv: Convention) -> Result<LaurentPoly> {
    FockEngine::new(e, charge, conv)?.decomposition_number(lam, mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn convention_round_trip() {
        for c in Convention::ALL {
            assert_eq!(c.to_string().parse::<Convention>().unwrap(), c);
        }
        assert!("sideways+".parse::<Convention>().is_err());
    }

    #[test]
    fn f_on_vacuum() {
        let v = FockVector::basis(mp("∅"));
        let w = f_action(&v, 0, 1, 3, &[0], Convention::CALIBRATED).unwrap();
        assert_eq!(w, FockVector::basis(mp("1")));
        let two = f_action(&w, 1, 1, 3, &[0], Convention::CALIBRATED).unwrap();
        assert_eq!(two.coeff(&mp("2")), LaurentPoly::one());
        assert!(f_action(&v, 1, 1, 3, &[0], Convention::CALIBRATED).unwrap().is_empty());
    }

    #[test]
    fn divided_powers_agree() {
        let start = FockVector::basis(mp("2,1|1"));
        for conv in Convention::ALL {
            let engine = FockEngine::new(3, &[0, 1], conv).unwrap();
            for i in 0..3 {
                for r in 1..=3u32 {
                    let slow = f_action(&start, i, r, 3, &[0, 1], conv).unwrap();
                    assert_eq!(slow, engine.f_divided(&start, i, r as usize), "{conv} i={i} r={r}");
                }
            }
        }
    }

    fn expansion(terms: &[(&str, &str)]) -> FockVector {
        let mut v = FockVector::zero();
        for (c, m) in terms {
            v.add_term(mp(m), &c.parse().unwrap());
        }
        v
    }

    #[test]
    fn vacuum_and_small_cases() {
        let mut g = FockEngine::new(3, &[0], Convention::CALIBRATED).unwrap();
        assert_eq!(g.canonical_basis(&mp("∅")).unwrap(), FockVector::basis(mp("∅")));
        assert_eq!(g.canonical_basis(&mp("3")).unwrap(), expansion(&[("1", "3"), ("q", "2,1")]));
        assert_eq!(g.decomposition_number(&mp("3"), &mp("2,1")).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn level_one_tables() {
        let mut g = FockEngine::new(3, &[0], Convention::CALIBRATED).unwrap();
        let want = expansion(&[("1", "8"), ("q", "5,2,1"), ("q", "3,3,1,1"), ("q^2", "2,2,2,2")]);
        assert_eq!(g.canonical_basis(&mp("8")).unwrap(), want);
        let want = expansion(&[("1", "6,2,2"), ("q", "6,1,1,1,1"), ("q", "4,4,2"), ("q^2", "3,3,2,1,1")]);
        assert_eq!(g.canonical_basis(&mp("6,2,2")).unwrap(), want);
        let mut g = FockEngine::new(2, &[0], Convention::CALIBRATED).unwrap();
        let want = expansion(&[("1", "5"), ("q", "3,1,1"), ("q^2", "1,1,1,1,1")]);
        assert_eq!(g.canonical_basis(&mp("5")).unwrap(), want);
        let want = expansion(&[("1", "4,2,1"), ("q", "3,3,1"), ("q^2", "3,2,2"), ("q^3", "3,2,1,1")]);
        assert_eq!(g.canonical_basis(&mp("4,2,1")).unwrap(), want);
    }

    #[test]
    fn json_round_trip() {
        let g = canonical_basis(&"2,1|1".parse().unwrap(), 2, &[0, 0], Convention::CALIBRATED).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.starts_with("[[[[2,1],[1]],\"1\"]"));
        assert_eq!(serde_json::from_str::<FockVector>(&s).unwrap(), g);
    }

    #[test]
    fn level_two_tables() {
        let mut g = FockEngine::new(3, &[1, 0], Convention::CALIBRATED).unwrap();
        let want = expansion(&[
            ("1", "2,1|4,1,1"),
            ("q", "2,1|3,2,1"),
            ("q^2", "2,1|3,1,1,1"),
            ("q^2", "2|4,2,1"),
            ("q^3", "2|4,1,1,1"),
            ("q^4", "2|3,2,1,1"),
            ("q", "1,1,1|4,1,1"),
            ("q^2", "1,1,1|3,2,1"),
            ("q^3", "1,1,1|3,1,1,1"),
            ("q^2", "1,1|3,2,2"),
            ("q^3", "1,1|3,1,1,1,1"),
            ("q^3", "1|4,2,2"),
            ("q^4", "1|4,1,1,1,1"),
            ("q^4", "1|3,2,2,1"),
            ("q^5", "1|3,2,1,1,1"),
        ]);
        assert_eq!(g.canonical_basis(&mp("2,1|4,1,1")).unwrap(), want);
        let mut g = FockEngine::new(2, &[0, 0], Convention::CALIBRATED).unwrap();
        let want = expansion(&[
            ("1", "2,1|1"),
            ("q", "2|2"),
            ("q^2", "2|1,1"),
            ("q^2", "1,1|2"),
            ("q^3", "1,1|1,1"),
            ("q^4", "1|2,1"),
        ]);
        assert_eq!(g.canonical_basis(&mp("2,1|1")).unwrap(), want);
    }
}

//! Partitions, multipartitions, residues, beta numbers and abaci.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, check_vertex, Error, Result};
use crate::lie_core::Root;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// An `l`-tuple of partitions. Components are 1-indexed in the accessors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Partition>", into = "Vec<Partition>")]
pub struct Multipartition(Vec<Partition>);

/// Node `(m, r, c)`: component, row, column, all from 1. The derived order
/// is the row-reading order, so `A < B` means `B` lies below `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub m: usize,
    pub r: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abacus {
    pub runners: usize,
    pub beads: BTreeSet<usize>,
}

impl Node {
    pub fn new(m: usize, r: usize, c: usize) -> Self {
        Node { m, r, c }
    }

    pub fn tuple(self) -> (usize, usize, usize) {
        (self.m, self.r, self.c)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.r, self.c)
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ_i` for `i ≥ 1`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(1);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// Exponent notation, e.g. `14,13^5,12,2`; empty partitions print as `∅`.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "∅".to_string();
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if j - i > 1 {
                out.push(format!("{}^{}", self.0[i], j - i));
            } else {
                out.push(self.0[i].to_string());
            }
            i = j;
        }
        out.join(",")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.is_empty() || s == "∅" || s == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, x)) => (b, x),
                None => (tok, "1"),
            };
            let base: usize = base.parse().map_err(|_| Error::Parse(format!("bad part {tok:?}")))?;
            let exp: usize = exp.parse().map_err(|_| Error::Parse(format!("bad exponent {tok:?}")))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition(components)
    }

    pub fn from_parts(components: Vec<Vec<usize>>) -> Result<Self> {
        Ok(Multipartition(components.into_iter().map(Partition::new).collect::<Result<_>>()?))
    }

    pub fn empty(level: usize) -> Self {
        Multipartition(vec![Partition::empty(); level])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Partition> {
        self.0
    }

    /// Component `m`, counted from 1.
    pub fn component(&self, m: usize) -> &Partition {
        &self.0[m - 1]
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn contains(&self, a: Node) -> bool {
        a.m >= 1 && a.m <= self.level() && a.r >= 1 && a.c >= 1 && self.component(a.m).part(a.r) >= a.c
    }

    /// All nodes in row-reading order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (mi, p) in self.0.iter().enumerate() {
            for (ri, &len) in p.parts().iter().enumerate() {
                for c in 1..=len {
                    out.push(Node::new(mi + 1, ri + 1, c));
                }
            }
        }
        out
    }

    /// Row lengths as a multicomposition.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|p| p.parts().to_vec()).collect()
    }

    /// Bracketed style, e.g. `[6], [5,1^2]`.
    pub fn bracketed(&self) -> String {
        let s: Vec<String> = self.0.iter().map(|p| if p.is_empty() { "∅".into() } else { format!("[{}]", p.compact()) }).collect();
        s.join(", ")
    }
}

impl TryFrom<Vec<Partition>> for Multipartition {
    type Error = Error;
    fn try_from(v: Vec<Partition>) -> Result<Self> {
        Ok(Multipartition(v))
    }
}

impl From<Multipartition> for Vec<Partition> {
    fn from(p: Multipartition) -> Self {
        p.0
    }
}

impl From<Partition> for Multipartition {
    fn from(p: Partition) -> Self {
        Multipartition(vec![p])
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|p| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", s.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    /// Components separated by `|`, parts by `,`; `^` exponents allowed.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        Ok(Multipartition(s.split('|').map(Partition::from_str).collect::<Result<_>>()?))
    }
}

fn check_charge(charge: &[usize], level: usize, e: usize) -> Result<()> {
    check_rank(e, 2)?;
    if charge.len() != level {
        return Err(Error::ChargeLength { charge: charge.len(), components: level });
    }
    for &k in charge {
        check_vertex(k, e)?;
    }
    Ok(())
}

/// `κ + c − r mod e`.
pub fn residue_at(kappa: usize, r: usize, c: usize, e: usize) -> usize {
    (kappa as i64 + c as i64 - r as i64).rem_euclid(e as i64) as usize
}

pub fn residue(a: Node, charge: &[usize], e: usize) -> Result<usize> {
    check_rank(e, 2)?;
    if a.m == 0 || a.m > charge.len() || a.r == 0 || a.c == 0 {
        return Err(Error::NodeOutOfRange(a.tuple()));
    }
    check_vertex(charge[a.m - 1], e)?;
    Ok(residue_at(charge[a.m - 1], a.r, a.c, e))
}

pub fn residue_content(lam: &Multipartition, charge: &[usize], e: usize) -> Result<Root> {
    check_charge(charge, lam.level(), e)?;
    let mut root = Root::zero(e);
    for a in lam.nodes() {
        root.coeffs[residue_at(charge[a.m - 1], a.r, a.c, e)] += 1;
    }
    Ok(root)
}

/// `β_i = λ_i − i + M` for `i = 1..=M`, strictly decreasing.
pub fn beta_set(lam: &Partition, beads: usize) -> Result<Vec<usize>> {
    if beads < lam.len() {
        return Err(Error::InsufficientBeads { beads, length: lam.len() });
    }
    Ok((1..=beads).map(|i| lam.part(i) + beads - i).collect())
}

/// Inverse of [`beta_set`]; the number of beads is the size of the set.
pub fn partition_from_beta(beads: &[usize]) -> Result<Partition> {
    let mut b = beads.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    if b.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidBetaSet(format!("repeated position in {beads:?}")));
    }
    let m = b.len();
    Partition::new(b.iter().enumerate().map(|(i, &x)| x + i + 1 - m).collect())
}

pub fn abacus_of(lam: &Partition, e: usize, beads: usize) -> Result<Abacus> {
    check_rank(e, 1)?;
    Ok(Abacus { runners: e, beads: beta_set(lam, beads)?.into_iter().collect() })
}

impl Abacus {
    pub fn partition(&self) -> Partition {
        partition_from_beta(&self.beads.iter().copied().collect::<Vec<_>>()).expect("bead positions are distinct")
    }

    /// `(runner, row)` of each bead, in decreasing position order.
    pub fn coordinates(&self) -> Vec<(usize, usize)> {
        self.beads.iter().rev().map(|&x| (x % self.runners, x / self.runners)).collect()
    }
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.runners;
        let rows = self.beads.iter().next_back().map_or(1, |&x| x / e + 1);
        let w = (e - 1).to_string().len();
        let header: Vec<String> = (0..e).map(|b| format!("{b:>w$}")).collect();
        writeln!(f, "{}", header.join(" "))?;
        for a in 0..rows {
            let row: Vec<String> = (0..e)
                .map(|b| {
                    let mark = if self.beads.contains(&(a * e + b)) { "●" } else { "-" };
                    format!("{mark:>w$}")
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// All `level`-multipartitions of `n`, in decreasing lexicographic order of
/// the concatenated components.
pub fn multipartitions(n: usize, level: usize) -> Vec<Multipartition> {
    fn rec(n: usize, left: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if left == 1 {
            for p in partitions(n) {
                cur.push(p);
                out.push(Multipartition(cur.clone()));
                cur.pop();
            }
            return;
        }
        for s in (0..=n).rev() {
            for p in partitions(s) {
                cur.push(p);
                rec(n - s, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if level > 0 {
        rec(n, level, &mut Vec::new(), &mut out);
    }
    out
}

/// Multipartitions of height `ht(α)` with residue content `α`.
pub fn partitions_with_content(alpha: &Root, charge: &[usize], e: usize, max_size: usize) -> Result<Vec<Multipartition>> {
    check_charge(charge, charge.len(), e)?;
    if alpha.rank() != e {
        return Err(Error::RankMismatch { left: alpha.rank(), right: e });
    }
    let n = alpha.height() as usize;
    if n > max_size {
        return Err(Error::Parse(format!("height {n} exceeds the size limit {max_size}")));
    }
    Ok(multipartitions(n, charge.len())
        .into_iter()
        .filter(|l| residue_content(l, charge, e).map(|r| &r == alpha).unwrap_or(false))
        .collect())
}

pub fn is_e_regular(lam: &Partition, e: usize) -> bool {
    let p = lam.parts();
    let mut i = 0;
    while i < p.len() {
        let mut j = i;
        while j < p.len() && p[j] == p[i] {
            j += 1;
        }
        if j - i >= e {
            return false;
        }
        i = j;
    }
    true
}

fn cumulative(a: &[Vec<usize>]) -> Vec<usize> {
    let width = a.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(a.len() * width);
    let mut total = 0;
    for comp in a {
        for j in 0..width {
            total += comp.get(j).copied().unwrap_or(0);
            out.push(total);
        }
    }
    out
}

/// Dominance of multicompositions: every partial sum, taken across the
/// components in order, of `a` is at least the matching one of `b`.
pub fn dominates(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let level = a.len().max(b.len());
    let width = a.iter().chain(b).map(Vec::len).max().unwrap_or(0);
    let (mut sa, mut sb) = (0usize, 0usize);
    for m in 0..level {
        for j in 0..width {
            sa += a.get(m).and_then(|c| c.get(j)).copied().unwrap_or(0);
            sb += b.get(m).and_then(|c| c.get(j)).copied().unwrap_or(0);
            if sa < sb {
                return false;
            }
        }
    }
    true
}

/// Three-valued dominance: `None` for incomparable pairs.
pub fn dominance_cmp(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Ordering> {
    match (dominates(a, b), dominates(b, a)) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Greater),
        (false, true) => Some(Ordering::Less),
        (false, false) => None,
    }
}

/// Sort key refining dominance: if `a ▷ b` then `key(a) > key(b)`.
pub fn dominance_key(a: &Multipartition, width: usize) -> Vec<usize> {
    let mut rows = a.rows();
    for r in &mut rows {
        r.resize(width.max(r.len()), 0);
    }
    cumulative(&rows)
}

/// `(residue of the leftmost node, length)` for each nonempty row.
pub fn row_segments(lam: &Multipartition, charge: &[usize], e: usize) -> Result<Vec<(usize, usize)>> {
    check_charge(charge, lam.level(), e)?;
    let mut out = Vec::new();
    for (mi, p) in lam.components().iter().enumerate() {
        for (ri, &len) in p.parts().iter().enumerate() {
            out.push((residue_at(charge[mi], ri + 1, 1, e), len));
        }
    }
    Ok(out)
}

/// Addable nodes of a partition in component `m`, top to bottom.
pub fn addable_nodes(p: &Partition, m: usize) -> Vec<Node> {
    (1..=p.len() + 1)
        .filter(|&r| r == 1 || p.part(r - 1) > p.part(r))
        .map(|r| Node::new(m, r, p.part(r) + 1))
        .collect()
}

/// Removable nodes of a partition in component `m`, top to bottom.
pub fn removable_nodes(p: &Partition, m: usize) -> Vec<Node> {
    (1..=p.len())
        .filter(|&r| p.part(r) > p.part(r + 1))
        .map(|r| Node::new(m, r, p.part(r)))
        .collect()
}

impl Multipartition {
    pub fn addable(&self) -> Vec<Node> {
        self.0.iter().enumerate().flat_map(|(i, p)| addable_nodes(p, i + 1)).collect()
    }

    pub fn removable(&self) -> Vec<Node> {
        self.0.iter().enumerate().flat_map(|(i, p)| removable_nodes(p, i + 1)).collect()
    }

    /// Adds an addable node; panics if the node is not addable.
    pub fn with_node(&self, a: Node) -> Multipartition {
        let mut out = self.clone();
        let parts = &mut out.0[a.m - 1].0;
        if a.r == parts.len() + 1 {
            assert_eq!(a.c, 1, "node {a} is not addable");
            parts.push(1);
        } else {
            assert_eq!(parts[a.r - 1] + 1, a.c, "node {a} is not addable");
            parts[a.r - 1] += 1;
        }
        debug_assert!(Partition::new(parts.clone()).is_ok());
        out
    }

    /// Removes a removable node; panics if the node is not removable.
    pub fn without_node(&self, a: Node) -> Multipartition {
        let mut out = self.clone();
        let parts = &mut out.0[a.m - 1].0;
        assert_eq!(parts[a.r - 1], a.c, "node {a} is not removable");
        parts[a.r - 1] -= 1;
        if parts[a.r - 1] == 0 {
            parts.pop();
        }
        debug_assert!(Partition::new(parts.clone()).is_ok());
        out
    }
}

//! Tableaux, residue sequences, the permutations `w^T`, Bruhat order, the
//! degree statistic and subdivision of tableaux.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, Error, Result};
use crate::lie_core::{cartan_entry, position_tracing, shift_vertex, Word};
use crate::partition_core::{dominates, residue_at, Multipartition, Node, Partition};
use crate::subdivision::{horizontal_image, is_k_horizontal, subdivide_multipartition, SubdivisionDatum};

/// A bijection from the nodes of `shape` to `1..=n`, stored as
/// `entries[m][r][c]` with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    shape: Multipartition,
    entries: Vec<Vec<Vec<usize>>>,
}

/// A permutation of `1..=n`; `images[i-1] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v == 0 || v > images.len() || seen[v - 1] {
                return Err(Error::InvalidTableau(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            out[v - 1] = i + 1;
        }
        Permutation { images: out }
    }

    /// The product `s_{a_1} s_{a_2} ⋯ s_{a_m}` as a composition of maps.
    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        let mut p = Permutation::identity(n);
        for &a in word {
            // right multiplication by s_a swaps positions a, a+1
            p.images.swap(a - 1, a);
        }
        p
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// Pairs `p < q` with `w(p) > w(q)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let w = &self.images;
        let mut out = Vec::new();
        for p in 0..w.len() {
            for q in p + 1..w.len() {
                if w[p] > w[q] {
                    out.push((p + 1, q + 1));
                }
            }
        }
        out
    }

    /// A fixed reduced word: bubble sort that always removes the leftmost
    /// descent, read backwards.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
            rev.push(i + 1);
        }
        rev.reverse();
        rev
    }
}

/// Strong Bruhat order by the tableau criterion: for every `i`, the sorted
/// values `u(1..=i)` are bounded entrywise by the sorted values `w(1..=i)`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    assert_eq!(u.n(), w.n(), "permutations of different degrees");
    let n = u.n();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let pa = a.partition_point(|&x| x < u.images[i]);
        a.insert(pa, u.images[i]);
        let pb = b.partition_point(|&x| x < w.images[i]);
        b.insert(pb, w.images[i]);
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

impl Tableau {
    /// Builds a tableau from rows of entries, `rows[m][r]`.
    pub fn from_rows(rows: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let shape = Multipartition::new(
            rows.iter()
                .map(|comp| Partition::new(comp.iter().map(Vec::len).collect()))
                .collect::<Result<_>>()?,
        );
        let n = shape.size();
        let mut seen = vec![false; n];
        for v in rows.iter().flatten().flatten() {
            if *v == 0 || *v > n || seen[v - 1] {
                return Err(Error::InvalidTableau(format!("entry {v} repeated or out of range")));
            }
            seen[v - 1] = true;
        }
        let entries = rows.into_iter().map(|comp| comp.into_iter().filter(|r| !r.is_empty()).collect()).collect();
        Ok(Tableau { shape, entries })
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn entry(&self, a: Node) -> usize {
        self.entries[a.m - 1][a.r - 1][a.c - 1]
    }

    /// Node holding each value: `nodes[t-1]` holds `t`.
    pub fn nodes_by_value(&self) -> Vec<Node> {
        let mut out = vec![Node::new(0, 0, 0); self.size()];
        for a in self.shape.nodes() {
            out[self.entry(a) - 1] = a;
        }
        out
    }

    pub fn is_row_standard(&self) -> bool {
        self.entries.iter().flatten().all(|row| row.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard()
            && self.entries.iter().all(|comp| {
                comp.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below))
            })
    }

    /// Row counts of the entries `≤ m`, a multicomposition.
    pub fn shape_below(&self, m: usize) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .map(|comp| comp.iter().map(|row| row.iter().filter(|&&v| v <= m).count()).collect())
            .collect()
    }

    /// `w · T`: replace each entry `v` by `w(v)`.
    pub fn act(&self, w: &Permutation) -> Tableau {
        let entries = self
            .entries
            .iter()
            .map(|comp| comp.iter().map(|row| row.iter().map(|&v| w.apply(v)).collect()).collect())
            .collect();
        Tableau { shape: self.shape.clone(), entries }
    }

    /// Multi-line text: rows of right-aligned entries, components separated by
    /// a rule.
    pub fn render(&self) -> String {
        let w = self.size().to_string().len();
        let mut blocks = Vec::new();
        for comp in &self.entries {
            let lines: Vec<String> = comp
                .iter()
                .map(|row| row.iter().map(|v| format!("{v:>w$}")).collect::<Vec<_>>().join(" "))
                .collect();
            blocks.push(if lines.is_empty() { "∅".to_string() } else { lines.join("\n") });
        }
        blocks.join("\n--\n")
    }
}

/// `S ⊵ T`: `Shape(S↓m) ⊵ Shape(T↓m)` for every `m`.
pub fn tableau_dominates(s: &Tableau, t: &Tableau) -> bool {
    (1..=s.size()).all(|m| dominates(&s.shape_below(m), &t.shape_below(m)))
}

impl fmt::Display for Tableau {
    /// One line: entries by spaces, rows by `/`, components by `|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .entries
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .collect::<Vec<_>>()
                    .join(" / ")
            })
            .collect();
        write!(f, "{}", comps.join(" | "))
    }
}

impl FromStr for Tableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split('|')
            .map(|comp| {
                comp.split('/')
                    .filter(|r| !r.trim().is_empty())
                    .map(|row| {
                        row.split(|c: char| c.is_whitespace() || c == ',')
                            .filter(|t| !t.is_empty())
                            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::from_rows(rows)
    }
}

/// `T^λ`: entries in row-reading order.
pub fn initial_tableau(lam: &Multipartition) -> Tableau {
    let mut next = 0;
    let entries = lam
        .components()
        .iter()
        .map(|p| {
            p.parts()
                .iter()
                .map(|&len| {
                    let row = (next + 1..=next + len).collect();
                    next += len;
                    row
                })
                .collect()
        })
        .collect();
    Tableau { shape: lam.clone(), entries }
}

fn check_charge(t: &Multipartition, charge: &[usize], e: usize) -> Result<()> {
    check_rank(e, 2)?;
    if charge.len() != t.level() {
        return Err(Error::ChargeLength { charge: charge.len(), components: t.level() });
    }
    Ok(())
}

/// `(res T^{-1}(1), …, res T^{-1}(n))`.
pub fn residue_sequence(t: &Tableau, charge: &[usize], e: usize) -> Result<Word> {
    check_charge(t.shape(), charge, e)?;
    let letters = t.nodes_by_value().into_iter().map(|a| residue_at(charge[a.m - 1], a.r, a.c, e)).collect();
    Word::new(e, letters)
}

/// `w^T` with `w^T(T^λ(A)) = T(A)`.
pub fn permutation_of(t: &Tableau) -> Permutation {
    Permutation { images: t.shape().nodes().into_iter().map(|a| t.entry(a)).collect() }
}

/// Addable and removable `i`-nodes, sorted by the below relation.
pub fn addable_removable(lam: &Multipartition, charge: &[usize], e: usize, i: usize) -> Result<(Vec<Node>, Vec<Node>)> {
    check_charge(lam, charge, e)?;
    let res = |a: &Node| residue_at(charge[a.m - 1], a.r, a.c, e) == i;
    Ok((lam.addable().into_iter().filter(res).collect(), lam.removable().into_iter().filter(res).collect()))
}

/// `d_A(λ)`: addable minus removable `res(A)`-nodes strictly below `A`.
pub fn node_degree(lam: &Multipartition, a: Node, charge: &[usize], e: usize) -> i64 {
    let i = residue_at(charge[a.m - 1], a.r, a.c, e);
    let mut d = 0i64;
    for (mi, p) in lam.components().iter().enumerate().skip(a.m - 1) {
        let m = mi + 1;
        let kappa = charge[mi];
        let start = if m == a.m { a.r + 1 } else { 1 };
        for r in start..=p.len() + 1 {
            let len = p.part(r);
            if (r == 1 || p.part(r - 1) > len) && residue_at(kappa, r, len + 1, e) == i {
                d += 1;
            }
            if len > 0 && len > p.part(r + 1) && residue_at(kappa, r, len, e) == i {
                d -= 1;
            }
        }
    }
    d
}

/// The recursive degree of a standard tableau.
pub fn degree(t: &Tableau, charge: &[usize], e: usize) -> Result<i64> {
    check_charge(t.shape(), charge, e)?;
    if !t.is_standard() {
        return Err(Error::NotStandard("standard"));
    }
    let mut shape = Multipartition::empty(t.shape().level());
    let mut total = 0;
    for a in t.nodes_by_value() {
        shape = shape.with_node(a);
        total += node_degree(&shape, a, charge, e);
    }
    Ok(total)
}

/// Degree extended to row-standard tableaux: `deg T^λ` plus `−a_{ij}` for
/// every crossing of `w^T`, where `i, j` label the crossing strands.
pub fn degree_row_standard(t: &Tableau, charge: &[usize], e: usize) -> Result<i64> {
    if !t.is_row_standard() {
        return Err(Error::NotStandard("row-standard"));
    }
    let init = initial_tableau(t.shape());
    let base = degree(&init, charge, e)?;
    let letters = residue_sequence(&init, charge, e)?.letters;
    let crossings: i64 = permutation_of(t)
        .inversions()
        .into_iter()
        .map(|(p, q)| -cartan_entry(e, letters[p - 1], letters[q - 1]))
        .sum();
    Ok(base + crossings)
}

/// Subdivision of a row-standard tableau of `k`-horizontal shape.
pub fn subdivide_tableau(t: &Tableau, datum: &SubdivisionDatum) -> Result<Tableau> {
    if !t.is_row_standard() {
        return Err(Error::NotStandard("row-standard"));
    }
    if !is_k_horizontal(t.shape(), datum)? {
        return Err(Error::NotKHorizontal { k: datum.k });
    }
    let (e, k) = (datum.e, datum.k);
    let seq = residue_sequence(t, &datum.charge, e)?.letters;
    let phi = position_tracing(&seq, k);
    let mu = subdivide_multipartition(t.shape(), datum)?;
    let mut entries: Vec<Vec<Vec<usize>>> =
        mu.components().iter().map(|p| p.parts().iter().map(|&len| vec![0; len]).collect()).collect();
    for a in t.shape().nodes() {
        let v = t.entry(a);
        let b = horizontal_image(a, datum.charge[a.m - 1], e, k);
        entries[b.m - 1][b.r - 1][b.c - 1] = phi[v - 1];
        if seq[v - 1] == k {
            entries[b.m - 1][b.r - 1][b.c] = phi[v - 1] + 1;
        }
    }
    let out = Tableau { shape: mu, entries };
    debug_assert!(out.entries.iter().flatten().flatten().all(|&v| v > 0));
    Ok(out)
}

/// Residues of a subdivided tableau, as labels over rank `e+1`.
pub fn image_charge(datum: &SubdivisionDatum) -> Vec<usize> {
    datum.charge.iter().map(|&x| shift_vertex(x, datum.k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn example_t() -> Tableau {
        "1 2 7 / 4 12 / 9 | 3 6 8 10 11 / 5 / 13".parse().unwrap()
    }

    #[test]
    fn initial_tableau_layout() {
        let t = initial_tableau(&mp("3,2,1|5,1,1"));
        assert_eq!(t.to_string(), "1 2 3 / 4 5 / 6 | 7 8 9 10 11 / 12 / 13");
        assert!(t.is_standard());
        assert_eq!(initial_tableau(&Multipartition::empty(2)).size(), 0);
    }

    #[test]
    fn residue_sequences() {
        let lam = mp("3,2,1|5,1,1");
        let init = residue_sequence(&initial_tableau(&lam), &[1, 2], 3).unwrap();
        assert_eq!(init.letters, vec![1, 2, 0, 0, 1, 2, 2, 0, 1, 2, 0, 1, 0]);
        let seq = residue_sequence(&example_t(), &[1, 2], 3).unwrap();
        assert_eq!(seq.letters, vec![1, 2, 2, 0, 1, 0, 0, 1, 2, 2, 0, 1, 0]);
    }

    #[test]
    fn permutation_of_example() {
        let t = example_t();
        let w = permutation_of(&t);
        assert_eq!(w.length(), 20);
        assert_eq!(initial_tableau(t.shape()).act(&w), t);
        let word = w.reduced_word();
        assert_eq!(word.len(), 20);
        assert_eq!(Permutation::from_word(13, &word), w);
        assert_eq!(permutation_of(&initial_tableau(t.shape())), Permutation::identity(13));
    }

    #[test]
    fn degrees() {
        let lam = mp("3,2,1|5,1,1");
        assert_eq!(degree(&initial_tableau(&lam), &[1, 2], 3).unwrap(), 4);
        assert_eq!(degree(&example_t(), &[1, 2], 3).unwrap(), 6);
        assert_eq!(degree_row_standard(&example_t(), &[1, 2], 3).unwrap(), 6);
        assert_eq!(degree(&initial_tableau(&Multipartition::empty(1)), &[0], 3).unwrap(), 0);
        let bad: Tableau = "2 1".parse().unwrap();
        assert!(degree(&bad, &[0], 3).is_err());
    }

    #[test]
    fn addable_removable_lists() {
        let (add, rem) = addable_removable(&Multipartition::empty(1), &[2], 3, 2).unwrap();
        assert_eq!(add, vec![Node::new(1, 1, 1)]);
        assert!(rem.is_empty());
        let (_, rem) = addable_removable(&mp("5|4,1"), &[0, 0], 5, 4).unwrap();
        assert_eq!(rem, vec![Node::new(1, 1, 5), Node::new(2, 2, 1)]);
    }

    #[test]
    fn bruhat_basics() {
        let id = Permutation::identity(4);
        let w = Permutation::new(vec![3, 4, 1, 2]).unwrap();
        assert!(bruhat_leq(&id, &w));
        assert!(bruhat_leq(&w, &w));
        assert!(!bruhat_leq(&w, &id));
        let a = Permutation::new(vec![2, 1, 3]).unwrap();
        let b = Permutation::new(vec![1, 3, 2]).unwrap();
        assert!(!bruhat_leq(&a, &b) && !bruhat_leq(&b, &a));
    }

    #[test]
    fn tableau_subdivision_example() {
        let d = SubdivisionDatum::new(3, 1, vec![0, 1]).unwrap();
        let t: Tableau = "1 2 6 8 13 17 21 22 / 3 5 12 16 18 | 4 9 10 20 / 7 14 19 / 11 15".parse().unwrap();
        let img = subdivide_tableau(&t, &d).unwrap();
        let want: Tableau =
            "1 2 3 8 10 16 17 22 27 28 29 / 4 7 14 15 21 23 | 5 6 11 12 25 26 / 9 18 19 24 / 13 20".parse().unwrap();
        assert_eq!(img, want);
        assert_eq!(degree(&t, &d.charge, 3).unwrap(), 12);
        assert_eq!(degree(&img, &image_charge(&d), 4).unwrap(), 12);
        let init = initial_tableau(t.shape());
        assert_eq!(subdivide_tableau(&init, &d).unwrap(), initial_tableau(img.shape()));
        let rect: Tableau = initial_tableau(&mp("11^7"));
        let d5 = SubdivisionDatum::new(5, 1, vec![1]).unwrap();
        assert!(matches!(subdivide_tableau(&rect, &d5), Err(Error::NotKHorizontal { .. })));
    }
}

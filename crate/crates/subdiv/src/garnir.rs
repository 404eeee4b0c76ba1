//! Garnir nodes, belts, bricks, Garnir tableaux and Garnir sets.

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, Error, Result};
use crate::partition_core::{residue_at, Multipartition, Node};
use crate::tableaux::{initial_tableau, Permutation, Tableau};

/// Brick data attached to a Garnir node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GarnirContext {
    pub shape: Multipartition,
    pub node: Node,
    pub e: usize,
    pub charge: Vec<usize>,
    /// Belt nodes in row-reading order.
    pub belt: Vec<Node>,
    /// `B_1..B_k`: row `r+1` left to right, then row `r` left to right.
    pub bricks: Vec<Vec<Node>>,
    pub k_a: usize,
    pub f_a: usize,
    /// Smallest entry of `G^A` on each brick.
    pub n_a: Vec<usize>,
}

/// The three outputs of [`garnir_set`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GarnirSet {
    pub t_a: Tableau,
    pub g_a: Tableau,
    /// Coset representatives as permutations of `1..=n`.
    pub d_a: Vec<Permutation>,
    /// The same representatives as reduced words in the brick transpositions.
    pub d_a_words: Vec<Vec<usize>>,
    /// `{w · T^A : w ∈ D^A}`, in the order of `d_a`.
    pub gar: Vec<Tableau>,
}

/// Nodes with a node directly below them, in row-reading order.
pub fn garnir_nodes(lam: &Multipartition) -> Vec<Node> {
    lam.nodes().into_iter().filter(|a| lam.contains(Node::new(a.m, a.r + 1, a.c))).collect()
}

fn check_garnir(lam: &Multipartition, a: Node) -> Result<()> {
    if a.m == 0 || a.r == 0 || a.c == 0 || !lam.contains(a) || !lam.contains(Node::new(a.m, a.r + 1, a.c)) {
        return Err(Error::NotGarnir(a.tuple()));
    }
    Ok(())
}

/// `A`, the nodes to its right, and the nodes of the next row up to column `c`.
pub fn garnir_belt(lam: &Multipartition, a: Node) -> Result<Vec<Node>> {
    check_garnir(lam, a)?;
    let len = lam.component(a.m).part(a.r);
    let mut belt: Vec<Node> = (a.c..=len).map(|z| Node::new(a.m, a.r, z)).collect();
    belt.extend((1..=a.c).map(|z| Node::new(a.m, a.r + 1, z)));
    Ok(belt)
}

/// Belt nodes from bottom-left to top-right.
fn belt_fill_order(lam: &Multipartition, a: Node) -> Vec<Node> {
    let len = lam.component(a.m).part(a.r);
    (1..=a.c)
        .map(|z| Node::new(a.m, a.r + 1, z))
        .chain((a.c..=len).map(|z| Node::new(a.m, a.r, z)))
        .collect()
}

/// Rewrites the entries of `base` on `nodes[i]` to `values[i]`.
fn refill(base: &Tableau, nodes: &[Node], values: &[usize]) -> Tableau {
    let mut rows = base.rows().to_vec();
    for (a, &v) in nodes.iter().zip(values) {
        rows[a.m - 1][a.r - 1][a.c - 1] = v;
    }
    Tableau::from_rows(rows).expect("refilling preserves the entry set")
}

/// `G^A`: `T^λ` with the belt entries rearranged to increase from the
/// bottom-left to the top-right.
pub fn garnir_tableau(lam: &Multipartition, a: Node) -> Result<Tableau> {
    check_garnir(lam, a)?;
    let t = initial_tableau(lam);
    let order = belt_fill_order(lam, a);
    let mut values: Vec<usize> = order.iter().map(|&b| t.entry(b)).collect();
    values.sort_unstable();
    Ok(refill(&t, &order, &values))
}

pub fn brick_data(lam: &Multipartition, a: Node, charge: &[usize], e: usize) -> Result<GarnirContext> {
    check_rank(e, 2)?;
    check_garnir(lam, a)?;
    if charge.len() != lam.level() {
        return Err(Error::ChargeLength { charge: charge.len(), components: lam.level() });
    }
    let belt = garnir_belt(lam, a)?;
    let len = lam.component(a.m).part(a.r);
    let brick = |row: usize, start: usize| (start..start + e).map(|z| Node::new(a.m, row, z)).collect::<Vec<_>>();

    let lower = a.c / e;
    let mut bricks: Vec<Vec<Node>> = (0..lower).rev().map(|j| brick(a.r + 1, a.c + 1 - (j + 1) * e)).collect();
    let upper = (len + 1 - a.c) / e;
    bricks.extend((0..upper).map(|j| brick(a.r, a.c + j * e)));

    let res_a = residue_at(charge[a.m - 1], a.r, a.c, e);
    debug_assert!(bricks.iter().all(|b| residue_at(charge[a.m - 1], b[0].r, b[0].c, e) == res_a));

    let g = garnir_tableau(lam, a)?;
    let n_a = bricks.iter().map(|b| b.iter().map(|&x| g.entry(x)).min().unwrap()).collect();
    Ok(GarnirContext {
        shape: lam.clone(),
        node: a,
        e,
        charge: charge.to_vec(),
        belt,
        k_a: bricks.len(),
        f_a: upper,
        bricks,
        n_a,
    })
}

impl GarnirContext {
    /// `w_t = ∏_{a<e} (n_t+a, n_t+e+a)` for `t = 1..k-1`.
    pub fn brick_transpositions(&self) -> Vec<Permutation> {
        let n = self.shape.size();
        (0..self.k_a.saturating_sub(1))
            .map(|t| {
                let mut images: Vec<usize> = (1..=n).collect();
                for a in 0..self.e {
                    images.swap(self.n_a[t] + a - 1, self.n_a[t] + self.e + a - 1);
                }
                Permutation { images }
            })
            .collect()
    }

    /// Lifts `w ∈ S_k` to `S_n` by moving the value block of brick `j` onto
    /// the value block of brick `w(j)`.
    pub fn lift(&self, w: &Permutation) -> Permutation {
        let mut images: Vec<usize> = (1..=self.shape.size()).collect();
        for j in 1..=self.k_a {
            for a in 0..self.e {
                images[self.n_a[j - 1] + a - 1] = self.n_a[w.apply(j) - 1] + a;
            }
        }
        Permutation { images }
    }
}

/// Minimal-length coset representatives: `w(1)<…<w(f)` and `w(f+1)<…<w(k)`,
/// ordered by length and then by reduced word.
pub fn grassmannian_perms(k: usize, f: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != f {
            continue;
        }
        let first = (1..=k).filter(|&j| mask & (1 << (j - 1)) != 0);
        let rest = (1..=k).filter(|&j| mask & (1 << (j - 1)) == 0);
        out.push(Permutation { images: first.chain(rest).collect() });
    }
    out.sort_by_key(|w| (w.length(), w.reduced_word()));
    out
}

pub fn garnir_set(ctx: &GarnirContext) -> GarnirSet {
    let (k, f) = (ctx.k_a, ctx.f_a);
    let g_a = garnir_tableau(&ctx.shape, ctx.node).expect("context holds a Garnir node");
    // T^A carries V_1..V_f on the row r bricks and V_{f+1}..V_k on row r+1.
    let target: Vec<usize> = (1..=k).map(|t| if t > k - f { t - (k - f) } else { t + f }).collect();
    let u = ctx.lift(&Permutation { images: target });
    let t_a = g_a.act(&u);
    let reps = grassmannian_perms(k, f);
    let d_a: Vec<Permutation> = reps.iter().map(|w| ctx.lift(w)).collect();
    let d_a_words = reps.iter().map(Permutation::reduced_word).collect();
    let gar = d_a.iter().map(|w| t_a.act(w)).collect();
    GarnirSet { t_a, g_a, d_a, d_a_words, gar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{residue_sequence, tableau_dominates};

    fn example() -> (Multipartition, Node) {
        ("5,4,3,3,1|14,10,2".parse().unwrap(), Node::new(2, 1, 8))
    }

    #[test]
    fn nodes_of_example() {
        let (lam, _) = example();
        let nodes = garnir_nodes(&lam);
        assert_eq!(nodes.len(), 23);
        let brute: Vec<Node> = lam.nodes().into_iter().filter(|a| lam.nodes().contains(&Node::new(a.m, a.r + 1, a.c))).collect();
        assert_eq!(nodes, brute);
        assert!(garnir_nodes(&"7|3".parse().unwrap()).is_empty());
    }

    #[test]
    fn belt_and_tableau() {
        let (lam, a) = example();
        assert_eq!(garnir_belt(&lam, a).unwrap().len(), 15);
        let g = garnir_tableau(&lam, a).unwrap();
        assert_eq!(g.rows()[1][0][7..], [32, 33, 34, 35, 36, 37, 38]);
        assert_eq!(g.rows()[1][1][..8], [24, 25, 26, 27, 28, 29, 30, 31]);
        assert!(g.is_row_standard() && !g.is_standard());
        assert!(garnir_belt(&lam, Node::new(1, 5, 1)).is_err());
    }

    #[test]
    fn bricks_of_example() {
        let (lam, a) = example();
        let ctx = brick_data(&lam, a, &[0, 1], 3).unwrap();
        assert_eq!((ctx.k_a, ctx.f_a), (4, 2));
        let starts: Vec<(usize, usize)> = ctx.bricks.iter().map(|b| (b[0].r, b[0].c)).collect();
        assert_eq!(starts, vec![(2, 3), (2, 6), (1, 8), (1, 11)]);
        assert_eq!(ctx.n_a, vec![26, 29, 32, 35]);
        let set = garnir_set(&ctx);
        assert_eq!(set.d_a.len(), 6);
        let words: Vec<Vec<usize>> = vec![vec![], vec![2], vec![1, 2], vec![3, 2], vec![1, 3, 2], vec![2, 1, 3, 2]];
        let mut got = set.d_a_words.clone();
        got.sort();
        let mut want = words;
        want.sort();
        // w1w3w2 and w3w1w2 are the same element; compare as elements.
        let as_perm = |w: &Vec<usize>| Permutation::from_word(4, w);
        let mut gp: Vec<_> = got.iter().map(as_perm).collect();
        let mut wp: Vec<_> = want.iter().map(as_perm).collect();
        gp.sort();
        wp.sort();
        assert_eq!(gp, wp);
        assert_eq!(set.t_a.rows()[1][0][7..], [26, 27, 28, 29, 30, 31, 38]);
        assert!(set.gar.contains(&set.g_a));
        let i_a = residue_sequence(&set.g_a, &[0, 1], 3).unwrap();
        for t in &set.gar {
            assert_eq!(residue_sequence(t, &[0, 1], 3).unwrap(), i_a);
            assert!(tableau_dominates(&set.t_a, t) && tableau_dominates(t, &set.g_a));
        }
    }

    #[test]
    fn orbit_oracle() {
        let (lam, a) = example();
        let ctx = brick_data(&lam, a, &[0, 1], 3).unwrap();
        let set = garnir_set(&ctx);
        let gens = ctx.brick_transpositions();
        let mut orbit = vec![set.g_a.clone()];
        let mut i = 0;
        while i < orbit.len() {
            for w in &gens {
                let next = orbit[i].act(w);
                if !orbit.contains(&next) {
                    orbit.push(next);
                }
            }
            i += 1;
        }
        let row_std: Vec<_> = orbit.into_iter().filter(Tableau::is_row_standard).collect();
        assert_eq!(row_std.len(), set.gar.len());
        assert!(row_std.iter().all(|t| set.gar.contains(t)));
    }

    #[test]
    fn small_belt() {
        let lam: Multipartition = "1,1".parse().unwrap();
        let ctx = brick_data(&lam, Node::new(1, 1, 1), &[0], 3).unwrap();
        assert_eq!(ctx.k_a, 0);
        let set = garnir_set(&ctx);
        assert_eq!(set.gar, vec![set.g_a.clone()]);
        assert_eq!(set.g_a.to_string(), "2 / 1");
    }
}

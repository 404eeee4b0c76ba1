//! Subdivision of partitions in the Young-diagram and abacus models, the
//! counting functions `N_k`, `ε_u`, `ι_u`, `k(λ)`, and the splitting map.

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, check_vertex, Error, Result};
use crate::lie_core::shift_vertex;
use crate::partition_core::{beta_set, partition_from_beta, residue_at, Multipartition, Node, Partition};

/// Rank, split vertex and charge. Subdivision needs `e ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionDatum {
    pub e: usize,
    pub k: usize,
    pub charge: Vec<usize>,
}

/// `(a, c, d, a′)` with `a + d = ce + k` and `a′ = a + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusDatum {
    pub a: usize,
    pub c: usize,
    pub d: usize,
    pub a_prime: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StripKind {
    /// Starts with a `k`-node in the first row.
    KtoK1,
    /// Starts with a `(k+1)`-node in the first column.
    K1toK,
}

/// A maximal strip of a partition; nodes are `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strip {
    pub kind: StripKind,
    pub nodes: Vec<(usize, usize)>,
}

impl Strip {
    pub fn is_trivial(&self) -> bool {
        self.nodes.len() == 1
    }
}

impl SubdivisionDatum {
    pub fn new(e: usize, k: usize, charge: Vec<usize>) -> Result<Self> {
        check_rank(e, 3)?;
        check_vertex(k, e)?;
        for &x in &charge {
            check_vertex(x, e)?;
        }
        Ok(SubdivisionDatum { e, k, charge })
    }

    /// Charge of the image over rank `e+1`.
    pub fn image_charge(&self) -> Vec<usize> {
        self.charge.iter().map(|&x| shift_vertex(x, self.k)).collect()
    }

    fn check_level(&self, lam: &Multipartition) -> Result<()> {
        if lam.level() != self.charge.len() {
            return Err(Error::ChargeLength { charge: self.charge.len(), components: lam.level() });
        }
        Ok(())
    }
}

fn check_edge(e: usize, k: usize, x: usize) -> Result<()> {
    check_rank(e, 3)?;
    check_vertex(k, e)?;
    check_vertex(x, e)
}

/// All maximal strips, `(k,k+1)`-strips first, each group from left to right
/// or top to bottom.
pub fn maximal_strips(lam: &Partition, e: usize, k: usize, x: usize) -> Result<Vec<Strip>> {
    check_edge(e, k, x)?;
    let k1 = (k + 1) % e;
    let inside = |r: usize, c: usize| lam.part(r) >= c;
    let walk = |mut r: usize, mut c: usize| {
        let mut nodes = vec![(r, c)];
        loop {
            let res = residue_at(x, r, c, e);
            let next = if res == k { (r, c + 1) } else { (r + 1, c) };
            if !inside(next.0, next.1) {
                break;
            }
            debug_assert!(residue_at(x, next.0, next.1, e) == if res == k { k1 } else { k });
            (r, c) = next;
            nodes.push((r, c));
        }
        nodes
    };
    let mut out = Vec::new();
    for c in 1..=lam.part(1) {
        if residue_at(x, 1, c, e) == k {
            out.push(Strip { kind: StripKind::KtoK1, nodes: walk(1, c) });
        }
    }
    for r in 1..=lam.len() {
        if residue_at(x, r, 1, e) == k1 {
            out.push(Strip { kind: StripKind::K1toK, nodes: walk(r, 1) });
        }
    }
    Ok(out)
}

/// The Young-diagram model: insert a new node to the right of every `k`-node
/// of a `(k,k+1)`-strip and above every `k`-node of a `(k+1,k)`-strip.
pub fn subdivide_young(lam: &Partition, e: usize, k: usize, x: usize) -> Result<Partition> {
    let strips = maximal_strips(lam, e, k, x)?;
    let rows = lam.len();
    let cols = lam.part(1);
    // kind of the strip through each k-node, indexed [r][c]
    let mut kind = vec![vec![None; cols + 2]; rows + 2];
    for s in &strips {
        for &(r, c) in &s.nodes {
            if residue_at(x, r, c, e) == k {
                kind[r][c] = Some(s.kind);
            }
        }
    }
    // (row, column, label) of every node of the new diagram; labels are
    // rank-(e+1) vertices
    let mut placed: Vec<(usize, usize, usize)> = Vec::with_capacity(lam.size() * 2);
    let mut v = vec![0usize; cols + 2];
    for (r, kinds) in kind.iter().enumerate().take(rows + 1).skip(1) {
        let mut h = 0;
        for c in 1..=lam.part(r) {
            let res = residue_at(x, r, c, e);
            let here = if res == k { kinds[c] } else { None };
            if here == Some(StripKind::K1toK) {
                v[c] += 1;
            }
            let (nr, nc) = (r + v[c], c + h);
            assert!(h == 0 || v[c] == 0, "a node cannot move in both directions");
            placed.push((nr, nc, shift_vertex(res, k)));
            match here {
                Some(StripKind::KtoK1) => {
                    placed.push((nr, nc + 1, k + 1));
                    h += 1;
                }
                Some(StripKind::K1toK) => placed.push((nr - 1, nc, k + 1)),
                None => {}
            }
        }
    }
    let new_rows = placed.iter().map(|p| p.0).max().unwrap_or(0);
    let mut lengths = vec![0usize; new_rows];
    let mut max_col = vec![0usize; new_rows];
    for &(r, c, _) in &placed {
        lengths[r - 1] += 1;
        max_col[r - 1] = max_col[r - 1].max(c);
    }
    assert_eq!(lengths, max_col, "subdivided rows must be left-justified");
    let out = Partition::new(lengths).expect("subdivision produces a partition");
    let x1 = shift_vertex(x, k);
    for &(r, c, label) in &placed {
        assert_eq!(label, residue_at(x1, r, c, e + 1), "relabelled node ({r},{c}) has the wrong residue");
    }
    Ok(out)
}

/// Every admissible `a ≥ max(k, ℓ(λ))` with `a ≡ x (mod e)`, smallest first.
pub fn admissible_data(lam: &Partition, e: usize, k: usize, x: usize, count: usize) -> Result<Vec<AbacusDatum>> {
    check_edge(e, k, x)?;
    let lo = k.max(lam.len());
    let first = lo + (x + e - lo % e) % e;
    Ok((0..count).map(|j| datum_for(first + j * e, e, k)).collect())
}

/// The datum with a given `a`: `d`, `c` and `a′` are forced.
pub fn datum_for(a: usize, e: usize, k: usize) -> AbacusDatum {
    let d = (k + e - a % e) % e;
    let c = (a + d - k) / e;
    AbacusDatum { a, c, d, a_prime: a + c }
}

/// The smallest admissible abacus datum.
pub fn canonical_datum(lam: &Partition, e: usize, k: usize, x: usize) -> Result<AbacusDatum> {
    Ok(admissible_data(lam, e, k, x, 1)?[0])
}

pub fn validate_datum(lam: &Partition, e: usize, k: usize, x: usize, ad: &AbacusDatum) -> Result<()> {
    check_edge(e, k, x)?;
    let fail = |s: &str| Err(Error::DatumViolation(s.to_string()));
    if ad.a < k.max(lam.len()) {
        return fail("a ≥ max(k, ℓ(λ))");
    }
    if ad.a % e != x {
        return fail("a ≡ x (mod e)");
    }
    if ad.d >= e {
        return fail("0 ≤ d < e");
    }
    if ad.a + ad.d != ad.c * e + k {
        return fail("a + d = ce + k");
    }
    if ad.a_prime != ad.a + ad.c {
        return fail("a′ = a + c");
    }
    Ok(())
}

/// `ε_u(r) = [r ≥ u]`.
pub fn epsilon(u: usize, r: usize) -> usize {
    usize::from(r >= u)
}

/// `ι_u(n) = q(e+1) + r + ε_u(r)` where `n = qe + r`.
pub fn iota(n: usize, u: usize, e: usize) -> usize {
    let (q, r) = (n / e, n % e);
    q * (e + 1) + r + epsilon(u, r)
}

/// `N_k(M) = ⌊(M − k)/e⌋ + 1`, the number of `y ∈ [0, M]` with `y ≡ k`.
pub fn counting_n(m: i64, k: usize, e: usize) -> i64 {
    (m - k as i64).div_euclid(e as i64) + 1
}

/// `T = {i(e+1) + k : 0 ≤ i < c}`.
pub fn new_runner_beads(e: usize, k: usize, c: usize) -> Vec<usize> {
    (0..c).map(|i| i * (e + 1) + k).collect()
}

/// The abacus model: returns the image and the beads placed on the new
/// runner.
pub fn subdivide_abacus(lam: &Partition, e: usize, k: usize, x: usize, ad: &AbacusDatum) -> Result<(Partition, Vec<usize>)> {
    validate_datum(lam, e, k, x, ad)?;
    let t = new_runner_beads(e, k, ad.c);
    let mut beads: Vec<usize> = beta_set(lam, ad.a)?.into_iter().map(|b| iota(b, k, e)).collect();
    beads.extend_from_slice(&t);
    debug_assert_eq!(beads.len(), ad.a_prime);
    Ok((partition_from_beta(&beads)?, t))
}

/// `k(λ)` by scanning the first column: rows `r < ℓ(λ)` whose first node has
/// residue `k+1`.
pub fn k_count(lam: &Partition, e: usize, k: usize, x: usize) -> Result<usize> {
    check_edge(e, k, x)?;
    Ok((1..lam.len()).filter(|&r| residue_at(x, r, 1, e) == (k + 1) % e).count())
}

/// `ρ ≡ x − k (mod e)` taken in `1..=e`.
pub fn rho(e: usize, k: usize, x: usize) -> usize {
    let r = (x + e - k) % e;
    if r == 0 {
        e
    } else {
        r
    }
}

/// Closed form `max(0, ⌊(ℓ − 1 − ρ)/e⌋ + 1)`.
pub fn k_count_formula(len: usize, e: usize, k: usize, x: usize) -> usize {
    let v = (len as i64 - 1 - rho(e, k, x) as i64).div_euclid(e as i64) + 1;
    v.max(0) as usize
}

/// First rows `k_1 < k_2 < …` of the non-trivial maximal `(k+1,k)`-strips,
/// `k_j = je − d`.
pub fn cut_rows(lam: &Partition, e: usize, k: usize, x: usize) -> Result<Vec<usize>> {
    check_edge(e, k, x)?;
    let first = rho(e, k, x);
    Ok((0..).map(|j| first + j * e).take_while(|&r| r < lam.len()).collect())
}

/// `f(t)`: the number of non-trivial maximal `(k+1,k)`-strips starting in a
/// row above `t`.
pub fn strip_tracing_f(lam: &Partition, e: usize, k: usize, x: usize, t: usize) -> Result<usize> {
    Ok(cut_rows(lam, e, k, x)?.into_iter().filter(|&r| r < t).count())
}

pub fn is_k_horizontal(lam: &Multipartition, datum: &SubdivisionDatum) -> Result<bool> {
    datum.check_level(lam)?;
    for (p, &x) in lam.components().iter().zip(&datum.charge) {
        if k_count(p, datum.e, datum.k, x)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise Young subdivision.
pub fn subdivide_multipartition(lam: &Multipartition, datum: &SubdivisionDatum) -> Result<Multipartition> {
    datum.check_level(lam)?;
    let comps = lam
        .components()
        .iter()
        .zip(&datum.charge)
        .map(|(p, &x)| subdivide_young(p, datum.e, datum.k, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multipartition::new(comps))
}

/// The splitting map: cut each component below its rows `k_1, …, k_s`.
/// Returns the pieces and the extended charge.
pub fn split(lam: &Multipartition, datum: &SubdivisionDatum) -> Result<(Multipartition, Vec<usize>)> {
    datum.check_level(lam)?;
    let mut comps = Vec::new();
    let mut charge = Vec::new();
    for (p, &x) in lam.components().iter().zip(&datum.charge) {
        let cuts = cut_rows(p, datum.e, datum.k, x)?;
        let mut start = 0;
        for (i, &end) in cuts.iter().chain(std::iter::once(&p.len())).enumerate() {
            comps.push(Partition::new(p.parts()[start..end].to_vec())?);
            charge.push(if i == 0 { x } else { datum.k });
            start = end;
        }
    }
    Ok((Multipartition::new(comps), charge))
}

/// Compares both models under the canonical abacus datum.
pub fn equivalence_check(lam: &Partition, e: usize, k: usize, x: usize) -> Result<bool> {
    let young = subdivide_young(lam, e, k, x)?;
    let ad = canonical_datum(lam, e, k, x)?;
    Ok(subdivide_abacus(lam, e, k, x, &ad)?.0 == young)
}

/// Position in the image of a node of a `k`-horizontal component: the column
/// moves right by the number of `k`-nodes strictly to its left.
pub fn horizontal_image(a: Node, kappa: usize, e: usize, k: usize) -> Node {
    let shift = (1..a.c).filter(|&z| residue_at(kappa, a.r, z, e) == k).count();
    Node::new(a.m, a.r, a.c + shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn strips_of_rectangle() {
        let lam = p(&[11; 7]);
        let strips = maximal_strips(&lam, 5, 1, 1).unwrap();
        let k1: Vec<_> = strips.iter().filter(|s| s.kind == StripKind::KtoK1).collect();
        let nontrivial: Vec<_> = strips.iter().filter(|s| s.kind == StripKind::K1toK && !s.is_trivial()).collect();
        assert_eq!(k1.len(), 3);
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].nodes, vec![(5, 1), (6, 1), (6, 2), (7, 2), (7, 3)]);
        assert!(maximal_strips(&Partition::empty(), 5, 1, 1).unwrap().is_empty());
    }

    #[test]
    fn young_examples() {
        let lam = p(&[11; 7]);
        assert_eq!(subdivide_young(&lam, 5, 1, 1).unwrap(), p(&[14, 13, 13, 13, 13, 13, 12, 2]));
        assert_eq!(subdivide_young(&Partition::empty(), 3, 1, 0).unwrap(), Partition::empty());
        assert_eq!(subdivide_young(&p(&[8, 5]), 3, 1, 0).unwrap(), p(&[11, 6]));
        assert_eq!(subdivide_young(&p(&[4, 3, 2]), 3, 1, 1).unwrap(), p(&[6, 4, 2]));
    }

    #[test]
    fn abacus_examples() {
        let lam = p(&[11; 7]);
        let ad = AbacusDatum { a: 11, c: 2, d: 0, a_prime: 13 };
        assert_eq!(canonical_datum(&lam, 5, 1, 1).unwrap(), ad);
        let (img, t) = subdivide_abacus(&lam, 5, 1, 1, &ad).unwrap();
        assert_eq!(img, p(&[14, 13, 13, 13, 13, 13, 12, 2]));
        assert_eq!(t, vec![1, 7]);
        let bad = AbacusDatum { a: 12, ..ad };
        assert!(matches!(subdivide_abacus(&lam, 5, 1, 1, &bad), Err(Error::DatumViolation(_))));
        let ad0 = canonical_datum(&Partition::empty(), 4, 2, 3).unwrap();
        assert_eq!(subdivide_abacus(&Partition::empty(), 4, 2, 3, &ad0).unwrap().0, Partition::empty());
    }

    #[test]
    fn counting_functions() {
        assert_eq!(counting_n(3, 3, 5), 1);
        assert_eq!(counting_n(13, 1, 4), 4);
        assert_eq!(counting_n(0, 1, 4), 0);
        assert_eq!(iota(0, 1, 5), 0);
        assert_eq!(iota(0, 0, 5), 1);
        assert_eq!(iota(7, 1, 5), 9);
    }

    #[test]
    fn k_counts() {
        let lam = p(&[11; 7]);
        assert_eq!(k_count(&lam, 5, 1, 1).unwrap(), 1);
        assert_eq!(k_count_formula(7, 5, 1, 1), 1);
        assert_eq!(k_count(&Partition::empty(), 5, 1, 1).unwrap(), 0);
        // x ≡ k: the first candidate row is e, not 0
        assert_eq!(k_count(&p(&[4, 3, 2]), 3, 1, 1).unwrap(), 0);
        assert_eq!(k_count_formula(3, 3, 1, 1), 0);
        assert_eq!(cut_rows(&lam, 5, 1, 1).unwrap(), vec![5]);
    }

    #[test]
    fn horizontality_and_split() {
        let d = SubdivisionDatum::new(3, 1, vec![0, 1]).unwrap();
        let lam: Multipartition = "8,5|4,3,2".parse().unwrap();
        assert!(is_k_horizontal(&lam, &d).unwrap());
        assert_eq!(subdivide_multipartition(&lam, &d).unwrap(), "11,6|6,4,2".parse().unwrap());
        assert_eq!(split(&lam, &d).unwrap(), (lam.clone(), vec![0, 1]));
        let d1 = SubdivisionDatum::new(5, 1, vec![1]).unwrap();
        let rect: Multipartition = "11^7".parse().unwrap();
        assert!(!is_k_horizontal(&rect, &d1).unwrap());
        let (pieces, charge) = split(&rect, &d1).unwrap();
        assert_eq!(pieces, "11^5|11^2".parse().unwrap());
        assert_eq!(charge, vec![1, 1]);
        assert!(is_k_horizontal(&Multipartition::empty(2), &d).unwrap());
    }

    #[test]
    fn equivalence_small() {
        assert!(equivalence_check(&p(&[11; 7]), 5, 1, 1).unwrap());
        assert!(equivalence_check(&Partition::empty(), 3, 0, 2).unwrap());
    }
}

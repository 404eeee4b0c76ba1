//! Cartan data of type `A^(1)_{e-1}` and the subdivision maps on roots,
//! words and weights.
//!
//! Roots and weights are dense coefficient vectors of length `e`. Every value
//! carries its rank so that rank-`e` and rank-`e+1` data cannot be mixed.

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, check_vertex, Error, Result};

/// `β = Σ x_i α_i` over the vertex set `0..e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<u64>,
}

/// `Λ = Σ a_i Λ_i` over the vertex set `0..e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coeffs: Vec<u64>,
}

/// A sequence of vertices together with its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub e: usize,
    pub letters: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordClass {
    Ordered,
    AlmostOrdered,
    UnorderedOther,
}

impl Root {
    pub fn zero(e: usize) -> Self {
        Root { coeffs: vec![0; e] }
    }

    pub fn simple(e: usize, i: usize) -> Result<Self> {
        check_vertex(i, e)?;
        let mut r = Root::zero(e);
        r.coeffs[i] = 1;
        Ok(r)
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Result<Self> {
        check_rank(coeffs.len(), 2)?;
        Ok(Root { coeffs })
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn height(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `(α|β)` for two roots of the same rank.
    pub fn pairing(&self, other: &Root) -> Result<i64> {
        same_rank(self.rank(), other.rank())?;
        let e = self.rank();
        let mut total = 0i64;
        for i in 0..e {
            for j in 0..e {
                total += self.coeffs[i] as i64 * other.coeffs[j] as i64 * cartan_entry(e, i, j);
            }
        }
        Ok(total)
    }
}

impl Weight {
    pub fn zero(e: usize) -> Self {
        Weight { coeffs: vec![0; e] }
    }

    pub fn fundamental(e: usize, i: usize) -> Result<Self> {
        check_vertex(i, e)?;
        let mut w = Weight::zero(e);
        w.coeffs[i] = 1;
        Ok(w)
    }

    /// The weight `Σ_m Λ_{κ_m}` of a charge.
    pub fn from_charge(charge: &[usize], e: usize) -> Result<Self> {
        check_rank(e, 2)?;
        let mut w = Weight::zero(e);
        for &k in charge {
            check_vertex(k, e)?;
            w.coeffs[k] += 1;
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn level(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `(Λ|β) = Σ a_i x_i`.
    pub fn pairing(&self, beta: &Root) -> Result<i64> {
        same_rank(self.rank(), beta.rank())?;
        Ok(self
            .coeffs
            .iter()
            .zip(&beta.coeffs)
            .map(|(&a, &x)| (a * x) as i64)
            .sum())
    }
}

impl Word {
    pub fn new(e: usize, letters: Vec<usize>) -> Result<Self> {
        check_rank(e, 2)?;
        for &l in &letters {
            check_vertex(l, e)?;
        }
        Ok(Word { e, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

fn same_rank(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::RankMismatch { left, right });
    }
    Ok(())
}

/// Entry `a_ij` of the Cartan matrix of type `A^(1)_{e-1}`.
pub fn cartan_entry(e: usize, i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if e == 2 {
        -2
    } else if (i + 1) % e == j || (j + 1) % e == i {
        -1
    } else {
        0
    }
}

pub fn associated_root(w: &Word) -> Root {
    let mut r = Root::zero(w.e);
    for &l in &w.letters {
        r.coeffs[l] += 1;
    }
    r
}

/// `def_Λ β = (Λ|β) − (β|β)/2`.
pub fn defect(lambda: &Weight, beta: &Root) -> Result<i64> {
    let lb = lambda.pairing(beta)?;
    let bb = beta.pairing(beta)?;
    assert!(bb % 2 == 0, "the form is even on the root lattice");
    Ok(lb - bb / 2)
}

pub fn subdivide_root(beta: &Root, k: usize) -> Result<Root> {
    let e = beta.rank();
    check_vertex(k, e)?;
    let mut out = Vec::with_capacity(e + 1);
    out.extend_from_slice(&beta.coeffs[..=k]);
    out.push(beta.coeffs[k]);
    out.extend_from_slice(&beta.coeffs[k + 1..]);
    Ok(Root { coeffs: out })
}

/// Inverse of [`subdivide_root`] on roots of rank `e+1` with `x_k = x_{k+1}`.
pub fn unsubdivide_root(beta: &Root, k: usize) -> Result<Root> {
    let e1 = beta.rank();
    check_rank(e1, 3)?;
    check_vertex(k, e1 - 1)?;
    if beta.coeffs[k] != beta.coeffs[k + 1] {
        return Err(Error::NotInImage { k, k1: k + 1 });
    }
    let mut out = beta.coeffs.clone();
    out.remove(k + 1);
    Ok(Root { coeffs: out })
}

/// Relabelling of a rank-`e` vertex other than the split one: indices above
/// `k` move up by one.
pub fn shift_vertex(i: usize, k: usize) -> usize {
    if i > k {
        i + 1
    } else {
        i
    }
}

pub fn subdivide_word(w: &Word, k: usize) -> Result<Word> {
    check_vertex(k, w.e)?;
    let mut out = Vec::with_capacity(w.len() * 2);
    for &l in &w.letters {
        out.push(shift_vertex(l, k));
        if l == k {
            out.push(k + 1);
        }
    }
    Ok(Word { e: w.e + 1, letters: out })
}

/// `φ(t) = t + #{j < t : w_j = k}`, returned 1-based for `t = 1..=n`.
pub fn position_tracing(letters: &[usize], k: usize) -> Vec<usize> {
    let mut seen = 0;
    letters
        .iter()
        .enumerate()
        .map(|(t, &l)| {
            let v = t + 1 + seen;
            if l == k {
                seen += 1;
            }
            v
        })
        .collect()
}

pub fn subdivide_weight(lambda: &Weight, k: usize) -> Result<Weight> {
    let e = lambda.rank();
    check_vertex(k, e)?;
    let mut out = vec![0; e + 1];
    for (i, &a) in lambda.coeffs.iter().enumerate() {
        out[shift_vertex(i, k)] += a;
    }
    Ok(Weight { coeffs: out })
}

/// Subdivision applied to each entry of a charge.
pub fn subdivide_charge(charge: &[usize], k: usize) -> Vec<usize> {
    charge.iter().map(|&i| shift_vertex(i, k)).collect()
}

/// Every occurrence of `k` is immediately followed by `k+1`.
pub fn is_ordered(letters: &[usize], k: usize) -> bool {
    letters
        .iter()
        .enumerate()
        .all(|(a, &l)| l != k || letters.get(a + 1) == Some(&(k + 1)))
}

/// Some prefix has strictly more `k+1`s than `k`s.
pub fn is_unordered(letters: &[usize], k: usize) -> bool {
    let mut balance = 0i64;
    for &l in letters {
        if l == k {
            balance -= 1;
        } else if l == k + 1 {
            balance += 1;
        }
        if balance > 0 {
            return true;
        }
    }
    false
}

/// The word is `σ_r(j)` for an ordered `j` with `j_r = k`.
pub fn is_almost_ordered(letters: &[usize], k: usize) -> bool {
    // j_r = k forces j_{r+1} = k+1, so w_r = k+1 and w_{r+1} = k.
    let mut w = letters.to_vec();
    for r in 0..letters.len().saturating_sub(1) {
        if letters[r] == k + 1 && letters[r + 1] == k {
            w.swap(r, r + 1);
            let ok = is_ordered(&w, k);
            w.swap(r, r + 1);
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn classify_word(w: &Word, k: usize) -> WordClass {
    if is_ordered(&w.letters, k) {
        WordClass::Ordered
    } else if is_almost_ordered(&w.letters, k) {
        WordClass::AlmostOrdered
    } else {
        WordClass::UnorderedOther
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(c: &[u64]) -> Root {
        Root::from_coeffs(c.to_vec()).unwrap()
    }

    #[test]
    fn associated_roots() {
        let w = Word::new(5, vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(associated_root(&w), root(&[1, 1, 1, 1, 1]));
        assert_eq!(associated_root(&Word::new(3, vec![]).unwrap()), Root::zero(3));
        let w = Word::new(3, vec![1, 2, 0, 0, 1, 2, 2, 0, 1, 2, 0, 1, 0]).unwrap();
        assert_eq!(associated_root(&w), root(&[5, 4, 4]));
        assert!(Word::new(3, vec![3]).is_err());
    }

    #[test]
    fn pairings() {
        let a0 = Root::simple(3, 0).unwrap();
        let a1 = Root::simple(3, 1).unwrap();
        assert_eq!(a0.pairing(&a0).unwrap(), 2);
        assert_eq!(a0.pairing(&a1).unwrap(), -1);
        let lam = Weight::from_charge(&[0, 1], 3).unwrap();
        assert_eq!(lam.pairing(&root(&[5, 4, 4])).unwrap(), 9);
        assert!(a0.pairing(&Root::zero(4)).is_err());
        assert_eq!(Root::simple(2, 0).unwrap().pairing(&Root::simple(2, 1).unwrap()).unwrap(), -2);
    }

    #[test]
    fn defects() {
        let l0 = Weight::fundamental(3, 0).unwrap();
        assert_eq!(defect(&l0, &Root::zero(3)).unwrap(), 0);
        assert_eq!(defect(&l0, &Root::simple(3, 0).unwrap()).unwrap(), 0);
        assert_eq!(defect(&l0, &root(&[1, 1, 1])).unwrap(), 1);
    }

    #[test]
    fn root_subdivision() {
        assert_eq!(subdivide_root(&Root::simple(3, 1).unwrap(), 1).unwrap(), root(&[0, 1, 1, 0]));
        assert_eq!(subdivide_root(&Root::simple(3, 0).unwrap(), 1).unwrap(), root(&[1, 0, 0, 0]));
        assert_eq!(subdivide_root(&root(&[5, 4, 4]), 1).unwrap(), root(&[5, 4, 4, 4]));
        assert_eq!(unsubdivide_root(&root(&[5, 4, 4, 4]), 1).unwrap(), root(&[5, 4, 4]));
        assert!(unsubdivide_root(&root(&[5, 4, 3, 4]), 1).is_err());
        assert!(subdivide_root(&root(&[5, 4, 4]), 3).is_err());
    }

    #[test]
    fn word_subdivision() {
        let w = Word::new(3, vec![1, 2, 0, 0, 1, 2, 2, 0, 1, 2, 0, 1, 0]).unwrap();
        let img = subdivide_word(&w, 1).unwrap();
        assert_eq!(img.letters, vec![1, 2, 3, 0, 0, 1, 2, 3, 3, 0, 1, 2, 3, 0, 1, 2, 0]);
        assert_eq!(img.e, 4);
        assert!(subdivide_word(&Word::new(3, vec![]).unwrap(), 1).unwrap().is_empty());
        let w = Word::new(4, vec![0, 3]).unwrap();
        assert_eq!(subdivide_word(&w, 0).unwrap().letters, vec![0, 1, 4]);
    }

    #[test]
    fn tracing() {
        assert_eq!(position_tracing(&[1, 0, 1], 1), vec![1, 3, 4]);
        assert_eq!(position_tracing(&[1, 2, 0], 1), vec![1, 3, 4]);
        assert_eq!(position_tracing(&[0, 2, 2], 1), vec![1, 2, 3]);
    }

    #[test]
    fn weight_subdivision() {
        let w = Weight::from_charge(&[0, 1], 3).unwrap();
        assert_eq!(subdivide_weight(&w, 1).unwrap().coeffs, vec![1, 1, 0, 0]);
        let w = Weight::fundamental(3, 2).unwrap();
        assert_eq!(subdivide_weight(&w, 1).unwrap().coeffs, vec![0, 0, 0, 1]);
        let w = Weight::from_charge(&[0, 4, 4], 5).unwrap();
        assert_eq!(subdivide_weight(&w, 4).unwrap().coeffs, vec![1, 0, 0, 0, 2, 0]);
    }

    #[test]
    fn classification() {
        let w = Word::new(4, vec![2, 1]).unwrap();
        assert_eq!(classify_word(&w, 1), WordClass::AlmostOrdered);
        assert!(is_unordered(&w.letters, 1));
        let w = Word::new(4, vec![2, 3, 1]).unwrap();
        assert_eq!(classify_word(&w, 1), WordClass::UnorderedOther);
        let w = Word::new(4, vec![1, 2, 3, 0]).unwrap();
        assert_eq!(classify_word(&w, 1), WordClass::Ordered);
    }
}

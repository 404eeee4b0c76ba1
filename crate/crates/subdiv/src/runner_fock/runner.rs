//! Runner addition `λ^{+d}`, extended beta multisets, `ε_d`, and scans
//! comparing decomposition numbers across `e` and `e+1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fock::{Convention, FockEngine};
use super::laurent::LaurentPoly;
use super::reference::Tag;
use crate::error::{check_rank, Error, Result};
use crate::partition_core::{beta_set, is_e_regular, multipartitions, partition_from_beta, residue_content, Multipartition, Partition};
use crate::subdivision::{iota, new_runner_beads};

/// `a + d = ce + k` with `a ≥ ℓ(λ)` and `k ∈ 0..e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunnerData {
    pub d: i64,
    pub a: usize,
    pub c: usize,
    pub k: usize,
}

impl RunnerData {
    pub fn new(lam: &Partition, e: usize, d: i64, a: usize) -> Result<Self> {
        check_rank(e, 1)?;
        if a < lam.len() {
            return Err(Error::InvalidRunnerData(format!("a = {a} < ℓ(λ) = {}", lam.len())));
        }
        let total = a as i64 + d;
        if total < 0 {
            return Err(Error::InvalidRunnerData(format!("a + d = {total} < 0")));
        }
        let total = total as usize;
        Ok(RunnerData { d, a, c: total / e, k: total % e })
    }

    /// Smallest admissible `a` with `a ≡ x (mod e)`.
    pub fn aligned(lam: &Partition, e: usize, d: i64, x: usize) -> Result<Self> {
        check_rank(e, 1)?;
        let lo = (lam.len() as i64).max(-d).max(0) as usize;
        let a = lo + (x + e - lo % e) % e;
        RunnerData::new(lam, e, d, a)
    }
}

/// The `(e+1)`-abacus partition with beads `ι_k(B(λ; a)) ∪ T`.
pub fn runner_add(lam: &Partition, e: usize, rd: &RunnerData) -> Result<Partition> {
    let check = RunnerData::new(lam, e, rd.d, rd.a)?;
    if check != *rd {
        return Err(Error::InvalidRunnerData(format!("expected c = {}, k = {}", check.c, check.k)));
    }
    let mut beads: Vec<usize> = beta_set(lam, rd.a)?.into_iter().map(|b| iota(b, rd.k, e)).collect();
    beads.extend(new_runner_beads(e, rd.k, rd.c));
    partition_from_beta(&beads)
}

/// Sorted multiset in which `z` occurs `#(B(λ; a) ∩ {z, z+e, …})` times.
pub fn extended_beta(lam: &Partition, e: usize, a: usize) -> Result<Vec<usize>> {
    check_rank(e, 1)?;
    let beads = beta_set(lam, a)?;
    let top = beads.first().copied().unwrap_or(0);
    let mut out = Vec::new();
    for z in 0..=top {
        let mul = beads.iter().filter(|&&b| b >= z && (b - z) % e == 0).count();
        out.extend(std::iter::repeat_n(z, mul));
    }
    Ok(out)
}

/// Entries of the extended beta multiset at least `a + d`.
pub fn epsilon_d(lam: &Partition, e: usize, rd: &RunnerData) -> Result<usize> {
    let bound = rd.a as i64 + rd.d;
    Ok(extended_beta(lam, e, rd.a)?.into_iter().filter(|&z| z as i64 >= bound).count())
}

/// Componentwise runner addition for a charged multipartition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiRunner {
    pub e: usize,
    pub d: Vec<i64>,
    pub data: Vec<RunnerData>,
    /// Shared remainder `k`.
    pub k: usize,
    /// Charge of the image at rank `e+1`.
    pub image_charge: Vec<usize>,
}

impl MultiRunner {
    /// Uses `a_m ≡ κ_m (mod e)` for each component; all `a_m + d_m` must
    /// share one remainder mod `e`.
    pub fn new(lam: &Multipartition, e: usize, charge: &[usize], d: &[i64]) -> Result<Self> {
        if charge.len() != lam.level() || d.len() != lam.level() {
            return Err(Error::ChargeLength { charge: charge.len().min(d.len()), components: lam.level() });
        }
        let data = lam
            .components()
            .iter()
            .zip(charge.iter().zip(d))
            .map(|(p, (&x, &dm))| RunnerData::aligned(p, e, dm, x))
            .collect::<Result<Vec<_>>>()?;
        let k = data[0].k;
        if data.iter().any(|rd| rd.k != k) {
            return Err(Error::InvalidRunnerData(format!("κ + d must be constant mod {e}")));
        }
        let image_charge = data.iter().map(|rd| (rd.a + rd.c) % (e + 1)).collect();
        Ok(MultiRunner { e, d: d.to_vec(), data, k, image_charge })
    }

    /// Data for another multipartition with the same charge and `d`.
    pub fn for_shape(&self, lam: &Multipartition, charge: &[usize]) -> Result<Self> {
        MultiRunner::new(lam, self.e, charge, &self.d)
    }

    pub fn apply(&self, lam: &Multipartition) -> Result<Multipartition> {
        let comps = lam
            .components()
            .iter()
            .zip(&self.data)
            .map(|(p, rd)| runner_add(p, self.e, rd))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multipartition::new(comps))
    }

    pub fn epsilon(&self, lam: &Multipartition) -> Result<Vec<usize>> {
        lam.components().iter().zip(&self.data).map(|(p, rd)| epsilon_d(p, self.e, rd)).collect()
    }
}

/// Result of comparing `d^e_{μλ}` with `d^{e+1}_{μ⁺λ⁺}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunnerCheck {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub epsilon_lambda: Vec<usize>,
    pub epsilon_mu: Vec<usize>,
    pub hypothesis_holds: bool,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
}

/// Level-1 comparison for a single pair, with fresh engines.
pub fn runner_theorem_check(lam: &Partition, mu: &Partition, e: usize, rd: &RunnerData, conv: Convention) -> Result<RunnerCheck> {
    let lam_m = Multipartition::from(lam.clone());
    let mu_m = Multipartition::from(mu.clone());
    let runner = MultiRunner { e, d: vec![rd.d], data: vec![*rd], k: rd.k, image_charge: vec![(rd.a + rd.c) % (e + 1)] };
    let mu_rd = RunnerData::new(mu, e, rd.d, rd.a)?;
    let mu_runner = MultiRunner { data: vec![mu_rd], ..runner.clone() };
    let charge = [rd.a % e];
    let mut low = FockEngine::new(e, &charge, conv)?;
    let mut high = FockEngine::new(e + 1, &runner.image_charge, conv)?;
    compare_pair(&mut low, &mut high, &lam_m, &mu_m, &runner, &mu_runner)
}

fn compare_pair(
    low: &mut FockEngine,
    high: &mut FockEngine,
    lam: &Multipartition,
    mu: &Multipartition,
    lam_runner: &MultiRunner,
    mu_runner: &MultiRunner,
) -> Result<RunnerCheck> {
    let epsilon_lambda = lam_runner.epsilon(lam)?;
    let epsilon_mu = mu_runner.epsilon(mu)?;
    let lhs = low.decomposition_number(mu, lam)?;
    let rhs = high.decomposition_number(&mu_runner.apply(mu)?, &lam_runner.apply(lam)?)?;
    Ok(RunnerCheck {
        lambda: lam.clone(),
        mu: mu.clone(),
        hypothesis_holds: epsilon_lambda == epsilon_mu,
        equal: lhs == rhs,
        epsilon_lambda,
        epsilon_mu,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// `ε_d(λ) = ε_d(μ)` as vectors.
    ComponentwiseEq,
    /// `|ε_d(λ)| = |ε_d(μ)|`.
    TotalEq,
}

impl ScanMode {
    fn holds(self, a: &[usize], b: &[usize]) -> bool {
        match self {
            ScanMode::ComponentwiseEq => a == b,
            ScanMode::TotalEq => a.iter().sum::<usize>() == b.iter().sum::<usize>(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub pairs_checked: usize,
    pub confirmed: usize,
    pub counterexamples: Vec<RunnerCheck>,
    pub skipped_blocks: Vec<String>,
}

impl ScanReport {
    fn merge(mut self, other: ScanReport) -> ScanReport {
        self.pairs_checked += other.pairs_checked;
        self.confirmed += other.confirmed;
        self.counterexamples.extend(other.counterexamples);
        self.skipped_blocks.extend(other.skipped_blocks);
        self
    }
}

/// Scan parameters shared by every block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub e: usize,
    pub charge: Vec<usize>,
    pub d: Vec<i64>,
    pub n_max: usize,
    pub mode: ScanMode,
    /// Restrict `λ` to one multipartition.
    pub focus: Option<Multipartition>,
    /// At level 1, restrict `λ` to `e`-regular partitions.
    pub regular_only: bool,
}

/// Every pair `(λ, μ)` in a common block of size at most `n_max` meeting the
/// ε-condition. Blocks are processed in parallel, one engine pair each.
pub fn conjecture_scan(cfg: &ScanConfig, conv: Convention) -> Result<ScanReport> {
    check_rank(cfg.e, 2)?;
    let level = cfg.charge.len();
    let mut blocks: BTreeMap<(usize, Vec<u64>), Vec<Multipartition>> = BTreeMap::new();
    let sizes: Vec<usize> = match &cfg.focus {
        Some(f) => vec![f.size()],
        None => (0..=cfg.n_max).collect(),
    };
    for n in sizes {
        for lam in multipartitions(n, level) {
            let content = residue_content(&lam, &cfg.charge, cfg.e)?;
            blocks.entry((n, content.coeffs)).or_default().push(lam);
        }
    }
    if let Some(f) = &cfg.focus {
        let content = residue_content(f, &cfg.charge, cfg.e)?.coeffs;
        blocks.retain(|(_, c), _| *c == content);
    }
    let reports = blocks
        .into_par_iter()
        .map(|(_, members)| scan_block(cfg, conv, &members))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.into_iter().fold(ScanReport::default(), ScanReport::merge))
}

fn scan_block(cfg: &ScanConfig, conv: Convention, members: &[Multipartition]) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    let first = &members[0];
    let base = MultiRunner::new(first, cfg.e, &cfg.charge, &cfg.d)?;
    let mut low = FockEngine::new(cfg.e, &cfg.charge, conv)?;
    let mut high = FockEngine::new(cfg.e + 1, &base.image_charge, conv)?;
    let runners = members.iter().map(|m| base.for_shape(m, &cfg.charge)).collect::<Result<Vec<_>>>()?;
    let eps = members.iter().zip(&runners).map(|(m, r)| r.epsilon(m)).collect::<Result<Vec<_>>>()?;
    for (li, lam) in members.iter().enumerate() {
        if cfg.focus.as_ref().is_some_and(|f| f != lam) {
            continue;
        }
        if cfg.regular_only && !lam.components().iter().all(|p| is_e_regular(p, cfg.e)) {
            continue;
        }
        if let Err(err) = low.canonical_basis(lam) {
            report.skipped_blocks.push(format!("{lam}: {err}"));
            continue;
        }
        for (mi, mu) in members.iter().enumerate() {
            if !cfg.mode.holds(&eps[li], &eps[mi]) {
                continue;
            }
            match compare_pair(&mut low, &mut high, lam, mu, &runners[li], &runners[mi]) {
                Ok(check) => {
                    report.pairs_checked += 1;
                    if check.equal {
                        report.confirmed += 1;
                    } else {
                        report.counterexamples.push(check);
                    }
                }
                Err(err @ Error::UnsupportedBlock(_)) => {
                    report.skipped_blocks.push(format!("{}: {err}", runners[li].apply(lam)?));
                    break;
                }
                Err(err) => return Err(err),
            }
        }
    }
    Ok(report)
}

/// One term of `G_e(λ)` with its runner-addition image data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermImage {
    pub mu: Multipartition,
    pub coeff: LaurentPoly,
    pub epsilon: Vec<usize>,
    pub image: Multipartition,
    pub image_coeff: LaurentPoly,
    pub tag: Tag,
}

/// Every term of `G_e(λ)` paired with the coefficient of its image in
/// `G_{e+1}(λ^{+d})`.
pub fn term_images(lam: &Multipartition, e: usize, charge: &[usize], d: &[i64], conv: Convention) -> Result<(MultiRunner, Vec<TermImage>)> {
    let runner = MultiRunner::new(lam, e, charge, d)?;
    let mut low = FockEngine::new(e, charge, conv)?;
    let mut high = FockEngine::new(e + 1, &runner.image_charge, conv)?;
    let g = low.canonical_basis(lam)?;
    let g_plus = high.canonical_basis(&runner.apply(lam)?)?;
    let total = runner.epsilon(lam)?.iter().sum::<usize>();
    let mut out = Vec::new();
    for (mu, p) in g.sorted_terms() {
        let r = runner.for_shape(mu, charge)?;
        let image = r.apply(mu)?;
        let epsilon = r.epsilon(mu)?;
        let image_coeff = g_plus.coeff(&image);
        let tag = match (image_coeff.is_zero(), epsilon.iter().sum::<usize>() == total) {
            (true, _) => Tag::Red,
            (false, true) => Tag::Cyan,
            (false, false) => Tag::Plain,
        };
        out.push(TermImage { mu: mu.clone(), coeff: p.clone(), epsilon, image, image_coeff, tag });
    }
    Ok((runner, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn runner_addition_examples() {
        let lam = p(&[5, 4, 2, 1, 1]);
        let mu = p(&[7, 2, 2, 1, 1]);
        let rd = RunnerData::new(&lam, 4, 4, 9).unwrap();
        assert_eq!((rd.c, rd.k), (3, 1));
        assert_eq!(runner_add(&lam, 4, &rd).unwrap(), p(&[6, 4, 2, 2, 1, 1, 1]));
        assert_eq!(runner_add(&mu, 4, &rd).unwrap(), p(&[8, 2, 2, 2, 1, 1, 1]));
        assert_eq!(extended_beta(&lam, 4, 9).unwrap(), vec![0, 0, 1, 1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 7, 8, 9, 11, 13]);
        assert_eq!(extended_beta(&mu, 4, 9).unwrap(), vec![0, 0, 1, 1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 7, 8, 9, 11, 15]);
        assert_eq!(epsilon_d(&lam, 4, &rd).unwrap(), 1);
        assert_eq!(epsilon_d(&mu, 4, &rd).unwrap(), 1);
    }

    #[test]
    fn level_two_example() {
        let lam: Multipartition = "6|5,1,1".parse().unwrap();
        let r = MultiRunner::new(&lam, 3, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(r.data.iter().map(|d| d.a).collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(r.apply(&lam).unwrap(), "8|7,1,1".parse().unwrap());
        assert_eq!(r.epsilon(&lam).unwrap(), vec![2, 2]);
        assert_eq!(r.image_charge, vec![0, 1]);
    }

    #[test]
    fn independent_of_a() {
        for lam in crate::partition_core::partitions_up_to(7) {
            for d in -3..6i64 {
                let base = RunnerData::aligned(&lam, 3, d, 0).unwrap();
                let img = runner_add(&lam, 3, &base).unwrap();
                let eps = epsilon_d(&lam, 3, &base).unwrap();
                for step in 1..=5 {
                    let rd = RunnerData::new(&lam, 3, d, base.a + 3 * step).unwrap();
                    assert_eq!(runner_add(&lam, 3, &rd).unwrap(), img);
                    assert_eq!(epsilon_d(&lam, 3, &rd).unwrap(), eps);
                }
            }
        }
    }

    #[test]
    fn empty_partition() {
        let rd = RunnerData::new(&Partition::empty(), 3, 2, 4).unwrap();
        assert_eq!(epsilon_d(&Partition::empty(), 3, &rd).unwrap(), 0);
        assert_eq!(extended_beta(&Partition::empty(), 3, 4).unwrap(), vec![0, 0, 1, 2, 3]);
    }
}

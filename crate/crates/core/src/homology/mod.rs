//! Exact integer homology of chain complexes of finitely presented groups.
//!
//! A [`PresentedComplex`] stores, per degree, generator labels, relation
//! rows and the differential of every generator. Homology in degree `k` is
//! `Z_k / B_k` with `Z_k = {x : d x ∈ ⟨R_{k-1}⟩}` and
//! `B_k = ⟨R_k⟩ + im d_{k+1}`, both computed as lattices in `ℤ^{gens}`.

mod complexes;
mod snf;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use complexes::{
    fold_map, formal_complex, formal_quotient_map, full_chains, graded_nerve_complexes,
    h_minus_map, nerve_complex, nerve_quotient_map, normalized_chains, old_globular_complex,
    old_to_formal_map, reduced_chains, reduced_complex, thin_cycle_report, FormalVariant,
    NerveChains, OldDegreeZero, ThinCycleReport,
};
pub use snf::{
    dense, invariants, kernel, lattice_contains, lattice_contains_all, normalize, rank, snf,
    EchelonBasis, IntMatrix, Snf, SparseVec,
};

use crate::error::{Error, Result};

/// Generators, relations and differential of one degree.
#[derive(Clone, Debug, Default)]
pub struct ChainGroup {
    pub labels: Vec<String>,
    /// Relation rows over the generators of this degree.
    pub relations: Vec<SparseVec>,
    /// `d` of each generator, over the generators one degree down.
    pub boundary: Vec<SparseVec>,
}

impl ChainGroup {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub name: String,
    /// Lowest degree.
    pub low: i64,
    /// Theory degree minus complex degree.
    pub shift: i64,
    /// Truncation `D` of the underlying nerve, if any.
    pub truncation: Option<usize>,
    /// Highest degree whose homology is exact.
    pub valid_to: i64,
    groups: Vec<ChainGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors > 1, each dividing the next.
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn zero() -> HomologyGroup {
        HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> HomologyGroup {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum.
    pub fn sum(&self, other: &HomologyGroup) -> HomologyGroup {
        // primary decomposition would be overkill: merge and re-normalize
        let mut m = IntMatrix::zeros(self.torsion.len() + other.torsion.len(), self.torsion.len() + other.torsion.len());
        for (i, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m[(i, i)] = t.clone();
        }
        let torsion = snf::invariants_dense(&m).into_iter().filter(|x| !x.is_one()).collect();
        HomologyGroup {
            rank: self.rank + other.rank,
            torsion,
        }
    }

    fn from_invariants(gens: usize, inv: &[BigInt]) -> HomologyGroup {
        HomologyGroup {
            rank: gens - inv.len(),
            torsion: inv.iter().filter(|x| !x.is_one()).cloned().collect(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassStatus {
    NotCycle,
    Boundary,
    NontrivialClass,
}

impl PresentedComplex {
    pub fn new(name: impl Into<String>, low: i64, shift: i64) -> PresentedComplex {
        PresentedComplex {
            name: name.into(),
            low,
            shift,
            truncation: None,
            valid_to: i64::MAX,
            groups: Vec::new(),
        }
    }

    /// Marks the top degree as a truncation: homology is exact one below it.
    pub fn truncated(mut self, d: usize) -> PresentedComplex {
        self.truncation = Some(d);
        self.valid_to = self.top() - 1;
        self
    }

    /// Appends the next degree up.
    pub fn push(&mut self, g: ChainGroup) {
        self.groups.push(g);
    }

    pub fn top(&self) -> i64 {
        self.low + self.groups.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.low..=self.top()
    }

    pub fn group(&self, k: i64) -> Option<&ChainGroup> {
        if k < self.low {
            return None;
        }
        self.groups.get((k - self.low) as usize)
    }

    pub fn group_mut(&mut self, k: i64) -> Option<&mut ChainGroup> {
        if k < self.low {
            return None;
        }
        self.groups.get_mut((k - self.low) as usize)
    }

    pub fn len(&self, k: i64) -> usize {
        self.group(k).map_or(0, ChainGroup::len)
    }

    pub fn labels(&self, k: i64) -> &[String] {
        self.group(k).map_or(&[], |g| &g.labels[..])
    }

    fn relations(&self, k: i64) -> &[SparseVec] {
        self.group(k).map_or(&[], |g| &g.relations[..])
    }

    fn boundaries(&self, k: i64) -> &[SparseVec] {
        self.group(k).map_or(&[], |g| &g.boundary[..])
    }

    /// Highest valid theory degree.
    pub fn valid_theory_to(&self) -> i64 {
        self.valid_to.saturating_add(self.shift)
    }

    fn check_degree(&self, k: i64) -> Result<()> {
        if k > self.valid_to {
            return Err(Error::Truncation {
                requested: k,
                truncation: self.truncation.unwrap_or(self.top().max(0) as usize),
                valid: self.valid_to,
            });
        }
        Ok(())
    }

    /// `d` applied to a chain of degree `k`.
    pub fn apply_d(&self, k: i64, chain: &SparseVec) -> SparseVec {
        let b = self.boundaries(k);
        let mut out = Vec::new();
        for &(i, c) in chain {
            out.extend(b[i].iter().map(|&(j, e)| (j, c * e)));
        }
        normalize(out)
    }

    fn has_relations(&self, k: i64) -> bool {
        !self.relations(k).is_empty()
    }

    /// `H_k` in this complex's own degrees.
    pub fn homology(&self, k: i64) -> Result<HomologyGroup> {
        self.check_degree(k)?;
        let g = self.len(k);
        if g == 0 {
            return Ok(HomologyGroup::zero());
        }
        if !self.has_relations(k) && !self.has_relations(k - 1) {
            let rank_d = rank(self.len(k - 1), self.boundaries(k));
            let inv = invariants(g, self.boundaries(k + 1));
            let h = HomologyGroup::from_invariants(g - rank_d, &inv);
            return Ok(h);
        }
        let z = self.cycle_lattice(k);
        let b = self.boundary_generators(k);
        self.quotient(&z, &b)
    }

    /// `H^F_p`: theory degree `p` is complex degree `p - shift`.
    pub fn theory_homology(&self, p: i64) -> Result<HomologyGroup> {
        self.homology(p - self.shift)
    }

    /// All valid degrees, computed in parallel.
    pub fn homology_all(&self) -> Result<BTreeMap<i64, HomologyGroup>> {
        let top = self.top().min(self.valid_to);
        (self.low..=top)
            .into_par_iter()
            .map(|k| self.homology(k).map(|h| (k, h)))
            .collect()
    }

    /// Lattice of chains whose boundary vanishes modulo relations.
    fn cycle_lattice(&self, k: i64) -> EchelonBasis {
        let g = self.len(k);
        let below = self.len(k - 1);
        let rels = self.relations(k - 1);
        let mut m = IntMatrix::zeros(below, g + rels.len());
        for (j, col) in self.boundaries(k).iter().enumerate() {
            for &(i, c) in col {
                m[(i, j)] += c;
            }
        }
        for (j, r) in rels.iter().enumerate() {
            for &(i, c) in r {
                m[(i, g + j)] -= c;
            }
        }
        let ker = kernel(&m);
        EchelonBasis::new(g, ker.into_iter().map(|v| v[..g].to_vec()))
    }

    fn boundary_generators(&self, k: i64) -> Vec<Vec<BigInt>> {
        let g = self.len(k);
        self.boundaries(k + 1)
            .iter()
            .chain(self.relations(k))
            .map(|v| dense(g, v))
            .collect()
    }

    fn quotient(&self, z: &EchelonBasis, b: &[Vec<BigInt>]) -> Result<HomologyGroup> {
        let mut m = IntMatrix::zeros(b.len(), z.rank());
        for (i, v) in b.iter().enumerate() {
            let c = z
                .coordinates(v)
                .ok_or_else(|| Error::invariant(format!("{}: a boundary is not a cycle", self.name)))?;
            for (j, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        let inv = snf::invariants_dense(&m);
        Ok(HomologyGroup::from_invariants(z.rank(), &inv))
    }

    /// Decides the class of `chain` in degree `k`.
    pub fn class_test(&self, k: i64, chain: &SparseVec) -> Result<ClassStatus> {
        self.check_degree(k)?;
        let g = self.len(k);
        if let Some(&(i, _)) = chain.iter().find(|e| e.0 >= g) {
            return Err(Error::input(format!("generator {i} out of range in degree {k}")));
        }
        let chain = normalize(chain.clone());
        let dc = self.apply_d(k, &chain);
        if !lattice_contains(self.len(k - 1), self.relations(k - 1), &dc) {
            return Ok(ClassStatus::NotCycle);
        }
        let mut gens: Vec<SparseVec> = self.boundaries(k + 1).to_vec();
        gens.extend(self.relations(k).iter().cloned());
        Ok(if lattice_contains(g, &gens, &chain) {
            ClassStatus::Boundary
        } else {
            ClassStatus::NontrivialClass
        })
    }

    /// Index of a generator label in degree `k`.
    pub fn generator(&self, k: i64, label: &str) -> Result<usize> {
        self.labels(k)
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::input(format!("no generator `{label}` in degree {k}")))
    }

    /// Builds a chain from `(coefficient, label)` terms.
    pub fn chain(&self, k: i64, terms: &[(i64, &str)]) -> Result<SparseVec> {
        let mut v = Vec::new();
        for &(c, l) in terms {
            v.push((self.generator(k, l)?, c));
        }
        Ok(normalize(v))
    }

    /// `d ∘ d` lands in the relation span, and `d` maps relations into
    /// relations, in every degree.
    pub fn check(&self) -> Result<()> {
        for k in self.degrees() {
            let g = self.group(k).unwrap();
            if g.boundary.len() != g.labels.len() {
                return Err(Error::invariant(format!("{}: degree {k} boundary count", self.name)));
            }
            let below = self.len(k - 1);
            if g.relations.iter().any(|v| v.iter().any(|e| e.0 >= g.len()))
                || g.boundary.iter().any(|v| v.iter().any(|e| e.0 >= below))
            {
                return Err(Error::invariant(format!("{}: degree {k} boundary out of range", self.name)));
            }
            if k - 1 < self.low {
                continue;
            }
            let dd: Vec<SparseVec> = g.boundary.iter().map(|v| self.apply_d(k - 1, v)).collect();
            if !lattice_contains_all(self.len(k - 2), self.relations(k - 2), &dd) {
                return Err(Error::invariant(format!("{}: d∘d ≠ 0 in degree {k}", self.name)));
            }
            let dr: Vec<SparseVec> = g.relations.iter().map(|v| self.apply_d(k, v)).collect();
            if !lattice_contains_all(below, self.relations(k - 1), &dr) {
                return Err(Error::invariant(format!("{}: d does not preserve relations in degree {k}", self.name)));
            }
        }
        Ok(())
    }

    /// The same complex with generators reordered: `perm[k][old] = new`.
    pub fn permuted(&self, perm: &BTreeMap<i64, Vec<usize>>) -> PresentedComplex {
        let id = |k: i64, n: usize| -> Vec<usize> { perm.get(&k).cloned().unwrap_or_else(|| (0..n).collect()) };
        let mut out = self.clone();
        for k in self.degrees() {
            let g = self.group(k).unwrap();
            let p = id(k, g.len());
            let q = id(k - 1, self.len(k - 1));
            let remap = |v: &SparseVec, p: &[usize]| normalize(v.iter().map(|&(i, c)| (p[i], c)).collect());
            let mut labels = vec![String::new(); g.len()];
            let mut boundary = vec![Vec::new(); g.len()];
            for i in 0..g.len() {
                labels[p[i]] = g.labels[i].clone();
                boundary[p[i]] = remap(&g.boundary[i], &q);
            }
            let relations = g.relations.iter().map(|r| remap(r, &p)).collect();
            *out.group_mut(k).unwrap() = ChainGroup {
                labels,
                relations,
                boundary,
            };
        }
        out
    }

    pub fn sizes(&self) -> Vec<(i64, usize, usize)> {
        self.degrees()
            .map(|k| (k, self.len(k), self.relations(k).len()))
            .collect()
    }
}

/// A degreewise map of generators, indexed by theory degree.
#[derive(Clone, Debug, Default)]
pub struct ChainMap {
    pub name: String,
    /// Image of each source generator, over the target generators.
    pub maps: BTreeMap<i64, Vec<SparseVec>>,
}

impl ChainMap {
    fn image(&self, p: i64, chain: &SparseVec) -> SparseVec {
        let Some(m) = self.maps.get(&p) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &(i, c) in chain {
            out.extend(m[i].iter().map(|&(j, e)| (j, c * e)));
        }
        normalize(out)
    }

    /// Verifies that the map respects relations and commutes with `d`
    /// in every theory degree where both complexes are defined.
    pub fn check(&self, src: &PresentedComplex, tgt: &PresentedComplex) -> Result<()> {
        let fail = |p: i64, what: &str| Error::invariant(format!("{}: {what} in degree {p}", self.name));
        for (&p, m) in &self.maps {
            let (ks, kt) = (p - src.shift, p - tgt.shift);
            if m.len() != src.len(ks) {
                return Err(fail(p, "generator count mismatch"));
            }
            if m.iter().any(|v| v.iter().any(|e| e.0 >= tgt.len(kt))) {
                return Err(fail(p, "image out of range"));
            }
            let rel: Vec<SparseVec> = src.relations(ks).iter().map(|r| self.image(p, r)).collect();
            if !lattice_contains_all(tgt.len(kt), tgt.relations(kt), &rel) {
                return Err(fail(p, "relations are not preserved"));
            }
            // commutation needs the map one degree down
            if !self.maps.contains_key(&(p - 1)) && src.len(ks - 1) > 0 {
                continue;
            }
            let diffs: Vec<SparseVec> = (0..src.len(ks))
                .map(|i| {
                    let a = tgt.apply_d(kt, &m[i]);
                    let b = self.image(p - 1, &src.boundaries(ks)[i]);
                    normalize(a.into_iter().chain(b.into_iter().map(|(j, c)| (j, -c))).collect())
                })
                .collect();
            if !lattice_contains_all(tgt.len(kt - 1), tgt.relations(kt - 1), &diffs) {
                return Err(fail(p, "d does not commute"));
            }
        }
        Ok(())
    }

    /// Whether the induced map `H_p(src) → H_p(tgt)` is an isomorphism.
    pub fn induced_is_iso(&self, src: &PresentedComplex, tgt: &PresentedComplex, p: i64) -> Result<bool> {
        let (ks, kt) = (p - src.shift, p - tgt.shift);
        src.check_degree(ks)?;
        tgt.check_degree(kt)?;
        let (gs, gt) = (src.len(ks), tgt.len(kt));
        let zs = if gs == 0 { EchelonBasis::default() } else { src.cycle_lattice(ks) };
        let zt = if gt == 0 { EchelonBasis::default() } else { tgt.cycle_lattice(kt) };
        let bt: Vec<SparseVec> = tgt.boundaries(kt + 1).iter().chain(tgt.relations(kt)).cloned().collect();
        let to_sparse = |v: &[BigInt]| -> SparseVec {
            normalize(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, i64::try_from(x).expect("coefficient fits")))
                    .collect(),
            )
        };
        let images: Vec<SparseVec> = zs.basis().map(|z| self.image(p, &to_sparse(z))).collect();
        // surjective: images and target boundaries span the target cycles
        let mut span = images.clone();
        span.extend(bt.iter().cloned());
        let zt_sparse: Vec<SparseVec> = zt.basis().map(|v| to_sparse(v)).collect();
        if !lattice_contains_all(gt, &span, &zt_sparse) {
            return Ok(false);
        }
        // injective: cycles mapping to boundaries are boundaries
        if zs.rank() == 0 {
            return Ok(true);
        }
        let mut m = IntMatrix::zeros(gt, zs.rank() + bt.len());
        for (j, v) in images.iter().enumerate() {
            for &(i, c) in v {
                m[(i, j)] += c;
            }
        }
        for (j, v) in bt.iter().enumerate() {
            for &(i, c) in v {
                m[(i, zs.rank() + j)] -= c;
            }
        }
        let basis: Vec<&Vec<BigInt>> = zs.basis().collect();
        let kills: Vec<SparseVec> = kernel(&m)
            .into_iter()
            .map(|c| {
                let mut v = vec![BigInt::zero(); gs];
                for (cz, z) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(z.iter()) {
                        *x += cz * y;
                    }
                }
                to_sparse(&v)
            })
            .collect();
        let bs: Vec<SparseVec> = src.boundaries(ks + 1).iter().chain(src.relations(ks)).cloned().collect();
        Ok(lattice_contains_all(gs, &bs, &kills))
    }
}

/// One row of a comparison report.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub map: String,
    pub degree: i64,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub isomorphism: bool,
}

/// Checks `f` and reports `H_p(src) → H_p(tgt)` for every theory degree
/// valid on both sides within `degrees`.
pub fn compare(
    f: &ChainMap,
    src: &PresentedComplex,
    tgt: &PresentedComplex,
    degrees: std::ops::RangeInclusive<i64>,
) -> Result<Vec<Comparison>> {
    f.check(src, tgt)?;
    let top = src.valid_theory_to().min(tgt.valid_theory_to()).min(*degrees.end());
    let lo = *degrees.start();
    (lo..=top)
        .into_par_iter()
        .map(|p| {
            Ok(Comparison {
                map: f.name.clone(),
                degree: p,
                source: src.theory_homology(p)?,
                target: tgt.theory_homology(p)?,
                isomorphism: f.induced_is_iso(src, tgt, p)?,
            })
        })
        .collect()
}

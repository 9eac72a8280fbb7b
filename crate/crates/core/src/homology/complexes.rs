//! The concrete complexes: nerve chains and their quotients, the formal
//! complexes and the old globular complex, plus the maps between them.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{normalize, ChainGroup, ChainMap, PresentedComplex, SparseVec};
use crate::cutmaps::{h_minus, Folding};
use crate::error::{Error, Result};
use crate::facecomb::Sign;
use crate::nerves::{Grade, Nerve, NerveKind};
use crate::omegacat::{ElemId, OmegaCat};

fn aug_label(nerve: &Nerve, g: Grade) -> String {
    let c = nerve.category();
    match nerve.kind {
        NerveKind::Globular => format!("({},{})", c.label(g.0), c.label(g.1)),
        NerveKind::Corner(_) => c.label(g.0),
    }
}

fn simplex_label(nerve: &Nerve, n: usize, x: usize) -> String {
    format!("{n}.{x}:{}", nerve.category().label(nerve.ev(n, x)))
}

/// Unnormalized differential of simplex `x` in degree `n`.
fn simplex_boundary(nerve: &Nerve, n: usize, x: usize) -> SparseVec {
    if n == 0 {
        return vec![(nerve.face(0, x, 0), 1)];
    }
    normalize(
        (0..=n)
            .map(|i| (nerve.face(n, x, i), if i % 2 == 0 { 1 } else { -1 }))
            .collect(),
    )
}

fn name_of(nerve: &Nerve, what: &str) -> String {
    format!("{} {what} {}", nerve.kind.name(), nerve.category().name())
}

/// The augmented unnormalized chain complex, degrees `-1..=D`; its theory
/// degree is one more.
pub fn nerve_complex(nerve: &Nerve) -> PresentedComplex {
    normalized_or_full(nerve, "chains", &|_, _| false, false).complex
}

/// A quotient of a nerve's chains by a set of killed simplexes, with the
/// class of every simplex.
#[derive(Clone, Debug)]
pub struct NerveChains {
    pub complex: PresentedComplex,
    /// Generator of each simplex, by degree `n + 1`; `None` if killed.
    class: Vec<Vec<Option<usize>>>,
    /// A simplex for each generator, by degree `n + 1`.
    rep: Vec<Vec<usize>>,
}

impl NerveChains {
    /// Class of simplex `x` of degree `n ≥ -1` as a chain.
    pub fn project(&self, n: i64, x: usize) -> SparseVec {
        match self.class[(n + 1) as usize][x] {
            Some(g) => vec![(g, 1)],
            None => Vec::new(),
        }
    }

    pub fn project_chain(&self, n: i64, chain: &SparseVec) -> SparseVec {
        normalize(
            chain
                .iter()
                .flat_map(|&(x, c)| self.project(n, x).into_iter().map(move |(g, e)| (g, c * e)))
                .collect(),
        )
    }

    /// Simplex representing generator `g` of degree `n`.
    pub fn representative(&self, n: i64, g: usize) -> usize {
        self.rep[(n + 1) as usize][g]
    }
}

fn normalized_or_full(
    nerve: &Nerve,
    what: &str,
    kill: &dyn Fn(usize, usize) -> bool,
    thin_relations: bool,
) -> NerveChains {
    let d = nerve.truncation;
    let mut complex = PresentedComplex::new(name_of(nerve, what), -1, 1);
    let aug = nerve.augmentation();
    let mut class = vec![(0..aug.len()).map(Some).collect::<Vec<_>>()];
    let mut rep = vec![(0..aug.len()).collect::<Vec<_>>()];
    complex.push(ChainGroup {
        labels: aug.iter().map(|&g| aug_label(nerve, g)).collect(),
        relations: Vec::new(),
        boundary: vec![Vec::new(); aug.len()],
    });
    for n in 0..=d {
        let mut cl = Vec::with_capacity(nerve.count(n as i64));
        let mut rp = Vec::new();
        for x in 0..nerve.count(n as i64) {
            if kill(n, x) {
                cl.push(None);
            } else {
                cl.push(Some(rp.len()));
                rp.push(x);
            }
        }
        class.push(cl);
        rep.push(rp);
    }
    let project = |n: i64, v: &SparseVec, class: &[Vec<Option<usize>>]| -> SparseVec {
        normalize(
            v.iter()
                .filter_map(|&(x, c)| class[(n + 1) as usize][x].map(|g| (g, c)))
                .collect(),
        )
    };
    for n in 0..=d {
        let labels = rep[n + 1].iter().map(|&x| simplex_label(nerve, n, x)).collect();
        let boundary = rep[n + 1]
            .iter()
            .map(|&x| project(n as i64 - 1, &simplex_boundary(nerve, n, x), &class))
            .collect();
        let mut relations: Vec<SparseVec> = Vec::new();
        if thin_relations && n < d {
            relations = (0..nerve.count(n as i64 + 1))
                .filter(|&y| nerve.is_thin(n + 1, y))
                .map(|y| project(n as i64, &simplex_boundary(nerve, n + 1, y), &class))
                .filter(|v| !v.is_empty())
                .map(|v| if v[0].1 < 0 { v.into_iter().map(|(i, c)| (i, -c)).collect() } else { v })
                .collect();
            relations.sort();
            relations.dedup();
        }
        complex.push(ChainGroup {
            labels,
            relations,
            boundary,
        });
    }
    NerveChains {
        complex: complex.truncated(d),
        class,
        rep,
    }
}

/// Identity quotient: the nerve complex with its simplex bookkeeping.
pub fn full_chains(nerve: &Nerve) -> NerveChains {
    normalized_or_full(nerve, "chains", &|_, _| false, false)
}

/// Chains modulo degenerate simplexes (same homology as the full complex).
pub fn normalized_chains(nerve: &Nerve) -> NerveChains {
    let d = nerve.truncation;
    let mut degenerate: Vec<Vec<bool>> = (0..=d).map(|n| vec![false; nerve.count(n as i64)]).collect();
    for n in 0..d {
        for y in 0..nerve.count(n as i64) {
            for i in 0..=n {
                if let Some(e) = nerve.degeneracy(n, y, i) {
                    degenerate[n + 1][e] = true;
                }
            }
        }
    }
    normalized_or_full(nerve, "normalized", &|n, x| degenerate[n][x], false)
}

/// `CR_n = C_n / (M_n + ∂M_{n+1})`, presented on the non-thin simplexes:
/// thin generators are dropped and the boundaries of thin simplexes one
/// degree up become relations.
pub fn reduced_chains(nerve: &Nerve) -> NerveChains {
    normalized_or_full(nerve, "reduced", &|n, x| nerve.is_thin(n, x), true)
}

pub fn reduced_complex(nerve: &Nerve) -> PresentedComplex {
    reduced_chains(nerve).complex
}

/// The nerve complex split along the `(α, β)` grading.
pub fn graded_nerve_complexes(nerve: &Nerve) -> Result<BTreeMap<Grade, PresentedComplex>> {
    let full = full_chains(nerve);
    let parts = nerve.grade_decompose()?;
    let mut out = BTreeMap::new();
    for (grade, members) in parts {
        let mut pos: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for &(n, x) in &members {
            pos.entry(n).or_default().push(x);
        }
        let index: HashMap<(i64, usize), usize> = pos
            .iter()
            .flat_map(|(&n, xs)| xs.iter().enumerate().map(move |(i, &x)| ((n, x), i)))
            .collect();
        let name = format!("{} [{},{}]", full.complex.name, nerve.category().label(grade.0), nerve.category().label(grade.1));
        let mut c = PresentedComplex::new(name, -1, 1);
        for n in -1..=nerve.truncation as i64 {
            let xs = pos.get(&n).cloned().unwrap_or_default();
            let mut boundary = Vec::with_capacity(xs.len());
            for &x in &xs {
                let b = full.complex.group(n).unwrap().boundary[x].clone();
                let mut v = Vec::with_capacity(b.len());
                for (y, e) in b {
                    let i = index
                        .get(&(n - 1, y))
                        .ok_or_else(|| Error::Grading(format!("face of {} leaves its component", simplex_label(nerve, n as usize, x))))?;
                    v.push((*i, e));
                }
                boundary.push(v);
            }
            c.push(ChainGroup {
                labels: xs.iter().map(|&x| full.complex.labels(n)[x].clone()).collect(),
                relations: Vec::new(),
                boundary,
            });
        }
        out.insert(grade, c.truncated(nerve.truncation));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormalVariant {
    Globular,
    Minus,
    Plus,
}

impl FormalVariant {
    pub fn name(self) -> &'static str {
        match self {
            FormalVariant::Globular => "formal-gl",
            FormalVariant::Minus => "formal-minus",
            FormalVariant::Plus => "formal-plus",
        }
    }
}

fn pairs(cat: &OmegaCat) -> Vec<(ElemId, ElemId)> {
    let v = cat.of_dim(0);
    v.iter().flat_map(|&a| v.iter().map(move |&b| (a, b))).collect()
}

/// Generators of `ℤC_k` for `k ≥ 1`: exactly-`k`-dimensional morphisms.
fn top_cells(cat: &OmegaCat, k: usize) -> (Vec<String>, HashMap<ElemId, usize>) {
    let cells = cat.of_dim(k);
    (
        cells.iter().map(|&x| cat.label(x)).collect(),
        cells.iter().enumerate().map(|(i, &x)| (x, i)).collect(),
    )
}

/// `s_{k-1} x − t_{k-1} x` with lower-dimensional terms dropped.
fn globular_difference(cat: &OmegaCat, x: ElemId, k: usize, below: &HashMap<ElemId, usize>) -> SparseVec {
    let mut v = Vec::new();
    if let Some(&i) = below.get(&cat.src(x, k - 1)) {
        v.push((i, 1));
    }
    if let Some(&i) = below.get(&cat.tgt(x, k - 1)) {
        v.push((i, -1));
    }
    normalize(v)
}

fn require_non_contracting(cat: &OmegaCat) -> Result<()> {
    match cat.contraction_witness() {
        Some(x) => Err(Error::Contracting(cat.label(x))),
        None => Ok(()),
    }
}

/// `CF^gl`, `CF^−` or `CF^+`. Relations `x ∗_i y = x + y` (and the variant's
/// `∗_0` rule) are imposed when `x`, `y` and the composite all have the
/// degree's dimension. The `∗_0` rule starts in degree 1: without it the
/// differential does not pass to the quotient in degree 2.
pub fn formal_complex(cat: &OmegaCat, variant: FormalVariant) -> Result<PresentedComplex> {
    require_non_contracting(cat)?;
    let mut c = PresentedComplex::new(format!("{} {}", variant.name(), cat.name()), 0, 0);
    let zero: HashMap<ElemId, usize>;
    let pair_index: HashMap<(ElemId, ElemId), usize>;
    match variant {
        FormalVariant::Globular => {
            let p = pairs(cat);
            pair_index = p.iter().enumerate().map(|(i, &q)| (q, i)).collect();
            zero = HashMap::new();
            c.push(ChainGroup {
                labels: p.iter().map(|&(a, b)| format!("({},{})", cat.label(a), cat.label(b))).collect(),
                relations: Vec::new(),
                boundary: vec![Vec::new(); p.len()],
            });
        }
        _ => {
            let (labels, idx) = top_cells(cat, 0);
            zero = idx;
            pair_index = HashMap::new();
            c.push(ChainGroup {
                boundary: vec![Vec::new(); labels.len()],
                labels,
                relations: Vec::new(),
            });
        }
    }
    let mut below = zero;
    let mut comps: BTreeMap<usize, Vec<(ElemId, usize, ElemId, ElemId)>> = BTreeMap::new();
    for ((x, i, y), r) in cat.compositions() {
        let k = cat.dim(r);
        if cat.dim(x) == k && cat.dim(y) == k {
            comps.entry(k).or_default().push((x, i, y, r));
        }
    }
    for k in 1..=cat.max_dim() {
        let (labels, idx) = top_cells(cat, k);
        let cells = cat.of_dim(k);
        let boundary: Vec<SparseVec> = cells
            .iter()
            .map(|&x| {
                if k > 1 {
                    return globular_difference(cat, x, k, &below);
                }
                let (s, t) = (cat.src(x, 0), cat.tgt(x, 0));
                match variant {
                    FormalVariant::Globular => vec![(pair_index[&(s, t)], 1)],
                    FormalVariant::Minus => vec![(below[&s], 1)],
                    FormalVariant::Plus => vec![(below[&t], 1)],
                }
            })
            .collect();
        let mut relations = Vec::new();
        for &(x, i, y, r) in comps.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
            let v = match (i, variant) {
                (0, FormalVariant::Globular) => continue,
                // degree 1 carries only the ∗₀ rule, needed for d to descend
                (_, FormalVariant::Globular) if k < 2 => continue,
                (0, FormalVariant::Minus) => vec![(idx[&r], 1), (idx[&x], -1)],
                (0, FormalVariant::Plus) => vec![(idx[&r], 1), (idx[&y], -1)],
                _ => vec![(idx[&r], 1), (idx[&x], -1), (idx[&y], -1)],
            };
            let v = normalize(v);
            if !v.is_empty() {
                relations.push(v);
            }
        }
        relations.sort();
        relations.dedup();
        c.push(ChainGroup {
            labels,
            relations,
            boundary,
        });
        below = idx;
    }
    Ok(c)
}

/// Degree-0 group of the old globular complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OldDegreeZero {
    /// `ℤ(C₀ ⊗ C₀)` with `∂x = s₀x ⊗ t₀x`.
    #[default]
    Tensor,
    /// `ℤC₀ ⊕ ℤC₀` with `∂x = (s₀x, t₀x)`.
    Sum,
}

/// Free on the exactly-`n`-dimensional morphisms, `∂ = s_{n-1} − t_{n-1}`.
pub fn old_globular_complex(cat: &OmegaCat, zero: OldDegreeZero) -> PresentedComplex {
    let suffix = match zero {
        OldDegreeZero::Tensor => "",
        OldDegreeZero::Sum => " (sum)",
    };
    let mut c = PresentedComplex::new(format!("old-gl {}{suffix}", cat.name()), 0, 0);
    let v0 = cat.of_dim(0);
    let (labels0, first): (Vec<String>, Box<dyn Fn(ElemId, ElemId) -> SparseVec>) = match zero {
        OldDegreeZero::Tensor => {
            let p = pairs(cat);
            let idx: HashMap<(ElemId, ElemId), usize> = p.iter().enumerate().map(|(i, &q)| (q, i)).collect();
            (
                p.iter().map(|&(a, b)| format!("({},{})", cat.label(a), cat.label(b))).collect(),
                Box::new(move |s, t| vec![(idx[&(s, t)], 1)]),
            )
        }
        OldDegreeZero::Sum => {
            let idx: HashMap<ElemId, usize> = v0.iter().enumerate().map(|(i, &a)| (a, i)).collect();
            let n = v0.len();
            let mut labels: Vec<String> = v0.iter().map(|&a| format!("{}.s", cat.label(a))).collect();
            labels.extend(v0.iter().map(|&a| format!("{}.t", cat.label(a))));
            (labels, Box::new(move |s, t| normalize(vec![(idx[&s], 1), (n + idx[&t], 1)])))
        }
    };
    c.push(ChainGroup {
        boundary: vec![Vec::new(); labels0.len()],
        labels: labels0,
        relations: Vec::new(),
    });
    let mut below = HashMap::new();
    for k in 1..=cat.max_dim() {
        let (labels, idx) = top_cells(cat, k);
        let boundary = cat
            .of_dim(k)
            .iter()
            .map(|&x| {
                if k == 1 {
                    first(cat.src(x, 0), cat.tgt(x, 0))
                } else {
                    globular_difference(cat, x, k, &below)
                }
            })
            .collect();
        c.push(ChainGroup {
            labels,
            relations: Vec::new(),
            boundary,
        });
        below = idx;
    }
    c
}

fn identity_rows(n: usize) -> Vec<SparseVec> {
    (0..n).map(|i| vec![(i, 1)]).collect()
}

/// `C^{old-gl} → CF^gl`, the identity on generators (tensor degree 0).
pub fn old_to_formal_map(cat: &OmegaCat) -> ChainMap {
    let mut maps = BTreeMap::new();
    maps.insert(0, identity_rows(cat.of_dim(0).len().pow(2)));
    for k in 1..=cat.max_dim() {
        maps.insert(k as i64, identity_rows(cat.of_dim(k).len()));
    }
    ChainMap {
        name: format!("old-gl -> formal-gl {}", cat.name()),
        maps,
    }
}

/// `CF^gl → CF^∓`: the extra `∗₀` identification, and `s₀`/`t₀` on pairs.
pub fn formal_quotient_map(cat: &OmegaCat, to: Sign) -> ChainMap {
    let v0 = cat.of_dim(0);
    let idx: HashMap<ElemId, usize> = v0.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut maps = BTreeMap::new();
    maps.insert(
        0,
        pairs(cat)
            .into_iter()
            .map(|(a, b)| vec![(idx[&if to == Sign::Plus { b } else { a }], 1)])
            .collect(),
    );
    for k in 1..=cat.max_dim() {
        maps.insert(k as i64, identity_rows(cat.of_dim(k).len()));
    }
    ChainMap {
        name: format!("formal-gl -> formal-{} {}", if to == Sign::Plus { "plus" } else { "minus" }, cat.name()),
        maps,
    }
}

/// `x ↦ □(x)` from the old or formal globular complex (tensor degree 0)
/// into chains of the globular nerve, up to the nerve's truncation.
pub fn fold_map(folding: &Folding<'_>, tgt: &NerveChains) -> Result<ChainMap> {
    let nerve = folding.nerve();
    let cat = nerve.category();
    let aug: HashMap<Grade, usize> = nerve.augmentation().iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut maps = BTreeMap::new();
    maps.insert(
        0,
        pairs(cat)
            .into_iter()
            .map(|q| aug.get(&q).map(|&i| tgt.project(-1, i)).unwrap_or_default())
            .collect(),
    );
    let top = cat.max_dim().min(nerve.truncation + 1);
    for k in 1..=top {
        let mut rows = Vec::new();
        for &x in cat.of_dim(k) {
            let t = folding.fold(x)?;
            let y = nerve
                .find(k - 1, &t)
                .ok_or_else(|| Error::invariant(format!("fold of {} is not in the nerve", cat.label(x))))?;
            rows.push(tgt.project(k as i64 - 1, y));
        }
        maps.insert(k as i64, rows);
    }
    Ok(ChainMap {
        name: format!("fold -> {}", tgt.complex.name),
        maps,
    })
}

/// `h⁻` on chains: simplexes of the globular nerve to cubes of `N⁻`, both
/// taken through their quotients.
pub fn h_minus_map(gl: &Nerve, src: &NerveChains, corner: &Nerve, tgt: &NerveChains) -> Result<ChainMap> {
    if corner.kind != NerveKind::Corner(Sign::Minus) || gl.kind != NerveKind::Globular {
        return Err(Error::input("h⁻ maps the globular nerve to the negative corner nerve"));
    }
    let d = gl.truncation.min(corner.truncation);
    let mut maps = BTreeMap::new();
    let aug: Vec<SparseVec> = (0..src.complex.len(-1))
        .map(|g| {
            let (a, _) = gl.augmentation()[src.representative(-1, g)];
            corner
                .augmentation()
                .iter()
                .position(|e| e.0 == a)
                .map(|i| tgt.project(-1, i))
                .unwrap_or_default()
        })
        .collect();
    maps.insert(0, aug);
    for n in 0..=d {
        let mut rows = Vec::new();
        for g in 0..src.complex.len(n as i64) {
            let x = src.representative(n as i64, g);
            let hx = h_minus(gl, gl.table(n, x))?;
            let y = corner
                .find(n, &hx)
                .ok_or_else(|| Error::invariant("h⁻ leaves the corner nerve"))?;
            rows.push(tgt.project(n as i64, y));
        }
        maps.insert(n as i64 + 1, rows);
    }
    Ok(ChainMap {
        name: format!("h- {} -> {}", src.complex.name, tgt.complex.name),
        maps,
    })
}

/// The canonical quotient of one nerve-chain presentation onto another
/// built from the same nerve.
pub fn nerve_quotient_map(src: &NerveChains, tgt: &NerveChains) -> ChainMap {
    let mut maps = BTreeMap::new();
    for n in src.complex.degrees() {
        let rows = (0..src.complex.len(n))
            .map(|g| tgt.project(n, src.representative(n, g)))
            .collect();
        maps.insert(n + 1, rows);
    }
    ChainMap {
        name: format!("{} -> {}", src.complex.name, tgt.complex.name),
        maps,
    }
}

/// Outcome of the thin-cycle experiment in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct ThinCycleReport {
    /// Nerve degree.
    pub degree: i64,
    pub thin_generators: usize,
    /// Rank of the lattice of thin-supported cycles.
    pub thin_cycles: usize,
    /// Basis cycles that are not boundaries.
    pub counterexamples: Vec<String>,
}

/// Are thin-supported cycles boundaries? Checked on a lattice basis of
/// the thin cycles, in every valid degree; the result is only reported.
pub fn thin_cycle_report(nerve: &Nerve) -> Result<Vec<ThinCycleReport>> {
    use super::snf::{kernel, IntMatrix};
    let full = full_chains(nerve).complex;
    let mut out = Vec::new();
    for n in 0..nerve.truncation {
        let thin: Vec<usize> = (0..nerve.count(n as i64)).filter(|&x| nerve.is_thin(n, x)).collect();
        let k = n as i64;
        let below = full.len(k - 1);
        let mut m = IntMatrix::zeros(below, thin.len());
        for (j, &x) in thin.iter().enumerate() {
            for &(i, c) in &full.group(k).unwrap().boundary[x] {
                m[(i, j)] += c;
            }
        }
        let mut bad = Vec::new();
        let ker = kernel(&m);
        for v in &ker {
            let chain: SparseVec = normalize(
                v.iter()
                    .zip(&thin)
                    .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
                    .map(|(c, &x)| (x, i64::try_from(c).expect("coefficient fits")))
                    .collect(),
            );
            if full.class_test(k, &chain)? != super::ClassStatus::Boundary {
                bad.push(
                    chain
                        .iter()
                        .map(|&(x, c)| format!("{c:+} {}", full.labels(k)[x]))
                        .collect::<Vec<_>>()
                        .join(" "),
                );
            }
        }
        out.push(ThinCycleReport {
            degree: k,
            thin_generators: thin.len(),
            thin_cycles: ker.len(),
            counterexamples: bad,
        });
    }
    Ok(out)
}

//! Named invariant suites run by `verify`. Each suite counts its checks
//! and collects failures instead of stopping at the first one.

use std::collections::HashSet;

use clap::ValueEnum;
use num_traits::Zero;
use serde::Serialize;

use crate::cutmaps::{
    h, h_minus, is_folded_globular, is_folded_minus, is_in_h_image, star, Folding, GlobularValue,
};
use crate::error::{Error, Result};
use crate::facecomb::Sign;
use crate::homology::{
    fold_map, formal_complex, formal_quotient_map, full_chains, graded_nerve_complexes, h_minus_map,
    kernel, lattice_contains, nerve_complex, nerve_quotient_map, normalize, normalized_chains,
    old_globular_complex, old_to_formal_map, reduced_chains, thin_cycle_report, ClassStatus,
    FormalVariant, HomologyGroup, IntMatrix, OldDegreeZero, SparseVec,
};
use crate::nerves::{Nerve, NerveKind};
use crate::omegacat::{export_presentation, iso_check, load, BuildOptions, ElemId, OmegaCat};

const MAX_MESSAGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Face, degeneracy and augmentation identities of all three nerves.
    SimplicialIdentities,
    /// Naturality, injectivity and image of `h⁻`.
    HMinus,
    /// The same for `h⁺` (expected to fail).
    HPlus,
    /// The folding operators and the reduced differential law.
    Fold,
    /// Compatibility of `*` with faces and degeneracies.
    Star,
    /// The grade decomposition and additivity of homology over grades.
    Grading,
    /// `d∘d = 0` for every complex and `d`-commutation of every map.
    Complexes,
    /// Export, re-ingest, compare up to isomorphism.
    RoundTrip,
    /// Degree-1 cycles under the two old degree-0 conventions.
    FalseCycle,
    /// Thin-supported cycles; reported, never failed.
    ThinCycles,
    /// Every suite except `h-plus` and `false-cycle`.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::SimplicialIdentities => "simplicial-identities",
            Suite::HMinus => "h-minus",
            Suite::HPlus => "h-plus",
            Suite::Fold => "fold",
            Suite::Star => "star",
            Suite::Grading => "grading",
            Suite::Complexes => "complexes",
            Suite::RoundTrip => "round-trip",
            Suite::FalseCycle => "false-cycle",
            Suite::ThinCycles => "thin-cycles",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::SimplicialIdentities,
                Suite::HMinus,
                Suite::Fold,
                Suite::Star,
                Suite::Grading,
                Suite::Complexes,
                Suite::RoundTrip,
            ],
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub truncation: usize,
    /// Truncation for corner nerves, which grow much faster.
    pub corner_truncation: usize,
    /// Simplex cap per nerve.
    pub cap: usize,
}

impl SuiteOptions {
    fn corner(&self) -> usize {
        self.corner_truncation.min(self.truncation)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: usize,
    /// The first failures, verbatim.
    pub messages: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> SuiteReport {
        SuiteReport {
            suite: suite.name().into(),
            ..Default::default()
        }
    }

    fn pass(&mut self) {
        self.checks += 1;
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.checks += 1;
        self.failures += 1;
        if self.messages.len() < MAX_MESSAGES {
            self.messages.push(msg.into());
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(msg())
        }
    }

    /// Records `r`, turning violations into failures and passing other errors on.
    fn outcome<T>(&mut self, r: Result<T>, what: &str) -> Result<Option<T>> {
        match r {
            Ok(v) => {
                self.pass();
                Ok(Some(v))
            }
            Err(e) if e.exit_code() == 1 => {
                self.fail(format!("{what}: {e}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn nerve(cat: &OmegaCat, kind: NerveKind, d: usize, cap: usize) -> Result<Nerve> {
    match kind {
        NerveKind::Globular => Nerve::globular_capped(cat, d, cap),
        NerveKind::Corner(eta) => Nerve::corner_capped(cat, eta, d, cap),
    }
}

/// Runs `suite` (all of them for [`Suite::All`]).
pub fn run_suite(suite: Suite, cat: &OmegaCat, opts: SuiteOptions) -> Result<Vec<SuiteReport>> {
    suite
        .expand()
        .into_iter()
        .map(|s| match s {
            Suite::SimplicialIdentities => identities(cat, opts),
            Suite::HMinus => h_suite(cat, Sign::Minus, opts),
            Suite::HPlus => h_suite(cat, Sign::Plus, opts),
            Suite::Fold => fold_suite(cat, opts),
            Suite::Star => star_suite(cat, opts),
            Suite::Grading => grading(cat, opts),
            Suite::Complexes => complexes(cat, opts),
            Suite::RoundTrip => round_trip(cat, opts),
            Suite::FalseCycle => false_cycle(cat),
            Suite::ThinCycles => thin_cycles(cat, opts),
            Suite::All => unreachable!("expanded"),
        })
        .collect()
}

fn sizes(nv: &Nerve) -> Vec<usize> {
    (-1..=nv.truncation as i64).map(|n| nv.count(n)).collect()
}

fn identities(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::SimplicialIdentities);
    for kind in [NerveKind::Globular, NerveKind::Corner(Sign::Minus), NerveKind::Corner(Sign::Plus)] {
        let d = if kind == NerveKind::Globular { opts.truncation } else { opts.corner() };
        let nv = nerve(cat, kind, d, opts.cap)?;
        let r = nv.check_identities();
        rep.outcome(r, kind.name())?;
        rep.notes.push(format!("{} sizes from degree -1: {:?}", kind.name(), sizes(&nv)));
    }
    Ok(rep)
}

fn h_suite(cat: &OmegaCat, eta: Sign, opts: SuiteOptions) -> Result<SuiteReport> {
    let d = opts.corner();
    let mut rep = SuiteReport::new(if eta == Sign::Minus { Suite::HMinus } else { Suite::HPlus });
    let gl = nerve(cat, NerveKind::Globular, d, opts.cap)?;
    let co = nerve(cat, NerveKind::Corner(eta), d, opts.cap)?;
    for n in 0..=d {
        let mut images = HashSet::new();
        let mut complete = true;
        for x in 0..gl.count(n as i64) {
            let t = gl.table(n, x).to_vec();
            let Some(hx) = rep.outcome(h(&gl, eta, &t), &format!("h of simplex ({n},{x})"))? else {
                complete = false;
                continue;
            };
            let Some(y) = co.find(n, &hx) else {
                rep.fail(format!("h of simplex ({n},{x}) is not in the corner nerve"));
                complete = false;
                continue;
            };
            rep.check(images.insert(y), || format!("h is not injective at ({n},{x})"));
            if n > 0 {
                for i in 0..=n {
                    let lhs = h(&gl, eta, &gl.face_table(n, &t, i));
                    let ok = matches!(&lhs, Ok(v) if *v == co.face_table(n, &hx, i));
                    rep.check(ok, || format!("h does not commute with face {i} at ({n},{x})"));
                }
            } else {
                let (a, b) = gl.augmentation()[gl.face(0, x, 0)];
                let e = co.augmentation()[co.face(0, y, 0)].0;
                let want = if eta == Sign::Minus { a } else { b };
                rep.check(e == want, || format!("h does not commute with the augmentation at {x}"));
            }
            if n < d {
                for i in 0..=n {
                    let lhs = h(&gl, eta, &gl.degeneracy_table(n, &t, i));
                    let ok = matches!(&lhs, Ok(v) if *v == co.degeneracy_table(n, &hx, i));
                    rep.check(ok, || format!("h does not commute with degeneracy {i} at ({n},{x})"));
                }
            }
        }
        if !complete {
            rep.notes.push(format!("degree {n}: image test skipped, h is partial"));
            continue;
        }
        for y in 0..co.count(n as i64) {
            let inside = is_in_h_image(cat, eta, co.table(n, y))?;
            rep.check(inside == images.contains(&y), || {
                format!("image characterization fails at corner simplex ({n},{y})")
            });
        }
    }
    Ok(rep)
}

fn fold_suite(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Fold);
    let top = cat.max_dim();
    if top == 0 {
        rep.notes.push("no cells of positive dimension".into());
        return Ok(rep);
    }
    let nv = nerve(cat, NerveKind::Globular, top, opts.cap)?;
    rep.notes.push(format!("globular nerve truncated at {top}"));
    let f = Folding::new(&nv)?;
    for u in cat.ids().filter(|&u| cat.dim(u) >= 1) {
        let n = cat.dim(u);
        let name = cat.label(u);
        let Some(x) = rep.outcome(f.fold(u), &format!("fold of {name}"))? else {
            continue;
        };
        let found: Vec<usize> = (0..nv.count(n as i64 - 1))
            .filter(|&y| nv.ev(n - 1, y) == u && is_folded_globular(nv.table(n - 1, y)).unwrap_or(false))
            .collect();
        rep.check(found.len() == 1 && nv.table(n - 1, found[0]) == &x[..], || {
            format!("fold of {name} is not the unique folded simplex over it ({} found)", found.len())
        });
        rep.check(nv.to_c(x[x.len() - 1]) == u, || format!("ev(fold {name}) differs from {name}"));
        let folded = h_minus(&nv, &x).and_then(|hx| is_folded_minus(cat, &hx));
        rep.check(matches!(folded, Ok(true)), || format!("h⁻ of fold {name} is not folded"));
        if n >= 2 {
            let m = n - 1;
            let last = [nv.face_table(m, &x, m - 1), nv.face_table(m, &x, m)];
            let (s, t) = (cat.src(u, n - 1), cat.tgt(u, n - 1));
            let fs = f.fold_at(s, m - 1);
            let ft = f.fold_at(t, m - 1);
            let ok = matches!((&fs, &ft), (Ok(a), Ok(b)) if last.contains(a) && last.contains(b));
            rep.check(ok, || format!("homotopy faces of fold {name} are not the folds of its boundary"));
            for i in 0..m.saturating_sub(1) {
                let y = nv.face_table(m, &x, i);
                let v = nv.to_c(y[y.len() - 1]);
                rep.check(cat.dim(v) < m, || format!("lower face {i} of fold {name} is not thin"));
            }
        }
    }
    for x in 0..nv.count(top as i64 - 1) {
        let t = nv.table(top - 1, x);
        let idem = f.phi(t).map(|p| (p == t) == is_folded_globular(t).unwrap_or(false));
        rep.check(matches!(idem, Ok(true)), || format!("phi does not fix exactly the folded simplex ({},{x})", top - 1));
    }
    // ∂[□u] = [□ s u] − [□ t u] in CR^gl
    let red = reduced_chains(&nv);
    for u in cat.ids().filter(|&u| cat.dim(u) >= 2) {
        let n = cat.dim(u);
        let class = |e: ElemId| -> Result<SparseVec> {
            if cat.dim(e) < n - 1 {
                return Ok(Vec::new());
            }
            let y = nv
                .find(n - 2, &f.fold(e)?)
                .ok_or_else(|| Error::invariant("fold is not a simplex"))?;
            Ok(red.project(n as i64 - 2, y))
        };
        let law = (|| -> Result<bool> {
            let x = nv
                .find(n - 1, &f.fold(u)?)
                .ok_or_else(|| Error::invariant("fold is not a simplex"))?;
            let lhs = red.complex.apply_d(n as i64 - 1, &red.project(n as i64 - 1, x));
            let (s, t) = (class(cat.src(u, n - 1))?, class(cat.tgt(u, n - 1))?);
            let diff = normalize(lhs.into_iter().chain(s.into_iter().map(|(g, k)| (g, -k))).chain(t).collect());
            let k = n as i64 - 2;
            let rels = &red.complex.group(k).expect("degree exists").relations;
            Ok(lattice_contains(red.complex.len(k), rels, &diff))
        })();
        rep.check(matches!(law, Ok(true)), || format!("reduced differential law fails at {}", cat.label(u)));
    }
    Ok(rep)
}

fn star_suite(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    const PAIR_LIMIT: usize = 4_000_000;
    let mut rep = SuiteReport::new(Suite::Star);
    let d = opts.truncation.min(2);
    let nv = nerve(cat, NerveKind::Globular, d, opts.cap)?;
    let simplex = |t: Vec<ElemId>| GlobularValue::Simplex(t);
    let mut composable = 0;
    for n in 0..=d {
        let count = nv.count(n as i64);
        if count * count > PAIR_LIMIT {
            rep.notes.push(format!("degree {n}: {count} simplexes, pairs skipped"));
            continue;
        }
        for x in 0..count {
            for y in 0..count {
                if nv.grade(n, x).1 != nv.grade(n, y).0 {
                    continue;
                }
                composable += 1;
                let (a, b) = (nv.table(n, x).to_vec(), nv.table(n, y).to_vec());
                let at = format!("({n},{x})*({n},{y})");
                let Some(z) = rep.outcome(star(&nv, &simplex(a.clone()), &simplex(b.clone())), &at)? else {
                    continue;
                };
                let GlobularValue::Simplex(z) = z else {
                    rep.fail(format!("{at} collapsed to a constant"));
                    continue;
                };
                rep.check(nv.find(n, &z).is_some(), || format!("{at} is not a simplex"));
                for i in 0..=n {
                    if n > 0 {
                        let rhs = star(&nv, &simplex(nv.face_table(n, &a, i)), &simplex(nv.face_table(n, &b, i)));
                        let ok = matches!(rhs, Ok(v) if v == simplex(nv.face_table(n, &z, i)));
                        rep.check(ok, || format!("{at}: face {i} does not commute"));
                    }
                    if n < d {
                        let rhs = star(
                            &nv,
                            &simplex(nv.degeneracy_table(n, &a, i)),
                            &simplex(nv.degeneracy_table(n, &b, i)),
                        );
                        let ok = matches!(rhs, Ok(v) if v == simplex(nv.degeneracy_table(n, &z, i)));
                        rep.check(ok, || format!("{at}: degeneracy {i} does not commute"));
                    }
                }
            }
        }
    }
    rep.notes.push(format!("{composable} composable pairs up to degree {d}"));
    Ok(rep)
}

fn grading(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Grading);
    let d = opts.truncation;
    let gl = nerve(cat, NerveKind::Globular, d, opts.cap)?;
    let Some(parts) = rep.outcome(gl.grade_decompose(), "grade decomposition")? else {
        return Ok(rep);
    };
    let members: usize = parts.values().map(Vec::len).sum();
    let total: usize = sizes(&gl).iter().sum();
    rep.check(members == total, || format!("grades cover {members} of {total} simplexes"));
    let Some(graded) = rep.outcome(graded_nerve_complexes(&gl), "graded complexes")? else {
        return Ok(rep);
    };
    let full = nerve_complex(&gl);
    for p in 0..=d as i64 {
        let whole = full.theory_homology(p)?;
        let mut sum = HomologyGroup::zero();
        for c in graded.values() {
            sum = sum.sum(&c.theory_homology(p)?);
        }
        rep.check(sum == whole, || format!("degree {p}: sum over grades {sum} differs from {whole}"));
    }
    rep.notes.push(format!("{} grades", graded.len()));
    Ok(rep)
}

fn complexes(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Complexes);
    let d = opts.truncation;
    let gl = nerve(cat, NerveKind::Globular, d, opts.cap)?;
    let dc = opts.corner();
    let gl_c = nerve(cat, NerveKind::Globular, dc, opts.cap)?;
    let mi = nerve(cat, NerveKind::Corner(Sign::Minus), dc, opts.cap)?;
    let pl = nerve(cat, NerveKind::Corner(Sign::Plus), dc, opts.cap)?;
    let fold = Folding::new(&gl)?;
    let (full, norm, red) = (full_chains(&gl), normalized_chains(&gl), reduced_chains(&gl));
    let (cfull, cred) = (full_chains(&gl_c), reduced_chains(&gl_c));
    let (mfull, mred) = (full_chains(&mi), reduced_chains(&mi));
    let (pfull, pred) = (full_chains(&pl), reduced_chains(&pl));
    let old = old_globular_complex(cat, OldDegreeZero::Tensor);
    let old_sum = old_globular_complex(cat, OldDegreeZero::Sum);
    let cf = formal_complex(cat, FormalVariant::Globular)?;
    let cfm = formal_complex(cat, FormalVariant::Minus)?;
    let cfp = formal_complex(cat, FormalVariant::Plus)?;
    for c in [
        &full.complex,
        &norm.complex,
        &red.complex,
        &mfull.complex,
        &mred.complex,
        &pfull.complex,
        &pred.complex,
        &old,
        &old_sum,
        &cf,
        &cfm,
        &cfp,
    ] {
        rep.outcome(c.check(), &c.name)?;
    }
    let maps = [
        (old_to_formal_map(cat), &old, &cf),
        (formal_quotient_map(cat, Sign::Minus), &cf, &cfm),
        (formal_quotient_map(cat, Sign::Plus), &cf, &cfp),
        (fold_map(&fold, &red)?, &cf, &red.complex),
        (fold_map(&fold, &red)?, &old, &red.complex),
        (fold_map(&fold, &norm)?, &old, &norm.complex),
        (nerve_quotient_map(&full, &red), &full.complex, &red.complex),
        (nerve_quotient_map(&full, &norm), &full.complex, &norm.complex),
        (h_minus_map(&gl_c, &cfull, &mi, &mfull)?, &cfull.complex, &mfull.complex),
        (h_minus_map(&gl_c, &cred, &mi, &mred)?, &cred.complex, &mred.complex),
    ];
    for (f, src, tgt) in &maps {
        let what = format!("{} ({} to {})", f.name, src.name, tgt.name);
        rep.outcome(f.check(src, tgt), &what)?;
    }
    Ok(rep)
}

fn round_trip(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::RoundTrip);
    let text = export_presentation(cat);
    let back = load(
        &text,
        BuildOptions {
            element_cap: opts.cap,
            ..Default::default()
        },
    );
    match back {
        Ok(b) => rep.check(iso_check(cat, &b).is_some(), || "re-ingested category is not isomorphic".into()),
        Err(e) => rep.fail(format!("export does not re-ingest: {e}")),
    }
    Ok(rep)
}

/// Basis cycles of degree 1 under `⊕` and their fate under `⊗`. Passes when
/// some nontrivial `⊕` class stops being a cycle under `⊗`.
fn false_cycle(cat: &OmegaCat) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::FalseCycle);
    let sum = old_globular_complex(cat, OldDegreeZero::Sum);
    let tensor = old_globular_complex(cat, OldDegreeZero::Tensor);
    let mut m = IntMatrix::zeros(sum.len(0), sum.len(1));
    for (j, b) in sum.group(1).map(|g| &g.boundary[..]).unwrap_or(&[]).iter().enumerate() {
        for &(i, c) in b {
            m[(i, j)] += c;
        }
    }
    let mut killed = 0;
    for v in kernel(&m) {
        let z: SparseVec = normalize(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, i64::try_from(c).expect("coefficient fits")))
                .collect(),
        );
        let terms: Vec<(i64, &str)> = z.iter().map(|&(i, c)| (c, sum.labels(1)[i].as_str())).collect();
        let s = sum.class_test(1, &z)?;
        let t = tensor.class_test(1, &tensor.chain(1, &terms)?)?;
        rep.pass();
        let shown: Vec<String> = terms.iter().map(|(c, l)| format!("{c:+}{l}")).collect();
        rep.notes.push(format!("{}: {s:?} under sum, {t:?} under tensor", shown.join(" ")));
        if s == ClassStatus::NontrivialClass && t == ClassStatus::NotCycle {
            killed += 1;
        }
    }
    rep.check(killed > 0, || "no false cycle: every sum cycle survives under tensor".into());
    Ok(rep)
}

fn thin_cycles(cat: &OmegaCat, opts: SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::ThinCycles);
    let gl = nerve(cat, NerveKind::Globular, opts.truncation, opts.cap)?;
    for r in thin_cycle_report(&gl)? {
        rep.notes.push(format!(
            "degree {}: {} thin simplexes, {} thin cycles, {} not boundaries",
            r.degree,
            r.thin_generators,
            r.thin_cycles,
            r.counterexamples.len()
        ));
    }
    Ok(rep)
}

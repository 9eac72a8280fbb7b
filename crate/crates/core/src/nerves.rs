//! Augmented simplicial nerves of a non-contracting ω-category.
//!
//! The globular nerve has `𝒩^gl_n = ωCat(Δⁿ, 𝒫C)` with augmentation
//! `C₀ × C₀`; the corner nerves `𝒩^η_n` consist of the ω-functors
//! `Iⁿ⁺¹ → C` anchored at the η corner, with augmentation `C₀`.
//! Simplexes are stored as tables of values on the faces of the shape.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::facecomb::{CubeFace, Sign, SimplexFace};
use crate::omegacat::{
    enumerate_functors_capped, path_category, Constraints, ElemId, OmegaCat, Shape, ShapeKind,
};

/// Which cut a nerve computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NerveKind {
    Globular,
    /// Corner nerve at `-` (branching) or `+` (merging).
    Corner(Sign),
}

impl NerveKind {
    pub fn name(self) -> &'static str {
        match self {
            NerveKind::Globular => "gl",
            NerveKind::Corner(Sign::Plus) => "plus",
            NerveKind::Corner(_) => "minus",
        }
    }
}

/// `(S(x), T(x))` for the globular nerve; `(α, α)` with α the corner
/// 0-cell for corner nerves.
pub type Grade = (ElemId, ElemId);

/// Simplexes of one degree `n ≥ 0`.
#[derive(Clone, Debug, Default)]
pub struct Degree {
    pub tables: Vec<Vec<ElemId>>,
    index: HashMap<Vec<ElemId>, usize>,
    /// `faces[x][i] = ∂_i x` in degree `n - 1`; in degree 0, `faces[x][0]`
    /// is `∂₋₁x` in the augmentation.
    pub faces: Vec<Vec<usize>>,
    /// `degeneracies[x][i] = ε_i x` in degree `n + 1`, empty at the truncation.
    pub degeneracies: Vec<Vec<usize>>,
    /// Evaluation in `C`.
    pub ev: Vec<ElemId>,
    pub thin: Vec<bool>,
    pub grade: Vec<Grade>,
}

impl Degree {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn find(&self, table: &[ElemId]) -> Option<usize> {
        self.index.get(table).copied()
    }
}

/// An augmented simplicial set truncated at degree `D`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub kind: NerveKind,
    pub truncation: usize,
    cat: OmegaCat,
    values: OmegaCat,
    to_c: Vec<ElemId>,
    c_index: HashMap<ElemId, ElemId>,
    aug: Vec<Grade>,
    aug_index: HashMap<Grade, usize>,
    degrees: Vec<Degree>,
    face_maps: Vec<Vec<Vec<usize>>>,
    degen_maps: Vec<Vec<Vec<usize>>>,
}

/// Index maps between shape faces used by `∂_i` and `ε_i`.
fn simplex_face_map(n: usize, i: usize) -> Vec<usize> {
    // face τ of Δ^{n-1} ↦ δ_i τ in Δ^n
    (1..(1usize << n))
        .map(|m| {
            let mut out = 0;
            for v in 0..n {
                if m & (1 << v) != 0 {
                    out |= 1 << if v < i { v } else { v + 1 };
                }
            }
            out - 1
        })
        .collect()
}

fn simplex_degen_map(n: usize, i: usize) -> Vec<usize> {
    // face σ of Δ^{n+1} ↦ its image under j ↦ j (j ≤ i), j - 1 (j > i)
    (1..(1usize << (n + 2)))
        .map(|m| {
            let mut out = 0;
            for v in 0..n + 2 {
                if m & (1 << v) != 0 {
                    out |= 1 << if v <= i { v } else { v - 1 };
                }
            }
            out - 1
        })
        .collect()
}

fn corner_face_map(len: usize, i: usize, eta: Sign) -> Vec<usize> {
    // face k of I^{len-1} ↦ k with η inserted at position i
    CubeFace::all(len - 1).map(|k| k.insert(i, eta).index()).collect()
}

fn corner_degen_map(len: usize, i: usize, eta: Sign) -> Vec<usize> {
    // face k of I^{len+1} ↦ k with positions i, i+1 merged by max (η = -) or min
    CubeFace::all(len + 1)
        .map(|k| {
            let l = k.letters();
            let merged = if eta == Sign::Minus {
                l[i].max(l[i + 1])
            } else {
                l[i].min(l[i + 1])
            };
            let mut w = l[..i].to_vec();
            w.push(merged);
            w.extend_from_slice(&l[i + 2..]);
            CubeFace::new(w).index()
        })
        .collect()
}

fn pull(table: &[ElemId], map: &[usize]) -> Vec<ElemId> {
    map.iter().map(|&j| table[j]).collect()
}

/// `∂_i` on a table of a degree `n ≥ 1` globular simplex.
pub fn globular_face(table: &[ElemId], n: usize, i: usize) -> Vec<ElemId> {
    pull(table, &simplex_face_map(n, i))
}

/// `ε_i` on a table of a degree `n` globular simplex.
pub fn globular_degeneracy(table: &[ElemId], n: usize, i: usize) -> Vec<ElemId> {
    pull(table, &simplex_degen_map(n, i))
}

/// `∂^η_{i+1}` on a table of a degree `n ≥ 1` corner simplex (an `(n+1)`-cube).
pub fn corner_face(table: &[ElemId], n: usize, i: usize, eta: Sign) -> Vec<ElemId> {
    pull(table, &corner_face_map(n + 1, i, eta))
}

/// `Γ^η_{i+1}` on a table of a degree `n` corner simplex.
pub fn corner_degeneracy(table: &[ElemId], n: usize, i: usize, eta: Sign) -> Vec<ElemId> {
    pull(table, &corner_degen_map(n + 1, i, eta))
}

fn capped(parts: Vec<Vec<Vec<ElemId>>>, cap: usize) -> Result<Vec<Vec<ElemId>>> {
    let all: Vec<Vec<ElemId>> = parts.into_iter().flatten().collect();
    if all.len() > cap {
        return Err(Error::Explosion { cap });
    }
    Ok(all)
}

impl Nerve {
    /// `𝒩^gl(C)` up to degree `d`.
    pub fn globular(cat: &OmegaCat, d: usize) -> Result<Nerve> {
        Nerve::globular_capped(cat, d, usize::MAX)
    }

    /// As [`Nerve::globular`], failing with [`Error::Explosion`] once a
    /// degree holds more than `cap` simplexes.
    pub fn globular_capped(cat: &OmegaCat, d: usize, cap: usize) -> Result<Nerve> {
        let pc = path_category(cat)?;
        let to_c: Vec<ElemId> = pc.ids().map(|x| pc.origin(x).expect("derived")).collect();
        let verts = cat.of_dim(0).to_vec();
        let aug: Vec<Grade> = verts
            .iter()
            .flat_map(|&a| verts.iter().map(move |&b| (a, b)))
            .collect();
        let mut grades: Vec<Grade> = pc
            .of_dim(0)
            .iter()
            .map(|&v| (cat.src(to_c[v as usize], 0), cat.tgt(to_c[v as usize], 0)))
            .collect();
        grades.sort_unstable();
        grades.dedup();
        let mut tables_by_degree = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let shape = Shape::cached(ShapeKind::Simplex, n)?;
            let parts: Vec<Vec<Vec<ElemId>>> = grades
                .par_iter()
                .map(|&(a, b)| {
                    let filter = |v: ElemId| {
                        let o = to_c[v as usize];
                        cat.src(o, 0) == a && cat.tgt(o, 0) == b
                    };
                    let c = Constraints {
                        vertex_filter: Some(&filter),
                        ..Default::default()
                    };
                    enumerate_functors_capped(shape, &pc, &c, cap)
                })
                .collect::<Option<_>>()
                .ok_or(Error::Explosion { cap })?;
            tables_by_degree.push(capped(parts, cap)?);
        }
        let face_maps = (0..=d + 1)
            .map(|n| (0..=n).map(|i| if n == 0 { Vec::new() } else { simplex_face_map(n, i) }).collect())
            .collect();
        let degen_maps = (0..=d).map(|n| (0..=n).map(|i| simplex_degen_map(n, i)).collect()).collect();
        Nerve::assemble(
            NerveKind::Globular,
            d,
            cat.clone(),
            pc,
            to_c,
            aug,
            tables_by_degree,
            face_maps,
            degen_maps,
        )
    }

    /// `𝒩^η(C)` up to degree `d`.
    pub fn corner(cat: &OmegaCat, eta: Sign, d: usize) -> Result<Nerve> {
        Nerve::corner_capped(cat, eta, d, usize::MAX)
    }

    pub fn corner_capped(cat: &OmegaCat, eta: Sign, d: usize, cap: usize) -> Result<Nerve> {
        if eta == Sign::Zero {
            return Err(Error::input("corner sign must be - or +"));
        }
        if let Some(w) = cat.contraction_witness() {
            return Err(Error::Contracting(format!(
                "s1/t1 of {} is not 1-dimensional",
                cat.label(w)
            )));
        }
        let verts = cat.of_dim(0).to_vec();
        let aug: Vec<Grade> = verts.iter().map(|&a| (a, a)).collect();
        let mut tables_by_degree = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let len = n + 1;
            let shape = Shape::cached(ShapeKind::Cube, len)?;
            let corner = CubeFace::corner(len, eta).index();
            let edges: Vec<usize> = (0..len)
                .map(|p| CubeFace::corner(len, eta).with_letter(p, Sign::Zero).index())
                .collect();
            let parts: Vec<Vec<Vec<ElemId>>> = verts
                .par_iter()
                .map(|&a| {
                    let c = Constraints {
                        fixed: vec![(corner, a)],
                        one_dimensional: edges.clone(),
                        vertex_filter: None,
                    };
                    enumerate_functors_capped(shape, cat, &c, cap)
                })
                .collect::<Option<_>>()
                .ok_or(Error::Explosion { cap })?;
            tables_by_degree.push(capped(parts, cap)?);
        }
        let face_maps = (0..=d + 1)
            .map(|n| {
                (0..=n)
                    .map(|i| if n == 0 { Vec::new() } else { corner_face_map(n + 1, i, eta) })
                    .collect()
            })
            .collect();
        let degen_maps = (0..=d)
            .map(|n| (0..=n).map(|i| corner_degen_map(n + 1, i, eta)).collect())
            .collect();
        let to_c = cat.ids().collect();
        Nerve::assemble(
            NerveKind::Corner(eta),
            d,
            cat.clone(),
            cat.clone(),
            to_c,
            aug,
            tables_by_degree,
            face_maps,
            degen_maps,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: NerveKind,
        d: usize,
        cat: OmegaCat,
        values: OmegaCat,
        to_c: Vec<ElemId>,
        aug: Vec<Grade>,
        tables_by_degree: Vec<Vec<Vec<ElemId>>>,
        face_maps: Vec<Vec<Vec<usize>>>,
        degen_maps: Vec<Vec<Vec<usize>>>,
    ) -> Result<Nerve> {
        let aug_index = aug.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let c_index = to_c.iter().enumerate().map(|(i, &x)| (x, i as ElemId)).collect();
        let mut nerve = Nerve {
            kind,
            truncation: d,
            cat,
            values,
            to_c,
            c_index,
            aug,
            aug_index,
            degrees: Vec::new(),
            face_maps,
            degen_maps,
        };
        for (n, tables) in tables_by_degree.into_iter().enumerate() {
            let index = tables.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let top = nerve.top_face(n);
            let ev: Vec<ElemId> = tables.iter().map(|t| nerve.to_c[t[top] as usize]).collect();
            let thin = ev.iter().map(|&e| nerve.cat.dim(e) <= n).collect();
            nerve.degrees.push(Degree {
                tables,
                index,
                ev,
                thin,
                ..Default::default()
            });
        }
        for n in 0..=d {
            let deg = &nerve.degrees[n];
            let mut faces = Vec::with_capacity(deg.len());
            let mut grade = Vec::with_capacity(deg.len());
            for (x, t) in deg.tables.iter().enumerate() {
                grade.push(nerve.grade_of(n, t));
                if n == 0 {
                    let g = nerve.augmentation_of(deg.ev[x]);
                    let a = *nerve
                        .aug_index
                        .get(&g)
                        .ok_or_else(|| Error::invariant("augmentation missing"))?;
                    faces.push(vec![a]);
                } else {
                    let mut fs = Vec::with_capacity(n + 1);
                    for i in 0..=n {
                        let f = pull(t, &nerve.face_maps[n][i]);
                        let j = nerve.degrees[n - 1].find(&f).ok_or_else(|| {
                            Error::invariant(format!("face {i} of a degree {n} simplex is missing"))
                        })?;
                        fs.push(j);
                    }
                    faces.push(fs);
                }
            }
            let mut degens = Vec::with_capacity(deg.len());
            if n < d {
                for t in &deg.tables {
                    let mut es = Vec::with_capacity(n + 1);
                    for i in 0..=n {
                        let e = pull(t, &nerve.degen_maps[n][i]);
                        let j = nerve.degrees[n + 1].find(&e).ok_or_else(|| {
                            Error::invariant(format!(
                                "degeneracy {i} of a degree {n} simplex is missing"
                            ))
                        })?;
                        es.push(j);
                    }
                    degens.push(es);
                }
            } else {
                degens = vec![Vec::new(); deg.len()];
            }
            let deg = &mut nerve.degrees[n];
            deg.faces = faces;
            deg.degeneracies = degens;
            deg.grade = grade;
        }
        Ok(nerve)
    }

    fn top_face(&self, n: usize) -> usize {
        match self.kind {
            NerveKind::Globular => (1usize << (n + 1)) - 2,
            NerveKind::Corner(_) => CubeFace::interior(n + 1).index(),
        }
    }

    fn augmentation_of(&self, ev0: ElemId) -> Grade {
        let c = &self.cat;
        match self.kind {
            NerveKind::Globular => (c.src(ev0, 0), c.tgt(ev0, 0)),
            NerveKind::Corner(Sign::Plus) => (c.tgt(ev0, 0), c.tgt(ev0, 0)),
            NerveKind::Corner(_) => (c.src(ev0, 0), c.src(ev0, 0)),
        }
    }

    fn grade_of(&self, n: usize, t: &[ElemId]) -> Grade {
        let c = &self.cat;
        match self.kind {
            NerveKind::Globular => {
                let v = self.to_c[t[0] as usize];
                (c.src(v, 0), c.tgt(v, 0))
            }
            NerveKind::Corner(eta) => {
                let a = t[CubeFace::corner(n + 1, eta).index()];
                (a, a)
            }
        }
    }

    pub fn category(&self) -> &OmegaCat {
        &self.cat
    }

    /// The category the table values live in (`𝒫C` or `C`).
    pub fn values(&self) -> &OmegaCat {
        &self.values
    }

    /// Element of `C` for a table value.
    pub fn to_c(&self, v: ElemId) -> ElemId {
        self.to_c[v as usize]
    }

    /// Table value for an element of `C`, if it is one.
    pub fn from_c(&self, x: ElemId) -> Option<ElemId> {
        self.c_index.get(&x).copied()
    }

    pub fn augmentation(&self) -> &[Grade] {
        &self.aug
    }

    pub fn degree(&self, n: usize) -> &Degree {
        &self.degrees[n]
    }

    /// Number of simplexes in degree `n ≥ -1`.
    pub fn count(&self, n: i64) -> usize {
        if n == -1 {
            self.aug.len()
        } else if n >= 0 && (n as usize) <= self.truncation {
            self.degrees[n as usize].len()
        } else {
            0
        }
    }

    pub fn table(&self, n: usize, x: usize) -> &[ElemId] {
        &self.degrees[n].tables[x]
    }

    /// Table values translated to `C`.
    pub fn table_in_c(&self, n: usize, x: usize) -> Vec<ElemId> {
        self.table(n, x).iter().map(|&v| self.to_c(v)).collect()
    }

    pub fn face(&self, n: usize, x: usize, i: usize) -> usize {
        self.degrees[n].faces[x][i]
    }

    pub fn degeneracy(&self, n: usize, x: usize, i: usize) -> Option<usize> {
        self.degrees[n].degeneracies[x].get(i).copied()
    }

    pub fn ev(&self, n: usize, x: usize) -> ElemId {
        self.degrees[n].ev[x]
    }

    pub fn is_thin(&self, n: usize, x: usize) -> bool {
        self.degrees[n].thin[x]
    }

    pub fn grade(&self, n: usize, x: usize) -> Grade {
        self.degrees[n].grade[x]
    }

    /// `∂_i` applied to an arbitrary table of degree `n ≥ 1`.
    pub fn face_table(&self, n: usize, table: &[ElemId], i: usize) -> Vec<ElemId> {
        match self.kind {
            NerveKind::Globular => globular_face(table, n, i),
            NerveKind::Corner(eta) => corner_face(table, n, i, eta),
        }
    }

    /// `ε_i` applied to an arbitrary table of degree `n`.
    pub fn degeneracy_table(&self, n: usize, table: &[ElemId], i: usize) -> Vec<ElemId> {
        match self.kind {
            NerveKind::Globular => globular_degeneracy(table, n, i),
            NerveKind::Corner(eta) => corner_degeneracy(table, n, i, eta),
        }
    }

    pub fn find(&self, n: usize, table: &[ElemId]) -> Option<usize> {
        self.degrees.get(n).and_then(|d| d.find(table))
    }

    /// Face index of the shape for a simplex face (globular) or cube word (corner).
    pub fn face_index(&self, n: usize, name: &str) -> Result<usize> {
        match self.kind {
            NerveKind::Globular => {
                let f = SimplexFace::parse(name)?;
                if f.vertices().iter().any(|&v| v as usize > n) {
                    return Err(Error::input(format!("{name} is not a face of Delta{n}")));
                }
                Ok(f.mask() - 1)
            }
            NerveKind::Corner(_) => {
                let f = CubeFace::parse(name)?;
                if f.ambient() != n + 1 {
                    return Err(Error::input(format!("{name} is not a face of I{}", n + 1)));
                }
                Ok(f.index())
            }
        }
    }

    /// Verifies the augmented simplicial identities, `ev ∘ ε_i = ev`, the
    /// thin flags and grade preservation.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |m: String| Err(Error::invariant(m));
        let d = self.truncation;
        for n in 0..=d {
            let deg = &self.degrees[n];
            for x in 0..deg.len() {
                if deg.thin[x] != (self.cat.dim(deg.ev[x]) <= n) {
                    return fail(format!("thin flag of ({n},{x})"));
                }
                if n == 1 {
                    let a = self.degrees[0].faces[deg.faces[x][0]][0];
                    let b = self.degrees[0].faces[deg.faces[x][1]][0];
                    if a != b {
                        return fail(format!("augmentation identity at ({n},{x})"));
                    }
                }
                if n == 0 {
                    if self.aug[deg.faces[x][0]] != deg.grade[x] {
                        return fail(format!("grade of the augmentation of (0,{x})"));
                    }
                } else {
                    for i in 0..=n {
                        if self.degrees[n - 1].grade[deg.faces[x][i]] != deg.grade[x] {
                            return fail(format!("face {i} changes the grade of ({n},{x})"));
                        }
                    }
                }
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let l = self.face(n - 1, self.face(n, x, j), i);
                            let r = self.face(n - 1, self.face(n, x, i), j - 1);
                            if l != r {
                                return fail(format!("d{i} d{j} at ({n},{x})"));
                            }
                        }
                    }
                }
                if n < d {
                    for i in 0..=n {
                        let e = deg.degeneracies[x][i];
                        let up = &self.degrees[n + 1];
                        if up.ev[e] != deg.ev[x] || up.grade[e] != deg.grade[x] {
                            return fail(format!("ev or grade of e{i} at ({n},{x})"));
                        }
                        if up.faces[e][i] != x || up.faces[e][i + 1] != x {
                            return fail(format!("d e{i} at ({n},{x})"));
                        }
                        for j in 0..=n + 1 {
                            if j == i || j == i + 1 || n == 0 {
                                continue;
                            }
                            let lhs = up.faces[e][j];
                            let rhs = if j < i {
                                self.degeneracy(n - 1, deg.faces[x][j], i - 1)
                            } else {
                                self.degeneracy(n - 1, deg.faces[x][j - 1], i)
                            };
                            if Some(lhs) != rhs {
                                return fail(format!("d{j} e{i} at ({n},{x})"));
                            }
                        }
                        if n + 1 < d {
                            for j in i..=n {
                                let l = self.degeneracy(n + 1, self.degeneracy(n, x, j).unwrap(), i);
                                let r =
                                    self.degeneracy(n + 1, self.degeneracy(n, x, i).unwrap(), j + 1);
                                if l != r {
                                    return fail(format!("e{i} e{j} at ({n},{x})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Partition of all simplexes by grade, checking that faces and
    /// degeneracies never leave a component.
    pub fn grade_decompose(&self) -> Result<BTreeMap<Grade, Vec<(i64, usize)>>> {
        let mut out: BTreeMap<Grade, Vec<(i64, usize)>> = BTreeMap::new();
        for (i, &g) in self.aug.iter().enumerate() {
            out.entry(g).or_default().push((-1, i));
        }
        for n in 0..=self.truncation {
            let deg = &self.degrees[n];
            for x in 0..deg.len() {
                let g = deg.grade[x];
                let face_grades: Vec<Grade> = if n == 0 {
                    vec![self.aug[deg.faces[x][0]]]
                } else {
                    deg.faces[x].iter().map(|&f| self.degrees[n - 1].grade[f]).collect()
                };
                let degen_grades: Vec<Grade> = deg.degeneracies[x]
                    .iter()
                    .map(|&e| self.degrees[n + 1].grade[e])
                    .collect();
                if face_grades.iter().chain(degen_grades.iter()).any(|&h| h != g) {
                    return Err(Error::Grading(format!(
                        "simplex ({n},{x}) of grade {g:?} has a face or degeneracy in another grade"
                    )));
                }
                out.entry(g).or_default().push((n as i64, x));
            }
        }
        Ok(out)
    }

    /// Fills a simplicial `n`-shell `(x_0, …, x_{n+1})` of degree-`n`
    /// simplexes with top value `u ∈ C`, giving a degree `n+1` table.
    pub fn fill_shell_simplicial(&self, n: usize, shell: &[Vec<ElemId>], u: ElemId) -> Result<Vec<ElemId>> {
        if self.kind != NerveKind::Globular {
            return Err(Error::input("simplicial shells live in the globular nerve"));
        }
        if shell.len() != n + 2 {
            return Err(Error::Shell(format!("an {n}-shell needs {} simplexes", n + 2)));
        }
        for j in 1..=n + 1 {
            for i in 0..j {
                if n > 0
                    && self.face_table(n, &shell[j], i) != self.face_table(n, &shell[i], j - 1)
                {
                    return Err(Error::Shell(format!("d{i} x{j} differs from d{} x{i}", j - 1)));
                }
            }
        }
        let top = self
            .from_c(u)
            .ok_or_else(|| Error::Shell("top value is not a positive-dimensional morphism".into()))?;
        let m = n + 1;
        let count = (1usize << (m + 1)) - 1;
        let mut table = vec![ElemId::MAX; count];
        for (i, x) in shell.iter().enumerate() {
            let map = simplex_face_map(m, i);
            for (tau, &sigma) in map.iter().enumerate() {
                let v = x[tau];
                if table[sigma] != ElemId::MAX && table[sigma] != v {
                    return Err(Error::Shell(format!("shell faces disagree on {}", SimplexFace::from_mask(sigma + 1))));
                }
                table[sigma] = v;
            }
        }
        table[count - 1] = top;
        let shape = Shape::cached(ShapeKind::Simplex, m)?;
        shape
            .evaluate(&table, &self.values)
            .ok_or_else(|| Error::Shell("top value does not fit the shell boundary".into()))?;
        Ok(table)
    }

    /// Structured export of the simplex tables.
    pub fn export(&self) -> serde_json::Value {
        let label = |v: ElemId| self.cat.label(self.to_c(v));
        let mut degrees = vec![json!({
            "degree": -1,
            "simplexes": self.aug.iter().map(|&(a, b)| json!({
                "grade": [self.cat.label(a), self.cat.label(b)],
            })).collect::<Vec<_>>(),
        })];
        for n in 0..=self.truncation {
            let deg = &self.degrees[n];
            let shape_faces: Vec<String> = (0..deg.tables.first().map_or(0, Vec::len))
                .map(|i| match self.kind {
                    NerveKind::Globular => SimplexFace::from_mask(i + 1).to_string(),
                    NerveKind::Corner(_) => CubeFace::from_index(n + 1, i).to_string(),
                })
                .collect();
            let simplexes: Vec<_> = (0..deg.len())
                .map(|x| {
                    json!({
                        "table": deg.tables[x].iter().map(|&v| label(v)).collect::<Vec<_>>(),
                        "faces": deg.faces[x],
                        "degeneracies": deg.degeneracies[x],
                        "ev": self.cat.label(deg.ev[x]),
                        "thin": deg.thin[x],
                        "grade": [self.cat.label(deg.grade[x].0), self.cat.label(deg.grade[x].1)],
                    })
                })
                .collect();
            degrees.push(json!({
                "degree": n,
                "shape_faces": shape_faces,
                "simplexes": simplexes,
            }));
        }
        json!({
            "nerve": self.kind.name(),
            "category": self.cat.name(),
            "truncation": self.truncation,
            "degrees": degrees,
        })
    }
}

/// Fills a cubical `(n-1)`-shell: `shell[i] = (x_{i+1}^-, x_{i+1}^+)`, each a
/// table on `I^{n-1}`, and top value `u`, giving a table on `Iⁿ`.
pub fn fill_shell_cubical(
    cat: &OmegaCat,
    n: usize,
    shell: &[(Vec<ElemId>, Vec<ElemId>)],
    u: ElemId,
) -> Result<Vec<ElemId>> {
    if n == 0 || shell.len() != n {
        return Err(Error::Shell(format!("an I{n} shell needs {} pairs of faces", n)));
    }
    let count = 3usize.pow(n as u32);
    let mut table = vec![ElemId::MAX; count];
    for (i, (minus, plus)) in shell.iter().enumerate() {
        for (sign, x) in [(Sign::Minus, minus), (Sign::Plus, plus)] {
            if x.len() != 3usize.pow(n as u32 - 1) {
                return Err(Error::Shell(format!("face {} has the wrong size", i + 1)));
            }
            for k in CubeFace::all(n - 1) {
                let idx = k.insert(i, sign).index();
                let v = x[k.index()];
                if table[idx] != ElemId::MAX && table[idx] != v {
                    return Err(Error::Shell(format!(
                        "shell faces disagree on {}",
                        CubeFace::from_index(n, idx)
                    )));
                }
                table[idx] = v;
            }
        }
    }
    let top = CubeFace::interior(n).index();
    table[top] = u;
    let shape = Shape::cached(ShapeKind::Cube, n)?;
    shape
        .evaluate(&table, cat)
        .ok_or_else(|| Error::Shell("top value does not fit the shell boundary".into()))?;
    Ok(table)
}

//! Finite strict globular ω-categories.
//!
//! Free categories (cubes, simplexes, globes, graphs, semi-cubical sets and
//! presentations) are enumerated by closing a set of generating atoms under
//! composition. Elements are kept in canonical form as tables of
//! `(source, target)` chains per level, the normal form of a free
//! ω-category on a loop-free basis; equal tables are equal morphisms.

mod basis;
mod build;
mod derived;
mod functor;
mod ingest;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use basis::Basis;
pub use build::{
    build, BuildOptions, PresentedGenerator, Scheme, SemiCubicalCell, DEFAULT_ELEMENT_CAP,
};
pub use derived::{bilocalize, iso_check, loop_space, path_category};
pub use functor::{enumerate_functors, enumerate_functors_capped, Constraints, Shape, ShapeKind};
pub use ingest::{export_presentation, load, parse_document, parse_expression, Document, Expr};

/// Index of an element inside its category.
pub type ElemId = u32;

/// A nonnegative integer combination of basis cells, sorted by cell.
pub type Chain = Vec<(u32, u32)>;

/// Canonical form of an element: for each level `q ≤ dim`, the source and
/// target chains `(x_q⁻, x_q⁺)`. The top level has `x⁻ = x⁺`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Table {
    pub levels: Vec<(Chain, Chain)>,
}

impl Table {
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    /// `s_p` (minus) or `t_p` (plus) of the table; `self` when `p ≥ dim`.
    pub fn boundary(&self, p: usize, minus: bool) -> Table {
        if p >= self.dim() {
            return self.clone();
        }
        let mut levels = self.levels[..p].to_vec();
        let c = if minus {
            self.levels[p].0.clone()
        } else {
            self.levels[p].1.clone()
        };
        levels.push((c.clone(), c));
        Table { levels }
    }

    /// The table of `x ∗_p y`; the caller guarantees `t_p x = s_p y`.
    pub fn compose(x: &Table, p: usize, y: &Table) -> Table {
        let dim = x.dim().max(y.dim());
        let mut levels = Vec::with_capacity(dim + 1);
        for q in 0..=dim {
            let level = if q < p {
                x.levels[q].clone()
            } else if q == p {
                (x.levels[p].0.clone(), y.levels[p].1.clone())
            } else {
                let empty = (Vec::new(), Vec::new());
                let a = x.levels.get(q).unwrap_or(&empty);
                let b = y.levels.get(q).unwrap_or(&empty);
                (chain_add(&a.0, &b.0), chain_add(&a.1, &b.1))
            };
            levels.push(level);
        }
        Table { levels }
    }

    /// Cells occurring anywhere in the table.
    pub fn support(&self) -> Vec<u32> {
        let mut cells: Vec<u32> = self
            .levels
            .iter()
            .flat_map(|(a, b)| a.iter().chain(b.iter()).map(|&(c, _)| c))
            .collect();
        cells.sort_unstable();
        cells.dedup();
        cells
    }
}

pub(crate) fn chain_add(a: &Chain, b: &Chain) -> Chain {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Structural data of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub dim: u8,
    /// `src[p] = s_p x` for `p < dim`.
    pub src: Vec<ElemId>,
    pub tgt: Vec<ElemId>,
}

/// A finite strict globular ω-category with enumerated tables.
#[derive(Clone)]
pub struct OmegaCat {
    name: String,
    elems: Vec<Elem>,
    comp: HashMap<(ElemId, u8, ElemId), ElemId>,
    decomp: Vec<Option<(ElemId, u8, ElemId)>>,
    /// Names of indecomposable elements.
    names: HashMap<ElemId, String>,
    tables: Option<Vec<Table>>,
    table_index: HashMap<Table, ElemId>,
    /// Element of the category this one was derived from, if any.
    origin: Option<Vec<ElemId>>,
    by_dim: Vec<Vec<ElemId>>,
    /// `(p, s_p x, t_p x)` for elements of dimension `p + 1`.
    bd_index: HashMap<(u8, ElemId, ElemId), Vec<ElemId>>,
}

impl fmt::Debug for OmegaCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmegaCat")
            .field("name", &self.name)
            .field("counts", &self.counts())
            .finish()
    }
}

impl OmegaCat {
    /// Assembles a category from explicit tables. Elements must be listed
    /// in an order where composites come after their operands.
    pub(crate) fn from_parts(
        name: String,
        elems: Vec<Elem>,
        comp: HashMap<(ElemId, u8, ElemId), ElemId>,
        names: HashMap<ElemId, String>,
        tables: Option<Vec<Table>>,
        origin: Option<Vec<ElemId>>,
    ) -> OmegaCat {
        let mut decomp: Vec<Option<(ElemId, u8, ElemId)>> = vec![None; elems.len()];
        let mut entries: Vec<_> = comp.iter().map(|(&k, &v)| (v, k)).collect();
        entries.sort_unstable();
        for (r, (x, p, y)) in entries {
            if decomp[r as usize].is_none() && x < r && y < r {
                decomp[r as usize] = Some((x, p, y));
            }
        }
        let mut by_dim: Vec<Vec<ElemId>> = Vec::new();
        let mut bd_index: HashMap<(u8, ElemId, ElemId), Vec<ElemId>> = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            let d = e.dim as usize;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(i as ElemId);
            if d > 0 {
                bd_index
                    .entry((e.dim - 1, e.src[d - 1], e.tgt[d - 1]))
                    .or_default()
                    .push(i as ElemId);
            }
        }
        let table_index = tables
            .as_ref()
            .map(|ts| {
                ts.iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), i as ElemId))
                    .collect()
            })
            .unwrap_or_default();
        OmegaCat {
            name,
            elems,
            comp,
            decomp,
            names,
            tables,
            table_index,
            origin,
            by_dim,
            bd_index,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, x: ElemId) -> &Elem {
        &self.elems[x as usize]
    }

    pub fn dim(&self, x: ElemId) -> usize {
        self.elems[x as usize].dim as usize
    }

    /// Largest element dimension (0 for the empty category).
    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.elems.len() as ElemId
    }

    pub fn of_dim(&self, d: usize) -> &[ElemId] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of elements of each dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn table(&self, x: ElemId) -> Option<&Table> {
        self.tables.as_ref().map(|t| &t[x as usize])
    }

    pub fn lookup_table(&self, t: &Table) -> Option<ElemId> {
        self.table_index.get(t).copied()
    }

    /// Element of the parent category (for path categories and bilocalizations).
    pub fn origin(&self, x: ElemId) -> Option<ElemId> {
        self.origin.as_ref().map(|o| o[x as usize])
    }

    pub fn src(&self, x: ElemId, p: usize) -> ElemId {
        let e = &self.elems[x as usize];
        if p >= e.dim as usize {
            x
        } else {
            e.src[p]
        }
    }

    pub fn tgt(&self, x: ElemId, p: usize) -> ElemId {
        let e = &self.elems[x as usize];
        if p >= e.dim as usize {
            x
        } else {
            e.tgt[p]
        }
    }

    pub fn boundary(&self, x: ElemId, p: usize, minus: bool) -> ElemId {
        if minus {
            self.src(x, p)
        } else {
            self.tgt(x, p)
        }
    }

    /// `x ∗_p y`, or `None` when `t_p x ≠ s_p y`.
    pub fn try_compose(&self, x: ElemId, p: usize, y: ElemId) -> Option<ElemId> {
        if self.tgt(x, p) != self.src(y, p) {
            return None;
        }
        if self.dim(x) <= p {
            return Some(y);
        }
        if self.dim(y) <= p {
            return Some(x);
        }
        self.comp.get(&(x, p as u8, y)).copied()
    }

    pub fn compose(&self, x: ElemId, p: usize, y: ElemId) -> Result<ElemId> {
        self.try_compose(x, p, y).ok_or_else(|| Error::Composition {
            level: p,
            target: self.label(self.tgt(x, p)),
            source_: self.label(self.src(y, p)),
        })
    }

    /// All recorded nontrivial compositions `(x, p, y) ↦ x ∗_p y`.
    pub fn compositions(&self) -> impl Iterator<Item = ((ElemId, usize, ElemId), ElemId)> + '_ {
        self.comp
            .iter()
            .map(|(&(x, p, y), &r)| ((x, p as usize, y), r))
    }

    pub fn composition_count(&self) -> usize {
        self.comp.len()
    }

    pub fn decomposition(&self, x: ElemId) -> Option<(ElemId, usize, ElemId)> {
        self.decomp[x as usize].map(|(a, p, b)| (a, p as usize, b))
    }

    pub fn is_indecomposable(&self, x: ElemId) -> bool {
        self.decomp[x as usize].is_none()
    }

    pub fn indecomposables(&self) -> Vec<ElemId> {
        self.ids().filter(|&x| self.is_indecomposable(x)).collect()
    }

    /// Elements of dimension `p + 1` with `s_p = s` and `t_p = t`.
    pub fn between(&self, p: usize, s: ElemId, t: ElemId) -> &[ElemId] {
        self.bd_index
            .get(&(p as u8, s, t))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn generator_name(&self, x: ElemId) -> Option<&str> {
        self.names.get(&x).map(String::as_str)
    }

    pub fn find(&self, name: &str) -> Option<ElemId> {
        let mut hits: Vec<ElemId> = self
            .names
            .iter()
            .filter(|(_, n)| n.as_str() == name)
            .map(|(&x, _)| x)
            .collect();
        hits.sort_unstable();
        hits.first().copied()
    }

    /// Evaluates a composition expression.
    pub fn eval(&self, expr: &str) -> Result<ElemId> {
        ingest::eval_expr(self, &parse_expression(expr)?)
    }

    /// A composition expression for `x` in terms of indecomposables.
    pub fn label(&self, x: ElemId) -> String {
        if let Some(n) = self.names.get(&x) {
            return n.clone();
        }
        match self.decomp[x as usize] {
            Some((a, p, b)) => format!("({} *{} {})", self.label(a), p, self.label(b)),
            None => format!("#{x}"),
        }
    }

    /// 0-cells that are never a 0-target of a positive-dimensional element.
    pub fn initial_states(&self) -> Vec<ElemId> {
        self.states(false)
    }

    /// 0-cells that are never a 0-source of a positive-dimensional element.
    pub fn final_states(&self) -> Vec<ElemId> {
        self.states(true)
    }

    fn states(&self, final_: bool) -> Vec<ElemId> {
        let mut hit = vec![false; self.len()];
        for x in self.ids().filter(|&x| self.dim(x) > 0) {
            let v = if final_ { self.src(x, 0) } else { self.tgt(x, 0) };
            hit[v as usize] = true;
        }
        self.of_dim(0)
            .iter()
            .copied()
            .filter(|&v| !hit[v as usize])
            .collect()
    }

    /// Verifies the globular ω-category axioms exhaustively on the tables.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |m: String| Err(Error::invariant(m));
        for x in self.ids() {
            let d = self.dim(x);
            for i in 0..=d + 1 {
                for j in 0..=i {
                    for minus_i in [true, false] {
                        for minus_j in [true, false] {
                            let inner = self.boundary(x, j, minus_j);
                            if self.boundary(inner, i, minus_i) != inner {
                                return fail(format!("s/t_{i} of s/t_{j} {}", self.label(x)));
                            }
                            let inner = self.boundary(x, i, minus_i);
                            if j < i
                                && self.boundary(inner, j, minus_j) != self.boundary(x, j, minus_j)
                            {
                                return fail(format!("s/t_{j} of s/t_{i} {}", self.label(x)));
                            }
                        }
                    }
                }
            }
        }
        for ((x, p, y), r) in self.compositions() {
            if self.src(r, p) != self.src(x, p) || self.tgt(r, p) != self.tgt(y, p) {
                return fail(format!("boundary of composite at level {p}"));
            }
            for i in 0..self.dim(r) {
                for minus in [true, false] {
                    let lhs = self.boundary(r, i, minus);
                    if i > p {
                        let a = self.boundary(x, i, minus);
                        let b = self.boundary(y, i, minus);
                        if self.try_compose(a, p, b) != Some(lhs) {
                            return fail(format!("s/t_{i} of a ∗_{p} composite"));
                        }
                    } else if i < p && lhs != self.boundary(x, i, minus) {
                        return fail(format!("lower boundary of a ∗_{p} composite"));
                    }
                }
            }
            // associativity on the right
            for z in self.partners_right(r, p) {
                let left = self.try_compose(r, p, z);
                let right = self
                    .try_compose(y, p, z)
                    .and_then(|yz| self.try_compose(x, p, yz));
                if left != right {
                    return fail(format!("associativity at level {p}"));
                }
            }
        }
        self.check_interchange()
    }

    fn partners_right(&self, x: ElemId, p: usize) -> Vec<ElemId> {
        let t = self.tgt(x, p);
        self.ids()
            .filter(|&z| self.dim(z) > p && self.src(z, p) == t)
            .collect()
    }

    /// `(a ∗_i b) ∗_j (c ∗_i d) = (a ∗_j c) ∗_i (b ∗_j d)` for `i < j` whenever
    /// all the composites exist.
    fn check_interchange(&self) -> Result<()> {
        let mut by_level: HashMap<usize, Vec<(ElemId, ElemId, ElemId)>> = HashMap::new();
        for ((x, p, y), r) in self.compositions() {
            by_level.entry(p).or_default().push((x, y, r));
        }
        for (&i, pairs) in &by_level {
            let mut by_result: HashMap<ElemId, Vec<(ElemId, ElemId)>> = HashMap::new();
            for &(a, b, r) in pairs {
                by_result.entry(r).or_default().push((a, b));
            }
            for ((u, j, v), r) in self.compositions() {
                if j <= i {
                    continue;
                }
                let (Some(lu), Some(lv)) = (by_result.get(&u), by_result.get(&v)) else {
                    continue;
                };
                for &(a, b) in lu {
                    for &(c, d) in lv {
                        let ac = self.try_compose(a, j, c);
                        let bd = self.try_compose(b, j, d);
                        if let (Some(ac), Some(bd)) = (ac, bd) {
                            if self.try_compose(ac, i, bd) != Some(r) {
                                return Err(Error::invariant(format!(
                                    "interchange law at levels {i} < {j}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `s₁x` and `t₁x` are 1-dimensional for all `x` of dimension ≥ 2.
    /// Returns the first witness of contraction.
    pub fn contraction_witness(&self) -> Option<ElemId> {
        self.ids().find(|&x| {
            self.dim(x) >= 2 && (self.dim(self.src(x, 1)) != 1 || self.dim(self.tgt(x, 1)) != 1)
        })
    }
}

//! Closure of a set of atoms under composition.

use std::collections::{HashMap, VecDeque};

use super::basis::Basis;
use super::ingest::{eval_expr, Expr};
use super::{Elem, ElemId, OmegaCat, Table};
use crate::error::{Error, Result};
use crate::facecomb::{CubeFace, Sign};

pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub element_cap: usize,
    pub max_dim: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            element_cap: DEFAULT_ELEMENT_CAP,
            max_dim: 16,
        }
    }
}

/// A cell of a semi-cubical set. `minus[i]` and `plus[i]` name the faces
/// `∂_{i+1}^-` and `∂_{i+1}^+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiCubicalCell {
    pub name: String,
    pub dim: usize,
    pub minus: Vec<String>,
    pub plus: Vec<String>,
}

/// A generator of a presentation with its boundary expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGenerator {
    pub name: String,
    pub dim: usize,
    pub source: Option<Expr>,
    pub target: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    Cube(usize),
    Simplex(usize),
    Globe(usize),
    Graph {
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    },
    SemiCubical(Vec<SemiCubicalCell>),
    Presentation(Vec<PresentedGenerator>),
}

impl Scheme {
    pub fn default_name(&self) -> String {
        match self {
            Scheme::Cube(n) => format!("I{n}"),
            Scheme::Simplex(n) => format!("Delta{n}"),
            Scheme::Globe(n) => format!("2_{n}"),
            Scheme::Graph { .. } => "graph".into(),
            Scheme::SemiCubical(_) => "Pi(K)".into(),
            Scheme::Presentation(_) => "presentation".into(),
        }
    }
}

pub fn build(scheme: &Scheme, opts: BuildOptions) -> Result<OmegaCat> {
    let mut b = Builder::new(opts);
    match scheme {
        Scheme::Cube(n) => b.from_basis(&Basis::cube(*n))?,
        Scheme::Simplex(n) => b.from_basis(&Basis::simplex(*n))?,
        Scheme::Globe(n) => b.from_basis(&Basis::globe(*n))?,
        Scheme::Graph { vertices, edges } => b.from_basis(&graph_basis(vertices, edges)?)?,
        Scheme::SemiCubical(cells) => b.from_basis(&semicubical_basis(cells)?)?,
        Scheme::Presentation(gens) => b.from_presentation(gens)?,
    }
    Ok(b.finish(scheme.default_name()))
}

fn graph_basis(vertices: &[String], edges: &[(String, String, String)]) -> Result<Basis> {
    let mut b = Basis::default();
    let mut ids = HashMap::new();
    for v in vertices {
        if ids.insert(v.clone(), b.len() as u32).is_some() {
            return Err(Error::input(format!("duplicate vertex {v}")));
        }
        b.push(v.clone(), 0, Vec::new(), Vec::new());
    }
    for (name, s, t) in edges {
        let look = |v: &String| {
            ids.get(v)
                .copied()
                .ok_or_else(|| Error::input(format!("edge {name} uses unknown vertex {v}")))
        };
        let (s, t) = (look(s)?, look(t)?);
        if ids.insert(name.clone(), b.len() as u32).is_some() {
            return Err(Error::input(format!("duplicate name {name}")));
        }
        b.push(name.clone(), 1, vec![(s, 1)], vec![(t, 1)]);
    }
    Ok(b)
}

/// Chain basis of a semi-cubical set. Every cell must embed: its cube
/// faces must be pairwise distinct cells of `K`.
fn semicubical_basis(cells: &[SemiCubicalCell]) -> Result<Basis> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        if ids.insert(c.name.as_str(), i).is_some() {
            return Err(Error::input(format!("duplicate cell {}", c.name)));
        }
    }
    let face = |c: usize, i: usize, sign: Sign| -> Result<usize> {
        let cell = &cells[c];
        let list = if sign == Sign::Minus { &cell.minus } else { &cell.plus };
        let name = &list[i];
        let f = *ids
            .get(name.as_str())
            .ok_or_else(|| Error::input(format!("cell {} has unknown face {name}", cell.name)))?;
        if cells[f].dim + 1 != cell.dim {
            return Err(Error::input(format!(
                "face {name} of {} has dimension {}, expected {}",
                cell.name,
                cells[f].dim,
                cell.dim - 1
            )));
        }
        Ok(f)
    };
    for c in cells {
        if c.minus.len() != c.dim || c.plus.len() != c.dim {
            return Err(Error::input(format!(
                "cell {} of dimension {} needs {} faces of each sign",
                c.name, c.dim, c.dim
            )));
        }
    }
    // cubical relations ∂_i^α ∂_j^β = ∂_{j-1}^β ∂_i^α for i < j
    for (c, cell) in cells.iter().enumerate() {
        for j in 1..cell.dim {
            for i in 0..j {
                for a in [Sign::Minus, Sign::Plus] {
                    for b in [Sign::Minus, Sign::Plus] {
                        let lhs = face(face(c, j, b)?, i, a)?;
                        let rhs = face(face(c, i, a)?, j - 1, b)?;
                        if lhs != rhs {
                            return Err(Error::input(format!(
                                "cell {} violates the cubical relation for faces {} < {}",
                                cell.name,
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
    }
    // embedding: distinct faces of the standard cube go to distinct cells
    let image = |c: usize, word: &CubeFace| -> Result<usize> {
        let mut cur = c;
        let mut w = word.letters().to_vec();
        // peel letters from the right so earlier coordinates keep their index
        for pos in (0..w.len()).rev() {
            let s = w[pos];
            if s != Sign::Zero {
                cur = face(cur, pos, s)?;
                w.remove(pos);
            }
        }
        Ok(cur)
    };
    for (c, cell) in cells.iter().enumerate() {
        let mut seen = HashMap::new();
        for w in CubeFace::all(cell.dim) {
            let img = image(c, &w)?;
            if let Some(prev) = seen.insert(img, w.clone()) {
                return Err(Error::Unsupported(format!(
                    "cell {} is self-linked: its faces {prev} and {w} are both {}",
                    cell.name, cells[img].name
                )));
            }
        }
    }
    let mut b = Basis::default();
    for (c, cell) in cells.iter().enumerate() {
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for i in 0..cell.dim {
            // the i-th face (1-based i+1) is a source face when (−)^{i+1} = −
            let (src_sign, tgt_sign) = if i % 2 == 0 {
                (Sign::Minus, Sign::Plus)
            } else {
                (Sign::Plus, Sign::Minus)
            };
            minus.push((face(c, i, src_sign)? as u32, 1));
            plus.push((face(c, i, tgt_sign)? as u32, 1));
        }
        minus.sort_unstable();
        plus.sort_unstable();
        b.push(cell.name.clone(), cell.dim, minus, plus);
    }
    Ok(b)
}

pub(crate) struct Builder {
    opts: BuildOptions,
    elems: Vec<Elem>,
    tables: Vec<Table>,
    index: HashMap<Table, ElemId>,
    s_index: HashMap<(u8, ElemId), Vec<ElemId>>,
    t_index: HashMap<(u8, ElemId), Vec<ElemId>>,
    comp: HashMap<(ElemId, u8, ElemId), ElemId>,
    names: HashMap<ElemId, String>,
    atoms_by_dim: Vec<Vec<ElemId>>,
}

impl Builder {
    pub(crate) fn new(opts: BuildOptions) -> Builder {
        Builder {
            opts,
            elems: Vec::new(),
            tables: Vec::new(),
            index: HashMap::new(),
            s_index: HashMap::new(),
            t_index: HashMap::new(),
            comp: HashMap::new(),
            names: HashMap::new(),
            atoms_by_dim: Vec::new(),
        }
    }

    fn from_basis(&mut self, basis: &Basis) -> Result<()> {
        let max = basis.dims.iter().copied().max().unwrap_or(0);
        if max > self.opts.max_dim {
            return Err(Error::DimensionBound {
                requested: max,
                bound: self.opts.max_dim,
            });
        }
        check_acyclic(
            basis.len(),
            (0..basis.len())
                .filter(|&a| basis.dims[a] == 1)
                .map(|a| (basis.minus[a][0].0 as usize, basis.plus[a][0].0 as usize)),
            |v| basis.names[v].clone(),
        )?;
        for d in 0..=max {
            for a in 0..basis.len() {
                if basis.dims[a] == d {
                    self.add_atom(basis.atom(a as u32), basis.names[a].clone())?;
                }
            }
            self.close(d)?;
        }
        Ok(())
    }

    fn from_presentation(&mut self, gens: &[PresentedGenerator]) -> Result<()> {
        let max = gens.iter().map(|g| g.dim).max().unwrap_or(0);
        if max > self.opts.max_dim {
            return Err(Error::DimensionBound {
                requested: max,
                bound: self.opts.max_dim,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for g in gens {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::input(format!("duplicate generator {}", g.name)));
            }
        }
        for d in 0..=max {
            let mut edges = Vec::new();
            for g in gens.iter().filter(|g| g.dim == d) {
                let table = if d == 0 {
                    Table {
                        levels: vec![(vec![(self.tables.len() as u32, 1)], vec![(self.tables.len() as u32, 1)])],
                    }
                } else {
                    let (Some(se), Some(te)) = (&g.source, &g.target) else {
                        return Err(Error::input(format!(
                            "generator {} of dimension {d} needs a source and a target",
                            g.name
                        )));
                    };
                    let cat = self.snapshot();
                    let s = eval_expr(&cat, se)?;
                    let t = eval_expr(&cat, te)?;
                    let ok = |x: ElemId| cat.dim(x) < d;
                    if !ok(s) || !ok(t) {
                        return Err(Error::input(format!(
                            "boundary of generator {} must have dimension below {d}",
                            g.name
                        )));
                    }
                    for p in 0..d - 1 {
                        for minus in [true, false] {
                            if cat.boundary(s, p, minus) != cat.boundary(t, p, minus) {
                                return Err(Error::input(format!(
                                    "source and target of generator {} are not parallel at level {p}",
                                    g.name
                                )));
                            }
                        }
                    }
                    if d == 1 {
                        edges.push((s as usize, t as usize));
                    }
                    presented_atom(&self.tables[s as usize], &self.tables[t as usize], d, self.tables.len() as u32)
                };
                self.add_atom(table, g.name.clone())?;
            }
            if d == 1 {
                let names: Vec<String> = (0..self.elems.len())
                    .map(|x| self.names.get(&(x as ElemId)).cloned().unwrap_or_default())
                    .collect();
                check_acyclic(self.elems.len(), edges.into_iter(), |v| names[v].clone())?;
            }
            self.close(d)?;
        }
        Ok(())
    }

    /// A read-only view of the elements built so far.
    fn snapshot(&self) -> OmegaCat {
        OmegaCat::from_parts(
            String::new(),
            self.elems.clone(),
            self.comp.clone(),
            self.names.clone(),
            Some(self.tables.clone()),
            None,
        )
    }

    fn add_atom(&mut self, table: Table, name: String) -> Result<()> {
        let d = table.dim();
        for p in 0..d {
            for minus in [true, false] {
                if !self.index.contains_key(&table.boundary(p, minus)) {
                    return Err(Error::input(format!(
                        "the {} of generator {name} at level {p} is not generated by lower cells",
                        if minus { "source" } else { "target" }
                    )));
                }
            }
        }
        let (id, fresh) = self.insert(table)?;
        if !fresh {
            return Err(Error::input(format!("generator {name} duplicates an existing cell")));
        }
        self.names.insert(id, name);
        if self.atoms_by_dim.len() <= d {
            self.atoms_by_dim.resize(d + 1, Vec::new());
        }
        self.atoms_by_dim[d].push(id);
        Ok(())
    }

    fn insert(&mut self, table: Table) -> Result<(ElemId, bool)> {
        if let Some(&id) = self.index.get(&table) {
            return Ok((id, false));
        }
        if self.elems.len() >= self.opts.element_cap {
            return Err(Error::Explosion {
                cap: self.opts.element_cap,
            });
        }
        let d = table.dim();
        let mut src = Vec::with_capacity(d);
        let mut tgt = Vec::with_capacity(d);
        for p in 0..d {
            let s = *self
                .index
                .get(&table.boundary(p, true))
                .ok_or_else(|| Error::invariant("missing source during closure"))?;
            let t = *self
                .index
                .get(&table.boundary(p, false))
                .ok_or_else(|| Error::invariant("missing target during closure"))?;
            src.push(s);
            tgt.push(t);
        }
        let id = self.elems.len() as ElemId;
        for p in 0..d {
            self.s_index.entry((p as u8, src[p])).or_default().push(id);
            self.t_index.entry((p as u8, tgt[p])).or_default().push(id);
        }
        self.elems.push(Elem {
            dim: d as u8,
            src,
            tgt,
        });
        self.index.insert(table.clone(), id);
        self.tables.push(table);
        Ok((id, true))
    }

    /// Adds every composite of dimension `d` reachable from the elements of
    /// dimension `d` already present.
    fn close(&mut self, d: usize) -> Result<()> {
        let mut queue: VecDeque<ElemId> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.dim as usize == d)
            .map(|(i, _)| i as ElemId)
            .collect();
        while let Some(x) = queue.pop_front() {
            for p in 0..d {
                let right = self
                    .s_index
                    .get(&(p as u8, self.elems[x as usize].tgt[p]))
                    .cloned()
                    .unwrap_or_default();
                for y in right {
                    self.record(x, p, y, &mut queue)?;
                }
                let left = self
                    .t_index
                    .get(&(p as u8, self.elems[x as usize].src[p]))
                    .cloned()
                    .unwrap_or_default();
                for y in left {
                    self.record(y, p, x, &mut queue)?;
                }
            }
        }
        Ok(())
    }

    fn record(&mut self, x: ElemId, p: usize, y: ElemId, queue: &mut VecDeque<ElemId>) -> Result<()> {
        let key = (x, p as u8, y);
        if self.comp.contains_key(&key) {
            return Ok(());
        }
        let t = Table::compose(&self.tables[x as usize], p, &self.tables[y as usize]);
        let (r, fresh) = self.insert(t)?;
        self.comp.insert(key, r);
        if fresh {
            queue.push_back(r);
        }
        Ok(())
    }

    pub(crate) fn finish(self, name: String) -> OmegaCat {
        OmegaCat::from_parts(name, self.elems, self.comp, self.names, Some(self.tables), None)
    }
}

/// Atom of a generator of dimension `d` with evaluated boundaries `s`, `t`.
fn presented_atom(s: &Table, t: &Table, d: usize, cell: u32) -> Table {
    let mut levels: Vec<(super::Chain, super::Chain)> = Vec::with_capacity(d + 1);
    for q in 0..d - 1 {
        if q < s.dim() {
            levels.push(s.levels[q].clone());
        } else {
            let c = level_at(s, q);
            levels.push((c.clone(), c));
        }
    }
    levels.push((level_at(s, d - 1), level_at(t, d - 1)));
    levels.push((vec![(cell, 1)], vec![(cell, 1)]));
    Table { levels }
}

/// The chain at level `q ≥ dim x` of `x` seen as an identity.
fn level_at(x: &Table, q: usize) -> super::Chain {
    if q == x.dim() {
        x.levels[q].0.clone()
    } else if q > x.dim() {
        Vec::new()
    } else {
        unreachable!("level below the top")
    }
}

fn check_acyclic(
    n: usize,
    edges: impl Iterator<Item = (usize, usize)>,
    name: impl Fn(usize) -> String,
) -> Result<()> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    let mut touched = Vec::new();
    for (s, t) in edges {
        if s == t {
            return Err(Error::CyclicSkeleton(name(s)));
        }
        out[s].push(t);
        indeg[t] += 1;
        touched.push(s);
        touched.push(t);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if seen < n {
        let v = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(Error::CyclicSkeleton(name(v)));
    }
    Ok(())
}

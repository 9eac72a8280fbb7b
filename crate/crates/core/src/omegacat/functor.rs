//! ω-functors out of the free categories `Δᵏ` and `Iᵏ`.
//!
//! A functor is stored as its table of values on the faces of the shape.
//! Simplex faces are indexed by vertex bitmask minus one, cube faces by
//! [`CubeFace::index`].

use std::sync::OnceLock;

use super::basis::Basis;
use super::build::{build, BuildOptions, Scheme};
use super::{ElemId, OmegaCat};
use crate::error::{Error, Result};
use crate::facecomb::{CubeFace, Face, Sign, SimplexFace};

/// Hard bound on shape dimensions accepted by the enumerator.
pub const MAX_SHAPE_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Simplex,
    Cube,
}

/// A free pasting shape with its generating faces.
#[derive(Debug)]
pub struct Shape {
    pub kind: ShapeKind,
    pub n: usize,
    pub cat: OmegaCat,
    /// Element of `cat` for each face index.
    pub atom: Vec<ElemId>,
    pub face_dim: Vec<usize>,
    /// Face indices in an order where every face follows its subfaces.
    pub order: Vec<usize>,
}

impl Shape {
    pub fn new(kind: ShapeKind, n: usize) -> Result<Shape> {
        if n > MAX_SHAPE_DIM {
            return Err(Error::DimensionBound {
                requested: n,
                bound: MAX_SHAPE_DIM,
            });
        }
        let (scheme, basis) = match kind {
            ShapeKind::Simplex => (Scheme::Simplex(n), Basis::simplex(n)),
            ShapeKind::Cube => (Scheme::Cube(n), Basis::cube(n)),
        };
        let cat = build(&scheme, BuildOptions::default())?;
        let atom: Vec<ElemId> = basis
            .names
            .iter()
            .map(|name| cat.find(name).expect("every basis cell is a generator"))
            .collect();
        let face_dim = basis.dims.clone();
        let mut order: Vec<usize> = (0..basis.len()).collect();
        match kind {
            // subfaces have strictly smaller vertex sets
            ShapeKind::Simplex => {}
            // weigh letters as − = 0, + = 1, 0 = 2: subfaces are smaller
            ShapeKind::Cube => order.sort_by_key(|&i| {
                CubeFace::from_index(n, i).letters().iter().fold(0usize, |acc, s| {
                    acc * 3
                        + match s {
                            Sign::Minus => 0,
                            Sign::Plus => 1,
                            Sign::Zero => 2,
                        }
                })
            }),
        }
        Ok(Shape {
            kind,
            n,
            cat,
            atom,
            face_dim,
            order,
        })
    }

    /// Shared instance, built on first use.
    pub fn cached(kind: ShapeKind, n: usize) -> Result<&'static Shape> {
        static SIMPLEX: [OnceLock<Shape>; MAX_SHAPE_DIM + 1] =
            [const { OnceLock::new() }; MAX_SHAPE_DIM + 1];
        static CUBE: [OnceLock<Shape>; MAX_SHAPE_DIM + 1] =
            [const { OnceLock::new() }; MAX_SHAPE_DIM + 1];
        if n > MAX_SHAPE_DIM {
            return Err(Error::DimensionBound {
                requested: n,
                bound: MAX_SHAPE_DIM,
            });
        }
        let slot = match kind {
            ShapeKind::Simplex => &SIMPLEX[n],
            ShapeKind::Cube => &CUBE[n],
        };
        if let Some(s) = slot.get() {
            return Ok(s);
        }
        let s = Shape::new(kind, n)?;
        Ok(slot.get_or_init(|| s))
    }

    pub fn face_count(&self) -> usize {
        self.atom.len()
    }

    /// Index of the top face.
    pub fn top(&self) -> usize {
        match self.kind {
            ShapeKind::Simplex => (1usize << (self.n + 1)) - 2,
            ShapeKind::Cube => CubeFace::interior(self.n).index(),
        }
    }

    pub fn simplex_index(face: &SimplexFace) -> usize {
        face.mask() - 1
    }

    pub fn cube_index(face: &CubeFace) -> usize {
        face.index()
    }

    /// Name of the face with the given index.
    pub fn face_name(&self, i: usize) -> String {
        match self.kind {
            ShapeKind::Simplex => SimplexFace::from_mask(i + 1).to_string(),
            ShapeKind::Cube => CubeFace::from_index(self.n, i).to_string(),
        }
    }

    pub fn dim_of(&self, i: usize) -> usize {
        match self.kind {
            ShapeKind::Simplex => SimplexFace::from_mask(i + 1).dim(),
            ShapeKind::Cube => CubeFace::from_index(self.n, i).dim(),
        }
    }

    /// Evaluates every element of the shape under the given face table.
    /// Returns `None` if the table is not an ω-functor into `target`.
    pub fn evaluate(&self, table: &[ElemId], target: &OmegaCat) -> Option<Vec<ElemId>> {
        let mut val: Vec<Option<ElemId>> = vec![None; self.cat.len()];
        for (i, &a) in self.atom.iter().enumerate() {
            val[a as usize] = Some(table[i]);
        }
        for x in self.cat.ids() {
            if val[x as usize].is_none() {
                let (l, p, r) = self.cat.decomposition(x)?;
                let v = target.try_compose(val[l as usize]?, p, val[r as usize]?)?;
                val[x as usize] = Some(v);
            }
        }
        let vals: Vec<ElemId> = val.into_iter().collect::<Option<_>>()?;
        // functoriality on boundaries of every element
        for x in self.cat.ids() {
            let d = self.cat.dim(x);
            let v = vals[x as usize];
            if target.dim(v) > d {
                return None;
            }
            for p in 0..d {
                if target.src(v, p) != vals[self.cat.src(x, p) as usize]
                    || target.tgt(v, p) != vals[self.cat.tgt(x, p) as usize]
                {
                    return None;
                }
            }
        }
        Some(vals)
    }
}

/// Restrictions on enumerated functors.
#[derive(Default)]
pub struct Constraints<'a> {
    /// Faces with a prescribed value.
    pub fixed: Vec<(usize, ElemId)>,
    /// Faces whose value must be 1-dimensional.
    pub one_dimensional: Vec<usize>,
    /// Admissible values on vertices.
    pub vertex_filter: Option<&'a (dyn Fn(ElemId) -> bool + Sync)>,
}

/// All ω-functors `shape → target` satisfying `constraints`, as face tables,
/// in lexicographic order of the search.
pub fn enumerate_functors(
    shape: &Shape,
    target: &OmegaCat,
    constraints: &Constraints<'_>,
) -> Vec<Vec<ElemId>> {
    enumerate_functors_capped(shape, target, constraints, usize::MAX).expect("uncapped")
}

/// Like [`enumerate_functors`], but gives up with `None` once more than
/// `cap` functors have been found.
pub fn enumerate_functors_capped(
    shape: &Shape,
    target: &OmegaCat,
    constraints: &Constraints<'_>,
    cap: usize,
) -> Option<Vec<Vec<ElemId>>> {
    let mut e = Enumerator::new(shape, target, constraints);
    let mut out = Vec::new();
    e.run(0, &mut |t| {
        out.push(t.to_vec());
        out.len() <= cap
    });
    (!e.stopped).then_some(out)
}

const UNSET: ElemId = ElemId::MAX;

struct Enumerator<'a> {
    shape: &'a Shape,
    target: &'a OmegaCat,
    c: &'a Constraints<'a>,
    fixed: Vec<Option<ElemId>>,
    one_dim: Vec<bool>,
    table: Vec<ElemId>,
    memo: Vec<ElemId>,
    trail: Vec<ElemId>,
    stopped: bool,
}

impl<'a> Enumerator<'a> {
    fn new(shape: &'a Shape, target: &'a OmegaCat, c: &'a Constraints<'a>) -> Self {
        let n = shape.face_count();
        let mut fixed = vec![None; n];
        for &(f, v) in &c.fixed {
            fixed[f] = Some(v);
        }
        let mut one_dim = vec![false; n];
        for &f in &c.one_dimensional {
            one_dim[f] = true;
        }
        Enumerator {
            shape,
            target,
            c,
            fixed,
            one_dim,
            table: vec![UNSET; n],
            memo: vec![UNSET; shape.cat.len()],
            trail: Vec::new(),
            stopped: false,
        }
    }

    /// Value of a shape element; all its generating faces are assigned.
    fn eval(&mut self, x: ElemId) -> Option<ElemId> {
        let m = self.memo[x as usize];
        if m != UNSET {
            return Some(m);
        }
        let (l, p, r) = self.shape.cat.decomposition(x)?;
        let a = self.eval(l)?;
        let b = self.eval(r)?;
        let v = self.target.try_compose(a, p, b)?;
        self.memo[x as usize] = v;
        self.trail.push(x);
        Some(v)
    }

    fn candidates(&mut self, face: usize) -> Vec<ElemId> {
        let d = self.shape.face_dim[face];
        let t = self.target;
        let mut cands: Vec<ElemId> = if d == 0 {
            t.of_dim(0)
                .iter()
                .copied()
                .filter(|&v| self.c.vertex_filter.is_none_or(|f| f(v)))
                .collect()
        } else {
            let a = self.shape.atom[face];
            let (se, te) = (self.shape.cat.src(a, d - 1), self.shape.cat.tgt(a, d - 1));
            let (Some(s), Some(tv)) = (self.eval(se), self.eval(te)) else {
                return Vec::new();
            };
            let mut v = Vec::new();
            if s == tv {
                v.push(s);
            }
            v.extend_from_slice(t.between(d - 1, s, tv));
            v
        };
        if let Some(f) = self.fixed[face] {
            cands.retain(|&v| v == f);
        }
        if self.one_dim[face] {
            cands.retain(|&v| t.dim(v) == 1);
        }
        cands
    }

    fn run(&mut self, i: usize, emit: &mut dyn FnMut(&[ElemId]) -> bool) {
        if self.stopped {
            return;
        }
        if i == self.shape.order.len() {
            self.stopped = !emit(&self.table);
            return;
        }
        let face = self.shape.order[i];
        let mark = self.trail.len();
        let cands = self.candidates(face);
        let atom = self.shape.atom[face] as usize;
        for v in cands {
            self.table[face] = v;
            self.memo[atom] = v;
            self.run(i + 1, emit);
        }
        self.table[face] = UNSET;
        self.memo[atom] = UNSET;
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.memo[x as usize] = UNSET;
        }
    }
}

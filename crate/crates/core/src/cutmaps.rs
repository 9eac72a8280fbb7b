//! Morphisms between cuts: `h^η` from the globular nerve to the corner
//! nerves, the globular folding operators, folded-form predicates and the
//! star composition of globular simplexes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::facecomb::{CubeFace, Side, Sign};
use crate::nerves::{
    corner_degeneracy, corner_face, globular_degeneracy, globular_face, Nerve, NerveKind,
};
use crate::omegacat::{ElemId, OmegaCat, Shape, ShapeKind};

fn require_globular(nerve: &Nerve) -> Result<()> {
    if nerve.kind != NerveKind::Globular {
        return Err(Error::input("expected a globular nerve"));
    }
    Ok(())
}

/// Degree of a globular table (`2^{n+1} - 1` entries).
fn simplex_degree(table: &[ElemId]) -> Result<usize> {
    let len = table.len() + 1;
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::input(format!("{} values do not form a simplex table", table.len())));
    }
    Ok(len.trailing_zeros() as usize - 1)
}

/// Degree of a corner table (`3^{n+1}` entries).
fn cube_degree(table: &[ElemId]) -> Result<usize> {
    let mut len = 0;
    let mut size = 1usize;
    while size < table.len() {
        size *= 3;
        len += 1;
    }
    if size != table.len() || len == 0 {
        return Err(Error::input(format!("{} values do not form a cube table", table.len())));
    }
    Ok(len - 1)
}

fn check_simplex(nerve: &Nerve, table: &[ElemId]) -> Result<usize> {
    let n = simplex_degree(table)?;
    let shape = Shape::cached(ShapeKind::Simplex, n)?;
    if table.iter().any(|&v| v as usize >= nerve.values().len())
        || shape.evaluate(table, nerve.values()).is_none()
    {
        return Err(Error::input(format!("not a degree {n} globular simplex")));
    }
    Ok(n)
}

/// `h^η(x)`: the corner `(n+1)`-cube of a globular `n`-simplex, with values in `C`.
///
/// `h⁻` always yields an ω-functor. The mirrored rules for `h⁺` do not in
/// general (already on the square in degree 1), so its output is checked
/// and a failure is reported as an invariant violation.
pub fn h(nerve: &Nerve, eta: Sign, x: &[ElemId]) -> Result<Vec<ElemId>> {
    require_globular(nerve)?;
    if eta == Sign::Zero {
        return Err(Error::input("corner sign must be - or +"));
    }
    let n = check_simplex(nerve, x)?;
    let c = nerve.category();
    // (0) is the final vertex of Δⁿ and (n) the initial one
    let last = c.tgt(nerve.to_c(x[0]), 0);
    let first = c.src(nerve.to_c(x[(1usize << n) - 1]), 0);
    let (away, toward) = match eta {
        Sign::Plus => (first, last),
        _ => (last, first),
    };
    let other = if eta == Sign::Minus { Sign::Plus } else { Sign::Minus };
    let cube: Vec<ElemId> = CubeFace::all(n + 1)
        .map(|k| {
            let l = k.letters();
            if l.contains(&other) {
                away
            } else {
                let mask = l
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s == Sign::Zero)
                    .fold(0usize, |m, (i, _)| m | (1 << i));
                if mask == 0 {
                    toward
                } else {
                    nerve.to_c(x[mask - 1])
                }
            }
        })
        .collect();
    if eta == Sign::Plus
        && Shape::cached(ShapeKind::Cube, n + 1)?
            .evaluate(&cube, c)
            .is_none()
    {
        return Err(Error::invariant(format!(
            "h+ of a degree {n} simplex with top {} is not an ω-functor",
            c.label(nerve.to_c(x[x.len() - 1]))
        )));
    }
    Ok(cube)
}

/// `h⁻`.
pub fn h_minus(nerve: &Nerve, x: &[ElemId]) -> Result<Vec<ElemId>> {
    h(nerve, Sign::Minus, x)
}

/// `h⁺`.
pub fn h_plus(nerve: &Nerve, x: &[ElemId]) -> Result<Vec<ElemId>> {
    h(nerve, Sign::Plus, x)
}

/// Whether every `∂^{-η}_i` face of a corner cube is 0-dimensional, which
/// characterizes the image of `h^η`.
pub fn is_in_h_image(cat: &OmegaCat, eta: Sign, x: &[ElemId]) -> Result<bool> {
    let n = cube_degree(x)?;
    let other = if eta == Sign::Minus { Sign::Plus } else { Sign::Minus };
    Ok((0..=n).all(|i| {
        let top = CubeFace::interior(n + 1).with_letter(i, other).index();
        cat.dim(x[top]) == 0
    }))
}

/// Whether `y` (degree `top`) lies in the image of `ε_{top-1}…ε_from`,
/// using the given face and degeneracy operators.
fn in_degeneracy_image(
    y: &[ElemId],
    top: usize,
    from: usize,
    face: impl Fn(&[ElemId], usize, usize) -> Vec<ElemId>,
    degen: impl Fn(&[ElemId], usize, usize) -> Vec<ElemId>,
) -> bool {
    let mut w = y.to_vec();
    for j in (from..top).rev() {
        w = face(&w, j + 1, j);
    }
    for j in from..top {
        w = degen(&w, j, j);
    }
    w == y
}

/// `x = Φₙ⁻(x)` for a corner cube of degree `m` (an `n = m+1` cube): every
/// `∂_i⁺x` is 0-dimensional and `∂_i⁻x ∈ Im(Γ_{n-2}…Γ_i)` for `1 ≤ i ≤ n-2`.
pub fn is_folded_minus(cat: &OmegaCat, x: &[ElemId]) -> Result<bool> {
    let m = cube_degree(x)?;
    let n = m + 1;
    if !is_in_h_image(cat, Sign::Minus, x)? {
        return Ok(false);
    }
    for i in 1..=n.saturating_sub(2) {
        let f = corner_face(x, m, i - 1, Sign::Minus);
        let ok = in_degeneracy_image(
            &f,
            m - 1,
            i - 1,
            |t, d, j| corner_face(t, d, j, Sign::Minus),
            |t, d, j| corner_degeneracy(t, d, j, Sign::Minus),
        );
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x = Φ^gl(x)` for a globular simplex of degree `m`:
/// `∂_i x ∈ Im(ε_{m-2}…ε_i)` for `0 ≤ i ≤ m-2`.
pub fn is_folded_globular(x: &[ElemId]) -> Result<bool> {
    let m = simplex_degree(x)?;
    if m < 2 {
        return Ok(true);
    }
    for i in 0..=m - 2 {
        let f = globular_face(x, m, i);
        if !in_degeneracy_image(&f, m - 1, i, globular_face, globular_degeneracy) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a globular simplex of degree `n` is `ε_j` of some simplex.
pub fn is_degenerate_globular(x: &[ElemId]) -> Result<bool> {
    let n = simplex_degree(x)?;
    Ok((0..n).any(|j| globular_degeneracy(&globular_face(x, n, j), n - 1, j) == x))
}

/// Face assignment used when folding an `n`-morphism (`n ≥ 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPattern {
    /// Boundary side for the lower faces `∂_i`, `0 ≤ i ≤ n-3`.
    pub lower: Vec<Side>,
    /// Whether `∂_{n-2}` carries the folded source (otherwise the target).
    pub source_first: bool,
}

impl FoldPattern {
    fn all(n: usize) -> Vec<FoldPattern> {
        let k = n - 2;
        let mut out = Vec::new();
        for source_first in [false, true] {
            for bits in 0..(1usize << k) {
                out.push(FoldPattern {
                    lower: (0..k)
                        .map(|i| if bits & (1 << i) == 0 { Side::Source } else { Side::Target })
                        .collect(),
                    source_first,
                });
            }
        }
        out
    }
}

/// Face assignment found for `b(x,y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPattern {
    pub lower: Vec<Side>,
    /// `∂_{n-2} = □y`, `∂_n = □x` as displayed; otherwise `x` and `y` trade places.
    pub as_displayed: bool,
    /// Value of the top face in `C`.
    pub top: ElemId,
}

/// The globular folding operators `□ₙ^gl`, memoized.
pub struct Folding<'a> {
    nerve: &'a Nerve,
    cache: Mutex<HashMap<(ElemId, usize), Vec<ElemId>>>,
    patterns: Mutex<BTreeMap<usize, FoldPattern>>,
}

impl<'a> Folding<'a> {
    pub fn new(nerve: &'a Nerve) -> Result<Folding<'a>> {
        require_globular(nerve)?;
        Ok(Folding {
            nerve,
            cache: Mutex::new(HashMap::new()),
            patterns: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn nerve(&self) -> &Nerve {
        self.nerve
    }

    /// Patterns that succeeded so far, by morphism dimension.
    pub fn patterns(&self) -> BTreeMap<usize, FoldPattern> {
        self.patterns.lock().unwrap().clone()
    }

    /// `□ₙ(u)` for `n = dim u`: a globular simplex of degree `n - 1` with `ev = u`.
    pub fn fold(&self, u: ElemId) -> Result<Vec<ElemId>> {
        let c = self.nerve.category();
        if u as usize >= c.len() || c.dim(u) == 0 {
            return Err(Error::input("only positive-dimensional morphisms can be folded"));
        }
        self.fold_at(u, c.dim(u) - 1)
    }

    /// `□_{m+1}(u)`, a degree `m` simplex; lower-dimensional `u` go through `ε_{m-1}`.
    pub fn fold_at(&self, u: ElemId, m: usize) -> Result<Vec<ElemId>> {
        let c = self.nerve.category();
        let d = c.dim(u);
        if d == 0 || d > m + 1 {
            return Err(Error::input(format!(
                "cannot fold a {d}-morphism into degree {m}"
            )));
        }
        if let Some(t) = self.cache.lock().unwrap().get(&(u, m)) {
            return Ok(t.clone());
        }
        let table = if m == 0 {
            vec![self.value(u)?]
        } else if d < m + 1 {
            globular_degeneracy(&self.fold_at(u, m - 1)?, m - 1, m - 1)
        } else {
            self.fold_top(u, d)?
        };
        self.cache.lock().unwrap().insert((u, m), table.clone());
        Ok(table)
    }

    fn value(&self, u: ElemId) -> Result<ElemId> {
        self.nerve
            .from_c(u)
            .ok_or_else(|| Error::invariant("morphism missing from the path category"))
    }

    /// `ε_{top-1}…ε_from` applied to a degree `from` simplex.
    fn lift(mut t: Vec<ElemId>, from: usize, top: usize) -> Vec<ElemId> {
        for j in from..top {
            t = globular_degeneracy(&t, j, j);
        }
        t
    }

    fn lower_faces(&self, u: ElemId, lower: &[Side], top: usize) -> Result<Vec<Vec<ElemId>>> {
        let c = self.nerve.category();
        lower
            .iter()
            .enumerate()
            .map(|(i, side)| {
                let b = c.boundary(u, i + 1, *side == Side::Source);
                Ok(Self::lift(self.fold_at(b, i)?, i, top))
            })
            .collect()
    }

    fn fold_top(&self, u: ElemId, d: usize) -> Result<Vec<ElemId>> {
        let c = self.nerve.category();
        let known = self.patterns.lock().unwrap().get(&d).cloned();
        let mut tries = FoldPattern::all(d);
        if let Some(k) = &known {
            tries.retain(|p| p != k);
            tries.insert(0, k.clone());
        }
        let s = self.fold_at(c.src(u, d - 1), d - 2)?;
        let t = self.fold_at(c.tgt(u, d - 1), d - 2)?;
        for p in tries {
            let mut shell = self.lower_faces(u, &p.lower, d - 2)?;
            if p.source_first {
                shell.extend([s.clone(), t.clone()]);
            } else {
                shell.extend([t.clone(), s.clone()]);
            }
            if let Ok(x) = self.nerve.fill_shell_simplicial(d - 2, &shell, u) {
                self.patterns.lock().unwrap().insert(d, p);
                return Ok(x);
            }
        }
        Err(Error::Shell(format!(
            "no face assignment folds {}",
            c.label(u)
        )))
    }

    /// `Φ^gl(x) = □(ev x)` for a degree `m` simplex.
    pub fn phi(&self, x: &[ElemId]) -> Result<Vec<ElemId>> {
        let m = check_simplex(self.nerve, x)?;
        let top = x[x.len() - 1];
        self.fold_at(self.nerve.to_c(top), m)
    }

    /// The simplex `b(x,y)` of degree `n` for `n`-morphisms with
    /// `t_{n-1}x = s_{n-1}y`, whose boundary is `±(□(x*y) - □x - □y)` up
    /// to degenerate terms.
    pub fn witness(&self, x: ElemId, y: ElemId) -> Result<(Vec<ElemId>, WitnessPattern)> {
        let c = self.nerve.category();
        let n = c.dim(x);
        if n < 2 || c.dim(y) != n {
            return Err(Error::input("b(x,y) needs two morphisms of the same dimension n >= 2"));
        }
        let xy = c.compose(x, n - 1, y)?;
        let (fx, fy, fxy) = (self.fold(x)?, self.fold(y)?, self.fold(xy)?);
        let mut tops = vec![xy];
        tops.extend(c.of_dim(n + 1).iter().copied().filter(|&z| {
            c.src(z, 0) == c.src(xy, 0) && c.tgt(z, 0) == c.tgt(xy, 0)
        }));
        for as_displayed in [true, false] {
            for p in FoldPattern::all(n).into_iter().filter(|p| p.source_first) {
                let mut shell = self.lower_faces(x, &p.lower, n - 1)?;
                if as_displayed {
                    shell.extend([fy.clone(), fxy.clone(), fx.clone()]);
                } else {
                    shell.extend([fx.clone(), fxy.clone(), fy.clone()]);
                }
                for &top in &tops {
                    if let Ok(b) = self.nerve.fill_shell_simplicial(n - 1, &shell, top) {
                        return Ok((
                            b,
                            WitnessPattern {
                                lower: p.lower.clone(),
                                as_displayed,
                                top,
                            },
                        ));
                    }
                }
            }
        }
        Err(Error::Shell(format!(
            "no filler for b({}, {})",
            c.label(x),
            c.label(y)
        )))
    }
}

/// A globular simplex or the constant map on a 0-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlobularValue {
    Simplex(Vec<ElemId>),
    Constant(ElemId),
}

impl GlobularValue {
    fn ends(&self, nerve: &Nerve) -> (ElemId, ElemId) {
        match self {
            GlobularValue::Constant(a) => (*a, *a),
            GlobularValue::Simplex(t) => {
                let v = nerve.to_c(t[0]);
                let c = nerve.category();
                (c.src(v, 0), c.tgt(v, 0))
            }
        }
    }
}

/// `x * y`, computed value by value with `*₀` in `C`.
pub fn star(nerve: &Nerve, x: &GlobularValue, y: &GlobularValue) -> Result<GlobularValue> {
    require_globular(nerve)?;
    let (sx, tx) = x.ends(nerve);
    let (sy, _) = y.ends(nerve);
    if tx != sy {
        return Err(Error::input("the target of x is not the source of y"));
    }
    let (a, b) = match (x, y) {
        (_, GlobularValue::Constant(_)) => return Ok(x.clone()),
        (GlobularValue::Constant(_), _) => return Ok(y.clone()),
        (GlobularValue::Simplex(a), GlobularValue::Simplex(b)) => (a, b),
    };
    if a.len() != b.len() {
        return Err(Error::input("x and y have different degrees"));
    }
    let c = nerve.category();
    let mut vals = Vec::with_capacity(a.len());
    for (&p, &q) in a.iter().zip(b) {
        vals.push(c.compose(nerve.to_c(p), 0, nerve.to_c(q))?);
    }
    if vals.iter().any(|&v| c.dim(v) == 0) {
        if vals.iter().any(|&v| c.dim(v) != 0) {
            return Err(Error::invariant("star collapses only partly"));
        }
        return Ok(GlobularValue::Constant(sx));
    }
    let table = vals
        .into_iter()
        .map(|v| nerve.from_c(v).ok_or_else(|| Error::invariant("composite is not a path")))
        .collect::<Result<Vec<_>>>()?;
    check_simplex(nerve, &table).map_err(|_| Error::invariant("star is not an ω-functor"))?;
    Ok(GlobularValue::Simplex(table))
}

#[cfg(test)]
mod tests;

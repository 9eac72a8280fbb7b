//! Path categories, bilocalization, loop spaces and isomorphism search.

use std::collections::HashMap;

use super::{Elem, ElemId, OmegaCat};
use crate::error::{Error, Result};

fn root_origin(cat: &OmegaCat, x: ElemId) -> ElemId {
    cat.origin(x).unwrap_or(x)
}

/// Sub-structure of `cat` on `keep` (in order), with levels shifted down by `shift`.
fn restrict(cat: &OmegaCat, keep: &[ElemId], shift: usize, name: String) -> OmegaCat {
    let mut new_id: HashMap<ElemId, ElemId> = HashMap::with_capacity(keep.len());
    for (i, &x) in keep.iter().enumerate() {
        new_id.insert(x, i as ElemId);
    }
    let elems = keep
        .iter()
        .map(|&x| {
            let e = cat.elem(x);
            Elem {
                dim: e.dim - shift as u8,
                src: e.src[shift..].iter().map(|s| new_id[s]).collect(),
                tgt: e.tgt[shift..].iter().map(|t| new_id[t]).collect(),
            }
        })
        .collect::<Vec<_>>();
    let mut comp = HashMap::new();
    for ((x, p, y), r) in cat.compositions() {
        if p < shift {
            continue;
        }
        if let (Some(&a), Some(&b), Some(&c)) = (new_id.get(&x), new_id.get(&y), new_id.get(&r)) {
            comp.insert((a, (p - shift) as u8, b), c);
        }
    }
    let results: std::collections::HashSet<ElemId> = comp.values().copied().collect();
    let names = (0..keep.len() as ElemId)
        .filter(|i| !results.contains(i))
        .map(|i| (i, cat.label(keep[i as usize])))
        .collect();
    let origin = keep.iter().map(|&x| root_origin(cat, x)).collect();
    OmegaCat::from_parts(name, elems, comp, names, None, Some(origin))
}

/// `𝒫C`: the k-morphisms are the (k+1)-morphisms of `C`, `∗_i` is `∗_{i+1}`.
pub fn path_category(cat: &OmegaCat) -> Result<OmegaCat> {
    if let Some(w) = cat.contraction_witness() {
        return Err(Error::Contracting(format!(
            "s1/t1 of {} is not 1-dimensional",
            cat.label(w)
        )));
    }
    let keep: Vec<ElemId> = cat.ids().filter(|&x| cat.dim(x) >= 1).collect();
    Ok(restrict(cat, &keep, 1, format!("P({})", cat.name())))
}

/// `C[α,β]`: keeps the 0-cells α, β and every positive-dimensional `x` with
/// `s₀x = α` and `t₀x = β`.
pub fn bilocalize(cat: &OmegaCat, alpha: ElemId, beta: ElemId) -> Result<OmegaCat> {
    for v in [alpha, beta] {
        if (v as usize) >= cat.len() || cat.dim(v) != 0 {
            return Err(Error::input(format!("#{v} is not a 0-cell")));
        }
    }
    let keep: Vec<ElemId> = cat
        .ids()
        .filter(|&x| {
            if cat.dim(x) == 0 {
                x == alpha || x == beta
            } else {
                cat.src(x, 0) == alpha && cat.tgt(x, 0) == beta
            }
        })
        .collect();
    let name = format!(
        "{}[{},{}]",
        cat.name(),
        cat.label(alpha),
        cat.label(beta)
    );
    Ok(restrict(cat, &keep, 0, name))
}

/// `ΩC = 𝒫(C[α,β])` for the unique initial state α and final state β.
pub fn loop_space(cat: &OmegaCat) -> Result<OmegaCat> {
    let init = cat.initial_states();
    let fin = cat.final_states();
    if init.len() != 1 || fin.len() != 1 {
        return Err(Error::Ambiguous(format!(
            "{} initial and {} final states",
            init.len(),
            fin.len()
        )));
    }
    let mut out = path_category(&bilocalize(cat, init[0], fin[0])?)?;
    out.set_name(format!("Omega({})", cat.name()));
    Ok(out)
}

/// Searches for an isomorphism `a → b`; returns the element mapping.
pub fn iso_check(a: &OmegaCat, b: &OmegaCat) -> Option<Vec<ElemId>> {
    if a.counts() != b.counts() || a.composition_count() != b.composition_count() {
        return None;
    }
    let profile = |c: &OmegaCat| {
        let mut v: Vec<usize> = c.indecomposables().iter().map(|&x| c.dim(x)).collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return None;
    }
    let mut order: Vec<ElemId> = a.ids().collect();
    order.sort_by_key(|&x| (a.dim(x), x));
    let mut pos = vec![0usize; a.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x as usize] = i;
    }
    // composition entries checked once their last element is assigned
    let mut checks: Vec<Vec<(ElemId, usize, ElemId, ElemId)>> = vec![Vec::new(); a.len()];
    for ((x, p, y), r) in a.compositions() {
        let last = pos[x as usize].max(pos[y as usize]).max(pos[r as usize]);
        checks[last].push((x, p, y, r));
    }
    let mut s = IsoSearch {
        a,
        b,
        order,
        checks,
        f: vec![None; a.len()],
        used: vec![false; b.len()],
    };
    if s.search(0) {
        Some(s.f.into_iter().map(|x| x.expect("complete")).collect())
    } else {
        None
    }
}

struct IsoSearch<'a> {
    a: &'a OmegaCat,
    b: &'a OmegaCat,
    order: Vec<ElemId>,
    checks: Vec<Vec<(ElemId, usize, ElemId, ElemId)>>,
    f: Vec<Option<ElemId>>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn img(&self, x: ElemId) -> ElemId {
        self.f[x as usize].expect("assigned earlier")
    }

    fn candidates(&self, x: ElemId) -> Vec<ElemId> {
        let (a, b) = (self.a, self.b);
        let d = a.dim(x);
        let boundary_ok = |y: ElemId| {
            b.dim(y) == d
                && (0..d).all(|p| {
                    b.src(y, p) == self.img(a.src(x, p)) && b.tgt(y, p) == self.img(a.tgt(x, p))
                })
        };
        match a.decomposition(x) {
            Some((l, p, r)) => b
                .try_compose(self.img(l), p, self.img(r))
                .filter(|&y| !b.is_indecomposable(y) && boundary_ok(y))
                .into_iter()
                .collect(),
            None => {
                let pool: Vec<ElemId> = if d == 0 {
                    b.of_dim(0).to_vec()
                } else {
                    b.between(d - 1, self.img(a.src(x, d - 1)), self.img(a.tgt(x, d - 1)))
                        .to_vec()
                };
                pool.into_iter()
                    .filter(|&y| b.is_indecomposable(y) && boundary_ok(y))
                    .collect()
            }
        }
    }

    fn search(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        for y in self.candidates(x) {
            if self.used[y as usize] {
                continue;
            }
            self.f[x as usize] = Some(y);
            self.used[y as usize] = true;
            let ok = self.checks[i].iter().all(|&(l, p, r, res)| {
                self.b.try_compose(self.img(l), p, self.img(r)) == Some(self.img(res))
            });
            if ok && self.search(i + 1) {
                return true;
            }
            self.used[y as usize] = false;
            self.f[x as usize] = None;
        }
        false
    }
}

//! Directed chain bases: cells with source and target boundary chains.

use std::collections::BTreeMap;

use super::{Chain, Table};
use crate::error::{Error, Result};
use crate::facecomb::{CubeFace, Face, Side, SimplexFace};

/// A graded set of cells, each with `∂⁻` and `∂⁺` chains of cells one
/// dimension lower.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    pub names: Vec<String>,
    pub dims: Vec<usize>,
    pub minus: Vec<Chain>,
    pub plus: Vec<Chain>,
}

fn chain_of(cells: impl IntoIterator<Item = u32>) -> Chain {
    let mut v: Vec<u32> = cells.into_iter().collect();
    v.sort_unstable();
    let mut out: Chain = Vec::new();
    for c in v {
        match out.last_mut() {
            Some((last, m)) if *last == c => *m += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

impl Basis {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn push(&mut self, name: String, dim: usize, minus: Chain, plus: Chain) -> u32 {
        self.names.push(name);
        self.dims.push(dim);
        self.minus.push(minus);
        self.plus.push(plus);
        (self.names.len() - 1) as u32
    }

    /// Cells of the n-cube, indexed by [`CubeFace::index`].
    pub fn cube(n: usize) -> Basis {
        let mut b = Basis::default();
        for f in CubeFace::all(n) {
            let (minus, plus) = if f.dim() == 0 {
                (Vec::new(), Vec::new())
            } else {
                let gens = |side| {
                    chain_of(
                        f.boundary_generators(side)
                            .expect("positive dimension")
                            .iter()
                            .map(|g| g.index() as u32),
                    )
                };
                (gens(Side::Source), gens(Side::Target))
            };
            b.push(f.to_string(), f.dim(), minus, plus);
        }
        b
    }

    /// Cells of the n-simplex, indexed by vertex bitmask minus one.
    pub fn simplex(n: usize) -> Basis {
        let mut b = Basis::default();
        for f in SimplexFace::all(n) {
            let (minus, plus) = if f.dim() == 0 {
                (Vec::new(), Vec::new())
            } else {
                let gens = |side| {
                    chain_of(
                        f.boundary_generators(side)
                            .expect("positive dimension")
                            .iter()
                            .map(|g| (g.mask() - 1) as u32),
                    )
                };
                (gens(Side::Source), gens(Side::Target))
            };
            b.push(f.to_string(), f.dim(), minus, plus);
        }
        b
    }

    /// The globe `2ₙ`: cells `s_p`, `t_p` for `p < n` (ids `2p`, `2p+1`) and
    /// the top cell `A` (id `2n`).
    pub fn globe(n: usize) -> Basis {
        let mut b = Basis::default();
        let bd = |p: usize| -> (Chain, Chain) {
            if p == 0 {
                (Vec::new(), Vec::new())
            } else {
                (vec![(2 * (p as u32 - 1), 1)], vec![(2 * (p as u32 - 1) + 1, 1)])
            }
        };
        for p in 0..n {
            let (m, pl) = bd(p);
            b.push(format!("s{p}"), p, m.clone(), pl.clone());
            b.push(format!("t{p}"), p, m, pl);
        }
        let (m, pl) = bd(n);
        b.push("A".to_string(), n, m, pl);
        b
    }

    /// Steiner atom of a cell: `⟨a⟩_q⁻ = (∂⟨a⟩_{q+1}⁻)₋`, `⟨a⟩_q⁺ = (∂⟨a⟩_{q+1}⁺)₊`.
    pub fn atom(&self, a: u32) -> Table {
        let n = self.dims[a as usize];
        let mut levels = vec![(Vec::new(), Vec::new()); n + 1];
        levels[n] = (vec![(a, 1)], vec![(a, 1)]);
        for q in (0..n).rev() {
            let neg = self.signed_boundary(&levels[q + 1].0, false);
            let pos = self.signed_boundary(&levels[q + 1].1, true);
            levels[q] = (neg, pos);
        }
        Table { levels }
    }

    /// `∂c = ∂⁺c − ∂⁻c` as a signed chain.
    fn differential(&self, c: &Chain) -> BTreeMap<u32, i64> {
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for &(cell, m) in c {
            for &(f, k) in &self.plus[cell as usize] {
                *acc.entry(f).or_default() += (m * k) as i64;
            }
            for &(f, k) in &self.minus[cell as usize] {
                *acc.entry(f).or_default() -= (m * k) as i64;
            }
        }
        acc.retain(|_, v| *v != 0);
        acc
    }

    /// Positive (`want_plus`) or negative part of `∂c`.
    fn signed_boundary(&self, c: &Chain, want_plus: bool) -> Chain {
        self.differential(c)
            .into_iter()
            .filter_map(|(f, v)| match (want_plus, v) {
                (true, v) if v > 0 => Some((f, v as u32)),
                (false, v) if v < 0 => Some((f, (-v) as u32)),
                _ => None,
            })
            .collect()
    }

    /// `∂∂ = 0` on every cell.
    pub fn check_differential(&self) -> Result<()> {
        for a in 0..self.len() {
            if self.differential(&self.plus[a]) != self.differential(&self.minus[a]) {
                return Err(Error::input(format!(
                    "cell {} does not have a globular boundary",
                    self.names[a]
                )));
            }
        }
        Ok(())
    }
}

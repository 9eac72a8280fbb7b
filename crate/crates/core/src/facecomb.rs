//! Faces of the n-cube and the n-simplex.
//!
//! A cube face is a word over `{-,0,+}`; its dimension is the number of `0`
//! letters. A simplex face is a strictly increasing, nonempty list of
//! vertices. Both carry the subface closure `R` and the source/target
//! half-boundaries that generate the free ω-categories `Iⁿ` and `Δⁿ`.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A letter of a cube word. The derived order is `- < 0 < +`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }

    /// Base-3 digit used for face indexing.
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(d: usize) -> Sign {
        match d {
            0 => Sign::Minus,
            1 => Sign::Zero,
            _ => Sign::Plus,
        }
    }
}

/// Which half of a boundary: the `s` side or the `t` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }

    /// `-` for the source side, `+` for the target side.
    pub fn sign(self) -> Sign {
        match self {
            Side::Source => Sign::Minus,
            Side::Target => Sign::Plus,
        }
    }

    pub fn both() -> [Side; 2] {
        [Side::Source, Side::Target]
    }
}

/// Shared behaviour of cube and simplex faces.
pub trait Face: Clone + Ord + Hash + fmt::Debug + fmt::Display {
    fn dim(&self) -> usize;

    /// All faces of `self`, including `self`.
    fn subfaces(&self) -> FaceSet<Self>;

    /// The codimension-one faces whose closure is the half-boundary.
    fn boundary_generators(&self, side: Side) -> Result<Vec<Self>>;

    /// `s_x` or `t_x`: the R-closure of the boundary generators.
    fn half_boundary(&self, side: Side) -> Result<FaceSet<Self>> {
        let gens = self.boundary_generators(side)?;
        Ok(FaceSet::closure(gens.iter()))
    }
}

/// A face of the n-cube.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace(Vec<Sign>);

impl CubeFace {
    pub fn new(word: Vec<Sign>) -> Self {
        CubeFace(word)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let word = s
            .trim()
            .chars()
            .map(|c| {
                Sign::from_symbol(c)
                    .ok_or_else(|| Error::input(format!("bad cube letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CubeFace(word))
    }

    pub fn interior(n: usize) -> Self {
        CubeFace(vec![Sign::Zero; n])
    }

    pub fn corner(n: usize, sign: Sign) -> Self {
        CubeFace(vec![sign; n])
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Sign] {
        &self.0
    }

    /// Base-3 index with `- = 0`, `0 = 1`, `+ = 2`, first letter most significant.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, s| acc * 3 + s.digit())
    }

    pub fn from_index(n: usize, mut idx: usize) -> Self {
        let mut word = vec![Sign::Minus; n];
        for slot in word.iter_mut().rev() {
            *slot = Sign::from_digit(idx % 3);
            idx /= 3;
        }
        CubeFace(word)
    }

    /// Positions (0-based) of the `0` letters.
    pub fn zero_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Zero)
            .map(|(i, _)| i)
            .collect()
    }

    /// Inserts `sign` so that it becomes the letter at 0-based position `pos`.
    pub fn insert(&self, pos: usize, sign: Sign) -> CubeFace {
        let mut word = self.0.clone();
        word.insert(pos, sign);
        CubeFace(word)
    }

    pub fn with_letter(&self, pos: usize, sign: Sign) -> CubeFace {
        let mut word = self.0.clone();
        word[pos] = sign;
        CubeFace(word)
    }

    /// Every face of the n-cube, by increasing index.
    pub fn all(n: usize) -> impl Iterator<Item = CubeFace> {
        (0..3usize.pow(n as u32)).map(move |i| CubeFace::from_index(n, i))
    }
}

impl Face for CubeFace {
    fn dim(&self) -> usize {
        self.0.iter().filter(|s| **s == Sign::Zero).count()
    }

    fn subfaces(&self) -> FaceSet<Self> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &letter in &self.0 {
            let choices: &[Sign] = if letter == Sign::Zero {
                &[Sign::Minus, Sign::Zero, Sign::Plus]
            } else {
                std::slice::from_ref(match letter {
                    Sign::Minus => &Sign::Minus,
                    _ => &Sign::Plus,
                })
            };
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Sign>| {
                    choices.iter().map(move |&c| {
                        let mut w = prefix.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        FaceSet(out.into_iter().map(CubeFace).collect())
    }

    /// The i-th zero (counted from 1) becomes `(-)^i` on the source side and
    /// `(-)^(i+1)` on the target side.
    fn boundary_generators(&self, side: Side) -> Result<Vec<Self>> {
        let zeros = self.zero_positions();
        if zeros.is_empty() {
            return Err(Error::UndefinedBoundary(self.to_string()));
        }
        Ok(zeros
            .iter()
            .enumerate()
            .map(|(k, &pos)| {
                let i = k + 1;
                let odd = i % 2 == 1;
                let letter = match (side, odd) {
                    (Side::Source, true) | (Side::Target, false) => Sign::Minus,
                    _ => Sign::Plus,
                };
                self.with_letter(pos, letter)
            })
            .collect())
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeFace({self})")
    }
}

/// A face of the n-simplex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexFace(Vec<u32>);

impl SimplexFace {
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("empty simplex face"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!(
                "simplex face {vertices:?} is not strictly increasing"
            )));
        }
        Ok(SimplexFace(vertices))
    }

    /// Accepts `(0 4 5 8 9)`, `(0,4,5)` and the compact digit form `(04589)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::input(format!("simplex face {s:?} must be parenthesized")))?;
        let separated = inner.contains([' ', ',']);
        let vertices = if separated {
            inner
                .split([' ', ','])
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| Error::input(format!("bad vertex {p:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            inner
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::input(format!("bad vertex {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        SimplexFace::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn top(n: usize) -> Self {
        SimplexFace((0..=n as u32).collect())
    }

    pub fn vertex(v: u32) -> Self {
        SimplexFace(vec![v])
    }

    /// Bitmask of the vertex set.
    pub fn mask(&self) -> usize {
        self.0.iter().fold(0, |m, &v| m | (1 << v))
    }

    pub fn from_mask(mask: usize) -> Self {
        SimplexFace((0..usize::BITS).filter(|v| mask & (1 << v) != 0).collect())
    }

    /// Removes the vertex at 0-based position `pos`.
    pub fn delete(&self, pos: usize) -> SimplexFace {
        let mut v = self.0.clone();
        v.remove(pos);
        SimplexFace(v)
    }

    /// Every face of the n-simplex, by increasing bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = SimplexFace> {
        (1..(1usize << (n + 1))).map(SimplexFace::from_mask)
    }
}

impl Face for SimplexFace {
    fn dim(&self) -> usize {
        self.0.len() - 1
    }

    fn subfaces(&self) -> FaceSet<Self> {
        let k = self.0.len();
        let set = (1..(1usize << k))
            .map(|sel| {
                SimplexFace(
                    (0..k)
                        .filter(|i| sel & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        FaceSet(set)
    }

    /// Source deletes the vertices at 0-based positions 0, 2, 4, …; target
    /// deletes those at positions 1, 3, ….
    fn boundary_generators(&self, side: Side) -> Result<Vec<Self>> {
        if self.dim() == 0 {
            return Err(Error::UndefinedBoundary(self.to_string()));
        }
        let parity = match side {
            Side::Source => 0,
            Side::Target => 1,
        };
        Ok((0..self.0.len())
            .filter(|p| p % 2 == parity)
            .map(|p| self.delete(p))
            .collect())
    }
}

impl fmt::Display for SimplexFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SimplexFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplexFace{self}")
    }
}

/// A finite set of faces in canonical (sorted) order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceSet<F: Face>(BTreeSet<F>);

impl<F: Face> FaceSet<F> {
    pub fn empty() -> Self {
        FaceSet(BTreeSet::new())
    }

    pub fn from_faces(faces: impl IntoIterator<Item = F>) -> Self {
        FaceSet(faces.into_iter().collect())
    }

    /// `R(X)`: the union of the subface sets of the given faces.
    pub fn closure<'a>(faces: impl IntoIterator<Item = &'a F>) -> Self
    where
        F: 'a,
    {
        let mut out = BTreeSet::new();
        for f in faces {
            out.extend(f.subfaces().0);
        }
        FaceSet(out)
    }

    pub fn close(&self) -> Self {
        FaceSet::closure(self.0.iter())
    }

    pub fn is_closed(&self) -> bool {
        self.close() == *self
    }

    pub fn union(&self, other: &Self) -> Self {
        FaceSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains(&self, f: &F) -> bool {
        self.0.contains(f)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &F> {
        self.0.iter()
    }

    /// Largest face dimension, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.0.iter().map(Face::dim).max()
    }

    /// Faces not contained in any other face of the set.
    pub fn maximal(&self) -> Vec<F> {
        self.0
            .iter()
            .filter(|f| {
                !self
                    .0
                    .iter()
                    .any(|g| g != *f && g.dim() > f.dim() && g.subfaces().contains(f))
            })
            .cloned()
            .collect()
    }
}

impl<F: Face> fmt::Display for FaceSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl<F: Face> fmt::Debug for FaceSet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubes(words: &[&str]) -> FaceSet<CubeFace> {
        FaceSet::closure(
            words
                .iter()
                .map(|w| CubeFace::parse(w).unwrap())
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    fn simplexes(faces: &[&str]) -> FaceSet<SimplexFace> {
        FaceSet::closure(
            faces
                .iter()
                .map(|w| SimplexFace::parse(w).unwrap())
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    #[test]
    fn cube_subfaces() {
        let r = CubeFace::parse("00").unwrap().subfaces();
        assert_eq!(r.len(), 9);
        assert_eq!(r, FaceSet::from_faces(CubeFace::all(2)));
        let point = CubeFace::parse("+-").unwrap();
        assert_eq!(point.subfaces(), FaceSet::from_faces([point.clone()]));
    }

    #[test]
    fn simplex_subfaces() {
        let r = SimplexFace::parse("(012)").unwrap().subfaces();
        let expected = ["(0)", "(1)", "(2)", "(01)", "(02)", "(12)", "(012)"]
            .iter()
            .map(|s| SimplexFace::parse(s).unwrap());
        assert_eq!(r, FaceSet::from_faces(expected));
    }

    #[test]
    fn cube_half_boundaries_match_worked_example() {
        let x = CubeFace::parse("0+00").unwrap();
        assert_eq!(
            x.half_boundary(Side::Source).unwrap(),
            cubes(&["-+00", "0++0", "0+0-"])
        );
        assert_eq!(
            x.half_boundary(Side::Target).unwrap(),
            cubes(&["++00", "0+-0", "0+0+"])
        );
    }

    #[test]
    fn simplex_half_boundaries_match_worked_example() {
        let x = SimplexFace::parse("(04589)").unwrap();
        assert_eq!(
            x.half_boundary(Side::Source).unwrap(),
            simplexes(&["(4589)", "(0489)", "(0458)"])
        );
        assert_eq!(
            x.half_boundary(Side::Target).unwrap(),
            simplexes(&["(0589)", "(0459)"])
        );
    }

    #[test]
    fn zero_dimensional_faces_have_no_boundary() {
        assert!(matches!(
            CubeFace::parse("+-").unwrap().half_boundary(Side::Source),
            Err(Error::UndefinedBoundary(_))
        ));
        assert!(matches!(
            SimplexFace::parse("(3)").unwrap().half_boundary(Side::Target),
            Err(Error::UndefinedBoundary(_))
        ));
    }

    #[test]
    fn malformed_faces_are_rejected() {
        assert!(CubeFace::parse("0x+").is_err());
        assert!(SimplexFace::parse("(021)").is_err());
        assert!(SimplexFace::parse("()").is_err());
        assert!(SimplexFace::parse("012").is_err());
    }

    #[test]
    fn serialized_forms() {
        assert_eq!(SimplexFace::parse("(0 4 5 8 9)").unwrap().to_string(), "(0 4 5 8 9)");
        assert_eq!(
            SimplexFace::parse("(0,10,12)").unwrap().vertices(),
            &[0, 10, 12]
        );
        assert_eq!(CubeFace::parse("-0+").unwrap().to_string(), "-0+");
    }

    #[test]
    fn indices_roundtrip() {
        for f in CubeFace::all(3) {
            assert_eq!(CubeFace::from_index(3, f.index()), f);
        }
        for f in SimplexFace::all(4) {
            assert_eq!(SimplexFace::from_mask(f.mask()), f);
        }
    }

    /// s(s x) = s(t x) and t(s x) = t(t x) as R-closed sets, where the outer
    /// boundary of a set is taken on its top-dimensional generators.
    fn globular_check<F: Face>(f: &F) {
        let lower = |set: &FaceSet<F>, side: Side| -> FaceSet<F> {
            let d = set.dim().unwrap();
            let tops: Vec<F> = set.iter().filter(|g| g.dim() == d).cloned().collect();
            // The boundary of a composite: faces of the top cells on `side` that
            // are not on the opposite side of another top cell, plus the lower cells.
            let mut keep = BTreeSet::new();
            let opposite: BTreeSet<F> = tops
                .iter()
                .flat_map(|g| g.boundary_generators(side.opposite()).unwrap())
                .collect();
            for g in &tops {
                for h in g.boundary_generators(side).unwrap() {
                    if !opposite.contains(&h) {
                        keep.insert(h);
                    }
                }
            }
            for g in set.maximal() {
                if g.dim() < d - 1 {
                    keep.insert(g);
                }
            }
            FaceSet::closure(keep.iter())
        };
        let s = f.half_boundary(Side::Source).unwrap();
        let t = f.half_boundary(Side::Target).unwrap();
        assert_eq!(lower(&s, Side::Source), lower(&t, Side::Source), "{f}");
        assert_eq!(lower(&s, Side::Target), lower(&t, Side::Target), "{f}");
    }

    #[test]
    fn half_boundaries_are_globular() {
        for n in 2..=4 {
            for f in CubeFace::all(n).filter(|f| f.dim() >= 2) {
                globular_check(&f);
            }
        }
        for n in 2..=5 {
            for f in SimplexFace::all(n).filter(|f| f.dim() >= 2) {
                globular_check(&f);
            }
        }
    }

    #[test]
    fn half_boundaries_are_proper_closed_subsets() {
        for f in CubeFace::all(3).filter(|f| f.dim() >= 1) {
            let r = f.subfaces();
            for side in Side::both() {
                let b = f.half_boundary(side).unwrap();
                assert!(b.is_closed());
                assert!(b.is_subset(&r) && !b.contains(&f));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cube_word() -> impl Strategy<Value = CubeFace> {
            proptest::collection::vec(0usize..3, 0..6)
                .prop_map(|d| CubeFace::new(d.into_iter().map(Sign::from_digit).collect()))
        }

        proptest! {
            #[test]
            fn closure_is_idempotent(f in cube_word()) {
                let r = f.subfaces();
                prop_assert_eq!(r.close(), r.clone());
                prop_assert_eq!(r.len(), 3usize.pow(f.dim() as u32));
            }

            #[test]
            fn closure_distributes_over_union(a in cube_word(), b in cube_word()) {
                let (ra, rb) = (a.subfaces(), b.subfaces());
                let joined = FaceSet::closure([a.clone(), b.clone()].iter());
                prop_assert_eq!(joined, ra.union(&rb));
            }

            #[test]
            fn simplex_subface_count(mask in 1usize..(1 << 7)) {
                let f = SimplexFace::from_mask(mask);
                prop_assert_eq!(f.subfaces().len(), (1usize << (f.dim() + 1)) - 1);
            }
        }
    }
}

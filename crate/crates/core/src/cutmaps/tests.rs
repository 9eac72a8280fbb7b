use super::*;
use crate::omegacat::{build, load, BuildOptions, Scheme};

fn cat(s: Scheme) -> OmegaCat {
    build(&s, BuildOptions::default()).unwrap()
}

fn present(gens: &str) -> OmegaCat {
    let doc = format!("{{\"kind\": \"presentation\", \"generators\": [{gens}]}}");
    load(&doc, BuildOptions::default()).unwrap()
}

fn samples() -> Vec<OmegaCat> {
    vec![cat(Scheme::Cube(2)), cat(Scheme::Globe(3)), cat(Scheme::Simplex(3))]
}

#[test]
fn h_of_a_point() {
    let c = cat(Scheme::Globe(1));
    let nv = Nerve::globular(&c, 1).unwrap();
    let u = c.of_dim(1)[0];
    let x = nv.table(0, 0).to_vec();
    assert_eq!(h_minus(&nv, &x).unwrap(), vec![c.src(u, 0), u, c.tgt(u, 0)]);
    assert_eq!(h_plus(&nv, &x).unwrap(), vec![c.src(u, 0), u, c.tgt(u, 0)]);
}

/// The mirrored rules for `h⁺` break functoriality on the square: the source
/// of the 2-cell would be sent to the target path.
#[test]
fn h_plus_fails_on_the_square() {
    let c = cat(Scheme::Cube(2));
    let nv = Nerve::globular(&c, 1).unwrap();
    let sq = c.of_dim(2)[0];
    let x = (0..nv.count(1)).find(|&x| nv.ev(1, x) == sq).unwrap();
    assert!(matches!(h_plus(&nv, nv.table(1, x)), Err(Error::Invariant(_))));
    assert!(h_minus(&nv, nv.table(1, x)).is_ok());
    for x in 0..nv.count(0) {
        let hx = h_plus(&nv, nv.table(0, x)).unwrap();
        let co = Nerve::corner(&c, Sign::Plus, 0).unwrap();
        assert!(co.find(0, &hx).is_some());
    }
}

/// In `2₃`, degree 2, no relabeling of the zero positions turns the
/// mirrored rules into ω-functors for every simplex.
#[test]
fn merging_nerve_admits_no_relabeling() {
    let c = cat(Scheme::Globe(3));
    let gl = Nerve::globular(&c, 2).unwrap();
    let shape = Shape::cached(ShapeKind::Cube, 3).unwrap();
    let (first, last) = (c.of_dim(0)[0], c.of_dim(0)[1]);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        let all_valid = (0..gl.count(2)).all(|x| {
            let t = gl.table(2, x);
            let cube: Vec<ElemId> = CubeFace::all(3)
                .map(|k| {
                    let l = k.letters();
                    if l.contains(&Sign::Minus) {
                        first
                    } else if !l.contains(&Sign::Zero) {
                        last
                    } else {
                        let mask = (0..3).filter(|&i| l[i] == Sign::Zero).fold(0, |m, i| m | (1 << p[i]));
                        gl.to_c(t[mask - 1])
                    }
                })
                .collect();
            shape.evaluate(&cube, &c).is_some()
        });
        assert!(!all_valid, "{p:?}");
    }
}

/// `h⁻` commutes with faces and degeneracies, is injective, and its image
/// is exactly the corner simplexes whose opposite faces are 0-dimensional.
#[test]
fn h_minus_is_natural_injective_with_known_image() {
    let d = 2;
    for c in samples() {
        let gl = Nerve::globular(&c, d).unwrap();
        for eta in [Sign::Minus] {
            let co = Nerve::corner(&c, eta, d).unwrap();
            for n in 0..=d {
                let mut images = std::collections::HashSet::new();
                for x in 0..gl.count(n as i64) {
                    let t = gl.table(n, x).to_vec();
                    let hx = h(&gl, eta, &t).unwrap();
                    let y = co.find(n, &hx).expect("h lands in the corner nerve");
                    assert!(images.insert(y), "h is not injective");
                    if n > 0 {
                        for i in 0..=n {
                            let lhs = h(&gl, eta, &gl.face_table(n, &t, i)).unwrap();
                            assert_eq!(lhs, co.face_table(n, &hx, i));
                        }
                    } else {
                        let (a, b) = gl.augmentation()[gl.face(0, x, 0)];
                        let e = co.augmentation()[co.face(0, y, 0)].0;
                        assert_eq!(e, if eta == Sign::Minus { a } else { b });
                    }
                    if n < d {
                        for i in 0..=n {
                            let lhs = h(&gl, eta, &gl.degeneracy_table(n, &t, i)).unwrap();
                            assert_eq!(lhs, co.degeneracy_table(n, &hx, i));
                        }
                    }
                }
                for y in 0..co.count(n as i64) {
                    let inside = is_in_h_image(&c, eta, co.table(n, y)).unwrap();
                    assert_eq!(inside, images.contains(&y), "{} degree {n}", c.name());
                }
            }
        }
    }
}

/// `□(u)` is the unique folded simplex with `ev = u`.
#[test]
fn fold_matches_characterization() {
    for c in [cat(Scheme::Cube(2)), cat(Scheme::Globe(3)), cat(Scheme::Cube(3)), cat(Scheme::Simplex(3))] {
        let top = c.max_dim();
        let nv = Nerve::globular(&c, top - 1).unwrap();
        let f = Folding::new(&nv).unwrap();
        for u in c.ids().filter(|&u| c.dim(u) >= 1) {
            let n = c.dim(u);
            let x = f.fold(u).unwrap();
            let found: Vec<usize> = (0..nv.count(n as i64 - 1))
                .filter(|&y| {
                    nv.ev(n - 1, y) == u && is_folded_globular(nv.table(n - 1, y)).unwrap()
                })
                .collect();
            assert_eq!(found.len(), 1, "{} {}", c.name(), c.label(u));
            assert_eq!(nv.table(n - 1, found[0]), &x[..]);
            assert_eq!(nv.to_c(x[x.len() - 1]), u);
            assert!(is_folded_minus(&c, &h_minus(&nv, &x).unwrap()).unwrap());
            if n >= 2 {
                let m = n - 1;
                let last = [nv.face_table(m, &x, m - 1), nv.face_table(m, &x, m)];
                let s = f.fold(c.src(u, n - 1)).unwrap_or_default();
                let s = if c.dim(c.src(u, n - 1)) == n - 1 { s } else { f.fold_at(c.src(u, n - 1), m - 1).unwrap() };
                let t = f.fold_at(c.tgt(u, n - 1), m - 1).unwrap();
                assert!(last.contains(&s) && last.contains(&t));
                let evs: Vec<ElemId> = last.iter().map(|y| nv.to_c(y[y.len() - 1])).collect();
                assert!(evs.contains(&c.src(u, n - 1)) && evs.contains(&c.tgt(u, n - 1)));
                for i in 0..m.saturating_sub(1) {
                    let y = nv.face_table(m, &x, i);
                    assert!(c.dim(nv.to_c(y[y.len() - 1])) < m, "lower face {i} is not thin");
                }
            }
        }
        for x in 0..nv.count(top as i64 - 1) {
            let t = nv.table(top - 1, x);
            let phi = f.phi(t).unwrap();
            assert_eq!(phi == t, is_folded_globular(t).unwrap());
        }
    }
}

#[test]
fn fold_of_a_point_and_a_two_cell() {
    let c = cat(Scheme::Globe(2));
    let nv = Nerve::globular(&c, 1).unwrap();
    let f = Folding::new(&nv).unwrap();
    let a = c.of_dim(2)[0];
    let u = c.src(a, 1);
    assert_eq!(f.fold(u).unwrap(), vec![nv.from_c(u).unwrap()]);
    let x = f.fold(a).unwrap();
    let v = |s: &str| nv.to_c(x[nv.face_index(1, s).unwrap()]);
    assert_eq!(v("(01)"), a);
    assert_eq!(v("(1)"), c.src(a, 1));
    assert_eq!(v("(0)"), c.tgt(a, 1));
    assert!(matches!(f.fold(c.of_dim(0)[0]), Err(Error::Input(_))));
}

/// `∂b(x,y) = ±(□(x*y) - □x - □y)` modulo degenerate simplexes.
#[test]
fn additivity_witness() {
    let c = present(
        r#"{"name": "a", "dim": 0}, {"name": "b", "dim": 0},
        {"name": "f", "dim": 1, "source": "a", "target": "b"},
        {"name": "g", "dim": 1, "source": "a", "target": "b"},
        {"name": "h", "dim": 1, "source": "a", "target": "b"},
        {"name": "A", "dim": 2, "source": "f", "target": "g"},
        {"name": "B", "dim": 2, "source": "g", "target": "h"}"#,
    );
    let nv = Nerve::globular(&c, 2).unwrap();
    let f = Folding::new(&nv).unwrap();
    let (x, y) = (c.find("A").unwrap(), c.find("B").unwrap());
    let (b, pattern) = f.witness(x, y).unwrap();
    // under the vertex order fixed by the simplex orientation, x and y trade places
    assert!(!pattern.as_displayed);
    assert!(nv.find(2, &b).is_some());
    let mut chain: HashMap<Vec<ElemId>, i64> = HashMap::new();
    for i in 0..=2 {
        let t = nv.face_table(2, &b, i);
        if !is_degenerate_globular(&t).unwrap() {
            *chain.entry(t).or_default() += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    chain.retain(|_, v| *v != 0);
    let mut expect: HashMap<Vec<ElemId>, i64> = HashMap::new();
    *expect.entry(f.fold(c.compose(x, 1, y).unwrap()).unwrap()).or_default() += 1;
    *expect.entry(f.fold(x).unwrap()).or_default() -= 1;
    *expect.entry(f.fold(y).unwrap()).or_default() -= 1;
    let neg: HashMap<_, _> = expect.iter().map(|(k, v)| (k.clone(), -v)).collect();
    assert!(chain == expect || chain == neg);
}

#[test]
fn folded_minus_examples() {
    let c = cat(Scheme::Cube(2));
    let co = Nerve::corner(&c, Sign::Minus, 1).unwrap();
    for x in 0..co.count(0) {
        assert!(is_folded_minus(&c, co.table(0, x)).unwrap());
    }
    let square = c.of_dim(2)[0];
    let sq = (0..co.count(1))
        .find(|&x| co.ev(1, x) == square && co.table(1, x).iter().all(|&v| c.dim(v) <= 2))
        .unwrap();
    assert!(!is_folded_minus(&c, co.table(1, sq)).unwrap());
}

#[test]
fn star_examples() {
    let c = cat(Scheme::Graph {
        vertices: vec!["a".into(), "b".into(), "g".into()],
        edges: vec![
            ("u".into(), "a".into(), "b".into()),
            ("v".into(), "b".into(), "g".into()),
        ],
    });
    let nv = Nerve::globular(&c, 1).unwrap();
    let (u, v) = (c.find("u").unwrap(), c.find("v").unwrap());
    let su = GlobularValue::Simplex(vec![nv.from_c(u).unwrap()]);
    let sv = GlobularValue::Simplex(vec![nv.from_c(v).unwrap()]);
    let uv = nv.from_c(c.compose(u, 0, v).unwrap()).unwrap();
    assert_eq!(star(&nv, &su, &sv).unwrap(), GlobularValue::Simplex(vec![uv]));
    let b = c.tgt(u, 0);
    assert_eq!(star(&nv, &su, &GlobularValue::Constant(b)).unwrap(), su);
    assert_eq!(star(&nv, &GlobularValue::Constant(c.src(u, 0)), &su).unwrap(), su);
    assert!(star(&nv, &sv, &su).is_err());
}

/// `∂_i(x*y) = ∂_i x * ∂_i y` and `ε_i(x*y) = ε_i x * ε_i y`.
#[test]
fn star_is_simplicial() {
    let c = present(
        r#"{"name": "a", "dim": 0}, {"name": "b", "dim": 0}, {"name": "g", "dim": 0},
        {"name": "f", "dim": 1, "source": "a", "target": "b"},
        {"name": "f2", "dim": 1, "source": "a", "target": "b"},
        {"name": "A", "dim": 2, "source": "f", "target": "f2"},
        {"name": "k", "dim": 1, "source": "b", "target": "g"},
        {"name": "k2", "dim": 1, "source": "b", "target": "g"},
        {"name": "K", "dim": 2, "source": "k", "target": "k2"}"#,
    );
    let d = 2;
    let nv = Nerve::globular(&c, d).unwrap();
    let mut checked = 0;
    for n in 0..=d {
        for x in 0..nv.count(n as i64) {
            for y in 0..nv.count(n as i64) {
                let (tx, sy) = (nv.grade(n, x).1, nv.grade(n, y).0);
                if tx != sy {
                    continue;
                }
                let (a, b) = (nv.table(n, x).to_vec(), nv.table(n, y).to_vec());
                let GlobularValue::Simplex(z) =
                    star(&nv, &GlobularValue::Simplex(a.clone()), &GlobularValue::Simplex(b.clone())).unwrap()
                else {
                    panic!("constant star");
                };
                assert!(nv.find(n, &z).is_some());
                checked += 1;
                for i in 0..=n {
                    if n > 0 {
                        let lhs = nv.face_table(n, &z, i);
                        let rhs = star(
                            &nv,
                            &GlobularValue::Simplex(nv.face_table(n, &a, i)),
                            &GlobularValue::Simplex(nv.face_table(n, &b, i)),
                        )
                        .unwrap();
                        assert_eq!(GlobularValue::Simplex(lhs), rhs);
                    }
                    if n < d {
                        let lhs = nv.degeneracy_table(n, &z, i);
                        let rhs = star(
                            &nv,
                            &GlobularValue::Simplex(nv.degeneracy_table(n, &a, i)),
                            &GlobularValue::Simplex(nv.degeneracy_table(n, &b, i)),
                        )
                        .unwrap();
                        assert_eq!(GlobularValue::Simplex(lhs), rhs);
                    }
                }
            }
        }
    }
    assert!(checked > 10);
}



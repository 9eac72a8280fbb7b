use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::cutmaps::Folding;
use crate::facecomb::Sign;
use crate::nerves::Nerve;
use crate::omegacat::{build, BuildOptions, OmegaCat, Scheme};

fn cat(s: Scheme) -> OmegaCat {
    build(&s, BuildOptions::default()).unwrap()
}

fn graph(edges: &[(&str, &str, &str)]) -> OmegaCat {
    let mut vertices: Vec<String> = Vec::new();
    for (_, s, t) in edges {
        for v in [s, t] {
            if !vertices.iter().any(|w| w == v) {
                vertices.push(v.to_string());
            }
        }
    }
    cat(Scheme::Graph {
        vertices,
        edges: edges
            .iter()
            .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
            .collect(),
    })
}

fn left() -> OmegaCat {
    graph(&[("u", "a", "b"), ("v", "b", "g"), ("w", "b", "g")])
}

fn right() -> OmegaCat {
    graph(&[("u1", "a", "a1"), ("u2", "a1", "b"), ("v", "b", "g"), ("w", "b", "g")])
}

fn big(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn check_certificates(m: &IntMatrix) {
    let s = snf(m);
    assert_eq!(s.u.mul(m).mul(&s.v), s.d);
    assert!(s.d.is_diagonal());
    assert!(s.u.determinant().abs().is_one());
    assert!(s.v.determinant().abs().is_one());
    for (i, x) in s.invariants.iter().enumerate() {
        assert_eq!(&s.d[(i, i)], x);
        assert!(x.is_positive());
    }
    for w in s.invariants.windows(2) {
        assert!((&w[1] % &w[0]).is_zero(), "{:?} does not divide", s.invariants);
    }
}

#[test]
fn snf_examples() {
    let m = big(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(snf(&m).invariants, ints(&[2, 4]));
    check_certificates(&m);
    assert_eq!(snf(&IntMatrix::identity(3)).invariants, ints(&[1, 1, 1]));
    assert!(snf(&IntMatrix::zeros(3, 2)).invariants.is_empty());
    assert!(snf(&IntMatrix::zeros(0, 4)).invariants.is_empty());
    // the boundary of a triangle: rank 2, unimodular
    let tri = big(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
    assert_eq!(snf(&tri).invariants, ints(&[1, 1]));
    check_certificates(&big(&[vec![0, 6, 0], vec![10, 0, 0], vec![0, 0, 15]]));
}

fn columns(m: &[Vec<i64>]) -> (usize, Vec<SparseVec>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let v = (0..cols)
        .map(|j| normalize((0..rows).map(|i| (i, m[i][j])).collect()))
        .collect();
    (rows, v)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r)
    })
}

proptest! {
    #[test]
    fn snf_certificates_hold(m in small_matrix()) {
        check_certificates(&big(&m));
    }

    #[test]
    fn sparse_and_dense_agree(m in small_matrix()) {
        let (rows, cols) = columns(&m);
        prop_assert_eq!(invariants(rows, &cols), snf(&big(&m)).invariants);
    }

    #[test]
    fn lattice_membership(m in small_matrix(), c in proptest::collection::vec(-3i64..=3, 5), e in 0usize..5) {
        let (rows, cols) = columns(&m);
        let v: SparseVec = normalize(
            (0..rows)
                .map(|i| (i, cols.iter().zip(&c).map(|(col, k)| col.iter().find(|x| x.0 == i).map_or(0, |x| x.1) * k).sum()))
                .collect(),
        );
        prop_assert!(lattice_contains(rows, &cols, &v));
        let basis = EchelonBasis::from_sparse(rows, &cols);
        prop_assert!(basis.contains(&dense(rows, &v)));
        // a vector off the lattice: compare both membership tests
        let mut w = v.clone();
        w.push((e % rows, 1));
        let w = normalize(w);
        prop_assert_eq!(lattice_contains(rows, &cols, &w), basis.contains(&dense(rows, &w)));
    }
}

fn free(name: &str, degrees: Vec<(Vec<&str>, Vec<SparseVec>)>) -> PresentedComplex {
    let mut c = PresentedComplex::new(name, 0, 0);
    for (labels, boundary) in degrees {
        c.push(ChainGroup {
            labels: labels.into_iter().map(String::from).collect(),
            relations: Vec::new(),
            boundary,
        });
    }
    c
}

#[test]
fn small_complexes() {
    let empty = PresentedComplex::new("empty", 0, 0);
    assert_eq!(empty.homology(0).unwrap(), HomologyGroup::zero());
    assert_eq!(empty.homology(5).unwrap(), HomologyGroup::zero());
    // a circle: three vertices, three edges
    let circle = free(
        "circle",
        vec![
            (vec!["a", "b", "c"], vec![vec![]; 3]),
            (vec!["ab", "bc", "ca"], vec![vec![(0, -1), (1, 1)], vec![(1, -1), (2, 1)], vec![(0, 1), (2, -1)]]),
        ],
    );
    circle.check().unwrap();
    assert_eq!(circle.homology(0).unwrap(), HomologyGroup::free(1));
    assert_eq!(circle.homology(1).unwrap(), HomologyGroup::free(1));
    // ℤ --2--> ℤ
    let two = free("two", vec![(vec!["x"], vec![vec![]]), (vec!["y"], vec![vec![(0, 2)]])]);
    assert_eq!(two.homology(0).unwrap().torsion, ints(&[2]));
    assert_eq!(two.homology(1).unwrap(), HomologyGroup::zero());
    // the same group presented with a relation instead of a boundary
    let mut rel = free("rel", vec![(vec!["x"], vec![vec![]])]);
    rel.group_mut(0).unwrap().relations.push(vec![(0, 2)]);
    assert_eq!(rel.homology(0).unwrap().torsion, ints(&[2]));
    assert_eq!(rel.class_test(0, &vec![(0, 2)]).unwrap(), ClassStatus::Boundary);
    assert_eq!(rel.class_test(0, &vec![(0, 1)]).unwrap(), ClassStatus::NontrivialClass);
    // relations on cycles below: y ↦ x is a cycle once x = 0
    let mut quo = free("quo", vec![(vec!["x"], vec![vec![]]), (vec!["y"], vec![vec![(0, 1)]])]);
    quo.group_mut(0).unwrap().relations.push(vec![(0, 1)]);
    quo.check().unwrap();
    assert_eq!(quo.homology(1).unwrap(), HomologyGroup::free(1));
    assert_eq!(quo.homology(0).unwrap(), HomologyGroup::zero());
    assert_eq!(quo.class_test(0, &Vec::new()).unwrap(), ClassStatus::Boundary);
}

#[test]
fn truncation_is_a_hard_error() {
    let nv = Nerve::globular(&left(), 2).unwrap();
    let c = nerve_complex(&nv);
    assert!(c.homology(1).is_ok());
    assert!(matches!(c.homology(2), Err(crate::Error::Truncation { requested: 2, truncation: 2, valid: 1 })));
    assert!(c.theory_homology(3).is_err());
    assert!(reduced_complex(&nv).homology(2).is_err());
}

#[test]
fn subdivision_ranks() {
    for (c, r) in [(left(), 2), (right(), 3)] {
        let nv = Nerve::globular(&c, 2).unwrap();
        let x = nerve_complex(&nv);
        x.check().unwrap();
        assert_eq!(x.homology(0).unwrap(), HomologyGroup::free(r), "{}", c.name());
        assert_eq!(x.theory_homology(1).unwrap(), HomologyGroup::free(r));
    }
}

#[test]
fn fold_difference_is_a_class() {
    let c = left();
    let nv = Nerve::globular(&c, 1).unwrap();
    let f = Folding::new(&nv).unwrap();
    let x = nerve_complex(&nv);
    let at = |e: &str| nv.find(0, &f.fold(c.eval(e).unwrap()).unwrap()).unwrap();
    let chain = normalize(vec![(at("v"), 1), (at("w"), -1)]);
    assert_eq!(x.class_test(0, &chain).unwrap(), ClassStatus::NontrivialClass);
    let chain2 = normalize(vec![(at("u *0 v"), 1), (at("u *0 w"), -1)]);
    assert_eq!(x.class_test(0, &chain2).unwrap(), ClassStatus::NontrivialClass);
    assert_eq!(x.class_test(0, &vec![(at("v"), 1)]).unwrap(), ClassStatus::NotCycle);
    assert_eq!(x.class_test(0, &Vec::new()).unwrap(), ClassStatus::Boundary);
}

fn i3_cycle(c: &OmegaCat, x: &PresentedComplex) -> SparseVec {
    let a = "R(-00) *0 R(0++)";
    let b = "R(-0-) *0 R(0+0)";
    let ab = format!("({a}) *1 ({b})");
    let terms: Vec<(i64, String)> = [(1, ab.as_str()), (-1, a), (-1, b)]
        .iter()
        .map(|&(k, e)| (k, c.label(c.eval(e).unwrap())))
        .collect();
    let refs: Vec<(i64, &str)> = terms.iter().map(|(k, l)| (*k, l.as_str())).collect();
    x.chain(2, &refs).unwrap()
}

#[test]
fn old_globular_cycle_of_the_cube() {
    let c = cat(Scheme::Cube(3));
    let old = old_globular_complex(&c, OldDegreeZero::Tensor);
    old.check().unwrap();
    let z = i3_cycle(&c, &old);
    assert_eq!(z.len(), 3);
    assert_eq!(old.class_test(2, &z).unwrap(), ClassStatus::NontrivialClass);
    assert!(!old.homology(2).unwrap().is_zero());
    // the formal complex identifies the composite with the sum
    let cf = formal_complex(&c, FormalVariant::Globular).unwrap();
    assert_eq!(cf.class_test(2, &z).unwrap(), ClassStatus::Boundary);
    let globe = cat(Scheme::Globe(2));
    assert!(old_globular_complex(&globe, OldDegreeZero::Tensor).homology(2).unwrap().is_zero());
}

#[test]
fn false_cycle() {
    let c = graph(&[("u", "L", "T"), ("w", "L", "B"), ("v", "R", "T"), ("x", "R", "B")]);
    let chain = [(1, "u"), (1, "x"), (-1, "w"), (-1, "v")];
    let sum = old_globular_complex(&c, OldDegreeZero::Sum);
    sum.check().unwrap();
    let z = sum.chain(1, &chain).unwrap();
    assert_eq!(sum.class_test(1, &z).unwrap(), ClassStatus::NontrivialClass);
    let tensor = old_globular_complex(&c, OldDegreeZero::Tensor);
    let z = tensor.chain(1, &chain).unwrap();
    assert_eq!(tensor.class_test(1, &z).unwrap(), ClassStatus::NotCycle);
}

#[test]
fn formal_complexes() {
    for n in 1..=4 {
        let c = cat(Scheme::Globe(n));
        let cf = formal_complex(&c, FormalVariant::Globular).unwrap();
        cf.check().unwrap();
        // two parallel cells below the top, no composites
        for k in 1..=n as i64 {
            assert_eq!(cf.len(k), if k == n as i64 { 1 } else { 2 });
            assert!(cf.group(k).unwrap().relations.is_empty());
        }
    }
    for s in [Scheme::Cube(2), Scheme::Cube(3), Scheme::Simplex(3)] {
        let c = cat(s);
        for v in [FormalVariant::Globular, FormalVariant::Minus, FormalVariant::Plus] {
            formal_complex(&c, v).unwrap().check().unwrap();
        }
    }
    // [x *1 y] = [x] + [y] in CF⁻ of two composable squares
    let c = cat(Scheme::Cube(3));
    let cf = formal_complex(&c, FormalVariant::Minus).unwrap();
    let (x, y) = ("R(-00) *0 R(0++)", "R(-0-) *0 R(0+0)");
    let xy = c.label(c.eval(&format!("({x}) *1 ({y})")).unwrap());
    let (x, y) = (c.label(c.eval(x).unwrap()), c.label(c.eval(y).unwrap()));
    let z = cf.chain(2, &[(1, &xy), (-1, &x), (-1, &y)]).unwrap();
    assert_eq!(cf.class_test(2, &z).unwrap(), ClassStatus::Boundary);
    // two globes side by side: A *0 K is A in CF⁻, K in CF⁺, neither in CF^gl
    let c = crate::omegacat::load(
        r#"{"kind": "presentation", "generators": [
        {"name": "a", "dim": 0}, {"name": "b", "dim": 0}, {"name": "g", "dim": 0},
        {"name": "f", "dim": 1, "source": "a", "target": "b"},
        {"name": "f2", "dim": 1, "source": "a", "target": "b"},
        {"name": "A", "dim": 2, "source": "f", "target": "f2"},
        {"name": "k", "dim": 1, "source": "b", "target": "g"},
        {"name": "k2", "dim": 1, "source": "b", "target": "g"},
        {"name": "K", "dim": 2, "source": "k", "target": "k2"}]}"#,
        BuildOptions::default(),
    )
    .unwrap();
    let ak = c.label(c.eval("A *0 K").unwrap());
    for (v, keep, expect) in [
        (FormalVariant::Minus, "A", ClassStatus::Boundary),
        (FormalVariant::Plus, "K", ClassStatus::Boundary),
        (FormalVariant::Plus, "A", ClassStatus::NotCycle),
        (FormalVariant::Globular, "A", ClassStatus::NotCycle),
    ] {
        let x = formal_complex(&c, v).unwrap();
        x.check().unwrap();
        let z = x.chain(2, &[(1, &ak), (-1, keep)]).unwrap();
        assert_eq!(x.class_test(2, &z).unwrap(), expect, "{} {keep}", v.name());
    }
}

#[test]
fn reduced_complexes() {
    // a graph truncated at 0 has no thin simplexes
    let c = left();
    let nv = Nerve::globular(&c, 0).unwrap();
    let (a, b) = (nerve_complex(&nv), reduced_complex(&nv));
    assert_eq!(a.sizes(), b.sizes());
    // degenerate simplexes are thin and disappear
    let nv = Nerve::globular(&c, 2).unwrap();
    let r = reduced_chains(&nv);
    r.complex.check().unwrap();
    for x in 0..nv.count(0) {
        let e = nv.degeneracy(0, x, 0).unwrap();
        assert!(nv.is_thin(1, e));
        assert!(r.project(1, e).is_empty());
    }
    for s in [Scheme::Cube(2), Scheme::Globe(3), Scheme::Simplex(3)] {
        let c = cat(s);
        let nv = Nerve::globular(&c, 3).unwrap();
        reduced_complex(&nv).check().unwrap();
        normalized_chains(&nv).complex.check().unwrap();
    }
}

/// `[u] = [u *0 v]` in `CR₁⁻` through the thin square.
#[test]
fn thin_square_identifies_corner_classes() {
    let c = graph(&[("u", "a", "b"), ("v", "b", "g")]);
    let nv = Nerve::corner(&c, Sign::Minus, 2).unwrap();
    let r = reduced_chains(&nv);
    r.complex.check().unwrap();
    let edge = |e: &str| {
        let t = nv.face_index(0, "0").unwrap();
        let x = c.eval(e).unwrap();
        (0..nv.count(0)).find(|&y| nv.table(0, y)[t] == x).unwrap()
    };
    let (u, uv) = (edge("u"), edge("u *0 v"));
    let chain = normalize(r.project(0, u).into_iter().chain(r.project(0, uv).into_iter().map(|(g, k)| (g, -k))).collect());
    assert_eq!(chain.len(), 2);
    assert_eq!(r.complex.class_test(0, &chain).unwrap(), ClassStatus::Boundary);
    // the relation coming from the thin square alone identifies them
    let rels = &r.complex.group(0).unwrap().relations;
    assert!(rels.iter().any(|v| *v == chain || *v == chain.iter().map(|&(g, k)| (g, -k)).collect::<SparseVec>()));
}

fn acceptance_cats() -> Vec<OmegaCat> {
    vec![
        cat(Scheme::Cube(1)),
        cat(Scheme::Cube(2)),
        cat(Scheme::Simplex(2)),
        cat(Scheme::Simplex(3)),
        cat(Scheme::Globe(3)),
        left(),
        right(),
    ]
}

#[test]
fn vanishing_on_small_instances() {
    for c in [cat(Scheme::Cube(2)), cat(Scheme::Simplex(2)), cat(Scheme::Globe(3))] {
        let nv = Nerve::globular(&c, 3).unwrap();
        let x = nerve_complex(&nv);
        for p in 1..=3 {
            assert!(x.theory_homology(p).unwrap().is_zero(), "{} degree {p}", c.name());
        }
    }
}

#[test]
fn homology_is_a_sum_over_grades() {
    for c in acceptance_cats() {
        let nv = Nerve::globular(&c, 2).unwrap();
        let total = nerve_complex(&nv);
        let parts = graded_nerve_complexes(&nv).unwrap();
        let count: usize = parts.values().map(|p| p.len(0) + p.len(1) + p.len(-1)).sum();
        assert_eq!(count, total.len(0) + total.len(1) + total.len(-1));
        for k in -1..=1 {
            let sum = parts
                .values()
                .map(|p| p.homology(k).unwrap())
                .fold(HomologyGroup::zero(), |a, b| a.sum(&b));
            assert_eq!(sum, total.homology(k).unwrap(), "{} degree {k}", c.name());
        }
    }
}

fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        p.swap(i, (s % (i as u64 + 1)) as usize);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn homology_ignores_generator_order(which in 0usize..7, seed in any::<u64>()) {
        let c = &acceptance_cats()[which];
        let nv = Nerve::globular(c, 2).unwrap();
        for x in [nerve_complex(&nv), reduced_complex(&nv), formal_complex(c, FormalVariant::Globular).unwrap()] {
            let perm: BTreeMap<i64, Vec<usize>> = x
                .degrees()
                .map(|k| (k, shuffle(x.len(k), seed.wrapping_add(k as u64))))
                .collect();
            let y = x.permuted(&perm);
            y.check().unwrap();
            for k in x.degrees().filter(|&k| k <= x.valid_to) {
                prop_assert_eq!(x.homology(k).unwrap(), y.homology(k).unwrap());
            }
        }
    }
}

#[test]
fn diagram_maps_are_chain_maps() {
    for c in [cat(Scheme::Cube(2)), cat(Scheme::Globe(3))] {
        let d = 3;
        let gl = Nerve::globular(&c, d).unwrap();
        let mi = Nerve::corner(&c, Sign::Minus, d).unwrap();
        let fold = Folding::new(&gl).unwrap();
        let full = full_chains(&gl);
        let norm = normalized_chains(&gl);
        let red = reduced_chains(&gl);
        let old = old_globular_complex(&c, OldDegreeZero::Tensor);
        let cf = formal_complex(&c, FormalVariant::Globular).unwrap();
        let cfm = formal_complex(&c, FormalVariant::Minus).unwrap();
        let cfp = formal_complex(&c, FormalVariant::Plus).unwrap();
        old_to_formal_map(&c).check(&old, &cf).unwrap();
        formal_quotient_map(&c, Sign::Minus).check(&cf, &cfm).unwrap();
        formal_quotient_map(&c, Sign::Plus).check(&cf, &cfp).unwrap();
        fold_map(&fold, &red).unwrap().check(&cf, &red.complex).unwrap();
        fold_map(&fold, &red).unwrap().check(&old, &red.complex).unwrap();
        fold_map(&fold, &norm).unwrap().check(&old, &norm.complex).unwrap();
        nerve_quotient_map(&full, &red).check(&full.complex, &red.complex).unwrap();
        nerve_quotient_map(&full, &norm).check(&full.complex, &norm.complex).unwrap();
        let mfull = full_chains(&mi);
        let mred = reduced_chains(&mi);
        h_minus_map(&gl, &full, &mi, &mfull).unwrap().check(&full.complex, &mfull.complex).unwrap();
        h_minus_map(&gl, &red, &mi, &mred).unwrap().check(&red.complex, &mred.complex).unwrap();
        // fold is not a chain map into the unnormalized chains once
        // degenerate lower faces appear
        if c.max_dim() >= 3 {
            assert!(fold_map(&fold, &full).unwrap().check(&old, &full.complex).is_err());
        }
    }
}

/// `∂[□u] = [□ s u] − [□ t u]` in `CR^gl`.
#[test]
fn reduced_differential_law() {
    for c in [cat(Scheme::Cube(2)), cat(Scheme::Globe(3)), cat(Scheme::Cube(3))] {
        let gl = Nerve::globular(&c, c.max_dim()).unwrap();
        let fold = Folding::new(&gl).unwrap();
        let red = reduced_chains(&gl);
        for u in c.ids().filter(|&u| c.dim(u) >= 2) {
            let n = c.dim(u);
            let class = |e| -> SparseVec {
                if c.dim(e) < n - 1 {
                    return Vec::new();
                }
                let y = gl.find(n - 2, &fold.fold(e).unwrap()).unwrap();
                red.project(n as i64 - 2, y)
            };
            let x = gl.find(n - 1, &fold.fold(u).unwrap()).unwrap();
            let lhs = red.complex.apply_d(n as i64 - 1, &red.project(n as i64 - 1, x));
            let (s, t) = (class(c.src(u, n - 1)), class(c.tgt(u, n - 1)));
            let diff = normalize(lhs.into_iter().chain(s.into_iter().map(|(g, k)| (g, -k))).chain(t).collect());
            let rels = red.complex.group(n as i64 - 2).unwrap().relations.clone();
            assert!(lattice_contains(red.complex.len(n as i64 - 2), &rels, &diff), "{} {}", c.name(), c.label(u));
        }
    }
}

#[test]
fn comparison_report() {
    let c = cat(Scheme::Cube(2));
    let gl = Nerve::globular(&c, 3).unwrap();
    let fold = Folding::new(&gl).unwrap();
    let red = reduced_chains(&gl);
    let full = full_chains(&gl);
    let cf = formal_complex(&c, FormalVariant::Globular).unwrap();
    let rows = compare(&fold_map(&fold, &red).unwrap(), &cf, &red.complex, 0..=3).unwrap();
    assert_eq!(rows.len(), 4);
    let rows = compare(&nerve_quotient_map(&full, &red), &full.complex, &red.complex, 0..=3).unwrap();
    assert_eq!(rows.len(), 4);
    // an identity is an isomorphism, and zero is not
    let x = nerve_complex(&gl);
    let id = nerve_quotient_map(&full, &full);
    assert!(compare(&id, &x, &x, 0..=3).unwrap().iter().all(|r| r.isomorphism));
    let zero = ChainMap {
        name: "zero".into(),
        maps: (0..=4).map(|p| (p, vec![Vec::new(); x.len(p - 1)])).collect(),
    };
    let rows = compare(&zero, &x, &x, 0..=3).unwrap();
    assert!(!rows[0].isomorphism);
}

#[test]
fn thin_cycles_are_reported() {
    let c = cat(Scheme::Cube(2));
    let gl = Nerve::globular(&c, 3).unwrap();
    let rep = thin_cycle_report(&gl).unwrap();
    assert_eq!(rep.len(), 3);
    assert_eq!(rep[0].thin_generators, 0);
    assert!(rep[1].thin_generators > 0);
}

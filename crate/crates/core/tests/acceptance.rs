//! Acceptance criteria 1 to 9. Every equality is exact. Prints one line per
//! criterion and exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use globhom::cli::{run_suite, Suite, SuiteOptions};
use globhom::cutmaps::{h_minus, Folding};
use globhom::facecomb::{CubeFace, Sign, SimplexFace};
use globhom::homology::{
    compare, fold_map, formal_complex, formal_quotient_map, full_chains, h_minus_map, nerve_complex,
    nerve_quotient_map, normalized_chains, old_globular_complex, old_to_formal_map, reduced_chains, ChainMap,
    ClassStatus, Comparison, FormalVariant, HomologyGroup, OldDegreeZero, PresentedComplex,
};
use globhom::nerves::Nerve;
use globhom::omegacat::{build, iso_check, load, loop_space, BuildOptions, OmegaCat, Scheme};

type Outcome = Result<String, String>;

fn cat(s: Scheme) -> OmegaCat {
    build(&s, BuildOptions::default()).expect("builds")
}

fn graph(name: &str, edges: &[(&str, &str, &str)]) -> OmegaCat {
    let mut vertices: Vec<String> = Vec::new();
    for (_, s, t) in edges {
        for v in [s, t] {
            if !vertices.iter().any(|w| w == v) {
                vertices.push(v.to_string());
            }
        }
    }
    let mut c = cat(Scheme::Graph {
        vertices,
        edges: edges.iter().map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string())).collect(),
    });
    c.set_name(name);
    c
}

fn left() -> OmegaCat {
    graph("left", &[("u", "alpha", "beta"), ("v", "beta", "gamma"), ("w", "beta", "gamma")])
}

fn right() -> OmegaCat {
    graph(
        "right",
        &[("u1", "alpha", "alpha1"), ("u2", "alpha1", "beta"), ("v", "beta", "gamma"), ("w", "beta", "gamma")],
    )
}

/// `left` with `v` subdivided into `v1` then `v2`.
fn left_subdivided() -> OmegaCat {
    graph(
        "left, v subdivided",
        &[("u", "alpha", "beta"), ("v1", "beta", "delta"), ("v2", "delta", "gamma"), ("w", "beta", "gamma")],
    )
}

fn false_cycle_graph() -> OmegaCat {
    graph("false cycle", &[("u", "L", "T"), ("w", "L", "B"), ("v", "R", "T"), ("x", "R", "B")])
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gl_homology(c: &OmegaCat, d: usize, p: i64) -> Result<HomologyGroup, String> {
    let nv = Nerve::globular(c, d).map_err(|e| e.to_string())?;
    nerve_complex(&nv).theory_homology(p).map_err(|e| e.to_string())
}

fn vanishing(cats: Vec<(OmegaCat, usize, Vec<i64>)>) -> Outcome {
    let mut seen = Vec::new();
    for (c, d, degrees) in cats {
        for p in degrees {
            let h = gl_homology(&c, d, p)?;
            ensure(h.is_zero(), || format!("H_{p}({}) = {h}", c.name()))?;
        }
        seen.push(c.name().to_string());
    }
    Ok(seen.join(", "))
}

fn criterion_1() -> Outcome {
    vanishing((1..=3).map(|n| (cat(Scheme::Cube(n)), 3, vec![1, 2])).collect())
}

fn criterion_2() -> Outcome {
    vanishing((1..=3).map(|n| (cat(Scheme::Simplex(n)), 3, vec![1, 2])).collect())
}

fn criterion_3() -> Outcome {
    vanishing((1..=4).map(|n| (cat(Scheme::Globe(n)), n, (1..=n as i64).collect())).collect())
}

fn criterion_4() -> Outcome {
    let c = cat(Scheme::Cube(3));
    let old = old_globular_complex(&c, OldDegreeZero::Tensor);
    old.check().map_err(|e| e.to_string())?;
    let (a, b) = ("R(-00) *0 R(0++)", "R(-0-) *0 R(0+0)");
    let ab = format!("({a}) *1 ({b})");
    let label = |e: &str| c.eval(e).map(|x| c.label(x)).map_err(|e| e.to_string());
    let (la, lb, lab) = (label(a)?, label(b)?, label(&ab)?);
    let z = old
        .chain(2, &[(1, &lab), (-1, &la), (-1, &lb)])
        .map_err(|e| e.to_string())?;
    let status = old.class_test(2, &z).map_err(|e| e.to_string())?;
    ensure(status == ClassStatus::NontrivialClass, || format!("the displayed chain is {status:?}"))?;
    let h_old = old.homology(2).map_err(|e| e.to_string())?;
    ensure(!h_old.is_zero(), || "H_2 old-gl vanishes".into())?;
    let h_new = gl_homology(&c, 3, 2)?;
    ensure(h_new.is_zero(), || format!("H_2 gl = {h_new}"))?;
    Ok(format!("old-gl H_2 = {h_old}, gl H_2 = {h_new}"))
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for (c, r) in [(left(), 2), (right(), 3), (left_subdivided(), 2)] {
        let h = gl_homology(&c, 2, 1)?;
        ensure(h == HomologyGroup::free(r), || format!("H_1({}) = {h}, expected rank {r}", c.name()))?;
        out.push(format!("{}: {h}", c.name()));
    }
    Ok(out.join(", "))
}

fn criterion_6() -> Outcome {
    for n in 1..=3 {
        let l = loop_space(&cat(Scheme::Simplex(n))).map_err(|e| e.to_string())?;
        let cube = cat(Scheme::Cube(n - 1));
        ensure(iso_check(&l, &cube).is_some(), || format!("loop space of Delta{n} is not I{}", n - 1))?;
    }
    Ok("n = 1, 2, 3".into())
}

/// The figure: three parallel paths `u, v, w`, 2-cells `A: u ⇒ v`,
/// `B: v ⇒ w`, `C: u ⇒ w` and a 3-cell `X` filling the triangle.
fn criterion_7() -> Outcome {
    let doc = r#"{"kind": "presentation", "name": "h-minus figure", "generators": [
        {"name": "a", "dim": 0}, {"name": "b", "dim": 0},
        {"name": "u", "dim": 1, "source": "a", "target": "b"},
        {"name": "v", "dim": 1, "source": "a", "target": "b"},
        {"name": "w", "dim": 1, "source": "a", "target": "b"},
        {"name": "A", "dim": 2, "source": "u", "target": "v"},
        {"name": "B", "dim": 2, "source": "v", "target": "w"},
        {"name": "C", "dim": 2, "source": "u", "target": "w"},
        {"name": "X", "dim": 3, "source": "A *1 B", "target": "C"}]}"#;
    let c = load(doc, BuildOptions::default()).map_err(|e| e.to_string())?;
    let nv = Nerve::globular(&c, 2).map_err(|e| e.to_string())?;
    let g = |n: &str| c.find(n).expect("generator");
    let (alpha, beta) = (g("a"), g("b"));
    let faces = [("(2)", "u"), ("(1)", "v"), ("(0)", "w"), ("(12)", "A"), ("(01)", "B"), ("(02)", "C"), ("(012)", "X")];
    let at = |x: usize, f: &str| nv.table_in_c(2, x)[SimplexFace::parse(f).expect("face").mask() - 1];
    // X has three splittings as a triangle; the figure's is the one through v
    let x = (0..nv.count(2))
        .find(|&x| faces.iter().all(|(f, v)| at(x, f) == g(v)))
        .ok_or("no simplex carries the figure's labels")?;
    let cube = h_minus(&nv, nv.table(2, x)).map_err(|e| e.to_string())?;
    let golden = [("--0", "u"), ("-0-", "v"), ("0--", "w"), ("-00", "A"), ("00-", "B"), ("0-0", "C"), ("000", "X")];
    for face in CubeFace::all(3) {
        let name = face.to_string();
        let want = if let Some((_, v)) = golden.iter().find(|(f, _)| *f == name) {
            g(v)
        } else if face.letters().contains(&Sign::Plus) {
            beta
        } else {
            alpha
        };
        let got = cube[face.index()];
        ensure(got == want, || format!("h⁻ sends {name} to {}, expected {}", c.label(got), c.label(want)))?;
    }
    Ok("27 faces match".into())
}

fn suite(name: Suite, c: &OmegaCat, d: usize, dc: usize) -> Result<usize, String> {
    let opts = SuiteOptions {
        truncation: d,
        corner_truncation: dc,
        cap: 1_000_000,
    };
    let mut checks = 0;
    for r in run_suite(name, c, opts).map_err(|e| format!("{} on {}: {e}", name.name(), c.name()))? {
        ensure(r.passed(), || format!("{} on {}: {:?}", r.suite, c.name(), r.messages))?;
        checks += r.checks;
    }
    Ok(checks)
}

fn acceptance_categories() -> Vec<OmegaCat> {
    let mut out: Vec<OmegaCat> = (1..=3).map(|n| cat(Scheme::Cube(n))).collect();
    out.extend((1..=3).map(|n| cat(Scheme::Simplex(n))));
    out.extend((1..=4).map(|n| cat(Scheme::Globe(n))));
    out.extend([left(), right(), left_subdivided(), false_cycle_graph()]);
    out
}

fn criterion_8() -> Outcome {
    let all = acceptance_categories();
    let (i2, g3) = (cat(Scheme::Cube(2)), cat(Scheme::Globe(3)));
    let mut parts = Vec::new();
    // (a) corner nerves of I3 and Delta3 explode past degree 2
    let mut n = 0;
    for c in &all {
        let dc = if matches!(c.name(), "I3" | "Delta3") { 2 } else { 3 };
        n += suite(Suite::SimplicialIdentities, c, 3, dc)?;
    }
    parts.push(format!("a {n}"));
    let mut n = 0;
    for c in [&i2, &g3] {
        n += suite(Suite::HMinus, c, 3, 3)?;
    }
    parts.push(format!("b {n}"));
    let mut n = 0;
    for c in [&i2, &g3] {
        n += suite(Suite::Fold, c, 3, 3)?;
    }
    parts.push(format!("c {n}"));
    let mut n = 0;
    for c in [left(), right(), left_subdivided()] {
        n += suite(Suite::Star, &c, 2, 2)?;
    }
    parts.push(format!("d {n}"));
    let mut n = 0;
    for c in &all {
        n += suite(Suite::Grading, c, 3, 3)?;
    }
    parts.push(format!("e {n}"));
    // (f) u + x - w - v
    let c = false_cycle_graph();
    let chain = [(1, "u"), (1, "x"), (-1, "w"), (-1, "v")];
    let sum = old_globular_complex(&c, OldDegreeZero::Sum);
    let tensor = old_globular_complex(&c, OldDegreeZero::Tensor);
    let s = sum.class_test(1, &sum.chain(1, &chain).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let t = tensor
        .class_test(1, &tensor.chain(1, &chain).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(s == ClassStatus::NontrivialClass, || format!("false cycle under sum: {s:?}"))?;
    ensure(t == ClassStatus::NotCycle, || format!("false cycle under tensor: {t:?}"))?;
    parts.push("f ok".into());
    Ok(format!("checks: {}", parts.join(", ")))
}

fn row(f: ChainMap, name: &str, src: &PresentedComplex, tgt: &PresentedComplex, top: i64) -> Result<Vec<Comparison>, String> {
    let f = ChainMap {
        name: name.into(),
        maps: f.maps,
    };
    compare(&f, src, tgt, 0..=top).map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Outcome {
    let mut summary = Vec::new();
    for c in [cat(Scheme::Cube(2)), cat(Scheme::Globe(3))] {
        let d = 3;
        let top = d as i64;
        let e = |e: globhom::Error| e.to_string();
        let gl = Nerve::globular(&c, d).map_err(e)?;
        let mi = Nerve::corner(&c, Sign::Minus, d).map_err(e)?;
        let fold = Folding::new(&gl).map_err(e)?;
        let (full, norm, red) = (full_chains(&gl), normalized_chains(&gl), reduced_chains(&gl));
        let (mfull, mred) = (full_chains(&mi), reduced_chains(&mi));
        let old = old_globular_complex(&c, OldDegreeZero::Tensor);
        let cf = formal_complex(&c, FormalVariant::Globular).map_err(e)?;
        let cfm = formal_complex(&c, FormalVariant::Minus).map_err(e)?;
        let cfp = formal_complex(&c, FormalVariant::Plus).map_err(e)?;
        let mut rows = Vec::new();
        rows.extend(row(old_to_formal_map(&c), "old->F", &old, &cf, top)?);
        rows.extend(row(formal_quotient_map(&c, Sign::Minus), "F->F-", &cf, &cfm, top)?);
        rows.extend(row(formal_quotient_map(&c, Sign::Plus), "F->F+", &cf, &cfp, top)?);
        rows.extend(row(fold_map(&fold, &red).map_err(e)?, "F->R", &cf, &red.complex, top)?);
        rows.extend(row(fold_map(&fold, &norm).map_err(e)?, "old->N", &old, &norm.complex, top)?);
        rows.extend(row(nerve_quotient_map(&full, &red), "N->R", &full.complex, &red.complex, top)?);
        rows.extend(row(h_minus_map(&gl, &full, &mi, &mfull).map_err(e)?, "h-", &full.complex, &mfull.complex, top)?);
        rows.extend(row(h_minus_map(&gl, &red, &mi, &mred).map_err(e)?, "Rh-", &red.complex, &mred.complex, top)?);
        let groups = |x: &PresentedComplex| -> Result<String, String> {
            (1..=top)
                .map(|p| x.theory_homology(p).map(|h| h.to_string()).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .map(|v| v.join("/"))
        };
        let isos: Vec<String> = ["F->R", "N->R", "h-", "Rh-"]
            .iter()
            .map(|m| {
                let flags: String = rows
                    .iter()
                    .filter(|r| r.map == *m && r.degree >= 1)
                    .map(|r| if r.isomorphism { 'y' } else { 'n' })
                    .collect();
                format!("{m} {flags}")
            })
            .collect();
        summary.push(format!(
            "{}: HF {} HR {} H {}; iso {}",
            c.name(),
            groups(&cf)?,
            groups(&red.complex)?,
            groups(&full.complex)?,
            isos.join(" ")
        ));
    }
    Ok(format!("chain maps ok; {}", summary.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("vanishing on cubes", criterion_1),
        ("vanishing on simplexes", criterion_2),
        ("vanishing on globes", criterion_3),
        ("old globular cycle of I3", criterion_4),
        ("subdivision ranks", criterion_5),
        ("loop spaces of simplexes", criterion_6),
        ("h-minus golden figure", criterion_7),
        ("structural suites a-f", criterion_8),
        ("formal and reduced comparison", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}

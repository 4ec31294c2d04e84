//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::HashMap;

use arimat::abelian::{GroupElem, GroupHom};
use arimat::arith::{arithmetic_tutte, check_axioms, AmbientGroup, Multiplicity, Representation};
use arimat::exact_linalg::IntMatrix;
use arimat::gstruct::{
    cyclic_structure, layer_structure, torsion_free_reduction, validate_structure, Diagnostic, GroupStructure,
    LayerGroups,
};
use arimat::matroid::{Matroid, SimplicialComplex};
use arimat::poset::{build_poset, IndPoset};
use arimat::sr_ring::{hilbert_closed, hilbert_function, sr_ideal, verify_hilbert, verify_hilbert_scaled};
use arimat::{ElemSet, FinAbGroup};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond { Ok(()) } else { Err(msg()) }
}

fn es(l: &[usize]) -> ElemSet {
    ElemSet::from_labels(l).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn x22() -> IntMatrix {
    IntMatrix::from_i64(&[&[2, -2], &[2, 2]])
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-3..=3)).collect()).collect();
    IntMatrix::from_rows(cols, &data)
}

/// Incidence matrix of a random directed graph (vertex 0 dropped), which is
/// totally unimodular.
fn random_incidence(rng: &mut ChaCha8Rng) -> IntMatrix {
    let v = rng.random_range(2..=4usize);
    let e = rng.random_range(1..=5usize);
    let mut cols = Vec::new();
    for _ in 0..e {
        let a = rng.random_range(0..v);
        let mut b = rng.random_range(0..v - 1);
        if b >= a {
            b += 1;
        }
        let mut c = vec![0i64; v];
        c[a] = 1;
        c[b] = -1;
        cols.push(c[1..].to_vec());
    }
    IntMatrix::from_cols(v - 1, &cols)
}

/// Whether `p` is the face poset of the complex: trivial groups and covers
/// given by removing one element.
fn is_face_poset(p: &IndPoset, cx: &SimplicialComplex) -> bool {
    if p.len() != cx.faces().len() {
        return false;
    }
    let index: HashMap<ElemSet, usize> = (0..p.len()).map(|i| (p.element(i).set, i)).collect();
    cx.faces().iter().all(|&s| {
        let Some(&i) = index.get(&s) else { return false };
        let mut want: Vec<usize> = s.elems().map(|a| index[&s.remove(a)]).collect();
        want.sort_unstable();
        p.element(i).coords.coords().is_empty() && p.covers(i) == want.as_slice()
    })
}

fn criterion_1() -> Check {
    let x = x22();
    let rep = Representation::from_matrix(x.clone());
    let t = arithmetic_tutte(&rep.matroid(), &rep.multiplicity_function()).map_err(|e| e.to_string())?;
    ensure(t.to_string() == "x^2 + 2*x + 5", || format!("arithmetic Tutte {t}"))?;
    let lg = LayerGroups::new(&x);
    let p = build_poset(lg.structure()).map_err(|e| e.to_string())?;
    ensure(p.f_vector() == big(&[1, 4, 8]), || format!("f = {:?}", p.f_vector()))?;
    ensure(p.h_vector() == big(&[1, 2, 5]), || format!("h = {:?}", p.h_vector()))?;

    // projection table, naming group elements by parallelepiped points
    let pts = [(0, 0), (-1, 1), (0, 1), (1, 1), (-1, 2), (0, 2), (1, 2), (0, 3)];
    let rows = [[0, 1, 0, 1, 1, 0, 1, 0], [0, 1, 1, 1, 0, 0, 0, 1]];
    let top = lg.parallelepiped_labels(es(&[1, 2]), None).map_err(|e| e.to_string())?;
    let mut got: Vec<Vec<BigInt>> = top.iter().map(|(v, _)| v.clone()).collect();
    got.sort();
    let mut want: Vec<Vec<BigInt>> = pts.iter().map(|&(a, b)| big(&[a, b])).collect();
    want.sort();
    ensure(got == want, || format!("parallelepiped points {got:?}"))?;
    for (k, keep) in [1usize, 2].into_iter().enumerate() {
        let labels = lg.parallelepiped_labels(es(&[keep]), None).map_err(|e| e.to_string())?;
        for (j, &(a, b)) in pts.iter().enumerate() {
            let g = lg.element_of(es(&[1, 2]), &big(&[a, b])).map_err(|e| e.to_string())?;
            let image = lg.structure().projection(es(&[1, 2]), 2 - keep).apply(&g);
            let name = labels.iter().find(|(_, h)| *h == image).map(|(v, _)| v.clone());
            ensure(name == Some(big(&[rows[k][j]])), || {
                format!("LG({{{keep}}}) image of ({a},{b}) is {name:?}, expected {}", rows[k][j])
            })?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let rep = Representation::from_matrix(x22());
    let g = cyclic_structure(&rep.matroid(), &rep.multiplicity_function()).map_err(|e| e.to_string())?;
    let cyc = build_poset(&g).map_err(|e| e.to_string())?;
    let lay = build_poset(&layer_structure(&x22())).map_err(|e| e.to_string())?;
    ensure(cyc.f_vector() == big(&[1, 4, 8]), || format!("f = {:?}", cyc.f_vector()))?;
    let zc = cyc.minimal_elements()[0];
    let zl = lay.minimal_elements()[0];
    ensure(cyc.is_cut_vertex(zc), || "0̂ is not a cut vertex of the cyclic poset".into())?;
    ensure(!lay.is_cut_vertex(zl), || "0̂ is a cut vertex of the layer poset".into())?;
    // rank-1 elements pair up, each pair covered by the same 4 cells
    let atoms = cyc.covered_by(zc).to_vec();
    let mut groups: Vec<Vec<usize>> = atoms.iter().map(|&a| cyc.covered_by(a).to_vec()).collect();
    groups.sort();
    groups.dedup();
    ensure(groups.len() == 2 && groups.iter().all(|g| g.len() == 4), || format!("cover sets {groups:?}"))
}

fn u22_cyclic() -> (Matroid, Multiplicity) {
    let u22 = Matroid::from_columns(&IntMatrix::identity(2));
    let m = Multiplicity::new(
        &u22,
        [(es(&[]), 1), (es(&[1]), 2), (es(&[2]), 2), (es(&[1, 2]), 2)].into_iter().collect(),
    )
    .unwrap();
    (u22, m)
}

fn criterion_3() -> Check {
    let (u22, m) = u22_cyclic();
    let p = build_poset(&cyclic_structure(&u22, &m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(p.h_vector() == big(&[1, 2, -1]), || format!("h = {:?}", p.h_vector()))?;
    let ideal = sr_ideal(&p).map_err(|e| e.to_string())?;
    let dims = hilbert_function(&ideal, 4);
    ensure(dims == [1, 4, 6, 8, 10], || format!("oracle {dims:?}"))?;
    ensure(verify_hilbert(&p, 5) == Ok(true), || "verify_hilbert failed".into())?;
    let report = check_axioms(&u22, &m).map_err(|e| e.to_string())?;
    ensure(!report.holds_p && report.holds_a1 && report.holds_a2, || format!("axioms: {report}"))?;
    let v = report.violations.iter().find(|v| v.sets == [ElemSet::EMPTY, es(&[1, 2])]);
    ensure(v.is_some_and(|v| v.values == big(&[-1])), || format!("violations: {:?}", report.violations))
}

fn criterion_4() -> Check {
    let rep = Representation::new(
        AmbientGroup::new(1, vec![3]).map_err(|e| e.to_string())?,
        IntMatrix::from_i64(&[&[2, 3], &[0, 0]]),
    )
    .map_err(|e| e.to_string())?;
    let mat = rep.matroid();
    let m = rep.multiplicity_function();
    let values: Vec<u64> = [es(&[]), es(&[1]), es(&[2]), es(&[1, 2])].iter().map(|s| m.get(*s).unwrap()).collect();
    ensure(values == [3, 6, 9, 3], || format!("m = {values:?}"))?;
    let t = arithmetic_tutte(&mat, &m).map_err(|e| e.to_string())?;
    ensure(t.to_string() == "3*x + 3*y + 9", || format!("arithmetic Tutte {t}"))?;
    let g = cyclic_structure(&mat, &m).map_err(|e| e.to_string())?;
    let red = torsion_free_reduction(&g);
    let orders: Vec<u64> = red.faces().iter().map(|s| red.group(*s).order()).collect();
    ensure(orders == [1, 2, 3], || format!("kernel orders {orders:?}"))?;
    let full = build_poset(&g).map_err(|e| e.to_string())?;
    let reduced = build_poset(&red).map_err(|e| e.to_string())?;
    ensure(verify_hilbert_scaled(&reduced, &full, 3, 5) == Ok(true), || "reduced Hilbert series".into())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..200 {
        let r = rng.random_range(1..=3);
        let n = rng.random_range(1..=4);
        let x = random_matrix(&mut rng, r, n);
        let fail = |what: &str| format!("case {case}, X = {x:?}: {what}");
        let g = layer_structure(&x);
        ensure(validate_structure(&g).is_valid(), || fail("structure invalid"))?;
        let p = build_poset(&g).map_err(|e| fail(&e.to_string()))?;
        ensure(p.components().len() == 1, || fail("more than one component"))?;
        let rep = Representation::from_matrix(x.clone());
        let mat = rep.matroid();
        let m = rep.multiplicity_function();
        let t = arithmetic_tutte(&mat, &m).map_err(|e| fail(&e.to_string()))?;
        ensure(p.f_polynomial() == t.specialize_y(1).shift(1), || fail("f-polynomial"))?;
        ensure(p.verify_simplicial() == Ok(true), || fail("not simplicial"))?;
        let d = p.rank() + 3;
        ensure(verify_hilbert(&p, d) == Ok(true), || fail("Hilbert series"))?;
        let report = check_axioms(&mat, &m).map_err(|e| fail(&e.to_string()))?;
        ensure(report.all_hold(), || fail(&format!("axioms: {report}")))?;
    }
    Ok(())
}

/// A multiplicity on the independent sets with `m(S) | m(S ∪ a)` and values
/// at most 12.
fn random_divisibility_chain(rng: &mut ChaCha8Rng, mat: &Matroid) -> Option<Multiplicity> {
    let mut values = std::collections::BTreeMap::new();
    for &s in mat.independent_sets() {
        let l = s.elems().map(|a| values[&s.remove(a)]).fold(1u64, num_integer::lcm);
        if l > 12 {
            return None;
        }
        let k = rng.random_range(1..=12 / l);
        // keep most chains short so the posets stay small
        let k = if rng.random_bool(0.5) { 1 } else { k };
        values.insert(s, l * k);
    }
    Multiplicity::new(mat, values).ok()
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut case = 0;
    while case < 100 {
        let r = rng.random_range(1..=3);
        let n = rng.random_range(1..=4);
        let mat = Matroid::from_columns(&random_matrix(&mut rng, r, n));
        let Some(m) = random_divisibility_chain(&mut rng, &mat) else { continue };
        case += 1;
        let fail = |what: &str| format!("case {case}, m = {:?}: {what}", m.values());
        let g = cyclic_structure(&mat, &m).map_err(|e| fail(&e.to_string()))?;
        let full = build_poset(&g).map_err(|e| fail(&e.to_string()))?;
        let comps = full.components();
        ensure(comps.len() as u64 == g.group(ElemSet::EMPTY).order(), || fail("component count"))?;
        for c in &comps {
            ensure(c.verify_simplicial() == Ok(true), || fail("component not simplicial"))?;
            ensure(c.f_vector() == comps[0].f_vector(), || fail("component f-vectors differ"))?;
        }
        let reduced = build_poset(&torsion_free_reduction(&g)).map_err(|e| fail(&e.to_string()))?;
        let c = m.get(ElemSet::EMPTY).unwrap();
        let d = full.rank() + 3;
        ensure(verify_hilbert_scaled(&reduced, &full, c, d) == Ok(true), || fail("reduced Hilbert series"))?;
    }
    Ok(())
}

/// `t^r T(1/t, 1) / (1 - t)^r` against the oracle, degrees `0..=r+3`.
fn classical_hilbert(p: &IndPoset, mat: &Matroid) -> Check {
    let r = mat.rank() as u32;
    let numerator = mat.tutte().specialize_y(1).reverse(r);
    let want = numerator.series_over_pole(r, r + 3);
    let ideal = sr_ideal(p).map_err(|e| e.to_string())?;
    let got: Vec<BigInt> = hilbert_function(&ideal, r as usize + 3).into_iter().map(BigInt::from).collect();
    ensure(got == want, || format!("oracle {got:?}, classical {want:?}"))?;
    ensure(hilbert_closed(p).numerator() == numerator, || "closed form".into())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..50 {
        let r = rng.random_range(1..=3);
        let n = rng.random_range(1..=4);
        let mat = Matroid::from_columns(&random_matrix(&mut rng, r, n));
        let g = cyclic_structure(&mat, &Multiplicity::constant_on(&mat, 1)).map_err(|e| e.to_string())?;
        let p = build_poset(&g).map_err(|e| e.to_string())?;
        ensure(is_face_poset(&p, mat.complex()), || format!("case {case}: cyclic poset is not the face poset"))?;
        classical_hilbert(&p, &mat).map_err(|e| format!("case {case} (cyclic): {e}"))?;

        let x = random_incidence(&mut rng);
        let rep = Representation::from_matrix(x.clone());
        let mat = rep.matroid();
        let m = rep.multiplicity_function();
        ensure(m.values().values().all(|&v| v == 1), || format!("case {case}: {x:?} has m ≠ 1"))?;
        let p = build_poset(&layer_structure(&x)).map_err(|e| e.to_string())?;
        ensure(is_face_poset(&p, mat.complex()), || format!("case {case}: layer poset is not the face poset"))?;
        classical_hilbert(&p, &mat).map_err(|e| format!("case {case} (layer): {e}"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut fixtures: Vec<IntMatrix> = (1..=4).map(IntMatrix::identity).collect();
    // directed K4 and a 4-cycle, vertex 0 dropped
    fixtures.push(IntMatrix::from_i64(&[
        &[1, 0, 0, -1, -1, 0],
        &[0, 1, 0, 1, 0, -1],
        &[0, 0, 1, 0, 1, 1],
    ]));
    fixtures.push(IntMatrix::from_i64(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 1, -1]]));
    fixtures.push(IntMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, 0]]));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    fixtures.extend((0..20).map(|_| random_incidence(&mut rng)));
    for x in fixtures {
        let rep = Representation::from_matrix(x.clone());
        let mat = rep.matroid();
        let t = arithmetic_tutte(&mat, &rep.multiplicity_function()).map_err(|e| e.to_string())?;
        ensure(t == mat.tutte(), || format!("{x:?}: arithmetic Tutte {t} ≠ Tutte {}", mat.tutte()))?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let z = |n| FinAbGroup::cyclic(n).unwrap();
    let hom = |a: u64, b: u64, img: u64| GroupHom::new(z(a), z(b), vec![GroupElem(vec![img])]).unwrap();
    let cx = SimplicialComplex::new(2, [ElemSet::EMPTY, es(&[1]), es(&[2]), es(&[1, 2])]).unwrap();
    let groups = [(ElemSet::EMPTY, z(3)), (es(&[1]), z(6)), (es(&[2]), z(9)), (es(&[1, 2]), z(3))]
        .into_iter()
        .collect();
    let proj = [
        // removing element 2 lands in G({1}), removing element 1 in G({2})
        ((es(&[1, 2]), 1), hom(3, 6, 2)),
        ((es(&[1, 2]), 0), hom(3, 9, 3)),
        ((es(&[1]), 0), hom(6, 3, 1)),
        ((es(&[2]), 1), hom(9, 3, 1)),
    ]
    .into_iter()
    .collect();
    let g = GroupStructure::from_parts(cx, groups, proj).map_err(|e| e.to_string())?;
    let report = validate_structure(&g);
    ensure(!report.is_valid(), || "structure accepted".into())?;
    let sq = report.first_failing_square().ok_or("no square diagnostic")?;
    let text = sq.to_string();
    ensure(
        matches!(sq, Diagnostic::NonCommutingSquare { base, .. } if base.is_empty()) && text.contains("{1,2}"),
        || format!("diagnostic: {text}"),
    )?;
    ensure(
        report.diagnostics.iter().any(|d| matches!(d, Diagnostic::NotSurjective { .. })),
        || "non-surjective maps not reported".into(),
    )?;
    ensure(build_poset(&g).is_err(), || "poset built from invalid structure".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("2x2 example: layer poset and projection table", criterion_1),
        ("2x2 example: cyclic poset differs from layer poset", criterion_2),
        ("U(2,2) with m = 1,2,2,2: Hilbert function and axiom (P)", criterion_3),
        ("torsion example and its torsion-free reduction", criterion_4),
        ("200 random layer structures", criterion_5),
        ("100 random weak quasi-arithmetic cyclic structures", criterion_6),
        ("classical degeneration on 50 random matroids", criterion_7),
        ("unimodular collapse of the arithmetic Tutte polynomial", criterion_8),
        ("non-commuting square rejected", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match f() {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.1}s)", k + 1, start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::collections::BTreeMap;

use arimat::arith::{arithmetic_tutte_at_y1, Multiplicity, Representation};
use arimat::exact_linalg::IntMatrix;
use arimat::gstruct::{cyclic_structure, layer_structure, torsion_free_reduction, validate_structure};
use arimat::matroid::Matroid;
use arimat::poset::build_poset;
use arimat::sr_ring::{hilbert_oracle, sr_ideal, verify_hilbert, verify_hilbert_scaled, GeneratorKind};
use arimat::subset::ElemSet;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(c, &rows)
        })
    })
}

/// A matroid with a multiplicity on its independent sets that increases by
/// factors drawn from `steps` along each chain.
fn weak_data() -> impl Strategy<Value = (Matroid, Multiplicity)> {
    (matrix(), prop::collection::vec(prop::sample::select(vec![1u64, 1, 1, 2, 3]), 16)).prop_filter_map(
        "values too large",
        |(x, steps)| {
            let mat = Matroid::from_columns(&x);
            let mut values = BTreeMap::new();
            for (k, &s) in mat.independent_sets().iter().enumerate() {
                let l = s.elems().map(|a| values[&s.remove(a)]).fold(1u64, num_integer::lcm);
                values.insert(s, l * steps[k % steps.len()]);
            }
            if values.values().any(|&v| v > 12) {
                return None;
            }
            let m = Multiplicity::new(&mat, values).ok()?;
            Some((mat, m))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn layer_poset_counts(x in matrix()) {
        let rep = Representation::from_matrix(x.clone());
        let mat = rep.matroid();
        let m = rep.multiplicity_function();
        let g = layer_structure(&x);
        prop_assert!(validate_structure(&g).is_valid());
        for &s in g.faces() {
            prop_assert_eq!(g.group(s).order(), m.get(s).unwrap());
        }
        let p = build_poset(&g).unwrap();
        prop_assert_eq!(p.components().len(), 1);
        for i in 0..p.len() {
            prop_assert_eq!(p.covers(i).len(), p.rho(i));
        }
        prop_assert_eq!(p.f_polynomial(), arithmetic_tutte_at_y1(&mat, &m).unwrap().shift(1));
        prop_assert_eq!(p.verify_simplicial(), Ok(true));
        let dot = p.export_dot();
        prop_assert_eq!(dot.matches(" -> ").count(), p.edge_count());
    }

    #[test]
    fn cyclic_components((mat, m) in weak_data()) {
        let g = cyclic_structure(&mat, &m).unwrap();
        prop_assert!(validate_structure(&g).is_valid());
        let p = build_poset(&g).unwrap();
        let c = m.get(ElemSet::EMPTY).unwrap();
        let comps = p.components();
        prop_assert_eq!(comps.len() as u64, c);
        for comp in &comps {
            prop_assert_eq!(comp.f_vector(), comps[0].f_vector());
            prop_assert_eq!(comp.verify_simplicial(), Ok(true));
        }
        let red = torsion_free_reduction(&g);
        prop_assert!(validate_structure(&red).is_valid());
        for &s in red.faces() {
            prop_assert_eq!(red.group(s).order() * c, m.get(s).unwrap());
        }
        let reduced = build_poset(&red).unwrap();
        prop_assert_eq!(reduced.f_vector(), comps[0].f_vector());
        prop_assert_eq!(verify_hilbert_scaled(&reduced, &p, c, p.rank() + 2), Ok(true));
    }

    #[test]
    fn meets_below_upper_bounds((mat, m) in weak_data()) {
        let g = torsion_free_reduction(&cyclic_structure(&mat, &m).unwrap());
        let p = build_poset(&g).unwrap();
        for a in 0..p.len() {
            for b in 0..p.len() {
                let ubs = p.minimal_upper_bounds(a, b);
                prop_assert_eq!(ubs.is_empty(), !p.has_common_upper_bound(a, b));
                if let Ok(mt) = p.meet(a, b) {
                    prop_assert!(p.le(mt, a) && p.le(mt, b));
                    for z in ubs {
                        prop_assert!(p.le(a, z) && p.le(b, z));
                        prop_assert_eq!(p.rho(z) + p.rho(mt), p.rho(a) + p.rho(b));
                    }
                }
            }
        }
    }

    #[test]
    fn ideals_are_homogeneous_and_match((mat, m) in weak_data()) {
        let g = torsion_free_reduction(&cyclic_structure(&mat, &m).unwrap());
        let p = build_poset(&g).unwrap();
        let ideal = sr_ideal(&p).unwrap();
        prop_assert!(ideal.is_homogeneous());
        prop_assert_eq!(ideal.generators().iter().filter(|g| g.kind == GeneratorKind::S3).count(), 1);
        prop_assert_eq!(hilbert_oracle(&ideal, 0), 1);
        prop_assert_eq!(hilbert_oracle(&ideal, 1), p.f_vector().get(1).map_or(0, |f| f.try_into().unwrap()));
        prop_assert_eq!(verify_hilbert(&p, p.rank() + 2), Ok(true));
    }

    #[test]
    fn face_posets_of_matroids(x in matrix()) {
        let mat = Matroid::from_columns(&x);
        let p = build_poset(&cyclic_structure(&mat, &Multiplicity::constant_on(&mat, 1)).unwrap()).unwrap();
        prop_assert_eq!(p.len(), mat.independent_sets().len());
        prop_assert_eq!(verify_hilbert(&p, p.rank() + 3), Ok(true));
    }
}

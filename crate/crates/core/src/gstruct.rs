//! Surjective finite abelian group structures on simplicial complexes.
//!
//! A structure assigns a finite abelian group `G(S)` to every face `S` and a
//! surjection `G(S ∪ {a}) → G(S)` to every pair of faces differing by one
//! element, such that the two ways around every square agree. Two
//! constructions are provided: layer groups of an integer matrix and cyclic
//! groups of a multiplicity function.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::abelian::{cyclic_projection, quotient_group, FinAbGroup, GroupElem, GroupHom, QuotientMap};
use crate::arith::{weak_violation, Multiplicity};
use crate::error::{Error, Result};
use crate::exact_linalg::{saturate, IntMatrix};
use crate::matroid::{Matroid, SimplicialComplex};
use crate::subset::ElemSet;

#[derive(Clone, Debug)]
pub struct GroupStructure {
    complex: SimplicialComplex,
    groups: Vec<FinAbGroup>,
    index: HashMap<ElemSet, usize>,
    // keyed by (S ∪ {a}, a); maps G(S ∪ {a}) → G(S)
    proj: HashMap<(ElemSet, usize), GroupHom>,
}

impl GroupStructure {
    /// Assembles a structure from explicit data without checking surjectivity
    /// or commutativity (see [`validate_structure`]). Every face needs a group
    /// and every one-element deletion inside the complex needs a map with
    /// matching domain and codomain.
    pub fn from_parts(
        complex: SimplicialComplex,
        groups: HashMap<ElemSet, FinAbGroup>,
        proj: HashMap<(ElemSet, usize), GroupHom>,
    ) -> Result<Self> {
        let mut gs = Vec::with_capacity(complex.faces().len());
        let mut index = HashMap::new();
        for (i, f) in complex.faces().iter().enumerate() {
            let g = groups
                .get(f)
                .ok_or_else(|| Error::MalformedStructure(format!("no group for face {f}")))?;
            gs.push(g.clone());
            index.insert(*f, i);
        }
        for f in complex.faces() {
            for a in f.elems() {
                let h = proj
                    .get(&(*f, a))
                    .ok_or_else(|| Error::MalformedStructure(format!("no map {f} -> {}", f.remove(a))))?;
                if h.domain() != &gs[index[f]] || h.codomain() != &gs[index[&f.remove(a)]] {
                    return Err(Error::MalformedStructure(format!(
                        "map {f} -> {} has the wrong domain or codomain",
                        f.remove(a)
                    )));
                }
            }
        }
        if let Some((f, _)) = proj.keys().find(|(f, a)| !index.contains_key(f) || !f.contains(*a)) {
            return Err(Error::MalformedStructure(format!("map from {f}, which is not a face")));
        }
        Ok(GroupStructure {
            complex,
            groups: gs,
            index,
            proj,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn faces(&self) -> &[ElemSet] {
        self.complex.faces()
    }

    pub fn group(&self, s: ElemSet) -> &FinAbGroup {
        &self.groups[self.index[&s]]
    }

    pub fn try_group(&self, s: ElemSet) -> Option<&FinAbGroup> {
        self.index.get(&s).map(|&i| &self.groups[i])
    }

    /// The map `G(upper) → G(upper \ {a})`.
    pub fn projection(&self, upper: ElemSet, a: usize) -> &GroupHom {
        &self.proj[&(upper, a)]
    }

    pub fn is_torsion_free(&self) -> bool {
        self.group(ElemSet::EMPTY).is_trivial()
    }

    /// `π_S(g) ∈ G(∅)`, deleting elements from the largest down.
    pub fn pi(&self, s: ElemSet, g: &GroupElem) -> GroupElem {
        let order: Vec<usize> = s.elems().collect::<Vec<_>>().into_iter().rev().collect();
        self.pi_along(s, &order, g)
    }

    /// `π_S(g)`, deleting the elements of `S` in the given order.
    pub fn pi_along(&self, s: ElemSet, order: &[usize], g: &GroupElem) -> GroupElem {
        assert_eq!(ElemSet::from_elems(order.iter().copied()), s);
        let mut cur = s;
        let mut x = g.clone();
        for &a in order {
            x = self.projection(cur, a).apply(&x);
            cur = cur.remove(a);
        }
        x
    }

    /// `π_S` as a homomorphism `G(S) → G(∅)`.
    pub fn pi_hom(&self, s: ElemSet) -> GroupHom {
        let mut h = GroupHom::identity(self.group(s));
        let mut cur = s;
        for a in s.elems().collect::<Vec<_>>().into_iter().rev() {
            h = self.projection(cur, a).compose(&h).expect("projections chain");
            cur = cur.remove(a);
        }
        h
    }
}

/// A failed condition found by [`validate_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NotSurjective {
        upper: ElemSet,
        removed: usize,
    },
    /// `G(S ∪ {a,b})` → `G(S)` differs along the two paths at `witness`.
    NonCommutingSquare {
        base: ElemSet,
        a: usize,
        b: usize,
        witness: GroupElem,
        via_a: GroupElem,
        via_b: GroupElem,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NotSurjective { upper, removed } => {
                write!(f, "map {upper} -> {} is not surjective", upper.remove(*removed))
            }
            Diagnostic::NonCommutingSquare {
                base,
                a,
                b,
                witness,
                via_a,
                via_b,
            } => write!(
                f,
                "square {} -> {} / {} -> {} does not commute: {witness} maps to {via_a} via {} but to {via_b} via {}",
                base.insert(*a).insert(*b),
                base.insert(*a),
                base.insert(*b),
                base,
                base.insert(*a),
                base.insert(*b),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn first_failing_square(&self) -> Option<&Diagnostic> {
        self.diagnostics
            .iter()
            .find(|d| matches!(d, Diagnostic::NonCommutingSquare { .. }))
    }
}

/// Checks that every projection is surjective and that every square commutes,
/// element by element.
pub fn validate_structure(g: &GroupStructure) -> StructureReport {
    let mut diagnostics = Vec::new();
    for &f in g.faces() {
        for a in f.elems() {
            if !g.projection(f, a).is_surjective() {
                diagnostics.push(Diagnostic::NotSurjective { upper: f, removed: a });
            }
        }
    }
    for &top in g.faces() {
        let els: Vec<usize> = top.elems().collect();
        for (i, &a) in els.iter().enumerate() {
            for &b in &els[i + 1..] {
                let base = top.remove(a).remove(b);
                // top → top\{b} = base∪{a} → base, and top → base∪{b} → base
                let pa = g.projection(base.insert(a), a).compose(g.projection(top, b)).unwrap();
                let pb = g.projection(base.insert(b), b).compose(g.projection(top, a)).unwrap();
                if let Some(w) = g.group(top).elements().into_iter().find(|w| pa.apply(w) != pb.apply(w)) {
                    diagnostics.push(Diagnostic::NonCommutingSquare {
                        base,
                        a,
                        b,
                        via_a: pa.apply(&w),
                        via_b: pb.apply(&w),
                        witness: w,
                    });
                }
            }
        }
    }
    StructureReport { diagnostics }
}

/// Layer groups `LG(S) = W(S) / I(S)` of an integer matrix `X ∈ Z^{r×N}`, where
/// `I(S) = X[S]^T Z^r ⊆ Z^S` and `W(S)` is its saturation.
#[derive(Clone, Debug)]
pub struct LayerGroups {
    x: IntMatrix,
    matroid: Matroid,
    quotients: HashMap<ElemSet, QuotientMap>,
    structure: GroupStructure,
}

impl LayerGroups {
    pub fn new(x: &IntMatrix) -> Self {
        let matroid = Matroid::from_columns(x);
        let mut quotients = HashMap::new();
        let mut groups = HashMap::new();
        for &s in matroid.independent_sets() {
            let (g, q) = layer_group(x, s);
            groups.insert(s, g);
            quotients.insert(s, q);
        }
        let mut proj = HashMap::new();
        for &upper in matroid.independent_sets() {
            let pos: Vec<usize> = upper.elems().collect();
            for (k, &a) in pos.iter().enumerate() {
                let lower = upper.remove(a);
                let qu = &quotients[&upper];
                let ql = &quotients[&lower];
                let images = (0..qu.group().rank())
                    .map(|i| {
                        let mut v = qu.generator_lift(i).to_vec();
                        v.remove(k);
                        ql.map(&v).expect("projection of W(S ∪ a) lies in W(S)")
                    })
                    .collect();
                let h = GroupHom::new(qu.group().clone(), ql.group().clone(), images)
                    .expect("coordinate projection maps I(S ∪ a) into I(S)");
                proj.insert((upper, a), h);
            }
        }
        let structure = GroupStructure::from_parts(matroid.complex().clone(), groups, proj)
            .expect("layer structure is complete");
        LayerGroups {
            x: x.clone(),
            matroid,
            quotients,
            structure,
        }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn structure(&self) -> &GroupStructure {
        &self.structure
    }

    pub fn into_structure(self) -> GroupStructure {
        self.structure
    }

    /// The layer-group element represented by a vector of `W(S) ⊆ Z^S`
    /// (coordinates ordered by the elements of `S`).
    pub fn element_of(&self, s: ElemSet, v: &[BigInt]) -> Result<GroupElem> {
        self.quotients[&s].map(v)
    }

    /// Lattice points of the half-open parallelepiped `{Σ λ_i b_i : λ_i ∈ [0,1)}`
    /// spanned by the columns of `basis`, paired with the layer-group elements
    /// they represent. `basis` must be a square basis of `I(S)`; by default the
    /// columns of `X[S]` are used when they qualify, otherwise the Hermite
    /// basis of `I(S)`.
    pub fn parallelepiped_labels(
        &self,
        s: ElemSet,
        basis: Option<&IntMatrix>,
    ) -> Result<Vec<(Vec<BigInt>, GroupElem)>> {
        let cols: Vec<usize> = s.elems().collect();
        let i_s = crate::exact_linalg::Lattice::from_generators(&self.x.select_cols(&cols).transpose());
        let spans = |b: &IntMatrix| {
            b.rows() == cols.len()
                && b.cols() == cols.len()
                && crate::exact_linalg::Lattice::from_generators(b) == i_s
        };
        let basis = match basis {
            Some(b) if spans(b) => b.clone(),
            Some(_) => {
                return Err(Error::InvalidStructure(format!(
                    "the given vectors do not form a basis of I({s})"
                )))
            }
            None => {
                let xs = self.x.select_cols(&cols);
                if spans(&xs) {
                    xs
                } else {
                    i_s.basis().clone()
                }
            }
        };
        let pts = parallelepiped_points(&basis);
        pts.into_iter()
            .map(|p| {
                let g = self.element_of(s, &p)?;
                Ok((p, g))
            })
            .collect()
    }
}

fn layer_group(x: &IntMatrix, s: ElemSet) -> (FinAbGroup, QuotientMap) {
    let cols: Vec<usize> = s.elems().collect();
    let gens = x.select_cols(&cols).transpose();
    quotient_group(&saturate(&gens), &gens).expect("I(S) has finite index in W(S)")
}

/// Integer points of the half-open parallelepiped spanned by the columns of a
/// nonsingular square matrix, sorted lexicographically by coordinates.
pub fn parallelepiped_points(basis: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = basis.rows();
    assert_eq!(n, basis.cols());
    if n == 0 {
        return vec![vec![]];
    }
    // bounding box of the closed parallelepiped
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let v = &basis[(i, j)];
            if v.is_negative() {
                lo[i] += v;
            } else {
                hi[i] += v;
            }
        }
    }
    let det = basis.determinant();
    assert!(!det.is_zero(), "degenerate parallelepiped");
    let adj = adjugate(basis);
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        // λ = adj * p / det must lie in [0, 1)
        let num = adj.mul_vec(&cur);
        let inside = num.iter().all(|v| {
            let (lv, d) = if det.is_negative() { (-v, -&det) } else { (v.clone(), det.clone()) };
            !lv.is_negative() && lv < d
        });
        if inside {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i].clone();
        }
    }
}

fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = a.select_rows(&rows).select_cols(&cols).determinant();
            adj[(i, j)] = if (i + j).is_even() { minor } else { -minor };
        }
    }
    adj
}

/// Layer-group structure `G_X` on the independence complex of `X`.
pub fn layer_structure(x: &IntMatrix) -> GroupStructure {
    LayerGroups::new(x).into_structure()
}

/// Cyclic structure `G_m(S) = Z/m(S)` with the projections sending 1 to 1.
pub fn cyclic_structure(matroid: &Matroid, m: &Multiplicity) -> Result<GroupStructure> {
    if let Some((s, t)) = weak_violation(matroid, m) {
        return Err(Error::NotWeaklyArithmetic {
            set: s.to_string(),
            lower: m.get(s).unwrap_or(0),
            upper_set: t.to_string(),
            upper: m.get(t).unwrap_or(0),
        });
    }
    let mut groups = HashMap::new();
    let mut proj = HashMap::new();
    for &s in matroid.independent_sets() {
        groups.insert(s, FinAbGroup::cyclic(m.get(s).unwrap())?);
        for a in s.elems() {
            let h = cyclic_projection(m.get(s).unwrap(), m.get(s.remove(a)).unwrap())?;
            proj.insert((s, a), h);
        }
    }
    GroupStructure::from_parts(matroid.complex().clone(), groups, proj)
}

/// Replaces each `G(S)` by the kernel of `π_S : G(S) → G(∅)`, with the
/// restricted projections.
pub fn torsion_free_reduction(g: &GroupStructure) -> GroupStructure {
    let kernels: HashMap<ElemSet, _> = g.faces().iter().map(|&s| (s, g.pi_hom(s).kernel())).collect();
    let mut groups = HashMap::new();
    let mut proj = HashMap::new();
    for &upper in g.faces() {
        let ku = &kernels[&upper];
        groups.insert(upper, ku.group.clone());
        for a in upper.elems() {
            let kl = &kernels[&upper.remove(a)];
            let p = g.projection(upper, a);
            let images = (0..ku.group.rank())
                .map(|i| {
                    let x = p.apply(&ku.embedding.apply(&ku.group.generator(i)));
                    kl.preimage(&x).expect("projection preserves the kernel of π")
                })
                .collect();
            let h = GroupHom::new(ku.group.clone(), kl.group.clone(), images).expect("restriction of a hom");
            proj.insert((upper, a), h);
        }
    }
    GroupStructure::from_parts(g.complex().clone(), groups, proj).expect("same shape as the input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Representation;

    fn es(l: &[usize]) -> ElemSet {
        ElemSet::from_labels(l).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn x22() -> IntMatrix {
        IntMatrix::from_i64(&[&[2, -2], &[2, 2]])
    }

    #[test]
    fn layer_groups_of_example() {
        let lg = LayerGroups::new(&x22());
        let g = lg.structure();
        assert!(g.group(ElemSet::EMPTY).is_trivial());
        assert_eq!(g.group(es(&[1])).order(), 2);
        assert_eq!(g.group(es(&[2])).order(), 2);
        assert_eq!(g.group(es(&[1, 2])).order(), 8);
        assert!(validate_structure(g).is_valid());

        // projection table over the parallelepiped representatives
        let pts = [(0, 0), (-1, 1), (0, 1), (1, 1), (-1, 2), (0, 2), (1, 2), (0, 3)];
        let to1 = [0, 1, 0, 1, 1, 0, 1, 0];
        let to2 = [0, 1, 1, 1, 0, 0, 0, 1];
        let labels1 = lg.parallelepiped_labels(es(&[1]), None).unwrap();
        let labels2 = lg.parallelepiped_labels(es(&[2]), None).unwrap();
        let name = |labels: &[(Vec<BigInt>, GroupElem)], e: &GroupElem| {
            labels.iter().find(|(_, g)| g == e).map(|(p, _)| p.clone()).unwrap()
        };
        for (k, (a, b)) in pts.iter().enumerate() {
            let c = lg.element_of(es(&[1, 2]), &big(&[*a, *b])).unwrap();
            let p1 = g.projection(es(&[1, 2]), 1).apply(&c);
            let p2 = g.projection(es(&[1, 2]), 0).apply(&c);
            assert_eq!(name(&labels1, &p1), big(&[to1[k]]));
            assert_eq!(name(&labels2, &p2), big(&[to2[k]]));
        }
        let top = lg.parallelepiped_labels(es(&[1, 2]), None).unwrap();
        let mut got: Vec<Vec<BigInt>> = top.into_iter().map(|(p, _)| p).collect();
        got.sort();
        let mut want: Vec<Vec<BigInt>> = pts.iter().map(|(a, b)| big(&[*a, *b])).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn unimodular_layer_structure_is_trivial() {
        let g = layer_structure(&IntMatrix::identity(2));
        assert!(g.faces().iter().all(|f| g.group(*f).is_trivial()));
    }

    #[test]
    fn cyclic_examples() {
        let x = Representation::from_matrix(x22());
        let m = x.multiplicity_function();
        let g = cyclic_structure(&x.matroid(), &m).unwrap();
        assert_eq!(g.group(es(&[1, 2])), &FinAbGroup::cyclic(8).unwrap());
        assert!(validate_structure(&g).is_valid());

        let u11 = Matroid::from_columns(&IntMatrix::identity(1));
        let bad = Multiplicity::new(&u11, [(es(&[]), 2), (es(&[1]), 3)].into_iter().collect()).unwrap();
        assert!(matches!(cyclic_structure(&u11, &bad), Err(Error::NotWeaklyArithmetic { .. })));

        let ones = Multiplicity::constant_on(&x.matroid(), 1);
        let g = cyclic_structure(&x.matroid(), &ones).unwrap();
        assert!(g.faces().iter().all(|f| g.group(*f).is_trivial()));
    }

    #[test]
    fn pi_on_torsion_structure() {
        let rep = Representation::new(
            crate::arith::AmbientGroup::new(1, vec![3]).unwrap(),
            IntMatrix::from_i64(&[&[2, 3], &[0, 0]]),
        )
        .unwrap();
        let mat = rep.matroid();
        let g = cyclic_structure(&mat, &rep.multiplicity_function()).unwrap();
        assert_eq!(g.pi(es(&[1]), &GroupElem(vec![1])), GroupElem(vec![1]));
        assert_eq!(g.pi(ElemSet::EMPTY, &GroupElem(vec![2])), GroupElem(vec![2]));

        let t = torsion_free_reduction(&g);
        assert!(t.group(ElemSet::EMPTY).is_trivial());
        assert_eq!(t.group(es(&[1])).order(), 2);
        assert_eq!(t.group(es(&[2])).order(), 3);
        assert!(validate_structure(&t).is_valid());
    }

    #[test]
    fn constant_multiplicity_reduces_to_trivial() {
        let mat = Matroid::from_columns(&IntMatrix::identity(2));
        let g = cyclic_structure(&mat, &Multiplicity::constant_on(&mat, 5)).unwrap();
        let t = torsion_free_reduction(&g);
        assert!(t.faces().iter().all(|f| t.group(*f).is_trivial()));
    }

    #[test]
    fn non_surjective_map_is_reported() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let cx = SimplicialComplex::new(1, [ElemSet::EMPTY, es(&[1])]).unwrap();
        let groups = [(ElemSet::EMPTY, z2.clone()), (es(&[1]), z2.clone())].into_iter().collect();
        let proj = [((es(&[1]), 0), GroupHom::zero(&z2, &z2))].into_iter().collect();
        let g = GroupStructure::from_parts(cx, groups, proj).unwrap();
        let rep = validate_structure(&g);
        assert!(!rep.is_valid());
        assert_eq!(rep.diagnostics[0], Diagnostic::NotSurjective { upper: es(&[1]), removed: 0 });
    }

    #[test]
    fn parallelepiped_point_count() {
        let b = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        assert_eq!(parallelepiped_points(&b).len(), 6);
        assert_eq!(parallelepiped_points(&IntMatrix::zeros(0, 0)), vec![Vec::<BigInt>::new()]);
    }
}

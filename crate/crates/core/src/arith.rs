//! Multiplicity functions, arithmetic Tutte polynomials, and checks of the
//! arithmetic-matroid axioms.
//!
//! A [`Representation`] is a list of elements of `Z^r ⊕ Z/q_1 ⊕ .. ⊕ Z/q_n`,
//! given as the columns of an integer matrix with the torsion coordinates in
//! the last `n` rows.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::abelian::quotient_group;
use crate::error::{Error, Result};
use crate::exact_linalg::{saturate, smith_normal_form, IntMatrix};
use crate::matroid::Matroid;
use crate::poly::{IntPolynomial, IntPolynomial2};
use crate::subset::ElemSet;

/// `Z^free_rank ⊕ Z/q_1 ⊕ .. ⊕ Z/q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AmbientGroup {
    pub fn free(rank: usize) -> Self {
        AmbientGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    /// The torsion factors need not form a divisibility chain; each must be ≥ 1.
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.contains(&0) {
            return Err(Error::InvalidMultiplicity("torsion orders must be positive".into()));
        }
        Ok(AmbientGroup { free_rank, torsion })
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    ambient: AmbientGroup,
    columns: IntMatrix,
}

impl Representation {
    /// Torsion coordinates are reduced into `[0, q_i)`.
    pub fn new(ambient: AmbientGroup, mut columns: IntMatrix) -> Result<Self> {
        if columns.rows() != ambient.dim() {
            return Err(Error::InvalidMatroid(format!(
                "columns have length {} but the ambient group needs {}",
                columns.rows(),
                ambient.dim()
            )));
        }
        for (k, &q) in ambient.torsion.iter().enumerate() {
            let i = ambient.free_rank + k;
            for j in 0..columns.cols() {
                let v = columns[(i, j)].mod_floor(&BigInt::from(q));
                columns[(i, j)] = v;
            }
        }
        Ok(Representation { ambient, columns })
    }

    /// A representation in a lattice `Z^r`.
    pub fn from_matrix(x: IntMatrix) -> Self {
        Representation {
            ambient: AmbientGroup::free(x.rows()),
            columns: x,
        }
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    pub fn columns(&self) -> &IntMatrix {
        &self.columns
    }

    pub fn ground_size(&self) -> usize {
        self.columns.cols()
    }

    /// The free part `X̄` (torsion rows dropped).
    pub fn free_part(&self) -> IntMatrix {
        self.columns.select_rows(&(0..self.ambient.free_rank).collect::<Vec<_>>())
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::from_columns(&self.free_part())
    }

    /// `m(A) = |G_A / <A>|`.
    ///
    /// Over a lattice this is the index of `<A>` in its saturation. With
    /// torsion it is the order of the torsion subgroup of `G / <A>`.
    pub fn multiplicity(&self, a: ElemSet) -> u64 {
        let cols: Vec<usize> = a.elems().collect();
        if self.ambient.torsion.is_empty() {
            let l = self.columns.select_cols(&cols);
            let (g, _) = quotient_group(&saturate(&l), &l).expect("a lattice has finite index in its saturation");
            return g.order();
        }
        torsion_of_cokernel(&self.relations(a))
    }

    /// Relation matrix presenting `G / <A>`.
    fn relations(&self, a: ElemSet) -> IntMatrix {
        let cols: Vec<usize> = a.elems().collect();
        let n = self.ambient.dim();
        let t = self.ambient.torsion.len();
        let mut tors = IntMatrix::zeros(n, t);
        for (k, &q) in self.ambient.torsion.iter().enumerate() {
            tors[(self.ambient.free_rank + k, k)] = BigInt::from(q);
        }
        self.columns.select_cols(&cols).hcat(&tors)
    }

    /// The total multiplicity function `A ↦ m_X(A)` on all subsets.
    pub fn multiplicity_function(&self) -> Multiplicity {
        let values = ElemSet::full(self.ground_size())
            .subsets()
            .into_iter()
            .map(|a| (a, self.multiplicity(a)))
            .collect();
        Multiplicity {
            domain: MultiplicityDomain::Total,
            values,
        }
    }
}

/// Order of the torsion part of the cokernel of a relation matrix: the
/// product of the nonzero Smith invariants.
pub fn torsion_of_cokernel(rel: &IntMatrix) -> u64 {
    smith_normal_form(rel)
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .product::<BigInt>()
        .to_u64()
        .expect("multiplicity overflow")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicityDomain {
    /// Defined on every subset of the ground set.
    Total,
    /// Defined on the independent sets only.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    domain: MultiplicityDomain,
    values: BTreeMap<ElemSet, u64>,
}

impl Multiplicity {
    /// Total if every subset of the ground set has a value, partial if every
    /// independent set does; anything less is rejected.
    pub fn new(matroid: &Matroid, values: BTreeMap<ElemSet, u64>) -> Result<Self> {
        if let Some((s, _)) = values.iter().find(|(_, v)| **v == 0) {
            return Err(Error::InvalidMultiplicity(format!("m({s}) = 0; values must be ≥ 1")));
        }
        let full = matroid.ground_set();
        if let Some(s) = values.keys().find(|s| !s.is_subset(full)) {
            return Err(Error::InvalidMultiplicity(format!("{s} is not a subset of the ground set")));
        }
        if let Some(s) = matroid.independent_sets().iter().find(|s| !values.contains_key(s)) {
            return Err(Error::InvalidMultiplicity(format!("no value for independent set {s}")));
        }
        let domain = if values.len() == 1 << matroid.ground_size() {
            MultiplicityDomain::Total
        } else {
            MultiplicityDomain::Partial
        };
        Ok(Multiplicity { domain, values })
    }

    /// `m ≡ c` on the independent sets.
    pub fn constant_on(matroid: &Matroid, c: u64) -> Self {
        Multiplicity {
            domain: MultiplicityDomain::Partial,
            values: matroid.independent_sets().iter().map(|s| (*s, c)).collect(),
        }
    }

    pub fn domain(&self) -> MultiplicityDomain {
        self.domain
    }

    pub fn is_total(&self) -> bool {
        self.domain == MultiplicityDomain::Total
    }

    pub fn get(&self, s: ElemSet) -> Option<u64> {
        self.values.get(&s).copied()
    }

    pub fn values(&self) -> &BTreeMap<ElemSet, u64> {
        &self.values
    }

    /// Restriction to the independent sets of `matroid`.
    pub fn restrict_to_independent(&self, matroid: &Matroid) -> Multiplicity {
        Multiplicity {
            domain: MultiplicityDomain::Partial,
            values: matroid
                .independent_sets()
                .iter()
                .filter_map(|s| self.get(*s).map(|v| (*s, v)))
                .collect(),
        }
    }

    fn at(&self, s: ElemSet) -> Result<u64> {
        self.get(s).ok_or_else(|| Error::PartialMultiplicity(s.to_string()))
    }
}

/// `Σ_{A ⊆ E} m(A) (x-1)^(r - rk A) (y-1)^(|A| - rk A)`.
///
/// Needs `m` on every subset; a partial multiplicity fails with
/// [`Error::PartialMultiplicity`] (use [`arithmetic_tutte_at_y1`]).
pub fn arithmetic_tutte(matroid: &Matroid, m: &Multiplicity) -> Result<IntPolynomial2> {
    let r = matroid.rank();
    let mut t = IntPolynomial2::zero();
    for a in matroid.ground_set().subsets() {
        let rk = matroid.rank_of(a);
        let v = m.at(a)?;
        t.add_shifted_monomial((r - rk) as u32, (a.len() - rk) as u32, &BigInt::from(v));
    }
    Ok(t)
}

/// The specialization `T_A(x, 1)`, which only involves independent sets and so
/// also works for partial multiplicities.
pub fn arithmetic_tutte_at_y1(matroid: &Matroid, m: &Multiplicity) -> Result<IntPolynomial> {
    let r = matroid.rank() as u32;
    let mut p = IntPolynomial::zero();
    for s in matroid.independent_sets() {
        let v = BigInt::from(m.at(*s)?);
        // (x - 1)^(r - |S|)
        let term = IntPolynomial::monomial(r - s.len() as u32, 1).shift(-1);
        p = p.add(&term.scale(&v));
    }
    Ok(p)
}

/// A molecule `[R, S]` with its decomposition `S = R ⊔ F ⊔ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Molecule {
    pub r: ElemSet,
    pub s: ElemSet,
    pub f: ElemSet,
    pub t: ElemSet,
}

/// All molecules, sorted by `(R, S)`.
///
/// `F` is the set of elements of `S \ R` that raise the rank of `R`; the
/// defining condition `rk A = rk R + |A ∩ F|` is then checked on every `A`
/// in the interval.
pub fn find_molecules(matroid: &Matroid) -> Vec<Molecule> {
    let mut out = Vec::new();
    let subsets = matroid.ground_set().subsets();
    let ranks: std::collections::HashMap<ElemSet, usize> =
        subsets.iter().map(|a| (*a, matroid.rank_of(*a))).collect();
    for &s in &subsets {
        for r in s.subsets() {
            let rr = ranks[&r];
            let free = s.difference(r);
            let f = ElemSet::from_elems(free.elems().filter(|&e| ranks[&r.insert(e)] == rr + 1));
            let t = free.difference(f);
            let ok = free
                .subsets()
                .into_iter()
                .all(|x| ranks[&r.union(x)] == rr + x.intersection(f).len());
            if ok {
                out.push(Molecule { r, s, f, t });
            }
        }
    }
    out.sort();
    out
}

/// `ρ(R, S) = (-1)^|T| Σ_{A ∈ [R,S]} (-1)^(|S| - |A|) m(A)`.
pub fn molecule_rho(mol: &Molecule, m: &Multiplicity) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for x in mol.s.difference(mol.r).subsets() {
        let a = mol.r.union(x);
        let v = BigInt::from(m.at(a)?);
        if (mol.s.len() - a.len()).is_multiple_of(2) {
            acc += v;
        } else {
            acc -= v;
        }
    }
    if mol.t.len() % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    P,
    A1,
    A2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::P => "(P)",
            Axiom::A1 => "(A1)",
            Axiom::A2 => "(A2)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub sets: Vec<ElemSet>,
    pub values: Vec<BigInt>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub holds_p: bool,
    pub holds_a1: bool,
    pub holds_a2: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.holds_p && self.holds_a1 && self.holds_a2
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "holds" } else { "VIOLATED" };
        writeln!(f, "(P): {}", yn(self.holds_p))?;
        writeln!(f, "(A1): {}", yn(self.holds_a1))?;
        writeln!(f, "(A2): {}", yn(self.holds_a2))?;
        for v in &self.violations {
            writeln!(f, "violation {}: {}", v.axiom, v.detail)?;
        }
        Ok(())
    }
}

/// Checks (P) on every molecule, (A1) on every pair `(A, e)` and (A2) on every
/// molecule. Requires a total multiplicity.
pub fn check_axioms(matroid: &Matroid, m: &Multiplicity) -> Result<AxiomReport> {
    if !m.is_total() {
        let missing = matroid
            .ground_set()
            .subsets()
            .into_iter()
            .find(|a| m.get(*a).is_none())
            .unwrap();
        return Err(Error::PartialMultiplicity(missing.to_string()));
    }
    let mut violations = Vec::new();
    let molecules = find_molecules(matroid);
    for mol in &molecules {
        let rho = molecule_rho(mol, m)?;
        if rho.is_negative() {
            violations.push(Violation {
                axiom: Axiom::P,
                sets: vec![mol.r, mol.s],
                values: vec![rho.clone()],
                detail: format!("R={} S={} F={} T={}: rho = {rho} < 0", mol.r, mol.s, mol.f, mol.t),
            });
        }
    }
    for a in matroid.ground_set().subsets() {
        let ma = m.at(a)?;
        for e in matroid.ground_set().difference(a).elems() {
            let ae = a.insert(e);
            let mae = m.at(ae)?;
            let (small, big, ok) = if matroid.rank_of(ae) == matroid.rank_of(a) {
                (mae, ma, ma % mae == 0)
            } else {
                (ma, mae, mae % ma == 0)
            };
            if !ok {
                violations.push(Violation {
                    axiom: Axiom::A1,
                    sets: vec![a, ae],
                    values: vec![ma.into(), mae.into()],
                    detail: format!("A={a}, e={}: {small} does not divide {big}", e + 1),
                });
            }
        }
    }
    for mol in &molecules {
        let lhs = BigInt::from(m.at(mol.r)?) * m.at(mol.s)?;
        let rhs = BigInt::from(m.at(mol.r.union(mol.f))?) * m.at(mol.r.union(mol.t))?;
        if lhs != rhs {
            violations.push(Violation {
                axiom: Axiom::A2,
                sets: vec![mol.r, mol.s],
                values: vec![lhs.clone(), rhs.clone()],
                detail: format!("R={} S={}: m(R)m(S) = {lhs} but m(R∪F)m(R∪T) = {rhs}", mol.r, mol.s),
            });
        }
    }
    let has = |ax: Axiom| violations.iter().any(|v| v.axiom == ax);
    Ok(AxiomReport {
        holds_p: !has(Axiom::P),
        holds_a1: !has(Axiom::A1),
        holds_a2: !has(Axiom::A2),
        violations,
    })
}

/// First independent pair `(S, S ∪ {x})` with `m(S) ∤ m(S ∪ {x})`.
pub fn weak_violation(matroid: &Matroid, m: &Multiplicity) -> Option<(ElemSet, ElemSet)> {
    let indep: HashSet<ElemSet> = matroid.independent_sets().iter().copied().collect();
    for &s in matroid.independent_sets() {
        for x in matroid.ground_set().difference(s).elems() {
            let t = s.insert(x);
            if !indep.contains(&t) {
                continue;
            }
            match (m.get(s), m.get(t)) {
                (Some(a), Some(b)) if b % a == 0 => {}
                _ => return Some((s, t)),
            }
        }
    }
    None
}

/// Whether `m(S) | m(S ∪ {x})` whenever both sets are independent.
pub fn validate_weak(matroid: &Matroid, m: &Multiplicity) -> bool {
    weak_violation(matroid, m).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(l: &[usize]) -> ElemSet {
        ElemSet::from_labels(l).unwrap()
    }

    fn x22() -> Representation {
        Representation::from_matrix(IntMatrix::from_i64(&[&[2, -2], &[2, 2]]))
    }

    fn torsion_rep() -> Representation {
        Representation::new(
            AmbientGroup::new(1, vec![3]).unwrap(),
            IntMatrix::from_i64(&[&[2, 3], &[0, 0]]),
        )
        .unwrap()
    }

    fn mult(matroid: &Matroid, vals: &[(&[usize], u64)]) -> Multiplicity {
        Multiplicity::new(matroid, vals.iter().map(|(s, v)| (es(s), *v)).collect()).unwrap()
    }

    #[test]
    fn multiplicities_of_example_matrix() {
        let x = x22();
        let got: Vec<u64> = [&[][..], &[1], &[2], &[1, 2]].iter().map(|s| x.multiplicity(es(s))).collect();
        assert_eq!(got, [1, 2, 2, 8]);
    }

    #[test]
    fn multiplicities_with_torsion() {
        let x = torsion_rep();
        let got: Vec<u64> = [&[][..], &[1], &[2], &[1, 2]].iter().map(|s| x.multiplicity(es(s))).collect();
        assert_eq!(got, [3, 6, 9, 3]);
        assert_eq!(x.matroid().independent_sets(), &[es(&[]), es(&[1]), es(&[2])]);
    }

    #[test]
    fn unimodular_multiplicity_is_one() {
        let x = Representation::from_matrix(IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]));
        assert!(x.multiplicity_function().values().values().all(|&v| v == 1));
    }

    #[test]
    fn arithmetic_tutte_examples() {
        let x = x22();
        let t = arithmetic_tutte(&x.matroid(), &x.multiplicity_function()).unwrap();
        assert_eq!(t.to_string(), "x^2 + 2*x + 5");

        let x = torsion_rep();
        let t = arithmetic_tutte(&x.matroid(), &x.multiplicity_function()).unwrap();
        assert_eq!(t.to_string(), "3*x + 3*y + 9");

        let u22 = Matroid::from_columns(&IntMatrix::identity(2));
        let m = mult(&u22, &[(&[], 1), (&[1], 2), (&[2], 2), (&[1, 2], 2)]);
        assert_eq!(arithmetic_tutte(&u22, &m).unwrap().to_string(), "x^2 + 2*x - 1");
    }

    #[test]
    fn partial_multiplicity_only_at_y1() {
        let x = torsion_rep();
        let mat = x.matroid();
        let partial = x.multiplicity_function().restrict_to_independent(&mat);
        assert!(matches!(arithmetic_tutte(&mat, &partial), Err(Error::PartialMultiplicity(_))));
        assert_eq!(
            arithmetic_tutte_at_y1(&mat, &partial).unwrap(),
            IntPolynomial::from_ascending(&[12, 3])
        );
    }

    #[test]
    fn molecules() {
        let u22 = Matroid::from_columns(&IntMatrix::identity(2));
        let mols = find_molecules(&u22);
        assert_eq!(mols.len(), 9);
        assert!(mols.iter().all(|m| m.t.is_empty()));

        let parallel = Matroid::from_columns(&IntMatrix::from_i64(&[&[1, 1]]));
        let m = find_molecules(&parallel)
            .into_iter()
            .find(|m| m.r == es(&[1]) && m.s == es(&[1, 2]))
            .unwrap();
        assert_eq!((m.f.len(), m.t.len()), (0, 1));
        assert!(!find_molecules(&parallel).iter().any(|m| m.r.is_empty() && m.s == es(&[1, 2])));

        for m in find_molecules(&parallel) {
            if m.r == m.s {
                assert!(m.f.is_empty() && m.t.is_empty());
            }
        }
    }

    #[test]
    fn axioms_of_examples() {
        let x = x22();
        let rep = check_axioms(&x.matroid(), &x.multiplicity_function()).unwrap();
        assert!(rep.all_hold(), "{rep}");

        let u22 = Matroid::from_columns(&IntMatrix::identity(2));
        let m = mult(&u22, &[(&[], 1), (&[1], 2), (&[2], 2), (&[1, 2], 2)]);
        let rep = check_axioms(&u22, &m).unwrap();
        assert!(!rep.holds_p && rep.holds_a1 && rep.holds_a2);
        let v = &rep.violations[0];
        assert_eq!(v.sets, vec![es(&[]), es(&[1, 2])]);
        assert_eq!(v.values, vec![BigInt::from(-1)]);

        let ones = mult(&u22, &[(&[], 1), (&[1], 1), (&[2], 1), (&[1, 2], 1)]);
        assert!(check_axioms(&u22, &ones).unwrap().all_hold());
    }

    #[test]
    fn weak_validation() {
        let x = x22();
        assert!(validate_weak(&x.matroid(), &x.multiplicity_function()));
        let u22 = Matroid::from_columns(&IntMatrix::identity(2));
        assert!(validate_weak(&u22, &mult(&u22, &[(&[], 1), (&[1], 2), (&[2], 2), (&[1, 2], 2)])));
        let u11 = Matroid::from_columns(&IntMatrix::identity(1));
        assert!(!validate_weak(&u11, &mult(&u11, &[(&[], 2), (&[1], 3)])));
    }
}

//! Finite abelian groups in invariant-factor form, their elements and
//! homomorphisms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{integer_kernel, smith_normal_form, IntMatrix, Lattice};

/// A finite abelian group `Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
///
/// Factors equal to 1 are dropped on construction, so two groups are
/// isomorphic exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

/// An element of a [`FinAbGroup`], one coordinate per invariant factor, each
/// reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElem(pub Vec<u64>);

impl GroupElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    /// `Z/nZ`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_invariant_factors(vec![n])
    }

    /// Accepts a divisibility chain, possibly containing ones.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InfiniteQuotient);
        }
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::IllDefined(format!(
                    "invariant factors {} and {} do not form a divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(FinAbGroup { factors })
    }

    /// Normalizes an arbitrary direct sum `Z/n_1 ⊕ ... ⊕ Z/n_k`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InfiniteQuotient);
        }
        let k = orders.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, &n) in orders.iter().enumerate() {
            rel[(i, i)] = BigInt::from(n);
        }
        let (g, _) = quotient_group(&IntMatrix::identity(k), &rel)?;
        Ok(g)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.factors.len()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut g = self.zero();
        g.0[i] = 1;
        g
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(c, d)| c < d)
    }

    /// Reduces an arbitrary integer coordinate vector into the group.
    pub fn reduce(&self, coords: &[BigInt]) -> GroupElem {
        assert_eq!(coords.len(), self.factors.len());
        GroupElem(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), &d)| ((*x as u128 + *y as u128) % d as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(a.0.iter().zip(&self.factors).map(|(x, &d)| (d - x) % d).collect())
    }

    pub fn scale(&self, k: u64, a: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, &d)| ((*x as u128 * k as u128) % d as u128) as u64)
                .collect(),
        )
    }

    /// All elements, in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<GroupElem> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(GroupElem(cur.clone()));
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of `g` in [`FinAbGroup::elements`].
    pub fn index_of(&self, g: &GroupElem) -> usize {
        let mut idx = 0usize;
        for (c, &d) in g.0.iter().zip(&self.factors) {
            idx = idx * d as usize + *c as usize;
        }
        idx
    }

    fn as_big(g: &GroupElem) -> Vec<BigInt> {
        g.0.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// The relation lattice `diag(d_i)` as a matrix.
    fn relations(&self) -> IntMatrix {
        let k = self.factors.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &d) in self.factors.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Coordinate map from an ambient lattice onto the finite quotient
/// `ambient / sub` produced by [`quotient_group`].
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ambient: Lattice,
    group: FinAbGroup,
    // rows of the left Smith transform that survive (one per invariant factor)
    rows: Vec<Vec<BigInt>>,
    // ambient vectors lifting the standard generators
    lifts: Vec<Vec<BigInt>>,
}

impl QuotientMap {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    /// Image of an ambient-lattice vector in the quotient.
    pub fn map(&self, v: &[BigInt]) -> Result<GroupElem> {
        let c = self.ambient.coordinates(v).ok_or(Error::NotInLattice)?;
        let coords: Vec<BigInt> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum())
            .collect();
        Ok(self.group.reduce(&coords))
    }

    /// A representative vector in the ambient lattice.
    pub fn lift(&self, g: &GroupElem) -> Vec<BigInt> {
        let n = self.ambient.ambient_dim();
        let mut v = vec![BigInt::zero(); n];
        for (c, l) in g.0.iter().zip(&self.lifts) {
            if *c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(l) {
                *x += BigInt::from(*c) * y;
            }
        }
        v
    }

    pub fn generator_lift(&self, i: usize) -> &[BigInt] {
        &self.lifts[i]
    }
}

/// Quotient of the lattice spanned by the columns of `ambient` by the
/// sublattice spanned by the columns of `sub`.
///
/// Returns the group in invariant-factor form together with the coordinate
/// map; the kernel of that map is exactly the sublattice.
pub fn quotient_group(ambient: &IntMatrix, sub: &IntMatrix) -> Result<(FinAbGroup, QuotientMap)> {
    assert_eq!(ambient.rows(), sub.rows(), "ambient and sub live in different spaces");
    let lattice = Lattice::from_generators(ambient);
    let a = lattice.rank();
    // sub expressed in ambient coordinates
    let mut c = IntMatrix::zeros(a, sub.cols());
    for j in 0..sub.cols() {
        let coords = lattice.coordinates(&sub.column(j)).ok_or(Error::NotInLattice)?;
        for (i, x) in coords.into_iter().enumerate() {
            c[(i, j)] = x;
        }
    }
    let snf = smith_normal_form(&c);
    if snf.rank() < a {
        return Err(Error::InfiniteQuotient);
    }
    let diag = snf.diagonal();
    let mut factors = Vec::new();
    let mut rows = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        factors.push(d.to_u64().ok_or(Error::GroupTooLarge)?);
        rows.push(snf.u.row(i));
        lifts.push(lattice.basis().mul_vec(&snf.u_inv.column(i)));
    }
    let group = FinAbGroup::from_invariant_factors(factors)?;
    Ok((
        group.clone(),
        QuotientMap {
            ambient: lattice,
            group,
            rows,
            lifts,
        },
    ))
}

/// A homomorphism between finite abelian groups, stored as the images of the
/// standard generators of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    images: Vec<GroupElem>,
}

impl GroupHom {
    /// Builds the hom sending generator `i` of `domain` to `images[i]`.
    ///
    /// Fails with [`Error::IllDefined`] unless `d_i * images[i] = 0` for every
    /// invariant factor `d_i` of the domain.
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, images: Vec<GroupElem>) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::IllDefined(format!(
                "{} generator images given for a domain with {} generators",
                images.len(),
                domain.rank()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if !codomain.contains(img) {
                return Err(Error::IllDefined(format!("image {img} is not an element of {codomain}")));
            }
            let d = domain.factors[i];
            if codomain.scale(d, img) != codomain.zero() {
                return Err(Error::IllDefined(format!(
                    "generator {i} has order {d} but its image {img} is not killed by {d}"
                )));
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let images = (0..g.rank()).map(|i| g.generator(i)).collect();
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            images,
        }
    }

    pub fn zero(domain: &FinAbGroup, codomain: &FinAbGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images: vec![codomain.zero(); domain.rank()],
        }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[GroupElem] {
        &self.images
    }

    pub fn apply(&self, g: &GroupElem) -> GroupElem {
        let mut acc = self.codomain.zero();
        for (c, img) in g.0.iter().zip(&self.images) {
            if *c != 0 {
                acc = self.codomain.add(&acc, &self.codomain.scale(*c, img));
            }
        }
        acc
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.codomain != self.domain {
            return Err(Error::IllDefined(format!(
                "cannot compose: {} is not {}",
                first.codomain, self.domain
            )));
        }
        Ok(GroupHom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            images: first.images.iter().map(|g| self.apply(g)).collect(),
        })
    }

    /// Integer matrix of the hom on coordinates: column `i` holds the image of
    /// generator `i`.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.codomain.rank(), self.domain.rank());
        for (j, img) in self.images.iter().enumerate() {
            for (i, &c) in img.0.iter().enumerate() {
                m[(i, j)] = BigInt::from(c);
            }
        }
        m
    }

    /// Order of the image, as `|codomain| / [codomain : image]`.
    pub fn image_order(&self) -> u64 {
        // the image lattice is spanned by the hom matrix together with the
        // codomain relations; its index in Z^l is the cokernel order
        let gens = self.matrix().hcat(&self.codomain.relations());
        let (coker, _) = quotient_group(&IntMatrix::identity(self.codomain.rank()), &gens)
            .expect("codomain relations have full rank");
        self.codomain.order() / coker.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.codomain.order()
    }

    pub fn kernel(&self) -> Kernel {
        let k = self.domain.rank();
        let l = self.codomain.rank();
        // x in the kernel lattice  <=>  M x + E y = 0 for some y
        let a = self.matrix().hcat(&self.codomain.relations());
        let ker = integer_kernel(&a);
        let gens = ker.select_rows(&(0..k).collect::<Vec<_>>());
        let gens = if gens.cols() == 0 { IntMatrix::zeros(k, 0) } else { gens };
        debug_assert_eq!(a.cols(), k + l);
        let (group, coords) =
            quotient_group(&gens, &self.domain.relations()).expect("domain relations lie in the kernel lattice");
        let images = (0..group.rank())
            .map(|i| self.domain.reduce(coords.generator_lift(i)))
            .collect();
        let embedding = GroupHom {
            domain: group.clone(),
            codomain: self.domain.clone(),
            images,
        };
        Kernel {
            group,
            embedding,
            coords,
        }
    }
}

/// Kernel of a [`GroupHom`] with its inclusion into the domain.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub group: FinAbGroup,
    pub embedding: GroupHom,
    coords: QuotientMap,
}

impl Kernel {
    /// The kernel element mapping to `g` under the embedding, if `g` lies in
    /// the kernel.
    pub fn preimage(&self, g: &GroupElem) -> Option<GroupElem> {
        self.coords.map(&FinAbGroup::as_big(g)).ok()
    }
}

/// Builds a hom from generator images; see [`GroupHom::new`].
pub fn hom_from_vector_map(
    domain: &FinAbGroup,
    codomain: &FinAbGroup,
    generator_images: Vec<GroupElem>,
) -> Result<GroupHom> {
    GroupHom::new(domain.clone(), codomain.clone(), generator_images)
}

/// The hom `Z/m -> Z/n` sending 1 to 1; requires `n | m`.
pub fn cyclic_projection(m: u64, n: u64) -> Result<GroupHom> {
    let dom = FinAbGroup::cyclic(m)?;
    let cod = FinAbGroup::cyclic(n)?;
    let images = if dom.is_trivial() {
        vec![]
    } else if cod.is_trivial() {
        vec![cod.zero()]
    } else {
        vec![cod.generator(0)]
    };
    GroupHom::new(dom, cod, images)
}

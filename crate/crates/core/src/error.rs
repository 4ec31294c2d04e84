use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quotient is infinite: the sublattice does not have finite index")]
    InfiniteQuotient,
    #[error("vector is not in the ambient lattice")]
    NotInLattice,
    #[error("group order does not fit in 64 bits")]
    GroupTooLarge,
    #[error("homomorphism is not well defined: {0}")]
    IllDefined(String),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("simplicial complex is empty")]
    EmptyComplex,
    #[error("multiplicity is only defined on independent sets; {0} is dependent")]
    PartialMultiplicity(String),
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
    #[error("multiplicity is not weakly arithmetic: m({set}) = {lower} does not divide m({upper_set}) = {upper}")]
    NotWeaklyArithmetic {
        set: String,
        lower: u64,
        upper_set: String,
        upper: u64,
    },
    #[error("malformed group structure: {0}")]
    MalformedStructure(String),
    #[error("not a surjective finite abelian group structure: {0}")]
    InvalidStructure(String),
    #[error("malformed poset: {0}")]
    MalformedPoset(String),
    #[error("poset has no unique minimal element")]
    NoUniqueMin,
    #[error("elements have no common upper bound")]
    NoUpperBound,
    #[error("meet is not unique; the poset is not simplicial")]
    NonUniqueMeet,
    #[error("poset is not simplicial")]
    NotSimplicial,
    #[error("h-polynomial is not divisible by {0}")]
    NotDivisible(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

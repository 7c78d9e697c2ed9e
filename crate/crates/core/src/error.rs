use crate::rootsys::Weight;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Weight),
    #[error("dominance loop did not terminate for {0:?}")]
    NonTermination(Weight),
    #[error("vectors are linearly dependent")]
    DependentSet,
    #[error("resource limit exceeded for {what}: {estimate} > {limit}")]
    ResourceLimit {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },
    #[error("weights {0:?} and {1:?} lie in different cosets of the root lattice")]
    DifferentCoset(Weight, Weight),
    #[error("dimension error: {0}")]
    DimensionError(String),
    #[error("bad deformation parameter: {0}")]
    BadParam(String),
    #[error("stabilization exceeded {0} steps")]
    StepLimit(u64),
    #[error("stable point {0:?} has no label in the inversion table")]
    UnmatchedStablePoint(Weight),
    #[error("no integer polynomial of degree <= {degree} fits the samples for {weight:?}")]
    NonPolynomialFit { weight: Weight, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

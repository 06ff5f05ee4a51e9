use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),
    #[error("lambda * conj(lambda) != 1")]
    InvalidLambda,
    #[error("involution axioms fail: {0}")]
    InvalidInvolution(String),
    #[error("enumeration budget exceeded ({needed} > {budget})")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("long root parameter outside the twisted form parameter")]
    FormParamViolation,
    #[error("form parameter is not contained in Lambda_max")]
    InvalidFormParam,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("vector has nonzero (-1)-coordinate")]
    BadVector,
    #[error("matrix is not a member of the group")]
    NotMember,
    #[error("guard failed: {0}")]
    GuardFailed(String),
    #[error("bucket expansion mismatch: {0}")]
    ExpansionMismatch(String),
    #[error("wrong group context: {0}")]
    WrongGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;

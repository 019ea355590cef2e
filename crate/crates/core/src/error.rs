use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("tower depth exceeds 3")]
    TowerTooDeep,
    #[error("zero element")]
    ZeroElement,
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("negative valuation")]
    NegativeValuation,
    #[error("dyadic place")]
    DyadicPlace,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("factorization limit exceeded for {0}")]
    FactorizationLimit(String),
    #[error("degenerate form")]
    DegenerateForm,
    #[error("form is not simply degenerate at the valuation")]
    NotSimpleDegeneration,
    #[error("entries are not integral at the valuation")]
    NonIntegralEntries,
    #[error("q(v) is not a unit")]
    NonUnitValue,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("rank {0} out of range")]
    RankOutOfRange(usize),
    #[error("similarity contract violated")]
    ContractViolation,
    #[error("matrix is not in the Lie algebra")]
    NotInLieAlgebra,
    #[error("neither slot lies in the base field")]
    SlotNotDescended,
    #[error("zero slot")]
    ZeroSlot,
    #[error("discriminant has even valuation")]
    EvenDiscValuation,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("certificate incomplete: {0}")]
    CertificateIncomplete(String),
    #[error("cubic is not contained in the plane ideal")]
    PlaneNotContained,
    #[error("determinant vanishes identically")]
    GenericallyDegenerate,
    #[error("H is singular")]
    SingularH,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::CharacteristicTwo => "CharacteristicTwo",
            Error::NotPrime(_) => "NotPrime",
            Error::TowerTooDeep => "TowerTooDeep",
            Error::ZeroElement => "ZeroElement",
            Error::UnsupportedDomain(_) => "UnsupportedDomain",
            Error::NegativeValuation => "NegativeValuation",
            Error::DyadicPlace => "DyadicPlace",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::FactorizationLimit(_) => "FactorizationLimit",
            Error::DegenerateForm => "DegenerateForm",
            Error::NotSimpleDegeneration => "NotSimpleDegeneration",
            Error::NonIntegralEntries => "NonIntegralEntries",
            Error::NonUnitValue => "NonUnitValue",
            Error::InvalidWitness(_) => "InvalidWitness",
            Error::DecompositionFailure(_) => "DecompositionFailure",
            Error::RankOutOfRange(_) => "RankOutOfRange",
            Error::ContractViolation => "ContractViolation",
            Error::NotInLieAlgebra => "NotInLieAlgebra",
            Error::SlotNotDescended => "SlotNotDescended",
            Error::ZeroSlot => "ZeroSlot",
            Error::EvenDiscValuation => "EvenDiscValuation",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::CertificateIncomplete(_) => "CertificateIncomplete",
            Error::PlaneNotContained => "PlaneNotContained",
            Error::GenericallyDegenerate => "GenericallyDegenerate",
            Error::SingularH => "SingularH",
            Error::BudgetExhausted => "BudgetExhausted",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to incompatible field towers")]
    ContextMismatch,
    #[error("polynomial {0} is not irreducible over the current field")]
    NotIrreducible(String),
    #[error("field tower depth would exceed the cap of {cap}")]
    TowerDepthExceeded { cap: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the factorization cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("blow-up center does not lie on the divisor")]
    CenterNotOnDivisor,
    #[error("germ is not reduced")]
    NonReduced,
    #[error("field extension failed: {0}")]
    FieldExtensionFailure(String),
    #[error("unknown exceptional curve {0}")]
    CurveUnknown(usize),
    #[error("germs share a common component")]
    CommonComponent,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("projectivized tangent cone is not reduced")]
    TangentConeNotReduced,
    #[error("not superisolated: singular point {0} of the tangent cone lies on {{f_(d+1) = 0}}")]
    NotSuperisolated(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("inconsistent divisor: {0}")]
    InconsistentDivisor(String),
    #[error("unknown tangent-cone component {0}")]
    ComponentUnknown(usize),
    #[error("function vanishes identically on the surface")]
    ZeroOnComponent,
    #[error("genericity alarm: {0}")]
    GenericityAlarm(String),
    #[error("base points of the polar curve need more than {cap} extra blow-ups")]
    BasePointLimit { cap: usize },
    #[error("schema version {found} does not match expected {expected}")]
    SchemaVersionMismatch { found: u64, expected: u64 },
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field of order {order} exceeds the supported range (q^2 <= 1024)")]
    FieldTooLarge { order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields (orders {left} and {right})")]
    MixedFields { left: u16, right: u16 },
    #[error("element index {index} out of range for a field of order {order}")]
    ElementOutOfRange { index: u32, order: u16 },
    #[error("field descriptor does not match the canonical construction for q = {q}")]
    DescriptorMismatch { q: u16 },

    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    CoincidentPoints,
    #[error("the three points are collinear")]
    CollinearPoints,
    #[error("PG(3, {order}) is too large to enumerate")]
    GeometryTooLarge { order: u16 },

    #[error("matrix is not Hermitian (A^T != A^(q))")]
    NotHermitian,
    #[error("the zero matrix does not define a Hermitian variety")]
    ZeroMatrix,
    #[error("operation requires a non-degenerate surface, got rank {rank}")]
    Degenerate { rank: usize },
    #[error("point is not on the surface")]
    PointNotOnSurface,

    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("the Hermitian surface is a component of V(F)")]
    HermitianComponent,

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("enumeration needs {required} classes, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable `{name}` is not allowed here (position {pos})")]
    ForbiddenVariable { pos: usize, name: String },

    #[error("invalid nonlinearity: {0}")]
    InvalidFCase(String),

    #[error("operation needs concrete parameters: {0}")]
    NotConcrete(String),

    #[error("total derivative input contains the second-order jet `{0}`")]
    JetOrderTooHigh(String),

    #[error("expression is not affine in u: {0}")]
    NotAffineInU(String),

    #[error("unsupported derivative of tag `{0}`")]
    UnsupportedDerivative(String),

    #[error("commutator of non-vector-field operators: {0}")]
    NotAVectorField(String),

    #[error("generator component contains u or jet variables: {0}")]
    IllFormedGenerator(String),

    #[error("nonlinear unknown in ansatz row: {0}")]
    NonlinearAnsatz(String),

    #[error("symbolic pivot vanishes at an excluded exponent: {0}")]
    DegeneratePivot(String),

    #[error("basis elements are linearly dependent")]
    DependentBasis,
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a = {a} and b = {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },
    #[error("d = {d} does not divide a + b = {sum}")]
    DegreeNotDividing { d: i64, sum: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("element is not integral at {0}")]
    NotIntegral(String),
    #[error("singular curve: discriminant vanishes")]
    Singular,
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("residue field of size {size} exceeds the enumeration bound {bound}")]
    EnumerationBound { size: u128, bound: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Tate's algorithm did not terminate at {0}")]
    NonConvergence(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("dataset: {0}")]
    Dataset(String),
    #[error("inconclusive elimination of {form}: {reason}")]
    Inconclusive { form: String, reason: String },
}

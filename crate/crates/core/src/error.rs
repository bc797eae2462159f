use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("r = {r} is the trivial group; need r >= 2")]
    TrivialGroup { r: i64 },
    #[error("exponent a = {a} is divisible by r = {r}")]
    BadExponent { r: i64, a: i64 },
    #[error("C({r},{a}) is not small: gcd(r, a) = {gcd}")]
    NotSmall { r: i64, a: i64, gcd: i64 },
    #[error("negative exponent in monomial x^{m} y^{n}")]
    NegativeExponent { m: i64, n: i64 },
    #[error("character index 0 is the trivial representation")]
    TrivialIndex,
    #[error("boundary points around index {index} do not satisfy u(i-1) + u(i+1) = b u(i) with integral b >= 2")]
    NonIntegralRelation { index: usize },
    #[error("cotangent character {index} is not special")]
    NonSpecialCotangent { index: u32 },
    #[error("cluster ideal has {count} minimal generators; at most 3 are supported")]
    TooManyGenerators { count: usize },
    #[error("invalid chart deformation: {0}")]
    InvalidDeformation(String),
    #[error("cluster ordering by column count is not strict: {0}")]
    AmbiguousClusterOrder(String),
    #[error("cluster incidence is not a chain: {0}")]
    NotAChain(String),
    #[error("C({r},{a}) is not contained in SL(2)")]
    NotSl2 { r: u32, a: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

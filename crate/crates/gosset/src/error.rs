use crate::picard::DivisorClass;

/// Errors surfaced by the enumeration and verification engine.
///
/// `Invariant` is reserved for violations of facts the library treats as
/// theorems (divisibility of a center, uniqueness of a witness, ...); hitting
/// one means the lattice arithmetic itself is inconsistent, not that the
/// caller passed bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rank {0} out of range (expected 3..=8)")]
    RankOutOfRange(usize),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("{0} is not a root (need d\u{b2} = -2, d\u{b7}K = 0)")]
    NotARoot(Box<DivisorClass>),

    #[error("{0} is not a line in L_{1}")]
    NotALine(Box<DivisorClass>, usize),

    #[error("{0} is not in the {1} catalog for r = {2}")]
    NotInCatalog(Box<DivisorClass>, &'static str, usize),

    #[error("lines {0} and {1} are not disjoint")]
    NotDisjoint(Box<DivisorClass>, Box<DivisorClass>),

    #[error(
        "no inscribed {b}-degree {n}-simplexes exist for r = {r}; feasible: \
         b=1 with (r>=6, n=2), (r>=7, n=3), (r=8, 4<=n<=7); b=2 with (r=7, n=1), \
         (r=8, n=1..2); b=3 with (r=8, n=1)"
    )]
    InfeasibleTriple { r: usize, n: usize, b: i64 },

    #[error("simplex is not cornered")]
    NotCornered,

    #[error("simplex is not uncornered")]
    NotUncornered,

    #[error("skew index a = {a} out of range 1..={r}")]
    SkewOutOfRange { r: usize, a: usize },

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("catalog cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 1 = verification failure,
    /// 2 = usage error, 3 = internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            Error::RankOutOfRange(_)
            | Error::RankMismatch(..)
            | Error::NotARoot(_)
            | Error::NotALine(..)
            | Error::NotInCatalog(..)
            | Error::NotDisjoint(..)
            | Error::InfeasibleTriple { .. }
            | Error::NotCornered
            | Error::NotUncornered
            | Error::SkewOutOfRange { .. }
            | Error::Domain(_) => 2,
            _ => 1,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("permutation degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a permutation")]
    NotAPermutation,
    #[error("no generators given")]
    EmptyGenerators,
    #[error("group axiom violated: {0}")]
    AxiomViolated(String),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("group order {order} exceeds search bound {bound}")]
    TooLarge { order: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid action: d={d} does not define Z/{m} ⋊ Z/{n}")]
    InvalidAction { m: u64, n: u64, d: u64 },
    #[error("parameter {alpha} out of range for family {family}")]
    OutOfRange { family: &'static str, alpha: u32 },
    #[error("no action of order 3 on Z/{0} with fixed-point-free difference")]
    NoSuchAction(u64),
    #[error("cannot parse group descriptor: {0}")]
    Parse(String),
    #[error("coordinate {coord} does not name an element of {group}")]
    BadCoordinate { group: String, coord: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Sl2(#[from] Box<Sl2Error>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrigamiError {
    #[error("square-tiled surface is not connected")]
    NotConnected,
    #[error("generators do not generate the group")]
    NotGenerating,
    #[error("genus {0} is below 2")]
    InvalidGenus(u64),
    #[error("gcd(k, gcd(ord x, ord y)) = {0} is not 1")]
    CoprimalityViolated(u64),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("congruences are incompatible")]
    Incompatible,
    #[error("m = {0} must be a prime >= 5 with m ≡ 2 (mod 3)")]
    InvalidM(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("residue system too large ({0} residues)")]
    BudgetExceeded(u128),
    #[error("construction check failed: {0}")]
    InternalAssertion(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("matrices live over different primes")]
    ModulusMismatch,
    #[error("matrix is not in SL(2, p)")]
    NotSpecialLinear,
    #[error("commutator order {0} is below 6")]
    OrderTooSmall(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction check failed: {0}")]
    InternalAssertion(String),
    #[error("prime {p} exceeds closure cap {cap}")]
    TooLarge { p: u64, cap: u64 },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Origami(#[from] OrigamiError),
}

/// Crate-wide error used by modules that combine several layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Origami(#[from] OrigamiError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error("cannot parse stratum: {0}")]
    StratumParse(String),
    #[error("stratum is empty")]
    EmptyStratum,
    #[error("genus {0} is below 2")]
    InvalidGenus(u64),
    #[error("search bound exceeded: {0}")]
    BudgetExceeded(String),
}

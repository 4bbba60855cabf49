use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Moduli must satisfy `2 <= m <= 2^31`.
    InvalidModulus(u64),
    /// Two operands live in different residue rings.
    ModulusMismatch { left: u64, right: u64 },
    /// The element has no inverse; its real part shares a factor with `m`.
    NotAUnit { value: u64, modulus: u64 },
    /// Division by a polynomial whose leading coefficient is not 1.
    NotMonic,
    /// The block expansion is not taken with respect to `x^p - x`.
    WrongBase,
    /// A structural criterion only valid for `n <= p` was asked about `n > p`.
    ExponentTooLarge { p: u64, n: u32 },
    /// The modulus is expected to be a prime power `p^n`.
    NotPrimePower(u64),
    /// The modulus is expected to be prime.
    NotPrime(u64),
    /// An exhaustive search would exceed the configured limit.
    SearchSpaceTooLarge { size: u128, limit: u128 },
    /// Integer coefficients left the range of `i128`.
    Overflow,
    /// Parameters outside the documented domain of an operation.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(m) => write!(f, "invalid modulus {m}: need 2 <= m <= 2^31"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            Error::NotAUnit { value, modulus } => {
                write!(f, "{value} is not a unit modulo {modulus}")
            }
            Error::NotMonic => write!(f, "divisor is not monic"),
            Error::WrongBase => write!(f, "expansion base is not x^p - x"),
            Error::ExponentTooLarge { p, n } => {
                write!(f, "criterion requires n <= p, got p = {p}, n = {n}; use the brute-force test")
            }
            Error::NotPrimePower(m) => write!(f, "{m} is not a prime power"),
            Error::NotPrime(m) => write!(f, "{m} is not prime"),
            Error::SearchSpaceTooLarge { size, limit } => write!(
                f,
                "search space of {size} exceeds the limit {limit}; use formula-only mode \
                 or raise the limit"
            ),
            Error::Overflow => write!(f, "integer overflow in exact coefficient arithmetic"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

impl core::error::Error for Error {}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Pochhammer denominator or Gamma argument hit a pole.
    #[error("pole: {0}")]
    Pole(String),
    #[error("series did not meet its tail criterion within {terms} terms")]
    NoConvergence { terms: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no sign change of figure {figure} on [{low}, {high}]")]
    NoBracket { figure: u8, low: f64, high: f64 },
    #[error("x = {x} is the singular point of figure {figure}")]
    Singularity { figure: u8, x: f64 },
    #[error("equation-tagged form requires beta = 1, got {beta}")]
    BetaMismatch { beta: f64 },
    #[error("degenerate quotient at z = {re}{im:+}i: {what}")]
    Degenerate { re: f64, im: f64, what: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

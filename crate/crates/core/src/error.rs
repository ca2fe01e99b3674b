use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("kernel evaluated at Ω′ = {omega} within {distance:e} of a denominator root")]
    EvaluationAtPole { omega: Complex, distance: f64 },

    #[error("kernel pole {pole} lies within {distance:e} of the real axis")]
    DegenerateContour { pole: Complex, distance: f64 },

    #[error("drift matrix is singular at Ω′ = {omega} (|det| = {det:e})")]
    SingularResolvent { omega: f64, det: f64 },

    #[error("adaptive quadrature stopped at error {achieved:e} (requested {requested:e}) after {intervals} intervals")]
    ToleranceNotReached {
        achieved: f64,
        requested: f64,
        intervals: usize,
    },

    #[error("{what} is not defined for the {component} component")]
    UnsupportedComponent {
        what: &'static str,
        component: &'static str,
    },

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("evaluation failed at Ω = {omega}: {source}")]
    AtPoint {
        omega: f64,
        #[source]
        source: Box<Error>,
    },
}

type Complex = num_complex::Complex64;

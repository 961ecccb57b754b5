use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate scalar: {0}")]
    DegenerateScalar(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("fusion axiom `{axiom}` violated at {witness:?}")]
    AxiomViolated {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("modular data identity `{identity}` violated at {witness:?}")]
    ModularDataViolated {
        identity: &'static str,
        witness: Vec<usize>,
    },

    #[error("Verlinde coefficient N_({a},{b})^{c} = {value} is not a non-negative integer")]
    NonIntegralVerlinde {
        a: usize,
        b: usize,
        c: usize,
        value: String,
    },

    #[error("Verlinde formula gives N_({a},{b})^{c} = {verlinde} but the ring has {ring}")]
    VerlindeMismatch {
        a: usize,
        b: usize,
        c: usize,
        verlinde: i64,
        ring: u32,
    },

    #[error("not a NIM-rep: `{identity}` fails at {witness:?}")]
    NotANimRep {
        identity: &'static str,
        witness: Vec<usize>,
    },

    #[error("multiplicity of label {label} is {value}, not a non-negative integer")]
    NonIntegralMultiplicity { label: usize, value: String },

    #[error("multiplicity of the unit character is {0}, not 1")]
    MultiplicityNotOne(i64),

    #[error("gauge data is missing the pair ({0}, {1})")]
    MissingPair(String, String),

    #[error("gauge scalar mu_({0},{0}) is not 1")]
    NonUnitalGauge(String),

    #[error("gauge scalars mu_({0},{1}) and mu_({1},{0}) are not inverse")]
    GaugeInverse(String, String),

    #[error("gauge cocycle fails on the triangle ({0}, {1}, {2})")]
    GaugeCocycle(String, String, String),

    #[error("lattice search exceeded its budget of {0} points")]
    SearchBudgetExceeded(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by malformed user input rather than failed mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::ShapeMismatch(_) | Error::Parse(_) | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

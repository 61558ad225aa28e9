use thiserror::Error;

/// Errors produced by the evacuation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvacError {
    /// An argument lies outside the domain of the operation.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A motion schedule violated a continuity or speed constraint.
    #[error("invalid trajectory: {0}")]
    Construction(String),

    /// The Fast-Chord system has no non-negative solution for the given parameters.
    #[error("fast-chord system infeasible for s = {s}, x3 = {x3}")]
    Infeasible { s: f64, x3: f64 },

    /// No feasible x3 value was found during the Fast-Chord sweep.
    #[error("no feasible x3 for s = {s}")]
    NoFeasibleX3 { s: f64 },

    /// A boundary point is never visited by either robot.
    #[error("exit at angle {angle} is never explored")]
    Coverage { angle: f64 },

    /// The set of explored points already covers the whole boundary.
    #[error("boundary is fully explored")]
    FullyExplored,

    /// A root-finding bracket does not contain a sign change.
    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
}

impl EvacError {
    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        EvacError::Domain {
            what,
            value,
            domain,
        }
    }

    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            EvacError::Infeasible { .. }
                | EvacError::NoFeasibleX3 { .. }
                | EvacError::Bracket { .. }
                | EvacError::Coverage { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, EvacError>;

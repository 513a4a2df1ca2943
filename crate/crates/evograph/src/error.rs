//! Error types, one enum per subsystem.

use core::fmt;

use crate::graph::NodeId;

/// Errors from graph queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The queried node is not part of the snapshot.
    UnknownNode(NodeId),
    /// The operation needs a nonempty graph.
    EmptyGraph,
    /// Both endpoints of an edge are the same node.
    SelfLoop(NodeId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::UnknownNode(v) => write!(f, "node {v} is not in the snapshot"),
            GraphError::EmptyGraph => write!(f, "snapshot has no nodes"),
            GraphError::SelfLoop(v) => write!(f, "self-loop at node {v} is not allowed"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Errors from series construction and new/old classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// A series must hold at least one snapshot.
    Empty,
    /// Snapshot time indices must be strictly increasing.
    NonIncreasingTime,
    /// A time index outside `1..=len` was requested.
    IndexOutOfRange {
        /// Requested 1-based time index.
        index: usize,
        /// Series length.
        len: usize,
    },
    /// The node never appears in the series.
    UnknownNode(NodeId),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::Empty => write!(f, "series holds no snapshots"),
            SeriesError::NonIncreasingTime => {
                write!(f, "snapshot time indices must be strictly increasing")
            }
            SeriesError::IndexOutOfRange { index, len } => {
                write!(f, "time index {index} outside the series range 1..={len}")
            }
            SeriesError::UnknownNode(v) => write!(f, "node {v} never appears in the series"),
        }
    }
}

impl core::error::Error for SeriesError {}

/// Errors from pattern measurements and fits.
#[derive(Debug, Clone, PartialEq)]
pub enum PatternError {
    /// The pattern needs a nonempty graph.
    EmptyGraph,
    /// The series is too short for this pattern.
    SeriesTooShort {
        /// Minimum number of snapshots required.
        needed: usize,
    },
    /// A power-law fit needs at least two points.
    NotEnoughPoints,
    /// Log-log fitting needs strictly positive coordinates.
    NonPositiveCoordinate {
        /// Offending x value.
        x: f64,
        /// Offending y value.
        y: f64,
    },
    /// All x values coincide, so no slope can be fitted.
    DegenerateFit,
    /// Distance sampling needs at least one source.
    ZeroSampleSources,
    /// No new edges appeared at the requested step.
    NoNewEdges {
        /// 1-based time index.
        index: usize,
    },
    /// No new old-old edges appeared at the requested step.
    NoNewOldOldEdges {
        /// 1-based time index.
        index: usize,
    },
    /// No new nodes appear after the first snapshot.
    NoNewNodes,
    /// The distance profile carries no finite mass.
    EmptyProfile,
    /// A series-level precondition failed.
    Series(SeriesError),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::EmptyGraph => write!(f, "pattern needs a nonempty graph"),
            PatternError::SeriesTooShort { needed } => {
                write!(f, "series too short, at least {needed} snapshots needed")
            }
            PatternError::NotEnoughPoints => write!(f, "fit needs at least two points"),
            PatternError::NonPositiveCoordinate { x, y } => {
                write!(f, "log-log fit needs positive coordinates, got ({x}, {y})")
            }
            PatternError::DegenerateFit => write!(f, "all x values equal, fit is degenerate"),
            PatternError::ZeroSampleSources => write!(f, "sample source count must be positive"),
            PatternError::NoNewEdges { index } => {
                write!(f, "no new edges at time index {index}")
            }
            PatternError::NoNewOldOldEdges { index } => {
                write!(f, "no new old-old edges at time index {index}")
            }
            PatternError::NoNewNodes => {
                write!(f, "no new nodes appear after the first snapshot")
            }
            PatternError::EmptyProfile => write!(f, "distance profile has no finite mass"),
            PatternError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for PatternError {}

impl From<SeriesError> for PatternError {
    fn from(e: SeriesError) -> Self {
        PatternError::Series(e)
    }
}

/// Errors from parameter estimation.
#[derive(Debug, Clone, PartialEq)]
pub enum EstimatorError {
    /// Estimation needs at least two snapshots.
    SeriesTooShort,
    /// The averaging window must satisfy `1 <= window <= n - 1`.
    InvalidWindow {
        /// Requested window.
        window: usize,
        /// Series length.
        len: usize,
    },
    /// No new old-old edge with a finite prior distance exists.
    NoQualifyingEdges,
    /// A pattern computation failed.
    Pattern(PatternError),
}

impl fmt::Display for EstimatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorError::SeriesTooShort => {
                write!(f, "estimation needs at least two snapshots")
            }
            EstimatorError::InvalidWindow { window, len } => {
                write!(f, "window {window} invalid for a series of length {len}")
            }
            EstimatorError::NoQualifyingEdges => {
                write!(f, "no new old-old edge with a finite prior distance in the series")
            }
            EstimatorError::Pattern(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EstimatorError {}

impl From<PatternError> for EstimatorError {
    fn from(e: PatternError) -> Self {
        EstimatorError::Pattern(e)
    }
}

/// Errors from the generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorError {
    /// A model parameter is outside its valid range.
    InvalidParams(&'static str),
    /// A stable factor must lie in (0, 1].
    FactorOutOfRange(f64),
    /// Generation needs at least two input snapshots.
    SeriesTooShort,
    /// A pattern the step depends on could not be measured, such as the
    /// total-graph growth law or the initial-degree distribution.
    Pattern(PatternError),
    /// No node is eligible as an attachment target.
    NoEligibleTarget,
    /// Too many rejected target draws in one step.
    RejectionBudgetExhausted {
        /// Budget that was exhausted (100 per working-graph node).
        budget: usize,
    },
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::InvalidParams(what) => write!(f, "invalid model parameters: {what}"),
            GeneratorError::FactorOutOfRange(a) => {
                write!(f, "stable factor {a} outside (0, 1]")
            }
            GeneratorError::SeriesTooShort => {
                write!(f, "generation needs at least two input snapshots")
            }
            GeneratorError::Pattern(e) => {
                write!(f, "pattern prerequisite failed: {e}")
            }
            GeneratorError::NoEligibleTarget => {
                write!(f, "no eligible attachment target exists")
            }
            GeneratorError::RejectionBudgetExhausted { budget } => {
                write!(f, "rejection budget of {budget} target draws exhausted")
            }
        }
    }
}

impl core::error::Error for GeneratorError {}

impl From<PatternError> for GeneratorError {
    fn from(e: PatternError) -> Self {
        GeneratorError::Pattern(e)
    }
}

/// Errors from the reference generators.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineError {
    /// The configuration violates `1 <= m <= m0 < n` or the event probabilities.
    InvalidConfig(&'static str),
}

impl fmt::Display for BaselineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineError::InvalidConfig(what) => write!(f, "invalid baseline config: {what}"),
        }
    }
}

impl core::error::Error for BaselineError {}

/// Errors from validation runs.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationError {
    /// Monte Carlo checks need enough replicas.
    InsufficientRuns {
        /// Replicas requested.
        got: usize,
        /// Minimum required.
        needed: usize,
    },
    /// The parameter grid is too small.
    InsufficientGrid {
        /// Distinct grid values provided.
        got: usize,
        /// Minimum required.
        needed: usize,
    },
    /// Comparison needs nonempty graphs.
    EmptyGraph,
    /// The base series is unusable for the check.
    DegenerateBase(&'static str),
    /// A generation run failed.
    Generator(GeneratorError),
    /// A pattern computation failed.
    Pattern(PatternError),
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::InsufficientRuns { got, needed } => {
                write!(f, "{got} replicas requested, at least {needed} needed")
            }
            ValidationError::InsufficientGrid { got, needed } => {
                write!(f, "{got} distinct grid values, at least {needed} needed")
            }
            ValidationError::EmptyGraph => write!(f, "comparison needs nonempty graphs"),
            ValidationError::DegenerateBase(what) => {
                write!(f, "base series unusable: {what}")
            }
            ValidationError::Generator(e) => write!(f, "{e}"),
            ValidationError::Pattern(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ValidationError {}

impl From<GeneratorError> for ValidationError {
    fn from(e: GeneratorError) -> Self {
        ValidationError::Generator(e)
    }
}

impl From<PatternError> for ValidationError {
    fn from(e: PatternError) -> Self {
        ValidationError::Pattern(e)
    }
}

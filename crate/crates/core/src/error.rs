use std::fmt;

use thiserror::Error;

/// Why a candidate Miquel point cannot be pulled back to a cevian pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InadmissibleReason {
    OnCircumcircle,
    OnAB,
    OnAC,
    /// The point lies on an auxiliary circle, so one cevian foot collapses onto the vertex.
    OnAuxiliaryCircle,
}

impl fmt::Display for InadmissibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InadmissibleReason::OnCircumcircle => "on_circumcircle",
            InadmissibleReason::OnAB => "on_AB",
            InadmissibleReason::OnAC => "on_AC",
            InadmissibleReason::OnAuxiliaryCircle => "on_auxiliary_circle",
        })
    }
}

/// Which cevian of a pair a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CevianSide {
    /// `B·B_A`, foot on line AC.
    B,
    /// `C·C_A`, foot on line AB.
    C,
}

impl fmt::Display for CevianSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CevianSide::B => "B_A",
            CevianSide::C => "C_A",
        })
    }
}

/// Typed failures of the geometry kernel.
///
/// `Display` renders the bare error name (with its argument, if any) so the
/// command-line front end can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonFinite")]
    NonFinite,
    #[error("InvalidTolerance")]
    InvalidTolerance,
    #[error("DegenerateTriangle")]
    DegenerateTriangle,
    #[error("DegenerateLine")]
    DegenerateLine,
    #[error("NonPositiveRadius")]
    NonPositiveRadius,
    #[error("CollinearInput")]
    CollinearInput,
    #[error("CoincidentCircles")]
    CoincidentCircles,
    #[error("PointNotOnCircle")]
    PointNotOnCircle,
    #[error("TouchNotOnTangent")]
    TouchNotOnTangent,
    #[error("ThroughPointOnTangent")]
    ThroughPointOnTangent,
    #[error("CenterInversion")]
    CenterInversion,
    #[error("DegenerateRay")]
    DegenerateRay,
    #[error("AllCollinear")]
    AllCollinear,

    #[error("ExcludedCevian({0})")]
    ExcludedCevian(CevianSide),
    #[error("ParallelCevians")]
    ParallelCevians,
    #[error("TangentAtA")]
    TangentAtA,
    #[error("InadmissiblePoint({0})")]
    InadmissiblePoint(InadmissibleReason),
    #[error("BoundaryAmbiguous({0})")]
    BoundaryAmbiguous(CevianSide),

    #[error("DegenerateOI")]
    DegenerateOI,
    #[error("NearEquilateralDegeneracy")]
    NearEquilateralDegeneracy,
    #[error("TangentsParallel")]
    TangentsParallel,
    #[error("LineAlongSide")]
    LineAlongSide,
    #[error("LineNotThroughVertex")]
    LineNotThroughVertex,
    #[error("SingularDenominator({0})")]
    SingularDenominator(&'static str),
    #[error("DegenerateSamples")]
    DegenerateSamples,

    #[error("ParallelBisectors")]
    ParallelBisectors,
    #[error("RightAngleAtVertex")]
    RightAngleAtVertex,
    #[error("BisectorParallelToSide")]
    BisectorParallelToSide,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

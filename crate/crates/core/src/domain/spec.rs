//! JSON description of domains.

use serde::{Deserialize, Serialize};

use super::{ArcModel, ConvexDomain, GraphArc, Piece, Segment};
use crate::projective::Point;
use crate::{HilbertError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    Polygon { vertices: Vec<[f64; 2]> },
    Ellipse { cx: f64, cy: f64, rx: f64, ry: f64 },
    CubicGraph { half_width: f64 },
    Piecewise { pieces: Vec<PieceSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PieceSpec {
    Segment { from: [f64; 2], to: [f64; 2] },
    Arc(ArcSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub interval: [f64; 2],
    #[serde(flatten)]
    pub model: ModelSpec,
}

/// Arc model name and its parameters; values at `interval[0]` carry suffix 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "kebab-case")]
pub enum ModelSpec {
    ConstantCurvature {
        y0: f64,
        y1: f64,
        curvature: f64,
    },
    Cubic {
        k: f64,
    },
    HermiteQuintic {
        y0: f64,
        d0: f64,
        s0: f64,
        y1: f64,
        d1: f64,
        s1: f64,
    },
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| HilbertError::ParameterRange(format!("domain JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain spec serializes")
    }
}

fn model_of(spec: &ModelSpec) -> ArcModel {
    match *spec {
        ModelSpec::ConstantCurvature { y0, y1, curvature } => {
            ArcModel::ConstantCurvature { y0, y1, curvature }
        }
        ModelSpec::Cubic { k } => ArcModel::Cubic { k },
        ModelSpec::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        } => ArcModel::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        },
    }
}

fn spec_of(model: ArcModel) -> ModelSpec {
    match model {
        ArcModel::ConstantCurvature { y0, y1, curvature } => {
            ModelSpec::ConstantCurvature { y0, y1, curvature }
        }
        ArcModel::Cubic { k } => ModelSpec::Cubic { k },
        ArcModel::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        } => ModelSpec::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        },
    }
}

pub(super) fn build(spec: &DomainSpec) -> Result<ConvexDomain> {
    match spec {
        DomainSpec::Polygon { vertices } => {
            ConvexDomain::polygon(vertices.iter().map(|v| Point::from(*v)).collect())
        }
        DomainSpec::Ellipse { cx, cy, rx, ry } => {
            ConvexDomain::ellipse(Point::new(*cx, *cy), *rx, *ry)
        }
        DomainSpec::CubicGraph { half_width } => ConvexDomain::cubic_graph(*half_width),
        DomainSpec::Piecewise { pieces } => {
            let built = pieces
                .iter()
                .map(|p| match p {
                    PieceSpec::Segment { from, to } => Ok(Piece::Segment(Segment {
                        from: Point::from(*from),
                        to: Point::from(*to),
                    })),
                    PieceSpec::Arc(a) => Ok(Piece::Graph(GraphArc::new(
                        a.interval[0],
                        a.interval[1],
                        model_of(&a.model),
                    )?)),
                })
                .collect::<Result<Vec<_>>>()?;
            ConvexDomain::piecewise(built)
        }
    }
}

pub(super) fn describe(domain: &ConvexDomain) -> Result<DomainSpec> {
    match domain {
        ConvexDomain::Polygon(p) => Ok(DomainSpec::Polygon {
            vertices: p.vertices().iter().map(|v| (*v).into()).collect(),
        }),
        ConvexDomain::Smooth(s) => match s.pieces.first() {
            Some(Piece::Ellipse(e)) => Ok(DomainSpec::Ellipse {
                cx: e.center.x,
                cy: e.center.y,
                rx: e.rx,
                ry: e.ry,
            }),
            _ => Err(HilbertError::ParameterRange(
                "only ellipses serialize as smooth domains".into(),
            )),
        },
        ConvexDomain::Piecewise(p) => {
            let pieces = p
                .pieces
                .iter()
                .map(|piece| match piece {
                    Piece::Segment(s) => Ok(PieceSpec::Segment {
                        from: s.from.into(),
                        to: s.to.into(),
                    }),
                    Piece::Graph(g) => {
                        let (a, b) = g.interval();
                        Ok(PieceSpec::Arc(ArcSpec {
                            interval: [a, b],
                            model: spec_of(g.model()),
                        }))
                    }
                    _ => Err(HilbertError::ParameterRange(
                        "piece has no JSON form".into(),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DomainSpec::Piecewise { pieces })
        }
    }
}

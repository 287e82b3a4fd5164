//! Distribution spec documents.
//!
//! A spec is a JSON object whose `kind` selects the payload:
//!
//! ```json
//! {"kind": "piecewise_linear", "breakpoints": [0, 1, 2],
//!  "right_limits": [0.75, 0.25], "left_limits": [0.75, 0.25]}
//! {"kind": "polygonal", "breakpoints": [0, 0.5, 1], "heights": [0, 2, 0]}
//! {"kind": "triangular", "a": 0, "c": 0.5, "b": 1}
//! {"kind": "tetragonal", "a": 0, "c": 1, "d": 2, "b": 3, "heights": [1, 1]}
//! {"kind": "tetragonal", "a": 0, "c": 1, "d": 2, "b": 3, "w": 0.5}
//! ```
//!
//! `point_values` is optional for `piecewise_linear`. A tetragonal spec
//! takes exactly one of `heights` (the unnormalized `[C', D']`) or `w`.

use serde::{Deserialize, Serialize};

use pwl_density::{
    PiecewiseLinearDensity, PolygonalDensity, RawDensity, TetragonalParams, TriangularParams,
};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    PiecewiseLinear {
        breakpoints: Vec<f64>,
        right_limits: Vec<f64>,
        left_limits: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point_values: Option<Vec<f64>>,
    },
    Polygonal {
        breakpoints: Vec<f64>,
        heights: Vec<f64>,
    },
    Triangular {
        a: f64,
        c: f64,
        b: f64,
    },
    Tetragonal {
        a: f64,
        c: f64,
        d: f64,
        b: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        heights: Option<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        w: Option<f64>,
    },
}

/// A spec after validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    General(PiecewiseLinearDensity),
    Polygonal(PolygonalDensity),
    Triangular(TriangularParams),
    Tetragonal(TetragonalParams),
}

pub fn parse_spec(text: &str) -> Result<DistributionSpec, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

impl DistributionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            DistributionSpec::PiecewiseLinear { .. } => "piecewise_linear",
            DistributionSpec::Polygonal { .. } => "polygonal",
            DistributionSpec::Triangular { .. } => "triangular",
            DistributionSpec::Tetragonal { .. } => "tetragonal",
        }
    }

    /// Validates the payload. Every rejection is a schema error.
    pub fn to_model(&self) -> Result<Model, CliError> {
        self.build().map_err(|e| match e {
            CliError::Model(inner) => CliError::Schema(inner.to_string()),
            other => other,
        })
    }

    fn build(&self) -> Result<Model, CliError> {
        let model = match self.clone() {
            DistributionSpec::PiecewiseLinear {
                breakpoints,
                right_limits,
                left_limits,
                point_values,
            } => {
                let mut raw = RawDensity::new(breakpoints, right_limits, left_limits);
                if let Some(points) = point_values {
                    raw = raw.with_point_values(points);
                }
                Model::General(raw.validate()?)
            }
            DistributionSpec::Polygonal {
                breakpoints,
                heights,
            } => Model::Polygonal(PolygonalDensity::new(breakpoints, heights)?),
            DistributionSpec::Triangular { a, c, b } => {
                Model::Triangular(TriangularParams::new(a, c, b)?)
            }
            DistributionSpec::Tetragonal {
                a,
                c,
                d,
                b,
                heights,
                w,
            } => match (heights, w) {
                (Some([ch, dh]), None) => {
                    Model::Tetragonal(TetragonalParams::normalized(a, c, d, b, ch, dh)?)
                }
                (None, Some(w)) => Model::Tetragonal(TetragonalParams::from_weight(a, c, d, b, w)?),
                _ => {
                    return Err(CliError::Schema(
                        "tetragonal spec needs exactly one of `heights` or `w`".into(),
                    ))
                }
            },
        };
        Ok(model)
    }
}

impl Model {
    /// Raw mass of the described density; families are normalized by construction.
    pub fn raw_mass(&self) -> f64 {
        match self {
            Model::General(d) => d.raw_mass(),
            Model::Polygonal(p) => p.raw_mass(),
            Model::Triangular(_) | Model::Tetragonal(_) => 1.0,
        }
    }

    pub fn is_normalized(&self) -> bool {
        match self {
            Model::General(d) => d.is_normalized(),
            Model::Polygonal(p) => p.is_normalized(),
            Model::Triangular(_) | Model::Tetragonal(_) => true,
        }
    }

    pub fn pieces(&self) -> usize {
        self.density().pieces()
    }

    /// Unit-mass version and the factor applied.
    pub fn normalized(&self) -> Result<(Model, f64), CliError> {
        Ok(match self {
            Model::General(d) => {
                let (n, report) = d.normalize()?;
                (Model::General(n), report.factor_k)
            }
            Model::Polygonal(p) => {
                let (n, report) = p.normalize()?;
                (Model::Polygonal(n), report.factor_k)
            }
            other => (other.clone(), 1.0),
        })
    }

    pub fn density(&self) -> PiecewiseLinearDensity {
        match self {
            Model::General(d) => d.clone(),
            Model::Polygonal(p) => p.promote(),
            Model::Triangular(t) => t.density().promote(),
            Model::Tetragonal(t) => t.density().promote(),
        }
    }

    /// Spec document describing this model.
    pub fn to_spec(&self) -> DistributionSpec {
        match self {
            Model::General(d) => DistributionSpec::PiecewiseLinear {
                breakpoints: d.breakpoints().to_vec(),
                right_limits: d.right_limits().to_vec(),
                left_limits: d.left_limits().to_vec(),
                point_values: match d.point_values() {
                    pwl_density::PointValues::Given(v) => Some(v.clone()),
                    _ => None,
                },
            },
            Model::Polygonal(p) => DistributionSpec::Polygonal {
                breakpoints: p.breakpoints().to_vec(),
                heights: p.heights().to_vec(),
            },
            Model::Triangular(t) => DistributionSpec::Triangular {
                a: t.a,
                c: t.c,
                b: t.b,
            },
            Model::Tetragonal(t) => DistributionSpec::Tetragonal {
                a: t.a,
                c: t.c,
                d: t.d,
                b: t.b,
                heights: Some([t.c_height, t.d_height]),
                w: None,
            },
        }
    }
}

pub fn write_spec(spec: &DistributionSpec) -> String {
    let mut text = serde_json::to_string_pretty(spec).expect("spec serializes");
    text.push('\n');
    text
}

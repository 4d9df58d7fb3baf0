//! JSON body specifications: the fixture format ingested by the CLI and
//! usable as a library fixture format. All numbers decimal, matrices
//! row-major.

use super::{ConvexBody, Ellipsoid, GraphDomain2D, PowerDomain, ProfileKind};
use crate::error::{Error, Result};
use crate::linalg::{vec_from, Matrix, Vector};
use crate::polytope::{HPolytope, VPolytope};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Hpolytope {
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
    Vpolytope {
        vertices: Vec<Vec<f64>>,
    },
    Ellipsoid {
        semi_axes: Vec<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rotation: Option<Vec<Vec<f64>>>,
    },
    Graph2d {
        h: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
        #[serde(rename = "R")]
        r: f64,
        #[serde(rename = "D")]
        d: f64,
    },
    PowerDomain {
        eta: f64,
        exponents: Vec<f64>,
        height: f64,
        #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
        box_half_widths: Option<Vec<f64>>,
    },
}

fn to_matrix(rows: &[Vec<f64>]) -> Result<Matrix> {
    if rows.is_empty() {
        return Err(Error::InvalidBody("empty matrix".into()));
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidBody("ragged matrix".into()));
    }
    Ok(Matrix::from_fn(rows.len(), n, |i, j| rows[i][j]))
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Hpolytope { normals, offsets } => Ok(ConvexBody::HPoly(HPolytope::new(
                to_matrix(normals)?,
                vec_from(offsets),
            )?)),
            BodySpec::Vpolytope { vertices } => Ok(ConvexBody::VPoly(VPolytope::new(
                vertices.iter().map(|v| vec_from(v)).collect(),
            )?)),
            BodySpec::Ellipsoid {
                semi_axes,
                center,
                rotation,
            } => {
                let n = semi_axes.len();
                let c = match center {
                    Some(c) => vec_from(c),
                    None => Vector::zeros(n),
                };
                let rot = rotation.as_ref().map(|r| to_matrix(r)).transpose()?;
                Ok(ConvexBody::Ellipsoid(Ellipsoid::new(
                    c,
                    semi_axes.clone(),
                    rot,
                )?))
            }
            BodySpec::Graph2d { h, p, r, d } => {
                let kind = match h.as_str() {
                    "power" => ProfileKind::Power {
                        p: p.ok_or_else(|| {
                            Error::InvalidBody("graph2d power profile needs p".into())
                        })?,
                    },
                    "exp_flat" => ProfileKind::ExpFlat,
                    other => {
                        return Err(Error::InvalidBody(format!(
                            "unknown graph2d profile {other:?}"
                        )))
                    }
                };
                Ok(ConvexBody::Graph2D(GraphDomain2D::new(kind, *r, *d)?))
            }
            BodySpec::PowerDomain {
                eta,
                exponents,
                height,
                box_half_widths,
            } => Ok(ConvexBody::Power(PowerDomain::new(
                *eta,
                exponents.clone(),
                box_half_widths.clone().unwrap_or_default(),
                *height,
            )?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_the_documented_forms() {
        let specs = [
            r#"{"type":"hpolytope","normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[1,1,1,1]}"#,
            r#"{"type":"vpolytope","vertices":[[1,0],[-1,0],[0,1],[0,-1]]}"#,
            r#"{"type":"ellipsoid","semi_axes":[1,1]}"#,
            r#"{"type":"ellipsoid","semi_axes":[2,1],"center":[0.5,0],"rotation":[[1,0],[0,1]]}"#,
            r#"{"type":"graph2d","h":"power","p":4,"R":1,"D":2}"#,
            r#"{"type":"graph2d","h":"exp_flat","R":0.2,"D":0.1347589399817093}"#,
            r#"{"type":"power_domain","eta":1,"exponents":[4],"height":1}"#,
            r#"{"type":"power_domain","eta":1,"exponents":[2],"height":1,"box":[0.5]}"#,
        ];
        for s in specs {
            let body = ConvexBody::from_json(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(body.dim() >= 2);
        }
    }

    #[test]
    fn reject_malformed_specs() {
        for s in [
            r#"{"type":"hpolytope","normals":[[1,0]],"offsets":[1,2]}"#,
            r#"{"type":"graph2d","h":"power","R":1,"D":2}"#,
            r#"{"type":"ellipsoid","semi_axes":[1,-1]}"#,
            r#"{"type":"nope"}"#,
        ] {
            assert!(ConvexBody::from_json(s).is_err(), "should reject {s}");
        }
    }
}

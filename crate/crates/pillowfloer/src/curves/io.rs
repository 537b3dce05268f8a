use serde::{Deserialize, Serialize};

use super::curve::{CurveKind, LiftedCurve};
use super::CurveError;
use crate::pillowcase::{DeckElement, LiftPoint};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CurveRecord {
    kind: CurveKind,
    label: String,
    vertices: Vec<LiftPoint>,
    #[serde(default = "identity")]
    closure: DeckElement,
}

fn identity() -> DeckElement {
    DeckElement::IDENTITY
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CurveFile {
    curves: Vec<CurveRecord>,
}

/// Parses the shared curve format and validates every curve.
pub fn curves_from_json(text: &str) -> Result<Vec<LiftedCurve>, CurveError> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
    file.curves
        .into_iter()
        .map(|r| match r.kind {
            CurveKind::Circle => LiftedCurve::circle(r.label, r.vertices, r.closure),
            CurveKind::Arc => LiftedCurve::arc(r.label, r.vertices),
        })
        .collect()
}

pub fn curves_to_json(curves: &[LiftedCurve]) -> String {
    let file = CurveFile {
        curves: curves
            .iter()
            .map(|c| CurveRecord {
                kind: c.kind,
                label: c.label.clone(),
                vertices: c.vertices.clone(),
                closure: c.closure,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("curve records serialize")
}

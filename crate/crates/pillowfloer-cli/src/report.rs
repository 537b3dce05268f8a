use std::fmt::Write as _;

use pillowfloer::curves::{vertical_degree, CurveKind, LiftedCurve};
use pillowfloer::floer::{canonical_generator, chain_ranks, homology, ChainComplexZ4, ComplexComponent, GradedRanks};
use pillowfloer::pillowcase::{LiftPoint, PerturbationFunction};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: &str = "pillowfloer/1";

/// Every knob that influenced a run, defaults included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub eps: f64,
    pub g: PerturbationFunction,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signature: Option<i64>,
    pub samples: usize,
    pub window: f64,
    pub k_max: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed_grid: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub label: String,
    /// Absolute grading when anchored, else relative to the first generator.
    pub grade: Option<u8>,
    /// Position in the fundamental domain `[0, π] × [0, 2π)`.
    pub point: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentTable {
    pub label: String,
    pub kind: CurveKind,
    /// Copies of a primitive curve represented by this row; the ranks
    /// include them.
    pub multiplicity: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertical_degree: Option<u64>,
    /// Index of the generator next to the arc's anchoring corner.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical: Option<usize>,
    pub generators: Vec<GeneratorRow>,
    /// `(p, q)` with `q` in `∂p`.
    pub bigons: Vec<(usize, usize)>,
    pub chain: GradedRanks,
    pub homology: GradedRanks,
}

impl ComponentTable {
    /// A row for one summand, with ranks already scaled by `multiplicity`.
    pub fn new(
        curve: &LiftedCurve,
        comp: &ComplexComponent,
        grades: &[Option<u8>],
        multiplicity: u32,
        chain: GradedRanks,
        homology: GradedRanks,
    ) -> ComponentTable {
        ComponentTable {
            label: comp.label.clone(),
            kind: comp.kind,
            multiplicity,
            vertical_degree: vertical_degree(curve).ok().map(|d| d * u64::from(multiplicity)),
            canonical: canonical_generator(curve, &comp.generators),
            generators: comp
                .generators
                .iter()
                .zip(&comp.labels)
                .zip(grades)
                .map(|((g, label), grade)| GeneratorRow {
                    label: label.clone(),
                    grade: *grade,
                    point: [g.point.gamma, g.point.theta],
                })
                .collect(),
            bigons: comp.differential.clone(),
            chain,
            homology,
        }
    }
}

/// Curves and bigon boundaries for rendering.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub l0: Option<LiftedCurve>,
    pub l1: Vec<LiftedCurve>,
    pub bigons: Vec<Vec<LiftPoint>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub input: serde_json::Value,
    pub parameters: Parameters,
    pub components: Vec<ComponentTable>,
    pub chain_total: GradedRanks,
    pub total: GradedRanks,
    pub warnings: Vec<String>,
    pub geometry: Geometry,
}

impl RunReport {
    pub fn new(command: &str, input: serde_json::Value, parameters: Parameters) -> RunReport {
        RunReport {
            schema: SCHEMA.into(),
            command: command.into(),
            input,
            parameters,
            components: Vec::new(),
            chain_total: GradedRanks::default(),
            total: GradedRanks::default(),
            warnings: Vec::new(),
            geometry: Geometry::default(),
        }
    }

    /// Fills the tables from a complex whose components are `l1`, in order.
    pub fn fill_from_complex(&mut self, cx: &ChainComplexZ4, l0: &LiftedCurve, l1: &[LiftedCurve]) -> Result<(), CliError> {
        let chain = chain_ranks(cx);
        let hom = homology(cx)?;
        for (i, comp) in cx.components.iter().enumerate() {
            let grades: Vec<Option<u8>> =
                (0..comp.generators.len()).map(|j| cx.grading.grade(i, j).map(|z| z.index() as u8)).collect();
            self.components.push(ComponentTable::new(&l1[i], comp, &grades, 1, chain.components[i], hom.components[i]));
        }
        self.chain_total = chain.total;
        self.total = hom.total;
        self.set_geometry(cx, l0, l1);
        Ok(())
    }

    pub fn set_geometry(&mut self, cx: &ChainComplexZ4, l0: &LiftedCurve, l1: &[LiftedCurve]) {
        self.geometry = Geometry {
            l0: Some(l0.clone()),
            l1: l1.to_vec(),
            bigons: cx.components.iter().flat_map(|c| c.bigons.iter().map(|b| b.boundary_loop.clone())).collect(),
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.input);
        let p = &self.parameters;
        let g = if p.g.terms.is_empty() { "0".to_string() } else { p.g.to_string() };
        let _ = write!(s, "  ε = {}, g = {g}", p.eps);
        if let (Some(a), Some(b)) = (p.eps_a, p.eps_b) {
            let _ = write!(s, ", ε_A = {a}, ε_B = {b}");
        }
        if let Some(sig) = p.signature {
            let _ = write!(s, ", σ = {sig}");
        }
        let _ = writeln!(s);
        for c in &self.components {
            let kind = match c.kind {
                CurveKind::Arc => "arc",
                CurveKind::Circle => "circle",
            };
            let mult = if c.multiplicity > 1 { format!(" ×{}", c.multiplicity) } else { String::new() };
            let degree = c.vertical_degree.map_or(String::new(), |d| format!(", degree {d}"));
            let _ = writeln!(
                s,
                "  {}{mult} ({kind}{degree}): {} generators, chain {}, {} bigons, H = {}",
                c.label,
                c.generators.len(),
                c.chain,
                c.bigons.len(),
                c.homology
            );
            for (j, g) in c.generators.iter().enumerate() {
                let grade = g.grade.map_or("?".to_string(), |x| x.to_string());
                let mark = if c.canonical == Some(j) { "*" } else { " " };
                let _ = writeln!(s, "   {mark}{j:>3} {:<10} gr {grade}  ({:.6}, {:.6})", g.label, g.point[0], g.point[1]);
            }
            for (a, b) in &c.bigons {
                let _ = writeln!(s, "    ∂ {} → {}", c.generators[*a].label, c.generators[*b].label);
            }
        }
        let _ = writeln!(s, "  chain {}", self.chain_total);
        let _ = writeln!(s, "  H = {}  (rank {})", self.total, self.total.total());
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    }
}

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::invariants::{alexander_abs_sum_torus, signature_torus};
use super::trace::{trace_character_variety, ComponentKind, TraceOptions, TraceReport};
use super::{KnotError, TorusSpec};
use crate::curves::{figure_eight, intersections, vertical_degree, CurveError, LiftedCurve, DEFAULT_SAMPLES};
use crate::floer::{
    build_complex, canonical_generator, chain_ranks, homology, ChainComplexZ4, ComplexOptions, FloerError, GradedRanks,
    SearchLimits,
};
use crate::maslov::{anchor_absolute, AnchorSource, GradingAssignment};
use crate::Z4;
use crate::pillowcase::{DeckElement, LiftPoint, PerturbationFunction};

/// Amplitudes `δ` of the extra `δ sin` tried on L₀ when it is not transverse
/// to the traced curves.
pub const RETRY_DELTAS: [f64; 5] = [0.0, 0.03, -0.03, 0.07, -0.07];

/// Largest ε at which an arc is anchored directly at its canonical
/// generator. Beyond it that generator may cancel against a neighbour, so
/// the anchor is carried along the family L₀^{ε,g} instead.
pub const ANCHOR_EPS: f64 = 0.05;
const ANCHOR_STEP: f64 = 0.005;
/// Generators further apart than this, in L1 parameter units, are not
/// matched between consecutive steps.
const MATCH_TOL: f64 = 4.0;

/// Parameters of the torus-knot pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusOptions {
    pub eps: f64,
    pub g: PerturbationFunction,
    pub l0_samples: usize,
    pub trace: TraceOptions,
    /// Overrides the built-in signature.
    pub signature: Option<i64>,
    pub limits: SearchLimits,
}

impl Default for TorusOptions {
    fn default() -> Self {
        TorusOptions {
            eps: 0.1,
            g: PerturbationFunction::zero(),
            l0_samples: DEFAULT_SAMPLES,
            trace: TraceOptions::default(),
            signature: None,
            limits: SearchLimits::default(),
        }
    }
}

/// Arcs and circles of the perturbed variety for the decompositions whose
/// structure is known.
pub fn known_structure(spec: &TorusSpec) -> Option<(usize, usize)> {
    match (spec.p, spec.q, spec.r, spec.s) {
        (3, 4, 3, -2) | (5, 7, 3, -2) | (4, 5, 4, -3) => Some((1, 1)),
        (3, 5, 2, -1) => Some((1, 0)),
        (3, 7, 5, -2) | (5, 12, 5, -2) | (4, 7, 2, -1) => Some((1, 2)),
        (5, 17, 7, -2) => Some((1, 3)),
        (5, 11, 9, -4) => Some((1, 4)),
        _ => None,
    }
}

/// One component of the traced variety and its summand of the complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusComponent {
    pub label: String,
    pub kind: ComponentKind,
    /// Degree of the component over its image; the complex is computed for
    /// the image and counted this many times.
    pub cover_degree: u32,
    pub vertical_degree: Option<u64>,
    /// Generator labels and gradings of the image's summand.
    pub labels: Vec<String>,
    pub grades: Vec<u8>,
    /// The generator next to the arc's anchoring corner, if present.
    pub canonical: Option<usize>,
    pub differential: Vec<(usize, usize)>,
    pub chain: GradedRanks,
    pub homology: GradedRanks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusReport {
    pub spec: TorusSpec,
    pub signature: i64,
    pub alexander_sum: i64,
    /// `g` actually used for L₀, after transversality retries.
    pub g_used: PerturbationFunction,
    pub trace: TraceReport,
    /// Image curves, in the order of `components`.
    pub curves: Vec<LiftedCurve>,
    pub complex: ChainComplexZ4,
    pub components: Vec<TorusComponent>,
    pub chain_total: GradedRanks,
    pub total: GradedRanks,
    pub warnings: Vec<String>,
}

impl TorusReport {
    /// Rank of the differential over all components, with multiplicity.
    pub fn differential_rank(&self) -> usize {
        self.components.iter().map(|c| (c.chain.total() - c.homology.total()) / 2 * c.cover_degree as usize).sum()
    }

    pub fn bigon_count(&self) -> usize {
        self.components.iter().map(|c| c.differential.len() * c.cover_degree as usize).sum()
    }
}

/// Largest distance between the two sheets of a multiply covered circle.
const COVER_TOL: f64 = 1e-3;

/// Distance from `p` to the segments of `c` within `window` of segment `i`.
fn distance_near(c: &LiftedCurve, p: LiftPoint, i: i64, window: i64) -> f64 {
    (i - window..i + window)
        .map(|k| {
            let (a, b) = c.segment(k);
            let d = b - a;
            let t = ((p - a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
            a.lerp(b, t).dist(p)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Splits a circle that runs `k > 1` times around its image into the image
/// and `k`.
pub fn primitive_circle(c: &LiftedCurve) -> (LiftedCurve, u32) {
    let h = c.closure;
    if !c.is_circle() || h.sigma != 1 {
        return (c.clone(), 1);
    }
    let g = h.m.gcd(&h.n);
    let n = c.segment_count();
    for k in (2..=g).rev().filter(|k| g % k == 0) {
        let step = DeckElement::translation(h.m / k, h.n / k);
        let target = step.apply(c.vertices[0]);
        let Some(j) = (1..n).min_by(|&a, &b| c.vertices[a].dist(target).total_cmp(&c.vertices[b].dist(target))) else {
            continue;
        };
        if c.vertices[j].dist(target) > COVER_TOL * 10.0 {
            continue;
        }
        let repeats = (0..n).all(|i| distance_near(c, step.apply(c.vertices[i]), (i + j) as i64, 32) < COVER_TOL);
        if !repeats {
            continue;
        }
        let mut verts: Vec<_> = c.vertices[..j].to_vec();
        verts.push(target);
        if let Ok(p) = LiftedCurve::circle(c.label.clone(), verts, step) {
            return (p, k as u32);
        }
    }
    (c.clone(), 1)
}

/// Absolute grades of the generators of `arc` against `L₀^{ε,g}`, carried
/// from ε = `ANCHOR_EPS`, where the canonical generator gets `signature`.
///
/// Along the way generators are matched by their parameter on the arc,
/// which moves continuously; pairs that cancel drop out. Every matched
/// generator must give the same shift.
pub fn continued_grades(
    arc: &LiftedCurve,
    eps: f64,
    g: &PerturbationFunction,
    samples: usize,
    signature: i64,
) -> Result<Vec<Z4>, KnotError> {
    let relative = |e: f64| -> Result<(Vec<f64>, Vec<Z4>), KnotError> {
        let l0 = figure_eight(e, g, samples)?;
        let gens = intersections(&l0, arc)?;
        let grading = GradingAssignment::compute_component(&l0, arc, &gens)?;
        Ok((gens.iter().map(|x| x.s1).collect(), grading.grades))
    };
    let start = eps.min(ANCHOR_EPS);
    let l0 = figure_eight(start, g, samples)?;
    let gens = intersections(&l0, arc)?;
    let r = canonical_generator(arc, &gens)
        .ok_or_else(|| KnotError::InvalidSpec(format!("arc `{}` has no canonical generator", arc.label)))?;
    let rel = GradingAssignment::compute_component(&l0, arc, &gens)?.grades;
    let shift = Z4::new(signature) - rel[r];
    let mut s1: Vec<f64> = gens.iter().map(|x| x.s1).collect();
    let mut grades: Vec<Z4> = rel.iter().map(|&x| x + shift).collect();
    let mut e = start;
    let mut step = ANCHOR_STEP;
    while e < eps {
        let next = (e + step).min(eps);
        let attempt = relative(next).and_then(|(t1, rel)| {
            let mut shifts = Vec::new();
            for (j, &t) in t1.iter().enumerate() {
                let near: Vec<usize> = (0..s1.len()).filter(|&i| (s1[i] - t).abs() < MATCH_TOL).collect();
                if let [i] = near[..] {
                    shifts.push(grades[i] - rel[j]);
                }
            }
            match shifts.first() {
                Some(&d) if shifts.iter().all(|&x| x == d) => Ok((t1, rel.iter().map(|&x| x + d).collect())),
                _ => Err(KnotError::OracleMismatch(format!("grading continuation fails at ε = {next}"))),
            }
        });
        match attempt {
            Ok((t1, g1)) => {
                s1 = t1;
                grades = g1;
                e = next;
                step = (step * 2.0).min(ANCHOR_STEP);
            }
            Err(err) => {
                step /= 2.0;
                if step < 1e-5 {
                    return Err(err);
                }
            }
        }
    }
    Ok(grades)
}

/// Traces the perturbed variety of `spec`, projects it to the pillowcase and
/// computes the Floer homology of its image against L₀.
pub fn torus_knot_homology(spec: &TorusSpec, opts: &TorusOptions) -> Result<TorusReport, KnotError> {
    let signature = match opts.signature {
        Some(s) => s,
        None => signature_torus(spec.p, spec.q)?,
    };
    let alexander_sum = alexander_abs_sum_torus(spec.p, spec.q)?;
    let trace = trace_character_variety(spec, &opts.trace)?;
    let mut warnings = Vec::new();
    for c in &trace.components {
        if c.pillow_trace.is_none() {
            let at = c.singularities.first().copied().unwrap_or(c.samples[0]);
            return Err(KnotError::SingularPoint {
                at,
                reason: format!("component {} passes a crossing; perturb further", c.label),
            });
        }
    }
    let arcs = trace.components.iter().filter(|c| c.kind == ComponentKind::Arc).count();
    let circles = trace.components.len() - arcs;
    if let Some(expected) = known_structure(spec) {
        if expected != (arcs, circles) {
            warnings.push(format!(
                "traced {arcs} arcs and {circles} circles, expected {} and {}",
                expected.0, expected.1
            ));
        }
    }
    if 2 * arcs != 2 {
        warnings.push(format!("{} abelian endpoints, expected 2", 2 * arcs));
    }

    let mut images = Vec::new();
    let mut covers = Vec::new();
    for c in &trace.components {
        let curve = c.pillow_trace.clone().expect("checked above");
        let (image, k) = primitive_circle(&curve);
        images.push(image);
        covers.push(k);
    }

    let copts = ComplexOptions { limits: opts.limits, signature: Some(signature) };
    let mut last_err = None;
    let mut found = None;
    for delta in RETRY_DELTAS {
        let mut g = opts.g.clone();
        if delta != 0.0 {
            g.terms.push((1, delta));
        }
        let l0 = figure_eight(opts.eps, &g, opts.l0_samples)?;
        match build_complex(&l0, &images, &copts) {
            Ok(c) => {
                found = Some((g, c));
                break;
            }
            Err(FloerError::Curve(e @ CurveError::NonTransverse { .. })) => {
                warnings.push(format!("L0 with δ = {delta} is not transverse: {e}"));
                last_err = Some(FloerError::Curve(e));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let Some((g_used, complex)) = found else {
        return Err(last_err.expect("at least one attempt").into());
    };

    let mut complex = complex;
    if opts.eps > ANCHOR_EPS {
        for (i, image) in images.iter().enumerate() {
            if image.is_circle() {
                continue;
            }
            let grades = continued_grades(image, opts.eps, &g_used, opts.l0_samples, signature)?;
            if let Some(&value) = grades.first() {
                complex.grading = anchor_absolute(&complex.grading, i, 0, value, AnchorSource::Continuation)?;
            }
            if complex.grading.components[i].grades != grades {
                return Err(KnotError::OracleMismatch(format!("{}: continued grades differ from relative ones", image.label)));
            }
        }
    }
    let chains = chain_ranks(&complex);
    let hom = homology(&complex)?;
    let mut components = Vec::new();
    let mut chain_total = GradedRanks::default();
    let mut total = GradedRanks::default();
    for (i, c) in trace.components.iter().enumerate() {
        let k = covers[i];
        let scale = |r: GradedRanks| GradedRanks(r.0.map(|x| x * k as usize));
        let comp = &complex.components[i];
        let grades = &complex.grading.components[i];
        if grades.anchor.is_none() && hom.components[i] != GradedRanks::uniform(hom.components[i].0[0]) {
            warnings.push(format!("{} is unanchored and its homology is not uniform", c.label));
        }
        chain_total = chain_total + scale(chains.components[i]);
        total = total + scale(hom.components[i]);
        components.push(TorusComponent {
            label: c.label.clone(),
            kind: c.kind,
            cover_degree: k,
            vertical_degree: images[i].is_circle().then(|| vertical_degree(&images[i]).ok()).flatten().map(|d| d * k as u64),
            labels: comp.labels.clone(),
            grades: grades.grades.iter().map(|g| g.index() as u8).collect(),
            canonical: canonical_generator(&images[i], &comp.generators),
            differential: comp.differential.clone(),
            chain: scale(chains.components[i]),
            homology: scale(hom.components[i]),
        });
    }
    if total.total() as i64 != alexander_sum {
        warnings.push(format!("homology rank {} differs from the Alexander sum {alexander_sum}", total.total()));
    }
    Ok(TorusReport {
        spec: *spec,
        signature,
        alexander_sum,
        g_used,
        trace,
        curves: images,
        complex,
        components,
        chain_total,
        total,
        warnings,
    })
}

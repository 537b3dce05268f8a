use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{Matrix2x3, Matrix3, Vector2, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::project::{pillow_coords, unfold_next};
use super::psi::{psi, psi_jacobian, BoxPoint};
use super::{KnotError, TorusSpec};
use crate::curves::{LiftedCurve, CurveError};
use crate::pillowcase::{DeckElement, LiftPoint};

/// Tuning knobs for seeding and continuation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Grid cells per box side for the seed scan.
    pub seed_grid: usize,
    /// Residual `|Ψ|` accepted by the corrector.
    pub newton_tol: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Largest pillowcase displacement per step.
    pub max_image_step: f64,
    /// Largest tangent turn per step, in radians.
    pub max_turn: f64,
    /// Seeds closer than this to a traced segment are duplicates.
    pub dedupe_tol: f64,
    /// Distance from a face at which a branch is ended.
    pub face_tol: f64,
    /// When no step longer than this is admissible away from a face, the
    /// branch is taken to meet a crossing of the zero set.
    pub crossing_step: f64,
    /// Length of the straight step taken through such a crossing.
    pub crossing_jump: f64,
    /// Distance from the faces `u, v ∈ {0, π}` at which a branch is ended.
    pub junction_tol: f64,
    /// Arc vertices this close to their end corner are dropped.
    pub corner_trim: f64,
    pub max_samples: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            seed_grid: 64,
            newton_tol: 1e-12,
            max_step: 1e-2,
            min_step: 1e-11,
            max_image_step: 0.02,
            max_turn: 0.05,
            dedupe_tol: 2e-4,
            face_tol: 1e-9,
            crossing_step: 1e-6,
            crossing_jump: 1e-3,
            junction_tol: 1e-7,
            corner_trim: 1e-6,
            max_samples: 2_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Arc,
    Circle,
}

/// Face of the box `[0, π]² × [-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Face {
    UZero,
    UPi,
    VZero,
    VPi,
    TauMinus,
    TauPlus,
}

/// Where an arc meets the boundary of the box, i.e. an abelian
/// representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoint {
    pub point: [f64; 3],
    pub face: Face,
    /// Corner of the pillowcase it maps to, in units of π.
    pub corner: (i64, i64),
}

/// A traced connected component of the zero set of `Ψ` in the box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharVarietyComponent {
    pub label: String,
    pub kind: ComponentKind,
    /// Ordered `(u, v, τ)` samples; a circle does not repeat its first
    /// sample.
    pub samples: Vec<[f64; 3]>,
    /// Continuous lift of the pillowcase image of the samples; absent when
    /// the component passes a crossing and its image is not immersed.
    pub pillow_trace: Option<LiftedCurve>,
    pub endpoints: Vec<Endpoint>,
    /// Largest `|Ψ|` over the samples.
    pub residual: f64,
    /// Crossings of the zero set met along the component.
    pub singularities: Vec<[f64; 3]>,
}

/// Result of tracing: components plus anything worth reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub spec: TorusSpec,
    pub options: TraceOptions,
    pub components: Vec<CharVarietyComponent>,
    pub seeds: usize,
    pub diagnostics: Vec<String>,
}

/// Reproducibility record of one traced component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SidecarRecord {
    pub label: String,
    pub kind: ComponentKind,
    pub samples: Vec<[f64; 3]>,
    pub residual: f64,
}

impl TraceReport {
    pub fn sidecar(&self) -> Vec<SidecarRecord> {
        self.components
            .iter()
            .map(|c| SidecarRecord { label: c.label.clone(), kind: c.kind, samples: c.samples.clone(), residual: c.residual })
            .collect()
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string(&self.sidecar()).expect("sidecar records serialize")
    }
}

fn box_point(x: [f64; 3]) -> BoxPoint {
    BoxPoint::new(x[0], x[1], x[2])
}

fn arr(x: BoxPoint) -> [f64; 3] {
    [x[0], x[1], x[2]]
}

const LOWER: [f64; 3] = [0.0, 0.0, -1.0];
const UPPER: [f64; 3] = [PI, PI, 1.0];

fn inside(x: BoxPoint) -> bool {
    (0..3).all(|i| x[i] >= LOWER[i] && x[i] <= UPPER[i])
}

fn box_gap(x: BoxPoint) -> f64 {
    (0..3).map(|i| (x[i] - LOWER[i]).min(UPPER[i] - x[i])).fold(f64::INFINITY, f64::min)
}

/// Distance along `t` from `x` to the first face, with that face.
fn face_hit(x: BoxPoint, t: Vector3<f64>) -> (f64, Face) {
    let faces = [(Face::UZero, Face::UPi), (Face::VZero, Face::VPi), (Face::TauMinus, Face::TauPlus)];
    let mut best = (f64::INFINITY, Face::UZero);
    for i in 0..3 {
        if t[i] < 0.0 {
            let d = (LOWER[i] - x[i]) / t[i];
            if d < best.0 {
                best = (d, faces[i].0);
            }
        } else if t[i] > 0.0 {
            let d = (UPPER[i] - x[i]) / t[i];
            if d < best.0 {
                best = (d, faces[i].1);
            }
        }
    }
    best
}

struct System<'a> {
    spec: &'a TorusSpec,
}

impl System<'_> {
    fn value(&self, x: BoxPoint) -> Vector2<f64> {
        let f = psi(self.spec, x);
        Vector2::new(f[0], f[1])
    }

    fn jacobian(&self, x: BoxPoint) -> Matrix2x3<f64> {
        psi_jacobian(self.spec, x).fixed_columns::<3>(2).into_owned()
    }

    /// Unnormalized tangent `∇Ψ₁ × ∇Ψ₂` and the sine of the angle between
    /// the gradients.
    fn raw_tangent(&self, x: BoxPoint) -> (Vector3<f64>, f64) {
        let j = self.jacobian(x);
        let g1: Vector3<f64> = j.row(0).transpose();
        let g2: Vector3<f64> = j.row(1).transpose();
        let t = g1.cross(&g2);
        let scale = g1.norm() * g2.norm();
        (t, if scale > 0.0 { t.norm() / scale } else { 0.0 })
    }

    /// Minimum-norm Gauss–Newton projection onto the zero set.
    fn project(&self, mut x: BoxPoint, tol: f64) -> Option<BoxPoint> {
        for _ in 0..40 {
            let f = self.value(x);
            if f.norm() < tol {
                return Some(x);
            }
            let j = self.jacobian(x);
            let jjt = j * j.transpose();
            let step = j.transpose() * jjt.try_inverse()? * f;
            x -= step;
            if !x.iter().all(|c| c.is_finite()) {
                return None;
            }
        }
        (self.value(x).norm() < tol).then_some(x)
    }

    /// Newton on `Ψ = 0` together with `t · (x - pred) = 0`.
    fn correct(&self, pred: BoxPoint, t: Vector3<f64>, tol: f64) -> Option<BoxPoint> {
        let mut x = pred;
        for _ in 0..12 {
            let f = self.value(x);
            let c = t.dot(&(x - pred));
            if f.norm() < tol && c.abs() < 1e-13 {
                return Some(x);
            }
            let j = self.jacobian(x);
            let m = Matrix3::from_rows(&[j.row(0).into_owned(), j.row(1).into_owned(), t.transpose()]);
            let rhs = Vector3::new(f[0], f[1], c);
            x -= m.try_inverse()? * rhs;
        }
        (self.value(x).norm() < tol).then_some(x)
    }
}

/// One branch of a continuation run.
struct Branch {
    samples: Vec<BoxPoint>,
    lifts: Vec<LiftPoint>,
    end: BranchEnd,
    singular: Vec<BoxPoint>,
}

enum BranchEnd {
    Face(Face),
    Closed,
}

fn trace_branch(
    sys: &System<'_>,
    start: BoxPoint,
    start_lift: LiftPoint,
    direction: f64,
    opts: &TraceOptions,
) -> Result<Branch, KnotError> {
    let (raw0, _) = sys.raw_tangent(start);
    let mut orient = direction;
    let t_start = raw0.normalize() * orient;
    let mut x = start;
    let mut t = t_start;
    let mut lift = start_lift;
    let mut h = opts.max_step;
    let mut travelled = 0.0;
    let mut branch = Branch { samples: vec![start], lifts: vec![start_lift], end: BranchEnd::Closed, singular: Vec::new() };
    loop {
        if branch.samples.len() > opts.max_samples {
            return Err(KnotError::SingularPoint { at: arr(x), reason: "sample budget exhausted".into() });
        }
        // Close the loop when the start comes within one step ahead.
        let to_start = start - x;
        if travelled > 4.0 * opts.max_step && to_start.norm() < 1.5 * h && to_start.dot(&t) > 0.0 && t.dot(&t_start) > 0.9 {
            if let Some(y) = sys.correct(start, t_start, opts.newton_tol) {
                if (y - start).norm() < 1e-6 {
                    branch.end = BranchEnd::Closed;
                    return Ok(branch);
                }
            }
        }
        // The zero set meets the faces u, v ∈ {0, π} in segments parallel to
        // the τ axis; stop before the junction with such a segment.
        if let Some(face) = abelian_face(x, opts.junction_tol) {
            branch.end = BranchEnd::Face(face);
            return Ok(branch);
        }
        let (gap, face) = face_hit(x, t);
        if gap <= opts.face_tol {
            let end = x + t * gap.max(0.0);
            let p = pillow_coords(sys.spec, end)?;
            let (l, _) = unfold_next(p, lift);
            branch.samples.push(end);
            branch.lifts.push(l);
            branch.end = BranchEnd::Face(face);
            return Ok(branch);
        }
        let mut accepted = None;
        let mut step = h.min(gap);
        let floor = if gap < 4.0 * opts.crossing_step { opts.min_step } else { opts.crossing_step };
        while step >= floor {
            match try_step(sys, x, t, lift, orient, step, false, opts)? {
                Some(found) => {
                    accepted = Some(found);
                    break;
                }
                None => step /= 2.0,
            }
        }
        if accepted.is_none() && floor == opts.crossing_step {
            // Continue straight through a crossing of two branches.
            accepted = try_step(sys, x, t, lift, orient, opts.crossing_jump, true, opts)?
                .map(|(y, ty, ly, flipped, _, used)| (y, ty, ly, flipped, true, used));
        }
        let Some((y, ty, ly, flipped, crossed, used)) = accepted else {
            // No admissible step: a face is within reach only if the gap is
            // tiny, otherwise the zero set is singular here.
            if gap < 1e-6 {
                let end = x + t * gap;
                let p = pillow_coords(sys.spec, end)?;
                let (l, _) = unfold_next(p, lift);
                branch.samples.push(end);
                branch.lifts.push(l);
                branch.end = BranchEnd::Face(face);
                return Ok(branch);
            }
            return Err(KnotError::SingularPoint { at: arr(x), reason: "continuation step underflow".into() });
        };
        if flipped || crossed {
            if flipped {
                orient = -orient;
            }
            branch.singular.push(y);
        }
        travelled += used;
        x = y;
        t = ty;
        lift = ly;
        branch.samples.push(y);
        branch.lifts.push(ly);
        h = if used >= step_floor(h) { (h * 1.5).min(opts.max_step) } else { used };
    }
}

/// One predictor-corrector step of length `step`, or `None` if it is not
/// admissible. Returns the new point, its oriented tangent and lift, whether
/// the orientation of the raw tangent flipped, `false` and the step length.
/// A flip away from a crossing means the corrector landed on another branch.
#[allow(clippy::type_complexity, clippy::too_many_arguments)]
fn try_step(
    sys: &System<'_>,
    x: BoxPoint,
    t: Vector3<f64>,
    lift: LiftPoint,
    orient: f64,
    step: f64,
    allow_flip: bool,
    opts: &TraceOptions,
) -> Result<Option<(BoxPoint, Vector3<f64>, LiftPoint, bool, bool, f64)>, KnotError> {
    let pred = x + t * step;
    let Some(y) = sys.correct(pred, t, opts.newton_tol) else {
        return Ok(None);
    };
    if !inside(y) || (y - pred).norm() > 0.5 * step {
        return Ok(None);
    }
    let (raw, _) = sys.raw_tangent(y);
    let mut ty = raw.normalize() * orient;
    let flipped = ty.dot(&t) < 0.0;
    if flipped {
        if !allow_flip {
            return Ok(None);
        }
        ty = -ty;
    }
    if ty.dot(&t).min(1.0).acos() > opts.max_turn {
        return Ok(None);
    }
    let p = pillow_coords(sys.spec, y)?;
    let (ly, d) = unfold_next(p, lift);
    if d > opts.max_image_step && step > opts.min_step * 2.0 {
        return Ok(None);
    }
    Ok(Some((y, ty, ly, flipped, false, step)))
}

fn abelian_face(x: BoxPoint, tol: f64) -> Option<Face> {
    [(x[0], Face::UZero), (PI - x[0], Face::UPi), (x[1], Face::VZero), (PI - x[1], Face::VPi)]
        .into_iter()
        .find(|&(d, _)| d < tol)
        .map(|(_, f)| f)
}

fn step_floor(h: f64) -> f64 {
    h * 0.999
}

/// Grid cells (by their lower corner index) where both `Ψ₁` and `Ψ₂` change
/// sign among the corners.
fn sign_change_cells(spec: &TorusSpec, n: usize) -> Vec<BoxPoint> {
    let m = n + 1;
    let coord = |i: usize, k: usize| LOWER[k] + (UPPER[k] - LOWER[k]) * i as f64 / n as f64;
    let values: Vec<[f64; 2]> = (0..m * m * m)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (m * m), (idx / m) % m, idx % m);
            psi(spec, BoxPoint::new(coord(i, 0), coord(j, 1), coord(k, 2)))
        })
        .collect();
    let at = |i: usize, j: usize, k: usize| values[(i * m + j) * m + k];
    (0..n * n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            let mut lo = [f64::INFINITY; 2];
            let mut hi = [f64::NEG_INFINITY; 2];
            for c in 0..8 {
                let v = at(i + (c >> 2 & 1), j + (c >> 1 & 1), k + (c & 1));
                for f in 0..2 {
                    lo[f] = lo[f].min(v[f]);
                    hi[f] = hi[f].max(v[f]);
                }
            }
            (lo[0] <= 0.0 && hi[0] >= 0.0 && lo[1] <= 0.0 && hi[1] >= 0.0).then(|| {
                BoxPoint::new(
                    (coord(i, 0) + coord(i + 1, 0)) / 2.0,
                    (coord(j, 1) + coord(j + 1, 1)) / 2.0,
                    (coord(k, 2) + coord(k + 1, 2)) / 2.0,
                )
            })
        })
        .collect()
}

/// Grid cells of the dense sign scan, exposed for testing.
pub fn sign_change_cell_count(spec: &TorusSpec, n: usize) -> usize {
    sign_change_cells(spec, n).len()
}

/// Spatial hash of traced segments for seed deduplication.
struct SegmentIndex {
    cell: f64,
    cells: HashMap<(i64, i64, i64), Vec<(BoxPoint, BoxPoint)>>,
}

impl SegmentIndex {
    fn new(cell: f64) -> SegmentIndex {
        SegmentIndex { cell, cells: HashMap::new() }
    }

    fn key(&self, x: BoxPoint) -> (i64, i64, i64) {
        let f = |c: f64| (c / self.cell).floor() as i64;
        (f(x[0]), f(x[1]), f(x[2]))
    }

    fn insert(&mut self, a: BoxPoint, b: BoxPoint) {
        let (ka, kb) = (self.key(a), self.key(b));
        for i in ka.0.min(kb.0)..=ka.0.max(kb.0) {
            for j in ka.1.min(kb.1)..=ka.1.max(kb.1) {
                for k in ka.2.min(kb.2)..=ka.2.max(kb.2) {
                    self.cells.entry((i, j, k)).or_default().push((a, b));
                }
            }
        }
    }

    fn distance(&self, x: BoxPoint) -> f64 {
        let k = self.key(x);
        let mut best = f64::INFINITY;
        for di in -1..=1 {
            for dj in -1..=1 {
                for dk in -1..=1 {
                    if let Some(segs) = self.cells.get(&(k.0 + di, k.1 + dj, k.2 + dk)) {
                        for &(a, b) in segs {
                            let d = b - a;
                            let s = if d.norm_squared() > 0.0 { ((x - a).dot(&d) / d.norm_squared()).clamp(0.0, 1.0) } else { 0.0 };
                            best = best.min((a + d * s - x).norm());
                        }
                    }
                }
            }
        }
        best
    }
}

fn corner_of(lift: LiftPoint) -> (i64, i64) {
    lift.nearest_lattice()
}

fn assemble(
    spec: &TorusSpec,
    label: String,
    forward: Branch,
    backward: Option<Branch>,
    trim: f64,
) -> Result<CharVarietyComponent, KnotError> {
    let sys = System { spec };
    let (samples, lifts, ends, singular) = match (forward.end, backward) {
        (BranchEnd::Closed, _) => (forward.samples, forward.lifts, Vec::new(), forward.singular),
        (BranchEnd::Face(f1), Some(back)) => {
            let BranchEnd::Face(f0) = back.end else {
                return Err(KnotError::SingularPoint {
                    at: arr(forward.samples[0]),
                    reason: "branch closed in one direction only".into(),
                });
            };
            let mut samples: Vec<BoxPoint> = back.samples.iter().rev().copied().collect();
            let mut lifts: Vec<LiftPoint> = back.lifts.iter().rev().copied().collect();
            samples.extend_from_slice(&forward.samples[1..]);
            lifts.extend_from_slice(&forward.lifts[1..]);
            let mut singular = back.singular;
            singular.extend(forward.singular);
            (samples, lifts, vec![f0, f1], singular)
        }
        (BranchEnd::Face(_), None) => unreachable!("arcs are traced in both directions"),
    };
    let residual = samples.iter().map(|&x| sys.value(x).norm()).fold(0.0, f64::max);
    let kind = if ends.is_empty() { ComponentKind::Circle } else { ComponentKind::Arc };
    let mut verts = lifts.clone();
    let endpoints: Vec<Endpoint> = ends
        .iter()
        .zip([0, lifts.len() - 1])
        .map(|(&face, i)| Endpoint { point: arr(samples[i]), face, corner: corner_of(lifts[i]) })
        .collect();
    let curve = match kind {
        ComponentKind::Arc => {
            let corner = |e: &Endpoint| LiftPoint::new(e.corner.0 as f64 * PI, e.corner.1 as f64 * PI);
            let (c0, c1) = (corner(&endpoints[0]), corner(&endpoints[1]));
            let n = verts.len();
            let mut kept = vec![c0];
            kept.extend(verts[1..n - 1].iter().copied().filter(|v| v.dist(c0) > trim && v.dist(c1) > trim));
            kept.push(c1);
            verts = kept;
            dedupe_vertices(&mut verts);
            LiftedCurve::arc(label.clone(), verts)
        }
        ComponentKind::Circle => {
            let first = lifts[0];
            let p = pillow_coords(spec, samples[0])?;
            let (back_to_start, _) = unfold_next(p, *lifts.last().expect("nonempty"));
            let closure = DeckElement::relating(first, back_to_start, 1e-6).ok_or(KnotError::Curve(
                CurveError::ClosureMismatch { label: label.clone(), gap: first.dist(back_to_start) },
            ))?;
            verts.push(closure.apply(first));
            dedupe_vertices(&mut verts);
            LiftedCurve::circle(label.clone(), verts, closure)
        }
    };
    // Through a crossing the image may fold back; such a component has no
    // immersed image.
    let curve = match curve {
        Ok(c) => Some(c),
        Err(_) if !singular.is_empty() => None,
        Err(e) => return Err(e.into()),
    };
    Ok(CharVarietyComponent {
        label,
        kind,
        samples: samples.into_iter().map(arr).collect(),
        pillow_trace: curve,
        endpoints,
        residual,
        singularities: singular.into_iter().map(arr).collect(),
    })
}

/// Drops vertices closer than `1e-12` to their predecessor, keeping the last.
fn dedupe_vertices(v: &mut Vec<LiftPoint>) {
    let last = *v.last().expect("nonempty");
    let mut out: Vec<LiftPoint> = Vec::with_capacity(v.len());
    for &p in v.iter() {
        if out.last().is_none_or(|q: &LiftPoint| q.dist(p) > 1e-12) {
            out.push(p);
        }
    }
    if out.len() > 1 && out[out.len() - 1].dist(last) > 0.0 {
        let n = out.len();
        out[n - 1] = last;
    }
    *v = out;
}

/// Seeds the zero set of `Ψ` on a grid, refines each seed onto it and traces
/// every component by pseudo-arclength continuation.
pub fn trace_character_variety(spec: &TorusSpec, opts: &TraceOptions) -> Result<TraceReport, KnotError> {
    let sys = System { spec };
    let cells = sign_change_cells(spec, opts.seed_grid);
    let cell_size = PI / opts.seed_grid as f64;
    let mut seeds: Vec<BoxPoint> = cells
        .par_iter()
        .filter_map(|&c| {
            let y = sys.project(c, opts.newton_tol)?;
            let interior = box_gap(y) > 1e-6 && (y - c).norm() < 2.0 * cell_size;
            interior.then_some(y)
        })
        .collect();
    seeds.sort_by(|a, b| a.iter().zip(b.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    let mut index = SegmentIndex::new(0.05);
    let mut components = Vec::new();
    let mut diagnostics = Vec::new();
    for &seed in &seeds {
        if index.distance(seed) < opts.dedupe_tol {
            continue;
        }
        let (_, sine) = sys.raw_tangent(seed);
        if sine < 1e-6 {
            diagnostics.push(format!("seed at {:?} is near a singular point; skipped", arr(seed)));
            continue;
        }
        let lift = pillow_coords(spec, seed)?;
        let forward = trace_branch(&sys, seed, lift, 1.0, opts)?;
        let backward = match forward.end {
            BranchEnd::Closed => None,
            BranchEnd::Face(_) => Some(trace_branch(&sys, seed, lift, -1.0, opts)?),
        };
        let label = format!("R{}", components.len());
        let comp = assemble(spec, label, forward, backward, opts.corner_trim)?;
        let pts: Vec<BoxPoint> = comp.samples.iter().map(|&x| box_point(x)).collect();
        for w in pts.windows(2) {
            index.insert(w[0], w[1]);
        }
        if comp.kind == ComponentKind::Circle {
            index.insert(pts[pts.len() - 1], pts[0]);
        }
        for s in &comp.singularities {
            diagnostics.push(format!("{}: singular point near ({:.6}, {:.6}, {:.6})", comp.label, s[0], s[1], s[2]));
        }
        components.push(comp);
    }
    Ok(TraceReport { spec: *spec, options: *opts, components, seeds: seeds.len(), diagnostics })
}

mod common;

use std::f64::consts::PI;

use common::{fixture, run_fixture, TORUS_FIXTURES};
use pillowfloer::curves::{is_vertically_monotonic, vertical_degree};
use pillowfloer::floer::GradedRanks;
use pillowfloer::knots::{
    psi, psi_full, psi_jacobian_full, sign_change_cell_count, trace_character_variety, BoxPoint, ComponentKind,
    TorusSpec, TraceOptions,
};
use proptest::prelude::*;

fn spec(p: i64, q: i64, r: i64, s: i64, a: f64, b: f64) -> TorusSpec {
    TorusSpec::new(p, q, r, s, a, b).unwrap()
}

const DECOMPOSITIONS: [(i64, i64, i64, i64); 9] =
    [(3, 7, 5, -2), (5, 7, 3, -2), (5, 12, 5, -2), (5, 17, 7, -2), (3, 4, 3, -2), (3, 5, 2, -1), (4, 5, 4, -3), (4, 7, 2, -1), (5, 11, 9, -4)];

#[test]
fn psi_at_the_origin() {
    for (p, q, r, s) in DECOMPOSITIONS {
        for tau in [-1.0, -0.3, 0.0, 0.8, 1.0] {
            let v = psi(&spec(p, q, r, s, 0.0, 0.0), BoxPoint::new(0.0, 0.0, tau));
            assert_eq!(v, [1.0, 1.0]);
        }
    }
}

/// Closed-form partials at zero perturbation: with `α = (s+p)u`,
/// `β = (q-r)v`, `Ψ₁ = cos β cos α - τ sin β sin α`, and with `α = su`,
/// `β = -rv` for `Ψ₂`.
fn unperturbed_partials(p: f64, q: f64, r: f64, s: f64, u: f64, v: f64, tau: f64) -> [[f64; 3]; 2] {
    let row = |ka: f64, kb: f64| {
        let (a, b) = (ka * u, kb * v);
        [
            -ka * (b.cos() * a.sin() + tau * b.sin() * a.cos()),
            -kb * (b.sin() * a.cos() + tau * b.cos() * a.sin()),
            -(b.sin() * a.sin()),
        ]
    };
    [row(s + p, q - r), row(s, -r)]
}

#[test]
fn jacobian_matches_unperturbed_partials() {
    for (p, q, r, s) in DECOMPOSITIONS {
        let sp = spec(p, q, r, s, 0.0, 0.0);
        for i in 0..50 {
            let t = i as f64 / 50.0;
            let (u, v, tau) = (PI * t, PI * (1.0 - t * t), (7.0 * t).sin());
            let j = psi_jacobian_full(&sp, 0.0, 0.0, BoxPoint::new(u, v, tau));
            let want = unperturbed_partials(p as f64, q as f64, r as f64, s as f64, u, v, tau);
            for row in 0..2 {
                for c in 0..3 {
                    assert!((j[(row, c + 2)] - want[row][c]).abs() < 1e-12, "({p},{q}) row {row} col {c}");
                }
            }
        }
    }
}

/// Largest relative error over all entries, with the scale floored at 1.
fn fd_error(sp: &TorusSpec, x: [f64; 5]) -> f64 {
    const H: f64 = 1e-6;
    let f = |y: [f64; 5]| psi_full(sp, y[0], y[1], BoxPoint::new(y[2], y[3], y[4]));
    let j = psi_jacobian_full(sp, x[0], x[1], BoxPoint::new(x[2], x[3], x[4]));
    let mut worst: f64 = 0.0;
    for c in 0..5 {
        let (mut hi, mut lo) = (x, x);
        hi[c] += H;
        lo[c] -= H;
        let (fh, fl) = (f(hi), f(lo));
        for row in 0..2 {
            let fd = (fh[row] - fl[row]) / (2.0 * H);
            worst = worst.max((fd - j[(row, c)]).abs() / j[(row, c)].abs().max(1.0));
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobian_matches_central_differences(
        k in 0usize..9,
        ea in -0.1f64..0.1,
        eb in -0.1f64..0.1,
        u in 0.0f64..PI,
        v in 0.0f64..PI,
        tau in -1.0f64..1.0,
    ) {
        let (p, q, r, s) = DECOMPOSITIONS[k];
        let err = fd_error(&spec(p, q, r, s, ea, eb), [ea, eb, u, v, tau]);
        prop_assert!(err < 1e-6, "relative error {err:e}");
    }
}

/// Grid cells of `[0, π]² × [-1, 1]` whose corner values of both `Ψ₁` and
/// `Ψ₂` take both signs.
fn brute_sign_cells(sp: &TorusSpec, n: usize) -> Vec<[usize; 3]> {
    let node = |i: usize, j: usize, k: usize| {
        let x = BoxPoint::new(PI * i as f64 / n as f64, PI * j as f64 / n as f64, -1.0 + 2.0 * k as f64 / n as f64);
        psi(sp, x)
    };
    let m = n + 1;
    let mut vals = vec![[0.0; 2]; m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                vals[(i * m + j) * m + k] = node(i, j, k);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut pos = [false; 2];
                let mut neg = [false; 2];
                for d in 0..8 {
                    let val = vals[((i + (d & 1)) * m + j + (d >> 1 & 1)) * m + k + (d >> 2)];
                    for c in 0..2 {
                        pos[c] |= val[c] >= 0.0;
                        neg[c] |= val[c] <= 0.0;
                    }
                }
                if pos[0] && neg[0] && pos[1] && neg[1] {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

#[test]
fn traced_zero_set_matches_dense_sign_scan() {
    let n = 200;
    let sp = spec(3, 5, 2, -1, 0.0, 0.0);
    let cells = brute_sign_cells(&sp, n);
    assert_eq!(cells.len(), sign_change_cell_count(&sp, n));
    let rep = trace_character_variety(&sp, &TraceOptions::default()).unwrap();
    let samples: Vec<[f64; 3]> = rep.components.iter().flat_map(|c| c.samples.iter().copied()).collect();
    let h = [PI / n as f64, PI / n as f64, 2.0 / n as f64];
    let cell_of = |x: [f64; 3]| {
        [
            ((x[0] / h[0]) as usize).min(n - 1),
            ((x[1] / h[1]) as usize).min(n - 1),
            (((x[2] + 1.0) / h[2]) as usize).min(n - 1),
        ]
    };
    let flagged: std::collections::HashSet<[usize; 3]> = cells.iter().copied().collect();
    // Every traced sample lies in or next to a flagged cell.
    for &x in &samples {
        let c = cell_of(x);
        let hit = (0..27).any(|d| {
            let off = [d % 3, d / 3 % 3, d / 9];
            let nb = [0, 1, 2].map(|i| (c[i] + off[i]).wrapping_sub(1));
            flagged.contains(&nb)
        });
        assert!(hit, "sample {x:?} is far from every sign change");
    }
    // Every flagged cell holding a zero nearby is close to the traced set.
    let mut genuine = 0;
    for c in &cells {
        let start = [(c[0] as f64 + 0.5) * h[0], (c[1] as f64 + 0.5) * h[1], -1.0 + (c[2] as f64 + 0.5) * h[2]];
        let Some(z) = gauss_newton(&sp, start) else { continue };
        if (0..3).any(|i| (z[i] - start[i]).abs() > 1.5 * h[i]) {
            continue;
        }
        genuine += 1;
        let d = samples.iter().map(|s| (0..3).map(|i| (s[i] - z[i]).powi(2)).sum::<f64>().sqrt()).fold(f64::INFINITY, f64::min);
        assert!(d < 0.02, "zero {z:?} is {d} from the trace");
    }
    assert!(genuine > cells.len() / 4, "{genuine} of {} cells hold a zero", cells.len());
}

/// Minimum-norm Newton iteration with a finite-difference Jacobian.
fn gauss_newton(sp: &TorusSpec, mut x: [f64; 3]) -> Option<[f64; 3]> {
    let f = |y: [f64; 3]| psi(sp, BoxPoint::new(y[0], y[1], y[2]));
    for _ in 0..40 {
        let v = f(x);
        if v[0].hypot(v[1]) < 1e-12 {
            return Some(x);
        }
        let mut j = [[0.0; 3]; 2];
        for c in 0..3 {
            let (mut hi, mut lo) = (x, x);
            hi[c] += 1e-7;
            lo[c] -= 1e-7;
            let (a, b) = (f(hi), f(lo));
            for r in 0..2 {
                j[r][c] = (a[r] - b[r]) / 2e-7;
            }
        }
        // Step = Jᵀ (J Jᵀ)⁻¹ v.
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let (g00, g01, g11) = (dot(j[0], j[0]), dot(j[0], j[1]), dot(j[1], j[1]));
        let det = g00 * g11 - g01 * g01;
        if det.abs() < 1e-14 {
            return None;
        }
        let w = [(g11 * v[0] - g01 * v[1]) / det, (g00 * v[1] - g01 * v[0]) / det];
        for c in 0..3 {
            x[c] -= j[0][c] * w[0] + j[1][c] * w[1];
        }
    }
    None
}

#[test]
fn samples_have_small_residual() {
    for (p, q, r, s) in DECOMPOSITIONS {
        let b = if (p, q) == (3, 4) { 0.01 } else { 0.0 };
        let sp = spec(p, q, r, s, 0.01, b);
        let rep = trace_character_variety(&sp, &TraceOptions::default()).unwrap();
        for c in &rep.components {
            for &x in &c.samples {
                let v = psi(&sp, BoxPoint::new(x[0], x[1], x[2]));
                assert!(v[0].hypot(v[1]) < 1e-10, "({p},{q}) {}: |Ψ| = {:e}", c.label, v[0].hypot(v[1]));
                assert!((0.0..=PI).contains(&x[0]) && (0.0..=PI).contains(&x[1]) && (-1.0..=1.0).contains(&x[2]));
            }
            assert!(c.residual < 1e-10);
        }
    }
}

fn kinds(sp: &TorusSpec) -> (usize, usize) {
    let rep = trace_character_variety(sp, &TraceOptions::default()).unwrap();
    let arcs = rep.components.iter().filter(|c| c.kind == ComponentKind::Arc).count();
    (arcs, rep.components.len() - arcs)
}

#[test]
fn unperturbed_three_seven() {
    let sp = spec(3, 7, 5, -2, 0.0, 0.0);
    let rep = trace_character_variety(&sp, &TraceOptions::default()).unwrap();
    assert_eq!(kinds(&sp), (1, 2));
    let arc = rep.components.iter().find(|c| c.kind == ComponentKind::Arc).unwrap();
    let img = arc.pillow_trace.as_ref().unwrap();
    let (a, b) = (img.vertices[0], *img.vertices.last().unwrap());
    let (dg, dt) = (b.gamma - a.gamma, b.theta - a.theta);
    assert!((dt.abs() - 2.0 * dg.abs()).abs() < 1e-9, "endpoint slope {dt}/{dg}");
    let len = dg.hypot(dt);
    for v in &img.vertices {
        let off = ((v.gamma - a.gamma) * dt - (v.theta - a.theta) * dg).abs() / len;
        assert!(off < 1e-6, "vertex {v:?} is {off:e} off the line");
    }
    assert_eq!(arc.endpoints.len(), 2);
    assert_ne!(arc.endpoints[0].corner, arc.endpoints[1].corner);
}

#[test]
fn unperturbed_three_four_is_singular() {
    let sp = spec(3, 4, 3, -2, 0.0, 0.0);
    let rep = trace_character_variety(&sp, &TraceOptions::default()).unwrap();
    let singular: usize = rep.components.iter().map(|c| c.singularities.len()).sum();
    assert!(singular >= 2, "{:?}", rep.diagnostics);
    assert!(rep.diagnostics.iter().any(|d| d.contains("singular")));
}

#[test]
fn component_structures() {
    for f in &TORUS_FIXTURES {
        let (ab, out, _) = run_fixture(f, None, 0.1, 0.0);
        let rep = out.unwrap_or_else(|e| panic!("{} at {ab:?}: {e}", f.name()));
        let arcs = rep.components.iter().filter(|c| c.kind == ComponentKind::Arc).count();
        let circles: u32 =
            rep.components.iter().filter(|c| c.kind == ComponentKind::Circle).map(|c| c.cover_degree).sum();
        let want = pillowfloer::knots::known_structure(&f.spec(ab.0, ab.1)).unwrap();
        assert_eq!((arcs, circles as usize), want, "{}", f.name());
        let ends: usize = rep.trace.components.iter().map(|c| c.endpoints.len()).sum();
        assert_eq!(ends, 2, "{}", f.name());
    }
}

#[test]
fn five_seven_circle_has_vertical_degree_eight() {
    let (_, out, _) = run_fixture(fixture(5, 7), None, 0.1, 0.0);
    let rep = out.unwrap();
    let circle = rep.components.iter().find(|c| c.kind == ComponentKind::Circle).unwrap();
    assert_eq!(circle.vertical_degree, Some(8));
    assert_eq!(circle.homology, GradedRanks::uniform(4));
    assert!(circle.differential.is_empty());
}

#[test]
fn five_eleven_circles() {
    let (_, out, _) = run_fixture(fixture(5, 11), None, 0.1, 0.0);
    let rep = out.unwrap();
    let mut in_strip = 0;
    let mut figure_like = 0;
    for (c, img) in rep.components.iter().zip(&rep.curves) {
        if c.kind != ComponentKind::Circle {
            continue;
        }
        assert_eq!(vertical_degree(img).unwrap(), 2);
        assert_eq!(c.homology, GradedRanks::uniform(1));
        let strip = (img.vertices[0].gamma / PI).floor();
        if img.vertices.iter().all(|v| (v.gamma / PI).floor() == strip) {
            in_strip += 1;
            assert_eq!(c.labels.len(), 4);
        } else {
            figure_like += 1;
            assert!(!is_vertically_monotonic(img));
            assert_eq!(c.labels.len(), 8);
            assert_eq!(c.chain, GradedRanks::uniform(2));
            assert_eq!(c.differential.len(), 2);
        }
    }
    assert_eq!((in_strip, figure_like), (2, 2));
    assert_eq!(rep.chain_total.total(), 25);
    assert_eq!(rep.total.total(), 17);
}

#[test]
fn torus_golden_table() {
    for f in &TORUS_FIXTURES {
        let (ab, out, _) = run_fixture(f, None, 0.1, 0.0);
        let rep = out.unwrap_or_else(|e| panic!("{} at {ab:?}: {e}", f.name()));
        assert_eq!(rep.total, f.ranks(), "{}", f.name());
        assert_eq!(rep.total.total() as i64, rep.alexander_sum, "{}", f.name());
        assert!(rep.warnings.is_empty(), "{}: {:?}", f.name(), rep.warnings);
    }
}

#[test]
fn canonical_generator_and_bigons() {
    let arc_of = |p, q| {
        let (_, out, _) = run_fixture(fixture(p, q), None, 0.1, 0.0);
        let rep = out.unwrap();
        rep.components.into_iter().find(|c| c.kind == ComponentKind::Arc).unwrap()
    };
    // (3,5): the only bigon ends at the canonical generator.
    let arc = arc_of(3, 5);
    assert_eq!(arc.chain, GradedRanks([3, 2, 2, 2]));
    assert_eq!(arc.differential.len(), 1);
    assert_eq!(Some(arc.differential[0].1), arc.canonical);
    // (4,5): the bigon avoids it.
    let arc = arc_of(4, 5);
    assert_eq!(arc.differential.len(), 1);
    let (a, b) = arc.differential[0];
    assert!(Some(a) != arc.canonical && Some(b) != arc.canonical);
    // (4,7): seven generators and two bigons on the arc.
    let arc = arc_of(4, 7);
    assert_eq!(arc.labels.len(), 7);
    assert_eq!(arc.differential.len(), 2);
    assert_eq!(arc.chain, GradedRanks([2, 1, 2, 2]));
}

#[test]
fn sidecar_round_trip() {
    let sp = spec(3, 7, 5, -2, 0.01, 0.0);
    let rep = trace_character_variety(&sp, &TraceOptions::default()).unwrap();
    let text = rep.sidecar_json();
    let back: Vec<pillowfloer::knots::SidecarRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep.sidecar());
    assert_eq!(back.len(), 3);
    assert!(text.contains("\"kind\":\"arc\""));
}

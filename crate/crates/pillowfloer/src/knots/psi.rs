use nalgebra::{Matrix2x5, Vector3};

use super::quaternion::Quaternion;
use super::TorusSpec;

/// Point `(u, v, τ)` of the box `[0, π]² × [-1, 1]`.
pub type BoxPoint = nalgebra::Vector3<f64>;

/// Rotation angles of the A- and B-parts of the two boundary words.
struct Angles {
    /// `a`: A-part and B-part.
    xa: f64,
    xb: f64,
    /// `b`: A-part and B-part.
    ya: f64,
    yb: f64,
}

fn angles(spec: &TorusSpec, eps_a: f64, eps_b: f64, u: f64, v: f64) -> Angles {
    let (p, q, r, s) = (spec.p as f64, spec.q as f64, spec.r as f64, spec.s as f64);
    Angles {
        xa: (s + p) * u + (q - r) * eps_a * u.sin(),
        xb: (q - r) * v - (s + p) * eps_b * v.sin(),
        ya: s * u - r * eps_a * u.sin(),
        yb: -r * v - s * eps_b * v.sin(),
    }
}

/// `cos β cos α - sin β sin α τ`: the real part of `e^{αQ_A} e^{βQ_B}` with
/// `τ = ⟨Q_A, Q_B⟩`.
fn real_part(alpha: f64, beta: f64, tau: f64) -> f64 {
    beta.cos() * alpha.cos() - beta.sin() * alpha.sin() * tau
}

/// Partials of [`real_part`] in `(α, β, τ)`.
fn real_part_grad(alpha: f64, beta: f64, tau: f64) -> [f64; 3] {
    let (sa, ca, sb, cb) = (alpha.sin(), alpha.cos(), beta.sin(), beta.cos());
    [-cb * sa - sb * ca * tau, -sb * ca - cb * sa * tau, -sb * sa]
}

/// The traceless conditions on the two boundary words, as functions of the
/// perturbation amplitudes and the box point.
pub fn psi_full(spec: &TorusSpec, eps_a: f64, eps_b: f64, x: BoxPoint) -> [f64; 2] {
    let g = angles(spec, eps_a, eps_b, x[0], x[1]);
    [real_part(g.xa, g.xb, x[2]), real_part(g.ya, g.yb, x[2])]
}

/// `Ψ` at the amplitudes stored in `spec`.
pub fn psi(spec: &TorusSpec, x: BoxPoint) -> [f64; 2] {
    psi_full(spec, spec.eps_a, spec.eps_b, x)
}

/// Jacobian of `Ψ` with columns `(ε_A, ε_B, u, v, τ)`.
pub fn psi_jacobian_full(spec: &TorusSpec, eps_a: f64, eps_b: f64, x: BoxPoint) -> Matrix2x5<f64> {
    let (p, q, r, s) = (spec.p as f64, spec.q as f64, spec.r as f64, spec.s as f64);
    let (u, v, tau) = (x[0], x[1], x[2]);
    let g = angles(spec, eps_a, eps_b, u, v);
    let (su, cu, sv, cv) = (u.sin(), u.cos(), v.sin(), v.cos());
    let d1 = real_part_grad(g.xa, g.xb, tau);
    let d2 = real_part_grad(g.ya, g.yb, tau);
    // Partials of the four angles in (ε_A, ε_B, u, v).
    let xa = [(q - r) * su, 0.0, (s + p) + (q - r) * eps_a * cu, 0.0];
    let xb = [0.0, -(s + p) * sv, 0.0, (q - r) - (s + p) * eps_b * cv];
    let ya = [-r * su, 0.0, s - r * eps_a * cu, 0.0];
    let yb = [0.0, -s * sv, 0.0, -r - s * eps_b * cv];
    let mut m = Matrix2x5::zeros();
    for c in 0..4 {
        m[(0, c)] = d1[0] * xa[c] + d1[1] * xb[c];
        m[(1, c)] = d2[0] * ya[c] + d2[1] * yb[c];
    }
    m[(0, 4)] = d1[2];
    m[(1, 4)] = d2[2];
    m
}

pub fn psi_jacobian(spec: &TorusSpec, x: BoxPoint) -> Matrix2x5<f64> {
    psi_jacobian_full(spec, spec.eps_a, spec.eps_b, x)
}

/// Images of the four peripheral generators at a box point.
#[derive(Clone, Copy, Debug)]
pub struct PeripheralImages {
    pub a1: Quaternion,
    pub a2: Quaternion,
    pub b1: Quaternion,
    pub b2: Quaternion,
}

/// The representation attached to a box point: `A` generators about `i`,
/// `B` generators about `Q_B = τi + √(1-τ²)j`.
pub fn peripheral_images(spec: &TorusSpec, x: BoxPoint) -> PeripheralImages {
    let (u, v, tau) = (x[0], x[1], x[2].clamp(-1.0, 1.0));
    let qa = Vector3::x();
    let qb = Vector3::new(tau, (1.0 - tau * tau).sqrt(), 0.0);
    PeripheralImages {
        a1: Quaternion::exp(u, qa),
        a2: Quaternion::exp(spec.eps_a * u.sin(), qa),
        b1: Quaternion::exp(v, qb),
        b2: Quaternion::exp(spec.eps_b * v.sin(), qb),
    }
}

fn power(q: Quaternion, n: i64) -> Quaternion {
    let base = if n < 0 { q.unit_inverse() } else { q };
    (0..n.unsigned_abs()).fold(Quaternion::ONE, |acc, _| acc * base)
}

/// The images of the boundary meridians `a`, `b`, `c` as words in the
/// peripheral generators.
pub fn boundary_images(spec: &TorusSpec, x: BoxPoint) -> [Quaternion; 3] {
    let g = peripheral_images(spec, x);
    let (p, q, r, s) = (spec.p, spec.q, spec.r, spec.s);
    let a = power(g.a1, s + p) * power(g.a2, q - r) * power(g.b1, q - r) * power(g.b2, -(s + p));
    let b = power(g.b1, -r) * power(g.b2, -s) * power(g.a1, s) * power(g.a2, -r);
    let conj = power(g.b2, s) * power(g.b1, r);
    let c = conj.unit_inverse() * a * conj;
    [a, b, c]
}

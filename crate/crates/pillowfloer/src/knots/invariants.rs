use num_integer::Integer;

use super::{KnotError, TwoBridgeSpec};

/// Signature of the 2-bridge knot `K(p, q)`:
/// `-Σ_{i=1}^{p-1} (-1)^⌊i q' / p⌋` with `q'` the odd representative of `q`
/// modulo `p`.
pub fn signature_two_bridge(spec: TwoBridgeSpec) -> i64 {
    let q = if spec.q % 2 == 0 { spec.q - spec.p } else { spec.q };
    -(1..spec.p).map(|i| if Integer::div_floor(&(i * q), &spec.p) % 2 == 0 { 1 } else { -1 }).sum::<i64>()
}

/// Signature of the torus knot `T(p, q)` by the Gordon–Litherland–Murasugi
/// recursion; negative for positive `p, q`.
pub fn signature_torus(p: i64, q: i64) -> Result<i64, KnotError> {
    if p.gcd(&q) != 1 {
        return Err(KnotError::NonCoprime { p, q });
    }
    let sign = p.signum() * q.signum();
    Ok(sign * torus_signature_positive(p.abs(), q.abs()))
}

fn torus_signature_positive(p: i64, q: i64) -> i64 {
    let (p, q) = if p >= q { (p, q) } else { (q, p) };
    match q {
        0 | 1 => 0,
        2 => -(p - 1),
        _ if 2 * q < p => {
            let rest = torus_signature_positive(p - 2 * q, q);
            rest - if q % 2 == 1 { q * q - 1 } else { q * q }
        }
        _ => {
            let rest = torus_signature_positive(2 * q - p, q);
            -rest - if q % 2 == 1 { q * q - 1 } else { q * q - 2 }
        }
    }
}

/// Integer polynomial, coefficients in increasing degree.
type Poly = Vec<i64>;

fn binomial_minus_one(n: usize) -> Poly {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; `None` if there is a remainder.
fn div_exact(mut num: Poly, den: &Poly) -> Option<Poly> {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return num.iter().all(|&c| c == 0).then(|| vec![0]);
    }
    let mut quot = vec![0; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = num[k + dn];
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            num[k + j] -= c * d;
        }
    }
    num.iter().all(|&c| c == 0).then_some(quot)
}

/// Alexander polynomial `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` of
/// `T(p, q)`.
pub fn alexander_torus(p: i64, q: i64) -> Result<Vec<i64>, KnotError> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(KnotError::NonCoprime { p, q });
    }
    let (p, q) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
    let num = mul(&binomial_minus_one(p * q), &binomial_minus_one(1));
    let den = mul(&binomial_minus_one(p), &binomial_minus_one(q));
    let mut quot = div_exact(num, &den).expect("cyclotomic factors divide");
    while quot.len() > 1 && quot.last() == Some(&0) {
        quot.pop();
    }
    Ok(quot)
}

/// `Σ |coefficients|` of the Alexander polynomial of `T(p, q)`.
pub fn alexander_abs_sum_torus(p: i64, q: i64) -> Result<i64, KnotError> {
    Ok(alexander_torus(p, q)?.iter().map(|c| c.abs()).sum())
}

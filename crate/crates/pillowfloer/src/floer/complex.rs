use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::bigons::{find_bigons, BigonCertificate, SearchLimits};
use super::f2::F2Matrix;
use super::FloerError;
use crate::curves::{
    check_restricted, cyclic_word, intersections, is_vertically_monotonic, vertical_degree, CurveKind, IntersectionPoint,
    LiftedCurve,
};
use crate::maslov::{anchor_absolute, AnchorSource, GradingAssignment};
use crate::Z4;

/// Ranks in gradings 0, 1, 2, 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRanks(pub [usize; 4]);

impl GradedRanks {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn uniform(n: usize) -> GradedRanks {
        GradedRanks([n; 4])
    }

    fn of_grades(grades: &[Z4]) -> GradedRanks {
        let mut r = [0; 4];
        for g in grades {
            r[g.index()] += 1;
        }
        GradedRanks(r)
    }
}

impl Add for GradedRanks {
    type Output = GradedRanks;
    fn add(self, o: GradedRanks) -> GradedRanks {
        GradedRanks(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl fmt::Display for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// The summand of `C(L0, L1)` coming from one component of L1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexComponent {
    pub label: String,
    pub kind: CurveKind,
    pub generators: Vec<IntersectionPoint>,
    pub labels: Vec<String>,
    /// Pairs `(p, q)` with `q` appearing in `∂p`.
    pub differential: Vec<(usize, usize)>,
    pub bigons: Vec<BigonCertificate>,
}

impl ComplexComponent {
    /// Matrix with entry `(q, p)` set when `q` appears in `∂p`.
    pub fn matrix(&self) -> F2Matrix {
        let n = self.generators.len();
        let mut m = F2Matrix::zeros(n, n);
        for &(p, q) in &self.differential {
            m.set(q, p, true);
        }
        m
    }
}

/// `C(L0, L1)`, block diagonal over the components of L1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainComplexZ4 {
    pub l0_label: String,
    pub components: Vec<ComplexComponent>,
    pub grading: GradingAssignment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[derive(Default)]
pub struct ComplexOptions {
    pub limits: SearchLimits,
    /// Knot signature used to anchor arc components.
    pub signature: Option<i64>,
}


/// Per-component and total ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub components: Vec<GradedRanks>,
    pub total: GradedRanks,
}

fn restricted(c: &LiftedCurve) -> Result<(), FloerError> {
    let r = check_restricted(c)?;
    if !r.ok {
        return Err(FloerError::NotRestricted {
            label: c.label.clone(),
            reason: r.reason.unwrap_or_default(),
        });
    }
    Ok(())
}

/// At least one circle, and no nonzero powers of two circles freely
/// homotopic in the punctured pillowcase.
pub fn check_admissible(l0: &LiftedCurve, l1: &LiftedCurve) -> Result<(), FloerError> {
    let reason = if !l0.is_circle() && !l1.is_circle() {
        Some("both curves are arcs".to_string())
    } else if l0.is_circle() && l1.is_circle() {
        let (a, b) = (cyclic_word(l0)?, cyclic_word(l1)?);
        a.shares_power_with(&b).then(|| format!("powers of the circles are freely homotopic ({a} and {b})"))
    } else {
        None
    };
    match reason {
        Some(reason) => Err(FloerError::NotAdmissible { label: l1.label.clone(), reason }),
        None => Ok(()),
    }
}

/// Generator next to the arc endpoint at the corner `(0,0)` (preferred) or
/// `(π,π)`.
pub fn canonical_generator(l1: &LiftedCurve, generators: &[IntersectionPoint]) -> Option<usize> {
    if l1.kind != CurveKind::Arc || generators.is_empty() {
        return None;
    }
    let ends = [(l1.vertices[0], true), (l1.vertices[l1.segment_count()], false)];
    let score = |(j, k): (i64, i64)| match (j.rem_euclid(2), k.rem_euclid(2)) {
        (0, 0) => Some(0),
        (1, 1) => Some(1),
        _ => None,
    };
    let (_, at_start) = ends
        .iter()
        .filter_map(|&(v, start)| score(v.nearest_lattice()).map(|s| (s, start)))
        .min_by_key(|&(s, start)| (s, !start))?;
    let key = |i: &usize| generators[*i].s1;
    let idx = 0..generators.len();
    if at_start {
        idx.min_by(|a, b| key(a).total_cmp(&key(b)))
    } else {
        idx.max_by(|a, b| key(a).total_cmp(&key(b)))
    }
}

fn build_component(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    index: usize,
    limits: SearchLimits,
) -> Result<(ComplexComponent, crate::maslov::ComponentGrading), FloerError> {
    let generators = intersections(l0, l1)?;
    let grading = GradingAssignment::compute_component(l0, l1, &generators)?;
    let bigons = find_bigons(l0, l1, &generators, limits)?;
    for b in &bigons {
        let drop = grading.grades[b.from] - grading.grades[b.to];
        if drop != Z4::ONE {
            return Err(FloerError::GradingViolation { component: index, from: b.from, to: b.to, drop });
        }
    }
    let mut counts = std::collections::BTreeMap::<(usize, usize), usize>::new();
    for b in &bigons {
        *counts.entry((b.from, b.to)).or_default() += 1;
    }
    let differential = counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(k, _)| k).collect();
    let labels = (0..generators.len()).map(|i| format!("{}.{i}", l1.label)).collect();
    let comp = ComplexComponent { label: l1.label.clone(), kind: l1.kind, generators, labels, differential, bigons };
    Ok((comp, grading))
}

/// Builds `C(L0, L1)` for every component of L1.
pub fn build_complex(
    l0: &LiftedCurve,
    l1_components: &[LiftedCurve],
    options: &ComplexOptions,
) -> Result<ChainComplexZ4, FloerError> {
    restricted(l0)?;
    for c in l1_components {
        restricted(c)?;
        check_admissible(l0, c)?;
    }
    let mut components = Vec::new();
    let mut grading = GradingAssignment::default();
    for (i, c) in l1_components.iter().enumerate() {
        let (comp, g) = build_component(l0, c, i, options.limits)?;
        components.push(comp);
        grading.components.push(g);
    }
    if let Some(sigma) = options.signature {
        for (i, c) in l1_components.iter().enumerate() {
            if let Some(r) = canonical_generator(c, &components[i].generators) {
                grading = anchor_absolute(&grading, i, r, Z4::new(sigma), AnchorSource::Signature)?;
            }
        }
    }
    let complex = ChainComplexZ4 { l0_label: l0.label.clone(), components, grading };
    check_square_zero(&complex)?;
    Ok(complex)
}

fn check_square_zero(c: &ChainComplexZ4) -> Result<(), FloerError> {
    for (i, comp) in c.components.iter().enumerate() {
        let m = comp.matrix();
        let sq = m.mul(&m);
        if !sq.is_zero() {
            let compositions = sq.ones().into_iter().map(|(r, c)| (c, r)).collect();
            return Err(FloerError::DifferentialNotSquareZero { component: i, compositions });
        }
    }
    Ok(())
}

/// Chain group ranks per component and in total.
pub fn chain_ranks(c: &ChainComplexZ4) -> HomologyReport {
    let components: Vec<GradedRanks> =
        c.grading.components.iter().map(|g| GradedRanks::of_grades(&g.grades)).collect();
    let total = components.iter().fold(GradedRanks::default(), |a, &b| a + b);
    HomologyReport { components, total }
}

/// Homology ranks per component and in total.
pub fn homology(c: &ChainComplexZ4) -> Result<HomologyReport, FloerError> {
    check_square_zero(c)?;
    let mut components = Vec::new();
    for (i, comp) in c.components.iter().enumerate() {
        let grades = &c.grading.components[i].grades;
        let m = comp.matrix();
        for &(p, q) in &comp.differential {
            let drop = grades[p] - grades[q];
            if drop != Z4::ONE {
                return Err(FloerError::GradingViolation { component: i, from: p, to: q, drop });
            }
        }
        let cols: Vec<Vec<usize>> =
            (0..4).map(|d| (0..grades.len()).filter(|&x| grades[x].index() == d).collect()).collect();
        let rank: Vec<usize> = cols.iter().map(|cs| m.select_columns(cs).rank()).collect();
        let ranks = std::array::from_fn(|d| cols[d].len() - rank[d] - rank[(d + 1) % 4]);
        components.push(GradedRanks(ranks));
    }
    let total = components.iter().fold(GradedRanks::default(), |a, &b| a + b);
    Ok(HomologyReport { components, total })
}

/// `(d/2, d/2, d/2, d/2)` for a vertically monotonic circle of degree `d`.
pub fn vertically_monotonic_fastpath(l0: &LiftedCurve, l1: &LiftedCurve) -> Result<GradedRanks, FloerError> {
    if !l0.is_circle() || !is_vertically_monotonic(l1) {
        return Err(FloerError::NotMonotonic { label: l1.label.clone() });
    }
    let d = vertical_degree(l1)? as usize;
    if d % 2 == 1 {
        return Err(FloerError::NotRestricted { label: l1.label.clone(), reason: format!("odd vertical degree {d}") });
    }
    Ok(GradedRanks::uniform(d / 2))
}

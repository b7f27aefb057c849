//! Search for planes whose sections are light, fixed-component-free
//! multinets with many points of multiplicity two.
//!
//! Candidate planes pass through triples of unit points.  The scalar torus
//! of `n`-th-root coordinate scalings acts transitively on unit points and
//! preserves the arrangement, so the first point of every triple is fixed
//! to `[1:1:1:1]` and only pairs of further unit points are enumerated.
//! Candidates are screened with an arithmetic characterization of the
//! lattice position (exact, but avoiding the full geometric enumeration),
//! and only top results get the full section-verify-classify treatment.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{classify_induced, double_point_census, predicted_vs_actual, ClassificationReport};
use crate::cyclo::{FieldElem, FieldOps};
use crate::multinet::Verdict;
use crate::projgeo::{plane_through, PlaneP3, PointP3};
use crate::qn::{QnArrangement, BLOCK_PAIRS};
use crate::section::restrict;
use crate::{Error, Result};

/// How candidate planes are generated.
#[derive(Debug, Clone)]
pub enum Strategy {
    /// Planes through `[1:1:1:1]` and two further unit points, enumerated
    /// in canonical exponent order.
    UnitTriples,
    /// Planes with random integer coefficients in `[-coeff_bound, coeff_bound]`,
    /// from a deterministic seeded generator.
    RandomRational { seed: u64, coeff_bound: i64 },
    /// An explicit list of candidate planes.
    FileList(Vec<PlaneP3>),
}

/// Search configuration.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: u64,
    pub strategy: Strategy,
    /// Reject planes whose section has a line of multiplicity greater
    /// than one.
    pub require_light: bool,
    /// Reject planes whose section has fixed components.
    pub forbid_fixed_components: bool,
    /// Reject planes containing coordinate points (points of
    /// multiplicity `n` in the section).
    pub forbid_mult_n_points: bool,
    /// Maximum number of distinct planes to evaluate.
    pub budget: usize,
    /// Number of results to return.
    pub top: usize,
}

/// One verified search result.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub plane: PlaneP3,
    pub double_point_count: usize,
    pub report: ClassificationReport,
}

/// Search outcome: verified results plus enumeration accounting.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Top results, sorted by double-point count descending, then by
    /// canonical plane order.
    pub results: Vec<SearchResult>,
    /// Distinct planes evaluated.
    pub planes_evaluated: usize,
    /// Whether the strategy was exhausted before the budget ran out.
    pub exhausted: bool,
}

/// Arithmetic characterization of a plane's lattice position, exact and
/// equivalent to the geometric enumeration for planes outside the
/// arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeScreen {
    pub in_qn: bool,
    pub base_lines: usize,
    pub sameblock_lines: usize,
    pub crossblock_lines: usize,
    pub coordinate_points: usize,
    pub unit_points: usize,
}

/// Screens a plane against the lattice by coefficient arithmetic:
/// contained base lines are zero-coefficient pairs, same-block lines are
/// root-of-unity coefficient ratios, cross-block lines are root-of-unity
/// solutions of a linear relation at a zero coefficient, and unit points
/// are counted by hashing partial sums.
pub fn screen(h: &PlaneP3, qn: &QnArrangement) -> LatticeScreen {
    if qn.plane_position(h).is_some() {
        return LatticeScreen {
            in_qn: true,
            base_lines: 0,
            sameblock_lines: 0,
            crossblock_lines: 0,
            coordinate_points: 0,
            unit_points: 0,
        };
    }
    let c = h.coords();
    let n = qn.n();
    let zeros: Vec<usize> = (0..4).filter(|&i| c[i].is_zero()).collect();
    let coordinate_points = zeros.len();
    let base_lines = zeros.len() * zeros.len().saturating_sub(1) / 2;

    let mut sameblock_lines = 0;
    for pairs in BLOCK_PAIRS {
        let both = pairs.iter().all(|&(i, j)| {
            if c[i].is_zero() || c[j].is_zero() {
                return false;
            }
            let ratio = -&(&c[j] * &c[i].inv().expect("nonzero"));
            qn.root_exponent(&ratio).is_some()
        });
        if both {
            sameblock_lines += 1;
        }
    }

    let mut crossblock_lines = 0;
    for &m in &zeros {
        let others: Vec<usize> = (0..4).filter(|&i| i != m).collect();
        let (p, q, r) = (others[0], others[1], others[2]);
        if c[r].is_zero() {
            // A solvable relation here would force the plane into the
            // arrangement, which was excluded above.
            continue;
        }
        let r_inv = c[r].inv().expect("nonzero");
        for alpha in 0..n {
            let partial = &c[p] + &(&c[q] * qn.zeta_n_pow(alpha));
            let beta = -&(&partial * &r_inv);
            if qn.root_exponent(&beta).is_some() {
                crossblock_lines += 1;
            }
        }
    }

    let unit_points = count_unit_points(h, qn);

    LatticeScreen {
        in_qn: false,
        base_lines,
        sameblock_lines,
        crossblock_lines,
        coordinate_points,
        unit_points,
    }
}

/// Number of unit points `[zeta^a : zeta^b : zeta^c : 1]` on `h`, counted
/// by hashing the partial sums over `(b, c)` and matching against the
/// `zeta^a` terms.
fn count_unit_points(h: &PlaneP3, qn: &QnArrangement) -> usize {
    let c = h.coords();
    let n = qn.n();
    let mut table: HashMap<FieldElem, usize> = HashMap::new();
    for b in 0..n {
        let t1 = &c[1] * qn.zeta_n_pow(b);
        for cc in 0..n {
            let sum = &(&t1 + &(&c[2] * qn.zeta_n_pow(cc))) + &c[3];
            *table.entry(-&sum).or_default() += 1;
        }
    }
    let mut count = 0;
    for a in 0..n {
        let key = &c[0] * qn.zeta_n_pow(a);
        if let Some(&k) = table.get(&key) {
            count += k;
        }
    }
    count
}

fn passes_filters(config: &SearchConfig, s: &LatticeScreen) -> bool {
    if s.in_qn {
        return false;
    }
    if config.require_light && (s.base_lines > 0 || s.sameblock_lines > 0) {
        return false;
    }
    if config.forbid_fixed_components && s.crossblock_lines > 0 {
        return false;
    }
    if config.forbid_mult_n_points && s.coordinate_points > 0 {
        return false;
    }
    true
}

/// All unit exponent triples in lexicographic order.
fn unit_exponents(n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::with_capacity((n * n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Candidate planes for the unit-triples strategy, in deterministic order,
/// before deduplication.
fn unit_triple_planes(qn: &QnArrangement) -> Vec<PlaneP3> {
    let exps: Vec<(u64, u64, u64)> = unit_exponents(qn.n())
        .into_iter()
        .filter(|&e| e != (0, 0, 0))
        .collect();
    let anchor = qn.unit_point(0, 0, 0);
    let points: Vec<PointP3> = exps.iter().map(|&(a, b, c)| qn.unit_point(a, b, c)).collect();

    let mut pairs = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairs.push((i, j));
        }
    }
    pairs
        .par_iter()
        .map(|&(i, j)| plane_through(&anchor, &points[i], &points[j]).ok())
        .collect::<Vec<Option<PlaneP3>>>()
        .into_iter()
        .flatten()
        .collect()
}

fn random_rational_planes(qn: &QnArrangement, seed: u64, bound: i64, want: usize) -> Vec<PlaneP3> {
    let spec = qn.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(want);
    let mut attempts = 0usize;
    while out.len() < want && attempts < want.saturating_mul(50).max(1000) {
        attempts += 1;
        let coeffs: Vec<FieldElem> = (0..4)
            .map(|_| spec.integer(rng.random_range(-bound..=bound)))
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        out.push(PlaneP3::from_slice(&coeffs).expect("nonzero"));
    }
    out
}

/// Runs the configured search.  Candidates are deduplicated by canonical
/// plane form before evaluation, evaluation is embarrassingly parallel,
/// and the returned ordering is canonical and scheduler-independent.  Top
/// results carry fully verified classification reports.
pub fn run_search(config: &SearchConfig, qn: &QnArrangement) -> Result<SearchOutcome> {
    if config.n != qn.n() {
        return Err(Error::Precondition(format!(
            "config n={} does not match the arrangement n={}",
            config.n,
            qn.n()
        )));
    }
    if config.budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }

    let raw: Vec<PlaneP3> = match &config.strategy {
        Strategy::UnitTriples => unit_triple_planes(qn),
        Strategy::RandomRational { seed, coeff_bound } => {
            random_rational_planes(qn, *seed, (*coeff_bound).max(1), config.budget * 2)
        }
        Strategy::FileList(planes) => planes.clone(),
    };

    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    let mut exhausted = true;
    for plane in raw {
        if candidates.len() >= config.budget {
            exhausted = false;
            break;
        }
        if seen.insert(plane.clone()) {
            candidates.push(plane);
        }
    }

    let screened: Vec<(PlaneP3, usize)> = candidates
        .par_iter()
        .map(|plane| {
            let s = screen(plane, qn);
            if passes_filters(config, &s) {
                Some((plane.clone(), s.unit_points))
            } else {
                None
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut ranked = screened;
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(config.top);

    let results: Result<Vec<SearchResult>> = ranked
        .into_iter()
        .map(|(plane, count)| {
            let im = restrict(qn, &plane)?;
            let report = classify_induced(&im)?;
            if !predicted_vs_actual(&plane, qn)? {
                return Err(Error::Internal(format!(
                    "prediction mismatch for search result {plane:?}"
                )));
            }
            let census_count = report.point_histogram.get(&2).copied().unwrap_or(0);
            // The screen count includes unit points regardless of the
            // final multinet structure; for light fixed-free sections it
            // must equal the number of multiplicity-2 base points.
            if config.require_light
                && config.forbid_fixed_components
                && qn.n() > 3
                && census_count != count
            {
                return Err(Error::Internal(format!(
                    "screen counted {count} double points but the locus has {census_count}"
                )));
            }
            Ok(SearchResult {
                plane,
                double_point_count: count,
                report,
            })
        })
        .collect();

    Ok(SearchOutcome {
        results: results?,
        planes_evaluated: candidates.len(),
        exhausted,
    })
}

/// Reconstructs the reference eight-double-point section at `n = 8` and
/// checks every published property of it: light, no fixed components,
/// exactly the eight tabulated double points, and the six planes through
/// `[zeta^2 : zeta : 1 : 1]`, one per half-block.  Any failure is fatal.
pub fn reproduce_eight_point_example(qn: &QnArrangement) -> Result<SearchResult> {
    if qn.n() != 8 || qn.spec().conductor() != 8 {
        return Err(Error::Precondition(
            "the reference example needs n = 8 over Q(zeta_8)".into(),
        ));
    }
    let h = crate::analysis::eight_point_plane(qn.spec())?;

    let census = double_point_census(&h, qn)?;
    if !census.precondition_violations.is_empty() {
        return Err(Error::Internal(format!(
            "reference plane violates preconditions: {:?}",
            census.precondition_violations
        )));
    }
    if census.agrees_with_base_locus != Some(true) {
        return Err(Error::Internal(
            "census does not match the base locus".into(),
        ));
    }
    let expected: Vec<PointP3> = {
        let mut pts: Vec<PointP3> = [
            (0, 0, 0),
            (2, 1, 0),
            (2, 2, 6),
            (4, 3, 6),
            (5, 2, 3),
            (5, 3, 5),
            (7, 0, 1),
            (7, 1, 3),
        ]
        .into_iter()
        .map(|(a, b, c)| qn.unit_point(a, b, c))
        .collect();
        pts.sort();
        pts
    };
    if census.unit_points != expected {
        return Err(Error::Internal(format!(
            "census disagrees with the reference table: {:?}",
            census.unit_points
        )));
    }

    let im = restrict(qn, &h)?;
    let report = classify_induced(&im)?;
    if report.verdict != Verdict::LightProper || report.fixed_components != 0 {
        return Err(Error::Internal(format!(
            "expected a light fixed-component-free section, got {report:?}"
        )));
    }
    if report.point_histogram.get(&2) != Some(&8) {
        return Err(Error::Internal(
            "expected exactly eight double points".into(),
        ));
    }
    let ones = report.point_histogram.get(&1).copied().unwrap_or(0);
    if report.point_histogram.len() != 2 || ones == 0 {
        return Err(Error::Internal(
            "all remaining base points must have multiplicity one".into(),
        ));
    }

    // [zeta^2 : zeta : 1 : 1] lies on exactly six planes, one per
    // half-block: x_0 - z x_1, x_2 - x_3, x_0 - z^2 x_2, x_1 - z x_3,
    // x_0 - z^2 x_3, x_1 - z x_2.
    let point = qn.unit_point(2, 1, 0);
    let incident = qn.incident_planes(&point);
    if incident.len() != 6 {
        return Err(Error::Internal(format!(
            "expected six incident planes, found {}",
            incident.len()
        )));
    }
    let mut tags: Vec<(usize, usize, u64)> = incident
        .iter()
        .map(|&i| {
            let p = &qn.planes()[i];
            (p.block, p.half, p.exponent)
        })
        .collect();
    tags.sort_unstable();
    let expected_tags = vec![
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 2),
        (1, 1, 1),
        (2, 0, 2),
        (2, 1, 1),
    ];
    if tags != expected_tags {
        return Err(Error::Internal(format!(
            "incident planes {tags:?} differ from the reference"
        )));
    }

    if !predicted_vs_actual(&h, qn)? {
        return Err(Error::Internal(
            "prediction disagrees with the computed section".into(),
        ));
    }

    Ok(SearchResult {
        plane: h,
        double_point_count: 8,
        report,
    })
}

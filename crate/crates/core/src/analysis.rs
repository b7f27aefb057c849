//! Classification of induced multinets, consistency between the
//! lattice-position prediction and the computed section, the double-point
//! census, profile validation, half-block pencil checks and the
//! root-of-unity uniqueness property behind the fixed-component bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldOps, FieldSpec, make_field};
use crate::multinet::{base_locus, verify, Verdict};
use crate::projgeo::{LinePlaneMeet, LineP2, PlaneP3, PointP2, PointP3};
use crate::qn::{position_report, predict_class, QnArrangement};
use crate::section::{restrict, InducedMultinet};
use crate::{Error, Result};

/// Classification of an induced multinet with its multiplicity profile.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub n: u64,
    pub d: u64,
    pub k: usize,
    pub line_histogram: BTreeMap<u64, usize>,
    pub point_histogram: BTreeMap<u64, usize>,
    pub fixed_components: usize,
    pub verdict: Verdict,
    /// Whether the profile validator ran; it is disabled for `n <= 3`
    /// where the numeric multiplicity classes collide.
    pub profile_checked: bool,
    pub profile_ok: bool,
    pub violations: Vec<String>,
}

/// Builds histograms for a section and validates them against the expected
/// profile of multinets induced from the arrangement (for `n > 3`):
/// line multiplicities in `{1,2,n}` with 0, 1 or 3 lines of multiplicity
/// `n` and at most 3 (n even) or 2 (n odd) of multiplicity 2; point
/// multiplicities in `{1,2,n-2,n-1,n}`; and the light-multinet point
/// patterns, one of: up to two points of multiplicity `n`, a single point
/// of multiplicity `n-1` or `n-2`, or double points only.
pub fn classify_induced(im: &InducedMultinet) -> Result<ClassificationReport> {
    let m = im.to_multinet();
    let report = verify(&m);
    let Some(verdict) = report.classification else {
        return Err(Error::Internal(format!(
            "induced multinet failed verification: {:?}",
            report.failures
        )));
    };
    let locus = report.base_locus.expect("verified multinet has a locus");
    let line_histogram = m.line_histogram();
    let point_histogram = locus.histogram();
    let n = im.n();
    let fixed = im.fixed_component_count();

    let mut violations = Vec::new();
    let profile_checked = n > 3;
    if profile_checked {
        for &mult in line_histogram.keys() {
            if mult != 1 && mult != 2 && mult != n {
                violations.push(format!("line multiplicity {mult} outside {{1,2,{n}}}"));
            }
        }
        let n_lines = line_histogram.get(&n).copied().unwrap_or(0);
        if ![0, 1, 3].contains(&n_lines) {
            violations.push(format!("{n_lines} lines of multiplicity n"));
        }
        let two_lines = line_histogram.get(&2).copied().unwrap_or(0);
        let max_two = if n % 2 == 0 { 3 } else { 2 };
        if two_lines > max_two {
            violations.push(format!(
                "{two_lines} lines of multiplicity 2 exceed the parity bound {max_two}"
            ));
        }
        if n_lines > 0 && two_lines > 0 {
            violations.push("lines of multiplicity n and 2 coexist".into());
        }
        if verdict == Verdict::Heavy && fixed > 0 {
            violations.push("heavy multinet with fixed components".into());
        }

        let allowed_points = [1, 2, n - 2, n - 1, n];
        for &mult in point_histogram.keys() {
            if !allowed_points.contains(&mult) {
                violations.push(format!(
                    "point multiplicity {mult} outside {{1,2,{},{},{n}}}",
                    n - 2,
                    n - 1
                ));
            }
        }

        if verdict == Verdict::LightProper {
            let multiple: BTreeMap<u64, usize> = point_histogram
                .iter()
                .filter(|(&m, _)| m > 1)
                .map(|(&m, &c)| (m, c))
                .collect();
            let legal = match multiple.len() {
                0 => false, // proper multinets have a multiple point
                1 => {
                    let (&mult, &count) = multiple.iter().next().expect("one entry");
                    (mult == n && count <= 2)
                        || (mult == n - 1 && count == 1)
                        || (mult == n - 2 && count == 1)
                        || mult == 2
                }
                _ => false,
            };
            if !legal {
                violations.push(format!(
                    "light point pattern {multiple:?} outside the allowed cases"
                ));
            }
        }
    }

    Ok(ClassificationReport {
        n,
        d: im.d(),
        k: m.k(),
        line_histogram,
        point_histogram,
        fixed_components: fixed,
        verdict,
        profile_checked,
        profile_ok: violations.is_empty(),
        violations,
    })
}

/// Runs the lattice-position prediction and the full section pipeline and
/// compares fixed-component counts, line and point histograms and the
/// verdict.  True iff everything matches.
pub fn predicted_vs_actual(h: &PlaneP3, qn: &QnArrangement) -> Result<bool> {
    let report = position_report(h, qn);
    let predicted = predict_class(&report, qn)?;
    let im = restrict(qn, h)?;
    let actual = classify_induced(&im)?;
    Ok(predicted.fixed_components == actual.fixed_components
        && predicted.line_histogram == actual.line_histogram
        && predicted.point_histogram == actual.point_histogram
        && predicted.verdict == actual.verdict)
}

/// Outcome of the double-point census for a section plane.
#[derive(Debug, Clone)]
pub struct Census {
    /// Unit points on the plane, canonically sorted.
    pub unit_points: Vec<PointP3>,
    /// Violated preconditions (heavy section, fixed components, coordinate
    /// points on the plane), reported rather than thrown.
    pub precondition_violations: Vec<String>,
    /// When the preconditions hold: whether the census equals the
    /// multiplicity-2 subset of the base locus.
    pub agrees_with_base_locus: Option<bool>,
}

/// Enumerates the `n^3` unit points on `h` and, for light sections without
/// fixed components or coordinate points, checks the census equals the set
/// of multiplicity-2 base points computed independently from the section.
pub fn double_point_census(h: &PlaneP3, qn: &QnArrangement) -> Result<Census> {
    let report = position_report(h, qn);
    if report.in_qn.is_some() {
        return Err(Error::PlaneInArrangement);
    }
    let unit_points = report.unit_points.clone();

    let mut violations = Vec::new();
    if !report.base_lines.is_empty() || !report.sameblock_lines.is_empty() {
        violations.push("section is heavy".into());
    }
    if !report.crossblock_lines.is_empty() {
        violations.push(format!(
            "section has {} fixed components",
            report.crossblock_lines.len()
        ));
    }
    if !report.coordinate_points.is_empty() {
        violations.push(format!(
            "plane contains coordinate points {:?}",
            report.coordinate_points
        ));
    }

    let agrees = if violations.is_empty() {
        let im = restrict(qn, h)?;
        let locus = base_locus(&im.to_multinet())?;
        let mut doubles: Vec<PointP2> = locus
            .points()
            .iter()
            .filter(|(_, m)| *m == 2)
            .map(|(p, _)| p.clone())
            .collect();
        doubles.sort();
        let mut images: Vec<PointP2> = unit_points
            .iter()
            .map(|p| im.provenance().point_image(p))
            .collect::<Result<_>>()?;
        images.sort();
        Some(doubles == images)
    } else {
        None
    };

    Ok(Census {
        unit_points,
        precondition_violations: violations,
        agrees_with_base_locus: agrees,
    })
}

/// Result of the half-block pencil analysis of a light, fixed-component-free
/// section: each half-block's image lines must be concurrent, and the common
/// point must be the image of the half-block base's intersection with the
/// plane.
#[derive(Debug, Clone)]
pub struct PencilCheck {
    pub ok: bool,
    /// Pencil base points, indexed like the arrangement's half-blocks.
    pub base_points: Vec<PointP2>,
}

pub fn half_block_pencil_check(im: &InducedMultinet, qn: &QnArrangement) -> Result<PencilCheck> {
    let classification = classify_induced(im)?;
    if classification.verdict == Verdict::Heavy {
        return Err(Error::Precondition(
            "half-block pencils need a section without multiple lines".into(),
        ));
    }
    if im.fixed_component_count() > 0 {
        return Err(Error::Precondition(
            "half-block pencils need a section without fixed components".into(),
        ));
    }
    let mut ok = true;
    let mut base_points = Vec::with_capacity(6);
    for hb in qn.half_blocks() {
        let expected = match hb.base.meet_plane(&im.provenance().plane) {
            LinePlaneMeet::Point(p) => im.provenance().point_image(&p)?,
            LinePlaneMeet::Contained => {
                return Err(Error::Precondition(
                    "plane contains a half-block base".into(),
                ))
            }
        };
        let images: Vec<&LineP2> = hb.planes.iter().map(|&i| &im.plane_images()[i]).collect();
        for line in &images {
            if !line.contains(&expected) {
                ok = false;
            }
        }
        base_points.push(expected);
    }
    Ok(PencilCheck { ok, base_points })
}

/// Checks injectivity of `(a, b) -> (1 - zeta^a) / (1 - zeta^b)` on ordered
/// pairs of distinct exponents in `[1, n)`, the exact root-of-unity
/// instance of the uniqueness property bounding fixed components.
pub fn uniqueness_check(n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition("uniqueness check needs n >= 2".into()));
    }
    let spec = make_field(n)?;
    let one = spec.one();
    let mut values: Vec<FieldElem> = Vec::new();
    for a in 1..n {
        for b in 1..n {
            if a == b {
                continue;
            }
            let num = &one - &spec.zeta_pow(a as i64);
            let den = &one - &spec.zeta_pow(b as i64);
            values.push(&num * &den.inv().expect("1 - zeta^b is nonzero for 0 < b < n"));
        }
    }
    let distinct: std::collections::BTreeSet<&FieldElem> = values.iter().collect();
    Ok(distinct.len() == values.len())
}

/// For a light section without multiplicity-`n` points, normalizes the
/// plane to `A x_0 + B x_1 + C x_2 - x_3 = 0` and verifies that every
/// double point's root-of-unity relation `A zeta^a + B zeta^b + C zeta^c = 1`
/// holds with no vanishing proper sub-sum.
pub fn nondegeneracy_check(h: &PlaneP3, qn: &QnArrangement) -> Result<bool> {
    let report = position_report(h, qn);
    if report.in_qn.is_some() {
        return Err(Error::PlaneInArrangement);
    }
    if !report.coordinate_points.is_empty() {
        return Err(Error::Precondition(
            "plane contains a coordinate point, so the section has a point of multiplicity n"
                .into(),
        ));
    }
    if !report.base_lines.is_empty() || !report.sameblock_lines.is_empty() {
        return Err(Error::Precondition("section is heavy".into()));
    }
    debug_assert!(report.crossblock_lines.is_empty(), "fixed components need a zero coefficient");

    // All four coefficients are nonzero here; normalize the x_3 coefficient
    // to -1.
    let c = h.coords();
    let scale = -&c[3].inv().expect("nonzero");
    let coeff = |i: usize| -> FieldElem { &c[i] * &scale };
    let (a_coeff, b_coeff, c_coeff) = (coeff(0), coeff(1), coeff(2));

    let one = qn.spec().one();
    for p in &report.unit_points {
        // Recover the last-coordinate-one scaling of the unit point.
        let last_inv = p.coords()[3].inv().expect("unit coordinates are nonzero");
        let term = |coeff: &FieldElem, i: usize| -> FieldElem {
            &(coeff * &p.coords()[i]) * &last_inv
        };
        let t1 = term(&a_coeff, 0);
        let t2 = term(&b_coeff, 1);
        let t3 = term(&c_coeff, 2);
        if &(&t1 + &t2) + &t3 != one {
            return Err(Error::Internal(format!(
                "incidence relation fails at {p:?}"
            )));
        }
        let degenerate = t1.is_zero()
            || t2.is_zero()
            || t3.is_zero()
            || (&t1 + &t2).is_zero()
            || (&t1 + &t3).is_zero()
            || (&t2 + &t3).is_zero();
        if degenerate {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: the coefficients of the reference eight-double-point plane
/// `x_0 - (zeta+1) x_1 - zeta^3 x_2 + (zeta^3 + zeta) x_3` over a field
/// containing an eighth root of unity.
pub fn eight_point_plane(spec: &Arc<FieldSpec>) -> Result<PlaneP3> {
    if spec.conductor() % 8 != 0 {
        return Err(Error::NotADivisor(8, spec.conductor()));
    }
    let z = spec.zeta_pow((spec.conductor() / 8) as i64);
    let z3 = z.pow(3);
    PlaneP3::new([
        spec.one(),
        -&(&z + &spec.one()),
        -&z3,
        &z3 + &z,
    ])
}

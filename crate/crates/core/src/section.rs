//! Restriction of `Q_n` to a plane: every arrangement plane maps to a line
//! of the section plane, coincident images aggregate into multiplicities,
//! and lines common to all three blocks are cancelled as fixed components.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldSpec};
use crate::multinet::Multinet;
use crate::projgeo::{LineP2, PlaneP3, PointP2, PointP3};
use crate::qn::QnArrangement;
use crate::{Error, Result};

/// A section plane with its substitution convention: the pivot is a
/// coordinate index with nonzero coefficient (the smallest such index by
/// default), and the ambient `P^2` coordinates are the remaining indices in
/// ascending order.  The substitution
/// `x_pivot = sum_q subst_q x_q` is recorded exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionPlane {
    pub plane: PlaneP3,
    pub pivot: usize,
    pub ambient: [usize; 3],
    subst: [FieldElem; 3],
}

impl SectionPlane {
    fn with_pivot(plane: &PlaneP3, pivot: usize) -> Result<Self> {
        let c = plane.coords();
        if c[pivot].is_zero() {
            return Err(Error::Precondition(format!(
                "pivot coordinate {pivot} has zero coefficient"
            )));
        }
        let ambient: Vec<usize> = (0..4).filter(|&i| i != pivot).collect();
        let pivot_inv = c[pivot].inv().expect("nonzero");
        let subst: Vec<FieldElem> = ambient.iter().map(|&q| -&(&c[q] * &pivot_inv)).collect();
        Ok(SectionPlane {
            plane: plane.clone(),
            pivot,
            ambient: ambient.try_into().expect("three ambient coordinates"),
            subst: subst.try_into().expect("three substitution coefficients"),
        })
    }

    /// Image of a point of the section plane in ambient coordinates.
    pub fn point_image(&self, p: &PointP3) -> Result<PointP2> {
        debug_assert!(self.plane.contains(p), "point must lie on the plane");
        let coords: Vec<FieldElem> = self.ambient.iter().map(|&i| p.coords()[i].clone()).collect();
        PointP2::from_slice(&coords)
    }

    /// Image of an arrangement plane: substitute the pivot coordinate out
    /// of its linear form.  Returns `None` when the form vanishes on the
    /// whole section plane (the plane equals the section plane).
    pub fn line_image(&self, other: &PlaneP3) -> Option<LineP2> {
        let c = other.coords();
        let coords: Vec<FieldElem> = self
            .ambient
            .iter()
            .zip(&self.subst)
            .map(|(&q, s)| &c[q] + &(&c[self.pivot] * s))
            .collect();
        LineP2::from_slice(&coords).ok()
    }
}

/// The multi-arrangement induced in a section plane, before and after
/// cancellation of fixed components.
#[derive(Debug, Clone)]
pub struct InducedMultinet {
    n: u64,
    d: u64,
    spec: Arc<FieldSpec>,
    provenance: SectionPlane,
    /// Cancelled blocks, each a sorted list of distinct (line, multiplicity).
    blocks: Vec<Vec<(LineP2, u64)>>,
    /// Pre-cancellation blocks.
    raw_blocks: Vec<Vec<(LineP2, u64)>>,
    /// Lines removed from every block, canonically sorted.
    fixed_components: Vec<LineP2>,
    /// Image line of each arrangement plane, indexed like the arrangement.
    plane_images: Vec<LineP2>,
}

impl InducedMultinet {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Degree after cancellation: `2n` minus the number of fixed components.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn provenance(&self) -> &SectionPlane {
        &self.provenance
    }

    pub fn blocks(&self) -> &[Vec<(LineP2, u64)>] {
        &self.blocks
    }

    pub fn raw_blocks(&self) -> &[Vec<(LineP2, u64)>] {
        &self.raw_blocks
    }

    pub fn fixed_components(&self) -> &[LineP2] {
        &self.fixed_components
    }

    /// Number of cancelled fixed components; at most two by construction.
    pub fn fixed_component_count(&self) -> usize {
        self.fixed_components.len()
    }

    /// Image lines of the arrangement planes, in arrangement order.
    pub fn plane_images(&self) -> &[LineP2] {
        &self.plane_images
    }

    /// The cancelled section as a plain multinet.
    pub fn to_multinet(&self) -> Multinet {
        Multinet::new(&self.spec, self.d, self.blocks.clone())
            .expect("induced blocks are structurally valid")
    }

    /// The raw (pre-cancellation) section as a multi-arrangement.  When
    /// fixed components exist this is not a multinet, but per-point
    /// multiplicities are still well defined.
    pub fn raw_multinet(&self) -> Multinet {
        Multinet::new(&self.spec, 2 * self.n, self.raw_blocks.clone())
            .expect("raw blocks are structurally valid")
    }
}

/// Restricts the arrangement to the plane `h` using the smallest-index
/// nonzero-coefficient pivot.  Rejects planes of the arrangement.
pub fn restrict(qn: &QnArrangement, h: &PlaneP3) -> Result<InducedMultinet> {
    let pivot = h
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective plane has a nonzero coefficient");
    restrict_with_pivot(qn, h, pivot)
}

/// Restriction with an explicit pivot choice.  All pivots with nonzero
/// coefficient yield the same multinet up to the deterministic relabeling
/// of ambient coordinates.
pub fn restrict_with_pivot(
    qn: &QnArrangement,
    h: &PlaneP3,
    pivot: usize,
) -> Result<InducedMultinet> {
    if qn.plane_position(h).is_some() {
        return Err(Error::PlaneInArrangement);
    }
    let section = SectionPlane::with_pivot(h, pivot)?;

    let mut plane_images = Vec::with_capacity(qn.planes().len());
    let mut raw: Vec<BTreeMap<LineP2, u64>> = vec![BTreeMap::new(); 3];
    for qp in qn.planes() {
        let line = section.line_image(&qp.plane).ok_or_else(|| {
            Error::Internal("arrangement plane restricted to the zero form".into())
        })?;
        *raw[qp.block].entry(line.clone()).or_default() += 1;
        plane_images.push(line);
    }

    // A line shared by exactly two blocks is arithmetically impossible;
    // a line in all three is a fixed component and must be simple in each.
    let mut membership: BTreeMap<&LineP2, Vec<usize>> = BTreeMap::new();
    for (b, block) in raw.iter().enumerate() {
        for line in block.keys() {
            membership.entry(line).or_default().push(b);
        }
    }
    let mut fixed_components = Vec::new();
    for (line, blocks_with) in membership {
        match blocks_with.len() {
            1 => {}
            3 => {
                for &b in &blocks_with {
                    if raw[b][line] != 1 {
                        return Err(Error::Internal(format!(
                            "fixed component {line:?} has multiplicity {} in block {b}",
                            raw[b][line]
                        )));
                    }
                }
                fixed_components.push(line.clone());
            }
            _ => {
                return Err(Error::Internal(format!(
                    "line {line:?} appears in exactly {} blocks",
                    blocks_with.len()
                )));
            }
        }
    }
    if fixed_components.len() > 2 {
        return Err(Error::Internal(format!(
            "{} fixed components exceed the bound of two",
            fixed_components.len()
        )));
    }

    let raw_blocks: Vec<Vec<(LineP2, u64)>> = raw
        .iter()
        .map(|block| block.iter().map(|(l, m)| (l.clone(), *m)).collect())
        .collect();
    let mut blocks = raw_blocks.clone();
    for block in &mut blocks {
        block.retain(|(l, _)| !fixed_components.contains(l));
    }

    let d = 2 * qn.n() - fixed_components.len() as u64;
    for (b, block) in blocks.iter().enumerate() {
        let sum: u64 = block.iter().map(|(_, m)| *m).sum();
        if sum != d {
            return Err(Error::Internal(format!(
                "block {b} sums to {sum} after cancellation, expected {d}"
            )));
        }
    }

    Ok(InducedMultinet {
        n: qn.n(),
        d,
        spec: qn.spec().clone(),
        provenance: section,
        blocks,
        raw_blocks,
        fixed_components,
        plane_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{make_field, FieldOps};
    use crate::multinet::{base_locus, verify, Verdict};
    use crate::qn::{build_qn, position_report};

    fn plane(spec: &Arc<FieldSpec>, c: [&str; 4]) -> PlaneP3 {
        PlaneP3::new(c.map(|s| spec.parse(s).unwrap())).unwrap()
    }

    fn line(spec: &Arc<FieldSpec>, c: [&str; 3]) -> LineP2 {
        LineP2::new(c.map(|s| spec.parse(s).unwrap())).unwrap()
    }

    #[test]
    fn coordinate_plane_section_matches_monomial_blocks() {
        let f = make_field(4).unwrap();
        let qn = build_qn(4, &f).unwrap();
        let im = restrict(&qn, &plane(&f, ["1", "0", "0", "0"])).unwrap();
        assert_eq!(im.d(), 8);
        assert_eq!(im.fixed_component_count(), 0);

        // Ambient coordinates are (x_1, x_2, x_3).  Block 0 is
        // x_1^4 (x_2^4 - x_3^4).
        let b0 = &im.blocks()[0];
        let axis = line(&f, ["1", "0", "0"]);
        let (_, mult) = b0.iter().find(|(l, _)| *l == axis).expect("x_1 present");
        assert_eq!(*mult, 4);
        for a in 0..4 {
            let za = f.zeta_pow(a);
            let l = LineP2::new([f.zero(), f.one(), -&za]).unwrap();
            let (_, m) = b0.iter().find(|(x, _)| *x == l).expect("x_2 - z^a x_3");
            assert_eq!(*m, 1);
        }

        // Block 1 is x_2^4 (x_1^4 - x_3^4), block 2 is x_3^4 (x_1^4 - x_2^4).
        let b1 = &im.blocks()[1];
        assert!(b1.iter().any(|(l, m)| *l == line(&f, ["0", "1", "0"]) && *m == 4));
        let b2 = &im.blocks()[2];
        assert!(b2.iter().any(|(l, m)| *l == line(&f, ["0", "0", "1"]) && *m == 4));

        let report = verify(&im.to_multinet());
        assert!(report.ok(), "failures: {:?}", report.failures);
        assert_eq!(report.classification, Some(Verdict::Heavy));
    }

    #[test]
    fn arrangement_planes_are_rejected() {
        let f = make_field(4).unwrap();
        let qn = build_qn(4, &f).unwrap();
        let err = restrict(&qn, &plane(&f, ["1", "-1", "0", "0"])).unwrap_err();
        assert_eq!(err, Error::PlaneInArrangement);
    }

    #[test]
    fn two_fixed_components_cancel_to_a_light_multinet() {
        // x_0 = (z+1) x_1 - z x_2 produces common factors x_1 - x_2 and
        // x_1 - z x_2 and cancels to degree 2n - 2.
        let f = make_field(5).unwrap();
        let qn = build_qn(5, &f).unwrap();
        let im = restrict(&qn, &plane(&f, ["1", "-(z+1)", "z", "0"])).unwrap();
        assert_eq!(im.fixed_component_count(), 2);
        assert_eq!(im.d(), 8);
        let expected = [line(&f, ["1", "-1", "0"]), line(&f, ["1", "-z", "0"])];
        for l in &expected {
            assert!(
                im.fixed_components().contains(l),
                "missing fixed component {l:?}"
            );
        }
        let report = verify(&im.to_multinet());
        assert!(report.ok(), "failures: {:?}", report.failures);
        assert_eq!(report.classification, Some(Verdict::LightProper));
    }

    #[test]
    fn one_fixed_component_example() {
        let f = make_field(5).unwrap();
        let qn = build_qn(5, &f).unwrap();
        let im = restrict(&qn, &plane(&f, ["3", "-2", "-1", "0"])).unwrap();
        assert_eq!(im.fixed_component_count(), 1);
        assert_eq!(im.d(), 9);
        let report = verify(&im.to_multinet());
        assert!(report.ok(), "failures: {:?}", report.failures);
        assert_eq!(report.classification, Some(Verdict::LightProper));
    }

    #[test]
    fn generic_rational_sections_are_nets() {
        for n in [2u64, 3, 4] {
            let f = make_field(n).unwrap();
            let qn = build_qn(n, &f).unwrap();
            let im = restrict(&qn, &plane(&f, ["1", "2", "3", "5"])).unwrap();
            assert_eq!(im.fixed_component_count(), 0);
            assert_eq!(im.d(), 2 * n);
            let m = im.to_multinet();
            let report = verify(&m);
            assert!(report.ok(), "n={n} failures: {:?}", report.failures);
            assert_eq!(report.classification, Some(Verdict::Net));
            assert_eq!(
                report.base_locus.unwrap().points().len() as u64,
                4 * n * n,
                "a (3,2n)-net has d^2 base points"
            );
        }
    }

    #[test]
    fn pivot_choice_only_relabels_coordinates() {
        let f = make_field(4).unwrap();
        let qn = build_qn(4, &f).unwrap();
        let h = plane(&f, ["1", "2", "3", "5"]);
        let reference = restrict(&qn, &h).unwrap();
        let ref_report = verify(&reference.to_multinet());
        let ref_lines = reference.to_multinet().line_histogram();
        let ref_points = ref_report.base_locus.as_ref().unwrap().histogram();
        for pivot in 1..4 {
            let alt = restrict_with_pivot(&qn, &h, pivot).unwrap();
            assert_eq!(alt.to_multinet().line_histogram(), ref_lines);
            let alt_report = verify(&alt.to_multinet());
            assert_eq!(
                alt_report.base_locus.as_ref().unwrap().histogram(),
                ref_points
            );
            assert_eq!(alt.fixed_component_count(), reference.fixed_component_count());
        }

        // Also for a plane with a zero coefficient and a fixed component.
        let f5 = make_field(5).unwrap();
        let qn5 = build_qn(5, &f5).unwrap();
        let h = plane(&f5, ["3", "-2", "-1", "0"]);
        let reference = restrict(&qn5, &h).unwrap();
        for pivot in 1..3 {
            let alt = restrict_with_pivot(&qn5, &h, pivot).unwrap();
            assert_eq!(
                alt.to_multinet().line_histogram(),
                reference.to_multinet().line_histogram()
            );
            assert_eq!(alt.fixed_component_count(), reference.fixed_component_count());
        }
        assert!(restrict_with_pivot(&qn5, &h, 3).is_err(), "zero pivot rejected");
    }

    #[test]
    fn multiplicity_sources_match_lattice_position() {
        let f = make_field(4).unwrap();
        let qn = build_qn(4, &f).unwrap();
        for (coeffs, base_lines, sameblock) in [
            (["1", "0", "0", "0"], 3usize, 0usize),
            (["1", "-5", "0", "0"], 1, 0),
            (["1", "-1", "-1", "1"], 0, 3),
            (["1", "2", "3", "5"], 0, 0),
        ] {
            let h = plane(&f, coeffs);
            let report = position_report(&h, &qn);
            assert_eq!(report.base_lines.len(), base_lines, "{coeffs:?}");
            assert_eq!(report.sameblock_lines.len(), sameblock, "{coeffs:?}");

            let im = restrict(&qn, &h).unwrap();
            let hist = im.to_multinet().line_histogram();
            assert_eq!(
                hist.get(&4).copied().unwrap_or(0),
                base_lines,
                "multiplicity-n lines come from contained bases"
            );
            assert_eq!(
                hist.get(&2).copied().unwrap_or(0),
                sameblock,
                "multiplicity-2 lines come from same-block pair lines"
            );
        }
    }

    #[test]
    fn raw_section_satisfies_condition_i_even_with_fixed_components() {
        let f = make_field(5).unwrap();
        let qn = build_qn(5, &f).unwrap();
        let im = restrict(&qn, &plane(&f, ["3", "-2", "-1", "0"])).unwrap();
        let raw = im.raw_multinet();
        assert!(base_locus(&raw).is_ok());
    }

    #[test]
    fn no_section_mixes_multiplicity_n_and_2_lines() {
        // Planes that contain a base line have the two-coefficient form, so
        // same-block lines would force membership in the arrangement.
        let f = make_field(6).unwrap();
        let qn = build_qn(6, &f).unwrap();
        for coeffs in [
            ["1", "-5", "0", "0"],
            ["0", "0", "1", "7"],
            ["1", "0", "0", "-2"],
            ["1", "-1", "-1", "1"],
            ["1", "-z", "-1", "z"],
        ] {
            let im = restrict(&qn, &plane(&f, coeffs)).unwrap();
            let hist = im.to_multinet().line_histogram();
            let has_n = hist.contains_key(&6);
            let has_2 = hist.contains_key(&2);
            assert!(!(has_n && has_2), "{coeffs:?} mixes line multiplicities");
            // Heavy sections never have fixed components.
            if has_n || has_2 {
                assert_eq!(im.fixed_component_count(), 0);
            }
        }
    }
}

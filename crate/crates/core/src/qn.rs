//! The arrangement `Q_n` in projective 3-space and position analysis of
//! candidate planes against its intersection lattice.
//!
//! `Q_n` consists of the `6n` planes `x_i - zeta_n^a x_j = 0` grouped into
//! three blocks of two half-blocks each: block 0 pairs coordinates
//! `(0,1),(2,3)`, block 1 `(0,2),(1,3)`, block 2 `(0,3),(1,2)`.  The `n`
//! planes of a half-block share a base line `x_i = x_j = 0`.  Sectioning a
//! plane `H` against this lattice decides everything about the induced
//! multinet, so [`position_report`] checks `H` exhaustively against the
//! base lines, the same-block and cross-block intersection lines, the four
//! coordinate points and the `n^3` unit points.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldOps, FieldSpec};
use crate::multinet::Verdict;
use crate::projgeo::{line_in_plane, LineP3, PlaneP3, PointP3};
use crate::{Error, Result};

/// Half-block coordinate pairs, indexed `[block][half]`.
pub const BLOCK_PAIRS: [[(usize, usize); 2]; 3] = [
    [(0, 1), (2, 3)],
    [(0, 2), (1, 3)],
    [(0, 3), (1, 2)],
];

/// One plane of `Q_n` with its lattice tags.
#[derive(Debug, Clone)]
pub struct QnPlane {
    pub plane: PlaneP3,
    pub block: usize,
    pub half: usize,
    /// Exponent `a` of `x_i - zeta_n^a x_j = 0`.
    pub exponent: u64,
}

/// A half-block: the `n` planes `x_i - zeta_n^a x_j` and their common base
/// line `x_i = x_j = 0`.
#[derive(Debug, Clone)]
pub struct HalfBlock {
    pub block: usize,
    pub half: usize,
    pub pair: (usize, usize),
    pub base: LineP3,
    /// Indices into the arrangement's plane list.
    pub planes: Vec<usize>,
}

/// The `Q_n` arrangement over a working field whose conductor is a
/// multiple of `n`.
#[derive(Debug)]
pub struct QnArrangement {
    n: u64,
    spec: Arc<FieldSpec>,
    planes: Vec<QnPlane>,
    half_blocks: Vec<HalfBlock>,
    coordinate_points: [PointP3; 4],
    zeta_pows: Vec<FieldElem>,
    plane_index: HashMap<PlaneP3, usize>,
    root_exponent: HashMap<FieldElem, u64>,
}

/// Builds `Q_n` over the given field; requires `n >= 1` and `n | N`.
pub fn build_qn(n: u64, spec: &Arc<FieldSpec>) -> Result<QnArrangement> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if spec.conductor() % n != 0 {
        return Err(Error::NotADivisor(n, spec.conductor()));
    }
    let zeta_n = spec.zeta_pow((spec.conductor() / n) as i64);
    let mut zeta_pows = Vec::with_capacity(n as usize);
    let mut power = spec.one();
    for _ in 0..n {
        zeta_pows.push(power.clone());
        power = &power * &zeta_n;
    }

    let unit = |i: usize| -> PointP3 {
        let mut coords = [spec.zero(), spec.zero(), spec.zero(), spec.zero()];
        coords[i] = spec.one();
        PointP3::new(coords).expect("unit vector is nonzero")
    };
    let coordinate_points = [unit(0), unit(1), unit(2), unit(3)];

    let mut planes = Vec::with_capacity(6 * n as usize);
    let mut half_blocks = Vec::with_capacity(6);
    for (block, pairs) in BLOCK_PAIRS.iter().enumerate() {
        for (half, &(i, j)) in pairs.iter().enumerate() {
            let mut indices = Vec::with_capacity(n as usize);
            for a in 0..n {
                let mut coeffs = [spec.zero(), spec.zero(), spec.zero(), spec.zero()];
                coeffs[i] = spec.one();
                coeffs[j] = -&zeta_pows[a as usize];
                let plane = PlaneP3::new(coeffs).expect("arrangement plane is nonzero");
                indices.push(planes.len());
                planes.push(QnPlane {
                    plane,
                    block,
                    half,
                    exponent: a,
                });
            }
            // Base line x_i = x_j = 0, spanned by the other two coordinate
            // points.
            let others: Vec<usize> = (0..4).filter(|k| *k != i && *k != j).collect();
            let base = LineP3::from_points(
                &coordinate_points[others[0]],
                &coordinate_points[others[1]],
            )
            .expect("coordinate points are independent");
            half_blocks.push(HalfBlock {
                block,
                half,
                pair: (i, j),
                base,
                planes: indices,
            });
        }
    }

    let plane_index = planes
        .iter()
        .enumerate()
        .map(|(idx, p)| (p.plane.clone(), idx))
        .collect();
    let root_exponent = zeta_pows
        .iter()
        .enumerate()
        .map(|(a, z)| (z.clone(), a as u64))
        .collect();

    Ok(QnArrangement {
        n,
        spec: spec.clone(),
        planes,
        half_blocks,
        coordinate_points,
        zeta_pows,
        plane_index,
        root_exponent,
    })
}

impl QnArrangement {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn planes(&self) -> &[QnPlane] {
        &self.planes
    }

    /// The six half-blocks, indexed by `2 * block + half`.
    pub fn half_blocks(&self) -> &[HalfBlock] {
        &self.half_blocks
    }

    pub fn coordinate_points(&self) -> &[PointP3; 4] {
        &self.coordinate_points
    }

    /// `zeta_n^a` for `a` in `[0, n)`.
    pub fn zeta_n_pow(&self, a: u64) -> &FieldElem {
        &self.zeta_pows[(a % self.n) as usize]
    }

    /// If `value` is an `n`-th root of unity, its exponent; cached exact
    /// lookup equivalent to [`FieldElem::root_of_unity_exponent`].
    pub fn root_exponent(&self, value: &FieldElem) -> Option<u64> {
        self.root_exponent.get(value).copied()
    }

    /// Index of `h` in the arrangement, if it is one of the `6n` planes.
    pub fn plane_position(&self, h: &PlaneP3) -> Option<usize> {
        self.plane_index.get(h).copied()
    }

    /// The normalized unit point `[zeta^a : zeta^b : zeta^c : 1]`.
    pub fn unit_point(&self, a: u64, b: u64, c: u64) -> PointP3 {
        PointP3::new([
            self.zeta_pows[(a % self.n) as usize].clone(),
            self.zeta_pows[(b % self.n) as usize].clone(),
            self.zeta_pows[(c % self.n) as usize].clone(),
            self.spec.one(),
        ])
        .expect("unit point is nonzero")
    }

    /// Indices of all arrangement planes through the given point.
    pub fn incident_planes(&self, p: &PointP3) -> Vec<usize> {
        self.planes
            .iter()
            .enumerate()
            .filter(|(_, qp)| qp.plane.contains(p))
            .map(|(idx, _)| idx)
            .collect()
    }

    /// Expands each block's product of linear forms and checks it equals
    /// the difference-of-powers block polynomial
    /// `(x_i^n - x_j^n)(x_k^n - x_l^n)`.
    pub fn verify_block_polynomials(&self) -> bool {
        use crate::poly::SparsePoly;
        for (block, pairs) in BLOCK_PAIRS.iter().enumerate() {
            let product = SparsePoly::<4>::product_of_linears(
                &self.spec,
                self.planes
                    .iter()
                    .filter(|p| p.block == block)
                    .map(|p| (&p.plane.coords()[..], 1)),
            );
            let mut target = SparsePoly::<4>::one(&self.spec);
            for &(i, j) in pairs {
                let mut e_i = [0u32; 4];
                e_i[i] = self.n as u32;
                let mut e_j = [0u32; 4];
                e_j[j] = self.n as u32;
                let diff = SparsePoly::<4>::monomial(&self.spec, e_i, self.spec.one())
                    .sub(&SparsePoly::<4>::monomial(&self.spec, e_j, self.spec.one()));
                target = target.mul(&diff);
            }
            if product != target {
                return false;
            }
        }
        true
    }
}

/// A lattice line of the same-block kind contained in a plane: the
/// intersection of two planes from different halves of one block.
#[derive(Debug, Clone)]
pub struct SameBlockLine {
    pub block: usize,
    /// Indices of the two planes (one per half) whose intersection it is.
    pub planes: (usize, usize),
    pub line: LineP3,
}

/// A lattice line of the cross-block kind contained in a plane: the common
/// intersection of one plane from each block.
#[derive(Debug, Clone)]
pub struct CrossBlockLine {
    pub line: LineP3,
    /// Indices of the (three) arrangement planes containing the line, one
    /// per block.
    pub planes: Vec<usize>,
}

/// The exhaustive position of a plane relative to the `Q_n` lattice.
#[derive(Debug, Clone)]
pub struct PositionReport {
    pub plane: PlaneP3,
    /// Index of the arrangement plane equal to `h`, when `h` is in `Q_n`.
    pub in_qn: Option<usize>,
    /// Half-block ids (`2 * block + half`) whose base line lies in `h`.
    pub base_lines: Vec<usize>,
    pub sameblock_lines: Vec<SameBlockLine>,
    pub crossblock_lines: Vec<CrossBlockLine>,
    /// Indices (0..4) of coordinate points on `h`.
    pub coordinate_points: Vec<usize>,
    /// All unit points on `h`, canonically normalized and sorted.
    pub unit_points: Vec<PointP3>,
}

/// Exhaustively checks `h` against the finite `Q_n` lattice: membership in
/// the arrangement, the 6 base lines, the `n^2` same-block pair lines per
/// block, all cross-block pair lines, the 4 coordinate points and the
/// `n^3` unit points.
pub fn position_report(h: &PlaneP3, qn: &QnArrangement) -> PositionReport {
    let in_qn = qn.plane_position(h);

    let base_lines: Vec<usize> = qn
        .half_blocks
        .iter()
        .enumerate()
        .filter(|(_, hb)| line_in_plane(&hb.base, h))
        .map(|(id, _)| id)
        .collect();

    let mut sameblock_lines = Vec::new();
    for block in 0..3 {
        let first = &qn.half_blocks[2 * block];
        let second = &qn.half_blocks[2 * block + 1];
        for &i1 in &first.planes {
            for &i2 in &second.planes {
                let line = LineP3::from_planes(&qn.planes[i1].plane, &qn.planes[i2].plane)
                    .expect("planes from different halves are distinct");
                if line_in_plane(&line, h) {
                    sameblock_lines.push(SameBlockLine {
                        block,
                        planes: (i1, i2),
                        line,
                    });
                }
            }
        }
    }

    let mut cross: BTreeMap<LineP3, Vec<usize>> = BTreeMap::new();
    for b1 in 0..3 {
        for b2 in b1 + 1..3 {
            for (pi, p) in qn.planes.iter().enumerate().filter(|(_, p)| p.block == b1) {
                for (qi, q) in qn.planes.iter().enumerate().filter(|(_, q)| q.block == b2) {
                    let line = LineP3::from_planes(&p.plane, &q.plane)
                        .expect("planes from different blocks are distinct");
                    if line_in_plane(&line, h) {
                        let entry = cross.entry(line).or_default();
                        for idx in [pi, qi] {
                            if !entry.contains(&idx) {
                                entry.push(idx);
                            }
                        }
                    }
                }
            }
        }
    }
    let crossblock_lines: Vec<CrossBlockLine> = cross
        .into_iter()
        .map(|(line, mut planes)| {
            planes.sort_unstable();
            CrossBlockLine { line, planes }
        })
        .collect();

    let coordinate_points: Vec<usize> = (0..4)
        .filter(|&i| h.contains(&qn.coordinate_points[i]))
        .collect();

    let mut unit_points = Vec::new();
    for a in 0..qn.n {
        for b in 0..qn.n {
            for c in 0..qn.n {
                let value = h.eval(&[
                    qn.zeta_pows[a as usize].clone(),
                    qn.zeta_pows[b as usize].clone(),
                    qn.zeta_pows[c as usize].clone(),
                    qn.spec.one(),
                ]);
                if value.is_zero() {
                    unit_points.push(qn.unit_point(a, b, c));
                }
            }
        }
    }
    unit_points.sort();
    unit_points.dedup();

    PositionReport {
        plane: h.clone(),
        in_qn,
        base_lines,
        sameblock_lines,
        crossblock_lines,
        coordinate_points,
        unit_points,
    }
}

/// The classification a position report predicts for the induced multinet,
/// before any sectioning is done.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedClass {
    pub n: u64,
    /// Lines of multiplicity `n` (contained base lines).
    pub mult_n_lines: usize,
    /// Lines of multiplicity 2 (contained same-block lines).
    pub mult_2_lines: usize,
    /// Fixed components (contained cross-block lines).
    pub fixed_components: usize,
    /// Points of multiplicity `n` (coordinate points, when no fixed
    /// component absorbs them).
    pub mult_n_points: usize,
    /// Multiplicity-2 point candidates (unit points on the plane).
    pub double_points: usize,
    pub verdict: Verdict,
    /// Full predicted line-multiplicity histogram of the induced multinet
    /// after cancellation.
    pub line_histogram: BTreeMap<u64, usize>,
    /// Full predicted point-multiplicity histogram after cancellation.
    pub point_histogram: BTreeMap<u64, usize>,
    /// For `n <= 3` the numeric multiplicity classes collide (for example
    /// `2 = n - 1` at `n = 3`), so counts are merged numerically rather
    /// than interpreted.
    pub ambiguous: bool,
}

/// Predicts the induced multinet's class from lattice position alone.
/// Rejects planes of the arrangement.
pub fn predict_class(report: &PositionReport, qn: &QnArrangement) -> Result<PredictedClass> {
    if report.in_qn.is_some() {
        return Err(Error::PlaneInArrangement);
    }
    let n = qn.n;
    let fixed = report.crossblock_lines.len();
    let mult_n_lines = report.base_lines.len();
    let mult_2_lines = report.sameblock_lines.len();
    let coord = report.coordinate_points.len();
    let units = report.unit_points.len();

    let mut line_histogram: BTreeMap<u64, usize> = BTreeMap::new();
    for block in 0..3 {
        let bases = report
            .base_lines
            .iter()
            .filter(|&&hb| hb / 2 == block)
            .count();
        let doubles = report
            .sameblock_lines
            .iter()
            .filter(|l| l.block == block)
            .count();
        let consumed = n as usize * bases + 2 * doubles + fixed;
        assert!(consumed <= 2 * n as usize, "lattice accounting overflow");
        let singles = 2 * n as usize - consumed;
        if bases > 0 {
            *line_histogram.entry(n).or_default() += bases;
        }
        if doubles > 0 {
            *line_histogram.entry(2).or_default() += doubles;
        }
        if singles > 0 {
            *line_histogram.entry(1).or_default() += singles;
        }
    }

    let d = 2 * n as usize - fixed;
    let mut point_histogram: BTreeMap<u64, usize> = BTreeMap::new();
    if fixed == 0 {
        if coord > 0 {
            *point_histogram.entry(n).or_default() += coord;
        }
        if units > 0 {
            *point_histogram.entry(2).or_default() += units;
        }
        let used = n as usize * n as usize * coord + 4 * units;
        assert!(d * d >= used, "point accounting overflow");
        let ones = d * d - used;
        if ones > 0 {
            *point_histogram.entry(1).or_default() += ones;
        }
    } else {
        // The single coordinate point on the fixed components drops to
        // multiplicity n - fixed after cancellation; the cancelled multinet
        // has no double points.
        let residual = n.saturating_sub(fixed as u64);
        if residual >= 1 {
            *point_histogram.entry(residual).or_default() += 1;
        }
        let used = (residual as usize) * (residual as usize);
        let ones = d * d - used;
        if ones > 0 {
            *point_histogram.entry(1).or_default() += ones;
        }
    }

    let heavy = line_histogram.keys().any(|&m| m > 1);
    let proper_points = point_histogram.keys().any(|&m| m > 1);
    let verdict = if heavy {
        Verdict::Heavy
    } else if proper_points {
        Verdict::LightProper
    } else {
        Verdict::Net
    };

    Ok(PredictedClass {
        n,
        mult_n_lines,
        mult_2_lines,
        fixed_components: fixed,
        mult_n_points: if fixed == 0 { coord } else { 0 },
        double_points: units,
        verdict,
        line_histogram,
        point_histogram,
        ambiguous: n <= 3,
    })
}

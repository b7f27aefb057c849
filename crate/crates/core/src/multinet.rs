//! The multinet data model, independent of how the multinet was produced:
//! base-locus computation, axiom verification, numerical identities,
//! classification, pencil membership, Latin-square extraction and a small
//! catalog of classical examples.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{FieldOps, FieldSpec};
use crate::poly::{span_dimension, SparsePoly};
use crate::projgeo::{meet, LineP2, PointP2};
use crate::{Error, Result};

/// Classification of a multinet.
///
/// A net has all point multiplicities equal to one; a proper multinet whose
/// lines all have multiplicity one is light; anything else is heavy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Net,
    LightProper,
    Heavy,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Net => write!(f, "net"),
            Verdict::LightProper => write!(f, "light"),
            Verdict::Heavy => write!(f, "heavy"),
        }
    }
}

/// A multi-arrangement of lines in `P^2` partitioned into `k >= 3` blocks
/// with positive multiplicities.  Construction performs structural checks
/// only; the multinet axioms are the business of [`verify`], so that
/// deliberately broken inputs can be diagnosed rather than rejected.
#[derive(Debug, Clone)]
pub struct Multinet {
    d: u64,
    blocks: Vec<Vec<(LineP2, u64)>>,
    spec: Arc<FieldSpec>,
}

impl Multinet {
    pub fn new(spec: &Arc<FieldSpec>, d: u64, blocks: Vec<Vec<(LineP2, u64)>>) -> Result<Self> {
        if blocks.len() < 3 {
            return Err(Error::InvalidMultinet(format!(
                "needs at least 3 blocks, got {}",
                blocks.len()
            )));
        }
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidMultinet(format!("block {i} is empty")));
            }
            if block.iter().any(|(_, m)| *m == 0) {
                return Err(Error::InvalidMultinet(format!(
                    "block {i} has a zero multiplicity"
                )));
            }
            let distinct: BTreeSet<&LineP2> = block.iter().map(|(l, _)| l).collect();
            if distinct.len() != block.len() {
                return Err(Error::InvalidMultinet(format!(
                    "block {i} repeats a line"
                )));
            }
        }
        Ok(Multinet {
            d,
            blocks,
            spec: spec.clone(),
        })
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<(LineP2, u64)>] {
        &self.blocks
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Histogram of line multiplicities over all blocks.
    pub fn line_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for block in &self.blocks {
            for (_, m) in block {
                *h.entry(*m).or_default() += 1;
            }
        }
        h
    }

    /// Expands block `i` into the degree-d form `prod line^mult`.
    pub fn fiber_polynomial(&self, block: usize) -> SparsePoly<3> {
        SparsePoly::product_of_linears(
            &self.spec,
            self.blocks[block]
                .iter()
                .map(|(l, m)| (&l.coords()[..], *m)),
        )
    }
}

/// The base locus: every intersection of lines from different blocks, with
/// its multiplicity.
#[derive(Debug, Clone)]
pub struct BaseLocus {
    points: Vec<(PointP2, u64)>,
}

impl BaseLocus {
    pub fn points(&self) -> &[(PointP2, u64)] {
        &self.points
    }

    pub fn histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for (_, m) in &self.points {
            *h.entry(*m).or_default() += 1;
        }
        h
    }

    pub fn multiplicity_of(&self, p: &PointP2) -> Option<u64> {
        self.points
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, m)| *m)
    }
}

/// Computes the base locus and point multiplicities, checking that the
/// per-block sums agree at every point (condition (i)).  The offending
/// point is reported on violation.
pub fn base_locus(m: &Multinet) -> Result<BaseLocus> {
    let mut x: BTreeSet<PointP2> = BTreeSet::new();
    for i in 0..m.blocks.len() {
        for j in i + 1..m.blocks.len() {
            for (l1, _) in &m.blocks[i] {
                for (l2, _) in &m.blocks[j] {
                    if l1 == l2 {
                        continue;
                    }
                    x.insert(meet(l1, l2).expect("distinct lines meet"));
                }
            }
        }
    }
    let mut points = Vec::with_capacity(x.len());
    for p in x {
        let sums: Vec<u64> = m
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .filter(|(l, _)| l.contains(&p))
                    .map(|(_, mult)| *mult)
                    .sum()
            })
            .collect();
        if sums.iter().any(|&s| s != sums[0]) {
            return Err(Error::InvalidMultinet(format!(
                "per-block sums {sums:?} disagree at {p:?}"
            )));
        }
        points.push((p, sums[0]));
    }
    Ok(BaseLocus { points })
}

/// Outcome of the four numerical identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityChecks {
    /// Every block's multiplicity sum equals `d`.
    pub block_sums: bool,
    /// The total multiplicity sum equals `d * k`.
    pub total_sum: bool,
    /// The point multiplicities satisfy `sum m(P)^2 = d^2`.
    pub point_square_sum: bool,
    /// Along every line, `sum_{P in X} m(P) = d`.
    pub per_line_point_sum: bool,
}

impl IdentityChecks {
    pub fn all(&self) -> bool {
        self.block_sums && self.total_sum && self.point_square_sum && self.per_line_point_sum
    }
}

/// Full verification outcome.  `classification` is assigned only when every
/// check passed.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub condition_i_ok: bool,
    pub condition_ii_ok: bool,
    pub identities: IdentityChecks,
    pub classification: Option<Verdict>,
    pub failures: Vec<String>,
    pub base_locus: Option<BaseLocus>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the multinet conditions (i) and (ii) and the identities
/// (block sums, total sum, point square sum, per-line point sums), then
/// classifies.  Failures are reported, never thrown.
pub fn verify(m: &Multinet) -> VerificationReport {
    let mut failures = Vec::new();

    let block_sums_vec: Vec<u64> = m
        .blocks
        .iter()
        .map(|b| b.iter().map(|(_, mult)| *mult).sum())
        .collect();
    let block_sums = block_sums_vec.iter().all(|&s| s == m.d);
    if !block_sums {
        failures.push(format!(
            "identity (1): block sums {block_sums_vec:?} differ from d={}",
            m.d
        ));
    }

    let total: u64 = block_sums_vec.iter().sum();
    let total_sum = total == m.d * m.k() as u64;
    if !total_sum {
        failures.push(format!(
            "identity (2): total multiplicity {total} differs from d*k={}",
            m.d * m.k() as u64
        ));
    }

    let locus = match base_locus(m) {
        Ok(locus) => Some(locus),
        Err(e) => {
            failures.push(format!("condition (i): {e}"));
            None
        }
    };
    let condition_i_ok = locus.is_some();

    let mut point_square_sum = false;
    let mut per_line_point_sum = false;
    if let Some(locus) = &locus {
        let square: u64 = locus.points.iter().map(|(_, mp)| mp * mp).sum();
        point_square_sum = square == m.d * m.d;
        if !point_square_sum {
            failures.push(format!(
                "identity (3): sum of squared point multiplicities {square} differs from d^2={}",
                m.d * m.d
            ));
        }

        per_line_point_sum = true;
        'outer: for block in &m.blocks {
            for (line, _) in block {
                let along: u64 = locus
                    .points
                    .iter()
                    .filter(|(p, _)| line.contains(p))
                    .map(|(_, mp)| *mp)
                    .sum();
                if along != m.d {
                    failures.push(format!(
                        "identity (4): points along {line:?} sum to {along}, not d={}",
                        m.d
                    ));
                    per_line_point_sum = false;
                    break 'outer;
                }
            }
        }
    }

    let condition_ii_ok = match &locus {
        Some(locus) => {
            let x: BTreeSet<&PointP2> = locus.points.iter().map(|(p, _)| p).collect();
            let mut ok = true;
            for (bi, block) in m.blocks.iter().enumerate() {
                if !block_connected(block, &x) {
                    failures.push(format!("condition (ii): block {bi} is disconnected"));
                    ok = false;
                }
            }
            ok
        }
        None => false,
    };

    let identities = IdentityChecks {
        block_sums,
        total_sum,
        point_square_sum,
        per_line_point_sum,
    };

    let classification = if failures.is_empty() {
        let locus = locus.as_ref().expect("no failures implies locus exists");
        let all_points_simple = locus.points.iter().all(|(_, mp)| *mp == 1);
        let all_lines_simple = m
            .blocks
            .iter()
            .all(|b| b.iter().all(|(_, mult)| *mult == 1));
        Some(if all_points_simple {
            Verdict::Net
        } else if all_lines_simple {
            Verdict::LightProper
        } else {
            Verdict::Heavy
        })
    } else {
        None
    };

    VerificationReport {
        condition_i_ok,
        condition_ii_ok,
        identities,
        classification,
        failures,
        base_locus: locus,
    }
}

/// Condition (ii) for one block: between any two of its distinct lines
/// there is a chain whose consecutive meets avoid the base locus.
fn block_connected(block: &[(LineP2, u64)], x: &BTreeSet<&PointP2>) -> bool {
    let lines: Vec<&LineP2> = block.iter().map(|(l, _)| l).collect();
    if lines.len() <= 1 {
        return true;
    }
    let mut visited = vec![false; lines.len()];
    let mut queue = vec![0usize];
    visited[0] = true;
    let mut seen = 1;
    while let Some(i) = queue.pop() {
        for j in 0..lines.len() {
            if visited[j] {
                continue;
            }
            let p = meet(lines[i], lines[j]).expect("distinct block lines meet");
            if !x.contains(&p) {
                visited[j] = true;
                seen += 1;
                queue.push(j);
            }
        }
    }
    seen == lines.len()
}

/// Checks that the `k` expanded fiber polynomials span a pencil: their
/// coefficient vectors must have rank exactly two.
pub fn verify_pencil(m: &Multinet) -> bool {
    let fibers: Vec<SparsePoly<3>> = (0..m.k()).map(|i| m.fiber_polynomial(i)).collect();
    span_dimension(&fibers) == 2
}

/// A Latin square of order `d` with entries in `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    entries: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row][col]
    }

    /// Every row and every column is a permutation of `0..d`.
    pub fn is_latin(&self) -> bool {
        let d = self.order();
        let full: BTreeSet<usize> = (0..d).collect();
        for row in &self.entries {
            if row.iter().copied().collect::<BTreeSet<_>>() != full {
                return false;
            }
        }
        for col in 0..d {
            let col_set: BTreeSet<usize> = self.entries.iter().map(|r| r[col]).collect();
            if col_set != full {
                return false;
            }
        }
        true
    }

    /// Orthogonality: superimposing the two squares yields every ordered
    /// pair exactly once.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        let d = self.order();
        if other.order() != d {
            return false;
        }
        let mut pairs = BTreeSet::new();
        for r in 0..d {
            for c in 0..d {
                pairs.insert((self.entries[r][c], other.entries[r][c]));
            }
        }
        pairs.len() == d * d
    }
}

/// Extracts the `k - 2` Latin squares of a net.  Lines are indexed within
/// each block by canonical coefficient-string order, and base points fill
/// `L[i][j] = s` (and the second square for `k = 4`).
pub fn to_latin(m: &Multinet) -> Result<Vec<LatinSquare>> {
    if !(3..=4).contains(&m.k()) {
        return Err(Error::NotANet(format!(
            "Latin extraction needs k in {{3,4}}, got {}",
            m.k()
        )));
    }
    let report = verify(m);
    match report.classification {
        Some(Verdict::Net) => {}
        other => {
            return Err(Error::NotANet(format!(
                "classification is {other:?}, need a net"
            )))
        }
    }
    let locus = report.base_locus.expect("verified nets carry a locus");
    let d = m.d as usize;

    let mut index: Vec<HashMap<&LineP2, usize>> = Vec::with_capacity(m.k());
    for block in &m.blocks {
        let mut keyed: Vec<(&LineP2, String)> = block
            .iter()
            .map(|(l, _)| {
                let key = l
                    .coords()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                (l, key)
            })
            .collect();
        keyed.sort_by(|a, b| a.1.cmp(&b.1));
        index.push(
            keyed
                .into_iter()
                .enumerate()
                .map(|(i, (l, _))| (l, i))
                .collect(),
        );
    }

    let squares_needed = m.k() - 2;
    let mut squares = vec![vec![vec![usize::MAX; d]; d]; squares_needed];
    for (p, _) in locus.points() {
        let mut incident = Vec::with_capacity(m.k());
        for (bi, block) in m.blocks.iter().enumerate() {
            let through: Vec<usize> = block
                .iter()
                .filter(|(l, _)| l.contains(p))
                .map(|(l, _)| index[bi][l])
                .collect();
            if through.len() != 1 {
                return Err(Error::NotANet(format!(
                    "point {p:?} lies on {} lines of block {bi}",
                    through.len()
                )));
            }
            incident.push(through[0]);
        }
        let (row, col) = (incident[0], incident[1]);
        for (s, square) in squares.iter_mut().enumerate() {
            if square[row][col] != usize::MAX {
                return Err(Error::NotANet(format!(
                    "cell ({row},{col}) assigned twice"
                )));
            }
            square[row][col] = incident[2 + s];
        }
    }

    let squares: Vec<LatinSquare> = squares
        .into_iter()
        .map(|entries| LatinSquare { entries })
        .collect();
    for sq in &squares {
        if !sq.is_latin() {
            return Err(Error::Internal(
                "extracted square violates the Latin property".into(),
            ));
        }
    }
    if squares.len() == 2 && !squares[0].is_orthogonal_to(&squares[1]) {
        return Err(Error::Internal(
            "extracted squares are not orthogonal".into(),
        ));
    }
    Ok(squares)
}

/// Catalog of classical multinets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogName {
    /// `k` concurrent lines, one per block: the `(k,1)`-net.
    Local(usize),
    /// Blocks `x^n(y^n - z^n)`, `y^n(x^n - z^n)`, `z^n(x^n - y^n)`:
    /// the full monomial reflection multinet, heavy for `n > 1`.
    Monomial(u64),
    /// The `(4,3)`-net on the twelve lines of the dual Hesse pencil of
    /// `x^3 + y^3 + z^3` and `xyz`.
    Hasse,
}

/// Builds a catalog multinet over the given field.  `Monomial(n)` needs
/// `n | N`; `Hasse` needs `3 | N`.
pub fn catalog(name: CatalogName, spec: &Arc<FieldSpec>) -> Result<Multinet> {
    match name {
        CatalogName::Local(k) => {
            if k < 3 {
                return Err(Error::InvalidMultinet(format!(
                    "a local net needs k >= 3, got {k}"
                )));
            }
            // k distinct lines through [0:0:1].
            let blocks = (0..k)
                .map(|j| {
                    let line =
                        LineP2::new([spec.one(), spec.integer(j as i64), spec.zero()])
                            .expect("nonzero");
                    vec![(line, 1u64)]
                })
                .collect();
            Multinet::new(spec, 1, blocks)
        }
        CatalogName::Monomial(n) => {
            if n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            if spec.conductor() % n != 0 {
                return Err(Error::NotADivisor(n, spec.conductor()));
            }
            let zeta_n = spec.zeta_pow((spec.conductor() / n) as i64);
            let mut pows = Vec::with_capacity(n as usize);
            let mut p = spec.one();
            for _ in 0..n {
                pows.push(p.clone());
                p = &p * &zeta_n;
            }
            let axis = |i: usize| {
                let mut c = [spec.zero(), spec.zero(), spec.zero()];
                c[i] = spec.one();
                LineP2::new(c).expect("nonzero")
            };
            let diff = |i: usize, j: usize, a: usize| {
                let mut c = [spec.zero(), spec.zero(), spec.zero()];
                c[i] = spec.one();
                c[j] = -&pows[a];
                LineP2::new(c).expect("nonzero")
            };
            let mut blocks = Vec::with_capacity(3);
            for (axis_idx, (i, j)) in [(0usize, (1usize, 2usize)), (1, (0, 2)), (2, (0, 1))] {
                let mut block = vec![(axis(axis_idx), n)];
                for a in 0..n as usize {
                    block.push((diff(i, j, a), 1));
                }
                blocks.push(block);
            }
            Multinet::new(spec, 2 * n, blocks)
        }
        CatalogName::Hasse => {
            if spec.conductor() % 3 != 0 {
                return Err(Error::NotADivisor(3, spec.conductor()));
            }
            let omega = spec.zeta_pow((spec.conductor() / 3) as i64);
            let pows = [spec.one(), omega.clone(), &omega * &omega];
            let coordinate_fiber: Vec<(LineP2, u64)> = (0..3)
                .map(|i| {
                    let mut c = [spec.zero(), spec.zero(), spec.zero()];
                    c[i] = spec.one();
                    (LineP2::new(c).expect("nonzero"), 1u64)
                })
                .collect();

            // Candidate lines x + w^a y + w^b z; group the nine of them
            // into triples whose product lies in the pencil spanned by
            // x^3 + y^3 + z^3 and xyz.
            let candidates: Vec<(u64, u64, LineP2)> = (0..3u64)
                .flat_map(|a| {
                    (0..3u64).map(move |b| (a, b))
                })
                .map(|(a, b)| {
                    let line = LineP2::new([
                        spec.one(),
                        pows[a as usize].clone(),
                        pows[b as usize].clone(),
                    ])
                    .expect("nonzero");
                    (a, b, line)
                })
                .collect();
            let sum_cubes = SparsePoly::<3>::monomial(spec, [3, 0, 0], spec.one())
                .sub(&SparsePoly::<3>::monomial(spec, [0, 3, 0], spec.integer(-1)))
                .sub(&SparsePoly::<3>::monomial(spec, [0, 0, 3], spec.integer(-1)));
            let xyz = SparsePoly::<3>::monomial(spec, [1, 1, 1], spec.one());

            let mut fibers: Vec<Vec<(LineP2, u64)>> = Vec::new();
            let mut used: BTreeSet<(u64, u64)> = BTreeSet::new();
            for i in 0..candidates.len() {
                for j in i + 1..candidates.len() {
                    for k in j + 1..candidates.len() {
                        let triple = [&candidates[i], &candidates[j], &candidates[k]];
                        if triple.iter().any(|t| used.contains(&(t.0, t.1))) {
                            continue;
                        }
                        let product = SparsePoly::<3>::product_of_linears(
                            spec,
                            triple.iter().map(|t| (&t.2.coords()[..], 1)),
                        );
                        if span_dimension(&[sum_cubes.clone(), xyz.clone(), product]) == 2 {
                            for t in &triple {
                                used.insert((t.0, t.1));
                            }
                            fibers.push(triple.iter().map(|t| (t.2.clone(), 1u64)).collect());
                        }
                    }
                }
            }
            if fibers.len() != 3 || used.len() != 9 {
                return Err(Error::Internal(format!(
                    "pencil fiber derivation found {} fibers covering {} lines",
                    fibers.len(),
                    used.len()
                )));
            }
            let mut blocks = vec![coordinate_fiber];
            blocks.extend(fibers);
            let m = Multinet::new(spec, 3, blocks)?;
            if !verify_pencil(&m) {
                return Err(Error::Internal(
                    "derived fibers do not span a pencil".into(),
                ));
            }
            Ok(m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;

    #[test]
    fn local_nets_verify() {
        let f = make_field(1).unwrap();
        for k in [3usize, 4, 5] {
            let m = catalog(CatalogName::Local(k), &f).unwrap();
            assert_eq!(m.k(), k);
            assert_eq!(m.d(), 1);
            let report = verify(&m);
            assert!(report.ok(), "failures: {:?}", report.failures);
            assert_eq!(report.classification, Some(Verdict::Net));
            let locus = report.base_locus.unwrap();
            assert_eq!(locus.points().len(), 1);
            assert_eq!(locus.points()[0].1, 1);
        }
        assert!(catalog(CatalogName::Local(2), &f).is_err());
    }

    #[test]
    fn monomial_multinet_profile() {
        let f = make_field(6).unwrap();

        // n = 1 is the (3,2)-net.
        let m1 = catalog(CatalogName::Monomial(1), &f).unwrap();
        let r1 = verify(&m1);
        assert_eq!(r1.classification, Some(Verdict::Net));
        assert_eq!(m1.d(), 2);

        // n = 2 is the heavy (3,4)-multinet.
        let m2 = catalog(CatalogName::Monomial(2), &f).unwrap();
        let r2 = verify(&m2);
        assert!(r2.ok(), "failures: {:?}", r2.failures);
        assert_eq!(r2.classification, Some(Verdict::Heavy));
        assert_eq!(m2.d(), 4);

        // n = 3: three points of multiplicity 3 and nine of multiplicity 1,
        // cross-checked against sum m(P)^2 = d^2 = 36.
        let m3 = catalog(CatalogName::Monomial(3), &f).unwrap();
        let r3 = verify(&m3);
        assert!(r3.ok(), "failures: {:?}", r3.failures);
        let hist = r3.base_locus.as_ref().unwrap().histogram();
        assert_eq!(hist.get(&3), Some(&3));
        assert_eq!(hist.get(&1), Some(&9));
        assert_eq!(hist.len(), 2);
    }

    #[test]
    fn monomial_requires_divisibility() {
        let f = make_field(4).unwrap();
        assert!(catalog(CatalogName::Monomial(3), &f).is_err());
    }

    #[test]
    fn hasse_configuration_is_a_four_net() {
        let f = make_field(3).unwrap();
        let m = catalog(CatalogName::Hasse, &f).unwrap();
        assert_eq!(m.k(), 4);
        assert_eq!(m.d(), 3);
        let report = verify(&m);
        assert!(report.ok(), "failures: {:?}", report.failures);
        assert_eq!(report.classification, Some(Verdict::Net));
        let locus = report.base_locus.unwrap();
        assert_eq!(locus.points().len(), 9);
        assert!(locus.points().iter().all(|(_, m)| *m == 1));
        assert!(verify_pencil(&m));
    }

    #[test]
    fn hasse_latin_squares_are_orthogonal() {
        let f = make_field(3).unwrap();
        let m = catalog(CatalogName::Hasse, &f).unwrap();
        let squares = to_latin(&m).unwrap();
        assert_eq!(squares.len(), 2);
        for sq in &squares {
            assert_eq!(sq.order(), 3);
            assert!(sq.is_latin());
        }
        assert!(squares[0].is_orthogonal_to(&squares[1]));
    }

    #[test]
    fn tampered_multinet_fails_identity_one() {
        let f = make_field(3).unwrap();
        let m = catalog(CatalogName::Hasse, &f).unwrap();
        let mut blocks = m.blocks().to_vec();
        blocks[0][0].1 = 2;
        let tampered = Multinet::new(&f, m.d(), blocks).unwrap();
        let report = verify(&tampered);
        assert!(!report.identities.block_sums);
        assert!(report.classification.is_none());
        assert!(!report.ok());
    }

    #[test]
    fn pencil_check_rejects_perturbed_blocks() {
        let f = make_field(3).unwrap();
        let m = catalog(CatalogName::Hasse, &f).unwrap();
        assert!(verify_pencil(&m));
        let mut blocks = m.blocks().to_vec();
        // Replace one line with a line not in the pencil.
        blocks[1][0].0 = LineP2::new([f.one(), f.integer(7), f.integer(11)]).unwrap();
        let broken = Multinet::new(&f, m.d(), blocks).unwrap();
        assert!(!verify_pencil(&broken));
    }

    #[test]
    fn heavy_multinet_is_rejected_by_latin_extraction() {
        let f = make_field(2).unwrap();
        let m = catalog(CatalogName::Monomial(2), &f).unwrap();
        assert!(matches!(to_latin(&m), Err(Error::NotANet(_))));
    }
}

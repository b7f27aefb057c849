//! Exact projective geometry over the working field.
//!
//! Points, lines and planes are stored with a canonical normalization: the
//! first nonzero coordinate (or coefficient) equals one.  Equality is then
//! plain coordinate comparison, and sets of projective objects can be
//! deduplicated and ordered deterministically.  Lines of `P^3` are stored
//! as the reduced row echelon basis of their spanning plane in `k^4`,
//! which is likewise canonical.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldOps, FieldSpec};
use crate::linalg;
use crate::{Error, Result};

fn normalize(mut v: Vec<FieldElem>) -> Result<Vec<FieldElem>> {
    let pivot = v.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
    if !v[pivot].is_one() {
        let inv = v[pivot].inv().expect("pivot is nonzero");
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
    Ok(v)
}

fn dot(a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = a[0].spec().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

macro_rules! projective_vector {
    ($name:ident, $len:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            coords: [FieldElem; $len],
        }

        impl $name {
            /// Builds the object from homogeneous coordinates, normalizing
            /// so the first nonzero entry is one.  The zero vector is
            /// rejected.
            pub fn new(coords: [FieldElem; $len]) -> Result<Self> {
                let v = normalize(coords.to_vec())?;
                Ok(Self {
                    coords: v.try_into().expect("length preserved"),
                })
            }

            pub fn from_slice(coords: &[FieldElem]) -> Result<Self> {
                assert_eq!(coords.len(), $len);
                let v = normalize(coords.to_vec())?;
                Ok(Self {
                    coords: v.try_into().expect("length preserved"),
                })
            }

            pub fn coords(&self) -> &[FieldElem; $len] {
                &self.coords
            }

            pub fn spec(&self) -> &Arc<FieldSpec> {
                self.coords[0].spec()
            }

            /// The object with coordinate `i` moved to position `perm[i]`.
            pub fn permuted(&self, perm: &[usize; $len]) -> Self {
                let mut coords: Vec<FieldElem> = self.coords.to_vec();
                for (i, &target) in perm.iter().enumerate() {
                    coords[target] = self.coords[i].clone();
                }
                Self::from_slice(&coords).expect("permutation preserves nonzeroness")
            }

            /// The object with coordinate `i` multiplied by `factors[i]`.
            /// All factors must be nonzero.
            pub fn scaled(&self, factors: &[FieldElem; $len]) -> Self {
                let coords: Vec<FieldElem> = self
                    .coords
                    .iter()
                    .zip(factors)
                    .map(|(c, f)| c * f)
                    .collect();
                Self::from_slice(&coords).expect("unit scaling preserves nonzeroness")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, " : ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    };
}

projective_vector!(PointP2, 3, "A point of the projective plane.");
projective_vector!(PointP3, 4, "A point of projective 3-space.");
projective_vector!(
    LineP2,
    3,
    "A line of the projective plane, by the coefficients of its defining linear form."
);
projective_vector!(
    PlaneP3,
    4,
    "A plane of projective 3-space, by the coefficients of its defining linear form."
);

impl LineP2 {
    /// Exact incidence: the defining form vanishes on the point.
    pub fn contains(&self, p: &PointP2) -> bool {
        dot(&self.coords[..], &p.coords[..]).is_zero()
    }
}

impl PlaneP3 {
    /// Exact incidence: the defining form vanishes on the point.
    pub fn contains(&self, p: &PointP3) -> bool {
        dot(&self.coords[..], &p.coords[..]).is_zero()
    }

    /// Value of the defining form at arbitrary homogeneous coordinates.
    pub fn eval(&self, coords: &[FieldElem]) -> FieldElem {
        dot(&self.coords[..], coords)
    }
}

/// The unique plane through three projectively independent points, computed
/// as the exact one-dimensional nullspace of their coordinate matrix.
pub fn plane_through(p1: &PointP3, p2: &PointP3, p3: &PointP3) -> Result<PlaneP3> {
    let spec = p1.spec().clone();
    let rows = vec![
        p1.coords().to_vec(),
        p2.coords().to_vec(),
        p3.coords().to_vec(),
    ];
    let ns = linalg::nullspace(&spec, &rows, 4);
    if ns.len() != 1 {
        return Err(Error::DependentPoints);
    }
    PlaneP3::from_slice(&ns[0])
}

/// Intersection point of two distinct lines of `P^2` (exact cross product).
pub fn meet(l1: &LineP2, l2: &LineP2) -> Result<PointP2> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let a = l1.coords();
    let b = l2.coords();
    let coords = [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ];
    PointP2::new(coords)
}

/// A line of `P^3`, stored as the unique reduced-row-echelon basis of the
/// rank-2 space of coordinate vectors spanning it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineP3 {
    basis: [[FieldElem; 4]; 2],
}

/// Result of intersecting a line of `P^3` with a plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePlaneMeet {
    /// The line lies inside the plane.
    Contained,
    /// The line meets the plane in exactly this point.
    Point(PointP3),
}

impl LineP3 {
    /// The line through two distinct points.
    pub fn from_points(p: &PointP3, q: &PointP3) -> Result<Self> {
        let mut rows = vec![p.coords().to_vec(), q.coords().to_vec()];
        if linalg::rref(&mut rows) != 2 {
            return Err(Error::DependentPoints);
        }
        Ok(LineP3 {
            basis: [
                rows[0].clone().try_into().expect("length 4"),
                rows[1].clone().try_into().expect("length 4"),
            ],
        })
    }

    /// The intersection line of two distinct planes.
    pub fn from_planes(h1: &PlaneP3, h2: &PlaneP3) -> Result<Self> {
        if h1 == h2 {
            return Err(Error::IdenticalLines);
        }
        let spec = h1.spec().clone();
        let rows = vec![h1.coords().to_vec(), h2.coords().to_vec()];
        let ns = linalg::nullspace(&spec, &rows, 4);
        debug_assert_eq!(ns.len(), 2);
        let mut basis = ns;
        linalg::rref(&mut basis);
        Ok(LineP3 {
            basis: [
                basis[0].clone().try_into().expect("length 4"),
                basis[1].clone().try_into().expect("length 4"),
            ],
        })
    }

    /// The two canonical spanning points.
    pub fn spanning_points(&self) -> [PointP3; 2] {
        [
            PointP3::from_slice(&self.basis[0]).expect("basis rows are nonzero"),
            PointP3::from_slice(&self.basis[1]).expect("basis rows are nonzero"),
        ]
    }

    pub fn contains_point(&self, p: &PointP3) -> bool {
        let rows = vec![
            self.basis[0].to_vec(),
            self.basis[1].to_vec(),
            p.coords().to_vec(),
        ];
        linalg::rank(&rows) == 2
    }

    /// Intersects the line with a plane: either the line is contained or it
    /// meets the plane in a single point.
    pub fn meet_plane(&self, h: &PlaneP3) -> LinePlaneMeet {
        let vp = h.eval(&self.basis[0]);
        let vq = h.eval(&self.basis[1]);
        if vp.is_zero() && vq.is_zero() {
            return LinePlaneMeet::Contained;
        }
        // The point vq * P - vp * Q lies on both the line and the plane.
        let coords: Vec<FieldElem> = self.basis[0]
            .iter()
            .zip(&self.basis[1])
            .map(|(p, q)| &(&vq * p) - &(&vp * q))
            .collect();
        LinePlaneMeet::Point(PointP3::from_slice(&coords).expect("meet point is nonzero"))
    }
}

/// True iff the whole line lies inside the plane, decided by incidence of
/// both spanning points.
pub fn line_in_plane(l: &LineP3, h: &PlaneP3) -> bool {
    l.basis.iter().all(|row| h.eval(row).is_zero())
}

impl fmt::Debug for LineP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.spanning_points();
        write!(f, "line({p:?}, {q:?})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;

    fn f8() -> Arc<FieldSpec> {
        make_field(8).unwrap()
    }

    fn pt3(spec: &Arc<FieldSpec>, c: [&str; 4]) -> PointP3 {
        PointP3::new(c.map(|s| spec.parse(s).unwrap())).unwrap()
    }

    fn pl3(spec: &Arc<FieldSpec>, c: [&str; 4]) -> PlaneP3 {
        PlaneP3::new(c.map(|s| spec.parse(s).unwrap())).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let f = f8();
        let h = pl3(&f, ["1", "0", "0", "0"]);
        let p = pt3(&f, ["0", "1", "0", "0"]);
        assert!(h.contains(&p));

        // x_0 - (z+1) x_1 - z^3 x_2 + (z^3+z) x_3 contains [1:1:1:1].
        let h = pl3(&f, ["1", "-(z+1)", "-z^3", "z^3+z"]);
        let p = pt3(&f, ["1", "1", "1", "1"]);
        assert!(h.contains(&p));

        let l = LineP2::new([f.one(), f.one(), f.one()]).unwrap();
        let p = PointP2::new([f.one(), f.zero(), f.zero()]).unwrap();
        assert!(!l.contains(&p));
    }

    #[test]
    fn plane_through_coordinate_points() {
        let f = f8();
        let h = plane_through(
            &pt3(&f, ["1", "0", "0", "0"]),
            &pt3(&f, ["0", "1", "0", "0"]),
            &pt3(&f, ["0", "0", "1", "0"]),
        )
        .unwrap();
        assert_eq!(h, pl3(&f, ["0", "0", "0", "1"]));
    }

    #[test]
    fn plane_through_unit_points_recovers_known_plane() {
        // Three of the eight double points of the known n=8 plane span it.
        let f = f8();
        let pts = [
            pt3(&f, ["1", "1", "1", "1"]),
            pt3(&f, ["z^2", "z", "1", "1"]),
            pt3(&f, ["z^4", "z^3", "z^6", "1"]),
        ];
        let h = plane_through(&pts[0], &pts[1], &pts[2]).unwrap();
        let expected = pl3(&f, ["1", "-(z+1)", "-z^3", "z^3+z"]);
        assert_eq!(h, expected);

        // All eight tabulated points are incident to it.
        let table = [
            ["1", "1", "1", "1"],
            ["z^2", "z", "1", "1"],
            ["z^2", "z^2", "z^6", "1"],
            ["z^4", "z^3", "z^6", "1"],
            ["z^5", "z^2", "z^3", "1"],
            ["z^5", "z^3", "z^5", "1"],
            ["z^7", "1", "z", "1"],
            ["z^7", "z", "z^3", "1"],
        ];
        for coords in table {
            assert!(h.contains(&pt3(&f, coords)), "missing {coords:?}");
        }
    }

    #[test]
    fn plane_through_rejects_collinear_points() {
        let f = f8();
        let err = plane_through(
            &pt3(&f, ["1", "0", "0", "0"]),
            &pt3(&f, ["0", "1", "0", "0"]),
            &pt3(&f, ["1", "1", "0", "0"]),
        )
        .unwrap_err();
        assert_eq!(err, Error::DependentPoints);
    }

    #[test]
    fn meet_examples() {
        let f = f8();
        let l1 = LineP2::new([f.one(), f.zero(), f.zero()]).unwrap();
        let l2 = LineP2::new([f.zero(), f.one(), f.zero()]).unwrap();
        let p = meet(&l1, &l2).unwrap();
        assert_eq!(p, PointP2::new([f.zero(), f.zero(), f.one()]).unwrap());

        // (x_2 - x_3) and (x_1 - x_3) in coordinates (x_1, x_2, x_3) meet
        // at [1:1:1].
        let l1 = LineP2::new([f.zero(), f.one(), f.integer(-1)]).unwrap();
        let l2 = LineP2::new([f.one(), f.zero(), f.integer(-1)]).unwrap();
        let p = meet(&l1, &l2).unwrap();
        assert_eq!(p, PointP2::new([f.one(), f.one(), f.one()]).unwrap());

        assert_eq!(meet(&l1, &l1).unwrap_err(), Error::IdenticalLines);
    }

    #[test]
    fn line_in_plane_examples() {
        let f = f8();
        // Base line x_0 = x_1 = 0.
        let base = LineP3::from_points(
            &pt3(&f, ["0", "0", "1", "0"]),
            &pt3(&f, ["0", "0", "0", "1"]),
        )
        .unwrap();

        // x_0 - c x_1 = 0 contains it.
        let h = pl3(&f, ["1", "-5", "0", "0"]);
        assert!(line_in_plane(&base, &h));

        // x_2 = 0 does not.
        let h = pl3(&f, ["0", "0", "1", "0"]);
        assert!(!line_in_plane(&base, &h));

        // x_0+x_1+x_2+x_3 = 0 contains [0:0:1:-1] but not [0:0:0:1].
        let h = pl3(&f, ["1", "1", "1", "1"]);
        assert!(h.contains(&pt3(&f, ["0", "0", "1", "-1"])));
        assert!(!h.contains(&pt3(&f, ["0", "0", "0", "1"])));
        assert!(!line_in_plane(&base, &h));
    }

    #[test]
    fn line_from_planes_matches_line_from_points() {
        let f = f8();
        // The base line x_0 = x_1 = 0 both ways.
        let via_planes = LineP3::from_planes(
            &pl3(&f, ["1", "0", "0", "0"]),
            &pl3(&f, ["0", "1", "0", "0"]),
        )
        .unwrap();
        let via_points = LineP3::from_points(
            &pt3(&f, ["0", "0", "1", "0"]),
            &pt3(&f, ["0", "0", "0", "1"]),
        )
        .unwrap();
        assert_eq!(via_planes, via_points);
        assert!(via_planes.contains_point(&pt3(&f, ["0", "0", "1", "-7"])));
        assert!(!via_planes.contains_point(&pt3(&f, ["1", "0", "0", "1"])));
    }

    #[test]
    fn meet_plane_splits_contained_and_transverse() {
        let f = f8();
        let base = LineP3::from_points(
            &pt3(&f, ["0", "0", "1", "0"]),
            &pt3(&f, ["0", "0", "0", "1"]),
        )
        .unwrap();
        assert_eq!(
            base.meet_plane(&pl3(&f, ["1", "2", "0", "0"])),
            LinePlaneMeet::Contained
        );
        match base.meet_plane(&pl3(&f, ["1", "1", "1", "1"])) {
            LinePlaneMeet::Point(p) => {
                assert_eq!(p, pt3(&f, ["0", "0", "1", "-1"]));
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn scalar_multiples_normalize_identically() {
        let f = f8();
        let a = pt3(&f, ["2", "4", "6", "8"]);
        let b = pt3(&f, ["1", "2", "3", "4"]);
        assert_eq!(a, b);
        let c = pt3(&f, ["z", "z^2", "z^3", "z^2+z"]);
        let d = pt3(&f, ["1", "z", "z^2", "z+1"]);
        assert_eq!(c, d);
    }

    #[test]
    fn plane_through_is_permutation_invariant() {
        let f = f8();
        let p = [
            pt3(&f, ["1", "1", "1", "1"]),
            pt3(&f, ["z^2", "z", "1", "1"]),
            pt3(&f, ["z^4", "z^3", "z^6", "1"]),
        ];
        let reference = plane_through(&p[0], &p[1], &p[2]).unwrap();
        for (a, b, c) in [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            assert_eq!(plane_through(&p[a], &p[b], &p[c]).unwrap(), reference);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_coord() -> impl Strategy<Value = (i8, u8)> {
            (-6i8..=6, 0u8..8)
        }

        fn elem(f: &Arc<FieldSpec>, (q, e): (i8, u8)) -> FieldElem {
            &f.integer(q as i64) * &f.zeta_pow(e as i64)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn normalization_is_idempotent(raw in proptest::collection::vec(arb_coord(), 4)) {
                let f = make_field(8).unwrap();
                let coords: Vec<FieldElem> = raw.iter().map(|&c| elem(&f, c)).collect();
                prop_assume!(coords.iter().any(|c| !c.is_zero()));
                let once = PointP3::from_slice(&coords).unwrap();
                let twice = PointP3::from_slice(&once.coords()[..]).unwrap();
                prop_assert_eq!(&once, &twice);

                // A nonzero scalar multiple normalizes to the same object.
                let scale = &f.integer(3) * &f.zeta();
                let scaled: Vec<FieldElem> = coords.iter().map(|c| c * &scale).collect();
                prop_assert_eq!(once, PointP3::from_slice(&scaled).unwrap());
            }

            #[test]
            fn meet_is_incident_to_both(a in proptest::collection::vec(arb_coord(), 3),
                                        b in proptest::collection::vec(arb_coord(), 3)) {
                let f = make_field(8).unwrap();
                let ca: Vec<FieldElem> = a.iter().map(|&c| elem(&f, c)).collect();
                let cb: Vec<FieldElem> = b.iter().map(|&c| elem(&f, c)).collect();
                prop_assume!(ca.iter().any(|c| !c.is_zero()));
                prop_assume!(cb.iter().any(|c| !c.is_zero()));
                let l1 = LineP2::from_slice(&ca).unwrap();
                let l2 = LineP2::from_slice(&cb).unwrap();
                prop_assume!(l1 != l2);
                let p = meet(&l1, &l2).unwrap();
                prop_assert!(l1.contains(&p));
                prop_assert!(l2.contains(&p));
            }

            #[test]
            fn plane_through_contains_inputs(pts in proptest::collection::vec(proptest::collection::vec(arb_coord(), 4), 3)) {
                let f = make_field(8).unwrap();
                let points: Vec<Vec<FieldElem>> = pts
                    .iter()
                    .map(|p| p.iter().map(|&c| elem(&f, c)).collect())
                    .collect();
                prop_assume!(points.iter().all(|p| p.iter().any(|c| !c.is_zero())));
                let ps: Vec<PointP3> = points
                    .iter()
                    .map(|p| PointP3::from_slice(p).unwrap())
                    .collect();
                if let Ok(h) = plane_through(&ps[0], &ps[1], &ps[2]) {
                    for p in &ps {
                        prop_assert!(h.contains(p));
                    }
                }
            }
        }
    }
}

//! Signature (2,2) and (2,1) linear algebra and the AdS3 quadric model.
//!
//! Conventions, frozen once for the whole crate:
//!
//!   <x,y> = -x0*y0 - x1*y1 + x2*y2 + x3*y3            (ambient R^{2,2})
//!   AdS3  = { x : <x,x> = -1 }
//!   <p,q> = -p0*q0 + p1*q1 + p2*q2                    (R^{2,1}, time first)
//!   H2    = { p : <p,p> = -1, p0 > 0 }                (hyperboloid model)
//!
//! The base point is x0 = (1,0,0,0) with tangent frame
//! e_t = (0,1,0,0), e_1 = (0,0,1,0), e_2 = (0,0,0,1); e_t is unit
//! time-like, so tangent coordinates in this frame carry the (2,1) form
//! above. The cross product is fixed by cross(e_t, e_1) = e_2 at x0;
//! the opposite choice exchanges the labels "left" and "right".

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use rand::Rng;
use thiserror::Error;

pub type Vec4 = Vector4<f64>;
pub type Mat4 = Matrix4<f64>;
pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Relative tolerance that decides when <v,v> counts as zero.
pub const CAUSAL_TOL: f64 = 1e-10;
/// Frobenius tolerance for "preserves the form".
pub const FORM_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("position vector is not time-like: <x,x> = {0}")]
    NotTimelike(f64),
    #[error("matrix does not preserve the form: residual {0:.3e}")]
    NotFormPreserving(f64),
    #[error("matrix is not in the identity component")]
    NotIdentityComponent,
    #[error("tangent vectors based at different points")]
    BaseMismatch,
    #[error("fixed point extraction failed: kernel is not time-like")]
    NoTimelikeFixedPoint,
}

/// The (2,2) bilinear form.
#[inline]
pub fn bilinear22(x: &Vec4, y: &Vec4) -> f64 {
    -x[0] * y[0] - x[1] * y[1] + x[2] * y[2] + x[3] * y[3]
}

/// The (2,1) bilinear form on frame coordinates (time first).
#[inline]
pub fn bilinear21(p: &Vec3, q: &Vec3) -> f64 {
    -p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

pub fn form22() -> Mat4 {
    Mat4::from_diagonal(&Vec4::new(-1.0, -1.0, 1.0, 1.0))
}

pub fn form21() -> Mat3 {
    Mat3::from_diagonal(&Vec3::new(-1.0, 1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalType {
    Timelike,
    Spacelike,
    Null,
}

/// Causal type of an ambient vector, with the frozen relative tolerance.
pub fn causal_type(v: &Vec4) -> CausalType {
    let q = bilinear22(v, v);
    let scale = v.norm_squared();
    if q.abs() < CAUSAL_TOL * scale.max(1e-300) {
        CausalType::Null
    } else if q < 0.0 {
        CausalType::Timelike
    } else {
        CausalType::Spacelike
    }
}

/// A point on the quadric <x,x> = -1, normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdsPoint {
    pos: Vec4,
}

impl AdsPoint {
    pub fn new(x: Vec4) -> Result<Self, LorentzError> {
        let q = bilinear22(&x, &x);
        if q >= -1e-300 {
            return Err(LorentzError::NotTimelike(q));
        }
        Ok(AdsPoint {
            pos: x / (-q).sqrt(),
        })
    }

    pub fn base() -> Self {
        AdsPoint {
            pos: Vec4::new(1.0, 0.0, 0.0, 0.0),
        }
    }

    #[inline]
    pub fn pos(&self) -> &Vec4 {
        &self.pos
    }

    /// Canonical future time-like tangent direction at this point
    /// (velocity of the rotation flow in the (x0,x1) plane, normalized).
    pub fn future_direction(&self) -> Vec4 {
        let t = Vec4::new(-self.pos[1], self.pos[0], 0.0, 0.0);
        t / (-bilinear22(&t, &t)).sqrt()
    }

    /// Chordal (ambient Euclidean) distance, used for sampling density checks.
    pub fn chordal(&self, other: &AdsPoint) -> f64 {
        (self.pos - other.pos).norm()
    }
}

/// A tangent vector of AdS3: <base, v> = 0.
#[derive(Debug, Clone, Copy)]
pub struct AdsTangent {
    pub base: AdsPoint,
    pub v: Vec4,
}

impl AdsTangent {
    /// Projects an arbitrary ambient vector onto the tangent space at x:
    /// w + <w,x> x. Idempotent on tangent vectors.
    pub fn project(base: AdsPoint, w: Vec4) -> Self {
        let v = w + bilinear22(&w, base.pos()) * base.pos();
        AdsTangent { base, v }
    }

    pub fn causal_type(&self) -> CausalType {
        causal_type(&self.v)
    }

    pub fn norm2(&self) -> f64 {
        bilinear22(&self.v, &self.v)
    }
}

pub fn project_tangent(x: AdsPoint, w: Vec4) -> AdsTangent {
    AdsTangent::project(x, w)
}

/// Cross product on T_x AdS3, defined by <cross(u,v), y> = det[x u v y].
///
/// With the frozen orientation this satisfies cross(e_t, e_1) = e_2 at
/// the base point, and <u x v, u x v> = <u,v>^2 - <u,u><v,v>.
pub fn cross(x: &AdsPoint, u: &AdsTangent, v: &AdsTangent) -> Result<AdsTangent, LorentzError> {
    if u.base.chordal(x) > 1e-9 || v.base.chordal(x) > 1e-9 {
        return Err(LorentzError::BaseMismatch);
    }
    Ok(cross_raw(x.pos(), &u.v, &v.v, x))
}

/// Cross product on raw components; `base` only tags the result.
pub fn cross_raw(x: &Vec4, u: &Vec4, v: &Vec4, base: &AdsPoint) -> AdsTangent {
    // n_d = det[x u v e_d] = (-1)^{d+1} * minor(rows != d); expanded by hand
    let det3 = |r0: usize, r1: usize, r2: usize| -> f64 {
        x[r0] * (u[r1] * v[r2] - u[r2] * v[r1]) - u[r0] * (x[r1] * v[r2] - x[r2] * v[r1])
            + v[r0] * (x[r1] * u[r2] - x[r2] * u[r1])
    };
    let n0 = -det3(1, 2, 3);
    let n1 = det3(0, 2, 3);
    let n2 = -det3(0, 1, 3);
    let n3 = det3(0, 1, 2);
    // invert the form: w = eta^{-1} n
    let w = Vec4::new(-n0, -n1, n2, n3);
    AdsTangent { base: *base, v: w }
}

/// Closed-form geodesic through x with initial velocity v.
///
/// Unit time-like directions give the 2*pi-periodic circles of the
/// quadric, unit space-like directions give cosh/sinh branches, null
/// directions give affine lines.
pub fn exp_geodesic(x: &AdsPoint, v: &AdsTangent, t: f64) -> AdsPoint {
    let q = bilinear22(&v.v, &v.v);
    let scale = v.v.norm_squared();
    let pos = if q.abs() < CAUSAL_TOL * scale.max(1e-300) {
        x.pos() + t * v.v
    } else if q < 0.0 {
        let s = (-q).sqrt();
        (s * t).cos() * x.pos() + (s * t).sin() / s * v.v
    } else {
        let s = q.sqrt();
        (s * t).cosh() * x.pos() + (s * t).sinh() / s * v.v
    };
    // Null geodesics stay on the quadric exactly; re-normalize anyway to
    // keep downstream invariants tight.
    AdsPoint::new(pos).expect("geodesic left the quadric")
}

/// An element of SO0(2,2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeIsometry {
    m: Mat4,
}

impl SpacetimeIsometry {
    pub fn new(m: Mat4) -> Result<Self, LorentzError> {
        let eta = form22();
        let res = (m.transpose() * eta * m - eta).norm();
        if res > FORM_TOL {
            return Err(LorentzError::NotFormPreserving(res));
        }
        // SO0(2,2): overall det +1 and positive det on the time-time block.
        let det = m.determinant();
        let tt = m.fixed_view::<2, 2>(0, 0).into_owned().determinant();
        if (det - 1.0).abs() > 1e-6 || tt <= 0.0 {
            return Err(LorentzError::NotIdentityComponent);
        }
        Ok(SpacetimeIsometry { m })
    }

    pub fn identity() -> Self {
        SpacetimeIsometry { m: Mat4::identity() }
    }

    /// The antipodal map x -> -x; central in SO0(2,2).
    pub fn antipodal() -> Self {
        SpacetimeIsometry { m: -Mat4::identity() }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn apply(&self, x: &AdsPoint) -> AdsPoint {
        AdsPoint::new(self.m * x.pos()).expect("isometry left the quadric")
    }

    pub fn push(&self, t: &AdsTangent) -> AdsTangent {
        AdsTangent {
            base: self.apply(&t.base),
            v: self.m * t.v,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        SpacetimeIsometry { m: self.m * other.m }
    }

    pub fn inverse(&self) -> Self {
        // eta M^T eta is the form inverse; cheaper and more stable than LU.
        let eta = form22();
        SpacetimeIsometry {
            m: eta * self.m.transpose() * eta,
        }
    }

    /// Rotation by `angle` in the (x2,x3) plane: the elliptic isometry
    /// fixing the time-like geodesic through the base point with
    /// direction e_t.
    pub fn rotation_23(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let mut m = Mat4::identity();
        m[(2, 2)] = c;
        m[(2, 3)] = -s;
        m[(3, 2)] = s;
        m[(3, 3)] = c;
        SpacetimeIsometry { m }
    }

    /// Rotation by `angle` in the (x0,x1) plane (both time-like).
    pub fn rotation_01(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let mut m = Mat4::identity();
        m[(0, 0)] = c;
        m[(0, 1)] = -s;
        m[(1, 0)] = s;
        m[(1, 1)] = c;
        SpacetimeIsometry { m }
    }

    /// Boost mixing coordinate i (time-like) with j (space-like).
    pub fn boost(i: usize, j: usize, rapidity: f64) -> Self {
        assert!(i < 2 && (2..4).contains(&j));
        let mut m = Mat4::identity();
        m[(i, i)] = rapidity.cosh();
        m[(i, j)] = rapidity.sinh();
        m[(j, i)] = rapidity.sinh();
        m[(j, j)] = rapidity.cosh();
        SpacetimeIsometry { m }
    }
}

/// Random element of SO0(2,2): a short word in plane rotations and boosts.
pub fn random_so22<R: Rng>(rng: &mut R) -> SpacetimeIsometry {
    let mut g = SpacetimeIsometry::identity();
    for _ in 0..3 {
        let a = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let b = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let t = rng.gen_range(-1.2..1.2);
        let i = rng.gen_range(0..2);
        let j = rng.gen_range(2..4);
        g = g
            .compose(&SpacetimeIsometry::rotation_01(a))
            .compose(&SpacetimeIsometry::rotation_23(b))
            .compose(&SpacetimeIsometry::boost(i, j, t));
    }
    g
}

/// Classification of an SO0(2,1) element.
#[derive(Debug, Clone, PartialEq)]
pub enum IsometryClass {
    /// Rotation about a point of H2; angle in [0, 2*pi), identity maps to
    /// angle 0 with fixed point at the hyperboloid origin.
    Elliptic { angle: f64, fixed: Vec3 },
    Parabolic,
    /// Translation along a space-like geodesic, length > 0.
    Hyperbolic { length: f64 },
}

/// An element of SO0(2,1) acting on frame coordinates (time first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicIsometry {
    m: Mat3,
}

impl HyperbolicIsometry {
    pub fn new(m: Mat3) -> Result<Self, LorentzError> {
        let eta = form21();
        let res = (m.transpose() * eta * m - eta).norm();
        if res > FORM_TOL {
            return Err(LorentzError::NotFormPreserving(res));
        }
        if (m.determinant() - 1.0).abs() > 1e-6 || m[(0, 0)] <= 0.0 {
            return Err(LorentzError::NotIdentityComponent);
        }
        Ok(HyperbolicIsometry { m })
    }

    /// Skips the form check; for matrices assembled from exact generators.
    pub fn from_matrix_unchecked(m: Mat3) -> Self {
        HyperbolicIsometry { m }
    }

    pub fn identity() -> Self {
        HyperbolicIsometry { m: Mat3::identity() }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.m * p
    }

    pub fn compose(&self, other: &Self) -> Self {
        HyperbolicIsometry { m: self.m * other.m }
    }

    pub fn inverse(&self) -> Self {
        let eta = form21();
        HyperbolicIsometry {
            m: eta * self.m.transpose() * eta,
        }
    }

    /// Rotation by `angle` about the hyperboloid origin (1,0,0).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let mut m = Mat3::identity();
        m[(1, 1)] = c;
        m[(1, 2)] = -s;
        m[(2, 1)] = s;
        m[(2, 2)] = c;
        HyperbolicIsometry { m }
    }

    /// Translation of length `l` along the geodesic through the origin in
    /// the first space direction.
    pub fn translation(l: f64) -> Self {
        let mut m = Mat3::identity();
        m[(0, 0)] = l.cosh();
        m[(0, 1)] = l.sinh();
        m[(1, 0)] = l.sinh();
        m[(1, 1)] = l.cosh();
        HyperbolicIsometry { m }
    }

    /// Elliptic element of the given angle about a point of H2.
    pub fn elliptic_about(p: &Vec3, angle: f64) -> Self {
        let f = frame_at_h2(p);
        HyperbolicIsometry {
            m: f * Self::rotation(angle).m * f.try_inverse().expect("frame is invertible"),
        }
    }

    /// Total classification with the frozen trace thresholds.
    pub fn classify(&self) -> Result<IsometryClass, LorentzError> {
        let tr = self.m.trace();
        if (tr - 3.0).abs() < 1e-9 {
            if (self.m - Mat3::identity()).norm() < 1e-8 {
                return Ok(IsometryClass::Elliptic {
                    angle: 0.0,
                    fixed: Vec3::new(1.0, 0.0, 0.0),
                });
            }
            return Ok(IsometryClass::Parabolic);
        }
        if tr > 3.0 {
            return Ok(IsometryClass::Hyperbolic {
                length: ((tr - 1.0) / 2.0).acosh(),
            });
        }
        // Elliptic: extract the time-like fixed axis from ker(m - I).
        let fixed = self.fixed_point()?;
        let u = orthonormal_spacelike_at(&fixed);
        let ju = cross21(&fixed, &u);
        let gu = self.m * u;
        let mut angle = f64::atan2(bilinear21(&gu, &ju), bilinear21(&gu, &u));
        if angle < 0.0 {
            angle += 2.0 * std::f64::consts::PI;
        }
        Ok(IsometryClass::Elliptic { angle, fixed })
    }

    /// Fixed point in H2 for elliptic elements.
    pub fn fixed_point(&self) -> Result<Vec3, LorentzError> {
        let a = self.m - Mat3::identity();
        let svd = a.svd(false, true);
        let vt = svd.v_t.expect("svd requested");
        let mut k = vt.row(2).transpose(); // smallest singular value direction
        // inverse iteration on A^T A sharpens the kernel direction
        let ata = a.transpose() * a;
        for _ in 0..2 {
            if let Some(y) = (ata + Mat3::identity() * 1e-18).lu().solve(&k) {
                if y.norm() > 0.0 {
                    k = y / y.norm();
                }
            }
        }
        let q = bilinear21(&k, &k);
        if q >= 0.0 {
            return Err(LorentzError::NoTimelikeFixedPoint);
        }
        let mut p = k / (-q).sqrt();
        if p[0] < 0.0 {
            p = -p;
        }
        Ok(p)
    }
}

/// Cross product on R^{2,1}: <cross21(a,b), c> = det[a b c].
pub fn cross21(a: &Vec3, b: &Vec3) -> Vec3 {
    let n = Vec3::new(
        Mat3::from_columns(&[*a, *b, Vec3::new(1.0, 0.0, 0.0)]).determinant(),
        Mat3::from_columns(&[*a, *b, Vec3::new(0.0, 1.0, 0.0)]).determinant(),
        Mat3::from_columns(&[*a, *b, Vec3::new(0.0, 0.0, 1.0)]).determinant(),
    );
    Vec3::new(-n[0], n[1], n[2])
}

/// Hyperbolic distance between hyperboloid points.
pub fn dist_h2(p: &Vec3, q: &Vec3) -> f64 {
    (-bilinear21(p, q)).max(1.0).acosh()
}

/// Deterministic unit space-like vector orthogonal to a hyperboloid point.
pub fn orthonormal_spacelike_at(p: &Vec3) -> Vec3 {
    // project e1, fall back to e2 when p is aligned with it
    for cand in [Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)] {
        let u = cand + bilinear21(&cand, p) * p;
        let q = bilinear21(&u, &u);
        if q > 1e-12 {
            return u / q.sqrt();
        }
    }
    unreachable!("a time-like direction always has space-like complement")
}

/// Positive frame [p, u, cross21(p,u)] at a hyperboloid point, as a matrix
/// mapping the standard frame at the origin to the frame at p.
pub fn frame_at_h2(p: &Vec3) -> Mat3 {
    let u = orthonormal_spacelike_at(p);
    let w = cross21(p, &u);
    Mat3::from_columns(&[*p, u, w])
}

/// Frozen orthonormal tangent frame at the AdS base point, as ambient
/// vectors (e_t, e_1, e_2).
pub fn base_frame() -> [Vec4; 3] {
    [
        Vec4::new(0.0, 1.0, 0.0, 0.0),
        Vec4::new(0.0, 0.0, 1.0, 0.0),
        Vec4::new(0.0, 0.0, 0.0, 1.0),
    ]
}

/// Deterministic orthonormal frame (time, space, space) of T_x AdS3.
pub fn frame_at(x: &AdsPoint) -> [AdsTangent; 3] {
    let t = AdsTangent {
        base: *x,
        v: x.future_direction(),
    };
    let mut spacelike: Vec<AdsTangent> = Vec::new();
    for d in 0..4 {
        if spacelike.len() == 2 {
            break;
        }
        let mut e = Vec4::zeros();
        e[d] = 1.0;
        let mut v = AdsTangent::project(*x, e).v;
        // subtract the time component and previously added space vectors
        v += bilinear22(&v, &t.v) * t.v; // <t,t> = -1, so += projects out
        for s in &spacelike {
            v -= bilinear22(&v, &s.v) * s.v;
        }
        let q = bilinear22(&v, &v);
        if q > 1e-8 {
            spacelike.push(AdsTangent {
                base: *x,
                v: v / q.sqrt(),
            });
        }
    }
    assert_eq!(spacelike.len(), 2, "frame completion failed");
    [t, spacelike[0], spacelike[1]]
}

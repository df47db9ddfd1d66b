//! Dense complex operators and projections.
//!
//! Everything downstream (commutants, lattices, rules, valuations) is built
//! from these two carriers. Values are immutable after construction and all
//! equality is tolerance-based against an explicit [`ToleranceContext`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::ToleranceContext;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// Bounded linear operator on a finite-dimensional complex Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: CMatrix,
}

impl Operator {
    /// Wraps a square matrix with finite entries.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { mat })
    }

    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        Self { mat }
    }

    /// Builds from row-major complex entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.len() / dim.max(1),
            });
        }
        Self::new(CMatrix::from_row_slice(dim, dim, entries))
    }

    /// Builds from row-major real entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let complex: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_rows(dim, &complex)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            mat: CMatrix::zeros(dim, dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut mat = CMatrix::zeros(dim, dim);
        for (i, &v) in values.iter().enumerate() {
            mat[(i, i)] = Complex64::new(v, 0.0);
        }
        Self { mat }
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(2, &[C_ZERO, C_ONE, C_ONE, C_ZERO]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(2, &[C_ZERO, -C_I, C_I, C_ZERO]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_rows(2, &[C_ONE, C_ZERO, C_ZERO, -C_ONE]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Operator {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Frobenius norm; the norm used for all tolerance comparisons.
    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn scale(&self, a: Complex64) -> Operator {
        Self {
            mat: self.mat.map(|z| z * a),
        }
    }

    pub fn scale_real(&self, a: f64) -> Operator {
        self.scale(Complex64::new(a, 0.0))
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.mat * v
    }

    pub fn distance(&self, other: &Operator) -> f64 {
        (&self.mat - &other.mat).norm()
    }

    pub fn approx_eq(&self, other: &Operator, tol: f64) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol
    }

    pub fn self_adjoint_defect(&self) -> f64 {
        (&self.mat - self.mat.adjoint()).norm()
    }

    pub fn is_self_adjoint(&self, ctx: &ToleranceContext) -> bool {
        self.self_adjoint_defect() <= ctx.atol
    }

    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        check_dims(self, other)?;
        Ok(Self {
            mat: &self.mat * &other.mat - &other.mat * &self.mat,
        })
    }

    pub fn commutes_with(&self, other: &Operator, ctx: &ToleranceContext) -> Result<bool> {
        let scale = (self.norm() * other.norm()).max(1.0);
        Ok(self.commutator(other)?.norm() <= ctx.atol * scale)
    }

    /// Unitary conjugation U A U†.
    pub fn conjugate_by(&self, u: &Operator) -> Operator {
        Self {
            mat: &(u.matrix() * &self.mat) * u.matrix().adjoint(),
        }
    }

    /// Symmetrized hermitian part (A + A†)/2.
    pub fn hermitian_part(&self) -> Operator {
        Self {
            mat: (&self.mat + self.mat.adjoint()).map(|z| z * 0.5),
        }
    }

    /// Anti-hermitian part rendered self-adjoint: (A − A†)/2i.
    pub fn skew_part(&self) -> Operator {
        Self {
            mat: (&self.mat - self.mat.adjoint()).map(|z| z * Complex64::new(0.0, -0.5)),
        }
    }
}

pub(crate) fn check_dims(a: &Operator, b: &Operator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

/// Self-adjoint idempotent operator: P² = P = P†.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    op: Operator,
}

impl Projection {
    /// Validates self-adjointness and idempotency within `ctx.atol`.
    pub fn try_new(op: Operator, ctx: &ToleranceContext) -> Result<Self> {
        let adjoint_defect = op.self_adjoint_defect();
        let idempotent_defect = (&(&op * &op) - &op).norm();
        if adjoint_defect > ctx.atol || idempotent_defect > ctx.atol {
            return Err(Error::NotProjection {
                adjoint_defect,
                idempotent_defect,
            });
        }
        Ok(Self { op })
    }

    /// For internal constructions that are projections by algebra
    /// (complements, spectral projectors, orthonormal outer products).
    pub(crate) fn new_unchecked(op: Operator) -> Self {
        Self { op }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            op: Operator::zero(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            op: Operator::identity(dim),
        }
    }

    /// Coordinate projector onto the axes listed in `axes`.
    pub fn coordinate(dim: usize, axes: &[usize]) -> Self {
        let mut mat = CMatrix::zeros(dim, dim);
        for &i in axes {
            mat[(i, i)] = C_ONE;
        }
        Self {
            op: Operator { mat },
        }
    }

    /// Rank-1 projector onto the line through `v` (normalized internally).
    pub fn onto_vector(v: &CVector) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::PreconditionViolated {
                reason: "cannot project onto the zero vector".into(),
            });
        }
        let u = v.map(|z| z / Complex64::new(n, 0.0));
        let mat = &u * u.adjoint();
        Ok(Self {
            op: Operator { mat },
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    /// Unitary conjugation U P U†, again a projection.
    pub fn conjugate_by(&self, u: &Operator) -> Projection {
        Self {
            op: self.op.conjugate_by(u),
        }
    }

    /// Orthocomplement I − P.
    pub fn complement(&self) -> Projection {
        Self {
            op: &Operator::identity(self.dim()) - &self.op,
        }
    }

    /// Rank read off the trace (exact for genuine projections).
    pub fn rank(&self) -> usize {
        self.op.trace().re.round().max(0.0) as usize
    }

    pub fn is_zero(&self, ctx: &ToleranceContext) -> bool {
        self.op.norm() <= ctx.atol
    }

    pub fn norm(&self) -> f64 {
        self.op.norm()
    }

    pub fn distance(&self, other: &Projection) -> f64 {
        self.op.distance(&other.op)
    }

    pub fn approx_eq(&self, other: &Projection, tol: f64) -> bool {
        self.op.approx_eq(&other.op, tol)
    }
}

/// True iff `a` is self-adjoint and idempotent within `ctx.atol`.
pub fn is_projection(a: &Operator, ctx: &ToleranceContext) -> bool {
    a.self_adjoint_defect() <= ctx.atol && (&(a * a) - a).norm() <= ctx.atol
}

/// Conjugate transpose of `a`.
pub fn adjoint(a: &Operator) -> Operator {
    a.adjoint()
}

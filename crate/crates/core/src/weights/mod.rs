//! Weight families `W(x) = T(x) T*(x)` with `T′ = G T` for a matrix polynomial `G`.
//!
//! Every built-in family has the form `T(x) = e^{−q(x)} U(x)` with `q(x) = x²/2`
//! (Hermite type) or `q(x) = x⁴/2` (Freud type), so `W(0) = I`.

mod adcase;
mod expm;

pub use adcase::{AdCase, AdConditionCase};
pub use expm::{expm_scaling_squaring, MatrixExp};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MoprlError, Result};
use crate::matpoly::{c64, CMatrix, MatPoly};

/// Parameters of a weight family, in the JSON shape accepted by the CLI:
/// `{"family": "hermite-a", "A": <matrix>}` and so on.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    ScalarHermite,
    HermiteA {
        #[serde(rename = "A")]
        a: CMatrix,
    },
    HermiteB {
        #[serde(rename = "B")]
        b: CMatrix,
    },
    FreudA {
        #[serde(rename = "A")]
        a: CMatrix,
    },
    FreudB {
        #[serde(rename = "B")]
        b: CMatrix,
    },
    /// `U(x) = I + A₁x + A₂x²` with `U⁻¹` polynomial, under a Gaussian envelope.
    PolyU {
        #[serde(rename = "A1")]
        a1: CMatrix,
        #[serde(rename = "A2")]
        a2: CMatrix,
    },
    /// Tabulated `T` on a grid (linear interpolation, zero outside) plus a stored `G`.
    /// Only real-line evaluation of `T` and `W` is available.
    Custom {
        #[serde(rename = "G")]
        g: MatPoly,
        grid: Vec<f64>,
        #[serde(rename = "T")]
        t: Vec<CMatrix>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ScalarHermite => "scalar-hermite",
            Family::HermiteA { .. } => "hermite-a",
            Family::HermiteB { .. } => "hermite-b",
            Family::FreudA { .. } => "freud-a",
            Family::FreudB { .. } => "freud-b",
            Family::PolyU { .. } => "poly-u",
            Family::Custom { .. } => "custom",
        }
    }
}

/// Family names accepted by [`WeightSpec::builtin`] and the CLI.
pub const FAMILY_NAMES: &[&str] = &["scalar-hermite", "hermite-a", "hermite-b", "freud-a", "freud-b", "poly-u", "custom"];

/// `L = Σ E_{k,k+1}`.
pub fn shift(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, |i, j| if j == i + 1 { c64(1.0, 0.0) } else { c64(0.0, 0.0) })
}

/// Scalar decay factor multiplying `U(x)U*(x)`; drives the quadrature truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    /// `e^{−x²}`
    Gaussian,
    /// `e^{−x⁴}`
    Quartic,
    /// Compactly supported tabulated weight.
    Support { lo: f64, hi: f64 },
}

#[derive(Clone, Debug)]
enum TKind {
    /// `e^{−q(z)} exp(X·z^power)`
    Exponential { q_degree: u32, exp: MatrixExp, power: i32 },
    /// `e^{−z²/2} U(z)` with polynomial `U`
    Polynomial { u: MatPoly },
    Sampled { grid: Vec<f64>, values: Vec<CMatrix> },
}

/// A validated weight: the family parameters plus evaluators for `T`, `W` and `G`.
#[derive(Clone, Debug)]
pub struct WeightSpec {
    family: Family,
    dim: usize,
    g: MatPoly,
    kind: TKind,
    description: String,
}

impl WeightSpec {
    pub fn new(family: Family) -> Result<Self> {
        let (dim, g, kind, description) = match &family {
            Family::ScalarHermite => {
                let g = MatPoly::monomial(CMatrix::identity(1).scale_re(-1.0), 1);
                (
                    1,
                    g,
                    TKind::Exponential {
                        q_degree: 2,
                        exp: MatrixExp::new(CMatrix::zeros(1)),
                        power: 1,
                    },
                    "scalar Hermite weight e^{-x^2}".to_string(),
                )
            }
            Family::HermiteA { a } => {
                let n = a.dim();
                let g = MatPoly::from_coeffs(vec![a.clone(), CMatrix::identity(n).scale_re(-1.0)]);
                (
                    n,
                    g,
                    TKind::Exponential {
                        q_degree: 2,
                        exp: MatrixExp::new(a.clone()),
                        power: 1,
                    },
                    format!("e^{{-x^2}} e^{{Ax}} e^{{A*x}}, N = {n}"),
                )
            }
            Family::HermiteB { b } => {
                let n = b.dim();
                let g = MatPoly::monomial(&b.scale_re(2.0) - &CMatrix::identity(n), 1);
                (
                    n,
                    g,
                    TKind::Exponential {
                        q_degree: 2,
                        exp: MatrixExp::new(b.clone()),
                        power: 2,
                    },
                    format!("e^{{-x^2}} e^{{Bx^2}} e^{{B*x^2}}, N = {n}"),
                )
            }
            Family::FreudA { a } => {
                let n = a.dim();
                let g = MatPoly::from_coeffs(vec![
                    a.clone(),
                    CMatrix::zeros(n),
                    CMatrix::zeros(n),
                    CMatrix::identity(n).scale_re(-2.0),
                ]);
                (
                    n,
                    g,
                    TKind::Exponential {
                        q_degree: 4,
                        exp: MatrixExp::new(a.clone()),
                        power: 1,
                    },
                    format!("e^{{-x^4}} e^{{Ax}} e^{{A*x}}, N = {n}"),
                )
            }
            Family::FreudB { b } => {
                let n = b.dim();
                let g = MatPoly::from_coeffs(vec![
                    CMatrix::zeros(n),
                    b.scale_re(2.0),
                    CMatrix::zeros(n),
                    CMatrix::identity(n).scale_re(-2.0),
                ]);
                (
                    n,
                    g,
                    TKind::Exponential {
                        q_degree: 4,
                        exp: MatrixExp::new(b.clone()),
                        power: 2,
                    },
                    format!("e^{{-x^4}} e^{{Bx^2}} e^{{B*x^2}}, N = {n}"),
                )
            }
            Family::PolyU { a1, a2 } => {
                a1.check_same_dim(a2)?;
                if !poly_u_validate(a1, a2) {
                    return Err(MoprlError::InvalidArgument(
                        "A1, A2 do not satisfy A2A1 + A1A2 = A1^3 and A2(A1^2 - A2) = 0".into(),
                    ));
                }
                let n = a1.dim();
                let u = MatPoly::from_coeffs(vec![CMatrix::identity(n), a1.clone(), a2.clone()]);
                (
                    n,
                    poly_u_g(a1, a2),
                    TKind::Polynomial { u },
                    format!("e^{{-x^2}} U(x) U*(x), U = I + A1 x + A2 x^2, N = {n}"),
                )
            }
            Family::Custom { g, grid, t } => {
                if grid.len() < 2 || grid.len() != t.len() {
                    return Err(MoprlError::InvalidArgument(
                        "custom weight needs at least two grid points and one T sample per point".into(),
                    ));
                }
                if grid.windows(2).any(|w| w[1] <= w[0]) || grid.iter().any(|x| !x.is_finite()) {
                    return Err(MoprlError::InvalidArgument("custom grid must be strictly increasing".into()));
                }
                let n = g.dim();
                if let Some(bad) = t.iter().find(|m| m.dim() != n) {
                    return Err(MoprlError::DimensionMismatch {
                        expected: n,
                        found: bad.dim(),
                    });
                }
                (
                    n,
                    g.clone(),
                    TKind::Sampled {
                        grid: grid.clone(),
                        values: t.clone(),
                    },
                    format!("tabulated T on [{}, {}], N = {n}", grid[0], grid[grid.len() - 1]),
                )
            }
        };
        Ok(Self {
            family,
            dim,
            g,
            kind,
            description,
        })
    }

    pub fn scalar_hermite() -> Self {
        Self::new(Family::ScalarHermite).expect("always valid")
    }

    pub fn hermite_a(a: CMatrix) -> Self {
        Self::new(Family::HermiteA { a }).expect("always valid")
    }

    pub fn hermite_b(b: CMatrix) -> Self {
        Self::new(Family::HermiteB { b }).expect("always valid")
    }

    pub fn freud_a(a: CMatrix) -> Self {
        Self::new(Family::FreudA { a }).expect("always valid")
    }

    pub fn freud_b(b: CMatrix) -> Self {
        Self::new(Family::FreudB { b }).expect("always valid")
    }

    pub fn poly_u(a1: CMatrix, a2: CMatrix) -> Result<Self> {
        Self::new(Family::PolyU { a1, a2 })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(serde_json::from_str(s)?)
    }

    /// Default parameters per family: the shift `L` with unit entries for the
    /// one-matrix families (zero when `dim = 1`), and the `4 × 4` pair
    /// with all free entries equal to one for `poly-u`.
    pub fn builtin(name: &str, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(MoprlError::InvalidArgument("dimension must be at least 1".into()));
        }
        let l = shift(dim);
        match name {
            "scalar-hermite" if dim == 1 => Ok(Self::scalar_hermite()),
            "scalar-hermite" => Err(MoprlError::InvalidArgument("scalar-hermite has N = 1".into())),
            "hermite-a" => Ok(Self::hermite_a(l)),
            "hermite-b" => Ok(Self::hermite_b(l)),
            "freud-a" => Ok(Self::freud_a(l)),
            "freud-b" => Ok(Self::freud_b(l)),
            "poly-u" if dim == 4 => {
                let mut a2 = CMatrix::zeros(4);
                a2[(0, 3)] = c64(1.0, 0.0);
                a2[(1, 3)] = c64(1.0, 0.0);
                let a1 = CMatrix::from_fn(4, |i, j| if j > i { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
                Self::poly_u(a1, a2)
            }
            "poly-u" => Err(MoprlError::InvalidArgument("built-in poly-u parameters have N = 4".into())),
            "custom" => Err(MoprlError::InvalidArgument("custom weights need a parameter file".into())),
            other => Err(MoprlError::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `G` with `T′ = G T`.
    pub fn g_poly(&self) -> &MatPoly {
        &self.g
    }

    pub fn envelope(&self) -> Envelope {
        match &self.kind {
            TKind::Exponential { q_degree: 4, .. } => Envelope::Quartic,
            TKind::Exponential { .. } | TKind::Polynomial { .. } => Envelope::Gaussian,
            TKind::Sampled { grid, .. } => Envelope::Support {
                lo: grid[0],
                hi: grid[grid.len() - 1],
            },
        }
    }

    /// True when every parameter matrix is real, so the ledger must be real too.
    pub fn has_real_parameters(&self) -> bool {
        let mats: Vec<&CMatrix> = match &self.family {
            Family::ScalarHermite => vec![],
            Family::HermiteA { a } | Family::FreudA { a } => vec![a],
            Family::HermiteB { b } | Family::FreudB { b } => vec![b],
            Family::PolyU { a1, a2 } => vec![a1, a2],
            Family::Custom { t, .. } => t.iter().collect(),
        };
        mats.iter().all(|m| m.max_imag() == 0.0)
    }

    /// True when `W(−x) = W(x)` structurally, so odd moments vanish.
    pub fn is_even(&self) -> bool {
        matches!(self.family, Family::ScalarHermite | Family::HermiteB { .. } | Family::FreudB { .. })
    }

    /// Entire extension of `T`. Tabulated weights only support real `z`.
    pub fn t_eval(&self, z: Complex64) -> Result<CMatrix> {
        match &self.kind {
            TKind::Exponential { q_degree, exp, power } => {
                let q = z.powi(*q_degree as i32) * 0.5;
                Ok(exp.eval(z.powi(*power)).scale((-q).exp()))
            }
            TKind::Polynomial { u } => Ok(u.eval(z).scale((-(z * z) * 0.5).exp())),
            TKind::Sampled { grid, values } => {
                if z.im != 0.0 {
                    return Err(MoprlError::InvalidArgument(
                        "tabulated T can only be evaluated on the real line".into(),
                    ));
                }
                Ok(interpolate(grid, values, z.re))
            }
        }
    }

    pub fn t_eval_re(&self, x: f64) -> CMatrix {
        self.t_eval(c64(x, 0.0)).expect("real evaluation always succeeds")
    }

    /// `W(x) = T(x) T*(x)` on the real line.
    pub fn weight_eval(&self, x: f64) -> CMatrix {
        let t = self.t_eval_re(x);
        &t * &t.adjoint()
    }

    /// `W′(x) = G(x)W(x) + W(x)G*(x)`.
    pub fn weight_derivative(&self, x: f64) -> CMatrix {
        let w = self.weight_eval(x);
        let g = self.g.eval_re(x);
        &(&g * &w) + &(&w * &g.adjoint())
    }
}

fn interpolate(grid: &[f64], values: &[CMatrix], x: f64) -> CMatrix {
    let n = values[0].dim();
    if x < grid[0] || x > grid[grid.len() - 1] {
        return CMatrix::zeros(n);
    }
    let k = match grid.partition_point(|&g| g <= x) {
        0 => 0,
        p if p >= grid.len() => grid.len() - 2,
        p => p - 1,
    };
    let t = (x - grid[k]) / (grid[k + 1] - grid[k]);
    &values[k].scale_re(1.0 - t) + &values[k + 1].scale_re(t)
}

/// `G(x) = A₁ + (2A₂ − A₁² − I)x − A₂A₁x²` for `U = I + A₁x + A₂x²` with `q = x²/2`.
fn poly_u_g(a1: &CMatrix, a2: &CMatrix) -> MatPoly {
    let n = a1.dim();
    let lin = &(&a2.scale_re(2.0) - &(a1 * a1)) - &CMatrix::identity(n);
    let quad = -(a2 * a1);
    MatPoly::from_coeffs(vec![a1.clone(), lin, quad])
}

/// Checks, in exact floating arithmetic, the relations making `U = I + A₁x + A₂x²`
/// invertible with polynomial inverse: `A₂A₁ + A₁A₂ = A₁³`, `A₂(A₁² − A₂) = 0`,
/// together with the consequences `A₂A₁A₂ = 0` and `A₂A₁² = A₁²A₂`.
pub fn poly_u_validate(a1: &CMatrix, a2: &CMatrix) -> bool {
    if a1.dim() != a2.dim() {
        return false;
    }
    let a1sq = a1 * a1;
    let r1 = &(&(a2 * a1) + &(a1 * a2)) - &(&a1sq * a1);
    let r2 = a2 * &(&a1sq - a2);
    let r3 = &(a2 * a1) * a2;
    let r4 = &(a2 * &a1sq) - &(&a1sq * a2);
    [r1, r2, r3, r4].iter().all(CMatrix::is_zero)
}

/// Result of probing `W(x)W(y) = W(y)W(x)` on a grid.
#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub max_residual: f64,
    /// Candidate for reduction to scalar weights.
    pub commutes: bool,
}

pub fn commutativity_probe(spec: &WeightSpec, grid: &[f64]) -> Result<CommutativityReport> {
    if grid.is_empty() {
        return Err(MoprlError::InvalidArgument("commutativity grid is empty".into()));
    }
    let ws: Vec<CMatrix> = grid.iter().map(|&x| spec.weight_eval(x)).collect();
    let mut max_residual = 0.0f64;
    let mut scale = 0.0f64;
    for (i, wx) in ws.iter().enumerate() {
        for wy in &ws[i + 1..] {
            max_residual = max_residual.max(CMatrix::commutator(wx, wy).max_abs());
            scale = scale.max(wx.max_abs() * wy.max_abs());
        }
    }
    Ok(CommutativityReport {
        max_residual,
        commutes: max_residual <= 1e-14 * scale.max(1.0),
    })
}

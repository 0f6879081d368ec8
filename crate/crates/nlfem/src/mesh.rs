//! Partitions of Ω ∪ Ω_I = [-1-λ, 1+λ]: uniform spacing ĥ = 2/N inside
//! Ω = (-1, 1), geometric coarsening with exponent p in the interaction
//! layer, hat-basis evaluation and dof classification.

use crate::error::{Error, Result};
use std::io::Write;
use std::sync::Arc;

/// A 1-D partition of [-1-λ, 1+λ].
///
/// Node storage is a single strictly increasing array; array index `K + i`
/// corresponds to the paper-style index `i` running from `-K` to `N + K`,
/// so `nodes[K] = -1` and `nodes[K + N] = 1` exactly. Free degrees of
/// freedom are the interior nodes of Ω excluding ±1; every other node is
/// constrained to zero by the volume constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    nodes: Vec<f64>,
    n_interior: usize,
    k_exterior: usize,
    h_hat: f64,
    p: f64,
    lambda: f64,
}

/// Build the partition: interior nodes x_i = -1 + i ĥ for i = 0..N with
/// ĥ = 2/N, exterior nodes generated outward by
/// x_i = x_{i-1} + ĥ ((x_{i-1} - x̂)/(x_N - x̂))^p with x̂ = 0, generating
/// while the node stays below 1+λ and then placing the final node at
/// exactly 1+λ; the left side mirrors the right.
pub fn build_mesh(n: usize, lambda: f64, p: f64) -> Result<Mesh1D> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "mesh requires at least 2 interior subintervals, got {n}"
        )));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "interaction radius must be positive, got {lambda}"
        )));
    }
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "coarsening exponent must be nonnegative, got {p}"
        )));
    }

    let h_hat = 2.0 / n as f64;
    let outer = 1.0 + lambda;

    // Right exterior: recurrence until the generated node reaches 1+λ, then
    // snap the boundary node to exactly 1+λ.
    let mut right = Vec::new();
    let mut x = 1.0f64;
    loop {
        let next = x + h_hat * x.powf(p);
        if next >= outer {
            break;
        }
        right.push(next);
        x = next;
    }
    right.push(outer);
    let k_exterior = right.len();

    let mut nodes = Vec::with_capacity(n + 1 + 2 * k_exterior);
    // Left exterior = mirror image of the right exterior.
    for &v in right.iter().rev() {
        nodes.push(-v);
    }
    // Interior, with the endpoints pinned exactly.
    nodes.push(-1.0);
    for i in 1..n {
        nodes.push(-1.0 + i as f64 * h_hat);
    }
    nodes.push(1.0);
    nodes.extend_from_slice(&right);

    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));

    Ok(Mesh1D {
        nodes,
        n_interior: n,
        k_exterior,
        h_hat,
        p,
        lambda,
    })
}

impl Mesh1D {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, idx: usize) -> f64 {
        self.nodes[idx]
    }

    /// N: number of uniform subintervals inside Ω.
    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    /// K: number of exterior nodes on each side.
    pub fn exterior_per_side(&self) -> usize {
        self.k_exterior
    }

    pub fn h_hat(&self) -> f64 {
        self.h_hat
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Array index of the paper-style node x_0 = -1.
    pub fn interior_offset(&self) -> usize {
        self.k_exterior
    }

    /// Left end of the computational domain, exactly -1-λ.
    pub fn domain_lo(&self) -> f64 {
        self.nodes[0]
    }

    /// Right end of the computational domain, exactly 1+λ.
    pub fn domain_hi(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Number of free degrees of freedom (interior nodes of Ω minus ±1).
    pub fn n_free(&self) -> usize {
        self.n_interior - 1
    }

    /// Array node index of free dof `a` (a in 0..N-1 maps to x_{a+1}).
    pub fn free_node_index(&self, a: usize) -> usize {
        debug_assert!(a < self.n_free());
        self.k_exterior + 1 + a
    }

    /// Whether node index `idx` is a constrained dof (exterior, or ±1).
    pub fn is_constrained(&self, idx: usize) -> bool {
        idx <= self.k_exterior || idx >= self.k_exterior + self.n_interior
    }

    /// Largest element diameter h = max |x_{i+1} - x_i|.
    pub fn max_element_width(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Index e of the element [x_e, x_{e+1}] containing x; ties at a node go
    /// to the element on the right, except at the last node.
    pub fn element_of(&self, x: f64) -> Result<usize> {
        if x < self.domain_lo() || x > self.domain_hi() {
            return Err(Error::Domain(format!(
                "point {x} outside the computational domain [{}, {}]",
                self.domain_lo(),
                self.domain_hi()
            )));
        }
        let e = match self
            .nodes
            .binary_search_by(|v| v.partial_cmp(&x).unwrap())
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        Ok(e.min(self.nodes.len() - 2))
    }

    /// Piecewise-linear nodal basis function: 1 at x_j, 0 at every other
    /// node, linear on the two adjacent elements and 0 outside them.
    pub fn hat_eval(&self, j: usize, x: f64) -> Result<f64> {
        if j >= self.nodes.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.nodes.len(),
            });
        }
        let xj = self.nodes[j];
        if j > 0 {
            let xl = self.nodes[j - 1];
            if x >= xl && x <= xj {
                if x == xj {
                    return Ok(1.0);
                }
                return Ok((x - xl) / (xj - xl));
            }
        }
        if j + 1 < self.nodes.len() {
            let xr = self.nodes[j + 1];
            if x >= xj && x <= xr {
                if x == xj {
                    return Ok(1.0);
                }
                return Ok((xr - x) / (xr - xj));
            }
        }
        if x == xj {
            return Ok(1.0);
        }
        Ok(0.0)
    }

    /// Hat value assuming x lies in element `e`; cheap path for quadrature
    /// loops that already know the element.
    #[inline]
    pub(crate) fn hat_in_element(&self, j: usize, e: usize, x: f64) -> f64 {
        if e + 1 == j {
            (x - self.nodes[e]) / (self.nodes[e + 1] - self.nodes[e])
        } else if e == j {
            (self.nodes[e + 1] - x) / (self.nodes[e + 1] - self.nodes[e])
        } else {
            0.0
        }
    }

    /// Dump node coordinates, one full-precision value per line.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "x")?;
        for x in &self.nodes {
            writeln!(w, "{x:.16e}")?;
        }
        Ok(())
    }
}

/// A continuous piecewise-linear function given by nodal coefficients on a
/// mesh; coefficients at constrained dofs are zero.
#[derive(Debug, Clone)]
pub struct FEFunction {
    mesh: Arc<Mesh1D>,
    coeffs: Vec<f64>,
}

impl FEFunction {
    /// Wrap a full coefficient vector; rejects nonzero values at constrained
    /// dofs and length mismatches.
    pub fn new(mesh: Arc<Mesh1D>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != mesh.len() {
            return Err(Error::MeshMismatch(format!(
                "coefficient vector has length {}, mesh has {} nodes",
                coeffs.len(),
                mesh.len()
            )));
        }
        for (i, &c) in coeffs.iter().enumerate() {
            if mesh.is_constrained(i) && c != 0.0 {
                return Err(Error::Domain(format!(
                    "constrained dof {i} must be zero, got {c}"
                )));
            }
        }
        Ok(Self { mesh, coeffs })
    }

    pub fn zeros(mesh: Arc<Mesh1D>) -> Self {
        let n = mesh.len();
        Self {
            mesh,
            coeffs: vec![0.0; n],
        }
    }

    /// Build from values at the free dofs only; constrained dofs get zero.
    pub fn from_free(mesh: Arc<Mesh1D>, free: &[f64]) -> Result<Self> {
        if free.len() != mesh.n_free() {
            return Err(Error::MeshMismatch(format!(
                "expected {} free values, got {}",
                mesh.n_free(),
                free.len()
            )));
        }
        let mut coeffs = vec![0.0; mesh.len()];
        for (a, &v) in free.iter().enumerate() {
            coeffs[mesh.free_node_index(a)] = v;
        }
        Ok(Self { mesh, coeffs })
    }

    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn free_values(&self) -> Vec<f64> {
        (0..self.mesh.n_free())
            .map(|a| self.coeffs[self.mesh.free_node_index(a)])
            .collect()
    }

    /// Evaluate the hat expansion: exact linear interpolation between the
    /// two bracketing nodes.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let e = self.mesh.element_of(x)?;
        let (xl, xr) = (self.mesh.node(e), self.mesh.node(e + 1));
        let t = (x - xl) / (xr - xl);
        Ok(self.coeffs[e] * (1.0 - t) + self.coeffs[e + 1] * t)
    }
}

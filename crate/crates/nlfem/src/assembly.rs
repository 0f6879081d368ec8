//! Assembly of the dense nonlocal stiffness matrix and load vector, volume
//! constraints, Cholesky solve, the discrete bilinear form, and the
//! coarsening-error monitor.
//!
//! Entry (i, j) of the stiffness matrix is
//! (c/2) ∫∫ (φ_j(y) - φ_j(x)) (φ_i(y) - φ_i(x)) / |y-x|^{1+2s} dy dx
//! with the inner integral truncated to (x-λ, x+λ). The integrand vanishes
//! unless x or y lies in a hat support, which restricts the outer range to
//! the supports dilated by λ and reduces the inner integral to the support
//! elements plus (for pairs whose hats share an element) a far-field tail
//! φ_i(x) φ_j(x) ∫ |y-x|^{-1-2s} dy integrated piecewise over the actual
//! mesh, so exterior coarsening enters the discrete operator exactly as in
//! the mesh-subinterval composite rule.

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::mesh::{FEFunction, Mesh1D};
use crate::metrics;
use crate::par::par_map;
use crate::quadrature::{adaptive_outer_split, gauss_on, singular, QuadConfig};
use std::io::Write;
use std::sync::Arc;

/// Dense symmetric matrix with full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Store v at (i, j) and (j, i).
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// vᵀ A w.
    pub fn quadratic_form(&self, v: &[f64], w: &[f64]) -> f64 {
        let aw = self.matvec(w);
        v.iter().zip(&aw).map(|(a, b)| a * b).sum()
    }

    pub fn is_symmetric_exact(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.data[i * self.n + j] != self.data[j * self.n + i] {
                    return false;
                }
            }
        }
        true
    }

    /// Lower Cholesky factor; fails with the 1-based order of the offending
    /// leading minor.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        let n = self.n;
        let mut l = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::NotPositiveDefinite { minor: i + 1 });
                    }
                    l[i * n + j] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(CholeskyFactor { n, l })
    }

    /// Row-major CSV dump at full precision.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:.16e}", self.get(i, j)))
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Lower triangular Cholesky factor L with A = L Lᵀ.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    n: usize,
    l: Vec<f64>,
}

impl CholeskyFactor {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }
}

/// The discrete volume-constrained system over the free dofs.
#[derive(Debug, Clone)]
pub struct NonlocalSystem {
    pub matrix: SymMatrix,
    pub load: Vec<f64>,
    mesh: Arc<Mesh1D>,
    spec: KernelSpec,
}

impl NonlocalSystem {
    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }
}

/// Assembly switches.
#[derive(Debug, Clone, Copy)]
pub struct AssemblyOptions {
    /// Reuse one stencil entry per node distance on globally uniform (p = 0)
    /// meshes. Validated against direct assembly to 1e-8 relative; off by
    /// default.
    pub toeplitz: bool,
    /// Reuse entries across the x -> -x mirror symmetry of the mesh.
    pub use_mirror_symmetry: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        Self {
            toeplitz: false,
            use_mirror_symmetry: true,
        }
    }
}

/// Assemble the stiffness matrix over free dofs with default options.
pub fn assemble_stiffness(mesh: &Mesh1D, spec: &KernelSpec, cfg: &QuadConfig) -> Result<SymMatrix> {
    assemble_stiffness_with(mesh, spec, cfg, &AssemblyOptions::default())
}

pub fn assemble_stiffness_with(
    mesh: &Mesh1D,
    spec: &KernelSpec,
    cfg: &QuadConfig,
    opts: &AssemblyOptions,
) -> Result<SymMatrix> {
    cfg.validate()?;
    if (mesh.lambda() - spec.lambda()).abs() > 1e-14 * spec.lambda() {
        return Err(Error::MeshMismatch(format!(
            "mesh lambda {} != kernel lambda {}",
            mesh.lambda(),
            spec.lambda()
        )));
    }
    if opts.toeplitz && mesh.p() != 0.0 {
        return Err(Error::Domain(
            "translation-invariant caching requires a globally uniform mesh (p = 0)".into(),
        ));
    }

    let n_free = mesh.n_free();
    let big_n = mesh.n_interior();
    let mut matrix = SymMatrix::zeros(n_free);

    if opts.toeplitz {
        // One representative pair per node distance, taken from the middle
        // of the grid; reused across all translates.
        let band = reach_band(mesh, spec);
        let mut stencil = vec![0.0f64; band + 1];
        let jobs: Vec<usize> = (0..=band.min(big_n - 2)).collect();
        let values = par_map(jobs.clone(), |d| {
            let a = ((big_n - d) / 2).clamp(1, big_n - 1 - d);
            pair_entry(mesh, spec, cfg, a, a + d)
        });
        for (d, v) in jobs.into_iter().zip(values) {
            stencil[d] = v.map_err(|e| Error::Assembly {
                i: 0,
                j: d,
                source: Box::new(e),
            })?;
        }
        for a in 1..big_n {
            for b in a..big_n {
                if b - a <= band {
                    matrix.set_sym(a - 1, b - 1, stencil[b - a]);
                }
            }
        }
        return Ok(matrix);
    }

    // Canonical pair list: paper indices 1 <= a <= b <= N-1 within kernel
    // reach; with mirror reuse only pairs with a + b <= N are computed and
    // the reflected pair (N-b, N-a) receives the same value.
    let mirror = opts.use_mirror_symmetry;
    let mut pairs = Vec::new();
    for a in 1..big_n {
        for b in a..big_n {
            if mirror && a + b > big_n {
                continue;
            }
            if !within_reach(mesh, spec, a, b) {
                continue;
            }
            pairs.push((a, b));
        }
    }

    let values = par_map(pairs.clone(), |(a, b)| pair_entry(mesh, spec, cfg, a, b));
    for ((a, b), v) in pairs.into_iter().zip(values) {
        let v = v.map_err(|e| Error::Assembly {
            i: a - 1,
            j: b - 1,
            source: Box::new(e),
        })?;
        matrix.set_sym(a - 1, b - 1, v);
        if mirror {
            matrix.set_sym(big_n - b - 1, big_n - a - 1, v);
        }
    }
    Ok(matrix)
}

/// Largest node distance |b - a| that the truncated kernel can couple.
fn reach_band(mesh: &Mesh1D, spec: &KernelSpec) -> usize {
    ((spec.lambda() / mesh.h_hat()).floor() as usize).saturating_add(2)
}

/// Supports of φ_a and φ_b are closer than λ.
fn within_reach(mesh: &Mesh1D, spec: &KernelSpec, a: usize, b: usize) -> bool {
    let off = mesh.interior_offset();
    let (lo, hi) = (off + a.min(b), off + a.max(b));
    if hi - lo <= 2 {
        return true;
    }
    let gap = mesh.node(hi - 1) - mesh.node(lo + 1);
    gap < spec.lambda()
}

/// One stiffness entry for free dofs with paper indices a <= b, including
/// the c/2 prefactor.
fn pair_entry(mesh: &Mesh1D, spec: &KernelSpec, cfg: &QuadConfig, a: usize, b: usize) -> Result<f64> {
    let off = mesh.interior_offset();
    let ni = off + a;
    let nj = off + b;
    let lambda = spec.lambda();
    let exponent = spec.exponent();
    let npts = cfg.inner_points;

    let si = (mesh.node(ni - 1), mesh.node(ni + 1));
    let sj = (mesh.node(nj - 1), mesh.node(nj + 1));
    let overlapping = nj <= ni + 1;
    let two_s = exponent - 1.0;

    // Near elements: supports of both hats, deduplicated.
    let mut near: Vec<usize> = vec![ni - 1, ni, nj - 1, nj];
    near.sort_unstable();
    near.dedup();
    let near: Vec<(f64, f64, usize)> = near
        .into_iter()
        .map(|e| (mesh.node(e), mesh.node(e + 1), e))
        .collect();

    let inner = |x: f64| -> f64 {
        let phi_i_x = mesh.hat_eval(ni, x).unwrap_or(0.0);
        let phi_j_x = mesh.hat_eval(nj, x).unwrap_or(0.0);
        let reach_lo = x - lambda;
        let reach_hi = x + lambda;

        // Support pieces carry all hat variation; both hat differences are
        // linear per piece, so each piece integrates in closed form, exact
        // at and next to the singular point.
        let mut acc = 0.0;
        for &(e_lo, e_hi, e) in &near {
            let u = e_lo.max(reach_lo);
            let v = e_hi.min(reach_hi);
            if v <= u {
                continue;
            }
            let ai = crate::quadrature::hat_slope(mesh, ni, e);
            let aj = crate::quadrature::hat_slope(mesh, nj, e);
            if x > u && x < v {
                acc += singular::pair_hat_piece(ai, 0.0, aj, 0.0, 0.0, v - x, two_s)
                    + singular::pair_hat_piece(-ai, 0.0, -aj, 0.0, 0.0, x - u, two_s);
            } else if v <= x {
                let dist = x - v;
                let (ci, cj) = if dist == 0.0 {
                    (0.0, 0.0)
                } else {
                    (
                        mesh.hat_in_element(ni, e, u) + ai * (x - u) - phi_i_x,
                        mesh.hat_in_element(nj, e, u) + aj * (x - u) - phi_j_x,
                    )
                };
                acc += singular::pair_hat_piece(-ai, ci, -aj, cj, dist, x - u, two_s);
            } else {
                let dist = u - x;
                let (ci, cj) = if dist == 0.0 {
                    (0.0, 0.0)
                } else {
                    (
                        mesh.hat_in_element(ni, e, u) + ai * (x - u) - phi_i_x,
                        mesh.hat_in_element(nj, e, u) + aj * (x - u) - phi_j_x,
                    )
                };
                acc += singular::pair_hat_piece(ai, ci, aj, cj, dist, v - x, two_s);
            }
        }

        // Far-field tail: both hats vanish there, leaving the constant
        // φ_i(x) φ_j(x) against the kernel, integrated with the Gauss rule
        // over the mesh pieces of the remaining interaction window (this is
        // where exterior coarsening enters the discrete operator). Pieces
        // too close to x for the rule switch to the exact power integral.
        let t = phi_i_x * phi_j_x;
        if t != 0.0 {
            let k = |y: f64| (y - x).abs().powf(-exponent);
            let mut tail = 0.0;
            let zl = (reach_lo.max(mesh.domain_lo()), si.0);
            let zr = (sj.1, reach_hi.min(mesh.domain_hi()));
            for &(z_lo, z_hi) in &[zl, zr] {
                if z_hi <= z_lo {
                    continue;
                }
                let nodes = mesh.nodes();
                let mut piece_lo = z_lo;
                let first = nodes.partition_point(|&v| v <= z_lo);
                for &node in nodes[first..].iter().chain(std::iter::once(&z_hi)) {
                    let piece_hi = node.min(z_hi);
                    if piece_hi <= piece_lo {
                        break;
                    }
                    let width = piece_hi - piece_lo;
                    let dist = if piece_hi <= x { x - piece_hi } else { piece_lo - x };
                    if dist < 4.0 * width {
                        tail += singular::power_int_0(dist, dist + width, two_s);
                    } else {
                        tail += gauss_on(&k, piece_lo, piece_hi, npts);
                    }
                    if piece_hi >= z_hi {
                        break;
                    }
                    piece_lo = piece_hi;
                }
            }
            acc += t * tail;
        }
        acc
    };

    let support_nodes = [si.0, mesh.node(ni), si.1, sj.0, mesh.node(nj), sj.1];
    let mut breaks: Vec<f64> = Vec::with_capacity(24);
    breaks.extend_from_slice(&support_nodes);
    for &v in &support_nodes {
        breaks.push(v - lambda);
        breaks.push(v + lambda);
    }

    let half_c = 0.5 * spec.normalization();
    if overlapping {
        let lo = (si.0 - lambda).max(mesh.domain_lo());
        let hi = (sj.1 + lambda).min(mesh.domain_hi());
        let (v, _) = adaptive_outer_split(inner, lo, hi, &breaks, cfg)?;
        Ok(half_c * v)
    } else {
        let (v1, _) = adaptive_outer_split(&inner, si.0, si.1, &breaks, cfg)?;
        let (v2, _) = adaptive_outer_split(&inner, sj.0, sj.1, &breaks, cfg)?;
        Ok(half_c * (v1 + v2))
    }
}

/// Load vector b_i = ∫_Ω f φ_i, composite Gauss per support element.
pub fn assemble_load<F>(mesh: &Mesh1D, f: F, cfg: &QuadConfig) -> Vec<f64>
where
    F: Fn(f64) -> f64,
{
    let big_n = mesh.n_interior();
    let off = mesh.interior_offset();
    let npts = cfg.inner_points;
    (1..big_n)
        .map(|a| {
            let j = off + a;
            let mut acc = 0.0;
            for e in [j - 1, j] {
                let g = |y: f64| f(y) * mesh.hat_in_element(j, e, y);
                acc += gauss_on(&g, mesh.node(e), mesh.node(e + 1), npts);
            }
            acc
        })
        .collect()
}

/// Assemble matrix and load together.
pub fn assemble_system<F>(
    mesh: &Arc<Mesh1D>,
    spec: &KernelSpec,
    cfg: &QuadConfig,
    f: F,
) -> Result<NonlocalSystem>
where
    F: Fn(f64) -> f64,
{
    assemble_system_with(mesh, spec, cfg, f, &AssemblyOptions::default())
}

pub fn assemble_system_with<F>(
    mesh: &Arc<Mesh1D>,
    spec: &KernelSpec,
    cfg: &QuadConfig,
    f: F,
    opts: &AssemblyOptions,
) -> Result<NonlocalSystem>
where
    F: Fn(f64) -> f64,
{
    let matrix = assemble_stiffness_with(mesh, spec, cfg, opts)?;
    let load = assemble_load(mesh, &f, cfg);
    Ok(NonlocalSystem {
        matrix,
        load,
        mesh: mesh.clone(),
        spec: *spec,
    })
}

/// Cholesky solve of the free-dof system; the result carries zeros at all
/// constrained dofs. The residual must satisfy ‖AU - b‖∞ ≤ 1e-10 ‖b‖∞.
pub fn solve(system: &NonlocalSystem) -> Result<FEFunction> {
    let b = &system.load;
    if b.iter().all(|&v| v == 0.0) {
        return Ok(FEFunction::zeros(system.mesh.clone()));
    }
    let factor = system.matrix.cholesky()?;
    let u = factor.solve(b);
    let residual = system
        .matrix
        .matvec(&u)
        .iter()
        .zip(b)
        .map(|(au, bv)| (au - bv).abs())
        .fold(0.0f64, f64::max);
    let b_inf = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tolerance = 1e-10 * b_inf;
    if residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }
    FEFunction::from_free(system.mesh.clone(), &u)
}

/// Discrete bilinear form vᵀ A w restricted to free dofs.
pub fn bilinear_apply(system: &NonlocalSystem, v: &FEFunction, w: &FEFunction) -> Result<f64> {
    if v.mesh().as_ref() != system.mesh.as_ref() || w.mesh().as_ref() != system.mesh.as_ref() {
        return Err(Error::MeshMismatch(
            "bilinear form arguments must live on the system mesh".into(),
        ));
    }
    Ok(system
        .matrix
        .quadratic_form(&v.free_values(), &w.free_values()))
}

/// Coarsening-error monitor: ‖ũ_coarse - ũ_ref‖_{L²(Ω)} between two solves
/// that differ only in the exterior grading.
pub fn delta_a<F>(
    mesh_coarse: &Arc<Mesh1D>,
    mesh_ref: &Arc<Mesh1D>,
    spec: &KernelSpec,
    cfg: &QuadConfig,
    f: F,
) -> Result<f64>
where
    F: Fn(f64) -> f64 + Copy,
{
    if mesh_coarse.n_interior() != mesh_ref.n_interior()
        || (mesh_coarse.h_hat() - mesh_ref.h_hat()).abs() > 0.0
        || (mesh_coarse.lambda() - mesh_ref.lambda()).abs() > 0.0
    {
        return Err(Error::MeshMismatch(
            "coarsening monitor requires identical interior grids and lambda".into(),
        ));
    }
    let u_coarse = solve(&assemble_system(mesh_coarse, spec, cfg, f)?)?;
    let u_ref = solve(&assemble_system(mesh_ref, spec, cfg, f)?)?;
    metrics::l2_error_omega(&u_coarse, |x| u_ref.eval(x).unwrap(), 7)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;
    use crate::specfun::FractionalOrder;

    fn spec(s: f64, lambda: f64) -> KernelSpec {
        KernelSpec::new(1, FractionalOrder::new(s).unwrap(), lambda).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn load_vector_constant_source_gives_hat_mass() {
        let mesh = build_mesh(8, 0.5, 0.0).unwrap();
        let cfg = QuadConfig::default();
        let b = assemble_load(&mesh, |_| 1.0, &cfg);
        assert_eq!(b.len(), 7);
        for v in b {
            assert!(rel(v, 0.25) <= 1e-14);
        }
    }

    #[test]
    fn load_vector_linear_source_is_exact() {
        let mesh = build_mesh(8, 0.5, 0.0).unwrap();
        let cfg = QuadConfig::default();
        let b = assemble_load(&mesh, |x| x, &cfg);
        let off = mesh.interior_offset();
        for (a, v) in b.iter().enumerate() {
            let xi = mesh.node(off + a + 1);
            assert!(
                (v - mesh.h_hat() * xi).abs() <= 1e-15,
                "b[{a}] = {v} vs {}",
                mesh.h_hat() * xi
            );
        }
    }

    #[test]
    fn load_vector_zero_source() {
        let mesh = build_mesh(8, 0.5, 0.0).unwrap();
        let b = assemble_load(&mesh, |_| 0.0, &QuadConfig::default());
        assert!(b.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn stiffness_is_exactly_symmetric_and_spd() {
        let mesh = Arc::new(build_mesh(8, 0.5, 0.0).unwrap());
        let sp = spec(0.5, 0.5);
        let cfg = QuadConfig::default();
        let m = assemble_stiffness(&mesh, &sp, &cfg).unwrap();
        assert!(m.is_symmetric_exact());
        assert!(m.cholesky().is_ok());
    }

    #[test]
    fn far_pairs_are_zero_without_quadrature() {
        let mesh = Arc::new(build_mesh(16, 0.1, 0.0).unwrap());
        let sp = spec(0.4, 0.1);
        let cfg = QuadConfig::default();
        let m = assemble_stiffness(&mesh, &sp, &cfg).unwrap();
        // gap between supports of a and a+3 is ĥ = 0.125 > λ = 0.1
        for a in 0..m.n() {
            for b in 0..m.n() {
                if b > a + 2 {
                    assert_eq!(m.get(a, b), 0.0, "entry ({a},{b})");
                }
            }
        }
        // band entries are populated
        assert!(m.get(3, 4) != 0.0 && m.get(3, 5) != 0.0);
    }

    #[test]
    fn mirror_symmetry_matches_direct_assembly() {
        let mesh = Arc::new(build_mesh(10, 1.0, 0.5).unwrap());
        let sp = spec(0.75, 1.0);
        let cfg = QuadConfig::default();
        let direct = assemble_stiffness_with(
            &mesh,
            &sp,
            &cfg,
            &AssemblyOptions {
                use_mirror_symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        let mirrored = assemble_stiffness(&mesh, &sp, &cfg).unwrap();
        for i in 0..direct.n() {
            for j in 0..direct.n() {
                let (d, m) = (direct.get(i, j), mirrored.get(i, j));
                assert!(
                    (d - m).abs() <= 1e-10 * d.abs().max(1e-3),
                    "entry ({i},{j}): {d} vs {m}"
                );
            }
        }
    }

    #[test]
    fn toeplitz_requires_uniform_mesh_and_matches_direct() {
        let mesh = Arc::new(build_mesh(12, 4.0, 0.0).unwrap());
        let sp = spec(0.6, 4.0);
        let cfg = QuadConfig::default();
        let direct = assemble_stiffness(&mesh, &sp, &cfg).unwrap();
        let cached = assemble_stiffness_with(
            &mesh,
            &sp,
            &cfg,
            &AssemblyOptions {
                toeplitz: true,
                ..Default::default()
            },
        )
        .unwrap();
        for i in 0..direct.n() {
            for j in 0..direct.n() {
                assert!(
                    rel(cached.get(i, j), direct.get(i, j)) <= 1e-8,
                    "entry ({i},{j}): {} vs {}",
                    cached.get(i, j),
                    direct.get(i, j)
                );
            }
        }

        let graded = Arc::new(build_mesh(12, 4.0, 0.5).unwrap());
        assert!(assemble_stiffness_with(
            &graded,
            &spec(0.6, 4.0),
            &cfg,
            &AssemblyOptions {
                toeplitz: true,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn matrix_monotone_in_lambda() {
        let cfg = QuadConfig::default();
        let mesh1 = Arc::new(build_mesh(8, 1.0, 0.0).unwrap());
        let m1 = assemble_stiffness(&mesh1, &spec(0.5, 1.0), &cfg).unwrap();
        // Same interior grid, larger interaction radius.
        let mesh2 = Arc::new(build_mesh(8, 2.0, 0.0).unwrap());
        let m2 = assemble_stiffness(&mesh2, &spec(0.5, 2.0), &cfg).unwrap();
        let v: Vec<f64> = (0..m1.n()).map(|i| ((i * 37 + 11) % 17) as f64 - 8.0).collect();
        let q1 = m1.quadratic_form(&v, &v);
        let q2 = m2.quadratic_form(&v, &v);
        assert!(q2 >= q1 - 1e-9, "q1 = {q1}, q2 = {q2}");
    }

    #[test]
    fn solve_zero_load_gives_zero_function() {
        let mesh = Arc::new(build_mesh(8, 0.5, 0.0).unwrap());
        let sys = assemble_system(&mesh, &spec(0.5, 0.5), &QuadConfig::default(), |_| 0.0).unwrap();
        let u = solve(&sys).unwrap();
        assert!(u.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn solve_is_linear_in_the_source() {
        let mesh = Arc::new(build_mesh(8, 0.5, 0.0).unwrap());
        let cfg = QuadConfig::default();
        let sp = spec(0.75, 0.5);
        let u1 = solve(&assemble_system(&mesh, &sp, &cfg, |_| 1.0).unwrap()).unwrap();
        let u2 = solve(&assemble_system(&mesh, &sp, &cfg, |_| 2.0).unwrap()).unwrap();
        for (a, b) in u1.coeffs().iter().zip(u2.coeffs()) {
            assert!((2.0 * a - b).abs() <= 1e-12 * b.abs().max(1e-12));
        }
    }

    #[test]
    fn bilinear_form_symmetry_positivity_galerkin() {
        let mesh = Arc::new(build_mesh(8, 0.5, 0.0).unwrap());
        let cfg = QuadConfig::default();
        let sys = assemble_system(&mesh, &spec(0.5, 0.5), &cfg, |_| 1.0).unwrap();
        let u = solve(&sys).unwrap();

        let mk = |vals: &[f64]| FEFunction::from_free(mesh.clone(), vals).unwrap();
        let v = mk(&[1.0, -2.0, 0.5, 0.0, 3.0, -1.0, 0.25]);
        let w = mk(&[0.0, 1.0, -1.0, 2.0, 0.0, 0.5, -0.5]);

        let avw = bilinear_apply(&sys, &v, &w).unwrap();
        let awv = bilinear_apply(&sys, &w, &v).unwrap();
        assert!((avw - awv).abs() <= 1e-12 * avw.abs().max(1.0));
        assert!(bilinear_apply(&sys, &v, &v).unwrap() > 0.0);

        // Galerkin orthogonality restated discretely: a(u, w) = bᵀw
        let au_w = bilinear_apply(&sys, &u, &w).unwrap();
        let b_w: f64 = sys.load.iter().zip(&w.free_values()).map(|(a, b)| a * b).sum();
        assert!((au_w - b_w).abs() <= 1e-9 * b_w.abs().max(1e-12));
    }

    #[test]
    fn bilinear_form_rejects_foreign_mesh() {
        let mesh = Arc::new(build_mesh(8, 0.5, 0.0).unwrap());
        let other = Arc::new(build_mesh(10, 0.5, 0.0).unwrap());
        let cfg = QuadConfig::default();
        let sys = assemble_system(&mesh, &spec(0.5, 0.5), &cfg, |_| 1.0).unwrap();
        let v = FEFunction::zeros(other);
        assert!(bilinear_apply(&sys, &v, &v).is_err());
    }

    #[test]
    fn delta_a_identical_meshes_is_zero() {
        let mesh = Arc::new(build_mesh(16, 2.0, 0.5).unwrap());
        let cfg = QuadConfig::default();
        let d = delta_a(&mesh, &mesh, &spec(0.75, 2.0), &cfg, |_| 1.0).unwrap();
        assert!(d <= 1e-12, "delta_A = {d}");
    }

    #[test]
    fn delta_a_rejects_interior_mismatch() {
        let m1 = Arc::new(build_mesh(16, 2.0, 0.5).unwrap());
        let m2 = Arc::new(build_mesh(32, 2.0, 0.0).unwrap());
        let cfg = QuadConfig::default();
        assert!(delta_a(&m1, &m2, &spec(0.75, 2.0), &cfg, |_| 1.0).is_err());
    }

    #[test]
    fn cholesky_reports_leading_minor_on_indefinite_input() {
        let mut m = SymMatrix::zeros(3);
        m.set_sym(0, 0, 4.0);
        m.set_sym(1, 1, -1.0);
        m.set_sym(2, 2, 5.0);
        match m.cholesky() {
            Err(Error::NotPositiveDefinite { minor }) => assert_eq!(minor, 2),
            other => panic!("expected definiteness failure, got {other:?}"),
        }
    }

    #[test]
    fn cholesky_solves_known_system() {
        let mut m = SymMatrix::zeros(2);
        m.set_sym(0, 0, 4.0);
        m.set_sym(0, 1, 1.0);
        m.set_sym(1, 1, 3.0);
        let x = m.cholesky().unwrap().solve(&[1.0, 2.0]);
        // exact solution of [[4,1],[1,3]] x = [1,2] is [1/11, 7/11]
        assert!((x[0] - 1.0 / 11.0).abs() < 1e-14);
        assert!((x[1] - 7.0 / 11.0).abs() < 1e-14);
    }
}

//! Relative positional encodings.

use super::exact;
use super::spectral_fn::SpectralFn;
use super::token::DEFAULT_QUANT_STEP;
use super::RpeTensor;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{
    adjacency_matrix, laplacian, power_stack, rw_norm_adjacency, rw_norm_laplacian,
    spectral_apply_eigen, sym_eigen, sym_norm_adjacency, sym_norm_laplacian, DenseMatrix,
    EigenDecomposition, HermitianMatrix,
};
use serde::{Deserialize, Serialize};

/// The six common graph matrices usable directly as single-channel RPEs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    Adjacency,
    SymNormAdjacency,
    RwNormAdjacency,
    Laplacian,
    SymNormLaplacian,
    RwNormLaplacian,
}

impl MatrixKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::SymNormAdjacency => "sym_norm_adjacency",
            MatrixKind::RwNormAdjacency => "rw_norm_adjacency",
            MatrixKind::Laplacian => "laplacian",
            MatrixKind::SymNormLaplacian => "sym_norm_laplacian",
            MatrixKind::RwNormLaplacian => "rw_norm_laplacian",
        }
    }
}

fn tensor_from_matrix(m: &DenseMatrix, name: &str, quant_step: f64) -> Result<RpeTensor> {
    let n = m.rows();
    let mut values = Vec::with_capacity(n * n);
    for u in 0..n {
        values.extend_from_slice(m.row(u));
    }
    RpeTensor::new(n, 1, values, name, quant_step)
}

fn tensor_from_channels(
    mats: &[DenseMatrix],
    name: &str,
    quant_step: f64,
) -> Result<RpeTensor> {
    let k = mats.len();
    let n = mats[0].rows();
    let mut values = Vec::with_capacity(n * n * k);
    for u in 0..n {
        for v in 0..n {
            for m in mats {
                values.push(m.get(u, v));
            }
        }
    }
    RpeTensor::new(n, k, values, name, quant_step)
}

/// One of the named graph matrices as an RPE. Normalized variants
/// require an undirected graph.
pub fn rpe_matrix(g: &Graph, kind: MatrixKind) -> Result<RpeTensor> {
    let normalized = !matches!(kind, MatrixKind::Adjacency | MatrixKind::Laplacian);
    if normalized && g.directed() {
        return Err(Error::DirectedInput);
    }
    let (m, quant) = match kind {
        MatrixKind::Adjacency => (adjacency_matrix(g), 1.0),
        MatrixKind::Laplacian => (laplacian(g), 1.0),
        MatrixKind::SymNormAdjacency => (sym_norm_adjacency(g), DEFAULT_QUANT_STEP),
        MatrixKind::RwNormAdjacency => (rw_norm_adjacency(g), DEFAULT_QUANT_STEP),
        MatrixKind::SymNormLaplacian => (sym_norm_laplacian(g), DEFAULT_QUANT_STEP),
        MatrixKind::RwNormLaplacian => (rw_norm_laplacian(g), DEFAULT_QUANT_STEP),
    };
    tensor_from_matrix(&m, kind.name(), quant)
}

/// All-pairs shortest-path distances; disconnected pairs get the
/// sentinel n, which exceeds any achievable finite distance.
pub fn rpe_spd(g: &Graph) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let sentinel = n as f64;
    let mut values = Vec::with_capacity(n * n);
    for u in 0..n {
        let dist = g.bfs_distances(u);
        for v in 0..n {
            values.push(if dist[v] == usize::MAX { sentinel } else { dist[v] as f64 });
        }
    }
    RpeTensor::new(n, 1, values, "spd", 1.0)
}

/// Resistance distances RD(u,v) = L+(u,u) + L+(v,v) - 2 L+(u,v), computed
/// exactly over the rationals blockwise per component; cross-component
/// pairs get the sentinel n.
pub fn rpe_resistance(g: &Graph) -> Result<RpeTensor> {
    let rows = exact::exact_resistance(g)?;
    let n = g.n();
    let mut values = Vec::with_capacity(n * n);
    for row in rows {
        values.extend(row);
    }
    RpeTensor::new(n, 1, values, "rd", DEFAULT_QUANT_STEP)
}

/// Laplacian pseudoinverse as an RPE, exact over the rationals.
pub fn rpe_pinv_exact(g: &Graph) -> Result<RpeTensor> {
    let rows = exact::exact_pinv(g)?;
    let n = g.n();
    let mut values = Vec::with_capacity(n * n);
    for row in rows {
        values.extend(row);
    }
    RpeTensor::new(n, 1, values, "pinv", DEFAULT_QUANT_STEP)
}

/// Kernel or point-cloud distance form of a spectral function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralForm {
    Kernel,
    Distance,
}

/// Spectral kernel K^f = sum of f(lambda_i) z_i z_i^T over nonzero
/// eigenvalues of L, or the induced distance
/// d^f(u,v) = sqrt(K(u,u) + K(v,v) - 2 K(u,v)).
pub fn rpe_spectral(g: &Graph, f: SpectralFn, form: SpectralForm) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let eig = sym_eigen(&laplacian(g))?;
    spectral_from_eigen(&eig, f, form, g.n(), "l")
}

/// Same as `rpe_spectral` but over the symmetrically normalized
/// Laplacian spectrum.
pub fn rpe_spectral_normalized(g: &Graph, f: SpectralFn, form: SpectralForm) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let eig = sym_eigen(&sym_norm_laplacian(g))?;
    spectral_from_eigen(&eig, f, form, g.n(), "nl")
}

fn spectral_from_eigen(
    eig: &EigenDecomposition,
    f: SpectralFn,
    form: SpectralForm,
    n: usize,
    base: &str,
) -> Result<RpeTensor> {
    let kernel = spectral_apply_eigen(eig, |x| f.eval(x), true)?;
    let name = match form {
        SpectralForm::Kernel => format!("kernel[{base},{}]", f.name()),
        SpectralForm::Distance => format!("dist[{base},{}]", f.name()),
    };
    match form {
        SpectralForm::Kernel => tensor_from_matrix(&kernel, &name, DEFAULT_QUANT_STEP),
        SpectralForm::Distance => {
            let mut values = Vec::with_capacity(n * n);
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        values.push(0.0);
                        continue;
                    }
                    let sq = kernel.get(u, u) + kernel.get(v, v) - 2.0 * kernel.get(u, v);
                    if sq < -1e-9 {
                        return Err(Error::NegativeSquaredDistance { value: sq, u, v });
                    }
                    values.push(sq.max(0.0).sqrt());
                }
            }
            RpeTensor::new(n, 1, values, &name, DEFAULT_QUANT_STEP)
        }
    }
}

/// Heat kernels H^(t) for each time, one channel per t.
pub fn rpe_heat_kernel(g: &Graph, times: &[f64]) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    for &t in times {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidFamily(format!("heat kernel time must be positive: {t}")));
        }
    }
    let eig = sym_eigen(&laplacian(g))?;
    let mats: Vec<DenseMatrix> = times
        .iter()
        .map(|&t| spectral_apply_eigen(&eig, |x| (-t * x).exp(), true))
        .collect::<Result<_>>()?;
    let label = times.iter().map(|t| format!("{t}")).collect::<Vec<_>>().join(",");
    tensor_from_channels(&mats, &format!("heat[{label}]"), DEFAULT_QUANT_STEP)
}

/// Base matrix for power stacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerBase {
    Laplacian,
    SymNormAdjacency,
    Adjacency,
    /// Stacked heat kernels H^(0..k). Channel 0 is the reconstruction
    /// over nonzero eigenvalues by default; `identity_channel0` swaps in
    /// a literal identity matrix instead.
    Heat { identity_channel0: bool },
}

impl PowerBase {
    pub fn name(&self) -> &'static str {
        match self {
            PowerBase::Laplacian => "lap",
            PowerBase::SymNormAdjacency => "sym_adj",
            PowerBase::Adjacency => "adj",
            PowerBase::Heat { identity_channel0: false } => "heat",
            PowerBase::Heat { identity_channel0: true } => "heat_id",
        }
    }
}

/// Stack of matrix powers (or heat kernels) as a (k_max + 1)-channel RPE.
pub fn rpe_power_stack(g: &Graph, base: PowerBase, k_max: usize) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let name = format!("stack[{},{}]", base.name(), k_max);
    let mats: Vec<DenseMatrix> = match base {
        PowerBase::Laplacian => power_stack(&laplacian(g), k_max)?,
        PowerBase::SymNormAdjacency => power_stack(&sym_norm_adjacency(g), k_max)?,
        PowerBase::Adjacency => power_stack(&adjacency_matrix(g), k_max)?,
        PowerBase::Heat { identity_channel0 } => {
            let eig = sym_eigen(&laplacian(g))?;
            let mut mats = Vec::with_capacity(k_max + 1);
            for j in 0..=k_max {
                if j == 0 && identity_channel0 {
                    mats.push(DenseMatrix::identity(g.n()));
                } else {
                    let t = j as f64;
                    mats.push(spectral_apply_eigen(&eig, |x| (-t * x).exp(), true)?);
                }
            }
            mats
        }
    };
    tensor_from_channels(&mats, &name, DEFAULT_QUANT_STEP)
}

/// Magnetic Laplacian of a directed graph as a two-channel (re, im) RPE.
pub fn rpe_magnetic_laplacian(g: &Graph, alpha: f64) -> Result<RpeTensor> {
    let h = magnetic_laplacian_matrix(g, alpha)?;
    tensor_from_channels(
        &[h.re.clone(), h.im.clone()],
        &format!("magnetic[{alpha}]"),
        DEFAULT_QUANT_STEP,
    )
}

/// The Hermitian magnetic Laplacian D* - T^alpha ⊙ A*, with
/// A* = (A + A^T)/2 and T^alpha_ij = exp(i 2 pi alpha sgn(A_ji - A_ij)).
pub fn magnetic_laplacian_matrix(g: &Graph, alpha: f64) -> Result<HermitianMatrix> {
    if !g.directed() {
        return Err(Error::UndirectedInput);
    }
    let n = g.n();
    let a = adjacency_matrix(g);
    let mut re = DenseMatrix::zeros(n, n);
    let mut im = DenseMatrix::zeros(n, n);
    let phase = 2.0 * std::f64::consts::PI * alpha;
    let mut degrees = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let star = 0.5 * (a.get(i, j) + a.get(j, i));
            degrees[i] += star;
            if star == 0.0 {
                continue;
            }
            let s = (a.get(j, i) - a.get(i, j)).signum();
            let s = if a.get(j, i) == a.get(i, j) { 0.0 } else { s };
            re.set(i, j, -(phase * s).cos() * star);
            im.set(i, j, -(phase * s).sin() * star);
        }
    }
    for i in 0..n {
        re.set(i, i, degrees[i]);
    }
    HermitianMatrix::new(re, im)
}

/// Directed three-channel stack (D*, A, A^T).
pub fn rpe_directed_stack(g: &Graph) -> Result<RpeTensor> {
    if !g.directed() {
        return Err(Error::UndirectedInput);
    }
    let n = g.n();
    let a = adjacency_matrix(g);
    let at = a.transpose();
    let mut dstar = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let mut deg = 0.0;
        for j in 0..n {
            deg += 0.5 * (a.get(i, j) + a.get(j, i));
        }
        dstar.set(i, i, deg);
    }
    tensor_from_channels(&[dstar, a, at], "dstack", DEFAULT_QUANT_STEP)
}

/// Elementwise relative form of the stable positional encoding:
/// V diag(f(Lambda)) V^T including the zero eigenspace, so f must be
/// finite on every eigenvalue (zero included).
pub fn rpe_rspe(g: &Graph, f: SpectralFn) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let eig = sym_eigen(&laplacian(g))?;
    let m = spectral_apply_eigen(&eig, |x| f.eval(x), false)?;
    tensor_from_matrix(&m, &format!("rspe[{}]", f.name()), DEFAULT_QUANT_STEP)
}

/// Projection matrices onto the Laplacian eigenspaces, one channel per
/// eigenvalue group (grouped within `group_tol`), ordered by ascending
/// group eigenvalue. Pad with `RpeTensor::pad_channels` before comparing
/// graphs whose group counts differ.
pub fn rpe_eigenprojections(g: &Graph, group_tol: f64) -> Result<RpeTensor> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let eig = sym_eigen(&laplacian(g))?;
    let mut groups: Vec<(f64, DenseMatrix)> = Vec::new();
    let mut idx = 0;
    while idx < n {
        let anchor = eig.eigenvalues[idx];
        let mut proj = DenseMatrix::zeros(n, n);
        let mut j = idx;
        while j < n && eig.eigenvalues[j] - anchor <= group_tol {
            proj.rank_one_update(eig.eigenvectors.column(j), 1.0);
            j += 1;
        }
        proj.symmetrize_in_place();
        groups.push((anchor, proj));
        idx = j;
    }
    let mats: Vec<DenseMatrix> = groups.into_iter().map(|(_, m)| m).collect();
    tensor_from_channels(&mats, "eigproj", DEFAULT_QUANT_STEP)
}

//! Named encodings: the registry the harness and CLI drive comparisons
//! through. Every id is parseable from a string and resolves to a
//! deterministic computation.

use crate::encode::{
    ape_compute, augment, rpe_directed_stack, rpe_eigenprojections, rpe_heat_kernel,
    rpe_magnetic_laplacian, rpe_matrix, rpe_pinv_exact, rpe_power_stack, rpe_resistance, rpe_rspe,
    rpe_spd, rpe_spectral, rpe_spectral_normalized, ApeKind, ApeMatrix, AugmentKind, MatrixKind,
    PowerBase, RpeTensor, SpectralForm, SpectralFn,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Stack depth: fixed, or resolved per pair to 2n-1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StackDepth {
    Fixed(usize),
    TwiceNMinusOne,
}

/// A named relative encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RpeId {
    Matrix(MatrixKind),
    Spd,
    Resistance,
    Pinv,
    Kernel(SpectralFn),
    Distance(SpectralFn),
    NormKernel(SpectralFn),
    Heat(Vec<f64>),
    Stack { base: PowerBase, depth: StackDepth },
    Rspe(SpectralFn),
    EigenProjections,
    Magnetic { alpha: f64 },
    DirectedStack,
    /// Symmetric pair tensor derived from an APE.
    FromApe(ApeKind),
    Augmented { base: Box<RpeId>, kind: AugmentKind },
}

impl RpeId {
    pub fn name(&self) -> String {
        match self {
            RpeId::Matrix(k) => k.name().to_string(),
            RpeId::Spd => "spd".into(),
            RpeId::Resistance => "rd".into(),
            RpeId::Pinv => "pinv".into(),
            RpeId::Kernel(f) => format!("kernel:{}", f.name()),
            RpeId::Distance(f) => format!("dist:{}", f.name()),
            RpeId::NormKernel(f) => format!("nkernel:{}", f.name()),
            RpeId::Heat(times) => format!(
                "heat:{}",
                times.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
            ),
            RpeId::Stack { base, depth } => match depth {
                StackDepth::Fixed(k) => format!("stack:{}:{k}", base.name()),
                StackDepth::TwiceNMinusOne => format!("stack:{}:2n-1", base.name()),
            },
            RpeId::Rspe(f) => format!("rspe:{}", f.name()),
            RpeId::EigenProjections => "eigproj".into(),
            RpeId::Magnetic { alpha } => format!("magnetic:{alpha}"),
            RpeId::DirectedStack => "dstack".into(),
            RpeId::FromApe(k) => format!("pair:{}", parse_free_ape_name(k)),
            RpeId::Augmented { base, kind } => {
                let suffix = match kind {
                    AugmentKind::Diagonal => "+diag",
                    AugmentKind::Combinatorial => "+comb",
                    AugmentKind::PseudoSymmetric => "+sym",
                };
                format!("{}{suffix}", base.name())
            }
        }
    }

    pub fn parse(s: &str) -> Result<RpeId> {
        let s = s.trim();
        for (suffix, kind) in [
            ("+diag", AugmentKind::Diagonal),
            ("+comb", AugmentKind::Combinatorial),
            ("+sym", AugmentKind::PseudoSymmetric),
        ] {
            if let Some(base) = s.strip_suffix(suffix) {
                return Ok(RpeId::Augmented { base: Box::new(RpeId::parse(base)?), kind });
            }
        }
        let simple = match s {
            "adjacency" | "adj" => Some(RpeId::Matrix(MatrixKind::Adjacency)),
            "sym_adj" | "sym_norm_adjacency" => Some(RpeId::Matrix(MatrixKind::SymNormAdjacency)),
            "rw_adj" | "rw_norm_adjacency" => Some(RpeId::Matrix(MatrixKind::RwNormAdjacency)),
            "laplacian" | "lap" => Some(RpeId::Matrix(MatrixKind::Laplacian)),
            "sym_lap" | "sym_norm_laplacian" => Some(RpeId::Matrix(MatrixKind::SymNormLaplacian)),
            "rw_lap" | "rw_norm_laplacian" => Some(RpeId::Matrix(MatrixKind::RwNormLaplacian)),
            "spd" => Some(RpeId::Spd),
            "rd" | "resistance" => Some(RpeId::Resistance),
            "pinv" => Some(RpeId::Pinv),
            "eigproj" => Some(RpeId::EigenProjections),
            "dstack" => Some(RpeId::DirectedStack),
            _ => None,
        };
        if let Some(id) = simple {
            return Ok(id);
        }
        let bad = || Error::UnknownName(format!("rpe '{s}'"));
        if let Some(rest) = s.strip_prefix("kernel:") {
            return SpectralFn::parse(rest).map(RpeId::Kernel).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("dist:") {
            return SpectralFn::parse(rest).map(RpeId::Distance).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("nkernel:") {
            return SpectralFn::parse(rest).map(RpeId::NormKernel).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("rspe:") {
            return SpectralFn::parse(rest).map(RpeId::Rspe).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("heat:") {
            let times: Option<Vec<f64>> = rest.split(',').map(|t| t.parse().ok()).collect();
            return times.map(RpeId::Heat).ok_or_else(bad);
        }
        if let Some(rest) = s.strip_prefix("magnetic:") {
            return rest.parse().map(|alpha| RpeId::Magnetic { alpha }).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("stack:") {
            let (base_s, depth_s) = rest.split_once(':').ok_or_else(bad)?;
            let base = match base_s {
                "lap" => PowerBase::Laplacian,
                "sym_adj" => PowerBase::SymNormAdjacency,
                "adj" => PowerBase::Adjacency,
                "heat" => PowerBase::Heat { identity_channel0: false },
                "heat_id" => PowerBase::Heat { identity_channel0: true },
                _ => return Err(bad()),
            };
            let depth = if depth_s == "2n-1" {
                StackDepth::TwiceNMinusOne
            } else {
                StackDepth::Fixed(depth_s.parse().map_err(|_| bad())?)
            };
            return Ok(RpeId::Stack { base, depth });
        }
        if let Some(rest) = s.strip_prefix("pair:") {
            return Ok(RpeId::FromApe(parse_ape_kind(rest)?));
        }
        Err(bad())
    }

    /// Computes the tensor on one graph. `pair_n` resolves depth-coupled
    /// encodings; pass the larger n of the two graphs being compared.
    pub fn compute(&self, g: &Graph, pair_n: usize) -> Result<RpeTensor> {
        match self {
            RpeId::Matrix(k) => rpe_matrix(g, *k),
            RpeId::Spd => rpe_spd(g),
            RpeId::Resistance => rpe_resistance(g),
            RpeId::Pinv => rpe_pinv_exact(g),
            RpeId::Kernel(f) => rpe_spectral(g, *f, SpectralForm::Kernel),
            RpeId::Distance(f) => rpe_spectral(g, *f, SpectralForm::Distance),
            RpeId::NormKernel(f) => rpe_spectral_normalized(g, *f, SpectralForm::Kernel),
            RpeId::Heat(times) => rpe_heat_kernel(g, times),
            RpeId::Stack { base, depth } => {
                let k = match depth {
                    StackDepth::Fixed(k) => *k,
                    StackDepth::TwiceNMinusOne => 2 * pair_n.max(1) - 1,
                };
                rpe_power_stack(g, *base, k)
            }
            RpeId::Rspe(f) => rpe_rspe(g, *f),
            RpeId::EigenProjections => rpe_eigenprojections(g, 1e-6),
            RpeId::Magnetic { alpha } => rpe_magnetic_laplacian(g, *alpha),
            RpeId::DirectedStack => rpe_directed_stack(g),
            RpeId::FromApe(kind) => {
                let phi = ape_compute(g, kind)?;
                crate::pe_map::ape_to_rpe(&phi)
            }
            RpeId::Augmented { base, kind } => {
                let inner = base.compute(g, pair_n)?;
                augment(&inner, *kind, g)
            }
        }
    }

    /// Computes the tensors of a pair, padding channel counts where the
    /// encoding's channel count is graph-dependent.
    pub fn compute_pair(&self, a: &Graph, b: &Graph) -> Result<(RpeTensor, RpeTensor)> {
        let pair_n = a.n().max(b.n());
        let ta = self.compute(a, pair_n)?;
        let tb = self.compute(b, pair_n)?;
        if ta.channels() != tb.channels() {
            let k = ta.channels().max(tb.channels());
            return Ok((ta.pad_channels(k)?, tb.pad_channels(k)?));
        }
        Ok((ta, tb))
    }
}

/// A named absolute encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ApeId {
    Plain(ApeKind),
    /// Canonical per-node readout of a relative encoding.
    Canonical(Box<RpeId>),
}

impl ApeId {
    pub fn name(&self) -> String {
        match self {
            ApeId::Plain(k) => parse_free_ape_name(k),
            ApeId::Canonical(r) => format!("canon:{}", r.name()),
        }
    }

    pub fn parse(s: &str) -> Result<ApeId> {
        if let Some(rest) = s.strip_prefix("canon:") {
            return Ok(ApeId::Canonical(Box::new(RpeId::parse(rest)?)));
        }
        Ok(ApeId::Plain(parse_ape_kind(s)?))
    }

    pub fn compute(&self, g: &Graph) -> Result<ApeMatrix> {
        match self {
            ApeId::Plain(k) => ape_compute(g, k),
            ApeId::Canonical(rpe) => {
                let psi = rpe.compute(g, g.n())?;
                Ok(crate::pe_map::rpe_to_ape_canonical(g, &psi)?.ape)
            }
        }
    }
}

fn parse_free_ape_name(k: &ApeKind) -> String {
    match k {
        ApeKind::Degree => "degree".into(),
        ApeKind::Rwse(times) => format!("rwse:{}", join_usize(times)),
        ApeKind::HkDiagSe(times) => format!("hkdiagse:{}", join_usize(times)),
    }
}

fn join_usize(times: &[usize]) -> String {
    times.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parse_times(s: &str) -> Result<Vec<usize>> {
    // "1-4" expands to 1,2,3,4; otherwise comma-separated.
    if let Some((lo, hi)) = s.split_once('-') {
        let lo: usize = lo.parse().map_err(|_| Error::UnknownName(format!("times '{s}'")))?;
        let hi: usize = hi.parse().map_err(|_| Error::UnknownName(format!("times '{s}'")))?;
        if lo == 0 || hi < lo {
            return Err(Error::UnknownName(format!("times '{s}'")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::UnknownName(format!("times '{s}'")))
        })
        .collect()
}

fn parse_ape_kind(s: &str) -> Result<ApeKind> {
    if s == "degree" {
        return Ok(ApeKind::Degree);
    }
    if let Some(rest) = s.strip_prefix("rwse:") {
        return Ok(ApeKind::Rwse(parse_times(rest)?));
    }
    if let Some(rest) = s.strip_prefix("hkdiagse:") {
        return Ok(ApeKind::HkDiagSe(parse_times(rest)?));
    }
    Err(Error::UnknownName(format!("ape '{s}'")))
}

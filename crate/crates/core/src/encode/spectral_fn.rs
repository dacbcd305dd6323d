//! Named scalar functions applied to Laplacian spectra.

use serde::{Deserialize, Serialize};

/// The scalar functions the harness and CLI expose. Keeping these as a
/// closed enum makes encodings serializable and runs reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpectralFn {
    /// x -> 1/x; undefined at 0 (rejected on zero eigenvalues).
    Recip,
    /// x -> 1/x extended by 0 at 0.
    RecipExt,
    /// x -> exp(-t x).
    Exp { t: f64 },
    /// x -> x^2.
    Square,
    /// x -> x.
    Identity,
    /// x -> 1.
    One,
}

impl SpectralFn {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            SpectralFn::Recip => 1.0 / x,
            SpectralFn::RecipExt => {
                if x == 0.0 {
                    0.0
                } else {
                    1.0 / x
                }
            }
            SpectralFn::Exp { t } => (-t * x).exp(),
            SpectralFn::Square => x * x,
            SpectralFn::Identity => x,
            SpectralFn::One => 1.0,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            SpectralFn::Recip => "recip".into(),
            SpectralFn::RecipExt => "recip0".into(),
            SpectralFn::Exp { t } => format!("exp{t}"),
            SpectralFn::Square => "square".into(),
            SpectralFn::Identity => "identity".into(),
            SpectralFn::One => "one".into(),
        }
    }

    pub fn parse(s: &str) -> Option<SpectralFn> {
        match s {
            "recip" => Some(SpectralFn::Recip),
            "recip0" => Some(SpectralFn::RecipExt),
            "square" => Some(SpectralFn::Square),
            "identity" => Some(SpectralFn::Identity),
            "one" => Some(SpectralFn::One),
            _ => s
                .strip_prefix("exp")
                .and_then(|t| t.parse::<f64>().ok())
                .map(|t| SpectralFn::Exp { t }),
        }
    }

    /// The frozen function set used by the kernel-comparison verifiers.
    pub fn frozen_set() -> Vec<SpectralFn> {
        vec![
            SpectralFn::Recip,
            SpectralFn::Exp { t: 1.0 },
            SpectralFn::Exp { t: 2.0 },
            SpectralFn::Square,
        ]
    }
}

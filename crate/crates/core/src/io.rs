//! Channel-file JSON schema.
//!
//! Complex matrices are stored row-major as `[re, im]` pairs:
//!
//! ```json
//! {
//!   "n_t": 2, "n_r": 1, "n_e": 1,
//!   "h_r": [[1.0, 0.0], [0.0, 0.0]],
//!   "h_e": [[0.0, 0.0], [1.0, 0.0]],
//!   "snr_db": 0.0,
//!   "normalize": false
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{ChannelError, ChannelPair};
use crate::{C64, CMatrix};

#[derive(Debug, Error)]
pub enum ChannelFileError {
    #[error("h_r has {got} entries, expected n_r·n_t = {want}")]
    BadLegitimateLength { got: usize, want: usize },
    #[error("h_e has {got} entries, expected n_e·n_t = {want}")]
    BadEavesdropperLength { got: usize, want: usize },
    #[error("channel file contains a non-finite entry")]
    NonFinite,
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("failed to parse channel file: {0}")]
    Parse(#[from] serde_json::Error),
}

/// On-disk channel description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub n_t: usize,
    pub n_r: usize,
    pub n_e: usize,
    /// Row-major `n_r × n_t` matrix as `[re, im]` pairs.
    pub h_r: Vec<[f64; 2]>,
    /// Row-major `n_e × n_t` matrix as `[re, im]` pairs.
    pub h_e: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snr_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

impl ChannelFile {
    pub fn from_json(text: &str) -> Result<Self, ChannelFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("channel file serializes")
    }

    pub fn validate(&self) -> Result<(), ChannelFileError> {
        if self.h_r.len() != self.n_r * self.n_t {
            return Err(ChannelFileError::BadLegitimateLength {
                got: self.h_r.len(),
                want: self.n_r * self.n_t,
            });
        }
        if self.h_e.len() != self.n_e * self.n_t {
            return Err(ChannelFileError::BadEavesdropperLength {
                got: self.h_e.len(),
                want: self.n_e * self.n_t,
            });
        }
        if self
            .h_r
            .iter()
            .chain(self.h_e.iter())
            .any(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(ChannelFileError::NonFinite);
        }
        Ok(())
    }

    pub fn to_channel_pair(&self) -> Result<ChannelPair, ChannelFileError> {
        self.validate()?;
        let to_matrix = |rows: usize, entries: &[[f64; 2]]| {
            CMatrix::from_fn(rows, self.n_t, |i, j| {
                let [re, im] = entries[i * self.n_t + j];
                C64::new(re, im)
            })
        };
        Ok(ChannelPair::new(
            to_matrix(self.n_r, &self.h_r),
            to_matrix(self.n_e, &self.h_e),
            self.normalize.unwrap_or(false),
        )?)
    }
}

//! JSON documents written by the tool. Each carries a `schema` tag that
//! changes whenever its layout does.

use serde::{Deserialize, Serialize};
use wavesing::selfsim::HurstEstimate;
use wavesing::singularity::{DetectionConfig, SingularityReport};
use wavesing::wavelet::{MotherWavelet, ScaleGrid, WaveletKind};

pub const REPORT_SCHEMA: &str = "wavesing.report/1";
pub const ESTIMATE_SCHEMA: &str = "wavesing.estimate/1";
pub const MANIFEST_SCHEMA: &str = "wavesing.manifest/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletDoc {
    pub kind: String,
    pub omega0: Option<f64>,
}

impl WaveletDoc {
    pub fn from_wavelet(w: &MotherWavelet) -> Self {
        let omega0 = match w.kind() {
            WaveletKind::Morlet { omega0 } => Some(omega0),
            _ => None,
        };
        Self {
            kind: w.name().to_string(),
            omega0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    pub a_min: f64,
    pub a_max: f64,
    pub count: usize,
    pub voices: Option<usize>,
}

impl GridDoc {
    pub fn from_grid(g: &ScaleGrid) -> Self {
        Self {
            a_min: g.a_min(),
            a_max: g.a_max(),
            count: g.len(),
            voices: g.voices(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionDoc {
    pub fine_scale_count: usize,
    pub persistence_octaves: f64,
    pub threshold_multiplier: f64,
    pub fit_octaves: f64,
    pub jump_cusp_boundary: f64,
}

impl From<&DetectionConfig> for DetectionDoc {
    fn from(c: &DetectionConfig) -> Self {
        Self {
            fine_scale_count: c.fine_scale_count,
            persistence_octaves: c.persistence_octaves,
            threshold_multiplier: c.threshold_multiplier,
            fit_octaves: c.fit_octaves,
            jump_cusp_boundary: c.jump_cusp_boundary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventDoc {
    pub location: f64,
    pub kind: String,
    pub strength: f64,
    pub alpha: Option<f64>,
    pub line_span_octaves: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: String,
    pub samples: usize,
    pub dt: f64,
    pub t0: f64,
    pub wavelet: WaveletDoc,
    pub scales: GridDoc,
    pub detection: DetectionDoc,
    pub noise_level: f64,
    pub threshold: f64,
    pub events: Vec<EventDoc>,
}

impl ReportDoc {
    pub fn new(
        report: &SingularityReport,
        samples: usize,
        dt: f64,
        t0: f64,
        wavelet: &MotherWavelet,
        grid: &ScaleGrid,
        cfg: &DetectionConfig,
    ) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            samples,
            dt,
            t0,
            wavelet: WaveletDoc::from_wavelet(wavelet),
            scales: GridDoc::from_grid(grid),
            detection: cfg.into(),
            noise_level: report.noise_level(),
            threshold: report.threshold(),
            events: report
                .events()
                .iter()
                .map(|e| EventDoc {
                    location: e.location,
                    kind: e.kind.as_str().to_string(),
                    strength: e.strength,
                    alpha: e.alpha,
                    line_span_octaves: e.line_span_octaves,
                    score: e.score,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateDoc {
    pub schema: String,
    pub beta: f64,
    pub hurst: f64,
    pub dimension: f64,
    pub log_intercept: f64,
    pub r_squared: f64,
    pub scale_range: [f64; 2],
    pub entries_used: usize,
    pub classification: String,
    pub warnings: Vec<String>,
    pub samples: usize,
    pub wavelet: WaveletDoc,
    pub scales: GridDoc,
}

impl EstimateDoc {
    pub fn new(
        est: &HurstEstimate,
        samples: usize,
        wavelet: &MotherWavelet,
        grid: &ScaleGrid,
    ) -> Self {
        let (lo, hi) = est.scale_range();
        Self {
            schema: ESTIMATE_SCHEMA.to_string(),
            beta: est.beta(),
            hurst: est.hurst(),
            dimension: est.dimension(),
            log_intercept: est.log_intercept(),
            r_squared: est.r_squared(),
            scale_range: [lo, hi],
            entries_used: est.entries_used(),
            classification: est.classification().as_str().to_string(),
            warnings: est.warnings().to_vec(),
            samples,
            wavelet: WaveletDoc::from_wavelet(wavelet),
            scales: GridDoc::from_grid(grid),
        }
    }
}

/// Everything needed to rerun an invocation and reproduce its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestDoc {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Command line with every parameter spelled out.
    pub argv: Vec<String>,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

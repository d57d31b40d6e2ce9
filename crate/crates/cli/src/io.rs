//! Frame and φ files, report writers, run manifests.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use entropic_frames_core::bounds::BoundReport;
use entropic_frames_core::entropy::PhiSpec;
use entropic_frames_core::frames::WeightedFrame;
use entropic_frames_core::tightness::SweepRow;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Fs {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Fs {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| IoError::Fs {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| IoError::Fs {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    serde_json::from_str(&read(path)?).map_err(|source| IoError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Reads the frame layout
/// `{"label", "dimension", "weights": [..], "vectors": [[[re, im], ..], ..]}`.
/// Shape errors name the offending field.
pub fn load_frame(path: &Path) -> Result<WeightedFrame, IoError> {
    from_json(path)
}

pub fn save_frame(path: &Path, frame: &WeightedFrame) -> Result<(), IoError> {
    write_file(path, &to_json(frame))
}

/// `{"family": .., "params": {..}}`; `params` may be omitted for `exp_decay`.
pub fn load_phi(path: &Path) -> Result<PhiSpec, IoError> {
    let json_err = |source| IoError::Json {
        path: path.to_path_buf(),
        source,
    };
    let mut value: serde_json::Value = serde_json::from_str(&read(path)?).map_err(json_err)?;
    if let Some(obj) = value.as_object_mut() {
        obj.entry("params").or_insert_with(|| serde_json::json!({}));
    }
    serde_json::from_value(value).map_err(json_err)
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        // + 0.0 folds -0 into 0
        format!("{:.16e}", x + 0.0)
    } else if x.is_nan() {
        "NA".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), fmt_f64)
}

fn fmt_opt_bool(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "true",
        Some(false) => "false",
        None => "NA",
    }
}

pub const REPORT_CSV_HEADER: &str = "state_id,entropy_a,entropy_b,product,sum,coherence,product_bound,conjectured_bound,\
margin_product,margin_deutsch,margin_mu,holds_product,holds_deutsch,holds_mu,admissible";

pub fn reports_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let id = r.state_id.map_or_else(|| "NA".to_string(), |i| i.to_string());
        writeln!(
            out,
            "{id},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.entropy_a),
            fmt_f64(r.entropy_b),
            fmt_f64(r.product),
            fmt_f64(r.sum),
            fmt_f64(r.coherence),
            fmt_f64(r.product_bound),
            fmt_opt(r.conjectured_bound),
            fmt_f64(r.margins.product),
            fmt_opt(r.margins.deutsch()),
            fmt_opt(r.margins.mu),
            r.holds.product,
            fmt_opt_bool(r.holds.deutsch),
            fmt_opt_bool(r.holds.mu),
            r.state_admissible,
        )
        .unwrap();
    }
    out
}

pub const SWEEP_CSV_HEADER: &str =
    "theta,coherence,min_product,product_bound,conjectured_bound,min_shannon_sum,deutsch_bound,mu_bound";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.theta,
            r.coherence,
            r.min_product,
            r.product_bound,
            r.conjectured_bound,
            r.min_shannon_sum,
            r.deutsch_bound,
            r.mu_bound,
        ];
        let line: Vec<String> = cols.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub const BOUNDS_CSV_HEADER: &str = "c,deutsch,mu,product_bound,conjectured,amgm_sum";

/// Accompanies every run's output directory. Replaying `args` reproduces the
/// primary outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Full argument list, seed included, without the program name.
    pub args: Vec<String>,
    pub parameters: Vec<(String, String)>,
    pub seed: u64,
    /// How per-task seeds derive from `seed`.
    pub seed_derivation: String,
    pub tool_version: String,
    pub timestamp: String,
}

pub fn load_manifest(path: &Path) -> Result<RunManifest, IoError> {
    from_json(path)
}

pub fn unix_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use entropic_frames_core::frames::{make_orthonormal_basis, make_parseval_frame, BasisKind, ParsevalKind};

    #[test]
    fn frame_json_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        for frame in [
            make_orthonormal_basis(BasisKind::RandomUnitary, 5, 3).unwrap(),
            make_parseval_frame(ParsevalKind::Harmonic, 7, 3, 0).unwrap(),
            make_parseval_frame(ParsevalKind::MercedesBenz, 3, 2, 0).unwrap(),
        ] {
            let path = dir.path().join("f.json");
            save_frame(&path, &frame).unwrap();
            let back = load_frame(&path).unwrap();
            assert_eq!(back, frame);
        }
    }

    #[test]
    fn frame_json_layout() {
        let f = make_orthonormal_basis(BasisKind::Standard, 2, 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&f)).unwrap();
        assert_eq!(v["label"], "standard:2");
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["weights"], serde_json::json!([1.0, 1.0]));
        assert_eq!(v["vectors"], serde_json::json!([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]));
    }

    #[test]
    fn malformed_frame_names_field() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"label":"x","dimension":2,"weights":[1.0,-1.0],"vectors":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#)
            .unwrap();
        let err = load_frame(&path).unwrap_err().to_string();
        assert!(err.contains("weights[1]"), "{err}");

        std::fs::write(&path, r#"{"label":"x","dimension":2,"weights":[1.0]}"#).unwrap();
        let err = load_frame(&path).unwrap_err().to_string();
        assert!(err.contains("vectors"), "{err}");
    }

    #[test]
    fn phi_json() {
        let s = serde_json::to_string(&PhiSpec::Power { p: 0.5 }).unwrap();
        assert_eq!(s, r#"{"family":"power","params":{"p":0.5}}"#);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi.json");
        std::fs::write(&path, r#"{"family":"exp_decay"}"#).unwrap();
        assert_eq!(load_phi(&path).unwrap(), PhiSpec::ExpDecay);
        let back: PhiSpec = serde_json::from_str(r#"{"family":"exp_decay","params":{}}"#).unwrap();
        assert_eq!(back, PhiSpec::ExpDecay);
        let t: PhiSpec = serde_json::from_str(r#"{"family":"tabulated","params":{"points":[[0.1,2.0],[1.0,1.0]]}}"#).unwrap();
        assert!(matches!(t, PhiSpec::Tabulated(_)));
        assert!(serde_json::from_str::<PhiSpec>(r#"{"family":"power","params":{"p":-1}}"#).is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_opt(None), "NA");
    }
}

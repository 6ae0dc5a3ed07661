use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use wavesing::signal_gen::{barnsley_tree_model, chaos_game, gen_eq11, NoiseSpec};
use wavesing::wavelet::{cwt_fft, modulus_maxima, scalogram, MotherWavelet, ScaleGrid};
use wavesing_cli::formats::{read_points, read_signal, read_tsv};
use wavesing_cli::schema::{EstimateDoc, ManifestDoc, ReportDoc};

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_wavesing"))
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .unwrap()
    }

    fn ok(&self, args: &[&str]) -> Output {
        let out = self.run(args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn bytes(&self, name: &str) -> Vec<u8> {
        fs::read(self.path(name)).unwrap()
    }

    fn text(&self, name: &str) -> String {
        fs::read_to_string(self.path(name)).unwrap()
    }

    fn write(&self, name: &str, text: &str) {
        fs::write(self.path(name), text).unwrap();
    }

    /// Deletes `outputs`, replays `manifest`, and checks the outputs come
    /// back byte-identical.
    fn assert_replays(&self, manifest: &str, outputs: &[&str]) {
        let before: Vec<Vec<u8>> = outputs.iter().map(|o| self.bytes(o)).collect();
        let manifest_before = self.bytes(manifest);
        for o in outputs {
            fs::remove_file(self.path(o)).unwrap();
        }
        self.ok(&["replay", manifest]);
        for (o, b) in outputs.iter().zip(before) {
            assert_eq!(self.bytes(o), b, "{o} differs after replay");
        }
        assert_eq!(self.bytes(manifest), manifest_before);
    }
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn eq11_csv_is_deterministic_and_matches_library() {
    let sb = Sandbox::new();
    let a = sb.ok(&[
        "gen", "eq11", "--n", "1024", "--sigma", "0.2", "--seed", "7",
    ]);
    let b = sb.ok(&[
        "gen", "eq11", "--n", "1024", "--sigma", "0.2", "--seed", "7",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 1024);
    let parsed = read_signal(&text).unwrap();
    let direct = gen_eq11(1024, &NoiseSpec::new(0.2, 7).unwrap()).unwrap();
    assert_eq!(parsed.samples(), direct.samples());
    assert!((parsed.dt() - direct.dt()).abs() < 1e-12);
}

#[test]
fn every_generator_replays() {
    let sb = Sandbox::new();
    sb.ok(&[
        "gen",
        "chirp-jump",
        "--n",
        "512",
        "--sigma",
        "0.75",
        "--seed",
        "3",
        "--out",
        "c.csv",
    ]);
    sb.assert_replays("c.csv.manifest.json", &["c.csv"]);
    sb.ok(&[
        "gen",
        "eq11",
        "--n",
        "300",
        "--seed",
        "1",
        "--out",
        "e.csv",
        "--manifest",
        "e.json",
    ]);
    sb.assert_replays("e.json", &["e.csv"]);
    sb.ok(&[
        "gen", "fbm", "--hurst", "0.3", "--n", "500", "--seed", "9", "--out", "f.csv",
    ]);
    sb.assert_replays("f.csv.manifest.json", &["f.csv"]);
    sb.ok(&["gen", "ifs", "--n", "1000", "--seed", "2", "--out", "p.csv"]);
    sb.assert_replays("p.csv.manifest.json", &["p.csv"]);
    sb.ok(&[
        "gen",
        "noise-add",
        "--input",
        "e.csv",
        "--sigma",
        "0.5",
        "--seed",
        "4",
        "--out",
        "n.csv",
    ]);
    sb.assert_replays("n.csv.manifest.json", &["n.csv"]);

    let m: ManifestDoc = serde_json::from_str(&sb.text("p.csv.manifest.json")).unwrap();
    assert_eq!(m.subcommand, "gen ifs");
    assert_eq!(m.parameters["burn_in"], 100);
    assert_eq!(m.outputs, vec!["p.csv".to_string()]);
}

#[test]
fn analyze_outputs_round_trip_and_replay() {
    let sb = Sandbox::new();
    sb.ok(&[
        "gen", "eq11", "--n", "512", "--sigma", "0.1", "--seed", "5", "--out", "s.csv",
    ]);
    sb.ok(&[
        "analyze",
        "--input",
        "s.csv",
        "--report",
        "r.json",
        "--scalogram",
        "g.tsv",
        "--maxima",
        "m.tsv",
    ]);
    sb.assert_replays("r.json.manifest.json", &["r.json", "g.tsv", "m.tsv"]);

    let series = read_signal(&sb.text("s.csv")).unwrap();
    let grid = ScaleGrid::for_series(&series, 8).unwrap();
    let c = cwt_fft(&series, &MotherWavelet::mexican_hat(), &grid).unwrap();
    let s = scalogram(&c);
    let rows = read_tsv::<3>(&sb.text("g.tsv")).unwrap();
    assert_eq!(rows.len(), s.n_scales() * s.n_samples());
    for (k, row) in rows.iter().enumerate() {
        let (j, i) = (k / s.n_samples(), k % s.n_samples());
        assert!((row[0] - s.time(i)).abs() <= 1e-12);
        assert!((row[1] - s.scales()[j]).abs() <= 1e-12 * s.scales()[j]);
        assert!((row[2] - s.get(j, i)).abs() <= 1e-12 * s.get(j, i).abs().max(1e-300));
    }
    let maxima = modulus_maxima(&c, 0.0);
    let rows = read_tsv::<3>(&sb.text("m.tsv")).unwrap();
    assert_eq!(rows.len(), maxima.len());
    for (row, p) in rows.iter().zip(maxima.points()) {
        assert!((row[2] - p.value).abs() <= 1e-12 * p.value);
    }
    let report: ReportDoc = serde_json::from_str(&sb.text("r.json")).unwrap();
    assert_eq!(report.schema, "wavesing.report/1");
    assert_eq!(report.samples, 512);
}

#[test]
fn chirp_report_has_jump_and_cusp() {
    let sb = Sandbox::new();
    sb.ok(&[
        "gen",
        "chirp-jump",
        "--n",
        "1024",
        "--seed",
        "0",
        "--out",
        "c.csv",
    ]);
    sb.ok(&["analyze", "--input", "c.csv", "--report", "r.json"]);
    let report: ReportDoc = serde_json::from_str(&sb.text("r.json")).unwrap();
    let found: Vec<(f64, &str)> = report
        .events
        .iter()
        .map(|e| (e.location, e.kind.as_str()))
        .collect();
    assert_eq!(found.len(), 2, "{found:?}");
    assert!((found[0].0 - 0.5).abs() <= 0.01 && found[0].1 == "jump");
    assert!((found[1].0 - 0.6).abs() <= 0.01 && found[1].1 == "cusp");
}

#[test]
fn analyze_without_outputs_prints_report() {
    let sb = Sandbox::new();
    sb.ok(&["gen", "eq11", "--n", "256", "--seed", "1", "--out", "s.csv"]);
    let out = sb.ok(&[
        "analyze",
        "--input",
        "s.csv",
        "--wavelet",
        "morlet",
        "--omega0",
        "6.5",
    ]);
    let report: ReportDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.wavelet.kind, "morlet");
    assert_eq!(report.wavelet.omega0, Some(6.5));
    assert!(!sb.path("s.csv.manifest.json.manifest.json").exists());
}

#[test]
fn barnsley_coordinate_maxima_are_deterministic() {
    let sb = Sandbox::new();
    let cloud = chaos_game(&barnsley_tree_model(), 2048, 1, 100).unwrap();
    let x1: String = cloud
        .points()
        .iter()
        .map(|p| format!("{:.16e}\n", p[0]))
        .collect();
    sb.write("x1.csv", &x1);
    sb.ok(&["analyze", "--input", "x1.csv", "--maxima", "m.tsv"]);
    let first = sb.bytes("m.tsv");
    assert!(!read_tsv::<3>(&sb.text("m.tsv")).unwrap().is_empty());
    sb.ok(&["analyze", "--input", "x1.csv", "--maxima", "m.tsv"]);
    assert_eq!(sb.bytes("m.tsv"), first);
}

#[test]
fn estimate_outputs_round_trip_and_replay() {
    let sb = Sandbox::new();
    sb.ok(&[
        "gen", "fbm", "--hurst", "0.8", "--n", "4096", "--seed", "1", "--out", "f.csv",
    ]);
    sb.ok(&[
        "estimate",
        "--input",
        "f.csv",
        "--out",
        "e.json",
        "--covariance",
        "r.tsv",
    ]);
    sb.assert_replays("e.json.manifest.json", &["e.json", "r.tsv"]);
    let est: EstimateDoc = serde_json::from_str(&sb.text("e.json")).unwrap();
    assert_eq!(est.schema, "wavesing.estimate/1");
    assert_eq!(est.classification, "persistent");
    assert!((est.hurst - 0.8).abs() < 0.15, "{}", est.hurst);
    assert_eq!(est.hurst, (est.beta - 1.0) / 2.0);
    assert_eq!(est.dimension, 2.0 - est.hurst);
    let table = read_tsv::<2>(&sb.text("r.tsv")).unwrap();
    assert_eq!(table.len(), est.scales.count);
    assert!(table.iter().all(|r| r[1] > 0.0));
}

#[test]
fn white_noise_estimate_warns() {
    let sb = Sandbox::new();
    let noise = wavesing::signal_gen::add_noise(
        &wavesing::TimeSeries::from_samples(vec![0.0; 4096]).unwrap(),
        &NoiseSpec::new(1.0, 8).unwrap(),
    )
    .unwrap();
    let text: String = noise
        .samples()
        .iter()
        .map(|v| format!("{v:.16e}\n"))
        .collect();
    sb.write("w.csv", &text);
    let out = sb.ok(&["estimate", "--input", "w.csv"]);
    let est: EstimateDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert!(est.beta.abs() < 0.5, "{}", est.beta);
    assert!(est
        .warnings
        .contains(&"beta outside self-affine band (1,3)".to_string()));
}

#[test]
fn rasterize_replays_and_covers_pixels() {
    let sb = Sandbox::new();
    sb.ok(&[
        "gen", "ifs", "--model", "barnsley", "--n", "50000", "--seed", "1", "--out", "p.csv",
    ]);
    let points = read_points(&sb.text("p.csv")).unwrap();
    assert_eq!(points.len(), 50_000);
    assert!(points
        .iter()
        .all(|p| (-3.5..=3.5).contains(&p[0]) && (-1.5..=11.5).contains(&p[1])));
    sb.ok(&[
        "rasterize",
        "--input",
        "p.csv",
        "--width",
        "512",
        "--height",
        "512",
        "--out",
        "t.pgm",
    ]);
    let img = sb.bytes("t.pgm");
    let header = b"P5\n512 512\n255\n";
    assert_eq!(&img[..header.len()], header);
    let pixels = &img[header.len()..];
    assert_eq!(pixels.len(), 512 * 512);
    let lit = pixels.iter().filter(|&&p| p > 0).count();
    assert!(lit as f64 > 0.01 * pixels.len() as f64, "{lit}");
    sb.assert_replays("t.pgm.manifest.json", &["t.pgm"]);
}

#[test]
fn exit_codes() {
    let sb = Sandbox::new();
    sb.write("empty.csv", "");
    let out = sb.run(&["analyze", "--input", "empty.csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no samples"));

    sb.write("bad.csv", "1.0\n2.0\nabc\n");
    let out = sb.run(&["analyze", "--input", "bad.csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"));

    let ten: String = (0..10).map(|k| format!("{k}\n")).collect();
    sb.write("ten.csv", &ten);
    assert_eq!(code(&sb.run(&["estimate", "--input", "ten.csv"])), 2);

    assert_eq!(code(&sb.run(&["analyze", "--input", "missing.csv"])), 3);

    sb.ok(&["gen", "eq11", "--n", "512", "--seed", "1", "--out", "s.csv"]);
    let out = sb.run(&[
        "gen",
        "eq11",
        "--n",
        "512",
        "--seed",
        "1",
        "--out",
        "no/such/dir/s.csv",
    ]);
    assert_eq!(code(&out), 3);

    assert_eq!(
        code(&sb.run(&["analyze", "--input", "s.csv", "--a-min", "0.0001"])),
        4
    );
    assert_eq!(
        code(&sb.run(&["analyze", "--input", "s.csv", "--a-min", "0.1", "--a-max", "0.05"])),
        4
    );

    sb.ok(&[
        "gen", "fbm", "--hurst", "0.5", "--n", "512", "--seed", "1", "--out", "f.csv",
    ]);
    let out = sb.run(&[
        "estimate",
        "--input",
        "f.csv",
        "--fit-min",
        "4",
        "--fit-max",
        "4.5",
    ]);
    assert_eq!(code(&out), 5, "{}", stderr(&out));

    assert_eq!(
        code(&sb.run(&["gen", "fbm", "--hurst", "1.2", "--seed", "1"])),
        2
    );
    assert_eq!(
        code(&sb.run(&["gen", "eq11", "--n", "64"])),
        2,
        "seed is mandatory"
    );
    assert_eq!(
        code(&sb.run(&["gen", "eq11", "--n", "8", "--seed", "1"])),
        2
    );

    sb.write("none.csv", "# nothing\n");
    let out = sb.run(&["rasterize", "--input", "none.csv", "--out", "x.pgm"]);
    assert_eq!(code(&out), 2);
    sb.write("pts.csv", "0,0\n1,1\n");
    assert_eq!(
        code(&sb.run(&[
            "rasterize",
            "--input",
            "pts.csv",
            "--width",
            "8",
            "--out",
            "x.pgm"
        ])),
        2
    );

    sb.write("junk.json", "{}");
    assert_eq!(code(&sb.run(&["replay", "junk.json"])), 2);
    assert_eq!(code(&sb.run(&["--help"])), 0);
    assert_eq!(code(&sb.run(&["analyze", "--help"])), 0);
}

#[test]
fn manifest_paths_follow_the_first_output() {
    let sb = Sandbox::new();
    sb.ok(&["gen", "eq11", "--n", "256", "--seed", "2", "--out", "s.csv"]);
    sb.ok(&[
        "analyze",
        "--input",
        "s.csv",
        "--maxima",
        "m.tsv",
        "--scalogram",
        "g.tsv",
    ]);
    let m: ManifestDoc = serde_json::from_str(&sb.text("g.tsv.manifest.json")).unwrap();
    assert_eq!(m.outputs, vec!["g.tsv".to_string(), "m.tsv".to_string()]);
    assert!(Path::new(&sb.path("g.tsv.manifest.json")).exists());
}

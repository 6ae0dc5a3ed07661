use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use wavesing::selfsim::{fit_power_law, wavelet_autocovariance, EstimationConfig, ScaleRange};
use wavesing::signal_gen::{
    add_noise, barnsley_tree_model, chaos_game, gen_chirp_jump, gen_eq11, synthesize_fbm,
    FbmParams, NoiseSpec,
};
use wavesing::singularity::{detect_singularities, DetectionConfig};
use wavesing::wavelet::{cwt_fft, modulus_maxima, scalogram, MotherWavelet, ScaleGrid};
use wavesing::TimeSeries;

use crate::error::{CliError, ExitCode};
use crate::formats::{rasterize, read_points, read_signal, write_points, write_signal, write_tsv};
use crate::schema::{to_json, EstimateDoc, ManifestDoc, ReportDoc, MANIFEST_SCHEMA};
use crate::{
    AnalyzeArgs, Command, EstimateArgs, GenKind, IfsModelName, OutputArgs, RasterizeArgs,
    WaveletArgs, WaveletName,
};

/// Minimum length accepted by `estimate`.
pub const MIN_ESTIMATE_LEN: usize = 256;

/// Minimum raster width and height.
pub const MIN_RASTER_SIDE: usize = 16;

/// Resolved parameters of one run, kept both as JSON and as a command line.
struct Record {
    subcommand: String,
    argv: Vec<String>,
    parameters: Map<String, Value>,
    inputs: Vec<String>,
    outputs: Vec<String>,
}

impl Record {
    fn new(words: &[&str]) -> Self {
        let mut argv = vec!["wavesing".to_string()];
        argv.extend(words.iter().map(|w| w.to_string()));
        Self {
            subcommand: words.join(" "),
            argv,
            parameters: Map::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, text: String, value: Value) {
        self.argv.push(format!("--{}", name.replace('_', "-")));
        self.argv.push(text);
        self.parameters.insert(name.to_string(), value);
    }

    fn real(&mut self, name: &str, v: f64) {
        // Debug formatting is the shortest text that parses back to `v`.
        self.push(name, format!("{v:?}"), json!(v));
    }

    fn int(&mut self, name: &str, v: u64) {
        self.push(name, v.to_string(), json!(v));
    }

    fn word(&mut self, name: &str, v: &str) {
        self.push(name, v.to_string(), json!(v));
    }

    fn flag(&mut self, name: &str, on: bool) {
        if on {
            self.argv.push(format!("--{}", name.replace('_', "-")));
        }
        self.parameters.insert(name.to_string(), json!(on));
    }

    fn input(&mut self, name: &str, path: &Path) {
        let p = path.display().to_string();
        self.inputs.push(p.clone());
        self.push(name, p.clone(), json!(p));
    }

    fn output(&mut self, name: &str, path: &Path) {
        let p = path.display().to_string();
        self.outputs.push(p.clone());
        self.push(name, p.clone(), json!(p));
    }

    /// Adds the manifest path (explicit, else next to the first output) and
    /// returns it. No manifest is written for runs without file outputs.
    fn manifest(&mut self, explicit: Option<&Path>) -> Option<PathBuf> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => PathBuf::from(format!("{}.manifest.json", self.outputs.first()?)),
        };
        let p = path.display().to_string();
        self.argv.push("--manifest".into());
        self.argv.push(p);
        Some(path)
    }

    fn write_manifest(self, path: Option<PathBuf>) -> Result<(), CliError> {
        let Some(path) = path else { return Ok(()) };
        let doc = ManifestDoc {
            schema: MANIFEST_SCHEMA.to_string(),
            tool: "wavesing".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: self.subcommand,
            argv: self.argv,
            parameters: self.parameters,
            inputs: self.inputs,
            outputs: self.outputs,
        };
        write_file(&path, to_json(&doc).as_bytes())
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::new(ExitCode::Io, format!("standard output: {e}")))
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_signal(path: &Path) -> Result<TimeSeries, CliError> {
    read_signal(&read_text(path)?).map_err(|e| CliError::format(path, e))
}

pub(crate) fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen { kind } => gen(kind),
        Command::Analyze(args) => analyze(args),
        Command::Estimate(args) => estimate(args),
        Command::Rasterize(args) => rasterize_cmd(args),
        Command::Replay { manifest } => replay(&manifest),
    }
}

fn finish_gen(mut rec: Record, output: &OutputArgs, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(out) = &output.out {
        rec.output("out", out);
    }
    let manifest = rec.manifest(output.manifest.as_deref());
    emit(output.out.as_deref(), bytes)?;
    rec.write_manifest(manifest)
}

fn gen(kind: GenKind) -> Result<(), CliError> {
    match kind {
        GenKind::ChirpJump(a) => {
            let series = gen_chirp_jump(a.n, &NoiseSpec::new(a.sigma, a.seed)?)?;
            let mut rec = Record::new(&["gen", "chirp-jump"]);
            rec.int("n", a.n as u64);
            rec.real("sigma", a.sigma);
            rec.int("seed", a.seed);
            finish_gen(rec, &a.output, write_signal(&series).as_bytes())
        }
        GenKind::Eq11(a) => {
            let series = gen_eq11(a.n, &NoiseSpec::new(a.sigma, a.seed)?)?;
            let mut rec = Record::new(&["gen", "eq11"]);
            rec.int("n", a.n as u64);
            rec.real("sigma", a.sigma);
            rec.int("seed", a.seed);
            finish_gen(rec, &a.output, write_signal(&series).as_bytes())
        }
        GenKind::Fbm(a) => {
            let sample = synthesize_fbm(&FbmParams::new(a.hurst, a.n, a.seed)?)?;
            for w in &sample.warnings {
                eprintln!("wavesing: warning: {w}");
            }
            let mut rec = Record::new(&["gen", "fbm"]);
            rec.real("hurst", a.hurst);
            rec.int("n", a.n as u64);
            rec.int("seed", a.seed);
            finish_gen(rec, &a.output, write_signal(&sample.series).as_bytes())
        }
        GenKind::Ifs(a) => {
            let model = match a.model {
                IfsModelName::Barnsley => barnsley_tree_model(),
            };
            let cloud = chaos_game(&model, a.n, a.seed, a.burn_in)?;
            let mut rec = Record::new(&["gen", "ifs"]);
            rec.word("model", "barnsley");
            rec.int("n", a.n as u64);
            rec.int("seed", a.seed);
            rec.int("burn_in", a.burn_in as u64);
            finish_gen(rec, &a.output, write_points(cloud.points()).as_bytes())
        }
        GenKind::NoiseAdd(a) => {
            let series = load_signal(&a.input)?;
            let noisy = add_noise(&series, &NoiseSpec::new(a.sigma, a.seed)?)?;
            let mut rec = Record::new(&["gen", "noise-add"]);
            rec.input("input", &a.input);
            rec.real("sigma", a.sigma);
            rec.int("seed", a.seed);
            finish_gen(rec, &a.output, write_signal(&noisy).as_bytes())
        }
    }
}

fn wavelet_of(args: &WaveletArgs) -> Result<MotherWavelet, CliError> {
    Ok(match args.wavelet {
        WaveletName::MexicanHat => MotherWavelet::mexican_hat(),
        WaveletName::Morlet => MotherWavelet::morlet(args.omega0)?,
        WaveletName::Haar => MotherWavelet::haar(),
    })
}

fn record_wavelet(rec: &mut Record, args: &WaveletArgs, w: &MotherWavelet, grid: &ScaleGrid) {
    rec.word("wavelet", w.name());
    if args.wavelet == WaveletName::Morlet {
        rec.real("omega0", args.omega0);
    }
    rec.int("voices", args.voices as u64);
    rec.real("a_min", grid.a_min());
    rec.real("a_max", grid.a_max());
}

/// Log-spaced grid; unspecified ends default to `default`'s.
fn grid_of(
    args: &WaveletArgs,
    series: &TimeSeries,
    default: &ScaleGrid,
) -> Result<ScaleGrid, CliError> {
    let grid = if args.a_min.is_none() && args.a_max.is_none() {
        default.clone()
    } else {
        ScaleGrid::log_spaced(
            args.a_min.unwrap_or(default.a_min()),
            args.a_max.unwrap_or(default.a_max()),
            args.voices,
        )?
    };
    grid.check_against(series)?;
    Ok(grid)
}

fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let series = load_signal(&args.input)?;
    let wavelet = wavelet_of(&args.wavelet)?;
    let default = ScaleGrid::for_series(&series, args.wavelet.voices)?;
    let grid = grid_of(&args.wavelet, &series, &default)?;
    let cfg = DetectionConfig {
        fine_scale_count: args.fine_scales,
        persistence_octaves: args.persistence_octaves,
        threshold_multiplier: args.threshold_multiplier,
        fit_octaves: args.fit_octaves,
        jump_cusp_boundary: args.jump_cusp_boundary,
    };
    cfg.validate()?;
    if !(0.0..1.0).contains(&args.min_amplitude) {
        return Err(CliError::bad_input("--min-amplitude must lie in [0, 1)"));
    }

    let mut rec = Record::new(&["analyze"]);
    rec.input("input", &args.input);
    record_wavelet(&mut rec, &args.wavelet, &wavelet, &grid);
    rec.real("min_amplitude", args.min_amplitude);
    rec.int("fine_scales", cfg.fine_scale_count as u64);
    rec.real("persistence_octaves", cfg.persistence_octaves);
    rec.real("threshold_multiplier", cfg.threshold_multiplier);
    rec.real("fit_octaves", cfg.fit_octaves);
    rec.real("jump_cusp_boundary", cfg.jump_cusp_boundary);

    let c = cwt_fft(&series, &wavelet, &grid)?;
    let report = detect_singularities(&c, &cfg)?;

    let mut files: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    if let Some(path) = &args.report {
        rec.output("report", path);
        let doc = ReportDoc::new(
            &report,
            series.len(),
            series.dt(),
            series.t0(),
            &wavelet,
            &grid,
            &cfg,
        );
        files.push((path.clone(), to_json(&doc).into_bytes()));
    }
    if let Some(path) = &args.scalogram {
        rec.output("scalogram", path);
        let s = scalogram(&c);
        let mut rows = Vec::with_capacity(s.n_scales() * s.n_samples());
        for (j, &a) in s.scales().iter().enumerate() {
            for (i, &v) in s.row(j).iter().enumerate() {
                rows.push([s.time(i), a, v]);
            }
        }
        files.push((path.clone(), write_tsv(["b", "a", "S"], &rows).into_bytes()));
    }
    if let Some(path) = &args.maxima {
        rec.output("maxima", path);
        let m = modulus_maxima(&c, args.min_amplitude);
        let rows: Vec<[f64; 3]> = m
            .points()
            .iter()
            .map(|p| [c.time(p.i), c.scale(p.j), p.value])
            .collect();
        files.push((
            path.clone(),
            write_tsv(["b", "a", "absW"], &rows).into_bytes(),
        ));
    }
    let manifest = rec.manifest(args.manifest.as_deref());
    if files.is_empty() {
        let doc = ReportDoc::new(
            &report,
            series.len(),
            series.dt(),
            series.t0(),
            &wavelet,
            &grid,
            &cfg,
        );
        emit(None, to_json(&doc).as_bytes())?;
    }
    for (path, bytes) in &files {
        write_file(path, bytes)?;
    }
    rec.write_manifest(manifest)
}

fn estimate(args: EstimateArgs) -> Result<(), CliError> {
    let series = load_signal(&args.input)?;
    if series.len() < MIN_ESTIMATE_LEN {
        return Err(CliError::bad_input(format!(
            "{}: estimate needs at least {MIN_ESTIMATE_LEN} samples, found {}",
            args.input.display(),
            series.len()
        )));
    }
    let wavelet = wavelet_of(&args.wavelet)?;
    let default = ScaleGrid::cone_limited(&series, &wavelet, args.wavelet.voices)?;
    let grid = grid_of(&args.wavelet, &series, &default)?;
    let scale_range = match (args.fit_min, args.fit_max) {
        (Some(a_min), Some(a_max)) => ScaleRange::Fixed { a_min, a_max },
        _ => ScaleRange::Automatic,
    };
    let cfg = EstimationConfig {
        scale_range,
        exclude_cone: !args.include_cone,
    };

    let mut rec = Record::new(&["estimate"]);
    rec.input("input", &args.input);
    record_wavelet(&mut rec, &args.wavelet, &wavelet, &grid);
    if let ScaleRange::Fixed { a_min, a_max } = scale_range {
        rec.real("fit_min", a_min);
        rec.real("fit_max", a_max);
    }
    rec.flag("include_cone", args.include_cone);

    let c = cwt_fft(&series, &wavelet, &grid)?;
    let cov = wavelet_autocovariance(&c, &cfg)?;
    let est = fit_power_law(&cov, &cfg)?;
    let doc = EstimateDoc::new(&est, series.len(), &wavelet, &grid);

    if let Some(out) = &args.output.out {
        rec.output("out", out);
    }
    let table = args.covariance.as_ref().map(|path| {
        rec.output("covariance", path);
        let rows: Vec<[f64; 2]> = cov.entries().iter().map(|e| [e.scale, e.value]).collect();
        (path.clone(), write_tsv(["a", "R"], &rows))
    });
    let manifest = rec.manifest(args.output.manifest.as_deref());
    emit(args.output.out.as_deref(), to_json(&doc).as_bytes())?;
    if let Some((path, text)) = table {
        write_file(&path, text.as_bytes())?;
    }
    rec.write_manifest(manifest)
}

fn rasterize_cmd(args: RasterizeArgs) -> Result<(), CliError> {
    if args.width < MIN_RASTER_SIDE || args.height < MIN_RASTER_SIDE {
        return Err(CliError::bad_input(format!(
            "width and height must be at least {MIN_RASTER_SIDE}"
        )));
    }
    let points =
        read_points(&read_text(&args.input)?).map_err(|e| CliError::format(&args.input, e))?;
    let mut rec = Record::new(&["rasterize"]);
    rec.input("input", &args.input);
    rec.int("width", args.width as u64);
    rec.int("height", args.height as u64);
    rec.output("out", &args.out);
    let manifest = rec.manifest(args.manifest.as_deref());
    write_file(&args.out, &rasterize(&points, args.width, args.height))?;
    rec.write_manifest(manifest)
}

fn replay(path: &Path) -> Result<(), CliError> {
    let doc: ManifestDoc = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::bad_input(format!("{}: not a manifest: {e}", path.display())))?;
    if doc.schema != MANIFEST_SCHEMA {
        return Err(CliError::bad_input(format!(
            "{}: unsupported manifest schema '{}'",
            path.display(),
            doc.schema
        )));
    }
    if doc.argv.get(1).map(String::as_str) == Some("replay") {
        return Err(CliError::bad_input(
            "a manifest cannot replay another manifest",
        ));
    }
    crate::execute(doc.argv)
}

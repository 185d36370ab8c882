use std::io::Write;

use anyhow::Context as _;
use biphoton::{
    bell_state, delta_limit_oracle, entanglement_witness, make_grid, oam_ring, product_state, scan, spdc_state,
    symmetry_decompose, thin_crystal_kernel, BellKind, Biphoton, GaussianBeamParams, MziGeometry, MziScheme,
    ScanParameter, ScanResult, ScanSpec, Source, SourceForm, SpdcParams, SppParams,
};

use crate::settings::{config_error, ConfigError, Settings};

/// Minority weight below which a state counts as purely (anti)symmetric.
const CLASSIFY_THRESHOLD: f64 = 1e-6;

/// A constructed two-photon state and a one-line description of it.
enum State {
    Momentum {
        amp: biphoton::TwoPhotonAmplitude,
        label: String,
        truncation_error: Option<f64>,
    },
    ThinCrystal {
        w0: f64,
        keep_phase: bool,
        geometry: MziGeometry,
    },
}

fn build_state(settings: &Settings, default: &str) -> anyhow::Result<State> {
    let spec = settings.state_spec(default);
    let w0 = settings.w0()?;
    let momentum_grid = |n: usize, h: f64| {
        make_grid(settings.grid_n.unwrap_or(n), settings.half_width.unwrap_or(h)).map_err(config_error)
    };
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec.as_str(), None),
    };
    let state = match (kind, arg) {
        ("bell", Some(which)) => {
            let which: BellKind = which.parse().map_err(config_error)?;
            let l = settings.l.unwrap_or(1);
            let grid = momentum_grid(64, 10.0)?;
            State::Momentum {
                amp: bell_state(which, l, w0, grid).map_err(config_error)?,
                label: format!("bell:{} (l = {l})", which.name()),
                truncation_error: None,
            }
        }
        ("product", None) => {
            let (l1, l2) = (settings.l1.unwrap_or(1), settings.l2.unwrap_or(1));
            let grid = momentum_grid(64, 10.0)?;
            let f = oam_ring(l1, w0, grid).map_err(config_error)?;
            let g = oam_ring(l2, w0, grid).map_err(config_error)?;
            State::Momentum {
                amp: product_state(&f, &g)?,
                label: format!("product |{l1},{l2}>"),
                truncation_error: None,
            }
        }
        ("spdc", None) => {
            let params = SpdcParams {
                crystal_length: settings.crystal_length.unwrap_or(2.0),
                pump_wavenumber: settings.pump_wavenumber.unwrap_or(2.0),
                pump: settings.pump()?,
            };
            let grid = momentum_grid(32, 6.0)?;
            let compressed = spdc_state(&params, grid).map_err(config_error)?;
            State::Momentum {
                label: format!(
                    "spdc (pump {}, rank {})",
                    settings.pump.as_deref().unwrap_or("g00"),
                    compressed.amplitude.rank()
                ),
                amp: compressed.amplitude,
                truncation_error: Some(compressed.truncation_error),
            }
        }
        ("thin-crystal", None) => State::ThinCrystal {
            w0,
            keep_phase: settings.keep_phase.unwrap_or(true),
            geometry: settings.geometry(64)?,
        },
        _ => {
            return Err(ConfigError(format!(
                "invalid `state`: expected bell:<kind>, product, spdc or thin-crystal, got `{spec}`"
            ))
            .into())
        }
    };
    Ok(state)
}

fn thin_crystal_beam(w0: f64, geometry: &MziGeometry) -> GaussianBeamParams {
    GaussianBeamParams {
        w0,
        z: geometry.z1,
        pump_wavenumber: 2.0 * geometry.k,
    }
}

/// `(P_c, symmetric weight, antisymmetric weight, witness verdict)` at the
/// bare beamsplitter.
fn bare_observables(state: &State, margin: f64) -> anyhow::Result<(f64, f64, f64, biphoton::Verdict)> {
    fn observe<A: Biphoton>(amp: &A, margin: f64) -> anyhow::Result<(f64, f64, f64, biphoton::Verdict)> {
        let (sym, anti) = symmetry_decompose(amp)?;
        Ok((anti, sym, anti, entanglement_witness(amp, margin)?))
    }
    match state {
        State::Momentum { amp, .. } => observe(amp, margin),
        State::ThinCrystal {
            w0,
            keep_phase,
            geometry,
        } => {
            let beam = thin_crystal_beam(*w0, geometry);
            let grid = make_grid(geometry.grid_n, geometry.aperture_factor * beam.spot_size()).map_err(config_error)?;
            observe(
                &thin_crystal_kernel(&beam, grid, *keep_phase).map_err(config_error)?,
                margin,
            )
        }
    }
}

fn describe(state: &State) -> String {
    match state {
        State::Momentum {
            amp,
            label,
            truncation_error,
        } => {
            let g = amp.grid();
            let mut s = format!(
                "{label}; momentum grid {} x {}, half-width {}",
                g.n(),
                g.n(),
                g.half_width()
            );
            if let Some(err) = truncation_error {
                s.push_str(&format!("; truncation error {err:.1e}"));
            }
            s
        }
        State::ThinCrystal {
            w0,
            keep_phase,
            geometry,
        } => format!(
            "thin-crystal (w0 = {w0}, z = {}, phase {}); position grid {} x {}, aperture radius {} w(z)",
            geometry.z1,
            if *keep_phase { "kept" } else { "stripped" },
            geometry.grid_n,
            geometry.grid_n,
            geometry.aperture_factor
        ),
    }
}

fn scheme(state: State, settings: &Settings) -> anyhow::Result<MziScheme> {
    let (source, geometry) = match state {
        State::Momentum { amp, .. } => (Source::Momentum(amp), settings.geometry(64)?),
        State::ThinCrystal {
            w0,
            keep_phase,
            geometry,
        } => (
            Source::ThinCrystal {
                w0,
                keep_phase,
                form: SourceForm::Structured,
            },
            geometry,
        ),
    };
    for warning in geometry.warnings() {
        eprintln!("warning: {warning}");
    }
    MziScheme::prepare(&source, &geometry).map_err(config_error)
}

pub fn pc(settings: &Settings, out: &mut impl Write) -> anyhow::Result<()> {
    let margin = settings.margin()?;
    let state = build_state(settings, "thin-crystal")?;
    writeln!(out, "state: {}", describe(&state))?;
    if let Some(zeta) = settings.zeta {
        let phases = settings.phases()?;
        let spp = SppParams::new(zeta);
        let result = scheme(state, settings)?.evaluate(spp, phases)?;
        writeln!(out, "zeta = {zeta}, alpha_plus = {}", phases.alpha_plus)?;
        writeln!(
            out,
            "P_c = {:.6} (conditional on photon 1 reaching the last beamsplitter)",
            result.conditional_pc
        )?;
        writeln!(out, "throughput = {:.6}", result.throughput)?;
        writeln!(out, "absolute P_c = {:.6}", result.absolute_pc())?;
        match delta_limit_oracle(spp, phases) {
            Ok(p) => writeln!(out, "delta-limit P_c = {p:.6}")?,
            Err(e) => writeln!(out, "delta-limit P_c unavailable: {e}")?,
        }
        return Ok(());
    }
    let (pc, sym, anti, verdict) = bare_observables(&state, margin)?;
    writeln!(out, "P_c = {pc:.6}")?;
    writeln!(out, "symmetric weight = {sym:.6}")?;
    writeln!(out, "antisymmetric weight = {anti:.6}")?;
    writeln!(out, "witness (P_c > 1/2 + {margin:e}): {verdict}")?;
    Ok(())
}

pub fn classify(settings: &Settings, out: &mut impl Write) -> anyhow::Result<()> {
    let state = build_state(settings, "thin-crystal")?;
    let (_, sym, anti, _) = bare_observables(&state, 0.0)?;
    let label = if anti < CLASSIFY_THRESHOLD {
        "symmetric"
    } else if sym < CLASSIFY_THRESHOLD {
        "antisymmetric"
    } else {
        "mixed"
    };
    writeln!(out, "state: {}", describe(&state))?;
    writeln!(out, "weights: symmetric = {sym:.6}, antisymmetric = {anti:.6}")?;
    writeln!(out, "class: {label}")?;
    Ok(())
}

pub fn scan_command(settings: &Settings, out: &mut impl Write) -> anyhow::Result<()> {
    let parameter = settings.scan_parameter()?;
    let (lo, hi) = settings.range(parameter)?;
    let steps = settings.steps.unwrap_or(16);
    let spec = ScanSpec {
        parameter,
        lo,
        hi,
        steps,
        spp: SppParams::new(settings.zeta.unwrap_or(1.0)),
        phases: settings.phases()?,
    };
    spec.validate().map_err(config_error)?;
    let state = build_state(settings, "thin-crystal")?;
    let description = describe(&state);
    let scheme = scheme(state, settings)?;
    let result = scan(&scheme, &spec)?;

    match &settings.out {
        Some(path) => {
            let file = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            write_csv(&result, file).with_context(|| format!("cannot write {}", path.display()))?;
            writeln!(out, "state: {description}")?;
            let fixed = match parameter {
                ScanParameter::Zeta => format!("alpha_plus = {}", spec.phases.alpha_plus),
                ScanParameter::AlphaPlus => format!("zeta = {}", spec.spp.zeta),
            };
            writeln!(
                out,
                "scan: {} from {lo} to {hi}, {steps} points; fixed {fixed}",
                parameter.name()
            )?;
            writeln!(out, "reference P_c without interference = {}", result.reference_pc)?;
            writeln!(out, "max |conditional - oracle| = {:.4}", result.max_oracle_deviation())?;
            writeln!(out, "wrote {} rows to {}", result.rows.len(), path.display())?;
        }
        None => write_csv(&result, out)?,
    }
    Ok(())
}

fn number(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.10}")).unwrap_or_default()
}

fn write_csv(result: &ScanResult, sink: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["parameter", "conditional_pc", "oracle_pc", "throughput", "flag"])?;
    for row in &result.rows {
        w.write_record([
            format!("{:.10}", row.parameter),
            number(row.conditional_pc),
            number(row.oracle_pc),
            number(row.throughput),
            row.flag.name().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

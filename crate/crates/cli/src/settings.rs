//! Run settings shared by every subcommand. Each setting can come from a flag
//! or from a flat TOML file given with `--config`; flags win.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use biphoton::mzi::RawMziPhases;
use biphoton::{MziGeometry, MziPhases, PumpProfile, ScanParameter};
use clap::Args;
use serde::Deserialize;

/// A malformed flag, config key or value. Exits with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(key: &str, reason: impl fmt::Display) -> anyhow::Error {
    ConfigError(format!("invalid `{key}`: {reason}")).into()
}

macro_rules! settings {
    ($( $(#[doc = $doc:literal])* $field:ident : $ty:ty ),* $(,)?) => {
        #[derive(Debug, Clone, Default, Args, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct Settings {
            /// Flat TOML file with any of the long options as keys (using `_`
            /// for `-`); command-line flags override it.
            #[arg(long, value_name = "FILE")]
            #[serde(skip)]
            pub config: Option<PathBuf>,
            $(
                $(#[doc = $doc])*
                #[arg(long)]
                pub $field: Option<$ty>,
            )*
        }

        impl Settings {
            fn overlay(self, base: Settings) -> Settings {
                Settings {
                    config: self.config,
                    $( $field: self.$field.or(base.$field), )*
                }
            }
        }
    };
}

settings! {
    /// State: bell:<psi-plus|psi-minus|phi-plus|phi-minus>, product, spdc or thin-crystal.
    state: String,
    /// OAM index of the Bell state.
    l: i32,
    /// OAM index of photon 1 in a product state.
    l1: i32,
    /// OAM index of photon 2 in a product state.
    l2: i32,
    /// SPDC pump: g00 or hg:<m>,<n>.
    pump: String,
    /// Beam waist of rings, pumps and the thin-crystal pump.
    w0: f64,
    /// SPDC crystal length.
    crystal_length: f64,
    /// SPDC pump wavenumber.
    pump_wavenumber: f64,
    /// Grid points per axis (even, at least 8).
    grid_n: usize,
    /// Momentum-grid half-width for bell, product and spdc states.
    half_width: f64,
    /// Aperture radius in spot sizes for the thin-crystal state.
    aperture_factor: f64,
    /// Propagation distance to the spiral phase plates (sets z1 and z2).
    z: f64,
    /// Propagation distance of photon 1.
    z1: f64,
    /// Propagation distance of photon 2.
    z2: f64,
    /// Photon wavenumber k (the pump has 2k).
    k: f64,
    /// Keep the curvature phase of the thin-crystal state.
    keep_phase: bool,
    /// Spiral phase plate parameter; with `pc`, routes the state through the interferometer.
    zeta: f64,
    /// Aggregate interferometer phase alpha_+.
    alpha_plus: f64,
    /// Aggregate interferometer phase alpha_-.
    alpha_minus: f64,
    /// Phase shifter phase (raw form of alpha_+-).
    phi: f64,
    /// Transmission phase of the first interferometer beamsplitter.
    phi1_tau: f64,
    /// Reflection phase of the first interferometer beamsplitter.
    phi1_rho: f64,
    /// Transmission phase of the second interferometer beamsplitter.
    phi2_tau: f64,
    /// Reflection phase of the second interferometer beamsplitter.
    phi2_rho: f64,
    /// Scanned parameter: zeta or alpha_plus.
    parameter: String,
    /// Scan range as lo,hi.
    range: String,
    /// Number of scan points.
    steps: usize,
    /// Output CSV path (stdout when absent).
    out: PathBuf,
    /// Witness margin above 1/2.
    margin: f64,
}

impl Settings {
    /// Merges the `--config` file under the flags.
    pub fn resolve(self) -> anyhow::Result<Settings> {
        match self.config.clone() {
            Some(path) => Ok(self.overlay(read_config(&path)?)),
            None => Ok(self),
        }
    }

    pub fn state_spec(&self, default: &str) -> String {
        self.state.clone().unwrap_or_else(|| default.to_string())
    }

    pub fn w0(&self) -> anyhow::Result<f64> {
        positive("w0", self.w0.unwrap_or(1.0))
    }

    pub fn pump(&self) -> anyhow::Result<PumpProfile> {
        let w0 = self.w0()?;
        let spec = self.pump.as_deref().unwrap_or("g00");
        if spec == "g00" {
            return Ok(PumpProfile::Gaussian { w0 });
        }
        let indices = spec
            .strip_prefix("hg:")
            .ok_or_else(|| invalid("pump", format!("expected g00 or hg:<m>,<n>, got `{spec}`")))?;
        let (m, n) = indices
            .split_once(',')
            .ok_or_else(|| invalid("pump", format!("expected hg:<m>,<n>, got `{spec}`")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| invalid("pump", format!("mode index `{s}` is not a non-negative integer")))
        };
        Ok(PumpProfile::HermiteGaussian {
            m: parse(m)?,
            n: parse(n)?,
            w0,
        })
    }

    pub fn geometry(&self, default_n: usize) -> anyhow::Result<MziGeometry> {
        let defaults = MziGeometry::default();
        let z = self.z.unwrap_or(defaults.z1);
        let geometry = MziGeometry {
            z1: self.z1.unwrap_or(z),
            z2: self.z2.unwrap_or(z),
            k: self.k.unwrap_or(defaults.k),
            aperture_factor: self.aperture_factor.unwrap_or(defaults.aperture_factor),
            grid_n: self.grid_n.unwrap_or(default_n),
        };
        geometry.validate().map_err(config_error)?;
        Ok(geometry)
    }

    pub fn phases(&self) -> anyhow::Result<MziPhases> {
        let raw = [self.phi, self.phi1_tau, self.phi1_rho, self.phi2_tau, self.phi2_rho];
        if raw.iter().any(Option::is_some) {
            if self.alpha_plus.is_some() || self.alpha_minus.is_some() {
                return Err(invalid(
                    "alpha_plus",
                    "give either alpha_plus/alpha_minus or the raw phases, not both",
                ));
            }
            let [phi, phi1_tau, phi1_rho, phi2_tau, phi2_rho] = raw.map(|v| v.unwrap_or(0.0));
            return Ok(MziPhases::from_raw(RawMziPhases {
                phi,
                phi1_tau,
                phi1_rho,
                phi2_tau,
                phi2_rho,
            }));
        }
        Ok(MziPhases::new(
            self.alpha_plus.unwrap_or(0.0),
            self.alpha_minus.unwrap_or(0.0),
        ))
    }

    pub fn scan_parameter(&self) -> anyhow::Result<ScanParameter> {
        self.parameter
            .as_deref()
            .unwrap_or("zeta")
            .parse()
            .map_err(config_error)
    }

    pub fn range(&self, parameter: ScanParameter) -> anyhow::Result<(f64, f64)> {
        let Some(text) = self.range.as_deref() else {
            return Ok(match parameter {
                ScanParameter::Zeta => (0.25, 4.0),
                ScanParameter::AlphaPlus => (0.0, PI),
            });
        };
        let (lo, hi) = text
            .split_once(',')
            .ok_or_else(|| invalid("range", format!("expected lo,hi, got `{text}`")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| invalid("range", format!("`{s}` is not a number")))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid("range", format!("need lo < hi, got {lo},{hi}")));
        }
        Ok((lo, hi))
    }

    pub fn margin(&self) -> anyhow::Result<f64> {
        let margin = self.margin.unwrap_or(biphoton::interference::DEFAULT_WITNESS_MARGIN);
        if !(margin.is_finite() && margin >= 0.0) {
            return Err(invalid("margin", format!("must be non-negative, got {margin}")));
        }
        Ok(margin)
    }
}

fn positive(key: &str, value: f64) -> anyhow::Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(invalid(key, format!("must be positive, got {value}")))
    }
}

/// Tags input-validation failures from the library as configuration errors.
pub fn config_error(e: biphoton::Error) -> anyhow::Error {
    match e {
        biphoton::Error::InvalidParameter { .. }
        | biphoton::Error::InvalidGrid(_)
        | biphoton::Error::UnderResolved(_) => ConfigError(e.to_string()).into(),
        other => other.into(),
    }
}

fn read_config(path: &Path) -> anyhow::Result<Settings> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| ConfigError(format!("config {}: {}", path.display(), e.message())).into())
}

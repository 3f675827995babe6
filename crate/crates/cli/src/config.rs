//! Run configuration: flags, a key=value file, and PLANAR_PREC_BITS.
//!
//! Precedence is flag, then file, then environment, then built-in default.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use num_complex::Complex64;
use planarop::asym::Theorem;
use planarop::{InitMode, PrecisionContext, ProblemParams};

use crate::CliError;

pub const PREC_ENV: &str = "PLANAR_PREC_BITS";
pub const DEFAULT_BITS: u32 = 256;
pub const DEFAULT_N: usize = 20;
pub const DEFAULT_SAMPLES: usize = 1024;
pub const DEFAULT_GAMMA: f64 = 0.05;
pub const DEFAULT_STEP: f64 = 1e-3;

/// Curves that can be drawn under the zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Overlay {
    Skeleton,
    Eta,
    Attraction,
    Gamma,
}

impl FromStr for Overlay {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "skeleton" => Ok(Overlay::Skeleton),
            "eta" => Ok(Overlay::Eta),
            "attraction" => Ok(Overlay::Attraction),
            "gamma" => Ok(Overlay::Gamma),
            o => Err(format!("unknown overlay {o:?} (skeleton|eta|attraction|gamma)")),
        }
    }
}

/// Comma-separated list, as one flag value or one config line.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<T>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<T>, String>>()
            .map(List)
    }
}

/// `re` or `re,im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub Complex64);

impl FromStr for Point {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        match parts.as_slice() {
            [re] => Ok(Point(Complex64::new(num(re)?, 0.0))),
            [re, im] => Ok(Point(Complex64::new(num(re)?, num(im)?))),
            _ => Err(format!("expected re or re,im, got {s:?}")),
        }
    }
}

macro_rules! overrides {
    ($($field:ident : $ty:ty = $key:literal, $help:literal;)*) => {
        /// Every setting as an optional value; flags and the config file both
        /// fill one of these.
        #[derive(Args, Debug, Clone, Default)]
        pub struct Overrides {
            $(
                #[arg(long = $key, global = true, help = $help)]
                pub $field: Option<$ty>,
            )*
        }

        impl Overrides {
            fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
                match key {
                    $(
                        $key => {
                            let v = value
                                .parse::<$ty>()
                                .map_err(|e| CliError::Usage(format!("config key {key}: {e}")))?;
                            self.$field = Some(v);
                        }
                    )*
                    _ => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
                }
                Ok(())
            }

            /// Field-wise `self` if present, else `other`.
            pub fn or(self, other: Overrides) -> Overrides {
                Overrides { $($field: self.$field.or(other.$field),)* }
            }
        }
    };
}

overrides! {
    a: f64 = "a", "charge position a > 0 [default: √2]";
    c: f64 = "c", "charge strength c > −1 [default: 1]";
    n: usize = "n", "degree [default: N, else 20]";
    big_n: f64 = "N", "scaling N [default: n]";
    eta: f64 = "eta", "sets c = e^{−η n}; also the level of the eta curve";
    gamma: f64 = "gamma", "γ of the droplet family [default: 0.05]";
    gammas: List<f64> = "gammas", "γ list for the hausdorff table";
    init: InitMode = "init", "paper | contour | oracle [default: paper if c = 1, else contour]";
    precision_bits: u32 = "precision-bits", "mantissa bits [default: $PLANAR_PREC_BITS, else 256]";
    overlay: List<Overlay> = "overlay", "skeleton,eta,attraction,gamma";
    out: PathBuf = "out", "output file [default: stdout]";
    svg: PathBuf = "svg", "SVG path for overlays [default: --out with .svg]";
    digits: usize = "digits", "truncate numbers to this many significant digits";
    samples: usize = "samples", "curve samples [default: 1024]";
    step: f64 = "step", "tracer step for 𝒮_γ [default: 1e-3]";
    z: Point = "z", "evaluation point re[,im]";
    ns: List<usize> = "ns", "N values for validate [default: 50,100,200]";
    theorem: Theorem = "theorem", "auto | fixed_c | uniform_c";
    u_band: f64 = "u-band", "half-width of the U band";
    d_beta_radius: f64 = "d-beta-radius", "radius of D_β";
    zeta: Point = "zeta", "argument of a special function re[,im]";
    k: u32 = "k", "index of c_k";
}

impl Overrides {
    /// Parses `key=value` lines. Blank lines and `#` comments are skipped;
    /// `_` in keys reads as `-`.
    pub fn from_config_text(text: &str) -> Result<Overrides, CliError> {
        let mut o = Overrides::default();
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = k.trim().replace('_', "-");
            if !seen.insert(key.clone()) {
                return Err(CliError::Usage(format!("config key {key} given twice")));
            }
            o.set(&key, v.trim())?;
        }
        Ok(o)
    }

    pub fn from_config_file(path: &Path) -> Result<Overrides, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Overrides::from_config_text(&text)
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ProblemParams,
    pub n: usize,
    pub ctx: PrecisionContext,
    pub init: InitMode,
    pub eta: Option<f64>,
    pub gamma: f64,
    pub gammas: Vec<f64>,
    pub overlay: Vec<Overlay>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub digits: Option<usize>,
    pub samples: usize,
    pub step: f64,
    pub z: Option<Complex64>,
    pub ns: Vec<usize>,
    pub theorem: Theorem,
    pub u_band: Option<f64>,
    pub d_beta_radius: Option<f64>,
    pub zeta: Option<Complex64>,
    pub k: u32,
}

impl RunConfig {
    /// `env_bits` is the raw PLANAR_PREC_BITS value, if set.
    pub fn resolve(o: Overrides, env_bits: Option<&str>) -> Result<RunConfig, CliError> {
        let n = match (o.n, o.big_n) {
            (Some(n), _) => n,
            (None, Some(big)) if big.fract() == 0.0 && big >= 1.0 => big as usize,
            (None, Some(big)) => return Err(CliError::Usage(format!("N = {big} is not a degree; pass --n as well"))),
            (None, None) => DEFAULT_N,
        };
        let big_n = o.big_n.unwrap_or(n as f64);
        let c = match (o.c, o.eta) {
            (Some(_), Some(_)) => return Err(CliError::Usage("--c and --eta are exclusive".into())),
            (Some(c), None) => c,
            (None, Some(eta)) => (-eta * n as f64).exp(),
            (None, None) => 1.0,
        };
        let params = ProblemParams::new(o.a.unwrap_or(std::f64::consts::SQRT_2), c, big_n)?;

        let bits = match (o.precision_bits, env_bits) {
            (Some(b), _) => b,
            (None, Some(s)) => s.trim().parse::<u32>().map_err(|_| {
                CliError::Core(planarop::Error::Precision(format!(
                    "{PREC_ENV}={s:?} is not a bit count"
                )))
            })?,
            (None, None) => DEFAULT_BITS,
        };
        let ctx = PrecisionContext::new(bits)?;

        let init = o
            .init
            .unwrap_or(if c == 1.0 { InitMode::Paper } else { InitMode::Contour });
        let mut overlay = o.overlay.map(|l| l.0).unwrap_or_default();
        if overlay.is_empty() && o.eta.is_some() {
            overlay.push(Overlay::Eta);
        }
        overlay.sort();
        overlay.dedup();
        if overlay.contains(&Overlay::Eta) && o.eta.is_none() {
            return Err(CliError::Usage("overlay eta needs --eta".into()));
        }
        let samples = o.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples < 16 {
            return Err(CliError::Usage("--samples must be at least 16".into()));
        }
        let svg = o.svg.or_else(|| {
            o.out
                .as_ref()
                .filter(|_| !overlay.is_empty())
                .map(|p| p.with_extension("svg"))
        });
        Ok(RunConfig {
            params,
            n,
            ctx,
            init,
            eta: o.eta,
            gamma: o.gamma.unwrap_or(DEFAULT_GAMMA),
            gammas: o.gammas.map(|l| l.0).unwrap_or_else(|| vec![0.1, 0.05, 0.02, 0.01]),
            overlay,
            out: o.out,
            svg,
            digits: o.digits,
            samples,
            step: o.step.unwrap_or(DEFAULT_STEP),
            z: o.z.map(|p| p.0),
            ns: o.ns.map(|l| l.0).unwrap_or_else(|| vec![50, 100, 200]),
            theorem: o.theorem.unwrap_or(Theorem::Auto),
            u_band: o.u_band,
            d_beta_radius: o.d_beta_radius,
            zeta: o.zeta.map(|p| p.0),
            k: o.k.unwrap_or(1),
        })
    }
}

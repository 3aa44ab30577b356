use serde::{Deserialize, Serialize};

use super::mix::{domain, KeyState, SeedContext};
use crate::error::{config, Result};

/// Distribution family of a lattice passage time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PassageKind {
    /// `Exp(rate)`; the per-edge parameter is the rate.
    Exponential,
    /// `theta * Uniform(a, b)`; the per-edge parameter is the multiplier `theta`.
    Uniform { a: f64, b: f64 },
    /// `theta * Pareto(scale, shape)`; the per-edge parameter is the multiplier `theta`.
    Pareto { scale: f64, shape: f64 },
}

/// A heterogeneous passage-time law: the family is shared, the parameter of
/// each edge is a fixed function of its key mapped into `param_range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PassageRepr", into = "PassageRepr")]
pub struct PassageTimeSpec {
    kind: PassageKind,
    param_range: (f64, f64),
}

impl PassageTimeSpec {
    pub fn new(kind: PassageKind, param_range: (f64, f64)) -> Result<Self> {
        let (lo, hi) = param_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return config(format!(
                "param_range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
            ));
        }
        match kind {
            PassageKind::Exponential => {}
            PassageKind::Uniform { a, b } => {
                if !(a > 0.0 && a < b && b.is_finite()) {
                    return config(format!("uniform passage times need 0 < a < b, got ({a}, {b})"));
                }
            }
            PassageKind::Pareto { scale, shape } => {
                if !(scale > 0.0 && scale.is_finite()) {
                    return config(format!("pareto scale must be positive, got {scale}"));
                }
                if !(shape > 2.0 && shape.is_finite()) {
                    return config(format!(
                        "pareto shape must exceed 2 for a finite second moment, got {shape}"
                    ));
                }
            }
        }
        Ok(PassageTimeSpec { kind, param_range })
    }

    pub fn exponential(rate_lo: f64, rate_hi: f64) -> Result<Self> {
        Self::new(PassageKind::Exponential, (rate_lo, rate_hi))
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::new(PassageKind::Uniform { a, b }, (1.0, 1.0))
    }

    pub fn pareto(scale: f64, shape: f64) -> Result<Self> {
        Self::new(PassageKind::Pareto { scale, shape }, (1.0, 1.0))
    }

    pub fn kind(&self) -> PassageKind {
        self.kind
    }

    pub fn param_range(&self) -> (f64, f64) {
        self.param_range
    }

    pub fn label(&self) -> String {
        let (lo, hi) = self.param_range;
        let range = if lo == hi {
            String::new()
        } else {
            format!("[{lo},{hi}]")
        };
        match self.kind {
            PassageKind::Exponential if lo == hi => format!("exponential({lo})"),
            PassageKind::Exponential => format!("exponential{range}"),
            PassageKind::Uniform { a, b } => format!("uniform({a},{b}){range}"),
            PassageKind::Pareto { scale, shape } => format!("pareto({scale},{shape}){range}"),
        }
    }

    /// Largest `p` with `sup_e E t^p < inf` (exclusive for Pareto).
    pub fn moment_order(&self) -> f64 {
        match self.kind {
            PassageKind::Pareto { shape, .. } => shape,
            _ => f64::INFINITY,
        }
    }

    /// Parameter of the edge with the given key hash; trial independent.
    fn edge_param(&self, key: KeyState) -> f64 {
        let (lo, hi) = self.param_range;
        if lo == hi {
            return lo;
        }
        lo + (hi - lo) * key.uniform()
    }

    /// Inverse transform for a fixed parameter; the forced-variate test hook.
    pub fn sample_with(&self, param: f64, u: f64) -> f64 {
        match self.kind {
            PassageKind::Exponential => -(-u).ln_1p() / param,
            PassageKind::Uniform { a, b } => param * (a + (b - a) * u),
            PassageKind::Pareto { scale, shape } => param * scale * (1.0 - u).powf(-1.0 / shape),
        }
    }

    pub fn mean_with(&self, param: f64) -> f64 {
        match self.kind {
            PassageKind::Exponential => 1.0 / param,
            PassageKind::Uniform { a, b } => param * 0.5 * (a + b),
            PassageKind::Pareto { scale, shape } => param * scale * shape / (shape - 1.0),
        }
    }

    pub fn second_moment_with(&self, param: f64) -> f64 {
        match self.kind {
            PassageKind::Exponential => 2.0 / (param * param),
            PassageKind::Uniform { a, b } => param * param * (a * a + a * b + b * b) / 3.0,
            PassageKind::Pareto { scale, shape } => {
                let x = param * scale;
                shape * x * x / (shape - 2.0)
            }
        }
    }

    /// The parameter maximizing both moments within `param_range`.
    fn heaviest_param(&self) -> f64 {
        match self.kind {
            PassageKind::Exponential => self.param_range.0,
            _ => self.param_range.1,
        }
    }

    /// `mu = sup_e E t(e)`.
    pub fn mu(&self) -> f64 {
        self.mean_with(self.heaviest_param())
    }

    /// `mu_2 = sup_e E t(e)^2`.
    pub fn mu2(&self) -> f64 {
        self.second_moment_with(self.heaviest_param())
    }
}

/// Identifies a lattice edge by its lexicographically smaller endpoint and axis.
#[derive(Debug, Clone, Copy)]
pub struct LatticeEdgeKey<'a> {
    pub base: &'a [i64],
    pub axis: usize,
}

fn absorb_key(mut s: KeyState, key: LatticeEdgeKey<'_>) -> KeyState {
    for &c in key.base {
        s = s.absorb(c as u64);
    }
    s.absorb(key.axis as u64)
}

/// Passage-time sampler bound to one trial, with the hash roots precomputed.
#[derive(Debug, Clone, Copy)]
pub struct PassageSampler {
    spec: PassageTimeSpec,
    time_root: KeyState,
    param_root: KeyState,
}

impl PassageSampler {
    pub fn new(spec: PassageTimeSpec, ctx: &SeedContext) -> Self {
        PassageSampler {
            spec,
            time_root: ctx.root(domain::PASSAGE_TIME),
            param_root: KeyState::new(domain::PASSAGE_PARAM),
        }
    }

    pub fn edge_param(&self, key: LatticeEdgeKey<'_>) -> f64 {
        self.spec.edge_param(absorb_key(self.param_root, key))
    }

    #[inline]
    pub fn time(&self, key: LatticeEdgeKey<'_>) -> f64 {
        let u = absorb_key(self.time_root, key).uniform();
        let param = self.edge_param(key);
        self.spec.sample_with(param, u)
    }
}

/// Passage time of one lattice edge in trial `ctx`.
pub fn passage_time(spec: &PassageTimeSpec, ctx: &SeedContext, key: LatticeEdgeKey<'_>) -> f64 {
    PassageSampler::new(*spec, ctx).time(key)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Exponential,
    Uniform,
    Pareto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PassageRepr {
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param_range: Option<[f64; 2]>,
}

impl TryFrom<PassageRepr> for PassageTimeSpec {
    type Error = crate::error::Error;

    fn try_from(r: PassageRepr) -> Result<Self> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| {
                crate::error::Error::Config(format!("passage kind {:?} requires `{name}`", r.kind))
            })
        };
        let forbid = |v: Option<f64>, name: &str| -> Result<()> {
            match v {
                Some(_) => config(format!("passage kind {:?} does not take `{name}`", r.kind)),
                None => Ok(()),
            }
        };
        let kind = match r.kind {
            KindTag::Exponential => {
                forbid(r.a, "a")?;
                forbid(r.b, "b")?;
                forbid(r.scale, "scale")?;
                forbid(r.shape, "shape")?;
                PassageKind::Exponential
            }
            KindTag::Uniform => {
                forbid(r.scale, "scale")?;
                forbid(r.shape, "shape")?;
                PassageKind::Uniform {
                    a: need(r.a, "a")?,
                    b: need(r.b, "b")?,
                }
            }
            KindTag::Pareto => {
                forbid(r.a, "a")?;
                forbid(r.b, "b")?;
                PassageKind::Pareto {
                    scale: r.scale.unwrap_or(1.0),
                    shape: need(r.shape, "shape")?,
                }
            }
        };
        let [lo, hi] = r.param_range.unwrap_or([1.0, 1.0]);
        PassageTimeSpec::new(kind, (lo, hi))
    }
}

impl From<PassageTimeSpec> for PassageRepr {
    fn from(s: PassageTimeSpec) -> Self {
        let (lo, hi) = s.param_range;
        let mut r = PassageRepr {
            kind: KindTag::Exponential,
            a: None,
            b: None,
            scale: None,
            shape: None,
            param_range: Some([lo, hi]),
        };
        match s.kind {
            PassageKind::Exponential => {}
            PassageKind::Uniform { a, b } => {
                r.kind = KindTag::Uniform;
                r.a = Some(a);
                r.b = Some(b);
            }
            PassageKind::Pareto { scale, shape } => {
                r.kind = KindTag::Pareto;
                r.scale = Some(scale);
                r.shape = Some(shape);
            }
        }
        r
    }
}

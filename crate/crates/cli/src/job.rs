//! Job files: what to analyse and which command to run.

use std::f64::consts::PI;

use center_focus::coefficient::Coefficient;
use center_focus::corpus;
use center_focus::rational::{parse_rational, Rational};
use center_focus::{AbelProblem, PlanarSystem, SolverConfig, TrigPoly};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Planar,
    Abel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Certify,
    Reduce,
    Scan,
    Crosscheck,
    Picard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `f`, `g` as `{"a": [...], "b": [...]}` over one period of `[−a, a]`.
    Trig,
    /// `[c₀, c₁, c₂]` for `c₀ + c₁ cos 2πt + c₂ sin 2πt` on `[−½, ½]`.
    Cos2pit,
    /// Ascending coefficients of a polynomial in `t`.
    Poly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelSpec {
    pub family: Family,
    pub f: Value,
    pub g: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub kind: Kind,
    pub command: Command,
    #[serde(default)]
    pub system: Option<PlanarSystem>,
    #[serde(default)]
    pub abel: Option<AbelSpec>,
    #[serde(default)]
    pub config: SolverConfig,
    #[serde(default)]
    pub rho_grid: Option<Vec<f64>>,
    /// Initial value for `picard`.
    #[serde(default)]
    pub rho: Option<f64>,
    /// Starting radius for `crosscheck`.
    #[serde(default)]
    pub r0: Option<f64>,
}

/// The validated payload.
pub enum Payload {
    Planar(PlanarSystem),
    Abel(AbelProblem),
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn rational_list(v: &Value, what: &str) -> Result<Vec<Rational>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(format!("{what} must be a list of rationals")))?;
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => parse_rational(s).map_err(|e| invalid(format!("{what}: {e}"))),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
            other => Err(invalid(format!("{what}: {other} is not an exact rational"))),
        })
        .collect()
}

impl AbelSpec {
    pub fn to_problem(&self) -> Result<AbelProblem, CliError> {
        let trig = |v: &Value, what: &str| {
            serde_json::from_value::<TrigPoly>(v.clone()).map_err(|e| invalid(format!("{what}: {e}")))
        };
        let (f, g, default_width) = match self.family {
            Family::Trig => (Coefficient::Trig(trig(&self.f, "f")?), Coefficient::Trig(trig(&self.g, "g")?), PI),
            Family::Cos2pit => {
                let (f, g) = (rational_list(&self.f, "f")?, rational_list(&self.g, "g")?);
                if f.len() > 3 || g.len() > 3 {
                    return Err(invalid("cos2pit coefficients are [c0, c1, c2]"));
                }
                if self.half_width.is_some_and(|a| a != 0.5) {
                    return Err(invalid("the cos2pit family lives on [-1/2, 1/2]"));
                }
                (corpus::cos2pit(&f), corpus::cos2pit(&g), 0.5)
            }
            Family::Poly => {
                let (f, g) = (rational_list(&self.f, "f")?, rational_list(&self.g, "g")?);
                (Coefficient::Poly(f), Coefficient::Poly(g), 1.0)
            }
        };
        let a = self.half_width.unwrap_or(default_width);
        if !(a > 0.0 && a.is_finite()) {
            return Err(invalid(format!("half_width must be positive, got {a}")));
        }
        Ok(AbelProblem::free(f, g, a))
    }

    /// The Abel equation of a reduced planar system, as a re-ingestable spec.
    pub fn from_trig(f: &TrigPoly, g: &TrigPoly) -> AbelSpec {
        AbelSpec {
            family: Family::Trig,
            f: serde_json::to_value(f).expect("trig polynomial serializes"),
            g: serde_json::to_value(g).expect("trig polynomial serializes"),
            half_width: Some(PI),
        }
    }
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("job spec: {e}")))
    }

    /// Schema checks that serde cannot express.
    pub fn payload(&self) -> Result<Payload, CliError> {
        let payload = match (self.kind, &self.system, &self.abel) {
            (Kind::Planar, Some(sys), None) => Payload::Planar(sys.clone()),
            (Kind::Abel, None, Some(spec)) => Payload::Abel(spec.to_problem()?),
            (Kind::Planar, _, _) => return Err(invalid("a planar job needs `system` and no `abel` block")),
            (Kind::Abel, _, _) => return Err(invalid("an abel job needs `abel` and no `system` block")),
        };
        if self.kind == Kind::Abel && matches!(self.command, Command::Reduce | Command::Crosscheck) {
            return Err(invalid(format!("`{:?}` needs a planar system", self.command).to_lowercase()));
        }
        if let Some(grid) = &self.rho_grid {
            if grid.is_empty() || grid.iter().any(|r| !r.is_finite()) {
                return Err(invalid("rho_grid must be a non-empty list of finite numbers"));
            }
        }
        for (name, v) in [("rho", self.rho), ("r0", self.r0)] {
            if v.is_some_and(|v| !(v.is_finite() && v != 0.0)) {
                return Err(invalid(format!("{name} must be finite and nonzero")));
            }
        }
        self.config.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(payload)
    }
}

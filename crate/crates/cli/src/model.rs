//! Resolution of the flat flag namespace into a concrete state generator.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use csdiscord::format::StateDocument;
use csdiscord::models::{
    gibbs_state, nanopore_correlations, nanopore_state, pseudopure_state, xxz_dm_hamiltonian, NanoporeSettings,
    PseudopureSettings, XxzDmCouplings,
};
use csdiscord::qmat::{CMat4, C64};
use csdiscord::states::DensityMatrix;

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Nanopore,
    XxzDm,
    Pseudopure,
    /// A state file mixed with white noise.
    File,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Nanopore => "nanopore",
            Family::XxzDm => "xxz-dm",
            Family::Pseudopure => "pseudopure",
            Family::File => "file",
        }
    }

    /// Real-valued parameters the family accepts, in flag spelling.
    fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::Nanopore => &["N", "beta", "at"],
            Family::XxzDm => &["J", "Jz", "Dx", "beta"],
            Family::Pseudopure => &["alpha", "a", "b"],
            Family::File => &["noise"],
        }
    }

    fn sweepable(self) -> &'static [&'static str] {
        match self {
            Family::Nanopore => &["at", "beta"],
            Family::XxzDm => &["J", "Jz", "Dx", "beta"],
            Family::Pseudopure => &["alpha"],
            Family::File => &["noise"],
        }
    }
}

/// Model flags shared by `discord`, `sweep` and `generate`.
#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// State file for the `file` family.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Number of particles in the pore (nanopore, default 20).
    #[arg(long = "N")]
    pub n: Option<u32>,
    /// Inverse temperature (nanopore default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Dimensionless time (nanopore).
    #[arg(long, allow_negative_numbers = true)]
    pub at: Option<f64>,
    #[arg(long = "J", allow_negative_numbers = true)]
    pub j: Option<f64>,
    #[arg(long = "Jz", allow_negative_numbers = true)]
    pub jz: Option<f64>,
    #[arg(long = "Dx", allow_negative_numbers = true)]
    pub dx: Option<f64>,
    /// Weight of the pure component (pseudopure).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Real amplitude on |00> and |11> (pseudopure).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Real amplitude on |01> and |10> (pseudopure).
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// White-noise weight mixed into a file state.
    #[arg(long, allow_negative_numbers = true)]
    pub noise: Option<f64>,
}

impl ModelArgs {
    fn given(&self) -> BTreeMap<&'static str, f64> {
        let mut m = BTreeMap::new();
        let fields = [
            ("N", self.n.map(f64::from)),
            ("beta", self.beta),
            ("at", self.at),
            ("J", self.j),
            ("Jz", self.jz),
            ("Dx", self.dx),
            ("alpha", self.alpha),
            ("a", self.a),
            ("b", self.b),
            ("noise", self.noise),
        ];
        for (name, v) in fields {
            if let Some(v) = v {
                m.insert(name, v);
            }
        }
        m
    }
}

/// A family with every parameter fixed except possibly one swept parameter.
#[derive(Debug, Clone)]
pub struct Model {
    pub family: Family,
    values: BTreeMap<&'static str, f64>,
    base: Option<DensityMatrix>,
    pub swept: Option<&'static str>,
}

pub fn read_state(path: &Path) -> CliResult<DensityMatrix> {
    Ok(read_document(path)?.to_state()?)
}

pub fn read_document(path: &Path) -> CliResult<StateDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

impl Model {
    /// Checks the flags against the family. `swept` names the parameter that
    /// the caller will supply per point.
    pub fn resolve(args: &ModelArgs, swept: Option<&str>) -> CliResult<Model> {
        let family = match (args.family, &args.state) {
            (Some(f), _) => f,
            (None, Some(_)) => Family::File,
            (None, None) => return Err(usage("no --family or state file given")),
        };
        if family != Family::File && args.state.is_some() {
            return Err(usage(format!("a state file does not apply to family {}", family.name())));
        }
        let given = args.given();
        for name in given.keys() {
            if !family.parameters().contains(name) {
                return Err(usage(format!("--{name} does not apply to family {}", family.name())));
            }
        }
        let swept = match swept {
            None => None,
            Some(s) => {
                let Some(&name) = family.sweepable().iter().find(|&&n| n == s) else {
                    return Err(usage(format!(
                        "family {} cannot sweep {s}; choose one of {}",
                        family.name(),
                        family.sweepable().join(", ")
                    )));
                };
                if given.contains_key(name) {
                    return Err(usage(format!("--{name} is swept and cannot also be fixed")));
                }
                Some(name)
            }
        };

        let mut values = given;
        match family {
            Family::Nanopore => {
                values.entry("N").or_insert(20.0);
                values.entry("beta").or_insert(1.0);
            }
            Family::Pseudopure => match (values.get("a").copied(), values.get("b").copied()) {
                (None, None) => {
                    values.insert("a", FRAC_1_SQRT_2);
                    values.insert("b", 0.0);
                }
                (Some(a), None) => {
                    values.insert("b", complement(a)?);
                }
                (None, Some(b)) => {
                    values.insert("a", complement(b)?);
                }
                (Some(_), Some(_)) => {}
            },
            Family::File => {
                values.entry("noise").or_insert(0.0);
            }
            Family::XxzDm => {}
        }
        for &name in family.parameters() {
            if Some(name) != swept && !values.contains_key(name) {
                return Err(usage(format!("family {} needs --{name}", family.name())));
            }
        }

        let base = match (family, &args.state) {
            (Family::File, Some(path)) => Some(read_state(path)?),
            (Family::File, None) => return Err(usage("family file needs --state <path>")),
            _ => None,
        };
        Ok(Model { family, values, base, swept })
    }

    /// The state with the swept parameter (if any) set to `x`.
    pub fn state(&self, x: Option<f64>) -> CliResult<DensityMatrix> {
        let mut v = self.values.clone();
        match (self.swept, x) {
            (Some(name), Some(x)) => {
                v.insert(name, x);
            }
            (None, None) => {}
            _ => unreachable!("sweep value supplied iff a parameter is swept"),
        }
        let rho = match self.family {
            Family::Nanopore => {
                let settings = NanoporeSettings::at(v["N"] as u32, v["at"], v["beta"]);
                nanopore_state(&nanopore_correlations(&settings)?)?
            }
            Family::XxzDm => {
                let c = XxzDmCouplings { j: v["J"], jz: v["Jz"], dx: v["Dx"], beta: v["beta"] };
                gibbs_state(&xxz_dm_hamiltonian(&c), c.beta)?
            }
            Family::Pseudopure => pseudopure_state(&PseudopureSettings {
                alpha: v["alpha"],
                a: C64::new(v["a"], 0.0),
                b: C64::new(v["b"], 0.0),
            })?,
            Family::File => {
                let noise = v["noise"];
                if !(0.0..=1.0).contains(&noise) {
                    return Err(csdiscord::Error::InvalidParameter(format!("noise must lie in [0, 1], got {noise}")).into());
                }
                let base = self.base.as_ref().expect("file family always carries a state");
                let m = *base.matrix() * (1.0 - noise) + CMat4::identity() * (0.25 * noise);
                DensityMatrix::new(m)?
            }
        };
        Ok(rho)
    }
}

/// The amplitude that completes `x` to `|a|^2 + |b|^2 = 1/2`.
fn complement(x: f64) -> CliResult<f64> {
    let rest = 0.5 - x * x;
    if rest < -1e-12 {
        return Err(csdiscord::Error::InvalidParameter(format!("amplitude {x} exceeds 1/sqrt(2)")).into());
    }
    Ok(rest.max(0.0).sqrt())
}

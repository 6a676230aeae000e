//! Turning command-line state, scheme and basis flags into library values.

use std::fs;
use std::path::Path;

use qbcap_core::measurement::BasisKind;
use qbcap_core::states::DensityMatrixJson;
use qbcap_core::{
    bell_diagonal, example2, werner, x_state, DensityMatrix, MixingWeights, QubitPairEnergies,
    Scheme, XStateParams,
};
use serde::de::DeserializeOwned;

use crate::args::{EnergyArgs, ProtocolArgs, StateArgs};
use crate::error::{CliError, CliResult};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        if e.is_data() {
            // Well-formed JSON whose content is not a valid state or spec.
            CliError::Invalid(qbcap_core::Error::InvalidArgument(msg))
        } else {
            CliError::usage(msg)
        }
    })
}

/// A state together with a short label for reports.
pub struct LabelledState {
    pub label: String,
    pub state: DensityMatrix,
}

pub fn state(args: &StateArgs) -> CliResult<LabelledState> {
    let (label, state) = if let Some(a) = args.werner {
        (format!("werner(a={a})"), werner(a)?)
    } else if let Some(c) = &args.bell_diag {
        (
            format!("bell_diagonal(c1={}, c2={}, c3={})", c[0], c[1], c[2]),
            bell_diagonal(c[0], c[1], c[2])?,
        )
    } else if let Some(x) = args.example2 {
        (format!("example2(x={x})"), example2(x)?)
    } else if let Some(path) = &args.x_state {
        let p: XStateParams = read_json(path)?;
        (format!("x_state({})", path.display()), x_state(&p)?)
    } else if let Some(path) = &args.state {
        let json: DensityMatrixJson = read_json(path)?;
        (format!("state({})", path.display()), DensityMatrix::from_json(&json)?)
    } else {
        return Err(CliError::usage("no state given"));
    };
    Ok(LabelledState { label, state })
}

pub fn energies(args: &EnergyArgs) -> CliResult<QubitPairEnergies> {
    Ok(QubitPairEnergies::new(args.eps_a, args.eps_b)?)
}

pub fn scheme(words: Option<&[String]>) -> CliResult<Scheme> {
    let Some(words) = words else {
        return Ok(Scheme::Uniform);
    };
    match words.split_first() {
        Some((kind, rest)) if kind == "uniform" => {
            if rest.is_empty() {
                Ok(Scheme::Uniform)
            } else {
                Err(CliError::usage("`--scheme uniform` takes no weights"))
            }
        }
        Some((kind, rest)) if kind == "weighted" => {
            if rest.is_empty() {
                return Err(CliError::usage("`--scheme weighted` needs one weight per outcome"));
            }
            let mu = rest
                .iter()
                .map(|w| w.parse::<f64>().map_err(|_| CliError::usage(format!("bad weight `{w}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Scheme::Weighted(MixingWeights::new(mu)?))
        }
        _ => Err(CliError::usage("`--scheme` must be `uniform` or `weighted MU...`")),
    }
}

pub fn basis(words: Option<&[String]>) -> CliResult<BasisKind> {
    let Some(words) = words else {
        return Ok(BasisKind::Computational);
    };
    let angle = |w: &String| w.parse::<f64>().map_err(|_| CliError::usage(format!("bad angle `{w}`")));
    match words {
        [kind] if kind == "computational" => Ok(BasisKind::Computational),
        [kind, theta, phi] if kind == "rotated" => Ok(BasisKind::Rotated {
            theta: angle(theta)?,
            phi: angle(phi)?,
        }),
        _ => Err(CliError::usage("`--basis` must be `computational` or `rotated THETA PHI`")),
    }
}

pub fn protocol(args: &ProtocolArgs) -> CliResult<(Scheme, BasisKind)> {
    Ok((scheme(args.scheme.as_deref())?, basis(args.basis.as_deref())?))
}

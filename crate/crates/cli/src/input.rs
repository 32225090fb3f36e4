//! Loading graphs and term lists and turning them into an exact model.

use std::fs;
use std::path::Path;

use hamcycle_qaoa::scalar::parse_coefficient;
use hamcycle_qaoa::{
    compile_graph, parse_graph, strip_constant, to_term_list, ExactIsing, Graph, PauliTermList,
    Rational64,
};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::Options;

/// Where a model came from, recorded verbatim in the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Value>,
}

/// How the raw model was normalized.
#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    pub rescale: String,
    pub keep_constant: bool,
}

pub struct LoadedModel {
    pub model: ExactIsing,
    pub input: InputRecord,
    pub normalization: Normalization,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn coefficient(flag: &str, text: &str) -> Result<Rational64, CliError> {
    parse_coefficient(text)
        .ok_or_else(|| CliError::input(format!("--{flag}: cannot parse {text:?}")))
}

pub fn load_graph(opts: &Options) -> Result<(Graph, InputRecord), CliError> {
    let path = opts
        .graph
        .as_deref()
        .ok_or_else(|| CliError::input("--graph is required"))?;
    let g = parse_graph(&read(path)?)?;
    let record = InputRecord {
        graph_file: Some(path.display().to_string()),
        graph: Some(serde_json::from_str(&g.to_json())?),
        terms_file: None,
        terms: None,
    };
    Ok((g, record))
}

/// Load `--graph` (compiled with `--weight`) or `--terms`, then apply the
/// constant and rescale flags. `compile_defaults` selects the defaults of
/// the `compile` command: keep the constant, factor 1.
pub fn load_model(opts: &Options, compile_defaults: bool) -> Result<LoadedModel, CliError> {
    let keep_constant = if opts.keep_constant {
        true
    } else if opts.drop_constant {
        false
    } else {
        compile_defaults || opts.terms.is_some()
    };
    let default_rescale = if compile_defaults || opts.terms.is_some() {
        "1"
    } else {
        "2"
    };
    let rescale_text = opts.rescale.as_deref().unwrap_or(default_rescale);
    let rescale = coefficient("rescale", rescale_text)?;
    if rescale <= Rational64::from_integer(0) {
        return Err(CliError::input("--rescale must be positive"));
    }

    let (raw, input, weight) = match (&opts.graph, &opts.terms) {
        (Some(_), _) => {
            let (g, input) = load_graph(opts)?;
            let a = coefficient("weight", &opts.weight)?;
            (compile_graph(&g, a)?, input, Some(opts.weight.clone()))
        }
        (None, Some(path)) => {
            let list = PauliTermList::<Rational64>::parse_json(&read(path)?)?;
            let input = InputRecord {
                graph_file: None,
                graph: None,
                terms_file: Some(path.display().to_string()),
                terms: Some(serde_json::to_value(list.to_file())?),
            };
            (list.to_ising()?, input, None)
        }
        (None, None) => return Err(CliError::input("one of --graph or --terms is required")),
    };

    let model = if keep_constant {
        raw.map_coefficients(|c| c * rescale)
    } else {
        strip_constant(&raw, Some(rescale))
    };
    Ok(LoadedModel {
        model,
        input,
        normalization: Normalization {
            weight,
            rescale: rescale_text.to_string(),
            keep_constant,
        },
    })
}

/// Term list of a model, with the identity coefficient only when nonzero.
pub fn term_list(m: &ExactIsing) -> PauliTermList<Rational64> {
    let list = to_term_list(m);
    if *m.constant() == Rational64::from_integer(0) {
        list
    } else {
        list.with_constant(*m.constant())
    }
}

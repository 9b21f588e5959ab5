//! Versioned text serialization of trained classifiers.
//!
//! Format (`faultsvm-model v1`), line oriented, space separated, floats
//! printed in shortest round-trip form so a save/load cycle reproduces every
//! value bit for bit:
//!
//! ```text
//! faultsvm-model v1
//! norm_means <15 floats>
//! norm_scales <15 floats>
//! module <name>              # r, y, b, g, section — in this order
//! kernel <family> [params]   # linear | poly <degree> <offset>
//!                            # | rbf <sigma2> | mlp <kappa> <theta>
//! gamma <float>
//! bias <float>
//! residual <float>
//! cv_accuracy <float|none>
//! support <n> <dim>
//! alpha <n floats>
//! x <dim floats>             # n of these, one per support vector
//! end
//! ```

use std::fs;
use std::path::Path;

use crate::classifier::{FaultClassifier, ModuleReport, TrainingMetadata, MODULE_NAMES};
use crate::error::{Error, Result};
use crate::features::NormStats;
use crate::kernel::KernelSpec;
use crate::lssvm::LssvmModel;

pub const MODEL_FORMAT_HEADER: &str = "faultsvm-model v1";

fn push_floats(line: &mut String, values: &[f64]) {
    for v in values {
        line.push(' ');
        line.push_str(&format!("{v}"));
    }
}

/// Serialize a classifier to the v1 text format.
pub fn model_to_string(clf: &FaultClassifier) -> String {
    let mut out = String::new();
    out.push_str(MODEL_FORMAT_HEADER);
    out.push('\n');

    let mut means = String::from("norm_means");
    push_floats(&mut means, &clf.norm_stats.means);
    out.push_str(&means);
    out.push('\n');
    let mut scales = String::from("norm_scales");
    push_floats(&mut scales, &clf.norm_stats.scales);
    out.push_str(&scales);
    out.push('\n');

    let models = [
        &clf.model_r,
        &clf.model_y,
        &clf.model_b,
        &clf.model_g,
        &clf.model_section,
    ];
    for (i, model) in models.iter().enumerate() {
        let name = MODULE_NAMES[i];
        out.push_str(&format!("module {name}\n"));
        match model.kernel {
            KernelSpec::Linear => out.push_str("kernel linear\n"),
            KernelSpec::Polynomial { degree, offset } => {
                out.push_str(&format!("kernel poly {degree} {offset}\n"))
            }
            KernelSpec::Rbf { sigma2 } => out.push_str(&format!("kernel rbf {sigma2}\n")),
            KernelSpec::Mlp { kappa, theta } => {
                out.push_str(&format!("kernel mlp {kappa} {theta}\n"))
            }
        }
        out.push_str(&format!("gamma {}\n", model.gamma));
        out.push_str(&format!("bias {}\n", model.bias));
        out.push_str(&format!("residual {}\n", model.solve_residual));
        let cv = clf
            .metadata
            .modules
            .get(i)
            .and_then(|m| m.cv_accuracy)
            .map(|v| format!("{v}"))
            .unwrap_or_else(|| "none".to_string());
        out.push_str(&format!("cv_accuracy {cv}\n"));
        out.push_str(&format!(
            "support {} {}\n",
            model.n_support(),
            model.dim()
        ));
        let mut alpha = String::from("alpha");
        push_floats(&mut alpha, &model.alphas);
        out.push_str(&alpha);
        out.push('\n');
        for x in &model.support_inputs {
            let mut line = String::from("x");
            push_floats(&mut line, x);
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

struct LineReader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> LineReader<'a> {
    fn next(&mut self) -> Result<(usize, &'a str)> {
        self.lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::ModelFormat("unexpected end of file".into()))
    }

    fn expect_tag(&mut self, tag: &str) -> Result<Vec<&'a str>> {
        let (lineno, line) = self.next()?;
        let mut parts = line.split_whitespace();
        let found = parts.next().unwrap_or("");
        if found != tag {
            return Err(Error::ModelFormat(format!(
                "line {lineno}: expected `{tag}`, found `{found}`"
            )));
        }
        Ok(parts.collect())
    }
}

fn parse_f64(token: &str, what: &str) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|_| Error::ModelFormat(format!("bad float for {what}: {token:?}")))
}

fn parse_floats(tokens: &[&str], expected: usize, what: &str) -> Result<Vec<f64>> {
    if tokens.len() != expected {
        return Err(Error::ModelFormat(format!(
            "{what}: expected {expected} values, found {}",
            tokens.len()
        )));
    }
    tokens.iter().map(|t| parse_f64(t, what)).collect()
}

/// Parse the v1 text format back into a classifier.
pub fn model_from_str(text: &str) -> Result<FaultClassifier> {
    let mut reader = LineReader {
        lines: text.lines().enumerate(),
    };
    let (_, header) = reader.next()?;
    if header.trim() != MODEL_FORMAT_HEADER {
        return Err(Error::ModelFormat(format!(
            "unsupported header {header:?}, expected {MODEL_FORMAT_HEADER:?}"
        )));
    }

    let means_tokens = reader.expect_tag("norm_means")?;
    let means = means_tokens
        .iter()
        .map(|t| parse_f64(t, "norm_means"))
        .collect::<Result<Vec<_>>>()?;
    let scales_tokens = reader.expect_tag("norm_scales")?;
    let scales = parse_floats(&scales_tokens, means.len(), "norm_scales")?;
    if means.is_empty() {
        return Err(Error::ModelFormat("empty normalization statistics".into()));
    }
    let norm_stats = NormStats { means, scales };

    let mut models: Vec<LssvmModel> = Vec::with_capacity(5);
    let mut metadata = TrainingMetadata::default();
    for &expected_name in MODULE_NAMES.iter() {
        let module_tokens = reader.expect_tag("module")?;
        if module_tokens != [expected_name] {
            return Err(Error::ModelFormat(format!(
                "expected `module {expected_name}`, found `module {}`",
                module_tokens.join(" ")
            )));
        }
        let kernel_tokens = reader.expect_tag("kernel")?;
        let kernel = match kernel_tokens.as_slice() {
            ["linear"] => KernelSpec::Linear,
            ["poly", degree, offset] => KernelSpec::Polynomial {
                degree: degree.parse().map_err(|_| {
                    Error::ModelFormat(format!("bad polynomial degree {degree:?}"))
                })?,
                offset: parse_f64(offset, "poly offset")?,
            },
            ["rbf", sigma2] => KernelSpec::Rbf {
                sigma2: parse_f64(sigma2, "rbf sigma2")?,
            },
            ["mlp", kappa, theta] => KernelSpec::Mlp {
                kappa: parse_f64(kappa, "mlp kappa")?,
                theta: parse_f64(theta, "mlp theta")?,
            },
            other => {
                return Err(Error::ModelFormat(format!(
                    "unknown kernel spec `{}`",
                    other.join(" ")
                )))
            }
        };
        kernel.validate().map_err(|e| {
            Error::ModelFormat(format!("module {expected_name}: invalid kernel: {e}"))
        })?;

        let gamma = parse_f64(
            reader
                .expect_tag("gamma")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing gamma value".into()))?,
            "gamma",
        )?;
        let bias = parse_f64(
            reader
                .expect_tag("bias")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing bias value".into()))?,
            "bias",
        )?;
        let residual = parse_f64(
            reader
                .expect_tag("residual")?
                .first()
                .ok_or_else(|| Error::ModelFormat("missing residual value".into()))?,
            "residual",
        )?;
        let cv_tokens = reader.expect_tag("cv_accuracy")?;
        let cv_accuracy = match cv_tokens.as_slice() {
            ["none"] => None,
            [v] => Some(parse_f64(v, "cv_accuracy")?),
            _ => return Err(Error::ModelFormat("bad cv_accuracy line".into())),
        };

        let support_tokens = reader.expect_tag("support")?;
        let [n_str, dim_str] = support_tokens.as_slice() else {
            return Err(Error::ModelFormat("bad support line".into()));
        };
        let n: usize = n_str
            .parse()
            .map_err(|_| Error::ModelFormat(format!("bad support count {n_str:?}")))?;
        let dim: usize = dim_str
            .parse()
            .map_err(|_| Error::ModelFormat(format!("bad support dim {dim_str:?}")))?;
        if n == 0 || dim == 0 {
            return Err(Error::ModelFormat("support counts must be positive".into()));
        }

        let alpha_tokens = reader.expect_tag("alpha")?;
        let alphas = parse_floats(&alpha_tokens, n, "alpha")?;
        let mut support_inputs = Vec::with_capacity(n);
        for _ in 0..n {
            let x_tokens = reader.expect_tag("x")?;
            support_inputs.push(parse_floats(&x_tokens, dim, "support vector")?);
        }
        let end_tokens = reader.expect_tag("end")?;
        if !end_tokens.is_empty() {
            return Err(Error::ModelFormat("trailing tokens after `end`".into()));
        }

        metadata.modules.push(ModuleReport {
            name: expected_name,
            kernel: kernel.clone(),
            gamma,
            cv_accuracy,
            solve_residual: residual,
        });
        models.push(LssvmModel {
            kernel,
            gamma,
            alphas,
            bias,
            support_inputs,
            norm_stats: Some(norm_stats.clone()),
            solve_residual: residual,
        });
    }

    let mut drain = models.into_iter();
    Ok(FaultClassifier {
        model_r: drain.next().unwrap(),
        model_y: drain.next().unwrap(),
        model_b: drain.next().unwrap(),
        model_g: drain.next().unwrap(),
        model_section: drain.next().unwrap(),
        norm_stats,
        metadata,
    })
}

/// Write a classifier to a file in the v1 text format.
pub fn save_classifier(clf: &FaultClassifier, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, model_to_string(clf))?;
    Ok(())
}

/// Load a classifier from a v1 model file.
pub fn load_classifier(path: impl AsRef<Path>) -> Result<FaultClassifier> {
    let text = fs::read_to_string(path)?;
    model_from_str(&text)
}

//! Implementations of the five subcommands.

use std::path::{Path, PathBuf};

use faultsvm::{
    default_test_scenarios, default_train_scenarios, synthesize_scenarios, FaultClass,
    FaultClassifier, GridSearchConfig, KernelFamily, KernelSpec, LabeledDataset, LineParameters,
    ModelSelection, ScenarioGrid, TrainingSet, DEFAULT_DURATION_CYCLES,
};

use crate::config::{parse_f64_list, parse_snr, resolve, resolve_opt, resolve_raw, ConfigFile};
use crate::csvio;
use crate::report;
use crate::{ClassifyArgs, CliError, EvaluateArgs, GenerateArgs, SweepArgs, TrainArgs};

fn default_scenario_out(features_out: &Path) -> PathBuf {
    let stem = features_out
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "dataset".to_string());
    features_out.with_file_name(format!("{stem}.scenarios.csv"))
}

pub fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let out = resolve(args.out, &file, "out", PathBuf::from("features.csv"))?;
    let scenario_out = match resolve_opt(args.scenario_out, &file, "scenario-out")? {
        Some(p) => p,
        None => default_scenario_out(&out),
    };
    let seed: u64 = resolve(args.seed, &file, "seed", 42)?;
    let snr_db = match resolve_raw(args.snr_db, &file, "snr-db") {
        Some(raw) => parse_snr(&raw)?,
        None => f64::INFINITY,
    };
    let duration = resolve(args.duration_cycles, &file, "duration-cycles", DEFAULT_DURATION_CYCLES)?;

    let axis_flags = [
        ("fault-types", args.fault_types.as_ref().map(|_| ())),
        ("locations", args.locations.as_ref().map(|_| ())),
        ("resistances", args.resistances.as_ref().map(|_| ())),
        ("inception-angles", args.inception_angles.as_ref().map(|_| ())),
        ("compensations", args.compensations.as_ref().map(|_| ())),
        ("none-load-angles", args.none_load_angles.as_ref().map(|_| ())),
        ("none-locations", args.none_locations.as_ref().map(|_| ())),
    ];
    let any_axis_flag = axis_flags.iter().any(|(_, v)| v.is_some())
        || args.load_angle.is_some()
        || axis_flags
            .iter()
            .any(|(key, _)| file.get(key).is_some())
        || file.get("load-angle").is_some();

    let scenarios = if let Some(preset) = resolve_raw(args.preset, &file, "preset") {
        if any_axis_flag {
            return Err(CliError::io(
                "--preset conflicts with custom grid axis options",
            ));
        }
        match preset.as_str() {
            "train" => default_train_scenarios(snr_db),
            "test" => default_test_scenarios(snr_db),
            other => {
                return Err(CliError::io(format!(
                    "unknown preset {other:?}: expected train or test"
                )))
            }
        }
    } else if any_axis_flag {
        let mut grid = ScenarioGrid::base();
        grid.snr_db = snr_db;
        if let Some(raw) = resolve_raw(args.fault_types, &file, "fault-types") {
            grid.fault_types = raw
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|e| CliError::io(format!("{e}"))))
                .collect::<Result<_, _>>()?;
        }
        if let Some(raw) = resolve_raw(args.locations, &file, "locations") {
            grid.locations_pct = parse_f64_list(&raw, "locations")?;
        }
        if let Some(raw) = resolve_raw(args.resistances, &file, "resistances") {
            grid.resistances_ohm = parse_f64_list(&raw, "resistances")?;
        }
        if let Some(raw) = resolve_raw(args.inception_angles, &file, "inception-angles") {
            grid.inception_angles_deg = parse_f64_list(&raw, "inception-angles")?;
        }
        if let Some(raw) = resolve_raw(args.compensations, &file, "compensations") {
            grid.compensations_pct = parse_f64_list(&raw, "compensations")?;
        }
        if let Some(la) = resolve_opt(args.load_angle, &file, "load-angle")? {
            grid.load_angle_deg = la;
        }
        if let Some(raw) = resolve_raw(args.none_load_angles, &file, "none-load-angles") {
            grid.no_fault_load_angles_deg = parse_f64_list(&raw, "none-load-angles")?;
        }
        if let Some(raw) = resolve_raw(args.none_locations, &file, "none-locations") {
            grid.no_fault_locations_pct = parse_f64_list(&raw, "none-locations")?;
        }
        grid.scenarios()?
    } else {
        default_train_scenarios(snr_db)
    };

    let line = LineParameters::default();
    let records = synthesize_scenarios(&line, &scenarios, seed, duration)?;
    let dataset = LabeledDataset::from_records(&records)?;

    csvio::write_file(&out, &csvio::features_to_csv(&dataset))?;
    csvio::write_file(&scenario_out, &csvio::scenarios_to_csv(&records))?;
    println!(
        "wrote {} records to {} (scenarios: {})",
        records.len(),
        out.display(),
        scenario_out.display()
    );
    Ok(())
}

/// Selection policy resolved from train flags.
fn resolve_selection(args: &TrainArgs, file: &ConfigFile) -> Result<ModelSelection, CliError> {
    let kernel_name = resolve_raw(args.kernel.clone(), file, "kernel").unwrap_or_else(|| "rbf".into());
    let family: KernelFamily = kernel_name
        .parse()
        .map_err(|e| CliError::io(format!("{e}")))?;
    let gamma = resolve_opt(args.gamma, file, "gamma")?;
    let sigma2 = resolve_opt(args.sigma2, file, "sigma2")?;
    let degree = resolve_opt(args.degree, file, "degree")?;
    let offset = resolve(args.offset, file, "offset", 1.0)?;
    let kappa = resolve(args.kappa, file, "kappa", 1.0)?;
    let theta = resolve(args.theta, file, "theta", -1.0)?;
    let folds = resolve(args.folds, file, "folds", 5usize)?;
    let seed = resolve(args.seed, file, "seed", 42u64)?;

    if let Some(gamma) = gamma {
        let kernel = match family {
            KernelFamily::Linear => KernelSpec::Linear,
            KernelFamily::Rbf => {
                let Some(sigma2) = sigma2 else {
                    return Err(CliError::io(
                        "--gamma with the rbf kernel also requires --sigma2",
                    ));
                };
                KernelSpec::Rbf { sigma2 }
            }
            KernelFamily::Polynomial => KernelSpec::Polynomial {
                degree: degree.unwrap_or(3),
                offset,
            },
            KernelFamily::Mlp => KernelSpec::Mlp { kappa, theta },
        };
        return Ok(ModelSelection::Fixed { kernel, gamma });
    }

    let mut config = GridSearchConfig {
        folds,
        seed,
        ..GridSearchConfig::default()
    };
    if let Some(raw) = resolve_raw(args.gammas.clone(), file, "gammas") {
        config.gamma_grid = parse_f64_list(&raw, "gammas")?;
    }
    if let Some(raw) = resolve_raw(args.sigma2s.clone(), file, "sigma2s") {
        config.sigma2_grid = parse_f64_list(&raw, "sigma2s")?;
    }
    if let Some(raw) = resolve_raw(args.degrees.clone(), file, "degrees") {
        config.degree_grid = raw
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| CliError::io(format!("degrees: bad integer {s:?}")))
            })
            .collect::<Result<_, _>>()?;
    }
    Ok(ModelSelection::Grid { family, config })
}

pub fn cmd_train(args: TrainArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let dataset_path = resolve_opt(args.dataset.clone(), &file, "dataset")?
        .ok_or_else(|| CliError::io("train requires --dataset"))?;
    let out = resolve(args.out.clone(), &file, "out", PathBuf::from("model.txt"))?;
    let selection = resolve_selection(&args, &file)?;

    let data = csvio::parse_feature_csv(&csvio::read_file(&dataset_path)?)?;
    let classifier = faultsvm::train_modular(&data, &selection)?;

    faultsvm::save_classifier(&classifier, &out).map_err(CliError::from)?;
    println!("trained 5 modules on {} records -> {}", data.len(), out.display());
    for module in &classifier.metadata.modules {
        let kernel = describe_kernel(&module.kernel);
        match module.cv_accuracy {
            Some(cv) => println!(
                "  model_{:<8} {kernel} gamma={} cv_accuracy={:.4} residual={:.3e}",
                module.name, module.gamma, cv, module.solve_residual
            ),
            None => println!(
                "  model_{:<8} {kernel} gamma={} (fixed) residual={:.3e}",
                module.name, module.gamma, module.solve_residual
            ),
        }
    }
    Ok(())
}

fn describe_kernel(kernel: &KernelSpec) -> String {
    match kernel {
        KernelSpec::Linear => "kernel=linear".to_string(),
        KernelSpec::Polynomial { degree, offset } => {
            format!("kernel=poly degree={degree} offset={offset}")
        }
        KernelSpec::Rbf { sigma2 } => format!("kernel=rbf sigma2={sigma2}"),
        KernelSpec::Mlp { kappa, theta } => format!("kernel=mlp kappa={kappa} theta={theta}"),
    }
}

pub fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let model_path = resolve_opt(args.model, &file, "model")?
        .ok_or_else(|| CliError::io("evaluate requires --model"))?;
    let dataset_path = resolve_opt(args.dataset, &file, "dataset")?
        .ok_or_else(|| CliError::io("evaluate requires --dataset"))?;

    let classifier = faultsvm::load_classifier(&model_path).map_err(CliError::from)?;
    let data = csvio::parse_feature_csv(&csvio::read_file(&dataset_path)?)?;
    let report = classifier.evaluate(&data)?;

    let text = report::report_to_text(&report);
    print!("{text}");
    if let Some(out) = resolve_opt(args.out, &file, "out")? {
        csvio::write_file(&out, &text)?;
    }
    if let Some(csv_out) = resolve_opt(args.csv_out, &file, "csv-out")? {
        csvio::write_file(&csv_out, &report::report_to_csv(&report))?;
    }
    Ok(())
}

pub fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let dataset_path = resolve_opt(args.dataset, &file, "dataset")?
        .ok_or_else(|| CliError::io("sweep requires --dataset"))?;
    let out = resolve(args.out, &file, "out", PathBuf::from("sweep.csv"))?;
    let module = resolve_raw(args.module, &file, "module").unwrap_or_else(|| "all".into());
    let folds = resolve(args.folds, &file, "folds", 5usize)?;
    let seed = resolve(args.seed, &file, "seed", 42u64)?;
    let defaults = GridSearchConfig::default();
    let gammas = match resolve_raw(args.gammas, &file, "gammas") {
        Some(raw) => parse_f64_list(&raw, "gammas")?,
        None => defaults.gamma_grid.clone(),
    };
    let sigma2s = match resolve_raw(args.sigma2s, &file, "sigma2s") {
        Some(raw) => parse_f64_list(&raw, "sigma2s")?,
        None => defaults.sigma2_grid.clone(),
    };

    let modules: Vec<&str> = match module.as_str() {
        "all" => faultsvm::MODULE_NAMES.to_vec(),
        name if faultsvm::MODULE_NAMES.contains(&name) => vec![
            faultsvm::MODULE_NAMES
                .iter()
                .copied()
                .find(|&m| m == name)
                .unwrap(),
        ],
        other => {
            return Err(CliError::io(format!(
                "unknown module {other:?}: expected r, y, b, g, section or all"
            )))
        }
    };

    let data = csvio::parse_feature_csv(&csvio::read_file(&dataset_path)?)?;
    let raws: Vec<[f64; faultsvm::FEATURE_DIM]> = data.examples.iter().map(|e| e.raw).collect();
    let stats = faultsvm::fit_normalizer(&raws)?;
    let inputs: Vec<Vec<f64>> = raws
        .iter()
        .map(|r| Ok(faultsvm::normalize(r, &stats)?.values.to_vec()))
        .collect::<faultsvm::Result<_>>()?;

    let mut csv = String::from("gamma,sigma2,module,cv_accuracy\n");
    for name in &modules {
        let targets: Vec<f64> = data
            .examples
            .iter()
            .map(|ex| {
                let v = match *name {
                    "r" => ex.label.r,
                    "y" => ex.label.y,
                    "b" => ex.label.b,
                    "g" => ex.label.g,
                    "section" => ex.label.section,
                    _ => unreachable!(),
                };
                v as f64
            })
            .collect();
        let training = TrainingSet::new(inputs.clone(), targets)?;
        for &gamma in &gammas {
            for &sigma2 in &sigma2s {
                let acc = match faultsvm::cv_accuracy(
                    &training,
                    &KernelSpec::Rbf { sigma2 },
                    gamma,
                    folds,
                    seed,
                ) {
                    Ok(acc) => acc,
                    Err(faultsvm::Error::Numerical { .. }) => 0.0,
                    Err(other) => return Err(other.into()),
                };
                csv.push_str(&format!("{gamma},{sigma2},{name},{acc}\n"));
            }
        }
    }
    csvio::write_file(&out, &csv)?;
    println!(
        "wrote {} sweep rows to {}",
        modules.len() * gammas.len() * sigma2s.len(),
        out.display()
    );
    Ok(())
}

pub fn cmd_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let model_path = resolve_opt(args.model, &file, "model")?
        .ok_or_else(|| CliError::io("classify requires --model"))?;
    let record_path = resolve_opt(args.record, &file, "record")?
        .ok_or_else(|| CliError::io("classify requires --record"))?;

    let classifier: FaultClassifier =
        faultsvm::load_classifier(&model_path).map_err(CliError::from)?;
    let raw = csvio::parse_single_record(&csvio::read_file(&record_path)?)?;
    let outcome = classifier.classify_features(&raw)?;

    let verdict = match outcome.decoded {
        faultsvm::DecodedFault::Fault(class) => class.name().to_string(),
        faultsvm::DecodedFault::NoFault => FaultClass::NoFault.name().to_string(),
        faultsvm::DecodedFault::Invalid { code } => {
            println!(
                "INVALID code=({},{},{},{}) section={:+} d_r={:.4} d_y={:.4} d_b={:.4} d_g={:.4} d_section={:.4}",
                code.0,
                code.1,
                code.2,
                code.3,
                outcome.section,
                outcome.decisions[0],
                outcome.decisions[1],
                outcome.decisions[2],
                outcome.decisions[3],
                outcome.section_decision
            );
            return Err(CliError {
                code: 4,
                message: "module outputs form no valid fault code".into(),
            });
        }
    };
    println!(
        "{verdict} section={:+} d_r={:.4} d_y={:.4} d_b={:.4} d_g={:.4} d_section={:.4}",
        outcome.section,
        outcome.decisions[0],
        outcome.decisions[1],
        outcome.decisions[2],
        outcome.decisions[3],
        outcome.section_decision
    );
    Ok(())
}

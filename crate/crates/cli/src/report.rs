//! Rendering of classification reports as text and as machine-readable CSV.

use std::fmt::Write as _;

use faultsvm::{ClassificationReport, FaultClass};

pub fn report_to_text(report: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "records: {}", report.total);
    let _ = writeln!(out, "overall accuracy: {:.4}", report.overall_accuracy);
    let _ = writeln!(
        out,
        "section accuracy: {:.4} (over {} faulted records)",
        report.section_accuracy, report.section_total
    );
    let _ = writeln!(out, "invalid codes: {}", report.invalid_code_count);
    let _ = writeln!(out, "per-class accuracy:");
    for (i, class) in FaultClass::ALL.iter().enumerate() {
        if report.per_class_counts[i] == 0 {
            continue;
        }
        let _ = writeln!(
            out,
            "  {:<6} {:>4}/{:<4} {:.4}",
            class.name(),
            report.confusion[i][i],
            report.per_class_counts[i],
            report.per_class_accuracy[i]
        );
    }
    let _ = writeln!(out, "confusion matrix (rows truth, columns prediction):");
    let _ = write!(out, "  {:<7}", "");
    for class in FaultClass::ALL {
        let _ = write!(out, "{:>7}", class.name());
    }
    let _ = writeln!(out, "{:>9}", "INVALID");
    for (i, class) in FaultClass::ALL.iter().enumerate() {
        let _ = write!(out, "  {:<7}", class.name());
        for j in 0..11 {
            let _ = write!(out, "{:>7}", report.confusion[i][j]);
        }
        let _ = writeln!(out, "{:>9}", report.invalid_by_class[i]);
    }
    out
}

pub fn report_to_csv(report: &ClassificationReport) -> String {
    let mut out = String::from("kind,truth,predicted,value\n");
    let _ = writeln!(out, "summary,,records,{}", report.total);
    let _ = writeln!(out, "summary,,overall_accuracy,{}", report.overall_accuracy);
    let _ = writeln!(out, "summary,,section_accuracy,{}", report.section_accuracy);
    let _ = writeln!(out, "summary,,section_records,{}", report.section_total);
    let _ = writeln!(out, "summary,,invalid_codes,{}", report.invalid_code_count);
    for (i, class) in FaultClass::ALL.iter().enumerate() {
        let _ = writeln!(
            out,
            "class,{},accuracy,{}",
            class.name(),
            report.per_class_accuracy[i]
        );
    }
    for (i, truth) in FaultClass::ALL.iter().enumerate() {
        for (j, predicted) in FaultClass::ALL.iter().enumerate() {
            let _ = writeln!(
                out,
                "confusion,{},{},{}",
                truth.name(),
                predicted.name(),
                report.confusion[i][j]
            );
        }
        let _ = writeln!(
            out,
            "confusion,{},INVALID,{}",
            truth.name(),
            report.invalid_by_class[i]
        );
    }
    out
}

#!/usr/bin/env python3
"""Smoke test for the faultsvm_py extension module.

Builds nothing itself: it looks for the compiled cdylib under
``target/release`` (falling back to ``target/debug``), copies it next to a
temp directory under the import name Python expects, and runs the full
pipeline: synthesize datasets, train, evaluate, classify, save/load.

Usage:
    cargo build -p faultsvm-py --release
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def locate_extension() -> Path:
    names = ["libfaultsvm_py.so", "faultsvm_py.so", "libfaultsvm_py.dylib", "faultsvm_py.pyd"]
    for profile in ("release", "debug"):
        for name in names:
            candidate = REPO_ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    sys.exit(
        "faultsvm_py cdylib not found; run `cargo build -p faultsvm-py --release` first"
    )


def import_module():
    source = locate_extension()
    staging = Path(tempfile.mkdtemp(prefix="faultsvm_py_"))
    suffix = ".pyd" if source.suffix == ".pyd" else ".so"
    shutil.copy2(source, staging / f"faultsvm_py{suffix}")
    sys.path.insert(0, str(staging))
    import faultsvm_py  # noqa: E402

    return faultsvm_py


def check(label: str, condition: bool, detail: str = "") -> None:
    status = "ok" if condition else "FAIL"
    print(f"  [{status}] {label}{(' ' + detail) if detail else ''}")
    if not condition:
        sys.exit(1)


def main() -> None:
    fsvm = import_module()
    print("faultsvm_py smoke test")

    # Kernel arithmetic.
    check("linear kernel dot product", fsvm.kernel_eval("linear", [1.0, 2.0], [3.0, 4.0]) == 11.0)
    rbf = fsvm.kernel_eval("rbf", [0.0, 0.0], [2.0, 0.0], sigma2=4.0)
    check("rbf kernel value", abs(rbf - math.exp(-1.0)) < 1e-12, f"{rbf:.6f}")

    # Fault-type code table.
    check("decode R-G", fsvm.decode_fault_type(1, -1, -1, 1) == "R-G")
    check("decode NONE", fsvm.decode_fault_type(-1, -1, -1, -1) == "NONE")
    check("decode invalid", fsvm.decode_fault_type(1, -1, -1, -1) == "INVALID")

    # Binary LS-SVM on a hand-checkable set.
    svm = fsvm.Lssvm.train([[-1.0], [1.0]], [-1.0, 1.0], kernel="linear", gamma=1e6)
    check("two-point bias", abs(svm.bias) < 1e-9, f"{svm.bias:.2e}")
    check("two-point decision", abs(svm.decision_value([1.0]) - 1.0) < 1e-5)
    check("two-point predict", svm.predict([-0.5]) == -1)

    # Full pipeline on the default protocol.
    train = fsvm.Dataset.default_train(seed=42)
    test = fsvm.Dataset.default_test(seed=4242)
    check("train size", len(train) == 208, str(len(train)))
    check("test size", len(test) == 916, str(len(test)))

    clf = fsvm.Classifier.train(train, kernel="rbf", gamma=100.0, sigma2=4.0)
    for name, kernel, gamma, residual in clf.modules():
        check(f"module {name} residual", residual <= 1e-8, f"{residual:.2e}")

    report = clf.evaluate(test)
    check(
        "overall accuracy >= 0.95",
        report.overall_accuracy >= 0.95,
        f"{report.overall_accuracy:.4f}",
    )
    check(
        "section accuracy >= 0.90",
        report.section_accuracy >= 0.90,
        f"{report.section_accuracy:.4f}",
    )

    # Classify the first test record and compare to its label.
    features = test.features()
    names = test.fault_names()
    outcome = clf.classify(features[0])
    check("first record class", outcome.fault == names[0], f"{outcome.fault} vs {names[0]}")
    check("first record valid", outcome.valid)

    # Persistence round trip preserves decisions bit for bit.
    with tempfile.TemporaryDirectory() as tmp:
        path = str(Path(tmp) / "model.txt")
        clf.save(path)
        reloaded = fsvm.Classifier.load(path)
        a = clf.classify(features[0])
        b = reloaded.classify(features[0])
        check(
            "save/load decisions identical",
            a.decisions == b.decisions and a.section_decision == b.section_decision,
        )

    print("all smoke checks passed")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerate the desk-scale datasets under data/ in LIBSVM text format.

Sources are classic public datasets bundled offline with scikit-learn and
statsmodels, picked so that a single training pass is meaningful (a few
hundred samples or more). Feature columns are z-scored so no raw-scale
column dominates the unit-norm preprocessing; targets are left untouched.
Values are written with 17 significant digits so parsing round-trips
exactly.
"""

import os

import numpy as np


def write_libsvm(path, X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    std = X.std(axis=0)
    std[std == 0.0] = 1.0
    X = (X - X.mean(axis=0)) / std
    with open(path, "w") as out:
        for row, target in zip(X, y):
            feats = " ".join(
                f"{j + 1}:{v:.17g}" for j, v in enumerate(row) if v != 0.0
            )
            out.write(f"{target:.17g} {feats}".rstrip() + "\n")
    print(f"wrote {path}: {X.shape[0]} samples, {X.shape[1]} features")


def main():
    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
    os.makedirs(out_dir, exist_ok=True)

    from sklearn.datasets import load_breast_cancer, load_diabetes
    import statsmodels.api as sm

    # Disease progression from ten physiological measurements (n=442).
    db = load_diabetes()
    write_libsvm(os.path.join(out_dir, "diabetes.libsvm"), db.data, db.target)

    # Outpatient visit counts from the RAND health insurance study (n=20190).
    randhie = sm.datasets.randhie.load_pandas().data
    cols = [c for c in randhie.columns if c != "mdvis"]
    write_libsvm(
        os.path.join(out_dir, "randhie.libsvm"),
        randhie[cols].to_numpy(),
        randhie["mdvis"].to_numpy(),
    )

    # Party identification score from survey demographics (n=944).
    anes = sm.datasets.anes96.load_pandas().data
    cols = ["TVnews", "selfLR", "ClinLR", "DoleLR", "age", "educ", "income", "logpopul"]
    write_libsvm(
        os.path.join(out_dir, "anes96.libsvm"),
        anes[cols].to_numpy(),
        anes["PID"].to_numpy(),
    )

    # Binary tumor diagnosis from 30 image features (n=569).
    bc = load_breast_cancer()
    write_libsvm(
        os.path.join(out_dir, "breast_cancer.libsvm"),
        bc.data,
        np.where(bc.target == 1, 1.0, -1.0),
    )

    with open(os.path.join(out_dir, "manifest.txt"), "w") as out:
        out.write("# name path task\n")
        out.write("diabetes diabetes.libsvm reg\n")
        out.write("randhie randhie.libsvm reg\n")
        out.write("anes96 anes96.libsvm reg\n")
        out.write("breast_cancer breast_cancer.libsvm cls\n")


if __name__ == "__main__":
    main()

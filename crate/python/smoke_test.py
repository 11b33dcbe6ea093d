#!/usr/bin/env python3
"""Smoke test for the veridict_py extension module.

Build the module first:

    cargo build --release -p veridict-python

then run:

    python3 python/smoke_test.py

The script locates the built cdylib under target/, stages it as an
importable module, and drives the pipeline end to end on the bundled
fixture corpus.
"""
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> pathlib.Path:
    names = {
        "linux": "libveridict_py.so",
        "darwin": "libveridict_py.dylib",
        "win32": "veridict_py.dll",
    }
    lib_name = names.get(sys.platform, "libveridict_py.so")
    candidates = [
        ROOT / "target" / profile / lib_name for profile in ("release", "debug")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "veridict_py is not built; run `cargo build --release -p veridict-python`"
        )
    stage = pathlib.Path(tempfile.mkdtemp(prefix="veridict_py_"))
    suffix = ".pyd" if sys.platform == "win32" else ".so"
    shutil.copy2(built, stage / f"veridict_py{suffix}")
    return stage


checks = 0


def check(name: str, condition: bool) -> None:
    global checks
    if not condition:
        sys.exit(f"FAIL: {name}")
    checks += 1
    print(f"ok: {name}")


def main() -> None:
    sys.path.insert(0, str(stage_module()))
    import veridict_py as v

    corpus = v.load_csv(str(ROOT / "fixtures" / "mini_corpus.csv"))
    check("fixture loads 40 reviews", len(corpus) == 40)
    counts = corpus.label_counts()
    check("labels balanced", counts == {"truthful": 20, "deceptive": 20})
    check("review dict", corpus.review(0)["label"] == "truthful")

    train, test = corpus.train_test_split(test_fraction=0.2, seed=0)
    check("holdout sizes", (len(train), len(test)) == (32, 8))
    folds = corpus.kfold(k=5, seed=0)
    check("kfold shape", len(folds) == 5 and all(len(te) == 8 for _, te in folds))

    check(
        "normalize",
        v.normalize("Great Hotel!!! visit http://x.co now") == "great hotel visit now",
    )
    check("preprocess", v.preprocess("The food is TASTY!") == ["food", "tasty"])

    report = v.evaluate_experiment(
        corpus,
        classifier="nb",
        features="count",
        ngram=(1, 2),
        max_features=1000,
        protocol="holdout",
        seed=3,
    )
    check("evaluate returns accuracy", 0.0 <= report["accuracy"] <= 1.0)
    check("confusion sums to test size", sum(map(sum, report["confusion"])) == 8)

    kf = v.evaluate_experiment(
        corpus, classifier="pa", features="tfidf", ngram=(1, 2),
        max_features=1000, protocol="kfold", seed=3,
    )
    folds = kf["per_fold"]
    check("kfold per-fold list", len(folds) == 5)
    check(
        "kfold mean consistency",
        abs(kf["accuracy"] - sum(folds) / len(folds)) < 1e-12,
    )

    bigger = v.augment(train, n=2, fraction=0.2, seed=1)
    check("augment size law", len(bigger) == len(train) * 3)

    model = v.train(
        corpus, classifier="pa", features="tfidf", ngram=(1, 2), max_features=2000,
        seed=0,
    )
    effusive = "absolutely amazing wonderful perfect luxurious stay ever"
    mundane = "the radiator rattled and the elevator was slow near our floor"
    check("effusive text flagged", model.predict(effusive) == "deceptive")
    check("decision sign agrees", (model.decision(effusive) >= 0))

    with tempfile.TemporaryDirectory() as td:
        path = str(pathlib.Path(td) / "model.json")
        model.save(path)
        reloaded = v.load_model(path)
        for text in (effusive, mundane, ""):
            check(
                f"round-trip prediction stable ({text[:20]!r})",
                model.predict(text) == reloaded.predict(text)
                and model.decision(text) == reloaded.decision(text),
            )

    try:
        v.evaluate_experiment(corpus, classifier="forest")
    except ValueError as e:
        check("unknown classifier raises ValueError", "forest" in str(e))
    else:
        sys.exit("FAIL: bogus classifier accepted")

    print(f"\nsmoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()

"""Versioned JSON serialization for trained models.

Floats go through Python's repr (shortest round-trip form), so a saved and
reloaded model reproduces bit-identical predictions.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import MalformedInputError
from .learners import (
    GradientBoostingModel,
    LinearSvmModel,
    Model,
    RandomForestModel,
    StackingModel,
)
from .tree import DecisionTree

FORMAT_VERSION = 1


def _svm_to_dict(m: LinearSvmModel) -> dict:
    return {"w": [float(x) for x in m.w], "b": m.b, "C": m.C, "eta": m.eta,
            "mean": [float(x) for x in m.mean],
            "std": [float(x) for x in m.std], "epochs_run": m.epochs_run}


def _svm_from_dict(d: dict) -> LinearSvmModel:
    return LinearSvmModel(w=np.array(d["w"]), b=d["b"], C=d["C"], eta=d["eta"],
                          mean=np.array(d["mean"]), std=np.array(d["std"]),
                          epochs_run=d["epochs_run"])


def _rf_to_dict(m: RandomForestModel) -> dict:
    return {"trees": [t.to_dict() for t in m.trees],
            "features_per_split": m.features_per_split, "seed": m.seed}


def _rf_from_dict(d: dict) -> RandomForestModel:
    return RandomForestModel(
        trees=[DecisionTree.from_dict(t) for t in d["trees"]],
        features_per_split=d["features_per_split"], seed=d["seed"])


def _gb_to_dict(m: GradientBoostingModel) -> dict:
    return {"f0": m.f0, "eta": m.eta, "trees": [t.to_dict() for t in m.trees]}


def _gb_from_dict(d: dict) -> GradientBoostingModel:
    return GradientBoostingModel(
        f0=d["f0"], eta=d["eta"],
        trees=[DecisionTree.from_dict(t) for t in d["trees"]])


def model_to_dict(model: Model) -> dict:
    if isinstance(model, LinearSvmModel):
        payload = {"model_type": "svm", "model": _svm_to_dict(model)}
    elif isinstance(model, RandomForestModel):
        payload = {"model_type": "rf", "model": _rf_to_dict(model)}
    elif isinstance(model, GradientBoostingModel):
        payload = {"model_type": "gb", "model": _gb_to_dict(model)}
    elif isinstance(model, StackingModel):
        payload = {"model_type": "stacking", "model": {
            "folds": model.folds,
            "svm": _svm_to_dict(model.svm),
            "gb": _gb_to_dict(model.gb),
            "rf": _rf_to_dict(model.rf),
            "meta": _rf_to_dict(model.meta),
        }}
    else:
        raise MalformedInputError(f"cannot serialize {type(model).__name__}")
    payload["format_version"] = FORMAT_VERSION
    return payload


def model_from_dict(payload: dict) -> Model:
    if payload.get("format_version") != FORMAT_VERSION:
        raise MalformedInputError(
            f"unsupported model format version {payload.get('format_version')}")
    kind = payload["model_type"]
    d = payload["model"]
    if kind == "svm":
        return _svm_from_dict(d)
    if kind == "rf":
        return _rf_from_dict(d)
    if kind == "gb":
        return _gb_from_dict(d)
    if kind == "stacking":
        return StackingModel(svm=_svm_from_dict(d["svm"]),
                             gb=_gb_from_dict(d["gb"]),
                             rf=_rf_from_dict(d["rf"]),
                             meta=_rf_from_dict(d["meta"]),
                             folds=d["folds"])
    raise MalformedInputError(f"unknown model type {kind!r}")


def save_model(model: Model, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(model), sort_keys=True, indent=1) + "\n")


def load_model(path: Union[str, Path]) -> Model:
    return model_from_dict(json.loads(Path(path).read_text()))

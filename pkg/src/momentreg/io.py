"""Text file formats for datasets (JSON lines) and trained models (JSON).

Dataset file: an optional first line ``{"format_version": 1, "meta": {...}}``
followed by one ``{"xs": [...], "y": ...}`` object per bag.

Model file: one JSON document holding the basis, the normalization mode,
``G``, ``yG`` and ``Y`` with 17 significant digits, so loading reproduces
every statistic bit for bit.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .basis import BasisSpec
from .exceptions import FormatError, InputError
from .moments import Bag, BagDataset, Normalization
from .regression import TrainedModel

FORMAT_VERSION = 1
MODEL_KIND = "momentreg.model"


def _atomic_write(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path):
    with open(path, encoding="utf-8", newline=None) as fh:
        return fh.read()


def save_dataset(dataset: BagDataset, path) -> None:
    lines = [json.dumps({"format_version": FORMAT_VERSION, "meta": dataset.meta},
                        sort_keys=True)]
    for bag in dataset:
        lines.append(json.dumps({"xs": bag.observations.tolist(), "y": bag.label}))
    _atomic_write(path, "\n".join(lines) + "\n")


def _parse_record(obj, lineno):
    if not isinstance(obj, dict):
        raise FormatError("record is not a JSON object", lineno)
    for key in ("xs", "y"):
        if key not in obj:
            raise FormatError(f"missing field {key!r}", lineno)
    xs, y = obj["xs"], obj["y"]
    if not isinstance(xs, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in xs):
        raise FormatError("'xs' must be an array of numbers", lineno)
    if not isinstance(y, (int, float)) or isinstance(y, bool):
        raise FormatError("'y' must be a number", lineno)
    try:
        return Bag(xs, y)
    except InputError as exc:
        raise FormatError(str(exc), lineno) from None


def load_dataset(path) -> BagDataset:
    meta = {}
    bags = []
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON ({exc.msg})", lineno) from None
        if isinstance(obj, dict) and "format_version" in obj and not bags:
            if obj["format_version"] != FORMAT_VERSION:
                raise FormatError(
                    f"unsupported format_version {obj['format_version']!r}", lineno)
            meta = obj.get("meta") or {}
            continue
        bags.append(_parse_record(obj, lineno))
    if not bags:
        raise FormatError(f"{os.fspath(path)}: no bag records")
    return BagDataset(tuple(bags), meta=meta)


def _num(v):
    return format(float(v), ".17g")


def _vector(v):
    return "[" + ", ".join(_num(x) for x in v) + "]"


def _matrix(m, indent):
    pad = " " * indent
    rows = (",\n" + pad).join(_vector(row) for row in m)
    return "[\n" + pad + rows + "\n" + " " * (indent - 2) + "]"


def dumps_model(model: TrainedModel) -> str:
    basis = model.basis
    fields = [
        ("format_version", str(FORMAT_VERSION)),
        ("kind", json.dumps(MODEL_KIND)),
        ("basis", f'{{"family": {json.dumps(basis.family.value)}, '
                  f'"degree_count": {basis.degree_count}, '
                  f'"domain": {_vector(basis.domain)}}}'),
        ("mode", json.dumps(model.mode.value)),
        ("bag_count", str(model.bag_count)),
        ("mean_bag_size", _num(model.mean_bag_size)),
        ("label_range", _vector(model.label_range)),
        ("degeneracy_flag", json.dumps(model.degeneracy_flag)),
        ("G", _matrix(model.gram, 4)),
        ("yG", _matrix(model.ygram, 4)),
        ("Y", _vector(model.ymoments)),
    ]
    return "{\n" + ",\n".join(f'  "{k}": {v}' for k, v in fields) + "\n}\n"


def save_model(model: TrainedModel, path) -> None:
    _atomic_write(path, dumps_model(model))


def _reject_constant(name):
    raise ValueError(f"non-finite number {name}")


def loads_model(text: str) -> TrainedModel:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except (json.JSONDecodeError, ValueError) as exc:
        raise FormatError(f"model file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("model file must hold a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported model format_version {version!r}, "
                          f"expected {FORMAT_VERSION}")
    missing = [k for k in ("basis", "mode", "mean_bag_size", "label_range", "G", "yG", "Y")
               if k not in doc]
    if missing:
        raise FormatError(f"model file lacks fields {missing}")
    try:
        basis = BasisSpec.from_dict(doc["basis"])
        d = basis.degree_count
        gram = np.array(doc["G"], dtype=np.float64)
        ygram = np.array(doc["yG"], dtype=np.float64)
        ymom = np.array(doc["Y"], dtype=np.float64)
        if ymom.shape != (d,):
            raise FormatError(f"|Y| = {ymom.size} does not match d_x = {d}")
        for name, mat in (("G", gram), ("yG", ygram)):
            if mat.shape != (d, d):
                raise FormatError(f"{name} has shape {mat.shape}, expected ({d}, {d})")
            if not np.array_equal(mat, mat.T):
                raise FormatError(f"{name} is not symmetric")
        return TrainedModel(
            basis=basis,
            mode=Normalization(doc["mode"]),
            gram=gram,
            ygram=ygram,
            ymoments=ymom,
            mean_bag_size=doc["mean_bag_size"],
            label_range=tuple(doc["label_range"]),
            bag_count=doc.get("bag_count", 1),
        )
    except FormatError:
        raise
    except (InputError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid model file: {exc}") from None


def load_model(path) -> TrainedModel:
    return loads_model(_read_text(path))


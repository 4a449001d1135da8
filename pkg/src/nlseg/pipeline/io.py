"""Plain-text file formats.

* features: CSV, one frame per row, optional single header line;
* boundaries: one integer per line, ascending, each the first frame of a
  new segment;
* config: flat ``key = value`` lines, ``#`` starts a comment;
* evaluation records: one JSON object per line.
"""

from __future__ import annotations

import json
from dataclasses import fields
from pathlib import Path
from typing import Dict, Iterable

import numpy as np

from nlseg.features import FeatureSequence
from nlseg.segtree import Segmentation

RECORD_FIELDS = ("sequence_id", "mode", "n_segments", "precision", "recall", "f_measure")


def read_features(path, header: bool = False) -> FeatureSequence:
    data = np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2, dtype=float)
    if data.size == 0:
        raise ValueError(f"{path}: no frames")
    return FeatureSequence(data)


def write_matrix(path, matrix: np.ndarray):
    # 17 significant digits round-trip every double exactly
    np.savetxt(path, np.atleast_2d(np.asarray(matrix, dtype=float)), fmt="%.17g", delimiter=",")


def write_features(path, seq: FeatureSequence):
    write_matrix(path, seq.frames)


def read_boundaries(path, K: int) -> Segmentation:
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not an integer boundary: {line!r}") from None
    return Segmentation(tuple(values), K)


def write_boundaries(path, segmentation: Segmentation):
    Path(path).write_text("".join(f"{b}\n" for b in segmentation.boundaries))


def read_key_values(path) -> Dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        entries[key.replace("-", "_")] = value
    return entries


def parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def parse_number_or_word(value: str, word: str, kind=float):
    value = value.strip()
    return value if value == word else kind(value)


def coerce(cls, entries: Dict[str, str]) -> dict:
    """Convert string values to the field types of dataclass ``cls``; unknown keys are left out."""
    parsers = {
        "mode": str,
        "nl_input": str,
        "bandwidth": lambda v: parse_number_or_word(v, "auto", float),
        "n_segments": lambda v: parse_number_or_word(v, "sweep", int),
        "max_segments": lambda v: None if v.strip().lower() == "none" else int(v),
        "include_self": parse_bool,
        "dump_stages": parse_bool,
    }
    out = {}
    for f in fields(cls):
        if f.name not in entries:
            continue
        value = entries[f.name]
        if not isinstance(value, str):
            out[f.name] = value
            continue
        if f.name in parsers:
            parse = parsers[f.name]
        elif isinstance(f.default, bool):
            parse = parse_bool
        elif isinstance(f.default, int):
            parse = int
        else:
            parse = float
        try:
            out[f.name] = parse(value)
        except ValueError:
            raise ValueError(f"bad value for {f.name}: {value!r}") from None
    return out


def format_record(record: dict) -> str:
    return json.dumps({key: record[key] for key in RECORD_FIELDS})


def write_records(stream, records: Iterable[dict]):
    for record in records:
        stream.write(format_record(record) + "\n")


def read_records(path) -> list:
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]

"""File formats: CSV tables and JSON set functions and distributions.

CSV dialect: comma-separated, first row holds attribute names, UTF-8.
Cells whose text is a canonical integer load as int, everything else as
str; interval labels like "[15,19]" are quoted on output because they
contain the delimiter.

Mass and belief files share one JSON shape::

    {"frame": ["r0", "r1"], "assignments": [
        {"subset": ["r0", "r1"], "value": 1.0}]}

Subsets not listed carry value 0.  Probability files are::

    {"frame": ["r0", "r1"], "p": [0.5, 0.5]}
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Union

import numpy as np

from .belief import MassAssignment, ProbabilityDistribution
from .frames import Frame
from .reident import MaskedTable, Table


def _parse_cell(text: str) -> Union[int, str]:
    try:
        value = int(text)
    except ValueError:
        return text
    return value if str(value) == text else text


def read_table_csv(path: Union[str, Path]) -> Table:
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise ValueError(f"{path}: empty CSV, expected a header row")
    header = tuple(rows[0])
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(
                f"{path}:{lineno}: row has {len(row)} cells, "
                f"expected {len(header)}"
            )
        records.append(tuple(_parse_cell(cell) for cell in row))
    if not records:
        raise ValueError(f"{path}: no data rows")
    return Table(header, tuple(records))


def write_masked_csv(masked: MaskedTable, path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(masked.attributes)
        writer.writerows(masked.rows)


def masked_csv_text(masked: MaskedTable) -> str:
    import io as _io

    buffer = _io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(masked.attributes)
    writer.writerows(masked.rows)
    return buffer.getvalue()


def set_function_to_dict(frame: Frame, values: np.ndarray) -> dict:
    """Serialize lattice values sparsely as subset/value assignments."""
    assignments = [
        {"subset": list(frame.members(int(mask))), "value": float(values[mask])}
        for mask in np.flatnonzero(values != 0.0)
    ]
    return {"frame": list(frame.labels), "assignments": assignments}


def set_function_from_dict(data: dict) -> tuple[Frame, np.ndarray]:
    """Parse the subset/value shape; unlisted subsets get value 0."""
    try:
        frame = Frame(tuple(data["frame"]))
        entries = data["assignments"]
    except (KeyError, TypeError) as exc:
        raise ValueError(
            f"expected keys 'frame' and 'assignments': {exc}"
        ) from None
    values = np.zeros(1 << frame.size)
    for entry in entries:
        try:
            subset = entry["subset"]
            value = float(entry["value"])
        except (KeyError, TypeError) as exc:
            raise ValueError(
                f"assignment needs 'subset' and 'value': {exc}"
            ) from None
        values[frame.mask_of(subset)] += value
    return frame, values


def mass_to_dict(mass: MassAssignment) -> dict:
    return set_function_to_dict(mass.frame, mass.values)


def mass_from_dict(data: dict) -> MassAssignment:
    frame, values = set_function_from_dict(data)
    return MassAssignment(frame, values)


def probability_to_dict(dist: ProbabilityDistribution) -> dict:
    return {"frame": list(dist.frame.labels), "p": [float(v) for v in dist.p]}


def probability_from_dict(data: dict) -> ProbabilityDistribution:
    try:
        frame = Frame(tuple(data["frame"]))
        p = data["p"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"expected keys 'frame' and 'p': {exc}") from None
    return ProbabilityDistribution(frame, np.asarray(p, dtype=np.float64))


def load_json(path: Union[str, Path]) -> dict:
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def dump_json(data: dict, path: Union[str, Path, None]) -> str:
    """Serialize deterministically; write to ``path`` when given."""
    text = json.dumps(data, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text

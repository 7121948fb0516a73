"""Scenario moments estimated from regime-labeled sample data.

One scenario per regime: arithmetic means plus the unbiased sample
covariance matrix (divisor count - 1). Regimes keep their first-appearance
order so downstream witnesses are stable.

CSV interface: header row ``regime,<name1>,...,<nameN>``, UTF-8, '.' decimal
separator, rows in any order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from covbounds.exceptions import (
    EmptyInputError,
    NonFiniteError,
    RaggedRowsError,
    SchemaError,
    TooFewSamplesError,
)
from covbounds.moments import ScenarioMoments, ScenarioSet


@dataclass(frozen=True)
class RegimeSamples:
    """Observations grouped by regime label, in first-appearance order."""

    variable_names: tuple[str, ...]
    regimes: tuple[str, ...]
    observations: tuple[np.ndarray, ...]

    def __post_init__(self):
        names = tuple(str(v) for v in self.variable_names)
        regimes = tuple(str(r) for r in self.regimes)
        object.__setattr__(self, "variable_names", names)
        object.__setattr__(self, "regimes", regimes)
        if not names:
            raise EmptyInputError("at least one variable is required")
        if len(regimes) != len(self.observations):
            raise RaggedRowsError("one observation block per regime is required")
        if not regimes:
            raise EmptyInputError("at least one regime is required")
        blocks = []
        for label, rows in zip(regimes, self.observations):
            arr = np.asarray(rows, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != len(names):
                raise RaggedRowsError(
                    f"regime {label!r}: expected rows of width {len(names)}, got shape {arr.shape}"
                )
            if arr.shape[0] < 2:
                raise TooFewSamplesError(f"regime {label!r} has {arr.shape[0]} rows, need >= 2")
            if not np.all(np.isfinite(arr)):
                raise NonFiniteError(f"regime {label!r} contains non-finite values")
            arr = arr.copy()
            arr.flags.writeable = False
            blocks.append(arr)
        object.__setattr__(self, "observations", tuple(blocks))

    @classmethod
    def from_labeled_rows(cls, variable_names, labels, rows) -> "RegimeSamples":
        """Group (label, row) pairs by regime, preserving first appearance."""
        grouped: dict[str, list] = {}
        for label, row in zip(labels, rows):
            grouped.setdefault(str(label), []).append(row)
        return cls(
            tuple(variable_names),
            tuple(grouped.keys()),
            tuple(np.asarray(v, dtype=float) for v in grouped.values()),
        )


def estimate_moments(data: RegimeSamples) -> ScenarioSet:
    """Sample means and unbiased sample covariances, one scenario per regime."""
    scenarios = []
    for label, rows in zip(data.regimes, data.observations):
        mean = rows.mean(axis=0)
        centered = rows - mean
        cov = centered.T @ centered / (rows.shape[0] - 1)
        scenarios.append(ScenarioMoments(label, mean, cov))
    return ScenarioSet(data.variable_names, tuple(scenarios))


def read_regime_csv(path) -> RegimeSamples:
    """Parse a regime CSV file; malformed rows are rejected, never imputed."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty CSV") from None
        if len(header) < 2 or header[0].strip() != "regime":
            raise SchemaError(f"{path}: header must be 'regime,<name1>,...', got {header}")
        names = tuple(h.strip() for h in header[1:])
        labels: list[str] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(names) + 1:
                raise RaggedRowsError(
                    f"{path}:{lineno}: expected {len(names) + 1} fields, got {len(row)}"
                )
            try:
                values = [float(v) for v in row[1:]]
            except ValueError as exc:
                raise NonFiniteError(f"{path}:{lineno}: non-numeric value ({exc})") from exc
            labels.append(row[0])
            rows.append(values)
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    return RegimeSamples.from_labeled_rows(names, labels, np.array(rows))

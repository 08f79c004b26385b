"""Result rows and their delimited serialization.

The CSV layout is a stable contract: a fixed header, floats written in
shortest round-trip form (so re-parsing recovers them exactly), and
empty objective/SINR fields on infeasible rows. Identical solver inputs
therefore produce byte-identical files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

__all__ = ["CSV_FIELDS", "CSV_HEADER", "ResultRow", "write_rows", "read_rows", "to_db"]

CSV_FIELDS = (
    "psi",
    "combiner",
    "mode",
    "objective_linear",
    "objective_db",
    "sinr_min",
    "iterations",
    "termination",
    "seed",
)
CSV_HEADER = ",".join(CSV_FIELDS)


def to_db(linear: float) -> float:
    """Power ratio in decibels."""
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class ResultRow:
    """One solved (or failed) configuration.

    Objective and SINR fields are ``None`` when the configuration is
    infeasible. ``sinr_per_target`` carries the full per-target detail;
    only its minimum goes into the CSV.
    """

    psi: float
    combiner: str
    mode: str
    objective_linear: float | None
    objective_db: float | None
    sinr_min: float | None
    iterations: int
    termination: str
    seed: int
    sinr_per_target: tuple[float, ...] = ()


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def format_row(row: ResultRow) -> str:
    return ",".join(
        (
            repr(float(row.psi)),
            row.combiner,
            row.mode,
            _fmt(row.objective_linear),
            _fmt(row.objective_db),
            _fmt(row.sinr_min),
            str(row.iterations),
            row.termination,
            str(row.seed),
        )
    )


def write_rows(rows: Iterable[ResultRow], out: TextIO) -> None:
    out.write(CSV_HEADER + "\n")
    for row in rows:
        out.write(format_row(row) + "\n")


def read_rows(path: str | Path) -> list[ResultRow]:
    """Parse a results CSV back into rows (per-target detail is not stored)."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header in {path}: {reader.fieldnames}")
        for rec in reader:
            rows.append(
                ResultRow(
                    psi=float(rec["psi"]),
                    combiner=rec["combiner"],
                    mode=rec["mode"],
                    objective_linear=float(rec["objective_linear"])
                    if rec["objective_linear"]
                    else None,
                    objective_db=float(rec["objective_db"])
                    if rec["objective_db"]
                    else None,
                    sinr_min=float(rec["sinr_min"]) if rec["sinr_min"] else None,
                    iterations=int(rec["iterations"]),
                    termination=rec["termination"],
                    seed=int(rec["seed"]),
                )
            )
    return rows

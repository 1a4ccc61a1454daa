"""Parsing and validation of two-group study summary tables.

Tables are comma-separated UTF-8 with one row per study and a fixed
header (see :data:`COLUMNS`). Each row carries the summary statistics of
a control group (x) and an experiment group (y) plus citation metadata.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, fields, replace

log = logging.getLogger(__name__)

#: Required header, in order.
COLUMNS = [
    "id", "study", "year", "group_x", "mean_x", "sd_x", "n_x",
    "group_y", "mean_y", "sd_y", "n_y", "units", "alpha_dm",
    "species", "pmid", "loc", "sign",
]

#: Significance budget substituted when a row carries alpha_dm = 0
#: (a known transcription artifact in one shipped fixture row).
ALPHA_FALLBACK = 0.05


class TableSchemaError(ValueError):
    """Header does not match the expected column set."""


class RowParseError(ValueError):
    """A data cell failed to parse; carries the offending row id."""

    def __init__(self, message, row):
        super().__init__(message)
        self.row = row


class DuplicateIdError(ValueError):
    """Two rows in one table share an id."""


@dataclass(frozen=True)
class StudySummary:
    """One study's two-group summary statistics plus metadata."""

    id: int
    study_label: str
    year: int
    group_x_label: str
    mean_x: float
    sd_x: float
    n_x: int
    group_y_label: str
    mean_y: float
    sd_y: float
    n_y: int
    units: str
    alpha_dm: float
    species: str
    pmid: str
    loc: str
    reported_sign: int


def parse_alpha(cell: str) -> float:
    """Evaluate a significance-budget cell.

    Accepts a decimal literal ("0.05") or a rational expression "a/b"
    ("0.05/3") as printed in the source tables.
    """
    cell = cell.strip()
    if "/" in cell:
        num, den = cell.split("/", 1)
        return float(num) / float(den)
    return float(cell)


def format_alpha(alpha: float) -> str:
    """Render alpha_dm back to a table cell (decimal form)."""
    return repr(alpha)


def _parse_row(row: dict) -> StudySummary:
    rid = row["id"]
    try:
        return StudySummary(
            id=int(row["id"]),
            study_label=row["study"],
            year=int(row["year"]),
            group_x_label=row["group_x"],
            mean_x=float(row["mean_x"]),
            sd_x=float(row["sd_x"]),
            n_x=int(row["n_x"]),
            group_y_label=row["group_y"],
            mean_y=float(row["mean_y"]),
            sd_y=float(row["sd_y"]),
            n_y=int(row["n_y"]),
            units=row["units"],
            alpha_dm=parse_alpha(row["alpha_dm"]),
            species=row["species"],
            pmid=row["pmid"],
            loc=row["loc"],
            reported_sign=int(row["sign"]),
        )
    except (TypeError, ValueError) as exc:
        raise RowParseError(f"row id={rid}: {exc}", row=rid) from exc


def parse_study_table(text: str) -> list[StudySummary]:
    """Parse delimited table content into StudySummary values, in file order.

    Raises TableSchemaError for header problems, RowParseError for bad
    cells, DuplicateIdError for repeated ids. Does not check the
    statistical invariants; see :func:`validate_study`.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise TableSchemaError("empty input: no header row")
    header = [h.strip().lstrip("﻿") for h in reader.fieldnames]
    missing = [c for c in COLUMNS if c not in header]
    unknown = [c for c in header if c not in COLUMNS]
    if missing:
        raise TableSchemaError(f"missing column(s): {', '.join(missing)}")
    if unknown:
        raise TableSchemaError(f"unknown column(s): {', '.join(unknown)}")

    studies = []
    seen = set()
    for row in reader:
        s = _parse_row({k.strip().lstrip("﻿"): (v or "") for k, v in row.items()})
        if s.id in seen:
            raise DuplicateIdError(f"duplicate study id {s.id}")
        seen.add(s.id)
        studies.append(s)
    return studies


def serialize_study_table(studies: list[StudySummary]) -> str:
    """Inverse of parse_study_table, up to alpha_dm evaluation."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for s in studies:
        writer.writerow([
            s.id, s.study_label, s.year, s.group_x_label,
            repr(s.mean_x), repr(s.sd_x), s.n_x,
            s.group_y_label, repr(s.mean_y), repr(s.sd_y), s.n_y,
            s.units, format_alpha(s.alpha_dm), s.species, s.pmid, s.loc,
            s.reported_sign,
        ])
    return out.getvalue()


def validate_study(s: StudySummary) -> list[str]:
    """Check statistical invariants; returns a list of violations (empty = ok)."""
    violations = []
    if s.n_x < 2:
        violations.append("n_x >= 2")
    if s.n_y < 2:
        violations.append("n_y >= 2")
    if s.sd_x <= 0:
        violations.append("sd_x > 0")
    if s.sd_y <= 0:
        violations.append("sd_y > 0")
    if s.mean_x <= 0:
        violations.append("mean_x > 0")
    if not (0.0 < s.alpha_dm < 1.0):
        violations.append("alpha_dm in (0,1)")
    if s.reported_sign not in (-1, 0, 1):
        violations.append("sign in {-1,0,1}")
    return violations


class StudyValidationError(ValueError):
    """One or more studies failed validation; carries per-row details."""

    def __init__(self, details: list[str]):
        super().__init__("; ".join(details))
        self.details = details


def load_studies(text: str) -> list[StudySummary]:
    """Parse and validate a table, applying the alpha_dm = 0 fallback.

    A row whose alpha_dm evaluates to 0 is assumed to be a transcription
    artifact and is loaded with alpha_dm = ALPHA_FALLBACK, loudly. Any
    other invariant violation raises StudyValidationError.
    """
    studies = parse_study_table(text)
    loaded = []
    problems = []
    for s in studies:
        if s.alpha_dm == 0.0:
            log.warning(
                "study id=%s has alpha_dm = 0; substituting %s "
                "(transcription artifact in source table)",
                s.id, ALPHA_FALLBACK,
            )
            s = replace(s, alpha_dm=ALPHA_FALLBACK)
        bad = validate_study(s)
        if bad:
            problems.append(f"study id={s.id}: " + ", ".join(bad))
        loaded.append(s)
    if problems:
        raise StudyValidationError(problems)
    return loaded


def load_studies_file(path) -> list[StudySummary]:
    with open(path, encoding="utf-8", newline="") as fh:
        return load_studies(fh.read())


def study_to_dict(s: StudySummary) -> dict:
    return {f.name: getattr(s, f.name) for f in fields(s)}

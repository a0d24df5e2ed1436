"""Read and query finished run output directories."""

from __future__ import annotations

import csv
from pathlib import Path

import click

from hwyimpact.output.writer import SUMMARY_FILE


def is_run_dir(path: Path) -> bool:
    return (path / SUMMARY_FILE).is_file()


def resolve_run(run: str | None, output_dir: str = "./hwyimpact-output") -> Path:
    """Resolve which run directory to use.

    If *run* is given, treat it as a path. Otherwise use *output_dir*.
    """
    path = Path(run) if run else Path(output_dir)
    if not path.is_dir():
        raise click.ClickException(f"Run directory not found: {path}")
    if not is_run_dir(path):
        raise click.ClickException(f"No finished run in {path} (missing {SUMMARY_FILE})")
    return path


def read_file(run_dir: Path, filename: str) -> str | None:
    """Read a file from the run directory, returning None if missing."""
    path = run_dir / filename
    if not path.is_file():
        return None
    return path.read_text(encoding="utf-8")


def read_table(run_dir: Path, filename: str) -> list[dict[str, str]] | None:
    """Rows of a CSV output as dicts, or None if the file is missing."""
    content = read_file(run_dir, filename)
    if content is None:
        return None
    return list(csv.DictReader(content.splitlines()))


def highways_in(rows: list[dict[str, str]]) -> list[str]:
    """Distinct highway ids in first-seen order."""
    seen: list[str] = []
    for row in rows:
        hid = row.get("highway", "")
        if hid and hid not in seen:
            seen.append(hid)
    return seen

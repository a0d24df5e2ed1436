"""Rich terminal output renderer."""

from __future__ import annotations

from collections.abc import Sequence

from rich.console import Console
from rich.table import Table

from hwyimpact.models import (
    AssessmentReport,
    CorridorRow,
    IntensityRow,
    RunConfig,
    RunStats,
    TopicRow,
    Verbosity,
)


def _na(value: float | None, fmt: str = ".2f") -> str:
    return "[dim]NA[/dim]" if value is None else format(value, fmt)


class Renderer:
    def __init__(self, verbosity: Verbosity, console: Console | None = None) -> None:
        self.console = console or Console()
        self.verbose = verbosity == Verbosity.VERBOSE

    def start_run(self, config: RunConfig) -> None:
        table = Table(title="Run Configuration", show_header=False)
        table.add_column("Key", style="bold cyan")
        table.add_column("Value")
        table.add_row("Input", str(config.input_path))
        table.add_row("Lexicon", str(config.lexicon_path or "builtin Harvey"))
        table.add_row("Window", f"{config.window.as_text()} ({config.utc_offset})")
        table.add_row("Phases", config.phases.as_text())
        if self.verbose:
            table.add_row("Bounding box", config.bbox.as_text())
            table.add_row("Adjacency", str(config.adjacency_window))
            table.add_row("Top-k", str(config.top_k))
        self.console.print(table)
        self.console.print()

    def show_counts(self, stats: RunStats) -> None:
        skipped = stats.parse.skipped_total
        line = (
            f"[bold]{stats.records_in:,}[/bold] records read, "
            f"[bold]{stats.records_filtered:,}[/bold] in study area and window, "
            f"[bold]{stats.records_mapped:,}[/bold] mapped"
        )
        if skipped:
            line += f", [yellow]{skipped:,} lines skipped[/yellow]"
        self.console.print(line)

    def show_intensity(self, rows: Sequence[IntensityRow]) -> None:
        self.console.print()
        self.console.rule("[bold cyan]Intensity[/bold cyan]")
        phases: list[str] = []
        for r in rows:
            if r.phase_name not in phases:
                phases.append(r.phase_name)
        table = Table(show_header=True, header_style="bold")
        table.add_column("Highway", style="bold green")
        for name in phases:
            table.add_column(name, justify="right")
        cells: dict[str, dict[str, IntensityRow]] = {}
        for r in rows:
            cells.setdefault(r.highway_id, {})[r.phase_name] = r
        for hid, by_phase in cells.items():
            table.add_row(
                hid,
                *(
                    f"{_na(by_phase[p].intensity)} ({by_phase[p].tweet_count})"
                    if p in by_phase
                    else ""
                    for p in phases
                ),
            )
        self.console.print(table)
        self.console.print("[dim]intensity (tweets); baseline phase = 1.00[/dim]")

    def show_topics(self, rows: Sequence[TopicRow]) -> None:
        self.console.print()
        self.console.rule("[bold cyan]Top Terms[/bold cyan]")
        table = Table(show_header=True, header_style="bold")
        table.add_column("Highway", style="bold green")
        table.add_column("Phase")
        table.add_column("Terms")
        cells: dict[tuple[str, str], list[TopicRow]] = {}
        for r in rows:
            cells.setdefault((r.highway_id, r.phase_name), []).append(r)
        for (hid, phase), terms in cells.items():
            table.add_row(hid, phase, ", ".join(f"{t.term} ({t.doc_freq})" for t in terms))
        self.console.print(table)

    def show_corridor(self, rows: Sequence[CorridorRow]) -> None:
        if not rows:
            return
        self.console.print()
        self.console.rule("[bold cyan]On-Corridor Share[/bold cyan]")
        table = Table(show_header=True, header_style="bold")
        table.add_column("Highway", style="bold green")
        table.add_column("Phase")
        table.add_column("Points", justify="right")
        table.add_column("Within", justify="right")
        table.add_column("Share", justify="right")
        table.add_column("Median (m)", justify="right")
        for r in rows:
            table.add_row(
                r.highway_id,
                r.phase_name,
                str(r.points),
                str(r.within),
                "[dim]NA[/dim]" if r.share is None else f"{r.share:.1%}",
                _na(r.median_distance_m, ",.0f"),
            )
        self.console.print(table)

    def show_report(self, report: AssessmentReport) -> None:
        self.show_counts(report.stats)
        self.show_intensity(report.intensity)
        if self.verbose:
            self.show_topics(report.topics)
            self.show_corridor(report.corridor)

    def show_output_path(self, path: str) -> None:
        self.console.print(f"\n[dim]Output written to: {path}[/dim]")

"""Click CLI for hwyimpact: highway disaster-impact assessment from geotagged tweets."""

from __future__ import annotations

import functools
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markdown import Markdown
from rich.table import Table

from hwyimpact.config import AppSettings, build_run_config, load_hwyimpact_config, read_run_config
from hwyimpact.display.renderer import Renderer
from hwyimpact.errors import HwyImpactError
from hwyimpact.lexicon.loader import builtin_harvey_lexicon, load_lexicon, write_lexicon
from hwyimpact.mapping.registry import AVAILABLE_MAPPERS
from hwyimpact.models import RunConfig, Verbosity
from hwyimpact.output.reader import highways_in, read_file, read_table, resolve_run
from hwyimpact.output.writer import CORRIDOR_FILE, INTENSITY_FILE, SUMMARY_FILE, TOPICS_FILE
from hwyimpact.pipeline.engine import AssessmentEngine

logger = logging.getLogger("hwyimpact")


def _configure_logging(verbose: bool) -> None:
    level_name = "DEBUG" if verbose else AppSettings().log_level.upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise click.BadParameter(
            f"Unknown log level '{level_name}'", param_hint="HWYIMPACT_LOG_LEVEL"
        )
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    logger.addHandler(handler)
    logger.setLevel(level)


def _run_guarded(fn: Callable[[], Any]) -> Any:
    """Turn library errors into one-line diagnostics with a non-zero exit."""
    try:
        return fn()
    except HwyImpactError as e:
        raise click.ClickException(str(e)) from None
    except OSError as e:
        where = f"{e.filename}: " if e.filename else ""
        raise click.ClickException(f"{where}{e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise click.ClickException(f"input is not valid UTF-8 at byte {e.start}") from None


@click.group(epilog="""\b
Examples:
  hwyimpact assess -i harvey.jsonl --builtin-harvey -o out/
  hwyimpact assess -i harvey.jsonl --rainfall rain.csv --top-k 10 -v
  hwyimpact map -i sample.jsonl -o debug/
  hwyimpact lexicon --export my-lexicon.json
  hwyimpact show intensity -o out/
""")
def main() -> None:
    """hwyimpact: disaster impacts on highway corridors from geotagged tweets.

    Tweets are filtered to a study area and time window, cleaned, mapped
    to highways through a lexicon of direct and indirect search terms,
    and summarized per disaster phase as normalized intensity, top
    topics and geographic point layers.
    """
    load_hwyimpact_config()


def _run_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by `assess` and `map`."""
    options = [
        click.option("-i", "--input", "input_path", type=click.Path(path_type=Path),
                     help="JSON Lines tweet corpus."),
        click.option("--config", "config_path", type=click.Path(path_type=Path),
                     help="JSON run config; flags override its values."),
        click.option("--lexicon", "lexicon_path", type=click.Path(path_type=Path),
                     help="Lexicon JSON file (default: builtin Harvey lexicon)."),
        click.option("--builtin-harvey", is_flag=True,
                     help="Use the bundled Houston lexicon even if the config names one."),
        click.option("--bbox", help="lat_min,lat_max,lon_min,lon_max  [default: Houston]"),
        click.option("--window", help="start:end local dates  [default: 2017-08-23:2017-09-05]"),
        click.option("--utc-offset", help="Study timezone as a fixed offset  [default: -05:00]"),
        click.option("--phases", help="name=start:end,...; the first phase is the baseline."),
        click.option("--adjacency", "adjacency_window", type=int,
                     help="Tokens searched on each side of an indirect term  [default: 1]"),
        click.option("--stopwords", "stopword_path", type=click.Path(path_type=Path),
                     help="Stopword list, one word per line (default: bundled list)."),
        click.option("-o", "--out", "output_dir", type=click.Path(path_type=Path),
                     help="Output directory  [default: ./hwyimpact-output]"),
        click.option("--strict/--lenient", default=None,
                     help="Fail on the first bad corpus line instead of skipping it."),
        click.option("-v", "--verbose", is_flag=True, help="Debug logging and full tables."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _resolve_config(
    config_path: Path | None, builtin_harvey: bool, verbose: bool, flags: dict[str, Any]
) -> RunConfig:
    if builtin_harvey and flags.get("lexicon_path") is not None:
        raise click.UsageError("--lexicon and --builtin-harvey are mutually exclusive.")
    file_values = read_run_config(config_path) if config_path else {}
    if builtin_harvey:
        file_values.pop("lexicon_path", None)
    if verbose:
        flags["verbosity"] = Verbosity.VERBOSE
    return build_run_config(flags, file_values)


@main.command(epilog="""\b
Examples:
  hwyimpact assess -i harvey.jsonl -o out/
  hwyimpact assess --config run.json --top-k 10
  hwyimpact assess -i harvey.jsonl --phases "pre=2017-08-23:2017-08-25,storm=2017-08-26:2017-09-05"
  hwyimpact assess -i harvey.jsonl --rainfall rain.csv --corridor-threshold 500 -v
""")
@_run_options
@click.option("--top-k", type=int, help="Topic terms per highway and phase  [default: 5]")
@click.option("--rainfall", "rainfall_path", type=click.Path(path_type=Path),
              help="Daily rainfall CSV (date,inches) for the overlay series.")
@click.option("--corridor-threshold", "corridor_threshold_m", type=float,
              help="On-corridor distance in meters  [default: 1000]")
@click.option("--evidence/--no-evidence", "write_evidence", default=None,
              help="Write evidence.csv with every match behind each mapping.  [default: on]")
def assess(
    config_path: Path | None,
    builtin_harvey: bool,
    verbose: bool,
    **flags: Any,
) -> None:
    """Run the full assessment pipeline.

    Reads the corpus, keeps tweets inside the bounding box and time
    window, cleans and maps them to highways, and writes intensity.csv,
    topics.csv, geo/*.geojson, daily.csv, highway_daily.csv,
    corridor.csv, evidence.csv, overlay.csv (with --rainfall) and
    summary.md to the output directory.

    Outputs are byte-identical across runs with the same inputs.
    """
    _configure_logging(verbose)
    config = _run_guarded(lambda: _resolve_config(config_path, builtin_harvey, verbose, flags))
    engine = AssessmentEngine(config)
    _run_guarded(engine.run)


@main.command("map", epilog="""\b
Examples:
  hwyimpact map -i sample.jsonl -o debug/
  hwyimpact map -i sample.jsonl --lexicon draft.json --adjacency 2
  hwyimpact map -i sample.jsonl --mapper oracle
""")
@_run_options
@click.option("--mapper", type=click.Choice(AVAILABLE_MAPPERS), default="compiled",
              show_default=True, help="Mapping implementation.")
def map_command(
    config_path: Path | None,
    builtin_harvey: bool,
    verbose: bool,
    mapper: str,
    **flags: Any,
) -> None:
    """Map tweets to highways and write evidence.csv only.

    Useful for debugging a lexicon: every row names the record, the
    highway, the matched phrase and its token span, and for indirect
    terms the neighboring highway term that confirmed it.
    """
    _configure_logging(verbose)
    config = _run_guarded(lambda: _resolve_config(config_path, builtin_harvey, verbose, flags))
    engine = AssessmentEngine(config, mapper=mapper)
    _run_guarded(engine.run_map)


@main.command(epilog="""\b
Examples:
  hwyimpact lexicon
  hwyimpact lexicon --lexicon draft.json
  hwyimpact lexicon --export harvey.json
""")
@click.option("--lexicon", "lexicon_path", type=click.Path(path_type=Path),
              help="Lexicon JSON file (default: builtin Harvey lexicon).")
@click.option("--export", "export_path", type=click.Path(path_type=Path),
              help="Write the lexicon as JSON to this path.")
def lexicon(lexicon_path: Path | None, export_path: Path | None) -> None:
    """Show the effective highway lexicon."""
    lex = _run_guarded(
        lambda: load_lexicon(lexicon_path) if lexicon_path else builtin_harvey_lexicon()
    )
    console = Console()
    table = Table(title="Highway Lexicon")
    table.add_column("Id", style="bold green")
    table.add_column("Name")
    table.add_column("Direct")
    table.add_column("Indirect")
    table.add_column("Polyline", justify="right")
    for entry in lex.entries:
        table.add_row(
            entry.id,
            entry.display_name,
            ", ".join(p.text for p in entry.direct_terms),
            ", ".join(p.text for p in entry.indirect_terms),
            str(len(entry.polyline)) if entry.polyline else "-",
        )
    console.print(table)
    console.print(f"[bold]Highway terms:[/bold] {', '.join(lex.highway_terms)}")
    if export_path:
        _run_guarded(lambda: write_lexicon(export_path, lex))
        click.echo(f"Lexicon written to {export_path}")


# ---------------------------------------------------------------------------
# Post-run commands: show
# ---------------------------------------------------------------------------


@main.group(invoke_without_command=True, epilog="""\b
Examples:
  hwyimpact show                   # summary of ./hwyimpact-output
  hwyimpact show intensity -o out/
  hwyimpact show topics --highway I-45
  hwyimpact show corridor --run ./runs/harvey
""")
@click.option("--run", default=None, help="Path to a specific run directory.")
@click.option("-o", "--output-dir", default="./hwyimpact-output", show_default=True,
              help="Output directory.")
@click.pass_context
def show(ctx: click.Context, run: str | None, output_dir: str) -> None:
    """View results of a finished run.

    With no subcommand, shows summary.md. Use a subcommand (summary,
    intensity, topics, corridor) to view a specific table.
    """
    ctx.ensure_object(dict)
    ctx.obj["run_dir"] = resolve_run(run, output_dir)
    if ctx.invoked_subcommand is None:
        _show_summary(ctx.obj["run_dir"])


def _show_summary(run_dir: Path) -> None:
    content = read_file(run_dir, SUMMARY_FILE)
    if content is None:
        raise click.ClickException(f"No {SUMMARY_FILE} found.")
    Console().print(Markdown(content))


def _require_table(run_dir: Path, filename: str) -> list[dict[str, str]]:
    rows = read_table(run_dir, filename)
    if rows is None:
        raise click.ClickException(f"No {filename} found.")
    return rows


@show.command("summary")
@click.pass_context
def show_summary(ctx: click.Context) -> None:
    """Show run parameters and record counts."""
    _show_summary(ctx.obj["run_dir"])


@show.command("intensity")
@click.pass_context
def show_intensity(ctx: click.Context) -> None:
    """Show intensity per highway and phase."""
    rows = _require_table(ctx.obj["run_dir"], INTENSITY_FILE)
    phases: list[str] = []
    for row in rows:
        if row["phase"] not in phases:
            phases.append(row["phase"])
    table = Table(title="Intensity (tweets)", header_style="bold")
    table.add_column("Highway", style="bold green")
    for name in phases:
        table.add_column(name, justify="right")
    for hid in highways_in(rows):
        cells = {r["phase"]: r for r in rows if r["highway"] == hid}
        table.add_row(
            hid,
            *(
                f"{cells[p]['intensity']} ({cells[p]['tweet_count']})" if p in cells else ""
                for p in phases
            ),
        )
    Console().print(table)


@show.command("topics")
@click.option("--highway", default=None, help="Only this highway id.")
@click.pass_context
def show_topics(ctx: click.Context, highway: str | None) -> None:
    """Show the top terms per highway and phase."""
    rows = _require_table(ctx.obj["run_dir"], TOPICS_FILE)
    if highway:
        rows = [r for r in rows if r["highway"] == highway]
        if not rows:
            raise click.ClickException(f"No topics for highway '{highway}'.")
    cells: dict[tuple[str, str], list[str]] = {}
    for r in rows:
        cells.setdefault((r["highway"], r["phase"]), []).append(f"{r['term']} ({r['doc_freq']})")
    table = Table(title="Top Terms", header_style="bold")
    table.add_column("Highway", style="bold green")
    table.add_column("Phase")
    table.add_column("Terms")
    for (hid, phase), terms in cells.items():
        table.add_row(hid, phase, ", ".join(terms))
    Console().print(table)


@show.command("corridor")
@click.pass_context
def show_corridor(ctx: click.Context) -> None:
    """Show the share of points lying on each highway corridor."""
    rows = _require_table(ctx.obj["run_dir"], CORRIDOR_FILE)
    table = Table(title="On-Corridor Share", header_style="bold")
    for name in ("Highway", "Phase", "Points", "Within", "Share", "Median (m)"):
        table.add_column(name, justify="left" if name in ("Highway", "Phase") else "right")
    for r in rows:
        table.add_row(
            r["highway"], r["phase"], r["points"], r["within"], r["share"],
            r["median_distance_m"],
        )
    Console().print(table)

"""Top-level assessment orchestrator: ingest, clean, map, assess, write."""

from __future__ import annotations

import logging

from hwyimpact.analysis.geo import corridor_consistency, geo_features
from hwyimpact.analysis.intensity import highway_daily_series, intensity_table
from hwyimpact.analysis.overlay import overlay_series, read_rainfall
from hwyimpact.analysis.phases import split_by_phase
from hwyimpact.analysis.topics import topic_table
from hwyimpact.cleaning.pipeline import clean_corpus, load_stopwords, unreachable_terms
from hwyimpact.display.renderer import Renderer
from hwyimpact.ingest.filters import daily_counts, filter_records
from hwyimpact.ingest.reader import read_corpus
from hwyimpact.lexicon.loader import builtin_harvey_lexicon, load_lexicon
from hwyimpact.mapping.registry import get_mapper
from hwyimpact.models import (
    AssessmentReport,
    CleanedTweet,
    Lexicon,
    MappingResult,
    RunConfig,
    RunStats,
    StopwordList,
    TweetRecord,
)
from hwyimpact.output.writer import OutputWriter

logger = logging.getLogger(__name__)


class AssessmentEngine:
    def __init__(
        self, config: RunConfig, renderer: Renderer | None = None, mapper: str = "compiled"
    ) -> None:
        self.config = config
        self.renderer = renderer or Renderer(config.verbosity)
        self.mapper_name = mapper

    def load_lexicon(self) -> Lexicon:
        if self.config.lexicon_path is None:
            return builtin_harvey_lexicon()
        return load_lexicon(self.config.lexicon_path)

    def load_stopwords(self, lexicon: Lexicon) -> StopwordList:
        stoplist = load_stopwords(self.config.stopword_path)
        for highway_id, phrase in unreachable_terms(lexicon, stoplist):
            logger.warning(
                "Lexicon term '%s' (%s) cannot survive cleaning and will never match",
                phrase,
                highway_id,
            )
        return stoplist

    def _prepare(
        self,
    ) -> tuple[Lexicon, RunStats, list[TweetRecord], list[CleanedTweet], list[MappingResult]]:
        cfg = self.config
        lexicon = self.load_lexicon()
        stoplist = self.load_stopwords(lexicon)

        records, parse_stats = read_corpus(cfg.input_path, strict=cfg.strict)
        filtered = filter_records(records, cfg.bbox, cfg.window)
        cleaned = clean_corpus(filtered, stoplist)
        mapper = get_mapper(self.mapper_name, lexicon, cfg.mapping)
        results = mapper.map_all(cleaned)

        stats = RunStats(
            parse=parse_stats,
            records_in=len(records),
            records_filtered=len(filtered),
            records_mapped=sum(1 for r in results if r.highways),
        )
        logger.info(
            "%d records read, %d in study area and window, %d mapped to a highway",
            stats.records_in,
            stats.records_filtered,
            stats.records_mapped,
        )
        return lexicon, stats, filtered, cleaned, results

    def assess(self) -> AssessmentReport:
        """Run the full pipeline and return the report without writing anything."""
        cfg = self.config
        lexicon, stats, filtered, cleaned, results = self._prepare()

        # record ids need not be unique, so rows are joined by position
        mapped: dict[str, list[TweetRecord]] = {hid: [] for hid in lexicon.ids}
        cleaned_of: dict[int, CleanedTweet] = {}
        for record, tweet, result in zip(filtered, cleaned, results, strict=True):
            cleaned_of[id(record)] = tweet
            for hid in result.highways:
                mapped[hid].append(record)
        stats.per_highway = {hid: len(recs) for hid, recs in mapped.items()}

        cells: dict[tuple[str, str], list[CleanedTweet]] = {}
        for hid, recs in mapped.items():
            for phase_name, phase_recs in split_by_phase(recs, cfg.phases).items():
                cells[(hid, phase_name)] = [cleaned_of[id(r)] for r in phase_recs]

        daily = daily_counts(filtered, cfg.window)
        geo = geo_features(mapped, cfg.phases)
        overlay = None
        if cfg.rainfall_path is not None:
            overlay = overlay_series(daily, read_rainfall(cfg.rainfall_path))

        return AssessmentReport(
            stats=stats,
            daily=daily,
            intensity=intensity_table(mapped, cfg.phases),
            highway_daily=highway_daily_series(mapped, cfg.phases, cfg.window),
            topics=topic_table(cells, lexicon, cfg.top_k),
            geo=geo,
            corridor=corridor_consistency(geo, lexicon, cfg.corridor_threshold_m),
            overlay=overlay,
            mapping=results,
        )

    def run(self) -> AssessmentReport:
        """Assess, write every output file, and render the results."""
        self.renderer.start_run(self.config)
        report = self.assess()
        writer = OutputWriter(self.config.output_dir)
        writer.write_report(report, self.config)
        self.renderer.show_report(report)
        self.renderer.show_output_path(writer.base_path)
        return report

    def run_map(self) -> list[MappingResult]:
        """Ingest, clean and map only; writes evidence.csv."""
        self.renderer.start_run(self.config)
        _, stats, _, _, results = self._prepare()
        writer = OutputWriter(self.config.output_dir)
        writer.write_evidence(results)
        self.renderer.show_counts(stats)
        self.renderer.show_output_path(writer.base_path)
        return results


def run_assess(config: RunConfig, renderer: Renderer | None = None) -> AssessmentReport:
    return AssessmentEngine(config, renderer).run()


def run_map(
    config: RunConfig, renderer: Renderer | None = None, mapper: str = "compiled"
) -> list[MappingResult]:
    return AssessmentEngine(config, renderer, mapper).run_map()

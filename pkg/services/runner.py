"""
Suite runner: resolves a SuiteConfig into module calls and collects their reports
"""
import asyncio
from typing import Callable, Dict, List, Optional, Sequence

from rich.console import Console

from hopf.checks import check_hopf, check_lifting
from necklace.series import check_necklace
from noghost.checks import check_noghost
from vertex.checks import build_space, check_lattice_va
from vertex.lattice import EvenLattice, resolve_lattice
from witt.checks import check_witt
from utils.cache import CacheStore
from utils.config import Config, SuiteConfig
from utils.constants import SUITE_DEFAULTS, SUITES, TOOLKIT_VERSION, ErrorCode
from utils.errors import VerificationError
from utils.logger import get_console, setup_logger
from utils.report import Report

SuiteFn = Callable[[SuiteConfig], Report]


class SuiteRunner:
    """Dispatches verification suites; one instance per CLI invocation"""

    def __init__(self, config: Optional[Config] = None, cache_dir: Optional[str] = None):
        self.config = config or Config.load()
        self.logger = setup_logger(self.config)
        self.console: Console = get_console()
        self.cache = CacheStore(cache_dir or self.config.cache_dir, self.logger)
        self._initialize_suites()

    def _initialize_suites(self):
        """Suite id -> runner, in the order `all` reports them"""
        self.suites: Dict[str, SuiteFn] = {
            "hopf": self._run_hopf,
            "lifting": self._run_lifting,
            "necklace": self._run_necklace,
            "lattice-va": self._run_lattice_va,
            "witt": self._run_witt,
            "noghost": self._run_noghost,
        }
        missing = set(SUITES) - set(self.suites)
        if missing:
            raise RuntimeError(f"suites without runner: {sorted(missing)}")

    def lattice(self, name: str) -> EvenLattice:
        return resolve_lattice(name, self.config.lattice_dir)

    def _run_hopf(self, cfg: SuiteConfig) -> Report:
        p = cfg.params
        return check_hopf(n=p["n"], order=p["order"], primes=p.get("primes") or (2, 3))

    def _run_lifting(self, cfg: SuiteConfig) -> Report:
        return check_lifting(order=cfg.params["order"])

    def _run_necklace(self, cfg: SuiteConfig) -> Report:
        return check_necklace(cfg.params["window"], cfg.params["degree"])

    def _run_lattice_va(self, cfg: SuiteConfig) -> Report:
        p = cfg.params
        space = build_space(self.lattice(p["lattice"]), p.get("window"), p.get("weight"), p["order"])
        return check_lattice_va(space, order=p["order"], rounds=self.config.closure_rounds, cache=self.cache)

    def _run_witt(self, cfg: SuiteConfig) -> Report:
        p = cfg.params
        width = max(p.get("window") or 0, 2 * p["order"])
        return check_witt(order=p["order"], n=p["n"], width=width, weights=range(-p["weight"], p["weight"] + 1))

    def _run_noghost(self, cfg: SuiteConfig) -> Report:
        p = cfg.params
        lattice = self.lattice(p["lattice"]) if p.get("lattice") else None
        return check_noghost(n=p["n"], lattice=lattice, oracle_degree=min(p["n"], 3))

    def run_suite(self, cfg: SuiteConfig) -> Report:
        """Validate, dispatch and stamp the report with the toolkit version and config hash"""
        cfg.validate()
        if cfg.suite == "all":
            raise VerificationError(ErrorCode.CONFIG_INVALID, "use run_all for the combined suite")
        self.logger.info(f"Running suite [bold]{cfg.suite}[/bold] with {cfg.params}")
        report = self.suites[cfg.suite](cfg)
        report.params = dict(cfg.params, **{k: v for k, v in report.params.items() if k not in cfg.params})
        report.versions = {"toolkit": TOOLKIT_VERSION, "config": cfg.content_hash()}
        counts = report.counts()
        if report.passed:
            self.logger.success(f"{cfg.suite}: {counts['PASS']} passed, {counts['SKIP']} skipped")
        else:
            self.logger.error(f"{cfg.suite}: {counts['FAIL']} of {len(report.checks)} checks failed")
        return report

    async def run_all(self, configs: Sequence[SuiteConfig]) -> Report:
        """Run suites concurrently in worker threads and merge them by suite id"""
        for cfg in configs:
            cfg.validate()
        reports: List[Report] = await asyncio.gather(
            *(asyncio.to_thread(self.run_suite, cfg) for cfg in configs))
        return merge_reports(reports)


def merge_reports(reports: Sequence[Report]) -> Report:
    """Combined report; checks are prefixed by suite id and ordered by it"""
    combined = Report(suite="all")
    for report in sorted(reports, key=lambda r: r.suite):
        combined.params[report.suite] = report.params
        combined.versions[report.suite] = report.versions.get("config", "")
        combined.merge(report, prefix=f"{report.suite}/")
    return combined


def run_suite(config: SuiteConfig, runner: Optional[SuiteRunner] = None) -> Report:
    """Run one suite, or every suite with their defaults for `all`"""
    runner = runner or SuiteRunner(cache_dir=config.cache_dir)
    if config.suite != "all":
        return runner.run_suite(config)
    overrides = dict(config.params)
    configs = [SuiteConfig.with_defaults(suite, _shared(suite, overrides), cache_dir=config.cache_dir)
               for suite in runner.suites]
    return asyncio.run(runner.run_all(configs))


def _shared(suite: str, overrides: Dict) -> Dict:
    """Flags given to `all` apply to the suites that take them"""
    accepted = set(SUITE_DEFAULTS.get(suite, {})) | ({"window"} if suite == "witt" else set())
    return {k: v for k, v in overrides.items() if k in accepted}


__all__ = ["SuiteRunner", "run_suite", "merge_reports"]

import json

import pytest

from services.cli import build_parser, main, suite_config
from services.runner import SuiteRunner, merge_reports, run_suite
from services.status import ReportTable
from utils.config import Config, SuiteConfig
from utils.constants import CheckStatus, ExitCode
from utils.report import Report


@pytest.fixture
def config(cache_dir):
    return Config(log_file=None, console_log=False, cache_dir=cache_dir)


class TestParser:
    def test_defaults_and_overrides(self):
        args = build_parser().parse_args(["hopf", "--n", "4", "--primes", "2,3,5"])
        cfg = suite_config(args)
        assert cfg.params["n"] == 4
        assert cfg.params["primes"] == [2, 3, 5]
        assert cfg.params["order"] == 4

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["monster"])
        assert exc.value.code == 2


class TestExitCodes:
    def test_non_positive_bound(self, config):
        assert main(["necklace", "--window", "0"], config) == ExitCode.CONFIG

    def test_non_prime(self, config):
        assert main(["hopf", "--primes", "2,4"], config) == ExitCode.CONFIG

    def test_asymmetric_lattice_file(self, config, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("[lattice]\nname = bad\ngram = 0 1 2 0\n")
        assert main(["noghost", "--n", "1", "--lattice", str(path)], config) == ExitCode.CONFIG

    def test_unparseable_lattice_file(self, config, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("[lattice]\nname = bad\ngram = 0 one 1 0\n")
        assert main(["noghost", "--n", "1", "--lattice", str(path)], config) == ExitCode.CONFIG


class TestJsonReport:
    ARGS = ["necklace", "--window", "1", "--degree", "4", "--json"]

    def test_schema(self, config, capsys):
        assert main(self.ARGS, config) == ExitCode.OK
        body = json.loads(capsys.readouterr().out)
        assert set(body) == {"suite", "params", "checks", "versions"}
        assert body["suite"] == "necklace"
        assert body["params"] == {"window": 1, "degree": 4}
        assert all(c["status"] == "PASS" for c in body["checks"])
        assert set(body["versions"]) == {"toolkit", "config"}

    def test_deterministic(self, config, capsys):
        main(self.ARGS, config)
        first = capsys.readouterr().out
        main(self.ARGS, config)
        assert capsys.readouterr().out == first


class TestRunner:
    def test_noghost_certificates(self, config):
        runner = SuiteRunner(config)
        report = run_suite(SuiteConfig.with_defaults("noghost", {"n": 3}), runner)
        ids = [c.id for c in report.checks]
        assert "m-matrix.n3.determinant" in ids
        assert any(i.startswith("discriminant.") for i in ids)
        assert report.passed, [c.to_dict() for c in report.failed]

    def test_config_hash_tracks_params(self):
        a = SuiteConfig.with_defaults("witt", {"order": 2})
        b = SuiteConfig.with_defaults("witt", {"order": 3})
        assert a.content_hash() != b.content_hash()
        assert a.content_hash() == SuiteConfig.with_defaults("witt", {"order": 2}, cache_dir="/elsewhere").content_hash()

    def test_merge_orders_by_suite(self):
        witt = Report(suite="witt")
        witt.add("bracket", True)
        hopf = Report(suite="hopf")
        hopf.add("divided.counit.size2", False, {"failures": ["(1, 1)"]})
        merged = merge_reports([witt, hopf])
        assert [c.id for c in merged.checks] == ["hopf/divided.counit.size2", "witt/bracket"]
        assert merged.exit_code is ExitCode.FAIL


def test_report_table():
    report = Report(suite="necklace", versions={"toolkit": "0.1.0", "config": "ab" * 32})
    report.add("E.w1.deg2.class-exponents", True, {"classes": 3})
    report.skip("E.w1.deg2.product-equals-direct", "no necklace classes")
    table = ReportTable(report).generate_table()
    # two checks, overall verdict and config hash
    assert table.row_count == 4
    assert ReportTable(report, show_passed=False).generate_table().row_count == 3
    assert report.checks[1].status is CheckStatus.SKIP

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oddhom.coloring import outcome_from_dict
from oddhom.experiments import (CSV_HEADER, ORACLE_NONE, ExperimentConfig, TrialRecord,
                                audit_records, band_probability, phi, records_from_csv,
                                records_to_csv, run_experiment, run_trial, wilson_interval)
from oddhom.errors import InvalidParameterError
from oddhom.oracle import FOUND, NONE


class TestPhi:
    def test_values(self):
        assert phi(2, 1.2) == pytest.approx(0.288)
        assert phi(2, 1.7) == pytest.approx(1.7 ** 3 / 6)
        assert phi(3, 1) == pytest.approx(float(Fraction(4, 15)))
        assert phi(1, 3.0) == 0
        assert math.exp(-phi(2, 1.2)) == pytest.approx(0.7498, abs=1e-4)

    @given(st.integers(1, 6), st.floats(0.1, 2.0))
    def test_bands_telescope(self, ell, c):
        total = sum(band_probability(k, c) for k in range(ell, 40))
        assert total == pytest.approx(math.exp(-phi(ell, c)) - math.exp(-phi(40, c)))
        assert band_probability(ell, c) >= 0


class TestWilson:
    def test_closed_form_at_extremes(self):
        n, z = 50, 1.96
        lo, hi = wilson_interval(0, n, z)
        assert lo == 0 and hi == pytest.approx(z * z / (n + z * z))
        lo, hi = wilson_interval(n, n, z)
        assert hi == 1 and lo == pytest.approx(n / (n + z * z))

    def test_contains_estimate(self):
        lo, hi = wilson_interval(30, 100)
        assert lo < 0.3 < hi
        assert wilson_interval(0, 0) == (0.0, 1.0)

    @given(st.integers(0, 500), st.integers(1, 500))
    def test_inside_unit_interval(self, k, n):
        k = min(k, n)
        lo, hi = wilson_interval(k, n, 3.0)
        assert 0 <= lo <= k / n <= hi <= 1


class TestTrial:
    def test_small(self):
        r = run_trial(50, 1.05, 2, 1)
        assert r.consistent()
        assert r.outcome in ("Hom", "OddGirthCertificate", "StructureFailure")

    def test_empty_graph(self):
        r = run_trial(50, 0.0, 2, 3)
        assert r.outcome == "Hom" and r.odd_girth is None

    def test_rejects_ell(self):
        with pytest.raises(InvalidParameterError):
            run_trial(10, 1.0, 0, 0)

    def test_csv_roundtrip(self):
        recs = [run_trial(200, 1.3, 2, s) for s in range(5)]
        text = records_to_csv(recs)
        assert text.splitlines()[0] == ",".join(CSV_HEADER)
        assert records_from_csv(text) == recs
        assert audit_records(records_from_csv(text)) == []

    def test_audit_catches_tampering(self):
        recs = [run_trial(200, 1.3, 2, s) for s in range(3)]
        forged = TrialRecord(recs[0].n, recs[0].c, recs[0].ell, recs[0].seed,
                             recs[0].outcome, 3 if recs[0].odd_girth != 3 else 5)
        assert audit_records([forged] + recs[1:]) == [0]


class TestExperiment:
    def test_zero_trials(self):
        rep, recs = run_experiment(ExperimentConfig(trials=0))
        assert recs == [] and rep.trials == 0 and rep.p_hat is None
        json.dumps(rep.to_dict())

    def test_counts_and_intervals(self):
        rep, recs = run_experiment(ExperimentConfig(n=500, c=1.2, ell=2, trials=40))
        assert sum(rep.counts.values()) == 40
        for lo, hi in (rep.wilson95, rep.wilson3):
            assert 0 <= lo <= hi <= 1
        for b in rep.bands:
            assert 0 <= b["wilson95"][0] <= b["wilson95"][1] <= 1
        assert rep.predicted == pytest.approx(math.exp(-0.288))
        assert rep.to_dict()["schema"] == "1"

    def test_byte_identical_rerun(self, tmp_path):
        cfg = ExperimentConfig(n=400, c=1.2, ell=2, trials=12, seed=5)
        run_experiment(cfg, tmp_path / "a")
        run_experiment(cfg, tmp_path / "b")
        for name in ("trials.csv", "report.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_parallel_matches_serial(self, tmp_path):
        cfg = ExperimentConfig(n=300, c=1.2, ell=2, trials=8, seed=2)
        run_experiment(cfg, tmp_path / "s")
        cfg.workers = 2
        run_experiment(cfg, tmp_path / "p")
        assert (tmp_path / "s" / "trials.csv").read_bytes() == \
            (tmp_path / "p" / "trials.csv").read_bytes()

    def test_persisted_records_reverify(self, tmp_path):
        run_experiment(ExperimentConfig(n=300, c=1.1, ell=2, trials=10), tmp_path)
        recs = records_from_csv((tmp_path / "trials.csv").read_text())
        assert len(recs) == 10 and audit_records(recs) == []

    def test_oracle_cross_validation(self):
        rep, recs = run_experiment(ExperimentConfig(n=30, c=1.1, ell=2, trials=60, oracle=True))
        assert rep.oracle_disagreements == 0
        for r in recs:
            assert r.oracle in (FOUND, NONE)
            if r.outcome == "Hom":
                assert r.oracle == FOUND
            if r.outcome == "OddGirthCertificate":
                assert r.odd_girth < 5 and r.oracle == NONE
            if r.outcome == ORACLE_NONE:
                assert r.oracle == NONE

    def test_io_error_names_path(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(OSError, match="file"):
            run_experiment(ExperimentConfig(n=20, trials=1), blocker / "sub")


class TestConfig:
    def test_parse_and_override(self):
        cfg = ExperimentConfig.from_text("n = 200\n# comment\nc=1.3\noracle=yes\n", n=300)
        assert (cfg.n, cfg.c, cfg.oracle) == (300, 1.3, True)

    @pytest.mark.parametrize("text", ["bogus=1", "n", "oracle=maybe"])
    def test_rejects(self, text):
        with pytest.raises(InvalidParameterError):
            ExperimentConfig.from_text(text)

"""Monte-Carlo trials of the homomorphism pipeline on G(n, c/n).

Trial ``i`` of an experiment uses seed ``base_seed + i``.  Records are written
in trial order, so a rerun of the same configuration reproduces the CSV and
JSON byte for byte (wall-clock timings are only recorded on request).
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .coloring import (Hom, OddGirthCertificate, hom_find, outcome_tag, verify_certificate,
                       verify_coloring)
from .cycles import odd_girth
from .errors import InvalidParameterError
from .graph import generate_gnp
from .oracle import FOUND, NONE, hom_search, odd_cycle_target

SCHEMA = "1"
CSV_HEADER = ["n", "c", "ell", "seed", "outcome", "odd_girth", "ms"]
ORACLE_NONE = "OracleNone"


def phi(ell: int, c: float) -> float:
    """Expected number of odd cycles of length 3, 5, ..., 2l-1 in G(n, c/n) as n -> oo."""
    return sum(c ** (2 * i + 1) / (2 * (2 * i + 1)) for i in range(1, ell))


def band_probability(ell: int, c: float) -> float:
    """Limit probability that the circular chromatic number lies in (2 + 1/(l+1), 2 + 1/l]."""
    return math.exp(-phi(ell, c)) - math.exp(-phi(ell + 1, c))


def wilson_interval(k: int, n: int, z: float = 1.96) -> tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    ph = k / n
    denom = 1 + z * z / n
    centre = (ph + z * z / (2 * n)) / denom
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom
    # the interval always reaches 0 at k=0 and 1 at k=n; avoid rounding short
    lo = 0.0 if k == 0 else max(0.0, centre - half)
    hi = 1.0 if k == n else min(1.0, centre + half)
    return (lo, hi)


@dataclass(frozen=True)
class TrialRecord:
    n: int
    c: float
    ell: int
    seed: int
    outcome: str
    odd_girth: int | None
    ms: float | None = None
    oracle: str | None = None

    def csv_row(self) -> list:
        return [self.n, repr(float(self.c)), self.ell, self.seed, self.outcome,
                "none" if self.odd_girth is None else self.odd_girth,
                "" if self.ms is None else f"{self.ms:.3f}"]

    @classmethod
    def from_csv_row(cls, row: dict) -> "TrialRecord":
        og = row["odd_girth"]
        return cls(int(row["n"]), float(row["c"]), int(row["ell"]), int(row["seed"]),
                   row["outcome"], None if og == "none" else int(og),
                   float(row["ms"]) if row["ms"] else None)

    def consistent(self) -> bool:
        if self.outcome == OddGirthCertificate.kind:
            return self.odd_girth is not None and self.odd_girth < 2 * self.ell + 1
        if self.outcome == Hom.kind:
            return self.odd_girth is None or self.odd_girth >= 2 * self.ell + 1
        return True


def run_trial(n: int, c: float, ell: int, seed: int, oracle: bool = False,
              timing: bool = False, budget: int = 10**6) -> TrialRecord:
    """Sample one graph, run the pipeline and check its payload."""
    if ell < 1:
        raise InvalidParameterError(f"ell must be >= 1, got {ell}")
    t0 = time.perf_counter()
    g = generate_gnp(n, c, seed)
    out = hom_find(g, ell)
    if isinstance(out, Hom) and verify_coloring(g, out.coloring):
        raise AssertionError(f"pipeline returned an improper colouring (seed={seed})")
    if isinstance(out, OddGirthCertificate) and not verify_certificate(g, out.cycle, ell):
        raise AssertionError(f"pipeline returned an invalid certificate (seed={seed})")
    ms = (time.perf_counter() - t0) * 1000 if timing else None
    tag = outcome_tag(out)
    og = odd_girth(g).length

    oracle_status = None
    if oracle:
        res = hom_search(g, odd_cycle_target(ell), budget)
        oracle_status = res.status
        if tag == "StructureFailure" and res.status == NONE:
            tag = ORACLE_NONE
    rec = TrialRecord(n, float(c), ell, seed, tag, og, ms, oracle_status)
    if not rec.consistent():
        raise AssertionError(f"odd girth {og} inconsistent with outcome {tag} (seed={seed})")
    return rec


@dataclass
class ExperimentConfig:
    n: int = 1000
    c: float = 1.1
    ell: int = 2
    trials: int = 100
    seed: int = 0
    oracle: bool = False
    workers: int = 1
    timing: bool = False
    budget: int = 10**6

    @classmethod
    def from_text(cls, text: str, **overrides) -> "ExperimentConfig":
        """Parse flat ``key=value`` lines (``#`` comments); ``overrides`` win."""
        types = {f.name: f.type for f in fields(cls)}
        values: dict = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip()
            if not sep or key not in types:
                raise InvalidParameterError(f"bad config line: {raw!r}")
            values[key] = _coerce(types[key], val.strip())
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")
        return d


def _coerce(typ: str, val: str):
    if typ == "bool":
        if val.lower() in ("1", "true", "yes", "on"):
            return True
        if val.lower() in ("0", "false", "no", "off"):
            return False
        raise InvalidParameterError(f"not a boolean: {val!r}")
    return {"int": int, "float": float}[typ](val)


@dataclass
class ExperimentReport:
    config: dict
    counts: dict[str, int]
    trials: int
    p_hat: float | None
    wilson95: tuple[float, float]
    wilson3: tuple[float, float]
    predicted: float
    within_3_sigma: bool | None
    bands: list[dict]
    bipartite_fraction: float | None
    oracle_disagreements: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = SCHEMA
        d["wilson95"] = list(self.wilson95)
        d["wilson3"] = list(self.wilson3)
        return d


def _run_one(args) -> TrialRecord:
    cfg, i = args
    return run_trial(cfg.n, cfg.c, cfg.ell, cfg.seed + i, cfg.oracle, cfg.timing, cfg.budget)


def summarize(cfg: ExperimentConfig, records: list[TrialRecord]) -> ExperimentReport:
    counts = {t: 0 for t in ("Hom", "OddGirthCertificate", "StructureFailure", ORACLE_NONE)}
    for r in records:
        counts[r.outcome] += 1
    N = len(records)
    target = 2 * cfg.ell + 1
    k = sum(1 for r in records if r.odd_girth is None or r.odd_girth >= target)
    pred = math.exp(-phi(cfg.ell, cfg.c))
    p_hat = k / N if N else None
    w3 = wilson_interval(k, N, 3.0)
    within = (w3[0] <= pred <= w3[1]) if N else None

    bands = []
    for ell in range(1, max(cfg.ell + 2, 4) + 1):
        hits = sum(1 for r in records if r.odd_girth == 2 * ell + 1)
        bands.append({
            "ell": ell,
            "interval": [2 + 1 / (ell + 1), 2 + 1 / ell],
            "empirical": hits / N if N else None,
            "wilson95": list(wilson_interval(hits, N)),
            "predicted": band_probability(ell, cfg.c),
        })
    bip = sum(1 for r in records if r.odd_girth is None) / N if N else None

    disagreements = 0
    for r in records:
        if r.oracle is None:
            continue
        if r.outcome == Hom.kind and r.oracle != FOUND:
            disagreements += 1
        if r.outcome == OddGirthCertificate.kind and r.oracle == FOUND:
            disagreements += 1
    return ExperimentReport(cfg.echo(), counts, N, p_hat, wilson_interval(k, N), w3, pred,
                            within, bands, bip, disagreements)


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    return [TrialRecord.from_csv_row(row) for row in csv.DictReader(io.StringIO(text))]


def run_experiment(cfg: ExperimentConfig, out_dir: str | Path | None = None,
                   ) -> tuple[ExperimentReport, list[TrialRecord]]:
    """Run ``cfg.trials`` trials, aggregate, and optionally persist
    ``trials.csv`` and ``report.json`` under ``out_dir``."""
    jobs = [(cfg, i) for i in range(cfg.trials)]
    if cfg.workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            records = list(ex.map(_run_one, jobs, chunksize=max(1, cfg.trials // (4 * cfg.workers))))
    else:
        records = [_run_one(j) for j in jobs]
    report = summarize(cfg, records)
    if out_dir is not None:
        out = Path(out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "trials.csv").write_bytes(records_to_csv(records).encode())
            (out / "report.json").write_bytes(
                (json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n").encode())
        except OSError as exc:
            raise OSError(f"cannot write experiment artifacts to {out}: {exc}") from exc
    return report, records


def audit_records(records: list[TrialRecord]) -> list[int]:
    """Indices of records that do not survive re-derivation from their seeds.

    Each graph is regenerated and its odd girth recomputed; the stored tag
    must also be consistent with that odd girth.
    """
    bad = []
    for i, r in enumerate(records):
        og = odd_girth(generate_gnp(r.n, r.c, r.seed)).length
        if og != r.odd_girth or not r.consistent():
            bad.append(i)
    return bad

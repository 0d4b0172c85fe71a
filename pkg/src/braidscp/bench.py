"""Experiment harness: random instances, set-size statistics, persistence.

A trial draws a random conjugate pair (a, c) = (b^x, b^y), then measures
the sizes of the sets a benchmarked method would search through:

- LL_interval:       a^G intersected with [inf c, infinity],
- inf_sup_interval:  a^G intersected with [inf c, sup c],
- LSS:               the lex' lo vector with sups dropped to infinity,
- LSSS:              the lex' minimal interval (the invariant the solver
                     uses; the kind token keeps the reporting name).

A computation whose orbit hits the cap scores as infinity for that trial
and counts toward the failure percentage; infinities participate in the
min / lower-median / max aggregation, sorting above every integer.

Everything is deterministic: per-trial seeds are derived by hashing the
experiment seed with the trial index, so a worker pool (BRAIDSCP_WORKERS)
cannot change any reported number.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from .braids import structure_for
from .core import (
    GarsideStructure,
    Interval,
    TupleElement,
    conjugate,
    make_element,
)
from .errors import BadParameter
from .solver import DEFAULT_CAP, invariant_set, orbit_in_interval

KINDS = ("LL_interval", "inf_sup_interval", "LSS", "LSSS")

_KIND_INVARIANT = {"LSS": "LSS", "LSSS": "LSSS_prime"}


def default_word_length(n: int) -> int:
    """ceil(2 * N * ln N) letters, the harness's random word length.

    Natural log keeps the small-N baseline orbits well inside the
    100,000-member enumeration cap; pass word_length to override.
    """
    return math.ceil(2 * n * math.log(n))


def _structure(structure, n: int) -> GarsideStructure:
    if isinstance(structure, GarsideStructure):
        if structure.n != n:
            raise BadParameter(
                f"structure is on B_{structure.n} but N = {n} was requested")
        return structure
    return structure_for(structure, n)


def random_element(structure, n: int, seed, word_length: int | None = None):
    """Normal form of a random word: uniform atoms, each inverted with
    probability 1/2, of length ceil(2 N ln N) unless overridden."""
    st = _structure(structure, n)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    length = default_word_length(n) if word_length is None else word_length
    word = [rng.randrange(1, st.n_atoms + 1) * (1 if rng.random() < 0.5 else -1)
            for _ in range(length)]
    return make_element(word, st)


class ConjugatePair(NamedTuple):
    a: TupleElement
    c: TupleElement
    b: TupleElement
    x: object
    y: object


def random_conjugate_pair(structure, n: int, r: int, seed,
                          word_length: int | None = None) -> ConjugatePair:
    """(a, c) = (b^x, b^y) with the generating data kept as ground truth."""
    st = _structure(structure, n)
    rng = random.Random(seed)
    b = TupleElement(st, tuple(random_element(st, n, rng, word_length)
                               for _ in range(r)))
    x = random_element(st, n, rng, word_length)
    y = random_element(st, n, rng, word_length)
    return ConjugatePair(conjugate(b, x), conjugate(b, y), b, x, y)


@dataclass(frozen=True)
class ExperimentConfig:
    structure: str
    n: int
    r: int
    trials: int
    cap: int = DEFAULT_CAP
    mod_tau: bool = True
    kinds: tuple = KINDS
    seed: int = 0
    out: str | None = None
    word_length: int | None = field(default=None)

    def __post_init__(self):
        if self.structure not in ("artin", "bkl"):
            raise BadParameter(f"unknown structure token {self.structure!r}")
        if self.trials < 1:
            raise BadParameter("trials must be at least 1")
        if self.cap < 1:
            raise BadParameter("cap must be at least 1")
        if self.r < 1:
            raise BadParameter("r must be at least 1")
        kinds = tuple(self.kinds)
        bad = [k for k in kinds if k not in KINDS]
        if bad or not kinds:
            raise BadParameter(f"kinds must be a nonempty subset of {KINDS}")
        object.__setattr__(self, "kinds",
                           tuple(k for k in KINDS if k in kinds))

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        allowed = {"structure", "n", "r", "trials", "cap", "mod_tau",
                   "kinds", "seed", "out", "word_length"}
        unknown = set(obj) - allowed
        if unknown:
            raise BadParameter(f"unknown config keys: {sorted(unknown)}")
        if "kinds" in obj:
            obj = dict(obj, kinds=tuple(obj["kinds"]))
        return cls(**obj)

    def to_dict(self) -> dict:
        return {"structure": self.structure, "n": self.n, "r": self.r,
                "trials": self.trials, "cap": self.cap,
                "mod_tau": self.mod_tau, "kinds": list(self.kinds),
                "seed": self.seed, "out": self.out,
                "word_length": self.word_length}


class StatRow(NamedTuple):
    kind: str
    structure: str
    n: int
    r: int
    min: object
    median: object
    max: object
    failure_pct: float
    trials: int


def trial_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _measure(kind: str, c: TupleElement, cap: int, mod_tau: bool):
    if kind in _KIND_INVARIANT:
        oset = invariant_set(c, _KIND_INVARIANT[kind], cap=cap,
                             mod_tau=mod_tau, collect="size")
    else:
        hi = ((math.inf,) * c.r if kind == "LL_interval" else c.sup_vec)
        iv = Interval(c.inf_vec, hi)
        oset = orbit_in_interval(c, iv, cap=cap, mod_tau=mod_tau,
                                 collect="size")
    return math.inf if oset.truncated else oset.size


def _run_trial(cfg: ExperimentConfig, index: int) -> dict:
    pair = random_conjugate_pair(cfg.structure, cfg.n, cfg.r,
                                 trial_seed(cfg.seed, index),
                                 cfg.word_length)
    sizes = {k: _measure(k, pair.c, cfg.cap, cfg.mod_tau) for k in cfg.kinds}
    # set containments: the invariant box sits inside the lo-only box
    if ("LSSS" in sizes and "LSS" in sizes
            and math.inf not in (sizes["LSSS"], sizes["LSS"])):
        assert sizes["LSSS"] <= sizes["LSS"], (index, sizes)
    if ("inf_sup_interval" in sizes and "LL_interval" in sizes
            and math.inf not in (sizes["inf_sup_interval"],
                                 sizes["LL_interval"])):
        assert sizes["inf_sup_interval"] <= sizes["LL_interval"], (index, sizes)
    return sizes


def _pool_trial(args):
    cfg_dict, index = args
    return _run_trial(ExperimentConfig.from_dict(cfg_dict), index)


def run_experiment(cfg: ExperimentConfig) -> list:
    """One StatRow per configured kind, aggregated over cfg.trials."""
    workers = int(os.environ.get("BRAIDSCP_WORKERS", "1") or "1")
    if workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(
                _pool_trial,
                [(cfg.to_dict(), t) for t in range(cfg.trials)]))
    else:
        per_trial = [_run_trial(cfg, t) for t in range(cfg.trials)]

    rows = []
    for kind in cfg.kinds:
        values = sorted(sizes[kind] for sizes in per_trial)
        fails = sum(1 for v in values if v == math.inf)
        rows.append(StatRow(
            kind=kind, structure=cfg.structure, n=cfg.n, r=cfg.r,
            min=values[0], median=values[(len(values) - 1) // 2],
            max=values[-1], failure_pct=100.0 * fails / len(values),
            trials=cfg.trials))
    return rows


def table1_rows(n: int, r: int, trials: int, cap: int = DEFAULT_CAP,
                seed: int = 0, kinds=KINDS, word_length: int | None = None,
                structures=("artin", "bkl")) -> list:
    """All-kinds size statistics for both structures at one (N, r)."""
    rows = []
    for token in structures:
        cfg = ExperimentConfig(structure=token, n=n, r=r, trials=trials,
                               cap=cap, mod_tau=True, kinds=tuple(kinds),
                               seed=seed, word_length=word_length)
        rows.extend(run_experiment(cfg))
    return rows


def table2_rows(n: int, r_values, trials: int, cap: int = DEFAULT_CAP,
                seed: int = 0, word_length: int | None = None) -> list:
    """Invariant-set sizes over growing r in the band-generator structure."""
    rows = []
    for r in r_values:
        cfg = ExperimentConfig(structure="bkl", n=n, r=int(r), trials=trials,
                               cap=cap, mod_tau=True, kinds=("LSSS",),
                               seed=seed, word_length=word_length)
        rows.extend(run_experiment(cfg))
    return rows


def _render(value) -> str:
    if value == math.inf:
        return "inf"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return f"{value:g}" if isinstance(value, float) else str(value)


_COLUMNS = ("kind", "structure", "N", "r", "min", "median", "max",
            "failure_pct", "trials")


def emit(rows, format: str = "csv", path: str | None = None) -> str:
    """Serialize StatRows; writes to path when given, returns the text."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_COLUMNS)
        for row in rows:
            writer.writerow([row.kind, row.structure, row.n, row.r,
                             _render(row.min), _render(row.median),
                             _render(row.max), _render(row.failure_pct),
                             row.trials])
        text = buf.getvalue()
    elif format == "json":
        payload = [{
            "kind": row.kind, "structure": row.structure, "N": row.n,
            "r": row.r,
            "min": "inf" if row.min == math.inf else row.min,
            "median": "inf" if row.median == math.inf else row.median,
            "max": "inf" if row.max == math.inf else row.max,
            "failure_pct": row.failure_pct, "trials": row.trials,
        } for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        raise BadParameter(f"unknown output format {format!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

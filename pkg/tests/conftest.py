"""Shared builders for the test suite."""

import random

import pytest

from braidscp import (
    ArtinStructure,
    BKLStructure,
    TupleElement,
    make_element,
)


def rand_word(st, length, rng):
    return [rng.choice([1, -1]) * rng.randrange(1, st.n_atoms + 1)
            for _ in range(length)]


def rand_element(st, length, rng):
    return make_element(rand_word(st, length, rng), st)


def rand_tuple(st, r, length, rng):
    return TupleElement(
        st, tuple(rand_element(st, length, rng) for _ in range(r))
    )


@pytest.fixture(params=["artin", "bkl"])
def structure_token(request):
    return request.param


VERDICTS = []

ACCEPTANCE_TAGS = {
    "test_ac01_normal_form_suite": "AC1",
    "test_ac02_exhaustive_lattice_oracle": "AC2",
    "test_ac03_delta_meet_convexity": "AC3",
    "test_ac04_sliding_step_bound": "AC4",
    "test_ac05_minimal_simple_equivalence": "AC5",
    "test_ac06_decide_and_search": "AC6",
    "test_ac07_prefix_projection_relations": "AC7",
    "test_ac08_size_table_small": "AC8",
    "test_ac09_size_table_large": "AC9",
    "test_ac10_reductions_end_to_end": "AC10",
    "test_n16_baselines_exceed_cap": "N16",
}


def record_verdict(tag: str, ok: bool, detail: str) -> str:
    line = f"[{tag}] {'PASS' if ok else 'FAIL'} {detail}"
    VERDICTS.append((tag, line))
    return line


def pytest_terminal_summary(terminalreporter):
    """One verdict line per acceptance test, past the capture machinery."""
    seen = {tag for tag, _ in VERDICTS}
    lines = [line for _, line in VERDICTS]
    for kind in ("failed", "error"):
        for report in terminalreporter.stats.get(kind, []):
            tag = ACCEPTANCE_TAGS.get(report.location[2])
            if tag and tag not in seen:
                lines.append(f"[{tag}] FAIL (aborted mid-run; "
                             "see the failure detail above)")
    if lines:
        terminalreporter.section("acceptance verdicts")
        for line in lines:
            terminalreporter.write_line(line)


def small_structures():
    """One small instance of each structure, fresh caches per call."""
    return [ArtinStructure(3), ArtinStructure(4),
            BKLStructure(3), BKLStructure(4)]


def seeded(seed=0):
    return random.Random(seed)

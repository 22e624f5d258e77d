import time
from dataclasses import dataclass
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from groupcut.corpus import CorpusEntry, generate
from groupcut.gridoracle import grid_extremality_oracle
from groupcut.perturbation import ExtremalityReport, extremality_test

CORPUS_SIZE = 110
CORPUS_SEED = 1


@dataclass
class CorpusRun:
    entry: CorpusEntry
    report: ExtremalityReport
    oracle: str
    seconds: float


_RUNS: list[CorpusRun] = []


def corpus_runs() -> list[CorpusRun]:
    """Grid-free verdict and oracle verdict for every corpus function, computed once per session."""
    if not _RUNS:
        for e in generate(CORPUS_SIZE, seed=CORPUS_SEED):
            t = time.perf_counter()
            report = extremality_test(e.fn)
            oracle = grid_extremality_oracle(e.fn)
            _RUNS.append(CorpusRun(e, report, oracle, time.perf_counter() - t))
    return _RUNS


@pytest.fixture(scope="session")
def runs() -> list[CorpusRun]:
    return corpus_runs()


def small_rationals(max_den: int = 12, lo: int = -2, hi: int = 2):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def unit_rationals(max_den: int = 12):
    return st.integers(1, max_den).flatmap(lambda d: st.integers(0, d).map(lambda n: Fraction(n, d)))

import functools

import numpy as np
import pytest

from taucluster.fdalg import build_algebra, builtin_presentations, quotient
from taucluster.taured import TauSide

CORPUS = ("two-cycle", "point", "two-points", "A2", "A3")


@functools.lru_cache(maxsize=None)
def algebra(name):
    return build_algebra(builtin_presentations()[name])


@functools.lru_cache(maxsize=None)
def side(name):
    s = TauSide(algebra(name))
    s.theory.siltings()
    return s


def loewy_quotients(alg):
    """P(v)/rad^k P(v) for k >= 1: every indecomposable of a Nakayama algebra."""
    fld = alg.field
    out = []
    for v in range(alg.nvert):
        p = alg.projective(v)
        cols = np.eye(p.dim, dtype=np.int64)
        while fld.rank(cols):
            cols = np.hstack([p.act[b] @ cols % fld.p for b in alg.radical_basis] or [np.zeros((p.dim, 1), dtype=np.int64)])
            out.append(quotient(p, cols)[0] if fld.rank(cols) else p)
    return out


@pytest.fixture(params=CORPUS)
def corpus_side(request):
    return side(request.param)


@pytest.fixture
def loop_side():
    return side("two-cycle")


# one summary line per acceptance criterion -------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n = mark.args[0]
    ok = call.excinfo is None
    _criteria[n] = _criteria.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _criteria[n] else 'FAIL'}")

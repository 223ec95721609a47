import math
import time

import pytest

from nilproj.cohom import h1_projectivity_check
from nilproj.corpus import generate_corpus
from nilproj.detect import DetectConfig, detect
from nilproj.modrep import oracle_projective

CORPUS_SEED = 20260810
CORPUS_COUNT = 200


@pytest.fixture(scope="session")
def corpus_entries():
    return generate_corpus(CORPUS_SEED, CORPUS_COUNT)


@pytest.fixture(scope="session")
def corpus_verdicts(corpus_entries):
    """Oracle, scan, and H^1 verdicts for every corpus entry, with timings."""
    t0 = time.perf_counter()
    rows = []
    config = DetectConfig(e_max=2, use_generic=False, cross_check=True)
    for entry in corpus_entries:
        oracle = oracle_projective(entry.module)
        report = detect(entry.module, config)
        rows.append({"entry": entry, "oracle": oracle, "report": report})
    detect_seconds = time.perf_counter() - t0

    t0 = time.perf_counter()
    for row in rows:
        row["h1"] = h1_projectivity_check(row["entry"].module.pres, row["entry"].module)
    h1_seconds = time.perf_counter() - t0

    return {"rows": rows, "detect_seconds": detect_seconds, "h1_seconds": h1_seconds}


# -- independent small oracles used across test modules -----------------------

def span_rank(field, M):
    """Rank by enumerating the column span; independent of elimination."""
    m = M.rows
    span = {(0,) * m}
    for j in range(M.cols):
        col = tuple(int(M.a[i, j]) for i in range(m))
        grown = set()
        for v in span:
            for s in range(field.q):
                grown.add(tuple(field.add(vi, field.mul(s, ci)) for vi, ci in zip(v, col)))
        span = grown
    return round(math.log(len(span), field.q)) if len(span) > 1 else 0


def brute_force_partition(field, N, p):
    """Jordan partition from span-enumerated kernel dimensions."""
    from nilproj.fields import Matrix

    m = N.rows
    powers = [Matrix.identity(field, m)]
    for _ in range(p):
        powers.append(powers[-1] @ N)
    ker = [m - span_rank(field, P) for P in powers]
    blocks_ge = [ker[j] - ker[j - 1] for j in range(1, p + 1)]  # # blocks of size >= j
    parts = []
    for j in range(1, p + 1):
        nxt = blocks_ge[j] if j < p else 0
        parts.extend([j] * (blocks_ge[j - 1] - nxt))
    return tuple(sorted(parts, reverse=True))

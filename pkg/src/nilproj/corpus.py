"""Seeded module corpora and the three-way agreement run.

The corpus is a deterministic stream of random-quotient modules over the
stock algebras; every entry is judged by the dimension-count oracle, by the
extension scan, and by the H^1 criterion, and the disagreement counts are
what the acceptance run gates on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cohom import h1_projectivity_check
from .detect import INCOMPLETE_SCAN, DetectConfig, detect
from .liealg import preset_algebra
from .modrep import ModuleRep, oracle_projective, random_quotient

# family rows: (preset, p, param, share, ranks, generator counts, dim cap)
DEFAULT_FAMILIES = (
    ("two-roots-sl3", 2, None, 0.40, (1, 2, 3), (0, 1, 1, 2, 2), 12),
    ("two-roots-sl3", 3, None, 0.35, (1, 2, 3), (0, 1, 1, 2, 2), 27),
    ("heisenberg", 3, None, 0.25, (1,), (0, 1, 1, 2, 2, 3), 27),
)


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    preset: str
    p: int
    rank: int
    generators: int
    seed: int
    module: ModuleRep


def generate_corpus(seed: int, count: int = 200, families=DEFAULT_FAMILIES) -> list[CorpusEntry]:
    """Deterministically generate `count` nonzero modules across the families.

    Each entry records the random-quotient parameters, so any module can be
    rebuilt from its row alone.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    entries: list[CorpusEntry] = []
    presets = {}
    for fam_index, (name, p, param, share, ranks, gens, cap) in enumerate(families):
        quota = int(round(share * count))
        if fam_index == len(families) - 1:
            quota = count - len(entries)
        pres = presets.setdefault((name, p, param), preset_algebra(name, p, param))
        made = 0
        while made < quota:
            rank = int(ranks[int(rng.integers(0, len(ranks)))])
            ngen = int(gens[int(rng.integers(0, len(gens)))])
            sub_seed = int(rng.integers(0, 2**63 - 1))
            M = random_quotient(pres, rank, ngen, sub_seed)
            if M.dim == 0 or M.dim > cap:
                continue
            entries.append(
                CorpusEntry(
                    label=f"{name}-p{p}-{len(entries):03d}",
                    preset=name,
                    p=p,
                    rank=rank,
                    generators=ngen,
                    seed=sub_seed,
                    module=M,
                )
            )
            made += 1
    return entries


@dataclass(frozen=True)
class CorpusResult:
    label: str
    dim: int
    oracle: str
    detect_verdict: str
    h1_verdict: str
    points_tested: int


def run_corpus(entries, e_max: int = 2, with_h1: bool = True) -> dict:
    """Oracle vs detect vs H^1 on every entry; returns the summary dict."""
    results: list[CorpusResult] = []
    config = DetectConfig(e_max=e_max, use_generic=False, cross_check=True)
    for entry in entries:
        M = entry.module
        oracle = oracle_projective(M)
        report = detect(M, config)
        h1 = h1_projectivity_check(M.pres, M) if with_h1 else ""
        results.append(
            CorpusResult(
                label=entry.label,
                dim=M.dim,
                oracle=oracle,
                detect_verdict=report.verdict,
                h1_verdict=h1,
                points_tested=report.points_tested,
            )
        )
    detect_agree = sum(1 for r in results if r.detect_verdict == r.oracle)
    h1_agree = sum(1 for r in results if not with_h1 or r.h1_verdict == r.oracle)
    incomplete = sum(1 for r in results if r.detect_verdict == INCOMPLETE_SCAN)
    summary = {
        "count": len(results),
        "e_max": e_max,
        "detect_agree": detect_agree,
        "h1_agree": h1_agree if with_h1 else None,
        "incomplete_scans": incomplete,
        "projective": sum(1 for r in results if r.oracle == "PROJECTIVE"),
        "entries": [
            {
                "label": r.label,
                "dim": r.dim,
                "oracle": r.oracle,
                "detect": r.detect_verdict,
                "h1": r.h1_verdict or None,
                "points": r.points_tested,
            }
            for r in results
        ],
    }
    return summary

"""Command-line surface: validate inputs, run the oracle, the detection
scan, the cohomology checks, or a whole corpus, and emit human tables plus
byte-reproducible JSON reports.

Exit codes: 0 projective / full agreement, 1 not projective, 2 invalid
input, 3 incomplete scan or cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import cohom, corpus as corpus_mod, detect as detect_mod, modrep
from .fields import get_finite_field
from .liealg import (
    LieAlgebraPresentation,
    algebra_from_file,
    algebra_validate,
    preset_algebra,
)
from .modrep import (
    NOT_PROJECTIVE,
    PROJECTIVE,
    ModuleRep,
    module_validate,
    oracle_projective,
    radical_filtration,
)

EXIT_OK = 0
EXIT_NOT_PROJECTIVE = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


@dataclass(frozen=True)
class RunConfig:
    preset: Optional[str] = None
    p: Optional[int] = None
    param: Optional[int] = None
    algebra_file: Optional[str] = None
    module_spec: Optional[str] = None
    e_max: int = 2
    use_generic: bool = True
    cross_check: bool = False
    seed: Optional[int] = None
    count: int = 200
    degree: int = 4
    emit_json: Optional[str] = None


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n").encode()


def _emit(config: RunConfig, payload: dict):
    if config.emit_json is None:
        return
    data = canonical_json_bytes(payload)
    if config.emit_json == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(config.emit_json, "wb") as fh:
            fh.write(data)


class InputError(Exception):
    pass


def _load_algebra(config: RunConfig) -> LieAlgebraPresentation:
    if config.algebra_file:
        try:
            pres = algebra_from_file(config.algebra_file)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot load algebra: {exc}") from exc
    elif config.preset:
        if config.p is None:
            raise InputError("--p is required with --preset")
        try:
            pres = preset_algebra(config.preset, config.p, config.param)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        raise InputError("supply --preset with --p, or --algebra FILE")
    findings = algebra_validate(pres)
    if findings:
        lines = "; ".join(f.message for f in findings)
        raise InputError(f"algebra fails validation: {lines}")
    return pres


def _parse_module(pres: LieAlgebraPresentation, spec: str) -> ModuleRep:
    if spec is None:
        raise InputError("--module is required")
    if spec.endswith(".json") or "/" in spec:
        try:
            return modrep.module_from_file(pres, spec)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot load module: {exc}") from exc
    name, _, rest = spec.partition(":")
    try:
        if name == "free":
            return modrep.free_module(pres, int(rest or 1))
        if name == "trivial":
            return modrep.trivial_module(pres, int(rest or 1))
        if name == "cps-analogue":
            return modrep.cps_analogue(pres)
        if name == "induced":
            idx = [int(x) for x in rest.split("+")] if rest else [1]
            h_basis = []
            for i in idx:
                if not 1 <= i <= pres.n:
                    raise ValueError(f"basis index {i} out of range")
                v = [0] * pres.n
                v[i - 1] = 1
                h_basis.append(v)
            return modrep.induced_module(pres, h_basis)
        if name == "random-quotient":
            parts = [int(x) for x in rest.split(",")]
            if len(parts) != 3:
                raise ValueError("random-quotient:rank,generators,seed")
            return modrep.random_quotient(pres, *parts)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"cannot build module {spec!r}: {exc}") from exc
    raise InputError(f"unknown module kind {name!r}")


def _load_module(pres: LieAlgebraPresentation, config: RunConfig) -> ModuleRep:
    M = _parse_module(pres, config.module_spec)
    findings = module_validate(pres, M)
    if findings:
        lines = "; ".join(f.message for f in findings)
        raise InputError(f"module fails validation: {lines}")
    return M


def _field_label(p: int, e: int) -> str:
    return f"GF({p**e})"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_detect(config: RunConfig) -> int:
    pres = _load_algebra(config)
    M = _load_module(pres, config)
    trace: list = []
    report = detect_mod.detect(
        M,
        detect_mod.DetectConfig(
            e_max=config.e_max,
            use_generic=config.use_generic,
            cross_check=config.cross_check,
        ),
        on_point=lambda e, coeffs, parts, free: trace.append((e, coeffs, parts, free)),
    )
    print(f"module dim {M.dim} over {pres!r}")
    if trace:
        print(f"{'field':<8} {'point':<24} {'jordan':<16} free")
        for e, coeffs, parts, free in trace:
            print(
                f"{_field_label(pres.p, e):<8} {str(tuple(int(c) for c in coeffs)):<24} "
                f"{str(list(parts)):<16} {'yes' if free else 'NO'}"
            )
    if report.generic is not None:
        for compo in report.generic:
            print(f"generic  {str(compo.coeffs):<24} {str(list(compo.jordan)):<16} "
                  f"{report.generic_verdict}")
    print(f"verdict: {report.verdict_display()}")
    if report.witness is not None:
        print(f"witness: coeffs {report.witness.coeffs} jordan {list(report.witness.jordan)}")
    if report.oracle is not None:
        print(f"oracle:  {report.oracle} ({report.consistency})")
    _emit(config, report.to_json_dict())
    if report.consistency in (detect_mod.DISAGREEMENT, detect_mod.INCOMPLETE_SCAN):
        return EXIT_INCONSISTENT
    if report.verdict == NOT_PROJECTIVE:
        return EXIT_NOT_PROJECTIVE
    return EXIT_OK


def cmd_oracle(config: RunConfig) -> int:
    pres = _load_algebra(config)
    M = _load_module(pres, config)
    filt = radical_filtration(M)
    pn = pres.p**pres.n
    verdict = oracle_projective(M)
    print(f"dim M = {M.dim}")
    print(f"radical filtration: {list(filt.dims)}")
    print(f"top dimension: {filt.m_top}, dim u(g) = {pn}")
    relation = "=" if M.dim == filt.m_top * pn else "!="
    print(f"{M.dim} {relation} {filt.m_top}*{pn} -> {verdict}")
    _emit(config, {
        "dim": M.dim,
        "filtration": list(filt.dims),
        "m_top": filt.m_top,
        "dim_ug": pn,
        "verdict": verdict,
    })
    return EXIT_OK if verdict == PROJECTIVE else EXIT_NOT_PROJECTIVE


def cmd_cohom(config: RunConfig) -> int:
    pres = _load_algebra(config)
    M = _load_module(pres, config)
    seg = cohom.minimal_resolution(pres, modrep.trivial_module(pres, 1), config.degree + 1)
    dims = cohom.cohomology_dims(pres, M, config.degree)
    h1 = cohom.h1_projectivity_check(pres, M)
    oracle = oracle_projective(M)
    print(f"betti numbers of k: {list(seg.betti[: config.degree + 1])}")
    print(f"H^0..H^{config.degree}(g, M): {dims}")
    print(f"H1 criterion: {h1}; oracle: {oracle}")
    _emit(config, {
        "betti": list(seg.betti[: config.degree + 1]),
        "dims": dims,
        "h1_verdict": h1,
        "oracle": oracle,
    })
    if h1 != oracle:
        return EXIT_INCONSISTENT
    return EXIT_OK if h1 == PROJECTIVE else EXIT_NOT_PROJECTIVE


def cmd_corpus(config: RunConfig) -> int:
    if config.seed is None:
        raise InputError("--seed is required for corpus runs")
    entries = corpus_mod.generate_corpus(config.seed, config.count)
    summary = corpus_mod.run_corpus(entries, e_max=config.e_max)
    count = summary["count"]
    print(f"{'family':<24} {'n':>4} {'proj':>5} {'notproj':>8}")
    fams: dict[str, list[int]] = {}
    for row in summary["entries"]:
        fam = row["label"].rsplit("-", 1)[0]
        stats = fams.setdefault(fam, [0, 0, 0])
        stats[0] += 1
        stats[1] += row["oracle"] == PROJECTIVE
        stats[2] += row["oracle"] == NOT_PROJECTIVE
    for fam in sorted(fams):
        n, pr, np_ = fams[fam]
        print(f"{fam:<24} {n:>4} {pr:>5} {np_:>8}")
    print(f"oracle vs detect agreement: {summary['detect_agree']}/{count}")
    print(f"oracle vs H1 agreement:     {summary['h1_agree']}/{count}")
    print(f"incomplete scans:           {summary['incomplete_scans']}")
    _emit(config, {"seed": config.seed, "e_max": config.e_max, **summary})
    ok = (
        summary["detect_agree"] == count
        and summary["h1_agree"] == count
        and summary["incomplete_scans"] == 0
    )
    return EXIT_OK if ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilproj",
        description="projectivity detection over restricted enveloping algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, module=True):
        sp.add_argument("--preset", choices=[
            "two-roots-sl3", "heisenberg", "full-nilradical", "one-dim"])
        sp.add_argument("--p", type=int)
        sp.add_argument("--param", type=int, help="preset parameter (ambient size)")
        sp.add_argument("--algebra", dest="algebra_file", help="algebra JSON file")
        if module:
            sp.add_argument("--module", dest="module_spec",
                            help="free:N | trivial:N | cps-analogue | induced:I[+J..] | "
                                 "random-quotient:R,G,S | module JSON file")
        sp.add_argument("--emit-json", dest="emit_json",
                        help="write the JSON report to this path ('-' for stdout)")

    d = sub.add_parser("detect", help="run the cyclic-subalgebra detection scan")
    common(d)
    d.add_argument("--e-max", type=int, default=2)
    d.add_argument("--generic", dest="use_generic", action="store_true", default=True)
    d.add_argument("--no-generic", dest="use_generic", action="store_false")
    d.add_argument("--cross-check", action="store_true")

    o = sub.add_parser("oracle", help="dimension-count projectivity oracle")
    common(o)

    c = sub.add_parser("cohom", help="resolution and cohomology checks")
    common(c)
    c.add_argument("--degree", type=int, default=4)

    k = sub.add_parser("corpus", help="seeded corpus agreement run")
    common(k, module=False)
    k.add_argument("--seed", type=int)
    k.add_argument("--count", type=int, default=200)
    k.add_argument("--e-max", type=int, default=2)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        preset=getattr(args, "preset", None),
        p=getattr(args, "p", None),
        param=getattr(args, "param", None),
        algebra_file=getattr(args, "algebra_file", None),
        module_spec=getattr(args, "module_spec", None),
        e_max=getattr(args, "e_max", 2),
        use_generic=getattr(args, "use_generic", True),
        cross_check=getattr(args, "cross_check", False),
        seed=getattr(args, "seed", None),
        count=getattr(args, "count", 200),
        degree=getattr(args, "degree", 4),
        emit_json=getattr(args, "emit_json", None),
    )


_COMMANDS = {
    "detect": cmd_detect,
    "oracle": cmd_oracle,
    "cohom": cmd_cohom,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    try:
        return _COMMANDS[args.command](config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Projectivity detection by restriction to cyclic subalgebras.

A module is probed at every projective null-cone point over GF(p^e) for
e = 1..e_max, in a deterministic order, plus (optionally) at the generic
point of the null cone over GF(p)(t1..tn).  A restriction with some Jordan
block smaller than p certifies non-projectivity; the dimension-count oracle
cross-checks every exhaustive verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fields import (
    FiniteField,
    FunctionField,
    get_finite_field,
    jordan_type,
)
from .fields import poly as _poly
from .liealg import null_cone_points, null_cone_test
from .modrep import (
    NOT_PROJECTIVE,
    PROJECTIVE,
    ModuleRep,
    assert_module_valid,
    base_change,
    oracle_projective,
    restrict_to_element,
)

NO_WITNESS = "NO_WITNESS_UP_TO"
INCOMPLETE_SCAN = "INCOMPLETE_SCAN"
INCONCLUSIVE = "INCONCLUSIVE"

AGREE = "AGREE"
DISAGREEMENT = "DISAGREEMENT"


@dataclass(frozen=True)
class Witness:
    """A re-checkable non-free restriction: the field, the projective
    coefficients of x, and the observed Jordan type."""

    field: dict
    coeffs: tuple
    jordan: tuple[int, ...]

    def to_json_dict(self) -> dict:
        e = self.field.get("e") if self.field.get("kind") != "function-field" else None
        d = {
            "e": e,
            "coeffs": list(self.coeffs),
            "jordan": list(self.jordan),
        }
        if self.field.get("kind") == "function-field":
            d["field"] = {"p": self.field["p"], "vars": list(self.field["vars"])}
        return d


@dataclass(frozen=True)
class GenericComponent:
    coeffs: tuple[str, ...]
    jordan: tuple[int, ...]


@dataclass(frozen=True)
class DetectConfig:
    e_max: int = 2
    use_generic: bool = True
    cross_check: bool = False


@dataclass(frozen=True)
class DetectionReport:
    verdict: str
    e_max: int
    witness: Optional[Witness]
    generic: Optional[tuple[GenericComponent, ...]]
    generic_verdict: Optional[str]
    extensions_scanned: int
    points_tested: int
    oracle: Optional[str] = None
    consistency: Optional[str] = None

    def verdict_display(self) -> str:
        if self.verdict == NO_WITNESS:
            return f"NO_WITNESS_UP_TO({self.e_max})"
        return self.verdict

    def to_json_dict(self) -> dict:
        d = {
            "verdict": self.verdict,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "generic": None,
            "scanned": {"e_max": self.e_max, "points": self.points_tested,
                        "extensions": self.extensions_scanned},
            "oracle": self.oracle,
            "consistency": self.consistency,
        }
        if self.generic is not None:
            if len(self.generic) == 1:
                d["generic"] = {"jordan": list(self.generic[0].jordan),
                                "verdict": self.generic_verdict}
            else:
                d["generic"] = {
                    "components": [
                        {"coeffs": list(c.coeffs), "jordan": list(c.jordan)}
                        for c in self.generic
                    ],
                    "verdict": self.generic_verdict,
                }
        return d


def report_from_json_dict(d: dict) -> DetectionReport:
    w = d.get("witness")
    witness = None
    if w is not None:
        if w.get("e") is None:
            fdesc = {"kind": "function-field", **w["field"]}
            coeffs = tuple(w["coeffs"])
        else:
            fdesc = {"kind": "extension", "e": w["e"]}
            coeffs = tuple(int(c) for c in w["coeffs"])
        witness = Witness(fdesc, coeffs, tuple(int(j) for j in w["jordan"]))
    generic = None
    generic_verdict = None
    g = d.get("generic")
    if g is not None:
        generic_verdict = g.get("verdict")
        if "components" in g:
            generic = tuple(
                GenericComponent(tuple(c["coeffs"]), tuple(int(j) for j in c["jordan"]))
                for c in g["components"]
            )
        else:
            generic = (GenericComponent((), tuple(int(j) for j in g["jordan"])),)
    return DetectionReport(
        verdict=d["verdict"],
        e_max=int(d["scanned"]["e_max"]),
        witness=witness,
        generic=generic,
        generic_verdict=generic_verdict,
        extensions_scanned=int(d["scanned"]["extensions"]),
        points_tested=int(d["scanned"]["points"]),
        oracle=d.get("oracle"),
        consistency=d.get("consistency"),
    )


# ---------------------------------------------------------------------------
# point tests
# ---------------------------------------------------------------------------

def cyclic_free_test(M: ModuleRep, coeffs, field) -> tuple[bool, tuple[int, ...]]:
    """Freeness of M over u(<x>), x = sum coeffs_i e_i: all Jordan parts p."""
    rho = restrict_to_element(M, coeffs, field)
    jt = jordan_type(rho, M.pres.p)
    return jt.free, jt.parts


def exhaustive_scan(M: ModuleRep, e_max: int, on_point=None) -> DetectionReport:
    """Test every projective null-cone point over GF(p^e), e = 1..e_max.

    Stops at the first non-free restriction; the deterministic point order
    makes the reported witness stable under larger e_max.  on_point, when
    given, receives (e, coeffs, parts, free) for every tested point.
    """
    pres = M.pres
    p = pres.p
    if not isinstance(M.field, FiniteField):
        raise ValueError("exhaustive scan starts from a finite base field")
    e0 = M.field.e

    if M.dim % p:
        # free modules have dimension divisible by p^n; any null-cone point is
        # a witness since no partition of dim M has all parts equal to p
        field = get_finite_field(p, e0)
        MF = base_change(M, field)
        for coeffs in null_cone_points(pres, field):
            free, parts = cyclic_free_test(MF, coeffs, field)
            if on_point is not None:
                on_point(field.e, coeffs, parts, free)
            assert not free
            return DetectionReport(
                verdict=NOT_PROJECTIVE,
                e_max=e_max,
                witness=Witness(field.descriptor(), tuple(int(c) for c in coeffs), parts),
                generic=None,
                generic_verdict=None,
                extensions_scanned=0,
                points_tested=1,
            )

    points = 0
    extensions = 0
    for e in range(1, e_max + 1):
        field = get_finite_field(p, e0 * e)
        extensions += 1
        MF = base_change(M, field)
        for coeffs in null_cone_points(pres, field):
            points += 1
            free, parts = cyclic_free_test(MF, coeffs, field)
            if on_point is not None:
                on_point(field.e, coeffs, parts, free)
            if not free:
                return DetectionReport(
                    verdict=NOT_PROJECTIVE,
                    e_max=e_max,
                    witness=Witness(
                        field.descriptor(), tuple(int(c) for c in coeffs), parts
                    ),
                    generic=None,
                    generic_verdict=None,
                    extensions_scanned=extensions,
                    points_tested=points,
                )
    return DetectionReport(
        verdict=NO_WITNESS,
        e_max=e_max,
        witness=None,
        generic=None,
        generic_verdict=None,
        extensions_scanned=extensions,
        points_tested=points,
    )


# ---------------------------------------------------------------------------
# the generic point
# ---------------------------------------------------------------------------

def _generic_components(pres, function_field):
    """Null-cone component parametrizations as tuples of polynomials."""
    if pres.null_components is not None:
        return [tuple(comp) for comp in pres.null_components]
    n = pres.n
    gens = [_poly.pgen(i, n) for i in range(n)]
    coeffs = [function_field.from_poly(g) for g in gens]
    if null_cone_test(pres, coeffs, function_field):
        return [tuple(gens)]
    return None


def generic_point_test(M: ModuleRep, components=None):
    """Jordan type of rho(sum t_i e_i) over GF(p)(t1..tn), per null-cone
    component; a non-free generic restriction certifies NOT_PROJECTIVE,
    a free one is inconclusive.

    Returns (components tuple, verdict).
    """
    pres = M.pres
    n = pres.n
    ff = FunctionField(pres.p, tuple(f"t{i + 1}" for i in range(n)))
    if components is None:
        components = _generic_components(pres, ff)
        if components is None:
            raise ValueError(
                "generic element is not in the null cone; supply a parametrization"
            )
    MF = base_change(M, ff)
    results = []
    some_nonfree = False
    for comp in components:
        coeffs = [ff.from_poly(dict(c)) for c in comp]
        if not null_cone_test(pres, coeffs, ff):
            raise ValueError("parametrized component leaves the null cone")
        rho = restrict_to_element(MF, coeffs, ff)
        jt = jordan_type(rho, pres.p)
        if not jt.free:
            some_nonfree = True
        results.append(
            GenericComponent(
                tuple(_poly.pstr(dict(c), ff.vars) for c in comp), jt.parts
            )
        )
    verdict = NOT_PROJECTIVE if some_nonfree else INCONCLUSIVE
    return tuple(results), verdict


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

def detect(M: ModuleRep, config: DetectConfig = DetectConfig(), on_point=None) -> DetectionReport:
    """Generic quick-reject (when enabled and applicable), then the
    exhaustive extension scan, then the oracle cross-check."""
    assert_module_valid(M.pres, M)
    pres = M.pres

    generic = None
    generic_verdict = None
    if config.use_generic and M.dim % pres.p == 0 and M.dim > 0:
        ff = FunctionField(pres.p, tuple(f"t{i + 1}" for i in range(pres.n)))
        components = _generic_components(pres, ff)
        if components is not None:
            generic, generic_verdict = generic_point_test(M, components)
            if generic_verdict == NOT_PROJECTIVE:
                bad = next(c for c in generic if any(part != pres.p for part in c.jordan))
                witness = Witness(ff.descriptor(), bad.coeffs, bad.jordan)
                report = DetectionReport(
                    verdict=NOT_PROJECTIVE,
                    e_max=config.e_max,
                    witness=witness,
                    generic=generic,
                    generic_verdict=generic_verdict,
                    extensions_scanned=0,
                    points_tested=0,
                )
                return _cross_checked(report, M, config)

    scan = exhaustive_scan(M, config.e_max, on_point=on_point)
    report = DetectionReport(
        verdict=scan.verdict,
        e_max=scan.e_max,
        witness=scan.witness,
        generic=generic,
        generic_verdict=generic_verdict,
        extensions_scanned=scan.extensions_scanned,
        points_tested=scan.points_tested,
    )
    return _cross_checked(report, M, config)


def _cross_checked(report: DetectionReport, M: ModuleRep, config: DetectConfig) -> DetectionReport:
    if not config.cross_check:
        return report
    oracle = oracle_projective(M)
    verdict = report.verdict
    if verdict == NOT_PROJECTIVE:
        consistency = AGREE if oracle == NOT_PROJECTIVE else DISAGREEMENT
    else:  # no witness found
        if oracle == PROJECTIVE:
            verdict = PROJECTIVE
            consistency = AGREE
        else:
            verdict = INCOMPLETE_SCAN
            consistency = INCOMPLETE_SCAN
    return DetectionReport(
        verdict=verdict,
        e_max=report.e_max,
        witness=report.witness,
        generic=report.generic,
        generic_verdict=report.generic_verdict,
        extensions_scanned=report.extensions_scanned,
        points_tested=report.points_tested,
        oracle=oracle,
        consistency=consistency,
    )


def verify_witness(M: ModuleRep, witness: Witness) -> bool:
    """Re-check a stored witness from scratch."""
    pres = M.pres
    fdesc = witness.field
    if fdesc.get("kind") == "function-field":
        ff = FunctionField(fdesc["p"], tuple(fdesc["vars"]))
        n = pres.n
        coeffs = []
        for s in witness.coeffs:
            idx = ff.vars.index(s) if s in ff.vars else None
            if idx is None:
                if s == "0":
                    coeffs.append(ff.zero)
                    continue
                raise ValueError(f"cannot re-parse generic coefficient {s!r}")
            coeffs.append(ff.gen(idx))
        MF = base_change(M, ff)
        free, parts = cyclic_free_test(MF, coeffs, ff)
    else:
        field = get_finite_field(pres.p, fdesc["e"])
        MF = base_change(M, field)
        free, parts = cyclic_free_test(MF, list(witness.coeffs), field)
    return (not free) and parts == witness.jordan

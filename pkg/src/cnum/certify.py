"""Turn parity criteria and analytic checks into verdicts with provenance."""
from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .analytic import RationalPoint, point_search, tunnell_counts
from .arith import factor_squarefree, squarefree_mask
from .classgroup import MAX_ABS_DISCRIMINANT
from .errors import OutOfSupportedRange
from .parity import Convention, corollary_classify, theorem1_parity, theorem2_sums

log = logging.getLogger(__name__)


class Status(enum.Enum):
    NON_CONGRUENT = "non_congruent"
    CONGRUENT = "congruent"
    CONJECTURALLY_CONGRUENT = "conjecturally_congruent"
    UNKNOWN = "unknown"


# rule ids
THM1_ODD = "thm1.1:parity-odd"
THM2_S1_ODD = "thm1.2:s1-odd"
THM2_S2_ODD = "thm1.2:s2-odd"
TUNNELL_NONVANISHING = "tunnell:nonvanishing"
TUNNELL_EQUALITY = "tunnell:equality"
POINT_FOUND = "point:found"


def corollary_rule(trigger: str) -> str:
    return f"corollary:{trigger}"


@dataclass(frozen=True)
class Options:
    convention: Convention = Convention.MULTISET
    point_bound: int = 100
    tunnell: bool = True


@dataclass
class Verdict:
    n: int
    status: Status
    provenance: list[tuple[str, dict]] = field(default_factory=list)
    point: RationalPoint | None = None
    theorem1: int | None = None
    s1: int | None = None
    s2: int | None = None
    tunnell: tuple[int, int] | None = None

    @property
    def rules(self) -> list[str]:
        return [rule for rule, _ in self.provenance]


@dataclass(frozen=True)
class Skip:
    n: int
    reason: str = "not squarefree"


def max_supported(n: int) -> bool:
    D = n if n % 4 == 3 else 4 * n
    return D <= MAX_ABS_DISCRIMINANT


def classify(n: int, options: Options = Options()) -> Verdict:
    """Decide what can be proved about n.

    n = 1, 2, 3 mod 8: an odd decomposition sum or unequal Tunnell counts
    force L(E_n, 1) != 0, hence rank 0.  Equal counts only give a
    BSD-conditional answer, upgraded by an explicit point.
    n = 5, 6, 7 mod 8: an odd sum forces L'(E_n, 1) != 0, hence rank 1.
    """
    factor_squarefree(n)
    if not max_supported(n):
        raise OutOfSupportedRange(f"{n} is beyond the supported class group range")
    r = n % 8
    v = Verdict(n, Status.UNKNOWN)
    cor = corollary_classify(n)

    if options.tunnell:
        v.tunnell = tunnell_counts(n)

    if r in (1, 2, 3):
        v.theorem1 = theorem1_parity(n, options.convention)
        _corollary(v, cor, v.theorem1)
        if v.theorem1:
            v.provenance.append((THM1_ODD, {"convention": options.convention.value}))
        if v.tunnell is not None:
            first, second = v.tunnell
            if 2 * first != second:
                v.provenance.append((TUNNELL_NONVANISHING, {"counts": list(v.tunnell)}))
        if v.provenance:
            v.status = Status.NON_CONGRUENT
            return v
        if v.tunnell is not None:
            v.provenance.append((TUNNELL_EQUALITY, {"counts": list(v.tunnell)}))
            v.status = Status.CONJECTURALLY_CONGRUENT
    else:
        sums = theorem2_sums(n, options.convention)
        v.s1, v.s2 = sums.s1, sums.s2
        _corollary(v, cor, v.s1)
        payload = {"convention": options.convention.value, "s1": v.s1, "s2": v.s2}
        if r in (5, 7) and v.s1:
            v.provenance.append((THM2_S1_ODD, payload))
        if v.s2:
            v.provenance.append((THM2_S2_ODD, payload))
        if v.provenance:
            v.status = Status.CONGRUENT

    if options.point_bound > 0:
        pt = point_search(n, bound=options.point_bound)
        if pt is not None:
            v.point = pt
            v.provenance.append((POINT_FOUND, {"x": str(pt.x), "y": str(pt.y)}))
            v.status = Status.CONGRUENT
    return v


def _corollary(v: Verdict, cor: tuple[str, str] | None, first_sum: int) -> None:
    # The corollary's hypotheses are meant to force first_sum = g(n) = 1.  The
    # n = 2 mod 8, B2 branch does not (n = 210 = area of the 20-21-29
    # triangle), so a trigger is only recorded when the sum confirms it.
    if cor is None:
        return
    if first_sum:
        v.provenance.append((corollary_rule(cor[1]), {"residue": v.n % 8}))
    else:
        log.warning("corollary %s for n=%d not confirmed by the decomposition sum",
                    cor[1], v.n)


def _classify_many(args) -> list[Verdict | Skip]:
    ns, squarefree, options = args
    return [classify(n, options) if ok else Skip(n) for n, ok in zip(ns, squarefree)]


def _check_range(lo: int, hi: int) -> None:
    if lo < 1:
        raise OutOfSupportedRange(f"range must start at 1 or later, got {lo}")
    edge = MAX_ABS_DISCRIMINANT // 4
    for n in range(max(lo, edge + 1), min(hi, edge + 4) + 1):
        if not max_supported(n):
            raise OutOfSupportedRange(f"{n} is beyond the supported class group range")


def _run(ns: list[int], flags: list[bool], options: Options, jobs: int, chunk: int):
    pieces = [
        (ns[i : i + chunk], flags[i : i + chunk], options) for i in range(0, len(ns), chunk)
    ]
    if jobs <= 1:
        for piece in pieces:
            yield from _classify_many(piece)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for out in pool.map(_classify_many, pieces):
            yield from out


def scan(
    lo: int, hi: int, options: Options = Options(), jobs: int = 1, chunk: int = 64
) -> Iterator[Verdict | Skip]:
    """Verdicts for every n in [lo, hi] in increasing order; non-square-free
    n produce a Skip record.  Output does not depend on ``jobs``."""
    if hi < lo:
        return
    _check_range(lo, hi)
    flags = squarefree_mask(lo, hi).tolist()
    yield from _run(list(range(lo, hi + 1)), flags, options, jobs, chunk)


@dataclass
class ResidueStats:
    residue: int
    squarefree: int = 0
    by_status: dict[str, int] = field(default_factory=dict)
    by_rule: dict[str, int] = field(default_factory=dict)

    def fraction(self, status: Status) -> float:
        if not self.squarefree:
            return 0.0
        return self.by_status.get(status.value, 0) / self.squarefree


@dataclass
class DensityReport:
    limit: int
    rows: dict[int, ResidueStats]

    def as_dict(self) -> dict:
        return {
            "limit": self.limit,
            "classes": [
                {
                    "residue": s.residue,
                    "squarefree": s.squarefree,
                    "by_status": dict(sorted(s.by_status.items())),
                    "by_rule": dict(sorted(s.by_rule.items())),
                    "fractions": {
                        st.value: s.fraction(st) for st in Status
                    },
                }
                for s in self.rows.values()
            ],
        }


def density_report(
    limit: int,
    residue_class: int | None = None,
    options: Options = Options(point_bound=0),
    jobs: int = 1,
) -> DensityReport:
    """Descriptive counts of certified n <= limit per residue class mod 8."""
    classes = (1, 2, 3, 5, 6, 7) if residue_class is None else (residue_class % 8,)
    rows = {r: ResidueStats(r) for r in classes}
    if limit < 1:
        return DensityReport(limit, rows)
    _check_range(1, limit)
    mask = squarefree_mask(1, limit)
    ns = [n for n, ok in enumerate(mask.tolist(), start=1) if ok and n % 8 in rows]
    for rec in _run(ns, [True] * len(ns), options, jobs, 512):
        st = rows[rec.n % 8]
        st.squarefree += 1
        st.by_status[rec.status.value] = st.by_status.get(rec.status.value, 0) + 1
        for rule in rec.rules:
            st.by_rule[rule] = st.by_rule.get(rule, 0) + 1
    return DensityReport(limit, rows)

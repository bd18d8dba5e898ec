"""Dual relational structures of finite residuation algebras.

For a finite algebra the canonical extension is the algebra itself, so the
dual frame lives on the join-irreducibles of the carrier, ordered by the
converse of the lattice order, with R(x, y, z) iff x <= y.z.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import first_true
from .report import CheckReport, NonDistributiveError, require_within
from .residuation import ResAlgebra, check_left_inequality

# cells per vectorized block in the condition-2 search
_BLOCK = 1 << 20


@dataclass(frozen=True)
class DualStructure:
    points: tuple[int, ...]  # carrier indices of the join-irreducibles, ascending
    ge: frozenset[tuple[int, int]]  # (x, y) with x >= y, carrier indices
    rel: frozenset[tuple[int, int, int]]  # (x, y, z) with x <= y.z, carrier indices

    def ordinal(self, x: int) -> int:
        return self.points.index(x)


@dataclass
class FunctionalityVerdict:
    functional: bool
    total: bool
    zero_divisor_free: bool
    # flag name -> (y, z, y.z) with carrier indices
    witnesses: dict[str, tuple[int, int, int]] = field(default_factory=dict)


def require_distributive(alg: ResAlgebra) -> None:
    rep = alg.lat.distributive
    if not rep.ok:
        raise NonDistributiveError(
            f"dual structures need a distributive lattice; distributivity fails at {rep.witness}"
        )


def build_dual(alg: ResAlgebra) -> DualStructure:
    require_distributive(alg)
    lat, prod = alg.lat, alg.prod
    pts = lat.join_irreducibles
    ge = frozenset((x, y) for x in pts for y in pts if lat.leq[y, x])
    rel = frozenset((x, y, z) for y in pts for z in pts for x in pts if lat.leq[x, prod[y, z]])
    return DualStructure(tuple(pts), ge, rel)


def functionality(alg: ResAlgebra) -> FunctionalityVerdict:
    """Scan products of join-irreducibles; witnesses are the least offending pairs."""
    require_distributive(alg)
    lat, prod = alg.lat, alg.prod
    pts = lat.join_irreducibles
    jset = set(pts)
    wit = {}
    for y in pts:
        for z in pts:
            v = int(prod[y, z])
            in_j = v in jset
            if not in_j and v != lat.bot:
                wit.setdefault("functional", (y, z, v))
            if v == lat.bot:
                wit.setdefault("zero_divisor_free", (y, z, v))
            if not in_j:
                wit.setdefault("total", (y, z, v))
    return FunctionalityVerdict(
        functional="functional" not in wit,
        total="total" not in wit,
        zero_divisor_free="zero_divisor_free" not in wit,
        witnesses=wit,
    )


def check_condition_2(alg: ResAlgebra) -> CheckReport:
    """For all a, b, c and join-irreducible x <= a, some a' >= x has
    a\\(b v c) <= (a'\\b) v (a'\\c).

    The existential is decided by trying every a' >= x in increasing index
    order and keeping only the cells not yet satisfied.
    """
    require_distributive(alg)
    lat = alg.lat
    n = lat.size
    require_within("algebra", n, "max_carrier")
    leq, join, lres = lat.leq, lat.join, alg.lres
    best = None
    for x in lat.join_irreducibles:
        up = np.flatnonzero(leq[x])
        step = max(1, _BLOCK // (len(up) * n))
        for b0 in range(0, n, step):
            bs = np.arange(b0, min(n, b0 + step))
            # lhs[i, bi, c] = up[i] \ (bs[bi] v c)
            lhs = lres[up[:, None, None], join[bs][None, :, :]]
            a2 = up[0]
            rhs = join[lres[a2, bs][:, None], lres[a2][None, :]]
            ia, ib, ic = np.nonzero(~leq[lhs, rhs[None]])
            lv = lhs[ia, ib, ic]
            for a2 in up[1:]:
                if lv.size == 0:
                    break
                rhs = join[lres[a2, bs[ib]], lres[a2, ic]]
                keep = ~leq[lv, rhs]
                if not keep.all():
                    ia, ib, ic, lv = ia[keep], ib[keep], ic[keep], lv[keep]
            if lv.size:
                cand = (int(up[ia[0]]), int(bs[ib[0]]), int(ic[0]), int(x))
                best = cand if best is None else min(best, cand)
    if best is not None:
        return CheckReport("condition_2", False, best, "witness is (a, b, c, x)")
    return CheckReport("condition_2", True)


def check_condition_3(alg: ResAlgebra) -> CheckReport:
    """x\\(o1 v o2) = (x\\o1) v (x\\o2) for every join-irreducible x."""
    require_distributive(alg)
    lat = alg.lat
    require_within("algebra", lat.size, "max_carrier")
    for x in lat.join_irreducibles:
        f = alg.lres[x]
        bad = f[lat.join] != lat.join[f[:, None], f[None, :]]
        if bad.any():
            return CheckReport("condition_3", False, (x, *first_true(bad)), "witness is (x, o1, o2)")
    return CheckReport("condition_3", True)


def check_prop_316_equivalence(alg: ResAlgebra) -> CheckReport:
    """Functionality, condition 2 and condition 3 must agree."""
    f = functionality(alg).functional
    c2 = check_condition_2(alg)
    c3 = check_condition_3(alg)
    info = {"functional": f, "condition_2": c2.ok, "condition_3": c3.ok,
            "condition_2_witness": c2.witness, "condition_3_witness": c3.witness}
    ok = f == c2.ok == c3.ok
    return CheckReport("prop_316_equivalence", ok, None if ok else (f, c2.ok, c3.ok),
                       "" if ok else "conditions disagree", info)


def check_prop_25(alg: ResAlgebra) -> CheckReport:
    """The left inequality forces functionality, and totality without zero-divisors."""
    ineq = check_left_inequality(alg)
    v = functionality(alg)
    info = {"inequality": ineq.ok, "functional": v.functional,
            "zero_divisor_free": v.zero_divisor_free, "total": v.total}
    if ineq.ok and not v.functional:
        return CheckReport("prop_25", False, v.witnesses["functional"], "inequality holds, dual not functional", info)
    if ineq.ok and v.zero_divisor_free and not v.total:
        return CheckReport("prop_25", False, v.witnesses["total"], "no zero-divisors, dual not total", info)
    return CheckReport("prop_25", True, info=info)

"""Residuation algebras over finite lattices.

An algebra is given by its lattice and the two residual tables
``lres[a, c] = a\\c`` and ``rres[c, b] = c/b``. The product is never an input:
it is derived as the left adjoint ``u.v = meet{w : v <= u\\w}`` and the
adjunction is checked afterwards.
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations

import numpy as np

from .lattice import FinLattice, _index_table, first_true, fold
from .report import CapacityError, CheckReport, ConstructionError, InconsistentAlgebraError, require_within


class ResAlgebra:
    def __init__(self, lat: FinLattice, lres, rres, unit: int | None = None, name: str | None = None):
        n = lat.size
        self.lat = lat
        self.lres = _index_table(lres, n, "lres")
        self.rres = _index_table(rres, n, "rres")
        if unit is not None and not (0 <= unit < n):
            raise ConstructionError(f"unit {unit} out of range for size {n}")
        self.unit = unit
        self.name = name

    @property
    def size(self) -> int:
        return self.lat.size

    @property
    def labels(self):
        return self.lat.labels

    def label(self, i: int) -> str:
        return self.lat.label(i)

    def index(self, label: str) -> int:
        return self.lat.index(label)

    @cached_property
    def raw_product(self) -> np.ndarray:
        return _derive(self)

    @cached_property
    def adjunction_witness(self) -> tuple[int, int, int] | None:
        return _adjunction_witness(self, self.raw_product)

    @cached_property
    def prod(self) -> np.ndarray:
        """Derived product; raises if the residuals admit no left adjoint."""
        _raise_on(self.adjunction_witness)
        return self.raw_product

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"ResAlgebra{name}(size={self.size})"


def _derive(alg: ResAlgebra) -> np.ndarray:
    lat = alg.lat
    n = lat.size
    # selection of w for cell (u, v): v <= lres[u, w]
    prod = fold(lat.meet, lat.top, (n, n), lambda w: lat.leq[:, alg.lres[:, w]].T)
    prod.setflags(write=False)
    return prod


def _raise_on(witness) -> None:
    if witness is not None:
        u, v, w = witness
        raise InconsistentAlgebraError(
            f"derived product violates the adjunction at u={u}, v={v}, w={w}; "
            "the input tables are not residuals of a product"
        )


def derive_product(alg: ResAlgebra, check: bool = True) -> np.ndarray:
    """``prod[u, v] = meet{w : v <= u\\w}``, with an optional adjunction check."""
    prod = _derive(alg)
    if check:
        _raise_on(_adjunction_witness(alg, prod))
    return prod


def _adjunction_witness(alg: ResAlgebra, prod: np.ndarray):
    """Least (u, v, w) breaking v <= u\\w iff u.v <= w iff u <= w/v."""
    leq = alg.lat.leq
    for u in range(alg.size):
        left = leq[:, alg.lres[u]]  # (v, w)
        mid = leq[prod[u]]  # (v, w)
        right = leq[u][alg.rres].T  # rres[w, v] -> (v, w)
        bad = (left != mid) | (mid != right)
        if bad.any():
            v, w = first_true(bad)
            return (u, v, w)
    return None


def verify_axioms(alg: ResAlgebra) -> CheckReport:
    """Residuation law, meet preservation of both residuals, and the adjunction.

    Distributivity of the lattice is reported under ``info`` but does not fail
    the check.
    """
    lat = alg.lat
    n = lat.size
    require_within("algebra", n, "max_carrier")
    leq, meet, top = lat.leq, lat.meet, lat.top
    info = {"distributive": lat.distributive.ok}
    if not lat.distributive.ok:
        info["warning"] = f"lattice is not distributive (witness {lat.distributive.witness})"

    def fail(axiom, witness):
        return CheckReport("verify_axioms", False, witness, axiom, info)

    for a in range(n):
        # b <= a\c  iff  a <= c/b, indexed (b, c)
        bad = leq[:, alg.lres[a]] != leq[a][alg.rres].T
        if bad.any():
            return fail("residuation law: b <= a\\c iff a <= c/b", (a, *first_true(bad)))
    for a in range(n):
        row = alg.lres[a]
        if row[top] != top:
            return fail("a\\top = top", (a,))
        bad = row[meet] != meet[row[:, None], row[None, :]]
        if bad.any():
            return fail("a\\(b meet c) = (a\\b) meet (a\\c)", (a, *first_true(bad)))
    for a in range(n):
        col = alg.rres[:, a]
        if col[top] != top:
            return fail("top/a = top", (a,))
        bad = col[meet] != meet[col[:, None], col[None, :]]
        if bad.any():
            return fail("(b meet c)/a = (b/a) meet (c/a)", (a, *first_true(bad)))
    wit = alg.adjunction_witness
    if wit is not None:
        return fail("adjunction: v <= u\\w iff u.v <= w iff u <= w/v", wit)
    return CheckReport("verify_axioms", True, info=info)


def _scan(name: str, alg: ResAlgebra, table_of, worse) -> CheckReport:
    """Scan all (a, b, c) comparing ``f(a, b v c)`` with ``f(a, b) v f(a, c)``.

    ``table_of(a)`` gives the unary map ``x -> f(a, x)`` as an array;
    ``worse(lhs, rhs)`` marks violated cells.
    """
    lat = alg.lat
    require_within("algebra", lat.size, "max_carrier")
    for a in range(lat.size):
        f = table_of(a)
        lhs = f[lat.join]
        rhs = lat.join[f[:, None], f[None, :]]
        bad = worse(lhs, rhs)
        if bad.any():
            return CheckReport(name, False, (a, *first_true(bad)))
    return CheckReport(name, True)


def check_left_inequality(alg: ResAlgebra) -> CheckReport:
    """a\\(b v c) <= (a\\b) v (a\\c) for all a, b, c."""
    leq = alg.lat.leq
    return _scan("left_inequality", alg, lambda a: alg.lres[a], lambda l, r: ~leq[l, r])


def check_converse_inequality(alg: ResAlgebra) -> CheckReport:
    """(a\\b) v (a\\c) <= a\\(b v c); holds whenever \\ is monotone on the right."""
    leq = alg.lat.leq
    return _scan("converse_inequality", alg, lambda a: alg.lres[a], lambda l, r: ~leq[r, l])


def check_mirror_inequality(alg: ResAlgebra) -> CheckReport:
    """(b v c)/a <= (b/a) v (c/a); witness is ordered (a, b, c)."""
    leq = alg.lat.leq
    return _scan("mirror_inequality", alg, lambda a: alg.rres[:, a], lambda l, r: ~leq[l, r])


def residuals_from_product(lat: FinLattice, prod: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``a\\c = join{b : a.b <= c}`` and ``c/b = join{a : a.b <= c}``."""
    n = lat.size
    lres = fold(lat.join, lat.bot, (n, n), lambda b: lat.leq[prod[:, b]])
    rres = fold(lat.join, lat.bot, (n, n), lambda a: lat.leq[prod[a]].T)
    return lres, rres


def check_residual_roundtrip(alg: ResAlgebra) -> CheckReport:
    lres, rres = residuals_from_product(alg.lat, alg.prod)
    for name, got, want in (("lres", lres, alg.lres), ("rres", rres, alg.rres)):
        bad = got != want
        if bad.any():
            return CheckReport("residual_roundtrip", False, first_true(bad), name)
    return CheckReport("residual_roundtrip", True)


def check_product_join_preservation(alg: ResAlgebra, max_points: int = 12) -> CheckReport:
    """prod(u, join S) = join prod(u, S) and symmetrically, for S within J u {bot}.

    Join-generation reduces complete join preservation to these subsets.
    """
    lat, prod = alg.lat, alg.prod
    gens = (lat.bot, *lat.join_irreducibles)
    if len(gens) > max_points:
        raise CapacityError("join-irreducible generator set", len(gens), max_points, "max_points=")
    for r in range(len(gens) + 1):
        for s in combinations(gens, r):
            js = lat.bot
            right = np.full(lat.size, lat.bot, dtype=np.intp)
            left = right.copy()
            for g in s:
                js = lat.join[js, g]
                right = lat.join[right, prod[:, g]]
                left = lat.join[left, prod[g, :]]
            bad = (prod[:, js] != right) | (prod[js, :] != left)
            if bad.any():
                return CheckReport("product_join_preservation", False, (int(np.argmax(bad)), s))
    return CheckReport("product_join_preservation", True)


def check_residuated_lattice(alg: ResAlgebra) -> CheckReport:
    """Associativity of the derived product and two-sidedness of the unit."""
    if alg.unit is None:
        return CheckReport("residuated_lattice", False, None, "no unit designated")
    p = alg.prod
    n = alg.size
    for a in range(n):
        bad = p[p[a][:, None], np.arange(n)[None, :]] != p[a][p]
        if bad.any():
            return CheckReport("residuated_lattice", False, (a, *first_true(bad)), "associativity")
    e = alg.unit
    bad = (p[e] != np.arange(n)) | (p[:, e] != np.arange(n))
    if bad.any():
        return CheckReport("residuated_lattice", False, (int(np.argmax(bad)),), "unit")
    return CheckReport("residuated_lattice", True)

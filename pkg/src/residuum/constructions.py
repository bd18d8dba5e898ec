"""Generators of residuation algebras and their subalgebras.

Complex algebras of (partial) magmas have the powerset as carrier; the
carrier index of a subset is its bitmask, so ``{1, 2}`` of a 3-element magma
is index 6.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .lattice import FinLattice, FinPoset, bits, boolean_lattice, downset_lattice, fold, subset_label
from .report import ConstructionError, NonDistributiveError, require_within
from .residuation import ResAlgebra

UNDEFINED = -1


class Signature(enum.Enum):
    RESIDUATION = "residuation"  # meet, join, \, /, bot, top
    RESIDUATED_LATTICE = "rl"  # ... plus the product and the unit

    @classmethod
    def parse(cls, s: str) -> "Signature":
        aliases = {"residuation": cls.RESIDUATION, "rl": cls.RESIDUATED_LATTICE,
                   "residuated-lattice": cls.RESIDUATED_LATTICE}
        try:
            return aliases[s.lower()]
        except KeyError:
            raise ValueError(f"unknown signature {s!r}; expected 'residuation' or 'rl'") from None


class PartialMagma:
    """Finite binary operation whose undefined cells hold ``UNDEFINED``."""

    def __init__(self, op, unit: int | None = None, names: Sequence[str] | None = None):
        op = np.array(op, dtype=np.intp).reshape(len(op), len(op)) if len(op) else np.zeros((0, 0), np.intp)
        n = op.shape[0]
        bad = (op < UNDEFINED) | (op >= n)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise ConstructionError(f"op[{i}][{j}] = {op[i, j]} is not an element of a size-{n} magma")
        if unit is not None and not (0 <= unit < n):
            raise ConstructionError(f"unit {unit} out of range for size {n}")
        op.setflags(write=False)
        self.op = op
        self.size = n
        self.unit = unit
        self.names = tuple(names) if names is not None else None

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else str(i)

    @property
    def total(self) -> bool:
        return bool((self.op != UNDEFINED).all())

    def is_associative(self) -> bool:
        if not self.total:
            return False
        op = self.op
        return bool((op[op, :] == op[:, op]).all()) if self.size else True

    def identity(self) -> int | None:
        """A two-sided identity defined on every cell of its row and column."""
        idx = np.arange(self.size)
        for e in range(self.size):
            if (self.op[e] == idx).all() and (self.op[:, e] == idx).all():
                return e
        return None

    def is_monoid(self) -> bool:
        return self.is_associative() and self.identity() is not None

    def __eq__(self, other):
        return isinstance(other, PartialMagma) and np.array_equal(self.op, other.op) and self.unit == other.unit

    def __repr__(self):
        return f"PartialMagma(size={self.size}, unit={self.unit})"


def cyclic_group(n: int) -> PartialMagma:
    idx = np.arange(n)
    return PartialMagma((idx[:, None] + idx[None, :]) % n, unit=0)


def direct_product(g: PartialMagma, h: PartialMagma) -> PartialMagma:
    n, m = g.size, h.size
    op = [[g.op[a // m, c // m] * m + h.op[a % m, c % m] for c in range(n * m)] for a in range(n * m)]
    unit = None if g.unit is None or h.unit is None else g.unit * m + h.unit
    names = [f"({g.name(i)},{h.name(j)})" for i in range(n) for j in range(m)]
    return PartialMagma(op, unit, names)


def _perm_group(perms: list[tuple[int, ...]]) -> PartialMagma:
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    op = [[index[tuple(p[q[x]] for x in range(len(p)))] for q in perms] for p in perms]
    ident = tuple(range(len(perms[0])))
    return PartialMagma(op, index[ident])


def dihedral_group(k: int) -> PartialMagma:
    """Symmetries of the k-gon, of order 2k."""
    rot = tuple((x + 1) % k for x in range(k))
    ref = tuple((-x) % k for x in range(k))
    elems = {tuple(range(k))}
    frontier = set(elems)
    while frontier:
        new = {tuple(g[p[x]] for x in range(k)) for p in frontier for g in (rot, ref)} - elems
        elems |= new
        frontier = new
    return _perm_group(sorted(elems))


def quaternion_group() -> PartialMagma:
    # elements 1, i, j, k and their negatives; sign bit in position, basis in 0..3
    basis = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, b) for s in (1, -1) for b in range(4)]
    index = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        sign, b = basis[(x[1], y[1])]
        return (x[0] * y[0] * sign, b)

    op = [[index[mul(x, y)] for y in elems] for x in elems]
    names = [("" if s > 0 else "-") + "1ijk"[b] for s, b in elems]
    return PartialMagma(op, index[(1, 0)], names)


def small_groups(n: int) -> list[PartialMagma]:
    """All groups of order ``n`` up to isomorphism, for ``1 <= n <= 9``."""
    z = cyclic_group
    table = {
        1: lambda: [z(1)],
        2: lambda: [z(2)],
        3: lambda: [z(3)],
        4: lambda: [z(4), direct_product(z(2), z(2))],
        5: lambda: [z(5)],
        6: lambda: [z(6), dihedral_group(3)],
        7: lambda: [z(7)],
        8: lambda: [z(8), direct_product(z(4), z(2)), direct_product(direct_product(z(2), z(2)), z(2)),
                    dihedral_group(4), quaternion_group()],
        9: lambda: [z(9), direct_product(z(3), z(3))],
    }
    if n not in table:
        raise ValueError(f"small groups are tabulated for orders 1..9, not {n}")
    return table[n]()


def pair_groupoid(k: int) -> PartialMagma:
    """Pairs (i, j) with (i, j)(j, l) = (i, l); other products undefined.

    Pair (i, j) has index ``i * k + j``. Its complex algebra is the full
    relation algebra on ``k`` points.
    """
    n = k * k
    op = np.full((n, n), UNDEFINED, dtype=np.intp)
    for i, j, l in product(range(k), repeat=3):
        op[i * k + j, j * k + l] = i * k + l
    names = [f"({i},{j})" for i in range(k) for j in range(k)]
    return PartialMagma(op, None, names)


def all_partial_magmas(n: int, total_only: bool = False) -> list[PartialMagma]:
    values = range(n) if total_only else range(UNDEFINED, n)
    out = []
    for cells in product(values, repeat=n * n):
        out.append(PartialMagma(np.array(cells, dtype=np.intp).reshape(n, n)))
    return out


def random_partial_magma(rng, n: int, p_defined: float = 0.8) -> PartialMagma:
    op = [[rng.randrange(n) if rng.random() < p_defined else UNDEFINED for _ in range(n)] for _ in range(n)]
    return PartialMagma(np.array(op, dtype=np.intp).reshape(n, n))


def complex_products(m: PartialMagma) -> np.ndarray:
    """Bitmask table ``P[A, B] = {a*b : a in A, b in B}`` over all subsets.

    Built by two or-convolutions peeling the lowest element off each argument.
    """
    n = m.size
    N = 1 << n
    lowbit = np.zeros(N, dtype=np.intp)
    for s in range(1, N):
        lowbit[s] = (s & -s).bit_length() - 1
    cell = np.where(m.op == UNDEFINED, 0, np.left_shift(1, np.maximum(m.op, 0))).astype(np.int64)
    # row[a, B] = {a*b : b in B}
    row = np.zeros((max(n, 1), N), dtype=np.int64)
    for s in range(1, N):
        row[:, s] = row[:, s & (s - 1)] | cell[:, lowbit[s]]
    prod = np.zeros((N, N), dtype=np.int64)
    for s in range(1, N):
        prod[s] = prod[s & (s - 1)] | row[lowbit[s]]
    return prod


def complex_algebra(m: PartialMagma, name: str | None = None) -> ResAlgebra:
    """Powerset algebra with ``A\\B = {c : A.{c} <= B}`` and ``A/B = {c : {c}.B <= A}``.

    A designated unit ``{e}`` is attached when ``m`` carries one or is a monoid.
    """
    n = m.size
    require_within("magma", n, "max_magma")
    N = 1 << n
    prod = complex_products(m)
    subsets = np.arange(N, dtype=np.int64)
    lres = np.zeros((N, N), dtype=np.int64)
    rres = np.zeros((N, N), dtype=np.int64)
    for c in range(n):
        left = prod[:, 1 << c]  # A.{c}
        right = prod[1 << c, :]  # {c}.B
        lres |= ((left[:, None] & ~subsets[None, :]) == 0).astype(np.int64) << c
        rres |= ((right[None, :] & ~subsets[:, None]) == 0).astype(np.int64) << c
    base = boolean_lattice(n)
    names = [m.name(i) for i in range(n)]
    lat = FinLattice(base.join, base.meet, [subset_label(bits(s), names) for s in range(N)])
    unit = m.unit if m.unit is not None else (m.identity() if m.is_monoid() else None)
    return ResAlgebra(lat, lres, rres, None if unit is None else 1 << unit, name)


def heyting_from_dl(lat: FinLattice, name: str | None = None) -> ResAlgebra:
    """Relative pseudocomplement ``a\\c = join{b : a meet b <= c}``, with ``c/b = b\\c``."""
    if not lat.distributive.ok:
        raise NonDistributiveError(
            f"Heyting implication needs a distributive lattice (witness {lat.distributive.witness})"
        )
    n = lat.size
    # selection of b for cell (a, c): meet(a, b) <= c
    lres = fold(lat.join, lat.bot, (n, n), lambda b: lat.leq[lat.meet[:, b]])
    return ResAlgebra(lat, lres, lres.T, lat.top, name)


def heyting_from_poset(p: FinPoset, name: str | None = None) -> ResAlgebra:
    return heyting_from_dl(downset_lattice(p), name)


def _generators(alg: ResAlgebra, sig: Signature) -> tuple[list[int], list[np.ndarray]]:
    lat = alg.lat
    consts = [lat.bot, lat.top]
    tables = [lat.meet, lat.join, alg.lres, alg.rres]
    if sig is Signature.RESIDUATED_LATTICE:
        if alg.unit is None:
            raise ValueError("the residuated-lattice signature needs a designated unit")
        consts.append(alg.unit)
        tables.append(alg.prod)
    return consts, tables


def closure_mask(alg: ResAlgebra, seed: Iterable[int], sig: Signature) -> np.ndarray:
    """Boolean membership mask of the subuniverse generated by ``seed``."""
    consts, tables = _generators(alg, sig)
    member = np.zeros(alg.size, dtype=bool)
    seed = list(seed)
    for s in seed:
        if not (0 <= s < alg.size):
            raise ValueError(f"seed element {s} out of range for an algebra of size {alg.size}")
    member[consts + seed] = True
    frontier = np.flatnonzero(member)
    while frontier.size:
        cur = np.flatnonzero(member)
        found = np.zeros(alg.size, dtype=bool)
        for t in tables:
            found[t[np.ix_(frontier, cur)].ravel()] = True
            found[t[np.ix_(cur, frontier)].ravel()] = True
        frontier = np.flatnonzero(found & ~member)
        member |= found
    return member


@dataclass
class Subalgebra:
    algebra: ResAlgebra  # standalone, contiguous indexing
    embedding: tuple[int, ...]  # sub index -> parent index
    signature: Signature

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(self.embedding)


def restrict(alg: ResAlgebra, universe: Iterable[int], sig: Signature) -> Subalgebra:
    """Materialize a closed subset as an algebra with its own indexing."""
    emb = np.array(sorted(set(universe)), dtype=np.intp)
    pos = np.full(alg.size, -1, dtype=np.intp)
    pos[emb] = np.arange(len(emb))

    def sub(t):
        out = pos[t[np.ix_(emb, emb)]]
        if (out < 0).any():
            raise ConstructionError("subset is not closed under the signature")
        return out

    lat = alg.lat
    labels = [alg.label(int(i)) for i in emb]
    sublat = FinLattice(sub(lat.join), sub(lat.meet), labels)
    unit = None
    if alg.unit is not None and pos[alg.unit] >= 0:
        unit = int(pos[alg.unit])
    name = f"sub({alg.name})" if alg.name else None
    subalg = ResAlgebra(sublat, sub(alg.lres), sub(alg.rres), unit, name)
    return Subalgebra(subalg, tuple(int(i) for i in emb), sig)


def subalgebra_closure(alg: ResAlgebra, seed: Iterable[int], sig: Signature = Signature.RESIDUATION) -> Subalgebra:
    member = closure_mask(alg, seed, sig)
    return restrict(alg, np.flatnonzero(member), sig)


def enumerate_subuniverses(alg: ResAlgebra, sig: Signature = Signature.RESIDUATION) -> list[tuple[int, ...]]:
    """All subuniverses, ordered by size and then by sorted element tuple.

    Every subuniverse T is reached from the least one by repeatedly adding an
    element of T and closing, so a breadth-first search over single-element
    extensions is complete.
    """
    require_within("algebra", alg.size, "max_enum")
    start = tuple(int(i) for i in np.flatnonzero(closure_mask(alg, [], sig)))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            inside = set(s)
            for x in range(alg.size):
                if x in inside:
                    continue
                t = tuple(int(i) for i in np.flatnonzero(closure_mask(alg, [*s, x], sig)))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda t: (len(t), t))


def enumerate_subalgebras(alg: ResAlgebra, sig: Signature = Signature.RESIDUATION) -> list[Subalgebra]:
    return [restrict(alg, u, sig) for u in enumerate_subuniverses(alg, sig)]


def all_posets(n: int) -> list[FinPoset]:
    """Posets on ``n`` points up to isomorphism (naturally labelled representatives)."""
    strict = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    perms = list(permutations(range(n)))
    for choice in product((False, True), repeat=len(strict)):
        rel = {p for p, c in zip(strict, choice) if c}
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        key = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in perms)
        if key in seen:
            continue
        seen.add(key)
        out.append(FinPoset.from_pairs(n, sorted(rel)))
    return out

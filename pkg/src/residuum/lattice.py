"""Finite posets and bounded lattices stored as explicit operation tables.

Elements are the indices ``0..n-1``. Tables are read-only ``numpy`` integer
arrays so that sweeps over pairs and triples can be vectorized; joins and
meets are O(1) lookups.
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .report import CheckReport, ConstructionError, require_within


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _index_table(table, n: int, name: str) -> np.ndarray:
    try:
        arr = np.array(table, dtype=np.intp)
    except (TypeError, ValueError) as exc:
        raise ConstructionError(f"{name} table is not an integer table: {exc}") from None
    if arr.shape != (n, n):
        raise ConstructionError(f"{name} table has shape {arr.shape}, expected {(n, n)}")
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i, j = first_true(bad)
        raise ConstructionError(f"{name}[{i}][{j}] = {arr[i, j]} is not an element index below {n}")
    return _freeze(arr)


def first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    """Lexicographically least index tuple where ``mask`` holds."""
    if not mask.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(mask)), mask.shape))


def fold(table: np.ndarray, init: int, shape, mask_of) -> np.ndarray:
    """Fold a binary table over selected elements, for many selections at once.

    ``mask_of(e)`` returns a boolean array of ``shape`` telling, per output cell,
    whether element ``e`` belongs to that cell's selection.
    """
    out = np.full(shape, init, dtype=np.intp)
    for e in range(table.shape[0]):
        sel = mask_of(e)
        if sel.any():
            out = np.where(sel, table[out, e], out)
    return out


def subset_label(members: Iterable, names: Sequence[str] | None = None) -> str:
    members = list(members)
    if names is not None:
        members = [names[i] for i in members]
    return "{" + ",".join(str(m) for m in members) + "}"


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class FinPoset:
    """Finite partial order given by a boolean matrix ``leq[a, b]``."""

    def __init__(self, leq, labels: Sequence[str] | None = None):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ConstructionError(f"order matrix must be square, got shape {leq.shape}")
        n = leq.shape[0]
        if not leq.diagonal().all():
            raise ConstructionError(f"order is not reflexive at {int(np.argmin(leq.diagonal()))}")
        anti = leq & leq.T & ~np.eye(n, dtype=bool)
        if anti.any():
            raise ConstructionError(f"order is not antisymmetric at {first_true(anti)}")
        li = leq.astype(np.int64)
        trans = ((li @ li) > 0) & ~leq
        if trans.any():
            raise ConstructionError(f"order is not transitive at {first_true(trans)}")
        self.leq = _freeze(leq)
        self.size = n
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], labels=None) -> "FinPoset":
        """Reflexive-transitive closure of the given pairs."""
        rel = np.eye(size, dtype=bool)
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise ConstructionError(f"pair ({a}, {b}) out of range for size {size}")
            rel[a, b] = True
        for k in range(size):
            rel |= rel[:, k : k + 1] & rel[k : k + 1, :]
        return cls(rel, labels)

    def pairs(self, strict: bool = False) -> list[tuple[int, int]]:
        rel = self.leq & ~np.eye(self.size, dtype=bool) if strict else self.leq
        return [(int(a), int(b)) for a, b in np.argwhere(rel)]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def __eq__(self, other):
        return isinstance(other, FinPoset) and np.array_equal(self.leq, other.leq)

    def __repr__(self):
        return f"FinPoset(size={self.size}, strict_pairs={self.pairs(strict=True)})"


class FinLattice:
    """Finite bounded lattice with explicit join and meet tables.

    Construction checks the O(n^2) invariants (index range, commutativity,
    idempotence, identities, agreement of the two induced orders). The O(n^3)
    ones are checked by :func:`lattice_axioms`.
    """

    def __init__(self, join, meet, labels: Sequence[str] | None = None):
        n = len(join)
        if n < 1:
            raise ConstructionError("a lattice needs at least one element")
        self.size = n
        self.join = _index_table(join, n, "join")
        self.meet = _index_table(meet, n, "meet")
        if labels is not None and len(labels) != n:
            raise ConstructionError(f"{len(labels)} labels for {n} elements")
        self.labels = tuple(labels) if labels is not None else None
        idx = np.arange(n)
        for name, t in (("join", self.join), ("meet", self.meet)):
            if not np.array_equal(t, t.T):
                raise ConstructionError(f"{name} is not commutative at {first_true(t != t.T)}")
            if not np.array_equal(t.diagonal(), idx):
                raise ConstructionError(f"{name} is not idempotent")
        by_join = self.join == idx[None, :]
        by_meet = self.meet == idx[:, None]
        if not np.array_equal(by_join, by_meet):
            raise ConstructionError(
                f"join and meet induce different orders at {first_true(by_join != by_meet)}"
            )
        bots = np.flatnonzero((self.join == idx[None, :]).all(axis=1))
        tops = np.flatnonzero((self.meet == idx[None, :]).all(axis=1))
        if len(bots) != 1 or len(tops) != 1:
            raise ConstructionError("lattice is not bounded")
        self.bot, self.top = int(bots[0]), int(tops[0])

    @classmethod
    def from_order(cls, poset: FinPoset) -> "FinLattice":
        """Compute join and meet tables of a poset, refusing non-lattices."""
        leq = poset.leq
        n = poset.size
        li = leq.astype(np.int64)
        join = np.empty((n, n), dtype=np.intp)
        meet = np.empty((n, n), dtype=np.intp)
        for a in range(n):
            ub = leq[a][None, :] & leq  # ub[b, m]: a <= m and b <= m
            # m is the least upper bound iff m is below every upper bound
            below_all = (ub.astype(np.int64) @ li.T) == ub.sum(axis=1, keepdims=True)
            least = ub & below_all
            lb = leq[:, a][None, :] & leq.T  # lb[b, m]: m <= a and m <= b
            above_all = (lb.astype(np.int64) @ li) == lb.sum(axis=1, keepdims=True)
            greatest = lb & above_all
            if not least.any(axis=1).all() or not greatest.any(axis=1).all():
                b = int(np.argmin(least.any(axis=1) & greatest.any(axis=1)))
                raise ConstructionError(f"elements {a} and {b} have no join or meet")
            join[a] = least.argmax(axis=1)
            meet[a] = greatest.argmax(axis=1)
        return cls(join, meet, poset.labels)

    @cached_property
    def leq(self) -> np.ndarray:
        return _freeze(self.join == np.arange(self.size)[None, :])

    @cached_property
    def lt(self) -> np.ndarray:
        return _freeze(self.leq & ~np.eye(self.size, dtype=bool))

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return join_irreducibles(self)

    @cached_property
    def distributive(self) -> CheckReport:
        return is_distributive(self)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def __eq__(self, other):
        return (
            isinstance(other, FinLattice)
            and np.array_equal(self.join, other.join)
            and np.array_equal(self.meet, other.meet)
        )

    def __repr__(self):
        return f"FinLattice(size={self.size}, bot={self.bot}, top={self.top})"


def induced_order(lat: FinLattice) -> FinPoset:
    return FinPoset(lat.leq, lat.labels)


def lattice_axioms(lat: FinLattice) -> CheckReport:
    """Associativity of both tables and the two absorption laws."""
    require_within("lattice", lat.size, "max_carrier")
    j, m = lat.join, lat.meet
    for a in range(lat.size):
        for name, t in (("join associativity", j), ("meet associativity", m)):
            bad = t[t[a][:, None], np.arange(lat.size)[None, :]] != t[a][t]
            if bad.any():
                b, c = first_true(bad)
                return CheckReport("lattice_axioms", False, (a, b, c), name)
        bad = (j[a][m[a]] != a) | (m[a][j[a]] != a)
        if bad.any():
            return CheckReport("lattice_axioms", False, (a, int(np.argmax(bad))), "absorption")
    return CheckReport("lattice_axioms", True)


def is_distributive(lat: FinLattice) -> CheckReport:
    """meet(a, join(b, c)) == join(meet(a, b), meet(a, c)) for all triples."""
    require_within("lattice", lat.size, "max_carrier")
    j, m = lat.join, lat.meet
    for a in range(lat.size):
        bad = m[a][j] != j[m[a][:, None], m[a][None, :]]
        if bad.any():
            b, c = first_true(bad)
            return CheckReport("distributivity", False, (a, b, c))
    return CheckReport("distributivity", True)


def big_join(lat: FinLattice, s: Iterable[int]) -> int:
    out = lat.bot
    for x in s:
        out = int(lat.join[out, x])
    return out


def big_meet(lat: FinLattice, s: Iterable[int]) -> int:
    out = lat.top
    for x in s:
        out = int(lat.meet[out, x])
    return out


def join_irreducibles(lat: FinLattice) -> tuple[int, ...]:
    """Elements x != bot with x != join of everything strictly below x."""
    below = fold(lat.join, lat.bot, lat.size, lambda y: lat.lt[y])
    idx = np.arange(lat.size)
    return tuple(int(x) for x in np.flatnonzero((below != idx) & (idx != lat.bot)))


def join_irreducibles_binary(lat: FinLattice) -> tuple[int, ...]:
    """Elements x != bot such that x = a v b forces x in {a, b}."""
    n = lat.size
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    split = (lat.join != a) & (lat.join != b)
    reducible = np.zeros(n, dtype=bool)
    reducible[lat.join[split]] = True
    return tuple(x for x in range(n) if x != lat.bot and not reducible[x])


def _check_index(lat: FinLattice, k: int) -> None:
    if not (0 <= k < lat.size):
        raise ValueError(f"element index {k} out of range for a lattice of size {lat.size}")


def is_finitely_prime(lat: FinLattice, k: int) -> bool:
    _check_index(lat, k)
    if k == lat.bot:
        return False
    up = lat.leq[k]
    return not (up[lat.join] & ~(up[:, None] | up[None, :])).any()


def finitely_prime_elements(lat: FinLattice) -> tuple[int, ...]:
    return tuple(k for k in range(lat.size) if is_finitely_prime(lat, k))


def check_lemma_splitting(lat: FinLattice) -> CheckReport:
    """For each finitely prime k, k is not below o = join{b : k not <= b}."""
    splits = {}
    for k in finitely_prime_elements(lat):
        o = big_join(lat, np.flatnonzero(~lat.leq[k]))
        splits[k] = o
        if lat.leq[k, o]:
            return CheckReport("lemma_splitting", False, (k,), f"k <= o = {o}", {"splits": splits})
    return CheckReport("lemma_splitting", True, info={"splits": splits})


def check_prime_implies_ji(lat: FinLattice) -> CheckReport:
    ji = set(lat.join_irreducibles)
    primes = finitely_prime_elements(lat)
    for k in primes:
        if k not in ji:
            return CheckReport("prime_implies_ji", False, (k,), "finitely prime but join-reducible")
    return CheckReport("prime_implies_ji", True, info={"primes": primes})


def downset_lattice(p: FinPoset) -> FinLattice:
    """Lattice of down-closed subsets of ``p`` under union and intersection.

    Carrier index order is the numeric order of the downsets' bitmasks, which
    is a linear extension of inclusion: bot is the empty set, top is ``p``.
    """
    n = p.size
    require_within("poset", n, "max_poset")
    below = [sum(1 << i for i in np.flatnonzero(p.leq[:, j])) for j in range(n)]
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    for j in range(n):
        ok &= ((masks >> j) & 1 == 0) | ((masks & below[j]) == below[j])
    downs = masks[ok]
    require_within("downset lattice", len(downs), "max_carrier")
    join = np.searchsorted(downs, downs[:, None] | downs[None, :])
    meet = np.searchsorted(downs, downs[:, None] & downs[None, :])
    names = [p.label(i) for i in range(n)]
    labels = [subset_label(bits(int(d)), names) for d in downs]
    return FinLattice(join, meet, labels)


def family_lattice(family: Iterable[int], ground_size: int) -> FinLattice:
    """Lattice of a family of subsets (bitmasks) closed under intersection.

    The family is first closed under pairwise intersection and the full ground
    set is adjoined; meets are intersections and joins are the least member
    containing the union.
    """
    full = (1 << ground_size) - 1
    members = set(family) | {full}
    frontier = set(members)
    while frontier:
        new = {a & b for a in frontier for b in members} - members
        members |= new
        frontier = new
    ms = np.array(sorted(members), dtype=np.int64)
    n = len(ms)
    require_within("lattice", n, "max_carrier")
    meet = np.searchsorted(ms, ms[:, None] & ms[None, :])
    union = ms[:, None] | ms[None, :]
    join = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            cover = ms[(ms & union[a, b]) == union[a, b]]
            join[a, b] = np.searchsorted(ms, np.bitwise_and.reduce(cover))
    labels = [subset_label(bits(int(m))) for m in ms]
    return FinLattice(join, meet, labels)


def moore_families(ground_size: int, max_members: int) -> list[tuple[int, ...]]:
    """All intersection-closed families containing the full set, up to a size.

    Families are distinct as sets of subsets, not up to isomorphism.
    """
    full = (1 << ground_size) - 1
    proper = range(full)
    out = []
    for k in range(max_members):
        for combo in combinations(proper, k):
            fam = set(combo) | {full}
            if all(a & b in fam for a, b in combinations(combo, 2)):
                out.append(tuple(sorted(fam)))
    return out


def random_family_lattice(rng, ground_size: int, n_sets: int) -> FinLattice:
    family = [rng.randrange(1 << ground_size) for _ in range(n_sets)]
    return family_lattice(family, ground_size)


def chain(n: int) -> FinLattice:
    idx = np.arange(n)
    return FinLattice(np.maximum.outer(idx, idx), np.minimum.outer(idx, idx))


def boolean_lattice(k: int) -> FinLattice:
    """Powerset of ``{0..k-1}``; the carrier index of a subset is its bitmask."""
    m = np.arange(1 << k)
    labels = [subset_label(bits(int(x))) for x in m]
    return FinLattice(m[:, None] | m[None, :], m[:, None] & m[None, :], labels)


def m3() -> FinLattice:
    """Diamond with three atoms 1, 2, 3 between bot 0 and top 4."""
    return FinLattice.from_order(FinPoset.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def n5() -> FinLattice:
    """Pentagon: 0 < 1 < 2 < 4 and 0 < 3 < 4, with 3 incomparable to 1 and 2."""
    return FinLattice.from_order(FinPoset.from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))

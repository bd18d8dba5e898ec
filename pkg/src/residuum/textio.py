"""Line-oriented text formats for posets, lattices, algebras, magmas and duals.

Every file starts with a header ``<kind> <size>``; each further line is a
keyword followed by whitespace-separated decimal indices. Blank lines and
``#`` comments are ignored. Serialization is canonical, so
``serialize(parse(serialize(x))) == serialize(x)``.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .constructions import UNDEFINED, PartialMagma
from .dual import DualStructure
from .lattice import FinLattice, FinPoset
from .report import ConstructionError, ResiduumError
from .residuation import ResAlgebra

KINDS = ("poset", "lattice", "resalg", "magma", "dual")


class ParseError(ResiduumError):
    def __init__(self, source: str, line: int, reason: str):
        self.source, self.line, self.reason = source, line, reason
        super().__init__(f"{source}:{line}: {reason}")


class _Lines:
    def __init__(self, text: str, source: str):
        self.source = source
        self.rows = []
        for no, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.rows.append((no, body.split()))

    def error(self, no, reason):
        return ParseError(self.source, no, reason)

    def ints(self, no, toks, count, size=None):
        if len(toks) != count:
            raise self.error(no, f"expected {count} numbers after the keyword, got {len(toks)}")
        out = []
        for t in toks:
            try:
                v = int(t)
            except ValueError:
                raise self.error(no, f"{t!r} is not a decimal index") from None
            if size is not None and not 0 <= v < size:
                raise self.error(no, f"index {v} out of range for size {size}")
            out.append(v)
        return out


def _header(lines: _Lines, kind=None):
    if not lines.rows:
        raise ParseError(lines.source, 1, "empty input")
    no, toks = lines.rows[0]
    if toks[0] not in KINDS or (kind and toks[0] != kind):
        want = kind or " / ".join(KINDS)
        raise lines.error(no, f"expected header '{want} <size>', got {' '.join(toks)!r}")
    (size,) = lines.ints(no, toks[1:], 1)
    if size < 0:
        raise lines.error(no, "size must be non-negative")
    return toks[0], size, no


def _fill(lines, cells, name, size, symmetric):
    table = np.full((size, size), -1, dtype=np.intp)
    for no, a, b, v in cells:
        for i, j in ((a, b), (b, a)) if symmetric else ((a, b),):
            if table[i, j] not in (-1, v):
                raise lines.error(no, f"conflicting {name} entry for ({i}, {j})")
            table[i, j] = v
    missing = np.argwhere(table < 0)
    if len(missing):
        i, j = missing[0]
        last = cells[-1][0] if cells else 1
        raise lines.error(last, f"{name} table has no entry for ({i}, {j})")
    return table


def _parse_body(lines: _Lines, rows, size, allowed, header_no):
    """Collect keyword rows into a dict of lists of (line, values...)."""
    arity = {"le": 2, "join": 3, "meet": 3, "lres": 3, "rres": 3, "op": 3, "unit": 1, "prod": 3,
             "point": 2, "ge": 2, "rel": 3}
    got = {k: [] for k in allowed}
    labels = {}
    for no, toks in rows:
        key = toks[0]
        if key not in allowed and key not in ("label", "name"):
            raise lines.error(no, f"unexpected keyword {key!r}")
        if key in ("label", "name"):
            if len(toks) < 3:
                raise lines.error(no, f"{key} needs an index and a text")
            (i,) = lines.ints(no, toks[1:2], 1, size)
            labels[i] = " ".join(toks[2:])
            continue
        vals = lines.ints(no, toks[1:], arity[key], size)
        got[key].append((no, *vals))
    return got, labels


def _labels(lines, labels, size, no):
    if not labels:
        return None
    if len(labels) != size:
        raise lines.error(no, f"labels given for {len(labels)} of {size} elements")
    return [labels[i] for i in range(size)]


def _lattice_from(lines, got, labels, size, no):
    try:
        if got["join"] or got["meet"]:
            join = _fill(lines, got["join"], "join", size, True)
            if got["meet"]:
                meet = _fill(lines, got["meet"], "meet", size, True)
            else:
                lat = FinLattice.from_order(FinPoset(join == np.arange(size)[None, :]))
                meet = lat.meet
            return FinLattice(join, meet, _labels(lines, labels, size, no))
        poset = FinPoset.from_pairs(size, [(a, b) for _, a, b in got["le"]], _labels(lines, labels, size, no))
        return FinLattice.from_order(poset)
    except ConstructionError as exc:
        raise lines.error(no, str(exc)) from None


def parse(text: str, source: str = "<string>"):
    lines = _Lines(text, source)
    kind, size, no = _header(lines)
    rows = lines.rows[1:]
    if kind == "poset":
        got, labels = _parse_body(lines, rows, size, ("le",), no)
        try:
            return FinPoset.from_pairs(size, [(a, b) for _, a, b in got["le"]], _labels(lines, labels, size, no))
        except ConstructionError as exc:
            raise lines.error(no, str(exc)) from None
    if kind == "lattice":
        got, labels = _parse_body(lines, rows, size, ("le", "join", "meet"), no)
        return _lattice_from(lines, got, labels, size, no)
    if kind == "resalg":
        inner = [i for i, (_, toks) in enumerate(rows) if toks[0] == "lattice"]
        if len(inner) != 1:
            raise lines.error(no, "resalg needs exactly one 'lattice <size>' block header")
        lno, ltoks = rows[inner[0]]
        (lsize,) = lines.ints(lno, ltoks[1:], 1)
        if lsize != size:
            raise lines.error(lno, f"lattice size {lsize} differs from algebra size {size}")
        rows = rows[: inner[0]] + rows[inner[0] + 1 :]
        # derived products may be present in emitted reports; they are never read
        got, labels = _parse_body(lines, rows, size, ("le", "join", "meet", "lres", "rres", "unit", "prod"), no)
        lat = _lattice_from(lines, got, labels, size, lno)
        lres = _fill(lines, got["lres"], "lres", size, False)
        rres = _fill(lines, got["rres"], "rres", size, False)
        if len(got["unit"]) > 1:
            raise lines.error(got["unit"][1][0], "more than one unit line")
        unit = got["unit"][0][1] if got["unit"] else None
        try:
            return ResAlgebra(lat, lres, rres, unit)
        except ConstructionError as exc:
            raise lines.error(no, str(exc)) from None
    if kind == "magma":
        got, names = _parse_body(lines, rows, size, ("op", "unit"), no)
        op = np.full((size, size), UNDEFINED, dtype=np.intp)
        for lno, a, b, c in got["op"]:
            if op[a, b] not in (UNDEFINED, c):
                raise lines.error(lno, f"conflicting op entry for ({a}, {b})")
            op[a, b] = c
        unit = got["unit"][0][1] if got["unit"] else None
        return PartialMagma(op, unit, _labels(lines, names, size, no))
    # dual
    got, _ = _parse_body(lines, rows, None, ("point", "ge", "rel"), no)
    pts = {}
    for lno, i, c in got["point"]:
        if not 0 <= i < size:
            raise lines.error(lno, f"point ordinal {i} out of range for {size} points")
        pts[i] = c
    if len(pts) != size:
        raise lines.error(no, f"{len(pts)} point lines for {size} points")
    points = tuple(pts[i] for i in range(size))

    def carrier(lno, *ords):
        for o in ords:
            if not 0 <= o < size:
                raise lines.error(lno, f"point ordinal {o} out of range for {size} points")
        return tuple(points[o] for o in ords)

    ge = frozenset(carrier(lno, i, j) for lno, i, j in got["ge"])
    rel = frozenset(carrier(lno, x, y, z) for lno, x, y, z in got["rel"])
    return DualStructure(points, ge, rel)


def parse_file(path, kind: str | None = None):
    path = Path(path)
    obj = parse(path.read_text(), str(path))
    if kind is not None:
        expected = {"poset": FinPoset, "lattice": FinLattice, "resalg": ResAlgebra,
                    "magma": PartialMagma, "dual": DualStructure}[kind]
        if not isinstance(obj, expected):
            raise ParseError(str(path), 1, f"expected a {kind} file")
    return obj


def _label_lines(labels, key="label"):
    return [f"{key} {i} {t}" for i, t in enumerate(labels)] if labels is not None else []


def _lattice_lines(lat: FinLattice) -> list[str]:
    n = lat.size
    out = [f"lattice {n}"]
    out += [f"join {a} {b} {lat.join[a, b]}" for a in range(n) for b in range(a, n)]
    out += [f"meet {a} {b} {lat.meet[a, b]}" for a in range(n) for b in range(a, n)]
    return out + _label_lines(lat.labels)


def serialize(obj) -> str:
    if isinstance(obj, FinPoset):
        out = [f"poset {obj.size}"] + [f"le {a} {b}" for a, b in obj.pairs(strict=True)]
        out += _label_lines(obj.labels)
    elif isinstance(obj, FinLattice):
        out = _lattice_lines(obj)
    elif isinstance(obj, ResAlgebra):
        n = obj.size
        out = [f"resalg {n}"]
        if obj.unit is not None:
            out.append(f"unit {obj.unit}")
        out += _lattice_lines(obj.lat)
        out += [f"lres {a} {c} {obj.lres[a, c]}" for a in range(n) for c in range(n)]
        out += [f"rres {c} {b} {obj.rres[c, b]}" for c in range(n) for b in range(n)]
    elif isinstance(obj, PartialMagma):
        n = obj.size
        out = [f"magma {n}"]
        out += [f"op {a} {b} {obj.op[a, b]}" for a in range(n) for b in range(n) if obj.op[a, b] != UNDEFINED]
        if obj.unit is not None:
            out.append(f"unit {obj.unit}")
        out += _label_lines(obj.names, "name")
    elif isinstance(obj, DualStructure):
        o = {x: i for i, x in enumerate(obj.points)}
        out = [f"dual {len(obj.points)}"]
        out += [f"point {i} {x}" for i, x in enumerate(obj.points)]
        out += [f"ge {i} {j}" for i, j in sorted((o[x], o[y]) for x, y in obj.ge)]
        out += [f"rel {a} {b} {c}" for a, b, c in sorted((o[x], o[y], o[z]) for x, y, z in obj.rel)]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(out) + "\n"


def product_lines(alg: ResAlgebra) -> list[str]:
    """Derived product rows ``prod u v w``, emitted in reports and never read."""
    n = alg.size
    return [f"prod {u} {v} {alg.prod[u, v]}" for u in range(n) for v in range(n)]

"""Deterministic corpora, theorem sweeps, and the non-universality falsifier."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .constructions import (
    Signature,
    closure_mask,
    all_partial_magmas,
    all_posets,
    complex_algebra,
    enumerate_subuniverses,
    heyting_from_dl,
    heyting_from_poset,
    pair_groupoid,
    random_partial_magma,
    restrict,
    small_groups,
)
from .dual import FunctionalityVerdict, check_prop_25, check_prop_316_equivalence, functionality
from .lattice import (
    FinLattice,
    FinPoset,
    chain,
    check_lemma_splitting,
    check_prime_implies_ji,
    family_lattice,
    m3,
    moore_families,
    n5,
    random_family_lattice,
)
from .report import CheckReport
from .residuation import ResAlgebra, check_converse_inequality, verify_axioms

GENERATOR = "python-random-mt19937"

# family -> default parameters; unknown keys are rejected
FAMILIES = {
    "random-magma-complex": {"count": 10, "min_size": 1, "max_size": 3, "p_defined": 0.8},
    "group-complex": {"sizes": [1, 2, 3, 4]},
    "pair-groupoid": {"points": [1, 2]},
    "heyting-downset": {"count": 10, "min_size": 1, "max_size": 5, "p_edge": 0.3, "exhaustive_max": 0},
    "heyting-chain": {"min_length": 2, "max_length": 8},
    "general-lattice": {"count": 20, "ground_size": 4, "n_sets": 5, "named": True},
}


@dataclass
class CorpusSpec:
    seed: int = 0
    families: dict[str, dict] = field(default_factory=lambda: {k: {} for k in FAMILIES})

    def __post_init__(self):
        for fam, params in self.families.items():
            if fam not in FAMILIES:
                raise ValueError(f"unknown corpus family {fam!r}; known: {', '.join(FAMILIES)}")
            extra = set(params) - set(FAMILIES[fam])
            if extra:
                raise ValueError(f"unknown parameters for {fam}: {', '.join(sorted(extra))}")

    def params(self, fam: str) -> dict:
        return {**FAMILIES[fam], **self.families[fam]}

    @classmethod
    def from_json(cls, text: str) -> "CorpusSpec":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("corpus spec must be a JSON object")
        extra = set(data) - {"seed", "families"}
        if extra:
            raise ValueError(f"unknown corpus spec keys: {', '.join(sorted(extra))}")
        fams = data.get("families", {k: {} for k in FAMILIES})
        if isinstance(fams, list):
            fams = {f: {} for f in fams}
        return cls(int(data.get("seed", 0)), fams)


@dataclass
class CorpusItem:
    label: str
    family: str
    structure: ResAlgebra | FinLattice


def _random_poset(rng, n: int, p: float) -> FinPoset:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return FinPoset.from_pairs(n, pairs)


def generate_corpus(spec: CorpusSpec) -> Iterator[CorpusItem]:
    """Yield corpus items in family order; a pure function of ``spec``."""
    rng = random.Random(spec.seed)
    for fam in spec.families:
        p = spec.params(fam)
        if fam == "random-magma-complex":
            for i in range(p["count"]):
                n = rng.randint(p["min_size"], p["max_size"])
                m = random_partial_magma(rng, n, p["p_defined"])
                yield CorpusItem(f"{fam}/{i}/n={n}", fam, complex_algebra(m, f"magma#{i}"))
        elif fam == "group-complex":
            for n in p["sizes"]:
                for k, g in enumerate(small_groups(n)):
                    yield CorpusItem(f"{fam}/order{n}/#{k}", fam, complex_algebra(g, f"G{n}.{k}"))
        elif fam == "pair-groupoid":
            for k in p["points"]:
                yield CorpusItem(f"{fam}/{k}", fam, complex_algebra(pair_groupoid(k), f"pairs{k}"))
        elif fam == "heyting-downset":
            for n in range(p["exhaustive_max"] + 1) if p["exhaustive_max"] else ():
                for k, poset in enumerate(all_posets(n)):
                    yield CorpusItem(f"{fam}/all{n}/#{k}", fam, heyting_from_poset(poset))
            for i in range(p["count"]):
                n = rng.randint(p["min_size"], p["max_size"])
                poset = _random_poset(rng, n, p["p_edge"])
                yield CorpusItem(f"{fam}/{i}/n={n}", fam, heyting_from_poset(poset))
        elif fam == "heyting-chain":
            for n in range(p["min_length"], p["max_length"] + 1):
                yield CorpusItem(f"{fam}/{n}", fam, heyting_from_dl(chain(n), f"chain{n}"))
        elif fam == "general-lattice":
            if p["named"]:
                yield CorpusItem(f"{fam}/M3", fam, m3())
                yield CorpusItem(f"{fam}/N5", fam, n5())
            for i in range(p["count"]):
                lat = random_family_lattice(rng, p["ground_size"], p["n_sets"])
                yield CorpusItem(f"{fam}/{i}", fam, lat)


def lattice_suite() -> list[CorpusItem]:
    """Fixed lattice corpus: every intersection-closed family on 4 points with at
    most 6 members, 60 seeded random families on 5 points, M3, N5 and chains
    of length 1..8."""
    fam = "general-lattice"
    items = [CorpusItem(f"moore4/{f}", fam, family_lattice(f, 4)) for f in moore_families(4, 6)]
    for s in range(60):
        rng = random.Random(s)
        items.append(CorpusItem(f"random5/seed{s}", fam, random_family_lattice(rng, 5, 3 + s % 6)))
    items.append(CorpusItem("M3", fam, m3()))
    items.append(CorpusItem("N5", fam, n5()))
    items += [CorpusItem(f"chain{n}", fam, chain(n)) for n in range(1, 9)]
    return items


def algebra_suite() -> list[CorpusItem]:
    """Fixed algebra corpus: complex algebras of every partial magma on at most
    2 elements, of every group of order at most 4 and of the pair groupoids on
    1..3 points, plus Heyting algebras of every distributive lattice with at
    most 5 join-irreducibles (downsets of all posets on 0..5 points)."""
    items = []
    for n in range(3):
        for k, m in enumerate(all_partial_magmas(n)):
            items.append(CorpusItem(f"magma{n}/#{k}", "random-magma-complex", complex_algebra(m, f"magma{n}.{k}")))
    for n in range(1, 5):
        for k, g in enumerate(small_groups(n)):
            items.append(CorpusItem(f"group{n}/#{k}", "group-complex", complex_algebra(g, f"G{n}.{k}")))
    for k in range(1, 4):
        items.append(CorpusItem(f"pairs{k}", "pair-groupoid", complex_algebra(pair_groupoid(k), f"pairs{k}")))
    for n in range(6):
        for k, p in enumerate(all_posets(n)):
            items.append(CorpusItem(f"downsets{n}/#{k}", "heyting-downset", heyting_from_poset(p, f"H{n}.{k}")))
    return items


@dataclass
class SweepRecord:
    label: str
    check: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"label": self.label, "check": self.check, "ok": self.ok,
                "witness": list(self.witness) if self.witness is not None else None,
                "detail": self.detail}


def _record(label: str, rep: CheckReport) -> SweepRecord:
    return SweepRecord(label, rep.name, rep.ok, rep.witness, rep.detail)


def sweep_items(items: Iterable[CorpusItem]) -> CheckReport:
    """Run every applicable theorem-level check; failures are data."""
    records = []
    for item in items:
        s = item.structure
        lat = s if isinstance(s, FinLattice) else s.lat
        records.append(_record(item.label, check_lemma_splitting(lat)))
        records.append(_record(item.label, check_prime_implies_ji(lat)))
        if isinstance(s, FinLattice):
            continue
        axioms = verify_axioms(s)
        records.append(_record(item.label, axioms))
        if not axioms.ok:
            continue
        records.append(_record(item.label, check_converse_inequality(s)))
        if lat.distributive.ok:
            records.append(_record(item.label, check_prop_25(s)))
            records.append(_record(item.label, check_prop_316_equivalence(s)))
    failures = [r for r in records if not r.ok]
    counts = {}
    for r in records:
        c = counts.setdefault(r.check, [0, 0])
        c[0 if r.ok else 1] += 1
    info = {
        "generator": GENERATOR,
        "items": len({r.label for r in records}),
        "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(counts.items())},
        "records": records,
        "failures": sorted(failures, key=lambda r: (r.label, r.check)),
    }
    return CheckReport("property_sweep", not failures, None, f"{len(failures)} failures", info)


def run_property_sweep(spec: CorpusSpec) -> CheckReport:
    rep = sweep_items(generate_corpus(spec))
    rep.info["seed"] = spec.seed
    return rep


@dataclass
class NonUniversalityWitness:
    parent: ResAlgebra
    subuniverse: tuple[int, ...]
    signature: Signature
    parent_verdict: FunctionalityVerdict
    sub_verdict: FunctionalityVerdict


def witness_for(alg: ResAlgebra, universe: Iterable[int], sig: Signature) -> NonUniversalityWitness | None:
    """Witness built from a given subuniverse, or None if it does not qualify."""
    parent = functionality(alg)
    if not parent.functional:
        return None
    sub = restrict(alg, universe, sig)
    v = functionality(sub.algebra)
    if v.functional:
        return None
    return NonUniversalityWitness(alg, sub.embedding, sig, parent, v)


def find_non_universality_witnesses(alg: ResAlgebra, sig: Signature = Signature.RESIDUATION):
    if not functionality(alg).functional:
        return []
    out = []
    for u in enumerate_subuniverses(alg, sig):
        w = witness_for(alg, u, sig)
        if w is not None:
            out.append(w)
    return out


def find_non_universality_witness(alg: ResAlgebra, sig: Signature = Signature.RESIDUATION):
    """First subalgebra (by size, then elements) with a non-functional dual
    inside an algebra whose dual is functional; None when there is none."""
    if not functionality(alg).functional:
        return None
    for u in enumerate_subuniverses(alg, sig):
        w = witness_for(alg, u, sig)
        if w is not None:
            return w
    return None


def revalidate(w: NonUniversalityWitness) -> bool:
    """Rebuild the subalgebra from scratch and recheck closure and both verdicts."""
    closed = tuple(int(i) for i in np.flatnonzero(closure_mask(w.parent, w.subuniverse, w.signature)))
    if closed != tuple(sorted(w.subuniverse)):
        return False
    fresh = witness_for(w.parent, w.subuniverse, w.signature)
    return fresh is not None and verify_axioms(restrict(w.parent, w.subuniverse, w.signature).algebra).ok

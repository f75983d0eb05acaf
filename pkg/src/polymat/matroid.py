"""Matroids as discrete polymatroids with rho(X) <= |X|."""
from __future__ import annotations

import itertools
from typing import Iterable

from .polymatroid import (DiscretePolymatroid, InvalidRankFunction, elements_of, mask_of,
                          rank_validate, support)
from .representation import Representation, rank_fn_of

# 1,2,3 and 4,5,6 lie on the two carrier lines.  7, 8 and 9 are the cross
# points 15∩24, 16∩34 and 26∩35; they are not collinear, which is what
# breaks Pappus.  Checked against the GF(3) dimension-2 blocks in the tests.
NONPAPPUS_LINES = (
    (1, 2, 3), (1, 5, 7), (1, 6, 8), (2, 4, 7),
    (2, 6, 9), (3, 4, 8), (3, 5, 9), (4, 5, 6),
)


class MatroidAxiomError(ValueError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"independence axiom {axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class Matroid(DiscretePolymatroid):
    __slots__ = ()

    def __init__(self, r: int, values, validate: bool = True):
        super().__init__(r, values, validate)
        for m in range(1 << r):
            if self.table[m] > bin(m).count("1"):
                raise ValueError(f"rank {self.table[m]} exceeds size of {set(elements_of(m))}")

    def to_json(self) -> dict:
        return {"kind": "matroid", **super().to_json()}

    def independents(self) -> list[frozenset[int]]:
        return [frozenset(elements_of(m)) for m in range(1 << self.r)
                if self.table[m] == bin(m).count("1")]


def matroid_from_independents(r: int, sets: Iterable[Iterable[int]]) -> Matroid:
    fam = {mask_of(s) for s in sets}
    if not fam:
        raise MatroidAxiomError("I1", ())
    if 0 not in fam:
        raise MatroidAxiomError("I1", (frozenset(),))
    for m in sorted(fam):
        for i in elements_of(m):
            sub = m & ~(1 << (i - 1))
            if sub not in fam:
                raise MatroidAxiomError("I2", (frozenset(elements_of(m)), frozenset(elements_of(sub))))
    for a, b in itertools.product(sorted(fam), repeat=2):
        if bin(a).count("1") < bin(b).count("1"):
            if not any(a | (1 << (e - 1)) in fam for e in elements_of(b & ~a)):
                raise MatroidAxiomError("I3", (frozenset(elements_of(a)), frozenset(elements_of(b))))
    table = []
    for m in range(1 << r):
        table.append(max(bin(s).count("1") for s in fam if s & m == s))
    return Matroid(r, table)


def matroid_to_dpm(M: Matroid) -> DiscretePolymatroid:
    return DiscretePolymatroid(M.r, list(M.table), validate=False)


def dpm_to_matroid(D: DiscretePolymatroid) -> Matroid:
    for m in range(1 << D.r):
        if D.table[m] > bin(m).count("1"):
            raise ValueError(f"rank {D.table[m]} of {set(elements_of(m))} exceeds its size")
    return Matroid(D.r, list(D.table), validate=False)


def circuits(M: DiscretePolymatroid) -> list[frozenset[int]]:
    return sorted({support(u) for u in M.minimal_excluded()}, key=lambda s: (len(s), sorted(s)))


def bases(M: DiscretePolymatroid) -> list[frozenset[int]]:
    return sorted({support(u) for u in M.bases()}, key=sorted)


def uniform(k: int, n: int) -> Matroid:
    return Matroid(n, [min(bin(m).count("1"), k) for m in range(1 << n)])


def _nonpappus() -> Matroid:
    lines = {mask_of(l) for l in NONPAPPUS_LINES}
    table = []
    for m in range(1 << 9):
        c = bin(m).count("1")
        table.append(2 if m in lines else min(c, 3))
    return Matroid(9, table)


def preset(name: str) -> Matroid:
    key = name.lower().replace("_", "").replace("-", "")
    if key in ("u24", "u2,4"):
        return uniform(2, 4)
    if key == "nonpappus":
        return _nonpappus()
    raise KeyError(f"unknown matroid preset {name!r}")


def multilinear_rep_check(M: DiscretePolymatroid, rep: Representation, n: int) -> bool:
    if rep.r != M.r:
        raise ValueError(f"{rep.r} blocks for a ground set of size {M.r}")
    return rank_fn_of(rep) == [n * v for v in M.table]


__all__ = [
    "Matroid", "MatroidAxiomError", "NONPAPPUS_LINES", "bases", "circuits", "dpm_to_matroid",
    "matroid_from_independents", "matroid_to_dpm", "multilinear_rep_check", "preset",
    "rank_validate", "uniform", "InvalidRankFunction",
]

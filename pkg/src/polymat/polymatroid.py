"""Discrete polymatroids stored as rank tables.

A subset A of the ground set {1..r} is a bitmask with bit i-1 set for element
i.  Vectors are plain tuples of non-negative ints of length r.
"""
from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .gf import CapExceeded, resolve_cap

MAX_GROUND = 20

Vector = tuple[int, ...]


class InvalidRankFunction(ValueError):
    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


# -- vectors ------------------------------------------------------------------

def unit(i: int, r: int, value: int = 1) -> Vector:
    """value * e_i with 1-based i."""
    return tuple(value if j == i - 1 else 0 for j in range(r))


def support(u: Sequence[int]) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(u) if x > 0)


def support_mask(u: Sequence[int]) -> int:
    m = 0
    for i, x in enumerate(u):
        if x > 0:
            m |= 1 << i
    return m


def join(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(max(a, b) for a, b in zip(u, v))


def restrict_sum(u: Sequence[int], mask: int) -> int:
    return sum(x for i, x in enumerate(u) if mask >> i & 1)


def leq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def lt(u: Sequence[int], v: Sequence[int]) -> bool:
    return leq(u, v) and tuple(u) != tuple(v)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _subset_sums(u: Sequence[int]) -> list[int]:
    r = len(u)
    sums = [0] * (1 << r)
    for mask in range(1, 1 << r):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + u[low.bit_length() - 1]
    return sums


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    axiom: str
    sets: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        names = ", ".join("{" + ",".join(map(str, elements_of(s))) + "}" for s in self.sets)
        return f"({self.axiom}) violated at {names}: {self.detail}"

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "sets": [list(elements_of(s)) for s in self.sets], "detail": self.detail}


def _check_shape(r: int, values: Sequence[int]) -> None:
    if not 0 <= r <= MAX_GROUND:
        raise ValueError(f"ground set size {r} outside 0..{MAX_GROUND}")
    if len(values) != 1 << r:
        raise ValueError(f"rank table needs {1 << r} entries, got {len(values)}")
    if values and min(values) < 0:
        raise ValueError("rank values must be non-negative")


def rank_validate(r: int, values: Sequence[int]) -> Violation | None:
    """First violation of (D1)-(D3), or None.

    Monotonicity and submodularity are checked in their local forms, which are
    equivalent to the global ones: rho(A) <= rho(A+i) and
    rho(A+i) + rho(A+j) >= rho(A) + rho(A+i+j).
    """
    _check_shape(r, values)
    if values[0] != 0:
        return Violation("D3", (0,), f"rank of the empty set is {values[0]}")
    full = (1 << r) - 1
    for A in range(1 << r):
        ra = values[A]
        for i in range(r):
            bi = 1 << i
            if not A & bi and values[A | bi] < ra:
                return Violation("D1", (A, A | bi), f"{values[A | bi]} < {ra}")
    for A in range(1 << r):
        ra = values[A]
        free = full & ~A
        for i in range(r):
            bi = 1 << i
            if not free & bi:
                continue
            rai = values[A | bi]
            for j in range(i + 1, r):
                bj = 1 << j
                if not free & bj:
                    continue
                if rai + values[A | bj] < ra + values[A | bi | bj]:
                    return Violation(
                        "D2", (A | bi, A | bj),
                        f"{rai} + {values[A | bj]} < {values[A | bi | bj]} + {ra}")
    return None


# -- the polymatroid ----------------------------------------------------------

class DiscretePolymatroid:
    """Rank table over all 2^r subsets, validated on construction."""

    __slots__ = ("r", "table", "__dict__")

    def __init__(self, r: int, values: Sequence[int], validate: bool = True):
        _check_shape(r, values)
        if validate:
            v = rank_validate(r, values)
            if v is not None:
                raise InvalidRankFunction(v)
        self.r = r
        self.table = array("l", values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiscretePolymatroid) and self.r == other.r and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.r, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"DiscretePolymatroid(r={self.r}, rank={self.rank_of_ground})"

    def rank(self, elements: Iterable[int]) -> int:
        return self.table[mask_of(elements)]

    def rank_mask(self, mask: int) -> int:
        return self.table[mask]

    @property
    def rank_of_ground(self) -> int:
        return self.table[(1 << self.r) - 1]

    @property
    def singleton_ranks(self) -> Vector:
        return tuple(self.table[1 << i] for i in range(self.r))

    @property
    def rho_max(self) -> int:
        return max(self.singleton_ranks, default=0)

    def to_json(self) -> dict:
        return {"r": self.r, "rank": list(self.table)}

    @classmethod
    def from_json(cls, obj: dict) -> "DiscretePolymatroid":
        return cls(int(obj["r"]), [int(x) for x in obj["rank"]])

    @classmethod
    def from_function(cls, r: int, fn, validate: bool = True) -> "DiscretePolymatroid":
        """Build from fn(frozenset of 1-based elements) -> rank."""
        return cls(r, [fn(frozenset(elements_of(m))) for m in range(1 << r)], validate)

    # membership: only subsets of the support can be tight, by monotonicity
    def contains(self, u: Sequence[int]) -> bool:
        if len(u) != self.r:
            raise ValueError(f"vector length {len(u)} != {self.r}")
        if any(x < 0 for x in u):
            return False
        sup = [i for i, x in enumerate(u) if x]
        t = self.table
        sums = {0: 0}
        for i in sup:
            bi = 1 << i
            new = {}
            for m, s in sums.items():
                s2 = s + u[i]
                if s2 > t[m | bi]:
                    return False
                new[m | bi] = s2
            sums.update(new)
        return True

    def box_size(self) -> int:
        n = 1
        for s in self.singleton_ranks:
            n *= s + 1
        return n

    def _check_cap(self, cap: int | None) -> None:
        lim = resolve_cap(cap)
        if self.box_size() > lim:
            raise CapExceeded(f"vector box of size {self.box_size()} exceeds the cap {lim}")

    @cached_property
    def _vectors(self) -> tuple[Vector, ...]:
        r, t = self.r, self.table
        out: list[Vector] = []
        u = [0] * r

        # sums holds (mask, |u(mask)|) for every subset of the current support;
        # by monotonicity no other subset can be violated
        def rec(i: int, sums: list[tuple[int, int]]) -> None:
            if i == r:
                out.append(tuple(u))
                return
            rec(i + 1, sums)
            bi = 1 << i
            for val in range(1, t[bi] + 1):
                ext = []
                for m, s in sums:
                    s2 = s + val
                    if s2 > t[m | bi]:
                        break
                    ext.append((m | bi, s2))
                else:
                    u[i] = val
                    rec(i + 1, sums + ext)
                    continue
                break
            u[i] = 0

        rec(0, [(0, 0)])
        out.sort()
        return tuple(out)

    def vectors(self, cap: int | None = None) -> list[Vector]:
        self._check_cap(cap)
        return list(self._vectors)

    @cached_property
    def _vector_set(self) -> frozenset[Vector]:
        return frozenset(self._vectors)

    def bases(self, cap: int | None = None) -> list[Vector]:
        self._check_cap(cap)
        vs = self._vector_set
        out = []
        for w in self._vectors:
            if all(
                w[i] == self.table[1 << i] or w[:i] + (w[i] + 1,) + w[i + 1:] not in vs
                for i in range(self.r)
            ):
                out.append(w)
        sums = {sum(b) for b in out}
        assert len(sums) == 1, "basis vectors with different sums: invalid rank table"
        return out

    def excluded(self, cap: int | None = None) -> list[Vector]:
        self._check_cap(cap)
        vs = self._vector_set
        box = itertools.product(*(range(s + 1) for s in self.singleton_ranks))
        return [u for u in box if u not in vs]

    def minimal_excluded(self, cap: int | None = None) -> list[Vector]:
        self._check_cap(cap)
        return list(self._minimal_excluded)

    @cached_property
    def _minimal_excluded(self) -> tuple[Vector, ...]:
        vs = self._vector_set
        sing = self.singleton_ranks
        found = set()
        for w in self._vectors:
            for i in range(self.r):
                if w[i] >= sing[i]:
                    continue
                u = w[:i] + (w[i] + 1,) + w[i + 1:]
                if u in vs or u in found:
                    continue
                if all(u[j] == 0 or u[:j] + (u[j] - 1,) + u[j + 1:] in vs for j in range(self.r)):
                    found.add(u)
        return tuple(sorted(found))

    def unit_mev(self, i: int, cap: int | None = None) -> list[Vector]:
        self._check_index(i)
        return [u for u in self.minimal_excluded(cap) if u[i - 1] == 1]

    def reduced_unit_mev(self, i: int, cap: int | None = None) -> list[Vector]:
        cs = self.unit_mev(i, cap)
        sups = [support_mask(u) for u in cs]
        return [u for u, su in zip(cs, sups)
                if not any(sv != su and sv & su == sv for sv in sups)]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.r:
            raise IndexError(f"ground element {i} outside 1..{self.r}")

    def scale(self, n: int) -> "DiscretePolymatroid":
        if n < 1:
            raise ValueError("scale factor must be positive")
        return DiscretePolymatroid(self.r, [n * v for v in self.table], validate=False)

    def restrict(self, elements: Sequence[int]) -> "DiscretePolymatroid":
        """Polymatroid on the listed elements, relabelled 1..len(elements)."""
        out = []
        for m in range(1 << len(elements)):
            out.append(self.table[mask_of(elements[j] for j in range(len(elements)) if m >> j & 1)])
        return DiscretePolymatroid(len(elements), out, validate=False)


# -- module-level API ---------------------------------------------------------

def dpm_contains(D: DiscretePolymatroid, u: Sequence[int]) -> bool:
    return D.contains(u)


def dpm_vectors(D: DiscretePolymatroid, cap: int | None = None) -> list[Vector]:
    return D.vectors(cap)


def dpm_bases(D: DiscretePolymatroid, cap: int | None = None) -> list[Vector]:
    return D.bases(cap)


def excluded_vectors(D: DiscretePolymatroid, cap: int | None = None) -> list[Vector]:
    return D.excluded(cap)


def minimal_excluded_vectors(D: DiscretePolymatroid, cap: int | None = None) -> list[Vector]:
    return D.minimal_excluded(cap)


def unit_mev(D: DiscretePolymatroid, i: int, cap: int | None = None) -> list[Vector]:
    return D.unit_mev(i, cap)


def reduced_unit_mev(D: DiscretePolymatroid, i: int, cap: int | None = None) -> list[Vector]:
    return D.reduced_unit_mev(i, cap)


def scale(D: DiscretePolymatroid, n: int) -> DiscretePolymatroid:
    return D.scale(n)


def free_polymatroid(singletons: Sequence[int]) -> DiscretePolymatroid:
    r = len(singletons)
    return DiscretePolymatroid(r, [restrict_sum(singletons, m) for m in range(1 << r)])


def rank_from_vectors(vectors: Iterable[Sequence[int]]) -> list[int]:
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise ValueError("need at least one vector")
    r = len(vs[0])
    if any(len(v) != r for v in vs):
        raise ValueError("vectors of different lengths")
    table = [0] * (1 << r)
    for v in vs:
        for m, s in enumerate(_subset_sums(v)):
            if s > table[m]:
                table[m] = s
    return table


@dataclass(frozen=True)
class IngletonViolation:
    sets: tuple[int, int, int, int]
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"sets": [list(elements_of(s)) for s in self.sets], "lhs": self.lhs, "rhs": self.rhs}


def ingleton_sides(D: DiscretePolymatroid, a: int, b: int, c: int, d: int) -> tuple[int, int]:
    t = D.table
    lhs = t[a] + t[b] + t[a | b | c] + t[a | b | d] + t[c | d]
    rhs = t[a | b] + t[a | c] + t[a | d] + t[b | c] + t[b | d]
    return lhs, rhs


def ingleton_check(D: DiscretePolymatroid, quadruples: Iterable[Sequence[int]] | None = None,
                   full: bool = False) -> IngletonViolation | None:
    """First quadruple of subset masks violating Ingleton, or None.

    Default scope is ordered quadruples of distinct singletons.  ``full``
    ranges over all ordered quadruples of non-empty subsets, which costs
    (2^r - 1)^4 evaluations.
    """
    if quadruples is None:
        if full:
            pool = range(1, 1 << D.r)
            quadruples = itertools.product(pool, repeat=4)
        else:
            quadruples = itertools.permutations([1 << i for i in range(D.r)], 4)
    for q in quadruples:
        a, b, c, d = q
        lhs, rhs = ingleton_sides(D, a, b, c, d)
        if lhs > rhs:
            return IngletonViolation((a, b, c, d), lhs, rhs)
    return None

"""Linear index coding and its link to discrete polymatroid representations.

Messages are numbered in problem order; with message dimension n the
message vector is the concatenation of the m blocks, so an encoding matrix
has n*m rows.  For problems built from a polymatroid the order is
x1..xk followed by y_i_j in lexicographic (i, j) order.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .gf import (CapExceeded, Echelon, FieldSpec, Matrix, MatrixError, SingularMatrix, field_from_json,
                 gaussian_binomial, hstack, in_span, mat_inverse, rank, rref_subspaces, resolve_cap, vstack)
from .polymatroid import DiscretePolymatroid, mask_of, support
from .representation import Representation, is_representation, rank_fn_of


class IndexCodingError(ValueError):
    pass


class RetriesExhausted(RuntimeError):
    def __init__(self, msg: str, family: str):
        super().__init__(msg)
        self.family = family


@dataclass(frozen=True)
class Receiver:
    demand: str
    side: frozenset[str]

    def to_json(self) -> dict:
        return {"demand": self.demand, "side": sorted(self.side)}


@dataclass(frozen=True)
class IndexProblem:
    messages: tuple[str, ...]
    receivers: tuple[Receiver, ...]
    n: int = 1

    def __post_init__(self):
        if len(set(self.messages)) != len(self.messages):
            raise IndexCodingError("duplicate message ids")
        known = set(self.messages)
        for R in self.receivers:
            if R.demand not in known or not R.side <= known:
                raise IndexCodingError(f"receiver {R.demand} uses undeclared messages")
            if R.demand in R.side:
                raise IndexCodingError(f"receiver for {R.demand} already holds it")

    @property
    def m(self) -> int:
        return len(self.messages)

    def index(self, msg: str) -> int:
        return self.messages.index(msg)

    def to_json(self) -> dict:
        return {"messages": list(self.messages), "n": self.n,
                "receivers": [R.to_json() for R in self.receivers]}

    @classmethod
    def from_json(cls, obj: dict) -> "IndexProblem":
        recs = tuple(Receiver(str(r["demand"]), frozenset(str(s) for s in r["side"])) for r in obj["receivers"])
        return cls(tuple(str(x) for x in obj["messages"]), recs, int(obj.get("n", 1)))


@dataclass(frozen=True)
class IndexCode:
    field: FieldSpec
    n: int
    c: int
    encoding: Matrix
    messages: tuple[str, ...] = ()

    def __post_init__(self):
        if self.c < 0 or self.encoding.cols != self.c:
            raise MatrixError(f"encoding has {self.encoding.cols} columns, code length is {self.c}")
        if self.n < 1 or self.encoding.rows % self.n:
            raise MatrixError("encoding rows must be a multiple of n")

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "c": self.c,
                "messages": list(self.messages), "encoding": self.encoding.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "IndexCode":
        F = field_from_json(obj["field"])
        enc = Matrix.from_json(F, obj["encoding"])
        return cls(F, int(obj["n"]), int(obj.get("c", enc.cols)), enc, tuple(obj.get("messages", ())))


@dataclass(frozen=True)
class Failure:
    what: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"ok": False, "failure": self.what, "detail": self.detail}


def m_of(P: IndexProblem) -> int:
    counts = Counter(R.side for R in P.receivers)
    return max(counts.values(), default=0)


def _selector(F: FieldSpec, m: int, n: int, idx: int) -> Matrix:
    cols = [[1 if r == idx * n + t else 0 for r in range(m * n)] for t in range(n)]
    return Matrix.from_cols(F, cols, m * n)


def _check_code_shape(P: IndexProblem, code: IndexCode) -> None:
    if code.encoding.rows != P.m * code.n:
        raise MatrixError(f"encoding has {code.encoding.rows} rows, expected {P.m * code.n}")
    if code.messages and tuple(code.messages) != P.messages:
        raise MatrixError("code message order differs from the problem")


def verify_index_code(P: IndexProblem, code: IndexCode) -> Failure | None:
    """None when every receiver can decode, else the first failing receiver."""
    _check_code_shape(P, code)
    F, n = code.field, code.n
    sel = {x: _selector(F, P.m, n, P.index(x)) for x in P.messages}
    for R in P.receivers:
        gens = hstack([code.encoding] + [sel[h] for h in sorted(R.side, key=P.index)], P.m * n, F)
        if in_span(sel[R.demand], gens) is None:
            return Failure("receiver", f"({R.demand}, {{{', '.join(sorted(R.side, key=P.index))}}}) cannot decode")
    return None


def is_perfect(P: IndexProblem, code: IndexCode) -> bool:
    bad = verify_index_code(P, code)
    if bad is not None:
        raise IndexCodingError(f"code does not solve the problem: {bad.detail}")
    return code.c == code.n * m_of(P)


# -- correspondence with representations ----------------------------------------

def thm5_check(P: IndexProblem, rep: Representation, n: int, c: int) -> Failure | None:
    m = P.m
    if rep.r != m + 1:
        raise IndexCodingError(f"{rep.r} blocks, expected {m + 1}")
    t = rank_fn_of(rep)
    full = (1 << (m + 1)) - 1
    msgs = (1 << m) - 1
    last = 1 << m
    if t[full] != n * m:
        return Failure("rank", f"rank is {t[full]}, expected {n * m}")
    for i in range(m):
        if t[1 << i] != n:
            return Failure("C1", f"rho({{{i + 1}}}) = {t[1 << i]}, expected {n}")
    if t[msgs] != n * m:
        return Failure("C1", f"rho of the message blocks is {t[msgs]}, expected {n * m}")
    if t[last] != c:
        return Failure("C1", f"rho({{{m + 1}}}) = {t[last]}, expected {c}")
    for R in P.receivers:
        h = mask_of(P.index(x) + 1 for x in R.side) | last
        i = 1 << P.index(R.demand)
        if t[h | i] != t[h]:
            return Failure("C2", f"receiver ({R.demand}, {sorted(R.side, key=P.index)})")
    return None


def code_from_thm5_rep(P: IndexProblem, rep: Representation, n: int, c: int) -> IndexCode:
    bad = thm5_check(P, rep, n, c)
    if bad is not None:
        raise IndexCodingError(f"representation fails {bad.what}: {bad.detail}")
    norm = rep.normalized()
    B = hstack(norm.blocks[:P.m], norm.ambient, rep.field)
    try:
        Binv = mat_inverse(B)
    except SingularMatrix as exc:
        raise IndexCodingError("message blocks are not a basis") from exc
    enc = Binv @ norm.blocks[P.m]
    code = IndexCode(rep.field, n, c, enc, P.messages)
    assert verify_index_code(P, code) is None
    return code


def thm5_rep_from_code(P: IndexProblem, code: IndexCode) -> Representation:
    bad = verify_index_code(P, code)
    if bad is not None:
        raise IndexCodingError(f"code does not solve the problem: {bad.detail}")
    F, n = code.field, code.n
    blocks = [_selector(F, P.m, n, i) for i in range(P.m)] + [code.encoding]
    rep = Representation(F, P.m * n, tuple(blocks))
    assert thm5_check(P, rep, n, code.c) is None
    return rep


# -- problems built from a polymatroid ----------------------------------------------

def _zeta(D: DiscretePolymatroid) -> dict[int, list[str]]:
    return {i: [f"y_{i}_{j}" for j in range(1, D.rank([i]) + 1)] for i in range(1, D.r + 1)}


def construct_problem(D: DiscretePolymatroid, cap: int | None = None) -> IndexProblem:
    k = D.rank_of_ground
    X = [f"x{j}" for j in range(1, k + 1)]
    zeta = _zeta(D)
    Y = [y for i in range(1, D.r + 1) for y in zeta[i]]
    seen: dict[Receiver, None] = {}

    def add(d: str, side: Iterable[str]) -> None:
        seen.setdefault(Receiver(d, frozenset(side)), None)

    for b in D.bases(cap):
        sup = sorted(support(b))
        for etas in itertools.product(*(itertools.combinations(zeta[l], b[l - 1]) for l in sup)):
            side = [y for eta in etas for y in eta]
            for x in X:
                add(x, side)
    for cvec in D.minimal_excluded(cap):
        sup = sorted(support(cvec))
        for j in sup:
            others = [l for l in sup if l != j]
            for p in range(1, D.rank([j]) + 1):
                ypj = f"y_{j}_{p}"
                rest = [y for y in zeta[j] if y != ypj]
                for g1 in itertools.product(*(itertools.combinations(zeta[l], cvec[l - 1]) for l in others)):
                    for g2 in itertools.combinations(rest, cvec[j - 1] - 1):
                        add(ypj, [y for eta in g1 for y in eta] + list(g2))
    for y in Y:
        add(y, X)
    return IndexProblem(tuple(X + Y), tuple(seen))


def n_bound(D: DiscretePolymatroid) -> int:
    best = 0
    sing = D.singleton_ranks
    bases = D.bases()
    for i in range(1, D.r + 1):
        tot = 0
        for b in bases:
            if b[i - 1] == 0:
                continue
            term = comb(sing[i - 1], b[i - 1] - 1)
            for j in support(b):
                if j != i:
                    term *= comb(sing[j - 1], b[j - 1])
            tot += term
        best = max(best, tot)
    return 1 + best


def rep_from_perfect_code(D: DiscretePolymatroid, code: IndexCode) -> Representation:
    """Representation of nD read off a perfect code for the problem built from D."""
    P = construct_problem(D)
    if not is_perfect(P, code):
        raise IndexCodingError("code is not perfect")
    n, k = code.n, D.rank_of_ground
    enc = code.encoding
    C = enc.row_slice(0, n * k)
    Dm = enc.row_slice(n * k, enc.rows)
    try:
        Dinv = mat_inverse(Dm)
    except SingularMatrix as exc:
        raise IndexCodingError("y-part of the encoding is singular") from exc
    C = C @ Dinv
    blocks = []
    start = 0
    for s in D.singleton_ranks:
        blocks.append(C.col_slice(start, start + n * s))
        start += n * s
    rep = Representation(code.field, n * k, tuple(blocks))
    assert is_representation(rep, D.scale(n))
    return rep


def _gamma_ok(D: DiscretePolymatroid, G: Sequence[Matrix], n: int, bases) -> str | None:
    F = G[0].field if G else None
    k = D.rank_of_ground
    for b in bases:
        sup = sorted(support(b))
        choices = [itertools.combinations(range(D.rank([l])), b[l - 1]) for l in sup]
        for pick in itertools.product(*choices):
            parts = [G[l - 1].col_slice(t * n, (t + 1) * n) for l, ts in zip(sup, pick) for t in ts]
            if rank(hstack(parts, n * k, F)) != n * k:
                return f"P(b) for b = {b}"
    return None


def thm7_construct(D: DiscretePolymatroid, rep: Representation, n: int, target: FieldSpec,
                   seed: int = 0, retries: int | None = None,
                   cap: int | None = None) -> tuple[IndexCode, int]:
    """Perfect code from a representation of nD; also returns the attempt count.

    Attempt 1 uses identity mixing matrices, later attempts draw them from a
    seeded generator.  Over tiny fields every assignment is tried once the
    random budget is spent.
    """
    if rep.r != D.r:
        raise IndexCodingError(f"{rep.r} blocks for a ground set of size {D.r}")
    if not is_representation(rep, D.scale(n)):
        raise IndexCodingError("blocks do not represent nD")
    k = D.rank_of_ground
    sizes = [n * s for s in D.singleton_ranks]
    norm = rep.normalized()
    if target != rep.field:
        norm = norm.lift(target)
    A = norm.blocks
    bases = D.bases()
    retries = 64 * D.r if retries is None else retries
    rng = random.Random(seed)
    F = target

    def attempt(gammas: list[Matrix]) -> str | None:
        for g in gammas:
            if g.rows and rank(g) != g.rows:
                return "det(Gamma_i)"
        G = [a @ g for a, g in zip(A, gammas)]
        return _gamma_ok(D, G, n, bases) or None

    def emit(gammas: list[Matrix]) -> IndexCode:
        G = hstack([a @ g for a, g in zip(A, gammas)], n * k, F)
        enc = vstack([G, Matrix.identity(F, sum(sizes))])
        P = construct_problem(D)
        code = IndexCode(F, n, sum(sizes), enc, P.messages)
        assert is_perfect(P, code)
        return code

    def rand(s: int) -> Matrix:
        return Matrix.from_rows(F, [[rng.randrange(F.q) for _ in range(s)] for _ in range(s)], s)

    last = None
    for t in range(retries):
        gammas = [Matrix.identity(F, s) for s in sizes] if t == 0 else [rand(s) for s in sizes]
        last = attempt(gammas)
        if last is None:
            return emit(gammas), t + 1
    space = F.q ** sum(s * s for s in sizes)
    if space <= resolve_cap(cap):
        count = retries
        for flat in itertools.product(range(F.q), repeat=sum(s * s for s in sizes)):
            count += 1
            gammas, pos = [], 0
            for s in sizes:
                gammas.append(Matrix.from_rows(F, [list(flat[pos + r * s: pos + (r + 1) * s]) for r in range(s)], s))
                pos += s * s
            last = attempt(gammas)
            if last is None:
                return emit(gammas), count
    raise RetriesExhausted(f"no admissible mixing matrices found; last failure {last}", last or "")


def code_from_representation_thm7(D: DiscretePolymatroid, rep: Representation, n: int, target: FieldSpec,
                                  seed: int = 0, retries: int | None = None,
                                  cap: int | None = None) -> IndexCode:
    return thm7_construct(D, rep, n, target, seed, retries, cap)[0]


# -- exhaustive searches ----------------------------------------------------------------

def _null_basis(F: FieldSpec, rows: Sequence[Sequence[int]], pivots: Sequence[int], dim: int) -> Matrix:
    free = [j for j in range(dim) if j not in pivots]
    cols = []
    for f in free:
        v = [0] * dim
        v[f] = 1
        for row, p in zip(rows, pivots):
            v[p] = F.neg(row[f])
        cols.append(v)
    return Matrix.from_cols(F, cols, dim) if cols else Matrix.zeros(F, dim, 0)


def _block_masks(P: IndexProblem, n: int) -> list[tuple[int, int]]:
    blk = [((1 << n) - 1) << (i * n) for i in range(P.m)]
    return [(sum(blk[P.index(h)] for h in R.side), blk[P.index(R.demand)]) for R in P.receivers]


def search_perfect_code(P: IndexProblem, field: FieldSpec, n: int = 1, method: str = "pruned",
                        cap: int | None = None, stats: dict | None = None) -> IndexCode | None:
    """First perfect linear code in canonical order, or None.

    ``exhaustive`` walks every c-dimensional subspace of field^(nm) in RREF
    order and tests the spanned code.  ``pruned`` walks the orthogonal
    complements instead: a receiver (x, H) fails exactly when the complement
    holds a vector vanishing on H but not on x, which is inherited by every
    extension, so partial complements can be cut.
    """
    dim = n * P.m
    c = n * m_of(P)
    lim = resolve_cap(cap)
    stats = {} if stats is None else stats
    stats["candidates"] = 0
    if method == "exhaustive":
        total = gaussian_binomial(dim, c, field.q)
        if total > lim:
            raise CapExceeded(f"{total} candidate subspaces exceed the cap {lim}")
        masks = _block_masks(P, n)
        groups: dict[int, list[int]] = {}
        for H, x in masks:
            groups.setdefault(H, []).append(x)
        units = {x: [[1 if r == bit else 0 for r in range(dim)]
                     for bit in range(dim) if (x >> bit) & 1] for x in {x for _, x in masks}}
        for _, rows in rref_subspaces(dim, c, field):
            stats["candidates"] += 1
            if _decodes(field, dim, rows, groups, units):
                enc = Matrix.from_cols(field, rows, dim) if c else Matrix.zeros(field, dim, 0)
                code = IndexCode(field, n, c, enc, P.messages)
                assert verify_index_code(P, code) is None
                return code
        return None
    if method != "pruned":
        raise ValueError(f"unknown search method {method!r}")
    d = dim - c
    if dim > 24:
        raise CapExceeded("support table would exceed 2^24 entries")
    bad = [False] * (1 << dim)
    full = (1 << dim) - 1
    for H, x in _block_masks(P, n):
        # every support avoiding H and meeting x is fatal
        comp = full & ~H
        sub = comp
        while sub:
            if sub & x:
                bad[sub] = True
            sub = (sub - 1) & comp
    q = field.q
    scalars = list(range(1, q))

    def supp(v) -> int:
        return sum(1 << i for i, a in enumerate(v) if a)

    found: list | None = None

    def rec(rows: list[list[int]], pivots: list[int], span: list[tuple[int, ...]]) -> bool:
        nonlocal found
        if len(rows) == d:
            stats["candidates"] += 1
            found = [list(r) for r in rows], list(pivots)
            return True
        lo = pivots[-1] + 1 if pivots else 0
        for p in range(lo, dim - (d - len(rows)) + 1):
            if any(r[p] for r in rows):
                continue
            free = [j for j in range(p + 1, dim)]
            for vals in itertools.product(range(q), repeat=len(free)):
                stats["candidates"] += 1
                if stats["candidates"] > lim:
                    raise CapExceeded(f"search visited more than {lim} partial complements")
                v = [0] * dim
                v[p] = 1
                for j, a in zip(free, vals):
                    v[j] = a
                new = []
                ok = True
                for a in scalars:
                    av = [field.mul(a, t) for t in v]
                    for w in [(0,) * dim] + span:
                        u = tuple(field.add(s, t) for s, t in zip(av, w))
                        if bad[supp(u)]:
                            ok = False
                            break
                        new.append(u)
                    if not ok:
                        break
                if not ok:
                    continue
                if rec(rows + [v], pivots + [p], span + new):
                    return True
        return False

    if not rec([], [], []):
        return None
    rows, pivots = found
    enc = _null_basis(field, rows, pivots, dim)
    code = IndexCode(field, n, c, enc, P.messages)
    assert verify_index_code(P, code) is None
    return code


def _decodes(F: FieldSpec, dim: int, cols, groups: dict[int, list[int]], units) -> bool:
    for H, xs in groups.items():
        keep = [0 if (H >> r) & 1 else 1 for r in range(dim)]
        ech = Echelon(F, dim).extend([[a * k for a, k in zip(col, keep)] for col in cols])
        for x in xs:
            if not ech.contains_all(units[x]):
                return False
    return True

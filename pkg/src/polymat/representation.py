"""Finite-field representations of discrete polymatroids.

A representation is one generator matrix per ground-set element; the rank of
a subset is the dimension of the sum of the column spans.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .gf import (CapExceeded, Echelon, FieldSpec, Matrix, MatrixError, SingularMatrix,
                 column_basis, field_from_json, gaussian_binomial, hstack, in_span,
                 lift_to_extension, mat_inverse, mat_rref, rank, rref_subspaces, resolve_cap)
from .polymatroid import DiscretePolymatroid, Vector


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    field: FieldSpec
    ambient: int
    blocks: tuple[Matrix, ...]

    def __post_init__(self):
        for b in self.blocks:
            if b.field != self.field:
                raise MatrixError("block over the wrong field")
            if b.rows != self.ambient:
                raise MatrixError(f"block has {b.rows} rows, ambient is {self.ambient}")

    @classmethod
    def of(cls, field: FieldSpec, blocks: Sequence[Matrix], ambient: int | None = None) -> "Representation":
        if ambient is None:
            if not blocks:
                raise MatrixError("ambient dimension required when there are no blocks")
            ambient = blocks[0].rows
        return cls(field, ambient, tuple(blocks))

    @property
    def r(self) -> int:
        return len(self.blocks)

    def dims(self) -> Vector:
        return tuple(rank(b) for b in self.blocks)

    def total(self) -> Matrix:
        return hstack(self.blocks, self.ambient, self.field)

    def normalized(self) -> "Representation":
        """Full-column-rank blocks in coordinates of the total span."""
        basis = column_basis(self.total())
        d = basis.cols
        blocks = []
        for b in self.blocks:
            cb = column_basis(b)
            coords = in_span(cb, basis)
            assert coords is not None
            blocks.append(coords)
        return Representation(self.field, d, tuple(blocks))

    def map_blocks(self, T: Matrix) -> "Representation":
        """Left-multiply every block by T."""
        return Representation(self.field, T.rows, tuple(T @ b for b in self.blocks))

    def lift(self, target: FieldSpec) -> "Representation":
        return Representation(target, self.ambient, tuple(lift_to_extension(b, target) for b in self.blocks))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "ambient": self.ambient,
                "blocks": [b.to_json() for b in self.blocks]}

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        F = field_from_json(obj["field"])
        blocks = tuple(Matrix.from_json(F, b) for b in obj["blocks"])
        ambient = int(obj.get("ambient", blocks[0].rows if blocks else 0))
        return cls(F, ambient, blocks)


def rank_fn_of(rep: Representation) -> list[int]:
    return list(_rank_table(rep))


@lru_cache(maxsize=16)
def _rank_table(rep: Representation) -> tuple[int, ...]:
    # blocks with equal column spans are computed once and copied in
    keys: dict[tuple, int] = {}
    first: list[int] = []
    for j, b in enumerate(rep.blocks):
        R, piv = mat_rref(b.transpose())
        first.append(keys.setdefault(R.data[:len(piv)], j))
    uniq = [j for j in range(rep.r) if first[j] == j]
    root = Echelon(rep.field, rep.ambient)
    cols = [[root._pack(c) for c in rep.blocks[j].columns()] for j in uniq]
    u = len(uniq)
    table = [0] * (1 << u)

    def rec(i: int, mask: int, ech: Echelon) -> None:
        for j in range(i, u):
            e = ech.extend_packed(cols[j])
            m = mask | (1 << j)
            table[m] = e.dim
            rec(j + 1, m, e)

    rec(0, 0, root)
    if u == rep.r:
        return tuple(table)
    # rebuild over the full ground set; element j is either new or a copy
    pos = {j: t for t, j in enumerate(uniq)}
    bits = [1 << pos[first[j]] for j in range(rep.r)]

    def remap(bs: list[int]) -> list[int]:
        # subset mask over bs -> mask over the unique blocks
        out = [0]
        for b in bs:
            out += [um | b for um in out]
        return out

    half = rep.r // 2
    lo, hi = remap(bits[:half]), remap(bits[half:])
    full: list[int] = []
    for h in hi:
        full.extend([table[h | x] for x in lo])
    return tuple(full)


def dpm_of(rep: Representation) -> DiscretePolymatroid:
    # representable rank functions satisfy the axioms by construction
    return DiscretePolymatroid(rep.r, _rank_table(rep), validate=False)


def is_representation(rep: Representation, D: DiscretePolymatroid) -> bool:
    if rep.r != D.r:
        raise RepresentationError(f"{rep.r} blocks for a ground set of size {D.r}")
    return _rank_table(rep) == tuple(D.table)


def find_representation(D: DiscretePolymatroid, field: FieldSpec, ambient: int | None = None,
                        cap: int | None = None) -> Representation | None:
    """Depth-first search over canonical subspace tuples.

    Block i ranges over the dim-rho({i}) subspaces of field^ambient in
    canonical RREF order.  After placing a block every subset containing it
    is checked against the rank table, so failing prefixes are cut early.
    """
    ambient = D.rank_of_ground if ambient is None else ambient
    if ambient != D.rank_of_ground:
        raise RepresentationError("search is over normalized representations: ambient must equal rank(D)")
    r = D.r
    sing = D.singleton_ranks
    total = 1
    for s in sing:
        total *= gaussian_binomial(ambient, s, field.q)
    lim = resolve_cap(cap)
    if total > lim:
        raise CapExceeded(f"{total} candidate tuples exceed the cap {lim}")
    options = []
    for s in sing:
        opts = []
        for _, rows in rref_subspaces(ambient, s, field):
            opts.append([list(rw) for rw in rows])  # each rref row is one column vector
        options.append(opts)
    table = D.table
    chosen: list[list[list[int]]] = []

    # spans[m] is the echelon of blocks in subset m of the placed prefix
    def rec(i: int, spans: list[Echelon]) -> bool:
        if i == r:
            return True
        bi = 1 << i
        for cand in options[i]:
            new = []
            ok = True
            for m, e in enumerate(spans):
                e2 = e.extend(cand)
                if e2.dim != table[m | bi]:
                    ok = False
                    break
                new.append(e2)
            if not ok:
                continue
            chosen.append(cand)
            if rec(i + 1, spans + new):
                return True
            chosen.pop()
        return False

    if not rec(0, [Echelon(field, ambient)]):
        return None
    blocks = [Matrix.from_cols(field, cols, ambient) for cols in chosen]
    return Representation(field, ambient, tuple(blocks))


def _leading_selection(rep: Representation, b: Sequence[int]) -> Matrix:
    if len(b) != rep.r:
        raise RepresentationError("selection vector length mismatch")
    parts = []
    for blk, k in zip(rep.blocks, b):
        if k > blk.cols:
            raise RepresentationError("selection asks for more columns than a block has")
        if k:
            parts.append(blk.col_slice(0, k))
    return hstack(parts, rep.ambient, rep.field)


def normalize_basis_identity(rep: Representation, b: Sequence[int]) -> Representation:
    """Left-multiply by B^-1 where B is the leading b_i columns of each block."""
    B = _leading_selection(rep, b)
    if B.cols != rep.ambient:
        raise SingularMatrix(f"selection has {B.cols} columns, ambient is {rep.ambient}")
    return rep.map_blocks(mat_inverse(B))


def select_basis_subblocks(rep: Representation, b: Sequence[int]) -> Representation:
    """Column subsets of sizes b_i whose union is linearly independent.

    Blocks are filled greedily with backtracking over column combinations.
    Returns a representation whose block i holds the chosen b_i columns.
    """
    if len(b) != rep.r:
        raise RepresentationError("selection vector length mismatch")
    cols = [blk.columns() for blk in rep.blocks]
    picked: list[tuple[int, ...]] = []

    def rec(i: int, ech: Echelon) -> bool:
        if i == rep.r:
            return True
        need = b[i]
        for combo in itertools.combinations(range(len(cols[i])), need):
            e = ech.extend(cols[i][j] for j in combo)
            if e.dim != ech.dim + need:
                continue
            picked.append(combo)
            if rec(i + 1, e):
                return True
            picked.pop()
        return False

    if not rec(0, Echelon(rep.field, rep.ambient)):
        raise RepresentationError(f"no independent sub-blocks of sizes {tuple(b)}")
    blocks = tuple(blk.select_cols(list(c)) for blk, c in zip(rep.blocks, picked))
    out = Representation(rep.field, rep.ambient, blocks)
    assert rank(out.total()) == sum(b)
    return out

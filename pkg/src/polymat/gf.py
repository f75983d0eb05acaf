"""Finite fields GF(p^k) and dense matrices over them.

Elements are plain ints in [0, p^k).  The base-p digits of an element are the
coefficients of its polynomial representative, lowest degree first.  Prime
fields use modular arithmetic directly; extension fields use log/exp tables
built once per field.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP = 10**7
MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


class MatrixError(ValueError):
    pass


class SingularMatrix(MatrixError):
    pass


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured cap."""


def default_cap() -> int:
    env = os.environ.get("POLYMAT_CAP")
    return int(env) if env else DEFAULT_CAP


def resolve_cap(cap: int | None) -> int:
    return default_cap() if cap is None else cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p), coefficient tuples low-order first ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    # lexicographic on coefficients, highest degree first
    for lower in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(lower)) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(poly, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...] = dc_field(compare=True)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k}

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self!r}")
        return a

    # digits are the polynomial coefficients
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        q, p = self.q, self.p
        order = q - 1

        def mulpoly(a: int, b: int) -> int:
            da, db = self.digits(a), self.digits(b)
            prod = [0] * (2 * self.k)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            red = _poly_mod(prod, self.modulus, p)
            return self.from_digits(red + [0] * (self.k - len(red)))

        for g in range(2, q):
            exp = [1] * order
            x = 1
            ok = True
            for i in range(1, order):
                x = mulpoly(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise FieldError("no primitive element found")  # unreachable for valid fields

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.k == 1 or self.p == 2 or self.q > 256:
            return None
        q = self.q
        return [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        v, mult = 0, 1
        for _ in range(self.k):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            v += ((da + db) % p) * mult
            mult *= p
        return v

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        t = self._add_table
        return t[a][b] if t is not None else self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1 or p**k > MAX_ORDER:
        raise FieldError(f"GF({p}^{k}) is outside the supported range")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return FieldSpec(p, k, poly)
    raise FieldError("no irreducible polynomial")  # unreachable


def field_from_json(obj: dict) -> FieldSpec:
    return field_make(int(obj["p"]), int(obj.get("k", 1)))


def parse_field(text: str) -> FieldSpec:
    """Parse the "p,k" flag syntax (k defaults to 1)."""
    parts = [s for s in text.replace(" ", "").split(",") if s]
    if not 1 <= len(parts) <= 2:
        raise FieldError(f"bad field spec {text!r}")
    return field_make(int(parts[0]), int(parts[1]) if len(parts) == 2 else 1)


def field_arith(F: FieldSpec, a: int, b: int, op: str) -> int:
    F.check(a)
    if op != "inv":
        F.check(b)
    if op == "add":
        return F.add(a, b)
    if op == "sub":
        return F.sub(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "div":
        return F.div(a, b)
    if op == "inv":
        return F.inv(a)
    raise ValueError(f"unknown op {op!r}")


# -- row reduction on mutable lists -------------------------------------------

def _rref_inplace(F: FieldSpec, rows: list[list[int]], ncols: int, stop: int | None = None) -> list[int]:
    """Reduce rows to RREF in place; pivots only searched in columns < stop."""
    stop = ncols if stop is None else stop
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    p2 = F.p == 2 and F.k == 1
    for c in range(stop):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if not p2 and prow[c] != 1:
            inv = F.inv(prow[c])
            prow[:] = [F.mul(inv, x) for x in prow]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    if p2:
                        rows[i] = [x ^ y for x, y in zip(row, prow)]
                    else:
                        rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def _rank_gf2(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise MatrixError("matrix data does not match its shape")

    # construction
    @classmethod
    def from_rows(cls, F: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(F.check(int(x)) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise MatrixError("column count required for an empty matrix")
            cols = len(data[0])
        return cls(F, len(data), cols, data)

    @classmethod
    def from_cols(cls, F: FieldSpec, cols: Sequence[Sequence[int]], rows: int | None = None) -> "Matrix":
        if not cols:
            if rows is None:
                raise MatrixError("row count required for an empty matrix")
            return cls.zeros(F, rows, 0)
        return cls.from_rows(F, list(zip(*cols)), len(cols))

    @classmethod
    def zeros(cls, F: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(F, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "Matrix":
        return cls(F, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.data]}

    @classmethod
    def from_json(cls, F: FieldSpec, obj: dict) -> "Matrix":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if entries and not isinstance(entries[0], list):
            entries = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
        m = cls.from_rows(F, entries, cols)
        if m.rows != rows:
            raise MatrixError("row count does not match entries")
        return m

    # views
    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def col_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.rows, stop - start, tuple(r[start:stop] for r in self.data))

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, stop - start, self.cols, self.data[start:stop])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    # algebra
    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise MatrixError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        F = self.field
        ocols = other.columns()
        out = []
        if F.k == 1:
            p = F.p
            for r in self.data:
                out.append(tuple(sum(a * b for a, b in zip(r, c)) % p for c in ocols))
        else:
            for r in self.data:
                row = []
                for c in ocols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = F.add(acc, F.mul(a, b))
                    row.append(acc)
                out.append(tuple(row))
        return Matrix(F, self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch")
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def scale(self, c: int) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(tuple(F.mul(c, a) for a in r) for r in self.data))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.data) or f"<{self.rows}x{self.cols}>"


def hstack(blocks: Sequence[Matrix], rows: int | None = None, F: FieldSpec | None = None) -> Matrix:
    if not blocks:
        if rows is None or F is None:
            raise MatrixError("empty hstack needs rows and field")
        return Matrix.zeros(F, rows, 0)
    F = blocks[0].field
    rows = blocks[0].rows
    for b in blocks:
        if b.field != F:
            raise MatrixError("field mismatch in hstack")
        if b.rows != rows:
            raise MatrixError("row count mismatch in hstack")
    data = tuple(tuple(itertools.chain.from_iterable(b.data[i] for b in blocks)) for i in range(rows))
    return Matrix(F, rows, sum(b.cols for b in blocks), data)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    F = blocks[0].field
    cols = blocks[0].cols
    for b in blocks:
        if b.field != F or b.cols != cols:
            raise MatrixError("shape/field mismatch in vstack")
    return Matrix(F, sum(b.rows for b in blocks), cols, tuple(itertools.chain.from_iterable(b.data for b in blocks)))


def mat_rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    rows = [list(r) for r in M.data]
    piv = _rref_inplace(M.field, rows, M.cols)
    return Matrix(M.field, M.rows, M.cols, tuple(tuple(r) for r in rows)), tuple(piv)


def rank(M: Matrix) -> int:
    if M.field.p == 2 and M.field.k == 1:
        return _rank_gf2([int("".join(map(str, r)) or "0", 2) for r in M.data])
    return len(mat_rref(M)[1])


def subspace_dim(blocks: Sequence[Matrix]) -> int:
    if not blocks:
        return 0
    return rank(hstack(blocks))


def in_span(target: Matrix, generators: Matrix) -> Matrix | None:
    """Solve generators @ X = target; None when some column is out of span."""
    generators._same_field(target)
    if generators.rows != target.rows:
        raise MatrixError("row count mismatch")
    F = generators.field
    g = generators.cols
    rows = [list(a) + list(b) for a, b in zip(generators.data, target.data)]
    piv = _rref_inplace(F, rows, g + target.cols, stop=g)
    r = len(piv)
    for row in rows[r:]:
        if any(row[g:]):
            return None
    X = [[0] * target.cols for _ in range(g)]
    for i, c in enumerate(piv):
        X[c] = rows[i][g:]
    return Matrix(F, g, target.cols, tuple(tuple(x) for x in X))


def spans_equal(a: Matrix, b: Matrix) -> bool:
    ra = rank(a)
    return ra == rank(b) and ra == subspace_dim([a, b])


def mat_inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise MatrixError("inverse of a non-square matrix")
    n = M.rows
    I = Matrix.identity(M.field, n)
    rows = [list(a) + list(b) for a, b in zip(M.data, I.data)]
    piv = _rref_inplace(M.field, rows, 2 * n, stop=n)
    if len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix(M.field, n, n, tuple(tuple(r[n:]) for r in rows))


def column_basis(M: Matrix) -> Matrix:
    """Columns of M forming a basis of its column span (leftmost first)."""
    _, piv = mat_rref(M)
    return M.select_cols(piv)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref_subspaces(ambient: int, dim: int, F: FieldSpec) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
    """Yield (pivots, rref_rows) for every dim-subspace, lexicographic pivot order."""
    q = F.q
    for piv in itertools.combinations(range(ambient), dim):
        pivset = set(piv)
        free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, ambient) if c not in pivset]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * ambient for _ in range(dim)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield piv, tuple(tuple(r) for r in rows)


def enumerate_subspaces(ambient: int, dim: int, F: FieldSpec, cap: int | None = None) -> Iterator[Matrix]:
    if not 0 <= dim <= ambient:
        raise ValueError("need 0 <= dim <= ambient")
    count = gaussian_binomial(ambient, dim, F.q)
    if count > resolve_cap(cap):
        raise CapExceeded(f"{count} subspaces exceed the cap {resolve_cap(cap)}")
    for _, rows in rref_subspaces(ambient, dim, F):
        # ambient x dim generator, columns are the RREF rows
        yield Matrix(F, ambient, dim, tuple(zip(*rows)) if dim else tuple(() for _ in range(ambient)))


def lift_to_extension(M: Matrix, target: FieldSpec) -> Matrix:
    src = M.field
    if src.p != target.p or target.k % src.k:
        raise FieldError(f"cannot embed {src!r} into {target!r}")
    if src.k != 1:
        raise FieldError("only prime-field sources can be lifted")
    # constants of GF(p) keep their encoding inside GF(p^k)
    return Matrix(target, M.rows, M.cols, M.data)


class Echelon:
    """Incrementally built basis of a subspace of F^ambient.

    Vectors are column vectors given as sequences.  Over GF(2) they are
    packed into ints; otherwise a dict maps pivot position to a row scaled so
    the pivot entry is 1.  ``extend`` returns a new object, so a search can
    branch without copying by hand.
    """

    __slots__ = ("field", "ambient", "basis", "_bin")

    def __init__(self, field: FieldSpec, ambient: int, basis: dict | None = None):
        self.field = field
        self.ambient = ambient
        self.basis = {} if basis is None else basis
        self._bin = field.p == 2 and field.k == 1

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _pack(self, v: Sequence[int]):
        if self._bin:
            x = 0
            for i, a in enumerate(v):
                if a:
                    x |= 1 << i
            return x
        return list(v)

    def _reduce(self, v):
        basis = self.basis
        if self._bin:
            while v:
                h = v.bit_length() - 1
                b = basis.get(h)
                if b is None:
                    return v, h
                v ^= b
            return 0, -1
        F = self.field
        for i in range(self.ambient):
            a = v[i]
            if not a:
                continue
            b = basis.get(i)
            if b is None:
                return v, i
            v = [F.sub(x, F.mul(a, y)) for x, y in zip(v, b)]
        return None, -1

    def contains(self, v: Sequence[int]) -> bool:
        return self._reduce(self._pack(v))[1] < 0

    def contains_all(self, vs: Iterable[Sequence[int]]) -> bool:
        return all(self.contains(v) for v in vs)

    def extend(self, vs: Iterable[Sequence[int]]) -> "Echelon":
        return self.extend_packed([self._pack(v) for v in vs])

    def extend_packed(self, ws) -> "Echelon":
        """As extend, for vectors already run through _pack."""
        new = None
        for v in ws:
            w, piv = (new or self)._reduce(v)
            if piv < 0:
                continue
            if new is None:
                new = Echelon(self.field, self.ambient, dict(self.basis))
            if not self._bin:
                inv = self.field.inv(w[piv])
                w = [self.field.mul(inv, x) for x in w]
            new.basis[piv] = w
        return self if new is None else new

    def extend_matrix(self, M: "Matrix") -> "Echelon":
        return self.extend(M.columns())

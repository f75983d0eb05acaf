"""Acyclic networks, linear fractional network codes and polymatroidal maps.

Edge orientation follows the convention used throughout: ``head`` is the
node an edge leaves and ``tail`` is the node it enters.  Source edges have no
head; they carry one message each, numbered 1..m in the order they are
listed.  Out(v) is the set of intermediate edges leaving v together with the
messages v demands.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .gf import (CapExceeded, Echelon, FieldSpec, Matrix, MatrixError, column_basis,
                 field_from_json, hstack, in_span, mat_inverse,
                 rref_subspaces, resolve_cap)
from .polymatroid import DiscretePolymatroid, mask_of
from .representation import Representation, dpm_of

EdgeMap = dict[str, int]


class NetworkError(ValueError):
    pass


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    head: str | None
    tail: str


@dataclass(frozen=True)
class Report:
    ok: bool
    condition: str | None = None
    where: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "condition": self.condition, "where": self.where, "detail": self.detail}


OK = Report(True)


@dataclass(frozen=True)
class Network:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    sources: tuple[str, ...]
    demands: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise NetworkError("duplicate edge ids")
        if len(set(self.nodes)) != len(self.nodes):
            raise NetworkError("duplicate node ids")
        nodes = set(self.nodes)
        for e in self.edges:
            if e.tail not in nodes or (e.head is not None and e.head not in nodes):
                raise NetworkError(f"edge {e.id} touches an unknown node")
        heads_none = [e.id for e in self.edges if e.head is None]
        if sorted(heads_none) != sorted(self.sources):
            raise NetworkError("sources must be exactly the edges without a head node")
        m = len(self.sources)
        for v, ds in self.demands.items():
            if v not in nodes:
                raise NetworkError(f"demand at unknown node {v}")
            for j in ds:
                if not 1 <= j <= m:
                    raise NetworkError(f"node {v} demands unknown message {j}")
        object.__setattr__(self, "demands", {v: tuple(ds) for v, ds in self.demands.items() if ds})
        self._topo()  # raises on cycles

    # structure
    @property
    def m(self) -> int:
        return len(self.sources)

    def edge(self, eid: str) -> Edge:
        return self._edge_index[eid]

    @property
    def _edge_index(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def in_edges(self, v: str) -> list[str]:
        return [e.id for e in self.edges if e.tail == v]

    def out_edges(self, v: str) -> list[str]:
        return [e.id for e in self.edges if e.head == v]

    def message_of(self, eid: str) -> int:
        return self.sources.index(eid) + 1

    def intermediate(self) -> list[str]:
        return [eid for eid in self.ancestral_order() if eid not in self.sources]

    def _topo(self) -> list[str]:
        indeg = Counter()
        succ = defaultdict(list)
        for e in self.edges:
            if e.head is not None:
                indeg[e.tail] += 1
                succ[e.head].append(e.tail)
        ready = [v for v in self.nodes if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != len(self.nodes):
            raise NetworkError("network has a cycle")
        return order

    def node_order(self) -> list[str]:
        return self._topo()

    def ancestral_order(self) -> list[str]:
        """Sources first, then edges grouped by their head in topological order."""
        out = list(self.sources)
        for v in self._topo():
            out.extend(self.out_edges(v))
        return out

    # serialization
    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [{"id": e.id, "head": e.head, "tail": e.tail} for e in self.edges],
            "sources": {eid: i + 1 for i, eid in enumerate(self.sources)},
            "demands": {v: list(ds) for v, ds in self.demands.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Network":
        edges = tuple(Edge(str(e["id"]), None if e.get("head") is None else str(e["head"]), str(e["tail"]))
                      for e in obj["edges"])
        src = obj["sources"]
        if isinstance(src, dict):
            sources = tuple(str(eid) for eid, _ in sorted(src.items(), key=lambda kv: kv[1]))
            if sorted(src.values()) != list(range(1, len(src) + 1)):
                raise NetworkError("message indices must be 1..m")
        else:
            sources = tuple(str(s) for s in src)
        demands = {str(v): tuple(int(j) for j in ds) for v, ds in obj.get("demands", {}).items()}
        return cls(tuple(str(v) for v in obj["nodes"]), edges, sources, demands)

    def signature(self) -> tuple:
        """Edge-id independent description used for labelled isomorphism."""
        msg_at = {eid: self.message_of(eid) for eid in self.sources}
        arcs = Counter((e.head, e.tail, msg_at.get(e.id)) for e in self.edges)
        return (frozenset(self.nodes), frozenset(arcs.items()),
                frozenset((v, frozenset(ds)) for v, ds in self.demands.items()))


def same_network(a: Network, b: Network) -> bool:
    """Equal up to the naming of edges."""
    return a.signature() == b.signature()


# -- solutions ------------------------------------------------------------------

@dataclass(frozen=True)
class FncSolution:
    field: FieldSpec
    dims: tuple[int, ...]
    n: int
    encodings: Mapping[str, Matrix]

    @property
    def K(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.dims[:-1]))

    def selector(self, j: int) -> Matrix:
        """Columns picking out message j (1-based) from the stacked message vector."""
        off = self.offsets()[j - 1]
        k = self.dims[j - 1]
        cols = [[1 if r == off + t else 0 for r in range(self.K)] for t in range(k)]
        return Matrix.from_cols(self.field, cols, self.K)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "dims": {"k": list(self.dims), "n": self.n},
                "encodings": {eid: M.to_json() for eid, M in self.encodings.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "FncSolution":
        F = field_from_json(obj["field"])
        dims = obj["dims"]
        return cls(F, tuple(int(k) for k in dims["k"]), int(dims["n"]),
                   {str(eid): Matrix.from_json(F, M) for eid, M in obj["encodings"].items()})


def _check_shapes(N: Network, sol: FncSolution) -> None:
    if len(sol.dims) != N.m:
        raise MatrixError(f"{len(sol.dims)} message dimensions for {N.m} messages")
    for e in N.edges:
        M = sol.encodings.get(e.id)
        if M is None:
            raise MatrixError(f"no encoding for edge {e.id}")
        want = sol.dims[N.message_of(e.id) - 1] if e.id in N.sources else sol.n
        if (M.rows, M.cols) != (sol.K, want):
            raise MatrixError(f"edge {e.id}: expected {sol.K}x{want}, got {M.rows}x{M.cols}")


def _span_of(sol: FncSolution, eids: Sequence[str]) -> Matrix:
    return hstack([sol.encodings[e] for e in eids], sol.K, sol.field)


def verify_fnc_solution(N: Network, sol: FncSolution) -> Report:
    _check_shapes(N, sol)
    for j, eid in enumerate(N.sources, 1):
        if sol.encodings[eid] != sol.selector(j):
            return Report(False, "N1", eid, f"source edge does not carry message {j} verbatim")
    for eid in N.intermediate():
        v = N.edge(eid).head
        if in_span(sol.encodings[eid], _span_of(sol, N.in_edges(v))) is None:
            return Report(False, "N3", eid, f"edge is not a function of the inputs of node {v}")
    for v in N.nodes:
        for j in N.demands.get(v, ()):
            if in_span(sol.selector(j), _span_of(sol, N.in_edges(v))) is None:
                return Report(False, "N2", v, f"message {j} cannot be decoded")
    return OK


def rates(sol: FncSolution) -> tuple[tuple[Fraction, ...], Fraction, bool]:
    vec = tuple(Fraction(k, sol.n) for k in sol.dims)
    avg = sum(vec, Fraction(0)) / len(vec)
    return vec, avg, len(set(sol.dims)) <= 1


# -- polymatroidal networks -----------------------------------------------------

def _f_mask(f: Mapping[str, int], eids) -> int:
    return mask_of(f[e] for e in eids)


def _node_condition(N: Network, D: DiscretePolymatroid, f: Mapping[str, int], tag: str) -> Report:
    for v in N.nodes:
        ins = N.in_edges(v)
        outs = N.out_edges(v) + [N.sources[j - 1] for j in N.demands.get(v, ())]
        a = _f_mask(f, ins)
        b = a | _f_mask(f, outs)
        if D.rank_mask(a) != D.rank_mask(b):
            return Report(False, tag, v, f"rho(f(In)) = {D.rank_mask(a)} but rho(f(In u Out)) = {D.rank_mask(b)}")
    return OK


def _check_map(N: Network, D: DiscretePolymatroid, f: Mapping[str, int]) -> None:
    for e in N.edges:
        if e.id not in f:
            raise NetworkError(f"edge map is missing edge {e.id}")
        if not 1 <= f[e.id] <= D.r:
            raise NetworkError(f"edge {e.id} maps outside the ground set")


def is_gdpm_network(N: Network, D: DiscretePolymatroid, f: Mapping[str, int],
                    dims: Sequence[int], n: int, check_edge_dim: bool = True) -> Report:
    _check_map(N, D, f)
    if len(dims) != N.m:
        raise NetworkError(f"{len(dims)} message dimensions for {N.m} messages")
    src = [f[e] for e in N.sources]
    if len(set(src)) != len(src):
        return Report(False, "GDN1", None, "f is not one-to-one on the sources")
    v = [0] * D.r
    for i, k in zip(src, dims):
        v[i - 1] = k
    if not D.contains(v):
        return Report(False, "GDN2", None, f"{tuple(v)} is not in D")
    for eid, i, k in zip(N.sources, src, dims):
        if D.rank([i]) != k:
            return Report(False, "GDN3", eid, f"rho({{{i}}}) = {D.rank([i])}, message dimension {k}")
    if check_edge_dim:
        inter = N.intermediate()
        top = max((D.rank([f[e]]) for e in inter), default=n)
        if top != n:
            return Report(False, "GDN3", None, f"largest intermediate rank is {top}, expected {n}")
    return _node_condition(N, D, f, "GDN4")


def is_dpm_network(N: Network, D: DiscretePolymatroid, f: Mapping[str, int], k: int | None = None) -> Report:
    _check_map(N, D, f)
    k = D.rho_max if k is None else k
    src = [f[e] for e in N.sources]
    if len(set(src)) != len(src):
        return Report(False, "DN1", None, "f is not one-to-one on the sources")
    if k != D.rho_max:
        return Report(False, "DN2", None, f"k = {k} differs from rho_max(D) = {D.rho_max}")
    v = [0] * D.r
    for i in src:
        v[i - 1] = k
    if not D.contains(v):
        return Report(False, "DN2", None, f"{tuple(v)} is not in D")
    return _node_condition(N, D, f, "DN3")


# -- the two directions of the correspondence -------------------------------------

def _pad(M: Matrix, cols: int) -> Matrix:
    if M.cols > cols:
        raise MatrixError(f"block of rank {M.cols} does not fit an edge of dimension {cols}")
    if M.cols == cols:
        return M
    return hstack([M, Matrix.zeros(M.field, M.rows, cols - M.cols)])


def solution_from_representation(N: Network, rep: Representation, f: Mapping[str, int],
                                 dims: Sequence[int], n: int) -> FncSolution:
    D = dpm_of(rep)
    rep_ok = is_gdpm_network(N, D, f, dims, n)
    if not rep_ok:
        raise NetworkError(f"network is not polymatroidal for this representation: {rep_ok.condition} "
                           f"at {rep_ok.where}: {rep_ok.detail}")
    image = sorted({f[e.id] for e in N.edges})
    pos = {i: j for j, i in enumerate(image)}
    sub = Representation(rep.field, rep.ambient, tuple(rep.blocks[i - 1] for i in image)).normalized()
    src_blocks = [sub.blocks[pos[f[e]]] for e in N.sources]
    B = hstack(src_blocks, sub.ambient, rep.field)
    if B.cols != B.rows:
        raise NetworkError(f"source blocks span {B.rows} dimensions with {B.cols} columns")
    sub = sub.map_blocks(mat_inverse(B))
    enc = {}
    for e in N.edges:
        blk = sub.blocks[pos[f[e.id]]]
        enc[e.id] = blk if e.id in N.sources else _pad(blk, n)
    sol = FncSolution(rep.field, tuple(dims), n, enc)
    rpt = verify_fnc_solution(N, sol)
    assert rpt.ok, rpt
    return sol


def dpm_from_solution(N: Network, sol: FncSolution) -> tuple[Representation, EdgeMap]:
    rpt = verify_fnc_solution(N, sol)
    if not rpt.ok:
        raise NetworkError(f"invalid solution: {rpt.condition} at {rpt.where}")
    order = [e.id for e in N.edges]
    rep = Representation(sol.field, sol.K, tuple(sol.encodings[e] for e in order))
    f = {e: i + 1 for i, e in enumerate(order)}
    chk = is_gdpm_network(N, dpm_of(rep), f, sol.dims, sol.n, check_edge_dim=False)
    assert chk.ok, chk
    return rep, f


# -- construction algorithms ---------------------------------------------------------

@dataclass
class ConstructionScript:
    """Every choice the construction leaves open, in replay order."""

    step1: tuple[int, ...]
    step2: list[tuple[int, tuple[int, ...]]]
    step3: list[tuple[str | None, int, tuple[int, ...]]]
    step4: list[tuple[str | None, tuple[int, ...]]] = field(default_factory=list)
    alg: int = 1

    @classmethod
    def from_json(cls, obj: dict) -> "ConstructionScript":
        return cls(
            step1=tuple(obj["step1"]),
            step2=[(int(s["element"]), tuple(s["u"])) for s in obj.get("step2", [])],
            step3=[(None if s.get("node") is None else str(s["node"]), int(s["element"]), tuple(s["u"]))
                   for s in obj.get("step3", [])],
            step4=[(None if s.get("node") is None else str(s["node"]), tuple(s["basis"]))
                   for s in obj.get("step4", [])],
            alg=int(obj.get("alg", 1)),
        )

    def to_json(self) -> dict:
        return {
            "alg": self.alg,
            "step1": list(self.step1),
            "step2": [{"element": i, "u": list(u)} for i, u in self.step2],
            "step3": [{"node": nd, "element": i, "u": list(u)} for nd, i, u in self.step3],
            "step4": [{"node": nd, "basis": list(b)} for nd, b in self.step4],
        }


def _sup(u: Sequence[int]) -> list[int]:
    return [i + 1 for i, x in enumerate(u) if x > 0]


def _construct(D: DiscretePolymatroid, script: ConstructionScript, generalized: bool):
    r = D.r
    b = tuple(script.step1)
    if len(b) != r:
        raise ScriptError("step-1 vector has the wrong length")
    if b not in set(D.bases()):
        raise ScriptError(f"step-1 vector {b} is not a basis vector")
    if generalized:
        bad = [i for i in _sup(b) if D.rank([i]) != b[i - 1]]
        if bad:
            raise ScriptError(f"step-1 basis needs rho({{i}}) = b_i, fails at {bad}")
    elif any(x not in (0, D.rho_max) for x in b):
        raise ScriptError("step-1 basis must have every non-zero entry equal to rho_max")

    nodes: list[str] = []
    edges: list[Edge] = []
    f: EdgeMap = {}
    sources: list[str] = []
    demands: dict[str, list[int]] = {}

    def add_edge(head: str, tail: str, elem: int) -> None:
        eid = f"{head}->{tail}"
        k = 2
        while any(e.id == eid for e in edges):
            eid = f"{head}->{tail}#{k}"
            k += 1
        edges.append(Edge(eid, head, tail))
        f[eid] = elem

    M = _sup(b)
    T = set(M)
    msg = {i: j + 1 for j, i in enumerate(M)}
    for i in M:
        nodes.append(str(i))
        eid = f"e{i}"
        edges.append(Edge(eid, None, str(i)))
        f[eid] = i
        sources.append(eid)

    C = {i: set(D.reduced_unit_mev(i)) for i in range(1, r + 1)}
    for i, u in script.step2:
        if i in T:
            raise ScriptError(f"step 2: element {i} is already placed")
        if u not in C[i]:
            raise ScriptError(f"step 2: {u} is not in C_{i}")
        feed = [j for j in _sup(u) if j != i]
        if not set(feed) <= T:
            raise ScriptError(f"step 2: support of {u} minus {i} is not inside T")
        prime = f"{i}'"
        nodes += [prime, str(i)]
        for j in feed:
            add_edge(str(j), prime, j)
        add_edge(prime, str(i), i)
        T.add(i)
    for i in range(1, r + 1):
        if i not in T and any(set(_sup(u)) - {i} <= T for u in C[i]):
            raise ScriptError(f"step 2 is not exhausted: element {i} can still be added")

    counter = itertools.count(1)

    def fresh(name: str | None) -> str:
        if name is not None:
            if name in nodes:
                raise ScriptError(f"node {name} already exists")
            return name
        while True:
            cand = str(max([int(x) for x in nodes if x.isdigit()] + [0]) + next(counter))
            if cand not in nodes:
                return cand

    for name, i, u in script.step3:
        if i not in msg:
            raise ScriptError(f"step 3: element {i} carries no message")
        if u not in C[i]:
            raise ScriptError(f"step 3: {u} is not in C_{i}")
        if not set(_sup(u)) <= T:
            raise ScriptError(f"step 3: support of {u} is not inside T")
        v = fresh(name)
        nodes.append(v)
        for j in _sup(u):
            if j != i:
                add_edge(str(j), v, j)
        demands[v] = [msg[i]]
    for name, basis in script.step4:
        if basis not in set(D.bases()):
            raise ScriptError(f"step 4: {basis} is not a basis vector")
        if not set(_sup(basis)) <= T:
            raise ScriptError(f"step 4: support of {basis} is not inside T")
        v = fresh(name)
        nodes.append(v)
        for j in _sup(basis):
            add_edge(str(j), v, j)
        demands[v] = sorted(msg.values())
    net = Network(tuple(nodes), tuple(edges), tuple(sources), {v: tuple(d) for v, d in demands.items()})
    return net, f, [b[i - 1] for i in M]


def construct_network_alg1(D: DiscretePolymatroid, script: ConstructionScript) -> tuple[Network, EdgeMap]:
    net, f, _ = _construct(D, script, generalized=False)
    rpt = is_dpm_network(net, D, f, D.rho_max)
    assert rpt.ok, rpt
    return net, f


def construct_network_alg2(D: DiscretePolymatroid, script: ConstructionScript) -> tuple[Network, EdgeMap]:
    net, f, ks = _construct(D, script, generalized=True)
    rpt = is_gdpm_network(net, D, f, ks, D.rho_max)
    assert rpt.ok, rpt
    return net, f


# -- exhaustive search ------------------------------------------------------------------

def search_fnc_solution(N: Network, field: FieldSpec, dims: Sequence[int], n: int,
                        cap: int | None = None) -> FncSolution | None:
    """First linear (dims; n) solution in canonical order, or None.

    Only the column span of an edge matters downstream, and a larger span
    never hurts, so each intermediate edge carries a subspace of dimension
    min(n, dim S) of the span S of its head's inputs.  Candidates follow the
    canonical RREF order in coordinates of a fixed basis of S.  A node's
    demands are checked as soon as all its inputs are assigned.
    """
    dims = tuple(dims)
    if len(dims) != N.m:
        raise NetworkError(f"{len(dims)} message dimensions for {N.m} messages")
    K = sum(dims)
    lim = resolve_cap(cap)
    proto = FncSolution(field, dims, n, {})
    enc: dict[str, Matrix] = {eid: proto.selector(j) for j, eid in enumerate(N.sources, 1)}
    sel_cols = {j: proto.selector(j).columns() for j in range(1, N.m + 1)}
    order = N.intermediate()
    ins = {v: N.in_edges(v) for v in N.nodes}
    # nodes become checkable once the last of their inputs is assigned
    last_in: dict[str, list[str]] = defaultdict(list)
    pos = {eid: i for i, eid in enumerate(order)}
    for v in N.nodes:
        if N.demands.get(v):
            inter = [e for e in ins[v] if e in pos]
            key = max(inter, key=pos.__getitem__) if inter else None
            last_in[key].append(v)

    def demands_ok(v: str) -> bool:
        ech = Echelon(field, K)
        for e in ins[v]:
            ech = ech.extend_matrix(enc[e])
        return all(ech.contains_all(sel_cols[j]) for j in N.demands[v])

    if not all(demands_ok(v) for v in last_in.get(None, [])):
        return None
    visited = 0

    def rec(idx: int) -> bool:
        nonlocal visited
        if idx == len(order):
            return True
        eid = order[idx]
        v = N.edge(eid).head
        S = column_basis(hstack([enc[e] for e in ins[v]], K, field))
        s = S.cols
        d = min(n, s)
        for _, rows in rref_subspaces(s, d, field):
            visited += 1
            if visited > lim:
                raise CapExceeded(f"search visited more than {lim} candidate matrices")
            coords = Matrix(field, s, d, tuple(zip(*rows)) if d else tuple(() for _ in range(s)))
            enc[eid] = _pad(S @ coords, n)
            if all(demands_ok(w) for w in last_in.get(eid, [])) and rec(idx + 1):
                return True
        del enc[eid]
        return False

    if not rec(0):
        return None
    sol = FncSolution(field, dims, n, {e.id: enc[e.id] for e in N.edges})
    rpt = verify_fnc_solution(N, sol)
    assert rpt.ok, rpt
    return sol

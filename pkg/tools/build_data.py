"""Regenerate src/polymat/data from the hand-transcribed tables below.

Rank tables and networks are written out literally; nothing here calls the
construction algorithms, so the bundled copies are independent oracles.
Solution files place a block on every edge by the rule "an edge carries the
block of the element it maps to".
"""
from __future__ import annotations

import itertools
import json
import pathlib

from polymat.polymatroid import DiscretePolymatroid
from polymat.representation import Representation

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "polymat" / "data"
manifest: list[dict] = []


def dump(name: str, kind: str, obj: dict, about: str, **refs) -> None:
    (OUT / f"{name}.json").write_text(json.dumps(obj, indent=1) + "\n")
    manifest.append({"name": name, "kind": kind, "file": f"{name}.json", "about": about, **refs})


def table(r: int, ranks: dict, default: int | None = None) -> dict:
    vals = []
    for m in range(1 << r):
        key = frozenset(i + 1 for i in range(r) if m >> i & 1)
        if not key:
            vals.append(0)
        elif key in ranks:
            vals.append(ranks[key])
        else:
            assert default is not None, key
            vals.append(default)
    DiscretePolymatroid(r, vals)  # validates
    return {"r": r, "rank": vals}


def S(*xs):
    return frozenset(xs)


def mat(rows):
    return {"rows": len(rows), "cols": len(rows[0]) if rows else 0, "entries": rows}


def cols(*cs, dim):
    rows = [[c[i] for c in cs] for i in range(dim)]
    return {"rows": dim, "cols": len(cs), "entries": rows}


def e(i, dim):
    return [1 if j == i - 1 else 0 for j in range(dim)]


def rep(p, k, blocks):
    return {"field": {"p": p, "k": k}, "ambient": blocks[0]["rows"], "blocks": blocks}


# -- rank tables -----------------------------------------------------------------

dump("ex5", "polymatroid", table(2, {S(1): 3, S(2): 5, S(1, 2): 5}), "two-element rank table")
dump("ex6", "polymatroid", table(3, {S(1): 1, S(2): 2, S(3): 2, S(1, 3): 2, S(1, 2): 3,
                                     S(2, 3): 4, S(1, 2, 3): 4}), "three-element rank table")
dump("ex7", "polymatroid", table(3, {S(1): 2, S(2): 2, S(2, 3): 2, S(3): 1, S(1, 2): 3,
                                     S(1, 3): 3, S(1, 2, 3): 3}), "rank 3, bases (1,1,1),(1,2,0),(2,0,1),(2,1,0)")
ex9 = {S(1): 1, S(2): 1, S(3): 1, S(1, 2): 2, S(1, 3): 2, S(1, 4): 2, S(2, 3): 2, S(4): 2}
dump("ex9", "polymatroid", table(4, ex9, default=3), "four-element table, rho_max 2")
ex10 = {S(2): 1, S(3): 1, S(1): 2, S(4): 2, S(5): 2, S(2, 3): 2, S(3, 5): 2,
        S(1, 2): 3, S(1, 3): 3, S(2, 4): 3, S(2, 5): 3, S(3, 4): 3, S(2, 3, 5): 3}
dump("ex10", "polymatroid", table(5, ex10, default=4), "five-element table, rank 4")
ing = {S(i): 2 for i in range(1, 5)}
ing.update({S(1, 2): 3, S(1, 3): 3, S(1, 4): 3, S(2, 3): 3, S(2, 4): 3})
dump("ingleton", "polymatroid", table(4, ing, default=4), "violates the Ingleton inequality")
dump("u24", "polymatroid", {"r": 4, "rank": [min(bin(m).count("1"), 2) for m in range(16)]},
     "uniform matroid U(2,4)")
dump("u24x2", "polymatroid", {"r": 4, "rank": [2 * min(bin(m).count("1"), 2) for m in range(16)]},
     "U(2,4) with every rank doubled")
lines = [S(1, 2, 3), S(1, 5, 7), S(1, 6, 8), S(2, 4, 7), S(2, 6, 9), S(3, 4, 8), S(3, 5, 9), S(4, 5, 6)]
np2 = [0 if m == 0 else 2 * (2 if frozenset(i + 1 for i in range(9) if m >> i & 1) in lines
                             else min(bin(m).count("1"), 3)) for m in range(1 << 9)]
dump("nonpappus_x2", "polymatroid", {"r": 9, "rank": np2}, "non-Pappus matroid with every rank doubled")

# -- representations --------------------------------------------------------------

dump("ex2_rep", "representation",
     rep(3, 1, [cols([1, 0], dim=2), cols([0, 1], dim=2), cols([1, 1], dim=2), cols([1, 2], dim=2)]),
     "U(2,4) over GF(3)", polymatroid="u24")
dump("ex3_rep", "representation",
     rep(2, 1, [mat([[1, 0], [0, 1], [0, 0], [0, 0]]), mat([[0, 0], [0, 0], [1, 0], [0, 1]]),
                mat([[1, 0], [0, 1], [0, 1], [1, 0]]), mat([[1, 0], [0, 1], [1, 0], [1, 1]])]),
     "dimension-2 representation of U(2,4) over GF(2)", polymatroid="u24x2")
ex4 = [
    [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0], [0, 0]],
    [[1, 0], [0, 1], [0, 0], [0, 0], [1, 0], [0, 1]],
    [[0, 0], [0, 0], [0, 0], [0, 0], [1, 0], [0, 1]],
    [[1, 0], [0, 1], [1, 0], [0, 2], [0, 1], [2, 1]],
    [[0, 0], [0, 0], [1, 0], [0, 1], [0, 0], [0, 0]],
    [[1, 0], [0, 1], [2, 1], [2, 0], [0, 1], [2, 1]],
    [[1, 0], [0, 1], [0, 1], [1, 2], [0, 0], [0, 0]],
    [[1, 0], [0, 1], [1, 0], [0, 2], [1, 1], [1, 0]],
    [[0, 0], [0, 0], [1, 0], [0, 1], [1, 0], [0, 1]],
]
dump("ex4_rep", "representation", rep(3, 1, [mat(b) for b in ex4]),
     "dimension-2 representation of the non-Pappus matroid over GF(3)", polymatroid="nonpappus_x2")
dump("ex8_rep", "representation",
     rep(2, 1, [mat([[1, 0], [0, 1], [0, 0]]), mat([[0, 1], [0, 1], [1, 1]]), mat([[0], [0], [1]])]),
     "representation of ex7 over GF(2)", polymatroid="ex7")
dump("ex9_rep", "representation",
     rep(2, 1, [mat([[1], [0], [0]]), mat([[0], [1], [0]]), mat([[0], [0], [1]]),
                mat([[1, 0], [0, 1], [0, 1]])]),
     "representation of ex9 over GF(2)", polymatroid="ex9")
dump("ex10_rep", "representation",
     rep(2, 1, [mat([[1, 0], [0, 1], [0, 0], [0, 0]]), mat([[0], [0], [1], [0]]), mat([[0], [0], [0], [1]]),
                mat([[1, 1], [1, 0], [1, 1], [1, 0]]), mat([[0, 0], [0, 1], [0, 1], [1, 0]])]),
     "representation of ex10 over GF(2)", polymatroid="ex10")
pairs1 = [(1, 2), (3, 4), (5, 6), (7, 8), (1, 4), (2, 3), (5, 8), (6, 7), (2, 5), (2, 8), (3, 5), (3, 8)]
eq1 = [cols(e(a, 8), e(b, 8), dim=8) for a, b in pairs1]
dump("eq1_rep", "representation", rep(2, 1, eq1), "M-network blocks, solution 1")
eq2 = eq1 + [cols(e(a, 8), [0] * 8, dim=8) for a in (1, 1, 4, 4, 6, 7, 6, 7)]
dump("eq2_rep", "representation", rep(2, 1, eq2), "M-network blocks, solution 2")

# -- construction scripts ------------------------------------------------------------


def step3(*items):
    return [{"node": str(n), "element": i, "u": list(u)} for n, i, u in items]


dump("table1", "script", {
    "alg": 1, "polymatroid": "u24x2", "step1": [2, 2, 0, 0],
    "step2": [{"element": 3, "u": [2, 2, 1, 0]}, {"element": 4, "u": [2, 2, 0, 1]}],
    "step3": step3((5, 2, (2, 1, 2, 0)), (6, 1, (1, 2, 2, 0)), (7, 2, (2, 1, 0, 2)),
                   (8, 1, (1, 2, 0, 2)), (9, 1, (1, 0, 2, 2)), (10, 2, (0, 1, 2, 2))),
    "step4": []}, "construction choices for the U(2,4) doubled network", polymatroid="u24x2")


def v12(**kw):
    out = [0] * 12
    for k, val in kw.items():
        out[int(k[1:]) - 1] = val
    return out


t2_step3 = [(13, 1, (5, 9)), (14, 1, (5, 10)), (15, 2, (5, 11)), (16, 2, (5, 12)),
            (17, 3, (8, 9)), (18, 3, (8, 11)), (19, 4, (8, 10)), (20, 4, (8, 12))]


def table2():
    from polymat.representation import dpm_of
    D = dpm_of(Representation.from_json(rep(2, 1, eq1)))
    s3 = []
    for node, i, (a, b) in t2_step3:
        want = {i, a, b}
        us = [u for u in D.reduced_unit_mev(i) if {j + 1 for j, x in enumerate(u) if x} == want]
        assert len(us) == 1, (i, want, us)
        s3.append({"node": str(node), "element": i, "u": list(us[0])})
    return {
        "alg": 1, "polymatroid": "eq1_rep", "step1": v12(e1=2, e2=2, e3=2, e4=2),
        "step2": [{"element": 5, "u": v12(e1=2, e2=2, e5=1)}, {"element": 6, "u": v12(e1=2, e2=2, e6=1)},
                  {"element": 7, "u": v12(e3=2, e4=2, e7=1)}, {"element": 8, "u": v12(e3=2, e4=2, e8=1)}]
                 + [{"element": i, "u": v12(e6=2, e7=2, **{f"e{i}": 1})} for i in (9, 10, 11, 12)],
        "step3": s3, "step4": []}


dump("table2", "script", table2(), "construction choices for the twelve-element network", polymatroid="eq1_rep")
dump("table3", "script", {
    "alg": 2, "polymatroid": "ex9", "step1": [1, 1, 1, 0],
    "step2": [{"element": 4, "u": [1, 1, 1, 1]}],
    "step3": step3((5, 1, (1, 0, 0, 2)), (6, 2, (0, 1, 1, 2)), (7, 3, (0, 1, 1, 2))),
    "step4": []}, "generalized construction from ex9 with b = (1,1,1,0)", polymatroid="ex9")
dump("table4", "script", {
    "alg": 2, "polymatroid": "ex10", "step1": [2, 1, 1, 0, 0],
    "step2": [{"element": 4, "u": [2, 1, 1, 1, 0]}, {"element": 5, "u": [2, 1, 1, 0, 1]}],
    "step3": step3((6, 2, (2, 1, 0, 2, 0)), (7, 3, (2, 0, 1, 2, 0)), (8, 2, (2, 1, 0, 0, 2)),
                   (9, 1, (1, 0, 0, 2, 2)), (10, 2, (0, 1, 0, 2, 2)), (11, 1, (1, 1, 1, 2, 0)),
                   (12, 3, (0, 0, 1, 0, 2))),
    "step4": []}, "generalized construction from ex10 with b = (2,1,1,0,0)", polymatroid="ex10")

# -- networks ---------------------------------------------------------------------------


def network(sources, arcs, demands):
    """sources: tail node per message; arcs: (head, tail) pairs."""
    nodes: list[str] = []
    for v in list(sources) + [x for a in arcs for x in a] + list(demands):
        if str(v) not in nodes:
            nodes.append(str(v))
    edges = [{"id": f"e{v}", "head": None, "tail": str(v)} for v in sources]
    edges += [{"id": f"{h}->{t}", "head": str(h), "tail": str(t)} for h, t in arcs]
    return {"nodes": nodes, "edges": edges,
            "sources": {f"e{v}": i + 1 for i, v in enumerate(sources)},
            "demands": {str(v): ds for v, ds in demands.items()}}


fig6 = network([1, 2],
               [(1, "3'"), (2, "3'"), ("3'", 3), (1, "4'"), (2, "4'"), ("4'", 4),
                (1, 5), (3, 5), (2, 6), (3, 6), (1, 7), (4, 7), (2, 8), (4, 8),
                (3, 9), (4, 9), (3, 10), (4, 10)],
               {5: [2], 6: [1], 7: [2], 8: [1], 9: [1], 10: [2]})
dump("fig6", "network", fig6, "network built from U(2,4) doubled")
fig7_arcs = []
for i, feed in [(5, (1, 2)), (6, (1, 2)), (7, (3, 4)), (8, (3, 4)),
                (9, (6, 7)), (10, (6, 7)), (11, (6, 7)), (12, (6, 7))]:
    fig7_arcs += [(j, f"{i}'") for j in feed] + [(f"{i}'", i)]
for node, _, feed in t2_step3:
    fig7_arcs += [(j, node) for j in feed]
fig7 = network([1, 2, 3, 4], fig7_arcs, {n: [i] for n, i, _ in t2_step3})
dump("fig7", "network", fig7, "network built from the twelve-element polymatroid")
fig8 = network([1, 2, 3], [(1, "4'"), (2, "4'"), (3, "4'"), ("4'", 4), (4, 5), (3, 6), (4, 6), (2, 7), (4, 7)],
               {5: [1], 6: [2], 7: [3]})
dump("fig8", "network", fig8, "(1,1,1;2) network built from ex9")
fig9 = network([1, 2, 3],
               [(1, "4'"), (2, "4'"), (3, "4'"), ("4'", 4), (1, "5'"), (2, "5'"), (3, "5'"), ("5'", 5),
                (1, 6), (4, 6), (1, 7), (4, 7), (1, 8), (5, 8), (4, 9), (5, 9), (4, 10), (5, 10),
                (2, 11), (3, 11), (4, 11), (5, 12)],
               {6: [2], 7: [3], 8: [2], 9: [1], 10: [2], 11: [1], 12: [3]})
dump("fig9", "network", fig9, "(2,1,1;2) network built from ex10")

# M-network: edges keep their numeric names
m_edges = [{"id": str(i), "head": None, "tail": "u1" if i <= 2 else "u2"} for i in (1, 2, 3, 4)]
m_edges += [{"id": "5", "head": "u1", "tail": "r1"}, {"id": "6", "head": "u1", "tail": "w"},
            {"id": "7", "head": "u2", "tail": "w"}, {"id": "8", "head": "u2", "tail": "r2"}]
m_edges += [{"id": str(8 + t), "head": "w", "tail": f"t{t}"} for t in range(1, 5)]
m_edges += [{"id": str(12 + t), "head": "r1", "tail": f"t{t}"} for t in range(1, 5)]
m_edges += [{"id": str(16 + t), "head": "r2", "tail": f"t{t}"} for t in range(1, 5)]
fig5 = {"nodes": ["u1", "u2", "r1", "w", "r2", "t1", "t2", "t3", "t4"], "edges": m_edges,
        "sources": {"1": 1, "2": 2, "3": 3, "4": 4},
        "demands": {"t1": [1, 3], "t2": [1, 4], "t3": [2, 3], "t4": [2, 4]}}
dump("fig5", "network", fig5, "M-network")

# -- solutions ---------------------------------------------------------------------------


def solution(net, blocks, fmap, dims, n, p=2):
    K = sum(dims)
    enc = {}
    for ed in net["edges"]:
        b = blocks[fmap(ed) - 1]
        width = dims[net["sources"][ed["id"]] - 1] if ed["head"] is None else n
        ents = [list(r) + [0] * (width - len(r)) for r in b["entries"]]
        enc[ed["id"]] = {"rows": K, "cols": width, "entries": ents}
    return {"field": {"p": p, "k": 1}, "dims": {"k": dims, "n": n}, "encodings": enc}


def by_head(ed):
    # in-edges of i' carry their origin, every other edge its origin's block
    node = ed["tail"] if ed["head"] is None else ed["head"]
    return int(node.rstrip("'"))


m_map = {**{str(i): i for i in range(1, 13)}, **{str(i): 5 for i in range(13, 17)},
         **{str(i): 8 for i in range(17, 21)}}
dump("fig5_sol1", "solution", solution(fig5, eq1, lambda ed: m_map[ed["id"]], [2, 2, 2, 2], 2),
     "vector routing solution 1", network="fig5")
dump("fig5_sol2", "solution", solution(fig5, eq2, lambda ed: int(ed["id"]), [2, 2, 2, 2], 2),
     "vector routing solution 2", network="fig5")
ex3 = json.loads((OUT / "ex3_rep.json").read_text())["blocks"]
dump("fig6_sol", "solution", solution(fig6, ex3, by_head, [2, 2], 2), "(2,2;2) solution over GF(2)",
     network="fig6")
ex9b = json.loads((OUT / "ex9_rep.json").read_text())["blocks"]
dump("fig8_sol", "solution", solution(fig8, ex9b, by_head, [1, 1, 1], 2), "(1,1,1;2) solution over GF(2)",
     network="fig8")
ex10b = json.loads((OUT / "ex10_rep.json").read_text())["blocks"]
dump("fig9_sol", "solution", solution(fig9, ex10b, by_head, [2, 1, 1], 2), "(2,1,1;2) solution over GF(2)",
     network="fig9")

# -- index coding -------------------------------------------------------------------------

X = ["x1", "x2", "x3"]
Y = ["y_1_1", "y_1_2", "y_2_1", "y_2_2", "y_3_1"]
zeta = {1: ["y_1_1", "y_1_2"], 2: ["y_2_1", "y_2_2"], 3: ["y_3_1"]}
recs = []


def add(d, side):
    r = {"demand": d, "side": sorted(side)}
    if r not in recs:
        recs.append(r)


# receivers transcribed set by set
for b in [(1, 1, 1), (1, 2, 0), (2, 0, 1), (2, 1, 0)]:
    for etas in itertools.product(*(itertools.combinations(zeta[l], b[l - 1]) for l in (1, 2, 3) if b[l - 1])):
        for x in X:
            add(x, [y for eta in etas for y in eta])
s2 = [
    ("y_2_1", ["y_2_2", "y_3_1"]), ("y_2_2", ["y_2_1", "y_3_1"]), ("y_3_1", ["y_2_1", "y_2_2"]),
    *[("y_1_1", ["y_1_2", f"y_2_{i}", "y_3_1"]) for i in (1, 2)],
    *[("y_1_2", ["y_1_1", f"y_2_{i}", "y_3_1"]) for i in (1, 2)],
    ("y_2_1", ["y_1_1", "y_1_2", "y_3_1"]), ("y_2_2", ["y_1_1", "y_1_2", "y_3_1"]),
    *[("y_3_1", ["y_1_1", "y_1_2", f"y_2_{i}"]) for i in (1, 2)],
    ("y_1_1", ["y_1_2", "y_2_1", "y_2_2"]), ("y_1_2", ["y_1_1", "y_2_1", "y_2_2"]),
    ("y_2_1", ["y_1_1", "y_1_2", "y_2_2"]), ("y_2_2", ["y_1_1", "y_1_2", "y_2_1"]),
]
for d, side in s2:
    add(d, side)
for y in Y:
    add(y, X)
dump("ex31", "problem", {"messages": X + Y, "n": 1, "receivers": recs},
     "index coding problem built from ex7", polymatroid="ex7")
A = [[1, 0, 1, 1, 0], [0, 1, 1, 1, 0], [0, 0, 3, 1, 1]]
enc = A + [[1 if i == j else 0 for j in range(5)] for i in range(5)]
dump("ex31_gf4_code", "code", {"field": {"p": 2, "k": 2}, "n": 1, "c": 5, "messages": X + Y,
                               "encoding": {"rows": 8, "cols": 5, "entries": enc}},
     "scalar perfect code over GF(4); 3 stands for 1 + alpha", problem="ex31")
dump("sec3b_problem", "problem", {
    "messages": ["x1", "x2", "x3", "x4"], "n": 1,
    "receivers": [{"demand": "x3", "side": ["x1", "x2"]}, {"demand": "x4", "side": ["x1", "x2"]},
                  {"demand": "x1", "side": ["x2", "x3", "x4"]}, {"demand": "x2", "side": ["x1", "x3", "x4"]}]},
    "four-message problem with a length-2 perfect code")
dump("sec3b_code", "code", {"field": {"p": 2, "k": 1}, "n": 1, "c": 2, "messages": ["x1", "x2", "x3", "x4"],
                            "encoding": {"rows": 4, "cols": 2, "entries": [[1, 0], [1, 0], [1, 1], [0, 1]]}},
     "x1+x2+x3 and x3+x4", problem="sec3b_problem")
dump("sec6a_problem", "problem", {
    "messages": ["x1", "x2", "x3", "x4"], "n": 1,
    "receivers": [{"demand": "x4", "side": ["x1"]}, {"demand": "x3", "side": ["x2", "x4"]},
                  {"demand": "x1", "side": ["x2", "x3"]}, {"demand": "x2", "side": ["x1", "x3"]}]},
    "four-message problem for the five-block certificate")
dump("sec6a_rep", "representation",
     rep(2, 1, [cols(e(i, 4), dim=4) for i in range(1, 5)] + [mat([[1, 1], [1, 0], [1, 0], [0, 1]])]),
     "unit blocks plus the code block", problem="sec6a_problem")

(OUT / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
print(f"{len(manifest)} entries written to {OUT}")

"""Command-line entry point.

Inputs are JSON files; a name prefixed with ``@`` (``@ex7``) reads the
bundled copy instead.  Exit status: 0 success, 1 a check failed or a search
found nothing, 2 usage or input error, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import examples
from .gf import CapExceeded, FieldSpec, parse_field
from .index import (IndexCode, IndexProblem, RetriesExhausted, code_from_thm5_rep,
                    construct_problem, is_perfect, m_of, n_bound, rep_from_perfect_code,
                    search_perfect_code, thm5_check, thm7_construct, verify_index_code)
from .network import (ConstructionScript, FncSolution, Network, construct_network_alg1,
                      construct_network_alg2, rates, search_fnc_solution, solution_from_representation,
                      verify_fnc_solution)
from .polymatroid import DiscretePolymatroid, InvalidRankFunction, ingleton_check, rank_validate
from .representation import Representation, dpm_of, find_representation, is_representation


class UsageError(Exception):
    pass


def _read(ref: str) -> dict:
    if ref.startswith("@"):
        try:
            return examples.load_json(ref[1:])
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    p = Path(ref)
    if not p.is_file():
        raise UsageError(f"no such file: {ref}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: not valid JSON ({exc})") from None


def _dpm(ref: str, validate: bool = True) -> DiscretePolymatroid:
    obj = _read(ref)
    if "blocks" in obj:
        return dpm_of(Representation.from_json(obj))
    if "rank" not in obj:
        raise UsageError(f"{ref}: expected a rank table or a representation")
    return DiscretePolymatroid(int(obj["r"]), [int(x) for x in obj["rank"]], validate=validate)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _field(text: str) -> FieldSpec:
    try:
        return parse_field(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _frac(x: Fraction) -> str:
    return str(x)


# -- subcommands; each returns (payload, exit code) ---------------------------------

def cmd_validate(a):
    obj = _read(a.table)
    v = rank_validate(int(obj["r"]), [int(x) for x in obj["rank"]])
    if v is None:
        return {"ok": True}, 0
    return {"ok": False, "violation": v.to_json()}, 1


def cmd_bases(a):
    D = _dpm(a.table)
    return {"rank": D.rank_of_ground, "bases": [list(b) for b in D.bases(a.cap)]}, 0


def cmd_mev(a):
    D = _dpm(a.table)
    if a.unit is not None:
        vs = D.reduced_unit_mev(a.unit, a.cap) if a.reduced else D.unit_mev(a.unit, a.cap)
    elif a.reduced:
        raise UsageError("--reduced needs --unit")
    else:
        vs = D.minimal_excluded(a.cap)
    return {"vectors": [list(v) for v in vs]}, 0


def cmd_scale(a):
    return _dpm(a.table).scale(a.n).to_json(), 0


def cmd_ingleton(a):
    D = _dpm(a.table)
    bad = ingleton_check(D, full=a.full)
    if bad is None:
        return {"ok": True}, 0
    return {"ok": False, "violation": bad.to_json()}, 1


def cmd_rep_check(a):
    rep = Representation.from_json(_read(a.rep))
    ok = is_representation(rep, _dpm(a.table))
    return {"ok": ok}, 0 if ok else 1


def cmd_rep_search(a):
    rep = find_representation(_dpm(a.table), _field(a.field), a.ambient, a.cap)
    if rep is None:
        return {"found": False}, 1
    return {"found": True, "representation": rep.to_json()}, 0


def cmd_net_construct(a):
    D = _dpm(a.table)
    script = ConstructionScript.from_json(_read(a.script))
    alg = a.alg or script.alg
    build = construct_network_alg1 if alg == 1 else construct_network_alg2
    net, f = build(D, script)
    return {"network": net.to_json(), "map": f}, 0


def cmd_net_verify(a):
    rpt = verify_fnc_solution(Network.from_json(_read(a.network)), FncSolution.from_json(_read(a.solution)))
    return rpt.to_json(), 0 if rpt.ok else 1


def cmd_net_search(a):
    sol = search_fnc_solution(Network.from_json(_read(a.network)), _field(a.field), _ints(a.k), a.n, a.cap)
    if sol is None:
        return {"found": False}, 1
    return {"found": True, "solution": sol.to_json()}, 0


def cmd_net_from_rep(a):
    net = Network.from_json(_read(a.network))
    rep = Representation.from_json(_read(a.rep))
    f = {str(k): int(v) for k, v in _read(a.map).items()}
    sol = solution_from_representation(net, rep, f, _ints(a.k), a.n)
    return sol.to_json(), 0


def cmd_rates(a):
    vec, avg, uni = rates(FncSolution.from_json(_read(a.solution)))
    return {"rates": [_frac(x) for x in vec], "average": _frac(avg), "uniform": uni}, 0


def cmd_idx_construct(a):
    P = construct_problem(_dpm(a.table), a.cap)
    return P.to_json(), 0


def cmd_idx_verify(a):
    P = IndexProblem.from_json(_read(a.problem))
    code = IndexCode.from_json(_read(a.code))
    bad = verify_index_code(P, code)
    if bad is not None:
        return bad.to_json(), 1
    return {"ok": True, "perfect": is_perfect(P, code), "M": m_of(P)}, 0


def cmd_idx_search(a):
    P = IndexProblem.from_json(_read(a.problem))
    code = search_perfect_code(P, _field(a.field), a.n, a.method, a.cap)
    if code is None:
        return {"found": False}, 1
    return {"found": True, "code": code.to_json()}, 0


def cmd_idx_nbound(a):
    return {"N": n_bound(_dpm(a.table))}, 0


def cmd_idx_from_rep(a):
    rep = rep_from_perfect_code(_dpm(a.table), IndexCode.from_json(_read(a.code)))
    return rep.to_json(), 0


def cmd_idx_thm7(a):
    D = _dpm(a.table)
    rep = Representation.from_json(_read(a.rep))
    code, tries = thm7_construct(D, rep, a.n, _field(a.field), a.seed, a.retries, a.cap)
    return {"attempts": tries, "code": code.to_json()}, 0


def cmd_thm5_check(a):
    P = IndexProblem.from_json(_read(a.problem))
    rep = Representation.from_json(_read(a.rep))
    bad = thm5_check(P, rep, a.n, a.c)
    if bad is not None:
        return bad.to_json(), 1
    out = {"ok": True}
    if a.emit_code:
        out["code"] = code_from_thm5_rep(P, rep, a.n, a.c).to_json()
    return out, 0


def cmd_examples(a):
    if a.name:
        return examples.load_json(a.name), 0
    return {"examples": list(examples.bundled_examples())}, 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polymat", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="command")

    def add(name, fn, help_, *args):
        p = sub.add_parser(name, help=help_)
        for a in args:
            p.add_argument(a)
        p.add_argument("--cap", type=int, default=None, help="enumeration cap (default $POLYMAT_CAP or 10^7)")
        p.add_argument("--out", help=argparse.SUPPRESS, default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check the rank axioms", "table")
    add("bases", cmd_bases, "list basis vectors", "table")
    p = add("mev", cmd_mev, "minimal excluded vectors", "table")
    p.add_argument("--unit", type=int)
    p.add_argument("--reduced", action="store_true")
    p = add("scale", cmd_scale, "multiply every rank by n", "table")
    p.add_argument("--n", type=int, required=True)
    p = add("ingleton", cmd_ingleton, "look for Ingleton violations", "table")
    p.add_argument("--full", action="store_true", help="also try set quadruples, not just singletons")
    add("rep-check", cmd_rep_check, "does a set of blocks represent a table", "rep", "table")
    p = add("rep-search", cmd_rep_search, "search for a representation", "table")
    p.add_argument("--field", required=True)
    p.add_argument("--ambient", type=int)
    p = add("net-construct", cmd_net_construct, "build a network from a polymatroid", "table")
    p.add_argument("--alg", type=int, choices=(1, 2))
    p.add_argument("--script", required=True)
    add("net-verify", cmd_net_verify, "verify a network code", "network", "solution")
    p = add("net-search", cmd_net_search, "exhaustive linear code search", "network")
    p.add_argument("--field", required=True)
    p.add_argument("--k", required=True, help="message dimensions, comma separated")
    p.add_argument("--n", type=int, required=True)
    p = add("net-from-rep", cmd_net_from_rep, "network code from a representation", "network", "rep")
    p.add_argument("--map", required=True, help="JSON object edge -> element")
    p.add_argument("--k", required=True)
    p.add_argument("--n", type=int, required=True)
    add("rates", cmd_rates, "rate vector of a network code", "solution")
    add("idx-construct", cmd_idx_construct, "index coding problem from a polymatroid", "table")
    add("idx-verify", cmd_idx_verify, "verify an index code", "problem", "code")
    p = add("idx-search", cmd_idx_search, "search for a perfect linear index code", "problem")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--method", choices=("pruned", "exhaustive"), default="pruned")
    add("idx-nbound", cmd_idx_nbound, "field-size threshold N(D)", "table")
    add("idx-from-rep", cmd_idx_from_rep, "representation read off a perfect code", "table", "code")
    p = add("idx-thm7", cmd_idx_thm7, "perfect code from a representation", "table", "rep")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int)
    p = add("thm5-check", cmd_thm5_check, "check the code certificate conditions", "problem", "rep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--emit-code", action="store_true")
    p = add("examples", cmd_examples, "list or print bundled examples")
    p.add_argument("name", nargs="?")
    return ap


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = a.fn(a)
    except CapExceeded as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 3
    except (InvalidRankFunction, RetriesExhausted) as exc:
        # the input parsed but the mathematics said no
        print(f"polymat: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, KeyError) as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(payload, indent=1)
    if a.out:
        Path(a.out).write_text(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

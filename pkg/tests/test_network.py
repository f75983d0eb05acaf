from fractions import Fraction

import pytest

from polymat import examples
from polymat.gf import CapExceeded, Matrix, field_make
from polymat.network import (ConstructionScript, Edge, FncSolution, Network, NetworkError, ScriptError,
                             construct_network_alg1, construct_network_alg2, dpm_from_solution,
                             is_dpm_network, is_gdpm_network, rates, same_network, search_fnc_solution,
                             solution_from_representation, verify_fnc_solution)
from polymat.polymatroid import free_polymatroid
from polymat.representation import dpm_of, is_representation

GF2, GF3 = field_make(2), field_make(3)

# edge i carries A_i for i <= 12; the two bundles of four copy A_5 and A_8
F1 = {**{str(i): i for i in range(1, 13)}, **{str(i): 5 for i in range(13, 17)},
      **{str(i): 8 for i in range(17, 21)}}


def direct_network():
    return Network(("s", "t"), (Edge("e1", None, "s"), Edge("st", "s", "t")), ("e1",), {"t": (1,)})


def test_network_validation():
    with pytest.raises(NetworkError):
        Network(("a",), (Edge("e1", None, "a"), Edge("x", "a", "b")), ("e1",), {})
    with pytest.raises(NetworkError):
        Network(("a", "b"), (Edge("e1", None, "a"), Edge("x", "a", "b"), Edge("y", "b", "a")), ("e1",), {})
    N = direct_network()
    assert Network.from_json(N.to_json()).signature() == N.signature()
    assert N.intermediate() == ["st"]


def test_m_network_solutions():
    N = examples.load("fig5")
    for name in ("fig5_sol1", "fig5_sol2"):
        assert verify_fnc_solution(N, examples.load(name)).ok


def test_m_network_from_eq1_blocks():
    N = examples.load("fig5")
    rep = examples.load("eq1_rep")
    D = dpm_of(rep)
    assert is_dpm_network(N, D, F1).ok
    sol = solution_from_representation(N, rep, F1, (2, 2, 2, 2), 2)
    assert verify_fnc_solution(N, sol).ok
    bad = dict(F1, **{"2": 1})
    assert is_dpm_network(N, D, bad).condition == "DN1"


def test_n2_failure():
    N = examples.load("fig8")
    sol = examples.load("fig8_sol")
    enc = dict(sol.encodings)
    enc["4->5"] = Matrix.zeros(GF2, 3, 2)
    rpt = verify_fnc_solution(N, FncSolution(sol.field, sol.dims, sol.n, enc))
    assert not rpt.ok and rpt.condition in ("N2", "N3")


def test_n1_failure():
    N = direct_network()
    sol = FncSolution(GF2, (1,), 1, {"e1": Matrix.zeros(GF2, 1, 1), "st": Matrix.identity(GF2, 1)})
    assert verify_fnc_solution(N, sol).condition == "N1"


def test_direct_network():
    N = direct_network()
    D = free_polymatroid([1])
    sol = solution_from_representation(N, dpm_rep_identity(), {"e1": 1, "st": 1}, (1,), 1)
    assert all(m == Matrix.identity(GF2, 1) for m in sol.encodings.values())
    rep, f = dpm_from_solution(N, sol)
    assert dpm_of(rep).table.tolist() == [0, 1, 1, 1]
    assert is_dpm_network(N, D, {"e1": 1, "st": 1}).ok


def dpm_rep_identity():
    from polymat.representation import Representation
    return Representation(GF2, 1, (Matrix.identity(GF2, 1),))


def test_m_network_solution2_dims():
    N = examples.load("fig5")
    rep, f = dpm_from_solution(N, examples.load("fig5_sol2"))
    dims = rep.dims()
    assert dims.count(2) == 12 and dims.count(1) == 8
    assert dims[12:] == (1,) * 8


def test_fig8_solution_matches_ex9():
    D = examples.load("ex9")
    N, f = construct_network_alg2(D, examples.load("table3"))
    assert is_gdpm_network(N, D, f, (1, 1, 1), 2).ok
    sol = solution_from_representation(N, examples.load("ex9_rep"), f, (1, 1, 1), 2)
    assert verify_fnc_solution(N, sol).ok
    rep, g = dpm_from_solution(N, sol)
    # the induced table agrees with D on the image of f
    img = sorted(set(f.values()))
    Dimg = D.restrict(img)
    for e1 in f:
        for e2 in f:
            assert dpm_of(rep).rank([g[e1], g[e2]]) == Dimg.rank([img.index(f[e1]) + 1, img.index(f[e2]) + 1])


def test_gdpm_failures():
    D = examples.load("ex9")
    N, f = construct_network_alg2(D, examples.load("table3"))
    assert is_gdpm_network(N, D, f, (1, 1, 1), 1).condition == "GDN3"
    assert is_gdpm_network(N, D, f, (2, 1, 1), 2).condition in ("GDN2", "GDN3")
    with pytest.raises(NetworkError):
        is_gdpm_network(N, D, f, (1, 1), 2)


def test_uniform_gdpm_matches_dpm():
    D = examples.load("u24x2")
    N, f = construct_network_alg1(D, examples.load("table1"))
    assert is_dpm_network(N, D, f).ok == is_gdpm_network(N, D, f, (2, 2), 2).ok == True


def test_table2_reproduces_fig7():
    rep = examples.load("eq1_rep")
    N, f = construct_network_alg1(dpm_of(rep), examples.load("table2"))
    assert same_network(N, examples.load("fig7"))


def test_alg1_on_u24():
    script = ConstructionScript.from_json({"alg": 1, "step1": [1, 1, 0, 0],
                                           "step2": [{"element": 3, "u": [1, 1, 1, 0]},
                                                     {"element": 4, "u": [1, 1, 0, 1]}],
                                           "step3": [], "step4": []})
    D = examples.load("u24")
    N, f = construct_network_alg1(D, script)
    assert is_dpm_network(N, D, f).ok


def test_script_errors():
    D = examples.load("u24")
    bad = ConstructionScript.from_json({"alg": 1, "step1": [1, 1, 1, 0], "step2": [], "step3": [], "step4": []})
    with pytest.raises(ScriptError):
        construct_network_alg1(D, bad)
    not_c = ConstructionScript.from_json({"alg": 1, "step1": [1, 1, 0, 0],
                                          "step2": [{"element": 3, "u": [1, 1, 1, 1]}], "step3": [], "step4": []})
    with pytest.raises(ScriptError):
        construct_network_alg1(D, not_c)


def test_script_json_round_trip():
    s = examples.load("table4")
    assert ConstructionScript.from_json(s.to_json()) == s


def test_same_network_ignores_edge_ids():
    a = direct_network()
    b = Network(("s", "t"), (Edge("src", None, "s"), Edge("z", "s", "t")), ("src",), {"t": (1,)})
    assert same_network(a, b)
    c = Network(("s", "t"), (Edge("src", None, "s"), Edge("z", "s", "t"), Edge("w", "s", "t")), ("src",), {"t": (1,)})
    assert not same_network(a, c)


def test_search_small():
    N = direct_network()
    sol = search_fnc_solution(N, GF2, (1,), 1)
    assert sol is not None and verify_fnc_solution(N, sol).ok


def test_search_fig8_vector_solution():
    N = examples.load("fig8")
    sol = search_fnc_solution(N, GF2, (1, 1, 1), 2)
    assert sol is not None and verify_fnc_solution(N, sol).ok


def test_search_cap():
    with pytest.raises(CapExceeded):
        search_fnc_solution(examples.load("fig6"), GF3, (1, 1), 1, cap=2)


def test_rates():
    vec, avg, uni = rates(examples.load("fig8_sol"))
    assert vec == (Fraction(1, 2),) * 3 and uni
    vec, avg, uni = rates(examples.load("fig9_sol"))
    assert avg == Fraction(2, 3) and not uni
    sol = FncSolution(GF2, (2, 2), 2, {})
    assert rates(sol)[0] == (1, 1)


def test_solution_json_round_trip():
    sol = examples.load("fig9_sol")
    assert FncSolution.from_json(sol.to_json()) == sol


def test_theorem1_round_trip():
    N = examples.load("fig5")
    for name in ("fig5_sol1", "fig5_sol2"):
        sol = examples.load(name)
        rep, f = dpm_from_solution(N, sol)
        again = solution_from_representation(N, rep, f, sol.dims, sol.n)
        assert verify_fnc_solution(N, again).ok
        assert is_representation(rep, dpm_of(rep))

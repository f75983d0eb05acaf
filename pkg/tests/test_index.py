import pytest

from polymat import examples
from polymat.gf import CapExceeded, Matrix, field_make, hstack, rank
from polymat.index import (Failure, IndexCode, IndexCodingError, IndexProblem, Receiver, RetriesExhausted,
                           code_from_representation_thm7, code_from_thm5_rep, construct_problem, is_perfect,
                           m_of, n_bound, rep_from_perfect_code, search_perfect_code, thm5_check,
                           thm5_rep_from_code, thm7_construct, verify_index_code)
from polymat.polymatroid import DiscretePolymatroid
from polymat.representation import Representation, is_representation

GF2, GF3, GF4, GF16 = field_make(2), field_make(3), field_make(2, 2), field_make(2, 4)


def test_problem_validation():
    with pytest.raises(IndexCodingError):
        IndexProblem(("a", "a"), ())
    with pytest.raises(IndexCodingError):
        IndexProblem(("a",), (Receiver("a", frozenset({"a"})),))
    with pytest.raises(IndexCodingError):
        IndexProblem(("a",), (Receiver("b", frozenset()),))
    P = examples.load("sec3b_problem")
    assert IndexProblem.from_json(P.to_json()) == P


def test_m_of():
    assert m_of(examples.load("sec3b_problem")) == 2
    assert m_of(examples.load("ex31")) == 5
    P = IndexProblem(("a", "b"), (Receiver("a", frozenset()), Receiver("b", frozenset({"a"}))))
    assert m_of(P) == 1


def test_sec3b_code():
    P, code = examples.load("sec3b_problem"), examples.load("sec3b_code")
    assert verify_index_code(P, code) is None
    assert is_perfect(P, code)
    padded = IndexCode(code.field, 1, 3, hstack([code.encoding, Matrix.zeros(GF2, 4, 1)]), code.messages)
    assert not is_perfect(P, padded)


def test_verify_failure():
    P = IndexProblem(("a", "b"), (Receiver("a", frozenset()),))
    code = IndexCode(GF2, 1, 1, Matrix.zeros(GF2, 2, 1), ("a", "b"))
    bad = verify_index_code(P, code)
    assert isinstance(bad, Failure) and bad.what == "receiver"
    with pytest.raises(IndexCodingError):
        is_perfect(P, code)


def test_gf4_code():
    P, code = examples.load("ex31"), examples.load("ex31_gf4_code")
    assert verify_index_code(P, code) is None and is_perfect(P, code) and code.c == 5
    broken = [list(r) for r in code.encoding.data]
    for r in broken:
        r[0] = 0
    bad = IndexCode(GF4, 1, 5, Matrix.from_rows(GF4, broken), code.messages)
    assert verify_index_code(P, bad) is not None


def test_thm5_sec6a():
    P, rep = examples.load("sec6a_problem"), examples.load("sec6a_rep")
    assert thm5_check(P, rep, 1, 2) is None
    code = code_from_thm5_rep(P, rep, 1, 2)
    assert [list(c) for c in code.encoding.columns()] == [[1, 1, 1, 0], [1, 0, 0, 1]]
    short = Representation(GF2, 4, rep.blocks[:4] + (rep.blocks[4].col_slice(0, 1),))
    assert thm5_check(P, short, 1, 2).what == "C1"
    # the receiver holding x1 now asks for x3 instead of x4
    swapped = IndexProblem(P.messages, (Receiver("x3", frozenset({"x1"})),) + P.receivers[1:])
    assert thm5_check(swapped, rep, 1, 2).what == "C2"
    with pytest.raises(IndexCodingError):
        thm5_check(P, Representation(GF2, 4, rep.blocks[:4]), 1, 2)


def test_thm5_backward():
    P, code = examples.load("sec3b_problem"), examples.load("sec3b_code")
    rep = thm5_rep_from_code(P, code)
    assert thm5_check(P, rep, 1, 2) is None
    P, code = examples.load("ex31"), examples.load("ex31_gf4_code")
    rep = thm5_rep_from_code(P, code)
    assert rep.r == 9 and rank(rep.total()) == 8
    assert thm5_check(P, rep, 1, 5) is None


def test_construct_problem_ex7(ex7):
    P = construct_problem(ex7)
    assert P.messages == ("x1", "x2", "x3", "y_1_1", "y_1_2", "y_2_1", "y_2_2", "y_3_1")
    assert P == examples.load("ex31")
    assert m_of(P) == sum(ex7.singleton_ranks)
    assert len(P.receivers) == len(set(P.receivers))


def test_construct_problem_matroid():
    u = examples.load("u24")
    P = construct_problem(u)
    assert m_of(P) == 4
    ys = {f"y_{i}_1" for i in range(1, 5)}
    for R in P.receivers:
        if R.demand.startswith("y"):
            # every element contributes at most one symbol, as in the matroid construction
            assert R.side <= ys or R.side == {"x1", "x2"}


def test_n_bound(ex7):
    assert n_bound(DiscretePolymatroid(1, [0, 1])) == 2
    # the closed form gives 1 + (2 + 1 + 2 + 4) for element 1
    assert n_bound(ex7) == 10


def test_rep_from_gf4_code(ex7):
    rep = rep_from_perfect_code(ex7, examples.load("ex31_gf4_code"))
    assert rep.field == GF4 and is_representation(rep, ex7)


def test_thm7_gf16(ex7):
    code, tries = thm7_construct(ex7, examples.load("ex8_rep"), 1, GF16, seed=1)
    assert is_perfect(construct_problem(ex7), code)
    assert is_representation(rep_from_perfect_code(ex7, code), ex7)
    other = code_from_representation_thm7(ex7, examples.load("ex8_rep"), 1, GF16, seed=5)
    assert is_perfect(construct_problem(ex7), other)


def test_thm7_identity_for_matroids():
    u = examples.load("u24")
    code, tries = thm7_construct(u, examples.load("ex2_rep"), 1, GF3)
    assert tries == 1
    enc = code.encoding
    assert enc.row_slice(2, 6) == Matrix.identity(GF3, 4)


def test_thm7_exhausts(ex7):
    # every mixing choice over GF(2) fails for this D
    with pytest.raises(RetriesExhausted) as e:
        thm7_construct(ex7, examples.load("ex8_rep"), 1, GF2, retries=4, cap=1)
    assert e.value.family.startswith("P(b)")
    with pytest.raises(IndexCodingError):
        thm7_construct(ex7, examples.load("ex2_rep"), 1, GF16)


def test_search_pruned():
    P = examples.load("ex31")
    assert search_perfect_code(P, GF2) is None
    code = search_perfect_code(P, GF4)
    assert code is not None and is_perfect(P, code)


def test_search_small_problems():
    P = examples.load("sec3b_problem")
    for method in ("pruned", "exhaustive"):
        code = search_perfect_code(P, GF2, method=method)
        assert code is not None and is_perfect(P, code)


def test_search_empty():
    P = IndexProblem(("a", "b"), ())
    code = search_perfect_code(P, GF2)
    assert code.c == 0 and verify_index_code(P, code) is None


def test_search_cap():
    with pytest.raises(CapExceeded):
        search_perfect_code(examples.load("ex31"), GF2, method="exhaustive", cap=1000)


def test_corollary_small_scale(ex7):
    from polymat.representation import find_representation
    for D in (ex7, examples.load("u24")):
        P = construct_problem(D)
        any_rep = any_code = False
        for F in (GF2, GF3, GF4):
            has_rep = find_representation(D, F) is not None
            has_code = search_perfect_code(P, F) is not None
            # a perfect code reads off a representation over the same field
            assert has_rep or not has_code
            any_rep |= has_rep
            any_code |= has_code
        assert any_rep and any_code


def test_code_json_round_trip():
    code = examples.load("ex31_gf4_code")
    assert IndexCode.from_json(code.to_json()) == code

import pytest

from polymat import examples
from polymat.network import verify_fnc_solution
from polymat.representation import is_representation

MANIFEST = examples.bundled_examples()


def test_manifest_size():
    assert len(MANIFEST) >= 18
    names = [e["name"] for e in MANIFEST]
    assert len(names) == len(set(names))


@pytest.mark.parametrize("name", [e["name"] for e in MANIFEST])
def test_every_entry_loads(name):
    assert examples.load(name) is not None


@pytest.mark.parametrize("e", [e for e in MANIFEST if e["kind"] == "representation" and "polymatroid" in e],
                         ids=lambda e: e["name"])
def test_reps_match_tables(e):
    from polymat.representation import dpm_of
    D = examples.load(e["polymatroid"])
    rep = examples.load(e["name"])
    assert is_representation(rep, D if hasattr(D, "table") else dpm_of(D))


@pytest.mark.parametrize("e", [e for e in MANIFEST if e["kind"] == "solution"], ids=lambda e: e["name"])
def test_solutions_verify(e):
    assert verify_fnc_solution(examples.load(e["network"]), examples.load(e["name"])).ok


def test_unknown():
    with pytest.raises(KeyError):
        examples.entry("nope")

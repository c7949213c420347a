from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from osc.errors import ContractError
from osc.pbf import FALSE, TRUE, And, Atom, Or, atoms, classify, evaluate, render, substitute

NAMES = [f"x{i}" for i in range(10)]

leaves = st.one_of(st.sampled_from(NAMES).map(Atom), st.just(TRUE), st.just(FALSE))
formulas = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.lists(inner, min_size=1, max_size=3).map(lambda cs: And(tuple(cs))),
        st.lists(inner, min_size=1, max_size=3).map(lambda cs: Or(tuple(cs))),
    ),
    max_leaves=14,
)


def depth(f):
    if isinstance(f, (And, Or)):
        return 1 + max(depth(c) for c in f.children)
    return 0


p, q, r, s = (Atom(x) for x in "pqrs")


def test_eval_examples():
    assert evaluate(p, {"p": True}) is True
    assert evaluate(And((p, Or((q, r)))), {"p": True, "q": False, "r": True}) is True
    assert evaluate(FALSE, {}) is False
    assert evaluate(TRUE, {}) is True


def test_eval_missing_atom_is_contract_error():
    with pytest.raises(ContractError):
        evaluate(And((p, q)), {"p": False})


def test_empty_nodes_rejected():
    with pytest.raises(ContractError):
        And(())
    with pytest.raises(ContractError):
        Or(())


def test_atoms_examples():
    assert atoms(And((p, Or((q, r))))) == {"p", "q", "r"}
    assert atoms(TRUE) == frozenset()
    assert atoms(p) == {"p"}


def test_substitute_examples():
    f = And((p, Or((r, s))))
    lifted = substitute(f, lambda x: Atom(("L", x)))
    assert lifted == And((Atom(("L", "p")), Or((Atom(("L", "r")), Atom(("L", "s"))))))
    assert substitute(f, Atom) == f
    assert substitute(FALSE, lambda x: TRUE) == FALSE


@pytest.mark.parametrize("f, kind", [
    (Or((p, q)), "disjunctive"),
    (p, "atomic"),
    (And((p, Or((q, r)))), "general"),
    (And((p, FALSE)), "conjunctive"),
    (TRUE, "constant"),
    (Or((And((p,)),)), "general"),
])
def test_classify(f, kind):
    assert classify(f) == kind


def test_render():
    assert render(And((p, Or((q, TRUE))))) == "(p & (q | T))"
    assert render(FALSE) == "F"


@settings(max_examples=60, deadline=None)
@given(formulas)
def test_monotone_under_all_assignments(f):
    assume(depth(f) <= 5)
    names = sorted(atoms(f))
    for bits in product([False, True], repeat=len(names)):
        sigma = dict(zip(names, bits))
        if not evaluate(f, sigma):
            continue
        for x in names:
            if not sigma[x]:
                assert evaluate(f, {**sigma, x: True})


@settings(max_examples=100, deadline=None)
@given(formulas, st.dictionaries(st.sampled_from(NAMES), formulas, min_size=len(NAMES)),
       st.dictionaries(st.sampled_from(NAMES), st.booleans(), min_size=len(NAMES)))
def test_substitute_commutes_with_eval(f, images, sigma):
    g = images.__getitem__
    composed = {x: evaluate(g(x), sigma) for x in NAMES}
    assert evaluate(substitute(f, g), sigma) == evaluate(f, composed)


@settings(max_examples=100, deadline=None)
@given(formulas, st.dictionaries(st.sampled_from(NAMES), formulas, min_size=len(NAMES)))
def test_atoms_of_substitution(f, images):
    expected = frozenset().union(*(atoms(images[x]) for x in atoms(f)))
    assert atoms(substitute(f, images.__getitem__)) == expected

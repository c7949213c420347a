import pytest

from osc import langs
from osc.constructions import (
    HORIZON, MACHINE_NAMES, REGISTERED, alt_hierarchy, alt_lexicographic, det_count_eq_all3,
    det_count_eq_exists, det_maj2, det_universal, machine_by_name, nd_count_eq_exists, nd_not_eq,
    nd_not_eq_multi, quotient_automaton,
)
from osc.errors import CapacityError, InputError
from osc.machine import (
    State, accepts, classify_machine, reachable_states, run_deterministic, state_count_curve,
    verify_against_oracle,
)
from osc.qtable import count_distinct_cols, query_matrix


def test_count_eq_all3_closed_form():
    m = det_count_eq_all3()
    assert run_deterministic(m, "aabc") == State("cnt", (1, 1))
    assert run_deterministic(m, "") == State("cnt", (0, 0))
    assert accepts(m, "")
    for w in m.alphabet.words(8):
        a, b, c = (w.count(i) for i in range(3))
        assert run_deterministic(m, w) == State("cnt", (a - b, a - c))


def test_count_eq_exists_det_closed_form():
    m = det_count_eq_exists(2)
    assert run_deterministic(m, "a1") == State("vec", (0, 1))
    for w in m.alphabet.words(7):
        assert run_deterministic(m, w).ints == tuple(w.count(0) - w.count(i) for i in (1, 2))


def test_maj2_closed_form():
    m = det_maj2()
    for w in m.alphabet.words(8):
        assert run_deterministic(m, w).ints == (w.count(0) - w.count(1),)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_count_eq_exists_both_kinds(ell):
    oracle = langs.count_eq_exists(ell)
    det, nd = det_count_eq_exists(ell), nd_count_eq_exists(ell)
    assert verify_against_oracle(det, oracle, 7) == []
    assert verify_against_oracle(nd, oracle, 7) == []
    assert classify_machine(det, 5) == "deterministic"
    assert classify_machine(nd, 5) == "nondeterministic"


def test_not_eq_examples():
    m = nd_not_eq()
    assert accepts(m, "01#0")
    assert accepts(m, "0#01")
    assert not accepts(m, "01#01")
    curve = state_count_curve(m, 12).counts()
    assert all(s <= (n + 1) * 3 * 2 + 1 for n, s in enumerate(curve))


def test_not_eq_multi():
    m = nd_not_eq_multi(2)
    assert accepts(m, "0#1#1")
    assert not accepts(m, "0#0#1")
    assert verify_against_oracle(m, langs.not_eq(2), 8) == []
    assert classify_machine(m, 5) == "nondeterministic"


def test_lexicographic_examples():
    m = alt_lexicographic()
    assert accepts(m, "0#1")
    assert accepts(m, "01#10")
    assert not accepts(m, "10#01")
    curve = state_count_curve(m, 12).counts()
    assert all(s <= 8 * n for n, s in enumerate(curve) if n >= 1)


def test_hierarchy_examples():
    m = alt_hierarchy(2)
    assert accepts(m, "*1#1")
    assert accepts(m, "**01#10#01")
    assert not accepts(m, "1#1")
    assert verify_against_oracle(m, langs.hierarchy(2), 8) == []
    assert classify_machine(m, 5) == "alternating"


def test_universal_machine():
    binary = det_universal(langs.primes(), 12)
    assert state_count_curve(binary, 6).counts() == [2 ** (n + 1) - 1 for n in range(7)]
    assert verify_against_oracle(binary, langs.primes(), 10) == []
    ternary = det_universal(langs.lexicographic(), 8)
    assert state_count_curve(ternary, 5).counts() == [(3 ** (n + 1) - 1) // 2 for n in range(6)]


def test_universal_cap():
    m = det_universal(langs.maj2(), 3)
    with pytest.raises(CapacityError):
        accepts(m, "aaaa")


def test_quotient_automaton_soundness():
    m = quotient_automaton(langs.maj2(), 6, 6)
    oracle = langs.maj2()
    assert all(accepts(m, w) == oracle.member(w) for w in m.alphabet.words(6))
    assert classify_machine(quotient_automaton(langs.count_eq_all(3), 4, 6), 4) == "deterministic"


@pytest.mark.parametrize("oracle, n, m", [
    (langs.maj2(), 5, 5),
    (langs.parity_a(), 4, 3),
    (langs.count_eq_all(3), 3, 4),
    (langs.primes(), 5, 6),
])
def test_quotient_state_count_is_column_count(oracle, n, m):
    qa = quotient_automaton(oracle, n, m)
    states = {q for q in reachable_states(qa, n) if q != HORIZON}
    assert len(states) == count_distinct_cols(query_matrix(oracle, n, m)[2])
    assert all(accepts(qa, w) == oracle.member(w) for w in qa.alphabet.words(n))


@pytest.mark.parametrize("builder, oracle", [
    (det_count_eq_all3, langs.count_eq_all(3)),
    (det_maj2, langs.maj2()),
    (lambda: det_count_eq_exists(2), langs.count_eq_exists(2)),
])
def test_deterministic_dominates_quotient(builder, oracle):
    s = state_count_curve(builder(), 4).counts()
    for k in range(5):
        qa = quotient_automaton(oracle, k, 4)
        assert s[k] >= len({q for q in reachable_states(qa, k) if q != HORIZON})


@pytest.mark.parametrize("name, depth", REGISTERED)
def test_registered_pairs_verify(name, depth):
    m, oracle = machine_by_name(name)
    assert verify_against_oracle(m, oracle, depth) == []


def test_registered_depths_meet_minimums():
    for name, depth in REGISTERED:
        m, _ = machine_by_name(name)
        if name.startswith("hierarchy-alt:2"):
            assert depth >= 8
        elif m.alphabet.size == 2:
            assert depth >= 9
        else:
            assert depth >= 7


@pytest.mark.parametrize("name", ["bogus", "noteq-nd:x", "universal:primes", "quotient:maj2:3",
                                  "counteq-exists-det"])
def test_unknown_names(name):
    with pytest.raises(InputError):
        machine_by_name(name)


def test_names_listing_covers_registry():
    bases = {n.split(":")[0] for n in MACHINE_NAMES}
    assert {name.split(":")[0] for name, _ in REGISTERED} <= bases

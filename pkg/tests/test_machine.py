import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osc import langs, pbf
from osc.alphabet import AB
from osc.constructions import REGISTERED, alt_lexicographic, det_count_eq_all3, det_universal, machine_by_name, nd_not_eq
from osc.errors import InputError, RefusalError
from osc.machine import (
    Machine, State, accepts, at, classify_machine, game_tree_value, reachable_layers,
    reachable_states, run_deterministic, state, state_count_curve, trace, verify_against_oracle,
)

N_STATES = 4


def _formula(depth):
    leaf = st.one_of(st.integers(0, N_STATES - 1).map(lambda i: at("s", i)),
                     st.sampled_from([pbf.TRUE, pbf.FALSE]))
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            st.lists(inner, min_size=1, max_size=3).map(lambda c: pbf.And(tuple(c))),
            st.lists(inner, min_size=1, max_size=3).map(lambda c: pbf.Or(tuple(c))),
        ),
        max_leaves=depth,
    )


@st.composite
def random_machines(draw):
    table = {(i, a): draw(_formula(6)) for i in range(N_STATES) for a in range(2)}
    final = draw(st.frozensets(st.integers(0, N_STATES - 1)))
    init = draw(_formula(4))
    return Machine("random", AB, init, lambda q, a: table[(q.ints[0], a)],
                   lambda q: q.ints[0] in final)


def test_accepts_examples():
    assert accepts(det_count_eq_all3(), "abc")
    assert not accepts(det_count_eq_all3(), "aab")
    m = nd_not_eq()
    assert not accepts(m, "0#0")
    assert accepts(m, "0#1")


def test_game_tree_examples():
    lex = alt_lexicographic()
    assert game_tree_value(lex, "0#1")
    for m in (lex, det_count_eq_all3(), nd_not_eq()):
        base = pbf.evaluate_with(m.init, lambda q: bool(m.accepting(q)))
        assert game_tree_value(m, "") == base == accepts(m, "")


def test_game_tree_guard():
    with pytest.raises(RefusalError):
        game_tree_value(det_count_eq_all3(), "a" * 9)


def test_letter_outside_alphabet_is_input_error():
    with pytest.raises(InputError):
        accepts(det_count_eq_all3(), "abd")


def test_state_counter_overflow():
    with pytest.raises(OverflowError):
        state("x", 1 << 63)
    assert state("x", -(1 << 63)).ints == (-(1 << 63),)


@settings(max_examples=100, deadline=None)
@given(random_machines(), st.lists(st.integers(0, 1), max_size=6).map(tuple))
def test_game_tree_equals_accepts_on_random_machines(m, w):
    assert game_tree_value(m, w) == accepts(m, w)


def test_reachable_examples():
    universal = det_universal(langs.primes(), 12)
    assert len(reachable_states(universal, 3)) == 15
    for name, _ in REGISTERED[:12]:
        m, _ = machine_by_name(name)
        assert len(reachable_states(m, 0)) == len(pbf.atoms(m.init))


@pytest.mark.parametrize("name", [name for name, _ in REGISTERED])
def test_layers_nested_and_bounded(name):
    m, _ = machine_by_name(name)
    k = m.alphabet.size
    layers = list(reachable_layers(m, 5))
    for a, b in zip(layers, layers[1:]):
        assert a <= b
    if classify_machine(m, 5) == "deterministic":
        # one state per word read at most
        for n, layer in enumerate(layers):
            assert len(layer) <= (k ** (n + 1) - 1) // (k - 1)
    counts = state_count_curve(m, 5).counts()
    assert counts == [len(x) for x in layers]
    assert counts == sorted(counts)


def test_count_eq_all3_state_count_matches_difference_vectors():
    # direct count: vectors (i - j, i - k) over letter counts with i + j + k <= n
    curve = state_count_curve(det_count_eq_all3(), 12).counts()
    for n, s in enumerate(curve):
        vecs = {(i - j, i - k) for i in range(n + 1) for j in range(n + 1 - i)
                for k in range(n + 1 - i - j)}
        assert s == len(vecs) <= (2 * n + 1) ** 2


def test_curve_bounds():
    lex = state_count_curve(alt_lexicographic(), 10).counts()
    assert all(s <= 8 * n for n, s in enumerate(lex) if n >= 1)
    ne = state_count_curve(nd_not_eq(), 10).counts()
    assert all(s <= (n + 1) * 3 * 2 + 1 for n, s in enumerate(ne))


def test_classify_examples():
    assert classify_machine(det_count_eq_all3(), 6) == "deterministic"
    assert classify_machine(nd_not_eq(), 6) == "nondeterministic"
    assert classify_machine(alt_lexicographic(), 6) == "alternating"
    m = Machine("all", AB, at("s", 0), lambda q, a: pbf.And((at("s", 0), at("s", 1))),
                lambda q: True)
    assert classify_machine(m, 3) == "universal"


def test_verify_examples():
    assert verify_against_oracle(det_count_eq_all3(), langs.count_eq_all(3), 8) == []
    assert verify_against_oracle(alt_lexicographic(), langs.lexicographic(), 9) == []


def test_verify_detects_injected_fault():
    good = det_count_eq_all3()
    broken = Machine("broken", good.alphabet, good.init, good.delta,
                     lambda q: not good.accepting(q))
    bad = verify_against_oracle(broken, langs.count_eq_all(3), 8)
    assert bad and bad[0] == ()
    assert len(verify_against_oracle(broken, langs.count_eq_all(3), 8, cap=3)) == 3


def test_verify_alphabet_mismatch():
    with pytest.raises(InputError):
        verify_against_oracle(det_count_eq_all3(), langs.maj2(), 3)


@pytest.mark.parametrize("name", ["counteq3-det", "counteq-exists-det:2", "maj2-det",
                                  "universal:primes:12", "quotient:maj2:9:9"])
def test_deterministic_run_simulation(name):
    m, _ = machine_by_name(name)
    assert classify_machine(m, 6) == "deterministic"
    for w in m.alphabet.words(6):
        end = run_deterministic(m, w)
        assert accepts(m, w) == (end is not None and bool(m.accepting(end)))


def test_delta_is_pure():
    m = alt_lexicographic()
    for q in reachable_states(m, 4):
        for a in range(m.alphabet.size):
            assert m.delta(q, a) == m.delta(q, a)


def test_trace_ends_with_value():
    lines = trace(alt_lexicographic(), "01#10")
    assert lines[0].startswith("init:")
    assert lines[-1] == "value: True"


def test_state_str():
    assert str(State("cnt", (1, -1))) == "cnt(1,-1)"
    assert str(State("top")) == "top"

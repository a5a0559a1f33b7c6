import random

import pytest

from timedreg import automata as au
from timedreg import formulas as fm
from timedreg import guards as gd
from timedreg import testkit as tk
from timedreg import translate as tr
from timedreg.braids import encode_data_as_timed, encode_timed_as_data, is_data_braid, is_timed_braid
from timedreg.semantics import accepts
from timedreg.words import Letter, parse_data_word, parse_timed_word


def _rules(A, state, letter):
    return A.rules_for(state, Letter.parse(letter))


def test_unit_gap_translation_shape(unit_gap_automaton):
    B = tr.timed_to_register(unit_gap_automaton)
    core = {q for q in B.states if q != B.initial}
    assert {f"{q}^{v}" for q in "qp" for v in (0, 1)} <= core
    assert core - {f"{q}^{v}" for q in ("q", "p", "sink") for v in (0, 1)} == set()
    assert B.registers == ("c",) and au.is_order_blind(B)
    for letter in ("a", "a!"):
        (edge,) = [r for r in _rules(B, "q^0", letter) if r.guard == gd.eq("c")]
        assert fm.Atom("p^1") in set(fm.atoms(edge.formula))


def test_unit_gap_translation_agrees(unit_gap_automaton):
    B = tr.timed_to_register(unit_gap_automaton)
    w = parse_timed_word("(a,1/2) (a,3/2)")
    assert accepts(unit_gap_automaton, w) and accepts(B, encode_timed_as_data(w))


def test_first_equals_last_translation_shape(first_equals_last_automaton):
    B = tr.register_to_timed(first_equals_last_automaton)
    assert {f"{q}^{b}" for q in "pqs" for b in "01"} <= set(B.states)
    assert B.clocks == ("r",)
    one = gd.clock_eq("r", 1)
    (edge,) = [r for r in _rules(B, "q^1", "a!") if r.guard == one]
    assert fm.Atom("s^1", {"r"}) in set(fm.atoms(edge.formula))


def test_first_equals_last_translation_agrees(first_equals_last_automaton):
    B = tr.register_to_timed(first_equals_last_automaton)
    w = parse_data_word("(a,5) (a,5)")
    tb = encode_data_as_timed(w)
    assert str(tb) == "(a!,0) (a!,1)"
    assert accepts(first_equals_last_automaton, w) and accepts(B, tb)


def test_leading_tick_case():
    # the first datum is not the minimum, so the timed braid starts with a tick
    A = au.complete_with_sink(
        au.RegisterAutomaton(
            ["a"], ["p", "q"], "p", ["q"], ["r"],
            [au.Rule("p", Letter("a"), gd.TRUE, fm.Atom("q", {"r"})), au.Rule("q", Letter("a"), gd.gt("r"), fm.Atom("q"))],
        )
    )
    B = tr.register_to_timed(A)
    for text in ("(a,5) (a,7)", "(a,5) (a,3)", "(a,5) (a,6) (a,9)", "(a,5) (a,6) (a,1)"):
        w = parse_data_word(text)
        assert accepts(A, w) == accepts(B, encode_data_as_timed(w)), text


def test_translations_need_base_alphabet():
    A = au.TimedAutomaton(["a!"], ["q"], "q", [], [], [au.Rule("q", Letter("a", True), gd.TRUE, fm.Atom("q"))])
    with pytest.raises(ValueError):
        tr.timed_to_register(A)


def test_clock_free_automaton_ignores_registers():
    rng = random.Random(1)
    p = tk.GenParams(n_vars=0)
    for _ in range(20):
        A = tk.gen_timed_automaton(p, rng)
        B = tr.timed_to_register(A)
        assert B.registers == ()
        w = tk.gen_timed_word(p, rng)
        assert accepts(A, w) == accepts(B, encode_timed_as_data(w))


def test_register_free_automaton_ignores_clocks():
    rng = random.Random(2)
    p = tk.GenParams(n_vars=0)
    for _ in range(20):
        A = tk.gen_register_automaton(p, rng)
        B = tr.register_to_timed(A)
        assert B.clocks == ()
        w = tk.gen_data_word(p, rng)
        assert accepts(A, w) == accepts(B, encode_data_as_timed(w))


@pytest.mark.parametrize("model", ["data", "timed"])
def test_braid_recognizers_are_well_formed(model):
    make = tr.non_data_braid_automaton if model == "data" else tr.non_timed_braid_automaton
    A = make(["a", "b"])
    assert au.check_partition(A).ok
    assert au.mode_of(A) == au.NONDETERMINISTIC
    assert len(A.variables) == 1
    assert au.mode_of(tr.braid_automaton(["a", "b"], model)) == au.ALTERNATING


def test_braid_recognizer_on_reference_words():
    non = tr.non_data_braid_automaton(["a", "b", "c", "d"])
    good = parse_data_word("(b!,2) (a,4) (a!,2) (b,4) (b,8) (b!,2) (b,3) (a,4) (a,8) (b,9)")
    bad = parse_data_word("(c!,1) (d!,1) (a,4) (b,8) (c!,1) (b,2) (a,4) (a,8) (b,9) (c!,1)")
    assert accepts(non, bad) and not accepts(non, good)
    yes = tr.braid_automaton(["a", "b", "c", "d"], "data")
    assert accepts(yes, good) and not accepts(yes, bad)
    timed = tr.non_timed_braid_automaton(["a", "b"])
    v = parse_timed_word("(b!,0) (a,1/2) (a!,1) (b,3/2) (b,8/5) (b!,2) (b,23/10) (a,5/2) (a,13/5) (b,29/10)")
    assert not accepts(timed, v)


def test_braid_model_name():
    with pytest.raises(ValueError):
        tr.braid_automaton(["a"], "other")


@pytest.mark.parametrize("seed", range(3))
def test_braid_recognizers_match_predicates(seed):
    rng = random.Random(seed)
    p = tk.GenParams(max_len=7)
    nd, nt = tr.non_data_braid_automaton(["a", "b"]), tr.non_timed_braid_automaton(["a", "b"])
    for _ in range(60):
        d = tk.gen_data_word(p, rng, extended=True)
        t = tk.gen_timed_word(p, rng, extended=True)
        assert accepts(nd, d) == (not is_data_braid(d))
        assert accepts(nt, t) == (not is_timed_braid(t))

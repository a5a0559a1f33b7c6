import random

import pytest

from timedreg import automata as au
from timedreg import reduce as rd
from timedreg import testkit as tk
from timedreg.braids import encode_data_as_timed, encode_timed_as_data
from timedreg.errors import ModeUnsupported
from timedreg.semantics import accepts
from timedreg.textio import format_automaton
from timedreg.words import parse_data_word


def test_nonemptiness_instance_accepts_encoded_witness(first_equals_last_automaton):
    inst = rd.reduce_register_problem("nonemptiness", first_equals_last_automaton)
    assert inst.target == "timed"
    assert inst.questions == [("nonempty", "filtered")]
    assert accepts(inst.components["filtered"], encode_data_as_timed(parse_data_word("(a,5) (a,5)")))
    assert not accepts(inst.components["filtered"], encode_data_as_timed(parse_data_word("(a,5) (a,4)")))
    assert inst.notes and "alternating" in inst.notes[0]


def test_mode_preservation_is_refused_for_nondeterministic_sources(first_equals_last_automaton):
    with pytest.raises(ModeUnsupported):
        rd.reduce_register_problem("nonemptiness", first_equals_last_automaton, preserve_mode=True)


def test_alternating_source_keeps_mode():
    A = tk.gen_timed_automaton(tk.GenParams(mode=au.ALTERNATING))
    inst = rd.reduce_timed_problem("nonemptiness", A, preserve_mode=True)
    assert au.mode_of(inst.components["filtered"]) == au.ALTERNATING
    assert inst.notes == []


def test_argument_checks(unit_gap_automaton, first_equals_last_automaton):
    with pytest.raises(ValueError):
        rd.reduce_timed_problem("inclusion", unit_gap_automaton)
    with pytest.raises(ValueError):
        rd.reduce_timed_problem("emptiness", unit_gap_automaton)
    with pytest.raises(ValueError):
        rd.reduce_timed_problem("universality", unit_gap_automaton, unit_gap_automaton)
    with pytest.raises(TypeError):
        rd.reduce_timed_problem("universality", first_equals_last_automaton)


@pytest.mark.parametrize("problem", rd.PROBLEMS)
def test_instance_files_round_trip(tmp_path, problem, unit_gap_automaton):
    B = unit_gap_automaton if problem in ("inclusion", "equality") else None
    inst = rd.reduce_timed_problem(problem, unit_gap_automaton, B)
    rd.write_instance(inst, tmp_path)
    back = rd.read_instance(tmp_path)
    assert back.problem == problem and back.target == "register"
    assert back.questions == inst.questions
    assert back.notes == inst.notes
    for role, C in inst.components.items():
        assert format_automaton(back.components[role]) == format_automaton(C)


def test_universality_pointwise():
    rng = random.Random(5)
    p = tk.GenParams(max_len=5)
    for _ in range(20):
        A = tk.gen_timed_automaton(p, rng)
        inst = rd.reduce_timed_problem("universality", A)
        w = tk.gen_timed_word(p, rng)
        assert accepts(inst.components["all"], encode_timed_as_data(w)) == accepts(A, w)


@pytest.mark.parametrize("name", ["reduce_timed", "reduce_register"])
def test_reduction_properties_small_run(name):
    assert tk.run_property(name, 5, seed=11).ok

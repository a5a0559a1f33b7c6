import random

import pytest

from timedreg import testkit as tk
from timedreg.errors import AlphabetMismatch, PartitionViolation
from timedreg.semantics import accepts, accepts_register, accepts_timed, explain, replay
from timedreg.words import parse_data_word, parse_timed_word


@pytest.mark.parametrize(
    "word, verdict",
    [
        ("(a,1/2) (a,3/2)", True),
        ("(a,1/2) (a,5/4)", False),
        # clocks start at 0, so a stamp at exactly 1 already pairs with time 0
        ("(a,1/2) (a,1)", True),
        ("(a,1/3) (a,2/3) (a,4/3) (a,5/2)", True),
        ("(a,1/3) (a,3/4) (a,5/3)", False),
    ],
)
def test_unit_gap_verdicts(unit_gap_automaton, word, verdict):
    assert accepts_timed(unit_gap_automaton, parse_timed_word(word)) is verdict


@pytest.mark.parametrize(
    "word, verdict",
    [
        ("(a,7) (a,3) (a,7)", True),
        ("(a,7) (a,3)", False),
        # a single letter leaves the automaton in q, which is not accepting
        ("(a,7)", False),
        ("(a,2) (a,2)", True),
        ("(a,1) (a,1) (a,5)", False),
    ],
)
def test_first_equals_last_verdicts(first_equals_last_automaton, word, verdict):
    assert accepts_register(first_equals_last_automaton, parse_data_word(word)) is verdict


def test_kind_checks(unit_gap_automaton, first_equals_last_automaton):
    with pytest.raises(TypeError):
        accepts_register(unit_gap_automaton, parse_data_word("(a,1)"))
    with pytest.raises(TypeError):
        accepts_timed(first_equals_last_automaton, parse_timed_word("(a,1)"))


def test_alphabet_mismatch(unit_gap_automaton):
    with pytest.raises(AlphabetMismatch):
        accepts(unit_gap_automaton, parse_timed_word("(b,1)"))


def test_incomplete_automaton_is_rejected_at_run_time(first_equals_last_printed):
    with pytest.raises(PartitionViolation):
        accepts(first_equals_last_printed, parse_data_word("(a,7) (a,7) (a,3)"))


def test_witness_takes_the_reset_branch_first(unit_gap_automaton):
    w = parse_timed_word("(a,1/2) (a,3/2)")
    witness = explain(unit_gap_automaton, w)
    assert witness.accepted
    first = witness.first_moves()
    assert len(first) == 1 and first[0].state == "q" and first[0].update == {"c"}
    assert replay(unit_gap_automaton, w, witness) is True


def test_rejection_witness_covers_all_choices(unit_gap_automaton):
    w = parse_timed_word("(a,1/2) (a,5/4)")
    witness = explain(unit_gap_automaton, w)
    assert not witness.accepted
    assert {a.update for a in witness.first_moves()} == {frozenset({"c"}), frozenset()}
    assert all(state != "p" for _, state, _ in witness.leaves())
    assert replay(unit_gap_automaton, w, witness) is False


def test_tampered_witness_fails_replay(unit_gap_automaton):
    w = parse_timed_word("(a,1/2) (a,3/2)")
    witness = explain(unit_gap_automaton, w)
    witness.accepted = False
    with pytest.raises(ValueError):
        replay(unit_gap_automaton, w, witness)


@pytest.mark.parametrize("kind", ["timed", "register"])
def test_witnesses_replay_on_random_instances(kind):
    rng = random.Random(kind)
    p = tk.GenParams(max_len=5)
    gen_a = tk.gen_timed_automaton if kind == "timed" else tk.gen_register_automaton
    gen_w = tk.gen_timed_word if kind == "timed" else tk.gen_data_word
    for _ in range(40):
        A, w = gen_a(p, rng), gen_w(p, rng)
        verdict = accepts(A, w)
        assert replay(A, w, explain(A, w)) is verdict
        assert accepts(A, w, memo=False) is verdict

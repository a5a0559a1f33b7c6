from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from timedreg import formulas as fm
from timedreg import guards as gd
from timedreg.errors import ParseError, UnknownClock
from timedreg.textio import (
    format_automaton,
    format_formula,
    format_guard,
    parse_automaton,
    parse_formula,
    parse_guard,
)

CLOCK_POINTS = [Fraction(n, 2) for n in range(8)]


def clock_guards():
    leaf = st.builds(
        lambda cls, v, k: cls(v, k), st.sampled_from([gd.Lt, gd.Le]), st.sampled_from("cd"), st.integers(0, 3)
    )
    return st.recursive(
        st.one_of(leaf, st.just(gd.TRUE)),
        lambda inner: st.one_of(st.builds(gd.And, inner, inner), st.builds(gd.Not, inner)),
        max_leaves=6,
    )


def register_guards():
    leaf = st.builds(lambda cls, v: cls(v), st.sampled_from([gd.Lt, gd.Le]), st.sampled_from("rs"))
    return st.recursive(
        st.one_of(leaf, st.just(gd.TRUE)),
        lambda inner: st.one_of(st.builds(gd.And, inner, inner), st.builds(gd.Not, inner)),
        max_leaves=6,
    )


formulas = st.recursive(
    st.builds(fm.Atom, st.sampled_from(["p", "q", "s"]), st.sets(st.sampled_from("cr"))),
    lambda inner: st.one_of(st.builds(fm.Conj, inner, inner), st.builds(fm.Disj, inner, inner)),
    max_leaves=6,
)


@given(clock_guards(), st.sampled_from(CLOCK_POINTS), st.sampled_from(CLOCK_POINTS))
def test_clock_guard_round_trip_keeps_meaning(g, x, y):
    back = parse_guard(format_guard(g), "timed")
    val = {"c": x, "d": y}
    assert gd.eval_constraint(back, val) == gd.eval_constraint(g, val)


@given(register_guards(), st.sampled_from("<=>"), st.sampled_from("<=>"))
def test_register_guard_round_trip_keeps_meaning(g, r1, r2):
    back = parse_guard(format_guard(g), "register")
    rel = {"r": r1, "s": r2}
    assert gd.eval_relations(back, rel) == gd.eval_relations(g, rel)


@given(formulas)
def test_formula_round_trip_is_exact(f):
    assert parse_formula(format_formula(f)) == f


@given(register_guards(), st.sampled_from("<=>"), st.sampled_from("<=>"))
def test_relations_agree_with_concrete_data(g, r1, r2):
    datum = Fraction(5)
    offset = {"<": 1, "=": 0, ">": -1}
    val = {"r": datum + offset[r1], "s": datum + offset[r2]}
    assert gd.eval_test(g, val, datum) == gd.eval_relations(g, {"r": r1, "s": r2})


def test_sugared_forms():
    assert parse_guard("c=1", "timed") == gd.clock_eq("c", 1)
    assert format_guard(gd.clock_eq("c", 1)) == "c=1"
    assert format_guard(gd.neq("r")) == "!=r"
    assert parse_guard("!=r & <s", "register") == gd.And(gd.neq("r"), gd.Lt("s"))


def test_order_blindness():
    assert gd.is_order_blind(gd.eq("r"))
    assert gd.is_order_blind(gd.And(gd.neq("r"), gd.eq("s")))
    assert not gd.is_order_blind(gd.Lt("r"))


def test_unknown_clock_is_reported():
    with pytest.raises(UnknownClock):
        gd.eval_constraint(gd.Lt("x", 1), {"c": 0})


@pytest.mark.parametrize("text", ["c<", "c<x", "<r", "c<1 &", "(c<1"])
def test_bad_clock_guards(text):
    with pytest.raises(ParseError):
        parse_guard(text, "timed")


def test_bad_register_guard():
    with pytest.raises(ParseError):
        parse_guard("r<1", "register")


def test_automaton_round_trip(unit_gap_automaton, first_equals_last_automaton):
    for A in (unit_gap_automaton, first_equals_last_automaton):
        B = parse_automaton(format_automaton(A))
        assert format_automaton(B) == format_automaton(A)
        assert set(B.rules) == set(A.rules)


@pytest.mark.parametrize(
    "text",
    [
        "kind: timed\nalphabet: a\nstates: q\n",
        "kind: timed\nalphabet: a\nstates: q\ninitial: q\nregisters: r\n",
        "kind: odd\nalphabet: a\nstates: q\ninitial: q\n",
        "kind: timed\nalphabet: a\nstates: q\ninitial: q\nrule: q a c<1 -> (q {})\n",
        "kind: timed\nalphabet: a\nstates: q\ninitial: q\nbogus: 1\n",
    ],
)
def test_bad_automaton_files(text):
    with pytest.raises(ParseError):
        parse_automaton(text)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as err:
        parse_automaton("kind: timed\nalphabet: a\nstates: q\ninitial: q\nrule: q a [c<] -> (q {})\n")
    assert "5" in str(err.value)

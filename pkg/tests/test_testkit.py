import json
import random

import pytest

from timedreg import automata as au
from timedreg import braids as br
from timedreg import testkit as tk
from timedreg.words import DataWord, TimedWord


def test_generators_are_seeded():
    p = tk.GenParams(seed=4)
    assert tk.gen_timed_word(p) == tk.gen_timed_word(p)
    assert tk.gen_data_word(p) == tk.gen_data_word(p)
    assert set(tk.gen_timed_automaton(p).rules) == set(tk.gen_timed_automaton(p).rules)


def test_generated_words_respect_params():
    rng = random.Random(0)
    p = tk.GenParams(min_len=2, max_len=4, alphabet_size=3)
    for _ in range(50):
        w = tk.gen_timed_word(p, rng)
        assert isinstance(w, TimedWord) and 2 <= len(w) <= 4
        assert all(not a.marked and not a.is_tick for a in w.letters)
        d = tk.gen_data_word(p, rng, extended=True)
        assert isinstance(d, DataWord)


@pytest.mark.parametrize("mode", tk.MODES)
def test_generated_automata_have_requested_mode(mode):
    rng = random.Random(mode)
    p = tk.GenParams(mode=mode)
    for _ in range(20):
        for A in (tk.gen_timed_automaton(p, rng), tk.gen_register_automaton(p, rng)):
            assert au.mode_of(A) == mode
            assert au.check_partition(A).ok
            assert len(A.variables) <= p.n_vars


def test_generated_clock_bounds_stay_below_limit():
    rng = random.Random(9)
    p = tk.GenParams(max_const=2)
    for _ in range(20):
        assert au.max_constant(tk.gen_timed_automaton(p, rng)) <= 2


def test_mutations_report_braid_status():
    rng = random.Random(1)
    kinds = set()
    status = set()
    for i in range(200):
        w = br.encode_data_as_timed(tk.gen_data_word(tk.GenParams(), rng))
        m = tk.gen_braid_mutation(w, i)
        assert m.is_braid == br.is_timed_braid(m.word)
        kinds.add(m.kind)
        status.add(m.is_braid)
    assert status == {True, False}
    assert {"unmark", "mark", "perturb", "useless"} <= kinds


def test_injected_positions_trim_away():
    rng = random.Random(2)
    for _ in range(50):
        d = br.trim(br.encode_timed_as_data(tk.gen_timed_word(tk.GenParams(), rng)))
        assert br.trim(tk.inject_useless(d, rng)) == d
        t = br.trim(br.encode_data_as_timed(tk.gen_data_word(tk.GenParams(), rng)))
        assert br.trim(tk.inject_useless(t, rng)) == t


def test_random_isomorphisms_preserve_shape():
    rng = random.Random(3)
    from timedreg import words as wd

    for _ in range(30):
        w = tk.gen_timed_word(tk.GenParams(), rng)
        assert wd.time_isomorphic(w, wd.apply_time_isomorphism(w, tk.random_time_isomorphism(w, rng)))
        d = tk.gen_data_word(tk.GenParams(), rng)
        assert wd.data_isomorphic(d, wd.apply_data_map(d, tk.random_data_map(d, rng)))


def test_suite_report_formats():
    report = tk.run_property_suite(tk.SuiteConfig(trials=3, properties=("bridge", "memo")))
    assert report.ok
    text = report.to_text().splitlines()
    assert text[0].startswith("PASS bridge: 3/3")
    data = json.loads(report.to_json())
    assert [r["name"] for r in data] == ["bridge", "memo"]


def _dualize_keeping_accepting_set(A):
    D = au.dualize(A)
    return D.replace(accepting=A.accepting)


def test_broken_complement_is_caught(tmp_path):
    config = tk.SuiteConfig(
        trials=40,
        properties=("complement",),
        overrides={"dualize": _dualize_keeping_accepting_set},
        witness_dir=str(tmp_path),
    )
    report = tk.run_property_suite(config)
    (res,) = report.results
    assert not res.ok and res.failures > 0
    assert res.witnesses
    assert res.witness_paths and (tmp_path / "complement.txt").exists()
    assert "FAIL complement" in report.to_text()


def test_witnesses_are_shrunk():
    def broken_encode(w):
        out = br.encode_timed_as_data(w)
        if len(w) > 1:
            return br.encode_timed_as_data(TimedWord(w.pairs[:1]))
        return out

    ops = tk.default_ops()
    ops["encode_timed_as_data"] = broken_encode
    res = tk.run_property("bridge", 30, seed=0, params=tk.GenParams(), ops=ops)
    assert not res.ok
    assert all("word=" in w for w in res.witnesses)


def test_unknown_property():
    with pytest.raises(KeyError):
        tk.run_property("nope", 1)

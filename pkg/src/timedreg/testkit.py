"""Seeded generators and the differential property suite.

Every generator takes a :class:`GenParams` and an optional
``random.Random``; without one it seeds a fresh generator from
``params.seed`` so equal parameters give equal outputs.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
import json
import math
from pathlib import Path
import random
import time

from . import automata as au
from . import braids as br
from . import formulas as fm
from . import guards as gd
from . import reduce as rd
from . import semantics as sem
from . import translate as tr
from . import words as wd
from .words import TICK, DataWord, Letter, TimedWord

MODES = (au.DETERMINISTIC, au.NONDETERMINISTIC, au.ALTERNATING)


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    min_len: int = 1
    max_len: int = 8
    alphabet_size: int = 2
    n_vars: int = 2
    max_const: int = 2
    n_states: int = 3
    depth: int = 2
    mode: str = "mixed"
    denominators: tuple = (2, 3, 4)
    max_datum: int = 4

    def __post_init__(self):
        for name in ("min_len", "max_len", "alphabet_size", "n_states", "depth", "max_const"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.min_len > self.max_len:
            raise ValueError("min_len exceeds max_len")
        if self.mode not in MODES + ("mixed",):
            raise ValueError(f"unknown mode {self.mode!r}")


def _rng(p, rng):
    return rng if rng is not None else random.Random(p.seed)


def bases_for(p):
    return [Letter(chr(ord("a") + i)) for i in range(p.alphabet_size)]


def _letters(p, extended):
    if not extended:
        return bases_for(p)
    return tr.extended_alphabet(bases_for(p))


# -- words ---------------------------------------------------------------------

def gen_timed_word(p, rng=None, extended=False):
    """Strictly increasing stamps with a small common denominator."""
    rng = _rng(p, rng)
    n = rng.randint(p.min_len, p.max_len)
    den = rng.choice(p.denominators)
    letters = _letters(p, extended)
    t = Fraction(rng.choice([0, 0, rng.randint(1, den)]), den)
    out = []
    for _ in range(n):
        out.append((rng.choice(letters), t))
        t += Fraction(rng.randint(1, 2 * den), den) if rng.random() < 0.3 else Fraction(rng.randint(1, den), den)
    return TimedWord(out)


def gen_data_word(p, rng=None, extended=False):
    """Small integer data so that repetitions and ties are frequent."""
    rng = _rng(p, rng)
    n = rng.randint(p.min_len, p.max_len)
    letters = _letters(p, extended)
    top = rng.randint(1, p.max_datum)
    return DataWord((rng.choice(letters), Fraction(rng.randint(0, top))) for _ in range(n))


# -- automata ------------------------------------------------------------------

def _pick_mode(p, rng):
    return rng.choice(MODES) if p.mode == "mixed" else p.mode


def _atom(rng, states, variables):
    upd = [x for x in variables if rng.random() < 0.4]
    return fm.Atom(rng.choice(states), upd)


def _formula(rng, mode, states, variables, depth, force=False):
    if mode == au.DETERMINISTIC or depth == 0 or (not force and rng.random() < 0.35):
        return _atom(rng, states, variables)
    if mode == au.NONDETERMINISTIC:
        op = fm.Disj
    elif force:
        op = fm.Conj
    else:
        op = rng.choice((fm.Conj, fm.Disj))
    left = _formula(rng, mode, states, variables, depth - 1)
    right = _formula(rng, mode, states, variables, depth - 1)
    return op(left, right)


def _guard_leaves(rng, atoms, cells, holds, depth):
    """Split the valuation space by a random decision tree.

    Returns the guards of the nonempty leaves; together they partition
    ``cells``.
    """
    leaves = []

    def grow(guard, live, d):
        if not live:
            return
        if d == 0 or not atoms or rng.random() < 0.3:
            leaves.append(guard)
            return
        a = rng.choice(atoms)
        yes = [c for c in live if holds(a, c)]
        no = [c for c in live if not holds(a, c)]
        grow(gd.conj(guard, a), yes, d - 1)
        grow(gd.conj(guard, gd.Not(a)), no, d - 1)

    grow(gd.TRUE, list(cells), depth)
    return leaves


def _gen_automaton(p, rng, kind):
    rng = _rng(p, rng)
    mode = _pick_mode(p, rng)
    states = [f"q{i}" for i in range(rng.randint(1, p.n_states))]
    n_vars = rng.randint(0, p.n_vars)
    prefix = "c" if kind == "timed" else "r"
    variables = [f"{prefix}{i}" for i in range(n_vars)]
    bases = bases_for(p)
    if kind == "timed":
        K = rng.randint(1, p.max_const)
        atoms = [cls(x, k) for x in variables for k in range(1, K + 1) for cls in (gd.Lt, gd.Le)]
        probe = au.TimedAutomaton(bases, ["s"], "s", (), variables, ())
        cells = list(probe.cells(K))
        Automaton = au.TimedAutomaton
    else:
        atoms = [cls(x) for x in variables for cls in (gd.Lt, gd.Le)]
        probe = au.RegisterAutomaton(bases, ["s"], "s", (), variables, ())
        cells = list(probe.cells())
        Automaton = au.RegisterAutomaton
    rules = []
    for q in states:
        for a in bases:
            for g in _guard_leaves(rng, atoms, cells, probe.holds, p.depth):
                rules.append(au.Rule(q, a, g, _formula(rng, mode, states, variables, p.depth)))
    if mode != au.DETERMINISTIC:
        # make sure the requested mode shows up in at least one formula
        i = rng.randrange(len(rules))
        r = rules[i]
        rules[i] = au.Rule(r.state, r.letter, r.guard, _formula(rng, mode, states, variables, p.depth, force=True))
    accepting = [q for q in states if rng.random() < 0.5]
    return Automaton(bases, states, states[0], accepting, variables, rules)


def gen_timed_automaton(p, rng=None):
    return _gen_automaton(p, rng, "timed")


def gen_register_automaton(p, rng=None):
    return _gen_automaton(p, rng, "register")


# -- braid mutations -----------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    word: object
    kind: str
    is_braid: bool


def _is_braid(w):
    return br.is_data_braid(w) if isinstance(w, DataWord) else br.is_timed_braid(w)


def _rebuild(w, pairs):
    return type(w)(pairs)


def _perturbed(w, rng, i):
    pairs = list(w.pairs)
    a, v = pairs[i]
    if isinstance(w, DataWord):
        pairs[i] = (a, v + rng.choice([-1, 1]) * Fraction(1, rng.choice([1, 2, 3])))
        return pairs
    lo = pairs[i - 1][1] if i else Fraction(0)
    hi = pairs[i + 1][1] if i + 1 < len(pairs) else v + 1
    new = lo + (hi - lo) * Fraction(rng.randint(1, 4), 5)
    if new == v or (i and new <= lo):
        return None
    pairs[i] = (a, new)
    return pairs


def _useless_tail(w, rng):
    """Append a tick that no translated automaton can take into account."""
    pairs = list(w.pairs)
    if isinstance(w, DataWord):
        return pairs + [(Letter(TICK), max(w.data) + rng.randint(1, 3))]
    last = w.stamps[-1]
    hi = math.floor(last) + 1
    fracs = {wd.frac_part(s) for s in w.stamps}
    t = last + (hi - last) * Fraction(rng.randint(1, 3), 4)
    while wd.frac_part(t) in fracs:
        t = (last + t) / 2
    return pairs + [(Letter(TICK), t)]


def gen_braid_mutation(w, seed):
    """Apply one random mutation to braid ``w`` and report whether it still is one."""
    rng = random.Random(seed)
    kinds = ["unmark", "mark", "perturb", "drop_tick", "useless"]
    rng.shuffle(kinds)
    for kind in kinds:
        pairs = None
        idx = list(range(len(w)))
        rng.shuffle(idx)
        if kind == "unmark":
            pos = [i for i in idx if w.letters[i].marked]
            if pos:
                pairs = list(w.pairs)
                pairs[pos[0]] = (w.letters[pos[0]].unmark(), w.values[pos[0]])
        elif kind == "mark":
            pos = [i for i in idx if not w.letters[i].marked]
            if pos:
                pairs = list(w.pairs)
                pairs[pos[0]] = (w.letters[pos[0]].mark(), w.values[pos[0]])
        elif kind == "perturb":
            pairs = _perturbed(w, rng, idx[0])
        elif kind == "drop_tick":
            pos = [i for i in idx if w.letters[i].is_tick]
            if pos and len(w) > 1:
                pairs = [p for i, p in enumerate(w.pairs) if i != pos[0]]
        else:
            pairs = _useless_tail(w, rng)
        if pairs:
            out = _rebuild(w, pairs)
            return Mutation(out, kind, _is_braid(out))
    return Mutation(w, "none", _is_braid(w))


# -- isomorphisms ----------------------------------------------------------------

def random_time_isomorphism(w, rng):
    fracs = sorted({wd.frac_part(t) for t in w.stamps} - {0})
    den = rng.choice([7, 11, 13, 16])
    picks = sorted(rng.sample(range(1, den * 4), len(fracs)))
    targets = [Fraction(k, den * 4) for k in picks]
    return wd.TimeIsomorphism(dict(zip(fracs, targets)))


def random_data_map(w, rng):
    values = sorted(set(w.data))
    out = []
    x = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    for _ in values:
        out.append(x)
        x += Fraction(rng.randint(1, 6), rng.randint(1, 4))
    return wd.DataMap(dict(zip(values, out)))


def inject_useless(w, rng, count=2):
    """Add useless ticks to braid ``w``; the result trims back to ``w``."""
    for _ in range(count):
        if isinstance(w, DataWord):
            choice = rng.random()
            if choice < 0.5:
                w = DataWord(list(w.pairs) + [(Letter(TICK), max(w.data) + rng.randint(1, 3))])
            else:
                w = _append_tick_factor(w)
        else:
            if rng.random() < 0.5:
                w = TimedWord(_useless_tail(w, rng))
            else:
                w = _append_tick_unit(w)
    return w


def _append_tick_factor(w):
    """Repeat the data of the last factor, all as ticks."""
    s, e = wd.ordered_partition(w)[-1]
    data = sorted(set(w.data[s:e]))
    tail = [(Letter(TICK, i == 0), d) for i, d in enumerate(data)]
    return DataWord(list(w.pairs) + tail)


def _append_tick_unit(w):
    """Copy the last unit one time unit later, all as ticks."""
    top = math.floor(w.stamps[-1])
    fracs = sorted({wd.frac_part(t) for t in w.stamps if math.floor(t) == top} | {Fraction(0)})
    extra = [(Letter(TICK, f == 0), top + 1 + f) for f in fracs]
    return TimedWord(list(w.pairs) + extra)


# -- property suite --------------------------------------------------------------

def default_ops():
    """Functions the properties are checked against; override to inject bugs."""
    return {
        "accepts": sem.accepts,
        "dualize": au.dualize,
        "timed_to_register": tr.timed_to_register,
        "register_to_timed": tr.register_to_timed,
        "encode_timed_as_data": br.encode_timed_as_data,
        "encode_data_as_timed": br.encode_data_as_timed,
        "trim": br.trim,
    }


@dataclass
class SuiteConfig:
    trials: int = 50
    seed: int = 0
    properties: tuple = ()
    params: GenParams = field(default_factory=GenParams)
    overrides: dict = field(default_factory=dict)
    witness_dir: str = None


@dataclass
class PropertyResult:
    name: str
    trials: int
    failures: int
    seed: int
    seconds: float
    witnesses: list = field(default_factory=list)
    witness_paths: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failures == 0


@dataclass
class SuiteReport:
    results: list

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def to_text(self):
        lines = []
        for r in self.results:
            status = "PASS" if r.ok else "FAIL"
            lines.append(
                f"{status} {r.name}: {r.trials - r.failures}/{r.trials} (seed {r.seed}, {r.seconds:.2f}s)"
            )
            for w in r.witnesses:
                lines.append(f"    witness: {w}")
        return "\n".join(lines)

    def to_json(self):
        return json.dumps(
            [
                {
                    "name": r.name,
                    "trials": r.trials,
                    "failures": r.failures,
                    "seed": r.seed,
                    "witnesses": [str(w) for w in r.witnesses],
                    "witness_paths": r.witness_paths,
                }
                for r in self.results
            ],
            indent=2,
        )


def _shrink(case, still_fails):
    """Drop word positions while the property keeps failing."""
    w = case["word"]
    changed = True
    while changed and len(w) > 1:
        changed = False
        for i in range(len(w)):
            try:
                smaller = type(w)(p for j, p in enumerate(w) if j != i)
            except ValueError:
                continue
            trial = dict(case, word=smaller)
            if still_fails(trial):
                case, w, changed = trial, smaller, True
                break
    return case


def _describe(case):
    parts = []
    for k, v in case.items():
        if isinstance(v, au.Automaton):
            v = f"<{v.kind} automaton, {len(v.states)} states>"
        parts.append(f"{k}={v}")
    return ", ".join(parts)


# each property: (rng, params, ops) -> case dict; check(case, ops) -> bool

def _case_timed_to_register(rng, p, ops):
    return {"A": gen_timed_automaton(p, rng), "word": gen_timed_word(p, rng)}


def _check_timed_to_register(c, ops):
    B = ops["timed_to_register"](c["A"])
    return ops["accepts"](c["A"], c["word"]) == ops["accepts"](B, ops["encode_timed_as_data"](c["word"]))


def _case_register_to_timed(rng, p, ops):
    return {"A": gen_register_automaton(p, rng), "word": gen_data_word(p, rng)}


def _check_register_to_timed(c, ops):
    B = ops["register_to_timed"](c["A"])
    return ops["accepts"](c["A"], c["word"]) == ops["accepts"](B, ops["encode_data_as_timed"](c["word"]))


def _braidish_data(rng, p):
    w = gen_data_word(p, rng)
    roll = rng.random()
    if roll < 0.35:
        return br.instrument_data(w)
    if roll < 0.7:
        return gen_braid_mutation(br.instrument_data(w), rng.randrange(1 << 30)).word
    return gen_data_word(p, rng, extended=True)


def _braidish_timed(rng, p):
    w = gen_timed_word(p, rng)
    roll = rng.random()
    if roll < 0.35:
        return br.instrument_timed(w)
    if roll < 0.7:
        return gen_braid_mutation(br.instrument_timed(w), rng.randrange(1 << 30)).word
    return gen_timed_word(p, rng, extended=True)


def _case_non_data_braid(rng, p, ops):
    return {"word": _braidish_data(rng, p)}


def _check_non_data_braid(c, ops):
    bases = bases_for(GenParams())
    N = tr.non_data_braid_automaton(bases)
    w = c["word"]
    return ops["accepts"](N, w) == (not br.is_data_braid(w)) and ops["accepts"](
        ops["dualize"](N), w
    ) == br.is_data_braid(w)


def _case_non_timed_braid(rng, p, ops):
    return {"word": _braidish_timed(rng, p)}


def _check_non_timed_braid(c, ops):
    bases = bases_for(GenParams())
    N = tr.non_timed_braid_automaton(bases)
    w = c["word"]
    return ops["accepts"](N, w) == (not br.is_timed_braid(w)) and ops["accepts"](
        ops["dualize"](N), w
    ) == br.is_timed_braid(w)


def _case_time_iso(rng, p, ops):
    w = gen_timed_word(p, rng)
    return {"A": gen_timed_automaton(p, rng), "word": w, "iso_seed": rng.randrange(1 << 30)}


def _check_time_iso(c, ops):
    w = c["word"]
    f = random_time_isomorphism(w, random.Random(c["iso_seed"]))
    return ops["accepts"](c["A"], w) == ops["accepts"](c["A"], wd.apply_time_isomorphism(w, f))


def _case_data_iso(rng, p, ops):
    w = gen_data_word(p, rng)
    return {"A": gen_register_automaton(p, rng), "word": w, "map_seed": rng.randrange(1 << 30)}


def _check_data_iso(c, ops):
    w = c["word"]
    g = random_data_map(w, random.Random(c["map_seed"]))
    return ops["accepts"](c["A"], w) == ops["accepts"](c["A"], wd.apply_data_map(w, g))


def _case_complement(rng, p, ops):
    if rng.random() < 0.5:
        return {"A": gen_timed_automaton(p, rng), "word": gen_timed_word(p, rng)}
    return {"A": gen_register_automaton(p, rng), "word": gen_data_word(p, rng)}


def _check_complement(c, ops):
    return ops["accepts"](ops["dualize"](c["A"]), c["word"]) != ops["accepts"](c["A"], c["word"])


def _case_trim_data(rng, p, ops):
    w = gen_timed_word(p, rng)
    return {"A": gen_timed_automaton(p, rng), "word": w, "inject_seed": rng.randrange(1 << 30)}


def _check_trim_data(c, ops):
    braid = ops["encode_timed_as_data"](c["word"])
    noisy = inject_useless(braid, random.Random(c["inject_seed"]))
    B = ops["timed_to_register"](c["A"])
    trimmed = ops["trim"](noisy)
    if ops["accepts"](B, noisy) != ops["accepts"](B, trimmed):
        return False
    again = br.encode_timed_as_data(br.recover_timed_word(trimmed))
    return wd.data_isomorphic(again, trimmed)


def _case_trim_timed(rng, p, ops):
    w = gen_data_word(p, rng)
    return {"A": gen_register_automaton(p, rng), "word": w, "inject_seed": rng.randrange(1 << 30)}


def _check_trim_timed(c, ops):
    braid = ops["encode_data_as_timed"](c["word"])
    noisy = inject_useless(braid, random.Random(c["inject_seed"]))
    B = ops["register_to_timed"](c["A"])
    trimmed = ops["trim"](noisy)
    if ops["accepts"](B, noisy) != ops["accepts"](B, trimmed):
        return False
    again = br.encode_data_as_timed(br.recover_data_word(trimmed))
    return wd.time_isomorphic(again, trimmed)


def _case_bridge(rng, p, ops):
    return {"word": gen_data_word(p, rng), "timed": gen_timed_word(p, rng)}


def _check_bridge(c, ops):
    w, v = c["word"], c["timed"]
    tbw = ops["encode_data_as_timed"](w)
    dbv = ops["encode_timed_as_data"](v)
    return all(
        wd.is_m_decreasing(w, m) == wd.is_m_bounded(tbw, m)
        and wd.is_m_bounded(v, m) == wd.is_m_decreasing(dbv, m)
        for m in (1, 2, 3)
    )


def _case_modes(rng, p, ops):
    if rng.random() < 0.5:
        return {"A": gen_timed_automaton(p, rng)}
    return {"A": gen_register_automaton(p, rng)}


def _check_modes(c, ops):
    A = c["A"]
    if A.kind == "timed":
        B = ops["timed_to_register"](A)
        extra = au.is_order_blind(B)
    else:
        B = ops["register_to_timed"](A)
        extra = True
    return extra and au.mode_of(A) == au.mode_of(B) and len(A.variables) == len(B.variables)


def _case_memo(rng, p, ops):
    small = replace(p, max_len=5, n_states=4)
    if rng.random() < 0.5:
        return {"A": gen_timed_automaton(small, rng), "word": gen_timed_word(small, rng)}
    return {"A": gen_register_automaton(small, rng), "word": gen_data_word(small, rng)}


def _check_memo(c, ops):
    return sem.accepts(c["A"], c["word"], memo=True) == sem.accepts(c["A"], c["word"], memo=False)


def _non_braid(rng, p, braidish, is_braid):
    while True:
        u = braidish(rng, p)
        if not is_braid(u):
            return u


def _reduction_holds(c, ops, reduce, encode):
    """Membership-level check of all four reductions on one word and one non-braid."""
    A, B, w = c["A"], c["B"], c["word"]
    u = c["other"]
    e = encode(w)
    acc = ops["accepts"]
    a, b = acc(A, w), acc(B, w)
    inc = reduce("inclusion", A, B).components
    if (a and not b) != (acc(inc["A'"], e) and not acc(inc["rhs"], e)) or not acc(inc["rhs"], u):
        return False
    eq = reduce("equality", A, B).components
    if (a == b) != (
        (acc(eq["A'"], e) <= acc(eq["rhs_B"], e)) and (acc(eq["B'"], e) <= acc(eq["rhs_A"], e))
    ):
        return False
    uni = reduce("universality", A).components["all"]
    if acc(uni, e) != a or not acc(uni, u):
        return False
    non = reduce("nonemptiness", A).components["filtered"]
    return acc(non, e) == a and not acc(non, u)


def _case_reduce_timed(rng, p, ops):
    small = replace(p, max_len=5)
    return {
        "A": gen_timed_automaton(small, rng),
        "B": gen_timed_automaton(small, rng),
        "word": gen_timed_word(small, rng),
        "other": _non_braid(rng, small, _braidish_data, br.is_data_braid),
    }


def _check_reduce_timed(c, ops):
    return _reduction_holds(c, ops, rd.reduce_timed_problem, ops["encode_timed_as_data"])


def _case_reduce_register(rng, p, ops):
    small = replace(p, max_len=5)
    return {
        "A": gen_register_automaton(small, rng),
        "B": gen_register_automaton(small, rng),
        "word": gen_data_word(small, rng),
        "other": _non_braid(rng, small, _braidish_timed, br.is_timed_braid),
    }


def _check_reduce_register(c, ops):
    return _reduction_holds(c, ops, rd.reduce_register_problem, ops["encode_data_as_timed"])


PROPERTIES = {
    "timed_to_register": (_case_timed_to_register, _check_timed_to_register),
    "register_to_timed": (_case_register_to_timed, _check_register_to_timed),
    "non_data_braid": (_case_non_data_braid, _check_non_data_braid),
    "non_timed_braid": (_case_non_timed_braid, _check_non_timed_braid),
    "time_iso": (_case_time_iso, _check_time_iso),
    "data_iso": (_case_data_iso, _check_data_iso),
    "complement": (_case_complement, _check_complement),
    "trim_data": (_case_trim_data, _check_trim_data),
    "trim_timed": (_case_trim_timed, _check_trim_timed),
    "bridge": (_case_bridge, _check_bridge),
    "modes": (_case_modes, _check_modes),
    "memo": (_case_memo, _check_memo),
    "reduce_timed": (_case_reduce_timed, _check_reduce_timed),
    "reduce_register": (_case_reduce_register, _check_reduce_register),
}


def run_property(name, trials, seed=0, params=None, ops=None, max_witnesses=3):
    params = params or GenParams()
    ops = ops or default_ops()
    make, check = PROPERTIES[name]
    rng = random.Random(f"{name}:{seed}")
    failures = 0
    witnesses = []
    began = time.perf_counter()
    for _ in range(trials):
        case = make(rng, params, ops)
        if check(case, ops):
            continue
        failures += 1
        if len(witnesses) < max_witnesses:
            if "word" in case:
                case = _shrink(case, lambda c: not check(c, ops))
            witnesses.append(_describe(case))
    return PropertyResult(name, trials, failures, seed, time.perf_counter() - began, witnesses)


def run_property_suite(config=None):
    config = config or SuiteConfig()
    ops = default_ops()
    ops.update(config.overrides)
    names = config.properties or tuple(PROPERTIES)
    results = []
    for name in names:
        res = run_property(name, config.trials, config.seed, config.params, ops)
        if config.witness_dir and res.witnesses:
            out = Path(config.witness_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{name}.txt"
            path.write_text("\n".join(res.witnesses) + "\n")
            res.witness_paths.append(str(path))
        results.append(res)
    return SuiteReport(results)

"""Line-oriented text formats for automata and reduction manifests.

Example automaton file::

    kind: timed
    alphabet: a b
    clocks: x y
    states: q0 q1
    initial: q0
    accepting: q1
    rule: q0 a [x<1 & !(y<=2)] -> (q1 {x}) | ((q0 {}) & (q1 {x y}))

Register guards use ``<r``, ``<=r``, ``=r`` and ``!=r``. Equality is
expanded when parsing and re-sugared when printing, so
``parse(print(A)) == A`` on canonical forms.
"""
from pathlib import Path
import re

from . import formulas as fm
from . import guards as gd
from .automata import RegisterAutomaton, Rule, TimedAutomaton
from .errors import ParseError
from .words import Letter

IDENT = r"[A-Za-z0-9_][A-Za-z0-9_.^~'#]*"
_TOKEN_RE = re.compile(
    rf"\s*(?:(?P<op><=|!=|<|=|&|\||!|\(|\)|\{{|\}})|(?P<id>{IDENT}))"
)


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input {text[pos:pos + 15]!r}")
        out.append(m.group("op") or m.group("id"))
        pos = m.end()
    return out


class _Tokens:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'more input'}, found {tok!r}")
        self.i += 1
        return tok

    def done(self):
        return self.i == len(self.toks)


def _is_ident(tok):
    return tok is not None and re.fullmatch(IDENT, tok) is not None


# -- guards ------------------------------------------------------------------

def parse_guard(text, kind):
    ts = _Tokens(text)
    g = _guard_and(ts, kind)
    if not ts.done():
        raise ParseError(f"trailing input in guard: {ts.peek()!r}")
    return g


def _guard_and(ts, kind):
    g = _guard_unary(ts, kind)
    while ts.peek() == "&":
        ts.take()
        g = gd.And(g, _guard_unary(ts, kind))
    return g


def _guard_unary(ts, kind):
    tok = ts.peek()
    if tok == "!":
        ts.take()
        return gd.Not(_guard_unary(ts, kind))
    if tok == "(":
        ts.take()
        g = _guard_and(ts, kind)
        ts.take(")")
        return g
    if tok == "true":
        ts.take()
        return gd.TRUE
    if kind == "register":
        op = ts.take()
        reg = ts.take()
        if op not in ("<", "<=", "=", "!=") or not _is_ident(reg):
            raise ParseError(f"bad register test {op}{reg}")
        return {"<": gd.Lt(reg), "<=": gd.Le(reg), "=": gd.eq(reg), "!=": gd.neq(reg)}[op]
    clock = ts.take()
    op = ts.take()
    const = ts.take()
    if not _is_ident(clock) or op not in ("<", "<=", "=") or not const.isdigit():
        raise ParseError(f"bad clock constraint {clock}{op}{const}")
    k = int(const)
    return {"<": gd.Lt(clock, k), "<=": gd.Le(clock, k), "=": gd.clock_eq(clock, k)}[op]


def _sugar(g):
    """Return (var, bound) when ``g`` is an equality expansion."""
    if (
        isinstance(g, gd.And)
        and isinstance(g.left, gd.Le)
        and isinstance(g.right, gd.Not)
        and isinstance(g.right.arg, gd.Lt)
        and g.left.var == g.right.arg.var
        and g.left.bound == g.right.arg.bound
    ):
        return g.left.var, g.left.bound
    return None


def format_guard(g):
    if isinstance(g, gd.Top):
        return "true"
    eqs = _sugar(g)
    if eqs:
        var, k = eqs
        return f"={var}" if k is None else f"{var}={k}"
    if isinstance(g, gd.Lt):
        return f"<{g.var}" if g.bound is None else f"{g.var}<{g.bound}"
    if isinstance(g, gd.Le):
        return f"<={g.var}" if g.bound is None else f"{g.var}<={g.bound}"
    if isinstance(g, gd.Not):
        inner = _sugar(g.arg)
        if inner and inner[1] is None:
            return f"!={inner[0]}"
        sub = format_guard(g.arg)
        if isinstance(g.arg, gd.And) and not inner:
            return f"!({sub})"
        return f"!{sub}"
    right = format_guard(g.right)
    if isinstance(g.right, gd.And) and not _sugar(g.right):
        right = f"({right})"
    return f"{format_guard(g.left)} & {right}"


# -- formulas ----------------------------------------------------------------

def parse_formula(text):
    ts = _Tokens(text)
    f = _formula_or(ts)
    if not ts.done():
        raise ParseError(f"trailing input in formula: {ts.peek()!r}")
    return f


def _formula_or(ts):
    f = _formula_and(ts)
    while ts.peek() == "|":
        ts.take()
        f = fm.Disj(f, _formula_and(ts))
    return f


def _formula_and(ts):
    f = _formula_prim(ts)
    while ts.peek() == "&":
        ts.take()
        f = fm.Conj(f, _formula_prim(ts))
    return f


def _formula_prim(ts):
    ts.take("(")
    if _is_ident(ts.peek()) and ts.peek(1) == "{":
        state = ts.take()
        ts.take("{")
        update = []
        while ts.peek() != "}":
            tok = ts.take()
            if not _is_ident(tok):
                raise ParseError(f"bad name {tok!r} in update set")
            update.append(tok)
        ts.take("}")
        ts.take(")")
        return fm.Atom(state, update)
    f = _formula_or(ts)
    ts.take(")")
    return f


def format_formula(f):
    if isinstance(f, fm.Atom):
        return f"({f.state} {{{' '.join(sorted(f.update))}}})"
    left, right = format_formula(f.left), format_formula(f.right)
    if isinstance(f, fm.Disj):
        if isinstance(f.right, fm.Disj):
            right = f"({right})"
        return f"{left} | {right}"
    if isinstance(f.left, fm.Disj):
        left = f"({left})"
    if not isinstance(f.right, fm.Atom):
        right = f"({right})"
    return f"{left} & {right}"


# -- automata ----------------------------------------------------------------

_RULE_RE = re.compile(r"(\S+)\s+(\S+)\s*\[(.*)\]\s*->\s*(.+)")


def parse_automaton(text):
    header = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno)
        key = key.strip()
        rest = rest.strip()
        if key == "rule":
            rules.append((lineno, rest))
        elif key in ("kind", "alphabet", "clocks", "registers", "states", "initial", "accepting"):
            if key in header:
                raise ParseError(f"duplicate {key!r} line", lineno)
            header[key] = rest
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    kind = header.get("kind")
    if kind not in ("timed", "register"):
        raise ParseError("kind must be 'timed' or 'register'")
    for key in ("alphabet", "states", "initial"):
        if key not in header:
            raise ParseError(f"missing {key!r} line")
    var_key = "clocks" if kind == "timed" else "registers"
    other = "registers" if kind == "timed" else "clocks"
    if other in header:
        raise ParseError(f"a {kind} automaton has no {other}")
    alphabet = [Letter.parse(t) for t in header["alphabet"].split()]
    variables = header.get(var_key, "").split()
    states = header["states"].split()
    accepting = header.get("accepting", "").split()
    parsed = []
    for lineno, body in rules:
        m = _RULE_RE.fullmatch(body)
        if not m:
            raise ParseError("rule must look like 'q a [guard] -> formula'", lineno)
        try:
            guard = parse_guard(m.group(3), kind)
            formula = parse_formula(m.group(4))
            letter = Letter.parse(m.group(2))
        except ParseError as e:
            raise ParseError(str(e), lineno) from None
        parsed.append(Rule(m.group(1), letter, guard, formula))
    cls = TimedAutomaton if kind == "timed" else RegisterAutomaton
    return cls(alphabet, states, header["initial"].strip(), accepting, variables, parsed)


def format_automaton(A):
    order = {q: i for i, q in enumerate(A.states)}
    lines = [
        f"kind: {A.kind}",
        f"alphabet: {' '.join(str(a) for a in sorted(A.alphabet))}",
        f"{A.var_label}: {' '.join(A.variables)}".rstrip(),
        f"states: {' '.join(A.states)}",
        f"initial: {A.initial}",
        f"accepting: {' '.join(q for q in A.states if q in A.accepting)}".rstrip(),
    ]
    rules = sorted(
        A.rules, key=lambda r: (order[r.state], str(r.letter), format_guard(r.guard))
    )
    for r in rules:
        lines.append(f"rule: {r.state} {r.letter} [{format_guard(r.guard)}] -> {format_formula(r.formula)}")
    return "\n".join(lines) + "\n"


def load_automaton(path):
    return parse_automaton(Path(path).read_text())


def save_automaton(A, path):
    Path(path).write_text(format_automaton(A))


# -- manifests ---------------------------------------------------------------

def format_manifest(problem, components, extra=()):
    """``components`` is a sequence of (role, path) pairs."""
    lines = [f"problem: {problem}"]
    lines.extend(f"{k}: {v}" for k, v in extra)
    lines.extend(f"component: {role} {path}" for role, path in components)
    return "\n".join(lines) + "\n"


def parse_manifest(text):
    problem = None
    components = []
    extra = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        rest = rest.strip()
        if key == "problem":
            problem = rest
        elif key == "component":
            role, path = rest.split(None, 1)
            components.append((role, path))
        else:
            extra[key] = rest
    return problem, components, extra

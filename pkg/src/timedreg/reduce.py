"""Reductions of decision problems between the two automaton models.

A timed problem about ``A`` (and ``B``) becomes a register problem about
the translated automata, restricted to data braids; symmetrically for
register problems. Each reduction returns a :class:`ReducedInstance`
holding the automata and the questions to ask about them.
"""
from dataclasses import dataclass, field
from pathlib import Path

from . import automata as au
from . import translate as tr
from .errors import ModeUnsupported
from .textio import format_manifest, parse_manifest, save_automaton, load_automaton

PROBLEMS = ("nonemptiness", "universality", "inclusion", "equality")


@dataclass
class ReducedInstance:
    """Target-model instance.

    ``components`` maps a role to an automaton. ``questions`` lists tuples
    ``("nonempty", role)``, ``("universal", role)`` or
    ``("included", left, right)``; the source answer is the conjunction of
    the answers to all questions.
    """

    problem: str
    target: str
    components: dict
    questions: list
    notes: list = field(default_factory=list)
    wiring: dict = field(default_factory=dict)


def _setup(problem, A, B, kind):
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    if A.kind != kind or (B is not None and B.kind != kind):
        raise TypeError(f"operands must be {kind} automata")
    needs_b = problem in ("inclusion", "equality")
    if needs_b != (B is not None):
        raise ValueError(f"{problem} takes {'two automata' if needs_b else 'one automaton'}")
    bases = tr.base_letters(A)
    if B is not None and tr.base_letters(B) != bases:
        raise au.AlphabetMismatch("operands must share their alphabet")
    return bases


def _reduce(problem, A, B, translate, model, target, preserve_mode):
    notes = []
    comps = {"A'": translate(A)}
    if B is not None:
        comps["B'"] = translate(B)
    comps["not_braid"] = (
        tr.non_data_braid_automaton if model == "data" else tr.non_timed_braid_automaton
    )(_setup(problem, A, B, A.kind))
    wiring = {}
    questions = []
    if problem == "inclusion":
        comps["rhs"] = au.union(comps["B'"], comps["not_braid"])
        wiring["rhs"] = "union(B', not_braid)"
        questions.append(("included", "A'", "rhs"))
    elif problem == "equality":
        comps["rhs_B"] = au.union(comps["B'"], comps["not_braid"])
        comps["rhs_A"] = au.union(comps["A'"], comps["not_braid"])
        wiring["rhs_B"] = "union(B', not_braid)"
        wiring["rhs_A"] = "union(A', not_braid)"
        questions += [("included", "A'", "rhs_B"), ("included", "B'", "rhs_A")]
    elif problem == "universality":
        comps["all"] = au.union(comps["A'"], comps["not_braid"])
        wiring["all"] = "union(A', not_braid)"
        questions.append(("universal", "all"))
    else:
        source_mode = au.mode_of(A)
        if preserve_mode and source_mode != au.ALTERNATING:
            raise ModeUnsupported(
                "the braid filter needs alternation (it complements a nondeterministic "
                f"language), so a {source_mode} nonemptiness instance cannot stay {source_mode}"
            )
        comps["braid"] = au.dualize(comps.pop("not_braid"))
        comps["filtered"] = au.intersect(comps["A'"], comps["braid"])
        wiring["filtered"] = "intersect(A', braid)"
        questions.append(("nonempty", "filtered"))
        if source_mode != au.ALTERNATING:
            mode = au.mode_of(comps["A'"])
            notes.append(
                f"A' is {mode} but the braid filter is alternating, so the intersection is alternating"
            )
    for name, C in comps.items():
        au.require_partition(C)
    return ReducedInstance(problem, target, comps, questions, notes, wiring)


def reduce_timed_problem(problem, A, B=None, preserve_mode=False):
    """Register-automaton instance equivalent to a timed problem."""
    return _reduce(problem, A, B, tr.timed_to_register, "data", "register", preserve_mode)


def reduce_register_problem(problem, A, B=None, preserve_mode=False):
    """Timed-automaton instance equivalent to a register problem."""
    return _reduce(problem, A, B, tr.register_to_timed, "timed", "timed", preserve_mode)


def _file_name(role):
    return role.replace("'", "_prime") + ".aut"


def write_instance(inst, directory):
    """Write the base components and a manifest; combined automata are described by wiring lines."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for role, C in inst.components.items():
        if role in inst.wiring:
            continue
        path = _file_name(role)
        save_automaton(C, out / path)
        files.append((role, path))
    extra = [("target", inst.target)]
    extra += [(f"wiring {k}", v) for k, v in inst.wiring.items()]
    extra += [("question", " ".join(q)) for q in inst.questions]
    extra += [("note", n) for n in inst.notes]
    text = format_manifest(inst.problem, files, extra)
    (out / "manifest.txt").write_text(text)
    return out / "manifest.txt"


def read_instance(directory):
    """Load a manifest written by :func:`write_instance`, rebuilding the wired automata."""
    base = Path(directory)
    text = (base / "manifest.txt").read_text()
    problem, files, _ = parse_manifest(text)
    comps = {role: load_automaton(base / path) for role, path in files}
    target = None
    wiring = {}
    questions = []
    notes = []
    for line in text.splitlines():
        key, _, rest = line.partition(":")
        rest = rest.strip()
        if key == "target":
            target = rest
        elif key.startswith("wiring "):
            wiring[key[len("wiring "):]] = rest
        elif key == "question":
            questions.append(tuple(rest.split()))
        elif key == "note":
            notes.append(rest)
    for role, expr in wiring.items():
        op, _, args = expr.partition("(")
        left, right = (a.strip() for a in args.rstrip(")").split(","))
        comps[role] = {"union": au.union, "intersect": au.intersect}[op](comps[left], comps[right])
    return ReducedInstance(problem, target, comps, questions, notes, wiring)

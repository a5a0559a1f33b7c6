"""Command-line front end.

A command exits with 0 when its answer is positive and 1 when it is
negative. Bad input of any kind exits with 2.

Word files hold whitespace-separated ``(letter,value)`` pairs. An
optional first line ``kind: timed`` or ``kind: data`` fixes how the word
is read; otherwise the context decides.
"""
import argparse
from pathlib import Path
import sys

from . import automata as au
from . import braids as br
from . import reduce as rd
from . import semantics as sem
from . import testkit as tk
from . import translate as tr
from .errors import TimedRegError, WordError
from .textio import format_automaton, load_automaton
from .words import format_word, parse_data_word, parse_timed_word

OK, NO, ERROR = 0, 1, 2


class _Fail(Exception):
    """Abort with exit code 2 and a message."""


def _read_text(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _Fail(f"cannot read {path}: {e.strerror}") from None


def _split_word_header(text):
    lines = text.strip().splitlines()
    if lines and lines[0].strip().startswith("kind:"):
        kind = lines[0].split(":", 1)[1].strip()
        if kind not in ("timed", "data"):
            raise _Fail(f"unknown word kind {kind!r}")
        return kind, "\n".join(lines[1:])
    return None, text


def _read_word(path, kind=None):
    """Parse a word file; ``kind`` is the expected model, if known."""
    declared, body = _split_word_header(_read_text(path))
    if declared and kind and declared != kind:
        raise _Fail(f"{path} holds a {declared} word, expected a {kind} word")
    kind = declared or kind or "timed"
    parse = parse_timed_word if kind == "timed" else parse_data_word
    return parse(body)


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _word_model(automaton_kind):
    return "timed" if automaton_kind == "timed" else "data"


# -- commands --------------------------------------------------------------------

def cmd_validate(args):
    if args.kind == "automaton":
        A = load_automaton(args.path)
        report = au.check_partition(A)
        if report.ok:
            print(f"valid {A.kind} automaton: {len(A.states)} states, mode {au.mode_of(A)}")
            return OK
        print(f"guards do not partition the valuations:\n{report}", file=sys.stderr)
        return NO
    declared, body = _split_word_header(_read_text(args.path))
    model = args.model or declared or "timed"
    try:
        w = (parse_timed_word if model == "timed" else parse_data_word)(body)
    except WordError as e:
        print(f"invalid {model} word: {e}", file=sys.stderr)
        return NO
    print(f"valid {model} word of length {len(w)}")
    return OK


def cmd_accepts(args):
    A = load_automaton(args.automaton)
    try:
        w = _read_word(args.word, _word_model(A.kind))
    except WordError as e:
        raise _Fail(f"word does not fit a {A.kind} automaton: {e}") from None
    verdict = sem.accepts(A, w)
    if args.explain:
        Path(args.explain).write_text(_render_witness(sem.explain(A, w)))
    print("accept" if verdict else "reject")
    return OK if verdict else NO


def _render_witness(witness):
    lines = [f"verdict: {'accept' if witness.accepted else 'reject'}"]
    seen = {}

    def node(x, depth):
        pad = "  " * depth
        label = f"phase {x.phase} state {x.state} valuation {_fmt_val(x.valuation)}"
        if id(x) in seen:
            lines.append(f"{pad}{label} (see above)")
            return
        seen[id(x)] = True
        if x.body is None:
            lines.append(f"{pad}{label} end")
            return
        lines.append(f"{pad}{label}")
        body(x.body, depth + 1)

    def body(b, depth):
        pad = "  " * depth
        if isinstance(b, sem.Branch):
            for side, sub in b.choices:
                lines.append(f"{pad}{b.op} {side}")
                body(sub, depth + 1)
        else:
            lines.append(f"{pad}move {b.atom.state} {{{' '.join(sorted(b.atom.update))}}}")
            node(b.child, depth + 1)

    node(witness.root, 0)
    return "\n".join(lines) + "\n"


def _fmt_val(val):
    return "(" + ", ".join(str(x) for x in val) + ")"


def cmd_translate(args):
    A = load_automaton(args.automaton)
    expected = {"t2r": "timed", "r2t": "register"}[args.direction]
    if A.kind != expected:
        raise _Fail(f"direction {args.direction} needs a {expected} automaton, got {A.kind}")
    B = tr.timed_to_register(A) if args.direction == "t2r" else tr.register_to_timed(A)
    _write(format_automaton(B), args.output)
    summary = f"states={len(B.states)} {B.var_label}={len(B.variables)} mode={au.mode_of(B)}"
    if B.kind == "register":
        summary += f" order-blind={'yes' if au.is_order_blind(B) else 'no'}"
    print(summary, file=sys.stderr if not args.output else sys.stdout)
    return OK


def cmd_encode(args):
    source = "timed" if args.direction == "db" else "data"
    w = _read_word(args.word, source)
    out = br.encode_timed_as_data(w) if args.direction == "db" else br.encode_data_as_timed(w)
    _write(format_word(out) + "\n", args.output)
    return OK


def cmd_braid(args):
    declared, _ = _split_word_header(_read_text(args.word))
    model = args.model or declared or "data"
    w = _read_word(args.word, model)
    yes = br.is_data_braid(w) if model == "data" else br.is_timed_braid(w)
    print(f"{model} braid: {'yes' if yes else 'no'}")
    if args.trim and yes:
        print(format_word(br.trim(w)))
    return OK if yes else NO


def cmd_nonbraid(args):
    make = tr.non_data_braid_automaton if args.model == "data" else tr.non_timed_braid_automaton
    A = make(args.alphabet)
    if args.dual:
        A = au.dualize(A)
    _write(format_automaton(A), args.output)
    return OK


def cmd_reduce(args):
    A = load_automaton(args.automata[0])
    B = load_automaton(args.automata[1]) if len(args.automata) > 1 else None
    reduce = rd.reduce_timed_problem if A.kind == "timed" else rd.reduce_register_problem
    inst = reduce(args.problem, A, B, preserve_mode=args.preserve_mode)
    path = rd.write_instance(inst, args.output)
    print(f"wrote {path}")
    return OK


def cmd_gen(args):
    params = tk.GenParams(
        seed=args.seed,
        max_len=args.max_len,
        n_vars=args.vars,
        max_const=args.max_const,
        n_states=args.states,
        mode=args.mode,
    )
    if args.what == "timed-word":
        text = format_word(tk.gen_timed_word(params)) + "\n"
    elif args.what == "data-word":
        text = format_word(tk.gen_data_word(params)) + "\n"
    elif args.what == "timed-automaton":
        text = format_automaton(tk.gen_timed_automaton(params))
    else:
        text = format_automaton(tk.gen_register_automaton(params))
    _write(text, args.output)
    return OK


def cmd_suite(args):
    config = tk.SuiteConfig(
        trials=args.trials,
        seed=args.seed,
        properties=tuple(args.properties or ()),
        witness_dir=args.witness_dir,
    )
    report = tk.run_property_suite(config)
    print(report.to_text())
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return OK if report.ok else NO


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="timedreg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a word or an automaton file")
    s.add_argument("path")
    s.add_argument("--kind", choices=["word", "automaton"], default="automaton")
    s.add_argument("--model", choices=["timed", "data"], help="word model (default: header or timed)")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("accepts", help="decide membership")
    s.add_argument("automaton")
    s.add_argument("word")
    s.add_argument("--explain", metavar="FILE", help="write the winning strategy tree")
    s.set_defaults(func=cmd_accepts)

    s = sub.add_parser("translate", help="timed to register (t2r) or back (r2t)")
    s.add_argument("automaton")
    s.add_argument("--direction", choices=["t2r", "r2t"], required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("encode", help="db: timed word to data braid, tb: data word to timed braid")
    s.add_argument("word")
    s.add_argument("--direction", choices=["db", "tb"], required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("braid", help="braid check, optionally trimming")
    s.add_argument("word")
    s.add_argument("--model", choices=["timed", "data"])
    s.add_argument("--trim", action="store_true")
    s.set_defaults(func=cmd_braid)

    s = sub.add_parser("nonbraid-automaton", help="automaton for the non-braids")
    s.add_argument("--model", choices=["timed", "data"], required=True)
    s.add_argument("--alphabet", nargs="+", required=True)
    s.add_argument("--dual", action="store_true", help="emit the braid recognizer instead")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_nonbraid)

    s = sub.add_parser("reduce", help="reduce a decision problem to the other model")
    s.add_argument("--problem", choices=rd.PROBLEMS, required=True)
    s.add_argument("automata", nargs="+")
    s.add_argument("-o", "--output", required=True, help="output directory")
    s.add_argument("--preserve-mode", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("gen", help="random words and automata")
    s.add_argument(
        "--what",
        choices=["timed-word", "data-word", "timed-automaton", "register-automaton"],
        required=True,
    )
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-len", type=int, default=8)
    s.add_argument("--vars", type=int, default=2)
    s.add_argument("--max-const", type=int, default=2)
    s.add_argument("--states", type=int, default=3)
    s.add_argument("--mode", default="mixed", choices=list(tk.MODES) + ["mixed"])
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("suite", help="run the differential property suite")
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--properties", nargs="*", choices=sorted(tk.PROPERTIES))
    s.add_argument("--json", metavar="FILE")
    s.add_argument("--witness-dir")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    try:
        return args.func(args)
    except (_Fail, OSError, TimedRegError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
    return ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success or true, 1 false (or a negative answer), 2 usage
error, 3 input error, 4 cap exceeded or instance too large.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bitset import bits_of, mask_of
from .errors import CapExceeded, InputError, LowRankError, NotASeparation, NotASuffix, TooLarge
from .evaluator import EvalConfig, Evaluator
from .flips import apply_flip, build_h_digraph, h_params
from .graph import FIGURE1_NAMES, ColoredGraph, generate, parse_graph
from .logic import parse_formula
from .lowrank import (DEFAULT_SUBSET_CAP, brute_lowrank, default_suffix_cap, lowrank_via_suffixes,
                      seed_for_suffix, seed_from_digraph, suffixes)
from .rank import capture_separation, rank_measures, vc_dimension

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _graph(path: str) -> ColoredGraph:
    return parse_graph(_read_text(path))


def _vertex_list(text: str, g: ColoredGraph) -> list:
    """Comma-separated vertex indices or names; the empty string is the empty list."""
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok.lstrip("-").isdigit():
            v = int(tok)
        else:
            try:
                v = g.index(tok)
            except (KeyError, ValueError):
                raise InputError(f"unknown vertex {tok!r}") from None
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
        out.append(v)
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _cap(args) -> int:
    return args.cap if args.cap is not None else default_suffix_cap()


# ---------------------------------------------------------------- commands

def cmd_check(args) -> int:
    g = _graph(args.graph)
    doc = parse_formula(_read_text(args.formula))
    if not doc.is_sentence:
        raise UsageError("check needs a sentence")
    cfg = EvalConfig(args.strategy, args.subset_cap, args.cap, args.trace, args.threads)
    ev = Evaluator(g, doc, cfg)
    result = ev.run()
    if args.trace:
        sys.stderr.write(ev.trace_lines())
    _emit({"result": result})
    return EXIT_OK if result else EXIT_FALSE


def cmd_rank(args) -> int:
    g = _graph(args.graph)
    x = mask_of(_vertex_list(args.set, g))
    _emit(rank_measures(g, x).to_json())
    return EXIT_OK


def cmd_enum_lowrank(args) -> int:
    g = _graph(args.graph)
    if args.method == "brute":
        fam = brute_lowrank(g, args.r, args.subset_cap)
    else:
        fam = lowrank_via_suffixes(g, args.r, _cap(args), args.threads, args.subset_cap)
    _emit({"r": args.r, "method": args.method, "count": len(fam),
           "sets": fam.to_json(with_provenance=args.provenance)})
    return EXIT_OK


def cmd_flip(args) -> int:
    g = _graph(args.graph)
    doc_text = _read_text(args.spec_file) + "\nforall x . x = x\n"
    doc = parse_formula(doc_text)
    if not doc.flipspecs:
        raise InputError("spec file declares no flip")
    spec = doc.spec(args.name) if args.name else doc.flipspecs[0]
    if spec is None:
        raise InputError(f"no flip named {args.name!r}")
    params = _vertex_list(args.params, g)
    h = apply_flip(g, spec, params, require_symmetric=args.symmetric)
    _emit(h.to_json())
    return EXIT_OK


def _h_from_args(args, g):
    ap = mask_of(_vertex_list(args.a_plus, g))
    am = mask_of(_vertex_list(args.a_minus, g))
    return ap, am, build_h_digraph(g, ap, am, args.r)


def cmd_suffixes(args) -> int:
    g = _graph(args.graph)
    _, _, (h, reps, adm) = _h_from_args(args, g)
    fam = suffixes(h, _cap(args))
    _emit({
        "admissible": adm,
        "phi_plus": list(reps.phi_plus),
        "phi_minus": list(reps.phi_minus),
        "arcs": [list(a) for a in h.arcs()],
        "suffixes": fam.to_json(),
    })
    return EXIT_OK


def cmd_seed(args) -> int:
    g = _graph(args.graph)
    ap, am, (h, _, _) = _h_from_args(args, g)
    if args.set is not None:
        x = mask_of(_vertex_list(args.set, g))
        res = seed_for_suffix(h, g, h_params(ap, am), x)
        _emit(res.to_json())
    else:
        b = _vertex_list(args.b or "", g)
        _emit({"b": b, "seed": seed_from_digraph(h, b).to_json()})
    return EXIT_OK


def cmd_capture(args) -> int:
    g = _graph(args.graph)
    x = mask_of(_vertex_list(args.set, g))
    try:
        sep = capture_separation(g, x, args.t)
    except NotASeparation as e:
        _emit({"error": "NotASeparation", "message": str(e), "edge": list(e.edge)})
        return EXIT_FALSE
    _emit(sep.to_json())
    return EXIT_OK


def cmd_vc(args) -> int:
    g = _graph(args.graph)
    _emit({"vc": vc_dimension(g, args.subset_cap)})
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {}
    for key in ("n", "m", "s", "t", "p"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.family == "random":
        if args.seed is None:
            raise UsageError("gen random needs an explicit --seed")
        params["seed"] = args.seed
    g = generate(args.family, **params)
    text = json.dumps(g.to_json(), sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


FIGURE1_PHI_PLUS = {"w1": None, "w2": "a1p", "w3": "a2p", "w4": "a2p"}
FIGURE1_PHI_MINUS = {"w1": "a1m", "w2": "a1m", "w3": "a1m", "w4": None}
FIGURE1_SUFFIXES = [["a1p", "a2p", "w4"], ["a1p", "a2p", "w3", "w4"], ["a1p", "a2p", "w2", "w3", "w4"]]


def figure1_checks() -> list:
    """Golden checks on the 8-vertex example; each entry is (name, passed, detail)."""
    g = generate("figure1")
    idx = {name: i for i, name in enumerate(FIGURE1_NAMES)}
    name = lambda v: None if v is None else FIGURE1_NAMES[v]  # noqa: E731
    ap = mask_of([idx["a1p"], idx["a2p"]])
    am = mask_of([idx["a1m"], idx["a2m"]])
    h, reps, adm = build_h_digraph(g, ap, am, 2)
    phi_p = {w: name(reps.phi_plus[idx[w]]) for w in FIGURE1_PHI_PLUS}
    phi_m = {w: name(reps.phi_minus[idx[w]]) for w in FIGURE1_PHI_MINUS}
    found = sorted(([name(v) for v in bits_of(x)] for x in suffixes(h).sets if x not in (0, g.full)),
                   key=lambda s: (len(s), s))
    return [
        ("admissible", adm, adm),
        ("phi_plus", phi_p == FIGURE1_PHI_PLUS, phi_p),
        ("phi_minus", phi_m == FIGURE1_PHI_MINUS, phi_m),
        ("arc_w2_w3", h.has_arc(idx["w2"], idx["w3"]) and not h.has_arc(idx["w3"], idx["w2"]), None),
        ("suffixes", found == FIGURE1_SUFFIXES, found),
    ]


def cmd_selftest(args) -> int:
    checks = figure1_checks()
    _emit({"checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks],
           "passed": all(ok for _, ok, _ in checks)})
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_FALSE


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for parameter sweeps")
    common.add_argument("--cap", type=int, default=None,
                        help="suffix/low-rank count cap (default: LRMSO_CAP or 1000000)")
    common.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP,
                        help="largest n for exhaustive subset searches")

    p = argparse.ArgumentParser(prog="lowrank-mso", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="evaluate a sentence on a graph")
    c.add_argument("graph")
    c.add_argument("formula")
    c.add_argument("--strategy", choices=("brute", "suffix"), default="brute")
    c.add_argument("--trace", action="store_true", help="JSON lines of quantifier decisions on stderr")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("rank", parents=[common], help="rank measures of a cut")
    c.add_argument("graph")
    c.add_argument("--set", required=True, help="comma-separated vertices of X")
    c.set_defaults(func=cmd_rank)

    c = sub.add_parser("enum-lowrank", parents=[common], help="all sets of cutrank <= r")
    c.add_argument("graph")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--method", choices=("brute", "suffix"), default="suffix")
    c.add_argument("--provenance", action="store_true")
    c.set_defaults(func=cmd_enum_lowrank)

    c = sub.add_parser("flip", parents=[common], help="apply a declared flip")
    c.add_argument("graph")
    c.add_argument("--spec-file", required=True, help="file with flip declarations")
    c.add_argument("--name", help="flip to apply (default: first declared)")
    c.add_argument("--params", default="")
    c.add_argument("--symmetric", action="store_true", help="fail unless the realized relation is symmetric")
    c.set_defaults(func=cmd_flip)

    for cmd, fn, helptext in (("suffixes", cmd_suffixes, "suffixes of H for a parameter pair"),
                              ("seed", cmd_seed, "seed from sample vertices, or a seed for a suffix")):
        c = sub.add_parser(cmd, parents=[common], help=helptext)
        c.add_argument("graph")
        c.add_argument("--a-plus", required=True)
        c.add_argument("--a-minus", required=True)
        c.add_argument("--r", type=int, required=True)
        if cmd == "seed":
            g = c.add_mutually_exclusive_group()
            g.add_argument("--b", help="sample vertices")
            g.add_argument("--set", help="suffix to parameterize")
        c.set_defaults(func=fn)

    c = sub.add_parser("capture", parents=[common], help="separation capturing X")
    c.add_argument("graph")
    c.add_argument("--set", required=True)
    c.add_argument("--t", type=int, required=True)
    c.set_defaults(func=cmd_capture)

    c = sub.add_parser("vc", parents=[common], help="VC dimension of the neighbourhood system")
    c.add_argument("graph")
    c.set_defaults(func=cmd_vc)

    c = sub.add_parser("gen", parents=[common], help="write a generated graph as JSON")
    c.add_argument("family")
    for key in ("n", "m", "s", "t"):
        c.add_argument(f"--{key}", type=int)
    c.add_argument("--p", type=float)
    c.add_argument("--seed", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_gen)

    c = sub.add_parser("selftest", parents=[common], help="golden checks on the 8-vertex example")
    c.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.threads < 1 or (args.cap is not None and args.cap < 1) or args.subset_cap < 1:
        sys.stderr.write("error: --threads, --cap and --subset-cap must be positive\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except (CapExceeded, TooLarge) as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_CAP
    except (InputError, NotASuffix) as e:
        code = getattr(e, "code", type(e).__name__)
        sys.stderr.write(f"{code}: {e}\n")
        return EXIT_INPUT
    except LowRankError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

import argparse
import json
import logging
import sys

import numpy as np

from fvectortools import (
    bounds,
    corpus,
    exterior,
    fixtures,
    io,
    lprime,
    properties,
    symmetric,
)
from fvectortools.fields import DEFAULT_SEED, GenericityError
from fvectortools.monomial import Monomial, parse_monomials
from fvectortools.poset import FVector, RankedPoset, load_poset


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


class Report:
    """Outcome of a command: exit code, text for humans and a JSON object."""

    def __init__(self, code, text, obj):
        self.code = code
        self.text = text
        self.obj = obj


def _read(path):
    with open(path, "r") as handle:
        return handle.read()


def _poset(path):
    return load_poset(_read(path))


def _pposet(path):
    obj = json.loads(_read(path), cls=io.JSONDecoder)
    if isinstance(obj, symmetric.PPoset):
        return obj
    if isinstance(obj, RankedPoset):
        return symmetric.seed_from_geometric(obj)
    raise ValueError(f"{path} is not a poset document")


def _monomials(path):
    return parse_monomials(_read(path))


def _faces(path):
    obj = json.loads(_read(path))
    if isinstance(obj, dict):
        obj = obj.get("faces")
    if not isinstance(obj, list):
        raise ValueError(f"{path} needs a list of faces or a 'faces' entry")
    return [frozenset(face) for face in obj]


def _verdict_report(name, verdict):
    text = f"{name}: {verdict}"
    if not verdict and verdict.witness:
        text += f"\nwitness: {verdict.witness}"
    obj = dict(verdict.as_dict(), property=name)
    return Report(EXIT_OK if verdict else EXIT_VIOLATION, text, obj)


def _poset_report(P, extra=""):
    text = str(P) + f"\nf-vector: {P.f_vector()}" + extra
    return Report(EXIT_OK, text, P)


# bounds


def run_bounds_check(options):
    f = FVector.from_string(options.fvector)
    check = bounds.check_kk if options.kind == "kk" else bounds.check_macaulay
    verdict = check(f)
    lines = ["   k    f_k  bound f_{k-1}"]
    for k, f_k, value, previous in verdict.details:
        lines.append(f"{k:>4} {f_k:>6} {value:>6} {previous:>6}")
    lines.append(str(verdict))
    obj = dict(verdict.as_dict(), f_vector=list(f), kind=options.kind)
    return Report(EXIT_OK if verdict else EXIT_VIOLATION, "\n".join(lines), obj)


def run_bounds_expand(options):
    n, k = options.n, options.k
    expansion = bounds.cascade_expand(n, k)
    terms = " + ".join(f"C({n_j},{j})" for n_j, j in expansion)
    kk = bounds.kk_shadow_bound(n, k)
    macaulay = bounds.macaulay_shadow_bound(n, k)
    text = (
        f"{n} = {terms}\nkk shadow bound: {kk}\n"
        f"macaulay shadow bound: {macaulay}"
    )
    obj = {
        "n": n,
        "k": k,
        "terms": [list(t) for t in expansion],
        "kk_shadow_bound": kk,
        "macaulay_shadow_bound": macaulay,
    }
    return Report(EXIT_OK, text, obj)


def run_bounds_min_shadow(options):
    n, k = options.n, options.k
    value = bounds.brute_min_shadow(n, k, options.mode, options.universe)
    text = f"minimum shadow of {n} {options.mode} of size {k}: {value}"
    obj = {"n": options.n, "k": options.k, "mode": options.mode, "min_shadow": value}
    return Report(EXIT_OK, text, obj)


# check

POSET_CHECKS = {
    "diamond": properties.check_diamond,
    "star": properties.check_condition_star,
    "parallelogram": properties.check_parallelogram,
    "geometric": properties.check_geometric,
    "min-atom-rank": properties.check_min_atom_rank,
    "atomic": properties.check_atomic,
}


def run_check(options):
    name = options.property
    if name in POSET_CHECKS:
        return _verdict_report(name, POSET_CHECKS[name](_poset(options.input)))
    if name in ("shadow-kk", "shadow-macaulay"):
        kind = name.split("-")[1]
        report = properties.verify_shadow_theorem(_poset(options.input), kind)
        verdict = "PASS" if report else "FAIL"
        return Report(
            EXIT_OK if report else EXIT_VIOLATION,
            f"{report}\n{name}: {verdict}",
            report,
        )
    if name == "shifted":
        verdict = properties.check_shifted(_faces(options.input))
    else:
        verdict = properties.check_order_ideal(_monomials(options.input))
    return _verdict_report(name, verdict)


# lprime


def _family(L, family):
    if family.startswith("explicit:"):
        document = json.loads(_read(family[len("explicit:") :]))
        generators = {
            l: [lprime.Multichain.from_label(L, g) for g in gs]
            for l, gs in document.items()
        }
        return lprime.FamilySpec.explicit(generators)
    try:
        return corpus.LPRIME_SPECS[family]()
    except KeyError:
        raise ValueError(f"unknown family {family!r}")


def run_lprime_build(options):
    L = _poset(options.input)
    return _poset_report(lprime.build_lprime(L, _family(L, options.family)))


def run_lprime_encode(options):
    encoding = lprime.encode_multicomplex(_monomials(options.input))
    lines = [f"{m} -> {label}" for m, label in sorted(encoding.bijection.items())]
    report = _poset_report(encoding.lprime, "\n" + "\n".join(lines))
    report.obj = {
        "carrier": encoding.carrier,
        "lprime": encoding.lprime,
        "bijection": encoding.bijection,
    }
    return report


def run_lprime_tree(options):
    return _poset_report(lprime.tree_lattice(json.loads(_read(options.input))))


# shift


def _shift_report(result, f, seeds):
    if isinstance(result, exterior.SimplicialFamily):
        separator = exterior.label_separator(result.vertices())
        lines = [
            f"{k}: "
            + " ".join(exterior.face_label(s, separator) if s else "∅" for s in faces)
            for k, faces in result.by_degree().items()
        ]
        obj = dict(result.as_dict())
    else:
        ordered = sorted(result, key=Monomial.sort_key)
        lines = [" ".join(str(m).replace("x", "y") for m in ordered)]
        obj = {"monomials": [list(m.exponents) for m in ordered]}
    lines.append(f"f-vector: {f}")
    obj.update(f_vector=list(f), seeds=list(seeds))
    return Report(EXIT_OK, "\n".join(lines), obj)


def _seeds(options):
    return [s for s in (options.seed, options.seed2) if s is not None]


def run_shift_exterior(options):
    L = _poset(options.input)
    result = exterior.shift_exterior(L, options.seed, options.seed2)
    return _shift_report(result, result.f_vector(), _seeds(options))


def run_shift_bjorner(options):
    L = _poset(options.input)
    ordering = options.order.split(",") if options.order else None
    result = exterior.bjorner_delta(L, ordering)
    report = _shift_report(result, result.f_vector(), [])
    report.obj["ordering"] = list(ordering or L.atoms)
    return report


def run_shift_symmetric(options):
    P = _pposet(options.input)
    if options.truncations:
        shifts = symmetric.shift_truncations(P, options.seed)
        lines = []
        for r, shift in enumerate(shifts):
            ordered = sorted(shift, key=Monomial.sort_key)
            monomials = " ".join(str(m).replace("x", "y") for m in ordered)
            lines.append(f"r={r}: {monomials}")
        obj = {
            "truncations": [
                [list(m.exponents) for m in sorted(s, key=Monomial.sort_key)]
                for s in shifts
            ]
        }
        return Report(EXIT_OK, "\n".join(lines), obj)
    result = symmetric.shift_symmetric(P, options.seed, options.seed2)
    return _shift_report(result, P.f_vector(), _seeds(options))


# pposet


def _pposet_report(P):
    lines = [str(P), f"f-vector: {P.f_vector()}"]
    lines += [f"{x}: rank {P.carrier.rank[x]}" for x in P.carrier]
    return Report(EXIT_OK, "\n".join(lines), P)


def run_pposet_seed(options):
    return _pposet_report(symmetric.seed_from_geometric(_poset(options.input)))


def run_pposet_extend(options):
    P = _pposet(options.input)
    m = Monomial.from_string(options.monomial)
    return _pposet_report(symmetric.extend(P, m, options.variable))


def run_pposet_multicomplex(options):
    monomials = _monomials(options.input)
    return _pposet_report(symmetric.PPoset.from_multicomplex(monomials))


# corpus


def run_corpus_fuzz(options):
    summary = corpus.fuzz_corpus(
        options.seed,
        options.count,
        options.max_elements,
        options.max_rank,
        options.max_width,
        with_lprime=options.lprime,
    )
    return Report(EXIT_OK if summary else EXIT_VIOLATION, str(summary), summary)


def run_corpus_geometric(options):
    rng = np.random.default_rng(options.seed)
    return _poset_report(
        corpus.random_geometric(rng, options.max_atoms, options.max_rank)
    )


# fixtures


def run_fixtures_list(options):
    names = sorted(fixtures.FIXTURES)
    return Report(EXIT_OK, "\n".join(names), names)


def run_fixtures_emit(options):
    # fixture documents are always JSON
    options.json = True
    return Report(EXIT_OK, None, fixtures.get(options.name))


def run_fixtures_verify(options):
    checks = fixtures.verify(options.seed)
    lines = []
    for c in checks:
        line = f"{'PASS' if c.passed else 'FAIL'} {c.name}"
        lines.append(line if c.passed else f"{line}: {c.detail}")
    obj = [c._asdict() for c in checks]
    code = EXIT_OK if all(c.passed for c in checks) else EXIT_VIOLATION
    return Report(code, "\n".join(lines), obj)


def _common(parser):
    parser.add_argument(
        "-o",
        "--output",
        help="output to file (if no file specified, print to terminal)",
        dest="output_file",
        metavar="FILE",
    )
    parser.add_argument(
        "--json",
        help=(
            "provide the report in JSON format "
            "(default yes if output file specified, no otherwise) "
        ),
        action=argparse.BooleanOptionalAction,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        help="log progress to stderr (repeat for debug output)",
        action="count",
        default=0,
    )


def _seed_options(parser, second=True):
    parser.add_argument(
        "--seed",
        help=f"seed of the random stream (default {DEFAULT_SEED})",
        type=int,
        default=DEFAULT_SEED,
    )
    if second:
        parser.add_argument(
            "--seed2",
            help="second seed; the results for both seeds must agree",
            type=int,
        )


def _command(subparsers, name, handler, help):
    parser = subparsers.add_parser(name, help=help, description=help)
    _common(parser)
    parser.set_defaults(handler=handler)
    return parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="python -m fvectortools",
        description=(
            "Face numbers of ranked meet semi-lattices: Kruskal-Katona and "
            "Macaulay bounds, structural property checks, the multichain "
            "construction and algebraic shifting."
        ),
    )
    groups = parser.add_subparsers(dest="group", metavar="COMMAND", required=True)

    group = groups.add_parser("bounds", help="f-vector inequalities")
    commands = group.add_subparsers(dest="command", metavar="ACTION", required=True)
    for kind in ("kk", "macaulay"):
        sub = _command(
            commands,
            kind,
            run_bounds_check,
            f"check the {'Kruskal-Katona' if kind == 'kk' else 'Macaulay'} "
            "inequalities of an f-vector",
        )
        sub.add_argument(
            "--fvector",
            help="comma-separated f-vector starting with f_-1 = 1",
            required=True,
        )
        sub.set_defaults(kind=kind)
    sub = _command(commands, "expand", run_bounds_expand, "cascade expansion of n")
    sub.add_argument("n", type=int)
    sub.add_argument("k", type=int)
    sub = _command(
        commands,
        "min-shadow",
        run_bounds_min_shadow,
        "exact minimum shadow by search",
    )
    sub.add_argument("n", type=int)
    sub.add_argument("k", type=int)
    sub.add_argument("--mode", choices=["sets", "monomials"], default="sets")
    sub.add_argument("--universe", type=int, help="ground set size (default n + k)")

    group = groups.add_parser("check", help="structural properties")
    commands = group.add_subparsers(dest="command", metavar="PROPERTY", required=True)
    inputs = {name: "poset JSON file" for name in POSET_CHECKS}
    inputs.update(
        {
            "shadow-kk": "poset JSON file",
            "shadow-macaulay": "poset JSON file",
            "shifted": "JSON file with a list of faces",
            "order-ideal": "monomial file, one exponent vector per line",
        }
    )
    for name, kind in inputs.items():
        sub = _command(commands, name, run_check, f"check the {name} property")
        sub.add_argument("input", help=kind, metavar="FILE")
        sub.set_defaults(property=name)

    group = groups.add_parser("lprime", help="the multichain construction")
    commands = group.add_subparsers(dest="command", metavar="ACTION", required=True)
    sub = _command(commands, "build", run_lprime_build, "build L' from a poset")
    sub.add_argument("input", help="poset JSON file", metavar="FILE")
    sub.add_argument(
        "--family",
        help="rank-bounded, chains, identity or explicit:<file>",
        default="rank-bounded",
    )
    sub = _command(
        commands,
        "encode-multicomplex",
        run_lprime_encode,
        "realize an order ideal of monomials as L'",
    )
    sub.add_argument("input", help="monomial file", metavar="FILE")
    sub = _command(commands, "tree", run_lprime_tree, "the lattice of a rooted tree")
    sub.add_argument("input", help="tree JSON file", metavar="FILE")

    group = groups.add_parser("shift", help="algebraic shifting")
    commands = group.add_subparsers(dest="command", metavar="KIND", required=True)
    sub = _command(commands, "exterior", run_shift_exterior, "exterior shifting")
    sub.add_argument("input", help="geometric poset JSON file", metavar="FILE")
    _seed_options(sub)
    sub = _command(
        commands, "bjorner", run_shift_bjorner, "complex of lex-least atom sets"
    )
    sub.add_argument("input", help="geometric poset JSON file", metavar="FILE")
    sub.add_argument("--order", help="comma-separated atom ids")
    sub = _command(commands, "symmetric", run_shift_symmetric, "symmetric shifting")
    sub.add_argument(
        "input", help="PPoset or geometric poset JSON file", metavar="FILE"
    )
    _seed_options(sub)
    sub.add_argument(
        "--truncations",
        help="shift every rank truncation and check that they are nested",
        action="store_true",
    )

    group = groups.add_parser("pposet", help="generalized multicomplexes")
    commands = group.add_subparsers(dest="command", metavar="ACTION", required=True)
    sub = _command(commands, "seed", run_pposet_seed, "seed from a geometric poset")
    sub.add_argument("input", help="geometric poset JSON file", metavar="FILE")
    sub = _command(commands, "extend", run_pposet_extend, "add x_a m above m")
    sub.add_argument("input", help="PPoset JSON file", metavar="FILE")
    sub.add_argument("monomial", help="exponent vector of m, e.g. 1,0,0")
    sub.add_argument("variable", help="variable index a, from 1", type=int)
    sub = _command(
        commands,
        "from-multicomplex",
        run_pposet_multicomplex,
        "build an order ideal of monomials as a PPoset",
    )
    sub.add_argument("input", help="monomial file", metavar="FILE")

    group = groups.add_parser("corpus", help="random corpora")
    commands = group.add_subparsers(dest="command", metavar="ACTION", required=True)
    sub = _command(
        commands, "fuzz", run_corpus_fuzz, "fuzz the property implications"
    )
    _seed_options(sub, second=False)
    sub.add_argument("--count", type=int, default=100)
    sub.add_argument("--max-elements", type=int, default=12)
    sub.add_argument("--max-rank", type=int, default=4)
    sub.add_argument(
        "--max-width", type=int, default=4, help="width 1 gives chains only"
    )
    sub.add_argument(
        "--lprime",
        help="also build and check L' of diamond members (default yes)",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    sub = _command(
        commands, "geometric", run_corpus_geometric, "a random geometric poset"
    )
    _seed_options(sub, second=False)
    sub.add_argument("--max-atoms", type=int, default=6)
    sub.add_argument("--max-rank", type=int, default=3)

    group = groups.add_parser("fixtures", help="built-in posets with known answers")
    commands = group.add_subparsers(dest="command", metavar="ACTION", required=True)
    _command(commands, "list", run_fixtures_list, "list the fixture names")
    sub = _command(commands, "emit", run_fixtures_emit, "print a fixture as JSON")
    sub.add_argument("name", choices=sorted(fixtures.FIXTURES))
    sub = _command(
        commands, "verify", run_fixtures_verify, "recompute the documented facts"
    )
    _seed_options(sub, second=False)
    return parser


def _configure_logging(verbose):
    if verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
        logging.basicConfig(
            stream=sys.stderr,
            level=level,
            format="%(levelname)s %(name)s: %(message)s",
        )
        logging.getLogger("fvectortools").setLevel(level)


def main(args=None):
    parser = build_parser()
    options = parser.parse_args(args)  # if args == None, uses sys.argv[1:]

    if options.json is None:
        options.json = options.output_file is not None
    _configure_logging(options.verbose)

    try:
        report = options.handler(options)
    except GenericityError as err:
        print(f"genericity failure: {err}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT

    s = io.dumps(report.obj) if options.json else report.text
    if options.output_file is None:
        print(s)
    else:
        with open(options.output_file, "w") as handle:
            handle.write(s)
    return report.code


if __name__ == "__main__":
    sys.exit(main())

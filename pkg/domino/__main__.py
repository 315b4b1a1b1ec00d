import argparse
import json
import logging
import random
import sys
from pathlib import Path

from .errors import ConstructionError, DominoError
from .exact import domatic_ktuple_exact, gamma_ktuple, gamma_ktuple_bnb, gamma_ktuple_bruteforce
from .families import (
    OmegaParams,
    build_omega,
    build_omega_prime_tree,
    build_psi,
    build_theta,
    full_structure_witness,
    random_omega_params,
)
from .gadget import gadget_gamma_x2, parse_dimacs_cnf, sat_gadget
from .graph import emit_edge_list, emit_graph6, k1_corona_tower, parse_graph6, read_graph
from .settings import Settings
from .slater import remark_spider_tree, remark_star_path_graph, slater_report
from .verify import THEOREMS, Failure, VerifyOptions, recheck, verify_theorem

logger = logging.getLogger(__name__)

SCHEMA = "domino/1"
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3


class UsageError(Exception):
    """Arguments parsed but do not make sense together."""


def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text()


def _write_text(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_json(payload: dict, path: str | None = None) -> None:
    _write_text(json.dumps({"schema": SCHEMA, **payload}, indent=2, ensure_ascii=False) + "\n", path)


def _emit_graph(G, fmt: str, path: str | None = None) -> None:
    _write_text(emit_graph6(G) + "\n" if fmt == "graph6" else emit_edge_list(G), path)


def _pairs(text: str) -> list[tuple[str, str]]:
    """Parse 'u-w,u-w,...'."""
    pairs = []
    for item in filter(None, text.split(",")):
        first, sep, second = item.partition("-")
        if not sep:
            raise UsageError(f"Expected 'u-w' pairs, got {item!r}")
        pairs.append((first.strip(), second.strip()))
    return pairs


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in filter(None, text.split(","))]
    except ValueError:
        raise UsageError(f"Expected comma-separated integers, got {text!r}") from None


# Subcommands


def cmd_slater(args) -> int:
    G = read_graph(_read_text(args.input))
    _emit_json(slater_report(G).to_dict(), args.output)
    return EXIT_OK


def cmd_gamma(args) -> int:
    G = read_graph(_read_text(args.input))
    if args.method == "brute-force":
        certificate = gamma_ktuple_bruteforce(G, args.k)
    elif args.method == "bnb":
        certificate = gamma_ktuple_bnb(G, args.k, args.node_budget or Settings().node_budget)
    else:
        certificate = gamma_ktuple(G, args.k, args.node_budget or Settings().node_budget)
    _emit_json(certificate.to_dict(), args.output)
    return EXIT_OK


def cmd_domatic(args) -> int:
    G = read_graph(_read_text(args.input))
    _emit_json(domatic_ktuple_exact(G, args.k).to_dict(), args.output)
    return EXIT_OK


def cmd_full(args) -> int:
    G = read_graph(_read_text(args.input))
    domatic = domatic_ktuple_exact(G, 1)
    witness = full_structure_witness(G)
    _emit_json(
        {
            "full": domatic.value == G.min_degree + 1,
            "min_degree": G.min_degree,
            "domatic_number": domatic.value,
            "witness": None
            if witness is None
            else {"vertex": witness.vertex, "partition": [list(p) for p in witness.partition]},
        },
        args.output,
    )
    return EXIT_OK


def cmd_gen(args) -> int:
    family = args.family
    if family == "omega":
        if args.params:
            data = json.loads(_read_text(args.params))
            params = OmegaParams(
                x_count=data["x_count"],
                y_count=data["y_count"],
                matching=tuple(tuple(p) for p in data["matching"]),
                pendants=tuple(data["pendants"]),
                x_neighbors=tuple(tuple(p) for p in data["x_neighbors"]),
            )
        else:
            params = random_omega_params(random.Random(args.seed))
        G = build_omega(params).graph
    elif family == "omega-prime":
        G = build_omega_prime_tree(args.a, _ints(args.stars), _pairs(args.connectors)).graph
    elif family == "psi":
        G = build_psi(args.k, args.r, args.q, args.seed)
    elif family == "theta":
        parts = [parse_graph6(code) for code in args.parts.split(",")]
        try:
            cross = [(int(u), int(w)) for u, w in _pairs(args.cross)]
        except ValueError:
            raise UsageError(f"Expected integer cross edges, got {args.cross!r}") from None
        targets = _ints(args.targets) if args.targets else None
        G = build_theta(parts, args.i, args.v, cross, targets)
    elif family == "remark1":
        G = remark_star_path_graph(args.b)
    elif family == "remark2":
        G = remark_spider_tree(args.b)
    elif family == "tower":
        H = read_graph(_read_text(args.input))
        tower = k1_corona_tower(H, args.k)
        if args.format == "graph6":
            _write_text("".join(emit_graph6(Ht) + "\n" for Ht in tower), args.output)
        else:
            _write_text("".join(emit_edge_list(Ht) for Ht in tower), args.output)
        return EXIT_OK
    else:
        raise UsageError(f"Unknown family {family!r}")
    _emit_graph(G, args.format, args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    F = parse_dimacs_cnf(_read_text(args.input))
    G, labels = sat_gadget(F)
    _emit_graph(G, "graph6", args.output)
    if args.labels:
        _emit_json(labels.to_dict(), args.labels)
    return EXIT_OK


def cmd_gadget_solve(args) -> int:
    F = parse_dimacs_cnf(_read_text(args.input))
    jobs = args.jobs or Settings().jobs
    _emit_json(gadget_gamma_x2(F, jobs=jobs).to_dict(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    settings = Settings()
    options = VerifyOptions(
        seed=args.seed if args.seed is not None else settings.seed,
        jobs=args.jobs or settings.jobs,
        progress=settings.progress and sys.stderr.isatty() and not args.quiet,
    )
    if args.recheck:
        recorded = json.loads(_read_text(args.recheck))
        outcomes = []
        for data in recorded.get("failures", []):
            detail = recheck(args.theorem, Failure.from_dict(data))
            outcomes.append({"graph6": data["graph6"], "detail": detail, "reproduced": detail is not None})
        _emit_json({"theorem": args.theorem, "rechecked": outcomes}, args.output)
        return EXIT_VERIFY_FAILED if any(o["reproduced"] for o in outcomes) else EXIT_OK

    n_max = args.n_max if args.n_max is not None else settings.n_max
    report = verify_theorem(args.theorem, n_max, options)
    _emit_json(report.to_dict(), args.output)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_convert(args) -> int:
    G = read_graph(_read_text(args.input))
    _emit_graph(G, args.to, args.output)
    return EXIT_OK


def cmd_config(args) -> int:
    settings = Settings()
    if args.action == "set":
        if args.key is None or args.value is None:
            raise UsageError("config set needs a key and a value")
        try:
            settings.set_from_text(args.key, args.value)
        except KeyError:
            raise UsageError(f"Unknown setting {args.key!r}; known: {', '.join(Settings.DEFAULTS)}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        settings.sync()
    _emit_json({"settings": settings.as_dict()}, None)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domino",
        description="Exact double and k-tuple domination, Slater bounds and domatic partitions",
    )
    parser.add_argument("--debug", action="store_true", help="Log search details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="graph6 or edge-list file (default: stdin)")
        p.add_argument("-o", "--output", help="Output file (default: stdout)")
        p.set_defaults(handler=handler)
        return p

    graph_command("slater", cmd_slater, "Slater-type bounds as JSON")

    p = graph_command("gamma", cmd_gamma, "Exact k-tuple domination number with certificate")
    p.add_argument("--k", type=_positive, default=2)
    p.add_argument("--method", choices=("auto", "brute-force", "bnb"), default="auto")
    p.add_argument("--node-budget", type=_positive, help="Branch-and-bound node limit")

    p = graph_command("domatic", cmd_domatic, "Exact k-tuple domatic partition")
    p.add_argument("--k", type=_positive, default=1)

    graph_command("full", cmd_full, "Domatic fullness test with structure witness")

    p = sub.add_parser("gen", help="Generate a member of a graph family")
    p.add_argument(
        "family", choices=("omega", "omega-prime", "psi", "theta", "remark1", "remark2", "tower")
    )
    p.add_argument("input", nargs="?", help="Base graph for 'tower' (default: stdin)")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("graph6", "edge-list"), default="graph6")
    p.add_argument("--params", help="omega: JSON parameter file (default: random draw)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=int, default=1, help="omega-prime: number of P2 copies")
    p.add_argument("--stars", default="", help="omega-prime: star leaf counts, e.g. 3,2")
    p.add_argument("--connectors", default="", help="omega-prime: anchor pairs, e.g. p0-p2,p1-c0")
    p.add_argument("--k", type=_positive, default=2)
    p.add_argument("--r", type=_positive, default=2)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("--parts", default="", help="theta: graph6 codes of the parts, comma separated")
    p.add_argument("--i", type=int, default=0, help="theta: part holding the isolated vertex")
    p.add_argument("--v", type=int, default=0, help="theta: isolated vertex, local to its part")
    p.add_argument("--cross", default="", help="theta: extra edges, e.g. 1-3,2-4")
    p.add_argument("--targets", default="", help="theta: neighbours of v, one per other part")
    p.add_argument("--b", type=_positive, default=1, help="remark1/remark2 size parameter")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("reduce", help="Build the reduction gadget of a DIMACS CNF")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--labels", help="Write vertex roles as JSON")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("gadget-solve", help="Decide whether the gadget has a 2a double dominating set")
    p.add_argument("input", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--jobs", type=_positive)
    p.set_defaults(handler=cmd_gadget_solve)

    p = sub.add_parser("verify", help="Check a statement over an exhaustive or seeded universe")
    p.add_argument("theorem", help=f"One of: {', '.join(THEOREMS)}")
    p.add_argument("--n-max", type=_positive)
    p.add_argument("--jobs", type=_positive)
    p.add_argument("--seed", type=int)
    p.add_argument("--recheck", help="Re-run the failures of an earlier report")
    p.add_argument("--quiet", action="store_true", help="No progress bar")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("convert", help="Convert between graph6 and edge-list")
    p.add_argument("input", nargs="?")
    p.add_argument("--to", choices=("graph6", "edge-list"), default="graph6")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("config", help="Show or change stored defaults")
    p.add_argument("action", nargs="?", choices=("show", "set"), default="show")
    p.add_argument("key", nargs="?")
    p.add_argument("value", nargs="?")
    p.set_defaults(handler=cmd_config)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.WARNING,
        format="[domino] %(levelname)-7s | %(name)s | %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"domino: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DominoError, OSError, ValueError, KeyError) as exc:
        if isinstance(exc, ConstructionError):
            logger.debug("Construction rejected", exc_info=True)
        print(f"domino: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

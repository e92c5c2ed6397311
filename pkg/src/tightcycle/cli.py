"""``tightcycle`` command line.

Exit codes: 0 success (cycle found, witness valid), 1 negative answer
(no cycle, invalid witness), 2 bad input.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import generators as gens
from .cycles import Kind, SearchParams, density_increment_search, find_cycle_of_length, assemble_cycle
from .errors import FormatError, PreconditionError, TightCycleError, TooLarge
from .expander import ExpanderParams, expander_cover, extract_expander, fmt_number
from .formats import (certificates_csv, experiment_writer, format_cycle, format_dense,
                      format_witness, parse_cycle)
from .hypergraph import format_hypergraph, make_r_partite, parse_hypergraph
from .linegraph import from_hypergraph
from .oracle import DEFAULT_MAX_VERTICES, brute_force_tight_cycle, validate_tight_cycle

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_hypergraph(path: str):
    try:
        return parse_hypergraph(_read(path))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_linegraph(path: str, seed: int):
    H = _load_hypergraph(path)
    if H.labels is None:
        H = make_r_partite(H, seed=seed)
    return H, from_hypergraph(H)


def _search_params(args) -> SearchParams:
    return SearchParams(lam=args.lam, d=args.dmin, K=args.K, epsilon=args.epsilon,
                        seed=args.seed, exact_threshold=args.exact_threshold)


# -- commands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    kind, vals = args.kind, args.values
    try:
        if kind == "star":
            H = gens.gen_star(int(vals[0]), int(vals[1]))
        elif kind == "multipartite":
            H = gens.gen_complete_multipartite([int(v) for v in vals])
        elif kind == "grid":
            H = gens.gen_full_grid(int(vals[0]), int(vals[1]))
        elif kind == "cycle":
            H = gens.gen_tight_cycle(int(vals[0]), int(vals[1]))
        elif kind == "random-partite":
            H = gens.gen_random_rpartite(int(vals[0]), int(vals[1]), float(vals[2]), args.seed)
        else:
            H = gens.gen_random_uniform(int(vals[0]), int(vals[1]), int(vals[2]), args.seed)
    except (IndexError, ValueError) as exc:
        raise InputError(f"gen {kind}: {exc or 'missing values'}") from None
    if H.labels is not None and H.part_sizes() is None:
        H = H.relabel_contiguous()[0]
    _write(args.output, format_hypergraph(H))
    return EXIT_OK


def cmd_stats(args) -> int:
    H, G = _load_linegraph(args.input, args.seed)
    s = G.stats()
    row = {"r": H.r, "vertices": H.n, "edges": H.num_edges, "n": s.num_vertices,
           "p": s.num_blocks, "density": fmt_number(s.density), "delta": s.min_degree}
    if args.format == "csv":
        text = ",".join(row) + "\n" + ",".join(str(v) for v in row.values()) + "\n"
    else:
        text = "".join(f"{k}={v}\n" for k, v in row.items())
    _write(args.output, text)
    return EXIT_OK


def cmd_extract_expander(args) -> int:
    _, G = _load_linegraph(args.input, args.seed)
    if G.n == 0:
        raise InputError("graph has no edges")
    from .cycles import default_lambda

    lam = args.lam if args.lam is not None else default_lambda(G.n)
    eps = args.epsilon if args.epsilon is not None else Fraction(1, 10)
    params = ExpanderParams(lam, args.dmin, eps)
    try:
        if args.cover:
            pieces = expander_cover(G, params, args.exact_threshold)
        else:
            pieces = [extract_expander(G, params, args.exact_threshold)]
    except TightCycleError as exc:
        print(f"extract-expander: {exc}", file=sys.stderr)
        return EXIT_NO
    certs = [c for _, c in pieces]
    if args.format == "csv":
        _write(args.output, certificates_csv(certs))
    else:
        _write(args.output, "".join(format_hypergraph(H.to_hypergraph()) for H, _ in pieces))
        if args.cert:
            _write(args.cert, certificates_csv(certs))
    return EXIT_OK


def cmd_find_cycle(args) -> int:
    H, G = _load_linegraph(args.input, args.seed)
    params = _search_params(args)
    try:
        if args.length is not None:
            out = find_cycle_of_length(G, args.length, params)
        elif args.mode == "assemble":
            out = assemble_cycle(G, params)
        else:
            out = density_increment_search(G, params)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    if out.kind is Kind.CYCLE:
        _write(args.output, format_cycle(H.r, out.cycle))
        return EXIT_OK
    if out.kind is Kind.DENSE:
        _write(args.output, format_dense(out.subgraph, out.required_min_degree))
    else:
        chain = " ".join(f"{c.n}:{fmt_number(c.density)}" for c in out.chain)
        _write(args.output, f"NONE stage={out.stage.value}" + (f" chain={chain}" if chain else "") + "\n")
    return EXIT_NO


def cmd_verify(args) -> int:
    H = _load_hypergraph(args.graph)
    try:
        tag, r, seq = parse_cycle(_read(args.witness))
    except FormatError as exc:
        raise InputError(f"{args.witness}: {exc}") from None
    if r is not None and r != H.r:
        print(f"verify: witness has r={r}, graph has r={H.r}", file=sys.stderr)
        return EXIT_NO
    ok = all(0 <= v < H.n for v in seq) and validate_tight_cycle(H, seq)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NO


def cmd_oracle(args) -> int:
    H = _load_hypergraph(args.input)
    try:
        w = brute_force_tight_cycle(H, args.max_len, args.max_vertices)
    except TooLarge as exc:
        raise InputError(str(exc)) from None
    if w is None:
        _write(args.output, "NONE\n")
        return EXIT_NO
    _write(args.output, format_witness(w))
    return EXIT_OK


def _experiment_cell(cell):
    r, m, p, lam, K, seed, mode, timing = cell
    H = gens.gen_random_rpartite(m, r, p, seed)
    G = from_hypergraph(H)
    params = SearchParams(lam=lam, K=K, seed=seed)
    t0 = time.perf_counter()
    out = assemble_cycle(G, params) if mode == "assemble" else density_increment_search(G, params)
    wall = time.perf_counter() - t0
    return [r, m, p, "auto" if lam is None else fmt_number(lam), fmt_number(Fraction(K)), seed,
            G.n, fmt_number(G.density), G.min_degree, out.kind.value,
            "" if out.cycle is None else len(out.cycle), out.stage.value, len(out.chain),
            f"{wall:.6f}" if timing else ""]


def cmd_experiment(args) -> int:
    lams = args.lam_grid or [None]
    cells = [(args.r, m, p, lam, K, seed, args.mode, not args.no_timing)
             for m, p, lam, K in itertools.product(args.m, args.p, lams, args.K_grid)
             for seed in range(args.seed, args.seed + args.runs)]
    if args.parallel > 1:
        with ProcessPoolExecutor(args.parallel) as pool:
            rows = list(pool.map(_experiment_cell, cells, chunksize=4))
    else:
        rows = [_experiment_cell(c) for c in cells]
    if args.output in (None, "-"):
        w = experiment_writer(sys.stdout)
        w.writerows(rows)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            experiment_writer(fh).writerows(rows)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=_fraction, default=None,
                   help="expansion factor (default 1/(2 log2 n))")
    p.add_argument("--dmin", type=_fraction, default=None, help="degree floor d (default: measured density)")
    p.add_argument("--K", type=_fraction, default=Fraction(2), help="shrink factor for dense pieces")
    p.add_argument("--epsilon", type=_fraction, default=None)
    p.add_argument("--exact-threshold", type=int, default=None,
                   help="largest n checked exhaustively (env TIGHTCYCLE_EXACT_THRESHOLD)")
    p.add_argument("--parallel", type=_positive_int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tightcycle", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated hypergraph")
    p.add_argument("kind", choices=["star", "multipartite", "grid", "cycle", "random-partite", "random"])
    p.add_argument("values", nargs="*", help="star N R | multipartite S1 .. Sr | grid M R | cycle L R | "
                                             "random-partite M R P | random N R E")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="line-graph size, density and minimum degree")
    p.add_argument("input")
    p.add_argument("--format", choices=["hg", "csv"], default="hg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("extract-expander", help="extract an expander (or a cover) from the line graph")
    p.add_argument("input")
    _add_search_flags(p)
    p.add_argument("--cover", action="store_true")
    p.add_argument("--format", choices=["hg", "csv"], default="hg")
    p.add_argument("--cert", help="also write the certificate CSV here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract_expander)

    p = sub.add_parser("find-cycle", help="search for a tight cycle")
    p.add_argument("input")
    _add_search_flags(p)
    p.add_argument("--mode", choices=["assemble", "increment"], default="increment")
    p.add_argument("--length", type=int, default=None, help="exact cycle length L (multiple of r)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_find_cycle)

    p = sub.add_parser("verify", help="check a TC/TCW file against a hypergraph")
    p.add_argument("graph")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive tight-cycle search on a small hypergraph")
    p.add_argument("input")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="sweep random r-partite instances and write CSV")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--m", type=int, nargs="+", default=[4])
    p.add_argument("--p", type=float, nargs="+", default=[0.5])
    p.add_argument("--lambda", dest="lam_grid", type=_fraction, nargs="+", default=None)
    p.add_argument("--K", dest="K_grid", type=_fraction, nargs="+", default=[Fraction(2)])
    p.add_argument("--runs", type=_positive_int, default=5)
    p.add_argument("--mode", choices=["assemble", "increment"], default="increment")
    p.add_argument("--parallel", type=_positive_int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave wall_time empty (byte-stable output)")
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"tightcycle {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

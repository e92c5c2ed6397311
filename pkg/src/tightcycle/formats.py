"""Text formats for cycles, witnesses, dense-subgraph certificates and CSV reports."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError
from .expander import CERT_CSV_COLUMNS, ExpanderCertificate, fmt_number
from .hypergraph import _header_fields, _int, format_hypergraph, parse_hypergraph_lines, significant_lines
from .linegraph import LineGraph

EXPERIMENT_VERSION = "# tightcycle-experiment v1"
EXPERIMENT_COLUMNS = (
    "r", "m", "p", "lambda", "K", "seed", "n", "density", "delta",
    "outcome", "cycle_length", "stage", "chain_depth", "wall_time",
)


def format_cycle(r: int, seq: Sequence[int]) -> str:
    """``TC r=<r> L=<L>`` and the coordinate ids in cyclic order on one line."""
    return f"TC r={r} L={len(seq)}\n" + " ".join(str(v) for v in seq) + "\n"


def format_witness(seq: Sequence[int]) -> str:
    return f"TCW l={len(seq)}\n" + " ".join(str(v) for v in seq) + "\n"


def parse_cycle(text: str) -> tuple[str, int | None, tuple[int, ...]]:
    """Read a TC or TCW file; returns ``(tag, r or None, ids)``."""
    lines = significant_lines(text)
    if not lines:
        raise FormatError("empty input", 1)
    lineno, head = lines[0]
    tag = head.split()[0]
    if tag == "TC":
        fields = _header_fields(head, lineno, "TC", ("r", "L"))
        r = _int(fields["r"], lineno, "r")
        length = _int(fields["L"], lineno, "L")
    elif tag == "TCW":
        fields = _header_fields(head, lineno, "TCW", ("l",))
        r = None
        length = _int(fields["l"], lineno, "l")
    else:
        raise FormatError("expected a 'TC' or 'TCW' header", lineno)
    ids = [_int(tok, ln, "vertex id") for ln, body in lines[1:] for tok in body.split()]
    if len(ids) != length:
        last = lines[-1][0]
        raise FormatError(f"header announces {length} ids, found {len(ids)}", last)
    return tag, r, tuple(ids)


def format_dense(G: LineGraph, required: Fraction | None = None) -> str:
    """``DS`` stats line followed by the subgraph in hypergraph format."""
    req = "none" if required is None else fmt_number(Fraction(required))
    head = f"DS n={G.n} p={G.p} density={fmt_number(G.density)} delta={G.min_degree} required={req}\n"
    return head + format_hypergraph(G.to_hypergraph())


def parse_dense(text: str):
    lines = significant_lines(text)
    if not lines:
        raise FormatError("empty input", 1)
    lineno, head = lines[0]
    fields = _header_fields(head, lineno, "DS", ("n", "p", "density", "delta", "required"))
    H = parse_hypergraph_lines(lines[1:])
    return {k: v for k, v in fields.items()}, H


def certificates_csv(certs: Iterable[ExpanderCertificate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CERT_CSV_COLUMNS)
    for c in certs:
        w.writerow(c.csv_row())
    return buf.getvalue()


def experiment_writer(stream) -> csv.writer:
    stream.write(EXPERIMENT_VERSION + "\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(EXPERIMENT_COLUMNS)
    return w


def read_experiment(text: str) -> list[dict[str, str]]:
    lines = text.splitlines()
    if not lines or lines[0] != EXPERIMENT_VERSION:
        raise FormatError(f"expected '{EXPERIMENT_VERSION}'", 1)
    return list(csv.DictReader(lines[1:]))

"""JSON encodings shared by the CLI and the fixture corpus.

Rationals travel as strings (``"3/7"``); vectors as arrays; matrices as
row-major arrays of arrays. Parsing accepts JSON numbers too, reading
them through their decimal text.
"""

from __future__ import annotations

from fractions import Fraction

from .core import ConvexProtocol, Dist, StochMatrix, SwapSeq, fmt, to_decimal, to_scalar


class MalformedInput(ValueError):
    """Input that cannot be parsed at all (as opposed to a domain rejection)."""


def parse_scalar(x) -> Fraction:
    try:
        return to_scalar(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational: {x!r}") from exc


def parse_vector(obj) -> list[Fraction]:
    if not isinstance(obj, list):
        raise MalformedInput("expected a JSON array")
    return [parse_scalar(x) for x in obj]


def parse_dist(obj) -> Dist:
    return Dist(parse_vector(obj))


def parse_rows(obj) -> list[list[Fraction]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise MalformedInput("expected an array of arrays")
    rows = [[parse_scalar(x) for x in r] for r in obj]
    if any(len(r) != len(rows) for r in rows):
        raise MalformedInput("matrix is not square")
    return rows


def vector_json(v) -> list[str]:
    return [fmt(x) for x in v]


def matrix_json(M) -> list[list[str]]:
    rows = M.rows if isinstance(M, StochMatrix) else M
    return [[fmt(x) for x in row] for row in rows]


def swaps_json(seq: SwapSeq) -> list[list[int]]:
    return [[i, j] for i, j in seq.pairs]


def protocol_json(c: ConvexProtocol) -> dict:
    return {"branches": [{"weight": fmt(w), "swaps": swaps_json(s)} for w, s in c.branches]}


def parse_protocol(obj, d: Dist) -> ConvexProtocol:
    try:
        branches = [
            (parse_scalar(b["weight"]), SwapSeq.from_pairs(d, b["swaps"])) for b in obj["branches"]
        ]
    except (KeyError, TypeError) as exc:
        raise MalformedInput("bad protocol document") from exc
    return ConvexProtocol(tuple(branches))


def path_json(path) -> list[dict]:
    return [{"i": t.i, "j": t.j, "lambda": fmt(t.lam)} for t in path.steps]


def decimalize(obj, digits: int):
    """Copy of a JSON document with every rational string shown as a decimal."""
    if isinstance(obj, dict):
        return {k: decimalize(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decimalize(v, digits) for v in obj]
    if isinstance(obj, str):
        try:
            return to_decimal(Fraction(obj), digits)
        except (ValueError, ZeroDivisionError):
            return obj
    return obj

"""Self-checking corpus of counterexamples and golden objects.

Each fixture is a JSON file under ``data/fixtures``. Besides the numbers it
stores an ``expect`` table mapping verdict names to values; loading the
corpus recomputes every verdict with the library and raises
:class:`FixtureSelfCheckFailed` on any disagreement.

Schema (all rationals as strings)::

    name, kind, summary      identification
    d                        equilibrium
    p, q                     optional source and target distributions
    M                        optional matrix (row-major)
    params                   the pinned parameter values
    expect                   verdict name -> expected JSON value
    extremes, products       (extreme-list) named matrices and swap words
    vertex_words, segment    (separation-point) named swap words, segment ends

Swap words are written in matrix-product order: the last pair acts first.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

from .core import Dist, SwapSeq, is_d_stochastic, is_quasi_uniform, rank_order, two_level_ratio
from .errors import FixtureSelfCheckFailed, Rejected, ThermoError
from .eto import emulate_thermal_op, length_one_membership
from .lpdecomp import convex_decompose
from .majorization import thermo_majorizes
from .polytope import enumerate_extremes
from .serialize import parse_dist, parse_rows, parse_scalar
from .weto import reach_strong, reach_weak, search_canonical_path


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    summary: str
    d: Dist
    p: Dist | None = None
    q: Dist | None = None
    M: tuple | None = None
    params: dict[str, Fraction] = field(default_factory=dict)
    expect: dict[str, Any] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)

    def verdicts(self) -> dict[str, Any]:
        """Recompute every verdict named in ``expect``."""
        return {key: VERDICTS[key](self) for key in self.expect}

    def check(self) -> list[str]:
        """Descriptions of verdicts that disagree with the stored ones."""
        got = self.verdicts()
        return [
            f"{self.name}.{k}: expected {v!r}, got {got[k]!r}"
            for k, v in self.expect.items()
            if got[k] != v
        ]

    @property
    def target(self) -> Dist | None:
        """``q``, or for a separation point the midpoint of its segment."""
        if self.q is not None or self.kind != "separation-point":
            return self.q
        a, b = (self._word_point(w) for w in self.data["segment"])
        return Dist((x + y) / 2 for x, y in zip(a, b))

    def _word_point(self, label: str) -> tuple:
        return SwapSeq.from_pairs(self.d, self.data["vertex_words"][label]).apply_to(self.p.values)


# ---------------------------------------------------------------- verdicts


def _refusal(fn, fx: Fixture) -> str:
    try:
        fn(fx.p, fx.target, fx.d)
    except ThermoError as exc:
        return exc.reason
    return "none"


def _top_level_survives(fx: Fixture, max_len: int = 3) -> bool:
    n = fx.d.n
    top = rank_order(fx.d)[0]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for length in range(1, max_len + 1):
        for word in itertools.product(pairs, repeat=length):
            if SwapSeq.from_pairs(fx.d, word).apply_to(fx.p.values)[top] == 0:
                return False
    return True


def _extremes_match(fx: Fixture) -> bool:
    stored = {tuple(tuple(r) for r in parse_rows(m)) for m in fx.data["extremes"].values()}
    return stored == {m.rows for m in enumerate_extremes(fx.d)}


def _products_match(fx: Fixture) -> bool:
    for label, word in fx.data["products"].items():
        want = tuple(tuple(r) for r in parse_rows(fx.data["extremes"][label]))
        if SwapSeq.from_pairs(fx.d, word).matrix().rows != want:
            return False
    return True


def _strong_emulation(fx: Fixture) -> bool:
    try:
        return emulate_thermal_op(fx.M, fx.d).matrix().rows == fx.M
    except ThermoError:
        return False


def _length_one(fx: Fixture) -> str:
    try:
        length_one_membership(fx.M, fx.d)
    except Rejected as exc:
        return exc.reason
    return "accepted"


def _grid_search(fx: Fixture) -> str:
    report = search_canonical_path(fx.M, fx.d, grid=64, max_pairs=6)
    if report.found:
        return "found"
    return "inconclusive" if report.undetermined else "not-found"


def _segment_in_cone(fx: Fixture) -> bool:
    labels = list(fx.data["vertex_words"])
    verts = [fx._word_point(lab) for lab in labels]
    if not all(thermo_majorizes(fx.p, Dist(v), fx.d) for v in verts):
        return False
    q = fx.target
    return thermo_majorizes(fx.p, q, fx.d) and convex_decompose(q.values, verts) is not None


# -------------------------------------------------------- parameter pins


def _pin_support_block(fx: Fixture) -> bool:
    da, db, dg = fx.d[0], fx.d[1], fx.d[2]
    a, b = fx.params["a"], fx.params["b"]
    n = fx.d.n
    return (
        da == max(fx.d)
        and dg <= db < da
        and da >= db + dg
        and dg / da <= b <= (da - db) / da
        and a == 1 - b
        and fx.p == Dist([0, a, b] + [0] * (n - 3))
        and fx.q == Dist.point(n, 1)
    )


def _pin_top_level_lock(fx: Fixture) -> bool:
    da, db, dg = fx.d[0], fx.d[1], fx.d[2]
    a, b = fx.params["a"], fx.params["b"]
    n = fx.d.n
    return (
        da == max(fx.d)
        and dg <= db < da
        and da < db + dg
        and (da - db) / da <= b <= dg / da
        and a == 1 - b
        and fx.q == Dist([0, a, b] + [0] * (n - 3))
        and fx.p == Dist.point(n, 1)
    )


def _pin_extreme_list(fx: Fixture) -> bool:
    g = fx.params["gamma"]
    return fx.d.n == 3 and fx.d[0] == fx.d[1] and fx.d[2] / fx.d[0] == g and two_level_ratio(fx.d) == g


def _pin_matrix_counterexample(fx: Fixture) -> bool:
    phi, g = fx.params["phi"], fx.params["gamma"]
    want = (
        (1 - phi, phi, 0),
        (phi, 0, (1 - phi) / g),
        (0, 1 - phi, 1 - (1 - phi) / g),
    )
    return (
        two_level_ratio(fx.d) == g
        and fx.d[0] == fx.d[1]
        and 1 - g < phi < 1
        and fx.M == tuple(tuple(Fraction(x) for x in r) for r in want)
    )


def _pin_separation_point(fx: Fixture) -> bool:
    d0, d1, d2 = fx.d
    a, b, c = fx.params["a"], fx.params["b"], fx.params["c"]
    alpha, beta, gamma = d1 / d0, d2 / d0, d2 / d1
    tau = (1 - alpha) / (1 - beta)
    return (
        d0 > d1 > d2
        and fx.p == Dist([a, b, c])
        and b > 0
        and 1 / (1 + beta) < a < 1 / (1 + tau * beta)
        and gamma * b < c < beta * a
        and beta * ((1 - alpha) * a + (1 - gamma) * b + c) < c
    )


PINS: dict[str, Callable[[Fixture], bool]] = {
    "support-block": _pin_support_block,
    "top-level-lock": _pin_top_level_lock,
    "extreme-list": _pin_extreme_list,
    "matrix-counterexample": _pin_matrix_counterexample,
    "separation-point": _pin_separation_point,
}

VERDICTS: dict[str, Callable[[Fixture], Any]] = {
    "params_in_range": lambda fx: PINS[fx.kind](fx),
    "majorized": lambda fx: thermo_majorizes(fx.p, fx.q, fx.d),
    "two_level_equilibrium": lambda fx: two_level_ratio(fx.d) is not None,
    "quasi_uniform": lambda fx: is_quasi_uniform(fx.d),
    "support_shrinks": lambda fx: len(fx.q.support) < len(fx.p.support),
    "strong_refusal": lambda fx: _refusal(reach_strong, fx),
    "weak_refusal": lambda fx: _refusal(reach_weak, fx),
    "top_level_survives_swaps": _top_level_survives,
    "extremes_match": _extremes_match,
    "products_match": _products_match,
    "d_stochastic": lambda fx: is_d_stochastic(fx.M, fx.d),
    "strong_emulation": _strong_emulation,
    "length_one_refusal": _length_one,
    "canonical_grid_search": _grid_search,
    "segment_in_eto_cone": _segment_in_cone,
    "segment_full_support": lambda fx: len(fx.target.support) == fx.d.n,
}


# ---------------------------------------------------------------- loading


_PLAIN = {"name", "kind", "summary", "d", "p", "q", "M", "params", "expect"}


def fixture_from_json(doc: dict) -> Fixture:
    return Fixture(
        name=doc["name"],
        kind=doc["kind"],
        summary=doc.get("summary", ""),
        d=parse_dist(doc["d"]),
        p=parse_dist(doc["p"]) if "p" in doc else None,
        q=parse_dist(doc["q"]) if "q" in doc else None,
        M=tuple(tuple(r) for r in parse_rows(doc["M"])) if "M" in doc else None,
        params={k: parse_scalar(v) for k, v in doc.get("params", {}).items()},
        expect=dict(doc.get("expect", {})),
        data={k: v for k, v in doc.items() if k not in _PLAIN},
    )


def _fixture_files():
    root = resources.files("thermoforge") / "data" / "fixtures"
    return sorted((f for f in root.iterdir() if f.name.endswith(".json")), key=lambda f: f.name)


def load_fixtures(check: bool = True) -> list[Fixture]:
    """Load the corpus; with ``check`` every stored verdict is recomputed."""
    fixtures = [fixture_from_json(json.loads(f.read_text())) for f in _fixture_files()]
    if check:
        problems = [msg for fx in fixtures for msg in fx.check()]
        if problems:
            raise FixtureSelfCheckFailed("; ".join(problems))
    return fixtures


def get_fixture(name: str, check: bool = True) -> Fixture:
    for fx in load_fixtures(check=False):
        if fx.name == name:
            if check and fx.check():
                raise FixtureSelfCheckFailed("; ".join(fx.check()))
            return fx
    raise KeyError(name)

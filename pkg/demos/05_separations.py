"""Where two-level control falls short.

The bundled fixtures pin down concrete cases: transitions allowed by
thermal processes that no two-level protocol can perform, and a matrix
that mixtures of swaps produce but that we fail to find among sequential
partial-swap paths on a fine grid.
"""

from thermoforge import (
    ThermoError,
    emulate_thermal_op,
    get_fixture,
    load_fixtures,
    reach_strong,
    search_canonical_path,
)

for fx in load_fixtures():
    print(f"{fx.name} ({fx.kind}): {fx.summary}")
    for key, value in fx.expect.items():
        print(f"    {key}: {value}")

f1 = get_fixture("F1", check=False)
try:
    reach_strong(f1.p, f1.q, f1.d)
except ThermoError as exc:
    print(f"\nF1: asking for a protocol anyway is refused with {exc.reason}")

f4 = get_fixture("F4", check=False)
proto = emulate_thermal_op(f4.M, f4.d)
print(f"\nF4: a mixture of {len(proto.branches)} swap sequences reproduces the matrix")
for pairs in (2, 4, 6):
    rep = search_canonical_path(f4.M, f4.d, grid=64, max_pairs=pairs)
    print(
        f"    grid 1/64, up to {pairs} alternations: found={rep.found}, "
        f"nodes={rep.nodes}, undecided branches={rep.undetermined}"
    )
print("    (a failed search is evidence, not proof, that no such path exists)")

"""The deformation-space tables regenerated from the computational modules.

Every entry is computed (group closures, automorphism searches, Smith
normal forms, congruence descriptors), not transcribed, so the rendered
document doubles as a regression artifact.
"""

from __future__ import annotations

import json

from . import e2moduli, su2moduli
from .su2moduli import SubgroupSpec


def torus_bundle_table():
    rows = []
    for k in (1, 2, 3, 4, 6):
        spec = e2moduli.table1(k)
        rows.append(
            {
                "period": k,
                "monodromy": [list(r) for r in spec.monodromy],
                "tau": spec.tau_label,
                "h1": {"rank": spec.h1.rank, "torsion": list(spec.h1.torsion)},
                "rigidity_det": e2moduli.rotational_rigidity(k),
            }
        )
    return rows


def bundle_moduli_table():
    rows = []
    for k in (1, 2, 3, 4, 6):
        m = e2moduli.moduli_descriptor(k)
        rows.append(
            {
                "period": k,
                "discrete": m.congruence,
                "continuous": m.continuous,
            }
        )
    return rows


def out0_table():
    rows = []
    for spec in (
        SubgroupSpec.quaternion_q8(),
        SubgroupSpec.binary_dihedral(12),
        SubgroupSpec.binary_dihedral(16),
        SubgroupSpec.binary_tetrahedral(),
        SubgroupSpec.binary_octahedral(),
        SubgroupSpec.binary_icosahedral(),
    ):
        r = su2moduli.out0(spec)
        rows.append(
            {
                "group": r.tag,
                "order": r.order,
                "out": r.out_order,
                "out0": r.out0_order,
                "structure": r.structure,
            }
        )
    return rows


def teichmuller_count_table(out0_rows):
    rows = []
    for row in out0_rows:
        d = row["out0"]
        rows.append(
            {
                "group": row["group"],
                "count": "|Lambda|" if d == 1 else f"|Lambda|/{d}",
            }
        )
    return rows


def lens_table():
    rows = []
    for m in (1, 2, 3, 4, 5):
        rows.append(su2moduli.lens_teichmuller(m))
    return rows


def paper_tables_document():
    out0_rows = out0_table()
    return {
        "torus_bundles": torus_bundle_table(),
        "torus_bundle_moduli": bundle_moduli_table(),
        "su2_out0": out0_rows,
        "su2_teichmuller_counts": teichmuller_count_table(out0_rows),
        "lens_teichmuller": lens_table(),
    }


def render_paper_tables() -> str:
    """Canonical byte-stable rendering of the full table document."""
    return json.dumps(paper_tables_document(), indent=2, sort_keys=True) + "\n"

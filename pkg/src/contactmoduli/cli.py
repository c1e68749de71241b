"""Command-line front end.

Every subcommand prints a JSON report {command, inputs, outputs,
residuals, wall_time_ms} except paper-tables, which prints the bare
table document so the output can be compared byte-for-byte against the
checked-in golden file.

Exit codes: 0 success, 1 verification failure (a residual above its
tolerance), 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np


def _report(command, inputs, outputs, residuals=None, started=None):
    doc = {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "residuals": residuals or {},
    }
    if started is not None:
        doc["wall_time_ms"] = round(1000.0 * (time.perf_counter() - started), 3)
    return doc


def _emit(doc, as_table=False):
    if as_table:
        _print_table(doc)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True, default=_jsonify))


def _jsonify(x):
    from fractions import Fraction

    if isinstance(x, Fraction):
        from .seifert import format_rational

        return format_rational(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x)}")


def _print_table(doc, indent=0):
    pad = "  " * indent
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_table(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            _print_table(v, indent)
    else:
        print(f"{pad}{doc}")


def _fail(message, code=2):
    print(message, file=sys.stderr)
    sys.exit(code)


# --- subcommand implementations --------------------------------------------


def cmd_seifert(args):
    from fractions import Fraction

    from . import seifert as sf

    started = time.perf_counter()
    if args.action == "analyze":
        s = sf.SeifertData.parse(args.data)
        ok, reasons = sf.admits_sl2(s)
        out = {
            "chi_orb": sf.chi_orb(s),
            "euler_number": sf.euler_number(s),
            "admits_sl2": ok,
            "reasons": reasons,
        }
        if sf.euler_number(s) != 0:
            out["fibre_index"] = sf.fibre_index(s)
            c, det = sf.matrix_c(s)
            out["det_c"] = det
            grp = sf.h1(s)
            out["h1"] = {"rank": grp.rank, "torsion": list(grp.torsion)}
        cert = sf.raymond_vasquez(s)
        out["rv_certificate"] = (
            {"r": cert.r, "k": list(cert.k)} if cert else None
        )
        if ok and cert is not None:
            d = sf.moduli_descriptor(s)
            out["moduli"] = {
                "base_dimension": d.base_dimension,
                "fibre_rank": d.fibre_rank,
                "covering_degree": d.covering_degree,
                "components": d.components_note,
            }
        _emit(_report("seifert analyze", {"data": s.to_json()}, out,
                      started=started), args.table)
        return 0
    if args.action == "tables":
        rows = []
        for text in ("g=2 b=1", "g=2 b=2", "g=0 b=-2 (2,1) (3,2) (7,6)",
                     "g=1 b=1 (2,1) (3,2)", "g=0 b=-1 (2,1) (3,1) (7,1)"):
            s = sf.SeifertData.parse(text)
            cert = sf.raymond_vasquez(s)
            grp = sf.h1(s)
            rows.append({
                "data": text,
                "chi_orb": sf.chi_orb(s),
                "e": sf.euler_number(s),
                "r": cert.r if cert else None,
                "h1": {"rank": grp.rank, "torsion": list(grp.torsion)},
            })
        _emit(_report("seifert tables", {}, {"rows": rows}, started=started),
              args.table)
        return 0
    _fail(f"unknown seifert action {args.action}")


def cmd_torusbundle(args):
    from . import e2moduli, tables

    started = time.perf_counter()
    if args.action == "table":
        _emit(_report("torusbundle table", {},
                      {"rows": tables.torus_bundle_table()}, started=started),
              args.table)
        return 0
    k = args.k
    if k is None:
        _fail("this action needs a period k")
    if args.action == "h1":
        grp = e2moduli.h1(k)
        _emit(_report("torusbundle h1", {"k": k},
                      {"rank": grp.rank, "torsion": list(grp.torsion)},
                      started=started), args.table)
        return 0
    if args.action == "moduli":
        m = e2moduli.moduli_descriptor(k)
        t = e2moduli.teichmuller_descriptor(k)
        _emit(_report("torusbundle moduli", {"k": k}, {
            "moduli": {"discrete": m.congruence, "continuous": m.continuous},
            "teichmuller": {"discrete": t.congruence, "continuous": t.continuous},
            "rigidity_det": e2moduli.rotational_rigidity(k),
        }, started=started), args.table)
        return 0
    _fail(f"unknown torusbundle action {args.action}")


def cmd_t3(args):
    from . import e2moduli

    started = time.perf_counter()
    with open(args.rep) as fh:
        raw = json.load(fh)
    rep = e2moduli.Z3Rep(
        v=tuple(complex(re, im) for re, im in raw["v"]),
        r=tuple(int(x) for x in raw["r"]),
    )
    if not e2moduli.is_valid_t3_rep(rep):
        _fail("representation rows do not span R^3", code=1)
    sf, change, scale = e2moduli.to_standard_form(rep)
    tau, z, mat = e2moduli.sl2z_reduce(sf.tau, sf.z)
    out = {
        "standard_form": sf.to_json(),
        "basis_change": change,
        "scale": complex(scale),
        "reduced": {"tau": complex(tau), "z": complex(z),
                    "sl2z": [list(mat[0]), list(mat[1])]},
        "lattice_det": e2moduli.universal_lattice(sf).det,
        "symmetries": [
            {"mu": complex(mu), "order": order}
            for mu, order in e2moduli.symmetry_points(sf.tau, sf.z)
        ],
    }
    _emit(_report("t3 standardize", {"rep": raw}, out, started=started),
          args.table)
    return 0


def cmd_su2(args):
    from . import su2moduli

    started = time.perf_counter()
    if args.action == "group":
        spec = su2moduli.SubgroupSpec.from_name(args.spec)
        table = su2moduli.build_group(spec)
        orders = {}
        for i in range(table.order):
            orders[table.element_order(i)] = orders.get(table.element_order(i), 0) + 1
        _emit(_report("su2 group", {"spec": spec.tag}, {
            "order": table.order,
            "element_orders": {str(k): v for k, v in sorted(orders.items())},
        }, started=started), args.table)
        return 0
    if args.action == "out0":
        spec = su2moduli.SubgroupSpec.from_name(args.spec)
        r = su2moduli.out0(spec)
        _emit(_report("su2 out0", {"spec": spec.tag}, r.to_json(),
                      residuals={"intertwiner_gaps": list(r.gaps)},
                      started=started), args.table)
        return 0
    if args.action == "lens":
        m = int(args.spec)
        _emit(_report("su2 lens", {"m": m}, {
            "moduli": su2moduli.lens_moduli(m).describe(),
            "teichmuller": su2moduli.lens_teichmuller(m),
        }, started=started), args.table)
        return 0
    _fail(f"unknown su2 action {args.action}")


def cmd_gv(args):
    from . import godbillon

    started = time.perf_counter()
    param = complex(args.params[0]) if args.family == "a" else int(args.params[0])
    closed = godbillon.gv_closed_form(args.family, param)
    if args.action == "closed":
        _emit(_report("gv closed", {"family": args.family, "param": param},
                      {"closed_form": closed}, started=started), args.table)
        return 0
    est = godbillon.gv_integral(args.family, param, resolution=args.res)
    rel = abs(est.value - closed) / abs(closed)
    out = {
        "value_re": est.value.real,
        "value_im": est.value.imag,
        "closed_form_re": closed.real,
        "closed_form_im": closed.imag,
        "rel_err": rel,
        "resolution": est.resolution,
        "error_estimate": est.error_estimate,
        "volume": est.volume,
    }
    doc = _report("gv compute", {"family": args.family, "param": param,
                                 "res": args.res}, out, started=started)
    _emit(doc, args.table)
    return 0 if rel <= args.tol else 1


def cmd_sl2(args):
    from . import seifert as sfmod
    from . import weil

    started = time.perf_counter()
    if args.action == "gauss-bonnet":
        grp = weil.octagon_group()
        rep = weil.gauss_bonnet_lift_check(grp)
        out = {
            "chi_orb": -2,
            "shift_over_2pi": rep.shift_over_2pi,
            "matrix_residual": rep.matrix_residual,
            "displacement_residual": rep.displacement_residual,
            "relation_residual": grp.relation_residual(),
        }
        doc = _report("sl2 gauss-bonnet", {}, out, started=started)
        _emit(doc, args.table)
        ok = rep.matrix_residual < 1e-9 and rep.displacement_residual < 1e-6
        return 0 if ok else 1
    if args.action == "lift-uniqueness":
        s = sfmod.SeifertData.parse(args.data)
        out = weil.lift_uniqueness(s)
        _emit(_report("sl2 lift-uniqueness", {"data": s.to_json()}, out,
                      started=started), args.table)
        return 0
    _fail(f"unknown sl2 action {args.action}")


def cmd_cartan(args):
    from . import coframes

    started = time.perf_counter()
    rng = np.random.default_rng(args.seed)
    geometry = args.geometry
    if geometry == "e2":
        pts = [(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-6, 6))
               for _ in range(100)]
        res = coframes.check_cartan_k(coframes.e2_coframe(), 0.0, pts)
        tol = 1e-7
    elif geometry == "sl2":
        pts = [(rng.uniform(-2, 2), rng.uniform(0.5, 2.5), rng.uniform(-6, 6))
               for _ in range(100)]
        res = coframes.check_cartan_k(coframes.sl2_coframe(), -1.0, pts)
        tol = 1e-6
    elif geometry in ("s3-a", "s3-n"):
        fam = "a" if geometry == "s3-a" else "n"
        param = complex(args.param) if fam == "a" else int(float(args.param))
        family = coframes.SphereFamily(name=fam, param=complex(param))
        x = rng.normal(size=(100, 4))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        eq1 = eq2 = 0.0
        volmin = math.inf
        for p in x:
            chart = coframes.preferred_chart(p)
            u = coframes.sphere_to_stereo(p, chart)
            w = family.omega_chart(u, chart)
            dw = family.domega_chart(u, chart)
            v11 = coframes.wedge12(w.real, dw.real)
            v22 = coframes.wedge12(w.imag, dw.imag)
            v12 = coframes.wedge12(w.real, dw.imag)
            v21 = coframes.wedge12(w.imag, dw.real)
            eq1 = max(eq1, abs(v11 - v22))
            eq2 = max(eq2, abs(v12 + v21))
            volmin = min(volmin, abs(v11))
        res = coframes.FormResidual(max_residual=max(eq1, eq2), samples=100,
                                    detail={"volume_min": volmin})
        tol = 1e-9
    else:
        _fail(f"unknown geometry {geometry}")
    out = {
        "geometry": geometry,
        "max_residual": res.max_residual,
        "samples": res.samples,
        "detail": res.detail,
        "tolerance": tol,
    }
    _emit(_report("cartan check", {"geometry": geometry, "seed": args.seed},
                  out, started=started), args.table)
    return 0 if res.max_residual < tol else 1


def cmd_paper_tables(args):
    from . import tables

    sys.stdout.write(tables.render_paper_tables())
    return 0


# --- parser -----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="contactmoduli",
        description="verification tools for the moduli of taut contact circles",
    )
    p.add_argument("--seed", type=int, default=0, help="PRNG seed for sampling")
    p.add_argument("--tol", type=float, default=0.02,
                   help="relative tolerance for verification commands")
    p.add_argument("--res", type=int, default=64,
                   help="grid resolution per chart for quadrature")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; evaluation is deterministic and single-threaded")
    p.add_argument("--table", action="store_true",
                   help="print an indented table instead of JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seifert", help="Seifert invariant arithmetic")
    s.add_argument("action", choices=["analyze", "tables"])
    s.add_argument("data", nargs="?", default="",
                   help="tuple, e.g. 'g=2 b=1 (2,1) (3,2)'")
    s.set_defaults(fn=cmd_seifert)

    t = sub.add_parser("torusbundle", help="flat torus bundles over the circle")
    t.add_argument("action", choices=["table", "h1", "moduli"])
    t.add_argument("k", type=int, nargs="?", help="monodromy period 1,2,3,4,6")
    t.set_defaults(fn=cmd_torusbundle)

    t3 = sub.add_parser("t3", help="Z^3 representations into the euclidean cover")
    t3.add_argument("action", choices=["standardize"])
    t3.add_argument("rep", help="JSON file {'v': [[re,im]x3], 'r': [ints]}")
    t3.set_defaults(fn=cmd_t3)

    su = sub.add_parser("su2", help="finite subgroups of SU(2)")
    su.add_argument("action", choices=["group", "out0", "lens"])
    su.add_argument("spec", help="Q8, Dstar12, Tstar, Ostar, Istar, Cm, or m")
    su.set_defaults(fn=cmd_su2)

    gv = sub.add_parser("gv", help="Godbillon-Vey invariants on the 3-sphere")
    gv.add_argument("action", choices=["compute", "closed"])
    gv.add_argument("family", choices=["a", "n"])
    gv.add_argument("params", nargs="+", help="a as complex, or integer n")
    gv.set_defaults(fn=cmd_gv)

    sl = sub.add_parser("sl2", help="hyperbolic-base verification")
    sl.add_argument("action", choices=["gauss-bonnet", "lift-uniqueness"])
    sl.add_argument("data", nargs="?", default="g=2 b=1",
                    help="Seifert tuple for lift-uniqueness")
    sl.set_defaults(fn=cmd_sl2)

    ca = sub.add_parser("cartan", help="structure-equation residual checks")
    ca.add_argument("action", choices=["check"])
    ca.add_argument("geometry", choices=["e2", "sl2", "s3-a", "s3-n"])
    ca.add_argument("--param", default="0.5", help="family parameter for s3")
    ca.set_defaults(fn=cmd_cartan)

    pt = sub.add_parser("paper-tables",
                        help="emit all computed tables as one JSON document")
    pt.set_defaults(fn=cmd_paper_tables)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except (ValueError, OSError) as exc:
        _fail(str(exc), code=2)
    sys.exit(code)


if __name__ == "__main__":
    main()

"""Command-line front end: ``deltapoly <subcommand> ...``.

Exit status is 0 on success (a NonMember or Unstable verdict is a successful
answer), 1 on a domain or input error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, data_checksum
from . import formats as fm
from .cone import extreme_rays, hrep_from_system, irredundant, to_ambient
from .configurations import (ApartmentConfiguration, GrassmannianMeasure, apartment_semistability,
                             iso_semistable, sl_semistable)
from .coxeter import NAMES, build_root_system
from .exact import primitive
from .hyperbolic import CircleConfiguration, phi_fixed_point, round_trip_error
from .inequalities import MAX_SIDES, membership, system
from .polygons import construct_polygon_momentum, sample_thompson
from .schubert import cohomology_ring, format_table

OUTPUT_DIR_ENV = "DELTAPOLY_OUTPUT_DIR"


def _emit(args, text: str) -> None:
    if args.output:
        path = Path(args.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise fm.ParseError(f"cannot read {path}: {e.strerror}") from None
    return fm.load_json(text)


def _vec_json(v) -> list[str]:
    return [fm.format_rational(x) for x in v]


def _float(x: float) -> float:
    """Round report floats so that output is stable across BLAS builds."""
    return float(f"{x:.6e}")


# --- inequalities / cone / member ------------------------------------------------------


def _provenance_json(p) -> dict:
    if not p:
        return {}
    if p[0] == "grassmannian":
        return {"source": "grassmannian", "vertex": p[2], "degrees": list(p[3])}
    if p[0] == "weak":
        return {"source": "weak", "word": list(p[1]), "weight": p[2], "roles": [p[3], p[4]]}
    return {"source": "chamber", "side": p[1], "root": p[2]}


def cmd_inequalities(args) -> int:
    rs = build_root_system(args.root_system)
    sys_ = system(rs, args.n, args.mode, with_chamber=args.chamber, max_sides=args.max_sides)
    if args.format == "text":
        _emit(args, fm.inequalities_to_text(sys_))
    elif args.format == "json":
        _emit(args, fm.dump_json({
            "root_system": rs.name, "n": args.n, "mode": args.mode, "chamber": args.chamber,
            "inequalities": [dict(coefficients=[list(r) for r in q.coefficients],
                                  **_provenance_json(q.provenance)) for q in sys_]}))
    else:
        eqs = []
        if rs.sum_zero:
            for i in range(args.n):
                row = [0] * (args.n * rs.ambient_dim)
                row[i * rs.ambient_dim:(i + 1) * rs.ambient_dim] = [1] * rs.ambient_dim
                eqs.append(row)
        _emit(args, fm.write_ieq(args.n * rs.ambient_dim, [q.flat() for q in sys_], eqs))
    return 0


def _reduced_rows(sys_):
    rs = build_root_system(sys_.root_system)
    out = []
    for q in sys_:
        flat = []
        for c in q.coefficients:
            flat += [c[0] - c[2], c[1] - c[2]] if rs.sum_zero else list(c)
        out.append(primitive(flat))
    return out


def _facet_inequalities(sys_):
    """Irredundant rows, reported as the original (ambient) inequalities."""
    by_row = {}
    for q, r in zip(sys_, _reduced_rows(sys_)):
        by_row.setdefault(r, q)
    return [by_row[r] for r in irredundant(hrep_from_system(sys_)).irredundant.rows]


def cmd_cone(args) -> int:
    rs = build_root_system(args.root_system)
    sys_ = system(rs, args.n, args.mode, with_chamber=True, max_sides=args.max_sides)
    if args.facets:
        facets = _facet_inequalities(sys_)
        if args.format == "text":
            _emit(args, fm.inequalities_to_text(facets))
        elif args.format == "json":
            _emit(args, fm.dump_json({
                "root_system": rs.name, "n": args.n, "facets": [
                    dict(coefficients=[list(r) for r in q.coefficients], **_provenance_json(q.provenance))
                    for q in facets]}))
        elif args.format == "ieq":
            _emit(args, fm.write_ieq(args.n * rs.ambient_dim, [q.flat() for q in facets]))
        else:
            raise fm.ParseError("poi format holds rays; use --rays or --format ieq")
        return 0
    rays = sorted(to_ambient(rs.name, args.n, r) for r in extreme_rays(hrep_from_system(sys_)).rays)
    if args.format == "text":
        _emit(args, "".join(" | ".join(" ".join(str(x) for x in side) for side in r) + "\n" for r in rays))
    elif args.format == "json":
        _emit(args, fm.dump_json({"root_system": rs.name, "n": args.n, "count": len(rays),
                                  "rays": [[list(side) for side in r] for r in rays]}))
    elif args.format == "ieq":
        raise fm.ParseError("ieq format holds facets; use --facets or --format poi")
    else:
        _emit(args, fm.write_poi(args.n * rs.ambient_dim, [[x for side in r for x in side] for r in rays]))
    return 0


def cmd_member(args) -> int:
    rs = build_root_system(args.root_system)
    hs = [fm.parse_vector_arg(t) for t in args.sides]
    if rs.sum_zero:
        hs = [h if len(h) == 3 else (h[0], h[1], -h[0] - h[1]) for h in hs]
    sys_ = system(rs, len(hs), args.mode, with_chamber=True, max_sides=args.max_sides)
    res = membership(sys_, hs)
    if args.format == "json":
        _emit(args, fm.dump_json({
            "root_system": rs.name, "sides": [_vec_json(h) for h in hs],
            "verdict": "Member" if res.member else "NonMember",
            "violated": [q.to_text() for q in res.violated],
            "tight": len(res.tight)}))
    else:
        lines = ["Member" if res.member else "NonMember"]
        lines += [f"violated: {q.to_text()}" for q in res.violated]
        _emit(args, "\n".join(lines) + "\n")
    return 0


# --- schubert ----------------------------------------------------------------------------


def cmd_schubert(args) -> int:
    name, vertex = args.table
    v = vertex.upper()
    if v not in ("P1", "P2"):
        raise fm.ParseError(f"expected P1 or P2, got {vertex!r}")
    ring = cohomology_ring(build_root_system(name).name, int(v[1]))
    if args.json:
        _emit(args, fm.dump_json({"m": ring.m, "weights": [_vec_json(w) for w in ring.weights],
                                  "a": list(ring.a), "structure": [list(r) for r in ring.structure]}))
    else:
        _emit(args, format_table(ring))
    return 0


# --- stability ---------------------------------------------------------------------------


def _subspace_json(u) -> list | None:
    return None if u is None else [_vec_json(r) for r in u.rows]


def cmd_stability(args) -> int:
    if args.apartment:
        name, points = fm.parse_apartment(_read_json(args.apartment))
        rs = build_root_system(name)
        cfg = ApartmentConfiguration.from_words(rs, points)
        v = apartment_semistability(cfg)
        out = {"model": "apartment", "root_system": rs.name, "status": v.status}
        if v.direction is not None:
            out["direction"] = _vec_json(v.direction)
            out["dominant_type"] = _vec_json(v.dominant_type)
            out["chamber_word"] = list(v.chamber.word)
            out["hn_vertices"] = [{"vertex": _vec_json(h.vertex), "type": h.type_index,
                                   "orbit_size": h.orbit_size, "unique_minimum": h.unique_minimum}
                                  for h in v.hn_vertices]
        if v.note:
            out["note"] = v.note
    else:
        d = fm.parse_grassmannian(_read_json(args.grassmannian))
        m = GrassmannianMeasure.make(d["n"], d["q"], d["atoms"], d["form"])
        strategy = args.strategy or ("spans" if m.form is None else "lattice")
        if m.form is None:
            v = sl_semistable(m, strategy, seed=args.seed)
        else:
            v = iso_semistable(m, strategy, seed=args.seed)
        out = {"model": "grassmannian", "criterion": "sl" if m.form is None else "isotropic",
               "strategy": strategy, "status": v.status, "complete": v.complete,
               "candidates": v.candidates, "witness": _subspace_json(v.witness),
               "excess": None if v.excess is None else fm.format_rational(v.excess)}
    _emit(args, fm.dump_json(out))
    return 0


# --- polygons ---------------------------------------------------------------------------


def cmd_polygon(args) -> int:
    if args.construct:
        spectra = fm.parse_spectra(_read_json(args.construct))
        res = construct_polygon_momentum(spectra, tol=args.tol, restarts=args.restarts, seed=args.seed)
        out = {"success": res.success,
               "residual": _float(res.residual), "restarts_used": res.restarts_used,
               "confidently_infeasible": res.confidently_infeasible, "n": len(spectra)}
        if len(spectra[0]) == 3 and len(spectra) >= 3:
            rs = build_root_system("A2")
            rows = np.array([q.flat() for q in system(rs, len(spectra), "exact", with_chamber=False)], float)
            vals = rows @ np.concatenate([np.asarray(h, float) for h in spectra])
            out["max_inequality_value"] = _float(float(vals.max()))
        if res.success:
            out["spectra_error"] = _float(max(
                float(np.abs(np.linalg.eigvalsh(a)[::-1] - np.asarray(h)).max())
                for a, h in zip(res.matrices, spectra)))
    else:
        masses, angles = fm.parse_circle(_read_json(args.hyperbolic))
        cfg = CircleConfiguration(tuple(masses), tuple(angles))
        poly = phi_fixed_point(cfg, max_iter=args.max_iter)
        out = {"status": poly.status, "iterations": poly.iterations}
        if poly.status == "converged":
            out["closure_error"] = _float(poly.closure_error)
            out["round_trip_error"] = _float(round_trip_error(cfg, poly))
            out["vertices"] = [[_float(float(x)) for x in v] for v in poly.vertices]
    _emit(args, fm.dump_json(out))
    return 0


def cmd_verify_thompson(args) -> int:
    rep = sample_thompson(args.n, args.samples, args.seed)
    rep["max_violation_p"] = _float(rep["max_violation_p"])
    rep["max_violation_X"] = _float(rep["max_violation_X"])
    _emit(args, fm.dump_json(rep))
    return 0


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltapoly", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"deltapoly {__version__} (tables {data_checksum()})")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-o", "--output", help=f"write here instead of stdout "
                                               f"(relative paths resolve against ${OUTPUT_DIR_ENV})")

    def root(sp):
        sp.add_argument("--root-system", required=True, type=str.upper, choices=list(NAMES) + ["C2"])
        sp.add_argument("--max-sides", type=int, default=MAX_SIDES, help="limit on n (default %(default)s)")

    sp = sub.add_parser("inequalities", help="stability or weak inequalities for n-gons")
    root(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--mode", choices=["exact", "nonzero", "weak"], default="exact")
    sp.add_argument("--chamber", action="store_true", help="include the chamber inequalities")
    sp.add_argument("--format", choices=["text", "json", "ieq"], default="text")
    common(sp)
    sp.set_defaults(func=cmd_inequalities)

    sp = sub.add_parser("cone", help="extreme rays or irredundant facets of the side-length cone")
    root(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--mode", choices=["exact", "nonzero", "weak"], default="exact")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--facets", action="store_true")
    g.add_argument("--rays", action="store_true")
    sp.add_argument("--format", choices=["text", "json", "poi", "ieq"], default="text")
    common(sp)
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("member", help="test a tuple of side lengths, e.g. 1,1 1,1 2,0")
    root(sp)
    sp.add_argument("sides", nargs="+", help="comma-separated rationals per side")
    sp.add_argument("--mode", choices=["exact", "nonzero", "weak"], default="exact")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    common(sp)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("schubert", help="multiplication table of a rank-2 Grassmannian")
    sp.add_argument("--table", nargs=2, metavar=("ROOT_SYSTEM", "P1|P2"), required=True)
    sp.add_argument("--json", action="store_true", help="emit {m, weights, a, structure}")
    common(sp)
    sp.set_defaults(func=cmd_schubert)

    sp = sub.add_parser("stability", help="semistability of a weighted configuration")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--apartment", metavar="CFG_JSON")
    g.add_argument("--grassmannian", metavar="CFG_JSON")
    sp.add_argument("--strategy", help="spans, lattice or mc:<k> (default: spans, lattice with a form)")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("polygon", help="construct a polygon from side lengths")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--construct", metavar="H_JSON", help="momentum minimisation from {spectra: ...}")
    g.add_argument("--hyperbolic", metavar="CFG_JSON", help="fixed point in H^2 from {masses, angles}")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--restarts", type=int, default=10)
    sp.add_argument("--max-iter", type=int, default=100_000, help="fixed-point iterations")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("verify-thompson", help="sample closed polygons in p and X against the A2 system")
    sp.add_argument("-n", type=int, default=3)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=42)
    common(sp)
    sp.set_defaults(func=cmd_verify_thompson)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:  # every domain error in the package derives from ValueError
        print(f"deltapoly: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

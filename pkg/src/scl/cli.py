"""Command-line entry point.

Subcommands mirror the library modules: fold | boundary | area | length |
orbit-count | scc-count | mlz-count | fibers | low-index | verify-example.
Output is JSON or CSV on stdout (or --out); exit codes are 0 success,
2 input error, 3 surface validation error, 4 resource cap hit (partial
results are still emitted, flagged as not frontier-exhausted).
"""

from __future__ import annotations

import argparse
import datetime
import json
import string
import sys
from dataclasses import dataclass

from . import census, currents, geometry, graphs, mcg, words
from .errors import ConfigError, InputError, ResourceLimitError, SclError


@dataclass
class RunConfig:
    surface: geometry.SurfaceStructure
    subcommand: str
    out: str | None
    no_meta: bool
    max_ball: int | None
    max_index: int


def _letter(lab: int) -> str:
    return string.ascii_lowercase[lab]


def _parse_gens(text: str):
    gens = [words.word_from_str(w.strip()) for w in text.split(",") if w.strip()]
    if not gens:
        raise InputError(f"no generators in {text!r}")
    return gens


def _graph_payload(g: graphs.CoreGraph) -> dict:
    return {
        "vertices": g.vertex_count,
        "edges": [[u, v, _letter(lab)] for u, v, lab in g.edges],
        "rank": g.cycle_rank,
        "index": graphs.index(g),
        "basepoint": g.basepoint,
    }


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, payload: dict) -> None:
    if not cfg.no_meta:
        payload = {"meta": {
            "surface": cfg.surface.name,
            "command": cfg.subcommand,
            "generated": datetime.datetime.now().isoformat(timespec="seconds"),
        }, **payload}
    _emit(cfg, json.dumps(payload, indent=2) + "\n")


def _emit_csv(cfg: RunConfig, header, rows) -> None:
    lines = []
    if not cfg.no_meta:
        stamp = datetime.datetime.now().isoformat(timespec="seconds")
        lines.append(f"# scl {cfg.subcommand} surface={cfg.surface.name} generated={stamp}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    _emit(cfg, "\n".join(lines) + "\n")


def _cmd_fold(cfg, args):
    g = graphs.fold(_parse_gens(args.gens), rank=cfg.surface.rank)
    _emit_json(cfg, _graph_payload(g))
    return 0


def _cmd_boundary(cfg, args):
    h = graphs.subgroup_class(_parse_gens(args.gens), surface=cfg.surface)
    report = currents.boundary_report(h, cfg.surface)
    _emit_json(cfg, {
        "cycles": [{"class": str(c), "kind": kind, "power": power}
                   for c, kind, power in report.cycles],
        "euler_char": report.euler_char,
        "genus": report.genus,
    })
    return 0


def _cmd_area(cfg, args):
    eta = currents.parse_current(args.current, cfg.surface)
    value, chi = currents.area(eta)
    _emit_json(cfg, {"area": value, "chi": str(chi)})
    return 0


def _cmd_length(cfg, args):
    if (args.word is None) == (args.current is None):
        raise InputError("length takes exactly one of --word or --current")
    if args.word is not None:
        w = words.word_from_str(args.word)
        c = words.conj_class(w)
        kind = geometry.classify(w, cfg.surface)
        payload = {
            "word": args.word,
            "class": str(c),
            "trace": geometry.holonomy_trace(w, cfg.surface),
            "type": kind,
        }
        if kind == "hyperbolic":
            payload["length"] = geometry.geodesic_length(c, cfg.surface)
        _emit_json(cfg, payload)
    else:
        eta = currents.parse_current(args.current, cfg.surface)
        b = currents.boundary_projection(eta, cfg.surface)
        _emit_json(cfg, {
            "lsc": currents.length_sc(eta, cfg.surface),
            "boundary": currents.multicurve_payload(b),
        })
    return 0


def _orbit_rows(cfg, args):
    eta = currents.parse_current(args.seed, cfg.surface)
    spec = currents.parse_functional(args.functional)
    exhausted = True
    try:
        ball = mcg.orbit_ball(eta, spec, args.L, margin=args.margin,
                              surface=cfg.surface, cap=cfg.max_ball, mode=args.mode)
    except ResourceLimitError as exc:
        ball = exc.partial
        exhausted = False
    grid = census.make_grid(args.L, args.grid)
    table = census.count_by_length(ball, grid)
    rows = [(L, n, ball.frontier_exhausted) for L, n in table.rows]
    return ball, rows, exhausted


def _cmd_orbit_count(cfg, args):
    _, rows, exhausted = _orbit_rows(cfg, args)
    _emit_csv(cfg, ("L", "count", "frontier_exhausted"), rows)
    return 0 if exhausted else 4


def _cmd_scc_count(cfg, args):
    table = census.scc_census(cfg.surface, args.L, census.make_grid(args.L, args.grid))
    _emit_csv(cfg, ("L", "count"), table.rows)
    return 0


def _cmd_mlz_count(cfg, args):
    table, _ = census.mlz_census(cfg.surface, args.L, census.make_grid(args.L, args.grid))
    _emit_csv(cfg, ("L", "count"), table.rows)
    return 0


def _cmd_fibers(cfg, args):
    eta = currents.parse_current(args.seed, cfg.surface)
    spec = currents.parse_functional(args.functional)
    ball = mcg.orbit_ball(eta, spec, args.L, margin=args.margin,
                          surface=cfg.surface, cap=cfg.max_ball)
    hist = census.fiber_histogram(ball)
    _emit_json(cfg, {
        "L": args.L,
        "ball_size": ball.count_leq(args.L),
        "histogram": {str(size): n for size, n in sorted(hist.items())},
    })
    return 0


def _cmd_low_index(cfg, args):
    covers = graphs.subgroups_of_index(args.rank, args.k, cap=cfg.max_index)
    _emit_json(cfg, {
        "rank": args.rank,
        "k": args.k,
        "count": len(covers),
        "subgroups": [_graph_payload(g) for g in covers],
    })
    return 0


def verify_example(surface):
    """Recheck the worked 4-index example: the twisted subgroup stays
    index 4 and non-conjugate, while every computable shadow agrees."""
    h_gens = _parse_gens("aaaa,ab,bb,aaba,aaBa")
    phi_gens = _parse_gens("aaaa,aab,abab,aaaba,aaB")
    twist = mcg.mapping_class([words.word_from_str("a"), words.word_from_str("ab")],
                              surface, label="ta")
    h = graphs.subgroup_class(h_gens, surface=surface)
    phi_h_listed = graphs.subgroup_class(phi_gens, surface=surface)
    phi_h_acted = mcg.act_on_subgroup(twist, h, surface)

    b_h = currents.subgroup_boundary(h, surface)
    b_phi = currents.subgroup_boundary(phi_h_listed, surface)
    checks = {
        "index_h_is_4": graphs.index(h.graph) == 4,
        "index_phi_h_is_4": graphs.index(phi_h_listed.graph) == 4,
        "twist_image_matches_listed": phi_h_acted == phi_h_listed,
        "classes_differ": h != phi_h_listed,
        "boundary_image_h_zero": b_h.is_zero(),
        "boundary_image_phi_h_zero": b_phi.is_zero(),
        "chi_h_is_minus_4": h.euler_char == -4,
        "chi_phi_h_is_minus_4": phi_h_listed.euler_char == -4,
    }
    return all(checks.values()), checks


def _cmd_verify_example(cfg, args):
    ok, checks = verify_example(cfg.surface)
    _emit_json(cfg, {"ok": ok, "checks": checks})
    return 0 if ok else 1


def _build_parser():
    top = argparse.ArgumentParser(
        prog="scl",
        description="Subgroup and curve censuses on cusped hyperbolic surfaces.")
    top.add_argument("--surface", metavar="FILE",
                     help="surface config JSON (default: built-in modular torus)")
    top.add_argument("--out", metavar="FILE", help="write output to FILE")
    top.add_argument("--no-meta", action="store_true",
                     help="suppress the timestamp header for byte-stable output")
    top.add_argument("--max-ball", type=int, default=None,
                     help="orbit ball cap (also env SCL_MAX_BALL)")
    top.add_argument("--max-index", type=int, default=graphs.DEFAULT_INDEX_CAP,
                     help="low-index enumeration cap")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fold", help="fold generators into a core graph")
    p.add_argument("--gens", required=True, help='comma-separated words, e.g. "aa,b"')
    p.set_defaults(fn=_cmd_fold)

    p = sub.add_parser("boundary", help="boundary cycles of the thickened core graph")
    p.add_argument("--gens", required=True)
    p.set_defaults(fn=_cmd_boundary)

    p = sub.add_parser("area", help="area and Euler characteristic of a current")
    p.add_argument("--current", required=True, help='e.g. "1:aa,b;1/2:a"')
    p.set_defaults(fn=_cmd_area)

    p = sub.add_parser("length", help="geodesic length of a word or lsc of a current")
    p.add_argument("--word")
    p.add_argument("--current")
    p.set_defaults(fn=_cmd_length)

    for name in ("orbit-count", "fibers"):
        p = sub.add_parser(name, help="orbit-ball census" if name == "orbit-count"
                           else "fiber sizes of the boundary projection")
        p.add_argument("--seed", required=True, help="current literal")
        p.add_argument("--functional", default="lsc", help="lsc|area|la|alpha,beta")
        p.add_argument("--L", type=float, required=True)
        p.add_argument("--margin", type=float, default=1.5)
        if name == "orbit-count":
            p.add_argument("--grid", type=int, default=20)
            p.add_argument("--mode", choices=("eta", "J"), default="eta")
            p.set_defaults(fn=_cmd_orbit_count)
        else:
            p.set_defaults(fn=_cmd_fibers)

    p = sub.add_parser("scc-count", help="simple closed geodesic census (slope oracle)")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--grid", type=int, default=30)
    p.set_defaults(fn=_cmd_scc_count)

    p = sub.add_parser("mlz-count", help="integer simple multicurve census")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--grid", type=int, default=30)
    p.set_defaults(fn=_cmd_mlz_count)

    p = sub.add_parser("low-index", help="all subgroups of a given finite index")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_low_index)

    p = sub.add_parser("verify-example", help="recheck the worked 4-index twist example")
    p.set_defaults(fn=_cmd_verify_example)
    return top


def run(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.surface:
            surface = geometry.validated(geometry.surface_from_file(args.surface))
        else:
            surface = geometry.modular_torus()
        cfg = RunConfig(surface=surface, subcommand=args.subcommand, out=args.out,
                        no_meta=args.no_meta, max_ball=args.max_ball,
                        max_index=args.max_index)
        if cfg.max_ball is not None and cfg.max_ball <= 0:
            raise InputError("--max-ball must be positive")
        if cfg.max_index <= 0:
            raise InputError("--max-index must be positive")
        return args.fn(cfg, args)
    except ConfigError as exc:
        print(f"scl: surface validation error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"scl: resource cap: {exc}", file=sys.stderr)
        return 4
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"scl: {exc}", file=sys.stderr)
        return 2
    except SclError as exc:
        print(f"scl: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

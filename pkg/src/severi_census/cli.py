"""Command-line front end.

Emits deterministic JSON (stable key order, canonical number formatting),
CSV for amoeba clouds, and standalone SVG figures.  Exit codes: 0 on
success, 1 on a domain error, 2 on a usage error.  Tolerances resolve as
flags > SEVERI_CENSUS_TOL_* environment variables > config file > defaults;
the optional config file may be JSON or TOML with keys tol_res, tol_val,
tol_cluster.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import census as census_mod
from . import curves as curves_mod
from . import render
from .errors import SeveriCensusError, UsageError, IoError
from .lattice import KiteSpec, polygon_from_json
from .triangulate import Triangulation, incremental_triangulation, is_regular, kite_triangulation
from .tropical import dual_tropical_curve, curve_lattices

ENV_PREFIX = "SEVERI_CENSUS_TOL_"


@dataclass
class CommandResult:
    status: str
    payload: dict
    artifacts: list[str] = field(default_factory=list)
    exit_code: int = 0
    output_format: str = "json"

    def to_json(self) -> str:
        doc = {"status": self.status, "payload": self.payload, "artifacts": self.artifacts}
        return canonical_json(doc)


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="severi-census", add_help=True)
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="also write the payload JSON here")
    common.add_argument("--svg", metavar="FILE", help="write an SVG figure here")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--config", metavar="FILE", help="JSON/TOML tolerance config")
    common.add_argument("--tol-res", type=float, dest="tol_res")
    common.add_argument("--tol-val", type=float, dest="tol_val")
    common.add_argument("--tol-cluster", type=float, dest="tol_cluster")

    kite_flags = argparse.ArgumentParser(add_help=False)
    kite_flags.add_argument("--k", type=int, required=True)
    kite_flags.add_argument("--kprime", type=int, required=True)

    p = sub.add_parser("polygon-bound", parents=[common])
    p.add_argument("--polygon", required=True, metavar="FILE")
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("kite-count", parents=[common, kite_flags])
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("admissible", parents=[common, kite_flags])
    p.add_argument("--genus", type=int, required=True)

    sub.add_parser("kite-sublattices", parents=[common, kite_flags])
    sub.add_parser("genus1-check", parents=[common, kite_flags])

    tri_flags = argparse.ArgumentParser(add_help=False)
    tri_flags.add_argument("--k", type=int)
    tri_flags.add_argument("--kprime", type=int)
    tri_flags.add_argument("--polygon", metavar="FILE")
    tri_flags.add_argument("--genus", type=int, required=True)
    tri_flags.add_argument("--index", type=int, default=1)
    tri_flags.add_argument("--kappa", type=int, default=None)

    sub.add_parser("triangulate", parents=[common, tri_flags])
    sub.add_parser("dual-curve", parents=[common, tri_flags])

    p = sub.add_parser("signature", parents=[common])
    p.add_argument("--poly", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="RE,IM")
    p.add_argument("--b", required=True, metavar="RE,IM")

    p = sub.add_parser("passport", parents=[common])
    p.add_argument("--poly", required=True, metavar="FILE")

    p = sub.add_parser("amoeba", parents=[common])
    p.add_argument("--poly", required=True, metavar="FILE")
    p.add_argument("--a", required=True, metavar="RE,IM")
    p.add_argument("--b", required=True, metavar="RE,IM")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--log-radius", default="-2,2", metavar="LO,HI")

    return parser


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse complex number {text!r}; expected RE or RE,IM")


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoError(f"{path} is not valid JSON: {exc}") from exc


def _load_config(path: str) -> dict:
    if path.endswith(".toml"):
        try:
            import tomllib  # py >= 3.11
        except ModuleNotFoundError:
            import tomli as tomllib
        try:
            with open(path, "rb") as fh:
                return tomllib.load(fh)
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc}") from exc
    return _load_json_file(path)


def resolve_tolerances(args, env=None) -> curves_mod.Tolerances:
    env = os.environ if env is None else env
    values = {}
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        for key in ("tol_res", "tol_val", "tol_cluster"):
            if key in cfg:
                values[key] = float(cfg[key])
    for key, envname in (("tol_res", "RES"), ("tol_val", "VAL"), ("tol_cluster", "CLUSTER")):
        raw = env.get(ENV_PREFIX + envname)
        if raw is not None:
            values[key] = float(raw)
    for key in ("tol_res", "tol_val", "tol_cluster"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    defaults = curves_mod.DEFAULT_TOL
    return curves_mod.Tolerances(
        res=values.get("tol_res", defaults.res),
        val=values.get("tol_val", defaults.val),
        cluster=values.get("tol_cluster", defaults.cluster),
    )


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _kite(args) -> KiteSpec:
    return KiteSpec(args.k, args.kprime)


def _build_triangulation(args) -> Triangulation:
    if args.polygon is not None:
        poly = polygon_from_json(_load_json_file(args.polygon))
        matches = [lat for lat in census_mod.intermediate_lattices(poly)
                   if lat.index == args.index]
        if not matches:
            raise UsageError(f"--index {args.index} matches no boundary-compatible sublattice")
        if len(matches) > 1:
            raise UsageError(f"--index {args.index} is ambiguous for this polygon; "
                             "use the kite flags for signature-specific constructions")
        return incremental_triangulation(poly, matches[0], args.genus)
    if args.k is None or args.kprime is None:
        raise UsageError("need either --polygon or both --k and --kprime")
    spec = _kite(args)
    if args.index % 2 == 1:
        kappa = args.kappa
        if kappa is None:
            odd = [kap for (r, kap) in census_mod.admissible_pairs(spec, args.genus)
                   if r == args.index]
            if not odd:
                from .errors import NotAdmissible
                raise NotAdmissible(f"index {args.index} admits no kappa at genus {args.genus}")
            kappa = odd[0]
        return kite_triangulation(spec, args.genus, args.index, kappa)
    # even index routes through the incremental construction on the sublattice
    for r, lat in census_mod.kite_sublattices(spec):
        if r == args.index:
            return incremental_triangulation(spec.polygon, lat, args.genus)
    raise UsageError(f"--index {args.index} is not a kite sublattice index")


def _cmd_polygon_bound(args, tol) -> CommandResult:
    poly = polygon_from_json(_load_json_file(args.polygon))
    result = census_mod.general_lower_bound(poly, args.genus)
    return CommandResult("ok", result.to_json_dict())


def _cmd_kite_count(args, tol) -> CommandResult:
    result = census_mod.kite_count(_kite(args), args.genus)
    return CommandResult("ok", result.to_json_dict())


def _cmd_admissible(args, tol) -> CommandResult:
    pairs = census_mod.admissible_pairs(_kite(args), args.genus)
    payload = {
        "k": args.k,
        "k_prime": args.kprime,
        "genus": args.genus,
        "pairs": [[r, kappa] for r, kappa in pairs],
    }
    return CommandResult("ok", payload)


def _cmd_kite_sublattices(args, tol) -> CommandResult:
    entries = [
        {"index": r, "basis": lat.to_json()}
        for r, lat in census_mod.kite_sublattices(_kite(args))
    ]
    return CommandResult("ok", {"k": args.k, "k_prime": args.kprime, "sublattices": entries})


def _cmd_genus1_check(args, tol) -> CommandResult:
    spec = _kite(args)
    closed = census_mod.genus1_closed_form(spec)
    enumerated = census_mod.kite_count(spec, 1).total if spec.interior_point_count >= 1 else 0
    payload = {"closed_form": closed, "enumerated": enumerated, "match": closed == enumerated}
    return CommandResult("ok", payload)


def _cmd_triangulate(args, tol) -> CommandResult:
    tri = _build_triangulation(args)
    heights = is_regular(tri)
    assert heights is not None
    result = CommandResult("ok", tri.to_json_dict())
    if args.svg:
        _write_text(args.svg, render.triangulation_svg(tri))
        result.artifacts.append(args.svg)
    return result


def _cmd_dual_curve(args, tol) -> CommandResult:
    tri = _build_triangulation(args)
    curve = dual_tropical_curve(tri)
    n_gamma, m_gamma = curve_lattices(curve, tri)
    payload = curve.to_json_dict()
    payload["slope_lattice"] = n_gamma.to_json()
    payload["vertex_lattice"] = m_gamma.to_json()
    result = CommandResult("ok", payload)
    if args.svg:
        _write_text(args.svg, render.triangulation_svg(tri, curve))
        result.artifacts.append(args.svg)
    return result


def _cmd_signature(args, tol) -> CommandResult:
    poly = curves_mod.laurent_from_json(_load_json_file(args.poly))
    nd = curves_mod.nodal_partition(poly, _parse_complex(args.a), _parse_complex(args.b), tol)
    payload = {
        "delta1": nd.delta1,
        "delta2": nd.delta2,
        "kappa": nd.kappa,
        "genus": nd.genus,
    }
    return CommandResult("ok", payload)


def _cmd_passport(args, tol) -> CommandResult:
    poly = curves_mod.laurent_from_json(_load_json_file(args.poly))
    return CommandResult("ok", curves_mod.passport(poly, tol).to_json_dict())


def _cmd_amoeba(args, tol) -> CommandResult:
    poly = curves_mod.laurent_from_json(_load_json_file(args.poly))
    try:
        lo, hi = (float(t) for t in args.log_radius.split(","))
    except ValueError:
        raise UsageError(f"cannot parse --log-radius {args.log_radius!r}")
    pts = curves_mod.amoeba_sample(poly, _parse_complex(args.a), _parse_complex(args.b),
                                   args.samples, log_radius=(lo, hi), tol=tol)
    result = CommandResult("ok", {"count": len(pts), "samples": args.samples})
    if args.out:
        csv_text = "u,v\n" + "".join(f"{u!r},{v!r}\n" for u, v in pts)
        _write_text(args.out, csv_text)
        result.artifacts.append(args.out)
    else:
        result.payload["points"] = [[u, v] for u, v in pts]
    if args.svg:
        _write_text(args.svg, render.amoeba_svg(pts))
        result.artifacts.append(args.svg)
    return result


_COMMANDS = {
    "polygon-bound": _cmd_polygon_bound,
    "kite-count": _cmd_kite_count,
    "admissible": _cmd_admissible,
    "kite-sublattices": _cmd_kite_sublattices,
    "genus1-check": _cmd_genus1_check,
    "triangulate": _cmd_triangulate,
    "dual-curve": _cmd_dual_curve,
    "signature": _cmd_signature,
    "passport": _cmd_passport,
    "amoeba": _cmd_amoeba,
}


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def emit_svg(figure, path: str) -> CommandResult:
    """Write a standalone SVG for a triangulation, a (triangulation, dual
    curve) pair, or an amoeba point cloud."""
    from .tropical import TropicalCurve

    if isinstance(figure, Triangulation):
        text = render.triangulation_svg(figure)
    elif (isinstance(figure, tuple) and len(figure) == 2
          and isinstance(figure[0], Triangulation)
          and isinstance(figure[1], TropicalCurve)):
        text = render.triangulation_svg(figure[0], figure[1])
    elif isinstance(figure, list):
        text = render.amoeba_svg(figure)
    else:
        raise UsageError(f"cannot render {type(figure).__name__} as SVG")
    _write_text(path, text)
    return CommandResult("ok", {"path": path}, artifacts=[path])


def _write_payload(args, result: CommandResult) -> None:
    if getattr(args, "out", None) and args.command != "amoeba":
        _write_text(args.out, canonical_json(result.payload))
        result.artifacts.append(args.out)


def run(argv: list[str]) -> CommandResult:
    """Dispatch one CLI invocation; never raises domain errors."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        tol = resolve_tolerances(args)
        result = _COMMANDS[args.command](args, tol)
        result.output_format = args.format
        _write_payload(args, result)
        return result
    except UsageError as exc:
        return CommandResult("error", {"code": exc.code, "message": str(exc)}, exit_code=2)
    except SeveriCensusError as exc:
        return CommandResult("error", {"code": exc.code, "message": str(exc)}, exit_code=1)
    except (ValueError, TypeError) as exc:
        # constructor contract violations (bad kite shape, malformed schema)
        return CommandResult("error", {"code": type(exc).__name__, "message": str(exc)},
                             exit_code=1)


def _render_table(payload: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}{key}.", value[key])
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            for i, item in enumerate(value):
                walk(f"{prefix}{i}.", item)
        else:
            lines.append(f"{prefix[:-1]:<32} {value}")

    walk("", payload)
    return "\n".join(lines) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    if result.output_format == "table" and result.status == "ok":
        # human-oriented; only the JSON form is byte-stable
        sys.stdout.write(_render_table(result.payload))
    else:
        sys.stdout.write(result.to_json())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

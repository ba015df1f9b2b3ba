"""Command-line front end.

Every command except ``plot`` prints one JSON document on stdout.  Exit
codes: 0 when every predicate holds, 1 when one is false, 2 on bad input.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass, field, fields

from . import polyhedra as ph
from . import verify
from .cones import MAX_HILBERT_DIM, ConeError, hilbert_basis
from .coxvinberg import (
    VinbergLattice,
    delzant_moment_image,
    delzant_sequence,
    extended_cone,
    kirwan_cut,
    vinberg_cone,
)
from .rootsys import UnsupportedCartanType
from .serialize import (
    InputError,
    check_keys,
    dumps,
    integer_vector,
    load_json_file,
    load_json_text,
    parse_polyhedron,
    parse_root_datum,
    rational,
    rational_vector,
)
from .svgplot import PlotError, plot_rank2

TOLERANCE_ENV = "SYMCUT_TOLERANCES"
COMMANDS = ("check", "extend", "fan", "delzant", "vinberg-cone", "extended-cone", "cut", "strata", "is-delzant",
            "verify", "plot")

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

COMMAND_HELP = {
    "check": "simple / outward-positive / universal (and admissibility against a Kirwan polytope)",
    "extend": "W-invariant extension of an outward-positive chamber polyhedron",
    "fan": "stacky normal fan (primitive rays with label multiplicities)",
    "delzant": "kernel, cokernel and moment image of e_i -> beta_i",
    "vinberg-cone": "the cone Q_G with its Vinberg-lattice Hilbert basis",
    "extended-cone": "the cone Q_{G,beta} for given betas",
    "cut": "Kirwan polytope intersected with a cutting set",
    "strata": "strata P_{eps,k} for given n and eps, with disjointness and cover checks",
    "is-delzant": "Delzant test of a polytope or vertex list",
    "verify": "numerical verification suites on matrix spaces",
    "plot": "SVG picture of a rank-2 chamber with polyhedra",
}


@dataclass
class Config:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    seed: int = verify.DEFAULT_SEED
    tolerances: dict = field(default_factory=dict)
    width: int = 400
    margin: int = 20
    show_normals: bool = True
    fan: bool = False
    suite: str = "all"
    n: int | None = None
    trials: int | None = None
    subgroup: str | None = None
    eps: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")
        verify.tolerances(self.tolerances)  # rejects unknown keys

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        check_keys(data, {f.name for f in fields(cls)}, "config")
        return cls(**data)


def load_tolerance_file(path: str) -> dict:
    data = load_json_file(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: tolerance file must hold a JSON object")
    unknown = sorted(set(data) - set(verify.DEFAULT_TOLERANCES))
    if unknown:
        raise InputError(f"{path}: unknown tolerance key(s): {', '.join(unknown)}")
    return {k: float(v) for k, v in data.items()}


def _read_input(cfg: Config):
    if cfg.input_path in (None, "-"):
        return load_json_text(sys.stdin.read(), "<stdin>")
    return load_json_file(cfg.input_path)


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


# -- commands ------------------------------------------------------------------------


def _polyhedron_and_kirwan(doc):
    if isinstance(doc, dict) and "polyhedron" in doc:
        check_keys(doc, {"polyhedron", "kirwan"}, "input")
        P = parse_polyhedron(doc["polyhedron"])
        K = parse_polyhedron(doc["kirwan"], P.root_datum, "kirwan") if doc.get("kirwan") is not None else None
        return P, K
    return parse_polyhedron(doc), None


def check_polyhedron(P, kirwan=None) -> dict:
    """The predicate summary printed by ``check``."""
    out, certs = {}, {}
    simple = ph.is_simple(P)
    out["simple"] = simple.value
    if not simple:
        certs["simple"] = simple.certificate
    if P.root_datum is not None:
        out["outward_positive"] = ph.is_outward_positive(P)
    if P.ambient == ph.CHAMBER:
        uni = ph.is_universal(P)
        out["universal"] = uni.value
        if not uni and uni.certificate != certs.get("simple"):
            certs["universal"] = uni.certificate
        if kirwan is not None:
            adm = ph.admissibility_13(P, kirwan)
            out["admissible_13"] = adm.value
            if not adm:
                certs["admissible_13"] = adm.certificate
    if certs:
        out["certificates"] = certs
    return out


def cmd_check(cfg: Config) -> int:
    P, K = _polyhedron_and_kirwan(_read_input(cfg))
    out = check_polyhedron(P, K)
    _emit(out)
    return EXIT_OK if all(v for k, v in out.items() if k != "certificates") else EXIT_FALSE


def cmd_extend(cfg: Config) -> int:
    P = parse_polyhedron(_read_input(cfg))
    if P.root_datum is None or P.ambient != ph.CHAMBER:
        raise InputError("extend needs a chamber-relative polyhedron with a root datum")
    if not ph.is_outward_positive(P):
        _emit({"outward_positive": False, "error": "W-invariant extension needs an outward-positive polyhedron"})
        return EXIT_FALSE
    _emit(ph.w_invariant_extension(P))
    return EXIT_OK


def cmd_fan(cfg: Config) -> int:
    P = parse_polyhedron(_read_input(cfg))
    _emit(ph.stacky_normal_fan(P))
    return EXIT_OK


def cmd_delzant(cfg: Config) -> int:
    doc = _read_input(cfg)
    check_keys(doc, {"betas", "xi"}, "input")
    if "betas" not in doc or not doc["betas"]:
        raise InputError("delzant needs a nonempty 'betas' list")
    betas = [integer_vector(b, f"betas[{i}]") for i, b in enumerate(doc["betas"])]
    if len({len(b) for b in betas}) != 1:
        raise InputError("all betas must have the same length")
    seq = delzant_sequence(betas)
    out = seq.to_dict()
    if doc.get("xi") is not None:
        xi = rational_vector(doc["xi"], "xi")
        if len(xi) != len(betas):
            raise InputError("xi must have one entry per beta")
        out["moment_image"] = delzant_moment_image(betas, xi)
    _emit(out)
    return EXIT_OK if seq.exact_on_right else EXIT_FALSE


def _cone_output(cone, member=None) -> dict:
    out = cone.to_dict()
    if cone.dim <= MAX_HILBERT_DIM:
        out["hilbert_basis"] = [list(v) for v in hilbert_basis(cone, member)]
    return out


def cmd_vinberg_cone(cfg: Config) -> int:
    doc = _read_input(cfg)
    check_keys(doc, {"root_datum"}, "input")
    rd = parse_root_datum(doc["root_datum"])
    _emit(_cone_output(vinberg_cone(rd), VinbergLattice(rd).member_flat))
    return EXIT_OK


def cmd_extended_cone(cfg: Config) -> int:
    doc = _read_input(cfg)
    check_keys(doc, {"root_datum", "betas"}, "input")
    rd = parse_root_datum(doc["root_datum"])
    betas = [integer_vector(b, f"betas[{i}]") for i, b in enumerate(doc.get("betas", []))]
    if any(len(b) != rd.rank for b in betas):
        raise InputError("betas must have the rank of the root datum")
    _emit(_cone_output(extended_cone(rd, betas)))
    return EXIT_OK


def cmd_cut(cfg: Config) -> int:
    doc = _read_input(cfg)
    check_keys(doc, {"kirwan", "polyhedron", "root_datum"}, "input")
    rd = parse_root_datum(doc["root_datum"]) if doc.get("root_datum") is not None else None
    K = parse_polyhedron(doc["kirwan"], rd, "kirwan")
    P = parse_polyhedron(doc["polyhedron"], K.root_datum, "polyhedron")
    if K.root_datum != P.root_datum:
        raise InputError("kirwan and polyhedron have different root data")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = kirwan_cut(K, P)
    out = res.polyhedron.to_dict()
    out["empty"] = res.is_empty
    out["admissible"] = res.admissible
    if res.certificate:
        out["certificate"] = res.certificate
    _emit(out)
    return EXIT_OK if res.admissible else EXIT_FALSE


def cmd_strata(cfg: Config) -> int:
    if cfg.n is not None:
        n, eps = cfg.n, rational(cfg.eps if cfg.eps is not None else 0, "eps")
    else:
        doc = _read_input(cfg)
        check_keys(doc, {"n", "eps"}, "input")
        if not isinstance(doc.get("n"), int) or doc["n"] < 1:
            raise InputError("'n' must be a positive integer")
        n, eps = doc["n"], rational(doc.get("eps", 0), "eps")
    if n < 1:
        raise InputError("n must be positive")
    strata = ph.weitsman_strata(n, eps)
    closure = ph.weitsman_closure(n, eps)
    disjoint = ph.strata_pairwise_disjoint(strata)
    inside = all(ph.stratum_in_closure(s, closure) for s in strata)
    cover = ph.strata_cover_closure(strata, closure)
    _emit({"n": n, "eps": eps, "strata": strata, "pairwise_disjoint": disjoint,
           "union_is_closure": inside and cover})
    return EXIT_OK if disjoint and inside and cover else EXIT_FALSE


def cmd_is_delzant(cfg: Config) -> int:
    doc = _read_input(cfg)
    if isinstance(doc, dict) and "vertices" in doc:
        check_keys(doc, {"vertices", "lattice", "root_datum"}, "input")
        rd = parse_root_datum(doc["root_datum"]) if doc.get("root_datum") is not None else None
        target = [rational_vector(v, "vertex") for v in doc["vertices"]]
        if not target:
            raise InputError("no vertices given")
        lattice = doc.get("lattice", "weight")
    else:
        if isinstance(doc, dict) and "polyhedron" in doc:
            check_keys(doc, {"polyhedron", "lattice"}, "input")
            lattice = doc.get("lattice", "weight")
            doc = doc["polyhedron"]
        else:
            lattice = "weight"
        target = parse_polyhedron(doc)
        rd = target.root_datum
    try:
        result = ph.is_delzant(target, lattice, rd)
    except ph.PolyhedronError as err:
        raise InputError(str(err)) from None
    _emit({"delzant": result})
    return EXIT_OK if result else EXIT_FALSE


def cmd_verify(cfg: Config) -> int:
    names = verify.SUITES if cfg.suite == "all" else (cfg.suite,)
    if cfg.suite != "all" and cfg.suite not in verify.SUITES:
        raise InputError(f"unknown suite {cfg.suite!r}; choose from all, {', '.join(verify.SUITES)}")
    if cfg.n is not None and not 1 <= cfg.n <= 6:
        raise InputError("--n must be between 1 and 6")
    reports = []
    for name in names:
        reports += verify.run_suite(name, seed=cfg.seed, trials=cfg.trials, n=cfg.n, subgroup=cfg.subgroup,
                                    tol=cfg.tolerances)
    ok = all(r["pass"] for r in reports)
    _emit({"seed": cfg.seed, "reports": reports, "pass": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_plot(cfg: Config) -> int:
    doc = _read_input(cfg)
    if isinstance(doc, dict) and "polyhedra" in doc:
        check_keys(doc, {"root_datum", "polyhedra", "fan"}, "input")
        rd = parse_root_datum(doc["root_datum"])
        polys = [parse_polyhedron(p, rd, f"polyhedra[{i}]") for i, p in enumerate(doc["polyhedra"])]
        fan = bool(doc.get("fan", False)) or cfg.fan
    else:
        P = parse_polyhedron(doc)
        if P.root_datum is None:
            raise InputError("plot needs a root datum")
        rd, polys, fan = P.root_datum, [P], cfg.fan
    svg = plot_rank2(rd, polys, fan=fan, width=cfg.width, margin=cfg.margin, show_normals=cfg.show_normals)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


HANDLERS = {
    "check": cmd_check,
    "extend": cmd_extend,
    "fan": cmd_fan,
    "delzant": cmd_delzant,
    "vinberg-cone": cmd_vinberg_cone,
    "extended-cone": cmd_extended_cone,
    "cut": cmd_cut,
    "strata": cmd_strata,
    "is-delzant": cmd_is_delzant,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def run(cfg: Config) -> int:
    try:
        return HANDLERS[cfg.command](cfg)
    except (InputError, UnsupportedCartanType, PlotError, ConeError, ph.PolyhedronError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symcut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="JSON input file ('-' or omitted: stdin)")
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    common.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE", help="override a tolerance")
    common.add_argument("--tolerance-file", help=f"JSON tolerance overrides (default from ${TOLERANCE_ENV})")
    common.add_argument("--config", help="JSON file with Config fields")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=COMMAND_HELP[name])
        if name == "plot":
            p.add_argument("-o", "--output")
            p.add_argument("--width", type=int, default=400)
            p.add_argument("--margin", type=int, default=20)
            p.add_argument("--no-normals", action="store_true")
            p.add_argument("--fan", action="store_true")
        if name == "verify":
            p.add_argument("--suite", default="all")
            p.add_argument("--n", type=int)
            p.add_argument("--trials", type=int)
            p.add_argument("--subgroup", choices=("unitary", "special_unitary"))
        if name == "strata":
            p.add_argument("--n", type=int)
            p.add_argument("--eps")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    tol = {}
    env = os.environ.get(TOLERANCE_ENV)
    if env:
        tol.update(load_tolerance_file(env))
    if args.tolerance_file:
        tol.update(load_tolerance_file(args.tolerance_file))
    for item in args.tol:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--tol expects KEY=VALUE, got {item!r}")
        if key not in verify.DEFAULT_TOLERANCES:
            raise InputError(f"unknown tolerance key {key!r}")
        try:
            tol[key] = float(value)
        except ValueError:
            raise InputError(f"tolerance {key} is not a number: {value!r}") from None
    data = {"command": args.command, "input_path": args.input, "seed": args.seed, "tolerances": tol}
    for name in ("width", "margin", "fan", "suite", "n", "trials", "subgroup", "eps"):
        if hasattr(args, name):
            data[name] = getattr(args, name)
    if hasattr(args, "output"):
        data["output_path"] = args.output
    if hasattr(args, "no_normals"):
        data["show_normals"] = not args.no_normals
    if args.config:
        extra = load_json_file(args.config)
        check_keys(extra, {f.name for f in fields(Config)} - {"command"}, "config")
        data.update(extra)
    return Config.from_dict(data)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except (InputError, KeyError, TypeError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


"""Command-line interface: ``polyaut <subcommand> ...``.

Exit status is 0 on success, 1 when the input is well formed but the
mathematical operation is undefined for it (not an automorphism, not
locally nilpotent, not reconstructible, ...), and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import adjoint, automorphism, symcurve, torus, vectorfield
from .errors import ContractError, DomainError, PolyautError
from .polycore import parse_poly, to_rational
from .sampling import random_distinct_point, random_tame

SCHEMA = adjoint.SCHEMA_VERSION


def _emit(args, text: str, obj: dict):
    if args.json:
        print(json.dumps({"schema": SCHEMA, **obj}, sort_keys=False))
    else:
        print(text)


def _dim(args, default=None):
    n = args.n if args.n is not None else default
    if n is None:
        raise ContractError("the dimension flag -n is required here")
    if n < 1:
        raise ContractError("dimension must be positive")
    return n


def _rational_list(text):
    parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p.strip()]
    if not parts:
        raise ContractError(f"empty point {text!r}")
    out = []
    for p in parts:
        try:
            out.append(to_rational(p.strip()))
        except (ValueError, ZeroDivisionError):
            raise ContractError(f"not a rational number: {p.strip()!r}") from None
    return tuple(out)


# -- subcommands ---------------------------------------------------------------


def cmd_compose(args):
    n = _dim(args)
    F = automorphism.parse_map(args.F, n)
    G = automorphism.parse_map(args.G, n)
    H = automorphism.compose(F, G)
    _emit(args, automorphism.format_map(H), {"map": automorphism.format_map(H)})


def cmd_invert(args):
    n = _dim(args)
    A = automorphism.invert(automorphism.parse_map(args.map, n))
    text = automorphism.format_map(A.inverse)
    _emit(args, text, {"map": automorphism.format_map(A.forward), "inverse": text,
                       "jac": str(A.jac_value)})


def cmd_jac(args):
    n = _dim(args)
    d = automorphism.jacobian_det(automorphism.parse_map(args.map, n))
    constant = d.is_constant() and not d.is_zero()
    if constant:
        text = str(d)
    else:
        text = f"{d}\nnote: {'zero' if d.is_zero() else 'non-constant'}"
    _emit(args, text, {"det": str(d), "constant": constant})


def _lnd(args, n):
    delta = vectorfield.parse_field(args.field, n)
    return delta, vectorfield.is_locally_nilpotent(delta, args.bound)


def cmd_exp(args):
    n = _dim(args)
    delta, cert = _lnd(args, n)
    A = vectorfield.exp(delta, cert)
    text = automorphism.format_map(A.forward)
    _emit(args, text, {"map": text, "inverse": automorphism.format_map(A.inverse),
                       "jac": str(A.jac_value)})


def cmd_lnd_check(args):
    n = _dim(args)
    _, res = _lnd(args, n)
    obj = {"status": res.status.value, "bound": res.bound}
    if res.orders is not None:
        obj["orders"] = list(res.orders)
    if res.reason:
        obj["reason"] = res.reason
    text = res.status.value
    if res.orders is not None:
        text += " (orders " + ", ".join(map(str, res.orders)) + ")"
    elif res.reason:
        text += f" ({res.reason})"
    _emit(args, text, obj)


def cmd_modify(args):
    n = _dim(args)
    f = parse_poly(args.f, n)
    delta = vectorfield.parse_field(args.field, n)
    mod = vectorfield.modify(f, delta)
    res = vectorfield.is_locally_nilpotent(mod, args.bound)
    text = f"{mod}\nlnd: {res.status.value}"
    _emit(args, text, {"field": str(mod), "lnd": res.status.value})


def cmd_ad(args):
    n = _dim(args)
    A = automorphism.invert(automorphism.parse_map(args.map, n))
    if args.inverse_data:
        if args.field is not None:
            raise ContractError("--inverse-data takes no vector field")
        data = adjoint.inverse_adjoint_data(A)
        print(data.to_json())
        return
    if args.field is None:
        raise ContractError("ad needs a vector field (or --inverse-data)")
    out = adjoint.ad(A, vectorfield.parse_field(args.field, n))
    _emit(args, str(out), {"field": str(out)})


def cmd_reconstruct(args):
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ContractError(f"cannot read {args.file}: {exc.strerror}") from None
    data = adjoint.LieAutData.from_json(text)
    if args.n is not None and args.n != data.n:
        raise ContractError(f"-n {args.n} disagrees with n={data.n} in the data")
    A = adjoint.reconstruct(data)
    text = automorphism.format_map(A.forward)
    _emit(args, text, {"map": text})


def cmd_weights(args):
    n = _dim(args)
    roots = torus.enumerate_root_subgroups(n, args.dmax)
    rows = [r.as_row() for r in roots]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "n": n, "dmax": args.dmax,
                          "distinct": torus.weights_distinct(roots), "roots": rows}))
        return
    for r in rows:
        w = ",".join(map(str, r["weight"]))
        tw = ",".join(map(str, r["tprime_weight"]))
        print(f"{r['monomial']} d/dx{r['i']}  weight ({w})  tprime ({tw})")


def cmd_decompose(args):
    n = _dim(args)
    counts = torus.decompose_module(n, args.degree, args.module)
    weights = sorted(counts, reverse=True)
    free = all(counts[w] == 1 for w in weights)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "n": n, "d": args.degree, "module": args.module,
                          "highest_weights": [{"weight": list(w), "multiplicity": counts[w]}
                                              for w in weights],
                          "multiplicity_free": free}))
        return
    for w in weights:
        print("(" + ",".join(map(str, w)) + f")  multiplicity {counts[w]}")
    print("multiplicity-free" if free else "not multiplicity-free")


def cmd_curve(args):
    if args.point is not None:
        point = _rational_list(args.point)
    else:
        point = random_distinct_point(random.Random(args.seed), _dim(args))
    n = len(point)
    if args.n is not None and args.n != n:
        raise ContractError(f"point has {n} coordinates, -n says {args.n}")
    if n < 2:
        raise ContractError("need n >= 2")
    fiber = symcurve.fiber_through(point, args.basis)
    if args.group:
        gens = [symcurve.parse_cycles(g, n) for g in args.group]
        group = symcurve.generate_group(gens, n)
    else:
        group = symcurve.generate_group(
            [symcurve.parse_cycles("(1 2)", n),
             symcurve.parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n)], n)
    curve = symcurve.puncture(fiber, point, group)
    obj = {"generators": [str(g) for g in fiber.generators],
           "point": [str(v) for v in point],
           "smooth": symcurve.smooth_at(fiber, point),
           "orbit": [[str(v) for v in p] for p in curve.removed_orbit],
           "orbit_size": len(curve.removed_orbit)}
    if args.json:
        print(json.dumps({"schema": SCHEMA, **obj}))
        return
    print("generators: " + "; ".join(obj["generators"]))
    print("point: " + symcurve.format_point(point))
    print(f"smooth: {'yes' if obj['smooth'] else 'no'}")
    print(f"orbit_size: {obj['orbit_size']}")


def cmd_newton(args):
    n = _dim(args)
    w = symcurve.newton_convert(n, args.j, args.direction)
    src, dst = ("s", "p") if args.direction == "p_from_s" else ("p", "s")
    expr = str(w.expression).replace("x", src)
    text = f"{dst}{args.j} = {expr}\nresidual: {w.residual}"
    _emit(args, text, {"n": n, "j": args.j, "direction": args.direction,
                       "expression": expr, "residual": str(w.residual),
                       "verified": w.verified})


def cmd_sample(args):
    n = _dim(args)
    A = random_tame(random.Random(args.seed), n, max_length=args.length,
                    degree_cap=args.degree_cap)
    text = automorphism.format_map(A.forward)
    _emit(args, text, {"map": text, "inverse": automorphism.format_map(A.inverse)})


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=None, help="dimension")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--bound", type=int, default=vectorfield.DEFAULT_BOUND,
                        help="iteration bound for the local nilpotency test")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling")

    p = argparse.ArgumentParser(prog="polyaut",
                                description="Exact computations with polynomial automorphisms.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("compose", cmd_compose, "composition F o G")
    sp.add_argument("F")
    sp.add_argument("G")
    add("invert", cmd_invert, "certified inverse of a map").add_argument("map")
    add("jac", cmd_jac, "Jacobian determinant").add_argument("map")
    add("exp", cmd_exp, "exponential of a locally nilpotent field").add_argument("field")
    add("lnd-check", cmd_lnd_check, "bounded local nilpotency test").add_argument("field")
    sp = add("modify", cmd_modify, "modification f * delta by an invariant")
    sp.add_argument("f")
    sp.add_argument("field")
    sp = add("ad", cmd_ad, "pushforward of a field along an automorphism")
    sp.add_argument("map")
    sp.add_argument("field", nargs="?")
    sp.add_argument("--inverse-data", action="store_true",
                    help="print the probe data of Ad(map^-1) as JSON instead")
    add("reconstruct", cmd_reconstruct,
        "recover f from the JSON probe data of Ad(f^-1)").add_argument("file")
    add("weights", cmd_weights, "root subgroups and their torus weights").add_argument(
        "--dmax", type=int, default=1)
    sp = add("decompose", cmd_decompose, "highest weights of a degree-d piece")
    sp.add_argument("-d", "--degree", type=int, default=1)
    sp.add_argument("--module", choices=["tensor", "fields"], default="tensor")
    sp = add("curve", cmd_curve, "symmetric fiber through a point, with a removed orbit")
    sp.add_argument("--point", help="comma separated rationals, e.g. 0,1,2")
    sp.add_argument("--group", action="append",
                    help="generator in cycle notation; repeat for more (default: all of S_n)")
    sp.add_argument("--basis", choices=[symcurve.ELEMENTARY, symcurve.POWER_SUM],
                    default=symcurve.ELEMENTARY)
    sp = add("newton", cmd_newton, "Newton identity between p_j and s_1..s_j")
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("--direction", choices=["p_from_s", "s_from_p"], default="p_from_s")
    sp = add("sample", cmd_sample, "seeded random tame automorphism")
    sp.add_argument("--length", type=int, default=5)
    sp.add_argument("--degree-cap", type=int, default=16)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PolyautError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

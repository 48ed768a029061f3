"""Command-line interface.

Exit codes: 0 success (and mathematically "true" verdicts), 1 for
mathematically "false" verdicts, 2 for input or validation errors.
"""

import argparse
import json
import sys

from . import fileio
from .laurent import bangle, verify_bangle_equals_generic
from .quiver import NotGentle, is_jacobian, rho_blocks
from .schemes import block_critical_summands, canonical_decomposition, \
    ceh_values, component_dim, components, decorated_g_vector, dim_gl, \
    is_generically_reduced, is_smooth_point, is_tau_reduced, tangent_dim
from .strings import rank_function_of
from .surface import build_QT, eta, shear_of_lamination


def _emit(args, payload, human_lines):
    if args.format == "json":
        text = json.dumps(payload, indent=2, default=str)
    else:
        text = "\n".join(human_lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_check(args):
    try:
        A = fileio.load_algebra(args.input)
    except NotGentle as exc:
        _emit(args, {"gentle": False, "reason": str(exc)},
              [f"not gentle: {exc}"])
        return 1
    jac = is_jacobian(A)
    blocks = rho_blocks(A)
    payload = {
        "gentle": True,
        "jacobian": jac,
        "blocks": [{"id": b.block_id, "type": b.type_name,
                    "arrows": list(b.arrows), "vertices": list(b.vertices)}
                   for b in blocks],
    }
    sizes = ",".join(str(len(b.vertices)) for b in blocks if b.arrows)
    verdict = "gentle Jacobian"
    if not jac:
        why = "relation without completing 3-cycle"
        if not A.quiver.is_connected():
            why = "disconnected"
        for aid, s, t in A.quiver.arrows:
            if s == t:
                why = f"loop at {s}"
                break
        payload["not_jacobian_reason"] = why
        verdict = f"gentle; not Jacobian ({why})"
    _emit(args, payload, [f"{verdict}; blocks: {sizes}"] +
          [f"  block {b.block_id}: {b.type_name} arrows={list(b.arrows)}"
           for b in blocks])
    return 0


def cmd_components(args):
    A = fileio.load_algebra(args.input)
    d = tuple(int(x) for x in args.dims.split(","))
    if len(d) != A.n:
        raise fileio.ParseError("--dims length must match the vertex count")
    jac = is_jacobian(A)
    out = []
    lines = [f"mod(A, {list(d)}): {len(components(A, d))} component(s); "
             f"dim GL = {dim_gl(d)}"]
    for Z in components(A, d):
        dz = component_dim(A, Z)
        c, e, h = ceh_values(A, Z, seed=args.seed)
        r = Z.rank()
        critical = [
            [a, b] for a, b in A.relations
            if r[a] < d[A.t(a) - 1] and r[b] < d[A.s(b) - 1]
            and r[a] + r[b] < d[A.s(a) - 1]
            and all(r[a2] + r[a] < d[A.t(a) - 1]
                    for a2 in A.arrow_ids if (a2, a) in A.relations)
            and all(r[b] + r[b2] < d[A.s(b) - 1]
                    for b2 in A.arrow_ids if (b, b2) in A.relations)]
        entry = {
            "rank_function": dict(Z.r),
            "dim": dz,
            "band_only": dz == dim_gl(d),
            "generically_reduced": is_generically_reduced(A, Z),
            # the generic point is smooth iff no relation pair is critical
            # at the maximal rank function; those pairs describe where the
            # singular locus of the ambient scheme meets this component
            "generic_smooth": not critical,
            "singular_relation_pairs": sorted(critical),
            "c": c, "e": e, "h": h,
        }
        if jac:
            entry["tau_reduced"] = is_tau_reduced(A, Z)
        try:
            entry["decomposition"] = [
                {"type": k, "word": str(w)}
                for k, w in canonical_decomposition(A, Z, args.max_len,
                                                    seed=args.seed)]
        except Exception as exc:  # dictionary bound too small
            entry["decomposition"] = f"unavailable: {exc}"
        out.append(entry)
        lines.append(f"  r={dict(Z.r)} dim={dz} ceh=({c},{e},{h})"
                     + (f" tau_reduced={entry['tau_reduced']}" if jac else "")
                     + f" gen_reduced={entry['generically_reduced']}")
    _emit(args, {"d": list(d), "dim_gl": dim_gl(d), "components": out}, lines)
    return 0


def cmd_smooth(args):
    A = fileio.load_algebra(args.input)
    M = fileio.load_module(A, args.module)
    smooth = is_smooth_point(A, M)
    payload = {
        "smooth": smooth,
        "tangent_dim": tangent_dim(A, M),
        "rank_function": rank_function_of(A, M),
    }
    _emit(args, payload,
          [("smooth" if smooth else "singular") +
           f" (tangent dimension {payload['tangent_dim']})"])
    return 0 if smooth else 1


def cmd_bangle(args):
    T = fileio.load_triangulation(args.input)
    gamma = fileio.parse_curve_text(T, args.curve)
    poly = bangle(T, gamma)
    _emit(args, {"curve": fileio.curve_to_dict(gamma),
                 "terms": poly.to_json()}, [str(poly)])
    return 0


def cmd_shear(args):
    T = fileio.load_triangulation(args.input)
    A = build_QT(T)
    L = fileio.lamination_from_file(T, args.lamination, algebra=A)
    s = shear_of_lamination(T, L)
    _emit(args, {"shear": list(s)}, [str(list(s))])
    return 0


def cmd_eta(args):
    T = fileio.load_triangulation(args.input)
    A = build_QT(T)
    L = fileio.lamination_from_file(T, args.lamination, algebra=A)
    DZ = eta(T, L, algebra=A)
    g = decorated_g_vector(A, DZ, seed=args.seed)
    crit = block_critical_summands(A, DZ.component)
    payload = {
        "d": list(DZ.component.d),
        "rank_function": dict(DZ.component.r),
        "decoration": list(DZ.v),
        "dim": component_dim(A, DZ.component),
        "tau_reduced": not crit,
        "g_vector": list(g),
    }
    _emit(args, payload,
          [f"component d={payload['d']} v={payload['decoration']} "
           f"dim={payload['dim']} g={payload['g_vector']}"])
    return 0


def cmd_verify(args):
    T = fileio.load_triangulation(args.input)
    A = build_QT(T)
    L = fileio.lamination_from_file(T, args.lamination, algebra=A)
    equal, lhs, rhs, diff = verify_bangle_equals_generic(
        T, L, bound=args.max_len, algebra=A)
    payload = {"equal": equal, "bangle": lhs.to_json(),
               "generic_cc": rhs.to_json()}
    lines = ["EQUAL" if equal else "UNEQUAL"]
    if diff:
        payload["first_diff"] = {"monomial": [list(diff[0][0]),
                                              list(diff[0][1])],
                                 "bangle": diff[1], "generic_cc": diff[2]}
        lines.append(f"first differing term: {diff}")
    _emit(args, payload, lines)
    return 0 if equal else 1


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="gentlelam",
        description="Gentle algebras: module scheme components, surface "
                    "laminations, bangle functions")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True,
                           help="input file (algebra or triangulation JSON)")
        p.add_argument("--format", choices=("human", "json"),
                       default="human")
        p.add_argument("--output", help="write the report to a file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-len", type=int, default=12,
                       help="dictionary bound for decompositions")

    p = sub.add_parser("check", help="gentle/Jacobian verdict and blocks")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("components", help="components of mod(A, d)")
    common(p)
    p.add_argument("--dims", required=True, help="comma-separated d")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("smooth", help="smoothness of a module point")
    common(p)
    p.add_argument("--module", required=True, help="module JSON file")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("bangle", help="Laurent expansion of a curve")
    common(p)
    p.add_argument("--curve", required=True,
                   help="'arc:J', 'loop:j1,j2,...' or a JSON curve object")
    p.set_defaults(func=cmd_bangle)

    p = sub.add_parser("shear", help="shear coordinates of a lamination")
    common(p)
    p.add_argument("--lamination", required=True)
    p.set_defaults(func=cmd_shear)

    p = sub.add_parser("eta", help="tau-reduced component of a lamination")
    common(p)
    p.add_argument("--lamination", required=True)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("verify",
                       help="bangle vs generic dual CC function")
    common(p)
    p.add_argument("--lamination", required=True)
    p.set_defaults(func=cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (fileio.ParseError, ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

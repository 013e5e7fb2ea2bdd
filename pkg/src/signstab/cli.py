"""Command-line front end.

Every subcommand reads the declared JSON formats, runs the engine, and
emits a deterministic JSON report on stdout (schema_version, command,
resolved inputs, result).  A one-line human summary goes to stderr unless
--json-only is given.  Exit codes: 0 success, 1 domain error, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import io as sio
from .errors import SignstabError
from .matrices import freeze as mfreeze
from .matrices import int_inverse, transpose
from .reduction import (
    edge_compatibility,
    freeze,
    hereditary_check,
    reduced_subsequence,
)
from .scalars import format_scalar, parse_scalar
from .seeds import (
    Flip,
    MutationPath,
    Permute,
    Seed,
    c_matrix,
    g_matrix,
    mutate_b,
)
from .stability import (
    char_poly,
    enumerate_realizable_signs_with_witnesses,
    iterate_orbit,
    spectral_radius,
    stretch_factor,
    verify_eigenpair,
)
from .traintrack import (
    annulus_solve,
    in_triangle_regime,
    pants_boundary_sums,
    pants_measures,
    validate_measure,
)
from .tropical import (
    parse_sign_str,
    presentation_matrix_at_point,
    presentation_matrix_for_sign,
    sign_of_path,
    sign_str,
    transport,
)


def _inline_or_file(text: str):
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        return json.loads(text)
    return sio._load_json(Path(text))


def _point_arg(text: str):
    return sio.point_from_obj(_inline_or_file(text), where="--point")


def _matrix_arg(text: str):
    obj = _inline_or_file(text)
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("B"))
    return mfreeze(obj)


def _emit(args, command: str, inputs: dict, result: dict, summary: str) -> int:
    text = sio.render_report(command, inputs, result)
    if not args.json_only:
        print(summary, file=sys.stderr)
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


def _matrix_json(m):
    return [list(row) for row in m]


def _point_json(w):
    return [sio.coord_json(x) for x in w]


# -- subcommand handlers ---------------------------------------------------------


def cmd_mutate(args) -> int:
    seed = sio.load_seed(args.seed)
    out = seed
    for k in _int_list(args.k):
        out = mutate_b(out, k)
    return _emit(
        args,
        "mutate",
        {"seed": sio.seed_to_obj(seed), "k": _int_list(args.k)},
        {"seed": sio.seed_to_obj(out)},
        f"mutated at {args.k}",
    )


def _int_list(text: str) -> list[int]:
    return [int(t) for t in str(text).replace(",", " ").split()]


def cmd_transport(args) -> int:
    path = sio.load_path(args.path)
    w = _point_arg(args.point)
    final, mids = transport(path, w)
    result = {"final": _point_json(final)}
    if args.trace:
        result["intermediates"] = [_point_json(m) for m in mids]
    return _emit(
        args,
        "transport",
        {"path": sio.path_to_obj(path), "point": _point_json(w)},
        result,
        f"transported to {_point_json(final)}",
    )


def cmd_sign(args) -> int:
    path = sio.load_path(args.path)
    w = _point_arg(args.point)
    eps = sign_of_path(path, w)
    return _emit(
        args,
        "sign",
        {"path": sio.path_to_obj(path), "point": _point_json(w)},
        {"sign": sign_str(eps)},
        f"sign {','.join(sign_str(eps))}",
    )


def _check_orbit_flags(args) -> bool:
    if args.iters < 1 or (
        args.window is not None
        and not 2 <= args.window <= args.iters
    ):
        print("orbit flags need iters >= 1 and 2 <= window <= iters",
              file=sys.stderr)
        return False
    return True


def cmd_orbit(args) -> int:
    if not _check_orbit_flags(args):
        return 2
    path = sio.load_path(args.path)
    w = _point_arg(args.point)
    report = iterate_orbit(path, w, args.iters, window=args.window)
    rows = [
        {"n": i + 1, "sign": sign_str(s), "point": _point_json(p)}
        for i, (s, p) in enumerate(report.iterations)
    ]
    result = {
        "iterations": rows,
        "window": report.window,
        "stable": sign_str(report.detected_stable) if report.detected_stable else None,
        "weak_stable": sign_str(report.detected_weak_stable),
        "weak_all_zero": report.all_zero_warning,
        "stabilization_index": report.stabilization_index,
        "empirical": True,
    }
    return _emit(
        args,
        "orbit",
        {"path": sio.path_to_obj(path), "point": _point_json(w),
         "iters": args.iters, "window": report.window},
        result,
        f"orbit of {args.iters} iterations, stable={result['stable']}",
    )


def cmd_stable_sign(args) -> int:
    if not _check_orbit_flags(args):
        return 2
    path = sio.load_path(args.path)
    w = _point_arg(args.point)
    report = iterate_orbit(path, w, args.iters, window=args.window)
    result = {
        "stable": sign_str(report.detected_stable) if report.detected_stable else None,
        "weak_stable": sign_str(report.detected_weak_stable),
        "weak_all_zero": report.all_zero_warning,
        "window": report.window,
        "empirical": True,
    }
    return _emit(
        args,
        "stable-sign",
        {"path": sio.path_to_obj(path), "point": _point_json(w),
         "iters": args.iters, "window": report.window},
        result,
        f"stable={result['stable']} weak={result['weak_stable']}",
    )


def cmd_signs_enumerate(args) -> int:
    path = sio.load_path(args.path)
    found = enumerate_realizable_signs_with_witnesses(
        path, rng_seed=args.seed, samples=args.samples, max_branch=args.max_branch
    )
    signs = sorted(found)
    result = {
        "count": len(signs),
        "signs": [sign_str(s) for s in signs],
        "witnesses": {sign_str(s): _point_json(found[s]) for s in signs},
        "rng_seed": args.seed,
    }
    return _emit(
        args,
        "signs-enumerate",
        {"path": sio.path_to_obj(path), "rng_seed": args.seed},
        result,
        f"{len(signs)} realizable strict sign sequences",
    )


def cmd_presentation(args) -> int:
    path = sio.load_path(args.path)
    if args.sign:
        eps = parse_sign_str(args.sign)
        m = presentation_matrix_for_sign(path, eps)
        inputs = {"path": sio.path_to_obj(path), "sign": sign_str(eps)}
    else:
        w = _point_arg(args.point)
        m = presentation_matrix_at_point(path, w)
        inputs = {"path": sio.path_to_obj(path), "point": _point_json(w)}
    return _emit(args, "presentation", inputs, {"matrix": _matrix_json(m)},
                 "presentation matrix computed")


def cmd_charpoly(args) -> int:
    if args.matrix:
        m = _matrix_arg(args.matrix)
        inputs = {"matrix": _matrix_json(m)}
    elif not (args.path and args.sign):
        print("charpoly: need --matrix or both --path and --sign",
              file=sys.stderr)
        return 2
    else:
        path = sio.load_path(args.path)
        eps = parse_sign_str(args.sign)
        m = presentation_matrix_for_sign(path, eps)
        inputs = {"path": sio.path_to_obj(path), "sign": sign_str(eps)}
    p = char_poly(m)
    rho, bound = spectral_radius(m)
    return _emit(
        args,
        "charpoly",
        inputs,
        {"coefficients_ascending": list(p.coeffs), "pretty": str(p),
         "spectral_radius": rho, "radius_bound": bound},
        f"charpoly {p}",
    )


def _check_radicand(values, d):
    if d is None:
        return
    from .errors import RadicandMismatchError
    from .scalars import QuadExt

    for v in values:
        if isinstance(v, QuadExt) and v.d != d:
            raise RadicandMismatchError(
                f"scalar over sqrt({v.d}) but --radicand {d} was required"
            )


def cmd_stretch(args) -> int:
    path = sio.load_path(args.path)
    eps = parse_sign_str(args.stable)
    candidate = parse_scalar(args.candidate) if args.candidate else None
    _check_radicand([candidate] if candidate is not None else [], args.radicand)
    report = stretch_factor(path, eps, candidate=candidate)
    result = {
        "lambda": report.value,
        "table": [
            {"sign": sign_str(e), "rho": r, "bound": b}
            for e, r, b in report.table
        ],
        "radii_all_equal": report.radii_all_equal,
        "exact_verified": report.exact_verified,
        "exact_value": format_scalar(report.exact_value)
        if report.exact_value is not None
        else None,
    }
    return _emit(
        args,
        "stretch",
        {"path": sio.path_to_obj(path), "stable": sign_str(eps)},
        result,
        f"lambda = {report.value:.10f}",
    )


def cmd_eigencheck(args) -> int:
    m = _matrix_arg(args.matrix)
    lam = parse_scalar(args.eigenvalue)
    x = _point_arg(args.vector)
    _check_radicand([lam, *x], args.radicand)
    ok = verify_eigenpair(m, lam, x)
    return _emit(
        args,
        "eigencheck",
        {"matrix": _matrix_json(m), "eigenvalue": format_scalar(lam),
         "vector": _point_json(x)},
        {"verified": ok},
        f"eigenpair {'verified' if ok else 'REJECTED'}",
    )


def cmd_compat(args) -> int:
    from .reduction import cone_sign_caveat, generator_coordinate_trace

    path = sio.load_path(args.path)
    cone = sio.load_cone(args.cone)
    compat = edge_compatibility(path, cone)
    result = {
        "compatible": compat,
        "bitmask": "".join("1" if c else "0" for c in compat),
        "mixed_sign_caveat": cone_sign_caveat(path, cone),
    }
    if args.trace:
        result["generator_coordinates"] = [
            [sio.coord_json(v) for v in row]
            for row in generator_coordinate_trace(path, cone)
        ]
    return _emit(
        args,
        "compat",
        {"path": sio.path_to_obj(path), "cone": sio.cone_to_obj(cone)},
        result,
        f"compatible flips: {[i for i, c in enumerate(compat) if c]}",
    )


def cmd_hereditary(args) -> int:
    path = sio.load_path(args.path)
    cone = sio.load_cone(args.cone)
    eps = parse_sign_str(args.stable)
    report = hereditary_check(path, cone, eps)
    return _emit(
        args,
        "hereditary",
        {"path": sio.path_to_obj(path), "cone": sio.cone_to_obj(cone),
         "stable": sign_str(eps)},
        {"passes": report.passes,
         "compatible_positions": report.compatible_positions,
         "violations": report.violations},
        f"hereditary: {'pass' if report.passes else 'FAIL'}",
    )


def cmd_skeleton(args) -> int:
    path = sio.load_path(args.path)
    cone = sio.load_cone(args.cone)
    skel = reduced_subsequence(path, cone)
    return _emit(
        args,
        "skeleton",
        {"path": sio.path_to_obj(path), "cone": sio.cone_to_obj(cone)},
        {"skeleton": [{"position": p, "flip": k} for p, k in skel]},
        f"{len(skel)} compatible flips",
    )


def cmd_freeze(args) -> int:
    seed = sio.load_seed(args.seed)
    out = freeze(seed, _int_list(args.freeze))
    return _emit(
        args,
        "freeze",
        {"seed": sio.seed_to_obj(seed), "freeze": _int_list(args.freeze)},
        {"seed": sio.seed_to_obj(out)},
        f"froze {args.freeze}",
    )


def cmd_duality_check(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.count):
        seed = _random_seed(rng, args.rank, args.max_entry)
        path = _random_path(rng, seed, args.length)
        c = c_matrix(path)
        g = g_matrix(path)
        if g != transpose(int_inverse(c)):
            failures += 1
    return _emit(
        args,
        "duality-check",
        {"count": args.count, "rank": args.rank, "max_entry": args.max_entry,
         "length": args.length, "rng_seed": args.seed},
        {"failures": failures, "ok": failures == 0, "rng_seed": args.seed},
        f"duality: {args.count - failures}/{args.count} ok "
        f"(rng seed {args.seed})",
    )


def _random_seed(rng: random.Random, max_rank: int, max_entry: int) -> Seed:
    n = rng.randint(2, max_rank)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b[i][j] = rng.randint(-max_entry, max_entry)
            b[j][i] = -b[i][j]
    return Seed(b, frozenset(range(n)))


def _random_path(rng: random.Random, seed: Seed, max_len: int) -> MutationPath:
    order = sorted(seed.unfrozen)
    steps = []
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.15:
            sigma = list(range(seed.n))
            rng.shuffle(order_copy := list(order))
            for idx, img in zip(order, order_copy):
                sigma[idx] = img
            steps.append(Permute(tuple(sigma)))
        else:
            steps.append(Flip(rng.choice(order)))
    return MutationPath(seed, tuple(steps))


def cmd_pants(args) -> int:
    m = pants_measures(Fraction(args.m1), Fraction(args.m2), Fraction(args.m3))
    sums = pants_boundary_sums(m)
    names = ("e11", "e12", "e13", "e22", "e23", "e33")
    return _emit(
        args,
        "pants",
        {"m1": args.m1, "m2": args.m2, "m3": args.m3},
        {
            "measures": {k: sio.coord_json(v) for k, v in zip(names, m)},
            "boundary_sums": [sio.coord_json(s) for s in sums],
            "triangle_regime": in_triangle_regime(args.m1, args.m2, args.m3),
        },
        f"pants measures {[str(x) for x in m]}",
    )


def cmd_annulus(args) -> int:
    family, e1, e2 = annulus_solve(Fraction(args.m), Fraction(args.t))
    return _emit(
        args,
        "annulus",
        {"m": args.m, "t": args.t},
        {"family": family, "e1": sio.coord_json(e1), "e2": sio.coord_json(e2)},
        f"annulus family {family}, edges {e1}, {e2}",
    )


def cmd_track_validate(args) -> int:
    track = sio.load_track(args.track)
    measure = sio.measure_from_obj(_inline_or_file(args.measure))
    ok, bad = validate_measure(track, measure)
    return _emit(
        args,
        "track-validate",
        {"track": {"edges": list(track.edges)},
         "measure": {k: sio.coord_json(v) for k, v in sorted(measure.items())}},
        {"ok": ok, "violating_switches": bad},
        f"switch conditions {'hold' if ok else 'FAIL'}",
    )


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="signstab",
        description="Exact tropical cluster X-dynamics and sign stability.",
    )
    top.add_argument("--json-only", action="store_true",
                     help="suppress the human summary on stderr")
    top.add_argument("-o", "--output", help="also write the report to a file")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("mutate", cmd_mutate, help="mutate a seed at one or more indices")
    p.add_argument("--seed", required=True, help="seed JSON file")
    p.add_argument("--k", required=True, help="index or comma list of indices")

    for name, fn in (("transport", cmd_transport), ("sign", cmd_sign)):
        p = add(name, fn)
        p.add_argument("--path", required=True)
        p.add_argument("--point", required=True,
                       help="point file or inline JSON list")
        if name == "transport":
            p.add_argument("--trace", action="store_true")

    for name, fn in (("orbit", cmd_orbit), ("stable-sign", cmd_stable_sign)):
        p = add(name, fn)
        p.add_argument("--path", required=True)
        p.add_argument("--point", required=True)
        p.add_argument("--iters", type=int, default=30)
        p.add_argument("--window", type=int, default=None)

    p = add("signs-enumerate", cmd_signs_enumerate)
    p.add_argument("--path", required=True)
    p.add_argument("--seed", type=int, default=0, help="RNG seed (printed)")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--max-branch", type=int, default=None)

    p = add("presentation", cmd_presentation)
    p.add_argument("--path", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sign")
    group.add_argument("--point")

    p = add("charpoly", cmd_charpoly)
    p.add_argument("--matrix", help="matrix file or inline JSON")
    p.add_argument("--path")
    p.add_argument("--sign")

    p = add("stretch", cmd_stretch)
    p.add_argument("--path", required=True)
    p.add_argument("--stable", required=True)
    p.add_argument("--candidate", help="exact scalar to certify against")
    p.add_argument("--radicand", type=int, default=None,
                   help="require exact scalars to live over sqrt(d)")

    p = add("eigencheck", cmd_eigencheck)
    p.add_argument("--matrix", required=True)
    p.add_argument("--eigenvalue", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--radicand", type=int, default=None,
                   help="require exact scalars to live over sqrt(d)")

    for name, fn in (("compat", cmd_compat), ("skeleton", cmd_skeleton)):
        p = add(name, fn)
        p.add_argument("--path", required=True)
        p.add_argument("--cone", required=True)
        if name == "compat":
            p.add_argument("--trace", action="store_true",
                           help="include per-generator coordinates per flip")

    p = add("hereditary", cmd_hereditary)
    p.add_argument("--path", required=True)
    p.add_argument("--cone", required=True)
    p.add_argument("--stable", required=True)

    p = add("freeze", cmd_freeze)
    p.add_argument("--seed", required=True, help="seed JSON file")
    p.add_argument("--freeze", required=True, help="comma list of indices")

    p = add("duality-check", cmd_duality_check)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--rank", type=int, default=6)
    p.add_argument("--max-entry", type=int, default=3)
    p.add_argument("--length", type=int, default=12)
    p.add_argument("--seed", type=int, default=0, help="RNG seed (printed)")

    p = add("pants", cmd_pants)
    for flag in ("--m1", "--m2", "--m3"):
        p.add_argument(flag, required=True)

    p = add("annulus", cmd_annulus)
    p.add_argument("--m", required=True)
    p.add_argument("--t", required=True)

    p = add("track-validate", cmd_track_validate)
    p.add_argument("--track", required=True)
    p.add_argument("--measure", required=True,
                   help="measure file or inline JSON object")

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SignstabError as exc:
        error = {"error": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(json.dumps(
            {"schema_version": sio.SCHEMA_VERSION, **error},
            sort_keys=True, indent=2) + "\n")
        if not args.json_only:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""JSON file formats for seeds, paths, points, cones, triangulations and
train tracks, plus the deterministic report writer.

All scalar values use the exact text encoding of :mod:`signstab.scalars`;
float literals are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import FormatError
from .reduction import Cone
from .scalars import Scalar, format_scalar, parse_scalar
from .seeds import Flip, MutationPath, Permute, Seed, Triangulation
from .traintrack import TrainTrack

SCHEMA_VERSION = 1


def _load_json(path: str | Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _expect(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"{where}: key {key!r} has wrong type")
    return val


def parse_coord(value) -> Scalar:
    if isinstance(value, bool):
        raise FormatError(f"bad scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise FormatError(f"bad scalar {value!r} (floats are not exact)")


def coord_json(value: Scalar):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return format_scalar(value)


# -- seeds ---------------------------------------------------------------------


def seed_from_obj(obj, where="seed") -> Seed:
    n = _expect(obj, "n", int, where)
    unfrozen = _expect(obj, "unfrozen", list, where)
    b = _expect(obj, "B", list, where)
    if len(b) != n or any(len(row) != n for row in b):
        raise FormatError(f"{where}: B is not {n}x{n}")
    if any(not isinstance(x, int) or isinstance(x, bool) for row in b for x in row):
        raise FormatError(f"{where}: B entries must be integers")
    try:
        return Seed(b, frozenset(unfrozen))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def seed_to_obj(seed: Seed) -> dict:
    return {
        "n": seed.n,
        "unfrozen": sorted(seed.unfrozen),
        "B": [list(row) for row in seed.b],
    }


def load_seed(path) -> Seed:
    return seed_from_obj(_load_json(path), where=str(path))


# -- paths ---------------------------------------------------------------------


def path_from_obj(obj, where="path", base_dir: Path | None = None) -> MutationPath:
    seed_obj = _expect(obj, "seed", None, where)
    if isinstance(seed_obj, dict) and "file" in seed_obj:
        ref = Path(seed_obj["file"])
        if base_dir is not None and not ref.is_absolute():
            ref = base_dir / ref
        seed = load_seed(ref)
    else:
        seed = seed_from_obj(seed_obj, where=f"{where}.seed")
    steps = []
    for i, raw in enumerate(_expect(obj, "steps", list, where)):
        if not isinstance(raw, dict) or len(raw) != 1:
            raise FormatError(f"{where}: step {i} must be a one-key object")
        if "flip" in raw:
            if not isinstance(raw["flip"], int):
                raise FormatError(f"{where}: step {i} flip index must be int")
            steps.append(Flip(raw["flip"]))
        elif "perm" in raw:
            try:
                steps.append(Permute(tuple(raw["perm"])))
            except (TypeError, ValueError) as exc:
                raise FormatError(f"{where}: step {i}: {exc}") from exc
        else:
            raise FormatError(f"{where}: step {i} must be 'flip' or 'perm'")
    return MutationPath(seed, tuple(steps))


def path_to_obj(path: MutationPath) -> dict:
    steps = []
    for step in path.steps:
        if isinstance(step, Flip):
            steps.append({"flip": step.k})
        else:
            steps.append({"perm": list(step.sigma)})
    return {"seed": seed_to_obj(path.initial), "steps": steps}


def load_path(path) -> MutationPath:
    p = Path(path)
    return path_from_obj(_load_json(p), where=str(p), base_dir=p.parent)


# -- points and cones ------------------------------------------------------------


def point_from_obj(obj, where="point") -> tuple[Scalar, ...]:
    if isinstance(obj, dict):
        obj = _expect(obj, "coords", list, where)
    if not isinstance(obj, list):
        raise FormatError(f"{where}: expected a coordinate list")
    return tuple(parse_coord(x) for x in obj)


def point_to_obj(w) -> dict:
    return {"coords": [coord_json(x) for x in w]}


def load_point(path) -> tuple[Scalar, ...]:
    return point_from_obj(_load_json(path), where=str(path))


def cone_from_obj(obj, where="cone") -> Cone:
    gens = _expect(obj, "generators", list, where)
    return Cone(tuple(tuple(parse_coord(x) for x in g) for g in gens))


def cone_to_obj(cone: Cone) -> dict:
    return {"generators": [[coord_json(x) for x in g] for g in cone.generators]}


def load_cone(path) -> Cone:
    return cone_from_obj(_load_json(path), where=str(path))


# -- triangulations and tracks ----------------------------------------------------


def triangulation_from_obj(obj, where="triangulation") -> Triangulation:
    arcs = _expect(obj, "arcs", list, where)
    frozen = _expect(obj, "frozen", list, where)
    tris = _expect(obj, "triangles", list, where)
    try:
        return Triangulation(
            tuple(str(a) for a in arcs),
            frozenset(str(a) for a in frozen),
            tuple(tuple(str(x) for x in t) for t in tris),
        )
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def load_triangulation(path) -> Triangulation:
    return triangulation_from_obj(_load_json(path), where=str(path))


def track_from_obj(obj, where="track") -> TrainTrack:
    edges = _expect(obj, "edges", list, where)
    switches = _expect(obj, "switches", list, where)
    boundary = obj.get("boundary", [])
    try:
        return TrainTrack(
            tuple(str(e) for e in edges),
            tuple((str(s[0]), (str(s[1][0]), str(s[1][1]))) for s in switches),
            frozenset(str(e) for e in boundary),
        )
    except (ValueError, IndexError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


def load_track(path) -> TrainTrack:
    return track_from_obj(_load_json(path), where=str(path))


def measure_from_obj(obj, where="measure") -> dict[str, Fraction]:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an edge->value object")
    out = {}
    for key, val in obj.items():
        coord = parse_coord(val)
        if isinstance(coord, Fraction):
            out[str(key)] = coord
        else:
            raise FormatError(f"{where}: measure values must be rational")
    return out


# -- reports ---------------------------------------------------------------------


def render_report(command: str, inputs: dict, result: dict) -> str:
    """Deterministic JSON report: stable key order, canonical scalars."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"

"""JSON interchange: lattice specs, the named-lattice catalog, payload parsers, canonical output."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .cusps import IsotropicSublattice
from .isometry import Isometry, verify_isometry
from .lattice import Lattice, LatticeError, build_standard, direct_sum, rescale
from .monodromy import KulikovData
from .semifan import (GroupData, SemifanBallCase, SemifanTypeIVCase, ball_entry, make_fan)

CATALOG_ENV = "K3LATTICE_CATALOG"
RESERVED_NAMES = frozenset({"H", "U", "E8", "LK3", "A", "An", "D", "Dn", "diag", "rank1", "<k>"})


class InputError(ValueError):
    """Malformed input: bad JSON, wrong shapes, unknown fields."""


# ---------------------------------------------------------------- primitives

def as_int(x: Any, what: str = "value") -> int:
    if isinstance(x, bool):
        raise InputError(f"{what}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"{what}: expected an integer, got {x!r}")


def as_vector(x: Any, what: str = "vector") -> list[int]:
    if not isinstance(x, list):
        raise InputError(f"{what}: expected a list of integers")
    return [as_int(v, what) for v in x]


def as_matrix(x: Any, what: str = "matrix") -> list[list[int]]:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise InputError(f"{what}: expected a list of integer rows")
    rows = [as_vector(r, what) for r in x]
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError(f"{what}: rows have different lengths")
    return rows


def _fields(obj: Any, what: str, required: tuple = (), optional: tuple = ()) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{what}: expected a JSON object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise InputError(f"{what}: unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise InputError(f"{what}: missing field(s) {missing}")
    return obj


def read_json_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


# ---------------------------------------------------------------- catalog

@dataclass
class Catalog:
    """Built-in lattices plus user entries, which may not shadow built-in names."""
    user: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, spec: Any) -> None:
        if not isinstance(name, str) or not name:
            raise InputError("catalog names must be nonempty strings")
        if name in RESERVED_NAMES:
            raise LatticeError(f"catalog entry {name!r} would shadow a built-in lattice")
        if name in self.user:
            raise InputError(f"duplicate catalog entry {name!r}")
        self.user[name] = spec

    def lookup(self, name: str, params=()) -> Lattice:
        return self.resolve({"name": name, "params": list(params)})

    def resolve(self, spec: Any, _stack: tuple = ()) -> Lattice:
        """Lattice from a spec: name string, {"name", "params"}, {"gram", "rank"},
        {"rescale": {"lattice", "by"}} or {"sum": [specs]}."""
        if isinstance(spec, str):
            spec = {"name": spec}
        if not isinstance(spec, dict):
            raise InputError("lattice spec must be a string or an object")
        if "gram" in spec:
            _fields(spec, "lattice", ("gram",), ("rank",))
            gram = as_matrix(spec["gram"], "gram")
            if "rank" in spec and as_int(spec["rank"], "rank") != len(gram):
                raise InputError("lattice: rank does not match the Gram matrix")
            return Lattice.from_gram(gram)
        if "rescale" in spec:
            _fields(spec, "lattice", ("rescale",))
            body = _fields(spec["rescale"], "rescale", ("lattice", "by"))
            return rescale(self.resolve(body["lattice"], _stack), as_int(body["by"], "by"))
        if "sum" in spec:
            _fields(spec, "lattice", ("sum",))
            parts = spec["sum"]
            if not isinstance(parts, list) or not parts:
                raise InputError("sum: expected a nonempty list of lattice specs")
            return direct_sum([self.resolve(p, _stack) for p in parts])
        _fields(spec, "lattice", ("name",), ("params",))
        name = spec["name"]
        if not isinstance(name, str):
            raise InputError("lattice name must be a string")
        params = [as_int(p, "params") for p in spec.get("params", [])]
        if name in self.user:
            if params:
                raise InputError(f"user catalog entry {name!r} takes no parameters")
            if name in _stack:
                raise InputError(f"catalog entry {name!r} refers to itself")
            return self.resolve(self.user[name], _stack + (name,))
        return build_standard(name, params)


def load_catalog(path: str | None = None) -> Catalog:
    """Built-in catalog merged with a user file (``path`` or $K3LATTICE_CATALOG).

    The user file is a JSON object mapping names to lattice specs.
    """
    cat = Catalog()
    path = path or os.environ.get(CATALOG_ENV) or None
    if path:
        data = read_json_file(path)
        if not isinstance(data, dict):
            raise InputError("catalog file must hold a JSON object of name -> lattice spec")
        for name in sorted(data):
            cat.add(name, data[name])
        for name in sorted(data):
            cat.lookup(name)
    return cat


# ---------------------------------------------------------------- payloads

def parse_isometry(obj: Any, cat: Catalog) -> Isometry:
    _fields(obj, "isometry", ("lattice", "matrix"))
    L = cat.resolve(obj["lattice"])
    return verify_isometry(L, as_matrix(obj["matrix"], "matrix"))


def parse_kulikov(obj: Any, cat: Catalog) -> KulikovData:
    _fields(obj, "monodromy data", ("lattice", "delta", "lambda"))
    L = cat.resolve(obj["lattice"])
    return KulikovData(L, tuple(as_vector(obj["delta"], "delta")),
                       tuple(as_vector(obj["lambda"], "lambda")))


@dataclass(frozen=True)
class SemifanJob:
    kind: str
    semifan: SemifanBallCase | SemifanTypeIVCase
    group: GroupData
    along: tuple[IsotropicSublattice, ...]
    bound: int
    mode: str


def parse_semifan(obj: Any, cat: Catalog) -> SemifanJob:
    _fields(obj, "semifan", ("lattice", "entries"),
            ("kind", "generators", "rho", "along", "bound", "mode"))
    L = cat.resolve(obj["lattice"])
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise InputError("semifan: entries must be a list")
    kind = obj.get("kind")
    if kind is None:
        kind = "fan" if any(isinstance(e, dict) and "cones" in e for e in entries) else "ball"
    if kind not in ("ball", "fan"):
        raise InputError("semifan: kind must be 'ball' or 'fan'")
    rho = None
    if "rho" in obj:
        rho = verify_isometry(L, as_matrix(obj["rho"], "rho"))
    gens = tuple(as_matrix(g, "generator") for g in obj.get("generators", []))
    group = GroupData(L, gens, rho)
    if kind == "ball":
        built = []
        for e in entries:
            _fields(e, "ball entry", ("J", "F"))
            built.append(ball_entry(L, as_matrix(e["J"], "J"), as_matrix(e["F"], "F")))
        sf = SemifanBallCase(L, tuple(built))
    else:
        fans = []
        for e in entries:
            _fields(e, "fan entry", ("J", "cones", "reference"), ("validity",))
            cones = []
            for c in e["cones"]:
                _fields(c, "cone", (), ("rays", "hyperplanes"))
                cones.append((as_matrix(c.get("rays", []), "rays"),
                              as_matrix(c.get("hyperplanes", []), "hyperplanes")))
            fans.append(make_fan(L, as_matrix(e["J"], "J"), cones,
                                 as_vector(e["reference"], "reference"), e.get("validity")))
        sf = SemifanTypeIVCase(L, tuple(fans))
    along = tuple(IsotropicSublattice.of(L, as_matrix(j, "along")) for j in obj.get("along", []))
    if along and kind != "fan":
        raise InputError("semifan: 'along' only applies to fan data")
    mode = obj.get("mode", "global")
    if mode not in ("global", "cone"):
        raise InputError("semifan: mode must be 'global' or 'cone'")
    bound = as_int(obj.get("bound", 1), "bound")
    if bound < 1:
        raise InputError("semifan: bound must be positive")
    return SemifanJob(kind, sf, group, along, bound, mode)


# ---------------------------------------------------------------- output

def to_jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, Mapping):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__} as JSON")


def canonical(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(x: Any) -> str:
    return hashlib.sha256(canonical(x).encode("ascii")).hexdigest()

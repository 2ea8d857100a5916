"""Run configurations: JSON suites of identity checks.

A config is a JSON object ``{"parallelism": int, "suites": [...]}``.
Each suite entry names an identity kind, a builder with parameters, and
the grid range. Parameter values may be lists when ``"grid": true`` is
set, in which case the entry expands to the cross product (in the order
the lists are written); an optional ``"exclude"`` list of partial
bindings removes combinations. Rationals are written as "p/q" strings,
moment sequences either inline as lists or via the shorthands
"1", "m", "m!", "delta".

Every expanded parameter set is validated against its builder's
preconditions before any evaluation starts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Any, Callable

from .bell import MomentSequence
from .checks import appell_check, check_s1_identities, hessenberg_check
from .errors import BellPolyError, ConfigError
from .families import builtin_family
from .identities import (
    AuxSequence,
    OverrideY,
    OverrideZ,
    ScaledY,
    ScaledZ,
    YCorP1,
    YCorZ1,
    YCorZ2,
    YCorZ8A,
    YCorZ8B,
    YProp4,
    YRS0,
    YThm1,
    YThm1Alpha0,
    YThm3,
    YThm3Alpha0,
    ZCorP6,
    ZCorZ3,
    ZCorZ4,
    ZCorZ12A,
    ZCorZ12B,
    ZProp8,
    ZThm2,
    ZThm2Alpha0,
    ZThm4,
    ZThm4Alpha0,
    builders_equal_y,
    builders_equal_z,
    verify_b,
    verify_h,
)
from .reporting import IdentityReport

IDENTITY_KINDS = ("h", "b", "equal-y", "equal-z", "s1", "appell", "hessenberg")

Y_BUILDERS = (
    "prop4", "thm1", "thm1-alpha0", "rs0", "thm3", "thm3-alpha0",
    "p1", "z1", "z2", "z8a", "z8b",
)
Z_BUILDERS = (
    "prop8", "thm2", "thm2-alpha0", "thm4", "thm4-alpha0",
    "p6", "z3", "z4", "z12a", "z12b",
)


def default_config_text() -> str:
    return resources.files("bellpoly").joinpath("data/default_suites.json").read_text()


def _cells_y(n_max: int):
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            yield n, k


def _max_T(n_max: int, r: int, s: int) -> int:
    return max(r * (n - k) + s * k for n, k in _cells_y(n_max))


def _family_for(params: dict, size: int):
    kind = params.get("family")
    if kind is None:
        raise ConfigError("builder requires a 'family' parameter")
    if kind == "abel":
        return builtin_family("abel", size, a=params.get("abel_a", "1"))
    if kind == "from_moments":
        spec = params.get("family_moments")
        if spec is None:
            raise ConfigError("from_moments family requires 'family_moments'")
        return builtin_family("from_moments", size, moments=MomentSequence.from_spec(spec, size))
    return builtin_family(kind, size)


def _moments_for(params: dict, length: int) -> MomentSequence:
    spec = params.get("moments")
    if spec is None:
        raise ConfigError("builder requires a 'moments' parameter")
    return MomentSequence.from_spec(spec, length)


def _aux_for(params: dict) -> AuxSequence:
    values = params.get("aux")
    if not values:
        raise ConfigError("builder requires a nonempty 'aux' parameter")
    return AuxSequence.of(values)


def make_y_builder(name: str, params: dict, n_max: int):
    """Construct a Y builder, materializing inputs to the lengths the
    verification grid will need."""
    p = params
    r = p.get("r", 0)
    s = p.get("s", 0)
    u = p.get("u", 0)
    v = p.get("v", 0)
    if name == "prop4":
        return YProp4(_moments_for(p, n_max), r, s)
    if name == "thm1":
        return YThm1(_family_for(p, n_max), p.get("a", 0), p["x"], p["alpha"], r, s)
    if name == "thm1-alpha0":
        size = _max_T(n_max, r, s) + n_max - 1
        return YThm1Alpha0(_family_for(p, size), p.get("a", 0), p["x"], r, s)
    if name == "rs0":
        return YRS0(_family_for(p, n_max), p.get("a", 0), p["x"])
    if name == "thm3":
        return YThm3(_family_for(p, n_max), p.get("a", 0), _aux_for(p), p["x"],
                     p["alpha"], p["beta"], p["lambda"], u, v, r, s)
    if name == "thm3-alpha0":
        size = (u + v) * _max_T(n_max, r, s) + n_max - 1
        return YThm3Alpha0(_family_for(p, size), p.get("a", 0), _aux_for(p), p["x"],
                           p["beta"], p["lambda"], u, v, r, s)
    if name == "p1":
        return YCorP1(_family_for(p, n_max), p.get("a", 0), p["x"], p["alpha"], r, s)
    if name == "z1":
        return YCorZ1(_moments_for(p, n_max), p["b"], p["c"], r, s)
    if name == "z2":
        return YCorZ2(_moments_for(p, n_max), p["x"], r, s)
    if name == "z8a":
        return YCorZ8A(_family_for(p, n_max), p.get("a", 0), p["x"], p["y"],
                       p["alpha"], p["beta"], p["lambda"], u, v, r, s)
    if name == "z8b":
        size = (u + v) * _max_T(n_max, r, s) + n_max - 1
        return YCorZ8B(_family_for(p, size), p.get("a", 0), p["x"], p["y"],
                       p["beta"], p["lambda"], u, v, r, s,
                       reading=p.get("reading", "printed"))
    raise ConfigError(f"unknown Y builder {name!r}")


def make_z_builder(name: str, params: dict, n_max: int, s_max: int):
    p = params
    r = p.get("r", 1)
    u = p.get("u", 0)
    v = p.get("v", 0)
    r_max = max(r, 1)
    if name == "prop8":
        return ZProp8(_moments_for(p, n_max + 1), r)
    if name == "thm2":
        return ZThm2(_family_for(p, n_max), p.get("a", 0), p["x"], p["alpha"], r)
    if name == "thm2-alpha0":
        size = n_max * (r_max + 1) + s_max
        return ZThm2Alpha0(_family_for(p, size), p.get("a", 0), p["x"], r)
    if name == "thm4":
        return ZThm4(_family_for(p, n_max), p.get("a", 0), _aux_for(p), p["x"],
                     p["alpha"], p["beta"], p["lambda"], u, v, r)
    if name == "thm4-alpha0":
        size = n_max + (u + v) * (n_max * r_max + s_max)
        return ZThm4Alpha0(_family_for(p, size), p.get("a", 0), _aux_for(p), p["x"],
                           p["beta"], p["lambda"], u, v, r)
    if name == "p6":
        return ZCorP6(_family_for(p, n_max), p.get("a", 0), p["x"], p["alpha"], r)
    if name == "z3":
        return ZCorZ3(_moments_for(p, n_max + 1), p["b"], p["c"], r)
    if name == "z4":
        return ZCorZ4(_moments_for(p, n_max + 1), p["x"], r)
    if name == "z12a":
        return ZCorZ12A(_family_for(p, n_max), p.get("a", 0), p["x"], p["y"],
                        p["alpha"], p["beta"], p["lambda"], u, v, r)
    if name == "z12b":
        size = n_max + (u + v) * (n_max * r_max + s_max)
        return ZCorZ12B(_family_for(p, size), p.get("a", 0), p["x"], p["y"],
                        p["beta"], p["lambda"], u, v, r,
                        reading=p.get("reading", "derived"))
    raise ConfigError(f"unknown Z builder {name!r}")


def _wrap_overrides(builder, params: dict, is_y: bool):
    if "scale" in params:
        builder = (ScaledY if is_y else ScaledZ)(builder, params["scale"])
    if "override" in params:
        table = {}
        for entry in params["override"]:
            table[(entry["n"], entry["k"] if is_y else entry["s"])] = entry["value"]
        builder = (OverrideY if is_y else OverrideZ)(builder, table)
    return builder


_BUILDER_ONLY = {"scale", "override"}


def _builder_params(params: dict) -> dict:
    return {key: val for key, val in params.items() if key not in _BUILDER_ONLY}


@dataclass
class Suite:
    """One fully-expanded, validated verification task."""

    sid: str
    identity: str
    run: Callable[[], IdentityReport]


_SEQUENCE_PARAMS = ("aux", "moments", "family_moments")
_MOMENT_SHORTHANDS = ("1", "m", "m!", "delta")


def _is_axis(key: str, value) -> bool:
    """Decide whether a list-valued parameter is a grid axis.

    Sequence-valued parameters are themselves lists, so for those a
    list only counts as an axis when it is a list of sequences (or of
    moment shorthands).
    """
    if not isinstance(value, list):
        return False
    if key == "override":
        return False
    if key in _SEQUENCE_PARAMS:
        return bool(value) and (
            all(isinstance(v, list) for v in value)
            or all(v in _MOMENT_SHORTHANDS for v in value)
        )
    return True


def _expand_grid(entry: dict) -> list[dict]:
    params = entry.get("params", {})
    if not entry.get("grid"):
        return [params]
    keys = [key for key, val in params.items() if _is_axis(key, val)]
    fixed = {key: val for key, val in params.items() if key not in keys}
    excludes = entry.get("exclude", [])
    combos = []
    for values in product(*(params[key] for key in keys)):
        combo = dict(fixed)
        combo.update(dict(zip(keys, values)))
        if any(all(combo.get(k) == v for k, v in ex.items()) for ex in excludes):
            continue
        combos.append(combo)
    return combos


def _suite_label(entry: dict, index: int, point: int) -> str:
    base = entry.get("id", f"suite{index}")
    return f"{base}#{point}"


def build_suites(config: dict) -> list[Suite]:
    """Expand and validate a parsed config; raises ConfigError early."""
    if not isinstance(config, dict) or "suites" not in config:
        raise ConfigError("config must be an object with a 'suites' list")
    suites: list[Suite] = []
    for index, entry in enumerate(config["suites"]):
        identity = entry.get("identity")
        if identity not in IDENTITY_KINDS:
            raise ConfigError(f"unknown identity {identity!r} in suite {index}")
        n_max = entry.get("n_max")
        if not isinstance(n_max, int) or n_max < 1:
            raise ConfigError(f"suite {index} needs an integer n_max >= 1")
        s_max = entry.get("s_max", 3)
        try:
            points = _expand_grid(entry)
        except (TypeError, KeyError) as exc:
            raise ConfigError(f"suite {index}: malformed grid: {exc}") from exc
        for pt, params in enumerate(points):
            sid = _suite_label(entry, index, pt)
            try:
                suites.append(_one_suite(sid, identity, entry, params, n_max, s_max))
            except (BellPolyError, ValueError, KeyError) as exc:
                raise ConfigError(f"suite {sid}: {exc}") from exc
    return suites


def _one_suite(sid: str, identity: str, entry: dict, params: dict, n_max: int, s_max: int) -> Suite:
    if identity == "h":
        builder = _wrap_overrides(
            make_y_builder(entry["builder"], _builder_params(params), n_max), params, True
        )
        return Suite(sid, identity, lambda: verify_h(builder, n_max))
    if identity == "b":
        builder = _wrap_overrides(
            make_z_builder(entry["builder"], _builder_params(params), n_max, s_max), params, False
        )
        return Suite(sid, identity, lambda: verify_b(builder, n_max, s_max))
    if identity == "equal-y":
        first = make_y_builder(entry["builder"], _builder_params(params), n_max)
        second = make_y_builder(entry["other_builder"], entry.get("other_params", {}), n_max)
        return Suite(sid, identity, lambda: builders_equal_y(first, second, n_max))
    if identity == "equal-z":
        first = make_z_builder(entry["builder"], _builder_params(params), n_max, s_max)
        second = make_z_builder(entry["other_builder"], entry.get("other_params", {}), n_max, s_max)
        return Suite(sid, identity, lambda: builders_equal_z(first, second, n_max, s_max))
    if identity == "s1":
        fam = _family_for(params, n_max)
        args = (fam, params.get("a", 0), params["x"], params["y"],
                params["alpha"], params["beta"], params["lambda"], n_max)
        return Suite(sid, identity, lambda: check_s1_identities(*args))
    if identity == "appell":
        args = (params["a"], params["x"], params["y"], params["z"], n_max)
        return Suite(sid, identity, lambda: appell_check(*args))
    if identity == "hessenberg":
        args = (params["phi"], params["x"], n_max)
        return Suite(sid, identity, lambda: hessenberg_check(*args))
    raise ConfigError(f"unknown identity {identity!r}")


def run_suites(suites: list[Suite], parallelism: int = 1) -> list[dict]:
    """Run all suites and return report dicts in config order."""
    if parallelism > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            reports = list(pool.map(lambda su: su.run(), suites))
    else:
        reports = [su.run() for su in suites]
    out = []
    for suite, report in zip(suites, reports):
        d = report.to_dict()
        d["id"] = suite.sid
        out.append(d)
    return out


def load_config(text: str) -> dict:
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return config

"""JSON descriptors for morphisms, sequences, towers and tables."""

import json
import os

from .constructions import DiagonalFamilySpec, build_diagonal_sequence, build_example_6_3, build_sigma_ld
from .directive import DirectiveSequence
from .symbols import Morphism
from .towers import VectorTower

DEFAULT_DEPTH = 16
KNOWN_KINDS = {"stationary", "prefix", "prefix+stationary", "prefix+periodic",
               "parameterized"}


class DescriptorError(ValueError):
    pass


def depth_cap():
    """Hard cap from SADIC_MAX_DEPTH, or None."""
    raw = os.environ.get("SADIC_MAX_DEPTH")
    if not raw:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise DescriptorError(f"SADIC_MAX_DEPTH={raw!r} is not an integer") from None
    if cap < 1:
        raise DescriptorError("SADIC_MAX_DEPTH must be positive")
    return cap


def _capped(depth):
    cap = depth_cap()
    return depth if cap is None else min(depth, cap)


def sequence_from_dict(data):
    kind = data.get("kind")
    if kind not in KNOWN_KINDS:
        raise DescriptorError(f"unknown sequence kind {kind!r}")
    prefix = [Morphism.from_dict(m) for m in data.get("prefix", [])]
    depth = data.get("max_depth")
    if kind == "parameterized":
        family = data.get("family")
        params = data.get("params", {})
        if family == "diagonal":
            ells = params.get("ell")
            if not ells:
                raise DescriptorError("diagonal family needs params.ell")
            blocks = len(ells) if depth is None else depth // 2
            blocks = max(1, _capped(2 * blocks) // 2)
            return build_diagonal_sequence(DiagonalFamilySpec(tuple(ells), blocks,
                                                              params.get("d0", 2)))
        if family == "sigma_ld":
            ells = params.get("ell")
            d = params.get("d")
            if not ells or d is None:
                raise DescriptorError("sigma_ld family needs params.ell and params.d")
            n = _capped(len(ells) if depth is None else min(depth, len(ells)))
            return DirectiveSequence.parameterized(
                lambda k, p: build_sigma_ld(p["ell"][k], p["d"]),
                {"ell": list(ells), "d": d}, n, "sigma_ld")
        if family == "example-6-3":
            return build_example_6_3(_capped(depth or DEFAULT_DEPTH))
        raise DescriptorError(f"unknown parameterized family {family!r}")
    if kind == "prefix":
        return DirectiveSequence.from_prefix(prefix, max_depth=_capped(depth or len(prefix)))
    depth = _capped(depth or DEFAULT_DEPTH)
    if kind in ("stationary", "prefix+stationary"):
        if "tail" not in data:
            raise DescriptorError(f"{kind} sequence needs a tail morphism")
        return DirectiveSequence.from_prefix(prefix, tail=Morphism.from_dict(data["tail"]),
                                             max_depth=depth)
    period = [Morphism.from_dict(m) for m in data.get("period", [])]
    return DirectiveSequence.from_prefix(prefix, period=period, max_depth=depth)


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def load_sequence(path):
    return sequence_from_dict(load_json(path))


def load_tower(path):
    data = load_json(path)
    if isinstance(data, dict):
        data = data["vectors"]
    return VectorTower.from_list(data)


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

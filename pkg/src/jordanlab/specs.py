"""JSON ring and map specifications consumed by the command line.

Ring specs::

    {"kind": "zmod", "m": 3}
    {"kind": "matrix" | "triangular", "base": <ring spec>, "r": 2}
    {"kind": "block", "base": <ring spec>, "r": 3, "partition": [1, 2]}
    {"kind": "product", "left": <ring spec>, "right": <ring spec>}
    {"kind": "tables", "add": [[...]], "mul": [[...]], "one": 1, "labels": [...], "name": "..."}

Any ring spec may carry "cap" to override the order cap.

Map specs (elements are indices or labels)::

    {"images": [i0, i1, ...]}
    {"construct": "inner", "a": e}      t -> a t - t a
    {"construct": "scalar", "mu": e}    t -> mu t
    {"construct": "constant", "c": e}
    {"construct": "identity" | "zero" | "square"}
    {"construct": "sum", "terms": [<map spec>, ...]}
    {"construct": "perturb", "base": <map spec>, "point": e, "image": e}

A map spec may embed its ring under "ring".
"""

from __future__ import annotations

import json
from pathlib import Path

from . import maps
from .errors import JordanLabError, SizeCapError, StructuralError
from .rings import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    build_block_triangular_ring,
    build_matrix_ring,
    build_product_ring,
    build_triangular_ring,
    build_zmod,
)


class SpecError(JordanLabError):
    pass


def _need(spec, key):
    if key not in spec:
        raise SpecError(f"spec of kind {spec.get('kind', spec.get('construct'))!r} is missing {key!r}")
    return spec[key]


def ring_from_spec(spec) -> FiniteRing:
    if not isinstance(spec, dict):
        raise SpecError("ring spec must be a JSON object")
    kind = spec.get("kind")
    cap = int(spec.get("cap", DEFAULT_ORDER_CAP))
    try:
        if kind == "zmod":
            return build_zmod(int(_need(spec, "m")), cap)
        if kind == "matrix":
            return build_matrix_ring(ring_from_spec(_need(spec, "base")), int(_need(spec, "r")), cap)
        if kind == "triangular":
            return build_triangular_ring(ring_from_spec(_need(spec, "base")), int(_need(spec, "r")), cap)
        if kind == "block":
            return build_block_triangular_ring(
                ring_from_spec(_need(spec, "base")), int(_need(spec, "r")), list(_need(spec, "partition")), cap
            )
        if kind == "product":
            return build_product_ring(ring_from_spec(_need(spec, "left")), ring_from_spec(_need(spec, "right")), cap)
        if kind == "tables":
            ring = FiniteRing(
                _need(spec, "add"),
                _need(spec, "mul"),
                int(_need(spec, "one")),
                spec.get("labels"),
                None,
                spec.get("name", "tables"),
            )
            if ring.order > cap:
                raise SpecError(f"ring order {ring.order} exceeds cap {cap}")
            return ring
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from None
    except (StructuralError, SizeCapError) as exc:
        raise SpecError(str(exc)) from None
    raise SpecError(f"unknown ring kind {kind!r}")


def map_from_spec(spec, ring: FiniteRing) -> maps.RingMap:
    if not isinstance(spec, dict):
        raise SpecError("map spec must be a JSON object")
    try:
        if "images" in spec:
            images = [ring.element(x) for x in spec["images"]]
            return maps.RingMap(ring, images, spec.get("name", "map"))
        construct = spec.get("construct")
        if construct == "inner":
            return maps.inner_derivation(ring, ring.element(_need(spec, "a")))
        if construct == "scalar":
            return maps.scalar_map(ring, ring.element(_need(spec, "mu")))
        if construct == "constant":
            return maps.constant_map(ring, ring.element(_need(spec, "c")))
        if construct == "identity":
            return maps.identity_map(ring)
        if construct == "zero":
            return maps.zero_map(ring)
        if construct == "square":
            return maps.square_map(ring)
        if construct == "sum":
            terms = [map_from_spec(t, ring) for t in _need(spec, "terms")]
            if not terms:
                raise SpecError("sum needs at least one term")
            total = terms[0]
            for t in terms[1:]:
                total = total + t
            return total
        if construct == "perturb":
            base = map_from_spec(_need(spec, "base"), ring)
            return base.perturbed(ring.element(_need(spec, "point")), ring.element(_need(spec, "image")))
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from None
    raise SpecError(f"map spec needs 'images' or a known 'construct', got {spec.get('construct')!r}")


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None

"""Instance files, operator serialization and random instances.

An instance file is JSON::

    {"L": {"order": 1, "coeffs": [["-1"], ["1"]]},
     "P": {"coeffs": [["-1", "0", "1"], ["-1"]]},
     "meta": {"seed": 1, "shape": [1, 0, 2, 1]}}

``L.coeffs[j][i]`` is the coefficient of ``x^i D^j`` and ``P.coeffs[a][b]``
the coefficient of ``x^a y^b``.  Rationals are strings such as ``"-3/4"``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .bounds import ProblemShape
from .diffop import DiffOp
from .exactalg.polys import BiPoly, UniPoly, as_rational


def rat_str(a) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def parse_rat(s) -> Any:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, (int, Fraction)):
        return as_rational(s)
    if isinstance(s, str):
        s = s.strip()
        if not s or any(ch not in "0123456789-+/" for ch in s):
            raise ValueError(f"malformed rational {s!r}")
        return as_rational(s)
    raise ValueError(f"malformed rational {s!r}")


def operator_to_json(M: DiffOp) -> dict:
    return {"order": M.order, "coeffs": [[rat_str(c) for c in a.c] or ["0"] for a in M.coeffs]}


def operator_from_json(obj: dict) -> DiffOp:
    coeffs = obj["coeffs"]
    M = DiffOp(UniPoly(parse_rat(c) for c in row) for row in coeffs)
    order = obj.get("order")
    if order is not None and order != M.order:
        raise ValueError(f"declared order {order} does not match the coefficient table")
    return M


def bipoly_to_json(P: BiPoly) -> dict:
    return {"coeffs": [[rat_str(c) for c in row] for row in P.to_table()]}


def bipoly_from_json(obj: dict) -> BiPoly:
    return BiPoly.from_table([[parse_rat(c) for c in row] for row in obj["coeffs"]])


@dataclass
class InstanceFile:
    L: DiffOp
    P: BiPoly
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"L": operator_to_json(self.L), "P": bipoly_to_json(self.P), "meta": self.meta}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "InstanceFile":
        if "L" not in obj or "P" not in obj:
            raise ValueError("instance needs both 'L' and 'P'")
        return cls(operator_from_json(obj["L"]), bipoly_from_json(obj["P"]), dict(obj.get("meta", {})))

    @classmethod
    def loads(cls, text: str) -> "InstanceFile":
        return cls.from_json(json.loads(text))

    @property
    def shape(self) -> ProblemShape:
        return ProblemShape(self.L.order, max(self.L.x_degree, 0), self.P.y_degree, max(self.P.x_degree, 0))


def _random_poly(rng: random.Random, deg: int, height: int) -> UniPoly:
    return UniPoly(rng.randint(-height, height) for _ in range(deg + 1))


def random_instance(shape: ProblemShape, seed: int, height: int = 3,
                    max_attempts: int = 1000) -> InstanceFile:
    """Dense random ``(L, P)`` with exactly the given degrees and satisfying the input conditions."""
    from .compose import InvalidInstance, validate_inputs

    rng = random.Random(seed)
    for attempt in range(max_attempts):
        L = DiffOp(_random_poly(rng, shape.d_L, height) for _ in range(shape.r_L + 1))
        P = BiPoly(_random_poly(rng, shape.d_P, height) for _ in range(shape.r_P + 1))
        if L.order != shape.r_L or L.x_degree != shape.d_L:
            continue
        if P.y_degree != shape.r_P or P.x_degree != shape.d_P:
            continue
        try:
            validate_inputs(L, P)
        except InvalidInstance:
            continue
        meta = {"seed": seed, "shape": [shape.r_L, shape.d_L, shape.r_P, shape.d_P],
                "height": height, "attempt": attempt}
        return InstanceFile(L, P, meta)
    raise RuntimeError(f"no valid instance of shape {shape} after {max_attempts} attempts")


def optional_int(s: Optional[str]) -> Optional[int]:
    return None if s is None else int(s)


def suite_shape(seed: int, r_P_min: int = 1) -> ProblemShape:
    """Small shape used by seeded experiments: ``r <= 2``, ``d_L <= 2``, ``1 <= d_P <= 2``."""
    rng = random.Random(f"shape-{seed}")
    return ProblemShape(rng.randint(1, 2), rng.randint(0, 2), rng.randint(r_P_min, 2), rng.randint(1, 2))


def suite_instance(seed: int, r_P_min: int = 1, height: int = 3) -> InstanceFile:
    return random_instance(suite_shape(seed, r_P_min), seed, height)

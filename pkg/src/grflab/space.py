"""Parameter model for aligned spaces ``M = G1 x G2 / Delta K``.

A space enters the flow only through a handful of scalars: the alignment
constant ``c1`` (with ``c2 = c1 / (c1 - 1)``), the common Killing constant
``lambda`` of the ideals of ``k`` and the Casimir eigenvalues ``kappa1``,
``kappa2`` of the two isotropy representations.  Everything else used by the
curvature formulas is derived from these.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Union

import numpy as np

RealLike = Union[int, float, str, Fraction]


class ParameterError(ValueError):
    """Raised when space parameters violate their admissible ranges."""


class DomainError(ValueError):
    """Raised when a metric coefficient is not strictly positive."""


# coefficients at or below this are rejected: every formula has a pole at 0
POSITIVITY_GUARD = 1e-10


def parse_real(value: RealLike) -> float:
    """Convert a number or a ``"p/q"`` string to a float."""
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse {value!r} as a real number") from exc
    if isinstance(value, bool):
        raise ParameterError("booleans are not accepted as parameters")
    return float(value)


@dataclass(frozen=True)
class AlignedParams:
    """Scalar invariants of an aligned space with Einstein standard factors.

    Use :func:`make_params` to build validated instances.
    """

    c1: float
    lam: float
    kappa1: float
    kappa2: float
    name: str = ""
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    @property
    def c2(self) -> float:
        return self.c1 / (self.c1 - 1.0)

    @property
    def a1(self) -> float:
        return self.lam * self.c1

    @property
    def a2(self) -> float:
        return self.lam * self.c2

    @property
    def A3(self) -> float:
        return -1.0 / (self.c1 - 1.0)

    @property
    def B3(self) -> float:
        return 1.0 / (self.c1 - 1.0)

    @property
    def B4(self) -> float:
        return 1.0

    @property
    def equal_kappa(self) -> bool:
        return self.kappa1 == self.kappa2

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "c1": self.c1,
            "c2": self.c2,
            "lambda": self.lam,
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "a1": self.a1,
            "a2": self.a2,
            "A3": self.A3,
            "B3": self.B3,
            "B4": self.B4,
            "diagnostics": list(self.diagnostics),
        }


def make_params(c1: RealLike, lam: RealLike, kappa1: RealLike,
                kappa2: RealLike | None = None, name: str = "") -> AlignedParams:
    """Validate and build :class:`AlignedParams`.

    Parameters
    ----------
    c1 : real or "p/q" string
        Alignment constant, ``1 < c1 <= 2``.
    lam : real or "p/q" string
        Common Killing constant, ``lam >= 0``.  ``lam = 0`` (abelian ``K``)
        is accepted and flagged in ``diagnostics``.
    kappa1, kappa2 : real or "p/q" string
        Casimir eigenvalues in ``(0, 1/2]``.  ``kappa2`` defaults to
        ``kappa1``.

    Raises
    ------
    ParameterError
        If a bound is violated; the message names the bound.
    """
    c1 = parse_real(c1)
    lam = parse_real(lam)
    kappa1 = parse_real(kappa1)
    kappa2 = kappa1 if kappa2 is None else parse_real(kappa2)

    for label, v in (("c1", c1), ("lambda", lam), ("kappa1", kappa1), ("kappa2", kappa2)):
        if not math.isfinite(v):
            raise ParameterError(f"{label} must be finite, got {v}")
    if not 1.0 < c1 <= 2.0:
        raise ParameterError(f"c1 must satisfy 1 < c1 <= 2, got {c1}")
    if lam < 0.0:
        raise ParameterError(f"lambda must satisfy lambda >= 0, got {lam}")
    for label, k in (("kappa1", kappa1), ("kappa2", kappa2)):
        if not 0.0 < k <= 0.5:
            raise ParameterError(f"{label} must satisfy 0 < {label} <= 1/2, got {k}")

    diagnostics = []
    if lam == 0.0:
        diagnostics.append("lambda = 0: abelian K")
    elif lam * c1 / (c1 - 1.0) >= 1.0:
        diagnostics.append("a2 = lambda*c2 >= 1: outside the a2 < 1 range assumed for these spaces")
    return AlignedParams(c1, lam, kappa1, kappa2, name=name, diagnostics=tuple(diagnostics))


@dataclass(frozen=True)
class DiagonalMetric:
    """Coefficients ``(x1, x2, x3)`` of ``g`` relative to the Killing metric."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        check_positive((self.x1, self.x2, self.x3))

    @classmethod
    def from_array(cls, x) -> "DiagonalMetric":
        x1, x2, x3 = (float(v) for v in np.asarray(x, dtype=float).reshape(3))
        return cls(x1, x2, x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


def check_positive(x: Iterable[float]) -> None:
    for i, v in enumerate(x, start=1):
        if not (v > POSITIVITY_GUARD) or not math.isfinite(v):
            raise DomainError(f"metric coefficient x{i} = {v} is not strictly positive")


@dataclass(frozen=True)
class CartanCoefficients:
    """Coefficients of ``Q = y1*B_g1 + y2*B_g2`` and the derived constants.

    ``S1`` and ``S2`` depend on ``x3`` and are exposed as evaluators.
    """

    y1: float
    y2: float
    C3: float
    S1: Callable[[float], float]
    S2: Callable[[float], float]

    def harmonicity_defect(self, params: AlignedParams) -> float:
        """``y1/c1 + y2/c2``; zero for an admissible ``Q``."""
        return self.y1 / params.c1 + self.y2 / params.c2


def cartan_coefficients(params: AlignedParams, y1: float, y2: float) -> CartanCoefficients:
    """General ``Q`` with the constants of the H^2 formulas."""
    c1, c2, A3, B3, B4 = params.c1, params.c2, params.A3, params.B3, params.B4
    C3 = y1 / c1 + A3 * y2 / c2
    u1 = (y1 + C3 / B4) ** 2 / B3
    u2 = (A3 * y2 + C3 / B4) ** 2 / B3
    return CartanCoefficients(y1, y2, C3, lambda x3: u1 / x3, lambda x3: u2 / x3)


def h0_coefficients(params: AlignedParams) -> CartanCoefficients:
    """Coefficients of the harmonic form ``H0``: ``y1 = 1``, ``y2 = -1/(c1-1)``."""
    c1 = params.c1
    s1 = c1 ** 2 / (c1 - 1.0)
    s2 = c1 ** 2 / (c1 - 1.0) ** 3
    return CartanCoefficients(
        y1=1.0,
        y2=-1.0 / (c1 - 1.0),
        C3=1.0 / (c1 - 1.0),
        S1=lambda x3: s1 / x3,
        S2=lambda x3: s2 / x3,
    )


def brf_fixed_point(params: AlignedParams) -> DiagonalMetric:
    """The Bismut Ricci flat metric ``(1, 1/(c1-1), c1/(c1-1))``."""
    c1 = params.c1
    return DiagonalMetric(1.0, 1.0 / (c1 - 1.0), c1 / (c1 - 1.0))


# --- catalog -----------------------------------------------------------------

BUILTIN_CATALOG = {
    # SU(7) x SO(8) / SO(7), dim 55
    "su7so8so7": {"name": "su7so8so7", "c1": "10/7", "lambda": "1/4",
                  "kappa1": "1/2", "kappa2": "1/2"},
}


def params_from_descriptor(desc: dict) -> AlignedParams:
    """Build params from a JSON space descriptor."""
    missing = [k for k in ("c1", "lambda", "kappa1") if k not in desc]
    if missing:
        raise ParameterError(f"space descriptor is missing {', '.join(missing)}")
    return make_params(desc["c1"], desc["lambda"], desc["kappa1"],
                       desc.get("kappa2"), name=str(desc.get("name", "")))


def load_catalog(path: str | Path | None = None) -> dict[str, dict]:
    """Built-in catalog, extended by a JSON array of descriptors at ``path``."""
    catalog = dict(BUILTIN_CATALOG)
    if path is not None:
        entries = json.loads(Path(path).read_text())
        if not isinstance(entries, list):
            raise ParameterError("catalog file must hold a JSON array of descriptors")
        for desc in entries:
            if "name" not in desc:
                raise ParameterError("catalog entries need a name")
            catalog[desc["name"]] = desc
    return catalog


def lookup(name: str, catalog: dict[str, dict] | None = None) -> AlignedParams:
    catalog = BUILTIN_CATALOG if catalog is None else catalog
    try:
        return params_from_descriptor(catalog[name])
    except KeyError:
        known = ", ".join(sorted(catalog))
        raise KeyError(f"unknown space {name!r}; known: {known}") from None

"""Finite-support vectors in sequence space and the Lorentzian forms on V = R + H.

A point of the (infinite dimensional) Hilbert space H is modelled by a
``SparseVector``: finitely many nonzero coordinates over the countable
orthonormal basis e_0, e_1, ...  Every sequence used in this package has
finite support per term, so nothing is truncated.

All sums run over basis indices in ascending order so that results are
reproducible bit for bit.
"""

from __future__ import annotations

import enum
import math
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import DomainError, InputError

CONE_TOL = 1e-12

_Pairs = Union[Mapping[int, float], Iterable[Tuple[int, float]]]


class SparseVector:
    """Immutable finite-support real sequence, stored as sorted ``(index, coef)`` pairs.

    Exact zeros are pruned on construction, so two vectors are equal iff
    their stored entries are equal.
    """

    __slots__ = ("_entries", "_norm2")

    def __init__(self, entries: _Pairs = ()):
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[int, float] = {}
        for idx, val in pairs:
            idx = int(idx)
            if idx < 0:
                raise InputError(f"basis index must be non-negative, got {idx}")
            val = float(val)
            if not math.isfinite(val):
                raise InputError(f"non-finite coefficient at index {idx}: {val}")
            acc[idx] = acc.get(idx, 0.0) + val
        self._entries = tuple((i, v) for i, v in sorted(acc.items()) if v != 0.0)
        s = 0.0
        for _, v in self._entries:
            s += v * v
        self._norm2 = s

    @classmethod
    def basis(cls, index: int, coef: float = 1.0) -> "SparseVector":
        return cls({index: coef})

    @property
    def entries(self) -> tuple[tuple[int, float], ...]:
        return self._entries

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._entries)

    @property
    def max_index(self) -> int:
        """Largest index in the support, -1 for the zero vector."""
        return self._entries[-1][0] if self._entries else -1

    def norm2(self) -> float:
        return self._norm2

    def norm(self) -> float:
        return math.sqrt(self._norm2)

    def get(self, index: int) -> float:
        for i, v in self._entries:
            if i == index:
                return v
            if i > index:
                break
        return 0.0

    def items(self) -> Iterator[tuple[int, float]]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def _merge(self, other: "SparseVector", a: float, b: float) -> "SparseVector":
        # a*self + b*other, walking both supports in index order
        out = []
        xs, ys = self._entries, other._entries
        i = j = 0
        while i < len(xs) or j < len(ys):
            if j == len(ys) or (i < len(xs) and xs[i][0] < ys[j][0]):
                out.append((xs[i][0], a * xs[i][1]))
                i += 1
            elif i == len(xs) or ys[j][0] < xs[i][0]:
                out.append((ys[j][0], b * ys[j][1]))
                j += 1
            else:
                out.append((xs[i][0], a * xs[i][1] + b * ys[j][1]))
                i += 1
                j += 1
        return SparseVector(out)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._merge(other, 1.0, 1.0)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._merge(other, 1.0, -1.0)

    def __mul__(self, s: float) -> "SparseVector":
        s = float(s)
        return SparseVector((i, s * v) for i, v in self._entries)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> "SparseVector":
        s = float(s)
        return SparseVector((i, v / s) for i, v in self._entries)

    def __neg__(self) -> "SparseVector":
        return SparseVector((i, -v) for i, v in self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        body = " + ".join(f"{v!r}*e{i}" for i, v in self._entries)
        return f"SparseVector({body or '0'})"

    def to_json(self) -> dict[str, float]:
        return {str(i): v for i, v in self._entries}

    @classmethod
    def from_json(cls, obj) -> "SparseVector":
        if not isinstance(obj, Mapping):
            raise InputError(f"sparse vector must be a JSON object, got {type(obj).__name__}")
        pairs = []
        for key, val in obj.items():
            try:
                idx = int(key)
            except (TypeError, ValueError):
                raise InputError(f"field {key!r}: basis index must be an integer string") from None
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise InputError(f"field {key!r}: coefficient must be a number, got {val!r}")
            if not math.isfinite(val):
                raise InputError(f"field {key!r}: non-finite coefficient")
            pairs.append((idx, val))
        return cls(pairs)


ZERO = SparseVector()


class ConeClass(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class ConeVector:
    """A vector ``(lam, spatial)`` of V = R + H."""

    __slots__ = ("_lam", "_spatial")

    def __init__(self, lam: float, spatial: SparseVector | Mapping[int, float] = ZERO):
        lam = float(lam)
        if not math.isfinite(lam):
            raise InputError(f"non-finite lambda: {lam}")
        if not isinstance(spatial, SparseVector):
            spatial = SparseVector(spatial)
        self._lam = lam
        self._spatial = spatial

    @property
    def lam(self) -> float:
        return self._lam

    @property
    def spatial(self) -> SparseVector:
        return self._spatial

    def scaled(self, s: float) -> "ConeVector":
        return ConeVector(s * self._lam, self._spatial * s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeVector):
            return NotImplemented
        return self._lam == other._lam and self._spatial == other._spatial

    def __hash__(self) -> int:
        return hash((self._lam, self._spatial))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._lam!r}, {self._spatial!r})"

    def to_json(self) -> dict:
        return {"lambda": self._lam, "spatial": self._spatial.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ConeVector":
        if not isinstance(obj, Mapping):
            raise InputError("cone vector must be a JSON object")
        if "lambda" not in obj:
            raise InputError("cone vector: missing field 'lambda'")
        lam = obj["lambda"]
        if isinstance(lam, bool) or not isinstance(lam, (int, float)) or not math.isfinite(lam):
            raise InputError(f"field 'lambda': expected a finite number, got {lam!r}")
        try:
            spatial = SparseVector.from_json(obj.get("spatial", {}))
        except InputError as exc:
            raise InputError(f"field 'spatial': {exc}") from None
        return ConeVector(lam, spatial)


class DiscPoint(ConeVector):
    """A point ``(1, x)`` of Klein's model, with ``||x|| <= 1 - tol``."""

    __slots__ = ()

    def __init__(self, spatial: SparseVector | Mapping[int, float] = ZERO, tol: float = CONE_TOL):
        super().__init__(1.0, spatial)
        n = self.spatial.norm()
        if not n <= 1.0 - tol:
            raise DomainError(f"point is not strictly inside the disc: ||x|| = {n!r}")

    @classmethod
    def from_cone(cls, u: ConeVector, tol: float = CONE_TOL) -> "DiscPoint":
        if isinstance(u, DiscPoint):
            return u
        if classify_cone(u, tol) is not ConeClass.INTERIOR:
            raise DomainError(f"{u!r} is not in the interior of the cone")
        return cls(u.spatial / u.lam, tol)

    def __repr__(self) -> str:
        return f"DiscPoint({self.spatial!r})"

    @classmethod
    def from_json(cls, obj, tol: float = CONE_TOL) -> "DiscPoint":
        if isinstance(obj, Mapping) and "lambda" in obj:
            u = ConeVector.from_json(obj)
            if u.lam != 1.0:
                raise InputError(f"field 'lambda': disc points have lambda = 1, got {u.lam!r}")
            spatial = u.spatial
        else:
            spatial = SparseVector.from_json(obj)
        return cls(spatial, tol)


ORIGIN = DiscPoint()


def inner(x: SparseVector, y: SparseVector) -> float:
    """<x, y>, summed over the common support in ascending index order."""
    xs, ys = x.entries, y.entries
    i = j = 0
    s = 0.0
    while i < len(xs) and j < len(ys):
        a, b = xs[i][0], ys[j][0]
        if a == b:
            s += xs[i][1] * ys[j][1]
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return s


def quadratic_form(u: ConeVector) -> float:
    """Q(u) = lam^2 - ||x||^2, evaluated as (lam - ||x||)(lam + ||x||)."""
    n = u.spatial.norm()
    return (u.lam - n) * (u.lam + n)


def bilinear_form(u: ConeVector, v: ConeVector) -> float:
    return u.lam * v.lam - inner(u.spatial, v.spatial)


def classify_cone(u: ConeVector, tol: float = CONE_TOL) -> ConeClass:
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol!r}")
    n = u.spatial.norm()
    slack = tol * max(1.0, u.lam)
    if n < u.lam - slack:
        return ConeClass.INTERIOR
    if abs(n - u.lam) <= slack:
        return ConeClass.BOUNDARY
    return ConeClass.EXTERIOR


def require_interior(u: ConeVector, tol: float = CONE_TOL, what: str = "vector") -> None:
    if classify_cone(u, tol) is not ConeClass.INTERIOR:
        raise DomainError(f"{what} {u!r} is not in the interior of the cone")


def normalize_hyperboloid(u: ConeVector, tol: float = CONE_TOL) -> ConeVector:
    """Rescale an interior vector onto the hyperboloid Q = 1."""
    require_interior(u, tol)
    s = 1.0 / math.sqrt(quadratic_form(u))
    return u.scaled(s)

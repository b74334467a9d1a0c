"""Experiment orchestration: vector files, tolerance profiles, convergence runs, identity suite."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import HoroError, InputError
from .horofunctions import HoroParams, busemann_eval, horo_eval, i_embed, validate_params
from .linalg import CONE_TOL, ORIGIN, ConeVector, DiscPoint, SparseVector, inner
from .metrics import (
    birkhoff_distance,
    cross_ratio_distance,
    gauge_closed,
    gauge_oracle,
    hyperbolic_distance,
)
from .sequences import (
    PointSequence,
    gen_boundary_approach,
    gen_orthonormal_drift,
    gen_radial_geodesic,
)


@dataclass(frozen=True)
class ToleranceProfile:
    cone_tol: float = CONE_TOL
    clamp: float = 1e-12
    oracle_tol: float = 1e-10
    gauge_rel: float = 1e-9
    arccosh_agreement: float = 1e-10
    crossratio_agreement: float = 1e-9
    symmetry: float = 0.0
    triangle: float = 1e-10
    scale_invariance: float = 1e-12
    gauge_product: float = 1e-12
    radial_formula: float = 1e-12
    normalization: float = 1e-14
    busemann_reduction: float = 1e-12
    lipschitz: float = 1e-10
    horo_scale_invariance: float = 1e-12
    convergence: float = 1e-13

    @classmethod
    def from_json(cls, obj) -> "ToleranceProfile":
        if not isinstance(obj, dict):
            raise InputError("tolerance profile must be a JSON object")
        known = {f.name for f in fields(cls)}
        for key, val in obj.items():
            if key not in known:
                raise InputError(f"tolerance profile: unknown field {key!r}")
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val) or val < 0:
                raise InputError(f"tolerance profile: field {key!r} must be a finite non-negative number")
        for key in ("cone_tol", "oracle_tol"):
            if key in obj and obj[key] <= 0:
                raise InputError(f"tolerance profile: field {key!r} must be positive")
        return cls(**{k: float(v) for k, v in obj.items()})

    @classmethod
    def load(cls, path) -> "ToleranceProfile":
        return cls.from_json(load_json(path))


def default_probes() -> list[DiscPoint]:
    """Fixed probe set supported on e_1..e_5."""
    probes = []
    for k in range(1, 6):
        probes.append(DiscPoint({k: 0.5}))
        probes.append(DiscPoint({k: -0.3}))
    probes.append(DiscPoint({1: 0.2, 2: 0.2, 3: 0.2, 4: 0.2, 5: 0.2}))
    probes.append(DiscPoint({1: 0.6, 3: -0.4}))
    probes.append(DiscPoint({2: -0.7, 5: 0.5}))
    return probes


@dataclass
class ExperimentConfig:
    probes: list = field(default_factory=default_probes)
    tolerances: ToleranceProfile = field(default_factory=ToleranceProfile)
    n_max: int = 100
    output_format: str = "csv"
    seed: int = 0
    rng: str = "PCG64"

    def __post_init__(self):
        if self.output_format not in ("csv", "json"):
            raise InputError(f"output format must be csv or json, got {self.output_format!r}")
        for p in self.probes:
            if not isinstance(p, DiscPoint):
                raise InputError(f"probe {p!r} is not a disc point")


# -- file ingestion -----------------------------------------------------------


def _reject_constant(name):
    raise ValueError(f"non-finite number {name}")


def _loads(text: str, where: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return _loads(text, str(path))


def parse_vector(obj, kind: str = "auto", tol: float = CONE_TOL, where: str = "<input>"):
    """Decode a JSON value into a SparseVector, ConeVector or DiscPoint.

    ``kind="auto"`` gives a ConeVector for objects with a ``lambda`` field and a
    SparseVector otherwise.
    """
    try:
        if kind == "sparse":
            return SparseVector.from_json(obj)
        if kind == "cone":
            return ConeVector.from_json(obj)
        if kind == "disc":
            return DiscPoint.from_json(obj, tol)
        if kind == "auto":
            if isinstance(obj, dict) and "lambda" in obj:
                return ConeVector.from_json(obj)
            return SparseVector.from_json(obj)
    except HoroError as exc:
        raise type(exc)(f"{where}: {exc}") from None
    raise InputError(f"unknown vector kind {kind!r}")


def parse_vector_file(path, kind: str = "auto", tol: float = CONE_TOL):
    return parse_vector(load_json(path), kind, tol, str(path))


def read_terms(path, tol: float = CONE_TOL) -> list[tuple[int, DiscPoint]]:
    """Read a JSON-lines term file; each line is a disc point with an optional index ``n``."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        where = f"{path}:{lineno}"
        obj = _loads(line, where)
        n = obj.pop("n", None) if isinstance(obj, dict) else None
        if n is None:
            n = out[-1][0] + 1 if out else 0
        elif isinstance(n, bool) or not isinstance(n, int):
            raise InputError(f"{where}: field 'n' must be an integer")
        out.append((n, parse_vector(obj, "disc", tol, where)))
    if not out:
        raise InputError(f"{path}: no terms")
    for (a, _), (b, _) in zip(out, out[1:]):
        if b != a + 1:
            raise InputError(f"{path}: term indices must be consecutive, got {a} then {b}")
    return out


def sequence_from_file(path, tol: float = CONE_TOL) -> PointSequence:
    terms = read_terms(path, tol)
    return PointSequence.from_terms([p for _, p in terms], first_index=terms[0][0])


def term_lines(seq: PointSequence, n_max: int) -> str:
    return "".join(json.dumps({"n": n, **seq.term(n).to_json()}) + "\n" for n in seq.indices(n_max))


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    x_hat: SparseVector = SparseVector()
    r: float = 1.0
    start_index: Optional[int] = None
    steps: Sequence[float] = ()

    def build(self) -> PointSequence:
        if self.kind == "drift":
            return gen_orthonormal_drift(self.x_hat, self.r, self.start_index)
        if self.kind in ("boundary", "boundary_approach"):
            return gen_boundary_approach(self.x_hat)
        if self.kind == "radial":
            return gen_radial_geodesic(self.x_hat, self.steps)
        raise InputError(f"unknown generator kind {self.kind!r}")


# -- convergence --------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    sup_error: float
    norm: float
    q: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceReport:
    rows: list
    target: HoroParams
    tolerance: float
    final_error: float

    @property
    def passed(self) -> bool:
        return self.final_error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "summary": {
                "target": self.target.to_json(),
                "tolerance": self.tolerance,
                "final_error": self.final_error,
                "passed": self.passed,
            },
            "rows": [asdict(r) for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "sup_error", "norm", "q"])
        for r in self.rows:
            w.writerow([r.n, repr(r.sup_error), repr(r.norm), "" if r.q is None else repr(r.q)])
        return buf.getvalue()


def sup_probe_error(x: DiscPoint, p: HoroParams, probes: Sequence[DiscPoint]) -> float:
    return max(abs(i_embed(x, y) - horo_eval(p, y)) for y in probes)


def run_convergence(
    config: ExperimentConfig,
    generator,
    target: Optional[HoroParams] = None,
    tol: Optional[float] = None,
    diagnostic: bool = False,
    every: int = 1,
) -> ConvergenceReport:
    """Track sup over probes of |i(x_n)(y) - xi(y)| along a sequence, n <= config.n_max.

    ``generator`` is a PointSequence or a GeneratorSpec.  The run passes iff
    the error at the last row is within ``tol`` (default: the profile's
    ``convergence`` entry).
    """
    seq = generator.build() if isinstance(generator, GeneratorSpec) else generator
    target = target if target is not None else seq.target
    if target is None:
        raise InputError("no target parameters for this sequence")
    if not config.probes:
        raise InputError("empty probe set")
    if every < 1:
        raise InputError("every must be >= 1")
    tol = config.tolerances.convergence if tol is None else tol
    idx = list(seq.indices(config.n_max))
    if not idx:
        raise InputError(f"no terms up to n_max = {config.n_max}")
    chosen = idx[::every]
    if chosen[-1] != idx[-1]:
        chosen.append(idx[-1])
    rows = []
    for n in chosen:
        x = seq.term(n)
        nx = x.spatial.norm()
        q = (1.0 - inner(x.spatial, target.x_hat)) / (1.0 - nx) if diagnostic else None
        rows.append(ConvergenceRow(n, sup_probe_error(x, target, config.probes), nx, q))
    return ConvergenceReport(rows, target, tol, rows[-1].sup_error)


# -- identity suite -----------------------------------------------------------


def make_rng(config: ExperimentConfig, seed: Optional[int] = None) -> np.random.Generator:
    bitgen = getattr(np.random, config.rng, None)
    if bitgen is None or not isinstance(bitgen, type) or not issubclass(bitgen, np.random.BitGenerator):
        raise InputError(f"unknown PRNG algorithm {config.rng!r}")
    return np.random.Generator(bitgen(config.seed if seed is None else seed))


def random_direction(rng: np.random.Generator, max_dims: int = 20, pool: int = 40) -> SparseVector:
    k = int(rng.integers(1, max_dims + 1))
    idx = sorted(int(i) for i in rng.choice(pool, size=k, replace=False))
    g = rng.standard_normal(k)
    g = g / np.linalg.norm(g)
    return SparseVector(zip(idx, (float(c) for c in g)))


def random_disc_point(rng: np.random.Generator, max_norm: float = 0.95, max_dims: int = 20) -> DiscPoint:
    d = random_direction(rng, max_dims)
    return DiscPoint(d * float(rng.uniform(0.0, max_norm)))


def random_cone_vector(rng: np.random.Generator, max_norm: float = 0.95, max_dims: int = 20) -> ConeVector:
    x = random_disc_point(rng, max_norm, max_dims)
    lam = float(rng.uniform(0.1, 10.0))
    return x.scaled(lam)


def random_params(rng: np.random.Generator, busemann: Optional[bool] = None) -> HoroParams:
    if busemann is None:
        busemann = bool(rng.integers(0, 2))
    d = random_direction(rng, 10)
    if busemann:
        return validate_params(d, 1.0)
    nx = float(rng.uniform(0.0, 0.9))
    r = nx + (1.0 - nx) * float(rng.uniform(0.05, 1.0))
    return validate_params(d * nx, r)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    max_deviation: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


@dataclass(frozen=True)
class IdentityTable:
    seed: int
    trials: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "identities": [
                {
                    "name": r.name,
                    "max_deviation": r.max_deviation,
                    "tolerance": r.tolerance,
                    "samples": r.samples,
                    "passed": r.passed,
                }
                for r in self.results
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "max_deviation", "tolerance", "samples", "passed"])
        for r in self.results:
            w.writerow([r.name, repr(r.max_deviation), repr(r.tolerance), r.samples, str(r.passed).lower()])
        return buf.getvalue()


def check_gauge_equivalence(rng, trials, tp: ToleranceProfile) -> IdentityResult:
    worst = 0.0
    for _ in range(trials):
        u, v = random_cone_vector(rng), random_cone_vector(rng)
        oracle = gauge_oracle(u, v, tp.oracle_tol, cone_tol=tp.cone_tol)
        worst = max(worst, abs(gauge_closed(u, v, tp.cone_tol, tp.clamp) - oracle) / oracle)
    return IdentityResult("gauge_closed_vs_oracle", worst, tp.gauge_rel, trials)


def check_metric_agreement(rng, trials, tp: ToleranceProfile) -> list[IdentityResult]:
    w_acosh = w_cross = w_sym = 0.0
    for _ in range(trials):
        u, v = random_disc_point(rng), random_disc_point(rng)
        rho = birkhoff_distance(u, v)
        w_acosh = max(w_acosh, abs(rho - hyperbolic_distance(u, v, tp.cone_tol, tp.clamp)))
        w_cross = max(w_cross, abs(rho - cross_ratio_distance(u, v)))
        w_sym = max(w_sym, abs(rho - birkhoff_distance(v, u)))
    return [
        IdentityResult("birkhoff_vs_arccosh", w_acosh, tp.arccosh_agreement, trials),
        IdentityResult("birkhoff_vs_crossratio", w_cross, tp.crossratio_agreement, trials),
        IdentityResult("birkhoff_symmetry", w_sym, tp.symmetry, trials),
    ]


def check_metric_axioms(rng, trials, tp: ToleranceProfile) -> list[IdentityResult]:
    w_tri = w_scale = w_prod = w_rad = 0.0
    for _ in range(trials):
        u, v, w = random_disc_point(rng), random_disc_point(rng), random_disc_point(rng)
        w_tri = max(w_tri, birkhoff_distance(u, w) - birkhoff_distance(u, v) - birkhoff_distance(v, w))
        s, t = float(rng.uniform(0.1, 10.0)), float(rng.uniform(0.1, 10.0))
        w_scale = max(w_scale, abs(birkhoff_distance(u.scaled(s), v.scaled(t)) - birkhoff_distance(u, v)))
        w_prod = max(w_prod, 1.0 - gauge_closed(u, v) * gauge_closed(v, u))
        e = random_direction(rng)
        a = float(rng.uniform(0.0, 0.99))
        w_rad = max(w_rad, abs(birkhoff_distance(ORIGIN, DiscPoint(e * a)) - math.atanh(a)))
    return [
        IdentityResult("triangle_inequality", max(w_tri, 0.0), tp.triangle, trials),
        IdentityResult("projective_invariance", w_scale, tp.scale_invariance, trials),
        IdentityResult("gauge_product_at_least_one", max(w_prod, 0.0), tp.gauge_product, trials),
        IdentityResult("radial_atanh", w_rad, tp.radial_formula, trials),
    ]


def check_horofunctions(rng, trials, n_params, tp: ToleranceProfile) -> list[IdentityResult]:
    w_norm = w_red = w_lip = w_scale = 0.0
    for _ in range(trials):
        w_norm = max(w_norm, abs(horo_eval(random_params(rng), ORIGIN)))
        pb = random_params(rng, busemann=True)
        v = random_cone_vector(rng)
        w_red = max(w_red, abs(horo_eval(pb, v) - busemann_eval(pb, v)))
    for _ in range(n_params):
        p = random_params(rng)
        for _ in range(trials):
            u, v = random_disc_point(rng), random_disc_point(rng)
            w_lip = max(w_lip, abs(horo_eval(p, u) - horo_eval(p, v)) - birkhoff_distance(u, v))
            s = float(rng.uniform(0.1, 10.0))
            w_scale = max(w_scale, abs(horo_eval(p, v.scaled(s)) - horo_eval(p, v)))
    return [
        IdentityResult("horo_normalization", w_norm, tp.normalization, trials),
        IdentityResult("busemann_reduction", w_red, tp.busemann_reduction, trials),
        IdentityResult("horo_lipschitz", max(w_lip, 0.0), tp.lipschitz, trials * n_params),
        IdentityResult("horo_scale_invariance", w_scale, tp.horo_scale_invariance, trials * n_params),
    ]


def run_identity_suite(
    config: ExperimentConfig, trials: int, seed: Optional[int] = None, n_params: int = 20
) -> IdentityTable:
    """Sample from the seed and report max deviation of every identity against the tolerance profile."""
    if trials <= 0:
        raise InputError(f"trials must be positive, got {trials}")
    seed = config.seed if seed is None else seed
    tp = config.tolerances
    rng = make_rng(config, seed)
    results = [check_gauge_equivalence(rng, trials, tp)]
    results += check_metric_agreement(rng, trials, tp)
    results += check_metric_axioms(rng, trials, tp)
    results += check_horofunctions(rng, trials, n_params, tp)
    return IdentityTable(seed, trials, results)


__all__ = [
    "ToleranceProfile",
    "ExperimentConfig",
    "GeneratorSpec",
    "ConvergenceReport",
    "IdentityTable",
    "default_probes",
    "parse_vector_file",
    "read_terms",
    "run_convergence",
    "run_identity_suite",
]

"""Iterated function systems: contracting affine maps, validation, sampling.

Matrices and vectors are plain float ndarrays.  An :class:`AffineMap` is one
contraction ``x -> A x + t`` with its spectral norm cached; an :class:`IFS`
is a validated family of such maps sharing a dimension.  The chaos game
provides an independent sampling oracle for the attractor, used throughout
the test suite to audit everything built on top.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotContractingError, ValidationError

_NORM_RTOL = 1e-12
_POWER_ITER_CAP = 100_000


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix entries must be finite")


def operator_norm(a) -> float:
    """Spectral norm sup_{|x|=1} |Ax| of a square matrix.

    Closed-form largest singular value for 1x1 and 2x2 matrices; power
    iteration on A^T A (relative tolerance 1e-12) for anything larger.
    """
    a = np.asarray(a, dtype=float)
    _check_square(a)
    m = a.shape[0]
    if m == 1:
        return abs(float(a[0, 0]))
    if m == 2:
        g = a.T @ a
        mean = 0.5 * (g[0, 0] + g[1, 1])
        off = math.hypot(0.5 * (g[0, 0] - g[1, 1]), g[0, 1])
        return math.sqrt(max(mean + off, 0.0))
    return _power_iteration_norm(a)


def _power_iteration_norm(a: np.ndarray) -> float:
    g = a.T @ a
    m = a.shape[0]
    # deterministic start with a mild tilt so no eigenvector is missed
    v = 1.0 + np.arange(m) / (7.0 * m)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(_POWER_ITER_CAP):
        w = g @ v
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(nw - lam) <= _NORM_RTOL * nw:
            lam = nw
            break
        lam = nw
    return math.sqrt(lam)


@dataclass(frozen=True)
class AffineMap:
    """One contracting affine map x -> Ax + t with its cached operator norm c."""

    a: np.ndarray
    t: np.ndarray
    c: float

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def __call__(self, x) -> np.ndarray:
        return self.a @ np.asarray(x, dtype=float) + self.t


def affine_map(a, t) -> AffineMap:
    """Validate and build an :class:`AffineMap`, caching its operator norm."""
    a = _readonly(np.array(a, dtype=float))
    t = _readonly(np.array(t, dtype=float))
    _check_square(a)
    if t.shape != (a.shape[0],):
        raise ValidationError(
            f"translation shape {t.shape} does not match matrix dimension {a.shape[0]}"
        )
    if not np.all(np.isfinite(t)):
        raise ValidationError("translation entries must be finite")
    c = operator_norm(a)
    if c >= 1.0:
        raise NotContractingError(f"map is not contracting, c={c:.6g}")
    return AffineMap(a, t, c)


@dataclass(frozen=True)
class IFS:
    """A validated finite family of contracting affine maps sharing a dimension."""

    maps: tuple[AffineMap, ...]
    dim: int
    c: float

    def __len__(self) -> int:
        return len(self.maps)


def validate_ifs(maps) -> IFS:
    """Check a family of maps and assemble an :class:`IFS`.

    Accepts :class:`AffineMap` instances or ``(A, t)`` pairs.  Rejects an
    empty family, mixed dimensions, and any non-contracting member (the
    error names the 1-based index and the offending norm).
    """
    items = list(maps)
    if not items:
        raise ValidationError("an IFS needs at least one map")
    built: list[AffineMap] = []
    for i, item in enumerate(items, start=1):
        if isinstance(item, AffineMap):
            fresh = operator_norm(item.a)
            if abs(item.c - fresh) > 1e-12:
                raise ValidationError(
                    f"map {i} carries a stale cached norm ({item.c} vs {fresh})"
                )
            if item.c >= 1.0:
                raise NotContractingError(
                    f"map {i} is not contracting, c_{i}={item.c:.6g}"
                )
            built.append(item)
            continue
        a, t = item
        try:
            built.append(affine_map(a, t))
        except NotContractingError:
            c = operator_norm(np.asarray(a, dtype=float))
            raise NotContractingError(
                f"map {i} is not contracting, c_{i}={c:.6g}"
            ) from None
    dim = built[0].dim
    for i, m in enumerate(built, start=1):
        if m.dim != dim:
            raise ValidationError(
                f"map {i} has dimension {m.dim}, expected {dim}"
            )
    return IFS(tuple(built), dim, max(m.c for m in built))


def map_fixed_point(m: AffineMap) -> np.ndarray:
    """Fixed point x* = (I - A)^{-1} t of one map; always a point of the attractor."""
    return np.linalg.solve(np.eye(m.dim) - m.a, m.t)


@dataclass(frozen=True)
class PointCloud:
    """Chaos-game samples of an attractor, deterministic for fixed inputs."""

    points: np.ndarray  # (count, dim)
    seed: int
    burn_in: int

    def __len__(self) -> int:
        return self.points.shape[0]


def chaos_game_sample(ifs: IFS, count: int, seed: int, burn_in: int = 64) -> PointCloud:
    """Random-iteration sampling of the attractor.

    Starts at the fixed point of the first map (a point of the attractor),
    repeatedly applies a uniformly chosen map, and records points once
    ``burn_in`` iterations have passed.  Output is bit-for-bit reproducible
    for identical ``(ifs, count, seed, burn_in)``.
    """
    if count < 1:
        raise ValidationError("count must be at least 1")
    if burn_in < 0:
        raise ValidationError("burn_in must be nonnegative")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(ifs.maps), size=burn_in + count)
    start = map_fixed_point(ifs.maps[0])
    if ifs.dim == 2:
        pts = _chaos_2d(ifs.maps, idx, start, burn_in, count)
    else:
        pts = np.empty((count, ifs.dim))
        x = start
        k = 0
        for j, i in enumerate(idx.tolist()):
            m = ifs.maps[i]
            x = m.a @ x + m.t
            if j >= burn_in:
                pts[k] = x
                k += 1
    return PointCloud(_readonly(pts), seed=int(seed), burn_in=int(burn_in))


def _chaos_2d(maps, idx, start, burn_in, count):
    # flat float tuples keep the hot loop free of ndarray overhead
    coeff = [
        (
            float(m.a[0, 0]), float(m.a[0, 1]),
            float(m.a[1, 0]), float(m.a[1, 1]),
            float(m.t[0]), float(m.t[1]),
        )
        for m in maps
    ]
    x, y = float(start[0]), float(start[1])
    out = np.empty((count, 2))
    k = 0
    for j, i in enumerate(idx.tolist()):
        a11, a12, a21, a22, tx, ty = coeff[i]
        x, y = a11 * x + a12 * y + tx, a21 * x + a22 * y + ty
        if j >= burn_in:
            out[k, 0] = x
            out[k, 1] = y
            k += 1
    return out


def complex_base_ifs(z: complex, n: int) -> IFS:
    """Digit maps x -> (x + i)/z, i = 0..n-1, of a complex-base numeral system.

    The attractor is the set of fractional parts representable in base ``z``
    with digits ``0..n-1``; all maps share the similarity matrix of ``1/z``,
    so the contraction factor is ``1/|z|``.
    """
    z = complex(z)
    if abs(z) <= 1.0:
        raise ValidationError("complex base needs |z| > 1")
    if n != int(n) or int(n) < 2:
        raise ValidationError("digit count n must be an integer >= 2")
    w = 1.0 / z
    a = np.array([[w.real, -w.imag], [w.imag, w.real]])
    maps = []
    for i in range(int(n)):
        ti = i * w
        maps.append(affine_map(a, (ti.real, ti.imag)))
    return validate_ifs(maps)


@dataclass(frozen=True)
class IFSDocument:
    """Parsed IFS input file: the validated system plus optional base metadata."""

    ifs: IFS
    complex_base: tuple[complex, int] | None = None


def parse_ifs_document(text: str) -> IFSDocument:
    """Parse the JSON IFS interchange format.

    Two layouts are accepted::

        {"dim": m, "maps": [{"A": [[...]], "t": [...]}, ...]}
        {"complex_base": {"z": [re, im], "n": n}}

    Anything failing :func:`validate_ifs` is rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("top-level JSON value must be an object")
    if "complex_base" in doc:
        spec = doc["complex_base"]
        try:
            re_, im_ = spec["z"]
            n = spec["n"]
        except (KeyError, TypeError, ValueError):
            raise ValidationError(
                'complex_base needs {"z": [re, im], "n": n}'
            ) from None
        z = complex(float(re_), float(im_))
        return IFSDocument(complex_base_ifs(z, int(n)), complex_base=(z, int(n)))
    if "maps" not in doc:
        raise ValidationError('expected a "maps" or "complex_base" key')
    pairs = []
    for entry in doc["maps"]:
        try:
            pairs.append((entry["A"], entry["t"]))
        except (KeyError, TypeError):
            raise ValidationError('each map needs "A" and "t"') from None
    ifs = validate_ifs(pairs)
    if "dim" in doc and int(doc["dim"]) != ifs.dim:
        raise ValidationError(
            f'declared dim {doc["dim"]} does not match maps of dimension {ifs.dim}'
        )
    return IFSDocument(ifs)


def format_ifs_document(ifs: IFS) -> str:
    """Serialize an IFS to the JSON interchange format (raw-matrix layout)."""
    doc = {
        "dim": ifs.dim,
        "maps": [
            {"A": m.a.tolist(), "t": m.t.tolist()} for m in ifs.maps
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def load_ifs_file(path) -> IFSDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ifs_document(fh.read())

"""Floating-point witnesses for the symbolic results.

Aberth-Ehrlich root finding, back-substitution through triangular lex bases,
and a predictor-corrector tracker for the parameter homotopy
``H(x, t) = F(x; (1 - tau) q_target + tau q_start)``, ``tau = tau(t)``,
followed from ``t = 1`` to ``t = 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from parcont.groebner import GroebnerBasis, buchberger
from parcont.ideals import FamilySpec, jacobian_determinant, specialize_saturated
from parcont.poly import Polynomial, evaluate_parameters, partial_derivative


class RootFindingError(RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedShape(ValueError):
    pass


@dataclass(frozen=True)
class ComplexPoint:
    coordinates: tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(z) for z in self.coordinates)
        if not all(cmath.isfinite(z) for z in coords):
            raise ValueError("non-finite coordinate")
        object.__setattr__(self, "coordinates", coords)

    def __len__(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def array(self) -> np.ndarray:
        return np.array(self.coordinates, dtype=complex)


# ---------------------------------------------------------------------------
# univariate roots


def _horner(coeffs_high, z):
    p = 0j
    dp = 0j
    for c in coeffs_high:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def backward_error(coeffs_high: Sequence[complex], z: complex) -> float:
    """``|f(z)| / sum |c_k| |z|^k``."""
    p, _ = _horner(coeffs_high, z)
    scale = 0.0
    az = abs(z)
    for c in coeffs_high:
        scale = scale * az + abs(c)
    return abs(p) / scale if scale else 0.0


def aberth(coeffs_high: Sequence[complex], tol: float = 1e-10, max_iter: int = 500) -> list[complex]:
    """All roots (with multiplicity) of the polynomial with coefficients highest degree first."""
    c = [complex(v) for v in coeffs_high]
    while c and c[0] == 0:
        c.pop(0)
    n = len(c) - 1
    if n < 1:
        raise ValueError("need degree at least 1")
    zeros_at_origin = 0
    while c[-1] == 0:
        c.pop()
        zeros_at_origin += 1
    n = len(c) - 1
    roots = [0j] * zeros_at_origin
    if n == 0:
        return roots
    lead = c[0]
    c = [v / lead for v in c]
    cauchy = 1.0 + max(abs(v) for v in c[1:])
    # circle at the geometric mean of the root moduli, capped by the Cauchy bound
    r0 = min(cauchy, abs(c[-1]) ** (1.0 / n))
    z = [r0 * cmath.exp(1j * (2 * math.pi * k / n + 0.4 + 0.1 * math.sin(k))) for k in range(n)]
    done = [False] * n
    for _ in range(max_iter):
        for i in range(n):
            if done[i]:
                continue
            p, dp = _horner(c, z[i])
            if p == 0:
                done[i] = True
                continue
            ratio = p / dp if dp != 0 else complex(1e-3)
            s = sum(1.0 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            w = ratio / (1 - ratio * s)
            z[i] -= w
            if abs(w) <= 1e-15 * max(1.0, abs(z[i])):
                done[i] = True
        if all(done):
            break
    bad = [w for w in z if backward_error(c, w) >= tol]
    if bad:
        raise RootFindingError(f"{len(bad)} of {n} roots did not converge", partial=roots + z)
    return roots + z


def univariate_roots(f, tol: float = 1e-10) -> list[ComplexPoint]:
    """Roots of a univariate :class:`Polynomial` (or highest-first coefficient list)."""
    if isinstance(f, Polynomial):
        used = f.support()
        if len(used) > 1:
            raise ValueError(f"{f} is not univariate")
        if f.is_constant():
            raise ValueError("need degree at least 1")
        i = used.pop()
        deg = f.degree()
        coeffs = [0j] * (deg + 1)
        for e, c in f.terms:
            coeffs[deg - e[i]] += float(c)
    else:
        coeffs = list(f)
    return [ComplexPoint((z,)) for z in aberth(coeffs, tol)]


# ---------------------------------------------------------------------------
# compiled numeric evaluation


class _Compiled:
    """A polynomial evaluated at complex points through exponent matrices."""

    def __init__(self, f: Polynomial):
        if f.terms:
            self.exps = np.array([e for e, _ in f.terms], dtype=np.int64)
            self.coeffs = np.array([float(c) for _, c in f.terms], dtype=complex)
        else:
            self.exps = np.zeros((0, f.context.nvars), dtype=np.int64)
            self.coeffs = np.zeros(0, dtype=complex)

    def __call__(self, point: np.ndarray) -> complex:
        if not len(self.coeffs):
            return 0j
        return complex(self.coeffs @ np.prod(point[None, :] ** self.exps, axis=1))


def _triangular_order(G: GroebnerBasis) -> list[tuple[int, Polynomial]]:
    ctx = G.context
    n = ctx.nvars
    if ctx.p_vars:
        raise UnsupportedShape("unsupported shape: basis still has parameters")
    if len(G.elements) != n:
        raise UnsupportedShape("unsupported shape: need one basis element per variable")
    seen = {}
    for g in G.elements:
        lm = g.terms[0][0]
        lead = next((i for i, e in enumerate(lm) if e), None)
        if lead is None or any(lm[lead + 1 :]) or lead in seen:
            raise UnsupportedShape("unsupported shape: basis is not triangular")
        seen[lead] = g
    return sorted(seen.items(), reverse=True)


def solve_triangular(G: GroebnerBasis) -> list[ComplexPoint]:
    """All zeros of a triangular zero-dimensional lex basis by back-substitution."""
    if G.is_one():
        return []
    order = _triangular_order(G)
    n = G.context.nvars
    partial = [np.zeros(n, dtype=complex)]
    for i, g in order:
        deg = g.terms[0][0][i]
        compiled = []
        for k in range(deg + 1):
            part = {e[:i] + (0,) + e[i + 1 :]: c for e, c in g.terms if e[i] == k}
            compiled.append(_Compiled(Polynomial.from_dict(g.context, part)))
        nxt = []
        for pt in partial:
            coeffs = [comp(pt) for comp in reversed(compiled)]
            for z in aberth(coeffs):
                new = pt.copy()
                new[i] = z
                nxt.append(new)
        partial = nxt
    return [ComplexPoint(tuple(p)) for p in partial]


# ---------------------------------------------------------------------------
# homotopy tracking


@dataclass(frozen=True)
class TrackerConfig:
    newton_tol: float = 1e-12
    end_tol: float = 1e-8
    start_tol: float = 1e-8
    initial_step: float = 1e-2
    min_step: float = 1e-12
    max_step: float = 0.1
    newton_iters: int = 5
    successes_to_grow: int = 3
    # sigma_min below this, or condition number above max_condition, is a singular encounter
    singular_tol: float = 1e-10
    max_condition: float = 1e12
    max_steps: int = 100_000
    # complex bend of the parameter segment; 1 gives the straight segment
    gamma: complex = complex(0.6, 0.8)


@dataclass(frozen=True)
class TrackResult:
    start: ComplexPoint
    end: ComplexPoint
    status: str
    steps: int
    final_residual: float
    final_jacobian_det: float = float("nan")

    @property
    def converged(self) -> bool:
        return self.status == "converged"


CONVERGED = "converged"
DIVERGED = "diverged"
SINGULAR = "singular-encounter"


class ParameterHomotopy:
    """``H(x, t) = F(x; p(t))`` with ``p(0) = q_target`` and ``p(1) = q_start``."""

    def __init__(self, F: FamilySpec, q_target: Mapping, q_start: Mapping, gamma: complex = 1):
        self.F = F
        ctx = F.context
        self.n = len(ctx.x_vars)
        self.k = len(ctx.p_vars)
        self.q1 = np.array([complex(float(q_target[p])) for p in ctx.p_vars], dtype=complex)
        self.q2 = np.array([complex(float(q_start[p])) for p in ctx.p_vars], dtype=complex)
        self.gamma = complex(gamma)
        self.f = [_Compiled(f) for f in F.polynomials]
        self.fx = [[_Compiled(partial_derivative(f, v)) for v in ctx.x_vars] for f in F.polynomials]
        self.fp = [[_Compiled(partial_derivative(f, v)) for v in ctx.p_vars] for f in F.polynomials]

    def tau(self, t: float) -> tuple[complex, complex]:
        g = self.gamma
        d = 1 + (g - 1) * t
        return g * t / d, g / (d * d)

    def _point(self, x, t):
        tau, _ = self.tau(t)
        p = (1 - tau) * self.q1 + tau * self.q2
        return np.concatenate([np.asarray(x, dtype=complex), p])

    def H(self, x, t) -> np.ndarray:
        pt = self._point(x, t)
        return np.array([f(pt) for f in self.f])

    def Hx(self, x, t) -> np.ndarray:
        pt = self._point(x, t)
        return np.array([[d(pt) for d in row] for row in self.fx])

    def Ht(self, x, t) -> np.ndarray:
        pt = self._point(x, t)
        _, dtau = self.tau(t)
        dp = (self.q2 - self.q1) * dtau
        return np.array([sum(d(pt) * v for d, v in zip(row, dp)) for row in self.fp], dtype=complex)

    def velocity(self, x, t) -> np.ndarray:
        return -np.linalg.solve(self.Hx(x, t), self.Ht(x, t))


def _singular(J: np.ndarray, cfg: TrackerConfig) -> bool:
    s = np.linalg.svd(J, compute_uv=False)
    if s[-1] < cfg.singular_tol:
        return True
    return s[0] / s[-1] > cfg.max_condition


def _newton(hom: ParameterHomotopy, x, t, cfg: TrackerConfig):
    for _ in range(cfg.newton_iters):
        J = hom.Hx(x, t)
        try:
            dx = np.linalg.solve(J, hom.H(x, t))
        except np.linalg.LinAlgError:
            return x, False
        x = x - dx
        if np.linalg.norm(dx) <= cfg.newton_tol * (1 + np.linalg.norm(x)):
            return x, True
    return x, False


def track_path(
    F: FamilySpec,
    q_target: Mapping,
    q_start: Mapping,
    x0,
    cfg: TrackerConfig | None = None,
) -> TrackResult:
    """Follow a zero of ``F(x; q_start)`` to a zero of ``F(x; q_target)``.

    RK4 on the Davidenko equation ``Hx * dx/dt + Ht = 0`` predicts, Newton on
    ``H(., t)`` corrects.  The step halves on corrector failure and doubles
    after a run of successes.
    """
    cfg = cfg or TrackerConfig()
    start = x0 if isinstance(x0, ComplexPoint) else ComplexPoint(tuple(np.atleast_1d(x0)))
    same = all(q_target[p] == q_start[p] for p in F.p_vars)
    hom = ParameterHomotopy(F, q_target, q_start, 1 if same else cfg.gamma)
    x = start.array()
    res0 = float(np.linalg.norm(hom.H(x, 1.0)))
    if res0 >= cfg.start_tol:
        raise ValueError(f"start point residual {res0:.3e} exceeds the start tolerance")

    def finish(x, status, steps):
        r = float(np.linalg.norm(hom.H(x, 0.0)))
        det = float(abs(np.linalg.det(hom.Hx(x, 0.0))))
        if status == CONVERGED and not r < cfg.end_tol:
            status = DIVERGED
        try:
            end = ComplexPoint(tuple(x))
        except ValueError:
            end, status = start, DIVERGED
        return TrackResult(start, end, status, steps, r, det)

    if same:
        x, _ = _newton(hom, x, 0.0, cfg)
        return finish(x, CONVERGED, 1)

    s_start = np.linalg.svd(hom.Hx(x, 1.0), compute_uv=False)[-1]
    t = 1.0
    h = cfg.initial_step
    streak = 0
    steps = 0
    while t > 0:
        if steps >= cfg.max_steps:
            return finish(x, DIVERGED, steps)
        if _singular(hom.Hx(x, t), cfg):
            return finish(x, SINGULAR, steps)
        h = min(h, t)
        dt = -h
        try:
            k1 = hom.velocity(x, t)
            k2 = hom.velocity(x + 0.5 * dt * k1, t + 0.5 * dt)
            k3 = hom.velocity(x + 0.5 * dt * k2, t + 0.5 * dt)
            k4 = hom.velocity(x + dt * k3, t + dt)
            pred = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            ok = bool(np.all(np.isfinite(pred)))
        except np.linalg.LinAlgError:
            ok = False
        t_new = max(t + dt, 0.0)
        if ok:
            corrected, ok = _newton(hom, pred, t_new, cfg)
            # a large correction means the predictor may have jumped paths
            if ok and np.linalg.norm(corrected - pred) > 0.1 * (1 + np.linalg.norm(pred)):
                ok = False
        steps += 1
        if ok:
            x, t = corrected, t_new
            streak += 1
            if streak >= cfg.successes_to_grow:
                h = min(2 * h, cfg.max_step)
                streak = 0
        else:
            streak = 0
            h /= 2
            if h < cfg.min_step:
                # a stall where the Jacobian collapsed is a singular point, not a lost path
                s_min = np.linalg.svd(hom.Hx(x, t), compute_uv=False)[-1]
                near_singular = s_min < 1e-6 or s_min < 1e-3 * s_start
                return finish(x, SINGULAR if near_singular else DIVERGED, steps)
    x, _ = _newton(hom, x, 0.0, cfg)
    return finish(x, CONVERGED, steps)


# ---------------------------------------------------------------------------
# numeric regular-zero count


def cluster(points: Sequence[ComplexPoint], radius: float = 1e-6) -> list[list[ComplexPoint]]:
    groups: list[list[ComplexPoint]] = []
    for p in points:
        a = p.array()
        for grp in groups:
            if np.linalg.norm(grp[0].array() - a) < radius:
                grp.append(p)
                break
        else:
            groups.append([p])
    return groups


def _zero_dim_triangular(G: GroebnerBasis) -> bool:
    try:
        _triangular_order(G)
    except UnsupportedShape:
        return False
    return True


def numeric_zeros(F: FamilySpec, q: Mapping) -> list[ComplexPoint]:
    """Zeros of ``F(x; q)`` from a triangular lex basis.

    The basis of ``I_q`` itself is used when it is zero-dimensional and
    triangular, so multiple zeros stay visible; otherwise the saturated basis.
    """
    gens = [evaluate_parameters(f, q) for f in F.polynomials]
    G = buchberger(gens) if any(not g.is_zero() for g in gens) else None
    if G is None or G.is_one():
        return []
    if not _zero_dim_triangular(G):
        G = specialize_saturated(F, q)
    return solve_triangular(G)


def verify_count_numerically(
    F: FamilySpec, q: Mapping, det_tol: float = 1e-8, radius: float = 1e-6
) -> int:
    """Number of numerically regular zeros of ``F(x; q)``."""
    points = numeric_zeros(F, q)
    jac = _Compiled(evaluate_parameters(jacobian_determinant(F), q))
    count = 0
    for grp in cluster(points, radius):
        if len(grp) > 1:
            continue
        if abs(jac(grp[0].array())) > det_tol:
            count += 1
    return count

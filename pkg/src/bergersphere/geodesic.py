"""Numerical geodesic flow on SU(2), independent of the closed forms.

The geodesic equations split into the momentum equation (free rigid body
in the body frame) and the reconstruction of the group element as a unit
quaternion:

    dp/dt = p x Omega,        Omega = (p1/i1, p2/i1, p3/i3)
    dq/dt = (1/2) * q * Omega_hat

where ``Omega_hat`` is the body angular velocity as a pure quaternion.
The joint 7-dimensional system is integrated with a fixed-step classical
4th-order scheme, renormalizing the quaternion after every step.  The
factor 1/2 and the ordering of the quaternion product are pinned by the
round-case calibration: for ``i1 = i3 = I`` the flow must reach
``-identity`` at ``t = 2*pi*sqrt(I)``.

Three oracles build on the integrator:

* ``exp_map``: endpoint of the geodesic with a given unit-speed momentum;
* ``conjugate_time_numeric``: first sign change of the determinant of the
  differential of the endpoint map, assembled from the endpoint velocity
  and central-difference derivatives in two level-set directions;
* ``shorter_path_search``: damped least-squares shooting that looks for a
  geodesic reaching a given endpoint strictly earlier.

Everything here is independent of the transcendental root solvers, so
agreement between the two routes is meaningful evidence for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NoConjugatePoint, NormalizationError
from .model import BergerMetric, Momentum, ReducedMomentum, _pbar3_value, momentum_norm

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap

__all__ = [
    "UnitQuaternion",
    "GeodesicState",
    "ShorterPath",
    "initial_momentum",
    "exp_map",
    "endpoint_state",
    "conjugate_time_numeric",
    "shorter_path_search",
]

_H_LEVEL_TOL = 1e-10     # admissible deviation of H(p0) from 1/2
_H_DRIFT_TOL = 1e-6      # relative drift of H that aborts an integration
_CONJ_GRID_N = 400       # sign-scan resolution for the determinant
_CONJ_SUBSTEPS = 10      # integrator steps per scan cell
_CONJ_DELTA = 1e-6       # momentum perturbation for the difference quotients
_SHOOT_STEPS = 1200      # integrator steps per shooting residual
_SHOOT_MARGIN = 1e-4     # required arrival-time advantage
_SHOOT_RESIDUAL = 1e-7   # endpoint mismatch accepted as a hit


@dataclass(frozen=True)
class UnitQuaternion:
    """Group element of SU(2) as a unit quaternion ``w + xi + yj + zk``."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)
        if not math.isfinite(n) or abs(n - 1.0) > 1e-9:
            raise ValueError(f"quaternion norm {n!r} is not 1 within 1e-9")


@dataclass(frozen=True)
class GeodesicState:
    """Integration snapshot: group element, momentum, and elapsed time."""

    q: UnitQuaternion
    p: Momentum
    t: float


@dataclass(frozen=True)
class ShorterPath:
    """A geodesic reaching the target strictly earlier than the reference."""

    momentum: Momentum
    arrival_time: float


@njit(cache=True)
def _rk4(y, a1, a3, h, n):
    """n fixed steps of the joint flow; y = (qw, qx, qy, qz, p1, p2, p3)."""
    qw, qx, qy, qz = y[0], y[1], y[2], y[3]
    p1, p2, p3 = y[4], y[5], y[6]
    for _ in range(n):
        w1 = p1 * a1; w2 = p2 * a1; w3 = p3 * a3
        ap1 = p2 * w3 - p3 * w2
        ap2 = p3 * w1 - p1 * w3
        ap3 = p1 * w2 - p2 * w1
        aw = -0.5 * (qx * w1 + qy * w2 + qz * w3)
        ax = 0.5 * (qw * w1 + qy * w3 - qz * w2)
        ay = 0.5 * (qw * w2 + qz * w1 - qx * w3)
        az = 0.5 * (qw * w3 + qx * w2 - qy * w1)

        tw = qw + 0.5 * h * aw; tx = qx + 0.5 * h * ax
        ty = qy + 0.5 * h * ay; tz = qz + 0.5 * h * az
        t1 = p1 + 0.5 * h * ap1; t2 = p2 + 0.5 * h * ap2; t3 = p3 + 0.5 * h * ap3
        w1 = t1 * a1; w2 = t2 * a1; w3 = t3 * a3
        bp1 = t2 * w3 - t3 * w2
        bp2 = t3 * w1 - t1 * w3
        bp3 = t1 * w2 - t2 * w1
        bw = -0.5 * (tx * w1 + ty * w2 + tz * w3)
        bx = 0.5 * (tw * w1 + ty * w3 - tz * w2)
        by = 0.5 * (tw * w2 + tz * w1 - tx * w3)
        bz = 0.5 * (tw * w3 + tx * w2 - ty * w1)

        tw = qw + 0.5 * h * bw; tx = qx + 0.5 * h * bx
        ty = qy + 0.5 * h * by; tz = qz + 0.5 * h * bz
        t1 = p1 + 0.5 * h * bp1; t2 = p2 + 0.5 * h * bp2; t3 = p3 + 0.5 * h * bp3
        w1 = t1 * a1; w2 = t2 * a1; w3 = t3 * a3
        cp1 = t2 * w3 - t3 * w2
        cp2 = t3 * w1 - t1 * w3
        cp3 = t1 * w2 - t2 * w1
        cw = -0.5 * (tx * w1 + ty * w2 + tz * w3)
        cx = 0.5 * (tw * w1 + ty * w3 - tz * w2)
        cy = 0.5 * (tw * w2 + tz * w1 - tx * w3)
        cz = 0.5 * (tw * w3 + tx * w2 - ty * w1)

        tw = qw + h * cw; tx = qx + h * cx
        ty = qy + h * cy; tz = qz + h * cz
        t1 = p1 + h * cp1; t2 = p2 + h * cp2; t3 = p3 + h * cp3
        w1 = t1 * a1; w2 = t2 * a1; w3 = t3 * a3
        dp1 = t2 * w3 - t3 * w2
        dp2 = t3 * w1 - t1 * w3
        dp3 = t1 * w2 - t2 * w1
        dw = -0.5 * (tx * w1 + ty * w2 + tz * w3)
        dx = 0.5 * (tw * w1 + ty * w3 - tz * w2)
        dy = 0.5 * (tw * w2 + tz * w1 - tx * w3)
        dz = 0.5 * (tw * w3 + tx * w2 - ty * w1)

        s = h / 6.0
        qw += s * (aw + 2.0 * (bw + cw) + dw)
        qx += s * (ax + 2.0 * (bx + cx) + dx)
        qy += s * (ay + 2.0 * (by + cy) + dy)
        qz += s * (az + 2.0 * (bz + cz) + dz)
        p1 += s * (ap1 + 2.0 * (bp1 + cp1) + dp1)
        p2 += s * (ap2 + 2.0 * (bp2 + cp2) + dp2)
        p3 += s * (ap3 + 2.0 * (bp3 + cp3) + dp3)
        r = 1.0 / math.sqrt(qw * qw + qx * qx + qy * qy + qz * qz)
        qw *= r; qx *= r; qy *= r; qz *= r

    out = np.empty(7)
    out[0] = qw; out[1] = qx; out[2] = qy; out[3] = qz
    out[4] = p1; out[5] = p2; out[6] = p3
    return out


def _hamiltonian(i1: float, i3: float, p1: float, p2: float, p3: float) -> float:
    return 0.5 * ((p1 * p1 + p2 * p2) / i1 + p3 * p3 / i3)


def _state7(p: Momentum) -> np.ndarray:
    return np.array([1.0, 0.0, 0.0, 0.0, p.p1, p.p2, p.p3])


def _integrate(m: BergerMetric, y: np.ndarray, t: float, n: int) -> np.ndarray:
    if t == 0.0 or n == 0:
        return y.copy()
    out = _rk4(y, 1.0 / m.i1, 1.0 / m.i3, t / n, n)
    h_end = _hamiltonian(m.i1, m.i3, out[4], out[5], out[6])
    if abs(h_end - 0.5) > _H_DRIFT_TOL * 0.5:
        raise NormalizationError(
            f"Hamiltonian drifted to {h_end!r} over t={t!r} with {n} steps"
        )
    return out


def initial_momentum(m: BergerMetric, pb: "ReducedMomentum | float", phi: float) -> Momentum:
    """Unit-speed momentum with axis fraction ``pb`` and equatorial angle ``phi``."""
    if not isinstance(phi, (int, float)) or isinstance(phi, bool) or not math.isfinite(phi):
        raise ValueError(f"phi must be a finite real number, got {phi!r}")
    pbar3 = _pbar3_value(pb)
    norm = momentum_norm(m, pbar3)
    s = math.sqrt(max(0.0, 1.0 - pbar3 * pbar3))
    return Momentum(
        p1=norm * s * math.cos(phi),
        p2=norm * s * math.sin(phi),
        p3=norm * pbar3,
    )


def _check_level(m: BergerMetric, p0: Momentum) -> None:
    h = _hamiltonian(m.i1, m.i3, p0.p1, p0.p2, p0.p3)
    if abs(h - 0.5) > _H_LEVEL_TOL:
        raise DomainError(f"momentum is not on the unit-speed level: H={h!r}")


def exp_map(m: BergerMetric, p0: Momentum, t: float, step: float) -> UnitQuaternion:
    """Endpoint of the geodesic from the identity with momentum ``p0``.

    ``step`` is the requested integrator step; it must not exceed
    ``t/1000`` so that accuracy claims hold uniformly.  The actual step
    divides ``t`` exactly.
    """
    return endpoint_state(m, p0, t, step).q


def endpoint_state(m: BergerMetric, p0: Momentum, t: float, step: float) -> GeodesicState:
    """Like ``exp_map`` but also returns the transported momentum.

    The momentum drift relative to the conserved quantities (energy,
    momentum norm, axis component) is the integrator's error estimate.
    """
    if not isinstance(t, (int, float)) or isinstance(t, bool) or not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and nonnegative, got {t!r}")
    _check_level(m, p0)
    if t == 0.0:
        return GeodesicState(q=UnitQuaternion(1.0, 0.0, 0.0, 0.0), p=p0, t=0.0)
    if not isinstance(step, (int, float)) or isinstance(step, bool) or not step > 0.0:
        raise ValueError(f"step must be positive, got {step!r}")
    if step > t / 1000.0:
        raise ValueError(f"step {step!r} exceeds t/1000 = {t / 1000.0!r}")
    n = math.ceil(t / step)
    y = _integrate(m, _state7(p0), t, n)
    return GeodesicState(
        q=UnitQuaternion(y[0], y[1], y[2], y[3]),
        p=Momentum(y[4], y[5], y[6]),
        t=float(t),
    )


def _qlog(w: float, x: float, y: float, z: float) -> np.ndarray:
    # group logarithm: rotation-vector coordinates, smooth away from -identity
    vn = math.sqrt(x * x + y * y + z * z)
    if vn < 1e-300:
        return np.zeros(3)
    s = 2.0 * math.atan2(vn, w) / vn
    return np.array([s * x, s * y, s * z])


def _rel_log(base: np.ndarray, other: np.ndarray) -> np.ndarray:
    # log(base^-1 * other) for unit quaternions stored as length-4 slices
    bw, bx, by, bz = base[0], -base[1], -base[2], -base[3]
    ow, ox, oy, oz = other[0], other[1], other[2], other[3]
    return _qlog(
        bw * ow - bx * ox - by * oy - bz * oz,
        bw * ox + bx * ow + by * oz - bz * oy,
        bw * oy - bx * oz + by * ow + bz * ox,
        bw * oz + bx * oy - by * ox + bz * ow,
    )


def _level_tangent_basis(m: BergerMetric, p0: Momentum) -> "tuple[np.ndarray, np.ndarray]":
    # two directions spanning the tangent space of {H = 1/2} at p0
    grad = np.array([p0.p1 / m.i1, p0.p2 / m.i1, p0.p3 / m.i3])
    grad /= np.linalg.norm(grad)
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(grad)))] = 1.0
    v1 = np.cross(grad, seed)
    v1 /= np.linalg.norm(v1)
    v2 = np.cross(grad, v1)
    return v1, v2


def conjugate_time_numeric(m: BergerMetric, pb: "ReducedMomentum | float", t_max: float) -> float:
    """First conjugate time along the geodesic with axis fraction ``pb``.

    Integrates the base geodesic and four level-set perturbations of the
    initial momentum (two directions, central differences with step
    1e-6), assembles the differential of the endpoint map in the chart of
    group-logarithm coordinates at the running endpoint, and locates the
    first vanishing of its determinant on a 400-point time grid.  The
    grid is offset by half a step so that samples avoid landing exactly
    on antipodal points, where the chart would degenerate.  A sign change
    is refined by bisection; a deep tangency of ``|det|`` (an even-order
    zero, which the axis geodesics produce because their conjugate points
    have multiplicity two) is refined by golden-section minimization.
    Defined for ``eta > 0``; raises NoConjugatePoint when the determinant
    neither crosses nor touches zero up to ``t_max``.
    """
    eta = m.eta()
    if eta <= 0.0:
        raise DomainError(f"conjugate times require eta > 0, got eta={eta!r}")
    if not isinstance(t_max, (int, float)) or isinstance(t_max, bool) or not t_max > 0.0:
        raise ValueError(f"t_max must be positive, got {t_max!r}")
    pbar3 = _pbar3_value(pb)
    p0 = initial_momentum(m, pbar3, 0.0)
    v1, v2 = _level_tangent_basis(m, p0)

    base = np.array([p0.p1, p0.p2, p0.p3])
    family = [base]
    for v in (v1, v2):
        for sign in (1.0, -1.0):
            p = base + sign * _CONJ_DELTA * v
            h = _hamiltonian(m.i1, m.i3, p[0], p[1], p[2])
            family.append(p / math.sqrt(2.0 * h))  # back onto the level set

    dt = t_max / _CONJ_GRID_N
    h_step = dt / _CONJ_SUBSTEPS
    states = []
    for p in family:
        y = np.array([1.0, 0.0, 0.0, 0.0, p[0], p[1], p[2]])
        # advance to the half-step offset, then one cell at a time
        y = _rk4(y, 1.0 / m.i1, 1.0 / m.i3, (0.5 * dt) / (_CONJ_SUBSTEPS // 2 + 1),
                 _CONJ_SUBSTEPS // 2 + 1)
        snaps = [y]
        for _ in range(_CONJ_GRID_N - 1):
            y = _rk4(y, 1.0 / m.i1, 1.0 / m.i3, h_step, _CONJ_SUBSTEPS)
            snaps.append(y)
        states.append(snaps)

    def det_from(rows: list) -> float:
        base_row = rows[0]
        omega = np.array([base_row[4] / m.i1, base_row[5] / m.i1, base_row[6] / m.i3])
        c1 = (_rel_log(base_row, rows[1]) - _rel_log(base_row, rows[2])) / (2.0 * _CONJ_DELTA)
        c2 = (_rel_log(base_row, rows[3]) - _rel_log(base_row, rows[4])) / (2.0 * _CONJ_DELTA)
        return float(np.linalg.det(np.column_stack((omega, c1, c2))))

    times = [(k + 0.5) * dt for k in range(_CONJ_GRID_N)]
    dets = [det_from([states[i][k] for i in range(5)]) for k in range(_CONJ_GRID_N)]
    tol = 1e-6 * t_max

    def det_at(t: float, idx: int) -> float:
        span = t - times[idx]
        if span <= 0.0:
            return dets[idx]
        n = max(1, math.ceil(span / h_step))
        rows = [_rk4(states[i][idx], 1.0 / m.i1, 1.0 / m.i3, span / n, n) for i in range(5)]
        return det_from(rows)

    def refine_crossing(k: int) -> float:
        fa_sign = dets[k - 1] > 0.0
        lo, hi = times[k - 1], times[k]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            fm = det_at(mid, k - 1)
            if fm == 0.0:
                return mid
            if (fm > 0.0) == fa_sign:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def refine_tangency(j: int) -> "Optional[float]":
        # |det| has a strict local minimum at grid index j without a sign
        # change, the signature of an even-order zero (symmetric geodesics
        # carry conjugate points of multiplicity two).  Minimize |det| in
        # the surrounding cells; accept when the dip is orders of
        # magnitude below the shoulders, reject shallow benign minima.
        lo, hi = times[j - 1], times[j + 1]
        inv = 0.5 * (math.sqrt(5.0) - 1.0)
        x1 = hi - inv * (hi - lo)
        x2 = lo + inv * (hi - lo)
        g1 = abs(det_at(x1, j - 1))
        g2 = abs(det_at(x2, j - 1))
        while hi - lo > tol:
            if g1 <= g2:
                hi, x2, g2 = x2, x1, g1
                x1 = hi - inv * (hi - lo)
                g1 = abs(det_at(x1, j - 1))
            else:
                lo, x1, g1 = x1, x2, g2
                x2 = lo + inv * (hi - lo)
                g2 = abs(det_at(x2, j - 1))
        t_star = 0.5 * (lo + hi)
        shoulder = max(abs(dets[j - 1]), abs(dets[j + 1]))
        if abs(det_at(t_star, j - 1)) <= 1e-4 * shoulder:
            return t_star
        return None

    for k in range(1, _CONJ_GRID_N):
        if dets[k] == 0.0:
            return times[k]
        if (dets[k] > 0.0) != (dets[k - 1] > 0.0):
            return refine_crossing(k)
        if k >= 2 and abs(dets[k - 1]) < abs(dets[k - 2]) and abs(dets[k - 1]) < abs(dets[k]):
            t_star = refine_tangency(k - 1)
            if t_star is not None:
                return t_star
    raise NoConjugatePoint(f"determinant kept its sign on (0, {t_max}]")


def _r2_seed(k: int) -> "tuple[float, float]":
    # R2 low-discrepancy sequence over the (pbar3, phi) rectangle
    g = 1.324717957244746
    u = (0.5 + (k + 1) / g) % 1.0
    v = (0.5 + (k + 1) / (g * g)) % 1.0
    return 2.0 * u - 1.0, 2.0 * math.pi * v


def shorter_path_search(
    m: BergerMetric, p0: Momentum, t: float, attempts: int = 12
) -> Optional[ShorterPath]:
    """Look for a geodesic that reaches ``exp_map(m, p0, t)`` strictly earlier.

    Runs damped least-squares shooting on the endpoint mismatch over
    ``(pbar3, phi, arrival_time)`` from ``attempts`` deterministic
    low-discrepancy starts, each with the arrival time initialized at
    ``0.95*t``.  A solve counts when the endpoint matches to 1e-7 and the
    arrival undercuts ``t`` by more than 1e-4.  Returns the hit with the
    smallest arrival time (ties broken by seed order), or None.  Before
    the cut time of ``p0`` the search comes up empty; past it, it finds
    the competing geodesic.
    """
    if not isinstance(attempts, int) or isinstance(attempts, bool) or attempts < 10:
        raise ValueError(f"attempts must be an integer >= 10, got {attempts!r}")
    if not isinstance(t, (int, float)) or isinstance(t, bool) or not t > 0.0:
        raise ValueError(f"t must be positive, got {t!r}")
    _check_level(m, p0)

    a1, a3 = 1.0 / m.i1, 1.0 / m.i3
    n_steps = _SHOOT_STEPS
    target = _rk4(_state7(p0), a1, a3, t / n_steps, n_steps)[:4]

    t_lo, t_hi = 0.02 * t, 1.2 * t

    def endpoint(x: np.ndarray) -> np.ndarray:
        p = initial_momentum(m, x[0], x[1])
        y = _rk4(_state7(p), a1, a3, x[2] / n_steps, n_steps)
        return y[:4]

    def residual(x: np.ndarray) -> np.ndarray:
        return endpoint(x) - target

    def clamp(x: np.ndarray) -> np.ndarray:
        return np.array([
            min(1.0, max(-1.0, x[0])),
            x[1],
            min(t_hi, max(t_lo, x[2])),
        ])

    best: Optional[ShorterPath] = None
    for k in range(attempts):
        pb_seed, phi_seed = _r2_seed(k)
        x = np.array([pb_seed, phi_seed, 0.95 * t])
        r = residual(x)
        cost = float(r @ r)
        lam = 1e-3
        for _ in range(30):
            if math.sqrt(cost) < _SHOOT_RESIDUAL:
                break
            jac = np.empty((4, 3))
            for j in range(3):
                d = 1e-6 * (max(t, 1.0) if j == 2 else 1.0)
                if j == 0 and x[0] + d > 1.0:
                    d = -d
                xp = x.copy()
                xp[j] += d
                jac[:, j] = (residual(clamp(xp)) - r) / d
            a_mat = jac.T @ jac
            g_vec = jac.T @ r
            accepted = False
            for _ in range(8):
                try:
                    delta = np.linalg.solve(a_mat + lam * np.eye(3), -g_vec)
                except np.linalg.LinAlgError:
                    lam *= 4.0
                    continue
                x_try = clamp(x + delta)
                r_try = residual(x_try)
                cost_try = float(r_try @ r_try)
                if cost_try < cost:
                    x, r, cost = x_try, r_try, cost_try
                    lam = max(lam * 0.3, 1e-12)
                    accepted = True
                    break
                lam *= 4.0
            if not accepted or lam > 1e10:
                break
        if math.sqrt(cost) < _SHOOT_RESIDUAL and x[2] < t - _SHOOT_MARGIN:
            if best is None or x[2] < best.arrival_time:
                best = ShorterPath(
                    momentum=initial_momentum(m, x[0], x[1]),
                    arrival_time=float(x[2]),
                )
    return best

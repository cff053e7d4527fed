"""Numerical side of the construction: the explicit closed 2-form near a
signed zero circle, its compatible almost complex structure and metric, and
the two-parameter profile map whose immersion property drives everything.

Conventions.  The cartesian chart is (T, x, y, lam) with 2-form components
in the ordered basis

    dT^dx, dT^dy, dT^dlam, dx^dy, dx^dlam, dy^dlam.

The cylindrical chart is (t, rho, mu, lam) with rho >= 0 and 2-form basis

    dt^drho, dt^dmu, dt^dlam, drho^dmu, drho^dlam, dmu^dlam.

All fields are independent of lam (and of mu in the cylindrical chart); the
angles enter only through the form bases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .spinc_planner import CirclePlan, Clause, ConstraintReport

CARTESIAN = "cartesian"
CYLINDRICAL = "cylindrical"

# index pairs (a, b), a < b, matching the ordered 2-form bases above, with
# coordinates numbered 0..3 in chart order
_BASIS_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChartPoint:
    """A point in one of the two charts.

    cartesian: coords = (T, x, y, lam).  cylindrical: coords = (t, rho, mu,
    lam) with rho >= 0.
    """

    chart: str
    coords: tuple[float, float, float, float]

    def __post_init__(self):
        if self.chart not in (CARTESIAN, CYLINDRICAL):
            raise ValueError(f"unknown chart {self.chart!r}")
        coords = tuple(float(v) for v in self.coords)
        if len(coords) != 4:
            raise ValueError("a chart point has four coordinates")
        if self.chart == CYLINDRICAL and coords[1] < 0:
            raise ValueError("rho must be non-negative")
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True)
class TwoForm:
    """Six components in the ordered 2-form basis of the tagged chart."""

    components: tuple[float, ...]
    basis: str = CARTESIAN

    def __post_init__(self):
        comps = tuple(float(v) for v in self.components)
        if len(comps) != 6:
            raise ValueError("a 2-form has six components")
        if self.basis not in (CARTESIAN, CYLINDRICAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "components", comps)

    def as_matrix(self) -> np.ndarray:
        W = np.zeros((4, 4))
        for c, (a, b) in zip(self.components, _BASIS_PAIRS):
            W[a, b] = c
            W[b, a] = -c
        return W

    def __add__(self, other: "TwoForm") -> "TwoForm":
        if self.basis != other.basis:
            raise ValueError("cannot add forms in different bases")
        return TwoForm(
            tuple(a + b for a, b in zip(self.components, other.components)),
            self.basis,
        )

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        if self.basis != other.basis:
            raise ValueError("cannot subtract forms in different bases")
        return TwoForm(
            tuple(a - b for a, b in zip(self.components, other.components)),
            self.basis,
        )

    def scaled(self, c: float) -> "TwoForm":
        return TwoForm(tuple(c * v for v in self.components), self.basis)


@dataclass(frozen=True)
class Metric4:
    """Symmetric 4x4 metric; here always a conformal multiple of the identity."""

    matrix: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        M = tuple(tuple(float(v) for v in row) for row in self.matrix)
        if len(M) != 4 or any(len(row) != 4 for row in M):
            raise ValueError("metric must be 4x4")
        for i in range(4):
            for j in range(i):
                if abs(M[i][j] - M[j][i]) > 1e-14:
                    raise ValueError("metric must be symmetric")
        object.__setattr__(self, "matrix", M)

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix)

    def is_positive_definite(self) -> bool:
        return bool(np.all(np.linalg.eigvalsh(self.as_array()) > 0))


# ---------------------------------------------------------------------------
# smooth interpolation primitives
# ---------------------------------------------------------------------------


def smooth_step(u):
    """C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly increasing
    in between, flat to all orders at both ends."""
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(u > 0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0)
        b = np.where(u < 1, np.exp(-1.0 / np.maximum(1.0 - u, 1e-300)), 0.0)
    return a / (a + b)


def smooth_step_d(u):
    """Derivative of smooth_step."""
    u = np.asarray(u, dtype=float)
    inside = (u > 0) & (u < 1)
    uc = np.clip(u, 1e-12, 1 - 1e-12)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.exp(-1.0 / uc)
        b = np.exp(-1.0 / (1.0 - uc))
        da = a / uc**2
        db = -b / (1.0 - uc) ** 2
        val = (da * b - a * db) / (a + b) ** 2
    return np.where(inside, val, 0.0)


def smooth_bump(u):
    """C-infinity bump on (0,1), peak value 1 at u = 1/2, flat at the ends."""
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        val = np.where(
            (u > 0) & (u < 1),
            np.exp(-1.0 / np.maximum(u * (1.0 - u), 1e-300)),
            0.0,
        )
    return val * math.e**4


# ---------------------------------------------------------------------------
# the profile curve
# ---------------------------------------------------------------------------

_NQUAD = 64
_QX, _QW = np.polynomial.legendre.leggauss(_NQUAD)


@dataclass(frozen=True)
class ProfileCurve:
    """The assembled two-parameter profile phi(t, rho) = (g, f).

    Zone layout in t: standard symplectization wall [0, T0], an engineered
    blend [T0, T1], the fold formula [T1, T2], a polar rotation [T2, T3]
    sweeping the image left-handedly by pi, and the twisted wall [T3, 1].
    In rho: the fold/blend data below RB0, a polar interpolation on
    [RB0, RB1], and the standard symplectization above RB1.  The fold
    formula (rho - (t-1/2)^2 + 1 + delta, -2 rho (t-1/2)) holds verbatim on
    [T1, T2] x [0, RB0], which contains the declared fold disk of radius
    fold_radius around (1/2, 0).
    """

    eps: float = 1.0
    delta: float = 0.2

    T0: float = field(default=0.05, init=False)
    T1: float = field(default=0.4, init=False)
    T2: float = field(default=0.6, init=False)
    T3: float = field(default=0.95, init=False)

    def __post_init__(self):
        if self.eps <= 0 or self.delta <= 0:
            raise ValueError("eps and delta must be positive")
        object.__setattr__(self, "rho_max", self.eps**2 / 2.0)
        object.__setattr__(self, "RB0", 0.24 * self.rho_max)
        object.__setattr__(self, "RB1", 0.7 * self.rho_max)
        object.__setattr__(self, "kappa", 0.5 / self.rho_max)
        object.__setattr__(self, "fold_radius", min(0.1, self.RB0))
        object.__setattr__(self, "c_left", self._solve_left_rate())

    # -- the monotone spine on the left blend zone --------------------------

    def q(self, t):
        return 1.0 + self.delta - (np.asarray(t, dtype=float) - 0.5) ** 2

    def _wL(self, t):
        return smooth_step((np.asarray(t, dtype=float) - self.T0) / (self.T1 - self.T0))

    def _spine_rate(self, t, c):
        w = self._wL(t)
        base = (1 - w) * np.exp(t) + w * (-2.0) * (t - 0.5)
        return base * np.exp(c * smooth_bump((t - self.T0) / (self.T1 - self.T0)))

    def _solve_left_rate(self) -> float:
        """Bump amplitude making the spine integral land exactly on q(T1)."""
        x = 0.5 * (self.T1 - self.T0) * _QX + 0.5 * (self.T0 + self.T1)
        target = self.q(self.T1) - math.exp(self.T0)
        lo, hi = -30.0, 30.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            val = 0.5 * (self.T1 - self.T0) * np.sum(_QW * self._spine_rate(x, mid))
            if val > target:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def _spine_left(self, t):
        t = np.asarray(t, dtype=float)
        tc = np.clip(t, self.T0, self.T1)
        x = 0.5 * (tc[..., None] - self.T0) * _QX + 0.5 * (tc[..., None] + self.T0)
        rate = self._spine_rate(x, self.c_left)
        return math.exp(self.T0) + 0.5 * (tc - self.T0) * np.sum(_QW * rate, axis=-1)

    # -- cartesian base: wall -> blend -> fold, valid at every rho ----------

    def _base(self, t, rho):
        t = np.asarray(t, dtype=float)
        rho = np.asarray(rho, dtype=float)
        w = self._wL(t)
        A = w
        B = (1 - w) * np.exp(t) + w * (-2.0) * (t - 0.5)
        G = np.where(
            t <= self.T0,
            np.exp(t),
            np.where(t <= self.T1, self._spine_left(t), self.q(t)),
        )
        Ac = np.where(t <= self.T0, 0.0, np.where(t <= self.T1, A, 1.0))
        Bc = np.where(
            t <= self.T0, np.exp(t), np.where(t <= self.T1, B, -2.0 * (t - 0.5))
        )
        return G + rho * Ac, rho * Bc

    # -- the twisted (extra-pi) boundary profile ----------------------------

    def _sigma(self, rho):
        rho = np.asarray(rho, dtype=float)
        s = smooth_step(rho / self.RB1)
        return self.kappa * rho + (1.0 - self.kappa * rho) * s

    def _sigma_d(self, rho):
        rho = np.asarray(rho, dtype=float)
        s = smooth_step(rho / self.RB1)
        sd = smooth_step_d(rho / self.RB1) / self.RB1
        return self.kappa * (1.0 - s) + (1.0 - self.kappa * rho) * sd

    def twist_angle(self, rho):
        """Angle of the twisted profile: climbs monotonically from -pi at
        rho = 0 back to the standard angle at rho >= RB1."""
        rho = np.asarray(rho, dtype=float)
        return np.arctan2(rho, 1.0) - math.pi * (1.0 - self._sigma(rho))

    def twist_angle_d(self, rho):
        rho = np.asarray(rho, dtype=float)
        return 1.0 / (1.0 + rho**2) + math.pi * self._sigma_d(rho)

    def lutz_profile(self, rho):
        """(g1, f1): radius sqrt(1 + rho^2) at the twisted angle."""
        rho = np.asarray(rho, dtype=float)
        a = self.twist_angle(rho)
        r = np.sqrt(1.0 + rho**2)
        return r * np.cos(a), r * np.sin(a)

    def lutz_profile_d(self, rho):
        """Analytic rho-derivatives (g1', f1')."""
        rho = np.asarray(rho, dtype=float)
        a = self.twist_angle(rho)
        ad = self.twist_angle_d(rho)
        r = np.sqrt(1.0 + rho**2)
        rd = rho / r
        return (
            rd * np.cos(a) - r * ad * np.sin(a),
            rd * np.sin(a) + r * ad * np.cos(a),
        )

    # -- the assembled map --------------------------------------------------

    def phi(self, t, rho):
        """Evaluate phi = (g, f); accepts scalars or numpy arrays."""
        t = np.asarray(t, dtype=float)
        rho = np.asarray(rho, dtype=float)
        bu, bv = self._base(t, rho)
        lam_base = 0.5 * np.log(bu * bu + bv * bv)
        th_base = np.arctan2(bv, bu)
        s = smooth_step((rho - self.RB0) / (self.RB1 - self.RB0))
        th_std = np.arctan2(rho, 1.0)
        lam_std = t + 0.5 * np.log1p(rho**2)
        lam_mid = (1 - s) * lam_base + s * lam_std
        th_mid = (1 - s) * th_base + s * th_std
        w = smooth_step((t - self.T2) / (self.T3 - self.T2))
        th_wall = self.twist_angle(rho)
        lam = (1 - w) * lam_mid + w * lam_std
        th = (1 - w) * th_mid + w * th_wall
        radius = np.exp(lam)
        pu, pv = radius * np.cos(th), radius * np.sin(th)
        # exact branches (values agree with the blends, which are flat there;
        # returning the closed forms keeps the walls and the fold zone exact);
        # the fold formula is spelled out verbatim so it is exact to the bit
        bu = np.where(t >= self.T1, rho - (t - 0.5) ** 2 + 1 + self.delta, bu)
        g1, f1 = self.lutz_profile(rho)
        u = np.where(
            t <= self.T0,
            np.exp(t),
            np.where(
                rho >= self.RB1,
                np.exp(t),
                np.where(
                    t >= self.T3,
                    np.exp(t) * g1,
                    np.where((t <= self.T2) & (rho <= self.RB0), bu, pu),
                ),
            ),
        )
        v = np.where(
            t <= self.T0,
            np.exp(t) * rho,
            np.where(
                rho >= self.RB1,
                np.exp(t) * rho,
                np.where(
                    t >= self.T3,
                    np.exp(t) * f1,
                    np.where((t <= self.T2) & (rho <= self.RB0), bv, pv),
                ),
            ),
        )
        return u, v

    def phi_derivs(self, t, rho, h: float = 1e-6):
        """(g_t, g_rho, f_t, f_rho): analytic on the exact zones, central
        differences across the blend zones."""
        t = np.asarray(t, dtype=float)
        rho = np.asarray(rho, dtype=float)
        tc = np.clip(t, h, 1.0 - h)
        rc = np.clip(rho, h, self.rho_max - h)
        up, vp = self.phi(tc + h, rc)
        um, vm = self.phi(tc - h, rc)
        ur, vr = self.phi(tc, rc + h)
        ul, vl = self.phi(tc, rc - h)
        gt = (up - um) / (2 * h)
        ft = (vp - vm) / (2 * h)
        gr = (ur - ul) / (2 * h)
        fr = (vr - vl) / (2 * h)
        # analytic overrides
        g1, f1 = self.lutz_profile(rho)
        g1d, f1d = self.lutz_profile_d(rho)
        zones = [
            # standard wall and outer band: phi = e^t (1, rho)
            (
                (t <= self.T0) | (rho >= self.RB1),
                np.exp(t), np.zeros_like(t) + 0.0 * rho,
                np.exp(t) * rho, np.exp(t) + 0.0 * rho,
            ),
            # twisted wall: phi = e^t (g1, f1)
            (
                (t >= self.T3) & (rho < self.RB1),
                np.exp(t) * g1, np.exp(t) * g1d,
                np.exp(t) * f1, np.exp(t) * f1d,
            ),
            # fold zone: phi = (rho - (t-1/2)^2 + 1 + delta, -2 rho (t-1/2))
            (
                (self.T1 <= t) & (t <= self.T2) & (rho <= self.RB0),
                -2.0 * (t - 0.5), np.ones_like(t) + 0.0 * rho,
                -2.0 * rho, -2.0 * (t - 0.5) + 0.0 * rho,
            ),
        ]
        for mask, zgt, zgr, zft, zfr in zones:
            gt = np.where(mask, zgt, gt)
            gr = np.where(mask, zgr, gr)
            ft = np.where(mask, zft, ft)
            fr = np.where(mask, zfr, fr)
        return gt, gr, ft, fr


# ---------------------------------------------------------------------------
# profiles and their contact positivity
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _curve_for(eps: float) -> ProfileCurve:
    return ProfileCurve(eps=eps)


def contact_profile(kind: str, rho: float, eps: float) -> tuple[float, float]:
    """The boundary profiles, returned as (f, g).

    standard: (rho, 1).  lutz: the twisted profile, starting at (0, -1) and
    agreeing with the standard profile for rho near eps^2/2.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not 0 <= rho <= eps**2 / 2:
        raise ValueError(f"rho = {rho} outside [0, {eps ** 2 / 2}]")
    if kind == "standard":
        return (float(rho), 1.0)
    if kind == "lutz":
        P = _curve_for(eps)
        g1, f1 = P.lutz_profile(np.asarray(rho, dtype=float))
        return (float(f1), float(g1))
    raise ValueError(f"unknown profile kind {kind!r}")


def contact_positivity(
    profile: Callable[[float], tuple[float, float]],
    rho_max: float,
    samples: int = 10000,
    h: float = 1e-6,
) -> float:
    """Minimum of g f' - f g' over a uniform grid, by central differences."""
    rho = np.linspace(0.0, rho_max, samples)
    rc = np.clip(rho, h, rho_max - h)
    fp = np.array([profile(v) for v in rc + h])
    fm = np.array([profile(v) for v in rc - h])
    f0 = np.array([profile(v) for v in rc])
    df = (fp[:, 0] - fm[:, 0]) / (2 * h)
    dg = (fp[:, 1] - fm[:, 1]) / (2 * h)
    val = f0[:, 1] * df - f0[:, 0] * dg
    return float(val.min())


# ---------------------------------------------------------------------------
# phi evaluation and the immersion check
# ---------------------------------------------------------------------------


def phi(t: float, rho: float, P: ProfileCurve) -> tuple[float, float]:
    """Evaluate the assembled profile map at one point."""
    if not 0 <= t <= 1 or not 0 <= rho <= P.rho_max:
        raise ValueError(f"(t, rho) = ({t}, {rho}) outside [0,1] x [0, {P.rho_max}]")
    u, v = P.phi(np.asarray(t, dtype=float), np.asarray(rho, dtype=float))
    return (float(u), float(v))


def phi_immersion_check(
    P: ProfileCurve,
    grid: int = 200,
    exclusion: float = 0.05,
    h: float = 1e-5,
) -> float:
    """Minimum Jacobian determinant of phi over the grid, excluding a disk
    around the fold point (1/2, 0)."""
    if exclusion <= 0:
        raise ValueError("exclusion radius must be positive")
    t = np.linspace(0.0, 1.0, grid)
    r = np.linspace(0.0, P.rho_max, grid)
    T, R = np.meshgrid(t, r, indexing="ij")
    Tc = np.clip(T, h, 1.0 - h)
    Rc = np.clip(R, h, P.rho_max - h)
    up, vp = P.phi(Tc + h, Rc)
    um, vm = P.phi(Tc - h, Rc)
    ur, vr = P.phi(Tc, Rc + h)
    ul, vl = P.phi(Tc, Rc - h)
    det = ((up - um) * (vr - vl) - (ur - ul) * (vp - vm)) / (4.0 * h * h)
    mask = (T - 0.5) ** 2 + R**2 > exclusion**2
    return float(np.where(mask, det, np.inf).min())


# ---------------------------------------------------------------------------
# the 2-form of the model and its chart presentations
# ---------------------------------------------------------------------------


def lutz_form(pt: ChartPoint, P: ProfileCurve) -> TwoForm:
    """d(alpha) for alpha = f dt-free primitive f dmu + g dlam, in the
    cylindrical basis: f_t dt^dmu + f_rho drho^dmu + g_t dt^dlam +
    g_rho drho^dlam."""
    if pt.chart != CYLINDRICAL:
        raise ValueError("lutz_form expects a cylindrical chart point")
    t, rho = pt.coords[0], pt.coords[1]
    if not 0 <= t <= 1 or not 0 <= rho <= P.rho_max:
        raise ValueError("point outside the model domain")
    gt, gr, ft, fr = P.phi_derivs(np.asarray(t, dtype=float), np.asarray(rho, dtype=float))
    return TwoForm(
        (0.0, float(ft), float(gt), float(fr), float(gr), 0.0), CYLINDRICAL
    )


def lutz_form_cartesian(pt: ChartPoint, P: ProfileCurve) -> TwoForm:
    """The same form pushed to the cartesian basis (T, x, y, lam) via
    rho = (x^2 + y^2)/2, mu = polar angle; smooth across rho = 0 because the
    singular ratio f_t / (2 rho) has a finite limit there."""
    if pt.chart == CYLINDRICAL:
        t, rho, mu = pt.coords[0], pt.coords[1], pt.coords[2]
        r = math.sqrt(2.0 * rho)
        x, y = r * math.cos(mu), r * math.sin(mu)
    else:
        T, x, y = pt.coords[0], pt.coords[1], pt.coords[2]
        t, rho = T + 0.5, (x * x + y * y) / 2.0
    gt, gr, ft, fr = P.phi_derivs(np.asarray(t, dtype=float), np.asarray(rho, dtype=float))
    gt, gr, ft, fr = float(gt), float(gr), float(ft), float(fr)
    if rho > 1e-8:
        ratio = ft / (2.0 * rho)
    else:
        # f_t vanishes on the axis here; the limit is the rho-derivative
        h = 1e-6
        _, _, ft_h, _ = P.phi_derivs(np.asarray(t, dtype=float), np.asarray(h, dtype=float))
        ratio = float(ft_h) / (2.0 * h)
    return TwoForm(
        (
            -ratio * y,           # dT^dx
            ratio * x,            # dT^dy
            gt,                   # dT^dlam
            fr,                   # dx^dy
            gr * x,               # dx^dlam
            gr * y,               # dy^dlam
        ),
        CARTESIAN,
    )


def omega_near_Z(T: float, x: float, y: float) -> TwoForm:
    """y A - x B - 2T C with A = dT^dx + dy^dlam, B = dT^dy - dx^dlam,
    C = dx^dy + dT^dlam."""
    return TwoForm(
        (y, -x, -2.0 * T, -2.0 * T, x, y),
        CARTESIAN,
    )


FORM_A = TwoForm((1.0, 0.0, 0.0, 0.0, 0.0, 1.0), CARTESIAN)
FORM_B = TwoForm((0.0, 1.0, 0.0, 0.0, -1.0, 0.0), CARTESIAN)
FORM_C = TwoForm((0.0, 0.0, 1.0, 1.0, 0.0, 0.0), CARTESIAN)


def wedge_square(w: TwoForm) -> float:
    """Coefficient of the volume form in w ^ w."""
    c = w.components
    return 2.0 * (c[0] * c[5] - c[1] * c[4] + c[2] * c[3])


# ---------------------------------------------------------------------------
# almost complex structure, metric, Hodge star
# ---------------------------------------------------------------------------


def J_near(T: float, x: float, y: float) -> np.ndarray:
    """(1/R) Q with R = sqrt(4T^2 + x^2 + y^2); undefined on the circle."""
    R = math.sqrt(4.0 * T * T + x * x + y * y)
    if R == 0.0:
        raise ValueError("J is undefined on the zero circle (R = 0)")
    Q = np.array(
        [
            [0.0, -y, x, 2.0 * T],
            [y, 0.0, 2.0 * T, -x],
            [-x, -2.0 * T, 0.0, -y],
            [-2.0 * T, x, y, 0.0],
        ]
    )
    return Q / R


def metric_g(T: float, x: float, y: float, eps_prime: float) -> Metric4:
    """Conformal metric f(R) g0 with f = 1 for R <= eps'/2 and f = R for
    R >= eps', smoothly interpolated."""
    if eps_prime <= 0:
        raise ValueError("eps_prime must be positive")
    R = math.sqrt(4.0 * T * T + x * x + y * y)
    s = float(smooth_step((R - eps_prime / 2.0) / (eps_prime / 2.0)))
    factor = (1.0 - s) + s * R
    return Metric4(tuple(tuple(factor if i == j else 0.0 for j in range(4)) for i in range(4)))


_LEVI_CIVITA = np.zeros((4, 4, 4, 4))
for _perm, _sign in (
    ((0, 1, 2, 3), 1), ((0, 1, 3, 2), -1), ((0, 2, 1, 3), -1), ((0, 2, 3, 1), 1),
    ((0, 3, 1, 2), 1), ((0, 3, 2, 1), -1), ((1, 0, 2, 3), -1), ((1, 0, 3, 2), 1),
    ((1, 2, 0, 3), 1), ((1, 2, 3, 0), -1), ((1, 3, 0, 2), -1), ((1, 3, 2, 0), 1),
    ((2, 0, 1, 3), 1), ((2, 0, 3, 1), -1), ((2, 1, 0, 3), -1), ((2, 1, 3, 0), 1),
    ((2, 3, 0, 1), 1), ((2, 3, 1, 0), -1), ((3, 0, 1, 2), -1), ((3, 0, 2, 1), 1),
    ((3, 1, 0, 2), 1), ((3, 1, 2, 0), -1), ((3, 2, 0, 1), -1), ((3, 2, 1, 0), 1),
):
    _LEVI_CIVITA[_perm] = _sign


def hodge_star_2form(g: Metric4, orientation: int, w: TwoForm) -> TwoForm:
    """Hodge star on 2-forms for the given metric and orientation (+1 is the
    chart orientation).  Conformal rescaling of the metric leaves this star
    unchanged, so any conformal multiple of g0 gives the g0 star."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    G = g.as_array()
    detg = np.linalg.det(G)
    if detg <= 0:
        raise ValueError("degenerate or indefinite metric")
    Ginv = np.linalg.inv(G)
    W = w.as_matrix()
    W_up = Ginv @ W @ Ginv
    star = 0.5 * math.sqrt(detg) * np.einsum("ab,abcd->cd", W_up, _LEVI_CIVITA)
    star = orientation * star
    return TwoForm(tuple(star[a, b] for (a, b) in _BASIS_PAIRS), w.basis)


def honda_form(T: float, x: float, y: float) -> TwoForm:
    """dlam ^ dh + star3(dh) for h = -x^2/2 - y^2/2 + T^2, with the
    3-dimensional star taken for dy^2 + dx^2 + dT^2 and orientation (y, x, T)."""
    hT, hx, hy = 2.0 * T, -x, -y
    # dlam ^ dh = -hT dT^dlam - hx dx^dlam - hy dy^dlam  ... sign: dlam^dT = -dT^dlam
    part1 = TwoForm((0.0, 0.0, -hT, 0.0, -hx, -hy), CARTESIAN)
    # oriented orthonormal coframe (dy, dx, dT): star dy = dx^dT,
    # star dx = dT^dy, star dT = dy^dx
    # dh = hT dT + hx dx + hy dy
    # star3 dh = hT dy^dx + hx dT^dy + hy dx^dT
    #          = -hT dx^dy + hx dT^dy - hy dT^dx  (wait: dx^dT = -dT^dx)
    part2 = TwoForm((-hy, hx, 0.0, -hT, 0.0, 0.0), CARTESIAN)
    return part1 + part2


# ---------------------------------------------------------------------------
# numerical exterior derivative and transversality
# ---------------------------------------------------------------------------

_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
_PAIR_INDEX = {p: i for i, p in enumerate(_BASIS_PAIRS)}


def d_omega_numeric(
    field_fn: Callable[[tuple[float, float, float, float]], TwoForm],
    pt: ChartPoint,
    h: float,
) -> tuple[float, float, float, float]:
    """Central-difference exterior derivative: the four components of dw on
    the coordinate triples (012), (013), (023), (123)."""
    if h <= 0:
        raise ValueError("step must be positive")
    base = list(pt.coords)

    def comp(coords, a, b):
        w = field_fn(tuple(coords))
        return w.components[_PAIR_INDEX[(a, b)]]

    def partial(a, bc):
        plus = list(base)
        minus = list(base)
        plus[a] += h
        minus[a] -= h
        return (comp(plus, *bc) - comp(minus, *bc)) / (2.0 * h)

    out = []
    for (a, b, c) in _TRIPLES:
        val = partial(a, (b, c)) - partial(b, (a, c)) + partial(c, (a, b))
        out.append(val)
    return tuple(out)


def coefficient_jacobian() -> np.ndarray:
    """Jacobian of the coefficient map (T, x, y) -> (y, -x, -2T)."""
    return np.array([[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [-2.0, 0.0, 0.0]])


def zero_transversality(pt: ChartPoint | None = None) -> int:
    """Rank of the coefficient Jacobian; constant, so the point is ignored."""
    return int(np.linalg.matrix_rank(coefficient_jacobian()))


# ---------------------------------------------------------------------------
# level schedules
# ---------------------------------------------------------------------------


def circle_levels(plan: CirclePlan) -> tuple[float, ...]:
    """Midpoints of the level intervals: where the circles actually sit."""
    return tuple(
        0.5 * (a + b) for a, b in zip(plan.levels, plan.levels[1:])
    )


def level_schedule_check(plan: CirclePlan) -> ConstraintReport:
    """One circle per level interval, each at the interval midpoint, with
    the prescribed linking sign."""
    clauses: list[Clause] = []
    mids = circle_levels(plan)
    for i, (sign, mid) in enumerate(zip(plan.signs, mids)):
        lo, hi = plan.levels[i], plan.levels[i + 1]
        clauses.append(
            Clause(
                f"circle {i + 1} at midpoint of ({lo:.6g}, {hi:.6g})",
                lo < mid < hi and abs(mid - 0.5 * (lo + hi)) < 1e-12,
                mid,
                0.5 * (lo + hi),
            )
        )
        clauses.append(Clause(f"circle {i + 1} linking sign", sign in (-1, 1), sign))
    return ConstraintReport(clauses=tuple(clauses))

"""Exact planning layer: adjunction-style constraints, the signed circle
count d, circle plans with level schedules, genus stabilization bookkeeping,
cocycle selection mod 2, torsion adjustment, and plumbing/configuration
builders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .topo_core import (
    ChainComplex,
    IntegerCochain,
    SymmetricForm,
    coboundary_matrix,
    pairing,
    is_characteristic,
    solve_mod2,
)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceSpec:
    """An embedded surface given by genus and its class in a fixed H2 basis."""

    genus: int
    cls: tuple[int, ...]
    self_intersection: int
    uses_up_3handles: bool = False

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        object.__setattr__(self, "cls", tuple(int(v) for v in self.cls))

    def check_square(self, Q: SymmetricForm) -> None:
        sq = pairing(self.cls, self.cls, Q)
        if sq != self.self_intersection:
            raise ValueError(
                f"declared self-intersection {self.self_intersection} "
                f"disagrees with class pairing {sq}"
            )


@dataclass(frozen=True)
class ConfigurationGraph:
    """Surfaces meeting pairwise transversely and positively.

    Each edge is one positive transverse intersection point between the two
    incident surfaces.
    """

    vertices: tuple[SurfaceSpec, ...]
    edges: tuple[tuple[int, int], ...] = ()
    side_conditions: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        norm = []
        for (i, j) in self.edges:
            if i == j:
                raise ValueError("edges must join distinct surfaces")
            norm.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "side_conditions", tuple(self.side_conditions))

    def intersection(self, i: int, j: int) -> int:
        if i == j:
            return self.vertices[i].self_intersection
        return sum(1 for e in self.edges if e == (min(i, j), max(i, j)))


@dataclass(frozen=True)
class CirclePlan:
    """Ordered signed circles with a strictly increasing level schedule."""

    signs: tuple[int, ...]
    levels: tuple[float, ...]
    d: int

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "levels", tuple(float(a) for a in self.levels))
        if signs:
            if any(s not in (-1, 1) for s in signs):
                raise ValueError("circle signs must be +1 or -1")
            if signs[0] != -1:
                raise ValueError("first circle sign must be -1")
            if sum(signs) != self.d:
                raise ValueError("circle signs must sum to d")
            if len(self.levels) != len(signs) + 1:
                raise ValueError("need one more level than circles")
            if abs(self.levels[0] - 0.9) > 1e-15 or abs(self.levels[-1] - 1.0) > 1e-15:
                raise ValueError("levels must run from 0.9 to 1.0")
            if any(a >= b for a, b in zip(self.levels, self.levels[1:])):
                raise ValueError("levels must be strictly increasing")


@dataclass(frozen=True)
class HandleCounts:
    """Handle counts per index with 2-handle framings and the distinguished
    2-handle/1-handle pair used by the torsion adjustment."""

    counts: tuple[int, int, int, int, int]
    framings: tuple[int, ...] = ()
    distinguished_two_handle: Optional[int] = None
    distinguished_one_handle: Optional[int] = None

    def __post_init__(self):
        counts = tuple(int(n) for n in self.counts)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        if any(n < 0 for n in counts):
            raise ValueError("handle counts must be non-negative")
        if (
            self.distinguished_two_handle is not None
            and not 0 <= self.distinguished_two_handle < counts[2]
        ):
            raise ValueError("distinguished 2-handle index out of range")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def adjunction_target(genus: int, self_int: int, stabilized: bool) -> int:
    """Required pairing of the characteristic class with a surface.

    The stabilized variant budgets one extra handle of genus for the surface
    the construction actually uses.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    g_eff = genus + 1 if stabilized else genus
    return 2 - 2 * g_eff + self_int


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = "" if self.lhs is None else f" ({self.lhs} vs {self.rhs})"
        return f"[{status}] {self.name}{detail}"


@dataclass(frozen=True)
class ConstraintReport:
    clauses: tuple[Clause, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.passed]


def check_spinc_constraints(
    c: Sequence[int], config: ConfigurationGraph, Q: SymmetricForm
) -> ConstraintReport:
    """Verify the pairing constraints tying the class c to a configuration.

    The first surface carries the stabilized target, later surfaces the
    unstabilized one; c must be characteristic and the configuration's own
    intersection matrix nondegenerate.
    """
    clauses: list[Clause] = []
    for idx, surf in enumerate(config.vertices):
        target = adjunction_target(surf.genus, surf.self_intersection, idx == 0)
        got = pairing(c, surf.cls, Q)
        label = "stabilized" if idx == 0 else "unstabilized"
        clauses.append(
            Clause(f"c.Sigma_{idx + 1} ({label} adjunction)", got == target, got, target)
        )
    clauses.append(Clause("c characteristic", is_characteristic(c, Q)))
    Qc = plumbing_form(config)
    clauses.append(Clause("det(Q_config) != 0", Qc.det() != 0, Qc.det(), "nonzero"))
    if len(config.vertices) == 1:
        m = config.vertices[0].self_intersection
        clauses.append(Clause("surface square positive", m > 0, m, "> 0"))
    else:
        for i in range(len(config.vertices)):
            rowsum = sum(config.intersection(i, j) for j in range(len(config.vertices)))
            clauses.append(
                Clause(f"row sum positive at surface {i + 1}", rowsum > 0, rowsum, "> 0")
            )
    return ConstraintReport(clauses=tuple(clauses))


def compute_d(c_squared: int, sigma: int, chi: int) -> int:
    """Signed count of zero circles: (c^2 - 3*sigma - 2*chi) / 4."""
    num = c_squared - 3 * sigma - 2 * chi
    if num % 4 != 0:
        raise ValueError(
            f"c^2 - 3*sigma - 2*chi = {num} is not divisible by 4; "
            "the class is not characteristic or the input is inconsistent"
        )
    return num // 4


def _uniform_levels(n: int) -> tuple[float, ...]:
    return tuple(0.9 + 0.1 * i / n for i in range(n + 1))


def plan_circles(d: int) -> CirclePlan:
    """Default sign plan for the circle count d.

    d < 0: |d| circles, all negative.  d > 0: d + 2 circles, one negative
    and the rest positive.  d = 0: a cancelling pair (-1, +1).
    """
    if d < 0:
        signs = (-1,) * (-d)
    elif d > 0:
        signs = (-1,) + (1,) * (d + 1)
    else:
        signs = (-1, 1)
    return CirclePlan(signs=signs, levels=_uniform_levels(len(signs)), d=d)


def custom_circle_plan(signs: Sequence[int]) -> CirclePlan:
    """Any sign sequence works, provided it starts with -1."""
    signs = tuple(int(s) for s in signs)
    if not signs:
        raise ValueError("need at least one circle sign")
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("circle signs must be +1 or -1")
    if signs[0] != -1:
        raise ValueError("l1 must be -1")
    return CirclePlan(signs=signs, levels=_uniform_levels(len(signs)), d=sum(signs))


def genus_reserve(g: int, l: int) -> int:
    """Minimal stabilized genus g + l, with l extra 1-handles to absorb."""
    if g < 0 or l < 0:
        raise ValueError("genus and 1-handle count must be non-negative")
    return g + l


def e_decomposition(g: int, m: int) -> HandleCounts:
    """Handle decomposition of the standard capping piece: one 0-handle,
    2g + m - 1 one-handles and m two-handles, each framed +1."""
    if m <= 0:
        raise ValueError("surface square m must be positive")
    if g < 0:
        raise ValueError("genus must be non-negative")
    return HandleCounts(
        counts=(1, 2 * g + m - 1, m, 0, 0),
        framings=(1,) * m,
    )


def stabilized_surface_genus(g: int) -> int:
    """Genus after connect-summing the surface with one standard torus."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return g + 1


def plumbing_form(config: ConfigurationGraph) -> SymmetricForm:
    """Intersection matrix of a plumbing neighborhood of the configuration."""
    k = len(config.vertices)
    M = [[config.intersection(i, j) for j in range(k)] for i in range(k)]
    return SymmetricForm(matrix=M)


def cap_corollary_config(m: int, g: int) -> ConfigurationGraph:
    """Capping configuration: the surface plus the two sphere factors of a
    punctured sphere-product, with determinant -m enforced at build time."""
    if m <= 0:
        raise ValueError("surface square must be positive")
    sigma1 = SurfaceSpec(genus=g, cls=(1, 0, 0), self_intersection=m)
    sigma2 = SurfaceSpec(genus=0, cls=(0, 1, 0), self_intersection=0)
    sigma3 = SurfaceSpec(genus=0, cls=(0, 0, 1), self_intersection=0)
    config = ConfigurationGraph(
        vertices=(sigma1, sigma2, sigma3),
        edges=((1, 2), (0, 2)),
        side_conditions=("c.Sigma_2 = 2", "c.Sigma_3 = 2"),
    )
    det = plumbing_form(config).det()
    if det != -m:
        raise AssertionError(f"capping determinant {det} != -{m}")
    return config


def noextragenus_case(config: ConfigurationGraph) -> int | str:
    """Classify a configuration into one of the three no-extra-genus cases.

    Case 1: two spheres with squares >= 2 and >= 1.  Case 2: a sphere and a
    positive-genus surface, both with positive square.  Case 3: more than two
    surfaces, the first a sphere of positive square meeting only the second,
    once.  Returns "none" when no case applies.
    """
    k = len(config.vertices)
    v = config.vertices
    if k == 2:
        if (
            v[0].genus == 0
            and v[1].genus == 0
            and v[0].self_intersection >= 2
            and v[1].self_intersection >= 1
        ):
            return 1
        if (
            v[0].genus == 0
            and v[1].genus >= 1
            and v[0].self_intersection >= 1
            and v[1].self_intersection >= 1
        ):
            return 2
    if k > 2:
        if (
            v[0].genus == 0
            and v[0].self_intersection >= 1
            and config.intersection(0, 1) == 1
            and all(config.intersection(0, i) == 0 for i in range(2, k))
        ):
            return 3
    return "none"


def choose_cocycle(
    x0: IntegerCochain, x_prime: IntegerCochain, C: ChainComplex
) -> IntegerCochain:
    """Replace x0 by a cohomologous cocycle congruent to x_prime mod 2.

    Solves the coboundary equation mod 2, lifts the solution to a 0/1
    integer cochain y, and returns x0 - (coboundary of y).  Raises when no
    mod-2 solution exists.
    """
    delta = coboundary_matrix(C, 1)  # 1-cochains -> 2-cochains
    n2 = C.cells_per_degree[2]
    if len(x0) != n2 or len(x_prime) != n2:
        raise ValueError("cochain length does not match the number of 2-cells")
    rhs = [(a - b) % 2 for a, b in zip(x0.values, x_prime.values)]
    y = solve_mod2(delta, rhs)
    if y is None:
        raise ValueError(
            "no mod-2 solution: the class and the prescribed residues are "
            "incompatible"
        )
    dy = [sum(delta[i][j] * y[j] for j in range(len(y))) for i in range(n2)]
    return IntegerCochain(values=tuple(a - b for a, b in zip(x0.values, dy)))


def torsion_adjust(
    x0: IntegerCochain,
    z: IntegerCochain,
    C: ChainComplex,
    p_plus_1: int,
    b: int,
) -> IntegerCochain:
    """Shift x0 by twice an order-2 cocycle, normalized on the distinguished
    2-cell.

    Requires the distinguished 2-cell to have boundary exactly the
    distinguished 1-cell, so subtracting z(that cell) times the coboundary of
    the dual 1-cochain zeroes z there.  Returns x0 - 2 * (normalized z).
    """
    d2 = C.boundary[2]
    n1, n2 = C.cells_per_degree[1], C.cells_per_degree[2]
    if not (0 <= p_plus_1 < n2 and 0 <= b < n1):
        raise ValueError("distinguished indices out of range")
    col = [d2[i][p_plus_1] for i in range(n1)]
    want = [1 if i == b else 0 for i in range(n1)]
    if col != want:
        raise ValueError(
            "complex lacks the distinguished pair: boundary of the "
            "distinguished 2-cell is not the distinguished 1-cell"
        )
    delta = coboundary_matrix(C, 1)
    zb = z.values[p_plus_1]
    dzb = [delta[i][b] * zb for i in range(n2)]
    z_norm = [v - w for v, w in zip(z.values, dzb)]
    assert z_norm[p_plus_1] == 0
    return IntegerCochain(values=tuple(a - 2 * v for a, v in zip(x0.values, z_norm)))

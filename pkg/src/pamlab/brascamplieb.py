"""Dimension conditions of Brascamp-Lieb data and exponent feasibility.

A datum is a family of surjective linear maps ``l_j : R^n -> R^{n_j}``
with exponents ``z_j``.  For every subspace ``V`` the exponents must
satisfy ``codim V >= sum_j z_j codim l_j(V)``.  Only the subspaces cut out
by intersecting kernels of subsets of the maps are checked; ranks are
computed exactly over the rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import InvalidInput, RankDeficientMap, WrongRegime
from .params import HurstProfile, exact
from .simplex import alphabet_constant_exact

Matrix = tuple[tuple[Fraction, ...], ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot read rational {x!r}") from exc
    return exact(x)


def as_matrix(rows) -> Matrix:
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def row_echelon(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form and pivot columns, in exact arithmetic."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return len(row_echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}`` with one free variable set to 1 per vector."""
    rows = list(rows)
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    reduced, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def matmul(a: Matrix, vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Columns ``a v`` for each ``v``, returned as rows (one per vector)."""
    return [[sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a] for v in vectors]


@dataclass(frozen=True)
class BLDatum:
    dim: int
    maps: tuple[Matrix, ...]
    exponents: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.dim < 1 or not self.maps:
            raise InvalidInput("a datum needs a positive dimension and at least one map")
        for j, a in enumerate(self.maps, 1):
            if not a or any(len(row) != self.dim for row in a):
                raise InvalidInput(f"map {j} does not act on R^{self.dim}")
            if rank(a, self.dim) != len(a):
                raise RankDeficientMap(f"map {j} is not surjective")
        if self.exponents is not None and len(self.exponents) != len(self.maps):
            raise InvalidInput("one exponent per map is required")


def make_datum(dim: int, maps, exponents=None) -> BLDatum:
    ex = None if exponents is None else tuple(to_fraction(z) for z in exponents)
    return BLDatum(int(dim), tuple(as_matrix(a) for a in maps), ex)


@dataclass(frozen=True)
class SubspaceReport:
    """One dimension inequality ``lhs >= sum_j coefficients[j] * z_j``."""

    subset: tuple[int, ...]
    dim_v: int
    lhs: int
    coefficients: tuple[int, ...]
    rhs: Fraction | None = None

    @property
    def holds(self) -> bool | None:
        return None if self.rhs is None else self.lhs >= self.rhs

    def describe(self) -> str:
        terms = []
        for j, c in enumerate(self.coefficients, 1):
            if c:
                terms.append(f"z{j}" if c == 1 else f"{c}*z{j}")
        return f"{self.lhs} >= " + (" + ".join(terms) if terms else "0")


def subspace_report(datum: BLDatum, subset: Sequence[int]) -> SubspaceReport:
    """Inequality for ``V`` = intersection of the kernels of the maps in ``subset`` (1-based)."""
    n = datum.dim
    stacked = [row for j in subset for row in datum.maps[j - 1]]
    basis = nullspace(stacked, n)
    dim_v = len(basis)
    coeffs = []
    for a in datum.maps:
        image_dim = rank(matmul(a, basis), len(a)) if basis else 0
        coeffs.append(len(a) - image_dim)
    rhs = None
    if datum.exponents is not None:
        rhs = sum((c * z for c, z in zip(coeffs, datum.exponents)), Fraction(0))
    return SubspaceReport(tuple(subset), dim_v, n - dim_v, tuple(coeffs), rhs)


def dimension_condition(datum: BLDatum) -> list[SubspaceReport]:
    """Reports for every nonempty subset of maps, smallest subsets first."""
    m = len(datum.maps)
    return [
        subspace_report(datum, subset)
        for size in range(1, m + 1)
        for subset in itertools.combinations(range(1, m + 1), size)
    ]


# ---------------------------------------------------------------------------
# the six maps of the two-step time integral, coordinates (s1, s2, r1, r2)

PAM_MAPS = (
    ((0, 0, -1, 1),),  # r2 - r1
    ((-1, 1, 0, 0),),  # s2 - s1
    ((0, 0, 0, 1),),  # r2
    ((0, 1, 0, 0),),  # s2
    ((1, 0, -1, 0),),  # s1 - r1
    ((0, 1, 0, -1),),  # s2 - r2
)


def pam_maps() -> BLDatum:
    return make_datum(4, PAM_MAPS)


def dimension_verdict(datum: BLDatum, reports: Sequence[SubspaceReport] | None = None) -> str:
    """Overall verdict of the kernel-intersection inequalities.

    ``holds``, ``fails`` or ``no exponents``.  Kernel intersections are the
    whole relevant lattice only for the six-map datum; for any other datum
    the verdict is a necessary-condition screen and carries the suffix
    ``(lattice-restricted)``.
    """
    reports = dimension_condition(datum) if reports is None else reports
    if datum.exponents is None:
        verdict = "no exponents"
    else:
        verdict = "holds" if all(r.holds for r in reports) else "fails"
    if datum.maps != pam_maps().maps:
        verdict += " (lattice-restricted)"
    return verdict


@dataclass(frozen=True)
class PamDatum:
    datum: BLDatum
    lower_bounds: tuple[float, ...]
    rho1: float
    rho2: float
    gamma: float


def build_pam_datum(profile: HurstProfile, alpha2: float) -> PamDatum:
    """Six-map datum with integrability lower bounds for one alphabet letter.

    ``alpha2`` must equal ``A`` or ``2A`` for the alphabet constant ``A``.
    The exponents of maps 1-2, 3-4 and 5-6 must exceed ``rho1``, ``rho2``
    and ``2 - 2 h0`` respectively, and none may exceed 1.
    """
    a = alphabet_constant_exact(profile)
    if a <= 0:
        raise WrongRegime("the six-map datum is built in Case I only")
    af = float(a)
    tol = 1e-12 * max(1.0, af)
    if abs(alpha2 - af) > tol and abs(alpha2 - 2 * af) > tol:
        raise InvalidInput(f"alpha2 must be A = {af!r} or 2A")
    rho1 = 0.5 * (1.5 * profile.d_star - 2 * profile.h_star)
    rho2 = rho1 - alpha2 / 2
    gamma = profile.gamma
    lower = (rho1, rho1, rho2, rho2, gamma, gamma)
    return PamDatum(pam_maps(), lower, rho1, rho2, gamma)


def _constraint_system(datum: BLDatum, lower_bounds: Sequence[float]):
    """Rows of ``G z <= h``: lower bounds, upper bound 1, dimension inequalities."""
    m = len(datum.maps)
    rows, rhs = [], []
    for j, lb in enumerate(lower_bounds):
        e = np.zeros(m)
        e[j] = -1.0
        rows.append(e)
        rhs.append(-max(float(lb), 0.0))
        e = np.zeros(m)
        e[j] = 1.0
        rows.append(e)
        rhs.append(1.0)
    for coefficients, lhs in _distinct_inequalities(datum.dim, datum.maps):
        row = np.array(coefficients, dtype=float)
        # a single-map inequality 1 >= z_j repeats the cap row
        if not any(np.array_equal(row, r) and float(lhs) == b for r, b in zip(rows, rhs)):
            rows.append(row)
            rhs.append(float(lhs))
    return np.array(rows), np.array(rhs)


@lru_cache(maxsize=64)
def _distinct_inequalities(dim: int, maps: tuple[Matrix, ...]) -> tuple:
    seen = []
    for rep in dimension_condition(BLDatum(dim, maps)):
        key = (rep.coefficients, rep.lhs)
        if any(rep.coefficients) and key not in seen:
            seen.append(key)
    return tuple(seen)


def _analytic_center(g: np.ndarray, h: np.ndarray, z: np.ndarray, iters: int = 100) -> np.ndarray:
    """Damped Newton iteration for the maximiser of ``sum log(h - G z)``."""
    for _ in range(iters):
        s = h - g @ z
        grad = g.T @ (1 / s)
        hess = g.T @ (g / s[:, None] ** 2)
        step = -np.linalg.solve(hess, grad)
        decrement = float(-grad @ step)
        if decrement < 1e-20:
            break
        t = 1.0
        gs = g @ step
        while np.any(s - t * gs <= 0):
            t *= 0.5
        phi = -np.sum(np.log(s))
        while -np.sum(np.log(s - t * gs)) > phi - 0.25 * t * decrement and t > 1e-12:
            t *= 0.5
        z = z + t * step
    return z


def find_feasible_exponents(
    datum: BLDatum, lower_bounds: Sequence[float], margin: float = 1e-9
) -> tuple[float, ...] | None:
    """Strictly feasible exponents at the analytic centre, or ``None``.

    Feasible means ``lower_j < z_j <= 1`` together with every dimension
    inequality.  The analytic centre is taken over the distinct non-trivial
    constraints.  A polytope whose largest uniform interior slack is at most
    ``margin`` counts as empty.
    """
    m = len(datum.maps)
    if len(lower_bounds) != m:
        raise InvalidInput("one lower bound per map is required")
    g, h = _constraint_system(datum, lower_bounds)
    # maximise a uniform slack t:  G z + t <= h,  t <= 1
    c = np.zeros(m + 1)
    c[-1] = -1.0
    a_ub = np.hstack([g, np.ones((len(h), 1))])
    res = linprog(c, A_ub=a_ub, b_ub=h, bounds=[(None, None)] * m + [(None, 1.0)], method="highs")
    if res.status != 0 or -res.fun <= margin:
        return None
    z = _analytic_center(g, h, res.x[:m])
    return tuple(float(x) for x in z)


def pam_feasible(profile: HurstProfile) -> dict[str, tuple[float, ...] | None]:
    """Feasible exponents for each alphabet letter ``A`` and ``2A``."""
    a = float(alphabet_constant_exact(profile))
    out = {}
    for name, alpha2 in (("A", a), ("2A", 2 * a)):
        pd = build_pam_datum(profile, alpha2)
        out[name] = find_feasible_exponents(pd.datum, pd.lower_bounds)
    return out


# ---------------------------------------------------------------------------
# text format

def parse_datum(text: str) -> tuple[BLDatum, tuple[float, ...] | None]:
    """Read a datum file.

    ::

        dim 4
        map 1
        0 0 -1 1
        map 1
        -1 1 0 0
        exponents 1/2 1/2
        lower 0.1 0.1

    ``map k`` is followed by ``k`` rows of rational entries; ``exponents``
    and ``lower`` are optional.  ``#`` starts a comment.
    """
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    it = iter(lines)
    dim = None
    maps = []
    exponents = None
    lower = None
    for tokens in it:
        key = tokens[0]
        if key == "dim" and len(tokens) == 2:
            dim = _int(tokens[1])
        elif key == "map" and len(tokens) == 2:
            k = _int(tokens[1])
            rows = []
            for _ in range(k):
                row = next(it, None)
                if row is None:
                    raise InvalidInput("map ended early")
                rows.append([to_fraction(x) for x in row])
            maps.append(rows)
        elif key == "exponents":
            exponents = [to_fraction(x) for x in tokens[1:]]
        elif key == "lower":
            lower = tuple(float(to_fraction(x)) for x in tokens[1:])
        else:
            raise InvalidInput(f"unexpected line {' '.join(tokens)!r}")
    if dim is None:
        raise InvalidInput("missing 'dim' line")
    return make_datum(dim, maps, exponents), lower


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise InvalidInput(f"expected an integer, got {tok!r}") from exc


def format_datum(datum: BLDatum, lower: Sequence[float] | None = None) -> str:
    out = [f"dim {datum.dim}"]
    for a in datum.maps:
        out.append(f"map {len(a)}")
        out.extend(" ".join(str(x) for x in row) for row in a)
    if datum.exponents is not None:
        out.append("exponents " + " ".join(str(z) for z in datum.exponents))
    if lower is not None:
        out.append("lower " + " ".join(repr(float(x)) for x in lower))
    return "\n".join(out) + "\n"

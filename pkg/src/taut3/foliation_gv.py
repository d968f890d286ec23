"""Differential forms on the periodic grid torus and Godbillon-Vey integrals.

Forms are stored componentwise at grid vertices; the exterior derivative uses
centered differences (so d o d = 0 exactly, shifts commute) and the wedge is
the pointwise antisymmetric product.  A codim-1 foliation is described by a
nonvanishing 1-form omega; integrability means omega ^ d(omega) = 0, the
defining 1-form theta solves d(omega) = theta ^ omega, and the GV integral is
the integral of theta ^ d(theta) over the torus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PAIRS = ((0, 1), (0, 2), (1, 2))


class SingularityError(ValueError):
    """The 1-form vanishes (or nearly vanishes) somewhere; leaves degenerate."""


class TautnessError(RuntimeError):
    """A foliation in the list failed the transversal-circle test (strict mode)."""


@dataclass(frozen=True)
class DiscreteForm:
    """Degree-k form sampled on an n^3 periodic grid over the unit torus.

    values: (n,n,n) for k in {0,3}; (3,n,n,n) for k in {1,2} with 2-form
    components ordered (01, 02, 12).
    """

    degree: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if self.degree in (0, 3):
            if v.ndim != 3 or len(set(v.shape)) != 1:
                raise ValueError("scalar-type form needs shape (n, n, n)")
        elif self.degree in (1, 2):
            if v.ndim != 4 or v.shape[0] != 3 or len(set(v.shape[1:])) != 1:
                raise ValueError("vector-type form needs shape (3, n, n, n)")
        else:
            raise ValueError("degree must be 0..3")
        object.__setattr__(self, "values", v)

    @property
    def grid_size(self) -> int:
        return self.values.shape[-1]

    @property
    def spacing(self) -> float:
        return 1.0 / self.grid_size


def grid_coords(n: int):
    """Vertex coordinates of the unit torus grid, three (n,n,n) arrays."""
    xs = np.arange(n) / n
    return np.meshgrid(xs, xs, xs, indexing="ij")


def form_from_functions(degree: int, n: int, *fns) -> DiscreteForm:
    """Sample component functions f(x, y, z) on the grid."""
    x, y, z = grid_coords(n)
    vals = [np.broadcast_to(np.asarray(f(x, y, z), dtype=float), x.shape) for f in fns]
    if degree in (0, 3):
        (v,) = vals
        return DiscreteForm(degree, v)
    return DiscreteForm(degree, np.stack(vals))


def _ddi(f, axis, h):
    """Centered difference along a grid axis."""
    return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2.0 * h)


def d(form: DiscreteForm) -> DiscreteForm:
    """Exterior derivative; d o d = 0 exactly (centered shifts commute)."""
    h = form.spacing
    v = form.values
    if form.degree == 0:
        return DiscreteForm(1, np.stack([_ddi(v, i, h) for i in range(3)]))
    if form.degree == 1:
        comps = [_ddi(v[j], i, h) - _ddi(v[i], j, h) for i, j in _PAIRS]
        return DiscreteForm(2, np.stack(comps))
    if form.degree == 2:
        # d(c01 dx dy + c02 dx dz + c12 dy dz) = (D2 c01 - D1 c02 + D0 c12) dx dy dz
        out = _ddi(v[0], 2, h) - _ddi(v[1], 1, h) + _ddi(v[2], 0, h)
        return DiscreteForm(3, out)
    return DiscreteForm(3, np.zeros_like(v))  # top degree: d vanishes identically


def wedge(a: DiscreteForm, b: DiscreteForm) -> DiscreteForm:
    """Pointwise wedge product."""
    ka, kb = a.degree, b.degree
    if ka + kb > 3:
        raise ValueError("wedge degree exceeds 3")
    if ka == 0:
        vals = a.values[None] * b.values if b.degree in (1, 2) else a.values * b.values
        return DiscreteForm(kb, vals)
    if kb == 0:
        return wedge(b, a)
    if ka == 1 and kb == 1:
        comps = [a.values[i] * b.values[j] - a.values[j] * b.values[i] for i, j in _PAIRS]
        return DiscreteForm(2, np.stack(comps))
    if ka == 1 and kb == 2:
        out = (
            a.values[0] * b.values[2]
            - a.values[1] * b.values[1]
            + a.values[2] * b.values[0]
        )
        return DiscreteForm(3, out)
    if ka == 2 and kb == 1:
        return wedge(b, a)  # sign (-1)^(1*2) = +1
    raise ValueError("unsupported wedge degrees")


def l2_norm(form: DiscreteForm) -> float:
    return float(np.sqrt(np.mean(form.values**2) * (3.0 if form.values.ndim == 4 else 1.0)))


def integrate(form: DiscreteForm) -> float:
    """Integral of a 3-form over the torus (cell volume h^3)."""
    if form.degree != 3:
        raise ValueError("can only integrate 3-forms")
    return float(np.sum(form.values)) * form.spacing**3


def _check_nonvanishing(omega: DiscreteForm, floor: float = 1e-6):
    mag = np.sqrt(np.sum(omega.values**2, axis=0))
    mean = float(np.mean(mag))
    bad = mag <= floor * max(mean, 1e-300)
    if np.any(bad):
        cell = tuple(int(i) for i in np.argwhere(bad)[0])
        raise SingularityError(f"1-form (nearly) vanishes at grid cell {cell}")


def integrability_residual(omega: DiscreteForm) -> float:
    """Scale-free Frobenius defect |omega ^ d omega| / (|omega| |d omega| + eps)."""
    if omega.degree != 1:
        raise ValueError("expected a 1-form")
    _check_nonvanishing(omega)
    dw = d(omega)
    num = l2_norm(wedge(omega, dw))
    return num / (l2_norm(omega) * l2_norm(dw) + 1e-30)


def solve_theta(omega: DiscreteForm, tol: float = 1e-6):
    """Pointwise minimal-norm solution of d(omega) = theta ^ omega.

    Identifying 2-forms with axial vectors, the equation reads
    g = theta x omega, whose minimal-norm solution is (omega x g) / |omega|^2.
    Returns (theta, residual).
    """
    if integrability_residual(omega) > tol:
        raise ValueError("form is not integrable within tolerance; no theta exists")
    w = omega.values
    dw = d(omega).values
    g = np.stack([dw[2], -dw[1], dw[0]])  # axial vector of the 2-form
    wsq = np.sum(w**2, axis=0)
    theta = np.cross(w, g, axisa=0, axisb=0).transpose(3, 0, 1, 2) / wsq
    theta_form = DiscreteForm(1, theta)
    res = l2_norm(
        DiscreteForm(2, d(omega).values - wedge(theta_form, omega).values)
    )
    return theta_form, res


def gv_integral(omega: DiscreteForm, theta: DiscreteForm) -> float:
    """Integral of theta ^ d theta over the torus."""
    return integrate(wedge(theta, d(theta)))


@dataclass(frozen=True)
class FoliationSpec:
    omega: DiscreteForm
    theta: DiscreteForm | None = None
    transversal: tuple | None = None  # ordered closed path of grid vertices
    label: str = ""

    def __post_init__(self):
        if self.omega.degree != 1:
            raise ValueError("foliation needs a 1-form")
        _check_nonvanishing(self.omega)


def tautness_check(spec: FoliationSpec, tol: float = 1e-8):
    """Transversal-circle test: the pairing of omega with each edge of the loop
    must keep a constant sign and stay away from zero.

    Returns True/False, or None when no transversal loop is supplied
    (inconclusive, deliberately distinct from False).
    """
    if spec.transversal is None:
        return None
    path = [tuple(int(c) for c in p) for p in spec.transversal]
    if len(path) < 2:
        raise ValueError("transversal path needs at least two vertices")
    n = spec.omega.grid_size
    w = spec.omega.values
    mean_mag = float(np.mean(np.sqrt(np.sum(w**2, axis=0))))
    pairings = []
    closed = list(path) + [path[0]]
    for p, q in zip(closed[:-1], closed[1:]):
        delta = [(q[i] - p[i]) % n for i in range(3)]
        delta = [dd - n if dd > n // 2 else dd for dd in delta]
        nz = [i for i in range(3) if delta[i] != 0]
        if len(nz) != 1 or abs(delta[nz[0]]) != 1:
            raise ValueError(f"path step {p} -> {q} is not a single lattice edge")
        i, sgn = nz[0], delta[nz[0]]
        val = sgn * 0.5 * (w[i][p] + w[i][q])
        pairings.append(val)
    pairings = np.asarray(pairings)
    if np.min(np.abs(pairings)) <= tol * max(mean_mag, 1e-300):
        return False
    return bool(np.all(pairings > 0) or np.all(pairings < 0))


@dataclass(frozen=True)
class GvReport:
    total: float
    per_foliation: tuple  # (label, gv value or None, taut flag, theta residual)
    warnings: tuple


def gv_invariant(foliations, strict: bool = False, tol: float = 1e-6) -> GvReport:
    """Sum of GV integrals over the supplied foliation representatives."""
    total = 0.0
    rows = []
    warns = []
    for k, spec in enumerate(foliations):
        label = spec.label or f"foliation[{k}]"
        taut = tautness_check(spec)
        if taut is False:
            msg = f"{label}: failed the transversal-circle tautness test"
            if strict:
                raise TautnessError(msg)
            warns.append(msg + "; excluded from the sum")
            rows.append((label, None, taut, None))
            continue
        if taut is None:
            warns.append(f"{label}: no transversal supplied, tautness inconclusive")
        if spec.theta is not None:
            theta = spec.theta
            res = l2_norm(DiscreteForm(2, d(spec.omega).values - wedge(theta, spec.omega).values))
        else:
            theta, res = solve_theta(spec.omega, tol=tol)
        val = gv_integral(spec.omega, theta)
        total += val
        rows.append((label, val, taut, res))
    return GvReport(total=float(total), per_foliation=tuple(rows), warnings=tuple(warns))

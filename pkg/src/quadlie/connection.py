"""Left-invariant products: the metric connection, curvature, flatness.

The product tensor gamma[i][j][k] stores the coefficient of e_k in
e_i e_j.  For a metric <,> the product is fixed by the standard six-term
formula, which for left-invariant data collapses to

    2 <x y, z> = <[x, y], z> - <[y, z], x> + <[z, x], y>.

All n^2 right-hand sides are solved against the single matrix 2 G, so one
elimination (one inverse in exact mode, one factorization in binary64)
serves the whole tensor.

Curvature uses the fixed sign convention

    R(x, y) z = L_[x,y] z - L_x L_y z + L_y L_x z,

and flatness in binary64 accepts a maximal entry of R up to
1e-9 * (1 + |gamma|^2 + |c| |gamma|) in the max norm.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, scalars
from .algebra import LieAlgebra
from .errors import DimensionMismatch
from .forms import SymBilinearForm, SymmetricIso, validate_form

__all__ = [
    "ProductTensor",
    "CurvatureTensor",
    "FlatnessReport",
    "levi_civita",
    "product_from_iso",
    "curvature",
    "flatness_report",
    "product_report",
    "biinvariant_connection",
    "dim4_obstruction",
]


@dataclass(frozen=True)
class ProductTensor:
    algebra: LieAlgebra
    gamma: tuple  # gamma[i][j][k]
    metric: SymBilinearForm | None
    exact: bool

    @property
    def dim(self):
        return self.algebra.dim

    def mult(self, x, y):
        n = self.dim
        xs = scalars.coerce_vector(x, self.exact)
        ys = scalars.coerce_vector(y, self.exact)
        return scalars.coerce_vector(
            (
                sum(
                    xs[i] * ys[j] * self.gamma[i][j][k]
                    for i in range(n)
                    for j in range(n)
                    if self.gamma[i][j][k] != 0
                )
                for k in range(n)
            ),
            self.exact,
        )

    def left_mult(self, x):
        """Matrix of y -> x y on coordinate columns (rows k, columns j)."""
        n = self.dim
        xs = scalars.coerce_vector(x, self.exact)
        return tuple(
            scalars.coerce_vector(
                (sum(xs[i] * self.gamma[i][j][k] for i in range(n)) for j in range(n)),
                self.exact,
            )
            for k in range(n)
        )

    def to_float(self):
        if not self.exact:
            return self
        g = tuple(
            tuple(tuple(float(v) for v in row) for row in plane) for plane in self.gamma
        )
        return ProductTensor(
            self.algebra.to_float(),
            g,
            self.metric.to_float() if self.metric is not None else None,
            False,
        )


@dataclass(frozen=True)
class CurvatureTensor:
    r: tuple  # r[i][j][k][l]: coefficient of e_l in R(e_i, e_j) e_k
    exact: bool

    def max_abs(self):
        return scalars.max_abs(self.r)

    def apply(self, x, y, z):
        n = len(self.r)
        xs = scalars.coerce_vector(x, self.exact)
        ys = scalars.coerce_vector(y, self.exact)
        zs = scalars.coerce_vector(z, self.exact)
        out = []
        for l in range(n):
            acc = scalars.coerce(0, self.exact)
            for i in range(n):
                if xs[i] == 0:
                    continue
                for j in range(n):
                    if ys[j] == 0:
                        continue
                    for k in range(n):
                        if zs[k] == 0 or self.r[i][j][k][l] == 0:
                            continue
                        acc += xs[i] * ys[j] * zs[k] * self.r[i][j][k][l]
            out.append(acc)
        return tuple(out)


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    max_residual: object
    torsion_ok: bool
    skew_ok: bool | None
    left_symmetric: bool
    mode: str
    tolerance: object


def levi_civita(L, g):
    """Metric product tensor of a left-invariant metric on L."""
    form = g if isinstance(g, SymBilinearForm) else validate_form(g)
    if form.dim != L.dim:
        raise DimensionMismatch("metric and algebra dimensions differ")
    exact = L.exact and form.exact
    if not exact:
        L = L.to_float()
        form = form.to_float()
    n = L.dim
    c = L.c
    G = form.matrix
    two_g = tuple(tuple(2 * v for v in row) for row in G)

    rhs = []
    for i in range(n):
        for j in range(n):
            row = []
            for m in range(n):
                acc = scalars.coerce(0, exact)
                for k in range(n):
                    if c[i][j][k] != 0:
                        acc += c[i][j][k] * G[k][m]
                    if c[j][m][k] != 0:
                        acc -= c[j][m][k] * G[k][i]
                    if c[m][i][k] != 0:
                        acc += c[m][i][k] * G[k][j]
                row.append(acc)
            rhs.append(row)
    sols = linalg.solve_many(two_g, rhs, exact)
    gamma = tuple(
        tuple(sols[i * n + j] for j in range(n)) for i in range(n)
    )
    return ProductTensor(L, gamma, form, exact)


def product_from_iso(L, k, u):
    """Same product through the operator route:

    2 x y = [x, y] + u^{-1}([x, u(y)] + [y, u(x)]).

    Kept separate from levi_civita so the two can cross-check each other.
    """
    form = k if isinstance(k, SymBilinearForm) else validate_form(k)
    iso = u if isinstance(u, SymmetricIso) else SymmetricIso(
        L.dim, scalars.coerce_matrix(u, L.exact and form.exact), L.exact and form.exact
    )
    exact = L.exact and form.exact and iso.exact
    if not exact:
        L = L.to_float()
        form = form.to_float()
        iso = iso.to_float()
    n = L.dim
    uinv = iso.inverse_matrix()
    half = Fraction(1, 2) if exact else 0.5
    gamma = []
    for i in range(n):
        ei = L.basis_vector(i)
        uei = iso.apply(ei)
        plane = []
        for j in range(n):
            ej = L.basis_vector(j)
            br = L.bracket(ei, ej)
            t1 = L.bracket(ei, iso.apply(ej))
            t2 = L.bracket(ej, uei)
            corr = linalg.mat_vec(uinv, tuple(a + b for a, b in zip(t1, t2)))
            plane.append(tuple(half * (a + b) for a, b in zip(br, corr)))
        gamma.append(tuple(plane))
    ku = linalg.mat_mul(form.matrix, iso.matrix)
    metric = validate_form(ku)
    return ProductTensor(L, tuple(gamma), metric, exact)


def curvature(P):
    """R[i][j][k][l] under R(x,y) = L_[x,y] - L_x L_y + L_y L_x."""
    n = P.dim
    c = P.algebra.c
    gam = P.gamma
    exact = P.exact
    zero = scalars.coerce(0, exact)
    r = []
    for i in range(n):
        plane_i = []
        for j in range(n):
            plane_j = []
            for k in range(n):
                row = []
                for l in range(n):
                    acc = zero
                    for m in range(n):
                        if c[i][j][m] != 0 and gam[m][k][l] != 0:
                            acc += c[i][j][m] * gam[m][k][l]
                        if gam[j][k][m] != 0 and gam[i][m][l] != 0:
                            acc -= gam[j][k][m] * gam[i][m][l]
                        if gam[i][k][m] != 0 and gam[j][m][l] != 0:
                            acc += gam[i][k][m] * gam[j][m][l]
                    row.append(acc)
                plane_j.append(tuple(row))
            plane_i.append(tuple(plane_j))
        r.append(tuple(plane_i))
    return CurvatureTensor(tuple(r), exact)


def product_report(P):
    """Torsion, metric skewness, left-symmetry and flatness of a product.

    Works for any product tensor, metric or not; flatness_report is the
    metric entry point.  In exact mode every verdict is an equality test;
    in binary64 the thresholds scale with the tensor norms.
    """
    n = P.dim
    c = P.algebra.c
    gam = P.gamma
    exact = P.exact
    cmax = float(scalars.max_abs(c))
    gmax = float(scalars.max_abs(gam))

    tol_t = 0 if exact else 1e-9 * max(1.0, cmax + 2 * gmax)
    torsion_res = scalars.coerce(0, exact)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = abs(gam[i][j][k] - gam[j][i][k] - c[i][j][k])
                if res > torsion_res:
                    torsion_res = res
    torsion_ok = torsion_res <= tol_t

    skew_ok = None
    if P.metric is not None:
        G = P.metric.matrix
        kmax = float(scalars.max_abs(G))
        tol_s = 0 if exact else 1e-9 * max(1.0, 2 * gmax * kmax)
        skew_res = scalars.coerce(0, exact)
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    acc = scalars.coerce(0, exact)
                    for m in range(n):
                        if gam[i][j][m] != 0:
                            acc += gam[i][j][m] * G[m][l]
                        if gam[i][l][m] != 0:
                            acc += G[j][m] * gam[i][l][m]
                    if abs(acc) > skew_res:
                        skew_res = abs(acc)
        skew_ok = skew_res <= tol_s

    tol_ls = 0 if exact else 1e-9 * max(1.0, 2 * gmax * gmax + cmax * gmax)
    ls_res = scalars.coerce(0, exact)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # associator symmetry in the first two slots
                for l in range(n):
                    acc = scalars.coerce(0, exact)
                    for m in range(n):
                        if gam[i][j][m] != 0 and gam[m][k][l] != 0:
                            acc += gam[i][j][m] * gam[m][k][l]
                        if gam[j][k][m] != 0 and gam[i][m][l] != 0:
                            acc -= gam[j][k][m] * gam[i][m][l]
                        if gam[j][i][m] != 0 and gam[m][k][l] != 0:
                            acc -= gam[j][i][m] * gam[m][k][l]
                        if gam[i][k][m] != 0 and gam[j][m][l] != 0:
                            acc += gam[j][m][l] * gam[i][k][m]
                    if abs(acc) > ls_res:
                        ls_res = abs(acc)
    left_symmetric = ls_res <= tol_ls

    R = curvature(P)
    rmax = R.max_abs()
    tol_f = 0 if exact else 1e-9 * (1.0 + gmax * gmax + cmax * gmax)
    flat = rmax <= tol_f
    return FlatnessReport(
        flat=flat,
        max_residual=rmax,
        torsion_ok=torsion_ok,
        skew_ok=skew_ok,
        left_symmetric=left_symmetric,
        mode="exact" if exact else "binary64",
        tolerance=tol_f,
    )


def flatness_report(L, g):
    return product_report(levi_civita(L, g))


def biinvariant_connection(L):
    """Half-bracket product; it is the metric product of any ad-invariant
    metric and needs no form to write down."""
    half = Fraction(1, 2) if L.exact else 0.5
    gamma = tuple(
        tuple(tuple(half * v for v in row) for row in plane) for plane in L.c
    )
    return ProductTensor(L, gamma, None, L.exact)


def dim4_obstruction(a, b, d):
    """Three curvature components obstructing flatness for the
    indecomposable four-dimensional family.

    Inputs are the metric parameters on the two-dimensional slice fixed by
    the central direction; the family's metric matrix has block
    [[a, b], [b, -d]] there.  Requires b^2 + a d != 0 and a d != 0; the
    division raises ZeroDivisionError otherwise.  The first component is
    the full obstruction; the last two are the remaining diagonal
    components on the b = 0 slice.
    """
    exact = scalars.decide_mode([a, b, d])
    if exact:
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
    else:
        a, b, d = float(a), float(b), float(d)
    p1 = b * (-1 + a + d) / (b * b + a * d)
    p2 = (a * a + 2 * a * (-1 + d) - (-1 + d) * (1 + 3 * d)) / (4 * a * d)
    p3 = (3 * a * a - 2 * a * (1 + d) - (-1 + d) * (-1 + d)) / (4 * a * d)
    return p1, p2, p3

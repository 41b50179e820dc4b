"""Lie algebras presented by structure constants.

The table c[i][j] is the coefficient vector of [e_i, e_j], so the scalar
c[i][j][k] multiplies e_k.  Validation checks antisymmetry entrywise and
the Jacobi identity on basis triples; in binary64 mode both tests accept
residuals up to 1e-9 relative to the largest structure constant.
"""

from dataclasses import dataclass

from . import linalg, scalars
from .errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    JacobiViolation,
    ValidationError,
)

__all__ = ["LieAlgebra", "StructureReport", "validate_algebra", "bracket", "structure_report"]


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    c: tuple  # c[i][j][k]
    exact: bool
    labels: tuple = ()

    def bracket(self, x, y):
        return bracket(self, x, y)

    def ad(self, x):
        """Matrix of ad_x acting on coordinate columns: rows k, columns j."""
        n = self.dim
        xs = scalars.coerce_vector(x, self.exact)
        return tuple(
            scalars.coerce_vector(
                (sum(xs[i] * self.c[i][j][k] for i in range(n)) for j in range(n)),
                self.exact,
            )
            for k in range(n)
        )

    def basis_vector(self, i):
        one = scalars.coerce(1, self.exact)
        zero = scalars.coerce(0, self.exact)
        return tuple(one if j == i else zero for j in range(self.dim))

    def label_index(self, name):
        """Resolve a coordinate label; falls back to integer and e<k> forms."""
        if name in self.labels:
            return self.labels.index(name)
        try:
            k = int(name)
        except ValueError:
            if name.startswith("e"):
                try:
                    k = int(name[1:])
                except ValueError:
                    raise ValidationError(f"unknown coordinate label {name!r}") from None
                if 0 <= k < self.dim:
                    return k
            raise ValidationError(f"unknown coordinate label {name!r}") from None
        if 0 <= k < self.dim:
            return k
        raise ValidationError(f"coordinate index {k} out of range for dimension {self.dim}")

    def to_float(self):
        if not self.exact:
            return self
        c = tuple(
            tuple(tuple(float(v) for v in row) for row in plane) for plane in self.c
        )
        return LieAlgebra(self.dim, c, False, self.labels)


def validate_algebra(c, labels=None):
    """Build a LieAlgebra after checking shape, antisymmetry and Jacobi.

    Accepts any nested sequence c[i][j][k] of ints, Fractions or floats.
    The arithmetic mode of the result is decided here once: all-exact
    entries give an exact algebra, any float switches the whole table to
    binary64, and a mix of Fraction and float is rejected.
    """
    n = len(c)
    if n == 0:
        raise DimensionMismatch("empty structure table")
    for i, plane in enumerate(c):
        if len(plane) != n:
            raise DimensionMismatch(f"row {i} has {len(plane)} entries, expected {n}")
        for j, row in enumerate(plane):
            if len(row) != n:
                raise DimensionMismatch(
                    f"entry ({i}, {j}) has {len(row)} coefficients, expected {n}"
                )
    exact = scalars.decide_mode(scalars.flatten(c))
    table = tuple(
        tuple(scalars.coerce_vector(row, exact) for row in plane) for plane in c
    )
    cmax = scalars.max_abs(table)
    tol = 0 if exact else 1e-9 * max(1.0, float(cmax))

    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                r = table[i][j][k] + table[j][i][k]
                if abs(r) > tol:
                    raise AntisymmetryViolation(i, j, k, r)

    def brk(x, y):
        return tuple(
            sum(
                x[a] * y[b] * table[a][b][k]
                for a in range(n)
                for b in range(n)
                if table[a][b][k] != 0
            )
            for k in range(n)
        )

    basis = [
        tuple(
            scalars.coerce(1 if a == i else 0, exact) for a in range(n)
        )
        for i in range(n)
    ]
    jac_tol = 0 if exact else 1e-9 * max(1.0, float(cmax)) ** 2
    for i in range(n):
        for j in range(i + 1, n):
            bij = table[i][j]
            for k in range(j + 1, n):
                t1 = brk(bij, basis[k])
                t2 = brk(table[j][k], basis[i])
                t3 = brk(table[k][i], basis[j])
                for m in range(n):
                    r = t1[m] + t2[m] + t3[m]
                    if abs(r) > jac_tol:
                        raise JacobiViolation(i, j, k, m, r)

    lbl = tuple(labels) if labels else tuple(f"e{i}" for i in range(n))
    if len(lbl) != n:
        raise DimensionMismatch(f"{len(lbl)} labels for dimension {n}")
    return LieAlgebra(n, table, exact, lbl)


def bracket(L, x, y):
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionMismatch(
            f"vectors of length {len(x)}, {len(y)} in dimension {L.dim}"
        )
    xs = scalars.coerce_vector(x, L.exact)
    ys = scalars.coerce_vector(y, L.exact)
    n = L.dim
    return scalars.coerce_vector(
        (
            sum(
                xs[i] * ys[j] * L.c[i][j][k]
                for i in range(n)
                for j in range(n)
                if L.c[i][j][k] != 0
            )
            for k in range(n)
        ),
        L.exact,
    )


@dataclass(frozen=True)
class StructureReport:
    center: tuple
    derived: tuple
    lower_central: tuple
    nilpotency_class: int | None
    solvable: bool
    unimodular: bool
    abelian: bool


def _bracket_span(L, left_basis, right_basis):
    """Canonical basis of span{[v, w]} over the two vector families."""
    vecs = []
    for v in left_basis:
        for w in right_basis:
            vecs.append(bracket(L, v, w))
    return linalg.span_basis(vecs, L.exact)


def structure_report(L):
    """Center, derived algebra, lower central series and global flags.

    The series list starts at the whole algebra and ends at the first
    stationary term, so a nilpotent algebra of class m contributes m+1
    entries with an empty basis last.
    """
    n = L.dim
    exact = L.exact
    full = tuple(L.basis_vector(i) for i in range(n))

    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([L.c[i][j][k] for i in range(n)])
    center = linalg.nullspace(rows, exact)

    derived = _bracket_span(L, full, full)

    series = [linalg.span_basis(full, exact)]
    while True:
        nxt = _bracket_span(L, full, series[-1])
        if linalg.same_span(nxt, series[-1], exact):
            break
        series.append(nxt)
        if not nxt:
            break
    nil_class = len(series) - 1 if series and not series[-1] else None

    dseries = [series[0]]
    while dseries[-1]:
        nxt = _bracket_span(L, dseries[-1], dseries[-1])
        if linalg.same_span(nxt, dseries[-1], exact):
            break
        dseries.append(nxt)
    solvable = not dseries[-1]

    cmax = scalars.max_abs(L.c)
    tr_tol = 0 if exact else 1e-9 * max(1.0, float(cmax))
    unimodular = True
    for i in range(n):
        ad = L.ad(L.basis_vector(i))
        tr = sum(ad[k][k] for k in range(n))
        if abs(tr) > tr_tol:
            unimodular = False
            break

    abelian = all(
        v == 0 for v in scalars.flatten(L.c)
    )
    return StructureReport(
        center=center,
        derived=derived,
        lower_central=tuple(series),
        nilpotency_class=nil_class,
        solvable=solvable,
        unimodular=unimodular,
        abelian=abelian,
    )

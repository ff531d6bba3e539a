"""Exact rational arithmetic: Gaussian rationals, a certified simplex
solver, and a positive-semidefiniteness test for Hermitian matrices.

Everything here is tolerance-free.  Rationals are stdlib Fractions;
complex entries are pairs of Fractions.  The LP solver re-verifies
its own optimality certificate by substitution before returning, and
the PSD test produces a factorization or a counterexample vector that
callers can replay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# rational text form: always "p/q"
# ---------------------------------------------------------------------------

def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def rationalize(x: float, max_denominator: int) -> Fraction:
    """Best rational approximation with bounded denominator."""
    if not math.isfinite(x):
        raise ValueError(f"cannot rationalize non-finite value {x!r}")
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    return Fraction(x).limit_denominator(max_denominator)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return GaussianRational(Fraction(value.real), Fraction(value.imag))
        return GaussianRational(Fraction(value), Fraction(0))

    def __add__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __mul__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return format_gaussian(self)


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return format_rational(z.re)
    sign = "+" if z.im > 0 else "-"
    return f"{format_rational(z.re)}{sign}{format_rational(abs(z.im))} i"


def parse_gaussian(s: str) -> GaussianRational:
    t = s.strip().replace(" ", "")
    if not t:
        raise ValueError("empty number")
    if t.endswith("i"):
        t = t[:-1]
        split = -1
        for k in range(len(t) - 1, 0, -1):
            if t[k] in "+-" and t[k - 1] not in "+-/":
                split = k
                break
        if split < 0:
            return GaussianRational(Fraction(0), Fraction(t))
        return GaussianRational(Fraction(t[:split]), Fraction(t[split:]))
    return GaussianRational(Fraction(t), Fraction(0))


# ---------------------------------------------------------------------------
# small exact linear algebra over Gaussian rationals
# ---------------------------------------------------------------------------

Matrix = list  # list[list[GaussianRational]]
Vector = list  # list[GaussianRational]


def gm_identity(d: int) -> Matrix:
    return [[GR_ONE if i == j else GR_ZERO for j in range(d)] for i in range(d)]


def gm_zero(d: int) -> Matrix:
    return [[GR_ZERO] * d for _ in range(d)]


def gm_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def gm_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def gm_scale(c, a: Matrix) -> Matrix:
    cc = GaussianRational.of(c)
    return [[cc * x for x in row] for row in a]


def gm_is_hermitian(a: Matrix) -> bool:
    d = len(a)
    return all(a[i][j] == a[j][i].conjugate() for i in range(d) for j in range(d))


def inner(u: Vector, v: Vector) -> GaussianRational:
    """Hermitian inner product, conjugate-linear in the first slot."""
    acc = GR_ZERO
    for a, b in zip(u, v):
        acc = acc + a.conjugate() * b
    return acc


def gm_quadratic_form(m: Matrix, x: Vector) -> GaussianRational:
    """x† M x, exact."""
    d = len(m)
    acc = GR_ZERO
    for i in range(d):
        row = GR_ZERO
        for j in range(d):
            row = row + m[i][j] * x[j]
        acc = acc + x[i].conjugate() * row
    return acc


def nullspace(rows: list[Vector], d: int) -> list[Vector]:
    """Basis of {x : row · x = 0 for every row}, plain (bilinear) products.

    Gauss-Jordan over the Gaussian rationals.  Callers wanting
    ⟨v, x⟩ = 0 should pass conjugated rows.
    """
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(d):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = GR_ONE / mat[r][c]
        mat[r] = [inv * x for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        vec = [GR_ZERO] * d
        vec[fc] = GR_ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# linear programming: maximize c·x subject to Ax <= b, x >= 0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearProgram:
    """maximize objective · x  s.t.  rows[i] · x <= rhs[i],  x >= 0."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        nv = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise ValueError("row/rhs count mismatch")
        for r in self.rows:
            if len(r) != nv:
                raise ValueError("constraint row has wrong variable count")

    @staticmethod
    def make(objective, rows, rhs) -> "LinearProgram":
        return LinearProgram(
            tuple(Fraction(x) for x in objective),
            tuple(tuple(Fraction(x) for x in r) for r in rows),
            tuple(Fraction(x) for x in rhs),
        )


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None


class LpCertificateError(AssertionError):
    """The solver's own optimality certificate failed re-verification."""


def lp_solve_exact(lp: LinearProgram) -> LpResult:
    """Two-phase simplex with Bland's rule, fully in Fractions.

    On "optimal" the result carries the primal solution and the dual
    vector of the ≤ system; both are re-verified by substitution
    (feasibility plus equal objectives) before returning.
    """
    nv = len(lp.objective)
    m = len(lp.rows)
    F0, F1 = Fraction(0), Fraction(1)

    # equality tableau: columns = x | slacks | artificials | rhs.
    # rows with negative rhs are negated (slack coefficient -1) and
    # get an artificial variable so the initial basis is feasible.
    neg = [lp.rhs[i] < 0 for i in range(m)]
    art_rows = [i for i in range(m) if neg[i]]
    na = len(art_rows)
    ncols = nv + m + na
    art_base = nv + m
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(m):
        sgn = -1 if neg[i] else 1
        row = [sgn * a for a in lp.rows[i]] + [F0] * (m + na) + [sgn * lp.rhs[i]]
        row[nv + i] = Fraction(sgn)
        if neg[i]:
            k = art_rows.index(i)
            row[art_base + k] = F1
            basis.append(art_base + k)
        else:
            basis.append(nv + i)
        tab.append(row)

    def pivot(r: int, c: int, obj: list[Fraction]):
        inv = 1 / tab[r][c]
        tab[r] = [x * inv for x in tab[r]]
        prow = tab[r]
        for i in range(m):
            if i != r and tab[i][c]:
                f = tab[i][c]
                tab[i] = [x - f * p for x, p in zip(tab[i], prow)]
        if obj[c]:
            f = obj[c]
            for j in range(len(obj)):
                obj[j] -= f * prow[j]
        basis[r] = c

    def run(obj: list[Fraction], allowed: int) -> str:
        # obj holds reduced costs (z_j - c_j); optimal when all >= 0.
        # Bland: entering = lowest column with negative reduced cost;
        # leaving = minimum ratio, ties by lowest basic-variable index.
        while True:
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return "optimal"
            leave = -1
            best = None
            for i in range(m):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter, obj)

    if na:
        # phase 1: maximize -sum(artificials); value 0 iff feasible
        obj1 = [F0] * (ncols + 1)
        for k in range(na):
            obj1[art_base + k] = F1
        for i in art_rows:
            obj1 = [x - y for x, y in zip(obj1, tab[i])]
        status = run(obj1, ncols)
        assert status == "optimal"  # bounded above by 0
        if obj1[-1] != 0:
            return LpResult("infeasible")
        # drive leftover zero-valued artificials out of the basis with
        # degenerate pivots.  A nonzero non-artificial entry always
        # exists: a reduced row can never zero out its own slack column
        # coefficient, which no other row shares.
        for r in range(m):
            if basis[r] >= art_base:
                c = next(j for j in range(nv + m) if tab[r][j])
                pivot(r, c, obj1)

    obj2 = [-c for c in lp.objective] + [F0] * (m + na + 1)
    for r in range(m):
        bv = basis[r]
        if bv < nv and obj2[bv]:
            f = obj2[bv]
            obj2 = [x - f * y for x, y in zip(obj2, tab[r])]

    # artificial columns are barred from entering in phase 2
    status = run(obj2, nv + m)
    if status == "unbounded":
        return LpResult("unbounded")

    x = [F0] * nv
    for r, bv in enumerate(basis):
        if bv < nv:
            x[bv] = tab[r][-1]
    value = sum((c * xi for c, xi in zip(lp.objective, x)), F0)
    # dual of row i = reduced cost of its slack column (the sign works
    # out the same for negated rows, whose slack coefficient is -1)
    y = [obj2[nv + i] for i in range(m)]
    _verify_optimal(lp, x, value, y)
    return LpResult("optimal", value, tuple(x), tuple(y))


def _verify_optimal(lp: LinearProgram, x, value, y):
    for xi in x:
        if xi < 0:
            raise LpCertificateError("primal negativity")
    for row, b in zip(lp.rows, lp.rhs):
        if sum((a * xi for a, xi in zip(row, x)), Fraction(0)) > b:
            raise LpCertificateError("primal constraint violated")
    for yi in y:
        if yi < 0:
            raise LpCertificateError("dual negativity")
    for j in range(len(lp.objective)):
        col = sum((y[i] * lp.rows[i][j] for i in range(len(y))), Fraction(0))
        if col < lp.objective[j]:
            raise LpCertificateError("dual constraint violated")
    dual_val = sum((yi * b for yi, b in zip(y, lp.rhs)), Fraction(0))
    if dual_val != value:
        raise LpCertificateError("duality gap")


# ---------------------------------------------------------------------------
# exact PSD test via LDL
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PsdResult:
    """psd=True carries M = L diag(pivots) L†; psd=False carries a
    vector x with x†Mx < 0 (value recorded in witness_value)."""

    psd: bool
    pivots: tuple[Fraction, ...] | None = None
    lower: tuple[tuple[GaussianRational, ...], ...] | None = None
    witness: tuple[GaussianRational, ...] | None = None
    witness_value: Fraction | None = None


def psd_check_exact(m: Matrix) -> PsdResult:
    """Decide M ⪰ 0 exactly for a Hermitian Gaussian-rational matrix.

    LDL in input order.  A negative pivot, or a zero pivot whose row
    is not entirely zero, disproves PSD; in both cases a witness x
    with x†Mx < 0 is constructed and checked by substitution.
    """
    d = len(m)
    for row in m:
        if len(row) != d:
            raise ValueError("matrix is not square")
    if not gm_is_hermitian(m):
        raise ValueError("matrix is not Hermitian")

    s = [[m[i][j] for j in range(d)] for i in range(d)]  # reduced matrix
    lower = gm_identity(d)
    pivots: list[Fraction] = [Fraction(0)] * d

    def lift(u: Vector) -> Vector:
        # solve L† x = u; unit upper-triangular back substitution
        x = list(u)
        for i in range(d - 1, -1, -1):
            acc = x[i]
            for j in range(i + 1, d):
                acc = acc - lower[j][i].conjugate() * x[j]
            x[i] = acc
        return x

    def fail(u: Vector) -> PsdResult:
        x = lift(u)
        val = gm_quadratic_form(m, x)
        assert val.is_real() and val.re < 0
        return PsdResult(False, witness=tuple(x), witness_value=val.re)

    for k in range(d):
        dk = s[k][k]
        assert dk.is_real()
        if dk.re < 0:
            u = [GR_ZERO] * d
            u[k] = GR_ONE
            return fail(u)
        if dk.re == 0:
            j = next((j for j in range(k + 1, d) if s[j][k]), None)
            if j is not None:
                # 2x2 minor [[0, s̄],[s, b]] is indefinite; pick the
                # combination that makes the form strictly negative
                sv = s[j][k]
                b = s[j][j]
                assert b.is_real()
                lam = GaussianRational.of(abs(b.re) + 1)
                u = [GR_ZERO] * d
                u[k] = -lam / sv
                u[j] = GR_ONE
                return fail(u)
            continue  # pivot 0 with zero row: contributes nothing
        pivots[k] = dk.re
        inv = GR_ONE / dk
        for i in range(k + 1, d):
            lower[i][k] = s[i][k] * inv
        for i in range(k + 1, d):
            lik = lower[i][k]
            if not lik:
                continue
            for j in range(k + 1, i + 1):
                s[i][j] = s[i][j] - lik * dk * lower[j][k].conjugate()
                s[j][i] = s[i][j].conjugate()

    return PsdResult(True, pivots=tuple(pivots),
                     lower=tuple(tuple(r) for r in lower))


def psd_reconstruct(res: PsdResult, d: int) -> Matrix:
    """Rebuild L diag(pivots) L† from a positive PsdResult."""
    assert res.psd and res.lower is not None and res.pivots is not None
    out = gm_zero(d)
    for i in range(d):
        for j in range(d):
            acc = GR_ZERO
            for k in range(d):
                acc = acc + res.lower[i][k] * res.pivots[k] * \
                    res.lower[j][k].conjugate()
            out[i][j] = acc
    return out


def real_embedding(m: Matrix) -> Matrix:
    """[[Re, -Im], [Im, Re]] block matrix; PSD iff the original is."""
    d = len(m)
    out = [[GR_ZERO] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        for j in range(d):
            re = GaussianRational(m[i][j].re, Fraction(0))
            im = GaussianRational(m[i][j].im, Fraction(0))
            out[i][j] = re
            out[i + d][j + d] = re
            out[i + d][j] = im
            out[i][j + d] = -im
    return out

"""Deciding whether a projector set is state-independently contextual.

A set of rank-one projectors qualifies when there are weights w ≥ 0
and a bound y < 1 with (a) every independent set of the orthogonality
graph having weight-sum ≤ y and (b) Σ w_i Π_i ⪰ 𝟙.  Both conditions
are decided exactly: candidate weights come from the fractional-clique
LP or from a floating cutting-plane loop, but a SIC verdict is only
ever issued after exact rational verification of (a) and (b).
NOT_SIC is only issued on an explicit, replayable obstruction; when
neither side can be certified the answer is UNDECIDED.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .canon import canonicalize
from .coloring import fractional_chromatic_number
from .exact import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Matrix,
    PsdResult,
    Vector,
    format_gaussian,
    format_rational,
    gm_identity,
    inner,
    nullspace,
    parse_gaussian,
    psd_check_exact,
    rationalize,
)
from .graphs import Graph, iter_bits, max_weight_independent_set, \
    maximal_independent_sets


class VectorFileError(ValueError):
    pass


class DuplicateProjectorError(ValueError):
    pass


class AmbiguousOrthogonalityError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectorSet:
    """Rank-one projectors Π_i = v_i v_i†/⟨v_i,v_i⟩ given by vectors.

    Exact sets hold GaussianRational entries; numeric sets complex
    floats.  Vectors need not be normalized (the projector formula
    divides the norm out)."""

    d: int
    vectors: tuple[tuple, ...]
    exact: bool

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be at least 2")
        for i, v in enumerate(self.vectors):
            if len(v) != self.d:
                raise ValueError(f"vector {i} has length {len(v)}, not {self.d}")
            if not any(bool(x) for x in v):
                raise ValueError(f"vector {i} is zero")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @staticmethod
    def from_exact(d: int, vectors) -> "ProjectorSet":
        rows = tuple(tuple(GaussianRational.of(x) for x in v) for v in vectors)
        return ProjectorSet(d, rows, exact=True)

    @staticmethod
    def from_numeric(d: int, vectors) -> "ProjectorSet":
        rows = tuple(tuple(complex(x) for x in v) for v in vectors)
        return ProjectorSet(d, rows, exact=False)

    def projector(self, i: int) -> Matrix:
        """Exact projector matrix for vector i (exact sets only)."""
        assert self.exact
        v = self.vectors[i]
        nrm = inner(v, v)
        return [[v[a] * v[b].conjugate() / nrm for b in range(self.d)]
                for a in range(self.d)]

    def numeric_vectors(self) -> np.ndarray:
        """Unit-normalized vectors as a complex (n, d) array."""
        arr = np.array([[complex(x) for x in v] for v in self.vectors],
                       dtype=complex)
        return arr / np.linalg.norm(arr, axis=1, keepdims=True)

    def weighted_sum(self, w) -> Matrix:
        """Σ w_i Π_i exactly (exact sets only)."""
        assert self.exact
        out = [[GR_ZERO] * self.d for _ in range(self.d)]
        for i, wi in enumerate(w):
            if wi == 0:
                continue
            p = self.projector(i)
            for a in range(self.d):
                for b in range(self.d):
                    out[a][b] = out[a][b] + wi * p[a][b]
        return out


# ---------------------------------------------------------------------------
# vector files
# ---------------------------------------------------------------------------

def _split_entries(line: str) -> list[str]:
    if "," in line:
        return [t.strip() for t in line.split(",") if t.strip()]
    toks = line.split()
    out: list[str] = []
    for t in toks:
        if t == "i" and out:
            out[-1] += " i"
        else:
            out.append(t)
    return out


def parse_vector_file(text: str, mode: str = "auto") -> ProjectorSet:
    """Read the one-projector-per-line format.

    First data line: the dimension d.  Each later line: d entries,
    either exact ("p/q", "p/q+r/s i") or decimal floats; '#' starts a
    comment.  mode "auto" uses exact arithmetic iff every entry parses
    as a Gaussian rational.
    """
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((ln, body))
    if not lines:
        raise VectorFileError("no data lines")
    ln0, head = lines[0]
    try:
        d = int(head)
    except ValueError:
        raise VectorFileError(f"line {ln0}: dimension must be an integer, "
                              f"got {head!r}") from None
    rows = []
    for ln, body in lines[1:]:
        entries = _split_entries(body)
        if len(entries) != d:
            raise VectorFileError(
                f"line {ln}: expected {d} entries, got {len(entries)}")
        rows.append((ln, entries))
    if not rows:
        raise VectorFileError("no vectors after the dimension line")

    def try_exact():
        out = []
        for _, entries in rows:
            vec = []
            for e in entries:
                if "." in e or "e" in e or "E" in e:
                    raise ValueError(f"decimal entry {e!r} is not exact")
                vec.append(parse_gaussian(e))
            out.append(vec)
        return out

    def try_numeric():
        out = []
        for ln, entries in rows:
            vec = []
            for e in entries:
                try:
                    vec.append(complex(e.replace(" ", "").replace("i", "j")))
                except ValueError:
                    raise VectorFileError(
                        f"line {ln}: cannot parse entry {e!r}") from None
            out.append(vec)
        return out

    if mode == "exact":
        try:
            return ProjectorSet.from_exact(d, try_exact())
        except ValueError as exc:
            raise VectorFileError(f"exact parse failed: {exc}") from None
    if mode == "numeric":
        return ProjectorSet.from_numeric(d, try_numeric())
    try:
        return ProjectorSet.from_exact(d, try_exact())
    except ValueError:
        return ProjectorSet.from_numeric(d, try_numeric())


def write_vector_file(s: ProjectorSet, comment: str | None = None) -> str:
    out = []
    if comment:
        for line in comment.splitlines():
            out.append(f"# {line}")
    out.append(str(s.d))
    for v in s.vectors:
        if s.exact:
            out.append("  ".join(format_gaussian(x) for x in v))
        else:
            out.append("  ".join(_format_float_entry(x) for x in v))
    return "\n".join(out) + "\n"


def _format_float_entry(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


# ---------------------------------------------------------------------------
# orthogonality graph
# ---------------------------------------------------------------------------

def orthogonality_graph(s: ProjectorSet, tol: float = 0.0) -> Graph:
    """Edge {i,j} iff Π_i Π_j = 0, decided exactly or within tol on
    normalized vectors.  Parallel vectors (the same projector twice)
    are an error; numeric overlaps in (tol, 10·tol) are ambiguous and
    also an error."""
    n = s.n
    rows = [0] * n
    if s.exact:
        for i in range(n):
            vi = s.vectors[i]
            ni = inner(vi, vi)
            for j in range(i + 1, n):
                vj = s.vectors[j]
                ip = inner(vi, vj)
                if not ip:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                elif ip.abs2() == ni.re * inner(vj, vj).re:
                    raise DuplicateProjectorError(
                        f"vectors {i} and {j} are parallel")
    else:
        if tol <= 0:
            raise ValueError("numeric orthogonality needs tol > 0")
        arr = s.numeric_vectors()
        overlaps = np.abs(arr @ arr.conj().T)
        for i in range(n):
            for j in range(i + 1, n):
                ov = overlaps[i, j]
                if ov <= tol:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                elif ov < 10 * tol:
                    raise AmbiguousOrthogonalityError(
                        f"overlap of vectors {i},{j} is {ov:.3e}, inside "
                        f"the ambiguous zone ({tol:.1e}, {10 * tol:.1e})")
                elif ov >= 1 - 10 * tol:
                    raise DuplicateProjectorError(
                        f"vectors {i} and {j} are parallel within tolerance")
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# bounds and values
# ---------------------------------------------------------------------------

def noncontextual_bound(g: Graph, w) -> Fraction:
    """Largest value a deterministic orthogonality-respecting 0/1
    assignment can give the inequality's left side: the maximum
    w-weight of an independent set."""
    wf = [Fraction(x) for x in w]
    if len(wf) != g.n:
        raise ValueError("weight count does not match vertex count")
    if any(x < 0 for x in wf):
        raise ValueError("weights must be nonnegative")
    _, val = max_weight_independent_set(g, wf)
    return val


def noncontextual_bound_sweep(g: Graph, w) -> Fraction:
    """Cross-check by sweeping all 2^n deterministic assignments of
    the left side Σ w_i p_i − Σ_{edges} (w_i+w_j) p_i p_j."""
    wf = [Fraction(x) for x in w]
    if len(wf) != g.n:
        raise ValueError("weight count does not match vertex count")
    if g.n > 20:
        raise ValueError("sweep is guarded at 20 vertices")
    den = 1
    for x in wf:
        den = den * x.denominator // math.gcd(den, x.denominator)
    iw = [int(x * den) for x in wf]
    best = None
    for p in range(1 << g.n):
        # Σ_{edges inside p}(w_i + w_j) = Σ_{i in p} w_i · |N(i) ∩ p|
        acc = 0
        for v in iter_bits(p):
            acc += iw[v] * (1 - (g.rows[v] & p).bit_count())
        if best is None or acc > best:
            best = acc
    return Fraction(best, den)


def evaluate_assignment(g: Graph, w, assignment: int) -> Fraction:
    """Exact left side of the inequality for one 0/1 assignment."""
    wf = [Fraction(x) for x in w]
    acc = Fraction(0)
    for v in iter_bits(assignment):
        acc += wf[v] * (1 - (g.rows[v] & assignment).bit_count())
    return acc


def quantum_value(s: ProjectorSet, w, state: np.ndarray) -> float:
    """tr(ρ Σ w_i Π_i) for a density matrix, or ⟨ψ|Σ w_i Π_i|ψ⟩ for a
    unit vector."""
    m = _numeric_weighted_sum(s, w)
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        if abs(np.linalg.norm(state) - 1) > 1e-9:
            raise ValueError("state vector is not normalized")
        return float(np.real(state.conj() @ m @ state))
    if state.ndim == 2:
        if abs(np.trace(state).real - 1) > 1e-9 or abs(np.trace(state).imag) > 1e-9:
            raise ValueError("density matrix must have unit trace")
        return float(np.real(np.trace(state @ m)))
    raise ValueError("state must be a vector or a matrix")


def quantum_value_floor(s: ProjectorSet, w) -> float:
    """min over states of the quantum value: the smallest eigenvalue
    of Σ w_i Π_i."""
    return float(np.linalg.eigvalsh(_numeric_weighted_sum(s, w))[0])


def _numeric_weighted_sum(s: ProjectorSet, w) -> np.ndarray:
    arr = s.numeric_vectors()
    m = np.zeros((s.d, s.d), dtype=complex)
    for i in range(s.n):
        m += float(w[i]) * np.outer(arr[i], arr[i].conj())
    return m


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Obstruction:
    """A replayable refutation: the state is orthogonal to every
    projector except those of the recorded independent set, forcing
    its weight-sum to at least forced_bound ≥ 1 for any weights that
    satisfy the operator condition."""

    state: tuple[GaussianRational, ...]
    independent_set: int  # vertex mask; empty = operator condition unsatisfiable
    forced_bound: Fraction
    note: str


@dataclass(frozen=True)
class SicCertificate:
    status: str  # "SIC" | "NOT_SIC" | "UNDECIDED"
    graph: Graph
    w: tuple[Fraction, ...] | None = None
    y: Fraction | None = None
    psd_witness: PsdResult | None = None
    obstruction: Obstruction | None = None
    rounds: int = 0
    diagnostics: str = ""


@dataclass(frozen=True)
class Inequality:
    """Σ_i w_i ⟨Π_i⟩ − Σ_{edges {i,j}} (w_i+w_j) ⟨Π_iΠ_j⟩ ≤ y."""

    graph: Graph
    singles: tuple[tuple[int, Fraction], ...]
    pairs: tuple[tuple[int, int, Fraction], ...]
    bound: Fraction

    def render(self) -> str:
        parts = []
        for i, c in self.singles:
            parts.append(f"{format_rational(c)} <P{i}>")
        lhs = " + ".join(parts)
        for i, j, c in self.pairs:
            lhs += f" - {format_rational(-c)} <P{i} P{j}>"
        return f"{lhs} <= {format_rational(self.bound)}"


def emit_inequality(s: ProjectorSet, cert: SicCertificate) -> Inequality:
    if cert.status != "SIC":
        raise ValueError("inequality emission requires a SIC certificate")
    assert cert.w is not None and cert.y is not None
    g = cert.graph
    singles = tuple((i, cert.w[i]) for i in range(g.n))
    pairs = tuple((i, j, -(cert.w[i] + cert.w[j])) for i, j in g.edges())
    return Inequality(g, singles, pairs, cert.y)


def _kernel_excluding(s: ProjectorSet, skip: int) -> list[Vector]:
    """Basis of the joint kernel of all projectors except vertex skip
    (skip < 0 keeps them all): solutions of ⟨v_j, x⟩ = 0."""
    rows = [[x.conjugate() for x in s.vectors[j]]
            for j in range(s.n) if j != skip]
    return nullspace(rows, s.d)


def _obstruction_scan(s: ProjectorSet, g: Graph) -> Obstruction | None:
    common = _kernel_excluding(s, -1)
    if common:
        return Obstruction(
            state=tuple(common[0]),
            independent_set=0,
            forced_bound=Fraction(1),
            note="state orthogonal to every projector: the operator "
                 "condition cannot reach 1 on it for any weights")
    full = g.vertex_mask()
    for i in range(s.n):
        if g.rows[i] | (1 << i) != full:
            continue  # {i} maximal independent iff i sees every other vertex
        for x in _kernel_excluding(s, i):
            vi = s.vectors[i]
            num = inner(vi, x).abs2()  # x†Π_i x · ⟨v,v⟩ · ⟨x,x⟩ pieces below
            if num == 0:
                continue
            q = num / (inner(vi, vi).re * inner(x, x).re)
            return Obstruction(
                state=tuple(x),
                independent_set=1 << i,
                forced_bound=1 / q,
                note=f"state lies in the kernel of every projector except "
                     f"{i}, forcing w_{i} ≥ {format_rational(1 / q)} ≥ 1 "
                     f"while the independent set {{{i}}} caps it below 1")
    return None


def _exact_feasible(s: ProjectorSet, g: Graph,
                    w: list[Fraction]) -> tuple[Fraction, PsdResult] | None:
    """Exact check of both conditions; returns (y, psd) or None."""
    if any(wi < 0 for wi in w):
        return None
    y = noncontextual_bound(g, w)
    if not y < 1:
        return None
    m = s.weighted_sum(w)
    ident = gm_identity(s.d)
    diff = [[m[a][b] - ident[a][b] for b in range(s.d)] for a in range(s.d)]
    res = psd_check_exact(diff)
    if not res.psd:
        return None
    return y, res


def _orbit_average(g: Graph, w: list[Fraction]) -> list[Fraction]:
    out = list(w)
    for orbit in canonicalize(g).orbits:
        members = list(iter_bits(orbit))
        avg = sum((w[v] for v in members), Fraction(0)) / len(members)
        for v in members:
            out[v] = avg
    return out


def certify_sic(s: ProjectorSet, max_rounds: int = 60,
                tol: float = 1e-8) -> SicCertificate:
    """Decide the two defining conditions for the projector set.

    Exact sets: scan for structural obstructions (NOT_SIC), then try
    exact weight candidates from the fractional-clique LP, then run
    the floating cutting-plane loop and rationalize its answer.  A
    SIC verdict always carries exactly verified (w, y) and the PSD
    factorization.  Numeric sets get the floating loop only, so their
    best possible answer is UNDECIDED with diagnostics.
    """
    g = orthogonality_graph(s, tol=tol)

    if s.exact:
        obs = _obstruction_scan(s, g)
        if obs is not None:
            return SicCertificate("NOT_SIC", g, obstruction=obs,
                                  diagnostics=obs.note)

    mis = maximal_independent_sets(g)

    if s.exact:
        fr = fractional_chromatic_number(g)
        if fr.value > s.d:
            scale = Fraction(s.d) / fr.value
            raw = [wi * scale for wi in fr.weights]
            for cand in (raw, _orbit_average(g, raw)):
                hit = _exact_feasible(s, g, cand)
                if hit is not None:
                    y, psd = hit
                    return SicCertificate("SIC", g, w=tuple(cand), y=y,
                                          psd_witness=psd, rounds=0)

    w_float, rounds, lam, diag = _cutting_planes(s, g, mis, max_rounds, tol)
    if w_float is None:
        return SicCertificate("UNDECIDED", g, rounds=rounds, diagnostics=diag)

    if s.exact:
        for denom in (10 ** 3, 10 ** 6, 10 ** 9):
            cand = [rationalize(x, denom) for x in w_float]
            for trial in (cand, _orbit_average(g, cand)):
                hit = _exact_feasible(s, g, trial)
                if hit is not None:
                    y, psd = hit
                    return SicCertificate("SIC", g, w=tuple(trial), y=y,
                                          psd_witness=psd, rounds=rounds)
        return SicCertificate(
            "UNDECIDED", g, rounds=rounds,
            diagnostics=f"numeric convergence (min eigenvalue {lam:.2e}) "
                        "but exact verification failed on the "
                        "rationalization ladder")
    return SicCertificate(
        "UNDECIDED", g, rounds=rounds,
        diagnostics="numeric input: cutting planes reached min eigenvalue "
                    f"{lam:.2e}, but exact verification needs exact entries")


def _cutting_planes(s: ProjectorSet, g: Graph, mis: list[int],
                    max_rounds: int, tol: float):
    """Minimize y over (w, y) with all independent-set sums ≤ y and an
    accumulating family of state cuts Σ_i w_i ⟨x|Π_i|x⟩ ≥ 1, one new
    cut per round at the bottom eigenvector of Σ w_i Π_i."""
    n = s.n
    arr = s.numeric_vectors()
    projs = [np.outer(arr[i], arr[i].conj()) for i in range(n)]

    # seed cut: the maximally mixed state needs Σ w_i ≥ d
    cuts = [np.full(n, 1.0 / s.d)]
    rounds = 0
    lam = -np.inf
    w = None
    while rounds < max_rounds:
        rounds += 1
        n_mis = len(mis)
        a_ub = np.zeros((n_mis + len(cuts), n + 1))
        b_ub = np.zeros(n_mis + len(cuts))
        for r, mask in enumerate(mis):
            for v in iter_bits(mask):
                a_ub[r, v] = 1.0
            a_ub[r, n] = -1.0
        for r, cut in enumerate(cuts):
            a_ub[n_mis + r, :n] = -cut
            b_ub[n_mis + r] = -1.0
        c = np.zeros(n + 1)
        c[n] = 1.0
        res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(0, None)] * (n + 1),
                      method="highs")
        if not res.success:
            return None, rounds, lam, f"LP solver failed: {res.message}"
        w = res.x[:n]
        y = res.x[n]
        m = np.zeros((s.d, s.d), dtype=complex)
        for i in range(n):
            m += w[i] * projs[i]
        eigvals, eigvecs = np.linalg.eigh(m)
        lam = float(eigvals[0])
        if lam >= 1 - 1e-9:
            if y < 1 - 1e-12:
                return w, rounds, lam, ""
            return None, rounds, lam, (
                f"operator condition met but bound y={y:.6f} is not "
                "below 1: no qualifying weights were found numerically")
        x = eigvecs[:, 0]
        cuts.append(np.array([float(np.real(x.conj() @ projs[i] @ x))
                              for i in range(n)]))
    return None, rounds, lam, (
        f"no numeric convergence in {max_rounds} rounds "
        f"(min eigenvalue reached {lam:.6f})")

"""Projector sets, vector files, and the SIC decision pipeline."""

import random
from fractions import Fraction

import numpy as np
import pytest

from siccert import fixture_path
from siccert.canon import canonical_key
from siccert.certify import (
    AmbiguousOrthogonalityError,
    DuplicateProjectorError,
    ProjectorSet,
    VectorFileError,
    certify_sic,
    emit_inequality,
    evaluate_assignment,
    noncontextual_bound,
    noncontextual_bound_sweep,
    orthogonality_graph,
    parse_vector_file,
    quantum_value,
    quantum_value_floor,
    write_vector_file,
)
from siccert.exact import GaussianRational, gm_quadratic_form, psd_reconstruct
from siccert.graphs import Graph, parse_graph6

YO_VECTORS = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (0, 1, -1), (0, 1, 1), (1, 0, -1), (1, 0, 1), (1, -1, 0), (1, 1, 0),
    (1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1),
]


def yu_oh() -> ProjectorSet:
    return ProjectorSet.from_exact(3, YO_VECTORS)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


class TestProjectorSet:
    def test_validation(self):
        with pytest.raises(ValueError):
            ProjectorSet.from_exact(1, [(1,)])
        with pytest.raises(ValueError):
            ProjectorSet.from_exact(2, [(1, 0, 0)])
        with pytest.raises(ValueError):
            ProjectorSet.from_exact(2, [(0, 0)])

    def test_projector_is_rank_one_idempotent(self):
        s = ProjectorSet.from_exact(2, [(1, 1)])
        p = s.projector(0)
        assert p[0][0].re == Fraction(1, 2)
        # idempotent: P^2 = P
        sq = [[sum((p[i][k] * p[k][j] for k in range(2)),
                   start=GaussianRational.of(0)) for j in range(2)]
              for i in range(2)]
        assert sq == p

    def test_weighted_sum_identity_for_basis(self):
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        m = s.weighted_sum([Fraction(1)] * 3)
        assert all(m[i][i].re == 1 for i in range(3))
        assert all(not m[i][j] for i in range(3) for j in range(3) if i != j)


class TestVectorFiles:
    def test_fixture_parses_exact(self):
        text = fixture_path("yu_oh_d3.vec").read_text()
        s = parse_vector_file(text)
        assert s.exact and s.d == 3 and s.n == 13
        assert s.vectors == yu_oh().vectors

    def test_round_trip_exact(self):
        s = ProjectorSet.from_exact(2, [
            (Fraction(1, 2), GaussianRational(Fraction(1, 3), Fraction(-2, 5))),
            (1, -1)])
        text = write_vector_file(s, comment="two rays")
        back = parse_vector_file(text)
        assert back.exact and back.vectors == s.vectors

    def test_round_trip_numeric(self):
        s = ProjectorSet.from_numeric(3, [(0.5, -0.25, 0.0),
                                          (0.1 + 0.2j, 0.0, 1.0)])
        back = parse_vector_file(write_vector_file(s))
        assert not back.exact
        assert np.allclose(np.array(back.vectors), np.array(s.vectors))

    def test_mode_detection(self):
        assert parse_vector_file("2\n1 0\n0 1\n").exact
        assert not parse_vector_file("2\n1.0 0\n0 1\n").exact
        assert parse_vector_file("2\n1 0\n0 1\n", mode="numeric").exact is False

    def test_mode_exact_rejects_decimals(self):
        with pytest.raises(VectorFileError):
            parse_vector_file("2\n0.5 1\n1 0\n", mode="exact")

    def test_errors(self):
        with pytest.raises(VectorFileError, match="no data"):
            parse_vector_file("# just a comment\n")
        with pytest.raises(VectorFileError, match="dimension"):
            parse_vector_file("abc\n1 0\n")
        with pytest.raises(VectorFileError, match="expected 3 entries"):
            parse_vector_file("3\n1 0\n")
        with pytest.raises(VectorFileError, match="no vectors"):
            parse_vector_file("3\n")
        with pytest.raises(VectorFileError, match="line 4"):
            parse_vector_file("# header\n2\n1 0\nbroken! entry\n",
                              mode="numeric")

    def test_comma_separated_and_spaced_imaginary(self):
        s = parse_vector_file("2\n1/2+1/3 i, 0\n0, 1\n")
        assert s.exact
        assert s.vectors[0][0] == GaussianRational(Fraction(1, 2),
                                                   Fraction(1, 3))


class TestOrthogonalityGraph:
    def test_yu_oh_graph(self):
        g = orthogonality_graph(yu_oh())
        assert g.n == 13 and g.edge_count() == 24
        assert canonical_key(g) == canonical_key(
            parse_graph6("L?AB?vOLDPHa`o"))

    def test_duplicate_exact(self):
        s = ProjectorSet.from_exact(2, [(1, 0), (2, 0)])
        with pytest.raises(DuplicateProjectorError):
            orthogonality_graph(s)

    def test_numeric_matches_exact(self):
        arr = [tuple(float(x) for x in v) for v in YO_VECTORS]
        s = ProjectorSet.from_numeric(3, arr)
        g = orthogonality_graph(s, tol=1e-9)
        assert g.rows == orthogonality_graph(yu_oh()).rows

    def test_numeric_needs_tolerance(self):
        s = ProjectorSet.from_numeric(2, [(1.0, 0.0), (0.0, 1.0)])
        with pytest.raises(ValueError):
            orthogonality_graph(s, tol=0.0)

    def test_ambiguous_zone(self):
        eps = 3e-8  # overlap inside (tol, 10 tol) for tol = 1e-8
        s = ProjectorSet.from_numeric(2, [(1.0, 0.0), (eps, 1.0)])
        with pytest.raises(AmbiguousOrthogonalityError):
            orthogonality_graph(s, tol=1e-8)

    def test_duplicate_numeric(self):
        s = ProjectorSet.from_numeric(2, [(1.0, 1.0), (1.0 + 1e-12, 1.0)])
        with pytest.raises(DuplicateProjectorError):
            orthogonality_graph(s, tol=1e-8)


class TestBounds:
    def test_noncontextual_bound_equals_sweep(self):
        rng = random.Random(42)
        for _ in range(40):
            n = rng.randint(1, 10)
            g = random_graph(n, rng.random(), rng)
            w = [Fraction(rng.randint(0, 9), rng.randint(1, 7))
                 for _ in range(n)]
            assert noncontextual_bound(g, w) == noncontextual_bound_sweep(g, w)

    def test_weight_validation(self):
        g = Graph.cycle(4)
        with pytest.raises(ValueError):
            noncontextual_bound(g, [1, 2, 3])
        with pytest.raises(ValueError):
            noncontextual_bound(g, [1, -1, 1, 1])

    def test_evaluate_assignment(self):
        g = Graph.cycle(4)
        w = [Fraction(1, 2)] * 4
        # independent pair: sum of weights, no penalty
        assert evaluate_assignment(g, w, 0b0101) == 1
        # adjacent pair: w_i + w_j - (w_i + w_j) = 0
        assert evaluate_assignment(g, w, 0b0011) == 0
        # all four: 2 - 4 edges * 1 = -2
        assert evaluate_assignment(g, w, 0b1111) == -2

    def test_quantum_value(self):
        s = yu_oh()
        w = [1.0] * 13
        rho = np.eye(3) / 3
        # each projector contributes tr(rho P) = 1/3
        assert abs(quantum_value(s, w, rho) - 13 / 3) < 1e-12
        e1 = np.array([1.0, 0, 0])
        v = quantum_value(s, w, e1)
        assert v > 0
        with pytest.raises(ValueError):
            quantum_value(s, w, 2 * e1)
        with pytest.raises(ValueError):
            quantum_value(s, w, 2 * rho)

    def test_quantum_value_floor(self):
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert abs(quantum_value_floor(s, [1, 1, 1]) - 1) < 1e-12
        assert abs(quantum_value_floor(s, [1, 1, 0])) < 1e-12


class TestCertifyYuOh:
    def test_full_certificate(self):
        s = yu_oh()
        cert = certify_sic(s)
        assert cert.status == "SIC"
        assert cert.y == Fraction(33, 35)
        assert cert.w == (Fraction(9, 35),) * 9 + (Fraction(6, 35),) * 4
        assert cert.rounds == 0  # exact fast path
        # independent replay of both defining conditions
        assert noncontextual_bound(cert.graph, cert.w) == cert.y
        m = s.weighted_sum(cert.w)
        # sum w_i P_i is exactly the identity here
        assert all(m[i][i].re == 1 for i in range(3))
        assert all(not m[i][j] for i in range(3) for j in range(3) if i != j)
        assert cert.psd_witness.psd
        diff = [[m[a][b] - (1 if a == b else 0) for b in range(3)]
                for a in range(3)]
        assert psd_reconstruct(cert.psd_witness, 3) == diff

    def test_inequality(self):
        s = yu_oh()
        cert = certify_sic(s)
        ineq = emit_inequality(s, cert)
        assert len(ineq.singles) == 13
        assert len(ineq.pairs) == 24
        assert ineq.bound == Fraction(33, 35)
        for i, j, c in ineq.pairs:
            assert cert.graph.has_edge(i, j)
            assert c == -(cert.w[i] + cert.w[j])
        text = ineq.render()
        assert "<= 33/35" in text and "<P0 P1>" in text

    def test_quantum_beats_noncontextual(self):
        s = yu_oh()
        cert = certify_sic(s)
        wf = [float(x) for x in cert.w]
        assert abs(quantum_value_floor(s, wf) - 1.0) < 1e-12
        rng = np.random.default_rng(7)
        for _ in range(25):
            v = rng.normal(size=3) + 1j * rng.normal(size=3)
            v /= np.linalg.norm(v)
            assert quantum_value(s, wf, v) > float(cert.y)

    def test_emit_requires_sic(self):
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        cert = certify_sic(s)
        with pytest.raises(ValueError):
            emit_inequality(s, cert)


class TestCertifyObstructions:
    def test_basis_not_sic(self):
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        cert = certify_sic(s)
        assert cert.status == "NOT_SIC"
        obs = cert.obstruction
        assert obs is not None
        assert obs.forced_bound >= 1
        assert obs.independent_set.bit_count() == 1
        # replay: the state is orthogonal to every projector except
        # the flagged one
        i = obs.independent_set.bit_length() - 1
        from siccert.exact import inner
        for j in range(s.n):
            ip = inner(s.vectors[j], list(obs.state))
            if j == i:
                assert ip
            else:
                assert not ip

    def test_cone_not_sic_with_apex_state(self):
        text = fixture_path("cone_yu_oh_d4.vec").read_text()
        s = parse_vector_file(text)
        cert = certify_sic(s)
        assert cert.status == "NOT_SIC"
        obs = cert.obstruction
        assert obs.independent_set == 1 << 13
        state = list(obs.state)
        assert not any(state[:3]) and state[3]
        assert obs.forced_bound == 1

    def test_common_kernel_not_sic(self):
        # two projectors in d = 3 leave a joint kernel direction
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0)])
        cert = certify_sic(s)
        assert cert.status == "NOT_SIC"
        assert cert.obstruction.independent_set == 0
        state = list(cert.obstruction.state)
        from siccert.exact import inner
        for v in s.vectors:
            assert not inner(v, state)


class TestCertifyUndecided:
    def test_numeric_input_is_undecided(self):
        arr = [tuple(float(x) for x in v) for v in YO_VECTORS]
        s = ProjectorSet.from_numeric(3, arr)
        cert = certify_sic(s, tol=1e-9)
        assert cert.status == "UNDECIDED"
        assert "exact" in cert.diagnostics

    def test_structurally_blocked_exact_set(self):
        # basis plus a skew ray: the extra vertex is isolated in the
        # orthogonality graph, so no qualifying weights exist, but no
        # single-vertex obstruction applies either
        s = ProjectorSet.from_exact(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                        (1, 1, 1)])
        cert = certify_sic(s, max_rounds=12)
        assert cert.status == "UNDECIDED"
        assert cert.rounds > 0

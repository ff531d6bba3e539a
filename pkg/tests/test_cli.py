"""End-to-end command-line coverage using the bundled fixtures."""

import pytest

from siccert import fixture_path
from siccert.cli import main
from siccert.graphs import Graph, encode_graph6

YU_OH_G6 = "L?AB?vOLDPHa`o"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEnumerate:
    def test_small_census_counts(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-n", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert "1 1" in lines and "2 1" in lines
        assert "3 2" in lines and "4 3" in lines
        assert lines[-1] == "total 7"
        # the graph6 stream precedes the count table
        assert lines[0] == "@"

    def test_chi_filter_empty(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-n", "8",
                           "--chi-gt", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "total 277"
        # no square-free connected graph on <= 8 vertices has chi > 3,
        # so the output is exactly the count table
        assert lines[0] == "1 1"
        assert len(lines) == 9

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "c.g6"
        code, out, _ = run(capsys, "enumerate", "--max-n", "4",
                           "--output", str(target))
        assert code == 0
        assert "total 7" in out
        assert len(target.read_text().strip().splitlines()) == 7

    def test_bad_config(self, capsys):
        code, _, err = run(capsys, "enumerate", "--max-n", "20")
        assert code == 2
        assert "max-n" in err


class TestGraphQueries:
    def test_chif(self, capsys):
        code, out, _ = run(capsys, "graph", "chif", YU_OH_G6)
        assert code == 0 and out.strip() == "35/11"
        code, out, _ = run(capsys, "graph", "chif", "L?ABEagE`gH``c")
        assert code == 0 and out.strip() == "19/6"

    def test_chi(self, capsys):
        code, out, _ = run(capsys, "graph", "chi", YU_OH_G6)
        assert code == 0 and out.strip() == "4"

    def test_square_free(self, capsys):
        c4 = encode_graph6(Graph.cycle(4))
        code, out, _ = run(capsys, "graph", "square-free", c4)
        assert code == 0 and out.strip() == "false"
        code, out, _ = run(capsys, "graph", "square-free", YU_OH_G6)
        assert out.strip() == "true"

    def test_connected(self, capsys):
        code, out, _ = run(capsys, "graph", "connected", YU_OH_G6)
        assert code == 0 and out.strip() == "true"

    def test_cone(self, capsys):
        tri = encode_graph6(Graph.complete(3))
        code, out, _ = run(capsys, "graph", "cone", tri)
        assert code == 0
        assert out.strip() == encode_graph6(Graph.complete(4))

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "graph", "chi", "###")
        assert code == 2
        assert "byte offset" in err


class TestCertify:
    def test_yu_oh_exit_0(self, capsys):
        code, out, _ = run(capsys, "certify",
                           str(fixture_path("yu_oh_d3.vec")))
        assert code == 0
        assert "status SIC" in out
        assert "y = 33/35" in out
        assert "w[0] = 9/35" in out and "w[12] = 6/35" in out
        assert "<= 33/35" in out  # the inequality line

    def test_cone_exit_3(self, capsys):
        code, out, _ = run(capsys, "certify",
                           str(fixture_path("cone_yu_oh_d4.vec")))
        assert code == 3
        assert "status NOT_SIC" in out
        assert "obstruction state = (0/1, 0/1, 0/1, 1/1)" in out
        assert "independent set = {13}" in out

    def test_basis_exit_3(self, capsys):
        code, out, _ = run(capsys, "certify",
                           str(fixture_path("basis_d3.vec")))
        assert code == 3
        assert "status NOT_SIC" in out

    def test_numeric_mode_undecided(self, capsys, tmp_path):
        f = tmp_path / "yo.vec"
        lines = ["3"]
        from siccert.certify import parse_vector_file
        s = parse_vector_file(fixture_path("yu_oh_d3.vec").read_text())
        for v in s.vectors:
            lines.append(" ".join(f"{float(x.re):.9f}" for x in v))
        f.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "certify", str(f), "--tol", "1e-6")
        assert code == 4
        assert "status UNDECIDED" in out

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run(capsys, "certify", "/nonexistent/x.vec")
        assert code == 2

    def test_malformed_file_exit_2(self, capsys, tmp_path):
        f = tmp_path / "bad.vec"
        f.write_text("3\n1 0\n")
        code, _, err = run(capsys, "certify", str(f))
        assert code == 2
        assert "entries" in err


class TestInequality:
    def test_yu_oh(self, capsys):
        code, out, _ = run(capsys, "inequality",
                           str(fixture_path("yu_oh_d3.vec")))
        assert code == 0
        assert "bound = 33/35" in out
        assert out.count("<P") >= 37  # 13 singles + 24 pairs

    def test_non_sic_exit(self, capsys):
        code, out, err = run(capsys, "inequality",
                             str(fixture_path("basis_d3.vec")))
        assert code == 3
        assert "no inequality" in err


class TestRealize:
    def test_yu_oh_found(self, capsys):
        code, out, _ = run(capsys, "realize", YU_OH_G6, "--dim", "3",
                           "--restarts", "25", "--seed", "0")
        assert code == 0
        assert "status found" in out
        lines = out.strip().splitlines()
        assert lines[2] == "3"  # dimension line of the emitted file
        assert len(lines) == 3 + 13

    def test_byte_identical_reruns(self, capsys):
        a = run(capsys, "realize", YU_OH_G6, "--dim", "3",
                "--restarts", "10", "--seed", "5")
        b = run(capsys, "realize", YU_OH_G6, "--dim", "3",
                "--restarts", "10", "--seed", "5")
        assert a == b

    def test_c4_degenerate_exit_3(self, capsys):
        c4 = encode_graph6(Graph.cycle(4))
        code, out, _ = run(capsys, "realize", c4, "--dim", "3",
                           "--restarts", "10")
        assert code == 3
        assert "status degenerate" in out

    def test_k4_failed_exit_4(self, capsys):
        k4 = encode_graph6(Graph.complete(4))
        code, out, _ = run(capsys, "realize", k4, "--dim", "3",
                           "--restarts", "10")
        assert code == 4
        assert "status failed" in out

    def test_bad_dim_exit_2(self, capsys):
        code, _, err = run(capsys, "realize", YU_OH_G6, "--dim", "1")
        assert code == 2


class TestArgumentErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_query(self):
        with pytest.raises(SystemExit) as exc:
            main(["graph", "girth", YU_OH_G6])
        assert exc.value.code == 2

"""
End-to-end tests for the seplab command line.
"""
import pytest
import sys
import os
import json
from io import StringIO

# Add src and scripts to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'scripts')))

from generators.families import cycle, g_hub, g_tc, min_theta
from graph_core.io import write_graph
from seplab import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, run


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep cap overrides from the caller's shell out of the tests."""
    monkeypatch.delenv("SEPLAB_CAPS", raising=False)


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to ``<name>.txt`` and return the path."""
    def _write(name, G):
        path = tmp_path / f"{name}.txt"
        path.write_text(write_graph(G))
        return str(path)
    return _write


def invoke(*argv):
    out = StringIO()
    code = run(["--quiet", *argv], stdout=out)
    return code, out.getvalue()


class TestGen:
    """Test the gen subcommand."""

    def test_cycle(self):
        """Test the canonical edge list of C4."""
        code, text = invoke("gen", "cycle", "4")

        assert code == EXIT_OK
        assert text == "4 4\n0 1\n0 3\n1 2\n2 3\n"

    def test_family_name_spelling(self):
        """Test dashes and case are normalized."""
        code, text = invoke("gen", "k-theta", "2")
        assert code == EXIT_OK
        assert text.startswith("6 6\n")

        code, text = invoke("gen", "g_tc")
        assert code == EXIT_OK
        assert text.split()[0] == "11"

    def test_graph6(self):
        """Test graph6 output."""
        code, text = invoke("gen", "cycle", "4", "--write-format", "graph6")

        assert code == EXIT_OK
        assert text.strip() == write_graph(cycle(4), "graph6").strip()

    def test_bad_family(self):
        """Test unknown families and missing k are usage errors."""
        assert invoke("gen", "petersen")[0] == EXIT_USAGE
        assert invoke("gen", "cycle")[0] == EXIT_USAGE
        assert invoke("gen")[0] == EXIT_USAGE

    def test_out_file(self, tmp_path):
        """Test --out writes the file instead of stdout."""
        target = tmp_path / "c4.txt"
        code, text = invoke("--out", str(target), "gen", "cycle", "4")

        assert code == EXIT_OK
        assert text == ""
        assert target.read_text() == "4 4\n0 1\n0 3\n1 2\n2 3\n"


class TestAnalysisCommands:
    """Test detect, seps, frames and analyze-hole."""

    def test_detect_member(self, graph_file):
        """Test G_tc is reported as a member."""
        code, text = invoke("detect", graph_file("tc", g_tc()))
        body = json.loads(text)

        assert code == EXIT_OK
        assert body["graph"] == "tc"
        assert body["status"] == "member"

    def test_detect_kind(self, graph_file):
        """Test a single theta search."""
        code, text = invoke("detect", graph_file("theta", min_theta()), "--kind", "theta")
        body = json.loads(text)

        assert code == EXIT_OK
        assert body["kind"] == "theta"
        assert body["vertices"] == [0, 1, 2, 3, 4]

    def test_seps_methods(self, graph_file):
        """Test separator counts of C6 per method."""
        path = graph_file("c6", cycle(6))

        for method, count in (("expand", 9), ("oracle", 9), ("proper", 9), ("clique", 0)):
            code, text = invoke("seps", path, "--method", method)
            body = json.loads(text)
            assert code == EXIT_OK
            assert body["count"] == count, method

        body = json.loads(invoke("seps", path)[1])
        assert body["separators"][0]["C"] == [0, 2]
        assert body["separators"][0]["is_proper"]

    def test_frames(self, graph_file):
        """Test the optimal frame of G_tc's separator."""
        code, text = invoke("frames", graph_file("tc", g_tc()), "--separator", "0,4,10")
        entry = json.loads(text)["frames"][0]

        assert code == EXIT_OK
        assert entry["frame"] == [4, 10, 2, 3, 5, 6, 1, 8, 9, 7]
        assert entry["potential"] == 1
        assert entry["heavy"] == [0]
        assert entry["richness"]["rich"]

    def test_analyze_hole(self, graph_file):
        """Test the hub of G_hub passes the theorem and centers a star cutset."""
        code, text = invoke("analyze-hole", graph_file("hub", g_hub()), "--hole", "0,1,2,3,4,5,6,7,8,9")
        body = json.loads(text)

        assert code == EXIT_OK
        assert body["member"]
        assert list(body["majors"]) == ["10"]
        hub = body["majors"]["10"]
        assert hub["theorem"]["status"] == "passed"
        assert hub["star_cutset"]["X"] == [2, 7, 8, 10]

    def test_analyze_bad_hole(self, graph_file):
        """Test a vertex sequence that is not a hole."""
        assert invoke("analyze-hole", graph_file("hub", g_hub()), "--hole", "0,1,2")[0] == EXIT_USAGE


class TestReconstructCommand:
    """Test the reconstruct subcommand."""

    def test_single_separator(self, graph_file):
        """Test G_tc's separator rebuilds."""
        code, text = invoke("reconstruct", graph_file("tc", g_tc()), "--separator", "0,4,10")
        body = json.loads(text)

        assert code == EXIT_OK
        assert body["all_equal"]
        assert body["reports"][0]["rebuilt"] == [0, 4, 10]

    def test_all_separators(self, graph_file):
        """Test every proper separator of C6 by default."""
        code, text = invoke("reconstruct", graph_file("c6", cycle(6)))
        body = json.loads(text)

        assert code == EXIT_OK
        assert len(body["reports"]) == 9

    def test_enumerate(self, graph_file):
        """Test enumeration from keys."""
        code, text = invoke("reconstruct", graph_file("c6", cycle(6)), "--enumerate", "verified_roundtrip")
        body = json.loads(text)

        assert code == EXIT_OK
        assert body["count"] == 9

    def test_failed_roundtrip_exit_code(self, graph_file):
        """Test a clique separator reports failure with exit code 1."""
        from graph_core.graph import Graph

        path = graph_file("p3", Graph(3, [(0, 1), (1, 2)]))
        code, text = invoke("reconstruct", path, "--separator", "1")

        assert code == EXIT_VIOLATION
        assert not json.loads(text)["all_equal"]

    def test_exclusive_options(self, graph_file):
        """Test --all and --separator cannot be combined."""
        path = graph_file("c6", cycle(6))
        assert invoke("reconstruct", path, "--all", "--separator", "0,3")[0] == EXIT_USAGE


class TestCorpusCommands:
    """Test verify-lemmas and stats."""

    def test_verify_lemmas(self, graph_file):
        """Test the round-trip property on a single file."""
        path = graph_file("c6", cycle(6))
        code, text = invoke("verify-lemmas", path, "--corpus", "--only", "round_trip")
        report = json.loads(text)

        assert code == EXIT_OK
        assert report["graphs"] == 1
        assert not report["violated"]
        record = report["properties"][0]
        assert record["name"] == "round_trip"
        assert record["status"] == "passed"
        assert record["checked"] == 9

    def test_verify_lemmas_csv(self, graph_file):
        """Test the CSV property table."""
        path = graph_file("c6", cycle(6))
        code, text = invoke("--output-format", "csv", "verify-lemmas", path, "--corpus",
                            "--only", "round_trip", "two_full_components")
        lines = text.strip().splitlines()

        assert code == EXIT_OK
        assert lines[0].split(",")[0] == "name"
        assert len(lines) == 3

    def test_stats_csv(self, graph_file):
        """Test the default CSV stats table."""
        code, text = invoke("stats", graph_file("c6", cycle(6)), "--corpus")
        lines = text.strip().splitlines()

        assert code == EXIT_OK
        assert lines[0] == "graph,n,m,member,min_seps,proper,clique,max_exponent_estimate"
        assert lines[1].startswith("c6,6,6,member,9,9,0,")

    def test_stats_json(self, graph_file):
        """Test JSON stats rows."""
        code, text = invoke("--output-format", "json", "stats", graph_file("c6", cycle(6)), "--corpus")
        rows = json.loads(text)

        assert code == EXIT_OK
        assert rows[0]["min_seps"] == 9
        assert rows[0]["max_exponent_estimate"] == pytest.approx(1.226294, abs=1e-6)


class TestErrors:
    """Test usage and input errors map to exit code 2."""

    def test_missing_file(self, tmp_path):
        """Test an unreadable graph file."""
        assert invoke("detect", str(tmp_path / "absent.txt"))[0] == EXIT_USAGE

    def test_malformed_file(self, tmp_path):
        """Test a file with a bad edge line."""
        path = tmp_path / "bad.txt"
        path.write_text("3 1\n0 x\n")

        assert invoke("seps", str(path))[0] == EXIT_USAGE

    def test_bad_caps_env(self, monkeypatch):
        """Test a malformed SEPLAB_CAPS value."""
        monkeypatch.setenv("SEPLAB_CAPS", "oracle=many")

        assert invoke("gen", "cycle", "4")[0] == EXIT_USAGE

    def test_bad_jobs(self):
        """Test a non-positive worker count."""
        assert invoke("--jobs", "0", "gen", "cycle", "4")[0] == EXIT_USAGE

    def test_unknown_subcommand(self):
        """Test argparse errors do not exit the process."""
        assert invoke("draw")[0] == EXIT_USAGE


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

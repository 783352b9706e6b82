"""
tests/test_cli.py
End-to-end command tests through lcycles.main.main

Test coverage:
- enumerate / trace / compare on fixture files, stdin and inline graphs
- mine and probe output
- Structured (JSON lines) output
- Exit-status contract: 0 success, 1 discrepancy, 2 bad input
"""

import io
import json

import pytest

from lcycles.commands.experiments import ExperimentCommands
from lcycles.main import main
from lcycles.models.cli_config import CliConfig
from lcycles.services.harness import diff_instances
from lcycles.services.trace import diff_traces

from .conftest import COUNTEREXAMPLE_MASK

pytestmark = pytest.mark.usefixtures("isolated_env")


def run_cli(*argv, stdin_text=""):
    """Run the CLI in-process; returns (exit status, stdout text)"""
    out = io.StringIO()
    status = main(list(argv), stdout=out, stdin=io.StringIO(stdin_text))
    return status, out.getvalue()


class TestEnumerate:
    """Test the enumerate command"""

    def test_revised_lists_six_cycles(self, fixtures_dir):
        """Test six canonical cycles and the trailing count"""
        status, out = run_cli("enumerate", str(fixtures_dir / "counterexample.adj"), "-k", "5")
        assert status == 0
        assert out.splitlines() == ["ADA", "ADBECA", "AECA", "AECBDA", "BDB", "BECB", "6 cycles"]

    def test_original_policy(self, fixtures_dir):
        """Test the unrevised rule prints five cycles"""
        status, out = run_cli(
            "enumerate", str(fixtures_dir / "counterexample.adj"), "-k", "5", "--policy", "original"
        )
        assert status == 0
        assert "AECBDA" not in out.splitlines()
        assert out.splitlines()[-1] == "5 cycles"

    def test_policy_from_environment(self, fixtures_dir, monkeypatch):
        """Test LCYCLES_POLICY supplies the default policy"""
        monkeypatch.setenv("LCYCLES_POLICY", "original")
        _, out = run_cli("enumerate", str(fixtures_dir / "counterexample.adj"), "-k", "5")
        assert out.splitlines()[-1] == "5 cycles"

    def test_edge_list_input(self, fixtures_dir):
        """Test edge-list files are detected"""
        _, out = run_cli("enumerate", str(fixtures_dir / "counterexample.edges"), "-k", "5")
        assert out.splitlines()[-1] == "6 cycles"

    def test_empty_file(self, fixtures_dir):
        """Test an empty graph prints 0 cycles"""
        status, out = run_cli("enumerate", str(fixtures_dir / "empty.adj"), "-k", "3")
        assert status == 0
        assert out == "0 cycles\n"

    def test_acyclic_file(self, fixtures_dir):
        """Test an acyclic graph prints 0 cycles"""
        _, out = run_cli("enumerate", str(fixtures_dir / "acyclic.adj"), "-k", "3")
        assert out == "0 cycles\n"

    def test_stdin(self):
        """Test '-' reads the graph from standard input"""
        status, out = run_cli("enumerate", "-", "-k", "2", stdin_text="A B\nB A\n")
        assert status == 0
        assert out == "ABA\n1 cycle\n"

    def test_inline_graph(self):
        """Test --graph accepts a literal \\n separator"""
        _, out = run_cli("enumerate", "--graph", "A B\\nB A", "-k", "2")
        assert out == "ABA\n1 cycle\n"

    def test_successor_order_invariance(self, tmp_path):
        """Test reordered successor lists give the same set of lines"""
        shuffled = tmp_path / "shuffled.adj"
        shuffled.write_text("A E D\nB E D\nC B A\nD B A\nE C\n")
        _, out = run_cli("enumerate", str(shuffled), "-k", "5")
        assert set(out.splitlines()) == {"ADA", "ADBECA", "AECA", "AECBDA", "BDB", "BECB", "6 cycles"}

    def test_structured(self, fixtures_dir):
        """Test JSON lines: one record per cycle, then a summary"""
        _, out = run_cli(
            "enumerate", str(fixtures_dir / "counterexample.adj"), "-k", "5", "--format", "structured"
        )
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["type"] for r in records] == ["cycle"] * 6 + ["summary"]
        assert records[0] == {"type": "cycle", "nodes": ["A", "D", "A"], "length": 2}
        summary = records[-1]
        assert summary["count"] == 6
        assert summary["policy"] == "revised"
        assert summary["counters"]["cycles_found"] == 6
        assert summary["counters"]["total_ops"] == (
            summary["counters"]["edge_visits"]
            + summary["counters"]["lock_writes"]
            + summary["counters"]["relax_calls"]
            + summary["counters"]["blist_adds"]
        )

    def test_deterministic_output(self, fixtures_dir):
        """Test two runs produce byte-identical output"""
        argv = ("enumerate", str(fixtures_dir / "counterexample.adj"), "-k", "5", "--format", "structured")
        assert run_cli(*argv) == run_cli(*argv)


class TestTrace:
    """Test the trace command"""

    def test_golden_listing(self, fixtures_dir, golden_trace):
        """Test the single search from A reproduces the golden file"""
        status, out = run_cli(
            "trace", str(fixtures_dir / "counterexample.adj"), "-k", "5",
            "--policy", "original", "--scc-mode", "whole", "--start", "A",
        )
        assert status == 0
        assert diff_traces(out, golden_trace) is None

    def test_scc_mode_start(self, fixtures_dir, golden_trace):
        """Test the SCC of A is the whole strongly connected graph"""
        _, out = run_cli(
            "trace", str(fixtures_dir / "counterexample.adj"), "-k", "5",
            "--policy", "original", "--start", "A",
        )
        assert diff_traces(out, golden_trace) is None

    def test_show_blocked(self, fixtures_dir):
        """Test --show-blocked adds the three BLOCKED lines"""
        _, out = run_cli(
            "trace", str(fixtures_dir / "counterexample.adj"), "-k", "5",
            "--policy", "original", "--start", "A", "--show-blocked",
        )
        lines = out.splitlines()
        assert len(lines) == 41
        assert sum(line.endswith(": blocked") for line in lines) == 3

    def test_full_run_ends_with_halt(self, fixtures_dir):
        """Test the whole lc_cycles run is traced without --start"""
        _, out = run_cli("trace", str(fixtures_dir / "counterexample.adj"), "-k", "5")
        lines = out.splitlines()
        assert lines[-1].split() == [f"{len(lines)}:", "halt"]
        assert sum("##### cycle" in line for line in lines) == 6

    def test_structured(self, fixtures_dir):
        """Test trace events as JSON lines with INFINITY as "inf" """
        _, out = run_cli(
            "trace", str(fixtures_dir / "counterexample.adj"), "-k", "5",
            "--policy", "revised", "--start", "A", "--format", "structured",
        )
        records = [json.loads(line) for line in out.splitlines()]
        assert records[0]["kind"] == "PUSH"
        assert records[0]["stack"] == []
        assert records[-1]["kind"] == "HALT"
        writes = [r for r in records if r["kind"] == "RELAX_WRITE"]
        assert writes and all(r["values"]["lock_after"] == "inf" for r in writes)

    def test_unknown_start(self, fixtures_dir, capsys):
        """Test a start node missing from the graph is an input error"""
        status, _ = run_cli("trace", str(fixtures_dir / "counterexample.adj"), "-k", "5", "--start", "Z")
        assert status == 2
        assert "error:" in capsys.readouterr().err


class TestCompare:
    """Test the compare command"""

    def test_original_discrepancy(self, fixtures_dir):
        """Test exit 1 with AECBDA reported missing"""
        status, out = run_cli(
            "compare", str(fixtures_dir / "counterexample.adj"), "-k", "5", "--policy", "original"
        )
        assert status == 1
        lines = out.splitlines()
        assert "missing (1):" in lines
        assert "  AECBDA" in lines
        assert "spurious (0):" in lines

    def test_revised_agrees(self, fixtures_dir):
        """Test exit 0 when the oracle agrees"""
        status, out = run_cli("compare", str(fixtures_dir / "counterexample.adj"), "-k", "5")
        assert status == 0
        assert out.startswith("no discrepancy")
        assert "(6 cycles)" in out

    def test_structured_discrepancy(self, fixtures_dir):
        """Test the discrepancy record schema"""
        status, out = run_cli(
            "compare", str(fixtures_dir / "counterexample.adj"), "-k", "5",
            "--policy", "original", "--format", "structured",
        )
        assert status == 1
        record = json.loads(out)
        assert record["type"] == "discrepancy"
        assert record["graph"] == ["A D E", "B D E", "C A B", "D A B", "E C"]
        assert record["missing"] == [["A", "E", "C", "B", "D", "A"]]
        assert record["spurious"] == []
        assert record["instance"] is None

    def test_structured_match(self, fixtures_dir):
        """Test the match record"""
        _, out = run_cli(
            "compare", str(fixtures_dir / "counterexample.adj"), "-k", "2", "--format", "structured"
        )
        assert json.loads(out) == {"type": "match", "policy": "revised", "k": 2, "cycles": 2}


class TestExperiments:
    """Test mine and probe"""

    def test_mine_two_nodes(self):
        """Test a scan that finds nothing prints the zero count"""
        status, out = run_cli("mine", "--k-values", "2", "--max-nodes", "2")
        assert status == 0
        assert out == "0 discrepancies\n"

    def test_mine_rejects_large_graphs(self, capsys):
        """Test max nodes above five is refused"""
        status, _ = run_cli("mine", "--k-values", "3", "--max-nodes", "6")
        assert status == 2
        assert "error:" in capsys.readouterr().err

    def test_discrepancy_report(self, counterexample):
        """Test the text block printed for a mined discrepancy"""
        out = io.StringIO()
        commands = ExperimentCommands(CliConfig(command="mine", k_values=[5]), out)
        for d in diff_instances([((5, COUNTEREXAMPLE_MASK, 0), counterexample)], [5]):
            commands._print_discrepancy(d)
        lines = out.getvalue().splitlines()
        assert lines[0].startswith(
            f"discrepancy 1: policy=original k=5 nodes=5 mask={COUNTEREXAMPLE_MASK} variant=0"
        )
        assert lines[1:6] == ["  A D E", "  B D E", "  C A B", "  D A B", "  E C"]
        assert lines[6] == "  missing: AECBDA"
        assert lines[7] == "  spurious: "

    def test_probe_file(self, fixtures_dir):
        """Test probing a single graph"""
        status, out = run_cli("probe", str(fixtures_dir / "counterexample.adj"), "-k", "5")
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == "policy=revised k=5 runs=1"
        assert "spread=1.000" in lines
        assert "lock_budget_respected=yes" in lines

    def test_probe_family_structured(self):
        """Test a seeded random family as JSON lines"""
        argv = ("probe", "--n", "8", "--count", "5", "--seed", "3", "-k", "4", "--format", "structured")
        status, out = run_cli(*argv)
        assert status == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["type"] for r in records] == ["probe_run"] * 5 + ["complexity_report"]
        assert all(r["n"] == 8 and r["k"] == 4 for r in records[:5])
        assert records[-1]["runs"] == 5
        assert records[-1]["lock_budget_respected"] is True
        assert run_cli(*argv) == (status, out)

    def test_probe_explicit_probability(self):
        """Test --p overrides the sparse default"""
        _, out = run_cli("probe", "--n", "6", "--p", "1.0", "--count", "2", "-k", "3", "--format", "structured")
        runs = [json.loads(line) for line in out.splitlines()][:2]
        assert [r["e"] for r in runs] == [30, 30]


class TestExitStatus:
    """Test failures map to exit status 2"""

    def test_parse_error_names_line(self, fixtures_dir, capsys):
        """Test a malformed edge list reports its line"""
        status, _ = run_cli(
            "enumerate", str(fixtures_dir / "bad_edgelist.edges"), "-k", "3", "--input-format", "edgelist"
        )
        assert status == 2
        assert "error: line 2:" in capsys.readouterr().err

    def test_detected_edge_list_error(self, fixtures_dir, capsys):
        """Test a two-token first line selects the edge-list parser, which rejects line 2"""
        status, out = run_cli("enumerate", str(fixtures_dir / "bad_edgelist.edges"), "-k", "3")
        assert status == 2
        assert out == ""
        assert "error: line 2:" in capsys.readouterr().err

    def test_duplicate_edge(self, capsys):
        """Test a duplicate edge in inline text"""
        status, _ = run_cli("enumerate", "--graph", "A B B", "-k", "2")
        assert status == 2
        assert "duplicate edge A -> B" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        """Test an unreadable input file"""
        status, _ = run_cli("enumerate", "no-such-file.adj", "-k", "2")
        assert status == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_k(self, fixtures_dir, capsys):
        """Test k is required"""
        status, _ = run_cli("enumerate", str(fixtures_dir / "counterexample.adj"))
        assert status == 2
        assert "requires -k" in capsys.readouterr().err

    def test_missing_graph(self, capsys):
        """Test enumerate without any input"""
        status, _ = run_cli("enumerate", "-k", "2")
        assert status == 2

    def test_mine_without_k_values(self):
        """Test mine needs --k-values"""
        status, _ = run_cli("mine")
        assert status == 2

    def test_bad_log_level(self, fixtures_dir):
        """Test an unknown --log-level"""
        status, _ = run_cli("--log-level", "loud", "enumerate", "--graph", "A B", "-k", "2")
        assert status == 2

    def test_missing_env_file(self):
        """Test a named env file that does not exist"""
        status, _ = run_cli("--env-file", "missing.env", "enumerate", "--graph", "A B", "-k", "2")
        assert status == 2

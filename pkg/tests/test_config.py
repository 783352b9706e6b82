"""
tests/test_config.py
Environment settings and per-command validation
"""

import pytest
from pydantic import ValidationError

from lcycles.models.cli_config import CliConfig
from lcycles.services.locked_dfs import GsMode, RelaxPolicy
from lcycles.util.config_loader import Config, load_config, normalize_log_level


@pytest.mark.usefixtures("isolated_env")
class TestConfig:
    """Test settings loading"""

    def test_defaults_without_env_file(self):
        """Test a bare environment gives the documented defaults"""
        config = load_config()
        assert config.log_level == "WARNING"
        assert config.log_file is None
        assert config.policy is RelaxPolicy.REVISED
        assert config.scc_mode is GsMode.SCC
        assert config.output_format == "text"
        assert config.input_format == "auto"
        assert config.workers == 1
        assert config.seed == 0
        assert config.miner_max_nodes == 5
        assert config.miner_budget == 1
        assert config.miner_order_variants == 0
        assert config.probe_count == 200

    def test_environment_overrides(self, monkeypatch):
        """Test LCYCLES_* variables are read case-insensitively"""
        monkeypatch.setenv("LCYCLES_POLICY", "ORIGINAL")
        monkeypatch.setenv("LCYCLES_SCC_MODE", "whole")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        config = load_config()
        assert config.policy is RelaxPolicy.ORIGINAL
        assert config.scc_mode is GsMode.WHOLE
        assert config.log_level == "DEBUG"

    def test_dotenv_in_working_directory(self, isolated_env):
        """Test .env in the working directory is picked up"""
        (isolated_env / ".env").write_text("LCYCLES_SEED=9\nLCYCLES_WORKERS=3\n")
        config = load_config()
        assert config.seed == 9
        assert config.workers == 3

    def test_explicit_env_file(self, isolated_env):
        """Test an explicit file is loaded"""
        path = isolated_env / "probe.env"
        path.write_text("LCYCLES_PROBE_COUNT=12\n")
        assert load_config(str(path)).probe_count == 12

    def test_missing_explicit_env_file(self):
        """Test a named file that does not exist is an error"""
        with pytest.raises(FileNotFoundError):
            load_config("does-not-exist.env")

    @pytest.mark.parametrize(
        "name,value",
        [
            ("LOG_LEVEL", "loud"),
            ("LCYCLES_WORKERS", "0"),
            ("LCYCLES_MINER_MAX_NODES", "6"),
            ("LCYCLES_MINER_BUDGET", "0"),
            ("LCYCLES_MINER_ORDER_VARIANTS", "-1"),
            ("LCYCLES_POLICY", "greedy"),
        ],
    )
    def test_invalid_values(self, monkeypatch, name, value):
        """Test out-of-range settings are rejected"""
        monkeypatch.setenv(name, value)
        with pytest.raises(ValidationError):
            Config()

    def test_normalize_log_level(self):
        """Test level names are upper-cased and checked"""
        assert normalize_log_level("info") == "INFO"
        with pytest.raises(ValueError):
            normalize_log_level("verbose")


class TestCliConfig:
    """Test per-command requirements"""

    def test_enumerate(self):
        """Test a complete enumerate config"""
        config = CliConfig(command="enumerate", graph_text="A B\nB A", k=2, policy="original")
        assert config.policy is RelaxPolicy.ORIGINAL
        assert config.has_graph_input

    def test_k_required(self):
        """Test every command but mine needs k >= 1"""
        with pytest.raises(ValidationError):
            CliConfig(command="enumerate", graph_text="A B")
        with pytest.raises(ValidationError):
            CliConfig(command="trace", graph_text="A B", k=0)

    def test_mine_needs_k_values(self):
        """Test mine takes k_values instead of k"""
        with pytest.raises(ValidationError):
            CliConfig(command="mine")
        with pytest.raises(ValidationError):
            CliConfig(command="mine", k_values=[0, 3])
        assert CliConfig(command="mine", k_values=[5]).k is None

    def test_graph_input_required(self):
        """Test enumerate, trace and compare need a graph"""
        for command in ("enumerate", "trace", "compare"):
            with pytest.raises(ValidationError):
                CliConfig(command=command, k=3)

    def test_single_graph_source(self):
        """Test a file and inline text are mutually exclusive"""
        with pytest.raises(ValidationError):
            CliConfig(command="enumerate", k=3, input_path="g.adj", graph_text="A B")

    def test_probe_inputs(self):
        """Test probe accepts a graph or a random family"""
        assert CliConfig(command="probe", k=3, n=10).n == 10
        assert CliConfig(command="probe", k=3, input_path="g.adj").has_graph_input
        with pytest.raises(ValidationError):
            CliConfig(command="probe", k=3)

    def test_probability_range(self):
        """Test p outside [0, 1] is rejected"""
        with pytest.raises(ValidationError):
            CliConfig(command="probe", k=3, n=10, p=1.5)

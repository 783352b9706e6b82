"""
lcycles/models/cli_config.py
Validated per-invocation settings of the CLI
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..services.locked_dfs import GsMode, RelaxPolicy

Command = Literal["enumerate", "trace", "compare", "mine", "probe"]

GRAPH_COMMANDS = ("enumerate", "trace", "compare")


class CliConfig(BaseModel):
    """One command with its inputs; built from flags over Config defaults"""

    command: Command

    # Graph input
    input_path: Optional[str] = None
    graph_text: Optional[str] = None
    input_format: Literal["auto", "adjlist", "edgelist"] = "auto"

    # Search
    k: Optional[int] = None
    k_values: List[int] = Field(default_factory=list)
    policy: RelaxPolicy = RelaxPolicy.REVISED
    scc_mode: GsMode = GsMode.SCC
    output_format: Literal["text", "structured"] = "text"

    # trace
    start: Optional[str] = None
    show_blocked: bool = False

    # Generation (probe)
    seed: int = 0
    n: Optional[int] = None
    p: Optional[float] = None
    count: int = 200

    # mine
    max_nodes: int = 5
    budget: int = 1
    order_variants: int = 0
    workers: int = 1

    @property
    def has_graph_input(self) -> bool:
        return self.input_path is not None or self.graph_text is not None

    @model_validator(mode="after")
    def check_command_inputs(self) -> "CliConfig":
        """Enforce per-command requirements"""
        if self.command == "mine":
            if not self.k_values:
                raise ValueError("mine requires --k-values")
            if any(k < 1 for k in self.k_values):
                raise ValueError("every k in --k-values must be at least 1")
        else:
            if self.k is None:
                raise ValueError(f"{self.command} requires -k")
            if self.k < 1:
                raise ValueError("k must be at least 1")

        if self.input_path is not None and self.graph_text is not None:
            raise ValueError("give either an input file or --graph, not both")
        if self.command in GRAPH_COMMANDS and not self.has_graph_input:
            raise ValueError(f"{self.command} requires an input file or --graph")

        if self.command == "probe" and not self.has_graph_input and self.n is None:
            raise ValueError("probe requires an input graph or --n")
        if self.n is not None and self.n < 0:
            raise ValueError("n must be non-negative")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        return self

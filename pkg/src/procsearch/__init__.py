"""Procedure learning from a single observation trajectory.

Given one demonstrated observation sequence from a deterministic (possibly
aliased) environment, incrementally search for the open-loop action plan
that reproduces it, optionally exploiting repeated subtask structure hinted
at by a sketch or mined from the plan itself.
"""

from .core import (
    Action, Demonstration, Env, Obs, Sketch, Task,
    record_demonstration, read_demo_file, write_demo_file,
)
from .search import (
    ActionSuggester, EpisodeResult, LearnReport, PartialPlan, UniformSuggester,
    UnsatisfiableDemo, backtrack, learn, replay_matches, run_episode,
)
from .sketch import Hypothesis, SketchPool, SketchPoolSuggester
from .repeats import RepeatPoolSuggester, RepeatStore
from .baselines import OracleAlignedSuggester, rmax_learn, ucb_learn
from .envs import ENV_REGISTRY, make_task
from .agents import AGENT_NAMES, ConfigError, run_agent
from .harness import RunConfig, RunRecord, run, sweep, parse_sweep_spec

__version__ = "0.1.0"

__all__ = [
    "Action", "Obs", "Env", "Demonstration", "Sketch", "Task",
    "record_demonstration", "read_demo_file", "write_demo_file",
    "PartialPlan", "EpisodeResult", "LearnReport", "ActionSuggester",
    "UniformSuggester", "UnsatisfiableDemo", "run_episode", "backtrack",
    "learn", "replay_matches",
    "Hypothesis", "SketchPool", "SketchPoolSuggester",
    "RepeatStore", "RepeatPoolSuggester",
    "OracleAlignedSuggester", "rmax_learn", "ucb_learn",
    "ENV_REGISTRY", "make_task", "AGENT_NAMES", "ConfigError", "run_agent",
    "RunConfig", "RunRecord", "run", "sweep", "parse_sweep_spec",
    "__version__",
]

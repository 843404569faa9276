"""Agent registry: plan-search agents (suggester variants) and tabular ones."""

from __future__ import annotations

import random

from .baselines import OracleAlignedSuggester, rmax_learn, ucb_learn
from .core import Demonstration, Task
from .repeats import RepeatPoolSuggester
from .search import LearnReport, UniformSuggester, learn
from .sketch import SketchPoolSuggester


class ConfigError(ValueError):
    pass


def _bps(task, demo, cfg):
    return UniformSuggester()


def _plots_sketch(task, demo, cfg):
    if demo.sketch is None:
        raise ConfigError(f"agent plots_sketch needs a sketch, env {task.name!r} has none")
    return SketchPoolSuggester(demo.sketch, demo.horizon,
                               n_active=cfg.get("n_hypotheses", 4),
                               optimistic=cfg.get("optimistic", True))


def _plots_nosketch(task, demo, cfg):
    return RepeatPoolSuggester(min_repeat_len=cfg.get("min_repeat_len", 2),
                               max_candidates=cfg.get("max_candidates"))


def _bpsosa(task, demo, cfg):
    if task.alignment is None or demo.sketch is None:
        raise ConfigError(f"agent bpsosa needs an oracle alignment, env {task.name!r} has none")
    return OracleAlignedSuggester(task.alignment, demo.sketch)


SUGGESTER_REGISTRY = {
    "bps": _bps,
    "plots_sketch": _plots_sketch,
    "plots_nosketch": _plots_nosketch,
    "bpsosa": _bpsosa,
}

MODEL_REGISTRY = {
    "rmax_plus": rmax_learn,
    "ucb_plus": ucb_learn,
}

AGENT_NAMES = tuple(SUGGESTER_REGISTRY) + tuple(MODEL_REGISTRY)


def run_agent(name: str, task: Task, demo: Demonstration, seed: int,
              budget: int, cfg: dict | None = None) -> LearnReport:
    """One full learning run of the named agent on the task."""
    cfg = cfg or {}
    env = task.env()
    if name in SUGGESTER_REGISTRY:
        suggester = SUGGESTER_REGISTRY[name](task, demo, cfg)
        rng = random.Random(seed)
        return learn(env, demo, suggester, rng, budget,
                     early_reset=cfg.get("early_reset", False))
    if name in MODEL_REGISTRY:
        return MODEL_REGISTRY[name](env, demo, budget)
    raise ConfigError(f"unknown agent {name!r}; known: {sorted(AGENT_NAMES)}")

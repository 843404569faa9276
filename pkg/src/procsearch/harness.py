"""Experiment harness: seeded runs, sweeps, CSV emission, SVG curves.

A run is fully determined by its config (env, agent, seed, flags): rerunning
it produces byte-identical CSV output. Sweeps expand a line-oriented
key=value spec into a config grid, run every cell, and aggregate per
(env, agent) means into a summary CSV plus matched-fraction learning curves.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, field, replace
from pathlib import Path

from .agents import AGENT_NAMES, ConfigError, run_agent
from .envs import ENV_REGISTRY, make_task
from .search import LearnReport

CSV_HEADER = "episode,steps,matched,backtracks,done"


@dataclass(frozen=True)
class RunConfig:
    env: str
    agent: str
    seed: int
    n_hypotheses: int = 4
    max_episodes: int = 30000
    optimistic: bool = True
    early_reset: bool = False
    min_repeat_len: int = 2
    out: str | None = None

    def validate(self) -> None:
        if self.env not in ENV_REGISTRY:
            raise ConfigError(f"unknown environment {self.env!r}; known: {sorted(ENV_REGISTRY)}")
        if self.agent not in AGENT_NAMES:
            raise ConfigError(f"unknown agent {self.agent!r}; known: {sorted(AGENT_NAMES)}")
        if self.max_episodes < 1:
            raise ConfigError("max_episodes must be >= 1")
        if self.n_hypotheses < 1:
            raise ConfigError("n_hypotheses must be >= 1")

    def label(self) -> str:
        return f"{self.env}_{self.agent}_s{self.seed}"


@dataclass
class RunRecord:
    config: RunConfig
    horizon: int
    episodes: int
    total_steps: int
    backtracks: int
    complete: bool
    rows: list = field(default_factory=list)

    def csv(self) -> str:
        lines = [CSV_HEADER]
        for ep, steps, matched, bt, done in self.rows:
            lines.append(f"{ep},{steps},{matched},{bt},{int(done)}")
        return "\n".join(lines) + "\n"


def run(config: RunConfig) -> RunRecord:
    config.validate()
    task = make_task(config.env)
    demo = task.demo()
    cfg = {
        "n_hypotheses": config.n_hypotheses,
        "optimistic": config.optimistic,
        "early_reset": config.early_reset,
        "min_repeat_len": config.min_repeat_len,
    }
    report: LearnReport = run_agent(config.agent, task, demo, config.seed,
                                    config.max_episodes, cfg)
    record = RunRecord(config, demo.horizon, report.episodes, report.total_steps,
                       report.backtracks, report.complete, report.rows)
    if config.out:
        out_dir = Path(config.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{config.label()}.csv").write_text(record.csv())
    return record


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def _parse_seeds(text: str) -> list[int]:
    seeds = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    return seeds


_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def parse_sweep_spec(text: str) -> list[RunConfig]:
    """Blocks of key=value lines (blank-line separated); each block expands
    to the cross product of its envs x agents x seeds."""
    configs: list[RunConfig] = []
    blocks: list[list[str]] = [[]]
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        if line.startswith("#"):
            continue
        blocks[-1].append(line)
    for block in blocks:
        if not block:
            continue
        kv = {}
        for line in block:
            if "=" not in line:
                raise ConfigError(f"bad sweep line (want key=value): {line!r}")
            k, v = line.split("=", 1)
            kv[k.strip()] = v.strip()
        envs = [e.strip() for e in kv.pop("envs", kv.pop("env", "")).split(",") if e.strip()]
        agents = [a.strip() for a in kv.pop("agents", kv.pop("agent", "")).split(",") if a.strip()]
        seeds = _parse_seeds(kv.pop("seeds", kv.pop("seed", "0")))
        if not envs or not agents:
            raise ConfigError("each sweep block needs envs= and agents=")
        extra = {}
        if "n_hypotheses" in kv:
            extra["n_hypotheses"] = int(kv.pop("n_hypotheses"))
        if "max_episodes" in kv:
            extra["max_episodes"] = int(kv.pop("max_episodes"))
        if "min_repeat_len" in kv:
            extra["min_repeat_len"] = int(kv.pop("min_repeat_len"))
        if "optimistic" in kv:
            extra["optimistic"] = _BOOL[kv.pop("optimistic").lower()]
        if "early_reset" in kv:
            extra["early_reset"] = _BOOL[kv.pop("early_reset").lower()]
        if kv:
            raise ConfigError(f"unknown sweep keys: {sorted(kv)}")
        for env in envs:
            for agent in agents:
                for seed in seeds:
                    configs.append(RunConfig(env=env, agent=agent, seed=seed, **extra))
    if not configs:
        raise ConfigError("sweep spec produced no runs")
    return configs


def _run_one(config: RunConfig) -> RunRecord:
    return run(config)


@dataclass
class SweepResult:
    records: list[RunRecord]
    summary_rows: list[dict]
    out_dir: Path | None = None


def summarize(records: list[RunRecord]) -> list[dict]:
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.config.env, rec.config.agent), []).append(rec)
    rows = []
    for (env, agent), recs in sorted(groups.items()):
        eps = [r.episodes for r in recs]
        mean = sum(eps) / len(eps)
        var = sum((e - mean) ** 2 for e in eps) / len(eps)
        rows.append({
            "env": env,
            "agent": agent,
            "runs": len(recs),
            "mean_episodes": mean,
            "std_episodes": math.sqrt(var),
            "mean_steps": sum(r.total_steps for r in recs) / len(recs),
            "complete_rate": sum(r.complete for r in recs) / len(recs),
        })
    return rows


def summary_csv(rows: list[dict]) -> str:
    lines = ["env,agent,runs,mean_episodes,std_episodes,mean_steps,complete_rate"]
    for r in rows:
        lines.append(f"{r['env']},{r['agent']},{r['runs']},{r['mean_episodes']:.3f},"
                     f"{r['std_episodes']:.3f},{r['mean_steps']:.1f},{r['complete_rate']:.2f}")
    return "\n".join(lines) + "\n"


def sweep(configs: list[RunConfig], out_dir: str | Path | None = None,
          jobs: int = 1) -> SweepResult:
    if not configs:
        raise ConfigError("sweep needs at least one run config")
    for c in configs:
        c.validate()
    out_path = Path(out_dir) if out_dir else None
    if out_path:
        out_path.mkdir(parents=True, exist_ok=True)
        configs = [replace(c, out=str(out_path)) for c in configs]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            records = pool.map(_run_one, configs)
    else:
        records = [run(c) for c in configs]
    rows = summarize(records)
    if out_path:
        (out_path / "summary.csv").write_text(summary_csv(rows))
        for env in sorted({c.env for c in configs}):
            svg = learning_curves_svg([r for r in records if r.config.env == env])
            (out_path / f"curves_{env}.svg").write_text(svg)
    return SweepResult(records, rows, out_path)


# ---------------------------------------------------------------------------
# SVG learning curves (x: episode, y: matched fraction of the demonstration)
# ---------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            "#17becf", "#e377c2")


def matched_fraction_curve(record: RunRecord) -> list[float]:
    out = []
    for _, _, matched, _, _ in record.rows:
        out.append(matched / record.horizon)
    return out


def _mean_curve(records: list[RunRecord]) -> list[float]:
    curves = [matched_fraction_curve(r) for r in records]
    if not curves:
        return []
    n = max(len(c) for c in curves)
    out = []
    for i in range(n):
        vals = [c[i] if i < len(c) else (c[-1] if c else 0.0) for c in curves]
        out.append(sum(vals) / len(vals))
    return out


def learning_curves_svg(records: list[RunRecord], width: int = 640, height: int = 400) -> str:
    by_agent: dict[str, list[RunRecord]] = {}
    for r in records:
        by_agent.setdefault(r.config.agent, []).append(r)
    curves = {a: _mean_curve(rs) for a, rs in sorted(by_agent.items())}
    max_x = max((len(c) for c in curves.values()), default=1)
    pad = 45
    px = lambda i: pad + (width - 2 * pad) * (i / max(max_x - 1, 1))
    py = lambda v: height - pad - (height - 2 * pad) * v
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 8}" font-size="12" text-anchor="middle">episode</text>',
        f'<text x="12" y="{height // 2}" font-size="12" transform="rotate(-90 12 {height // 2})" '
        f'text-anchor="middle">matched fraction</text>',
    ]
    for k, (agent, curve) in enumerate(curves.items()):
        if not curve:
            continue
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(i):.1f},{py(v):.1f}" for i, v in enumerate(curve))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{width - pad + 4}" y="{pad + 14 * k}" font-size="11" '
                     f'fill="{color}">{agent}</text>')
    parts.append("</svg>")
    return "\n".join(parts)

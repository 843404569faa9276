"""Command line front end.

    procsearch run --env island --agent bps --seed 0 [--out DIR]
    procsearch sweep --spec sweep.txt [--out DIR] [--jobs N]
    procsearch demo-gen --env cpr --out cpr_demo.txt
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .agents import ConfigError
from .core import write_demo_file
from .envs import make_task
from .harness import RunConfig, parse_sweep_spec, run, sweep


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="procsearch",
                                description="Procedure learning from observation trajectories")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="one seeded learning run")
    pr.add_argument("--env", required=True)
    pr.add_argument("--agent", required=True)
    pr.add_argument("--seed", type=int, required=True)
    pr.add_argument("--n-hypotheses", type=int, default=4)
    pr.add_argument("--max-episodes", type=int, default=30000)
    pr.add_argument("--min-repeat-len", type=int, default=2)
    pr.add_argument("--no-optimistic", action="store_true")
    pr.add_argument("--early-reset", action="store_true")
    pr.add_argument("--out", default=None, help="directory for the per-episode CSV")

    ps = sub.add_parser("sweep", help="run a grid of configs from a spec file")
    ps.add_argument("--spec", required=True)
    ps.add_argument("--out", default="sweep_out")
    ps.add_argument("--jobs", type=int, default=1)

    pd = sub.add_parser("demo-gen", help="write an environment's demonstration file")
    pd.add_argument("--env", required=True)
    pd.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = RunConfig(
                env=args.env, agent=args.agent, seed=args.seed,
                n_hypotheses=args.n_hypotheses, max_episodes=args.max_episodes,
                optimistic=not args.no_optimistic, early_reset=args.early_reset,
                min_repeat_len=args.min_repeat_len, out=args.out,
            )
            record = run(config)
            print(f"env={config.env} agent={config.agent} seed={config.seed} "
                  f"episodes={record.episodes} steps={record.total_steps} "
                  f"backtracks={record.backtracks} complete={record.complete}")
            return 0
        if args.command == "sweep":
            spec_text = Path(args.spec).read_text()
            configs = parse_sweep_spec(spec_text)
            result = sweep(configs, out_dir=args.out, jobs=args.jobs)
            print(f"{len(result.records)} runs -> {result.out_dir}/summary.csv")
            for row in result.summary_rows:
                print(f"  {row['env']:<10} {row['agent']:<16} "
                      f"mean_episodes={row['mean_episodes']:.1f} "
                      f"complete={row['complete_rate']:.2f}")
            return 0
        if args.command == "demo-gen":
            task = make_task(args.env)
            demo = task.demo()
            Path(args.out).write_text(write_demo_file(demo, task.env().n_actions))
            print(f"wrote {args.out} (H={demo.horizon})")
            return 0
    except (ConfigError, KeyError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())

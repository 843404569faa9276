"""Backtracking plan search on a tiny chain and on an aliasing trap.

The searcher replays its confirmed prefix each episode and tries one new
action at the frontier. On the Markov chain nothing ever needs to be
revised; on the trap environment the wrong first action also produces the
demonstrated token, so the search walks into a dead end and has to unroll.
"""

import random

from procsearch import PartialPlan, UniformSuggester, learn, record_demonstration, run_episode
from procsearch.envs.scripted import make_chain, trap_env


def main():
    env, script = make_chain(n_actions=2, horizon=3)
    demo = record_demonstration(env, script)
    print("chain demonstration:", demo.observations)

    plan = PartialPlan(env.n_actions)
    rng = random.Random(0)
    for episode in range(1, 10):
        res = run_episode(env, demo, plan, UniformSuggester(), rng)
        print(f"  episode {episode}: matched {res.matched_prefix_len}/3, "
              f"plan so far {tuple(plan.confirmed)}")
        if res.matched_prefix_len == 3:
            break
    print("learned plan:", tuple(plan.confirmed), "== true script:", script)

    print("\naliasing trap: both first actions emit the demonstrated token")
    env, script = trap_env()
    demo = record_demonstration(env, script)
    report = learn(env, demo, UniformSuggester(), random.Random(0), budget=100)
    print(f"finished in {report.episodes} episodes with "
          f"{report.backtracks} backtrack(s); plan {report.plan} (truth {script})")


if __name__ == "__main__":
    main()

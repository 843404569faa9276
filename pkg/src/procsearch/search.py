"""Backtracking procedure search.

The learner incrementally builds the open-loop action prefix that reproduces
the demonstrated observation sequence. Each episode replays the confirmed
prefix, then tries one untried action at the frontier per mismatch. Matching
actions are confirmed (several can be confirmed in a single episode when a
suggester keeps guessing right); a mismatch burns the rest of the episode
with random actions. When every action at the frontier has been ruled out,
an earlier aliased confirmation must have been wrong, so the plan unrolls
one step and bans the unrolled action at that position.

Action selection is pluggable: BPS uses a uniform suggester, the smarter
agents plug in sketch-hypothesis, repeat-mining or oracle-aligned suggesters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import Action, Demonstration, Env


class UnsatisfiableDemo(RuntimeError):
    """Backtracked past the first position with every action banned."""


@dataclass
class PartialPlan:
    """Confirmed action prefix plus per-position elimination ledgers.

    failed[i] holds actions tried at position i that did not emit the
    demonstrated token (under the current prefix). banned[i] holds actions
    that matched but were unrolled by backtracking. Both lists always have
    exactly len(confirmed)+1 entries; the last one is the frontier ledger.
    """

    n_actions: int
    confirmed: list[Action] = field(default_factory=list)
    failed: list[set[Action]] = field(default_factory=lambda: [set()])
    banned: list[set[Action]] = field(default_factory=lambda: [set()])

    @property
    def frontier(self) -> int:
        return len(self.confirmed)

    def excluded(self) -> set[Action]:
        t = self.frontier
        return self.failed[t] | self.banned[t]

    def frontier_exhausted(self) -> bool:
        return len(self.excluded()) >= self.n_actions

    def confirm(self, a: Action) -> None:
        self.confirmed.append(a)
        self.failed.append(set())
        self.banned.append(set())

    def reject(self, a: Action) -> None:
        self.failed[self.frontier].add(a)

    def check_invariants(self) -> None:
        assert len(self.failed) == len(self.confirmed) + 1
        assert len(self.banned) == len(self.confirmed) + 1
        for i, a in enumerate(self.confirmed):
            assert a not in self.failed[i], "confirmed action marked failed"
        for f, b in zip(self.failed, self.banned):
            assert len(f | b) <= self.n_actions


@dataclass
class EpisodeResult:
    matched_prefix_len: int
    steps_taken: int
    new_action_confirmed: bool
    dead_end: bool


@dataclass
class LearnReport:
    plan: tuple[Action, ...]
    episodes: int
    total_steps: int
    backtracks: int
    complete: bool
    rows: list[tuple[int, int, int, int, bool]] = field(default_factory=list)
    # rows: (episode, steps, matched, cumulative backtracks, done)


class ActionSuggester:
    """Action-selection heuristic plugged into the episode loop.

    suggest() may return None (no suggestion); the loop then samples
    uniformly over actions not yet ruled out at the frontier.
    """

    def suggest(self, plan: PartialPlan, excluded: set[Action]) -> Action | None:
        return None

    def on_confirmed(self, plan: PartialPlan) -> None:
        pass

    def on_failed(self, plan: PartialPlan, a: Action) -> None:
        pass

    def on_backtrack(self, plan: PartialPlan, removed: Action, position: int) -> None:
        pass


class UniformSuggester(ActionSuggester):
    """No heuristic: plain BPS."""


def run_episode(env: Env, demo: Demonstration, plan: PartialPlan,
                suggester: ActionSuggester, rng: random.Random,
                early_reset: bool = False) -> EpisodeResult:
    """One environment episode of at most H steps.

    Replays the confirmed prefix, then works at the frontier until the first
    mismatch (or completion). Signals a dead end without acting if the
    frontier has no candidate actions left.
    """
    horizon = demo.horizon
    if plan.frontier_exhausted():
        return EpisodeResult(plan.frontier, 0, False, dead_end=True)

    env.reset()
    steps = 0
    for a in plan.confirmed:
        env.step(a)
        steps += 1

    confirmed_any = False
    while plan.frontier < horizon:
        t = plan.frontier
        excluded = plan.excluded()
        if len(excluded) >= plan.n_actions:
            # can only happen mid-episode after a backtrack cleared deeper
            # ledgers; treat like a fresh dead-end signal
            return EpisodeResult(plan.frontier, steps, confirmed_any, dead_end=True)
        a = suggester.suggest(plan, excluded)
        if a is None or a in excluded:
            candidates = [x for x in range(plan.n_actions) if x not in excluded]
            a = candidates[rng.randrange(len(candidates))]
        obs = env.step(a)
        steps += 1
        if obs == demo.observations[t]:
            plan.confirm(a)
            confirmed_any = True
            suggester.on_confirmed(plan)
        else:
            plan.reject(a)
            suggester.on_failed(plan, a)
            if not early_reset:
                while steps < horizon:
                    env.step(rng.randrange(plan.n_actions))
                    steps += 1
            break
    return EpisodeResult(plan.frontier, steps, confirmed_any, dead_end=False)


def backtrack(plan: PartialPlan, suggester: ActionSuggester) -> None:
    """Unroll the last confirmed action after a dead end.

    The unrolled action is banned at its position; ledgers beyond that
    position are dropped because their context (the prefix) has changed.
    Failures recorded at the position itself are kept: the prefix below it
    is unchanged, so they remain valid eliminations.
    """
    if not plan.confirmed:
        raise UnsatisfiableDemo("dead end at position 0 with every action ruled out")
    removed = plan.confirmed.pop()
    pos = len(plan.confirmed)
    del plan.failed[pos + 1:]
    del plan.banned[pos + 1:]
    plan.banned[pos].add(removed)
    suggester.on_backtrack(plan, removed, pos)


def learn(env: Env, demo: Demonstration, suggester: ActionSuggester,
          rng: random.Random, budget: int, early_reset: bool = False) -> LearnReport:
    """Run episodes (and backtracks) until the full plan is found or the
    episode budget runs out."""
    if budget < 1:
        raise ValueError("budget must be >= 1 episode")
    plan = PartialPlan(env.n_actions)
    episodes = 0
    total_steps = 0
    backtracks = 0
    rows = []
    while plan.frontier < demo.horizon and episodes < budget:
        while plan.frontier_exhausted():
            backtrack(plan, suggester)
            backtracks += 1
        res = run_episode(env, demo, plan, suggester, rng, early_reset)
        if res.dead_end:
            continue
        episodes += 1
        total_steps += res.steps_taken
        done = plan.frontier >= demo.horizon
        rows.append((episodes, res.steps_taken, plan.frontier, backtracks, done))
    return LearnReport(
        plan=tuple(plan.confirmed),
        episodes=episodes,
        total_steps=total_steps,
        backtracks=backtracks,
        complete=plan.frontier >= demo.horizon,
        rows=rows,
    )


def replay_matches(env: Env, demo: Demonstration, actions) -> bool:
    """Soundness check: does executing `actions` from reset reproduce Z*?"""
    if len(actions) != demo.horizon:
        return False
    env.reset()
    return all(env.step(a) == z for a, z in zip(actions, demo.observations))

"""Scripted test environments: Markov chains and aliased automata.

ScriptedEnv realizes the minimal deterministic environment: one true action
sequence, one fresh token per on-script prefix, and an absorbing "OFF" sink
once the agent deviates. With an `aliasing_map` some tokens can be merged,
which removes the Markov property without changing the dynamics.

AutomatonEnv is an explicit deterministic finite automaton over latent
states. It can express richer aliasing traps than token merging: a wrong
action may emit the demonstrated token while moving to a latent state from
which the rest of the demonstration is unreachable.
"""

from __future__ import annotations

import random

from ..core import Action, Env, Obs, intern_token

OFF_TOKEN = intern_token("OFF")


class ScriptedEnv(Env):
    def __init__(self, n_actions: int, script, tokens=None, start_token: str = "S0",
                 aliasing_map: dict[str, str] | None = None):
        super().__init__()
        self.n_actions = n_actions
        self.script = tuple(script)
        if any(not (0 <= a < n_actions) for a in self.script):
            raise ValueError("script action out of range")
        if tokens is None:
            tokens = [f"z{i + 1}" for i in range(len(self.script))]
        if len(tokens) != len(self.script):
            raise ValueError("need one token per script position")
        alias = aliasing_map or {}
        self.tokens = tuple(intern_token(alias.get(t, t)) for t in tokens)
        self.start_token = intern_token(alias.get(start_token, start_token))
        self._i = 0
        self._on_script = True

    def _reset(self) -> Obs:
        self._i = 0
        self._on_script = True
        return self.start_token

    def _step(self, a: Action) -> Obs:
        if self._on_script and self._i < len(self.script) and a == self.script[self._i]:
            tok = self.tokens[self._i]
            self._i += 1
            return tok
        self._on_script = False
        return OFF_TOKEN


class AutomatonEnv(Env):
    """Deterministic automaton: trans[state][action] -> (next_state, token)."""

    def __init__(self, n_actions: int, trans, start_state: int = 0, start_token: str = "S0"):
        super().__init__()
        self.n_actions = n_actions
        self.trans = tuple(tuple((s2, intern_token(t)) for s2, t in row) for row in trans)
        if any(len(row) != n_actions for row in self.trans):
            raise ValueError("each state needs one transition per action")
        self.start_state = start_state
        self.start_token = intern_token(start_token)
        self._s = start_state

    def _reset(self) -> Obs:
        self._s = self.start_state
        return self.start_token

    def _step(self, a: Action) -> Obs:
        self._s, tok = self.trans[self._s][a]
        return tok


def trap_env() -> tuple[AutomatonEnv, tuple[Action, ...]]:
    """Two-action aliased environment with a wrong-but-matching first action.

    From the start, both actions emit "z1", but only action 0 reaches the
    state where "z2" can be produced. An agent that confirms action 1 at step
    one dead-ends at step two and must backtrack.
    """
    #            a=0                a=1
    trans = [
        [(1, "z1"), (2, "z1")],   # 0: start
        [(3, "z2"), (4, "OFF")],  # 1: good branch
        [(4, "OFF"), (4, "OFF")], # 2: trap (aliased with state 1 via z1)
        [(3, "z3"), (4, "OFF")],  # 3: after z2; a=0 loops emitting z3
        [(4, "OFF"), (4, "OFF")], # 4: absorbing sink
    ]
    return AutomatonEnv(2, trans), (0, 0, 0)


def random_aliased_env(rng: random.Random, n_actions: int, horizon: int,
                       n_tokens: int = 3) -> tuple[AutomatonEnv, tuple[Action, ...]]:
    """Random deterministic automaton plus a realizable solution script.

    A small token alphabet forces aliasing. The solution walks a fresh chain
    of states so the demonstration is always realizable; all other
    transitions are wired randomly into the same state pool.
    """
    n_states = horizon + 2  # chain + sink
    sink = n_states - 1
    toks = [f"t{k}" for k in range(n_tokens)]
    script = tuple(rng.randrange(n_actions) for _ in range(horizon))
    trans = [[None] * n_actions for _ in range(n_states)]
    for i, a in enumerate(script):
        trans[i][a] = (i + 1, rng.choice(toks))
    for s in range(n_states):
        for a in range(n_actions):
            if trans[s][a] is None:
                # off-solution: random token, random target (sink-biased)
                target = sink if rng.random() < 0.5 else rng.randrange(n_states)
                trans[s][a] = (target, rng.choice(toks))
    return AutomatonEnv(n_actions, trans, start_state=0, start_token="start"), script


def make_chain(n_actions: int = 2, horizon: int = 3) -> tuple[ScriptedEnv, tuple[Action, ...]]:
    script = tuple(i % n_actions for i in range(horizon))
    return ScriptedEnv(n_actions, script), script


def make_markov_scripted(n_actions: int = 5, horizon: int = 20, seed: int = 12345):
    script = tuple(random.Random(seed).randrange(n_actions) for _ in range(horizon))
    return ScriptedEnv(n_actions, script), script

"""Shared environment contract, demonstrations and sketches.

Environments here are deterministic state machines with a fixed discrete
action set. Observations are opaque interned string tokens compared only by
equality; two distinct latent states may emit the same token (perceptual
aliasing), which is what makes the search problem interesting.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

Action = int
Obs = str  # interned token; compare with ==, never parse


def intern_token(name: str) -> Obs:
    return sys.intern(name)


class ContractViolation(ValueError):
    """An agent called an environment outside its contract."""


class Env:
    """Deterministic, possibly partially observable environment.

    Subclasses implement `_reset() -> Obs` and `_step(a) -> Obs`. Stepping is
    a pure function of (latent state, action); replaying the same action
    sequence from reset always yields a token-identical observation sequence.
    """

    n_actions: int = 0
    action_names: tuple[str, ...] = ()

    def __init__(self):
        self._was_reset = False

    def reset(self) -> Obs:
        self._was_reset = True
        return self._reset()

    def step(self, a: Action) -> Obs:
        if not self._was_reset:
            raise ContractViolation("step() before reset()")
        if not isinstance(a, int) or not (0 <= a < self.n_actions):
            raise ContractViolation(f"invalid action id {a!r} (|A|={self.n_actions})")
        return self._step(a)

    def _reset(self) -> Obs:
        raise NotImplementedError

    def _step(self, a: Action) -> Obs:
        raise NotImplementedError


@dataclass(frozen=True)
class Sketch:
    """Ordered subtask labels annotating a demonstration.

    Each label names a fixed, non-empty open-loop action sequence that is
    unknown to the learner.
    """

    elements: tuple[str, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("sketch must have at least one element")

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def labels(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for b in self.elements:
            seen.setdefault(b)
        return tuple(seen)

    def repeated_labels(self) -> tuple[str, ...]:
        counts: dict[str, int] = {}
        for b in self.elements:
            counts[b] = counts.get(b, 0) + 1
        return tuple(b for b in self.labels if counts[b] >= 2)


@dataclass(frozen=True)
class Demonstration:
    """The target observation sequence Z* plus an optional sketch."""

    observations: tuple[Obs, ...]
    sketch: Sketch | None = None

    def __post_init__(self):
        if not self.observations:
            raise ValueError("demonstration must have H >= 1")

    @property
    def horizon(self) -> int:
        return len(self.observations)

    @property
    def token_set(self) -> frozenset[Obs]:
        return frozenset(self.observations)


def record_demonstration(env: Env, solution_actions, sketch: Sketch | None = None) -> Demonstration:
    """Execute `solution_actions` from reset and record the emitted tokens."""
    env.reset()
    obs = tuple(env.step(a) for a in solution_actions)
    return Demonstration(observations=obs, sketch=sketch)


# ---------------------------------------------------------------------------
# Demonstration file format
#
#   H=<int> A=<int>
#   <one observation token per line>
#   SKETCH <label> <label> ...     (optional trailer)
# ---------------------------------------------------------------------------


def write_demo_file(demo: Demonstration, n_actions: int) -> str:
    for tok in demo.observations:
        if not tok or tok.split() != [tok]:
            raise ValueError(f"token not serializable on one line: {tok!r}")
    lines = [f"H={demo.horizon} A={n_actions}"]
    lines.extend(demo.observations)
    if demo.sketch is not None:
        lines.append("SKETCH " + " ".join(demo.sketch.elements))
    return "\n".join(lines) + "\n"


def read_demo_file(text: str) -> tuple[Demonstration, int]:
    """Parse the demonstration format; returns (demo, n_actions)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty demonstration file")
    header = lines[0].split()
    try:
        h = int(header[0].removeprefix("H="))
        a = int(header[1].removeprefix("A="))
    except (IndexError, ValueError) as e:
        raise ValueError(f"bad header line: {lines[0]!r}") from e
    sketch = None
    body = lines[1:]
    if body and body[-1].startswith("SKETCH"):
        sketch = Sketch(tuple(body[-1].split()[1:]))
        body = body[:-1]
    if len(body) != h:
        raise ValueError(f"header says H={h} but file has {len(body)} tokens")
    return Demonstration(tuple(intern_token(t) for t in body), sketch), a


@dataclass(frozen=True)
class Task:
    """A registered environment bundled with its scripted solution.

    The solution and alignment are generator-side knowledge: agents never see
    them, except for the oracle-alignment baseline which is given `alignment`
    (per-sketch-element [start, end) spans into the demonstration).
    """

    name: str
    make_env: "callable"
    solution: tuple[Action, ...]
    sketch: Sketch | None = None
    alignment: tuple[tuple[int, int], ...] | None = None

    def env(self) -> Env:
        return self.make_env()

    def demo(self) -> Demonstration:
        return record_demonstration(self.make_env(), self.solution, self.sketch)


def spans_from_lengths(lengths) -> tuple[tuple[int, int], ...]:
    """[3, 1, 2] -> ((0, 3), (3, 4), (4, 6)); used to build oracle alignments."""
    spans = []
    pos = 0
    for n in lengths:
        if n < 1:
            raise ValueError("every sketch element spans at least one action")
        spans.append((pos, pos + n))
        pos += n
    return tuple(spans)

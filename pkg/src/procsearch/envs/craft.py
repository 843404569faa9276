"""Craft gridworld: move on a 2-D map, collect wood, craft planks at a
workshop, build a raft to cross water, pick up gems.

Map legend: `#` wall, `~` water, `W` wood, `G` gem, `K` workshop, `I` island,
`@` agent, `.` empty. The observation token is a canonical serialization of
(position, inventory, grid), so equal tokens imply equal latent state and
the observation space is Markov.

Two shipped tasks: Island (collect three woods, craft planks, raft across to
the island; repeated subtask structure) and Gem (short errand with no
repeated subtasks, used as the no-structure control).
"""

from __future__ import annotations

from collections import Counter

from ..core import Action, Env, Obs, Sketch, Task, spans_from_lengths

UP, DOWN, LEFT, RIGHT, USE = range(5)
ACTION_NAMES = ("up", "down", "left", "right", "use")
_MOVES = {UP: (-1, 0), DOWN: (1, 0), LEFT: (0, -1), RIGHT: (0, 1)}
_GLYPHS = set("#~WGKI@.")

RAFT_PLANKS = 2
RAFT_WOOD = 1


class MapError(ValueError):
    pass


def parse_map(text: str):
    rows = [list(line) for line in text.strip("\n").splitlines()]
    if not rows:
        raise MapError("empty map")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MapError("map is not rectangular")
    agent = None
    for r, row in enumerate(rows):
        for c, g in enumerate(row):
            if g not in _GLYPHS:
                raise MapError(f"unknown glyph {g!r} at ({r},{c})")
            if g == "@":
                if agent is not None:
                    raise MapError("multiple agent cells")
                agent = (r, c)
                rows[r][c] = "."
    if agent is None:
        raise MapError("no agent cell")
    return rows, agent


class GridCraftEnv(Env):
    n_actions = 5
    action_names = ACTION_NAMES

    def __init__(self, map_text: str):
        super().__init__()
        self._grid0, self._start = parse_map(map_text)
        self.grid = [row[:] for row in self._grid0]
        self.pos = self._start
        self.inventory: Counter = Counter()

    def _reset(self) -> Obs:
        self.grid = [row[:] for row in self._grid0]
        self.pos = self._start
        self.inventory = Counter()
        return self._token()

    def _passable(self, r: int, c: int) -> bool:
        if not (0 <= r < len(self.grid) and 0 <= c < len(self.grid[0])):
            return False
        cell = self.grid[r][c]
        if cell in (".", "I"):
            return True
        if cell == "~":
            return self.inventory["raft"] > 0
        return False

    def _interact(self) -> bool:
        r0, c0 = self.pos
        inv = self.inventory
        for a in (UP, DOWN, LEFT, RIGHT):
            dr, dc = _MOVES[a]
            r, c = r0 + dr, c0 + dc
            if not (0 <= r < len(self.grid) and 0 <= c < len(self.grid[0])):
                continue
            cell = self.grid[r][c]
            if cell == "W":
                self.grid[r][c] = "."
                inv["wood"] += 1
                return True
            if cell == "G":
                self.grid[r][c] = "."
                inv["gem"] += 1
                return True
            if cell == "K" and inv["wood"] >= 1:
                inv["wood"] -= 1
                inv["plank"] += 1
                return True
            if cell == "~" and inv["plank"] >= RAFT_PLANKS and inv["wood"] >= RAFT_WOOD:
                inv["plank"] -= RAFT_PLANKS
                inv["wood"] -= RAFT_WOOD
                inv["raft"] += 1
                return True
        return False

    def _step(self, a: Action) -> Obs:
        # Ineffective actions leave the state alone but emit an action-tagged
        # echo so no two consecutive steps ever share a token (the emission is
        # a pure function of state and action, which keeps replays identical).
        if a == USE:
            effective = self._interact()
        else:
            dr, dc = _MOVES[a]
            r, c = self.pos[0] + dr, self.pos[1] + dc
            effective = self._passable(r, c)
            if effective:
                self.pos = (r, c)
        tok = self._token()
        return tok if effective else f"{tok}|no:{ACTION_NAMES[a]}"

    def _token(self) -> Obs:
        inv = "+".join(f"{k}:{v}" for k, v in sorted(self.inventory.items()) if v) or "-"
        rows = "/".join("".join(row) for row in self.grid)
        return f"{self.pos[0]},{self.pos[1]}|{inv}|{rows}"


def load_grid_map(text: str) -> GridCraftEnv:
    return GridCraftEnv(text)


ISLAND_MAP = """\
...KK...####..
........####..
........####..
........~~~~..
........~~~~..
........~~~~..
........~~~~I.
........~~~~..
..WWW...~~~~..
@.......####..
"""

GEM_MAP = """\
...........
...W.......
...........
...........
...........
.@...K...G.
...........
"""


def _segments_to_task(name: str, map_text: str, segments) -> Task:
    solution = tuple(a for _, seg in segments for a in seg)
    sketch = Sketch(tuple(lbl for lbl, _ in segments))
    spans = spans_from_lengths(len(seg) for _, seg in segments)
    return Task(name=name, make_env=lambda: GridCraftEnv(map_text),
                solution=solution, sketch=sketch, alignment=spans)


def island_segments():
    approach = (UP,) * 8 + (RIGHT,) * 2
    go_wood = (DOWN,) * 6
    chop = (USE,)
    go_shop = (UP,) * 6 + (RIGHT,)
    craft = (USE,)
    to_water = (DOWN,) * 5 + (RIGHT,) * 2
    make_raft = (USE,)
    cross = (RIGHT,) * 4
    land = (RIGHT,)
    return [
        ("approach", approach),
        ("go_wood", go_wood), ("chop", chop), ("go_shop", go_shop), ("craft", craft),
        ("go_wood", go_wood), ("chop", chop), ("go_shop", go_shop), ("craft", craft),
        ("go_wood", go_wood), ("chop", chop), ("go_shop", go_shop),
        ("to_water", to_water), ("make_raft", make_raft), ("cross", cross), ("land", land),
    ]


def gem_segments():
    return [
        ("to_wood", (UP,) * 4 + (RIGHT,)),
        ("chop_wood", (USE,)),
        ("to_shop", (DOWN,) * 3 + (RIGHT,) * 3),
        ("craft_plank", (USE,)),
        ("to_gem", (UP,) * 2 + (RIGHT,) * 4 + (DOWN,) * 2),
        ("take_gem", (USE,)),
    ]


def make_island_task() -> Task:
    return _segments_to_task("island", ISLAND_MAP, island_segments())


def make_gem_task() -> Task:
    return _segments_to_task("gem", GEM_MAP, gem_segments())

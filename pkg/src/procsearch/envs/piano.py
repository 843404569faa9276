"""Piano domain: a five-fingered hand on a keyboard, observed only by sound.

Actions: press one of five fingers (sounding the key under it), shift the
whole wrist up or down one key, or move the thumb up or down relative to the
wrist (range clamped at three keys below the hand). Press actions emit the
note token of the struck key; movement actions emit "silence". The agent
never observes the hand position, so the observation space aliases heavily:
every movement looks identical, and the same note can be produced from
several hand positions.

The shipped task plays a 64-note piece assembled from five melodic figures,
several of which repeat back to back.
"""

from __future__ import annotations

from ..core import Action, Demonstration, Env, Obs, Sketch, Task, intern_token, spans_from_lengths

PRESS_1, PRESS_2, PRESS_3, PRESS_4, PRESS_5, WRIST_UP, WRIST_DOWN, THUMB_UP, THUMB_DOWN = range(9)
ACTION_NAMES = ("press_1", "press_2", "press_3", "press_4", "press_5",
                "wrist_up", "wrist_down", "thumb_up", "thumb_down")

N_KEYS = 24
THUMB_MIN = -3
SILENCE = intern_token("silence")

_LETTERS = ("C", "D", "E", "F", "G", "A", "B")


def key_name(k: int) -> str:
    return f"{_LETTERS[k % 7]}{3 + k // 7}"


class PianoEnv(Env):
    n_actions = 9
    action_names = ACTION_NAMES

    def __init__(self, start_wrist: int = 10, score=None):
        super().__init__()
        self.start_wrist = start_wrist
        self.score = tuple(score) if score else ()
        self.wrist = start_wrist
        self.thumb = 0

    def _reset(self) -> Obs:
        self.wrist = self.start_wrist
        self.thumb = 0
        return SILENCE

    def _pressed_key(self, finger: int) -> int:
        offset = self.thumb if finger == 1 else finger - 1
        return min(max(self.wrist + offset, 0), N_KEYS - 1)

    def _step(self, a: Action) -> Obs:
        if a <= PRESS_5:
            return intern_token(key_name(self._pressed_key(a + 1)))
        if a == WRIST_UP:
            self.wrist = min(self.wrist + 1, N_KEYS - 1)
        elif a == WRIST_DOWN:
            self.wrist = max(self.wrist - 1, 0)
        elif a == THUMB_UP:
            self.thumb = min(self.thumb + 1, 0)
        else:
            self.thumb = max(self.thumb + -1, THUMB_MIN)
        return SILENCE


# Melodic figures (fixed action sequences; notes depend on where the hand is)
FIGURES = {
    "triad_wide": (PRESS_1, PRESS_3, PRESS_5),
    "triad_close": (PRESS_1, PRESS_2, PRESS_4),
    "rise": (WRIST_UP, PRESS_1, PRESS_3, PRESS_5),
    "fall": (WRIST_DOWN, PRESS_1, PRESS_2, PRESS_4),
    "turn": (THUMB_DOWN, PRESS_1, THUMB_UP, PRESS_1),
}

PIECE = (
    "triad_wide", "triad_wide", "turn", "turn", "triad_close", "triad_close",
    "rise", "triad_wide", "turn", "fall", "triad_close", "turn",
    "rise", "triad_wide", "turn", "fall", "triad_close", "turn",
    "rise", "triad_wide", "turn", "fall", "triad_wide", "turn",
)


def piano_segments():
    return [(name, FIGURES[name]) for name in PIECE]


def make_piano_task() -> Task:
    segments = piano_segments()
    solution = tuple(a for _, seg in segments for a in seg)
    score = _score_of(solution)
    return Task(
        name="piano",
        make_env=lambda: PianoEnv(score=score),
        solution=solution,
        sketch=Sketch(tuple(PIECE)),
        alignment=spans_from_lengths(len(seg) for _, seg in segments),
    )


def _score_of(solution) -> tuple[str, ...]:
    env = PianoEnv()
    env.reset()
    return tuple(tok for tok in (env.step(a) for a in solution) if tok != SILENCE)


def notes_only_view(demo: Demonstration) -> Demonstration:
    """Sensitivity helper: the demonstration with movement silences dropped.

    Only the full per-action trace is runnable (one observation per action);
    this view exists to report note-count statistics alongside it.
    """
    notes = tuple(t for t in demo.observations if t != SILENCE)
    return Demonstration(notes, demo.sketch)


# Score file: one note name per line, then a `SKETCH <label>...` trailer.

def write_score_file(notes, sketch: Sketch | None = None) -> str:
    lines = list(notes)
    if sketch is not None:
        lines.append("SKETCH " + " ".join(sketch.elements))
    return "\n".join(lines) + "\n"


def read_score_file(text: str) -> tuple[tuple[str, ...], Sketch | None]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    sketch = None
    if lines and lines[-1].startswith("SKETCH"):
        sketch = Sketch(tuple(lines[-1].split()[1:]))
        lines = lines[:-1]
    return tuple(intern_token(t) for t in lines), sketch

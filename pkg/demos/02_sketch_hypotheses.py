"""The sketch-hypothesis machinery on the five-element worked example.

Action names: e, f, g. Sketch (b1, b2, b1, b3, b1): the plan prefix
(e, f, g, e, f) supports two instantiations of b1, with different
implications for the rest of the procedure.
"""

from procsearch import Sketch
from procsearch.sketch import Hypothesis, SketchPool

E, F, G = 0, 1, 2
NAME = {E: "e", F: "f", G: "g"}


def show(h):
    pretty = {lbl: tuple(NAME[a] for a in seq) for lbl, seq in sorted(h.assigned.items())}
    print(f"  score={h.score()}  {pretty}")


def main():
    sketch = Sketch(("b1", "b2", "b1", "b3", "b1"))
    pool = SketchPool(sketch, horizon=8, n_active=4)

    plan = [E, F, G, E]
    for t in range(1, len(plan) + 1):
        pool.on_confirmed(plan[:t])
    print("after plan (e,f,g,e) the pool holds:")
    for h in pool.active + pool.frozen:
        if h.assigned:
            show(h)

    blank = Hypothesis.blank(tuple(sketch.elements))
    for a in plan:
        blank.advance(a)
    suggestion = blank.suggest(bytes(plan))
    print("optimistic suggestion of the assignment-free hypothesis:",
          NAME[suggestion], "(assume b1=(e,f) is repeating right now)")

    plan.append(F)
    pool.on_confirmed(plan)
    print("\none step later, plan (e,f,g,e,f) adds the longer instantiation:")
    for h in pool.active + pool.frozen:
        if h.assigned:
            show(h)
    print("the b1=(e,f) hypothesis scores 2: if it is right, the final two")
    print("sketch elements still owed contain one more b1 worth two actions.")


if __name__ == "__main__":
    main()

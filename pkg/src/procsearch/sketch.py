"""Sketch-hypothesis exploration.

A hypothesis is a partial map from sketch labels to action subsequences plus
an alignment of consumed sketch elements onto plan positions. Alignments mix
exact segments (for elements whose label has an assignment) with ambiguous
region blocks: a region covers a known span of the plan with several
unassigned elements whose individual boundaries are not yet pinned. As the
plan grows a hypothesis advances like an automaton: inside an assigned
element it predicts (and can be refuted by) the next action; otherwise it
sits in an open run of elements it absorbs without claims.

New assignments come only from consistent evidence. The first repeated label
without an assignment (the "main" label) gets a candidate content exactly
when that content has visibly repeated, with the repeat ending at the end of
the plan: one child per candidate (content length, first-occurrence
position). Closing the stretch up to the repeat also closes the elements
before and between the two occurrences; a stretch of exactly one element has
its content immediately implied and assigned, a longer stretch stays an
ambiguous region. Separately, a hypothesis whose open run is followed by an
already-assigned element spawns a child that enters that element as soon as
the arriving action could be its first action: those children are the
distinct resolutions of an ambiguous alignment.

Ranking and selection use the effective score: the sum of assigned
subtask lengths over the remaining sketch, plus, when the
optimistic rule has a live match, the savings its hypothesized main-label
content would add. The assignment-free blank hypothesis permanently holds
one of the N1 tracked slots: it cannot be contradicted, it regenerates
candidates, and it guarantees the agent degenerates to plain backtracking
search when no structure matches (with N1=1 the agent tracks nothing but
the blank and runs on optimism alone). The remaining slots go to the best
scorers; everything else is frozen verbatim and revalidated only if thawed.
Only tracked hypotheses are updated, branch, and suggest, so a small active
set genuinely loses information: hypotheses frozen out miss their branching
windows. A hypothesis whose suggestion misses merely becomes ineligible at
that position (the action lands in the frontier's failed set); it is
eliminated only when a confirmed action contradicts its alignment.
"""

from __future__ import annotations

from .core import Action, Sketch
from .search import ActionSuggester, PartialPlan


class Hypothesis:
    """One partial sketch instantiation with a concrete-enough alignment.

    layout holds closed blocks as (elem_lo, elem_hi, pos_lo, pos_end) in
    element order; single-element blocks of assigned labels are exact
    segments, multi-element blocks are ambiguous regions. The open state is
    either mode A (inside element `elem`, `offset` actions consumed of its
    assignment) or an open run starting at element `run_elem` that has
    absorbed the plan since position `run_pos0`.
    """

    __slots__ = ("sketch", "assigned", "layout", "elem", "offset",
                 "run_elem", "run_pos0", "consumed", "created")

    def __init__(self, sketch: tuple[str, ...], assigned: dict, layout: list,
                 consumed: int, created: int = 0):
        self.sketch = sketch
        self.assigned = assigned
        self.layout = layout
        self.consumed = consumed
        self.created = created
        self.elem = 0
        self.offset = 0
        self.run_elem: int | None = None
        self.run_pos0 = 0

    @classmethod
    def blank(cls, sketch: tuple[str, ...]) -> "Hypothesis":
        h = cls(sketch, {}, [], 0)
        h._enter(0, 0)
        return h

    # -- alignment automaton ------------------------------------------------

    @property
    def is_complete(self) -> bool:
        return self.elem >= len(self.sketch)

    def _enter(self, j: int, pos: int) -> None:
        self.elem = j
        self.offset = 0
        if j >= len(self.sketch):
            self.run_elem = None
            return
        if self.sketch[j] in self.assigned:
            self.run_elem = None
        else:
            self.run_elem = j
            self.run_pos0 = pos

    def advance(self, a: Action) -> bool:
        """Consume one confirmed plan action; False means the hypothesis now
        contradicts the plan and must be eliminated."""
        if self.is_complete:
            return False  # alignment claims the procedure already ended
        if self.run_elem is not None:
            self.consumed += 1
            return True
        content = self.assigned[self.sketch[self.elem]]
        if a != content[self.offset]:
            return False
        self.offset += 1
        self.consumed += 1
        if self.offset == len(content):
            self.layout.append((self.elem, self.elem, self.consumed - len(content), self.consumed))
            self._enter(self.elem + 1, self.consumed)
        return True

    def consumed_elements(self) -> int:
        """How many sketch elements the alignment has fully consumed (the
        first element of an open run counts as not yet consumed)."""
        if self.is_complete:
            return len(self.sketch)
        if self.run_elem is not None:
            return self.run_elem
        return self.elem

    def key(self):
        return (tuple(sorted(self.assigned.items())), tuple(self.layout),
                self.elem, self.offset, self.run_elem, self.run_pos0, self.consumed)

    def _shell(self) -> "Hypothesis":
        h = Hypothesis(self.sketch, dict(self.assigned), list(self.layout), self.consumed)
        h.elem, h.offset = self.elem, self.offset
        h.run_elem, h.run_pos0 = self.run_elem, self.run_pos0
        return h

    # -- scoring (maximum future reduction in learning time) -----------------

    def score(self) -> int:
        if self.is_complete:
            return 0
        if self.run_elem is not None:
            start = self.run_elem
        else:
            start = self.elem + (1 if self.offset > 0 else 0)
        assigned = self.assigned
        return sum(len(assigned[lbl]) for lbl in self.sketch[start:] if lbl in assigned)

    # -- structural helpers ----------------------------------------------------

    def main_label(self) -> str | None:
        """First repeated sketch label without an assignment, in sketch order."""
        counts: dict[str, int] = {}
        for lbl in self.sketch:
            counts[lbl] = counts.get(lbl, 0) + 1
        for lbl in self.sketch:
            if counts[lbl] >= 2 and lbl not in self.assigned:
                return lbl
        return None

    def _min_span(self, lo: int, hi: int) -> int:
        """Minimum plan positions elements lo..hi-1 can occupy."""
        total = 0
        for j in range(lo, hi):
            lbl = self.sketch[j]
            total += len(self.assigned[lbl]) if lbl in self.assigned else 1
        return total

    def _main_occurrences(self):
        """Main label plus its first occurrence and the occurrence that could
        be repeating now (the first one at or after the open run)."""
        m = self.main_label()
        if m is None or self.run_elem is None:
            return None
        occ = [j for j, lbl in enumerate(self.sketch) if lbl == m]
        j1 = occ[0]
        rep = next((j for j in occ if j >= self.run_elem and j > j1), None)
        if rep is None:
            return None
        return m, j1, rep

    def _first_occurrence_site(self, j1: int):
        """Where the main label's first occurrence could start.

        Returns (lo, cap, hi_base): the earliest start position, the largest
        content length the enclosing structure admits, and the base for the
        per-length latest start (latest start = hi_base - length; None means
        unconstrained). A pinned element returns None.
        """
        if self.run_elem is not None and j1 >= self.run_elem:
            lo = self.run_pos0 + self._min_span(self.run_elem, j1)
            return lo, self.consumed, None
        for elem_lo, elem_hi, pos_lo, pos_end in self.layout:
            if elem_lo <= j1 <= elem_hi:
                if elem_lo == elem_hi:
                    return None
                lo = pos_lo + self._min_span(elem_lo, j1)
                hi_base = pos_end - self._min_span(j1 + 1, elem_hi + 1)
                return lo, hi_base - lo, hi_base
        return None

    # -- suggestion -----------------------------------------------------------

    def optimistic_claim(self, pb: bytes):
        """In an open run, interpret the plan suffix as an in-progress repeat
        of the main label: its first occurrence started as long ago as the
        alignment allows and is repeating right now. Returns the continuation
        action, the assumed content length, and the repeat's element index.
        """
        found = self._main_occurrences()
        if found is None:
            return None
        m, j1, rep = found
        t = self.consumed
        site = self._first_occurrence_site(j1)
        if site is None:
            return None
        lo1, cap, hi_base = site
        mid_min = self._min_span(j1 + 1, rep)
        lo_rep = self.run_pos0 + self._min_span(self.run_elem, rep)
        r_hi = t - lo_rep
        if r_hi >= cap:
            # a region-buried first occurrence is only reasoned about while
            # the in-progress repeat could still fit the region entirely
            return None
        for r in range(r_hi, 0, -1):
            s2 = t - r
            p_cap = s2 - mid_min - (r + 1)
            if hi_base is not None:
                p_cap = min(p_cap, hi_base - (r + 1))
            if p_cap < lo1:
                continue
            suffix = pb[t - r:t]
            if j1 == self.run_elem:
                p = self.run_pos0
                if p > p_cap or pb[p:p + r] != suffix:
                    continue
            else:
                p = pb.find(suffix, lo1, p_cap + r)
                if p == -1:
                    continue
            return pb[p + r], s2 - mid_min - p, rep
        return None

    def suggest(self, pb: bytes, optimistic: bool = True) -> Action | None:
        """Next action according to this hypothesis, None if it has no claim.

        Inside an assigned element the next action is read off the
        assignment; in an open run the optimistic rule answers (when on).
        """
        if self.is_complete:
            return None
        if self.run_elem is None:
            return self.assigned[self.sketch[self.elem]][self.offset]
        if not optimistic:
            return None
        claim = self.optimistic_claim(pb)
        return None if claim is None else claim[0]

    def proposal(self, pb: bytes, optimistic: bool = True):
        """(suggested action, effective score) or None if nothing to claim."""
        if self.is_complete:
            return None
        if self.run_elem is None:
            return self.assigned[self.sketch[self.elem]][self.offset], self.score()
        if not optimistic:
            return None
        claim = self.optimistic_claim(pb)
        if claim is None:
            return None
        a, length, rep = claim
        m = self.sketch[rep]
        repeats = sum(1 for lbl in self.sketch[rep:] if lbl == m)
        return a, self.score() + repeats * length

    def effective_score(self, pb: bytes, optimistic: bool = True) -> int:
        """Base score plus, when the optimistic rule has a live match, the
        reduction its hypothesized main-label assignment would add."""
        got = self.proposal(pb, optimistic)
        return self.score() if got is None else max(self.score(), got[1])

    # -- consistency ----------------------------------------------------------

    def is_consistent(self, plan_actions) -> bool:
        """Replay the alignment against the plan (used when thawing frozen
        hypotheses and in tests; active ones stay consistent incrementally)."""
        if self.consumed > len(plan_actions):
            return False
        for elem_lo, elem_hi, pos_lo, pos_end in self.layout:
            if elem_lo == elem_hi and self.sketch[elem_lo] in self.assigned:
                content = self.assigned[self.sketch[elem_lo]]
                if pos_end - pos_lo != len(content):
                    return False
                if tuple(plan_actions[pos_lo:pos_end]) != content:
                    return False
        if self.run_elem is None and not self.is_complete and self.offset:
            content = self.assigned[self.sketch[self.elem]]
            got = tuple(plan_actions[self.consumed - self.offset:self.consumed])
            if got != content[:self.offset]:
                return False
        return True

    def exact_segments(self):
        """(elem, start, end) for every element pinned to exact content."""
        return [(lo, a, b) for lo, hi, a, b in self.layout if lo == hi]


class SketchPool:
    """Active/frozen hypothesis bookkeeping for one learning run."""

    def __init__(self, sketch: Sketch, horizon: int, n_active: int = 4,
                 optimistic: bool = True, mem_coeff: int = 4):
        if n_active < 1:
            raise ValueError("need at least one active hypothesis slot")
        self.sketch = tuple(sketch.elements)
        self.horizon = horizon
        self.n_active = n_active
        self.optimistic = optimistic
        self.mem_cap = max(16, mem_coeff * horizon * horizon)
        self.branch_cap = max(1, horizon // 2)
        self.blank = Hypothesis.blank(self.sketch)
        self.active: list[Hypothesis] = [self.blank]
        self.frozen: list[Hypothesis] = []
        self.seen: set = {self.blank.key()}
        self._created = 0
        self.max_branch_per_parent = 0  # high-water mark, for property tests

    def _rank_key(self, pb: bytes):
        def key(h: Hypothesis):
            return (-h.effective_score(pb, self.optimistic), -len(h.assigned), h.created)
        return key

    def stored_count(self) -> int:
        return len(self.active) + len(self.frozen)

    def _adopt(self, child: Hypothesis) -> Hypothesis | None:
        k = child.key()
        if k in self.seen:
            return None
        self.seen.add(k)
        self._created += 1
        child.created = self._created
        return child

    @staticmethod
    def _close_region(child: Hypothesis, pb: bytes, elem_lo: int, elem_hi: int,
                      pos_lo: int, pos_end: int) -> bool:
        """Close elements elem_lo..elem_hi over plan span [pos_lo, pos_end).

        Empty stretches must close an empty span; a single element has its
        content immediately implied (and must agree with any existing
        assignment); longer stretches stay ambiguous regions.
        """
        n = elem_hi - elem_lo + 1
        if n <= 0:
            return pos_lo == pos_end
        if n == 1:
            if pos_end <= pos_lo:
                return False
            content = tuple(pb[pos_lo:pos_end])
            lbl = child.sketch[elem_lo]
            if lbl in child.assigned:
                if child.assigned[lbl] != content:
                    return False
            else:
                child.assigned[lbl] = content
            child.layout.append((elem_lo, elem_lo, pos_lo, pos_end))
            return True
        if pos_end - pos_lo < child._min_span(elem_lo, elem_hi + 1):
            return False
        child.layout.append((elem_lo, elem_hi, pos_lo, pos_end))
        return True

    # -- hypothesis creation ---------------------------------------------------

    def branch(self, parent: Hypothesis, pb: bytes) -> list[Hypothesis]:
        """Children of `parent` given that the newest plan action completed a
        repeat of the main label at the end of the plan: one child per
        feasible (content length, first-occurrence position).

        The first occurrence must either lie in the open run or, if buried
        inside a closed ambiguous region, the run must still be short enough
        that every candidate content fits the region (same recency gate as
        the optimistic rule).
        """
        if parent.run_elem is None:
            return []
        found = parent._main_occurrences()
        if found is None:
            return []
        m, j1, rep = found
        t = parent.consumed
        site = parent._first_occurrence_site(j1)
        if site is None:
            return []
        lo1, cap, hi_base = site
        longest = (t - parent.run_pos0) // 2
        if longest > cap:
            return []
        mid_min = parent._min_span(j1 + 1, rep)
        lo_rep = parent.run_pos0 + parent._min_span(parent.run_elem, rep)
        children: list[Hypothesis] = []
        # longest candidate content first: most informative, most falsifiable
        for ln in range(longest, 0, -1):
            if len(children) >= self.branch_cap:
                break
            s2 = t - ln
            if s2 < lo_rep:
                continue
            content = pb[s2:t]
            p_cap = s2 - mid_min - ln
            if hi_base is not None:
                p_cap = min(p_cap, hi_base - ln)
            if p_cap < lo1:
                continue
            if j1 == parent.run_elem:
                ps = [parent.run_pos0] if (parent.run_pos0 <= p_cap
                                           and pb[parent.run_pos0:parent.run_pos0 + ln] == content) else []
            else:
                ps = []
                p = pb.find(content, lo1, p_cap + ln)
                while p != -1:
                    ps.append(p)
                    p = pb.find(content, p + 1, p_cap + ln)
            for p in ps:
                child = self._make_branch_child(parent, pb, m, j1, rep, p, ln, s2)
                if child is not None:
                    children.append(child)
                    if len(children) >= self.branch_cap:
                        break
        return children

    def _make_branch_child(self, parent, pb, m, j1, rep, p, ln, s2):
        child = parent._shell()
        content = tuple(pb[p:p + ln])
        if pb[s2:s2 + ln] != pb[p:p + ln]:
            return None
        if m in child.assigned:
            return None
        child.assigned[m] = content
        if j1 >= parent.run_elem:
            # first occurrence sits in the open run: close everything from
            # the run start through the end of the repeat
            if not self._close_region(child, pb, parent.run_elem, j1 - 1,
                                      parent.run_pos0, p):
                return None
            child.layout.append((j1, j1, p, p + ln))
            if not self._close_region(child, pb, j1 + 1, rep - 1, p + ln, s2):
                return None
        else:
            # first occurrence sits inside a closed ambiguous region: split it
            idx = next(i for i, (lo, hi, _, _) in enumerate(child.layout)
                       if lo <= j1 <= hi)
            elem_lo, elem_hi, pos_lo, pos_end = child.layout.pop(idx)
            if not (pos_lo <= p and p + ln <= pos_end):
                return None
            if not self._close_region(child, pb, elem_lo, j1 - 1, pos_lo, p):
                return None
            child.layout.append((j1, j1, p, p + ln))
            if not self._close_region(child, pb, j1 + 1, elem_hi, p + ln, pos_end):
                return None
            if not self._close_region(child, pb, parent.run_elem, rep - 1,
                                      parent.run_pos0, s2):
                return None
        child.layout.append((rep, rep, s2, parent.consumed))
        child.layout.sort()
        child._enter(rep + 1, parent.consumed)
        return self._adopt(child)

    def run_splits(self, parent: Hypothesis, pb: bytes, a: Action) -> list[Hypothesis]:
        """Resolve an ambiguous open run against the next assigned element:
        if the arriving action could begin that element, spawn the child that
        says it does."""
        if parent.run_elem is None or parent.is_complete:
            return []
        pos = parent.consumed  # position of the arriving action
        j_next = next((j for j in range(parent.run_elem + 1, len(parent.sketch))
                       if parent.sketch[j] in parent.assigned), None)
        if j_next is None:
            return []
        if parent.assigned[parent.sketch[j_next]][0] != a:
            return []
        if pos - parent.run_pos0 < parent._min_span(parent.run_elem, j_next):
            return []
        child = parent._shell()
        if not self._close_region(child, pb, parent.run_elem, j_next - 1,
                                  parent.run_pos0, pos):
            return []
        child._enter(j_next, pos)
        if not child.advance(a):
            return []
        child = self._adopt(child)
        return [child] if child is not None else []

    # -- plan-event hooks -------------------------------------------------------

    def on_confirmed(self, actions: list[Action]) -> None:
        a = actions[-1]
        pb = bytes(actions)
        kids: list[Hypothesis] = []
        for parent in self.active:
            kids.extend(self.run_splits(parent, pb, a))
        self.active = [h for h in self.active if h.advance(a)]
        pool = [h for h in self.active if h is not self.blank] + kids
        for parent in (self.blank, *pool[:]):
            new = self.branch(parent, pb)
            self.max_branch_per_parent = max(self.max_branch_per_parent, len(new))
            pool.extend(new)
        rank = self._rank_key(pb)
        pool.sort(key=rank)
        keep = self.n_active - 1  # the blank permanently holds one slot
        self.active = [self.blank] + pool[:keep]
        self.frozen.extend(pool[keep:])
        if self.stored_count() > self.mem_cap:
            self.frozen.sort(key=rank)
            del self.frozen[self.mem_cap - len(self.active):]

    def prune_and_refreeze(self, actions) -> None:
        """Drop active hypotheses that contradict the confirmed plan, re-rank,
        and top the active set up from frozen when it has emptied."""
        pb = bytes(actions)
        self.active = [h for h in self.active if h.is_consistent(actions)]
        self.active.sort(key=self._rank_key(pb))
        if not self.active:
            self.thaw(actions)

    def thaw(self, actions) -> None:
        """Re-activate the best frozen hypotheses that still fit the plan.

        A frozen hypothesis missed the plan growth since it was frozen, so it
        must replay those confirmations; any contradiction eliminates it."""
        self.frozen.sort(key=self._rank_key(bytes(actions)))
        still_frozen = []
        for h in self.frozen:
            if len(self.active) >= self.n_active:
                still_frozen.append(h)
                continue
            if not h.is_consistent(actions):
                continue
            ok = True
            for a in actions[h.consumed:]:
                if not h.advance(a):
                    ok = False
                    break
            if ok:
                self.active.append(h)
        self.frozen = still_frozen

    def rebuild(self, actions) -> None:
        """Reset to the blank hypothesis and re-ingest the surviving prefix.

        Frozen hypotheses whose consumed prefix is inside the surviving plan
        are kept verbatim: backtracking only removed actions beyond them, so
        their alignments are untouched.
        """
        retained = [h for h in self.frozen + self.active
                    if h is not self.blank
                    and h.consumed <= len(actions) and h.is_consistent(actions)]
        self.blank = Hypothesis.blank(self.sketch)
        self.active = [self.blank]
        self.frozen = []
        self.seen = {self.blank.key()}
        for i in range(1, len(actions) + 1):
            self.on_confirmed(list(actions[:i]))
        for h in retained:
            if h.key() not in self.seen:
                self.seen.add(h.key())
                self.frozen.append(h)

    # -- selection ----------------------------------------------------------------

    def select(self, actions, excluded: set[Action]):
        """Highest-scoring eligible active hypothesis and its suggestion.

        Eligible = suggests an action outside `excluded`. Ties prefer more
        assigned labels, then the older hypothesis.
        """
        pb = bytes(actions)
        best = None
        for h in self.active:
            got = h.proposal(pb, self.optimistic)
            if got is None or got[0] in excluded:
                continue
            k = (got[1], len(h.assigned), -h.created)
            if best is None or k > best[0]:
                best = (k, h, got[0])
        if best is None:
            return None
        return best[1], best[2]


class SketchPoolSuggester(ActionSuggester):
    """Plugs a hypothesis pool into the search loop."""

    def __init__(self, sketch: Sketch, horizon: int, n_active: int = 4,
                 optimistic: bool = True):
        self.pool = SketchPool(sketch, horizon, n_active=n_active, optimistic=optimistic)

    def suggest(self, plan: PartialPlan, excluded: set[Action]) -> Action | None:
        picked = self.pool.select(plan.confirmed, excluded)
        return None if picked is None else picked[1]

    def on_confirmed(self, plan: PartialPlan) -> None:
        self.pool.on_confirmed(plan.confirmed)

    def on_backtrack(self, plan: PartialPlan, removed: Action, position: int) -> None:
        self.pool.rebuild(tuple(plan.confirmed))

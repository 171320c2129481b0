"""Cobordism plans between torus links built from scissor moves.

Three elementary cobordisms are used:

* ``RectangleSmoothing``: T(a, b) sits inside the standard diagram of
  T(c, d) whenever its normalized parameters are dominated by those of
  T(c, d); smoothing the complementary crossings costs exactly the
  difference of Euler characteristics.
* ``Split``: T(a + b, c) -> T(a, c) + T(b, c) (disjoint union), cost c.
  Read backwards it is a merge.
* ``Prop1Swap``: T(ab, c) <-> T(a, bc), cost (b - 1)|c - a|.

A plan is a sequence of moves on *states*, i.e. sorted tuples of torus
links standing for disjoint unions.  The cost of a move is always the
absolute change of Euler characteristic it causes, so plan costs are sums
of |delta chi| over the moves.
"""

from collections import Counter
from dataclasses import dataclass, replace
import heapq
import json

from .links import DomainError, TorusLink, as_link, chi, normalize

PLAN_SCHEMA = "torus-plan/1"

RECTANGLE = "RectangleSmoothing"
SPLIT = "Split"
SWAP = "Prop1Swap"
KINDS = (RECTANGLE, SPLIT, SWAP)


def state(*links):
    return tuple(sorted(as_link(l) for l in links))


def state_chi(st):
    return sum(chi(l) for l in st)


@dataclass(frozen=True)
class Move:
    kind: str
    source: tuple
    target: tuple
    cost: int

    def to_dict(self):
        return {
            "kind": self.kind,
            "source": [l.as_pair() for l in self.source],
            "target": [l.as_pair() for l in self.target],
            "cost": self.cost,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], state(*d["source"]), state(*d["target"]), int(d["cost"]))

    def reversed(self):
        return Move(self.kind, self.target, self.source, self.cost)

    def __str__(self):
        src = " + ".join(map(str, self.source))
        tgt = " + ".join(map(str, self.target))
        return f"{self.kind}: {src} -> {tgt} (cost {self.cost})"


@dataclass(frozen=True)
class CobordismPlan:
    start: TorusLink
    end: TorusLink
    moves: tuple = ()
    strategy: str = ""
    exhaustive: bool = True

    @property
    def total_cost(self):
        return sum(m.cost for m in self.moves)

    def reversed(self):
        return CobordismPlan(
            self.end, self.start, tuple(m.reversed() for m in reversed(self.moves)),
            self.strategy, self.exhaustive,
        )

    def sort_key(self):
        """Order used to pick among plans: cost, move count, intermediate parameters."""
        params = tuple(tuple((l.p, l.q) for l in m.target) for m in self.moves)
        return (self.total_cost, len(self.moves), params)

    def to_dict(self):
        return {
            "schema": PLAN_SCHEMA,
            "start": self.start.as_pair(),
            "end": self.end.as_pair(),
            "strategy": self.strategy,
            "exhaustive": self.exhaustive,
            "total_cost": self.total_cost,
            "moves": [m.to_dict() for m in self.moves],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != PLAN_SCHEMA:
            raise ValueError(f"unsupported plan schema {d.get('schema')!r}")
        return cls(
            normalize(*d["start"]), normalize(*d["end"]),
            tuple(Move.from_dict(m) for m in d["moves"]),
            d.get("strategy", ""), d.get("exhaustive", True),
        )


# -- elementary moves ------------------------------------------------------

def dominates(big, small):
    """True if the diagram of ``small`` embeds in that of ``big``."""
    big, small = as_link(big), as_link(small)
    return small.p <= big.p and small.q <= big.q


def rectangle_cost(a, b, c, d):
    """Crossings smoothed to carve T(a, b) out of T(c, d): -ab + cd + a + b - c - d."""
    small, big = normalize(a, b), normalize(c, d)
    if not dominates(big, small):
        raise DomainError(f"T({a},{b}) does not embed in the diagram of T({c},{d})")
    return -a * b + c * d + a + b - c - d


def rectangle_move(source, target):
    """Trim (or, read backwards, extend) a rectangle of crossings."""
    source, target = as_link(source), as_link(target)
    if not (dominates(source, target) or dominates(target, source)):
        raise DomainError(f"{source} and {target} are not nested diagrams")
    return Move(RECTANGLE, (source,), (target,), abs(chi(source) - chi(target)))


def split_move(link, a, *, strands=None):
    """Split T(a + b, c) into T(a, c) and T(b, c) at cost c.

    ``link`` may be a raw pair ``(a + b, c)``, in which case the first entry
    is split.  For a :class:`TorusLink`, ``strands`` names the parameter to
    split (default: ``link.p``).
    """
    if isinstance(link, TorusLink):
        total = link.p if strands is None else strands
        if total not in (link.p, link.q):
            raise DomainError(f"{strands} is not a parameter of {link}")
        other = link.q if total == link.p else link.p
    else:
        total, other = (int(v) for v in link)
        if total < 1 or other < 1:
            raise DomainError("torus link parameters must be positive")
    if not 1 <= a < total:
        raise DomainError(f"cannot split {a} strands off T({total},{other})")
    return normalize(a, other), normalize(total - a, other), other


def swap_move(a, b, c):
    """T(ab, c) -> T(a, bc), cost (b - 1)|c - a|."""
    if min(a, b, c) < 1:
        raise DomainError("swap parameters must be positive")
    return Move(SWAP, (normalize(a * b, c),), (normalize(a, b * c),), (b - 1) * abs(c - a))


def _split_cost(big, s1, s2):
    """Cost of the split big -> s1 + s2, or None if no such split exists."""
    for c in {s1.p, s1.q} & {s2.p, s2.q}:
        x = s1.q if s1.p == c else s1.p
        y = s2.q if s2.p == c else s2.p
        if normalize(x + y, c) == big:
            return c
    return None


def _swap_costs(l1, l2):
    out = set()
    for src, tgt in ((l1, l2), (l2, l1)):
        for m, n in ((src.p, src.q), (src.q, src.p)):
            for b in range(1, m + 1):
                if m % b == 0 and normalize(m // b, n * b) == tgt:
                    out.add((b - 1) * abs(n - m // b))
    return out


def check_move(move):
    """Return a list of problems with a single move (empty if valid)."""
    problems = []
    if move.cost < 0:
        problems.append("negative cost")
    src, tgt = Counter(move.source), Counter(move.target)
    removed = sorted((src - tgt).elements())
    added = sorted((tgt - src).elements())
    if move.kind not in KINDS:
        return [f"unknown move kind {move.kind!r}"]
    if not removed and not added:
        if move.kind == SPLIT or move.cost != 0:
            problems.append("identity move must be a zero-cost rectangle or swap")
        return problems
    if move.kind == RECTANGLE:
        if len(removed) != 1 or len(added) != 1:
            return problems + ["rectangle move must replace exactly one component"]
        s, t = removed[0], added[0]
        if not (dominates(s, t) or dominates(t, s)):
            problems.append(f"{s} and {t} are not nested diagrams")
        elif move.cost != abs(chi(s) - chi(t)):
            problems.append(f"rectangle cost {move.cost} != {abs(chi(s) - chi(t))}")
    elif move.kind == SPLIT:
        if len(removed) == 1 and len(added) == 2:
            big, parts = removed[0], added
        elif len(removed) == 2 and len(added) == 1:
            big, parts = added[0], removed
        else:
            return problems + ["split move must turn one component into two or back"]
        cost = _split_cost(big, *parts)
        if cost is None:
            problems.append(f"{big} does not split into {parts[0]} + {parts[1]}")
        elif move.cost != cost:
            problems.append(f"split cost {move.cost} != {cost}")
    else:
        if len(removed) != 1 or len(added) != 1:
            return problems + ["swap move must replace exactly one component"]
        costs = _swap_costs(removed[0], added[0])
        if not costs:
            problems.append(f"{removed[0]} and {added[0]} are not of the form T(ab,c), T(a,bc)")
        elif move.cost not in costs:
            problems.append(f"swap cost {move.cost} not in {sorted(costs)}")
    return problems


def plan_problems(plan):
    """Diagnostics for :func:`validate_plan`."""
    problems = []
    current = (plan.start,)
    for i, move in enumerate(plan.moves):
        if move.source != current:
            problems.append(f"move {i}: source {list(map(str, move.source))} != {list(map(str, current))}")
        problems += [f"move {i}: {p}" for p in check_move(move)]
        current = move.target
    if current != (plan.end,):
        problems.append(f"plan ends at {list(map(str, current))}, expected {plan.end}")
    dchi = abs(chi(plan.start) - chi(plan.end))
    if plan.total_cost < dchi:
        problems.append(f"total cost {plan.total_cost} below |delta chi| = {dchi}")
    if plan.start.is_knot and plan.end.is_knot and (plan.total_cost - dchi) % 2:
        problems.append("cost parity differs from |delta chi|")
    return problems


def validate_plan(plan):
    return not plan_problems(plan)


# -- constructions ---------------------------------------------------------

def _apply(st, removed, added):
    c = Counter(st)
    c.subtract(removed)
    if any(v < 0 for v in c.values()):
        raise DomainError(f"state {st} lacks {removed}")
    c.update(added)
    return tuple(sorted(c.elements()))


def _chain(start, steps, end, strategy):
    """Turn (kind, removed, added, cost) steps into a plan with full states."""
    moves = []
    st = (start,)
    for kind, removed, added, cost in steps:
        nxt = _apply(st, removed, added)
        moves.append(Move(kind, st, nxt, cost))
        st = nxt
    return CobordismPlan(start, end, tuple(moves), strategy)


def _thm2_steps(x, y):
    if x == y:
        return []
    if dominates(x, y) or dominates(y, x):
        return [(RECTANGLE, (x,), (y,), abs(chi(x) - chi(y)))]
    if x.p > y.p:
        return [(k, add, rem, cost) for k, rem, add, cost in reversed(_thm2_steps(y, x))]
    # x.p < y.p and x.q > y.q: a = x.p <= d = y.q and b = x.q >= c = y.p
    a, b, c, d = x.p, x.q, y.p, y.q
    shared = normalize(a, c)
    left, right = normalize(a, b - c), normalize(c, d - a)
    steps = [(SPLIT, (x,), (shared, left), a)]
    steps += _thm2_steps(left, right)
    steps.append((SPLIT, (shared, right), (y,), c))
    return steps


def theorem2_upper(a, b, c, d):
    """Inductive cut-and-glue plan from T(a, b) to T(c, d).

    Nested diagrams are joined by one rectangle move.  Otherwise, oriented so
    that a <= d and b >= c, T(a, c) is split off both links (costs a and c)
    and the remainders T(a, b - c), T(c, d - a) are joined recursively; the
    shared T(a, c) rides along as a passive component.
    """
    x, y = normalize(a, b), normalize(c, d)
    return _chain(x, _thm2_steps(x, y), y, "thm2")


def theorem1_plan(a, b, c, d):
    """T(c, d) -> T(c, ka) -> T(kc, a) -> T(b, a) with d = ka + r, 0 <= r < a.

    Always three moves; steps that happen to be trivial carry cost 0.
    """
    if not (2 <= a <= c and a <= b and c <= d):
        raise DomainError(f"theorem1_plan needs 2 <= a <= c, a <= b, c <= d; got ({a},{b},{c},{d})")
    k, r = divmod(d, a)
    start = normalize(c, d)
    trimmed = normalize(c, k * a)
    swapped = normalize(k * c, a)
    end = normalize(b, a)
    steps = [
        (RECTANGLE, (start,), (trimmed,), r * (c - 1)),
        (SWAP, (trimmed,), (swapped,), (k - 1) * (c - a)),
        (RECTANGLE, (swapped,), (end,), abs(chi(swapped) - chi(end))),
    ]
    return _chain(start, steps, end, "thm1")


def prop1_plan(a, b, c):
    """Single swap T(ab, c) -> T(a, bc) of cost (b - 1)|c - a|."""
    move = swap_move(a, b, c)
    return _chain(move.source[0], [(SWAP, move.source, move.target, move.cost)], move.target[0], "prop1")


def _orientations(a, b, c, d):
    """The 8 parameter symmetries, with a flag for swapped pairs."""
    for (x1, x2), (y1, y2), flipped in (((a, b), (c, d), False), ((c, d), (a, b), True)):
        for p1, q1 in ((x1, x2), (x2, x1)):
            for p2, q2 in ((y1, y2), (y2, y1)):
                yield (p1, q1, p2, q2), flipped


def prop1_match(a, b, c, d):
    """Find (a', b', c') with {T(a,b), T(c,d)} = {T(a'b', c'), T(a', b'c')}.

    Returns (a', b', c', flipped) where ``flipped`` means T(a, b) is the
    T(a', b'c') end, or None.
    """
    best = None
    for (m, n, u, v), flipped in _orientations(a, b, c, d):
        # T(m, n) = T(a'b', c') with c' = n; T(u, v) = T(a', b'c') with a' = u
        if n and v % n == 0 and m % u == 0 and m // u == v // n:
            cand = (u, m // u, n, flipped)
            if best is None or cand < best:
                best = cand
    return best


def prop1_for_pair(a, b, c, d):
    """prop1_plan oriented from T(a, b) to T(c, d), or None."""
    match = prop1_match(a, b, c, d)
    if match is None:
        return None
    pa, pb, pc, flipped = match
    plan = prop1_plan(pa, pb, pc)
    return plan.reversed() if flipped else plan


def theorem1_for_pair(a, b, c, d):
    """Cheapest theorem1_plan over admissible orientations, from T(a, b) to T(c, d)."""
    best = None
    for (p1, q1, p2, q2), flipped in _orientations(a, b, c, d):
        if 2 <= p1 <= p2 and p1 <= q1 and p2 <= q2:
            plan = theorem1_plan(p1, q1, p2, q2)
            # plan runs T(p2, q2) -> T(p1, q1)
            if not flipped:
                plan = plan.reversed()
            if best is None or plan.sort_key() < best.sort_key():
                best = plan
    return best


# -- search ----------------------------------------------------------------

def _neighbours(link):
    p, q = link.p, link.q
    for np_, nq in ((p - 1, q), (p + 1, q), (p, q - 1), (p, q + 1)):
        if np_ >= 1 and nq >= 1:
            yield RECTANGLE, normalize(np_, nq)
    for m, n in ((p, q), (q, p)):
        for b in range(2, m + 1):
            if m % b == 0:
                t = normalize(m // b, n * b)
                if t != link:
                    yield SWAP, t


@dataclass
class SearchResult:
    plan: object = None
    exhaustive: bool = True
    expanded: int = 0


def search_plan(source, target, budget, bound=None):
    """Lowest-cost plan over single-link states using rectangle and swap moves.

    Parameters of intermediate links are capped at ``budget``.  Costs are
    ordered with the consistent heuristic |chi(node) - chi(target)|, which
    never changes which plan is returned.  Rectangle steps move one
    parameter by one; consecutive steps in the same chi direction count as
    a single rectangle move.  ``bound`` prunes paths costlier than a known
    plan.
    """
    source, target = as_link(source), as_link(target)
    tchi = chi(target)
    result = SearchResult()
    if source == target:
        result.plan = CobordismPlan(source, target, (), "search")
        return result
    # node = (link, direction of the last rectangle step: -1, 0, +1)
    start = (source, 0)
    h0 = abs(chi(source) - tchi)
    frontier = [(h0, 0, 0, (), start, None)]
    best = {start: (0, 0, ())}
    parents = {}
    capped_cost = None
    while frontier:
        f, g, nmoves, path, node, parent = heapq.heappop(frontier)
        if best.get(node, (None,))[:3] != (g, nmoves, path):
            continue
        if parent is not None:
            parents[node] = parent
        result.expanded += 1
        link, direction = node
        if link == target:
            steps = _rebuild(parents, node, start)
            result.plan = _compress(source, target, steps)
            if capped_cost is not None and capped_cost < g:
                result.exhaustive = False
            return result
        lchi = chi(link)
        for kind, nxt in _neighbours(link):
            cost = abs(chi(nxt) - lchi)
            ng = g + cost
            h = abs(chi(nxt) - tchi)
            if nxt.q > budget:
                if capped_cost is None or ng + h < capped_cost:
                    capped_cost = ng + h
                continue
            if bound is not None and ng + h > bound:
                continue
            if kind == RECTANGLE:
                ndir = -1 if chi(nxt) > lchi else 1
                nm = nmoves + (0 if ndir == direction else 1)
            else:
                ndir = 0
                nm = nmoves + 1
            nnode = (nxt, ndir)
            npath = path + ((nxt.p, nxt.q),)
            key = (ng, nm, npath)
            old = best.get(nnode)
            if old is None or key < old:
                best[nnode] = key
                heapq.heappush(frontier, (ng + h, ng, nm, npath, nnode, (node, kind, cost)))
    result.exhaustive = capped_cost is None or (bound is not None and capped_cost >= bound)
    return result


def _rebuild(parents, node, start):
    steps = []
    while node != start:
        prev, kind, cost = parents[node]
        steps.append((kind, prev[0], node[0], cost))
        node = prev
    steps.reverse()
    return steps


def _compress(source, target, steps):
    moves = []
    for kind, a, b, cost in steps:
        if (kind == RECTANGLE and moves and moves[-1].kind == RECTANGLE):
            last = moves[-1]
            first = last.source[0]
            same_dir = (chi(b) - chi(a)) * (chi(a) - chi(first)) > 0
            if same_dir:
                moves[-1] = Move(RECTANGLE, last.source, (b,), last.cost + cost)
                continue
        moves.append(Move(kind, (a,), (b,), cost))
    return CobordismPlan(source, target, tuple(moves), "search")


def best_upper(a, b, c, d, budget=None):
    """Cheapest plan from T(a, b) to T(c, d) among all constructions and a capped search.

    The default ``budget`` is twice the largest parameter.  The returned
    plan has ``exhaustive=False`` when the parameter cap may have hidden a
    cheaper plan.
    """
    for v in (a, b, c, d):
        if v < 1:
            raise DomainError("torus link parameters must be positive")
    if budget is None:
        budget = 2 * max(a, b, c, d)
    candidates = [theorem2_upper(a, b, c, d)]
    for make in (theorem1_for_pair, prop1_for_pair):
        plan = make(a, b, c, d)
        if plan is not None:
            candidates.append(plan)
    bound = min(p.total_cost for p in candidates)
    found = search_plan(normalize(a, b), normalize(c, d), budget, bound=bound)
    if found.plan is not None:
        candidates.append(found.plan)
    best = min(candidates, key=CobordismPlan.sort_key)
    return replace(best, exhaustive=found.exhaustive)

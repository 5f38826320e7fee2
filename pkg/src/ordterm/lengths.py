"""Exact length functions for controlled bad sequences.

Three independent routes to the same numbers:

* ``length_search``: exhaustive depth-first search over the prefix tree of
  bad sequences for any closed-family wqo.  With ``prune=True`` (default)
  candidates dominated by a viable larger candidate are skipped; this is
  value-preserving (appending the larger element constrains the future
  strictly less), so the result is still the exact maximum.  ``prune=False``
  walks the full tree.
* ``length_wo_dp``: the descent equation over a well order, stepping to the
  norm-bounded *maximum* below the current term.  The maximum is built by
  ``greatest_below`` (greedy over the normal form) and never by the
  predecessor operation, so this is an oracle independent of the
  fundamental-sequence machinery.  Runs of successor steps are consumed in
  one batch (each such step provably moves to the coefficient-decremented
  term), keeping the cost proportional to the ordinal structure rather
  than to the answer.
* ``cichon`` from the hierarchy module, which the Length Function Theorem
  says agrees whenever x >= norm(alpha); ``verify_theorem`` checks that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionViolated
from .hierarchy import (
    DEFAULT_BUDGET,
    ControlFunction,
    EvalBudget,
    apply,
    cichon,
    iterate,
    premultiply,
)
from .ordinal import (
    OrdinalTerm,
    enumerate_below,
    from_int,
    greatest_below,
    norm,
    omega_power,
)
from .wqo import SpaceDescriptor, elements_up_to, leq, nat_product, norm_of

DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class ControlledSequence:
    space: SpaceDescriptor
    control: ControlFunction
    initial_norm: int
    items: tuple

    def __post_init__(self):
        if self.initial_norm < 0:
            raise ValueError("initial norm must be a natural number")


@dataclass(frozen=True)
class LengthResult:
    length: int
    witness: ControlledSequence
    nodes_explored: int
    exact: bool  # False when the node cap stopped the search (lower bound only)


def is_bad(space: SpaceDescriptor, items) -> bool:
    """No i < j has items[i] <= items[j]."""
    items = list(items)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if leq(space, a, b):
                return False
    return True


def is_controlled(seq: ControlledSequence) -> bool:
    """Every item's norm is within the control envelope g^i(n0)."""
    for i, item in enumerate(seq.items):
        if norm_of(seq.space, item) > iterate(seq.control, i, seq.initial_norm):
            return False
    return True


def _maximal(space: SpaceDescriptor, candidates: list) -> list:
    out = []
    for c in candidates:
        if not any(c != d and leq(space, c, d) for d in candidates):
            out.append(c)
    return out


def length_search(space: SpaceDescriptor, control: ControlFunction, n0: int,
                  max_nodes: int = DEFAULT_NODE_CAP, prune: bool = True) -> LengthResult:
    """Exact maximal length of a (control, n0)-controlled bad sequence.

    Exhaustive DFS; finite by Koenig's lemma.  If the node cap interrupts
    the search the best length found so far is returned with exact=False.
    """
    if n0 < 0:
        raise ValueError("n0 must be a natural number")
    balls: dict[int, list] = {}

    def ball(depth: int) -> list:
        if depth not in balls:
            balls[depth] = elements_up_to(space, iterate(control, depth, n0))
        return balls[depth]

    best: list = []
    nodes = 0
    capped = False

    def dfs(prefix: list):
        nonlocal nodes, best, capped
        nodes += 1
        if nodes > max_nodes:
            capped = True
            return
        if len(prefix) > len(best):
            best = list(prefix)
        viable = [c for c in ball(len(prefix))
                  if all(not leq(space, p, c) for p in prefix)]
        if prune:
            viable = _maximal(space, viable)
        for c in viable:
            if capped:
                return
            prefix.append(c)
            dfs(prefix)
            prefix.pop()

    dfs([])
    witness = ControlledSequence(space, control, n0, tuple(best))
    return LengthResult(len(best), witness, nodes, not capped)


def length_wo_dp(alpha: OrdinalTerm, control: ControlFunction, n0: int,
                 budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """Exact L_{g,alpha}(n0) by the descent equation over the well order alpha.

    Each step moves to max{b < current : norm(b) <= n} (one more element of
    the bad sequence) while n grows to g(n).  On BudgetExceeded the
    exception's ``partial`` is a sound lower bound.
    """
    if n0 < 0:
        raise ValueError("n0 must be a natural number")
    cur = alpha
    n = n0
    value = 0
    events = 0
    while not cur.is_zero:
        events += 1
        if events > budget.max_recursion_steps:
            raise BudgetExceeded("descent recursion exceeded step budget",
                                 steps=events, partial=value)
        expo, coeff = cur.summands[-1]
        prefix = OrdinalTerm(cur.summands[:-1])
        if expo.is_zero and norm(prefix) <= n and coeff <= n + 1:
            # a run of successor steps: the norm-bounded maximum below
            # prefix+j is prefix+(j-1) for every j <= coeff
            value += coeff
            if not prefix.is_zero:
                try:
                    n = iterate(control, coeff, n, budget.max_value_bits)
                except BudgetExceeded as exc:
                    raise BudgetExceeded(str(exc), steps=events, partial=value) from None
            cur = prefix
        else:
            nxt = greatest_below(cur, n)
            value += 1
            try:
                n = iterate(control, 1, n, budget.max_value_bits)
            except BudgetExceeded as exc:
                raise BudgetExceeded(str(exc), steps=events, partial=value) from None
            cur = nxt
    return value


def verify_theorem(alpha: OrdinalTerm, control: ControlFunction, x: int,
                   budget: EvalBudget = DEFAULT_BUDGET,
                   require_hypothesis: bool = True) -> bool:
    """Whether the descent computation agrees with the Cichon value.

    The theorem guarantees agreement for x >= norm(alpha) and by default
    other inputs are rejected.  ``require_hypothesis=False`` runs the
    comparison anyway (the equality can hold below the hypothesis, e.g.
    both sides are 8 for alpha = w^2, g(x) = x+2, x = 1).
    """
    if require_hypothesis and norm(alpha) > x:
        raise PreconditionViolated(f"norm({alpha}) = {norm(alpha)} > {x}")
    return length_wo_dp(alpha, control, x, budget) == cichon(control, alpha, x, budget)


def verify_proposition(alpha: OrdinalTerm, control: ControlFunction, x: int,
                       budget: EvalBudget = DEFAULT_BUDGET,
                       max_count: int = 10**6) -> bool:
    """Whether h_alpha(x) = max over {b < alpha, norm(b) <= x} of 1 + h_b(h(x)).

    The maximum over the empty set (alpha = 0) is 0.
    """
    if norm(alpha) > x:
        raise PreconditionViolated(f"norm({alpha}) = {norm(alpha)} > {x}")
    lhs = cichon(control, alpha, x, budget)
    hx = apply(control, x)
    rhs = 0
    for beta in enumerate_below(alpha, x, max_count):
        rhs = max(rhs, 1 + cichon(control, beta, hx, budget))
    return lhs == rhs


def check_product_bound(d: int, control: ControlFunction, x: int,
                        max_nodes: int = DEFAULT_NODE_CAP,
                        budget: EvalBudget = DEFAULT_BUDGET) -> bool:
    """Whether the exact search length over N^d stays within h_{w^d}(d*x), h = d*g.

    Raises BudgetExceeded (inconclusive) if the search hits its node cap.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    result = length_search(nat_product(d), control, x, max_nodes)
    if not result.exact:
        raise BudgetExceeded("length search hit the node cap; bound inconclusive",
                             partial=result.length)
    h = premultiply(d, control) if d >= 1 else control
    bound = cichon(h, omega_power(from_int(d)), d * x, budget)
    return result.length <= bound

"""Shared test helpers: corpus generators and independent oracles.

The oracles here deliberately re-implement definitions in the most literal
way available (one predecessor step at a time, full enumeration maxima,
coefficient-vector comparison) so the production code is checked against
structurally different computations.
"""

from __future__ import annotations

import random

from ordterm import hierarchy as hr
from ordterm import ordinal as od
from ordterm.ordinal import OrdinalTerm, ZERO, from_int, omega_power


def random_term(rng: random.Random, depth: int = 2, max_coeff: int = 3,
                max_summands: int = 3) -> OrdinalTerm:
    """A random strict-CNF term of bounded nesting depth and coefficients."""
    if depth == 0:
        return from_int(rng.randint(0, max_coeff))
    exps = set()
    for _ in range(rng.randint(0, max_summands)):
        exps.add(random_term(rng, depth - 1, max_coeff, max_summands))
    summands = tuple((e, rng.randint(1, max_coeff)) for e in sorted(exps, reverse=True))
    return OrdinalTerm(summands)


def random_limit(rng: random.Random, **kw) -> OrdinalTerm:
    while True:
        t = random_term(rng, **kw)
        if od.kind(t) is od.OrdinalKind.LIMIT:
            return t


def terms_below_w3(max_coeff: int):
    """All c2*w^2 + c1*w + c0 with coefficients bounded; brute force, not enumerate_below."""
    out = []
    for c2 in range(max_coeff + 1):
        for c1 in range(max_coeff + 1):
            for c0 in range(max_coeff + 1):
                out.append(vector_to_term((c2, c1, c0)))
    return out


def vector_to_term(vec) -> OrdinalTerm:
    summands = []
    d = len(vec)
    for i, c in enumerate(vec):
        if c:
            summands.append((from_int(d - 1 - i), c))
    return OrdinalTerm(tuple(summands))


def term_to_vector(t: OrdinalTerm, d: int):
    """Coefficient vector of a term below w^d; the ordinal order is vector-lex order."""
    vec = [0] * d
    for expo, coeff in t.summands:
        e = expo.as_int()
        assert e < d
        vec[d - 1 - e] = coeff
    return tuple(vec)


def naive_hardy(g: hr.ControlFunction, alpha: OrdinalTerm, x: int,
                max_steps: int = 4000) -> int | None:
    """Literal one-step predecessor recursion; None when past the test-size cap."""
    for _ in range(max_steps):
        if alpha.is_zero:
            return x
        alpha, x = od.predecessor(alpha, x), hr.apply(g, x)
    return None


def naive_cichon(g: hr.ControlFunction, alpha: OrdinalTerm, x: int,
                 max_steps: int = 4000) -> int | None:
    count = 0
    for _ in range(max_steps):
        if alpha.is_zero:
            return count
        alpha, x, count = od.predecessor(alpha, x), hr.apply(g, x), count + 1
    return None


def naive_descent_length(alpha: OrdinalTerm, g: hr.ControlFunction, n: int,
                         memo: dict | None = None) -> int:
    """The descent equation with a full enumeration maximum at every level."""
    if memo is None:
        memo = {}
    if alpha.is_zero:
        return 0
    key = (alpha, n)
    if key not in memo:
        best = 0
        for beta in od.enumerate_below(alpha, n):
            best = max(best, 1 + naive_descent_length(beta, g, hr.apply(g, n), memo))
        memo[key] = best
    return memo[key]


PAPER_14_SEQUENCE = (
    (1, 1), (3, 0), (2, 0), (1, 0),
    (0, 9), (0, 8), (0, 7), (0, 6), (0, 5), (0, 4), (0, 3), (0, 2), (0, 1), (0, 0),
)

PAPER_LEX_8_SEQUENCE = (
    (1, 1), (1, 0), (0, 5), (0, 4), (0, 3), (0, 2), (0, 1), (0, 0),
)


def w(e: int = 1, c: int = 1) -> OrdinalTerm:
    return omega_power(from_int(e), c)


def t(text: str) -> OrdinalTerm:
    return od.parse(text)


ZERO_ = ZERO

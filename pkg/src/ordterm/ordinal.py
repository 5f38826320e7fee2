"""Ordinal terms below epsilon-0 in strict Cantor normal form.

A term is a sum  w^e1*c1 + ... + w^ep*cp  with exponents e1 > ... > ep
(themselves terms) and integer coefficients ci >= 1; the empty sum is 0.
Merging equal exponents makes the representation canonical, so structural
equality is ordinal equality and the lexicographic order on summand lists
is the ordinal order.

ASCII text grammar (whitespace insignificant)::

    term := "0" | sum
    sum  := mono ("+" mono)*
    mono := nat | "w" ("^" atom)? ("*" nat)?
    atom := nat | "w" | "(" sum ")"

``parse`` accepts non-canonical sums ("w + w") and re-normalizes them,
emitting a NonCanonicalWarning; ``to_text`` always emits canonical text.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import (
    BudgetExceeded,
    NonCanonicalWarning,
    NotALimit,
    OrdinalParseError,
    PreconditionViolated,
    ZeroHasNoPredecessor,
)

DEFAULT_EXPONENT_DEPTH = 64
DEFAULT_PRED_STEPS = 10**6
DEFAULT_CHAIN_STEPS = 10**6
DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True, order=True)
class OrdinalTerm:
    """An ordinal below epsilon-0, as a tuple of (exponent, coefficient) summands.

    Invariants: exponents strictly decreasing, coefficients >= 1.  Tuple
    comparison of summand lists coincides with the ordinal order, so the
    dataclass-generated comparisons are the real thing.
    """

    summands: tuple[tuple["OrdinalTerm", int], ...] = ()

    def __post_init__(self):
        prev = None
        for entry in self.summands:
            if not (isinstance(entry, tuple) and len(entry) == 2):
                raise ValueError(f"bad summand {entry!r}")
            expo, coeff = entry
            if not isinstance(expo, OrdinalTerm):
                raise ValueError(f"exponent must be an OrdinalTerm, got {expo!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"coefficient must be an integer >= 1, got {coeff!r}")
            if prev is not None and not expo < prev:
                raise ValueError("exponents must be strictly decreasing")
            prev = expo

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @property
    def is_finite(self) -> bool:
        return not self.summands or (len(self.summands) == 1 and self.summands[0][0].is_zero)

    def as_int(self) -> int:
        """The natural-number value of a finite term."""
        if self.is_zero:
            return 0
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.summands[0][1]

    @property
    def head(self) -> tuple["OrdinalTerm", int]:
        return self.summands[0]

    @property
    def rest(self) -> "OrdinalTerm":
        """The term without its leading summand."""
        return OrdinalTerm(self.summands[1:])

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"OrdinalTerm({to_text(self)!r})"


ZERO = OrdinalTerm()


def from_int(n: int) -> OrdinalTerm:
    """Embed a natural number as a finite ordinal term."""
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return OrdinalTerm(((ZERO, n),))


ONE = from_int(1)
OMEGA = OrdinalTerm(((ONE, 1),))


def omega_power(exponent: OrdinalTerm, coefficient: int = 1) -> OrdinalTerm:
    """w^exponent * coefficient."""
    if coefficient == 0:
        return ZERO
    return OrdinalTerm(((exponent, coefficient),))


class OrdinalKind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def compare(a: OrdinalTerm, b: OrdinalTerm) -> int:
    """Total order: -1, 0 or 1 as a <, =, > b."""
    if a == b:
        return 0
    return -1 if a < b else 1


@lru_cache(maxsize=None)
def norm(a: OrdinalTerm) -> int:
    """The largest coefficient occurring anywhere in the term; 0 for the empty sum."""
    best = 0
    for expo, coeff in a.summands:
        best = max(best, coeff, norm(expo))
    return best


def kind(a: OrdinalTerm) -> OrdinalKind:
    if a.is_zero:
        return OrdinalKind.ZERO
    if a.summands[-1][0].is_zero:
        return OrdinalKind.SUCCESSOR
    return OrdinalKind.LIMIT


def _strip_one(a: OrdinalTerm) -> OrdinalTerm:
    """a - 1 for a successor term."""
    expo, coeff = a.summands[-1]
    assert expo.is_zero
    if coeff > 1:
        return OrdinalTerm(a.summands[:-1] + ((ZERO, coeff - 1),))
    return OrdinalTerm(a.summands[:-1])


def fundamental(lam: OrdinalTerm, x: int) -> OrdinalTerm:
    """The x-th member of the standard fundamental sequence of a limit term.

    For a last summand w^(b+1) the member is w^b*(x+1); for a limit
    exponent e it is w^(e(x)).  Always strictly below ``lam``.
    """
    if x < 0:
        raise ValueError("x must be a natural number")
    if kind(lam) is not OrdinalKind.LIMIT:
        raise NotALimit(f"{lam} is not a limit ordinal")
    expo, coeff = lam.summands[-1]
    trunk = lam.summands[:-1]
    if coeff > 1:
        trunk = trunk + ((expo, coeff - 1),)
    if kind(expo) is OrdinalKind.SUCCESSOR:
        return OrdinalTerm(trunk + ((_strip_one(expo), x + 1),))
    return OrdinalTerm(trunk + ((fundamental(expo, x), 1),))


def predecessor(alpha: OrdinalTerm, x: int, max_steps: int = DEFAULT_PRED_STEPS) -> OrdinalTerm:
    """P_x(alpha): descend through fundamental sequences at x, then remove 1.

    The recursion always terminates (each step is strictly decreasing);
    ``max_steps`` is an explicit guard against runaway configurations.
    """
    if alpha.is_zero:
        raise ZeroHasNoPredecessor("P_x(0) is undefined")
    steps = 0
    while kind(alpha) is OrdinalKind.LIMIT:
        alpha = fundamental(alpha, x)
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded("predecessor descent exceeded step budget", steps=steps)
    return _strip_one(alpha)


def _greatest_power_below(expo: OrdinalTerm, x: int) -> OrdinalTerm:
    """max{ b < w^expo : norm(b) <= x }.

    Requires norm(expo) <= x when expo > 0 so that the greedy leading
    exponent exists.  x = 0 forces 0 (every nonzero term has a coefficient).
    """
    if expo.is_zero or x == 0:
        return ZERO
    e = greatest_below(expo, x)
    return OrdinalTerm(((e, x),) + _greatest_power_below(e, x).summands)


def greatest_below(alpha: OrdinalTerm, x: int) -> OrdinalTerm:
    """max{ b < alpha : norm(b) <= x }, built greedily from the leading summand.

    This never consults ``predecessor`` or fundamental sequences, so it
    serves as an independent route to the same maximum.
    """
    if alpha.is_zero:
        raise PreconditionViolated("no term is below 0")
    if x < 0:
        raise ValueError("x must be a natural number")
    if x == 0:
        return ZERO
    (a1, c1) = alpha.head
    rest = alpha.rest
    if norm(a1) > x:
        # leading exponent unusable: best term lives strictly below w^a1
        return _greatest_power_below(a1, x)
    if c1 > x:
        return OrdinalTerm(((a1, x),) + _greatest_power_below(a1, x).summands)
    if not rest.is_zero:
        return OrdinalTerm(((a1, c1),) + greatest_below(rest, x).summands)
    if c1 > 1:
        return OrdinalTerm(((a1, c1 - 1),) + _greatest_power_below(a1, x).summands)
    return _greatest_power_below(a1, x)


def max_below_with_norm(alpha: OrdinalTerm, x: int) -> OrdinalTerm:
    """max{ b < alpha : norm(b) <= x } under the hypothesis norm(alpha) <= x.

    Agrees with ``predecessor(alpha, x)`` (tested against the enumeration);
    computed by the greedy construction rather than predecessor descent.
    """
    if alpha.is_zero:
        raise PreconditionViolated("alpha must be positive")
    if norm(alpha) > x:
        raise PreconditionViolated(f"norm({alpha}) = {norm(alpha)} > {x}")
    return greatest_below(alpha, x)


def enumerate_below(alpha: OrdinalTerm, x: int, max_count: int = DEFAULT_ENUM_CAP) -> list[OrdinalTerm]:
    """All terms b < alpha with norm(b) <= x, duplicate-free, sorted ascending."""
    if x < 0:
        raise ValueError("x must be a natural number")
    memo: dict[OrdinalTerm, tuple[OrdinalTerm, ...]] = {}
    budget = [max_count]

    def powers_of(e: OrdinalTerm) -> tuple[OrdinalTerm, ...]:
        # all w^e*c + t with c in 1..x and t < w^e, norm <= x
        out = []
        tails = gen(omega_power(e))
        for c in range(1, x + 1):
            lead = ((e, c),)
            for t in tails:
                out.append(OrdinalTerm(lead + t.summands))
        return tuple(out)

    def gen(a: OrdinalTerm) -> tuple[OrdinalTerm, ...]:
        if a in memo:
            return memo[a]
        if a.is_zero:
            memo[a] = ()
            return ()
        (a1, c1) = a.head
        rest = a.rest
        out: list[OrdinalTerm] = [ZERO]
        for e in gen(a1):
            if norm(e) <= x:
                out.extend(powers_of(e))
        if norm(a1) <= x:
            top = min(c1 - 1, x)
            if top >= 1:
                tails = gen(omega_power(a1))
                for c in range(1, top + 1):
                    lead = ((a1, c),)
                    for t in tails:
                        out.append(OrdinalTerm(lead + t.summands))
            if c1 <= x:
                lead = ((a1, c1),)
                for t in gen(rest):
                    out.append(OrdinalTerm(lead + t.summands))
        budget[0] -= len(out)
        if budget[0] < 0:
            raise BudgetExceeded(f"enumeration below {a} exceeded {max_count} terms")
        res = tuple(out)
        memo[a] = res
        return res

    return sorted(gen(alpha))


def pointwise_leq(beta: OrdinalTerm, alpha: OrdinalTerm, x: int,
                  max_steps: int = DEFAULT_CHAIN_STEPS) -> bool:
    """Reflexive pointwise order at x.

    Decided by walking the unique descending chain from alpha (successors
    lose 1, limits step to their x-th fundamental member) until beta is
    met or passed.
    """
    if x < 0:
        raise ValueError("x must be a natural number")
    cur = alpha
    steps = 0
    while beta < cur:
        if kind(cur) is OrdinalKind.SUCCESSOR:
            cur = _strip_one(cur)
        else:
            cur = fundamental(cur, x)
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded("pointwise chain exceeded step budget", steps=steps)
    return cur == beta


def cnf_add(a: OrdinalTerm, b: OrdinalTerm) -> OrdinalTerm:
    """Ordinal sum a + b in normal form (lower-left summands absorb)."""
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    e = b.summands[0][0]
    keep = 0
    while keep < len(a.summands) and e < a.summands[keep][0]:
        keep += 1
    kept = a.summands[:keep]
    if keep < len(a.summands) and a.summands[keep][0] == e:
        merged = ((e, a.summands[keep][1] + b.summands[0][1]),)
        return OrdinalTerm(kept + merged + b.summands[1:])
    return OrdinalTerm(kept + b.summands)


def cnf_mul(a: OrdinalTerm, b: OrdinalTerm) -> OrdinalTerm:
    """Ordinal product a * b in normal form (b copies of a)."""
    if a.is_zero or b.is_zero:
        return ZERO
    a1, c1 = a.head
    out = ZERO
    for (f, d) in b.summands:
        if f.is_zero:
            part = OrdinalTerm(((a1, c1 * d),) + a.summands[1:])
        else:
            part = omega_power(cnf_add(a1, f), d)
        out = cnf_add(out, part)
    return out


# --- text form ------------------------------------------------------------

def _atom_text(e: OrdinalTerm) -> str:
    if e.is_finite:
        return str(e.as_int())
    if e == OMEGA:
        return "w"
    return "(" + to_text(e) + ")"


def to_text(a: OrdinalTerm) -> str:
    """Canonical ASCII rendering, e.g. ``w^2*3 + w*5 + 2``."""
    if a.is_zero:
        return "0"
    parts = []
    for expo, coeff in a.summands:
        if expo.is_zero:
            parts.append(str(coeff))
            continue
        s = "w" if expo == ONE else "w^" + _atom_text(expo)
        if coeff != 1:
            s += f"*{coeff}"
        parts.append(s)
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str, max_depth: int):
        self.text = text
        self.pos = 0
        self.max_depth = max_depth
        self.canonical = True

    def error(self, msg: str):
        raise OrdinalParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def atom(self, depth: int) -> OrdinalTerm:
        c = self.peek()
        if c == "w":
            self.pos += 1
            return OMEGA
        if c == "(":
            self.pos += 1
            inner = self.sum(depth)
            self.take(")")
            return inner
        return from_int(self.nat())

    def mono(self, depth: int) -> tuple[OrdinalTerm, int]:
        c = self.peek()
        if c == "w":
            self.pos += 1
            expo = ONE
            if self.peek() == "^":
                self.pos += 1
                if depth + 1 > self.max_depth:
                    self.error(f"exponent nesting deeper than {self.max_depth}")
                expo = self.atom(depth + 1)
            coeff = 1
            if self.peek() == "*":
                self.pos += 1
                coeff = self.nat()
                if coeff < 1:
                    self.error("coefficient must be >= 1")
            return (expo, coeff)
        return (ZERO, self.nat())

    def sum(self, depth: int) -> OrdinalTerm:
        monos = [self.mono(depth)]
        while self.peek() == "+":
            self.pos += 1
            monos.append(self.mono(depth))
        nonzero = [(e, c) for (e, c) in monos if c > 0]
        if len(nonzero) != len(monos) and len(monos) > 1:
            self.canonical = False
        for (e1, _), (e2, _) in zip(nonzero, nonzero[1:]):
            if not e2 < e1:
                self.canonical = False
        term = ZERO
        for e, c in nonzero:
            term = cnf_add(term, omega_power(e, c))
        return term


def parse(text: str, max_depth: int = DEFAULT_EXPONENT_DEPTH) -> OrdinalTerm:
    """Parse ordinal text; re-normalizes non-canonical sums with a warning."""
    p = _Parser(text, max_depth)
    if p.peek() == "":
        p.error("empty input")
    term = p.sum(0)
    p.skip_ws()
    if p.pos != len(p.text):
        p.error("trailing input")
    if not p.canonical:
        warnings.warn(
            f"non-canonical ordinal text {text!r} normalized to {to_text(term)!r}",
            NonCanonicalWarning,
            stacklevel=2,
        )
    return term

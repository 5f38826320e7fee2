"""Hardy and Cichon hierarchies for a closed family of control functions.

Control functions are monotone expansive maps on the naturals drawn from a
validated family (successor, +k, *k, affine), so the hierarchy premises
hold by construction.  Values are plain Python integers (arbitrary
precision); evaluation is guarded by explicit budgets and never truncates
silently.

Evaluation walks the predecessor recursion iteratively.  A finite tail
w^0*k is consumed in one batch using the closed form of the k-th iterate;
this is exactly k predecessor steps, so results are bit-identical to the
one-step recursion (the naive recursion is kept in the test suite as an
oracle).  ``max_recursion_steps`` counts evaluator events (one per batch
or limit step); ``max_value_bits`` bounds the integers produced, and
over-budget iterates are detected before they are materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .ordinal import OrdinalTerm, fundamental, predecessor


@dataclass(frozen=True)
class ControlFunction:
    """g(x) = a*x + b, tagged with the family it was built from.

    Families: ``succ`` (x+1), ``add:k`` (x+k, k>=1), ``mul:k`` (k*x, k>=2),
    ``affine:a:b`` (a>=1, b>=0, a+b>=2).  Every member is monotone and
    expansive; the identity map is excluded.
    """

    family: str
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 0 or self.a + self.b < 2:
            raise ValueError(f"not monotone-expansive-nontrivial: a={self.a}, b={self.b}")

    def __str__(self) -> str:
        return self.family


def successor() -> ControlFunction:
    return ControlFunction("succ", 1, 1)


def add_constant(k: int) -> ControlFunction:
    if k < 1:
        raise ValueError("add constant must be >= 1")
    return ControlFunction(f"add:{k}", 1, k)


def mul_constant(k: int) -> ControlFunction:
    if k < 2:
        raise ValueError("mul constant must be >= 2")
    return ControlFunction(f"mul:{k}", k, 0)


def affine(a: int, b: int) -> ControlFunction:
    return ControlFunction(f"affine:{a}:{b}", a, b)


def parse_control(text: str) -> ControlFunction:
    """Parse ``succ``, ``add:k``, ``mul:k`` or ``affine:a:b``."""
    parts = text.strip().split(":")
    try:
        if parts == ["succ"]:
            return successor()
        if parts[0] == "add" and len(parts) == 2:
            return add_constant(int(parts[1]))
        if parts[0] == "mul" and len(parts) == 2:
            return mul_constant(int(parts[1]))
        if parts[0] == "affine" and len(parts) == 3:
            return affine(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad control function {text!r}: {exc}") from None
    raise ValueError(f"bad control function {text!r}")


def premultiply(d: int, g: ControlFunction) -> ControlFunction:
    """The control x -> d * g(x); stays inside the affine family (d >= 1)."""
    if d < 1:
        raise ValueError("factor must be >= 1")
    if d == 1:
        return g
    return affine(d * g.a, d * g.b)


@dataclass(frozen=True)
class EvalBudget:
    """Evaluator guard: events and value width, both >= 1."""

    max_recursion_steps: int = 10**7
    max_value_bits: int = 10**6

    def __post_init__(self):
        if self.max_recursion_steps < 1 or self.max_value_bits < 1:
            raise ValueError("budget fields must be >= 1")


DEFAULT_BUDGET = EvalBudget()


def apply(g: ControlFunction, x: int) -> int:
    """g(x)."""
    if x < 0:
        raise ValueError("x must be a natural number")
    return g.a * x + g.b


def iterate(g: ControlFunction, i: int, x: int, max_value_bits: int | None = None) -> int:
    """The i-th iterate g^i(x), via the closed form of the affine family."""
    if i < 0 or x < 0:
        raise ValueError("arguments must be natural numbers")
    if g.a == 1:
        result = x + i * g.b
    else:
        # a^i*x + b*(a^i-1)/(a-1); reject clearly over-wide results unmaterialized
        if max_value_bits is not None:
            low = i * (g.a.bit_length() - 1) + max(x.bit_length(), 1) - 1
            if low > max_value_bits:
                raise BudgetExceeded(
                    f"iterate result would exceed the value cap of {max_value_bits} bits")
        p = g.a**i
        result = p * x + g.b * (p - 1) // (g.a - 1)
    if max_value_bits is not None and result.bit_length() > max_value_bits:
        raise BudgetExceeded(
            f"iterate produced {result.bit_length()} bits (cap {max_value_bits})")
    return result


def _split_finite_tail(a: OrdinalTerm) -> tuple[OrdinalTerm, int]:
    """(prefix, k) where a = prefix + k with k the finite tail (0 if none)."""
    if a.is_zero or not a.summands[-1][0].is_zero:
        return a, 0
    return OrdinalTerm(a.summands[:-1]), a.summands[-1][1]


def hardy(h: ControlFunction, alpha: OrdinalTerm, x: int,
          budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """h^alpha(x) by the predecessor recursion  h^a(x) = h^{P_x(a)}(h(x))."""
    if x < 0:
        raise ValueError("x must be a natural number")
    cur = alpha
    events = 0
    while not cur.is_zero:
        events += 1
        if events > budget.max_recursion_steps:
            raise BudgetExceeded("hardy evaluation exceeded step budget", steps=events)
        prefix, k = _split_finite_tail(cur)
        if k:
            x = iterate(h, k, x, budget.max_value_bits)
            cur = prefix
        else:
            nxt = predecessor(cur, x)
            x = iterate(h, 1, x, budget.max_value_bits)
            cur = nxt
    return x


def cichon(h: ControlFunction, alpha: OrdinalTerm, x: int,
           budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """h_alpha(x) by the predecessor recursion  h_a(x) = 1 + h_{P_x(a)}(h(x)).

    On BudgetExceeded the exception's ``partial`` field is a sound lower
    bound on the true value (the count had already reached it).
    """
    if x < 0:
        raise ValueError("x must be a natural number")
    cur = alpha
    value = 0
    events = 0
    while not cur.is_zero:
        events += 1
        if events > budget.max_recursion_steps:
            raise BudgetExceeded("cichon evaluation exceeded step budget",
                                 steps=events, partial=value)
        prefix, k = _split_finite_tail(cur)
        if k:
            value += k
            if not prefix.is_zero:
                # the argument only matters while ordinal structure remains
                try:
                    x = iterate(h, k, x, budget.max_value_bits)
                except BudgetExceeded as exc:
                    raise BudgetExceeded(str(exc), steps=events, partial=value) from None
            cur = prefix
        else:
            nxt = predecessor(cur, x)
            value += 1
            try:
                x = iterate(h, 1, x, budget.max_value_bits)
            except BudgetExceeded as exc:
                raise BudgetExceeded(str(exc), steps=events, partial=value) from None
            cur = nxt
    return value


def hardy_fundamental_form(h: ControlFunction, alpha: OrdinalTerm, x: int,
                           budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """h^alpha(x) by the equivalent successor/limit recursion.

    Cross-testing entry point only: h^{a+1}(x) = h^a(h(x)) and
    h^lam(x) = h^{lam(x)}(x).
    """
    if x < 0:
        raise ValueError("x must be a natural number")
    cur = alpha
    events = 0
    while not cur.is_zero:
        events += 1
        if events > budget.max_recursion_steps:
            raise BudgetExceeded("hardy evaluation exceeded step budget", steps=events)
        prefix, k = _split_finite_tail(cur)
        if k:
            x = iterate(h, k, x, budget.max_value_bits)
            cur = prefix
        else:
            cur = fundamental(cur, x)
    return x


def hardy_via_cichon_check(h: ControlFunction, alpha: OrdinalTerm, x: int,
                           budget: EvalBudget = DEFAULT_BUDGET) -> bool:
    """Whether h^alpha(x) equals h iterated h_alpha(x) times on x."""
    direct = hardy(h, alpha, x, budget)
    count = cichon(h, alpha, x, budget)
    return direct == iterate(h, count, x, budget.max_value_bits)

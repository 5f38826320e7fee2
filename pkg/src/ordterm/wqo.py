"""Normed well quasi orders built from a closed family of constructors.

Constructors: ``fin:d`` (the linear order on {0..d-1}), ``fineq:d`` (the
same set under equality only), ``nat``, ``lex(S,T)`` and ``prod(S,T)``
pairs, ``mset(S)`` finite multisets.  Lexicographic products and multisets
require well-ordered operands.

Norms follow the usual choices: 0 throughout a finite equality wqo, the
value itself in ``nat`` and ``fin:d``, max of the components in pairs, and
max of multiplicities and member norms in multisets; every norm ball
A_{<=n} is finite.

Element values are plain data: ints, 2-tuples, and ``Multiset``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded, NotAWellOrder, ShapeMismatch
from .ordinal import (
    ZERO,
    OrdinalTerm,
    cnf_add,
    cnf_mul,
    from_int,
    omega_power,
)

DEFAULT_ELEMENT_CAP = 10**6


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str  # fin | fineq | nat | lex | prod | mset
    size: int | None = None
    left: "SpaceDescriptor | None" = None
    right: "SpaceDescriptor | None" = None
    base: "SpaceDescriptor | None" = None

    def __str__(self) -> str:
        return space_to_text(self)


NATURALS = SpaceDescriptor("nat")


def finite(d: int) -> SpaceDescriptor:
    """The linear order on {0, ..., d-1}."""
    if d < 1:
        raise ValueError("finite order needs d >= 1")
    return SpaceDescriptor("fin", size=d)


def finite_eq(d: int) -> SpaceDescriptor:
    """{0, ..., d-1} under equality; a wqo by pigeonhole, not a well order for d >= 2."""
    if d < 1:
        raise ValueError("finite set needs d >= 1")
    return SpaceDescriptor("fineq", size=d)


def lex_product(left: SpaceDescriptor, right: SpaceDescriptor) -> SpaceDescriptor:
    if not (is_well_order(left) and is_well_order(right)):
        raise NotAWellOrder("lexicographic product needs well-ordered operands")
    return SpaceDescriptor("lex", left=left, right=right)


def cartesian_product(left: SpaceDescriptor, right: SpaceDescriptor) -> SpaceDescriptor:
    return SpaceDescriptor("prod", left=left, right=right)


def multiset_space(base: SpaceDescriptor) -> SpaceDescriptor:
    if not is_well_order(base):
        raise NotAWellOrder("multiset order needs a well-ordered base")
    return SpaceDescriptor("mset", base=base)


def nat_product(d: int) -> SpaceDescriptor:
    """N^d under the product (componentwise) order; d = 0 is the one-point space."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if d == 0:
        return finite(1)
    space = NATURALS
    for _ in range(d - 1):
        space = cartesian_product(NATURALS, space)
    return space


def nat_lex(d: int) -> SpaceDescriptor:
    """N^d ordered lexicographically (first coordinate major)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    space = NATURALS
    for _ in range(d - 1):
        space = lex_product(NATURALS, space)
    return space


def is_well_order(space: SpaceDescriptor) -> bool:
    if space.kind in ("fin", "nat"):
        return True
    if space.kind == "fineq":
        return space.size == 1
    if space.kind == "lex":
        return True  # operands checked at construction
    if space.kind == "mset":
        return True
    return False


# --- elements ---------------------------------------------------------------


@dataclass(frozen=True)
class Multiset:
    """A finite multiset as a canonically sorted tuple of (element, multiplicity)."""

    entries: tuple[tuple[object, int], ...] = ()

    def __post_init__(self):
        keys = [_struct_key(e) for e, _ in self.entries]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("entries must be sorted and duplicate-free; use Multiset.of")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be >= 1")

    @classmethod
    def of(cls, mapping) -> "Multiset":
        items = mapping.items() if hasattr(mapping, "items") else mapping
        merged: dict = {}
        for elem, mult in items:
            merged[elem] = merged.get(elem, 0) + mult
        entries = tuple(sorted(((e, m) for e, m in merged.items() if m > 0),
                               key=lambda em: _struct_key(em[0])))
        return cls(entries)

    def count(self, elem) -> int:
        for e, m in self.entries:
            if e == elem:
                return m
        return 0

    def support(self):
        return [e for e, _ in self.entries]

    def __str__(self) -> str:
        return element_to_text(self)


def _struct_key(v):
    if isinstance(v, bool):
        raise ShapeMismatch("booleans are not elements")
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, tuple):
        return (1, tuple(_struct_key(c) for c in v))
    if isinstance(v, Multiset):
        return (2, tuple((_struct_key(e), m) for e, m in v.entries))
    raise ShapeMismatch(f"unsupported element {v!r}")


def _check(space: SpaceDescriptor, v):
    if space.kind in ("fin", "fineq"):
        if not isinstance(v, int) or not 0 <= v < space.size:
            raise ShapeMismatch(f"{v!r} is not in [{space.size}]")
    elif space.kind == "nat":
        if not isinstance(v, int) or v < 0:
            raise ShapeMismatch(f"{v!r} is not a natural number")
    elif space.kind in ("lex", "prod"):
        if not (isinstance(v, tuple) and len(v) == 2):
            raise ShapeMismatch(f"{v!r} is not a pair")
        _check(space.left, v[0])
        _check(space.right, v[1])
    elif space.kind == "mset":
        if not isinstance(v, Multiset):
            raise ShapeMismatch(f"{v!r} is not a multiset")
        for e, _ in v.entries:
            _check(space.base, e)
    else:
        raise ShapeMismatch(f"unknown space {space.kind}")


def leq(space: SpaceDescriptor, a, b) -> bool:
    """The ordering of the space: a <= b."""
    _check(space, a)
    _check(space, b)
    return _leq(space, a, b)


def _leq(space: SpaceDescriptor, a, b) -> bool:
    k = space.kind
    if k in ("fin", "nat"):
        return a <= b
    if k == "fineq":
        return a == b
    if k == "lex":
        if a[0] == b[0]:
            return _leq(space.right, a[1], b[1])
        return _leq(space.left, a[0], b[0])  # strict since a[0] != b[0] and left is a wo
    if k == "prod":
        return _leq(space.left, a[0], b[0]) and _leq(space.right, a[1], b[1])
    if k == "mset":
        support = sorted({e for e, _ in a.entries} | {e for e, _ in b.entries},
                         key=_struct_key)
        for x in support:
            if a.count(x) > b.count(x):
                if not any(_strictly_above(space.base, y, x) and a.count(y) < b.count(y)
                           for y in support):
                    return False
        return True
    raise ShapeMismatch(f"unknown space {k}")


def _strictly_above(space: SpaceDescriptor, y, x) -> bool:
    return y != x and _leq(space, x, y)


def norm_of(space: SpaceDescriptor, a) -> int:
    """The norm of an element; every ball of bounded norm is finite."""
    _check(space, a)
    return _norm(space, a)


def _norm(space: SpaceDescriptor, a) -> int:
    k = space.kind
    if k == "fineq":
        return 0
    if k in ("fin", "nat"):
        return a
    if k in ("lex", "prod"):
        return max(_norm(space.left, a[0]), _norm(space.right, a[1]))
    if k == "mset":
        return max((max(m, _norm(space.base, e)) for e, m in a.entries), default=0)
    raise ShapeMismatch(f"unknown space {k}")


def elements_up_to(space: SpaceDescriptor, n: int,
                   max_count: int = DEFAULT_ELEMENT_CAP) -> list:
    """All elements of norm at most n, duplicate-free, in a deterministic order."""
    if n < 0:
        raise ValueError("n must be a natural number")
    out = _elements(space, n)
    if len(out) > max_count:
        raise BudgetExceeded(f"norm ball has {len(out)} > {max_count} elements")
    return out


def _elements(space: SpaceDescriptor, n: int) -> list:
    k = space.kind
    if k == "fineq":
        return list(range(space.size))
    if k == "fin":
        return list(range(min(n + 1, space.size)))
    if k == "nat":
        return list(range(n + 1))
    if k in ("lex", "prod"):
        return [(a, b)
                for a in _elements(space.left, n)
                for b in _elements(space.right, n)]
    if k == "mset":
        base = _elements(space.base, n)
        out = []
        for mults in itertools.product(range(n + 1), repeat=len(base)):
            out.append(Multiset.of(zip(base, mults)))
        return out
    raise ShapeMismatch(f"unknown space {k}")


# --- order types ------------------------------------------------------------


def _nat_power_dims(space: SpaceDescriptor) -> int | None:
    """d when the space is an N^d product shape, else None."""
    if space.kind == "nat":
        return 1
    if space.kind == "prod":
        l = _nat_power_dims(space.left)
        r = _nat_power_dims(space.right)
        if l is not None and r is not None:
            return l + r
    return None


@lru_cache(maxsize=None)
def order_type(space: SpaceDescriptor) -> OrdinalTerm:
    """The order type of a well order from the closed family.

    Cartesian products of copies of N are not well orders; for those the
    *maximal* order type w^d is returned, matching their lexicographic
    linearisations.
    """
    k = space.kind
    if k == "fin":
        return from_int(space.size)
    if k == "fineq":
        if space.size == 1:
            return from_int(1)
        raise NotAWellOrder("a finite equality wqo with d >= 2 is not a well order")
    if k == "nat":
        return omega_power(from_int(1))
    if k == "lex":
        # left-major: o(left) copies of o(right)
        return cnf_mul(order_type(space.right), order_type(space.left))
    if k == "mset":
        return omega_power(order_type(space.base))
    if k == "prod":
        d = _nat_power_dims(space)
        if d is not None:
            return omega_power(from_int(d))
        raise NotAWellOrder("maximal order type known only for N^d products")
    raise ShapeMismatch(f"unknown space {k}")


def element_order_type(space: SpaceDescriptor, a) -> OrdinalTerm:
    """The position of an element inside the order type: an order isomorphism."""
    _check(space, a)
    return _eot(space, a)


def _eot(space: SpaceDescriptor, a) -> OrdinalTerm:
    k = space.kind
    if k in ("fin", "nat") or (k == "fineq" and space.size == 1):
        return from_int(a)
    if k == "lex":
        step = cnf_mul(order_type(space.right), _eot(space.left, a[0]))
        return cnf_add(step, _eot(space.right, a[1]))
    if k == "mset":
        positions = sorted(((_eot(space.base, e), m) for e, m in a.entries), reverse=True)
        out = ZERO
        for pos, mult in positions:
            out = cnf_add(out, omega_power(pos, mult))
        return out
    raise NotAWellOrder(f"{space_to_text(space)} is not a well order")


# --- text forms -------------------------------------------------------------


def space_to_text(space: SpaceDescriptor) -> str:
    k = space.kind
    if k == "fin":
        return f"fin:{space.size}"
    if k == "fineq":
        return f"fineq:{space.size}"
    if k == "nat":
        return "nat"
    if k == "lex":
        return f"lex({space_to_text(space.left)},{space_to_text(space.right)})"
    if k == "prod":
        return f"prod({space_to_text(space.left)},{space_to_text(space.right)})"
    if k == "mset":
        return f"mset({space_to_text(space.base)})"
    raise ShapeMismatch(f"unknown space {k}")


def parse_space(text: str) -> SpaceDescriptor:
    """Parse ``fin:d``, ``fineq:d``, ``nat``, ``lex(S,T)``, ``prod(S,T)``, ``mset(S)``."""
    s = text.strip()
    if s == "nat":
        return NATURALS
    if s.startswith("fin:"):
        return finite(int(s[4:]))
    if s.startswith("fineq:"):
        return finite_eq(int(s[6:]))
    for head, builder in (("lex(", lex_product), ("prod(", cartesian_product)):
        if s.startswith(head) and s.endswith(")"):
            inner = s[len(head):-1]
            depth = 0
            for i, c in enumerate(inner):
                if c == "(":
                    depth += 1
                elif c == ")":
                    depth -= 1
                elif c == "," and depth == 0:
                    return builder(parse_space(inner[:i]), parse_space(inner[i + 1:]))
            raise ValueError(f"missing comma in {text!r}")
    if s.startswith("mset(") and s.endswith(")"):
        return multiset_space(parse_space(s[5:-1]))
    raise ValueError(f"bad space {text!r}")


def element_to_text(a) -> str:
    if isinstance(a, int):
        return str(a)
    if isinstance(a, tuple):
        return "(" + ",".join(element_to_text(c) for c in a) + ")"
    if isinstance(a, Multiset):
        return "{" + ", ".join(f"{element_to_text(e)}:{m}" for e, m in a.entries) + "}"
    raise ShapeMismatch(f"unsupported element {a!r}")


def parse_element(text: str):
    """Parse an element literal: integer, ``(a,b)`` pair, or ``{e:mult, ...}``."""
    s = text.strip()
    if not s:
        raise ValueError("empty element literal")
    if s[0] == "(":
        if s[-1] != ")":
            raise ValueError(f"unbalanced pair {text!r}")
        inner = s[1:-1]
        depth = 0
        for i, c in enumerate(inner):
            if c in "({":
                depth += 1
            elif c in ")}":
                depth -= 1
            elif c == "," and depth == 0:
                return (parse_element(inner[:i]), parse_element(inner[i + 1:]))
        raise ValueError(f"missing comma in pair {text!r}")
    if s[0] == "{":
        if s[-1] != "}":
            raise ValueError(f"unbalanced multiset {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            return Multiset.of({})
        parts = []
        depth = 0
        start = 0
        for i, c in enumerate(inner):
            if c in "({":
                depth += 1
            elif c in ")}":
                depth -= 1
            elif c == "," and depth == 0:
                parts.append(inner[start:i])
                start = i + 1
        parts.append(inner[start:])
        entries = []
        for part in parts:
            elem_text, _, mult_text = part.rpartition(":")
            if not elem_text:
                raise ValueError(f"multiset entry needs elem:mult, got {part!r}")
            entries.append((parse_element(elem_text), int(mult_text)))
        return Multiset.of(entries)
    return int(s)

"""Guarded-command integer programs and termination-proof checking.

The program DSL (grammar also in docs/grammars.md)::

    program := stmt* ;
    stmt    := "var" ident ("," ident)* ";"
             | "loc" ident ("," ident)* ";"
             | "trans" ident ":" ident "->" ident
               ("when" cond ("," cond)*)? ("do" asgn ("," asgn)*)? ";"
    cond    := expr cmp expr          cmp := "<" | "<=" | ">" | ">=" | "=" | "!="
    asgn    := ident ":=" expr
    expr    := ("-")? term (("+"|"-") term)*
    term    := INT | ident | INT "*" ident | ident "*" INT

Guards are conjunctions of affine comparisons; updates are parallel affine
assignments.  ``fig1()`` is the built-in two-transition doubling loop
(while x >= 0 and y > 0: either decrement x and double n, or reload x from
n and decrement y).

Ranking checks accept lexicographic affine tuples (well order), the same
tuples under the product order (quasi-ranking), multiset ranks over [d],
and ordinal-valued ranks through the order isomorphism of N^d-lex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    NondeterminismEncountered,
    ProgramParseError,
    ShapeMismatch,
)
from .hierarchy import (
    DEFAULT_BUDGET,
    ControlFunction,
    EvalBudget,
    apply,
    cichon,
    hardy,
    iterate,
    mul_constant,
)
from .ordinal import OrdinalTerm, cnf_add, from_int, omega_power
from .wqo import Multiset, finite, leq, multiset_space, nat_lex, element_order_type

DEFAULT_RUN_STEPS = 10**4
DEFAULT_PAIR_CAP = 10**4


# --- affine expressions and the DSL ----------------------------------------


@dataclass(frozen=True)
class AffineExpr:
    """const + sum of coeff*var over program variables (primed allowed in relations)."""

    const: int = 0
    coeffs: tuple[tuple[str, int], ...] = ()

    def evaluate(self, valuation: dict) -> int:
        total = self.const
        for var, coeff in self.coeffs:
            if var not in valuation:
                raise ShapeMismatch(f"unknown variable {var!r}")
            total += coeff * valuation[var]
        return total

    def variables(self) -> set:
        return {v for v, _ in self.coeffs}

    def __str__(self) -> str:
        parts = []
        for var, coeff in self.coeffs:
            if coeff == 1:
                parts.append(var)
            elif coeff == -1:
                parts.append(f"-{var}")
            else:
                parts.append(f"{coeff}*{var}")
        if self.const or not parts:
            parts.append(str(self.const))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class Comparison:
    lhs: AffineExpr
    op: str
    rhs: AffineExpr

    def holds(self, valuation: dict) -> bool:
        return _CMP[self.op](self.lhs.evaluate(valuation), self.rhs.evaluate(valuation))

    def __str__(self) -> str:
        return f"{self.lhs} {self.op} {self.rhs}"


@dataclass(frozen=True)
class Transition:
    name: str
    source: str
    target: str
    guard: tuple[Comparison, ...]
    update: tuple[tuple[str, AffineExpr], ...]


@dataclass(frozen=True)
class TransitionSystem:
    variables: tuple[str, ...]
    locations: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise KeyError(name)


@dataclass(frozen=True)
class Configuration:
    location: str
    values: tuple[int, ...]  # in the system's variable order

    def valuation(self, sys: TransitionSystem) -> dict:
        return dict(zip(sys.variables, self.values))


def make_config(sys: TransitionSystem, location: str, **values: int) -> Configuration:
    if location not in sys.locations:
        raise ShapeMismatch(f"unknown location {location!r}")
    missing = set(sys.variables) - set(values)
    extra = set(values) - set(sys.variables)
    if missing or extra:
        raise ShapeMismatch(f"valuation mismatch: missing {sorted(missing)}, extra {sorted(extra)}")
    return Configuration(location, tuple(values[v] for v in sys.variables))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*'?)|(:=|->|<=|>=|!=|[;:,<>=*+()-]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ProgramParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            tokens.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, tokens, i, allow_primed=False):
        self.tokens = tokens
        self.i = i
        self.allow_primed = allow_primed

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", -1)

    def error(self, msg):
        kind, val, pos = self.peek()
        raise ProgramParseError(f"{msg}, got {val!r}", pos if pos >= 0 else 0)

    def term(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.i += 1
            if self.peek()[:2] == ("sym", "*"):
                self.i += 1
                k2, v2, _ = self.peek()
                if k2 != "ident":
                    self.error("expected a variable after '*'")
                self.i += 1
                return (0, ((self._var(v2, pos), val),))
            return (val, ())
        if kind == "ident":
            self.i += 1
            name = self._var(val, pos)
            if self.peek()[:2] == ("sym", "*"):
                self.i += 1
                k2, v2, _ = self.peek()
                if k2 != "int":
                    self.error("expected a number after '*'")
                self.i += 1
                return (0, ((name, v2),))
            return (0, ((name, 1),))
        self.error("expected a term")

    def _var(self, name, pos):
        if name.endswith("'") and not self.allow_primed:
            raise ProgramParseError("primed variables are only allowed in relations", pos)
        return name

    def expr(self) -> AffineExpr:
        const = 0
        coeffs: dict[str, int] = {}
        sign = 1
        if self.peek()[:2] == ("sym", "-"):
            sign = -1
            self.i += 1
        while True:
            c, cs = self.term()
            const += sign * c
            for name, k in cs:
                coeffs[name] = coeffs.get(name, 0) + sign * k
            nxt = self.peek()
            if nxt[0] == "sym" and nxt[1] in "+-":
                sign = 1 if nxt[1] == "+" else -1
                self.i += 1
            else:
                break
        entries = tuple(sorted((v, k) for v, k in coeffs.items() if k != 0))
        return AffineExpr(const, entries)


def parse_affine(text: str, allow_primed: bool = False) -> AffineExpr:
    p = _ExprParser(_tokenize(text), 0, allow_primed)
    e = p.expr()
    if p.i != len(p.tokens):
        p.error("trailing input in expression")
    return e


def parse_comparison(text: str, allow_primed: bool = False) -> Comparison:
    p = _ExprParser(_tokenize(text), 0, allow_primed)
    lhs = p.expr()
    kind, op, _ = p.peek()
    if kind != "sym" or op not in _CMP:
        p.error("expected a comparison operator")
    p.i += 1
    rhs = p.expr()
    if p.i != len(p.tokens):
        p.error("trailing input in comparison")
    return Comparison(lhs, op, rhs)


def parse_program(text: str) -> TransitionSystem:
    """Parse the guarded-command DSL into a transition system."""
    tokens = _tokenize(text)
    i = 0
    variables: list[str] = []
    locations: list[str] = []
    transitions: list[Transition] = []

    def expect(kind, value=None):
        nonlocal i
        if i >= len(tokens):
            raise ProgramParseError(f"unexpected end of program (wanted {value or kind})", len(text))
        k, v, pos = tokens[i]
        if k != kind or (value is not None and v != value):
            raise ProgramParseError(f"expected {value or kind}, got {v!r}", pos)
        i += 1
        return v

    def at(value):
        return i < len(tokens) and tokens[i][0] == "sym" and tokens[i][1] == value

    while i < len(tokens):
        kw = expect("ident")
        if kw in ("var", "loc"):
            names = [expect("ident")]
            while at(","):
                i += 1
                names.append(expect("ident"))
            expect("sym", ";")
            (variables if kw == "var" else locations).extend(names)
        elif kw == "trans":
            name = expect("ident")
            expect("sym", ":")
            source = expect("ident")
            expect("sym", "->")
            target = expect("ident")
            guard: list[Comparison] = []
            update: list[tuple[str, AffineExpr]] = []
            if i < len(tokens) and tokens[i][:2] == ("ident", "when"):
                i += 1
                while True:
                    p = _ExprParser(tokens, i)
                    lhs = p.expr()
                    k, op, pos = p.peek()
                    if k != "sym" or op not in _CMP:
                        raise ProgramParseError(f"expected a comparison, got {op!r}", pos)
                    p.i += 1
                    rhs = p.expr()
                    i = p.i
                    guard.append(Comparison(lhs, op, rhs))
                    if at(","):
                        i += 1
                    else:
                        break
            if i < len(tokens) and tokens[i][:2] == ("ident", "do"):
                i += 1
                while True:
                    var = expect("ident")
                    expect("sym", ":=")
                    p = _ExprParser(tokens, i)
                    rhs = p.expr()
                    i = p.i
                    update.append((var, rhs))
                    if at(","):
                        i += 1
                    else:
                        break
            expect("sym", ";")
            transitions.append(Transition(name, source, target, tuple(guard), tuple(update)))
        else:
            raise ProgramParseError(f"expected var/loc/trans, got {kw!r}", tokens[i - 1][2])

    sys = TransitionSystem(tuple(variables), tuple(locations), tuple(transitions))
    declared = set(variables)
    for t in sys.transitions:
        if t.source not in locations or t.target not in locations:
            raise ProgramParseError(f"transition {t.name} uses an undeclared location", 0)
        used = set()
        for c in t.guard:
            used |= c.lhs.variables() | c.rhs.variables()
        for var, e in t.update:
            used |= {var} | e.variables()
        if not used <= declared:
            raise ProgramParseError(
                f"transition {t.name} uses undeclared variables {sorted(used - declared)}", 0)
    return sys


FIG1_SOURCE = """\
var x, y, n;
loc l0;
trans a: l0 -> l0 when x > 0, y > 0 do x := x - 1, n := 2*n;
trans b: l0 -> l0 when x = 0, y > 0 do x := n, y := y - 1, n := 2*n;
"""

_FIG1: TransitionSystem | None = None


def fig1() -> TransitionSystem:
    """The built-in doubling-loop program."""
    global _FIG1
    if _FIG1 is None:
        _FIG1 = parse_program(FIG1_SOURCE)
    return _FIG1


# --- semantics ---------------------------------------------------------------


def step(sys: TransitionSystem, c: Configuration) -> list[tuple[str, Configuration]]:
    """All enabled successors of c, in declaration order; empty list means halt."""
    if len(c.values) != len(sys.variables):
        raise ShapeMismatch("configuration does not match the system's variables")
    val = c.valuation(sys)
    out = []
    for t in sys.transitions:
        if t.source != c.location:
            continue
        if all(g.holds(val) for g in t.guard):
            new = dict(val)
            for var, e in t.update:
                new[var] = e.evaluate(val)
            out.append((t.name, Configuration(t.target, tuple(new[v] for v in sys.variables))))
    return out


def run(sys: TransitionSystem, c0: Configuration, max_steps: int = DEFAULT_RUN_STEPS,
        deterministic: bool = True) -> tuple[list[Configuration], bool]:
    """Maximal execution from c0 up to max_steps: (trace, halted).

    halted is True when the final configuration has no successor.  In
    deterministic mode two simultaneously enabled transitions raise
    NondeterminismEncountered.
    """
    trace = [c0]
    cur = c0
    for _ in range(max_steps):
        succs = step(sys, cur)
        if not succs:
            return trace, True
        if deterministic and len(succs) > 1:
            raise NondeterminismEncountered(
                f"transitions {[name for name, _ in succs]} all enabled at {cur}")
        cur = succs[0][1]
        trace.append(cur)
    return trace, not step(sys, cur)


# --- ranking specifications --------------------------------------------------


@dataclass(frozen=True)
class RankingSpec:
    """A declared ranking: kind in {lex, product, mset, ord}.

    ``components`` are affine expressions: tuple entries for lex/product
    and ord (coordinates of an N^d point, most significant first), and
    multiplicities of d-1, ..., 0 for mset over [d].  ``domain_guard``
    restricts where components must be non-negative (empty = everywhere).
    """

    kind: str
    components: tuple[AffineExpr, ...]
    domain_guard: tuple[Comparison, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "product", "mset", "ord"):
            raise ValueError(f"unknown ranking kind {self.kind!r}")
        if not self.components:
            raise ValueError("ranking needs at least one component")

    @property
    def is_well_order(self) -> bool:
        return self.kind in ("lex", "mset", "ord")


def parse_ranking(text: str) -> RankingSpec:
    """Parse ``lex:f1,..``, ``prod:f1,..``, ``mset:d:e_{d-1},..,e_0`` or ``ord:d:e_{d-1},..,e_0``."""
    head, _, rest = text.partition(":")
    head = head.strip()
    if head in ("lex", "prod"):
        comps = tuple(parse_affine(p) for p in rest.split(","))
        return RankingSpec("lex" if head == "lex" else "product", comps)
    if head in ("mset", "ord"):
        d_text, _, exprs = rest.partition(":")
        d = int(d_text)
        comps = tuple(parse_affine(p) for p in exprs.split(","))
        if len(comps) != d:
            raise ValueError(f"expected {d} component expressions, got {len(comps)}")
        return RankingSpec(head, comps)
    raise ValueError(f"bad ranking {text!r}")


def rank_value(spec: RankingSpec, sys: TransitionSystem, c: Configuration):
    val = c.valuation(sys)
    comps = tuple(e.evaluate(val) for e in spec.components)
    if spec.kind in ("lex", "product"):
        return comps
    if spec.kind == "mset":
        d = len(comps)
        return Multiset.of({d - 1 - i: m for i, m in enumerate(comps) if m > 0})
    # ord: position of the component point inside N^d lex
    d = len(comps)
    point = comps[0] if d == 1 else _nest(comps)
    return element_order_type(nat_lex(d), point)


def _nest(comps):
    point = comps[-1]
    for c in reversed(comps[:-1]):
        point = (c, point)
    return point


def rank_norm(spec: RankingSpec, sys: TransitionSystem, c: Configuration) -> int:
    """The norm of the rank in its space (max component / multiset norm)."""
    val = c.valuation(sys)
    comps = [e.evaluate(val) for e in spec.components]
    if spec.kind == "mset":
        d = len(comps)
        return max((max(m, d - 1 - i) for i, m in enumerate(comps) if m > 0), default=0)
    return max(comps, default=0)


def _rank_components_valid(spec: RankingSpec, sys: TransitionSystem, c: Configuration) -> bool:
    val = c.valuation(sys)
    if spec.domain_guard and not all(g.holds(val) for g in spec.domain_guard):
        return True  # outside the declared domain nothing is required
    return all(e.evaluate(val) >= 0 for e in spec.components)


def _rank_decreases(spec: RankingSpec, before, after) -> bool:
    if spec.kind == "lex":
        return after < before
    if spec.kind == "product":
        return not all(b <= a for b, a in zip(before, after))  # f(c) not<= f(c')
    if spec.kind == "mset":
        d_space = multiset_space(finite(_mset_dim(spec)))
        return before != after and leq(d_space, after, before)
    return after < before  # ord: OrdinalTerm comparison


def _mset_dim(spec: RankingSpec) -> int:
    return len(spec.components)


@dataclass
class RankingReport:
    passed: bool
    mode: str  # "wo-strict-step" or "wqo-qrank-step"
    configs_explored: int
    counterexample: tuple | None = None  # (transition, c, c', rank(c), rank(c'))
    notes: tuple[str, ...] = ()


def _explore_edges(sys: TransitionSystem, domain, max_configs: int):
    """Bounded reachable edge set from the given start configurations."""
    seen = set()
    edges = []
    frontier = list(domain)
    while frontier:
        c = frontier.pop()
        if c in seen:
            continue
        seen.add(c)
        if len(seen) > max_configs:
            raise BudgetExceeded(f"exploration exceeded {max_configs} configurations")
        for name, succ in step(sys, c):
            edges.append((name, c, succ))
            if succ not in seen:
                frontier.append(succ)
    return edges, len(seen)


def check_ranking(sys: TransitionSystem, spec: RankingSpec, domain,
                  max_configs: int = DEFAULT_RUN_STEPS) -> RankingReport:
    """Check the declared ranking on every transition reachable from the domain.

    Well-order ranks must strictly decrease across each step (sufficient
    for the transitive condition).  Product-order quasi-rankings are
    checked per step as f(c) not<= f(c'); the report notes that step-wise
    checking is sufficient but not necessary for the transitive-closure
    condition in that mode.
    """
    edges, explored = _explore_edges(sys, domain, max_configs)
    mode = "wo-strict-step" if spec.is_well_order else "wqo-qrank-step"
    notes = ()
    if not spec.is_well_order:
        notes = ("per-step quasi-ranking checks are sufficient for termination "
                 "but do not themselves establish f(c) not<= f(c') over the "
                 "transitive closure",)
    for name, c, succ in edges:
        for conf in (c, succ):
            if not _rank_components_valid(spec, sys, conf):
                return RankingReport(False, mode, explored,
                                     (name, c, succ, None, None),
                                     notes + ("rank leaves the declared space",))
        before = rank_value(spec, sys, c)
        after = rank_value(spec, sys, succ)
        if not _rank_decreases(spec, before, after):
            return RankingReport(False, mode, explored, (name, c, succ, before, after), notes)
    return RankingReport(True, mode, explored, None, notes)


@dataclass
class ControlReport:
    crank_ok: bool
    control_ok: bool
    n0: int
    steps: int
    crank_witness: tuple | None = None  # (index, norm_before, norm_after, allowed)
    control_witness: tuple | None = None  # (index, norm, allowed)


def check_control(sys: TransitionSystem, spec: RankingSpec, control: ControlFunction,
                  start: Configuration, max_steps: int = DEFAULT_RUN_STEPS,
                  n0: int | None = None) -> ControlReport:
    """Check both control conditions along the run from ``start``.

    Per-step: |f(c')| <= g(|f(c)|) for each transition.  Sequence-level:
    |f(c_i)| <= g^i(n0), by default with n0 = max absolute initial
    variable value (the paper's choice for the built-in program).
    """
    trace, _ = run(sys, start, max_steps)
    norms = [rank_norm(spec, sys, c) for c in trace]
    if n0 is None:
        n0 = max((abs(v) for v in start.values), default=0)
    crank_ok, crank_witness = True, None
    for i in range(len(norms) - 1):
        allowed = apply(control, norms[i])
        if norms[i + 1] > allowed:
            crank_ok, crank_witness = False, (i, norms[i], norms[i + 1], allowed)
            break
    control_ok, control_witness = True, None
    bound = n0
    for i, nm in enumerate(norms):
        if nm > bound:
            control_ok, control_witness = False, (i, nm, bound)
            break
        bound = apply(control, bound)
    return ControlReport(crank_ok, control_ok, n0, len(trace) - 1, crank_witness, control_witness)


# --- disjunctive termination arguments --------------------------------------


@dataclass(frozen=True)
class RankedRelation:
    """A well-founded relation T given as a guard over unprimed/primed variables,
    with a natural-valued ranking that must decrease across T."""

    name: str
    guard: tuple[Comparison, ...]
    rank: AffineExpr

    def holds(self, sys: TransitionSystem, c: Configuration, c2: Configuration) -> bool:
        val = dict(zip(sys.variables, c.values))
        val.update({v + "'": x for v, x in zip(sys.variables, c2.values)})
        return all(g.holds(val) for g in self.guard)


@dataclass(frozen=True)
class DisjunctiveArgument:
    relations: tuple[RankedRelation, ...]


def parse_relation(name: str, text: str) -> RankedRelation:
    """Parse ``guard1, guard2, ... => rank_expr`` with primed variables allowed."""
    guard_text, sep, rank_text = text.partition("=>")
    if not sep:
        raise ValueError(f"relation needs '=>' separating guard and rank: {text!r}")
    guards = tuple(parse_comparison(p, allow_primed=True) for p in guard_text.split(","))
    return RankedRelation(name, guards, parse_affine(rank_text))


@dataclass
class DisjunctiveReport:
    passed: bool
    pairs_checked: int
    uncovered_pair: tuple | None = None  # (c, c')
    rank_violation: tuple | None = None  # (relation, c, c', rank(c), rank(c'))


def check_disjunctive(sys: TransitionSystem, arg: DisjunctiveArgument, domain,
                      max_pairs: int = DEFAULT_PAIR_CAP,
                      max_steps: int = DEFAULT_RUN_STEPS) -> DisjunctiveReport:
    """Bounded check that every c ->+ c' pair lands in some relation.

    Also checks that each relation's rank decreases (staying >= 0) on the
    pairs it covers.  Transitive-closure inclusion is undecidable in
    general; this explores runs from the domain up to the pair budget and
    reports the horizon actually checked.
    """
    pairs_checked = 0
    for start in domain:
        trace, _ = run(sys, start, max_steps)
        for i in range(len(trace)):
            for j in range(i + 1, len(trace)):
                if pairs_checked >= max_pairs:
                    return DisjunctiveReport(True, pairs_checked)
                pairs_checked += 1
                c, c2 = trace[i], trace[j]
                covering = [r for r in arg.relations if r.holds(sys, c, c2)]
                if not covering:
                    return DisjunctiveReport(False, pairs_checked, uncovered_pair=(c, c2))
                for r in covering:
                    before = r.rank.evaluate(c.valuation(sys))
                    after = r.rank.evaluate(c2.valuation(sys))
                    if not (before > after >= 0):
                        return DisjunctiveReport(False, pairs_checked,
                                                 rank_violation=(r.name, c, c2, before, after))
    return DisjunctiveReport(True, pairs_checked)


# --- the built-in program's length identities --------------------------------


def fig1_block_run(x: int, y: int, n: int):
    """Exact run of fig1 from (l0, x, y, n) computed block-by-block.

    Each y-round is a^x then b, collapsed into closed form; the step
    count, trace of block boundaries, and final values are exactly those
    of the one-step semantics (cross-checked in the tests).
    Returns (steps, x_final, y_final, n_final, blocks) where blocks lists
    the configurations after each fired b.
    """
    steps = 0
    blocks = []
    if x < 0 or y <= 0:
        return 0, x, y, n, blocks
    while y > 0:
        if x > 0:
            steps += x
            n <<= x  # x doublings; arithmetic shift is exact for negatives too
            x = 0
        # b fires: x reloads from n; a negative reload halts the next round
        steps += 1
        x, y, n = n, y - 1, 2 * n
        blocks.append((x, y, n))
        if x < 0:
            break
    return steps, x, y, n, blocks


@dataclass
class ExecutionIdentityReport:
    x: int
    y: int
    n: int
    steps: int
    x_final: int
    n_final: int
    cichon_value: int
    cichon_identity: bool       # steps + x_final == g_{w*y+x}(n)
    hardy_identity: bool        # 2^x_final * n_final == g^{w*y+x}(n)
    hardy_route: str            # "direct" or "pow2"
    unadjusted_claim: bool      # the uncorrected reading; holds iff x_final == 0


def _pow2_hardy_mul2(alpha: OrdinalTerm, x: int, max_exp_bits: int) -> tuple[int, int]:
    """hardy(mul:2, alpha, x) as (odd, e) with value odd * 2^e.

    Works because doubling only shifts the exponent; predecessors at limit
    stages need the current value as an integer, which stays materializable
    long after the full value does not.
    """
    from .ordinal import predecessor  # local import to keep module deps flat

    if x == 0:
        return (0, 0)
    e = (x & -x).bit_length() - 1
    odd = x >> e
    cur = alpha
    while not cur.is_zero:
        expo, coeff = cur.summands[-1]
        if expo.is_zero:
            e += coeff
            cur = OrdinalTerm(cur.summands[:-1])
        else:
            if e > max_exp_bits:
                raise BudgetExceeded("pow2 exponent grew past the materialization cap")
            value = odd << e
            cur = predecessor(cur, value)
            e += 1
    return (odd, e)


def execution_length_identity(x: int, y: int, n: int,
                              budget: EvalBudget | None = None) -> ExecutionIdentityReport:
    """Run fig1 from (l0, x, y, n) and check the exact length/value identities.

    steps + x_final against the Cichon value and 2^x_final * n_final
    against the Hardy value, both for g(x) = 2x at index w*y + x.  When
    the Hardy value is too wide to materialize under the budget it is
    compared exactly in odd*2^e form instead (route "pow2").  n >= 0 is
    accepted; with n = 0 every value stays 0 and both identities still
    hold.
    """
    if x < 0 or y < 0 or n < 0:
        raise ValueError("x, y, n must be natural numbers")
    if budget is None:
        budget = EvalBudget(10**7, 10**7)
    g = mul_constant(2)
    alpha = cnf_add(omega_power(from_int(1), y) if y else from_int(0), from_int(x))
    steps, x_f, _, n_f, _ = fig1_block_run(x, y, n)
    cich = cichon(g, alpha, n, budget)
    cichon_identity = steps + x_f == cich
    # compare n_f * 2^x_f against the Hardy value in odd * 2^e form; this is
    # exact and avoids materializing the shift
    if n_f == 0:
        lhs = (0, 0)
    else:
        e_nf = (n_f & -n_f).bit_length() - 1
        lhs = (n_f >> e_nf, e_nf + x_f)
    try:
        hard = hardy(g, alpha, n, budget)
        if hard == 0:
            hardy_identity = lhs == (0, 0)
        else:
            e_h = (hard & -hard).bit_length() - 1
            hardy_identity = lhs == (hard >> e_h, e_h)
        route = "direct"
    except BudgetExceeded:
        hardy_identity = lhs == _pow2_hardy_mul2(alpha, n, budget.max_value_bits)
        route = "pow2"
    return ExecutionIdentityReport(
        x=x, y=y, n=n, steps=steps, x_final=x_f, n_final=n_f,
        cichon_value=cich, cichon_identity=cichon_identity,
        hardy_identity=hardy_identity, hardy_route=route,
        unadjusted_claim=(steps == cich),
    )


def corollary_bound_holds(steps: int, control: ControlFunction, alpha: OrdinalTerm,
                          n0: int, budget: EvalBudget = DEFAULT_BUDGET) -> bool:
    """Whether steps <= cichon(control, alpha, n0), decided without
    materializing the full value when it is astronomically large.

    A Cichon evaluation that exceeds its budget has already counted
    ``partial`` descent steps, which lower-bounds the true value.
    """
    try:
        return steps <= cichon(control, alpha, n0, budget)
    except BudgetExceeded as exc:
        if exc.partial is not None and exc.partial >= steps:
            return True
        raise

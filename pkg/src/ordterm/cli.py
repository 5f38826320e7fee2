"""Command-line surface: one subcommand per checkable operation.

Exit codes: 0 success, 1 a check failed, 2 usage or malformed input,
3 budget exceeded.  The first stdout line is always machine-parsable:
``RESULT: <value|pass|fail|inconclusive>``.  Output is deterministic for
fixed inputs and budgets (no timestamps, no ordering jitter), so golden
tests can compare bytes.
"""

from __future__ import annotations

import argparse
import sys

from . import classify as cls
from . import hierarchy as hr
from . import lengths as ln
from . import ordinal as od
from . import termination as tm
from . import wqo
from .errors import BudgetExceeded, OrdtermError, OrdinalParseError, ProgramParseError

SUBCOMMANDS = (
    "ord-compare", "ord-norm", "ord-fund", "ord-pred",
    "hardy", "cichon",
    "length-search", "length-dp",
    "verify-theorem", "verify-prop", "check-product-bound",
    "run-program", "check-ranking", "check-control", "check-disjunctive",
    "exec-identity", "classify",
)

# which module operations each subcommand exercises (directly or on its path);
# the coverage test checks every spec-level operation appears here
OPERATION_COVERAGE = {
    "ord-compare": ["ordinal.compare", "ordinal.parse", "ordinal.print", "ordinal.pointwise_leq"],
    "ord-norm": ["ordinal.norm", "ordinal.kind", "ordinal.parse"],
    "ord-fund": ["ordinal.fundamental", "ordinal.kind", "ordinal.parse", "ordinal.print"],
    "ord-pred": ["ordinal.predecessor", "ordinal.parse", "ordinal.print"],
    "hardy": ["hierarchy.hardy", "hierarchy.apply", "hierarchy.iterate",
              "hierarchy.hardy_via_cichon_check"],
    "cichon": ["hierarchy.cichon", "hierarchy.apply"],
    "length-search": ["lengths.length_search", "lengths.is_bad", "lengths.is_controlled",
                      "wqo.leq", "wqo.norm_of", "wqo.elements_up_to", "wqo.order_type",
                      "hierarchy.iterate"],
    "length-dp": ["lengths.length_wo_dp", "ordinal.max_below_with_norm"],
    "verify-theorem": ["lengths.verify_theorem", "lengths.length_wo_dp", "hierarchy.cichon"],
    "verify-prop": ["lengths.verify_proposition", "ordinal.enumerate_below", "hierarchy.cichon"],
    "check-product-bound": ["lengths.check_product_bound", "lengths.length_search",
                            "hierarchy.cichon"],
    "run-program": ["termination.run", "termination.step"],
    "check-ranking": ["termination.check_ranking", "termination.step",
                      "wqo.element_order_type", "wqo.leq"],
    "check-control": ["termination.check_control", "termination.run", "hierarchy.apply",
                      "hierarchy.iterate"],
    "check-disjunctive": ["termination.check_disjunctive", "termination.run"],
    "exec-identity": ["termination.execution_length_identity", "hierarchy.cichon",
                      "hierarchy.hardy"],
    "classify": ["classify.classify_bound", "classify.ordinal_add", "ordinal.parse"],
}

ORDINAL_GRAMMAR = ('ordinal grammar: term := "0" | sum ; sum := mono ("+" mono)* ; '
                   'mono := nat | "w" ("^" atom)? ("*" nat)? ; atom := nat | "w" | "(" sum ")"')


def _budget(args) -> hr.EvalBudget:
    return hr.EvalBudget(args.max_steps, args.max_bits)


def _add_budget_flags(p, steps=10**7, bits=10**6):
    p.add_argument("--max-steps", type=int, default=steps,
                   help="evaluator step budget (default %(default)s)")
    p.add_argument("--max-bits", type=int, default=bits,
                   help="value width budget in bits (default %(default)s)")


def _parse_start(sys_: tm.TransitionSystem, text: str, location: str | None):
    values = {}
    for part in text.split(","):
        name, _, val = part.partition("=")
        if not val:
            raise ValueError(f"start entries look like x=1, got {part!r}")
        values[name.strip()] = int(val)
    loc = location or sys_.locations[0]
    return tm.make_config(sys_, loc, **values)


def _parse_grid(sys_: tm.TransitionSystem, text: str, location: str | None):
    axes = []
    for part in text.split(","):
        name, _, span = part.partition("=")
        lo, _, hi = span.partition(":")
        axes.append((name.strip(), range(int(lo), int(hi) + 1)))
    loc = location or sys_.locations[0]
    configs = [{}]
    for name, rng in axes:
        configs = [dict(c, **{name: v}) for c in configs for v in rng]
    return [tm.make_config(sys_, loc, **c) for c in configs]


def _load_program(text: str) -> tm.TransitionSystem:
    if text == "fig1":
        return tm.fig1()
    with open(text, encoding="utf-8") as fh:
        return tm.parse_program(fh.read())


def _starts(args, sys_):
    starts = [_parse_start(sys_, s, args.loc) for s in (args.start or [])]
    if getattr(args, "grid", None):
        starts.extend(_parse_grid(sys_, args.grid, args.loc))
    if not starts:
        raise ValueError("give at least one --start or --grid")
    return starts


def _fmt_config(sys_: tm.TransitionSystem, c: tm.Configuration) -> str:
    inner = ", ".join(f"{v}={x}" for v, x in zip(sys_.variables, c.values))
    return f"{c.location}: {inner}"


# --- handlers ----------------------------------------------------------------


def _cmd_ord_compare(args, out):
    a = od.parse(args.alpha)
    b = od.parse(args.beta)
    if args.pointwise is not None:
        ok = od.pointwise_leq(a, b, args.pointwise)
        out.append(f"RESULT: {'true' if ok else 'false'}")
        return 0
    out.append(f"RESULT: {({-1: 'less', 0: 'equal', 1: 'greater'})[od.compare(a, b)]}")
    return 0


def _cmd_ord_norm(args, out):
    a = od.parse(args.alpha)
    out.append(f"RESULT: {od.norm(a)}")
    out.append(f"kind: {od.kind(a).value}")
    return 0


def _cmd_ord_fund(args, out):
    out.append(f"RESULT: {od.to_text(od.fundamental(od.parse(args.alpha), args.x))}")
    return 0


def _cmd_ord_pred(args, out):
    out.append(f"RESULT: {od.to_text(od.predecessor(od.parse(args.alpha), args.x))}")
    return 0


def _cmd_hardy(args, out):
    g = hr.parse_control(args.g)
    alpha = od.parse(args.alpha)
    if args.check_bridge:
        ok = hr.hardy_via_cichon_check(g, alpha, args.x, _budget(args))
        out.append(f"RESULT: {'pass' if ok else 'fail'}")
        return 0 if ok else 1
    out.append(f"RESULT: {hr.hardy(g, alpha, args.x, _budget(args))}")
    return 0


def _cmd_cichon(args, out):
    g = hr.parse_control(args.g)
    out.append(f"RESULT: {hr.cichon(g, od.parse(args.alpha), args.x, _budget(args))}")
    return 0


def _cmd_length_search(args, out):
    space = wqo.parse_space(args.space)
    g = hr.parse_control(args.control)
    res = ln.length_search(space, g, args.n0, args.max_nodes, prune=not args.no_prune)
    out.append(f"RESULT: {res.length}" if res.exact else f"RESULT: inconclusive")
    out.append(f"exact: {'yes' if res.exact else 'no (lower bound only)'}")
    out.append(f"nodes: {res.nodes_explored}")
    out.append("witness: " + " ".join(wqo.element_to_text(e) for e in res.witness.items))
    if wqo.is_well_order(space):
        out.append(f"order-type: {od.to_text(wqo.order_type(space))}")
    if args.csv:
        out.append("csv: space,control,n0,length,nodes")
        out.append(f"csv: {args.space},{args.control},{args.n0},{res.length},{res.nodes_explored}")
    return 0 if res.exact else 3


def _cmd_length_dp(args, out):
    g = hr.parse_control(args.control)
    out.append(f"RESULT: {ln.length_wo_dp(od.parse(args.alpha), g, args.n0, _budget(args))}")
    return 0


def _cmd_verify_theorem(args, out):
    g = hr.parse_control(args.control)
    ok = ln.verify_theorem(od.parse(args.alpha), g, args.x, _budget(args),
                           require_hypothesis=not args.allow_outside_hypothesis)
    out.append(f"RESULT: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_verify_prop(args, out):
    g = hr.parse_control(args.control)
    ok = ln.verify_proposition(od.parse(args.alpha), g, args.x, _budget(args))
    out.append(f"RESULT: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_check_product_bound(args, out):
    g = hr.parse_control(args.control)
    ok = ln.check_product_bound(args.d, g, args.x, args.max_nodes, _budget(args))
    out.append(f"RESULT: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_run_program(args, out):
    sys_ = _load_program(args.program)
    start = _parse_start(sys_, args.start, args.loc)
    trace, halted = tm.run(sys_, start, args.max_steps)
    out.append(f"RESULT: {'halted' if halted else 'running'}")
    out.append(f"steps: {len(trace) - 1}")
    out.append(f"final: {_fmt_config(sys_, trace[-1])}")
    if args.trace:
        for c in trace:
            out.append(f"trace: {_fmt_config(sys_, c)}")
    return 0


def _cmd_check_ranking(args, out):
    sys_ = _load_program(args.program)
    spec = tm.parse_ranking(args.rank)
    rep = tm.check_ranking(sys_, spec, _starts(args, sys_), args.max_steps)
    out.append(f"RESULT: {'pass' if rep.passed else 'fail'}")
    out.append(f"mode: {rep.mode}")
    out.append(f"configs-explored: {rep.configs_explored}")
    if rep.counterexample:
        name, c, c2, before, after = rep.counterexample
        out.append(f"witness: transition {name} at {_fmt_config(sys_, c)} -> "
                   f"{_fmt_config(sys_, c2)} (rank {before} -> {after})")
    for note in rep.notes:
        out.append(f"note: {note}")
    return 0 if rep.passed else 1


def _cmd_check_control(args, out):
    sys_ = _load_program(args.program)
    spec = tm.parse_ranking(args.rank)
    g = hr.parse_control(args.control)
    start = _parse_start(sys_, args.start, args.loc)
    rep = tm.check_control(sys_, spec, g, start, args.max_steps)
    passed = rep.crank_ok and rep.control_ok
    out.append(f"RESULT: {'pass' if passed else 'fail'}")
    if rep.crank_ok:
        out.append("crank: pass (per-step |f(c')| <= g(|f(c)|))")
    else:
        i, before, after, allowed = rep.crank_witness
        out.append(f"crank: fail at step {i}: norm {before} -> {after} exceeds g = {allowed}")
    if rep.control_ok:
        out.append(f"control: pass (sequence norms within g^i(n0), n0 = {rep.n0})")
    else:
        i, nm, bound = rep.control_witness
        out.append(f"control: fail at step {i}: norm {nm} > g^{i}({rep.n0}) = {bound}")
    out.append(f"steps: {rep.steps}")
    return 0 if passed else 1


def _cmd_check_disjunctive(args, out):
    sys_ = _load_program(args.program)
    relations = tuple(tm.parse_relation(f"T{i + 1}", text)
                      for i, text in enumerate(args.rel or []))
    rep = tm.check_disjunctive(sys_, tm.DisjunctiveArgument(relations),
                               _starts(args, sys_), args.max_pairs, args.max_steps)
    out.append(f"RESULT: {'pass' if rep.passed else 'fail'}")
    out.append(f"pairs-checked: {rep.pairs_checked}")
    if rep.uncovered_pair:
        c, c2 = rep.uncovered_pair
        out.append(f"witness: uncovered pair {_fmt_config(sys_, c)} ->+ {_fmt_config(sys_, c2)}")
    if rep.rank_violation:
        name, c, c2, before, after = rep.rank_violation
        out.append(f"witness: rank of {name} fails on {_fmt_config(sys_, c)} ->+ "
                   f"{_fmt_config(sys_, c2)} ({before} -> {after})")
    return 0 if rep.passed else 1


def _cmd_exec_identity(args, out):
    rep = tm.execution_length_identity(args.x, args.y, args.n, _budget(args))
    passed = rep.cichon_identity and rep.hardy_identity
    out.append(f"RESULT: {'pass' if passed else 'fail'}")
    out.append(f"steps: {rep.steps}")
    out.append(f"x-final: {rep.x_final if rep.x_final.bit_length() <= 64 else f'~2^{rep.x_final.bit_length() - 1}'}")
    out.append(f"cichon-identity (steps + x_final = g_(w*y+x)(n)): "
               f"{'pass' if rep.cichon_identity else 'fail'}")
    out.append(f"hardy-identity (2^x_final * n_final = g^(w*y+x)(n)): "
               f"{'pass' if rep.hardy_identity else 'fail'} [{rep.hardy_route}]")
    out.append(f"unadjusted-claim (steps = g_(w*y+x)(n)): "
               f"{'holds' if rep.unadjusted_claim else 'holds only with the x_final correction'}")
    return 0 if passed else 1


def _cmd_classify(args, out):
    alpha = od.parse(args.alpha)
    if args.gamma is not None:
        gamma = od.parse(args.gamma)
    elif args.control is not None:
        gamma = cls.control_gamma(hr.parse_control(args.control))
    else:
        raise ValueError("give either --gamma or --control")
    cc = cls.classify_bound(gamma, alpha)
    out.append(f"RESULT: {cls.format_index(cc.index)}")
    if cc.milestone:
        out.append(f"milestone: {cc.milestone}")
    out.append(f"note: {cls.GAMMA_NOTE}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ordterm",
        description="ordinal machinery, subrecursive hierarchies, bad-sequence "
                    "lengths and termination-proof checks",
        epilog=ORDINAL_GRAMMAR,
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, handler, configure):
        p = sub.add_parser(name)
        configure(p)
        p.set_defaults(handler=handler)
        return p

    def c_compare(p):
        p.add_argument("alpha")
        p.add_argument("beta")
        p.add_argument("--pointwise", type=int, default=None, metavar="X",
                       help="instead of the order, report whether ALPHA is reachable "
                            "from BETA along the pointwise chain at X")
    add("ord-compare", _cmd_ord_compare, c_compare)

    add("ord-norm", _cmd_ord_norm, lambda p: p.add_argument("alpha"))

    def c_fund(p):
        p.add_argument("--alpha", required=True)
        p.add_argument("--x", type=int, required=True)
    add("ord-fund", _cmd_ord_fund, c_fund)
    add("ord-pred", _cmd_ord_pred, c_fund)

    def c_hier(p):
        p.add_argument("--g", required=True, help="succ | add:k | mul:k | affine:a:b")
        p.add_argument("--alpha", required=True)
        p.add_argument("--x", type=int, required=True)
        _add_budget_flags(p)
    p = add("hardy", _cmd_hardy, c_hier)
    p.add_argument("--check-bridge", action="store_true",
                   help="check h^alpha(x) = h^(h_alpha(x))(x) instead of printing the value")
    add("cichon", _cmd_cichon, c_hier)

    def c_search(p):
        p.add_argument("--space", required=True,
                       help="fin:d | fineq:d | nat | lex(S,T) | prod(S,T) | mset(S)")
        p.add_argument("--control", required=True)
        p.add_argument("--n0", type=int, required=True)
        p.add_argument("--max-nodes", type=int, default=ln.DEFAULT_NODE_CAP)
        p.add_argument("--no-prune", action="store_true",
                       help="disable exact dominance pruning (full prefix tree)")
        p.add_argument("--csv", action="store_true")
    add("length-search", _cmd_length_search, c_search)

    def c_dp(p):
        p.add_argument("--alpha", required=True)
        p.add_argument("--control", required=True)
        p.add_argument("--n0", type=int, required=True)
        _add_budget_flags(p)
    add("length-dp", _cmd_length_dp, c_dp)

    def c_verify(p):
        p.add_argument("--alpha", required=True)
        p.add_argument("--control", required=True)
        p.add_argument("--x", type=int, required=True)
        _add_budget_flags(p)
    p = add("verify-theorem", _cmd_verify_theorem, c_verify)
    p.add_argument("--allow-outside-hypothesis", action="store_true",
                   help="compare the two sides even when norm(alpha) > x")
    add("verify-prop", _cmd_verify_prop, c_verify)

    def c_bound(p):
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--control", required=True)
        p.add_argument("--x", type=int, required=True)
        p.add_argument("--max-nodes", type=int, default=ln.DEFAULT_NODE_CAP)
        _add_budget_flags(p)
    add("check-product-bound", _cmd_check_product_bound, c_bound)

    def c_run(p):
        p.add_argument("--program", required=True, help="path to a program file, or fig1")
        p.add_argument("--start", required=True, help='e.g. "x=1,y=1,n=1"')
        p.add_argument("--loc", default=None)
        p.add_argument("--max-steps", type=int, default=tm.DEFAULT_RUN_STEPS)
        p.add_argument("--trace", action="store_true")
    add("run-program", _cmd_run_program, c_run)

    def c_rank(p):
        p.add_argument("--program", required=True)
        p.add_argument("--rank", required=True,
                       help="lex:f1,.. | prod:f1,.. | mset:d:e_{d-1},..,e_0 | ord:d:e_{d-1},..,e_0")
        p.add_argument("--start", action="append")
        p.add_argument("--grid", default=None, help='e.g. "x=0:2,y=0:2,n=1:2"')
        p.add_argument("--loc", default=None)
        p.add_argument("--max-steps", type=int, default=tm.DEFAULT_RUN_STEPS)
    add("check-ranking", _cmd_check_ranking, c_rank)

    def c_control(p):
        p.add_argument("--program", required=True)
        p.add_argument("--rank", required=True)
        p.add_argument("--control", required=True)
        p.add_argument("--start", required=True)
        p.add_argument("--loc", default=None)
        p.add_argument("--max-steps", type=int, default=tm.DEFAULT_RUN_STEPS)
    add("check-control", _cmd_check_control, c_control)

    def c_disj(p):
        p.add_argument("--program", required=True)
        p.add_argument("--rel", action="append", required=True,
                       help='e.g. "x > 0, x\' < x => x" (repeatable)')
        p.add_argument("--start", action="append")
        p.add_argument("--grid", default=None)
        p.add_argument("--loc", default=None)
        p.add_argument("--max-pairs", type=int, default=tm.DEFAULT_PAIR_CAP)
        p.add_argument("--max-steps", type=int, default=tm.DEFAULT_RUN_STEPS)
    add("check-disjunctive", _cmd_check_disjunctive, c_disj)

    def c_exec(p):
        p.add_argument("--x", type=int, required=True)
        p.add_argument("--y", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        _add_budget_flags(p, bits=10**7)
    add("exec-identity", _cmd_exec_identity, c_exec)

    def c_classify(p):
        p.add_argument("--alpha", required=True, help="the exponent a of the g_(w^a) bound")
        p.add_argument("--gamma", default=None, help="class index of the control, as an ordinal")
        p.add_argument("--control", default=None,
                       help="alternatively derive gamma from a control function")
    add("classify", _cmd_classify, c_classify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        code = args.handler(args, out)
    except BudgetExceeded as exc:
        print("RESULT: inconclusive")
        print(f"budget: {exc}")
        return 3
    except (OrdinalParseError, ProgramParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrdtermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    for line in out:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

import random

import pytest

from ordterm import hierarchy as hr
from ordterm import ordinal as od
from ordterm.errors import BudgetExceeded
from ordterm.ordinal import OMEGA, ZERO, from_int

from support import naive_cichon, naive_hardy, random_term, terms_below_w3, t

SUCC = hr.successor()
ADD2 = hr.add_constant(2)
MUL2 = hr.mul_constant(2)
FAMILY = (SUCC, ADD2, MUL2, hr.affine(2, 1))


class TestControlFunctions:
    def test_apply_examples(self):
        assert hr.apply(SUCC, 7) == 8
        assert hr.apply(MUL2, 5) == 10
        assert hr.apply(ADD2, 1) == 3
        assert hr.apply(hr.affine(3, 4), 2) == 10

    def test_family_validation(self):
        with pytest.raises(ValueError):
            hr.add_constant(0)
        with pytest.raises(ValueError):
            hr.mul_constant(1)
        with pytest.raises(ValueError):
            hr.affine(1, 0)  # the identity is excluded
        with pytest.raises(ValueError):
            hr.affine(0, 5)

    def test_monotone_and_expansive_by_construction(self):
        for g in FAMILY:
            for x in range(30):
                assert hr.apply(g, x) <= hr.apply(g, x + 1)
                assert hr.apply(g, x) >= x

    def test_parse_round_trip(self):
        for text in ("succ", "add:2", "mul:3", "affine:2:5"):
            assert hr.parse_control(text).family == text
        with pytest.raises(ValueError):
            hr.parse_control("quadratic")
        with pytest.raises(ValueError):
            hr.parse_control("mul:1")

    def test_premultiply_stays_in_family(self):
        h = hr.premultiply(2, ADD2)
        for x in range(10):
            assert hr.apply(h, x) == 2 * hr.apply(ADD2, x)
        assert hr.premultiply(1, SUCC) == SUCC


class TestIterate:
    def test_zero_iterate(self):
        assert hr.iterate(SUCC, 0, 9) == 9

    def test_examples(self):
        assert hr.iterate(MUL2, 3, 1) == 8
        assert hr.iterate(SUCC, 5, 0) == 5

    def test_matches_repeated_apply(self):
        for g in FAMILY:
            for x in (0, 1, 5):
                v = x
                for i in range(8):
                    assert hr.iterate(g, i, x) == v
                    v = hr.apply(g, v)

    def test_bit_budget(self):
        with pytest.raises(BudgetExceeded):
            hr.iterate(MUL2, 10**9, 1, max_value_bits=1000)


class TestHardy:
    def test_zero_index(self):
        assert hr.hardy(SUCC, ZERO, 12) == 12

    def test_finite_index_is_iteration(self):
        for g in FAMILY:
            for k in range(6):
                for x in range(4):
                    assert hr.hardy(g, from_int(k), x) == hr.iterate(g, k, x)

    def test_closed_forms(self):
        for x in range(20):
            assert hr.hardy(SUCC, OMEGA, x) == 2 * x + 1
            assert hr.hardy(SUCC, t("w*2"), x) == 4 * x + 3
        for x in range(10):
            assert hr.hardy(SUCC, t("w^2"), x) == 2 ** (x + 1) * (x + 1) - 1

    def test_against_naive_recursion(self):
        corpus = [a for a in terms_below_w3(2) if a < t("w^2 + w*2 + 2")]
        checked = 0
        for g in (SUCC, ADD2):
            for alpha in corpus:
                for x in range(3):
                    want = naive_hardy(g, alpha, x)
                    if want is None:
                        continue
                    assert hr.hardy(g, alpha, x) == want
                    checked += 1
        assert checked > 100

    def test_fundamental_form_agrees(self):
        rng = random.Random(11)
        for _ in range(80):
            alpha = random_term(rng, depth=1, max_coeff=2)
            g = rng.choice((SUCC, ADD2, MUL2))
            x = rng.randint(0, 3)
            try:
                a = hr.hardy(g, alpha, x)
                b = hr.hardy_fundamental_form(g, alpha, x)
            except BudgetExceeded:
                continue
            assert a == b

    def test_non_monotone_in_the_index(self):
        # H^w(x) < H^(x+2)(x) although w > x+2
        for x in range(1, 30):
            assert hr.hardy(SUCC, OMEGA, x) < hr.hardy(SUCC, from_int(x + 2), x)

    def test_monotone_and_expansive_in_argument(self):
        corpus = [a for a in terms_below_w3(2) if a <= t("w^2")]
        for g in (SUCC, MUL2):
            for alpha in corpus:
                prev = None
                for x in range(4):
                    v = hr.hardy(g, alpha, x, hr.EvalBudget(10**5, 10**5))
                    assert v >= x
                    if prev is not None:
                        assert v >= prev
                    prev = v


class TestCichon:
    def test_zero(self):
        for g in FAMILY:
            assert hr.cichon(g, ZERO, 9) == 0

    def test_finite_index_is_constant(self):
        for g in FAMILY:
            for k in range(6):
                for x in range(4):
                    assert hr.cichon(g, from_int(k), x) == k

    def test_omega_is_successor_of_argument(self):
        for g in FAMILY:
            for n in range(33):
                assert hr.cichon(g, OMEGA, n) == n + 1

    def test_paper_value_8(self):
        assert hr.cichon(ADD2, t("w^2"), 1) == 8

    def test_against_naive_recursion(self):
        corpus = [a for a in terms_below_w3(2) if a < t("w^2 + w*2 + 2")]
        checked = 0
        for g in (SUCC, ADD2, MUL2):
            for alpha in corpus:
                for x in range(3):
                    want = naive_cichon(g, alpha, x)
                    if want is None:
                        continue
                    assert hr.cichon(g, alpha, x) == want
                    checked += 1
        assert checked > 150

    def test_hardy_equals_cichon_plus_argument_for_succ(self):
        corpus = [a for a in terms_below_w3(2) if a <= t("w^2 + w")]
        for alpha in corpus:
            for x in range(4):
                assert hr.hardy(SUCC, alpha, x) == hr.cichon(SUCC, alpha, x) + x

    def test_pointwise_monotonicity(self):
        corpus = terms_below_w3(2)
        bud = hr.EvalBudget(10**5, 10**5)
        for b in corpus:
            for a in corpus:
                for x in range(3):
                    if od.pointwise_leq(b, a, x):
                        try:
                            vb = hr.cichon(SUCC, b, x, bud)
                            va = hr.cichon(SUCC, a, x, bud)
                        except BudgetExceeded:
                            continue
                        assert vb <= va


class TestBridge:
    def test_examples(self):
        assert hr.hardy_via_cichon_check(SUCC, OMEGA, 3)
        assert hr.hardy_via_cichon_check(MUL2, t("w + 1"), 2)
        for g in FAMILY:
            assert hr.hardy_via_cichon_check(g, ZERO, 5)

    def test_small_corpus(self):
        bud = hr.EvalBudget(10**5, 10**5)
        for g in (SUCC, ADD2, MUL2):
            for alpha in terms_below_w3(2):
                for x in range(3):
                    try:
                        assert hr.hardy_via_cichon_check(g, alpha, x, bud)
                    except BudgetExceeded:
                        pass


class TestBudgets:
    def test_step_budget_trips(self):
        with pytest.raises(BudgetExceeded):
            hr.hardy(SUCC, t("w^2"), 10, hr.EvalBudget(3, 10**6))

    def test_cichon_partial_is_lower_bound(self):
        full = hr.cichon(SUCC, t("w^2"), 4)
        with pytest.raises(BudgetExceeded) as exc:
            hr.cichon(SUCC, t("w^2"), 4, hr.EvalBudget(5, 10**6))
        assert exc.value.partial is not None and exc.value.partial <= full

    def test_value_budget_trips_before_materializing(self):
        import time
        start = time.time()
        with pytest.raises(BudgetExceeded):
            hr.hardy(MUL2, t("w^2"), 3, hr.EvalBudget(10**6, 10**4))
        assert time.time() - start < 1.0

    def test_deterministic(self):
        a = hr.cichon(MUL2, t("w^2 + w + 2"), 2)
        b = hr.cichon(MUL2, t("w^2 + w + 2"), 2)
        assert a == b

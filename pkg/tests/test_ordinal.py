import random
import warnings

import pytest

from ordterm import ordinal as od
from ordterm.errors import (
    BudgetExceeded,
    NonCanonicalWarning,
    NotALimit,
    OrdinalParseError,
    PreconditionViolated,
    ZeroHasNoPredecessor,
)
from ordterm.ordinal import OMEGA, ONE, ZERO, OrdinalKind, OrdinalTerm, from_int

from support import random_term, term_to_vector, terms_below_w3, t, w


class TestTermInvariants:
    def test_rejects_nonincreasing_exponents(self):
        with pytest.raises(ValueError):
            OrdinalTerm(((ZERO, 1), (ONE, 1)))
        with pytest.raises(ValueError):
            OrdinalTerm(((ONE, 1), (ONE, 2)))

    def test_rejects_bad_coefficients(self):
        with pytest.raises(ValueError):
            OrdinalTerm(((ZERO, 0),))
        with pytest.raises(ValueError):
            from_int(-1)

    def test_finite_embedding(self):
        assert from_int(0) is ZERO or from_int(0) == ZERO
        assert from_int(7).as_int() == 7
        assert od.to_text(from_int(7)) == "7"


class TestCompare:
    def test_identity_zero(self):
        assert od.compare(ZERO, ZERO) == 0

    def test_infinite_beats_finite(self):
        assert od.compare(OMEGA, from_int(5)) == 1

    def test_successor_is_strictly_above(self):
        # derived: a < a + 1 by the set-theoretic reading
        a = t("w^w*2")
        assert od.compare(a, od.cnf_add(a, ONE)) == -1

    def test_vector_oracle_below_w3(self):
        # the order below w^3 is the lexicographic order on coefficient vectors
        corpus = terms_below_w3(3)
        for a in corpus:
            for b in corpus:
                want = (term_to_vector(a, 3) > term_to_vector(b, 3)) - (
                    term_to_vector(a, 3) < term_to_vector(b, 3))
                assert od.compare(a, b) == want

    def test_trichotomy_and_transitivity_random(self):
        rng = random.Random(1830)
        terms = [random_term(rng, depth=2) for _ in range(120)]
        for a in terms:
            for b in terms:
                assert (a < b) + (a == b) + (a > b) == 1
        triples = [(rng.choice(terms), rng.choice(terms), rng.choice(terms))
                   for _ in range(2000)]
        for a, b, c in triples:
            if a <= b and b <= c:
                assert a <= c


class TestNorm:
    def test_zero(self):
        assert od.norm(ZERO) == 0

    def test_hand_values(self):
        assert od.norm(t("w^2*3 + w*5 + 2")) == 5
        assert od.norm(t("w^(w*2)")) == 2
        assert od.norm(OMEGA) == 1
        assert od.norm(from_int(9)) == 9


class TestKind:
    @pytest.mark.parametrize("text,expected", [
        ("0", OrdinalKind.ZERO),
        ("w^3 + 1", OrdinalKind.SUCCESSOR),
        ("w^w", OrdinalKind.LIMIT),
        ("w*2", OrdinalKind.LIMIT),
        ("17", OrdinalKind.SUCCESSOR),
    ])
    def test_examples(self, text, expected):
        assert od.kind(t(text)) is expected


class TestFundamental:
    def test_omega(self):
        for x in range(6):
            assert od.fundamental(OMEGA, x) == from_int(x + 1)

    def test_paper_nested_example(self):
        lam = t("w^(w^4) + w^(w^3 + w^2)")
        for x in (0, 1, 5):
            want = od.parse(f"w^(w^4) + w^(w^3 + w*{x + 1})")
            assert od.fundamental(lam, x) == want

    def test_omega_power_omega(self):
        assert od.fundamental(t("w^w"), 2) == t("w^3")

    def test_rejects_non_limits(self):
        with pytest.raises(NotALimit):
            od.fundamental(ZERO, 1)
        with pytest.raises(NotALimit):
            od.fundamental(t("w + 1"), 1)

    def test_strictly_increasing_below_limit(self):
        rng = random.Random(7)
        lims = [lam for lam in (random_term(rng, depth=2) for _ in range(400))
                if od.kind(lam) is OrdinalKind.LIMIT][:60]
        for lam in lims:
            prev = ZERO
            for x in range(4):
                cur = od.fundamental(lam, x)
                assert ZERO < cur < lam
                assert prev < cur or x == 0
                prev = cur


class TestPredecessor:
    def test_successor_case(self):
        a = t("w^2 + 4")
        assert od.predecessor(a, 99) == t("w^2 + 3")

    def test_paper_w_squared(self):
        for x in range(5):
            assert od.predecessor(t("w^2"), x) == od.parse(f"w*{x} + {x}" if x else "0")

    def test_w_times_two(self):
        assert od.predecessor(t("w*2"), 3) == t("w + 3")

    def test_zero_rejected(self):
        with pytest.raises(ZeroHasNoPredecessor):
            od.predecessor(ZERO, 3)

    def test_strictly_decreasing_and_norm_bounded(self):
        rng = random.Random(23)
        for _ in range(300):
            a = random_term(rng, depth=2)
            if a.is_zero:
                continue
            x = max(od.norm(a), rng.randint(0, 4))
            p = od.predecessor(a, x)
            assert p < a
            assert od.norm(p) <= x  # claim: norms do not grow past x


class TestMaxBelowWithNorm:
    def test_examples(self):
        assert od.max_below_with_norm(t("w^2"), 2) == t("w*2 + 2")
        assert od.max_below_with_norm(from_int(5), 9) == from_int(4)
        assert od.max_below_with_norm(OMEGA, 4) == from_int(4)

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            od.max_below_with_norm(t("w^2*3"), 2)
        with pytest.raises(PreconditionViolated):
            od.max_below_with_norm(ZERO, 5)

    def test_lemma_against_enumeration_and_predecessor(self):
        # P_x(a) = max{b < a : Nb <= x}, three independent routes
        for a in terms_below_w3(4):
            na = od.norm(a)
            if a.is_zero:
                continue
            for x in range(na, 5):
                enum_max = od.enumerate_below(a, x)[-1]
                assert od.max_below_with_norm(a, x) == enum_max
                assert od.predecessor(a, x) == enum_max

    def test_greedy_without_hypothesis(self):
        # greatest_below is defined for norm(a) > x as well
        assert od.greatest_below(t("w*5"), 2) == t("w*2 + 2")
        assert od.greatest_below(t("w^2"), 1) == t("w + 1")


class TestEnumerateBelow:
    def test_examples(self):
        assert od.enumerate_below(from_int(3), 10) == [ZERO, ONE, from_int(2)]
        assert od.enumerate_below(OMEGA, 2) == [ZERO, ONE, from_int(2)]
        assert od.enumerate_below(t("w^2"), 1) == [ZERO, ONE, OMEGA, t("w + 1")]

    def test_sorted_and_duplicate_free(self):
        got = od.enumerate_below(t("w^2*2"), 2)
        assert got == sorted(got)
        assert len(got) == len(set(got))

    def test_brute_force_below_w3(self):
        # coefficient-vector generation is a superset; filter by the true norm
        for x in range(4):
            want = sorted(b for b in terms_below_w3(x) if od.norm(b) <= x)
            got = od.enumerate_below(t("w^3"), x)
            assert got == want

    def test_count_against_filtered_larger_ball(self):
        # the second, structurally different counting route
        for text in ("w^2*2 + w", "w^3", "w*4 + 2"):
            a = t(text)
            for x in range(3):
                filtered = [b for b in od.enumerate_below(a, x + 1) if od.norm(b) <= x]
                assert len(od.enumerate_below(a, x)) == len(filtered)

    def test_cardinality_cap(self):
        with pytest.raises(BudgetExceeded):
            od.enumerate_below(t("w^3"), 30, max_count=100)


class TestPointwise:
    def test_reflexive(self):
        for text in ("0", "w", "w^2 + 3"):
            assert od.pointwise_leq(t(text), t(text), 0)

    def test_omega_chain_at_3(self):
        assert od.pointwise_leq(from_int(4), OMEGA, 3)
        assert not od.pointwise_leq(from_int(5), OMEGA, 3)

    def test_below_with_small_norm_is_pointwise_below(self):
        corpus = terms_below_w3(2)
        for b in corpus:
            for a in corpus:
                if b < a and od.norm(b) <= 2:
                    assert od.pointwise_leq(b, a, 2)

    def test_refinement_chain(self):
        corpus = terms_below_w3(2)
        for b in corpus:
            for a in corpus:
                for x in range(3):
                    if od.pointwise_leq(b, a, x):
                        assert od.pointwise_leq(b, a, x + 1)
                        assert b <= a

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            od.pointwise_leq(ZERO, t("w^3"), 50, max_steps=10)


class TestParsePrint:
    def test_zero(self):
        assert od.parse("0") == ZERO
        assert od.to_text(ZERO) == "0"

    def test_spec_strings(self):
        assert od.to_text(t("w^2*3 + w*5 + 2")) == "w^2*3 + w*5 + 2"
        assert od.to_text(t("w^(w^4) + w^(w^3 + w^2)")) == "w^(w^4) + w^(w^3 + w^2)"

    def test_normalization_warns(self):
        with pytest.warns(NonCanonicalWarning):
            assert od.to_text(od.parse("w + w")) == "w*2"
        with pytest.warns(NonCanonicalWarning):
            assert od.parse("1 + w") == OMEGA
        with pytest.warns(NonCanonicalWarning):
            od.parse("w^(w + w)")

    def test_round_trip_random(self):
        rng = random.Random(99)
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # canonical text must not warn
            for _ in range(400):
                a = random_term(rng, depth=3)
                assert od.parse(od.to_text(a)) == a

    def test_syntax_errors_carry_positions(self):
        for bad in ("", "w^", "w++1", "(w", "w^w^w", "3 4", "w*0"):
            with pytest.raises(OrdinalParseError) as exc:
                od.parse(bad)
            assert exc.value.position >= 0

    def test_depth_cap(self):
        deep = "w"
        for _ in range(70):
            deep = f"w^({deep})"
        with pytest.raises(OrdinalParseError):
            od.parse(deep)
        assert od.parse("w^(w^w)", max_depth=2) is not None
        with pytest.raises(OrdinalParseError):
            od.parse("w^(w^(w^w))", max_depth=2)


class TestArithmetic:
    def test_add_examples(self):
        assert od.cnf_add(from_int(3), OMEGA) == OMEGA
        assert od.cnf_add(OMEGA, from_int(3)) == t("w + 3")
        assert od.cnf_add(t("w^2 + w"), t("w^2")) == t("w^2*2")

    def test_add_unit_and_associativity(self):
        rng = random.Random(5)
        terms = [random_term(rng, depth=2) for _ in range(40)]
        for a in terms:
            assert od.cnf_add(a, ZERO) == a
            assert od.cnf_add(ZERO, a) == a
        for _ in range(300):
            a, b, c = (rng.choice(terms) for _ in range(3))
            assert od.cnf_add(od.cnf_add(a, b), c) == od.cnf_add(a, od.cnf_add(b, c))

    def test_mul_basics(self):
        assert od.cnf_mul(OMEGA, from_int(2)) == t("w*2")
        assert od.cnf_mul(from_int(2), OMEGA) == OMEGA
        assert od.cnf_mul(OMEGA, OMEGA) == t("w^2")
        assert od.cnf_mul(t("w + 3"), from_int(2)) == t("w*2 + 3")
        assert od.cnf_mul(t("w + 1"), t("w^2")) == t("w^3")

    def test_mul_matches_repeated_addition(self):
        rng = random.Random(6)
        for _ in range(60):
            a = random_term(rng, depth=1)
            k = rng.randint(0, 4)
            total = ZERO
            for _ in range(k):
                total = od.cnf_add(total, a)
            assert od.cnf_mul(a, from_int(k)) == total

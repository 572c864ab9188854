"""
Testes do entailment probabilístico: sistema Π, viabilidade, limites e compare
"""

import random
from fractions import Fraction

import pytest

from src.cli import parse_kb_text, parse_probability_term
from src.conditional_algebra import make_conditional, unconditional
from src.config import EngineConfig
from src.entailment import (
    BoundsReport,
    ConditionalAssessment,
    KnowledgeBase,
    PiTag,
    Verdict,
    bounds,
    build_system,
    compare,
    compare_verdict,
    feasibility_check,
    feasible,
    first_inconsistent_row,
    query_row,
    query_value_from_masses,
    row_residual,
    row_residuals,
)
from src.exceptions import DegenerateQueryError, InvalidAssessmentError
from src.formula import Event, Vocabulary, event_of
from src.numeric import EXACT, FLOAT
from src.probability import ProbabilityModel, cond_prob, prob, random_model


def q(text, kb):
    return parse_probability_term(text, kb.vocab)


def random_consistent_kb(seed: int, k: int = 3, n: int = 3):
    """Base satisfeita por um modelo exato sorteado; devolve (kb, consulta)"""
    rng = random.Random(seed)
    vocab = Vocabulary(tuple("abcd"[:k]))
    model = random_model([vocab.atom(j) for j in range(vocab.atom_count)], seed=seed, backend=EXACT)

    def positive_event():
        while True:
            b = Event(vocab, rng.randint(1, vocab.full_mask))
            if prob(model, b) > 0:
                return b

    assessments = []
    for _ in range(n):
        a, b = Event(vocab, rng.randint(0, vocab.full_mask)), positive_event()
        ce = make_conditional(a, b)
        assessments.append(ConditionalAssessment(ce, cond_prob(model, ce)))
    query = make_conditional(Event(vocab, rng.randint(0, vocab.full_mask)), positive_event())
    return KnowledgeBase(vocab, tuple(assessments)), query


class TestBuildSystem:
    def test_certain_antecedent_has_no_alpha_slot(self, vocab_ab, ev):
        kb = KnowledgeBase(vocab_ab, (ConditionalAssessment(unconditional(ev("a", vocab_ab)), 0.7),))
        sys = build_system(kb, make_conditional(ev("a", vocab_ab), ev("b", vocab_ab)))
        assert sys.m == 4
        assert sys.pi[0] == (PiTag.ZERO, PiTag.ONE, PiTag.ZERO, PiTag.ONE)
        assert sys.alphas == (Fraction(7, 10),)
        assert query_row(sys) == sys.query_tags == (
            PiTag.ALPHA_SLOT, PiTag.ALPHA_SLOT, PiTag.ZERO, PiTag.ONE,
        )

    def test_empty_kb(self, vocab_a, ev):
        a = ev("a", vocab_a)
        sys = build_system(KnowledgeBase(vocab_a), unconditional(a))
        assert sys.cells == (~a, a)
        assert sys.n == 0

    def test_penguin_cells(self, penguin_kb):
        sys = build_system(penguin_kb, q("P(f | b & p)", penguin_kb))
        assert sys.m <= 8
        assert sys.n == 3
        for row in sys.pi:
            assert set(row) <= {PiTag.ZERO, PiTag.ONE, PiTag.ALPHA_SLOT}

    def test_cell_count_bound(self):
        for seed in range(30):
            kb, query = random_consistent_kb(seed)
            sys = build_system(kb, query)
            assert sys.m <= min(2 ** (2 * (len(kb) + 1)), kb.vocab.atom_count)

    def test_degenerate_query(self, marginals_kb):
        vocab = marginals_kb.vocab
        with pytest.raises(DegenerateQueryError):
            build_system(marginals_kb, make_conditional(vocab.one(), vocab.zero()))

    def test_pi_matrix_substitutes_alpha(self, birds_kb):
        sys = build_system(birds_kb, q("P(f | b)", birds_kb))
        matrix = sys.pi_matrix(EXACT)
        for tags, values in zip(sys.pi, matrix):
            for tag, value in zip(tags, values):
                expected = {PiTag.ZERO: 0, PiTag.ONE: 1, PiTag.ALPHA_SLOT: Fraction(9, 10)}[tag]
                assert value == expected


class TestAssessment:
    def test_alpha_range(self, vocab_a, ev):
        with pytest.raises(InvalidAssessmentError):
            ConditionalAssessment(unconditional(ev("a", vocab_a)), 1.5)

    def test_zero_antecedent(self, vocab_a, ev):
        with pytest.raises(InvalidAssessmentError):
            ConditionalAssessment(make_conditional(ev("a", vocab_a), vocab_a.zero()), 0.5)

    def test_decimal_alpha_is_exact(self, vocab_a, ev):
        assessment = ConditionalAssessment(unconditional(ev("a", vocab_a)), 0.7)
        assert assessment.alpha == Fraction(7, 10)


class TestResiduals:
    def test_uniform_single_variable(self, vocab_a, ev):
        a = ev("a", vocab_a)
        kb = KnowledgeBase(vocab_a, (ConditionalAssessment(unconditional(a), Fraction(7, 10)),))
        sys = build_system(kb, unconditional(a))
        assert row_residual(sys, [0.5, 0.5], 0) == pytest.approx(0.2)
        assert row_residual(sys, [Fraction(1, 2), Fraction(1, 2)], 0) == Fraction(1, 5)

    def test_null_antecedent_is_vacuous(self, vocab_ab, ev):
        a, b = ev("a", vocab_ab), ev("b", vocab_ab)
        kb = KnowledgeBase(vocab_ab, (ConditionalAssessment(make_conditional(a, b), Fraction(3, 10)),))
        sys = build_system(kb, unconditional(a))
        masses = [Fraction(0)] * sys.m
        for j, cell in enumerate(sys.cells):
            if (cell & b).is_zero:
                masses[j] = Fraction(1, sum(1 for c in sys.cells if (c & b).is_zero))
        assert row_residual(sys, masses, 0) == 0

    def test_two_forms_agree_on_random_masses(self):
        for seed in range(50):
            kb, query = random_consistent_kb(seed)
            sys = build_system(kb, query)
            masses = random_model(list(sys.cells), seed=seed).masses
            for i in range(sys.n):
                pi_form, product_form = row_residuals(sys, masses, i)
                assert pi_form == pytest.approx(product_form, abs=1e-12)

    def test_row_index_checked(self, birds_kb):
        sys = build_system(birds_kb, q("P(f | b)", birds_kb))
        with pytest.raises(IndexError):
            row_residual(sys, [Fraction(1, sys.m)] * sys.m, 5)


class TestFeasibility:
    def test_empty_kb(self, vocab_a):
        assert feasible(KnowledgeBase(vocab_a))

    def test_contradictory_point_values(self, contradictory_kb):
        assert not feasible(contradictory_kb)
        report = feasibility_check(contradictory_kb, EXACT)
        assert not report.feasible
        assert report.infeasibility > 0
        assert report.first_inconsistent == 1
        assert first_inconsistent_row(contradictory_kb) == 1

    def test_mixed_kb_overcommits_the_complement(self):
        # P(ab) = 1/10 força P(ab') = 6/10 > P(b') = 1/2
        kb = parse_kb_text("vars: a, b\nP(a) = 0.7\nP(b) = 0.5\nP(a | b) = 0.2\n")
        report = feasibility_check(kb, EXACT)
        assert not report.feasible
        assert report.infeasibility == Fraction(1, 10)
        assert report.first_inconsistent == 2
        assert feasible(kb.prefix(2), EXACT)

    def test_mixed_kb_is_feasible(self):
        kb = parse_kb_text("vars: a, b\nP(a) = 0.7\nP(b) = 0.5\nP(a | b) = 0.5\n")
        report = feasibility_check(kb, EXACT)
        assert report.feasible
        witness = report.witness
        assert prob(witness, event_of("a & b", kb.vocab)) == Fraction(1, 4)
        assert prob(witness, event_of("a & ~b", kb.vocab)) == Fraction(9, 20)
        for assessment in kb.assessments:
            assert cond_prob(witness, assessment.cond) == assessment.alpha

    def test_penguin_is_feasible(self, penguin_kb):
        assert feasible(penguin_kb)
        assert feasible(penguin_kb, EXACT)


class TestBounds:
    def test_marginals(self, marginals_kb):
        report = bounds(marginals_kb, q("P(a | b)", marginals_kb))
        assert report.feasible and report.conditionable
        assert report.lower == pytest.approx(0.4, abs=1e-9)
        assert report.upper == pytest.approx(1.0, abs=1e-9)

        exact = bounds(marginals_kb, q("P(a | b)", marginals_kb), EXACT)
        assert exact.lower == Fraction(2, 5)
        assert exact.upper == 1

    def test_conditional_and_marginal(self, conditional_marginal_kb):
        exact = bounds(conditional_marginal_kb, q("P(a)", conditional_marginal_kb), EXACT)
        assert (exact.lower, exact.upper) == (Fraction(9, 20), Fraction(19, 20))

    def test_refined_antecedent_is_unconstrained(self, birds_kb):
        report = bounds(birds_kb, q("P(f | b & p)", birds_kb), EXACT)
        assert (report.lower, report.upper) == (0, 1)

    def test_penguin(self, penguin_kb):
        report = bounds(penguin_kb, q("P(f | b & p)", penguin_kb), EXACT)
        assert report.conditionable
        assert (report.lower, report.upper) == (0, 0)

    def test_query_pinned_by_its_assessment(self, birds_kb):
        report = bounds(birds_kb, q("P(f | b)", birds_kb), EXACT)
        assert report.lower == report.upper == Fraction(9, 10)

    def test_not_conditionable(self):
        kb = parse_kb_text("vars: a, b\nP(b) = 0\n")
        report = bounds(kb, q("P(a | b)", kb))
        assert report.feasible
        assert not report.conditionable
        assert report.lower is None and report.upper is None
        assert report.to_dict() == {"feasible": True, "conditionable": False, "lower": None, "upper": None}

    def test_infeasible(self, contradictory_kb):
        report = bounds(contradictory_kb, q("P(a)", contradictory_kb))
        assert not report.feasible
        assert not report.has_bounds

    def test_evidence_enters_the_antecedent(self):
        kb = parse_kb_text("vars: f, b, p\nP(f | b) = 9/10\nP(b | p) = 1\nP(f | p) = 0\nevidence: p\n")
        report = bounds(kb, q("P(f | b)", kb), EXACT)
        assert (report.lower, report.upper) == (0, 0)

    def test_witnesses_satisfy_kb_and_attain_bounds(self, marginals_kb, conditional_marginal_kb, penguin_kb):
        cases = [
            (marginals_kb, "P(a | b)"),
            (conditional_marginal_kb, "P(a)"),
            (penguin_kb, "P(f | b & p)"),
        ]
        for kb, text in cases:
            query = q(text, kb)
            sys = build_system(kb, query)
            for backend in (FLOAT, EXACT):
                report = bounds(kb, query, backend)
                for witness, value in ((report.witness_low, report.lower),
                                       (report.witness_high, report.upper)):
                    assert isinstance(witness, ProbabilityModel)
                    for i in range(sys.n):
                        assert row_residual(sys, witness.masses, i) <= 1e-9
                    assert query_value_from_masses(sys, witness.masses) == pytest.approx(float(value), abs=1e-9)

    def test_exact_and_float_agree(self):
        for seed in range(20):
            kb, query = random_consistent_kb(seed)
            fast, exact = bounds(kb, query, FLOAT), bounds(kb, query, EXACT)
            assert fast.conditionable == exact.conditionable
            if exact.has_bounds:
                assert fast.lower == pytest.approx(float(exact.lower), abs=1e-6)
                assert fast.upper == pytest.approx(float(exact.upper), abs=1e-6)

    def test_more_assessments_only_narrow(self):
        for seed in range(50):
            full, query = random_consistent_kb(seed)
            kb = KnowledgeBase(full.vocab)
            previous = bounds(kb, query, EXACT)
            for assessment in full.assessments:
                kb = kb.with_assessment(assessment)
                report = bounds(kb, query, EXACT)
                assert report.feasible
                if previous.has_bounds and report.has_bounds:
                    assert report.lower >= previous.lower
                    assert report.upper <= previous.upper
                previous = report
            assert kb == full

    def test_parallel_solves_match(self, marginals_kb):
        query = q("P(a | b)", marginals_kb)
        sequential = bounds(marginals_kb, query, EXACT)
        parallel = bounds(marginals_kb, query, EXACT, EngineConfig(parallel_bounds=True))
        assert (parallel.lower, parallel.upper) == (sequential.lower, sequential.upper)


class TestCompare:
    def test_extra_evidence_widens(self, birds_kb):
        base, extended = compare(birds_kb, q("P(f | b)", birds_kb), event_of("p", birds_kb.vocab), EXACT)
        assert (base.lower, base.upper) == (Fraction(9, 10), Fraction(9, 10))
        assert (extended.lower, extended.upper) == (0, 1)
        assert compare_verdict(base, extended) is Verdict.WIDENED

    def test_trivial_evidence_is_identity(self, birds_kb):
        base, extended = compare(birds_kb, q("P(f | b)", birds_kb), birds_kb.vocab.one())
        assert (base.lower, base.upper) == (extended.lower, extended.upper)
        assert compare_verdict(base, extended) is Verdict.UNCHANGED

    def test_penguin_shifts(self, penguin_kb):
        base, extended = compare(penguin_kb, q("P(f | b)", penguin_kb), event_of("p", penguin_kb.vocab), EXACT)
        assert (base.lower, base.upper) == (Fraction(9, 10), Fraction(9, 10))
        assert (extended.lower, extended.upper) == (0, 0)
        assert compare_verdict(base, extended) is Verdict.SHIFTED

    def test_null_extended_antecedent_is_undefined(self, birds_kb):
        vocab = birds_kb.vocab
        base, extended = compare(birds_kb, q("P(f | b)", birds_kb), event_of("~b", vocab))
        assert base.has_bounds
        assert not extended.conditionable
        assert compare_verdict(base, extended) is Verdict.UNDEFINED

    def test_narrowed(self):
        wide = BoundsReport(True, True, lower=0.0, upper=1.0)
        narrow = BoundsReport(True, True, lower=0.2, upper=0.5)
        assert compare_verdict(wide, narrow) is Verdict.NARROWED
        assert compare_verdict(narrow, wide) is Verdict.WIDENED

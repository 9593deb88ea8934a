import math
import numpy as np
from hypothesis import given, settings
import contexts
from repeaterlab import errors
from repeaterlab import markov
from repeaterlab import protocols
from . import tools


TWO_STATE = [[0.7, 0.3], [0.1, 0.9]]
BOUNCING = [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]]


class WhenValidatingAMalformedMatrix:
    @classmethod
    def examples(cls):
        yield [[0.5, 0.5]], errors.NonSquare
        yield [], errors.NonSquare
        yield [[0.5, 0.6], [0.5, 0.5]], errors.RowSumViolation
        yield [[1.5, -0.5], [0.5, 0.5]], errors.EntryOutOfRange
        yield [[float('nan'), 1.0], [0.5, 0.5]], errors.EntryOutOfRange

    def because_we_validate_the_matrix(self, raw, expected):
        self.exception = contexts.catch(markov.validate, raw)

    def it_should_raise_the_matching_validation_error(self, raw, expected):
        assert isinstance(self.exception, expected)

    def it_should_be_a_validation_error(self, raw, expected):
        assert isinstance(self.exception, errors.ValidationError)


class WhenAMatrixRowSumsToWithinTheTolerance:
    def establish_a_row_that_misses_by_a_hair(self):
        self.raw = [[0.5, 0.5 + 1e-13], [1.0, 0.0]]

    def because_we_validate_the_matrix(self):
        self.matrix = markov.validate(self.raw)

    def it_should_accept_it(self):
        assert self.matrix.n == 2

    def it_should_not_let_the_values_be_changed(self):
        assert not self.matrix.values.flags.writeable


class WhenARowSumIsOff:
    def establish_a_second_row_summing_to_more_than_one(self):
        self.raw = [[0.5, 0.5], [0.5, 0.75]]

    def because_we_validate_the_matrix(self):
        self.exception = contexts.catch(markov.validate, self.raw)

    def it_should_name_the_row(self):
        assert self.exception.row == 1

    def it_should_report_the_sum(self):
        assert self.exception.total == 1.25


class WhenReadingAMatrixDocument:
    def establish_a_document(self):
        self.doc = {"n": 2, "rows": TWO_STATE}

    def because_we_read_the_document(self):
        self.matrix = markov.StochasticMatrix.from_json(self.doc)

    def it_should_keep_the_rows(self):
        assert self.matrix.values.tolist() == TWO_STATE

    def it_should_write_the_same_document_back(self):
        assert self.matrix.to_json() == self.doc


class WhenAMatrixDocumentDisagreesWithItsSize:
    def because_we_read_the_document(self):
        self.exception = contexts.catch(markov.StochasticMatrix.from_json, {"n": 3, "rows": TWO_STATE})

    def it_should_raise_a_spec_error(self):
        assert isinstance(self.exception, errors.SpecError)


class WhenBuildingADistributionThatDoesNotSumToOne:
    def because_we_build_the_distribution(self):
        self.exception = contexts.catch(markov.Distribution, [0.5, 0.4])

    def it_should_raise_a_row_sum_violation(self):
        assert isinstance(self.exception, errors.RowSumViolation)


class WhenFindingTheEquilibriumOfATwoStateChain:
    @classmethod
    def examples_of_methods(cls):
        yield 'solve'
        yield 'power'

    def because_we_solve_for_the_equilibrium(self, method):
        self.distribution = markov.equilibrium(TWO_STATE, method=method)

    def it_should_weight_the_states_by_their_inflow(self, method):
        assert np.allclose(self.distribution.probs, [0.25, 0.75], atol=1e-10)

    def it_should_sum_to_one(self, method):
        assert math.isclose(sum(self.distribution), 1.0)


class WhenFindingTheEquilibriumOfAChainWithTwoClosedClasses:
    def because_we_solve_directly(self):
        self.exception = contexts.catch(markov.equilibrium, [[1.0, 0.0], [0.0, 1.0]])

    def it_should_report_a_singular_system(self):
        assert isinstance(self.exception, errors.SingularSystem)


class WhenPowerIteratingAPeriodicChain:
    def because_we_iterate_with_a_small_cap(self):
        self.exception = contexts.catch(markov.equilibrium, BOUNCING, method='power', max_iterations=1000)

    def it_should_give_up(self):
        assert isinstance(self.exception, errors.NotConverged)

    def it_should_report_the_cap(self):
        assert self.exception.iterations == 1000


class WhenSolvingForTheEquilibriumOfAPeriodicChain:
    def because_we_solve_directly(self):
        self.distribution = markov.equilibrium(BOUNCING)

    def it_should_find_the_time_average(self):
        assert np.allclose(self.distribution.probs, [0.25, 0.5, 0.25], atol=1e-12)


class WhenMeasuringThePeriodOfAState:
    @classmethod
    def examples(cls):
        yield [[0, 1], [1, 0]], 0, 2
        yield [[0, 1, 0], [0, 0, 1], [1, 0, 0]], 1, 3
        yield [[0, 1, 0], [0, 0, 1], [0, 1, 0]], 2, 2
        yield TWO_STATE, 0, 1
        yield BOUNCING, 1, 2

    def because_we_measure_the_period(self, matrix, state, expected):
        self.result = markov.period(matrix, state)

    def it_should_be_the_gcd_of_the_cycle_lengths(self, matrix, state, expected):
        assert self.result == expected


class WhenAStateCanNeverBeRevisited:
    def because_we_measure_its_period(self):
        self.exception = contexts.catch(markov.period, [[0, 1], [0, 1]], 0)

    def it_should_report_that_there_is_no_return_path(self):
        assert isinstance(self.exception, errors.NoReturnPath)

    def it_should_name_the_state(self):
        assert self.exception.state == 0


class WhenClassifyingChains:
    @classmethod
    def examples(cls):
        yield TWO_STATE, True, True
        yield BOUNCING, True, False
        yield [[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 1]], False, True

    def because_we_classify_the_chain(self, matrix, irreducible, aperiodic):
        self.irreducible = markov.is_irreducible(matrix)
        self.aperiodic = markov.is_aperiodic(matrix)
        self.ergodic = markov.is_ergodic(matrix)

    def it_should_tell_whether_every_state_reaches_every_other(self, matrix, irreducible, aperiodic):
        assert self.irreducible == irreducible

    def it_should_tell_whether_the_cycles_share_a_period(self, matrix, irreducible, aperiodic):
        assert self.aperiodic == aperiodic

    def it_should_call_it_ergodic_only_if_both_hold(self, matrix, irreducible, aperiodic):
        assert self.ergodic == (irreducible and aperiodic)


class WhenSplittingAChainIntoCommunicatingClasses:
    def because_we_ask_for_the_classes(self):
        self.classes = markov.communicating_classes([[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 1]])

    def it_should_find_each_closed_class(self):
        assert self.classes == [[0, 1], [2]]


class WhenRaisingAMatrixToAPower:
    @classmethod
    def examples_of_exponents(cls):
        yield 0
        yield 1
        yield 5

    def because_we_raise_the_matrix(self, k):
        self.result = markov.matrix_power(TWO_STATE, k)

    def it_should_match_repeated_multiplication(self, k):
        expected = np.eye(2)
        for _ in range(k):
            expected = expected @ np.array(TWO_STATE)
        assert np.allclose(self.result, expected)


class WhenRaisingAMatrixToANegativePower:
    def because_we_raise_the_matrix(self):
        self.exception = contexts.catch(markov.matrix_power, TWO_STATE, -1)

    def it_should_refuse(self):
        assert isinstance(self.exception, errors.ArgumentOutOfRange)


class WhenWaitingForAGeometricSuccess:
    def establish_a_quarter_chance_each_step(self):
        self.matrix = [[0.75, 0.25], [0.75, 0.25]]

    def because_we_compute_the_hitting_statistics(self):
        self.fundamental = markov.fundamental_matrix(self.matrix, 1)
        self.stats = markov.hitting_stats(self.matrix, 1)

    def it_should_invert_one_minus_the_staying_probability(self):
        assert np.allclose(self.fundamental.values, [[4.0]])

    def it_should_map_positions_to_states(self):
        assert self.fundamental.position(0) == 0

    def it_should_find_a_mean_of_one_over_p(self):
        assert math.isclose(self.stats.mean(0), 4.0)

    def it_should_find_a_variance_of_q_over_p_squared(self):
        assert math.isclose(self.stats.variance(0), 12.0)


class WhenAskingForTheHittingTimeOfTheTargetItself:
    def because_we_ask(self):
        stats = markov.hitting_stats(TWO_STATE, 1)
        self.exception = contexts.catch(stats.mean, 1)

    def it_should_refuse(self):
        assert isinstance(self.exception, errors.ArgumentOutOfRange)


class WhenTheTargetCannotBeReached:
    def because_we_build_the_fundamental_matrix(self):
        self.exception = contexts.catch(markov.fundamental_matrix, [[1.0, 0.0], [0.5, 0.5]], 1)

    def it_should_report_a_singular_matrix(self):
        assert isinstance(self.exception, errors.SingularMatrix)

    def it_should_name_the_target(self):
        assert self.exception.target == 1


class WhenTheChainHasOnlyTheTargetState:
    def because_we_build_the_fundamental_matrix(self):
        self.fundamental = markov.fundamental_matrix([[1.0]], 0)

    def it_should_be_empty(self):
        assert self.fundamental.values.shape == (0, 0)


class WhenComparingHittingStatisticsWithPathSums:
    @settings(max_examples=25, deadline=None)
    @given(tools.positive_chains())
    def it_should_agree_on_the_mean_and_variance(self, P):
        target = P.shape[0] - 1
        stats = markov.hitting_stats(P, target)
        for start in range(target):
            mean, variance = tools.hitting_moments_by_paths(P, start, target)
            assert tools.close(stats.mean(start), mean, rel=1e-8)
            assert tools.close(stats.variance(start), variance, rel=1e-8, abs_tol=1e-9)


class WhenComparingHittingStatisticsWithPathSumsOnSparseChains:
    @settings(max_examples=25, deadline=None)
    @given(tools.sparse_chains())
    def it_should_agree_on_the_mean_and_variance(self, P):
        target = P.shape[0] - 1
        stats = markov.hitting_stats(P, target)
        for start in range(target):
            mean, variance = tools.hitting_moments_by_paths(P, start, target)
            assert tools.close(stats.mean(start), mean, rel=1e-8)
            assert tools.close(stats.variance(start), variance, rel=1e-8, abs_tol=1e-9)


class WhenComparingHittingStatisticsWithPathSumsOnProtocolChains:
    @classmethod
    def examples(cls):
        yield protocols.build_multiheralded(protocols.MultiHeraldParams([0.3, 0.7, 0.5]))
        yield protocols.build_two_link_single_heralded(protocols.TwoLinkParams([0.3], [0.7], 0.9))
        yield protocols.build_two_link_double_heralded(protocols.TwoLinkParams([0.3, 0.7], [0.7, 0.3], 1.0))

    def because_we_compute_the_hitting_statistics(self, chain):
        self.stats = markov.hitting_stats(chain.matrix, chain.success_state)

    def it_should_match_the_path_sums_from_every_state(self, chain):
        P = chain.matrix.values
        for start in range(chain.n):
            if start == chain.success_state:
                continue
            mean, variance = tools.hitting_moments_by_paths(P, start, chain.success_state)
            assert tools.close(self.stats.mean(start), mean, rel=1e-8)
            assert tools.close(self.stats.variance(start), variance, rel=1e-8, abs_tol=1e-9)


class WhenCountingVisitsOverSeveralBlocks:
    @classmethod
    def examples_of_horizons(cls):
        yield markov.SEQUENCE_BLOCK
        yield markov.SEQUENCE_BLOCK + 1
        yield 2 * markov.SEQUENCE_BLOCK + 37

    def establish_a_three_state_chain(self):
        self.matrix = [[0.2, 0.5, 0.3], [0.6, 0.1, 0.3], [0.4, 0.4, 0.2]]

    def because_we_count_visits_from_the_first_state_to_the_last(self, horizon):
        self.mean, self.variance = markov.visit_count_moments(self.matrix, 0, 2, horizon)

    def it_should_match_the_sum_of_matrix_powers(self, horizon):
        mean, variance = tools.visit_moments_by_powers(self.matrix, 0, 2, horizon)
        assert tools.close(self.mean, mean, rel=1e-12)
        assert tools.close(self.variance, variance, rel=1e-9)


class WhenCountingVisitsOverAFiniteHorizon:
    @classmethod
    def examples_of_horizons(cls):
        yield 1
        yield 2
        yield 7

    def establish_a_three_state_chain(self):
        self.matrix = [[0.2, 0.5, 0.3], [0.6, 0.1, 0.3], [0.4, 0.4, 0.2]]

    def because_we_count_visits_from_the_first_state_to_the_last(self, horizon):
        self.mean, self.variance = markov.visit_count_moments(self.matrix, 0, 2, horizon)

    def it_should_match_the_sum_of_matrix_powers(self, horizon):
        mean, variance = tools.visit_moments_by_powers(self.matrix, 0, 2, horizon)
        assert tools.close(self.mean, mean, rel=1e-12)
        assert tools.close(self.variance, variance, rel=1e-9)


class WhenCountingVisitsFromAStateThatStartsOverLikeTheTarget:
    def establish_a_two_round_protocol(self):
        # the success row equals the start row
        self.matrix = [[0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]

    def because_we_count_visits(self):
        self.mean, self.variance = markov.visit_count_moments(self.matrix, 0, 2, 10)

    def it_should_match_the_sum_of_matrix_powers(self):
        mean, variance = tools.visit_moments_by_powers(self.matrix, 0, 2, 10)
        assert tools.close(self.mean, mean, rel=1e-12)
        assert tools.close(self.variance, variance, rel=1e-9)


class WhenCountingVisitsOverAnEmptyHorizon:
    def because_we_count_visits(self):
        self.exception = contexts.catch(markov.visit_count_moments, TWO_STATE, 0, 1, 0)

    def it_should_refuse(self):
        assert isinstance(self.exception, errors.ArgumentOutOfRange)


class WhenComputingAMeanReturnTime:
    def because_we_compute_the_return_time(self):
        self.result = markov.mean_return_time(TWO_STATE, 0)

    def it_should_be_one_over_the_equilibrium_mass(self):
        assert math.isclose(self.result, 4.0)


class WhenComputingTheReturnTimeOfATransientState:
    def because_we_compute_the_return_time(self):
        self.exception = contexts.catch(markov.mean_return_time, [[0.5, 0.5], [0.0, 1.0]], 0)

    def it_should_report_a_degenerate_chain(self):
        assert isinstance(self.exception, errors.DegenerateChain)

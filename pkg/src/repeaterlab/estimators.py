"""
Throughput and latency estimates for protocol chains, and the
recursive throughput estimates for nested repeater chains.
"""
import math
import numpy as np
from . import errors
from . import markov
from .protocols import shs_equilibrium


HORIZON_CAP = 10 ** 6
TYPE1 = 'type1'
TYPE2 = 'type2'
NESTED_METHODS = (TYPE1, TYPE2)


class ThroughputEstimate:
    def __init__(self, mean_rate, naive_variance, exact_variance, horizon_N, tau):
        self.mean_rate = mean_rate
        self.naive_variance = naive_variance
        self.exact_variance = exact_variance
        self.horizon_N = horizon_N
        self.tau = tau

    @property
    def variance_ratio(self):
        """naive / exact, or None when the exact variance was not computed (or is zero)."""
        if not self.exact_variance:
            return None
        return self.naive_variance / self.exact_variance

    def to_json(self):
        return {
            "mean_rate": self.mean_rate,
            "naive_variance": self.naive_variance,
            "exact_variance": self.exact_variance,
            "horizon": self.horizon_N,
            "tau": self.tau,
        }


class LatencyEstimate:
    def __init__(self, mean, variance, tau=1.0):
        self.mean = mean
        self.variance = variance
        self.tau = tau

    @property
    def std_over_mean(self):
        return math.sqrt(max(self.variance, 0.0)) / self.mean

    def to_json(self):
        return {"mean": self.mean, "variance": self.variance, "std_over_mean": self.std_over_mean}


class NestedEstimate:
    """
    Per-level throughput estimates T_1..T_k of a 2^k-link nested chain,
    in units of 1/tau of the elementary link.

    `clamped` is set when a type-1 recursion argument had to be pulled
    back into [0, 1]; `unclamped_rates` then holds the raw sequence.
    """
    def __init__(self, p, level_k, per_level_rates, method, clamped=False, unclamped_rates=None):
        self.p = p
        self.level_k = level_k
        self.per_level_rates = tuple(per_level_rates)
        self.method = method
        self.clamped = clamped
        self.unclamped_rates = tuple(unclamped_rates if unclamped_rates is not None else per_level_rates)

    @property
    def rate(self):
        return self.per_level_rates[-1]

    def to_json(self):
        return {
            "p": self.p,
            "k": self.level_k,
            "method": self.method,
            "rates": list(self.per_level_rates),
            "clamped": self.clamped,
            "unclamped_rates": list(self.unclamped_rates),
        }


def estimate_throughput(chain, N=1, exact=False, horizon_cap=HORIZON_CAP, method='solve'):
    """
    Long-run throughput pi_S / tau with the naive variance pi_S (1 - pi_S) / (N tau^2)
    and, when `exact` is set, the exact variance over N steps from the start state.
    """
    N = _check_horizon(N, horizon_cap)
    pi = markov.equilibrium(chain.matrix, method=method)[chain.success_state]
    tau = chain.tau
    naive = pi * (1 - pi) / (N * tau ** 2)
    exact_variance = None
    if exact:
        exact_variance = exact_throughput_variance(chain, N, horizon_cap) / tau ** 2
    return ThroughputEstimate(pi / tau, naive, exact_variance, N, tau)


def exact_throughput_variance(chain, N, horizon_cap=HORIZON_CAP):
    """Var[T] * tau^2: the variance of the success count over N steps, divided by N^2."""
    N = _check_horizon(N, horizon_cap)
    _, variance = markov.visit_count_moments(chain.matrix, chain.start_state, chain.success_state, N)
    return variance / N ** 2


def estimate_latency(chain):
    stats = markov.hitting_stats(chain.matrix, chain.success_state)
    tau = chain.tau
    return LatencyEstimate(tau * stats.mean(chain.start_state),
                           tau ** 2 * stats.variance(chain.start_state),
                           tau)


def nested_throughput(p, k, method=TYPE2, clamp=True):
    """
    Recursive throughput estimate for a k-level nested chain with
    single-heralded EG probability p and deterministic swapping.

    type1: T_k = f(2^(k-1) T_(k-1)) / 2^(k-1)
    type2: T_k = f(T_(k-1))
    with f(x) the two-link equilibrium of S at pl = pr = x, ps = 1,
    and T_1 = f(p).
    """
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise errors.ArgumentOutOfRange('p', p, "(0, 1]")
    if not 0 < p <= 1:
        raise errors.ArgumentOutOfRange('p', p, "(0, 1]")
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise errors.ArgumentOutOfRange('k', k, "positive integers")
    if method not in NESTED_METHODS:
        raise errors.ArgumentOutOfRange('method', method, ", ".join(NESTED_METHODS))

    first = _diagonal(p)
    rates = [first]
    unclamped = [first]
    clamped = False
    for level in range(2, int(k) + 1):
        rate, was_clamped = nested_step(rates[-1], level, method, clamp)
        clamped = clamped or was_clamped
        rates.append(rate)
        if method == TYPE1:
            unclamped.append(_type1_raw(unclamped[-1], level))
        else:
            unclamped.append(rate)
    return NestedEstimate(p, int(k), rates, method, clamped, unclamped)


def nested_step(previous, level, method=TYPE2, clamp=True):
    """
    One recursion step from T_(level-1) to T_level.
    Returns the new rate and whether its argument was clamped.
    """
    if method == TYPE2:
        return _diagonal(_argument(previous, clamp)[0]), False
    scale = 2 ** (level - 1)
    argument, clamped = _argument(scale * previous, clamp)
    return _diagonal(argument) / scale, clamped


def _argument(value, clamp):
    if 0 <= value <= 1:
        return value, False
    if not clamp:
        raise errors.ArgumentOutOfRange('argument', value, "[0, 1]")
    return min(max(value, 0.0), 1.0), True


def _type1_raw(previous, level):
    scale = 2 ** (level - 1)
    return _diagonal(scale * previous) / scale


def _diagonal(x):
    return shs_equilibrium(x, x, 1.0)


def _check_horizon(N, cap):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise errors.ArgumentOutOfRange('N', N, "positive integers")
    if N > cap:
        raise errors.HorizonTooLarge(int(N), cap)
    return int(N)

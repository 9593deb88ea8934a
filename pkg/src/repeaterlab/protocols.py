"""
Markov chains for entanglement generation and swapping protocols,
and the closed forms that go with them.

Closed forms work in steps: multiply latencies by tau and divide
throughputs by tau to get time units.
"""
import numpy as np
from . import errors
from . import markov


SHS = 'shs'
DHS = 'dhs'
MULTIHERALD = 'multiherald'
TWOLINK = 'twolink'
PROTOCOLS = (MULTIHERALD, SHS, DHS, TWOLINK)


class MultiHeraldParams:
    """Per-round success probabilities p1..pn of an n-round heralded EG protocol."""
    def __init__(self, round_probs):
        round_probs = _as_list(round_probs)
        if not round_probs:
            raise errors.EmptyRounds()
        self.round_probs = tuple(_probability('p{}'.format(i + 1), p) for i, p in enumerate(round_probs))

    @property
    def rounds(self):
        return len(self.round_probs)

    def __eq__(self, other):
        return isinstance(other, MultiHeraldParams) and self.round_probs == other.round_probs

    def __repr__(self):
        return "MultiHeraldParams({!r})".format(list(self.round_probs))

    def to_json(self):
        return {"round_probs": list(self.round_probs)}


class TwoLinkParams:
    """
    Two elementary links that each run the same number of heralding rounds,
    followed by a swap at the middle node.
    """
    def __init__(self, left_probs, right_probs, swap_prob=1.0):
        left_probs = _as_list(left_probs)
        right_probs = _as_list(right_probs)
        if not left_probs:
            raise errors.EmptyRounds()
        if len(left_probs) != len(right_probs):
            raise errors.WrongHeraldCount(len(left_probs), len(left_probs), len(right_probs))
        self.left_probs = tuple(_probability(self._name('pl', i, len(left_probs)), p) for i, p in enumerate(left_probs))
        self.right_probs = tuple(_probability(self._name('pr', i, len(right_probs)), p) for i, p in enumerate(right_probs))
        self.swap_prob = _probability('ps', swap_prob)

    @staticmethod
    def _name(prefix, index, count):
        return prefix if count == 1 else prefix + str(index + 1)

    @property
    def rounds(self):
        return len(self.left_probs)

    def __eq__(self, other):
        return (isinstance(other, TwoLinkParams) and
                (self.left_probs, self.right_probs, self.swap_prob) ==
                (other.left_probs, other.right_probs, other.swap_prob))

    def __repr__(self):
        return "TwoLinkParams({!r}, {!r}, {!r})".format(list(self.left_probs), list(self.right_probs), self.swap_prob)

    def to_json(self):
        return {"left_probs": list(self.left_probs), "right_probs": list(self.right_probs), "swap_prob": self.swap_prob}


class ProtocolChain:
    """
    A transition matrix over named protocol states, with the success state S,
    the start (failure) state and the duration tau of one step.
    """
    def __init__(self, matrix, labels, success_state, start_state, tau=1.0):
        matrix = markov.validate(matrix)
        labels = tuple(labels)
        if len(labels) != matrix.n:
            raise errors.ArgumentOutOfRange('labels', len(labels), "exactly {} labels".format(matrix.n))
        for name, state in (('success_state', success_state), ('start_state', start_state)):
            if not 0 <= state < matrix.n:
                raise errors.ArgumentOutOfRange(name, state, "0..{}".format(matrix.n - 1))
        if success_state == start_state:
            raise errors.ArgumentOutOfRange('success_state', success_state, "any state but the start state")
        if not np.array_equal(matrix.row(success_state), matrix.row(start_state)):
            raise errors.SpecError("The success row must equal the start row",
                                   success_state=success_state, start_state=start_state)
        tau = float(tau)
        if not tau > 0 or not np.isfinite(tau):
            raise errors.ArgumentOutOfRange('tau', tau, "positive reals")

        self.matrix = matrix
        self.labels = labels
        self.success_state = success_state
        self.start_state = start_state
        self.tau = tau

    @property
    def n(self):
        return self.matrix.n

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise errors.ArgumentOutOfRange('label', label, ", ".join(self.labels))

    def row(self, label):
        return self.matrix.row(self.index(label))

    def __repr__(self):
        return "ProtocolChain(labels={!r}, tau={!r})".format(list(self.labels), self.tau)


class ProtocolSpec:
    """
    A parameter set tagged with its protocol identifier; this is what
    the command line reads and writes as JSON.
    """
    def __init__(self, protocol, params, tau=1.0):
        if protocol not in PROTOCOLS:
            raise errors.SpecError("Unknown protocol {!r}".format(protocol), protocol=protocol, allowed=list(PROTOCOLS))
        expected = MultiHeraldParams if protocol == MULTIHERALD else TwoLinkParams
        if not isinstance(params, expected):
            raise errors.SpecError("Protocol {} needs {}".format(protocol, expected.__name__), protocol=protocol)
        if protocol == SHS and params.rounds != 1:
            raise errors.WrongHeraldCount(1, len(params.left_probs), len(params.right_probs))
        if protocol == DHS and params.rounds != 2:
            raise errors.WrongHeraldCount(2, len(params.left_probs), len(params.right_probs))
        tau = float(tau)
        if not tau > 0 or not np.isfinite(tau):
            raise errors.ArgumentOutOfRange('tau', tau, "positive reals")
        self.protocol = protocol
        self.params = params
        self.tau = tau

    def build(self):
        return BUILDERS[self.protocol](self.params, self.tau)

    def __eq__(self, other):
        return (isinstance(other, ProtocolSpec) and
                (self.protocol, self.params, self.tau) == (other.protocol, other.params, other.tau))

    def __repr__(self):
        return "ProtocolSpec({!r}, {!r}, tau={!r})".format(self.protocol, self.params, self.tau)

    def to_json(self):
        doc = {"protocol": self.protocol}
        doc.update(self.params.to_json())
        doc["tau"] = self.tau
        return doc

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise errors.SpecError("Protocol parameters must be a JSON object")
        protocol = doc.get("protocol")
        if protocol not in PROTOCOLS:
            raise errors.SpecError("Unknown protocol {!r}".format(protocol), protocol=protocol, allowed=list(PROTOCOLS))
        tau = doc.get("tau", 1.0)
        try:
            if protocol == MULTIHERALD:
                params = MultiHeraldParams(doc["round_probs"])
            else:
                params = TwoLinkParams(doc["left_probs"], doc["right_probs"], doc.get("swap_prob", 1.0))
        except KeyError as e:
            raise errors.SpecError("Protocol parameters are missing {}".format(e.args[0]), missing=e.args[0])
        return cls(protocol, params, tau)


def build_multiheralded(params, tau=1.0):
    """
    States 0..n count the consecutive successful rounds; state n is S.
    A failed round goes back to 0, and S starts over exactly like 0.
    """
    probs = params.round_probs
    n = len(probs)
    values = np.zeros((n + 1, n + 1))
    for i, p in enumerate(probs):
        values[i, i + 1] = p
        values[i, 0] += 1 - p
    values[n] = values[0]
    labels = [str(i) for i in range(n + 1)]
    return ProtocolChain(markov.validate(values), labels, success_state=n, start_state=0, tau=tau)


def build_two_link(params, tau=1.0):
    """
    States ij give the number of finished heralding rounds on the left (i)
    and right (j) link, in i-major order, followed by S.

    A link that has not finished runs its next round: success moves it one
    round on, failure resets it to 0. A finished link holds its pair. Once
    both links have finished the middle node swaps: success is S, failure
    frees everything (state 00). S starts over exactly like 00.
    """
    m = params.rounds
    width = m + 1
    success = width * width
    values = np.zeros((success + 1, success + 1))

    def index(i, j):
        return i * width + j

    def outcomes(probs, rounds_done):
        if rounds_done == m:
            return ((m, 1.0),)
        p = probs[rounds_done]
        return ((rounds_done + 1, p), (0, 1 - p))

    for i in range(width):
        for j in range(width):
            row = values[index(i, j)]
            if i == m and j == m:
                row[success] = params.swap_prob
                row[index(0, 0)] += 1 - params.swap_prob
                continue
            for left, p_left in outcomes(params.left_probs, i):
                for right, p_right in outcomes(params.right_probs, j):
                    row[index(left, right)] += p_left * p_right
    values[success] = values[index(0, 0)]

    labels = ["{}{}".format(i, j) for i in range(width) for j in range(width)] + ['S']
    return ProtocolChain(markov.validate(values), labels, success_state=success, start_state=index(0, 0), tau=tau)


def build_two_link_single_heralded(params, tau=1.0):
    if params.rounds != 1:
        raise errors.WrongHeraldCount(1, len(params.left_probs), len(params.right_probs))
    return build_two_link(params, tau)


def build_two_link_double_heralded(params, tau=1.0):
    if params.rounds != 2:
        raise errors.WrongHeraldCount(2, len(params.left_probs), len(params.right_probs))
    return build_two_link(params, tau)


BUILDERS = {
    MULTIHERALD: build_multiheralded,
    SHS: build_two_link_single_heralded,
    DHS: build_two_link_double_heralded,
    TWOLINK: build_two_link,
}


def cf_equilibrium_multiheralded(params):
    prefix = np.cumprod(params.round_probs)
    return float(prefix[-1] / (1 + prefix[:-1].sum()))


def cf_mean_latency_multiheralded(params):
    _require_positive(params.round_probs, 'p')
    prefix = np.cumprod(params.round_probs)
    return float((1 + prefix[:-1].sum()) / prefix[-1])


def cf_latency_variance_multiheralded(params):
    """Latency variance in steps squared, with the two terms joined by a minus sign."""
    _require_positive(params.round_probs, 'p')
    n = params.rounds
    prefix = np.cumprod(params.round_probs)
    product = prefix[-1]
    first = ((1 + prefix[:-1].sum()) / product) ** 2
    weighted = sum((2 * i - 1) * prefix[n - i - 1] for i in range(1, n))
    second = (2 * n - 1 + weighted) / product
    return float(first - second)


def cf_bkp_exact_mean_throughput(p1, p2, N):
    """Expected successes per step over the first N steps, starting from state 0."""
    p1 = _probability('p1', p1)
    p2 = _probability('p2', p2)
    N = _horizon(N)
    steady = p1 * p2 / (1 + p1)
    # at N = 1 the ratio is (1 + p1) / (1 + p1), so the result is exactly 0
    return steady * (1 - (1 - (-p1) ** N) / (N * (1 + p1)))


def cf_bkp_throughput_variance_leading(p1, p2):
    """The large-N limit of N * tau^2 * Var[T] for the double-heralded chain."""
    p1 = _probability('p1', p1)
    p2 = _probability('p2', p2)
    return p1 * p2 * ((1 + p1) ** 2 - p1 * p2 * (3 + p1)) / (1 + p1) ** 3


def cf_bkp_exact_throughput_variance(p1, p2, N):
    """Var[T] * tau^2 of the double-heralded chain over exactly N steps from state 0."""
    chain = build_multiheralded(MultiHeraldParams([p1, p2]))
    _, variance = markov.visit_count_moments(chain.matrix, chain.start_state, chain.success_state, _horizon(N))
    return variance / N ** 2


def shs_equilibrium(pl, pr, ps=1.0):
    """
    Equilibrium probability of S for the single-heralded two-link chain,
    as a plain function of the three probabilities.
    """
    ql = 1 - pl
    qr = 1 - pr
    denominator = 2 * pl * pr + ql * pr ** 2 + qr * pl ** 2 - pl * pr * ql * qr
    if denominator == 0:
        raise errors.DegenerateChain("neither link can ever generate entanglement")
    return pl * pr * ps * (1 - ql * qr) / denominator


def cf_equilibrium_shs(params):
    pl, pr = _single_round(params)
    return shs_equilibrium(pl, pr, params.swap_prob)


def cf_mean_latency_shs(params):
    pl, pr = _single_round(params)
    _require_positive((pl, pr, params.swap_prob), ('pl', 'pr', 'ps'))
    return 1 / shs_equilibrium(pl, pr, params.swap_prob)


def cf_latency_variance_shs(params):
    """
    Latency variance in steps squared. The first term is the squared mean
    latency, whose numerator carries -pl^2 pr^2.
    """
    pl, pr = _single_round(params)
    ps = params.swap_prob
    _require_positive((pl, pr, ps), ('pl', 'pr', 'ps'))
    either = pl + pr - pl * pr
    first = ((pl * pr + pl ** 2 + pr ** 2 - pl ** 2 * pr ** 2) / (pl * pr * ps * either)) ** 2
    numerator = (pl ** 2 * pr * (1 - pr) * (2 - pr)
                 + pl ** 3 * (1 - pr) ** 2 * (3 + pr)
                 + 3 * pr ** 3
                 + pl * pr * (4 + 2 * pr - 5 * pr ** 2))
    second = numerator / (pl * pr * ps * either ** 2)
    return first - second


def _single_round(params):
    if params.rounds != 1:
        raise errors.WrongHeraldCount(1, len(params.left_probs), len(params.right_probs))
    return params.left_probs[0], params.right_probs[0]


def _require_positive(values, names):
    for i, value in enumerate(values):
        name = names[i] if isinstance(names, tuple) else '{}{}'.format(names, i + 1)
        if value == 0:
            raise errors.ZeroProbability(name)


def _probability(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise errors.ProbabilityOutOfRange(name, value)
    if not 0 <= value <= 1:
        raise errors.ProbabilityOutOfRange(name, value)
    return value


def _horizon(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise errors.ArgumentOutOfRange('N', N, "positive integers")
    return int(N)


def _as_list(values):
    if isinstance(values, (int, float, np.floating, np.integer)):
        return [values]
    if isinstance(values, str):
        return [v for v in values.split(',') if v.strip()]
    return list(values)

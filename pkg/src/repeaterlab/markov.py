"""
Finite discrete-time Markov chain machinery.

Matrices are row-stochastic: entry (i, j) is the probability of moving
from state i to state j in one step. States are dense integers 0..n-1.
Every object in here is immutable once built.
"""
import math
import warnings
import networkx as nx
import numpy as np
from scipy import linalg
from . import errors


ROW_SUM_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10
EQUILIBRIUM_TOLERANCE = 1e-12
MAX_ITERATIONS = 10 ** 6
SEQUENCE_BLOCK = 256


class StochasticMatrix:
    """
    A validated square row-stochastic matrix.

    Build these with `validate()`; the constructor trusts its input.
    """
    def __init__(self, values):
        array = np.array(values, dtype=float)
        array.setflags(write=False)
        self._values = array

    @property
    def n(self):
        return self._values.shape[0]

    @property
    def values(self):
        return self._values

    def row(self, index):
        return self._values[index]

    def __getitem__(self, index):
        return self._values[index]

    def __eq__(self, other):
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self):
        return "StochasticMatrix({!r})".format(self._values.tolist())

    def to_json(self):
        return {"n": self.n, "rows": self._values.tolist()}

    @classmethod
    def from_json(cls, doc):
        try:
            rows = doc["rows"]
        except (KeyError, TypeError):
            raise errors.SpecError("Matrix document needs a 'rows' entry")
        matrix = validate(rows)
        if "n" in doc and doc["n"] != matrix.n:
            raise errors.SpecError("Matrix document declares n={} but has {} rows".format(doc["n"], matrix.n),
                                   declared=doc["n"], actual=matrix.n)
        return matrix


class Distribution:
    """A probability vector over the states of a chain."""
    def __init__(self, probs):
        array = np.array(probs, dtype=float)
        if array.ndim != 1 or array.size == 0:
            raise errors.ArgumentOutOfRange('probs', list(array.shape), "a non-empty vector")
        for index, value in enumerate(array):
            if not 0 <= value <= 1:
                raise errors.ProbabilityOutOfRange('probs[{}]'.format(index), float(value))
        total = array.sum()
        if abs(total - 1) > ROW_SUM_TOLERANCE:
            raise errors.RowSumViolation(0, float(total))
        array.setflags(write=False)
        self._probs = array

    @property
    def probs(self):
        return self._probs

    def __getitem__(self, index):
        return float(self._probs[index])

    def __len__(self):
        return self._probs.size

    def __iter__(self):
        return iter(self._probs.tolist())

    def __repr__(self):
        return "Distribution({!r})".format(self._probs.tolist())


class FundamentalMatrix:
    """
    (I - Q)^-1 where Q is the transition matrix without the target row and column.
    Row and column r of `values` belong to original state `index_map[r]`.
    """
    def __init__(self, target, values, index_map):
        values = np.array(values, dtype=float)
        values.setflags(write=False)
        self.target = target
        self.values = values
        self.index_map = tuple(index_map)

    def position(self, state):
        try:
            return self.index_map.index(state)
        except ValueError:
            raise errors.ArgumentOutOfRange('state', state, "any state except the target {}".format(self.target))


class HittingStats:
    """Mean and variance of the hitting time of `target`, in steps, per start state."""
    def __init__(self, target, means, variances, index_map):
        means = np.array(means, dtype=float)
        variances = np.array(variances, dtype=float)
        means.setflags(write=False)
        variances.setflags(write=False)
        self.target = target
        self.means = means
        self.variances = variances
        self.index_map = tuple(index_map)

    def mean(self, start):
        return float(self.means[self._position(start)])

    def variance(self, start):
        return float(self.variances[self._position(start)])

    def _position(self, start):
        try:
            return self.index_map.index(start)
        except ValueError:
            raise errors.ArgumentOutOfRange('start', start, "any state except the target {}".format(self.target))


def validate(raw):
    """
    Check that `raw` is a square matrix of probabilities whose rows sum to 1.

    Arguments:
        raw: a nested sequence or array of reals, or an existing StochasticMatrix.
    Returns:
        A StochasticMatrix.
    Raises:
        NonSquare, EntryOutOfRange, RowSumViolation.
    """
    if isinstance(raw, StochasticMatrix):
        return raw
    try:
        array = np.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise errors.NonSquare((len(raw),) if hasattr(raw, '__len__') else ())

    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
        raise errors.NonSquare(array.shape)

    # NaN fails both comparisons, so it is reported here too
    bad = ~((array >= 0) & (array <= 1))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise errors.EntryOutOfRange(int(row), int(col), float(array[row, col]))

    totals = array.sum(axis=1)
    offenders = np.flatnonzero(np.abs(totals - 1) > ROW_SUM_TOLERANCE)
    if offenders.size:
        row = int(offenders[0])
        raise errors.RowSumViolation(row, float(totals[row]))

    return StochasticMatrix(array)


def support_graph(matrix):
    """The directed graph with an edge i -> j wherever P_ij > 0."""
    matrix = validate(matrix)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(matrix.n))
    rows, cols = np.nonzero(matrix.values > 0)
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def communicating_classes(matrix):
    graph = support_graph(matrix)
    classes = [sorted(component) for component in nx.strongly_connected_components(graph)]
    return sorted(classes, key=lambda c: c[0])


def is_irreducible(matrix):
    return nx.is_strongly_connected(support_graph(matrix))


def period(matrix, state):
    """
    The gcd of the lengths of all cycles through `state`.

    Worked out on the support graph: BFS levels inside the state's
    communicating class, then the gcd of level[u] + 1 - level[v]
    over every edge u -> v of the class.
    """
    matrix = validate(matrix)
    _check_state('state', state, matrix.n)
    graph = support_graph(matrix)
    return _period(graph, state)


def _period(graph, state):
    members = (nx.descendants(graph, state) & nx.ancestors(graph, state)) | {state}
    if len(members) == 1 and not graph.has_edge(state, state):
        raise errors.NoReturnPath(state)

    subgraph = graph.subgraph(members)
    level = nx.single_source_shortest_path_length(subgraph, state)
    result = 0
    for u, v in subgraph.edges():
        result = math.gcd(result, abs(level[u] + 1 - level[v]))
    return result


def is_aperiodic(matrix):
    """True when every state that lies on a cycle has period 1."""
    graph = support_graph(matrix)
    for component in nx.strongly_connected_components(graph):
        state = min(component)
        if len(component) == 1 and not graph.has_edge(state, state):
            continue
        if _period(graph, state) != 1:
            return False
    return True


def is_ergodic(matrix):
    return is_irreducible(matrix) and is_aperiodic(matrix)


def equilibrium(matrix, tol=EQUILIBRIUM_TOLERANCE, method='solve', max_iterations=MAX_ITERATIONS):
    """
    The equilibrium distribution pi with pi = pi P.

    Arguments:
        matrix: the transition matrix.
        tol: the largest acceptable entry of |pi P - pi|.
        method: 'solve' for the direct linear solve, 'power' for power iteration.
        max_iterations: the power-iteration cap.
    Raises:
        SingularSystem when the direct solve degenerates (reducible input),
        NotConverged when power iteration runs out of iterations.
    """
    matrix = validate(matrix)
    if method == 'solve':
        probs = _solve_equilibrium(matrix.values, tol)
    elif method == 'power':
        probs = _power_equilibrium(matrix.values, tol, max_iterations)
    else:
        raise errors.ArgumentOutOfRange('method', method, "'solve' or 'power'")
    return Distribution(probs)


def _solve_equilibrium(P, tol):
    n = P.shape[0]
    # one balance equation is redundant; replace it with the normalisation
    A = (P - np.eye(n)).T
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', linalg.LinAlgWarning)
            pi = linalg.solve(A, b)
    except (linalg.LinAlgError, linalg.LinAlgWarning) as e:
        raise errors.SingularSystem(str(e) or "the balance equations have no unique solution")

    if not np.all(np.isfinite(pi)):
        raise errors.SingularSystem("the solve produced non-finite values")
    if (pi < -1e-9).any():
        raise errors.SingularSystem("the solve produced negative probabilities")
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()

    residual = np.max(np.abs(pi @ P - pi))
    if residual > tol:
        raise errors.SingularSystem("residual {!r} exceeds tolerance {!r}".format(float(residual), tol))
    return pi


def _power_equilibrium(P, tol, max_iterations):
    n = P.shape[0]
    pi = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        following = pi @ P
        if np.max(np.abs(following - pi)) <= tol:
            return pi / pi.sum()
        pi = following
    raise errors.NotConverged(max_iterations)


def matrix_power(matrix, k):
    """P^k by repeated squaring. P^0 is the identity."""
    matrix = validate(matrix)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise errors.ArgumentOutOfRange('k', k, "non-negative integers")
    return np.linalg.matrix_power(matrix.values, int(k))


def fundamental_matrix(matrix, target):
    matrix = validate(matrix)
    _check_state('target', target, matrix.n)
    index_map = [i for i in range(matrix.n) if i != target]
    size = len(index_map)
    if size == 0:
        return FundamentalMatrix(target, np.zeros((0, 0)), index_map)

    Q = matrix.values[np.ix_(index_map, index_map)]
    A = np.eye(size) - Q
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', linalg.LinAlgWarning)
            N = linalg.inv(A)
    except (linalg.LinAlgError, linalg.LinAlgWarning, ValueError):
        raise errors.SingularMatrix(target)

    if not np.all(np.isfinite(N)) or np.max(np.abs(A @ N - np.eye(size))) > RESIDUAL_TOLERANCE:
        raise errors.SingularMatrix(target)
    return FundamentalMatrix(target, N, index_map)


def hitting_stats(matrix, target):
    """
    Mean and variance of the first time t >= 1 the chain sits in `target`,
    for every other start state: t = N 1 and var = (2N - I) t - t * t.
    """
    fundamental = fundamental_matrix(matrix, target)
    N = fundamental.values
    means = N.sum(axis=1)
    variances = (2 * N - np.eye(N.shape[0])) @ means - means * means
    return HittingStats(target, means, variances, fundamental.index_map)


def visit_count_moments(matrix, start, target, horizon):
    """
    Mean and variance of the number of visits to `target` during steps
    1..horizon of a chain started in `start`.

    Only two scalar sequences are needed: a_k = (P^k)[start, target] and
    b_d = (P^d)[target, target]. Both are read off blocks of the columns
    (P^d)[:, target], so memory stays O(n * SEQUENCE_BLOCK + horizon).
    """
    matrix = validate(matrix)
    _check_state('start', start, matrix.n)
    _check_state('target', target, matrix.n)
    if isinstance(horizon, bool) or not isinstance(horizon, (int, np.integer)) or horizon < 1:
        raise errors.ArgumentOutOfRange('horizon', horizon, "positive integers")

    P = matrix.values
    horizon = int(horizon)
    block = min(SEQUENCE_BLOCK, horizon)
    columns = np.empty((matrix.n, block))
    column = P[:, target]
    for d in range(block):
        columns[:, d] = column
        column = P @ column
    jump = np.linalg.matrix_power(P, block)

    a = _landing_probabilities(start, columns, jump, horizon)
    b = a if np.array_equal(P[start], P[target]) else _landing_probabilities(target, columns, jump, horizon)

    A = np.cumsum(a)
    B = np.concatenate(([0.0], np.cumsum(b)))
    steps = np.arange(1, horizon + 1)
    # sum over k < l of Cov(X_k, X_l) = a_k b_{l-k} - a_k a_l
    cross = a * (B[horizon - steps] - (A[-1] - A))
    variance = float(np.sum(a * (1 - a)) + 2 * np.sum(cross))
    if variance < 0:
        if variance < -1e-9 * max(1.0, float(A[-1]) ** 2):
            raise errors.DegenerateChain("visit count variance came out negative ({!r})".format(variance))
        variance = 0.0
    return float(A[-1]), variance


def _landing_probabilities(start, columns, jump, horizon):
    """(P^k)[start, target] for k = 1..horizon, given columns[:, d] = (P^(d+1))[:, target] and jump = P^block."""
    block = columns.shape[1]
    result = np.empty(horizon)
    row = np.zeros(columns.shape[0])
    row[start] = 1.0
    for begin in range(0, horizon, block):
        stop = min(begin + block, horizon)
        result[begin:stop] = (row @ columns)[:stop - begin]
        row = row @ jump
    return result


def mean_return_time(matrix, state, method='solve'):
    matrix = validate(matrix)
    _check_state('state', state, matrix.n)
    mass = equilibrium(matrix, method=method)[state]
    if mass <= 0:
        raise errors.DegenerateChain("state {} has no equilibrium mass".format(state))
    return 1.0 / mass


def _check_state(name, state, n):
    if isinstance(state, bool) or not isinstance(state, (int, np.integer)) or not 0 <= state < n:
        raise errors.ArgumentOutOfRange(name, state, "0..{}".format(n - 1))

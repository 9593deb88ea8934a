"""
Seeded Monte Carlo engines.

`simulate_chain` walks any ProtocolChain; `simulate_nested` runs a
k-level nested repeater chain with single-heralded EG and deterministic
swapping. Every trajectory draws from its own generator, seeded from
(seed, trajectory index), so results do not depend on how trajectories
are chunked or how many threads run them.
"""
import math
import numpy as np
from . import errors
from . import tools


DEFAULT_STEPS = 100000
DEFAULT_TRAJECTORIES = 1000
DEFAULT_RNG = 'PCG64'
RNG_ALGORITHMS = ('PCG64', 'PCG64DXSM', 'Philox', 'SFC64', 'MT19937')
CHUNK_SIZE = 256
BLOCK_STEPS = 256


class SimConfig:
    def __init__(self, steps=DEFAULT_STEPS, trajectories=DEFAULT_TRAJECTORIES, seed=None, rng_algorithm=DEFAULT_RNG):
        self.steps = tools.positive_int('steps', steps)
        self.trajectories = tools.positive_int('trajectories', trajectories)
        if rng_algorithm not in RNG_ALGORITHMS:
            raise errors.ArgumentOutOfRange('rng_algorithm', rng_algorithm, ", ".join(RNG_ALGORITHMS))
        self.rng_algorithm = rng_algorithm
        self.seeded = seed is not None
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        try:
            seed = int(seed)
        except (TypeError, ValueError):
            raise errors.ArgumentOutOfRange('seed', seed, "0..2**64-1")
        if not 0 <= seed < 2 ** 64:
            raise errors.ArgumentOutOfRange('seed', seed, "0..2**64-1")
        self.seed = seed

    def generator(self, index):
        """The random generator owned by trajectory `index`."""
        bit_generator = getattr(np.random, self.rng_algorithm)
        return np.random.Generator(bit_generator(np.random.SeedSequence(self.seed, spawn_key=(index,))))

    def chunks(self, size=CHUNK_SIZE):
        return [range(start, min(start + size, self.trajectories))
                for start in range(0, self.trajectories, size)]

    def __eq__(self, other):
        return isinstance(other, SimConfig) and self.to_json() == other.to_json()

    def __repr__(self):
        return "SimConfig({steps}, {trajectories}, seed={seed}, rng_algorithm={rng_algorithm!r})".format(**self.to_json())

    def to_json(self):
        return {
            "steps": self.steps,
            "trajectories": self.trajectories,
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
        }


class SimulationResult:
    def __init__(self, success_counts, config, wall_time=0.0, model=None):
        counts = np.array(success_counts, dtype=np.int64)
        counts.setflags(write=False)
        self.success_counts = counts
        self.config_echo = config
        self.wall_time = wall_time
        self.model = dict(model or {})

    @property
    def mean_throughput(self):
        return float(self.success_counts.mean() / self.config_echo.steps)

    @property
    def throughput_variance(self):
        if self.success_counts.size < 2:
            return 0.0
        return float(self.success_counts.var(ddof=1) / self.config_echo.steps ** 2)

    @property
    def standard_error(self):
        return math.sqrt(self.throughput_variance / self.success_counts.size)

    def to_rows(self):
        return [{"trajectory_index": index, "success_count": int(count)}
                for index, count in enumerate(self.success_counts)]

    def summary(self):
        return {
            "model": self.model,
            "mean_throughput": self.mean_throughput,
            "throughput_variance": self.throughput_variance,
            "standard_error": self.standard_error,
            "config": self.config_echo.to_json(),
            "seeded": self.config_echo.seeded,
            "wall_time": self.wall_time,
        }


class NestedChainState:
    """
    The state of a batch of k-level nested chains, one row per trajectory.

    entangled[t, i] is set while elementary link i holds a pair, on its
    own or as part of a longer segment. ready[j][t, s] marks a finished
    level-j segment s (spanning links s*2^j .. (s+1)*2^j - 1) that is
    waiting for its sibling. timers[j][t, s] counts down the classical
    communication of the level-j swap that builds segment s; 0 means idle.
    The top-level swap has no ready flag: its completion is a success.
    """
    def __init__(self, k, trajectories):
        self.k = k
        self.links = 2 ** k
        self.entangled = np.zeros((trajectories, self.links), dtype=bool)
        self.ready = [np.zeros((trajectories, 2 ** (k - j)), dtype=bool) for j in range(k)]
        self.timers = [None] + [np.zeros((trajectories, 2 ** (k - j)), dtype=np.int64) for j in range(1, k + 1)]
        self.successes = np.zeros(trajectories, dtype=np.int64)
        self.steps_taken = 0

    def step(self, uniforms, p):
        """
        Advance every trajectory by one elementary step.

        Order within a step: pending swaps count down (a finished top-level
        swap is a success and frees the whole chain), then every link that
        was idle at the start of the step attempts EG, then adjacent
        finished siblings start their swaps, lowest level first.
        """
        idle = ~self.entangled

        for j in range(1, self.k + 1):
            timers = self.timers[j]
            active = timers > 0
            timers[active] -= 1
            done = active & (timers == 0)
            if j < self.k:
                self.ready[j] |= done
            else:
                self._consume(done[:, 0])

        generated = idle & (uniforms < p)
        self.entangled |= generated
        self.ready[0] |= generated

        for j in range(1, self.k + 1):
            below = self.ready[j - 1]
            both = below[:, 0::2] & below[:, 1::2]
            if both.any():
                below[:, 0::2] &= ~both
                below[:, 1::2] &= ~both
                self.timers[j][both] = 2 ** (j - 1)

        self.steps_taken += 1

    def _consume(self, finished):
        if not finished.any():
            return
        self.successes += finished
        self.entangled[finished] = False
        for ready in self.ready:
            ready[finished] = False
        for timers in self.timers[1:]:
            timers[finished] = 0

    def coverage(self):
        """How many finished or pending segments cover each elementary link."""
        count = self.ready[0].astype(np.int64)
        for j in range(1, self.k + 1):
            held = self.timers[j] > 0
            if j < self.k:
                held = held | self.ready[j]
            count = count + np.repeat(held, 2 ** j, axis=1)
        return count

    def check_invariants(self):
        coverage = self.coverage()
        if (coverage > 1).any():
            raise errors.StateInvariantError(self.steps_taken, "segments overlap")
        if not np.array_equal(coverage == 1, self.entangled):
            raise errors.StateInvariantError(self.steps_taken, "entangled links and segments disagree")
        for j in range(1, self.k + 1):
            timers = self.timers[j]
            if (timers < 0).any() or (timers > 2 ** (j - 1)).any():
                raise errors.StateInvariantError(self.steps_taken, "level {} swap timer out of range".format(j))
            if j < self.k and (self.ready[j] & (timers > 0)).any():
                raise errors.StateInvariantError(self.steps_taken, "level {} segment both pending and finished".format(j))


def simulate_chain(chain, config, threads=1):
    """
    Walk `chain` from its start state for `config.steps` transitions per
    trajectory and count the steps that land in the success state.
    """
    cumulative = _cumulative_rows(chain.matrix.values)

    def run(indices):
        generators = [config.generator(index) for index in indices]
        state = np.full(len(indices), chain.start_state, dtype=np.int64)
        counts = np.zeros(len(indices), dtype=np.int64)
        for block in _blocks(config.steps):
            uniforms = np.stack([g.random(block) for g in generators])
            for column in range(block):
                state = (uniforms[:, column, None] >= cumulative[state]).sum(axis=1)
                counts += state == chain.success_state
        return counts

    model = {"kind": "chain", "labels": list(chain.labels)}
    return _run_chunks(run, config, threads, model)


def simulate_nested(k, p, config, threads=1, check_invariants=False):
    """
    Simulate a k-level (2^k-link) nested repeater chain; see NestedChainState.step
    for the scheduling rules. Success counts are per trajectory over `config.steps`
    elementary steps.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise errors.ArgumentOutOfRange('k', k, "positive integers")
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise errors.ArgumentOutOfRange('p', p, "(0, 1]")
    if not 0 < p <= 1:
        raise errors.ArgumentOutOfRange('p', p, "(0, 1]")
    k = int(k)

    def run(indices):
        generators = [config.generator(index) for index in indices]
        state = NestedChainState(k, len(indices))
        for block in _blocks(config.steps):
            uniforms = np.stack([g.random((block, state.links)) for g in generators])
            for column in range(block):
                state.step(uniforms[:, column, :], p)
                if check_invariants:
                    state.check_invariants()
        return state.successes.copy()

    model = {"kind": "nested", "k": k, "p": p}
    return _run_chunks(run, config, threads, model)


def _run_chunks(run, config, threads, model):
    chunks, elapsed = tools.timed(tools.parallel_map, run, config.chunks(), threads)
    return SimulationResult(np.concatenate(chunks), config, elapsed, model)


def _blocks(steps):
    full, rest = divmod(steps, BLOCK_STEPS)
    return [BLOCK_STEPS] * full + ([rest] if rest else [])


def _cumulative_rows(values):
    cumulative = np.cumsum(values, axis=1)
    for row, probs in enumerate(values):
        last = np.flatnonzero(probs > 0)[-1]
        cumulative[row, last:] = 1.0
    return cumulative

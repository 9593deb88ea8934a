"""
Parameter sweeps: linear grids over protocol parameters, evaluated
point by point into plot-ready rows.
"""
import itertools
import json
import math
import numpy as np
from . import errors
from . import estimators
from . import markov
from . import protocols
from . import simulator
from . import tools


NESTED = 'nested'
SWEEP_PROTOCOLS = (protocols.MULTIHERALD, protocols.SHS, protocols.DHS, NESTED)

EQUILIBRIUM = 'equilibrium'
MEAN_LATENCY = 'mean_latency'
LATENCY_STD_OVER_MEAN = 'latency_std_over_mean'
NAIVE_VAR = 'naive_var'
EXACT_VAR = 'exact_var'
NESTED_TYPE1 = 'nested_type1'
NESTED_TYPE2 = 'nested_type2'
SIMULATED_MEAN = 'simulated_mean'
METRICS = (EQUILIBRIUM, MEAN_LATENCY, LATENCY_STD_OVER_MEAN, NAIVE_VAR, EXACT_VAR,
           NESTED_TYPE1, NESTED_TYPE2, SIMULATED_MEAN)
CHAIN_METRICS = (EQUILIBRIUM, MEAN_LATENCY, LATENCY_STD_OVER_MEAN, NAIVE_VAR, EXACT_VAR, SIMULATED_MEAN)
NESTED_METRICS = (NESTED_TYPE1, NESTED_TYPE2, SIMULATED_MEAN)

ALIASES = {
    protocols.SHS: {'p': ('pl', 'pr')},
    protocols.DHS: {'p1': ('pl1', 'pr1'), 'p2': ('pl2', 'pr2'), 'pl': ('pl1', 'pl2'), 'pr': ('pr1', 'pr2')},
    NESTED: {},
    protocols.MULTIHERALD: {},
}


class Grid:
    """`count` evenly spaced values from `start` to `stop` inclusive."""
    def __init__(self, name, start, stop, count):
        if not isinstance(name, str) or not name:
            raise errors.SpecError("Grid names must be non-empty strings", name=name)
        if isinstance(count, bool) or not isinstance(count, int) or count < 2:
            raise errors.SpecError("Grid {} needs a count of at least 2".format(name), name=name, count=count)
        try:
            self.start = float(start)
            self.stop = float(stop)
        except (TypeError, ValueError):
            raise errors.SpecError("Grid {} needs numeric bounds".format(name), name=name)
        self.name = name
        self.count = count

    @property
    def values(self):
        return np.linspace(self.start, self.stop, self.count).tolist()

    def to_json(self):
        return {"name": self.name, "start": self.start, "stop": self.stop, "count": self.count}


class SweepSpec:
    def __init__(self, protocol, varied_params, fixed_params=None, outputs=()):
        if protocol not in SWEEP_PROTOCOLS:
            raise errors.SpecError("Unknown sweep protocol {!r}".format(protocol),
                                   protocol=protocol, allowed=list(SWEEP_PROTOCOLS))
        self.protocol = protocol
        self.varied_params = [g if isinstance(g, Grid) else _grid_from_json(g) for g in varied_params]
        self.fixed_params = dict(fixed_params or {})
        self.outputs = list(outputs)

        if not self.varied_params:
            raise errors.SpecError("A sweep needs at least one varied parameter")
        names = [g.name for g in self.varied_params]
        if len(set(names)) != len(names):
            raise errors.SpecError("Varied parameters must be distinct", names=names)
        if not self.outputs:
            raise errors.SpecError("A sweep needs at least one output metric")
        allowed = NESTED_METRICS if protocol == NESTED else CHAIN_METRICS
        for metric in self.outputs:
            if metric not in METRICS:
                raise errors.SpecError("Unknown metric {!r}".format(metric), metric=metric, allowed=list(METRICS))
            if metric not in allowed:
                raise errors.SpecError("Metric {} does not apply to protocol {}".format(metric, protocol),
                                       metric=metric, protocol=protocol)
        if (NAIVE_VAR in self.outputs or EXACT_VAR in self.outputs) and 'horizon' not in self.fixed_params:
            raise errors.SpecError("naive_var and exact_var need a fixed 'horizon'")
        if protocol == NESTED:
            for grid in self.varied_params:
                if grid.name == 'k' and not all(float(v).is_integer() for v in grid.values):
                    raise errors.SpecError("Grid k must take integral values", name='k')

    @property
    def columns(self):
        return [g.name for g in self.varied_params] + self.outputs

    def points(self):
        """Grid points in lexicographic order, the first grid varying slowest."""
        names = [g.name for g in self.varied_params]
        for values in itertools.product(*(g.values for g in self.varied_params)):
            yield dict(zip(names, values))

    def to_json(self):
        return {
            "protocol": self.protocol,
            "varied_params": [g.to_json() for g in self.varied_params],
            "fixed_params": dict(self.fixed_params),
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict):
            raise errors.SpecError("A sweep spec must be a JSON object")
        try:
            return cls(doc["protocol"], doc["varied_params"], doc.get("fixed_params", {}), doc["outputs"])
        except KeyError as e:
            raise errors.SpecError("Sweep spec is missing {}".format(e.args[0]), missing=e.args[0])

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                doc = json.load(f)
        except OSError as e:
            raise errors.SpecError("Cannot read sweep spec: {}".format(e), path=str(path))
        except ValueError as e:
            raise errors.SpecError("Sweep spec is not valid JSON: {}".format(e), path=str(path))
        return cls.from_json(doc)


class SweepResult:
    def __init__(self, columns, rows, warnings=()):
        self.columns = list(columns)
        self.rows = rows
        self.warnings = list(warnings)


def run_sweep(spec, threads=1, on_point=None):
    """
    Evaluate every grid point of `spec`.

    Points run in parallel when `threads` > 1 but rows always come back in
    grid order. `on_point(index, total)` is called as each point finishes.
    """
    points = list(spec.points())
    warnings = []
    fixed = dict(spec.fixed_params)
    if SIMULATED_MEAN in spec.outputs and fixed.get('seed') is None:
        fixed['seed'] = simulator.SimConfig(steps=1, trajectories=1).seed
        warnings.append("No seed given for simulated_mean; using seed {}".format(fixed['seed']))

    def evaluate(point):
        return evaluate_point(spec.protocol, dict(fixed, **point), spec.outputs)

    total = len(points)
    progress = None if on_point is None else (lambda index, _: on_point(index, total))
    evaluated = tools.parallel_map(evaluate, points, threads, progress)

    rows = []
    for point, (values, notes) in zip(points, evaluated):
        row = dict(point)
        row.update(values)
        rows.append(row)
        for note in notes:
            warnings.append("{} at {}".format(note, _describe(point)))
    return SweepResult(spec.columns, rows, warnings)


def evaluate_point(protocol, params, outputs):
    """
    Compute the requested metrics at one parameter point.
    Returns a dict of metric values and a list of warning notes.
    """
    if protocol == NESTED:
        return _evaluate_nested(params, outputs)

    tau = params.get('tau', 1.0)
    chain = build_protocol(protocol, params).build()
    values = {}
    notes = []
    latency = None
    for metric in outputs:
        if metric == EQUILIBRIUM:
            values[metric] = markov.equilibrium(chain.matrix)[chain.success_state]
        elif metric in (MEAN_LATENCY, LATENCY_STD_OVER_MEAN):
            latency = latency or estimators.estimate_latency(chain)
            values[metric] = latency.mean if metric == MEAN_LATENCY else latency.std_over_mean
        elif metric == NAIVE_VAR:
            values[metric] = estimators.estimate_throughput(chain, _integer(params, 'horizon')).naive_variance
        elif metric == EXACT_VAR:
            horizon = _integer(params, 'horizon')
            values[metric] = estimators.exact_throughput_variance(chain, horizon) / tau ** 2
        elif metric == SIMULATED_MEAN:
            values[metric] = simulator.simulate_chain(chain, _sim_config(params)).mean_throughput / tau
    _check_finite(values)
    return values, notes


def _evaluate_nested(params, outputs):
    p = _required(params, 'p')
    k = _integer(params, 'k')
    values = {}
    notes = []
    for metric in outputs:
        if metric in (NESTED_TYPE1, NESTED_TYPE2):
            method = estimators.TYPE1 if metric == NESTED_TYPE1 else estimators.TYPE2
            estimate = estimators.nested_throughput(p, k, method)
            if estimate.clamped:
                notes.append("{} recursion argument clamped into [0, 1]".format(metric))
            values[metric] = estimate.rate
        elif metric == SIMULATED_MEAN:
            values[metric] = simulator.simulate_nested(k, p, _sim_config(params)).mean_throughput
    _check_finite(values)
    return values, notes


def build_protocol(protocol, params):
    """Turn a flat parameter point (with aliases) into a ProtocolSpec."""
    params = expand_aliases(protocol, params)
    tau = params.get('tau', 1.0)
    if protocol == protocols.MULTIHERALD:
        rounds = _round_count(params)
        probs = [_required(params, 'p{}'.format(i + 1)) for i in range(rounds)]
        return protocols.ProtocolSpec(protocol, protocols.MultiHeraldParams(probs), tau)
    if protocol == protocols.SHS:
        link_params = protocols.TwoLinkParams([_required(params, 'pl')], [_required(params, 'pr')], params.get('ps', 1.0))
        return protocols.ProtocolSpec(protocol, link_params, tau)
    left = [_required(params, 'pl1'), _required(params, 'pl2')]
    right = [_required(params, 'pr1'), _required(params, 'pr2')]
    return protocols.ProtocolSpec(protocol, protocols.TwoLinkParams(left, right, params.get('ps', 1.0)), tau)


def expand_aliases(protocol, params):
    expanded = dict(params)
    if protocol == protocols.MULTIHERALD and 'p' in params:
        for i in range(_integer(params, 'rounds')):
            expanded.setdefault('p{}'.format(i + 1), params['p'])
    for alias, targets in ALIASES.get(protocol, {}).items():
        if alias in params:
            for target in targets:
                if target in params:
                    raise errors.SpecError("Parameter {} is set both directly and through {}".format(target, alias),
                                           parameter=target, alias=alias)
                expanded[target] = params[alias]
    return expanded


def _round_count(params):
    if 'rounds' in params:
        return _integer(params, 'rounds')
    indices = [int(name[1:]) for name in params if name.startswith('p') and name[1:].isdigit()]
    if not indices:
        raise errors.SpecError("Multiheralded sweeps need p1..pn or p with rounds")
    return max(indices)


def _sim_config(params):
    return simulator.SimConfig(
        steps=params.get('steps', simulator.DEFAULT_STEPS),
        trajectories=params.get('trajectories', simulator.DEFAULT_TRAJECTORIES),
        seed=params.get('seed'),
        rng_algorithm=params.get('rng_algorithm', simulator.DEFAULT_RNG))


def _required(params, name):
    try:
        return params[name]
    except KeyError:
        raise errors.SpecError("Parameter {} is not set".format(name), parameter=name)


def _integer(params, name):
    value = _required(params, name)
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise errors.SpecError("Parameter {} must be an integer".format(name), parameter=name, value=value)
    return value


def _check_finite(values):
    for column, value in values.items():
        if not math.isfinite(value):
            raise errors.NonFiniteValue(column, value)


def _describe(point):
    return ", ".join("{}={:g}".format(name, value) for name, value in point.items())


def _grid_from_json(doc):
    if not isinstance(doc, dict):
        raise errors.SpecError("Varied parameters are objects with name, start, stop and count")
    try:
        return Grid(doc["name"], doc["start"], doc["stop"], doc["count"])
    except KeyError as e:
        raise errors.SpecError("Varied parameter is missing {}".format(e.args[0]), missing=e.args[0])

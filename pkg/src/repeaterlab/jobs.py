"""
The work behind each subcommand. A job reads its options, does the
computation and hands its results to the plugins; it never prints.
"""
import json
from . import errors
from . import estimators
from . import markov
from . import protocols
from . import simulator
from . import sweep


class Job(object):
    name = 'job'

    def __init__(self, args):
        self.args = args
        self.threads = 1
        self.protocol_spec = None

    def run(self, plugin_composite):
        raise NotImplementedError


class AnalyzeJob(Job):
    name = 'analyze'

    def run(self, plugin_composite):
        spec = self.protocol_spec = protocol_spec(self.args)
        chain = spec.build()
        method = getattr(self.args, 'method', 'solve')
        horizon = getattr(self.args, 'horizon', None)

        for message in structure_warnings(chain):
            plugin_composite.warning_issued(self, message)

        distribution = markov.equilibrium(chain.matrix, method=method)
        throughput = estimators.estimate_throughput(chain, N=horizon or 1, exact=horizon is not None, method=method)
        latency = estimators.estimate_latency(chain)

        report = {
            "protocol": spec.to_json(),
            "labels": list(chain.labels),
            "equilibrium": dict(zip(chain.labels, distribution)),
            "success_probability": distribution[chain.success_state],
            "throughput": throughput.to_json(),
            "latency": latency.to_json(),
            "cross_checks": cross_checks(spec, chain, distribution, latency),
        }
        plugin_composite.summary_ready(self, report)


class SweepJob(Job):
    name = 'sweep'

    def run(self, plugin_composite):
        spec = sweep.SweepSpec.load(self.args.spec)

        def on_point(index, total):
            plugin_composite.point_computed(self, index, total)

        result = sweep.run_sweep(spec, self.threads, on_point)
        for message in result.warnings:
            plugin_composite.warning_issued(self, message)
        plugin_composite.rows_ready(self, result.columns, result.rows)


class SimulateJob(Job):
    name = 'simulate'

    def run(self, plugin_composite):
        config = sim_config(self.args)
        if not config.seeded:
            plugin_composite.warning_issued(self, "No --seed given; drew seed {} from OS entropy".format(config.seed))
        result = self.simulate(config)
        plugin_composite.rows_ready(self, ['trajectory_index', 'success_count'], result.to_rows())
        plugin_composite.summary_ready(self, result.summary())

    def simulate(self, config):
        if self.args.nested:
            return simulator.simulate_nested(nested_level(self.args), self.args.p, config, self.threads,
                                             check_invariants=getattr(self.args, 'check_invariants', False))
        self.protocol_spec = protocol_spec(self.args)
        return simulator.simulate_chain(self.protocol_spec.build(), config, self.threads)


class CompareJob(SimulateJob):
    """Analytical values next to simulated ones, with the distance in standard errors."""
    name = 'compare'
    columns = ['metric', 'analytical', 'simulated', 'standard_error', 'sigma_distance']

    def run(self, plugin_composite):
        config = sim_config(self.args)
        if not config.seeded:
            plugin_composite.warning_issued(self, "No --seed given; drew seed {} from OS entropy".format(config.seed))
        result = self.simulate(config)
        if self.args.nested:
            rows = self.nested_rows(result)
        else:
            rows = self.chain_rows(result)
        plugin_composite.rows_ready(self, self.columns, rows)
        plugin_composite.summary_ready(self, result.summary())

    def chain_rows(self, result):
        chain = self.protocol_spec.build()
        pi = markov.equilibrium(chain.matrix)[chain.success_state]
        rows = [comparison_row('throughput', pi / chain.tau, result.mean_throughput / chain.tau,
                               result.standard_error / chain.tau)]
        exact = estimators.exact_throughput_variance(chain, result.config_echo.steps) / chain.tau ** 2
        rows.append(comparison_row('throughput_variance', exact, result.throughput_variance / chain.tau ** 2, None))
        return rows

    def nested_rows(self, result):
        k = nested_level(self.args)
        p = self.args.p
        rows = []
        if k == 1:
            rows.append(comparison_row('shs_equilibrium', protocols.shs_equilibrium(p, p, 1.0),
                                       result.mean_throughput, result.standard_error))
        for method in estimators.NESTED_METHODS:
            estimate = estimators.nested_throughput(p, k, method)
            rows.append(comparison_row('nested_' + method, estimate.rate, result.mean_throughput, result.standard_error))
        return rows


def comparison_row(metric, analytical, simulated, standard_error):
    distance = None
    if standard_error:
        distance = abs(analytical - simulated) / standard_error
    elif standard_error is not None and analytical == simulated:
        distance = 0.0
    return {
        "metric": metric,
        "analytical": analytical,
        "simulated": simulated,
        "standard_error": standard_error,
        "sigma_distance": distance,
    }


def cross_checks(spec, chain, distribution, latency):
    """
    Closed forms next to the chain-based values they should reproduce.
    Entries are None where no closed form applies.
    """
    pi = distribution[chain.success_state]
    equilibrium = latency_variance = None
    params = spec.params
    if spec.protocol == protocols.MULTIHERALD:
        equilibrium = protocols.cf_equilibrium_multiheralded(params)
        if all(params.round_probs):
            latency_variance = protocols.cf_latency_variance_multiheralded(params)
    elif params.rounds == 1:
        if params.left_probs[0] or params.right_probs[0]:
            equilibrium = protocols.cf_equilibrium_shs(params)
        if params.left_probs[0] and params.right_probs[0] and params.swap_prob:
            latency_variance = protocols.cf_latency_variance_shs(params)

    steps_variance = latency.variance / chain.tau ** 2
    return {
        "equilibrium": _delta(equilibrium, pi),
        "latency_variance": _delta(latency_variance, steps_variance),
        "mean_return_time": _delta(1 / pi if pi > 0 else None, latency.mean / chain.tau),
    }


def _delta(closed_form, computed):
    if closed_form is None:
        return None
    return {"closed_form": closed_form, "computed": computed, "delta": abs(closed_form - computed)}


def structure_warnings(chain):
    if not markov.is_irreducible(chain.matrix):
        yield "The chain is reducible; some states are never revisited"
    elif not markov.is_aperiodic(chain.matrix):
        yield "The chain is periodic with period {}; the equilibrium is a long-run time average".format(
            markov.period(chain.matrix, chain.success_state))


def protocol_spec(args):
    """Resolve protocol parameters from --params or from the individual flags."""
    if getattr(args, 'params', None):
        try:
            with open(args.params) as f:
                doc = json.load(f)
        except OSError as e:
            raise errors.SpecError("Cannot read parameter file: {}".format(e), path=args.params)
        except ValueError as e:
            raise errors.SpecError("Parameter file is not valid JSON: {}".format(e), path=args.params)
        return protocols.ProtocolSpec.from_json(doc)

    protocol = getattr(args, 'protocol', None)
    if protocol is None:
        raise errors.SpecError("Give --protocol or --params")
    tau = args.tau
    if protocol == protocols.MULTIHERALD:
        return protocols.ProtocolSpec(protocol, protocols.MultiHeraldParams(parse_probs('probs', args.probs)), tau)
    params = protocols.TwoLinkParams(parse_probs('pl', args.pl), parse_probs('pr', args.pr), args.ps)
    return protocols.ProtocolSpec(protocol, params, tau)


def parse_probs(name, raw):
    if raw is None:
        raise errors.SpecError("--{} is required for this protocol".format(name), parameter=name)
    try:
        return [float(value) for value in raw.split(',') if value.strip()]
    except ValueError:
        raise errors.SpecError("--{} takes comma-separated numbers, got {!r}".format(name, raw), parameter=name)


def sim_config(args):
    return simulator.SimConfig(args.steps, args.trajectories, args.seed, args.rng)


def nested_level(args):
    if args.k is None or args.p is None:
        raise errors.SpecError("--nested needs --k and --p")
    return args.k

from .. import jobs
from .. import protocols
from .. import simulator


class Command(object):
    """
    A subcommand. The plugin registers its parser, and when the user picks
    it, supplies the job to run.
    """
    name = None
    help = None
    job_class = None

    def setup_commands(self, subparsers, parents):
        parser = subparsers.add_parser(self.name, parents=parents, help=self.help, description=self.help)
        self.add_arguments(parser)

    def add_arguments(self, parser):
        pass

    def initialise(self, args, environ):
        if args.command != self.name:
            return False
        self.args = args
        return True

    def get_job(self):
        return self.job_class(self.args)

    def __eq__(self, other):
        return type(self) == type(other)


class AnalyzeCommand(Command):
    name = 'analyze'
    help = "Equilibrium, throughput and latency of one protocol chain, with closed-form cross-checks."
    job_class = jobs.AnalyzeJob

    def add_arguments(self, parser):
        add_protocol_arguments(parser)
        parser.add_argument('--horizon',
                            action='store',
                            type=int,
                            default=None,
                            metavar='N',
                            help="Also compute the exact throughput variance over N steps.")
        parser.add_argument('--method',
                            action='store',
                            choices=('solve', 'power'),
                            default='solve',
                            help="How to find the equilibrium distribution. (Default: solve)")


class SweepCommand(Command):
    name = 'sweep'
    help = "Evaluate metrics over a parameter grid read from a JSON sweep spec."
    job_class = jobs.SweepJob

    def add_arguments(self, parser):
        parser.add_argument('spec',
                            action='store',
                            help="Path to the sweep spec.")


class SimulateCommand(Command):
    name = 'simulate'
    help = "Monte Carlo trajectories of a protocol chain or of a nested repeater chain."
    job_class = jobs.SimulateJob

    def add_arguments(self, parser):
        add_protocol_arguments(parser)
        add_simulation_arguments(parser)


class CompareCommand(Command):
    name = 'compare'
    help = "Analytical values next to simulated ones, with their distance in standard errors."
    job_class = jobs.CompareJob

    def add_arguments(self, parser):
        add_protocol_arguments(parser)
        add_simulation_arguments(parser)


def add_protocol_arguments(parser):
    parser.add_argument('--protocol',
                        action='store',
                        choices=protocols.PROTOCOLS,
                        default=None,
                        help="The protocol chain to build.")
    parser.add_argument('--probs',
                        action='store',
                        default=None,
                        help="Comma-separated per-round success probabilities (multiherald).")
    parser.add_argument('--pl',
                        action='store',
                        default=None,
                        help="Left-link per-round success probabilities, comma-separated.")
    parser.add_argument('--pr',
                        action='store',
                        default=None,
                        help="Right-link per-round success probabilities, comma-separated.")
    parser.add_argument('--ps',
                        action='store',
                        type=float,
                        default=1.0,
                        help="Swap success probability. (Default: 1)")
    parser.add_argument('--tau',
                        action='store',
                        type=float,
                        default=1.0,
                        help="Duration of one step. (Default: 1)")
    parser.add_argument('--params',
                        action='store',
                        default=None,
                        metavar='FILE',
                        help="Read the protocol parameters from a JSON file instead of the flags.")


def add_simulation_arguments(parser):
    parser.add_argument('--nested',
                        action='store_true',
                        default=False,
                        help="Simulate a nested repeater chain instead of a protocol chain.")
    parser.add_argument('--k',
                        action='store',
                        type=int,
                        default=None,
                        help="Nesting level of the repeater chain (2^k links).")
    parser.add_argument('--p',
                        action='store',
                        type=float,
                        default=None,
                        help="Elementary-link EG success probability of the nested chain.")
    parser.add_argument('--steps',
                        action='store',
                        type=int,
                        default=simulator.DEFAULT_STEPS,
                        help="Steps per trajectory. (Default: {})".format(simulator.DEFAULT_STEPS))
    parser.add_argument('--trajectories',
                        action='store',
                        type=int,
                        default=simulator.DEFAULT_TRAJECTORIES,
                        help="Number of trajectories. (Default: {})".format(simulator.DEFAULT_TRAJECTORIES))
    parser.add_argument('--seed',
                        action='store',
                        type=int,
                        default=None,
                        help="Seed for reproducible runs. (Default: drawn from OS entropy and echoed)")
    parser.add_argument('--rng',
                        action='store',
                        choices=simulator.RNG_ALGORITHMS,
                        default=simulator.DEFAULT_RNG,
                        help="Bit generator. (Default: {})".format(simulator.DEFAULT_RNG))
    parser.add_argument('--check-invariants',
                        action='store_true',
                        dest='check_invariants',
                        default=False,
                        help="Verify the nested-chain state after every step (slow).")

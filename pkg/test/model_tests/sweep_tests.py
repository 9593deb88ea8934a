import json
import math
import os
import tempfile
import contexts
from repeaterlab import errors
from repeaterlab import estimators
from repeaterlab import protocols
from repeaterlab import sweep


def grid(name, start, stop, count):
    return {"name": name, "start": start, "stop": stop, "count": count}


class WhenListingTheValuesOfAGrid:
    def because_we_build_a_grid(self):
        self.grid = sweep.Grid('p', 0, 1, 5)

    def it_should_space_them_evenly_including_both_ends(self):
        assert self.grid.values == [0.0, 0.25, 0.5, 0.75, 1.0]


class WhenAGridHasTooFewPoints:
    def because_we_build_the_grid(self):
        self.exception = contexts.catch(sweep.Grid, 'p', 0, 1, 1)

    def it_should_raise_a_spec_error(self):
        assert isinstance(self.exception, errors.SpecError)


class WhenASweepIsMisconfigured:
    @classmethod
    def examples(cls):
        yield "shs", [grid("p", 0.1, 0.9, 3)], {}, ["throughput"]
        yield "shs", [grid("p", 0.1, 0.9, 3)], {}, ["nested_type1"]
        yield "shs", [grid("p", 0.1, 0.9, 3)], {}, ["exact_var"]
        yield "shs", [grid("p", 0.1, 0.9, 3), grid("p", 0.1, 0.9, 3)], {}, ["equilibrium"]
        yield "shs", [], {}, ["equilibrium"]
        yield "nested", [grid("k", 1, 2, 3)], {"p": 0.5}, ["nested_type2"]
        yield "teleport", [grid("p", 0.1, 0.9, 3)], {}, ["equilibrium"]

    def because_we_build_the_sweep(self, protocol, varied, fixed, outputs):
        self.exception = contexts.catch(sweep.SweepSpec, protocol, varied, fixed, outputs)

    def it_should_raise_a_spec_error(self, protocol, varied, fixed, outputs):
        assert isinstance(self.exception, errors.SpecError)


class WhenReadingASweepDocumentWithoutOutputs:
    def because_we_read_the_document(self):
        self.exception = contexts.catch(sweep.SweepSpec.from_json,
                                        {"protocol": "shs", "varied_params": [grid("p", 0.1, 0.9, 3)]})

    def it_should_name_the_missing_key(self):
        assert self.exception.missing == 'outputs'


class WhenWalkingTheGridPoints:
    def establish_two_grids(self):
        self.sweep = sweep.SweepSpec("dhs", [grid("p1", 0.2, 0.4, 2), grid("p2", 0.1, 0.3, 3)], {}, ["equilibrium"])

    def because_we_list_the_points(self):
        self.points = list(self.sweep.points())

    def it_should_vary_the_first_grid_slowest(self):
        assert [(round(p["p1"], 9), round(p["p2"], 9)) for p in self.points] == [
            (0.2, 0.1), (0.2, 0.2), (0.2, 0.3), (0.4, 0.1), (0.4, 0.2), (0.4, 0.3)]

    def it_should_put_the_grid_names_before_the_outputs(self):
        assert self.sweep.columns == ["p1", "p2", "equilibrium"]


class WhenExpandingParameterAliases:
    @classmethod
    def examples(cls):
        yield "shs", {"p": 0.3}, {"pl": 0.3, "pr": 0.3}
        yield "dhs", {"p1": 0.3, "p2": 0.6}, {"pl1": 0.3, "pr1": 0.3, "pl2": 0.6, "pr2": 0.6}
        yield "dhs", {"pl": 0.3, "pr": 0.6}, {"pl1": 0.3, "pl2": 0.3, "pr1": 0.6, "pr2": 0.6}
        yield "multiherald", {"p": 0.4, "rounds": 3}, {"p1": 0.4, "p2": 0.4, "p3": 0.4}

    def because_we_expand_them(self, protocol, params, expected):
        self.expanded = sweep.expand_aliases(protocol, params)

    def it_should_set_every_tied_parameter(self, protocol, params, expected):
        for name, value in expected.items():
            assert self.expanded[name] == value


class WhenAnAliasClashesWithADirectParameter:
    def because_we_expand_them(self):
        self.exception = contexts.catch(sweep.expand_aliases, "shs", {"p": 0.3, "pl": 0.4})

    def it_should_raise_a_spec_error(self):
        assert isinstance(self.exception, errors.SpecError)

    def it_should_name_both_parameters(self):
        assert (self.exception.parameter, self.exception.alias) == ("pl", "p")


class WhenBuildingProtocolsFromFlatPoints:
    @classmethod
    def examples(cls):
        yield "multiherald", {"p": 0.5, "rounds": 2}, protocols.MultiHeraldParams([0.5, 0.5])
        yield "multiherald", {"p1": 0.5, "p2": 0.25}, protocols.MultiHeraldParams([0.5, 0.25])
        yield "shs", {"p": 0.5, "ps": 0.9}, protocols.TwoLinkParams([0.5], [0.5], 0.9)
        yield "dhs", {"p1": 0.2, "p2": 0.7}, protocols.TwoLinkParams([0.2, 0.7], [0.2, 0.7], 1.0)

    def because_we_build_the_protocol(self, protocol, params, expected):
        self.built = sweep.build_protocol(protocol, params)

    def it_should_carry_the_expected_parameters(self, protocol, params, expected):
        assert self.built.params == expected


class WhenSweepingTheSingleHeraldedEquilibrium:
    def establish_a_sweep_along_the_diagonal(self):
        self.sweep = sweep.SweepSpec("shs", [grid("p", 0.25, 0.75, 3)], {}, ["equilibrium", "mean_latency"])
        self.progress = []

    def because_we_run_the_sweep(self):
        self.result = sweep.run_sweep(self.sweep, on_point=lambda index, total: self.progress.append((index, total)))

    def it_should_produce_one_row_per_point(self):
        assert len(self.result.rows) == 3

    def it_should_match_the_closed_form(self):
        for row in self.result.rows:
            assert math.isclose(row["equilibrium"], protocols.shs_equilibrium(row["p"], row["p"], 1.0), rel_tol=1e-10)

    def it_should_report_the_mean_latency_as_the_inverse(self):
        for row in self.result.rows:
            assert math.isclose(row["mean_latency"] * row["equilibrium"], 1.0, rel_tol=1e-9)

    def it_should_report_progress_for_every_point(self):
        assert self.progress == [(0, 3), (1, 3), (2, 3)]

    def it_should_have_nothing_to_warn_about(self):
        assert self.result.warnings == []


class WhenSweepingVariancesOverAFixedHorizon:
    def establish_a_sweep_with_a_horizon(self):
        self.sweep = sweep.SweepSpec("multiherald", [grid("p1", 0.3, 0.6, 2)],
                                     {"p2": 0.5, "horizon": 50, "tau": 2.0}, ["naive_var", "exact_var"])

    def because_we_run_the_sweep(self):
        self.result = sweep.run_sweep(self.sweep)

    def it_should_report_the_exact_variance_in_time_units(self):
        for row in self.result.rows:
            chain = protocols.build_multiheralded(protocols.MultiHeraldParams([row["p1"], 0.5]), 2.0)
            expected = estimators.exact_throughput_variance(chain, 50) / 4.0
            assert math.isclose(row["exact_var"], expected, rel_tol=1e-12)

    def it_should_report_the_naive_variance_in_time_units(self):
        for row in self.result.rows:
            p1 = row["p1"]
            pi = p1 * 0.5 / (1 + p1)
            assert math.isclose(row["naive_var"], pi * (1 - pi) / (50 * 4.0), rel_tol=1e-9)


class WhenSweepingANestedChain:
    def establish_perfect_links_over_two_levels(self):
        self.sweep = sweep.SweepSpec("nested", [grid("k", 1, 2, 2)], {"p": 1.0}, ["nested_type1", "nested_type2"])

    def because_we_run_the_sweep(self):
        self.result = sweep.run_sweep(self.sweep)

    def it_should_halve_the_rate_at_the_first_level(self):
        assert math.isclose(self.result.rows[0]["nested_type1"], 0.5)
        assert math.isclose(self.result.rows[0]["nested_type2"], 0.5)

    def it_should_follow_each_recursion_at_the_second_level(self):
        assert math.isclose(self.result.rows[1]["nested_type1"], 0.25)
        assert math.isclose(self.result.rows[1]["nested_type2"], 3 / 11)


class WhenSimulatingInASweepWithoutASeed:
    def establish_a_tiny_simulated_sweep(self):
        self.sweep = sweep.SweepSpec("shs", [grid("p", 0.4, 0.6, 2)], {"steps": 20, "trajectories": 2},
                                     ["simulated_mean"])

    def because_we_run_the_sweep(self):
        self.result = sweep.run_sweep(self.sweep)

    def it_should_warn_about_the_drawn_seed(self):
        assert len(self.result.warnings) == 1
        assert self.result.warnings[0].startswith("No seed given for simulated_mean")


class WhenSweepingWithSeveralThreads:
    def establish_a_seeded_simulated_sweep(self):
        self.sweep = sweep.SweepSpec("nested", [grid("p", 0.3, 0.9, 4)],
                                     {"k": 2, "steps": 200, "trajectories": 4, "seed": 9},
                                     ["nested_type2", "simulated_mean"])

    def because_we_run_the_sweep_serially_and_in_parallel(self):
        self.serial = sweep.run_sweep(self.sweep, threads=1)
        self.parallel = sweep.run_sweep(self.sweep, threads=3)

    def it_should_give_identical_rows_in_grid_order(self):
        assert self.serial.rows == self.parallel.rows


class WhenLoadingASweepFromDisk:
    def establish_a_sweep_file(self):
        self.folder = tempfile.mkdtemp()
        self.path = os.path.join(self.folder, 'sweep.json')
        self.doc = {"protocol": "shs", "varied_params": [grid("p", 0.1, 0.9, 3)], "fixed_params": {"ps": 0.5},
                    "outputs": ["equilibrium"]}
        with open(self.path, 'w') as f:
            json.dump(self.doc, f)

    def because_we_load_the_file(self):
        self.loaded = sweep.SweepSpec.load(self.path)

    def it_should_write_the_same_document_back(self):
        assert self.loaded.to_json() == self.doc

    def cleanup_the_file(self):
        os.remove(self.path)
        os.rmdir(self.folder)


class WhenLoadingABrokenSweepFile:
    @classmethod
    def examples_of_file_contents(cls):
        yield None
        yield "{not json"

    def establish_the_file(self, contents):
        self.folder = tempfile.mkdtemp()
        self.path = os.path.join(self.folder, 'sweep.json')
        if contents is not None:
            with open(self.path, 'w') as f:
                f.write(contents)

    def because_we_load_the_file(self, contents):
        self.exception = contexts.catch(sweep.SweepSpec.load, self.path)

    def it_should_raise_a_spec_error(self, contents):
        assert isinstance(self.exception, errors.SpecError)

    def cleanup_the_file(self, contents):
        if os.path.exists(self.path):
            os.remove(self.path)
        os.rmdir(self.folder)


FIGURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, os.pardir, 'figures')


class WhenLoadingTheShippedFigureSweeps:
    @classmethod
    def examples(cls):
        for name in sorted(os.listdir(FIGURES)):
            yield name

    def because_we_load_the_file(self, name):
        self.exception = contexts.catch(sweep.SweepSpec.load, os.path.join(FIGURES, name))

    def it_should_be_a_valid_sweep(self, name):
        assert self.exception is None

import numpy as np
import pytest

from qca2.gates import ControlledFlip, LocalUnitary
from qca2.io_formats import (
    ConfigRangeError,
    ConfigSyntaxError,
    NonUnitaryMatrixError,
    format_complex,
    format_config,
    parse_config,
    parse_script,
    read_csv,
    render_pgm,
    write_csv,
)
from qca2.rules import (
    BoundaryCondition,
    EvaluationKind,
    NeighborhoodRule,
    QcaConfig,
    RecordMode,
    evolve,
)

from conftest import random_unitary

FIG3_TEXT = "cells=3\nrule=right\neval=h_s_then_cn\nsteps=50\ninitial=32\n"


class TestParseConfig:
    def test_fig3_config(self):
        config = parse_config(FIG3_TEXT)
        assert config.n_cells == 3
        assert config.rule is NeighborhoodRule.RIGHT
        assert config.evaluation.kind is EvaluationKind.HADAMARD_S_THEN_CN
        assert config.initial_index == 32
        assert config.n_steps == 50
        assert config.boundary is BoundaryCondition.CONST_ZERO
        assert config.record is RecordMode.PER_STEP

    def test_minimal_config_defaults(self):
        config = parse_config("cells=1\nrule=right\nsteps=0\ninitial=0\n")
        assert config.boundary is BoundaryCondition.CONST_ZERO
        assert config.evaluation.kind is EvaluationKind.HADAMARD_BOTH

    def test_initial_out_of_range(self):
        with pytest.raises(ConfigRangeError):
            parse_config("cells=2\nrule=right\nsteps=1\ninitial=99\n")

    def test_unknown_key_rejected_with_line(self):
        with pytest.raises(ConfigSyntaxError) as exc:
            parse_config("cells=2\nrule=right\nbogus=1\nsteps=1\ninitial=0\n")
        assert exc.value.line_no == 3

    def test_missing_required_key(self):
        with pytest.raises(ConfigSyntaxError):
            parse_config("cells=2\nrule=right\nsteps=1\n")

    def test_bad_rule_value(self):
        with pytest.raises(ConfigSyntaxError):
            parse_config("cells=2\nrule=up\nsteps=1\ninitial=0\n")

    def test_comments_and_blank_lines(self):
        text = "# header\n\ncells=2  # two cells\nrule=left\nsteps=3\ninitial=1\n"
        assert parse_config(text).rule is NeighborhoodRule.LEFT

    def test_custom_eval_parsed(self, rng):
        u = random_unitary(rng, 4)
        entries = ",".join(format_complex(z) for z in u.reshape(-1))
        config = parse_config(f"cells=2\nrule=right\neval=custom:{entries}\nsteps=1\ninitial=0\n")
        assert config.evaluation.kind is EvaluationKind.CUSTOM
        assert np.max(np.abs(config.evaluation.matrix - u)) <= 1e-12

    def test_custom_eval_non_unitary(self):
        entries = ",".join("1+0i" for _ in range(16))
        with pytest.raises(NonUnitaryMatrixError):
            parse_config(f"cells=2\nrule=right\neval=custom:{entries}\nsteps=1\ninitial=0\n")

    def test_round_trip_idempotent(self, rng):
        u = random_unitary(rng, 4)
        entries = ",".join(format_complex(z) for z in u.reshape(-1))
        for text in (
            FIG3_TEXT,
            "cells=2\nrule=both\nboundary=cyclic\nsteps=7\ninitial=5\nrecord=phase\n",
            f"cells=2\nrule=right\neval=custom:{entries}\nsteps=1\ninitial=0\n",
        ):
            config = parse_config(text)
            written = format_config(config)
            config2 = parse_config(written)
            assert config2 == config
            assert format_config(config2) == written
            if config.evaluation.kind is EvaluationKind.CUSTOM:
                assert np.array_equal(config.evaluation.matrix, config2.evaluation.matrix)


class TestParseScript:
    def test_fig2_script(self):
        text = "cells=1\ninitial=2\nstep\nH s0\nstep\nCN s0 c0\n"
        n_qubits, initial, script = parse_script(text)
        assert n_qubits == 2 and initial == 2
        assert len(script) == 2
        assert isinstance(script[0][0], LocalUnitary)
        assert script[0][0].qubits == (1,)
        assert script[1][0] == ControlledFlip({1}, 0)

    def test_ccn_and_x_lines(self):
        text = "cells=2\ninitial=0\nstep\nCCN s0 s1 c1\nX c0\n"
        _, _, script = parse_script(text)
        assert script[0][0] == ControlledFlip({1, 3}, 2)
        assert script[0][1] == ControlledFlip((), 0)

    def test_bad_qubit_name(self):
        with pytest.raises(ConfigSyntaxError):
            parse_script("cells=1\ninitial=0\nstep\nH q0\n")

    def test_qubit_out_of_range(self):
        with pytest.raises(ConfigRangeError):
            parse_script("cells=1\ninitial=0\nstep\nH s1\n")

    def test_duplicate_qubits_rejected(self):
        with pytest.raises(ConfigSyntaxError):
            parse_script("cells=1\ninitial=0\nstep\nCN s0 s0\n")

    def test_initial_out_of_range(self):
        with pytest.raises(ConfigRangeError):
            parse_script("cells=1\ninitial=4\nstep\nH s0\n")


class TestCsv:
    def test_single_entry(self):
        assert write_csv(np.array([[1.0]])) == "state,t0\n0,1\n"

    def test_delta_column(self):
        text = write_csv(np.eye(4)[:, [2]])
        assert "2,1" in text.splitlines()
        assert text.splitlines()[1] == "0,0"

    def test_header_names_columns(self):
        text = write_csv(np.zeros((2, 3)))
        assert text.splitlines()[0] == "state,t0,t1,t2"

    def test_fig3_round_trip_bitwise(self):
        matrix = evolve(parse_config(FIG3_TEXT))
        assert np.array_equal(read_csv(write_csv(matrix)), matrix)


class TestPgm:
    def test_probability_one_is_black(self):
        body = render_pgm(np.array([[1.0]])).decode()
        assert body == "P2\n1 1\n255\n0\n"

    def test_probability_zero_is_white(self):
        assert render_pgm(np.array([[0.0]])).decode().splitlines()[-1] == "255"

    def test_half_rounds_away_from_zero(self):
        assert render_pgm(np.array([[0.5]])).decode().splitlines()[-1] == "128"

    def test_dimensions_and_orientation(self):
        matrix = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
        lines = render_pgm(matrix).decode().splitlines()
        assert lines[1] == "2 3"
        assert lines[3] == "0 255"  # state 0 on top
        assert lines[5] == "255 0"

    def test_all_pixels_in_range(self, rng):
        matrix = rng.random((8, 16))
        pixels = [
            int(v)
            for line in render_pgm(matrix).decode().splitlines()[3:]
            for v in line.split()
        ]
        assert all(0 <= v <= 255 for v in pixels)

    def test_black_threshold(self):
        just_black = 1.0 - 1.0 / 510.0
        assert render_pgm(np.array([[just_black]])).decode().splitlines()[-1] == "0"
        below = just_black - 1e-9
        assert render_pgm(np.array([[below]])).decode().splitlines()[-1] == "1"

    def test_deterministic(self, rng):
        matrix = rng.random((8, 8))
        assert render_pgm(matrix) == render_pgm(matrix.copy())

import json

import pytest
from click.testing import CliRunner
from loguru import logger

from synthcomp.cli import cli, main


@pytest.fixture
def runner() -> CliRunner:
    yield CliRunner()
    # the CLI points loguru at the runner's stderr, which is closed by now
    logger.remove()


def invoke(runner: CliRunner, *args: str):
    return runner.invoke(cli, list(args))


class TestRun:
    def test_run(self, runner: CliRunner):
        # act
        result = invoke(runner, "run", "succ", "4")

        # assert
        assert result.exit_code == 0
        assert result.output == "Some 5\nsteps 1\n"

    def test_run_a_code(self, runner: CliRunner):
        result = invoke(runner, "run", "15", "9")
        assert result.output == "Some 0\nsteps 3\n"

    def test_divergence(self, runner: CliRunner):
        # act
        result = invoke(runner, "run", "min(succ)", "0", "--fuel", "100")

        # assert
        assert result.exit_code == 2
        assert result.output == "None (fuel 100)\n"

    def test_json(self, runner: CliRunner):
        # act
        result = invoke(runner, "--json", "run", "add", "3")

        # assert
        output = json.loads(result.output)
        assert result.exit_code == 0
        assert output["cmd"] == "run"
        assert output["args"] == {"program": "add", "x": 3, "fuel": 10_000}
        assert output["result"]["value"] == 3
        assert "error" not in output

    def test_json_divergence(self, runner: CliRunner):
        # act
        result = invoke(runner, "--json", "run", "22", "0", "--fuel", "50")

        # assert
        output = json.loads(result.output)
        assert result.exit_code == 2
        assert output["error"] == "None (fuel 50)"
        assert "result" not in output

    def test_escalate(self, runner: CliRunner):
        # act
        result = invoke(runner, "run", "15", "0", "--fuel", "1", "--escalate", "3")

        # assert
        assert result.exit_code == 0
        assert result.output == "Some 0 (fuel 10)\n"

    def test_escalation_gives_up(self, runner: CliRunner):
        result = invoke(runner, "run", "22", "0", "--fuel", "5", "--escalate", "2")
        assert result.exit_code == 2

    def test_parse_error(self, runner: CliRunner):
        # act
        result = invoke(runner, "run", "succ succ", "0")

        # assert
        assert result.exit_code == 1
        assert "position 5" in result.output


class TestCodes:
    @pytest.mark.parametrize("program, code", [("succ", "1"), ("min(succ)", "22")])
    def test_quote(self, runner: CliRunner, program: str, code: str):
        assert invoke(runner, "quote", program).output == f"{code}\n"

    def test_decode(self, runner: CliRunner):
        assert invoke(runner, "decode", "22").output == "min(succ)\n"

    def test_enum_w(self, runner: CliRunner):
        # act
        result = invoke(runner, "enum-w", "1", "--fuel", "10")

        # assert
        assert result.output == "0 @ 2\n1 @ 4\n2 @ 7\n"

    def test_enum_w_json(self, runner: CliRunner):
        # act
        result = invoke(runner, "--json", "enum-w", "1", "--fuel", "4")

        # assert
        output = json.loads(result.output)
        assert output["result"] == [
            {"value": 0, "witness": 2},
            {"value": 1, "witness": 4},
        ]


class TestKleene:
    @pytest.mark.parametrize("bits, verdict", [("10", "member"), ("11", "not member")])
    def test_member(self, runner: CliRunner, bits: str, verdict: str):
        assert invoke(runner, "kleene", "member", bits).output == f"{verdict}\n"

    def test_member_rejects_other_characters(self, runner: CliRunner):
        result = invoke(runner, "kleene", "member", "12")
        assert result.exit_code != 0

    def test_tree(self, runner: CliRunner):
        # act
        result = invoke(runner, "kleene", "tree", "--depth", "2")

        # assert
        assert result.output == "ε\n  1\n    10\n"

    def test_refute(self, runner: CliRunner):
        assert invoke(runner, "kleene", "refute", "succ").output == "depth 2\n"

    def test_refute_a_divergent_program(self, runner: CliRunner):
        result = invoke(runner, "--fuel", "100", "kleene", "refute", "22")
        assert result.exit_code == 2

    def test_refute_out_of_budget(self, runner: CliRunner):
        result = invoke(runner, "--budget", "1", "kleene", "refute", "succ")
        assert result.exit_code == 3

    def test_leaves(self, runner: CliRunner):
        # act
        result = invoke(runner, "kleene", "leaves", "--count", "3")

        # assert
        assert result.output == "0: 0\n1: 11\n2: 100\n"


class TestHomeo:
    def test_f(self, runner: CliRunner):
        # act
        result = invoke(runner, "homeo", "f", "--point", "table:1,0", "--prefix", "6")

        # assert
        assert result.output == "110110\n"

    @pytest.mark.parametrize(
        "spec, output", [("leaves:2,0,3", "2,0,3,2,0,3"), ("table:1", "1,1,1,1,1,1")]
    )
    def test_g(self, runner: CliRunner, spec: str, output: str):
        # act
        result = invoke(runner, "homeo", "g", "--point", spec, "--prefix", "6")

        # assert
        assert result.exit_code == 0
        assert result.output == f"{output}\n"

    def test_g_of_a_point_staying_in_the_tree(self, runner: CliRunner):
        # arrange
        # 10100... follows the diagonal up to index 4, deeper than the budget.
        args = ["--budget", "3", "homeo", "g", "--point", "table:1,0,1,0+0"]

        # act
        result = invoke(runner, *args)

        # assert
        assert result.exit_code == 3

    def test_roundtrip(self, runner: CliRunner):
        # act
        result = invoke(runner, "homeo", "roundtrip", "--point", "table:1,0,1")

        # assert
        assert result.exit_code == 0
        assert result.output == "0 mismatches\n"

    @pytest.mark.parametrize("which, trials", [("f", "100"), ("g", "20")])
    def test_modulus_check(self, runner: CliRunner, which: str, trials: str):
        # act
        result = invoke(
            runner, "homeo", "modulus-check", "--map", which, "--trials", trials
        )

        # assert
        assert result.exit_code == 0
        assert result.output == f"{trials}/{trials} stable\n"

    def test_leaves_are_cantor_points(self, runner: CliRunner):
        result = invoke(runner, "homeo", "f", "--point", "leaves:1")
        assert result.exit_code != 0


@pytest.mark.slow
class TestSelftest:
    def test_fast(self, runner: CliRunner):
        # act
        result = invoke(runner, "selftest", "fast")

        # assert
        assert result.exit_code == 0
        assert "codec: ok" in result.output

    def test_injected_fault(self, runner: CliRunner):
        # act
        result = invoke(runner, "selftest", "fast", "--inject-fault", "codec")

        # assert
        assert result.exit_code == 4
        assert "codec: FAILED" in result.output


class TestMain:
    @pytest.mark.parametrize(
        "argv, code",
        [
            (["run", "succ", "4"], 0),
            (["run", "succ succ", "0"], 1),
            (["frobnicate"], 1),
            (["run", "succ"], 1),
            (["run", "22", "0", "--fuel", "10"], 2),
        ],
    )
    def test_exit_codes(self, argv, code: int):
        # act
        with pytest.raises(SystemExit) as error:
            main(argv)

        # assert
        assert error.value.code == code
        logger.remove()

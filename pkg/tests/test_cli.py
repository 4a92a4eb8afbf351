import json

import pytest

from app.cli import EXIT_ERROR, EXIT_OK, main
from app.services import set_service


class TestEval:
    def test_ratio_of_sumsets(self, set_file, capsys):
        path = set_file("A", [1, 2])
        assert main(["eval", "--expr", "(A+A)/(A+A)", "--set", f"A={path}"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "# ((A+A)/(A+A)) |7|"
        assert "1/2" in out.splitlines()

    def test_json(self, set_file, capsys):
        path = set_file("A", [1, 2])
        assert main(["eval", "--expr", "A(A+A+A+A)", "--set", f"A={path}", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["size"] == 9
        assert payload["elements"][0] == "4"

    def test_syntax_error(self, set_file, capsys):
        path = set_file("A", [1])
        assert main(["eval", "--expr", "A+", "--set", f"A={path}"]) == EXIT_ERROR
        assert "EXPRESSION_SYNTAX" in capsys.readouterr().err

    def test_unbound(self, set_file, capsys):
        path = set_file("A", [1])
        assert main(["eval", "--expr", "A+B", "--set", f"A={path}"]) == EXIT_ERROR
        assert "UNBOUND_VARIABLE" in capsys.readouterr().err

    def test_malformed_binding(self, capsys):
        assert main(["eval", "--expr", "A", "--set", "A"]) == EXIT_ERROR

    def test_memory_budget(self, set_file, capsys):
        path = set_file("A", range(1, 30))
        argv = ["--mem-budget", "20", "eval", "--expr", "A*A", "--set", f"A={path}"]
        assert main(argv) == EXIT_ERROR
        assert "CAPACITY_EXCEEDED" in capsys.readouterr().err


class TestEnergy:
    def test_product_with_oracle(self, set_file, capsys):
        path = set_file("A", [0, 1])
        assert main(["energy", "--set", str(path), "--brute"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["energy"] == payload["brute_energy"] == 10
        assert payload["agrees"] is True

    def test_sum(self, set_file, capsys):
        path = set_file("A", [1, 2, 3])
        assert main(["energy", "--set", str(path), "--mode", "sum"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["energy"] == 19

    def test_missing_file(self, tmp_path, capsys):
        assert main(["energy", "--set", str(tmp_path / "nada.txt")]) == EXIT_ERROR


class TestVerify:
    def test_balog(self, capsys):
        assert main(["verify", "--suite", "balog", "--n", "4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[OK  ] balog" in out
        assert "FAIL" not in out

    def test_gp_json(self, capsys):
        assert main(["verify", "--suite", "gp", "--n", "6", "--json"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 1
        check = json.loads(lines[0])
        assert check["name"] == "gp_energy"
        assert check["rhs"] == 32 and check["holds"] is True

    def test_json_lines_one_per_check(self, capsys):
        assert main(["verify", "--suite", "balog", "--n", "4"]) == EXIT_OK
        expected = len([line for line in capsys.readouterr().out.splitlines() if line.startswith("[")])
        assert main(["verify", "--suite", "balog", "--n", "4", "--json"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == expected > 0
        assert all(json.loads(line)["holds"] for line in lines)


class TestConstruct:
    def test_geometric(self, capsys):
        assert main(["construct", "--family", "geometric", "--params", "n=3,ratio=2"]) == EXIT_OK
        A, _ = set_service.parse_set_text(capsys.readouterr().out)
        assert list(A) == [2, 4, 8]

    def test_random_subset_to_file(self, tmp_path):
        output = tmp_path / "r.txt"
        argv = ["construct", "--family", "random_subset", "--params", "n=3,M=3", "--seed", "9", "--output", str(output)]
        assert main(argv) == EXIT_OK
        assert list(set_service.load_set_file(output)) == [1, 2, 3]

    def test_invalid_params(self, capsys):
        assert main(["construct", "--family", "interval", "--params", "n=-1"]) == EXIT_ERROR
        assert main(["construct", "--family", "interval", "--params", "n"]) == EXIT_ERROR


class TestSUnit:
    def test_interval(self, set_file, capsys):
        path = set_file("A", range(1, 11))
        assert main(["sunit", "--set", str(path), "--generators", "2", "--paths", "1,2"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["ordered_pairs"] == 50
        assert payload["paths"]["k"] == 2

    def test_path_length_capacity(self, set_file, capsys):
        path = set_file("A", [1, 2, 3])
        assert main(["sunit", "--set", str(path), "--generators", "2", "--paths", "1,9"]) == EXIT_ERROR

    def test_zero_generator(self, set_file, capsys):
        path = set_file("A", [1, 2])
        assert main(["sunit", "--set", str(path), "--generators", "0"]) == EXIT_ERROR


class TestIncidence:
    def test_small_example(self, set_file, capsys):
        A, B = set_file("A", [1, 2]), set_file("B", [0, 1])
        C = set_file("C", [0, 1])
        assert main(["incidence", "--A", str(A), "--B", str(B), "--C", str(C)]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["incidences"] == 8

    def test_precondition(self, set_file, capsys):
        A, B = set_file("A", [0]), set_file("B", [1])
        assert main(["incidence", "--A", str(A), "--B", str(B), "--C", str(B)]) == EXIT_ERROR
        assert "PRECONDITION_FAILED" in capsys.readouterr().err


class TestProbeAndSurvey:
    def test_probe(self, set_file, capsys):
        path = set_file("A", [1, 2])
        assert main(["probe", "--set", str(path), "--descriptor", "par"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["card_a_times_4a"] == 9
        assert payload["descriptor"] == "par"

    def test_survey(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"families": [{"kind": "interval", "n": 3}]}))
        output = tmp_path / "saida" / "survey.csv"
        assert main(["survey", "--config", str(config), "--output", str(output)]) == EXIT_OK
        assert output.exists() and output.with_suffix(".json").exists()
        assert "1 linhas, 0 candidatos" in capsys.readouterr().out

    def test_invalid_config(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text('{"c": 0}')
        assert main(["survey", "--config", str(config)]) == EXIT_ERROR
        assert "CONFIGURATION_ERROR" in capsys.readouterr().err


def test_requires_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2

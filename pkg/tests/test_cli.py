import json

import pytest

import cli.commands as commands
import config.config as config_module
from cli.commands import EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, dispatch
from cli.files import QueryResult, parse_free1_query, parse_theory, render_theory
from config.config import Settings
from core.errors import ParseError
from free1.generators import Generator

THEORY_Q = "pred E/2\npred R/1\n"
MODEL_Q = {"carrier": 2, "predicates": {"E": [[1, 1], [1, 2], [2, 1], [2, 2]], "R": [[1], [2]]}}


def run(capsys, *argv):
    code = dispatch([str(a) for a in argv])
    return code, capsys.readouterr().out


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


class TestFiles:
    @staticmethod
    def test_theory_round_trip(fixtures_dir):
        text = (fixtures_dir / "fix_f.thy").read_text(encoding="utf-8")
        theory = parse_theory(text)
        again = parse_theory(render_theory(theory))
        assert again.signature == theory.signature
        assert again.axioms == theory.axioms

    @staticmethod
    @pytest.mark.parametrize("text", ["pred R\n", "fun f/x\n", "pred R/1\naxiom R(x0\n", "relation R/1\n"])
    def test_theory_errors(text):
        with pytest.raises(ParseError):
            parse_theory(text)

    @staticmethod
    def test_free1_query(fix_ab, fixtures_dir):
        text = (fixtures_dir / "not_r_bot.q").read_text(encoding="utf-8")
        fixed, lhs, rhs = parse_free1_query(text, fix_ab)
        assert fixed == 0
        assert isinstance(lhs, Generator)
        assert lhs.to_text() == "[forall 1: !R(x0)]"

    @staticmethod
    def test_free1_query_needs_both_sides(fix_ab):
        with pytest.raises(ParseError):
            parse_free1_query("context 0\nlhs true\n", fix_ab)


class TestEntail:
    @staticmethod
    def test_proved(capsys, fixtures_dir):
        code, out = run(capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq")
        assert code == EXIT_OK
        assert out.startswith("status: proved")
        assert "terms=[['a'], ['b']]" in out

    @staticmethod
    def test_refuted_by_a_one_element_model(capsys, fixtures_dir):
        code, out = run(
            capsys, "entail", fixtures_dir / "fix_empty.thy", fixtures_dir / "forall_r_bot.seq",
            "--depth", "3", "--model-bound", "2", "--json",
        )
        assert code == EXIT_FAIL
        result = json.loads(out)
        assert result["status"] == "refuted"
        assert result["countermodel"] == {"carrier": 1, "predicates": {"R": [[1]]}, "point": []}

    @staticmethod
    def test_unprovable_existential(capsys, fixtures_dir):
        code, out = run(capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "unprovable.seq", "--json")
        assert code == EXIT_FAIL
        assert json.loads(out)["countermodel"]["carrier"] >= 1

    @staticmethod
    def test_zero_bounds_leave_the_sequent_open(capsys, fixtures_dir):
        code, out = run(
            capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "unprovable.seq",
            "--depth", "0", "--model-bound", "0", "--json",
        )
        assert code == EXIT_UNKNOWN
        assert json.loads(out)["status"] == "unknown"

    @staticmethod
    def test_depth_one_suffices(capsys, fixtures_dir):
        code, _ = run(capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq", "--depth", "1")
        assert code == EXIT_OK

    @staticmethod
    def test_trace_is_reported(capsys, fixtures_dir):
        code, out = run(
            capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq", "--json", "--trace"
        )
        assert code == EXIT_OK
        assert json.loads(out)["clauses"][0]["trace"]

    @staticmethod
    def test_free1_leq(capsys, fixtures_dir):
        code, out = run(capsys, "free1-leq", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.q", "--json")
        assert code == EXIT_OK
        assert json.loads(out)["status"] == "proved"

    @staticmethod
    def test_jobs_only_on_free1_leq(capsys, fixtures_dir):
        code, out = run(capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq", "--jobs", "2")
        assert code == EXIT_ERROR
        assert out.startswith("usage error:")
        code, _ = run(capsys, "free1-leq", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.q", "--jobs", "2")
        assert code == EXIT_OK

    @staticmethod
    @pytest.mark.parametrize("flags, expected", [
        (["--depth", "1", "--instantiation-depth", "3"], 3),
        (["--depth", "1"], 1),
        (["--instantiation-depth", "0"], 0),
    ])
    def test_instantiation_depth(capsys, monkeypatch, fixtures_dir, flags, expected):
        monkeypatch.setattr(config_module, "settings", Settings(instantiation_depth=None, witness_depth=2))
        seen = []

        def recording_parse(text, **bounds):
            seen.append(bounds["instantiation_depth"])
            return parse_theory(text, **bounds)

        monkeypatch.setattr(commands, "parse_theory", recording_parse)
        code, _ = run(capsys, "entail", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq", *flags)
        assert code == EXIT_OK
        assert seen == [expected]


class TestWitnessCheck:
    @staticmethod
    @pytest.mark.parametrize("witness, expected", [
        ({"n": 2, "picks": [0, 0], "terms": [["a"], ["b"]]}, EXIT_OK),
        ({"picks": [0], "terms": [["a"]]}, EXIT_FAIL),
        ({"picks": [3], "terms": [["a"]]}, EXIT_ERROR),
        ({"n": 3, "picks": [0], "terms": [["a"]]}, EXIT_ERROR),
    ])
    def test_exit_codes(capsys, tmp_path, fixtures_dir, witness, expected):
        path = write_json(tmp_path, "witness.json", witness)
        code, _ = run(capsys, "witness-check", fixtures_dir / "fix_ab.thy", fixtures_dir / "not_r_bot.seq", path)
        assert code == expected


class TestFamilyCommands:
    @staticmethod
    def test_top_family_is_a_filter(capsys, fixtures_dir):
        code, out = run(
            capsys, "check-family", fixtures_dir / "chain2.json", fixtures_dir / "top_family_chain2.json",
            "--kind", "filter",
        )
        assert code == EXIT_OK
        assert out.startswith("filter: pass")

    @staticmethod
    def test_unclosed_family_fails_then_closes(capsys, fixtures_dir):
        args = ["check-family", fixtures_dir / "chain2.json", fixtures_dir / "atom_p_chain2.json", "--kind", "filter"]
        code, out = run(capsys, *args)
        assert code == EXIT_FAIL
        assert "FAILED" in out
        code, _ = run(capsys, *args, "--close")
        assert code == EXIT_OK

    @staticmethod
    def test_close_rejects_ultrafilters(capsys, fixtures_dir):
        code, out = run(
            capsys, "check-family", fixtures_dir / "chain2.json", fixtures_dir / "top_family_chain2.json",
            "--kind", "ultrafilter", "--close",
        )
        assert code == EXIT_ERROR
        assert out.startswith("usage error:")

    @staticmethod
    def test_pair(capsys, tmp_path, fixtures_dir):
        top = json.loads((fixtures_dir / "top_family_chain2.json").read_text(encoding="utf-8"))
        bottom = json.loads((fixtures_dir / "bottom_family_chain2.json").read_text(encoding="utf-8"))
        path = write_json(tmp_path, "pair.json", {"filter": top, "ideal": bottom})
        code, _ = run(capsys, "check-family", fixtures_dir / "chain2.json", path, "--kind", "pair", "--json")
        assert code == EXIT_OK
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", path)
        assert code == EXIT_OK
        assert out.startswith("pair: pass")

    @staticmethod
    def test_pair_sides_keep_their_kinds(capsys, tmp_path, fixtures_dir):
        top = json.loads((fixtures_dir / "top_family_chain2.json").read_text(encoding="utf-8"))
        bottom = json.loads((fixtures_dir / "bottom_family_chain2.json").read_text(encoding="utf-8"))
        path = write_json(tmp_path, "pair.json", {"filter": bottom, "ideal": top})
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", path, "--kind", "pair")
        assert code == EXIT_ERROR
        assert out.startswith("error:")

    @staticmethod
    @pytest.mark.parametrize("flags", [[], ["--kind", "filter"]])
    def test_kind_is_read_from_the_file(capsys, tmp_path, fixtures_dir, flags):
        path = write_json(tmp_path, "family.json", {"kind": "filter", "generators": {"t": [["p"]]}})
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", path, "--close", *flags)
        assert code == EXIT_OK
        assert out.startswith("filter: pass")

    @staticmethod
    def test_kind_must_match_the_file(capsys, tmp_path, fixtures_dir):
        code, out = run(
            capsys, "check-family", fixtures_dir / "chain2.json", fixtures_dir / "bottom_family_chain2.json",
            "--kind", "filter",
        )
        assert code == EXIT_ERROR
        assert out.startswith("usage error:")
        unstated = write_json(tmp_path, "family.json", {"generators": {"t": [[]], "b": [[]]}})
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", unstated)
        assert code == EXIT_ERROR
        assert out.startswith("usage error:")
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", unstated, "--kind", "ideal")
        assert code == EXIT_OK
        assert out.startswith("ideal: pass")

    @staticmethod
    def test_family_file_needs_generators(capsys, tmp_path, fixtures_dir):
        path = write_json(tmp_path, "family.json", {"kind": "filter", "members": {"t": [["p"]]}})
        code, out = run(capsys, "check-family", fixtures_dir / "chain2.json", path, "--kind", "filter")
        assert code == EXIT_ERROR
        assert out.startswith("error:")

    @staticmethod
    def test_extend(capsys, fixtures_dir):
        code, out = run(
            capsys, "extend-ultrafilter", fixtures_dir / "chain2.json",
            fixtures_dir / "top_family_chain2.json", fixtures_dir / "bottom_family_chain2.json",
        )
        assert code == EXIT_OK
        assert set(json.loads(out)) == {"t", "b"}

    @staticmethod
    def test_extend_closes_the_generators(capsys, fixtures_dir):
        code, out = run(
            capsys, "extend-ultrafilter", fixtures_dir / "chain2.json",
            fixtures_dir / "atom_p_chain2.json", fixtures_dir / "bottom_family_chain2.json",
        )
        assert code == EXIT_OK
        ultrafilter = json.loads(out)
        assert "{p}" in ultrafilter["t"]
        assert "{q}" not in ultrafilter["t"]

    @staticmethod
    def test_extend_rejects_swapped_files(capsys, fixtures_dir):
        code, out = run(
            capsys, "extend-ultrafilter", fixtures_dir / "chain2.json",
            fixtures_dir / "bottom_family_chain2.json", fixtures_dir / "top_family_chain2.json",
        )
        assert code == EXIT_ERROR
        assert out.startswith("usage error:")

    @staticmethod
    def test_enum_ultrafilters(capsys, fixtures_dir):
        code, out = run(capsys, "enum-ultrafilters", fixtures_dir / "chain2.json")
        assert code == EXIT_OK
        assert len(json.loads(out)) == 5


class TestModelCommands:
    @staticmethod
    def test_enum_models(capsys, fixtures_dir):
        code, out = run(capsys, "enum-models", fixtures_dir / "fix_ab.thy", "--model-bound", "1")
        assert code == EXIT_OK
        assert len(json.loads(out)) == 1

    @staticmethod
    def test_quotient_model(capsys, tmp_path):
        theory = tmp_path / "eq.thy"
        theory.write_text(THEORY_Q, encoding="utf-8")
        model = write_json(tmp_path, "model.json", MODEL_Q)
        code, out = run(capsys, "quotient-model", theory, model, "--eq", "E")
        assert code == EXIT_OK
        assert json.loads(out) == {"carrier": 1, "predicates": {"E": [[1, 1]], "R": [[1]]}}

    @staticmethod
    def test_quotient_needs_a_binary_predicate(capsys, tmp_path):
        theory = tmp_path / "eq.thy"
        theory.write_text(THEORY_Q, encoding="utf-8")
        model = write_json(tmp_path, "model.json", MODEL_Q)
        code, out = run(capsys, "quotient-model", theory, model, "--eq", "R")
        assert code == EXIT_ERROR
        assert out.startswith("error:")


class TestSchema:
    @staticmethod
    def test_result_schema(capsys):
        code, out = run(capsys, "schema")
        assert code == EXIT_OK
        schema = json.loads(out)
        assert {"status", "witness", "countermodel", "clauses", "bounds", "elapsed"} <= set(schema["properties"])
        assert set(schema["properties"]["status"]["enum"]) == {"proved", "refuted", "unknown"}

    @staticmethod
    def test_family_schema(capsys):
        code, out = run(capsys, "schema", "family")
        assert code == EXIT_OK
        schema = json.loads(out)
        assert schema["required"] == ["generators"]
        assert "kind" in schema["properties"]

    @staticmethod
    @pytest.mark.parametrize("command, source, flags, status", [
        ("entail", "not_r_bot.seq", [], "proved"),
        ("entail", "unprovable.seq", [], "refuted"),
        ("entail", "unprovable.seq", ["--depth", "0", "--model-bound", "0"], "unknown"),
        ("free1-leq", "not_r_bot.q", ["--trace"], "proved"),
    ])
    def test_outputs_follow_the_result_schema(capsys, fixtures_dir, command, source, flags, status):
        _, out = run(capsys, command, fixtures_dir / "fix_ab.thy", fixtures_dir / source, *flags, "--json")
        result = QueryResult.model_validate(json.loads(out))
        assert result.status == status
        assert result.clauses


class TestErrors:
    @staticmethod
    def test_infinite_base_is_an_input_error(capsys, monkeypatch, fixtures_dir):
        class InfiniteBaseFile:
            @staticmethod
            def model_validate(data):
                return InfiniteBaseFile()

            @staticmethod
            def to_doctrine():
                return parse_theory("pred R/1\n")

        monkeypatch.setattr(commands, "FiniteDoctrineFile", InfiniteBaseFile)
        code, out = run(capsys, "enum-ultrafilters", fixtures_dir / "chain2.json")
        assert code == EXIT_ERROR
        assert out.startswith("error:")
        assert "infinitely many objects" in out

    @staticmethod
    def test_missing_file(capsys, tmp_path, fixtures_dir):
        code, out = run(capsys, "entail", tmp_path / "absent.thy", fixtures_dir / "not_r_bot.seq")
        assert code == EXIT_ERROR
        assert out.startswith("error:")

    @staticmethod
    def test_parse_error(capsys, tmp_path, fixtures_dir):
        theory = tmp_path / "bad.thy"
        theory.write_text("pred R/1\naxiom R(x0 |\n", encoding="utf-8")
        code, out = run(capsys, "entail", theory, fixtures_dir / "not_r_bot.seq")
        assert code == EXIT_ERROR
        assert out.startswith("error:")

    @staticmethod
    def test_unknown_command(capsys):
        code, _ = run(capsys, "prove-everything")
        assert code == EXIT_ERROR

    @staticmethod
    def test_help(capsys):
        code, out = run(capsys, "--help")
        assert code == EXIT_OK
        assert "entail" in out

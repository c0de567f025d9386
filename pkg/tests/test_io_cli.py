import json
import re
from fractions import Fraction

import pytest

from sdrkit.cli import main
from sdrkit.errors import InstanceValidationError, SchemaError
from sdrkit.generators import (GenSpec, gen_cycle_power_blocks, gen_hv_tight, gen_quadratic_lower,
                               gen_random_instance, generate)
from sdrkit.io import (instance_to_dot, load_instance, parse_instance, render_svg, save_instance,
                       serialize_instance)
from sdrkit.model import is_sdr

MINIMAL = {"n": 1, "context": "graph", "members": ["v0"], "blocks": [{"label": "A", "member_ids": ["v0"]}]}


def _hv_doc(**overrides):
    doc = {
        "version": 1, "n": 2,
        "context": {"kind": "directions", "directions": [[1, 0], [0, 1]]},
        "members": [
            {"id": "a", "kind": "segment", "p": ["0", "0"], "q": ["3/6", "0"]},
            {"id": "b", "kind": "segment", "p": ["2", "0"], "q": ["3", "0"]},
        ],
        "blocks": [{"label": "First", "member_ids": ["a", "b"]}],
    }
    doc.update(overrides)
    return json.dumps(doc)


class TestParse:
    def test_minimal(self):
        inst = parse_instance(json.dumps(MINIMAL))
        assert len(inst.blocks) == 1 and inst.n == 1

    def test_rational_canonical(self):
        inst = parse_instance(_hv_doc())
        assert inst.members["a"].payload.end == (Fraction(1, 2), 0)

    def test_short_block_cites_label(self):
        doc = _hv_doc(n=3)
        with pytest.raises(InstanceValidationError, match="First"):
            parse_instance(doc)

    def test_schema_error_is_addressed(self):
        doc = json.loads(_hv_doc())
        doc["blocks"][0]["member_ids"] = "a"
        with pytest.raises(SchemaError, match="blocks/0/member_ids"):
            parse_instance(json.dumps(doc))

    def test_float_rejected(self):
        doc = json.loads(_hv_doc())
        doc["members"][0]["q"] = [0.5, 0]
        with pytest.raises(SchemaError):
            parse_instance(json.dumps(doc))

    @pytest.mark.parametrize("spec", [
        GenSpec("hv_tight", {"n": 3}), GenSpec("quadratic_lower", {"n": 6, "m": 3}),
        GenSpec("cycle_power", {"n": 3, "q": 2}), GenSpec("few_lines_tight", {"n": 4, "m": 2}),
        GenSpec("random_curves", {"n": 2, "k": 2}, 3), GenSpec("random_segments", {"n": 3}, 4),
    ])
    def test_round_trip(self, spec):
        inst = generate(spec)
        text = serialize_instance(inst)
        back = parse_instance(text)
        assert back == inst
        assert serialize_instance(back) == text

    def test_file_round_trip(self, tmp_path):
        inst = gen_quadratic_lower(5, 2)
        save_instance(inst, tmp_path / "q.json")
        assert load_instance(tmp_path / "q.json") == inst


class TestRender:
    def test_one_element_per_member(self):
        for inst in (gen_hv_tight(3), gen_cycle_power_blocks(3, 2),
                     gen_random_instance(GenSpec("random_curves", {"n": 2}, 1))):
            svg = render_svg(inst)
            ids = re.findall(r'class="member"[^>]*data-id="([^"]+)"', svg)
            assert sorted(ids) == sorted(inst.members)
            assert svg == render_svg(inst)

    def test_dot(self):
        dot = instance_to_dot(gen_cycle_power_blocks(3, 2))
        assert dot.count(" -- ") == 6


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCli:
    def test_gen_and_oracle(self, tmp_path, capsys):
        f = tmp_path / "hv.json"
        assert _run(capsys, "gen", "hv_tight", "n=3", "--out", f)[0] == 0
        code, out, _ = _run(capsys, "solve", f, "--algorithm", "oracle")
        assert code == 2 and json.loads(out)["size"] == 2

    def test_two_sweep_success(self, tmp_path, capsys):
        f = tmp_path / "ts.json"
        _run(capsys, "gen", "random_two_sweep", "n=3", "--seed", 5, "--out", f)
        code, out, _ = _run(capsys, "solve", f, "-a", "two-sweep", "--verify", "--trace")
        res = json.loads(out)
        assert code == 0 and res["size"] == 3 and res["verified"] and res["trace"]
        inst = load_instance(f)
        assert is_sdr(inst, {int(b): m for b, m in res["assignment"].items()})

    def test_unknown_algorithm(self, tmp_path, capsys):
        f = tmp_path / "hv.json"
        _run(capsys, "gen", "hv_tight", "n=2", "--out", f)
        code, _, err = _run(capsys, "solve", f, "-a", "magic")
        assert code == 1 and json.loads(err)["error"] == "unknown-algorithm"

    def test_precondition_is_structured(self, tmp_path, capsys):
        f = tmp_path / "hv.json"
        _run(capsys, "gen", "hv_tight", "n=3", "--out", f)
        code, _, err = _run(capsys, "solve", f, "-a", "two-sweep")
        assert code == 1 and json.loads(err)["error"] == "PreconditionError"

    def test_invalid_file(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text(_hv_doc(n=3))
        code, _, err = _run(capsys, "solve", f, "-a", "oracle")
        report = json.loads(err)
        assert code == 1 and report["error"] == "invalid-instance"
        assert report["diagnostics"][0]["code"] == "block-size"

    def test_usage_error_exit(self, capsys):
        assert _run(capsys, "bound", "M", 1)[0] == 1
        assert _run(capsys, "frobnicate")[0] == 1

    def test_bound(self, capsys):
        code, out, _ = _run(capsys, "bound", "M", 2, 2, 1)
        assert code == 0 and json.loads(out)["bound"] == 12
        assert json.loads(_run(capsys, "bound", "N", 1, 2)[1])["exact_exponent"] == "1/16"
        assert json.loads(_run(capsys, "bound", "few-lines", 5, 2)[1])["bound"] == 7

    def test_render_and_graph(self, tmp_path, capsys):
        f = tmp_path / "c.json"
        _run(capsys, "gen", "cycle_power", "n=3", "q=2", "--out", f)
        assert _run(capsys, "render", f, "--svg", tmp_path / "c.svg")[0] == 0
        assert (tmp_path / "c.svg").read_text().startswith("<svg")
        assert _run(capsys, "graph", f, "--dot", tmp_path / "c.dot")[0] == 0
        assert "--" in (tmp_path / "c.dot").read_text()

    def test_rainbow_exit_codes(self, tmp_path, capsys):
        f = tmp_path / "c.json"
        _run(capsys, "gen", "cycle_power", "n=3", "q=2", "--out", f)
        # decision at size n: no rainbow set exists, so nothing is returned
        code, out, _ = _run(capsys, "solve", f, "-a", "rainbow")
        assert code == 2 and json.loads(out)["size"] == 0
        _run(capsys, "gen", "random_segments", "n=2", "--seed", 1, "--out", f)
        code, out, _ = _run(capsys, "solve", f, "-a", "oracle")
        want = 0 if code == 0 else 2
        assert _run(capsys, "solve", f, "-a", "rainbow")[0] == want

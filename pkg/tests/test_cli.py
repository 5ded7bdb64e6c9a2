import io
import json

import pytest

from grpd.cli import run
from grpd.corpus import (
    corrupted_bg_z2,
    eg_gamma_action,
    gamma_group_fixtures,
    group_catalog,
    involutive_fixtures,
    nonfiltered_control_diagram,
    skyscraper_presheaf_action,
)
from grpd.cohomology import GroupGammaAction, bg_gamma_action
from grpd.core import build_bg
from grpd.groups import cyclic_group
from grpd.jsonio import dumps, load_groupoid
from grpd.presheaf import sierpinski_site


def invoke(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(dumps(obj))
    return str(p)


def test_validate_good_and_bad(tmp_path):
    good = write(tmp_path, "good.json", build_bg(cyclic_group(3)))
    code, out = invoke(["validate", good])
    assert code == 0 and out == "ok\n"

    bad = write(tmp_path, "bad.json", corrupted_bg_z2())
    code, out = invoke(["validate", bad])
    assert code == 1
    assert "invalid" in out


def test_bad_input_is_a_usage_error(tmp_path):
    p = tmp_path / "garbage.json"
    p.write_text("{ not json")
    code, _ = invoke(["validate", str(p)])
    assert code == 2
    code, _ = invoke(["validate", str(tmp_path / "missing.json")])
    assert code == 2
    wrong = write(tmp_path, "wrong.json", build_bg(cyclic_group(2)))
    code, _ = invoke(["h1", wrong])
    assert code == 2


def test_hfp_text_and_json(tmp_path):
    f = write(tmp_path, "es3.json", eg_gamma_action(group_catalog()["S3"]))
    code, out = invoke(["hfp", f])
    assert code == 0
    assert "objects: 6" in out and "fibration: yes" in out

    code, out = invoke(["hfp", f, "--json"])
    assert code == 0
    g = load_groupoid(json.loads(out))
    assert g.n_objects == 6 and g.n_morphisms == 36


def test_h1_command(tmp_path):
    f = write(tmp_path, "s3.json", gamma_group_fixtures()[8])
    code, out = invoke(["h1", f])
    assert code == 0
    assert "cocycles: 4" in out and "classes: 2" in out

    code, out = invoke(["h1", f, "--json"])
    doc = json.loads(out)
    assert len(doc["cocycles"]) == 4
    assert sorted(c["stabilizer"] for c in doc["classes"]) == [2, 6]


def test_twisted_command(tmp_path):
    f = write(tmp_path, "tw.json", involutive_fixtures()[5])
    code, out = invoke(["twisted", f])
    assert code == 0
    assert "cardinality: 2" in out
    assert "fibration: yes" in out and "weak equivalence: yes" in out


def test_colimit_command_on_control(tmp_path):
    f = write(tmp_path, "control.json", nonfiltered_control_diagram())
    code, out = invoke(["colimit", f])
    assert code == 1 and out.startswith("not filtered")

    code, out = invoke(["colimit", f, "--allow-unfiltered"])
    assert code == 1
    assert "not an isomorphism" in out


def test_stalk_command(tmp_path):
    a = skyscraper_presheaf_action(sierpinski_site(), 0, bg_gamma_action(
        GroupGammaAction(group=cyclic_group(2), bar=(0, 1))))
    f = write(tmp_path, "sky.json", a)
    code, out = invoke(["stalk", f])
    assert code == 0
    assert out.count("fixed points commute: yes") == 2

    code, out = invoke(["stalk", f, "--point", "a"])
    assert code == 0 and len(out.splitlines()) == 1

    code, _ = invoke(["stalk", f, "--point", "nowhere"])
    assert code == 2


def test_check_single_suite_and_determinism():
    code, out1 = invoke(["check", "--size", "small", "--seed", "5",
                         "--suite", "bg-decomposition"])
    assert code == 0
    assert out1.splitlines()[1] == "[PASS] bg-decomposition"
    _, out2 = invoke(["check", "--size", "small", "--seed", "5",
                      "--suite", "bg-decomposition"])
    assert out1 == out2


def test_check_out_file(tmp_path):
    target = tmp_path / "report.txt"
    code, out = invoke(["check", "--size", "small", "--seed", "2",
                        "--suite", "iota-fibration", "--out", str(target)])
    assert code == 0
    assert out == ""
    assert "[PASS] iota-fibration" in target.read_text()


def test_export_dot(tmp_path):
    f = write(tmp_path, "bz2.json", build_bg(cyclic_group(2)))
    code, out = invoke(["export-dot", f])
    assert code == 0
    assert out.startswith("digraph") and "->" in out


def test_usage_error_exits_2(capsys):
    assert run(["no-such-command"], stdout=io.StringIO()) == 2
    capsys.readouterr()

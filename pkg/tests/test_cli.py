import copy
import io
import json
from pathlib import Path

import pytest

from chukit import cli
from chukit.chu import is_chu_transform
from chukit.infosys import InfoSystem, check_info_system
from chukit.representations import is_topology
from chukit.setoid import SetoidFn

GOLDEN = Path(__file__).parent / "data" / "golden.json"


@pytest.fixture
def golden():
    return json.loads(GOLDEN.read_text())


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def failing(doc):
    reg = cli.load_document(doc)
    entries = [cli.run_check(c, 0, 0) for c in cli.document_checks(reg)]
    return {e["id"]: e for e in entries if e["status"] != "pass"}


# loading


def test_empty_document_gives_an_empty_registry(tmp_path):
    reg = cli.load(write(tmp_path, {}))
    assert all(not getattr(reg, s) for s in cli.SECTIONS)


def test_golden_document_loads_and_passes():
    reg = cli.load(str(GOLDEN))
    assert set(reg.setoids) >= {"two", "three", "pair"}
    code, text = run(["check", "--what", "topology", "--input", str(GOLDEN)])
    assert code == 0 and "sierpinski" in text
    assert failing(json.loads(GOLDEN.read_text())) == {}


def test_sierpinski_image_in_the_document_loads():
    reg = cli.load(str(GOLDEN))
    X, opens = reg.topologies["sierpinski"]
    assert X.size == 2 and sorted(opens) == [0, 2, 3]


def test_parse_error_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    code, _ = run(["check", "--what", "transform", "--input", str(p)])
    assert code == 2 and "chukit:" in capsys.readouterr().err


def test_inconsistent_eq_names_the_pair(golden, tmp_path, capsys):
    golden["setoids"]["pair"]["eq"] = [[0, 1], [1, 2]]
    code, _ = run(["check", "--what", "transform", "--input", write(tmp_path, golden)])
    err = capsys.readouterr().err
    assert code == 2 and "setoids.pair.eq" in err and "(0, 1)" in err


def test_intransitive_eq_is_a_load_error(golden):
    golden["setoids"]["three"]["eq"] = [[0, 1], [1, 0], [1, 2], [2, 1]]
    with pytest.raises(cli.LoadError) as e:
        cli.load_document(golden)
    assert e.value.where == "setoids.three.eq" and e.value.witness is not None


def test_non_extensional_map_gives_coordinates(golden):
    # pair identifies 0 and 1, so they must go to the same place
    golden["maps"]["collapse"]["table"] = [0, 1, 0]
    with pytest.raises(cli.LoadError) as e:
        cli.load_document(golden)
    assert e.value.where == "maps.collapse" and e.value.witness == (0, 1)


def test_unknown_reference_is_positioned(golden):
    golden["transforms"]["a_to_b"]["dst"] = "nope"
    with pytest.raises(cli.LoadError) as e:
        cli.load_document(golden)
    assert e.value.where == "transforms.a_to_b" and "nope" in str(e.value)


def test_row_shape_mismatch(golden):
    golden["chu_spaces"]["A"]["rows"] = [[0, 1]]
    with pytest.raises(cli.LoadError) as e:
        cli.load_document(golden)
    assert e.value.where == "chu_spaces.A.rows"


# single-table faults flip the relevant check, with a witness that replays


def test_apartness_fault(golden):
    golden["apartness"]["split"]["pairs"].remove([2, 0])
    bad = failing(golden)
    assert list(bad) == ["document/apartness/split"]
    x, y = bad["document/apartness/split"]["witness"]
    pairs = {tuple(p) for p in golden["apartness"]["split"]["pairs"]}
    assert (x, y) in pairs and (y, x) not in pairs


def test_topology_fault(golden):
    golden["topologies"]["sierpinski"]["opens"] = [[], [1], [0]]
    bad = failing(golden)
    e = bad["document/topology/sierpinski"]
    reg = cli.load_document(golden)
    X, opens = reg.topologies["sierpinski"]
    assert list(bad) == ["document/topology/sierpinski"]
    assert is_topology(X, opens).witness == tuple(e["witness"])


def test_chu_rows_fault(golden):
    golden["chu_spaces"]["A"]["rows"] = [[0, 1], [1, 1]]
    bad = failing(golden)
    assert set(bad) == {"document/transform/a_to_b", "document/transform/a_swap"}
    reg = cli.load_document(golden)
    t = reg.transforms["a_to_b"]
    a, b = bad["document/transform/a_to_b"]["witness"]
    assert t.src.value(a, t.bwd.table[b]) != t.dst.value(t.fwd.table[a], b)


def test_transform_fault(golden):
    golden["transforms"]["a_to_b"]["fwd"] = [1, 1]
    bad = failing(golden)
    assert list(bad) == ["document/transform/a_to_b"]
    reg = cli.load_document(golden)
    s, d = reg.chu_spaces["A"], reg.chu_spaces["B"]
    fwd = SetoidFn(s.left, d.left, [1, 1])
    bwd = SetoidFn(d.right, s.right, golden["transforms"]["a_to_b"]["bwd"])
    v = is_chu_transform(fwd, bwd, s, d)
    assert not v and list(v.witness) == bad["document/transform/a_to_b"]["witness"]


def test_info_system_fault(golden):
    golden["info_systems"]["chain"]["con"] = []
    bad = failing(golden)
    assert list(bad) == ["document/infosystem/chain"]
    (premise, token) = bad["document/infosystem/chain"]["witness"]
    sys = cli.load_document(golden).info_systems["chain"]
    assert isinstance(sys, InfoSystem) and not check_info_system(sys)
    mask = sum(1 << p for p in premise)
    assert (mask, token) in sys.entails and mask | 1 << token not in sys.con


def test_predicate_fault(golden):
    golden["predicates"]["a_class"]["members"] = [0]
    bad = failing(golden)
    assert list(bad) == ["document/predicate/a_class"]
    x, y = bad["document/predicate/a_class"]["witness"]
    pair = cli.load_document(golden).setoids["pair"]
    assert pair.eq(x, y) and (x in [0]) != (y in [0])


def test_complemented_fault(golden):
    golden["complemented"]["edge"]["zero"] = [0]
    bad = failing(golden)
    assert list(bad) == ["document/complemented/edge"]
    x, y = bad["document/complemented/edge"]["witness"]
    ax = cli.load_document(golden).apartness["split"]
    assert x in golden["complemented"]["edge"]["one"] and y in [0] and not ax.apart(x, y)


def test_faults_flip_the_exit_code(golden, tmp_path):
    golden["transforms"]["a_to_b"]["fwd"] = [1, 1]
    code, text = run(["verify", "--suite", "chu-laws", "--max-size", "1",
                      "--input", write(tmp_path, golden)])
    assert code == 1 and "document/transform/a_to_b" in text


# reports


def test_reports_are_byte_identical(tmp_path):
    argv = ["verify", "--suite", "chu-laws", "--max-size", "2", "--report", "json",
            "--input", str(GOLDEN)]
    first, second = run(argv), run(argv)
    assert first == second and first[0] == 0
    report = json.loads(first[1])
    assert set(report) == {"suite", "cap", "seed", "checks", "elapsed_ms"}
    assert report["elapsed_ms"] is None
    ids = [c["id"] for c in report["checks"]]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert all(c["citation"] for c in report["checks"])


def test_timing_is_opt_in():
    code, text = run(["verify", "--suite", "chu-laws", "--max-size", "1", "--report", "json",
                      "--timing"])
    assert code == 0 and json.loads(text)["elapsed_ms"] is not None


def test_worker_pool_gives_the_same_report():
    base = ["verify", "--suite", "top-repr", "--max-size", "2", "--report", "json"]
    assert run(base) == run(base + ["--jobs", "3"])


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "--suite", "nope"], io.StringIO())
    assert e.value.code == 2
    with pytest.raises(ValueError):
        cli.run_suite("nope", 2, 0)


def test_run_suite_chu_laws_passes():
    report = cli.run_suite("chu-laws", 2, 0)
    assert report["suite"] == "chu-laws" and report["cap"] == 2 and report["seed"] == 0
    assert report["checks"] and all(c["status"] == "pass" for c in report["checks"])


def test_run_suite_top_repr_strict_at_three():
    report = cli.run_suite("top-repr", 3, 0)
    status = {c["id"]: c["status"] for c in report["checks"]}
    assert status["top-repr/strict"] == "pass"
    assert all(s == "pass" for s in status.values())


def test_text_report_lists_every_check():
    code, text = run(["verify", "--suite", "local-functor", "--max-size", "2"])
    assert code == 0
    assert text.count("PASS") == len(cli.SUITES["local-functor"])


# enumerate


def test_enumerate_ideals_of_the_minimal_system():
    code, text = run(["enumerate", "--kind", "ideals", "--input", str(GOLDEN),
                      "--name", "minimal", "--report", "json"])
    assert code == 0 and json.loads(text)["count"] == 2


def test_enumerate_transforms_from_an_empty_left_carrier():
    code, text = run(["enumerate", "--kind", "transforms", "--input", str(GOLDEN),
                      "--src", "empty_left", "--dst", "A", "--report", "json"])
    # every backward map two -> three is a transform
    assert code == 0 and json.loads(text)["count"] == 3 ** 2


def test_enumerate_transforms_between_declared_spaces():
    reg = cli.load(str(GOLDEN))
    s, t = reg.chu_spaces["A"], reg.chu_spaces["B"]
    brute = [(f, b) for f in range(4) for b in range(8)
             if all(s.value(a, b >> d & 1) == t.value(f >> a & 1, d) for a in s.left for d in t.right)]
    items = cli.enumerate_items(reg, "transforms", "A", "B", None)
    assert len(items) == len(brute)
    assert json.dumps(items) == json.dumps(cli.enumerate_items(reg, "transforms", "A", "B", None))


def test_enumerate_unknown_name_is_a_load_error(capsys):
    code, _ = run(["enumerate", "--kind", "ideals", "--input", str(GOLDEN), "--name", "nope"])
    assert code == 2 and "nope" in capsys.readouterr().err


def test_check_single_declaration():
    code, text = run(["check", "--what", "infosystem", "--input", str(GOLDEN),
                      "--name", "chain", "--report", "json"])
    assert code == 0
    assert [c["id"] for c in json.loads(text)["checks"]] == ["document/infosystem/chain"]


def test_document_is_not_mutated_by_loading(golden):
    before = copy.deepcopy(golden)
    cli.load_document(golden)
    assert golden == before

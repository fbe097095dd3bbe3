"""One test per acceptance criterion. Each prints a PASS/FAIL line with its
wall time against the budget, then asserts."""

import copy
import json
import subprocess
import sys
from pathlib import Path
from time import perf_counter

import pytest

from chukit import cli

GOLDEN = Path(__file__).parent / "data" / "golden.json"


@pytest.fixture
def criterion(capsys):
    def run(n, title, budget, body):
        start = perf_counter()
        notes = []
        try:
            failures = body(notes)
        except Exception as e:  # a crash is a failure of the criterion
            failures = [f"raised {e!r}"]
        elapsed = perf_counter() - start
        if elapsed > budget:
            failures.append(f"over budget: {elapsed:.1f}s > {budget}s")
        line = f"{'FAIL' if failures else 'PASS'} criterion {n:2d} ({elapsed:6.1f}s / {budget}s) {title}"
        with capsys.disabled():
            print("\n" + line)
            for f in failures:
                print(f"    fail: {f}")
            for note in notes:
                print(f"    note: {note}")
        assert not failures
    return run


def checks(cap, *fns):
    """Run check functions at the given cap; failures as strings."""
    def body(notes):
        out = []
        for fn in fns:
            v, info = fn(cap, 0)
            if not v:
                out.append(f"{fn.__name__}: {v.reason} {cli.jsonable(v.witness)}")
            elif info:
                notes.append(f"{fn.__name__}: {cli.jsonable(info)}")
        return out
    return body


def both(*bodies):
    def body(notes):
        return [f for b in bodies for f in b(notes)]
    return body


def test_criterion_01_chu_laws(criterion):
    criterion(1, "Chu category laws over 2, carriers <= 2", 10,
              checks(2, cli.chu_category_laws, cli.chu_sampled_composition))


def test_criterion_02_local_functor(criterion):
    criterion(2, "local pushforward: injections give full embeddings, a collapse otherwise", 30,
              both(checks(3, cli.local_injections), checks(2, cli.local_noninjective)))


def test_criterion_03_ccc_representation(criterion):
    criterion(3, "evaluation spaces strict for gamma 1, 2; curry bijection", 30,
              checks(2, cli.ccc_strict, cli.curry_bijection))


def test_criterion_04_global_functor(criterion):
    def at_least_three(notes):
        n = len(cli.groth.full_embedding_instances(2))
        return [] if n >= 3 else [f"only {n} full-embedding instances"]
    criterion(4, "global pushforward composition and full-embedding criterion", 60,
              both(checks(2, cli.global_composition, cli.global_product_preserving,
                          cli.global_full_embedding, cli.global_local_agreement),
                   at_least_three))


def test_criterion_05_topologies(criterion):
    criterion(5, "membership spaces of topologies on <= 3 points", 60,
              checks(3, cli.top_strict, cli.top_t0, cli.top_triangle))


def test_criterion_06_information_systems(criterion):
    criterion(6, "information systems on <= 2 tokens and spot systems on 3", 120,
              checks(2, cli.inf_realization, cli.inf_reconstruction, cli.inf_s_full,
                     cli.inf_chu_strict))


def test_criterion_07_subsets_and_complemented_subsets(criterion):
    # the inhabited variant is reported alongside; it does not stand in for
    # the full criterion
    def inhabited(notes):
        v, _ = cli.compl_strict_inhabited(3, 0)
        notes.append(f"inhabited components only: {'pass' if v else 'fail'}")
        return []
    criterion(7, "subsets and complemented subsets, |X| <= 3", 60,
              both(checks(3, cli.subsets_strict, cli.sub_strict, cli.compl_embedding,
                          cli.compl_nonsurjective, cli.compl_strict),
                   inhabited))


def test_criterion_08_generalized_chu(criterion):
    criterion(8, "pentagon closure, constant embedding, diagonal, composites", 120,
              checks(2, cli._closure(cli.gen.IDENTITY), cli._closure(cli.gen.SQUARE),
                     cli._closure(cli.gen.constant_functor(cli.TWO)),
                     cli.genchu_constant_embedding, cli.genchu_diagonal, cli.genchu_composite))


def test_criterion_09_predicates(criterion):
    def inhabited(notes):
        v, _ = cli.predneq_strict_inhabited(2, 0)
        notes.append(f"inhabited components only: {'pass' if v else 'fail'}")
        return []
    criterion(9, "predicates and complemented predicates, carriers <= 2", 60,
              both(checks(2, cli.pred_strict, cli.predneq_embedding, cli.predneq_strict),
                   inhabited))


def test_criterion_10_grothendieck(criterion):
    criterion(10, "antiparallel identification, fibred total category, value embedding", 120,
              checks(2, cli.groth_hom_pairing, cli.groth_antipar, cli.groth_iso,
                     cli.fibred_total, cli.groth_sigma))


FAULTS = {
    "document/apartness/split": lambda d: d["apartness"]["split"]["pairs"].remove([2, 0]),
    "document/topology/sierpinski":
        lambda d: d["topologies"]["sierpinski"].__setitem__("opens", [[], [1], [0]]),
    "document/transform/a_to_b": lambda d: d["transforms"]["a_to_b"].__setitem__("fwd", [1, 1]),
    "document/infosystem/chain": lambda d: d["info_systems"]["chain"].__setitem__("con", []),
    "document/predicate/a_class":
        lambda d: d["predicates"]["a_class"].__setitem__("members", [0]),
    "document/complemented/edge":
        lambda d: d["complemented"]["edge"].__setitem__("zero", [0]),
}


def test_criterion_11_end_to_end(criterion, tmp_path):
    argv = [sys.executable, "-m", "chukit", "verify", "--suite", "all", "--max-size", "2",
            "--report", "json", "--input", str(GOLDEN)]

    def body(notes):
        out = []
        start = perf_counter()
        first = subprocess.run(argv, capture_output=True, text=True)
        elapsed = perf_counter() - start
        notes.append(f"single run {elapsed:.1f}s")
        if elapsed > 300:
            out.append(f"single run over budget: {elapsed:.1f}s > 300s")
        second = subprocess.run(argv, capture_output=True, text=True)
        if first.stdout != second.stdout:
            out.append("reports differ between runs")
        report = json.loads(first.stdout)
        bad = [c["id"] for c in report["checks"] if c["status"] != "pass"]
        if first.returncode != 0:
            out.append(f"exit {first.returncode}, failing: {bad}")
        notes.append(f"{len(report['checks'])} checks, {len(bad)} failing")
        golden = json.loads(GOLDEN.read_text())
        for check_id, fault in FAULTS.items():
            doc = copy.deepcopy(golden)
            fault(doc)
            entries = {c.id: cli.run_check(c, 0, 0)
                       for c in cli.document_checks(cli.load_document(doc))}
            e = entries[check_id]
            if e["status"] != "fail" or e.get("witness") is None:
                out.append(f"fault in {check_id} not caught with a witness")
        return out

    # the 300 s budget applies to one run; the criterion runs the suite twice
    criterion(11, "verify --suite all --max-size 2 exits 0, deterministically; faults flip", 600,
              body)

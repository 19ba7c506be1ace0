import pytest

from equichow import Poly
from equichow.pipeline import (
    Fixtures,
    double_triple_value,
    eliminated_node_ideal,
    node_image_generators,
    run_all,
    step_double_triple_class,
    step_final_presentation,
    step_localization,
    step_node_image_ideal,
    step_node_locus_class,
    step_patching,
    step_residual_class,
    step_transfer,
    step_triple_root_class,
)


@pytest.fixture(scope="module")
def fx():
    return Fixtures.default()


def test_step_patching_small_bound(fx):
    report = step_patching(fx, 2)
    assert report.verdict == "match"


def test_step_patching_negative_control():
    tp = Fixtures.default().total.table
    e, l1, d1 = (Poly.var(tp, n) for n in ("e", "l1", "d1"))
    weakened = Fixtures.default(candidate_relations=[e * (l1 * d1 + e)])
    report = step_patching(weakened, 2)
    assert report.verdict == "mismatch"
    assert "fail@2" in report.computed


def test_step_transfer(fx):
    report = step_transfer(fx)
    assert report.verdict == "match"
    assert report.computed == report.expected


def test_step_localization_verdicts(fx):
    main, pair = step_localization(fx, oracle_trials=5, seed=0)
    assert main.verdict == "match"
    assert pair.verdict == "informational"
    assert "2:1" in " ".join(pair.details)


def test_step_node_locus_class(fx):
    report = step_node_locus_class(fx)
    assert report.verdict == "match"


def test_node_image_generators(fx):
    g0, g1 = node_image_generators(fx)
    tp = fx.total.table
    d1, l1, e = (Poly.var(tp, n) for n in ("d1", "l1", "e"))
    assert g0 == fx.total.normal_form(e + d1 * (l1 + d1))
    assert g1 == fx.total.normal_form(d1 * e)


def test_eliminated_ideal_generators(fx):
    polys = eliminated_node_ideal(fx)
    renders = {p.render() for p in polys}
    assert "-2*l1*d1 - 2*d1^2" in renders
    assert "l1*d1^3 + d1^4" in renders
    assert "-l1*d1^2 - d1^3" in renders


def test_step_node_image_ideal(fx):
    assert step_node_image_ideal(fx).verdict == "match"


def test_step_triple_root_class(fx):
    report = step_triple_root_class(fx)
    assert report.verdict == "match"
    assert report.computed == "24*l1^2 - 48*l2"


def test_triple_root_class_symmetric_before_restriction(fx):
    from equichow import (
        MapDescriptor,
        SpaceDescriptor,
        SpaceFactor,
        VarTable,
        pushforward,
    )

    t = VarTable([("t1", 1), ("t2", 1), ("h1", 1), ("h2", 1), ("h", 1)])
    t1, t2 = Poly.var(t, "t1"), Poly.var(t, "t2")
    src = SpaceDescriptor(
        [SpaceFactor(1, t1, t2, "h1"), SpaceFactor(3, t1, t2, "h2")]
    )
    value = pushforward(MapDescriptor.multiplication(src, [3, 1], "h"), Poly.const(t, 1))
    assert value.substitute({"t1": t2, "t2": t1}) == value
    # independent integer specialization of the restricted value
    restricted = value.substitute({"h": 2 * (t1 + t2)})
    lhs = restricted.evaluate({"t1": 2, "t2": 5, "h1": 0, "h2": 0, "h": 0})
    e1, e2 = 2 + 5, 2 * 5
    assert lhs == 24 * e1**2 - 48 * e2


def test_step_residual_class(fx):
    report = step_residual_class(fx)
    assert report.verdict == "match"
    assert "restriction=20*l1*l2" in report.computed


def test_step_double_triple_class(fx):
    report = step_double_triple_class(fx)
    assert report.verdict == "match"
    value = double_triple_value(fx)
    l1, l2, d1 = (Poly.var(fx.ambient, n) for n in ("l1", "l2", "d1"))
    assert value == 36 * l2 * (d1**2 - 2 * l1 * d1 + 16 * l2 - 3 * l1**2)


def test_step_final_presentation(fx):
    assert step_final_presentation(fx).verdict == "match"


def test_final_ring_low_degree_pieces(fx):
    from equichow import RingPresentation, graded_piece_invariants

    final_ring = RingPresentation(fx.ambient, fx.final_ideal)
    deg0 = graded_piece_invariants(final_ring, 0)
    assert (deg0.free_rank, deg0.torsion) == (1, ())
    deg1 = graded_piece_invariants(final_ring, 1)
    assert (deg1.free_rank, deg1.torsion) == (2, ())


def test_run_all_small_bound():
    report = run_all(degree_bound=2, oracle_trials=2, seed=0)
    assert report.overall == "match"
    names = [s.name for s in report.steps]
    assert names == [
        "patching",
        "transfer",
        "localization",
        "localization/pair-cubing",
        "node-locus-class",
        "node-image-ideal",
        "triple-root-class",
        "residual-class",
        "double-triple-class",
        "final-presentation",
    ]


def test_run_all_zero_bound_degenerate():
    report = run_all(degree_bound=0, oracle_trials=2, seed=0)
    assert report.overall == "match"
    patching = report.steps[0]
    assert patching.verdict == "match"
    assert "[0..0]" in patching.computed


def test_run_all_with_corrupted_final_ideal():
    base = Fixtures.default()
    l1, d1 = Poly.var(base.ambient, "l1"), Poly.var(base.ambient, "d1")
    corrupted = Fixtures.default(final_ideal=[2 * d1**2 + 2 * l1 * d1])
    report = run_all(degree_bound=1, oracle_trials=2, seed=0, fixtures=corrupted)
    assert report.overall == "mismatch"
    final = [s for s in report.steps if s.name == "final-presentation"][0]
    assert final.verdict == "mismatch"


def test_machine_report_shape():
    report = run_all(degree_bound=1, oracle_trials=2, seed=0)
    for line in report.render_machine().splitlines():
        fields = line.split("\t")
        assert len(fields) == 4
        assert fields[1] in ("match", "mismatch", "informational")


def test_machine_report_deterministic():
    a = run_all(degree_bound=2, oracle_trials=3, seed=1).render_machine()
    b = run_all(degree_bound=2, oracle_trials=3, seed=1).render_machine()
    assert a == b

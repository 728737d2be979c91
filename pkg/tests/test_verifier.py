import pytest

from src.components import verifier
from src.components.counter import count
from src.utils.errors import InvalidParametersError


@pytest.mark.parametrize("suite,n_max", [
    ("s1-families", 16),
    ("circle-exhaustive", 8),
    ("trees", 8),
    ("equator", 16),
    ("bipartite-radial", 12),
])
def test_suites_pass(suite, n_max):
    report = verifier.verify(suite, n_max)
    assert report.rows
    assert report.passed, [r for r in report.failures]


def test_audits_pass_with_few_trials():
    rows = verifier.audits(8, trials=40, seed=9)
    assert len(rows) == 5
    assert all(row.passed for row in rows), [row.detail for row in rows if not row.passed]


def test_audits_pass_at_default_trial_count():
    rows = {row.construction: row for row in verifier.audits(8, trials=200, seed=1729)}
    assert rows["circle-mod2-cap"].passed, rows["circle-mod2-cap"].detail
    assert rows["unique-midpoint-cap"].passed, rows["unique-midpoint-cap"].detail
    assert all(row.passed for row in rows.values())


@pytest.mark.parametrize("n", range(3, 17))
def test_circle_witness_attains_maximum(n):
    from src.components import formulas

    assert count(verifier.circle_witness(n)).total == formulas.mu_circle(n).value


def test_circle_witnesses_embed_in_eight_points():
    for n in range(4, 9):
        assert verifier._embeds(verifier.circle_witness(n), 8), n


def test_evenly_spread_subsets():
    assert verifier.evenly_spread_subsets(8, 4) == [[0, 2, 4, 6], [1, 3, 5, 7]]
    assert verifier.evenly_spread_subsets(12, 4) == [[0, 3, 6, 9], [1, 4, 7, 10], [2, 5, 8, 11]]


def test_unknown_suite():
    with pytest.raises(InvalidParametersError):
        verifier.verify("nonsense", 8)


def test_report_output_shape():
    report = verifier.verify("bipartite-radial", 4)
    output = report.to_output()
    assert output["suite"] == "bipartite-radial"
    assert output["passed"] is True

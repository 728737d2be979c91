from fractions import Fraction

import pytest

from src.components import constructions, formulas
from src.components.counter import count
from src.models.prediction import PredictionKind
from src.utils.errors import InvalidParametersError


@pytest.mark.parametrize("fn,n,expected", [
    (formulas.mu_line, 5, 13),
    (formulas.mu_line, 0, 0),
    (formulas.mu_line, 3, 5),
    (formulas.mu_circle, 8, 40),
    (formulas.mu_circle, 7, 27),
    (formulas.mu_circle, 2, 2),
    (formulas.mu_equator, 6, 30),
    (formulas.mu_equator, 8, 44),
    (formulas.mu_equator, 5, 17),
    (formulas.unique_midpoint_cap, 5, 17),
    (formulas.unique_midpoint_cap, 1, 1),
    (formulas.unique_midpoint_cap, 4, 10),
    (formulas.circle_cap_general, 8, 40),
    (formulas.circle_cap_general, 2, 4),
    (formulas.circle_cap_mod2, 6, 20),
    (formulas.general_cap, 6, 42),
    (formulas.general_cap, 4, 12),
    (formulas.general_cap, 2, 2),
    (formulas.mu_radial, 5, 17),
    (formulas.mu_bipartite, 6, 42),
])
def test_closed_form_examples(fn, n, expected):
    assert fn(n).value == expected


def test_prediction_kinds():
    assert formulas.mu_circle(8).kind == PredictionKind.EXACT_MAXIMUM
    assert formulas.general_cap(8).kind == PredictionKind.UPPER_BOUND
    assert formulas.tree_ball_exact(3, 2).kind == PredictionKind.LOWER_BOUND_WITNESS
    assert formulas.mu_circle(12).source == "circle-families-mod4-0"


def test_rejects_out_of_domain_arguments():
    with pytest.raises(InvalidParametersError):
        formulas.mu_circle(-1)
    with pytest.raises(InvalidParametersError):
        formulas.circle_cap_mod2(8)
    with pytest.raises(InvalidParametersError):
        formulas.mu_equator(1)
    with pytest.raises(InvalidParametersError):
        formulas.tree_ball_size(1, 2)


@pytest.mark.parametrize("r,d0,expected", [(3, 1, 10), (3, 2, 58), (4, 1, 17)])
def test_tree_ball_exact_examples(r, d0, expected):
    assert formulas.tree_ball_exact(r, d0).value == expected


def test_tree_weight_and_limsup():
    assert formulas.tree_weight(3, 0) == 1
    assert formulas.tree_weight(3, 1) == 7
    assert formulas.tree_weight(4, 1) == 13
    assert formulas.tree_limsup_coefficient(3) == Fraction(5, 9)
    assert formulas.tree_limsup_coefficient(2) == Fraction(1, 2)
    assert formulas.tree_limsup_coefficient(4) == Fraction(5, 8)


@pytest.mark.parametrize("r", range(3, 9))
def test_tree_ball_exact_is_integral_with_odd_parity(r):
    for d0 in range(0, 7):
        value = formulas.tree_ball_exact(r, d0).value
        assert isinstance(value, int)
        assert (value - formulas.tree_ball_size(r, d0)) % 2 == 0, (r, d0)


def test_tree_ball_size_matches_construction():
    for r in (2, 3, 4):
        for d0 in range(4):
            assert formulas.tree_ball_size(r, d0) == len(constructions.tree_ball(r, d0))


def test_path_tree_reduces_to_line():
    for d0 in range(6):
        assert formulas.tree_ball_exact(2, d0).value == formulas.mu_line(2 * d0 + 1).value


def test_circle_cap_is_attained_exactly_for_residues_zero_and_one():
    for n in range(3, 201):
        mu = formulas.mu_circle(n).value
        cap = formulas.circle_cap_general(n).value
        assert mu <= cap
        assert (mu == cap) == (n % 4 in (0, 1)), n


def test_mod2_cap_is_sharper_and_attained():
    for n in range(6, 200, 4):
        assert formulas.mu_circle(n).value == formulas.circle_cap_mod2(n).value
        assert formulas.circle_cap_mod2(n).value < formulas.circle_cap_general(n).value


def test_equator_beats_circle():
    for n in range(5, 65):
        assert formulas.mu_equator(n).value >= formulas.mu_circle(n).value + 1, n


def test_line_never_beats_circle():
    for n in range(4, 65):
        assert formulas.mu_line(n).value <= formulas.mu_circle(n).value


def test_general_cap_matches_polynomial_form():
    for n in range(1, 201):
        assert formulas.general_cap(n).value == formulas.general_cap_polynomial(n).value, n


def test_bipartite_polynomial_form():
    for n in range(1, 60):
        quarter_cube = Fraction(n ** 3, 4) - Fraction(n ** 2, 2)
        tail = Fraction(n) if n % 2 == 0 else Fraction(3 * n, 4) + Fraction(1, 2)
        assert formulas.mu_bipartite(n).value == quarter_cube + tail, n
        assert formulas.mu_bipartite(n).value <= formulas.general_cap(n).value


def test_lattice_sizes():
    assert formulas.lattice_ball_size(2, 2) == 13
    assert formulas.lattice_ball_size(1, 3) == 7
    assert [formulas.lattice_sphere_size(2, d) for d in range(4)] == [1, 4, 8, 12]
    for dim in (1, 2, 3):
        for d0 in range(5):
            spheres = sum(formulas.lattice_sphere_size(dim, d) for d in range(d0 + 1))
            assert spheres == formulas.lattice_ball_size(dim, d0) == len(constructions.lattice_ball(dim, d0))


def test_growth_exponent_on_power_laws():
    sizes = [2, 3, 5, 8, 13]
    assert formulas.growth_exponent(sizes, [s ** 3 for s in sizes]) == pytest.approx(3.0, abs=1e-6)
    assert formulas.growth_exponent(sizes, [s ** 2 for s in sizes]) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(InvalidParametersError):
        formulas.growth_exponent([3, 2], [1, 1])


def test_lattice_ball_growth_exceeds_quadratic():
    balls = [constructions.lattice_ball(2, d0) for d0 in range(4, 13)]
    sizes = [len(b) for b in balls]
    counts = [count(b).total for b in balls]
    assert formulas.growth_exponent(sizes, counts) >= 2.2


def test_predictions_dispatch():
    assert formulas.predict("circle", 8).value == 40
    assert [p.value for p in formulas.predictions("circle", 6)] == [20, 24, 20]
    sphere = formulas.predictions("sphere", 6)
    assert sphere[0].kind == PredictionKind.LOWER_BOUND_WITNESS
    assert sphere[1].value == 36
    with pytest.raises(InvalidParametersError):
        formulas.predictions("torus", 4)

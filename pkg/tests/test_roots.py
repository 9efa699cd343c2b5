from fractions import Fraction

from orientcorr.roots import find_sign_changes


def test_simple_root():
    roots = find_sign_changes(lambda x: x - Fraction(1, 3), (0, 1), 16, Fraction(1, 10**9))
    assert len(roots) == 1
    assert abs(roots[0].value - Fraction(1, 3)) <= Fraction(1, 10**9)


def test_exact_grid_hit():
    roots = find_sign_changes(lambda x: x - 1, (0, 1), 8, Fraction(1, 10**6), open_lo=True)
    assert len(roots) == 1 and roots[0].exact and roots[0].value == 1


def test_three_roots_in_order():
    def f(x):
        return (x - Fraction(1, 10)) * (x - Fraction(1, 2)) * (x - Fraction(9, 10))
    roots = find_sign_changes(f, (0, 1), 64, Fraction(1, 10**8))
    assert [round(float(r.value), 6) for r in roots] == [0.1, 0.5, 0.9]


def test_no_sign_change():
    assert find_sign_changes(lambda x: x * x + 1, (0, 1), 32, Fraction(1, 100)) == []

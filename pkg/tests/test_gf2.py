import itertools

import pytest

from circnot import gf2
from circnot.errors import Inconsistent, Underdetermined


def bits(*cols):
    mask = 0
    for c in cols:
        mask |= 1 << c
    return mask


def test_rank_simple():
    # x0+x1, x1+x2, x0+x2 : third row is the sum of the first two
    rows = [bits(0, 1), bits(1, 2), bits(0, 2)]
    assert gf2.rank(rows, 3) == 2


def test_rank_brute_force_agreement():
    # rank r <=> 2^(n-r) solutions of the homogeneous system
    rows = [bits(0, 1, 2), bits(2, 3), bits(0, 3)]
    n = 4
    solutions = 0
    for v in range(1 << n):
        if all(bin(v & r).count("1") % 2 == 0 for r in rows):
            solutions += 1
    assert solutions == 1 << (n - gf2.rank(rows, n))


def test_solve_tagged_unique():
    # x0 = in0, x1 = x0 (join), x2 = x0 + x1 + in1
    n = 3
    rows = [
        bits(0) | (0b10 << n),  # x0 pinned to rhs bit 1
        bits(0, 1),
        bits(0, 1, 2) | (0b100 << n),
    ]
    sol = gf2.solve_tagged(rows, n, 3)
    assert sol[0] == 0b10
    assert sol[1] == 0b10
    assert sol[2] == 0b100


def test_solve_tagged_underdetermined():
    with pytest.raises(Underdetermined):
        gf2.solve_tagged([bits(0, 1)], 2, 1)


def test_solve_tagged_inconsistent():
    n = 1
    rows = [bits(0) | (1 << n), bits(0)]
    with pytest.raises(Inconsistent):
        gf2.solve_tagged(rows, n, 1)


def test_solution_space_enumeration():
    # x0 + x1 = 1 over 3 variables: 4 solutions
    n = 3
    rows = [bits(0, 1) | (1 << n)]
    sols = sorted(gf2.enumerate_solutions(rows, n))
    assert len(sols) == 4
    for s in sols:
        assert (s & 1) ^ (s >> 1 & 1) == 1


def test_solution_space_inconsistent():
    n = 2
    rows = [bits(0), bits(0) | (1 << n)]
    assert list(gf2.enumerate_solutions(rows, n)) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_invert_round_trip(n):
    # try all invertible matrices for n<=3, a fixed one for n=4
    def mats():
        if n <= 3:
            for rows in itertools.product(range(1 << n), repeat=n):
                if gf2.rank(list(rows), n) == n:
                    yield list(rows)
        else:
            yield [bits(0), bits(0, 1), bits(1, 2), bits(0, 3)]

    for rows in mats():
        inv = gf2.invert(rows, n)
        # verify M @ inv = I over GF(2), column-style
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc ^= (rows[i] >> k & 1) & (inv[k] >> j & 1)
                assert acc == (1 if i == j else 0)


def test_invert_singular():
    with pytest.raises(Inconsistent):
        gf2.invert([bits(0), bits(0)], 2)

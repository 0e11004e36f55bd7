import random

import pytest

from fsglab import gf2


def random_invertible(rng, ncols):
    """Random full-rank square system built from a known solution."""
    while True:
        rows = [rng.getrandbits(ncols) for _ in range(ncols)]
        if gf2.rank_of(rows, ncols) == ncols:
            return rows


def test_identity_solve(gf2_engine):
    eng = gf2.get_engine(gf2_engine)
    elim = eng.Eliminator(8)
    target = 0b10110010
    for j in range(8):
        assert elim.add_row(1 << j, (target >> j) & 1) == gf2.ADDED
    assert elim.rank == 8
    assert elim.solve() == target


def test_dependent_and_inconsistent(gf2_engine):
    eng = gf2.get_engine(gf2_engine)
    elim = eng.Eliminator(4)
    elim.add_row(0b0011, 1)
    assert elim.add_row(0b0011, 1) == gf2.DEPENDENT
    assert elim.add_row(0b0011, 0) == gf2.INCONSISTENT
    assert elim.rank == 1


def test_solve_system_classification(gf2_engine):
    eng = gf2.get_engine(gf2_engine)
    status, rank = eng.solve_system([0b01, 0b01], [0, 0], 2)
    assert status == "underdetermined" and rank == 1
    status, _ = eng.solve_system([0b01, 0b01], [0, 1], 2)
    assert status == "inconsistent"


@pytest.mark.parametrize("ncols", [5, 31, 64, 100, 130])
def test_random_solves_verified_by_substitution(gf2_engine, ncols):
    eng = gf2.get_engine(gf2_engine)
    rng = random.Random(ncols)
    for _ in range(25):
        rows = random_invertible(rng, ncols)
        solution = rng.getrandbits(ncols)
        rhs = [(row & solution).bit_count() & 1 for row in rows]
        status, got = eng.solve_system(rows, rhs, ncols)
        assert status == "unique"
        assert got == solution


def test_copy_isolation(gf2_engine):
    eng = gf2.get_engine(gf2_engine)
    elim = eng.Eliminator(6)
    elim.add_row(0b000111, 1)
    dup = elim.copy()
    dup.add_row(0b111000, 0)
    assert elim.rank == 1 and dup.rank == 2
    assert elim.add_row(0b111000, 1) == gf2.ADDED


def test_engines_agree_on_random_streams():
    if not gf2.HAVE_COMPILED:
        pytest.skip("compiled engine not built")
    pure = gf2.get_engine("pure")
    comp = gf2.get_engine("compiled")
    rng = random.Random(7)
    for _ in range(40):
        ncols = rng.randint(1, 120)
        a, b = pure.Eliminator(ncols), comp.Eliminator(ncols)
        for _ in range(ncols + 8):
            row = rng.getrandbits(ncols)
            rhs = rng.getrandbits(1)
            assert a.add_row(row, rhs) == b.add_row(row, rhs)
        assert a.rank == b.rank
        assert a.solve() == b.solve()

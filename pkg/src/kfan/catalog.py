"""Bundled example fans used across tests and the command line demos."""

from __future__ import annotations

from .fan import Fan


def p1() -> Fan:
    return Fan(rank=1, rays=((1,), (-1,)), max_cones=((0,), (1,)), name="P1")


def p2() -> Fan:
    return Fan(rank=2,
               rays=((1, 0), (0, 1), (-1, -1)),
               max_cones=((0, 1), (1, 2), (0, 2)),
               name="P2")


def p1xp1() -> Fan:
    return Fan(rank=2,
               rays=((1, 0), (0, 1), (-1, 0), (0, -1)),
               max_cones=((0, 1), (1, 2), (2, 3), (0, 3)),
               name="P1xP1")


def hirzebruch(a: int) -> Fan:
    """The rank-two complete smooth fan with rays e1, e2, -e1 + a*e2, -e2."""
    if a < 0:
        raise ValueError("twist must be nonnegative")
    return Fan(rank=2,
               rays=((1, 0), (0, 1), (-1, a), (0, -1)),
               max_cones=((0, 1), (1, 2), (2, 3), (0, 3)),
               name=f"F{a}")


def f1() -> Fan:
    return hirzebruch(1)


def p112() -> Fan:
    """Complete simplicial, singular at one cone (weighted projective plane)."""
    return Fan(rank=2,
               rays=((1, 0), (0, 1), (-1, -2)),
               max_cones=((0, 1), (0, 2), (1, 2)),
               name="P112")


def quadrant() -> Fan:
    """A valid but incomplete fan: one smooth full cone."""
    return Fan(rank=2, rays=((1, 0), (0, 1)), max_cones=((0, 1),), name="quadrant")


def acceptance_fans() -> list:
    """The five fans exercised by the desk-scale acceptance suite."""
    return [p1(), p2(), p1xp1(), f1(), p112()]

"""Builders for the standard test algebras used throughout the suite."""

from .quiver import Arrow, BoundQuiver


def point() -> BoundQuiver:
    return BoundQuiver("k", ("1",), (), ())


def e2() -> BoundQuiver:
    """Two vertices, loop-arrow-loop, radical square zero."""
    return BoundQuiver(
        "e2",
        ("1", "2"),
        (Arrow("a", "1", "1"), Arrow("b", "1", "2"), Arrow("c", "2", "2")),
        (("a", "a"), ("a", "b"), ("b", "c"), ("c", "c")),
    )


def windwheel(n: int = 2) -> BoundQuiver:
    """Rank-n wind-wheel: loop, equioriented A_n bar, loop; relations
    a^2, c^2, and the full bar path framed by the loops."""
    if n < 2:
        raise ValueError("wind-wheel rank must be >= 2")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = [Arrow("a", "1", "1")]
    bar = []
    for i in range(1, n):
        nm = f"b{i}"
        arrows.append(Arrow(nm, str(i), str(i + 1)))
        bar.append(nm)
    arrows.append(Arrow("c", str(n), str(n)))
    relations = (("a", "a"), ("c", "c"), tuple(["a"] + bar + ["c"]))
    return BoundQuiver(f"ww{n}", vertices, tuple(arrows), relations)


def ww2() -> BoundQuiver:
    return windwheel(2)


def c3() -> BoundQuiver:
    """Oriented 3-cycle with radical square zero (self-injective Nakayama)."""
    return BoundQuiver(
        "c3",
        ("1", "2", "3"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")),
        (("a", "b"), ("b", "c"), ("c", "a")),
    )


def c2() -> BoundQuiver:
    """Cyclic Nakayama of rank 2 with radical square zero."""
    return BoundQuiver(
        "c2",
        ("1", "2"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "1")),
        (("a", "b"), ("b", "a")),
    )


def kx2() -> BoundQuiver:
    """k[x]/(x^2): one vertex, one loop, quadratic relation."""
    return BoundQuiver("kx2", ("1",), (Arrow("x", "1", "1"),), (("x", "x"),))


def local_algebra(loops: int) -> BoundQuiver:
    """k<x_1..x_m>/(all quadratic monomials); L1 = k[x]/x^2."""
    arrows = tuple(Arrow(f"x{i}", "1", "1") for i in range(1, loops + 1))
    relations = tuple(
        (f"x{i}", f"x{j}") for i in range(1, loops + 1) for j in range(1, loops + 1)
    )
    return BoundQuiver(f"l{loops}", ("1",), arrows, relations)


def l3() -> BoundQuiver:
    return local_algebra(3)


def linear_a(n: int) -> BoundQuiver:
    """Equioriented A_n path algebra, no relations."""
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"b{i}", str(i), str(i + 1)) for i in range(1, n))
    return BoundQuiver(f"a{n}", vertices, arrows, ())


def kronecker() -> BoundQuiver:
    return BoundQuiver(
        "kronecker", ("1", "2"), (Arrow("u", "1", "2"), Arrow("v", "1", "2")), ()
    )


ALL_BUILDERS = {
    "k": point,
    "e2": e2,
    "ww2": ww2,
    "c3": c3,
    "c2": c2,
    "kx2": kx2,
    "l3": l3,
    "a2": lambda: linear_a(2),
    "a3": lambda: linear_a(3),
    "a4": lambda: linear_a(4),
    "kronecker": kronecker,
}

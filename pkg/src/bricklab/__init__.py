"""bricklab: exact computations with bricks and torsion lattices of bound
quiver algebras over small prime fields."""

from .quiver import BoundQuiver, Arrow, parse_algebra, serialize

__all__ = ["BoundQuiver", "Arrow", "parse_algebra", "serialize"]
__version__ = "0.1.0"

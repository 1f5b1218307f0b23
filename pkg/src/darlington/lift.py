"""Lift of a rational matrix Herglotz function to one more variable.

Splitting numerator and denominator into coefficient-Hermitian and
coefficient-real halves turns f = P/q in d variables into a pencil

    g(z, z_new) = (z_new*p1 + p2) / (z_new*q1 + q2)

in d+1 variables with g(z, i) = f(z).  For f with nonnegative imaginary
part on the upper poly-half-plane, g is additionally real on real points,
so the lift lands in the boundary (Cayley inner) class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import MatrixPoly
from .rational import RationalMatrixFunction

__all__ = [
    "Decomposition",
    "DarlingtonLift",
    "ZeroDenominatorPencil",
    "decompose",
    "lift",
    "restrict_at_i",
]


class ZeroDenominatorPencil(ArithmeticError):
    """Both denominator halves vanished; the input denominator was zero."""


@dataclass(frozen=True)
class Decomposition:
    """Halves of a normalized fraction P/q.

    p1, p2 carry Hermitian matrix coefficients and q1, q2 real scalar
    coefficients, with P = i*p1 + p2 and q = i*q1 + q2 (the identities hold
    at coefficient tolerance; Hermitian-ness and realness are exact because
    the halving arithmetic is sign-symmetric).
    """

    p1: MatrixPoly
    p2: MatrixPoly
    q1: MatrixPoly
    q2: MatrixPoly

    def is_structured(self):
        return (
            self.p1.has_hermitian_coeffs()
            and self.p2.has_hermitian_coeffs()
            and self.q1.has_real_coeffs()
            and self.q2.has_real_coeffs()
        )


def decompose(f):
    """Split a normalized fraction into Hermitian/real coefficient halves."""
    g = f if f.normalized else f.normalize()
    num, den = g.num, g.den
    p1 = (num - num.bar_reflect()).scaled(-0.5j)
    p2 = (num + num.bar_reflect()).scaled(0.5)
    q1 = (den - den.bar_reflect()).scaled(-0.5j)
    q2 = (den + den.bar_reflect()).scaled(0.5)
    return Decomposition(p1, p2, q1, q2)


@dataclass(frozen=True)
class DarlingtonLift:
    """Result of the one-variable lift: the pencil halves and the lifted function."""

    input: RationalMatrixFunction
    pieces: Decomposition
    lifted: RationalMatrixFunction

    @property
    def d(self):
        return self.input.d

    @property
    def m(self):
        return self.input.m

    def compress(self, eta):
        """Scalar lift eta^* route: compress the matrix halves by eta."""
        pc = Decomposition(
            self.pieces.p1.quadratic_form(eta),
            self.pieces.p2.quadratic_form(eta),
            self.pieces.q1,
            self.pieces.q2,
        )
        return DarlingtonLift(self.input.compress(eta), pc, self.lifted.compress(eta))


def lift(f):
    """Lift f (upper-half-plane frame) to d+1 variables with value f at z_new = i."""
    g = f if f.normalized else f.normalize()
    pieces = decompose(g)
    d = g.d
    z_new = MatrixPoly.variable(d + 1, d)
    num = z_new * pieces.p1.append_variable() + pieces.p2.append_variable()
    den = z_new * pieces.q1.append_variable() + pieces.q2.append_variable()
    if den.is_zero():
        raise ZeroDenominatorPencil("pencil denominator is identically zero")
    lifted = RationalMatrixFunction(num, den).normalize()
    return DarlingtonLift(g, pieces, lifted)


def restrict_at_i(g):
    """Set the last variable to i, recovering a function of the first d-1 variables."""
    if g.d < 1:
        raise ValueError("need at least one variable to restrict")
    num = g.num.substitute_last(1j)
    den = g.den.substitute_last(1j)
    return RationalMatrixFunction(num, den)

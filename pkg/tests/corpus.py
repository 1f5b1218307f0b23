"""Shared fixtures: a catalogue of upper-half-plane functions with known
class membership, and pairs of real polynomials with known stability of
their combined/pencil/member readings.

Everything here is deterministic; seeded items draw from their own
generator so order of use cannot change them.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from darlington.poly import MatrixPoly
from darlington.rational import RationalMatrixFunction


def sp(d, coeffs):
    """Scalar polynomial from {exponent tuple: complex}."""
    return MatrixPoly.from_scalar_terms(d, coeffs)


def one(d):
    return MatrixPoly.constant(d, 1.0)


def rmf(num, den):
    return RationalMatrixFunction(num, den)


def _psd(rng, m):
    r = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return r @ r.conj().T + 0.1 * np.eye(m)


def _herm(rng, m):
    r = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return (r + r.conj().T) / 2.0


@dataclass(frozen=True)
class FunctionCase:
    name: str
    f: RationalMatrixFunction
    cayley_inner: bool  # also real on real points (where defined)


def herglotz_cases():
    """Rational functions with nonnegative imaginary part on the upper
    poly-half-plane; cayley_inner marks the ones real on real points."""
    cases = []

    cases.append(FunctionCase("const-i", rmf(sp(1, {(0,): 1j}), one(1)), False))
    cases.append(FunctionCase("z1", rmf(sp(1, {(1,): 1.0}), one(1)), True))
    cases.append(FunctionCase("z1-plus-i", rmf(sp(1, {(1,): 1.0, (0,): 1j}), one(1)), False))
    cases.append(FunctionCase(
        "neg-inv-shifted", rmf(sp(1, {(0,): -1.0}), sp(1, {(1,): 1.0, (0,): 1j})), False))
    cases.append(FunctionCase(
        "neg-inv-sum2", rmf(sp(2, {(0, 0): -1.0}), sp(2, {(1, 0): 1.0, (0, 1): 1.0})), True))

    # diag(z1, -1/(z2+i)): matrix over the common denominator z2+i
    den6 = sp(2, {(0, 1): 1.0, (0, 0): 1j})
    num6 = MatrixPoly(2, 2, {
        (1, 1): np.diag([1.0, 0.0]),
        (1, 0): np.diag([1j, 0.0]),
        (0, 0): np.diag([0.0, -1.0]),
    })
    cases.append(FunctionCase("diag-mixed", rmf(num6, den6), False))

    rng = np.random.default_rng(42)
    a, b = rng.uniform(-2, 2), rng.uniform(0.1, 3)
    # a + b z - 1/(z+i) over denominator z+i
    num7 = sp(1, {(2,): b, (1,): a + b * 1j, (0,): a * 1j - 1.0})
    cases.append(FunctionCase("affine-minus-inv", rmf(num7, sp(1, {(1,): 1.0, (0,): 1j})), False))

    rng = np.random.default_rng(43)
    cases.append(FunctionCase(
        "affine-matrix-1var",
        rmf(MatrixPoly(1, 2, {(0,): _herm(rng, 2), (1,): _psd(rng, 2)}), one(1)),
        True))

    rng = np.random.default_rng(44)
    cases.append(FunctionCase(
        "affine-matrix-2var",
        rmf(MatrixPoly(2, 2, {(0, 0): _herm(rng, 2), (1, 0): _psd(rng, 2), (0, 1): _psd(rng, 2)}),
            one(2)),
        True))

    rng = np.random.default_rng(45)
    A, B1, B2, C = _herm(rng, 2), _psd(rng, 2), _psd(rng, 2), _psd(rng, 2)
    # (A + B1 z1 + B2 z2) - C/(z1+z2+i) over denominator z1+z2+i
    den10 = sp(2, {(1, 0): 1.0, (0, 1): 1.0, (0, 0): 1j})
    num10 = (MatrixPoly(2, 2, {(0, 0): A, (1, 0): B1, (0, 1): B2}) * den10
             - MatrixPoly.constant(2, C))
    cases.append(FunctionCase("mixed-matrix-2var", rmf(num10, den10), False))

    cases.append(FunctionCase(
        "neg-inv-sum3",
        rmf(sp(3, {(0, 0, 0): -1.0}),
            sp(3, {(1, 0, 0): 1.0, (0, 1, 0): 1.0, (0, 0, 1): 1.0})),
        True))

    rng = np.random.default_rng(46)
    cases.append(FunctionCase(
        "affine-matrix-3var",
        rmf(MatrixPoly(3, 2, {
            (0, 0, 0): _herm(rng, 2),
            (1, 0, 0): _psd(rng, 2),
            (0, 1, 0): _psd(rng, 2),
            (0, 0, 1): _psd(rng, 2),
        }), one(3)),
        True))

    cases.append(FunctionCase(
        "sum2", rmf(sp(2, {(1, 0): 1.0, (0, 1): 1.0}), one(2)), True))

    rng = np.random.default_rng(47)
    c0 = float(rng.uniform(-1, 1))
    den14 = sp(3, {(1, 0, 0): 1.0, (0, 1, 0): 1.0, (0, 0, 1): 1.0, (0, 0, 0): 1j})
    num14 = sp(3, {(0, 0, 0): -1.0}) + sp(3, {(0, 0, 0): c0}) * den14
    cases.append(FunctionCase("const-minus-inv-3var", rmf(num14, den14), False))

    return cases


@dataclass(frozen=True)
class PairCase:
    name: str
    p: MatrixPoly
    q: MatrixPoly
    stable_pair: bool       # no route finds a counterexample
    coprime: Optional[bool]  # None: not probed (e.g. q = 0)
    ratio_defined: bool      # q is nonzero, so Im(p/q) makes sense


def pair_cases():
    """Real pairs (p, q) whose combined / pencil / member readings agree.

    stable_pair True means p + iq has no upper zeros, the pencil
    p + z_new q is real-stable, and every rotated member is real-stable;
    False means all three readings are falsifiable.  The two planted
    non-coprime pairs (shared factor z1^2+1) are the documented cases
    where the ratio test legitimately disagrees with the pencil.
    """
    cases = []

    def add(name, p, q, stable, coprime=True, ratio=True):
        cases.append(PairCase(name, p, q, stable, coprime, ratio))

    add("linear", sp(1, {(1,): 1.0}), sp(1, {(0,): 1.0}), True)
    add("inverted", sp(1, {(0,): -1.0}), sp(1, {(1,): 1.0}), True)
    add("reactance", sp(1, {(2,): 1.0, (0,): -1.0}), sp(1, {(1,): 1.0}), True)
    add("moebius", sp(1, {(1,): 2.0, (0,): 1.0}), sp(1, {(1,): 1.0, (0,): 1.0}), True)
    add("sum2-linear", sp(2, {(1, 0): 1.0, (0, 1): 1.0}), sp(2, {(0, 0): 1.0}), True)
    add("cot-sum", sp(2, {(1, 1): 1.0, (0, 0): -1.0}),
        sp(2, {(1, 0): 1.0, (0, 1): 1.0}), True)
    add("inverted-sum2", sp(2, {(0, 0): -1.0}),
        sp(2, {(1, 0): 1.0, (0, 1): 1.0}), True)
    add("sum3-linear", sp(3, {(1, 0, 0): 1.0, (0, 1, 0): 1.0, (0, 0, 1): 1.0}),
        sp(3, {(0, 0, 0): 1.0}), True)
    add("inverted-sum3", sp(3, {(0, 0, 0): -1.0}),
        sp(3, {(1, 0, 0): 1.0, (0, 1, 0): 1.0, (0, 0, 1): 1.0}), True)
    add("constant-only", sp(1, {(0,): 1.0}), MatrixPoly.zero(1, 1), True,
        coprime=None, ratio=False)

    add("square", sp(1, {(2,): 1.0}), sp(1, {(0,): 1.0}), False)
    add("crossed", sp(2, {(1, 0): 1.0}), sp(2, {(0, 1): 1.0}), False)
    add("product", sp(2, {(1, 1): 1.0}), sp(2, {(0, 0): 1.0}), False)
    add("shifted-square", sp(1, {(2,): 1.0, (0,): 1.0}), sp(1, {(0,): 1.0}), False)
    add("parabola", sp(2, {(2, 0): 1.0, (0, 1): -1.0}), sp(2, {(0, 0): 1.0}), False)
    add("cube", sp(1, {(3,): 1.0}), sp(1, {(0,): 1.0}), False)
    add("planted-factor-1var", sp(1, {(3,): 1.0, (1,): 1.0}),
        sp(1, {(2,): 1.0, (0,): 1.0}), False, coprime=False)
    add("planted-factor-2var",
        sp(2, {(3, 0): 1.0, (2, 1): 1.0, (1, 0): 1.0, (0, 1): 1.0}),
        sp(2, {(2, 0): 1.0, (0, 0): 1.0}), False, coprime=False)
    add("sum-square", sp(2, {(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0, (0, 0): 1.0}),
        sp(2, {(0, 0): 1.0}), False)
    add("product3", sp(3, {(1, 1, 1): 1.0}), sp(3, {(0, 0, 0): 1.0}), False)

    return cases

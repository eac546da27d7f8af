"""The dual Hopf algebra F_2[xi_1, xi_2, ...]: conjugates, coproduct, rendering.

Monomials reuse the exponent-tuple shape of the Milnor basis: the tuple
(e1,...,el) is xi_1^e1 ... xi_l^el, dual to Sq(e1,...,el).  Polynomials are
mod-2 monomial sets.  The conjugate (antipode image) of xi_n is written
zeta_n; since the dual is commutative, conjugation is a ring map and basis
conversion is letterwise substitution.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from steen.milnor import Monomial, mono_degree, normalize

__all__ = [
    "Poly",
    "dual_coproduct",
    "poly",
    "poly_mul",
    "poly_pow",
    "poly_str",
    "xi_mono",
    "xi_str",
    "zeta_in_xi",
    "zeta_substitute",
]

Poly = frozenset[Monomial]

P_ONE: Poly = frozenset({()})
P_ZERO: Poly = frozenset()


def poly(monomials: Iterable[Monomial]) -> Poly:
    acc: set[Monomial] = set()
    for m in monomials:
        acc ^= {normalize(m)}
    return frozenset(acc)


def xi_mono(n: int, e: int = 1) -> Monomial:
    """The monomial xi_n^e; xi_0 = 1."""
    if n < 0 or e < 0:
        raise ValueError(f"xi_{n}^{e} is not defined")
    if n == 0 or e == 0:
        return ()
    return (0,) * (n - 1) + (e,)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def poly_mul(p: Poly, q: Poly) -> Poly:
    acc: set[Monomial] = set()
    for a in p:
        for b in q:
            acc ^= {_mono_mul(a, b)}
    return frozenset(acc)


def poly_pow(p: Poly, e: int) -> Poly:
    acc = P_ONE
    for _ in range(e):
        acc = poly_mul(acc, p)
    return acc


@lru_cache(maxsize=None)
def zeta_in_xi(n: int) -> Poly:
    """zeta_n as a xi polynomial: zeta_n = sum_{i=1}^{n} zeta_{n-i}^{2^i} xi_i."""
    if n == 0:
        return P_ONE
    acc: set[Monomial] = set()
    for i in range(1, n + 1):
        for m in poly_mul(poly_pow(zeta_in_xi(n - i), 1 << i), frozenset({xi_mono(i)})):
            acc ^= {m}
    return frozenset(acc)


@lru_cache(maxsize=None)
def _zeta_substitute_mono(m: Monomial) -> Poly:
    acc = P_ONE
    for slot, e in enumerate(m, start=1):
        acc = poly_mul(acc, poly_pow(zeta_in_xi(slot), e))
    return acc


def zeta_substitute(p: Poly) -> Poly:
    """Substitute zeta_n for each letter xi_n (a ring map, and an involution).

    Reading the input in the zeta basis, the output is its xi-basis form;
    reading it in the xi basis, the output is the zeta-basis form.
    """
    acc: set[Monomial] = set()
    for m in p:
        for t in _zeta_substitute_mono(m):
            acc ^= {t}
    return frozenset(acc)


@lru_cache(maxsize=None)
def dual_coproduct(m: Monomial) -> frozenset[tuple[Monomial, Monomial]]:
    """psi(xi^m), multiplicatively from psi(xi_n) = sum xi_{n-i}^{2^i} (x) xi_i."""
    acc: frozenset[tuple[Monomial, Monomial]] = frozenset({((), ())})
    for slot, e in enumerate(normalize(m), start=1):
        letter = frozenset(
            (xi_mono(slot - i, 1 << i), xi_mono(i)) for i in range(slot + 1)
        )
        for _ in range(e):
            nxt: set[tuple[Monomial, Monomial]] = set()
            for l1, r1 in acc:
                for l2, r2 in letter:
                    nxt ^= {(_mono_mul(l1, l2), _mono_mul(r1, r2))}
            acc = frozenset(nxt)
    return acc


def xi_str(m: Monomial, letter: str = "xi") -> str:
    """Render a dual monomial, e.g. xi_str((3,1)) = 'xi1^3 xi2'."""
    if not m:
        return "1"
    parts = []
    for slot, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"{letter}{slot}")
        elif e > 1:
            parts.append(f"{letter}{slot}^{e}")
    return " ".join(parts)


def poly_str(p: Poly, letter: str = "xi") -> str:
    if not p:
        return "0"
    return " + ".join(xi_str(m, letter) for m in sorted(p, key=lambda m: (mono_degree(m), m)))

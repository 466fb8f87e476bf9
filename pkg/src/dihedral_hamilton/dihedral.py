"""Exact arithmetic in the dihedral group D_2n = <a, b | a^n = b^2 = 1, bab = a^-1>.

Every element is stored in the normal form ``b^e a^k`` with ``e`` in {0, 1} and
``0 <= k < n``.  Products are read left to right as words: ``x * y`` is the
word ``x`` followed by the word ``y``.  Collecting the letters gives

    (b^e1 a^k1)(b^e2 a^k2) = b^(e1+e2) a^((-1)^e2 k1 + k2)

Cayley graph edges use left multiplication, ``{g, s * g}``.

Text encoding: the rotation ``a^k`` is ``r<k>`` and the reflection ``b a^k``
is ``s<k>``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, NamedTuple


class OrderMismatch(ValueError):
    pass


class ElementParseError(ValueError):
    pass


class GroupElement(NamedTuple):
    """An element of D_2n in canonical form.

    Tuple order sorts all rotations before all reflections, each by exponent,
    which doubles as the canonical vertex order of a Cayley graph.
    """

    reflected: bool
    exponent: int
    n: int

    @property
    def token(self) -> str:
        return f"{'s' if self.reflected else 'r'}{self.exponent}"

    @property
    def is_identity(self) -> bool:
        return not self.reflected and self.exponent == 0

    def __str__(self) -> str:
        return self.token

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, GroupElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):  # type: ignore[override]
        return NotImplemented

    def __pow__(self, k: int) -> GroupElement:
        return power(self, k)

    def __invert__(self) -> GroupElement:
        return inverse(self)


def element(reflected: bool, exponent: int, n: int) -> GroupElement:
    """Build an element, reducing the exponent mod n."""
    if n < 1:
        raise ValueError(f"group parameter must be positive, got {n}")
    return GroupElement(bool(reflected), exponent % n, n)


def rotation(k: int, n: int) -> GroupElement:
    return element(False, k, n)


def reflection(k: int, n: int) -> GroupElement:
    return element(True, k, n)


def identity(n: int) -> GroupElement:
    return GroupElement(False, 0, n)


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.n != y.n:
        raise OrderMismatch(f"cannot multiply elements of D_{2 * x.n} and D_{2 * y.n}")
    k = (y.exponent - x.exponent) if y.reflected else (x.exponent + y.exponent)
    return GroupElement(x.reflected != y.reflected, k % x.n, x.n)


def inverse(x: GroupElement) -> GroupElement:
    if x.reflected:
        return x
    return GroupElement(False, -x.exponent % x.n, x.n)


def power(x: GroupElement, k: int) -> GroupElement:
    if x.reflected:
        return x if k % 2 else identity(x.n)
    return GroupElement(False, x.exponent * k % x.n, x.n)


def all_elements(n: int) -> list[GroupElement]:
    """All 2n elements in canonical order: r0..r(n-1), s0..s(n-1)."""
    return [GroupElement(False, k, n) for k in range(n)] + [
        GroupElement(True, k, n) for k in range(n)
    ]


def closure(n: int, gens: Iterable[GroupElement]) -> set[GroupElement]:
    """The subgroup generated by ``gens``, as the orbit of the identity."""
    gens = list(gens)
    for g in gens:
        if g.n != n:
            raise OrderMismatch(f"{g} does not belong to D_{2 * n}")
    # orbit of the identity under left multiplication, on (reflected, exponent) pairs
    steps = [(t.reflected, t.exponent) for t in set(gens)]
    seen = {(False, 0)}
    frontier = [(False, 0)]
    while frontier and len(seen) < 2 * n:
        e, k = frontier.pop()
        for te, tk in steps:
            h = (te != e, (k - tk if e else tk + k) % n)
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return {GroupElement(e, k, n) for e, k in seen}


def generates(n: int, gens: Iterable[GroupElement]) -> bool:
    return len(closure(n, gens)) == 2 * n


def rotation_log(base: GroupElement, target: GroupElement) -> int:
    """Return ``e`` in [0, n) with ``base ** e == target``.

    ``base`` must be a rotation generating the rotation subgroup.
    """
    if base.n != target.n:
        raise OrderMismatch("base and target lie in different groups")
    if base.reflected or math.gcd(base.exponent, base.n) != 1:
        raise ValueError(f"{base} does not generate the rotation subgroup of D_{2 * base.n}")
    if target.reflected:
        raise ValueError(f"{target} is a reflection, not a rotation")
    n = base.n
    if n == 1:
        return 0
    return target.exponent * pow(base.exponent, -1, n) % n


_TOKEN = re.compile(r"([rs])(0|[1-9][0-9]*)")


def parse_element(token: str, n: int) -> GroupElement:
    m = _TOKEN.fullmatch(token.strip())
    if m is None:
        raise ElementParseError(f"malformed element token {token!r}")
    k = int(m.group(2))
    if k >= n:
        raise ElementParseError(f"exponent in {token!r} out of range for n={n}")
    return GroupElement(m.group(1) == "s", k, n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))

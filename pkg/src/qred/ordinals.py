"""Cantor-normal-form ordinal arithmetic below w^w, plus the max-lex pairing.

An ordinal is a finite sum  w^e1*c1 + ... + w^ek*ck  with strictly decreasing
natural exponents and coefficients >= 1 (the empty sum is 0).  All values
representable here lie below w^w, and that range is closed under everything
this module computes: addition, multiplication, the Hessenberg (max-then-lex)
pairing rank, and its inverse.

The pairing collapses the well-order "compare maxima, break ties
lexicographically" on pairs of ordinals.  Its block structure is carried by
``block_start``: block_start(m) is the rank of the first pair whose maximum is
m, characterized by block_start(0) = 0, block_start(m+1) = block_start(m) +
m*2 + 1, and continuity at limits.  We evaluate it by a closed-form recursion
on the normal form; the defining clauses are re-checked in the test suite
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Tuple

Terms = Tuple[Tuple[int, int], ...]


class OrdinalError(ValueError):
    pass


@dataclass(frozen=True)
class Ordinal:
    """An ordinal below w^w in Cantor normal form."""

    terms: Terms = ()

    def __post_init__(self):
        last = None
        for e, c in self.terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad CNF term ({e},{c})")
            if last is not None and e >= last:
                raise OrdinalError("CNF exponents must strictly decrease")
            last = e

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] != 0

    def to_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1]

    def leading_exponent(self) -> int:
        if self.is_zero():
            raise OrdinalError("0 has no leading term")
        return self.terms[0][0]

    def pred(self) -> "Ordinal":
        """Predecessor of a successor ordinal."""
        if not self.is_successor():
            raise OrdinalError(f"{self} is not a successor")
        e, c = self.terms[-1]
        head = self.terms[:-1]
        return Ordinal(head if c == 1 else head + ((0, c - 1),))

    # -- order --------------------------------------------------------------

    def _cmp(self, other: "Ordinal") -> int:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return 1 if e1 > e2 else -1
            if c1 != c2:
                return 1 if c1 > c2 else -1
        if len(self.terms) != len(other.terms):
            return 1 if len(self.terms) > len(other.terms) else -1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Ordinal":
        if isinstance(other, int):
            other = from_int(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        eb = other.terms[0][0]
        head = [t for t in self.terms if t[0] > eb]
        merged = list(other.terms)
        for e, c in self.terms:
            if e == eb:
                merged[0] = (eb, c + merged[0][1])
                break
        return Ordinal(tuple(head) + tuple(merged))

    def minus(self, other: "Ordinal") -> "Ordinal":
        """The unique z with other + z == self; requires other <= self."""
        a, b = other.terms, self.terms
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        if i == len(a):
            return Ordinal(b[i:])
        if i == len(b):
            raise OrdinalError("subtraction underflow")
        (e1, c1), (e2, c2) = a[i], b[i]
        if e1 > e2 or (e1 == e2 and c1 > c2):
            raise OrdinalError("subtraction underflow")
        if e1 < e2:
            return Ordinal(b[i:])
        rest = b[i + 1:]
        return Ordinal(((e2, c2 - c1),) + rest if c2 > c1 else rest)

    def __mul__(self, other) -> "Ordinal":
        if isinstance(other, int):
            other = from_int(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        e1 = self.terms[0][0]
        c1 = self.terms[0][1]
        out = ZERO
        for f, d in other.terms:
            if f > 0:
                out = out + omega_power(e1 + f, d)
            else:
                out = out + Ordinal(((e1, c1 * d),) + self.terms[1:])
        return out

    # -- rendering ----------------------------------------------------------

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("w" if c == 1 else f"w*{c}")
            else:
                parts.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
        return "+".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Ordinal({self.text()})"

    def to_json(self):
        return [[e, c] for e, c in self.terms]

    @staticmethod
    def from_json(data) -> "Ordinal":
        return Ordinal(tuple((int(e), int(c)) for e, c in data))


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    return Ordinal(((0, n),)) if n else ZERO


def omega_power(e: int, c: int = 1) -> Ordinal:
    if c == 0:
        return ZERO
    return Ordinal(((e, c),)) if e or c else ZERO


def parse(text: str) -> Ordinal:
    """Inverse of ``Ordinal.text``: parses strings like  w^2*3+w+5."""
    text = text.strip()
    if text == "0":
        return ZERO
    terms = []
    for part in text.split("+"):
        part = part.strip()
        if part.startswith("w"):
            rest = part[1:]
            e = 1
            if rest.startswith("^"):
                rest = rest[1:]
                num = ""
                while rest and rest[0].isdigit():
                    num += rest[0]
                    rest = rest[1:]
                e = int(num)
            c = 1
            if rest.startswith("*"):
                c = int(rest[1:])
            elif rest:
                raise OrdinalError(f"cannot parse ordinal term {part!r}")
            terms.append((e, c))
        else:
            terms.append((0, int(part)))
    return Ordinal(tuple(terms))


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1; total order, lexicographic on CNF term lists."""
    return a._cmp(b)


def sup_of(xs: Iterable[Ordinal]) -> Ordinal:
    """Maximum of a nonempty finite set (finite sets: sup = max)."""
    xs = list(xs)
    if not xs:
        raise OrdinalError("sup of empty set")
    best = xs[0]
    for x in xs[1:]:
        if x > best:
            best = x
    return best


# -- the max-lex pairing ----------------------------------------------------

@lru_cache(maxsize=None)
def block_start(mu: Ordinal) -> Ordinal:
    """Rank of the first pair with maximum ``mu`` in the max-lex well-order.

    Closed form derived from the two defining clauses (successor step adds
    mu*2+1, continuity at limits):

    * block_start(n)       = n^2
    * block_start(w^e)     = w^(2e-1)
    * block_start(w^e * c) = w^(2e) * (c-1)          for c >= 2
    * block_start(a + r)   = block_start(a) + (a*2)*r  [+ r if r successor]
      where a is the leading CNF term of the argument and 0 < r < w^e.
    """
    if mu.is_zero():
        return ZERO
    if mu.is_finite():
        n = mu.to_int()
        return from_int(n * n)
    if mu.terms[-1][0] == 0:
        # mu = lam + n with lam an infinite limit and n >= 1 finite
        lam = Ordinal(mu.terms[:-1])
        n = mu.terms[-1][1]
        return block_start(lam) + lam * (2 * n) + from_int(n)
    e, c = mu.terms[0]
    lead = omega_power(2 * e - 1) if c == 1 else omega_power(2 * e, c - 1)
    rest = Ordinal(mu.terms[1:])
    if rest.is_zero():
        return lead
    return lead + omega_power(e, 2 * c) * rest


@lru_cache(maxsize=None)
def hessenberg(a: Ordinal, b: Ordinal) -> Ordinal:
    """Rank of (a, b) in the max-then-lexicographic well-order on pairs.

    Within the block of pairs sharing maximum m, the lexicographic order
    enumerates (0,m), ..., (alpha,m), ..., then (m,0), ..., (m,m); hence the
    two cases below.  Always >= max(a, b), and injective.
    """
    if a < b:
        return block_start(b) + a
    return block_start(a) + a + b


def hessenberg_inv(h: Ordinal) -> Tuple[Ordinal, Ordinal]:
    """The unique (a, b) with hessenberg(a, b) == h."""
    mu = _block_of(h)
    off = h.minus(block_start(mu))
    if off < mu:
        return off, mu
    beta = off.minus(mu)
    if beta > mu:
        raise OrdinalError(f"pairing inversion failed for {h}")
    return mu, beta


def _block_of(h: Ordinal) -> Ordinal:
    """Largest mu with block_start(mu) <= h, by greedy digit construction."""
    if h.is_zero():
        return ZERO
    if h.is_finite():
        return from_int(isqrt(h.to_int()))
    fmax = (h.terms[0][0] + 1) // 2
    mu = ZERO
    for f in range(fmax, -1, -1):
        k = _max_digit(mu, f, h)
        if k:
            mu = mu + omega_power(f, k)
    return mu


def _max_digit(prefix: Ordinal, f: int, h: Ordinal) -> int:
    def ok(k: int) -> bool:
        return block_start(prefix + omega_power(f, k)) <= h

    if not ok(1):
        return 0
    hi = 1
    while ok(hi * 2):
        hi *= 2
    lo = hi
    hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def pair_succ(a: Ordinal, b: Ordinal) -> Ordinal:
    """hessenberg(a, b) + 1: never zero, always a successor, >= both args.

    Restricted to naturals this is a bijection onto the positive naturals.
    """
    return hessenberg(a, b) + ONE


def triple_code(a: Ordinal, b: Ordinal, c: Ordinal) -> Ordinal:
    """Triple pairing hessenberg(a, hessenberg(b, c)); triple_code(0,0,0)=0."""
    return hessenberg(a, hessenberg(b, c))


def triple_decode(h: Ordinal) -> Tuple[Ordinal, Ordinal, Ordinal]:
    a, q = hessenberg_inv(h)
    b, c = hessenberg_inv(q)
    return a, b, c


def limit_approx(mu: Ordinal, m: int) -> Ordinal:
    """m-th element of the standard fundamental sequence of a limit ordinal."""
    if not mu.is_limit():
        raise OrdinalError(f"{mu} is not a limit")
    e, c = mu.terms[-1]
    head = mu.terms[:-1] + (((e, c - 1),) if c > 1 else ())
    step = omega_power(e - 1, m) if e > 1 else from_int(m)
    return Ordinal(head) + step

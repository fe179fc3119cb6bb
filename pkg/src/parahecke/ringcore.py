"""Exact arithmetic in Z[v, v^-1] with q = v^2.

All coefficients in the package live in this ring.  Working in the formal
square root v keeps the half-integral modulus-character twists representable
for arbitrary parameter inputs; group-realizable data only ever produces even
v-support (honest powers of q).

A polynomial is stored as a dict {exponent: coefficient} with no zero
coefficients; the zero polynomial is the empty dict.  Coefficients are
Python ints (arbitrary precision).

>>> q = LaurentPoly.q()
>>> (q - 1) * (q + 1) == LaurentPoly.q_power(2) - 1
True
>>> LaurentPoly.q_power(2).exact_div(q) == q
True
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonDivisible, OddHalfPower

__all__ = ["LaurentPoly", "lp_arith", "is_prime_power"]


# Low-level helpers on raw {exp: coeff} dicts.  The Hecke rewriting engine
# accumulates through these to avoid churning wrapper objects in hot loops.

def _add_into(dst: dict, src: dict, scale: dict | None = None) -> None:
    """dst += src * scale (scale=None means 1), in place."""
    if scale is None:
        for e, c in src.items():
            n = dst.get(e, 0) + c
            if n:
                dst[e] = n
            else:
                del dst[e]
        return
    if len(scale) == 1:
        ((e2, c2),) = scale.items()
        for e1, c1 in src.items():
            e = e1 + e2
            n = dst.get(e, 0) + c1 * c2
            if n:
                dst[e] = n
            else:
                del dst[e]
        return
    for e1, c1 in src.items():
        for e2, c2 in scale.items():
            e = e1 + e2
            n = dst.get(e, 0) + c1 * c2
            if n:
                dst[e] = n
            else:
                del dst[e]


def _mul(a: dict, b: dict) -> dict:
    if len(b) == 1:
        ((e2, c2),) = b.items()
        if c2 == 1:
            return {e1 + e2: c1 for e1, c1 in a.items()}
        return {e1 + e2: c1 * c2 for e1, c1 in a.items()}
    if len(a) == 1:
        ((e1, c1),) = a.items()
        if c1 == 1:
            return {e1 + e2: c2 for e2, c2 in b.items()}
        return {e1 + e2: c1 * c2 for e2, c2 in b.items()}
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            n = out.get(e, 0) + c1 * c2
            if n:
                out[e] = n
            else:
                del out[e]
    return out


def _neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


class LaurentPoly:
    """Element of Z[v, v^-1], canonical sparse representation."""

    __slots__ = ("d",)

    def __init__(self, d: dict | None = None):
        self.d = {e: c for e, c in d.items() if c} if d else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def from_int(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def v_power(cls, k: int, coeff: int = 1) -> "LaurentPoly":
        return cls({k: coeff})

    @classmethod
    def q_power(cls, k: int, coeff: int = 1) -> "LaurentPoly":
        return cls({2 * k: coeff})

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls({2: 1})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls({1: 1})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.d)
        _add_into(out, other.d)
        return LaurentPoly.__new_raw__(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        out = dict(self.d)
        _add_into(out, _neg(other.d))
        return LaurentPoly.__new_raw__(out)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return LaurentPoly.__new_raw__(_neg(self.d))

    def __mul__(self, other):
        other = _coerce(other)
        return LaurentPoly.__new_raw__(_mul(self.d, other.d))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only for monomials; use exact_div")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.d == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self.d == other.d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def __bool__(self):
        return bool(self.d)

    @classmethod
    def __new_raw__(cls, d: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.d = d
        return p

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.d

    def is_one(self) -> bool:
        return self.d == {0: 1}

    def is_unit_monomial(self) -> bool:
        """True iff this is ±v^k, the units of Z[v, v^-1]."""
        if len(self.d) != 1:
            return False
        (c,) = self.d.values()
        return c in (1, -1)

    def min_exp(self) -> int:
        return min(self.d)

    def max_exp(self) -> int:
        return max(self.d)

    # -- exact operations ----------------------------------------------------

    def exact_div(self, other) -> "LaurentPoly":
        """Exact quotient self/other; raises NonDivisible on a remainder."""
        other = _coerce(other)
        if not other.d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.d:
            return LaurentPoly.zero()
        # Shift both to honest polynomials and long-divide.
        sa, sb = self.min_exp(), other.min_exp()
        a = {e - sa: c for e, c in self.d.items()}
        b = {e - sb: c for e, c in other.d.items()}
        db = max(b)
        lead = b[db]
        quot: dict = {}
        rem = dict(a)
        while rem:
            dr = max(rem)
            if dr < db:
                raise NonDivisible(f"{self} is not divisible by {other}")
            c, r = divmod(rem[dr], lead)
            if r:
                raise NonDivisible(f"{self} is not divisible by {other}")
            quot[dr - db] = c
            for e, cb in b.items():
                k = e + dr - db
                n = rem.get(k, 0) - c * cb
                if n:
                    rem[k] = n
                else:
                    rem.pop(k, None)
        return LaurentPoly.__new_raw__({e + sa - sb: c for e, c in quot.items()})

    def eval_at_q(self, n: int):
        """Substitute q = n (positive integer; meant for prime powers).

        v evaluates through its positive square root, which is only defined
        on even v-support; otherwise OddHalfPower is raised.  Returns an int
        when integral, otherwise an exact Fraction (negative q-exponents).
        """
        if n <= 0:
            raise ValueError("evaluation point must be a positive integer")
        total = Fraction(0)
        for e, c in self.d.items():
            if e % 2:
                raise OddHalfPower(f"odd v-exponent {e} present; q = v^2 substitution undefined")
            k = e // 2
            total += Fraction(c) * (Fraction(n) ** k)
        return int(total) if total.denominator == 1 else total

    def nonneg_in_q_minus_1(self) -> bool:
        """True iff q^k * self lies in N[q - 1] for some k ≥ 0.

        This is the universal form of positivity for point-counting
        q-analogues: it holds exactly when every specialization of q to a
        prime power is a nonnegative number.  Odd v-support fails.
        """
        if not self.d:
            return True
        if any(e % 2 for e in self.d):
            return False
        shift = -min(0, self.min_exp() // 2)
        # coefficients of (q^shift * self) written in the basis (q-1)^j:
        # repeatedly divide by (q - 1) via synthetic division at q = 1.
        coeffs: dict = {e // 2 + shift: c for e, c in self.d.items()}
        deg = max(coeffs)
        poly = [coeffs.get(i, 0) for i in range(deg + 1)]
        while poly:
            # value at q = 1 is the constant term in the shifted basis
            acc = 0
            rest = []
            for c in reversed(poly):  # Horner at q = 1, keeping quotient
                rest.append(acc)
                acc = acc + c
            if acc < 0:
                return False
            rest.reverse()
            poly = rest[:-1]  # ascending quotient by (q - 1); last slot is padding
            while poly and poly[-1] == 0:
                poly.pop()
        return True

    # -- serialization -------------------------------------------------------

    def to_pairs(self) -> list:
        """[[exponent, coefficient], ...] sorted by exponent (v-convention, q = v^2)."""
        return [[e, self.d[e]] for e in sorted(self.d)]

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPoly":
        out: dict = {}
        for e, c in pairs:
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)

    def __str__(self):
        if not self.d:
            return "0"
        parts = []
        for e in sorted(self.d, reverse=True):
            c = self.d[e]
            if e == 0:
                t = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                if e == 2:
                    t = f"{mag}q"
                elif e % 2 == 0:
                    t = f"{mag}q^{e // 2}"
                elif e == 1:
                    t = f"{mag}v"
                else:
                    t = f"{mag}v^{e}"
            parts.append(("-" if c < 0 else "+", t))
        sign0, t0 = parts[0]
        out = ("-" if sign0 == "-" else "") + t0
        for sign, t in parts[1:]:
            out += f" {sign} {t}"
        return out

    __repr__ = __str__


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.from_int(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into LaurentPoly")


def lp_arith(op: str, a: LaurentPoly, b=None):
    """Single-entry dispatcher over the ring operations.

    op ∈ {"add", "mul", "neg", "exact_div", "eval"}; "eval" takes a positive
    integer (a prime power standing for q) as second argument.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "exact_div":
        return a.exact_div(b)
    if op == "eval":
        return a.eval_at_q(b)
    raise ValueError(f"unknown op {op!r}")


def is_prime_power(n: int) -> bool:
    """True iff n = p^k for a prime p and k ≥ 1."""
    if n < 2:
        return False
    # peel the smallest prime factor, then demand the rest is its power
    p = None
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            p = f
            break
        f += 1 if f == 2 else 2
    if p is None:
        return True  # n itself prime
    while m % p == 0:
        m //= p
    return m == 1

"""Bernstein elements, the twisted dot-action, and the change of basis.

The exponent E is the unique homomorphism Λ → Z agreeing with the weighted
length of translations on antidominant elements; the modulus character is
q^{-E}.  The dot-action twists the naive Weyl action on the group algebra of
Λ by v^{E(m) - E(w(m))}, so that orbit sums of antidominant elements have
q-power coefficients and land in the center of the Iwahori-Hecke algebra.

Θ-elements are defined by the two-sided quotient i_{m+m∘} * (i_{m∘})^{-1}
with both exponents antidominant; the canonical m∘ is the componentwise
minimal combination of the antidominant fundamental generators.  The IM ↔
Bernstein change of basis is a triangular elimination whose diagonal is a
unit monomial.
"""

from __future__ import annotations

from .affweyl import ExtWeylElt
from .errors import NonUnitDiagonal, NotAntidominant, SolveInconsistent, UnsupportedParameters
from .hecke import HeckeElt, IwahoriHecke
from .ringcore import LaurentPoly, _add_into, _mul
from .rootdatum import Datum, LatticeElt, dot

__all__ = ["GroupAlgElt", "BernsteinElt", "Bernstein"]


class GroupAlgElt:
    """Element of R = Z[v^{±1}][Λ], sparse over lattice basis elements."""

    __slots__ = ("datum", "d")

    def __init__(self, datum: Datum, d: dict):
        self.datum = datum
        self.d = {m: p for m, p in d.items() if not p.is_zero()}

    @classmethod
    def basis(cls, datum: Datum, m: LatticeElt, coeff: LaurentPoly | None = None) -> "GroupAlgElt":
        return cls(datum, {m: coeff if coeff is not None else LaurentPoly.one()})

    @classmethod
    def zero(cls, datum: Datum) -> "GroupAlgElt":
        return cls(datum, {})

    def __add__(self, other):
        out = {m: dict(p.d) for m, p in self.d.items()}
        for m, p in other.d.items():
            tgt = out.get(m)
            if tgt is None:
                out[m] = dict(p.d)
            else:
                _add_into(tgt, p.d)
        return GroupAlgElt(self.datum, {m: LaurentPoly(pd) for m, pd in out.items()})

    def __sub__(self, other):
        return self + other.scale(LaurentPoly.from_int(-1))

    def __mul__(self, other):
        if isinstance(other, GroupAlgElt):
            out: dict = {}
            for m1, p1 in self.d.items():
                for m2, p2 in other.d.items():
                    key = self.datum.add(m1, m2)
                    tgt = out.get(key)
                    if tgt is None:
                        out[key] = dict((p1 * p2).d)
                    else:
                        _add_into(tgt, p1.d, p2.d)
            return GroupAlgElt(self.datum, {m: LaurentPoly(pd) for m, pd in out.items()})
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "GroupAlgElt":
        if isinstance(c, int):
            c = LaurentPoly.from_int(c)
        return GroupAlgElt(self.datum, {m: p * c for m, p in self.d.items()})

    def __eq__(self, other):
        if isinstance(other, GroupAlgElt):
            return self.d == other.d
        return NotImplemented

    def __bool__(self):
        return bool(self.d)

    def terms(self):
        return [(m, self.d[m]) for m in sorted(self.d)]

    def __repr__(self):
        if not self.d:
            return "0"
        return " + ".join(f"({p})·x[{m.free};{m.tors}]" for m, p in self.terms())


class BernsteinElt:
    """Coordinates over the basis {Θ_m * i_w}: sparse (lattice, W₀) → coefficients."""

    __slots__ = ("bern", "d")

    def __init__(self, bern: "Bernstein", d: dict):
        self.bern = bern
        self.d = {k: p for k, p in d.items() if not p.is_zero()}

    def __eq__(self, other):
        if isinstance(other, BernsteinElt):
            return self.d == other.d
        return NotImplemented

    def terms(self):
        key = lambda kv: (self.bern.exponent_E(kv[0][0]), kv[0][0], self.bern.datum.w_word[kv[0][1]])
        return sorted(self.d.items(), key=key)

    def to_obj(self) -> list:
        d = self.bern.datum
        out = []
        for (m, wi), p in self.terms():
            out.append(
                {
                    "lattice": {"free": list(m.free), "tors": list(m.tors)},
                    "finite_weyl": list(d.w_word[wi]),
                    "coeff": p.to_pairs(),
                }
            )
        return out

    def __repr__(self):
        if not self.d:
            return "0"
        return " + ".join(
            f"({p})·Θ[{m.free};{m.tors}]·w[{','.join(map(str, self.bern.datum.w_word[wi]))}]"
            for (m, wi), p in self.terms()
        )


class Bernstein:
    """Θ-elements and Bernstein coordinates over one Iwahori-Hecke algebra."""

    def __init__(self, H: IwahoriHecke):
        self.H = H
        self.W = H.weyl
        self.datum = H.datum
        self._E: dict[LatticeElt, int] = {}
        self._theta: dict[LatticeElt, HeckeElt] = {}

    # -- the exponent homomorphism ------------------------------------------

    def _antidominant_shift(self, m: LatticeElt) -> int:
        """Least N ≥ 0 with m + N·z antidominant (z the strict generator)."""
        d = self.datum
        best = 0
        for i, alpha in enumerate(d.simple_roots):
            v = dot(alpha, m.free)
            if v > 0:
                den = d.fund_antidom[i][1]
                best = max(best, -(-v // den))
        return best

    def exponent_E(self, m: LatticeElt) -> int:
        """E(m) = L(t_m) for antidominant m, extended as a homomorphism."""
        got = self._E.get(m)
        if got is not None:
            return got
        d, W = self.datum, self.W
        n = self._antidominant_shift(m)
        if n == 0:
            out = W.weighted_length(W.translation(m))
        else:
            z = d.lattice(tuple(n * c for c in d.strict_antidom))
            out = W.weighted_length(W.translation(d.add(m, z))) - W.weighted_length(W.translation(z))
        self._E[m] = out
        return out

    def dot_coeff(self, m: LatticeElt, wi: int) -> LaurentPoly:
        """c(m, w) = v^{E(m) - E(w(m))}."""
        return LaurentPoly.v_power(self.exponent_E(m) - self.exponent_E(self.datum.act(wi, m)))

    def dot_act(self, wi: int, r: GroupAlgElt) -> GroupAlgElt:
        d = self.datum
        out: dict = {}
        for m, p in r.d.items():
            key = d.act(wi, m)
            c = p * self.dot_coeff(m, wi)
            tgt = out.get(key)
            out[key] = c if tgt is None else tgt + c
        return GroupAlgElt(d, out)

    def orbit_sum_r(self, m: LatticeElt) -> GroupAlgElt:
        """r_m = Σ_{orbit} v^{E(m)-E(μ)}·μ for antidominant m."""
        d = self.datum
        if not d.is_antidominant(m):
            raise NotAntidominant(f"{m} is not antidominant")
        em = self.exponent_E(m)
        out = {
            mu: LaurentPoly.v_power(em - self.exponent_E(mu)) for mu in d.orbit(m)
        }
        return GroupAlgElt(d, out)

    # -- Θ-elements -----------------------------------------------------------

    def m_circ(self, m: LatticeElt) -> LatticeElt:
        """Componentwise minimal N-combination of the antidominant
        fundamental generators making m + m∘ antidominant."""
        d = self.datum
        acc = [0] * d.r
        for i, alpha in enumerate(d.simple_roots):
            v = dot(alpha, m.free)
            if v > 0:
                vec, den = d.fund_antidom[i]
                n = -(-v // den)
                for k in range(d.r):
                    acc[k] += n * vec[k]
        return d.lattice(acc)

    def theta(self, m: LatticeElt) -> HeckeElt:
        got = self._theta.get(m)
        if got is not None:
            return got
        out = self._theta_with_shift(m, self.m_circ(m))
        self._theta[m] = out
        return out

    def _theta_with_shift(self, m: LatticeElt, mc: LatticeElt) -> HeckeElt:
        d, W, H = self.datum, self.W, self.H
        if not d.is_antidominant(mc) or not d.is_antidominant(d.add(m, mc)):
            raise NotAntidominant(f"invalid antidominant shift {mc} for {m}")
        if all(c == 0 for c in mc.free) and not any(mc.tors):
            return H.basis_translation(m)
        top = H.basis_translation(d.add(m, mc))
        inv, _ = H.im_invert_basis(W.translation(mc))
        return H.mul(top, inv)

    def theta_choice_independent(self, m: LatticeElt) -> bool:
        """Recompute Θ_m with an extra antidominant shift of m∘."""
        d = self.datum
        z = d.lattice(d.strict_antidom)
        shifted = d.add(self.m_circ(m), z)
        return self._theta_with_shift(m, shifted) == self.theta(m)

    def theta_of(self, r: GroupAlgElt) -> HeckeElt:
        acc: dict = {}
        for m, p in r.d.items():
            pd = p.d
            for w, c in self.theta(m).d.items():
                tgt = acc.get(w)
                if tgt is None:
                    acc[w] = _mul(c.d, pd)
                else:
                    _add_into(tgt, c.d, pd)
                    if not tgt:
                        del acc[w]
        return self.H._wrap(acc)

    # -- IM <-> Bernstein change of basis -----------------------------------

    def bern_to_im(self, b: BernsteinElt) -> HeckeElt:
        out = self.H.zero()
        for (m, wi), p in b.d.items():
            out = out + self.H.mul(self.theta(m), self.H.basis(self.W.finite(wi))).scale(p)
        return out

    def im_to_bern(self, h: HeckeElt) -> BernsteinElt:
        """Triangular elimination against the Bruhat-maximal support element."""
        W, H = self.W, self.H
        residual = dict(h.d)
        out: dict = {}
        prev_key = None
        while residual:
            x = max(residual, key=W.sort_key)
            key = W.sort_key(x)
            if prev_key is not None and key >= prev_key:
                raise SolveInconsistent("elimination failed to decrease")
            prev_key = key
            mx = LatticeElt(x.free, x.tors)
            prod = H.mul(self.theta(mx), H.basis(W.finite(x.w)))
            diag = prod.d.get(x)
            if diag is None or not diag.is_unit_monomial():
                raise NonUnitDiagonal(f"diagonal at {W.format_elt(x)} is {diag}")
            c = residual[x].exact_div(diag)
            slot = (mx, x.w)
            prev = out.get(slot)
            out[slot] = c if prev is None else prev + c
            for w, p in prod.d.items():
                cur = residual.get(w, LaurentPoly.zero()) - p * c
                if cur.is_zero():
                    residual.pop(w, None)
                else:
                    residual[w] = cur
        return BernsteinElt(self, out)

    def change_basis(self, x, direction: str):
        if direction == "im_to_bern":
            return self.im_to_bern(x)
        if direction == "bern_to_im":
            return self.bern_to_im(x)
        raise ValueError(f"unknown direction {direction!r}")

    # -- the Bernstein relation (equal-parameter case) -----------------------

    def bernstein_relation_check(self, m: LatticeElt, i: int) -> bool:
        """Cleared-denominator commutation identity at the finite simple s_i.

        With x = Θ at the positive coroot α∨ of s and q_s its parameter,

          (Θ_m(i_s+1) − (i_s+1)Θ_{ṡ(m)}) · (1 − q_s·Θ_{α∨})
              == q_s · (Θ_m − Θ_{ṡ(m)}) · (1 − Θ_{α∨}),

        i.e. the commutator ratio is q_s(1 − Θ_{α∨})/(1 − q_sΘ_{α∨}); in the
        untwisted normalization that is (q_s − θ_{α∨})/(1 − θ_{α∨}).
        """
        d, W, H = self.datum, self.W, self.H
        if not d.equal_param_simply_laced:
            raise UnsupportedParameters(
                "Bernstein relation check requires equal parameters on simply-laced data"
            )
        if not 1 <= i <= d.n_simple:
            raise ValueError(f"s{i} is not a finite simple reflection")
        si = d._simple_refl_index(i - 1)
        sm = d.act(si, m)
        twist = self.dot_coeff(m, si)
        theta_m = self.theta(m)
        theta_sm = self.theta(sm).scale(twist)
        is_plus = H.basis(W.gen(i)) + 1
        lhs1 = H.mul(theta_m, is_plus) - H.mul(is_plus, theta_sm)
        qs = LaurentPoly.v_power(2 * d.L[i])
        coroot = d.lattice(d.simple_coroots[i - 1])
        lhs = H.mul(lhs1, H.one() - self.theta(coroot).scale(qs))
        rhs = H.mul(theta_m - theta_sm, H.one() - self.theta(coroot)).scale(qs)
        return lhs == rhs

    # -- expansion of invariants over orbit sums ------------------------------

    def expand_over_orbit_sums(self, r: GroupAlgElt) -> dict:
        """Unique coordinates of a Ẇ-invariant element over {r_m}; raises
        SolveInconsistent when r is not in their span."""
        d, W = self.datum, self.W
        residual = dict(r.d)
        out: dict = {}
        while residual:
            level = max(W.length(W.translation(m)) for m in residual)
            heads = sorted(
                m for m in residual
                if W.length(W.translation(m)) == level and d.is_antidominant(m)
            )
            if not heads:
                raise SolveInconsistent("no antidominant element at the top translation level")
            for m in heads:
                c = residual.get(m)
                if c is None:
                    continue
                out[m] = c
                for mu, p in self.orbit_sum_r(m).d.items():
                    cur = residual.get(mu, LaurentPoly.zero()) - p * c
                    if cur.is_zero():
                        residual.pop(mu, None)
                    else:
                        residual[mu] = cur
            if any(W.length(W.translation(m)) == level for m in residual):
                raise SolveInconsistent("top translation level did not clear")
        return out

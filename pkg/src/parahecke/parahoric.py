"""Parahoric subalgebras, their centers, and the twisted Satake transform.

A facet type is a subset J of the affine generators spanning a finite
parabolic W_J.  The attached subalgebra is the span of the double-coset sums
h_x = Σ_{W_J t_x W_J} i_w; its unit for the corner product is 1_K = Σ_{W_J} i_w,
with 1_K·1_K = P_J·1_K for the Poincaré polynomial P_J = Σ q_w.  Corner
multiplication divides the Iwahori product exactly by P_J.

Central elements are z_m = Θ̇(r_m) * 1_K (antidominant m); at the special
maximal facet they are everything, and solving h_x = Σ_m s_{x,m} z_m by
triangular elimination over the saturation order realizes the twisted Satake
transform.  Positivity of the entries is asserted in the shifted variable
t = q - 1 (the universal form of point-count positivity).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .affweyl import ExtWeylElt
from .bernstein import Bernstein, GroupAlgElt
from .errors import (
    CentralityFailure,
    InfiniteFacetGroup,
    NegativeCoefficient,
    NonDivisible,
    NotAntidominant,
    NotBiinvariant,
    NotCentral,
    SolveInconsistent,
)
from .hecke import HeckeElt
from .ringcore import LaurentPoly, _add_into, _mul
from .rootdatum import LatticeElt

__all__ = ["FacetType", "SatakeRow", "SatakeTable", "Parahoric"]


@dataclass(frozen=True)
class FacetType:
    """A finite parabolic W_J with its unit mass and Poincaré polynomial."""

    J: tuple
    elements: tuple
    poincare: LaurentPoly
    one_K: HeckeElt = field(compare=False)

    def __repr__(self):
        return f"FacetType(J={list(self.J)}, |W_J|={len(self.elements)})"


@dataclass
class SatakeRow:
    x: LatticeElt
    entries: list  # [(m, LaurentPoly)] in elimination order (rank, lex)
    checks: dict


@dataclass
class SatakeTable:
    datum: str
    facet: tuple
    rows: list

    def row(self, x: LatticeElt) -> SatakeRow:
        for r in self.rows:
            if r.x == x:
                return r
        raise KeyError(f"no row for {x}")

    def to_obj(self, fmt_lattice, q_eval: int | None = None) -> dict:
        rows = []
        for r in self.rows:
            entries = []
            for m, p in r.entries:
                rec = {"m": fmt_lattice(m), "coeff": p.to_pairs()}
                if q_eval is not None:
                    val = p.eval_at_q(q_eval)
                    rec["coeff_at_q"] = val if isinstance(val, int) else [val.numerator, val.denominator]
                entries.append(rec)
            rows.append({"x": fmt_lattice(r.x), "entries": entries, "checks": dict(r.checks)})
        return {
            "datum": self.datum,
            "facet": [f"s{i}" for i in self.facet],
            "coeff_convention": "v-pairs with q = v^2",
            "rows": rows,
        }

    def to_csv(self, fmt_lattice, q_eval: int | None = None) -> str:
        lines = ["x,m,coeff" + (",coeff_at_q" if q_eval is not None else "")]
        for r in self.rows:
            for m, p in r.entries:
                base = f"\"{fmt_lattice(r.x)}\",\"{fmt_lattice(m)}\",\"{p}\""
                if q_eval is not None:
                    base += f",{p.eval_at_q(q_eval)}"
                lines.append(base)
        return "\n".join(lines) + "\n"


class Parahoric:
    """Facet-level operations over one Bernstein/Hecke engine."""

    def __init__(self, bern: Bernstein, facet_bound: int = 4096):
        self.bern = bern
        self.H = bern.H
        self.W = bern.W
        self.datum = bern.datum
        self.facet_bound = facet_bound
        self._facets: dict = {}
        self._centers: dict = {}
        self._kelts: dict = {}
        self._kelt_biinv_ok: set = set()
        self._theta_oneK: dict = {}

    # -- facet data --------------------------------------------------------

    def facet(self, J) -> FacetType:
        J = tuple(sorted(set(int(j) for j in J)))
        got = self._facets.get(J)
        if got is not None:
            return got
        for j in J:
            if j not in self.datum.saff_indices:
                raise ValueError(f"s{j} is not an affine generator")
        W = self.W
        seen = {W.identity}
        frontier = [W.identity]
        while frontier:
            new = []
            for x in frontier:
                for j in J:
                    y = W.compose(x, W.gen(j))
                    if y not in seen:
                        if len(seen) >= self.facet_bound:
                            raise InfiniteFacetGroup(
                                f"W_J for J={list(J)} exceeded {self.facet_bound} elements"
                            )
                        seen.add(y)
                        new.append(y)
            frontier = new
        elements = tuple(sorted(seen, key=W.sort_key))
        poincare = LaurentPoly.zero()
        for w in elements:
            poincare = poincare + self.H.q_power_of(w)
        one_K = self.H.from_terms([(w, LaurentPoly.one()) for w in elements])
        if poincare.d.get(0) != 1:
            raise SolveInconsistent("Poincaré polynomial has constant term != 1")
        if self.H.mul(one_K, one_K) != one_K.scale(poincare):
            raise SolveInconsistent("1_K * 1_K != P_J * 1_K at facet construction")
        out = FacetType(J=J, elements=elements, poincare=poincare, one_K=one_K)
        self._facets[J] = out
        return out

    def special_facet(self) -> FacetType:
        return self.facet(range(1, self.datum.n_simple + 1))

    def kelt(self, F: FacetType, x: LatticeElt) -> HeckeElt:
        """h_x = characteristic function of the double coset W_J t_x W_J."""
        key = (F.J, x)
        got = self._kelts.get(key)
        if got is not None:
            return got
        if not self.datum.is_antidominant(x):
            raise NotAntidominant(f"{x} is not antidominant")
        W = self.W
        tx = W.translation(x)
        support = set()
        for u in F.elements:
            left = W.compose(u, tx)
            for u2 in F.elements:
                support.add(W.compose(left, u2))
        out = self.H.from_terms([(w, LaurentPoly.one()) for w in support])
        self._kelts[key] = out
        return out

    def theta_oneK(self, F: FacetType, m: LatticeElt) -> HeckeElt:
        """Θ_m * 1_K, memoized per facet."""
        key = (F.J, m)
        got = self._theta_oneK.get(key)
        if got is None:
            got = self.H.mul(self.bern.theta(m), F.one_K)
            self._theta_oneK[key] = got
        return got

    def _theta_of_times_oneK(self, F: FacetType, r) -> HeckeElt:
        """Θ̇(r) * 1_K assembled from the memoized per-basis products."""
        acc: dict = {}
        for m, p in r.d.items():
            pd = p.d
            for w, c in self.theta_oneK(F, m).d.items():
                tgt = acc.get(w)
                if tgt is None:
                    acc[w] = _mul(c.d, pd)
                else:
                    _add_into(tgt, c.d, pd)
                    if not tgt:
                        del acc[w]
        return self.H._wrap(acc)

    # -- corner multiplication -----------------------------------------------

    def is_biinvariant(self, F: FacetType, a: HeckeElt) -> bool:
        pa = a.scale(F.poincare)
        return self.H.mul(F.one_K, a) == pa and self.H.mul(a, F.one_K) == pa

    def _kelt_checked(self, F: FacetType, x: LatticeElt) -> HeckeElt:
        h = self.kelt(F, x)
        key = (F.J, x)
        if key not in self._kelt_biinv_ok:
            if not self.is_biinvariant(F, h):  # pragma: no cover - double cosets always are
                raise NotBiinvariant(f"h_{x} is not bi-invariant")
            self._kelt_biinv_ok.add(key)
        return h

    def _corner_mul(self, F: FacetType, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        prod = self.H.mul(a, b)
        try:
            return HeckeElt(self.H, {w: p.exact_div(F.poincare) for w, p in prod.d.items()})
        except NonDivisible as exc:  # pragma: no cover - convention bug guard
            raise NonDivisible(f"corner product not divisible by P_J: {exc}") from exc

    def parahoric_mul(self, F: FacetType, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        for side in (a, b):
            if not self.is_biinvariant(F, side):
                raise NotBiinvariant("operand is not W_J-bi-invariant")
        return self._corner_mul(F, a, b)

    # -- central elements ------------------------------------------------------

    def center_elt(self, F: FacetType, m: LatticeElt, commute_sample=None) -> HeckeElt:
        """z_m = Θ̇(r_m) * 1_K; verified two-sided and against a sample."""
        key = (F.J, m)
        got = self._centers.get(key)
        if got is not None:
            return got
        if not self.datum.is_antidominant(m):
            raise NotAntidominant(f"{m} is not antidominant")
        r_m = self.bern.orbit_sum_r(m)
        theta_r = self.bern.theta_of(r_m)
        z = self._theta_of_times_oneK(F, r_m)
        if z != self.H.mul(F.one_K, theta_r):
            raise CentralityFailure(f"z_m is one-sided at m={m}, J={list(F.J)}")
        sample = commute_sample
        if sample is None:
            sample = [x for x, _ in self.datum.antidominant_set(1)]
        for x in sample:
            hx = self.kelt(F, x)
            if self.H.mul(z, hx) != self.H.mul(hx, z):
                raise CentralityFailure(f"z_{m} does not commute with h_{x} at J={list(F.J)}")
        self._centers[key] = z
        return z

    def center_product_expand(self, F: FacetType, m1: LatticeElt, m2: LatticeElt) -> dict:
        """Coordinates of z_{m1} ∗_K z_{m2} over the z-basis (via the R-side)."""
        r_prod = self.bern.orbit_sum_r(m1) * self.bern.orbit_sum_r(m2)
        coeffs = self.bern.expand_over_orbit_sums(r_prod)
        lhs = self.parahoric_mul(F, self.center_elt(F, m1), self.center_elt(F, m2))
        rhs = self.H.zero()
        for m, c in coeffs.items():
            rhs = rhs + self.center_elt(F, m).scale(c)
        if lhs != rhs:
            raise SolveInconsistent("center product does not match its z-basis expansion")
        return coeffs

    # -- the twisted Satake transform ------------------------------------------

    def _solve_row(self, F: FacetType, x: LatticeElt) -> SatakeRow:
        W = self.W
        preds = self.datum.saturation_predecessors_ranked(x)
        residual = {w: dict(p.d) for w, p in self.kelt(F, x).d.items()}
        entries = []
        for m, rank in preds:
            z = self.center_elt(F, m)
            lead = max(z.d, key=W.sort_key)
            got = residual.get(lead)
            if got is None:
                raise NegativeCoefficient(self._counterexample(x, m, None, "vanishing entry on a predecessor"))
            try:
                s = LaurentPoly(got).exact_div(z.d[lead])
            except NonDivisible as exc:
                raise SolveInconsistent(f"entry at {m} not divisible: {exc}") from exc
            if rank == 0 and not s.is_one():
                raise SolveInconsistent(f"diagonal s_(x,x) = {s} != 1 at x={x}")
            if not s.nonneg_in_q_minus_1():
                raise NegativeCoefficient(self._counterexample(x, m, s, "negative coefficient in q-1"))
            neg_s = (-s).d
            for w, p in z.d.items():
                tgt = residual.get(w)
                if tgt is None:
                    residual[w] = _mul(p.d, neg_s)
                else:
                    _add_into(tgt, p.d, neg_s)
                    if not tgt:
                        del residual[w]
            entries.append((m, s))
        if residual:
            raise SolveInconsistent(f"Satake row at {x} left a nonzero residual")
        return SatakeRow(
            x=x,
            entries=entries,
            checks={"diag_one": True, "positive": True, "triangular": True},
        )

    def _counterexample(self, x, m, s, why) -> str:
        d = self.datum
        return json.dumps(
            {
                "theorem_falsified": "satake positivity",
                "why": why,
                "datum": d.name,
                "x": {"free": list(x.free), "tors": list(x.tors)},
                "m": {"free": list(m.free), "tors": list(m.tors)},
                "entry": None if s is None else s.to_pairs(),
            },
            sort_keys=True,
        )

    def satake_table(self, xs, J=None, jobs: int = 1, check_products: bool = True) -> SatakeTable:
        """Rows of the twisted Satake matrix; J, if given, must be the
        special maximal facet (the set of finite simple generators)."""
        d = self.datum
        if J is not None and set(int(j) for j in J) != set(range(1, d.n_simple + 1)):
            raise ValueError("satake_table requires the special maximal facet")
        F = self.special_facet()
        xs = list(xs)
        for x in xs:
            if not d.is_antidominant(x):
                raise NotAntidominant(f"{x} is not antidominant")
        if jobs > 1 and len(xs) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(lambda x: self._solve_row(F, x), xs))
        else:
            rows = [self._solve_row(F, x) for x in xs]
        table = SatakeTable(datum=d.name, facet=F.J, rows=rows)
        if check_products:
            self._check_multiplicative(F, table)
        return table

    def transform_of_row(self, row: SatakeRow) -> GroupAlgElt:
        out = GroupAlgElt.zero(self.datum)
        for m, s in row.entries:
            out = out + self.bern.orbit_sum_r(m).scale(s)
        return out

    def _check_multiplicative(self, F: FacetType, table: SatakeTable):
        """transform(h_x *_K h_y) must equal transform(h_x)·transform(h_y)."""
        transforms = {id(r): self.transform_of_row(r) for r in table.rows}
        for i, rx in enumerate(table.rows):
            hx = self._kelt_checked(F, rx.x)
            for ry in table.rows[i:]:
                prod = self._corner_mul(F, hx, self._kelt_checked(F, ry.x))
                rhs = transforms[id(rx)] * transforms[id(ry)]
                if self._theta_of_times_oneK(F, rhs) != prod:
                    raise SolveInconsistent(
                        f"Satake transform not multiplicative at x={rx.x}, y={ry.x}"
                    )

    def satake_general(self, F: FacetType, z: HeckeElt) -> GroupAlgElt:
        """The unique Ẇ-invariant r with Θ̇(r) * 1_K = z (z central in the corner)."""
        W, d = self.W, self.datum
        if not self.is_biinvariant(F, z):
            raise NotCentral("element is not in the corner subalgebra")
        reps = sorted({d.antidominant_rep(LatticeElt(w.free, w.tors)) for w in z.d})
        for mu in reps:
            h = self.kelt(F, mu)
            if self.H.mul(z, h) != self.H.mul(h, z):
                raise NotCentral(f"element does not commute with h_{mu}")
        candidates: set = set()
        for mu in reps:
            candidates.update(self.datum.saturation_predecessors(mu))
        order = sorted(candidates, key=lambda mu: (-W.length(W.translation(mu)), mu))
        residual = dict(z.d)
        coeffs: dict = {}
        for mu in order:
            zmu = self.center_elt(F, mu)
            lead = max(zmu.d, key=W.sort_key)
            got = residual.get(lead)
            if got is None:
                continue
            try:
                s = got.exact_div(zmu.d[lead])
            except NonDivisible as exc:
                raise SolveInconsistent(f"general Satake solve non-integral: {exc}") from exc
            coeffs[mu] = s
            neg_s = -s
            for w, p in zmu.d.items():
                cur = residual.get(w, LaurentPoly.zero()) + p * neg_s
                if cur.is_zero():
                    residual.pop(w, None)
                else:
                    residual[w] = cur
        if residual:
            raise SolveInconsistent("central element is not in the span of the z-basis")
        out = GroupAlgElt.zero(d)
        for mu, s in coeffs.items():
            out = out + self.bern.orbit_sum_r(mu).scale(s)
        return out

    # -- compatibility across nested facets -------------------------------------

    def lift_center(self, F_small: FacetType, F_big: FacetType, z: HeckeElt) -> HeckeElt:
        """z ∗_{K_small} 1_{K_big}: the unit-adjusted image into the bigger corner."""
        if not set(F_small.J) <= set(F_big.J):
            raise ValueError("facets are not nested")
        prod = self.H.mul(z, F_big.one_K)
        return HeckeElt(self.H, {w: p.exact_div(F_small.poincare) for w, p in prod.d.items()})

    def compatibility_holds(self, F_small: FacetType, F_big: FacetType, m: LatticeElt) -> bool:
        """The Bernstein-Satake square commutes on the z-basis element at m."""
        z_small = self.center_elt(F_small, m)
        lifted = self.lift_center(F_small, F_big, z_small)
        if lifted != self.center_elt(F_big, m):
            return False
        r_small = self.satake_general(F_small, z_small)
        r_big = self.satake_general(F_big, lifted)
        if r_small != r_big:
            return False
        back = self.H.mul(self.bern.theta_of(r_big), F_small.one_K)
        return back == z_small

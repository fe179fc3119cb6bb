"""The extended affine Weyl group Λ ⋊ W₀.

Elements are canonical triples (free translation part, torsion part, finite
part); the finite part is an index into the enumerated finite Weyl group.
Length is the wall-crossing count through a fixed rational interior point of
the base alcove; reduced words are produced by greedy left descent with
lowest-index tie-break, ending in a length-zero element of Ω (which is never
enumerated, only decomposed against).

The Bruhat order is the Coxeter order on the affine part, fiberwise over Ω:
two elements are comparable only when their Ω-parts coincide.
"""

from __future__ import annotations

import itertools
import re
from typing import NamedTuple

from .errors import ExprSyntaxError
from .rootdatum import Datum, LatticeElt, Vec, dot

__all__ = ["ExtWeylElt", "AffineWeylGroup"]


class ExtWeylElt(NamedTuple):
    """Canonical form t_λ · u with λ = (free, tors) and u ∈ W₀ (by index)."""

    free: Vec
    tors: Vec
    w: int


class AffineWeylGroup:
    """Group operations, length, reduced words and Bruhat order for W̃."""

    def __init__(self, datum: Datum):
        self.datum = datum
        r, t = datum.r, len(datum.torsion)
        self.identity = ExtWeylElt((0,) * r, (0,) * t, 0)
        self._gens = {
            i: ExtWeylElt(vec, (0,) * t, wi) for i, (vec, wi) in datum.saff_real.items()
        }
        self._len: dict[ExtWeylElt, int] = {}
        self._red: dict[ExtWeylElt, tuple[tuple[int, ...], ExtWeylElt]] = {}
        self._wlen: dict[ExtWeylElt, int] = {}
        self._bruhat: dict[tuple[ExtWeylElt, ExtWeylElt], bool] = {}
        self._omega_samples: list[ExtWeylElt] | None = None

    # -- constructors ------------------------------------------------------

    def elt(self, free, tors=None, w: int = 0) -> ExtWeylElt:
        lam = self.datum.lattice(free, tors)
        return ExtWeylElt(lam.free, lam.tors, w)

    def translation(self, m: LatticeElt) -> ExtWeylElt:
        return ExtWeylElt(m.free, m.tors, 0)

    def finite(self, wi: int) -> ExtWeylElt:
        return ExtWeylElt(self.identity.free, self.identity.tors, wi)

    def gen(self, i: int) -> ExtWeylElt:
        if i not in self._gens:
            raise KeyError(f"no affine generator s{i}; have {sorted(self._gens)}")
        return self._gens[i]

    def lattice_part(self, x: ExtWeylElt) -> LatticeElt:
        return LatticeElt(x.free, x.tors)

    # -- group structure ---------------------------------------------------

    def compose(self, x: ExtWeylElt, y: ExtWeylElt) -> ExtWeylElt:
        d = self.datum
        m = d.w_elems[x.w]
        free = tuple(a + dot(row, y.free) for a, row in zip(x.free, m))
        tors = tuple((a + b) % n for a, b, n in zip(x.tors, y.tors, d.torsion))
        return ExtWeylElt(free, tors, d.w_mult[x.w][y.w])

    def compose_all(self, elts) -> ExtWeylElt:
        out = self.identity
        for e in elts:
            out = self.compose(out, e)
        return out

    def inverse(self, x: ExtWeylElt) -> ExtWeylElt:
        d = self.datum
        wi = d.w_inv[x.w]
        m = d.w_elems[wi]
        free = tuple(-dot(row, x.free) for row in m)
        tors = tuple((-a) % n for a, n in zip(x.tors, d.torsion))
        return ExtWeylElt(free, tors, wi)

    def word_to_elt(self, word) -> ExtWeylElt:
        return self.compose_all(self.gen(i) for i in word)

    # -- length and reduced words -------------------------------------------

    def length(self, x: ExtWeylElt) -> int:
        ell = self._len.get(x)
        if ell is None:
            d = self.datum
            ft = d.floor_tab[x.w]
            ell = 0
            for k, beta in enumerate(d.pos_roots):
                c = dot(beta, x.free) + ft[k]
                ell += c if c >= 0 else -c
            self._len[x] = ell
        return ell

    def reduced_word(self, x: ExtWeylElt) -> tuple[tuple[int, ...], ExtWeylElt]:
        """Deterministic decomposition x = (Π word) · ω with ℓ(ω) = 0."""
        got = self._red.get(x)
        if got is not None:
            return got
        word: list[int] = []
        cur = x
        ell = self.length(cur)
        while ell > 0:
            for i in self.datum.saff_indices:
                nxt = self.compose(self._gens[i], cur)
                nell = self.length(nxt)
                if nell < ell:
                    word.append(i)
                    cur, ell = nxt, nell
                    break
            else:
                raise RuntimeError(f"no left descent at positive length: {x}")
        out = (tuple(word), cur)
        self._red[x] = out
        return out

    def weighted_length(self, x: ExtWeylElt) -> int:
        wl = self._wlen.get(x)
        if wl is None:
            word, _ = self.reduced_word(x)
            wl = sum(self.datum.L[i] for i in word)
            self._wlen[x] = wl
        return wl

    def lengths(self, x: ExtWeylElt) -> tuple[int, int]:
        """(ℓ, L): wall count and parameter-weighted length."""
        return self.length(x), self.weighted_length(x)

    def is_length_zero(self, x: ExtWeylElt) -> bool:
        return self.length(x) == 0

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_le(self, x: ExtWeylElt, y: ExtWeylElt) -> bool:
        if x == y:
            return True
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            return False
        key = (x, y)
        got = self._bruhat.get(key)
        if got is not None:
            return got
        if ly == 0:
            out = False  # x == y was already handled
        else:
            for i in self.datum.saff_indices:
                sy = self.compose(self._gens[i], y)
                if self.length(sy) < ly:
                    sx = self.compose(self._gens[i], x)
                    if self.length(sx) < lx:
                        out = self.bruhat_le(sx, sy)
                    else:
                        out = self.bruhat_le(x, sy)
                    break
            else:  # pragma: no cover - unreachable for valid data
                raise RuntimeError("no descent found")
        self._bruhat[key] = out
        return out

    # -- enumeration helpers ----------------------------------------------

    def omega_samples(self, box: int = 2) -> list[ExtWeylElt]:
        """Deterministic sample of length-zero elements (Ω is not enumerated)."""
        if self._omega_samples is None:
            d = self.datum
            out = []
            ranges = [range(-box, box + 1)] * d.r
            tors_space = list(itertools.product(*(range(n) for n in d.torsion))) or [()]
            for free in itertools.product(*ranges) if d.r else [()]:
                for tors in tors_space:
                    for wi in range(d.w_order):
                        x = ExtWeylElt(tuple(free), tuple(tors), wi)
                        if self.length(x) == 0:
                            out.append(x)
            out.sort()
            self._omega_samples = out
        return self._omega_samples

    def ball(self, max_length: int, with_omega: bool = True) -> list[ExtWeylElt]:
        """All W_aff elements of length ≤ max_length, decorated with the
        Ω-sample on the right when requested; sorted deterministically."""
        seen = {self.identity}
        frontier = [self.identity]
        k = 0
        while frontier and k < max_length:
            new = []
            for x in frontier:
                for i in self.datum.saff_indices:
                    y = self.compose(x, self._gens[i])
                    if y not in seen and self.length(y) == k + 1:
                        seen.add(y)
                        new.append(y)
            frontier = new
            k += 1
        aff = sorted(seen, key=self.sort_key)
        if not with_omega:
            return aff
        out = []
        for om in self.omega_samples():
            for x in aff:
                out.append(self.compose(x, om))
        return sorted(set(out), key=self.sort_key)

    def sort_key(self, x: ExtWeylElt):
        word, om = self.reduced_word(x)
        return (self.length(x), word, om)

    # -- textual form ------------------------------------------------------

    def format_elt(self, x: ExtWeylElt) -> str:
        free = ",".join(str(c) for c in x.free)
        if self.datum.torsion:
            tors = ",".join(str(c) for c in x.tors)
            lam = f"{free};{tors}" if free else f";{tors}"
        else:
            lam = free
        word = ",".join(str(i) for i in self.datum.w_word[x.w])
        return f"t[{lam}]·w[{word}]"

    _ATOM = re.compile(r"t\[(?P<lam>[^\]]*)\]|w\[(?P<word>[^\]]*)\]|s(?P<gen>\d+)")

    def parse_elt(self, text: str) -> ExtWeylElt:
        """Parse a product of t[...], w[...], s<i> atoms joined by '·' or '*'."""
        out = self.identity
        parts = [p.strip() for p in re.split(r"[·*]", text) if p.strip()]
        if not parts:
            raise ExprSyntaxError(f"empty element expression: {text!r}")
        for part in parts:
            m = self._ATOM.fullmatch(part)
            if not m:
                raise ExprSyntaxError(f"bad element atom {part!r}")
            if m.group("gen") is not None:
                out = self.compose(out, self.gen(int(m.group("gen"))))
            elif m.group("word") is not None:
                body = m.group("word").strip()
                wi = 0
                if body:
                    for tok in body.split(","):
                        i = int(tok)
                        if not 1 <= i <= self.datum.n_simple:
                            raise ExprSyntaxError(f"w[...] entries must be finite simple indices, got {i}")
                        wi = self.datum.w_mult[wi][self.datum._simple_refl_index(i - 1)]
                out = self.compose(out, self.finite(wi))
            else:
                body = m.group("lam")
                if ";" in body:
                    fs, ts = body.split(";", 1)
                else:
                    fs, ts = body, ""
                free = [int(tok) for tok in fs.split(",") if tok.strip()] if fs.strip() else []
                tors = [int(tok) for tok in ts.split(",") if tok.strip()] if ts.strip() else []
                if len(free) != self.datum.r:
                    raise ExprSyntaxError(
                        f"t[...] needs {self.datum.r} free coordinate(s), got {len(free)}"
                    )
                out = self.compose(out, self.elt(free, tors))
        return out

"""The static arena: a root datum with torsion and parameters.

The configuration supplies a lattice Z^r ⊕ (⊕ Z/n_i), simple roots (integer
functionals on Z^r), simple coroots (vectors), the reflection matrices, a
positive-integer parameter per affine generator, and one highest root per
irreducible component.  Validation enumerates the finite Weyl group, the root
system with its root/coroot correspondence, the affine Coxeter matrix, and
the rational interior point of the base alcove used by the length function.

Dominance convention: "antidominant" is the cone pairing ≤ 0 against every
simple root.  The saturation order on antidominant elements is

    m ≼ x  ⟺  m − x is a nonnegative integer combination of simple coroots,

so the zero element is the minimum and predecessor sets are finite.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    InfiniteFiniteWeyl,
    NonCrystallographic,
    NotAntidominant,
    ParameterBraidMismatch,
    TorsionNotFixed,
    ValidationError,
)

__all__ = [
    "LatticeElt",
    "RootDatum",
    "Datum",
    "ValidationReport",
    "validate_datum",
    "build_datum",
    "load_datum_file",
    "bundled_datum_path",
    "load_bundled",
    "BUNDLED_NAMES",
]

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


class LatticeElt(NamedTuple):
    """Element of Λ = Z^r ⊕ torsion; residues always reduced."""

    free: Vec
    tors: Vec


def dot(covec: Vec, vec: Vec) -> int:
    return sum(a * b for a, b in zip(covec, vec))


def mat_apply(m: Mat, vec: Vec) -> Vec:
    return tuple(dot(row, vec) for row in m)


def covec_apply(covec: Vec, m: Mat) -> Vec:
    """Pullback of a functional along the matrix: (β·M)(λ) = β(Mλ)."""
    return tuple(sum(covec[j] * m[j][k] for j in range(len(covec))) for k in range(len(m[0]))) if m else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One exact solution of rows·x = rhs with free variables set to 0, or None."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    nrows, ncols = len(m), (len(rows[0]) if rows else 0)
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        m[rank] = [x / lead for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if m[i][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][-1]
    return sol


@dataclass(frozen=True)
class RootDatum:
    """Raw configuration, exactly as ingested from a datum file."""

    name: str
    free_rank: int
    torsion_invariants: tuple[int, ...]
    simple_coroots: tuple[Vec, ...]
    simple_roots: tuple[Vec, ...]
    finite_generators: tuple[Mat, ...]
    affine_parameters: dict
    component_highest_roots: tuple[Vec, ...]
    antidominant_generators: tuple[Vec, ...] = ()
    equal_parameters_simply_laced: bool | None = None
    description: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "RootDatum":
        def vecs(key):
            return tuple(tuple(int(x) for x in row) for row in d.get(key, ()))

        return cls(
            name=str(d.get("name", "unnamed")),
            description=str(d.get("description", "")),
            free_rank=int(d["free_rank"]),
            torsion_invariants=tuple(int(x) for x in d.get("torsion_invariants", ())),
            simple_coroots=vecs("simple_coroots"),
            simple_roots=vecs("simple_roots"),
            finite_generators=tuple(
                tuple(tuple(int(x) for x in row) for row in m) for m in d.get("finite_generators", ())
            ),
            affine_parameters=dict(d.get("affine_parameters", {})),
            component_highest_roots=vecs("component_highest_roots"),
            antidominant_generators=vecs("antidominant_generators"),
            equal_parameters_simply_laced=d.get("equal_parameters_simply_laced"),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "free_rank": self.free_rank,
            "torsion_invariants": list(self.torsion_invariants),
            "simple_coroots": [list(v) for v in self.simple_coroots],
            "simple_roots": [list(v) for v in self.simple_roots],
            "finite_generators": [[list(r) for r in m] for m in self.finite_generators],
            "affine_parameters": dict(self.affine_parameters),
            "component_highest_roots": [list(v) for v in self.component_highest_roots],
            "antidominant_generators": [list(v) for v in self.antidominant_generators],
            "equal_parameters_simply_laced": self.equal_parameters_simply_laced,
        }


@dataclass
class ValidationReport:
    ok: bool
    name: str
    weyl_order: int | None = None
    coxeter_matrix: dict | None = None
    omega_data: dict | None = None
    messages: list = field(default_factory=list)
    error: Exception | None = None
    datum: "Datum | None" = None


class Datum:
    """Validated root datum with all derived combinatorial tables."""

    def __init__(self, cfg: RootDatum, max_weyl_order: int = 100000):
        self.cfg = cfg
        self.name = cfg.name
        self.r = cfg.free_rank
        self.torsion = cfg.torsion_invariants
        self.n_simple = len(cfg.simple_roots)
        self._check_shapes()
        self.simple_roots = cfg.simple_roots
        self.simple_coroots = cfg.simple_coroots
        self.gens = self._normalized_generators()
        self._check_crystallographic()
        self._enumerate_weyl(max_weyl_order)
        self._enumerate_roots()
        self._split_components()
        self._check_highest_roots()
        self._build_saff()
        self._read_parameters()
        self._build_alcove_point()
        self._build_cone_data()
        self.zero = LatticeElt((0,) * self.r, (0,) * len(self.torsion))
        self._pred_cache: dict = {}

    # ------------------------------------------------------------------
    # validation passes

    def _check_shapes(self):
        cfg = self.cfg
        if cfg.free_rank < 0:
            raise ValidationError("free_rank must be nonnegative")
        if any(n < 2 for n in cfg.torsion_invariants):
            raise ValidationError("torsion invariants must be >= 2")
        n = self.n_simple
        if len(cfg.simple_coroots) != n or len(cfg.finite_generators) != n:
            raise ValidationError("simple_roots, simple_coroots, finite_generators must have equal length")
        for v in cfg.simple_coroots + cfg.simple_roots:
            if len(v) != cfg.free_rank:
                raise ValidationError("root/coroot vectors must have length free_rank")

    def _normalized_generators(self) -> tuple[Mat, ...]:
        r, t = self.r, len(self.torsion)
        out = []
        for m in self.cfg.finite_generators:
            if len(m) == r and all(len(row) == r for row in m):
                out.append(tuple(tuple(row) for row in m))
                continue
            if len(m) == r + t and all(len(row) == r + t for row in m):
                # block form: must fix the torsion part pointwise
                for i in range(r + t):
                    for j in range(r + t):
                        expect_block = (i < r) == (j < r)
                        if not expect_block and m[i][j] != 0:
                            raise TorsionNotFixed("generator mixes free and torsion parts")
                        if i >= r and j >= r and m[i][j] != (1 if i == j else 0):
                            raise TorsionNotFixed("generator acts nontrivially on torsion")
                out.append(tuple(tuple(row[:r]) for row in m[:r]))
                continue
            raise ValidationError("generator matrices must be r x r (or block (r+t) x (r+t))")
        return tuple(out)

    def _check_crystallographic(self):
        n, r = self.n_simple, self.r
        for i in range(n):
            if dot(self.simple_roots[i], self.simple_coroots[i]) != 2:
                raise NonCrystallographic(f"<coroot_{i}, root_{i}> must equal 2")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                a = dot(self.simple_roots[i], self.simple_coroots[j])
                b = dot(self.simple_roots[j], self.simple_coroots[i])
                if a > 0 or b > 0 or a * b not in (0, 1, 2, 3):
                    raise NonCrystallographic(f"pairing of simples {i},{j} fails crystallographic bounds")
        for vecs, label in ((self.simple_coroots, "coroots"), (self.simple_roots, "roots")):
            rows = [[Fraction(x) for x in v] for v in vecs]
            if rows and _rank(rows) != n:
                raise NonCrystallographic(f"simple {label} are linearly dependent")
        # each generator must act by the stated reflection
        for i, m in enumerate(self.gens):
            for k in range(r):
                e = tuple(1 if j == k else 0 for j in range(r))
                want = tuple(e[j] - self.simple_roots[i][k] * self.simple_coroots[i][j] for j in range(r))
                if mat_apply(m, e) != want:
                    raise NonCrystallographic(f"generator {i} is not the reflection of root {i}")

    def _enumerate_weyl(self, bound: int):
        ident = _identity(self.r)
        elems = [ident]
        index = {ident: 0}
        words: list[tuple[int, ...]] = [()]
        queue = [0]
        while queue:
            nxt = []
            for wi in queue:
                for gi, g in enumerate(self.gens):
                    prod = mat_mul(elems[wi], g)
                    if prod not in index:
                        index[prod] = len(elems)
                        elems.append(prod)
                        words.append(words[wi] + (gi + 1,))
                        nxt.append(index[prod])
                        if len(elems) > bound:
                            raise InfiniteFiniteWeyl(f"finite Weyl enumeration exceeded {bound}")
            queue = nxt
        self.w_elems: list[Mat] = elems
        self.w_index = index
        self.w_word = words
        self.w_len = [len(w) for w in words]
        self.w_order = len(elems)
        self.w_mult = [
            [index[mat_mul(elems[i], elems[j])] for j in range(self.w_order)]
            for i in range(self.w_order)
        ]
        self.w_inv = [next(j for j in range(self.w_order) if self.w_mult[i][j] == 0) for i in range(self.w_order)]
        self.longest_w = max(range(self.w_order), key=lambda i: (self.w_len[i], i))
        if self.w_order > 1 and sum(1 for i in range(self.w_order) if self.w_len[i] == self.w_len[self.longest_w]) != 1:
            raise NonCrystallographic("finite Weyl group has no unique longest element")

    def act_w(self, wi: int, vec: Vec) -> Vec:
        return mat_apply(self.w_elems[wi], vec)

    def _enumerate_roots(self):
        pairs = {}
        frontier = []
        for i in range(self.n_simple):
            key = self.simple_roots[i]
            pairs[key] = (self.simple_coroots[i], self._simple_refl_index(i))
            frontier.append(key)
        while frontier:
            new = []
            for beta in frontier:
                cov, refl = pairs[beta]
                for gi, g in enumerate(self.gens):
                    nb = covec_apply(beta, g)
                    if nb not in pairs:
                        si = self.w_index[self.gens[gi]]
                        pairs[nb] = (
                            mat_apply(g, cov),
                            self.w_mult[self.w_mult[si][refl]][si],
                        )
                        new.append(nb)
            frontier = new
        pos, neg = [], []
        for beta in pairs:
            coeffs = self._expand_over_simple_roots(beta)
            if coeffs is None:
                raise NonCrystallographic("orbit of simple roots left their span")
            if all(c >= 0 for c in coeffs):
                pos.append((beta, coeffs))
            elif all(c <= 0 for c in coeffs):
                neg.append(beta)
            else:
                raise NonCrystallographic("found a root with mixed-sign expansion")
        if len(pos) != len(neg):
            raise NonCrystallographic("root system is not symmetric")
        pos.sort(key=lambda bc: (sum(bc[1]), bc[0]))
        self.pos_roots = tuple(beta for beta, _ in pos)
        self.pos_root_height = {beta: sum(c) for beta, c in pos}
        self.pos_root_coeffs = {beta: tuple(c) for beta, c in pos}
        self.root_coroot = {beta: pairs[beta][0] for beta in pairs}
        self.root_refl = {beta: pairs[beta][1] for beta in pairs}
        self.all_roots = frozenset(pairs)

    def _simple_refl_index(self, i: int) -> int:
        return self.w_index[self.gens[i]]

    def _expand_over_simple_roots(self, beta: Vec) -> list[int] | None:
        if self.n_simple == 0:
            return [] if all(x == 0 for x in beta) else None
        rows = [[Fraction(self.simple_roots[j][k]) for j in range(self.n_simple)] for k in range(self.r)]
        sol = _solve_rational(rows, [Fraction(x) for x in beta])
        if sol is None or any(c.denominator != 1 for c in sol):
            return None
        return [int(c) for c in sol]

    def _split_components(self):
        n = self.n_simple
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                if dot(self.simple_roots[i], self.simple_coroots[j]) != 0:
                    parent[find(i)] = find(j)
        comps: dict[int, list[int]] = {}
        for i in range(n):
            comps.setdefault(find(i), []).append(i)
        self.components = sorted((sorted(v) for v in comps.values()), key=lambda c: c[0])
        self.comp_of_simple = {}
        for ci, comp in enumerate(self.components):
            for i in comp:
                self.comp_of_simple[i] = ci

    def _check_highest_roots(self):
        if len(self.cfg.component_highest_roots) != len(self.components):
            raise ValidationError(
                f"expected {len(self.components)} component highest root(s), "
                f"got {len(self.cfg.component_highest_roots)}"
            )
        self.theta = []
        for ci, comp in enumerate(self.components):
            theta = self.cfg.component_highest_roots[ci]
            if theta not in self.all_roots or theta not in self.pos_root_coeffs:
                raise ValidationError(f"configured highest root {theta} is not a positive root")
            coeffs = self.pos_root_coeffs[theta]
            support = {i for i, c in enumerate(coeffs) if c}
            if not support <= set(comp):
                raise ValidationError(f"highest root {theta} is not supported on component {ci}")
            if any(c < 0 for c in coeffs):
                raise ValidationError(f"highest root {theta} is not an N-combination of simple roots")
            comp_heights = [
                self.pos_root_height[b]
                for b in self.pos_roots
                if {i for i, c in enumerate(self.pos_root_coeffs[b]) if c} <= set(comp)
            ]
            if self.pos_root_height[theta] != max(comp_heights):
                raise ValidationError(f"configured root {theta} is not highest in its component")
            self.theta.append(theta)

    def _build_saff(self):
        """Affine generators: finite simples are 1..n; component c gets the
        affine index 0 (c = 0) or n + c (c >= 1)."""
        n = self.n_simple
        self.saff_indices = []
        self.saff_real: dict[int, tuple[Vec, int]] = {}
        for ci, theta in enumerate(self.theta):
            idx = 0 if ci == 0 else n + ci
            self.saff_indices.append(idx)
            self.saff_real[idx] = (self.root_coroot[theta], self.root_refl[theta])
        for i in range(n):
            self.saff_indices.append(i + 1)
            zero = (0,) * self.r
            self.saff_real[i + 1] = (zero, self._simple_refl_index(i))
        self.saff_indices.sort()
        self.coxeter_matrix = self._affine_coxeter_matrix()

    def _affine_coxeter_matrix(self, cap: int = 24) -> dict:
        out = {}
        for a in self.saff_indices:
            for b in self.saff_indices:
                if a >= b:
                    continue
                va, wa = self.saff_real[a]
                vb, wb = self.saff_real[b]
                # order of the product (va,wa)(vb,wb) in Z^r ⋊ W
                pv = tuple(x + y for x, y in zip(va, self.act_w(wa, vb)))
                pw = self.w_mult[wa][wb]
                cv, cw = pv, pw
                order = None
                for k in range(1, cap + 1):
                    if cw == 0 and all(x == 0 for x in cv):
                        order = k
                        break
                    cv = tuple(x + y for x, y in zip(cv, self.act_w(cw, pv)))
                    cw = self.w_mult[cw][pw]
                out[(a, b)] = order
        return out

    def _read_parameters(self):
        params = self.cfg.affine_parameters
        want = {f"s{i}" for i in self.saff_indices}
        if set(params) != want:
            raise ValidationError(f"affine_parameters must have exactly the keys {sorted(want)}")
        self.L = {}
        for i in self.saff_indices:
            val = int(params[f"s{i}"])
            if val < 1:
                raise ValidationError("parameters must be positive integers")
            self.L[i] = val
        for (a, b), order in self.coxeter_matrix.items():
            if order is not None and order % 2 == 1 and self.L[a] != self.L[b]:
                raise ParameterBraidMismatch(
                    f"generators s{a}, s{b} satisfy an odd braid relation (m={order}) but have parameters "
                    f"{self.L[a]} != {self.L[b]}"
                )
        override = self.cfg.equal_parameters_simply_laced
        self.equal_param_simply_laced = (
            override if override is not None else self._compute_eqp_simply_laced()
        )

    def _compute_eqp_simply_laced(self) -> bool:
        if len(set(self.L.values())) > 1:
            return False
        for i in range(self.n_simple):
            for j in range(i + 1, self.n_simple):
                order = self._finite_order(i, j)
                if order > 3:
                    return False
        # a halvable coroot triggers the mixed parameter case
        for i in range(self.n_simple):
            if all(c % 2 == 0 for c in self.simple_coroots[i]):
                return False
        return True

    def _finite_order(self, i: int, j: int) -> int:
        a = self._simple_refl_index(i)
        b = self._simple_refl_index(j)
        prod = self.w_mult[a][b]
        cur, k = prod, 1
        while cur != 0:
            cur = self.w_mult[cur][prod]
            k += 1
        return k

    def _build_alcove_point(self):
        """Rational interior point p0 of the base alcove: ⟨p0, α_i⟩ = 1/(h_c+1)."""
        eps = {}
        for ci, theta in enumerate(self.theta):
            h = self.pos_root_height[theta] + 1
            eps[ci] = Fraction(1, h + 1)
        rows = [[Fraction(x) for x in self.simple_roots[i]] for i in range(self.n_simple)]
        rhs = [eps[self.comp_of_simple[i]] for i in range(self.n_simple)]
        if self.n_simple:
            sol = _solve_rational(rows, rhs)
            if sol is None:
                raise ValidationError("could not place an interior point in the base alcove")
        else:
            sol = [Fraction(0)] * self.r
        den = 1
        for x in sol:
            den = den * x.denominator // _gcd(den, x.denominator)
        self.p0_num: Vec = tuple(int(x * den) for x in sol)
        self.p0_den: int = den
        for beta in self.pos_roots:
            val = Fraction(dot(beta, self.p0_num), den)
            if not (0 < val < 1):
                raise ValidationError(f"alcove point fails 0 < <p0,{beta}> < 1")
        # floor of <u(p0), beta> is 0 or -1 according to the inversion set
        self.floor_tab = [
            tuple(dot(beta, self.act_w(u, self.p0_num)) // den for beta in self.pos_roots)
            for u in range(self.w_order)
        ]

    def _build_cone_data(self):
        """Antidominant fundamental generators ϖ_i (⟨ϖ_i, α_j⟩ = -k_i δ_ij) and
        the positive functional used to bound saturation enumeration."""
        n = self.n_simple
        self.fund_antidom: list[tuple[Vec, int]] = []
        for i in range(n):
            rows = [[Fraction(x) for x in self.simple_roots[j]] for j in range(n)]
            rhs = [Fraction(-1) if j == i else Fraction(0) for j in range(n)]
            sol = _solve_rational(rows, rhs)
            if sol is None:
                raise ValidationError("cannot solve for antidominant cone generators")
            den = 1
            for x in sol:
                den = den * x.denominator // _gcd(den, x.denominator)
            vec = tuple(int(x * den) for x in sol)
            self.fund_antidom.append((vec, den))
        self.strict_antidom: Vec = tuple(
            sum(v[k] for v, _ in self.fund_antidom) for k in range(self.r)
        ) if n else (0,) * self.r
        # f = Σ u_i α_i with ⟨α∨_j, f⟩ = D_f for all j (inverse Cartan is ≥ 0)
        if n:
            rows = [
                [Fraction(dot(self.simple_roots[i], self.simple_coroots[j])) for i in range(n)]
                for j in range(n)
            ]
            sol = _solve_rational(rows, [Fraction(1)] * n)
            if sol is None or any(c < 0 for c in sol):
                raise ValidationError("positive root functional unavailable")
            den = 1
            for x in sol:
                den = den * x.denominator // _gcd(den, x.denominator)
            coeffs = [int(x * den) for x in sol]
            self.height_functional: Vec = tuple(
                sum(coeffs[i] * self.simple_roots[i][k] for i in range(n)) for k in range(self.r)
            )
            self.height_den = den
        else:
            self.height_functional = (0,) * self.r
            self.height_den = 1
        ad_gens = self.cfg.antidominant_generators or ((self.strict_antidom,) if n else ())
        for g in ad_gens:
            if len(g) != self.r:
                raise ValidationError("antidominant_generators must be free vectors of length free_rank")
            if not self._free_antidominant(g):
                raise ValidationError(f"configured antidominant generator {g} is not antidominant")
            if all(x == 0 for x in g):
                raise ValidationError("antidominant generators must be nonzero")
        self.antidom_gens: tuple[Vec, ...] = tuple(ad_gens)

    # ------------------------------------------------------------------
    # lattice operations

    def lattice(self, free, tors=None) -> LatticeElt:
        free = tuple(int(x) for x in free)
        if len(free) != self.r:
            raise ValueError(f"free part must have length {self.r}")
        t = tuple(int(x) for x in (tors or ()))
        if len(t) < len(self.torsion):
            t = t + (0,) * (len(self.torsion) - len(t))
        if len(t) != len(self.torsion):
            raise ValueError("torsion part has wrong arity")
        t = tuple(x % n for x, n in zip(t, self.torsion))
        return LatticeElt(free, t)

    def add(self, a: LatticeElt, b: LatticeElt) -> LatticeElt:
        return LatticeElt(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % n for x, y, n in zip(a.tors, b.tors, self.torsion)),
        )

    def neg(self, a: LatticeElt) -> LatticeElt:
        return LatticeElt(
            tuple(-x for x in a.free),
            tuple((-x) % n for x, n in zip(a.tors, self.torsion)),
        )

    def act(self, wi: int, m: LatticeElt) -> LatticeElt:
        return LatticeElt(self.act_w(wi, m.free), m.tors)

    def act_word(self, word, m: LatticeElt) -> LatticeElt:
        """Apply a word in finite generators (indices 1..n, leftmost first)."""
        wi = 0
        for i in word:
            wi = self.w_mult[wi][self._simple_refl_index(i - 1)]
        return self.act(wi, m)

    def _free_antidominant(self, free: Vec) -> bool:
        return all(dot(alpha, free) <= 0 for alpha in self.simple_roots)

    def is_antidominant(self, m: LatticeElt) -> bool:
        return self._free_antidominant(m.free)

    def in_coroot_lattice(self, m: LatticeElt) -> Vec | None:
        """Integer coordinates of m over the simple coroots, if any."""
        if any(m.tors):
            return None
        n = self.n_simple
        if n == 0:
            return () if all(x == 0 for x in m.free) else None
        rows = [[Fraction(self.simple_coroots[j][k]) for j in range(n)] for k in range(self.r)]
        sol = _solve_rational(rows, [Fraction(x) for x in m.free])
        if sol is None or any(c.denominator != 1 for c in sol):
            return None
        coords = tuple(int(c) for c in sol)
        check = tuple(sum(coords[j] * self.simple_coroots[j][k] for j in range(n)) for k in range(self.r))
        return coords if check == m.free else None

    def saturation_predecessors(self, x: LatticeElt) -> list[LatticeElt]:
        """All antidominant m with m − x an N-combination of simple coroots."""
        return [m for m, _ in self.saturation_predecessors_ranked(x)]

    def saturation_predecessors_ranked(self, x: LatticeElt) -> list[tuple[LatticeElt, int]]:
        """Predecessors with their rank Σn_α, sorted by (rank, free part)."""
        if x in self._pred_cache:
            return self._pred_cache[x]
        if not self.is_antidominant(x):
            raise NotAntidominant(f"{x} is not antidominant")
        n = self.n_simple
        if n == 0:
            out = [(x, 0)]
            self._pred_cache[x] = out
            return out
        num = -dot(self.height_functional, x.free)
        bound = num // self.height_den
        found = []
        for total in range(0, bound + 1):
            for c in _compositions(total, n):
                free = tuple(
                    x.free[k] + sum(c[j] * self.simple_coroots[j][k] for j in range(n))
                    for k in range(self.r)
                )
                if self._free_antidominant(free):
                    found.append((LatticeElt(free, x.tors), total))
        found.sort(key=lambda p: (p[1], p[0].free))
        self._pred_cache[x] = found
        return found

    def saturation_le(self, m: LatticeElt, x: LatticeElt) -> bool:
        """m ≼ x in the saturation order (both antidominant)."""
        if not (self.is_antidominant(m) and self.is_antidominant(x)):
            raise NotAntidominant("saturation order compares antidominant elements")
        if m.tors != x.tors:
            return False
        diff = LatticeElt(tuple(a - b for a, b in zip(m.free, x.free)), (0,) * len(self.torsion))
        coords = self.in_coroot_lattice(diff)
        return coords is not None and all(c >= 0 for c in coords)

    def orbit(self, m: LatticeElt) -> list[LatticeElt]:
        """The W₀-orbit, sorted."""
        seen = {m}
        frontier = [m]
        while frontier:
            new = []
            for x in frontier:
                for i in range(self.n_simple):
                    y = self.act(self._simple_refl_index(i), x)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    def antidominant_rep(self, m: LatticeElt) -> LatticeElt:
        reps = [x for x in self.orbit(m) if self.is_antidominant(x)]
        if len(reps) != 1:
            raise NotAntidominant(f"orbit of {m} has {len(reps)} antidominant representatives")
        return reps[0]

    def antidominant_set(self, height: int) -> list[tuple[LatticeElt, int]]:
        """Antidominant elements of height ≤ H with their heights, sorted.

        The height of x is the least Σn_i over expansions x = Σ n_i g_i in the
        configured antidominant generators, crossed with every torsion tuple.
        """
        if height < 0:
            raise ValueError("height bound must be >= 0")
        gens = self.antidom_gens
        best: dict[Vec, int] = {(0,) * self.r: 0}
        for total in range(1, height + 1):
            for c in _compositions(total, len(gens)):
                free = tuple(sum(c[j] * gens[j][k] for j in range(len(gens))) for k in range(self.r))
                if free not in best:
                    best[free] = total
        tors_space = list(itertools.product(*(range(n) for n in self.torsion))) or [()]
        out = []
        for free, h in best.items():
            for t in tors_space:
                out.append((LatticeElt(free, tuple(t)), h))
        out.sort(key=lambda p: (p[1], p[0]))
        return out

    # ------------------------------------------------------------------

    def omega_data(self) -> dict:
        """Ω-relevant invariants: how far Λ is from the coroot lattice."""
        n = self.n_simple
        free_quotient_rank = self.r - n
        tors = list(self.torsion)
        divisors = []
        if n:
            m = [list(v) for v in self.simple_coroots]
            d, _ = smith_normal_form([row[:] for row in m])
            divisors = [x for x in d if x not in (0, 1)]
        return {
            "free_rank": self.r,
            "coroot_rank": n,
            "omega_free_rank": free_quotient_rank,
            "coroot_index_divisors": divisors,
            "torsion_invariants": tors,
        }

    def content_hash(self) -> str:
        import hashlib

        blob = json.dumps(self.cfg.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self):
        return f"Datum({self.name}, |W0|={self.w_order}, rank={self.r}, torsion={list(self.torsion)})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) or 1


def _rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def smith_normal_form(m: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalize m by unimodular row/column operations.

    Returns (diag, V) where V is the accumulated right (column) transform,
    so that the quotient Z^cols / rowspace(m) is ⊕ Z/diag[j] in coordinates
    x ↦ x·V.  Only the column transform is tracked; rows are not needed.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    diag = []

    def col_op(j1, j2, f):  # col_j2 -= f * col_j1
        for i in range(rows):
            m[i][j2] -= f * m[i][j1]
        for i in range(cols):
            v[i][j2] -= f * v[i][j1]

    def col_swap(j1, j2):
        for i in range(rows):
            m[i][j1], m[i][j2] = m[i][j2], m[i][j1]
        for i in range(cols):
            v[i][j1], v[i][j2] = v[i][j2], v[i][j1]

    t = 0
    while t < min(rows, cols):
        # locate a nonzero pivot of minimal magnitude
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        if bj != t:
            col_swap(t, bj)
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                f = m[i][t] // m[t][t]
                for j in range(cols):
                    m[i][j] -= f * m[t][j]
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                f = m[t][j] // m[t][t]
                col_op(t, j, f)
                if m[t][j]:
                    dirty = True
        if dirty or any(m[i][t] for i in range(t + 1, rows)) or any(m[t][j] for j in range(t + 1, cols)):
            continue
        t += 1
    for j in range(cols):
        diag.append(abs(m[j][j]) if j < rows else 0)
    return diag, v


def build_datum(cfg: RootDatum, max_weyl_order: int = 100000) -> Datum:
    return Datum(cfg, max_weyl_order=max_weyl_order)


def validate_datum(cfg: RootDatum, max_weyl_order: int = 100000) -> ValidationReport:
    """Run every structural check; never raises."""
    try:
        datum = build_datum(cfg, max_weyl_order=max_weyl_order)
    except Exception as exc:  # noqa: BLE001 - report carries the typed error
        return ValidationReport(ok=False, name=cfg.name, error=exc, messages=[f"{type(exc).__name__}: {exc}"])
    cox = {f"s{a},s{b}": (order if order is not None else "inf") for (a, b), order in datum.coxeter_matrix.items()}
    return ValidationReport(
        ok=True,
        name=cfg.name,
        weyl_order=datum.w_order,
        coxeter_matrix=cox,
        omega_data=datum.omega_data(),
        messages=[],
        datum=datum,
    )


# ----------------------------------------------------------------------
# bundled data

BUNDLED_NAMES = ("a1", "a1_torsion2", "gl2", "a2", "c2", "a1_unequal")


def bundled_datum_path(name: str) -> str:
    import os

    return os.path.join(os.path.dirname(__file__), "data", f"{name}.json")


def load_datum_file(path: str) -> Datum:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    cfg = RootDatum.from_dict(raw)
    report = validate_datum(cfg)
    if not report.ok:
        raise ValidationError(f"datum {cfg.name}: {report.messages[0]}") from report.error
    return report.datum


def load_bundled(name: str) -> Datum:
    if name not in BUNDLED_NAMES:
        raise ValueError(f"unknown bundled datum {name!r}; choose from {BUNDLED_NAMES}")
    return load_datum_file(bundled_datum_path(name))

"""One-stop construction and caching of the computation stack for a datum.

An Engine bundles the validated datum with its Weyl group, Hecke algebra,
Bernstein module and parahoric layer, so suites and the CLI share memo
tables.  When PARAHECKE_CACHE_DIR is set, Θ-element and Θ·1_K product
tables persist across processes, keyed by a datum content hash and a format
version (stale files are simply never read).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

from .affweyl import AffineWeylGroup, ExtWeylElt
from .bernstein import Bernstein
from .hecke import HeckeElt, IwahoriHecke
from .parahoric import Parahoric
from .ringcore import LaurentPoly
from .rootdatum import BUNDLED_NAMES, Datum, LatticeElt, load_bundled, load_datum_file

__all__ = ["Engine", "engine_for", "load_engine", "CACHE_ENV", "CACHE_VERSION"]

CACHE_ENV = "PARAHECKE_CACHE_DIR"
CACHE_VERSION = 1

_REGISTRY: dict = {}


@dataclass
class Engine:
    datum: Datum
    weyl: AffineWeylGroup
    hecke: IwahoriHecke
    bern: Bernstein
    para: Parahoric

    # -- persisted memo tables -------------------------------------------

    def _cache_path(self, cache_dir: str) -> str:
        return os.path.join(cache_dir, f"parahecke-v{CACHE_VERSION}-{self.datum.content_hash()}.json")

    def load_cache(self, cache_dir: str | None = None) -> bool:
        cache_dir = cache_dir or os.environ.get(CACHE_ENV)
        if not cache_dir:
            return False
        path = self._cache_path(cache_dir)
        if not os.path.exists(path):
            return False
        try:
            with open(path, "r", encoding="utf-8") as fh:
                blob = json.load(fh)
        except (OSError, ValueError):
            return False
        if blob.get("version") != CACHE_VERSION or blob.get("datum") != self.datum.content_hash():
            return False
        for key, terms in blob.get("theta", []):
            m = _lattice_from(key)
            self.bern._theta.setdefault(m, self._hecke_from(terms))
        for jkey, key, terms in blob.get("theta_oneK", []):
            m = _lattice_from(key)
            self.para._theta_oneK.setdefault((tuple(jkey), m), self._hecke_from(terms))
        return True

    def save_cache(self, cache_dir: str | None = None) -> bool:
        cache_dir = cache_dir or os.environ.get(CACHE_ENV)
        if not cache_dir:
            return False
        os.makedirs(cache_dir, exist_ok=True)
        blob = {
            "version": CACHE_VERSION,
            "datum": self.datum.content_hash(),
            "theta": [
                [_lattice_to(m), self._hecke_to(h)] for m, h in sorted(self.bern._theta.items())
            ],
            "theta_oneK": [
                [list(j), _lattice_to(m), self._hecke_to(h)]
                for (j, m), h in sorted(self.para._theta_oneK.items())
            ],
        }
        path = self._cache_path(cache_dir)
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(blob, fh)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            return False
        return True

    def _hecke_to(self, h: HeckeElt) -> list:
        return [
            [list(w.free), list(w.tors), w.w, p.to_pairs()] for w, p in sorted(h.d.items())
        ]

    def _hecke_from(self, terms) -> HeckeElt:
        d = {}
        for free, tors, wi, pairs in terms:
            d[ExtWeylElt(tuple(free), tuple(tors), int(wi))] = LaurentPoly.from_pairs(pairs)
        return HeckeElt(self.hecke, d)


def _lattice_to(m: LatticeElt) -> list:
    return [list(m.free), list(m.tors)]


def _lattice_from(key) -> LatticeElt:
    return LatticeElt(tuple(key[0]), tuple(key[1]))


def engine_for(datum: Datum) -> Engine:
    key = datum.content_hash()
    got = _REGISTRY.get(key)
    if got is not None:
        return got
    weyl = AffineWeylGroup(datum)
    hecke = IwahoriHecke(weyl)
    bern = Bernstein(hecke)
    para = Parahoric(bern)
    eng = Engine(datum=datum, weyl=weyl, hecke=hecke, bern=bern, para=para)
    _REGISTRY[key] = eng
    return eng


def load_engine(source: str) -> Engine:
    """Engine from a bundled name or a datum file path."""
    if source in BUNDLED_NAMES:
        return engine_for(load_bundled(source))
    return engine_for(load_datum_file(source))

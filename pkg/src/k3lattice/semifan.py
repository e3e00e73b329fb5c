"""Semifan data and validators.

Two flavours are supported:

* ball case (order n > 2): rank-2 isotropic J -> primitive F_J in J^perp/J.
  F_J is stored through its preimage P_J = J + lift(F_J), a saturated
  subgroup of the ambient with J <= P_J <= J^perp. F_J = 0 means P_J = J,
  F_J = J^perp/J means P_J = J^perp.
* fan case (order 2, Type IV): rank-1 isotropic J -> finite list of cones
  in the closure of the positive cone of J^perp/J.

Rays, hyperplanes and reference vectors are ambient vectors lying in
J^perp. A hyperplane h stands for the functional x -> x.h on J^perp/J; a
cone is {x in closure(C+) : x.h >= 0 for its hyperplanes}. The component
C+ is the one pairing positively with the reference vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Sequence

from . import intmat
from .cusps import IsotropicSublattice, classify_cusp
from .isometry import Isometry, eigenlattice_decomposition, preserves_form
from .lattice import (Lattice, LatticeError, Sublattice, intersection, orthogonal_complement,
                      quotient_lattice, saturate)

GLOBAL, PER_CONE = "global", "cone"
INCONSISTENT = "inconsistent"


class SemifanError(LatticeError):
    """Malformed semifan data, or an entry required by a check is missing."""


# ---------------------------------------------------------------- group data

@dataclass(frozen=True)
class GroupData:
    """Finitely many isometries generating the group that is checked.

    Generators need not have finite order. With ``rho`` set, every
    generator must commute with it.
    """
    lattice: Lattice
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    rho: Isometry | None = None

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in r) for r in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for k, g in enumerate(gens):
            if len(g) != self.lattice.rank or not preserves_form(self.lattice, g):
                raise SemifanError(f"generator {k} is not an isometry of the lattice")
            if self.rho is not None:
                M = self.rho.M()
                if intmat.matmul(g, M) != intmat.matmul(M, g):
                    raise SemifanError(f"generator {k} does not commute with rho")


def _apply(g, v) -> list[int]:
    return intmat.matvec(g, v)


def _image(S: Sublattice, g) -> Sublattice:
    return S.image(g)


@dataclass(frozen=True)
class Violation:
    kind: str
    J: tuple[tuple[int, ...], ...]
    generator: int
    detail: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class InvarianceReport:
    violations: tuple[Violation, ...]
    missing: tuple[Violation, ...]

    @property
    def invariant(self) -> bool:
        return not self.violations

    @property
    def complete(self) -> bool:
        return not self.missing

    @property
    def passed(self) -> bool:
        return self.invariant and self.complete


# ---------------------------------------------------------------- ball case

def _perp_in(J: Sublattice, domain: Sublattice | None) -> Sublattice:
    perp = orthogonal_complement(J)
    if domain is None:
        return perp
    return saturate(intersection(perp, domain))


@dataclass(frozen=True)
class BallEntry:
    J: IsotropicSublattice
    preimage: Sublattice

    @property
    def F_rank(self) -> int:
        return self.preimage.rank - self.J.rank

    def F_rows(self) -> list[list[int]]:
        """Ambient representatives of a basis of F_J."""
        Q = quotient_lattice(self.J.sub)
        coords = [Q.project(v) for v in self.preimage.basis]
        return [Q.lift(c) for c in intmat.hnf(coords)]


@dataclass(frozen=True)
class SemifanBallCase:
    lattice: Lattice
    entries: tuple[BallEntry, ...]
    domain: Sublattice | None = None

    def __post_init__(self):
        keys = [e.J.key() for e in self.entries]
        if len(set(keys)) != len(keys):
            raise SemifanError("two entries share the same J")
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e.J.key())))

    def get(self, J: Sublattice | IsotropicSublattice) -> BallEntry | None:
        k = J.key()
        return next((e for e in self.entries if e.J.key() == k), None)

    def perp(self, J: IsotropicSublattice) -> Sublattice:
        return _perp_in(J.sub, self.domain)


def ball_entry(L: Lattice, J_rows, F_rows, domain: Sublattice | None = None) -> BallEntry:
    J = IsotropicSublattice.of(L, J_rows)
    if J.rank != 2:
        raise SemifanError("ball-case cusps are rank-2 isotropic sublattices")
    if domain is not None and not all(domain.contains(v) for v in J.sub.basis):
        raise SemifanError("J does not lie in the domain lattice")
    perp = _perp_in(J.sub, domain)
    vecs = [list(map(int, v)) for v in F_rows]
    for v in vecs:
        if not perp.contains(v):
            raise SemifanError("F_J vector does not lie in J^perp")
    P = Sublattice.of(L, intmat.hnf(vecs + J.rows()))
    if not P.is_saturated():
        raise SemifanError("F_J is not primitive in J^perp/J")
    return BallEntry(J, P)


def extreme_ball_semifan(L: Lattice, Js, full: bool, domain: Sublattice | None = None):
    """F_J = 0 everywhere (full=False, toroidal) or F_J = J^perp/J (full=True, Baily-Borel)."""
    entries = []
    for rows in Js:
        J = rows if isinstance(rows, IsotropicSublattice) else IsotropicSublattice.of(L, rows)
        F = _perp_in(J.sub, domain).rows() if full else []
        entries.append(ball_entry(L, J.rows(), F, domain))
    return SemifanBallCase(L, tuple(entries), domain)


def check_invariance_ball(sf: SemifanBallCase, G: GroupData) -> InvarianceReport:
    violations, missing = [], []
    for k, g in enumerate(G.generators):
        for e in sf.entries:
            gJ = _image(e.J.sub, g)
            target = sf.get(gJ)
            if target is None:
                missing.append(Violation("missing", e.J.key(), k, {"image_J": gJ.key()}))
                continue
            gP = _image(e.preimage, g)
            if not gP.same_subgroup(target.preimage):
                violations.append(Violation("not_invariant", e.J.key(), k, {
                    "image_J": gJ.key(),
                    "image_F_preimage": gP.key(),
                    "expected_F_preimage": target.preimage.key(),
                }))
    return InvarianceReport(tuple(violations), tuple(missing))


# ---------------------------------------------------------------- fan case

@dataclass(frozen=True)
class Cone:
    rays: tuple[tuple[int, ...], ...]
    hyperplanes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Fan:
    J: IsotropicSublattice
    cones: tuple[Cone, ...]
    reference: tuple[int, ...]
    validity: str = "finite fragment as supplied"


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = intmat.content(v)
    return tuple(x // g for x in v) if g else tuple(v)


class _QuotientCache:
    def __init__(self):
        self._q = {}

    def __call__(self, J: IsotropicSublattice):
        k = J.key()
        if k not in self._q:
            self._q[k] = quotient_lattice(J.sub)
        return self._q[k]


def _cone_key(Q, L: Lattice, rays, hyps):
    r = sorted({_primitive(Q.project(v)) for v in rays})
    h = sorted({_primitive([L.pair(rep, v) for rep in Q.reps]) for v in hyps})
    return (tuple(r), tuple(h))


def make_fan(L: Lattice, J_rows, cones, reference, validity: str | None = None) -> Fan:
    """Validate and build a fan at a rank-1 isotropic J.

    ``cones`` is a list of (rays, hyperplanes) pairs of ambient vectors.
    """
    J = IsotropicSublattice.of(L, J_rows)
    if J.rank != 1:
        raise SemifanError("fan-case cusps are rank-1 isotropic sublattices")
    perp = orthogonal_complement(J.sub)
    ref = [int(x) for x in reference]
    if not perp.contains(ref) or L.norm(ref) <= 0:
        raise SemifanError("reference vector must lie in J^perp with positive square")
    Q = quotient_lattice(J.sub)
    built = []
    for ci, (rays, hyps) in enumerate(cones):
        rays = [[int(x) for x in v] for v in rays]
        hyps = [[int(x) for x in v] for v in hyps]
        for v in rays:
            if not perp.contains(v) or not any(Q.project(v)):
                raise SemifanError(f"cone {ci}: ray is not a nonzero class in J^perp/J")
            if L.norm(v) < 0 or L.pair(v, ref) < 0:
                raise SemifanError(f"cone {ci}: ray is outside the closure of the positive cone")
        for h in hyps:
            if not perp.contains(h) or not any(L.pair(rep, h) for rep in Q.reps):
                raise SemifanError(f"cone {ci}: hyperplane is not a nonzero functional on J^perp/J")
            if any(L.pair(v, h) < 0 for v in rays):
                raise SemifanError(f"cone {ci}: a ray lies on the wrong side of a hyperplane")
            if rays and all(L.pair(v, h) != 0 for v in rays):
                raise SemifanError(f"cone {ci}: hyperplane does not vanish on any ray")
        built.append(Cone(tuple(map(tuple, rays)), tuple(map(tuple, hyps))))
    return Fan(J, tuple(built), tuple(ref), validity or "finite fragment as supplied")


@dataclass(frozen=True)
class SemifanTypeIVCase:
    lattice: Lattice
    fans: tuple[Fan, ...]

    def __post_init__(self):
        keys = [f.J.key() for f in self.fans]
        if len(set(keys)) != len(keys):
            raise SemifanError("two fans share the same J")
        object.__setattr__(self, "fans", tuple(sorted(self.fans, key=lambda f: f.J.key())))

    def get(self, J: Sublattice | IsotropicSublattice) -> Fan | None:
        k = J.key()
        return next((f for f in self.fans if f.J.key() == k), None)


def trivial_fan(L: Lattice, J_rows, reference) -> Fan:
    """A single cone equal to the whole closure of C+: no rays, no hyperplanes."""
    return make_fan(L, J_rows, [([], [])], reference)


def check_invariance_fan(sf: SemifanTypeIVCase, G: GroupData) -> InvarianceReport:
    """Each generator must carry the fan at J onto the fan at g(J), cone for cone.

    If g sends C+ at J to -C+ at g(J), the comparison uses -g, which acts
    the same way on the period domain.
    """
    L = sf.lattice
    quot = _QuotientCache()
    violations, missing = [], []
    for k, g in enumerate(G.generators):
        for fan in sf.fans:
            gJ = _image(fan.J.sub, g)
            target = sf.get(gJ)
            if target is None:
                missing.append(Violation("missing", fan.J.key(), k, {"image_J": gJ.key()}))
                continue
            sign = 1 if L.pair(_apply(g, fan.reference), target.reference) > 0 else -1
            Qt = quot(target.J)

            def img(vs):
                return [[sign * x for x in _apply(g, v)] for v in vs]

            images = [_cone_key(Qt, L, img(c.rays), img(c.hyperplanes)) for c in fan.cones]
            expected = [_cone_key(Qt, L, c.rays, c.hyperplanes) for c in target.cones]
            if sorted(images) != sorted(expected):
                bad = [i for i, key in enumerate(images) if key not in expected]
                violations.append(Violation("not_invariant", fan.J.key(), k, {
                    "image_J": gJ.key(),
                    "cones_not_matched": bad if bad else list(range(len(images))),
                }))
    return InvarianceReport(tuple(violations), tuple(missing))


def image_semifan(sf: SemifanTypeIVCase, g) -> SemifanTypeIVCase:
    """Push every fan forward along the isometry g."""
    L = sf.lattice
    fans = []
    for f in sf.fans:
        cones = [([_apply(g, v) for v in c.rays], [_apply(g, h) for h in c.hyperplanes])
                 for c in f.cones]
        fans.append(make_fan(L, _image(f.J.sub, g).rows(), cones, _apply(g, f.reference),
                             f.validity))
    return SemifanTypeIVCase(L, tuple(fans))


# ---------------------------------------------------------------- compatibility

def rank_one_subs(Jprime: IsotropicSublattice, bound: int = 1) -> list[IsotropicSublattice]:
    """Primitive rank-1 J in J' from primitive coefficient pairs with |a|, |b| <= bound, up to sign."""
    if Jprime.rank != 2:
        raise SemifanError("J' must have rank 2")
    u, w = Jprime.sub.basis
    out = {}
    for a, b in product(range(-bound, bound + 1), repeat=2):
        if (a, b) == (0, 0) or gcd(a, b) != 1 or (a, b)[0 if a else 1] < 0:
            continue
        v = [a * x + b * y for x, y in zip(u, w)]
        J = IsotropicSublattice.of(Jprime.ambient, [v])
        out.setdefault(J.key(), J)
    return [out[k] for k in sorted(out)]


@dataclass(frozen=True)
class CompatibilityResult:
    Jprime: IsotropicSublattice
    compatible: bool
    induced: Sublattice | str
    per_J: tuple[tuple[IsotropicSublattice, Sublattice], ...]
    mode: str
    bound: int

    @property
    def induced_rank(self) -> int | None:
        """Rank of F_{J'} in (J')^perp/J'."""
        return None if isinstance(self.induced, str) else self.induced.rank - 2


def _descent(fan: Fan, Jp: IsotropicSublattice, mode: str, Q) -> Sublattice:
    L = fan.J.ambient
    rowsG = [intmat.matvec(L.gram, v) for v in Jp.sub.basis]
    if mode == GLOBAL:
        hyps = [h for c in fan.cones for h in c.hyperplanes
                if all(L.pair(h, v) == 0 for v in Jp.sub.basis)]
    elif mode == PER_CONE:
        # w: generator of J'/J oriented into the closure of C+.
        coords = [Q.project(v) for v in Jp.sub.basis]
        w_q = next(_primitive(c) for c in coords if any(c))
        w = Q.lift(w_q)
        if L.pair(w, fan.reference) < 0:
            w = [-x for x in w]
        hyps = [h for c in fan.cones if all(L.pair(w, x) >= 0 for x in c.hyperplanes)
                for h in c.hyperplanes if L.pair(h, w) == 0]
    else:
        raise ValueError(f"unknown compatibility mode {mode!r}")
    rows = rowsG + [intmat.matvec(L.gram, h) for h in hyps]
    return Sublattice.of(L, intmat.integer_kernel(rows), primitive=True)


def compatibility_along(sf: SemifanTypeIVCase, Jprime: IsotropicSublattice, bound: int = 1,
                        mode: str = GLOBAL) -> CompatibilityResult:
    """Descend the fans at every rank-1 J inside J' to (J')^perp/J' and compare.

    For each J: take the fan hyperplanes h with h.J' = 0 (in ``cone`` mode,
    only those of cones containing the ray J'/J), intersect their kernels
    with (J')^perp and read the result in (J')^perp/J'. The result is
    returned through its saturated preimage in the ambient lattice.
    """
    quot = _QuotientCache()
    per = []
    for J in rank_one_subs(Jprime, bound):
        fan = sf.get(J)
        if fan is None:
            raise SemifanError(f"no fan for the rank-1 isotropic J = {J.rows()} inside J'")
        per.append((J, _descent(fan, Jprime, mode, quot(fan.J))))
    keys = {P.key() for _, P in per}
    if len(keys) == 1:
        return CompatibilityResult(Jprime, True, per[0][1], tuple(per), mode, bound)
    return CompatibilityResult(Jprime, False, INCONSISTENT, tuple(per), mode, bound)


# ---------------------------------------------------------------- pullback

def pullback_semifan(source, rho: Isometry, cusps=None, bound: int = 1,
                     mode: str = GLOBAL) -> SemifanBallCase:
    """Ball-case semifan on T_rho induced from data on the whole lattice.

    ``source`` is a SemifanTypeIVCase (F_{J} obtained from compatibility
    along J) or a SemifanBallCase on the ambient lattice. The restriction
    rule: intersect the preimage of F_J with T_rho, keep the part stable
    under all powers of rho, saturate.
    """
    dec = eigenlattice_decomposition(rho)
    T = dec.transcendental
    L = rho.lattice
    if cusps is None:
        if not isinstance(source, SemifanBallCase):
            raise SemifanError("cusps must be given when pulling back fan data")
        cusps = [e.J for e in source.entries]
    entries = []
    for J in cusps:
        J = J if isinstance(J, IsotropicSublattice) else IsotropicSublattice.of(L, J)
        report = classify_cusp(J, rho, T)
        if not report.admissible:
            raise SemifanError(f"cusp {J.rows()} is not admissible for rho")
        if isinstance(source, SemifanTypeIVCase):
            res = compatibility_along(source, J, bound, mode)
            if not res.compatible:
                raise SemifanError(f"fan data is inconsistent along {J.rows()}")
            P = res.induced
        else:
            e = source.get(J)
            if e is None:
                raise SemifanError(f"no entry for cusp {J.rows()}")
            P = e.preimage
        X0 = intersection(P, T)
        X = X0
        for k in range(1, rho.order):
            X = intersection(X, X0.image(rho.power(k).M()))
        X = saturate(X)
        entries.append(ball_entry(L, J.rows(), X.rows(), T))
    return SemifanBallCase(L, tuple(entries), T)

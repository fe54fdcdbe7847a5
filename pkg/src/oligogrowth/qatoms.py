"""Finite-cover atoms over the reducts of the rational order.

An atom is the group acting on F x Q whose base image is the automorphism
group of one of the five reducts and whose kernel consists of the fiber
permutations that lie in L and agree modulo H across all fibers. Betweenness
and separation bases carry a flip decoration tau; cyclic and separation bases
carry a turn decoration sigma.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import FiberMismatch, OutOfRange, SpecInvalid
from .permgrp import (FiniteGroup, Permutation, all_subgroups_up_to_conjugacy, alternating_group,
                      closure, group_relations, is_highly_set_transitive, normalizes,
                      symmetric_group)


class QReduct(enum.Enum):
    ORDER = "order"
    BETW = "betw"
    CYC = "cyc"
    SEP = "sep"
    EQ = "eq"

    @property
    def dsl(self) -> str:
        return {"order": "<", "eq": "sym"}.get(self.value, self.value)

    @classmethod
    def parse(cls, text: str) -> QReduct:
        t = text.strip().lower()
        aliases = {"<": "order", "sym": "eq", "=": "eq"}
        return cls(aliases.get(t, t))

    @property
    def has_flip(self) -> bool:
        return self in (QReduct.BETW, QReduct.SEP)

    @property
    def has_turn(self) -> bool:
        return self in (QReduct.CYC, QReduct.SEP)


# orientation-preserving part of each base, and the index-two extension of it
ROTATION_PART = {QReduct.BETW: QReduct.ORDER, QReduct.SEP: QReduct.CYC}
FLIP_EXTENSION = {v: k for k, v in ROTATION_PART.items()}


def _gens_key(G: FiniteGroup) -> tuple:
    return tuple(sorted(g.images for g in G.generators))


@dataclass(frozen=True, eq=False)
class FiberCoverSpec:
    fiber: int
    H: FiniteGroup
    L: FiniteGroup
    base: QReduct = QReduct.ORDER
    flip: Permutation | None = None
    turn: Permutation | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if isinstance(self.base, str):
            object.__setattr__(self, "base", QReduct.parse(self.base))
        # a reflecting base without an explicit flip lifts the reflection with identity fibers
        if self.base.has_flip and self.flip is None and self.fiber >= 1:
            object.__setattr__(self, "flip", Permutation.identity(self.fiber))

    def key(self) -> tuple:
        return (self.fiber, _gens_key(self.H), _gens_key(self.L), self.base.value,
                self.flip.images if self.flip else None, self.turn.images if self.turn else None)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberCoverSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @property
    def tilde_L(self) -> FiniteGroup:
        """L extended by the flip, when there is one."""
        gens = list(self.L.generators)
        if self.flip is not None:
            gens.append(self.flip)
        return closure(gens, degree=self.fiber)

    def to_json(self) -> dict:
        out = {"fiber": self.fiber, "H": [str(g) for g in self.H.generators],
               "L": [str(g) for g in self.L.generators], "base": self.base.value}
        if self.flip is not None:
            out["flip"] = str(self.flip)
        if self.turn is not None:
            out["turn"] = str(self.turn)
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> FiberCoverSpec:
        if isinstance(data, str):
            data = json.loads(data)
        k = int(data["fiber"])
        H = FiniteGroup(k, tuple(Permutation.parse(s, k) for s in data.get("H", [])))
        L = FiniteGroup(k, tuple(Permutation.parse(s, k) for s in data.get("L", [])))
        flip = Permutation.parse(data["flip"], k) if data.get("flip") is not None else None
        turn = Permutation.parse(data["turn"], k) if data.get("turn") is not None else None
        return cls(k, H, L, QReduct.parse(data.get("base", "order")), flip, turn)

    def __repr__(self) -> str:
        bits = [f"F={self.fiber}", f"H=<{','.join(map(str, self.H.generators))}>",
                f"L=<{','.join(map(str, self.L.generators))}>", f"base={self.base.value}"]
        if self.flip is not None:
            bits.append(f"flip={self.flip}")
        if self.turn is not None:
            bits.append(f"turn={self.turn}")
        return f"FiberCoverSpec({', '.join(bits)})"


def make_spec(fiber: int, H: FiniteGroup | None = None, L: FiniteGroup | None = None,
              base: QReduct | str = QReduct.ORDER, flip: Permutation | str | None = None,
              turn: Permutation | str | None = None) -> FiberCoverSpec:
    """Convenience constructor; missing groups default to the trivial group."""
    H = H if H is not None else FiniteGroup(fiber)
    L = L if L is not None else H
    if isinstance(flip, str):
        flip = Permutation.parse(flip, fiber)
    if isinstance(turn, str):
        turn = Permutation.parse(turn, fiber)
    return FiberCoverSpec(fiber, H, L, QReduct.parse(base) if isinstance(base, str) else base,
                          flip, turn)


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: str | None = None

    def __str__(self) -> str:
        return self.condition if self.witness is None else f"{self.condition} (witness {self.witness})"


def validate_spec(spec: FiberCoverSpec) -> list[Violation]:
    """Empty list when the spec is a valid atom."""
    return list(_validate_cached(spec))


@lru_cache(maxsize=4096)
def _validate_cached(spec: FiberCoverSpec) -> tuple[Violation, ...]:
    return tuple(_validate(spec))


def _validate(spec: FiberCoverSpec) -> list[Violation]:
    out: list[Violation] = []
    k = spec.fiber
    for name, grp in (("H", spec.H), ("L", spec.L)):
        if grp.degree != k:
            out.append(Violation(f"{name} has degree {grp.degree}, fiber is {k}"))
    for name, p in (("flip", spec.flip), ("turn", spec.turn)):
        if p is not None and p.degree != k:
            out.append(Violation(f"{name} has degree {p.degree}, fiber is {k}"))
    if out:
        return out
    rel = group_relations(spec.H, spec.L)
    if not rel.is_subgroup:
        bad = next(g for g in spec.H.generators if g not in spec.L)
        return out + [Violation("H is not a subgroup of L", str(bad))]
    if not rel.is_normal:
        out.append(Violation("H is not normal in L"))
    if spec.base is QReduct.EQ:
        if spec.flip is not None:
            out.append(Violation("the symmetric base admits no flip"))
        if spec.turn is not None:
            out.append(Violation("the symmetric base admits no turn"))
        return out
    if spec.flip is not None and not spec.base.has_flip:
        out.append(Violation(f"flip not allowed for base {spec.base.value}"))
    if spec.base.has_turn and spec.turn is None:
        out.append(Violation(f"base {spec.base.value} requires a turn"))
    if spec.turn is not None and not spec.base.has_turn:
        out.append(Violation(f"turn not allowed for base {spec.base.value}"))
    tau = spec.flip
    if tau is not None and spec.base.has_flip:
        if not normalizes(tau, spec.H):
            out.append(Violation("flip does not normalize H", str(tau)))
        if not normalizes(tau, spec.L):
            out.append(Violation("flip does not normalize L", str(tau)))
        if tau * tau not in spec.L:
            out.append(Violation("flip squared is not in L", str(tau * tau)))
        # H is then normal in the flip extension too: L and the flip both normalize it
    sigma = spec.turn
    if sigma is not None and spec.base.has_turn:
        if sigma not in spec.L:
            out.append(Violation("turn is not in L", str(sigma)))
        else:
            sinv = sigma.inverse()
            # the elements commuting with sigma modulo H form a subgroup, so generators suffice
            for ell in spec.L.generators:
                comm = sinv * ell.inverse() * sigma * ell
                if comm not in spec.H:
                    out.append(Violation("turn commutator leaves H", str(ell)))
                    break
    if tau is not None and sigma is not None and spec.base is QReduct.SEP:
        # the flip must conjugate the turn to its inverse modulo the kernel
        twist = tau * sigma * tau.inverse() * sigma
        if twist not in spec.H:
            out.append(Violation("flip does not invert the turn modulo H", str(twist)))
    return out


def is_valid(spec: FiberCoverSpec) -> bool:
    return not validate_spec(spec)


def require_valid(spec: FiberCoverSpec) -> FiberCoverSpec:
    problems = validate_spec(spec)
    if problems:
        raise SpecInvalid(problems)
    return spec


# -- highly set-transitive catalog --------------------------------------------

PGL28_GENERATORS = ("(0 1)(2 3)(4 5)(6 7)", "(1 2 4 3 6 7 5)", "(0 8)(2 5)(3 6)(4 7)")
FROBENIUS_GF8 = "(2 4 6)(3 5 7)"
AGL15_GENERATORS = ("(0 1 2 3 4)", "(1 2 4 3)")
# x+1, 2x and -1/x on the projective line over GF(5), point 5 is infinity
PGL25_GENERATORS = ("(0 1 2 3 4)", "(1 2 4 3)", "(0 5)(1 4)")


@lru_cache(maxsize=None)
def agl_1_5() -> FiniteGroup:
    return FiniteGroup(5, tuple(Permutation.parse(s, 5) for s in AGL15_GENERATORS))


@lru_cache(maxsize=None)
def pgl_2_5() -> FiniteGroup:
    return FiniteGroup(6, tuple(Permutation.parse(s, 6) for s in PGL25_GENERATORS))


@lru_cache(maxsize=None)
def pgl_2_8() -> FiniteGroup:
    """Projective line over GF(8): points 0..7 are field elements in bit form, 8 is infinity."""
    return FiniteGroup(9, tuple(Permutation.parse(s, 9) for s in PGL28_GENERATORS))


@lru_cache(maxsize=None)
def pgaml_2_8() -> FiniteGroup:
    gens = PGL28_GENERATORS + (FROBENIUS_GF8,)
    return FiniteGroup(9, tuple(Permutation.parse(s, 9) for s in gens))


def hst_catalog(n: int) -> list[FiniteGroup]:
    """All highly set-transitive groups of degree n, up to conjugacy."""
    if not 1 <= n <= 12:
        raise OutOfRange(f"catalog covers degrees 1..12, got {n}")
    out = [symmetric_group(n)]
    if n >= 3:
        out.append(alternating_group(n))
    if n == 5:
        out.append(agl_1_5())
    if n == 6:
        out.append(pgl_2_5())
    if n == 9:
        out.extend([pgl_2_8(), pgaml_2_8()])
    return out


def hst_name(G: FiniteGroup, order: int | None = None) -> str:
    n, order = G.degree, G.order if order is None else order
    if order == math.factorial(n):
        return f"S{n}"
    if n >= 3 and order * 2 == math.factorial(n):
        return f"A{n}"
    return {(5, 20): "AGL(1,5)", (6, 120): "PGL(2,5)", (9, 504): "PGL(2,8)", (9, 1512): "PGammaL(2,8)"}.get(
        (n, order), f"degree {n} order {order}")


def special_pairs(n: int) -> list[tuple[FiniteGroup, FiniteGroup]]:
    """The pairs H < L of highly set-transitive groups with H normal in L."""
    out = []
    if n >= 3:
        out.append((alternating_group(n), symmetric_group(n)))
    if n == 9:
        out.append((pgl_2_8(), pgaml_2_8()))
    return out


@dataclass(frozen=True)
class CatalogEntry:
    spec: FiberCoverSpec
    item: str
    reduct: str
    p_oligomorphic: bool = False


def _decorated(fiber: int, H, L, R: str, flip=None, turn=None) -> FiberCoverSpec:
    """Spec for the kernel over Aut(Q;R), optionally extended by a flip or turn."""
    ident = Permutation.identity(fiber)
    base = {"<": QReduct.ORDER, "betw": QReduct.BETW, "cyc": QReduct.CYC, "sep": QReduct.SEP}[R]
    tau = ident if base.has_flip else None
    sigma = ident if base.has_turn else None
    if flip is not None:
        base = FLIP_EXTENSION[base]
        tau = flip
    if turn is not None:
        base = {QReduct.ORDER: QReduct.CYC, QReduct.BETW: QReduct.SEP}[base]
        sigma = turn
    return FiberCoverSpec(fiber, H, L, base, tau, sigma)


MAX_EQ_FAMILY_FIBER = 5


def eq_family(fiber: int) -> list[CatalogEntry]:
    """Symmetric-base atoms for every H normal in L, L up to conjugacy in Sym(F)."""
    if fiber > MAX_EQ_FAMILY_FIBER:
        pairs = [(G, G) for G in hst_catalog(fiber)] + special_pairs(fiber)
    else:
        pairs = []
        for L in all_subgroups_up_to_conjugacy(symmetric_group(fiber)):
            for H in all_subgroups_up_to_conjugacy(L):
                if group_relations(H, L).is_normal:
                    pairs.append((H, L))
    return [CatalogEntry(FiberCoverSpec(fiber, H, L, QReduct.EQ), "i", "eq", True)
            for H, L in pairs]


def enumerate_S_catalog(fiber_size: int) -> list[CatalogEntry]:
    """Atoms with the given fiber whose unlabelled growth is below 2^n, by case label."""
    if not 1 <= fiber_size <= 9:
        raise OutOfRange(f"fiber_size must be in 1..9, got {fiber_size}")
    n = fiber_size
    entries: list[CatalogEntry] = []
    reducts = ("<", "betw", "cyc", "sep")
    for H in hst_catalog(n):
        for R in reducts:
            entries.append(CatalogEntry(_decorated(n, H, H, R), "ii", R))
    for H, L in special_pairs(n):
        for R in reducts:
            entries.append(CatalogEntry(_decorated(n, H, L, R), "iii", R))
    if n >= 3:
        A = alternating_group(n)
        odd = Permutation.from_cycles([(0, 1)], n)
        for R in ("<", "cyc"):
            entries.append(CatalogEntry(_decorated(n, A, A, R, flip=odd), "iv", R))
    for H, L in special_pairs(n):
        for sigma in _nontrivial_coset_reps(H, L):
            for R in ("<", "betw"):
                spec = _decorated(n, H, L, R, turn=sigma)
                # with an index 3 pair the reflection forces sigma^2 into the kernel
                if is_valid(spec):
                    entries.append(CatalogEntry(spec, "v", R))
    entries.extend(eq_family(n))
    for e in entries:
        require_valid(e.spec)
    return entries


def _nontrivial_coset_reps(H: FiniteGroup, L: FiniteGroup) -> list[Permutation]:
    """Least representative of each coset of H in L other than H itself."""
    reps = []
    covered = set(H.element_set)
    for g in L.raw_elements:
        if g in covered:
            continue
        p = Permutation(g)
        reps.append(p)
        covered |= {(p * h).images for h in H.elements()}
    return reps


# -- classification of a spec within the catalog -------------------------------

@dataclass(frozen=True)
class CatalogSignature:
    item: str          # summary case label i..v
    reduct: str        # R in <, betw, cyc, sep, eq
    special: bool      # (H, L) is one of the index 2 or 3 pairs


def _coset_in(g: Permutation | None, G: FiniteGroup) -> bool:
    return g is None or g in G


def catalog_signature(spec: FiberCoverSpec) -> CatalogSignature | None:
    """Case label of a valid spec among the subexponential normal forms, or None."""
    if spec.base is QReduct.EQ:
        return CatalogSignature("i", "eq", False)
    if not is_highly_set_transitive(spec.H):
        return None
    H, L = spec.H, spec.L
    same = H.order == L.order
    special = not same and any(H.same_elements(a) and L.same_elements(b)
                               for a, b in special_pairs(spec.fiber))
    if not same and not special:
        return None
    flip_inside = _coset_in(spec.flip, L)
    turn_inside = _coset_in(spec.turn, H)
    rot = ROTATION_PART.get(spec.base, spec.base)
    rot_name = {QReduct.ORDER: "<", QReduct.CYC: "cyc"}[rot]
    if flip_inside and turn_inside:
        return CatalogSignature("iii" if special else "ii", spec.base.dsl, special)
    if not flip_inside and turn_inside:
        # flip outside L: only A_n with an odd flip
        n = spec.fiber
        if same and n >= 3 and H.order * 2 == len(symmetric_group(n)):
            return CatalogSignature("iv", rot_name, False)
        return None
    if flip_inside and not turn_inside:
        if special:
            r = "<" if spec.base is QReduct.CYC else "betw"
            return CatalogSignature("v", r, True)
        return None
    return None


def same_group(a: FiberCoverSpec, b: FiberCoverSpec) -> bool:
    """Equality of the generated groups: kernels, base, and decoration cosets."""
    if a.fiber != b.fiber or a.base is not b.base:
        return False
    if not (a.H.same_elements(b.H) and a.L.same_elements(b.L)):
        return False
    if a.flip is not None and (a.flip.inverse() * b.flip) not in a.L:
        return False
    if a.turn is not None and (a.turn.inverse() * b.turn) not in a.H:
        return False
    return True


# -- normal pairs ----------------------------------------------------------------

@dataclass(frozen=True)
class NormalPairReport:
    is_normal: bool | None
    matched_case: str | None = None
    quotient_structure: FiniteGroup | None = None
    quotient_iso_tag: str | None = None
    reason: str = ""

    @property
    def verdict(self) -> str:
        return {True: "normal", False: "not normal", None: "unknown"}[self.is_normal]


ALLOWED_QUOTIENTS = ("Z1", "Z2", "Z3", "Z2xZ2", "Z6")


def iso_tag(G: FiniteGroup) -> str:
    """Isomorphism type of a small group from its order and element orders."""
    order = G.order
    orders = sorted(Permutation(g).order() for g in G.raw_elements)
    if order == 1:
        return "Z1"
    if order in (2, 3, 5):
        return f"Z{order}"
    if order == 4:
        return "Z4" if 4 in orders else "Z2xZ2"
    if order == 6:
        return "Z6" if 6 in orders else "S3"
    if max(orders) == order:
        return f"Z{order}"
    return f"order {order}"


def coset_action(big: FiniteGroup, small: FiniteGroup) -> FiniteGroup:
    """Action of ``big`` on the left cosets of ``small`` (faithful for the quotient when normal)."""
    cosets: list[frozenset] = []
    index_of: dict[tuple, int] = {}
    for g in big.raw_elements:
        if g in index_of:
            continue
        coset = frozenset(tuple(g[i] for i in h) for h in small.raw_elements)
        for x in coset:
            index_of[x] = len(cosets)
        cosets.append(coset)
    reps = [next(iter(sorted(c))) for c in cosets]
    gens = []
    for g in big.raw_generators:
        gens.append(Permutation(tuple(index_of[tuple(g[i] for i in r)] for r in reps)))
    return FiniteGroup(len(cosets), tuple(gens))


def _with_z2(Q: FiniteGroup) -> FiniteGroup:
    from .permgrp import direct_product
    return direct_product(Q, symmetric_group(2))


def _quotient(N: FiberCoverSpec, G: FiberCoverSpec, base_index: int) -> FiniteGroup:
    Lt, Mt = G.tilde_L, N.tilde_L
    Q = coset_action(Lt, Mt)
    if base_index == 2 and Lt.order == G.L.order:
        Q = _with_z2(Q)
    return Q


def _report(case: str, N, G, base_index: int) -> NormalPairReport:
    Q = _quotient(N, G, base_index)
    return NormalPairReport(True, case, Q, iso_tag(Q))


def _same_turn(a: FiberCoverSpec, b: FiberCoverSpec, H: FiniteGroup) -> bool:
    return a.turn is None or (a.turn.inverse() * b.turn) in H


def classify_normal_pair(specN: FiberCoverSpec, specG: FiberCoverSpec) -> NormalPairReport:
    """Normality of one atom in another with the same fibers, for the catalog normal forms."""
    require_valid(specN)
    require_valid(specG)
    if specN.fiber != specG.fiber:
        raise FiberMismatch(f"fibers {specN.fiber} and {specG.fiber} differ")
    if same_group(specN, specG):
        return _report("i", specN, specG, 1)
    sN, sG = catalog_signature(specN), catalog_signature(specG)
    if sN is None or sG is None:
        return NormalPairReport(None, reason="outside the subexponential normal forms")
    H, M, L = specN.H, specN.L, specG.L
    if not H.same_elements(specG.H):
        return NormalPairReport(False, reason="kernels have different H")
    if sN.item == "i" or sG.item == "i":
        if sN.item == sG.item and group_relations(M, L).is_normal:
            Q = coset_action(L, M)
            return NormalPairReport(True, "ii", Q, iso_tag(Q))
        return NormalPairReport(False, reason="symmetric base pairs need M normal in L")
    bN, bG = specN.base, specG.base
    if bN is bG:
        # same base: only Ker_H^H inside Ker_L^H for the special pairs
        if (sN.item == "ii" and sG.item == "iii" and sN.reduct == sG.reduct):
            return _report("iii", specN, specG, 1)
        if (sN.item == "iv" and sG.item == "iii" and _coset_in(specN.flip, L)
                and _coset_in(specG.flip, H) and _same_turn(specN, specG, H)):
            # odd flip of N is the plain flip of G times an odd kernel element;
            # coset parity plus orientation is a character of G with kernel N
            Q = symmetric_group(2)
            return NormalPairReport(True, "iv-odd", Q, iso_tag(Q))
        return NormalPairReport(False, reason="no normal-subgroup case matches")
    if FLIP_EXTENSION.get(bN) is not bG:
        return NormalPairReport(False, reason="base of N is not normal in base of G")
    if not _same_turn(specN, specG, H):
        return NormalPairReport(False, reason="turn cosets differ")
    if specG.flip in L:
        # G is N's kernel over the reflecting base; M must be H or L
        if M.same_elements(H) or M.same_elements(L):
            return _report("iv", specN, specG, 2)
        return NormalPairReport(False, reason="M is neither H nor L")
    if sG.item == "iv" and M.same_elements(H) and H.same_elements(L):
        return _report("v", specN, specG, 2)
    return NormalPairReport(False, reason="no normal-subgroup case matches")

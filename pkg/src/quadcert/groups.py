"""Finite monomial matrix groups, taken modulo scalars.

A monomial matrix times a root of unity acts identically on projective
space, so group elements here are scalar-normalized representatives:
every phase vector is shifted to put 0 in slot 0.  Closures are computed
by breadth-first search over products with the generators, which keeps
element discovery order (and hence every downstream report) a pure
function of the generator list.

The five preset generators and the three standard groups built from them
are order-8 monomial matrices on eight coordinates:

    tau      diagonal, phase exponent -i at slot i
    sigma    the step-by-one coordinate cycle i -> i+1
    sigma1   the cycle i -> 5i+7
    sigma2   the double-step cycle i -> i+2
    sigma3   the cycle i -> 3i+1

    G  = <tau, sigma>          abelian of order 64
    G1 = <tau, sigma1>         nonabelian of order 64
    G2 = <tau, sigma2, sigma3> nonabelian of order 64
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .linalg import MonomialMatrix

DEFAULT_CLOSURE_CAP = 10000

GROUP_NAMES = ("G", "G1", "G2")


class ProjectiveElement:
    """A monomial matrix up to scalar: the stored representative has phase 0
    in slot 0, which absorbs exactly the root-of-unity scalars."""

    __slots__ = ("rep",)

    def __init__(self, matrix: MonomialMatrix):
        shift = matrix.phases[0]
        if shift:
            matrix = MonomialMatrix(
                matrix.perm, tuple((p - shift) % matrix.N for p in matrix.phases), matrix.N
            )
        object.__setattr__(self, "rep", matrix)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ProjectiveElement is immutable")

    @property
    def size(self) -> int:
        return self.rep.size

    @property
    def N(self) -> int:
        return self.rep.N

    def __mul__(self, other):
        if not isinstance(other, ProjectiveElement):
            return NotImplemented
        return ProjectiveElement(self.rep * other.rep)

    def inverse(self) -> "ProjectiveElement":
        return ProjectiveElement(self.rep.inverse())

    def __pow__(self, exponent: int) -> "ProjectiveElement":
        return ProjectiveElement(self.rep ** exponent)

    def is_identity(self) -> bool:
        return self.rep.is_identity()

    def __eq__(self, other):
        if not isinstance(other, ProjectiveElement):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash((ProjectiveElement, self.rep))

    def __repr__(self):
        return f"ProjectiveElement({self.rep!r})"

    def to_dict(self) -> dict:
        return self.rep.to_dict()


GroupElement = Union[ProjectiveElement, MonomialMatrix]


def normalize(g: MonomialMatrix) -> ProjectiveElement:
    return ProjectiveElement(g)


def element_order(g: GroupElement, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    power = g
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power * g
    raise RuntimeError(f"no identity power within {cap} steps")


@dataclass(frozen=True)
class FiniteGroup:
    """Closure of a generator list, elements kept in BFS discovery order."""

    projective: bool
    names: tuple[str, ...]
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]
    element_set: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.element_set

    def identity(self) -> GroupElement:
        return self.elements[0]

    def generator_map(self) -> dict[str, GroupElement]:
        return dict(zip(self.names, self.generators))

    def evaluate_word(self, word: str) -> GroupElement:
        return evaluate_word(word, self.generator_map(), self.identity())

    def verify_relation(self, relation: str) -> bool:
        return verify_relation(relation, self.generator_map(), self.identity())

    def subgroup(self, words: Sequence[str], cap: int = DEFAULT_CLOSURE_CAP) -> "FiniteGroup":
        """Closure of word values inside the same group, names kept as the
        word texts."""
        gens = [self.evaluate_word(w) for w in words]
        mats = [g.rep if isinstance(g, ProjectiveElement) else g for g in gens]
        return closure(mats, projective=self.projective, cap=cap, names=tuple(words))


def closure(
    generators: Sequence[MonomialMatrix | ProjectiveElement],
    projective: bool = True,
    cap: int = DEFAULT_CLOSURE_CAP,
    names: Sequence[str] | None = None,
) -> FiniteGroup:
    """Breadth-first closure of the generators under composition.

    Finite groups are closed under multiplication alone, so no explicit
    inverses are needed.  The cap bounds the element count and raising past
    it signals a non-finite configuration (typically a wrong phase modulus).
    """
    mats = [g.rep if isinstance(g, ProjectiveElement) else g for g in generators]
    if not mats:
        raise ValueError("need at least one generator")
    size, N = mats[0].size, mats[0].N
    for m in mats:
        if m.size != size or m.N != N:
            raise ValueError("generators must share size and phase modulus")
    if names is None:
        names = tuple(f"g{i}" for i in range(len(mats)))
    names = tuple(names)
    if len(names) != len(mats):
        raise ValueError("one name per generator")

    def wrap(m: MonomialMatrix) -> GroupElement:
        return ProjectiveElement(m) if projective else m

    gens = [wrap(m) for m in mats]
    ident = wrap(MonomialMatrix.identity(size, N))
    seen = {ident}
    ordered = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                if len(seen) >= cap:
                    raise RuntimeError(f"closure exceeded cap of {cap} elements")
                seen.add(y)
                ordered.append(y)
                queue.append(y)
    return FiniteGroup(projective, names, tuple(gens), tuple(ordered), frozenset(seen))


def order_spectrum(group: FiniteGroup) -> dict[int, int]:
    counts = Counter(element_order(g) for g in group.elements)
    spectrum = dict(sorted(counts.items()))
    assert sum(spectrum.values()) == group.order
    assert spectrum.get(1) == 1
    return spectrum


def is_abelian(group: FiniteGroup, all_pairs: bool = False) -> bool:
    """Generator pairs commuting already decides it; all_pairs recomputes
    over the full element list as a cross-check."""
    pool = group.elements if all_pairs else group.generators
    for i, a in enumerate(pool):
        for b in pool[i + 1 :]:
            if a * b != b * a:
                return False
    return True


def involutions(group: FiniteGroup) -> tuple[GroupElement, ...]:
    return tuple(g for g in group.elements if element_order(g) == 2)


# -- words and relations ------------------------------------------------------

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")
_IDENTITY_TOKENS = {"identity", "e", "1"}


def evaluate_word(word: str, generators: Mapping[str, GroupElement], identity: GroupElement) -> GroupElement:
    """Evaluate a whitespace-separated word like "s1 t s1^-1" left to right."""
    result = identity
    for token in word.split():
        if token in _IDENTITY_TOKENS:
            continue
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"bad word token {token!r}")
        name, exponent = match.group(1), match.group(2)
        if name not in generators:
            raise ValueError(f"unknown generator {name!r}")
        factor = generators[name]
        if exponent is not None:
            factor = factor ** int(exponent)
        result = result * factor
    return result


def verify_relation(relation: str, generators: Mapping[str, GroupElement], identity: GroupElement) -> bool:
    """Check an equation "word = word"; comparison is projective whenever the
    elements themselves are."""
    sides = relation.split("=")
    if len(sides) != 2:
        raise ValueError(f"relation needs exactly one '=': {relation!r}")
    left = evaluate_word(sides[0], generators, identity)
    right = evaluate_word(sides[1], generators, identity)
    return left == right


def conjugation_exponent(g: GroupElement, t: GroupElement, identity: GroupElement) -> int | None:
    """The exponent a with g t g^-1 = t^a, if one exists."""
    conj = g * t * g.inverse()
    power = identity
    for a in range(element_order(t)):
        if conj == power:
            return a
        power = power * t
    return None


# -- structure certification --------------------------------------------------


@dataclass(frozen=True)
class ClaimResult:
    claim: dict
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class StructureCertificate:
    order: int
    is_abelian: bool
    order_spectrum: dict
    verified_relations: tuple
    normal_subgroup_data: tuple | None
    claim_results: tuple

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.claim_results)


def _normality_witness(group: FiniteGroup, sub: FiniteGroup) -> str | None:
    """First (element order) conjugation that leaves the subgroup, or None."""
    for g in group.elements:
        inv = g.inverse()
        for n in sub.elements:
            if g * n * inv not in sub:
                return f"conjugate of {n.to_dict()} by {g.to_dict()} leaves the subgroup"
    return None


def certify_structure(group: FiniteGroup, claims: Sequence[dict]) -> StructureCertificate:
    """Check a list of tagged claim records against the group by enumeration.

    Claim types: order, abelian, relation, spectrum, normal_subgroup,
    quotient_order, semidirect_exponent, involutions_in_subgroup,
    contained_in.  Failures are reported with witnesses, never raised.
    """
    spectrum = order_spectrum(group)
    abelian = is_abelian(group, all_pairs=True)
    relations: list[tuple[str, bool]] = []
    normal_data: tuple | None = None
    results: list[ClaimResult] = []

    for claim in claims:
        kind = claim.get("type")
        ok = False
        witness = None
        if kind == "order":
            ok = group.order == claim["value"]
            if not ok:
                witness = f"actual order {group.order}"
        elif kind == "abelian":
            ok = abelian == claim["value"]
            if not ok:
                witness = f"group is {'abelian' if abelian else 'nonabelian'}"
        elif kind == "relation":
            text = claim["relation"]
            ok = group.verify_relation(text)
            relations.append((text, ok))
            if not ok:
                witness = f"sides differ: {text}"
        elif kind == "spectrum":
            expected = {int(k): int(v) for k, v in claim["value"].items()}
            ok = spectrum == expected
            if not ok:
                witness = f"actual spectrum {spectrum}"
        elif kind == "spectrum_of_subgroup":
            sub = group.subgroup(claim["subgroup"])
            actual = order_spectrum(sub)
            expected = {int(k): int(v) for k, v in claim["value"].items()}
            ok = actual == expected
            if not ok:
                witness = f"actual spectrum {actual}"
        elif kind == "normal_subgroup":
            sub = group.subgroup(claim["subgroup"])
            witness = _normality_witness(group, sub)
            ok = witness is None
            if ok and normal_data is None:
                normal_data = (sub.order, group.order // sub.order, None)
        elif kind == "quotient_order":
            sub = group.subgroup(claim["subgroup"])
            if group.order % sub.order:
                witness = f"subgroup order {sub.order} does not divide {group.order}"
            else:
                quotient = group.order // sub.order
                ok = quotient == claim["value"]
                if not ok:
                    witness = f"actual quotient order {quotient}"
        elif kind == "semidirect_exponent":
            # records the conjugation exponent realizing the extension;
            # a stated value is checked, an omitted one only has to exist
            t = group.evaluate_word(claim["normal_generator"])
            g = group.evaluate_word(claim["conjugator"])
            found = conjugation_exponent(g, t, group.identity())
            if found is None:
                witness = "conjugate is not a power of the normal generator"
            elif "value" in claim and claim["value"] != found:
                witness = f"exponent found {found}"
            else:
                ok = True
                witness = f"exponent {found}"
        elif kind == "involutions_in_subgroup":
            sub = group.subgroup(claim["subgroup"])
            outside = [g for g in involutions(group) if g not in sub]
            ok = not outside
            if not ok:
                witness = f"involution outside subgroup: {outside[0].to_dict()}"
        elif kind == "contained_in":
            sub = group.subgroup(claim["subgroup"]) if "subgroup" in claim else group
            ambient = closure(
                [MonomialMatrix.from_dict(d) for d in claim["ambient_generators"]],
                projective=group.projective,
            )
            outside = [g for g in sub.elements if g not in ambient]
            ok = not outside
            if not ok:
                witness = f"element outside ambient group: {outside[0].to_dict()}"
        else:
            witness = f"unknown claim type {kind!r}"
        results.append(ClaimResult(claim, ok, witness))

    return StructureCertificate(
        order=group.order,
        is_abelian=abelian,
        order_spectrum=spectrum,
        verified_relations=tuple(relations),
        normal_subgroup_data=normal_data,
        claim_results=tuple(results),
    )


@dataclass(frozen=True)
class InvolutionCertificate:
    involution_count: int
    all_in_subgroup: bool
    subgroup_order: int
    subgroup_contained_in_ambient: bool
    outside_subgroup_witness: str | None
    outside_ambient_witness: str | None

    @property
    def ok(self) -> bool:
        return self.all_in_subgroup and self.subgroup_contained_in_ambient


def involution_localization(
    group: FiniteGroup, subgroup_words: Sequence[str], ambient: FiniteGroup
) -> InvolutionCertificate:
    """Certify that every order-2 element of the group lies in the subgroup
    generated by the given words, and that this subgroup sits inside the
    ambient group."""
    sub = group.subgroup(subgroup_words)
    invs = involutions(group)
    outside_sub = [g for g in invs if g not in sub]
    outside_amb = [g for g in sub.elements if g not in ambient]
    return InvolutionCertificate(
        involution_count=len(invs),
        all_in_subgroup=not outside_sub,
        subgroup_order=sub.order,
        subgroup_contained_in_ambient=not outside_amb,
        outside_subgroup_witness=(
            f"involution outside subgroup: {outside_sub[0].to_dict()}" if outside_sub else None
        ),
        outside_ambient_witness=(
            f"subgroup element outside ambient: {outside_amb[0].to_dict()}" if outside_amb else None
        ),
    )


# -- presets ------------------------------------------------------------------


def make_tau() -> MonomialMatrix:
    return MonomialMatrix.diagonal(tuple(-i % 8 for i in range(8)))


def make_sigma() -> MonomialMatrix:
    return MonomialMatrix(tuple((i + 1) % 8 for i in range(8)), (0,) * 8)


def make_sigma1() -> MonomialMatrix:
    return MonomialMatrix(tuple((5 * i + 7) % 8 for i in range(8)), (0,) * 8)


def make_sigma2() -> MonomialMatrix:
    return MonomialMatrix(tuple((i + 2) % 8 for i in range(8)), (0,) * 8)


def make_sigma3() -> MonomialMatrix:
    return MonomialMatrix(tuple((3 * i + 1) % 8 for i in range(8)), (0,) * 8)


def standard_generators(name: str) -> tuple[tuple[str, ...], tuple[MonomialMatrix, ...]]:
    if name == "G":
        return ("t", "s"), (make_tau(), make_sigma())
    if name == "G1":
        return ("t", "s1"), (make_tau(), make_sigma1())
    if name == "G2":
        return ("t", "s2", "s3"), (make_tau(), make_sigma2(), make_sigma3())
    raise ValueError(f"unknown group name {name!r}; expected one of {GROUP_NAMES}")


def standard_group(name: str, projective: bool = True) -> FiniteGroup:
    names, gens = standard_generators(name)
    return closure(gens, projective=projective, names=names)


def standard_claims(name: str) -> list[dict]:
    """The structural facts each standard group is certified against."""
    if name == "G":
        return [
            {"type": "order", "value": 64},
            {"type": "abelian", "value": True},
            {"type": "relation", "relation": "t^8 = identity"},
            {"type": "relation", "relation": "s^8 = identity"},
            {"type": "relation", "relation": "s t = t s"},
        ]
    if name == "G1":
        return [
            {"type": "order", "value": 64},
            {"type": "abelian", "value": False},
            {"type": "normal_subgroup", "subgroup": ["t"]},
            {"type": "quotient_order", "subgroup": ["t"], "value": 8},
            {"type": "semidirect_exponent", "normal_generator": "t", "conjugator": "s1"},
            {"type": "relation", "relation": "s1^8 = identity"},
        ]
    if name == "G2":
        return [
            {"type": "order", "value": 64},
            {"type": "abelian", "value": False},
            {"type": "normal_subgroup", "subgroup": ["t"]},
            {
                "type": "spectrum_of_subgroup",
                "subgroup": ["s2", "s3"],
                "value": {1: 1, 2: 1, 4: 6},
            },
            {"type": "relation", "relation": "s3 s2 s3^-1 = s2^-1"},
        ]
    raise ValueError(f"unknown group name {name!r}; expected one of {GROUP_NAMES}")


def localization_subgroup_words(name: str) -> tuple[str, ...]:
    """Generator words for the subgroup that is claimed to hold every
    involution of the named group."""
    if name == "G":
        return ("t", "s^4")
    if name == "G1":
        return ("t", "s1^4")
    if name == "G2":
        return ("t", "s2^2")
    raise ValueError(f"unknown group name {name!r}; expected one of {GROUP_NAMES}")

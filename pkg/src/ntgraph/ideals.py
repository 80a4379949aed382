"""Prime ideals of finite rings and unions of them.

A union D of pairwise incomparable prime ideals is the membership set that
drives graph adjacency.  Ideals are specified structurally: the zero ideal of a
field, or a coordinate cylinder (prime ideal of one factor, everything else
free) inside a product.  Those kinds cover every case the theory uses and are
prime by construction; a raw element-set escape hatch exists for experiments
and is always validated exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .rings import DescriptorError, ProductRing, RingBackend

__all__ = [
    "IdealError",
    "PrimeIdealSpec",
    "ZeroIdeal",
    "CylinderIdeal",
    "RawIdeal",
    "IdealUnion",
    "CoprimeResult",
    "union_membership",
    "are_coprime",
    "validate_union",
    "is_ideal",
    "parse_ideal_union",
]

EXHAUSTIVE_ORDER_BOUND = 10_000  # full axiom checks are exact up to this size


class IdealError(ValueError):
    """Invalid ideal construction or a failed construction-time check."""


class PrimeIdealSpec:
    """A prime ideal given as a membership predicate over a ring backend."""

    ring: RingBackend
    kind: str

    def contains(self, x: int) -> bool:
        raise NotImplementedError

    def mask(self) -> np.ndarray:
        """Boolean membership vector over all element indices (cached)."""
        m = getattr(self, "_mask", None)
        if m is None:
            m = self._build_mask()
            m.setflags(write=False)
            self._mask = m
        return m

    def _build_mask(self) -> np.ndarray:
        raise NotImplementedError

    def elements(self) -> np.ndarray:
        return np.nonzero(self.mask())[0]

    def describe(self) -> str:
        raise NotImplementedError

    def subset_of(self, other: "PrimeIdealSpec") -> bool:
        return not bool(np.any(self.mask() & ~other.mask()))

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()} in {self.ring.describe()}>"


class ZeroIdeal(PrimeIdealSpec):
    """{0}, prime exactly when the ring is a domain (a field, at finite size)."""

    kind = "zero-ideal-of-field"

    def __init__(self, ring: RingBackend, validate: bool = True):
        if validate and not ring.is_field:
            raise IdealError(
                f"the zero ideal of {ring.describe()} is not prime: "
                "the ring has zero divisors")
        self.ring = ring

    def contains(self, x):
        return x == 0

    def _build_mask(self):
        m = np.zeros(self.ring.order, dtype=bool)
        m[0] = True
        return m

    def describe(self):
        return "zero@1"


class CylinderIdeal(PrimeIdealSpec):
    """P x (product of the remaining factors): a prime ideal of one coordinate
    extended cylindrically over the rest."""

    kind = "coordinate-ideal"

    def __init__(self, ring: ProductRing, position: int, inner: PrimeIdealSpec,
                 validate: bool = True):
        if not isinstance(ring, ProductRing):
            raise IdealError("coordinate ideals live in product rings")
        if not 0 <= position < len(ring.factors):
            raise IdealError(
                f"position {position + 1} out of range for a product of "
                f"{len(ring.factors)} factors")
        if inner.ring is not ring.factors[position]:
            raise IdealError("inner ideal must live in the selected factor")
        if validate and not isinstance(inner, (ZeroIdeal, CylinderIdeal)):
            # raw inners were validated at their own construction
            pass
        self.ring = ring
        self.position = position
        self.inner = inner

    def contains(self, x):
        return self.inner.contains(self.ring.coords_of(x)[self.position])

    def _build_mask(self):
        coords = self.ring.coord_vec(np.arange(self.ring.order, dtype=np.int64),
                                     self.position)
        return self.inner.mask()[coords]

    def describe(self):
        if isinstance(self.inner, ZeroIdeal):
            return f"zero@{self.position + 1}"
        return f"cyl@{self.position + 1}({self.inner.describe()})"


class RawIdeal(PrimeIdealSpec):
    """Prime ideal given by an explicit element set; validated exhaustively."""

    kind = "raw-element-set"

    def __init__(self, ring: RingBackend, members, validate: bool = True,
                 label: str | None = None):
        if ring.order > EXHAUSTIVE_ORDER_BOUND:
            raise IdealError(
                f"raw ideals require ring order <= {EXHAUSTIVE_ORDER_BOUND} "
                "so that the axioms can be checked exhaustively")
        self.ring = ring
        self.members = frozenset(int(x) for x in members)
        self._label = label
        if any(not 0 <= x < ring.order for x in self.members):
            raise IdealError("raw ideal contains out-of-range indices")
        if validate:
            check = check_prime_ideal_axioms(self)
            if not check.ok:
                raise IdealError(f"raw ideal fails validation: {check.failure_text()}")

    def contains(self, x):
        return x in self.members

    def _build_mask(self):
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def describe(self):
        if self._label:
            return self._label
        inside = ",".join(str(x) for x in sorted(self.members)[:8])
        more = "" if len(self.members) <= 8 else ",..."
        return f"raw{{{inside}{more}}}"


# ---------------------------------------------------------------------------
# exhaustive axiom checking


@dataclass
class IdealCheck:
    descriptor: str
    proper: bool = True
    contains_zero: bool = True
    add_closed: bool = True
    absorb_closed: bool = True
    prime: bool = True
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return (self.proper and self.contains_zero and self.add_closed
                and self.absorb_closed and self.prime)

    def failure_text(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if not self.proper:
            parts.append("not a proper ideal (contains 1)")
        if not self.contains_zero:
            parts.append("does not contain 0")
        if not self.add_closed:
            parts.append(f"not closed under addition, witness {self.witness}")
        if not self.absorb_closed:
            parts.append(f"not closed under ring multiplication, witness {self.witness}")
        if not self.prime:
            parts.append(f"not prime, witness {self.witness}")
        return "; ".join(parts)


def _first_bad_pair(xs, ys, values, good_mask):
    bad = ~good_mask[values]
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return int(xs[i]), int(ys[j])


def check_prime_ideal_axioms(ideal: PrimeIdealSpec) -> IdealCheck:
    """Exhaustive ideal + primality axioms; exact for order <= 10**4."""
    ring = ideal.ring
    report = IdealCheck(descriptor=ideal.describe())
    if ring.order > EXHAUSTIVE_ORDER_BOUND:
        # structural kinds guarantee the axioms by construction at this size
        return report
    mask = ideal.mask()
    elems = np.nonzero(mask)[0]
    report.contains_zero = bool(mask[0])
    report.proper = not bool(mask[ring.one])
    if elems.size:
        sums = ring.add_vec(elems[:, None], elems[None, :])
        if not mask[sums].all():
            report.add_closed = False
            report.witness = _first_bad_pair(elems, elems, sums, mask)
        everything = np.arange(ring.order, dtype=np.int64)
        prods = ring.mul_vec(elems[:, None], everything[None, :])
        if not mask[prods].all():
            report.absorb_closed = False
            report.witness = _first_bad_pair(elems, everything, prods, mask)
    outside = np.nonzero(~mask)[0]
    if outside.size:
        prods = ring.mul_vec(outside[:, None], outside[None, :])
        inside = mask[prods]
        if inside.any():
            i, j = np.argwhere(inside)[0]
            report.prime = False
            report.witness = (int(outside[i]), int(outside[j]))
    return report


# ---------------------------------------------------------------------------


class IdealUnion:
    """Union of pairwise incomparable prime ideals over one ring.

    Incomparability is enforced at construction (several results assume it
    silently); pass validate=False only to build deliberately broken unions
    for `validate_union` to report on.
    """

    def __init__(self, members, validate: bool = True):
        members = tuple(members)
        if not members:
            raise IdealError("an ideal union needs at least one member")
        ring = members[0].ring
        if any(m.ring is not ring for m in members):
            raise IdealError("all members must live in the same ring")
        self.ring = ring
        self.members = members
        if validate:
            bad = incomparability_violations(members)
            if bad:
                i, j, wit = bad[0]
                raise IdealError(
                    f"members {members[i].describe()} and {members[j].describe()} "
                    f"are comparable: the former is contained in the latter "
                    f"(witness: every element, e.g. index {wit})")

    def membership(self, x: int) -> bool:
        return any(m.contains(x) for m in self.members)

    def mask(self) -> np.ndarray:
        m = getattr(self, "_mask", None)
        if m is None:
            m = np.zeros(self.ring.order, dtype=bool)
            for member in self.members:
                m |= member.mask()
            m.setflags(write=False)
            self._mask = m
        return m

    def elements(self) -> np.ndarray:
        return np.nonzero(self.mask())[0]

    def describe(self) -> str:
        return "|".join(m.describe() for m in self.members)

    def __repr__(self):
        return f"<IdealUnion {self.describe()} in {self.ring.describe()}>"


def incomparability_violations(members) -> list[tuple[int, int, int]]:
    """Pairs (i, j, witness) with member i contained in member j."""
    out = []
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if i == j:
                continue
            if a.subset_of(b):
                wit = int(a.elements()[0]) if a.elements().size else 0
                out.append((i, j, wit))
    return out


def union_membership(D: IdealUnion, x: int) -> bool:
    return D.membership(x)


class CoprimeResult(NamedTuple):
    coprime: bool
    witness: tuple[int, int] | None


def are_coprime(P: PrimeIdealSpec, Q: PrimeIdealSpec) -> CoprimeResult:
    """P + Q = R, witnessed by p + q = 1 with p in P, q in Q.

    Scans P's elements in ascending index order, so the witness is
    deterministic.
    """
    if P.ring is not Q.ring:
        raise IdealError("coprimality needs ideals of the same ring")
    ring = P.ring
    qmask = Q.mask()
    for p in P.elements():
        q = ring.sub(ring.one, int(p))
        if qmask[q]:
            return CoprimeResult(True, (int(p), q))
    return CoprimeResult(False, None)


@dataclass
class UnionValidationReport:
    union: str
    members: list[IdealCheck] = field(default_factory=list)
    incomparable: bool = True
    incomparability_witnesses: list[tuple[int, int, int]] = field(default_factory=list)
    zero_in_union: bool = True

    @property
    def ok(self) -> bool:
        return (self.incomparable and self.zero_in_union
                and all(m.ok for m in self.members))

    def to_json_dict(self) -> dict:
        return {
            "union": self.union,
            "ok": self.ok,
            "zero_in_union": self.zero_in_union,
            "incomparable": self.incomparable,
            "incomparability_witnesses": [
                list(w) for w in self.incomparability_witnesses],
            "members": [
                {
                    "ideal": m.descriptor,
                    "ok": m.ok,
                    "proper": m.proper,
                    "contains_zero": m.contains_zero,
                    "add_closed": m.add_closed,
                    "absorb_closed": m.absorb_closed,
                    "prime": m.prime,
                    "witness": list(m.witness) if m.witness else None,
                }
                for m in self.members
            ],
        }


def validate_union(D: IdealUnion) -> UnionValidationReport:
    """Re-run every construction-time check, reporting failures instead of
    raising.  Exhaustive for rings of order <= 10**4."""
    report = UnionValidationReport(union=D.describe())
    for m in D.members:
        report.members.append(check_prime_ideal_axioms(m))
    violations = incomparability_violations(D.members)
    if violations:
        report.incomparable = False
        report.incomparability_witnesses = violations
    report.zero_in_union = D.membership(0)
    return report


def is_ideal(D: IdealUnion) -> bool:
    """Whether the union's element set is itself an ideal.

    Closure under addition is the only thing to test: closure under ring
    multiplication already holds memberwise.
    """
    if D.ring.order > EXHAUSTIVE_ORDER_BOUND:
        raise IdealError(
            f"is_ideal is exhaustive and limited to order <= {EXHAUSTIVE_ORDER_BOUND}")
    mask = D.mask()
    elems = D.elements()
    sums = D.ring.add_vec(elems[:, None], elems[None, :])
    return bool(mask[sums].all())


# ---------------------------------------------------------------------------
# descriptor parsing:  members joined by "|"; a member is terms joined by "&",
# each term zero@i or full@i (full marks a coordinate as unconstrained and is
# only meaningful inside products).


def _parse_member(text: str, ring: RingBackend) -> PrimeIdealSpec:
    constraints: dict[int, str] = {}
    for term in text.split("&"):
        term = term.strip()
        for kind in ("zero", "full"):
            if term.startswith(kind + "@"):
                try:
                    pos = int(term[len(kind) + 1:])
                except ValueError:
                    raise DescriptorError(f"bad ideal term {term!r}") from None
                if pos < 1:
                    raise DescriptorError(f"positions are 1-based, got {pos}")
                if pos in constraints:
                    raise DescriptorError(f"position {pos} constrained twice in {text!r}")
                constraints[pos] = kind
                break
        else:
            raise DescriptorError(f"unrecognized ideal term {term!r}")

    nfactors = len(ring.factors) if isinstance(ring, ProductRing) else 1
    if any(pos > nfactors for pos in constraints):
        raise DescriptorError(
            f"ideal {text!r} references a position beyond the "
            f"{nfactors} factor(s) of {ring.describe()}")
    zero_positions = sorted(pos for pos, kind in constraints.items() if kind == "zero")
    if not zero_positions:
        raise DescriptorError(
            f"ideal {text!r} constrains nothing to zero; the whole ring is not "
            "a proper ideal")

    if not isinstance(ring, ProductRing):
        return ZeroIdeal(ring)
    if len(zero_positions) == 1:
        pos = zero_positions[0] - 1
        return CylinderIdeal(ring, pos, ZeroIdeal(ring.factors[pos]))
    # several coordinates pinned to zero: build the element set and let the
    # exhaustive primality validation accept or reject it
    idx = np.arange(ring.order, dtype=np.int64)
    sel = np.ones(ring.order, dtype=bool)
    for pos in zero_positions:
        sel &= ring.coord_vec(idx, pos - 1) == 0
    return RawIdeal(ring, np.nonzero(sel)[0], label=text.strip())


def parse_ideal_union(text: str, ring: RingBackend) -> IdealUnion:
    members = [_parse_member(part, ring) for part in text.split("|")]
    return IdealUnion(members)

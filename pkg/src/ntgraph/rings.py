"""Exact arithmetic for finite prime fields, extension fields, and their products.

Every ring maps its elements onto the dense index range 0..order-1, with index 0
as the additive identity.  Scalar operations take and return Python ints; the
``*_vec`` variants take numpy integer arrays and broadcast like ufuncs, which is
what the graph builder and the sweep machinery rely on for speed.

Extension fields keep two independent multiplication routes: direct polynomial
arithmetic modulo the defining polynomial (the scalar path, and the source of
the precomputed tables used for orders <= 256) and discrete exp/log tables over
a group generator (the vectorized path).  Agreement of the routes is part of
the test suite, not assumed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "RingError",
    "DescriptorError",
    "RingBackend",
    "PrimeField",
    "ExtensionField",
    "ExtensionFieldSpec",
    "ProductRing",
    "FieldParams",
    "is_prime",
    "smallest_prime_factor",
    "find_irreducible",
    "make_prime_field",
    "make_extension_field",
    "make_product",
    "make_field",
    "parse_ring",
    "pow_n",
    "nth_power_subgroup",
    "nth_root_count",
    "has_nth_root_of_minus_one",
    "prime_powers_up_to",
]


class RingError(ValueError):
    """Invalid ring construction or ring operation."""


class DescriptorError(ValueError):
    """Malformed ring or ideal descriptor text."""


def smallest_prime_factor(n: int) -> int:
    """Smallest prime factor of n >= 2 (trial division)."""
    if n < 2:
        raise ValueError(f"expected an integer >= 2, got {n}")
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def prime_power_decomposition(m: int) -> tuple[int, int]:
    """Return (p, k) with m = p**k, or raise if m is not a prime power."""
    if m < 2:
        raise RingError(f"{m} is not a prime power")
    p = smallest_prime_factor(m)
    k = 0
    rest = m
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise RingError(f"{m} is not a prime power ({p} and {rest} both divide it)")
    return p, k


def prime_powers_up_to(bound: int) -> list[int]:
    """All prime powers p**k in [2, bound], ascending."""
    out = []
    for m in range(2, bound + 1):
        try:
            prime_power_decomposition(m)
        except RingError:
            continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over F_p: coefficient tuples, low degree first, trimmed


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for j, mj in enumerate(m):
                r[shift + j] = (r[shift + j] - lead * mj) % p
        r.pop()
    return _poly_trim(r)


def _poly_text(c) -> str:
    """Render a coefficient tuple as a polynomial in x, ascending powers."""
    if not c:
        return "0"
    terms = []
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        if j == 0:
            terms.append(str(cj))
        else:
            coeff = "" if cj == 1 else str(cj)
            xpow = "x" if j == 1 else f"x^{j}"
            terms.append(coeff + xpow)
    return "+".join(terms)


def _is_irreducible(f, p):
    """Trial division by every monic divisor of degree <= deg(f)//2.

    Returns (True, None) or (False, witness_factor).  Deterministic and exact;
    fine at desk scale where deg(f)//2 stays small.
    """
    k = len(f) - 1
    if k < 1:
        return False, None
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tail + (1,)
            if not _poly_mod(f, g, p):
                return False, g
    return True, None


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficient tuples are compared low-degree first, so x^2+x loses to x^2+1
    only when both are candidates; degree-1 polynomials are always irreducible
    and the answer for k=1 is plain x.
    """
    if not is_prime(p):
        raise RingError(f"{p} is not prime ({smallest_prime_factor(p)} divides it)")
    if k < 1:
        raise RingError(f"degree must be >= 1, got {k}")
    for low in itertools.product(range(p), repeat=k):
        f = low + (1,)
        ok, _ = _is_irreducible(f, p)
        if ok:
            return f
    raise AssertionError("unreachable: an irreducible of every degree exists")


# ---------------------------------------------------------------------------


class RingBackend:
    """Finite commutative ring with unity on element indices 0..order-1.

    Subclasses must set `order`, `char`, `one`, `is_field` and implement the
    scalar and vectorized arithmetic.  Instances are immutable after
    construction and safe to share between threads.
    """

    order: int
    char: int
    one: int
    is_field: bool

    # -- scalar ops -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, n: int) -> int:
        """a**n by square-and-multiply; n >= 1."""
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        result = None
        base = a
        while n:
            if n & 1:
                result = base if result is None else self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    # -- vectorized ops (numpy int64 in, int64 out, broadcasting) ----------
    def add_vec(self, a, b):
        raise NotImplementedError

    def neg_vec(self, a):
        raise NotImplementedError

    def mul_vec(self, a, b):
        raise NotImplementedError

    def pow_vec(self, a, n: int):
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        a = np.asarray(a, dtype=np.int64)
        result = None
        base = a
        while n:
            if n & 1:
                result = base if result is None else self.mul_vec(result, base)
            n >>= 1
            if n:
                base = self.mul_vec(base, base)
        return result

    # -- presentation -------------------------------------------------------
    def label(self, a: int) -> str:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()} order={self.order}>"


class PrimeField(RingBackend):
    """Z_p for prime p; element i is the residue i."""

    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            factor = smallest_prime_factor(p) if p >= 2 else p
            raise RingError(f"{p} is not prime ({factor} divides it)"
                            if p >= 2 else f"{p} is not prime")
        self.p = p
        self.order = p
        self.char = p
        self.one = 1
        self.is_field = True

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def pow(self, a, n):
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        return pow(a, n, self.p)

    def add_vec(self, a, b):
        return (np.asarray(a, np.int64) + np.asarray(b, np.int64)) % self.p

    def neg_vec(self, a):
        return (-np.asarray(a, np.int64)) % self.p

    def mul_vec(self, a, b):
        return (np.asarray(a, np.int64) * np.asarray(b, np.int64)) % self.p

    def label(self, a):
        return str(a)

    def describe(self):
        return f"Fp:{self.p}"


@dataclass(frozen=True)
class ExtensionFieldSpec:
    """Defining data of F_{p^k}: the prime p and a monic irreducible modulus.

    `modulus` lists coefficients low degree first and includes the leading 1,
    so x^2+x+1 over F_2 is (1, 1, 1).
    """

    p: int
    modulus: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1


class ExtensionField(RingBackend):
    """F_{p^k} = F_p[x]/(modulus); element index encodes the coefficient
    vector in base p, low-degree digit least significant."""

    def __init__(self, p: int, modulus, use_tables: bool | None = None):
        if not is_prime(p):
            raise RingError(f"{p} is not prime ({smallest_prime_factor(p)} divides it)")
        modulus = tuple(int(c) % p for c in modulus)
        k = len(modulus) - 1
        if k < 1:
            raise RingError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise RingError(f"modulus {_poly_text(modulus)} is not monic over F_{p}")
        ok, factor = _is_irreducible(modulus, p)
        if not ok:
            raise RingError(
                f"modulus {_poly_text(modulus)} is reducible over F_{p}: "
                f"divisible by {_poly_text(factor)}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        self.char = p
        self.one = 1
        self.is_field = True
        self._pw = tuple(p ** j for j in range(k))
        self._use_tables = self.order <= 256 if use_tables is None else use_tables
        self._mul_table = self._build_mul_table() if self._use_tables else None

    # -- encoding -----------------------------------------------------------
    def coeffs_of(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return _poly_trim(out)

    def element_from_coeffs(self, coeffs) -> int:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.k:
            raise RingError(f"coefficient vector longer than degree {self.k}")
        return sum(c * w for c, w in zip(coeffs, self._pw))

    # -- scalar ops (polynomial route) --------------------------------------
    def add(self, a, b):
        p = self.p
        out = 0
        for w in self._pw:
            out += (((a // w) % p + (b // w) % p) % p) * w
        return out

    def neg(self, a):
        p = self.p
        out = 0
        for w in self._pw:
            out += ((p - (a // w) % p) % p) * w
        return out

    def mul(self, a, b):
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        return self._mul_poly(a, b)

    def _mul_poly(self, a, b):
        prod = _poly_mul(self.coeffs_of(a), self.coeffs_of(b), self.p)
        return self.element_from_coeffs(_poly_mod(prod, self.modulus, self.p))

    def _build_mul_table(self):
        m = self.order
        table = np.empty((m, m), dtype=np.int64)
        for a in range(m):
            for b in range(a, m):
                v = self._mul_poly(a, b)
                table[a, b] = v
                table[b, a] = v
        return table

    # -- discrete exp/log over a generator (vectorized route) ---------------
    @cached_property
    def _exp_log(self):
        m = self.order
        for g in range(2, m):
            vals = [1]
            v = g
            while v != 1:
                vals.append(v)
                v = self._mul_poly(v, g)
                if len(vals) > m:  # defensive; cannot happen in a field
                    raise AssertionError("multiplication is not cyclic")
            if len(vals) == m - 1:
                exp = np.array(vals, dtype=np.int64)
                log = np.zeros(m, dtype=np.int64)
                log[exp] = np.arange(m - 1, dtype=np.int64)
                return exp, log
        raise AssertionError("no generator found; modulus is not irreducible")

    def add_vec(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        p = self.p
        out = 0
        for w in self._pw:
            out = out + (((a // w) % p + (b // w) % p) % p) * w
        return out

    def neg_vec(self, a):
        a = np.asarray(a, np.int64)
        p = self.p
        out = 0
        for w in self._pw:
            out = out + ((p - (a // w) % p) % p) * w
        return out

    def mul_vec(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        exp, log = self._exp_log
        val = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, val)

    def pow_vec(self, a, n):
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        a = np.asarray(a, np.int64)
        exp, log = self._exp_log
        val = exp[(n * log[a]) % (self.order - 1)]
        return np.where(a == 0, 0, val)

    def label(self, a):
        return _poly_text(self.coeffs_of(a))

    def describe(self):
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"Fq:{self.p}:{self.k}:{coeffs}"


class ProductRing(RingBackend):
    """Direct product with componentwise arithmetic.

    The element index is the mixed-radix encoding of the coordinate indices,
    first factor most significant.
    """

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise RingError("a product needs at least one factor")
        self.factors = factors
        self.order = math.prod(f.order for f in factors)
        strides = []
        s = self.order
        for f in factors:
            s //= f.order
            strides.append(s)
        self.strides = tuple(strides)
        self.char = math.lcm(*(f.char for f in factors))
        self.one = self.element_from_coords([f.one for f in factors])
        self.is_field = len(factors) == 1 and factors[0].is_field

    def coords_of(self, a: int) -> tuple[int, ...]:
        return tuple((a // s) % f.order for f, s in zip(self.factors, self.strides))

    def element_from_coords(self, coords) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise RingError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        out = 0
        for c, f, s in zip(coords, self.factors, self.strides):
            if not 0 <= c < f.order:
                raise RingError(f"coordinate {c} out of range for factor of order {f.order}")
            out += c * s
        return out

    def coord_vec(self, a, i: int):
        return (np.asarray(a, np.int64) // self.strides[i]) % self.factors[i].order

    def _map(self, op, a, b=None):
        out = 0
        for i, (f, s) in enumerate(zip(self.factors, self.strides)):
            ca = (a // s) % f.order
            if b is None:
                out += op(f, ca) * s
            else:
                out += op(f, ca, (b // s) % f.order) * s
        return out

    def add(self, a, b):
        return self._map(lambda f, x, y: f.add(x, y), a, b)

    def neg(self, a):
        return self._map(lambda f, x: f.neg(x), a)

    def mul(self, a, b):
        return self._map(lambda f, x, y: f.mul(x, y), a, b)

    def pow(self, a, n):
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        return self._map(lambda f, x: f.pow(x, n), a)

    def _map_vec(self, op, a, b=None):
        a = np.asarray(a, np.int64)
        if b is not None:
            b = np.asarray(b, np.int64)
        out = 0
        for f, s in zip(self.factors, self.strides):
            ca = (a // s) % f.order
            if b is None:
                out = out + op(f, ca) * s
            else:
                out = out + op(f, ca, (b // s) % f.order) * s
        return out

    def add_vec(self, a, b):
        return self._map_vec(lambda f, x, y: f.add_vec(x, y), a, b)

    def neg_vec(self, a):
        return self._map_vec(lambda f, x: f.neg_vec(x), a)

    def mul_vec(self, a, b):
        return self._map_vec(lambda f, x, y: f.mul_vec(x, y), a, b)

    def pow_vec(self, a, n):
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        return self._map_vec(lambda f, x: f.pow_vec(x, n), a)

    def label(self, a):
        return "(" + ",".join(f.label(c) for f, c in zip(self.factors, self.coords_of(a))) + ")"

    def describe(self):
        return "prod(" + ",".join(f.describe() for f in self.factors) + ")"


# ---------------------------------------------------------------------------
# constructors


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def make_extension_field(spec: ExtensionFieldSpec, use_tables: bool | None = None) -> ExtensionField:
    return ExtensionField(spec.p, spec.modulus, use_tables=use_tables)


def make_product(factors) -> ProductRing:
    return ProductRing(factors)


def make_field(m: int, modulus=None) -> RingBackend:
    """Field of prime-power order m, with the default (lexicographically
    smallest) irreducible modulus unless one is supplied."""
    p, k = prime_power_decomposition(m)
    if k == 1:
        if modulus is not None:
            raise RingError("a prime field takes no modulus")
        return PrimeField(p)
    return ExtensionField(p, find_irreducible(p, k) if modulus is None else modulus)


# ---------------------------------------------------------------------------
# descriptor parsing:  Fp:p | Fq:p:k[:c0,c1,...,ck] | prod(desc,desc,...)


def _split_top_level(text: str) -> list[str]:
    """Split factor descriptors on top-level commas.

    Modulus coefficients are themselves comma-separated, so a comma only
    starts a new factor when what follows looks like a descriptor head
    (Fp:, Fq:, prod(); bare integers re-attach to the previous factor).
    """
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise DescriptorError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    merged: list[str] = []
    heads = ("Fp:", "Fq:", "prod(")
    for part in parts:
        if merged and not part.strip().startswith(heads):
            merged[-1] += "," + part
        else:
            merged.append(part)
    return merged


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DescriptorError(f"bad {what} {text!r}") from None


@lru_cache(maxsize=None)
def parse_ring(text: str) -> RingBackend:
    """Parse a ring descriptor.  Results are cached; backends are immutable."""
    t = text.strip()
    if t.startswith("prod(") and t.endswith(")"):
        inner = t[len("prod("):-1]
        if not inner.strip():
            raise DescriptorError("prod() needs at least one factor")
        return ProductRing(parse_ring(part) for part in _split_top_level(inner))
    if t.startswith("Fp:"):
        return PrimeField(_parse_int(t[3:], "prime"))
    if t.startswith("Fq:"):
        parts = t[3:].split(":")
        if len(parts) not in (2, 3):
            raise DescriptorError(f"bad extension-field descriptor {text!r}")
        p = _parse_int(parts[0], "prime")
        k = _parse_int(parts[1], "degree")
        if len(parts) == 2:
            return ExtensionField(p, find_irreducible(p, k))
        coeffs = tuple(_parse_int(c, "coefficient") for c in parts[2].split(","))
        if len(coeffs) != k + 1:
            raise DescriptorError(
                f"modulus needs {k + 1} coefficients (low degree first), got {len(coeffs)}")
        return ExtensionField(p, coeffs)
    raise DescriptorError(f"unrecognized ring descriptor {text!r}")


# ---------------------------------------------------------------------------
# power structure of fields


@dataclass(frozen=True)
class FieldParams:
    """The numbers controlling n-th powers in a field of order m:
    d = gcd(n, m-1) and alpha = (m-1)/d."""

    m: int
    n: int
    d: int
    alpha: int

    @classmethod
    def compute(cls, m: int, n: int) -> "FieldParams":
        if m < 2:
            raise RingError(f"field order must be >= 2, got {m}")
        if n < 1:
            raise RingError(f"exponent must be >= 1, got {n}")
        d = math.gcd(n, m - 1)
        return cls(m=m, n=n, d=d, alpha=(m - 1) // d)


def pow_n(ring: RingBackend, a: int, n: int) -> int:
    """a**n in the ring; n >= 1 (n = 0 is rejected, the graphs never use it)."""
    if n < 1:
        raise RingError(f"exponent must be >= 1, got {n}")
    return ring.pow(a, n)


def nth_power_subgroup(ring: RingBackend, n: int) -> frozenset[int]:
    """S_n = {a**n : a nonzero} for a field backend."""
    if not ring.is_field:
        raise RingError("nth_power_subgroup needs a field backend")
    if n < 1:
        raise RingError(f"exponent must be >= 1, got {n}")
    powers = ring.pow_vec(np.arange(1, ring.order, dtype=np.int64), n)
    return frozenset(int(v) for v in np.unique(powers))

def nth_root_count(ring: RingBackend, a: int, n: int) -> int:
    """Number of nonzero x with x**n = a; a must be nonzero."""
    if not ring.is_field:
        raise RingError("nth_root_count needs a field backend")
    if a == 0:
        raise RingError("root counting is defined for nonzero targets only")
    powers = ring.pow_vec(np.arange(1, ring.order, dtype=np.int64), n)
    return int(np.count_nonzero(powers == a))


def has_nth_root_of_minus_one(ring: RingBackend, n: int):
    """Smallest-index u with u**n = -1, or None if no such element exists."""
    if n < 1:
        raise RingError(f"exponent must be >= 1, got {n}")
    minus_one = ring.neg(ring.one)
    powers = ring.pow_vec(np.arange(ring.order, dtype=np.int64), n)
    hits = np.nonzero(powers == minus_one)[0]
    return int(hits[0]) if hits.size else None

"""Exact coefficient arithmetic: prime fields Z_p, rationals Q, and integers Z.

Every domain exposes the same small kernel: element construction from an
integer, ring/field operations, and a sparse-column ``axpy`` used by the
matrix reduction.  Columns are sorted lists of ``(row, coefficient)`` pairs
with no explicit zeros; ``axpy(t, src, dst)`` returns ``dst + t * src`` in
that representation.  Floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, NonUnitError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Domain:
    """Base coefficient domain; subclasses fix the element representation."""

    name: str = "?"
    is_field: bool = False
    zero = 0
    one = 1

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def axpy(self, t, src, dst):
        """Return dst + t*src for sorted sparse columns (t nonzero)."""
        add, mul, zero = self.add, self.mul, self.zero
        out = []
        ap = out.append
        ia = ib = 0
        na, nb = len(src), len(dst)
        while ia < na and ib < nb:
            a = src[ia]
            b = dst[ib]
            ra = a[0]
            rb = b[0]
            if ra < rb:
                ap((ra, mul(t, a[1])))
                ia += 1
            elif ra > rb:
                ap(b)
                ib += 1
            else:
                c = add(b[1], mul(t, a[1]))
                if c != zero:
                    ap((ra, c))
                ia += 1
                ib += 1
        for k in range(ia, na):
            a = src[k]
            ap((a[0], mul(t, a[1])))
        out.extend(dst[ib:])
        return out

    def __repr__(self):
        return f"<domain {self.name}>"


class PrimeField(Domain):
    """Residues 0..p-1 under arithmetic mod p; p is checked prime."""

    is_field = True

    _INV_TABLE_LIMIT = 4096

    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"Zp:{p}"
        if p <= self._INV_TABLE_LIMIT:
            self._inv = [0] + [pow(a, -1, p) for a in range(1, p)]
        else:
            self._inv = None

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DomainError(f"cannot invert 0 in {self.name}")
        return self._inv[a] if self._inv is not None else pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def axpy(self, t, src, dst):
        p = self.p
        out = []
        ap = out.append
        ia = ib = 0
        na, nb = len(src), len(dst)
        if p == 2:
            # Nonzero residues are all 1, so equal rows always cancel.
            while ia < na and ib < nb:
                a = src[ia]
                b = dst[ib]
                ra = a[0]
                rb = b[0]
                if ra < rb:
                    ap(a)
                    ia += 1
                elif ra > rb:
                    ap(b)
                    ib += 1
                else:
                    ia += 1
                    ib += 1
            out.extend(src[ia:])
            out.extend(dst[ib:])
            return out
        while ia < na and ib < nb:
            a = src[ia]
            b = dst[ib]
            ra = a[0]
            rb = b[0]
            if ra < rb:
                ap((ra, t * a[1] % p))
                ia += 1
            elif ra > rb:
                ap(b)
                ib += 1
            else:
                c = (b[1] + t * a[1]) % p
                if c:
                    ap((ra, c))
                ia += 1
                ib += 1
        for k in range(ia, na):
            a = src[k]
            ap((a[0], t * a[1] % p))
        out.extend(dst[ib:])
        return out

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class RationalField(Domain):
    """Arbitrary-precision rationals in lowest terms (fractions.Fraction)."""

    is_field = True
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DomainError("cannot invert 0 in Q")
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


class IntegerRing(Domain):
    """Arbitrary-precision signed integers; only +-1 are invertible."""

    is_field = False
    name = "Z"

    def from_int(self, n: int) -> int:
        return n

    def add(self, a: int, b: int) -> int:
        return a + b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b

    def inv(self, a: int) -> int:
        if a == 1 or a == -1:
            return a
        raise NonUnitError(f"{a} is not a unit in Z")

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DomainError("division by zero in Z")
        q, r = divmod(a, b)
        if r:
            raise NonUnitError(f"{a} is not divisible by {b} in Z")
        return q

    def axpy(self, t, src, dst):
        out = []
        ap = out.append
        ia = ib = 0
        na, nb = len(src), len(dst)
        while ia < na and ib < nb:
            a = src[ia]
            b = dst[ib]
            ra = a[0]
            rb = b[0]
            if ra < rb:
                ap((ra, t * a[1]))
                ia += 1
            elif ra > rb:
                ap(b)
                ib += 1
            else:
                c = b[1] + t * a[1]
                if c:
                    ap((ra, c))
                ia += 1
                ib += 1
        if t == 1:
            out.extend(src[ia:])
        else:
            for k in range(ia, na):
                a = src[k]
                ap((a[0], t * a[1]))
        out.extend(dst[ib:])
        return out

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")


Q = RationalField()
Z = IntegerRing()


def parse_field_spec(spec) -> Domain:
    """Turn a field spec ('q', 'zp:5', or a Domain) into a field domain."""
    if isinstance(spec, Domain):
        if not spec.is_field:
            raise DomainError(f"{spec.name} is not a field")
        return spec
    s = str(spec).strip().lower()
    if s == "q":
        return Q
    if s.startswith("zp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise DomainError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise DomainError(f"bad field spec {spec!r} (expected 'q' or 'zp:<prime>')")

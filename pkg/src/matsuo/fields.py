"""Exact scalar arithmetic over Q and over prime fields F_p of odd characteristic.

Field elements are plain Python values: ``fractions.Fraction`` for the
rationals (always in lowest terms with positive denominator, so equality is
structural) and ints in ``range(p)`` for F_p.  A field object bundles the
operations; everything downstream (matrices, algebras) stays generic over it.
"""

from fractions import Fraction


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """The field Q with exact arbitrary-precision arithmetic."""

    characteristic = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def fmt(self, a):
        return "%d/%d" % (a.numerator, a.denominator)

    def parse(self, s):
        return Fraction(s.strip())

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field F_p for an odd prime p; elements are ints in range(p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p
        self.characteristic = p
        self.name = "F%d" % p
        self.zero = 0
        self.one = 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a):
        return "%d mod %d" % (a % self.p, self.p)

    def parse(self, s):
        s = s.strip()
        if "mod" in s:
            r, m = s.split("mod")
            if int(m) != self.p:
                raise ValueError("scalar %r has wrong modulus for %s" % (s, self.name))
            return int(r) % self.p
        if "/" in s:
            num, den = s.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


def field_from_name(name):
    """Parse a field flag: ``Q`` or ``F<p>`` for an odd prime p."""
    name = name.strip()
    if name == "Q":
        return Rationals()
    if name.startswith("F"):
        return PrimeField(int(name[1:]))
    raise ValueError("unknown field %r (expected Q or F<p>)" % (name,))


def scalar_from_string(field, s):
    """Read a scalar such as ``1/2`` or ``-3`` into the given field."""
    s = s.strip()
    if "/" in s and isinstance(field, PrimeField):
        num, den = s.split("/")
        return field.div(field.from_int(int(num)), field.from_int(int(den)))
    return field.parse(s)

"""Exact scalar fields: the rationals and prime fields F_p."""

from fractions import Fraction


class Field:
    """Arithmetic helper for one exact field.

    Scalars are plain Python objects: ``int``/``Fraction`` over Q and
    ``int`` in ``range(p)`` over F_p.  Every operation returns a
    normalized scalar so equality and zero tests are exact.
    """

    def __init__(self, p=None):
        if p is not None:
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, spec):
        """``"Q"`` or ``"Fp:<p>"`` (``"Fp"`` alone means p = 32003)."""
        spec = spec.strip()
        if spec in ("Q", "QQ", "rationals"):
            return cls()
        if spec.startswith("Fp") or spec.startswith("GF"):
            _, _, rest = spec.partition(":")
            return cls(int(rest) if rest else 32003)
        raise ValueError(f"unknown field {spec!r}")

    @property
    def name(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        if self.p is None:
            return a + b
        return (a + b) % self.p

    def sub(self, a, b):
        if self.p is None:
            return a - b
        return (a - b) % self.p

    def mul(self, a, b):
        if self.p is None:
            return a * b
        return a * b % self.p

    def neg(self, a):
        if self.p is None:
            return -a
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a) if isinstance(a, int) else 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a):
        return str(a)


QQ = Field()

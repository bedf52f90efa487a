"""Integer polynomials, just enough for Hilbert polynomials."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InexactDivision


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in ascending degree; trailing zeros are stripped."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def one_minus_t(cls, k: int) -> "IntPolynomial":
        """``1 - t^k``."""
        return cls((1,) + (0,) * (k - 1) + (-1,)) if k else cls()

    @classmethod
    def geometric(cls, count: int, step: int = 1) -> "IntPolynomial":
        """``1 + t^step + ... + t^((count-1) step)``."""
        c = [0] * ((count - 1) * step + 1) if count else []
        for k in range(count):
            c[k * step] = 1
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divide_exact(self, other: "IntPolynomial") -> "IntPolynomial":
        """Synthetic division by a polynomial with leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise InexactDivision("divisor is not monic up to sign")
        rem = list(self.coeffs)
        dq = other.degree
        q = [0] * max(len(rem) - dq, 0)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + dq] * lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        if any(rem):
            raise InexactDivision(f"{self} is not divisible by {other}")
        return IntPolynomial(tuple(q))

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out


def product(polys) -> IntPolynomial:
    out = IntPolynomial((1,))
    for p in polys:
        out = out * p
    return out

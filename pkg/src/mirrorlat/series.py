"""Truncated multivariate power series with rational coefficients.

A series in q_1..q_r keeps only monomials of total degree <= cutoff; every
operation truncates at the same cutoff, so identities checked here are
identities modulo (q)^(cutoff+1).
"""

from fractions import Fraction
from itertools import product


class TruncatedSeries:
    __slots__ = ("nvars", "cutoff", "_c")

    def __init__(self, nvars, cutoff, coeffs=None):
        self.nvars = nvars
        self.cutoff = cutoff
        c = {}
        for exp, val in (coeffs or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            val = Fraction(val)
            if val and sum(exp) <= cutoff:
                c[exp] = c.get(exp, Fraction(0)) + val
        self._c = {e: v for e, v in c.items() if v}

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars, cutoff, value):
        return cls(nvars, cutoff, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars, cutoff, exp, value=1):
        return cls(nvars, cutoff, {tuple(exp): value})

    @classmethod
    def variable(cls, nvars, cutoff, j):
        return cls.monomial(nvars, cutoff, tuple(int(i == j) for i in range(nvars)))

    @classmethod
    def geometric(cls, nvars, cutoff, exp):
        """q^exp / (1 - q^exp) = q^exp + q^(2 exp) + ..."""
        d = sum(exp)
        if d == 0:
            raise ValueError("geometric series needs a nonconstant monomial")
        out = {}
        k = 1
        while k * d <= cutoff:
            out[tuple(k * e for e in exp)] = Fraction(1)
            k += 1
        return cls(nvars, cutoff, out)

    def _like(self, coeffs):
        return TruncatedSeries(self.nvars, self.cutoff, coeffs)

    def zero(self):
        return self._like({})

    # -- access -------------------------------------------------------------
    def items(self):
        return sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coeff(self, exp):
        return self._c.get(tuple(exp), Fraction(0))

    def const(self):
        return self.coeff((0,) * self.nvars)

    def is_zero(self):
        return not self._c

    def low_degree(self):
        """Smallest total degree carrying a nonzero coefficient (None if zero)."""
        return min((sum(e) for e in self._c), default=None)

    def _check(self, other):
        if self.nvars != other.nvars or self.cutoff != other.cutoff:
            raise ValueError("series with different variables or cutoff")

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(self.nvars, self.cutoff, other)
        self._check(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, Fraction(0)) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = Fraction(other)
            return self._like({e: v * other for e, v in self._c.items()})
        self._check(other)
        out = {}
        D = self.cutoff
        for e1, v1 in self._c.items():
            d1 = sum(e1)
            for e2, v2 in other._c.items():
                if d1 + sum(e2) > D:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + v1 * v2
        return self._like(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (self.nvars, self.cutoff, self._c) == (other.nvars, other.cutoff, other._c)
        return self == TruncatedSeries.constant(self.nvars, self.cutoff, other)

    def __hash__(self):
        return hash((self.nvars, self.cutoff, tuple(self.items())))

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for e, v in self.items():
            mono = "*".join(f"q{j + 1}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
            terms.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def theta(self, j):
        """Logarithmic derivative q_j d/dq_j."""
        return self._like({e: v * e[j] for e, v in self._c.items()})

    def inverse(self):
        c0 = self.const()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        # 1/(c0 (1 + x)) = (1/c0) sum (-x)^k
        x = self * (1 / c0) - 1
        out = TruncatedSeries.constant(self.nvars, self.cutoff, 1)
        power = out
        for _ in range(self.cutoff):
            power = power * (-x)
            if power.is_zero():
                break
            out = out + power
        return out * (1 / c0)

    def __pow__(self, k):
        out = TruncatedSeries.constant(self.nvars, self.cutoff, 1)
        for _ in range(k):
            out = out * self
        return out

    def compose(self, subs):
        """Substitute q_j -> subs[j]; each subs[j] must have zero constant term."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        if any(s.const() != 0 for s in subs):
            raise ValueError("substituted series must have zero constant term")
        ref = subs[0] if subs else None
        nv, D = (ref.nvars, ref.cutoff) if ref is not None else (0, self.cutoff)
        out = TruncatedSeries(nv, D)
        cache = {}
        for e, v in self._c.items():
            term = TruncatedSeries.constant(nv, D, v)
            for j, k in enumerate(e):
                if k:
                    key = (j, k)
                    if key not in cache:
                        cache[key] = subs[j] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def evaluate_at_zero(self):
        return self.const()


def monomials(nvars, cutoff):
    """All exponent vectors of total degree <= cutoff, by degree then lexicographic."""
    out = [e for e in product(range(cutoff + 1), repeat=nvars) if sum(e) <= cutoff]
    return sorted(out, key=lambda e: (sum(e), e))


# -- matrices of series -------------------------------------------------------

def smat_const(M, nvars, cutoff):
    return [[TruncatedSeries.constant(nvars, cutoff, x) for x in row] for row in M]


def smat_zero(n, m, nvars, cutoff):
    return [[TruncatedSeries(nvars, cutoff) for _ in range(m)] for _ in range(n)]


def smat_identity(n, nvars, cutoff):
    return [[TruncatedSeries.constant(nvars, cutoff, int(i == j)) for j in range(n)] for i in range(n)]


def smat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def smat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def smat_scale(A, s):
    return [[a * s for a in row] for row in A]


def smat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if a.is_zero() or b.is_zero():
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else A[i][0].zero())
        out.append(row)
    return out


def smat_commutator(A, B):
    return smat_sub(smat_mul(A, B), smat_mul(B, A))


def smat_theta(A, j):
    return [[a.theta(j) for a in row] for row in A]


def smat_at_zero(A):
    return [[a.const() for a in row] for row in A]


def smat_is_zero(A):
    return all(a.is_zero() for row in A for a in row)


def smat_apply(A, v):
    """A(q) applied to a constant rational vector: list of series."""
    out = []
    for row in A:
        acc = row[0].zero()
        for a, x in zip(row, v):
            if x:
                acc = acc + a * x
        out.append(acc)
    return out


def smat_inverse(A):
    """Inverse of a matrix of series whose constant term is invertible."""
    from . import ratlin
    n = len(A)
    nv, D = A[0][0].nvars, A[0][0].cutoff
    A0inv = ratlin.inverse(smat_at_zero(A))
    C = smat_const(A0inv, nv, D)
    # A = A0 (I + X) with X having no constant term; A^-1 = sum (-X)^k A0^-1
    X = smat_sub(smat_mul(C, A), smat_identity(n, nv, D))
    out = smat_identity(n, nv, D)
    power = out
    for _ in range(D):
        power = smat_mul(power, smat_scale(X, -1))
        if smat_is_zero(power):
            break
        out = smat_add(out, power)
    return smat_mul(out, C)


def coefficient_matrix(A, exp):
    return [[a.coeff(exp) for a in row] for row in A]

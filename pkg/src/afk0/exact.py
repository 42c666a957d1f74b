"""Exact integer/rational linear algebra and real algebraic sign tests.

Everything here is exact: integer matrices with arbitrary-precision
entries, fraction-free determinants, characteristic polynomials, and
Perron eigendata represented over the number field Q(lambda).  No
floating point is used anywhere in a certificate path.

All values are immutable and all functions are pure, so they are safe
to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence


class ImprimitiveMatrixError(ValueError):
    """Raised when Perron data is requested for a non-primitive matrix."""


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of arbitrary-precision integers."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.entries and any(len(r) != len(self.entries[0]) for r in self.entries):
            raise ValueError("ragged rows")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    @cached_property
    def is_nonnegative(self) -> bool:
        return all(e >= 0 for r in self.entries for e in r)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                for r in self.entries
            )
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product (v is a column vector)."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)


def matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return IntMatrix(tuple(tuple(int(e) for e in r) for r in rows))


def identity(n: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Exact rank via Gaussian elimination over Q."""
    a = [[Fraction(e) for e in r] for r in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    """Exact k-th power; k = 0 gives the identity."""
    if not m.is_square:
        raise ValueError("matrix power requires a square matrix")
    if k < 0:
        raise ValueError("negative power")
    result = identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        base = base * base if k > 1 else base
        k >>= 1
    return result


def char_poly(m: IntMatrix) -> tuple[int, ...]:
    """Characteristic polynomial det(tI - m), ascending coefficients.

    Uses the Berkowitz division-free algorithm, so the result is exact
    over the integers.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial requires a square matrix")
    n = m.rows
    if n == 0:
        return (1,)
    a = m.entries
    # Berkowitz: iteratively build the coefficient vector via Toeplitz products.
    coeffs = [1, -a[0][0]]  # descending, for the 1x1 leading principal minor
    for i in range(1, n):
        row = a[i][:i]
        col = [a[j][i] for j in range(i)]
        sub = [r[:i] for r in a[:i]]
        # powers[k] = row * sub^k * col
        powers = []
        vec = list(col)
        for _ in range(i):
            powers.append(sum(x * y for x, y in zip(row, vec)))
            vec = [sum(sub[r][c] * vec[c] for c in range(i)) for r in range(i)]
        toeplitz_col = [1, -a[i][i]] + [-p for p in powers]
        new = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            for l, t in enumerate(toeplitz_col):
                if k + l <= len(coeffs):
                    new[k + l] += c * t
        coeffs = new
    return tuple(reversed(coeffs))


# ---------------------------------------------------------------------------
# Dense polynomials (ascending coefficient lists) over Fraction


def poly_trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_deg(p: Sequence[Fraction]) -> int:
    return len(p) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return tuple(-c for c in p)


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and poly_trim(p):
        p = list(poly_trim(p))
        if len(p) < len(q):
            break
        k = len(p) - len(q)
        f = p[-1] / lead
        quot[k] = f
        for i, c in enumerate(q):
            p[k + i] -= f * c
        p.pop()
    return poly_trim(quot), poly_trim(p)


def poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p):
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_from_ints(p: Sequence[int]) -> tuple[Fraction, ...]:
    return poly_trim([Fraction(c) for c in p])


def sturm_sequence(p) -> list[tuple[Fraction, ...]]:
    seq = [poly_trim(p), poly_deriv(p)]
    while seq[-1]:
        _, rem = poly_divmod(seq[-2], seq[-1])
        seq.append(poly_neg(rem))
    seq.pop()
    return seq


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(seq, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] for a square-free polynomial."""
    va = _sign_changes([poly_eval(s, a) for s in seq])
    vb = _sign_changes([poly_eval(s, b) for s in seq])
    return va - vb


def root_bound(p) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


# ---------------------------------------------------------------------------
# Real algebraic numbers


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number: irreducible minimal polynomial over Z
    plus an isolating interval with rational, non-root endpoints."""

    minimal_polynomial: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    @cached_property
    def _poly(self) -> tuple[Fraction, ...]:
        return poly_from_ints(self.minimal_polynomial)

    @cached_property
    def _sturm(self) -> list[tuple[Fraction, ...]]:
        return sturm_sequence(self._poly)

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    def refined(self, steps: int = 1) -> "AlgebraicReal":
        """Shrink the isolating interval by bisection."""
        lo, hi = self.lo, self.hi
        p = self._poly
        s_hi = poly_eval(p, hi)
        for _ in range(steps):
            mid = (lo + hi) / 2
            v = poly_eval(p, mid)
            if v == 0:
                # nudge the endpoints; mid is the root itself
                eps = (hi - lo) / 4
                lo, hi = mid - eps, mid + eps
                s_hi = poly_eval(p, hi)
                continue
            if (v > 0) == (s_hi > 0):
                hi = mid
                s_hi = v
            else:
                lo = mid
        return AlgebraicReal(self.minimal_polynomial, lo, hi)

    def __float__(self) -> float:
        r = self.refined(40)
        return float((r.lo + r.hi) / 2)


def isolate_max_real_root(int_poly: Sequence[int]) -> AlgebraicReal | None:
    """Largest real root of a square-free integer polynomial, or None."""
    p = poly_from_ints(int_poly)
    if poly_deg(p) < 1:
        return None
    seq = sturm_sequence(p)
    bound = root_bound(p)
    lo, hi = -bound, bound
    if sturm_count(seq, lo, hi) == 0:
        return None
    # bisect keeping the rightmost root
    for _ in range(4 * len(p) + 64):
        if sturm_count(seq, lo, hi) == 1:
            break
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0 or sturm_count(seq, mid, hi) == 0:
            hi = mid if poly_eval(p, mid) != 0 else hi
            if poly_eval(p, mid) == 0:
                # the max root may be mid itself; widen slightly around it
                if sturm_count(seq, mid, hi) == 0:
                    eps = (hi - lo) / 4
                    lo, hi = mid - eps, mid + eps
                    if sturm_count(seq, lo, hi) == 1:
                        break
                    hi = mid + eps
                continue
        else:
            lo = mid
    while sturm_count(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if sturm_count(seq, mid, hi) >= 1 and poly_eval(p, mid) != 0:
            lo = mid
        else:
            hi = (mid + hi) / 2
    while poly_eval(p, lo) == 0 or poly_eval(p, hi) == 0:
        span = hi - lo
        if poly_eval(p, lo) == 0:
            lo -= span / 3
        if poly_eval(p, hi) == 0:
            hi += span / 3
    return AlgebraicReal(tuple(int(c) for c in int_poly), lo, hi)


@lru_cache(maxsize=None)
def _factor_int_poly(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Irreducible factors over Q of an integer polynomial (sympy-backed)."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(int(c) * t**i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, t))
    out = []
    for fac, _mult in factors:
        fc = [int(c) for c in reversed(sympy.Poly(fac, t).all_coeffs())]
        out.append(tuple(fc))
    return tuple(out)


# ---------------------------------------------------------------------------
# Number field arithmetic: elements of Q(lambda) as polynomials mod minpoly


@dataclass(frozen=True)
class FieldElement:
    """Element of Q(lambda), reduced mod the minimal polynomial of lambda."""

    root: AlgebraicReal
    coeffs: tuple[Fraction, ...]  # degree < deg(minpoly), ascending

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", poly_trim(self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.root, poly_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.root, poly_add(self.coeffs, poly_neg(other.coeffs)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.root, poly_neg(self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        prod = poly_mul(self.coeffs, other.coeffs)
        _, rem = poly_divmod(prod, self.root._poly)
        return FieldElement(self.root, rem)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.root.minimal_polynomial == other.root.minimal_polynomial
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.root.minimal_polynomial, self.coeffs))

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid: a*coeffs + b*minpoly = gcd (a unit since minpoly irreducible)
        r0, r1 = self.root._poly, self.coeffs
        s0, s1 = (), (Fraction(1),)
        while poly_deg(r1) > 0:
            q, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_add(s0, poly_neg(poly_mul(q, s1)))
        if not r1:
            raise ArithmeticError("minimal polynomial not irreducible")
        inv_lead = 1 / r1[0]
        _, rem = poly_divmod(tuple(c * inv_lead for c in s1), self.root._poly)
        return FieldElement(self.root, rem)

    def sign(self, budget: int = 256) -> int:
        """Exact sign of this element evaluated at the root."""
        if self.is_zero:
            return 0
        root = self.root
        for _ in range(budget):
            lo, hi = _interval_eval(self.coeffs, root.lo, root.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            root = root.refined(1)
        return _tarski_sign(self.coeffs, self.root)


def field_rational(root: AlgebraicReal, q: Fraction | int) -> FieldElement:
    return FieldElement(root, (Fraction(q),))


def field_generator(root: AlgebraicReal) -> FieldElement:
    if root.degree == 1:
        a, b = root.minimal_polynomial  # b*t + a = 0
        return FieldElement(root, (Fraction(-a, b),))
    return FieldElement(root, (Fraction(0), Fraction(1)))


def _interval_eval(p, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner evaluation of p over [lo, hi]."""
    acc_lo, acc_hi = Fraction(0), Fraction(0)
    for c in reversed(p):
        cands = [acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi]
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    return acc_lo, acc_hi


def _tarski_sign(p, root: AlgebraicReal) -> int:
    """Sign of p at the unique root of minpoly in (lo, hi), via the
    Sturm-Tarski query with the sequence (m, m'* p)."""
    m = root._poly
    seq = [m, poly_mul(poly_deriv(m), p)]
    while seq[-1]:
        _, rem = poly_divmod(seq[-2], seq[-1])
        seq.append(poly_neg(rem))
    seq.pop()
    return sturm_count(seq, root.lo, root.hi)


# ---------------------------------------------------------------------------
# Perron data


@dataclass(frozen=True)
class PerronData:
    """Dominant eigenvalue and exact left eigenvector of a primitive matrix.

    The eigenvector lives over Q(eigenvalue) and satisfies w*X = lambda*w
    exactly; it is normalised so its first coordinate is 1, and every
    coordinate is strictly positive.
    """

    matrix: IntMatrix
    eigenvalue: AlgebraicReal
    left_eigenvector: tuple[FieldElement, ...]


def is_primitive(m: IntMatrix) -> bool:
    """Primitivity check via the Wielandt bound (n-1)^2 + 1."""
    if not m.is_square or not m.is_nonnegative:
        return False
    n = m.rows
    if n == 0:
        return False
    bound = (n - 1) ** 2 + 1
    reach = [[bool(e) for e in r] for r in m.entries]
    step = [row[:] for row in reach]
    for _ in range(bound):
        if all(all(r) for r in reach):
            return True
        reach = [
            [any(reach[i][k] and step[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return all(all(r) for r in reach)


@lru_cache(maxsize=None)
def _perron_cached(entries: tuple[tuple[int, ...], ...]) -> PerronData:
    m = IntMatrix(entries)
    if not m.is_nonnegative:
        raise ValueError("Perron data requires a nonnegative matrix")
    if not is_primitive(m):
        raise ImprimitiveMatrixError(
            "matrix is imprimitive/reducible: no strictly positive power "
            f"up to the Wielandt bound ({(m.rows - 1) ** 2 + 1})"
        )
    cp = char_poly(m)
    best: AlgebraicReal | None = None
    for fac in _factor_int_poly(cp):
        cand = isolate_max_real_root(fac)
        if cand is None:
            continue
        if best is None or _algebraic_less(best, cand):
            best = cand
    assert best is not None, "primitive matrix must have a real eigenvalue"
    lam = best
    n = m.rows
    gen = field_generator(lam)
    # left eigenvector: kernel of (X^T - lambda I) over Q(lambda)
    a = [
        [field_rational(lam, m[(j, i)]) - (gen if i == j else field_rational(lam, 0))
         for j in range(n)]
        for i in range(n)
    ]
    w = _kernel_vector(a, lam)
    # normalise: first nonzero coordinate 1
    pivot = next(x for x in w if not x.is_zero)
    inv = pivot.inverse()
    w = tuple(x * inv for x in w)
    if any(x.sign() <= 0 for x in w):
        raise ArithmeticError("Perron eigenvector not strictly positive")
    return PerronData(m, lam, w)


def perron(m: IntMatrix) -> PerronData:
    """Perron-Frobenius data for a primitive nonnegative integer matrix."""
    return _perron_cached(m.entries)


def _algebraic_less(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    """Exact comparison a < b of two real algebraic numbers."""
    x, y = a, b
    for _ in range(512):
        if x.hi < y.lo:
            return True
        if y.hi < x.lo:
            return False
        x, y = x.refined(1), y.refined(1)
    # equal roots would share a minimal polynomial factor; distinct
    # irreducibles with a common root are impossible, so decide by
    # checking whether the polynomials coincide.
    if a.minimal_polynomial == b.minimal_polynomial:
        return False
    raise ArithmeticError("could not separate algebraic numbers")


def _kernel_vector(a: list[list[FieldElement]], lam: AlgebraicReal) -> tuple[FieldElement, ...]:
    """One nonzero kernel vector of a singular matrix over Q(lambda)."""
    n = len(a)
    a = [row[:] for row in a]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not a[i][c].is_zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and not a[i][c].is_zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
    free = [c for c in range(n) if c not in {c for _, c in pivots}]
    if not free:
        raise ArithmeticError("matrix is nonsingular; no kernel vector")
    fc = free[0]
    v = [field_rational(lam, 0)] * n
    v[fc] = field_rational(lam, 1)
    for pr, pc in pivots:
        v[pc] = -a[pr][fc]
    return tuple(v)


@dataclass(frozen=True)
class NonnegFunctional:
    """A nonnegative left eigenvector of a nonnegative matrix, for an
    exactly represented real eigenvalue > 0.  Pairing a candidate
    positive class against it gives a sound refutation: if the pairing
    is negative the class is never entrywise nonnegative."""

    eigenvalue: AlgebraicReal
    vector: tuple[FieldElement, ...]
    strict: bool  # every coordinate strictly positive


@lru_cache(maxsize=None)
def _nonneg_functionals_cached(entries: tuple[tuple[int, ...], ...]) -> tuple[NonnegFunctional, ...]:
    m = IntMatrix(entries)
    n = m.rows
    out = []
    for fac in _factor_int_poly(char_poly(m)):
        if fac[0] == 0:  # the factor t: eigenvalue 0, never a refuter
            continue
        lam = isolate_max_real_root(fac)
        if lam is None:
            continue
        # require the root strictly positive (0 never is: 'fac' irreducible
        # with root 0 is the factor t, whose max root 0 we skip)
        root = lam
        while root.lo < 0:
            if root.hi <= 0:
                break
            root = root.refined(1)
        if root.hi <= 0 or root.lo < 0:
            continue
        lam = root
        gen = field_generator(lam)
        a = [
            [field_rational(lam, m[(j, i)]) - (gen if i == j else field_rational(lam, 0))
             for j in range(n)]
            for i in range(n)
        ]
        try:
            w = _kernel_vector(a, lam)
        except ArithmeticError:
            continue
        # only use one-dimensional kernels: verify by checking the rank
        if _field_rank([[x for x in row] for row in a]) != n - 1:
            continue
        pivot = next(x for x in w if not x.is_zero)
        w = tuple(x * pivot.inverse() for x in w)
        signs = [x.sign() for x in w]
        if all(s >= 0 for s in signs):
            out.append(NonnegFunctional(lam, w, all(s > 0 for s in signs)))
        elif all(s <= 0 for s in signs):
            w = tuple(-x for x in w)
            out.append(NonnegFunctional(lam, w, all(s < 0 for s in signs)))
    return tuple(out)


def _field_rank(a: list[list[FieldElement]]) -> int:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not a[i][c].is_zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def nonnegative_left_eigenvectors(m: IntMatrix) -> tuple[NonnegFunctional, ...]:
    """All sign-normalised nonnegative simple left eigenvectors of m with
    positive eigenvalue, one per irreducible factor of the characteristic
    polynomial (taking each factor's largest real root)."""
    if not m.is_square:
        raise ValueError("square matrix required")
    return _nonneg_functionals_cached(m.entries)


def functional_sign(w: Sequence[FieldElement], v: Sequence[int], budget: int = 256) -> int:
    """Exact sign of sum(v_i * w_i) in the eigenvector's number field."""
    if len(v) != len(w):
        raise ValueError("length mismatch")
    lam = w[0].root
    acc = field_rational(lam, 0)
    for vi, wi in zip(v, w):
        if vi:
            acc = acc + field_rational(lam, vi) * wi
    return acc.sign(budget)


def sign_dot(v: Sequence[int], p: PerronData, budget: int = 256) -> int:
    """Exact sign of <v, w> where w is the Perron left eigenvector.

    Zero is certified algebraically (the inner product reduces to the
    zero element of Q(lambda)); a nonzero sign is certified by interval
    refinement with a Sturm-Tarski fallback.
    """
    w = p.left_eigenvector
    if len(v) != len(w):
        raise ValueError(f"vector length {len(v)} != eigenvector length {len(w)}")
    acc = field_rational(p.eigenvalue, 0)
    for vi, wi in zip(v, w):
        if vi:
            acc = acc + field_rational(p.eigenvalue, vi) * wi
    return acc.sign(budget)


def eigen_residual(p: PerronData) -> tuple[FieldElement, ...]:
    """w*X - lambda*w; the zero vector exactly for valid PerronData."""
    m, lam, w = p.matrix, p.eigenvalue, p.left_eigenvector
    gen = field_generator(lam)
    out = []
    for j in range(m.cols):
        s = field_rational(lam, 0)
        for i in range(m.rows):
            if m[(i, j)]:
                s = s + w[i] * field_rational(lam, m[(i, j)])
        out.append(s - gen * w[j])
    return tuple(out)

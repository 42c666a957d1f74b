"""Dimension-group elements of lim(Z^{n_k}, M_k).

Elements are (stage, integer vector) pairs.  The cone at each finite
stage is the entrywise-nonnegative orthant and the limit cone is the
union of its preimages, so positivity is decided either by pushing
forward until the vector is nonnegative or, for primitive stationary
systems, by the exact sign of the pairing with the Perron left
eigenvector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diagram import BratteliDiagram
from .exact import (
    IntMatrix,
    char_poly,
    det,
    functional_sign,
    is_primitive,
    nonnegative_left_eigenvectors,
    perron,
    rank,
)

DEFAULT_DEPTH = 40
POSITIVE_STAGE_CAP = 512


@dataclass(frozen=True)
class LimitElement:
    """A K_0 class given by its coordinate vector at a finite stage."""

    stage: int
    vector: tuple[int, ...]

    @property
    def is_zero_vector(self) -> bool:
        return all(x == 0 for x in self.vector)


def element(stage: int, vector: Sequence[int]) -> LimitElement:
    return LimitElement(stage, tuple(int(x) for x in vector))


def _check_element(d: BratteliDiagram, e: LimitElement) -> None:
    if e.stage < 1:
        raise ValueError("stages are 1-based")
    if len(e.vector) != len(d.sizes(e.stage)):
        raise ValueError(
            f"vector length {len(e.vector)} != summand count {len(d.sizes(e.stage))} at stage {e.stage}"
        )


def _max_stage(d: BratteliDiagram) -> int | None:
    """Largest stage we may push to (None = unbounded, stationary)."""
    return None if d.is_stationary else d.depth


def push(d: BratteliDiagram, e: LimitElement, to_stage: int) -> LimitElement:
    """Push forward along the composed multiplicity matrices."""
    _check_element(d, e)
    if to_stage < e.stage:
        raise ValueError(f"cannot push backwards: {e.stage} -> {to_stage}")
    cap = _max_stage(d)
    if cap is not None and to_stage > cap:
        raise ValueError(f"stage {to_stage} beyond diagram depth {cap}")
    v = e.vector
    for k in range(e.stage, to_stage):
        v = d.step(k).apply(v)
    return LimitElement(to_stage, v)


def equal(d: BratteliDiagram, e1: LimitElement, e2: LimitElement, depth: int = DEFAULT_DEPTH) -> str:
    """Decide equality in the limit group: 'equal' | 'distinct' | 'inconclusive'."""
    _check_element(d, e1)
    _check_element(d, e2)
    common = max(e1.stage, e2.stage)
    v = push(d, e1, common).vector
    w = push(d, e2, common).vector
    if v == w:
        return "equal"
    diff = tuple(a - b for a, b in zip(v, w))
    if d.is_stationary:
        x = d.stationary_generator
        if det(x) != 0:
            return "distinct"
        for _ in range(depth):
            diff = x.apply(diff)
            if all(c == 0 for c in diff):
                return "equal"
        return "inconclusive"
    if all(rank(d.step(k)) == d.step(k).cols for k in range(common, d.depth)):
        # every remaining presented step is injective: the difference
        # survives to the end of the presented prefix
        return "distinct"
    horizon = min(d.depth, common + depth)
    for k in range(common, horizon):
        diff = d.step(k).apply(diff)
        if all(c == 0 for c in diff):
            return "equal"
    return "inconclusive"


@dataclass(frozen=True)
class PositivityVerdict:
    """One of positive/not_positive/zero/inconclusive with its evidence."""

    status: str
    stage: int | None = None      # stage where the pushed vector is >= 0 (or hit 0)
    reason: str | None = None     # "entrywise" | "perron-sign" | "perron-kernel"
    sign: int | None = None       # Perron pairing sign, when computed
    depth_used: int | None = None

    @property
    def is_nonnegative(self) -> bool:
        return self.status in ("positive", "zero")


def positive(d: BratteliDiagram, e: LimitElement, depth: int = DEFAULT_DEPTH) -> PositivityVerdict:
    """Positivity of a limit element; see the module docstring.

    Stationary systems get exact refutations: if any nonnegative left
    eigenvector of the generator (positive eigenvalue) pairs negatively
    with the vector, no push forward can be entrywise nonnegative.  A
    strictly positive eigenvector pairing to exactly zero refutes too
    when the generator is injective, since a nonnegative push would then
    have to vanish.  For a primitive generator a positive Perron pairing
    guarantees eventual nonnegativity and the certificate stage is found
    by iteration.  Non-stationary systems use the iterative path only
    and may return inconclusive at the configured depth.
    """
    _check_element(d, e)
    if e.is_zero_vector:
        return PositivityVerdict("zero", stage=e.stage)
    cap = _max_stage(d)
    horizon = e.stage + depth if cap is None else min(cap, e.stage + depth)
    v = e.vector
    for k in range(e.stage, horizon + 1):
        if all(x == 0 for x in v):
            return PositivityVerdict("zero", stage=k)
        if all(x >= 0 for x in v):
            return PositivityVerdict("positive", stage=k, reason="entrywise")
        if k < horizon:
            v = d.step(k).apply(v)

    if not d.is_stationary:
        return PositivityVerdict("inconclusive", depth_used=depth)

    x = d.stationary_generator
    injective = det(x) != 0
    primitive = is_primitive(x)
    dominant_sign: int | None = None
    for f in nonnegative_left_eigenvectors(x):
        s = functional_sign(f.vector, e.vector)
        if s < 0:
            return PositivityVerdict("not_positive", reason="perron-sign", sign=s)
        if s == 0 and f.strict and injective:
            return PositivityVerdict("not_positive", reason="perron-kernel", sign=0)
        if f.strict:
            dominant_sign = s
    if primitive and dominant_sign is not None and dominant_sign > 0:
        # eventual entrywise nonnegativity is guaranteed; locate the stage
        v = e.vector
        for k in range(e.stage, e.stage + max(depth, POSITIVE_STAGE_CAP) + 1):
            if all(c >= 0 for c in v):
                return PositivityVerdict("positive", stage=k, reason="perron-sign", sign=dominant_sign)
            v = x.apply(v)
        return PositivityVerdict("positive", stage=None, reason="perron-sign", sign=dominant_sign)
    if not injective:
        v = e.vector
        for k in range(e.stage, e.stage + max(depth, POSITIVE_STAGE_CAP) + 1):
            if all(c == 0 for c in v):
                return PositivityVerdict("zero", stage=k)
            v = x.apply(v)
    return PositivityVerdict("inconclusive", sign=dominant_sign, depth_used=depth)


@dataclass(frozen=True)
class ScaleVerdict:
    status: str  # "in_scale" | "not_in_scale" | "inconclusive"
    lower: PositivityVerdict
    upper: PositivityVerdict


def in_scale(d: BratteliDiagram, e: LimitElement, depth: int = DEFAULT_DEPTH) -> ScaleVerdict:
    """Is the class within [0, order unit]?  Both bounds must be positive."""
    _check_element(d, e)
    unit = push(d, LimitElement(1, d.order_unit), e.stage)
    lower = positive(d, e, depth)
    comp = LimitElement(e.stage, tuple(u - x for u, x in zip(unit.vector, e.vector)))
    upper = positive(d, comp, depth)
    if lower.is_nonnegative and upper.is_nonnegative:
        status = "in_scale"
    elif lower.status == "not_positive" or upper.status == "not_positive":
        status = "not_in_scale"
    else:
        status = "inconclusive"
    return ScaleVerdict(status, lower, upper)


# ---------------------------------------------------------------------------
# Induced homomorphisms between limits


@dataclass(frozen=True)
class InducedMap:
    """Level maps commuting with the two systems' multiplicities."""

    source: BratteliDiagram
    target: BratteliDiagram
    level_maps: tuple[IntMatrix, ...]
    constant: bool

    def level(self, k: int) -> IntMatrix:
        if self.constant:
            return self.level_maps[0]
        if not 1 <= k <= len(self.level_maps):
            raise ValueError(f"no level map stored for stage {k}")
        return self.level_maps[k - 1]


def induced_map(
    source: BratteliDiagram,
    target: BratteliDiagram,
    level_maps: Sequence[IntMatrix],
    constant: bool = False,
) -> InducedMap:
    """Build an induced map, verifying every stored commuting square."""
    maps = tuple(level_maps)
    if constant:
        if len(maps) != 1:
            raise ValueError("constant induced map takes exactly one matrix")
        if not (source.is_stationary and target.is_stationary):
            raise ValueError("constant induced map requires stationary systems")
        s = maps[0]
        if s * source.stationary_generator != target.stationary_generator * s:
            raise ValueError("commuting square fails: S*X != Y*S")
    else:
        for k in range(1, len(maps)):
            left = maps[k] * source.step(k)
            right = target.step(k) * maps[k - 1]
            if left != right:
                raise ValueError(f"commuting square fails at level {k}")
    return InducedMap(source, target, maps, constant)


def induced_map_apply(m: InducedMap, e: LimitElement) -> LimitElement:
    """Apply the level map at the element's stage."""
    _check_element(m.source, e)
    return LimitElement(e.stage, m.level(e.stage).apply(e.vector))


# ---------------------------------------------------------------------------
# K_0 classification report


@dataclass(frozen=True)
class K0Report:
    kind: str  # "free-abelian-perron" | "adic" | "adic-sum" | "presented"
    description: str
    rank: int | None = None
    determinant: int | None = None
    minimal_polynomial: tuple[int, ...] | None = None
    eigenvector: tuple[str, ...] | None = None
    moduli: tuple[int, ...] | None = None


def _field_str(coeffs: tuple[Fraction, ...], symbol: str = "lam") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{symbol}" if c != 1 else symbol)
        else:
            parts.append(f"{c}*{symbol}^{i}" if c != 1 else f"{symbol}^{i}")
    return " + ".join(parts).replace("+ -", "- ")


def _integer_roots(cp: tuple[int, ...]) -> list[int] | None:
    """Roots if the char poly splits into distinct linear integer factors."""
    from .exact import _factor_int_poly

    roots = []
    for fac in _factor_int_poly(cp):
        if len(fac) != 2:
            return None
        a, b = fac
        if b not in (1, -1) or (a % b) != 0:
            return None
        roots.append(-a // b)
    if len(roots) != len(set(roots)) or len(roots) != len(cp) - 1:
        return None
    return roots


def k0_report(d: BratteliDiagram) -> K0Report:
    """Classify the presented K_0 group when the shape is recognizable."""
    if not d.is_stationary:
        return K0Report("presented", "presented direct limit (non-stationary system)")
    x = d.stationary_generator
    n = x.rows
    dx = det(x)
    if n == 1:
        m = x[(0, 0)]
        if m == 1:
            return K0Report("adic", "the integers Z", rank=1, determinant=1, moduli=(1,))
        return K0Report(
            "adic",
            f"{m}-adic rationals (generalised integer {m}^infinity)",
            determinant=dx,
            moduli=(m,),
        )
    if abs(dx) == 1:
        strict = [f for f in nonnegative_left_eigenvectors(x) if f.strict]
        if strict:
            f = max(strict, key=lambda f: float(f.eigenvalue))
            vec = tuple(_field_str(w.coeffs) for w in f.vector)
            note = "" if is_primitive(x) else " together with the conserved nonnegative functionals of the reducible generator"
            return K0Report(
                "free-abelian-perron",
                f"free abelian of rank {n}; positivity decided by the dominant Perron functional{note}",
                rank=n,
                determinant=dx,
                minimal_polynomial=f.eigenvalue.minimal_polynomial,
                eigenvector=vec,
            )
        return K0Report(
            "free-abelian-perron",
            f"free abelian of rank {n} (no strictly positive eigenfunctional; cone left implicit)",
            rank=n,
            determinant=dx,
        )
    roots = _integer_roots(char_poly(x))
    if roots is not None and all(r >= 1 for r in roots):
        mods = tuple(sorted(roots, reverse=True))
        desc = "direct sum of m-adic rational groups, m = " + ", ".join(map(str, mods))
        rads = {_prime_radical(m) for m in mods if m > 1}
        if len(rads) == 1:
            desc += f" (each a group of {rads.pop()}-adic type)"
        return K0Report("adic-sum", desc, determinant=dx, moduli=mods)
    return K0Report(
        "presented",
        "presented stationary direct limit (no closed-form classification)",
        determinant=dx,
    )


def _prime_radical(m: int) -> int:
    out = 1
    p = 2
    while m > 1:
        if m % p == 0:
            out *= p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    return out

"""Polynomials, harmonic symbols, space conventions, projection and Toeplitz action.

The function space is modelled by finite-degree analytic polynomials; symbols
are finite sums ``sum c_{s,t} z^s zbar^t``.  Everything is exact over
:class:`~toeplitz_lab.rational.GaussianRational`.

Three inner-product/projection conventions are supported (see
:class:`Convention`); every operation takes the convention explicitly, there
is no global state.  All values are immutable and every operation is pure, so
they can be shared across threads freely.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .rational import ZERO, GaussianRational, _frac


class Convention(Enum):
    """The three self-consistent readings of the weighted-disk setup.

    PAPER_DISK  -- area-measure monomial weights 1/(2(k+1)) with a projection
                   that sends z^s zbar^t (t>=1) to z^(s-t)/(2(s+1)) and leaves
                   analytic terms fixed.  This is the convention under which
                   the bundled worked reference cases reproduce.
    BERGMAN     -- same weights with the true orthogonal projection for them:
                   z^s zbar^t -> ((s-t+1)/(s+1)) z^(s-t).  Here T_(conj f) is
                   a genuine metric adjoint of T_f.
    CIRCLE      -- boundary convention: unit weights and z^s zbar^t -> z^(s-t).
                   Reproducing-kernel formulas hold here.

    In every convention keys with s < t project to zero.
    """

    PAPER_DISK = "paper-disk"
    BERGMAN = "bergman"
    CIRCLE = "circle"

    @classmethod
    def parse(cls, name: str) -> "Convention":
        for conv in cls:
            if conv.value == name:
                return conv
        raise ValueError(f"unknown convention {name!r}; expected one of "
                         f"{[c.value for c in cls]}")


def _clean(items: Iterable[tuple]) -> dict:
    out: dict = {}
    for key, val in items:
        if not isinstance(val, GaussianRational):
            val = GaussianRational(_frac(val))
        if key in out:
            val = out[key] + val
        if val.is_zero:
            out.pop(key, None)
        else:
            out[key] = val
    return out


class AnalyticPoly:
    """A polynomial in z with GaussianRational coefficients.

    Stored as a canonical map degree -> coefficient with no zero entries, so
    exact equality is structural equality.  Immutable by convention.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c = _clean(items)
        for k in c:
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"invalid degree {k!r}")
        self._c = c

    @classmethod
    def zero(cls) -> "AnalyticPoly":
        return cls()

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "AnalyticPoly":
        return cls([(k, GaussianRational(_frac(coeff)) if not isinstance(coeff, GaussianRational) else coeff)])

    def coeff(self, k: int) -> GaussianRational:
        return self._c.get(k, ZERO)

    def items(self):
        return self._c.items()

    def degree(self) -> int:
        """Max stored degree; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: "AnalyticPoly") -> "AnalyticPoly":
        out = dict(self._c)
        for k, v in other._c.items():
            w = out.get(k, ZERO) + v
            if w.is_zero:
                out.pop(k, None)
            else:
                out[k] = w
        p = AnalyticPoly.__new__(AnalyticPoly)
        p._c = out
        return p

    def __sub__(self, other: "AnalyticPoly") -> "AnalyticPoly":
        return self + (-other)

    def __neg__(self) -> "AnalyticPoly":
        p = AnalyticPoly.__new__(AnalyticPoly)
        p._c = {k: -v for k, v in self._c.items()}
        return p

    def scale(self, c) -> "AnalyticPoly":
        if not isinstance(c, GaussianRational):
            c = GaussianRational(_frac(c))
        if c.is_zero:
            return AnalyticPoly()
        p = AnalyticPoly.__new__(AnalyticPoly)
        p._c = {k: v * c for k, v in self._c.items()}
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, AnalyticPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = [f"({v})*z^{k}" if k else f"({v})"
                 for k, v in sorted(self._c.items())]
        return " + ".join(parts)


class HarmonicSymbol:
    """A finite sum ``sum c_{s,t} z^s zbar^t`` stored as (s, t) -> coefficient.

    Also used (under the alias :data:`MixedPoly`) for products symbol*poly
    before projection, which live in the same space of mixed polynomials.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple, object] | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t = _clean(items)
        for key in t:
            if (not isinstance(key, tuple) or len(key) != 2
                    or not all(isinstance(i, int) and i >= 0 for i in key)):
                raise ValueError(f"invalid symbol key {key!r}")
        self._t = t

    @classmethod
    def zero(cls) -> "HarmonicSymbol":
        return cls()

    @classmethod
    def term(cls, s: int, t: int, coeff=1) -> "HarmonicSymbol":
        c = coeff if isinstance(coeff, GaussianRational) else GaussianRational(_frac(coeff))
        return cls([((s, t), c)])

    @classmethod
    def from_poly(cls, f: AnalyticPoly) -> "HarmonicSymbol":
        """Embed an analytic polynomial as a symbol with t = 0 keys."""
        return cls([((k, 0), v) for k, v in f.items()])

    def coeff(self, s: int, t: int) -> GaussianRational:
        return self._t.get((s, t), ZERO)

    def items(self):
        return self._t.items()

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_analytic(self) -> bool:
        return all(t == 0 for _, t in self._t)

    @property
    def is_coanalytic(self) -> bool:
        return all(s == 0 for s, _ in self._t)

    def conj(self) -> "HarmonicSymbol":
        """Complex conjugate: c z^s zbar^t -> conj(c) z^t zbar^s."""
        p = HarmonicSymbol.__new__(HarmonicSymbol)
        p._t = {(t, s): v.conjugate() for (s, t), v in self._t.items()}
        return p

    def analytic_part(self) -> AnalyticPoly:
        """The t = 0 part as a polynomial; raises if mixed terms remain."""
        out = {}
        for (s, t), v in self._t.items():
            if t != 0:
                raise ValueError("symbol has zbar terms")
            out[s] = v
        return AnalyticPoly(out)

    def max_analytic_degree(self) -> int:
        """Largest s over stored terms (0 for the zero symbol)."""
        return max((s for s, _ in self._t), default=0)

    def __add__(self, other: "HarmonicSymbol") -> "HarmonicSymbol":
        out = dict(self._t)
        for k, v in other._t.items():
            w = out.get(k, ZERO) + v
            if w.is_zero:
                out.pop(k, None)
            else:
                out[k] = w
        p = HarmonicSymbol.__new__(HarmonicSymbol)
        p._t = out
        return p

    def __sub__(self, other: "HarmonicSymbol") -> "HarmonicSymbol":
        return self + other.scale(-1)

    def scale(self, c) -> "HarmonicSymbol":
        if not isinstance(c, GaussianRational):
            c = GaussianRational(_frac(c))
        if c.is_zero:
            return HarmonicSymbol()
        p = HarmonicSymbol.__new__(HarmonicSymbol)
        p._t = {k: v * c for k, v in self._t.items()}
        return p

    def __mul__(self, other: "HarmonicSymbol") -> "HarmonicSymbol":
        out: dict = {}
        for (s1, t1), v1 in self._t.items():
            for (s2, t2), v2 in other._t.items():
                key = (s1 + s2, t1 + t2)
                w = out.get(key, ZERO) + v1 * v2
                if w.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = w
        p = HarmonicSymbol.__new__(HarmonicSymbol)
        p._t = out
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, HarmonicSymbol) and self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __repr__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (s, t), v in sorted(self._t.items()):
            mono = "".join([f"z^{s}" if s else "", f"zbar^{t}" if t else ""]) or "1"
            parts.append(f"({v})*{mono}")
        return " + ".join(parts)


#: Products symbol*polynomial before projection: same representation as a
#: harmonic symbol (a polynomial in z and zbar), kept under its own name to
#: mark intent at interfaces.
MixedPoly = HarmonicSymbol


# ---------------------------------------------------------------------------
# operations


def conj_symbol(phi: HarmonicSymbol) -> HarmonicSymbol:
    """Conjugate symbol; an involution.  T applied to it acts as the formal
    adjoint in every convention (and as the metric adjoint in BERGMAN/CIRCLE).
    """
    return phi.conj()


def symbol_times_poly(phi: HarmonicSymbol, f: AnalyticPoly) -> MixedPoly:
    """Exact distributive product phi*f as a mixed polynomial."""
    out: dict = {}
    for (s, t), v in phi.items():
        for k, c in f.items():
            key = (s + k, t)
            w = out.get(key, ZERO) + v * c
            if w.is_zero:
                out.pop(key, None)
            else:
                out[key] = w
    p = HarmonicSymbol.__new__(HarmonicSymbol)
    p._t = out
    return p


def project(g: MixedPoly, conv: Convention, *, literal_analytic: bool = False) -> AnalyticPoly:
    """Project a mixed polynomial onto the analytic subspace, term by term.

    Keys with s < t always map to zero.  For s >= t:

    * PAPER_DISK: t = 0 keys pass through unchanged; t >= 1 keys map to
      z^(s-t)/(2(s+1)).  With ``literal_analytic=True`` the t = 0 keys are
      also weighted by 1/(2(s+1)); that variant is exposed for documentation
      only -- it makes the map non-idempotent and contradicts the worked
      reference cases.
    * BERGMAN: ((s-t+1)/(s+1)) z^(s-t) (the orthogonal projection for the
      1/(2(k+1)) weights).
    * CIRCLE: z^(s-t).
    """
    out: dict = {}
    for (s, t), v in g.items():
        if s < t:
            continue
        k = s - t
        if conv is Convention.CIRCLE:
            w = v
        elif conv is Convention.BERGMAN:
            w = v * Fraction(s - t + 1, s + 1)
        else:  # PAPER_DISK
            if t == 0 and not literal_analytic:
                w = v
            else:
                w = v * Fraction(1, 2 * (s + 1))
        acc = out.get(k, ZERO) + w
        if acc.is_zero:
            out.pop(k, None)
        else:
            out[k] = acc
    p = AnalyticPoly.__new__(AnalyticPoly)
    p._c = out
    return p


def monomial_weight(k: int, conv: Convention) -> Fraction:
    """<z^k, z^k> in the given convention."""
    if conv is Convention.CIRCLE:
        return Fraction(1)
    return Fraction(1, 2 * (k + 1))


def inner(f: AnalyticPoly, g: AnalyticPoly, conv: Convention) -> GaussianRational:
    """Exact inner product; linear in f, conjugate-linear in g.

    PAPER_DISK and BERGMAN use the diagonal weights 1/(2(k+1)) (so <1,1> is
    1/2); CIRCLE uses unit weights.
    """
    if len(f._c) > len(g._c):
        f, g = g, f
        flip = True
    else:
        flip = False
    total = ZERO
    for k, a in f.items():
        b = g.coeff(k)
        if b.is_zero:
            continue
        total = total + a * b.conjugate() * monomial_weight(k, conv)
    return total.conjugate() if flip else total


def toeplitz_apply(phi: HarmonicSymbol, f: AnalyticPoly, conv: Convention,
                   *, literal_analytic: bool = False) -> AnalyticPoly:
    """Apply the Toeplitz operator with symbol phi: project(phi * f).

    Exact (no truncation): the result carries the full image degree.
    """
    return project(symbol_times_poly(phi, f), conv, literal_analytic=literal_analytic)


def poly_derivative(f: AnalyticPoly, m: int) -> AnalyticPoly:
    """m-th formal derivative with exact falling-factorial coefficients."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    if m == 0:
        return f
    out = {}
    for k, v in f.items():
        if k < m:
            continue
        fall = 1
        for i in range(m):
            fall *= k - i
        out[k - m] = v * fall
    return AnalyticPoly(out)


def eval_poly(f: AnalyticPoly, z: complex) -> complex:
    """Horner evaluation in complex floats (coefficients floated once)."""
    if f.is_zero:
        return 0j
    deg = f.degree()
    coeffs = [f.coeff(k).to_complex() for k in range(deg + 1)]
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def eval_poly_exact(f: AnalyticPoly, z: GaussianRational) -> GaussianRational:
    """Horner evaluation over exact Gaussian rationals."""
    if f.is_zero:
        return ZERO
    deg = f.degree()
    acc = ZERO
    for k in range(deg, -1, -1):
        acc = acc * z + f.coeff(k)
    return acc


def eval_symbol(phi: HarmonicSymbol, z: complex) -> complex:
    """Evaluate sum c_{s,t} z^s zbar^t in complex floats."""
    zb = z.conjugate()
    acc = 0j
    for (s, t), v in phi.items():
        acc += v.to_complex() * z**s * zb**t
    return acc

"""Exact matrix forms of Toeplitz applications and PSD certification.

The central object is the Hermitian matrix Q of the self-commutator quadratic
form of w*T_phi + T_psi on polynomials of degree <= N.  Apply-matrices keep
the full image degree (rows up to N + d), so the form on degree-<=N inputs
carries zero truncation error: a negative value is an exact refutation, while
"PSD at level N" is evidence about the compression only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    AnalyticPoly,
    Convention,
    HarmonicSymbol,
    conj_symbol,
    inner,
    monomial_weight,
    toeplitz_apply,
)
from .rational import ONE, ZERO, GaussianRational


class NonHermitianInput(ValueError):
    """Raised when a PSD query receives a matrix that is not exactly Hermitian."""


# ---------------------------------------------------------------------------
# apply / gram matrices


@dataclass(frozen=True)
class ApplyMatrix:
    """Rectangular matrix of T_phi on span{1, z, ..., z^N}.

    Column k holds the coefficients of T_phi(z^k); rows run to N + d so the
    image is stored without truncation.
    """

    entries: tuple
    conv: Convention
    n: int
    d: int


@dataclass(frozen=True)
class GramMatrix:
    """Diagonal monomial weights g_0..g_M of the convention."""

    weights: tuple
    conv: Convention


def gram(m: int, conv: Convention) -> GramMatrix:
    if m < 0:
        raise ValueError("gram size must be >= 0")
    return GramMatrix(tuple(monomial_weight(k, conv) for k in range(m + 1)), conv)


def _apply_columns(phi: HarmonicSymbol, n: int, conv: Convention) -> list:
    """Sparse columns {row: coeff} of T_phi on the monomial basis 0..n."""
    cols = []
    for k in range(n + 1):
        image = toeplitz_apply(phi, AnalyticPoly.monomial(k), conv)
        cols.append(dict(image.items()))
    return cols


def apply_matrix(phi: HarmonicSymbol, n: int, conv: Convention) -> ApplyMatrix:
    if n < 0:
        raise ValueError("truncation must be >= 0")
    d = phi.max_analytic_degree()
    cols = _apply_columns(phi, n, conv)
    rows = tuple(
        tuple(cols[k].get(i, ZERO) for k in range(n + 1))
        for i in range(n + d + 1)
    )
    return ApplyMatrix(rows, conv, n, d)


# ---------------------------------------------------------------------------
# the self-commutator form matrix


@dataclass(frozen=True)
class FormMatrix:
    """Hermitian matrix Q with h^H Q h equal to the self-commutator form of
    w*T_phi + T_psi at the polynomial h, for every h of degree <= n."""

    q: tuple
    phi: HarmonicSymbol
    psi: HarmonicSymbol
    w: GaussianRational
    conv: Convention

    @property
    def n(self) -> int:
        return len(self.q) - 1


def _dot(x: dict, y: dict, weights: Sequence[Fraction]) -> GaussianRational:
    # sum_i conj(x_i) * g_i * y_i over the common support
    acc = ZERO
    if len(x) <= len(y):
        for i, xv in x.items():
            yv = y.get(i)
            if yv is not None:
                acc = acc + xv.conjugate() * yv * weights[i]
    else:
        for i, yv in y.items():
            xv = x.get(i)
            if xv is not None:
                acc = acc + xv.conjugate() * yv * weights[i]
    return acc


def form_components(phi: HarmonicSymbol, psi: HarmonicSymbol, n: int,
                    conv: Convention) -> tuple:
    """The three w-independent blocks (P1, P2, P3) of the form matrix.

    Q(w) = |w|^2 * P1 + P2 + conj(w) * P3 + w * P3^H, with P1/P2 the exact
    self-commutator matrices of phi/psi and P3 the cross block.  Scans over
    many w values reuse one component build.
    """
    if n < 0:
        raise ValueError("truncation must be >= 0")
    dmax = 0
    for sym in (phi, psi):
        for (s, t), _ in sym.items():
            dmax = max(dmax, s, t)
    weights = [monomial_weight(i, conv) for i in range(n + dmax + 1)]

    a_phi = _apply_columns(phi, n, conv)
    b_phi = _apply_columns(conj_symbol(phi), n, conv)
    a_psi = _apply_columns(psi, n, conv)
    b_psi = _apply_columns(conj_symbol(psi), n, conv)

    size = n + 1

    def hermitian_diff(a, b):
        p = [[ZERO] * size for _ in range(size)]
        for j in range(size):
            for k in range(j, size):
                v = _dot(a[j], a[k], weights) - _dot(b[j], b[k], weights)
                p[j][k] = v
                if j != k:
                    p[k][j] = v.conjugate()
        return p

    p1 = hermitian_diff(a_phi, b_phi)
    p2 = hermitian_diff(a_psi, b_psi)
    p3 = [[_dot(a_phi[j], a_psi[k], weights) - _dot(b_psi[j], b_phi[k], weights)
           for k in range(size)] for j in range(size)]
    return p1, p2, p3


def assemble_form(components: tuple, w: GaussianRational) -> list:
    """Q(w) from precomputed components; exactly Hermitian by construction."""
    p1, p2, p3 = components
    size = len(p1)
    wa = w.abs2()
    wc = w.conjugate()
    q = [[ZERO] * size for _ in range(size)]
    for j in range(size):
        for k in range(size):
            q[j][k] = (p1[j][k] * wa + p2[j][k]
                       + wc * p3[j][k] + w * p3[k][j].conjugate())
    return q


def form_matrix(phi: HarmonicSymbol, psi: HarmonicSymbol, w: GaussianRational,
                n: int, conv: Convention) -> FormMatrix:
    q = assemble_form(form_components(phi, psi, n, conv), w)
    return FormMatrix(tuple(tuple(row) for row in q), phi, psi, w, conv)


def form_value(q, h: Sequence[GaussianRational]) -> GaussianRational:
    """h^H Q h for a coefficient vector h."""
    rows = q.q if isinstance(q, FormMatrix) else q
    acc = ZERO
    for j, hj in enumerate(h):
        if hj.is_zero:
            continue
        hjc = hj.conjugate()
        for k, hk in enumerate(h):
            if hk.is_zero:
                continue
            acc = acc + hjc * rows[j][k] * hk
    return acc


# ---------------------------------------------------------------------------
# polynomial-route evaluation (the independent oracle for the matrix route)


def self_commutator_form(phi: HarmonicSymbol, h: AnalyticPoly,
                         conv: Convention) -> Fraction:
    """||T_phi h||^2 - ||T_(conj phi) h||^2, exact and real."""
    tf = toeplitz_apply(phi, h, conv)
    tb = toeplitz_apply(conj_symbol(phi), h, conv)
    return (inner(tf, tf, conv) - inner(tb, tb, conv)).real_fraction()


def cross_bracket(phi: HarmonicSymbol, psi: HarmonicSymbol, h: AnalyticPoly,
                  conv: Convention) -> GaussianRational:
    """<T_psi h, T_phi h> - <T_(conj phi) h, T_(conj psi) h>.

    The cross bilinear term of the sum's self-commutator form.
    """
    a = inner(toeplitz_apply(psi, h, conv), toeplitz_apply(phi, h, conv), conv)
    b = inner(toeplitz_apply(conj_symbol(phi), h, conv),
              toeplitz_apply(conj_symbol(psi), h, conv), conv)
    return a - b


def sum_commutator_form(phi: HarmonicSymbol, psi: HarmonicSymbol,
                        w: GaussianRational, h: AnalyticPoly,
                        conv: Convention) -> Fraction:
    """Self-commutator form of w*T_phi + T_psi at h, via Toeplitz images.

    |w|^2*(phi term) + (psi term) + 2 Re{conj(w) * cross bracket}; this is the
    brute-force route the matrix build is checked against.
    """
    cross = w.conjugate() * cross_bracket(phi, psi, h, conv)
    return (w.abs2() * self_commutator_form(phi, h, conv)
            + self_commutator_form(psi, h, conv)
            + 2 * cross.re)


# ---------------------------------------------------------------------------
# exact PSD certification


@dataclass(frozen=True)
class PsdCertificate:
    """Exact verdict of a Hermitian matrix's positive semidefiniteness.

    NotPSD comes with a witness vector whose form value is a strictly
    negative rational; PSD means the pivoted elimination completed with
    nonnegative pivots and zero residual.  ``zero_pivot`` marks PSD verdicts
    where some direction carried no positive pivot (singular compression).
    """

    is_psd: bool
    witness: tuple | None
    witness_value: Fraction | None
    pivots: tuple
    zero_pivot: bool

    @property
    def verdict(self) -> str:
        return "PSD" if self.is_psd else "NotPSD"


def _as_rows(q) -> list:
    if isinstance(q, FormMatrix):
        return [list(row) for row in q.q]
    return [list(row) for row in q]


def _check_hermitian(rows: list) -> None:
    n = len(rows)
    for j in range(n):
        if len(rows[j]) != n:
            raise NonHermitianInput("matrix is not square")
        for k in range(j, n):
            if rows[j][k] != rows[k][j].conjugate():
                raise NonHermitianInput(
                    f"entry ({j},{k}) is not the conjugate of ({k},{j})")


def psd_check(q) -> PsdCertificate:
    """Exact PSD decision by pivoted Hermitian elimination over rationals.

    Pivot rule: largest strictly positive diagonal (ties to the lowest
    index), exact Schur complement after each step.  Witnesses found in
    eliminated coordinates are mapped back through the recorded pivot rows,
    so the reported vector refutes the original matrix exactly.
    """
    rows = _as_rows(q)
    original = [list(r) for r in rows]
    _check_hermitian(rows)
    n = len(rows)

    active: list[int] = list(range(n))
    steps: list[tuple] = []   # (pivot index, pivot value, its row at that stage)
    pivots: list[Fraction] = []
    zero_pivot = False

    def map_back(y: dict) -> tuple:
        for p, d, row in reversed(steps):
            acc = ZERO
            for j, yv in y.items():
                qpj = row.get(j)
                if qpj is not None and not qpj.is_zero:
                    acc = acc + qpj * yv
            y[p] = -acc * (1 / d)
        return tuple(y.get(i, ZERO) for i in range(n))

    def certify_not_psd(y: dict) -> PsdCertificate:
        witness = map_back(y)
        value = form_value(original, witness).real_fraction()
        return PsdCertificate(False, witness, value, tuple(pivots), zero_pivot)

    while True:
        # negative diagonal: immediate refutation
        for i in active:
            if rows[i][i].re < 0:
                return certify_not_psd({i: ONE})

        # zero diagonal: its active row must vanish, else a 2x2 block refutes
        for i in list(active):
            if rows[i][i].is_zero:
                off = next((j for j in active
                            if j != i and not rows[i][j].is_zero), None)
                if off is None:
                    active.remove(i)
                    zero_pivot = True
                else:
                    qij = rows[i][off]
                    d = rows[off][off].re
                    scale = (d + 1) / (2 * qij.abs2())
                    return certify_not_psd({off: ONE, i: qij * (-scale)})

        if not active:
            return PsdCertificate(True, None, None, tuple(pivots), zero_pivot)

        # largest positive pivot, lowest index on ties
        p = max(active, key=lambda i: (rows[i][i].re, -i))
        d = rows[p][p].re
        pivots.append(d)
        steps.append((p, d, {j: rows[p][j] for j in active if j != p}))
        active.remove(p)

        inv = Fraction(1, 1) / d
        scaled = {k: rows[p][k] * inv for k in active if not rows[p][k].is_zero}
        for j in active:
            cj = rows[j][p]
            if cj.is_zero:
                continue
            rj = rows[j]
            for k, sk in scaled.items():
                rj[k] = rj[k] - cj * sk


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class HypoVerdict:
    """Outcome of the compression test at level n.

    ``refuted`` carries an exact witness polynomial (coefficient vector) with
    strictly negative form value: a proof that the operator sum is not
    hyponormal.  Otherwise the compression is PSD at this level, which is
    evidence only and never upgraded to a claim about the full operator.
    """

    refuted: bool
    level: int
    witness: tuple | None
    witness_value: Fraction | None
    zero_pivot: bool

    @property
    def label(self) -> str:
        return "refuted" if self.refuted else "psd"


@dataclass(frozen=True)
class NormalVerdict:
    normal: bool
    level: int
    witness: tuple | None
    witness_value: Fraction | None

    @property
    def label(self) -> str:
        return "normal" if self.normal else "not-normal"


def _verdict_from_certificate(cert: PsdCertificate, n: int) -> HypoVerdict:
    return HypoVerdict(not cert.is_psd, n, cert.witness, cert.witness_value,
                       cert.zero_pivot if cert.is_psd else False)


def hypo_verdict(phi: HarmonicSymbol, psi: HarmonicSymbol, w: GaussianRational,
                 n: int, conv: Convention) -> HypoVerdict:
    """Decide the level-n compression of the self-commutator form of
    w*T_phi + T_psi: exact refutation or PSD-at-level evidence."""
    cert = psd_check(form_matrix(phi, psi, w, n, conv))
    return _verdict_from_certificate(cert, n)


def _nonzero_witness(qrows: list) -> tuple:
    """Some h with h^H Q h != 0 for a nonzero Hermitian Q."""
    n = len(qrows)
    for k in range(n):
        if not qrows[k][k].is_zero:
            h = [ZERO] * n
            h[k] = ONE
            return tuple(h)
    for j in range(n):
        for k in range(j + 1, n):
            e = qrows[j][k]
            if e.is_zero:
                continue
            h = [ZERO] * n
            h[j] = ONE
            # diagonals vanish here, so the form at e_j + x e_k is 2 Re(conj(x) ... )
            h[k] = ONE if e.re else GaussianRational(0, 1)
            return tuple(h)
    raise ValueError("matrix is zero")


def normal_verdict(phi: HarmonicSymbol, psi: HarmonicSymbol, w: GaussianRational,
                   n: int, conv: Convention) -> NormalVerdict:
    """Level-n normality test of w*T_phi + T_psi.

    The form must vanish identically for both w and -w; the two signs force
    the Hermitian part and the cross part to vanish separately on degree <= n.
    Raises ZeroDivisionError for w = 0.
    """
    if w.is_zero:
        raise ZeroDivisionError("normality test requires a nonzero w")
    components = form_components(phi, psi, n, conv)
    for ww in (w, -w):
        qrows = assemble_form(components, ww)
        if any(not e.is_zero for row in qrows for e in row):
            witness = _nonzero_witness(qrows)
            value = form_value(qrows, witness).real_fraction()
            return NormalVerdict(False, n, witness, value)
    return NormalVerdict(True, n, None, None)

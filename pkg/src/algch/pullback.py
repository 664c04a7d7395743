"""Pullback along torus coordinate projections and the Morita check.

The submersion T^{n+k} -> T^n drops the last k coordinates.  With the
coordinate horizontal complement the Ehresmann curvature vanishes, the
flat product metric has zero Riemannian connection on constant frames,
and the whole connection-and-metric recipe collapses to block
bookkeeping: vertical directions act by zero and horizontal lifts carry
the base data verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .scalars import Scalar, ZERO, ONE
from .linalg import Matrix
from .algebroid import (
    ConstantAlgebroid,
    AlgebroidForm,
    validate_algebroid,
    coboundary_witness,
)
from .connections import Connection, GradedEndo, HermitianMetric, h_dual
from .transgression import cs_cochain
from .charclasses import adjoint_setup, intrinsic_char, AdjointSetup


@dataclass(frozen=True)
class SubmersionSpec:
    """k new fibre coordinates with a vertical metric (default identity)."""

    k: int
    g_v: Matrix = None

    def __post_init__(self):
        if self.g_v is None:
            object.__setattr__(self, "g_v", Matrix.identity(self.k))
        assert self.g_v.shape == (self.k, self.k)


def pullback_algebroid(a: ConstantAlgebroid, s: SubmersionSpec) -> ConstantAlgebroid:
    """Frame (v_1..v_k, hor(e_1)..hor(e_r)) over T^{n+k}.

    Vertical sections bracket to zero with everything; horizontal lifts
    reproduce the base brackets since the coordinate Ehresmann
    connection is flat.
    """
    k, n, r = s.k, a.n, a.r
    n2, r2 = n + k, k + r
    rows = [[ZERO] * r2 for _ in range(n2)]
    for j in range(k):
        rows[n + j][j] = ONE  # v_j |-> d/dy_j
    for i in range(r):
        for m in range(n):
            rows[m][k + i] = a.anchor[m, i]  # hor(e_i) |-> h(rho e_i)
    c = [[[ZERO] * r2 for _ in range(r2)] for _ in range(r2)]
    for i in range(r):
        for j in range(r):
            for m in range(r):
                c[k + i][k + j][k + m] = a.brackets[i][j][m]
    out = ConstantAlgebroid(n2, r2, Matrix(rows, ncols=r2), c)
    bad = validate_algebroid(out)
    assert not bad, bad
    return out


def pullback_form(a: ConstantAlgebroid, s: SubmersionSpec, omega: AlgebroidForm) -> AlgebroidForm:
    """Precompose with the frame projection v_j |-> 0, hor(e_i) |-> e_i."""
    assert omega.r == a.r
    comps = {
        tuple(s.k + i for i in idx): v for idx, v in omega.comps.items()
    }
    return AlgebroidForm(s.k + a.r, omega.degree, comps, zero=omega.zero)


def pullback_connection(a: ConstantAlgebroid, s: SubmersionSpec, c: Connection, pb: ConstantAlgebroid = None) -> Connection:
    """Pullback to p^!(A) acting on the pulled-back (same) bundle."""
    assert c.algebroid == a
    if pb is None:
        pb = pullback_algebroid(a, s)
    z = GradedEndo.zeros(c.bundle.rank_even, c.bundle.rank_odd)
    omega = [z] * s.k + list(c.omega)
    return Connection(pb, c.bundle, omega)


def pullback_data(a: ConstantAlgebroid, s: SubmersionSpec, obj):
    if isinstance(obj, AlgebroidForm):
        return pullback_form(a, s, obj)
    if isinstance(obj, Connection):
        return pullback_connection(a, s, obj)
    raise TypeError(f"cannot pull back {type(obj).__name__}")


def _block_diag(m0: Matrix, m1: Matrix) -> Matrix:
    nr, nc = m0.nrows + m1.nrows, m0.ncols + m1.ncols
    rows = [[ZERO] * nc for _ in range(nr)]
    for i in range(m0.nrows):
        for j in range(m0.ncols):
            rows[i][j] = m0[i, j]
    for i in range(m1.nrows):
        for j in range(m1.ncols):
            rows[m0.nrows + i][m0.ncols + j] = m1[i, j]
    return Matrix(rows, ncols=nc)


class RecipeResult(NamedTuple):
    algebroid: ConstantAlgebroid  # p^!(A)
    tm_conn: list  # nabla-bar: one (k+r) matrix per coordinate of T^{n+k}
    metric: HermitianMetric  # g-bar on Ad(p^!(A))
    setup: AdjointSetup  # adjoint data and basic connection of p^!(A)


def submersion_recipe(a: ConstantAlgebroid, s: SubmersionSpec, tm_conn, g_a: Matrix, g_m: Matrix) -> RecipeResult:
    """Connection and metric on the pullback realizing exact naturality.

    On constant data the recipe reduces to: nabla-bar acts by the base
    coefficients on horizontal lifts along horizontal directions and by
    zero everywhere else; the metric is block-diagonal (g_V, pullbacks).
    The basic connection of nabla-bar then splits as the (zero) vertical
    subconnection plus the pullback of the base basic connection, a
    block identity asserted below.
    """
    k, n, r = s.k, a.n, a.r
    pb = pullback_algebroid(a, s)
    nabla_bar = []
    for m in range(n):  # horizontal coordinate directions
        g = Matrix.zeros(k + r, k + r)
        rows = [list(row) for row in g.rows]
        for i in range(r):
            for j in range(r):
                rows[k + i][k + j] = tm_conn[m][i, j]
        nabla_bar.append(Matrix(rows, ncols=k + r))
    for _ in range(k):  # vertical directions act by zero
        nabla_bar.append(Matrix.zeros(k + r, k + r))

    setup = adjoint_setup(pb, nabla_bar)
    g_even = _block_diag(s.g_v, g_a)  # on p^!(A): vertical block first
    g_odd = _block_diag(g_m, s.g_v)  # on T(T^{n+k}): x block first
    gbar = HermitianMetric(setup.data.bundle, g_even, g_odd)

    _assert_basic_splitting(a, s, tm_conn, g_a, g_m, setup, gbar)
    return RecipeResult(pb, nabla_bar, gbar, setup)


def _assert_basic_splitting(a, s, tm_conn, g_a, g_m, setup, gbar):
    """Check nabla-bar^bas = vertical (+) pullback(nabla^bas), and the
    same splitting for the g-bar dual."""
    k, n, r = s.k, a.n, a.r
    base = adjoint_setup(a, tm_conn)
    g = HermitianMetric(base.data.bundle, g_a, g_m)
    pairs = [
        (setup.basic, base.basic),
        (h_dual(setup.basic, gbar), h_dual(base.basic, g)),
    ]
    for i in range(k):  # vertical frame sections act by zero
        for conn, _ in pairs:
            assert conn.omega[i].is_zero()
    for i in range(r):
        for conn, base_conn in pairs:
            om, bom = conn.omega[k + i], base_conn.omega[i]
            for p in range(k + r):
                for q_ in range(k + r):
                    want = bom.ee[p - k, q_ - k] if p >= k and q_ >= k else ZERO
                    assert om.ee[p, q_] == want, "even block does not split"
            for p in range(n + k):
                for q_ in range(n + k):
                    want = bom.oo[p, q_] if p < n and q_ < n else ZERO
                    assert om.oo[p, q_] == want, "odd block does not split"


@dataclass
class MoritaReport:
    k: int
    max_q: int
    per_q: dict  # q -> {"equal": bool, "both_zero": bool}
    cohomologous: dict = field(default_factory=dict)  # q -> bool (perturbed metrics)
    passed: bool = True


def morita_check(
    a: ConstantAlgebroid,
    s: SubmersionSpec,
    tm_conn,
    g_a: Matrix,
    g_m: Matrix,
    max_q: int = 2,
    alt_metric: HermitianMetric = None,
) -> MoritaReport:
    """Verify cs(bar-basic, its g-bar dual) = pullback of the base cs.

    Equality of representatives is bit-exact by construction of the
    recipe.  When alt_metric (an independent metric on Ad(p^!(A))) is
    given, also check that the intrinsic representatives it produces
    differ from the pulled-back ones by exact forms.
    """
    base = adjoint_setup(a, tm_conn)
    g = HermitianMetric(base.data.bundle, g_a, g_m)
    base_dual = h_dual(base.basic, g)
    recipe = submersion_recipe(a, s, tm_conn, g_a, g_m)
    bar_dual = h_dual(recipe.setup.basic, recipe.metric)

    report = MoritaReport(k=s.k, max_q=max_q, per_q={})
    for q in range(1, max_q + 1):
        lhs = cs_cochain([recipe.setup.basic, bar_dual], q)
        rhs = pullback_form(a, s, cs_cochain([base.basic, base_dual], q))
        equal = lhs == rhs
        report.per_q[q] = {"equal": equal, "both_zero": lhs.is_zero() and rhs.is_zero()}
        if not equal:
            report.passed = False

    if alt_metric is not None:
        pb = recipe.algebroid
        alt_reports = secondary_with_metric(recipe.setup, alt_metric, max_q)
        for q, rep in alt_reports.items():
            pulled = pullback_form(
                a, s, _intrinsic_rep(base, g, q)
            )
            diff = rep - pulled
            witness = coboundary_witness(pb, diff)
            report.cohomologous[q] = witness is not None
            if witness is None:
                report.passed = False
    return report


def _intrinsic_rep(setup: AdjointSetup, g: HermitianMetric, q: int) -> AlgebroidForm:
    from .scalars import I

    dual = h_dual(setup.basic, g)
    return cs_cochain([setup.basic, dual], q).scale(I ** (q + 1))


def secondary_with_metric(setup: AdjointSetup, metric: HermitianMetric, max_q: int) -> dict:
    return {q: _intrinsic_rep(setup, metric, q) for q in range(1, max_q + 1)}

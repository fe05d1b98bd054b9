"""Machine verification of the deformed-algebra and Poincare identities.

Each verify_* function rebuilds the operators from scratch over an exact
coefficient ring, normal-orders both sides of every identity and reports
whether the difference collapses to zero.  Failures are reported, never
raised.  The `tamper` argument injects named coefficient perturbations so
that tests can confirm each identity actually constrains the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..core import Spacetime
from .poly import Coef, Poly, Ring
from .operator import (
    Op,
    commutator,
    deformed_position,
    lorentz_generator,
    lowered,
    momentum_operator,
    translation_g,
    translation_generator,
    undeformed_lorentz_generator,
    undeformed_position,
)


@dataclass(frozen=True)
class SymbolicParams:
    """Deformation parameters for a verification run.

    None keeps the parameter fully symbolic; an exact rational pins it.
    """

    beta: object = None
    betap: object = None
    gamma: object = None

    def ring(self, metric) -> Ring:
        return Ring(metric, beta=self.beta, betap=self.betap, gamma=self.gamma)


@dataclass
class IdentityCheck:
    identity_id: str
    latex_tag: str
    passed: bool
    residual_term_count: int


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def record(self, identity_id: str, latex_tag: str, residual: Op):
        self.checks.append(
            IdentityCheck(
                identity_id, latex_tag, residual.is_zero, residual.term_count
            )
        )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {
                    "identity_id": c.identity_id,
                    "latex_tag": c.latex_tag,
                    "pass": c.passed,
                    "residual_term_count": c.residual_term_count,
                }
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class TransformationSpec:
    """First-order Lorentz rotation/boost or translation parameters.

    domega is the covariant antisymmetric matrix delta_omega_{mu nu}; da is
    the contravariant shift delta_a^mu.  Entries are exact rationals.
    """

    kind: str
    domega: tuple = None
    da: tuple = None

    def __post_init__(self):
        if self.kind not in ("lorentz", "translation"):
            raise ValueError(f"unknown transformation kind {self.kind!r}")
        if self.kind == "lorentz":
            if self.domega is None:
                raise ValueError("lorentz spec needs domega")
            m = self.domega
            n = len(m)
            for i in range(n):
                if len(m[i]) != n:
                    raise ValueError("domega must be square")
                for j in range(n):
                    if m[i][j] != -m[j][i]:
                        raise ValueError("domega must be antisymmetric")
        else:
            if self.da is None:
                raise ValueError("translation spec needs da")

    @classmethod
    def rotation(cls, st: Spacetime, a: int, b: int, value=1):
        n = st.D + 1
        m = [[Fraction(0)] * n for _ in range(n)]
        m[a][b] = Fraction(value)
        m[b][a] = -Fraction(value)
        return cls("lorentz", domega=tuple(tuple(r) for r in m))

    @classmethod
    def translation(cls, st: Spacetime, a: int, value=1):
        da = [Fraction(0)] * (st.D + 1)
        da[a] = Fraction(value)
        return cls("translation", da=tuple(da))


def _metric_square_poly(ring: Ring) -> Poly:
    s = Poly.zero(ring)
    for j, g in enumerate(ring.metric):
        pj = Poly.momentum(ring, j)
        s = s + pj * pj * g
    return s


def _xp_residual(ring, X, P, mu, nu, betap_scale=1, w_rhs=None):
    """[X^mu, P^nu] + h[(1-beta s) g^{mu nu} - betap p^mu p^nu]."""
    h = Poly.symbol(ring, "h")
    gmn = ring.metric[mu] if mu == nu else 0
    w_rhs = ring.w if w_rhs is None else w_rhs
    rhs = h * (
        w_rhs * gmn
        - ring.param("betap")
        * betap_scale
        * Poly.momentum(ring, mu)
        * Poly.momentum(ring, nu)
    )
    return commutator(X[mu], P[nu]) + Op.mult(rhs)


def _gfun_poly(ring: Ring, drop_s_term=False) -> Poly:
    beta = ring.param("beta")
    betap = ring.param("betap")
    g = beta * 2 - betap
    if not drop_s_term:
        g = g - (beta * 2 + betap) * beta * _metric_square_poly(ring)
    return g


def _xx_residual(ring, X, P, mu, nu, gfun=None):
    """w o [X^mu, X^nu] - h gfun (P^mu X^nu - P^nu X^mu), cleared form."""
    h = Poly.symbol(ring, "h")
    gfun = _gfun_poly(ring) if gfun is None else gfun
    lhs = commutator(X[mu], X[nu]).scale(ring.w)
    rhs = ((P[mu] @ X[nu]) - (P[nu] @ X[mu])).scale(Coef(h * gfun))
    return lhs - rhs


def verify_algebra(
    st: Spacetime, params: SymbolicParams = None, tamper=()
) -> VerificationReport:
    """Check the three covariant commutation relations for every index pair."""
    params = params or SymbolicParams()
    ring = params.ring(st.metric)
    return _algebra_suite(ring, "algebra", tamper)


def _algebra_suite(ring: Ring, suite: str, tamper=()) -> VerificationReport:
    n = ring.nmom
    X = [deformed_position(ring, m) for m in range(n)]
    P = [momentum_operator(ring, m) for m in range(n)]
    rep = VerificationReport(suite)
    betap_scale = 2 if "xp-betap-doubled" in tamper else 1
    w_rhs = Poly.one(ring) if "xp-w-dropped" in tamper else None
    gfun = (
        _gfun_poly(ring, drop_s_term=True)
        if "xx-s-term-dropped" in tamper
        else None
    )
    for mu in range(n):
        for nu in range(mu, n):
            res = _xp_residual(ring, X, P, mu, nu, betap_scale, w_rhs)
            rep.record(
                f"xp-{mu}{nu}",
                rf"[X^{mu},P^{nu}] = -i\hbar[(1-\beta P\cdot P)g^{{{mu}{nu}}}"
                rf" - \beta' P^{mu} P^{nu}]",
                res,
            )
    for mu, nu in combinations(range(n), 2):
        res = _xx_residual(ring, X, P, mu, nu, gfun)
        rep.record(
            f"xx-{mu}{nu}",
            rf"(1-\beta P\cdot P)[X^{mu},X^{nu}] = i\hbar"
            rf"[2\beta-\beta'-(2\beta+\beta')\beta P\cdot P]"
            rf"(P^{mu}X^{nu}-P^{nu}X^{mu})",
            res,
        )
    for mu, nu in combinations(range(n), 2):
        rep.record(
            f"pp-{mu}{nu}",
            rf"[P^{mu},P^{nu}] = 0",
            commutator(P[mu], P[nu]),
        )
    return rep


def verify_poincare(
    st: Spacetime, params: SymbolicParams = None, tamper=()
) -> VerificationReport:
    """Deformed Lorentz/translation generators realize undeformed iso(D,1)."""
    params = params or SymbolicParams()
    ring = params.ring(st.metric)
    n = ring.nmom
    h = Poly.symbol(ring, "h")
    rep = VerificationReport("poincare")

    pairs = list(combinations(range(n), 2))
    L = {}
    for a, b in pairs:
        Lab = lorentz_generator(ring, a, b)
        L[a, b] = Lab
        rep.record(
            f"lhat-simplify-{a}{b}",
            rf"\hat L_{{{a}{b}}} = x_{a} p_{b} - x_{b} p_{a}",
            Lab - undeformed_lorentz_generator(ring, a, b),
        )

    def Lfull(a, b):
        if a == b:
            return Op.zero(ring)
        if (a, b) in L:
            return L[a, b]
        return -L[b, a]

    def gm(a, b):
        return ring.metric[a] if a == b else 0

    for (a, b), (r_, s_) in combinations(pairs, 2):
        lhs = commutator(L[a, b], L[r_, s_])
        rhs = (
            Lfull(b, s_).scale(Fraction(gm(a, r_)))
            - Lfull(b, r_).scale(Fraction(gm(a, s_)))
            - Lfull(a, s_).scale(Fraction(gm(b, r_)))
            + Lfull(a, r_).scale(Fraction(gm(b, s_)))
        ).scale(h)
        rep.record(
            f"so-{a}{b}-{r_}{s_}",
            rf"[\hat L_{{{a}{b}}},\hat L_{{{r_}{s_}}}]"
            r" = -i\hbar(g\hat L - g\hat L - g\hat L + g\hat L)",
            lhs + rhs,
        )

    Phat = [translation_generator(ring, a) for a in range(n)]
    if "phat-no-u" in tamper:
        # perturbed generator on the commutator side, true RHS
        Phat_lhs = [
            Op.mult(Poly.momentum(ring, a) * ring.metric[a]) for a in range(n)
        ]
    else:
        Phat_lhs = Phat
    for a, b in combinations(range(n), 2):
        rep.record(
            f"phat-{a}{b}",
            rf"[\hat P_{a},\hat P_{b}] = 0",
            commutator(Phat_lhs[a], Phat_lhs[b]),
        )
    for a, b in pairs:
        for r_ in range(n):
            lhs = commutator(L[a, b], Phat_lhs[r_])
            rhs = (
                Phat[a].scale(Fraction(gm(b, r_)))
                - Phat[b].scale(Fraction(gm(a, r_)))
            ).scale(h)
            rep.record(
                f"lp-{a}{b}-{r_}",
                rf"[\hat L_{{{a}{b}}},\hat P_{r_}]"
                rf" = i\hbar(g_{{{b}{r_}}}\hat P_{a} - g_{{{a}{r_}}}\hat P_{b})",
                lhs - rhs,
            )
    return rep


def _primed_operators(ring, X, P, spec: TransformationSpec, tamper=()):
    """X' = X + eps dX, P' = P + eps dP for a first-order transformation."""
    n = ring.nmom
    eps = Poly.symbol(ring, "eps")
    g = ring.metric
    if spec.kind == "lorentz":
        dX = []
        dP = []
        for mu in range(n):
            dxm = Op.zero(ring)
            dpm = Op.zero(ring)
            for nu in range(n):
                c = Fraction(g[mu] * spec.domega[mu][nu])  # domega^mu_nu
                if c:
                    dxm = dxm + X[nu].scale(c)
                    dpm = dpm + P[nu].scale(c)
            dX.append(dxm.scale(eps))
            dP.append(dpm.scale(eps))
    else:
        gfun = translation_g(ring)
        if "trans-gfun-wrong" in tamper:
            beta = ring.param("beta")
            betap = ring.param("betap")
            gfun = Coef(beta * 2 - betap, 1)
        da_dot_p = Poly.zero(ring)
        for nu in range(n):
            da_dot_p = da_dot_p + Poly.momentum(ring, nu) * (
                g[nu] * Fraction(spec.da[nu])
            )
        dX = []
        dP = [Op.zero(ring)] * n
        for mu in range(n):
            c = Coef(Poly.const(ring, -Fraction(spec.da[mu])))
            c = c - gfun * Coef(da_dot_p * Poly.momentum(ring, mu))
            dX.append(Op.mult(c).scale(eps))
    Xp = [X[mu] + dX[mu] for mu in range(n)]
    Pp = [P[mu] + dP[mu] for mu in range(n)]
    return Xp, Pp, dX, dP


def verify_transformations(
    st: Spacetime,
    params: SymbolicParams = None,
    specs=None,
    tamper=(),
) -> VerificationReport:
    """Generator action and first-order invariance of the algebra.

    By bilinearity in the transformation parameters, checking every
    elementary antisymmetric delta-omega and every elementary delta-a is
    equivalent to a fully symbolic parameter matrix.
    """
    params = params or SymbolicParams()
    ring = params.ring(st.metric)
    n = ring.nmom
    h = Poly.symbol(ring, "h")
    g = ring.metric
    if specs is None:
        specs = [
            TransformationSpec.rotation(st, a, b)
            for a, b in combinations(range(n), 2)
        ] + [TransformationSpec.translation(st, a) for a in range(n)]
    X = [deformed_position(ring, m) for m in range(n)]
    P = [momentum_operator(ring, m) for m in range(n)]
    Lpairs = {
        (a, b): lorentz_generator(ring, a, b)
        for a, b in combinations(range(n), 2)
    }
    Phat = [translation_generator(ring, a) for a in range(n)]
    rep = VerificationReport("transformations")

    for si, spec in enumerate(specs):
        Xp, Pp, dX, dP = _primed_operators(ring, X, P, spec, tamper)
        tag = f"{spec.kind}-{si}"
        if spec.kind == "lorentz":
            # delta O^mu = [i/(2 hbar)] domega^{ab} [L_ab, O^mu]
            # cleared of 1/h:  sum_ab domega^{ab} [L_ab, O^mu] + 2h dO^mu = 0
            for mu in range(n):
                for ops, dops, sym in ((X, dX, "X"), (P, dP, "P")):
                    acc = Op.zero(ring)
                    for (a, b), Lab in Lpairs.items():
                        c = Fraction(g[a] * g[b] * spec.domega[a][b])
                        if c:
                            acc = acc + commutator(Lab, ops[mu]).scale(2 * c)
                    direct = Op.zero(ring)
                    for nu in range(n):
                        c = Fraction(g[mu] * spec.domega[mu][nu])
                        if c:
                            direct = direct + ops[nu].scale(c)
                    rep.record(
                        f"{tag}-gen-{sym}{mu}",
                        rf"\delta {sym}^{mu} = [i/(2\hbar)]\delta\omega^{{ab}}"
                        rf"[\hat L_{{ab}},{sym}^{mu}]",
                        # dX carries one power of eps; strip it by comparing
                        # eps * (generator side) with 2h * dO
                        acc.scale(Poly.symbol(ring, "eps"))
                        + dops[mu].scale(h * 2),
                    )
        else:
            for mu in range(n):
                acc = Op.zero(ring)
                for a in range(n):
                    c = Fraction(spec.da[a])
                    if c:
                        acc = acc + commutator(Phat[a], X[mu]).scale(c)
                rep.record(
                    f"{tag}-gen-X{mu}",
                    rf"\delta X^{mu} = (i/\hbar)\delta a^a[\hat P_a,X^{mu}]",
                    acc.scale(Poly.symbol(ring, "eps")) + dX[mu].scale(h),
                )
                for a in range(n):
                    if spec.da[a]:
                        rep.record(
                            f"{tag}-gen-P{mu}-{a}",
                            rf"[\hat P_{a},P^{mu}] = 0",
                            commutator(Phat[a], P[mu]),
                        )

        # first-order invariance of the three defining relations
        sp = Poly.zero(ring)
        pprimed = [op.terms[(0,) * n].num for op in Pp]
        for nu in range(n):
            sp = sp + pprimed[nu] * pprimed[nu] * g[nu]
        wp = Poly.one(ring) - ring.param("beta") * sp
        for mu in range(n):
            for nu in range(mu, n):
                gmn = g[mu] if mu == nu else 0
                rhs = h * (
                    wp * gmn
                    - ring.param("betap") * pprimed[mu] * pprimed[nu]
                )
                res = commutator(Xp[mu], Pp[nu]) + Op.mult(rhs)
                rep.record(
                    f"{tag}-inv-xp-{mu}{nu}",
                    rf"[X'^{mu},P'^{nu}] invariant to O(\delta)",
                    res.truncate_eps(2),
                )
        gfun_p = (
            ring.param("beta") * 2
            - ring.param("betap")
            - (ring.param("beta") * 2 + ring.param("betap"))
            * ring.param("beta")
            * sp
        )
        for mu, nu in combinations(range(n), 2):
            lhs = commutator(Xp[mu], Xp[nu]).scale(wp)
            rhs = ((Pp[mu] @ Xp[nu]) - (Pp[nu] @ Xp[mu])).scale(
                Coef(h * gfun_p)
            )
            rep.record(
                f"{tag}-inv-xx-{mu}{nu}",
                rf"[X'^{mu},X'^{nu}] invariant to O(\delta)",
                (lhs - rhs).truncate_eps(2),
            )
        for mu, nu in combinations(range(n), 2):
            rep.record(
                f"{tag}-inv-pp-{mu}{nu}",
                rf"[P'^{mu},P'^{nu}] invariant to O(\delta)",
                commutator(Pp[mu], Pp[nu]).truncate_eps(2),
            )
    return rep


def verify_reductions(D: int = 3) -> VerificationReport:
    """Snyder special case and the Euclidean (Kempf) analogue."""
    rep = VerificationReport("reductions")
    # Snyder: Minkowski, beta = gamma = 0, betap symbolic
    ring = Ring(Spacetime(D).metric, beta=0, gamma=0)
    n = ring.nmom
    X = [deformed_position(ring, m) for m in range(n)]
    P = [momentum_operator(ring, m) for m in range(n)]
    h = Poly.symbol(ring, "h")
    for mu, nu in combinations(range(n), 2):
        rhs = ((P[mu] @ X[nu]) - (P[nu] @ X[mu])).scale(
            Coef(h * ring.param("betap"))
        )
        rep.record(
            f"snyder-xx-{mu}{nu}",
            rf"[X^{mu},X^{nu}] = -i\hbar\beta'(P^{mu}X^{nu}-P^{nu}X^{mu})",
            commutator(X[mu], X[nu]) + rhs,
        )

    # Euclidean mode: metric all -1 reproduces the Kempf relations verbatim
    ering = Ring((-1,) * D)
    erep = _algebra_suite(ering, "kempf")
    for c in erep.checks:
        rep.checks.append(
            IdentityCheck(
                "kempf-" + c.identity_id,
                c.latex_tag.replace("P\\cdot P", "-\\mathbf{P}^2"),
                c.passed,
                c.residual_term_count,
            )
        )

    # undeformed Euclidean limit: canonical commutation relations
    cring = Ring((-1,) * D, beta=0, betap=0)
    Xc = [deformed_position(cring, m) for m in range(D)]
    Pc = [momentum_operator(cring, m) for m in range(D)]
    hc = Poly.symbol(cring, "h")
    for i in range(D):
        for j in range(i, D):
            delta = 1 if i == j else 0
            rep.record(
                f"ccr-xp-{i}{j}",
                rf"[X^{i},P^{j}] = i\hbar\delta^{{{i}{j}}}",
                commutator(Xc[i], Pc[j]) - Op.mult(Poly.const(cring, delta) * hc),
            )
    for i, j in combinations(range(D), 2):
        rep.record(
            f"ccr-xx-{i}{j}", rf"[X^{i},X^{j}] = 0", commutator(Xc[i], Xc[j])
        )
    return rep

"""Normal-ordered linear differential operators in momentum representation.

An operator is a finite sum of terms c(p) * d^a, with the coefficient (a
Coef) written to the left of the derivative monomial d^a (a multi-index over
the momentum components).  This normal form is unique, so operator equality
is term-list equality.  Composition moves derivatives past coefficients with
the Leibniz rule.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from .poly import Coef, Poly, Ring


class Op:
    """Normal-ordered operator: map from derivative multi-index to Coef."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = {a: c for a, c in terms.items() if not c.is_zero}

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def identity(cls, ring):
        return cls.mult(Poly.one(ring))

    @classmethod
    def mult(cls, f):
        """Multiplication operator by a Poly or Coef."""
        c = Coef.of(f) if not isinstance(f, (int, Fraction)) else None
        if c is None:
            raise TypeError("use Op.mult(Poly/Coef)")
        ring = c.ring
        return cls(ring, {(0,) * ring.nmom: c})

    @classmethod
    def deriv(cls, ring, mu: int):
        """The bare derivative d/dp^mu."""
        ring.momentum_index(mu)  # range check
        a = [0] * ring.nmom
        a[mu] = 1
        return cls(ring, {tuple(a): Coef.one(ring)})

    # ---- linear structure ---------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Op):
            return NotImplemented
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, Coef.zero(self.ring)) + c
        return Op(self.ring, out)

    def __neg__(self):
        return Op(self.ring, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Op):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> "Op":
        """Left-multiply by a scalar function (Coef/Poly/number)."""
        if isinstance(f, (int, Fraction)):
            f = Coef(Poly.const(self.ring, f))
        f = Coef.of(f)
        return Op(self.ring, {a: f * c for a, c in self.terms.items()})

    # ---- composition ---------------------------------------------------
    def __matmul__(self, other: "Op") -> "Op":
        if self.ring != other.ring:
            raise ValueError("operators over different rings")
        nm = self.ring.nmom
        out = {}
        for b, cb in other.terms.items():
            # cache derivatives of cb, keyed by multi-index
            dcache = {(0,) * nm: cb}

            def dk(k, _dcache=dcache):
                if k in _dcache:
                    return _dcache[k]
                j = next(i for i, ki in enumerate(k) if ki)
                prev = tuple(ki - (1 if i == j else 0) for i, ki in enumerate(k))
                val = dk(prev).diff(j)
                _dcache[k] = val
                return val

            for a, ca in self.terms.items():
                for k in product(*(range(ai + 1) for ai in a)):
                    mult = 1
                    for ai, ki in zip(a, k):
                        mult *= comb(ai, ki)
                    coef = ca * dk(k) * mult
                    if coef.is_zero:
                        continue
                    e = tuple(ai - ki + bi for ai, ki, bi in zip(a, k, b))
                    out[e] = out.get(e, Coef.zero(self.ring)) + coef
        return Op(self.ring, out)

    # ---- predicates -----------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def term_count(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Op):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def truncate_eps(self, order: int) -> "Op":
        return Op(
            self.ring, {a: c.truncate_eps(order) for a, c in self.terms.items()}
        )

    # ---- action on functions --------------------------------------------
    def apply(self, f) -> Coef:
        """Apply the operator to a scalar function (Poly or Coef)."""
        f = Coef.of(f) if not isinstance(f, Coef) else f
        nm = self.ring.nmom
        dcache = {(0,) * nm: f}

        def dk(k):
            if k in dcache:
                return dcache[k]
            j = next(i for i, ki in enumerate(k) if ki)
            prev = tuple(ki - (1 if i == j else 0) for i, ki in enumerate(k))
            val = dk(prev).diff(j)
            dcache[k] = val
            return val

        out = Coef.zero(self.ring)
        for a, c in self.terms.items():
            out = out + c * dk(a)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        base = len(self.ring.names) - self.ring.nmom
        parts = []
        for a in sorted(self.terms, reverse=True):
            ds = "".join(
                f" d{self.ring.names[base + i]}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(a)
                if k
            )
            parts.append(f"[{self.terms[a]!r}]{ds}")
        return " + ".join(parts)


def commutator(a: Op, b: Op) -> Op:
    return (a @ b) - (b @ a)


# ---- builders of the physical operators -------------------------------


def undeformed_position(ring: Ring, mu: int) -> Op:
    """x^mu = -h g^{mu mu} d/dp^mu (so [x^mu, p^nu] = -h g^{mu nu})."""
    g = ring.metric[mu]
    return Op.deriv(ring, mu).scale(Poly.symbol(ring, "h") * (-g))


def momentum_operator(ring: Ring, mu: int) -> Op:
    """P^mu = p^mu, a multiplication operator."""
    return Op.mult(Poly.momentum(ring, mu))


def deformed_position(ring: Ring, mu: int) -> Op:
    """X^mu = (1 - beta s) x^mu - betap p^mu p_nu x^nu + h gamma p^mu.

    All coefficients stay polynomial; the inverse of w is never needed here.
    """
    ring.momentum_index(mu)  # index range check
    h = Poly.symbol(ring, "h")
    pmu = Poly.momentum(ring, mu)
    terms = {}
    nm = ring.nmom

    def add(a, poly):
        key = tuple(a)
        c = Coef(poly)
        terms[key] = terms.get(key, Coef.zero(ring)) + c

    # (1 - beta s) x^mu  ->  -h g_mu w on d_mu
    a = [0] * nm
    a[mu] = 1
    add(a, ring.w * h * (-ring.metric[mu]))
    # -betap p^mu p_nu x^nu = +betap h p^mu sum_nu p^nu d_nu
    bp = ring.param("betap")
    for nu in range(nm):
        a = [0] * nm
        a[nu] = 1
        add(a, bp * h * pmu * Poly.momentum(ring, nu))
    # + h gamma p^mu
    add([0] * nm, h * ring.param("gamma") * pmu)
    return Op(ring, terms)


def lowered(builder, ring: Ring, mu: int) -> Op:
    """Lower the index of a diagonal-metric vector operator."""
    return builder(ring, mu).scale(Fraction(ring.metric[mu]))


def lorentz_generator(ring: Ring, a: int, b: int) -> Op:
    """L_{ab} = w^-1 (X_a P_b - X_b P_a)."""
    xa = lowered(deformed_position, ring, a)
    xb = lowered(deformed_position, ring, b)
    pa = lowered(momentum_operator, ring, a)
    pb = lowered(momentum_operator, ring, b)
    raw = (xa @ pb) - (xb @ pa)
    return raw.scale(Coef(Poly.one(ring), 1))


def undeformed_lorentz_generator(ring: Ring, a: int, b: int) -> Op:
    """x_a p_b - x_b p_a, the expected normal form of L_{ab}."""
    xa = lowered(undeformed_position, ring, a)
    xb = lowered(undeformed_position, ring, b)
    pa = lowered(momentum_operator, ring, a)
    pb = lowered(momentum_operator, ring, b)
    return (xa @ pb) - (xb @ pa)


def translation_generator(ring: Ring, a: int) -> Op:
    """Phat_a = w^-1 p_a."""
    pa = Poly.momentum(ring, a) * ring.metric[a]
    return Op.mult(Coef(pa, 1))


def translation_g(ring: Ring) -> Coef:
    """g(s) = w^-2 [2 beta - betap - (2 beta + betap) beta s]."""
    beta = ring.param("beta")
    betap = ring.param("betap")
    s_poly = Poly.zero(ring)
    for j, g in enumerate(ring.metric):
        pj = Poly.momentum(ring, j)
        s_poly = s_poly + pj * pj * g
    num = beta * 2 - betap - (beta * 2 + betap) * beta * s_poly
    return Coef(num, 2)

"""Rank-one equivariant toolkit, entirely symbolic and exact.

Pieces:

* ``WeightMultiset`` -- finite multisets of rational torus weights, with
  integer (possibly negative) multiplicities for virtual sums;
* fixed-point weight data and cohomology-pushforward characters for line
  bundles on the projective line and on its degree-d cyclic covers, checked
  against each other by ``grr_localization_check`` as exact rational-function
  identities (substitute q = e^(u/D) and clear denominators);
* ``EquivariantPolyRing`` -- the two-variable polynomial ring in u and the
  hyperplane class H modulo the monic relation prod(H + a_i u), with
  ``ab_integrate`` summing fixed-point residues;
* ``HodgeClassPoly`` -- the truncated commutative algebra in the cotangent
  classes psi_i (degree 1) and Hodge classes lambda_i (degree i) with Laurent
  coefficients in u, plus the fixed-locus data whose inverse Euler class it
  expresses.  ``elsv_via_localization`` runs the whole localization chain and
  must agree exactly with the direct table evaluation.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm, prod

from .errors import ConsistencyError, DomainError
from .hodge import HodgeBracket
from .partitions import Partition, aut_size

# ---------------------------------------------------------------------------
# Laurent polynomials in one variable over the rationals


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise DomainError(f"expected an exact rational, got {v!r}")


class Laurent:
    """Laurent polynomial in one formal variable with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exp, coef in (terms or {}).items():
            coef = _as_fraction(coef)
            if coef:
                clean[int(exp)] = coef
        self.terms = clean

    @classmethod
    def constant(cls, c):
        return cls({0: _as_fraction(c)})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: _as_fraction(c)})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return set(self.terms) <= {0}

    def constant_value(self):
        if not self.is_constant():
            raise DomainError(f"not a constant: {self}")
        return self.terms.get(0, Fraction(0))

    def substitute(self, value):
        value = _as_fraction(value)
        if value == 0 and any(e < 0 for e in self.terms):
            raise DomainError("cannot substitute 0 into a negative power")
        return sum((c * value**e for e, c in self.terms.items()), Fraction(0))

    def shifted(self, k):
        return Laurent({e + k: c for e, c in self.terms.items()})

    def scaled(self, c):
        c = _as_fraction(c)
        return Laurent({e: c * v for e, v in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            new = out.get(e, Fraction(0)) + c
            if new:
                out[e] = new
            else:
                out.pop(e, None)
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                new = out.get(e, Fraction(0)) + c1 * c2
                if new:
                    out[e] = new
                else:
                    out.pop(e, None)
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative powers need a monomial; use shifted()")
        out = Laurent.constant(1)
        for _ in range(n):
            out = out * self
        return out

    @staticmethod
    def _coerce(other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent.constant(other)
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.constant(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms == other.terms

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"Laurent({dict(self.items())!r})"

    def __str__(self, var="u"):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.items():
            if e == 0:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(f"{var}^{e}")
            else:
                pieces.append(f"{c} {var}^{e}")
        return " + ".join(pieces)


# ---------------------------------------------------------------------------
# weight multisets and pushforward characters


class WeightMultiset:
    """Finite multiset of rational weights; negative multiplicities encode
    virtual (formal difference) representations."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, m in (terms or {}).items():
            m = int(m)
            if m:
                clean[_as_fraction(w)] = m
        self.terms = clean

    @classmethod
    def from_weights(cls, weights):
        out = {}
        for w in weights:
            w = _as_fraction(w)
            out[w] = out.get(w, 0) + 1
        return cls(out)

    def __add__(self, other):
        out = dict(self.terms)
        for w, m in other.terms.items():
            new = out.get(w, 0) + m
            if new:
                out[w] = new
            else:
                out.pop(w, None)
        return WeightMultiset(out)

    def __neg__(self):
        return WeightMultiset({w: -m for w, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return sum(abs(m) for m in self.terms.values())

    def is_empty(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        inner = ", ".join(f"{w}: {m}" for w, m in self.items())
        return f"WeightMultiset({{{inner}}})"


def fixed_point_weights_p1(a, k):
    """Tangent and twisted-line weights (in units of u) at the two torus-fixed
    points of the projective line, for the lift of O(k) with weight a at the
    zero pole: tangent (1, -1), fiber (a, a - k)."""
    zero_pole = (WeightMultiset({1: 1}), WeightMultiset({a: 1}))
    infinity_pole = (WeightMultiset({-1: 1}), WeightMultiset({a - k: 1}))
    return (zero_pole, infinity_pole)


def fixed_point_weights_cover(a, k, d):
    """Same data pulled back through the degree-d cyclic cover z -> z^d:
    tangent weights shrink to (1/d, -1/d), fiber weights are unchanged."""
    if d < 1:
        raise DomainError(f"cover degree must be positive, got {d}")
    zero_pole = (WeightMultiset({Fraction(1, d): 1}), WeightMultiset({a: 1}))
    infinity_pole = (
        WeightMultiset({Fraction(-1, d): 1}),
        WeightMultiset({a - k: 1}),
    )
    return (zero_pole, infinity_pole)


def pushforward_char_p1(k, a):
    """Weights of the cohomology of O(k) on the projective line under the
    weight-a lift: H0 = {a - i : i = 0..k} for k >= 0, H1 = {a + i :
    i = 1..-k-1} for k < -1, and both vanish at k = -1."""
    if k >= 0:
        return (
            WeightMultiset.from_weights(a - i for i in range(k + 1)),
            WeightMultiset(),
        )
    return (
        WeightMultiset(),
        WeightMultiset.from_weights(a + i for i in range(1, -k - 1 + 1)),
    )


def pushforward_char_cover(k, a, d):
    """Weights of the cohomology of the pullback of O(k) along the degree-d
    cyclic cover: H0 = {a - i/d : i = 0..kd} for k >= 0,
    H1 = {a + i/d : i = 1..-kd-1} for k < 0."""
    if d < 1:
        raise DomainError(f"cover degree must be positive, got {d}")
    if k >= 0:
        return (
            WeightMultiset.from_weights(
                a - Fraction(i, d) for i in range(k * d + 1)
            ),
            WeightMultiset(),
        )
    return (
        WeightMultiset(),
        WeightMultiset.from_weights(
            a + Fraction(i, d) for i in range(1, -k * d - 1 + 1)
        ),
    )


def _weight_denominator(fixed_points, claimed):
    denoms = [1]
    for tangent, fiber in fixed_points:
        denoms.extend(w.denominator for w, _ in tangent.items())
        denoms.extend(w.denominator for w, _ in fiber.items())
    denoms.extend(w.denominator for w, _ in claimed.items())
    return lcm(*denoms)


def _char_poly(ws, scale):
    """sum of mult * q^(w*scale) as a Laurent polynomial in q."""
    out = Laurent()
    for w, m in ws.items():
        out = out + Laurent.monomial(int(w * scale), m)
    return out


def grr_localization_check(fixed_points, claimed, method="exact", order=12):
    """Verify the fixed-point expression for a pushforward character:

        sum_j (sum_l e^(y_jl)) / prod_k (1 - e^(-x_jk))  ==  claimed character

    ``fixed_points`` is a list of (tangent, fiber) weight multisets;
    ``claimed`` is the virtual multiset H0 - H1.  The exact method
    substitutes q = e^(u/D) with D the common weight denominator and compares
    cleared-out Laurent polynomials in q; the series method (diagnostics)
    expands both sides as truncated series in u.
    """
    for tangent, fiber in fixed_points:
        for w, m in tangent.items():
            if w == 0:
                raise DomainError("invalid fixed point: zero tangent weight")
            if m <= 0:
                raise DomainError(
                    "invalid fixed point: tangent multiplicities must be positive"
                )
    if method == "exact":
        return _grr_check_exact(fixed_points, claimed)
    if method == "series":
        return _grr_check_series(fixed_points, claimed, order)
    raise DomainError(f"unknown GRR check method {method!r}")


def _grr_check_exact(fixed_points, claimed):
    scale = _weight_denominator(fixed_points, claimed)
    numerators, denominators = [], []
    for tangent, fiber in fixed_points:
        numerators.append(_char_poly(fiber, scale))
        den = Laurent.constant(1)
        for w, m in tangent.items():
            factor = Laurent.constant(1) - Laurent.monomial(int(-w * scale))
            for _ in range(m):
                den = den * factor
        denominators.append(den)

    lhs = Laurent()
    for j, num in enumerate(numerators):
        term = num
        for jj, den in enumerate(denominators):
            if jj != j:
                term = term * den
        lhs = lhs + term
    rhs = _char_poly(claimed, scale)
    for den in denominators:
        rhs = rhs * den
    return lhs == rhs


def _series_mul(a, b, order):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e > order:
                continue
            new = out.get(e, Fraction(0)) + c1 * c2
            if new:
                out[e] = new
            else:
                out.pop(e, None)
    return out


def _series_exp_term(c, order):
    """e^(c*u) as a truncated series dict."""
    out, term = {}, Fraction(1)
    for n in range(order + 1):
        if term:
            out[n] = term
        term = term * c / (n + 1)
    return out


def _series_reciprocal_one_plus(a, order):
    """Reciprocal of a series with constant term 1."""
    out = {0: Fraction(1)}
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += a.get(k, Fraction(0)) * out.get(n - k, Fraction(0))
        if acc:
            out[n] = -acc
    return out


def _grr_check_series(fixed_points, claimed, order):
    max_tangent = max(len(t) for t, _ in fixed_points)
    work = order + max_tangent + 1
    lhs = {}
    for tangent, fiber in fixed_points:
        num = {}
        for w, m in fiber.items():
            for e, c in _series_exp_term(w, work).items():
                num[e] = num.get(e, Fraction(0)) + m * c
        term = num
        for w, m in tangent.items():
            # 1 - e^(-w u) = w u * g(u) with g(0) = 1
            g = {
                n: Fraction((-1) ** n) * w**n / factorial(n + 1)
                for n in range(work + 1)
            }
            inv_g = _series_reciprocal_one_plus(g, work)
            for _ in range(m):
                term = _series_mul(term, inv_g, work)
                term = {e - 1: c / w for e, c in term.items()}
        for e, c in term.items():
            lhs[e] = lhs.get(e, Fraction(0)) + c
    rhs = {}
    for w, m in claimed.items():
        for e, c in _series_exp_term(w, work).items():
            rhs[e] = rhs.get(e, Fraction(0)) + m * c
    for e in range(min(min(lhs, default=0), 0), order + 1):
        if lhs.get(e, Fraction(0)) != rhs.get(e, Fraction(0)):
            return False
    return True


# ---------------------------------------------------------------------------
# the equivariant cohomology ring of projective space and its integration map


class EquivariantPolyRing:
    """Polynomials in u and the degree-2 generator H, reduced modulo the
    monic relation prod_i (H + a_i u).  Elements live in the basis
    H^0, ..., H^r with coefficients polynomial in u."""

    def __init__(self, r, weights=None):
        if r < 1:
            raise DomainError(f"projective dimension must be >= 1, got {r}")
        self.r = r
        if weights is None:
            weights = tuple(-i for i in range(r + 1))
        self.weights = tuple(int(a) for a in weights)
        if len(self.weights) != r + 1:
            raise DomainError(f"need {r + 1} lift weights, got {len(self.weights)}")
        # elementary symmetric functions of the weights: the modulus is
        # H^(r+1) + sum_k esym[k] u^k H^(r+1-k)
        esym = [1] + [0] * (r + 1)
        for a in self.weights:
            for k in range(r + 1, 0, -1):
                esym[k] = esym[k] + a * esym[k - 1]
        self._esym = esym

    def element(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.r + 1:
            coeffs = self._reduce(coeffs)
        out = [Laurent() for _ in range(self.r + 1)]
        for i, c in enumerate(coeffs):
            out[i] = c if isinstance(c, Laurent) else Laurent.constant(c)
        return RingElement(self, tuple(out))

    @property
    def one(self):
        return self.element([1])

    @property
    def zero(self):
        return self.element([])

    @property
    def H(self):
        return self.element([0, 1])

    def u(self, exp=1, coef=1):
        return self.element([Laurent.monomial(exp, coef)])

    def _reduce(self, coeffs):
        coeffs = [c if isinstance(c, Laurent) else Laurent.constant(c) for c in coeffs]
        for deg in range(len(coeffs) - 1, self.r, -1):
            c = coeffs[deg]
            if c.is_zero():
                continue
            coeffs[deg] = Laurent()
            for k in range(1, self.r + 2):
                shift = Laurent.monomial(k, -self._esym[k])
                coeffs[deg - k] = coeffs[deg - k] + shift * c
        return coeffs[: self.r + 1]


class RingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise DomainError("elements of different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.element([other])
        if isinstance(other, Laurent):
            return self.ring.element([other])
        raise DomainError(f"cannot coerce {other!r} into the ring")

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(
            self.ring,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.ring.r + 1
        prod_coeffs = [Laurent() for _ in range(2 * n - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                prod_coeffs[i + j] = prod_coeffs[i + j] + a * b
        return RingElement(self.ring, tuple(self.ring._reduce(prod_coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __repr__(self):
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            head = f"({c})"
            pieces.append(head if i == 0 else f"{head} H^{i}")
        return " + ".join(pieces) or "0"


def ab_integrate(ring, element):
    """Fixed-point integration over projective r-space with isolated fixed
    points: sum over fixed points of the restriction divided by the product
    of tangent weights.  For the default lift the restriction rule is
    H -> i*u at the i-th fixed point and the tangent Euler class is
    prod_{j != i} (i - j) u."""
    weights = ring.weights
    if len(set(weights)) != len(weights):
        raise DomainError("integration needs pairwise distinct lift weights")
    total = Laurent()
    for i, a_i in enumerate(weights):
        restricted = Laurent()
        for k, c in enumerate(element.coeffs):
            restricted = restricted + c * Laurent.monomial(k, Fraction(-a_i) ** k)
        euler_scalar = prod(a_j - a_i for j, a_j in enumerate(weights) if j != i)
        total = total + restricted.scaled(Fraction(1, euler_scalar)).shifted(-ring.r)
    return total


def point_class(ring, i=None):
    """The equivariant class Poincare dual to the i-th fixed point (default:
    the last one): prod over the other fixed points of (H + a_j u).  Its
    integral is exactly 1."""
    if i is None:
        i = ring.r
    out = ring.one
    for j, a_j in enumerate(ring.weights):
        if j != i:
            out = out * (ring.H + ring.u(1, a_j))
    return out


# ---------------------------------------------------------------------------
# the truncated psi/lambda algebra


class HodgeClassPoly:
    """Graded commutative polynomial in psi_1..psi_h (degree 1) and
    lambda_1..lambda_g (degree i), truncated above total degree 3g - 3 + h,
    with Laurent coefficients in u.  lambda_0 is the unit.  Keys are
    (psi exponent vector, sorted lambda index multiset)."""

    __slots__ = ("g", "h", "cap", "terms")

    def __init__(self, g, h, terms=None):
        self.g = g
        self.h = h
        self.cap = 3 * g - 3 + h
        clean = {}
        for (psi, lam), coef in (terms or {}).items():
            psi = tuple(int(j) for j in psi)
            lam = tuple(sorted(int(i) for i in lam))
            if len(psi) != h or any(j < 0 for j in psi):
                raise DomainError(f"bad psi exponent vector {psi}")
            if any(not 1 <= i <= g for i in lam):
                raise DomainError(f"bad lambda index multiset {lam}")
            if not isinstance(coef, Laurent):
                coef = Laurent.constant(coef)
            if coef.is_zero():
                continue
            if sum(psi) + sum(lam) > self.cap:
                continue  # truncation is part of the algebra
            key = (psi, lam)
            if key in clean:
                coef = clean[key] + coef
            if not coef.is_zero():
                clean[key] = coef
        self.terms = clean

    @classmethod
    def scalar(cls, g, h, coef):
        return cls(g, h, {((0,) * h, ()): coef})

    @classmethod
    def psi_class(cls, g, h, index):
        psi = [0] * h
        psi[index] = 1
        return cls(g, h, {(tuple(psi), ()): Fraction(1)})

    @classmethod
    def lambda_class(cls, g, h, i):
        return cls(g, h, {((0,) * h, (i,)): Fraction(1)})

    def _compatible(self, other):
        if (self.g, self.h) != (other.g, other.h):
            raise DomainError("classes live on different moduli")

    def __add__(self, other):
        other = self._coerce(other)
        self._compatible(other)
        out = dict(self.terms)
        for key, coef in other.terms.items():
            new = out.get(key, Laurent()) + coef
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new
        return HodgeClassPoly(self.g, self.h, out)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + other.scaled(-1)

    def scaled(self, c):
        return HodgeClassPoly(
            self.g, self.h,
            {key: coef.scaled(c) for key, coef in self.terms.items()},
        )

    def _coerce(self, other):
        if isinstance(other, HodgeClassPoly):
            return other
        if isinstance(other, (int, Fraction, Laurent)):
            return HodgeClassPoly.scalar(self.g, self.h, other)
        raise DomainError(f"cannot coerce {other!r} into the Hodge algebra")

    def __mul__(self, other):
        other = self._coerce(other)
        self._compatible(other)
        out = {}
        for (psi1, lam1), c1 in self.terms.items():
            deg1 = sum(psi1) + sum(lam1)
            for (psi2, lam2), c2 in other.terms.items():
                if deg1 + sum(psi2) + sum(lam2) > self.cap:
                    continue
                key = (
                    tuple(a + b for a, b in zip(psi1, psi2)),
                    tuple(sorted(lam1 + lam2)),
                )
                new = out.get(key, Laurent()) + c1 * c2
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return HodgeClassPoly(self.g, self.h, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HodgeClassPoly):
            return NotImplemented
        return (self.g, self.h) == (other.g, other.h) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def terms_of_degree(self, degree):
        return {
            key: coef
            for key, coef in self.terms.items()
            if sum(key[0]) + sum(key[1]) == degree
        }

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0][0], kv[0][1]),
        )

    def __repr__(self):
        return f"HodgeClassPoly(g={self.g}, h={self.h}, {format_hodge_class(self)!r})"


def hodge_euler_dual(g, h, twist=1):
    """Euler class of the twisted dual Hodge bundle:
    sum_{i=0}^g (-1)^i lambda_i (t u)^{g-i} with t the twist weight."""
    twist = _as_fraction(twist)
    terms = {((0,) * h, ()): Laurent.monomial(g, twist**g)}
    for i in range(1, g + 1):
        terms[((0,) * h, (i,))] = Laurent.monomial(
            g - i, Fraction((-1) ** i) * twist ** (g - i)
        )
    return HodgeClassPoly(g, h, terms)


def inv_u_minus_psi(g, h, c, index):
    """1/(u - c*psi_index) expanded as the finite geometric series
    u^(-1) * sum_j (c psi / u)^j, truncated by the degree cap."""
    c = _as_fraction(c)
    cap = 3 * g - 3 + h
    terms = {}
    for j in range(cap + 1):
        psi = [0] * h
        psi[index] = j
        terms[(tuple(psi), ())] = Laurent.monomial(-(j + 1), c**j)
    return HodgeClassPoly(g, h, terms)


# ---------------------------------------------------------------------------
# fixed-locus data and the localization chain


@dataclass(frozen=True)
class FixedLocusData:
    """The virtual-normal-bundle bookkeeping at the distinguished fixed locus:
    trivial-weight fixed pieces, the node-smoothing factors (u/mu_i - psi_i),
    and the weight content of the obstruction-minus-deformation difference."""

    g: int
    mu: Partition
    b1_fixed: WeightMultiset          # infinitesimal automorphisms, weight 0
    b2_fixed: WeightMultiset          # weight-0 part of the map deformations
    b4_moving: tuple                  # (weight 1/mu_i, marked point index)
    hodge_twist: Fraction             # twist on the dual Hodge piece
    trivial_moving: WeightMultiset    # the weight-1 copies, h - 1 of them
    cover_weights: WeightMultiset     # subtracted piece: {a/mu_i : a = 1..mu_i}
    automorphism_order: int           # prod mu_i, the cyclic cover symmetries


def fixed_locus_data(g, mu):
    """Assemble the fixed-locus data for genus g and profile mu."""
    h = mu.length
    if 2 * g - 2 + h <= 0 or h == 0:
        raise DomainError(f"unsupported range: unstable (g, h) = ({g}, {h})")
    cover = {}
    for part in mu.parts:
        for a in range(1, part + 1):
            w = Fraction(a, part)
            cover[w] = cover.get(w, 0) + 1
    return FixedLocusData(
        g=g,
        mu=mu,
        b1_fixed=WeightMultiset({0: h}),
        b2_fixed=WeightMultiset({0: h}),
        b4_moving=tuple((Fraction(1, p), i) for i, p in enumerate(mu.parts)),
        hodge_twist=Fraction(1),
        trivial_moving=WeightMultiset({1: h - 1}),
        cover_weights=WeightMultiset(cover),
        automorphism_order=prod(mu.parts),
    )


def inverse_euler_normal(data):
    """Inverse Euler class of the virtual normal bundle, as an element of the
    truncated psi/lambda algebra over Laurent polynomials in u.

    Built twice: compositionally from the weight data (product of the Euler
    classes of the moving pieces, inverting the node-smoothing factors), and
    from the closed form

        prod mu_i^mu_i / mu_i! * mu_1...mu_h * Lambda(u) * u^(h-d-1)
            / prod (u - mu_i psi_i),

    with Lambda(u) the dual-Hodge Euler polynomial.  The two must match
    exactly; a mismatch raises ConsistencyError."""
    g, mu = data.g, data.mu
    d, h = mu.size, mu.length

    compositional = hodge_euler_dual(g, h, data.hodge_twist)
    for w, m in data.trivial_moving.items():
        compositional = compositional * Laurent.monomial(m, w**m)
    scalar = Fraction(1)
    shift = 0
    for w, m in data.cover_weights.items():
        scalar *= w**m
        shift += m
    compositional = compositional * Laurent.monomial(-shift, 1 / scalar)
    for w, index in data.b4_moving:
        # 1/(w u - psi) = (1/w) * 1/(u - (1/w) psi)
        compositional = compositional * inv_u_minus_psi(g, h, 1 / w, index)
        compositional = compositional.scaled(1 / w)

    closed = hodge_euler_dual(g, h, 1)
    closed_scalar = Fraction(prod(mu.parts))
    for p in mu.parts:
        closed_scalar *= Fraction(p**p, factorial(p))
    closed = closed * Laurent.monomial(h - d - 1, closed_scalar)
    for index, p in enumerate(mu.parts):
        closed = closed * inv_u_minus_psi(g, h, p, index)

    if compositional != closed:
        raise ConsistencyError(
            f"inverse Euler class mismatch for (g={g}, mu={mu}):\n"
            f"  compositional: {format_hodge_class(compositional)}\n"
            f"  closed form:   {format_hodge_class(closed)}"
        )
    return closed


def _bracket_for_term(g, h, psi, lam, table):
    if len(lam) > 1:
        raise DomainError(
            f"non-linear Hodge monomial lam{list(lam)} cannot be evaluated"
        )
    index = lam[0] if lam else 0
    return table.value(HodgeBracket(g=g, h=h, psi=psi, lam=index))


def elsv_via_localization(g, mu, table, u_value=None):
    """The full localization chain: expand

        Lambda(u) * u^(2g-3+2h) / prod (u - mu_i psi_i)

    in the truncated algebra, check that every top-degree coefficient is
    constant in u, pair the top-degree monomials through the bracket table,
    and multiply by r!/(aut * mu_1...mu_h) and the weight prefactor.  The
    result must equal ``elsv_evaluate`` exactly.

    With ``u_value`` set, substitutes that nonzero rational for u before
    degree selection (lower-degree monomials pair to zero by the dimension
    constraint); the result is the same for every choice.
    """
    data = fixed_locus_data(g, mu)
    inv = inverse_euler_normal(data)
    d, h = mu.size, mu.length
    r = 2 * g - 2 + d + h
    cap = 3 * g - 3 + h
    expr = inv * Laurent.monomial(r)
    prefactor = Fraction(factorial(r), aut_size(mu) * data.automorphism_order)

    total = Fraction(0)
    if u_value is None:
        for (psi, lam), coef in expr.terms_of_degree(cap).items():
            if not coef.is_constant():
                raise ConsistencyError(
                    "nonvanishing u-dependence after degree selection in term "
                    f"{_format_term(Fraction(1), 0, psi, lam)}: coefficient {coef}"
                )
            total += coef.constant_value() * _bracket_for_term(g, h, psi, lam, table)
    else:
        u_value = _as_fraction(u_value)
        if u_value == 0:
            raise DomainError("substitution value for u must be nonzero")
        for (psi, lam), coef in expr.terms.items():
            if sum(psi) + sum(lam) != cap:
                continue  # pairs to zero by the dimension constraint
            total += coef.substitute(u_value) * _bracket_for_term(
                g, h, psi, lam, table
            )
    return prefactor * total


# ---------------------------------------------------------------------------
# canonical text grammar for symbolic classes


def _format_term(coef, uexp, psi, lam):
    pieces = [str(coef)]
    if uexp:
        pieces.append(f"u^{uexp}")
    for i, e in enumerate(psi):
        if e == 1:
            pieces.append(f"psi{i + 1}")
        elif e > 1:
            pieces.append(f"psi{i + 1}^{e}")
    pieces.extend(f"lam{i}" for i in lam)
    return " ".join(pieces)


def format_hodge_class(poly):
    """Canonical, round-trippable rendering: terms sorted by degree then key
    then u-exponent, joined with " + "; coefficients are exact rationals."""
    if poly.is_zero():
        return "0"
    rendered = []
    for (psi, lam), coef in poly.items():
        for uexp, c in coef.items():
            rendered.append(_format_term(c, uexp, psi, lam))
    return " + ".join(rendered)


def parse_hodge_class(text, g, h):
    """Inverse of ``format_hodge_class`` for classes on the (g, h) moduli."""
    text = text.strip()
    poly = HodgeClassPoly(g, h)
    if text == "0":
        return poly
    terms = {}
    for chunk in text.split(" + "):
        tokens = chunk.split()
        try:
            coef = Fraction(tokens[0])
        except (ValueError, IndexError) as exc:
            raise DomainError(f"cannot parse term {chunk!r}") from exc
        uexp = 0
        psi = [0] * h
        lam = []
        for tok in tokens[1:]:
            if tok.startswith("u^"):
                uexp = int(tok[2:])
            elif tok.startswith("psi"):
                body = tok[3:]
                if "^" in body:
                    idx, exp = body.split("^")
                    psi[int(idx) - 1] += int(exp)
                else:
                    psi[int(body) - 1] += 1
            elif tok.startswith("lam"):
                lam.append(int(tok[3:]))
            else:
                raise DomainError(f"cannot parse factor {tok!r} in {chunk!r}")
        key = (tuple(psi), tuple(sorted(lam)))
        prev = terms.get(key, Laurent())
        terms[key] = prev + Laurent.monomial(uexp, coef)
    return HodgeClassPoly(g, h, terms)

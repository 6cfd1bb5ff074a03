"""Branched-cover counts by transposition factorizations.

Three independent engines compute the same numbers:

* ``connected_dfs`` -- backtracking enumeration of transposition tuples whose
  product is a fixed permutation and whose support graph is connected
  (connected covers, graded by genus);
* ``disconnected_dp`` -- repeated convolution of the transposition class sum
  in the group algebra, as a plain vector over all d! permutations
  (disconnected covers, graded by Euler characteristic; character-free);
* ``disconnected_burnside`` -- the character sum over irreducibles, with the
  transposition class acting through half the kappa statistic.

``connected_from_disconnected`` converts between the two gradings by a formal
logarithm in Newton-polynomial variables.

Conventions: the reference permutation for cycle type mu is the one with the
cycles (1..mu_1)(mu_1+1..mu_1+mu_2)...; products compose right-to-left, i.e.
the product sigma_1 ... sigma_r applies sigma_r first.  Counts are class
functions, so neither choice affects any result (and the tests check both).

Note on the character-sum grading: the classical identity packages the tuple
counts as an exponential generating series (a lambda^r / r! per count), while
the Euler-characteristic series carries lambda^(r - d).  The two series do not
match monomial-for-monomial -- the degree-one case already differs by a factor
lambda^(-d) -- so this module commits to the coefficient-level identity, which
``disconnected_dp`` verifies exactly.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

from .errors import DomainError, ResourceLimitError
from .partitions import Partition, kappa, partitions_of, z
from .symgroup import build_table

logger = logging.getLogger(__name__)

#: Default budgets; every engine accepts overrides.
DFS_NODE_BUDGET = 10**8
DP_MAX_D = 7
BURNSIDE_MAX_D = 14


# ---------------------------------------------------------------------------
# permutation plumbing (tuples mapping i -> p[i] on {0, ..., d-1})

def identity_perm(d):
    return tuple(range(d))


def compose(a, b):
    """Right-to-left composition: (a o b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def invert_perm(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycle_type(p):
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            n += 1
        lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def cycle_count(p):
    seen = [False] * len(p)
    count = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
    return count


def conjugate_perm(p, g):
    """g o p o g^{-1}."""
    out = [0] * len(p)
    for i in range(len(p)):
        out[g[i]] = g[p[i]]
    return tuple(out)


def canonical_representative(mu):
    """The permutation with cycles (1..mu_1)(mu_1+1..mu_1+mu_2)... in order,
    on 0-based points."""
    d = mu.size
    out = list(range(d))
    start = 0
    for part in mu.parts:
        for k in range(part):
            out[start + k] = start + (k + 1) % part
        start += part
    return tuple(out)


def transpositions(d):
    """All transpositions of {0..d-1} as (permutation, (i, j)) pairs."""
    out = []
    for i, j in combinations(range(d), 2):
        p = list(range(d))
        p[i], p[j] = j, i
        out.append((tuple(p), (i, j)))
    return out


# ---------------------------------------------------------------------------
# engine 1: backtracking enumeration of connected factorizations

def _edges_connect(edges, d):
    """Union-find over {0..d-1} seeded by the edge supports; unmoved points
    count as singletons, so a single class of size d means transitive."""
    if d == 0:
        return False
    parent = list(range(d))
    components = d
    for i, j in edges:
        ri = i
        while parent[ri] != ri:
            ri = parent[ri]
        rj = j
        while parent[rj] != rj:
            rj = parent[rj]
        if ri != rj:
            parent[ri] = rj
            components -= 1
    return components == 1


_DFS_TABLE_MAX_D = 8
_dfs_tables = {}


def _dfs_tables_for(d, composition):
    key = (d, composition)
    cached = _dfs_tables.get(key)
    if cached is None:
        perms = list(permutations(range(d)))
        index = {p: i for i, p in enumerate(perms)}
        dist = [d - cycle_count(p) for p in perms]
        moves, edges = [], []
        for t_perm, (i, j) in transpositions(d):
            if composition == "rl":
                moves.append([index[compose(t_perm, p)] for p in perms])
            else:
                moves.append([index[compose(p, t_perm)] for p in perms])
            edges.append((i, j))
        cached = (index, dist, moves, edges)
        _dfs_tables[key] = cached
    return cached


def _stirling_dist_counts(d):
    """Number of permutations of d points at each transposition distance
    (d - number of cycles), from the unsigned Stirling recursion."""
    row = [1]  # cycle counts for S_0 -> S_d
    for n in range(1, d + 1):
        new = [0] * (n + 1)
        for c, v in enumerate(row):
            new[c + 1] += v
            new[c] += (n - 1) * v
        row = new
    return [row[d - m] if 0 <= d - m <= d else 0 for m in range(d + 1)]


def estimate_dfs_nodes(d, r, dist0=None):
    """Cheap upper-ish estimate of the candidate visits a backtracking run
    will make, using equidistribution of prefix products over the parity
    class.  Used to decide whether a spot check fits a budget."""
    if d <= 1 or r == 0:
        return 1
    num_t = d * (d - 1) // 2
    per_dist = _stirling_dist_counts(d)
    half = max(factorial(d) // 2, 1)
    if dist0 is None:
        dist0 = 0
    total, kept = 0, 1
    for k in range(r):
        total += kept * num_t
        m = r - (k + 1)
        parity = (dist0 + k + 1) % 2
        allowed = sum(
            per_dist[dd] for dd in range(0, min(m, d - 1) + 1) if dd % 2 == parity
        )
        kept = min(kept * num_t, max(1, kept * num_t * allowed // half))
    return total


def connected_dfs(g, mu, node_budget=DFS_NODE_BUDGET, sigma_inf=None,
                  composition="rl"):
    """Connected cover count for genus ``g`` and ramification profile ``mu``.

    Counts tuples (sigma_1, ..., sigma_r) of transpositions with product equal
    to a fixed representative of the class of ``mu`` and with the generated
    subgroup transitive (union-find over the supports at each leaf), then
    divides by the centralizer order.  The tuple length is
    r = 2g - 2 + |mu| + len(mu).  Branches die when the remaining steps cannot
    close the gap between the pending product and the identity (minimum
    transposition distance d - #cycles).

    ``sigma_inf`` may supply an alternative class representative (the count is
    a class function, so the result cannot depend on it).  ``composition``
    selects the product convention, "rl" (apply rightmost first) or "lr".
    """
    if g < 0:
        raise DomainError(f"genus must be nonnegative, got {g}")
    d, h = mu.size, mu.length
    r = 2 * g - 2 + d + h
    if r < 0:
        raise DomainError(f"invalid query: r = 2g-2+|mu|+len(mu) = {r} < 0")
    if composition not in ("rl", "lr"):
        raise DomainError(f"unknown composition convention {composition!r}")

    if sigma_inf is None:
        sigma_inf = canonical_representative(mu)
    elif cycle_type(sigma_inf) != mu:
        raise DomainError(
            f"sigma_inf has cycle type {cycle_type(sigma_inf)}, expected {mu}"
        )

    dist0 = d - cycle_count(sigma_inf)
    if dist0 > r or (r - dist0) % 2 != 0:
        return Fraction(0)  # parity: each factor flips the sign
    if d <= _DFS_TABLE_MAX_D:
        count = _dfs_count_indexed(d, r, sigma_inf, node_budget, composition)
    else:
        count = _dfs_count_generic(d, r, sigma_inf, node_budget, composition)
    return Fraction(count, z(mu))


def _dfs_count_indexed(d, r, sigma_inf, node_budget, composition):
    index, dist, moves, edges = _dfs_tables_for(d, composition)
    id_idx = index[identity_perm(d)]
    num_t = len(moves)
    count = 0
    nodes = 0
    chosen = []

    def descend(depth, needed_idx):
        nonlocal count, nodes
        if nodes > node_budget:
            raise ResourceLimitError(
                f"DFS budget of {node_budget} visited nodes exceeded"
            )
        remaining = r - depth
        if remaining == 0:
            if needed_idx == id_idx and _edges_connect(chosen, d):
                count += 1
            return
        limit = remaining - 1
        nodes += num_t
        for t in range(num_t):
            nxt = moves[t][needed_idx]
            if dist[nxt] > limit:
                continue
            chosen.append(edges[t])
            descend(depth + 1, nxt)
            chosen.pop()

    descend(0, index[sigma_inf])
    return count


def _dfs_count_generic(d, r, sigma_inf, node_budget, composition):
    trans = transpositions(d)
    right_to_left = composition == "rl"
    count = 0
    nodes = 0
    chosen = []

    def descend(depth, needed):
        nonlocal count, nodes
        if nodes > node_budget:
            raise ResourceLimitError(
                f"DFS budget of {node_budget} visited nodes exceeded"
            )
        remaining = r - depth
        if remaining == 0:
            if needed == identity_perm(d) and _edges_connect(chosen, d):
                count += 1
            return
        nodes += len(trans)
        for t_perm, edge in trans:
            nxt = compose(t_perm, needed) if right_to_left else compose(needed, t_perm)
            if d - cycle_count(nxt) > remaining - 1:
                continue
            chosen.append(edge)
            descend(depth + 1, nxt)
            chosen.pop()

    descend(0, sigma_inf)
    return count


# ---------------------------------------------------------------------------
# engine 2: group-algebra convolution

@dataclass
class _DPState:
    perms: list
    index: dict
    moves: list           # moves[t][p] = index of perms[p] * transposition t
    vectors: list = field(default_factory=list)


_dp_states = {}


def _dp_state(d, composition):
    key = (d, composition)
    state = _dp_states.get(key)
    if state is None:
        perms = list(permutations(range(d)))
        index = {p: i for i, p in enumerate(perms)}
        moves = []
        for t_perm, _ in transpositions(d):
            if composition == "rl":
                moves.append([index[compose(p, t_perm)] for p in perms])
            else:
                moves.append([index[compose(t_perm, p)] for p in perms])
        state = _DPState(perms=perms, index=index, moves=moves)
        state.vectors.append([0] * len(perms))
        state.vectors[0][index[identity_perm(d)]] = 1
        _dp_states[key] = state
    return state


def _factorization_count_dp(d, r, target, composition):
    state = _dp_state(d, composition)
    while len(state.vectors) <= r:
        prev = state.vectors[-1]
        nxt = [0] * len(state.perms)
        for move in state.moves:
            for p, v in enumerate(prev):
                if v:
                    nxt[move[p]] += v
        state.vectors.append(nxt)
    return state.vectors[r][state.index[target]]


def disconnected_dp(chi, mu, max_d=DP_MAX_D, composition="rl"):
    """Disconnected cover count for Euler characteristic ``chi`` and profile
    ``mu``, by r-fold convolution of the transposition indicator vector in the
    group algebra (no transitivity condition, no characters).

    r = -chi + |mu| + len(mu).  The count vanishes unless chi is even (the
    sign of a product of r transpositions must match the sign of the class
    representative); odd chi returns 0.
    """
    d, h = mu.size, mu.length
    r = -chi + d + h
    if r < 0:
        raise DomainError(f"invalid query: r = -chi+|mu|+len(mu) = {r} < 0")
    if chi % 2 != 0:
        logger.debug("odd Euler characteristic %s: count is 0 by sign parity", chi)
        return Fraction(0)
    if d > max_d:
        raise ResourceLimitError(
            f"group-algebra DP budget is d <= {max_d}, got d = {d}"
        )
    if composition not in ("rl", "lr"):
        raise DomainError(f"unknown composition convention {composition!r}")
    count = _factorization_count_dp(d, r, canonical_representative(mu), composition)
    return Fraction(count, z(mu))


# ---------------------------------------------------------------------------
# engine 3: character sum

def disconnected_burnside(chi, mu, max_d=BURNSIDE_MAX_D, cache_dir=None):
    """Disconnected cover count as a character sum: the same tuple count as
    ``disconnected_dp``, obtained as

        (1/z(mu)) * sum over |nu| = d of (kappa(nu)/2)^r * (dim R_nu / d!)
                                         * chi_nu(C_mu)

    with r = -chi + |mu| + len(mu)."""
    d, h = mu.size, mu.length
    r = -chi + d + h
    if r < 0:
        raise DomainError(f"invalid query: r = -chi+|mu|+len(mu) = {r} < 0")
    if chi % 2 != 0:
        logger.debug("odd Euler characteristic %s: count is 0 by sign parity", chi)
        return Fraction(0)
    if d > max_d:
        raise ResourceLimitError(
            f"character-sum budget is d <= {max_d}, got d = {d}"
        )
    if d == 0:
        return Fraction(1 if r == 0 else 0)
    table = build_table(d, cache_dir=cache_dir, max_d=max_d)
    d_fact = factorial(d)
    total = Fraction(0)
    for nu in table.partitions:
        half_kappa = kappa(nu) // 2
        total += Fraction(half_kappa**r * table.dim(nu) * table.chi(nu, mu), d_fact)
    return total / z(mu)


# ---------------------------------------------------------------------------
# generating series in Newton-polynomial variables

@dataclass
class HurwitzSeries:
    """Truncated formal series sum c_(mu,e) * lambda^e * p_mu, where p_mu is
    the product of Newton polynomials over the parts of mu.

    Keys are (parts tuple, exponent); coefficients are exact rationals.
    Multiplying monomials concatenates-and-sorts the partitions and adds the
    exponents; terms beyond the truncation orders are dropped.

    The coefficient of a product also picks up binom(r1 + r2, r1) with
    r = e + |mu| per factor: covers over a disjoint profile interleave their
    labelled simple branch points, so the grading is exponential in r.  (A
    degree-4 check pins this down: the two factorizations of a product of two
    disjoint 2-cycles into two transpositions only appear with the binomial.)
    Without the weighting the exp/log transform does not invert the
    disconnected counts.
    """

    max_size: int
    max_exp: int
    coeffs: dict = field(default_factory=dict)

    @classmethod
    def one(cls, max_size, max_exp):
        return cls(max_size, max_exp, {((), 0): Fraction(1)})

    def coefficient(self, mu, e):
        parts = mu.parts if isinstance(mu, Partition) else tuple(mu)
        return self.coeffs.get((parts, e), Fraction(0))

    def set_coefficient(self, mu, e, value):
        parts = mu.parts if isinstance(mu, Partition) else tuple(mu)
        if e + sum(parts) < 0:
            raise DomainError(
                f"exponent {e} below -|mu| = {-sum(parts)}: no cover has "
                "fewer than zero simple branch points"
            )
        value = Fraction(value)
        if value:
            self.coeffs[(parts, e)] = value
        else:
            self.coeffs.pop((parts, e), None)

    def _compatible(self, other):
        if (self.max_size, self.max_exp) != (other.max_size, other.max_exp):
            raise DomainError("cannot combine series with different truncations")

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            new = out.get(key, Fraction(0)) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return HurwitzSeries(self.max_size, self.max_exp, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        out = {k: scalar * v for k, v in self.coeffs.items() if scalar * v}
        return HurwitzSeries(self.max_size, self.max_exp, out)

    def __mul__(self, other):
        self._compatible(other)
        out = {}
        for (p1, e1), c1 in self.coeffs.items():
            r1 = e1 + sum(p1)
            for (p2, e2), c2 in other.coeffs.items():
                e = e1 + e2
                if e > self.max_exp:
                    continue
                parts = tuple(sorted(p1 + p2, reverse=True))
                if sum(parts) > self.max_size:
                    continue
                r2 = e2 + sum(p2)
                key = (parts, e)
                new = out.get(key, Fraction(0)) + comb(r1 + r2, r1) * c1 * c2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return HurwitzSeries(self.max_size, self.max_exp, out)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, HurwitzSeries):
            return NotImplemented
        self._compatible(other)
        return self.coeffs == other.coeffs

    def items(self):
        """Deterministically ordered (key, coefficient) pairs."""
        return sorted(
            self.coeffs.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], kv[0][1])
        )

    def _power_bound(self):
        # Every term of (S - 1) from cover data has e >= -|mu|, so the weight
        # e + 2|mu| >= 1 is additive and bounded by max_exp + 2*max_size.
        return self.max_exp + 2 * self.max_size + 1

    def log(self):
        """Formal log of a series with constant term 1, within truncation."""
        if self.coefficient((), 0) != 1:
            raise DomainError("invalid series: constant term must be exactly 1")
        t = HurwitzSeries(self.max_size, self.max_exp, dict(self.coeffs))
        t.set_coefficient((), 0, 0)
        acc = HurwitzSeries(self.max_size, self.max_exp)
        power = HurwitzSeries.one(self.max_size, self.max_exp)
        for k in range(1, self._power_bound() + 1):
            power = power * t
            if power.is_zero():
                return acc
            acc = acc + Fraction((-1) ** (k + 1), k) * power
        raise DomainError(
            "series log does not terminate within truncation; a coefficient "
            "violates e >= -|mu|"
        )

    def exp(self):
        """Formal exp of a series with zero constant term, within truncation."""
        if self.coefficient((), 0) != 0:
            raise DomainError("invalid series: constant term must be 0 for exp")
        acc = HurwitzSeries.one(self.max_size, self.max_exp)
        power = HurwitzSeries.one(self.max_size, self.max_exp)
        for k in range(1, self._power_bound() + 1):
            power = Fraction(1, k) * (power * self)
            if power.is_zero():
                return acc
            acc = acc + power
        raise DomainError(
            "series exp does not terminate within truncation; a coefficient "
            "violates e >= -|mu|"
        )


def connected_from_disconnected(series):
    """Formal logarithm turning the disconnected generating series into the
    connected one, inverting exp(sum over nonempty mu of Phi_mu p_mu) =
    sum over mu of Phi*_mu p_mu within the truncation orders."""
    return series.log()


def _engine_callable(engine, dp_max_d=DP_MAX_D, burnside_max_d=BURNSIDE_MAX_D,
                     cache_dir=None):
    if callable(engine):
        return engine
    if engine == "dp":
        return lambda chi, mu: disconnected_dp(chi, mu, max_d=dp_max_d)
    if engine == "burnside":
        return lambda chi, mu: disconnected_burnside(
            chi, mu, max_d=burnside_max_d, cache_dir=cache_dir
        )
    raise DomainError(f"unknown disconnected engine {engine!r}")


def _submultisets(mu):
    """All distinct nonempty sub-multisets of the parts of mu, as partitions."""
    counts = sorted(Counter(mu.parts).items(), reverse=True)
    subs = [()]
    for value, mult in counts:
        subs = [s + (value,) * k for s in subs for k in range(mult + 1)]
    return [Partition(s) for s in subs if s]


def disconnected_series(engine="burnside", max_size=6, max_exp=10,
                        submultisets_of=None, **engine_opts):
    """Assemble the disconnected generating series from an engine.

    Includes every partition of size <= max_size (or, when
    ``submultisets_of`` is given, only sub-multisets of that partition, which
    is all the logarithm can consume for that target) and every admissible
    exponent e = r - |mu| <= max_exp.  The constant term is 1.
    """
    eng = _engine_callable(engine, **engine_opts)
    if submultisets_of is not None:
        pool = [p for p in _submultisets(submultisets_of) if p.size <= max_size]
    else:
        pool = [p for s in range(1, max_size + 1) for p in partitions_of(s)]
    series = HurwitzSeries.one(max_size, max_exp)
    for part in pool:
        d, h = part.size, part.length
        for r in range(0, max_exp + d + 1):
            if (r - d - h) % 2 != 0:
                continue
            e = r - d
            if e > max_exp:
                break
            value = eng(d + h - r, part)
            if value:
                series.set_coefficient(part, e, value)
    return series


def connected_via_transform(g, mu, engine="burnside", **engine_opts):
    """Connected cover count extracted from a disconnected engine through the
    exp/log transform.  Concretely: the coefficient of
    lambda^(2g-2+len(mu)) p_mu in the log of the disconnected series."""
    d, h = mu.size, mu.length
    e = 2 * g - 2 + h
    if e + d < 0:
        raise DomainError(f"invalid query: r = {e + d} < 0")
    if d == 0:
        raise DomainError("the empty partition has no connected covers")
    series = disconnected_series(
        engine, max_size=d, max_exp=e + d, submultisets_of=mu, **engine_opts
    )
    return connected_from_disconnected(series).coefficient(mu, e)


def phi_series(mu, engine="dfs", max_r=10, **engine_opts):
    """One-variable generating series for the profile ``mu``: a map from the
    exponent e to the cover count, with e = 2g - 2 + len(mu) for the
    connected series (engine "dfs") and e = -chi + len(mu) for the
    disconnected ones (engines "dp" and "burnside").  Either way e = r - |mu|,
    and terms run over all admissible r <= max_r."""
    d, h = mu.size, mu.length
    terms = {}
    if engine == "dfs":
        g = 0
        while True:
            r = 2 * g - 2 + d + h
            if r > max_r:
                break
            if r >= 0:
                value = connected_dfs(g, mu, **engine_opts)
                if value:
                    terms[r - d] = value
            g += 1
    elif engine in ("dp", "burnside") or callable(engine):
        eng = _engine_callable(engine, **engine_opts)
        for r in range(0, max_r + 1):
            if (r - d - h) % 2 != 0:
                continue
            value = eng(d + h - r, mu)
            if value:
                terms[r - d] = value
    else:
        raise DomainError(f"unknown engine {engine!r}")
    return terms

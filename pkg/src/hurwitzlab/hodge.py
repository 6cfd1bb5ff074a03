"""Linear Hodge integral tables, driven by the branched-cover engines.

The bridge identity: for a stable pair (g, h) and a profile mu with h parts,
the connected cover count factors as

    H(g, mu) = (r! / aut_size(mu)) * prod mu_i^mu_i / mu_i! * P(mu),
    r = 2g - 2 + |mu| + h,

where P is a symmetric polynomial in the parts whose homogeneous piece of
degree 3g - 3 + h - i carries, with sign (-1)^i, exactly the brackets
<psi_1^{j_1} ... psi_h^{j_h} lambda_i>.  ``elsv_evaluate`` runs this forward
from a bracket table; ``elsv_invert`` samples an engine on a grid of part
tuples and solves the exact linear system in the monomial-symmetric basis to
recover the brackets.  All linear algebra is fraction-free elimination on
integers; no floating point anywhere.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, lcm

from .errors import ConsistencyError, DomainError, MissingBracketError
from .hurwitz import (
    DFS_NODE_BUDGET,
    connected_dfs,
    connected_via_transform,
    estimate_dfs_nodes,
)
from .partitions import Partition, aut_size, partitions_of

logger = logging.getLogger(__name__)

_TABLE_HEADER = "hurwitzlab-hodge-table v1"

SEEDED = "seeded"
INVERTED = "inverted-from-hurwitz"


@dataclass(frozen=True)
class HodgeBracket:
    """A linear Hodge integral <psi_1^{j_1} ... psi_h^{j_h} lambda_i> on the
    (g, h) moduli space.  psi exponents are stored sorted descending (the
    bracket is symmetric in the marked points); the dimension constraint
    sum(j) + i = 3g - 3 + h is enforced, so no identically-zero bracket is
    ever represented."""

    g: int
    h: int
    psi: tuple
    lam: int

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(sorted(self.psi, reverse=True)))
        if self.h < 1 or len(self.psi) != self.h:
            raise DomainError(f"need one psi exponent per marked point: {self}")
        if any(j < 0 for j in self.psi):
            raise DomainError(f"negative psi exponent: {self}")
        if not 0 <= self.lam <= self.g:
            raise DomainError(f"lambda index out of range: {self}")
        if 2 * self.g - 2 + self.h <= 0:
            raise DomainError(f"unstable (g, h) = ({self.g}, {self.h})")
        if sum(self.psi) + self.lam != 3 * self.g - 3 + self.h:
            raise DomainError(
                f"dimension constraint violated: sum(psi) + lam = "
                f"{sum(self.psi) + self.lam} != {3 * self.g - 3 + self.h}"
            )

    def sort_key(self):
        return (self.g, self.h, self.lam, self.psi)

    def __str__(self):
        inner = ",".join(str(j) for j in self.psi)
        return f"({self.g},{self.h},[{inner}],{self.lam})"

    @classmethod
    def from_string(cls, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise DomainError(f"cannot parse bracket key {text!r}")
        body = text[1:-1]
        try:
            head, rest = body.split("[", 1)
            exps, tail = rest.split("]", 1)
            g_str, h_str = head.rstrip(",").split(",")
            psi = tuple(int(t) for t in exps.split(",")) if exps else ()
            lam = int(tail.lstrip(","))
            return cls(g=int(g_str), h=int(h_str), psi=psi, lam=lam)
        except ValueError as exc:
            raise DomainError(f"cannot parse bracket key {text!r}") from exc


_SEED_BRACKET = HodgeBracket(g=0, h=3, psi=(0, 0, 0), lam=0)


class HodgeTable:
    """Map from brackets to exact rational values, with a provenance tag per
    entry.  The three-point genus-zero seed <psi^0 psi^0 psi^0> = 1 is always
    present."""

    def __init__(self):
        self._entries = {_SEED_BRACKET: (Fraction(1), SEEDED)}

    def add(self, bracket, value, provenance=INVERTED):
        value = Fraction(value)
        existing = self._entries.get(bracket)
        if existing is not None:
            if existing[0] != value:
                raise ConsistencyError(
                    f"conflicting values for {bracket}: {existing[0]} vs {value}"
                )
            return
        self._entries[bracket] = (value, provenance)

    def value(self, bracket):
        entry = self._entries.get(bracket)
        if entry is None:
            raise MissingBracketError(bracket)
        return entry[0]

    def provenance(self, bracket):
        entry = self._entries.get(bracket)
        if entry is None:
            raise MissingBracketError(bracket)
        return entry[1]

    def __contains__(self, bracket):
        return bracket in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries, key=HodgeBracket.sort_key))

    def __eq__(self, other):
        if not isinstance(other, HodgeTable):
            return NotImplemented
        return self._entries == other._entries

    def items(self):
        for bracket in self:
            value, provenance = self._entries[bracket]
            yield bracket, value, provenance

    def brackets_for(self, g, h):
        return [b for b in self if (b.g, b.h) == (g, h)]

    def has_all_for(self, g, h):
        return all(b in self for b in required_brackets(g, h))


def required_brackets(g, h):
    """Every bracket the (g, h) forward evaluation touches."""
    if 2 * g - 2 + h <= 0:
        raise DomainError(f"unsupported range: unstable (g, h) = ({g}, {h})")
    n = 3 * g - 3 + h
    out = []
    for i in range(0, g + 1):
        s = n - i
        if s < 0:
            continue
        for psi in _exponent_multisets(s, h):
            out.append(HodgeBracket(g=g, h=h, psi=psi, lam=i))
    return out


def _exponent_multisets(total, h):
    """Weakly decreasing h-tuples of nonnegative integers with the given sum."""
    return [
        tuple(p.parts) + (0,) * (h - p.length)
        for p in partitions_of(total)
        if p.length <= h
    ]


def monomial_symmetric(exponents, values):
    """The monomial symmetric polynomial m_J evaluated at a tuple of values:
    the sum over distinct permutations of J of the corresponding monomial."""
    total = Fraction(0)
    for perm in set(permutations(exponents)):
        term = Fraction(1)
        for v, j in zip(values, perm):
            term *= Fraction(v) ** j
        total += term
    return total


def _prefactor(g, mu):
    d, h = mu.size, mu.length
    r = 2 * g - 2 + d + h
    out = Fraction(factorial(r), aut_size(mu))
    for p in mu.parts:
        out *= Fraction(p**p, factorial(p))
    return out


def elsv_evaluate(g, mu, table):
    """Forward evaluation: the connected cover count for (g, mu) from a
    bracket table.  Raises MissingBracketError naming the first absent
    bracket, and rejects unstable (g, len(mu))."""
    h = mu.length
    if 2 * g - 2 + h <= 0:
        raise DomainError(f"unsupported range: unstable (g, h) = ({g}, {h})")
    n = 3 * g - 3 + h
    total = Fraction(0)
    for i in range(0, g + 1):
        s = n - i
        if s < 0:
            continue
        sign = (-1) ** i
        for psi in _exponent_multisets(s, h):
            bracket = HodgeBracket(g=g, h=h, psi=psi, lam=i)
            total += sign * table.value(bracket) * monomial_symmetric(psi, mu.parts)
    return _prefactor(g, mu) * total


# ---------------------------------------------------------------------------
# exact linear algebra (fraction-free elimination)

def _solve_square_exact(rows, rhs):
    """Solve A x = b exactly.  Rows are scaled to integers, eliminated by the
    fraction-free (Bareiss) scheme, then back-substituted with rationals."""
    n = len(rows)
    aug = []
    for row, b in zip(rows, rhs):
        scale = lcm(*(Fraction(v).denominator for v in list(row) + [b]))
        aug.append([int(Fraction(v) * scale) for v in list(row) + [b]])
    prev = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot_row is None:
            raise DomainError("singular linear system")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


class _RankTracker:
    """Incremental exact rank bookkeeping for greedy row selection."""

    def __init__(self, width):
        self.width = width
        self.reduced = []  # (pivot column, normalized row)

    def try_add(self, row):
        work = [Fraction(v) for v in row]
        for pivot, basis_row in self.reduced:
            if work[pivot]:
                coef = work[pivot]
                for j in range(self.width):
                    work[j] -= coef * basis_row[j]
        for j in range(self.width):
            if work[j]:
                inv = work[j]
                self.reduced.append((j, [v / inv for v in work]))
                return True
        return False

    @property
    def rank(self):
        return len(self.reduced)


# ---------------------------------------------------------------------------
# inversion

def sample_candidates(g, h):
    """Deterministic stream of sample profiles for the (g, h) interpolation.

    Part tuples are drawn from {1..3g-1+h}^h, ordered by total size with
    strictly increasing tuples (trivial part symmetry) preferred within each
    size; the pool radius grows without bound so rank deficiency can always
    be repaired."""
    seen = set()
    radius = max(3 * g - 1 + h, 1)
    while True:
        batch = []
        for tup in _weakly_increasing_tuples(h, radius):
            if tup in seen:
                continue
            strict = 0 if len(set(tup)) == len(tup) else 1
            batch.append((sum(tup), strict, tup))
        for _, _, tup in sorted(batch):
            seen.add(tup)
            yield Partition(sorted(tup, reverse=True))
        radius += 1


def _weakly_increasing_tuples(h, radius):
    def rec(prefix, lo):
        if len(prefix) == h:
            yield prefix
            return
        for v in range(lo, radius + 1):
            yield from rec(prefix + (v,), v)

    yield from rec((), 1)


def normalized_count(g, mu, hurwitz_value):
    """Strip the combinatorial prefactor from an engine value, leaving the
    symmetric-polynomial part P(mu)."""
    return Fraction(hurwitz_value) / _prefactor(g, mu)


@dataclass(frozen=True)
class InversionResult:
    g: int
    h: int
    brackets: dict
    grid: tuple          # profiles used for interpolation
    samples: dict        # profile -> engine value, for every profile queried


def default_engine(g, mu):
    """Connected count via the character-sum engine plus the log transform."""
    return connected_via_transform(g, mu, "burnside")


#: Planning threshold for inversion spot checks.  The node estimate is an
#: equidistribution heuristic and runs optimistic by a small factor, so plan
#: against a quarter of the real budget.
SPOT_CHECK_BUDGET = DFS_NODE_BUDGET // 4


def elsv_inversion(g, h, hurwitz_engine=None, dfs_spot_check=True,
                   spot_check_budget=SPOT_CHECK_BUDGET, max_radius_growth=20):
    """Recover all (g, h) brackets by exact interpolation against an engine.

    Samples the normalized count on a grid of profiles, solves for the
    monomial-symmetric coefficients in the degree band
    [2g-3+h, 3g-3+h], and reads brackets off the band.  The two smallest grid
    points are independently re-derived by the backtracking engine unless
    ``dfs_spot_check`` is disabled.
    """
    if 2 * g - 2 + h <= 0:
        raise DomainError(f"unsupported range: unstable (g, h) = ({g}, {h})")
    engine = hurwitz_engine if hurwitz_engine is not None else default_engine
    n = 3 * g - 3 + h
    unknowns = []
    for i in range(0, g + 1):
        s = n - i
        if s < 0:
            continue
        unknowns.extend((psi, i) for psi in _exponent_multisets(s, h))

    tracker = _RankTracker(len(unknowns))
    grid, rows, values = [], [], []
    samples = {}
    candidates = sample_candidates(g, h)
    attempts_limit = None
    attempts = 0
    while tracker.rank < len(unknowns):
        mu = next(candidates)
        attempts += 1
        if attempts_limit is None:
            # bound attempts by the initial pool plus the allowed growth
            base = max(3 * g - 1 + h, 1) + max_radius_growth
            attempts_limit = _pool_size(h, base)
        if attempts > attempts_limit:
            raise DomainError(
                f"singular interpolation system for (g, h) = ({g}, {h}): "
                f"rank {tracker.rank} of {len(unknowns)} after grid {grid}"
            )
        row = [monomial_symmetric(psi, mu.parts) for psi, _ in unknowns]
        if not tracker.try_add(row):
            continue
        value = engine(g, mu)
        samples[mu] = value
        grid.append(mu)
        rows.append(row)
        values.append(normalized_count(g, mu, value))

    solution = _solve_square_exact(rows, values)

    if dfs_spot_check:
        checked = 0
        for mu in sorted(grid, key=lambda p: (p.size, p.parts)):
            if checked == 2:
                break
            r = 2 * g - 2 + mu.size + mu.length
            if estimate_dfs_nodes(mu.size, r) > spot_check_budget:
                logger.info(
                    "skipping backtracking spot check at (g=%s, mu=%s): "
                    "estimated cost exceeds the node budget", g, mu,
                )
                continue
            check = connected_dfs(g, mu)
            if check != samples[mu]:
                raise ConsistencyError(
                    f"engine disagreement at (g={g}, mu={mu}): backtracking "
                    f"gives {check}, inversion engine gave {samples[mu]}"
                )
            checked += 1

    brackets = {}
    for ((psi, i), coeff) in zip(unknowns, solution):
        brackets[HodgeBracket(g=g, h=h, psi=psi, lam=i)] = (-1) ** i * coeff
    return InversionResult(g=g, h=h, brackets=brackets, grid=tuple(grid),
                           samples=samples)


def _pool_size(h, radius):
    # number of weakly increasing h-tuples from {1..radius}
    from math import comb

    return comb(radius + h - 1, h)


def elsv_invert(g, h, hurwitz_engine=None, dfs_spot_check=True):
    """All linear Hodge brackets for (g, h), as a dict from bracket to exact
    rational.  See ``elsv_inversion`` for the mechanism and metadata."""
    return elsv_inversion(
        g, h, hurwitz_engine=hurwitz_engine, dfs_spot_check=dfs_spot_check
    ).brackets


def invert_into(table, g, h, hurwitz_engine=None, provenance=INVERTED):
    """Run the inversion and merge the results into ``table``."""
    brackets = elsv_invert(g, h, hurwitz_engine=hurwitz_engine)
    for bracket, value in brackets.items():
        table.add(bracket, value, provenance)
    return brackets


# ---------------------------------------------------------------------------
# string equation (consistency check only, never a source of values)

@dataclass(frozen=True)
class StringCheck:
    lhs: HodgeBracket
    rhs: tuple
    expected: Fraction
    actual: Fraction

    @property
    def passed(self):
        return self.expected == self.actual


@dataclass
class StringEquationReport:
    checks: list
    skipped: list

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def summary(self):
        return (
            f"{sum(1 for c in self.checks if c.passed)}/{len(self.checks)} "
            f"string-equation identities hold, {len(self.skipped)} skipped"
        )


def string_equation_check(table):
    """Check every applicable instance of the identity that removes one
    psi^0 insertion from a lambda_0 bracket:

        <psi^0 prod psi^{j_i}>_(g,h) = sum_k <psi^{j_k - 1} prod rest>_(g,h-1)

    Only brackets with all needed right-hand entries present are checked;
    the rest are reported as skipped."""
    checks, skipped = [], []
    for bracket in table:
        if bracket.lam != 0 or bracket.h < 2 or 0 not in bracket.psi:
            continue
        if 2 * bracket.g - 2 + (bracket.h - 1) <= 0:
            skipped.append(bracket)
            continue
        reduced = list(bracket.psi)
        reduced.remove(0)
        rhs = []
        for k, j in enumerate(reduced):
            if j >= 1:
                lowered = list(reduced)
                lowered[k] = j - 1
                rhs.append(
                    HodgeBracket(g=bracket.g, h=bracket.h - 1,
                                 psi=tuple(lowered), lam=0)
                )
        if any(b not in table for b in rhs):
            skipped.append(bracket)
            continue
        expected = sum((table.value(b) for b in rhs), Fraction(0))
        checks.append(
            StringCheck(lhs=bracket, rhs=tuple(rhs), expected=expected,
                        actual=table.value(bracket))
        )
    return StringEquationReport(checks=checks, skipped=skipped)


# ---------------------------------------------------------------------------
# serialization

def hodge_export(table):
    """Deterministic versioned document: one line per bracket, sorted."""
    lines = [_TABLE_HEADER]
    for bracket, value, provenance in table.items():
        lines.append(f"{bracket} {value} {provenance}")
    return "\n".join(lines) + "\n"


def hodge_import(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _TABLE_HEADER:
        raise DomainError("unrecognized Hodge table format")
    table = HodgeTable()
    for ln in lines[1:]:
        try:
            key, value, provenance = ln.split()
        except ValueError as exc:
            raise DomainError(f"malformed Hodge table line {ln!r}") from exc
        table.add(HodgeBracket.from_string(key), Fraction(value), provenance)
    return table

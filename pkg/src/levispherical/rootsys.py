"""Root-system data for the finite Cartan types, in exact integer arithmetic.

Conventions, fixed once for the whole package:

* Types are the finite families A (rank >= 1), B (rank >= 2), C (rank >= 3),
  D (rank >= 4), E (rank 6, 7, 8), F (rank 4), G (rank 2).  Nodes are
  numbered 1..n in Bourbaki order: B_n and C_n put the doubled bond at the
  end of the chain (node n is short in B_n, long in C_n), D_n attaches both
  n-1 and n to node n-2 (so D4 has node 2 in the middle), E puts node 2 on
  the branch attached to node 4, F4 is the chain 1 - 2 => 3 - 4, and G2 has
  node 1 short.

* The Cartan matrix is C[i][j] = <alpha_i, alpha_j^vee>.  The simple
  reflection s_j therefore acts on roots by

      s_j(alpha_i) = alpha_i - C[i][j] * alpha_j,

  and in the fundamental-weight basis alpha_i = sum_j C[i][j] * omega_j,
  i.e. row i of the Cartan matrix is alpha_i written in weight coordinates.

* A root is an integer coordinate vector in the simple-root basis.  A root
  is positive iff all coordinates are >= 0; every root is either positive
  or the negative of a positive root.  No Euclidean realization is used
  anywhere: all computations are integer-exact.

Positive roots are generated by closure: start from the simple roots and
repeatedly apply simple reflections, keeping every image with all
coordinates nonnegative, until nothing new appears.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

RootVector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class InvalidCartanType(ValueError):
    """Raised for unknown families or ranks outside the finite range."""


# Valid rank range per family, inclusive (None = unbounded above).
_RANK_RANGE: dict[str, tuple[int, int | None]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class CartanType:
    """A finite Cartan type, e.g. CartanType('D', 4).

    >>> str(CartanType("F", 4))
    'F4'
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        rng = _RANK_RANGE.get(self.family)
        if rng is None:
            raise InvalidCartanType(f"unknown family {self.family!r}")
        lo, hi = rng
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise InvalidCartanType(
                f"rank {self.rank} out of range for family {self.family}"
            )

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_cartan_type(text: str) -> CartanType:
    """Parse a type string such as 'A5', 'd4' or 'E8' (case-insensitive)."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text)
    if m is None:
        raise InvalidCartanType(f"cannot parse Cartan type from {text!r}")
    return CartanType(m.group(1).upper(), int(m.group(2)))


def _dynkin_edges(ct: CartanType) -> list[tuple[int, int, int, int]]:
    """Bonds of the Dynkin diagram as (i, j, c_ij, c_ji), 1-indexed.

    c_ij is the Cartan entry C[i][j] = <alpha_i, alpha_j^vee> for the bond.
    """
    fam, n = ct.family, ct.rank
    chain = [(i, i + 1, -1, -1) for i in range(1, n)]
    if fam == "A":
        return chain
    if fam == "B":
        # Node n is short: <alpha_{n-1}, alpha_n^vee> = -2.
        chain[-1] = (n - 1, n, -2, -1)
        return chain
    if fam == "C":
        # Node n is long: transpose of the B_n bond.
        chain[-1] = (n - 1, n, -1, -2)
        return chain
    if fam == "D":
        chain = [(i, i + 1, -1, -1) for i in range(1, n - 1)]
        chain.append((n - 2, n, -1, -1))
        return chain
    if fam == "E":
        edges = [(1, 3, -1, -1), (2, 4, -1, -1)]
        edges += [(i, i + 1, -1, -1) for i in range(3, n)]
        return edges
    if fam == "F":
        return [(1, 2, -1, -1), (2, 3, -2, -1), (3, 4, -1, -1)]
    if fam == "G":
        # Node 1 short: <alpha_2, alpha_1^vee> = -3.
        return [(1, 2, -1, -3)]
    raise InvalidCartanType(f"unknown family {fam!r}")  # pragma: no cover


def _cartan_matrix(ct: CartanType) -> Matrix:
    n = ct.rank
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, cij, cji in _dynkin_edges(ct):
        rows[i - 1][j - 1] = cij
        rows[j - 1][i - 1] = cji
    return tuple(tuple(r) for r in rows)


def _positive_root_count(ct: CartanType) -> int:
    """Classical count of positive roots, used as a consistency check."""
    n = ct.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}[n] if ct.family == "E" else 0,
        "F": 24,
        "G": 6,
    }[ct.family]


def _close_positive_roots(cartan: Matrix) -> tuple[RootVector, ...]:
    """All positive roots, by reflection closure from the simple roots."""
    n = len(cartan)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    found: set[RootVector] = set(simple)
    frontier = list(simple)
    while frontier:
        fresh: list[RootVector] = []
        for v in frontier:
            for j in range(n):
                # s_j changes only coordinate j: c_j -> c_j - sum_k C[k][j] c_k.
                cj = v[j] - sum(cartan[k][j] * v[k] for k in range(n))
                if cj < 0:
                    continue
                w = v[:j] + (cj,) + v[j + 1 :]
                if w not in found:
                    found.add(w)
                    fresh.append(w)
        frontier = fresh
    return tuple(sorted(found, key=lambda v: (sum(v), v)))


@dataclass(frozen=True, eq=False)
class RootSystemSpec:
    """Immutable root-system data; built once per type via build_root_system.

    Instances are interned (one per Cartan type), so identity comparison and
    the default object hash are correct and fast.
    """

    cartan_type: CartanType
    cartan_matrix: Matrix
    positive_roots: tuple[RootVector, ...]

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @cached_property
    def positive_root_set(self) -> frozenset[RootVector]:
        return frozenset(self.positive_roots)

    @cached_property
    def column_neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each node j (0-based): the (k, C[k][j]) with k != j, entry nonzero.

        This is the sparse data needed to multiply by a simple reflection.
        """
        n = self.rank
        out = []
        for j in range(n):
            out.append(
                tuple(
                    (k, self.cartan_matrix[k][j])
                    for k in range(n)
                    if k != j and self.cartan_matrix[k][j] != 0
                )
            )
        return tuple(out)

    @cached_property
    def height_functional(self) -> tuple[int, ...]:
        """Integer vector u with u . x = (scale) * height of x for weights x.

        Here x is in fundamental-weight coordinates and height means the sum
        of simple-root coordinates; u is C^{-1} (1,...,1) cleared of
        denominators, so u . alpha_i is the same positive constant for all i.
        """
        n = self.rank
        sol = _solve_exact(
            [[Fraction(c) for c in row] for row in self.cartan_matrix],
            [Fraction(1)] * n,
        )
        lcm = 1
        for x in sol:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        return tuple(int(x * lcm) for x in sol)

    def __repr__(self) -> str:
        return f"RootSystemSpec({self.cartan_type})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a x = b by Gaussian elimination over the rationals."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _build(ct: CartanType) -> RootSystemSpec:
    cartan = _cartan_matrix(ct)
    roots = _close_positive_roots(cartan)
    assert len(roots) == _positive_root_count(ct), str(ct)
    return RootSystemSpec(ct, cartan, roots)


def build_root_system(ct: CartanType | str) -> RootSystemSpec:
    """The root system of a Cartan type; accepts 'B3' style strings too."""
    if isinstance(ct, str):
        ct = parse_cartan_type(ct)
    return _build(ct)


def root_support(v: RootVector) -> frozenset[int]:
    """Nodes (1-based) whose simple root occurs in v with nonzero coefficient."""
    return frozenset(i + 1 for i, c in enumerate(v) if c != 0)


def validate_node_subset(spec: RootSystemSpec, nodes) -> tuple[int, ...]:
    """Sorted, deduplicated node tuple; rejects indices outside 1..rank."""
    out = sorted(set(nodes))
    bad = [i for i in out if not (isinstance(i, int) and 1 <= i <= spec.rank)]
    if bad:
        raise ValueError(
            f"node indices {bad} out of range 1..{spec.rank} for {spec.cartan_type}"
        )
    return tuple(out)


def phi_plus_of_subset(spec: RootSystemSpec, nodes) -> frozenset[RootVector]:
    """Positive roots supported on the given node subset.

    This is the positive system of the standard parabolic subsystem: for
    nodes I, the roots in Phi^+ lying in the span of {alpha_i : i in I}.
    """
    subset = frozenset(validate_node_subset(spec, nodes))
    return frozenset(
        v for v in spec.positive_roots if root_support(v) <= subset
    )


def simple_root_in_weight_basis(spec: RootSystemSpec, i: int) -> tuple[int, ...]:
    """alpha_i in fundamental-weight coordinates: row i of the Cartan matrix."""
    if not 1 <= i <= spec.rank:
        raise ValueError(f"node index {i} out of range 1..{spec.rank}")
    return spec.cartan_matrix[i - 1]

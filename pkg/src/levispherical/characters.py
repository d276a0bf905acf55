"""Demazure characters and Levi-module decompositions, in exact arithmetic.

Weights live in fundamental-weight coordinates: lambda = (lambda_1, ...,
lambda_n) means sum_i lambda_i omega_i, so lambda_i = <lambda, alpha_i^vee>.
In these coordinates alpha_i is row i of the Cartan matrix and the simple
reflection acts by s_i(lambda) = lambda - lambda_i * alpha_i.

The isobaric Demazure operator pi_i acts on a monomial e^lambda with
k = lambda_i by the string rule

    k >= 0 :  e^lambda + e^(lambda - alpha_i) + ... + e^(lambda - k alpha_i)
    k = -1 :  0
    k <= -2:  -(e^(lambda + alpha_i) + ... + e^(lambda + (-k-1) alpha_i))

which is the monomial expansion of (f - e^(-alpha_i) s_i f)/(1 - e^(-alpha_i)).
pi_i is idempotent, satisfies the braid relations, and its output is
s_i-symmetric.

For a reduced word w = s_{i1} s_{i2} ... s_{ik} the Demazure character of
the module with extreme weight w(lambda) is

    pi_{i1}( pi_{i2}( ... pi_{ik}( e^lambda ) ... ) ),

i.e. the operators are applied innermost-first from the right end of the
word.  The composite depends only on w, not on the chosen reduced word, and
is invariant under s_i for every left descent i of w.

Levi decompositions peel dominance-maximal weights: the character of the
irreducible L_I-module of highest weight mu is the Demazure character of
w_0(I) applied to e^mu, and a finite L_I-character is the sum of such
characters with multiplicities, recovered greedily from the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Optional

from .rootsys import RootSystemSpec, validate_node_subset
from .sphericality import LeviNotInDescents
from .weyl import WeylElement, left_descents, longest_parabolic, reduced_word

Weight = tuple[int, ...]


class NonDominantWeight(ValueError):
    """A weight failed the dominance requirement of the operation."""


class NotLeviCharacter(ValueError):
    """The input is not a character of an L_I-module, so peeling failed."""


class CharacterBudgetExceeded(RuntimeError):
    """A character grew past the configured term ceiling."""


def weight_sort_key(wt: Weight) -> tuple[int, Weight]:
    """Graded-lexicographic sort key (grade = coordinate sum)."""
    return (sum(wt), wt)


class WeightPoly:
    """A finite integer combination of weights, immutable once built.

    Terms with coefficient zero are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Weight, int] | None = None) -> None:
        self._terms = {wt: c for wt, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, wt: Weight) -> "WeightPoly":
        return cls({tuple(wt): 1})

    @classmethod
    def _wrap(cls, terms: dict[Weight, int]) -> "WeightPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    def coeff(self, wt: Weight) -> int:
        return self._terms.get(tuple(wt), 0)

    def items(self):
        return self._terms.items()

    def weights(self):
        return self._terms.keys()

    def as_dict(self) -> dict[Weight, int]:
        return dict(self._terms)

    def mass(self) -> int:
        """Sum of all coefficients (the dimension, for a module character)."""
        return sum(self._terms.values())

    def sorted_items(self) -> list[tuple[Weight, int]]:
        return sorted(self._terms.items(), key=lambda kv: weight_sort_key(kv[0]))

    def to_json_obj(self) -> list[dict]:
        return [
            {"weight": list(wt), "coeff": c} for wt, c in self.sorted_items()
        ]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightPoly):
            return self._terms == other._terms
        return NotImplemented

    def __repr__(self) -> str:
        inside = ", ".join(
            f"{c}*e{wt}" for wt, c in self.sorted_items()[:6]
        )
        more = "" if len(self._terms) <= 6 else f", ... ({len(self._terms)} terms)"
        return f"WeightPoly({inside}{more})"


class DecompositionEntry(NamedTuple):
    mu: Weight
    multiplicity: int


@dataclass(frozen=True)
class MultiplicityCheck:
    """Outcome of a multiplicity-freeness test, with a witness if it fails."""

    multiplicity_free: bool
    witness: Optional[Weight]
    multiplicity: Optional[int]

    def __bool__(self) -> bool:
        return self.multiplicity_free


class Witness(NamedTuple):
    """A highest weight whose Demazure module is not multiplicity-free."""

    lam: Weight
    mu: Weight
    multiplicity: int


def _check_weight(spec: RootSystemSpec, wt) -> Weight:
    wt = tuple(wt)
    if len(wt) != spec.rank or not all(isinstance(x, int) for x in wt):
        raise ValueError(
            f"weight {wt!r} is not an integer vector of rank {spec.rank}"
        )
    return wt


def reflect_weight(spec: RootSystemSpec, wt, i: int) -> Weight:
    """s_i(wt) = wt - wt_i * alpha_i, in fundamental-weight coordinates."""
    wt = _check_weight(spec, wt)
    if not 1 <= i <= spec.rank:
        raise ValueError(f"node index {i} out of range 1..{spec.rank}")
    k = wt[i - 1]
    if k == 0:
        return wt
    arow = spec.cartan_matrix[i - 1]
    return tuple(x - k * a for x, a in zip(wt, arow))


def is_dominant(wt: Weight) -> bool:
    return all(x >= 0 for x in wt)


def is_levi_dominant(wt: Weight, levi) -> bool:
    return all(wt[i - 1] >= 0 for i in levi)


def _apply_op(
    arow: tuple[int, ...],
    i0: int,
    terms: dict[Weight, int],
    max_terms: int | None = None,
) -> dict[Weight, int]:
    """One isobaric Demazure operator on a raw term dict."""
    out: dict[Weight, int] = {}
    get = out.get
    for wt, coeff in terms.items():
        k = wt[i0]
        if k >= 0:
            v = wt
            for _ in range(k + 1):
                out[v] = get(v, 0) + coeff
                v = tuple(a - b for a, b in zip(v, arow))
        elif k <= -2:
            v = tuple(a + b for a, b in zip(wt, arow))
            for _ in range(-k - 1):
                out[v] = get(v, 0) - coeff
                v = tuple(a + b for a, b in zip(v, arow))
        if max_terms is not None and len(out) > max_terms:
            raise CharacterBudgetExceeded(
                f"character exceeded the {max_terms}-term ceiling"
            )
    return {wt: c for wt, c in out.items() if c}


def demazure_op(spec: RootSystemSpec, f: WeightPoly, i: int) -> WeightPoly:
    """Apply pi_i to a weight polynomial."""
    if not 1 <= i <= spec.rank:
        raise ValueError(f"node index {i} out of range 1..{spec.rank}")
    return WeightPoly._wrap(
        _apply_op(spec.cartan_matrix[i - 1], i - 1, dict(f.items()))
    )


def _char_along_word(
    spec: RootSystemSpec,
    lam: Weight,
    word: tuple[int, ...],
    max_terms: int | None = None,
) -> dict[Weight, int]:
    """pi_{i1}(...(pi_{ik}(e^lam))...) for word = (i1, ..., ik)."""
    terms = {lam: 1}
    for i in reversed(word):
        terms = _apply_op(spec.cartan_matrix[i - 1], i - 1, terms, max_terms)
    return terms

# Demazure characters keyed by (spec, lam, matrix): the same w recurs with
# many Levi subsets during censuses, and the character does not depend on I.
_CHAR_CACHE: dict = {}
_CHAR_CACHE_LIMIT = 4096
_LEVI_CHAR_CACHE: dict = {}
_LEVI_CHAR_CACHE_LIMIT = 200_000


def clear_caches() -> None:
    _CHAR_CACHE.clear()
    _LEVI_CHAR_CACHE.clear()


def _char_terms(
    spec: RootSystemSpec,
    lam: Weight,
    w: WeylElement,
    max_terms: int | None = None,
) -> dict[Weight, int]:
    key = (spec, lam, w.rows)
    hit = _CHAR_CACHE.get(key)
    if hit is not None:
        return hit
    terms = _char_along_word(spec, lam, reduced_word(spec, w), max_terms)
    if max_terms is None:
        if len(_CHAR_CACHE) >= _CHAR_CACHE_LIMIT:
            _CHAR_CACHE.clear()
        _CHAR_CACHE[key] = terms
    return terms


def demazure_char(
    spec: RootSystemSpec,
    lam,
    w: WeylElement,
    *,
    max_terms: int | None = None,
) -> WeightPoly:
    """Character of the Demazure module with extreme weight w(lam).

    lam must be dominant.  The coefficient of e^lam in the result is 1, the
    result is independent of the reduced word used for w, and it is
    s_i-symmetric for every left descent i of w.
    """
    lam = _check_weight(spec, lam)
    if not is_dominant(lam):
        raise NonDominantWeight(f"weight {lam} is not dominant")
    return WeightPoly._wrap(dict(_char_terms(spec, lam, w, max_terms)))


def levi_irreducible_char(spec: RootSystemSpec, mu, levi) -> WeightPoly:
    """Character of the irreducible L_I-module with highest weight mu.

    mu must be L_I-dominant (mu_i >= 0 for i in I); coordinates off I are
    unconstrained and ride along as a torus character.
    """
    mu = _check_weight(spec, mu)
    subset = validate_node_subset(spec, levi)
    if not is_levi_dominant(mu, subset):
        raise NonDominantWeight(
            f"weight {mu} is not dominant for levi nodes {list(subset)}"
        )
    key = (spec, mu, subset)
    hit = _LEVI_CHAR_CACHE.get(key)
    if hit is None:
        word = reduced_word(spec, longest_parabolic(spec, subset))
        hit = _char_along_word(spec, mu, word)
        assert hit.get(mu) == 1, (mu, subset)
        if len(_LEVI_CHAR_CACHE) >= _LEVI_CHAR_CACHE_LIMIT:
            _LEVI_CHAR_CACHE.clear()
        _LEVI_CHAR_CACHE[key] = hit
    return WeightPoly._wrap(dict(hit))


def _decompose_terms(
    spec: RootSystemSpec, terms: dict[Weight, int], subset: tuple[int, ...]
) -> tuple[DecompositionEntry, ...]:
    """Greedy peeling of a raw term dict; see decompose_levi."""
    u = spec.height_functional
    remaining = dict(terms)
    entries: list[DecompositionEntry] = []
    # A genuine character yields at most one entry per unit of mass.
    budget = sum(abs(c) for c in remaining.values())

    def selection_key(wt: Weight):
        # Height-maximal weights are dominance-maximal for every Levi subset;
        # ties are broken graded-lexicographically, largest first.
        return (sum(a * b for a, b in zip(u, wt)), sum(wt), wt)

    while remaining:
        if len(entries) >= budget:
            raise NotLeviCharacter(
                "peeling does not terminate; the input is not an L_I-character"
            )
        nu = max(remaining, key=selection_key)
        m = remaining[nu]
        if m < 0:
            raise NotLeviCharacter(
                f"maximal weight {nu} has negative coefficient {m}"
            )
        if not is_levi_dominant(nu, subset):
            raise NotLeviCharacter(
                f"maximal weight {nu} is not dominant for levi nodes {list(subset)}"
            )
        irr = levi_irreducible_char(spec, nu, subset)
        for wt, c in irr.items():
            nv = remaining.get(wt, 0) - m * c
            if nv:
                if nv < 0:
                    raise NotLeviCharacter(
                        f"coefficient of {wt} went negative while peeling {nu}"
                    )
                remaining[wt] = nv
            else:
                remaining.pop(wt, None)
        entries.append(DecompositionEntry(nu, m))
    return tuple(entries)


def decompose_levi(
    spec: RootSystemSpec, f: WeightPoly, levi
) -> tuple[DecompositionEntry, ...]:
    """Write f as a sum of irreducible L_I-characters with multiplicities.

    Entries are produced in peeling order (dominance-maximal weight first)
    and reconstruct f exactly: f = sum of mult * levi_irreducible_char(mu).
    Inputs that are not genuine L_I-characters are rejected.
    """
    subset = validate_node_subset(spec, levi)
    return _decompose_terms(spec, dict(f.items()), subset)


def is_multiplicity_free(
    spec: RootSystemSpec, lam, w: WeylElement, levi
) -> MultiplicityCheck:
    """Is the Demazure module for (lam, w) multiplicity-free over L_I?

    Requires lam dominant and I inside the left descent set of w (so that
    the Demazure character is a genuine L_I-character).
    """
    lam = _check_weight(spec, lam)
    if not is_dominant(lam):
        raise NonDominantWeight(f"weight {lam} is not dominant")
    subset = validate_node_subset(spec, levi)
    descents = left_descents(spec, w)
    offending = [i for i in subset if i not in descents]
    if offending:
        raise LeviNotInDescents(offending, descents)
    terms = _char_terms(spec, lam, w)
    for mu, m in _decompose_terms(spec, terms, subset):
        if m >= 2:
            return MultiplicityCheck(False, mu, m)
    return MultiplicityCheck(True, None, None)


def _dominant_weights_graded(rank: int, cap: int) -> Iterator[Weight]:
    """Dominant weights with coordinates <= cap, in graded-lex order."""

    def parts(total: int, n: int) -> Iterator[tuple[int, ...]]:
        if n == 1:
            if total <= cap:
                yield (total,)
            return
        for first in range(min(total, cap) + 1):
            for rest in parts(total - first, n - 1):
                yield (first,) + rest

    for total in range(rank * cap + 1):
        yield from parts(total, rank)


DEFAULT_WITNESS_CAP = 2
DEFAULT_LAMBDA_BUDGET = 10_000
DEFAULT_TERM_CEILING = 5_000_000


def witness_search(
    spec: RootSystemSpec,
    w: WeylElement,
    levi,
    coeff_cap: int = DEFAULT_WITNESS_CAP,
    *,
    lambda_budget: int = DEFAULT_LAMBDA_BUDGET,
    term_ceiling: int = DEFAULT_TERM_CEILING,
) -> Optional[Witness]:
    """Search for a dominant lam whose Demazure module has a multiplicity >= 2.

    Scans dominant weights with coordinates <= coeff_cap in graded-lex order
    and returns the first witness found.  Exhausting the budget returns None,
    which is inconclusive: it is NOT a certificate of multiplicity-freeness.
    """
    subset = validate_node_subset(spec, levi)
    descents = left_descents(spec, w)
    offending = [i for i in subset if i not in descents]
    if offending:
        raise LeviNotInDescents(offending, descents)
    word = reduced_word(spec, w)
    tried = 0
    for lam in _dominant_weights_graded(spec.rank, coeff_cap):
        if tried >= lambda_budget:
            break
        tried += 1
        try:
            terms = _char_along_word(spec, lam, word, term_ceiling)
        except CharacterBudgetExceeded:
            continue
        for mu, m in _decompose_terms(spec, terms, subset):
            if m >= 2:
                return Witness(lam, mu, m)
    return None


def decomposition_to_json(entries) -> list[dict]:
    return [
        {"mu": list(mu), "mult": m}
        for mu, m in sorted(entries, key=lambda e: weight_sort_key(e[0]))
    ]

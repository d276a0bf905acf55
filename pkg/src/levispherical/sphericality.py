"""Levi-sphericality of Schubert varieties, by the Coxeter-element test.

For w in the Weyl group and I a subset of the left descent set of w, the
Schubert variety X_w is spherical for the standard Levi subgroup L_I iff

    d = w_0(I) w   is a standard Coxeter element,

i.e. iff d admits a reduced word with pairwise distinct letters
(equivalently length(d) = |support(d)|).  The factorization is always
length-additive when I lies inside the descent set:

    length(w) = length(w_0(I)) + length(d),

and classify() checks this identity as an internal invariant.

The toric case is I = {}: X_w has a dense torus orbit iff w itself is a
standard Coxeter element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootsys import CartanType, RootSystemSpec, validate_node_subset
from .weyl import (
    WeylElement,
    is_standard_coxeter,
    left_descents,
    length,
    longest_parabolic,
    multiply,
    reduced_word,
)


class LeviNotInDescents(ValueError):
    """The requested Levi subset is not contained in the left descent set."""

    def __init__(self, offending, descents) -> None:
        self.offending = tuple(sorted(offending))
        self.descents = tuple(sorted(descents))
        super().__init__(
            f"levi nodes {list(self.offending)} are not left descents of w "
            f"(left descents: {list(self.descents)})"
        )


class LengthAdditivityError(RuntimeError):
    """Internal consistency failure: length(w) != length(w_0(I)) + length(d)."""


@dataclass(frozen=True)
class ClassificationResult:
    """Full audit trail of one sphericality decision."""

    cartan_type: CartanType
    w_word: tuple[int, ...]
    levi: tuple[int, ...]
    d_word: tuple[int, ...]
    support_d: tuple[int, ...]
    len_w: int
    len_w0I: int
    len_d: int
    spherical: bool

    def to_json_dict(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "w_word": list(self.w_word),
            "levi": list(self.levi),
            "d_word": list(self.d_word),
            "support_d": list(self.support_d),
            "len_w": self.len_w,
            "len_w0I": self.len_w0I,
            "len_d": self.len_d,
            "spherical": self.spherical,
        }


def classify(spec: RootSystemSpec, w: WeylElement, levi) -> ClassificationResult:
    """Decide whether X_w is L_I-spherical, with the full audit trail.

    Requires I to be a subset of the left descent set of w; anything else is
    an error, not a verdict.
    """
    subset = validate_node_subset(spec, levi)
    descents = left_descents(spec, w)
    offending = [i for i in subset if i not in descents]
    if offending:
        raise LeviNotInDescents(offending, descents)

    w0i = longest_parabolic(spec, subset)
    # w_0(I) is an involution, so d = w_0(I)^{-1} w = w_0(I) w.
    d = multiply(spec, w0i, w)

    w_word = reduced_word(spec, w)
    d_word = reduced_word(spec, d)
    len_w = len(w_word)
    len_w0i = length(spec, w0i)
    len_d = len(d_word)
    if len_w != len_w0i + len_d:
        raise LengthAdditivityError(
            f"length({w_word}) = {len_w} but length(w_0({list(subset)})) + "
            f"length(d) = {len_w0i} + {len_d}"
        )

    support_d = tuple(sorted(set(d_word)))
    return ClassificationResult(
        cartan_type=spec.cartan_type,
        w_word=w_word,
        levi=subset,
        d_word=d_word,
        support_d=support_d,
        len_w=len_w,
        len_w0I=len_w0i,
        len_d=len_d,
        spherical=len_d == len(support_d),
    )


def classify_toric(spec: RootSystemSpec, w: WeylElement) -> bool:
    """True iff X_w contains a dense torus orbit (the I = {} case)."""
    return is_standard_coxeter(spec, w)

"""Rank spectra of the two-dimensional codes attached to q-polynomials.

A coefficient pair (a, b) names the word x -> a*x + b*f(x); its rank is
the F_q-rank of that map.  The spectrum counts nonzero words by rank,
grouping scalar multiples: each projective pair contributes q^5 - 1 words.

Rank and point weight determine each other: the kernel of a*x + b*f(x)
is the fiber of the graph over one projective point, so rank = 5 - weight
of that point.  This module computes ranks directly from matrices; the
weight route lives in linpoly, and tests pin the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linpoly import QPolynomial


def word_rank(tower, a, b, f):
    """F_q-rank of the map x -> a*x + b*f(x); (a, b) = (0, 0) is refused."""
    if a == 0 and b == 0:
        raise ValueError("the zero pair names no word")
    if not isinstance(f, QPolynomial):
        raise TypeError("f must be a QPolynomial")
    rows = []
    for bas in tower.fq_basis:
        val = tower.add(tower.mul(a, bas), tower.mul(b, f.evaluate(bas)))
        rows.append(tower.fq_coordinates(val))
    return tower.rank(rows)


@dataclass(frozen=True)
class RankSpectrum:
    q: int
    coeffs: tuple
    counts: tuple  # sorted ((rank, word_count), ...)
    zero_classes: int  # projective pairs whose word is the zero map

    @property
    def counts_dict(self):
        return dict(self.counts)

    @property
    def total(self):
        return sum(c for _, c in self.counts)

    def to_json(self):
        return {
            "q": self.q,
            "f": list(self.coeffs),
            "spectrum": {str(r): c for r, c in self.counts},
        }


def rank_spectrum(tower, f):
    """Word counts by rank over all nonzero coefficient pairs.

    Projective representatives are (g, 1) for every g, then (1, 0); each
    carries q^5 - 1 scalar multiples.  Pairs giving the zero word (possible
    only when f is a scalar multiple of the identity) are counted apart.
    """
    if not isinstance(f, QPolynomial):
        raise TypeError("f must be a QPolynomial")
    mult = tower.order - 1
    counts = {}
    zero_classes = 0
    reps = [(g, 1) for g in range(tower.order)]
    reps.append((1, 0))
    for a, b in reps:
        r = word_rank(tower, a, b, f)
        if r == 0:
            zero_classes += 1
        else:
            counts[r] = counts.get(r, 0) + mult
    return RankSpectrum(
        tower.q, tuple(f.coeffs), tuple(sorted(counts.items())), zero_classes
    )

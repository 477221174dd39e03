"""Formal vector-bundle calculus on top of the Chow ring.

A bundle is identified with its rank and total Chern class; that is all
the downstream class formulas consume.  Twisting by a line bundle uses the
splitting-principle binomial rule, so ranks are unrestricted but the twist
must be a line bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .chow import AmbientMismatchError, AmbientSpace, CycleClass, MultiProj, ProjSpace


@dataclass(frozen=True)
class BundleClass:
    """A formal bundle: rank plus total Chern class with degree-0 part 1."""

    ambient: AmbientSpace
    rank: int
    chern: CycleClass

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"negative rank: {self.rank}")
        if self.chern.ambient != self.ambient:
            raise AmbientMismatchError("Chern class lives on a different ambient")
        if self.chern.component(0) != self.ambient.one():
            raise ValueError("total Chern class must start with 1")
        for k in range(self.rank + 1, self.ambient.dimension + 1):
            if not self.chern.component(k).is_zero():
                raise ValueError(
                    f"Chern class has a nonzero part in codimension {k} > rank {self.rank}")

    def c(self, k: int) -> CycleClass:
        """The k-th Chern class; zero beyond the ambient dimension."""
        if k > self.ambient.dimension:
            return self.ambient.zero()
        return self.chern.component(k)

    def c1(self) -> CycleClass:
        return self.chern.component(1)


def line_bundle(ambient: AmbientSpace, multidegree: int | tuple[int, ...] | list[int]) -> BundleClass:
    """O(d_1, ..., d_k): rank 1 with c = 1 + sum d_j h_j."""
    if not isinstance(ambient, (ProjSpace, MultiProj)):
        raise ValueError(f"line_bundle expects a projective-space ambient, got {ambient!r}")
    degs = (multidegree,) if isinstance(multidegree, int) else tuple(multidegree)
    if len(degs) != len(ambient.generators):
        raise ValueError(
            f"multidegree {degs} has {len(degs)} entries, ambient has "
            f"{len(ambient.generators)} generators")
    c1 = ambient.zero()
    for i, d in enumerate(degs):
        c1 = c1 + ambient.gen(i).scale(d)
    return BundleClass(ambient, 1, ambient.one() + c1)


def trivial_bundle(ambient: AmbientSpace, rank: int = 1) -> BundleClass:
    return BundleClass(ambient, rank, ambient.one())


def direct_sum(e: BundleClass, f: BundleClass) -> BundleClass:
    """Whitney sum: ranks add, total Chern classes multiply."""
    if e.ambient != f.ambient:
        raise AmbientMismatchError("direct_sum operands live on different ambients")
    return BundleClass(e.ambient, e.rank + f.rank, e.chern * f.chern)


def bundle_power(e: BundleClass, copies: int) -> BundleClass:
    """E^(+ copies); copies = 0 gives the rank-0 bundle."""
    if copies < 0:
        raise ValueError("negative number of copies")
    return BundleClass(e.ambient, e.rank * copies, e.chern ** copies)


def dual(e: BundleClass) -> BundleClass:
    """c_k(E^v) = (-1)^k c_k(E)."""
    out = e.ambient.zero()
    for k, part in e.chern.components():
        out = out + (part if k % 2 == 0 else -part)
    return BundleClass(e.ambient, e.rank, out)


def tensor_line(e: BundleClass, l: BundleClass) -> BundleClass:
    """Twist by a line bundle: c_k(E (x) L) = sum_i C(rank-i, k-i) c_i(E) c1(L)^(k-i)."""
    if l.rank != 1:
        raise ValueError(f"twist must be a line bundle, got rank {l.rank}")
    if e.ambient != l.ambient:
        raise AmbientMismatchError("tensor_line operands live on different ambients")
    ell = l.c1()
    out = e.ambient.zero()
    for k in range(e.rank + 1):
        for i in range(k + 1):
            term = e.c(i) * (ell ** (k - i))
            out = out + term.scale(comb(e.rank - i, k - i))
    return BundleClass(e.ambient, e.rank, out)


def tangent_bundle(ambient: AmbientSpace) -> BundleClass:
    """Tangent bundle of P^n or a product of projective spaces.

    The tangent class of a projective-bundle total space is assembled in
    the projbundle module from its two defining sequences.
    """
    if not isinstance(ambient, (ProjSpace, MultiProj)):
        raise ValueError(
            f"tangent_bundle supports ProjSpace and MultiProj only, got {ambient!r}")
    return BundleClass(ambient, ambient.dimension, ambient.tangent_chern())


def top_chern(e: BundleClass) -> CycleClass:
    return e.c(e.rank)

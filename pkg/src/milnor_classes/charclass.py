"""Virtual, CSM, and Milnor classes of stratified hypersurfaces.

All classes are represented by their pushforward in the ambient Chow ring.
For a hypersurface X of a line bundle L on M (dim M = n):

* virtual class  c(TM) c(L)^(-1) c1(L), the Chern class a smoothing would
  have;
* Milnor class via the weighted-strata sum
      M(X) = sum_S gamma_S c(L)^(-1) c^SM(closure S),
  supported on the singular strata;
* CSM class recovered from the definition
      M(X) = (-1)^(dim X) (c^Vir(X) - c^SM(X)).

The mu-class route (cotangent twist against the Segre class of the
singular locus) provides an independent second computation of M(X); its
grading convention is ambient codimension and its global sign is (-1)^n,
both frozen by the hypersurface calibration fixtures in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chow import AmbientSpace, CycleClass, ProjSpace
from .bundles import BundleClass, dual, tangent_bundle, tensor_line, top_chern
from .strata import StratifiedHypersurface, gamma_weights


@dataclass(frozen=True)
class ClassBundle3:
    """The three classes of one subvariety, plus its codimension."""

    virt: CycleClass
    csm: CycleClass
    milnor: CycleClass
    codim: int

    def definition_identity_holds(self) -> bool:
        """milnor = (-1)^(dim M - codim) (virt - csm), exactly."""
        n = self.virt.ambient.dimension
        sign = -1 if (n - self.codim) % 2 else 1
        return self.milnor == (self.virt - self.csm).scale(sign)


def virtual_class(ambient: AmbientSpace, e: BundleClass, x_class: CycleClass) -> CycleClass:
    """c(TM) c(E)^(-1) cap [X] for X the zero set of a regular section of E."""
    if x_class != top_chern(e):
        raise ValueError(
            "x_class does not equal the top Chern class of the bundle; "
            "not the zero set of a regular section")
    return tangent_bundle(ambient).chern * e.chern.inverse() * x_class


def milnor_pp(hyp: StratifiedHypersurface) -> CycleClass:
    """Weighted-strata Milnor class: sum_S gamma_S c(L)^(-1) c^SM(closure S)."""
    gammas = gamma_weights(hyp)
    l_inv = hyp.line_bundle.chern.inverse()
    total = hyp.ambient.zero()
    for s in hyp.singular_strata:
        g = gammas[s.name]
        if g == 0:
            continue
        total = total + (l_inv * s.csm_closure).scale(g)
    return total


def csm_from_milnor(virt: CycleClass, milnor: CycleClass,
                    dim_m: int, codim: int) -> CycleClass:
    """Rearranged definition: csm = virt - (-1)^(dim_m - codim) milnor."""
    sign = -1 if (dim_m - codim) % 2 else 1
    return virt - milnor.scale(sign)


def chi_of_closure(c: CycleClass) -> int:
    """Degree-zero piece of a CSM class is the Euler characteristic."""
    return c.degree()


# -- Aluffi operations -------------------------------------------------------


def aluffi_dual(a: CycleClass) -> CycleClass:
    """Flip the sign of the odd-codimension components (ambient grading)."""
    out = a.ambient.zero()
    for k, part in a.components():
        out = out + (part if k % 2 == 0 else -part)
    return out


def aluffi_tensor(a: CycleClass, l: BundleClass) -> CycleClass:
    """sum_j a^(j) c(L)^(-j), the j-th piece twisted j times (ambient grading)."""
    if l.rank != 1:
        raise ValueError("aluffi_tensor twists by a line bundle")
    if l.ambient != a.ambient:
        raise ValueError("class and line bundle live on different ambients")
    inv = l.chern.inverse()
    out = a.ambient.zero()
    power = a.ambient.one()
    for k, part in a.components():
        if k > 0:
            power = power * inv
        out = out + part * power
    return out


def segre_builtin(ambient: AmbientSpace, center: str, arg: int) -> CycleClass:
    """Closed-form Segre classes for the builtin singular-locus shapes.

    points(k): k reduced points, s = k [pt].
    linear(m): a linear P^m in P^n, s = (1+h)^-(n-m) h^(n-m).
    Anything else needs scheme-theoretic Segre machinery that this
    calculator deliberately does not contain.
    """
    if center == "points":
        if arg < 0:
            raise ValueError("points(k) needs k >= 0")
        return ambient.point_class().scale(arg)
    if center == "linear":
        if not isinstance(ambient, ProjSpace):
            raise ValueError("linear Segre centers are supported on ProjSpace only")
        n = ambient.dimension
        if not 0 <= arg < n:
            raise ValueError(f"linear({arg}) out of range in P^{n}")
        h = ambient.gen(0)
        codim = n - arg
        return ((ambient.one() + h) ** codim).inverse() * h ** codim
    raise ValueError(
        f"unsupported Segre center {center!r}: only the builtin closed forms "
        "points(k) and linear(m) are available")


def mu_class(hyp: StratifiedHypersurface, segre: CycleClass) -> CycleClass:
    """Aluffi mu-class: c(T*M (x) L) cap s(Sing X, M)."""
    cotangent = dual(tangent_bundle(hyp.ambient))
    twisted = tensor_line(cotangent, hyp.line_bundle)
    return twisted.chern * segre


def aluffi_milnor(hyp: StratifiedHypersurface, mu: CycleClass) -> CycleClass:
    """Milnor class from the mu-class: (-1)^n c(L)^(n-1) (mu^v (x) L).

    Ambient-codimension grading throughout; the global sign (-1)^n is the
    one the calibration fixtures force and is frozen (n = dim M).
    """
    n = hyp.ambient.dimension
    kernel = aluffi_tensor(aluffi_dual(mu), hyp.line_bundle)
    result = hyp.line_bundle.chern ** (n - 1) * kernel
    return result.scale(-1 if n % 2 else 1)


# -- assembly ----------------------------------------------------------------


def hypersurface_classes(hyp: StratifiedHypersurface,
                         csm_override: CycleClass | None = None) -> ClassBundle3:
    """Compute the class triple of a stratified hypersurface.

    The Milnor class comes from the weighted-strata sum and the CSM class
    from the definition, unless an explicit CSM oracle is supplied (used by
    fixtures to cross-check, and by negative controls to detect corrupted
    strata data).
    """
    x_class = hyp.hypersurface_class
    virt = virtual_class(hyp.ambient, hyp.line_bundle, x_class)
    milnor = milnor_pp(hyp)
    n = hyp.ambient.dimension
    if csm_override is not None:
        csm = csm_override
    else:
        csm = csm_from_milnor(virt, milnor, n, 1)
    return ClassBundle3(virt=virt, csm=csm, milnor=milnor, codim=1)

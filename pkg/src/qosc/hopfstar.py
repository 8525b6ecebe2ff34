"""Hopf structure on the deformed oscillator and its star structures.

The coproduct is
``D(a) = a (x) K + K^-1 (x) a`` (same for the raising generator) and
``D(N) = N (x) 1 + 1 (x) N + gamma 1 (x) 1``, where ``K = q**((N+gamma)/2)``
is group-like.  The branch value of ``gamma`` satisfies
``q**(2*gamma-1) = -1``, which is exactly what makes ``D`` an algebra map.

Two star flavors are checked: the standard one, where the involution
commutes with the coproduct, and the nonstandard one, where it lands on
the opposite coproduct.  On the unit circle the canonical involution
(exchanging the ladder pair, fixing N) is nonstandard; on the real line
the workable involutions pick up factors ``-+i`` and shift N by an
imaginary constant, and are standard.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algcheck import CheckReport, compare, report, residual_of
from .errors import DimensionTooLarge, ModeMismatch, NoSolution
from .qcore import Mode, QParams, qnum
from .repbuild import Rep

DEFAULT_TOL = 1e-10

#: largest allowed dimension (k+1)**3 for the coassociativity check
COASSOC_CAP = 1000


class Flavor(str, Enum):
    STANDARD = "standard"
    NONSTANDARD = "nonstandard"


class InvolutionKind(str, Enum):
    CANONICAL = "canonical"
    IMAGINARY_PLUS = "imaginary_plus"
    IMAGINARY_MINUS = "imaginary_minus"


@dataclass
class TensorSum:
    """Sum of Kronecker products; left factor acts on the first slot."""

    terms: tuple[tuple[np.ndarray, np.ndarray], ...]
    _realized: np.ndarray | None = dataclasses.field(default=None, repr=False)

    @property
    def realized(self) -> np.ndarray:
        if self._realized is None:
            acc = sum(np.kron(left, right) for left, right in self.terms)
            self._realized = acc
        return self._realized

    def swapped(self) -> "TensorSum":
        return TensorSum(tuple((right, left) for left, right in self.terms))

    def scaled(self, c: complex) -> "TensorSum":
        return TensorSum(tuple((c * left, right) for left, right in self.terms))


def swap_matrix(d: int) -> np.ndarray:
    """Permutation P with ``P (A x B) P = B x A`` on a d*d tensor square."""
    p = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            p[i * d + j, j * d + i] = 1.0
    return p


def _group_like(rep: Rep, sign: float) -> np.ndarray:
    p = rep.params
    return np.diag([p.qpow(sign * 0.5 * (v + p.gamma)) for v in np.diag(rep.Nmat)])


def _symbol_tables(rep: Rep):
    p = rep.params
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    realize = {
        "a": rep.A,
        "abar": rep.Abar,
        "N": rep.Nmat,
        "qp": _group_like(rep, +1.0),
        "qm": _group_like(rep, -1.0),
        "one": eye,
        "gone": p.gamma * eye,
    }
    cop = {
        "a": (("a", "qp"), ("qm", "a")),
        "abar": (("abar", "qp"), ("qm", "abar")),
        "N": (("N", "one"), ("one", "N"), ("gone", "one")),
        "qp": (("qp", "qp"),),
        "qm": (("qm", "qm"),),
        "one": (("one", "one"),),
        "gone": (("gone", "one"),),
    }
    counit = {
        "a": 0.0, "abar": 0.0, "N": -p.gamma,
        "qp": 1.0, "qm": 1.0, "one": 1.0, "gone": p.gamma,
    }
    antipode = {
        "a": ((-p.qpow(-0.5), "a"),),
        "abar": ((-p.qpow(0.5), "abar"),),
        "N": ((-1.0, "N"), (-2.0 * p.gamma, "one")),
        "qp": ((1.0, "qm"),),
        "qm": ((1.0, "qp"),),
        "one": ((1.0, "one"),),
        "gone": ((1.0, "gone"),),
    }
    return realize, cop, counit, antipode


def coproduct(rep: Rep, gen: str) -> TensorSum:
    """Coproduct of a generator, realized on the tensor square of the rep."""
    realize, cop, _, _ = _symbol_tables(rep)
    if gen not in ("a", "abar", "N"):
        raise ValueError(f"unknown generator {gen!r}")
    return TensorSum(tuple((realize[le], realize[ri]) for le, ri in cop[gen]))


def check_hopf_axioms(
    rep: Rep, tol: float = DEFAULT_TOL, coassoc_cap: int = COASSOC_CAP
) -> list[CheckReport]:
    """Algebra-map property of the coproduct plus the three Hopf axioms."""
    realize, cop, counit, antipode = _symbol_tables(rep)
    p = rep.params
    eye = realize["one"]
    out: list[CheckReport] = []

    def realized(gen: str) -> np.ndarray:
        return TensorSum(tuple((realize[le], realize[ri]) for le, ri in cop[gen])).realized

    da, dab, dn = realized("a"), realized("abar"), realized("N")
    nvals = np.diag(dn)
    step = np.diag([qnum(v + 1.0, p.log_q) - qnum(v, p.log_q) for v in nvals])
    out.append(report("homomorphism_commutator",
                      residual_of((da @ dab - dab @ da) - step, da, dab), tol))
    out.append(report("homomorphism_raise",
                      residual_of((dn @ dab - dab @ dn) - dab, dn, dab), tol))
    out.append(report("homomorphism_lower",
                      residual_of((dn @ da - da @ dn) + da, dn, da), tol))

    if rep.dim**3 > coassoc_cap:
        raise DimensionTooLarge(
            f"coassociativity needs dimension {rep.dim ** 3} > cap {coassoc_cap}"
        )
    for gen in ("a", "abar", "N"):
        left = sum(
            np.kron(np.kron(realize[l1], realize[l2]), realize[ri])
            for le, ri in cop[gen]
            for l1, l2 in cop[le]
        )
        right = sum(
            np.kron(realize[le], np.kron(realize[r1], realize[r2]))
            for le, ri in cop[gen]
            for r1, r2 in cop[ri]
        )
        out.append(compare(f"coassoc_{gen}", left, right, tol))

    for gen in ("a", "abar", "N"):
        lhs_l = sum(counit[le] * realize[ri] for le, ri in cop[gen])
        lhs_r = sum(realize[le] * counit[ri] for le, ri in cop[gen])
        out.append(compare(f"counit_left_{gen}", lhs_l, realize[gen], tol))
        out.append(compare(f"counit_right_{gen}", lhs_r, realize[gen], tol))

    def s_image(gen: str) -> np.ndarray:
        return sum(c * realize[g] for c, g in antipode[gen])

    for gen in ("a", "abar", "N"):
        target = counit[gen] * eye
        lhs_l = sum(s_image(le) @ realize[ri] for le, ri in cop[gen])
        lhs_r = sum(realize[le] @ s_image(ri) for le, ri in cop[gen])
        out.append(compare(f"antipode_left_{gen}", lhs_l, target, tol))
        out.append(compare(f"antipode_right_{gen}", lhs_r, target, tol))
    return out


@dataclass(frozen=True)
class InvolutionSpec:
    """Conjugate-linear anti-automorphism data.

    Images: ``a -> alpha * abar``, ``abar -> beta * a``, ``N -> N + eta``.
    Involutivity forces ``alpha * conj(beta) = 1`` and ``eta`` purely
    imaginary.
    """

    alpha: complex
    beta: complex
    eta: complex
    flavor: Flavor
    label: str

    def __post_init__(self):
        if abs(self.alpha * self.beta.conjugate() - 1.0) > 1e-9:
            raise ValueError(
                f"not involutive: alpha*conj(beta) = {self.alpha * self.beta.conjugate()}"
            )
        if abs(self.eta.real) > 1e-9:
            raise ValueError(f"eta must be purely imaginary, got {self.eta}")


def involution(kind: InvolutionKind | str, params: QParams) -> InvolutionSpec:
    """Named involution for the given parameters.

    The canonical exchange works in either mode (its coproduct behavior
    differs); the imaginary pair exists on the real line only.
    """
    kind = InvolutionKind(kind)
    if kind is InvolutionKind.CANONICAL:
        return InvolutionSpec(1.0, 1.0, 0.0, Flavor.NONSTANDARD, kind.value)
    if params.mode is not Mode.REAL_LINE:
        raise ModeMismatch(f"{kind.value} involution requires the real-line mode")
    eta = complex(0.0, -(2 * params.l + 1) * np.pi / params.epsilon)
    sign = 1.0 if kind is InvolutionKind.IMAGINARY_PLUS else -1.0
    return InvolutionSpec(sign * 1j, sign * 1j, eta, Flavor.STANDARD, kind.value)


def with_flavor(inv: InvolutionSpec, flavor: Flavor | str) -> InvolutionSpec:
    return dataclasses.replace(inv, flavor=Flavor(flavor))


# affine single-generator elements (coeff, gen, const) for the antipode arms
_S_TABLE = {
    "a": lambda p: (-p.qpow(-0.5), "a", 0.0),
    "abar": lambda p: (-p.qpow(0.5), "abar", 0.0),
    "N": lambda p: (-1.0, "N", -2.0 * p.gamma),
}


def _star_affine(elem, inv: InvolutionSpec):
    c, gen, d = elem
    table = {"a": (inv.alpha, "abar", 0.0), "abar": (inv.beta, "a", 0.0),
             "N": (1.0, "N", inv.eta)}
    coef, target, const = table[gen]
    cc = np.conjugate(c)
    return (cc * coef, target, cc * const + np.conjugate(d))


def _s_affine(elem, params: QParams):
    c, gen, d = elem
    coef, target, const = _S_TABLE[gen](params)
    return (c * coef, target, c * const + d)


def check_star_structure(
    rep: Rep,
    inv: InvolutionSpec,
    tol: float = DEFAULT_TOL,
    metric: np.ndarray | None = None,
) -> list[CheckReport]:
    """All compatibility arms of one involution on one representation.

    ``metric`` twists the matrix adjoint to ``G^-1 M^H G``; the default is
    the plain conjugate transpose.  Arms: conjugated defining relations,
    matrix realization of the star, coproduct compatibility in the
    involution's flavor, counit reality, and the flavor's antipode axiom.
    """
    p = rep.params
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    minv = None if metric is None else np.linalg.inv(metric)

    def adjoint(m: np.ndarray) -> np.ndarray:
        h = m.conj().T
        return h if metric is None else minv @ h @ metric

    img = {
        "a": inv.alpha * rep.Abar,
        "abar": inv.beta * rep.A,
        "N": rep.Nmat + inv.eta * eye,
    }
    out: list[CheckReport] = []

    # conjugated defining relations, with q replaced by conj(q)
    lgc = np.conjugate(p.log_q)
    step_bar = np.diag(
        [qnum(v + inv.eta + 1.0, lgc) - qnum(v + inv.eta, lgc) for v in np.diag(rep.Nmat)]
    )
    lhs = img["abar"] @ img["a"] - img["a"] @ img["abar"]
    out.append(compare("algebra_compat_commutator", lhs, step_bar, tol))
    out.append(compare("algebra_compat_raise",
                       img["abar"] @ img["N"] - img["N"] @ img["abar"], img["abar"], tol))
    out.append(compare("algebra_compat_lower",
                       img["a"] @ img["N"] - img["N"] @ img["a"], -img["a"], tol))

    base = {"a": rep.A, "abar": rep.Abar, "N": rep.Nmat}
    for gen in ("a", "abar", "N"):
        out.append(compare(f"star_matrix_{gen}", adjoint(base[gen]), img[gen], tol))

    cop_img = {
        "a": coproduct(rep, "abar").scaled(inv.alpha),
        "abar": coproduct(rep, "a").scaled(inv.beta),
        "N": TensorSum(coproduct(rep, "N").terms + ((inv.eta * eye, eye),)),
    }
    perm = swap_matrix(d)
    for gen in ("a", "abar", "N"):
        dag = sum(np.kron(adjoint(le), adjoint(ri)) for le, ri in coproduct(rep, gen).terms)
        image = cop_img[gen].realized
        if inv.flavor is Flavor.NONSTANDARD:
            image = perm @ image @ perm
        out.append(compare(f"coproduct_{inv.flavor.value}_{gen}", dag, image, tol))

    counit_vals = {"a": 0.0, "abar": 0.0, "N": -p.gamma}
    counit_img = {"a": inv.alpha * 0.0, "abar": inv.beta * 0.0, "N": -p.gamma + inv.eta}
    for gen in ("a", "abar", "N"):
        diff = abs(counit_img[gen] - np.conjugate(counit_vals[gen]))
        out.append(report(f"counit_{gen}", diff, tol))

    def realize_affine(elem) -> np.ndarray:
        c, gen, dconst = elem
        return c * base[gen] + dconst * eye

    for gen in ("a", "abar", "N"):
        start = (1.0, gen, 0.0)
        if inv.flavor is Flavor.STANDARD:
            lhs_e = _star_affine(_s_affine(_star_affine(_s_affine(start, p), inv), p), inv)
            rhs_m = realize_affine(start)
        else:
            lhs_e = _s_affine(_star_affine(start, inv), p)
            rhs_m = realize_affine(_star_affine(_s_affine(start, p), inv))
        out.append(compare(f"antipode_{inv.flavor.value}_{gen}",
                           realize_affine(lhs_e), rhs_m, tol))
    return out


def parity_metric(dim: int) -> np.ndarray:
    """Alternating-sign reflection ``diag(+1, -1, +1, ...)``."""
    return np.diag([(-1.0) ** n for n in range(dim)]).astype(complex)


def derive_involutions(rep: Rep, tol: float = DEFAULT_TOL) -> list[InvolutionSpec]:
    """Recover the imaginary involution pair from a real-line representation.

    Solves ``adjoint(A) = alpha * Abar``, ``adjoint(Abar) = beta * A`` and
    ``adjoint(N) = N + eta`` in the least-squares sense.  The plain adjoint
    realizes exactly one sign; its twin (same ``eta``, flipped ``alpha``
    and ``beta``) is realized by the parity-reflected adjoint, so both are
    returned, each re-verified in its realizing form.
    """
    if rep.params.mode is not Mode.REAL_LINE:
        raise ModeMismatch("involution recovery is defined on the real-line mode")
    if rep.k < 1:
        raise NoSolution("k = 0 leaves the ladder equations degenerate")
    adj_a = rep.A.conj().T
    adj_abar = rep.Abar.conj().T
    alpha = complex(np.vdot(rep.Abar, adj_a) / np.vdot(rep.Abar, rep.Abar))
    beta = complex(np.vdot(rep.A, adj_abar) / np.vdot(rep.A, rep.A))
    eta_diag = np.diag(rep.Nmat.conj().T - rep.Nmat)
    eta = complex(np.mean(eta_diag))
    res = max(
        residual_of(adj_a - alpha * rep.Abar, rep.Abar),
        residual_of(adj_abar - beta * rep.A, rep.A),
        float(np.max(np.abs(eta_diag - eta))),
    )
    if res > tol:
        raise NoSolution(f"matrix equations inconsistent, residual {res:.3e}")
    if abs(alpha * np.conjugate(beta) - 1.0) > tol:
        raise NoSolution(f"solved pair not involutive: alpha={alpha}, beta={beta}")

    def build(al: complex, be: complex) -> InvolutionSpec:
        label = (InvolutionKind.IMAGINARY_MINUS if al.imag < 0
                 else InvolutionKind.IMAGINARY_PLUS).value
        return InvolutionSpec(al, be, eta, Flavor.STANDARD, label)

    solved, twin = build(alpha, beta), build(-alpha, -beta)
    for spec, metric in ((solved, None), (twin, parity_metric(rep.dim))):
        bad = [r for r in check_star_structure(rep, spec, tol, metric=metric) if not r.passed]
        if bad:
            raise NoSolution(
                f"recovered {spec.label} fails re-verification: "
                + ", ".join(f"{r.name}={r.residual:.3e}" for r in bad)
            )
    pair = sorted((solved, twin), key=lambda s: s.alpha.imag)
    return list(pair)

"""Normal forms of singular torsion orbits and their realizability tests.

The two normal-form families (cases I-VI and VII-XI), the quadratic 4-form
sigma, the differential of a parallel form, the codifferential gap, vector
pair reduction under SO(3), the scalar-square criterion for Lie groups, and
a first-Bianchi feasibility filter for candidate curvature operators.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .forms import (
    DIM,
    Form,
    SkewEndo,
    contract,
    endo_act_on_form,
    form_of_endo,
    monomials,
    norm_sq,
    wedge,
)
from .scalars import is_exact, is_zero, sym_sqrt, to_float
from .unitary import (
    L2_MINUS_BASIS,
    M2_BASIS,
    i1,
    i2,
    i3,
    identify_algebra,
    isotropy_algebra,
    project_l3,
    torsion_type,
)

FIRST_FAMILY = ("I", "II", "III", "IV", "V", "VI")
SECOND_FAMILY = ("VII", "VIII", "IX", "X", "XI")


def _e(*idx):
    return Form.monomial(idx)


def first_family_form(a1, a3, a4, a5) -> Form:
    t = a1 * wedge(_e(1, 4) + _e(2, 3), _e(5))
    t = t + wedge(_e(1, 2) - _e(3, 4), a3 * _e(5) + a4 * _e(6))
    return t + a5 * wedge(_e(1, 2) + _e(3, 4), _e(5))


def second_family_form(a1, a2, b1, b2) -> Form:
    t = a1 * (wedge(_e(1, 4) + _e(2, 3), _e(5)) + wedge(_e(1, 3) - _e(2, 4), _e(6)))
    t = t + a2 * (wedge(-_e(1, 3) + _e(2, 4), _e(5)) + wedge(_e(1, 4) + _e(2, 3), _e(6)))
    t = t + b1 * wedge(_e(1, 2) - _e(3, 4), _e(5))
    return t + b2 * (wedge(_e(1, 3) - _e(2, 4), _e(5)) + wedge(_e(1, 4) + _e(2, 3), _e(6)))


def _pos(x, tol=None) -> bool:
    if is_exact(x):
        return x > 0
    return to_float(x) > (tol if tol is not None else 1e-9)


def _zero(x, tol=None) -> bool:
    return is_zero(x, tol)


@dataclass(frozen=True)
class TorsionFamily:
    """A tagged parameter record for one of the singular-orbit cases."""

    case: str
    a1: object = 0
    a2: object = 0
    a3: object = 0
    a4: object = 0
    a5: object = 0
    b1: object = 0
    b2: object = 0

    def __post_init__(self):
        msg = self.violation()
        if msg:
            raise ValueError(f"case {self.case}: {msg}")

    def violation(self) -> str | None:
        c = self.case
        a1, a3, a4, a5 = self.a1, self.a3, self.a4, self.a5
        b1, b2 = self.b1, self.b2
        if c in FIRST_FAMILY:
            if not (_zero(self.a2) and _zero(b1) and _zero(b2)):
                return "first-family cases use only a1, a3, a4, a5"
            branch_34 = ((_pos(a3)) or (_zero(a3) and _pos(a4)))
            if c == "I":
                if not (_zero(a1) and _zero(a3) and _zero(a4) and _pos(a5)):
                    return "needs a1 = a3 = a4 = 0 and a5 > 0"
            elif c == "II":
                if not (_pos(a1) and _zero(a3) and _zero(a4) and _zero(a5)):
                    return "needs a1 > 0 and a3 = a4 = a5 = 0"
            elif c == "III":
                if not (_pos(a1) and branch_34 and _zero(a5)):
                    return "needs a1 > 0, a5 = 0 and (a3 > 0, or a3 = 0 < a4)"
            elif c == "IV":
                if not (_zero(a1) and branch_34 and _pos(a5)):
                    return "needs a1 = 0, a5 > 0 and (a3 > 0, or a3 = 0 < a4)"
            elif c == "V":
                if not (_pos(a1) and _zero(a3) and _zero(a4) and _pos(a5)):
                    return "needs a1 > 0, a3 = a4 = 0, a5 > 0"
            elif c == "VI":
                if not (_pos(a1) and branch_34 and _pos(a5)):
                    return "needs a1 > 0, a5 > 0 and (a3 > 0, or a3 = 0 < a4)"
            return None
        if c in SECOND_FAMILY:
            a2 = self.a2
            if not (_zero(a3) and _zero(a4) and _zero(a5)):
                return "second-family cases use only a1, a2, b1, b2"
            if c == "VII":
                if not (_pos(a1) and _zero(a2) and _zero(b1) and _zero(b2)):
                    return "needs a1 > 0 and a2 = b1 = b2 = 0"
            elif c == "VIII":
                if not (_zero(a1) and _zero(a2) and _zero(b1) and not _zero(b2)):
                    return "needs a1 = a2 = b1 = 0 and b2 != 0"
            elif c == "IX":
                if not (_zero(a1) and _zero(a2) and not _zero(b1) and _zero(b2)):
                    return "needs a1 = a2 = b2 = 0 and b1 != 0"
            elif c == "X":
                if not (_zero(a1) and _zero(a2)
                        and not _zero(b1) and _zero(b1 - 2 * b2)):
                    return "needs a1 = a2 = 0 and b1 = 2 b2 != 0"
            elif c == "XI":
                if (_zero(a1) and _zero(a2)) or _zero(b1) or not _zero(b1 - 2 * b2):
                    return "needs (a1, a2) != 0 and b1 = 2 b2 != 0"
            return None
        return f"unknown case tag {c!r}"


def make_torsion(f: TorsionFamily) -> Form:
    if f.case in FIRST_FAMILY:
        return first_family_form(f.a1, f.a3, f.a4, f.a5)
    return second_family_form(f.a1, f.a2, f.b1, f.b2)


def sigma(t: Form) -> Form:
    """sigma(T) = 1/2 sum_i (e_i .J T) ^ (e_i .J T)."""
    if t.degree != 3:
        raise ValueError("sigma needs a 3-form")
    out = Form(4)
    for i in range(DIM):
        v = [Fraction(0)] * DIM
        v[i] = Fraction(1)
        c = contract(v, t)
        out = out + wedge(c, c)
    return Fraction(1, 2) * out


def d_parallel(a: Form, t: Form) -> Form:
    """Exterior differential of a form that is parallel for the connection
    with skew torsion T: d a = sum_i (e_i .J a) ^ (e_i .J T)."""
    if t.degree != 3:
        raise ValueError("torsion argument must be a 3-form")
    if a.degree == 0:
        return Form(1)
    if a.degree >= DIM:
        return Form(DIM)
    out = Form(a.degree + 1)
    for i in range(DIM):
        v = [Fraction(0)] * DIM
        v[i] = Fraction(1)
        out = out + wedge(contract(v, a), contract(v, t))
    return out


def codiff_gap(t: Form, w: Form) -> Form:
    """Difference of the metric and torsion codifferentials on w:
    1/2 sum_{i,j} (e_ij .J T) ^ (e_ij .J w)."""
    if w.degree < 2:
        raise ValueError("codifferential gap needs degree >= 2")
    deg = (t.degree - 2) + (w.degree - 2)
    out = Form(deg)
    for i in range(DIM):
        for j in range(DIM):
            if i == j:
                continue
            vi = [Fraction(1 if k == i else 0) for k in range(DIM)]
            vj = [Fraction(1 if k == j else 0) for k in range(DIM)]
            ct = contract(vj, contract(vi, t))
            cw = contract(vj, contract(vi, w))
            out = out + wedge(ct, cw)
    return Fraction(1, 2) * out


def so3_pair_reduce(v, w):
    """Unique normal form (lambda, mu1, mu2) of a pair of vectors in R^3
    under the diagonal rotation action."""
    v, w = list(v), list(w)
    nv = sum(x * x for x in v)
    if is_zero(nv):
        return (0, sym_sqrt(sum(x * x for x in w)), 0)
    lam = sym_sqrt(nv)
    mu1 = sum(a * b for a, b in zip(v, w)) / lam
    rest = [b - (mu1 / lam) * a for a, b in zip(v, w)]
    mu2 = sym_sqrt(sum(x * x for x in rest))
    return (lam, mu1, mu2)


def lie_group_criterion(t: Form, tol: float | None = None):
    """Value of 3|T2|^2 - |T12|^2 + |T6|^2 and whether it vanishes
    (equivalently, the torsion defines a Lie bracket)."""
    comp = project_l3(t)
    n2, n12, n6 = comp.norms_sq
    value = 3 * n2 - n12 + n6
    return value, is_zero(value, tol)


# --- first Bianchi feasibility ---

def _cyclic_sum_form(wa: Form, wb: Form) -> Form:
    """The alternating 4-form cyc(R) for R = wa (x) wb + wb (x) wa
    (halved when wa is wb), via direct evaluation of the cyclic sum."""

    # evaluate R(X,Y,Z,U) = wa(X,Y) wb(Z,U) symmetrized in the two factors
    def ev(w: Form, i, j):
        if i == j:
            return 0
        if i < j:
            return w.coeffs.get((i, j), 0)
        return -w.coeffs.get((j, i), 0)

    def rr(x, y, z, u):
        return ev(wa, x, y) * ev(wb, z, u) + ev(wb, x, y) * ev(wa, z, u)

    out = {}
    for idx in monomials(4):
        x, y, z, u = idx
        val = rr(x, y, z, u) + rr(y, z, x, u) + rr(z, x, y, u)
        if not is_zero(val):
            out[idx] = val
    return Form(4, out)


@dataclass
class CurvatureCandidate:
    """A pair-symmetric curvature operator with values in a subalgebra,
    stored as a symmetric coefficient matrix over the subalgebra basis."""

    basis: list  # SkewEndo basis of the value subalgebra
    coeffs: list  # symmetric matrix over that basis

    def cyclic_sum(self) -> Form:
        out = Form(4)
        forms = [form_of_endo(b) for b in self.basis]
        n = len(forms)
        for a in range(n):
            for b in range(a, n):
                c = self.coeffs[a][b]
                if is_zero(c):
                    continue
                contrib = _cyclic_sum_form(forms[a], forms[b])
                if a == b:
                    contrib = Fraction(1, 2) * contrib
                out = out + c * contrib
        return out


def bianchi_feasible(t: Form, hol=None):
    """Search S^2(hol) for a curvature candidate whose first-Bianchi cyclic
    sum equals sigma(T).  Returns (feasible, witness or None)."""
    if hol is None:
        hol = isotropy_algebra(t)
    else:
        for h in hol:
            if not endo_act_on_form(h, t).is_zero():
                raise ValueError("hol is not contained in the annihilator of T")
    target = sigma(t).vector()
    n = len(hol)
    forms = [form_of_endo(h) for h in hol]
    cols = []
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    for a, b in pairs:
        contrib = _cyclic_sum_form(forms[a], forms[b])
        if a == b:
            contrib = Fraction(1, 2) * contrib
        cols.append(contrib.vector())
    sol = linalg.column_space_coords(cols, target) if cols else (
        [] if all(is_zero(c) for c in target) else None)
    if sol is None:
        return False, None
    coeffs = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), c in zip(pairs, sol):
        coeffs[a][b] = c
        coeffs[b][a] = c
    return True, CurvatureCandidate(hol, coeffs)


# --- diagnostic families used in the exclusion arguments ---

def w1w3_family(a1, a2, b1, b2, a3, a4) -> Form:
    """Six-parameter candidate family for divergence-free forms with both
    small components, before the Bianchi reduction (which forces a1 = b1
    once the frame is rotated to a2 = b2 = 0)."""
    t2 = a1 * (wedge(_e(1, 4) + _e(2, 3), _e(5)) + wedge(_e(1, 3) - _e(2, 4), _e(6)))
    t2 = t2 + a2 * (wedge(-_e(1, 3) + _e(2, 4), _e(5)) + wedge(_e(1, 4) + _e(2, 3), _e(6)))
    t12 = b1 * (wedge(_e(1, 4) + _e(2, 3), _e(5)) - wedge(_e(1, 3) - _e(2, 4), _e(6)))
    t12 = t12 + b2 * (wedge(-_e(1, 3) + _e(2, 4), _e(5)) - wedge(_e(1, 4) + _e(2, 3), _e(6)))
    t12 = t12 + wedge(_e(1, 2) - _e(3, 4), a3 * _e(5) + a4 * _e(6))
    return t2 + t12


def gamma_family(a1, a3, a4, gamma, a5) -> Form:
    """Divergence normal-form candidate with the extra skew parameter that
    the Bianchi identities rule out."""
    omega1 = a1 * M2_BASIS[1]
    omega3 = a3 * L2_MINUS_BASIS[0]
    omega4 = a4 * L2_MINUS_BASIS[0] + gamma * L2_MINUS_BASIS[1]
    t = i1(omega1) + i2(omega1) + i3(omega3, omega4)
    return t + a5 * wedge(_e(1, 2) + _e(3, 4), _e(5))


def so3_family(a1, a2, a3) -> Form:
    """Normal form with a 3-symmetric divergence-free part: the second
    family pair plus a3 (3 e135 + e146 + e236 + e245)."""
    t = second_family_form(a1, a2, 0, 0)
    cube = 3 * _e(1, 3, 5) + _e(1, 4, 6) + _e(2, 3, 6) + _e(2, 4, 5)
    return t + a3 * cube


# --- invariant polynomial dimensions ---

def _u3_generators():
    """Torus generators and the six off-diagonal generators of u(3)."""
    from .forms import endo_of_form
    torus = [endo_of_form(_e(1, 2)), endo_of_form(_e(3, 4)), endo_of_form(_e(5, 6))]
    rest = []
    for j, k in ((1, 2), (1, 3), (2, 3)):
        p, q = 2 * j - 1, 2 * k - 1
        rest.append(endo_of_form(_e(p, q) + _e(p + 1, q + 1)))
        rest.append(endo_of_form(Form(2, {tuple(sorted((p, q + 1))): Fraction(1)})
                                 - Form(2, {tuple(sorted((p + 1, q))): Fraction(1)})))
    return torus, rest


def _weight_basis():
    """Complex weight vectors spanning the 14-dim complement of {Omega ^ X},
    as (weight triple, coefficient dict on degree-3 monomials)."""
    import sympy

    one = sympy.Integer(1)
    ii = sympy.I
    # phi_k = e(2k-1) - i e(2k) has weight +1 under the k-th torus rotation
    phi = {}
    for k in (1, 2, 3):
        phi[k] = {(2 * k - 1,): one, (2 * k,): -ii}
        phi[-k] = {(2 * k - 1,): one, (2 * k,): ii}

    def triple(a, b, c):
        out = {}
        for (ia,), ca in phi[a].items():
            for (ib,), cb in phi[b].items():
                for (ic,), cc in phi[c].items():
                    idx = (ia, ib, ic)
                    if len(set(idx)) < 3:
                        continue
                    order = tuple(sorted(idx))
                    sign = 1
                    # parity of the permutation sorting idx
                    perm = list(idx)
                    for x in range(3):
                        for y in range(x + 1, 3):
                            if perm[x] > perm[y]:
                                perm[x], perm[y] = perm[y], perm[x]
                                sign = -sign
                    out[order] = out.get(order, 0) + sign * ca * cb * cc
        return {k2: sympy.simplify(v) for k2, v in out.items()
                if sympy.simplify(v) != 0}

    vecs = []
    for s in (1, -1):
        vecs.append(((s, s, s), triple(s, s * 2, s * 3)))
    for s in (1, -1):
        vecs.append(((s, s, -s), triple(s, 2 * s, -3 * s)))
        vecs.append(((s, -s, s), triple(s, -2 * s, 3 * s)))
        vecs.append(((-s, s, s), triple(-s, 2 * s, 3 * s)))
    # differences of phi_k phi_-k pairs, orthogonal to Omega ^ X
    for s in (1, -1):
        for j, (p, q) in ((1, (2, 3)), (2, (1, 3)), (3, (1, 2))):
            w = [0, 0, 0]
            w[j - 1] = s
            d1 = triple(p, -p, s * j)
            d2 = triple(q, -q, s * j)
            diff = {k2: d1.get(k2, 0) - d2.get(k2, 0)
                    for k2 in set(d1) | set(d2)}
            vecs.append((tuple(w), diff))
    return vecs


def invariant_poly_dims(max_deg: int, allow_large: bool = False):
    """Dimensions of rotation-invariant homogeneous polynomials on the
    14-dimensional sum of the two divergence-free torsion components,
    one (degree, dim) pair per degree from 1 to max_deg."""
    import sympy

    if max_deg > 4 and not allow_large:
        raise ValueError("degrees above 4 blow up; pass allow_large=True")

    basis3 = monomials(3)
    vecs = _weight_basis()
    nvar = len(vecs)
    p_mat = sympy.Matrix([[w[1].get(idx, 0) for w in vecs] for idx in basis3])
    p_inv = (p_mat.T * p_mat).inv() * p_mat.T  # left inverse onto the span

    torus, rest = _u3_generators()
    coord_action = []
    for g in rest:
        amat = sympy.Matrix([[endo_act_on_form(g, Form(3, dict([(idx, Fraction(1))])))
                              .coeffs.get(jdx, 0) for idx in basis3]
                             for jdx in basis3])
        m = p_inv * amat * p_mat  # action on the complex coordinates
        coord_action.append([[sympy.simplify(m[a, b]) for b in range(nvar)]
                             for a in range(nvar)])

    weights = [w for w, _ in vecs]
    out = []
    for deg in range(1, max_deg + 1):
        monos = [m for m in itertools.combinations_with_replacement(range(nvar), deg)
                 if all(sum(weights[i][c] for i in m) == 0 for c in range(3))]
        if not monos:
            out.append((deg, 0))
            continue
        rows = []
        for act in coord_action:
            images = {}
            for col, m in enumerate(monos):
                for pos in range(deg):
                    tail = m[:pos] + m[pos + 1:]
                    for b in range(nvar):
                        c = act[b][m[pos]]
                        if c == 0:
                            continue
                        key = tuple(sorted(tail + (b,)))
                        images.setdefault(key, [0] * len(monos))
                        images[key][col] += c
            rows.extend(images.values())
        mat = sympy.Matrix(rows)
        out.append((deg, len(monos) - mat.rank()))
    return out


# --- classification report ---

_CASE_BY_SIGNATURE = {
    ("W4", "u2_0"): "I",
    ("W1+W3", "su2"): "II",
    ("W1+W3", "t1"): "III",
    ("W3+W4", "t2"): "IV",
    ("W1+W3+W4", "su2"): "V",
    ("W1+W3+W4", "t1"): "VI",
    ("W1", "su3"): "VII",
    ("W3", "u2_1"): "VIII",
    ("W3", "t2"): "IX",
    ("W3", "so3"): "X",
    ("W1+W3", "so3"): "XI",
}

_ONE = Fraction(1)
_FIRST_BASIS = (
    first_family_form(_ONE, 0, 0, 0),
    first_family_form(0, _ONE, 0, 0),
    first_family_form(0, 0, _ONE, 0),
    first_family_form(0, 0, 0, _ONE),
)
_SECOND_BASIS = (
    second_family_form(_ONE, 0, 0, 0),
    second_family_form(0, _ONE, 0, 0),
    second_family_form(0, 0, _ONE, 0),
    second_family_form(0, 0, 0, _ONE),
)


@dataclass
class ClassificationReport:
    norms_sq: tuple
    strict_type: str
    iso_label: str
    iso_dim: int
    iso_basis: list
    case: str | None
    params: dict | None
    criterion_value: object
    criterion_holds: bool
    bianchi_ok: bool
    ambiguity: str | None = None
    verdict: str = ""

    def to_json(self) -> str:
        def num(x):
            if is_exact(x):
                return str(x)
            return x
        payload = {
            "norms": {"t2": num(self.norms_sq[0]), "t12": num(self.norms_sq[1]),
                      "t6": num(self.norms_sq[2])},
            "strictType": self.strict_type,
            "isoLabel": self.iso_label,
            "isoDim": self.iso_dim,
            "caseTag": self.case,
            "criteria": {"lieGroup": {"value": num(self.criterion_value),
                                      "holds": self.criterion_holds},
                         "bianchiFeasible": self.bianchi_ok},
            "invariants": {"params": {k: num(v) for k, v in self.params.items()}
                           if self.params else None,
                           "ambiguity": self.ambiguity},
            "verdict": self.verdict,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _extract_params(t: Form, basis, names):
    cols = [f.vector() for f in basis]
    sol = linalg.column_space_coords(cols, t.vector())
    if sol is None:
        return None
    return dict(zip(names, sol))


def classify_form(t: Form, tol: float | None = None) -> ClassificationReport:
    """Best-effort identification of the singular-orbit case of a 3-form."""
    comp = project_l3(t)
    norms = comp.norms_sq
    _, strict = torsion_type(t, tol)
    iso = isotropy_algebra(t)
    label = identify_algebra(iso)
    value, holds = lie_group_criterion(t, tol)
    feasible, _ = bianchi_feasible(t, iso)

    case = _CASE_BY_SIGNATURE.get((strict, label.tag))
    params = None
    ambiguity = None
    if case in ("I", "II", "III", "IV", "V", "VI"):
        params = _extract_params(t, _FIRST_BASIS, ("a1", "a3", "a4", "a5"))
    elif case in ("VII", "VIII", "IX", "X", "XI"):
        params = _extract_params(t, _SECOND_BASIS, ("a1", "a2", "b1", "b2"))
        if case == "XI" and params is not None and not is_zero(params["a2"], tol):
            # frame rotation can trade a1 against a2; report the pair norm
            pass
    if case is None:
        if strict == "Kaehler":
            verdict = "zero torsion (Kaehler)"
            case = "kaehler"
        elif label.dim == 0:
            verdict = "trivial isotropy: not a parallel-torsion orbit candidate"
        else:
            verdict = "non-singular or unrealizable"
    else:
        verdict = f"case {case}"
        if params is None:
            verdict += " (not presented in the normal frame)"
    if label.tag == "t1" and params is not None and case is None:
        ambiguity = "two parameter sets may give the same orbit"
    if strict == "W3" and label.tag == "t1":
        verdict = "strict W3 with 1-dim isotropy: not realizable by parallel torsion"
        ambiguity = "two parameter sets may give the same orbit"
    return ClassificationReport(norms, strict, label.tag, label.dim, iso,
                                case, params, value, holds, feasible,
                                ambiguity, verdict)

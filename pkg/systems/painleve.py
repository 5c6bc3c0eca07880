"""
Painleve (WTC) analysis of i u_t + u_xx + F(t)|u|^2 u = 0

u and its conjugate v are expanded as sum_n u_n xi^(n-1), v_n likewise,
about the singular manifold xi = x + psi(t). Coefficients u_n, v_n depend
on t only and are carried as expressions in t.
"""
from dataclasses import dataclass, field
import logging
import math

import numpy as np

from config.settings import (DEFAULT_PSI, DEFAULT_U0, IDENTITY_RTOL, IDENTITY_SAMPLES,
                             IDENTITY_SEED, IDENTITY_WINDOW, MAX_SAMPLE_ATTEMPTS,
                             POLE_EXCLUSION)
from core import expr as ex
from core.errors import ConfigError, EvaluationError, SamplingError
from core.parser import parse
from core.polynomial import Polynomial, rational_normal_form

logger = logging.getLogger(__name__)

UNIVERSAL_RESONANCE = -1
COMPATIBILITY_FORMS = ('corrected', 'printed')


def _as_formula(value, default=None):
    """Accept an Expr, a formula string or None (falls back to default)"""
    if value is None:
        value = default
    if isinstance(value, ex.Expr):
        return value
    if isinstance(value, str):
        return parse(value)
    return ex.as_expr(value)


def _half():
    return ex.div(ex.ONE, ex.const(2))


# ------------------------------------------------------------ identity tests

@dataclass
class IdentityResult:
    """Outcome of a zero test"""
    identically_zero: bool
    exact: bool
    norm: float = 0.0
    scale: float = 0.0
    samples: int = 0
    normal_form: object = None  # RationalFunction on the exact path

    def to_dict(self):
        return {'identically_zero': self.identically_zero, 'exact': self.exact,
                'norm': self.norm, 'scale': self.scale, 'samples': self.samples}


def top_level_terms(e):
    """Summands of the root Add/Sub chain"""
    if isinstance(e, ex.Add):
        return top_level_terms(e.left) + top_level_terms(e.right)
    if isinstance(e, ex.Sub):
        return top_level_terms(e.left) + [ex.neg(e.right)]
    return [e]


def sample_points(exprs, count=IDENTITY_SAMPLES, window=IDENTITY_WINDOW, seed=IDENTITY_SEED,
                  exclusion=POLE_EXCLUSION):
    """Random regular points: every expression evaluates at t and t +- exclusion"""
    rng = np.random.default_rng(seed)
    accepted = []
    attempts = 0
    limit = count * MAX_SAMPLE_ATTEMPTS
    while len(accepted) < count and attempts < limit:
        attempts += 1
        t = float(rng.uniform(*window))
        try:
            for e in exprs:
                for probe in (t - exclusion, t, t + exclusion):
                    ex.evaluate(e, probe)
        except EvaluationError:
            logger.debug("rejected sample t=%r near a pole", t)
            continue
        accepted.append(t)
    if len(accepted) < count:
        raise SamplingError(f"only {len(accepted)} of {count} regular sample points "
                            f"found in {window} after {attempts} draws")
    return accepted


def sampled_norm(e, terms=None, count=IDENTITY_SAMPLES, seed=IDENTITY_SEED):
    """(max |e|, max |term|) over regular sample points"""
    terms = top_level_terms(e) if terms is None else terms
    points = sample_points([e] + list(terms), count=count, seed=seed)
    norm = max(abs(ex.evaluate(e, t)) for t in points)
    scale = max(abs(ex.evaluate(term, t)) for term in terms for t in points)
    return float(norm), float(scale), len(points)


def identity_test(e, terms=None, rtol=IDENTITY_RTOL, count=IDENTITY_SAMPLES, seed=IDENTITY_SEED):
    """Decide whether e vanishes identically

    Rational expressions are decided exactly through their normal form.
    Anything else is sampled: |e| must stay below rtol times the largest
    top-level term magnitude at every accepted point.
    """
    if ex.is_rational_form(e):
        normal = rational_normal_form(e)
        if normal.is_zero():
            return IdentityResult(True, True, normal_form=normal)
        try:
            norm, scale, used = sampled_norm(e, terms, count, seed)
        except SamplingError:
            norm, scale, used = math.inf, 0.0, 0
        return IdentityResult(False, True, norm, scale, used, normal)
    logger.debug("expression is not rational; falling back to sampling")
    norm, scale, used = sampled_norm(e, terms, count, seed)
    zero = norm <= rtol * scale if scale > 0 else norm == 0.0
    return IdentityResult(zero, False, norm, scale, used)


def simplified(e):
    """Normal form as an expression when e is rational, e itself otherwise"""
    if ex.is_rational_form(e):
        return rational_normal_form(e).to_expr()
    return e


# ------------------------------------------------------------ leading order

@dataclass
class LeadingOrder:
    """Leading balance u ~ u0/xi^p, v ~ v0/xi^q with u0 v0 = product_constraint"""
    p: int
    q: int
    product_constraint: ex.Expr

    def to_dict(self):
        return {'p': self.p, 'q': self.q,
                'product_constraint': ex.to_string(simplified(self.product_constraint))}


def leading_order(F):
    """p = q = 1 and u0 v0 = -2/F"""
    F = _as_formula(F)
    if identity_test(F).identically_zero:
        raise ConfigError("F is identically zero; the equation has no cubic term")
    return LeadingOrder(1, 1, ex.div(ex.const(-2), F))


def resonance_determinant(n):
    return n * (n - 4) * (n - 3) * (n + 1)


def system_determinant(n):
    """Determinant of the 2x2 system for (u_n, v_n) with F u0 v0 = -2"""
    diagonal = (n - 1) * (n - 2) - 4
    return diagonal * diagonal - 4


def _determinant_polynomial():
    n = Polynomial.t()
    return n * (n - Polynomial.constant(4)) * (n - Polynomial.constant(3)) * (n + Polynomial.constant(1))


def resonances():
    """Integer roots of the resonance determinant, ascending

    Candidates come from the rational root test on the expanded polynomial.
    """
    poly = _determinant_polynomial()
    coeffs = [int(c.re) for c in poly.coeffs]
    roots = set()
    shift = 0
    while shift < len(coeffs) and coeffs[shift] == 0:
        roots.add(0)
        shift += 1
    lowest = abs(coeffs[shift])
    for d in range(1, lowest + 1):
        if lowest % d:
            continue
        for candidate in (d, -d):
            if poly(candidate) == 0:
                roots.add(candidate)
    return sorted(roots)


# ------------------------------------------------------- Laurent coefficients

@dataclass
class LaurentCoefficients:
    """Leading coefficients of the expansion, u0 given and v0 derived"""
    u0: ex.Expr
    v0: ex.Expr
    u1: ex.Expr
    v1: ex.Expr
    u2: ex.Expr
    v2: ex.Expr

    def to_dict(self):
        return {name: ex.to_string(simplified(getattr(self, name)))
                for name in ('u0', 'v0', 'u1', 'v1', 'u2', 'v2')}


def _manifold(psi):
    xi_t = ex.differentiate(psi)
    return xi_t, ex.differentiate(xi_t)


def laurent_coefficients(F, psi, u0):
    F, psi, u0 = _as_formula(F), _as_formula(psi), _as_formula(u0)
    if identity_test(u0).identically_zero:
        raise ConfigError("u0 is identically zero")
    if identity_test(F).identically_zero:
        raise ConfigError("F is identically zero")
    xi_t, _ = _manifold(psi)
    i = ex.I
    v0 = ex.div(ex.const(-2), ex.mul(F, u0))
    u0_t = ex.differentiate(u0)
    v0_t = ex.differentiate(v0)
    u1 = ex.mul(ex.mul(ex.neg(ex.mul(i, _half())), u0), xi_t)
    v1 = ex.mul(ex.mul(ex.mul(i, _half()), v0), xi_t)
    damping = ex.mul(ex.mul(ex.mul(_half(), u0), v0), ex.power(xi_t, 2))
    u2 = ex.div(ex.sub(ex.add(ex.mul(ex.mul(i, v0_t), u0),
                              ex.mul(ex.mul(ex.mul(ex.const(2), i), u0_t), v0)), damping),
                ex.mul(ex.const(6), v0))
    v2 = ex.div(ex.sub(ex.sub(ex.neg(ex.mul(ex.mul(i, u0_t), v0)),
                              ex.mul(ex.mul(ex.mul(ex.const(2), i), v0_t), u0)), damping),
                ex.mul(ex.const(6), u0))
    return LaurentCoefficients(u0, v0, u1, v1, u2, v2)


# ------------------------------------------------------ compatibility at 3, 4

def compatibility_n3(F, psi, u0):
    """A3 v0 - B3 u0 from the closed forms

    2 F A3 = u0 (F_t xi_t - F xi_tt),  u0 F^2 B3 = F xi_tt - F_t xi_t
    """
    F, psi, u0 = _as_formula(F), _as_formula(psi), _as_formula(u0)
    xi_t, xi_tt = _manifold(psi)
    F_t = ex.differentiate(F)
    v0 = ex.div(ex.const(-2), ex.mul(F, u0))
    bracket = ex.sub(ex.mul(F_t, xi_t), ex.mul(F, xi_tt))
    a3 = ex.div(ex.mul(u0, bracket), ex.mul(ex.const(2), F))
    b3 = ex.div(ex.neg(bracket), ex.mul(u0, ex.power(F, 2)))
    return ex.sub(ex.mul(a3, v0), ex.mul(b3, u0))


def n4_brackets(F, psi, u0, form='corrected'):
    """(6 u0 F^2 A4, 3 u0^3 F^3 B4)

    The printed brackets weight the F_t^2 terms by u0; every other term
    carries u0^2, and direct substitution (see recursion_coefficients)
    confirms u0^2. form='printed' keeps the printed weight.
    """
    if form not in COMPATIBILITY_FORMS:
        raise ConfigError(f"unknown n=4 form {form!r}; expected one of {COMPATIBILITY_FORMS}")
    i = ex.I
    xi_t, xi_tt = _manifold(psi)
    F_t = ex.differentiate(F)
    F_tt = ex.differentiate(F_t)
    u0_t = ex.differentiate(u0)
    u0_tt = ex.differentiate(u0_t)
    F2 = ex.power(F, 2)
    u0sq = ex.power(u0, 2)
    common = ex.neg(ex.mul(F2, ex.power(u0_t, 2)))
    common = ex.sub(common, ex.mul(ex.mul(ex.mul(ex.mul(ex.const(2), i), u0sq), F2), ex.mul(xi_t, xi_tt)))
    common = ex.add(common, ex.mul(ex.mul(u0, F2), u0_tt))
    common = ex.add(common, ex.mul(ex.mul(ex.mul(i, u0sq), F), ex.mul(ex.power(xi_t, 2), F_t)))
    common = ex.sub(common, ex.mul(ex.mul(u0, F), ex.mul(u0_t, F_t)))
    weight = u0sq if form == 'corrected' else u0
    ft2 = ex.mul(weight, ex.power(F_t, 2))
    fftt = ex.mul(u0sq, ex.mul(F, F_tt))
    a_bracket = ex.sub(ex.add(common, ex.mul(ex.const(2), ft2)), fftt)
    b_bracket = ex.add(ex.sub(common, ex.mul(ex.const(4), ft2)), ex.mul(ex.const(2), fftt))
    return a_bracket, b_bracket


def compatibility_n4(F, psi, u0, form='corrected'):
    """v0 A4 + u0 B4; with the corrected brackets this is -(2F_t^2 - F F_tt)/F^3"""
    F, psi, u0 = _as_formula(F), _as_formula(psi), _as_formula(u0)
    a_bracket, b_bracket = n4_brackets(F, psi, u0, form)
    a4 = ex.div(a_bracket, ex.mul(ex.mul(ex.const(6), u0), ex.power(F, 2)))
    b4 = ex.div(b_bracket, ex.mul(ex.mul(ex.const(3), ex.power(u0, 3)), ex.power(F, 3)))
    v0 = ex.div(ex.const(-2), ex.mul(F, u0))
    return ex.add(ex.mul(v0, a4), ex.mul(u0, b4))


def constraint_residual(F):
    """2 F_t^2 - F F_tt"""
    F = _as_formula(F)
    F_t = ex.differentiate(F)
    return ex.sub(ex.mul(ex.const(2), ex.power(F_t, 2)), ex.mul(F, ex.differentiate(F_t)))


def inverse_curvature(F):
    """d^2/dt^2 (1/F)"""
    return ex.differentiate(ex.div(ex.ONE, _as_formula(F)), 2)


# ----------------------------------------------------- direct recursion

@dataclass
class RecursionResult:
    """Coefficients u_n, v_n (n = 0..4) solved from the xi-power balance"""
    u: list
    v: list
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    n3_residual: ex.Expr = ex.ZERO
    n4_residual: ex.Expr = ex.ZERO


def _cubic_sum(first, second, n):
    """sum of first_i first_j second_l over i + j + l = n, all indices < n"""
    total = ex.ZERO
    for i in range(n):
        for j in range(n - i + 1):
            l = n - i - j
            if j >= n or l >= n:
                continue
            total = ex.add(total, ex.mul(ex.mul(first[i], first[j]), second[l]))
    return total


def _right_hand_sides(F, u, v, xi_t, n):
    i = ex.I
    shift = ex.const(n - 2)
    du = ex.differentiate(u[n - 2]) if n >= 2 else ex.ZERO
    dv = ex.differentiate(v[n - 2]) if n >= 2 else ex.ZERO
    a = ex.sub(ex.neg(ex.mul(i, ex.add(du, ex.mul(ex.mul(shift, u[n - 1]), xi_t)))),
               ex.mul(F, _cubic_sum(u, v, n)))
    b = ex.sub(ex.mul(i, ex.add(dv, ex.mul(ex.mul(shift, v[n - 1]), xi_t))),
               ex.mul(F, _cubic_sum(v, u, n)))
    return a, b


def recursion_coefficients(F, psi, u0, u3=ex.ZERO):
    """Solve the expansion order by order up to n = 4

    At each order [[m, F u0^2], [F v0^2, m]] (u_n, v_n) = (A_n, B_n) with
    m = (n-1)(n-2) - 4. At n = 3 and n = 4 the matrix is singular; u3 is
    the free resonance datum and the n = 4 residual is v0 A4 + u0 B4.
    """
    F, psi, u0 = _as_formula(F), _as_formula(psi), _as_formula(u0)
    u3 = _as_formula(u3)
    xi_t, _ = _manifold(psi)
    v0 = ex.div(ex.const(-2), ex.mul(F, u0))
    u, v = [u0], [v0]
    result = RecursionResult(u, v)
    off_u = ex.mul(F, ex.power(u0, 2))
    off_v = ex.mul(F, ex.power(v0, 2))
    for n in (1, 2, 3, 4):
        a, b = _right_hand_sides(F, u, v, xi_t, n)
        result.a.append(a)
        result.b.append(b)
        m = ex.const((n - 1) * (n - 2) - 4)
        if n == 3:
            result.n3_residual = ex.sub(ex.mul(a, v0), ex.mul(b, u0))
            u.append(u3)
            v.append(ex.div(ex.add(a, ex.mul(ex.const(2), u3)), off_u))
            continue
        if n == 4:
            result.n4_residual = ex.add(ex.mul(v0, a), ex.mul(u0, b))
            break
        det = ex.const(system_determinant(n))
        u.append(ex.div(ex.sub(ex.mul(m, a), ex.mul(off_u, b)), det))
        v.append(ex.div(ex.sub(ex.mul(m, b), ex.mul(off_v, a)), det))
    return result


# ------------------------------------------------------------ verdict

@dataclass
class PainleveReport:
    """Verdict on whether F(t) lets the equation pass the Painleve test"""
    F: str
    psi: str
    u0: str
    leading: LeadingOrder
    resonances: list
    n3_residual_norm: float
    n4_identically_zero: bool
    constraint_residual: str
    inverse_check_zero: bool
    verdict: str
    exact: bool
    n4_form: str = 'corrected'
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == 'pass'

    def to_dict(self):
        return {
            'F': self.F,
            'psi': self.psi,
            'u0': self.u0,
            'leading': {'p': self.leading.p, 'q': self.leading.q},
            'product_constraint': self.leading.to_dict()['product_constraint'],
            'resonances': list(self.resonances),
            'n3_residual_norm': self.n3_residual_norm,
            'n4_identically_zero': self.n4_identically_zero,
            'n4_form': self.n4_form,
            'constraint_residual': self.constraint_residual,
            'inverse_check_zero': self.inverse_check_zero,
            'exact': self.exact,
            'verdict': self.verdict,
            'notes': list(self.notes),
        }


def theorem1_check(F, psi=None, u0=None, n4_form='corrected'):
    """Run the full chain for one coefficient F(t)

    The verdict is decided by 2F_t^2 - F F_tt alone; the n = 3 and n = 4
    compatibility residuals and d^2/dt^2(1/F) are reported alongside.
    """
    source = F if isinstance(F, str) else None
    F = _as_formula(F)
    psi = _as_formula(psi, DEFAULT_PSI)
    u0 = _as_formula(u0, DEFAULT_U0)
    leading = leading_order(F)
    notes = []

    residual = constraint_residual(F)
    primary = identity_test(residual)
    inverse = identity_test(inverse_curvature(F))
    if primary.identically_zero != inverse.identically_zero:
        notes.append("d2/dt2(1/F) disagrees with 2F_t^2 - F F_tt")
        logger.warning("inverse-curvature cross-check disagrees for F=%s", ex.to_string(F))
    if not primary.exact:
        notes.append(f"sampled zero test at {primary.samples} points")

    n3 = identity_test(compatibility_n3(F, psi, u0))
    n3_norm = 0.0 if n3.identically_zero or not math.isfinite(n3.norm) else n3.norm
    if not n3.identically_zero:
        notes.append("n=3 compatibility residual does not vanish")
    n4 = identity_test(compatibility_n4(F, psi, u0, n4_form))
    if n4.identically_zero != primary.identically_zero:
        notes.append(f"n=4 residual ({n4_form} form) disagrees with the constraint")

    printed = simplified(residual) if primary.exact else residual
    verdict = 'pass' if primary.identically_zero else 'fail'
    logger.info("F=%s: constraint %s, verdict %s", ex.to_string(F), ex.to_string(printed), verdict)
    return PainleveReport(
        F=source if source is not None else ex.to_string(F),
        psi=ex.to_string(psi),
        u0=ex.to_string(u0),
        leading=leading,
        resonances=resonances(),
        n3_residual_norm=float(n3_norm),
        n4_identically_zero=n4.identically_zero,
        constraint_residual=ex.to_string(printed),
        inverse_check_zero=inverse.identically_zero,
        verdict=verdict,
        exact=primary.exact,
        n4_form=n4_form,
        notes=notes,
    )

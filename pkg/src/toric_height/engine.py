"""Canonical height of a toric variety ``X_{A,alpha}`` via a chain of lifts.

Each lift ``A subset A'`` realises ``X_A`` as a section of ``O(k)`` on
``X_{A'}``.  The arithmetic Bezout formula then gives::

    h(X_A) = k h(X_{A'}) + log|prefactor| deg X_{A'}
             + sum_s mass(s) * contribution(s)

where ``s`` runs over the vertices of the roof function of ``A'`` and

    contribution(s) = sum_j c_j <a'_j, s> + max(s_1, 0)
                      - k max_i (log|alpha_i| + <a'_i, s>).

The chain ends at ``P^n``, whose canonical height is zero.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arrangement import current_measure, log_moduli
from .errors import InvariantViolation, NotInLattice, ValidationError
from .geometry import toric_degree
from .lattice import lattice_index, solve_integer_row, solve_rational_row
from .loglinear import (ApproxLogNumber, LogLinearNumber, log_abs, sign_of,
                        to_approx)
from .toric import (as_coefficients, binomial_generators, lift_config,
                    section_data, section_polynomial, validate_config)

__all__ = ["ChainStep", "StepEvaluation", "HeightValue", "HeightReport",
           "build_chain", "vertex_contribution", "evaluate_step",
           "canonical_height", "alpha_basis", "coerce_alpha",
           "content_corrected_height"]


@dataclass(frozen=True)
class ChainStep:
    index: int
    config: object  # PointConfig A
    lifted: object  # PointConfig A'
    section: object  # SectionData
    degree: int  # deg X_{A'}

    def to_json(self):
        return {"index": self.index, "config": self.config.to_json(),
                "lifted": self.lifted.to_json(), "degree": self.degree,
                "section": self.section.to_json()}


@dataclass
class StepEvaluation:
    step: ChainStep
    height: object
    next_height: object
    prefactor: object
    measure: object
    contributions: tuple
    section_content: object = None

    def to_json(self):
        out = self.step.to_json()
        out.update({
            "height": _value_json(self.height),
            "next_height": _value_json(self.next_height),
            "log_prefactor": _value_json(self.prefactor),
            "measure": self.measure.to_json(),
            "contributions": [_value_json(c) for c in self.contributions],
        })
        if self.section_content is not None:
            out["log_section_content"] = _value_json(self.section_content)
        return out


@dataclass(frozen=True)
class HeightValue:
    value: object
    alpha_basis: tuple = None
    integral: bool = None

    @property
    def exact(self):
        return isinstance(self.value, LogLinearNumber)

    def __float__(self):
        return float(self.value)

    def to_json(self):
        out = {"value": _value_json(self.value),
               "exactness": "exact" if self.exact else "approximate"}
        if self.alpha_basis is not None:
            out["alpha_basis"] = [str(b) for b in self.alpha_basis]
            out["integral"] = self.integral
        return out


@dataclass
class HeightReport:
    config: object
    alpha: tuple
    mode: str
    generators: tuple
    degree: int
    chain: tuple
    height: HeightValue
    field_degree: int = 1
    findings: list = field(default_factory=list)
    oracles: list = field(default_factory=list)
    content_corrected: object = None

    @property
    def value(self):
        return self.height.value

    @property
    def normalized(self):
        return self.height.value / self.field_degree

    def to_json(self):
        return {
            "config": self.config.to_json(),
            "alpha": [str(a) for a in self.alpha],
            "mode": self.mode,
            "generators": [list(g.w) for g in self.generators],
            "generator_polynomials": [str(g) for g in self.generators],
            "degree": self.degree,
            "height": self.height.to_json(),
            "normalization": {"field_degree": self.field_degree,
                              "normalized_height": _value_json(self.normalized)},
            "chain": [ev.to_json() for ev in self.chain],
            "content_corrected_height": _value_json(self.content_corrected),
            "findings": list(self.findings),
            "oracles": list(self.oracles),
        }


def _value_json(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def coerce_alpha(alpha, n, mode="exact"):
    """Coefficients for the requested mode; ``exact`` needs rationals."""
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    alpha = as_coefficients(alpha, n)
    if mode == "exact":
        bad = [a for a in alpha if not isinstance(a, Fraction)]
        if bad:
            raise ValidationError(f"exact mode needs rational coefficients, got {bad[0]!r}")
        return alpha
    return tuple(to_approx(a) for a in alpha)


def build_chain(A):
    """Lift until the configuration has ``n == d`` (the ambient ``P^n``)."""
    steps = []
    cur = A
    while cur.n > cur.d:
        lifted = lift_config(cur)
        steps.append(ChainStep(len(steps), cur, lifted,
                               section_data(cur, lifted), toric_degree(lifted)))
        cur = lifted
    if lattice_index(cur.rows, cur.d) != 1:
        raise InvariantViolation("chain does not end at P^n")
    return tuple(steps)


def _zero_like(x):
    return ApproxLogNumber.zero() if isinstance(x, ApproxLogNumber) else LogLinearNumber.zero()


def _dot(a, s, zero):
    out = zero
    for ai, si in zip(a, s):
        if ai:
            out = out + si * ai
    return out


def vertex_contribution(vertex, section, lifted, logs):
    """Local term ``sum_j c_j <a'_j,s> + max(s_1,0) - k psi(s)`` at a vertex."""
    s = vertex.coords
    zero = _zero_like(logs[0])
    linear = zero
    for cj, a in zip(section.c, lifted.points):
        if cj:
            linear = linear + _dot(a, s, zero) * cj
    jensen = s[0] if sign_of(s[0]) > 0 else zero
    roof = None
    for L, a in zip(logs, lifted.points):
        v = L + _dot(a, s, zero)
        if roof is None or sign_of(v - roof) > 0:
            roof = v
    return linear + jensen - roof * section.k


def _rational_content(values):
    """gcd of rationals: gcd of numerators over lcm of denominators."""
    num, den = 0, 1
    for q in values:
        q = Fraction(q)
        num = gcd(num, q.numerator)
        den = den * q.denominator // gcd(den, q.denominator)
    return Fraction(num, den)


def evaluate_step(step, alpha, next_height, logs=None):
    logs = log_moduli(alpha) if logs is None else logs
    zero = _zero_like(logs[0])
    sd = step.section
    measure = current_measure(step.lifted, alpha)
    if measure.total != step.degree:
        raise InvariantViolation("measure mass differs from the lifted degree")
    prefactor = zero
    for e, L in zip(sd.prefactor_exponents, logs):
        if e:
            prefactor = prefactor + L * e
    contribs = tuple(vertex_contribution(v, sd, step.lifted, logs)
                     for v in measure.atoms)
    h = next_height * sd.k + prefactor * step.degree
    for v, c in zip(measure.atoms, contribs):
        h = h + c * v.local_degree
    content = None
    if isinstance(zero, LogLinearNumber):
        coeffs = [c for c, _ in section_polynomial(sd, alpha)]
        content = log_abs(_rational_content(coeffs))
    return StepEvaluation(step, h, next_height, prefactor, measure, contribs,
                          content)


def alpha_basis(h, alpha):
    """Write ``h`` as ``sum_i b_i log|alpha_i|``.

    Returns ``(b, integral)``, or ``(None, None)`` when ``h`` is outside the
    rational span of the ``log|alpha_i|``.
    """
    logs = [log_abs(a) for a in alpha]
    primes = sorted(set(h.coeffs) | {p for L in logs for p in L.coeffs})
    rows = [tuple(L.coeffs.get(p, 0) for p in primes) for L in logs]
    target = [h.coeffs.get(p, Fraction(0)) for p in primes]
    if all(t.denominator == 1 for t in target):
        try:
            b = solve_integer_row([tuple(int(v) for v in r) for r in rows]
                                  if primes else [() for _ in rows],
                                  [int(t) for t in target])
            return tuple(Fraction(v) for v in b), True
        except NotInLattice:
            pass
    b = solve_rational_row(rows, target)
    if b is None:
        return None, None
    return b, all(v.denominator == 1 for v in b)


def canonical_height(points, alpha, mode="exact", d=None):
    """Canonical height of ``X_{A,alpha}`` in ``P^n``.

    ``points`` is a sequence of integer vectors (or a validated config);
    ``alpha`` holds nonzero rationals in exact mode, or any nonzero complex
    numbers in float mode.
    """
    A = points if hasattr(points, "rows") else validate_config(points, d)
    alpha = coerce_alpha(alpha, A.n, mode)
    logs = log_moduli(alpha)
    zero = _zero_like(logs[0])
    chain = build_chain(A)
    h = zero
    evaluations = []
    for step in reversed(chain):
        ev = evaluate_step(step, alpha, h, logs)
        evaluations.append(ev)
        h = ev.height
    evaluations.reverse()
    findings = []
    if isinstance(h, LogLinearNumber):
        b, integral = alpha_basis(h, alpha)
        if b is None:
            findings.append({"kind": "span_failure",
                             "message": "height is not a rational combination "
                                        "of the log|alpha_i|",
                             "height": h.to_json()})
        elif not integral:
            findings.append({"kind": "integrality_violation",
                             "alpha_basis": [str(v) for v in b],
                             "points": A.to_json(),
                             "alpha": [str(a) for a in alpha]})
        value = HeightValue(h, b, integral)
    else:
        value = HeightValue(h)
    corrected = content_corrected_height(evaluations, h)
    for ev in evaluations:
        if ev.section_content is not None and not ev.section_content.is_zero():
            findings.append({"kind": "section_content",
                             "step": ev.step.index,
                             "log_content": ev.section_content.to_json(),
                             "content_corrected_height": corrected.to_json(),
                             "message": "section has nontrivial content; the "
                                        "formula omits its finite-place "
                                        "contribution"})
        for v in ev.measure.atoms:
            if v.lattice_index != 1:
                findings.append({"kind": "local_lattice_index",
                                 "step": ev.step.index,
                                 "active": list(v.active),
                                 "index": v.lattice_index})
    return HeightReport(
        config=A, alpha=alpha, mode=mode,
        generators=binomial_generators(A) if A.n > A.d else (),
        degree=toric_degree(A), chain=tuple(evaluations), height=value,
        findings=findings, content_corrected=corrected)


def content_corrected_height(evaluations, h):
    """``h`` minus the finite-place content of every section along the chain.

    Step ``j`` enters the final height with weight ``k_0 ... k_{j-1}`` and its
    section integrates against ``deg X_{A'_j}``, so its content ``c_j`` is
    removed as ``k_0 ... k_{j-1} deg(X_{A'_j}) log c_j``.  This is a
    diagnostic: unlike the raw formula it is unchanged when ``alpha`` is
    rescaled or moved by the torus, as the variety itself is.  ``None`` in
    float mode.
    """
    if not isinstance(h, LogLinearNumber):
        return None
    mult = 1
    for ev in evaluations:
        h = h - ev.section_content * (mult * ev.step.degree)
        mult *= ev.step.section.k
    return h

"""Verification campaigns: randomized and deterministic theorem checks.

Each check takes explicit inputs, re-derives both sides of one claimed
property in exact arithmetic, and reports a CheckResult with one of four
verdicts:

  pass            the claim held on this input
  fail            the claim was violated (witness carries the numbers)
  vacuous         the claim quantifies over an empty range here
  not-applicable  a hypothesis is not met (q > 1, degree too low, ...)

Campaign drivers generate seeded input streams over a matroid corpus and
execute the checks, optionally across processes.  Reports are plain data:
serializing with sort_keys produces byte-identical output for identical
(corpus, seed, counts), independent of the worker count.

Theorem tags used on the wire:

  qHR             Hessian of the all-ones weighted polynomial has exactly
                  one positive eigenvalue at positive points (0 < q <= 1)
  cqHR            same for derivatives under strictly log-concave
                  coefficients, nondegenerate on the active variables
  deg2            quadratic-stratum bounds and the two-route evaluation
                  of Z[1], Z[2] through parallel-class data
  ulc             ultra-log-concavity of the stratum sequence at
                  nonnegative points
  mason           count-sequence log-concavity with binomial weights,
                  with its equality characterization
  simplification  the sharper count bound through the simplification,
                  plus the class-size reweighting identity
  logconcavity    concavity of log Z_c on the positive orthant
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import InvalidParametersError, ParseError
from .matrices import SymMatrix
from .matroids import from_json as matroid_from_json
from .matroids import independent_set_counts, simplify, structure
from .potts import (
    dependent_mass,
    derivative_degree,
    elementary_symmetric,
    f_all,
    gradient,
    hessian,
    is_log_concave,
    is_strictly_log_concave,
    validate_alpha,
    validate_coeffs,
    z_weighted_eval,
    zk_all,
)
from .scalars import (
    EXACT,
    FLOAT,
    RAT_ONE,
    coerce_scalar,
    coerce_vector,
    rat,
    scalar_from_json,
    scalar_to_json,
    vector_from_json,
    vector_to_json,
)
from .sampling import (
    adversarial_points,
    child_rng,
    default_c_ratios,
    default_q_grid,
    distinct_alphas,
    log_concave_coeffs,
    sample_log_concave_coeffs,
    sample_nonneg_point,
    sample_positive_point,
    sample_sign_mixed_point,
)
from .spectral import signature

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
NOT_APPLICABLE = "not-applicable"
VERDICTS = (PASS, FAIL, VACUOUS, NOT_APPLICABLE)

TAG_ONE_POSITIVE = "qHR"
TAG_DERIVATIVE_ONE_POSITIVE = "cqHR"
TAG_DEGREE_TWO = "deg2"
TAG_STRATA_ULC = "ulc"
TAG_COUNT_LOG_CONCAVITY = "mason"
TAG_SIMPLIFICATION = "simplification"
TAG_LOG_CONCAVITY = "logconcavity"
ALL_THEOREMS = (
    TAG_ONE_POSITIVE,
    TAG_DERIVATIVE_ONE_POSITIVE,
    TAG_DEGREE_TWO,
    TAG_STRATA_ULC,
    TAG_COUNT_LOG_CONCAVITY,
    TAG_SIMPLIFICATION,
    TAG_LOG_CONCAVITY,
)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single theorem check on one input tuple."""

    theorem: str
    inputs: dict
    verdict: str
    witness: dict | None = None

    @property
    def annotations(self):
        if self.witness and "annotations" in self.witness:
            return tuple(self.witness["annotations"])
        return ()

    def to_json(self):
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "witness": self.witness,
        }

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict):
            raise ParseError(f"check record must be an object, got {type(obj).__name__}")
        try:
            verdict = obj["verdict"]
            if verdict not in VERDICTS:
                raise ParseError(f"unknown verdict {verdict!r}")
            return CheckResult(theorem=obj["theorem"], inputs=obj["inputs"],
                               verdict=verdict, witness=obj.get("witness"))
        except KeyError as exc:
            raise ParseError(f"check record is missing field {exc}") from exc


@dataclass(frozen=True)
class VerificationReport:
    """A campaign's checks plus aggregate counts.

    timing_seconds is measured wall time; it is excluded from to_json unless
    explicitly requested, so the default serialization stays byte-stable.
    """

    campaign: dict
    checks: tuple
    summary: dict
    timing_seconds: float | None = field(default=None, compare=False)

    @property
    def ok(self):
        return self.summary.get(FAIL, 0) == 0

    def to_json(self, include_timing=False):
        out = {
            "campaign": self.campaign,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary,
        }
        if include_timing and self.timing_seconds is not None:
            out["timing_seconds"] = self.timing_seconds
        return out

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict):
            raise ParseError(f"report must be an object, got {type(obj).__name__}")
        try:
            checks = tuple(CheckResult.from_json(c) for c in obj["checks"])
            return VerificationReport(campaign=obj["campaign"], checks=checks,
                                      summary=obj["summary"],
                                      timing_seconds=obj.get("timing_seconds"))
        except KeyError as exc:
            raise ParseError(f"report is missing field {exc}") from exc


def summarize(checks):
    counts = {v: 0 for v in VERDICTS}
    by_theorem = {}
    for c in checks:
        counts[c.verdict] += 1
        per = by_theorem.setdefault(c.theorem, {v: 0 for v in VERDICTS})
        per[c.verdict] += 1
    out = {"total": len(checks)}
    out.update(counts)
    out["by_theorem"] = by_theorem
    return out


def _q_in_range(q):
    """The theorems quantify over 0 < q <= 1; reject q > 1 as out of scope."""
    return q <= 1


def _ones(length):
    return tuple([RAT_ONE] * length)


def _sig_list(sig):
    return [sig.n_pos, sig.n_neg, sig.n_zero]


def _matroid_inputs(matroid, **extra):
    out = {"matroid": matroid.to_json()}
    out.update(extra)
    return out


# ---------------------------------------------------------------- checks


def check_one_positive(matroid, q, w):
    """Hessian of Z_c with all-ones coefficients at a positive point must
    have exactly one positive eigenvalue (degenerate directions allowed)."""
    n = matroid.n
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    inputs = _matroid_inputs(matroid, q=scalar_to_json(qv), w=vector_to_json(wv))
    if n < 2:
        return CheckResult(TAG_ONE_POSITIVE, inputs, NOT_APPLICABLE,
                           {"annotations": ["degree-below-two"]})
    if not _q_in_range(qv):
        return CheckResult(TAG_ONE_POSITIVE, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n + 1 or any(x <= 0 for x in wv):
        raise InvalidParametersError(f"w must be a positive point of length {n + 1}")
    mat = hessian(matroid, _ones(n + 1), qv, [0] * (n + 1), wv, EXACT)
    sig = signature(mat)
    notes = []
    if sig.n_zero:
        notes.append("singular-hessian")
    witness = {"signature": _sig_list(sig)}
    if notes:
        witness["annotations"] = notes
    verdict = PASS if sig.n_pos == 1 else FAIL
    return CheckResult(TAG_ONE_POSITIVE, inputs, verdict, witness)


def check_derivative_one_positive(matroid, c, q, alpha, w):
    """Hessian of a derivative of Z_c under strictly log-concave c: on the
    active variables (index 0 plus the undifferentiated inner ones) the
    signature must be exactly (1, actives - 1, 0)."""
    n = matroid.n
    cv = validate_coeffs(c, n, EXACT)
    if not is_strictly_log_concave(cv):
        raise InvalidParametersError("coefficient sequence must be strictly log-concave")
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    alpha = validate_alpha(alpha, n)
    inputs = _matroid_inputs(matroid, c=vector_to_json(cv), q=scalar_to_json(qv),
                             alpha=list(alpha), w=vector_to_json(wv))
    if not _q_in_range(qv):
        return CheckResult(TAG_DERIVATIVE_ONE_POSITIVE, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n + 1 or any(x <= 0 for x in wv):
        raise InvalidParametersError(f"w must be a positive point of length {n + 1}")
    deg = derivative_degree(matroid, alpha)
    if deg is None or deg < 2:
        return CheckResult(TAG_DERIVATIVE_ONE_POSITIVE, inputs, NOT_APPLICABLE,
                           {"annotations": ["degree-below-two"]})
    active = [0] + [i for i in range(1, n + 1) if alpha[i] == 0]
    mat = hessian(matroid, cv, qv, alpha, wv, EXACT)
    sig = signature(mat.submatrix(active))
    witness = {"signature": _sig_list(sig), "active": active}
    expected = sig.n_pos == 1 and sig.n_zero == 0 and sig.n_neg == len(active) - 1
    return CheckResult(TAG_DERIVATIVE_ONE_POSITIVE, inputs, PASS if expected else FAIL, witness)


def _singleton_q_weights(matroid, q, w):
    """y_i = q^(-rk({i})) w_i: loop weights pass through, others divide by q."""
    qinv = RAT_ONE / q
    return tuple(w[i] * (RAT_ONE if matroid.ranks[1 << i] == 0 else qinv)
                 for i in range(matroid.n))


def check_degree_two(matroid, c, q, w):
    """Quadratic-stratum checks at a nonzero inner point (signs allowed).

    Route equality: Z[1] and Z[2] from subset enumeration must match the
    parallel-class form e_1(y) and e_2(y) - (1-q) * sum over classes of
    e_2(y restricted to the class), with y_i = q^(-rk({i})) w_i.

    Inequality: Z[1]^2 > 2 (c_0 c_2 / c_1^2) (n / (n-1)) Z[2] for every
    w != 0; the coefficient ratio is below one by strict log-concavity.
    At q = 1 the stronger coefficient-free bound
    Z[1]^2 >= 2 (n/(n-1)) e_2(y) is also confirmed (the classical mean
    inequality, valid for arbitrary signs).
    """
    n = matroid.n
    cv = validate_coeffs(c, n, EXACT)
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    inputs = _matroid_inputs(matroid, c=vector_to_json(cv), q=scalar_to_json(qv),
                             w=vector_to_json(wv), aspect="positive-point")
    if n < 2:
        return CheckResult(TAG_DEGREE_TWO, inputs, NOT_APPLICABLE,
                           {"annotations": ["degree-below-two"]})
    t = cv[0] * cv[2] / (cv[1] * cv[1])
    if t >= 1:
        raise InvalidParametersError(
            "coefficient sequence must satisfy c_1^2 > c_0 c_2 for the quadratic bound")
    if not _q_in_range(qv):
        return CheckResult(TAG_DEGREE_TWO, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n:
        raise InvalidParametersError(f"w must have length {n}")
    if all(x == 0 for x in wv):
        raise InvalidParametersError("w must be nonzero")
    strata = zk_all(matroid, qv, wv, EXACT)
    z1, z2 = strata[1], strata[2]
    y = _singleton_q_weights(matroid, qv, wv)
    all_idx = range(1, n + 1)
    e1 = elementary_symmetric(all_idx, 1, y)
    e2 = elementary_symmetric(all_idx, 2, y)
    correction = sum(
        (elementary_symmetric(sorted(cls), 2, y) for cls in structure(matroid).parallel_classes
         if len(cls) >= 2),
        start=rat(0),
    )
    z2_routed = e2 - (1 - qv) * correction
    routes_match = z1 == e1 and z2 == z2_routed
    bound = 2 * t * rat(n, n - 1) * z2
    strict_ok = z1 * z1 > bound
    notes = ["route-match"] if routes_match else []
    newton_ok = True
    if qv == 1:
        newton_ok = e1 * e1 >= 2 * rat(n, n - 1) * e2
        if newton_ok:
            notes.append("mean-bound-at-q1")
    witness = {
        "z1": scalar_to_json(z1),
        "z2": scalar_to_json(z2),
        "bound": scalar_to_json(bound),
        "routes_match": routes_match,
    }
    if notes:
        witness["annotations"] = notes
    verdict = PASS if (routes_match and strict_ok and newton_ok) else FAIL
    return CheckResult(TAG_DEGREE_TWO, inputs, verdict, witness)


def check_degree_two_zero_line(matroid, q, w):
    """On the hyperplane Z[1] = 0, every nonzero point must give Z[2] < 0."""
    n = matroid.n
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    inputs = _matroid_inputs(matroid, q=scalar_to_json(qv), w=vector_to_json(wv),
                             aspect="zero-line")
    if n < 2:
        return CheckResult(TAG_DEGREE_TWO, inputs, NOT_APPLICABLE,
                           {"annotations": ["degree-below-two"]})
    if not _q_in_range(qv):
        return CheckResult(TAG_DEGREE_TWO, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n:
        raise InvalidParametersError(f"w must have length {n}")
    if all(x == 0 for x in wv):
        raise InvalidParametersError("the zero-line point must be nonzero")
    strata = zk_all(matroid, qv, wv, EXACT)
    if strata[1] != 0:
        raise InvalidParametersError("the point does not lie on the Z[1] = 0 hyperplane")
    witness = {"z2": scalar_to_json(strata[2])}
    return CheckResult(TAG_DEGREE_TWO, inputs, PASS if strata[2] < 0 else FAIL, witness)


def check_strata_ultra_log_concave(matroid, q, w):
    """m(n-m) Z[m]^2 >= (m+1)(n-m+1) Z[m-1] Z[m+1] for 1 <= m <= n-1 at a
    nonnegative point.  Indices with equality are annotated; at q = 1 and
    the all-ones point every index is tight."""
    n = matroid.n
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    inputs = _matroid_inputs(matroid, q=scalar_to_json(qv), w=vector_to_json(wv))
    if n < 2:
        return CheckResult(TAG_STRATA_ULC, inputs, VACUOUS,
                           {"annotations": ["no-interior-indices"]})
    if not _q_in_range(qv):
        return CheckResult(TAG_STRATA_ULC, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n or any(x < 0 for x in wv):
        raise InvalidParametersError(f"w must be a nonnegative point of length {n}")
    strata = zk_all(matroid, qv, wv, EXACT)
    notes = []
    violations = []
    tight_nonzero = 0
    for m in range(1, n):
        lhs = m * (n - m) * strata[m] * strata[m]
        rhs = (m + 1) * (n - m + 1) * strata[m - 1] * strata[m + 1]
        if lhs < rhs:
            violations.append({"m": m, "lhs": scalar_to_json(lhs), "rhs": scalar_to_json(rhs)})
        elif lhs == rhs:
            if lhs == 0:
                notes.append(f"vacuous-at-{m}")
            else:
                notes.append(f"equality-at-{m}")
                tight_nonzero += 1
    if tight_nonzero == n - 1:
        notes.append("zero-slack-everywhere")
    witness = {}
    if notes:
        witness["annotations"] = notes
    if violations:
        witness["violations"] = violations
    return CheckResult(TAG_STRATA_ULC, inputs, FAIL if violations else PASS, witness or None)


def check_count_log_concavity(matroid):
    """Binomially weighted log-concavity of the independent-set counts.

    Two independent enumeration routes must agree on the counts; then
    k(n-k) I_k^2 >= (k+1)(n-k+1) I_{k-1} I_{k+1} for 1 <= k <= n-1, and a
    nonzero equality holds exactly when every (k+1)-subset is independent.
    """
    n = matroid.n
    inputs = _matroid_inputs(matroid)
    counts = independent_set_counts(matroid)
    recount = tuple(int(x) for x in f_all(matroid, _ones(n), EXACT))
    if recount != counts:
        return CheckResult(TAG_COUNT_LOG_CONCAVITY, inputs, FAIL,
                           {"counts": list(counts), "recount": list(recount),
                            "annotations": ["route-mismatch"]})
    if n < 2:
        return CheckResult(TAG_COUNT_LOG_CONCAVITY, inputs, VACUOUS,
                           {"counts": list(counts),
                            "annotations": ["route-match", "no-interior-indices"]})
    notes = ["route-match"]
    violations = []
    for k in range(1, n):
        lhs = k * (n - k) * counts[k] * counts[k]
        rhs = (k + 1) * (n - k + 1) * counts[k - 1] * counts[k + 1]
        saturated = counts[k + 1] == math.comb(n, k + 1)
        if lhs < rhs:
            violations.append({"k": k, "lhs": lhs, "rhs": rhs})
            continue
        if lhs == rhs:
            if lhs == 0:
                notes.append(f"vacuous-at-{k}")
                continue
            notes.append(f"equality-at-{k}")
            if not saturated:
                violations.append({"k": k, "reason": "equality-without-saturation",
                                   "count": counts[k + 1], "expected": math.comb(n, k + 1)})
        elif saturated:
            violations.append({"k": k, "reason": "saturation-without-equality",
                               "lhs": lhs, "rhs": rhs})
    witness = {"counts": list(counts), "annotations": notes}
    if violations:
        witness["violations"] = violations
    return CheckResult(TAG_COUNT_LOG_CONCAVITY, inputs, FAIL if violations else PASS, witness)


def binomial_dominance(ell, n, m):
    """C(ell,m)^2 C(n,m-1) C(n,m+1) >= C(n,m)^2 C(ell,m-1) C(ell,m+1):
    the binomial log-concavity ratio only tightens as the size shrinks."""
    lhs = math.comb(ell, m) ** 2 * math.comb(n, m - 1) * math.comb(n, m + 1)
    rhs = math.comb(n, m) ** 2 * math.comb(ell, m - 1) * math.comb(ell, m + 1)
    return lhs >= rhs


def check_simplification_bound(matroid):
    """Count bounds through the simplification.

    With ell = number of rank-one classes, the counts must satisfy the
    sharper bound m(ell-m) I_m^2 >= (m+1)(ell-m+1) I_{m-1} I_{m+1} for
    1 <= m <= ell-1, which dominates the plain n-version.  Independently,
    I_m must equal the m-th stratum of the simplification's independent-set
    polynomial at the class-size point, and I_m = 0 for m > ell.
    """
    n = matroid.n
    inputs = _matroid_inputs(matroid)
    counts = independent_set_counts(matroid)
    info = structure(matroid)
    classes = sorted(info.parallel_classes, key=min)
    ell = len(classes)
    simple = simplify(matroid)
    sizes = tuple(rat(len(cls)) for cls in classes)
    rerouted = f_all(simple, sizes, EXACT)
    notes = []
    violations = []
    for m in range(n + 1):
        expected = int(rerouted[m]) if m <= simple.n else 0
        if counts[m] != expected:
            violations.append({"m": m, "count": counts[m], "rerouted": expected,
                               "reason": "class-size-route-mismatch"})
    if not violations:
        notes.append("class-size-route-match")
    for m in range(1, ell):
        lhs = m * (ell - m) * counts[m] * counts[m]
        rhs = (m + 1) * (ell - m + 1) * counts[m - 1] * counts[m + 1]
        if lhs < rhs:
            violations.append({"m": m, "lhs": lhs, "rhs": rhs,
                               "reason": "simple-size-bound"})
        elif lhs == rhs:
            notes.append(f"equality-at-{m}" if lhs else f"vacuous-at-{m}")
        if not binomial_dominance(ell, n, m):
            violations.append({"m": m, "reason": "binomial-dominance"})
    if ell < 2:
        notes.append("no-interior-indices")
    witness = {"counts": list(counts), "simple_size": ell, "annotations": notes}
    if violations:
        witness["violations"] = violations
    return CheckResult(TAG_SIMPLIFICATION, inputs, FAIL if violations else PASS, witness)


def check_log_concavity_at(matroid, c, q, w):
    """log Z_c is concave at a positive point: the matrix
    N = Z * H - grad grad^T must have no positive eigenvalue, and along the
    base ray w^T N w = -n Z^2 exactly (homogeneity of degree n)."""
    n = matroid.n
    cv = validate_coeffs(c, n, EXACT)
    if not is_log_concave(cv):
        raise InvalidParametersError("coefficient sequence must be log-concave")
    qv = coerce_scalar(q, EXACT)
    wv = coerce_vector(w, EXACT)
    inputs = _matroid_inputs(matroid, c=vector_to_json(cv), q=scalar_to_json(qv),
                             w=vector_to_json(wv))
    if not _q_in_range(qv):
        return CheckResult(TAG_LOG_CONCAVITY, inputs, NOT_APPLICABLE,
                           {"annotations": ["q-above-one"]})
    if len(wv) != n + 1 or any(x <= 0 for x in wv):
        raise InvalidParametersError(f"w must be a positive point of length {n + 1}")
    zero_alpha = [0] * (n + 1)
    z = z_weighted_eval(matroid, cv, qv, wv, EXACT)
    grad = gradient(matroid, cv, qv, zero_alpha, wv, EXACT)
    hess = hessian(matroid, cv, qv, zero_alpha, wv, EXACT)
    entries = tuple(
        tuple(z * hess.entries[i][j] - grad[i] * grad[j] for j in range(n + 1))
        for i in range(n + 1)
    )
    curvature = SymMatrix(entries)
    sig = signature(curvature)
    ray = sum(wv[i] * sum(entries[i][j] * wv[j] for j in range(n + 1)) for i in range(n + 1))
    ray_ok = ray == -n * z * z
    notes = ["ray-identity"] if ray_ok else []
    witness = {"signature": _sig_list(sig), "ray": scalar_to_json(ray)}
    if notes:
        witness["annotations"] = notes
    verdict = PASS if (sig.n_pos == 0 and ray_ok) else FAIL
    return CheckResult(TAG_LOG_CONCAVITY, inputs, verdict, witness)


def log_slice_second_difference(matroid, c, q, w, direction, rel_step=0.25):
    """Float-mode concavity probe: central second difference of
    t -> log Z_c(w + t * direction) at t = 0; concavity makes this <= 0 up
    to roundoff.  The step keeps the probed points strictly positive."""
    n = matroid.n
    wf = [float(x) for x in coerce_vector(w, FLOAT)]
    df = [float(x) for x in coerce_vector(direction, FLOAT)]
    if len(wf) != n + 1 or len(df) != n + 1:
        raise InvalidParametersError(f"w and direction must have length {n + 1}")
    if any(x <= 0 for x in wf):
        raise InvalidParametersError("w must be strictly positive")
    if all(x == 0 for x in df):
        raise InvalidParametersError("direction must be nonzero")
    h = min((wf[i] / abs(df[i]) for i in range(n + 1) if df[i]), default=1.0)
    h = min(1.0, rel_step * h)
    cf = [float(x) for x in c]
    qf = float(q)

    def logz(point):
        val = z_weighted_eval(matroid, cf, qf, point, FLOAT)
        if val <= 0:
            raise InvalidParametersError("log Z is undefined at a probed point")
        return math.log(val)

    plus = [wf[i] + h * df[i] for i in range(n + 1)]
    minus = [wf[i] - h * df[i] for i in range(n + 1)]
    return logz(plus) + logz(minus) - 2.0 * logz(wf)


# ----------------------------------------------------------- campaigns


@dataclass(frozen=True)
class CampaignConfig:
    """Knobs for run_campaign; samples scales every randomized stream.

    q_grid overrides the default q cycle for the campaigns that sweep one
    (empty tuple = default grid); count-based checks ignore it."""

    theorems: tuple = ALL_THEOREMS
    seed: int = 0
    samples: int = 5
    workers: int = 1
    corpus_label: str = "default"
    q_grid: tuple = ()


def _call_task(task):
    fn, args = task
    return fn(*args)


def _execute(tasks, workers):
    if workers <= 1 or len(tasks) < 2:
        return [fn(*args) for fn, args in tasks]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_call_task, tasks, chunksize=chunk))


def campaign_one_positive(corpus, seed=0, samples=5, q_grid=None,
                          include_adversarial=True, workers=1):
    qs = default_q_grid() if q_grid is None else tuple(q_grid)
    tasks = []
    for mi, matroid in enumerate(corpus):
        dim = matroid.n + 1
        for qi, q in enumerate(qs):
            points = list(adversarial_points(dim)) if include_adversarial else []
            points += [sample_positive_point(child_rng(seed, 11, mi, qi, j), dim)
                       for j in range(samples)]
            tasks.extend((check_one_positive, (matroid, q, w)) for w in points)
    return _execute(tasks, workers)


def campaign_derivative_one_positive(corpus, seed=0, coeff_sets=5, alphas=10,
                                     pairs=10, q_grid=None, workers=1):
    ratios = default_c_ratios()
    qs = default_q_grid() if q_grid is None else tuple(q_grid)
    tasks = []
    for mi, matroid in enumerate(corpus):
        n = matroid.n
        coeffs = [log_concave_coeffs(n, ratios[i % len(ratios)])
                  for i in range(min(coeff_sets, len(ratios)))]
        for i in range(len(coeffs), coeff_sets):
            coeffs.append(sample_log_concave_coeffs(child_rng(seed, 20, mi, i), n))
        alpha_list = distinct_alphas(child_rng(seed, 21, mi).randrange(2 ** 32),
                                     n, alphas, min_degree=2)
        for ci, c in enumerate(coeffs):
            for ai, alpha in enumerate(alpha_list):
                for t in range(pairs):
                    rng = child_rng(seed, 22, mi, ci, ai, t)
                    q = qs[t % len(qs)]
                    w = sample_positive_point(rng, n + 1)
                    tasks.append((check_derivative_one_positive, (matroid, c, q, alpha, w)))
    return _execute(tasks, workers)


def _zero_line_point(matroid, q, rng, attempts=32):
    """Nonzero inner point with Z[1] = 0, built by projecting a sign-mixed
    sample along the all-ones direction (Z[1] is linear with positive
    singleton coefficients, so the projection always lands on the plane)."""
    n = matroid.n
    lam = [RAT_ONE / q if matroid.ranks[1 << i] else RAT_ONE for i in range(n)]
    total = sum(lam, start=rat(0))
    for _ in range(attempts):
        v = sample_sign_mixed_point(rng, n)
        s = sum((lam[i] * v[i] for i in range(n)), start=rat(0))
        w = tuple(total * v[i] - s for i in range(n))
        if any(x != 0 for x in w):
            return w
    raise InvalidParametersError("could not sample a nonzero point on the Z[1] = 0 plane")


def campaign_degree_two(corpus, seed=0, triples=5, points=5, q_grid=None,
                        workers=1):
    qs = default_q_grid() if q_grid is None else tuple(q_grid)
    tasks = []
    for mi, matroid in enumerate(corpus):
        n = matroid.n
        if n < 2:
            continue
        for j in range(triples):
            rng = child_rng(seed, 31, mi, j)
            c = sample_log_concave_coeffs(rng, n)
            q = qs[j % len(qs)]
            # the strict bound quantifies over all nonzero w: alternate
            # positive and sign-mixed samples
            w = sample_positive_point(rng, n) if j % 2 == 0 else \
                sample_sign_mixed_point(rng, n)
            tasks.append((check_degree_two, (matroid, c, q, w)))
        for j in range(points):
            rng = child_rng(seed, 32, mi, j)
            q = qs[j % len(qs)]
            w = _zero_line_point(matroid, q, rng)
            tasks.append((check_degree_two_zero_line, (matroid, q, w)))
    return _execute(tasks, workers)


def campaign_strata_ulc(corpus, seed=0, samples=5, q_grid=None, workers=1):
    qs = default_q_grid() if q_grid is None else tuple(q_grid)
    tasks = []
    for mi, matroid in enumerate(corpus):
        n = matroid.n
        # reference point first: q = 1 at all-ones is tight at every index
        tasks.append((check_strata_ultra_log_concave, (matroid, rat(1), _ones(n))))
        for j in range(samples):
            rng = child_rng(seed, 41, mi, j)
            q = qs[j % len(qs)]
            w = sample_nonneg_point(rng, n)
            tasks.append((check_strata_ultra_log_concave, (matroid, q, w)))
    return _execute(tasks, workers)


def campaign_count_log_concavity(corpus, workers=1):
    return _execute([(check_count_log_concavity, (m,)) for m in corpus], workers)


def campaign_simplification(corpus, workers=1):
    return _execute([(check_simplification_bound, (m,)) for m in corpus], workers)


def campaign_log_concavity(corpus, seed=0, samples=5, q_grid=None, workers=1):
    qs = default_q_grid() if q_grid is None else tuple(q_grid)
    tasks = []
    for mi, matroid in enumerate(corpus):
        n = matroid.n
        for j in range(samples):
            rng = child_rng(seed, 71, mi, j)
            c = _ones(n + 1) if j == 0 else sample_log_concave_coeffs(rng, n)
            q = qs[j % len(qs)]
            w = sample_positive_point(rng, n + 1)
            tasks.append((check_log_concavity_at, (matroid, c, q, w)))
    return _execute(tasks, workers)


_CAMPAIGNS = {
    TAG_ONE_POSITIVE: lambda corpus, cfg: campaign_one_positive(
        corpus, seed=cfg.seed, samples=cfg.samples, q_grid=cfg.q_grid or None,
        workers=cfg.workers),
    TAG_DERIVATIVE_ONE_POSITIVE: lambda corpus, cfg: campaign_derivative_one_positive(
        corpus, seed=cfg.seed, coeff_sets=min(5, cfg.samples), alphas=cfg.samples,
        pairs=cfg.samples, q_grid=cfg.q_grid or None, workers=cfg.workers),
    TAG_DEGREE_TWO: lambda corpus, cfg: campaign_degree_two(
        corpus, seed=cfg.seed, triples=cfg.samples, points=cfg.samples,
        q_grid=cfg.q_grid or None, workers=cfg.workers),
    TAG_STRATA_ULC: lambda corpus, cfg: campaign_strata_ulc(
        corpus, seed=cfg.seed, samples=cfg.samples, q_grid=cfg.q_grid or None,
        workers=cfg.workers),
    TAG_COUNT_LOG_CONCAVITY: lambda corpus, cfg: campaign_count_log_concavity(
        corpus, workers=cfg.workers),
    TAG_SIMPLIFICATION: lambda corpus, cfg: campaign_simplification(
        corpus, workers=cfg.workers),
    TAG_LOG_CONCAVITY: lambda corpus, cfg: campaign_log_concavity(
        corpus, seed=cfg.seed, samples=cfg.samples, q_grid=cfg.q_grid or None,
        workers=cfg.workers),
}


def run_campaign(corpus, config=None):
    """Run the configured campaigns over a corpus and aggregate a report.

    The worker count affects wall time only: tasks are generated and merged
    in a fixed order, so the report content is a function of (corpus, seed,
    samples, theorems) alone.
    """
    cfg = config or CampaignConfig()
    unknown = [t for t in cfg.theorems if t not in _CAMPAIGNS]
    if unknown:
        raise InvalidParametersError(f"unknown theorem tags {unknown!r}")
    start = time.perf_counter()
    checks = []
    for tag in ALL_THEOREMS:
        if tag in cfg.theorems:
            checks.extend(_CAMPAIGNS[tag](corpus, cfg))
    elapsed = time.perf_counter() - start
    campaign = {
        "name": "verification-campaign",
        "corpus": cfg.corpus_label,
        "matroids": len(corpus),
        "seed": cfg.seed,
        "samples": cfg.samples,
        "theorems": [t for t in ALL_THEOREMS if t in cfg.theorems],
    }
    if cfg.q_grid:
        campaign["q_grid"] = [scalar_to_json(q) for q in cfg.q_grid]
    return VerificationReport(campaign=campaign, checks=tuple(checks),
                              summary=summarize(checks), timing_seconds=elapsed)


# -------------------------------------------------------------- replay


def _replay_scalar(inputs, key):
    return scalar_from_json(inputs[key])


def replay_check(check):
    """Re-run a stored check from its recorded inputs and return the fresh
    result; replaying a report must reproduce every verdict and witness."""
    if isinstance(check, dict):
        check = CheckResult.from_json(check)
    inputs = check.inputs
    matroid = matroid_from_json(inputs["matroid"])
    tag = check.theorem
    if tag == TAG_ONE_POSITIVE:
        return check_one_positive(matroid, _replay_scalar(inputs, "q"),
                                  vector_from_json(inputs["w"]))
    if tag == TAG_DERIVATIVE_ONE_POSITIVE:
        return check_derivative_one_positive(
            matroid, vector_from_json(inputs["c"]), _replay_scalar(inputs, "q"),
            tuple(inputs["alpha"]), vector_from_json(inputs["w"]))
    if tag == TAG_DEGREE_TWO:
        if inputs.get("aspect") == "zero-line":
            return check_degree_two_zero_line(matroid, _replay_scalar(inputs, "q"),
                                              vector_from_json(inputs["w"]))
        return check_degree_two(matroid, vector_from_json(inputs["c"]),
                                _replay_scalar(inputs, "q"), vector_from_json(inputs["w"]))
    if tag == TAG_STRATA_ULC:
        return check_strata_ultra_log_concave(matroid, _replay_scalar(inputs, "q"),
                                              vector_from_json(inputs["w"]))
    if tag == TAG_COUNT_LOG_CONCAVITY:
        return check_count_log_concavity(matroid)
    if tag == TAG_SIMPLIFICATION:
        return check_simplification_bound(matroid)
    if tag == TAG_LOG_CONCAVITY:
        return check_log_concavity_at(matroid, vector_from_json(inputs["c"]),
                                      _replay_scalar(inputs, "q"),
                                      vector_from_json(inputs["w"]))
    raise InvalidParametersError(f"cannot replay theorem tag {tag!r}")


def replay_report(report):
    """Replay every check in a report; returns the list of (index, stored,
    fresh) triples where the fresh run disagrees."""
    mismatches = []
    for i, stored in enumerate(report.checks):
        fresh = replay_check(stored)
        if fresh.verdict != stored.verdict or fresh.witness != stored.witness:
            mismatches.append((i, stored, fresh))
    return mismatches


def dependent_mass_ratio(matroid, m, w, q):
    """Ratio of the stratum-limit residual to q times the nullity-one mass;
    tends to 1 as q -> 0 whenever some m-subset has nullity exactly one."""
    from .potts import f_limit_residual

    mass = dependent_mass(matroid, m, w, nullity=1, mode=EXACT)
    if mass == 0:
        raise InvalidParametersError("no m-subset of nullity one: the leading term vanishes")
    qv = coerce_scalar(q, EXACT)
    return f_limit_residual(matroid, m, w, qv, EXACT) / (qv * mass)

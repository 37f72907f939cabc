"""Randomized instance generation and the theorem-verification experiments.

Instances follow the adapted-basis convention: K = sum_j p^{a_j} Z e_j is
diagonal, so the structural condition xi(K) in p^n L is the per-column
divisibility check, and a congruent partner xi' = xi + Delta (with
Delta_{ij} divisible by p^{max(a_i, n - a_j)}) induces the same endomorphism
of L/K while preserving the structural condition.

Per-trial seeds come from trial_seed(master_seed, index) (SplitMix64, see
rng.py), so a config determines every report byte; trials are independent
and may run in parallel without changing the output.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .bounds import c_exact, proposition_hypotheses, resolve_kappa, hilbert_profile
from .lattice import DivisorProfile, IntMatrix, check_xi_condition, profile_mod
from .newton import (
    ConsistencyError,
    EigenvectorError,
    HenselError,
    char_poly,
    commuting_eigenvalue,
    eigenvector_mod,
    hensel_slope_root,
    newton_polygon,
    slope_to_string,
)
from .padics import INFINITY, is_prime, padic_valuation
from .rng import SplitMix64, trial_seed

POLYNOMIAL_PSI = "POLYNOMIAL_PSI"
PLANTED = "PLANTED"
_GENERATORS = (POLYNOMIAL_PSI, PLANTED)

# planted eigenvalue valuations are drawn from [0, _PLANTED_VAL_BOUND]
_PLANTED_VAL_BOUND = 6

ACCEPTED = "ACCEPTED"
REJECTED = "REJECTED"
VIOLATION = "VIOLATION"


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    p: int
    profile: DivisorProfile
    alpha: int
    kappa: object  # positive int or "auto"
    trials: int
    master_seed: int
    generator: str
    max_attempts: int
    entry_bound: int
    precision_guard: int
    nprime: int | None
    profile_doc: dict

    def working_precision(self, kappa: int) -> int:
        return self.profile.n + 2 * self.alpha + kappa + self.precision_guard


_CONFIG_FIELDS = {
    "p", "profile", "alpha", "kappa", "trials", "master_seed",
    "generator", "max_attempts", "entry_bound", "precision_guard", "nprime",
}
_PROFILE_FIELDS_HILBERT = {"kind", "d", "h", "n", "max_rank"}
_PROFILE_FIELDS_EXPLICIT = {"kind", "n", "a"}


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def profile_from_document(doc) -> DivisorProfile:
    _require(isinstance(doc, dict), "profile must be an object")
    kind = doc.get("kind")
    if kind == "hilbert":
        unknown = set(doc) - _PROFILE_FIELDS_HILBERT
        _require(not unknown, f"unknown profile fields: {sorted(unknown)}")
        for key in ("d", "h", "n"):
            _require(isinstance(doc.get(key), int) and doc[key] >= 1,
                     f"profile.{key} must be a positive integer")
        profile = hilbert_profile(doc["d"], doc["h"], doc["n"])
        max_rank = doc.get("max_rank")
        if max_rank is not None:
            _require(isinstance(max_rank, int) and max_rank >= 1,
                     "profile.max_rank must be a positive integer")
            if profile.r > max_rank:
                profile = DivisorProfile(n=profile.n, a=profile.a[:max_rank])
        return profile
    if kind == "explicit":
        unknown = set(doc) - _PROFILE_FIELDS_EXPLICIT
        _require(not unknown, f"unknown profile fields: {sorted(unknown)}")
        _require(isinstance(doc.get("n"), int), "profile.n must be an integer")
        _require(isinstance(doc.get("a"), list) and doc["a"], "profile.a must be a nonempty list")
        try:
            return DivisorProfile(n=doc["n"], a=tuple(doc["a"]))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"profile.kind must be 'hilbert' or 'explicit', got {kind!r}")


def config_from_document(doc) -> ExperimentConfig:
    _require(isinstance(doc, dict), "config must be an object")
    unknown = set(doc) - _CONFIG_FIELDS
    _require(not unknown, f"unknown config fields: {sorted(unknown)}")
    for key in ("p", "profile", "alpha", "trials", "master_seed"):
        _require(key in doc, f"missing config field: {key}")
    p = doc["p"]
    _require(isinstance(p, int) and is_prime(p), f"p must be prime, got {p!r}")
    profile = profile_from_document(doc["profile"])
    alpha = doc["alpha"]
    _require(isinstance(alpha, int) and alpha >= 0, "alpha must be a nonnegative integer")
    kappa = doc.get("kappa", "auto")
    _require(kappa == "auto" or (isinstance(kappa, int) and kappa >= 1),
             "kappa must be 'auto' or a positive integer")
    trials = doc["trials"]
    _require(isinstance(trials, int) and trials >= 1, "trials must be a positive integer")
    master_seed = doc["master_seed"]
    _require(isinstance(master_seed, int), "master_seed must be an integer")
    generator = doc.get("generator", POLYNOMIAL_PSI)
    _require(generator in _GENERATORS, f"generator must be one of {_GENERATORS}")
    max_attempts = doc.get("max_attempts", 64)
    _require(isinstance(max_attempts, int) and max_attempts >= 1,
             "max_attempts must be a positive integer")
    entry_bound = doc.get("entry_bound", 2)
    _require(isinstance(entry_bound, int) and entry_bound >= 0,
             "entry_bound must be a nonnegative integer")
    precision_guard = doc.get("precision_guard", 8)
    _require(isinstance(precision_guard, int) and precision_guard >= 0,
             "precision_guard must be a nonnegative integer")
    nprime = doc.get("nprime")
    if nprime is not None:
        _require(isinstance(nprime, int) and 1 <= nprime <= profile.n,
                 f"nprime must satisfy 1 <= nprime <= {profile.n}")
    return ExperimentConfig(
        p=p, profile=profile, alpha=alpha, kappa=kappa, trials=trials,
        master_seed=master_seed & ((1 << 64) - 1), generator=generator,
        max_attempts=max_attempts, entry_bound=entry_bound,
        precision_guard=precision_guard, nprime=nprime,
        profile_doc=dict(doc["profile"]),
    )


def read_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return config_from_document(doc)


# --- generators ----------------------------------------------------------------

def random_unimodular(r: int, rng: SplitMix64, coeff_bound: int = 2) -> tuple:
    """(U, U^{-1}) built from 2r random shears and swaps; det is +-1 by construction."""
    if r == 1:
        s = rng.choice((1, -1))
        return IntMatrix.from_rows([[s]]), IntMatrix.from_rows([[s]])
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    Ui = [row[:] for row in U]
    for _ in range(2 * r):
        i = rng.randint(0, r - 1)
        j = rng.randint(0, r - 2)
        if j >= i:
            j += 1
        q = rng.randint(-coeff_bound, coeff_bound)
        if q == 0:
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]
        else:
            # U <- E U with E = I + q e_i e_j^T; Ui <- Ui E^{-1}
            for k in range(r):
                U[i][k] += q * U[j][k]
            for row in Ui:
                row[j] -= q * row[i]
    return IntMatrix.from_rows(U), IntMatrix.from_rows(Ui)


def gen_xi(profile: DivisorProfile, p: int, entry_bound: int, rng: SplitMix64) -> IntMatrix:
    """Random operator with xi(K) in p^n L by construction: column j is p^{n-a_j} times
    a uniform draw from [-p^entry_bound, p^entry_bound]."""
    bound = p ** entry_bound
    n = profile.n
    rows = []
    for _ in range(profile.r):
        rows.append([p ** (n - aj) * rng.randint(-bound, bound) for aj in profile.a])
    return IntMatrix.from_rows(rows)


def gen_congruent_pair(
    xi: IntMatrix,
    profile: DivisorProfile,
    p: int,
    entry_bound: int,
    rng: SplitMix64,
    min_exponent: int = 0,
) -> IntMatrix:
    """xi + Delta with Delta_{ij} divisible by p^{max(a_i, n - a_j, min_exponent)}.

    The max(a_i, .) part makes Delta map L into K (same induced endomorphism
    of L/K); the max(., n - a_j) part preserves xi(K) in p^n L; min_exponent
    adds the entrywise p^{n'} congruence the constancy experiment needs.
    """
    bound = p ** entry_bound
    n = profile.n
    rows = []
    for i, ai in enumerate(profile.a):
        row = []
        for j, aj in enumerate(profile.a):
            exp = max(ai, n - aj, min_exponent)
            row.append(xi[i, j] + p ** exp * rng.randint(-bound, bound))
        rows.append(row)
    return IntMatrix.from_rows(rows)


def poly_of_matrix(coeffs, A: IntMatrix) -> IntMatrix:
    """sum_k coeffs[k] A^k by Horner."""
    acc = IntMatrix.zero(A.r)
    ident = IntMatrix.identity(A.r)
    for c in reversed(coeffs):
        acc = acc * A + ident.scale(c)
    return acc


def gen_psi_polynomial(
    xi: IntMatrix, xi_prime: IntMatrix, p: int, entry_bound: int, rng: SplitMix64
) -> tuple:
    """One shared integer polynomial q of degree < r applied to both operators.

    Commutation is automatic, and the quotient endomorphisms agree because
    those of xi and xi' do.
    """
    bound = p ** entry_bound
    coeffs = [rng.randint(-bound, bound) for _ in range(xi.r)]
    return poly_of_matrix(coeffs, xi), poly_of_matrix(coeffs, xi_prime), tuple(coeffs)


@dataclass(frozen=True)
class InstancePair:
    xi: IntMatrix
    xi_prime: IntMatrix
    psi: IntMatrix
    psi_prime: IntMatrix
    profile: DivisorProfile
    seed: int
    # PLANTED ground truth (None for POLYNOMIAL_PSI); q coefficients otherwise
    planted_valuations: tuple | None = None
    planted_psi_diagonal: tuple | None = None
    psi_coeffs: tuple | None = None


def gen_planted_quadruple(
    profile: DivisorProfile,
    p: int,
    alpha: int,
    entry_bound: int,
    rng: SplitMix64,
    max_attempts: int,
    seed: int,
    min_exponent: int = 0,
) -> InstancePair | None:
    """Conjugated commuting diagonals with exactly one slope-alpha eigenvalue.

    xi = U D U^{-1}, psi = U E U^{-1} share the conjugator, and the primed
    side shifts both diagonals by multiples of p^n, which realizes the pair
    constraints for every profile. Attempts whose xi fails the structural
    check are rejected; None means the attempt budget ran out.
    """
    r = profile.r
    n = profile.n
    bound = p ** entry_bound
    val_choices = [v for v in range(_PLANTED_VAL_BOUND + 1) if v != alpha]
    for _ in range(max_attempts):
        U, Ui = random_unimodular(r, rng)
        slot = rng.randint(0, r - 1)
        vals = [rng.choice(val_choices) for _ in range(r)]
        vals[slot] = alpha
        diag = [p ** v * rng.unit(p, bound) for v in vals]
        xi = U * IntMatrix.diagonal(diag) * Ui
        if not check_xi_condition(xi, profile, p):
            continue
        psi_diag = [rng.randint(-bound, bound) for _ in range(r)]
        psi = U * IntMatrix.diagonal(psi_diag) * Ui
        shift = p ** max(n, min_exponent)
        diag_prime = [x + shift * rng.randint(-bound, bound) for x in diag]
        psi_diag_prime = [x + p ** n * rng.randint(-bound, bound) for x in psi_diag]
        xi_prime = U * IntMatrix.diagonal(diag_prime) * Ui
        psi_prime = U * IntMatrix.diagonal(psi_diag_prime) * Ui
        if not check_xi_condition(xi_prime, profile, p):
            raise AssertionError("p^n-shifted planted operator lost the structural condition")
        return InstancePair(
            xi=xi, xi_prime=xi_prime, psi=psi, psi_prime=psi_prime,
            profile=profile, seed=seed,
            planted_valuations=tuple(vals), planted_psi_diagonal=tuple(psi_diag),
        )
    return None


def same_quotient_action(x: IntMatrix, y: IntMatrix, profile: DivisorProfile, p: int) -> bool:
    """True iff x and y induce the same endomorphism of L/K (row i read mod p^{a_i})."""
    for i, ai in enumerate(profile.a):
        m = p ** ai
        for j in range(profile.r):
            if (x[i, j] - y[i, j]) % m != 0:
                return False
    return True


def _assert_pair_invariants(pair: InstancePair, p: int, min_exponent: int = 0) -> None:
    profile = pair.profile
    n = profile.n
    if not check_xi_condition(pair.xi, profile, p):
        raise AssertionError("xi violates the structural condition")
    if not check_xi_condition(pair.xi_prime, profile, p):
        raise AssertionError("xi' violates the structural condition")
    for i, ai in enumerate(profile.a):
        for j, aj in enumerate(profile.a):
            exp = max(ai, n - aj, min_exponent)
            if (pair.xi[i, j] - pair.xi_prime[i, j]) % p ** exp != 0:
                raise AssertionError(f"pair difference at ({i},{j}) misses p^{exp}")
    if not same_quotient_action(pair.xi, pair.xi_prime, profile, p):
        raise AssertionError("pair does not agree on L/K")
    if pair.xi * pair.psi != pair.psi * pair.xi:
        raise AssertionError("xi and psi do not commute")
    if pair.xi_prime * pair.psi_prime != pair.psi_prime * pair.xi_prime:
        raise AssertionError("xi' and psi' do not commute")


# --- trials ---------------------------------------------------------------------

@dataclass(frozen=True)
class TrialReport:
    index: int
    seed: int
    status: str
    reason: str | None = None
    alpha: int | None = None
    kappa: int | None = None
    census: tuple | None = None
    census_prime: tuple | None = None
    lam: int | None = None
    lam_prime: int | None = None
    a: int | None = None
    a_prime: int | None = None
    margin: object | None = None  # int, INFINITY, or None when not reached
    margin_cap: int | None = None
    constancy_bound: Fraction | None = None
    mismatched_slopes: tuple | None = None
    informational_slopes: tuple | None = None
    pair: InstancePair | None = None


@dataclass(frozen=True)
class ExperimentPlan:
    """Config plus the per-experiment resolutions shared by every trial."""

    config: ExperimentConfig
    mode: str
    kappa: int | None
    hypotheses_pass: bool
    precision: int | None


def prepare_plan(config: ExperimentConfig, mode: str) -> ExperimentPlan:
    if mode not in ("prop", "constancy"):
        raise ConfigError(f"mode must be 'prop' or 'constancy', got {mode!r}")
    if mode == "constancy":
        _require(config.nprime is not None, "constancy mode needs the config field nprime")
        return ExperimentPlan(config=config, mode=mode, kappa=None,
                              hypotheses_pass=True, precision=None)
    if config.kappa == "auto":
        kappa = resolve_kappa(config.profile, config.alpha)
        ok = kappa is not None
    else:
        kappa = config.kappa
        ok = proposition_hypotheses(config.profile, config.alpha, kappa).passed
    precision = config.working_precision(kappa) if kappa is not None else None
    return ExperimentPlan(config=config, mode=mode, kappa=kappa,
                          hypotheses_pass=ok, precision=precision)


def _census_multiplicity(segments: tuple, alpha: int) -> int:
    target = Fraction(alpha)
    for seg in segments:
        if seg.slope == target:
            return seg.length
    return 0


def _generate_pair(plan: ExperimentPlan, rng: SplitMix64, seed: int,
                   min_exponent: int = 0) -> InstancePair | None:
    cfg = plan.config
    if cfg.generator == PLANTED:
        return gen_planted_quadruple(
            cfg.profile, cfg.p, cfg.alpha, cfg.entry_bound, rng,
            cfg.max_attempts, seed, min_exponent=min_exponent,
        )
    xi = gen_xi(cfg.profile, cfg.p, cfg.entry_bound, rng)
    xi_prime = gen_congruent_pair(xi, cfg.profile, cfg.p, cfg.entry_bound, rng,
                                  min_exponent=min_exponent)
    psi, psi_prime, coeffs = gen_psi_polynomial(xi, xi_prime, cfg.p, cfg.entry_bound, rng)
    return InstancePair(xi=xi, xi_prime=xi_prime, psi=psi, psi_prime=psi_prime,
                        profile=cfg.profile, seed=seed, psi_coeffs=coeffs)


def run_proposition_trial(plan: ExperimentPlan, index: int) -> TrialReport:
    cfg = plan.config
    seed = trial_seed(cfg.master_seed, index)
    if not plan.hypotheses_pass:
        return TrialReport(index=index, seed=seed, status=REJECTED, reason="hypotheses",
                           alpha=cfg.alpha, kappa=plan.kappa)
    rng = SplitMix64(seed)
    pair = _generate_pair(plan, rng, seed)
    if pair is None:
        return TrialReport(index=index, seed=seed, status=REJECTED, reason="no-instance",
                           alpha=cfg.alpha, kappa=plan.kappa)
    _assert_pair_invariants(pair, cfg.p)
    return _evaluate_proposition_pair(plan, pair, index, seed)


def _evaluate_proposition_pair(plan: ExperimentPlan, pair: InstancePair,
                               index: int, seed: int) -> TrialReport:
    """Census gate, slope-root lifting, eigenvalue extraction, margin verdict."""
    cfg = plan.config
    kappa = plan.kappa
    N = plan.precision
    cp = char_poly(pair.xi)
    cp_prime = char_poly(pair.xi_prime)
    census = newton_polygon(cp, cfg.p).segments
    census_prime = newton_polygon(cp_prime, cfg.p).segments
    base = TrialReport(index=index, seed=seed, status=REJECTED, alpha=cfg.alpha,
                       kappa=kappa, census=census, census_prime=census_prime)
    if _census_multiplicity(census, cfg.alpha) != 1 or \
            _census_multiplicity(census_prime, cfg.alpha) != 1:
        return _replace(base, reason="not-simple")

    try:
        root = hensel_slope_root(cp, cfg.p, cfg.alpha, N)
        root_prime = hensel_slope_root(cp_prime, cfg.p, cfg.alpha, N)
        cap = min(N - root.derivative_valuation - cfg.alpha,
                  N - root_prime.derivative_valuation - cfg.alpha)
        if cap < kappa:
            return _replace(base, reason="precision")
        vec = eigenvector_mod(pair.xi, root.value, cfg.p, N)
        vec_prime = eigenvector_mod(pair.xi_prime, root_prime.value, cfg.p, N)
        a = commuting_eigenvalue(pair.psi, vec.vector, cfg.p, cap)
        a_prime = commuting_eigenvalue(pair.psi_prime, vec_prime.vector, cfg.p, cap)
    except (HenselError, EigenvectorError, ConsistencyError):
        return _replace(base, reason="precision")

    margin = padic_valuation(a - a_prime, cfg.p)
    violated = margin is not INFINITY and margin < kappa
    return _replace(
        base,
        status=VIOLATION if violated else ACCEPTED,
        reason=None,
        lam=root.value,
        lam_prime=root_prime.value,
        a=a,
        a_prime=a_prime,
        margin=margin,
        margin_cap=cap,
        pair=pair if violated else None,
    )


def run_constancy_trial(plan: ExperimentPlan, index: int) -> TrialReport:
    cfg = plan.config
    seed = trial_seed(cfg.master_seed, index)
    rng = SplitMix64(seed)
    pair = _generate_pair(plan, rng, seed, min_exponent=cfg.nprime)
    if pair is None:
        return TrialReport(index=index, seed=seed, status=REJECTED, reason="no-instance",
                           alpha=cfg.alpha)
    _assert_pair_invariants(pair, cfg.p, min_exponent=cfg.nprime)
    return _evaluate_constancy_pair(plan, pair, index, seed)


def _evaluate_constancy_pair(plan: ExperimentPlan, pair: InstancePair,
                             index: int, seed: int) -> TrialReport:
    """Compare slope multiplicities below the exact constancy bound."""
    cfg = plan.config
    bound = c_exact(profile_mod(cfg.profile, cfg.nprime)).value
    census = newton_polygon(char_poly(pair.xi), cfg.p).segments
    census_prime = newton_polygon(char_poly(pair.xi_prime), cfg.p).segments
    mult = {seg.slope: seg.length for seg in census}
    mult_prime = {seg.slope: seg.length for seg in census_prime}
    mismatched = []
    informational = []
    for slope in sorted(set(mult) | set(mult_prime), key=_slope_sort_key):
        m, mp = mult.get(slope, 0), mult_prime.get(slope, 0)
        if m == mp:
            continue
        if slope is not INFINITY and slope < bound:
            mismatched.append((slope, m, mp))
        else:
            informational.append((slope, m, mp))
    violated = bool(mismatched)
    return TrialReport(
        index=index, seed=seed,
        status=VIOLATION if violated else ACCEPTED,
        census=census, census_prime=census_prime,
        constancy_bound=bound,
        mismatched_slopes=tuple(mismatched),
        informational_slopes=tuple(informational),
        pair=pair if violated else None,
    )


def _slope_sort_key(slope):
    return (1, Fraction(0)) if slope is INFINITY else (0, slope)


def _replace(report: TrialReport, **kw) -> TrialReport:
    return replace(report, **kw)


# --- experiment driver ------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentReport:
    mode: str
    plan: ExperimentPlan
    trials: tuple

    @property
    def accepted(self) -> int:
        return sum(1 for t in self.trials if t.status == ACCEPTED)

    @property
    def violations(self) -> tuple:
        return tuple(t for t in self.trials if t.status == VIOLATION)

    def rejected_by_reason(self) -> dict:
        out = {}
        for t in self.trials:
            if t.status == REJECTED:
                out[t.reason] = out.get(t.reason, 0) + 1
        return dict(sorted(out.items()))

    def min_margin(self):
        finite = [t.margin for t in self.trials
                  if t.status == ACCEPTED and isinstance(t.margin, int)]
        if finite:
            return min(finite)
        if any(t.status == ACCEPTED and t.margin is INFINITY for t in self.trials):
            return INFINITY
        return None


def _trial_worker(args) -> TrialReport:
    plan, index = args
    if plan.mode == "prop":
        return run_proposition_trial(plan, index)
    return run_constancy_trial(plan, index)


def run_experiment(config: ExperimentConfig, mode: str = "prop", jobs: int = 1) -> ExperimentReport:
    """Run all trials; the report is a pure function of (config, mode).

    jobs > 1 distributes trials over processes; aggregation sorts by trial
    index, so parallelism cannot change a single output byte.
    """
    plan = prepare_plan(config, mode)
    indices = range(config.trials)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_trial_worker, [(plan, i) for i in indices]))
    else:
        results = [_trial_worker((plan, i)) for i in indices]
    results.sort(key=lambda t: t.index)
    return ExperimentReport(mode=mode, plan=plan, trials=tuple(results))


# --- report serialization -----------------------------------------------------------

def _margin_json(margin):
    if margin is None:
        return None
    if margin is INFINITY:
        return "inf"
    return margin


def _census_json(census):
    if census is None:
        return None
    return [[slope_to_string(seg.slope), seg.length] for seg in census]


def _slope_triples_json(triples):
    if triples is None:
        return None
    return [[slope_to_string(s), m, mp] for s, m, mp in triples]


def trial_to_document(t: TrialReport) -> dict:
    doc = {
        "index": t.index,
        "seed": t.seed,
        "status": t.status,
        "reason": t.reason,
        "census": _census_json(t.census),
        "census_prime": _census_json(t.census_prime),
    }
    if t.alpha is not None:
        doc["alpha"] = t.alpha
    if t.kappa is not None:
        doc["kappa"] = t.kappa
    if t.lam is not None:
        doc.update(lam=t.lam, lam_prime=t.lam_prime, a=t.a, a_prime=t.a_prime,
                   margin=_margin_json(t.margin), margin_cap=t.margin_cap)
    if t.constancy_bound is not None:
        doc["constancy_bound"] = slope_to_string(t.constancy_bound)
        doc["mismatched_slopes"] = _slope_triples_json(t.mismatched_slopes)
        doc["informational_slopes"] = _slope_triples_json(t.informational_slopes)
    if t.pair is not None:
        doc["matrices"] = {
            "xi": [list(r) for r in t.pair.xi.rows],
            "xi_prime": [list(r) for r in t.pair.xi_prime.rows],
            "psi": [list(r) for r in t.pair.psi.rows],
            "psi_prime": [list(r) for r in t.pair.psi_prime.rows],
        }
    return doc


def report_to_document(report: ExperimentReport) -> dict:
    plan = report.plan
    cfg = plan.config
    return {
        "mode": report.mode,
        "config": {
            "p": cfg.p,
            "profile": cfg.profile_doc,
            "alpha": cfg.alpha,
            "kappa": cfg.kappa,
            "trials": cfg.trials,
            "master_seed": cfg.master_seed,
            "generator": cfg.generator,
            "max_attempts": cfg.max_attempts,
            "entry_bound": cfg.entry_bound,
            "precision_guard": cfg.precision_guard,
            "nprime": cfg.nprime,
        },
        "resolved": {
            "kappa": plan.kappa,
            "hypotheses_pass": plan.hypotheses_pass,
            "precision": plan.precision,
            "profile_rank": cfg.profile.r,
            "profile_level": cfg.profile.n,
        },
        "summary": {
            "trials": cfg.trials,
            "accepted": report.accepted,
            "rejected": report.rejected_by_reason(),
            "violations": len(report.violations),
            "min_margin": _margin_json(report.min_margin()),
        },
        "trials": [trial_to_document(t) for t in report.trials],
    }


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(report_to_document(report), indent=2, sort_keys=True) + "\n"

"""Sweep orchestration: enumerate (mu, lambda, nu) instances for a Cartan type
and Levi subset, run the selected identity and property checks on each, scan
for saturation behaviour, and assemble a machine-readable report.

Reports are deterministic for a fixed configuration: instance order follows
the enumeration order, randomized sections draw from a seeded generator, and
timing lives in dedicated ``*_ms`` fields so two runs differ at most there.
Worker processes rebuild their own caches, so results are independent of the
worker count.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .characters import (
    DIMENSION_CAP,
    branch_decompose,
    branch_multiplicity,
    tensor_multiplicity,
    weight_table,
)
from .errors import ConfigurationError, FeasibilityError
from .hecke import (
    LaurentPoly,
    constant_term,
    hecke_product,
    orbit_size,
    satake_expand,
)
from .littelmann import (
    branch_path_set,
    count_branch_paths,
    count_tensor_paths,
    endpoint_weight,
    generate_crystal,
    is_hecke_path,
    tensor_path_set,
)
from .parabolic import offset_pair
from .rootdata import (
    Coweight,
    RootDatum,
    dual_star,
    k_phi,
    levi_view,
    pairing,
    rho_height,
    root_datum,
    vec_add,
    vec_scale,
    vec_sub,
    weyl_dim,
)

CHECK_NAMES = (
    "crystal",
    "product_identity",
    "multiplicity_identity",
    "nonvanishing",
    "degrees",
    "semigroup",
    "saturation",
    "hecke_paths",
    "ct_transitivity",
)

_INSTANCE_CHECKS = ("multiplicity_identity", "product_identity", "degrees",
                    "nonvanishing")
_MU_CHECKS = ("crystal", "hecke_paths", "ct_transitivity")

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class SweepConfig:
    cartan_type: str
    levi: tuple[int, ...]
    max_height: int
    checks: tuple[str, ...]
    q_eval_points: tuple[int, ...] = (2, 3, 4, 5, 7)
    jobs: int = 1
    seed: int = 20260816
    saturation_n_max: int = 3
    semigroup_samples: int = 120
    output: Optional[str] = None

    def validate(self) -> None:
        if self.max_height < 0:
            raise ConfigurationError("max_height must be nonnegative")
        unknown = [c for c in self.checks if c not in CHECK_NAMES]
        if unknown:
            raise ConfigurationError(
                f"unknown checks {unknown}; known: {list(CHECK_NAMES)}")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be at least 1")
        if self.saturation_n_max < 2:
            raise ConfigurationError("saturation_n_max must be at least 2")
        if any(q < 2 for q in self.q_eval_points):
            raise ConfigurationError("q evaluation points must be at least 2")


def dominant_coweights_up_to(datum: RootDatum, max_height) -> list[Coweight]:
    """All dominant coweights whose pairing with the half-sum of positive
    roots is at most the bound, ordered by (height, lex)."""
    bounds = [int(Fraction(max_height) / datum.rho[i]) for i in range(datum.rank)]
    out = [mu for mu in itertools.product(*(range(b + 1) for b in bounds))
           if rho_height(datum, mu) <= max_height]
    return sorted(out, key=lambda m: (rho_height(datum, m), m))


def enumerate_instances(config: SweepConfig) -> list[tuple[Coweight, Coweight, Coweight]]:
    """The sweep's (mu, lambda, nu) triples: dominant mu within the height
    bound; Levi-dominant weights lambda of the module at mu (these carry the
    hull and coroot-lattice congruence conditions automatically); the minimal
    offset nu and, when distinct, one strictly larger offset."""
    config.validate()
    if not config.checks:
        return []
    datum = root_datum(config.cartan_type)
    levi = levi_view(datum, config.levi)
    out = []
    for mu in dominant_coweights_up_to(datum, config.max_height):
        lams = sorted(w for w in weight_table(datum.full, mu)
                      if levi.is_dominant(w))
        nu0, nu1 = offset_pair(datum, levi, mu)
        nus = (nu0,) if nu1 == nu0 else (nu0, nu1)
        for lam in lams:
            for nu in nus:
                out.append((mu, lam, nu))
    return out


def _verdict_all(flags: Sequence[bool]) -> str:
    return PASS if all(flags) else FAIL


def _instance_record(datum: RootDatum, levi, mu: Coweight, lam: Coweight,
                     nu: Coweight, checks, q_points) -> dict:
    start = time.perf_counter()
    values: dict = {"r": None, "n": None, "m": None, "c": None}
    verdicts: dict = {}
    notes: list[str] = []
    m_negative = False

    alpha = vec_add(nu, lam)
    mustar = dual_star(datum, mu)
    k = k_phi(datum)

    r = branch_multiplicity(datum, levi, mu, lam)
    values["r"] = r

    need_hecke = ("product_identity" in checks or "degrees" in checks
                  or "nonvanishing" in checks)
    m_poly = c_poly = None
    if need_hecke:
        c_poly = constant_term(datum, levi, mu).get(lam, LaurentPoly.zero())
        m_poly = hecke_product(datum, alpha, mustar).get(nu, LaurentPoly.zero())
        values["m"] = m_poly.to_json()
        values["c"] = c_poly.to_json()
        m_negative = any(cf < 0 for _, cf in m_poly.items())

    if "multiplicity_identity" in checks:
        n2 = tensor_multiplicity(datum, alpha, mustar, nu)
        values["n"] = n2
        try:
            r_paths = count_branch_paths(datum, levi, mu, lam)
            n_paths = count_tensor_paths(datum, mu, nu, alpha)
            sets_match = (branch_path_set(datum, levi, mu, lam)
                          == tensor_path_set(datum, mu, nu, alpha))
            n1 = tensor_multiplicity(datum, nu, mu, alpha)
            verdicts["multiplicity_identity"] = _verdict_all([
                r_paths == r, n_paths == n1, n1 == n2, r == n2, sets_match])
        except FeasibilityError as e:
            verdicts["multiplicity_identity"] = SKIPPED
            notes.append(f"multiplicity_identity: {e}")

    if "product_identity" in checks:
        shift_n = pairing(datum.full.two_rho, lam) - pairing(levi.two_rho, lam)
        lhs = c_poly.shift(shift_n) * orbit_size(datum, levi, lam)
        verdicts["product_identity"] = _verdict_all([lhs == m_poly])

    if "degrees" in checks:
        n2 = values["n"]
        if n2 is None:
            n2 = tensor_multiplicity(datum, alpha, mustar, nu)
            values["n"] = n2
        flags = [m_poly.has_even_exponents()]
        m_bound = rho_height(datum, vec_sub(vec_add(alpha, mustar), nu))
        if n2 != 0:
            flags.append(m_poly.q_degree() == m_bound)
            flags.append(m_poly.leading() == n2)
        elif m_poly:
            flags.append(m_poly.q_degree() < m_bound)
        shift_n = pairing(datum.full.two_rho, lam) - pairing(levi.two_rho, lam)
        f_poly = c_poly.shift(shift_n)
        flags.append(f_poly.has_even_exponents())
        f_bound = (rho_height(datum, vec_add(mu, lam))
                   - Fraction(pairing(levi.two_rho, lam)))
        if r != 0:
            flags.append(f_poly.q_degree() == f_bound)
            flags.append(f_poly.leading() == r)
        elif f_poly:
            flags.append(f_poly.q_degree() < f_bound)
        for q in q_points:
            val = m_poly.eval_q(q) if m_poly.has_even_exponents() else None
            flags.append(val is not None and val.denominator == 1 and val >= 0)
        verdicts["degrees"] = _verdict_all(flags)

    if "nonvanishing" in checks:
        flags = []
        if r != 0:
            flags.append(bool(c_poly))
        if c_poly:
            kmu = vec_scale(k, mu)
            klam = vec_scale(k, lam)
            try:
                if weyl_dim(datum.full, kmu) > DIMENSION_CAP:
                    raise FeasibilityError(
                        f"scaled module at {kmu} exceeds the cap", DIMENSION_CAP)
                flags.append(branch_multiplicity(datum, levi, kmu, klam) != 0)
                verdicts["nonvanishing"] = _verdict_all(flags)
            except FeasibilityError as e:
                notes.append(f"nonvanishing: {e}")
                verdicts["nonvanishing"] = (
                    SKIPPED if all(flags) else FAIL)
        else:
            verdicts["nonvanishing"] = _verdict_all(flags)

    return {
        "mu": list(mu), "lambda": list(lam), "nu": list(nu),
        "values": values,
        "checks": verdicts,
        "notes": notes,
        "m_has_negative_coefficient": m_negative,
        "time_ms": (time.perf_counter() - start) * 1000.0,
    }


def _mu_record(datum: RootDatum, levi, mu: Coweight, checks, q_points) -> dict:
    start = time.perf_counter()
    verdicts: dict = {}
    notes: list[str] = []
    crystal_size = None
    paths = None
    if "crystal" in checks or "hecke_paths" in checks:
        try:
            paths = generate_crystal(datum, mu)
        except FeasibilityError as e:
            notes.append(f"crystal: {e}")

    if "crystal" in checks:
        if paths is None:
            verdicts["crystal"] = SKIPPED
        else:
            crystal_size = len(paths)
            hist: dict = {}
            for p in paths:
                end = endpoint_weight(p)
                hist[end] = hist.get(end, 0) + 1
            table = weight_table(datum.full, mu)
            verdicts["crystal"] = _verdict_all([
                crystal_size == weyl_dim(datum.full, mu), hist == table])

    if "hecke_paths" in checks:
        if paths is None:
            verdicts["hecke_paths"] = SKIPPED
        else:
            verdicts["hecke_paths"] = _verdict_all(
                [is_hecke_path(datum, p) for p in paths])

    if "ct_transitivity" in checks:
        torus = levi_view(datum, ())
        direct = satake_expand(datum, datum.full, torus, mu)
        through = satake_expand(datum, datum.full, levi, mu)
        composed: dict = {}
        for lam, outer in through.items():
            for tau, inner in satake_expand(datum, levi, torus, lam).items():
                cur = composed.get(tau, LaurentPoly.zero()) + outer * inner
                if cur:
                    composed[tau] = cur
                else:
                    composed.pop(tau, None)
        direct = {kk: pp for kk, pp in direct.items() if pp}
        verdicts["ct_transitivity"] = _verdict_all([composed == direct])

    return {
        "mu": list(mu),
        "checks": verdicts,
        "crystal_size": crystal_size,
        "notes": notes,
        "time_ms": (time.perf_counter() - start) * 1000.0,
    }


def _run_task(payload: tuple) -> dict:
    kind, type_str, levi_idx, args, checks, q_points = payload
    datum = root_datum(type_str)
    levi = levi_view(datum, levi_idx)
    if kind == "mu":
        (mu,) = args
        return _mu_record(datum, levi, mu, checks, q_points)
    mu, lam, nu = args
    return _instance_record(datum, levi, mu, lam, nu, checks, q_points)


def _semigroup_section(datum: RootDatum, levi, mus, seed: int,
                       samples: int) -> dict:
    pool = []
    for mu in mus:
        for lam in sorted(branch_decompose(datum, levi, mu)):
            pool.append((mu, lam))
    rng = random.Random(seed)
    checked = 0
    skipped = 0
    failures = []
    attempts = 0
    while pool and checked < samples and attempts < 20 * samples:
        attempts += 1
        mu1, lam1 = pool[rng.randrange(len(pool))]
        mu2, lam2 = pool[rng.randrange(len(pool))]
        try:
            r12 = branch_multiplicity(datum, levi, vec_add(mu1, mu2),
                                      vec_add(lam1, lam2))
        except FeasibilityError:
            skipped += 1
            continue
        if r12 == 0:
            failures.append({"mu1": list(mu1), "lambda1": list(lam1),
                             "mu2": list(mu2), "lambda2": list(lam2)})
        checked += 1
    return {
        "pool_size": len(pool),
        "pairs_checked": checked,
        "pairs_skipped": skipped,
        "failures": failures,
        "verdict": PASS if not failures else FAIL,
    }


def _saturation_section(datum: RootDatum, levi, mus, n_max: int) -> dict:
    k = k_phi(datum)
    zero_pairs = []
    for mu in mus:
        br = branch_decompose(datum, levi, mu)
        for lam in sorted(w for w in weight_table(datum.full, mu)
                          if levi.is_dominant(w)):
            if br.get(lam, 0) == 0:
                zero_pairs.append((mu, lam))

    def scaled_branch(factor: int, mu, lam) -> Optional[int]:
        smu = vec_scale(factor, mu)
        if weyl_dim(datum.full, smu) > DIMENSION_CAP:
            return None
        try:
            return branch_multiplicity(datum, levi, smu, vec_scale(factor, lam))
        except FeasibilityError:
            return None

    hits = []
    failures = []
    skips = []
    for mu, lam in zero_pairs:
        witness = None
        for n in range(2, n_max + 1):
            rn = scaled_branch(n, mu, lam)
            if rn is None:
                skips.append({"mu": list(mu), "lambda": list(lam), "n": n,
                              "reason": "scaled instance over the cap"})
                break
            if rn != 0:
                witness = (n, rn)
                break
        if witness is None:
            continue
        hit = {"mu": list(mu), "lambda": list(lam),
               "witness_n": witness[0], "witness_r": witness[1]}
        kmu = vec_scale(k, mu)
        if weyl_dim(datum.full, kmu) > DIMENSION_CAP:
            hit["c_at_k"] = SKIPPED
            skips.append({"mu": list(mu), "lambda": list(lam), "n": k,
                          "reason": "k-scaled constant term over the cap"})
        else:
            ck = constant_term(datum, levi, kmu).get(vec_scale(k, lam),
                                                     LaurentPoly.zero())
            hit["c_at_k"] = bool(ck)
            if not ck:
                failures.append({"mu": list(mu), "lambda": list(lam),
                                 "reason": "saturation witness but zero "
                                           "constant term at factor k"})
        rk2 = scaled_branch(k * k, mu, lam)
        if rk2 is None:
            hit["r_at_k_squared"] = SKIPPED
            skips.append({"mu": list(mu), "lambda": list(lam), "n": k * k,
                          "reason": "k^2-scaled instance over the cap"})
        else:
            hit["r_at_k_squared"] = rk2
            if rk2 == 0:
                failures.append({"mu": list(mu), "lambda": list(lam),
                                 "reason": "saturation witness but zero "
                                           "branching at factor k^2"})
        if datum.letter in ("B", "C", "G"):
            r2 = scaled_branch(2, mu, lam)
            hit["factor_two_r"] = SKIPPED if r2 is None else r2
        hits.append(hit)
    return {
        "zero_pairs_scanned": len(zero_pairs),
        "n_max": n_max,
        "hits": hits,
        "skipped": skips,
        "failures": failures,
        "verdict": PASS if not failures else FAIL,
    }


def run_sweep(config: SweepConfig) -> dict:
    """Execute every selected check over the enumerated instances and return
    the report as a JSON-serializable dict."""
    config.validate()
    start = time.perf_counter()
    datum = root_datum(config.cartan_type)
    levi = levi_view(datum, config.levi)
    checks = tuple(c for c in CHECK_NAMES if c in config.checks)

    instances = enumerate_instances(config)
    mus = []
    for mu, _, _ in instances:
        if mu not in mus:
            mus.append(mu)

    mu_checks = tuple(c for c in checks if c in _MU_CHECKS)
    inst_checks = tuple(c for c in checks if c in _INSTANCE_CHECKS)

    tasks = []
    if mu_checks:
        for mu in mus:
            tasks.append(("mu", config.cartan_type, config.levi, (mu,),
                          mu_checks, config.q_eval_points))
    if inst_checks:
        for mu, lam, nu in instances:
            tasks.append(("instance", config.cartan_type, config.levi,
                          (mu, lam, nu), inst_checks, config.q_eval_points))

    if config.jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]

    per_mu = [rec for t, rec in zip(tasks, results) if t[0] == "mu"]
    inst_records = [rec for t, rec in zip(tasks, results) if t[0] == "instance"]

    semigroup = None
    if "semigroup" in checks and mus:
        semigroup = _semigroup_section(datum, levi, mus, config.seed,
                                       config.semigroup_samples)
    saturation = None
    if "saturation" in checks and mus:
        saturation = _saturation_section(datum, levi, mus,
                                         config.saturation_n_max)

    counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
    counterexamples = []
    for rec in per_mu:
        for name, verdict in rec["checks"].items():
            counts[verdict] += 1
            if verdict == FAIL:
                counterexamples.append({"where": "mu", "check": name,
                                        "mu": rec["mu"]})
    for rec in inst_records:
        for name, verdict in rec["checks"].items():
            counts[verdict] += 1
            if verdict == FAIL:
                counterexamples.append({"where": "instance", "check": name,
                                        "mu": rec["mu"],
                                        "lambda": rec["lambda"],
                                        "nu": rec["nu"]})
    for name, section in (("semigroup", semigroup), ("saturation", saturation)):
        if section is not None:
            counts[section["verdict"]] += 1
            if section["verdict"] == FAIL:
                counterexamples.append({"where": name, "check": name})

    m_nonneg_violations = sum(
        1 for rec in inst_records if rec.get("m_has_negative_coefficient"))

    report = {
        "schema": 1,
        "config": {
            "cartan_type": config.cartan_type,
            "levi": list(config.levi),
            "max_height": config.max_height,
            "checks": list(checks),
            "q_eval_points": list(config.q_eval_points),
            "seed": config.seed,
            "saturation_n_max": config.saturation_n_max,
            "semigroup_samples": config.semigroup_samples,
        },
        "instance_count": len(instances),
        "per_mu": per_mu,
        "instances": inst_records,
        "semigroup": semigroup,
        "saturation": saturation,
        "summary": {
            "pass": counts[PASS],
            "fail": counts[FAIL],
            "skipped": counts[SKIPPED],
            "counterexamples": counterexamples,
            "m_nonneg_violations": m_nonneg_violations,
        },
        "total_time_ms": (time.perf_counter() - start) * 1000.0,
    }
    return report


def report_failed(report: dict) -> bool:
    return report["summary"]["fail"] > 0

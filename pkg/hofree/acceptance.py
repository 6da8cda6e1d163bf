"""
Acceptance criteria, one function per criterion.

Every check returns ``(passed, detail)``. The exact suite compares exact
rationals; the Monte Carlo suite accepts |z| <= tolerance.
"""
import logging
import random
from collections import namedtuple
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from hofree.counting import closed_form_zeta_power, count_bruteforce, count_recursive, count_two_circles, rec_fact
from hofree.exceptions import PreconditionError
from hofree.finite_n import FiniteNTable, kappaN_from_phiN, phiN_from_kappaN
from hofree.hops import (alternating_powers, centered_word_covariance, distribution_oracle, free_covariance_prediction,
                         free_join, mixed_cumulant_report, moments_from_cumulants)
from hofree.iz import deterministic_distribution, iz_r, iz_series
from hofree.multfn import MultFn, convolve, diagrams_up_to, moebius_recursion, moebius_table
from hofree.ps import pp_full
from hofree.rmt.ensembles import GUE, DeterministicDiagonal, HaarConjugate, Wishart
from hofree.rmt.estimators import (verify_asymptotic_freeness, verify_entry_cumulants, verify_fluctuations,
                                   verify_haar_moments)
from hofree.rmt.report import FluctuationReport
from hofree.series import Series1, Series2
from hofree.transforms import c2m_first, c2m_second, cauchy_forms, free_poisson, m2c_second
from hofree.utils import annular_count, catalan
from hofree.weingarten import gram_residual, parse_haar_pattern, pattern_expectation, wg_table

logger = logging.getLogger(__name__)

SUITES = ('exact', 'montecarlo', 'all')

Criterion = namedtuple('Criterion', 'number name suite check')
CriterionResult = namedtuple('CriterionResult', 'number name passed detail')

HAAR_PATTERNS = ('|u11|^2', '|u11|^4', 'u11 u22 ~u11 ~u22', 'u11 u22 ~u12 ~u21', '|u12|^2 |u21|^2')

FIRST_ORDER = (1, 2, 3, 4, 5, 6)
SECOND_ORDER = ((1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3))


def _second_order_polynomials(k1, k2, k3, k4, k5, k6, k11, k12, k13, k22, k23,
                              k33) -> Dict[Tuple[int, int], Fraction]:
    """alpha_{m,n} in terms of first- and second-order free cumulants."""
    return {
        (1, 1): k11 + k2,
        (2, 1): k12 + 2 * k1 * k11 + 2 * k3 + 2 * k1 * k2,
        (2, 2): k22 + 4 * k1 * k12 + 4 * k1 ** 2 * k11 + 4 * k4 + 8 * k1 * k3 + 2 * k2 ** 2 + 4 * k1 ** 2 * k2,
        (1, 3): (k13 + 3 * k1 * k12 + 3 * k2 * k11 + 3 * k1 ** 2 * k11
                 + 3 * k4 + 6 * k1 * k3 + 3 * k2 ** 2 + 3 * k1 ** 2 * k2),
        (2, 3): (k23 + 2 * k1 * k13 + 3 * k1 * k22 + 3 * k2 * k12 + 9 * k1 ** 2 * k12 + 6 * k1 * k2 * k11
                 + 6 * k1 ** 3 * k11 + 6 * k5 + 18 * k1 * k4 + 12 * k2 * k3 + 18 * k1 ** 2 * k3
                 + 12 * k1 * k2 ** 2 + 6 * k1 ** 3 * k2),
        (3, 3): (k33 + 6 * k1 * k23 + 6 * k2 * k13 + 6 * k1 ** 2 * k13 + 9 * k1 ** 2 * k22
                 + 18 * k1 * k2 * k12 + 18 * k1 ** 3 * k12 + 9 * k2 ** 2 * k11 + 18 * k1 ** 2 * k2 * k11
                 + 9 * k1 ** 4 * k11 + 9 * k6 + 36 * k1 * k5 + 27 * k2 * k4 + 54 * k1 ** 2 * k4
                 + 9 * k3 ** 2 + 72 * k1 * k2 * k3 + 36 * k1 ** 3 * k3 + 12 * k2 ** 3
                 + 36 * k1 ** 2 * k2 ** 2 + 9 * k1 ** 4 * k2),
    }


def _second_order_cumulant_polynomials(a1, a2, a3, a4, a5, a6, a11, a12, a13, a22, a23,
                                       a33) -> Dict[Tuple[int, int], Fraction]:
    """kappa_{m,n} in terms of first- and second-order moments."""
    return {
        (1, 1): a1 ** 2 - a2 + a11,
        (2, 1): -4 * a1 ** 3 + 6 * a1 * a2 - 2 * a3 - 2 * a1 * a11 + a12,
        (2, 2): (18 * a1 ** 4 - 36 * a1 ** 2 * a2 + 6 * a2 ** 2 + 16 * a1 * a3 - 4 * a4
                 + 4 * a1 ** 2 * a11 - 4 * a1 * a12 + a22),
        (1, 3): (15 * a1 ** 4 - 30 * a1 ** 2 * a2 + 6 * a2 ** 2 + 12 * a1 * a3 - 3 * a4
                 + 6 * a1 ** 2 * a11 - 3 * a2 * a11 - 3 * a1 * a12 + a13),
        (2, 3): (-72 * a1 ** 5 + 180 * a1 ** 3 * a2 - 72 * a1 * a2 ** 2 - 84 * a1 ** 2 * a3 + 24 * a2 * a3
                 + 30 * a1 * a4 - 6 * a5 - 12 * a1 ** 3 * a11 + 6 * a1 * a2 * a11 + 12 * a1 ** 2 * a12
                 - 3 * a2 * a12 - 2 * a1 * a13 - 3 * a1 * a22 + a23),
        (3, 3): (300 * a1 ** 6 - 900 * a1 ** 4 * a2 + 576 * a1 ** 2 * a2 ** 2 - 48 * a2 ** 3
                 + 432 * a1 ** 3 * a3 - 288 * a1 * a2 * a3 + 18 * a3 ** 2 - 180 * a1 ** 2 * a4
                 + 45 * a2 * a4 + 54 * a1 * a5 - 9 * a6 + 36 * a1 ** 4 * a11 - 36 * a1 ** 2 * a2 * a11
                 + 9 * a2 ** 2 * a11 - 36 * a1 ** 3 * a12 + 18 * a1 * a2 * a12 + 12 * a1 ** 2 * a13
                 - 6 * a2 * a13 + 9 * a1 ** 2 * a22 - 6 * a1 * a23 + a33),
    }


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3, 5)))


def _series_of(f: MultFn, trunc: int) -> Tuple[Series1, Series2]:
    C = Series1([1] + [f.get((k,), 0) for k in range(1, trunc + 1)], trunc)
    C2 = Series2({(m, n): f.get((m, n), 0) for m in range(1, trunc) for n in range(1, trunc + 1 - m)}, trunc)
    return C, C2


def _cumulant_point(rng: random.Random) -> Dict[str, Fraction]:
    names = [f'k{n}' for n in FIRST_ORDER] + [f'k{min(d)}{max(d)}' for d in SECOND_ORDER]
    return {name: _random_fraction(rng) for name in names}


def _multfn_of(k: Dict[str, Fraction]) -> MultFn:
    table = {(n,): k[f'k{n}'] for n in FIRST_ORDER}
    table.update({d: k[f'k{min(d)}{max(d)}'] for d in SECOND_ORDER})
    return MultFn(table)


def _moment_arguments(M: Series1, M2: Series2) -> Dict[str, Fraction]:
    a = {f'a{n}': M[n] for n in FIRST_ORDER}
    a.update({f'a{min(d)}{max(d)}': M2[d] for d in SECOND_ORDER})
    return a


def moebius_values(config, quick: bool):
    top = 6 if quick else 8
    bad = []
    for n in range(1, top + 1):
        if moebius_recursion(pp_full((n,))) != (-1) ** (n - 1) * catalan(n - 1):
            bad.append((n,))
    for total in range(2, top + 1):
        for m in range(1, total // 2 + 1):
            n = total - m
            if moebius_recursion(pp_full((n, m))) != (-1) ** (m + n) * annular_count(m, n):
                bad.append((n, m))
    return not bad, f'mismatches at {bad}' if bad else f'first and second order through {top}'


def unit_identity(config, quick: bool):
    top = 4 if quick else 6
    mu, zeta, delta = moebius_table(top, config.enum_bound), MultFn.zeta(top), MultFn.delta(top)
    left = convolve(mu, zeta, top, config.enum_bound)
    right = convolve(zeta, mu, top, config.enum_bound)
    bad = [d for d in diagrams_up_to(top) if left[d] != delta[d] or right[d] != delta[d]]
    return not bad, f'mismatches at {bad}' if bad else f'all diagrams up to {top}'


def counting_concordance(config, quick: bool):
    top = 6 if quick else 8
    bad = []
    for profile in diagrams_up_to(top):
        counts = {closed_form_zeta_power(2, profile), count_recursive(profile), rec_fact(profile),
                  count_bruteforce(profile)}
        if len(counts) != 1:
            bad.append(profile)
    for total in range(2, top + 1):
        for m in range(1, total):
            if count_two_circles(m, total - m) != annular_count(m, total - m):
                bad.append((m, total - m))
    spot = count_recursive((2, 2)) == 18 and count_recursive((1, 2)) == 4
    passed = not bad and spot
    return passed, f'disagreement at {bad}' if bad else f'profiles up to {top}; c22=18, c12=4: {spot}'


def series_against_convolution(config, quick: bool):
    top = 5 if quick else 6
    bad = []
    for seed in range(3):
        f = MultFn.random(seed, top)
        moments = convolve(f, MultFn.zeta(top), top, config.enum_bound)
        C, C2 = _series_of(f, top)
        M, M2 = c2m_first(C), c2m_second(C, C2)
        bad += [(seed, (k,)) for k in range(1, top + 1) if M[k] != moments[(k,)]]
        bad += [(seed, (m, n)) for m in range(1, top) for n in range(1, top + 1 - m) if M2[(m, n)] != moments[(m, n)]]
    return not bad, f'mismatches at {bad[:5]}' if bad else f'three random tables, m + n <= {top}'


def moment_cumulant_polynomials(config, quick: bool):
    rng = random.Random(config.seed)
    bad = []
    for point in range(5):
        k = _cumulant_point(rng)
        C, C2 = _series_of(_multfn_of(k), 6)
        M, M2 = c2m_first(C), c2m_second(C, C2)
        for key, value in _second_order_polynomials(**k).items():
            if M2[key] != value:
                bad.append((point, 'alpha', key))
        recovered = m2c_second(M, M2)
        for key, value in _second_order_cumulant_polynomials(**_moment_arguments(M, M2)).items():
            if recovered[key] != value or value != C2[key]:
                bad.append((point, 'kappa', key))
    return not bad, f'mismatches at {bad}' if bad else 'six polynomials each way at 5 random points'


def weingarten_exact(config, quick: bool):
    top = 4 if quick else 5
    residuals = [gram_residual(wg_table(n, 7)) for n in range(1, top + 1)]
    pattern = parse_haar_pattern('|u11|^4')
    fourth = all(pattern_expectation(pattern, N) == Fraction(2, N * (N + 1)) for N in range(2, 10))
    passed = not any(residuals) and fourth
    return passed, f'Gram residuals {[str(r) for r in residuals]} through n={top}; E|u11|^4: {fourth}'


def weingarten_montecarlo(config, quick: bool):
    report = FluctuationReport(config.tolerance)
    patterns = [parse_haar_pattern(p) for p in HAAR_PATTERNS]
    samples = 20000 if quick else 100000
    for N in (4, 8):
        report.extend(verify_haar_moments(patterns, N, config.sample_config(samples=samples), config.tolerance))
    return report.passed, f'max |z| = {report.max_abs_z:.2f} over {len(report)} monomials'


def finite_n_system(config, quick: bool):
    top = 3 if quick else 4
    kappa = FiniteNTable(7, MultFn.random(config.seed, top), 'kappa')
    phi = phiN_from_kappaN(kappa)
    round_trip = kappaN_from_phiN(phi) == kappa
    small = FiniteNTable(7, phi.values.restrict(3), 'phi')
    agree = kappaN_from_phiN(small, 'relative') == kappaN_from_phiN(small, 'solve') == \
        kappaN_from_phiN(small, 'gg')
    return round_trip and agree, f'round trip through {top}: {round_trip}; three inversions agree: {agree}'


def _montecarlo_size(config, quick: bool, N: int):
    samples = min(config.samples, 2000) if quick else config.samples
    return (N // 4 if quick else N), config.sample_config(samples=samples)


def gue_fluctuations(config, quick: bool):
    N, sample_config = _montecarlo_size(config, quick, 200)
    report = verify_fluctuations(GUE(N), [(1, 1), (2, 2)], sample_config, config.tolerance)
    return report.passed, f'max |z| = {report.max_abs_z:.2f} at N={N}'


def wishart_fluctuations(config, quick: bool):
    N, sample_config = _montecarlo_size(config, quick, 200)
    report = verify_fluctuations(Wishart(N, 2), [(1, 1)], sample_config, config.tolerance)
    M = c2m_first(free_poisson(2, 10))
    cauchy = cauchy_forms(M, c2m_second(free_poisson(2, 10), Series2({}, 10)))
    passed = report.passed and cauchy.residual_series_is_zero
    return passed, f'max |z| = {report.max_abs_z:.2f} at N={N}; Cauchy residual zero: {cauchy.residual_series_is_zero}'


def entry_cumulants(config, quick: bool):
    samples = min(config.samples, 2000) if quick else config.samples
    report = FluctuationReport(config.tolerance)
    for N in ((32,) if quick else (64, 128)):
        for diagram in ((2,), (1, 1)):
            report.extend(verify_entry_cumulants(GUE(N), diagram, config.sample_config(samples=samples),
                                                 tolerance=config.tolerance))
    return report.passed, f'max |z| = {report.max_abs_z:.2f}'


def freeness_exact(config, quick: bool):
    top = 3 if quick else 4
    order = 4 if quick else 8
    first = distribution_oracle('a', moments_from_cumulants(MultFn.random(config.seed, order), order))
    second = distribution_oracle('b', moments_from_cumulants(MultFn.random(config.seed + 1, order), order))
    oracle = free_join(first, second)
    report = mixed_cumulant_report(oracle, [['a'], ['b']], top, config.enum_bound)
    mixed_vanish = report.max_abs == 0

    def alpha_a(k):
        return first.moment([('a',) * k])

    def alpha_b(k):
        return second.moment([('b',) * k])

    cases = [((1,), (1,), (1,), (1,)), ((2,), (1,), (1,), (2,)), ((1, 1), (1, 1), (1, 1), (1, 1))]
    display = True
    for n, m, n_tilde, m_tilde in cases[:2] if quick else cases:
        exact = centered_word_covariance(oracle, alternating_powers('a', 'b', n, m),
                                         alternating_powers('a', 'b', n_tilde[::-1], m_tilde[::-1]))
        display = display and exact == free_covariance_prediction(alpha_a, alpha_b, n, m, n_tilde, m_tilde)
    return mixed_vanish and display, (f'{len(report.entries)} mixed cumulants vanish: {mixed_vanish}; '
                                      f'covariance display: {display}')


def freeness_montecarlo(config, quick: bool):
    N, sample_config = _montecarlo_size(config, quick, 200)
    report = verify_asymptotic_freeness(GUE(N), HaarConjugate(DeterministicDiagonal(N, [1, -1])), sample_config,
                                        tolerance=config.tolerance)
    return report.passed, f'max |z| = {report.max_abs_z:.2f} over {len(report)} quantities at N={N}'


def iz_agreement(config, quick: bool):
    top = 4 if quick else 5
    rng = random.Random(config.seed)
    ka = MultFn.random(config.seed, top)
    x = [_random_fraction(rng) for _ in range(top)]
    left = iz_series(ka, deterministic_distribution(x), top, config.enum_bound)
    right = iz_r(ka, x, top)
    return left == right, f'coefficients through z^{top}'


CRITERIA = [
    Criterion(1, 'Moebius values', 'exact', moebius_values),
    Criterion(2, 'unit identity', 'exact', unit_identity),
    Criterion(3, 'counting concordance', 'exact', counting_concordance),
    Criterion(4, 'series against convolution', 'exact', series_against_convolution),
    Criterion(5, 'second-order moment-cumulant polynomials', 'exact', moment_cumulant_polynomials),
    Criterion(6, 'Weingarten exact', 'exact', weingarten_exact),
    Criterion(6, 'Haar Monte Carlo', 'montecarlo', weingarten_montecarlo),
    Criterion(7, 'finite-N system', 'exact', finite_n_system),
    Criterion(8, 'GUE fluctuations', 'montecarlo', gue_fluctuations),
    Criterion(9, 'Wishart fluctuations', 'montecarlo', wishart_fluctuations),
    Criterion(10, 'entry cumulants', 'montecarlo', entry_cumulants),
    Criterion(11, 'freeness engine', 'exact', freeness_exact),
    Criterion(11, 'asymptotic freeness', 'montecarlo', freeness_montecarlo),
    Criterion(12, 'IZ series', 'exact', iz_agreement),
]


def criteria_for(suite: str) -> List[Criterion]:
    if suite not in SUITES:
        raise PreconditionError(f'suite must be one of {SUITES}, got {suite!r}')
    return [c for c in CRITERIA if suite == 'all' or c.suite == suite]


def run_criterion(criterion: Criterion, config, quick: bool = False) -> CriterionResult:
    logger.info('running criterion %d (%s)', criterion.number, criterion.name)
    passed, detail = criterion.check(config, quick)
    if not passed:
        logger.warning('criterion %d (%s) failed: %s', criterion.number, criterion.name, detail)
    return CriterionResult(criterion.number, criterion.name, bool(passed), detail)


def run_suite(suite: str, config, quick: bool = False,
              run: Callable[[Criterion], CriterionResult] = None) -> List[CriterionResult]:
    run = run or (lambda criterion: run_criterion(criterion, config, quick))
    return [run(criterion) for criterion in criteria_for(suite)]

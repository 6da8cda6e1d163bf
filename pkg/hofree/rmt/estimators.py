"""
Monte Carlo estimates of trace and entry cumulants, checked against the
exact predictions of the series and Weingarten modules.

Sample cumulants come from sample moments through the set-partition
Moebius formula; error bars come from disjoint batches.
"""
import itertools
import logging
from functools import reduce
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from hofree.cumulants import ClassicalCumulants
from hofree.estimate import Estimate
from hofree.exceptions import MissingValueError, PreconditionError, SimulationError
from hofree.finite_n import FiniteNTable
from hofree.hops import FunctionOracle, free_covariance_prediction, min_rotation
from hofree.multfn import MultFn, diagrams_up_to, normalize_diagram
from hofree.rmt.ensembles import Ensemble, haar_unitary, sample_rng
from hofree.rmt.report import FluctuationReport
from hofree.rmt.runner import SampleConfig, SampleRunner
from hofree.weingarten import HaarPattern, leading_exponent, pattern_expectation

logger = logging.getLogger(__name__)

DEFAULT_FREENESS_CASES = {
    'first_order': ((1, 1), (2, 1), (1, 2), (2, 2)),
    'covariance': ((1, 1), (1, 2), (2, 2)),
    'spokes': (((1,), (1,), (1,), (1,)),
               ((2,), (1,), (2,), (1,)),
               ((1, 1), (1, 1), (1, 1), (1, 1)),
               ((1,), (1,), (1, 1), (1, 1))),
}


def min_samples(order: int) -> int:
    """Smallest sample count accepted for a cumulant of the given order."""
    return 25 * 4 ** (order - 1)


def check_samples(order: int, config: SampleConfig):
    needed = min_samples(order)
    if config.samples < needed:
        raise SimulationError(f'cumulants of order {order} need at least {needed} samples, got {config.samples}')
    if config.samples // config.batches <= order:
        raise SimulationError(f'{config.batches} batches of {config.samples} samples are too small '
                              f'for cumulants of order {order}')


def joint_cumulant(columns: np.ndarray) -> complex:
    """k_r of the r columns of a sample, from sample moments."""
    def moment(labels):
        return np.mean(np.prod(columns[:, list(labels)], axis=1))

    return ClassicalCumulants(moment).cumulant(tuple(range(columns.shape[1])))


def column_mean(columns: np.ndarray) -> complex:
    return np.mean(columns[:, 0])


def batched(rows: np.ndarray, statistic: Callable[[np.ndarray], complex], batches: int) -> Estimate:
    """The statistic on all rows, with replicas on disjoint batches; real part."""
    value = statistic(rows)
    replicas = [statistic(block) for block in np.array_split(rows, batches)]
    return Estimate(np.real(value), np.real(replicas))


def _letters(specs: Mapping[str, Ensemble]) -> Tuple[List[str], int]:
    if not specs:
        raise SimulationError('no ensembles given')
    sizes = {spec.N for spec in specs.values()}
    if len(sizes) != 1:
        raise SimulationError(f'ensembles of different sizes {sorted(sizes)}')
    return sorted(specs), sizes.pop()


def _matrices(specs: Mapping[str, Ensemble], letters: Sequence[str], seed: int, index: int) -> Dict[str, np.ndarray]:
    return {letter: specs[letter].sample(sample_rng(seed, stream, index)) for stream, letter in enumerate(letters)}


def word_trace(matrices: Mapping[str, np.ndarray], word: Sequence[str]) -> complex:
    return np.trace(reduce(np.matmul, (matrices[letter] for letter in word)))


def _powers(matrix: np.ndarray, top: int) -> List[np.ndarray]:
    """[I, A, A^2, ..., A^top]"""
    result = [np.eye(matrix.shape[0], dtype=matrix.dtype)]
    for _ in range(top):
        result.append(result[-1] @ matrix)
    return result


def estimate_phi(words: Sequence[Sequence[str]], specs: Mapping[str, Ensemble], config: SampleConfig) -> Estimate:
    """N^{r-2} k_r(Tr w_1, ..., Tr w_r)"""
    words = [tuple(w) for w in words]
    if not words or not all(words):
        raise PreconditionError('trace cumulants need at least one non-empty word')
    letters, N = _letters(specs)
    unknown = {letter for w in words for letter in w} - set(letters)
    if unknown:
        raise PreconditionError(f'no ensemble for letters {sorted(unknown)}')
    r = len(words)
    check_samples(r, config)

    def row(i):
        matrices = _matrices(specs, letters, config.seed, i)
        return [word_trace(matrices, w) for w in words]

    rows = SampleRunner(config).run_sync(row, r)
    return batched(rows, joint_cumulant, config.batches) * float(N) ** (r - 2)


def _trace_power_rows(spec: Ensemble, top: int, config: SampleConfig) -> np.ndarray:
    """Row i holds Tr A^1, ..., Tr A^top of sample i."""
    def row(i):
        return [np.trace(p) for p in _powers(spec.sample(sample_rng(config.seed, 0, i)), top)[1:]]

    return SampleRunner(config).run_sync(row, top)


def verify_fluctuations(spec: Ensemble, pairs: Sequence[Tuple[int, int]], config: SampleConfig,
                        tolerance: float = 3.0) -> FluctuationReport:
    """
    cov(Tr A^m, Tr A^n) against the second-order moments alpha_{m,n} of the
    limit distribution, plus the third trace cumulants, which must vanish.
    """
    if not pairs or min(min(p) for p in pairs) < 1:
        raise PreconditionError('fluctuation checks need pairs of positive powers')
    check_samples(3, config)
    top = max(max(p) for p in pairs)
    trunc = max(2, max(m + n for m, n in pairs))
    _, M2 = spec.moment_series(trunc)
    rows = _trace_power_rows(spec, top, config)

    report = FluctuationReport(tolerance)
    name, N, S, B = spec.describe(), spec.N, config.samples, config.batches
    for m, n in pairs:
        covariance = batched(rows[:, [m - 1, n - 1]], joint_cumulant, B)
        report.add(f'k2(Tr A^{m},Tr A^{n}) {name}', N, S, covariance, M2[(m, n)],
                   f'c2m_second of the {name} cumulant series')
        third = batched(rows[:, [m - 1, n - 1, m - 1]], joint_cumulant, B)
        report.add(f'k3(Tr A^{m},Tr A^{n},Tr A^{m}) {name}', N, S, third, 0,
                   'third-order trace cumulants vanish in the limit')
    return report


def _entry_positions(diagram: Tuple[int, ...], choice: int) -> List[Tuple[int, int]]:
    """Entries a_{i1 i2}, a_{i2 i3}, ..., a_{ik i1} along each index cycle, 0-based."""
    positions, start = [], choice * sum(diagram)
    for size in diagram:
        cycle = list(range(start, start + size))
        positions += [(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])]
        start += size
    return positions


def verify_entry_cumulants(spec: Ensemble, diagram: Sequence[int], config: SampleConfig, choices: int = 4,
                           tolerance: float = 3.0) -> FluctuationReport:
    """
    N^{n-1} k_n of the entries along one index cycle against kappa_n, or
    N^{m+n} k_{m+n} along two disjoint cycles against kappa_{m,n};
    averaged over disjoint index choices.
    """
    if not spec.unitarily_invariant:
        raise PreconditionError(f'entry cumulants need a unitarily invariant ensemble, got {spec.describe()}')
    diagram = normalize_diagram(diagram)
    if len(diagram) not in (1, 2):
        raise PreconditionError(f'entry cumulants are defined for one or two index cycles, got {diagram}')
    size = sum(diagram)
    choices = min(choices, spec.N // size)
    if choices < 1:
        raise PreconditionError(f'N={spec.N} is too small for {size} distinct indices')
    check_samples(size, config)
    positions = [_entry_positions(diagram, t) for t in range(choices)]

    def row(i):
        a = spec.sample(sample_rng(config.seed, 0, i))
        return [a[p] for choice in positions for p in choice]

    rows = SampleRunner(config).run_sync(row, choices * size)
    estimate = sum(batched(rows[:, t * size:(t + 1) * size], joint_cumulant, config.batches)
                   for t in range(choices)) / choices
    C, C2 = spec.cumulant_series(max(2, size))
    if len(diagram) == 1:
        estimate = estimate * float(spec.N) ** (size - 1)
        prediction, provenance = C[size], 'first-order free cumulant'
    else:
        estimate = estimate * float(spec.N) ** size
        prediction, provenance = C2[diagram], 'second-order free cumulant'

    report = FluctuationReport(tolerance)
    label = ','.join(map(str, diagram))
    report.add(f'entry cumulant ({label}) {spec.describe()}', spec.N, config.samples, estimate, prediction,
               provenance)
    return report


def _centered_product(powers_a, powers_b, alpha_a, alpha_b, n: Sequence[int], m: Sequence[int]) -> np.ndarray:
    identity = powers_a[0]
    product = identity
    for k, l in zip(n, m):
        product = product @ (powers_a[k] - float(alpha_a(k)) * identity) @ (powers_b[l] - float(alpha_b(l)) * identity)
    return product


def verify_asymptotic_freeness(spec_a: Ensemble, spec_b: Ensemble, config: SampleConfig, cases: Mapping = None,
                               tolerance: float = 3.0) -> FluctuationReport:
    """
    Independent A and B, one of them unitarily invariant: alternating
    centered products vanish to first order, mixed covariances of centered
    traces vanish, and covariances of alternating centered products follow
    the second-order freeness formula in the first-order moments.
    """
    if not (spec_a.unitarily_invariant or spec_b.unitarily_invariant):
        raise PreconditionError('asymptotic freeness needs at least one unitarily invariant ensemble')
    _, N = _letters({'a': spec_a, 'b': spec_b})
    check_samples(2, config)
    cases = dict(DEFAULT_FREENESS_CASES, **(cases or {}))
    spokes = [tuple(map(tuple, case)) for case in cases['spokes']]
    top_a = max([n for n, _ in cases['first_order']] + [n for n, _ in cases['covariance']]
                + [k for case in spokes for k in case[0] + case[2]])
    top_b = max([m for _, m in cases['first_order']] + [m for _, m in cases['covariance']]
                + [k for case in spokes for k in case[1] + case[3]])
    trunc = 2 * max(top_a, top_b, 1)
    MA, _ = spec_a.moment_series(trunc)
    MB, _ = spec_b.moment_series(trunc)

    def alpha_a(k):
        return MA[k]

    def alpha_b(k):
        return MB[k]

    def row(i):
        a = spec_a.sample(sample_rng(config.seed, 0, i))
        b = spec_b.sample(sample_rng(config.seed, 1, i))
        pa, pb = _powers(a, top_a), _powers(b, top_b)
        values = []
        for n, m in cases['first_order']:
            values.append(np.trace(_centered_product(pa, pb, alpha_a, alpha_b, (n,), (m,))) / N)
        for n, m in cases['covariance']:
            values += [np.trace(pa[n]), np.trace(pb[m])]
        for n, m, n_tilde, m_tilde in spokes:
            values.append(np.trace(_centered_product(pa, pb, alpha_a, alpha_b, n, m)))
            values.append(np.trace(_centered_product(pa, pb, alpha_a, alpha_b, n_tilde[::-1], m_tilde[::-1])))
        return values

    width = len(cases['first_order']) + 2 * len(cases['covariance']) + 2 * len(spokes)
    rows = SampleRunner(config).run_sync(row, width)

    report = FluctuationReport(tolerance)
    name, S, B = f'{spec_a.describe()} vs {spec_b.describe()}', config.samples, config.batches
    column = 0
    for n, m in cases['first_order']:
        report.add(f'tr(centered A^{n} B^{m}) {name}', N, S, batched(rows[:, [column]], column_mean, B), 0,
                   'first-order freeness of alternating centered products')
        column += 1
    for n, m in cases['covariance']:
        report.add(f'k2(Tr A^{n},Tr B^{m}) {name}', N, S, batched(rows[:, [column, column + 1]], joint_cumulant, B),
                   0, 'mixed covariance of centered traces vanishes')
        column += 2
    for n, m, n_tilde, m_tilde in spokes:
        prediction = free_covariance_prediction(alpha_a, alpha_b, n, m, n_tilde, m_tilde)
        label = f'k2(Y{list(n)}{list(m)},Y~{list(n_tilde)}{list(m_tilde)}) {name}'
        report.add(label, N, S, batched(rows[:, [column, column + 1]], joint_cumulant, B), prediction,
                   'second-order freeness covariance formula')
        column += 2
    return report


def verify_haar_moments(patterns: Sequence[HaarPattern], N: int, config: SampleConfig,
                        tolerance: float = 3.0) -> FluctuationReport:
    """Sampled Haar monomials against their exact Weingarten expectations."""
    for pattern in patterns:
        if max(pattern.i + pattern.j + pattern.i_prime + pattern.j_prime, default=1) > N:
            raise PreconditionError(f'pattern {pattern} indexes beyond N={N}')

    def row(i):
        u = haar_unitary(N, sample_rng(config.seed, 0, i))
        values = []
        for p in patterns:
            plain = np.prod([u[a - 1, b - 1] for a, b in zip(p.i, p.j)])
            conjugated = np.prod([np.conj(u[a - 1, b - 1]) for a, b in zip(p.i_prime, p.j_prime)])
            values.append(plain * conjugated)
        return values

    rows = SampleRunner(config).run_sync(row, len(patterns))
    report = FluctuationReport(tolerance)
    for k, pattern in enumerate(patterns):
        report.add(f'haar monomial {tuple(pattern)}', N, config.samples,
                   batched(rows[:, [k]], column_mean, config.batches), pattern_expectation(pattern, N),
                   'Weingarten expectation')
    return report


def sampled_oracle(specs: Mapping[str, Ensemble], config: SampleConfig, max_len: int) -> FunctionOracle:
    """
    A stochastic moment oracle over sampled traces of every cyclic word of
    length <= max_len: phi_r = N^{r-2} k_r(Tr w_1, ..., Tr w_r).
    """
    letters, N = _letters(specs)
    if max_len < 1:
        raise PreconditionError(f'maximal word length must be positive, got {max_len}')
    words = sorted({min_rotation(w) for k in range(1, max_len + 1) for w in itertools.product(letters, repeat=k)})
    column = {w: k for k, w in enumerate(words)}

    def row(i):
        matrices = _matrices(specs, letters, config.seed, i)
        return [word_trace(matrices, w) for w in words]

    rows = SampleRunner(config).run_sync(row, len(words))
    logger.debug('sampled %d cyclic words of length <= %d', len(words), max_len)

    def moment(traces):
        missing = [t for t in traces if t not in column]
        if missing:
            raise MissingValueError(f'words {missing} are longer than the sampled {max_len}')
        check_samples(len(traces), config)
        return batched(rows[:, [column[t] for t in traces]], joint_cumulant, config.batches) \
            * float(N) ** (len(traces) - 2)

    return FunctionOracle(letters, moment, exact=False,
                          name='sampled[' + ','.join(f'{k}={specs[k].describe()}' for k in letters) + ']')


def finite_n_table(spec: Ensemble, config: SampleConfig, order: int) -> FiniteNTable:
    """phi^{(N)}(1_k, gamma_lambda)[A, ..., A] = k_r(Tr A^l1, ..., Tr A^lr), unscaled."""
    if order < 1:
        raise PreconditionError(f'order must be positive, got {order}')
    check_samples(order, config)
    rows = _trace_power_rows(spec, order, config)
    table = {d: batched(rows[:, [k - 1 for k in d]], joint_cumulant, config.batches) for d in diagrams_up_to(order)}
    return FiniteNTable(spec.N, MultFn(table, f'sampled {spec.describe()}'), 'phi')


def cumulant_exponent(spec: Ensemble, powers: Sequence[int], Ns: Sequence[int], config: SampleConfig) -> float:
    """Measured N-exponent of k_r(Tr A^p1, ..., Tr A^pr); 2 - r when the limit exists."""
    words = [('a',) * p for p in powers]

    def value(N):
        return estimate_phi(words, {'a': spec.resized(N)}, config).value / float(N) ** (len(words) - 2)

    slope = leading_exponent(value, Ns)
    logger.info('k_%d of %s scales like N^%.3f', len(words), spec.describe(), slope)
    return slope

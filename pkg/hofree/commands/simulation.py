from hofree.exceptions import PreconditionError
from hofree.rmt.ensembles import parse_ensemble
from hofree.rmt.estimators import (estimate_phi, verify_asymptotic_freeness, verify_entry_cumulants,
                                   verify_fluctuations, verify_haar_moments)
from hofree.rmt.report import FluctuationReport
from hofree.weingarten import parse_haar_pattern

QUANTITIES = ('phi', 'fluctuations', 'entries', 'freeness', 'haar')


def _phi_report(spec, powers, sample_config, tolerance):
    powers = tuple(powers or ())
    if not powers or min(powers) < 1:
        raise PreconditionError('phi needs a list of positive powers')
    r = len(powers)
    estimate = estimate_phi([('a',) * k for k in powers], {'a': spec}, sample_config)
    M, M2 = spec.moment_series(max(2, sum(powers)))
    if r == 1:
        prediction, provenance = M[powers[0]], 'c2m_first of the limit cumulants'
    elif r == 2:
        prediction, provenance = M2[powers], 'c2m_second of the limit cumulants'
    else:
        prediction, provenance = 0, 'higher trace cumulants vanish in the limit'
    report = FluctuationReport(tolerance)
    label = ','.join(f'Tr A^{k}' for k in powers)
    report.add(f'N^{r - 2} k{r}({label}) {spec.describe()}', spec.N, sample_config.samples, estimate, prediction,
               provenance)
    return report


def simulate(config, quantity, ensemble, N, pairs=None, diagram=None, other=None, patterns=None, powers=None,
             **sample_options):
    if quantity not in QUANTITIES:
        raise PreconditionError(f'quantity must be one of {QUANTITIES}, got {quantity!r}')
    sample_config = config.sample_config(**{k: v for k, v in sample_options.items() if v is not None})
    tolerance = config.tolerance
    if quantity == 'haar':
        if not patterns:
            raise PreconditionError('haar needs at least one pattern')
        return verify_haar_moments([parse_haar_pattern(p) for p in patterns], N, sample_config, tolerance)
    spec = parse_ensemble(ensemble, N)
    if quantity == 'phi':
        return _phi_report(spec, powers, sample_config, tolerance)
    if quantity == 'fluctuations':
        return verify_fluctuations(spec, pairs or [(1, 1), (2, 2)], sample_config, tolerance)
    if quantity == 'entries':
        return verify_entry_cumulants(spec, diagram or (2,), sample_config, tolerance=tolerance)
    if other is None:
        raise PreconditionError('freeness needs a second ensemble')
    return verify_asymptotic_freeness(spec, parse_ensemble(other, N), sample_config, tolerance=tolerance)


class SimulationCommandMixin:
    COMMAND_HANDLERS = {
        'SIMULATE': simulate,
    }

    RESPONSE_CALLBACKS = {
        'SIMULATE': lambda r, **_: r,
    }

    async def simulate(self, quantity, ensemble, N, **options) -> FluctuationReport:
        """
        Monte Carlo estimates against exact limit predictions.

        ``quantity`` picks the check: ``phi`` (scaled trace cumulants of the
        given ``powers``), ``fluctuations`` (``pairs`` of powers),
        ``entries`` (an index ``diagram``), ``freeness`` (against the
        ``other`` ensemble) or ``haar`` (monomial ``patterns``).
        """
        return await self.execute_command('SIMULATE', quantity, ensemble, N, **options)

from hofree.exceptions import PreconditionError
from hofree.series import Series1, Series2
from hofree.transforms import c2m_first, c2m_second, cauchy_forms, m2c_first, m2c_second, r_transform2
from hofree.utils import fraction_str


def _pair(first: Series1, second: Series2, forward, backward, trunc=None):
    if trunc is not None:
        first = first.truncate(min(trunc, first.trunc))
        second = second.truncate(min(trunc, second.trunc)) if second is not None else None
    result = forward(first)
    return result, (backward(first, second) if second is not None else None)


def cumulants_to_moments(config, C: Series1, C2: Series2 = None, trunc=None):
    return _pair(C, C2, c2m_first, c2m_second, trunc or config.trunc)


def moments_to_cumulants(config, M: Series1, M2: Series2 = None, trunc=None):
    return _pair(M, M2, m2c_first, m2c_second, trunc or config.trunc)


def second_order_evaluation(config, C: Series1, C2: Series2, points=()):
    if C2 is None:
        raise PreconditionError('second-order evaluation needs second-order cumulants')
    trunc = min(C.trunc, C2.trunc, config.trunc)
    C, C2 = C.truncate(trunc), C2.truncate(trunc)
    M, M2 = c2m_first(C), c2m_second(C, C2)
    return M2, r_transform2(C2), cauchy_forms(M, M2, points)


def parse_series_pair(response, **_options):
    first, second = response
    result = {'first': first.to_dict()}
    if second is not None:
        result['second'] = second.to_dict()
    return result


def parse_second_order(response, **_options):
    M2, R, report = response
    return {
        'moments': M2.to_dict(),
        'r_transform': R.to_dict(),
        'cauchy_residual_zero': report.residual_series_is_zero,
        'points': [{'z': fraction_str(p.z), 'w': fraction_str(p.w), 'residual': fraction_str(p.residual)}
                   for p in report.points],
    }


class SeriesCommandMixin:
    COMMAND_HANDLERS = {
        'C2M': cumulants_to_moments,
        'M2C': moments_to_cumulants,
        'SERIES2': second_order_evaluation,
    }

    RESPONSE_CALLBACKS = {
        'C2M': parse_series_pair,
        'M2C': parse_series_pair,
        'SERIES2': parse_second_order,
    }

    async def c2m(self, C: Series1, C2: Series2 = None, trunc=None):
        """First- (and second-) order moments from free cumulants"""
        return await self.execute_command('C2M', C, C2, trunc=trunc)

    async def m2c(self, M: Series1, M2: Series2 = None, trunc=None):
        return await self.execute_command('M2C', M, M2, trunc=trunc)

    async def series2(self, C: Series1, C2: Series2, points=()):
        """
        Second-order moments, the second-order R-transform and the Cauchy
        transform identity checked as a series and at ``points``.
        """
        return await self.execute_command('SERIES2', C, C2, points=points)

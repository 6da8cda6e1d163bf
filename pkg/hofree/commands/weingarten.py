from fractions import Fraction

from hofree.exceptions import PreconditionError
from hofree.finite_n import METHODS, LimitEstimate, kappa_limit, kappaN_from_phiN, phiN_from_kappaN
from hofree.multfn import normalize_diagram
from hofree.ps import pp_full
from hofree.utils import fraction_str, pretty_fraction, to_fraction
from hofree.weingarten import parse_haar_pattern, pattern_expectation, wg_table, wg_table_full


def weingarten_table(config, n, N, full=False):
    if n < 0:
        raise PreconditionError(f'order must be non-negative, got {n}')
    return wg_table_full(n, N) if full else wg_table(n, to_fraction(N))


def haar_moment(config, pattern, N, n=None):
    parsed = parse_haar_pattern(pattern)
    degree = max(len(parsed.i), len(parsed.i_prime))
    if n is not None and n != degree:
        raise PreconditionError(f'pattern {pattern!r} has degree {degree}, not {n}')
    return pattern_expectation(parsed, to_fraction(N))


def finite_n(config, tables, method='relative', extrapolate=None):
    """
    Invert a single table (phi to kappa or back), or extrapolate
    kappa^{(N)}(1_n, gamma_diagram) over several N.
    """
    if method not in METHODS:
        raise PreconditionError(f'method must be one of {METHODS}, got {method!r}')
    if not tables:
        raise PreconditionError('no finite-N tables given')
    if extrapolate is None:
        if len(tables) != 1:
            raise PreconditionError('give one table to invert, or a diagram to extrapolate')
        table = tables[0]
        return kappaN_from_phiN(table, method) if table.kind == 'phi' else phiN_from_kappaN(table)
    kappas = [t if t.kind == 'kappa' else kappaN_from_phiN(t, method) for t in sorted(tables, key=lambda t: t.N)]
    target = pp_full(normalize_diagram(extrapolate))
    return kappa_limit(kappas, target.partition, target.perm, config.tolerance)


def parse_finite_n(response, **_options):
    if isinstance(response, LimitEstimate):
        value = response.value
        return {
            'value': fraction_str(value) if isinstance(value, Fraction) else float(value),
            'std_err': float(response.std_err),
            'converged': bool(response.converged),
        }
    return response.to_dict()


class WeingartenCommandMixin:
    COMMAND_HANDLERS = {
        'WG': weingarten_table,
        'HAAR MOMENT': haar_moment,
        'FINITE N': finite_n,
    }

    RESPONSE_CALLBACKS = {
        'WG': lambda r, **_: r.to_dict(),
        'HAAR MOMENT': lambda r, **_: pretty_fraction(r),
        'FINITE N': parse_finite_n,
    }

    async def wg(self, n, N, full=False) -> dict:
        """Weingarten function of S_n at parameter N, keyed by cycle type"""
        return await self.execute_command('WG', n, N, full=full)

    async def haar_moment(self, pattern, N, n=None) -> str:
        """
        Exact expectation of a monomial in the entries of an N x N Haar
        unitary, e.g. ``|u11|^4`` or ``u11 u22 ~u12 ~u21``.
        """
        return await self.execute_command('HAAR MOMENT', pattern, N, n=n)

    async def finite_n(self, tables, method='relative', extrapolate=None):
        return await self.execute_command('FINITE N', list(tables), method=method, extrapolate=extrapolate)

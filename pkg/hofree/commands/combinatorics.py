from hofree.counting import closed_form_zeta_power, count_bruteforce, count_recursive, rec_fact
from hofree.exceptions import AcceptanceError, PreconditionError
from hofree.multfn import MultFn, convolve, moebius_geometric, moebius_recursion, moebius_table, normalize_diagram
from hofree.permutation import check_profile
from hofree.ps import PartitionedPermutation, check_bound, factorizations2, pp_full
from hofree.utils import dict_merge, pretty_fraction, string_keys_to_dict

MOEBIUS_METHODS = ('table', 'recursion', 'geometric')


def count_profile(config, profile, brute_force=False):
    profile = check_profile(profile)
    counts = {
        'closed_form': closed_form_zeta_power(2, profile),
        'recursive': count_recursive(profile),
        'rec_fact': rec_fact(profile),
    }
    if brute_force:
        check_bound(sum(profile), config.enum_bound, config.allow_large)
        counts['bruteforce'] = count_bruteforce(profile)
    return profile, counts


def moebius_value(config, diagram=None, up_to=None, method='table'):
    if (diagram is None) == (up_to is None):
        raise PreconditionError('give exactly one of a diagram or an order')
    if method not in MOEBIUS_METHODS:
        raise PreconditionError(f'method must be one of {MOEBIUS_METHODS}, got {method!r}')
    if up_to is not None:
        return moebius_table(up_to, config.enum_bound, config.allow_large)
    diagram = normalize_diagram(diagram)
    if method == 'table':
        return moebius_table(sum(diagram), config.enum_bound, config.allow_large)[diagram]
    target = pp_full(diagram)
    if method == 'recursion':
        return moebius_recursion(target)
    check_bound(target.n, config.enum_bound, config.allow_large)
    return moebius_geometric(target)


def convolve_tables(config, f: MultFn, g: MultFn, up_to=None):
    up_to = min(f.order_bound, g.order_bound) if up_to is None else up_to
    return convolve(f, g, up_to, config.enum_bound, config.allow_large)


def factorize(config, target: PartitionedPermutation):
    return factorizations2(target, config.enum_bound, config.allow_large)


def parse_count(response, **_options):
    profile, counts = response
    values = set(counts.values())
    if len(values) != 1:
        raise AcceptanceError(f'counting methods disagree at {profile}: {counts}')
    return {'profile': list(profile), 'count': values.pop(), 'methods': counts}


def parse_moebius(response, **_options):
    if isinstance(response, MultFn):
        return response.to_list()
    return pretty_fraction(response)


def parse_factorizations(response, **_options):
    return [{'first': a.to_dict(), 'second': b.to_dict()} for a, b in response]


class CombinatoricsCommandMixin:
    COMMAND_HANDLERS = {
        'COUNT': count_profile,
        'MOEBIUS': moebius_value,
        'CONVOLVE': convolve_tables,
        'FACTORIZE': factorize,
    }

    RESPONSE_CALLBACKS = dict_merge(
        string_keys_to_dict('CONVOLVE', lambda r, **_: r.to_list()),
        {
            'COUNT': parse_count,
            'MOEBIUS': parse_moebius,
            'FACTORIZE': parse_factorizations,
        },
    )

    async def count(self, profile, brute_force=False):
        """
        Number of annular non-crossing permutations on circles of the
        given sizes, by every available method; raises AcceptanceError
        when the methods disagree.
        """
        return await self.execute_command('COUNT', profile, brute_force=brute_force)

    async def moebius(self, diagram=None, up_to=None, method='table'):
        """Moebius value at (1_n, gamma_diagram), or the whole table up to ``up_to``"""
        return await self.execute_command('MOEBIUS', diagram=diagram, up_to=up_to, method=method)

    async def convolve(self, f: MultFn, g: MultFn, up_to=None):
        return await self.execute_command('CONVOLVE', f, g, up_to=up_to)

    async def factorize(self, target: PartitionedPermutation):
        """All geodesic factorizations (a, b) with a * b = target"""
        return await self.execute_command('FACTORIZE', target)

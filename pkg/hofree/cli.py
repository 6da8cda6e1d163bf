"""
Command-line front end.

Exit codes: 0 success, 2 unparsable input, 3 violated precondition,
4 failed acceptance check.
"""
import asyncio
import logging
import sys
from argparse import ArgumentParser

from hofree.client import Calculator
from hofree.config import Config
from hofree.exceptions import AcceptanceError, HofreeError, ParseError, PreconditionError, SerializeError
from hofree.finite_n import FiniteNTable
from hofree.multfn import MultFn, moebius_table
from hofree.partition import SetPartition
from hofree.permutation import Permutation
from hofree.ps import PartitionedPermutation, pp_full
from hofree.serializer import Serializer
from hofree.series import Series1, Series2
from hofree.transforms import free_poisson, semicircle
from hofree.utils import parse_int_list, to_fraction

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_ACCEPTANCE = 4

NAMED_TABLES = ('zeta', 'delta', 'moebius')


def _options_parser() -> ArgumentParser:
    parser = ArgumentParser(add_help=False)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress (-v) or everything (-vv)')
    parser.add_argument('-o', '--output', help='write the artifact here instead of stdout')
    parser.add_argument('--threads', help='Monte Carlo thread budget (env HOFC_THREADS)')
    parser.add_argument('--seed', help='master seed (env HOFC_SEED, default 20061101)')
    parser.add_argument('--enum-bound', dest='enum_bound', help='largest n to enumerate (default 8)')
    parser.add_argument('--allow-large', dest='allow_large', action='store_true', default=False,
                        help='enumerate beyond the bound')
    parser.add_argument('--trunc', help='series truncation degree (default 12)')
    parser.add_argument('--tolerance', help='largest accepted |z| (default 3.0)')
    parser.add_argument('--samples', help='Monte Carlo samples (default 4000)')
    parser.add_argument('--batches', help='batches for standard errors (default 20)')
    return parser


def build_parser() -> ArgumentParser:
    options = _options_parser()
    parser = ArgumentParser(prog='hofree', description='Exact higher-order freeness computations '
                                                       'and random matrix checks', allow_abbrev=False)
    commands = parser.add_subparsers(dest='command', required=True)

    def add(name, help_text):
        return commands.add_parser(name, help=help_text, parents=[options], allow_abbrev=False)

    p = add('count', 'annular non-crossing permutation counts')
    p.add_argument('--profile', required=True, help='circle sizes, e.g. 2,2')
    p.add_argument('--brute-force', dest='brute_force', action='store_true')

    p = add('moebius', 'Moebius function values')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--diagram', help='cycle type, e.g. 2 or 2,1')
    group.add_argument('--up-to', dest='up_to', type=int, help='whole table up to this order')
    p.add_argument('--method', default='table', choices=('table', 'recursion', 'geometric'))

    p = add('convolve', 'convolution of multiplicative functions')
    p.add_argument('--f', required=True, help=f'JSON file or one of {", ".join(NAMED_TABLES)}')
    p.add_argument('--g', required=True, help=f'JSON file or one of {", ".join(NAMED_TABLES)}')
    p.add_argument('--up-to', dest='up_to', type=int)

    p = add('factorize', 'geodesic factorizations of a partitioned permutation')
    p.add_argument('--profile', help='shorthand for (1_n, gamma) on circles of these sizes')
    p.add_argument('--blocks', help='set partition, e.g. {1,2}{3}')
    p.add_argument('--perm', help='cycle notation, e.g. (1,2)(3)')

    for name, help_text in (('c2m', 'moments from free cumulants'), ('m2c', 'free cumulants from moments'),
                            ('series2', 'second-order moments, R-transform and Cauchy identity')):
        p = add(name, help_text)
        p.add_argument('--input', help='series JSON with "first" and optionally "second"')
        p.add_argument('--preset', help='cumulants of semicircle or free-poisson:c')
        if name == 'series2':
            p.add_argument('--point', action='append', default=[], help='sample point z,w (repeatable)')

    p = add('wg', 'Weingarten function')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--N', required=True)
    p.add_argument('--full', action='store_true', help='solve in the full S_n basis')

    p = add('haar-moment', 'exact Haar unitary monomial expectation')
    p.add_argument('--pattern', required=True, help="e.g. '|u11|^4' or 'u11 u22 ~u12 ~u21'")
    p.add_argument('--N', required=True)
    p.add_argument('--n', type=int, help='expected degree of the pattern')

    p = add('finite-n', 'finite-N moment and cumulant tables')
    p.add_argument('--input', action='append', required=True, help='table JSON (repeatable)')
    p.add_argument('--method', default='relative', choices=('relative', 'solve', 'gg'))
    p.add_argument('--extrapolate', help='diagram whose N -> oo limit to extrapolate')

    p = add('simulate', 'Monte Carlo report as CSV')
    p.add_argument('--quantity', default='fluctuations',
                   choices=('phi', 'fluctuations', 'entries', 'freeness', 'haar'))
    p.add_argument('--ensemble', default='gue', help='gue, wishart:c, diag:v1,v2,... or haar:<ensemble>')
    p.add_argument('--other', help='second ensemble for freeness')
    p.add_argument('--n', type=int, default=100, help='matrix size')
    p.add_argument('--pairs', help='powers for fluctuations, e.g. 1,1;2,2')
    p.add_argument('--diagram', help='index cycles for entries, e.g. 2 or 1,1')
    p.add_argument('--powers', help='trace powers for phi, e.g. 2,2')
    p.add_argument('--pattern', action='append', help='Haar pattern (repeatable)')

    p = add('check', 'run the acceptance criteria')
    p.add_argument('--suite', default='exact', choices=('exact', 'montecarlo', 'all'))
    p.add_argument('--quick', action='store_true', help='reduced Monte Carlo sizes')
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def load_multfn(source: str, up_to, serializer: Serializer) -> MultFn:
    if source in NAMED_TABLES:
        if up_to is None:
            raise PreconditionError(f'the {source} table needs --up-to')
        if source == 'moebius':
            return moebius_table(up_to)
        return MultFn.zeta(up_to) if source == 'zeta' else MultFn.delta(up_to)
    data = serializer.load(source)
    if isinstance(data, dict):
        entries = next((data[k] for k in ('values', 'phi', 'kappa') if k in data), None)
        if entries is None:
            raise ParseError(f'{source} has no "values", "phi" or "kappa" entries')
        data = entries
    return MultFn.from_list(data, source)


def parse_target(args) -> PartitionedPermutation:
    if args.profile:
        if args.blocks or args.perm:
            raise ParseError('give either --profile or --blocks and --perm')
        return pp_full(parse_int_list(args.profile))
    if not (args.blocks and args.perm):
        raise ParseError('factorize needs --profile, or both --blocks and --perm')
    partition = SetPartition.parse(args.blocks)
    return PartitionedPermutation(partition, Permutation.parse(args.perm, partition.n))


def load_series(args, trunc: int, serializer: Serializer):
    if bool(args.input) == bool(args.preset):
        raise ParseError('give exactly one of --input and --preset')
    if args.preset:
        kind, _, rest = args.preset.partition(':')
        if kind == 'semicircle' and not rest:
            return semicircle(trunc), Series2({}, trunc)
        if kind == 'free-poisson':
            return free_poisson(to_fraction(rest or '1'), trunc), Series2({}, trunc)
        raise ParseError(f'unknown preset {args.preset!r}')
    data = serializer.load(args.input)
    try:
        first = Series1.from_dict(data['first'])
    except (KeyError, TypeError) as e:
        raise ParseError(f'{args.input} has no "first" series') from e
    second = Series2.from_dict(data['second']) if data.get('second') is not None else None
    return first, second


def parse_point(text: str):
    try:
        z, w = text.split(',')
    except ValueError as e:
        raise ParseError(f'invalid point {text!r}, expected z,w') from e
    return to_fraction(z), to_fraction(w)


def parse_pairs(text: str):
    if not text:
        return None
    pairs = [parse_int_list(chunk, 'pair') for chunk in text.split(';') if chunk]
    if any(len(p) != 2 for p in pairs):
        raise ParseError(f'invalid pairs {text!r}, expected m,n;m,n')
    return pairs


async def dispatch(args, calculator: Calculator, serializer: Serializer):
    """The artifact of one subcommand: a string, plain data or a report."""
    config = calculator.config
    command = args.command
    if command == 'count':
        return str((await calculator.count(parse_int_list(args.profile), args.brute_force))['count'])
    if command == 'moebius':
        diagram = parse_int_list(args.diagram, 'diagram') if args.diagram else None
        return await calculator.moebius(diagram, args.up_to, args.method)
    if command == 'convolve':
        f = load_multfn(args.f, args.up_to, serializer)
        g = load_multfn(args.g, args.up_to, serializer)
        return await calculator.convolve(f, g, args.up_to)
    if command == 'factorize':
        return await calculator.factorize(parse_target(args))
    if command in ('c2m', 'm2c', 'series2'):
        first, second = load_series(args, config.trunc, serializer)
        if command == 'c2m':
            return await calculator.c2m(first, second)
        if command == 'm2c':
            return await calculator.m2c(first, second)
        return await calculator.series2(first, second, [parse_point(p) for p in args.point])
    if command == 'wg':
        return await calculator.wg(args.n, to_fraction(args.N), args.full)
    if command == 'haar-moment':
        return await calculator.haar_moment(args.pattern, to_fraction(args.N), args.n)
    if command == 'finite-n':
        tables = [FiniteNTable.from_dict(serializer.load(path)) for path in args.input]
        extrapolate = parse_int_list(args.extrapolate, 'diagram') if args.extrapolate else None
        return await calculator.finite_n(tables, args.method, extrapolate)
    if command == 'simulate':
        return await calculator.simulate(
            args.quantity, args.ensemble, args.n, pairs=parse_pairs(args.pairs),
            diagram=parse_int_list(args.diagram, 'diagram') if args.diagram else None,
            other=args.other, patterns=args.pattern,
            powers=parse_int_list(args.powers, 'powers') if args.powers else None)
    if command == 'check':
        return await calculator.check(args.suite, args.quick)
    raise ParseError(f'unknown command {command!r}')


def render(command: str, artifact, serializer: Serializer):
    if command == 'simulate':
        return artifact.to_csv()
    if command == 'check':
        return ''.join(f'criterion {r.number} ({r.name}): {"PASS" if r.passed else "FAIL"} - {r.detail}\n'
                       for r in artifact)
    if isinstance(artifact, str):
        return artifact + '\n'
    return serializer.serialize(artifact) + '\n'


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    serializer = Serializer(indent=2)
    try:
        calculator = Calculator(Config.from_args(args))
        artifact = asyncio.run(dispatch(args, calculator, serializer))
        text = render(args.command, artifact, serializer)
        if args.output:
            with open(args.output, 'w', encoding='utf-8') as f:
                f.write(text)
        else:
            sys.stdout.write(text)
    except AcceptanceError as e:
        logger.error('%s', e)
        return EXIT_ACCEPTANCE
    except (ParseError, SerializeError) as e:
        logger.error('%s', e)
        return EXIT_PARSE
    except HofreeError as e:
        logger.error('%s', e)
        return EXIT_PRECONDITION
    if args.command == 'check' and not all(r.passed for r in artifact):
        return EXIT_ACCEPTANCE
    if args.command == 'simulate' and not artifact.passed:
        logger.warning('%d of %d rows exceed |z| = %s', len(artifact.failures()), len(artifact), artifact.tolerance)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())

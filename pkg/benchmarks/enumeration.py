import sys
import time
from argparse import ArgumentParser
from functools import wraps

from hofree.multfn import diagrams_of, moebius_geometric, moebius_recursion, moebius_table
from hofree.ps import enumerate_ps, factorizations2, pp_full


def parse_args():
    parser = ArgumentParser()
    parser.add_argument('-n',
                        type=int,
                        help='Largest order to enumerate (default 5)',
                        default=5)
    parser.add_argument('-r',
                        type=int,
                        help='Repetitions per measurement (default 3)',
                        default=3)

    args = parser.parse_args()
    print(args)
    return args


def timer(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        ret = func(*args, **kwargs)
        duration = time.perf_counter() - start
        print(f'{func.__name__}({", ".join(map(str, args))}) - {ret} results')
        print(f'Duration  = {duration:.4f}s')
        return ret
    return wrapper


@timer
def ps_elements(n):
    return len(enumerate_ps(n, bound=n))


@timer
def full_factorizations(n):
    factorizations2.cache_clear()
    return sum(len(factorizations2(pp_full(d), bound=n)) for d in diagrams_of(n))


@timer
def moebius_by_table(n):
    moebius_table.cache_clear()
    return len(moebius_table(n, bound=n).table)


@timer
def moebius_by_recursion(n):
    return sum(1 for d in diagrams_of(n) if moebius_recursion(pp_full(d)) is not None)


@timer
def moebius_by_geometric(n):
    return sum(1 for d in diagrams_of(n) if moebius_geometric(pp_full(d)) is not None)


def run():
    args = parse_args()
    for n in range(1, args.n + 1):
        for _ in range(args.r):
            ps_elements(n)
            full_factorizations(n)
            moebius_by_table(n)
            moebius_by_recursion(n)
            moebius_by_geometric(n)


if __name__ == '__main__':
    sys.exit(run())

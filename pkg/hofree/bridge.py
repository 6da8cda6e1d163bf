import logging
from collections import namedtuple
from fractions import Fraction
from typing import Dict

from hofree.exceptions import BoundExceededError
from hofree.multfn import MultFn
from hofree.permutation import Permutation, enumerate_snc, gamma_of_profile
from hofree.ps import (DEFAULT_ENUM_BOUND, check_bound, direct_product, factorizations2, pp_disc, pp_full,
                       tunnel_joins)
from hofree.typing import Diagram

logger = logging.getLogger(__name__)

H2Check = namedtuple('H2Check', 'expanded direct holds')


class TildeBridge:
    """
    Restrictions of a multiplicative function to the first- and
    second-order pieces of its values on two circles.
    """

    def __init__(self, f: MultFn):
        self.f = f

    def first(self, pi: Permutation):
        """f~_1(pi) = f(0_pi, pi)"""
        return self.f.evaluate(pp_disc(pi))

    def second(self, pi1: Permutation, pi2: Permutation):
        """Sum of f(V, pi1 x pi2) over V joining one cycle of pi1 to one of pi2."""
        total = Fraction(0)
        for V in tunnel_joins(pi1, pi2):
            total += self.f.evaluate(V)
        return total

    def first_table(self, up_to: int) -> Dict[Diagram, object]:
        return {(k,): self.f[(k,)] for k in range(1, up_to + 1)}


def second_order_tilde_bridge(f: MultFn, m: int, n: int, bound: int = DEFAULT_ENUM_BOUND,
                              allow_large: bool = False) -> TildeBridge:
    check_bound(m + n, bound, allow_large)
    if m + n > f.order_bound:
        raise BoundExceededError(f'bridge at ({m}, {n}) needs values up to order {m + n}, have {f.order_bound}')
    return TildeBridge(f)


def check_h2_identity(f: MultFn, g: MultFn, m: int, n: int, bound: int = DEFAULT_ENUM_BOUND,
                      allow_large: bool = False) -> H2Check:
    """
    (f*g)(1_{m+n}, gamma_{m,n}) expanded as annular disc pairs plus the
    tunnel-times-disc and disc-times-tunnel terms over NC(m) x NC(n),
    against the direct factorization sum.
    """
    check_bound(m + n, bound, allow_large)
    tf, tg = TildeBridge(f), TildeBridge(g)
    gamma = gamma_of_profile((m, n))
    gamma_m, gamma_n = gamma_of_profile((m,)), gamma_of_profile((n,))
    expanded = Fraction(0)
    for pi in enumerate_snc((m, n)):
        expanded += tf.first(pi) * tg.first(pi.inverse() * gamma)
    for pi1 in enumerate_snc((m,)):
        sigma1 = pi1.inverse() * gamma_m
        for pi2 in enumerate_snc((n,)):
            sigma2 = pi2.inverse() * gamma_n
            expanded += tf.second(pi1, pi2) * tg.first(direct_product(sigma1, sigma2))
            expanded += tf.first(direct_product(pi1, pi2)) * tg.second(sigma1, sigma2)
    direct = Fraction(0)
    for a, b in factorizations2(pp_full((m, n)), bound, allow_large):
        direct += f.evaluate(a) * g.evaluate(b)
    logger.debug('h2 identity at (%d, %d): expanded=%s direct=%s', m, n, expanded, direct)
    return H2Check(expanded, direct, expanded == direct)

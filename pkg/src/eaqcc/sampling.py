"""Random full-rank check matrices for property runs and batch experiments."""

from __future__ import annotations

import random

from eaqcc.checkmatrix import CheckMatrix
from eaqcc.laurent import LaurentPoly
from eaqcc.polymatrix import PolyMatrix, rank


def random_poly(rnd: random.Random, max_deg: int = 2, density: float = 0.6) -> LaurentPoly:
    """Zero with probability 1 - density, else a uniform polynomial of degree at most max_deg."""
    if rnd.random() > density:
        return LaurentPoly()
    b = rnd.getrandbits(max_deg + 1)
    return LaurentPoly.from_support(i for i in range(max_deg + 1) if b >> i & 1)


def random_full_rank(rnd: random.Random, max_n=6, max_r=4, max_deg=2, n=None, r=None) -> CheckMatrix:
    """Rejection-sample until the (Z|X) matrix has full row rank."""
    while True:
        nn = n if n is not None else rnd.randint(1, max_n)
        rr = r if r is not None else rnd.randint(1, min(max_r, nn))
        z = PolyMatrix([[random_poly(rnd, max_deg) for _ in range(nn)] for _ in range(rr)], rr, nn)
        x = PolyMatrix([[random_poly(rnd, max_deg) for _ in range(nn)] for _ in range(rr)], rr, nn)
        S = CheckMatrix(z, x)
        if rank(S.as_matrix()) == rr:
            return S

from fractions import Fraction
from functools import lru_cache

from hypothesis import settings

from orbfrob.exact import Cyclotomic, MultiPoly
from orbfrob.group import ParityChoice, generate_group
from orbfrob.jacobian import JacobianOrbifoldInput, build_orbifold


def an_input(n: int, odd: bool = False) -> JacobianOrbifoldInput:
    w = [Fraction(1, n + 1)]
    f = MultiPoly(("z",), {(n + 1,): 1}, w)
    G = generate_group([[[Cyclotomic.zeta(n + 1)]]])
    parity = ParityChoice.from_generators(G, G.gen_indices, [1]) if odd else None
    return JacobianOrbifoldInput(f, w, G, parity=parity)


def dn_input(n: int, sigma: int) -> JacobianOrbifoldInput:
    w = [Fraction(1, 2 * n - 2)]
    f = MultiPoly(("z",), {(2 * n - 2,): 1}, w)
    G = generate_group([[[-1]]])
    return JacobianOrbifoldInput(f, w, G, parity=ParityChoice.from_generators(G, [1], [sigma]))


def point_input(n: int) -> JacobianOrbifoldInput:
    """f = uv with Z/n acting by diag(zeta, zeta^-1); the Milnor ring is a point."""
    w = [Fraction(1, 2)] * 2
    f = MultiPoly(("u", "v"), {(1, 1): 1}, w)
    z = Cyclotomic.zeta(n)
    G = generate_group([[[z, 0], [0, z.inverse()]]])
    return JacobianOrbifoldInput(f, w, G)


def fermat_input(k: int, diag: bool = True) -> JacobianOrbifoldInput:
    """x^k + y^k with Z/k x Z/k diagonal, or only the diagonal Z/k."""
    w = [Fraction(1, k)] * 2
    f = MultiPoly(("x", "y"), {(k, 0): 1, (0, k): 1}, w)
    z = Cyclotomic.zeta(k)
    gens = [[[z, 0], [0, 1]], [[1, 0], [0, z]]] if diag else [[[z, 0], [0, z]]]
    return JacobianOrbifoldInput(f, w, generate_group(gens))


@lru_cache(maxsize=None)
def an_build(n: int, odd: bool = False):
    return build_orbifold(an_input(n, odd))


@lru_cache(maxsize=None)
def dn_build(n: int, sigma: int):
    return build_orbifold(dn_input(n, sigma))


@lru_cache(maxsize=None)
def point_build(n: int):
    return build_orbifold(point_input(n))


@lru_cache(maxsize=None)
def fermat_build(k: int, diag: bool = True):
    return build_orbifold(fermat_input(k, diag))


settings.register_profile("orbfrob", deadline=None, max_examples=50)
settings.load_profile("orbfrob")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

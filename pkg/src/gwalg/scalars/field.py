from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CyclotomicField, Cyclo


@dataclass(frozen=True)
class ScalarField:
    """Q(zeta_m) extended by transcendental parameters.

    Parameters are carried as invertible (Laurent) variables of every
    polynomial ring built over the field, so ``q**-1`` is a polynomial
    coefficient rather than a fraction.
    """

    cyclotomic_order: int = 1
    parameters: tuple[str, ...] = ()
    cyclotomic: CyclotomicField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.cyclotomic_order, int) or self.cyclotomic_order < 1:
            raise ValueError("cyclotomic_order must be a positive integer")
        params = tuple(self.parameters)
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names: {list(params)}")
        for p in params:
            if not p.isidentifier() or p == "zeta":
                raise ValueError(f"invalid parameter name {p!r}")
        object.__setattr__(self, "parameters", params)
        object.__setattr__(self, "cyclotomic", CyclotomicField(self.cyclotomic_order))

    @property
    def zeta(self):
        return self.cyclotomic.zeta()

    def root_of_unity(self, m: int, k: int = 1):
        return self.cyclotomic.root_of_unity(m, k)

    def coerce(self, x):
        if isinstance(x, Cyclo):
            if x.field != self.cyclotomic:
                raise ValueError("scalar from a different cyclotomic field")
            return x
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to a scalar")

    def extend(self, cyclotomic_order: int | None = None, parameters=()) -> "ScalarField":
        """Smallest field containing this one, the given roots of unity and parameters."""
        from math import lcm

        order = self.cyclotomic_order if cyclotomic_order is None else lcm(self.cyclotomic_order, cyclotomic_order)
        params = list(self.parameters) + [p for p in parameters if p not in self.parameters]
        return ScalarField(order, tuple(params))


def field_make(cyclotomic_order: int = 1, parameters=()) -> ScalarField:
    return ScalarField(cyclotomic_order, tuple(parameters))

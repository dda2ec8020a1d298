from dataclasses import dataclass
from fractions import Fraction

from src.const import DEFAULT_PARAMS


@dataclass(frozen=True)
class ParamTriple:
    """The pencil parameters of P_i = alpha D_i + lambda B_2 + mu B_3"""
    alpha: Fraction
    lam: Fraction
    mu: Fraction

    def __post_init__(self):
        for name in ('alpha', 'lam', 'mu'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def default(cls) -> 'ParamTriple':
        return cls(*DEFAULT_PARAMS)

    @classmethod
    def parse(cls, text: str) -> 'ParamTriple':
        """
        Parse "a,l,m" or "a l m" with rational entries

        :raises ValueError: If the text does not hold exactly three rationals
        """
        values = text.replace(',', ' ').split()
        if len(values) != 3:
            raise ValueError(f"Expected three rationals, got '{text}'")
        return cls(*(Fraction(v) for v in values))

    @property
    def x(self) -> Fraction:
        return -4 * self.alpha - 9 * self.lam + 5 * self.mu

    @property
    def degeneracy(self) -> Fraction:
        return 18 * self.alpha + 63 * self.lam - 35 * self.mu

    def is_singular(self) -> bool:
        """Closed-form singular locus alpha * (18 alpha + 63 lambda - 35 mu) = 0"""
        return self.alpha == 0 or self.degeneracy == 0

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.alpha, self.lam, self.mu

    def to_text(self) -> str:
        return ' '.join(str(v) for v in self.as_tuple())

    def to_dict(self) -> dict:
        return {
            'alpha': str(self.alpha),
            'lambda': str(self.lam),
            'mu': str(self.mu)
        }

    @classmethod
    def from_dict(cls, params_dict: dict) -> 'ParamTriple':
        return cls(
            alpha=Fraction(params_dict['alpha']),
            lam=Fraction(params_dict['lambda']),
            mu=Fraction(params_dict['mu'])
        )

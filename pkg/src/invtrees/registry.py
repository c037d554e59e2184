"""Named pattern classes with their bundled rule files, generating functions,
closed formulas and reference term lists."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .closure import PatternSet, parse_pattern_list
from .seqcore import INVERSION, RGS, SeqKind

# Reference term lists, indexed from n = 0.  They were typed in from the
# published tables (functional-equation expansions that brute force cannot
# reach); treat them as fixtures, not as computed values.
TERMS_100 = [
    1, 2, 6, 23, 106, 565, 3399, 22678, 165646, 1311334, 11161529, 101478038,
    980157177, 10011461983, 107712637346, 1216525155129, 14380174353934,
    177440071258827, 2280166654498540, 30450785320307436, 421820687108853017,
    6050801956624661417, 89738550379292147192, 1374073440225390131037,
    21694040050913295537753,
]
TERMS_201 = [
    1, 2, 6, 24, 118, 674, 4306, 29990, 223668, 1763468, 14558588, 124938648,
    1108243002, 10115202962, 94652608690, 905339525594, 8829466579404,
    87618933380020, 883153699606024, 9028070631668540, 93478132393544988,
    979246950529815364, 10368459385853924212, 110866577818487410864,
]
TERMS_011_201 = [
    1, 2, 5, 15, 51, 189, 746, 3091, 13311, 59146, 269701, 1256820, 5966001,
    28773252, 140695923, 696332678, 3483193924, 17589239130, 89575160517,
    459648885327,
]
TERMS_120_210 = [
    1, 2, 6, 23, 102, 499, 2625, 14601, 84847, 510614, 3161964, 20050770,
    129718404, 853689031, 5701759424, 38574689104, 263936457042, 1824032887177,
    12718193293888, 89386742081688,
]
TERMS_1122 = [1, 1, 2, 5, 14, 42, 133, 441, 1523, 5456, 20209, 77186, 303296]
# printed series coefficients of x^1..x^10, shifted to n = 0..9
TERMS_000_021 = [1, 2, 5, 14, 39, 111, 317, 911, 2627, 7600]
TERMS_100_012 = [1, 2, 5, 12, 27, 56, 110, 207, 378, 675]
TERMS_000_001_012 = [1, 2, 2, 1, 0]


@dataclass(frozen=True)
class CatalogClass:
    name: str
    patterns: str
    kind: SeqKind
    rules: str | None = None
    series: str | None = None
    formula: str | None = None
    terms: tuple[int, ...] = ()
    # first n at which the generating function counts the class
    series_from: int = 0
    param: str | None = None

    def pattern_set(self, param: int | None = None) -> PatternSet:
        return parse_pattern_list(self.pattern_text(param), self.kind)

    def pattern_text(self, param: int | None = None) -> str:
        if self.param is None:
            return self.patterns
        ell = self._param(param)
        return "".join(str(i) for i in range(1, ell + 1)) + "1"

    def series_id(self, param: int | None = None) -> str | None:
        if self.series is None or self.param is None:
            return self.series
        return f"{self.series}({self._param(param)})"

    def rule_consts(self, param: int | None = None) -> dict[str, int]:
        return {} if self.param is None else {"L": self._param(param)}

    def _param(self, param):
        if param is None:
            raise ValueError(f"class {self.name} needs --{self.param}")
        if param < 2:
            raise ValueError(f"{self.param} must be >= 2")
        return param


CLASSES: dict[str, CatalogClass] = {c.name: c for c in [
    CatalogClass("ex21", "000,001,012", INVERSION, "ex21", "ex21", None, tuple(TERMS_000_001_012)),
    CatalogClass("ex22", "000,001", INVERSION, "ex22", "ex22", "ex22"),
    CatalogClass("th100", "100", INVERSION, "th100", None, None, tuple(TERMS_100)),
    CatalogClass("th201", "201", INVERSION, "th201", None, None, tuple(TERMS_201)),
    CatalogClass("th210", "210", INVERSION, "th201", None, None, tuple(TERMS_201)),
    CatalogClass("t000_021", "000,021", INVERSION, "t000_021", "thAA2", "thAA2",
                 tuple(TERMS_000_021)),
    CatalogClass("t100_021", "100,021", INVERSION, "t100_021", "thCC3", "thCC3"),
    CatalogClass("t110_021", "110,021", INVERSION, "t110_021", "thCC3", "thCC3"),
    CatalogClass("t102_021", "102,021", INVERSION, "t102_021", "thDD1", "thDD1"),
    CatalogClass("t100_012", "100,012", INVERSION, "t100_012", "thBB2", "thBB2",
                 tuple(TERMS_100_012)),
    CatalogClass("t011_201", "011,201", INVERSION, "t011_201", None, None, tuple(TERMS_011_201)),
    CatalogClass("t011_210", "011,210", INVERSION, "t011_201", None, None, tuple(TERMS_011_201)),
    CatalogClass("t120_210", "120,210", INVERSION, "t120_210", None, None, tuple(TERMS_120_210)),
    CatalogClass("rgs1122", "1122", RGS, "rgs1122", None, None, tuple(TERMS_1122)),
    CatalogClass("rgs1212", "1212", RGS, "rgs1212", "catalan"),
    CatalogClass("rgs12313_12323", "12313,12323", RGS, "rgs12313_12323", "rgs12313_12323"),
    CatalogClass("rgs_triple", "12313,12323,12333", RGS, "rgs_triple", "rgs_triple"),
    CatalogClass("rgs_ell1", "", RGS, "rgs_ell1", "rgs_ell1", series_from=1, param="ell"),
]}

# every pattern set the property suites sweep over
PATTERN_SETS: list[tuple[str, SeqKind]] = [
    ("000,001,012", INVERSION), ("000,001", INVERSION), ("012", INVERSION),
    ("100", INVERSION), ("201", INVERSION), ("210", INVERSION),
    ("000,021", INVERSION), ("100,021", INVERSION), ("110,021", INVERSION),
    ("102,021", INVERSION), ("100,012", INVERSION), ("011,201", INVERSION),
    ("011,210", INVERSION), ("120,210", INVERSION),
    ("1122", RGS), ("1212", RGS), ("12313,12323", RGS), ("12313,12323,12333", RGS),
    ("121", RGS), ("1231", RGS), ("12341", RGS),
]


def get_class(name: str) -> CatalogClass:
    try:
        return CLASSES[name]
    except KeyError:
        raise KeyError(f"unknown class {name!r}; known: {', '.join(CLASSES)}") from None


def rule_text(name: str) -> str:
    """Source of a bundled rule file (``th100``, ``rgs_ell1``, ...)."""
    path = resources.files("invtrees") / "catalog" / f"{name}.rules"
    if not path.is_file():
        raise KeyError(f"no bundled rule file {name!r}")
    return path.read_text()


@lru_cache(maxsize=None)
def load_rules(name: str, ell: int | None = None):
    from .ruledsl import parse_rules

    consts = {"L": ell} if ell is not None else None
    return parse_rules(rule_text(name), consts, name=name)

"""Piecewise fractional linear maps of the unit interval.

A finite map is an increasing partition 0 = p_0 < ... < p_N = 1
together with inverse branches V_j mapping [0,1] onto the j-th cell
[p_{j-1}, p_j] (orientation given by the branch's monotonicity sign).
The forward map T sends cell j back onto [0,1] via V_j^{-1}.

Countable families (Gauss-type maps) carry a branch generator and a
digit function instead of an explicit partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .branches import MoebiusBranch
from .polys import PoleError, Q, parse_q, qstr

__all__ = [
    "PiecewiseMap",
    "CountableMap",
    "ValidationReport",
    "ParamTriple",
    "family_T",
    "flip_family",
    "FAMILY_FLIPS",
    "compose_maps",
    "gauss_map",
    "times_a_map",
    "shift_ratio_map",
    "intro_one_step_map",
    "map_from_json",
    "named_map",
]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ParamTriple:
    """Positive parameters (lam, mu, nu) of the three-branch family."""

    lam: Fraction
    mu: Fraction
    nu: Fraction

    def __iter__(self):
        return iter((self.lam, self.mu, self.nu))

    @classmethod
    def of(cls, lam, mu, nu) -> "ParamTriple":
        return cls(Fraction(lam), Fraction(mu), Fraction(nu))

    def __repr__(self):
        return f"({qstr(self.lam)}, {qstr(self.mu)}, {qstr(self.nu)})"


class PiecewiseMap:
    """Finite family of inverse branches over an explicit partition."""

    def __init__(self, partition, branches, name: str = ""):
        self.partition = tuple(Fraction(p) for p in partition)
        self.branches = tuple(branches)
        self.name = name

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(b.sign for b in self.branches)

    @property
    def n_branches(self) -> int:
        return len(self.branches)

    def cylinder(self, j: int) -> tuple[Fraction, Fraction]:
        return self.partition[j], self.partition[j + 1]

    # -- validation --------------------------------------------------------
    def validate(self) -> ValidationReport:
        problems = []
        P = self.partition
        if len(P) != len(self.branches) + 1:
            problems.append("partition size does not match branch count")
            return ValidationReport(False, tuple(problems))
        if P[0] != 0 or P[-1] != 1:
            problems.append("partition must start at 0 and end at 1")
        if any(P[i] >= P[i + 1] for i in range(len(P) - 1)):
            problems.append("partition is not strictly increasing")
        for j, br in enumerate(self.branches):
            if br.has_pole_in_unit_interval():
                problems.append(f"branch {j} has a pole inside [0,1]")
                continue
            lo, hi = P[j], P[j + 1]
            want = (lo, hi) if br.sign > 0 else (hi, lo)
            got = (br(Q(0)), br(Q(1)))
            if got != want:
                problems.append(
                    f"branch {j} maps (0,1) to ({qstr(got[0])},{qstr(got[1])}), "
                    f"expected ({qstr(want[0])},{qstr(want[1])})")
        return ValidationReport(not problems, tuple(problems))

    # -- dynamics ------------------------------------------------------------
    def digit(self, x: Fraction) -> int:
        """Index of the cell containing x; partition points go left."""
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} outside [0,1]")
        for j in range(self.n_branches):
            if x <= self.partition[j + 1]:
                return j
        return self.n_branches - 1

    def apply_forward(self, x: Fraction, boundary: str = "left") -> Fraction:
        """T(x), exact.

        Interior partition points are a measure-zero tie; they attach to
        the left cell by default, or raise with boundary="error".
        """
        x = Fraction(x)
        if boundary == "error" and x in self.partition[1:-1]:
            raise ValueError(f"{x} is a partition point")
        return self.branches[self.digit(x)].inverse()(x)

    # -- constructions ---------------------------------------------------------
    def flip_branches(self, subset) -> "PiecewiseMap":
        """Replace the branches in `subset` by their flips (an involution)."""
        subset = set(subset)
        bad = subset - set(range(self.n_branches))
        if bad:
            raise IndexError(f"branch indices out of range: {sorted(bad)}")
        new = [b.flip() if j in subset else b for j, b in enumerate(self.branches)]
        tag = "".join(str(j + 1) for j in sorted(subset))
        return PiecewiseMap(self.partition, new,
                            name=f"{self.name}|flip{tag}" if tag else self.name)

    def to_json(self) -> dict:
        return {
            "partition": [qstr(p) for p in self.partition],
            "branches": [b.to_json() for b in self.branches],
            "signs": ["+" if s > 0 else "-" for s in self.signs],
        }

    def __repr__(self):
        return f"PiecewiseMap({self.name or self.n_branches})"


class CountableMap:
    """Countably-many-branch map given by generators.

    branch_fn(k) -> MoebiusBranch, cylinder_fn(k) -> (lo, hi) exact,
    digit_fn(x) -> k computed by floor arithmetic, indices from
    `first_index` upward.  `transfer_tail_model`, when present, certifies
    truncated transfer-operator sums (see transport.kuzmin_check_series).
    """

    def __init__(self, branch_fn, cylinder_fn, digit_fn, first_index=0,
                 name="", transfer_tail_model=None, index_list=None):
        self.branch = branch_fn
        self.cylinder = cylinder_fn
        self.digit = digit_fn
        self.first_index = first_index
        self.name = name
        self.transfer_tail_model = transfer_tail_model
        self._index_list = index_list

    def indices(self, count: int):
        if self._index_list is not None:
            return self._index_list(count)
        return range(self.first_index, self.first_index + count)

    def truncated(self, count: int):
        """First `count` branches as (index, branch, cylinder) triples."""
        return [(k, self.branch(k), self.cylinder(k)) for k in self.indices(count)]

    def apply_forward(self, x: Fraction) -> Fraction:
        k = self.digit(Fraction(x))
        return self.branch(k).inverse()(Fraction(x))

    def validate(self, spot_check: int = 12) -> ValidationReport:
        problems = []
        for k, br, (lo, hi) in self.truncated(spot_check):
            if br.has_pole_in_unit_interval():
                problems.append(f"branch {k} has a pole inside [0,1]")
                continue
            want = (lo, hi) if br.sign > 0 else (hi, lo)
            if (br(Q(0)), br(Q(1))) != want:
                problems.append(f"branch {k} does not map onto its cylinder")
            mid = (lo + hi) / 2
            if self.digit(mid) != k:
                problems.append(f"digit function disagrees with cylinder {k}")
        return ValidationReport(not problems, tuple(problems))

    def __repr__(self):
        return f"CountableMap({self.name})"


# ---------------------------------------------------------------------------
# the three-branch parametric family and its flips
# ---------------------------------------------------------------------------

def family_branch_coeffs(triple):
    """Raw (a, b, c, d) rows of V_lam, V_mu, V_nu, not canonicalized.

    Keeping the raw parametric scaling matters for the solvability
    determinant, whose ratio to the named condition must not depend on
    the triple.  Works for any scalar parameters (Fraction, mpf), so the
    quadratic-irrational instance can be evaluated in high precision.
    """
    lam, mu, nu = triple
    return [
        (lam * 0 + 3, 3 * lam - 3, lam * 0, lam),
        (mu * 0 + 9, 3 * mu - 9, mu * 0 + 3, 2 * mu - 3),
        (nu * 0 + 3, nu - 3, nu * 0 + 2, nu - 2),
    ]


def raw_flip(row):
    a, b, c, d = row
    return (a + b, -b, c + d, -d)


FAMILY_FLIPS = {
    "T": (),
    "S1": (0,),
    "S2": (1,),
    "S3": (2,),
    "S12": (0, 1),
    "S23": (1, 2),
    "S13": (0, 2),
    "S123": (0, 1, 2),
}


def family_T(triple: ParamTriple) -> PiecewiseMap:
    """The increasing three-branch map with cells [0,1/3],[1/3,2/3],[2/3,1]."""
    lam, mu, nu = triple
    if not (lam > 0 and mu > 0 and nu > 0):
        raise ValueError(f"parameters must be positive, got {triple}")
    branches = [MoebiusBranch(*row) for row in family_branch_coeffs(triple)]
    m = PiecewiseMap([Q(0), Q(1, 3), Q(2, 3), Q(1)], branches, name=f"T{triple}")
    rep = m.validate()
    if not rep:
        raise ValueError(f"invalid parameter triple {triple}: {rep.problems}")
    return m


def flip_family(name: str, triple: ParamTriple) -> PiecewiseMap:
    """Named family member: T, S1, ..., S123 at the given triple."""
    if name not in FAMILY_FLIPS:
        raise KeyError(f"unknown family {name!r}")
    m = family_T(triple).flip_branches(FAMILY_FLIPS[name])
    m.name = f"{name}{triple}"
    return m


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def compose_maps(outer, inner):
    """The map x -> outer(inner(x)).

    Inverse branches are V^inner_i o V^outer_j; finite x finite gives a
    finite map with the refined partition, anything countable gives a
    CountableMap over pair indices.
    """
    if isinstance(outer, PiecewiseMap) and isinstance(inner, PiecewiseMap):
        pieces = []
        for i, vi in enumerate(inner.branches):
            for j, vo in enumerate(outer.branches):
                br = vi.compose(vo)
                lo, hi = br(Q(0)), br(Q(1))
                if lo > hi:
                    lo, hi = hi, lo
                pieces.append((lo, hi, br, (i, j)))
        pieces.sort(key=lambda t: t[0])
        partition = [pieces[0][0]] + [p[1] for p in pieces]
        m = PiecewiseMap(partition, [p[2] for p in pieces],
                         name=f"({outer.name} o {inner.name})")
        rep = m.validate()
        if not rep:
            raise ValueError(f"composition is not a valid map: {rep.problems}")
        return m
    return _compose_countable(outer, inner)


def _compose_countable(outer, inner):
    """Countable composition; index is the pair (inner_index, outer_index)."""
    inner_finite = isinstance(inner, PiecewiseMap)
    outer_finite = isinstance(outer, PiecewiseMap)
    if not inner_finite and not outer_finite:
        raise NotImplementedError("countable o countable composition not needed here")
    fin, cnt = (inner, outer) if inner_finite else (outer, inner)

    def branch(pair):
        i, j = pair
        vi = inner.branches[i] if inner_finite else inner.branch(i)
        vo = outer.branches[j] if outer_finite else outer.branch(j)
        return vi.compose(vo)

    def cylinder(pair):
        br = branch(pair)
        lo, hi = br(Q(0)), br(Q(1))
        return (lo, hi) if lo <= hi else (hi, lo)

    def digit(x):
        i = inner.digit(x)
        vi = inner.branches[i] if inner_finite else inner.branch(i)
        y = vi.inverse()(Fraction(x))
        return (i, outer.digit(y))

    def index_list(count):
        out = []
        k = cnt.first_index
        while len(out) < count:
            for f in range(fin.n_branches):
                out.append((f, k) if inner_finite else (k, f))
            k += 1
        return out[:count]

    name = f"({getattr(outer, 'name', '?')} o {getattr(inner, 'name', '?')})"
    cm = CountableMap(branch, cylinder, digit, first_index=(0, cnt.first_index),
                      name=name, index_list=index_list)
    cm.component_inner = inner
    cm.component_outer = outer
    return cm


# ---------------------------------------------------------------------------
# stock maps
# ---------------------------------------------------------------------------

def gauss_map() -> CountableMap:
    """x -> 1/x - floor(1/x); inverse branches 1/(k + x), k >= 1."""
    def branch(k):
        return MoebiusBranch(k, 1, 1, 0)

    def cylinder(k):
        return (Q(1, k + 1), Q(1, k))

    def digit(x):
        x = Fraction(x)
        if x <= 0:
            raise PoleError("Gauss map needs x in (0,1]")
        return x.denominator // x.numerator  # floor(1/x), exact

    return CountableMap(branch, cylinder, digit, first_index=1, name="gauss")


def times_a_map(a: int) -> PiecewiseMap:
    """x -> a x mod 1; inverse branches (j + x)/a."""
    if a < 2:
        raise ValueError("need a >= 2")
    branches = [MoebiusBranch(a, 0, j, 1) for j in range(a)]
    return PiecewiseMap([Q(j, a) for j in range(a + 1)], branches, name=f"x{a}")


def shift_ratio_map() -> CountableMap:
    """x -> x/(1-x) - floor(x/(1-x)); inverse branches (k+x)/(k+1+x), k >= 0."""
    def branch(k):
        return MoebiusBranch(k + 1, 1, k, 1)

    def cylinder(k):
        return (Q(k, k + 1), Q(k + 1, k + 2))

    def digit(x):
        x = Fraction(x)
        if x == 1:
            raise PoleError("map undefined at 1")
        r = x / (1 - x)
        return r.numerator // r.denominator

    return CountableMap(branch, cylinder, digit, first_index=0, name="shift_ratio")


def intro_one_step_map() -> PiecewiseMap:
    """Three-branch map whose dual set is the union of [2j, 2j+1].

    Forward: x/(1-2x) on [0,1/3], 1/x - 2 on (1/3,1/2], 1/x - 1 on (1/2,1].
    """
    branches = [
        MoebiusBranch(1, 2, 0, 1),   # x/(1+2x), increasing onto [0,1/3]
        MoebiusBranch(2, 1, 1, 0),   # 1/(2+x), decreasing onto [1/3,1/2]
        MoebiusBranch(1, 1, 1, 0),   # 1/(1+x), decreasing onto [1/2,1]
    ]
    return PiecewiseMap([Q(0), Q(1, 3), Q(1, 2), Q(1)], branches, name="one_step")


# ---------------------------------------------------------------------------
# serialization / named constructors
# ---------------------------------------------------------------------------

def map_from_json(obj: dict) -> PiecewiseMap:
    if "constructor" in obj:
        return named_map(obj["constructor"],
                         *[parse_q(str(p)) for p in obj.get("params", [])])
    m = PiecewiseMap([parse_q(p) for p in obj["partition"]],
                     [MoebiusBranch.from_json(b) for b in obj["branches"]],
                     name=obj.get("name", ""))
    rep = m.validate()
    if not rep:
        raise ValueError(f"invalid map definition: {rep.problems}")
    if "signs" in obj:
        want = tuple(1 if s == "+" else -1 for s in obj["signs"])
        if want != m.signs:
            raise ValueError("declared signs disagree with branch determinants")
    return m


def named_map(keyword: str, *params):
    """Constructor registry: family names, gauss, times_a, one_step.

    Family spellings are forgiving: family_T, T, S13 and S_13 all work.
    """
    fam = keyword.removeprefix("family_").replace("_", "")
    if fam in FAMILY_FLIPS:
        lam, mu, nu = (Fraction(p) for p in params)
        return flip_family(fam, ParamTriple(lam, mu, nu))
    if keyword == "gauss":
        return gauss_map()
    if keyword == "times_a":
        return times_a_map(int(params[0]))
    if keyword == "shift_ratio":
        return shift_ratio_map()
    if keyword == "one_step":
        return intro_one_step_map()
    raise KeyError(f"unknown map constructor {keyword!r}")

"""Skew shapes, staircase-minus-rectangle parameters and tableau enumeration.

The oracle places the entries 1, 2, ... one at a time into any cell whose
left and upper neighbours inside the skew diagram are already filled.  The
generating function of the remaining placements depends only on how far
each row is filled and on the row of the last entry, so partial results are
memoized on that pair; this makes shapes with billions of tableaux cheap
while still summing over every tableau exactly once.
"""

from dataclasses import dataclass

from .errors import ResourceLimitError, ValidationError
from .qseries import LaurentPoly

__all__ = [
    "SkewShape",
    "StaircaseSpec",
    "Tableau",
    "DEFAULT_CELL_LIMIT",
    "parse_shape",
    "to_skew_shape",
    "maj",
    "maj_gf_oracle",
    "count_syt",
    "enumerate_tableaux",
]

DEFAULT_CELL_LIMIT = 16


def _parse_parts(text):
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValidationError(f"bad partition {text!r}: expected comma-separated integers") from None
    return parts


@dataclass(frozen=True)
class SkewShape:
    """The skew diagram lam/mu; mu is padded with zeros to len(lam)."""

    lam: tuple
    mu: tuple = ()

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        mu = tuple(int(x) for x in self.mu)
        while lam and lam[-1] == 0:
            lam = lam[:-1]
        if len(mu) > len(lam):
            if any(mu[len(lam):]):
                raise ValidationError(f"mu {mu} has more nonzero parts than lambda {lam}")
            mu = mu[: len(lam)]
        mu = mu + (0,) * (len(lam) - len(mu))
        for name, part in (("lambda", lam), ("mu", mu)):
            if any(x < 0 for x in part):
                raise ValidationError(f"{name} has a negative part: {part}")
            if any(part[i] < part[i + 1] for i in range(len(part) - 1)):
                raise ValidationError(f"{name} is not weakly decreasing: {part}")
        for i, (a, b) in enumerate(zip(lam, mu)):
            if b > a:
                raise ValidationError(f"mu_{i + 1} = {b} exceeds lambda_{i + 1} = {a}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def cell_count(self):
        return sum(a - b for a, b in zip(self.lam, self.mu))

    def cells(self):
        for i, (a, b) in enumerate(zip(self.lam, self.mu)):
            for j in range(b, a):
                yield i, j

    @classmethod
    def parse(cls, text):
        """Parse "6,5,4,3,2,1/3,3"; the part after "/" is optional."""
        outer, _, inner = text.partition("/")
        return cls(_parse_parts(outer), _parse_parts(inner))

    def __str__(self):
        inner = ",".join(str(x) for x in self.mu if x)
        outer = ",".join(str(x) for x in self.lam)
        return f"{outer}/{inner}" if inner else outer

    def diagram(self, fill="#", hole="."):
        """ASCII picture: ``hole`` marks the removed cells of mu."""
        if not self.lam:
            return "(empty)"
        return "\n".join(hole * b + fill * (a - b) for a, b in zip(self.lam, self.mu))


def parse_shape(text):
    return SkewShape.parse(text)


@dataclass(frozen=True)
class StaircaseSpec:
    """Staircase (N, N-1, ..., N-n+1) with the rectangle (m^r) removed."""

    N: int
    n: int
    m: int
    r: int

    def __post_init__(self):
        N, n, m, r = self.N, self.n, self.m, self.r
        for name, v in (("N", N), ("n", n), ("m", m), ("r", r)):
            if not isinstance(v, int) or v < 0:
                raise ValidationError(f"{name} must be a nonnegative integer, got {v!r}")
        if N < n:
            raise ValidationError(f"violated N >= n (N={N}, n={n})")
        if r > n:
            raise ValidationError(f"violated r <= n (r={r}, n={n})")
        if N - r + 1 < m:
            raise ValidationError(f"violated N - r + 1 >= m (N={N}, r={r}, m={m})")

    @property
    def s(self):
        return self.N - self.n

    @property
    def cell_count(self):
        N, n = self.N, self.n
        return (N * (N + 1) - (N - n) * (N - n + 1)) // 2 - self.m * self.r

    @classmethod
    def parse(cls, text):
        """Parse "N=6,n=6,m=3,r=2" (order free) or "6,6,3,2"."""
        fields = {}
        items = [x.strip() for x in text.split(",") if x.strip()]
        try:
            if all("=" in x for x in items):
                for x in items:
                    k, v = x.split("=", 1)
                    fields[k.strip()] = int(v)
            else:
                fields = dict(zip("Nnmr", (int(x) for x in items)))
        except ValueError:
            raise ValidationError(f"bad staircase spec {text!r}") from None
        if set(fields) != set("Nnmr"):
            raise ValidationError(f"staircase spec needs exactly N, n, m, r; got {text!r}")
        return cls(fields["N"], fields["n"], fields["m"], fields["r"])

    def __str__(self):
        return f"N={self.N},n={self.n},m={self.m},r={self.r}"


def to_skew_shape(spec):
    lam = tuple(spec.N - i for i in range(spec.n))
    mu = (spec.m,) * spec.r
    return SkewShape(lam, mu)


def iter_specs(N_max, N_min=0):
    """Every valid StaircaseSpec with N_min <= N <= N_max."""
    for N in range(N_min, N_max + 1):
        for n in range(N + 1):
            for r in range(n + 1):
                for m in range(N - r + 2):
                    yield StaircaseSpec(N, n, m, r)


@dataclass(frozen=True)
class Tableau:
    """A standard filling; ``row_of[v-1]`` is the row holding entry v."""

    shape: SkewShape
    row_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_of", tuple(self.row_of))
        self.validate()

    def validate(self):
        shape = self.shape
        if len(self.row_of) != shape.cell_count:
            raise ValidationError("row_of must list one row per cell")
        fill = list(shape.mu)
        grid = {}
        for v, i in enumerate(self.row_of, start=1):
            if not 0 <= i < len(shape.lam) or fill[i] >= shape.lam[i]:
                raise ValidationError(f"entry {v} overflows row {i}")
            j = fill[i]
            if i > 0 and shape.mu[i - 1] <= j and grid.get((i - 1, j)) is None:
                raise ValidationError(f"entry {v} at ({i}, {j}) lies below an empty cell")
            grid[(i, j)] = v
            fill[i] += 1

    @classmethod
    def from_rows(cls, shape, rows):
        """Build from row contents, e.g. [[1, 2], [3]] for shape (2,1)."""
        row_of = [None] * shape.cell_count
        for i, row in enumerate(rows):
            for v in row:
                row_of[v - 1] = i
        return cls(shape, tuple(row_of))

    def rows(self):
        out = [[] for _ in self.shape.lam]
        for v, i in enumerate(self.row_of, start=1):
            out[i].append(v)
        return out


def maj(t):
    """Sum of i with i+1 in a strictly lower row than i."""
    r = t.row_of
    return sum(i for i in range(1, len(r)) if r[i] > r[i - 1])


def _check_limit(shape, limit):
    if limit is None:
        limit = DEFAULT_CELL_LIMIT
    if shape.cell_count > limit:
        raise ResourceLimitError(
            f"shape {shape} has {shape.cell_count} cells, above the enumeration limit {limit}; "
            "use a formula-based evaluator (det, thm1, laplace) or raise the limit"
        )


def _add_into(acc, poly, shift):
    need = shift + len(poly)
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for i, c in enumerate(poly):
        acc[shift + i] += c


def maj_gf_oracle(shape, limit=None):
    """sum over standard tableaux T of q^maj(T), by exhaustive enumeration."""
    _check_limit(shape, limit)
    lam, mu = shape.lam, shape.mu
    rows = len(lam)
    total = shape.cell_count
    if total == 0:
        return LaurentPoly.constant(1)
    memo = {}

    def go(state, placed, last):
        key = (state, last)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if placed == total:
            memo[key] = [1]
            return memo[key]
        acc = []
        for i in range(rows):
            c = state[i]
            # cell (i, c) is addable when its upper neighbour is filled or
            # lies outside the skew diagram
            if c < lam[i] and (i == 0 or state[i - 1] > c):
                nxt = state[:i] + (c + 1,) + state[i + 1 :]
                sub = go(nxt, placed + 1, i)
                _add_into(acc, sub, placed if (last >= 0 and i > last) else 0)
        memo[key] = acc
        return acc

    return LaurentPoly(go(tuple(mu), 0, -1), 0)


def enumerate_tableaux(shape, limit=None):
    """Yield every standard tableau (materialized; for debugging)."""
    _check_limit(shape, limit)
    lam, mu = shape.lam, shape.mu
    rows = len(lam)
    total = shape.cell_count
    state = list(mu)
    path = []

    def rec():
        if len(path) == total:
            yield tuple(path)
            return
        for i in range(rows):
            c = state[i]
            if c < lam[i] and (i == 0 or state[i - 1] > c):
                state[i] += 1
                path.append(i)
                yield from rec()
                path.pop()
                state[i] -= 1

    for row_of in rec():
        yield Tableau(shape, row_of)


def maj_gf_bruteforce(shape, limit=None):
    """Same value as maj_gf_oracle, by materializing every tableau."""
    acc = {}
    for t in enumerate_tableaux(shape, limit):
        k = maj(t)
        acc[k] = acc.get(k, 0) + 1
    return LaurentPoly.from_dict(acc) if acc else LaurentPoly()


def count_syt(shape, limit=None):
    """Number of standard Young tableaux of the shape."""
    return maj_gf_oracle(shape, limit).at_one()


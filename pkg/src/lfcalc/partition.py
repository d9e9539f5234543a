"""Fractal orders, partitions and the positive weights of the discrete integral.

A partition is a finite family of disjoint intervals ``[l_j, r_j]`` inside
``[a, b]``.  Each interval carries the weight ``(r_j - l_j)**alpha / Gamma(1+alpha)``
and is sampled at its left endpoint.  Uniform and random partitions tile
``[a, b]``; Cantor partitions keep only the retained blocks of an
iterated-function-system construction, so the gaps carry no weight.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidIntervalError, PartitionError, ZeroSizeError
from .gamma import gamma


@dataclass(frozen=True)
class Alpha:
    """Fractal order in (0, 1].  ``ifs`` is the ``(n, k)`` pair it came from, if any."""

    value: float
    ifs: tuple[int, int] | None = None

    def __post_init__(self):
        if not (0.0 < self.value <= 1.0) or not math.isfinite(self.value):
            raise PartitionError(f"alpha must lie in (0, 1], got {self.value!r}")

    @classmethod
    def explicit(cls, value):
        return cls(float(value))

    @classmethod
    def from_ifs(cls, n, k):
        """Similarity dimension ``ln k / ln n`` of the keep-k-of-n construction."""
        n, k = int(n), int(k)
        if n < 2 or not 1 <= k < n:
            raise PartitionError(f"IFS pair needs n >= 2 and 1 <= k < n, got ({n}, {k})")
        if k == 1:
            raise PartitionError("IFS pair with k = 1 has dimension 0, outside (0, 1]")
        return cls(math.log(k) / math.log(n), (n, k))

    @property
    def origin(self):
        return "explicit" if self.ifs is None else "ifs"

    @cached_property
    def gamma1p(self):
        """Gamma(1 + alpha), the normalizer of every weight."""
        return gamma(1.0 + self.value)

    def __float__(self):
        return self.value

    def describe(self):
        if self.ifs is None:
            return repr(self.value)
        return f"{self.ifs[0]},{self.ifs[1]}"


def as_alpha(alpha):
    return alpha if isinstance(alpha, Alpha) else Alpha.explicit(alpha)


def compensated_sum(values):
    """Correctly rounded sum; independent of term order, so bit-reproducible."""
    arr = np.asarray(values, dtype=float).ravel()
    chunk = 1 << 20
    return math.fsum(itertools.chain.from_iterable(
        arr[i:i + chunk].tolist() for i in range(0, arr.size, chunk)))


def _readonly(arr):
    arr = np.asarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Partition:
    a: float
    b: float
    alpha: Alpha
    kind: str
    params: tuple
    widths: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    _lefts: object = field(repr=False, default=None)

    @cached_property
    def lefts(self):
        lefts = self._lefts() if callable(self._lefts) else self._lefts
        return _readonly(lefts)

    @property
    def eval_points(self):
        return self.lefts

    @cached_property
    def rights(self):
        return _readonly(self.lefts + self.widths)

    @property
    def nodes(self):
        """Interval endpoints in increasing order (``t_0 = a, ..., t_N = b`` when contiguous)."""
        if self.kind in ("uniform", "random"):
            return _readonly(np.append(self.lefts, self.b))
        return _readonly(np.unique(np.concatenate([self.lefts, self.rights])))

    @property
    def size(self):
        return len(self.weights)

    def __len__(self):
        return self.size

    @cached_property
    def total_weight(self):
        return compensated_sum(self.weights)

    @property
    def descriptor(self):
        """Mini-grammar form, e.g. ``cantor:3,2,8``."""
        return f"{self.kind}:" + ",".join(str(v) for v in self.params)

    def to_json(self):
        return {
            "descriptor": self.descriptor,
            "interval": [self.a, self.b],
            "N": self.size,
        }


def _check_interval(a, b):
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise InvalidIntervalError(f"invalid interval [{a!r}, {b!r}]: need finite a < b")
    return a, b


def _check_size(N):
    if int(N) != N or N < 1:
        raise ZeroSizeError(f"partition size must be a positive integer, got {N!r}")
    return int(N)


def _from_nodes(nodes, a, b, alpha, kind, params):
    widths = np.diff(nodes)
    if not np.all(widths > 0):
        raise PartitionError("nodes must be strictly increasing")
    weights = widths ** alpha.value / alpha.gamma1p
    if not np.all(weights > 0):
        raise PartitionError("underflow: some weights are not positive")
    return Partition(a, b, alpha, kind, params, _readonly(widths), _readonly(weights),
                     _readonly(nodes[:-1]))


def uniform_partition(a, b, N, alpha):
    """``N`` equal pieces of ``[a, b]``; every weight is ``((b-a)/N)**alpha / Gamma(1+alpha)``."""
    a, b = _check_interval(a, b)
    N = _check_size(N)
    alpha = as_alpha(alpha)
    h = (b - a) / N
    lefts = a + (b - a) * np.arange(N) / N
    if N > 1 and not np.all(np.diff(lefts) > 0):
        raise PartitionError("interval too narrow for N distinct nodes")
    w = h ** alpha.value / alpha.gamma1p
    if not w > 0:
        raise PartitionError("underflow: weights are not positive")
    return Partition(a, b, alpha, "uniform", (N,), _readonly(np.full(N, h)),
                     _readonly(np.full(N, w)), _readonly(lefts))


def random_partition(a, b, N, seed, alpha):
    """Seeded random spacings, each at least ``(b - a) * 1e-9 / N``."""
    a, b = _check_interval(a, b)
    N = _check_size(N)
    alpha = as_alpha(alpha)
    rng = np.random.default_rng(seed)
    raw = rng.random(N) + 2e-9
    spacing = (b - a) * raw / raw.sum()
    nodes = np.empty(N + 1)
    nodes[0] = a
    nodes[1:] = a + np.cumsum(spacing)
    nodes[-1] = b
    return _from_nodes(nodes, a, b, alpha, "random", (N, int(seed)))


def cantor_blocks(n, k):
    """Indices of the ``k`` retained blocks out of ``n``: evenly spread, both ends kept."""
    return [(i * (n - 1)) // (k - 1) for i in range(k)]


def cantor_partition(n, k, m, a, b):
    """Level-``m`` intervals of the keep-``k``-of-``n`` Cantor construction on ``[a, b]``.

    The order is forced to ``ln k / ln n``; then every one of the ``k**m``
    intervals has weight ``(b - a)**alpha * k**-m / Gamma(1 + alpha)`` and the
    total weight does not depend on ``m``.  Left endpoints are built lazily
    because deep levels of wide constructions are large.
    """
    n, k, m = int(n), int(k), int(m)
    if n < 3 or not 2 <= k <= n - 1:
        raise PartitionError(f"cantor needs n >= 3 and 2 <= k <= n-1, got n={n}, k={k}")
    if m < 1:
        raise PartitionError(f"cantor level must be positive, got {m}")
    a, b = _check_interval(a, b)
    alpha = Alpha.from_ifs(n, k)
    count = k ** m
    scale = n ** m
    width = (b - a) / scale
    weight = (b - a) ** alpha.value * float(k) ** (-m) / alpha.gamma1p
    blocks = np.array(cantor_blocks(n, k), dtype=np.int64)

    def lefts():
        idx = np.zeros(1, dtype=np.int64)
        for _ in range(m):
            idx = (idx[:, None] * n + blocks[None, :]).ravel()
        # integer block index is exact; a single rounding in the division
        return a + (b - a) * (idx / scale)

    return Partition(a, b, alpha, "cantor", (n, k, m),
                     np.broadcast_to(np.float64(width), (count,)),
                     np.broadcast_to(np.float64(weight), (count,)), lefts)


def parse_descriptor(text):
    """Split ``uniform:<N>`` / ``cantor:<n>,<k>,<m>`` / ``random:<N>[,<seed>]``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise PartitionError(f"bad partition descriptor {text!r}")
    try:
        args = tuple(int(v) for v in rest.split(","))
    except ValueError:
        raise PartitionError(f"bad partition descriptor {text!r}: integers expected") from None
    want = {"uniform": (1,), "cantor": (3,), "random": (1, 2)}
    if kind not in want or len(args) not in want[kind]:
        raise PartitionError(f"bad partition descriptor {text!r}")
    return kind, args


def make_partition(descriptor, a, b, alpha=None, seed=None):
    """Build a partition from its descriptor.

    ``alpha`` is required except for Cantor partitions, where it must agree
    with the IFS pair if given.  A ``random:<N>`` descriptor without a seed
    takes ``seed``.
    """
    kind, args = parse_descriptor(descriptor)
    if kind == "cantor":
        p = cantor_partition(*args, a, b)
        if alpha is not None and not math.isclose(as_alpha(alpha).value, p.alpha.value,
                                                  rel_tol=0, abs_tol=1e-15):
            raise PartitionError(
                f"cantor:{args[0]},{args[1]} forces alpha = {p.alpha.value!r}, got {float(alpha)!r}")
        return p
    if alpha is None:
        raise PartitionError(f"{kind} partition needs an explicit alpha")
    if kind == "uniform":
        return uniform_partition(a, b, args[0], alpha)
    if len(args) == 1:
        if seed is None:
            raise PartitionError("random partition needs a seed")
        args = (args[0], seed)
    return random_partition(a, b, args[0], args[1], alpha)

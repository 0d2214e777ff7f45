"""Independent transversals of partitioned graphs and stable sets hitting every maximum clique."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Literal, Sequence

from .cliques import CliqueComponent, clique_components, kostochka_applies, maximum_cliques
from .errors import CapacityError, ContractViolation, PreconditionError
from .graph import Graph, bits, to_mask

Mode = Literal["clique", "stable"]

DEFAULT_ISR_LIMIT = 256
WITNESS_LIMIT = 14


@dataclass(frozen=True)
class PartitionedGraph:
    """A host graph with its vertex set split into ordered classes.

    ``mode`` says how the classes should be read: ``"stable"`` classes are
    independent sets and degrees are total degrees; ``"clique"`` classes are
    cliques and only neighbours outside the own class count. The search for
    an ISR is the same in both modes.
    """

    host: Graph
    classes: tuple[tuple[int, ...], ...]
    mode: Mode = "stable"

    def __post_init__(self):
        if self.mode not in ("clique", "stable"):
            raise ValueError(f"unknown partition mode {self.mode!r}")
        if not self.classes:
            raise PreconditionError("a partition needs at least one class")
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise PreconditionError("empty class")
            for v in cls:
                if v in seen or not 0 <= v < self.host.n:
                    raise PreconditionError(f"vertex {v} repeated or out of range")
                seen.add(v)
        if len(seen) != self.host.n:
            raise PreconditionError("classes do not cover the host's vertices")

    @classmethod
    def build(cls, host: Graph, classes: Iterable[Iterable[int]], mode: Mode = "stable") -> PartitionedGraph:
        return cls(host, tuple(tuple(sorted(c)) for c in classes), mode)

    @property
    def r(self) -> int:
        return len(self.classes)

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise PreconditionError(f"vertex {v} is in no class")

    def out_degree(self, v: int) -> int:
        """Neighbours outside ``v``'s class (clique mode) or all neighbours (stable mode)."""
        if self.mode == "stable":
            return self.host.degree(v)
        own = to_mask(self.classes[self.class_of(v)])
        return (self.host.masks[v] & ~own).bit_count()

    def is_isr(self, s: Iterable[int]) -> bool:
        s = list(s)
        if len(s) != self.r or not self.host.is_stable(s):
            return False
        return sorted(self.class_of(v) for v in s) == list(range(self.r))


@dataclass(frozen=True)
class DominatingCertificate:
    """A set ``X | Y`` totally dominating ``V_J | {x1}``; see :func:`check_certificate`."""

    J: frozenset[int]
    X: frozenset[int]
    Y: frozenset[int]
    x1: int

    @property
    def D(self) -> frozenset[int]:
        return self.X | self.Y

    def to_json(self) -> dict:
        return {"J": sorted(self.J), "X": sorted(self.X), "Y": sorted(self.Y), "x1": self.x1}


@dataclass(frozen=True)
class TransversalResult:
    found: bool
    stable_set: frozenset[int] | None = None
    witness: DominatingCertificate | None = None

    @property
    def kind(self) -> str:
        return "found" if self.found else "not-found"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.stable_set is not None:
            out["stable_set"] = sorted(self.stable_set)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _search_isr(masks: Sequence[int], cands: list[tuple[int, int]]) -> list[int] | None:
    """Backtracking with forward checking; ``cands`` holds ``(class, candidate mask)``."""
    if not cands:
        return []
    # most constrained class first
    pos = min(range(len(cands)), key=lambda i: (cands[i][1].bit_count(), cands[i][0]))
    _, mask = cands[pos]
    rest = cands[:pos] + cands[pos + 1 :]
    for v in bits(mask):
        blocked = masks[v]
        nxt = []
        for j, m in rest:
            m &= ~blocked
            if not m:
                break
            nxt.append((j, m))
        else:
            sub = _search_isr(masks, nxt)
            if sub is not None:
                return [v] + sub
    return None


def find_isr(
    pg: PartitionedGraph,
    required: int | None = None,
    limit: int = DEFAULT_ISR_LIMIT,
    want_witness: bool = True,
) -> TransversalResult:
    """Search for an independent system of representatives, optionally through ``required``.

    When no ISR through ``required`` exists and the host is small, the result
    carries a totally dominating certificate if one can be found.
    """
    host = pg.host
    if host.n > limit:
        raise CapacityError("find_isr", host.n, limit)
    cands = [(i, to_mask(cls)) for i, cls in enumerate(pg.classes)]
    if required is not None:
        ci = pg.class_of(required)
        cands[ci] = (ci, 1 << required)
    sol = _search_isr(host.masks, cands)
    if sol is not None:
        return TransversalResult(True, frozenset(sol))
    witness = None
    if want_witness and required is not None and host.n <= WITNESS_LIMIT:
        witness = find_dominating_certificate(pg, required)
    return TransversalResult(False, None, witness)


def verify_lopsided_condition(pg: PartitionedGraph, k: int | Fraction) -> bool:
    """Every vertex of ``V_i`` has out-degree at most ``min(k, |V_i| - k)``."""
    k = Fraction(k)
    for cls in pg.classes:
        cap = min(k, len(cls) - k)
        for v in cls:
            if pg.out_degree(v) > cap:
                return False
    return True


def certificate_failures(pg: PartitionedGraph, cert: DominatingCertificate) -> list[str]:
    """Names of the certificate conditions that fail; empty means valid."""
    g = pg.host
    fails = []
    x1_class = pg.class_of(cert.x1)
    if cert.x1 not in cert.X:
        fails.append("x1 not in X")
    if x1_class in cert.J:
        fails.append("J contains the class of x1")
    if cert.X & cert.Y:
        fails.append("X and Y overlap")
    if not g.is_stable(cert.X):
        fails.append("X not stable")
    if not g.is_stable(cert.Y):
        fails.append("Y not stable")
    vj = {v for i in cert.J for v in pg.classes[i]}
    if not cert.D <= vj | {cert.x1}:
        fails.append("D not inside V_J + x1")
    y_classes = [pg.class_of(y) for y in cert.Y]
    if not set(y_classes) <= cert.J or len(set(y_classes)) != len(y_classes):
        fails.append("Y not a partial ISR of V_J")
    xmask = to_mask(cert.X)
    if any((g.masks[y] & xmask).bit_count() != 1 for y in cert.Y):
        fails.append("some y in Y lacks exactly one neighbour in X")
    dmask = to_mask(cert.D)
    if any(not g.masks[v] & dmask for v in vj | {cert.x1}):
        fails.append("D does not totally dominate V_J + x1")
    return fails


def check_certificate(pg: PartitionedGraph, cert: DominatingCertificate) -> bool:
    return not certificate_failures(pg, cert)


def find_dominating_certificate(pg: PartitionedGraph, x1: int) -> DominatingCertificate | None:
    """Exhaustive search for a certificate rooted at ``x1``. Exponential; tiny graphs only."""
    g = pg.host
    masks = g.masks
    home = pg.class_of(x1)
    others = [i for i in range(pg.r) if i != home]
    for size in range(1, len(others) + 1):
        for J in combinations(others, size):
            vj = [v for i in J for v in pg.classes[i]]
            target = to_mask(vj) | (1 << x1)
            for choice in product(*[(None,) + pg.classes[i] for i in J]):
                ys = [y for y in choice if y is not None]
                ymask = to_mask(ys)
                if not g.is_stable(ys) or ymask >> x1 & 1:
                    continue
                free = [v for v in vj if not ymask >> v & 1 and not masks[x1] >> v & 1]
                for t in range(len(free) + 1):
                    for extra in combinations(free, t):
                        xs = (x1,) + extra
                        if not g.is_stable(xs):
                            continue
                        xmask = to_mask(xs)
                        if any((masks[y] & xmask).bit_count() != 1 for y in ys):
                            continue
                        dmask = xmask | ymask
                        if all(masks[v] & dmask for v in bits(target)):
                            return DominatingCertificate(frozenset(J), frozenset(xs), frozenset(ys), x1)
    return None


# -- hitting every maximum clique ----------------------------------------------


@dataclass(frozen=True)
class HittingSet:
    vertices: frozenset[int]
    omega: int
    delta: int
    k: Fraction
    components: tuple[CliqueComponent, ...]
    lopsided: bool

    def to_json(self) -> dict:
        return {
            "stable_set": sorted(self.vertices),
            "omega": self.omega,
            "delta": self.delta,
            "k": str(self.k),
            "lopsided_condition": self.lopsided,
            "cores": [sorted(c.intersection) for c in self.components],
        }


def hitting_stable_set(g: Graph) -> HittingSet | None:
    """A stable set meeting every maximum clique, or ``None`` when ``omega <= 2/3(delta+1)``.

    The set is an ISR of the graph induced on the cores (common intersections)
    of the clique-graph components, with the cores as clique classes.
    """
    if g.n == 0:
        return None
    fam = maximum_cliques(g)
    delta = g.max_degree
    if not kostochka_applies(fam.omega, delta):
        return None
    comps = clique_components(fam)
    cores = [c.intersection for c in comps]
    if any(not c for c in cores):
        raise ContractViolation("empty clique core despite omega > 2/3(delta+1)", omega=fam.omega, delta=delta)
    keep = sorted(set().union(*cores))
    index = {v: i for i, v in enumerate(keep)}
    h = g.induced(keep)
    pg = PartitionedGraph.build(h, [[index[v] for v in c] for c in cores], mode="clique")
    k = Fraction(delta + 1, 3)
    lopsided = verify_lopsided_condition(pg, k)
    res = find_isr(pg, want_witness=False)
    if not res.found:
        raise ContractViolation(
            "no ISR of the clique cores although omega > 2/3(delta+1)",
            omega=fam.omega, delta=delta, cores=[sorted(c) for c in cores], lopsided=lopsided,
        )
    s = frozenset(keep[i] for i in res.stable_set)
    return HittingSet(s, fam.omega, delta, k, tuple(comps), lopsided)


def extend_to_maximal(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Grow a stable set to a maximal one, adding vertices in ascending order."""
    s = set(s)
    if not g.is_stable(s):
        raise PreconditionError(f"{sorted(s)} is not stable")
    smask = to_mask(s)
    for v in range(g.n):
        if not smask >> v & 1 and not g.masks[v] & smask:
            smask |= 1 << v
    return frozenset(bits(smask))

"""Finite networks over an ordered field and their Dirichlet problem.

A network has a source vertex held at potential 1, a nonempty grounded
boundary held at 0, and strictly positive edge admittances.  The solver
eliminates interior vertices one at a time; each elimination is a
star-mesh step on the graph, so every pivot is the (positive) weight of a
vertex in a network with positive admittances.
"""

from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from types import MappingProxyType
from typing import Mapping

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EmptyBoundaryError,
    InadmissibleError,
    InternalError,
    NetworkError,
    NonPositiveWeightError,
    SelfLoopError,
    SourceInBoundaryError,
    UnknownVertexError,
)
from .fields import FIELDS, LEVI_CIVITA, RATIONAL, RATIONAL_FUNCTION, Field, field_of


def edge_key(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class TransformRecord:
    kind: str
    vertex: str
    changed: tuple = ()


@dataclass(frozen=True, eq=False)
class Network:
    """Validated, immutable network; construct through :func:`build_network` or directly."""

    field: Field
    source: str
    boundary: frozenset
    edges: Mapping
    history: tuple = ()
    _adj: Mapping = dc_field(init=False, repr=False)

    def __post_init__(self):
        boundary = frozenset(self.boundary)
        edges = {}
        for (u, v), w in dict(self.edges).items():
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u!r}")
            key = edge_key(u, v)
            if key in edges:
                raise DuplicateEdgeError(f"edge {key[0]!r}-{key[1]!r} given twice")
            edges[key] = self.field.coerce(w)
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(edges.items()))))
        adj = {self.source: {}}
        for b in boundary:
            adj.setdefault(b, {})
        for (u, v), w in self.edges.items():
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        object.__setattr__(self, "_adj", MappingProxyType({x: MappingProxyType(adj[x]) for x in sorted(adj)}))
        self._validate()

    def _validate(self):
        if not self.boundary:
            raise EmptyBoundaryError("boundary set B must be nonempty")
        if self.source in self.boundary:
            raise SourceInBoundaryError(f"source {self.source!r} cannot be a boundary vertex")
        if len(self._adj) < 2:
            raise NetworkError("a network needs at least two vertices")
        for (u, v), w in self.edges.items():
            if self.field.sign(w) <= 0:
                raise NonPositiveWeightError(f"admittance of {u!r}-{v!r} must be positive, got {self.field.format(w)}")
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(self._adj):
            missing = sorted(set(self._adj) - seen)
            raise DisconnectedError(f"vertices {missing} are not connected to the source {self.source!r}")

    @property
    def vertices(self):
        return tuple(self._adj)

    @property
    def boundary0(self):
        return self.boundary | {self.source}

    @property
    def interior(self):
        return tuple(x for x in self._adj if x not in self.boundary and x != self.source)

    def neighbors(self, x):
        try:
            return self._adj[x]
        except KeyError:
            raise UnknownVertexError(f"no vertex {x!r} in network") from None

    def weight(self, x, y):
        return self.neighbors(x).get(y, self.field.zero())

    def vertex_weight(self, x):
        return sum(self.neighbors(x).values(), self.field.zero())

    def degree(self, x):
        return len(self.neighbors(x))

    def __contains__(self, x):
        return x in self._adj

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.field is other.field
            and self.source == other.source
            and self.boundary == other.boundary
            and dict(self.edges) == dict(other.edges)
        )

    __hash__ = None

    def replace(self, edges, record=None):
        """New network on the same source and boundary with ``edges`` (a dict)."""
        history = self.history + ((record,) if record is not None else ())
        return Network(self.field, self.source, self.boundary, edges, history)


def build_network(edges, source, boundary, field=None):
    """Validate raw input into a :class:`Network`.

    ``edges`` is an iterable of ``(u, v, admittance)`` triples or a mapping
    ``{(u, v): admittance}``.  Without ``field`` the smallest field holding
    every admittance is used.
    """
    triples = [(u, v, w) for (u, v), w in edges.items()] if isinstance(edges, Mapping) else list(edges)
    if isinstance(field, str):
        field = FIELDS[field]
    if field is None:
        order = [RATIONAL, RATIONAL_FUNCTION, LEVI_CIVITA]
        field = max((field_of(w) for _, _, w in triples), key=order.index, default=RATIONAL)
    raw = {}
    for u, v, w in triples:
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u!r}")
        key = edge_key(u, v)
        if key in raw:
            raise DuplicateEdgeError(f"edge {key[0]!r}-{key[1]!r} given twice; parallel edges are not allowed")
        raw[key] = w
    return Network(field, source, frozenset(boundary), raw)


@dataclass(frozen=True)
class DirichletSystem:
    """``A v = b`` on the interior after substituting the boundary values."""

    interior_order: tuple
    matrix: tuple
    rhs: tuple


def assemble_system(net):
    order = net.interior
    index = {x: i for i, x in enumerate(order)}
    zero = net.field.zero()
    rows = []
    for x in order:
        row = [zero] * len(order)
        row[index[x]] = net.vertex_weight(x)
        for y, w in net.neighbors(x).items():
            if y in index:
                row[index[y]] = -w
        rows.append(tuple(row))
    rhs = tuple(net.weight(net.source, x) for x in order)
    return DirichletSystem(order, tuple(rows), rhs)


class Potentials(Mapping):
    """Read-only map vertex -> potential."""

    def __init__(self, values):
        self._values = dict(values)

    def __getitem__(self, x):
        return self._values[x]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f"Potentials({self._values!r})"


def eliminate(net, order=None):
    """Star-mesh every interior vertex in ``order``; return the elimination steps.

    Each step is ``(vertex, pivot, neighbour weights)`` where the weights are
    those of the partially reduced network at the time of elimination.
    """
    if order is None:
        order = net.interior
    elif sorted(order) != sorted(net.interior):
        raise ValueError("elimination order must be a permutation of the interior vertices")
    b0 = net.boundary0
    adj = {x: dict(nbrs) for x, nbrs in net._adj.items()}
    steps = []
    for x in order:
        nbrs = adj.pop(x)
        pivot = sum(nbrs.values(), net.field.zero())
        if net.field.sign(pivot) <= 0:
            raise InternalError(f"non-positive pivot {net.field.format(pivot)} at {x!r}")
        inv = 1 / pivot
        scaled = {y: w * inv for y, w in nbrs.items()}
        for y in nbrs:
            del adj[y][x]
        for (y, wy), (z, wz) in combinations(nbrs.items(), 2):
            if y in b0 and z in b0:
                continue
            extra = wy * scaled[z]
            adj[y][z] = adj[y].get(z, 0) + extra
            adj[z][y] = adj[z].get(y, 0) + extra
        steps.append((x, pivot, scaled))
    return steps


def solve_dirichlet(net, order=None):
    """Potentials with ``v(source) = 1``, ``v = 0`` on the boundary, harmonic inside."""
    f = net.field
    v = {net.source: f.one()}
    v.update((b, f.zero()) for b in net.boundary)
    for x, _, scaled in reversed(eliminate(net, order)):
        v[x] = sum((w * v[y] for y, w in scaled.items()), f.zero())
    return Potentials({x: v[x] for x in net.vertices})


def laplacian(net, v, x):
    """``sum_y (v(y) - v(x)) rho_xy``."""
    return sum(((v[y] - v[x]) * w for y, w in net.neighbors(x).items()), net.field.zero())


def effective_admittance(net, potentials=None):
    v = potentials if potentials is not None else solve_dirichlet(net)
    return sum(((1 - v[x]) * w for x, w in net.neighbors(net.source).items()), net.field.zero())


def effective_impedance(net, potentials=None):
    return 1 / effective_admittance(net, potentials)


@dataclass(frozen=True)
class IdentityReport:
    """The four equal expressions for the effective admittance."""

    peff: object
    boundary_current: object
    boundary_laplacian: object
    source_laplacian: object
    energy: object
    all_equal: bool

    def values(self):
        return (self.peff, self.boundary_current, self.boundary_laplacian, self.source_laplacian, self.energy)


def admittance_identities(net, v):
    f = net.field
    zero = f.zero()
    peff = effective_admittance(net, v)
    boundary_current = sum(
        (v[x] * w for a in sorted(net.boundary) for x, w in net.neighbors(a).items()), zero
    )
    boundary_laplacian = sum((laplacian(net, v, a) for a in sorted(net.boundary)), zero)
    source_laplacian = -laplacian(net, v, net.source)
    energy = dirichlet_energy(net, v, check=False)
    values = (peff, boundary_current, boundary_laplacian, source_laplacian, energy)
    equal = all(f.agree(peff, other) for other in values[1:])
    return IdentityReport(peff, boundary_current, boundary_laplacian, source_laplacian, energy, equal)


def dirichlet_energy(net, f, check=True):
    """``1/2 * sum over ordered adjacent pairs of (f(y) - f(x))^2 rho_xy``, i.e. one term per edge."""
    fld = net.field
    if check:
        missing = [x for x in net.vertices if x not in f]
        if missing:
            raise InadmissibleError(f"test function undefined at {missing}")
        if not fld.agree(f[net.source], fld.one()):
            raise InadmissibleError(f"test function must equal 1 at the source {net.source!r}")
        bad = [b for b in sorted(net.boundary) if not fld.agree(f[b], fld.zero())]
        if bad:
            raise InadmissibleError(f"test function must vanish on the boundary, not at {bad}")
    total = fld.zero()
    for (x, y), w in net.edges.items():
        d = f[y] - f[x]
        total = total + d * d * w
    return total

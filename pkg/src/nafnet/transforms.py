"""Admittance-preserving rewrites of a network.

Every transform here removes or inserts one interior vertex and keeps the
Dirichlet solution on all surviving vertices, hence also the effective
admittance.  Star-mesh is the general elimination; series, parallel-series
and Y-Delta are its degree 2 and 3 cases, Delta-Y inverts Y-Delta.
"""

from itertools import combinations

from .errors import TransformError
from .network import TransformRecord, edge_key


def _check_interior(net, x, kind):
    if x not in net:
        raise TransformError(f"{kind}: no vertex {x!r} in network")
    if x == net.source or x in net.boundary:
        raise TransformError(f"{kind}: {x!r} is a boundary vertex and cannot be eliminated")


def star_mesh(net, x):
    """Remove interior vertex ``x`` and join each pair of its neighbours.

    ``rho'_{yz} = rho_{yz} + rho_{xy} rho_{xz} / rho(x)``; an edge is created
    where ``y`` and ``z`` were not adjacent.
    """
    _check_interior(net, x, "star_mesh")
    nbrs = net.neighbors(x)
    if len(nbrs) < 2:
        raise TransformError(f"star_mesh: {x!r} has degree {len(nbrs)}; use prune for dangling vertices")
    pivot = net.vertex_weight(x)
    edges = {k: w for k, w in net.edges.items() if x not in k}
    changed = []
    for (y, wy), (z, wz) in combinations(nbrs.items(), 2):
        key = edge_key(y, z)
        edges[key] = edges.get(key, 0) + wy * wz / pivot
        changed.append(key)
    return net.replace(edges, TransformRecord("star_mesh", x, tuple(changed)))


def prune(net, x):
    """Drop a degree-1 interior vertex; no current flows through it."""
    _check_interior(net, x, "prune")
    nbrs = net.neighbors(x)
    if len(nbrs) != 1:
        raise TransformError(f"prune: {x!r} has degree {len(nbrs)}, expected 1")
    (y,) = nbrs
    edges = {k: w for k, w in net.edges.items() if x not in k}
    return net.replace(edges, TransformRecord("prune", x, (edge_key(x, y),)))


def _two_neighbors(net, b, kind):
    _check_interior(net, b, kind)
    nbrs = sorted(net.neighbors(b))
    if len(nbrs) != 2:
        extra = nbrs[2:] if len(nbrs) > 2 else nbrs
        raise TransformError(f"{kind}: {b!r} must have exactly two neighbours, found {nbrs} (offending: {extra})")
    return nbrs


def series_law(net, b):
    """Replace the path ``a - b - c`` (with ``a`` and ``c`` not adjacent) by one edge."""
    a, c = _two_neighbors(net, b, "series_law")
    if c in net.neighbors(a):
        raise TransformError(f"series_law: {a!r} and {c!r} are adjacent; use parallel_series_law")
    r_ab, r_bc = net.weight(a, b), net.weight(b, c)
    edges = {k: w for k, w in net.edges.items() if b not in k}
    edges[edge_key(a, c)] = r_ab * r_bc / (r_ab + r_bc)
    return net.replace(edges, TransformRecord("series", b, (edge_key(a, c),)))


def parallel_series_law(net, b):
    """Series-combine ``a - b - c`` and add it in parallel to the edge ``a - c``."""
    a, c = _two_neighbors(net, b, "parallel_series_law")
    if c not in net.neighbors(a):
        return series_law(net, b)
    r_ab, r_bc = net.weight(a, b), net.weight(b, c)
    edges = {k: w for k, w in net.edges.items() if b not in k}
    edges[edge_key(a, c)] = r_ab * r_bc / (r_ab + r_bc) + net.weight(a, c)
    return net.replace(edges, TransformRecord("parallel_series", b, (edge_key(a, c),)))


def y_delta(net, d):
    _check_interior(net, d, "y_delta")
    nbrs = sorted(net.neighbors(d))
    if len(nbrs) != 3:
        raise TransformError(f"y_delta: {d!r} must have exactly three neighbours, found {nbrs}")
    total = net.vertex_weight(d)
    edges = {k: w for k, w in net.edges.items() if d not in k}
    changed = []
    for y, z in combinations(nbrs, 2):
        key = edge_key(y, z)
        edges[key] = net.weight(d, y) * net.weight(d, z) / total + net.weight(y, z)
        changed.append(key)
    return net.replace(edges, TransformRecord("y_delta", d, tuple(changed)))


def delta_y(net, a, b, c, d):
    """Replace the triangle ``a b c`` by a star centred at the new vertex ``d``.

    ``rho_da = (r_ac r_bc + r_ac r_ab + r_ab r_bc) / r_bc`` and cyclically,
    where ``r`` are the triangle admittances.
    """
    if d in net:
        raise TransformError(f"delta_y: vertex name {d!r} is already in use")
    if len({a, b, c}) != 3:
        raise TransformError("delta_y: triangle vertices must be distinct")
    for y, z in ((a, b), (b, c), (a, c)):
        if y not in net or z not in net.neighbors(y):
            raise TransformError(f"delta_y: triangle edge {y!r}-{z!r} is missing")
    r_ab, r_bc, r_ac = net.weight(a, b), net.weight(b, c), net.weight(a, c)
    s = r_ac * r_bc + r_ac * r_ab + r_ab * r_bc
    edges = {k: w for k, w in net.edges.items() if k not in {edge_key(a, b), edge_key(b, c), edge_key(a, c)}}
    edges[edge_key(d, a)] = s / r_bc
    edges[edge_key(d, b)] = s / r_ac
    edges[edge_key(d, c)] = s / r_ab
    changed = (edge_key(d, a), edge_key(d, b), edge_key(d, c))
    return net.replace(edges, TransformRecord("delta_y", d, changed))


def reduce_network(net, order=None):
    """Eliminate every interior vertex (star-mesh, or prune at degree 1).

    The result has only the source and boundary vertices left.
    """
    for x in order if order is not None else net.interior:
        if net.degree(x) == 1:
            net = prune(net, x)
        else:
            net = star_mesh(net, x)
    return net


TRANSFORMS = {
    "star_mesh": star_mesh,
    "prune": prune,
    "series": series_law,
    "parallel_series": parallel_series_law,
    "y_delta": y_delta,
    "delta_y": delta_y,
}

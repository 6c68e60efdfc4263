"""graph6 and edge-list text formats."""
from __future__ import annotations

from .graph import MAX_VERTICES, CapacityError, Graph, from_edges

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0))


def to_graph6(G: Graph) -> str:
    """graph6 string of the active subgraph (vertices relabelled in order)."""
    H = G.compact()
    n = H.n
    bits = []
    for j in range(1, n):
        row = H.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits += [0] * (-len(bits) % 6)
    body = []
    for pos in range(0, len(bits), 6):
        value = 0
        for b in bits[pos:pos + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_n(n) + "".join(body)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ValueError(f"invalid graph6 character in {text!r}")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ValueError("graph6 header for n > 258047 is not supported")
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 input has {n} vertices, capacity is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(data)} bytes, expected {(nbits + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if data[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return from_edges(n, edges)


def from_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line followed by ``u v`` lines (``#`` comments allowed)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("edge list is empty")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.replace(",", " ").split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise ValueError(f"malformed edge list: {exc}") from None
    return from_edges(n, edges)


def to_edge_list(G: Graph) -> str:
    H = G.compact()
    return "\n".join([str(H.n)] + [f"{u} {v}" for u, v in H.edges()]) + "\n"

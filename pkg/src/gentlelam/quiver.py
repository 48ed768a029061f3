"""Quivers, gentle presentations and their rho-block decomposition.

Vertices are 1..n.  A relation (a, b) stands for the length-2 path a∘b
(b first, then a).  Relations always stay inside a single rho-block;
for gentle algebras each block is isomorphic, via a relabelling that is
bijective on arrows, to one of the model algebras C_m (linear quiver,
all length-2 paths zero) or C~_m (cyclic quiver, all length-2 paths
zero).
"""

from dataclasses import dataclass, field


class NotGentle(ValueError):
    pass


class NonComposableRelation(NotGentle):
    pass


class InconsistentSigns(RuntimeError):
    pass


class UnclassifiableBlock(RuntimeError):
    pass


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple  # of (arrow_id, source, target)

    def __post_init__(self):
        seen = set()
        for aid, s, t in self.arrows:
            if aid in seen:
                raise ValueError(f"duplicate arrow id {aid!r}")
            seen.add(aid)
            if not (1 <= s <= self.n_vertices and 1 <= t <= self.n_vertices):
                raise ValueError(f"arrow {aid!r} endpoints out of range")

    @property
    def arrow_ids(self):
        return [a[0] for a in self.arrows]

    def source(self, aid):
        return self._lookup()[aid][0]

    def target(self, aid):
        return self._lookup()[aid][1]

    def _lookup(self):
        d = self.__dict__.get("_lk")
        if d is None:
            d = {aid: (s, t) for aid, s, t in self.arrows}
            object.__setattr__(self, "_lk", d)
        return d

    def arrows_from(self, v):
        return [aid for aid, s, t in self.arrows if s == v]

    def arrows_into(self, v):
        return [aid for aid, s, t in self.arrows if t == v]

    def is_connected(self):
        if self.n_vertices <= 1:
            return True
        adj = {v: set() for v in range(1, self.n_vertices + 1)}
        for _, s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices


@dataclass(frozen=True)
class GentleAlgebra:
    quiver: Quiver
    relations: frozenset  # of (a, b): path a∘b in the ideal
    sigma: dict = field(compare=False)
    epsilon: dict = field(compare=False)

    @property
    def n(self):
        return self.quiver.n_vertices

    def s(self, aid):
        return self.quiver.source(aid)

    def t(self, aid):
        return self.quiver.target(aid)

    @property
    def arrow_ids(self):
        return self.quiver.arrow_ids


def validate_gentle(quiver, relations):
    """Check the gentle axioms and return the algebra with sign maps.

    Raises NotGentle / NonComposableRelation with the failing axiom and
    location in the message.
    """
    ids = set(quiver.arrow_ids)
    for a, b in relations:
        if a not in ids or b not in ids:
            raise NonComposableRelation(f"relation ({a},{b}) uses unknown arrows")
        if quiver.source(a) != quiver.target(b):
            raise NonComposableRelation(
                f"relation ({a},{b}) is not a composable length-2 path")
    rel = frozenset((a, b) for a, b in relations)
    for v in range(1, quiver.n_vertices + 1):
        outs = quiver.arrows_from(v)
        ins = quiver.arrows_into(v)
        if len(outs) > 2:
            raise NotGentle(f"axiom (i) fails: {len(outs)} arrows start at vertex {v}")
        if len(ins) > 2:
            raise NotGentle(f"axiom (i) fails: {len(ins)} arrows end at vertex {v}")
        # (iii): two arrows a != b ending at v, any c starting at v
        if len(ins) == 2:
            a, b = ins
            for c in outs:
                hits = ((c, a) in rel) + ((c, b) in rel)
                if hits != 1:
                    raise NotGentle(
                        f"axiom (iii) fails at vertex {v} for arrow {c!r}")
        # (iv): two arrows a != b starting at v, any c ending at v
        if len(outs) == 2:
            a, b = outs
            for c in ins:
                hits = ((a, c) in rel) + ((b, c) in rel)
                if hits != 1:
                    raise NotGentle(
                        f"axiom (iv) fails at vertex {v} for arrow {c!r}")
    if not _finite_dimensional(quiver, rel):
        raise NotGentle("the ideal is not admissible (a cycle avoids all relations)")
    sigma, epsilon = compute_sign_maps(quiver, rel)
    return GentleAlgebra(quiver=quiver, relations=rel, sigma=sigma, epsilon=epsilon)


def _finite_dimensional(quiver, rel):
    """No cyclic path may avoid the relations (admissibility of the ideal)."""
    # graph on arrows: a -> c when c∘a is a permitted path
    nxt = {a: [] for a in quiver.arrow_ids}
    for a in quiver.arrow_ids:
        for c in quiver.arrows_from(quiver.target(a)):
            if (c, a) not in rel:
                nxt[a].append(c)
    color = {a: 0 for a in quiver.arrow_ids}

    def has_cycle(a):
        color[a] = 1
        for c in nxt[a]:
            if color[c] == 1:
                return True
            if color[c] == 0 and has_cycle(c):
                return True
        color[a] = 2
        return False

    return not any(color[a] == 0 and has_cycle(a) for a in quiver.arrow_ids)


def is_jacobian(algebra):
    """Connected, loop-free, and every relation closes up to a 3-cycle."""
    q = algebra.quiver
    if not q.is_connected():
        return False
    if any(s == t for _, s, t in q.arrows):
        return False
    for a, b in algebra.relations:
        ok = False
        for c in q.arrows_from(q.target(a)):
            if q.target(c) == q.source(b) and (b, c) in algebra.relations \
                    and (c, a) in algebra.relations:
                ok = True
                break
        if not ok:
            return False
    return True


def compute_sign_maps(quiver, relations):
    """Maps sigma, epsilon: arrows -> {+1,-1} with the three string-algebra
    compatibility properties.

    Constraints form parity conditions between the variables sigma(a),
    epsilon(a); free components default to +1 in arrow order.
    """
    arrows = quiver.arrow_ids
    # variable indices: sigma(a) -> ('s', a), epsilon(a) -> ('e', a)
    parent = {}
    parity = {}  # sign relative to the component root

    def find(x):
        if parent[x] == x:
            return x, 1
        root, sgn = find(parent[x])
        parent[x] = root
        parity[x] *= sgn
        return root, parity[x]

    def union(x, y, sgn):
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            if px * py != sgn:
                raise InconsistentSigns(f"sign constraints conflict near {x}/{y}")
            return
        parent[ry] = rx
        parity[ry] = sgn * px * py

    for a in arrows:
        for kind in "se":
            parent[(kind, a)] = (kind, a)
            parity[(kind, a)] = 1

    for v in range(1, quiver.n_vertices + 1):
        outs = quiver.arrows_from(v)
        ins = quiver.arrows_into(v)
        if len(outs) == 2:
            union(("s", outs[0]), ("s", outs[1]), -1)
        if len(ins) == 2:
            union(("e", ins[0]), ("e", ins[1]), -1)
    for a in arrows:
        for b in quiver.arrows_into(quiver.source(a)):
            if (a, b) not in relations:
                # word (a, b) is a string: sigma(a) = -epsilon(b)
                union(("s", a), ("e", b), -1)

    sigma, epsilon = {}, {}
    root_sign = {}
    for a in arrows:
        for kind, table in (("s", sigma), ("e", epsilon)):
            root, sgn = find((kind, a))
            if root not in root_sign:
                root_sign[root] = 1  # free choice
            table[a] = root_sign[root] * sgn
    return sigma, epsilon


@dataclass(frozen=True)
class RhoBlock:
    block_id: int
    arrows: tuple  # parent arrow ids in chain order (empty for 1-blocks)
    vertices: tuple  # parent vertices covered
    block_type: str  # 'C' or 'Ct'
    model_size: int  # the m of C_m / C~_m
    relabel: tuple  # model vertex i (1-based) -> parent vertex relabel[i-1]

    @property
    def type_name(self):
        return f"{'C~' if self.block_type == 'Ct' else 'C'}{self.model_size}"


def rho_blocks(algebra):
    """Partition the arrows into relation chains, typed as C_m or C~_m.

    Within a block the arrows form a chain a_1, a_2, ... with
    a_{i+1}∘a_i in the ideal; a cyclic chain of length m has type C~_m,
    an open chain of m-1 arrows has type C_m.  Arrowless vertices give
    1-blocks (type C_1).
    """
    q = algebra.quiver
    succ = {}  # a -> b with b∘a in ideal
    pred = {}
    for b, a in algebra.relations:
        if a in succ or b in pred:
            raise UnclassifiableBlock("relation chain branches; input not gentle")
        succ[a] = b
        pred[b] = a
    blocks = []
    seen = set()
    bid = 0
    for start in q.arrow_ids:
        if start in seen:
            continue
        # rewind to the chain start, or detect a cycle
        a = start
        steps = 0
        is_cycle = False
        while a in pred:
            a = pred[a]
            steps += 1
            if a == start:
                is_cycle = True
                break
            if steps > len(q.arrows):
                raise UnclassifiableBlock("relation chain is not a path or cycle")
        if is_cycle:
            cyc = [start]
            b = succ[start]
            while b != start:
                cyc.append(b)
                b = succ[b]
            # canonical rotation for determinism
            k = cyc.index(min(cyc))
            chain = cyc[k:] + cyc[:k]
            seen.update(chain)
            m = len(chain)
            relabel = [q.source(chain[i]) for i in range(m)]
            bid += 1
            blocks.append(RhoBlock(bid, tuple(chain), tuple(sorted(set(
                relabel))), "Ct", m, tuple(relabel)))
        else:
            chain = [a]
            while chain[-1] in succ:
                chain.append(succ[chain[-1]])
            seen.update(chain)
            m = len(chain) + 1
            relabel = [q.source(c) for c in chain] + [q.target(chain[-1])]
            verts = tuple(sorted(set(relabel)))
            bid += 1
            blocks.append(RhoBlock(bid, tuple(chain), verts, "C", m, tuple(relabel)))
    used = {v for b in blocks for v in b.vertices}
    for v in range(1, q.n_vertices + 1):
        if v not in used:
            bid += 1
            blocks.append(RhoBlock(bid, (), (v,), "C", 1, (v,)))
    return blocks


def transport_dimvec(block, d):
    """Pull a dimension vector of the parent algebra back to the model."""
    if len(d) < max(block.relabel):
        raise ValueError("dimension vector too short for this algebra")
    return tuple(d[v - 1] for v in block.relabel)

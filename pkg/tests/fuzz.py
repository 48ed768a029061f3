"""Random gentle algebra generator for property tests."""

from gentlelam import NotGentle, Quiver, validate_gentle


def random_gentle(rng, max_vertices=5, max_arrows=7):
    """A random gentle algebra; retries until the axioms hold."""
    for _ in range(300):
        n = rng.randint(1, max_vertices)
        out_deg = {v: 0 for v in range(1, n + 1)}
        in_deg = {v: 0 for v in range(1, n + 1)}
        arrows = []
        for k in range(rng.randint(1, max_arrows)):
            s = rng.randint(1, n)
            t = rng.randint(1, n)
            if out_deg[s] >= 2 or in_deg[t] >= 2:
                continue
            out_deg[s] += 1
            in_deg[t] += 1
            arrows.append((f"x{k}", s, t))
        if not arrows:
            continue
        q = Quiver(n, tuple(arrows))
        rels = set()
        ok = True
        for v in range(1, n + 1):
            ins = q.arrows_into(v)
            outs = q.arrows_from(v)
            # axioms (iii)/(iv): with two arrows on one side, exactly one
            # composite through each arrow on the other side dies
            if len(ins) == 2:
                for c in outs:
                    rels.add((c, rng.choice(ins)))
            if len(outs) == 2:
                for c in ins:
                    chosen = rng.choice(outs)
                    rels.add((chosen, c))
            if len(ins) == 1 and len(outs) == 1 and rng.random() < 0.4:
                rels.add((outs[0], ins[0]))
        # the two rules above can conflict at (2-in, 2-out) vertices
        try:
            A = validate_gentle(q, sorted(rels))
            return A
        except NotGentle:
            continue
    raise RuntimeError("fuzzer failed to produce a gentle algebra")

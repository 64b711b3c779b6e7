"""Independent reference evaluators used as test oracles.

These deliberately avoid the library's semantics and fairness code; they only
read the raw protocol structure (vertices, edges, attributes, valuations).
"""

from fractions import Fraction
from itertools import product


def interpolate(valuation, share):
    """Piecewise-linear value through (0, 0) and the table breakpoints."""
    if valuation.kind == "linear":
        return valuation.full_value * share
    xs = [Fraction(0)] + [s for s, _ in valuation.table]
    ys = [Fraction(0)] + [v for _, v in valuation.table]
    for k in range(1, len(xs)):
        if share <= xs[k]:
            lo_x, hi_x, lo_y, hi_y = xs[k - 1], xs[k], ys[k - 1], ys[k]
            return lo_y + (hi_y - lo_y) * (share - lo_x) / (hi_x - lo_x)
    raise AssertionError("share above 1")


def own_item(protocol, role):
    return next(i.id for i in protocol.items if i.owner == role)


def naive_payoff(protocol, path):
    """Term-by-term evaluation of the payoff definition on a root path.

    p_X = v_X(other item, received share) - v_X(own item, given share)
          + sum over X's moves (comp_X - deposit - cost)
          + sum over the other's moves comp_X
    """
    result = {}
    for me, other in (("A", "B"), ("B", "A")):
        received = sum((e.attributes.share_to_A if me == "A" else e.attributes.share_to_B for e in path),
                       Fraction(0))
        given = sum((e.attributes.share_to_B if me == "A" else e.attributes.share_to_A for e in path),
                    Fraction(0))
        total = interpolate(protocol.valuation(me, own_item(protocol, other)), received)
        total -= interpolate(protocol.valuation(me, own_item(protocol, me)), given)
        for e in path:
            actor = protocol.vertex(e.source).owner
            comp = e.attributes.comp_to_A if me == "A" else e.attributes.comp_to_B
            if actor == me:
                total += comp - e.attributes.deposit - e.attributes.cost
            else:
                total += comp
        result[me] = total
    return result["A"], result["B"]


def running_balances(path):
    out, balance = [], Fraction(0)
    for e in path:
        a = e.attributes
        balance += a.deposit - a.comp_to_A - a.comp_to_B
        out.append(balance)
    return out


def root_paths(protocol):
    """Every root-to-terminal edge sequence, by plain recursion."""
    def go(vid):
        edges = protocol.outgoing(vid)
        if not edges:
            yield ()
            return
        for e in edges:
            for rest in go(e.target):
                yield (e,) + rest
    return list(go(protocol.root))


def complete_strategies(protocol, role, faithful_only=False):
    """All complete strategies of ``role`` as dicts vertex -> label."""
    owned = [v.id for v in protocol.vertices if v.owner == role and protocol.outgoing(v.id)]
    options = []
    for vid in owned:
        labels = [e.label for e in protocol.outgoing(vid) if e.faithful or not faithful_only]
        options.append(labels)
    for combo in product(*options):
        yield dict(zip(owned, combo))


def follow(protocol, choice_a, choice_b):
    vid, path = protocol.root, []
    while protocol.outgoing(vid):
        owner = protocol.vertex(vid).owner
        label = (choice_a if owner == "A" else choice_b)[vid]
        e = next(x for x in protocol.outgoing(vid) if x.label == label)
        path.append(e)
        vid = e.target
    return tuple(path)


def recursive_worst_case(protocol, favored):
    """Favored player's guaranteed value: max over faithful moves, min over adversary moves."""
    index = 0 if favored == "A" else 1

    def value(vid, path):
        edges = protocol.outgoing(vid)
        if not edges:
            return naive_payoff(protocol, path)[index]
        owner = protocol.vertex(vid).owner
        if owner == favored:
            options = [value(e.target, path + (e,)) for e in edges if e.faithful]
            return max(options) if options else float("-inf")
        return min(value(e.target, path + (e,)) for e in edges)

    return value(protocol.root, ())

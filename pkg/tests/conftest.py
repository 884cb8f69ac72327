import itertools


def grid_points(variables, lo=-10, hi=10):
    """All integer valuations over the variables, as dicts."""
    values = range(lo, hi + 1)
    return [
        {v: float(x) for v, x in zip(variables, combo)}
        for combo in itertools.product(values, repeat=len(variables))
    ]


def in_boxes(boxes, variables, valuation):
    point = [valuation[v] for v in variables]
    return any(b.contains(point) for b in boxes)

import hypothesis.strategies as st

from besearch import IndexClass, ProblemInstance


@st.composite
def strict_instances(draw, max_classes=4, max_count=60, require_solution=False):
    """Random instances satisfying the 9/10-1/10 promise."""
    n_classes = draw(st.integers(1, max_classes))
    classes = []
    for i in range(n_classes):
        solution = draw(st.booleans()) if (i or not require_solution) else True
        if solution:
            p = draw(st.floats(0.9, 1.0, allow_nan=False))
        else:
            p = draw(st.floats(0.0, 0.1, allow_nan=False))
        count = draw(st.integers(1, max_count))
        classes.append(IndexClass(p=p, count=count, is_solution=solution))
    return ProblemInstance(tuple(classes))


@st.composite
def relaxed_instances(draw, max_classes=4, max_count=60):
    """Random instances with arbitrary per-class probabilities."""
    n_classes = draw(st.integers(1, max_classes))
    classes = [
        IndexClass(
            p=draw(st.floats(0.0, 1.0, allow_nan=False)),
            count=draw(st.integers(1, max_count)),
            is_solution=draw(st.booleans()),
        )
        for _ in range(n_classes)
    ]
    return ProblemInstance(tuple(classes), strict=False)

from itertools import product

import pytest

from invtrees.seqcore import avoids_all


def all_inversion_sequences(n):
    """Every inversion sequence of length n (letters e_i <= i)."""
    return product(*[range(i + 1) for i in range(n)])


# Pattern sets whose literal closure is avoidance-equivalent to the raw set.
# The other inversion catalog sets have words like 00211, which holds 100
# through 211 but avoids 0100.
CLOSURE_EQUIVALENT = {"000,001,012", "000,001", "012", "000,021", "100,021",
                      "110,021", "102,021"}


def closure_disagreements(B, max_len):
    """Inversion sequences up to ``max_len`` where B and its closure disagree."""
    bad = []
    for n in range(1, max_len + 1):
        for w in all_inversion_sequences(n):
            if avoids_all(w, B.raw) != avoids_all(w, B.closure):
                bad.append(w)
    return bad


@pytest.fixture(scope="session")
def threads():
    return 2

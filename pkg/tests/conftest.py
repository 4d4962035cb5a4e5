import random
from itertools import combinations

import pytest

from fdproof import AttrSet, canonical_attrset

CASE_RULES = [("A", "B C"), ("B", "E"), ("C D", "E F")]
CASE_UNIVERSE = "A B C D E F"
CASE_TARGET = ("A D", "F")


def random_subset(rng, names):
    return canonical_attrset(rng.sample(names, rng.randint(1, len(names))))


def random_instance(rng, min_attrs=2, max_attrs=5, min_rules=1, max_rules=4):
    names = list("ABCDEFGH"[: rng.randint(min_attrs, max_attrs)])
    want = rng.randint(min_rules, max_rules)
    rules = []
    while len(rules) < want:
        r = (random_subset(rng, names), random_subset(rng, names))
        if r not in rules:
            rules.append(r)
    return names, rules


def nonempty_subsets(names):
    names = sorted(names)
    for k in range(1, len(names) + 1):
        for c in combinations(names, k):
            yield AttrSet(c)


def two_tuple_implies(rules, universe, lhs, rhs):
    """X -> Y holds iff every rule-closed attribute set containing X contains Y.

    Checks the FD on every two-row relation whose rows agree exactly on a
    subset S of the universe; independent of any closure iteration.
    """
    names = sorted(canonical_attrset(universe))
    rules = [(set(canonical_attrset(l)), set(canonical_attrset(r))) for l, r in rules]
    lhs, rhs = set(canonical_attrset(lhs)), set(canonical_attrset(rhs))
    for k in range(len(names) + 1):
        for s in combinations(names, k):
            s = set(s)
            if all(not l <= s or r <= s for l, r in rules) and lhs <= s and not rhs <= s:
                return False
    return True


@pytest.fixture
def rng():
    return random.Random(20121017)


# ---- acceptance reporting -------------------------------------------------

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        n, text = mark.args
        entry = _criteria.setdefault(n, [text, True])
        entry[1] = entry[1] and rep.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, ok = _criteria[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}")

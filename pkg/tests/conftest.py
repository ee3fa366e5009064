from itertools import chain, combinations

import pytest

from arglab.af import ArgumentSystem, is_admissible, is_stable, pair_list


def system(args, attacks=()):
    return ArgumentSystem.from_names(list(args), [tuple(p) for p in attacks])


def sset(H, text):
    return H.parse_set(text)


def all_systems(n):
    for r in range(1 << len(pair_list(n))):
        yield ArgumentSystem.from_mask_pairs(n, r)


def naive_families(H):
    """Reference families straight from the definitions, one subset at a time."""
    subsets = range(1 << H.n)
    adm = [S for S in subsets if is_admissible(H, S)]
    pref = [S for S in adm if not any(T != S and T & S == S for T in adm)]
    stab = [S for S in subsets if is_stable(H, S)]
    return {"admissible": set(adm), "preferred": set(pref), "stable": set(stab)}


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


@pytest.fixture
def chain_ab():
    return system("ab", ["ab"])


@pytest.fixture
def two_cycle():
    return system("ab", ["ab", "ba"])


@pytest.fixture
def three_cycle():
    return system("abc", ["ab", "bc", "ca"])


@pytest.fixture
def isolated3():
    return system("abc")


@pytest.fixture
def mutual_defense():
    # c->a, d->b, b->c, a->d: {a, b} defend each other, neither alone is admissible
    return system("abcd", ["ca", "db", "bc", "ad"])


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion_line():
    """Record one PASS/FAIL line per acceptance criterion, shown in the terminal summary."""
    def report(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

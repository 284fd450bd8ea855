import hypothesis.strategies as st
import pytest

from permbij.permcore import ends_with_occurrence, normalize_patterns


@st.composite
def avoiders_of(draw, patterns, min_len=0, max_len=14, relabel=True):
    """A random word avoiding ``patterns``, grown one letter at a time so it
    stays inside the class, then optionally spread onto arbitrary letters."""
    pats = normalize_patterns(patterns)
    n = draw(st.integers(min_len, max_len))
    w = []
    for m in range(1, n + 1):
        legal = [r for r in range(1, m + 1)
                 if not any(ends_with_occurrence(w, r - 0.5, p) for p in pats)]
        r = draw(st.sampled_from(legal))
        w = [a + 1 if a >= r else a for a in w] + [r]
    if relabel and w:
        letters = sorted(draw(st.sets(st.integers(0, 60), min_size=n, max_size=n)))
        w = [letters[a - 1] for a in w]
    return tuple(w)


@pytest.fixture(scope="session")
def phi_example():
    return {
        "w": (2, 6, 4, 7, 10, 14, 9, 15, 17, 20, 19, 16, 18, 11, 12, 13, 8, 3, 5, 1),
        "phi": (2, 6, 4, 3, 1, 5, 7, 10, 14, 9, 8, 11, 12, 13, 15, 17, 20, 19, 16, 18),
    }


@pytest.fixture(scope="session")
def alpha_example():
    return {
        "w": (23, 1, 3, 10, 18, 2, 22, 21, 19, 16, 14, 20, 15, 11, 17, 12, 9, 6, 13, 7, 8, 4, 5),
        "alpha": (23, 1, 3, 10, 18, 2, 9, 6, 16, 14, 15, 11, 22, 21, 19, 20, 17, 12, 13, 7, 8, 4, 5),
    }


ACCEPTANCE_LINES: list = []


def report_criterion(number: int, ok: bool, detail: str):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

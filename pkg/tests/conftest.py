import pytest

from smooth_neighbors.closure import delta

# criterion name -> list of (test id, passed, details)
_ACCEPTANCE: dict[str, list[tuple[str, bool, list[str]]]] = {}
_DESELECTED: dict[str, list[tuple[str, bool]]] = {}


@pytest.fixture(scope="session")
def zp():
    """Cached delta(1..n) results keyed by n."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = delta(range(1, n + 1))
        return cache[n]

    return get


@pytest.fixture
def criterion(request):
    """Collect detail strings; the summary gets one line per criterion."""
    name = request.node.get_closest_marker("criterion").args[0]
    details: list[str] = []
    yield details.append
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _ACCEPTANCE.setdefault(name, []).append((request.node.name, ok, details))


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_deselected(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            slow = item.get_closest_marker("slow") is not None
            _DESELECTED.setdefault(m.args[0], []).append((item.name, slow))


def _key(name):
    return int(name.split(".")[0])


def pytest_terminal_summary(terminalreporter):
    names = set(_ACCEPTANCE) | set(_DESELECTED)
    if not names:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(names, key=_key):
        parts = _ACCEPTANCE.get(name, [])
        ran = {p[0] for p in parts}
        skipped = [(n, slow) for n, slow in _DESELECTED.get(name, []) if n not in ran]
        if not parts:
            why = "slow; run with -m slow" if all(slow for _, slow in skipped) else "deselected"
            terminalreporter.write_line(f"NOT RUN  {name}  ({why})")
            continue
        ok = all(p[1] for p in parts)
        extra = [f"{t}: {'; '.join(d)}" if d else t for t, good, d in parts if not good or d]
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if extra:
            line += "  [" + " | ".join(extra) + "]"
        if skipped:
            line += f"  (+{len(skipped)} part(s) not run)"
        terminalreporter.write_line(line)

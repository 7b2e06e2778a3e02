from itertools import product

import pytest
from hypothesis import strategies as st

from abduce.pl import And, Implies, Not, Or, Signature, Var, BOT, TOP

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{name} {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def formulas(names=("a", "b", "c"), max_leaves=12, constants=False):
    leaves = st.sampled_from([Var(n) for n in names])
    if constants:
        leaves = leaves | st.sampled_from([TOP, BOT])

    def extend(children):
        return (st.builds(Not, children) | st.builds(And, children, children)
                | st.builds(Or, children, children) | st.builds(Implies, children, children))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def truth_table(phi, names):
    """Independent oracle: valuation indices (bit i = i-th name) where phi holds."""
    def ev(f, env):
        kind = type(f).__name__
        if kind == "Var":
            return env[f.name]
        if kind == "Top":
            return True
        if kind == "Bot":
            return False
        if kind == "Not":
            return not ev(f.arg, env)
        left, right = ev(f.left, env), ev(f.right, env)
        return {"And": left and right, "Or": left or right, "Implies": (not left) or right}[kind]

    out = set()
    for bits in product([0, 1], repeat=len(names)):
        env = dict(zip(names, map(bool, bits)))
        if ev(phi, env):
            out.add(sum(b << i for i, b in enumerate(bits)))
    return out


@pytest.fixture
def abc():
    return Signature.of("a,b,c")
